//! Brute-force reference computations.
//!
//! These deliberately share no code with the dynamic programs and the
//! triangular solves they check: laws come from enumerating every path, and
//! determinants from the full signed permutation expansion.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{Direction, Site, StepKernel};
use crate::permutation::for_each_signed_permutation;
use crate::rational::Rational;

/// Longest horizon for which path enumeration is allowed in dimension `d`.
pub fn max_enumeration_steps(d: usize) -> u32 {
    match d {
        1 => 12,
        2 => 8,
        3 => 6,
        _ => 4,
    }
}

fn guard(kernel: &StepKernel, t: u32) -> Result<()> {
    let limit = max_enumeration_steps(kernel.dimension());
    if t > limit {
        return Err(Error::TooLarge {
            size: t as usize,
            limit: limit as usize,
        });
    }
    Ok(())
}

/// Visits every path of length `t` from `x0` with its probability.
fn walk_paths(
    kernel: &StepKernel,
    path: &mut Vec<Site>,
    prob: Rational,
    remaining: u32,
    visit: &mut dyn FnMut(&[Site], &Rational),
) {
    if remaining == 0 {
        visit(path, &prob);
        return;
    }
    let here = path.last().expect("paths start at x0").clone();
    for dir in Direction::all(kernel.dimension()) {
        let p = kernel.step_probability(&here, dir);
        path.push(here.step(dir));
        walk_paths(kernel, path, &prob * p, remaining - 1, visit);
        path.pop();
    }
}

/// Law of `Z_t` from `x0`, summed over all `(2d)^t` paths.
pub fn enumerate_law(kernel: &StepKernel, x0: &Site, t: u32) -> Result<BTreeMap<Site, Rational>> {
    guard(kernel, t)?;
    let mut out: BTreeMap<Site, Rational> = BTreeMap::new();
    let mut path = vec![x0.clone()];
    walk_paths(kernel, &mut path, Rational::one(), t, &mut |p, prob| {
        *out.entry(p.last().unwrap().clone()).or_insert_with(Rational::zero) += prob;
    });
    Ok(out)
}

/// Surviving law of paths from `x0` that avoid the boundary at times
/// `1..=t`.
pub fn enumerate_surviving(
    kernel: &StepKernel,
    x0: &Site,
    t: u32,
) -> Result<BTreeMap<Site, Rational>> {
    guard(kernel, t)?;
    let mut out: BTreeMap<Site, Rational> = BTreeMap::new();
    let mut path = vec![x0.clone()];
    walk_paths(kernel, &mut path, Rational::one(), t, &mut |p, prob| {
        if p[1..].iter().all(|z| !z.on_boundary()) {
            *out.entry(p.last().unwrap().clone()).or_insert_with(Rational::zero) += prob;
        }
    });
    Ok(out)
}

/// Single-site probability `P(Z_t^{x0} = target)` by enumeration.
pub fn enumerate_probability(
    kernel: &StepKernel,
    x0: &Site,
    t: u32,
    target: &Site,
) -> Result<Rational> {
    Ok(enumerate_law(kernel, x0, t)?
        .remove(target)
        .unwrap_or_else(Rational::zero))
}

/// `det A = sum_sigma sgn(sigma) prod_i A[i][sigma(i)]`.
pub fn permutation_determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut det = Rational::zero();
    for_each_signed_permutation(n, |sigma, sign| {
        let mut prod = Rational::one();
        for (i, &j) in sigma.iter().enumerate() {
            if rows[i][j].is_zero() {
                return;
            }
            prod *= &rows[i][j];
        }
        if sign > 0 {
            det += prod;
        } else {
            det -= prod;
        }
    });
    det
}
