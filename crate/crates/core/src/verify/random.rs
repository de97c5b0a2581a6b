//! Seeded generation of random kernels, anchors and payoffs.
//!
//! Probabilities are drawn as random compositions of a common denominator no
//! larger than 12, so every generated kernel is exactly valid.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{Direction, KernelSpec, Site, StepKernel};
use crate::lattice::support_set;
use crate::rational::Rational;
use crate::transform::LatticeFunction;

pub const MAX_DENOMINATOR: i64 = 12;

/// Generator for instance `index` of a seeded run. Each index gets its own
/// ChaCha stream, so instances can be produced in any order.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `parts` positive integers summing to `total`.
fn composition(rng: &mut impl Rng, total: i64, parts: usize) -> Vec<i64> {
    assert!(total as usize >= parts && parts >= 1);
    let mut cuts: Vec<i64> = sample(rng, (total - 1) as usize, parts - 1)
        .into_iter()
        .map(|c| c as i64 + 1)
        .collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

fn as_probs(parts: &[i64], total: i64) -> Vec<Rational> {
    parts
        .iter()
        .map(|&p| Rational::new(p.into(), total.into()))
        .collect()
}

/// A random strictly positive probability vector over the `2d` directions.
pub fn random_probs(rng: &mut impl Rng, d: usize) -> Vec<Rational> {
    let n = 2 * d as i64;
    let total = rng.random_range(n..=MAX_DENOMINATOR.max(n));
    as_probs(&composition(rng, total, 2 * d), total)
}

/// A random vector with equal weight on `+e_d` and `-e_d`.
pub fn random_symmetric_probs(rng: &mut impl Rng, d: usize) -> Vec<Rational> {
    loop {
        let n = 2 * d as i64;
        let total = rng.random_range(n..=MAX_DENOMINATOR.max(n));
        // Weight 2a on the normal axis, split evenly.
        let a = rng.random_range(1..=(total - (n - 2)) / 2);
        let rest = total - 2 * a;
        if (d == 1 && rest != 0) || (d > 1 && rest < n - 2) {
            continue;
        }
        let mut parts = if d > 1 {
            composition(rng, rest, 2 * (d - 1))
        } else {
            Vec::new()
        };
        parts.push(a);
        parts.push(a);
        return as_probs(&parts, total);
    }
}

fn mirror_probs(probs: &[Rational]) -> Vec<Rational> {
    let mut out = probs.to_vec();
    let n = out.len();
    out.swap(n - 2, n - 1);
    out
}

/// A random site with every coordinate in `center ± spread`.
pub fn random_site_near(rng: &mut impl Rng, center: &Site, spread: i64) -> Site {
    Site(
        center
            .coords()
            .iter()
            .map(|c| c + rng.random_range(-spread..=spread))
            .collect(),
    )
}

pub fn random_boundary_site(rng: &mut impl Rng, d: usize, spread: i64) -> Site {
    random_site_near(rng, &Site::origin(d), spread).with_height(0)
}

fn build(d: usize, default: Vec<Rational>, overrides: Vec<(Site, Vec<Rational>)>) -> StepKernel {
    let spec = KernelSpec {
        dimension: d,
        default: Direction::all(d).zip(default).collect(),
        overrides: overrides
            .into_iter()
            .map(|(s, p)| (s, Direction::all(d).zip(p).collect()))
            .collect(),
    };
    StepKernel::from_spec(&spec).expect("generated kernels are valid")
}

/// A random inhomogeneous kernel: random default probabilities plus up to
/// `max_overrides` random site overrides within `spread` of `center`.
pub fn random_kernel(
    rng: &mut impl Rng,
    d: usize,
    center: &Site,
    spread: i64,
    max_overrides: usize,
) -> StepKernel {
    let default = random_probs(rng, d);
    let count = rng.random_range(0..=max_overrides);
    let mut seen = BTreeSet::new();
    let mut overrides = Vec::new();
    for _ in 0..count {
        let site = random_site_near(rng, center, spread);
        if seen.insert(site.clone()) {
            overrides.push((site, random_probs(rng, d)));
        }
    }
    build(d, default, overrides)
}

/// A random kernel that overrides each site of the L1 ball of radius
/// `radius` around `center` with probability `density`.
pub fn random_dense_kernel(
    rng: &mut impl Rng,
    d: usize,
    center: &Site,
    radius: u64,
    density: f64,
) -> StepKernel {
    let default = random_probs(rng, d);
    let mut overrides = Vec::new();
    for site in crate::kernel::l1_ball(center, radius) {
        if rng.random_bool(density) {
            overrides.push((site, random_probs(rng, d)));
        }
    }
    build(d, default, overrides)
}

/// A random kernel invariant under reflection through the boundary.
pub fn random_symmetric_kernel(
    rng: &mut impl Rng,
    d: usize,
    center: &Site,
    spread: i64,
    max_overrides: usize,
) -> StepKernel {
    let default = random_symmetric_probs(rng, d);
    let count = rng.random_range(0..=max_overrides);
    let mut seen = BTreeSet::new();
    let mut overrides = Vec::new();
    for _ in 0..count {
        let site = random_site_near(rng, center, spread);
        if !seen.insert(site.clone()) {
            continue;
        }
        if site.on_boundary() {
            overrides.push((site, random_symmetric_probs(rng, d)));
        } else if seen.insert(site.reflected()) {
            let probs = random_probs(rng, d);
            overrides.push((site.reflected(), mirror_probs(&probs)));
            overrides.push((site, probs));
        }
    }
    build(d, default, overrides)
}

/// A random rational in `[-9, 9]` with denominator at most 6.
pub fn random_value(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.random_range(-9i64..=9).into(), rng.random_range(1i64..=6).into())
}

/// A random upper payoff on the given sites; each site is kept with
/// probability 4/5.
pub fn random_upper_function(rng: &mut impl Rng, sites: &[Site]) -> LatticeFunction {
    let mut values = Vec::new();
    for site in sites {
        if rng.random_bool(0.8) {
            values.push((site.clone(), random_value(rng)));
        }
    }
    LatticeFunction::upper(values).expect("callers pass upper sites")
}

/// Upper sites `y + s e_d` for `(s, y)` in `S(t, x)`: everything above the
/// boundary that `Z_t^x` can reach.
pub fn reachable_upper_sites(t: u32, x: &Site) -> Vec<Site> {
    support_set(t, x)
        .map(|set| set.points.iter().map(|p| p.upper_site()).collect())
        .unwrap_or_default()
}

/// A random nonzero rational.
pub fn random_nonzero(rng: &mut impl Rng) -> Rational {
    let num = rng.random_range(1i64..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
    Rational::new(num.into(), rng.random_range(1i64..=6).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{is_reflection_symmetric, validate_kernel};

    #[test]
    fn compositions_are_positive() {
        let mut rng = instance_rng(1, 0);
        for _ in 0..200 {
            let total = rng.random_range(6..=12);
            let parts = composition(&mut rng, total, 6);
            assert_eq!(parts.iter().sum::<i64>(), total);
            assert!(parts.iter().all(|&p| p > 0));
        }
    }

    #[test]
    fn generated_kernels_validate() {
        let mut rng = instance_rng(2, 0);
        for d in 1..=3 {
            for _ in 0..20 {
                let k = random_kernel(&mut rng, d, &Site::origin(d), 3, 8);
                assert!(validate_kernel(&k.to_spec()).ok);
                let k = random_symmetric_kernel(&mut rng, d, &Site::origin(d), 3, 8);
                assert!(validate_kernel(&k.to_spec()).ok);
                assert!(is_reflection_symmetric(&k, 12, &Site::origin(d)));
            }
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a: u64 = instance_rng(7, 3).random();
        let b: u64 = instance_rng(7, 3).random();
        let c: u64 = instance_rng(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
