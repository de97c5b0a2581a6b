//! Monte Carlo replication of the static hedge.
//!
//! Path `i` draws its uniforms from ChaCha8 stream `i` under the run's seed,
//! so results do not depend on how paths are scheduled across threads. Per
//! path values are collected in path order and summed sequentially.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Direction, Site, StepKernel};
use crate::rational::{round_significant, to_f64, Rational};
use crate::transform::LatticeFunction;

use super::Verifier;

/// Digits kept when estimates are reported.
pub const REPORTED_DIGITS: usize = 15;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_paths: u64,
    pub seed: u64,
}

impl McEstimate {
    fn from_samples(samples: impl Iterator<Item = f64> + Clone, n: u64, seed: u64) -> Self {
        let nf = n as f64;
        let mean = samples.clone().sum::<f64>() / nf;
        let std_error = if n > 1 {
            let ss: f64 = samples.map(|v| (v - mean) * (v - mean)).sum();
            (ss / (nf - 1.0)).sqrt() / nf.sqrt()
        } else {
            0.0
        };
        McEstimate {
            value: mean,
            std_error,
            n_paths: n,
            seed,
        }
    }

    /// `|value - exact| <= k * std_error`.
    pub fn within(&self, exact: f64, k: f64) -> bool {
        (self.value - exact).abs() <= k * self.std_error
    }

    /// Copy rounded to [`REPORTED_DIGITS`] significant digits, for output.
    pub fn rounded(&self) -> McEstimate {
        McEstimate {
            value: round_significant(self.value, REPORTED_DIGITS),
            std_error: round_significant(self.std_error, REPORTED_DIGITS),
            ..self.clone()
        }
    }
}

/// Estimates of the barrier claim `f(Z_T) 1{tau > T}` (lhs) and the static
/// portfolio `f(Z_T) - Nf(Z_T)` (rhs), with their exact values.
#[derive(Debug, Clone, PartialEq)]
pub struct McHedge {
    pub lhs: McEstimate,
    pub rhs: McEstimate,
    pub exact_lhs: Rational,
    pub exact_rhs: Rational,
}

/// Floating-point copy of the kernel as cumulative sums, for sampling only.
struct SamplingTable {
    default: Vec<f64>,
    overrides: HashMap<Site, Vec<f64>>,
}

impl SamplingTable {
    fn new(kernel: &StepKernel) -> Self {
        let cumulative = |probs: &[Rational]| {
            let mut acc = 0.0;
            probs
                .iter()
                .map(|p| {
                    acc += to_f64(p);
                    acc
                })
                .collect::<Vec<f64>>()
        };
        SamplingTable {
            default: cumulative(kernel.default_probs()),
            overrides: kernel
                .overrides()
                .map(|(s, p)| (s.clone(), cumulative(p)))
                .collect(),
        }
    }

    fn pick(&self, at: &[i64], u: f64) -> usize {
        let cum = if self.overrides.is_empty() {
            &self.default
        } else {
            self.overrides.get(at).unwrap_or(&self.default)
        };
        cum.iter().position(|&c| u < c).unwrap_or(cum.len() - 1)
    }
}

pub fn mc_hedge(
    kernel: &StepKernel,
    x0: &Site,
    horizon: u32,
    f: &LatticeFunction,
    n_paths: u64,
    seed: u64,
) -> Result<McHedge> {
    if n_paths == 0 {
        return Err(Error::NoPaths);
    }
    let verifier = Verifier::new(kernel);
    let parity = verifier.barrier_parity(x0, horizon, f)?;
    let law = verifier.transformer().law(x0, horizon);
    let nf = verifier.transformer().transform_on(f, law.support())?;
    let f_float: HashMap<Site, f64> = f.iter().map(|(s, v)| (s.clone(), to_f64(v))).collect();
    let nf_float: HashMap<Site, f64> = nf.iter().map(|(s, v)| (s.clone(), to_f64(v))).collect();

    let table = SamplingTable::new(kernel);
    let directions: Vec<Direction> = Direction::all(kernel.dimension()).collect();
    let samples: Vec<(f64, f64)> = (0..n_paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let mut z = x0.clone();
            let mut alive = true;
            for _ in 0..horizon {
                let dir = directions[table.pick(z.coords(), rng.random::<f64>())];
                z.0[dir.axis - 1] += if dir.positive { 1 } else { -1 };
                if z.on_boundary() {
                    alive = false;
                }
            }
            let fz = f_float.get(z.coords()).copied().unwrap_or(0.0);
            let nfz = nf_float.get(z.coords()).copied().unwrap_or(0.0);
            (if alive { fz } else { 0.0 }, fz - nfz)
        })
        .collect();

    Ok(McHedge {
        lhs: McEstimate::from_samples(samples.iter().map(|s| s.0), n_paths, seed),
        rhs: McEstimate::from_samples(samples.iter().map(|s| s.1), n_paths, seed),
        exact_lhs: parity.lhs,
        exact_rhs: parity.rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance() -> (StepKernel, Site, LatticeFunction) {
        let f = LatticeFunction::indicator(Site::new([1])).unwrap();
        (StepKernel::uniform(1), Site::new([1]), f)
    }

    #[test]
    fn symmetric_walk_estimates() {
        let (k, x0, f) = instance();
        let res = mc_hedge(&k, &x0, 2, &f, 100_000, 42).unwrap();
        assert_eq!(res.exact_lhs, Rational::new(1.into(), 4.into()));
        assert!(res.lhs.within(0.25, 4.0), "{:?}", res.lhs);
        assert!(res.rhs.within(0.25, 4.0), "{:?}", res.rhs);
    }

    #[test]
    fn single_path() {
        let (k, x0, f) = instance();
        let res = mc_hedge(&k, &x0, 2, &f, 1, 9).unwrap();
        assert_eq!(res.lhs.std_error, 0.0);
        assert!(res.lhs.value == 0.0 || res.lhs.value == 1.0);
        assert!(matches!(mc_hedge(&k, &x0, 2, &f, 0, 9), Err(Error::NoPaths)));
    }

    #[test]
    fn deterministic_per_seed() {
        let (k, x0, f) = instance();
        let a = mc_hedge(&k, &x0, 2, &f, 5_000, 11).unwrap();
        let b = mc_hedge(&k, &x0, 2, &f, 5_000, 11).unwrap();
        assert_eq!(a.lhs.value.to_bits(), b.lhs.value.to_bits());
        assert_eq!(a.rhs.std_error.to_bits(), b.rhs.std_error.to_bits());
        let c = mc_hedge(&k, &x0, 2, &f, 5_000, 12).unwrap();
        assert_ne!(a.lhs.value.to_bits(), c.lhs.value.to_bits());
    }
}
