//! Seeded verification suites over a fixed kernel.
//!
//! Each instance draws its anchor, payoff and perturbation from its own
//! random stream, so the report stream is the same whatever the thread
//! count. Reports come back in instance order.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::kernel::{is_reflection_symmetric, Site, StepKernel};
use crate::lattice::support_set;

use super::random::{
    instance_rng, random_boundary_site, random_nonzero, random_upper_function,
    reachable_upper_sites,
};
use super::{VerificationReport, Verifier};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Theorem,
    Consistency,
    Uniqueness,
    Parity,
    Reflection,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem" => Suite::Theorem,
            "consistency" => Suite::Consistency,
            "uniqueness" => Suite::Uniqueness,
            "parity" => Suite::Parity,
            "reflection" => Suite::Reflection,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Theorem => "theorem",
            Suite::Consistency => "consistency",
            Suite::Uniqueness => "uniqueness",
            Suite::Parity => "parity",
            Suite::Reflection => "reflection",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

/// Largest anchor time used for dimension `d`; keeps systems small enough
/// for exact arithmetic at interactive speed.
pub fn max_time(d: usize) -> u32 {
    match d {
        1 => 6,
        2 => 5,
        3 => 3,
        _ => 2,
    }
}

fn max_consistency_time(d: usize) -> u32 {
    match d {
        1 => 6,
        2 => 4,
        _ => 2,
    }
}

const SPREAD: i64 = 2;

fn theorem(v: &Verifier<'_>, rng: &mut impl Rng, d: usize) -> Result<Vec<VerificationReport>> {
    let t = rng.random_range(1..=max_time(d));
    let x = random_boundary_site(rng, d, SPREAD);
    let f = random_upper_function(rng, &reachable_upper_sites(t, &x));
    Ok(vec![v.check_theorem(t, &x, &f)?])
}

fn consistency(v: &Verifier<'_>, rng: &mut impl Rng, d: usize) -> Result<Vec<VerificationReport>> {
    let t = rng.random_range(1..=max_consistency_time(d));
    let x = random_boundary_site(rng, d, SPREAD);
    v.check_consistency(t, &x)
}

fn uniqueness(v: &Verifier<'_>, rng: &mut impl Rng, d: usize) -> Result<Vec<VerificationReport>> {
    let t = rng.random_range(1..=max_time(d));
    let x = random_boundary_site(rng, d, SPREAD);
    let set = support_set(t, &x)?;
    let p = &set.points[rng.random_range(0..set.len())];
    let f = random_upper_function(rng, &reachable_upper_sites(t, &x));
    let eps = random_nonzero(rng);
    Ok(vec![v.check_uniqueness(t, &x, &f, &p.lower_site(), &eps)?])
}

fn parity(v: &Verifier<'_>, rng: &mut impl Rng, d: usize) -> Result<Vec<VerificationReport>> {
    let horizon = rng.random_range(1..=max_time(d));
    let x0 = random_boundary_site(rng, d, SPREAD).with_height(rng.random_range(1..=3));
    let sites: Vec<Site> = crate::kernel::l1_ball(&x0, u64::from(horizon))
        .into_iter()
        .filter(|z| z.in_upper())
        .collect();
    let f = random_upper_function(rng, &sites);
    Ok(vec![v.barrier_parity(&x0, horizon, &f)?])
}

/// `None` when the kernel is not symmetric around the drawn base.
fn reflection(v: &Verifier<'_>, rng: &mut impl Rng, d: usize) -> Result<Option<Vec<VerificationReport>>> {
    let horizon = rng.random_range(1..=max_time(d));
    let x = random_boundary_site(rng, d, SPREAD);
    if !is_reflection_symmetric(v.transformer().kernel(), horizon, &x) {
        return Ok(None);
    }
    v.check_reflection(horizon, &x).map(Some)
}

fn run_instance(
    v: &Verifier<'_>,
    suite: Suite,
    seed: u64,
    index: u64,
) -> Result<Vec<VerificationReport>> {
    let d = v.transformer().kernel().dimension();
    let mut rng = instance_rng(seed, index);
    let mut out = match suite {
        Suite::Theorem => theorem(v, &mut rng, d)?,
        Suite::Consistency => consistency(v, &mut rng, d)?,
        Suite::Uniqueness => uniqueness(v, &mut rng, d)?,
        Suite::Parity => parity(v, &mut rng, d)?,
        Suite::Reflection => {
            let horizon = rng.random_range(1..=max_time(d));
            let x = random_boundary_site(&mut rng, d, SPREAD);
            v.check_reflection(horizon, &x)?
        }
        Suite::All => {
            let mut all = theorem(v, &mut rng, d)?;
            all.extend(consistency(v, &mut rng, d)?);
            all.extend(uniqueness(v, &mut rng, d)?);
            all.extend(parity(v, &mut rng, d)?);
            all.extend(reflection(v, &mut rng, d)?.unwrap_or_default());
            all
        }
    };
    for r in &mut out {
        *r = r
            .clone()
            .annotate(&[("seed", json!(seed)), ("index", json!(index))]);
    }
    Ok(out)
}

/// Runs `instances` random instances of `suite` against `kernel`.
///
/// An explicit `Suite::Reflection` run on a kernel that is not symmetric
/// fails with [`Error::NotSymmetric`]; under `Suite::All` the reflection part
/// is skipped for such instances.
pub fn run_suite(
    kernel: &StepKernel,
    suite: Suite,
    seed: u64,
    instances: u64,
) -> Result<Vec<VerificationReport>> {
    let verifier = Verifier::new(kernel);
    let chunks: Vec<Result<Vec<VerificationReport>>> = (0..instances)
        .into_par_iter()
        .map(|i| run_instance(&verifier, suite, seed, i))
        .collect();
    let mut out = Vec::new();
    for chunk in chunks {
        out.extend(chunk?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn all_suite_passes_on_uniform_plane() {
        let reports = run_suite(&StepKernel::uniform(2), Suite::All, 7, 6).unwrap();
        assert!(reports.len() >= 6);
        assert!(reports.iter().all(|r| r.pass));
        assert!(reports.iter().any(|r| r.name == "reflection"));
    }

    #[test]
    fn reflection_suite_refuses_biased_kernel() {
        let k = StepKernel::one_dimensional(ratio(2, 3), ratio(1, 3)).unwrap();
        assert!(matches!(
            run_suite(&k, Suite::Reflection, 1, 2),
            Err(Error::NotSymmetric { .. })
        ));
        let reports = run_suite(&k, Suite::All, 1, 4).unwrap();
        assert!(reports.iter().all(|r| r.pass && r.name != "reflection"));
    }

    #[test]
    fn reports_are_deterministic() {
        let k = StepKernel::uniform(1);
        let a = run_suite(&k, Suite::Theorem, 3, 5).unwrap();
        let b = run_suite(&k, Suite::Theorem, 3, 5).unwrap();
        assert_eq!(a, b);
    }
}
