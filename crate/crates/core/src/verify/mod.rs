//! Exact checks of the transform identities, each producing
//! [`VerificationReport`]s, plus a Monte Carlo replication of the static
//! hedge.
//!
//! Every check compares two exact rationals. The main identity says that for
//! an anchor `(t, x)` on the boundary, `E[f(Z_t^x)] = E[Nf(Z_t^x)]`. The
//! barrier parity is its consequence for a start `x0` above the boundary:
//! `E[f(Z_T) 1{tau > T}] = E[f(Z_T)] - E[Nf(Z_T)]`, where `tau` is the first
//! visit to the boundary.

pub mod mc;
pub mod random;
pub mod suite;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::distribution::{evolve_killed, expect};
use crate::error::{Error, Result};
use crate::kernel::{is_reflection_symmetric, l1_ball, Site, StepKernel};
use crate::lattice::{is_member, order_index, SupportPoint};
use crate::rational::Rational;
use crate::transform::{LatticeFunction, Transformer};

pub use mc::{mc_hedge, McEstimate, McHedge};
pub use suite::{run_suite, Suite};

/// What a report expects of its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Equal,
    /// Used by the uniqueness check, which passes when a perturbation shows.
    Differ,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    pub instance: Value,
    pub lhs: Rational,
    pub rhs: Rational,
    pub expect: Relation,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(name: &str, instance: Value, lhs: Rational, rhs: Rational, expect: Relation) -> Self {
        let pass = match expect {
            Relation::Equal => lhs == rhs,
            Relation::Differ => lhs != rhs,
        };
        VerificationReport {
            name: name.to_string(),
            instance,
            lhs,
            rhs,
            expect,
            pass,
        }
    }

    pub fn equal(name: &str, instance: Value, lhs: Rational, rhs: Rational) -> Self {
        VerificationReport::new(name, instance, lhs, rhs, Relation::Equal)
    }

    pub fn difference(&self) -> Rational {
        &self.lhs - &self.rhs
    }

    /// Merges extra fields into the instance description.
    pub fn annotate(mut self, extra: &[(&str, Value)]) -> Self {
        if let Value::Object(map) = &mut self.instance {
            for (k, v) in extra {
                map.insert((*k).to_string(), v.clone());
            }
        }
        self
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({
            "name": self.name,
            "instance": self.instance,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "expect": self.expect,
            "pass": self.pass,
        })
        .serialize(s)
    }
}

pub fn function_json(f: &LatticeFunction) -> Value {
    Value::Array(
        f.iter()
            .map(|(site, v)| json!({"site": site, "value": v.to_string()}))
            .collect(),
    )
}

fn point_json(p: &SupportPoint) -> Value {
    json!({"s": p.s, "y": p.y})
}

/// Runs the checks for one kernel, sharing a [`Transformer`] cache.
pub struct Verifier<'k> {
    transformer: Transformer<'k>,
}

impl<'k> Verifier<'k> {
    pub fn new(kernel: &'k StepKernel) -> Self {
        Verifier {
            transformer: Transformer::new(kernel),
        }
    }

    pub fn transformer(&self) -> &Transformer<'k> {
        &self.transformer
    }

    fn kernel(&self) -> &'k StepKernel {
        self.transformer.kernel()
    }

    /// `E[f(Z_t^x)]` against `E[Nf(Z_t^x)]`, with `Nf` materialized site by
    /// site on the lower part of the support of `Z_t^x`.
    pub fn check_theorem(&self, t: u32, x: &Site, f: &LatticeFunction) -> Result<VerificationReport> {
        // Validates the anchor and the payoff region up front.
        self.transformer.build_system(t, x, crate::transform::Sign::Plus)?;
        let law = self.transformer.law(x, t);
        let nf = self.transformer.transform_on(f, law.support())?;
        Ok(VerificationReport::equal(
            "theorem",
            json!({"t": t, "x": x, "f": function_json(f)}),
            expect(&law, f),
            expect(&law, &nf),
        ))
    }

    /// For every nested anchor `(s, y)` in `S(t, x)`, every unit indicator in
    /// its reach and every row of `S(s, y)`: the entry of `N_{t,x}` against
    /// the entry of `N_{s,y}`.
    pub fn check_consistency(&self, t: u32, x: &Site) -> Result<Vec<VerificationReport>> {
        let (index, outer) = self.transformer.transform_matrix(t, x)?;
        let mut reports = Vec::new();
        for sub in &index.points {
            let (sub_index, inner) = self.transformer.transform_matrix(sub.s, &sub.y)?;
            let map: Vec<usize> = sub_index
                .points
                .iter()
                .map(|p| order_index(&index, p))
                .collect::<Result<_>>()?;
            for (j, col) in sub_index.points.iter().enumerate() {
                for (i, row) in sub_index.points.iter().enumerate() {
                    reports.push(VerificationReport::equal(
                        "consistency",
                        json!({
                            "t": t,
                            "x": x,
                            "sub": point_json(sub),
                            "f": col.upper_site(),
                            "at": row.lower_site(),
                        }),
                        outer[map[i]][map[j]].clone(),
                        inner[i][j].clone(),
                    ));
                }
            }
        }
        Ok(reports)
    }

    /// Perturbs `Nf` by `epsilon` at `perturb_site` and compares the
    /// expectation anchored at that site's own support point with `E[f]`.
    /// Passes when the two differ.
    pub fn check_uniqueness(
        &self,
        t: u32,
        x: &Site,
        f: &LatticeFunction,
        perturb_site: &Site,
        epsilon: &Rational,
    ) -> Result<VerificationReport> {
        use num_traits::Zero;
        if epsilon.is_zero() {
            return Err(Error::ZeroPerturbation);
        }
        self.kernel().check_site(perturb_site)?;
        let anchor = match SupportPoint::for_site(perturb_site) {
            Some(p) if perturb_site.in_lower() && is_member(t, x, p.s, &p.y) => p,
            _ => {
                return Err(Error::UnreachablePerturbation {
                    site: perturb_site.clone(),
                    t,
                    x: x.clone(),
                })
            }
        };
        let law = self.transformer.law(&anchor.y, anchor.s);
        let nf = self.transformer.transform_on(f, law.support())?;
        let perturbed = nf.bumped(perturb_site, epsilon)?;
        Ok(VerificationReport::new(
            "uniqueness",
            json!({
                "t": t,
                "x": x,
                "f": function_json(f),
                "perturb_site": perturb_site,
                "epsilon": epsilon.to_string(),
                "anchor": point_json(&anchor),
            }),
            expect(&law, &perturbed),
            expect(&law, f),
            Relation::Differ,
        ))
    }

    /// `E[f(Z_T) 1{tau > T}]` from the killed evolution against
    /// `E[f(Z_T)] - E[Nf(Z_T)]` from the free one.
    pub fn barrier_parity(&self, x0: &Site, horizon: u32, f: &LatticeFunction) -> Result<VerificationReport> {
        let killed = evolve_killed(self.kernel(), x0, horizon)?;
        let law = self.transformer.law(x0, horizon);
        let nf = self.transformer.transform_on(f, law.support())?;
        Ok(VerificationReport::equal(
            "parity",
            json!({"x0": x0, "T": horizon, "f": function_json(f)}),
            expect(&killed.surviving, f),
            expect(&law, f) - expect(&law, &nf),
        ))
    }

    /// For a reflection-symmetric kernel: every target `z` below the boundary
    /// with `-z_d <= horizon` and `|z - x|_1 <= horizon`, and every unit
    /// indicator in its reach, `N 1_w (z)` against `1_w(reflected z)`.
    pub fn check_reflection(&self, horizon: u32, x: &Site) -> Result<Vec<VerificationReport>> {
        self.kernel().check_site(x)?;
        if !is_reflection_symmetric(self.kernel(), horizon, x) {
            return Err(Error::NotSymmetric {
                horizon,
                base: x.clone(),
            });
        }
        let mut reports = Vec::new();
        for z in l1_ball(x, u64::from(horizon)) {
            if !z.in_lower() {
                continue;
            }
            let anchor = SupportPoint::for_site(&z).expect("z is below the boundary");
            let mirror = z.reflected();
            let table = self.transformer.coefficients_via_solve(anchor.s, &anchor.y)?;
            for (p, c) in &table.coeffs {
                let w = p.upper_site();
                let expected = if w == mirror {
                    Rational::from_integer(1.into())
                } else {
                    Rational::from_integer(0.into())
                };
                reports.push(VerificationReport::equal(
                    "reflection",
                    json!({"horizon": horizon, "x": x, "target": z, "f": w}),
                    c.clone(),
                    expected,
                ));
            }
        }
        Ok(reports)
    }
}

pub fn check_theorem(kernel: &StepKernel, t: u32, x: &Site, f: &LatticeFunction) -> Result<VerificationReport> {
    Verifier::new(kernel).check_theorem(t, x, f)
}

pub fn check_consistency(kernel: &StepKernel, t: u32, x: &Site) -> Result<Vec<VerificationReport>> {
    Verifier::new(kernel).check_consistency(t, x)
}

pub fn check_uniqueness(
    kernel: &StepKernel,
    t: u32,
    x: &Site,
    f: &LatticeFunction,
    perturb_site: &Site,
    epsilon: &Rational,
) -> Result<VerificationReport> {
    Verifier::new(kernel).check_uniqueness(t, x, f, perturb_site, epsilon)
}

pub fn barrier_parity(kernel: &StepKernel, x0: &Site, horizon: u32, f: &LatticeFunction) -> Result<VerificationReport> {
    Verifier::new(kernel).barrier_parity(x0, horizon, f)
}

pub fn check_reflection(kernel: &StepKernel, horizon: u32, x: &Site) -> Result<Vec<VerificationReport>> {
    Verifier::new(kernel).check_reflection(horizon, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn biased() -> StepKernel {
        StepKernel::one_dimensional(ratio(2, 3), ratio(1, 3)).unwrap()
    }

    fn s1(c: i64) -> Site {
        Site::new([c])
    }

    #[test]
    fn theorem_zero_payoff() {
        let r = check_theorem(&biased(), 3, &s1(0), &LatticeFunction::zero_upper()).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, int(0));
        assert_eq!(r.rhs, int(0));
    }

    #[test]
    fn theorem_biased_indicator() {
        let f = LatticeFunction::indicator(s1(3)).unwrap();
        let r = check_theorem(&biased(), 3, &s1(0), &f).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, ratio(8, 27));
        assert_eq!(r.rhs, ratio(8, 27));
    }

    #[test]
    fn theorem_rejects_lower_payoff_and_bad_anchor() {
        let f = LatticeFunction::indicator(s1(-1)).unwrap();
        assert!(matches!(
            check_theorem(&biased(), 1, &s1(0), &f),
            Err(Error::RegionViolation(_))
        ));
        let f = LatticeFunction::indicator(s1(1)).unwrap();
        assert!(matches!(
            check_theorem(&biased(), 1, &s1(2), &f),
            Err(Error::InvalidAnchor { .. })
        ));
    }

    #[test]
    fn consistency_one_dimensional() {
        for k in [StepKernel::uniform(1), biased()] {
            let reports = check_consistency(&k, 3, &s1(0)).unwrap();
            assert!(reports.iter().all(|r| r.pass));
            // Sub-anchor (1,0): both systems give Nf(-1) in terms of f(1).
            let r = reports
                .iter()
                .find(|r| r.instance["sub"]["s"] == 1)
                .unwrap();
            let expected = if k == biased() { int(2) } else { int(1) };
            assert_eq!(r.lhs, expected);
        }
    }

    #[test]
    fn uniqueness_examples() {
        let f = LatticeFunction::indicator(s1(1)).unwrap();
        let r = check_uniqueness(&StepKernel::uniform(1), 3, &s1(0), &f, &s1(-1), &int(1)).unwrap();
        assert!(r.pass);
        assert_eq!(r.difference(), ratio(1, 2));

        let f = LatticeFunction::indicator(s1(3)).unwrap();
        let r = check_uniqueness(&biased(), 3, &s1(0), &f, &s1(-3), &ratio(1, 5)).unwrap();
        assert!(r.pass);
        assert_eq!(r.difference(), ratio(1, 5) * ratio(1, 27));

        assert!(matches!(
            check_uniqueness(&biased(), 3, &s1(0), &f, &s1(-3), &int(0)),
            Err(Error::ZeroPerturbation)
        ));
        assert!(matches!(
            check_uniqueness(&biased(), 3, &s1(0), &f, &s1(-2), &int(1)),
            Err(Error::UnreachablePerturbation { .. })
        ));
    }

    #[test]
    fn parity_examples() {
        let f = LatticeFunction::indicator(s1(1)).unwrap();
        let r = barrier_parity(&StepKernel::uniform(1), &s1(1), 2, &f).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, ratio(1, 4));

        let f = LatticeFunction::indicator(s1(5)).unwrap();
        let r = barrier_parity(&biased(), &s1(4), 3, &f).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, ratio(4, 9));

        assert!(matches!(
            barrier_parity(&biased(), &s1(0), 3, &f),
            Err(Error::StartOnBoundary(_))
        ));
    }

    #[test]
    fn reflection_examples() {
        let reports = check_reflection(&StepKernel::uniform(1), 4, &s1(0)).unwrap();
        assert!(!reports.is_empty());
        assert!(reports.iter().all(|r| r.pass));
        let reports = check_reflection(&StepKernel::uniform(2), 3, &Site::new([0, 0])).unwrap();
        assert!(reports.iter().all(|r| r.pass));
        assert!(matches!(
            check_reflection(&biased(), 2, &s1(0)),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn report_json() {
        let f = LatticeFunction::indicator(s1(1)).unwrap();
        let r = barrier_parity(&StepKernel::uniform(1), &s1(1), 2, &f).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""lhs":"1/4""#));
        assert!(text.contains(r#""pass":true"#));
    }
}
