//! Nearest-neighbor step kernels on the integer lattice.
//!
//! A kernel assigns to every site of `Z^d` a probability for each of the `2d`
//! unit moves. Kernels here are a default probability vector plus finitely
//! many site overrides; every probability must be strictly positive and the
//! `2d` probabilities at a site must sum to exactly one.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// A point of `Z^d`. The last coordinate is the one measured against the
/// boundary hyperplane `{x_d = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Site(pub Vec<i64>);

impl Site {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Site(coords.into())
    }

    pub fn origin(dim: usize) -> Self {
        Site(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// The coordinate normal to the boundary.
    pub fn height(&self) -> i64 {
        *self.0.last().expect("sites have dimension >= 1")
    }

    pub fn on_boundary(&self) -> bool {
        self.height() == 0
    }

    pub fn in_upper(&self) -> bool {
        self.height() > 0
    }

    pub fn in_lower(&self) -> bool {
        self.height() < 0
    }

    pub fn with_height(&self, h: i64) -> Site {
        let mut coords = self.0.clone();
        *coords.last_mut().expect("sites have dimension >= 1") = h;
        Site(coords)
    }

    /// Projection onto the boundary.
    pub fn boundary_projection(&self) -> Site {
        self.with_height(0)
    }

    /// Mirror image through the boundary hyperplane.
    pub fn reflected(&self) -> Site {
        self.with_height(-self.height())
    }

    pub fn step(&self, dir: Direction) -> Site {
        let mut coords = self.0.clone();
        coords[dir.axis - 1] += if dir.positive { 1 } else { -1 };
        Site(coords)
    }

    pub fn l1_distance(&self, other: &Site) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.abs_diff(*b))
            .sum()
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl std::borrow::Borrow<[i64]> for Site {
    fn borrow(&self) -> &[i64] {
        &self.0
    }
}

/// Every site within L1 distance `radius` of `center`, in lexicographic order.
pub fn l1_ball(center: &Site, radius: u64) -> Vec<Site> {
    let mut out = Vec::new();
    let mut offset = Vec::with_capacity(center.dim());
    fill_ball(center.dim(), radius as i64, &mut offset, &mut |off| {
        out.push(Site(
            center.0.iter().zip(off).map(|(c, o)| c + o).collect(),
        ));
    });
    out
}

fn fill_ball(dim: usize, budget: i64, prefix: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    if prefix.len() == dim {
        emit(prefix);
        return;
    }
    for v in -budget..=budget {
        prefix.push(v);
        fill_ball(dim, budget - v.abs(), prefix, emit);
        prefix.pop();
    }
}

/// A unit move `±e_axis`, with `axis` counted from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction {
    pub axis: usize,
    pub positive: bool,
}

impl Direction {
    pub fn plus(axis: usize) -> Self {
        Direction {
            axis,
            positive: true,
        }
    }

    pub fn minus(axis: usize) -> Self {
        Direction {
            axis,
            positive: false,
        }
    }

    /// The `2d` directions in storage order `+1, -1, +2, -2, ...`.
    pub fn all(dim: usize) -> impl Iterator<Item = Direction> {
        (1..=dim).flat_map(|axis| [Direction::plus(axis), Direction::minus(axis)])
    }

    pub fn index(self) -> usize {
        2 * (self.axis - 1) + usize::from(!self.positive)
    }

    pub fn opposite(self) -> Self {
        Direction {
            axis: self.axis,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.positive { '+' } else { '-' }, self.axis)
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad direction key {s:?}; expected \"+k\" or \"-k\""));
        let (positive, rest) = match s.as_bytes().first() {
            Some(b'+') => (true, &s[1..]),
            Some(b'-') => (false, &s[1..]),
            _ => return Err(bad()),
        };
        let axis: usize = rest.parse().map_err(|_| bad())?;
        if axis == 0 {
            return Err(bad());
        }
        Ok(Direction { axis, positive })
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub type DirectionProbs = BTreeMap<Direction, Rational>;

/// Unvalidated kernel description, exactly as read from a kernel file.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    pub dimension: usize,
    pub default: DirectionProbs,
    pub overrides: Vec<(Site, DirectionProbs)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelFile {
    dimension: usize,
    default: BTreeMap<String, String>,
    #[serde(default)]
    overrides: Vec<OverrideFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OverrideFile {
    site: Vec<i64>,
    probs: BTreeMap<String, String>,
}

fn parse_probs(raw: &BTreeMap<String, String>) -> Result<DirectionProbs> {
    raw.iter()
        .map(|(k, v)| Ok((k.parse()?, parse_rational(v)?)))
        .collect()
}

fn render_probs(probs: &DirectionProbs) -> BTreeMap<String, String> {
    probs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

impl KernelSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: KernelFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("kernel file: {e}")))?;
        Ok(KernelSpec {
            dimension: file.dimension,
            default: parse_probs(&file.default)?,
            overrides: file
                .overrides
                .iter()
                .map(|o| Ok((Site(o.site.clone()), parse_probs(&o.probs)?)))
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_json(&self) -> String {
        let file = KernelFile {
            dimension: self.dimension,
            default: render_probs(&self.default),
            overrides: self
                .overrides
                .iter()
                .map(|(site, probs)| OverrideFile {
                    site: site.0.clone(),
                    probs: render_probs(probs),
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("kernel files always serialize")
    }
}

/// One reason a kernel description is not a valid kernel. `site: None`
/// refers to the default vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    MassViolation {
        site: Option<Site>,
        #[serde(with = "crate::rational::serde_str")]
        sum: Rational,
    },
    NondegeneracyViolation {
        site: Option<Site>,
        direction: Direction,
    },
    DimensionMismatch {
        site: Option<Site>,
        detail: String,
    },
    MissingDirection {
        site: Option<Site>,
        direction: Direction,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = |site: &Option<Site>| match site {
            Some(s) => format!("site {s}"),
            None => "default".to_string(),
        };
        match self {
            Violation::MassViolation { site, sum } => {
                write!(f, "{}: probabilities sum to {sum}, not 1", at(site))
            }
            Violation::NondegeneracyViolation { site, direction } => {
                write!(f, "{}: probability of {direction} is not positive", at(site))
            }
            Violation::DimensionMismatch { site, detail } => write!(f, "{}: {detail}", at(site)),
            Violation::MissingDirection { site, direction } => {
                write!(f, "{}: direction {direction} missing", at(site))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

fn check_vector(
    dim: usize,
    site: Option<&Site>,
    probs: &DirectionProbs,
    out: &mut Vec<Violation>,
) {
    let tag = || site.cloned();
    for dir in probs.keys() {
        if dir.axis > dim {
            out.push(Violation::DimensionMismatch {
                site: tag(),
                detail: format!("direction {dir} exceeds dimension {dim}"),
            });
        }
    }
    let mut complete = true;
    for dir in Direction::all(dim) {
        match probs.get(&dir) {
            None => {
                complete = false;
                out.push(Violation::MissingDirection {
                    site: tag(),
                    direction: dir,
                });
            }
            Some(p) if !p.is_positive() => out.push(Violation::NondegeneracyViolation {
                site: tag(),
                direction: dir,
            }),
            Some(_) => {}
        }
    }
    if complete {
        let sum: Rational = probs.values().sum();
        if !sum.is_one() {
            out.push(Violation::MassViolation { site: tag(), sum });
        }
    }
}

/// Checks positivity and unit mass at the default vector and at every
/// override.
pub fn validate_kernel(spec: &KernelSpec) -> ValidationReport {
    let mut violations = Vec::new();
    if spec.dimension == 0 {
        violations.push(Violation::DimensionMismatch {
            site: None,
            detail: "dimension must be at least 1".into(),
        });
        return ValidationReport {
            ok: false,
            violations,
        };
    }
    check_vector(spec.dimension, None, &spec.default, &mut violations);
    let mut seen = BTreeMap::new();
    for (site, probs) in &spec.overrides {
        if site.dim() != spec.dimension {
            violations.push(Violation::DimensionMismatch {
                site: Some(site.clone()),
                detail: format!(
                    "override site has dimension {}, expected {}",
                    site.dim(),
                    spec.dimension
                ),
            });
            continue;
        }
        if seen.insert(site.clone(), ()).is_some() {
            violations.push(Violation::DimensionMismatch {
                site: Some(site.clone()),
                detail: "site overridden more than once".into(),
            });
        }
        check_vector(spec.dimension, Some(site), probs, &mut violations);
    }
    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// A validated, time-homogeneous nearest-neighbor kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepKernel {
    dimension: usize,
    default: Vec<Rational>,
    overrides: BTreeMap<Site, Vec<Rational>>,
}

fn dense(dim: usize, probs: &DirectionProbs) -> Vec<Rational> {
    Direction::all(dim).map(|d| probs[&d].clone()).collect()
}

impl StepKernel {
    pub fn from_spec(spec: &KernelSpec) -> std::result::Result<Self, ValidationReport> {
        let report = validate_kernel(spec);
        if !report.ok {
            return Err(report);
        }
        Ok(StepKernel {
            dimension: spec.dimension,
            default: dense(spec.dimension, &spec.default),
            overrides: spec
                .overrides
                .iter()
                .map(|(site, probs)| (site.clone(), dense(spec.dimension, probs)))
                .collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec = KernelSpec::from_json(text)?;
        StepKernel::from_spec(&spec).map_err(|r| Error::InvalidKernel(r.to_string()))
    }

    /// Same probabilities everywhere, given in storage order
    /// `+1, -1, +2, -2, ...`.
    pub fn homogeneous(probs: Vec<Rational>) -> Result<Self> {
        if !probs.len().is_multiple_of(2) || probs.is_empty() {
            return Err(Error::InvalidKernel(format!(
                "expected an even, nonzero number of probabilities, got {}",
                probs.len()
            )));
        }
        let dim = probs.len() / 2;
        let spec = KernelSpec {
            dimension: dim,
            default: Direction::all(dim).zip(probs).collect(),
            overrides: Vec::new(),
        };
        StepKernel::from_spec(&spec).map_err(|r| Error::InvalidKernel(r.to_string()))
    }

    /// Simple symmetric random walk: `1/(2d)` in every direction.
    pub fn uniform(dim: usize) -> Self {
        let p = Rational::new(1.into(), (2 * dim as i64).into());
        StepKernel::homogeneous(vec![p; 2 * dim]).expect("uniform kernel is valid")
    }

    /// One-dimensional walk stepping up with `up` and down with `down`.
    pub fn one_dimensional(up: Rational, down: Rational) -> Result<Self> {
        StepKernel::homogeneous(vec![up, down])
    }

    /// Returns a copy with the probabilities at `site` replaced.
    pub fn with_override(&self, site: Site, probs: Vec<Rational>) -> Result<Self> {
        let mut spec = self.to_spec();
        spec.overrides.retain(|(s, _)| *s != site);
        spec.overrides
            .push((site, Direction::all(self.dimension).zip(probs).collect()));
        StepKernel::from_spec(&spec).map_err(|r| Error::InvalidKernel(r.to_string()))
    }

    pub fn to_spec(&self) -> KernelSpec {
        let sparse =
            |v: &[Rational]| Direction::all(self.dimension).zip(v.iter().cloned()).collect();
        KernelSpec {
            dimension: self.dimension,
            default: sparse(&self.default),
            overrides: self
                .overrides
                .iter()
                .map(|(s, v)| (s.clone(), sparse(v)))
                .collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn overrides(&self) -> impl Iterator<Item = (&Site, &[Rational])> {
        self.overrides.iter().map(|(s, v)| (s, v.as_slice()))
    }

    pub fn default_probs(&self) -> &[Rational] {
        &self.default
    }

    /// The `2d` move probabilities at `site`, in storage order.
    pub fn probs_at(&self, site: &Site) -> &[Rational] {
        self.overrides.get(site).unwrap_or(&self.default)
    }

    pub fn step_probability(&self, site: &Site, dir: Direction) -> &Rational {
        assert!(
            dir.axis >= 1 && dir.axis <= self.dimension,
            "direction {dir} outside dimension {}",
            self.dimension
        );
        &self.probs_at(site)[dir.index()]
    }

    pub(crate) fn check_site(&self, site: &Site) -> Result<()> {
        if site.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                site: site.clone(),
                expected: self.dimension,
                found: site.dim(),
            });
        }
        Ok(())
    }
}

/// Whether the kernel is invariant under reflection through the boundary on
/// the L1 ball of radius `horizon` around `base`: the probabilities at `z`
/// must match those at the mirrored site with `+e_d` and `-e_d` swapped.
pub fn is_reflection_symmetric(kernel: &StepKernel, horizon: u32, base: &Site) -> bool {
    let d = kernel.dimension();
    l1_ball(base, u64::from(horizon)).iter().all(|z| {
        let here = kernel.probs_at(z);
        let there = kernel.probs_at(&z.reflected());
        Direction::all(d).all(|dir| {
            let mirrored = if dir.axis == d { dir.opposite() } else { dir };
            here[dir.index()] == there[mirrored.index()]
        })
    })
}

/// Total mass at a site, which validation pins to one.
pub fn mass_at(kernel: &StepKernel, site: &Site) -> Rational {
    kernel
        .probs_at(site)
        .iter()
        .fold(Rational::zero(), |acc, p| acc + p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn biased() -> StepKernel {
        StepKernel::one_dimensional(ratio(2, 3), ratio(1, 3)).unwrap()
    }

    #[test]
    fn uniform_kernel_validates() {
        let k = StepKernel::uniform(2);
        assert!(validate_kernel(&k.to_spec()).ok);
        for dir in Direction::all(2) {
            assert_eq!(*k.step_probability(&Site::new([7, -3]), dir), ratio(1, 4));
        }
    }

    #[test]
    fn biased_kernel_lookup() {
        let k = biased();
        assert!(validate_kernel(&k.to_spec()).ok);
        assert_eq!(*k.step_probability(&Site::new([5]), Direction::minus(1)), ratio(1, 3));
    }

    #[test]
    fn zero_probability_is_rejected() {
        let spec = KernelSpec {
            dimension: 1,
            default: [(Direction::plus(1), int(1)), (Direction::minus(1), int(0))].into(),
            overrides: vec![],
        };
        let report = validate_kernel(&spec);
        assert!(!report.ok);
        assert_eq!(
            report.violations,
            vec![Violation::NondegeneracyViolation {
                site: None,
                direction: Direction::minus(1)
            }]
        );
    }

    #[test]
    fn mass_and_dimension_violations() {
        let spec = KernelSpec {
            dimension: 1,
            default: [(Direction::plus(1), ratio(1, 2)), (Direction::minus(1), ratio(1, 3))].into(),
            overrides: vec![(
                Site::new([1, 1]),
                [(Direction::plus(1), ratio(1, 2)), (Direction::minus(1), ratio(1, 2))].into(),
            )],
        };
        let report = validate_kernel(&spec);
        assert!(matches!(
            report.violations[0],
            Violation::MassViolation { site: None, .. }
        ));
        assert!(matches!(
            report.violations[1],
            Violation::DimensionMismatch { .. }
        ));

        let spec = KernelSpec {
            dimension: 1,
            default: [
                (Direction::plus(1), ratio(1, 2)),
                (Direction::minus(1), ratio(1, 2)),
                (Direction::plus(2), ratio(1, 2)),
            ]
            .into(),
            overrides: vec![],
        };
        assert!(validate_kernel(&spec)
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DimensionMismatch { .. })));
    }

    #[test]
    fn override_takes_precedence() {
        let k = StepKernel::uniform(2)
            .with_override(
                Site::new([0, 1]),
                vec![ratio(1, 8), ratio(1, 8), ratio(1, 2), ratio(1, 4)],
            )
            .unwrap();
        assert_eq!(
            *k.step_probability(&Site::new([0, 1]), Direction::plus(2)),
            ratio(1, 2)
        );
        assert_eq!(
            *k.step_probability(&Site::new([0, 2]), Direction::plus(2)),
            ratio(1, 4)
        );
    }

    #[test]
    fn reflection_symmetry() {
        assert!(is_reflection_symmetric(&StepKernel::uniform(2), 5, &Site::origin(2)));
        assert!(!is_reflection_symmetric(&biased(), 1, &Site::origin(1)));

        let k = StepKernel::uniform(1)
            .with_override(Site::new([3]), vec![ratio(1, 3), ratio(2, 3)])
            .unwrap();
        assert!(!is_reflection_symmetric(&k, 3, &Site::origin(1)));
        assert!(is_reflection_symmetric(&k, 2, &Site::origin(1)));
        let mirrored = k
            .with_override(Site::new([-3]), vec![ratio(2, 3), ratio(1, 3)])
            .unwrap();
        assert!(is_reflection_symmetric(&mirrored, 10, &Site::origin(1)));
    }

    #[test]
    fn kernel_json_round_trip() {
        let text = r#"{"dimension": 2, "default": {"+1": "1/4", "-1": "1/4", "+2": "1/4", "-2": "1/4"},
            "overrides": [{"site": [0, 1], "probs": {"+1": "1/8", "-1": "1/8", "+2": "1/2", "-2": "1/4"}}]}"#;
        let k = StepKernel::from_json(text).unwrap();
        assert_eq!(StepKernel::from_json(&k.to_spec().to_json()).unwrap(), k);
        assert!(KernelSpec::from_json(r#"{"dimension": 1, "default": {}, "extra": 1}"#).is_err());
        assert!(matches!(
            StepKernel::from_json(r#"{"dimension": 1, "default": {"+1": "1", "-1": "0"}}"#),
            Err(Error::InvalidKernel(_))
        ));
    }

    #[test]
    fn ball_enumeration() {
        let ball = l1_ball(&Site::origin(2), 1);
        let coords: Vec<_> = ball.iter().map(|s| s.0.clone()).collect();
        assert_eq!(coords, vec![vec![-1, 0], vec![0, -1], vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(l1_ball(&Site::origin(3), 2).len(), 25);
    }
}
