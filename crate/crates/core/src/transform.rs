//! The triangular systems `W+` and `W-`, the transform `N` built from them,
//! and its explicit coefficients.
//!
//! For an anchor `(t, x)` with `x` on the boundary, rows and columns of both
//! systems are indexed by the support set `S(t, x)` in canonical order. The
//! entry in row `(s, y)`, column `(u, z)` is the probability that the chain
//! started at `y` sits at `z + u e_d` (for `W+`) or `z - u e_d` (for `W-`)
//! at time `s`. It vanishes unless `(u, z)` is in `S(s, y)`, which makes both
//! matrices lower triangular with positive diagonal.
//!
//! The transform of an upper payoff `f` is the lower payoff `g` solving
//! `W- g = W+ f`. Solving by forward substitution costs `O(n^2)` and is exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::distribution::{step, Measure};
use crate::error::{Error, Result};
use crate::kernel::{Site, StepKernel};
use crate::lattice::{check_anchor, support_set, SupportPoint, SupportSet};
use crate::permutation::for_each_signed_permutation;
use crate::rational::Rational;

/// Which half-space a [`LatticeFunction`] lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// Support strictly above the boundary.
    Upper,
    /// Support strictly below the boundary.
    Lower,
}

impl Region {
    fn admits(self, site: &Site) -> bool {
        match self {
            Region::Upper => site.in_upper(),
            Region::Lower => site.in_lower(),
        }
    }
}

/// A finitely supported rational function on `Z^d`, confined to one side of
/// the boundary. Zero values are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFunction {
    region: Region,
    values: BTreeMap<Site, Rational>,
}

impl LatticeFunction {
    pub fn new(
        region: Region,
        values: impl IntoIterator<Item = (Site, Rational)>,
    ) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (site, v) in values {
            if !region.admits(&site) {
                return Err(Error::RegionViolation(format!(
                    "site {site} is outside the {region:?} region"
                )));
            }
            if !v.is_zero() {
                out.insert(site, v);
            }
        }
        Ok(LatticeFunction {
            region,
            values: out,
        })
    }

    pub fn upper(values: impl IntoIterator<Item = (Site, Rational)>) -> Result<Self> {
        LatticeFunction::new(Region::Upper, values)
    }

    pub fn lower(values: impl IntoIterator<Item = (Site, Rational)>) -> Result<Self> {
        LatticeFunction::new(Region::Lower, values)
    }

    pub fn zero_upper() -> Self {
        LatticeFunction {
            region: Region::Upper,
            values: BTreeMap::new(),
        }
    }

    /// The indicator of a single site off the boundary; the region follows
    /// the site.
    pub fn indicator(site: Site) -> Result<Self> {
        let region = if site.in_upper() {
            Region::Upper
        } else if site.in_lower() {
            Region::Lower
        } else {
            return Err(Error::RegionViolation(format!(
                "indicator site {site} lies on the boundary"
            )));
        };
        LatticeFunction::new(region, [(site, Rational::one())])
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn value(&self, site: &Site) -> Rational {
        self.values.get(site).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Site, &Rational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `a * self + b * other`; both operands must share a region.
    pub fn combine(&self, a: &Rational, other: &LatticeFunction, b: &Rational) -> Result<Self> {
        if self.region != other.region {
            return Err(Error::RegionViolation(
                "cannot combine functions on different regions".into(),
            ));
        }
        let mut values: BTreeMap<Site, Rational> = BTreeMap::new();
        for (z, v) in &self.values {
            *values.entry(z.clone()).or_insert_with(Rational::zero) += a * v;
        }
        for (z, v) in &other.values {
            *values.entry(z.clone()).or_insert_with(Rational::zero) += b * v;
        }
        LatticeFunction::new(self.region, values)
    }

    /// Adds `delta` at `site`, which must respect the region.
    pub fn bumped(&self, site: &Site, delta: &Rational) -> Result<Self> {
        let mut values = self.values.clone();
        *values.entry(site.clone()).or_insert_with(Rational::zero) += delta;
        LatticeFunction::new(self.region, values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn site_for(self, p: &SupportPoint) -> Site {
        match self {
            Sign::Plus => p.upper_site(),
            Sign::Minus => p.lower_site(),
        }
    }
}

/// `W+_{t,x}` or `W-_{t,x}` as a dense lower-triangular matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularSystem {
    pub index: SupportSet,
    pub sign: Sign,
    entries: Vec<Vec<Rational>>,
}

impl TriangularSystem {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn diagonal(&self) -> impl Iterator<Item = &Rational> {
        self.entries.iter().enumerate().map(|(i, row)| &row[i])
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row[i + 1..].iter().all(Zero::is_zero))
    }

    /// Product of the diagonal.
    pub fn determinant(&self) -> Rational {
        self.diagonal().fold(Rational::one(), |acc, d| acc * d)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.size());
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Solves `self * g = rhs` by forward substitution.
    pub fn forward_solve(&self, rhs: &[Rational]) -> Vec<Rational> {
        assert_eq!(rhs.len(), self.size());
        let mut g: Vec<Rational> = Vec::with_capacity(rhs.len());
        for (i, row) in self.entries.iter().enumerate() {
            let mut acc = rhs[i].clone();
            for (a, gj) in row[..i].iter().zip(&g) {
                if !a.is_zero() && !gj.is_zero() {
                    acc -= a * gj;
                }
            }
            g.push(acc / &row[i]);
        }
        g
    }

    /// Row-major `"p/q"` strings, for debugging dumps.
    pub fn dense_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl Serialize for TriangularSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TriangularSystem", 5)?;
        st.serialize_field("t", &self.index.t)?;
        st.serialize_field("x", &self.index.x)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("points", &self.index.points)?;
        st.serialize_field("entries", &self.dense_strings())?;
        st.end()
    }
}

/// `N_{t,x} f` on `S(t, x)`: entry `i` is the value of the transform at the
/// lower site of point `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalTransform {
    pub index: SupportSet,
    pub values: Vec<Rational>,
}

impl LocalTransform {
    pub fn at(&self, p: &SupportPoint) -> Option<&Rational> {
        self.index
            .points
            .binary_search(p)
            .ok()
            .map(|i| &self.values[i])
    }

    /// Value at the anchor's own lower site `x - t e_d`.
    pub fn at_anchor(&self) -> &Rational {
        self.values.last().expect("support sets are never empty")
    }

    pub fn to_lower_function(&self) -> LatticeFunction {
        LatticeFunction::lower(
            self.index
                .points
                .iter()
                .zip(&self.values)
                .map(|(p, v)| (p.lower_site(), v.clone())),
        )
        .expect("lower sites lie below the boundary")
    }
}

/// The weights `c_{t,x}(s, y)` with `Nf(x - t e_d) = sum c(s,y) f(y + s e_d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub t: u32,
    pub x: Site,
    pub coeffs: Vec<(SupportPoint, Rational)>,
}

impl CoefficientTable {
    pub fn get(&self, p: &SupportPoint) -> Option<&Rational> {
        self.coeffs.iter().find(|(q, _)| q == p).map(|(_, c)| c)
    }

    pub fn apply(&self, f: &LatticeFunction) -> Rational {
        self.coeffs
            .iter()
            .map(|(p, c)| c * f.value(&p.upper_site()))
            .sum()
    }
}

impl Serialize for CoefficientTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            s: u32,
            y: &'a Site,
            c: String,
        }
        let coeffs: Vec<Entry<'_>> = self
            .coeffs
            .iter()
            .map(|(p, c)| Entry {
                s: p.s,
                y: &p.y,
                c: c.to_string(),
            })
            .collect();
        let mut st = s.serialize_struct("CoefficientTable", 3)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("x", &self.x)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl fmt::Display for CoefficientTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, c) in &self.coeffs {
            writeln!(f, "{p}\t{c}")?;
        }
        Ok(())
    }
}

/// Largest support set for which the permutation sum runs without `force`.
pub const CRAMER_LIMIT: usize = 8;

/// Builds systems and transforms for one kernel, memoizing the laws
/// `P(Z_s^y = .)` and the systems per anchor. Safe to share across threads.
pub struct Transformer<'k> {
    kernel: &'k StepKernel,
    laws: Mutex<HashMap<(Site, u32), Arc<Measure>>>,
    systems: Mutex<HashMap<(u32, Site, Sign), Arc<TriangularSystem>>>,
}

impl<'k> Transformer<'k> {
    pub fn new(kernel: &'k StepKernel) -> Self {
        Transformer {
            kernel,
            laws: Mutex::new(HashMap::new()),
            systems: Mutex::new(HashMap::new()),
        }
    }

    pub fn kernel(&self) -> &'k StepKernel {
        self.kernel
    }

    /// Law of `Z_s` started at `y`.
    pub fn law(&self, y: &Site, s: u32) -> Arc<Measure> {
        let mut laws = self.laws.lock().expect("law cache poisoned");
        let mut start = s;
        while start > 0 && !laws.contains_key(&(y.clone(), start)) {
            start -= 1;
        }
        let mut current = match laws.get(&(y.clone(), start)) {
            Some(m) => Arc::clone(m),
            None => Arc::new(Measure::point(y.clone())),
        };
        for k in start + 1..=s {
            current = Arc::new(step(self.kernel, &current));
            laws.insert((y.clone(), k), Arc::clone(&current));
        }
        current
    }

    fn check_anchor(&self, t: u32, x: &Site) -> Result<()> {
        self.kernel.check_site(x)?;
        check_anchor(t, x)
    }

    pub fn build_system(&self, t: u32, x: &Site, sign: Sign) -> Result<Arc<TriangularSystem>> {
        self.check_anchor(t, x)?;
        let key = (t, x.clone(), sign);
        if let Some(sys) = self.systems.lock().expect("system cache poisoned").get(&key) {
            return Ok(Arc::clone(sys));
        }
        let index = support_set(t, x)?;
        let targets: Vec<Site> = index.points.iter().map(|p| sign.site_for(p)).collect();
        let entries = index
            .points
            .iter()
            .map(|row| {
                let law = self.law(&row.y, row.s);
                targets.iter().map(|z| law.mass(z)).collect()
            })
            .collect();
        let sys = Arc::new(TriangularSystem {
            index,
            sign,
            entries,
        });
        self.systems
            .lock()
            .expect("system cache poisoned")
            .insert(key, Arc::clone(&sys));
        Ok(sys)
    }

    fn check_upper(&self, f: &LatticeFunction) -> Result<()> {
        if f.region() != Region::Upper {
            return Err(Error::RegionViolation(
                "the transform takes functions supported above the boundary".into(),
            ));
        }
        for (site, _) in f.iter() {
            self.kernel.check_site(site)?;
        }
        Ok(())
    }

    /// `N_{t,x} f`, computed as the forward-substitution solution of
    /// `W- g = W+ f`.
    pub fn local_transform(&self, t: u32, x: &Site, f: &LatticeFunction) -> Result<LocalTransform> {
        self.check_upper(f)?;
        let plus = self.build_system(t, x, Sign::Plus)?;
        let minus = self.build_system(t, x, Sign::Minus)?;
        let fvec: Vec<Rational> = plus.index.iter().map(|p| f.value(&p.upper_site())).collect();
        let values = minus.forward_solve(&plus.apply(&fvec));
        Ok(LocalTransform {
            index: plus.index.clone(),
            values,
        })
    }

    /// `Nf(target)` for a target strictly below the boundary, anchored at the
    /// smallest system containing it.
    pub fn transform_at(&self, target: &Site, f: &LatticeFunction) -> Result<Rational> {
        self.kernel.check_site(target)?;
        if !target.in_lower() {
            return Err(Error::RegionViolation(format!(
                "transform target {target} must lie strictly below the boundary"
            )));
        }
        let anchor = SupportPoint::for_site(target).expect("target is off the boundary");
        Ok(self
            .local_transform(anchor.s, &anchor.y, f)?
            .at_anchor()
            .clone())
    }

    /// Materializes `Nf` on the lower sites among `sites`; other sites are
    /// skipped.
    pub fn transform_on<'a>(
        &self,
        f: &LatticeFunction,
        sites: impl IntoIterator<Item = &'a Site>,
    ) -> Result<LatticeFunction> {
        self.check_upper(f)?;
        let mut values = Vec::new();
        for z in sites {
            if z.in_lower() {
                values.push((z.clone(), self.transform_at(z, f)?));
            }
        }
        LatticeFunction::lower(values)
    }

    /// The full matrix `N_{t,x} = (W-)^{-1} W+`; column `j` is the transform
    /// of the indicator of point `j`'s upper site.
    pub fn transform_matrix(&self, t: u32, x: &Site) -> Result<(SupportSet, Vec<Vec<Rational>>)> {
        let plus = self.build_system(t, x, Sign::Plus)?;
        let minus = self.build_system(t, x, Sign::Minus)?;
        let n = plus.size();
        let mut matrix = vec![vec![Rational::zero(); n]; n];
        for col in 0..n {
            let rhs: Vec<Rational> = plus.rows().iter().map(|row| row[col].clone()).collect();
            for (row, v) in minus.forward_solve(&rhs).into_iter().enumerate() {
                matrix[row][col] = v;
            }
        }
        Ok((plus.index.clone(), matrix))
    }

    /// The explicit coefficients, evaluated as the literal signed sum over all
    /// permutations of `S(t, x)` (Cramer's rule for the anchor unknown).
    pub fn cramer_coefficients(&self, t: u32, x: &Site, force: bool) -> Result<CoefficientTable> {
        let plus = self.build_system(t, x, Sign::Plus)?;
        let minus = self.build_system(t, x, Sign::Minus)?;
        let n = plus.size();
        if n > CRAMER_LIMIT && !force {
            return Err(Error::TooLarge {
                size: n,
                limit: CRAMER_LIMIT,
            });
        }
        let last = n - 1;
        let mut sums = vec![Rational::zero(); n];
        // sigma maps each column to the row it draws its factor from; the
        // anchor column is replaced by the corresponding column of W+.
        for_each_signed_permutation(n, |sigma, sign| {
            let mut prod = Rational::from_integer(i64::from(sign).into());
            for (col, &row) in sigma[..last].iter().enumerate() {
                let e = minus.entry(row, col);
                if e.is_zero() {
                    return;
                }
                prod *= e;
            }
            for (k, sum) in sums.iter_mut().enumerate() {
                let p = plus.entry(sigma[last], k);
                if !p.is_zero() {
                    *sum += &prod * p;
                }
            }
        });
        let denominator: Rational = minus.diagonal().fold(Rational::one(), |acc, d| acc * d);
        Ok(CoefficientTable {
            t,
            x: x.clone(),
            coeffs: plus
                .index
                .points
                .iter()
                .cloned()
                .zip(sums.into_iter().map(|s| s / &denominator))
                .collect(),
        })
    }

    /// The same table, obtained by transforming each unit indicator
    /// `1_{y + s e_d}` and reading off the anchor entry.
    pub fn coefficients_via_solve(&self, t: u32, x: &Site) -> Result<CoefficientTable> {
        let index = support_set(t, x)?;
        let mut coeffs = Vec::with_capacity(index.len());
        for p in &index.points {
            let f = LatticeFunction::indicator(p.upper_site())?;
            let c = self.local_transform(t, x, &f)?.at_anchor().clone();
            coeffs.push((p.clone(), c));
        }
        Ok(CoefficientTable {
            t,
            x: x.clone(),
            coeffs,
        })
    }
}

pub fn build_system(kernel: &StepKernel, t: u32, x: &Site, sign: Sign) -> Result<TriangularSystem> {
    Transformer::new(kernel)
        .build_system(t, x, sign)
        .map(|s| (*s).clone())
}

pub fn determinant(system: &TriangularSystem) -> Rational {
    system.determinant()
}

pub fn local_transform(
    kernel: &StepKernel,
    t: u32,
    x: &Site,
    f: &LatticeFunction,
) -> Result<LocalTransform> {
    Transformer::new(kernel).local_transform(t, x, f)
}

pub fn transform_at(kernel: &StepKernel, target: &Site, f: &LatticeFunction) -> Result<Rational> {
    Transformer::new(kernel).transform_at(target, f)
}

pub fn cramer_coefficients(
    kernel: &StepKernel,
    t: u32,
    x: &Site,
    force: bool,
) -> Result<CoefficientTable> {
    Transformer::new(kernel).cramer_coefficients(t, x, force)
}

pub fn coefficients_via_solve(kernel: &StepKernel, t: u32, x: &Site) -> Result<CoefficientTable> {
    Transformer::new(kernel).coefficients_via_solve(t, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn biased() -> StepKernel {
        StepKernel::one_dimensional(ratio(2, 3), ratio(1, 3)).unwrap()
    }

    fn x1() -> Site {
        Site::new([0])
    }

    fn upper(pairs: &[(i64, Rational)]) -> LatticeFunction {
        LatticeFunction::upper(pairs.iter().map(|(z, v)| (Site::new([*z]), v.clone()))).unwrap()
    }

    fn strings(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn symmetric_systems() {
        let k = StepKernel::uniform(1);
        for sign in [Sign::Plus, Sign::Minus] {
            let sys = build_system(&k, 3, &x1(), sign).unwrap();
            assert_eq!(sys.dense_strings(), strings(&[&["1/2", "0"], &["3/8", "1/8"]]));
            assert_eq!(determinant(&sys), ratio(1, 16));
        }
    }

    #[test]
    fn biased_minus_system() {
        let sys = build_system(&biased(), 3, &x1(), Sign::Minus).unwrap();
        assert_eq!(sys.dense_strings(), strings(&[&["1/3", "0"], &["2/9", "1/27"]]));
        assert_eq!(determinant(&sys), ratio(1, 81));
    }

    #[test]
    fn single_entry_determinant() {
        let sys = build_system(&biased(), 1, &x1(), Sign::Plus).unwrap();
        assert_eq!(sys.size(), 1);
        assert_eq!(determinant(&sys), ratio(2, 3));
    }

    #[test]
    fn rejects_bad_anchor() {
        let k = StepKernel::uniform(2);
        assert!(matches!(
            build_system(&k, 2, &Site::new([0, 1]), Sign::Plus),
            Err(Error::InvalidAnchor { .. })
        ));
        assert!(matches!(
            build_system(&k, 2, &Site::new([0]), Sign::Plus),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn symmetric_local_transform_reflects() {
        let k = StepKernel::uniform(1);
        let f = upper(&[(1, ratio(5, 7)), (2, int(9)), (3, ratio(-2, 3))]);
        let g = local_transform(&k, 3, &x1(), &f).unwrap();
        assert_eq!(g.values, vec![ratio(5, 7), ratio(-2, 3)]);
    }

    #[test]
    fn biased_local_transform() {
        let f = upper(&[(1, ratio(3, 5)), (3, ratio(7, 2))]);
        let g = local_transform(&biased(), 3, &x1(), &f).unwrap();
        assert_eq!(g.values, vec![ratio(6, 5), int(28)]);
        let zero = local_transform(&biased(), 3, &x1(), &LatticeFunction::zero_upper()).unwrap();
        assert!(zero.values.iter().all(Zero::is_zero));
    }

    #[test]
    fn local_transform_rejects_lower_payoff() {
        let f = LatticeFunction::indicator(Site::new([-1])).unwrap();
        assert!(matches!(
            local_transform(&biased(), 1, &x1(), &f),
            Err(Error::RegionViolation(_))
        ));
    }

    #[test]
    fn transform_at_targets() {
        let f = upper(&[(1, ratio(4, 5))]);
        assert_eq!(transform_at(&biased(), &Site::new([-1]), &f).unwrap(), ratio(8, 5));
        let k = StepKernel::uniform(1);
        let f = upper(&[(1, int(1)), (2, int(2)), (3, int(3)), (4, int(4))]);
        for j in 1..=4 {
            assert_eq!(transform_at(&k, &Site::new([-j]), &f).unwrap(), int(j));
        }
        let k2 = StepKernel::uniform(2);
        let f = LatticeFunction::indicator(Site::new([1, 2])).unwrap();
        assert_eq!(transform_at(&k2, &Site::new([1, -2]), &f).unwrap(), int(1));
        assert!(matches!(
            transform_at(&k, &Site::new([0]), &f),
            Err(Error::RegionViolation(_))
        ));
    }

    #[test]
    fn cramer_examples() {
        let k = StepKernel::uniform(1);
        let c = cramer_coefficients(&k, 3, &x1(), false).unwrap();
        assert_eq!(c.coeffs.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>(), vec![int(0), int(1)]);
        let c = cramer_coefficients(&biased(), 3, &x1(), false).unwrap();
        assert_eq!(c.coeffs.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>(), vec![int(0), int(8)]);
        let c = cramer_coefficients(&biased(), 1, &x1(), false).unwrap();
        assert_eq!(c.coeffs, vec![(SupportPoint::new(1, x1()), int(2))]);
        for (t, kern) in [(3, &k), (3, &biased()), (1, &biased())] {
            assert_eq!(
                cramer_coefficients(kern, t, &x1(), false).unwrap(),
                coefficients_via_solve(kern, t, &x1()).unwrap()
            );
        }
    }

    #[test]
    fn cramer_guard() {
        let k = StepKernel::uniform(2);
        assert!(matches!(
            cramer_coefficients(&k, 4, &Site::new([0, 0]), false),
            Err(Error::TooLarge { size: 10, .. })
        ));
    }

    #[test]
    fn solve_coefficients_uniform_plane() {
        let k = StepKernel::uniform(2);
        let c = coefficients_via_solve(&k, 2, &Site::new([0, 0])).unwrap();
        assert_eq!(
            c.coeffs.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>(),
            vec![int(0), int(0), int(1)]
        );
        let c = coefficients_via_solve(&k, 1, &Site::new([3, 0])).unwrap();
        assert_eq!(c.coeffs.len(), 1);
    }

    #[test]
    fn table_serialization() {
        let c = coefficients_via_solve(&biased(), 3, &x1()).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"t":3,"x":[0],"coeffs":[{"s":1,"y":[0],"c":"0"},{"s":3,"y":[0],"c":"8"}]}"#
        );
    }

    #[test]
    fn lattice_function_regions() {
        assert!(LatticeFunction::upper([(Site::new([0]), int(1))]).is_err());
        assert!(LatticeFunction::lower([(Site::new([2]), int(1))]).is_err());
        assert!(LatticeFunction::indicator(Site::new([0, 0])).is_err());
        let f = LatticeFunction::upper([(Site::new([1]), int(0))]).unwrap();
        assert!(f.is_empty());
    }
}
