//! Exact finite-horizon laws of the chain, with and without killing at the
//! boundary.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::{Direction, Site, StepKernel};
use crate::rational::Rational;
use crate::transform::LatticeFunction;

/// A finitely supported sub-probability measure on `Z^d`. Sites with zero
/// mass are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Measure {
    masses: BTreeMap<Site, Rational>,
}

impl Measure {
    pub fn point(site: Site) -> Self {
        let mut masses = BTreeMap::new();
        masses.insert(site, Rational::from_integer(1.into()));
        Measure { masses }
    }

    pub fn from_masses(masses: impl IntoIterator<Item = (Site, Rational)>) -> Self {
        let mut m = Measure::default();
        for (site, mass) in masses {
            m.add(site, mass);
        }
        m
    }

    pub fn add(&mut self, site: Site, mass: Rational) {
        use std::collections::btree_map::Entry;
        if mass.is_zero() {
            return;
        }
        match self.masses.entry(site) {
            Entry::Vacant(slot) => {
                slot.insert(mass);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += mass;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn mass(&self, site: &Site) -> Rational {
        self.masses.get(site).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mass_ref(&self, site: &Site) -> Option<&Rational> {
        self.masses.get(site)
    }

    pub fn total(&self) -> Rational {
        self.masses.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Site, &Rational)> {
        self.masses.iter()
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Site> {
        self.masses.keys()
    }
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            site: &'a Site,
            mass: String,
        }
        let mut seq = s.serialize_seq(Some(self.masses.len()))?;
        for (site, mass) in &self.masses {
            seq.serialize_element(&Entry {
                site,
                mass: mass.to_string(),
            })?;
        }
        seq.end()
    }
}

/// One step of the chain: the pushforward of `m` through the kernel.
pub fn step(kernel: &StepKernel, m: &Measure) -> Measure {
    let mut next: BTreeMap<Site, Rational> = BTreeMap::new();
    for (site, mass) in &m.masses {
        let probs = kernel.probs_at(site);
        for dir in Direction::all(kernel.dimension()) {
            let flow = mass * &probs[dir.index()];
            *next.entry(site.step(dir)).or_insert_with(Rational::zero) += flow;
        }
    }
    next.retain(|_, v| !v.is_zero());
    Measure { masses: next }
}

/// Law of `Z_t` started from `x0`.
pub fn evolve(kernel: &StepKernel, x0: &Site, t: u32) -> Result<Measure> {
    kernel.check_site(x0)?;
    let mut m = Measure::point(x0.clone());
    for _ in 0..t {
        m = step(kernel, &m);
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Absorption {
    pub time: u32,
    pub site: Site,
    #[serde(with = "crate::rational::serde_str")]
    pub mass: Rational,
}

/// Law of the chain killed on its first visit to the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KilledEvolution {
    pub surviving: Measure,
    pub absorbed: Vec<Absorption>,
}

impl KilledEvolution {
    pub fn absorbed_total(&self) -> Rational {
        self.absorbed.iter().map(|a| &a.mass).sum()
    }
}

/// Evolves from `x0` (strictly above the boundary) for `t` steps, removing
/// mass the first time it lands on the boundary. A landing at time `t`
/// itself counts as killed.
pub fn evolve_killed(kernel: &StepKernel, x0: &Site, t: u32) -> Result<KilledEvolution> {
    kernel.check_site(x0)?;
    if x0.on_boundary() {
        return Err(Error::StartOnBoundary(x0.clone()));
    }
    if x0.in_lower() {
        return Err(Error::StartBelowBoundary(x0.clone()));
    }
    let mut surviving = Measure::point(x0.clone());
    let mut absorbed = Vec::new();
    for time in 1..=t {
        let mut next = step(kernel, &surviving);
        let hit: Vec<Site> = next.support().filter(|z| z.on_boundary()).cloned().collect();
        for site in hit {
            let mass = next.masses.remove(&site).expect("site taken from support");
            absorbed.push(Absorption { time, site, mass });
        }
        surviving = next;
    }
    Ok(KilledEvolution {
        surviving,
        absorbed,
    })
}

/// `sum_z f(z) m(z)`.
pub fn expect(m: &Measure, f: &LatticeFunction) -> Rational {
    if f.len() < m.len() {
        f.iter()
            .filter_map(|(z, v)| m.mass_ref(z).map(|p| p * v))
            .sum()
    } else {
        m.iter().map(|(z, p)| f.value(z) * p).sum()
    }
}
