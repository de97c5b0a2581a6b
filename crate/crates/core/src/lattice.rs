//! Support sets `S(t, x)`: the (time, boundary site) pairs that index the
//! triangular systems.
//!
//! `(s, y)` belongs to `S(t, x)` when `1 <= s <= t`, `|y - x|_1 <= t - s` and
//! `t - s - |y - x|_1` is even. Equivalently, the chain started at `x` can be
//! at `y + s e_d` (and at `y - s e_d`) at time `t`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{l1_ball, Site};

/// A pair `(s, y)` with `s >= 1` and `y` on the boundary. The derived order
/// is the canonical one: ascending `s`, then lexicographic `y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SupportPoint {
    pub s: u32,
    pub y: Site,
}

impl SupportPoint {
    pub fn new(s: u32, y: Site) -> Self {
        SupportPoint { s, y }
    }

    /// `y + s e_d`, the upper site this point stands for.
    pub fn upper_site(&self) -> Site {
        self.y.with_height(i64::from(self.s))
    }

    /// `y - s e_d`, the lower site this point stands for.
    pub fn lower_site(&self) -> Site {
        self.y.with_height(-i64::from(self.s))
    }

    /// The point indexing a site off the boundary: `(|z_d|, z projected)`.
    pub fn for_site(z: &Site) -> Option<SupportPoint> {
        let h = z.height();
        (h != 0).then(|| SupportPoint::new(h.unsigned_abs() as u32, z.boundary_projection()))
    }
}

impl fmt::Display for SupportPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSet {
    pub t: u32,
    pub x: Site,
    pub points: Vec<SupportPoint>,
}

impl SupportSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn anchor(&self) -> SupportPoint {
        SupportPoint::new(self.t, self.x.clone())
    }

    pub fn contains(&self, p: &SupportPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SupportPoint> {
        self.points.iter()
    }
}

pub(crate) fn check_anchor(t: u32, x: &Site) -> Result<()> {
    if t < 1 || x.dim() == 0 || !x.on_boundary() {
        return Err(Error::InvalidAnchor { t, x: x.clone() });
    }
    Ok(())
}

/// Enumerates `S(t, x)` in canonical order. The anchor `(t, x)` comes last.
pub fn support_set(t: u32, x: &Site) -> Result<SupportSet> {
    check_anchor(t, x)?;
    let d = x.dim();
    let mut points = Vec::new();
    for s in 1..=t {
        let r = u64::from(t - s);
        if d == 1 {
            if r % 2 == 0 {
                points.push(SupportPoint::new(s, x.clone()));
            }
            continue;
        }
        // Walk the L1 ball in the boundary coordinates only.
        let tangent = Site::new(&x.coords()[..d - 1]);
        for w in l1_ball(&tangent, r) {
            if (r - w.l1_distance(&tangent)) % 2 == 0 {
                let mut coords = w.0;
                coords.push(0);
                points.push(SupportPoint::new(s, Site(coords)));
            }
        }
    }
    Ok(SupportSet {
        t,
        x: x.clone(),
        points,
    })
}

/// Membership test for `(s, y)` in `S(t, x)` without enumerating the set.
pub fn is_member(t: u32, x: &Site, s: u32, y: &Site) -> bool {
    if s < 1 || s > t || x.dim() != y.dim() || !y.on_boundary() || !x.on_boundary() {
        return false;
    }
    let dist = x.l1_distance(y);
    let room = u64::from(t - s);
    dist <= room && (room - dist).is_multiple_of(2)
}

pub fn order_index(set: &SupportSet, p: &SupportPoint) -> Result<usize> {
    set.points
        .binary_search(p)
        .map_err(|_| Error::NotMember(p.clone()))
}
