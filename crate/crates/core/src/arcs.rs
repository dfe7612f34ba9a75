//! Arcs of the ∞-gon and finite descriptions of infinite arc families.
//!
//! An [`Orbit`] is a one-parameter linear family `(m + k*dl, n + k*dr)` for
//! `0 <= k < count`; an [`ArcFamily`] is a list of orbits with a finite set of
//! exceptions. Every query on a family reduces either to a one-variable
//! interval computation (single orbit against a fixed arc) or to a
//! two-variable integer system solved by [`crate::lattice`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::System;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("({0},{1}) is not an arc: endpoints must satisfy m <= n-2")]
    TooShort(i64, i64),
}

/// A diagonal `(left, right)` of the ∞-gon, `left <= right - 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", try_from = "[i64; 2]")]
pub struct Arc {
    left: i64,
    right: i64,
}

impl Arc {
    pub fn new(left: i64, right: i64) -> Result<Self, ArcError> {
        if left <= right - 2 {
            Ok(Arc { left, right })
        } else {
            Err(ArcError::TooShort(left, right))
        }
    }

    pub(crate) fn new_unchecked(left: i64, right: i64) -> Self {
        debug_assert!(left <= right - 2);
        Arc { left, right }
    }

    pub fn left(self) -> i64 {
        self.left
    }

    pub fn right(self) -> i64 {
        self.right
    }

    pub fn translate(self, t: i64) -> Arc {
        Arc {
            left: self.left + t,
            right: self.right + t,
        }
    }

    pub fn crosses(self, other: Arc) -> bool {
        crosses(self, other)
    }

    pub fn has_endpoint(self, v: i64) -> bool {
        self.left == v || self.right == v
    }

    /// Key of the deterministic witness order: `(|left| + |right|, left, right)`.
    pub fn scan_key(self) -> (i64, i64, i64) {
        (self.left.abs() + self.right.abs(), self.left, self.right)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

impl From<Arc> for [i64; 2] {
    fn from(a: Arc) -> Self {
        [a.left, a.right]
    }
}

impl TryFrom<[i64; 2]> for Arc {
    type Error = ArcError;

    fn try_from(v: [i64; 2]) -> Result<Self, Self::Error> {
        Arc::new(v[0], v[1])
    }
}

impl FromStr for Arc {
    type Err = String;

    /// Parses `M,N`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, r) = s
            .split_once(',')
            .ok_or_else(|| format!("expected M,N but got {s:?}"))?;
        let l: i64 = l.trim().parse().map_err(|e| format!("{l:?}: {e}"))?;
        let r: i64 = r.trim().parse().map_err(|e| format!("{r:?}: {e}"))?;
        Arc::new(l, r).map_err(|e| e.to_string())
    }
}

/// Strict interleaving of endpoints. Shared endpoints never cross.
pub fn crosses(a: Arc, b: Arc) -> bool {
    (a.left < b.left && b.left < a.right && a.right < b.right)
        || (b.left < a.left && a.left < b.right && b.right < a.right)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("window [{0},{1}] is empty")]
    Inverted(i64, i64),
    #[error("expected LO:HI but got {0:?}")]
    Syntax(String),
}

/// A finite viewport `[lo, hi]` of consecutive vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WindowRepr", into = "WindowRepr")]
pub struct Window {
    lo: i64,
    hi: i64,
}

#[derive(Serialize, Deserialize)]
struct WindowRepr {
    lo: i64,
    hi: i64,
}

impl TryFrom<WindowRepr> for Window {
    type Error = WindowError;

    fn try_from(r: WindowRepr) -> Result<Self, Self::Error> {
        Window::new(r.lo, r.hi)
    }
}

impl From<Window> for WindowRepr {
    fn from(w: Window) -> Self {
        WindowRepr { lo: w.lo, hi: w.hi }
    }
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self, WindowError> {
        if lo <= hi {
            Ok(Window { lo, hi })
        } else {
            Err(WindowError::Inverted(lo, hi))
        }
    }

    /// `[-radius, radius]`.
    pub fn symmetric(radius: u32) -> Self {
        Window {
            lo: -(radius as i64),
            hi: radius as i64,
        }
    }

    pub fn lo(self) -> i64 {
        self.lo
    }

    pub fn hi(self) -> i64 {
        self.hi
    }

    pub fn vertex_count(self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn contains(self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_arc(self, a: Arc) -> bool {
        self.contains(a.left) && self.contains(a.right)
    }

    pub fn widen(self, by: i64) -> Window {
        Window {
            lo: self.lo - by,
            hi: self.hi + by,
        }
    }

    /// Every arc with both endpoints in the window, in lexicographic order.
    pub fn arcs(self) -> impl Iterator<Item = Arc> {
        let (lo, hi) = (self.lo, self.hi);
        (lo..=hi).flat_map(move |l| (l + 2..=hi).map(move |r| Arc::new_unchecked(l, r)))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = WindowError;

    /// Parses `LO:HI`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WindowError::Syntax(s.to_string());
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        Window::new(lo, hi)
    }
}

/// Number of members of an orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl Count {
    fn last_index(self) -> Option<u64> {
        match self {
            Count::Finite(n) => Some(n.saturating_sub(1)),
            Count::Infinite => None,
        }
    }
}

/// An integer interval, possibly unbounded on either side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    lo: Option<i64>,
    hi: Option<i64>,
}

impl Span {
    pub fn point(v: i64) -> Self {
        Span {
            lo: Some(v),
            hi: Some(v),
        }
    }

    pub fn between(lo: i64, hi: i64) -> Self {
        Span {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    pub fn at_most(hi: i64) -> Self {
        Span {
            lo: None,
            hi: Some(hi),
        }
    }

    pub fn at_least(lo: i64) -> Self {
        Span {
            lo: Some(lo),
            hi: None,
        }
    }

    pub fn all() -> Self {
        Span { lo: None, hi: None }
    }
}

/// Inclusive parameter range `lo..=hi` (`hi = None` means unbounded).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct KRange {
    lo: u64,
    hi: Option<u64>,
}

impl KRange {
    fn contains(self, k: u64) -> bool {
        k >= self.lo && self.hi.is_none_or(|h| k <= h)
    }
}

/// Values of `k >= 0` with `base + k*step` inside `span`, as `(lo, hi)` over
/// the integers (hi may be unbounded; the range may be empty).
fn solve_linear(base: i64, step: i64, span: Span) -> (i64, Option<i64>) {
    let mut lo = 0i64;
    let mut hi: Option<i64> = None;
    let mut cap = |v: i64| hi = Some(hi.map_or(v, |h: i64| h.min(v)));
    match step.signum() {
        0 => {
            let inside = span.lo.is_none_or(|l| base >= l) && span.hi.is_none_or(|h| base <= h);
            if !inside {
                return (0, Some(-1));
            }
        }
        1 => {
            if let Some(l) = span.lo {
                lo = lo.max(Integer::div_ceil(&(l - base), &step));
            }
            if let Some(h) = span.hi {
                cap(Integer::div_floor(&(h - base), &step));
            }
        }
        _ => {
            let s = -step;
            if let Some(l) = span.lo {
                cap(Integer::div_floor(&(base - l), &s));
            }
            if let Some(h) = span.hi {
                lo = lo.max(Integer::div_ceil(&(base - h), &s));
            }
        }
    }
    (lo, hi)
}

/// A linear family `(m + k*dl, n + k*dr)`, `0 <= k < count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    base: Arc,
    dl: i64,
    dr: i64,
    count: Count,
}

impl Orbit {
    /// Steps are ignored (stored as zero) when `count` is one.
    pub fn new(base: Arc, dl: i64, dr: i64, count: Count) -> Self {
        if count == Count::Finite(1) {
            Orbit::single(base)
        } else {
            Orbit {
                base,
                dl,
                dr,
                count,
            }
        }
    }

    pub fn infinite(base: Arc, dl: i64, dr: i64) -> Self {
        Orbit::new(base, dl, dr, Count::Infinite)
    }

    pub fn single(arc: Arc) -> Self {
        Orbit {
            base: arc,
            dl: 0,
            dr: 0,
            count: Count::Finite(1),
        }
    }

    pub fn base(&self) -> Arc {
        self.base
    }

    pub fn step_left(&self) -> i64 {
        self.dl
    }

    pub fn step_right(&self) -> i64 {
        self.dr
    }

    pub fn count(&self) -> Count {
        self.count
    }

    pub fn is_single(&self) -> bool {
        self.count == Count::Finite(1)
    }

    pub fn is_infinite(&self) -> bool {
        self.count == Count::Infinite
    }

    /// Raw endpoints of the `k`-th member (not checked for validity).
    pub fn endpoints_at(&self, k: u64) -> (i64, i64) {
        let k = k as i64;
        (self.base.left + k * self.dl, self.base.right + k * self.dr)
    }

    /// The `k`-th member, if `k` is in range. Assumes a validated orbit.
    pub fn arc_at(&self, k: u64) -> Option<Arc> {
        if self.count.last_index().is_some_and(|last| k > last) {
            return None;
        }
        let (l, r) = self.endpoints_at(k);
        Arc::new(l, r).ok()
    }

    /// Finite orbits only: the last member.
    pub fn last(&self) -> Option<Arc> {
        self.count.last_index().and_then(|k| self.arc_at(k))
    }

    /// The parameter `k` generating `arc`, if any.
    pub fn index_of(&self, arc: Arc) -> Option<u64> {
        let range = self.k_range(Span::point(arc.left), Span::point(arc.right))?;
        Some(range.lo)
    }

    fn k_range(&self, left: Span, right: Span) -> Option<KRange> {
        let (l_lo, l_hi) = solve_linear(self.base.left, self.dl, left);
        let (r_lo, r_hi) = solve_linear(self.base.right, self.dr, right);
        let lo = l_lo.max(r_lo);
        let hi = [l_hi, r_hi, self.count.last_index().map(|k| k as i64)]
            .into_iter()
            .flatten()
            .min();
        if hi.is_some_and(|h| h < lo) {
            return None;
        }
        Some(KRange {
            lo: lo as u64,
            hi: hi.map(|h| h as u64),
        })
    }

    pub fn translate(&self, t: i64) -> Orbit {
        Orbit {
            base: self.base.translate(t),
            ..*self
        }
    }

    fn coefficients(&self) -> (i128, i128, i128, i128) {
        (
            self.base.left as i128,
            self.dl as i128,
            self.base.right as i128,
            self.dr as i128,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("orbit {orbit} generates ({left},{right}) at k = {k}, which is not an arc")]
    InvalidArc {
        orbit: usize,
        k: u64,
        left: i64,
        right: i64,
    },
    #[error("orbit {orbit} has zero steps but more than one member")]
    DegenerateOrbit { orbit: usize },
    #[error("orbit {orbit} has no members")]
    EmptyOrbit { orbit: usize },
    #[error("removed arc {arc} is not generated by any orbit")]
    StrayRemoval { arc: Arc },
    #[error("arcs {a} and {b} cross")]
    SelfCrossing {
        a: Arc,
        b: Arc,
        orbits: (usize, usize),
    },
}

/// Fountain structure of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub locally_finite: bool,
    pub left_fountains: BTreeSet<i64>,
    pub right_fountains: BTreeSet<i64>,
    pub fountains: BTreeSet<i64>,
}

/// A set of arcs: everything generated by some orbit, minus `removed`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArcFamily {
    orbits: Vec<Orbit>,
    removed: BTreeSet<Arc>,
}

impl ArcFamily {
    pub fn new(orbits: Vec<Orbit>, removed: BTreeSet<Arc>) -> Self {
        ArcFamily { orbits, removed }
    }

    pub fn empty() -> Self {
        ArcFamily::default()
    }

    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>) -> Self {
        ArcFamily {
            orbits: arcs.into_iter().map(Orbit::single).collect(),
            removed: BTreeSet::new(),
        }
    }

    pub fn with_orbit(mut self, orbit: Orbit) -> Self {
        self.orbits.push(orbit);
        self
    }

    pub fn with_removed(mut self, arc: Arc) -> Self {
        self.removed.insert(arc);
        self
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn removed(&self) -> &BTreeSet<Arc> {
        &self.removed
    }

    pub(crate) fn orbits_mut(&mut self) -> &mut Vec<Orbit> {
        &mut self.orbits
    }

    pub(crate) fn removed_mut(&mut self) -> &mut BTreeSet<Arc> {
        &mut self.removed
    }

    pub fn is_finite(&self) -> bool {
        self.orbits.iter().all(|o| !o.is_infinite())
    }

    pub fn translate(&self, t: i64) -> ArcFamily {
        ArcFamily {
            orbits: self.orbits.iter().map(|o| o.translate(t)).collect(),
            removed: self.removed.iter().map(|a| a.translate(t)).collect(),
        }
    }

    /// Orbits generating `arc`, ignoring removals.
    pub fn generating_orbits(&self, arc: Arc) -> Vec<usize> {
        (0..self.orbits.len())
            .filter(|&i| self.orbits[i].index_of(arc).is_some())
            .collect()
    }

    pub fn contains(&self, arc: Arc) -> bool {
        !self.removed.contains(&arc) && self.orbits.iter().any(|o| o.index_of(arc).is_some())
    }

    /// `r == l + 1` (a boundary edge) or `(l, r)` is a member.
    pub fn member_or_edge(&self, l: i64, r: i64) -> bool {
        r == l + 1 || (r >= l + 2 && self.contains(Arc::new_unchecked(l, r)))
    }

    /// First member (orbit order, then increasing `k`) with endpoints in the
    /// given spans.
    pub fn first_member(&self, left: Span, right: Span) -> Option<Arc> {
        self.orbits.iter().find_map(|o| {
            let range = o.k_range(left, right)?;
            // Each removed arc blocks at most one k of this orbit.
            let tries = self.removed.len() as u64 + 1;
            (range.lo..range.lo + tries)
                .take_while(|&k| range.contains(k))
                .map_while(|k| o.arc_at(k))
                .find(|arc| !self.removed.contains(arc))
        })
    }

    /// A member crossing `c`, if there is one.
    pub fn crossing_member(&self, c: Arc) -> Option<Arc> {
        let inside = Span::between(c.left + 1, c.right - 1);
        self.first_member(Span::at_most(c.left - 1), inside)
            .or_else(|| self.first_member(inside, Span::at_least(c.right + 1)))
    }

    /// All members inside `w`, sorted lexicographically.
    pub fn arcs_in_window(&self, w: Window) -> Vec<Arc> {
        let span = Span::between(w.lo, w.hi);
        let mut out = BTreeSet::new();
        for o in &self.orbits {
            let Some(range) = o.k_range(span, span) else {
                continue;
            };
            // Unbounded only for degenerate orbits, which repeat one arc.
            let hi = range.hi.unwrap_or(range.lo);
            out.extend((range.lo..=hi).filter_map(|k| o.arc_at(k)));
        }
        out.retain(|a| !self.removed.contains(a));
        out.into_iter().collect()
    }

    /// Checks that every orbit generates valid arcs, removals are generated,
    /// and no two members cross. The first failure is reported, scanning
    /// orbits in list order and parameters in increasing order.
    pub fn validate(&self) -> Result<(), FamilyError> {
        for (i, o) in self.orbits.iter().enumerate() {
            if o.count == Count::Finite(0) {
                return Err(FamilyError::EmptyOrbit { orbit: i });
            }
            if !o.is_single() && o.dl == 0 && o.dr == 0 {
                return Err(FamilyError::DegenerateOrbit { orbit: i });
            }
            let growth = o.dr - o.dl;
            if growth < 0 {
                let span = o.base.right - o.base.left;
                let k = Integer::div_ceil(&(span - 1), &(-growth)) as u64;
                if o.count.last_index().is_none_or(|last| k <= last) {
                    let (left, right) = o.endpoints_at(k);
                    return Err(FamilyError::InvalidArc {
                        orbit: i,
                        k,
                        left,
                        right,
                    });
                }
            }
        }
        if let Some(&arc) = self
            .removed
            .iter()
            .find(|a| self.generating_orbits(**a).is_empty())
        {
            return Err(FamilyError::StrayRemoval { arc });
        }
        for i in 0..self.orbits.len() {
            for j in i..self.orbits.len() {
                if let Some((a, b)) = self.crossing_between(i, j) {
                    let (a, b, orbits) = if a <= b {
                        (a, b, (i, j))
                    } else {
                        (b, a, (j, i))
                    };
                    return Err(FamilyError::SelfCrossing { a, b, orbits });
                }
            }
        }
        Ok(())
    }

    /// The first crossing pair with one arc from orbit `i` and one from `j`.
    fn crossing_between(&self, i: usize, j: usize) -> Option<(Arc, Arc)> {
        let (m1, d1, n1, e1) = self.orbits[i].coefficients();
        let (m2, d2, n2, e2) = self.orbits[j].coefficients();
        // x indexes orbit i, y indexes orbit j.
        let first_i = self.first_pair(i, j, |s| {
            s.lt(d1, -d2, m2 - m1)
                .lt(-e1, d2, n1 - m2)
                .lt(e1, -e2, n2 - n1);
        });
        let first_j = if i == j {
            None
        } else {
            self.first_pair(i, j, |s| {
                s.lt(-d1, d2, m1 - m2)
                    .lt(d1, -e2, n2 - m1)
                    .lt(-e1, e2, n1 - n2);
            })
        };
        let best = [first_i, first_j]
            .into_iter()
            .flatten()
            .min_by_key(|&(x, y)| (x + y, x))?;
        Some((
            self.orbits[i].arc_at(best.0)?,
            self.orbits[j].arc_at(best.1)?,
        ))
    }

    /// Minimal `(x, y)` (by `(x + y, x)`) with `x` a live parameter of orbit
    /// `i`, `y` a live parameter of orbit `j`, satisfying `constrain`.
    pub(crate) fn first_pair(
        &self,
        i: usize,
        j: usize,
        constrain: impl Fn(&mut System),
    ) -> Option<(u64, u64)> {
        let xs = self.live_segments(i);
        let ys = self.live_segments(j);
        let mut best: Option<(u64, u64)> = None;
        for &(xlo, xhi) in &xs {
            for &(ylo, yhi) in &ys {
                let mut sys = System::new(xlo as i128, ylo as i128);
                if let Some(h) = xhi {
                    sys.x_at_most(h as i128);
                }
                if let Some(h) = yhi {
                    sys.y_at_most(h as i128);
                }
                constrain(&mut sys);
                if let Some((x, y)) = sys.first_solution() {
                    let cand = (x as u64, y as u64);
                    if best.is_none_or(|(bx, by)| (cand.0 + cand.1, cand.0) < (bx + by, bx)) {
                        best = Some(cand);
                    }
                }
            }
        }
        best
    }

    /// Parameter ranges of orbit `i` with removed members cut out.
    fn live_segments(&self, i: usize) -> Vec<(u64, Option<u64>)> {
        let o = &self.orbits[i];
        let last = o.count.last_index();
        let cuts: BTreeSet<u64> = self.removed.iter().filter_map(|a| o.index_of(*a)).collect();
        let mut out = Vec::new();
        let mut start = 0u64;
        for c in cuts {
            if c > start {
                out.push((start, Some(c - 1)));
            }
            start = c + 1;
        }
        if last.is_none_or(|l| start <= l) {
            out.push((start, last));
        }
        out
    }

    /// Left-, right- and two-sided fountains. Only infinite orbits with one
    /// fixed endpoint contribute; finite removals never matter.
    pub fn classify(&self) -> Classification {
        let mut left_fountains = BTreeSet::new();
        let mut right_fountains = BTreeSet::new();
        for o in self.orbits.iter().filter(|o| o.is_infinite()) {
            if o.dl == 0 && o.dr > 0 {
                right_fountains.insert(o.base.left);
            }
            if o.dr == 0 && o.dl < 0 {
                left_fountains.insert(o.base.right);
            }
        }
        let fountains: BTreeSet<i64> = left_fountains
            .intersection(&right_fountains)
            .copied()
            .collect();
        Classification {
            locally_finite: left_fountains.is_empty() && right_fountains.is_empty(),
            left_fountains,
            right_fountains,
            fountains,
        }
    }
}

/// Canonical families from the introduction's sketches.
pub mod canonical {
    use super::*;

    /// Arcs `(0,k)` and `(-k,0)` for all `k >= 2`.
    pub fn fountain() -> ArcFamily {
        ArcFamily::empty()
            .with_orbit(Orbit::infinite(Arc::new_unchecked(0, 2), 0, 1))
            .with_orbit(Orbit::infinite(Arc::new_unchecked(-2, 0), -1, 0))
    }

    /// Nested arcs `(-1-k, 1+k)` and `(-2-k, 1+k)`.
    pub fn leapfrog() -> ArcFamily {
        ArcFamily::empty()
            .with_orbit(Orbit::infinite(Arc::new_unchecked(-1, 1), -1, 1))
            .with_orbit(Orbit::infinite(Arc::new_unchecked(-2, 1), -1, 1))
    }

    /// A left-fountain at 0 and a right-fountain at 1.
    pub fn split() -> ArcFamily {
        ArcFamily::empty()
            .with_orbit(Orbit::infinite(Arc::new_unchecked(-2, 0), -1, 0))
            .with_orbit(Orbit::infinite(Arc::new_unchecked(1, 3), 0, 1))
    }
}
