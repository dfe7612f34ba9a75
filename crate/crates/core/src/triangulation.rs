//! Maximality and functorial finiteness of arc families, plus the face
//! structure used by mutation.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::arcs::{Arc, ArcFamily, FamilyError, Span, Window};
use crate::homcalc::{hom_dim, shift, Ind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MaximalityVerdict {
    Maximal,
    /// A non-member crossing no member.
    Missing(Arc),
    /// Two members that cross.
    Crossing(Arc, Arc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GlobalCertificate {
    Certified(Window),
    Refuted(Arc),
    Unknown(String),
}

impl GlobalCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, GlobalCertificate::Certified(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FFReason {
    LocallyFinite,
    Fountain(i64),
    SplitFountains(i64, i64),
    /// Fountain on one side only; `left` tells which side.
    OneSidedFountain {
        vertex: i64,
        left: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FFVerdict {
    pub functorially_finite: bool,
    pub reason: FFReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("family is not certified maximal: {0:?}")]
    NotCertified(GlobalCertificate),
    #[error("{0} is not a member of the family")]
    NotMember(Arc),
    #[error("no triangle inside {0}: the family is not maximal there")]
    NoInnerApex(Arc),
}

/// Every candidate arc inside `w` is a member or crosses a member (members may
/// reach outside `w`). Witnesses follow the scan order of [`Arc::scan_key`].
pub fn is_window_maximal(family: &ArcFamily, w: Window) -> Result<MaximalityVerdict, FamilyError> {
    match family.validate() {
        Ok(()) => {}
        Err(FamilyError::SelfCrossing { a, b, .. }) => {
            return Ok(MaximalityVerdict::Crossing(a, b))
        }
        Err(e) => return Err(e),
    }
    let mut candidates: Vec<Arc> = w.arcs().collect();
    candidates.sort_by_key(|a| a.scan_key());
    let missing = candidates
        .into_iter()
        .find(|&c| !family.contains(c) && family.crossing_member(c).is_none());
    Ok(missing.map_or(MaximalityVerdict::Maximal, MaximalityVerdict::Missing))
}

/// Radius of the window checked before tail rules take over: the largest
/// absolute endpoint of any finitely described arc (orbit bases, last members
/// of finite orbits, removals) plus twice the largest absolute step plus 4.
pub fn certification_radius(family: &ArcFamily) -> i64 {
    let mut endpoint = 0i64;
    let mut step = 0i64;
    let mut see = |a: Arc| endpoint = endpoint.max(a.left().abs()).max(a.right().abs());
    for o in family.orbits() {
        see(o.base());
        if let Some(last) = o.last() {
            see(last);
        }
        step = step.max(o.step_left().abs()).max(o.step_right().abs());
    }
    for &a in family.removed() {
        see(a);
    }
    endpoint + 2 * step + 4
}

/// Certifies maximality of the whole (possibly infinite) family.
///
/// The window `[-B, B]` is checked exhaustively. Candidates with right
/// endpoint beyond `B` (or left endpoint below `-B`) are discharged by tail
/// rules: a unit-step ray `(v, v+s+k)` crosses every such candidate not
/// starting at `v`; unit nested orbits `(m-k, n+k)` with endpoint sum `σ`
/// cross every such candidate whose endpoint sum is outside `[σ-1, σ+1]`, and
/// contain those with sum exactly `σ`.
pub fn certify_global_maximal(family: &ArcFamily) -> Result<GlobalCertificate, FamilyError> {
    family.validate()?;
    let radius = certification_radius(family);
    let window = Window::new(-radius, radius).expect("radius is non-negative");
    match is_window_maximal(family, window)? {
        MaximalityVerdict::Maximal => {}
        MaximalityVerdict::Missing(c) => return Ok(GlobalCertificate::Refuted(c)),
        MaximalityVerdict::Crossing(..) => unreachable!("family validated"),
    }

    let mut right_ray = false;
    let mut left_ray = false;
    let mut nested_sums = BTreeSet::new();
    for (i, o) in family
        .orbits()
        .iter()
        .enumerate()
        .filter(|(_, o)| o.is_infinite())
    {
        match (o.step_left(), o.step_right()) {
            (0, 1) => right_ray = true,
            (-1, 0) => left_ray = true,
            (-1, 1) => {
                nested_sums.insert(o.base().left() + o.base().right());
            }
            (dl, dr) => {
                return Ok(GlobalCertificate::Unknown(format!(
                    "orbit {i} has steps (dl={dl}, dr={dr}); only unit rays and unit nested orbits are supported"
                )))
            }
        }
    }
    let nested_covers = nested_sums_cover(&nested_sums);
    if !(right_ray || nested_covers) {
        return Ok(GlobalCertificate::Unknown(format!(
            "no tail rule covers candidates with right endpoint beyond {radius}"
        )));
    }
    if !(left_ray || nested_covers) {
        return Ok(GlobalCertificate::Unknown(format!(
            "no tail rule covers candidates with left endpoint below {}",
            -radius
        )));
    }
    Ok(GlobalCertificate::Certified(window))
}

/// Every endpoint sum `s` is either some `σ` (membership) or at distance at
/// least 2 from some `σ` (crossing).
fn nested_sums_cover(sums: &BTreeSet<i64>) -> bool {
    let (Some(&lo), Some(&hi)) = (sums.first(), sums.last()) else {
        return false;
    };
    (lo - 1..=hi + 1).all(|s| sums.contains(&s) || sums.iter().any(|&sigma| (s - sigma).abs() >= 2))
}

/// Coordinates `x` in `w` with `Hom(Σ⁻¹a, x) = 0` for every member `a`,
/// evaluated through hammock membership only.
pub fn perp_window(family: &ArcFamily, w: Window) -> BTreeSet<Ind> {
    let reps = relevant_members(family, w);
    w.arcs()
        .map(Ind::from)
        .filter(|&x| reps.iter().all(|&a| hom_dim(shift(a, -1), x) == 0))
        .collect()
}

/// Members whose hammocks can meet `w`, with far endpoints clamped to just
/// outside the window (clamping leaves the hammock's trace on `w` unchanged).
fn relevant_members(family: &ArcFamily, w: Window) -> BTreeSet<Ind> {
    let (lo, hi) = (w.lo(), w.hi());
    let mut reps: BTreeSet<Ind> = family
        .arcs_in_window(w.widen(1))
        .into_iter()
        .map(Ind::from)
        .collect();
    for v in lo + 1..hi {
        if family
            .first_member(Span::point(v), Span::at_least(hi + 2))
            .is_some()
        {
            reps.insert(Ind::from(Arc::new(v, hi + 1).expect("v < hi")));
        }
        if family
            .first_member(Span::at_most(lo - 2), Span::point(v))
            .is_some()
        {
            reps.insert(Ind::from(Arc::new(lo - 1, v).expect("v > lo")));
        }
    }
    reps
}

/// A maximal family is functorially finite iff it is locally
/// finite or has a (two-sided) fountain.
pub fn functorially_finite(family: &ArcFamily) -> Result<FFVerdict, TriangulationError> {
    let cert = certify_global_maximal(family)?;
    if !cert.is_certified() {
        return Err(TriangulationError::NotCertified(cert));
    }
    let c = family.classify();
    let reason = if c.locally_finite {
        FFReason::LocallyFinite
    } else if let Some(&v) = c.fountains.first() {
        FFReason::Fountain(v)
    } else {
        match (c.left_fountains.first(), c.right_fountains.first()) {
            (Some(&l), Some(&r)) => FFReason::SplitFountains(l, r),
            (Some(&l), None) => FFReason::OneSidedFountain {
                vertex: l,
                left: true,
            },
            (None, Some(&r)) => FFReason::OneSidedFountain {
                vertex: r,
                left: false,
            },
            (None, None) => unreachable!("not locally finite"),
        }
    };
    let functorially_finite = matches!(reason, FFReason::LocallyFinite | FFReason::Fountain(_));
    Ok(FFVerdict {
        functorially_finite,
        reason,
    })
}

/// Triangular faces `(v0, v1, v2)` with all vertices in `w`: each side is a
/// member or a boundary edge. Sorted lexicographically.
pub fn triangles_in_window(family: &ArcFamily, w: Window) -> Vec<(i64, i64, i64)> {
    let members: BTreeSet<Arc> = family.arcs_in_window(w).into_iter().collect();
    let side = |l: i64, r: i64| r == l + 1 || members.contains(&Arc::new_unchecked(l, r));
    let mut out = Vec::new();
    for v0 in w.lo()..=w.hi() {
        for v2 in v0 + 2..=w.hi() {
            if !side(v0, v2) {
                continue;
            }
            for v1 in v0 + 1..v2 {
                if side(v0, v1) && side(v1, v2) {
                    out.push((v0, v1, v2));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Quadrilateral {
    pub inner_apex: i64,
    /// `None` when no triangle sits on the outside of the arc.
    pub outer_apex: Option<i64>,
}

/// The two triangles adjacent to member `a`.
pub fn quadrilateral(family: &ArcFamily, a: Arc) -> Result<Quadrilateral, TriangulationError> {
    if !family.contains(a) {
        return Err(TriangulationError::NotMember(a));
    }
    let (l, r) = (a.left(), a.right());
    let inner_apex = (l + 1..r)
        .find(|&v| family.member_or_edge(l, v) && family.member_or_edge(v, r))
        .ok_or(TriangulationError::NoInnerApex(a))?;
    Ok(Quadrilateral {
        inner_apex,
        outer_apex: outer_apex(family, a),
    })
}

fn outer_apex(family: &ArcFamily, a: Arc) -> Option<i64> {
    let (l, r) = (a.left(), a.right());
    if family.member_or_edge(l, r + 1) {
        return Some(r + 1);
    }
    if family.member_or_edge(l - 1, r) {
        return Some(l - 1);
    }
    // Farther apexes need two members sharing a far endpoint.
    let n = family.orbits().len();
    for i in 0..n {
        for j in 0..n {
            let (mi, di, ni, ei) = coeffs(family, i);
            let (mj, dj, nj, ej) = coeffs(family, j);
            let (l, r) = (l as i128, r as i128);
            // (r, p) from orbit i and (l, p) from orbit j, p >= r + 2.
            let right = family.first_pair(i, j, |s| {
                s.eq(di, 0, r - mi)
                    .eq(0, dj, l - mj)
                    .eq(ei, -ej, nj - ni)
                    .le(-ei, 0, ni - r - 2);
            });
            if let Some((x, _)) = right {
                return Some(family.orbits()[i].endpoints_at(x).1);
            }
            // (p, l) from orbit i and (p, r) from orbit j, p <= l - 2.
            let left = family.first_pair(i, j, |s| {
                s.eq(ei, 0, l - ni)
                    .eq(0, ej, r - nj)
                    .eq(di, -dj, mj - mi)
                    .le(di, 0, l - 2 - mi);
            });
            if let Some((x, _)) = left {
                return Some(family.orbits()[i].endpoints_at(x).0);
            }
        }
    }
    None
}

fn coeffs(family: &ArcFamily, i: usize) -> (i128, i128, i128, i128) {
    let o = &family.orbits()[i];
    (
        o.base().left() as i128,
        o.step_left() as i128,
        o.base().right() as i128,
        o.step_right() as i128,
    )
}
