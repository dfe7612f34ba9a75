//! Mutation of a maximal family at one of its arcs: the arc is replaced by
//! the other diagonal of the quadrilateral formed by its two triangles.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::arcs::{Arc, ArcFamily, Count, Orbit};
use crate::triangulation::{quadrilateral, Quadrilateral, TriangulationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error("{0} is not a member of the family")]
    NotMember(Arc),
    #[error("{0} borders only one triangle, so it cannot be mutated")]
    NotMutable(Arc),
    #[error("no triangle inside {0}: the family is not maximal there")]
    NotMaximal(Arc),
}

impl From<TriangulationError> for MutationError {
    fn from(e: TriangulationError) -> Self {
        match e {
            TriangulationError::NotMember(a) => MutationError::NotMember(a),
            TriangulationError::NoInnerApex(a) => MutationError::NotMaximal(a),
            other => unreachable!("quadrilateral does not report {other:?}"),
        }
    }
}

fn full_quadrilateral(family: &ArcFamily, a: Arc) -> Result<(i64, i64), MutationError> {
    let Quadrilateral {
        inner_apex,
        outer_apex,
    } = quadrilateral(family, a)?;
    let outer = outer_apex.ok_or(MutationError::NotMutable(a))?;
    Ok((inner_apex, outer))
}

/// The other diagonal of the quadrilateral around `a`.
pub fn exchange_arc(family: &ArcFamily, a: Arc) -> Result<Arc, MutationError> {
    let (inner, outer) = full_quadrilateral(family, a)?;
    let (l, r) = if inner < outer {
        (inner, outer)
    } else {
        (outer, inner)
    };
    Ok(Arc::new(l, r).expect("apexes lie on opposite sides of a"))
}

/// `(T \ {a}) ∪ {a*}`.
pub fn mutate(family: &ArcFamily, a: Arc) -> Result<ArcFamily, MutationError> {
    let star = exchange_arc(family, a)?;
    let mut out = family.clone();
    remove_member(&mut out, a);
    if !out.removed_mut().remove(&star) {
        out.orbits_mut().push(Orbit::single(star));
    }
    Ok(out)
}

/// Drops `a` by deleting a single-arc orbit, trimming an end of a finite
/// orbit, or recording it as removed.
fn remove_member(family: &mut ArcFamily, a: Arc) {
    let generating = family.generating_orbits(a);
    if let [i] = generating[..] {
        let o = family.orbits()[i];
        if o.is_single() {
            family.orbits_mut().remove(i);
            return;
        }
        if let Count::Finite(n) = o.count() {
            if o.last() == Some(a) {
                family.orbits_mut()[i] = Orbit::new(
                    o.base(),
                    o.step_left(),
                    o.step_right(),
                    Count::Finite(n - 1),
                );
                return;
            }
            if o.base() == a {
                let next = o.arc_at(1).expect("finite orbit with more than one member");
                family.orbits_mut()[i] =
                    Orbit::new(next, o.step_left(), o.step_right(), Count::Finite(n - 1));
                return;
            }
        }
    }
    family.removed_mut().insert(a);
}

/// Arc sides (boundary edges omitted) of the two triangles adjacent to `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeSides {
    pub inner: BTreeSet<Arc>,
    pub outer: BTreeSet<Arc>,
}

impl ExchangeSides {
    pub fn union(&self) -> BTreeSet<Arc> {
        self.inner.union(&self.outer).copied().collect()
    }
}

fn arc_sides(pairs: [(i64, i64); 2]) -> BTreeSet<Arc> {
    pairs
        .into_iter()
        .filter_map(|(l, r)| Arc::new(l.min(r), l.max(r)).ok())
        .collect()
}

pub fn exchange_sides(family: &ArcFamily, a: Arc) -> Result<ExchangeSides, MutationError> {
    let (inner, outer) = full_quadrilateral(family, a)?;
    let (l, r) = (a.left(), a.right());
    Ok(ExchangeSides {
        inner: arc_sides([(l, inner), (inner, r)]),
        outer: arc_sides([(outer, l), (outer, r)]),
    })
}

/// Middle terms of the two exchange triangles, split by quiver orientation:
/// `cover` holds the sides with an arrow into `a`, `envelope` those with an
/// arrow out of `a`. Each pairs opposite sides of the quadrilateral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeTerms {
    pub cover: BTreeSet<Arc>,
    pub envelope: BTreeSet<Arc>,
}

pub fn exchange_terms(family: &ArcFamily, a: Arc) -> Result<ExchangeTerms, MutationError> {
    let (inner, outer) = full_quadrilateral(family, a)?;
    let (l, r) = (a.left(), a.right());
    // Faces orient (v0,v1) -> (v1,v2) -> (v0,v2) -> (v0,v1).
    let (outer_in, outer_out) = if outer > r {
        ((l, outer), (r, outer))
    } else {
        ((outer, l), (outer, r))
    };
    Ok(ExchangeTerms {
        cover: arc_sides([(inner, r), outer_in]),
        envelope: arc_sides([(l, inner), outer_out]),
    })
}
