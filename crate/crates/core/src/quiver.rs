//! Quivers of clusters and Fomin–Zelevinsky mutation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Display, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::arcs::{Arc, ArcFamily, Window};
use crate::triangulation::triangles_in_window;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("{0} is not a vertex of the quiver")]
    UnknownVertex(String),
    #[error("loop at {0}")]
    Loop(String),
    #[error("2-cycle between {0} and {1}")]
    TwoCycle(String, String),
}

/// A finite directed multigraph without loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver<V = Arc> {
    vertices: BTreeSet<V>,
    arrows: BTreeMap<(V, V), u32>,
}

impl<V: Ord + Clone + Display> Default for Quiver<V> {
    fn default() -> Self {
        Quiver {
            vertices: BTreeSet::new(),
            arrows: BTreeMap::new(),
        }
    }
}

impl<V: Ord + Clone + Display> Quiver<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: V) {
        self.vertices.insert(v);
    }

    /// Adds `count` arrows `from -> to`.
    pub fn add_arrows(&mut self, from: V, to: V, count: u32) -> Result<(), QuiverError> {
        for v in [&from, &to] {
            if !self.vertices.contains(v) {
                return Err(QuiverError::UnknownVertex(v.to_string()));
            }
        }
        if from == to {
            return Err(QuiverError::Loop(from.to_string()));
        }
        if count > 0 {
            *self.arrows.entry((from, to)).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn add_arrow(&mut self, from: V, to: V) -> Result<(), QuiverError> {
        self.add_arrows(from, to, 1)
    }

    pub fn vertices(&self) -> &BTreeSet<V> {
        &self.vertices
    }

    pub fn contains_vertex(&self, v: &V) -> bool {
        self.vertices.contains(v)
    }

    /// Arrows with multiplicity, ordered by `(from, to)`.
    pub fn arrows(&self) -> impl Iterator<Item = (&V, &V, u32)> {
        self.arrows.iter().map(|((a, b), &n)| (a, b, n))
    }

    pub fn arrow_count(&self) -> u32 {
        self.arrows.values().sum()
    }

    pub fn multiplicity(&self, from: &V, to: &V) -> u32 {
        self.arrows
            .get(&(from.clone(), to.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn in_neighbors(&self, v: &V) -> BTreeSet<V> {
        self.arrows
            .keys()
            .filter(|(_, b)| b == v)
            .map(|(a, _)| a.clone())
            .collect()
    }

    pub fn out_neighbors(&self, v: &V) -> BTreeSet<V> {
        self.arrows
            .keys()
            .filter(|(a, _)| a == v)
            .map(|(_, b)| b.clone())
            .collect()
    }

    pub fn first_two_cycle(&self) -> Option<(V, V)> {
        self.arrows
            .keys()
            .find(|(a, b)| a < b && self.arrows.contains_key(&(b.clone(), a.clone())))
            .cloned()
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.keys().any(|(a, b)| a == b)
    }

    /// Fomin–Zelevinsky mutation at `v`: compose paths through `v`, reverse
    /// the arrows at `v`, then cancel 2-cycles.
    pub fn fz_mutate(&self, v: &V) -> Result<Self, QuiverError> {
        if !self.vertices.contains(v) {
            return Err(QuiverError::UnknownVertex(v.to_string()));
        }
        if let Some((a, b)) = self.first_two_cycle() {
            return Err(QuiverError::TwoCycle(a.to_string(), b.to_string()));
        }
        let incoming: Vec<(V, u32)> = self
            .arrows
            .iter()
            .filter(|((_, b), _)| b == v)
            .map(|((a, _), &n)| (a.clone(), n))
            .collect();
        let outgoing: Vec<(V, u32)> = self
            .arrows
            .iter()
            .filter(|((a, _), _)| a == v)
            .map(|((_, b), &n)| (b.clone(), n))
            .collect();

        let mut arrows: BTreeMap<(V, V), u32> = BTreeMap::new();
        for ((a, b), &n) in &self.arrows {
            let key = if a == v || b == v {
                (b.clone(), a.clone())
            } else {
                (a.clone(), b.clone())
            };
            *arrows.entry(key).or_insert(0) += n;
        }
        for (u, p) in &incoming {
            for (w, q) in &outgoing {
                *arrows.entry((u.clone(), w.clone())).or_insert(0) += p * q;
            }
        }
        let keys: Vec<(V, V)> = arrows.keys().cloned().collect();
        for (a, b) in keys {
            if a >= b {
                continue;
            }
            let back = (b.clone(), a.clone());
            if let Some(&n_back) = arrows.get(&back) {
                let n = arrows[&(a.clone(), b.clone())];
                let cancel = n.min(n_back);
                *arrows.get_mut(&(a.clone(), b.clone())).unwrap() -= cancel;
                *arrows.get_mut(&back).unwrap() -= cancel;
            }
        }
        arrows.retain(|_, n| *n > 0);
        Ok(Quiver {
            vertices: self.vertices.clone(),
            arrows,
        })
    }

    /// Renames vertex `from` to `to`.
    pub fn relabel(&self, from: &V, to: V) -> Self {
        let rename = |x: &V| if x == from { to.clone() } else { x.clone() };
        Quiver {
            vertices: self.vertices.iter().map(rename).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|((a, b), &n)| ((rename(a), rename(b)), n))
                .collect(),
        }
    }

    /// The full subquiver on `keep`.
    pub fn induced(&self, keep: &BTreeSet<V>) -> Self {
        Quiver {
            vertices: self.vertices.intersection(keep).cloned().collect(),
            arrows: self
                .arrows
                .iter()
                .filter(|((a, b), _)| keep.contains(a) && keep.contains(b))
                .map(|(k, &n)| (k.clone(), n))
                .collect(),
        }
    }

    /// Graphviz description.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for ((a, b), &n) in &self.arrows {
            for _ in 0..n {
                let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Equality of the full subquivers on `keep`.
pub fn quivers_equal_on<V: Ord + Clone + Display>(
    q1: &Quiver<V>,
    q2: &Quiver<V>,
    keep: &BTreeSet<V>,
) -> bool {
    q1.induced(keep) == q2.induced(keep)
}

impl<V: Ord + Clone + Display> fmt::Display for Quiver<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((a, b), &n) in &self.arrows {
            if n == 1 {
                writeln!(f, "{a} -> {b}")?;
            } else {
                writeln!(f, "{a} -> {b} (x{n})")?;
            }
        }
        Ok(())
    }
}

/// Structured mirror of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverView {
    pub vertices: Vec<Arc>,
    pub arrows: Vec<(Arc, Arc, u32)>,
}

impl From<&Quiver<Arc>> for QuiverView {
    fn from(q: &Quiver<Arc>) -> Self {
        QuiverView {
            vertices: q.vertices.iter().copied().collect(),
            arrows: q.arrows().map(|(a, b, n)| (*a, *b, n)).collect(),
        }
    }
}

/// Vertices are the members inside `w`; every face `(v0, v1, v2)` orients its
/// arc sides cyclically `(v0,v1) -> (v1,v2) -> (v0,v2) -> (v0,v1)`.
pub fn cluster_quiver(family: &ArcFamily, w: Window) -> Quiver<Arc> {
    let mut q = Quiver::new();
    for a in family.arcs_in_window(w) {
        q.add_vertex(a);
    }
    for (v0, v1, v2) in triangles_in_window(family, w) {
        let sides = [(v0, v1), (v1, v2), (v0, v2)].map(|(l, r)| Arc::new(l, r).ok());
        for i in 0..3 {
            if let (Some(from), Some(to)) = (sides[i], sides[(i + 1) % 3]) {
                q.add_arrow(from, to).expect("face sides are vertices");
            }
        }
    }
    q
}

/// Members inside `w` whose two adjacent faces also lie inside `w`; the
/// window quiver is exact around these.
pub fn interior_vertices(family: &ArcFamily, w: Window) -> BTreeSet<Arc> {
    use crate::triangulation::quadrilateral;
    family
        .arcs_in_window(w)
        .into_iter()
        .filter(|&a| {
            quadrilateral(family, a)
                .ok()
                .and_then(|q| q.outer_apex)
                .is_some_and(|p| w.contains(p))
        })
        .collect()
}
