//! Exhaustive checks on the window polygon `[0, n-1]`, using nothing but
//! finite arc sets and pairwise crossing.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::arcs::{crosses, Arc, ArcFamily, Window};
use crate::homcalc::Ind;
use crate::mutation::{exchange_arc, mutate};
use crate::quiver::{cluster_quiver, quivers_equal_on};
use crate::triangulation::perp_window;

pub type ArcSet = BTreeSet<Arc>;

pub fn polygon(vertices: usize) -> Window {
    assert!(vertices >= 1, "a polygon needs a vertex");
    Window::new(0, vertices as i64 - 1).expect("lo <= hi")
}

pub fn is_non_crossing(arcs: &ArcSet) -> bool {
    let v: Vec<Arc> = arcs.iter().copied().collect();
    v.iter()
        .enumerate()
        .all(|(i, &a)| v[i + 1..].iter().all(|&b| !crosses(a, b)))
}

/// Non-crossing, and every other arc of `w` crosses one of `arcs`.
pub fn is_maximal_in(arcs: &ArcSet, w: Window) -> bool {
    is_non_crossing(arcs)
        && w.arcs()
            .all(|c| arcs.contains(&c) || arcs.iter().any(|&a| crosses(a, c)))
}

/// All maximal non-crossing arc sets inside `w`, in lexicographic order.
pub fn maximal_sets(w: Window) -> Vec<ArcSet> {
    let candidates: Vec<Arc> = w.arcs().collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend(&candidates, 0, &mut chosen, &mut out);
    out.retain(|s| is_maximal_in(s, w));
    out.sort();
    out
}

fn extend(candidates: &[Arc], i: usize, chosen: &mut Vec<Arc>, out: &mut Vec<ArcSet>) {
    if i == candidates.len() {
        out.push(chosen.iter().copied().collect());
        return;
    }
    let c = candidates[i];
    if chosen.iter().all(|&a| !crosses(a, c)) {
        chosen.push(c);
        extend(candidates, i + 1, chosen, out);
        chosen.pop();
        // Leaving out an arc nothing crosses can never be maximal.
        if candidates.iter().all(|&b| !crosses(b, c)) {
            return;
        }
    }
    extend(candidates, i + 1, chosen, out);
}

pub fn family_of(arcs: &ArcSet) -> ArcFamily {
    ArcFamily::from_arcs(arcs.iter().copied())
}

/// Arcs `b != a` of `w` such that swapping `a` for `b` keeps the set
/// non-crossing.
pub fn replacements(arcs: &ArcSet, a: Arc, w: Window) -> Vec<Arc> {
    let rest: Vec<Arc> = arcs.iter().copied().filter(|&x| x != a).collect();
    w.arcs()
        .filter(|&b| b != a && !arcs.contains(&b) && rest.iter().all(|&x| !crosses(x, b)))
        .collect()
}

/// `perp_window` agrees with the member set.
pub fn perp_matches_members(arcs: &ArcSet, w: Window) -> bool {
    let members: BTreeSet<Ind> = arcs.iter().copied().map(Ind::from).collect();
    perp_window(&family_of(arcs), w) == members
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub vertices: usize,
    pub maximal_sets: usize,
    pub perp_agreements: usize,
    pub flips_checked: usize,
    pub flip_mismatches: Vec<(Vec<Arc>, Arc)>,
    pub involution_failures: usize,
    pub flip_graph_connected: bool,
    pub quiver_defects: usize,
    pub fz_checked: usize,
    pub fz_failures: usize,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.perp_agreements == self.maximal_sets
            && self.flip_mismatches.is_empty()
            && self.involution_failures == 0
            && self.flip_graph_connected
            && self.quiver_defects == 0
            && self.fz_failures == 0
    }
}

/// Runs every window check on the `n`-vertex polygon.
pub fn run(n: usize) -> OracleReport {
    let w = polygon(n);
    let suite = maximal_sets(w);
    let index: BTreeMap<&ArcSet, usize> = suite.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut report = OracleReport {
        vertices: n,
        maximal_sets: suite.len(),
        ..Default::default()
    };
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); suite.len()];

    for (i, arcs) in suite.iter().enumerate() {
        if perp_matches_members(arcs, w) {
            report.perp_agreements += 1;
        }
        let family = family_of(arcs);
        let q = cluster_quiver(&family, w);
        if q.has_loops() || q.first_two_cycle().is_some() {
            report.quiver_defects += 1;
        }
        for &a in arcs {
            let brute = replacements(arcs, a, w);
            let computed = exchange_arc(&family, a).ok();
            let expected = match brute[..] {
                [b] => Some(b),
                _ => None,
            };
            if computed != expected {
                report
                    .flip_mismatches
                    .push((arcs.iter().copied().collect(), a));
            }
            let Some(star) = computed else { continue };
            report.flips_checked += 1;
            let flipped = mutate(&family, a).expect("exchange succeeded");
            let flipped_arcs: ArcSet = flipped.arcs_in_window(w).into_iter().collect();
            match index.get(&flipped_arcs) {
                Some(&j) => edges[i].push(j),
                None => report
                    .flip_mismatches
                    .push((arcs.iter().copied().collect(), a)),
            }
            let back: ArcSet = mutate(&flipped, star)
                .map(|f| f.arcs_in_window(w).into_iter().collect())
                .unwrap_or_default();
            if &back != arcs {
                report.involution_failures += 1;
            }

            report.fz_checked += 1;
            let predicted = q.fz_mutate(&a).map(|m| m.relabel(&a, star));
            let actual = cluster_quiver(&flipped, w);
            let keep = actual.vertices().clone();
            if !predicted.is_ok_and(|p| quivers_equal_on(&p, &actual, &keep)) {
                report.fz_failures += 1;
            }
        }
    }
    report.flip_graph_connected = connected(&edges);
    report
}

fn connected(edges: &[Vec<usize>]) -> bool {
    if edges.is_empty() {
        return true;
    }
    let mut seen = vec![false; edges.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for &j in &edges[i] {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (3..=8).map(|n| maximal_sets(polygon(n)).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn square_suite() {
        let w = polygon(4);
        let sets = maximal_sets(w);
        let expected: Vec<ArcSet> = vec![
            [(0, 2), (0, 3)]
                .iter()
                .map(|&(l, r)| Arc::new(l, r).unwrap())
                .collect(),
            [(0, 3), (1, 3)]
                .iter()
                .map(|&(l, r)| Arc::new(l, r).unwrap())
                .collect(),
        ];
        assert_eq!(sets, expected);
    }

    #[test]
    fn small_polygons_pass() {
        for n in 3..=6 {
            let r = run(n);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn forced_outer_arc_has_no_replacement() {
        let w = polygon(5);
        for arcs in maximal_sets(w) {
            let outer = Arc::new(0, 4).unwrap();
            assert!(arcs.contains(&outer));
            assert!(replacements(&arcs, outer, w).is_empty());
        }
    }
}
