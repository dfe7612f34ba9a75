use std::collections::BTreeSet;

use proptest::prelude::*;

use infgon_core::arcs::canonical::{fountain, leapfrog, split};
use infgon_core::arcs::{Arc, ArcFamily, Window};
use infgon_core::document::{parse_family, serialize_family};
use infgon_core::homcalc::{hom_dim, Ind};
use infgon_core::mutation::{exchange_arc, exchange_sides, mutate};
use infgon_core::quiver::{cluster_quiver, interior_vertices, quivers_equal_on};
use infgon_core::triangulation::{
    certify_global_maximal, is_window_maximal, perp_window, GlobalCertificate, MaximalityVerdict,
};

fn base(i: usize) -> ArcFamily {
    [fountain(), leapfrog(), split()][i % 3].clone()
}

/// A canonical family, translated by `t`, then flipped at the members picked
/// by `picks` near the translated origin.
fn variant(i: usize, t: i64, picks: &[usize]) -> ArcFamily {
    let mut f = base(i).translate(t);
    let near = Window::new(t - 6, t + 6).unwrap();
    for &p in picks {
        let members = f.arcs_in_window(near);
        let a = members[p % members.len()];
        if let Ok(g) = mutate(&f, a) {
            f = g;
        }
    }
    f
}

fn variants() -> impl Strategy<Value = (ArcFamily, i64)> {
    (
        0usize..3,
        -20i64..=20,
        prop::collection::vec(0usize..64, 0..6),
    )
        .prop_map(|(i, t, picks)| (variant(i, t, &picks), t))
}

fn members(f: &ArcFamily, w: Window) -> BTreeSet<Arc> {
    f.arcs_in_window(w).into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stays_certified_and_window_maximal((f, t) in variants()) {
        prop_assert_eq!(f.validate(), Ok(()));
        let cert = certify_global_maximal(&f).unwrap();
        let GlobalCertificate::Certified(w) = cert else {
            return Err(TestCaseError::fail(format!("{cert:?}")));
        };
        prop_assert_eq!(is_window_maximal(&f, w).unwrap(), MaximalityVerdict::Maximal);
        prop_assert_eq!(is_window_maximal(&f, Window::new(t - 9, t + 4).unwrap()).unwrap(), MaximalityVerdict::Maximal);
    }

    #[test]
    fn fountains_are_unique_and_survive_flips((f, t) in variants(), i in 0usize..3) {
        let c = f.classify();
        prop_assert!(c.left_fountains.len() <= 1 && c.right_fountains.len() <= 1);
        let untouched = base(i).translate(t).classify();
        prop_assert!(untouched.left_fountains.len() <= 1 && untouched.right_fountains.len() <= 1);
    }

    #[test]
    fn perp_recovers_members((f, t) in variants(), lo in -8i64..0, len in 2i64..12) {
        let w = Window::new(t + lo, t + lo + len).unwrap();
        let expected: BTreeSet<Ind> = f.arcs_in_window(w).into_iter().map(Ind::from).collect();
        prop_assert_eq!(perp_window(&f, w), expected);
    }

    #[test]
    fn flips_are_involutions((f, t) in variants(), pick in 0usize..64) {
        let near = Window::new(t - 6, t + 6).unwrap();
        let wide = Window::new(t - 30, t + 30).unwrap();
        let ms = f.arcs_in_window(near);
        let a = ms[pick % ms.len()];
        if let Ok(star) = exchange_arc(&f, a) {
            let g = mutate(&f, a).unwrap();
            prop_assert_eq!(g.validate(), Ok(()));
            prop_assert!(g.contains(star) && !g.contains(a));
            prop_assert!(a.crosses(star));
            prop_assert_eq!(exchange_arc(&g, star), Ok(a));
            let back = mutate(&g, star).unwrap();
            prop_assert_eq!(members(&back, wide), members(&f, wide));
            let sides = exchange_sides(&f, a).unwrap().union();
            prop_assert!(sides.iter().all(|&s| f.contains(s) && g.contains(s)));
        }
    }

    #[test]
    fn flips_commute_with_translation((f, t) in variants(), pick in 0usize..64, s in -7i64..=7) {
        let ms = f.arcs_in_window(Window::new(t - 6, t + 6).unwrap());
        let a = ms[pick % ms.len()];
        let moved = exchange_arc(&f.translate(s), a.translate(s));
        prop_assert_eq!(moved, exchange_arc(&f, a).map(|b| b.translate(s)));
    }

    #[test]
    fn members_point_one_way((f, t) in variants()) {
        let ms = f.arcs_in_window(Window::new(t - 6, t + 6).unwrap());
        for (i, &a) in ms.iter().enumerate() {
            for &b in &ms[i + 1..] {
                let (x, y) = (Ind::from(a), Ind::from(b));
                prop_assert!(!(hom_dim(x, y) == 1 && hom_dim(y, x) == 1), "{a} {b}");
            }
        }
    }

    #[test]
    fn quivers_are_clean_and_mutate_compatibly((f, t) in variants(), lo in -8i64..-3, len in 8i64..16) {
        let w = Window::new(t + lo, t + lo + len).unwrap();
        let q = cluster_quiver(&f, w);
        prop_assert!(!q.has_loops() && q.first_two_cycle().is_none());
        for v in q.vertices() {
            prop_assert!(q.in_neighbors(v).len() <= 2 && q.out_neighbors(v).len() <= 2);
        }
        for a in interior_vertices(&f, w) {
            let star = exchange_arc(&f, a).unwrap();
            let predicted = q.fz_mutate(&a).unwrap().relabel(&a, star);
            let actual = cluster_quiver(&mutate(&f, a).unwrap(), w);
            let keep = actual.vertices().clone();
            prop_assert!(quivers_equal_on(&predicted, &actual, &keep), "flip at {a} on {w}");
        }
    }

    #[test]
    fn documents_round_trip((f, t) in variants()) {
        let text = serialize_family(&f);
        let g = parse_family(&text).unwrap();
        let w = Window::new(t - 25, t + 25).unwrap();
        prop_assert_eq!(members(&g, w), members(&f, w));
        prop_assert_eq!(g.classify(), f.classify());
        prop_assert_eq!(serialize_family(&g), text);
    }
}
