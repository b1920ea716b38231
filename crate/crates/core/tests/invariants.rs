//! Property tests across module boundaries, each against a brute-force
//! oracle on small random graphs.

use proptest::prelude::*;

use sepkit::combinatorics::subsets;
use sepkit::connectivity::{find_separation, is_k_connected, vertex_connectivity, SeparationQuery};
use sepkit::discharging::{discharge, Half, RecipientRule};
use sepkit::planarity::{embed_planar, Planarity};
use sepkit::tk5::{find_tk5, Tk5Outcome};
use sepkit::{emit_graph6, gen, parse_graph6, Graph, Side, Vertex};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, p, seed)| gen::random_graph(n, p, seed))
}

fn disconnects(g: &Graph, cut: &[Vertex]) -> bool {
    g.components_avoiding(&g.mask(cut)).len() > 1
}

/// Smallest vertex set whose removal disconnects `g`, or `n - 1`.
fn brute_connectivity(g: &Graph) -> usize {
    let all: Vec<Vertex> = g.vertices().collect();
    (0..g.n().saturating_sub(1))
        .find(|&k| subsets(&all, k).iter().any(|s| disconnects(g, s)))
        .unwrap_or(g.n().saturating_sub(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph(20)) {
        prop_assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn connectivity_matches_brute_force(g in graph(8)) {
        let k = brute_connectivity(&g);
        let (value, cut) = vertex_connectivity(&g);
        prop_assert_eq!(value, k);
        if let Some(cut) = cut {
            prop_assert_eq!(cut.len(), k);
            prop_assert!(disconnects(&g, &cut));
        }
        if k > 0 {
            prop_assert!(is_k_connected(&g, k).unwrap().holds);
        }
        prop_assert!(!is_k_connected(&g, k + 1).unwrap().holds);
    }

    #[test]
    fn separations_found_are_separations(g in graph(9), k in 0usize..4) {
        if let Some(sep) = find_separation(&g, &SeparationQuery::new(k)).unwrap() {
            prop_assert!(sep.order() <= k);
            let (p1, p2) = (sep.private(Side::First), sep.private(Side::Second));
            prop_assert!(!p1.is_empty() && !p2.is_empty());
            prop_assert!(p1.iter().all(|&u| p2.iter().all(|&v| !g.has_edge(u, v))));
        } else {
            let all: Vec<Vertex> = g.vertices().collect();
            for size in 0..=k.min(g.n().saturating_sub(2)) {
                prop_assert!(subsets(&all, size).iter().all(|s| !disconnects(&g, s)));
            }
        }
    }

    #[test]
    fn planarity_certificates_check(g in graph(10)) {
        match embed_planar(&g) {
            Planarity::Planar(emb) => {
                prop_assert!(emb.validate(&g).is_ok());
                prop_assert!(g.n() < 3 || g.m() <= 3 * g.n() - 6);
            }
            Planarity::NonPlanar(w) => prop_assert!(w.validate(&g)),
        }
    }

    #[test]
    fn charge_totals_are_eight(g in graph(12)) {
        prop_assume!(g.is_connected());
        if let Planarity::Planar(emb) = embed_planar(&g) {
            let st = discharge(&emb, &RecipientRule::LowestId).unwrap();
            prop_assert_eq!(st.sigma_total(), 8);
            prop_assert_eq!(st.tau_total(), Half::from_int(8));
        }
    }

    #[test]
    fn tk5_is_invariant_under_relabelling(g in graph(9), seed in any::<u64>()) {
        let (h, _) = gen::relabel(&g, &mut gen::rng(seed));
        let (a, b) = (find_tk5(&g, &[]).unwrap(), find_tk5(&h, &[]).unwrap());
        prop_assert_eq!(a.certificate().is_some(), b.certificate().is_some());
        if let Tk5Outcome::Found { certificate, .. } = b {
            prop_assert!(certificate.validate(&h).is_ok());
        }
        if matches!(embed_planar(&g), Planarity::Planar(_)) {
            prop_assert!(a.is_absent());
        }
    }
}
