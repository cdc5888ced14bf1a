mod common;

use std::collections::BTreeMap;

use common::{arb_digraph, hs_oracle};
use lpa_core::digraph::{enumerate_cycles, successors};
use lpa_core::ideals::{admissible_pairs, pair_order};
use lpa_core::ktheory::{
    acyclic_decomposition, classify_fgips, classify_simple_projectives, congruence_ball, corner_classify,
    end_finite_dim, galois_phi, galois_psi, is_orthogonal, monoid_congruent, Congruence, CornerType, EndVerdict,
};
use lpa_core::quotients::quotient_dimension;
use lpa_core::{
    AdmissiblePair, Digraph, DigraphBuilder, FieldSpec, GeneratorItem, IdealPresentation, Limits, MonoidElement, Multiplicity,
    ProjectivePresentation, VertexId, VertexSet,
};
use proptest::prelude::*;
use proptest::sample::Index;

fn corpus_or_random() -> impl Strategy<Value = Digraph> {
    let corpus: Vec<Digraph> = common::all_graphs().into_iter().map(|(_, g)| g).collect();
    prop_oneof![prop::sample::select(corpus), arb_digraph(5, 7, true)]
}

/// Arrows only go from lower to higher vertex index.
fn arb_dag(max_vertices: usize, max_arrows: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, 1u64..=3), 0..=max_arrows).prop_map(move |arrows| {
            let mut b = DigraphBuilder::new("dag").vertices((0..n).map(|i| format!("v{i}")));
            for (i, (s, t, k)) in arrows.into_iter().enumerate() {
                if s != t {
                    let (s, t) = (s.min(t), s.max(t));
                    b = b.arrow_with(format!("e{i}"), format!("v{s}"), format!("v{t}"), Multiplicity::Finite(k));
                }
            }
            b.build().unwrap()
        })
    })
}

/// Paths from each item to each sink, by explicit enumeration.
fn sink_multiplicities(g: &Digraph, items: &[VertexId]) -> BTreeMap<VertexId, u128> {
    let mut out: BTreeMap<VertexId, u128> = g.sinks().into_iter().map(|s| (s, 0)).collect();
    let mut stack: Vec<(VertexId, u128)> = items.iter().map(|&v| (v, 1)).collect();
    while let Some((v, w)) = stack.pop() {
        if let Some(m) = out.get_mut(&v) {
            *m += w;
        }
        for &e in g.out_arrows(v) {
            let Multiplicity::Finite(k) = g.arrow(e).multiplicity else { unreachable!() };
            stack.push((g.target(e), w * k as u128));
        }
    }
    out
}

fn graded(pair: &AdmissiblePair) -> IdealPresentation {
    IdealPresentation::graded("j", FieldSpec::Prime(3), pair.clone())
}

fn singleton(v: VertexId) -> MonoidElement {
    MonoidElement::new([(v, 1)])
}

fn supported_in(m: &MonoidElement, x: &VertexSet) -> bool {
    m.counts().keys().all(|v| x.contains(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn galois_maps_are_inverse(g in corpus_or_random()) {
        for pair in admissible_pairs(&g, &Limits::default()).unwrap() {
            let phi = galois_phi(&g, &pair).unwrap();
            let back = galois_psi(&g, &phi.generators).unwrap();
            prop_assert_eq!(&back, &pair);
            prop_assert_eq!(galois_phi(&g, &back).unwrap(), phi);
        }
    }

    #[test]
    fn orthogonality_is_monotone(
        g in corpus_or_random(),
        picks in (any::<Index>(), any::<Index>(), any::<Index>()),
        keep in any::<u64>(),
    ) {
        let pairs = admissible_pairs(&g, &Limits::default()).unwrap();
        let from = &pairs[picks.0.index(pairs.len())];
        let (a, b) = (&pairs[picks.1.index(pairs.len())], &pairs[picks.2.index(pairs.len())]);
        let gens = galois_phi(&g, from).unwrap().generators;
        let p = ProjectivePresentation { items: gens.clone() };
        let sub = ProjectivePresentation {
            items: gens.iter().enumerate().filter(|(i, _)| keep >> (i % 64) & 1 == 1).map(|(_, x)| x.clone()).collect(),
        };
        prop_assert!(is_orthogonal(&g, &p, &graded(from)).unwrap());
        let (ja, jb) = (graded(a), graded(b));
        let pa = is_orthogonal(&g, &p, &ja).unwrap();
        if pa {
            prop_assert!(is_orthogonal(&g, &sub, &ja).unwrap());
            if pair_order(&g, a, b).unwrap() {
                prop_assert!(is_orthogonal(&g, &p, &jb).unwrap());
            }
        }
        // orthogonal exactly when the generated pair lies below
        prop_assert_eq!(pa, pair_order(&g, from, a).unwrap());
    }

    #[test]
    fn hereditary_saturated_sets_are_order_ideals(g in arb_digraph(4, 5, false)) {
        // X is an order ideal of the graph monoid iff it is closed downward
        // and nothing outside it is congruent to something supported in it
        let n = g.vertex_count();
        let balls: Vec<Vec<MonoidElement>> = g
            .vertex_ids()
            .map(|v| congruence_ball(&g, &singleton(v), 3).unwrap().into_iter().collect())
            .collect();
        let mut count = 0;
        for mask in 0u32..1 << n {
            let x: VertexSet = g.vertex_ids().filter(|v| mask >> v.0 & 1 == 1).collect();
            let closed = g.vertex_ids().all(|v| {
                if x.contains(&v) {
                    balls[v.0].iter().all(|m| supported_in(m, &x))
                } else {
                    !balls[v.0].iter().any(|m| supported_in(m, &x))
                }
            });
            count += usize::from(closed);
        }
        prop_assert_eq!(count, hs_oracle(&g).len());
    }

    #[test]
    fn congruence_search_finds_ball_members(g in arb_digraph(4, 5, false), pick in any::<Index>()) {
        let v = VertexId(pick.index(g.vertex_count()));
        let ball: Vec<MonoidElement> = congruence_ball(&g, &singleton(v), 2).unwrap().into_iter().collect();
        for m in ball.iter().take(20) {
            match monoid_congruent(&g, &singleton(v), m, 8).unwrap() {
                Congruence::Congruent(d) => prop_assert!(d <= 2),
                Congruence::NotWithinDepth => prop_assert!(false, "{} lost", m.display(&g)),
            }
        }
        if g.is_regular(v) {
            let mut rhs = MonoidElement::default();
            for &e in g.out_arrows(v) {
                let Multiplicity::Finite(k) = g.arrow(e).multiplicity else { unreachable!() };
                rhs.add(g.target(e), k);
            }
            if rhs != singleton(v) {
                prop_assert_eq!(monoid_congruent(&g, &singleton(v), &rhs, 8).unwrap(), Congruence::Congruent(1));
            }
        }
    }

    #[test]
    fn end_dimension_counts_paths(g in arb_dag(6, 9), items in prop::collection::vec(any::<Index>(), 1..=4)) {
        let items: Vec<VertexId> = items.iter().map(|i| VertexId(i.index(g.vertex_count()))).collect();
        let EndVerdict::Finite(dec) = end_finite_dim(&g, &ProjectivePresentation::vertices(items.clone())).unwrap() else {
            return Err(TestCaseError::fail("acyclic digraph gave an infinite verdict"));
        };
        let m = sink_multiplicities(&g, &items);
        prop_assert_eq!(dec.total_dimension(), Some(m.values().map(|x| x * x).sum::<u128>()));
        let mut sizes: Vec<u128> = m.values().copied().filter(|&x| x > 0).collect();
        sizes.sort();
        let blocks: Vec<u128> = dec.blocks.iter().flat_map(|&(n, c)| std::iter::repeat_n(n, c)).collect();
        prop_assert_eq!(blocks, sizes);
    }

    #[test]
    fn end_of_the_regular_module(g in arb_dag(6, 9)) {
        let all = ProjectivePresentation::vertices(g.vertex_ids());
        let EndVerdict::Finite(dec) = end_finite_dim(&g, &all).unwrap() else {
            return Err(TestCaseError::fail("acyclic digraph gave an infinite verdict"));
        };
        prop_assert_eq!(&dec, &acyclic_decomposition(&g).unwrap());
        prop_assert_eq!(dec.total_dimension(), quotient_dimension(&g, None, &Limits::default()).ok());
    }

    #[test]
    fn end_is_infinite_past_cycles_and_omega(g in arb_digraph(5, 7, true), pick in any::<Index>()) {
        let v = VertexId(pick.index(g.vertex_count()));
        let reach = successors(&g, &VertexSet::from([v]));
        let sub = lpa_core::digraph::full_subgraph(&g, &reach);
        let wild = !enumerate_cycles(&sub, 10_000).unwrap().is_empty()
            || g.arrows().iter().any(|a| reach.contains(&a.source) && a.multiplicity == Multiplicity::Omega);
        let verdict = end_finite_dim(&g, &ProjectivePresentation::vertices([v])).unwrap();
        prop_assert_eq!(matches!(verdict, EndVerdict::Infinite(_)), wild);
    }

    #[test]
    fn fgips_sit_on_laurent_corners(g in corpus_or_random()) {
        let fgips = classify_fgips(&g, &Limits::default()).unwrap();
        let on_no_exit: VertexSet = enumerate_cycles(&g, 10_000)
            .unwrap()
            .into_iter()
            .filter(|c| !c.has_exit)
            .flat_map(|c| c.cycle.vertices(&g).unwrap())
            .collect();
        let laurent: VertexSet = g
            .vertex_ids()
            .filter(|&v| corner_classify(&g, v).unwrap() == CornerType::LaurentRing)
            .collect();
        prop_assert_eq!(&laurent, &on_no_exit);
        prop_assert_eq!(fgips.is_empty(), laurent.is_empty());
        for f in &fgips {
            for v in f.cycle.vertices(&g).unwrap() {
                prop_assert!(f.support.contains(&v) && laurent.contains(&v));
            }
        }
        for v in g.vertex_ids() {
            prop_assert_eq!(corner_classify(&g, v).unwrap() == CornerType::Field, g.is_sink(v));
        }
    }

    #[test]
    fn simple_classes_follow_sinks(g in corpus_or_random()) {
        let classes = classify_simple_projectives(&g);
        prop_assert_eq!(classes.len(), g.sinks().len());
        let members: usize = classes.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(members, g.vertex_ids().filter(|&v| g.is_line_point(v)).count());
        for c in &classes {
            prop_assert!(c.members.contains(&c.representative));
        }
    }
}

#[test]
fn galois_round_trip_on_corpus_pairs() {
    let mut checked = 0;
    for (name, g) in common::all_graphs() {
        for pair in admissible_pairs(&g, &Limits::default()).unwrap() {
            let phi = galois_phi(&g, &pair).unwrap();
            assert_eq!(galois_psi(&g, &phi.generators).unwrap(), pair, "{name}");
            let corners = phi.generators.iter().filter(|i| matches!(i, GeneratorItem::Corner(..))).count();
            assert_eq!(corners, pair.s.len());
            checked += 1;
        }
    }
    assert!(checked > 20);
}
