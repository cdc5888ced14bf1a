mod common;

use std::collections::BTreeSet;

use lpa_core::field::{
    crt_profile, crt_profile_from_roots, find_roots, is_dlf, laurent_normalize, squarefree_part, LaurentElement,
    Polynomial,
};
use lpa_core::{FieldSpec, FieldValue};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Prime(7)),
    ]
}

/// Degree 1..=6 with nonzero constant term.
fn poly() -> impl Strategy<Value = Polynomial> {
    (field(), prop::collection::vec(-5i64..=5, 2..=7)).prop_filter_map("degenerate", |(f, c)| {
        let p = Polynomial::from_i64s(f, &c);
        (p.degree().unwrap_or(0) >= 1 && !p.constant_term().is_zero()).then_some(p)
    })
}

/// Products of linear factors (x - r) with repetition and a leading scalar.
fn split_poly() -> impl Strategy<Value = (Polynomial, Vec<(i64, usize)>)> {
    (field(), prop::collection::vec((1i64..=6, 1usize..=3), 1..=3), 1i64..=4).prop_filter_map(
        "degenerate",
        |(f, factors, lead)| {
            let mut p = Polynomial::constant(f.from_i64(lead));
            let mut seen = BTreeSet::new();
            let mut kept = Vec::new();
            for (r, m) in factors {
                let rv = f.from_i64(r);
                if rv.is_zero() || !seen.insert(rv.clone()) {
                    continue;
                }
                p = p.mul(&Polynomial::linear_root(&rv).pow(m)).unwrap();
                kept.push((r, m));
            }
            (!kept.is_empty() && !p.is_zero()).then_some((p, kept))
        },
    )
}

fn exhaustive_roots(f: &Polynomial) -> Option<BTreeSet<FieldValue>> {
    let elements = f.spec().elements()?;
    Some(elements.filter(|x| f.eval(x).is_zero()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn squarefree_part_laws(f in poly()) {
        let g = squarefree_part(&f).unwrap();
        prop_assert!(g.divides(&f).unwrap());
        prop_assert_eq!(squarefree_part(&g).unwrap(), g.clone());
        prop_assert!(g.constant_term().is_one());
        let dg = g.derivative();
        if !dg.is_zero() {
            prop_assert_eq!(g.gcd(&dg).unwrap().degree(), Some(0));
        }
        if let (Some(a), Some(b)) = (exhaustive_roots(&f), exhaustive_roots(&g)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn squarefree_part_of_split_products((f, factors) in split_poly()) {
        let g = squarefree_part(&f).unwrap();
        let distinct = factors.len();
        prop_assert_eq!(g.degree(), Some(distinct));
        prop_assert!(is_dlf(&g).unwrap().is_dlf());
    }

    #[test]
    fn find_roots_deflation(f in poly()) {
        let rm = find_roots(&f).unwrap();
        let mut rebuilt = rm.cofactor.clone();
        for (r, m) in &rm.roots {
            prop_assert!(f.eval(r).is_zero());
            rebuilt = rebuilt.mul(&Polynomial::linear_root(r).pow(*m)).unwrap();
        }
        prop_assert_eq!(rebuilt.monic(), f.monic());
        prop_assert_eq!(rm.degree(), f.degree().unwrap());
        if let Some(all) = exhaustive_roots(&f) {
            let found: BTreeSet<FieldValue> = rm.distinct().cloned().collect();
            prop_assert_eq!(found, all);
        }
    }

    #[test]
    fn find_roots_recovers_constructed_roots((f, factors) in split_poly()) {
        let rm = find_roots(&f).unwrap();
        prop_assert_eq!(rm.unfactored_degree, 0);
        for (r, m) in factors {
            let rv = f.spec().from_i64(r);
            let found = rm.roots.iter().find(|(x, _)| *x == rv).map(|(_, k)| *k);
            prop_assert_eq!(found, Some(m));
        }
    }

    #[test]
    fn crt_dimension_conservation((f, factors) in split_poly()) {
        let p = crt_profile_from_roots(&f).unwrap();
        prop_assert_eq!(p.blocks.iter().map(|b| b.dimension).sum::<usize>(), f.degree().unwrap());
        let supplied: Vec<(Polynomial, usize)> = factors
            .iter()
            .map(|&(r, m)| (Polynomial::linear_root(&f.spec().from_i64(r)), m))
            .collect();
        let q = crt_profile(&f, &supplied).unwrap();
        prop_assert_eq!(q.dimension, f.degree().unwrap());
        prop_assert_eq!(q.is_split_semisimple, factors.iter().all(|&(_, m)| m == 1));
    }

    #[test]
    fn laurent_normalize_laws(
        spec in field(),
        terms in prop::collection::btree_map(-5i64..=5, 1i64..=9, 2..=5),
    ) {
        let terms: Vec<(i64, FieldValue)> = terms.into_iter().map(|(e, c)| (e, spec.from_i64(c))).collect();
        let g = LaurentElement::new(spec, terms).unwrap();
        prop_assume!(g.terms().len() >= 2);
        let nf = laurent_normalize(&g).unwrap();
        let again = laurent_normalize(&LaurentElement::from_polynomial(&nf.monic)).unwrap();
        prop_assert_eq!(&again.monic, &nf.monic);
        let c0 = nf.monic.constant_term();
        prop_assert_eq!(nf.canonical.clone(), nf.monic.scale(&c0.inv().unwrap()));
        prop_assert!(nf.canonical.constant_term().is_one());
    }
}

#[test]
fn rational_roots_of_fractions() {
    let q = FieldSpec::Rationals;
    // (2x - 1)(3x + 2)^2
    let f = Polynomial::from_i64s(q, &[-1, 2])
        .mul(&Polynomial::from_i64s(q, &[2, 3]).pow(2))
        .unwrap();
    let rm = find_roots(&f).unwrap();
    let got: Vec<(String, usize)> = rm.roots.iter().map(|(r, m)| (r.to_string(), *m)).collect();
    assert_eq!(got, [("-2/3".to_string(), 2), ("1/2".to_string(), 1)]);
}

#[test]
fn dlf_matches_frobenius_over_f7() {
    for d in 1..=3 {
        for f in common::unit_constant_polys(7, d) {
            assert_eq!(is_dlf(&f).unwrap().is_dlf(), common::divides_frobenius(&f, 7), "{f}");
        }
    }
}
