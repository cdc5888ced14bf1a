//! Digraph families used by the benchmarks.

use lpa_core::{Digraph, DigraphBuilder, FieldSpec, Polynomial};

/// `n` looped vertices in a chain.
pub fn looped_chain(n: usize) -> Digraph {
    let mut b = DigraphBuilder::new(format!("chain{n}")).vertices((1..=n).map(|i| format!("v{i}")));
    for i in 1..=n {
        b = b.arrow(format!("C{i}"), format!("v{i}"), format!("v{i}"));
        if i < n {
            b = b.arrow(format!("a{i}"), format!("v{i}"), format!("v{}", i + 1));
        }
    }
    b.build().expect("well-formed chain")
}

/// Acyclic ladder: `n` rungs, each vertex doubling into the next pair.
pub fn ladder(n: usize) -> Digraph {
    let names: Vec<String> = (0..n).flat_map(|i| [format!("l{i}"), format!("r{i}")]).collect();
    let mut b = DigraphBuilder::new(format!("ladder{n}")).vertices(names);
    for i in 0..n.saturating_sub(1) {
        for (s, side) in [("l", 0), ("r", 1)] {
            b = b
                .arrow(format!("{s}{i}l"), format!("{s}{i}"), format!("l{}", i + 1))
                .arrow(format!("{s}{i}r{side}"), format!("{s}{i}"), format!("r{}", i + 1));
        }
    }
    b.build().expect("well-formed ladder")
}

/// A single cycle of length `n`.
pub fn cycle(n: usize) -> Digraph {
    let mut b = DigraphBuilder::new(format!("cycle{n}")).vertices((0..n).map(|i| format!("c{i}")));
    for i in 0..n {
        b = b.arrow(format!("e{i}"), format!("c{i}"), format!("c{}", (i + 1) % n));
    }
    b.build().expect("well-formed cycle")
}

/// ∏_{r=1}^{d} (1 − r x) over 𝔽p.
pub fn split_poly(p: u64, d: usize) -> Polynomial {
    let field = FieldSpec::Prime(p);
    (1..=d as i64).fold(Polynomial::one(field), |acc, r| {
        acc.mul(&Polynomial::from_i64s(field, &[1, -r])).expect("same field")
    })
}
