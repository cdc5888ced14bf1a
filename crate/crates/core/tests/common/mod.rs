//! Corpus access and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use lpa_core::digraph::ArrowId;
use lpa_core::field::Polynomial;
use lpa_core::io::{parse_digraph, parse_ideal};
use lpa_core::{Digraph, DigraphBuilder, FieldSpec, IdealPresentation, Multiplicity, VertexId, VertexSet};
use proptest::prelude::*;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn graph(name: &str) -> Digraph {
    let path = corpus_dir().join("graphs").join(format!("{name}.graph"));
    parse_digraph(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

pub fn ideal(g: &Digraph, name: &str, field: Option<FieldSpec>) -> IdealPresentation {
    let path = corpus_dir().join("ideals").join(format!("{name}.ideal"));
    parse_ideal(g, &std::fs::read_to_string(&path).unwrap(), field).unwrap()
}

/// Every graph in corpus/graphs, sorted by file name.
pub fn all_graphs() -> Vec<(String, Digraph)> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir().join("graphs"))
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "graph").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), graph(&n))).collect()
}

/// Random digraphs on vertices v0.. with arrows e0..; `omega` allows ω classes.
pub fn arb_digraph(max_vertices: usize, max_arrows: usize, omega: bool) -> impl Strategy<Value = Digraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        let mult = if omega {
            prop_oneof![4 => (1u64..=3).prop_map(Multiplicity::Finite), 1 => Just(Multiplicity::Omega)].boxed()
        } else {
            prop_oneof![4 => Just(Multiplicity::Finite(1)), 1 => (2u64..=3).prop_map(Multiplicity::Finite)].boxed()
        };
        prop::collection::vec((0..n, 0..n, mult), 0..=max_arrows).prop_map(move |arrows| {
            let mut b = DigraphBuilder::new("random").vertices((0..n).map(|i| format!("v{i}")));
            for (i, (s, t, m)) in arrows.into_iter().enumerate() {
                b = b.arrow_with(format!("e{i}"), format!("v{s}"), format!("v{t}"), m);
            }
            b.build().unwrap()
        })
    })
}

/// Hereditary saturated subsets straight from the arrow list.
pub fn hs_oracle(g: &Digraph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let inside = |v: VertexId| mask >> v.0 & 1 == 1;
        let hereditary = g.arrows().iter().all(|a| !inside(a.source) || inside(a.target));
        let saturated = (0..n).map(VertexId).all(|v| {
            let outs: Vec<_> = g.arrows().iter().filter(|a| a.source == v).collect();
            let regular = !outs.is_empty() && outs.iter().all(|a| a.multiplicity != Multiplicity::Omega);
            inside(v) || !regular || outs.iter().any(|a| !inside(a.target))
        });
        if hereditary && saturated {
            out.push((0..n).map(VertexId).filter(|&v| inside(v)).collect());
        }
    }
    out
}

/// Every polynomial over 𝔽p with constant term 1 and exact degree `d`.
pub fn unit_constant_polys(p: u64, d: usize) -> Vec<Polynomial> {
    let spec = FieldSpec::Prime(p);
    let mut out = Vec::new();
    let total = (p as usize).pow(d as u32);
    for code in 0..total {
        let mut coeffs = vec![1i64];
        let mut c = code;
        for _ in 0..d {
            coeffs.push((c % p as usize) as i64);
            c /= p as usize;
        }
        if coeffs[d] != 0 {
            out.push(Polynomial::from_i64s(spec, &coeffs));
        }
    }
    out
}

/// f | xᵖ − x, i.e. f splits into distinct linear factors.
pub fn divides_frobenius(f: &Polynomial, p: u64) -> bool {
    let spec = FieldSpec::Prime(p);
    let mut c = vec![0i64; p as usize + 1];
    c[p as usize] = 1;
    c[1] = -1;
    f.divides(&Polynomial::from_i64s(spec, &c)).unwrap()
}

/// Arrow-class multiplicities between ordered vertex pairs.
fn edge_table(g: &Digraph) -> BTreeMap<(usize, usize), Vec<String>> {
    let mut t: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for a in g.arrows() {
        t.entry((a.source.0, a.target.0)).or_default().push(a.multiplicity.to_string());
    }
    for v in t.values_mut() {
        v.sort();
    }
    t
}

/// Isomorphism ignoring vertex and arrow names, by backtracking.
pub fn label_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.arrow_count() != b.arrow_count() || n > 12 {
        return false;
    }
    let ta = edge_table(a);
    let tb = edge_table(b);
    let sig = |g: &Digraph, v: usize| (g.out_arrows(VertexId(v)).len(), g.in_arrows(VertexId(v)).len());
    let empty = Vec::new();
    let get = |t: &BTreeMap<(usize, usize), Vec<String>>, k: (usize, usize)| t.get(&k).cloned().unwrap_or(empty.clone());
    fn go(
        i: usize,
        n: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(&[usize], usize, usize) -> bool,
    ) -> bool {
        if i == n {
            return true;
        }
        for j in 0..n {
            if !used[j] && ok(map, i, j) {
                used[j] = true;
                map.push(j);
                if go(i + 1, n, map, used, ok) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    let ok = |map: &[usize], i: usize, j: usize| {
        if sig(a, i) != sig(b, j) || get(&ta, (i, i)) != get(&tb, (j, j)) {
            return false;
        }
        map.iter().enumerate().all(|(u, &uj)| {
            get(&ta, (u, i)) == get(&tb, (uj, j)) && get(&ta, (i, u)) == get(&tb, (j, uj))
        })
    };
    go(0, n, &mut Vec::new(), &mut vec![false; n], &ok)
}

type Matrix = Vec<Vec<i64>>;

fn zeros(n: usize) -> Matrix {
    vec![vec![0; n]; n]
}

fn mul(x: &Matrix, y: &Matrix) -> Matrix {
    let n = x.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if x[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += x[i][k] * y[k][j];
                }
            }
        }
    }
    out
}

fn transpose(x: &Matrix) -> Matrix {
    let n = x.len();
    let mut out = zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[j][i] = x[i][j];
        }
    }
    out
}

fn add(x: &Matrix, y: &Matrix) -> Matrix {
    x.iter().zip(y).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect()).collect()
}

/// Rank over 𝔽_q of a list of vectors, q a large prime.
fn rank_mod(mut rows: Vec<Vec<i64>>) -> usize {
    const Q: i64 = 1_000_000_007;
    let inv = |a: i64| {
        let (mut r, mut b, mut e) = (1i64, a.rem_euclid(Q), Q - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % Q;
            }
            b = b * b % Q;
            e >>= 1;
        }
        r
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c].rem_euclid(Q) != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pv = inv(rows[rank][c]);
        for r in 0..rows.len() {
            if r != rank && rows[r][c].rem_euclid(Q) != 0 {
                let f = rows[r][c] * pv % Q;
                for k in c..cols {
                    rows[r][k] = (rows[r][k] - f * rows[rank][k]).rem_euclid(Q);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub struct MatrixOracle {
    pub violations: Vec<String>,
    pub rank: usize,
}

/// The block representation of L(Γ) on paths ending at sinks, for a finite
/// acyclic row-finite Γ: vertices act as projections onto paths starting
/// there and an arrow instance prepends itself.
pub fn matrix_oracle(g: &Digraph) -> MatrixOracle {
    let instances: Vec<(ArrowId, u64)> = g
        .arrows()
        .iter()
        .enumerate()
        .flat_map(|(i, a)| {
            let Multiplicity::Finite(k) = a.multiplicity else { panic!("ω class") };
            (0..k).map(move |j| (ArrowId(i), j))
        })
        .collect();
    // all paths (start vertex, instance indices), by depth-first extension
    let mut paths: Vec<(VertexId, Vec<usize>)> = g.vertex_ids().map(|v| (v, Vec::new())).collect();
    let mut frontier = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (v, p) in &frontier {
            let end = p.last().map_or(*v, |&i| g.target(instances[i].0));
            for (i, &(e, _)) in instances.iter().enumerate() {
                if g.source(e) == end {
                    let mut q = p.clone();
                    q.push(i);
                    next.push((*v, q));
                }
            }
        }
        assert!(next.len() < 100_000, "oracle needs a small acyclic digraph");
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let end = |(v, p): &(VertexId, Vec<usize>)| p.last().map_or(*v, |&i| g.target(instances[i].0));
    let basis: Vec<(VertexId, Vec<usize>)> = paths.iter().filter(|p| g.is_sink(end(p))).cloned().collect();
    let index: BTreeMap<(VertexId, Vec<usize>), usize> =
        basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = basis.len();

    let vertex = |v: VertexId| {
        let mut m = zeros(n);
        for (i, (s, _)) in basis.iter().enumerate() {
            if *s == v {
                m[i][i] = 1;
            }
        }
        m
    };
    let arrow = |i: usize| {
        let e = instances[i].0;
        let mut m = zeros(n);
        for (col, (s, p)) in basis.iter().enumerate() {
            if *s == g.target(e) {
                let mut q = vec![i];
                q.extend(p);
                m[index[&(g.source(e), q)]][col] = 1;
            }
        }
        m
    };
    let vm: Vec<Matrix> = g.vertex_ids().map(vertex).collect();
    let em: Vec<Matrix> = (0..instances.len()).map(arrow).collect();
    let et: Vec<Matrix> = em.iter().map(transpose).collect();
    let name = |i: usize| format!("{}#{}", g.arrow(instances[i].0).id, instances[i].1);

    let mut violations = Vec::new();
    for v in g.vertex_ids() {
        for w in g.vertex_ids() {
            let want = if v == w { vm[v.0].clone() } else { zeros(n) };
            if mul(&vm[v.0], &vm[w.0]) != want {
                violations.push(format!("(V) {} {}", g.vertex_name(v), g.vertex_name(w)));
            }
        }
    }
    for (i, &(e, _)) in instances.iter().enumerate() {
        let (s, t) = (g.source(e).0, g.target(e).0);
        if mul(&vm[s], &em[i]) != em[i] || mul(&em[i], &vm[t]) != em[i] {
            violations.push(format!("(E) {}", name(i)));
        }
        if mul(&vm[t], &et[i]) != et[i] || mul(&et[i], &vm[s]) != et[i] {
            violations.push(format!("(E*) {}", name(i)));
        }
        for j in 0..instances.len() {
            let want = if i == j { vm[t].clone() } else { zeros(n) };
            if mul(&et[j], &em[i]) != want {
                violations.push(format!("(CK1) {} {}", name(j), name(i)));
            }
        }
    }
    for v in g.vertex_ids().filter(|&v| g.is_regular(v)) {
        let mut sum = zeros(n);
        for (i, &(e, _)) in instances.iter().enumerate() {
            if g.source(e) == v {
                sum = add(&sum, &mul(&em[i], &et[i]));
            }
        }
        if sum != vm[v.0] {
            violations.push(format!("(CK2) {}", g.vertex_name(v)));
        }
    }

    // span of p q* over paths with a common end
    let path_matrix = |(v, p): &(VertexId, Vec<usize>)| p.iter().fold(vm[v.0].clone(), |acc, &i| mul(&acc, &em[i]));
    let pm: Vec<Matrix> = paths.iter().map(path_matrix).collect();
    let mut rows = Vec::new();
    for (a, pa) in paths.iter().zip(&pm) {
        for (b, pb) in paths.iter().zip(&pm) {
            if end(a) == end(b) {
                rows.push(mul(pa, &transpose(pb)).concat());
            }
        }
    }
    MatrixOracle {
        violations,
        rank: rank_mod(rows),
    }
}
