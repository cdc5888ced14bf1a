use std::collections::BTreeMap;
use std::fmt;

use super::{GeneratorItem, ProjectivePresentation};
use crate::digraph::{
    enumerate_cycles, predecessors, successors, ArrowId, Digraph, GeometricCycle, Multiplicity, OutDegree, VertexId,
    VertexSet,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::quotients::path_counts;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleClass {
    pub representative: VertexId,
    pub members: Vec<VertexId>,
}

/// One class per sink; members are the line points draining into it.
pub fn classify_simple_projectives(g: &Digraph) -> Vec<SimpleClass> {
    let mut classes: BTreeMap<VertexId, Vec<VertexId>> = g.sinks().into_iter().map(|s| (s, Vec::new())).collect();
    for v in g.vertex_ids() {
        if let Some(s) = g.line_point_sink(v) {
            classes.get_mut(&s).expect("terminal vertex is a sink").push(v);
        }
    }
    classes
        .into_iter()
        .map(|(representative, members)| SimpleClass { representative, members })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgipClass {
    pub cycle: GeometricCycle,
    pub support: VertexSet,
}

pub fn classify_fgips(g: &Digraph, limits: &Limits) -> Result<Vec<FgipClass>> {
    let mut out = Vec::new();
    for info in enumerate_cycles(g, limits.max_cycles)? {
        if info.has_exit {
            continue;
        }
        let on: VertexSet = info.cycle.vertices(g)?.into_iter().collect();
        out.push(FgipClass {
            support: predecessors(g, &on),
            cycle: info.cycle,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerType {
    Field,
    LaurentRing,
    Other,
}

impl fmt::Display for CornerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CornerType::Field => "field",
            CornerType::LaurentRing => "laurent",
            CornerType::Other => "other",
        })
    }
}

/// Type of the corner algebra vLv.
pub fn corner_classify(g: &Digraph, v: VertexId) -> Result<CornerType> {
    if v.0 >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", v.0)));
    }
    if g.is_sink(v) {
        return Ok(CornerType::Field);
    }
    let mut u = v;
    for _ in 0..g.vertex_count() {
        if g.out_degree(u) != OutDegree::Finite(1) {
            return Ok(CornerType::Other);
        }
        u = g.target(g.out_arrows(u)[0]);
        if u == v {
            return Ok(CornerType::LaurentRing);
        }
    }
    Ok(CornerType::Other)
}

/// Blocks (size, copies), sorted by size.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatrixDecomposition {
    pub blocks: Vec<(u128, usize)>,
}

impl MatrixDecomposition {
    fn from_sizes(sizes: impl IntoIterator<Item = u128>) -> Self {
        let mut counts: BTreeMap<u128, usize> = BTreeMap::new();
        for n in sizes.into_iter().filter(|&n| n > 0) {
            *counts.entry(n).or_insert(0) += 1;
        }
        MatrixDecomposition {
            blocks: counts.into_iter().collect(),
        }
    }

    pub fn total_dimension(&self) -> Option<u128> {
        self.blocks.iter().try_fold(0u128, |acc, &(n, c)| {
            n.checked_mul(n)?.checked_mul(c as u128)?.checked_add(acc)
        })
    }
}

impl fmt::Display for MatrixDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.blocks.iter().map(|(n, c)| format!("{c} × M_{n}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndVerdict {
    Finite(MatrixDecomposition),
    Infinite(String),
}

/// Arrows of some cycle inside `within`, if any.
fn find_cycle(g: &Digraph, within: &VertexSet) -> Option<Vec<ArrowId>> {
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; g.vertex_count()];
    let mut via: Vec<Option<ArrowId>> = vec![None; g.vertex_count()];
    for &root in within {
        if state[root.0] != 0 {
            continue;
        }
        let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
        state[root.0] = 1;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            let outs = g.out_arrows(u);
            if *next == outs.len() {
                state[u.0] = 2;
                stack.pop();
                continue;
            }
            let e = outs[*next];
            *next += 1;
            let t = g.target(e);
            if !within.contains(&t) {
                continue;
            }
            match state[t.0] {
                0 => {
                    state[t.0] = 1;
                    via[t.0] = Some(e);
                    stack.push((t, 0));
                }
                1 => {
                    let mut path = vec![e];
                    let mut w = u;
                    while w != t {
                        let a = via[w.0].expect("on stack below the root");
                        path.push(a);
                        w = g.source(a);
                    }
                    path.reverse();
                    return Some(path);
                }
                _ => {}
            }
        }
    }
    None
}

pub fn end_finite_dim(g: &Digraph, p: &ProjectivePresentation) -> Result<EndVerdict> {
    p.validate(g)?;
    let mut mult = vec![0u128; g.vertex_count()];
    for item in &p.items {
        let v = match item {
            GeneratorItem::Corner(v, _) => {
                return Ok(EndVerdict::Infinite(format!("corner item at {}", g.vertex_name(*v))));
            }
            GeneratorItem::Vertex(v) => *v,
        };
        let reach = successors(g, &[v].into());
        if let Some(a) = g
            .arrows()
            .iter()
            .find(|a| reach.contains(&a.source) && a.multiplicity == Multiplicity::Omega)
        {
            return Ok(EndVerdict::Infinite(format!("ω class {}", a.id)));
        }
        if let Some(c) = find_cycle(g, &reach) {
            let names: Vec<&str> = c.iter().map(|&e| g.arrow(e).id.as_str()).collect();
            return Ok(EndVerdict::Infinite(format!("cycle {}", names.join(" "))));
        }
        let outside: VertexSet = g.vertex_ids().filter(|u| !reach.contains(u)).collect();
        let lifted = lift(g, v, &outside)?;
        for s in g.sinks() {
            mult[s.0] = mult[s.0]
                .checked_add(lifted[s.0])
                .ok_or_else(|| Error::limit("multiplicity exceeds 128-bit range", u64::MAX))?;
        }
    }
    Ok(EndVerdict::Finite(MatrixDecomposition::from_sizes(
        g.sinks().into_iter().map(|s| mult[s.0]),
    )))
}

/// Paths from `v` to each vertex, on the acyclic part reachable from `v`.
fn lift(g: &Digraph, v: VertexId, skip: &VertexSet) -> Result<Vec<u128>> {
    let mut count = vec![0u128; g.vertex_count()];
    count[v.0] = 1;
    let mut order: Vec<VertexId> = Vec::new();
    let mut indeg = vec![0usize; g.vertex_count()];
    for a in g.arrows() {
        if !skip.contains(&a.source) && !skip.contains(&a.target) {
            indeg[a.target.0] += 1;
        }
    }
    let mut ready: Vec<VertexId> = g.vertex_ids().filter(|u| !skip.contains(u) && indeg[u.0] == 0).collect();
    while let Some(u) = ready.pop() {
        order.push(u);
        for &e in g.out_arrows(u) {
            let t = g.target(e);
            if skip.contains(&t) {
                continue;
            }
            indeg[t.0] -= 1;
            if indeg[t.0] == 0 {
                ready.push(t);
            }
        }
    }
    for u in order {
        for &e in g.out_arrows(u) {
            let Multiplicity::Finite(k) = g.arrow(e).multiplicity else {
                return Err(Error::NotRowFinite);
            };
            let add = count[u.0]
                .checked_mul(k as u128)
                .ok_or_else(|| Error::limit("multiplicity exceeds 128-bit range", u64::MAX))?;
            let t = g.target(e);
            count[t.0] = count[t.0]
                .checked_add(add)
                .ok_or_else(|| Error::limit("multiplicity exceeds 128-bit range", u64::MAX))?;
        }
    }
    Ok(count)
}

/// One block M_{n(v)} per sink v, n(v) counting paths ending at v.
pub fn acyclic_decomposition(g: &Digraph) -> Result<MatrixDecomposition> {
    if !g.is_row_finite() {
        return Err(Error::NotRowFinite);
    }
    let n = path_counts(g, &VertexSet::new())?;
    Ok(MatrixDecomposition::from_sizes(g.sinks().into_iter().map(|s| n[s.0])))
}
