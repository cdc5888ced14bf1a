use std::collections::VecDeque;

use super::{Digraph, DigraphBuilder, Multiplicity, VertexId, VertexSet};
use crate::error::{Error, Result};

pub fn is_hereditary(g: &Digraph, set: &VertexSet) -> bool {
    g.arrows()
        .iter()
        .all(|a| !set.contains(&a.source) || set.contains(&a.target))
}

/// Every regular vertex whose targets all lie in `set` is itself in `set`.
pub fn is_saturated(g: &Digraph, set: &VertexSet) -> bool {
    g.vertex_ids().all(|v| {
        set.contains(&v)
            || !g.is_regular(v)
            || g.out_arrows(v).iter().any(|&e| !set.contains(&g.target(e)))
    })
}

/// Smallest hereditary saturated set containing `x`.
pub fn hereditary_saturated_closure(g: &Digraph, x: &VertexSet) -> VertexSet {
    let mut set = x.clone();
    loop {
        let before = set.len();
        let mut queue: VecDeque<VertexId> = set.iter().copied().collect();
        while let Some(u) = queue.pop_front() {
            for &e in g.out_arrows(u) {
                if set.insert(g.target(e)) {
                    queue.push_back(g.target(e));
                }
            }
        }
        for v in g.vertex_ids() {
            if !set.contains(&v) && g.is_regular(v) && g.out_arrows(v).iter().all(|&e| set.contains(&g.target(e))) {
                set.insert(v);
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// All hereditary saturated subsets, ordered by size and then by vertex
/// indices. `max_vertices` bounds the subset sweep.
pub fn enumerate_hereditary_saturated(g: &Digraph, max_vertices: usize, limit: usize) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    if n > max_vertices.min(63) {
        return Err(Error::limit("vertex count for subset enumeration", max_vertices as u64));
    }
    let succ: Vec<u64> = g
        .vertex_ids()
        .map(|v| g.out_arrows(v).iter().fold(0u64, |m, &e| m | 1 << g.target(e).0))
        .collect();
    let regular: Vec<bool> = g.vertex_ids().map(|v| g.is_regular(v)).collect();
    let mut out: Vec<u64> = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let ok = (0..n).all(|v| {
            if mask >> v & 1 == 1 {
                succ[v] & !mask == 0
            } else {
                !regular[v] || succ[v] & !mask != 0
            }
        });
        if ok {
            out.push(mask);
            if out.len() > limit {
                return Err(Error::limit("hereditary saturated set count", limit as u64));
            }
        }
    }
    let mut sets: Vec<VertexSet> = out
        .into_iter()
        .map(|m| (0..n).filter(|v| m >> v & 1 == 1).map(VertexId).collect())
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    Ok(sets)
}

/// B_H: infinite emitters outside H with finitely many, but at least one,
/// arrow instances into V∖H.
pub fn breaking_vertices(g: &Digraph, h: &VertexSet) -> Result<VertexSet> {
    if !is_hereditary(g, h) {
        return Err(Error::NotHereditary);
    }
    Ok(g.vertex_ids()
        .filter(|v| !h.contains(v) && g.is_infinite_emitter(*v))
        .filter(|&v| {
            let outside: Vec<_> = g
                .out_arrows(v)
                .iter()
                .filter(|&&e| !h.contains(&g.target(e)))
                .collect();
            !outside.is_empty() && outside.iter().all(|&&e| g.arrow(e).multiplicity != Multiplicity::Omega)
        })
        .collect())
}

fn reach(g: &Digraph, x: &VertexSet, forward: bool) -> VertexSet {
    let mut seen = x.clone();
    let mut stack: Vec<VertexId> = x.iter().copied().collect();
    while let Some(u) = stack.pop() {
        let arrows = if forward { g.out_arrows(u) } else { g.in_arrows(u) };
        for &e in arrows {
            let w = if forward { g.target(e) } else { g.source(e) };
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}

/// Vertices reachable from `x` (reflexive).
pub fn successors(g: &Digraph, x: &VertexSet) -> VertexSet {
    reach(g, x, true)
}

/// Vertices from which `x` is reachable (reflexive).
pub fn predecessors(g: &Digraph, x: &VertexSet) -> VertexSet {
    reach(g, x, false)
}

/// Full subgraph on `w`, keeping declaration order and multiplicities.
pub fn full_subgraph(g: &Digraph, w: &VertexSet) -> Digraph {
    let mut b = DigraphBuilder::new(g.name()).vertices(w.iter().map(|&v| g.vertex_name(v).to_string()));
    for a in g.arrows() {
        if w.contains(&a.source) && w.contains(&a.target) {
            b = b.arrow_with(
                a.id.clone(),
                g.vertex_name(a.source),
                g.vertex_name(a.target),
                a.multiplicity,
            );
        }
    }
    b.build().expect("subgraph of a valid digraph")
}

/// (H, S) with H hereditary saturated and S ⊆ B_H.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub h: VertexSet,
    pub s: VertexSet,
}

impl AdmissiblePair {
    pub fn new(g: &Digraph, h: VertexSet, s: VertexSet) -> Result<Self> {
        let pair = AdmissiblePair { h, s };
        pair.check(g)?;
        Ok(pair)
    }

    pub fn zero() -> Self {
        AdmissiblePair {
            h: VertexSet::new(),
            s: VertexSet::new(),
        }
    }

    pub fn check(&self, g: &Digraph) -> Result<()> {
        if self.h.iter().chain(&self.s).any(|v| v.0 >= g.vertex_count()) {
            return Err(Error::NotAdmissible("vertex out of range".into()));
        }
        if !is_hereditary(g, &self.h) {
            return Err(Error::NotAdmissible(format!("{} is not hereditary", g.format_set(&self.h))));
        }
        if !is_saturated(g, &self.h) {
            return Err(Error::NotAdmissible(format!("{} is not saturated", g.format_set(&self.h))));
        }
        let b = breaking_vertices(g, &self.h)?;
        if !self.s.is_subset(&b) {
            let extra: VertexSet = self.s.difference(&b).copied().collect();
            return Err(Error::NotAdmissible(format!(
                "{} are not breaking vertices of H",
                g.format_set(&extra)
            )));
        }
        Ok(())
    }

    pub fn is_graded_zero(&self) -> bool {
        self.h.is_empty() && self.s.is_empty()
    }

    pub fn display(&self, g: &Digraph) -> String {
        format!("({}, {})", g.format_set(&self.h), g.format_set(&self.s))
    }
}
