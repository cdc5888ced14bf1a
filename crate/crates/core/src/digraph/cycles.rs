use std::fmt;

use super::{ArrowId, Digraph, Multiplicity, OutDegree, VertexId, VertexSet};
use crate::error::{Error, Result};

/// A simple cycle up to rotation, stored by arrow ids so it can be located
/// again in derived digraphs that keep those ids. The first arrow is the one
/// with the lexicographically smallest id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeometricCycle {
    arrows: Vec<String>,
    base: String,
}

impl GeometricCycle {
    /// Validates that `names` trace a simple cycle in `g` and canonicalizes.
    pub fn from_arrows<S: AsRef<str>>(g: &Digraph, names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Validation(vec!["empty cycle".into()]));
        }
        let ids = names
            .iter()
            .map(|n| g.arrow_by_name(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let mut sources = VertexSet::new();
        for (i, &e) in ids.iter().enumerate() {
            let next = ids[(i + 1) % ids.len()];
            if g.target(e) != g.source(next) {
                return Err(Error::Validation(vec![format!(
                    "arrows {} {} are not consecutive",
                    g.arrow(e).id,
                    g.arrow(next).id
                )]));
            }
            if !sources.insert(g.source(e)) {
                return Err(Error::Validation(vec![format!(
                    "cycle revisits vertex {}",
                    g.vertex_name(g.source(e))
                )]));
            }
        }
        Ok(Self::canonical(g, &ids))
    }

    fn canonical(g: &Digraph, ids: &[ArrowId]) -> Self {
        let start = (0..ids.len())
            .min_by(|&a, &b| g.arrow(ids[a]).id.cmp(&g.arrow(ids[b]).id))
            .expect("nonempty cycle");
        let arrows: Vec<String> = (0..ids.len())
            .map(|k| g.arrow(ids[(start + k) % ids.len()]).id.clone())
            .collect();
        let base = g.vertex_name(g.source(ids[start])).to_string();
        GeometricCycle { arrows, base }
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    pub fn first_arrow(&self) -> &str {
        &self.arrows[0]
    }

    /// Source of the first arrow.
    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.arrows.len() == 1
    }

    pub fn resolve(&self, g: &Digraph) -> Result<Vec<ArrowId>> {
        let ids: Vec<ArrowId> = self.arrows.iter().map(|a| g.arrow_by_name(a)).collect::<Result<_>>()?;
        // Re-check the shape: ids may name different arrows in another digraph.
        GeometricCycle::from_arrows(g, &self.arrows)?;
        Ok(ids)
    }

    /// Vertices in cycle order starting at the base.
    pub fn vertices(&self, g: &Digraph) -> Result<Vec<VertexId>> {
        Ok(self.resolve(g)?.into_iter().map(|e| g.source(e)).collect())
    }

    /// No vertex on the cycle emits anything besides its single cycle arrow.
    pub fn has_exit(&self, g: &Digraph) -> Result<bool> {
        Ok(self
            .vertices(g)?
            .into_iter()
            .any(|v| g.out_degree(v) != OutDegree::Finite(1)))
    }
}

impl fmt::Display for GeometricCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.arrows.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleInfo {
    pub cycle: GeometricCycle,
    pub has_exit: bool,
    pub exclusive: bool,
    pub multiplicity_one: bool,
}

struct Johnson<'a> {
    g: &'a Digraph,
    start: VertexId,
    component: Vec<bool>,
    blocked: Vec<bool>,
    blockers: Vec<Vec<VertexId>>,
    stack: Vec<ArrowId>,
    found: Vec<Vec<ArrowId>>,
    limit: usize,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: VertexId) {
        self.blocked[u.0] = false;
        for w in std::mem::take(&mut self.blockers[u.0]) {
            if self.blocked[w.0] {
                self.unblock(w);
            }
        }
    }

    fn circuit(&mut self, v: VertexId) -> Result<bool> {
        let g = self.g;
        let mut closed = false;
        self.blocked[v.0] = true;
        for &e in g.out_arrows(v) {
            let t = g.target(e);
            if !self.component[t.0] {
                continue;
            }
            if t == self.start {
                let mut c = self.stack.clone();
                c.push(e);
                self.found.push(c);
                if self.found.len() > self.limit {
                    return Err(Error::limit("cycle count", self.limit as u64));
                }
                closed = true;
            } else if !self.blocked[t.0] {
                self.stack.push(e);
                closed |= self.circuit(t)?;
                self.stack.pop();
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &e in g.out_arrows(v) {
                let t = g.target(e);
                if self.component[t.0] && !self.blockers[t.0].contains(&v) {
                    self.blockers[t.0].push(v);
                }
            }
        }
        Ok(closed)
    }
}

/// Strongly connected component of `s` inside the vertices ≥ `s`.
fn component_of(g: &Digraph, s: VertexId) -> Vec<bool> {
    let n = g.vertex_count();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![s];
        seen[s.0] = true;
        while let Some(u) = stack.pop() {
            let arrows = if forward { g.out_arrows(u) } else { g.in_arrows(u) };
            for &e in arrows {
                let w = if forward { g.target(e) } else { g.source(e) };
                if w >= s && !seen[w.0] {
                    seen[w.0] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let (fwd, bwd) = (reach(true), reach(false));
    fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
}

/// All simple cycles over arrow classes, canonical and sorted.
pub fn enumerate_cycles(g: &Digraph, limit: usize) -> Result<Vec<CycleInfo>> {
    let n = g.vertex_count();
    let mut found = Vec::new();
    for s in g.vertex_ids() {
        let component = component_of(g, s);
        let mut j = Johnson {
            g,
            start: s,
            component,
            blocked: vec![false; n],
            blockers: vec![Vec::new(); n],
            stack: Vec::new(),
            found: std::mem::take(&mut found),
            limit,
        };
        j.circuit(s)?;
        found = j.found;
    }
    let mut cycles: Vec<(GeometricCycle, VertexSet)> = found
        .iter()
        .map(|ids| {
            let vs = ids.iter().map(|&e| g.source(e)).collect();
            (GeometricCycle::canonical(g, ids), vs)
        })
        .collect();
    cycles.sort_by(|a, b| a.0.cmp(&b.0));
    let infos = cycles
        .iter()
        .enumerate()
        .map(|(i, (c, vs))| {
            let exclusive = cycles
                .iter()
                .enumerate()
                .all(|(k, (_, other))| k == i || vs.is_disjoint(other));
            let has_exit = vs.iter().any(|&v| g.out_degree(v) != OutDegree::Finite(1));
            let multiplicity_one = c
                .arrows
                .iter()
                .all(|a| g.arrow(g.arrow_by_name(a).expect("own arrow")).multiplicity == Multiplicity::Finite(1));
            CycleInfo {
                cycle: c.clone(),
                has_exit,
                exclusive,
                multiplicity_one,
            }
        })
        .collect();
    Ok(infos)
}
