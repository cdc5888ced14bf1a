//! Finite digraphs whose arrow classes carry a multiplicity in {1, 2, …} ∪ {ω},
//! and the structural analyses built on them.

mod cycles;
mod morphism;
mod sets;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

pub use cycles::{enumerate_cycles, CycleInfo, GeometricCycle};
pub use morphism::{check_admissible_morphism, DigraphMorphism, MorphismReport};
pub use sets::{
    breaking_vertices, enumerate_hereditary_saturated, full_subgraph, hereditary_saturated_closure, is_hereditary,
    is_saturated, predecessors, successors, AdmissiblePair,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Omega,
}

impl Multiplicity {
    pub fn is_one(self) -> bool {
        self == Multiplicity::Finite(1)
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Omega => write!(f, "omega"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OutDegree {
    Finite(u64),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowClass {
    pub id: String,
    pub source: VertexId,
    pub target: VertexId,
    pub multiplicity: Multiplicity,
}

/// Immutable digraph. Built through [`DigraphBuilder`].
#[derive(Debug, Clone)]
pub struct Digraph {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<ArrowClass>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
    out: Vec<Vec<ArrowId>>,
    into: Vec<Vec<ArrowId>>,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Digraph {}

#[derive(Debug, Clone, Default)]
pub struct DigraphBuilder {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<(String, String, String, Multiplicity)>,
}

impl DigraphBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        DigraphBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn vertices<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn arrow(self, id: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> Self {
        self.arrow_with(id, source, target, Multiplicity::Finite(1))
    }

    pub fn arrow_with(
        mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        multiplicity: Multiplicity,
    ) -> Self {
        self.arrows.push((id.into(), source.into(), target.into(), multiplicity));
        self
    }

    pub fn build(self) -> Result<Digraph> {
        let mut vertex_index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), VertexId(i)).is_some() {
                return Err(Error::Validation(vec![format!("duplicate vertex `{v}`")]));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut arrows = Vec::with_capacity(self.arrows.len());
        let mut out = vec![Vec::new(); self.vertices.len()];
        let mut into = vec![Vec::new(); self.vertices.len()];
        for (i, (id, s, t, m)) in self.arrows.into_iter().enumerate() {
            if arrow_index.insert(id.clone(), ArrowId(i)).is_some() {
                return Err(Error::Validation(vec![format!("duplicate arrow `{id}`")]));
            }
            if m == Multiplicity::Finite(0) {
                return Err(Error::Validation(vec![format!("arrow `{id}` has multiplicity 0")]));
            }
            let source = *vertex_index.get(&s).ok_or(Error::UnknownVertex(s))?;
            let target = *vertex_index.get(&t).ok_or(Error::UnknownVertex(t))?;
            out[source.0].push(ArrowId(i));
            into[target.0].push(ArrowId(i));
            arrows.push(ArrowClass {
                id,
                source,
                target,
                multiplicity: m,
            });
        }
        Ok(Digraph {
            name: self.name,
            vertices: self.vertices,
            arrows,
            vertex_index,
            arrow_index,
            out,
            into,
        })
    }
}

impl Digraph {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: impl Into<String>) -> Digraph {
        Digraph {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertex_ids().collect()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow(&self, e: ArrowId) -> &ArrowClass {
        &self.arrows[e.0]
    }

    pub fn arrows(&self) -> &[ArrowClass] {
        &self.arrows
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn has_vertex(&self, name: &str) -> bool {
        self.vertex_index.contains_key(name)
    }

    pub fn has_arrow(&self, name: &str) -> bool {
        self.arrow_index.contains_key(name)
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    pub fn out_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.out[v.0]
    }

    pub fn in_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.into[v.0]
    }

    pub fn source(&self, e: ArrowId) -> VertexId {
        self.arrows[e.0].source
    }

    pub fn target(&self, e: ArrowId) -> VertexId {
        self.arrows[e.0].target
    }

    pub fn out_degree(&self, v: VertexId) -> OutDegree {
        let mut total = 0u64;
        for &e in self.out_arrows(v) {
            match self.arrow(e).multiplicity {
                Multiplicity::Omega => return OutDegree::Infinite,
                Multiplicity::Finite(k) => total += k,
            }
        }
        OutDegree::Finite(total)
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_arrows(v).is_empty()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_arrows(v).is_empty()
    }

    pub fn is_infinite_emitter(&self, v: VertexId) -> bool {
        self.out_degree(v) == OutDegree::Infinite
    }

    /// 0 < out-degree < ∞.
    pub fn is_regular(&self, v: VertexId) -> bool {
        matches!(self.out_degree(v), OutDegree::Finite(k) if k > 0)
    }

    pub fn is_branch(&self, v: VertexId) -> bool {
        match self.out_degree(v) {
            OutDegree::Infinite => true,
            OutDegree::Finite(k) => k >= 2,
        }
    }

    pub fn is_row_finite(&self) -> bool {
        self.arrows.iter().all(|a| a.multiplicity != Multiplicity::Omega)
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.is_sink(v)).collect()
    }

    /// Follows unique multiplicity-one out-arrows; returns the sink reached
    /// when `v` is a line point.
    pub fn line_point_sink(&self, v: VertexId) -> Option<VertexId> {
        let mut seen = VertexSet::new();
        let mut u = v;
        loop {
            if !seen.insert(u) {
                return None;
            }
            match self.out_arrows(u) {
                [] => return Some(u),
                [e] if self.arrow(*e).multiplicity.is_one() => u = self.target(*e),
                _ => return None,
            }
        }
    }

    pub fn is_line_point(&self, v: VertexId) -> bool {
        self.line_point_sink(v).is_some()
    }

    /// Always false: a leak needs an infinite path through pairwise distinct
    /// vertices, which a finite digraph cannot carry.
    pub fn is_leak(&self, _v: VertexId) -> bool {
        false
    }

    /// `{a, b}` with vertices in declaration order.
    pub fn format_set(&self, set: &VertexSet) -> String {
        let names: Vec<&str> = set.iter().map(|&v| self.vertex_name(v)).collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn names(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|&v| self.vertex_name(v).to_string()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexReport {
    pub vertex: VertexId,
    pub sink: bool,
    pub source: bool,
    pub branch: bool,
    pub infinite_emitter: bool,
    pub regular: bool,
    pub line_point: bool,
    pub leak: bool,
}

pub fn classify_vertices(g: &Digraph) -> Vec<VertexReport> {
    g.vertex_ids()
        .map(|v| VertexReport {
            vertex: v,
            sink: g.is_sink(v),
            source: g.is_source(v),
            branch: g.is_branch(v),
            infinite_emitter: g.is_infinite_emitter(v),
            regular: g.is_regular(v),
            line_point: g.is_line_point(v),
            leak: g.is_leak(v),
        })
        .collect()
}
