use std::collections::BTreeMap;

use super::{ArrowId, Digraph, VertexId};
use crate::error::{Error, Result};

/// Vertex and arrow maps between two multiplicity-one digraphs that commute
/// with source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigraphMorphism {
    pub name: String,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub arrow_map: BTreeMap<ArrowId, ArrowId>,
}

impl DigraphMorphism {
    pub fn new<S: AsRef<str>>(
        name: impl Into<String>,
        src: &Digraph,
        dst: &Digraph,
        vertices: &[(S, S)],
        arrows: &[(S, S)],
    ) -> Result<Self> {
        for (g, side) in [(src, "source"), (dst, "target")] {
            if let Some(a) = g.arrows().iter().find(|a| !a.multiplicity.is_one()) {
                return Err(Error::MalformedMorphism(format!(
                    "{side} digraph arrow `{}` has multiplicity {}",
                    a.id, a.multiplicity
                )));
            }
        }
        let mut vertex_map = BTreeMap::new();
        for (a, b) in vertices {
            let (a, b) = (src.vertex(a.as_ref())?, dst.vertex(b.as_ref())?);
            if vertex_map.insert(a, b).is_some() {
                return Err(Error::MalformedMorphism(format!(
                    "vertex `{}` mapped twice",
                    src.vertex_name(a)
                )));
            }
        }
        let mut arrow_map = BTreeMap::new();
        for (a, b) in arrows {
            let (a, b) = (src.arrow_by_name(a.as_ref())?, dst.arrow_by_name(b.as_ref())?);
            if arrow_map.insert(a, b).is_some() {
                return Err(Error::MalformedMorphism(format!("arrow `{}` mapped twice", src.arrow(a).id)));
            }
        }
        if let Some(v) = src.vertex_ids().find(|v| !vertex_map.contains_key(v)) {
            return Err(Error::MalformedMorphism(format!("vertex `{}` unmapped", src.vertex_name(v))));
        }
        if let Some(e) = src.arrow_ids().find(|e| !arrow_map.contains_key(e)) {
            return Err(Error::MalformedMorphism(format!("arrow `{}` unmapped", src.arrow(e).id)));
        }
        for (&e, &f) in &arrow_map {
            if vertex_map[&src.source(e)] != dst.source(f) || vertex_map[&src.target(e)] != dst.target(f) {
                return Err(Error::MalformedMorphism(format!(
                    "arrow `{}` does not commute with source and target",
                    src.arrow(e).id
                )));
            }
        }
        Ok(DigraphMorphism {
            name: name.into(),
            vertex_map,
            arrow_map,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    /// Always true for finite digraphs; reported for completeness.
    pub finite_fibers: bool,
    pub violations: Vec<String>,
}

impl MorphismReport {
    pub fn is_admissible(&self) -> bool {
        self.finite_fibers && self.violations.is_empty()
    }
}

pub fn check_admissible_morphism(src: &Digraph, dst: &Digraph, m: &DigraphMorphism) -> MorphismReport {
    let mut violations = Vec::new();
    for f in dst.arrow_ids() {
        let fiber: Vec<ArrowId> = m.arrow_map.iter().filter(|(_, &b)| b == f).map(|(&a, _)| a).collect();
        let tf = dst.target(f);
        let vfiber = m.vertex_map.values().filter(|&&b| b == tf).count();
        let mut images: Vec<VertexId> = fiber.iter().map(|&a| src.target(a)).collect();
        images.sort();
        images.dedup();
        if images.len() != fiber.len() || fiber.len() != vfiber {
            violations.push(format!(
                "(ii) target map is not a bijection over arrow `{}`",
                dst.arrow(f).id
            ));
        }
    }
    for v in src.vertex_ids().filter(|&v| src.is_sink(v)) {
        let w = m.vertex_map[&v];
        if !(dst.is_sink(w) || dst.is_infinite_emitter(w)) {
            violations.push(format!(
                "(iii) sink `{}` maps to `{}`, neither a sink nor an infinite emitter",
                src.vertex_name(v),
                dst.vertex_name(w)
            ));
        }
    }
    MorphismReport {
        finite_fibers: true,
        violations,
    }
}
