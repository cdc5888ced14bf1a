//! Quotient digraph constructions: Γ/(H,S), the cycle-to-loop rewrite and
//! the severed digraph Γ//J.

mod decide;
mod dimension;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::digraph::{AdmissiblePair, ArrowId, Digraph, DigraphBuilder, GeometricCycle, OutDegree, VertexSet};
use crate::error::{Error, Result};
use crate::ideals::IdealPresentation;

pub use decide::{
    decide_lpa_quotient, iso_certificate, radical_quotient, CertificateLine, Decision, Generator, ImageTerm,
    IsoCertificate, RadicalReport, Word,
};
pub(crate) use dimension::path_counts;
pub use dimension::quotient_dimension;

/// Where a vertex or arrow of a derived digraph came from. Ids always name
/// the original digraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Origin {
    Survivor(String),
    PrimedVertex(String),
    PrimedArrow(String),
    /// Sink `j` (1-based) replacing the base vertex of a severed cycle.
    Split { vertex: String, index: usize },
    /// Copy `j` of an arrow into a severed base vertex.
    Copied { arrow: String, index: usize },
    /// Loop replacing the first arrow of a no-exit cycle.
    Looped(String),
}

impl Origin {
    pub fn original(&self) -> &str {
        match self {
            Origin::Survivor(x) | Origin::PrimedVertex(x) | Origin::PrimedArrow(x) | Origin::Looped(x) => x,
            Origin::Split { vertex, .. } => vertex,
            Origin::Copied { arrow, .. } => arrow,
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Survivor(x) => write!(f, "survivor {x}"),
            Origin::PrimedVertex(x) => write!(f, "primed vertex {x}"),
            Origin::PrimedArrow(x) => write!(f, "primed arrow {x}"),
            Origin::Split { vertex, index } => write!(f, "split {vertex} {index}"),
            Origin::Copied { arrow, index } => write!(f, "copy {arrow} {index}"),
            Origin::Looped(x) => write!(f, "loop {x}"),
        }
    }
}

/// A derived digraph with the origin of each vertex and arrow, indexed like
/// the digraph's own vertex and arrow ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub digraph: Digraph,
    pub vertex_origin: Vec<Origin>,
    pub arrow_origin: Vec<Origin>,
}

impl QuotientResult {
    fn identity(g: &Digraph) -> Self {
        QuotientResult {
            digraph: g.clone(),
            vertex_origin: g.vertex_ids().map(|v| Origin::Survivor(g.vertex_name(v).into())).collect(),
            arrow_origin: g.arrows().iter().map(|a| Origin::Survivor(a.id.clone())).collect(),
        }
    }

    /// `(new id, origin)` for vertices then arrows.
    pub fn provenance(&self) -> Vec<(String, &Origin)> {
        let g = &self.digraph;
        g.vertex_ids()
            .map(|v| (g.vertex_name(v).to_string(), &self.vertex_origin[v.0]))
            .chain(g.arrows().iter().zip(&self.arrow_origin).map(|(a, o)| (a.id.clone(), o)))
            .collect()
    }
}

struct Fresh {
    taken: HashSet<String>,
}

impl Fresh {
    fn new(g: &Digraph) -> Self {
        Fresh {
            taken: g
                .vertex_ids()
                .map(|v| g.vertex_name(v).to_string())
                .chain(g.arrows().iter().map(|a| a.id.clone()))
                .collect(),
        }
    }

    /// `base`, or `base` followed by primes until unused.
    fn claim(&mut self, base: String) -> String {
        let mut name = base;
        while self.taken.contains(&name) {
            name.push('\'');
        }
        self.taken.insert(name.clone());
        name
    }
}

/// Γ/(H,S): delete H, keep arrows with target outside H, and add a primed
/// sink v′ (with primed copies of arrows into v) for each v ∈ B_H∖S.
pub fn graded_quotient(g: &Digraph, pair: &AdmissiblePair) -> Result<QuotientResult> {
    pair.check(g)?;
    if pair.is_graded_zero() {
        return Ok(QuotientResult::identity(g));
    }
    let breaking = crate::digraph::breaking_vertices(g, &pair.h)?;
    let primed: VertexSet = breaking.difference(&pair.s).copied().collect();
    let mut fresh = Fresh::new(g);
    let mut builder = DigraphBuilder::new(g.name());
    let mut vertex_origin = Vec::new();
    let mut arrow_origin = Vec::new();
    for v in g.vertex_ids().filter(|v| !pair.h.contains(v)) {
        builder = builder.vertex(g.vertex_name(v));
        vertex_origin.push(Origin::Survivor(g.vertex_name(v).into()));
    }
    let mut prime_name = BTreeMap::new();
    for &v in &primed {
        let name = fresh.claim(format!("{}'", g.vertex_name(v)));
        builder = builder.vertex(name.clone());
        prime_name.insert(v, name);
        vertex_origin.push(Origin::PrimedVertex(g.vertex_name(v).into()));
    }
    for a in g.arrows().iter().filter(|a| !pair.h.contains(&a.target)) {
        builder = builder.arrow_with(a.id.clone(), g.vertex_name(a.source), g.vertex_name(a.target), a.multiplicity);
        arrow_origin.push(Origin::Survivor(a.id.clone()));
    }
    for a in g.arrows() {
        if let Some(target) = prime_name.get(&a.target) {
            let name = fresh.claim(format!("{}'", a.id));
            builder = builder.arrow_with(name, g.vertex_name(a.source), target.clone(), a.multiplicity);
            arrow_origin.push(Origin::PrimedArrow(a.id.clone()));
        }
    }
    Ok(QuotientResult {
        digraph: builder.build()?,
        vertex_origin,
        arrow_origin,
    })
}

fn check_loopable(g: &Digraph, cycles: &[GeometricCycle]) -> Result<Vec<Vec<ArrowId>>> {
    let mut used = VertexSet::new();
    let mut resolved = Vec::new();
    for c in cycles {
        let ids = c.resolve(g)?;
        if ids.iter().any(|&e| g.out_degree(g.source(e)) != OutDegree::Finite(1)) {
            return Err(Error::CycleHasExit(c.to_string()));
        }
        for &e in &ids {
            if !used.insert(g.source(e)) {
                return Err(Error::CyclesNotDisjoint);
            }
        }
        resolved.push(ids);
    }
    Ok(resolved)
}

/// Replaces the first arrow of each no-exit cycle by a loop at its source.
pub fn cycle_to_loop(g: &Digraph, cycles: &[GeometricCycle]) -> Result<QuotientResult> {
    let resolved = check_loopable(g, cycles)?;
    let cut: BTreeSet<ArrowId> = resolved.iter().filter(|ids| ids.len() > 1).map(|ids| ids[0]).collect();
    let mut fresh = Fresh::new(g);
    let mut builder = DigraphBuilder::new(g.name()).vertices(g.vertex_ids().map(|v| g.vertex_name(v).to_string()));
    let mut arrow_origin = Vec::new();
    for (i, a) in g.arrows().iter().enumerate() {
        let (src, dst) = (g.vertex_name(a.source), g.vertex_name(a.target));
        if cut.contains(&ArrowId(i)) {
            let name = fresh.claim(format!("{}'", a.id));
            builder = builder.arrow_with(name, src, src, a.multiplicity);
            arrow_origin.push(Origin::Looped(a.id.clone()));
        } else {
            builder = builder.arrow_with(a.id.clone(), src, dst, a.multiplicity);
            arrow_origin.push(Origin::Survivor(a.id.clone()));
        }
    }
    Ok(QuotientResult {
        digraph: builder.build()?,
        vertex_origin: g.vertex_ids().map(|v| Origin::Survivor(g.vertex_name(v).into())).collect(),
        arrow_origin,
    })
}

/// Γ//J. Only the degrees of θ matter, so no dlf check happens here.
pub fn sever(g: &Digraph, j: &IdealPresentation) -> Result<QuotientResult> {
    j.ensure_valid(g)?;
    let q = graded_quotient(g, &j.pair)?;
    let cycles: Vec<GeometricCycle> = j.beta().cloned().collect();
    let looped = cycle_to_loop(&q.digraph, &cycles)?;
    let l = &looped.digraph;

    // base vertex name -> (degree, loop arrow)
    let mut split: BTreeMap<String, usize> = BTreeMap::new();
    let mut loops = BTreeSet::new();
    for (c, ic) in cycles.iter().zip(&j.cycles) {
        let base = l.vertex(c.base())?;
        let lp = *l
            .out_arrows(base)
            .first()
            .ok_or_else(|| Error::Internal(format!("cycle {} lost its loop", ic.name)))?;
        loops.insert(lp);
        split.insert(c.base().to_string(), ic.theta.degree().unwrap_or(0));
    }

    let mut fresh = Fresh::new(l);
    let mut builder = DigraphBuilder::new(g.name());
    let mut vertex_origin = Vec::new();
    let mut copies: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for v in l.vertex_ids() {
        let name = l.vertex_name(v);
        match split.get(name) {
            Some(&d) => {
                let original = q.vertex_origin[q.digraph.vertex(name)?.0].original().to_string();
                let names: Vec<String> = (1..=d).map(|k| fresh.claim(format!("{name}.{k}"))).collect();
                for (k, n) in names.iter().enumerate() {
                    builder = builder.vertex(n.clone());
                    vertex_origin.push(Origin::Split {
                        vertex: original.clone(),
                        index: k + 1,
                    });
                }
                copies.insert(name.to_string(), names);
            }
            None => {
                builder = builder.vertex(name);
                vertex_origin.push(q.vertex_origin[q.digraph.vertex(name)?.0].clone());
            }
        }
    }
    let mut arrow_origin = Vec::new();
    for (i, a) in l.arrows().iter().enumerate() {
        if loops.contains(&ArrowId(i)) {
            continue;
        }
        let src = l.vertex_name(a.source);
        let dst = l.vertex_name(a.target);
        // Arrows other than the cut ones keep their id from the graded quotient.
        let q_origin = q.arrow_origin[q.digraph.arrow_by_name(&a.id)?.0].clone();
        match copies.get(dst) {
            Some(targets) => {
                for (k, t) in targets.iter().enumerate() {
                    let name = fresh.claim(format!("{}.{}", a.id, k + 1));
                    builder = builder.arrow_with(name, src, t.clone(), a.multiplicity);
                    arrow_origin.push(Origin::Copied {
                        arrow: q_origin.original().to_string(),
                        index: k + 1,
                    });
                }
            }
            None => {
                builder = builder.arrow_with(a.id.clone(), src, dst, a.multiplicity);
                arrow_origin.push(q_origin);
            }
        }
    }
    Ok(QuotientResult {
        digraph: builder.build()?,
        vertex_origin,
        arrow_origin,
    })
}
