//! Graph monoid, the Galois correspondence between admissible pairs and
//! closed submonoids, and finitely generated projectives.

mod projectives;

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::digraph::{
    breaking_vertices, hereditary_saturated_closure, AdmissiblePair, ArrowId, Digraph, Multiplicity, VertexId,
    VertexSet,
};
use crate::error::{Error, Result};
use crate::ideals::IdealPresentation;

pub use projectives::{
    acyclic_decomposition, classify_fgips, classify_simple_projectives, corner_classify, end_finite_dim, CornerType,
    EndVerdict, FgipClass, MatrixDecomposition, SimpleClass,
};

const MAX_CONGRUENCE_STATES: usize = 200_000;

/// One arrow instance: class plus index below its multiplicity.
pub type Instance = (ArrowId, u64);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorItem {
    Vertex(VertexId),
    /// (v − Σ_{(e,i)∈Z} e_i e_i*) L
    Corner(VertexId, BTreeSet<Instance>),
}

/// Finite multiset of generator items presenting a projective module.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProjectivePresentation {
    pub items: Vec<GeneratorItem>,
}

impl ProjectivePresentation {
    pub fn vertices(vs: impl IntoIterator<Item = VertexId>) -> Self {
        ProjectivePresentation {
            items: vs.into_iter().map(GeneratorItem::Vertex).collect(),
        }
    }

    pub fn validate(&self, g: &Digraph) -> Result<()> {
        for item in &self.items {
            match item {
                GeneratorItem::Vertex(v) if v.0 >= g.vertex_count() => {
                    return Err(Error::MalformedGenerators(format!("vertex #{} out of range", v.0)));
                }
                GeneratorItem::Vertex(_) => {}
                GeneratorItem::Corner(v, z) => check_corner(g, *v, z)?,
            }
        }
        Ok(())
    }
}

fn check_corner(g: &Digraph, v: VertexId, z: &BTreeSet<Instance>) -> Result<()> {
    if v.0 >= g.vertex_count() {
        return Err(Error::MalformedGenerators(format!("vertex #{} out of range", v.0)));
    }
    let name = g.vertex_name(v);
    if z.is_empty() {
        return Err(Error::MalformedGenerators(format!("corner at {name} has empty Z")));
    }
    let mut finite_total = 0u64;
    let mut omega = false;
    for &e in g.out_arrows(v) {
        match g.arrow(e).multiplicity {
            Multiplicity::Omega => omega = true,
            Multiplicity::Finite(k) => finite_total += k,
        }
    }
    for &(e, i) in z {
        if e.0 >= g.arrow_count() || g.source(e) != v {
            return Err(Error::MalformedGenerators(format!("corner at {name} uses a foreign arrow")));
        }
        if let Multiplicity::Finite(k) = g.arrow(e).multiplicity {
            if i >= k {
                return Err(Error::MalformedGenerators(format!(
                    "instance {}#{i} exceeds multiplicity {k}",
                    g.arrow(e).id
                )));
            }
        }
    }
    if !omega && finite_total <= z.len() as u64 {
        return Err(Error::MalformedGenerators(format!(
            "corner at {name} removes every arrow instance"
        )));
    }
    Ok(())
}

/// Finitely supported vertex counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MonoidElement {
    counts: BTreeMap<VertexId, u64>,
}

impl MonoidElement {
    pub fn new(counts: impl IntoIterator<Item = (VertexId, u64)>) -> Self {
        let mut m = MonoidElement::default();
        for (v, c) in counts {
            m.add(v, c);
        }
        m
    }

    pub fn counts(&self) -> &BTreeMap<VertexId, u64> {
        &self.counts
    }

    pub fn add(&mut self, v: VertexId, c: u64) {
        if c > 0 {
            *self.counts.entry(v).or_insert(0) += c;
        }
    }

    fn contains(&self, other: &MonoidElement) -> bool {
        other
            .counts
            .iter()
            .all(|(v, c)| self.counts.get(v).is_some_and(|have| have >= c))
    }

    fn minus(&self, other: &MonoidElement) -> MonoidElement {
        let mut out = self.clone();
        for (v, c) in &other.counts {
            let have = out.counts.get_mut(v).expect("contained");
            *have -= c;
            if *have == 0 {
                out.counts.remove(v);
            }
        }
        out
    }

    fn plus(&self, other: &MonoidElement) -> MonoidElement {
        let mut out = self.clone();
        for (v, c) in &other.counts {
            out.add(*v, *c);
        }
        out
    }

    pub fn display(&self, g: &Digraph) -> String {
        if self.counts.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(v, c)| match c {
                1 => g.vertex_name(*v).to_string(),
                _ => format!("{c}{}", g.vertex_name(*v)),
            })
            .collect();
        parts.join(" + ")
    }
}

/// Generators are the vertices; one relation v = Σ targets per regular vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidPresentation {
    pub generators: Vec<VertexId>,
    pub relations: Vec<(VertexId, MonoidElement)>,
}

pub fn monoid_presentation(g: &Digraph) -> Result<MonoidPresentation> {
    if !g.is_row_finite() {
        return Err(Error::NotRowFinite);
    }
    let relations = g
        .vertex_ids()
        .filter(|&v| g.is_regular(v))
        .map(|v| {
            let rhs = MonoidElement::new(g.out_arrows(v).iter().map(|&e| {
                let Multiplicity::Finite(k) = g.arrow(e).multiplicity else {
                    unreachable!("row-finite")
                };
                (g.target(e), k)
            }));
            (v, rhs)
        })
        .collect();
    Ok(MonoidPresentation {
        generators: g.vertex_ids().collect(),
        relations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Congruence {
    /// Found with this many rewrites in total.
    Congruent(usize),
    NotWithinDepth,
}

fn rewrites(pres: &MonoidPresentation, m: &MonoidElement) -> Vec<MonoidElement> {
    let mut out = Vec::new();
    for (v, rhs) in &pres.relations {
        let single = MonoidElement::new([(*v, 1)]);
        if m.contains(&single) {
            out.push(m.minus(&single).plus(rhs));
        }
        if m.contains(rhs) {
            out.push(m.minus(rhs).plus(&single));
        }
    }
    out
}

/// Bidirectional breadth-first search over single relation rewrites.
pub fn monoid_congruent(g: &Digraph, a: &MonoidElement, b: &MonoidElement, depth: usize) -> Result<Congruence> {
    let pres = monoid_presentation(g)?;
    if a == b {
        return Ok(Congruence::Congruent(0));
    }
    let mut seen: [BTreeMap<MonoidElement, usize>; 2] = [BTreeMap::new(), BTreeMap::new()];
    let mut frontier: [Vec<MonoidElement>; 2] = [vec![a.clone()], vec![b.clone()]];
    seen[0].insert(a.clone(), 0);
    seen[1].insert(b.clone(), 0);
    let mut level = [0usize, 0usize];
    while level[0] + level[1] < depth {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            break;
        }
        level[side] += 1;
        let mut next = Vec::new();
        for m in std::mem::take(&mut frontier[side]) {
            for r in rewrites(&pres, &m) {
                if let Some(d) = seen[1 - side].get(&r) {
                    return Ok(Congruence::Congruent(level[side] + d));
                }
                if !seen[side].contains_key(&r) {
                    seen[side].insert(r.clone(), level[side]);
                    next.push(r);
                }
            }
        }
        if seen[0].len() + seen[1].len() > MAX_CONGRUENCE_STATES {
            return Err(Error::limit("congruence search states", MAX_CONGRUENCE_STATES as u64));
        }
        frontier[side] = next;
    }
    Ok(Congruence::NotWithinDepth)
}

/// A closed submonoid, described by its (H, S) data and the generators
/// [vL] for v ∈ H and [u^H L] for u ∈ S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmonoidDescriptor {
    pub h: VertexSet,
    pub s: VertexSet,
    pub generators: Vec<GeneratorItem>,
}

/// Instances from `u` whose target lies outside `h`.
fn outside_instances(g: &Digraph, u: VertexId, h: &VertexSet) -> Option<BTreeSet<Instance>> {
    let mut z = BTreeSet::new();
    for &e in g.out_arrows(u) {
        if h.contains(&g.target(e)) {
            continue;
        }
        match g.arrow(e).multiplicity {
            Multiplicity::Omega => return None,
            Multiplicity::Finite(k) => z.extend((0..k).map(|i| (e, i))),
        }
    }
    Some(z)
}

pub fn galois_phi(g: &Digraph, pair: &AdmissiblePair) -> Result<SubmonoidDescriptor> {
    pair.check(g)?;
    let mut generators: Vec<GeneratorItem> = pair.h.iter().map(|&v| GeneratorItem::Vertex(v)).collect();
    for &u in &pair.s {
        let z = outside_instances(g, u, &pair.h)
            .ok_or_else(|| Error::Internal(format!("breaking vertex {} has ω arrows out of H", g.vertex_name(u))))?;
        generators.push(GeneratorItem::Corner(u, z));
    }
    Ok(SubmonoidDescriptor {
        h: pair.h.clone(),
        s: pair.s.clone(),
        generators,
    })
}

/// Recovers (H, S) from generator items.
pub fn galois_psi(g: &Digraph, items: &[GeneratorItem]) -> Result<AdmissiblePair> {
    ProjectivePresentation { items: items.to_vec() }.validate(g)?;
    let seeds: VertexSet = items
        .iter()
        .filter_map(|i| match i {
            GeneratorItem::Vertex(v) => Some(*v),
            GeneratorItem::Corner(..) => None,
        })
        .collect();
    let corners: Vec<(VertexId, &BTreeSet<Instance>)> = items
        .iter()
        .filter_map(|i| match i {
            GeneratorItem::Corner(v, z) => Some((*v, z)),
            GeneratorItem::Vertex(_) => None,
        })
        .collect();
    let mut h = hereditary_saturated_closure(g, &seeds);
    loop {
        let mut grow = h.clone();
        for &(u, z) in &corners {
            for &e in g.out_arrows(u) {
                let forced = match g.arrow(e).multiplicity {
                    Multiplicity::Omega => true,
                    Multiplicity::Finite(k) => (0..k).any(|i| !z.contains(&(e, i))),
                };
                if forced {
                    grow.insert(g.target(e));
                }
            }
            if g.out_arrows(u).iter().all(|&e| grow.contains(&g.target(e))) {
                grow.insert(u);
            }
        }
        let next = hereditary_saturated_closure(g, &grow);
        if next == h {
            break;
        }
        h = next;
    }
    let b = breaking_vertices(g, &h)?;
    let s = corners.iter().map(|&(u, _)| u).filter(|u| !h.contains(u) && b.contains(u)).collect();
    AdmissiblePair::new(g, h, s).map_err(|e| Error::Internal(format!("galois_psi produced a bad pair: {e}")))
}

/// P ⊥ J on generator data.
pub fn is_orthogonal(g: &Digraph, p: &ProjectivePresentation, j: &IdealPresentation) -> Result<bool> {
    p.validate(g)?;
    j.ensure_valid(g)?;
    let (h, s) = (&j.pair.h, &j.pair.s);
    Ok(p.items.iter().all(|item| match item {
        GeneratorItem::Vertex(v) => h.contains(v),
        GeneratorItem::Corner(v, z) => {
            h.contains(v)
                || (s.contains(v)
                    && outside_instances(g, *v, h).is_some_and(|out| out.is_subset(z)))
        }
    }))
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Congruence::Congruent(d) => write!(f, "congruent (depth {d})"),
            Congruence::NotWithinDepth => write!(f, "notWithinDepth"),
        }
    }
}

/// Reachable monoid elements from `start` within `depth` rewrites; a bounded
/// view used by tests.
pub fn congruence_ball(g: &Digraph, start: &MonoidElement, depth: usize) -> Result<HashSet<MonoidElement>> {
    let pres = monoid_presentation(g)?;
    let mut seen: HashSet<MonoidElement> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    while let Some((m, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for r in rewrites(&pres, &m) {
            if seen.insert(r.clone()) {
                if seen.len() > MAX_CONGRUENCE_STATES {
                    return Err(Error::limit("congruence search states", MAX_CONGRUENCE_STATES as u64));
                }
                queue.push_back((r, d + 1));
            }
        }
    }
    Ok(seen)
}
