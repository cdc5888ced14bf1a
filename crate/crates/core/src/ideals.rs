//! Ideals as quadruples (H, S, β, θ): validation, the admissible-pair
//! lattice, and stratum counting over prime fields.

use std::collections::BTreeMap;

use crate::digraph::{
    breaking_vertices, enumerate_cycles, enumerate_hereditary_saturated, is_hereditary, is_saturated, AdmissiblePair,
    Digraph, GeometricCycle, OutDegree, VertexId, VertexSet,
};
use crate::error::{Error, Result};
use crate::field::{is_dlf, FieldSpec, Polynomial};
use crate::limits::Limits;
use crate::quotients::graded_quotient;

const MAX_STRATA: usize = 1_000_000;

/// A β-cycle with its canonical polynomial θ(C), constant term 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCycle {
    pub name: String,
    pub cycle: GeometricCycle,
    pub theta: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    pub name: String,
    pub field: FieldSpec,
    pub pair: AdmissiblePair,
    pub cycles: Vec<IdealCycle>,
}

impl IdealPresentation {
    pub fn graded(name: impl Into<String>, field: FieldSpec, pair: AdmissiblePair) -> Self {
        IdealPresentation {
            name: name.into(),
            field,
            pair,
            cycles: Vec::new(),
        }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::graded("zero", field, AdmissiblePair::zero())
    }

    pub fn is_graded(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn beta(&self) -> impl Iterator<Item = &GeometricCycle> {
        self.cycles.iter().map(|c| &c.cycle)
    }

    /// Raises [`Error::Validation`] listing every violation.
    pub fn ensure_valid(&self, g: &Digraph) -> Result<()> {
        let v = validate_ideal(g, self)?;
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }
}

/// Lists violations; only dangling ids raise.
pub fn validate_ideal(g: &Digraph, j: &IdealPresentation) -> Result<Vec<String>> {
    let mut out = Vec::new();
    if let Some(v) = j.pair.h.iter().chain(&j.pair.s).find(|v| v.0 >= g.vertex_count()) {
        return Err(Error::UnknownVertex(format!("#{}", v.0)));
    }
    let hereditary = is_hereditary(g, &j.pair.h);
    if !hereditary {
        out.push(format!("H = {} is not hereditary", g.format_set(&j.pair.h)));
    }
    if !is_saturated(g, &j.pair.h) {
        out.push(format!("H = {} is not saturated", g.format_set(&j.pair.h)));
    }
    let mut admissible = out.is_empty();
    if hereditary {
        let b = breaking_vertices(g, &j.pair.h)?;
        for &v in j.pair.s.difference(&b) {
            out.push(format!("{} is not a breaking vertex of H", g.vertex_name(v)));
            admissible = false;
        }
    }
    let quotient = if admissible {
        Some(graded_quotient(g, &j.pair)?.digraph)
    } else {
        None
    };
    for (i, c) in j.cycles.iter().enumerate() {
        for a in c.cycle.arrows() {
            g.arrow_by_name(a)?;
        }
        if j.cycles[..i].iter().any(|d| d.cycle == c.cycle) {
            out.push(format!("cycle {} repeats an earlier cycle", c.name));
        }
        if j.cycles[..i].iter().any(|d| d.name == c.name) {
            out.push(format!("cycle name {} used twice", c.name));
        }
        if let Some(q) = &quotient {
            match c.cycle.vertices(q) {
                Err(_) => out.push(format!("cycle {} does not survive in the quotient", c.name)),
                Ok(vs) => {
                    if vs.iter().any(|&v| q.out_degree(v) != OutDegree::Finite(1)) {
                        out.push(format!("cycle {} has an exit in the quotient", c.name));
                    }
                }
            }
        }
        if c.theta.spec() != j.field {
            out.push(format!("poly {} lives over {}, ideal over {}", c.name, c.theta.spec(), j.field));
        }
        if c.theta.degree().unwrap_or(0) == 0 {
            out.push(format!("poly {} must have positive degree", c.name));
        }
        if !c.theta.constant_term().is_one() {
            out.push(format!("poly {} must have constant term 1", c.name));
        }
    }
    Ok(out)
}

/// Largest graded ideal inside `j`: drops β and θ.
pub fn graded_part(j: &IdealPresentation) -> IdealPresentation {
    IdealPresentation {
        cycles: Vec::new(),
        ..j.clone()
    }
}

/// `a ≼ b`: H_a ⊆ H_b and H_a ∪ S_a ⊆ H_b ∪ S_b.
pub fn pair_order(g: &Digraph, a: &AdmissiblePair, b: &AdmissiblePair) -> Result<bool> {
    a.check(g)?;
    b.check(g)?;
    Ok(pair_le(a, b))
}

pub(crate) fn pair_le(a: &AdmissiblePair, b: &AdmissiblePair) -> bool {
    let ua: VertexSet = a.h.union(&a.s).copied().collect();
    let ub: VertexSet = b.h.union(&b.s).copied().collect();
    a.h.is_subset(&b.h) && ua.is_subset(&ub)
}

/// Every admissible pair: each hereditary saturated H with each S ⊆ B_H.
pub fn admissible_pairs(g: &Digraph, limits: &Limits) -> Result<Vec<AdmissiblePair>> {
    let mut pairs = Vec::new();
    for h in enumerate_hereditary_saturated(g, limits.max_subset_vertices, limits.max_pairs)? {
        let b: Vec<VertexId> = breaking_vertices(g, &h)?.into_iter().collect();
        if b.len() >= 32 {
            return Err(Error::limit("breaking vertex count", 31));
        }
        let mut subsets: Vec<VertexSet> = (0u64..1 << b.len())
            .map(|m| (0..b.len()).filter(|i| m >> i & 1 == 1).map(|i| b[i]).collect())
            .collect();
        subsets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.iter().cmp(y.iter())));
        for s in subsets {
            pairs.push(AdmissiblePair { h: h.clone(), s });
            if pairs.len() > limits.max_pairs {
                return Err(Error::limit("admissible pair count", limits.max_pairs as u64));
            }
        }
    }
    Ok(pairs)
}

/// The admissible pairs with meet and join tables (indices into `pairs`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairLattice {
    pub pairs: Vec<AdmissiblePair>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
}

impl PairLattice {
    pub fn index_of(&self, p: &AdmissiblePair) -> Option<usize> {
        self.pairs.iter().position(|q| q == p)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        pair_le(&self.pairs[a], &self.pairs[b])
    }
}

pub fn pair_lattice(g: &Digraph, limits: &Limits) -> Result<PairLattice> {
    let pairs = admissible_pairs(g, limits)?;
    let n = pairs.len();
    let le: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| pair_le(&pairs[a], &pairs[b])).collect())
        .collect();
    let bound = |a: usize, b: usize, upper: bool| -> Result<usize> {
        let cands: Vec<usize> = (0..n)
            .filter(|&c| if upper { le[a][c] && le[b][c] } else { le[c][a] && le[c][b] })
            .collect();
        cands
            .iter()
            .copied()
            .find(|&c| cands.iter().all(|&d| if upper { le[c][d] } else { le[d][c] }))
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no {} for {} and {}",
                    if upper { "join" } else { "meet" },
                    pairs[a].display(g),
                    pairs[b].display(g)
                ))
            })
    };
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            meet[a][b] = bound(a, b, false)?;
            join[a][b] = bound(a, b, true)?;
        }
    }
    Ok(PairLattice { pairs, meet, join })
}

/// (pair, β, d) with exhaustive parameter and dlf counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub pair: AdmissiblePair,
    pub beta: Vec<GeometricCycle>,
    pub degrees: Vec<usize>,
    pub parameter_count: u128,
    pub dlf_count: u128,
}

/// Counts, for each exact degree d ≤ `max_deg`, the polynomials
/// 1 + a₁x + … + a_d x^d with a_d ≠ 0 and how many of them are dlf.
pub fn degree_counts(field: FieldSpec, max_deg: usize, limits: &Limits) -> Result<Vec<(u128, u128)>> {
    let p = field.check_searchable()?;
    let points = (p as u128).checked_pow(max_deg as u32).unwrap_or(u128::MAX);
    if points > limits.max_param_points as u128 {
        return Err(Error::limit("parameter points p^d", limits.max_param_points));
    }
    let mut counts = vec![(0u128, 0u128); max_deg + 1];
    for (d, slot) in counts.iter_mut().enumerate().skip(1) {
        let mut digits = vec![0u64; d];
        digits[d - 1] = 1;
        loop {
            let mut coeffs = vec![field.one()];
            coeffs.extend(digits.iter().map(|&a| field.from_i64(a as i64)));
            let f = Polynomial::from_raw(field, coeffs);
            slot.0 += 1;
            if is_dlf(&f)?.is_dlf() {
                slot.1 += 1;
            }
            // Odometer over a₁…a_{d−1} ∈ 𝔽p, a_d ∈ 𝔽p∖{0}.
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = if i == d - 1 { 1 } else { 0 };
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    Ok(counts)
}

pub fn enumerate_strata(g: &Digraph, field: FieldSpec, max_deg: usize, limits: &Limits) -> Result<Vec<Stratum>> {
    if max_deg == 0 {
        return Err(Error::Validation(vec!["maximum degree must be at least 1".into()]));
    }
    let counts = degree_counts(field, max_deg, limits)?;
    let mut out = Vec::new();
    for pair in admissible_pairs(g, limits)? {
        let q = graded_quotient(g, &pair)?.digraph;
        let no_exit: Vec<GeometricCycle> = enumerate_cycles(&q, limits.max_cycles)?
            .into_iter()
            .filter(|c| !c.has_exit)
            .map(|c| c.cycle)
            .collect();
        if no_exit.len() >= 32 {
            return Err(Error::limit("no-exit cycle count", 31));
        }
        for mask in 0u64..1 << no_exit.len() {
            let beta: Vec<GeometricCycle> = (0..no_exit.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| no_exit[i].clone())
                .collect();
            let mut degrees = vec![1usize; beta.len()];
            loop {
                let (params, dlf) = degrees
                    .iter()
                    .fold((1u128, 1u128), |(a, b), &d| (a * counts[d].0, b * counts[d].1));
                out.push(Stratum {
                    pair: pair.clone(),
                    beta: beta.clone(),
                    degrees: degrees.clone(),
                    parameter_count: params,
                    dlf_count: dlf,
                });
                if out.len() > MAX_STRATA {
                    return Err(Error::limit("stratum count", MAX_STRATA as u64));
                }
                let Some(i) = degrees.iter().position(|&d| d < max_deg) else {
                    break;
                };
                degrees[i] += 1;
                for d in &mut degrees[..i] {
                    *d = 1;
                }
            }
        }
    }
    Ok(out)
}

/// Groups strata by their pair, for reporting.
pub fn strata_by_pair(strata: &[Stratum]) -> BTreeMap<AdmissiblePair, Vec<&Stratum>> {
    let mut map: BTreeMap<AdmissiblePair, Vec<&Stratum>> = BTreeMap::new();
    for s in strata {
        map.entry(s.pair.clone()).or_default().push(s);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{DigraphBuilder, Multiplicity};

    fn sq2() -> Digraph {
        DigraphBuilder::new("sq2")
            .vertices(["u", "w1", "w2"])
            .arrow("c", "u", "u")
            .arrow("a1", "u", "w1")
            .arrow("a2", "u", "w2")
            .build()
            .unwrap()
    }

    fn sq5() -> Digraph {
        DigraphBuilder::new("sq5")
            .vertices(["v1", "v2", "v3"])
            .arrow("C1", "v1", "v1")
            .arrow("a12", "v1", "v2")
            .arrow("C2", "v2", "v2")
            .arrow("a23", "v2", "v3")
            .arrow("C3", "v3", "v3")
            .build()
            .unwrap()
    }

    fn looped() -> Digraph {
        DigraphBuilder::new("loop").vertex("v").arrow("e", "v", "v").build().unwrap()
    }

    fn ideal(g: &Digraph, field: FieldSpec, h: &[&str], cycles: &[(&str, &str, &[i64])]) -> IdealPresentation {
        IdealPresentation {
            name: "j".into(),
            field,
            pair: AdmissiblePair {
                h: g.vertex_set(h).unwrap(),
                s: VertexSet::new(),
            },
            cycles: cycles
                .iter()
                .map(|(n, a, c)| IdealCycle {
                    name: n.to_string(),
                    cycle: GeometricCycle::from_arrows(g, &[*a]).unwrap(),
                    theta: Polynomial::from_i64s(field, c),
                })
                .collect(),
        }
    }

    #[test]
    fn validation_examples() {
        let g = sq5();
        let f3 = FieldSpec::Prime(3);
        assert!(validate_ideal(&g, &ideal(&g, f3, &["v3"], &[("C2", "C2", &[1, 0, -1])])).unwrap().is_empty());
        let bad = validate_ideal(&g, &ideal(&g, f3, &["v3"], &[("C1", "C1", &[1, 0, -1])])).unwrap();
        assert_eq!(bad, vec!["cycle C1 has an exit in the quotient"]);
        assert!(validate_ideal(&g, &IdealPresentation::zero(f3)).unwrap().is_empty());
        let bad = validate_ideal(&g, &ideal(&g, f3, &["v3"], &[("C2", "C2", &[2, 1])])).unwrap();
        assert_eq!(bad, vec!["poly C2 must have constant term 1"]);
        let bad = validate_ideal(&g, &ideal(&g, f3, &["v2"], &[])).unwrap();
        assert_eq!(bad, vec!["H = {v2} is not hereditary"]);
    }

    #[test]
    fn graded_part_drops_cycles() {
        let g = looped();
        let j = ideal(&g, FieldSpec::Rationals, &[], &[("C", "e", &[1, 0, 1])]);
        let gp = graded_part(&j);
        assert!(gp.is_graded() && gp.pair.is_graded_zero());
        assert_eq!(graded_part(&gp), gp);
    }

    #[test]
    fn order_examples() {
        let g = sq2();
        let p = |h: &[&str]| AdmissiblePair::new(&g, g.vertex_set(h).unwrap(), VertexSet::new()).unwrap();
        assert!(pair_order(&g, &AdmissiblePair::zero(), &p(&["w1"])).unwrap());
        assert!(pair_order(&g, &p(&["w2"]), &p(&["w1", "w2"])).unwrap());
        assert!(!pair_order(&g, &p(&["w1"]), &p(&["w2"])).unwrap());
    }

    #[test]
    fn lattices() {
        let lim = Limits::default();
        let l = pair_lattice(&sq2(), &lim).unwrap();
        assert_eq!(l.pairs.len(), 5);
        let point = DigraphBuilder::new("pt").vertex("v").build().unwrap();
        assert_eq!(pair_lattice(&point, &lim).unwrap().pairs.len(), 2);
        let b = DigraphBuilder::new("b")
            .vertices(["v", "h", "w"])
            .arrow_with("o", "v", "h", Multiplicity::Omega)
            .arrow("e", "v", "w")
            .build()
            .unwrap();
        let l = pair_lattice(&b, &lim).unwrap();
        let h = b.vertex_set(&["h"]).unwrap();
        let lo = l.index_of(&AdmissiblePair { h: h.clone(), s: VertexSet::new() }).unwrap();
        let hi = l.index_of(&AdmissiblePair { h, s: b.vertex_set(&["v"]).unwrap() }).unwrap();
        assert!(l.le(lo, hi) && !l.le(hi, lo));
        assert_eq!(l.join[lo][hi], hi);
        assert_eq!(l.meet[lo][hi], lo);
    }

    #[test]
    fn single_loop_strata() {
        let lim = Limits::default();
        let c3 = degree_counts(FieldSpec::Prime(3), 2, &lim).unwrap();
        assert_eq!(c3[1], (2, 2));
        assert_eq!(c3[2], (6, 1));
        let c2 = degree_counts(FieldSpec::Prime(2), 2, &lim).unwrap();
        assert_eq!(c2[2], (2, 0));
        let strata = enumerate_strata(&looped(), FieldSpec::Prime(3), 2, &lim).unwrap();
        // zero pair: β = ∅, {e} with d = 1, 2; pair ({v}, ∅): β = ∅
        assert_eq!(strata.len(), 4);
        assert_eq!((strata[0].parameter_count, strata[0].dlf_count), (1, 1));
    }

    #[test]
    fn strata_limits() {
        let lim = Limits {
            max_param_points: 8,
            ..Limits::default()
        };
        assert!(matches!(degree_counts(FieldSpec::Prime(3), 2, &lim), Err(Error::ResourceLimit { .. })));
        assert!(degree_counts(FieldSpec::Rationals, 2, &Limits::default()).is_err());
    }
}
