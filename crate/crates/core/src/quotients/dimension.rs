use std::collections::BTreeMap;

use super::graded_quotient;
use crate::digraph::{enumerate_cycles, Digraph, Multiplicity, VertexId, VertexSet};
use crate::error::{Error, Result};
use crate::ideals::IdealPresentation;
use crate::limits::Limits;

fn overflow() -> Error {
    Error::limit("dimension exceeds 128-bit range", u64::MAX)
}

/// Paths ending at each vertex (trivial path included), counted with
/// multiplicity, over the vertices not in `skip`. Those must induce an
/// acyclic subgraph whose arrows come only from outside `skip`.
pub(crate) fn path_counts(g: &Digraph, skip: &VertexSet) -> Result<Vec<u128>> {
    let n = g.vertex_count();
    let mut indeg = vec![0usize; n];
    for a in g.arrows() {
        if !skip.contains(&a.target) && !skip.contains(&a.source) {
            indeg[a.target.0] += 1;
        }
    }
    let mut ready: Vec<VertexId> = g
        .vertex_ids()
        .filter(|v| !skip.contains(v) && indeg[v.0] == 0)
        .collect();
    let mut count = vec![1u128; n];
    let mut done = 0;
    while let Some(u) = ready.pop() {
        done += 1;
        for &e in g.out_arrows(u) {
            let a = g.arrow(e);
            if skip.contains(&a.target) {
                continue;
            }
            let Multiplicity::Finite(k) = a.multiplicity else {
                return Err(Error::NotRowFinite);
            };
            let add = count[u.0].checked_mul(k as u128).ok_or_else(overflow)?;
            count[a.target.0] = count[a.target.0].checked_add(add).ok_or_else(overflow)?;
            indeg[a.target.0] -= 1;
            if indeg[a.target.0] == 0 {
                ready.push(a.target);
            }
        }
    }
    if done + skip.len() < n {
        return Err(Error::NotAcyclic);
    }
    Ok(count)
}

/// dim L(Γ)/J = Σ_sinks n(v)² + Σ_{C∈β} deg θ(C)·|P_C|², computed on Γ/(H,S)
/// (or on Γ itself when no ideal is given).
pub fn quotient_dimension(g: &Digraph, j: Option<&IdealPresentation>, limits: &Limits) -> Result<u128> {
    let work = match j {
        Some(j) => {
            j.ensure_valid(g)?;
            graded_quotient(g, &j.pair)?.digraph
        }
        None => g.clone(),
    };
    if !work.is_row_finite() {
        return Err(Error::UnsupportedShape("digraph has an infinite emitter".into()));
    }
    let cycles = enumerate_cycles(&work, limits.max_cycles)?;
    let mut degree: BTreeMap<_, usize> = BTreeMap::new();
    if let Some(j) = j {
        for c in &j.cycles {
            degree.insert(c.cycle.clone(), c.theta.degree().unwrap_or(0));
        }
    }
    let mut on_cycle = VertexSet::new();
    let mut blocks = Vec::new();
    for info in &cycles {
        let Some(&d) = degree.get(&info.cycle) else {
            return Err(Error::UnsupportedShape(format!(
                "cycle {} is not severed",
                info.cycle
            )));
        };
        let vs = info.cycle.vertices(&work)?;
        on_cycle.extend(vs.iter().copied());
        blocks.push((d, vs));
    }
    if blocks.len() != degree.len() {
        return Err(Error::UnsupportedShape("ideal names a cycle missing from the quotient".into()));
    }
    let n = path_counts(&work, &on_cycle)?;
    let mut total: u128 = 0;
    for v in work.sinks() {
        total = total.checked_add(n[v.0].checked_mul(n[v.0]).ok_or_else(overflow)?).ok_or_else(overflow)?;
    }
    for (d, vs) in blocks {
        let mut pc: u128 = 0;
        for &u in &vs {
            pc = pc.checked_add(1).ok_or_else(overflow)?;
            for &e in work.in_arrows(u) {
                let a = work.arrow(e);
                if on_cycle.contains(&a.source) {
                    continue;
                }
                let Multiplicity::Finite(k) = a.multiplicity else {
                    return Err(Error::NotRowFinite);
                };
                let add = n[a.source.0].checked_mul(k as u128).ok_or_else(overflow)?;
                pc = pc.checked_add(add).ok_or_else(overflow)?;
            }
        }
        let block = pc
            .checked_mul(pc)
            .and_then(|x| x.checked_mul(d as u128))
            .ok_or_else(overflow)?;
        total = total.checked_add(block).ok_or_else(overflow)?;
    }
    Ok(total)
}
