use std::collections::BTreeMap;
use std::fmt;

use super::{graded_quotient, sever, Origin, QuotientResult};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::field::{is_dlf, squarefree_part, DlfVerdict, FieldValue};
use crate::ideals::{IdealCycle, IdealPresentation};

/// Per-cycle dlf verdicts, plus Γ//J when every verdict is dlf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdicts: Vec<(String, DlfVerdict)>,
    pub severed: Option<QuotientResult>,
}

impl Decision {
    pub fn is_lpa(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.is_dlf())
    }

    /// `cycle C: <witness>` for every failing cycle.
    pub fn failures(&self) -> Vec<String> {
        self.verdicts
            .iter()
            .filter(|(_, v)| !v.is_dlf())
            .map(|(c, v)| format!("cycle {c}: {v}"))
            .collect()
    }
}

pub fn decide_lpa_quotient(g: &Digraph, j: &IdealPresentation) -> Result<Decision> {
    j.ensure_valid(g)?;
    let verdicts = j
        .cycles
        .iter()
        .map(|c| Ok((c.name.clone(), is_dlf(&c.theta)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut d = Decision {
        verdicts,
        severed: None,
    };
    if d.is_lpa() {
        d.severed = Some(sever(g, j)?);
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Vertex(String),
    Arrow(String),
    /// A cycle of length > 1, written by its name in the ideal.
    Cycle(String),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Vertex(x) | Generator::Arrow(x) => write!(f, "{x}"),
            Generator::Cycle(c) => write!(f, "cycle({c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    Id(String),
    /// (a₁ ⋯ a_k)* for the path a₁ ⋯ a_k, stored in path order.
    Ghost(Vec<String>),
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Id(x) => write!(f, "{x}"),
            Word::Ghost(path) => {
                let parts: Vec<String> = path.iter().rev().map(|a| format!("{a}^*")).collect();
                write!(f, "({})", parts.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageTerm {
    pub coeff: FieldValue,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateLine {
    pub generator: Generator,
    pub image: Vec<ImageTerm>,
}

impl fmt::Display for CertificateLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.image.iter().map(|t| format!("{}*{}", t.coeff, t.word)).collect();
        write!(f, "{} -> {}", self.generator, terms.join(" + "))
    }
}

/// Images of the generators of L(Γ/(H,S)) in L(Γ//J).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCertificate {
    pub lines: Vec<CertificateLine>,
}

pub fn iso_certificate(g: &Digraph, j: &IdealPresentation) -> Result<IsoCertificate> {
    let decision = decide_lpa_quotient(g, j)?;
    let severed = match decision.severed {
        Some(s) => s,
        None => return Err(Error::NotDlf(decision.failures().join("; "))),
    };
    let q = graded_quotient(g, &j.pair)?.digraph;
    let one = j.field.one();
    let unit = |w: Word| ImageTerm {
        coeff: one.clone(),
        word: w,
    };

    let s = &severed.digraph;
    let mut splits: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for v in s.vertex_ids() {
        if let Origin::Split { vertex, .. } = &severed.vertex_origin[v.0] {
            splits.entry(vertex.as_str()).or_default().push(s.vertex_name(v).to_string());
        }
    }
    let mut copies: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for (a, o) in s.arrows().iter().zip(&severed.arrow_origin) {
        if let Origin::Copied { arrow, .. } = o {
            copies.entry(arrow.as_str()).or_default().push(a.id.clone());
        }
    }

    let mut roots: BTreeMap<&str, (&IdealCycle, Vec<FieldValue>)> = BTreeMap::new();
    for ((_, v), c) in decision.verdicts.iter().zip(&j.cycles) {
        if let DlfVerdict::Dlf { roots: r } = v {
            roots.insert(c.cycle.first_arrow(), (c, r.clone()));
        }
    }
    let root_image = |c: &IdealCycle, r: &[FieldValue]| -> Vec<ImageTerm> {
        splits[c.cycle.base()]
            .iter()
            .zip(r)
            .map(|(v, x)| ImageTerm {
                coeff: x.clone(),
                word: Word::Id(v.clone()),
            })
            .collect()
    };

    let mut lines = Vec::new();
    for v in q.vertex_ids() {
        let name = q.vertex_name(v);
        let image = match splits.get(name) {
            Some(parts) => parts.iter().map(|p| unit(Word::Id(p.clone()))).collect(),
            None => vec![unit(Word::Id(name.to_string()))],
        };
        lines.push(CertificateLine {
            generator: Generator::Vertex(name.to_string()),
            image,
        });
    }
    for a in q.arrows() {
        let image = if let Some((c, r)) = roots.get(a.id.as_str()) {
            if c.cycle.is_loop() {
                root_image(c, r)
            } else {
                let rest = &c.cycle.arrows()[1..];
                let last = rest.last().expect("cycle longer than one arrow");
                copies[last.as_str()]
                    .iter()
                    .zip(r)
                    .map(|(copy, x)| {
                        let mut path: Vec<String> = rest[..rest.len() - 1].to_vec();
                        path.push(copy.clone());
                        ImageTerm {
                            coeff: x.clone(),
                            word: Word::Ghost(path),
                        }
                    })
                    .collect()
            }
        } else if let Some(cs) = copies.get(a.id.as_str()) {
            cs.iter().map(|c| unit(Word::Id(c.clone()))).collect()
        } else {
            vec![unit(Word::Id(a.id.clone()))]
        };
        lines.push(CertificateLine {
            generator: Generator::Arrow(a.id.clone()),
            image,
        });
    }
    for (c, r) in roots.values() {
        if !c.cycle.is_loop() {
            lines.push(CertificateLine {
                generator: Generator::Cycle(c.name.clone()),
                image: root_image(c, r),
            });
        }
    }
    Ok(IsoCertificate { lines })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport {
    pub j_prime: IdealPresentation,
    pub severed: QuotientResult,
    /// deg θ(C) − deg g_C per cycle.
    pub drops: Vec<(String, usize)>,
    /// Cycles whose squarefree part is not a product of distinct linear factors.
    pub hypothesis_violations: Vec<String>,
}

/// J′ with every θ(C) replaced by its squarefree part g_C.
pub fn radical_quotient(g: &Digraph, j: &IdealPresentation) -> Result<RadicalReport> {
    j.ensure_valid(g)?;
    let mut cycles = Vec::new();
    let mut drops = Vec::new();
    let mut hypothesis_violations = Vec::new();
    for c in &j.cycles {
        let gc = squarefree_part(&c.theta)?;
        let verdict = is_dlf(&gc)?;
        if !verdict.is_dlf() {
            hypothesis_violations.push(format!("cycle {}: squarefree part {gc}: {verdict}", c.name));
        }
        drops.push((
            c.name.clone(),
            c.theta.degree().unwrap_or(0) - gc.degree().unwrap_or(0),
        ));
        cycles.push(IdealCycle {
            theta: gc,
            ..c.clone()
        });
    }
    let j_prime = IdealPresentation {
        cycles,
        ..j.clone()
    };
    let severed = sever(g, &j_prime)?;
    Ok(RadicalReport {
        j_prime,
        severed,
        drops,
        hypothesis_violations,
    })
}
