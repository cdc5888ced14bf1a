//! Line-oriented text formats for digraphs, ideals, morphisms and projective
//! presentations, plus DOT export.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::digraph::{AdmissiblePair, Digraph, DigraphBuilder, DigraphMorphism, GeometricCycle, Multiplicity, VertexSet};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Polynomial};
use crate::ideals::{IdealCycle, IdealPresentation};
use crate::ktheory::{GeneratorItem, MonoidElement, ProjectivePresentation};
use crate::quotients::QuotientResult;

/// Drops a `#` comment. `#` inside a token (as in `e1#0`) is kept.
fn strip_comment(line: &str) -> &str {
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'#' && (i == 0 || bytes[i - 1].is_ascii_whitespace()) {
            return &line[..i];
        }
    }
    line
}

/// Non-blank lines with their 1-based numbers and comments removed.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = strip_comment(l).split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut it = lines(text);
    let name = match it.next() {
        Some((_, t)) if t.len() == 2 && t[0] == "digraph" => t[1].to_string(),
        Some((n, _)) => return Err(Error::parse(n, "expected `digraph <name>`")),
        None => return Err(Error::parse(1, "empty digraph file")),
    };
    let mut b = DigraphBuilder::new(name);
    let mut vertices = HashSet::new();
    let mut arrows = HashSet::new();
    for (n, t) in it {
        match t.as_slice() {
            ["vertex", id] => {
                if !vertices.insert(id.to_string()) {
                    return Err(Error::parse(n, format!("duplicate vertex `{id}`")));
                }
                b = b.vertex(*id);
            }
            ["arrow", id, src, dst, rest @ ..] if rest.len() <= 1 => {
                if !arrows.insert(id.to_string()) {
                    return Err(Error::parse(n, format!("duplicate arrow `{id}`")));
                }
                for end in [src, dst] {
                    if !vertices.contains(*end) {
                        return Err(Error::parse(n, format!("unknown vertex `{end}`")));
                    }
                }
                let m = match rest {
                    [] => Multiplicity::Finite(1),
                    ["omega"] => Multiplicity::Omega,
                    [k] => match k.parse::<u64>() {
                        Ok(k) if k >= 1 => Multiplicity::Finite(k),
                        _ => return Err(Error::parse(n, format!("bad multiplicity `{k}`"))),
                    },
                    _ => unreachable!(),
                };
                b = b.arrow_with(*id, *src, *dst, m);
            }
            _ => return Err(Error::parse(n, format!("unrecognized line `{}`", t.join(" ")))),
        }
    }
    b.build()
}

pub fn write_digraph(g: &Digraph) -> String {
    let mut out = format!("digraph {}\n", g.name());
    for v in g.vertex_ids() {
        let _ = writeln!(out, "vertex {}", g.vertex_name(v));
    }
    for a in g.arrows() {
        let _ = write!(out, "arrow {} {} {}", a.id, g.vertex_name(a.source), g.vertex_name(a.target));
        match a.multiplicity {
            Multiplicity::Finite(1) => {}
            Multiplicity::Finite(k) => {
                let _ = write!(out, " {k}");
            }
            Multiplicity::Omega => out.push_str(" omega"),
        }
        out.push('\n');
    }
    out
}

/// The digraph followed by `# provenance: <new-id> <- <origin>` lines.
pub fn write_quotient(q: &QuotientResult) -> String {
    let mut out = write_digraph(&q.digraph);
    for (id, origin) in q.provenance() {
        let _ = writeln!(out, "# provenance: {id} <- {origin}");
    }
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(g: &Digraph) -> String {
    let mut out = format!("digraph {} {{\n", dot_id(g.name()));
    for v in g.vertex_ids() {
        let _ = writeln!(out, "  {};", dot_id(g.vertex_name(v)));
    }
    for a in g.arrows() {
        let label = match a.multiplicity {
            Multiplicity::Finite(1) => a.id.clone(),
            Multiplicity::Finite(k) => format!("{} ({k})", a.id),
            Multiplicity::Omega => "ω".to_string(),
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(g.vertex_name(a.source)),
            dot_id(g.vertex_name(a.target)),
            dot_id(&label)
        );
    }
    out.push_str("}\n");
    out
}

fn lookup_vertices(g: &Digraph, n: usize, names: &[&str]) -> Result<VertexSet> {
    names
        .iter()
        .map(|x| g.vertex(x).map_err(|_| Error::parse(n, format!("unknown vertex `{x}`"))))
        .collect()
}

fn parse_coeffs(field: FieldSpec, strict: bool, n: usize, toks: &[&str]) -> Result<Polynomial> {
    if strict {
        return Polynomial::parse(field, &toks.join(" ")).map_err(|m| Error::parse(n, m));
    }
    let coeffs = toks
        .iter()
        .map(|t| {
            let q = FieldSpec::Rationals
                .parse_value(t)
                .map_err(|m| Error::parse(n, m))?
                .as_rational()
                .cloned()
                .expect("rational");
            field.reduce(&q).map_err(|_| Error::parse(n, format!("`{t}` has no image in {field}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::new(field, coeffs)
}

/// Parses an ideal file against `g`. With `field_override`, coefficients are
/// read as rationals and mapped into the override field.
pub fn parse_ideal(g: &Digraph, text: &str, field_override: Option<FieldSpec>) -> Result<IdealPresentation> {
    let mut name = None;
    let mut file_field = None;
    let mut h = VertexSet::new();
    let mut s = VertexSet::new();
    let mut cycles: Vec<(usize, String, GeometricCycle)> = Vec::new();
    let mut polys: BTreeMap<String, (usize, Vec<String>)> = BTreeMap::new();
    for (n, t) in lines(text) {
        match t.as_slice() {
            ["ideal", id] if name.is_none() => name = Some(id.to_string()),
            ["field", f] if file_field.is_none() => {
                file_field = Some(f.parse::<FieldSpec>().map_err(|e| match e {
                    Error::Parse { message, .. } => Error::parse(n, message),
                    other => Error::parse(n, other.to_string()),
                })?);
            }
            ["H", rest @ ..] => h.extend(lookup_vertices(g, n, rest)?),
            ["S", rest @ ..] => s.extend(lookup_vertices(g, n, rest)?),
            ["cycle", cid, arrows @ ..] => {
                let cid = cid
                    .strip_suffix(':')
                    .ok_or_else(|| Error::parse(n, "expected `cycle <id>: <arrows>`"))?;
                if cycles.iter().any(|(_, c, _)| c == cid) {
                    return Err(Error::parse(n, format!("duplicate cycle `{cid}`")));
                }
                let c = GeometricCycle::from_arrows(g, arrows).map_err(|e| Error::parse(n, e.to_string()))?;
                cycles.push((n, cid.to_string(), c));
            }
            ["poly", cid, coeffs @ ..] => {
                let cid = cid
                    .strip_suffix(':')
                    .ok_or_else(|| Error::parse(n, "expected `poly <id>: <coefficients>`"))?;
                if polys.contains_key(cid) {
                    return Err(Error::parse(n, format!("duplicate poly `{cid}`")));
                }
                polys.insert(cid.to_string(), (n, coeffs.iter().map(|c| c.to_string()).collect()));
            }
            _ => return Err(Error::parse(n, format!("unrecognized line `{}`", t.join(" ")))),
        }
    }
    let name = name.ok_or_else(|| Error::parse(1, "missing `ideal <name>` line"))?;
    let file_field = file_field.ok_or_else(|| Error::parse(1, "missing `field` line"))?;
    let field = field_override.unwrap_or(file_field);
    let strict = field_override.is_none();
    let mut out = Vec::new();
    for (n, cid, cycle) in cycles {
        let (pn, coeffs) = polys
            .remove(&cid)
            .ok_or_else(|| Error::parse(n, format!("cycle `{cid}` has no poly line")))?;
        let toks: Vec<&str> = coeffs.iter().map(String::as_str).collect();
        let theta = parse_coeffs(field, strict, pn, &toks)?;
        out.push(IdealCycle { name: cid, cycle, theta });
    }
    if let Some((cid, (n, _))) = polys.into_iter().next() {
        return Err(Error::parse(n, format!("poly for undeclared cycle `{cid}`")));
    }
    Ok(IdealPresentation {
        name,
        field,
        pair: AdmissiblePair { h, s },
        cycles: out,
    })
}

pub fn write_ideal(g: &Digraph, j: &IdealPresentation) -> String {
    let mut out = format!("ideal {}\nfield {}\n", j.name, j.field);
    for (tag, set) in [("H", &j.pair.h), ("S", &j.pair.s)] {
        if !set.is_empty() {
            let _ = writeln!(out, "{tag} {}", g.names(set).join(" "));
        }
    }
    for c in &j.cycles {
        let _ = writeln!(out, "cycle {}: {}", c.name, c.cycle);
    }
    for c in &j.cycles {
        let _ = writeln!(out, "poly {}: {}", c.name, c.theta.coefficient_text());
    }
    out
}

pub fn parse_morphism(src: &Digraph, dst: &Digraph, text: &str) -> Result<DigraphMorphism> {
    let mut name = None;
    let mut vertices: Vec<(String, String)> = Vec::new();
    let mut arrows: Vec<(String, String)> = Vec::new();
    for (n, t) in lines(text) {
        match t.as_slice() {
            ["morphism", id] if name.is_none() => name = Some(id.to_string()),
            ["graphs", a, b] => {
                if *a != src.name() || *b != dst.name() {
                    return Err(Error::parse(
                        n,
                        format!("morphism is between {a} and {b}, not {} and {}", src.name(), dst.name()),
                    ));
                }
            }
            ["v", a, "->", b] => vertices.push((a.to_string(), b.to_string())),
            ["e", a, "->", b] => arrows.push((a.to_string(), b.to_string())),
            _ => return Err(Error::parse(n, format!("unrecognized line `{}`", t.join(" ")))),
        }
    }
    let name = name.ok_or_else(|| Error::parse(1, "missing `morphism <name>` line"))?;
    DigraphMorphism::new(name, src, dst, &vertices, &arrows)
}

pub fn parse_projective(g: &Digraph, text: &str) -> Result<ProjectivePresentation> {
    let mut items = Vec::new();
    for (n, t) in lines(text) {
        match t.as_slice() {
            ["P:", rest @ ..] => {
                for x in rest {
                    let v = g.vertex(x).map_err(|_| Error::parse(n, format!("unknown vertex `{x}`")))?;
                    items.push(GeneratorItem::Vertex(v));
                }
            }
            ["corner", v, ..] => {
                let v = g.vertex(v).map_err(|_| Error::parse(n, format!("unknown vertex `{v}`")))?;
                let line = strip_comment(text.lines().nth(n - 1).expect("line exists"));
                let body = line
                    .split_once('{')
                    .and_then(|(_, r)| r.strip_suffix('}').or_else(|| r.trim_end().strip_suffix('}')))
                    .ok_or_else(|| Error::parse(n, "expected `corner <v> {e#i, ...}`"))?;
                let mut z = BTreeSet::new();
                for inst in body.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                    let (e, i) = inst
                        .split_once('#')
                        .ok_or_else(|| Error::parse(n, format!("bad instance `{inst}`")))?;
                    let e = g.arrow_by_name(e).map_err(|_| Error::parse(n, format!("unknown arrow `{e}`")))?;
                    let i: u64 = i.parse().map_err(|_| Error::parse(n, format!("bad instance index `{i}`")))?;
                    z.insert((e, i));
                }
                items.push(GeneratorItem::Corner(v, z));
            }
            _ => return Err(Error::parse(n, format!("unrecognized line `{}`", t.join(" ")))),
        }
    }
    let p = ProjectivePresentation { items };
    p.validate(g)?;
    Ok(p)
}

pub fn write_projective(g: &Digraph, p: &ProjectivePresentation) -> String {
    let mut out = String::new();
    let vs: Vec<&str> = p
        .items
        .iter()
        .filter_map(|i| match i {
            GeneratorItem::Vertex(v) => Some(g.vertex_name(*v)),
            GeneratorItem::Corner(..) => None,
        })
        .collect();
    if !vs.is_empty() {
        let _ = writeln!(out, "P: {}", vs.join(" "));
    }
    for item in &p.items {
        if let GeneratorItem::Corner(v, z) = item {
            let inst: Vec<String> = z.iter().map(|(e, i)| format!("{}#{i}", g.arrow(*e).id)).collect();
            let _ = writeln!(out, "corner {} {{{}}}", g.vertex_name(*v), inst.join(", "));
        }
    }
    out
}

/// Whitespace-separated vertex names; repetition adds multiplicity and `0`
/// is the empty element.
pub fn parse_monoid_element(g: &Digraph, text: &str) -> Result<MonoidElement> {
    let mut m = MonoidElement::default();
    for x in text.split(|c: char| c.is_whitespace() || c == '+').filter(|x| !x.is_empty() && *x != "0") {
        let v = g.vertex(x).map_err(|_| Error::parse(1, format!("unknown vertex `{x}`")))?;
        m.add(v, 1);
    }
    Ok(m)
}
