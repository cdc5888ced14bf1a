use std::path::Path;

use lpa_core::digraph::{
    check_admissible_morphism, classify_vertices, enumerate_cycles, enumerate_hereditary_saturated,
    hereditary_saturated_closure,
};
use lpa_core::field::DlfVerdict;
use lpa_core::ideals::enumerate_strata;
use lpa_core::io::{parse_digraph, parse_ideal, parse_monoid_element, parse_morphism, parse_projective};
use lpa_core::ktheory::{
    acyclic_decomposition, classify_fgips, classify_simple_projectives, corner_classify, end_finite_dim,
    is_orthogonal, monoid_congruent, monoid_presentation, EndVerdict,
};
use lpa_core::quotients::{
    decide_lpa_quotient, graded_quotient, iso_certificate, quotient_dimension, radical_quotient, sever,
};
use lpa_core::{Digraph, Error, FieldSpec, IdealPresentation, Limits};
use serde_json::json;

use crate::report::{Record, Report};
use crate::{CliError, Command};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Read(path.to_path_buf(), e))
}

fn load_graph(path: &Path) -> Result<Digraph, CliError> {
    Ok(parse_digraph(&read(path)?)?)
}

fn load_ideal(g: &Digraph, path: &Path, field: Option<FieldSpec>) -> Result<IdealPresentation, CliError> {
    Ok(parse_ideal(g, &read(path)?, field)?)
}

pub fn dispatch(cmd: &Command, field: Option<FieldSpec>, limits: &Limits) -> Result<Report, CliError> {
    match cmd {
        Command::Analyze { graph } => analyze(&load_graph(graph)?, limits),
        Command::Closure { graph, set } => {
            let g = load_graph(graph)?;
            let x = g.vertex_set(set)?;
            let c = hereditary_saturated_closure(&g, &x);
            Ok(Report::Findings(vec![Record::new(
                format!("closure {}", g.format_set(&c)),
                json!({"kind": "closure", "set": g.names(&c)}),
            )]))
        }
        Command::Quotient { graph, ideal } => {
            let g = load_graph(graph)?;
            let j = load_ideal(&g, ideal, field)?;
            j.ensure_valid(&g)?;
            Ok(Report::quotient(&graded_quotient(&g, &j.pair)?))
        }
        Command::Decide { graph, ideal } => {
            let g = load_graph(graph)?;
            decide(&g, &load_ideal(&g, ideal, field)?)
        }
        Command::Sever {
            graph,
            ideal,
            force_degree_only,
        } => {
            let g = load_graph(graph)?;
            let j = load_ideal(&g, ideal, field)?;
            if !force_degree_only {
                let d = decide_lpa_quotient(&g, &j)?;
                if !d.is_lpa() {
                    return Err(Error::NotDlf(d.failures().join("; ")).into());
                }
            }
            Ok(Report::quotient(&sever(&g, &j)?))
        }
        Command::Certificate { graph, ideal } => {
            let g = load_graph(graph)?;
            let cert = iso_certificate(&g, &load_ideal(&g, ideal, field)?)?;
            Ok(Report::Findings(
                cert.lines
                    .iter()
                    .map(|l| {
                        let image: Vec<_> = l
                            .image
                            .iter()
                            .map(|t| json!({"coeff": t.coeff.to_string(), "word": t.word.to_string()}))
                            .collect();
                        Record::new(
                            l.to_string(),
                            json!({"kind": "image", "generator": l.generator.to_string(), "image": image}),
                        )
                    })
                    .collect(),
            ))
        }
        Command::Radical { graph, ideal } => {
            let g = load_graph(graph)?;
            radical(&g, &load_ideal(&g, ideal, field)?, limits)
        }
        Command::Dim { graph, ideal } => {
            let g = load_graph(graph)?;
            let j = ideal.as_deref().map(|p| load_ideal(&g, p, field)).transpose()?;
            dim(&g, j.as_ref(), limits)
        }
        Command::Monoid { graph, congruent, to } => {
            let g = load_graph(graph)?;
            monoid(&g, congruent.as_deref().zip(to.as_deref()), limits)
        }
        Command::Strata { graph, max_deg } => {
            let g = load_graph(graph)?;
            let field = field.ok_or_else(|| CliError::Usage("strata needs --field F<p>".into()))?;
            strata(&g, field, *max_deg, limits)
        }
        Command::Orth {
            graph,
            projective,
            ideal,
        } => {
            let g = load_graph(graph)?;
            let p = parse_projective(&g, &read(projective)?)?;
            let j = load_ideal(&g, ideal, field)?;
            let yes = is_orthogonal(&g, &p, &j)?;
            let text = if yes { "orthogonal" } else { "not orthogonal" };
            Ok(Report::Findings(vec![Record::new(text, json!({"kind": "orth", "orthogonal": yes}))]))
        }
        Command::Fgip { graph } => {
            let g = load_graph(graph)?;
            let classes = classify_fgips(&g, limits)?;
            Ok(Report::Findings(
                classes
                    .iter()
                    .map(|c| {
                        Record::new(
                            format!("fgip cycle {} support {}", c.cycle, g.format_set(&c.support)),
                            json!({"kind": "fgip", "cycle": c.cycle.arrows(), "support": g.names(&c.support)}),
                        )
                    })
                    .collect(),
            ))
        }
        Command::Simples { graph } => {
            let g = load_graph(graph)?;
            Ok(Report::Findings(
                classify_simple_projectives(&g)
                    .iter()
                    .map(|c| {
                        let members: Vec<&str> = c.members.iter().map(|&v| g.vertex_name(v)).collect();
                        let rep = g.vertex_name(c.representative);
                        Record::new(
                            format!("simple {rep}: {{{}}}", members.join(", ")),
                            json!({"kind": "simple", "representative": rep, "members": members}),
                        )
                    })
                    .collect(),
            ))
        }
        Command::End { graph, projective } => {
            let g = load_graph(graph)?;
            let p = parse_projective(&g, &read(projective)?)?;
            let rec = match end_finite_dim(&g, &p)? {
                EndVerdict::Finite(d) => Record::new(
                    format!("finite: {d}"),
                    json!({"kind": "end", "finite": true, "blocks": d.blocks.iter().map(|(n, c)| json!([n.to_string(), c])).collect::<Vec<_>>()}),
                ),
                EndVerdict::Infinite(w) => Record::new(
                    format!("infinite: {w}"),
                    json!({"kind": "end", "finite": false, "witness": w}),
                ),
            };
            Ok(Report::Findings(vec![rec]))
        }
        Command::CheckMorphism {
            source,
            target,
            morphism,
        } => {
            let src = load_graph(source)?;
            let dst = load_graph(target)?;
            let m = parse_morphism(&src, &dst, &read(morphism)?)?;
            let r = check_admissible_morphism(&src, &dst, &m);
            let mut out = vec![Record::new(
                if r.is_admissible() { "admissible" } else { "not admissible" },
                json!({"kind": "morphism", "admissible": r.is_admissible(), "finite_fibers": r.finite_fibers}),
            )];
            out.extend(
                r.violations
                    .iter()
                    .map(|v| Record::new(format!("violation {v}"), json!({"kind": "violation", "detail": v}))),
            );
            Ok(Report::Findings(out))
        }
        Command::Dot { graph } => Ok(Report::dot(&load_graph(graph)?)),
    }
}

fn analyze(g: &Digraph, limits: &Limits) -> Result<Report, CliError> {
    let mut out = Vec::new();
    for r in classify_vertices(g) {
        let flags: Vec<&str> = [
            (r.sink, "sink"),
            (r.source, "source"),
            (r.regular, "regular"),
            (r.branch, "branch"),
            (r.infinite_emitter, "infinite-emitter"),
            (r.line_point, "line-point"),
        ]
        .iter()
        .filter(|(on, _)| *on)
        .map(|&(_, name)| name)
        .collect();
        let corner = corner_classify(g, r.vertex)?;
        let name = g.vertex_name(r.vertex);
        out.push(Record::new(
            format!("vertex {name}: {} corner={corner}", flags.join(" ")),
            json!({"kind": "vertex", "id": name, "flags": flags, "corner": corner.to_string()}),
        ));
    }
    for c in enumerate_cycles(g, limits.max_cycles)? {
        let exit = if c.has_exit { "exit" } else { "no-exit" };
        let excl = if c.exclusive { "exclusive" } else { "shared" };
        out.push(Record::new(
            format!("cycle {}: {exit} {excl}", c.cycle),
            json!({"kind": "cycle", "arrows": c.cycle.arrows(), "has_exit": c.has_exit, "exclusive": c.exclusive}),
        ));
    }
    for h in enumerate_hereditary_saturated(g, limits.max_subset_vertices, limits.max_pairs)? {
        out.push(Record::new(
            format!("hereditary-saturated {}", g.format_set(&h)),
            json!({"kind": "hereditary_saturated", "set": g.names(&h)}),
        ));
    }
    Ok(Report::Findings(out))
}

fn decide(g: &Digraph, j: &IdealPresentation) -> Result<Report, CliError> {
    let d = decide_lpa_quotient(g, j)?;
    let head = if d.is_lpa() {
        "isLPA".to_string()
    } else {
        format!("notLPA: {}", d.failures().join("; "))
    };
    let mut out = vec![Record::new(head, json!({"kind": "verdict", "lpa": d.is_lpa()}))];
    if d.is_lpa() {
        for (c, v) in &d.verdicts {
            let DlfVerdict::Dlf { roots } = v else { unreachable!("all dlf") };
            let roots: Vec<String> = roots.iter().map(ToString::to_string).collect();
            out.push(Record::new(
                format!("cycle {c}: {v}"),
                json!({"kind": "cycle", "cycle": c, "roots": roots}),
            ));
        }
    }
    Ok(Report::Findings(out))
}

fn radical(g: &Digraph, j: &IdealPresentation, limits: &Limits) -> Result<Report, CliError> {
    let r = radical_quotient(g, j)?;
    let mut out = Vec::new();
    for ((old, new), (name, drop)) in j.cycles.iter().zip(&r.j_prime.cycles).zip(&r.drops) {
        out.push(Record::new(
            format!("cycle {name}: {} -> {} (drop {drop})", old.theta, new.theta),
            json!({"kind": "radical", "cycle": name, "theta": old.theta.coefficient_text(), "g": new.theta.coefficient_text(), "drop": drop}),
        ));
    }
    for v in &r.hypothesis_violations {
        out.push(Record::new(format!("hypothesis {v}"), json!({"kind": "hypothesis", "detail": v})));
    }
    if let (Ok(a), Ok(b)) = (
        quotient_dimension(g, Some(j), limits),
        quotient_dimension(g, Some(&r.j_prime), limits),
    ) {
        out.push(Record::new(
            format!("dimension {a} -> {b}"),
            json!({"kind": "dimension", "before": a.to_string(), "after": b.to_string()}),
        ));
    }
    Ok(Report::Findings(out))
}

fn dim(g: &Digraph, j: Option<&IdealPresentation>, limits: &Limits) -> Result<Report, CliError> {
    let infinite = |why: String| {
        Ok(Report::Findings(vec![Record::new(
            format!("infinite: {why}"),
            json!({"kind": "dimension", "finite": false, "witness": why}),
        )]))
    };
    let n = match quotient_dimension(g, j, limits) {
        Ok(n) => n,
        Err(Error::UnsupportedShape(why)) => return infinite(why),
        Err(e) => return Err(e.into()),
    };
    let decomposition = match j {
        None => Some(acyclic_decomposition(g)?),
        Some(j) if decide_lpa_quotient(g, j)?.is_lpa() => acyclic_decomposition(&sever(g, j)?.digraph).ok(),
        Some(_) => None,
    };
    let text = match &decomposition {
        Some(d) => format!("{n} = {d}"),
        None => n.to_string(),
    };
    let blocks: Option<Vec<_>> = decomposition.map(|d| d.blocks.iter().map(|(s, c)| json!([s.to_string(), c])).collect());
    Ok(Report::Findings(vec![Record::new(
        text,
        json!({"kind": "dimension", "finite": true, "dimension": n.to_string(), "blocks": blocks}),
    )]))
}

fn monoid(g: &Digraph, query: Option<(&str, &str)>, limits: &Limits) -> Result<Report, CliError> {
    let p = monoid_presentation(g)?;
    let mut out = Vec::new();
    for (v, rhs) in &p.relations {
        let lhs = g.vertex_name(*v);
        out.push(Record::new(
            format!("{lhs} = {}", rhs.display(g)),
            json!({"kind": "relation", "vertex": lhs, "targets": rhs.display(g)}),
        ));
    }
    if let Some((a, b)) = query {
        let a = parse_monoid_element(g, a)?;
        let b = parse_monoid_element(g, b)?;
        let verdict = monoid_congruent(g, &a, &b, limits.congruence_depth)?;
        out.push(Record::new(
            verdict.to_string(),
            json!({"kind": "congruence", "left": a.display(g), "right": b.display(g), "verdict": verdict.to_string()}),
        ));
    }
    Ok(Report::Findings(out))
}

fn strata(g: &Digraph, field: FieldSpec, max_deg: usize, limits: &Limits) -> Result<Report, CliError> {
    let strata = enumerate_strata(g, field, max_deg, limits)?;
    Ok(Report::Findings(
        strata
            .iter()
            .map(|s| {
                let beta: Vec<String> = s.beta.iter().map(|c| format!("({c})")).collect();
                Record::new(
                    format!(
                        "stratum H={} S={} beta=[{}] degrees={:?}: {} dlf of {}",
                        g.format_set(&s.pair.h),
                        g.format_set(&s.pair.s),
                        beta.join(", "),
                        s.degrees,
                        s.dlf_count,
                        s.parameter_count
                    ),
                    json!({
                        "kind": "stratum",
                        "H": g.names(&s.pair.h),
                        "S": g.names(&s.pair.s),
                        "beta": s.beta.iter().map(|c| c.arrows().to_vec()).collect::<Vec<_>>(),
                        "degrees": s.degrees,
                        "parameters": s.parameter_count.to_string(),
                        "dlf": s.dlf_count.to_string(),
                    }),
                )
            })
            .collect(),
    ))
}
