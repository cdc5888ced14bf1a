use std::fmt::Write as _;

use lpa_core::io::{to_dot, write_quotient};
use lpa_core::{Digraph, QuotientResult};
use serde_json::{json, Value};

use crate::{CliError, Format};

/// One finding: its text line and its json-lines record.
pub struct Record {
    pub text: String,
    pub json: Value,
}

impl Record {
    pub fn new(text: impl Into<String>, json: Value) -> Self {
        Record {
            text: text.into(),
            json,
        }
    }
}

pub enum Report {
    Findings(Vec<Record>),
    /// A digraph, with provenance when it was derived from another.
    Graph { text: String, dot: String, records: Vec<Record> },
}

impl Report {
    /// DOT even under the default text format.
    pub fn dot(g: &Digraph) -> Self {
        let dot = to_dot(g);
        Report::Graph {
            text: dot.clone(),
            dot,
            records: graph_records(g, None),
        }
    }

    pub fn quotient(q: &QuotientResult) -> Self {
        Report::Graph {
            text: write_quotient(q),
            dot: to_dot(&q.digraph),
            records: graph_records(&q.digraph, Some(q)),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        let mut out = String::new();
        match (self, format) {
            (Report::Findings(rs) | Report::Graph { records: rs, .. }, Format::JsonLines) => {
                for r in rs {
                    let _ = writeln!(out, "{}", r.json);
                }
            }
            (Report::Findings(rs), Format::Text) => {
                for r in rs {
                    let _ = writeln!(out, "{}", r.text);
                }
            }
            (Report::Findings(_), Format::Dot) => {
                return Err(CliError::Usage("dot output needs a command that produces a digraph".into()));
            }
            (Report::Graph { text, .. }, Format::Text) => out.push_str(text),
            (Report::Graph { dot, .. }, Format::Dot) => out.push_str(dot),
        }
        Ok(out)
    }
}

fn graph_records(g: &Digraph, q: Option<&QuotientResult>) -> Vec<Record> {
    let mut out = vec![Record::new(
        format!("digraph {}", g.name()),
        json!({"kind": "digraph", "name": g.name()}),
    )];
    for v in g.vertex_ids() {
        let name = g.vertex_name(v);
        let mut rec = json!({"kind": "vertex", "id": name});
        if let Some(q) = q {
            rec["origin"] = json!(q.vertex_origin[v.0].to_string());
        }
        out.push(Record::new(format!("vertex {name}"), rec));
    }
    for (i, a) in g.arrows().iter().enumerate() {
        let mut rec = json!({
            "kind": "arrow",
            "id": a.id,
            "source": g.vertex_name(a.source),
            "target": g.vertex_name(a.target),
            "multiplicity": a.multiplicity.to_string(),
        });
        if let Some(q) = q {
            rec["origin"] = json!(q.arrow_origin[i].to_string());
        }
        out.push(Record::new(format!("arrow {}", a.id), rec));
    }
    out
}
