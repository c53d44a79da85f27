//! Action files and deterministic JSON / text rendering of reports.
//!
//! Action file schema:
//!
//! ```json
//! {
//!   "name": "optional label",
//!   "group": [8, 9],
//!   "generators": [[[0, -1], [1, 1]], [[-1, -1], [1, 0]]],
//!   "ground_truth": [{"kernel_hnf": [[2, 0], [0, 3]], "multiplicity": 1}]
//! }
//! ```
//!
//! Matrix entries are integers or `"p/q"` strings. `ground_truth` is optional
//! and written by the fixture generators.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::abgroup::{FinAbGroup, Subgroup};
use crate::action::{validate_action, GAction, IsotypicalReport};
use crate::chars::RationalIrrep;
use crate::error::{Error, Result};
use crate::ratlinalg::{MatQ, MatZ};
use crate::roan::{RoanReport, TheoremMatching};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundTruth {
    pub kernel: Subgroup,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionFile {
    pub name: Option<String>,
    pub group: FinAbGroup,
    pub generators: Vec<MatQ>,
    pub ground_truth: Option<Vec<GroundTruth>>,
}

impl ActionFile {
    pub fn parse(text: &str) -> Result<ActionFile> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("action file must be a JSON object".into()))?;
        let name = match obj.get("name") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(Error::Parse("field \"name\" must be a string".into())),
        };
        let moduli: Vec<u64> = serde_json::from_value(
            obj.get("group")
                .cloned()
                .ok_or_else(|| Error::Parse("missing field \"group\"".into()))?,
        )
        .map_err(|e| Error::Parse(format!("field \"group\": {e}")))?;
        let group = FinAbGroup::new(moduli)?;
        let gens = obj
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| {
                Error::Parse("field \"generators\" must be an array of matrices".into())
            })?;
        let generators = gens
            .iter()
            .enumerate()
            .map(|(i, m)| {
                MatQ::from_json(m).map_err(|e| match e {
                    Error::Parse(msg) | Error::Shape(msg) => {
                        Error::Parse(format!("generator {}: {msg}", i + 1))
                    }
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ground_truth = match obj.get("ground_truth") {
            None | Some(Value::Null) => None,
            Some(Value::Array(items)) => Some(
                items
                    .iter()
                    .map(|it| parse_ground_truth(&group, it))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(_) => {
                return Err(Error::Parse(
                    "field \"ground_truth\" must be an array".into(),
                ))
            }
        };
        Ok(ActionFile {
            name,
            group,
            generators,
            ground_truth,
        })
    }

    pub fn to_action(&self) -> Result<GAction> {
        validate_action(&self.group, self.generators.clone())
    }

    /// Canonical text: fixed key order, one generator per line.
    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\n");
        if let Some(name) = &self.name {
            writeln!(out, "  \"name\": {},", Value::String(name.clone())).unwrap();
        }
        writeln!(
            out,
            "  \"group\": {},",
            compact(&json!(self.group.moduli()))
        )
        .unwrap();
        out.push_str("  \"generators\": [\n");
        for (i, m) in self.generators.iter().enumerate() {
            let sep = if i + 1 < self.generators.len() {
                ","
            } else {
                ""
            };
            writeln!(out, "    {}{sep}", compact(&m.to_json())).unwrap();
        }
        out.push_str("  ]");
        if let Some(gt) = &self.ground_truth {
            out.push_str(",\n  \"ground_truth\": [\n");
            for (i, t) in gt.iter().enumerate() {
                let sep = if i + 1 < gt.len() { "," } else { "" };
                writeln!(
                    out,
                    "    {{\"kernel_hnf\": {}, \"multiplicity\": {}}}{sep}",
                    compact(&t.kernel.hnf().to_json()),
                    t.multiplicity
                )
                .unwrap();
            }
            out.push_str("  ]");
        }
        out.push_str("\n}\n");
        out
    }
}

fn parse_ground_truth(group: &FinAbGroup, v: &Value) -> Result<GroundTruth> {
    let rows: Vec<Vec<i64>> = serde_json::from_value(v["kernel_hnf"].clone())
        .map_err(|e| Error::Parse(format!("ground_truth kernel_hnf: {e}")))?;
    let multiplicity = v["multiplicity"].as_u64().ok_or_else(|| {
        Error::Parse("ground_truth multiplicity must be a nonnegative integer".into())
    })?;
    let m = MatZ::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect(),
        group.rank(),
    )?;
    Ok(GroundTruth {
        kernel: Subgroup::from_hnf(group, m)?,
        multiplicity,
    })
}

/// Parses and validates an action file.
pub fn parse_action_file(text: &str) -> Result<GAction> {
    ActionFile::parse(text)?.to_action()
}

/// JSON with `", "` separators on a single line.
fn compact(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(compact).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// Pretty JSON that keeps short arrays of scalars (matrix rows) on one line.
pub fn to_pretty_json(v: &Value) -> String {
    let mut out = String::new();
    pretty(v, 0, &mut out);
    out.push('\n');
    out
}

fn pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if !items.is_empty() => {
            let scalars = items.iter().all(|x| !x.is_object() && !x.is_array());
            let flat = scalars
                || items.iter().all(|x| {
                    x.as_array()
                        .is_some_and(|r| r.iter().all(|y| !y.is_object() && !y.is_array()))
                });
            let one_line = compact(v);
            if scalars || (flat && one_line.len() + indent * 2 <= 100) {
                out.push_str(&one_line);
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                pretty(x, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                pretty(x, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&compact(other)),
    }
}

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(c);
            s.extend(std::iter::repeat_n(' ', w - c.chars().count()));
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn hnf_compact(k: &Subgroup) -> String {
    compact(&k.hnf().to_json())
}

pub fn report_json(r: &IsotypicalReport) -> Value {
    json!({
        "group": r.group.moduli(),
        "dim": r.dim,
        "faithful": r.faithful,
        "action_kernel_hnf": r.action_kernel.hnf().to_json(),
        "components": r.components.iter().map(|c| json!({
            "kernel_hnf": c.irrep.kernel.hnf().to_json(),
            "order": c.irrep.order,
            "degree": c.irrep.degree,
            "representative": c.irrep.representative.exps().0,
            "dim": c.dim(),
            "multiplicity": c.multiplicity,
            "zero": c.dim() == 0,
            "clearing_denominator": c.clearing_denominator.to_string(),
            "overgroups": c.overgroups.iter().map(|o| json!({
                "hnf": o.subgroup.hnf().to_json(),
                "index": o.index,
                "relative_index": o.relative_index,
                "complement_dim": o.complement_dim,
            })).collect::<Vec<_>>(),
            "basis": c.subspace.basis().to_json(),
        })).collect::<Vec<_>>(),
        "warnings": r.warnings,
    })
}

pub fn report_text(r: &IsotypicalReport) -> String {
    let mut out = format!(
        "group {}  (order {})\ndimension {}\nfaithful {}\n\n",
        r.group,
        r.group.order(),
        r.dim,
        if r.faithful { "yes" } else { "no" }
    );
    let rows: Vec<Vec<String>> = r
        .components
        .iter()
        .map(|c| {
            let pk = if c.overgroups.is_empty() {
                "-".to_string()
            } else {
                c.overgroups
                    .iter()
                    .map(|o| format!("{}:{}", o.index, o.complement_dim))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            vec![
                hnf_compact(&c.irrep.kernel),
                c.irrep.order.to_string(),
                c.irrep.degree.to_string(),
                c.dim().to_string(),
                c.multiplicity.to_string(),
                pk,
            ]
        })
        .collect();
    out.push_str(&table(
        &["kernel", "order", "degree", "dim", "mult", "P_K [G:H]:dim"],
        &rows,
    ));
    push_warnings(&mut out, &r.warnings);
    out
}

fn push_warnings(out: &mut String, warnings: &[String]) {
    if !warnings.is_empty() {
        out.push_str("\nwarnings:\n");
        for w in warnings {
            writeln!(out, "  - {w}").unwrap();
        }
    }
}

pub fn roan_json(r: &RoanReport) -> Value {
    json!({
        "orders": r.orders.iter().map(|(d, m)| json!({"order": d, "multiplicity": m})).collect::<Vec<_>>(),
        "filtration_dims": r.filtration.iter().map(|y| y.dim()).collect::<Vec<_>>(),
        "components": r.components.iter().map(|(d, b)| json!({
            "order": d,
            "dim": b.dim(),
            "basis": b.basis().to_json(),
        })).collect::<Vec<_>>(),
    })
}

pub fn roan_text(r: &RoanReport) -> String {
    let dims: Vec<String> = r.filtration.iter().map(|y| y.dim().to_string()).collect();
    let mut out = format!("filtration dims  {}\n\n", dims.join(" > "));
    let rows: Vec<Vec<String>> = r
        .components
        .iter()
        .zip(&r.orders)
        .map(|((d, b), (_, mult))| vec![d.to_string(), mult.to_string(), b.dim().to_string()])
        .collect();
    out.push_str(&table(&["order", "Phi mult", "dim B"], &rows));
    out
}

pub fn matching_text(m: &TheoremMatching) -> String {
    let mut out = format!("generator {}  (order {})\n\n", m.generator, m.order);
    let rows: Vec<Vec<String>> = m
        .matches
        .iter()
        .map(|x| {
            vec![
                x.order.to_string(),
                hnf_compact(&x.kernel),
                x.dim.to_string(),
            ]
        })
        .collect();
    out.push_str(&table(&["order", "kernel", "dim"], &rows));
    out.push_str("\nzero components:");
    if m.zero_components.is_empty() {
        out.push_str(" none\n");
    } else {
        out.push('\n');
        for k in &m.zero_components {
            writeln!(out, "  {} (order {})", hnf_compact(k), k.index()).unwrap();
        }
    }
    out
}

pub fn irreps_json(group: &FinAbGroup, irreps: &[RationalIrrep]) -> Value {
    json!({
        "group": group.moduli(),
        "irreps": irreps.iter().map(|w| json!({
            "kernel_hnf": w.kernel.hnf().to_json(),
            "order": w.order,
            "degree": w.degree,
            "representative": w.representative.exps().0,
        })).collect::<Vec<_>>(),
    })
}

pub fn irreps_text(group: &FinAbGroup, irreps: &[RationalIrrep]) -> String {
    let mut out = format!("group {}  (order {})\n\n", group, group.order());
    let rows: Vec<Vec<String>> = irreps
        .iter()
        .map(|w| {
            vec![
                hnf_compact(&w.kernel),
                w.order.to_string(),
                w.degree.to_string(),
                w.representative.exps().to_string(),
            ]
        })
        .collect();
    out.push_str(&table(&["kernel", "order", "degree", "character"], &rows));
    out
}

/// Per kernel: index, invariants of `G/K` and of `K`, and the prime-index
/// overgroups.
pub fn kernels_json(group: &FinAbGroup, kernels: &[Subgroup]) -> Result<Value> {
    let items = kernels
        .iter()
        .map(|k| {
            let q = k.quotient();
            Ok(json!({
                "hnf": k.hnf().to_json(),
                "index": q.index,
                "invariants": q.invariants,
                "cyclic": q.cyclic,
                "kernel_invariants": k.invariants(),
                "overgroups": k.minimal_overgroups()?.iter()
                    .map(|h| json!({"hnf": h.hnf().to_json(), "index": h.index()}))
                    .collect::<Vec<_>>(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "group": group.moduli(),
        "order": group.order(),
        "invariants": group.invariants(),
        "kernels": items,
    }))
}

pub fn kernels_text(group: &FinAbGroup, kernels: &[Subgroup]) -> Result<String> {
    let inv: Vec<String> = group.invariants().iter().map(u64::to_string).collect();
    let mut out = format!(
        "group {}  (order {}, invariants {})\n",
        group,
        group.order(),
        inv.join(",")
    );
    if kernels.is_empty() {
        return Ok(out);
    }
    out.push('\n');
    let rows = kernels
        .iter()
        .map(|k| {
            let q = k.quotient();
            let over: Vec<String> = k
                .minimal_overgroups()?
                .iter()
                .map(|h| format!("{}@{}", hnf_compact(h), h.index()))
                .collect();
            Ok(vec![
                hnf_compact(k),
                q.index.to_string(),
                q.invariants
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                k.invariants()
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                if over.is_empty() {
                    "-".into()
                } else {
                    over.join(" ")
                },
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    out.push_str(&table(
        &["kernel", "index", "G/K invariants", "K invariants", "P_K"],
        &rows,
    ));
    Ok(out)
}
