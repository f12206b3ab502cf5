//! Batch commands behind the `pathset` binary. Each command loads a network
//! document and returns the complete text to print, so nothing reaches
//! standard output unless the whole command succeeded.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::attribute::{evaluate_with_limit, AttributeError, AttributeValue};
use crate::document::Network;
use crate::graph::{PathSet, PropertyDomain};
use crate::polymatroid::{
    check_axioms, tabulate_with_limits, Axiom, PolymatroidError, SetFunctionReport, SetFunctionTable, Verdict, Witness,
    DEFAULT_SUBSET_LIMIT,
};
use crate::transform::{TransformError, TransformKind, DEFAULT_CUT_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub format: Format,
    pub verbose: bool,
    pub cut_limit: usize,
    pub subset_limit: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            format: Format::Table,
            verbose: false,
            cut_limit: DEFAULT_CUT_LIMIT,
            subset_limit: DEFAULT_SUBSET_LIMIT,
        }
    }
}

/// A failed command. The exit code says which stage failed.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Resolution(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Resolution(_) => 3,
            CliError::Limit(_) => 4,
        }
    }
}

impl From<AttributeError> for CliError {
    fn from(e: AttributeError) -> Self {
        match e {
            AttributeError::Transform(TransformError::LimitExceeded { .. }) => CliError::Limit(e.to_string()),
            other => CliError::Resolution(other.to_string()),
        }
    }
}

impl From<PolymatroidError> for CliError {
    fn from(e: PolymatroidError) -> Self {
        match e {
            PolymatroidError::Attribute(a) => a.into(),
            PolymatroidError::LimitExceeded { .. } => CliError::Limit(e.to_string()),
            PolymatroidError::Shape { .. } => CliError::Resolution(e.to_string()),
        }
    }
}

/// Formats a number for text output: rounded to 10 decimal places with
/// trailing zeros dropped, so `0.00051188150827` prints as `0.0005118815`
/// and `340.0` as `340`.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let mut s = format!("{x:.10}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn load(file: &Path) -> Result<Network, CliError> {
    Network::load(file).map_err(|e| CliError::Parse(e.to_string()))
}

fn path_set<'a>(net: &'a Network, name: &str) -> Result<&'a PathSet, CliError> {
    net.path_set(name)
        .ok_or_else(|| CliError::Resolution(format!("unknown path set `{name}`")))
}

fn reject_csv(options: &Options, command: &str) -> Result<(), CliError> {
    if options.format == Format::Csv {
        return Err(CliError::Parse(format!(
            "csv output is only available for matrix, not {command}"
        )));
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// `compute FILE PATH_SET ATTRIBUTE`
pub fn compute(file: &Path, path_set_name: &str, attribute: &str, options: &Options) -> Result<String, CliError> {
    reject_csv(options, "compute")?;
    let net = load(file)?;
    let p = path_set(&net, path_set_name)?;
    let spec = net
        .attribute(attribute)
        .ok_or_else(|| CliError::Resolution(format!("unknown attribute `{attribute}`")))?;
    let value = evaluate_with_limit(&spec, p, &net.graph, options.cut_limit)?;
    Ok(render_value(&value, options))
}

fn render_value(v: &AttributeValue, options: &Options) -> String {
    match options.format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("name".into(), json!(v.name));
            obj.insert("value".into(), json!(v.value));
            obj.insert("unit".into(), json!(v.unit));
            obj.insert("transform".into(), json!(v.transform));
            if options.verbose {
                let columns: Vec<Value> = v
                    .columns
                    .iter()
                    .map(|(label, x)| json!({ "label": label, "value": x }))
                    .collect();
                obj.insert("columns".into(), Value::Array(columns));
            }
            to_json(&obj)
        }
        _ => {
            let mut out = format!("{} = {}", v.name, format_number(v.value));
            if !v.unit.is_empty() {
                out.push(' ');
                out.push_str(&v.unit);
            }
            out.push('\n');
            if options.verbose {
                let _ = writeln!(out, "transform: {}", v.transform);
                if v.domain == PropertyDomain::Probability {
                    let _ = writeln!(out, "complement: {}", format_number(1.0 - v.value));
                }
                let width = v.columns.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
                for (label, x) in &v.columns {
                    let _ = writeln!(out, "  {label:<width$}  {}", format_number(*x));
                }
            }
            out
        }
    }
}

/// `matrix FILE PATH_SET TRANSFORM [--r R] [--property NAME]`. Without a
/// property the plain 0/1 incidence matrix is emitted.
pub fn matrix(
    file: &Path,
    path_set_name: &str,
    transform: &str,
    r: f64,
    property: Option<&str>,
    options: &Options,
) -> Result<String, CliError> {
    let kind: TransformKind = transform
        .parse()
        .map_err(|e: TransformError| CliError::Parse(e.to_string()))?;
    let net = load(file)?;
    let p = path_set(&net, path_set_name)?;
    let h = kind
        .apply(&net.graph, p, options.cut_limit)
        .map_err(|e| CliError::from(AttributeError::from(e)))?;
    let m = match property {
        None => h.incidence_matrix(),
        Some(name) => {
            let w = net
                .graph
                .property(name)
                .ok_or_else(|| CliError::Resolution(format!("unknown property `{name}`")))?;
            h.r_incidence_matrix(r, w)
                .map_err(|e| CliError::Resolution(e.to_string()))?
        }
    };
    Ok(match options.format {
        Format::Table => m.to_string(),
        Format::Json => to_json(&m),
        Format::Csv => m.to_csv(),
    })
}

/// `cuts FILE PATH_SET`
pub fn cuts(file: &Path, path_set_name: &str, options: &Options) -> Result<String, CliError> {
    reject_csv(options, "cuts")?;
    let net = load(file)?;
    let p = path_set(&net, path_set_name)?;
    let h = TransformKind::Cuts
        .apply(&net.graph, p, options.cut_limit)
        .map_err(|e| CliError::from(AttributeError::from(e)))?;
    Ok(match options.format {
        Format::Json => {
            let cuts: Vec<Value> = h
                .hyperedges()
                .iter()
                .map(|c| json!({ "label": c.label, "edges": h.member_labels(c) }))
                .collect();
            to_json(&json!({ "path_set": path_set_name, "cuts": cuts }))
        }
        _ => {
            let width = h.hyperedges().iter().map(|c| c.label.len()).max().unwrap_or(0);
            let mut out = String::new();
            for c in h.hyperedges() {
                let _ = writeln!(out, "{:<width$}  {}", c.label, h.member_labels(c).join(" "));
            }
            out
        }
    })
}

/// `polymatroid FILE PATH_SET ATTRIBUTE`
pub fn polymatroid(file: &Path, path_set_name: &str, attribute: &str, options: &Options) -> Result<String, CliError> {
    reject_csv(options, "polymatroid")?;
    let net = load(file)?;
    let p = path_set(&net, path_set_name)?;
    let spec = net
        .attribute(attribute)
        .ok_or_else(|| CliError::Resolution(format!("unknown attribute `{attribute}`")))?;
    let table = tabulate_with_limits(&spec, p, &net.graph, options.subset_limit, options.cut_limit)?;
    let report = check_axioms(&table);
    Ok(match options.format {
        Format::Json => to_json(&report_json(attribute, &table, &report, options.verbose)),
        _ => report_text(attribute, &table, &report, options.verbose),
    })
}

fn subset_text(t: &SetFunctionTable, s: u32) -> String {
    format!("{{{}}}", t.labels(s).join(","))
}

fn witness_text(axiom: Axiom, t: &SetFunctionTable, w: &Witness) -> String {
    let n = |x: f64| format_number(x);
    match *w {
        Witness::Empty { value } => format!("rho({{}}) = {}", n(value)),
        Witness::Chain { x, y, rho_x, rho_y } => format!(
            "X={} ⊆ Y={}: {} > {}",
            subset_text(t, x),
            subset_text(t, y),
            n(rho_x),
            n(rho_y)
        ),
        Witness::Pair {
            x,
            y,
            rho_x,
            rho_y,
            rho_meet,
            rho_join,
        } => {
            let sign = if axiom == Axiom::Supermodular { '>' } else { '<' };
            format!(
                "X={} Y={}: {} + {} {sign} {} + {}",
                subset_text(t, x),
                subset_text(t, y),
                n(rho_x),
                n(rho_y),
                n(rho_join),
                n(rho_meet)
            )
        }
        Witness::Single { x, rho_x } if axiom == Axiom::R5 => {
            format!("X={}: {} > {}", subset_text(t, x), n(rho_x), x.count_ones())
        }
        Witness::Single { x, rho_x } => format!("X={}: {} is not an integer", subset_text(t, x), n(rho_x)),
    }
}

fn report_text(attribute: &str, t: &SetFunctionTable, report: &SetFunctionReport, verbose: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "attribute: {attribute}");
    let _ = writeln!(out, "ground set: {}", t.ground().join(" "));
    for axiom in Axiom::ALL {
        match report.verdict(axiom) {
            Verdict::Holds => {
                let _ = writeln!(out, "{:<12}  holds", axiom.as_str());
            }
            Verdict::Violated { witness, count } => {
                let _ = writeln!(
                    out,
                    "{:<12}  violated ({count})  {}",
                    axiom.as_str(),
                    witness_text(axiom, t, witness)
                );
            }
        }
    }
    let _ = writeln!(out, "classification: {}", report.classification_label());
    if verbose {
        for s in 0..t.len() as u32 {
            let _ = writeln!(out, "  {}  {}", subset_text(t, s), format_number(t.value(s)));
        }
    }
    out
}

fn report_json(attribute: &str, t: &SetFunctionTable, report: &SetFunctionReport, verbose: bool) -> Value {
    let labels = |s: u32| json!(t.labels(s));
    let axioms: Vec<Value> = Axiom::ALL
        .iter()
        .map(|&axiom| match report.verdict(axiom) {
            Verdict::Holds => json!({ "axiom": axiom.as_str(), "holds": true }),
            Verdict::Violated { witness, count } => {
                let witness = match *witness {
                    Witness::Empty { value } => json!({ "x": [], "values": { "rho_x": value } }),
                    Witness::Chain { x, y, rho_x, rho_y } => json!({
                        "x": labels(x), "y": labels(y),
                        "values": { "rho_x": rho_x, "rho_y": rho_y }
                    }),
                    Witness::Pair {
                        x,
                        y,
                        rho_x,
                        rho_y,
                        rho_meet,
                        rho_join,
                    } => json!({
                        "x": labels(x), "y": labels(y),
                        "values": {
                            "rho_x": rho_x, "rho_y": rho_y,
                            "rho_intersection": rho_meet, "rho_union": rho_join
                        }
                    }),
                    Witness::Single { x, rho_x } => json!({ "x": labels(x), "values": { "rho_x": rho_x } }),
                };
                json!({ "axiom": axiom.as_str(), "holds": false, "violations": count, "witness": witness })
            }
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("attribute".into(), json!(attribute));
    obj.insert("ground_set".into(), json!(t.ground()));
    obj.insert("axioms".into(), Value::Array(axioms));
    obj.insert("classification".into(), json!(report.classification()));
    obj.insert("modular".into(), json!(report.is_modular()));
    if verbose {
        let values: Vec<Value> = (0..t.len() as u32)
            .map(|s| json!({ "subset": labels(s), "value": t.value(s) }))
            .collect();
        obj.insert("values".into(), Value::Array(values));
    }
    Value::Object(obj)
}

/// `validate FILE`: loads the document and summarizes it.
pub fn validate(file: &Path, options: &Options) -> Result<String, CliError> {
    reject_csv(options, "validate")?;
    let net = load(file)?;
    let g = &net.graph;
    let path_sets: Vec<Value> = net
        .path_sets
        .iter()
        .map(|(name, p)| {
            json!({
                "name": name,
                "paths": p.len(),
                "source": p.source(),
                "destination": p.destination(),
                "union_edges": p.union_edges().len(),
            })
        })
        .collect();
    let properties: Vec<Value> = g
        .properties()
        .map(|w| json!({ "name": w.name(), "unit": w.unit(), "domain": w.domain() }))
        .collect();
    Ok(match options.format {
        Format::Json => to_json(&json!({
            "vertices": g.vertices().len(),
            "edges": g.edge_count(),
            "properties": properties,
            "path_sets": path_sets,
            "attributes": net.attributes.names(),
        })),
        _ => {
            let mut out = format!("ok: {} vertices, {} edges\n", g.vertices().len(), g.edge_count());
            for w in g.properties() {
                let _ = writeln!(out, "property {} ({}){}", w.name(), w.domain(), unit_suffix(w.unit()));
            }
            for (name, p) in &net.path_sets {
                match (p.source(), p.destination()) {
                    (Some(s), Some(d)) => {
                        let _ = writeln!(out, "path set {name}: {} paths {s} -> {d}", p.len());
                    }
                    _ => {
                        let _ = writeln!(out, "path set {name}: empty");
                    }
                }
            }
            let _ = writeln!(out, "attributes: {}", net.attributes.names().join(" "));
            out
        }
    })
}

fn unit_suffix(unit: &str) -> String {
    if unit.is_empty() {
        String::new()
    } else {
        format!(" [{unit}]")
    }
}
