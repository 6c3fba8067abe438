//! Text renderings: topology reports, value tables, polynomial listings.
//!
//! Every renderer is deterministic so outputs can be pinned byte-for-byte.
//! Tables carry exact rationals and optionally a one-decimal rendering
//! (round half up, trailing `.0` suppressed).

use serde_json::{json, Value};

use crate::formula::{evaluate, metric_poly, FormulaError, Metric};
use crate::method::Method;
use crate::poly::RationalPolynomial;
use crate::rational::{render_decimal, render_exact, Rational};
use crate::topology::TopologyStats;

/// Output format shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Md,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "md" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!(
                "unknown format `{other}` (expected md, csv or json)"
            )),
        }
    }
}

pub(crate) fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub(crate) fn csv_row(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn md_row(cells: &[String]) -> String {
    format!("| {} |", cells.join(" | "))
}

fn dim_label(dim: usize) -> &'static str {
    ["V", "Ed", "Fa", "C"][dim]
}

/// Renders the topology classes of a mesh as a table: one row per class,
/// neighbor counts per available dimension, ratio column last.
pub fn render_topology(stats: &TopologyStats, format: Format) -> String {
    let dims: Vec<usize> = (0..=stats.dimension)
        .filter(|m| stats.classes.iter().all(|c| c.nb.contains_key(m)))
        .collect();
    match format {
        Format::Md => {
            let mut out = format!(
                "# topology: {} ({})\n\n",
                stats.mesh,
                stats.derivation.tag()
            );
            let mut header = vec!["class".to_string()];
            header.extend(dims.iter().map(|&m| format!("Nb({})", dim_label(m))));
            header.push("R".to_string());
            out.push_str(&md_row(&header));
            out.push('\n');
            out.push_str(&md_row(&vec!["---".to_string(); header.len()]));
            out.push('\n');
            for class in &stats.classes {
                let mut cells = vec![class.label()];
                cells.extend(dims.iter().map(|m| class.nb[m].to_string()));
                cells.push(render_exact(&class.r));
                out.push_str(&md_row(&cells));
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut header = vec!["class".to_string()];
            header.extend(dims.iter().map(|&m| format!("Nb({})", dim_label(m))));
            header.push("R".to_string());
            let mut out = csv_row(&header);
            out.push('\n');
            for class in &stats.classes {
                let mut cells = vec![class.label()];
                cells.extend(dims.iter().map(|m| class.nb[m].to_string()));
                cells.push(render_exact(&class.r));
                out.push_str(&csv_row(&cells));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let classes: Vec<Value> = stats
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "label": c.label(),
                        "dim": c.dim,
                        "index": c.index,
                        "members": c.members,
                        "nb": c.nb.iter().map(|(m, v)| (m.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                        "r": render_exact(&c.r),
                    })
                })
                .collect();
            let doc = json!({
                "mesh": stats.mesh,
                "dimension": stats.dimension,
                "derivation": stats.derivation.tag(),
                "classes": classes,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json rendering");
            text.push('\n');
            text
        }
    }
}

/// A rendered-value table: methods by rows, degrees by columns.
#[derive(Debug, Clone)]
pub struct ReportTable {
    pub mesh: String,
    pub derivation: &'static str,
    pub metric: Metric,
    pub k_values: Vec<i64>,
    pub rows: Vec<(String, Vec<Rational>)>,
    pub decimal: bool,
}

impl ReportTable {
    fn cell(&self, value: &Rational) -> String {
        if self.decimal {
            render_decimal(value)
        } else {
            render_exact(value)
        }
    }
}

/// Evaluates one metric for a set of methods over a degree range.
pub fn build_table(
    stats: &TopologyStats,
    methods: &[&'static dyn Method],
    metric: Metric,
    k_min: i64,
    k_max: i64,
    decimal: bool,
) -> Result<ReportTable, FormulaError> {
    let k_values: Vec<i64> = (k_min..=k_max).collect();
    let mut rows = Vec::new();
    for method in methods {
        let poly = metric_poly(*method, stats, metric)?;
        let values: Vec<Rational> = k_values
            .iter()
            .map(|&k| evaluate(&poly, k))
            .collect::<Result<_, _>>()?;
        rows.push((method.name().to_string(), values));
    }
    Ok(ReportTable {
        mesh: stats.mesh.clone(),
        derivation: stats.derivation.tag(),
        metric,
        k_values,
        rows,
        decimal,
    })
}

pub fn render_table(table: &ReportTable, format: Format) -> String {
    match format {
        Format::Md => {
            let mut out = format!(
                "# {} per element: {} ({})\n\n",
                table.metric, table.mesh, table.derivation
            );
            let mut header = vec!["method".to_string()];
            header.extend(table.k_values.iter().map(|k| format!("k={k}")));
            out.push_str(&md_row(&header));
            out.push('\n');
            out.push_str(&md_row(&vec!["---".to_string(); header.len()]));
            out.push('\n');
            for (method, values) in &table.rows {
                let mut cells = vec![method.clone()];
                cells.extend(values.iter().map(|v| table.cell(v)));
                out.push_str(&md_row(&cells));
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut header = vec!["method".to_string()];
            header.extend(table.k_values.iter().map(|k| format!("k={k}")));
            let mut out = csv_row(&header);
            out.push('\n');
            for (method, values) in &table.rows {
                let mut cells = vec![method.clone()];
                cells.extend(values.iter().map(|v| table.cell(v)));
                out.push_str(&csv_row(&cells));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|(method, values)| {
                    json!({
                        "method": method,
                        "values": values.iter().map(|v| table.cell(v)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({
                "mesh": table.mesh,
                "metric": table.metric.name(),
                "derivation": table.derivation,
                "rendering": if table.decimal { "decimal" } else { "exact" },
                "k": table.k_values,
                "rows": rows,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json rendering");
            text.push('\n');
            text
        }
    }
}

/// Renders one closed-form polynomial. Markdown output is the bare canonical
/// string, which is the primary machine-friendly surface.
pub fn render_poly(
    stats: &TopologyStats,
    method: &dyn Method,
    metric: Metric,
    poly: &RationalPolynomial,
    format: Format,
) -> String {
    match format {
        Format::Md => format!("{poly}\n"),
        Format::Csv => {
            let header = csv_row(&[
                "mesh".into(),
                "method".into(),
                "metric".into(),
                "derivation".into(),
                "polynomial".into(),
            ]);
            let row = csv_row(&[
                stats.mesh.clone(),
                method.name().to_string(),
                metric.name().to_string(),
                stats.derivation.tag().to_string(),
                poly.to_string(),
            ]);
            format!("{header}\n{row}\n")
        }
        Format::Json => {
            let doc = json!({
                "mesh": stats.mesh,
                "method": method.name(),
                "metric": metric.name(),
                "derivation": stats.derivation.tag(),
                "polynomial": poly.to_string(),
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json rendering");
            text.push('\n');
            text
        }
    }
}
