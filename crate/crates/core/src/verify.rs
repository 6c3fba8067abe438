//! Verification runs: invariant suite, oracle-versus-closed-form
//! equivalence, and errata against the published reference tables.
//!
//! A closed-form/oracle mismatch is a bug in this crate and fails the run.
//! A mismatch between the mesh and the printed reference tables is not: it
//! becomes an errata entry stating the printed value, the mesh-derived value
//! and which result-table rows the difference propagates to.

use serde_json::{json, Value};

use crate::builtin::BuiltinMeshId;
use crate::complex::PeriodicCellComplex;
use crate::fixtures::{reference_fixture, reference_ids, FixtureVariant, ReferenceIds};
use crate::formula::{evaluate, metric_poly, Metric};
use crate::method::registry;
use crate::oracle::{oracle_counts_on, stability_check, OracleError};
use crate::rational::{render_exact, Rational};
use crate::report::{csv_row, md_row, Format};
use crate::topology::{classify, pair_symmetry_check, TopologyClass, TopologyError, TopologyStats};
use crate::torus::tile;

/// A recorded discrepancy between mesh-derived truth and a printed value.
#[derive(Debug, Clone)]
pub struct ErrataEntry {
    pub mesh: String,
    /// Reference location, e.g. `Fig. 10, row (V,1), Nb(Fa)`.
    pub location: String,
    pub printed: String,
    pub derived: String,
    /// Which result-table rows change, e.g. `Table 10/11 VEM nnze rows (k >= 2)`.
    pub effect: String,
}

#[derive(Debug, Clone)]
pub struct InvariantResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct OracleCheck {
    pub method: &'static str,
    pub k: i64,
    pub formula_ncdof: Rational,
    pub oracle_ncdof: Rational,
    pub formula_nnze: Rational,
    pub oracle_nnze: Rational,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.formula_ncdof == self.oracle_ncdof && self.formula_nnze == self.oracle_nnze
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub mesh: String,
    pub tiling: i64,
    pub k_min: i64,
    pub k_max: i64,
    pub invariants: Vec<InvariantResult>,
    pub oracle_checks: Vec<OracleCheck>,
    pub errata: Vec<ErrataEntry>,
}

impl VerifyReport {
    /// True when every closed form reproduced the oracle exactly.
    pub fn formula_matches_oracle(&self) -> bool {
        self.oracle_checks.iter().all(OracleCheck::passed)
    }

    pub fn invariants_passed(&self) -> bool {
        self.invariants.iter().all(|i| i.passed)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Formula(#[from] crate::formula::FormulaError),
    #[error(transparent)]
    Mesh(#[from] crate::complex::MeshError),
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub k_min: i64,
    pub k_max: i64,
    pub tiling: i64,
    pub probe: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            k_min: 1,
            k_max: 10,
            tiling: 3,
            probe: crate::topology::DEFAULT_PROBE,
        }
    }
}

/// Runs the full verification for one mesh. `builtin_id` enables the errata
/// comparison against the shipped reference fixtures.
pub fn verify(
    complex: &PeriodicCellComplex,
    builtin_id: Option<BuiltinMeshId>,
    opts: VerifyOptions,
) -> Result<VerifyReport, VerifyError> {
    let mut invariants = Vec::new();

    let validation = complex.validate();
    invariants.push(InvariantResult {
        name: "unit cell validation (integrity, facet rule, euler)".into(),
        passed: validation.passed(),
        detail: validation
            .failures()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("; "),
    });

    for n in [opts.tiling, opts.tiling + 1] {
        let torus = tile(complex, &vec![n; complex.dimension])?;
        let euler_ok = torus.euler_characteristic() == 0;
        let facet_ok = torus.facet_incidence_counts().iter().all(|&c| c == 2);
        invariants.push(InvariantResult {
            name: format!("torus euler characteristic and facet rule (tiling {n})"),
            passed: euler_ok && facet_ok,
            detail: if euler_ok && facet_ok {
                String::new()
            } else {
                format!(
                    "euler = {}, facet rule ok = {facet_ok}",
                    torus.euler_characteristic()
                )
            },
        });
    }

    let stats = classify(complex, opts.probe)?;
    let stable = (3..=5)
        .map(|p| classify(complex, p))
        .collect::<Result<Vec<_>, _>>();
    invariants.push(match &stable {
        Ok(all) => {
            let same = all.windows(2).all(|w| w[0].classes == w[1].classes);
            InvariantResult {
                name: "classification stable across probe tilings 3/4/5".into(),
                passed: same,
                detail: String::new(),
            }
        }
        Err(e) => InvariantResult {
            name: "classification stable across probe tilings 3/4/5".into(),
            passed: false,
            detail: e.to_string(),
        },
    });

    let symmetry = pair_symmetry_check(&stats);
    invariants.push(InvariantResult {
        name: "pair symmetry of mesh-derived neighbor counts".into(),
        passed: symmetry.passed(),
        detail: symmetry
            .failures()
            .map(|p| format!("dims ({},{}): {} vs {}", p.dim_a, p.dim_b, p.lhs, p.rhs))
            .collect::<Vec<_>>()
            .join("; "),
    });

    for method in registry() {
        let check = stability_check(complex, method, opts.k_min, opts.tiling, opts.tiling + 1)?;
        invariants.push(InvariantResult {
            name: format!("tiling stability, {} at k = {}", method.name(), opts.k_min),
            passed: check.passed(),
            detail: if check.passed() {
                String::new()
            } else {
                format!(
                    "nnze/element {} on tiling {} vs {} on tiling {}",
                    check.samples[0].1, check.samples[0].0, check.samples[1].1, check.samples[1].0
                )
            },
        });
    }

    let torus = tile(complex, &vec![opts.tiling; complex.dimension])?;
    let mut oracle_checks = Vec::new();
    for method in registry() {
        let ncdof = metric_poly(method, &stats, Metric::Ncdof)?;
        let nnze = metric_poly(method, &stats, Metric::Nnze)?;
        for k in opts.k_min..=opts.k_max {
            let counts = oracle_counts_on(&torus, method, k)?;
            oracle_checks.push(OracleCheck {
                method: method.name(),
                k,
                formula_ncdof: evaluate(&ncdof, k)?,
                oracle_ncdof: counts.ncdof_per_element,
                formula_nnze: evaluate(&nnze, k)?,
                oracle_nnze: counts.nnze_per_element,
            });
        }
    }

    let errata = match builtin_id {
        Some(id) => collect_errata(id, &stats),
        None => Vec::new(),
    };

    Ok(VerifyReport {
        mesh: complex.name.clone(),
        tiling: opts.tiling,
        k_min: opts.k_min,
        k_max: opts.k_max,
        invariants,
        oracle_checks,
        errata,
    })
}

/// Compares mesh-derived statistics against the printed and implied fixture
/// variants of a built-in mesh.
pub fn collect_errata(id: BuiltinMeshId, derived: &TopologyStats) -> Vec<ErrataEntry> {
    let ids = reference_ids(id);
    let printed = reference_fixture(id, FixtureVariant::Printed);
    let implied = reference_fixture(id, FixtureVariant::Implied);
    let mut errata = Vec::new();

    value_diffs(id, &ids, &printed, derived, &mut errata);
    internal_inconsistencies(id, &ids, &printed, derived, &mut errata);
    // symmetry failures that survive the implied substitutions
    internal_inconsistencies(id, &ids, &implied, derived, &mut errata);
    errata
}

/// Pairs printed and derived classes per dimension and reports differing
/// ratios and neighbor counts. Pairing is by ratio when the ratio multisets
/// agree (the ratio column is structural), otherwise by neighbor counts.
fn value_diffs(
    id: BuiltinMeshId,
    ids: &ReferenceIds,
    printed: &TopologyStats,
    derived: &TopologyStats,
    errata: &mut Vec<ErrataEntry>,
) {
    let d = derived.dimension;
    for dim in 0..=d {
        let p_classes: Vec<&TopologyClass> = printed.classes_of_dim(dim).collect();
        let d_classes: Vec<&TopologyClass> = derived.classes_of_dim(dim).collect();
        if p_classes.len() != d_classes.len() {
            errata.push(ErrataEntry {
                mesh: id.name().into(),
                location: format!("Fig. {}, dim-{dim} rows", ids.figure),
                printed: format!("{} classes", p_classes.len()),
                derived: format!("{} classes", d_classes.len()),
                effect: "row structure differs; all affected rows below".into(),
            });
            continue;
        }
        let common_dims: Vec<usize> = (0..=d)
            .filter(|m| {
                p_classes.iter().all(|c| c.nb.contains_key(m))
                    && d_classes.iter().all(|c| c.nb.contains_key(m))
            })
            .collect();
        let nb_key =
            |c: &TopologyClass| -> Vec<u64> { common_dims.iter().map(|m| c.nb[m]).collect() };
        let mut p_sorted = p_classes.clone();
        let mut d_sorted = d_classes.clone();
        let p_ratios: Vec<Rational> = {
            let mut r: Vec<Rational> = p_classes.iter().map(|c| c.r).collect();
            r.sort();
            r
        };
        let d_ratios: Vec<Rational> = {
            let mut r: Vec<Rational> = d_classes.iter().map(|c| c.r).collect();
            r.sort();
            r
        };
        if p_ratios == d_ratios {
            p_sorted.sort_by_key(|c| (c.r, nb_key(c)));
            d_sorted.sort_by_key(|c| (c.r, nb_key(c)));
        } else {
            p_sorted.sort_by_key(|c| nb_key(c));
            d_sorted.sort_by_key(|c| nb_key(c));
        }
        for (p, m) in p_sorted.iter().zip(&d_sorted) {
            if p.r != m.r {
                errata.push(ErrataEntry {
                    mesh: id.name().into(),
                    location: format!("Fig. {}, row {}, R", ids.figure, p.label()),
                    printed: render_exact(&p.r),
                    derived: render_exact(&m.r),
                    effect: ratio_effect(ids, dim, d),
                });
            }
            for m_dim in &common_dims {
                let (pv, dv) = (p.nb[m_dim], m.nb[m_dim]);
                if pv != dv {
                    errata.push(ErrataEntry {
                        mesh: id.name().into(),
                        location: format!(
                            "Fig. {}, row {}, Nb({})",
                            ids.figure,
                            p.label(),
                            ["V", "Ed", "Fa", "C"][*m_dim]
                        ),
                        printed: pv.to_string(),
                        derived: dv.to_string(),
                        effect: neighbor_effect(ids, dim, *m_dim, d),
                    });
                }
            }
        }
    }
}

/// Smallest degree at which entities of this dimension carry skeleton
/// unknowns (vertices always do; edges and faces only from k = 2).
fn vem_active_from(dim: usize) -> i64 {
    if dim == 0 {
        1
    } else {
        2
    }
}

fn ratio_effect(ids: &ReferenceIds, dim: usize, d: usize) -> String {
    let k_min = vem_active_from(dim);
    let mut rows = vec![if k_min > 1 {
        format!("VEM rows (k >= {k_min})")
    } else {
        "VEM rows".to_string()
    }];
    if dim == d - 1 {
        rows.push("HDG and HHO rows".into());
    }
    if dim == d {
        rows.push("DG, TDG2 and TDG1 rows".into());
    }
    format!(
        "Table {}/{}: {}",
        ids.poly_table,
        ids.numeric_table,
        rows.join("; ")
    )
}

fn neighbor_effect(ids: &ReferenceIds, row_dim: usize, target_dim: usize, d: usize) -> String {
    let k_min = vem_active_from(row_dim).max(vem_active_from(target_dim));
    let mut rows = Vec::new();
    if target_dim < d {
        rows.push(if k_min > 1 {
            format!("VEM nnze rows (k >= {k_min})")
        } else {
            "VEM nnze rows".to_string()
        });
    }
    if row_dim == d - 1 && target_dim == d - 1 {
        rows.push("HDG and HHO nnze rows".into());
    }
    if row_dim == d && target_dim == d - 1 {
        rows.push("DG, TDG2 and TDG1 nnze rows".into());
    }
    if rows.is_empty() {
        rows.push("no result rows (count unused by the closed forms)".into());
    }
    format!(
        "Table {}/{}: {}",
        ids.poly_table,
        ids.numeric_table,
        rows.join("; ")
    )
}

/// Pair-symmetry and Euler violations inside one fixture variant.
fn internal_inconsistencies(
    id: BuiltinMeshId,
    ids: &ReferenceIds,
    fixture: &TopologyStats,
    derived: &TopologyStats,
    errata: &mut Vec<ErrataEntry>,
) {
    let variant = fixture.derivation.tag();
    let symmetry = pair_symmetry_check(fixture);
    let derived_symmetry = pair_symmetry_check(derived);
    for pair in symmetry.failures() {
        let balanced = derived_symmetry
            .pairs
            .iter()
            .find(|p| (p.dim_a, p.dim_b) == (pair.dim_a, pair.dim_b))
            .map(|p| render_exact(&p.lhs))
            .unwrap_or_else(|| "n/a".into());
        errata.push(ErrataEntry {
            mesh: id.name().into(),
            location: format!(
                "Fig. {}, dims ({},{}) pair symmetry [{variant}]",
                ids.figure,
                ["V", "Ed", "Fa", "C"][pair.dim_a],
                ["V", "Ed", "Fa", "C"][pair.dim_b]
            ),
            printed: format!("{} vs {}", render_exact(&pair.lhs), render_exact(&pair.rhs)),
            derived: format!("{balanced} on both sides"),
            effect: "the two rows cannot both be correct".into(),
        });
    }
    let chi = fixture.euler_per_element();
    if chi != crate::rational::int(0) {
        errata.push(ErrataEntry {
            mesh: id.name().into(),
            location: format!("Fig. {}, R column [{variant}]", ids.figure),
            printed: format!("euler characteristic per element = {}", render_exact(&chi)),
            derived: "0".into(),
            effect: "the printed ratios cannot describe a torus complex".into(),
        });
    }
}

/// Renders a verification report.
pub fn render_verify(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Md => {
            let mut out = format!("# verification: {}\n\n## invariants\n\n", report.mesh);
            for inv in &report.invariants {
                let status = if inv.passed { "pass" } else { "FAIL" };
                if inv.detail.is_empty() {
                    out.push_str(&format!("- {}: {status}\n", inv.name));
                } else {
                    out.push_str(&format!("- {}: {status} ({})\n", inv.name, inv.detail));
                }
            }
            out.push_str(&format!(
                "\n## oracle vs closed form (tiling {}, k = {}..{})\n\n",
                report.tiling, report.k_min, report.k_max
            ));
            for check in &report.oracle_checks {
                if !check.passed() {
                    out.push_str(&format!(
                        "- MISMATCH {} k={}: ncdof {} vs {}, nnze {} vs {}\n",
                        check.method,
                        check.k,
                        check.formula_ncdof,
                        check.oracle_ncdof,
                        check.formula_nnze,
                        check.oracle_nnze
                    ));
                }
            }
            let passed = report.oracle_checks.iter().filter(|c| c.passed()).count();
            out.push_str(&format!(
                "oracle == formula: {passed}/{} checks\n",
                report.oracle_checks.len()
            ));
            out.push_str("\n## errata vs printed reference tables\n\n");
            if report.errata.is_empty() {
                out.push_str("none\n");
            } else {
                out.push_str(&md_row(&[
                    "location".into(),
                    "printed".into(),
                    "mesh-derived".into(),
                    "affects".into(),
                ]));
                out.push('\n');
                out.push_str(&md_row(&vec!["---".to_string(); 4]));
                out.push('\n');
                for e in &report.errata {
                    out.push_str(&md_row(&[
                        e.location.clone(),
                        e.printed.clone(),
                        e.derived.clone(),
                        e.effect.clone(),
                    ]));
                    out.push('\n');
                }
            }
            out
        }
        Format::Csv => {
            let mut out = csv_row(&[
                "section".into(),
                "item".into(),
                "status".into(),
                "detail".into(),
            ]);
            out.push('\n');
            for inv in &report.invariants {
                out.push_str(&csv_row(&[
                    "invariant".into(),
                    inv.name.clone(),
                    if inv.passed {
                        "pass".into()
                    } else {
                        "fail".into()
                    },
                    inv.detail.clone(),
                ]));
                out.push('\n');
            }
            for check in &report.oracle_checks {
                out.push_str(&csv_row(&[
                    "oracle".into(),
                    format!("{} k={}", check.method, check.k),
                    if check.passed() {
                        "pass".into()
                    } else {
                        "fail".into()
                    },
                    format!(
                        "ncdof {}={}, nnze {}={}",
                        check.formula_ncdof,
                        check.oracle_ncdof,
                        check.formula_nnze,
                        check.oracle_nnze
                    ),
                ]));
                out.push('\n');
            }
            for e in &report.errata {
                out.push_str(&csv_row(&[
                    "errata".into(),
                    e.location.clone(),
                    format!("printed {} vs derived {}", e.printed, e.derived),
                    e.effect.clone(),
                ]));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let doc = json!({
                "mesh": report.mesh,
                "tiling": report.tiling,
                "k": { "min": report.k_min, "max": report.k_max },
                "derivation": "mesh-derived",
                "invariants": report.invariants.iter().map(|i| json!({
                    "name": i.name, "passed": i.passed, "detail": i.detail,
                })).collect::<Vec<Value>>(),
                "oracle_checks": report.oracle_checks.iter().map(|c| json!({
                    "method": c.method,
                    "k": c.k,
                    "passed": c.passed(),
                    "formula": { "ncdof": render_exact(&c.formula_ncdof), "nnze": render_exact(&c.formula_nnze) },
                    "oracle": { "ncdof": render_exact(&c.oracle_ncdof), "nnze": render_exact(&c.oracle_nnze) },
                })).collect::<Vec<Value>>(),
                "formula_matches_oracle": report.formula_matches_oracle(),
                "errata": report.errata.iter().map(|e| json!({
                    "mesh": e.mesh,
                    "location": e.location,
                    "printed": e.printed,
                    "derived": e.derived,
                    "affects": e.effect,
                })).collect::<Vec<Value>>(),
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json rendering");
            text.push('\n');
            text
        }
    }
}
