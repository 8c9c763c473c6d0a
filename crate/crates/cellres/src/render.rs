//! JSON, plain-text and Macaulay2 renderings.

use std::fmt::Write;

use cellres_core::cellcomplex::PeriodicCellComplex;
use cellres_core::exactmath::homology::HomologyProfile;
use cellres_core::exactmath::rational::RatVector;
use cellres_core::lattice::{LatticeEmbedding, QuotientGrading};
use cellres_core::polynomial::{Poly, PolyMatrix, VarNames};
use cellres_core::rescomplex::{betti_table, GradedFreeComplex, MinimalityReport, MonomialModule};
use cellres_core::stratify::Stratification;
use cellres_core::verify::{Certificate, Pointedness};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn rat_vec(v: &RatVector) -> Value {
    Value::Array(v.0.iter().map(|x| json!(x.to_string())).collect())
}

fn poly_terms(p: &Poly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([big(c), e])).collect())
}

pub fn complex_json(f: &GradedFreeComplex, names: &VarNames) -> Value {
    let terms: Vec<Value> = f
        .terms
        .iter()
        .map(|t| {
            Value::Array(
                t.iter()
                    .map(|g| {
                        json!({
                            "cell": g.cell,
                            "label": g.label,
                            "monomial": names.monomial(&g.label),
                            "degree": g.twist,
                        })
                    })
                    .collect(),
            )
        })
        .collect();
    let differentials: Vec<Value> = f
        .differentials
        .iter()
        .map(|m| {
            let mut entries = Vec::new();
            for r in 0..m.rows {
                for c in 0..m.cols {
                    let p = m.get(r, c);
                    if !p.is_zero() {
                        entries.push(json!([r, c, poly_terms(p)]));
                    }
                }
            }
            json!({ "rows": m.rows, "cols": m.cols, "entries": entries })
        })
        .collect();
    json!({ "n": f.n, "variables": names.names(), "terms": terms, "differentials": differentials })
}

pub fn betti_json(f: &GradedFreeComplex) -> Value {
    Value::Array(
        betti_table(f)
            .into_iter()
            .map(|((i, d), r)| json!({ "index": i, "degree": d, "rank": r }))
            .collect(),
    )
}

pub fn minimality_json(m: &MinimalityReport) -> Value {
    json!({
        "minimal": m.minimal(),
        "algebraic": m.algebraic,
        "topological": m.topological,
        "unit_entries": m.unit_entries,
        "equal_labels": m.equal_labels,
    })
}

pub fn generators_json(m: &MonomialModule, names: &VarNames) -> Value {
    Value::Array(m.generators.iter().map(|u| json!({ "exponent": u, "monomial": names.monomial(u) })).collect())
}

pub fn cells_json(c: &PeriodicCellComplex) -> Value {
    let cells: Vec<Value> = c
        .cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            json!({
                "id": i,
                "dim": cell.dim,
                "vertices": cell.vertices.iter().map(rat_vec).collect::<Vec<_>>(),
                "facets": cell.facets.iter().map(|f| json!([f.class, f.offset, f.sign])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "n": c.lattice.n,
        "d": c.lattice.d,
        "shift": rat_vec(&c.shift),
        "counts": c.counts(),
        "cells": cells,
    })
}

pub fn strat_json(s: &Stratification, names: &VarNames) -> Value {
    json!({
        "kind": s.kind.to_string(),
        "shift": rat_vec(&s.shift),
        "labels": s.labels.iter().map(|u| json!({ "label": u, "monomial": names.monomial(u) })).collect::<Vec<_>>(),
    })
}

fn homology_json(h: &HomologyProfile) -> Value {
    Value::Array(
        h.groups
            .iter()
            .map(|g| json!({ "rank": g.rank, "torsion": g.torsion.iter().map(big).collect::<Vec<_>>() }))
            .collect(),
    )
}

fn pointedness_json(p: &Pointedness) -> Value {
    json!({ "pointed": p.pointed, "witness": p.witness })
}

pub fn certificate_json(cert: &Certificate, names: &VarNames, runtime_ms: Option<u128>) -> Value {
    let compat = &cert.compatibility;
    let scan = cert.scan.as_ref().map(|s| {
        json!({
            "ok": s.acyclic(),
            "join_depth": s.join_depth,
            "tested": s.tested,
            "failures": s.failures.iter().map(|f| json!({
                "degree": f.degree,
                "monomial": names.monomial(&f.degree),
                "reduced_homology": homology_json(&f.reduced),
            })).collect::<Vec<_>>(),
        })
    });
    let mut v = json!({
        "pass": cert.pass(),
        "compatibility": {
            "ok": compat.ok(),
            "violations": compat.violations.iter().map(|x| json!({ "cell": x.cell, "facet": x.facet, "offset": x.offset })).collect::<Vec<_>>(),
            "inconstant": compat.inconstant,
        },
        "d_squared": {
            "ok": cert.d_squared.is_none(),
            "witness": cert.d_squared.as_ref().map(|w| json!({
                "index": w.index, "row": w.row, "col": w.col, "value": names.poly(&w.value),
            })),
        },
        "pointedness": pointedness_json(&cert.pointedness),
        "scan": scan,
        "minimality": minimality_json(&cert.minimality),
    });
    if let Some(ms) = runtime_ms {
        v["runtime_ms"] = json!(ms);
    }
    v
}

pub fn lattice_json(l: &LatticeEmbedding, g: &QuotientGrading) -> Value {
    json!({
        "n": l.n,
        "d": l.d,
        "basis": l.iota.transpose().to_i64_rows(),
        "saturated": l.saturated,
        "lawrence": l.lawrence_half().is_some(),
        "quotient": { "free_rank": g.free_rank, "torsion": g.torsion },
    })
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn term_line(f: &GradedFreeComplex, i: usize) -> String {
    let mut groups: Vec<(Vec<i64>, usize)> = Vec::new();
    for g in &f.terms[i] {
        match groups.iter_mut().find(|(d, _)| *d == g.twist) {
            Some((_, k)) => *k += 1,
            None => groups.push((g.twist.clone(), 1)),
        }
    }
    if groups.is_empty() {
        return String::from("0");
    }
    let parts: Vec<String> = groups
        .into_iter()
        .map(|(d, k)| if k == 1 { format!("S{}", tuple(&d)) } else { format!("S{}^{}", tuple(&d), k) })
        .collect();
    parts.join(" + ")
}

fn bracket(m: &PolyMatrix, names: &VarNames) -> String {
    let cells = m.render(names);
    let mut widths = vec![0; m.cols];
    for row in &cells {
        for (j, s) in row.iter().enumerate() {
            widths[j] = widths[j].max(s.len());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let parts: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        let _ = writeln!(out, "  [ {} ]", parts.join("  "));
    }
    out
}

pub fn complex_text(f: &GradedFreeComplex, names: &VarNames) -> String {
    let mut out = String::new();
    for i in 0..f.terms.len() {
        let _ = writeln!(out, "F{i} = {}", term_line(f, i));
    }
    for (i, m) in f.differentials.iter().enumerate() {
        let _ = writeln!(out, "\nd{} : F{} -> F{}  ({} x {})", i + 1, i + 1, i, m.rows, m.cols);
        out.push_str(&bracket(m, names));
    }
    out
}

/// Degree vectors of the variables: columns of the coarsening, or the free
/// part of the quotient map.
fn variable_degrees(g: &QuotientGrading, n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            g.coarse(&e).unwrap_or_else(|| g.degree(&e).free)
        })
        .collect()
}

fn m2_list(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// A Macaulay2 script defining the ring, the modules and the maps, with
/// checks that the maps are homogeneous and compose to zero.
pub fn complex_m2(f: &GradedFreeComplex, names: &VarNames, g: &QuotientGrading) -> String {
    let mut out = String::new();
    if !g.torsion.is_empty() && g.coarsening.is_none() {
        let _ = writeln!(out, "-- torsion part of the grading omitted: {:?}", g.torsion);
    }
    let degs: Vec<String> = variable_degrees(g, f.n).iter().map(|d| m2_list(d)).collect();
    let _ = writeln!(out, "S = QQ[{}, Degrees => {{{}}}];", names.names().join(","), degs.join(","));
    for (i, t) in f.terms.iter().enumerate() {
        let gens: Vec<String> = t.iter().map(|g| m2_list(&g.twist)).collect();
        let _ = writeln!(out, "F{i} = S^{{{}}};", gens.join(","));
    }
    for (i, m) in f.differentials.iter().enumerate() {
        let rows: Vec<String> = m
            .render(names)
            .into_iter()
            .map(|r| format!("{{{}}}", r.join(",")))
            .collect();
        let _ = writeln!(out, "d{} = map(F{}, F{}, {{{}}});", i + 1, i, i + 1, rows.join(","));
        let _ = writeln!(out, "assert isHomogeneous d{};", i + 1);
    }
    for i in 1..f.differentials.len() {
        let _ = writeln!(out, "assert(d{} * d{} == 0);", i, i + 1);
    }
    if !f.differentials.is_empty() {
        let maps: Vec<String> = (1..=f.differentials.len()).map(|i| format!("d{i}")).collect();
        let _ = writeln!(out, "C = chainComplex({{{}}});", maps.join(","));
        let _ = writeln!(out, "assert(C.dd^2 == 0);");
    }
    out
}
