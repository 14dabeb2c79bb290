use std::sync::Arc;

use amoduli::ainfinity::{
    emit_moduli_equations, equivalent, extend_step, tangent_dims, AnStructure, Extension, Normalizer,
};
use amoduli::curves::{
    adequate_depth, component_type, glue, grassmannian_point, krichever_stable, krichever_window,
    special_curve_algebra, verify_basis, GluePoint,
};
use amoduli::genus_one::{
    bundle_glue_check, hilbert_a, transition, transition_symbolic, u1_relations, weighted_proj_compare, HilbertSpec,
    U1Chart, DEGREE_BOUND,
};
use amoduli::hochschild::vanishing_scan;
use amoduli::poly::closure_check;
use amoduli::quiver::build_ew;
use amoduli::random::{random_gauge, random_structure, rng};
use anyhow::{Context, Result};
use serde_json::json;

use crate::input::{self, usage};
use crate::output::{Artifact, Table};
use crate::{AinfCmd, ChartArgs, Cmd, CurveArgs, CurveCmd, Genus1Cmd, HilbertArgs, PolyCmd, WArgs};

pub fn run(cmd: &Cmd) -> Result<Artifact> {
    match cmd {
        Cmd::Ew(w) => ew(w),
        Cmd::Hh { w, i_max, t_min } => hh(w, *i_max, *t_min),
        Cmd::Ainf(c) => ainf(c),
        Cmd::Curve(c) => curve(c),
        Cmd::Genus1(c) => genus1(c),
        Cmd::Poly(PolyCmd::Closure { input, deg_bound }) => {
            let rs = input::relation_system(input)?;
            let r = closure_check(&rs, *deg_bound)?;
            let pass = r.verdict.is_pass();
            Ok(Artifact::value(&r)?.with_verdict(pass))
        }
    }
}

fn ew(w: &WArgs) -> Result<Artifact> {
    let e = build_ew(&input::subspace(w.n, w.g, &w.w)?);
    let dump = e.to_json();
    let mut t = Table::new(&["label", "src", "tgt", "degree"]);
    for b in &dump.basis {
        t.push(vec![b.label.clone(), b.src.to_string(), b.tgt.to_string(), b.degree.to_string()]);
    }
    Ok(Artifact::value(&dump)?.with_table(t))
}

fn hh(w: &WArgs, i_max: i32, t_min: i32) -> Result<Artifact> {
    if i_max < 0 || t_min > 0 {
        return usage("need --i-max >= 0 and --t-min <= 0");
    }
    let e = build_ew(&input::subspace(w.n, w.g, &w.w)?);
    let scan = vanishing_scan(&e, i_max, t_min);
    let rows = scan.table.rows();
    let mut t = Table::new(&["i", "t", "dim_cochain", "dim_cocycle", "dim_coboundary", "dim_HH"]);
    for r in &rows {
        t.push(
            [
                r.i as i64,
                r.t as i64,
                r.dim_cochain as i64,
                r.dim_cocycle as i64,
                r.dim_coboundary as i64,
                r.dim_hh as i64,
            ]
            .iter()
            .map(|x| x.to_string())
            .collect(),
        );
    }
    let json = json!({
        "n": w.n,
        "g": e.g(),
        "cells": rows,
        "last_nonzero_hh2": scan.last_hh2,
        "last_nonzero_hh3": scan.last_hh3,
    });
    Ok(Artifact { json, table: Some(t), verdict: None })
}

fn ainf(cmd: &AinfCmd) -> Result<Artifact> {
    match cmd {
        AinfCmd::Normalize { input } => {
            let m = input::structure("input", input)?;
            let mut norm = Normalizer::new(m.algebra().clone(), m.order());
            let (nf, f) = norm.normalize(&m)?;
            let coords = norm.coordinates(&nf)?;
            let json = json!({
                "structure": nf.structure.to_json(),
                "witness": f.to_json(),
                "coordinates": coords,
                "trivial": nf.structure.is_trivial(),
            });
            Ok(Artifact { json, table: None, verdict: None })
        }
        AinfCmd::Equiv { input, other } => {
            let a = input::structure("input", input)?;
            let b = input::structure("other", other)?;
            let eq = equivalent(&a, &b)?;
            let pass = eq.equivalent;
            Ok(Artifact::value(&eq)?.with_verdict(pass))
        }
        AinfCmd::Extend { input } => {
            let m = input::structure("input", input)?;
            let e = m.algebra().clone();
            let json = match extend_step(&m)? {
                Extension::Extended { next, residual_is_cocycle } => json!({
                    "status": "extended",
                    "residual_is_cocycle": residual_is_cocycle,
                    "structure": m.extended(next).to_json(),
                }),
                Extension::Obstructed { residual, class, residual_is_cocycle } => json!({
                    "status": "obstructed",
                    "residual_is_cocycle": residual_is_cocycle,
                    "residual": residual.to_json(&e),
                    "class": class.to_json(&e),
                }),
            };
            let pass = json["status"] == "extended";
            Ok(Artifact { json, table: None, verdict: Some(pass) })
        }
        AinfCmd::Equations { w, order } => {
            check_order(*order)?;
            let sub = input::subspace(w.n, w.g, &w.w)?;
            let sys = emit_moduli_equations(&sub, *order);
            let e = build_ew(&sub);
            let j = sys.to_json(&e);
            let mut t = Table::new(&["equation"]);
            for q in &j.equations {
                t.push(vec![q.clone()]);
            }
            Ok(Artifact::value(&j)?.with_table(t))
        }
        AinfCmd::Tangent { w, order } => {
            check_order(*order)?;
            let sub = input::subspace(w.n, w.g, &w.w)?;
            let r = tangent_dims(&sub, *order);
            let mut t = Table::new(&["k", "dim_HH2"]);
            for (k, d) in &r.hh2 {
                t.push(vec![k.to_string(), d.to_string()]);
            }
            let json = json!({
                "hh2": r.hh2,
                "hh2_total": r.hh2_total(),
                "grassmannian": r.grassmannian,
                "total": r.total(),
            });
            Ok(Artifact { json, table: Some(t), verdict: None })
        }
        AinfCmd::Sample { w, order, seed, density, trivial } => {
            check_order(*order)?;
            if !(0.0..=1.0).contains(density) {
                return usage("--density must lie in [0, 1]");
            }
            let e = Arc::new(build_ew(&input::subspace(w.n, w.g, &w.w)?));
            let mut r = rng(*seed);
            let m = if *trivial {
                let f = random_gauge(&mut r, &e, *order, *density);
                amoduli::ainfinity::gauge_act(&f, &AnStructure::trivial(e.clone(), *order))
            } else {
                let norm = Normalizer::new(e.clone(), *order);
                random_structure(&mut r, &norm, *order, *density)
                    .context("an obstruction was hit while building the structure; try another seed")?
            };
            Ok(Artifact::value(&m.to_json())?)
        }
    }
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        return usage("--order must be at least 2");
    }
    Ok(())
}

fn curve(cmd: &CurveCmd) -> Result<Artifact> {
    match cmd {
        CurveCmd::Special(c) => {
            let d = curve_data(c)?;
            let pres = special_curve_algebra(&d)?;
            let sys = pres.system.to_json();
            let components: Vec<_> =
                d.s.iter()
                    .map(|&i| component_type(&d, i).map(|t| json!({"i": i, "type": t})))
                    .collect::<Result<_, _>>()?;
            let mut t = Table::new(&["relation"]);
            for r in &sys.relations {
                t.push(vec![r.clone()]);
            }
            let json = json!({
                "data": d,
                "genus": d.genus(),
                "system": sys,
                "components": components,
                "point": grassmannian_point(&d).rref().0.to_dense(),
            });
            Ok(Artifact { json, table: Some(t), verdict: None })
        }
        CurveCmd::Basis { curve, depth } => {
            let d = curve_data(curve)?;
            let r = verify_basis(&d, *depth)?;
            let pass = r.verdict.is_pass();
            Ok(Artifact::value(&r)?.with_verdict(pass))
        }
        CurveCmd::Krichever { curve, depth } => {
            let d = curve_data(curve)?;
            let depth = depth.unwrap_or_else(|| adequate_depth(d.genus()));
            let (_, r) = krichever_window(&d, depth)?;
            let stable = krichever_stable(&d, depth)?;
            let pass = r.verdict.is_pass() && stable;
            let mut json = serde_json::to_value(&r)?;
            json["stable"] = json!(stable);
            Ok(Artifact { json, table: None, verdict: Some(pass) })
        }
        CurveCmd::Glue { left, right, q_left, q_right, depth } => {
            let l = input::curve_model("left", left)?;
            let r = input::curve_model("right", right)?;
            let ql: GluePoint = q_left.parse().map_err(|e| input::UsageError(format!("--q-left: {e}")))?;
            let qr: GluePoint = q_right.parse().map_err(|e| input::UsageError(format!("--q-right: {e}")))?;
            let (model, report) = glue(&l, &ql, &r, &qr, *depth)?;
            let pass = report.verdict.is_pass();
            let json = json!({ "model": model, "report": report });
            Ok(Artifact { json, table: None, verdict: Some(pass) })
        }
        CurveCmd::Component(c) => {
            let d = curve_data(c)?;
            let mut t = Table::new(&["i", "type"]);
            let mut comps = Vec::new();
            for &i in &d.s {
                let ty = component_type(&d, i)?;
                t.push(vec![i.to_string(), serde_json::to_value(ty)?.as_str().unwrap_or_default().to_string()]);
                comps.push(json!({"i": i, "type": ty}));
            }
            let json = json!({
                "components": comps,
                "point": grassmannian_point(&d).rref().0.to_dense(),
            });
            Ok(Artifact { json, table: Some(t), verdict: None })
        }
    }
}

fn curve_data(c: &CurveArgs) -> Result<amoduli::curves::SpecialCurveData> {
    input::curve_data(c.n, &c.s, &c.a)
}

fn chart(c: &ChartArgs) -> Result<U1Chart> {
    Ok(U1Chart::new(
        input::rat("a12", &c.a12)?,
        input::rat("b12", &c.b12)?,
        input::rat("e12", &c.e12)?,
        input::rat("pi1", &c.pi1)?,
    ))
}

fn spec(h: &HilbertArgs) -> Result<HilbertSpec> {
    Ok(HilbertSpec::new(input::rat("u", &h.u)?, input::rat("v", &h.v)?, h.nmax))
}

fn genus1(cmd: &Genus1Cmd) -> Result<Artifact> {
    match cmd {
        Genus1Cmd::Relations(c) => {
            let rs = u1_relations(&chart(c)?);
            let closure = closure_check(&rs, DEGREE_BOUND)?;
            let pass = closure.verdict.is_pass();
            let sys = rs.to_json();
            let mut t = Table::new(&["relation"]);
            for r in &sys.relations {
                t.push(vec![r.clone()]);
            }
            let json = json!({ "system": sys, "closure": closure });
            Ok(Artifact { json, table: Some(t), verdict: Some(pass) })
        }
        Genus1Cmd::Transition { chart: c, symbolic } => {
            let cert = if *symbolic { transition_symbolic()? } else { transition(&chart(c)?)? };
            let pass = cert.verdict.is_pass();
            let mut t = Table::new(&["identity", "remainder"]);
            for i in &cert.identities {
                t.push(vec![i.name.clone(), i.remainder.clone()]);
            }
            Ok(Artifact::value(&cert)?.with_table(t).with_verdict(pass))
        }
        Genus1Cmd::Hilbert(h) => {
            let s = spec(h)?;
            let dims = hilbert_a(&s);
            let mut t = Table::new(&["n", "dim"]);
            for (n, d) in dims.iter().enumerate() {
                t.push(vec![n.to_string(), d.to_string()]);
            }
            let json = json!({ "spec": s, "regime": s.regime(), "dims": dims });
            Ok(Artifact { json, table: Some(t), verdict: None })
        }
        Genus1Cmd::Compare(h) => {
            let cmp = weighted_proj_compare(&spec(h)?)?;
            let pass = cmp.verdict.is_pass();
            let mut t = Table::new(&["n", "hilbert", "veronese"]);
            for (n, (a, b)) in cmp.hilbert.iter().zip(&cmp.veronese).enumerate() {
                t.push(vec![n.to_string(), a.to_string(), b.to_string()]);
            }
            Ok(Artifact::value(&cmp)?.with_table(t).with_verdict(pass))
        }
        Genus1Cmd::Bundle(c) => {
            let r = bundle_glue_check(&chart(c)?)?;
            let pass = r.verdict.is_pass();
            Ok(Artifact::value(&r)?.with_verdict(pass))
        }
    }
}
