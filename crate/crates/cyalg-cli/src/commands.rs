use std::path::Path;

use serde_json::{json, Value};

use cyalg::abc::{
    build_tilde, default_cap, gabriel_quiver_of_b, lemma_comp_check, AbcData, FdAlgebra,
};
use cyalg::ar_shadow::{self, knit_component, knit_labeled, path_algebra, Component};
use cyalg::dimer::{
    consistency_check, cy3_complex, perfect_matchings, Consistency, DEFAULT_MATCHING_CAP,
};
use cyalg::emit::{component_dot, quiver_dot};
use cyalg::findim::{gabriel_quiver, is_iwanaga_gorenstein, Presented};
use cyalg::linalg::fmt_q;
use cyalg::preprojective::{self, compare_qhat, corpi_b, qhat_presentation, StarProducts};
use cyalg::quiver_algebra::{
    relations_from_structure, GradedModel, GradedQuiverPresentation, NCPoly, Quiver, Twist,
};
use cyalg::sign_dg::{
    check_twisted_cy, default_window, dg_transport, dualize, koszul_complex, parse_complex,
    relation_complex, BimoduleComplex, SignDgError, TwistSpec,
};

use crate::error::CliError;
use crate::input::{self, name};
use crate::report::Report;
use crate::{PresOpts, Window};

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn arrows_json(q: &Quiver) -> Value {
    Value::Array(
        q.arrows()
            .iter()
            .map(|a| {
                json!([
                    a.name,
                    q.vertex_name(a.source),
                    q.vertex_name(a.target),
                    a.degree
                ])
            })
            .collect(),
    )
}

fn quiver_lines(r: &mut Report, title: &str, q: &Quiver) {
    r.line(format!(
        "{title}: {} vertices, {} arrows",
        q.num_vertices(),
        q.num_arrows()
    ));
    for a in q.arrows() {
        r.line(format!(
            "  {}: {} -> {}",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        ));
    }
}

fn polys(q: &Quiver, ps: &[NCPoly]) -> Vec<String> {
    ps.iter().map(|p| p.display(q)).collect()
}

fn a_invariant(
    pres: &GradedQuiverPresentation,
    a: Option<usize>,
    file: &str,
) -> Result<usize, CliError> {
    match (a, pres.cy) {
        (Some(0), _) => Err(CliError::Input("--a must be positive".into())),
        (Some(a), _) => Ok(a),
        (None, Some(cy)) if cy.a_invariant > 0 => Ok(cy.a_invariant as usize),
        _ => Err(CliError::Input(format!(
            "{file}: no positive a-invariant declared; pass --a"
        ))),
    }
}

fn abc_data(
    pres: &GradedQuiverPresentation,
    a: usize,
    cap: Option<u32>,
    file: &str,
) -> Result<AbcData, CliError> {
    AbcData::new(pres, a, cap.unwrap_or_else(|| default_cap(a))).map_err(|e| CliError::abc(file, e))
}

pub fn dims(opts: &PresOpts, w: Window) -> Result<Report, CliError> {
    let file = name(&opts.file);
    if w.hi > 0 {
        return Err(CliError::Input("window must lie in degrees <= 0".into()));
    }
    let pres = input::presentation(opts)?;
    let model = GradedModel::exact_down_to(&pres, w.lo, opts.cap)
        .map_err(|e| CliError::quiver(&file, e))?;
    let table = model.dimension_table(w.lo, w.hi);
    let mut r = Report::new("dims", &file);
    let totals: Vec<usize> = table
        .rows
        .iter()
        .map(|(_, m)| m.iter().flatten().sum())
        .collect();
    for ((deg, m), t) in table.rows.iter().zip(&totals) {
        if pres.quiver.num_vertices() == 1 {
            r.line(format!("degree {deg}: {t}"));
        } else {
            let rows: Vec<String> = m.iter().map(|row| join(row)).collect();
            r.line(format!("degree {deg}: {t} [{}]", rows.join("; ")));
        }
    }
    r.line(format!("totals: {}", join(&totals)));
    r.data = json!({ "table": to_json(&table), "totals": totals });
    Ok(r)
}

fn recovered_relations(
    b: &FdAlgebra,
    max_len: usize,
    file: &str,
) -> Result<(Quiver, Vec<NCPoly>), CliError> {
    let g = gabriel_quiver_of_b(b).map_err(|e| CliError::abc(file, e))?;
    let rels = relations_from_structure(&Presented::from_gabriel(b, &g), &g.quiver, max_len)
        .map_err(|e| CliError::quiver(file, e))?;
    Ok((g.quiver, rels))
}

pub fn build_abc(opts: &PresOpts, a: Option<usize>, max_len: usize) -> Result<Report, CliError> {
    let file = name(&opts.file);
    let pres = input::presentation(opts)?;
    let a = a_invariant(&pres, a, &file)?;
    let data = abc_data(&pres, a, opts.cap, &file)?;
    let b = data.trivial_extension();
    let ga = gabriel_quiver(&data.algebra).map_err(|e| CliError::findim(&file, e))?;
    let lemma =
        lemma_comp_check(&data.algebra, &data.bimodule, &b).map_err(|e| CliError::abc(&file, e))?;
    let (gb, rels) = recovered_relations(&b, max_len, &file)?;
    let mut r = Report::new("build-abc", &file);
    r.line(format!("a = {a}"));
    r.line(format!(
        "dim A = {}, dim U = {}, dim B = {}",
        data.algebra.dim(),
        data.bimodule.dim(),
        b.dim()
    ));
    quiver_lines(&mut r, "Gabriel quiver of A", &ga.quiver);
    quiver_lines(&mut r, "Gabriel quiver of B", &gb);
    r.line(format!("relations of B up to length {max_len}:"));
    let shown = polys(&gb, &rels);
    for p in &shown {
        r.line(format!("  {p}"));
    }
    r.line(format!(
        "radical of B is J_A + U, J/J^2 splits by corners: {}",
        lemma.holds
    ));
    r.pass = lemma.holds;
    r.data = json!({
        "a": a,
        "dim_a": data.algebra.dim(),
        "dim_u": data.bimodule.dim(),
        "dim_b": b.dim(),
        "gabriel_a": { "vertices": ga.quiver.vertex_names(), "arrows": arrows_json(&ga.quiver) },
        "gabriel_b": { "vertices": gb.vertex_names(), "arrows": arrows_json(&gb) },
        "relations_b": shown,
        "lemma_comp": to_json(&lemma),
    });
    r.dot = Some(quiver_dot("B", &gb));
    Ok(r)
}

pub fn tilde(opts: &PresOpts, a: Option<usize>, blocks: usize) -> Result<Report, CliError> {
    let file = name(&opts.file);
    let pres = input::presentation(opts)?;
    let a = a_invariant(&pres, a, &file)?;
    let data = abc_data(&pres, a, opts.cap, &file)?;
    let t =
        build_tilde(&data.algebra, &data.bimodule, blocks).map_err(|e| CliError::abc(&file, e))?;
    let assoc = t.extension.check_associative().is_ok();
    let g = gabriel_quiver_of_b(&t.extension).map_err(|e| CliError::abc(&file, e))?;
    let mut r = Report::new("tilde", &file);
    r.line(format!("a = {a}, blocks = {blocks}"));
    r.line(format!(
        "dim Ã = {}, dim Ũ = {}, dim B̃ = {}",
        t.algebra.dim(),
        t.bimodule.dim(),
        t.extension.dim()
    ));
    r.line(format!("associative: {assoc}"));
    quiver_lines(&mut r, "Gabriel quiver of B̃", &g.quiver);
    r.pass = assoc;
    r.data = json!({
        "a": a,
        "blocks": blocks,
        "dim_a": t.algebra.dim(),
        "dim_u": t.bimodule.dim(),
        "dim_b": t.extension.dim(),
        "associative": assoc,
        "gabriel": { "vertices": g.quiver.vertex_names(), "arrows": arrows_json(&g.quiver) },
    });
    r.dot = Some(quiver_dot("B_tilde", &g.quiver));
    Ok(r)
}

fn table_lines(r: &mut Report, title: &str, t: &[Vec<Vec<usize>>]) {
    r.line(format!("{title}:"));
    for (i, row) in t.iter().enumerate() {
        for (j, dims) in row.iter().enumerate() {
            r.line(format!("  {i} -> {j}: {}", join(dims)));
        }
    }
}

pub fn qhat(
    path: &Path,
    n: usize,
    max_len: u32,
    literal: bool,
    cap: Option<u32>,
) -> Result<Report, CliError> {
    let file = name(path);
    let q = input::quiver_file(path)?.quiver;
    let stars = if literal {
        StarProducts::ThroughArrows
    } else {
        StarProducts::ThroughArrowsAndVertices
    };
    let qh = qhat_presentation(&q, n, stars).map_err(|e| CliError::preproj(&file, e))?;
    let c = corpi_b(&q, n, cap.unwrap_or_else(|| preprojective::default_cap(&q)))
        .map_err(|e| CliError::preproj(&file, e))?;
    let cmp = compare_qhat(&qh, &c, max_len).map_err(|e| CliError::preproj(&file, e))?;
    let qq = &qh.presentation.quiver;
    let mut r = Report::new("qhat", &file);
    r.line(format!(
        "n = {n}, path length <= {max_len}, star products: {stars:?}"
    ));
    quiver_lines(&mut r, "Q̂", qq);
    r.line("relations:");
    for p in polys(qq, &qh.presentation.relations) {
        r.line(format!("  {p}"));
    }
    table_lines(&mut r, "Q̂ dimensions by path length", &cmp.qhat_table);
    table_lines(
        &mut r,
        "block algebra dimensions by path length",
        &cmp.block_table,
    );
    r.line(format!("tables match: {}", cmp.tables_match()));
    r.line(format!("ideals agree: {}", cmp.ideals.agree()));
    r.pass = cmp.holds();
    r.data = json!({
        "n": n,
        "max_length": max_len,
        "quiver": { "vertices": qq.vertex_names(), "arrows": arrows_json(qq) },
        "relations": polys(qq, &qh.presentation.relations),
        "qhat_table": cmp.qhat_table,
        "block_table": cmp.block_table,
        "tables_match": cmp.tables_match(),
        "qhat_residues": polys(qq, &cmp.ideals.lhs_residues),
        "block_residues": polys(qq, &cmp.ideals.rhs_residues),
    });
    r.dot = Some(quiver_dot("Qhat", qq));
    Ok(r)
}

pub fn corpi(path: &Path, n: usize, cap: Option<u32>) -> Result<Report, CliError> {
    let file = name(path);
    let q = input::quiver_file(path)?.quiver;
    let c = corpi_b(&q, n, cap.unwrap_or_else(|| preprojective::default_cap(&q)))
        .map_err(|e| CliError::preproj(&file, e))?;
    let g = gabriel_quiver_of_b(c.algebra()).map_err(|e| CliError::abc(&file, e))?;
    let mut r = Report::new("corpi", &file);
    r.line(format!("n = {n}"));
    r.line(format!(
        "dim A = {}, dim U = {}, dim B = {}",
        c.data.algebra.dim(),
        c.bimodule().dim(),
        c.algebra().dim()
    ));
    quiver_lines(&mut r, "Gabriel quiver", &g.quiver);
    r.data = json!({
        "n": n,
        "dim_a": c.data.algebra.dim(),
        "dim_u": c.bimodule().dim(),
        "dim_b": c.algebra().dim(),
        "gabriel": { "vertices": g.quiver.vertex_names(), "arrows": arrows_json(&g.quiver) },
    });
    r.dot = Some(quiver_dot("corpi", &g.quiver));
    Ok(r)
}

pub fn dimer_validate(path: &Path) -> Result<Report, CliError> {
    let file = name(path);
    let d = input::dimer_file(path)?;
    let mut r = Report::new("dimer validate", &file);
    match d.validate() {
        Ok(t) => {
            r.line(format!(
                "V = {}, E = {}, F = {}, chi = {}",
                t.vertices,
                t.edges,
                t.faces.len(),
                t.chi
            ));
            for (i, f) in t.faces.iter().enumerate() {
                let edges: Vec<&str> = f
                    .darts
                    .iter()
                    .map(|&(e, _)| d.edge(e).name.as_str())
                    .collect();
                r.line(format!("  face {}: {}", i + 1, edges.join(" ")));
            }
            r.data = to_json(&t);
        }
        Err(e @ cyalg::dimer::DimerError::NotTorus { .. }) => {
            r.line(e.to_string());
            r.pass = false;
            r.data = json!({ "error": e.to_string() });
        }
        Err(e) => return Err(CliError::dimer(&file, e)),
    }
    Ok(r)
}

pub fn dimer_qp(path: &Path) -> Result<Report, CliError> {
    let file = name(path);
    let d = input::dimer_file(path)?;
    let qp = cyalg::dimer::dual_qp(&d).map_err(|e| CliError::dimer(&file, e))?;
    let mut r = Report::new("dimer qp", &file);
    quiver_lines(&mut r, "dual quiver", &qp.quiver);
    r.line(format!("W = {}", qp.potential_display()));
    r.data = json!({
        "vertices": qp.quiver.vertex_names(),
        "arrows": arrows_json(&qp.quiver),
        "potential": qp.potential_display(),
        "white_cycles": qp.white_cycles,
        "black_cycles": qp.black_cycles,
    });
    r.dot = Some(quiver_dot("QP", &qp.quiver));
    Ok(r)
}

pub fn dimer_consistency(path: &Path) -> Result<Report, CliError> {
    let file = name(path);
    let d = input::dimer_file(path)?;
    let c = consistency_check(&d).map_err(|e| CliError::dimer(&file, e))?;
    let mut r = Report::new("dimer consistency", &file);
    match &c {
        Consistency::Feasible { charge, margin } => {
            let verified = charge.verify(&d).map_err(|e| CliError::dimer(&file, e))?;
            for (e, v) in d.edges().iter().zip(&charge.values) {
                r.line(format!("R({}) = {}", e.name, fmt_q(v)));
            }
            r.line(format!(
                "margin = {}, verified by substitution: {verified}",
                fmt_q(margin)
            ));
            r.pass = verified;
        }
        Consistency::Infeasible { certificate } => {
            let verified = certificate
                .verify(&d)
                .map_err(|e| CliError::dimer(&file, e))?;
            r.line("no R-charge exists");
            r.line(format!("certificate verified: {verified}"));
            r.pass = false;
        }
    }
    r.data = to_json(&c);
    Ok(r)
}

pub fn dimer_matchings(path: &Path) -> Result<Report, CliError> {
    let file = name(path);
    let d = input::dimer_file(path)?;
    let m = perfect_matchings(&d, DEFAULT_MATCHING_CAP);
    let mut r = Report::new("dimer matchings", &file);
    r.line(format!(
        "{} perfect matchings{}",
        m.matchings.len(),
        if m.truncated { " (truncated)" } else { "" }
    ));
    let named: Vec<Vec<&str>> = m
        .matchings
        .iter()
        .map(|pm| pm.iter().map(|&e| d.edge(e).name.as_str()).collect())
        .collect();
    for (i, pm) in named.iter().enumerate() {
        r.line(format!("  {}: {}", i + 1, pm.join(" ")));
    }
    r.pass = !m.truncated;
    r.data = json!({ "count": m.matchings.len(), "truncated": m.truncated, "matchings": named });
    Ok(r)
}

pub fn dimer_jacobian(opts: &PresOpts, max_degree: i64) -> Result<Report, CliError> {
    let file = name(&opts.file);
    let g = input::graded_dimer(opts)?;
    let pres = input::presentation(opts)?;
    let q = &pres.quiver;
    let homogeneous = pres
        .relations
        .iter()
        .all(|p| p.homogeneous_degree(q).is_some());
    let cplx = cy3_complex(&g.qp, &g.grading, opts.cap).map_err(|e| CliError::dimer(&file, e))?;
    let model = GradedModel::exact_down_to(&pres, -max_degree, opts.cap)
        .map_err(|e| CliError::quiver(&file, e))?;
    let totals: Vec<usize> = (0..=max_degree).map(|k| model.total_dim(-k)).collect();
    let a = pres.cy.map(|c| c.a_invariant).unwrap_or_default();
    let mut r = Report::new("dimer jacobian", &file);
    let degrees: Vec<String> = g
        .model
        .edges()
        .iter()
        .zip(&g.grading.degrees)
        .map(|(e, d)| format!("{}:{d}", e.name))
        .collect();
    r.line(format!("edge degrees: {}", degrees.join(" ")));
    r.line(format!("a-invariant = {a}"));
    quiver_lines(&mut r, "quiver", q);
    r.line("relations:");
    for p in polys(q, &pres.relations) {
        r.line(format!("  {p}"));
    }
    r.line(format!("relations homogeneous: {homogeneous}"));
    r.line(format!(
        "CY-3 complex ranks {}, d∘d = 0",
        join(&cplx.ranks())
    ));
    r.line(format!(
        "graded dimensions 0..-{max_degree}: {}",
        join(&totals)
    ));
    r.pass = homogeneous;
    r.data = json!({
        "degrees": g.grading.degrees,
        "a_invariant": a,
        "arrows": arrows_json(q),
        "relations": polys(q, &pres.relations),
        "homogeneous": homogeneous,
        "complex_ranks": cplx.ranks(),
        "totals": totals,
    });
    r.dot = Some(quiver_dot("jacobian", q));
    Ok(r)
}

fn parse_twist(spec: &str, q: &Quiver) -> Result<Twist, CliError> {
    match spec {
        "id" => Ok(Twist::identity(q)),
        "sigma" => Ok(Twist::sigma(q)),
        path => {
            let text = input::read(Path::new(path))?;
            Twist::parse(q, &text).map_err(|e| CliError::quiver(path, e))
        }
    }
}

/// Built-in resolution: the CY-3 complex for dimers, else the Koszul
/// complex for commutative rings and the one-relation complex otherwise.
fn resolution(
    opts: &PresOpts,
    pres: &GradedQuiverPresentation,
) -> Result<BimoduleComplex, CliError> {
    let file = name(&opts.file);
    if input::is_dimer(&opts.file) {
        let g = input::graded_dimer(opts)?;
        return cy3_complex(&g.qp, &g.grading, opts.cap).map_err(|e| CliError::dimer(&file, e));
    }
    match koszul_complex(pres) {
        Err(SignDgError::NotCommutative(_)) => relation_complex(pres),
        other => other,
    }
    .map_err(|e| CliError::sign_dg(&file, e))
}

pub fn cy_check(
    opts: &PresOpts,
    twist: &str,
    window: Option<Window>,
    complex: Option<&Path>,
) -> Result<Report, CliError> {
    let file = name(&opts.file);
    let pres = input::presentation(opts)?;
    let cplx = match complex {
        Some(p) => {
            parse_complex(&pres, &input::read(p)?).map_err(|e| CliError::sign_dg(&name(p), e))?
        }
        None => resolution(opts, &pres)?,
    };
    let t = parse_twist(twist, &pres.quiver)?;
    let spec = TwistSpec::from_cy(&pres, t).map_err(|e| CliError::sign_dg(&file, e))?;
    let win = match window {
        Some(w) => (w.lo, w.hi),
        None if input::is_dimer(&opts.file) => (-(spec.internal.max(0) + 1), 0),
        None => default_window(&pres).map_err(|e| CliError::sign_dg(&file, e))?,
    };
    let v =
        check_twisted_cy(&cplx, &spec, win, opts.cap).map_err(|e| CliError::sign_dg(&file, e))?;
    let mut r = Report::new("cy-check", &file);
    r.line(format!(
        "twist = {twist}, shift [{}] = [{} + {}]",
        v.total_shift, v.position, v.a_invariant
    ));
    r.line(format!(
        "window {}..{}, resolution ranks {}",
        v.window.0,
        v.window.1,
        join(&cplx.ranks())
    ));
    let nonzero: Vec<String> = v
        .rows
        .iter()
        .filter(|row| row.total() > 0)
        .map(|row| {
            format!(
                "H^{} in degree {}: {}",
                row.position,
                row.degree,
                row.total()
            )
        })
        .collect();
    for l in nonzero {
        r.line(format!("  {l}"));
    }
    r.line(format!(
        "cohomology dimensions match: {}",
        v.dimensions_match
    ));
    for ratio in &v.ratios {
        r.line(format!(
            "  {}: expected {}, measured {}",
            ratio.arrow,
            ratio.expected,
            ratio.measured.as_deref().unwrap_or("-")
        ));
    }
    r.line(format!("twist matches: {}", v.twist_matches));
    r.line(format!("generator acts freely: {}", v.action_free));
    if let Some(m) = &v.first_mismatch {
        r.line(format!("first mismatch: {m}"));
    }
    r.pass = v.pass;
    r.data = to_json(&v);
    Ok(r)
}

pub fn complex(
    path: &Path,
    over: &Path,
    transport: bool,
    dual: bool,
    cap: Option<u32>,
) -> Result<Report, CliError> {
    let file = name(path);
    let pres = input::quiver_file(over)?;
    let mut c =
        parse_complex(&pres, &input::read(path)?).map_err(|e| CliError::sign_dg(&file, e))?;
    if transport {
        c = dg_transport(&c).map_err(|e| CliError::sign_dg(&file, e))?;
    }
    if dual {
        c = dualize(&c).map_err(|e| CliError::sign_dg(&file, e))?;
    }
    let defect = c
        .check_square_zero(&pres, cap)
        .map_err(|e| CliError::sign_dg(&file, e))?;
    let mut r = Report::new("complex", &file);
    r.line(format!("ranks {}", join(&c.ranks())));
    for l in c.to_text().lines() {
        r.line(l);
    }
    match &defect {
        None => r.line("d∘d = 0"),
        Some(s) => {
            r.line(format!("d∘d != 0: {s}"));
            r.pass = false;
        }
    }
    r.data = json!({ "ranks": c.ranks(), "text": c.to_text(), "square_zero": defect.is_none() });
    Ok(r)
}

pub fn ig_check(
    opts: &PresOpts,
    d: usize,
    algebra: Option<&str>,
    a: Option<usize>,
    blocks: usize,
) -> Result<Report, CliError> {
    let file = name(&opts.file);
    let pres = input::presentation(opts)?;
    let kind = algebra.unwrap_or(if pres.cy.is_some() { "b" } else { "path" });
    let alg = match kind {
        "path" => {
            if !pres.relations.is_empty() {
                return Err(CliError::Input(format!(
                    "{file}: `path` needs a quiver without relations"
                )));
            }
            path_algebra(&pres.quiver).map_err(|e| CliError::ar(&file, e))?
        }
        "b" => abc_data(&pres, a_invariant(&pres, a, &file)?, opts.cap, &file)?.trivial_extension(),
        "tilde" => {
            let data = abc_data(&pres, a_invariant(&pres, a, &file)?, opts.cap, &file)?;
            build_tilde(&data.algebra, &data.bimodule, blocks)
                .map_err(|e| CliError::abc(&file, e))?
                .extension
        }
        "corpi" => {
            let q = &pres.quiver;
            let cap = opts.cap.unwrap_or_else(|| preprojective::default_cap(q));
            corpi_b(q, blocks, cap)
                .map_err(|e| CliError::preproj(&file, e))?
                .algebra()
                .clone()
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown algebra `{other}`; use b, tilde, corpi or path"
            )))
        }
    };
    let ig = is_iwanaga_gorenstein(&alg, d, d + 4).map_err(|e| CliError::findim(&file, e))?;
    let mut r = Report::new("ig-check", &file);
    r.line(format!("algebra {kind}, dim {}", alg.dim()));
    r.line(format!(
        "injective dimension: left {}, right {}; d = {d}",
        ig.left, ig.right
    ));
    r.line(format!("{d}-Iwanaga-Gorenstein: {}", ig.holds));
    r.pass = ig.holds;
    r.data = json!({ "algebra": kind, "dim": alg.dim(), "report": to_json(&ig) });
    Ok(r)
}

fn component_lines(r: &mut Report, c: &Component) {
    for x in &c.vertices {
        let inj = if x.injective { " injective" } else { "" };
        r.line(format!("  {} {}{inj}", x.label, x.dim));
    }
    for &(s, t, m) in &c.arrows {
        let mult = if m > 1 {
            format!(" (x{m})")
        } else {
            String::new()
        };
        r.line(format!(
            "  {} -> {}{mult}",
            c.vertices[s].label, c.vertices[t].label
        ));
    }
}

pub fn knit(opts: &PresOpts, a: Option<usize>, steps: usize) -> Result<Report, CliError> {
    let file = name(&opts.file);
    let pres = input::presentation(opts)?;
    let c = if pres.cy.is_some() || a.is_some() {
        let a = a_invariant(&pres, a, &file)?;
        knit_labeled(&pres, a, steps).map_err(|e| CliError::ar(&file, e))?
    } else if pres.relations.is_empty() {
        let alg = path_algebra(&pres.quiver).map_err(|e| CliError::ar(&file, e))?;
        knit_component(&alg, steps).map_err(|e| CliError::ar(&file, e))?
    } else {
        return Err(CliError::Input(format!(
            "{file}: knit needs a path algebra or CY data"
        )));
    };
    let additive = c.mesh_additive();
    let mut r = Report::new("knit", &file);
    r.line(format!(
        "{} modules, {} arrows, closed: {}",
        c.vertices.len(),
        c.arrows.len(),
        c.closed
    ));
    component_lines(&mut r, &c);
    r.line(format!("mesh additivity: {additive}"));
    r.pass = additive;
    r.dot = Some(component_dot("AR", &c));
    r.data = to_json(&c);
    Ok(r)
}

pub fn verify_root(
    opts: &PresOpts,
    a: Option<usize>,
    d: Option<usize>,
    steps: usize,
) -> Result<Report, CliError> {
    let file = name(&opts.file);
    let pres = input::presentation(opts)?;
    let a = a_invariant(&pres, a, &file)?;
    let d = match (d, pres.cy) {
        (Some(d), _) => d,
        (None, Some(cy)) if cy.dimension >= 2 => cy.dimension as usize - 1,
        _ => {
            return Err(CliError::Input(format!(
                "{file}: no CY dimension declared; pass --d"
            )))
        }
    };
    let rep = ar_shadow::verify_root(&pres, a, d, steps).map_err(|e| CliError::ar(&file, e))?;
    let mut r = Report::new("verify-root", &file);
    r.line(format!("a = {a}, d = {d}, steps = {steps}"));
    r.line(format!("label level F^a = ν_d: {}", rep.label_level));
    r.line(format!(
        "projectives of A^op match R(-i), i < a: {}",
        rep.coherent
    ));
    for c in &rep.checks {
        let mark = if c.ok { "ok" } else { "MISMATCH" };
        r.line(format!(
            "  {}: expected {}, graded dims {} {mark}",
            c.label, c.expected, c.got
        ));
    }
    if let Some(k) = rep.knit_agrees {
        r.line(format!("knitted component agrees: {k}"));
    }
    r.pass = rep.pass;
    r.data = to_json(&rep);
    if d == 1 {
        let c = knit_labeled(&pres, a, steps.div_ceil(a)).map_err(|e| CliError::ar(&file, e))?;
        r.dot = Some(component_dot("AR", &c));
    }
    Ok(r)
}
