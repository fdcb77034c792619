//! Rendering for the CLI verbs: text, JSON and CSV views, all built from
//! deterministically ordered data.

use serde_json::json;

use tqa_core::cohomology::{
    cohomology, diff_block, dual_diff_matrix, dual_diff_matrix_via_resolution, pair_len,
    space_to_json, CohomologySpace, DualCochain,
};
use tqa_core::error::{Limits, Result};
use tqa_core::medals::MedalClass;
use tqa_core::quiver::{ParallelPair, Path};
use tqa_core::rational::{format_rational, Rational};
use tqa_core::report::Report;
use tqa_core::TruncatedAlgebra;

use crate::Format;

pub fn paths(a: &TruncatedAlgebra, n: usize, paths: &[Path], format: Format) {
    let q = a.quiver();
    match format {
        Format::Json => {
            let names: Vec<String> = paths.iter().map(|p| q.path_string(p)).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "length": n,
                    "count": paths.len(),
                    "paths": names,
                }))
                .expect("serializable")
            );
        }
        Format::Csv => {
            println!("index,path,source,target");
            for (i, p) in paths.iter().enumerate() {
                println!(
                    "{i},{},{},{}",
                    q.path_string(p),
                    q.vertex_label(p.source()),
                    q.vertex_label(p.target())
                );
            }
        }
        Format::Text => {
            println!("paths of length {n}: {}", paths.len());
            for p in paths {
                println!(
                    "  {}  ({} -> {})",
                    q.path_string(p),
                    q.vertex_label(p.source()),
                    q.vertex_label(p.target())
                );
            }
        }
    }
}

fn render_cochain(a: &TruncatedAlgebra, z: &DualCochain) -> String {
    let q = a.quiver();
    if z.is_zero() {
        return "0".into();
    }
    z.terms()
        .map(|(p, c)| {
            format!(
                "{}:({},{})",
                format_rational(c),
                q.path_string(&p.first),
                q.path_string(&p.second)
            )
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn spaces_text(a: &TruncatedAlgebra, spaces: &[CohomologySpace]) {
    for s in spaces {
        let rows: Vec<String> = s
            .row_dims
            .iter()
            .enumerate()
            .map(|(i, d)| format!("{i}:{d}"))
            .collect();
        println!(
            "H^{} dim {}  rows [{}]",
            s.degree,
            s.total_dim(),
            rows.join(" ")
        );
        for r in &s.reps {
            let tag = if r.from_medal { " (medal sum)" } else { "" };
            println!("  row {}{}: {}", r.row, tag, render_cochain(a, &r.cochain));
        }
    }
}

pub fn dims_csv(a: &TruncatedAlgebra, spaces: &[CohomologySpace]) {
    let nn = a.n();
    let headers: Vec<String> = (0..nn).map(|i| format!("row_{i}")).collect();
    println!("degree,total,{}", headers.join(","));
    for s in spaces {
        let rows: Vec<String> = s.row_dims.iter().map(usize::to_string).collect();
        println!("{},{},{}", s.degree, s.total_dim(), rows.join(","));
    }
}

pub fn medals(a: &TruncatedAlgebra, classes: &[MedalClass], format: Format) {
    let q = a.quiver();
    let pair_str =
        |p: &ParallelPair| format!("({},{})", q.path_string(&p.first), q.path_string(&p.second));
    match format {
        Format::Json => {
            let view: Vec<_> = classes
                .iter()
                .map(|c| {
                    json!({
                        "members": c.members.iter().map(&pair_str).collect::<Vec<_>>(),
                        "plus_extremes": c.plus_extremes.iter().map(&pair_str).collect::<Vec<_>>(),
                        "minus_extremes": c.minus_extremes.iter().map(&pair_str).collect::<Vec<_>>(),
                        "is_medal": c.is_medal,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&view).expect("serializable")
            );
        }
        Format::Csv => {
            println!("class,is_medal,size,members");
            for (i, c) in classes.iter().enumerate() {
                let members: Vec<String> = c.members.iter().map(&pair_str).collect();
                println!("{i},{},{},{}", c.is_medal, c.members.len(), members.join(" "));
            }
        }
        Format::Text => {
            for (i, c) in classes.iter().enumerate() {
                println!(
                    "class {i}: {} members, medal = {}",
                    c.members.len(),
                    c.is_medal
                );
                for p in &c.members {
                    let mut marks = String::new();
                    if c.plus_extremes.contains(p) {
                        marks.push_str(" +extreme");
                    }
                    if c.minus_extremes.contains(p) {
                        marks.push_str(" -extreme");
                    }
                    println!("  {}{}", pair_str(p), marks);
                }
            }
        }
    }
}

pub fn cup_result(
    a: &TruncatedAlgebra,
    degree: usize,
    coords: &[Rational],
    cochain: &DualCochain,
    format: Format,
) {
    match format {
        Format::Json => {
            let coords: Vec<String> = coords.iter().map(format_rational).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "degree": degree,
                    "coordinates": coords,
                    "class": render_cochain(a, cochain),
                }))
                .expect("serializable")
            );
        }
        _ => {
            println!("degree {degree}");
            println!("class: {}", render_cochain(a, cochain));
        }
    }
}

pub fn oracle(rows: &[(usize, usize, usize)], format: Format) {
    match format {
        Format::Json => {
            let view: Vec<_> = rows
                .iter()
                .map(|(n, minimal, oracle)| {
                    json!({"degree": n, "minimal": minimal, "oracle": oracle, "match": minimal == oracle})
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&view).expect("serializable")
            );
        }
        Format::Csv => {
            println!("degree,minimal,oracle,match");
            for (n, minimal, oracle) in rows {
                println!("{n},{minimal},{oracle},{}", minimal == oracle);
            }
        }
        Format::Text => {
            for (n, minimal, oracle) in rows {
                let status = if minimal == oracle { "MATCH" } else { "MISMATCH" };
                println!("H^{n}: minimal {minimal}, bar oracle {oracle}  [{status}]");
            }
        }
    }
}

/// Matrix-level cross-checks: the block-formula assembly of the coboundary
/// equals the dualized resolution differential, and consecutive coboundary
/// matrices compose to zero.
pub fn matrix_cross_checks(
    a: &TruncatedAlgebra,
    max_degree: usize,
    limits: &Limits,
) -> Result<Report> {
    let mut report = Report::default();
    let mut prev = None;
    for n in 0..=max_degree {
        let fast = dual_diff_matrix(a, n, limits)?;
        let slow = dual_diff_matrix_via_resolution(a, n, limits)?;
        let witness = if fast == slow {
            None
        } else {
            Some(format!("assemblies differ at degree {n}"))
        };
        report.record("coboundary = dual of d", Some(n), fast.nnz(), witness);
        if let Some(prev) = prev {
            let prod = fast.mul_matrix(&prev);
            let witness = if prod.is_zero() {
                None
            } else {
                Some(format!("nonzero square at degree {n}"))
            };
            report.record("coboundary squares to zero", Some(n), 1, witness);
        }
        prev = Some(fast);
    }
    Ok(report)
}

/// Sort key for the reference row order of the three-vertex
/// example (source-to-inner, inner, inner-to-sink, source-to-sink); on
/// other quivers it is just a deterministic refinement of the canonical
/// order.
fn reference_key(a: &TruncatedAlgebra, p: &ParallelPair) -> (u8, ParallelPair) {
    let q = a.quiver();
    let starts_at_source = q.is_source(p.first.source());
    let ends_at_sink = q.is_sink(p.first.target());
    let class = match (starts_at_source, ends_at_sink) {
        (true, true) => {
            if p.first.is_vertex() {
                1
            } else {
                3
            }
        }
        (true, false) => 0,
        (false, true) => 2,
        (false, false) => 1,
    };
    (class, p.clone())
}

fn permuted(a: &TruncatedAlgebra, pairs: &[ParallelPair]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pairs.len()).collect();
    idx.sort_by_key(|&i| reference_key(a, &pairs[i]));
    idx
}

fn print_block(
    a: &TruncatedAlgebra,
    label: &str,
    dom: &[ParallelPair],
    cod: &[ParallelPair],
    m: &tqa_core::RationalMatrix,
) {
    let q = a.quiver();
    if dom.is_empty() || cod.is_empty() {
        return;
    }
    let dp = permuted(a, dom);
    let cp = permuted(a, cod);
    let dom_names: Vec<String> = dp.iter().map(|&i| q.path_string(&dom[i].first)).collect();
    let cod_names: Vec<String> = cp.iter().map(|&i| q.path_string(&cod[i].first)).collect();
    println!("[{label}]  columns: {}  rows: {}", dom_names.join(" "), cod_names.join(" "));
    for &r in &cp {
        let cells: Vec<String> = dp.iter().map(|&c| format_rational(&m.get(r, c))).collect();
        println!("  [{}]", cells.join(", "));
    }
}

pub fn table(
    a: &TruncatedAlgebra,
    max_degree: usize,
    limits: &Limits,
    format: Format,
) -> Result<()> {
    let nn = a.n();
    let spaces: Vec<CohomologySpace> = (0..=max_degree)
        .map(|n| cohomology(a, n, limits))
        .collect::<std::result::Result<_, _>>()?;
    match format {
        Format::Json => {
            let views: Vec<_> = spaces.iter().map(|s| space_to_json(a, s)).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&views).expect("serializable")
            );
            return Ok(());
        }
        Format::Csv => {
            dims_csv(a, &spaces);
            return Ok(());
        }
        Format::Text => {}
    }

    println!("cohomology of the {}-truncated algebra", nn);
    println!();
    for s in &spaces {
        let m = pair_len(s.degree, nn);
        println!("H^{} (pairs against length {m})  dim = {}", s.degree, s.total_dim());
        for r in &s.reps {
            let terms: Vec<(&ParallelPair, &Rational)> = r.cochain.terms().collect();
            let mut idx: Vec<usize> = (0..terms.len()).collect();
            idx.sort_by_key(|&i| reference_key(a, terms[i].0));
            let body: Vec<String> = idx
                .iter()
                .map(|&i| {
                    let (p, c) = terms[i];
                    let coeff = if c == &tqa_core::rational::one() {
                        String::new()
                    } else {
                        format!("{}*", format_rational(c))
                    };
                    format!("{coeff}{}", a.quiver().path_string(&p.first))
                })
                .collect();
            let tag = if r.from_medal { " (medal sum)" } else { "" };
            println!("  row {}{}: {}", r.row, tag, body.join(" + "));
        }
        println!();
    }

    println!("differential blocks (reference basis order):");
    // k = 0 column.
    for j in 0..=nn.saturating_sub(2) {
        let (dom, cod, m) = diff_block(a, 0, j, j + 1, limits)?;
        print_block(a, &format!("D_{j}^0"), &dom, &cod, &m);
    }
    let (dom, cod, m) = diff_block(a, 1, 0, nn - 1, limits)?;
    print_block(a, "D_0^1", &dom, &cod, &m);
    // Generic k >= 1 column, shown at k = 1.
    for j in 0..=nn.saturating_sub(2) {
        let (dom, cod, m) = diff_block(a, 2, j, j + 1, limits)?;
        print_block(a, &format!("D_{j}^{{2k}}"), &dom, &cod, &m);
    }
    let (dom, cod, m) = diff_block(a, 3, 0, nn - 1, limits)?;
    print_block(a, "D_0^{2k+1}", &dom, &cod, &m);
    Ok(())
}
