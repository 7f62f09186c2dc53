//! Plain-text reports.

use std::fmt::Write as _;

use ccc_core::chains::HomologyGroup;
use ccc_core::duality::{DualityReport, PairingReport};
use ccc_core::poset::ValidationReport;
use ccc_core::subdivision::BaryTower;
use ccc_core::{Ccc, Flag};

/// One line per degree, `H_<i> = <group>`; `upper` switches to `H^<i>`.
pub fn homology(groups: &[HomologyGroup], upper: bool) -> String {
    let mark = if upper { '^' } else { '_' };
    groups
        .iter()
        .enumerate()
        .map(|(i, g)| format!("H{mark}{i} = {g}\n"))
        .collect()
}

/// The same data as `key=value` lines.
pub fn homology_kv(groups: &[HomologyGroup], upper: bool) -> String {
    let prefix = if upper { "cohomology" } else { "homology" };
    let mut out = String::new();
    for (i, g) in groups.iter().enumerate() {
        let torsion: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{prefix}.{i}.betti={}", g.betti);
        let _ = writeln!(out, "{prefix}.{i}.torsion={}", torsion.join(","));
    }
    out
}

pub fn validation(report: &ValidationReport) -> String {
    if report.passed() {
        return String::from("all axioms hold\n");
    }
    report
        .violations
        .iter()
        .map(|v| format!("axiom {}: {}\n", v.axiom, v.message))
        .collect()
}

pub fn info(s: &Ccc) -> String {
    let mut out = String::new();
    let fv: Vec<String> = s.face_vector().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "cells: {}", s.len());
    let _ = writeln!(out, "face vector: ({})", fv.join(","));
    let _ = writeln!(out, "euler characteristic: {}", s.euler_characteristic());
    if let Ok(class) = s.classify() {
        let _ = writeln!(out, "dimension: {}", class.dimension);
        let _ = writeln!(out, "equidimensional: {}", yes(class.equidimensional));
        let _ = writeln!(out, "nonsingular: {}", yes(class.nonsingular));
        let _ = writeln!(out, "boundary cells: {}", class.boundary.len());
        let _ = writeln!(out, "manifold-like: {}", yes(class.manifold_like));
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn odd_cycle(cycle: &[Flag]) -> String {
    let mut out = format!("flag graph is not bipartite: closed walk of {} flags\n", cycle.len());
    for f in cycle {
        let _ = writeln!(out, "  {f}");
    }
    out
}

/// Hypothesis checklist, then the table when the hypotheses hold.
pub fn duality(report: &DualityReport) -> String {
    let mut out = String::new();
    for h in &report.hypotheses {
        let mark = if h.passed { "ok  " } else { "FAIL" };
        if h.detail.is_empty() {
            let _ = writeln!(out, "[{mark}] {}", h.name);
        } else {
            let _ = writeln!(out, "[{mark}] {}: {}", h.name, h.detail);
        }
    }
    if let Some(st) = &report.stages {
        let _ = writeln!(out, "[{}] homology equals that of the barycentric subdivision", ok(st.subdivided_homology == st.homology));
        let _ = writeln!(out, "[{}] barycentric subdivisions of the complex and its dual coincide", ok(st.subdivisions_agree));
        let _ = writeln!(out, "[{}] dual incidence signs equal primal signs", ok(st.sign_law));
        let _ = writeln!(out, "[{}] star map carries boundary to dual coboundary", ok(st.star_intertwines));
        let n = report.dimension;
        let dual_ok = (0..=n).all(|i| st.dual_homology[i] == st.cohomology[n - i]);
        let _ = writeln!(out, "[{}] dual homology equals complementary cohomology", ok(dual_ok));
        out.push('\n');
        out.push_str(&report.table());
        let verdict = if report.confirmed() { "confirmed" } else { "NOT confirmed" };
        let _ = writeln!(out, "duality {verdict}");
    }
    out
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok  "
    } else {
        "FAIL"
    }
}

pub fn stokes(report: &PairingReport, matrices: &[(usize, ccc_core::chains::IntMatrix)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "basis pairs checked: {}", report.basis_pairs);
    let _ = writeln!(out, "random pairs checked: {}", report.random_pairs);
    let _ = writeln!(out, "integrals checked: {}", report.integrals);
    let _ = writeln!(out, "failures: {}", report.failures.len());
    for f in &report.failures {
        let _ = writeln!(out, "  sigma = {}, other = {}: {} != {}", f.sigma, f.other, f.left, f.right);
    }
    for (degree, m) in matrices {
        let _ = writeln!(out, "pairing matrix in degree {degree} ({}x{}):", m.rows(), m.cols());
        for r in 0..m.rows() {
            let row: Vec<String> = m.row(r).iter().map(|v| format!("{v:>3}")).collect();
            let _ = writeln!(out, "  [{}]", row.join(""));
        }
        if let Some(det) = m.determinant() {
            let _ = writeln!(out, "  determinant {det}");
        }
    }
    out
}

/// `stage point cells`, one line per stellar move.
pub fn manifest(tower: &BaryTower) -> String {
    let mut out = String::from("# stage point cells\n");
    for (k, st) in tower.stages.iter().enumerate() {
        let _ = writeln!(out, "{} {} {}", k + 1, st.point, st.complex.len());
    }
    out
}
