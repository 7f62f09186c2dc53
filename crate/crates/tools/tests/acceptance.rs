//! Acceptance checks, one PASS/FAIL line per criterion. Every comparison is
//! exact integer equality (tolerance 0). Exits non-zero on any failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use ccc_core::chains::{cells_acyclic, h0_components, ChainComplex, HomologyGroup};
use ccc_core::duality::{dual_orientations, intersection_matrix, stokes_check, verify_duality};
use ccc_core::flags::{flag_graph, is_orientable, orient, orient_all_cells, Orientability, SignTable};
use ccc_core::poset::Axiom;
use ccc_core::subdivision::{
    barycentric, barycentric_via_stellar, compare_phi_bigphi, stellar, verify_subdivision_invariance,
};
use ccc_core::{fixtures, Ccc, CellId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn base_fixtures() -> Vec<(String, Ccc)> {
    let mut out = vec![
        ("two_triangles".to_string(), fixtures::two_triangles()),
        ("tetrahedron_solid".to_string(), fixtures::tetrahedron_solid()),
        ("tetrahedron_boundary".to_string(), fixtures::tetrahedron_boundary()),
        ("mobius3".to_string(), fixtures::mobius3()),
        ("torus9".to_string(), fixtures::torus9()),
    ];
    out.extend((0..=4).map(|n| (format!("simplex({n})"), fixtures::simplex(n))));
    out
}

fn every_fixture() -> Vec<(String, Ccc)> {
    let mut out = base_fixtures();
    out.push(("klein9".to_string(), fixtures::klein9()));
    out.push(("square".to_string(), fixtures::square()));
    out.push(("square_pentagon".to_string(), fixtures::square_pentagon()));
    out.push(("disjoint_edges".to_string(), fixtures::disjoint_edges()));
    out.push(("disjoint_triangles".to_string(), fixtures::disjoint_triangles()));
    out
}

fn positive_rank(s: &Ccc) -> Vec<CellId> {
    s.cells().iter().filter(|c| s.rank(c) != Some(0)).cloned().collect()
}

fn homology(s: &Ccc, t: &SignTable) -> Result<Vec<HomologyGroup>, String> {
    Ok(ChainComplex::new(s, t).map_err(|e| e.to_string())?.homology())
}

fn valid(label: &str, s: &Ccc) -> Result<(), String> {
    let report = s.validate_axioms();
    ensure!(report.passed(), "{label}: {:?}", report.violations.first());
    Ok(())
}

fn axioms() -> Outcome {
    let mut checked = 0;
    let edge = fixtures::simplex(1);
    for (name, s) in base_fixtures() {
        valid(&name, &s)?;
        checked += 1;
        let signs = orient_all_cells(&s).map_err(|e| e.to_string())?;
        for x in positive_rank(&s) {
            let sub = stellar(&s, &x, &signs).map_err(|e| e.to_string())?;
            valid(&format!("{name} at {x}"), &sub.complex)?;
            checked += 1;
        }
        valid(&format!("barycentric {name}"), &barycentric(&s).map_err(|e| e.to_string())?.0)?;
        let product = s.product(&edge);
        valid(&format!("{name} x edge"), &product)?;
        checked += 2;
        let signs = orient_all_cells(&product).map_err(|e| e.to_string())?;
        for x in positive_rank(&product) {
            let sub = stellar(&product, &x, &signs).map_err(|e| e.to_string())?;
            valid(&format!("{name} x edge at {x}"), &sub.complex)?;
            checked += 1;
        }
    }
    let bad = fixtures::bad_triple_edge().validate_axioms();
    let witness = bad.violations_of(Axiom::Diamond).next().map(|v| v.witnesses.clone());
    ensure!(
        witness == Some(vec![CellId::base("v"), CellId::base("x")]),
        "counterexample witness {witness:?}"
    );
    Ok(format!("{checked} complexes valid; counterexample caught at [v, x] by axiom 4"))
}

fn orientability() -> Outcome {
    let mobius = fixtures::mobius3();
    let Orientability::OddCycle(cycle) = is_orientable(&mobius).map_err(|e| e.to_string())? else {
        return Err("mobius3 accepted".into());
    };
    let graph = flag_graph(&mobius).map_err(|e| e.to_string())?;
    ensure!(cycle.len() % 2 == 1, "cycle of even length {}", cycle.len());
    for (k, f) in cycle.iter().enumerate() {
        let next = &cycle[(k + 1) % cycle.len()];
        ensure!(graph.flags.contains(f), "{f} is not a flag");
        ensure!(f.differences(next) == Some(1), "{f} and {next} are not adjacent");
    }
    let expected = [
        ("two_triangles", fixtures::two_triangles(), 12),
        ("tetrahedron_solid", fixtures::tetrahedron_solid(), 24),
        ("tetrahedron_boundary", fixtures::tetrahedron_boundary(), 24),
        ("torus9", fixtures::torus9(), 72),
    ];
    for (name, s, count) in expected {
        let graph = flag_graph(&s).map_err(|e| e.to_string())?;
        ensure!(graph.flags.len() == count, "{name}: {} flags", graph.flags.len());
        let w = orient(&s).map_err(|e| format!("{name}: {e}"))?;
        for (i, nbrs) in graph.neighbours.iter().enumerate() {
            for &j in nbrs {
                ensure!(
                    w.get(&graph.flags[i]) == w.get(&graph.flags[j]).map(|c| -c),
                    "{name}: adjacent flags {} and {} share a colour",
                    graph.flags[i],
                    graph.flags[j]
                );
            }
        }
    }
    Ok(format!("mobius3 odd cycle of {} flags verified; flag counts 12/24/24/72", cycle.len()))
}

fn sound(label: &str, s: &Ccc, t: &SignTable) -> Result<(), String> {
    let cc = ChainComplex::new(s, t).map_err(|e| e.to_string())?;
    ensure!(cc.is_chain_complex(), "{label}: boundary does not square to zero");
    for d in 0..cc.degrees().saturating_sub(1) {
        let square = cc.coboundary_matrix(d + 1).checked_mul(&cc.coboundary_matrix(d));
        ensure!(square.is_some_and(|m| m.is_zero()), "{label}: coboundary squares to non-zero in degree {d}");
    }
    ensure!(t.check_rhombus(s).is_ok(), "{label}: rhombus identity fails at {:?}", t.check_rhombus(s));
    Ok(())
}

fn chain_soundness() -> Outcome {
    let fixtures = every_fixture();
    for (name, s) in &fixtures {
        sound(name, s, &orient_all_cells(s).map_err(|e| e.to_string())?)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..20 {
        let (name, s) = fixtures.choose(&mut rng).unwrap();
        let signs = orient_all_cells(s).map_err(|e| e.to_string())?;
        let mut current = (s.clone(), signs);
        let moves = rng.gen_range(1..=3);
        let mut path = Vec::new();
        for _ in 0..moves {
            let candidates = positive_rank(&current.0);
            let Some(x) = candidates.choose(&mut rng) else { break };
            let sub = stellar(&current.0, x, &current.1).map_err(|e| e.to_string())?;
            path.push(x.to_string());
            current = (sub.complex, sub.signs);
        }
        sound(&format!("sample {k}: {name} at {}", path.join(", ")), &current.0, &current.1)?;
    }
    Ok(format!("{} fixtures and 20 random stellar subdivisions", fixtures.len()))
}

/// Vertex lists of every cell, indexed by position among the vertices.
fn simplices(s: &Ccc) -> Vec<Vec<usize>> {
    let vertices: Vec<&CellId> = s.cells_of_rank(0).collect();
    let mut out: Vec<Vec<usize>> = s
        .cells()
        .iter()
        .map(|c| {
            let closure = s.closure([c]).unwrap();
            vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| closure.contains(**v))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    out.sort();
    out
}

fn homology_values() -> Outcome {
    let h = |s: &Ccc| homology(s, &orient_all_cells(s).map_err(|e| e.to_string())?);
    let z = HomologyGroup::free;
    ensure!(h(&fixtures::simplex(0))? == vec![z(1)], "point");
    ensure!(h(&fixtures::tetrahedron_boundary())? == vec![z(1), z(0), z(1)], "tetrahedron boundary");
    ensure!(h(&fixtures::torus9())? == vec![z(1), z(2), z(1)], "torus9");
    let solid = fixtures::tetrahedron_solid();
    let signs = orient_all_cells(&solid).map_err(|e| e.to_string())?;
    ensure!(ChainComplex::augmented(&solid, &signs).unwrap().is_acyclic(), "solid tetrahedron not acyclic");
    let boundary = fixtures::tetrahedron_boundary().cells().iter().cloned().collect();
    let relative = ChainComplex::relative(&solid, &signs, &boundary).unwrap().homology();
    ensure!(relative == vec![z(0), z(0), z(0), z(1)], "relative pair gives {relative:?}");

    let simplicial = [
        fixtures::two_triangles(),
        fixtures::tetrahedron_solid(),
        fixtures::tetrahedron_boundary(),
        fixtures::disjoint_edges(),
        fixtures::disjoint_triangles(),
        fixtures::simplex(3),
        fixtures::simplex(4),
    ];
    for s in &simplicial {
        let faces = simplices(s);
        let top = s.dimension().unwrap();
        let (betti, _) = oracle::oracle(&faces, top);
        let ours: Vec<usize> = h(s)?.iter().map(|g| g.betti).collect();
        ensure!(ours == betti, "oracle gives {betti:?}, engine {ours:?}");
    }
    for (name, s) in every_fixture() {
        let b0 = h(&s)?[0].betti;
        ensure!(h0_components(&s) == b0, "{name}: {} components, betti 0 is {b0}", h0_components(&s));
    }
    Ok(format!("values pinned; {} simplicial fixtures agree with the brute-force oracle", simplicial.len()))
}

fn subdivision_invariance() -> Outcome {
    let mut moves = 0;
    for (name, s) in [("torus9", fixtures::torus9()), ("tetrahedron_boundary", fixtures::tetrahedron_boundary())] {
        let signs = orient_all_cells(&s).map_err(|e| e.to_string())?;
        for x in positive_rank(&s) {
            let r = verify_subdivision_invariance(&s, &x, &signs).map_err(|e| e.to_string())?;
            ensure!(r.chain_map, "{name} at {x}: not a chain map");
            ensure!(r.before == r.after, "{name} at {x}: {:?} vs {:?}", r.before, r.after);
            moves += 1;
        }
        let (sd, sd_signs) = barycentric(&s).map_err(|e| e.to_string())?;
        ensure!(homology(&sd, &sd_signs)? == homology(&s, &signs)?, "{name}: barycentric homology differs");
    }
    Ok(format!("{moves} stellar moves and 2 barycentric subdivisions preserve homology"))
}

fn tower() -> Outcome {
    let s = fixtures::torus9();
    let signs = orient_all_cells(&s).map_err(|e| e.to_string())?;
    let tower = barycentric_via_stellar(&s, &signs).map_err(|e| e.to_string())?;
    let (relabelled, relabelled_signs) = tower.relabelled().map_err(|e| e.to_string())?;
    ensure!(relabelled == barycentric(&s).unwrap().0, "relabelled tower differs from the order complex");
    ensure!(
        tower.composite.check_chain_law((&s, &signs), (&relabelled, &relabelled_signs)).is_ok(),
        "composite is not a chain map"
    );
    let eps = compare_phi_bigphi(&s, &signs).map_err(|e| e.to_string())?;
    let shown: Vec<String> = eps.iter().map(ToString::to_string).collect();
    Ok(format!(
        "{} stages, disjointness held at every rank, per-degree signs ({})",
        tower.stages.len(),
        shown.join(", ")
    ))
}

fn duality() -> Outcome {
    for (name, s) in [("torus9", fixtures::torus9()), ("tetrahedron_boundary", fixtures::tetrahedron_boundary())] {
        let report = verify_duality(&s).map_err(|e| e.to_string())?;
        ensure!(report.hypotheses_hold(), "{name}: {:?}", report.failed_hypotheses().collect::<Vec<_>>());
        let st = report.stages.as_ref().unwrap();
        ensure!(st.sign_law, "{name}: dual signs disagree");
        ensure!(st.subdivisions_agree, "{name}: subdivisions of complex and dual differ");
        ensure!(report.confirmed(), "{name}:\n{}", report.table());
        let set = dual_orientations(&s, &orient(&s).unwrap()).map_err(|e| e.to_string())?;
        let pairs = set.check_sign_law(&s).map_err(|p| format!("{name}: sign law fails at {p:?}"))?;
        ensure!(name != "torus9" || pairs == 72, "torus9: {pairs} face pairs");
        ensure!(set.dual.dual().unwrap() == s, "{name}: dual of dual differs");
        let dual_signs = orient_all_cells(&set.dual).unwrap();
        ensure!(cells_acyclic(&set.dual, &dual_signs).unwrap().is_ok(), "{name}: dual cell not acyclic");
    }
    Ok("torus9 and tetrahedron_boundary confirmed; 72 face pairs on torus9".into())
}

fn pairing() -> Outcome {
    let s = fixtures::torus9();
    let set = dual_orientations(&s, &orient(&s).unwrap()).map_err(|e| e.to_string())?;
    let report = stokes_check(&s, &set, 100, 11).map_err(|e| e.to_string())?;
    ensure!(report.passed(), "{} Stokes failures, first {:?}", report.failures.len(), report.failures.first());
    ensure!(report.random_pairs == 100, "{} random pairs", report.random_pairs);
    let m = intersection_matrix(&s, &set, 1).map_err(|e| e.to_string())?;
    let det = m.determinant();
    ensure!(m.rows() == 2 && det.is_some_and(|d| d.abs() == 1), "H1 pairing {m:?} has determinant {det:?}");
    Ok(format!(
        "{} basis pairs and {} random chains, residual 0; H1 pairing determinant {}",
        report.basis_pairs,
        report.random_pairs,
        det.unwrap()
    ))
}

fn robustness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut trials = 0;
    for (name, s) in every_fixture() {
        let signs = orient_all_cells(&s).map_err(|e| e.to_string())?;
        let cc = ChainComplex::new(&s, &signs).unwrap();
        let reference = (cc.homology(), cc.cohomology());
        let mut subsets: Vec<Vec<&CellId>> = vec![Vec::new(), s.cells().iter().collect()];
        for _ in 0..10 {
            subsets.push(s.cells().iter().filter(|_| rng.gen_bool(0.5)).collect());
        }
        for flip in subsets {
            let flipped = signs.with_flipped(&s, flip.iter().copied()).map_err(|e| e.to_string())?;
            let cc = ChainComplex::new(&s, &flipped).unwrap();
            ensure!((cc.homology(), cc.cohomology()) == reference, "{name}: flipping {flip:?} changes homology");
            trials += 1;
        }
    }
    Ok(format!("{trials} flip patterns leave homology and cohomology unchanged"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("axioms", axioms),
        ("orientability", orientability),
        ("chain complex soundness", chain_soundness),
        ("homology values", homology_values),
        ("subdivision invariance", subdivision_invariance),
        ("barycentric tower", tower),
        ("duality", duality),
        ("pairing", pairing),
        ("robustness of conventions", robustness),
    ];
    let mut failed = BTreeMap::new();
    let start = Instant::now();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let ms = t.elapsed().as_millis();
        match &outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [tolerance 0, {ms} ms] {detail}", k + 1),
            Err(why) => {
                println!("criterion {} ({name}): FAIL [tolerance 0, {ms} ms] {why}", k + 1);
                failed.insert(k + 1, why.clone());
            }
        }
    }
    println!("total {} ms", start.elapsed().as_millis());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
