//! Dual complexes of oriented manifold-like complexes: dual orientations,
//! the star map, the duality check and the intersection pairing.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cell_id::CellId;
use crate::chains::{boundary, cells_acyclic, coboundary, Chain, ChainComplex, HomologyGroup, IntMatrix};
use crate::error::Error;
use crate::flags::{
    cells_flag_connected, flags_below, is_orientable, orient, orient_all_cells, orient_cells_with, Flag,
    Orientability, Orientation, Sign, SignTable,
};
use crate::poset::Ccc;
use crate::subdivision::{barycentric, ChainMap};

/// An oriented complex, its dual, and compatible orientations on both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualOrientationSet {
    /// The orientation of the whole complex.
    pub global: Orientation,
    /// Per-cell orientations of the complex; maximal cells carry the
    /// restriction of `global`.
    pub primal: SignTable,
    pub dual: Ccc,
    /// Orientations of the dual cells induced from `global` and `primal`.
    pub dual_signs: SignTable,
}

/// Orients the cells of the dual complex.
///
/// For a cell `x` with a flag `γ1` below it and a dual flag `γ2` above it,
/// the concatenation is a flag of the whole complex, and the dual cell gets
/// `ω°(γ2) = ω(γ1 ∪ γ2) · ω_x(γ1)`. Every choice of `γ1` is tried and must
/// give the same answer.
pub fn dual_orientations(s: &Ccc, global: &Orientation) -> Result<DualOrientationSet, Error> {
    let dual = s.dual()?;
    let overrides = s.maximal_cells().map(|m| (m.clone(), global.at(m))).collect();
    let primal = orient_cells_with(s, overrides)?;
    let mut dual_orients = BTreeMap::new();
    for x in s.cells() {
        let wx = primal.orientation(x).ok_or_else(|| Error::MissingOrientation(x.clone()))?;
        let xd = x.clone().dual();
        let mut pairs = Vec::new();
        for up in flags_below(&dual, dual.idx(&xd)?) {
            let mut above: Vec<CellId> = up.iter().map(|&j| dual.id(j).clone().dual()).collect();
            above.reverse();
            above.pop();
            let mut value: Option<Sign> = None;
            for (below, c) in wx.iter() {
                let mut whole = above.clone();
                whole.extend(below.0.iter().cloned());
                let w = global.get(&Flag(whole)).ok_or_else(|| Error::MissingOrientation(x.clone()))?;
                let here = w * c;
                if value.is_some_and(|v| v != here) {
                    return Err(Error::Hypothesis(format!(
                        "dual orientation of {xd} depends on the flag chosen below {x}"
                    )));
                }
                value = Some(here);
            }
            let value = value.ok_or_else(|| Error::MissingOrientation(x.clone()))?;
            pairs.push((Flag(up.iter().map(|&j| dual.id(j).clone()).collect()), value));
        }
        dual_orients.insert(xd, Orientation::from_pairs(pairs));
    }
    let dual_signs = orient_cells_with(&dual, dual_orients)?;
    Ok(DualOrientationSet {
        global: global.clone(),
        primal,
        dual,
        dual_signs,
    })
}

impl DualOrientationSet {
    /// Checks `s°(y°, x°) = s(x, y)` for every cover `y < x`; returns the
    /// first pair `(x, y)` where it fails.
    pub fn check_sign_law(&self, s: &Ccc) -> Result<usize, (CellId, CellId)> {
        let mut checked = 0;
        for (y, x) in s.cover_pairs() {
            let primal = self.primal.sign(x, y);
            let dual = self.dual_signs.sign(&y.clone().dual(), &x.clone().dual());
            if primal.is_none() || primal != dual {
                return Err((x.clone(), y.clone()));
            }
            checked += 1;
        }
        Ok(checked)
    }

    /// Checks that `∗ ∂ = δ ∗` on every cell, `δ` being the coboundary of
    /// the dual complex; returns the first cell where it fails.
    pub fn check_star_intertwines(&self, s: &Ccc) -> Result<(), CellId> {
        let star = star_map(s);
        for x in s.cells() {
            let cell = Chain::cell(x.clone());
            let left = boundary(s, &self.primal, &cell).and_then(|b| star.apply(&b));
            let right = star
                .apply(&cell)
                .and_then(|c| coboundary(&self.dual, &self.dual_signs, &c));
            match (left, right) {
                (Ok(l), Ok(r)) if l == r => {}
                _ => return Err(x.clone()),
            }
        }
        Ok(())
    }
}

/// `[x] ↦ [x°]`, from chains of the complex to chains of its dual.
pub fn star_map(s: &Ccc) -> ChainMap {
    ChainMap::from_images(
        s.cells()
            .iter()
            .map(|c| (c.clone(), Chain::cell(c.clone().dual())))
            .collect(),
    )
}

/// `[x°] ↦ [x]`, from chains of the dual back to the complex.
pub fn star_inverse(dual: &Ccc) -> ChainMap {
    star_map(dual)
}

/// One entry of the hypothesis checklist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Certificate or reason on failure.
    pub detail: String,
}

impl HypothesisCheck {
    fn pass(name: &'static str) -> HypothesisCheck {
        HypothesisCheck {
            name,
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(name: &'static str, detail: String) -> HypothesisCheck {
        HypothesisCheck {
            name,
            passed: false,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityStages {
    pub homology: Vec<HomologyGroup>,
    /// Homology of the barycentric subdivision.
    pub subdivided_homology: Vec<HomologyGroup>,
    /// The subdivisions of the complex and of its dual coincide.
    pub subdivisions_agree: bool,
    pub dual_homology: Vec<HomologyGroup>,
    pub cohomology: Vec<HomologyGroup>,
    pub sign_law: bool,
    pub star_intertwines: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub dimension: usize,
    pub hypotheses: Vec<HypothesisCheck>,
    /// Present only when every hypothesis holds.
    pub stages: Option<DualityStages>,
}

/// One line of the duality table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityRow {
    pub degree: usize,
    pub homology: HomologyGroup,
    pub complementary_cohomology: HomologyGroup,
}

impl DualityRow {
    pub fn matches(&self) -> bool {
        self.homology == self.complementary_cohomology
    }
}

impl DualityReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.passed)
    }

    pub fn failed_hypotheses(&self) -> impl Iterator<Item = &HypothesisCheck> + '_ {
        self.hypotheses.iter().filter(|h| !h.passed)
    }

    /// `H_i` against `H^{n-i}` for every `i`.
    pub fn rows(&self) -> Vec<DualityRow> {
        let Some(st) = &self.stages else {
            return Vec::new();
        };
        (0..=self.dimension)
            .map(|i| DualityRow {
                degree: i,
                homology: st.homology[i].clone(),
                complementary_cohomology: st.cohomology[self.dimension - i].clone(),
            })
            .collect()
    }

    /// Every hypothesis holds and every stage agrees.
    pub fn confirmed(&self) -> bool {
        let Some(st) = &self.stages else {
            return false;
        };
        let n = self.dimension;
        self.hypotheses_hold()
            && st.subdivided_homology == st.homology
            && st.subdivisions_agree
            && st.sign_law
            && st.star_intertwines
            && (0..=n).all(|i| st.dual_homology[i] == st.cohomology[n - i])
            && self.rows().iter().all(DualityRow::matches)
    }

    /// The table `i | H_i | H^{n-i} | match`.
    pub fn table(&self) -> String {
        let mut rows: Vec<[String; 4]> = Vec::new();
        rows.push([
            "i".to_string(),
            "H_i(S)".to_string(),
            format!("H^{{{}-i}}(S)", self.dimension),
            "match".to_string(),
        ]);
        for r in self.rows() {
            rows.push([
                r.degree.to_string(),
                r.homology.to_string(),
                r.complementary_cohomology.to_string(),
                if r.matches() { "yes" } else { "no" }.to_string(),
            ]);
        }
        let widths: Vec<usize> = (0..4)
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in &rows {
            let cells: Vec<String> = (0..4)
                .map(|c| format!("{:<w$}", r[c], w = widths[c]))
                .collect();
            out.push_str(cells.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn certificate(cycle: &[Flag]) -> String {
    let flags: Vec<String> = cycle.iter().map(|f| f.to_string()).collect();
    format!("odd cycle of {} flags: {}", cycle.len(), flags.join(" ~ "))
}

fn cells_check(
    hypotheses: &mut Vec<HypothesisCheck>,
    s: &Ccc,
    connected: &'static str,
    acyclic: &'static str,
) -> Result<(), Error> {
    match cells_flag_connected(s) {
        Ok(()) => {
            hypotheses.push(HypothesisCheck::pass(connected));
            let signs = orient_all_cells(s)?;
            hypotheses.push(match cells_acyclic(s, &signs)? {
                Ok(()) => HypothesisCheck::pass(acyclic),
                Err(c) => HypothesisCheck::fail(acyclic, format!("the closure of {c} is not acyclic")),
            });
        }
        Err(c) => {
            hypotheses.push(HypothesisCheck::fail(
                connected,
                format!("the closure of {c} has a disconnected flag graph"),
            ));
            hypotheses.push(HypothesisCheck::fail(acyclic, String::from("not checked")));
        }
    }
    Ok(())
}

fn unwrap_dual_chain(id: &CellId) -> CellId {
    match id {
        CellId::Chain(members) => CellId::Chain(members.iter().rev().map(|c| c.clone().dual()).collect()),
        other => other.clone(),
    }
}

/// Checks the hypotheses one by one, then compares the homology of the
/// complex with that of its barycentric subdivision, the subdivisions of the
/// complex and of its dual, and dual homology with complementary cohomology.
pub fn verify_duality(s: &Ccc) -> Result<DualityReport, Error> {
    let class = s.classify()?;
    let mut hypotheses = Vec::new();
    let global = if class.equidimensional {
        match is_orientable(s)? {
            Orientability::Orientable => {
                hypotheses.push(HypothesisCheck::pass("orientable"));
                Some(orient(s)?)
            }
            Orientability::NotFlagConnected { components } => {
                hypotheses.push(HypothesisCheck::fail(
                    "orientable",
                    format!("flag graph has {components} components"),
                ));
                None
            }
            Orientability::OddCycle(cycle) => {
                hypotheses.push(HypothesisCheck::fail("orientable", certificate(&cycle)));
                None
            }
        }
    } else {
        hypotheses.push(HypothesisCheck::fail("orientable", String::from("not equidimensional")));
        None
    };
    hypotheses.push(if class.manifold_like {
        HypothesisCheck::pass("manifold-like")
    } else if !class.equidimensional {
        HypothesisCheck::fail("manifold-like", String::from("not equidimensional"))
    } else if !class.nonsingular {
        HypothesisCheck::fail(
            "manifold-like",
            String::from("singular: a codimension-one cell lies in more than two top cells, or an edge lacks two endpoints"),
        )
    } else {
        let first = class.boundary.iter().next().map(ToString::to_string).unwrap_or_default();
        HypothesisCheck::fail(
            "manifold-like",
            format!("non-empty boundary of {} cells, e.g. {first}", class.boundary.len()),
        )
    });
    cells_check(&mut hypotheses, s, "cells flag-connected", "cells acyclic")?;
    if class.manifold_like {
        let dual = s.dual()?;
        cells_check(&mut hypotheses, &dual, "dual cells flag-connected", "dual cells acyclic")?;
    } else {
        for name in ["dual cells flag-connected", "dual cells acyclic"] {
            hypotheses.push(HypothesisCheck::fail(name, String::from("no dual complex")));
        }
    }
    let dimension = class.dimension;
    let stages = match global {
        Some(global) if hypotheses.iter().all(|h| h.passed) => Some(run_stages(s, &global)?),
        _ => None,
    };
    Ok(DualityReport {
        dimension,
        hypotheses,
        stages,
    })
}

fn run_stages(s: &Ccc, global: &Orientation) -> Result<DualityStages, Error> {
    let set = dual_orientations(s, global)?;
    let primal = ChainComplex::new(s, &set.primal)?;
    let (sd, sd_signs) = barycentric(s)?;
    let (dual_sd, _) = barycentric(&set.dual)?;
    let dual_sd = dual_sd.relabel(unwrap_dual_chain)?;
    Ok(DualityStages {
        homology: primal.homology(),
        subdivided_homology: ChainComplex::new(&sd, &sd_signs)?.homology(),
        subdivisions_agree: dual_sd == sd,
        dual_homology: ChainComplex::new(&set.dual, &set.dual_signs)?.homology(),
        cohomology: primal.cohomology(),
        sign_law: set.check_sign_law(s).is_ok(),
        star_intertwines: set.check_star_intertwines(s).is_ok(),
    })
}

/// `⟨σ, τ⟩ = Σ σ[x] τ[x°]` for a chain `σ` of the complex and a chain `τ`
/// of its dual of complementary degree.
pub fn pairing(s: &Ccc, sigma: &Chain, tau: &Chain) -> Result<i64, Error> {
    let mut degree: Option<usize> = None;
    let sides = sigma
        .iter()
        .map(|(c, _)| c.clone())
        .chain(tau.iter().map(|(c, _)| c.clone().dual()));
    for c in sides {
        let r = s.rank(&c).ok_or_else(|| Error::UnknownCell(c.clone()))?;
        match degree {
            Some(d) if d != r => return Err(Error::DegreeMismatch { expected: d, found: r }),
            _ => degree = Some(r),
        }
    }
    let mut total = 0i64;
    for (c, k) in sigma.iter() {
        let v = tau.coefficient(&c.clone().dual());
        total = k
            .checked_mul(v)
            .and_then(|p| total.checked_add(p))
            .ok_or_else(|| Error::Overflow(String::from("pairing")))?;
    }
    Ok(total)
}

/// `∫_σ ω`, the pairing of `σ` with the dual chain of the cochain `ω`.
pub fn integrate(s: &Ccc, sigma: &Chain, cochain: &Chain) -> Result<i64, Error> {
    pairing(s, sigma, &star_map(s).apply(cochain)?)
}

/// A failed instance of `⟨∂σ, τ⟩ = ⟨σ, ∂τ⟩` or of `∫_∂σ ω = ∫_σ δω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesFailure {
    pub sigma: Chain,
    pub other: Chain,
    pub left: i64,
    pub right: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairingReport {
    pub basis_pairs: usize,
    pub random_pairs: usize,
    pub integrals: usize,
    pub failures: Vec<StokesFailure>,
}

impl PairingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_chain(rng: &mut ChaCha8Rng, cells: &[CellId]) -> Chain {
    Chain::from_terms(cells.iter().map(|c| (c.clone(), rng.gen_range(-3..=3))))
}

/// Checks `⟨∂σ, τ⟩ = ⟨σ, ∂τ⟩` on every pair of basis cells in every degree
/// and on `samples` seeded random pairs, and `∫_∂σ ω = ∫_σ δω` on as many
/// random pairs.
pub fn stokes_check(s: &Ccc, set: &DualOrientationSet, samples: usize, seed: u64) -> Result<PairingReport, Error> {
    let n = s.dimension().ok_or(Error::EmptyComplex)?;
    let mut report = PairingReport::default();
    if n == 0 {
        return Ok(report);
    }
    let ranks: Vec<Vec<CellId>> = (0..=n).map(|r| s.cells_of_rank(r).cloned().collect()).collect();
    let dual_ranks: Vec<Vec<CellId>> = (0..=n).map(|r| ranks[r].iter().map(|c| c.clone().dual()).collect()).collect();
    let check = |report: &mut PairingReport, sigma: &Chain, tau: &Chain| -> Result<(), Error> {
        let left = pairing(s, &boundary(s, &set.primal, sigma)?, tau)?;
        let right = pairing(s, sigma, &boundary(&set.dual, &set.dual_signs, tau)?)?;
        if left != right {
            report.failures.push(StokesFailure {
                sigma: sigma.clone(),
                other: tau.clone(),
                left,
                right,
            });
        }
        Ok(())
    };
    for i in 0..n {
        for x in &ranks[i + 1] {
            for z in &dual_ranks[i] {
                check(&mut report, &Chain::cell(x.clone()), &Chain::cell(z.clone()))?;
                report.basis_pairs += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let i = rng.gen_range(0..n);
        let sigma = random_chain(&mut rng, &ranks[i + 1]);
        let tau = random_chain(&mut rng, &dual_ranks[i]);
        check(&mut report, &sigma, &tau)?;
        report.random_pairs += 1;
    }
    for _ in 0..samples {
        let i = rng.gen_range(0..n);
        let sigma = random_chain(&mut rng, &ranks[i + 1]);
        let omega = random_chain(&mut rng, &ranks[i]);
        let left = integrate(s, &boundary(s, &set.primal, &sigma)?, &omega)?;
        let right = integrate(s, &sigma, &coboundary(s, &set.primal, &omega)?)?;
        if left != right {
            report.failures.push(StokesFailure {
                sigma,
                other: omega,
                left,
                right,
            });
        }
        report.integrals += 1;
    }
    Ok(report)
}

/// The pairing between free homology generators of degree `degree` of the
/// complex and of complementary degree of the dual; rows follow the
/// complex's generators.
pub fn intersection_matrix(s: &Ccc, set: &DualOrientationSet, degree: usize) -> Result<IntMatrix, Error> {
    let n = s.dimension().ok_or(Error::EmptyComplex)?;
    if degree > n {
        return Err(Error::DegreeMismatch { expected: n, found: degree });
    }
    let left = ChainComplex::new(s, &set.primal)?.generators(degree)?.free;
    let right = ChainComplex::new(&set.dual, &set.dual_signs)?.generators(n - degree)?.free;
    let mut m = IntMatrix::zeros(left.len(), right.len());
    for (a, sigma) in left.iter().enumerate() {
        for (b, tau) in right.iter().enumerate() {
            m.set(a, b, pairing(s, sigma, tau)?);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    fn id(s: &str) -> CellId {
        CellId::base(s)
    }

    fn torus_set() -> (Ccc, DualOrientationSet) {
        let s = fixtures::torus9();
        let set = dual_orientations(&s, &orient(&s).unwrap()).unwrap();
        (s, set)
    }

    #[test]
    fn torus_sign_law() {
        let (s, set) = torus_set();
        assert_eq!(set.check_sign_law(&s), Ok(72));
        assert_eq!(set.check_star_intertwines(&s), Ok(()));
        assert_eq!(set.dual.face_vector(), vec![9, 18, 9]);
    }

    #[test]
    fn flipped_global_orientation() {
        let s = fixtures::torus9();
        let global = orient(&s).unwrap().flipped();
        let set = dual_orientations(&s, &global).unwrap();
        assert_eq!(set.check_sign_law(&s), Ok(72));
    }

    #[test]
    fn dual_of_dual_returns() {
        let (s, set) = torus_set();
        let back = set.dual.dual().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn torus_duality_table() {
        let report = verify_duality(&fixtures::torus9()).unwrap();
        assert!(report.hypotheses_hold());
        assert!(report.confirmed());
        let table = report.table();
        assert_eq!(
            table,
            "i | H_i(S) | H^{2-i}(S) | match\n\
             0 | Z      | Z          | yes\n\
             1 | Z^2    | Z^2        | yes\n\
             2 | Z      | Z          | yes\n"
        );
    }

    #[test]
    fn sphere_and_ball() {
        assert!(verify_duality(&fixtures::tetrahedron_boundary()).unwrap().confirmed());
        let ball = verify_duality(&fixtures::tetrahedron_solid()).unwrap();
        assert!(!ball.confirmed());
        let failed: Vec<&str> = ball.failed_hypotheses().map(|h| h.name).collect();
        assert!(failed.contains(&"manifold-like"));
    }

    #[test]
    fn mobius_is_rejected_with_certificate() {
        let report = verify_duality(&fixtures::mobius3()).unwrap();
        assert!(report.stages.is_none());
        let orientable = &report.hypotheses[0];
        assert_eq!(orientable.name, "orientable");
        assert!(!orientable.passed);
        assert!(orientable.detail.starts_with("odd cycle"));
    }

    #[test]
    fn klein_is_rejected() {
        let report = verify_duality(&fixtures::klein9()).unwrap();
        let failed: Vec<&str> = report.failed_hypotheses().map(|h| h.name).collect();
        assert_eq!(failed, vec!["orientable"]);
    }

    #[test]
    fn pairing_is_the_indicator() {
        let s = fixtures::torus9();
        let x = id("h00");
        assert_eq!(pairing(&s, &Chain::cell(x.clone()), &Chain::cell(x.clone().dual())), Ok(1));
        assert_eq!(pairing(&s, &Chain::cell(x), &Chain::cell(id("h01").dual())), Ok(0));
        assert!(pairing(&s, &Chain::cell(id("h00")), &Chain::cell(id("f00").dual())).is_err());
    }

    #[test]
    fn stokes_on_torus() {
        let (s, set) = torus_set();
        let report = stokes_check(&s, &set, 100, 7).unwrap();
        assert_eq!(report.basis_pairs, 18 * 9 + 9 * 18);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn torus_pairing_is_unimodular() {
        let (s, set) = torus_set();
        let m = intersection_matrix(&s, &set, 1).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.determinant().map(i64::abs), Some(1));
        let m0 = intersection_matrix(&s, &set, 0).unwrap();
        assert_eq!(m0.determinant().map(i64::abs), Some(1));
    }

    #[test]
    fn pairing_descends_to_homology() {
        let (s, set) = torus_set();
        let cc = ChainComplex::new(&s, &set.primal).unwrap();
        let dual_cc = ChainComplex::new(&set.dual, &set.dual_signs).unwrap();
        let sigma = cc.generators(1).unwrap().free[0].clone();
        let rho = &Chain::term(id("f00"), 1) + &Chain::term(id("f11"), -2);
        let shifted = &sigma + &boundary(&s, &set.primal, &rho).unwrap();
        for tau in dual_cc.generators(1).unwrap().free {
            assert_eq!(pairing(&s, &sigma, &tau), pairing(&s, &shifted, &tau));
        }
    }
}
