use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::snf::{smith_normal_form, smith_with_transforms};
use super::{Chain, IntMatrix};
use crate::cell_id::CellId;
use crate::error::Error;
use crate::flags::SignTable;
use crate::poset::Ccc;

/// A finitely generated abelian group `Z^betti ⊕ Z/t_1 ⊕ ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Torsion coefficients, each greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn new<I: IntoIterator<Item = u64>>(betti: usize, torsion: I) -> HomologyGroup {
        HomologyGroup {
            betti,
            torsion: torsion.into_iter().map(BigInt::from).collect(),
        }
    }

    pub fn free(betti: usize) -> HomologyGroup {
        HomologyGroup::new(betti, [])
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// `Z^2 + Z/2`, `Z`, or `0`.
impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !core::mem::take(&mut first) {
                f.write_str(" + ")?;
            }
            Ok(())
        };
        match self.betti {
            0 => {}
            1 => {
                sep(f)?;
                f.write_str("Z")?;
            }
            b => {
                sep(f)?;
                write!(f, "Z^{}", b)?;
            }
        }
        for t in &self.torsion {
            sep(f)?;
            write!(f, "Z/{}", t)?;
        }
        Ok(())
    }
}

/// Cycle representatives of a homology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub free: Vec<Chain>,
    /// Each generator with its order.
    pub torsion: Vec<(Chain, BigInt)>,
}

/// The cellular chain complex of a (relative, possibly augmented) complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    bases: Vec<Vec<CellId>>,
    positions: Vec<BTreeMap<CellId, usize>>,
    /// `boundaries[i]` maps degree `i` to degree `i - 1`; `boundaries[0]` is
    /// the augmentation when present and has no rows otherwise.
    boundaries: Vec<IntMatrix>,
    augmented: bool,
}

impl ChainComplex {
    pub fn new(s: &Ccc, signs: &SignTable) -> Result<ChainComplex, Error> {
        ChainComplex::build(s, signs, |_| true, false)
    }

    /// With an extra degree `-1` spanned by the empty cell, every vertex
    /// mapping to it with coefficient one.
    pub fn augmented(s: &Ccc, signs: &SignTable) -> Result<ChainComplex, Error> {
        ChainComplex::build(s, signs, |_| true, true)
    }

    /// The quotient by the closed subcomplex `sub`.
    pub fn relative(s: &Ccc, signs: &SignTable, sub: &BTreeSet<CellId>) -> Result<ChainComplex, Error> {
        for c in sub {
            for f in s.faces(c)? {
                if !sub.contains(f) {
                    return Err(Error::NotClosed(c.clone()));
                }
            }
        }
        ChainComplex::build(s, signs, |c| !sub.contains(c), false)
    }

    fn build<F>(s: &Ccc, signs: &SignTable, keep: F, augmented: bool) -> Result<ChainComplex, Error>
    where
        F: Fn(&CellId) -> bool,
    {
        let degrees = s.dimension().map_or(0, |d| d + 1);
        let mut bases = vec![Vec::new(); degrees];
        for c in s.cells().iter().filter(|c| keep(c)) {
            bases[s.rank(c).expect("own cell")].push(c.clone());
        }
        let positions: Vec<BTreeMap<CellId, usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        let mut boundaries = Vec::with_capacity(degrees);
        for (i, basis) in bases.iter().enumerate() {
            if i == 0 {
                let rows = usize::from(augmented);
                let mut m = IntMatrix::zeros(rows, basis.len());
                if augmented {
                    for c in 0..basis.len() {
                        m.set(0, c, 1);
                    }
                }
                boundaries.push(m);
                continue;
            }
            let mut m = IntMatrix::zeros(bases[i - 1].len(), basis.len());
            for (col, x) in basis.iter().enumerate() {
                for y in s.faces(x)? {
                    let Some(&row) = positions[i - 1].get(y) else {
                        continue;
                    };
                    let sign = signs.sign(x, y).ok_or_else(|| Error::MissingSign {
                        upper: x.clone(),
                        lower: y.clone(),
                    })?;
                    m.set(row, col, sign.to_i64());
                }
            }
            boundaries.push(m);
        }
        Ok(ChainComplex {
            bases,
            positions,
            boundaries,
            augmented,
        })
    }

    /// Number of non-negative degrees.
    pub fn degrees(&self) -> usize {
        self.bases.len()
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn basis(&self, degree: usize) -> &[CellId] {
        self.bases.get(degree).map_or(&[], Vec::as_slice)
    }

    /// The matrix from degree `degree` to `degree - 1`; empty beyond the top.
    pub fn boundary_matrix(&self, degree: usize) -> IntMatrix {
        match self.boundaries.get(degree) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.basis(degree.wrapping_sub(1)).len(), 0),
        }
    }

    /// The matrix from degree `degree` to `degree + 1`.
    pub fn coboundary_matrix(&self, degree: usize) -> IntMatrix {
        self.boundary_matrix(degree + 1).transpose()
    }

    /// Consecutive boundary matrices compose to zero.
    pub fn is_chain_complex(&self) -> bool {
        (1..self.degrees()).all(|i| {
            self.boundaries[i - 1]
                .checked_mul(&self.boundaries[i])
                .is_some_and(|m| m.is_zero())
        })
    }

    pub fn homology(&self) -> Vec<HomologyGroup> {
        let forms: Vec<_> = (0..=self.degrees())
            .map(|i| smith_normal_form(&self.boundary_matrix(i)))
            .collect();
        (0..self.degrees())
            .map(|i| HomologyGroup {
                betti: self.bases[i].len() - forms[i].rank() - forms[i + 1].rank(),
                torsion: forms[i + 1].torsion().cloned().collect(),
            })
            .collect()
    }

    /// Cohomology from the transposed matrices.
    pub fn cohomology(&self) -> Vec<HomologyGroup> {
        // forms[i] belongs to the map from degree i - 1 to degree i.
        let forms: Vec<_> = (0..=self.degrees())
            .map(|i| smith_normal_form(&self.boundary_matrix(i).transpose()))
            .collect();
        (0..self.degrees())
            .map(|i| HomologyGroup {
                betti: self.bases[i].len() - forms[i + 1].rank() - forms[i].rank(),
                torsion: forms[i].torsion().cloned().collect(),
            })
            .collect()
    }

    /// Homology in degree `-1` of an augmented complex; zero otherwise.
    pub fn bottom_homology(&self) -> HomologyGroup {
        if !self.augmented {
            return HomologyGroup::default();
        }
        let rank = smith_normal_form(&self.boundaries[0]).rank();
        HomologyGroup::free(1 - rank)
    }

    /// All homology groups vanish, including degree `-1` when augmented.
    pub fn is_acyclic(&self) -> bool {
        self.bottom_homology().is_zero() && self.homology().iter().all(HomologyGroup::is_zero)
    }

    pub fn to_vector(&self, degree: usize, chain: &Chain) -> Result<Vec<i64>, Error> {
        let mut v = vec![0; self.basis(degree).len()];
        for (c, k) in chain.iter() {
            let &i = self
                .positions
                .get(degree)
                .and_then(|p| p.get(c))
                .ok_or_else(|| Error::UnknownCell(c.clone()))?;
            v[i] = k;
        }
        Ok(v)
    }

    pub fn from_vector(&self, degree: usize, v: &[i64]) -> Chain {
        Chain::from_terms(self.basis(degree).iter().cloned().zip(v.iter().copied()))
    }

    /// Boundary of a chain of the given degree, through the matrices.
    pub fn apply_boundary(&self, degree: usize, chain: &Chain) -> Result<Chain, Error> {
        if degree == 0 {
            return Ok(Chain::zero());
        }
        let v = self.to_vector(degree, chain)?;
        let image = self.boundaries[degree]
            .mul_vec(&v)
            .ok_or_else(|| Error::Overflow(String::from("boundary of a chain")))?;
        Ok(self.from_vector(degree - 1, &image))
    }

    /// Cycle representatives of the free and torsion parts in `degree`.
    pub fn generators(&self, degree: usize) -> Result<Generators, Error> {
        let n = self.basis(degree).len();
        let (outgoing, t) = smith_with_transforms(&self.boundary_matrix(degree))?;
        let r = outgoing.rank();
        let kernel: Vec<usize> = (r..n).collect();
        let k = t.v.select(&(0..n).collect::<Vec<_>>(), &kernel);
        let incoming = self.boundary_matrix(degree + 1);
        let coords = t
            .v_inv
            .checked_mul(&incoming)
            .ok_or_else(|| Error::Overflow(String::from("boundary coordinates")))?
            .select(&kernel, &(0..incoming.cols()).collect::<Vec<_>>());
        let (image, t2) = smith_with_transforms(&coords)?;
        let basis = k
            .checked_mul(&t2.u_inv)
            .ok_or_else(|| Error::Overflow(String::from("cycle basis")))?;

        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for j in 0..basis.cols() {
            let cycle = self.from_vector(degree, &basis.column(j));
            match image.invariants.get(j) {
                Some(d) if d.is_one() => {}
                Some(d) => torsion.push((cycle, d.clone())),
                None => free.push(cycle),
            }
        }
        let boundaries: Vec<Chain> = (0..incoming.cols())
            .map(|c| self.from_vector(degree, &incoming.column(c)))
            .filter(|c| !c.is_zero())
            .collect();
        shorten(&mut free, &boundaries, true);
        let mut tors: Vec<Chain> = torsion.iter().map(|(c, _)| c.clone()).collect();
        shorten(&mut tors, &boundaries, false);
        for ((c, _), short) in torsion.iter_mut().zip(tors) {
            *c = short;
        }
        Ok(Generators { free, torsion })
    }
}

/// Greedy support reduction: adds `±b` for boundaries `b` (and, if
/// `mix`, `±g` for other generators) while the support shrinks.
fn shorten(gens: &mut [Chain], boundaries: &[Chain], mix: bool) {
    let key = |c: &Chain| (c.support_len(), c.weight());
    for _ in 0..8 {
        let mut improved = false;
        for i in 0..gens.len() {
            let mut moves: Vec<Chain> = boundaries.to_vec();
            if mix {
                moves.extend(gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()));
            }
            for m in &moves {
                for cand in [&gens[i] + m, &gens[i] - m] {
                    if !cand.is_zero() && key(&cand) < key(&gens[i]) {
                        gens[i] = cand;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
}

/// Boundary computed directly from the sign table.
pub fn boundary(s: &Ccc, signs: &SignTable, chain: &Chain) -> Result<Chain, Error> {
    let mut out = Chain::zero();
    for (x, k) in chain.iter() {
        for y in s.faces(x)? {
            let sign = signs.sign(x, y).ok_or_else(|| Error::MissingSign {
                upper: x.clone(),
                lower: y.clone(),
            })?;
            out.add_term(y.clone(), k * sign.to_i64());
        }
    }
    Ok(out)
}

/// Coboundary of a cochain, written as a chain of cells.
pub fn coboundary(s: &Ccc, signs: &SignTable, cochain: &Chain) -> Result<Chain, Error> {
    let mut out = Chain::zero();
    for (y, k) in cochain.iter() {
        for x in s.cofaces(y)? {
            let sign = signs.sign(x, y).ok_or_else(|| Error::MissingSign {
                upper: x.clone(),
                lower: y.clone(),
            })?;
            out.add_term(x.clone(), k * sign.to_i64());
        }
    }
    Ok(out)
}

/// Connected components of the 1-skeleton, by union-find.
pub fn h0_components(s: &Ccc) -> usize {
    let vertices: Vec<&CellId> = s.cells_of_rank(0).collect();
    let index: BTreeMap<&CellId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for e in s.cells_of_rank(1) {
        let ends: Vec<usize> = s.faces(e).expect("own cell").map(|v| index[v]).collect();
        for w in ends.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    (0..vertices.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Every closed cell has the homology of a point: its augmented chain
/// complex is acyclic. Returns the first cell that fails.
pub fn cells_acyclic(s: &Ccc, signs: &SignTable) -> Result<Result<(), CellId>, Error> {
    for x in s.cells() {
        let closure = s.closure([x])?;
        let cell = s.subcomplex(closure.iter())?;
        if !ChainComplex::augmented(&cell, signs)?.is_acyclic() {
            return Ok(Err(x.clone()));
        }
    }
    Ok(Ok(()))
}

/// Torsion coefficients that fit in `u64`; for reports and comparisons.
pub fn small_torsion(g: &HomologyGroup) -> Option<Vec<u64>> {
    g.torsion.iter().map(ToPrimitive::to_u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::fixtures;
    use crate::flags::orient_all_cells;

    fn homology_of(s: &Ccc) -> Vec<HomologyGroup> {
        let t = orient_all_cells(s).unwrap();
        let cc = ChainComplex::new(s, &t).unwrap();
        assert!(cc.is_chain_complex());
        cc.homology()
    }

    #[test]
    fn torus_and_klein_bottle() {
        assert_eq!(
            homology_of(&fixtures::torus9()),
            vec![HomologyGroup::free(1), HomologyGroup::free(2), HomologyGroup::free(1)]
        );
        assert_eq!(
            homology_of(&fixtures::klein9()),
            vec![HomologyGroup::free(1), HomologyGroup::new(1, [2]), HomologyGroup::free(0)]
        );
    }

    #[test]
    fn cohomology_shifts_torsion_up() {
        let s = fixtures::klein9();
        let t = orient_all_cells(&s).unwrap();
        let cc = ChainComplex::new(&s, &t).unwrap();
        assert_eq!(
            cc.cohomology(),
            vec![HomologyGroup::free(1), HomologyGroup::free(1), HomologyGroup::new(0, [2])]
        );
    }

    #[test]
    fn balls_spheres_and_bands() {
        assert_eq!(
            homology_of(&fixtures::tetrahedron_boundary()),
            vec![HomologyGroup::free(1), HomologyGroup::free(0), HomologyGroup::free(1)]
        );
        let ball = homology_of(&fixtures::tetrahedron_solid());
        assert_eq!(ball[0], HomologyGroup::free(1));
        assert!(ball[1..].iter().all(HomologyGroup::is_zero));
        assert_eq!(
            homology_of(&fixtures::mobius3()),
            vec![HomologyGroup::free(1), HomologyGroup::free(1), HomologyGroup::free(0)]
        );
        assert_eq!(homology_of(&fixtures::disjoint_edges())[0], HomologyGroup::free(2));
    }

    #[test]
    fn augmented_simplex_is_acyclic() {
        for n in 0..4 {
            let s = fixtures::simplex(n);
            let t = orient_all_cells(&s).unwrap();
            let cc = ChainComplex::augmented(&s, &t).unwrap();
            assert!(cc.is_chain_complex());
            assert!(cc.is_acyclic(), "simplex {n}");
        }
        let s = fixtures::disjoint_edges();
        let t = orient_all_cells(&s).unwrap();
        assert!(!ChainComplex::augmented(&s, &t).unwrap().is_acyclic());
    }

    #[test]
    fn relative_to_the_boundary() {
        let s = fixtures::tetrahedron_solid();
        let t = orient_all_cells(&s).unwrap();
        let boundary = s.classify().unwrap().boundary;
        let cc = ChainComplex::relative(&s, &t, &boundary).unwrap();
        assert_eq!(
            cc.homology(),
            vec![
                HomologyGroup::free(0),
                HomologyGroup::free(0),
                HomologyGroup::free(0),
                HomologyGroup::free(1)
            ]
        );
        let open = BTreeSet::from([CellId::base("a.b")]);
        assert!(matches!(ChainComplex::relative(&s, &t, &open), Err(Error::NotClosed(_))));
    }

    #[test]
    fn generators_are_cycles() {
        for s in [fixtures::torus9(), fixtures::klein9()] {
            let t = orient_all_cells(&s).unwrap();
            let cc = ChainComplex::new(&s, &t).unwrap();
            let g = cc.generators(1).unwrap();
            let h = &cc.homology()[1];
            assert_eq!(g.free.len(), h.betti);
            assert_eq!(g.torsion.len(), h.torsion.len());
            for c in g.free.iter().chain(g.torsion.iter().map(|(c, _)| c)) {
                assert!(boundary(&s, &t, c).unwrap().is_zero());
                assert_eq!(cc.apply_boundary(1, c).unwrap(), Chain::zero());
                // A three-edge loop around the grid.
                assert!(c.support_len() <= 6, "{c}");
            }
        }
    }

    #[test]
    fn cells_of_fixtures_are_acyclic() {
        for s in [fixtures::torus9(), fixtures::klein9(), fixtures::tetrahedron_solid()] {
            let t = orient_all_cells(&s).unwrap();
            assert_eq!(cells_acyclic(&s, &t).unwrap(), Ok(()));
        }
    }

    #[test]
    fn components_by_union_find() {
        assert_eq!(h0_components(&fixtures::torus9()), 1);
        assert_eq!(h0_components(&fixtures::disjoint_edges()), 2);
        assert_eq!(h0_components(&Ccc::empty()), 0);
    }

    #[test]
    fn group_display() {
        assert_eq!(HomologyGroup::free(0).to_string(), "0");
        assert_eq!(HomologyGroup::free(1).to_string(), "Z");
        assert_eq!(HomologyGroup::new(2, [2, 4]).to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(HomologyGroup::new(0, [3]).to_string(), "Z/3");
    }
}
