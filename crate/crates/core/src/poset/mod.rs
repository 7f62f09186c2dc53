//! Finite ranked posets and the combinatorial cell complex structure.
//!
//! A [`Ccc`] stores its cells sorted by [`CellId`] together with the full
//! order relation as one bit row per cell, in both directions. Face and
//! coface lists are cached at construction. The value is immutable; every
//! operation is a pure query or builds a new complex.

mod axioms;
mod construct;
mod queries;

pub use axioms::{Axiom, ValidationReport, Violation};
pub use queries::Classification;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::cell_id::CellId;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ccc {
    ids: Vec<CellId>,
    index: BTreeMap<CellId, usize>,
    ranks: Vec<usize>,
    /// `below[x]` is the closure of `x` (contains `x`).
    below: Vec<BitSet>,
    /// `above[x]` is the up-set `U(x)` (contains `x`).
    above: Vec<BitSet>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
}

impl Ccc {
    /// Builds a ranked poset from declared cells and a generating relation.
    ///
    /// The order is the reflexive-transitive closure of `covers`. Pairs need
    /// not be codimension one. The axioms are not checked here; see
    /// [`Ccc::validate_axioms`].
    pub fn build<C, R>(cells: C, covers: R) -> Result<Ccc, Error>
    where
        C: IntoIterator<Item = (CellId, usize)>,
        R: IntoIterator<Item = (CellId, CellId)>,
    {
        let mut cells: Vec<(CellId, usize)> = cells.into_iter().collect();
        cells.sort();
        for pair in cells.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateCell(pair[0].0.clone()));
            }
        }
        let index: BTreeMap<CellId, usize> = cells
            .iter()
            .enumerate()
            .map(|(i, (id, _))| (id.clone(), i))
            .collect();
        let ranks: Vec<usize> = cells.iter().map(|(_, r)| *r).collect();
        let lookup = |id: &CellId| index.get(id).copied().ok_or_else(|| Error::UnknownCell(id.clone()));

        let mut lower: Vec<Vec<usize>> = alloc::vec![Vec::new(); cells.len()];
        for (lo, up) in covers {
            let (l, u) = (lookup(&lo)?, lookup(&up)?);
            if l == u {
                return Err(Error::CoverCycle(lo));
            }
            if ranks[l] >= ranks[u] {
                return Err(Error::CoverRankOrder { lower: lo, upper: up });
            }
            lower[u].push(l);
        }
        let ids = cells.into_iter().map(|(id, _)| id).collect();
        Ok(Ccc::from_lower(ids, index, ranks, &lower))
    }

    /// Closes a rank-increasing generating relation given on indices.
    fn from_lower(
        ids: Vec<CellId>,
        index: BTreeMap<CellId, usize>,
        ranks: Vec<usize>,
        lower: &[Vec<usize>],
    ) -> Ccc {
        let n = ids.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| ranks[i]);
        let mut below = alloc::vec![BitSet::new(n); n];
        for &x in &order {
            let mut row = BitSet::new(n);
            row.insert(x);
            for &l in &lower[x] {
                row.union_with(&below[l]);
            }
            below[x] = row;
        }
        let mut above = alloc::vec![BitSet::new(n); n];
        for (x, row) in below.iter().enumerate() {
            for y in row.iter() {
                above[y].insert(x);
            }
        }
        let faces: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                below[x]
                    .iter()
                    .filter(|&y| ranks[y] + 1 == ranks[x])
                    .collect()
            })
            .collect();
        let mut cofaces = alloc::vec![Vec::new(); n];
        for (x, fs) in faces.iter().enumerate() {
            for &y in fs {
                cofaces[y].push(x);
            }
        }
        Ccc {
            ids,
            index,
            ranks,
            below,
            above,
            faces,
            cofaces,
        }
    }

    /// The complex with no cells.
    pub fn empty() -> Ccc {
        Ccc::from_lower(Vec::new(), BTreeMap::new(), Vec::new(), &[])
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// All cells in [`CellId`] order.
    pub fn cells(&self) -> &[CellId] {
        &self.ids
    }

    pub fn contains(&self, id: &CellId) -> bool {
        self.index.contains_key(id)
    }

    pub fn rank(&self, id: &CellId) -> Option<usize> {
        self.index.get(id).map(|&i| self.ranks[i])
    }

    /// `y ≤ x`. False if either cell is unknown.
    pub fn le(&self, y: &CellId, x: &CellId) -> bool {
        match (self.index.get(y), self.index.get(x)) {
            (Some(&y), Some(&x)) => self.below[x].contains(y),
            _ => false,
        }
    }

    pub fn faces(&self, id: &CellId) -> Result<impl Iterator<Item = &CellId> + '_, Error> {
        let i = self.idx(id)?;
        Ok(self.faces[i].iter().map(move |&y| &self.ids[y]))
    }

    pub fn cofaces(&self, id: &CellId) -> Result<impl Iterator<Item = &CellId> + '_, Error> {
        let i = self.idx(id)?;
        Ok(self.cofaces[i].iter().map(move |&y| &self.ids[y]))
    }

    pub fn cells_of_rank(&self, rank: usize) -> impl Iterator<Item = &CellId> + '_ {
        self.ids
            .iter()
            .zip(&self.ranks)
            .filter(move |(_, &r)| r == rank)
            .map(|(id, _)| id)
    }

    /// Maximum rank, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.ranks.iter().copied().max()
    }

    /// Number of cells of each rank `0..=dimension`.
    pub fn face_vector(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.dimension().map_or(0, |d| d + 1)];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        counts
    }

    /// Alternating sum of the face vector.
    pub fn euler_characteristic(&self) -> i64 {
        self.face_vector()
            .iter()
            .enumerate()
            .map(|(r, &c)| if r % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// All codimension-one pairs `(face, cell)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(&CellId, &CellId)> {
        let mut pairs = Vec::new();
        for (x, fs) in self.faces.iter().enumerate() {
            for &y in fs {
                pairs.push((&self.ids[y], &self.ids[x]));
            }
        }
        pairs.sort();
        pairs
    }

    /// Applies `f` to every label. `f` must be injective.
    pub fn relabel<F>(&self, mut f: F) -> Result<Ccc, Error>
    where
        F: FnMut(&CellId) -> CellId,
    {
        let new: Vec<CellId> = self.ids.iter().map(&mut f).collect();
        let cells = new.iter().cloned().zip(self.ranks.iter().copied());
        let covers: Vec<(CellId, CellId)> = self
            .faces
            .iter()
            .enumerate()
            .flat_map(|(x, fs)| fs.iter().map(move |&y| (y, x)))
            .map(|(y, x)| (new[y].clone(), new[x].clone()))
            .collect();
        Ccc::build(cells, covers)
    }

    // Index-level access for the rest of the crate.

    pub(crate) fn idx(&self, id: &CellId) -> Result<usize, Error> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownCell(id.clone()))
    }

    pub(crate) fn id(&self, i: usize) -> &CellId {
        &self.ids[i]
    }

    pub(crate) fn rank_of(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub(crate) fn below(&self, i: usize) -> &BitSet {
        &self.below[i]
    }

    pub(crate) fn above(&self, i: usize) -> &BitSet {
        &self.above[i]
    }

    pub(crate) fn le_idx(&self, y: usize, x: usize) -> bool {
        self.below[x].contains(y)
    }

    pub(crate) fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub(crate) fn cofaces_of(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    pub(crate) fn is_maximal(&self, i: usize) -> bool {
        self.cofaces[i].is_empty()
    }

    pub(crate) fn empty_set(&self) -> BitSet {
        BitSet::new(self.len())
    }

    /// The induced sub-poset on `keep`. Ranks and order are inherited.
    pub(crate) fn induced(&self, keep: &BitSet) -> Ccc {
        let kept: Vec<usize> = keep.iter().collect();
        let mut new_index = alloc::vec![usize::MAX; self.len()];
        for (j, &i) in kept.iter().enumerate() {
            new_index[i] = j;
        }
        let ids: Vec<CellId> = kept.iter().map(|&i| self.ids[i].clone()).collect();
        let index = ids.iter().cloned().enumerate().map(|(j, id)| (id, j)).collect();
        let ranks = kept.iter().map(|&i| self.ranks[i]).collect();
        let lower: Vec<Vec<usize>> = kept
            .iter()
            .map(|&i| {
                self.below[i]
                    .iter()
                    .filter(|&y| y != i && keep.contains(y))
                    .map(|y| new_index[y])
                    .collect()
            })
            .collect();
        Ccc::from_lower(ids, index, ranks, &lower)
    }

    pub(crate) fn set_of<'a, I>(&self, ids: I) -> Result<BitSet, Error>
    where
        I: IntoIterator<Item = &'a CellId>,
    {
        let mut set = self.empty_set();
        for id in ids {
            set.insert(self.idx(id)?);
        }
        Ok(set)
    }

    pub(crate) fn ids_of(&self, set: &BitSet) -> alloc::collections::BTreeSet<CellId> {
        set.iter().map(|i| self.ids[i].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn id(s: &str) -> CellId {
        CellId::base(s)
    }

    #[test]
    fn single_vertex() {
        let s = Ccc::build([(id("v"), 0)], []).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.rank(&id("v")), Some(0));
        assert_eq!(s.face_vector(), alloc::vec![1]);
    }

    #[test]
    fn reflexive_cover_is_a_cycle() {
        let err = Ccc::build([(id("e"), 1)], [(id("e"), id("e"))]).unwrap_err();
        assert_eq!(err, Error::CoverCycle(id("e")));
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Ccc::build([(id("a"), 0), (id("a"), 1)], []).unwrap_err(),
            Error::DuplicateCell(id("a"))
        );
        assert_eq!(
            Ccc::build([(id("a"), 0)], [(id("a"), id("b"))]).unwrap_err(),
            Error::UnknownCell(id("b"))
        );
        assert_eq!(
            Ccc::build([(id("a"), 1), (id("b"), 1)], [(id("a"), id("b"))]).unwrap_err(),
            Error::CoverRankOrder { lower: id("a"), upper: id("b") }
        );
    }

    #[test]
    fn two_triangles_from_explicit_covers() {
        // 4 vertices, 5 edges, 2 triangles, 16 covering pairs.
        let cells = [
            ("a", 0), ("b", 0), ("c", 0), ("d", 0),
            ("a.b", 1), ("a.c", 1), ("b.c", 1), ("b.d", 1), ("c.d", 1),
            ("a.b.c", 2), ("b.c.d", 2),
        ];
        let covers = [
            ("a", "a.b"), ("b", "a.b"), ("a", "a.c"), ("c", "a.c"), ("b", "b.c"), ("c", "b.c"),
            ("b", "b.d"), ("d", "b.d"), ("c", "c.d"), ("d", "c.d"),
            ("a.b", "a.b.c"), ("a.c", "a.b.c"), ("b.c", "a.b.c"),
            ("b.c", "b.c.d"), ("b.d", "b.c.d"), ("c.d", "b.c.d"),
        ];
        assert_eq!(covers.len(), 16);
        let s = Ccc::build(
            cells.iter().map(|&(n, r)| (id(n), r)),
            covers.iter().map(|&(l, u)| (id(l), id(u))),
        )
        .unwrap();
        assert_eq!(s.len(), 11);
        assert!(s.le(&id("a"), &id("a.b.c")));
        assert!(!s.le(&id("a"), &id("b.c.d")));
        assert_eq!(s, fixtures::two_triangles());
    }

    #[test]
    fn relabel_preserves_structure() {
        let s = fixtures::torus9();
        let t = s.relabel(|c| CellId::pair(CellId::base("p"), c.clone())).unwrap();
        assert_eq!(t.face_vector(), s.face_vector());
        let back = t
            .relabel(|c| match c {
                CellId::Pair(_, inner) => (**inner).clone(),
                other => other.clone(),
            })
            .unwrap();
        assert_eq!(back, s);
    }
}
