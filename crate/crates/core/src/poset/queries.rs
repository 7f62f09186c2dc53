use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::Ccc;
use crate::bitset::BitSet;
use crate::cell_id::CellId;
use crate::error::Error;

/// Shape summary of a non-empty complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub dimension: usize,
    pub equidimensional: bool,
    /// Cells of rank below the dimension lying under exactly one maximal cell.
    pub boundary: BTreeSet<CellId>,
    pub nonsingular: bool,
    pub manifold_like: bool,
}

impl Ccc {
    /// Down-closure of `cells`.
    pub fn closure<'a, I>(&self, cells: I) -> Result<BTreeSet<CellId>, Error>
    where
        I: IntoIterator<Item = &'a CellId>,
    {
        let set = self.set_of(cells)?;
        Ok(self.ids_of(&self.closure_of(&set)))
    }

    /// The up-set `U(x)`: all cells `≥ x`.
    pub fn up_set(&self, x: &CellId) -> Result<BTreeSet<CellId>, Error> {
        Ok(self.ids_of(&self.above[self.idx(x)?]))
    }

    /// Greatest lower bound; `None` when `cells` has no common lower bound
    /// (or, in a poset violating the meet axiom, no greatest one).
    pub fn meet<'a, I>(&self, cells: I) -> Result<Option<CellId>, Error>
    where
        I: IntoIterator<Item = &'a CellId>,
    {
        let idx = self.indices(cells)?;
        Ok(self.meet_of(&idx).map(|i| self.ids[i].clone()))
    }

    /// Least upper bound, computed as the meet of all upper bounds.
    pub fn join<'a, I>(&self, cells: I) -> Result<Option<CellId>, Error>
    where
        I: IntoIterator<Item = &'a CellId>,
    {
        let idx = self.indices(cells)?;
        let bounds = self.upper_bounds(&idx);
        if bounds.is_empty() {
            return Ok(None);
        }
        let bounds: Vec<usize> = bounds.iter().collect();
        Ok(self
            .meet_of(&bounds)
            .filter(|m| bounds.contains(m))
            .map(|i| self.ids[i].clone()))
    }

    /// The closed star `cl(U(x))` as a complex.
    pub fn star(&self, x: &CellId) -> Result<Ccc, Error> {
        let i = self.idx(x)?;
        Ok(self.induced(&self.closure_of(&self.above[i])))
    }

    /// `M(x)`: the star of `x` minus `U(x)`.
    pub fn open_star_complement(&self, x: &CellId) -> Result<BTreeSet<CellId>, Error> {
        let i = self.idx(x)?;
        Ok(self.ids_of(&self.link_set(i)))
    }

    /// The closed subcomplex on `cells`; errors if `cells` is not closed.
    pub fn subcomplex<'a, I>(&self, cells: I) -> Result<Ccc, Error>
    where
        I: IntoIterator<Item = &'a CellId>,
    {
        let set = self.set_of(cells)?;
        for x in set.iter() {
            if self.below[x].iter().any(|y| !set.contains(y)) {
                return Err(Error::NotClosed(self.ids[x].clone()));
            }
        }
        Ok(self.induced(&set))
    }

    /// Cells of rank at most `rank`.
    pub fn skeleton(&self, rank: usize) -> Ccc {
        let mut keep = self.empty_set();
        for (i, &r) in self.ranks.iter().enumerate() {
            if r <= rank {
                keep.insert(i);
            }
        }
        self.induced(&keep)
    }

    pub fn maximal_cells(&self) -> impl Iterator<Item = &CellId> + '_ {
        (0..self.len())
            .filter(|&i| self.is_maximal(i))
            .map(|i| &self.ids[i])
    }

    pub fn classify(&self) -> Result<Classification, Error> {
        let dimension = self.dimension().ok_or(Error::EmptyComplex)?;
        let maximal: Vec<usize> = (0..self.len()).filter(|&i| self.is_maximal(i)).collect();
        let equidimensional = maximal.iter().all(|&m| self.ranks[m] == dimension);
        let tops_over = |i: usize| maximal.iter().filter(|&&m| self.le_idx(i, m)).count();

        let boundary: BTreeSet<CellId> = (0..self.len())
            .filter(|&i| self.ranks[i] < dimension && tops_over(i) == 1)
            .map(|i| self.ids[i].clone())
            .collect();
        let ridges_ok = dimension == 0
            || (0..self.len())
                .filter(|&i| self.ranks[i] + 1 == dimension)
                .all(|i| tops_over(i) <= 2);
        let edges_ok = (0..self.len())
            .filter(|&i| self.ranks[i] == 1)
            .all(|i| self.faces[i].len() == 2);
        let nonsingular = equidimensional && ridges_ok && edges_ok;
        Ok(Classification {
            dimension,
            equidimensional,
            manifold_like: nonsingular && boundary.is_empty(),
            boundary,
            nonsingular,
        })
    }

    pub fn is_manifold_like(&self) -> bool {
        self.classify().is_ok_and(|c| c.manifold_like)
    }

    pub fn is_equidimensional(&self) -> bool {
        self.classify().is_ok_and(|c| c.equidimensional)
    }

    pub(crate) fn closure_of(&self, set: &BitSet) -> BitSet {
        let mut out = self.empty_set();
        for x in set.iter() {
            out.union_with(&self.below[x]);
        }
        out
    }

    pub(crate) fn star_set(&self, x: usize) -> BitSet {
        self.closure_of(&self.above[x])
    }

    /// `M(x)` as a set of indices.
    pub(crate) fn link_set(&self, x: usize) -> BitSet {
        let mut out = self.empty_set();
        for y in self.star_set(x).iter() {
            if !self.above[x].contains(y) {
                out.insert(y);
            }
        }
        out
    }

    pub(crate) fn meet_of(&self, cells: &[usize]) -> Option<usize> {
        let (&first, rest) = cells.split_first()?;
        let mut common = self.below[first].clone();
        for &c in rest {
            common.intersect_with(&self.below[c]);
        }
        if common.is_empty() {
            return None;
        }
        self.greatest(&common)
    }

    fn indices<'a, I>(&self, cells: I) -> Result<Vec<usize>, Error>
    where
        I: IntoIterator<Item = &'a CellId>,
    {
        cells.into_iter().map(|c| self.idx(c)).collect()
    }
}
