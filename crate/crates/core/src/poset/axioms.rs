use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::Ccc;
use crate::bitset::BitSet;
use crate::cell_id::CellId;

/// The four cell-complex axioms; the second splits into its meet part and
/// its chain part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `y < x` implies `rank(y) < rank(x)`.
    RankMonotone,
    /// Every subset bounded below has a greatest lower bound.
    Meets,
    /// Between `y < x` there is a cell one rank above `y`.
    Chains,
    /// Every cell of rank ≥ 1 is the least upper bound of its faces.
    JoinOfFaces,
    /// Every codimension-2 interval has exactly two intermediate cells, and
    /// they meet at the bottom of the interval.
    Diamond,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::RankMonotone => "1",
            Axiom::Meets => "2a",
            Axiom::Chains => "2b",
            Axiom::JoinOfFaces => "3",
            Axiom::Diamond => "4",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witnesses: Vec<CellId>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, axiom: Axiom) -> impl Iterator<Item = &Violation> + '_ {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }
}

impl Ccc {
    /// Checks every axiom and reports each failure with witness cells.
    ///
    /// Axiom 2a is checked on pairs: in a finite poset, pairwise greatest
    /// lower bounds generate the meet of every subset bounded below.
    pub fn validate_axioms(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.len();
        for x in 0..n {
            for y in self.below[x].iter().filter(|&y| y != x) {
                if let Some(v) = self.check_rank(y, x) {
                    violations.push(v);
                }
                if let Some(v) = self.check_chain(y, x) {
                    violations.push(v);
                }
                if let Some(v) = self.check_diamond(y, x) {
                    violations.push(v);
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if let Some(v) = self.check_meet(a, b) {
                    violations.push(v);
                }
            }
        }
        for x in 0..n {
            if let Some(v) = self.check_join(x) {
                violations.push(v);
            }
        }
        violations.sort_by(|p, q| (p.axiom, &p.witnesses).cmp(&(q.axiom, &q.witnesses)));
        ValidationReport { violations }
    }

    fn check_rank(&self, y: usize, x: usize) -> Option<Violation> {
        (self.ranks[y] >= self.ranks[x]).then(|| Violation {
            axiom: Axiom::RankMonotone,
            witnesses: alloc::vec![self.ids[y].clone(), self.ids[x].clone()],
            message: format!(
                "`{}` < `{}` but ranks are {} and {}",
                self.ids[y], self.ids[x], self.ranks[y], self.ranks[x]
            ),
        })
    }

    fn check_chain(&self, y: usize, x: usize) -> Option<Violation> {
        if self.ranks[x] <= self.ranks[y] + 1 {
            return None;
        }
        let step = self.ranks[y] + 1;
        let found = self.above[y]
            .iter()
            .any(|c| self.ranks[c] == step && self.below[x].contains(c));
        (!found).then(|| Violation {
            axiom: Axiom::Chains,
            witnesses: alloc::vec![self.ids[y].clone(), self.ids[x].clone()],
            message: format!(
                "no cell of rank {} lies between `{}` and `{}`",
                step, self.ids[y], self.ids[x]
            ),
        })
    }

    fn check_diamond(&self, y: usize, x: usize) -> Option<Violation> {
        if self.ranks[x] != self.ranks[y] + 2 {
            return None;
        }
        let middle = self.intermediates(y, x);
        let witnesses = alloc::vec![self.ids[y].clone(), self.ids[x].clone()];
        if middle.len() != 2 {
            return Some(Violation {
                axiom: Axiom::Diamond,
                witnesses,
                message: format!(
                    "interval [`{}`, `{}`] has {} intermediate cells",
                    self.ids[y],
                    self.ids[x],
                    middle.len()
                ),
            });
        }
        let mut common = self.below[middle[0]].clone();
        common.intersect_with(&self.below[middle[1]]);
        (common != self.below[y]).then(|| Violation {
            axiom: Axiom::Diamond,
            witnesses,
            message: format!(
                "`{}` and `{}` do not meet at `{}`",
                self.ids[middle[0]], self.ids[middle[1]], self.ids[y]
            ),
        })
    }

    fn check_meet(&self, a: usize, b: usize) -> Option<Violation> {
        let mut common = self.below[a].clone();
        common.intersect_with(&self.below[b]);
        if common.is_empty() || self.greatest(&common).is_some() {
            return None;
        }
        Some(Violation {
            axiom: Axiom::Meets,
            witnesses: alloc::vec![self.ids[a].clone(), self.ids[b].clone()],
            message: format!(
                "`{}` and `{}` have common lower bounds but no greatest one",
                self.ids[a], self.ids[b]
            ),
        })
    }

    fn check_join(&self, x: usize) -> Option<Violation> {
        if self.ranks[x] == 0 {
            return None;
        }
        let bounds = self.upper_bounds(&self.faces[x]);
        (!bounds.is_subset(&self.above[x])).then(|| Violation {
            axiom: Axiom::JoinOfFaces,
            witnesses: alloc::vec![self.ids[x].clone()],
            message: format!("`{}` is not the least upper bound of its faces", self.ids[x]),
        })
    }

    /// Cells strictly between `y` and `x` one rank above `y`.
    pub(crate) fn intermediates(&self, y: usize, x: usize) -> Vec<usize> {
        self.faces[x]
            .iter()
            .copied()
            .filter(|&m| self.below[m].contains(y))
            .collect()
    }

    /// The greatest element of `set`, if it has one.
    pub(crate) fn greatest(&self, set: &BitSet) -> Option<usize> {
        let top = set.iter().max_by_key(|&i| self.ranks[i])?;
        set.is_subset(&self.below[top]).then_some(top)
    }

    pub(crate) fn upper_bounds(&self, cells: &[usize]) -> BitSet {
        let mut bounds = BitSet::new(self.len());
        for i in 0..self.len() {
            bounds.insert(i);
        }
        for &c in cells {
            bounds.intersect_with(&self.above[c]);
        }
        bounds
    }
}

impl Violation {
    /// Re-runs the check that produced this violation.
    pub fn holds_in(&self, s: &Ccc) -> bool {
        let idx: Option<Vec<usize>> = self.witnesses.iter().map(|w| s.idx(w).ok()).collect();
        let Some(idx) = idx else { return false };
        match (self.axiom, idx.as_slice()) {
            (Axiom::RankMonotone, &[y, x]) => s.le_idx(y, x) && s.check_rank(y, x).is_some(),
            (Axiom::Chains, &[y, x]) => s.le_idx(y, x) && s.check_chain(y, x).is_some(),
            (Axiom::Diamond, &[y, x]) => s.le_idx(y, x) && s.check_diamond(y, x).is_some(),
            (Axiom::Meets, &[a, b]) => s.check_meet(a, b).is_some(),
            (Axiom::JoinOfFaces, &[x]) => s.check_join(x).is_some(),
            _ => false,
        }
    }
}
