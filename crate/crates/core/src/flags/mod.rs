//! Flags, the flag adjacency graph, orientations and incidence signs.

mod graph;
mod orientation;
mod signs;

pub use graph::{
    cells_flag_connected, flag_graph, flags_of, is_flag_connected, is_orientable, orient, FlagGraph,
    Orientability,
};
pub use orientation::Orientation;
pub use signs::{orient_all_cells, orient_cells_with, simplicial_signs, SignTable};

pub(crate) use graph::flags_below;
pub(crate) use signs::permutation_orientations;

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Mul, Neg};

use crate::cell_id::CellId;

/// A ±1 value: an orientation color or an incidence sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A chain of cells, strictly descending one rank per step.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag(pub Vec<CellId>);

impl Flag {
    pub fn top(&self) -> Option<&CellId> {
        self.0.first()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Drops the top cell.
    pub fn tail(&self) -> Flag {
        Flag(self.0.iter().skip(1).cloned().collect())
    }

    /// Puts `cell` on top.
    pub fn extended(&self, cell: CellId) -> Flag {
        let mut cells = Vec::with_capacity(self.0.len() + 1);
        cells.push(cell);
        cells.extend(self.0.iter().cloned());
        Flag(cells)
    }

    /// Number of positions where the two flags differ; `None` if the lengths
    /// differ.
    pub fn differences(&self, other: &Flag) -> Option<usize> {
        (self.len() == other.len())
            .then(|| self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(">")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}
