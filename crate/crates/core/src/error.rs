use alloc::string::String;
use alloc::vec::Vec;

use crate::cell_id::CellId;
use crate::flags::Flag;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid cell name `{0}`")]
    InvalidName(String),
    #[error("cell `{0}` declared twice")]
    DuplicateCell(CellId),
    #[error("unknown cell `{0}`")]
    UnknownCell(CellId),
    #[error("cover `{lower}` < `{upper}` does not increase rank")]
    CoverRankOrder { lower: CellId, upper: CellId },
    #[error("cover relation has a cycle through `{0}`")]
    CoverCycle(CellId),
    #[error("the complex has no cells")]
    EmptyComplex,
    #[error("the complex is not equidimensional")]
    NotEquidimensional,
    #[error("the complex is not manifold-like")]
    NotManifoldLike,
    #[error("the complex is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("flag graph is not connected ({components} components)")]
    NotFlagConnected { components: usize },
    #[error("flag graph is not bipartite (odd cycle of length {})", .0.len())]
    OddFlagCycle(Vec<Flag>),
    #[error("cell `{cell}` is not orientable")]
    CellNotOrientable { cell: CellId, reason: String },
    #[error("no orientation recorded for cell `{0}`")]
    MissingOrientation(CellId),
    #[error("no incidence sign for `{upper}` over `{lower}`")]
    MissingSign { upper: CellId, lower: CellId },
    #[error("cannot subdivide at the rank-0 cell `{0}`")]
    RankZeroSubdivision(CellId),
    #[error("subset is not closed: `{0}` has a face outside it")]
    NotClosed(CellId),
    #[error("chain of degree {found} where degree {expected} was required")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("no uniform sign relates the two chain maps in degree {degree}")]
    NoUniformSign { degree: usize },
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
}
