//! Structured cell labels.
//!
//! Every producer in this crate labels its cells with a [`CellId`]. Plain
//! cells carry a name; subdivisions, duals, products and barycentric chains
//! wrap the labels of the cells they came from, so a label always records how
//! a cell was built. The derived ordering is lexicographic on structure and is
//! the iteration order used everywhere.
//!
//! Text form:
//!
//! | variant | text |
//! |---------|------|
//! | `Base("v00")` | `v00` |
//! | `Cone { apex: x, base: None }` | `C(x;0)` |
//! | `Cone { apex: x, base: Some(y) }` | `C(x;y)` |
//! | `Dual(x)` | `D(x)` |
//! | `Pair(x, y)` | `P(x;y)` |
//! | `Chain([a, b, c])` | `B(a;b;c)` |

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellId {
    /// A named input cell.
    Base(String),
    /// The cone over `base` with vertex at the subdivision point `apex`.
    /// `base: None` is the cone over the empty cell, i.e. the new vertex.
    Cone {
        apex: Box<CellId>,
        base: Option<Box<CellId>>,
    },
    /// The dual cell of a cell of a manifold-like complex.
    Dual(Box<CellId>),
    /// A cell of a Cartesian product.
    Pair(Box<CellId>, Box<CellId>),
    /// A totally ordered set of cells, listed in increasing order; a cell of
    /// the barycentric subdivision.
    Chain(Vec<CellId>),
}

impl CellId {
    /// Builds a named cell. Panics if `name` is not a valid base name; use
    /// [`CellId::try_base`] for untrusted input.
    pub fn base(name: &str) -> CellId {
        CellId::try_base(name).expect("invalid base cell name")
    }

    pub fn try_base(name: &str) -> Result<CellId, Error> {
        if is_valid_base_name(name) {
            Ok(CellId::Base(name.to_string()))
        } else {
            Err(Error::InvalidName(name.to_string()))
        }
    }

    pub fn cone(apex: CellId, base: Option<CellId>) -> CellId {
        CellId::Cone {
            apex: Box::new(apex),
            base: base.map(Box::new),
        }
    }

    /// The dual label; taking it twice gives back the original label.
    pub fn dual(self) -> CellId {
        match self {
            CellId::Dual(inner) => *inner,
            other => CellId::Dual(Box::new(other)),
        }
    }

    pub fn pair(left: CellId, right: CellId) -> CellId {
        CellId::Pair(Box::new(left), Box::new(right))
    }

    pub fn is_cone(&self) -> bool {
        matches!(self, CellId::Cone { .. })
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            CellId::Base(name) => Some(name),
            _ => None,
        }
    }
}

/// Base names are non-empty, whitespace-free, avoid the structural
/// characters `( ) ;` and the comment marker `#`, and may not be `0` (the
/// empty-base marker).
pub fn is_valid_base_name(name: &str) -> bool {
    !name.is_empty()
        && name != "0"
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ';' | '#'))
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellId::Base(name) => f.write_str(name),
            CellId::Cone { apex, base } => match base {
                Some(base) => write!(f, "C({};{})", apex, base),
                None => write!(f, "C({};0)", apex),
            },
            CellId::Dual(inner) => write!(f, "D({})", inner),
            CellId::Pair(left, right) => write!(f, "P({};{})", left, right),
            CellId::Chain(cells) => {
                f.write_str("B(")?;
                for (i, cell) in cells.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{}", cell)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for CellId {
    type Err = Error;

    fn from_str(text: &str) -> Result<CellId, Error> {
        parse_id(text).ok_or_else(|| Error::InvalidName(text.to_string()))
    }
}

fn parse_id(text: &str) -> Option<CellId> {
    let (tag, inner) = match text.find('(') {
        Some(open) if text.ends_with(')') => (&text[..open], &text[open + 1..text.len() - 1]),
        Some(_) => return None,
        None => {
            return is_valid_base_name(text).then(|| CellId::Base(text.to_string()));
        }
    };
    let parts = split_top_level(inner)?;
    match (tag, parts.as_slice()) {
        ("C", [apex, base]) => {
            let apex = parse_id(apex)?;
            let base = if *base == "0" {
                None
            } else {
                Some(parse_id(base)?)
            };
            Some(CellId::cone(apex, base))
        }
        ("D", [inner]) => Some(CellId::Dual(Box::new(parse_id(inner)?))),
        ("P", [left, right]) => Some(CellId::pair(parse_id(left)?, parse_id(right)?)),
        ("B", cells) if !cells.is_empty() => cells
            .iter()
            .map(|c| parse_id(c))
            .collect::<Option<Vec<_>>>()
            .map(CellId::Chain),
        _ => None,
    }
}

/// Splits on `;` at parenthesis depth zero.
fn split_top_level(text: &str) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ';' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&text[start..]);
    Some(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    #[test]
    fn cone_text_form() {
        let x = CellId::base("x");
        let y = CellId::base("y");
        assert_eq!(format!("{}", CellId::cone(x.clone(), None)), "C(x;0)");
        let nested = CellId::cone(y.clone(), Some(CellId::cone(x.clone(), Some(y.clone()))));
        assert_eq!(format!("{}", nested), "C(y;C(x;y))");
        assert_eq!("C(y;C(x;y))".parse::<CellId>().unwrap(), nested);
    }

    #[test]
    fn dual_is_an_involution() {
        let x = CellId::base("f00");
        assert_eq!(x.clone().dual().dual(), x);
        assert_eq!(format!("{}", x.dual()), "D(f00)");
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "0", "a b", "C(x)", "C(x;y", "Q(x)", "B()", "a;b", "x)"] {
            assert!(bad.parse::<CellId>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn chain_round_trip() {
        let id = CellId::Chain(vec![CellId::base("v"), CellId::base("e"), CellId::base("f")]);
        assert_eq!(format!("{}", id), "B(v;e;f)");
        assert_eq!("B(v;e;f)".parse::<CellId>().unwrap(), id);
    }
}
