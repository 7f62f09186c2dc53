use alloc::collections::BTreeMap;
use core::fmt;

use super::{Flag, Sign};
use crate::cell_id::CellId;

/// A ±1 colouring of a set of flags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    colors: BTreeMap<Flag, Sign>,
}

impl Orientation {
    pub fn from_pairs<I: IntoIterator<Item = (Flag, Sign)>>(pairs: I) -> Orientation {
        Orientation {
            colors: pairs.into_iter().collect(),
        }
    }

    /// The orientation of a vertex: its single flag is `+1`.
    pub fn point(v: CellId) -> Orientation {
        Orientation::from_pairs([(Flag(alloc::vec![v]), Sign::Plus)])
    }

    pub fn get(&self, flag: &Flag) -> Option<Sign> {
        self.colors.get(flag).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Flag, Sign)> + '_ {
        self.colors.iter().map(|(f, &c)| (f, c))
    }

    pub fn flags(&self) -> impl Iterator<Item = &Flag> + '_ {
        self.colors.keys()
    }

    pub fn least_flag(&self) -> Option<&Flag> {
        self.colors.keys().next()
    }

    pub fn flipped(&self) -> Orientation {
        Orientation {
            colors: self.colors.iter().map(|(f, &c)| (f.clone(), -c)).collect(),
        }
    }

    /// The flags starting at `cell`, unchanged.
    pub fn at(&self, cell: &CellId) -> Orientation {
        Orientation {
            colors: self
                .colors
                .iter()
                .filter(|(f, _)| f.top() == Some(cell))
                .map(|(f, &c)| (f.clone(), c))
                .collect(),
        }
    }

    /// The induced orientation on a face: flags passing through `face` in
    /// second position, with the top cell removed.
    pub fn restrict_to_face(&self, face: &CellId) -> Orientation {
        Orientation {
            colors: self
                .colors
                .iter()
                .filter(|(f, _)| f.0.get(1) == Some(face))
                .map(|(f, &c)| (f.tail(), c))
                .collect(),
        }
    }

    /// True when `self` and `other` agree up to one global sign.
    pub fn agrees_up_to_sign(&self, other: &Orientation) -> bool {
        if self.colors.len() != other.colors.len() {
            return false;
        }
        let mut ratio = None;
        for (f, &c) in &self.colors {
            let Some(&d) = other.colors.get(f) else {
                return false;
            };
            match ratio {
                None => ratio = Some(c * d),
                Some(r) if r != c * d => return false,
                Some(_) => {}
            }
        }
        true
    }
}

/// One line per flag: `flag <id>><id>... <+1|-1>`.
impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (flag, c) in &self.colors {
            writeln!(f, "flag {}  {}", flag, c)?;
        }
        Ok(())
    }
}
