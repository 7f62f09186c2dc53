use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::cell_id::CellId;

/// A finite formal integer combination of cells. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    terms: BTreeMap<CellId, i64>,
}

impl Chain {
    pub fn zero() -> Chain {
        Chain::default()
    }

    pub fn cell(id: CellId) -> Chain {
        Chain::term(id, 1)
    }

    pub fn term(id: CellId, coefficient: i64) -> Chain {
        let mut c = Chain::zero();
        c.add_term(id, coefficient);
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (CellId, i64)>>(terms: I) -> Chain {
        let mut c = Chain::zero();
        for (id, k) in terms {
            c.add_term(id, k);
        }
        c
    }

    /// Panics on overflow.
    pub fn add_term(&mut self, id: CellId, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(id.clone()).or_insert(0);
        *entry = entry.checked_add(coefficient).expect("chain coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&id);
        }
    }

    pub fn coefficient(&self, id: &CellId) -> i64 {
        self.terms.get(id).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CellId, i64)> + '_ {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn scaled(&self, k: i64) -> Chain {
        Chain::from_terms(self.iter().map(|(c, v)| (c.clone(), v * k)))
    }

    /// Sum of `|coefficient|`.
    pub fn weight(&self) -> u64 {
        self.terms.values().map(|v| v.unsigned_abs()).sum()
    }

    /// Applies a map cell by cell and sums the results.
    pub fn map_linear<F>(&self, mut f: F) -> Chain
    where
        F: FnMut(&CellId) -> Chain,
    {
        let mut out = Chain::zero();
        for (c, k) in self.iter() {
            for (d, v) in f(c).iter() {
                out.add_term(d.clone(), k * v);
            }
        }
        out
    }
}

impl Add for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        for (c, k) in rhs.iter() {
            out.add_term(c.clone(), k);
        }
        out
    }
}

impl Sub for &Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        self + &(-rhs)
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        self.scaled(-1)
    }
}

/// `2[a] - [b]`; the zero chain prints as `0`.
impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (c, k)) in self.iter().enumerate() {
            let magnitude = k.unsigned_abs();
            match (i, k < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if magnitude != 1 {
                write!(f, "{}", magnitude)?;
            }
            write!(f, "[{}]", c)?;
        }
        Ok(())
    }
}
