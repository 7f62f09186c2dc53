//! Stellar and barycentric subdivision, with the chain maps relating a
//! complex to its subdivisions.

mod barycentric;
mod stellar;
mod tower;

pub use barycentric::{barycentric, big_phi};
pub use stellar::{phi, stellar, stellar_sequence, verify_subdivision_invariance, InvarianceReport, StellarResult};
pub use tower::{barycentric_via_stellar, compare_phi_bigphi, chain_label, BaryTower};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cell_id::CellId;
use crate::chains::{boundary, Chain, ChainComplex, IntMatrix};
use crate::error::Error;
use crate::flags::SignTable;
use crate::poset::Ccc;

/// A homomorphism of cellular chain groups, given by the image of every
/// source cell.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainMap {
    images: BTreeMap<CellId, Chain>,
}

impl ChainMap {
    pub fn from_images(images: BTreeMap<CellId, Chain>) -> ChainMap {
        ChainMap { images }
    }

    pub fn identity(s: &Ccc) -> ChainMap {
        ChainMap {
            images: s.cells().iter().map(|c| (c.clone(), Chain::cell(c.clone()))).collect(),
        }
    }

    pub fn image(&self, cell: &CellId) -> Option<&Chain> {
        self.images.get(cell)
    }

    pub fn images(&self) -> impl Iterator<Item = (&CellId, &Chain)> + '_ {
        self.images.iter()
    }

    pub fn apply(&self, chain: &Chain) -> Result<Chain, Error> {
        let mut out = Chain::zero();
        for (c, k) in chain.iter() {
            let image = self.image(c).ok_or_else(|| Error::UnknownCell(c.clone()))?;
            for (d, v) in image.iter() {
                out.add_term(d.clone(), k * v);
            }
        }
        Ok(out)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMap) -> Result<ChainMap, Error> {
        let images = self
            .images
            .iter()
            .map(|(c, image)| Ok((c.clone(), next.apply(image)?)))
            .collect::<Result<_, Error>>()?;
        Ok(ChainMap { images })
    }

    /// Renames the cells appearing in images.
    pub fn relabel_target(&self, rename: &BTreeMap<CellId, CellId>) -> Result<ChainMap, Error> {
        let images = self
            .images
            .iter()
            .map(|(c, image)| {
                let terms = image
                    .iter()
                    .map(|(d, k)| {
                        rename
                            .get(d)
                            .map(|r| (r.clone(), k))
                            .ok_or_else(|| Error::UnknownCell(d.clone()))
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                Ok((c.clone(), Chain::from_terms(terms)))
            })
            .collect::<Result<_, Error>>()?;
        Ok(ChainMap { images })
    }

    /// Checks `∂ F[w] = F ∂[w]` on every source cell; returns the first
    /// cell where it fails.
    pub fn check_chain_law(
        &self,
        source: (&Ccc, &SignTable),
        target: (&Ccc, &SignTable),
    ) -> Result<(), CellId> {
        for w in source.0.cells() {
            let Some(image) = self.image(w) else {
                return Err(w.clone());
            };
            let left = boundary(target.0, target.1, image);
            let right = boundary(source.0, source.1, &Chain::cell(w.clone()))
                .and_then(|b| self.apply(&b));
            match (left, right) {
                (Ok(l), Ok(r)) if l == r => {}
                _ => return Err(w.clone()),
            }
        }
        Ok(())
    }

    /// The matrix of the degree-`degree` component between two chain
    /// complexes' bases.
    pub fn matrix(&self, source: &ChainComplex, target: &ChainComplex, degree: usize) -> Result<IntMatrix, Error> {
        let cols = source.basis(degree);
        let mut m = IntMatrix::zeros(target.basis(degree).len(), cols.len());
        for (j, c) in cols.iter().enumerate() {
            let image = self.image(c).ok_or_else(|| Error::UnknownCell(c.clone()))?;
            let v = target.to_vector(degree, image)?;
            for (i, x) in v.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }
}
