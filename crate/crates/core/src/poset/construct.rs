//! New complexes from old: duals, products, simplicial complexes.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::Ccc;
use crate::cell_id::{is_valid_base_name, CellId};
use crate::error::Error;

impl Ccc {
    /// The dual complex: every label wrapped with [`CellId::dual`], order
    /// reversed, rank `n - rank`. Only defined for manifold-like complexes.
    pub fn dual(&self) -> Result<Ccc, Error> {
        let class = self.classify()?;
        if !class.manifold_like {
            return Err(Error::NotManifoldLike);
        }
        let n = class.dimension;
        let cells = (0..self.len()).map(|i| (self.ids[i].clone().dual(), n - self.ranks[i]));
        let covers: Vec<(CellId, CellId)> = (0..self.len())
            .flat_map(|x| self.faces[x].iter().map(move |&y| (x, y)))
            .map(|(x, y)| (self.ids[x].clone().dual(), self.ids[y].clone().dual()))
            .collect();
        Ccc::build(cells, covers)
    }

    /// Cartesian product with componentwise order and additive rank.
    pub fn product(&self, other: &Ccc) -> Ccc {
        let mut cells = Vec::with_capacity(self.len() * other.len());
        let mut covers = Vec::new();
        for x in 0..self.len() {
            for y in 0..other.len() {
                let id = CellId::pair(self.ids[x].clone(), other.ids[y].clone());
                cells.push((id.clone(), self.ranks[x] + other.ranks[y]));
                for &fx in &self.faces[x] {
                    covers.push((CellId::pair(self.ids[fx].clone(), other.ids[y].clone()), id.clone()));
                }
                for &fy in &other.faces[y] {
                    covers.push((CellId::pair(self.ids[x].clone(), other.ids[fy].clone()), id.clone()));
                }
            }
        }
        Ccc::build(cells, covers).expect("product of well-formed posets")
    }

    /// The face poset of an abstract simplicial complex.
    ///
    /// The input is closed under non-empty subsets automatically. A simplex
    /// is labelled by its sorted vertex names joined with `.`, so vertex
    /// names may not contain `.`.
    pub fn from_simplicial<I, S, N>(simplices: I) -> Result<Ccc, Error>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = N>,
        N: AsRef<str>,
    {
        let mut all: BTreeSet<BTreeSet<String>> = BTreeSet::new();
        for simplex in simplices {
            let vertices: BTreeSet<String> = simplex
                .into_iter()
                .map(|v| v.as_ref().to_string())
                .collect();
            for v in &vertices {
                if !is_valid_base_name(v) || v.contains('.') {
                    return Err(Error::InvalidName(v.clone()));
                }
            }
            if vertices.len() > 24 {
                return Err(Error::NotSimplicial(format!(
                    "simplex with {} vertices is too large",
                    vertices.len()
                )));
            }
            add_faces(&mut all, vertices);
        }
        let label = |s: &BTreeSet<String>| {
            CellId::Base(s.iter().map(String::as_str).collect::<Vec<_>>().join("."))
        };
        let cells: Vec<(CellId, usize)> = all.iter().map(|s| (label(s), s.len() - 1)).collect();
        let mut covers = Vec::new();
        for s in all.iter().filter(|s| s.len() > 1) {
            for v in s {
                let mut face = s.clone();
                face.remove(v);
                covers.push((label(&face), label(s)));
            }
        }
        Ccc::build(cells, covers)
    }
}

fn add_faces(all: &mut BTreeSet<BTreeSet<String>>, simplex: BTreeSet<String>) {
    if simplex.is_empty() || all.contains(&simplex) {
        return;
    }
    for v in &simplex {
        let mut face = simplex.clone();
        face.remove(v);
        add_faces(all, face);
    }
    all.insert(simplex);
}
