use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::graph::{adjacency, flags_below, two_color, Coloring};
use super::{Flag, Orientation, Sign};
use crate::cell_id::CellId;
use crate::error::Error;
use crate::poset::Ccc;

/// Per-cell orientations together with the incidence sign of every cover
/// pair they induce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignTable {
    orientations: BTreeMap<CellId, Orientation>,
    /// Keyed by `(upper, lower)`.
    signs: BTreeMap<(CellId, CellId), Sign>,
}

impl SignTable {
    /// Computes `s(x, y) = ω_x(γ) · ω_y(γ minus x)` from the least flag of
    /// `y` extended by `x`.
    pub fn from_orientations(
        s: &Ccc,
        orientations: BTreeMap<CellId, Orientation>,
    ) -> Result<SignTable, Error> {
        let mut signs = BTreeMap::new();
        for x in s.cells() {
            let wx = orientations
                .get(x)
                .ok_or_else(|| Error::MissingOrientation(x.clone()))?;
            for y in s.faces(x)? {
                let wy = orientations
                    .get(y)
                    .ok_or_else(|| Error::MissingOrientation(y.clone()))?;
                let sign = wy
                    .iter()
                    .next()
                    .and_then(|(g, cy)| wx.get(&g.extended(x.clone())).map(|cx| cx * cy))
                    .ok_or_else(|| Error::MissingSign {
                        upper: x.clone(),
                        lower: y.clone(),
                    })?;
                signs.insert((x.clone(), y.clone()), sign);
            }
        }
        Ok(SignTable {
            orientations,
            signs,
        })
    }

    pub fn sign(&self, upper: &CellId, lower: &CellId) -> Option<Sign> {
        self.signs.get(&(upper.clone(), lower.clone())).copied()
    }

    pub fn orientation(&self, cell: &CellId) -> Option<&Orientation> {
        self.orientations.get(cell)
    }

    pub fn orientations(&self) -> &BTreeMap<CellId, Orientation> {
        &self.orientations
    }

    /// `(upper, lower, sign)` for every cover pair.
    pub fn signs(&self) -> impl Iterator<Item = (&CellId, &CellId, Sign)> + '_ {
        self.signs.iter().map(|((x, y), &c)| (x, y, c))
    }

    /// The same table with the orientations of `cells` reversed.
    pub fn with_flipped<'a, I>(&self, s: &Ccc, cells: I) -> Result<SignTable, Error>
    where
        I: IntoIterator<Item = &'a CellId>,
    {
        let mut orientations = self.orientations.clone();
        for c in cells {
            let o = orientations
                .get_mut(c)
                .ok_or_else(|| Error::MissingOrientation(c.clone()))?;
            *o = o.flipped();
        }
        SignTable::from_orientations(s, orientations)
    }

    /// Every flag through a cover pair gives the same sign. Returns the first
    /// offending pair.
    pub fn check_flag_independence(&self) -> Result<(), (CellId, CellId)> {
        for (x, wx) in &self.orientations {
            for (flag, cx) in wx.iter() {
                let Some(y) = flag.0.get(1) else { continue };
                let Some(cy) = self.orientations.get(y).and_then(|wy| wy.get(&flag.tail())) else {
                    return Err((x.clone(), y.clone()));
                };
                if self.sign(x, y) != Some(cx * cy) {
                    return Err((x.clone(), y.clone()));
                }
            }
        }
        Ok(())
    }

    /// For every interval `[z, x]` of length two, the two paths through it
    /// carry opposite sign products. For an edge `x` the two endpoints get
    /// opposite signs. Returns the offending `(x, z)`.
    pub fn check_rhombus(&self, s: &Ccc) -> Result<(), (CellId, Option<CellId>)> {
        for x in s.cells() {
            let faces: Vec<&CellId> = s.faces(x).expect("own cell").collect();
            if s.rank(x) == Some(1) {
                let total: i64 = faces
                    .iter()
                    .map(|y| self.sign(x, y).map_or(0, Sign::to_i64))
                    .sum();
                if total != 0 || faces.len() != 2 {
                    return Err((x.clone(), None));
                }
                continue;
            }
            let mut totals: BTreeMap<&CellId, i64> = BTreeMap::new();
            for y in &faces {
                let sxy = self.sign(x, y).map_or(0, Sign::to_i64);
                for z in s.faces(y).expect("own cell") {
                    let syz = self.sign(y, z).map_or(0, Sign::to_i64);
                    *totals.entry(z).or_default() += sxy * syz;
                }
            }
            if let Some((z, _)) = totals.into_iter().find(|&(_, t)| t != 0) {
                return Err((x.clone(), Some(z.clone())));
            }
        }
        Ok(())
    }

    /// Sign table dump: `sign <upper> <lower> <+1|-1>` per cover pair.
    pub fn dump_signs(&self) -> String {
        let mut out = String::new();
        for ((x, y), c) in &self.signs {
            out.push_str(&format!("sign {} {} {}\n", x, y, c));
        }
        out
    }
}

fn orient_cell(s: &Ccc, i: usize) -> Result<Orientation, Error> {
    let flags = flags_below(s, i);
    let adj = adjacency(s, &flags);
    let to_flag = |f: &Vec<usize>| Flag(f.iter().map(|&j| s.id(j).clone()).collect());
    match two_color(&adj) {
        Coloring::Colors(colors) => Ok(Orientation::from_pairs(
            flags.iter().map(to_flag).zip(colors),
        )),
        Coloring::Disconnected { components } => Err(Error::CellNotOrientable {
            cell: s.id(i).clone(),
            reason: format!("flag graph has {components} components"),
        }),
        Coloring::OddCycle(cycle) => Err(Error::CellNotOrientable {
            cell: s.id(i).clone(),
            reason: format!("odd flag cycle of length {}", cycle.len()),
        }),
    }
}

/// Orients every closed cell so that its least flag is `+1`.
pub fn orient_all_cells(s: &Ccc) -> Result<SignTable, Error> {
    orient_cells_with(s, BTreeMap::new())
}

/// Like [`orient_all_cells`], but takes the given orientations for the
/// listed cells. An override must be a proper orientation of the closure.
pub fn orient_cells_with(
    s: &Ccc,
    overrides: BTreeMap<CellId, Orientation>,
) -> Result<SignTable, Error> {
    let mut orientations = BTreeMap::new();
    for i in 0..s.len() {
        let cell = s.id(i);
        let computed = orient_cell(s, i)?;
        let chosen = match overrides.get(cell) {
            Some(o) if o.agrees_up_to_sign(&computed) => o.clone(),
            Some(_) => {
                return Err(Error::CellNotOrientable {
                    cell: cell.clone(),
                    reason: String::from("override is not an orientation of the closure"),
                })
            }
            None => computed,
        };
        orientations.insert(cell.clone(), chosen);
    }
    SignTable::from_orientations(s, orientations)
}

fn vertices_of(s: &Ccc, i: usize) -> Vec<usize> {
    s.below(i).iter().filter(|&j| s.rank_of(j) == 0).collect()
}

/// Orientations of a simplicial poset from a total order on the vertices of
/// each cell: listing the vertices by increasing `key` as `x_0, x_1, ...`, a
/// flag whose successive vertex differences are `x_{P(0)}, x_{P(1)}, ...`
/// gets the sign of the permutation `P`.
pub(crate) fn permutation_orientations<K, F>(s: &Ccc, key: F) -> Result<SignTable, Error>
where
    K: Ord,
    F: Fn(usize) -> K,
{
    let vertices: Vec<Vec<usize>> = (0..s.len()).map(|i| vertices_of(s, i)).collect();
    for (i, v) in vertices.iter().enumerate() {
        let r = s.rank_of(i);
        if v.len() != r + 1 || s.below(i).count() + 1 != 1 << (r + 1) {
            return Err(Error::NotSimplicial(format!("{} is not a simplex", s.id(i))));
        }
    }
    let mut orientations = BTreeMap::new();
    for i in 0..s.len() {
        let mut order = vertices[i].clone();
        order.sort_by_key(|&v| key(v));
        let mut pairs = Vec::new();
        for flag in flags_below(s, i) {
            let perm: Vec<usize> = (0..flag.len())
                .map(|k| {
                    let fresh = vertices[flag[k]]
                        .iter()
                        .copied()
                        .find(|v| flag.get(k + 1).is_none_or(|&n| !vertices[n].contains(v)))
                        .expect("one new vertex per step");
                    order.iter().position(|&v| v == fresh).expect("vertex of the cell")
                })
                .collect();
            let inversions = (0..perm.len())
                .flat_map(|a| (a + 1..perm.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| perm[a] > perm[b])
                .count();
            let flag = Flag(flag.iter().map(|&j| s.id(j).clone()).collect());
            pairs.push((flag, Sign::from_parity(inversions % 2 == 1)));
        }
        orientations.insert(s.id(i).clone(), Orientation::from_pairs(pairs));
    }
    SignTable::from_orientations(s, orientations)
}

/// Signs of a simplicial complex from a vertex order: with the vertices of a
/// simplex listed in the given order as `u_0, u_1, ...`, the face omitting
/// `u_i` has sign `(-1)^i`.
pub fn simplicial_signs(s: &Ccc, vertex_order: &[CellId]) -> Result<SignTable, Error> {
    let mut position = BTreeMap::new();
    for (k, v) in vertex_order.iter().enumerate() {
        let i = s.idx(v)?;
        if s.rank_of(i) != 0 {
            return Err(Error::NotSimplicial(format!("{v} is not a vertex")));
        }
        position.insert(i, k);
    }
    if let Some(missing) = (0..s.len()).find(|&i| s.rank_of(i) == 0 && !position.contains_key(&i)) {
        return Err(Error::NotSimplicial(format!(
            "vertex {} missing from the order",
            s.id(missing)
        )));
    }
    permutation_orientations(s, |v| position[&v])
}
