use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::ChainMap;
use crate::cell_id::CellId;
use crate::chains::{Chain, ChainComplex, HomologyGroup};
use crate::error::Error;
use crate::flags::{flags_of, Flag, Orientation, Sign, SignTable};
use crate::poset::Ccc;

/// The stellar subdivision of a complex at one cell, with transported
/// orientations and the chain map from the original complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StellarResult {
    pub complex: Ccc,
    pub signs: SignTable,
    pub point: CellId,
    /// Cells of the original complex that survive.
    pub old_cells: BTreeSet<CellId>,
    /// Cone over each base; `None` stands for the empty cell.
    pub new_cells: BTreeMap<Option<CellId>, CellId>,
    pub map: ChainMap,
}

impl StellarResult {
    /// The new vertex.
    pub fn apex_vertex(&self) -> &CellId {
        &self.new_cells[&None]
    }
}

/// Subdivides `s` at `x`, replacing every cell above `x` by cones with apex
/// `x` over the cells of the star of `x` that are not above it.
pub fn stellar(s: &Ccc, x: &CellId, signs: &SignTable) -> Result<StellarResult, Error> {
    let xi = s.idx(x)?;
    if s.rank_of(xi) == 0 {
        return Err(Error::RankZeroSubdivision(x.clone()));
    }
    let dying = s.above(xi);
    let link = s.link_set(xi);

    let cone = |base: Option<&CellId>| CellId::cone(x.clone(), base.cloned());
    let mut cells: Vec<(CellId, usize)> = Vec::new();
    let mut covers: Vec<(CellId, CellId)> = Vec::new();
    let mut old_cells = BTreeSet::new();
    for i in (0..s.len()).filter(|&i| !dying.contains(i)) {
        let id = s.id(i).clone();
        cells.push((id.clone(), s.rank_of(i)));
        for &f in s.faces_of(i) {
            covers.push((s.id(f).clone(), id.clone()));
        }
        old_cells.insert(id);
    }
    let mut new_cells = BTreeMap::new();
    let apex = cone(None);
    cells.push((apex.clone(), 0));
    new_cells.insert(None, apex.clone());
    for y in link.iter() {
        let yid = s.id(y);
        let c = cone(Some(yid));
        cells.push((c.clone(), s.rank_of(y) + 1));
        covers.push((yid.clone(), c.clone()));
        if s.rank_of(y) == 0 {
            covers.push((apex.clone(), c.clone()));
        }
        for &z in s.faces_of(y) {
            covers.push((cone(Some(s.id(z))), c.clone()));
        }
        new_cells.insert(Some(yid.clone()), c);
    }
    let complex = Ccc::build(cells, covers)?;

    let bases: BTreeMap<&CellId, Option<&CellId>> =
        new_cells.iter().map(|(b, c)| (c, b.as_ref())).collect();
    let mut orientations: BTreeMap<CellId, Orientation> = BTreeMap::new();
    for c in &old_cells {
        let w = signs
            .orientation(c)
            .ok_or_else(|| Error::MissingOrientation(c.clone()))?;
        orientations.insert(c.clone(), w.clone());
    }
    orientations.insert(apex.clone(), Orientation::point(apex.clone()));
    for (base, c) in &new_cells {
        let Some(y) = base else { continue };
        let wy = signs
            .orientation(y)
            .ok_or_else(|| Error::MissingOrientation(y.clone()))?;
        let mut pairs = Vec::new();
        for flag in flags_of(&complex, c)? {
            let cones = flag.0.iter().take_while(|f| bases.contains_key(f)).count();
            let mut reduced: Vec<CellId> = flag.0[..cones]
                .iter()
                .filter_map(|f| bases[f].cloned())
                .collect();
            reduced.extend(flag.0.iter().skip(cones + 1).cloned());
            let color = wy.get(&Flag(reduced)).ok_or_else(|| Error::CellNotOrientable {
                cell: c.clone(),
                reason: alloc::format!("no transported colour for flag {flag}"),
            })?;
            let parity = Sign::from_parity((cones - 1) % 2 == 1);
            pairs.push((flag, parity * color));
        }
        orientations.insert(c.clone(), Orientation::from_pairs(pairs));
    }
    let new_signs = SignTable::from_orientations(&complex, orientations)?;

    let map = phi_from_parts(s, xi, signs, &new_cells)?;
    Ok(StellarResult {
        complex,
        signs: new_signs,
        point: x.clone(),
        old_cells,
        new_cells,
        map,
    })
}

fn phi_from_parts(
    s: &Ccc,
    xi: usize,
    signs: &SignTable,
    new_cells: &BTreeMap<Option<CellId>, CellId>,
) -> Result<ChainMap, Error> {
    let dying = s.above(xi);
    let mut images = BTreeMap::new();
    for w in 0..s.len() {
        let wid = s.id(w);
        let image = if dying.contains(w) {
            let mut c = Chain::zero();
            for &y in s.faces_of(w).iter().filter(|&&y| !dying.contains(y)) {
                let yid = s.id(y);
                let sign = signs.sign(wid, yid).ok_or_else(|| Error::MissingSign {
                    upper: wid.clone(),
                    lower: yid.clone(),
                })?;
                c.add_term(new_cells[&Some(yid.clone())].clone(), sign.to_i64());
            }
            c
        } else {
            Chain::cell(wid.clone())
        };
        images.insert(wid.clone(), image);
    }
    Ok(ChainMap::from_images(images))
}

/// The chain map from `s` to its stellar subdivision at `x`.
pub fn phi(s: &Ccc, x: &CellId, signs: &SignTable) -> Result<ChainMap, Error> {
    Ok(stellar(s, x, signs)?.map)
}

/// Subdivides at each point in turn. The points must be alive when their
/// turn comes.
pub fn stellar_sequence(s: &Ccc, points: &[CellId], signs: &SignTable) -> Result<Vec<StellarResult>, Error> {
    let mut stages: Vec<StellarResult> = Vec::with_capacity(points.len());
    for p in points {
        let next = match stages.last() {
            Some(prev) => stellar(&prev.complex, p, &prev.signs)?,
            None => stellar(s, p, signs)?,
        };
        stages.push(next);
    }
    Ok(stages)
}

/// Homology on both sides of one stellar move, and whether the connecting
/// map is a chain map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub point: CellId,
    pub before: Vec<HomologyGroup>,
    pub after: Vec<HomologyGroup>,
    pub chain_map: bool,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.chain_map && self.before == self.after
    }
}

pub fn verify_subdivision_invariance(s: &Ccc, x: &CellId, signs: &SignTable) -> Result<InvarianceReport, Error> {
    let result = stellar(s, x, signs)?;
    let before = ChainComplex::new(s, signs)?.homology();
    let after = ChainComplex::new(&result.complex, &result.signs)?.homology();
    let chain_map = result
        .map
        .check_chain_law((s, signs), (&result.complex, &result.signs))
        .is_ok();
    Ok(InvarianceReport {
        point: x.clone(),
        before,
        after,
        chain_map,
    })
}
