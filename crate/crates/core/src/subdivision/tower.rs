use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{barycentric, big_phi, stellar, ChainMap, StellarResult};
use crate::cell_id::CellId;
use crate::error::Error;
use crate::flags::{Flag, Orientation, Sign, SignTable};
use crate::poset::Ccc;

/// The stellar subdivisions at every cell of rank at least one, highest rank
/// first, together with the identification of the end result with the order
/// complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaryTower {
    pub stages: Vec<StellarResult>,
    /// The last complex of the tower, with its transported signs.
    pub complex: Ccc,
    pub signs: SignTable,
    /// Tower label to order-complex label.
    pub iso: BTreeMap<CellId, CellId>,
    /// The composite of the stage maps, written in order-complex labels.
    pub composite: ChainMap,
}

impl BaryTower {
    /// The last complex and its transported signs under order-complex
    /// labels.
    pub fn relabelled(&self) -> Result<(Ccc, SignTable), Error> {
        let complex = self.complex.relabel(|c| self.iso[c].clone())?;
        let orientations = self
            .signs
            .orientations()
            .iter()
            .map(|(c, o)| {
                let pairs = o
                    .iter()
                    .map(|(f, k)| (Flag(f.0.iter().map(|x| self.iso[x].clone()).collect()), k));
                (self.iso[c].clone(), Orientation::from_pairs(pairs))
            })
            .collect();
        let signs = SignTable::from_orientations(&complex, orientations)?;
        Ok((complex, signs))
    }
}

/// Order-complex label of a tower cell: `C(a1;C(a2;...C(ar;v)))` becomes the
/// chain `v < a1 < ... < ar`, with `v` left out when it is the empty cell.
pub fn chain_label(id: &CellId) -> CellId {
    let mut apexes = Vec::new();
    let mut current = Some(id);
    while let Some(CellId::Cone { apex, base }) = current {
        apexes.push((**apex).clone());
        current = base.as_deref();
    }
    let mut members: Vec<CellId> = current.into_iter().cloned().collect();
    members.extend(apexes);
    CellId::Chain(members)
}

fn up_sets_disjoint(t: &Ccc, cells: &[&CellId]) -> Result<(), Error> {
    let mut seen: BTreeSet<CellId> = BTreeSet::new();
    for &c in cells {
        let up = t.up_set(c)?;
        for u in &up {
            let label = chain_label(u);
            let CellId::Chain(members) = &label else { unreachable!() };
            if members.first() != Some(c) {
                return Err(Error::Hypothesis(format!(
                    "{u} lies above {c} but is not a cone over it"
                )));
            }
            if !seen.insert(u.clone()) {
                return Err(Error::Hypothesis(format!("up-sets overlap at {u}")));
            }
        }
    }
    Ok(())
}

/// Builds the tower, asserting before each rank that the up-sets of the
/// cells about to be subdivided are pairwise disjoint, then checks that the
/// final complex is the order complex under [`chain_label`].
pub fn barycentric_via_stellar(s: &Ccc, signs: &SignTable) -> Result<BaryTower, Error> {
    let dim = s.dimension().ok_or(Error::EmptyComplex)?;
    let mut stages: Vec<StellarResult> = Vec::new();
    for r in (1..=dim).rev() {
        let points: Vec<&CellId> = s.cells_of_rank(r).collect();
        let current = stages.last().map_or(s, |st| &st.complex);
        for p in &points {
            if !current.contains(p) {
                return Err(Error::Hypothesis(format!("{p} did not survive to its stage")));
            }
        }
        up_sets_disjoint(current, &points)?;
        for p in points {
            let next = match stages.last() {
                Some(prev) => stellar(&prev.complex, p, &prev.signs)?,
                None => stellar(s, p, signs)?,
            };
            stages.push(next);
        }
    }
    let (complex, tower_signs) = match stages.last() {
        Some(last) => (last.complex.clone(), last.signs.clone()),
        None => (s.clone(), signs.clone()),
    };
    let iso: BTreeMap<CellId, CellId> = complex
        .cells()
        .iter()
        .map(|c| (c.clone(), chain_label(c)))
        .collect();
    let relabelled = complex.relabel(|c| iso[c].clone())?;
    let (order_complex, _) = barycentric(s)?;
    if relabelled != order_complex {
        return Err(Error::Hypothesis(String::from(
            "the tower does not end at the order complex",
        )));
    }
    let mut composite = ChainMap::identity(s);
    for st in &stages {
        composite = composite.then(&st.map)?;
    }
    let composite = composite.relabel_target(&iso)?;
    Ok(BaryTower {
        stages,
        complex,
        signs: tower_signs,
        iso,
        composite,
    })
}

/// The sign `ε_j` with `Φ_j = ε_j · φ°_j` in each degree `j`, where `Φ` is
/// the flag-sum map and `φ°` the tower composite.
pub fn compare_phi_bigphi(s: &Ccc, signs: &SignTable) -> Result<Vec<Sign>, Error> {
    let tower = barycentric_via_stellar(s, signs)?;
    let flag_sum = big_phi(s, signs)?;
    let dim = s.dimension().ok_or(Error::EmptyComplex)?;
    let mut out = Vec::with_capacity(dim + 1);
    for degree in 0..=dim {
        let mut eps: Option<Sign> = None;
        for x in s.cells_of_rank(degree) {
            let a = flag_sum.image(x).ok_or_else(|| Error::UnknownCell(x.clone()))?;
            let b = tower.composite.image(x).ok_or_else(|| Error::UnknownCell(x.clone()))?;
            let here = if a == b {
                Sign::Plus
            } else if *a == -b {
                Sign::Minus
            } else {
                return Err(Error::NoUniformSign { degree });
            };
            match eps {
                Some(e) if e != here => return Err(Error::NoUniformSign { degree }),
                _ => eps = Some(here),
            }
        }
        out.push(eps.unwrap_or(Sign::Plus));
    }
    Ok(out)
}
