use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::ChainMap;
use crate::cell_id::CellId;
use crate::chains::Chain;
use crate::error::Error;
use crate::flags::{flags_below, permutation_orientations, SignTable};
use crate::poset::Ccc;

fn chain_id(s: &Ccc, chain: &[usize]) -> CellId {
    CellId::Chain(chain.iter().map(|&i| s.id(i).clone()).collect())
}

fn extend_up(s: &Ccc, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(chain.clone());
    let last = *chain.last().expect("non-empty chain");
    for next in s.above(last).iter().filter(|&n| n != last) {
        chain.push(next);
        extend_up(s, chain, out);
        chain.pop();
    }
}

/// The order complex: one cell per non-empty totally ordered subset, of
/// rank one less than its size, ordered by inclusion. Cells are labelled
/// [`CellId::Chain`] with members in increasing order.
///
/// In the returned signs, for a chain `x_0 > x_1 > ... > x_r` the face
/// omitting `x_i` has sign `(-1)^i`.
pub fn barycentric(s: &Ccc) -> Result<(Ccc, SignTable), Error> {
    let mut chains = Vec::new();
    for start in 0..s.len() {
        extend_up(s, &mut alloc::vec![start], &mut chains);
    }
    let mut cells = Vec::with_capacity(chains.len());
    let mut covers = Vec::new();
    for chain in &chains {
        let id = chain_id(s, chain);
        cells.push((id.clone(), chain.len() - 1));
        if chain.len() > 1 {
            for skip in 0..chain.len() {
                let face: Vec<usize> = chain
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &c)| c)
                    .collect();
                covers.push((chain_id(s, &face), id.clone()));
            }
        }
    }
    let sd = Ccc::build(cells, covers)?;
    let ranks: BTreeMap<CellId, usize> = s
        .cells()
        .iter()
        .map(|c| (CellId::Chain(alloc::vec![c.clone()]), s.rank(c).expect("own cell")))
        .collect();
    let signs = permutation_orientations(&sd, |v| Reverse(ranks[sd.id(v)]))?;
    Ok((sd, signs))
}

/// `[x] ↦ Σ ω_x(γ) [γ]` over the flags `γ` below `x`.
pub fn big_phi(s: &Ccc, signs: &SignTable) -> Result<ChainMap, Error> {
    let mut images = BTreeMap::new();
    for x in 0..s.len() {
        let xid = s.id(x);
        let w = signs
            .orientation(xid)
            .ok_or_else(|| Error::MissingOrientation(xid.clone()))?;
        let mut image = Chain::zero();
        for flag in flags_below(s, x) {
            let named = crate::flags::Flag(flag.iter().map(|&i| s.id(i).clone()).collect());
            let color = w.get(&named).ok_or_else(|| Error::MissingOrientation(xid.clone()))?;
            let ascending: Vec<usize> = flag.into_iter().rev().collect();
            image.add_term(chain_id(s, &ascending), color.to_i64());
        }
        images.insert(xid.clone(), image);
    }
    Ok(ChainMap::from_images(images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{ChainComplex, HomologyGroup};
    use crate::fixtures;
    use crate::flags::{orient_all_cells, Sign};

    fn chain(names: &[&str]) -> CellId {
        CellId::Chain(names.iter().map(|n| CellId::base(n)).collect())
    }

    #[test]
    fn edge_becomes_a_path() {
        let (sd, _) = barycentric(&fixtures::simplex(1)).unwrap();
        assert_eq!(sd.face_vector(), alloc::vec![3, 2]);
        let (pt, _) = barycentric(&fixtures::simplex(0)).unwrap();
        assert_eq!(pt.len(), 1);
    }

    #[test]
    fn torus_counts() {
        let (sd, signs) = barycentric(&fixtures::torus9()).unwrap();
        assert_eq!(sd.face_vector(), alloc::vec![36, 108, 72]);
        assert_eq!(sd.euler_characteristic(), 0);
        assert!(sd.validate_axioms().passed());
        assert_eq!(signs.check_rhombus(&sd), Ok(()));
        let h = ChainComplex::new(&sd, &signs).unwrap().homology();
        assert_eq!(h, alloc::vec![HomologyGroup::free(1), HomologyGroup::free(2), HomologyGroup::free(1)]);
    }

    #[test]
    fn alternating_signs() {
        let (_, signs) = barycentric(&fixtures::torus9()).unwrap();
        // x_0 = f00 > x_1 = h00 > x_2 = v00
        let top = chain(&["v00", "h00", "f00"]);
        assert_eq!(signs.sign(&top, &chain(&["v00", "h00"])), Some(Sign::Plus));
        assert_eq!(signs.sign(&top, &chain(&["v00", "f00"])), Some(Sign::Minus));
        assert_eq!(signs.sign(&top, &chain(&["h00", "f00"])), Some(Sign::Plus));
    }

    #[test]
    fn big_phi_is_a_chain_map() {
        for s in [fixtures::torus9(), fixtures::klein9(), fixtures::tetrahedron_solid()] {
            let t = orient_all_cells(&s).unwrap();
            let (sd, st) = barycentric(&s).unwrap();
            let map = big_phi(&s, &t).unwrap();
            assert_eq!(map.check_chain_law((&s, &t), (&sd, &st)), Ok(()));
        }
        let s = fixtures::simplex(1);
        let t = orient_all_cells(&s).unwrap();
        let map = big_phi(&s, &t).unwrap();
        let e = map.image(&CellId::base("v0.v1")).unwrap();
        assert_eq!(e.support_len(), 2);
        assert_eq!(e.iter().map(|(_, k)| k).sum::<i64>(), 0);
        assert_eq!(map.image(&CellId::base("v0")), Some(&Chain::cell(chain(&["v0"]))));
    }
}
