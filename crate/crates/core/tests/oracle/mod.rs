//! Brute-force simplicial homology: rational and mod-2 Betti numbers from
//! the standard boundary matrices on sorted vertex lists.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Closes the facets under subsets, as sorted vertex lists.
pub fn all_faces(facets: &[u8]) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for &mask in facets {
        let mut sub = mask;
        while sub != 0 {
            out.insert((0..6).filter(|&v| sub & (1 << v) != 0).collect::<Vec<_>>());
            sub = (sub - 1) & mask;
        }
    }
    out.into_iter().collect()
}

/// Standard simplicial boundary: dropping the `i`-th vertex gets `(-1)^i`.
fn oracle_boundary(faces: &[Vec<usize>], degree: usize) -> Vec<Vec<i128>> {
    let rows: Vec<&Vec<usize>> = faces.iter().filter(|f| f.len() == degree).collect();
    let cols: Vec<&Vec<usize>> = faces.iter().filter(|f| f.len() == degree + 1).collect();
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (j, c) in cols.iter().enumerate() {
        for skip in 0..c.len() {
            let face: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
            if let Some(i) = rows.iter().position(|r| **r == face) {
                m[i][j] = if skip % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

/// Rank by elimination over the rationals, or over `Z/p` when `p > 0`.
fn rank(mut m: Vec<Vec<i128>>, p: i128) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let reduce = |v: i128| if p > 0 { v.rem_euclid(p) } else { v };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| reduce(m[i][c]) != 0) else { continue };
        m.swap(r, piv);
        for i in 0..rows {
            if i != r && reduce(m[i][c]) != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let pivot_row = m[r].clone();
                for (v, &p) in m[i].iter_mut().zip(&pivot_row) {
                    *v = reduce(*v * a - p * b);
                }
                let g = m[i].iter().fold(0i128, |g, &v| gcd(g, v));
                if g > 1 && p == 0 {
                    m[i].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Betti numbers and mod-2 Betti numbers, degrees `0..=top`.
pub fn oracle(faces: &[Vec<usize>], top: usize) -> (Vec<usize>, Vec<usize>) {
    let count = |d: usize| faces.iter().filter(|f| f.len() == d + 1).count();
    let ranks = |p: i128| -> Vec<usize> { (0..=top + 1).map(|d| if d == 0 { 0 } else { rank(oracle_boundary(faces, d), p) }).collect() };
    let (q, two) = (ranks(0), ranks(2));
    let betti = |r: &Vec<usize>| (0..=top).map(|d| count(d) - r[d] - r[d + 1]).collect();
    (betti(&q), betti(&two))
}

