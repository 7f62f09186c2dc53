//! Small named complexes used by tests, benchmarks and the command line.
//!
//! Naming on the 3×3 grids (`torus9`, `klein9`): vertices `v<r><c>`,
//! horizontal edges `h<r><c>` from `v<r><c>` to `v<r><c+1>`, vertical edges
//! `e<r><c>` from `v<r><c>` to `v<r+1><c>`, squares `f<r><c>` with lower-left
//! corner `v<r><c>`. Indices are taken mod 3.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cell_id::CellId;
use crate::poset::Ccc;

fn named(cells: &[(String, usize)], covers: &[(String, String)]) -> Ccc {
    Ccc::build(
        cells.iter().map(|(n, r)| (CellId::base(n), *r)),
        covers.iter().map(|(l, u)| (CellId::base(l), CellId::base(u))),
    )
    .expect("fixture is well formed")
}

/// The full simplex on vertices `v0..=vn`.
pub fn simplex(n: usize) -> Ccc {
    let names: Vec<String> = (0..=n).map(|i| format!("v{i}")).collect();
    Ccc::from_simplicial([names]).expect("fixture is well formed")
}

/// Two triangles `abc` and `bcd` glued along `bc`.
pub fn two_triangles() -> Ccc {
    Ccc::from_simplicial([["a", "b", "c"], ["b", "c", "d"]]).expect("fixture is well formed")
}

/// The solid tetrahedron `abcd` (15 cells).
pub fn tetrahedron_solid() -> Ccc {
    Ccc::from_simplicial([["a", "b", "c", "d"]]).expect("fixture is well formed")
}

/// The boundary 2-sphere of the tetrahedron `abcd` (14 cells).
pub fn tetrahedron_boundary() -> Ccc {
    Ccc::from_simplicial([
        ["a", "b", "c"],
        ["a", "b", "d"],
        ["a", "c", "d"],
        ["b", "c", "d"],
    ])
    .expect("fixture is well formed")
}

/// Two edges `a.b` and `c.d` with no common vertex.
pub fn disjoint_edges() -> Ccc {
    Ccc::from_simplicial([["a", "b"], ["c", "d"]]).expect("fixture is well formed")
}

/// Two triangles `abc` and `def` with no common vertex.
pub fn disjoint_triangles() -> Ccc {
    Ccc::from_simplicial([["a", "b", "c"], ["d", "e", "f"]]).expect("fixture is well formed")
}

/// 3×3 grid of squares with periodic rows and columns.
pub fn torus9() -> Ccc {
    grid9(false)
}

/// 3×3 grid of squares glued periodically in rows and with a flip across
/// the column seam: a Klein bottle, with 2-torsion in degree one.
pub fn klein9() -> Ccc {
    grid9(true)
}

fn grid9(flip: bool) -> Ccc {
    // Vertex at grid position (r, c) with c possibly 3 (the seam).
    let vertex = |r: usize, c: usize| {
        if c == 3 {
            let r = if flip { (3 - r % 3) % 3 } else { r % 3 };
            format!("v{}0", r)
        } else {
            format!("v{}{}", r % 3, c)
        }
    };
    let mut cells = Vec::new();
    let mut covers = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            cells.push((format!("v{r}{c}"), 0));
            let h = format!("h{r}{c}");
            let e = format!("e{r}{c}");
            cells.push((h.clone(), 1));
            cells.push((e.clone(), 1));
            covers.push((vertex(r, c), h.clone()));
            covers.push((vertex(r, c + 1), h));
            covers.push((vertex(r, c), e.clone()));
            covers.push((vertex(r + 1, c), e));
        }
    }
    // Vertical edge of the seam between seam vertices at rows r and r + 1.
    let seam_edge = |r: usize| {
        if flip {
            // The seam image of rows (r, r+1) is rows (-r-1, -r), whose
            // lower endpoint is -r-1.
            format!("e{}0", (6 - r - 1) % 3)
        } else {
            format!("e{}0", r % 3)
        }
    };
    for r in 0..3 {
        for c in 0..3 {
            let f = format!("f{r}{c}");
            cells.push((f.clone(), 2));
            let right = if c == 2 {
                seam_edge(r)
            } else {
                format!("e{}{}", r, c + 1)
            };
            let top = format!("h{}{}", (r + 1) % 3, c);
            covers.push((format!("h{r}{c}"), f.clone()));
            covers.push((top, f.clone()));
            covers.push((format!("e{r}{c}"), f.clone()));
            covers.push((right, f));
        }
    }
    named(&cells, &covers)
}

/// A Möbius band made of three squares: vertices `a0..a2`, `b0..b2`; rungs
/// `r<i>` from `a<i>` to `b<i>`; rails `u<i>`, `w<i>`; squares `q<i>`. The
/// third square closes up with a half twist.
pub fn mobius3() -> Ccc {
    let mut cells: Vec<(String, usize)> = Vec::new();
    for i in 0..3 {
        cells.push((format!("a{i}"), 0));
        cells.push((format!("b{i}"), 0));
        cells.push((format!("r{i}"), 1));
        cells.push((format!("u{i}"), 1));
        cells.push((format!("w{i}"), 1));
        cells.push((format!("q{i}"), 2));
    }
    let pairs = [
        ("a0", "r0"), ("b0", "r0"), ("a1", "r1"), ("b1", "r1"), ("a2", "r2"), ("b2", "r2"),
        ("a0", "u0"), ("a1", "u0"), ("b0", "w0"), ("b1", "w0"),
        ("a1", "u1"), ("a2", "u1"), ("b1", "w1"), ("b2", "w1"),
        // Half twist: a2 continues to b0 and b2 to a0.
        ("a2", "u2"), ("b0", "u2"), ("b2", "w2"), ("a0", "w2"),
        ("r0", "q0"), ("r1", "q0"), ("u0", "q0"), ("w0", "q0"),
        ("r1", "q1"), ("r2", "q1"), ("u1", "q1"), ("w1", "q1"),
        ("r2", "q2"), ("r0", "q2"), ("u2", "q2"), ("w2", "q2"),
    ];
    let covers: Vec<(String, String)> = pairs
        .iter()
        .map(|&(l, u)| (l.into(), u.into()))
        .collect();
    named(&cells, &covers)
}

/// One square `sq` with corners `p0..p3` and sides `s0..s3` (`s<i>` joins
/// `p<i>` and `p<i+1>`).
pub fn square() -> Ccc {
    polygon_pair(&[], "sq", 4)
}

/// A square and a pentagon sharing the edge `x`.
pub fn square_pentagon() -> Ccc {
    polygon_pair(&[("pent", 5)], "sq", 4)
}

fn polygon_pair(extra: &[(&str, usize)], first: &str, sides: usize) -> Ccc {
    let mut cells = Vec::new();
    let mut covers = Vec::new();
    for i in 0..sides {
        cells.push((format!("p{i}"), 0));
        let side = if i == 0 && !extra.is_empty() {
            String::from("x")
        } else {
            format!("s{i}")
        };
        cells.push((side.clone(), 1));
        covers.push((format!("p{i}"), side.clone()));
        covers.push((format!("p{}", (i + 1) % sides), side.clone()));
        covers.push((side, first.into()));
    }
    cells.push((first.into(), 2));
    for &(name, n) in extra {
        // Shares the edge x = p0 p1; the new corners are named t<i>.
        let corner = |i: usize| match i {
            0 => String::from("p1"),
            i if i == n - 1 => String::from("p0"),
            i => format!("t{i}"),
        };
        for i in 1..n - 1 {
            cells.push((corner(i), 0));
        }
        for i in 0..n - 1 {
            let side = format!("{name}{i}");
            cells.push((side.clone(), 1));
            covers.push((corner(i), side.clone()));
            covers.push((corner(i + 1), side.clone()));
            covers.push((side, name.into()));
        }
        covers.push((String::from("x"), name.into()));
        cells.push((name.into(), 2));
    }
    named(&cells, &covers)
}

/// Three edges `e1..e3` over a single vertex `v` under one 2-cell `x`; the
/// interval `[v, x]` has three intermediate cells.
pub fn bad_triple_edge() -> Ccc {
    let cells: Vec<(String, usize)> = [("v", 0), ("e1", 1), ("e2", 1), ("e3", 1), ("x", 2)]
        .iter()
        .map(|&(n, r)| (n.into(), r))
        .collect();
    let covers: Vec<(String, String)> = [
        ("v", "e1"), ("v", "e2"), ("v", "e3"), ("e1", "x"), ("e2", "x"), ("e3", "x"),
    ]
    .iter()
    .map(|&(l, u)| (l.into(), u.into()))
    .collect();
    named(&cells, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_vectors() {
        assert_eq!(torus9().face_vector(), alloc::vec![9, 18, 9]);
        assert_eq!(klein9().face_vector(), alloc::vec![9, 18, 9]);
        assert_eq!(mobius3().face_vector(), alloc::vec![6, 9, 3]);
        assert_eq!(simplex(2).len(), 7);
        assert_eq!(tetrahedron_solid().len(), 15);
        assert_eq!(square().face_vector(), alloc::vec![4, 4, 1]);
        assert_eq!(square_pentagon().face_vector(), alloc::vec![7, 8, 2]);
    }

    #[test]
    fn grid_fixtures_are_valid() {
        for s in [klein9(), square(), square_pentagon()] {
            let report = s.validate_axioms();
            assert!(report.passed(), "{:?}", report.violations);
            assert!(s.classify().unwrap().nonsingular);
        }
        assert!(klein9().classify().unwrap().manifold_like);
    }
}
