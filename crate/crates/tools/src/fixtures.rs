//! Built-in complexes by name.

use ccc_core::{fixtures, Ccc};

pub const NAMES: &[&str] = &[
    "two_triangles",
    "tetrahedron_solid",
    "tetrahedron_boundary",
    "mobius3",
    "torus9",
    "klein9",
    "square",
    "square_pentagon",
    "disjoint_edges",
    "disjoint_triangles",
    "simplex",
    "bad_triple_edge",
];

/// `simplex` needs `dimension`; a trailing `_x_edge` takes the product
/// with an edge.
pub fn fixture(name: &str, dimension: Option<usize>) -> Option<Ccc> {
    if let Some(base) = name.strip_suffix("_x_edge") {
        return Some(fixture(base, dimension)?.product(&fixtures::simplex(1)));
    }
    Some(match name {
        "two_triangles" => fixtures::two_triangles(),
        "tetrahedron_solid" => fixtures::tetrahedron_solid(),
        "tetrahedron_boundary" => fixtures::tetrahedron_boundary(),
        "mobius3" => fixtures::mobius3(),
        "torus9" => fixtures::torus9(),
        "klein9" => fixtures::klein9(),
        "square" => fixtures::square(),
        "square_pentagon" => fixtures::square_pentagon(),
        "disjoint_edges" => fixtures::disjoint_edges(),
        "disjoint_triangles" => fixtures::disjoint_triangles(),
        "simplex" => fixtures::simplex(dimension?),
        "bad_triple_edge" => fixtures::bad_triple_edge(),
        _ => return None,
    })
}
