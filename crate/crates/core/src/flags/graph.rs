use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{Flag, Orientation, Sign};
use crate::cell_id::CellId;
use crate::error::Error;
use crate::poset::Ccc;

/// All maximal chains of `cl(x)` starting at `x`, as index lists, sorted.
pub(crate) fn flags_below(s: &Ccc, x: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![x];
    extend_down(s, &mut current, &mut out);
    out.sort();
    out
}

fn extend_down(s: &Ccc, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let last = *current.last().expect("non-empty chain");
    let faces = s.faces_of(last);
    if faces.is_empty() {
        out.push(current.clone());
        return;
    }
    for &y in faces {
        current.push(y);
        extend_down(s, current, out);
        current.pop();
    }
}

/// Neighbour lists: two flags are adjacent when they differ in exactly one
/// position. Only flags present in `flags` are considered.
pub(crate) fn adjacency(s: &Ccc, flags: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let position: BTreeMap<&[usize], usize> = flags
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    let mut adj = vec![Vec::new(); flags.len()];
    let mut probe = Vec::new();
    for (fi, f) in flags.iter().enumerate() {
        let len = f.len();
        for pos in 0..len {
            let candidates: Vec<usize> = if pos == 0 {
                match f.get(1) {
                    Some(&below) => s.cofaces_of(below).to_vec(),
                    None => Vec::new(),
                }
            } else if pos + 1 < len {
                s.faces_of(f[pos - 1])
                    .iter()
                    .copied()
                    .filter(|&z| s.le_idx(f[pos + 1], z))
                    .collect()
            } else {
                s.faces_of(f[pos - 1]).to_vec()
            };
            for z in candidates.into_iter().filter(|&z| z != f[pos]) {
                probe.clear();
                probe.extend_from_slice(f);
                probe[pos] = z;
                if let Some(&gi) = position.get(probe.as_slice()) {
                    adj[fi].push(gi);
                }
            }
        }
        adj[fi].sort_unstable();
        adj[fi].dedup();
    }
    adj
}

pub(crate) enum Coloring {
    Colors(Vec<Sign>),
    Disconnected { components: usize },
    OddCycle(Vec<usize>),
}

/// Breadth-first two-colouring; node 0 gets `Plus`. An odd cycle is
/// reported in walk order (consecutive entries adjacent, last adjacent to
/// first).
pub(crate) fn two_color(adj: &[Vec<usize>]) -> Coloring {
    let n = adj.len();
    let mut color: Vec<Option<Sign>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut components = 0;
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        components += 1;
        color[root] = Some(Sign::Plus);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued nodes are coloured");
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(-cu);
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => {
                        return Coloring::OddCycle(odd_cycle(u, v, &parent, &depth));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    if components > 1 {
        return Coloring::Disconnected { components };
    }
    Coloring::Colors(color.into_iter().map(|c| c.expect("all coloured")).collect())
}

fn odd_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[a] > depth[b] {
        left.push(a);
        a = parent[a];
    }
    while depth[b] > depth[a] {
        right.push(b);
        b = parent[b];
    }
    while a != b {
        left.push(a);
        right.push(b);
        a = parent[a];
        b = parent[b];
    }
    left.push(a);
    right.reverse();
    left.extend(right);
    left
}

fn to_flag(s: &Ccc, f: &[usize]) -> Flag {
    Flag(f.iter().map(|&i| s.id(i).clone()).collect())
}

/// All flags below `x`, lexicographically sorted.
pub fn flags_of(s: &Ccc, x: &CellId) -> Result<Vec<Flag>, Error> {
    let i = s.idx(x)?;
    Ok(flags_below(s, i).iter().map(|f| to_flag(s, f)).collect())
}

/// The adjacency graph on the flags of an equidimensional complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagGraph {
    pub flags: Vec<Flag>,
    pub neighbours: Vec<Vec<usize>>,
}

impl FlagGraph {
    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbours.iter().map(Vec::len).collect()
    }

    pub fn is_connected(&self) -> bool {
        !matches!(two_color_connectivity(&self.neighbours), Some(c) if c > 1)
    }
}

fn two_color_connectivity(adj: &[Vec<usize>]) -> Option<usize> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut components = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        components += 1;
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    Some(components)
}

fn all_flags(s: &Ccc) -> Result<Vec<Vec<usize>>, Error> {
    let class = s.classify()?;
    if !class.equidimensional {
        return Err(Error::NotEquidimensional);
    }
    let mut flags: Vec<Vec<usize>> = (0..s.len())
        .filter(|&i| s.is_maximal(i))
        .flat_map(|i| flags_below(s, i))
        .collect();
    flags.sort();
    Ok(flags)
}

pub fn flag_graph(s: &Ccc) -> Result<FlagGraph, Error> {
    let flags = all_flags(s)?;
    let neighbours = adjacency(s, &flags);
    Ok(FlagGraph {
        flags: flags.iter().map(|f| to_flag(s, f)).collect(),
        neighbours,
    })
}

pub fn is_flag_connected(s: &Ccc) -> Result<bool, Error> {
    Ok(flag_graph(s)?.is_connected())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orientability {
    Orientable,
    NotFlagConnected { components: usize },
    /// A closed walk of odd length in the flag graph.
    OddCycle(Vec<Flag>),
}

impl Orientability {
    pub fn is_orientable(&self) -> bool {
        matches!(self, Orientability::Orientable)
    }
}

pub fn is_orientable(s: &Ccc) -> Result<Orientability, Error> {
    let flags = all_flags(s)?;
    let adj = adjacency(s, &flags);
    Ok(match two_color(&adj) {
        Coloring::Colors(_) => Orientability::Orientable,
        Coloring::Disconnected { components } => Orientability::NotFlagConnected { components },
        Coloring::OddCycle(cycle) => {
            Orientability::OddCycle(cycle.iter().map(|&i| to_flag(s, &flags[i])).collect())
        }
    })
}

/// Every closed cell has a connected flag graph. Returns the first cell
/// that does not.
pub fn cells_flag_connected(s: &Ccc) -> Result<(), CellId> {
    for i in 0..s.len() {
        let flags = flags_below(s, i);
        let adj = adjacency(s, &flags);
        if two_color_connectivity(&adj).is_some_and(|c| c > 1) {
            return Err(s.id(i).clone());
        }
    }
    Ok(())
}

/// The orientation giving the lexicographically least flag `+1`.
pub fn orient(s: &Ccc) -> Result<Orientation, Error> {
    let flags = all_flags(s)?;
    let adj = adjacency(s, &flags);
    match two_color(&adj) {
        Coloring::Colors(colors) => Ok(Orientation::from_pairs(
            flags.iter().map(|f| to_flag(s, f)).zip(colors),
        )),
        Coloring::Disconnected { components } => Err(Error::NotFlagConnected { components }),
        Coloring::OddCycle(cycle) => Err(Error::OddFlagCycle(
            cycle.iter().map(|&i| to_flag(s, &flags[i])).collect(),
        )),
    }
}
