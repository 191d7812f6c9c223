//! Orbit counts of the automorphism group on edges, arcs and 2-arcs.

use crate::error::Result;
use crate::graph::Adjacency;

use super::{brute_force_aut, SearchBudget};

/// Number of `Aut(X)`-orbits on edges (arcs, for directed graphs); 0 for an
/// edgeless graph, 1 iff the graph is edge-transitive.
pub fn edge_orbit_count<G: Adjacency>(graph: &G, budget: &SearchBudget) -> Result<usize> {
    let n = graph.order();
    let directed = graph.is_directed();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && graph.adjacent(i, j) && (directed || i < j))
        .collect();
    if edges.is_empty() {
        return Ok(0);
    }
    let group = brute_force_aut(graph, budget)?;
    Ok(group.count_orbits_on(&edges, |g, &(i, j)| {
        let (a, b) = (g.apply(i), g.apply(j));
        if directed || a < b {
            (a, b)
        } else {
            (b, a)
        }
    }))
}

/// Number of `Aut(X)`-orbits on arcs (ordered adjacent pairs).
pub fn arc_orbit_count<G: Adjacency>(graph: &G, budget: &SearchBudget) -> Result<usize> {
    let n = graph.order();
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && graph.adjacent(i, j))
        .collect();
    if arcs.is_empty() {
        return Ok(0);
    }
    let group = brute_force_aut(graph, budget)?;
    Ok(group.count_orbits_on(&arcs, |g, &(i, j)| (g.apply(i), g.apply(j))))
}

/// Number of `Aut(X)`-orbits on 2-arcs: walks `(u, v, w)` with `u ~ v ~ w`
/// and `u != w`.
pub fn two_arc_orbit_count<G: Adjacency>(graph: &G, budget: &SearchBudget) -> Result<usize> {
    let n = graph.order();
    let mut walks = Vec::new();
    for v in 0..n {
        let around: Vec<usize> = (0..n).filter(|&u| u != v && graph.adjacent(u, v)).collect();
        for &u in &around {
            for &w in &around {
                if u != w && graph.adjacent(v, w) {
                    walks.push((u, v, w));
                }
            }
        }
    }
    if walks.is_empty() {
        return Ok(0);
    }
    let group = brute_force_aut(graph, budget)?;
    Ok(group.count_orbits_on(&walks, |g, &(u, v, w)| (g.apply(u), g.apply(v), g.apply(w))))
}
