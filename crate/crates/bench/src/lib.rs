//! Fixed graph families shared by the benchmarks.

use circaut_core::CirculantGraph;

/// `X(n; S)` with `S` the nonzero squares mod `n` together with their negatives.
pub fn quadratic(n: usize) -> CirculantGraph {
    let mut set: Vec<usize> = (1..n).map(|a| a * a % n).filter(|&s| s != 0).collect();
    set.extend(set.clone().into_iter().map(|s| n - s));
    set.sort_unstable();
    set.dedup();
    CirculantGraph::undirected(n, &set).expect("symmetric by construction")
}

/// The cycle `C_n`.
pub fn cycle(n: usize) -> CirculantGraph {
    CirculantGraph::undirected(n, &[1, n - 1]).expect("symmetric")
}

/// `S = {1, 2, ..., k} ∪ -{1, ..., k}`, the k-th power of a cycle.
pub fn cycle_power(n: usize, k: usize) -> CirculantGraph {
    let mut set: Vec<usize> = (1..=k).flat_map(|s| [s, n - s]).collect();
    set.sort_unstable();
    set.dedup();
    CirculantGraph::undirected(n, &set).expect("symmetric")
}

/// `(n/m) K_m`-style disjoint union: the multiples of `n/m`.
pub fn disjoint_cliques(n: usize, m: usize) -> CirculantGraph {
    let step = n / m;
    let set: Vec<usize> = (1..m).map(|j| j * step).collect();
    CirculantGraph::undirected(n, &set).expect("symmetric")
}

/// A representative mix: prime, pq and square-free orders, structured and not.
pub fn workload() -> Vec<(String, CirculantGraph)> {
    let mut out = Vec::new();
    for n in [13, 29, 31] {
        out.push((format!("quadratic-{n}"), quadratic(n)));
    }
    for n in [15, 21, 30] {
        out.push((format!("cycle-power-{n}"), cycle_power(n, 2)));
        out.push((format!("cycle-{n}"), cycle(n)));
    }
    out.push(("cliques-30-5".into(), disjoint_cliques(30, 5)));
    out.push(("cliques-30-2".into(), disjoint_cliques(30, 2)));
    out
}
