//! Ground truth at small order: automorphism groups and isomorphisms by
//! backtracking search, CI checks and regular-subgroup enumeration.

mod ci;
mod orbits;
mod regular;
mod search;

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::{Adjacency, CirculantGraph};
use crate::permgroup::{PermGroup, Permutation};

pub use ci::{ci_counterexample, ci_graph_witness, ci_via_conjugacy, is_ci_graph, is_ci_group, symmetric_connection_sets};
pub use orbits::{arc_orbit_count, edge_orbit_count, two_arc_orbit_count};
pub use regular::{find_noncyclic_regular, regular_subgroups, RegularSubgroup, REGULAR_DEGREE_LIMIT, REGULAR_ORDER_LIMIT};

use search::{is_discrete, Searcher};

/// Limits on oracle work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest graph the backtracking search accepts.
    pub max_vertices: usize,
    /// Largest group whose elements may be listed one by one.
    pub max_group_order: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: 32,
            max_group_order: crate::permgroup::DEFAULT_ENUMERATION_BOUND,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn new(max_vertices: usize, max_group_order: u64, time_limit: Option<Duration>) -> Result<Self> {
        if max_vertices == 0 || max_group_order == 0 {
            return Err(Error::Precondition("budget bounds must be positive".into()));
        }
        Ok(SearchBudget {
            max_vertices,
            max_group_order,
            time_limit,
        })
    }

    pub fn with_max_vertices(mut self, max_vertices: usize) -> Self {
        self.max_vertices = max_vertices.max(1);
        self
    }

    fn deadline(&self) -> Option<Instant> {
        self.time_limit.map(|t| Instant::now() + t)
    }

    fn admit(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::BudgetExceeded(format!(
                "{n} vertices exceed the search bound of {}",
                self.max_vertices
            )));
        }
        Ok(())
    }

    pub(crate) fn admit_enumeration(&self, order: &BigUint) -> Result<()> {
        if *order > BigUint::from(self.max_group_order) {
            return Err(Error::BudgetExceeded(format!(
                "group of order {order} exceeds the enumeration bound {}",
                self.max_group_order
            )));
        }
        Ok(())
    }
}

fn orbit_marks(point: usize, gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// The full automorphism group of `graph`, as a sorted generating set.
///
/// Direction and colours are honoured. The search fixes a base by repeated
/// individualization of the first non-singleton cell; at each base point,
/// deepest first, it looks for one automorphism per orbit of the point
/// stabilizer found so far.
pub fn brute_force_aut<G: Adjacency>(graph: &G, budget: &SearchBudget) -> Result<PermGroup> {
    let n = graph.order();
    budget.admit(n)?;
    let mut searcher = Searcher::new(graph, graph, budget.deadline());
    let Some((mut cells, _)) = searcher.initial() else {
        return Err(Error::Internal("refinement is not deterministic".into()));
    };
    let mut levels = Vec::new();
    while !is_discrete(&cells) {
        let k = cells.iter().position(|c| c.len() > 1).unwrap();
        let b = cells[k][0];
        let next = searcher.individualize_left(&cells, k, b);
        levels.push((cells, k, b));
        cells = next;
    }
    let mut gens: Vec<Permutation> = Vec::new();
    for (cells, k, b) in levels.iter().rev() {
        let mut reached = orbit_marks(*b, &gens, n);
        let mut failed = vec![false; n];
        for &y in &cells[*k] {
            if reached[y] || failed[y] {
                continue;
            }
            let found = match searcher.branch(cells, cells, *k, *b, y) {
                Some((l, r)) => searcher.extend(&l, &r)?,
                None => None,
            };
            match found {
                Some(g) => {
                    gens.push(g);
                    reached = orbit_marks(*b, &gens, n);
                }
                None => {
                    for (z, hit) in orbit_marks(y, &gens, n).into_iter().enumerate() {
                        failed[z] |= hit;
                    }
                }
            }
        }
    }
    gens.sort();
    PermGroup::new(n, gens)
}

/// An isomorphism from `left` to `right` between arbitrary labelled graphs, if any.
pub fn find_isomorphism<A: Adjacency, B: Adjacency>(
    left: &A,
    right: &B,
    budget: &SearchBudget,
) -> Result<Option<Permutation>> {
    if left.order() != right.order() || left.is_directed() != right.is_directed() {
        return Ok(None);
    }
    budget.admit(left.order())?;
    let mut searcher = Searcher::new(left, right, budget.deadline());
    let Some((l, r)) = searcher.initial() else {
        return Ok(None);
    };
    let found = searcher.extend(&l, &r)?;
    if let Some(phi) = &found {
        let images = phi.images();
        let n = left.order();
        let ok = (0..n).all(|i| (0..n).all(|j| left.arc_label(i, j) == right.arc_label(images[i], images[j])));
        if !ok {
            return Err(Error::Internal("isomorphism witness failed verification".into()));
        }
    }
    Ok(found)
}

/// A multiplier `a` with `a·S_x = S_y` (colours included), if one exists.
pub fn multiplier_isomorphism(x: &CirculantGraph, y: &CirculantGraph) -> Option<usize> {
    if x.n() != y.n() || x.connection().is_directed() != y.connection().is_directed() {
        return None;
    }
    let n = x.n();
    if x.set().len() != y.set().len() {
        return None;
    }
    x.modulus()
        .units()
        .into_iter()
        .find(|&a| (1..n).all(|s| x.arc_label(0, s) == y.arc_label(0, a * s % n)))
}

/// An isomorphism `X -> Y` between circulants of the same order, if any.
///
/// Multiplier maps `i -> a·i` are tried first; the backtracking search runs
/// only when none applies.
pub fn are_isomorphic(x: &CirculantGraph, y: &CirculantGraph, budget: &SearchBudget) -> Result<Option<Permutation>> {
    if x.n() != y.n() {
        return Err(Error::Precondition(format!(
            "isomorphism test needs equal orders, got {} and {}",
            x.n(),
            y.n()
        )));
    }
    if x.connection().is_directed() != y.connection().is_directed() || x.set().len() != y.set().len() {
        return Ok(None);
    }
    if let Some(a) = multiplier_isomorphism(x, y) {
        return Ok(Some(Permutation::affine(x.modulus(), a, 0)?));
    }
    find_isomorphism(x, y, budget)
}
