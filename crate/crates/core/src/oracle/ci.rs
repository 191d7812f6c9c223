//! The CI property: isomorphic circulants related by a multiplier.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::graph::CirculantGraph;
use crate::permgroup::Permutation;
use crate::zmod::{factorize, Modulus};

use super::{are_isomorphic, brute_force_aut, SearchBudget};

/// Every inverse-closed subset of `Z_n \ {0}`, as sorted vectors.
///
/// Sets are indexed by bitmasks over the inverse pairs `{d, n-d}`,
/// `1 <= d <= n/2`, in increasing mask order.
pub fn symmetric_connection_sets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let pairs = n / 2;
    (0u64..(1u64 << pairs)).map(move |mask| {
        let mut set = Vec::new();
        for d in 1..=pairs {
            if mask >> (d - 1) & 1 == 1 {
                set.push(d);
                if n - d != d {
                    set.push(n - d);
                }
            }
        }
        set.sort_unstable();
        set
    })
}

fn scale(modulus: &Modulus, a: usize, set: &[usize]) -> Vec<usize> {
    let n = modulus.n();
    let mut out: Vec<usize> = set.iter().map(|&s| a * s % n).collect();
    out.sort_unstable();
    out
}

fn multiplier_orbit(modulus: &Modulus, set: &[usize]) -> BTreeSet<Vec<usize>> {
    modulus.units().into_iter().map(|a| scale(modulus, a, set)).collect()
}

/// Isomorphism invariant: for each nonzero difference `d`, whether `d` is
/// in `S` and how many common neighbours `0` and `d` have.
fn profile(n: usize, set: &[usize]) -> Vec<(bool, usize)> {
    let mut member = vec![false; n];
    for &s in set {
        member[s] = true;
    }
    let mut out: Vec<(bool, usize)> = (1..n)
        .map(|d| (member[d], set.iter().filter(|&&s| member[(s + n - d) % n]).count()))
        .collect();
    out.sort_unstable();
    out
}

/// True iff every circulant isomorphic to `x` is `X(n; a·S)` for some unit `a`.
///
/// Requires an undirected, uncoloured graph.
pub fn is_ci_graph(x: &CirculantGraph, budget: &SearchBudget) -> Result<bool> {
    Ok(ci_graph_witness(x, budget)?.is_none())
}

/// A connection set `S'` with `X(n; S') ≅ x` but no multiplier taking `S` to `S'`.
pub fn ci_graph_witness(x: &CirculantGraph, budget: &SearchBudget) -> Result<Option<Vec<usize>>> {
    x.require_plain("the CI test")?;
    let n = x.n();
    budget.admit(n)?;
    let own = multiplier_orbit(x.modulus(), x.set());
    let key = profile(n, x.set());
    for other in symmetric_connection_sets(n) {
        if other.len() != x.set().len() || own.contains(&other) || profile(n, &other) != key {
            continue;
        }
        let y = CirculantGraph::undirected(n, &other)?;
        if are_isomorphic(x, &y, budget)?.is_some() {
            return Ok(Some(other));
        }
    }
    Ok(None)
}

/// Searches all symmetric connection sets on `n` vertices for a pair of
/// isomorphic circulants not related by a multiplier.
///
/// Works on one representative per multiplier orbit and returns the
/// lexicographically smallest pair found.
pub fn ci_counterexample(n: usize, budget: &SearchBudget) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let modulus = factorize(n)?;
    budget.admit(n)?;
    let mut seen = BTreeSet::new();
    // keyed by (|S|, profile); values are multiplier-orbit representatives
    type Buckets = BTreeMap<(usize, Vec<(bool, usize)>), Vec<Vec<usize>>>;
    let mut buckets = Buckets::new();
    for set in symmetric_connection_sets(n) {
        if seen.contains(&set) {
            continue;
        }
        seen.extend(multiplier_orbit(&modulus, &set));
        buckets.entry((set.len(), profile(n, &set))).or_default().push(set);
    }
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for reps in buckets.values() {
        for (i, a) in reps.iter().enumerate() {
            let x = CirculantGraph::undirected(n, a)?;
            for b in &reps[i + 1..] {
                let y = CirculantGraph::undirected(n, b)?;
                if are_isomorphic(&x, &y, budget)?.is_some() {
                    let pair = (a.clone(), b.clone());
                    if best.as_ref().is_none_or(|p| pair < *p) {
                        best = Some(pair);
                    }
                }
            }
        }
    }
    Ok(best)
}

/// CI status of `x` through its automorphism group: true iff every `n`-cycle
/// in `Aut(x)` generates a subgroup conjugate to the rotation group, that is,
/// is conjugate to some generator `ρ^k` of `⟨ρ⟩`.
pub fn ci_via_conjugacy(x: &CirculantGraph, budget: &SearchBudget) -> Result<bool> {
    let n = x.n();
    let group = brute_force_aut(x, budget)?;
    budget.admit_enumeration(&group.order())?;
    let rotation = Permutation::rotation(n);
    let mut targets = std::collections::HashSet::new();
    for k in x.modulus().units() {
        let power = rotation.pow(k);
        if !targets.contains(&power) {
            targets.extend(group.conjugacy_class(&power, budget.max_group_order)?);
        }
    }
    for g in group.elements(budget.max_group_order)? {
        if g.cycle_type() == [n] && !targets.contains(&g) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(DCI, CI)` status of `Z_n`: DCI iff `n` is `k`, `2k` or `4k` with `k` odd
/// and square-free; CI iff DCI or `n` is 8, 9 or 18.
pub fn is_ci_group(n: usize) -> (bool, bool) {
    let dci = n >= 1 && {
        let twos = n.trailing_zeros();
        let k = n >> twos;
        twos <= 2 && factorize(k).map(|m| m.is_squarefree()).unwrap_or(false)
    };
    (dci, dci || matches!(n, 8 | 9 | 18))
}
