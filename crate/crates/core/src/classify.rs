//! Predicates for classification results on circulants: edge- and
//! 2-arc-transitivity, circulants whose complements are also edge-transitive, regular subgroups, normality and
//! the prime-power dichotomy.
//!
//! Where a classification theorem is tested against the oracle, a case the
//! theorem does not cover raises an error instead of returning a label.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::autsolver::{aut, SolverConfig};
use crate::error::{Error, Result};
use crate::graph::{complement, is_connected, wreath_decomposition, CirculantGraph};
use crate::oracle::{brute_force_aut, edge_orbit_count, SearchBudget};
use crate::permgroup::Permutation;
use crate::zmod::{all_unit_subgroups, factorize, multiplier_stabilizer};

/// True iff `S` is empty or a single coset `sH` of a subgroup `H` of
/// `Z_p^*` containing `-1` (for odd `p`, the even-order subgroups).
pub fn edge_transitive_prime(x: &CirculantGraph) -> Result<bool> {
    x.require_plain("the edge-transitivity test")?;
    if !x.modulus().is_prime() {
        return Err(Error::Precondition(format!(
            "the edge-transitivity test needs a prime order, got {}",
            x.n()
        )));
    }
    let set = x.set();
    let Some(&s) = set.first() else {
        return Ok(true);
    };
    let p = x.n();
    Ok(all_unit_subgroups(x.modulus()).iter().any(|h| {
        if !h.contains(p - 1) || h.len() != set.len() {
            return false;
        }
        let mut coset: Vec<usize> = h.elements().iter().map(|&a| a * s % p).collect();
        coset.sort_unstable();
        coset == set
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwoArcLabel {
    Complete,
    CompleteBipartite,
    CompleteBipartiteMinusFactor,
    Cycle,
    NotTwoArcTransitive,
}

impl fmt::Display for TwoArcLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TwoArcLabel::Complete => "Complete",
            TwoArcLabel::CompleteBipartite => "CompleteBipartite",
            TwoArcLabel::CompleteBipartiteMinusFactor => "CompleteBipartiteMinusFactor",
            TwoArcLabel::Cycle => "Cycle",
            TwoArcLabel::NotTwoArcTransitive => "NotTwoArcTransitive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoArcClass {
    pub label: TwoArcLabel,
    /// How far the transitivity goes for this family.
    pub detail: &'static str,
}

/// Matches `X` against the connected 2-arc-transitive circulants: `K_n`,
/// `K_{n/2,n/2}`, `K_{n/2,n/2}` minus a 1-factor (`n >= 10`, `n/2` odd) and
/// `C_n`, tried in that order.
pub fn two_arc_classify(x: &CirculantGraph) -> Result<TwoArcClass> {
    x.require_plain("the 2-arc classification")?;
    let n = x.n();
    let set = x.set();
    let class = |label, detail| Ok(TwoArcClass { label, detail });
    if set.is_empty() || !is_connected(x) {
        return class(TwoArcLabel::NotTwoArcTransitive, "not a connected graph with edges");
    }
    let odds: Vec<usize> = (1..n).step_by(2).collect();
    if set.len() == n - 1 {
        return class(TwoArcLabel::Complete, "exactly 2-arc-transitive");
    }
    if n.is_multiple_of(2) && set == odds {
        return class(TwoArcLabel::CompleteBipartite, "exactly 3-arc-transitive");
    }
    if n >= 10 && (n / 2) % 2 == 1 {
        let minus: Vec<usize> = odds.iter().copied().filter(|&d| d != n / 2).collect();
        if set == minus {
            return class(TwoArcLabel::CompleteBipartiteMinusFactor, "exactly 2-arc-transitive");
        }
    }
    if set.len() == 2 {
        return class(TwoArcLabel::Cycle, "k-arc-transitive for every k >= 0");
    }
    class(TwoArcLabel::NotTwoArcTransitive, "no family matches")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZhangLabel {
    #[serde(rename = "mKn")]
    DisjointCompletes,
    #[serde(rename = "complement_mKn")]
    ComplementOfDisjointCompletes,
    Paley,
}

impl fmt::Display for ZhangLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ZhangLabel::DisjointCompletes => "mKn",
            ZhangLabel::ComplementOfDisjointCompletes => "complement_mKn",
            ZhangLabel::Paley => "Paley",
        };
        f.write_str(s)
    }
}

fn closes_to_subgroup(n: usize, set: &[usize]) -> bool {
    let mut member = vec![false; n];
    member[0] = true;
    for &s in set {
        member[s] = true;
    }
    (0..n).filter(|&a| member[a]).all(|a| (0..n).filter(|&b| member[b]).all(|b| member[(a + b) % n]))
}

fn is_quadratic_residue_coset(x: &CirculantGraph) -> bool {
    let p = x.n();
    if !x.modulus().is_prime() || p % 4 != 1 {
        return false;
    }
    let mut squares: Vec<usize> = (1..p).map(|a| a * a % p).collect();
    squares.sort_unstable();
    squares.dedup();
    let non_squares: Vec<usize> = (1..p).filter(|a| squares.binary_search(a).is_err()).collect();
    x.set() == squares || x.set() == non_squares
}

/// When both `X` and its complement are edge-transitive, the family `X`
/// belongs to; `None` otherwise.
///
/// Edge-transitivity is decided by the oracle (at most one edge orbit). The
/// Paley family accepts either quadratic-residue coset, the two being
/// isomorphic by a multiplier.
pub fn zhang_classify(x: &CirculantGraph, budget: &SearchBudget) -> Result<Option<ZhangLabel>> {
    x.require_plain("the complement-pair classification")?;
    let y = complement(x)?;
    if edge_orbit_count(x, budget)? > 1 || edge_orbit_count(&y, budget)? > 1 {
        return Ok(None);
    }
    let n = x.n();
    if closes_to_subgroup(n, x.set()) {
        return Ok(Some(ZhangLabel::DisjointCompletes));
    }
    if closes_to_subgroup(n, y.set()) {
        return Ok(Some(ZhangLabel::ComplementOfDisjointCompletes));
    }
    if is_quadratic_residue_coset(x) {
        return Ok(Some(ZhangLabel::Paley));
    }
    Err(Error::ClassificationViolation(format!(
        "{x} and its complement are edge-transitive but {x} is in none of the three families"
    )))
}

/// The smallest prime dividing `gcd(n, |Z_n^*(S)|)`, if that gcd exceeds 1.
///
/// A result guarantees a noncyclic regular subgroup of `Aut(X)`; `None`
/// carries no conclusion.
pub fn noncyclic_regular_sufficient(x: &CirculantGraph) -> Option<usize> {
    let a = multiplier_stabilizer(x.modulus(), x.set());
    let g = x.n().gcd(&a.len());
    if g <= 1 {
        return None;
    }
    factorize(g).ok().and_then(|m| m.primes().first().copied())
}

/// True iff `⟨ρ⟩` is normal in `Aut(X)`: conjugating `ρ` by every
/// generator gives a rotation.
pub fn is_normal_circulant(x: &CirculantGraph, config: &SolverConfig) -> Result<bool> {
    let n = x.n();
    let group = aut(x, config)?.description.realize()?;
    let rho = Permutation::rotation(n);
    Ok(group.generators().iter().all(|g| {
        let c = rho.conjugate_by(g);
        let shift = c.apply(0);
        (0..n).all(|i| c.apply(i) == (i + shift) % n)
    }))
}

/// True iff `X` splits as a wreath product along some proper subgroup.
pub fn is_wreath_decomposable(x: &CirculantGraph) -> Result<bool> {
    let n = x.n();
    for d in x.modulus().divisors() {
        if d > 1 && d < n && wreath_decomposition(x, d)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dichotomy {
    /// Some wreath decomposition exists.
    pub wreath: bool,
    /// Whether a Sylow `p`-subgroup of `Aut(X)` is normal; `None` when the
    /// group is too large to enumerate and the wreath side already holds.
    pub normal_sylow: Option<bool>,
}

/// For `n = p^e`: whether `X` is a wreath product and whether `Aut(X)` has
/// a normal Sylow `p`-subgroup. At least one must hold.
///
/// A Sylow subgroup is normal iff it is the only one, iff the elements of
/// `p`-power order number exactly `|G|_p`; elements are counted by
/// enumerating the oracle group.
pub fn prime_power_dichotomy(x: &CirculantGraph, budget: &SearchBudget) -> Result<Dichotomy> {
    x.require_plain("the prime-power dichotomy")?;
    let n = x.n();
    let Some((p, _)) = x.modulus().as_prime_power() else {
        return Err(Error::Precondition(format!("{n} is not a prime power")));
    };
    let wreath = n > p && is_wreath_decomposable(x)?;
    let group = brute_force_aut(x, budget)?;
    let order = group.order();
    let prime = BigUint::from(p);
    let mut sylow = BigUint::one();
    let mut rest = order.clone();
    while (&rest % &prime).is_zero() {
        rest /= &prime;
        sylow *= &prime;
    }
    let normal_sylow = if rest.is_one() {
        Some(true)
    } else if order > BigUint::from(budget.max_group_order) {
        if !wreath {
            return Err(Error::BudgetExceeded(format!(
                "Aut({x}) has order {order}, too large to count its {p}-elements"
            )));
        }
        None
    } else {
        let mut count = 0u64;
        for g in group.elements(budget.max_group_order)? {
            let mut k = g.order();
            while k % p == 0 {
                k /= p;
            }
            if k == 1 {
                count += 1;
            }
        }
        Some(BigUint::from(count) == sylow)
    };
    if !wreath && normal_sylow == Some(false) {
        return Err(Error::DichotomyViolation(format!(
            "{x} is not a wreath product and its Sylow {p}-subgroups are not normal"
        )));
    }
    Ok(Dichotomy { wreath, normal_sylow })
}
