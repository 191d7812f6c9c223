//! Subgroups acting regularly on the vertex set.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};
use crate::zmod::Modulus;

/// Largest group order `regular_subgroups` will enumerate.
pub const REGULAR_ORDER_LIMIT: u64 = 10_000;
/// Largest degree `regular_subgroups` will enumerate.
pub const REGULAR_DEGREE_LIMIT: usize = 12;

#[derive(Debug, Clone)]
pub struct RegularSubgroup {
    pub group: PermGroup,
    pub is_cyclic: bool,
}

fn semiregular(g: &Permutation) -> bool {
    let cycles = g.cycle_type();
    cycles.iter().all(|&c| c == cycles[0])
}

/// Closure of `gens` indexed by the image of 0; `None` if two elements send
/// 0 to the same point or some element has a fixed point.
fn close(n: usize, gens: &[Permutation]) -> Option<Vec<Option<Permutation>>> {
    let mut table: Vec<Option<Permutation>> = vec![None; n];
    table[0] = Some(Permutation::identity(n));
    let mut queue = vec![Permutation::identity(n)];
    while let Some(e) = queue.pop() {
        for s in gens {
            let h = e.then(s);
            let x = h.apply(0);
            match &table[x] {
                Some(k) if *k == h => {}
                Some(_) => return None,
                None => {
                    if !semiregular(&h) {
                        return None;
                    }
                    table[x] = Some(h.clone());
                    queue.push(h);
                }
            }
        }
    }
    Some(table)
}

fn key(table: &[Option<Permutation>]) -> Vec<usize> {
    table
        .iter()
        .flat_map(|e| match e {
            Some(p) => p.images().to_vec(),
            None => Vec::new(),
        })
        .collect()
}

struct Enumeration {
    n: usize,
    by_image: Vec<Vec<Permutation>>,
    visited: HashSet<Vec<usize>>,
    found: BTreeMap<Vec<usize>, RegularSubgroup>,
}

impl Enumeration {
    fn descend(&mut self, gens: Vec<Permutation>, table: Vec<Option<Permutation>>) {
        let Some(x) = table.iter().position(|e| e.is_none()) else {
            let is_cyclic = table.iter().flatten().any(|p| p.order() == self.n);
            let group = PermGroup::new(self.n, gens).expect("degrees agree");
            self.found.insert(key(&table), RegularSubgroup { group, is_cyclic });
            return;
        };
        for g in self.by_image[x].clone() {
            let mut next = gens.clone();
            next.push(g);
            if let Some(t) = close(self.n, &next) {
                if self.visited.insert(key(&t)) {
                    self.descend(next, t);
                }
            }
        }
    }
}

fn enumerate(group: &PermGroup, bound: u64) -> Result<Vec<RegularSubgroup>> {
    let n = group.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut by_image = vec![Vec::new(); n];
    for g in group.elements(bound)? {
        if !g.is_identity() && semiregular(&g) {
            by_image[g.apply(0)].push(g);
        }
    }
    let mut run = Enumeration {
        n,
        by_image,
        visited: HashSet::new(),
        found: BTreeMap::new(),
    };
    let start = close(n, &[]).unwrap();
    run.descend(Vec::new(), start);
    Ok(run.found.into_values().collect())
}

/// All subgroups of `group` of order `n` acting regularly on `0..n`, each
/// tagged cyclic or not, in a fixed order.
///
/// Every regular subgroup is reached by adding, for the smallest point not
/// yet covered, the unique element sending 0 there; intermediate closures
/// that contain a non-semiregular element are pruned.
pub fn regular_subgroups(group: &PermGroup, n: usize) -> Result<Vec<RegularSubgroup>> {
    if group.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: group.degree(),
        });
    }
    if n > REGULAR_DEGREE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "regular subgroup enumeration is limited to degree {REGULAR_DEGREE_LIMIT}"
        )));
    }
    enumerate(group, REGULAR_ORDER_LIMIT)
}

/// The map `x + (n/d) y -> (x + 1 mod n/d) + (n/d) y`: rotation of the
/// block index of the order-`d` coset system, fibre position kept.
fn block_shift(n: usize, d: usize) -> Permutation {
    let step = n / d;
    Permutation::from_images_unchecked((0..n).map(|v| (v % step + 1) % step + step * (v / step)).collect())
}

/// A noncyclic regular subgroup of `group`, if one exists.
///
/// Tries, in order: the subgroup of affine maps `i -> a·i + b` lying in
/// `group`; the products `<block shift, ρ^{n/d}> ≅ Z_{n/d} × Z_d` with
/// `gcd(d, n/d) > 1` lying in `group`; full enumeration of `group`, which
/// needs it within the limits. Membership is decided by the stabilizer chain.
pub fn find_noncyclic_regular(group: &PermGroup) -> Result<Option<PermGroup>> {
    let n = group.degree();
    if n == 0 {
        return Ok(None);
    }
    let modulus = Modulus::new(n)?;
    let mut affine = Vec::new();
    for a in modulus.units() {
        for b in 0..n {
            let t = Permutation::affine(&modulus, a, b)?;
            if group.contains(&t) {
                affine.push(t);
            }
        }
    }
    let part = PermGroup::reduced(n, affine)?;
    if let Some(r) = enumerate(&part, u64::MAX)?.into_iter().find(|r| !r.is_cyclic) {
        return Ok(Some(r.group));
    }
    if part.order() == group.order() {
        return Ok(None);
    }
    for d in modulus.divisors() {
        if d > 1 && d < n && d.gcd(&(n / d)) > 1 {
            let shift = block_shift(n, d);
            if group.contains(&shift) {
                return Ok(Some(PermGroup::new(n, vec![shift, Permutation::rotation(n).pow(n / d)])?));
            }
        }
    }
    Ok(regular_subgroups(group, n)?.into_iter().find(|r| !r.is_cyclic).map(|r| r.group))
}
