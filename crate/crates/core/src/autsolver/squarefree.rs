use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::graph::{Adjacency, CirculantGraph};
use crate::permgroup::{factorial, BlockSystem, GroupDescription, PermGroup, Permutation};
use crate::zmod::{crt_pair, multiplier_stabilizer, UnitSubgroup};

/// `π` acting on the `Z_m` coordinate of `Z_n = Z_m × Z_{n/m}`, fixing the other.
fn lift(n: usize, m: usize, images: &[usize]) -> Permutation {
    let rest = n / m;
    Permutation::from_images_unchecked((0..n).map(|x| crt_pair(m, rest, images[x % m], x % rest)).collect())
}

/// Generators of `S_m` acting on the `Z_m` coordinate.
fn lifted_symmetric(n: usize, m: usize) -> Vec<Permutation> {
    if m < 2 {
        return Vec::new();
    }
    let cycle: Vec<usize> = (0..m).map(|y| (y + 1) % m).collect();
    let mut swap: Vec<usize> = (0..m).collect();
    swap.swap(0, 1);
    vec![lift(n, m, &cycle), lift(n, m, &swap)]
}

fn multipliers(x: &CirculantGraph, a: &UnitSubgroup) -> Vec<Permutation> {
    a.generators()
        .into_iter()
        .map(|k| Permutation::affine(x.modulus(), k, 0).expect("unit"))
        .collect()
}

/// Splits `gens` into automorphisms of `x` and a count of the rest.
fn automorphisms_only(x: &CirculantGraph, gens: Vec<Permutation>) -> (Vec<Permutation>, usize) {
    let before = gens.len();
    let kept: Vec<Permutation> = gens.into_iter().filter(|g| x.preserved_by(g.images())).collect();
    let dropped = before - kept.len();
    (kept, dropped)
}

/// The local group at a prime `p | n`: affine maps `T_{a,b}` with
/// `a ∈ A`, `a ≡ 1 (mod n/p)` and `b ∈ (n/p) Z_n`, all acting on the `Z_p`
/// coordinate only. When it is the full affine group of order `p(p-1)` it is
/// replaced by `S_p` on that coordinate.
///
/// Generators that fail to preserve adjacency are left out.
pub fn compute_ep(x: &CirculantGraph, a: &UnitSubgroup, p: usize) -> Result<PermGroup> {
    let n = x.n();
    if p < 2 || !n.is_multiple_of(p) {
        return Err(Error::NotDivisor { m: p, n });
    }
    Ok(local_group(x, a, p)?.0)
}

fn local_group(x: &CirculantGraph, a: &UnitSubgroup, p: usize) -> Result<(PermGroup, usize)> {
    let n = x.n();
    let rest = n / p;
    let local = a.congruent_to_one(rest);
    let mut gens = vec![Permutation::rotation(n).pow(rest)];
    gens.extend(multipliers(x, &local));
    if p * local.len() == p * (p - 1) {
        gens = lifted_symmetric(n, p);
    }
    let (kept, dropped) = automorphisms_only(x, gens);
    Ok((PermGroup::new(n, kept)?, dropped))
}

/// Intermediate objects of the square-free algorithm, kept for inspection.
#[derive(Debug, Clone)]
pub struct SquareFreeWorkspace {
    /// Multipliers fixing `S`.
    pub multipliers: UnitSubgroup,
    /// `E_p` for each prime divisor.
    pub local: BTreeMap<usize, PermGroup>,
    /// Primes whose local group is the full symmetric group.
    pub symmetric_primes: Vec<usize>,
    /// Classes of the merge relation on the symmetric primes.
    pub merged_classes: Vec<Vec<usize>>,
    /// `E_m` for each divisor `m > 1`.
    pub divisor_groups: BTreeMap<usize, PermGroup>,
    /// `A_m = {a ∈ A : a ≡ 1 (mod n/m)}`.
    pub divisor_multipliers: BTreeMap<usize, UnitSubgroup>,
    /// `E_m' = <E_m, A_m>`.
    pub extended: BTreeMap<usize, PermGroup>,
    /// The final group.
    pub group: PermGroup,
    /// Candidate generators dropped because they did not preserve adjacency.
    pub rejected: usize,
}

/// The swap of `n/p_i + k p_i p_j` with `n/p_j + k p_i p_j` for every `k`.
fn merge_swap(n: usize, pi: usize, pj: usize) -> Vec<usize> {
    let mut images: Vec<usize> = (0..n).collect();
    let step = pi * pj;
    for k in 0..n / step {
        let u = (n / pi + k * step) % n;
        let v = (n / pj + k * step) % n;
        images.swap(u, v);
    }
    images
}

/// Partitions the symmetric primes by the closure of the pairwise swap test.
pub fn merge_symmetric_primes(x: &CirculantGraph, symmetric_primes: &[usize]) -> Vec<Vec<usize>> {
    let n = x.n();
    let t = symmetric_primes.len();
    let mut parent: Vec<usize> = (0..t).collect();
    fn root(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..t {
        for j in i + 1..t {
            if x.preserved_by(&merge_swap(n, symmetric_primes[i], symmetric_primes[j])) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &p) in symmetric_primes.iter().enumerate() {
        let r = root(&mut parent, i);
        classes.entry(r).or_default().push(p);
    }
    classes.into_values().collect()
}

impl SquareFreeWorkspace {
    pub fn build(x: &CirculantGraph) -> Result<Self> {
        x.require_plain("the square-free solver")?;
        let n = x.n();
        let modulus = x.modulus();
        if !modulus.is_squarefree() || modulus.is_prime() || n < 2 {
            return Err(Error::Precondition(format!(
                "the square-free solver needs a square-free composite order, got {n}"
            )));
        }
        let mut rejected = 0;
        let a = multiplier_stabilizer(modulus, x.set());
        let primes = modulus.primes();

        let mut local = BTreeMap::new();
        let mut symmetric_primes = Vec::new();
        for &p in &primes {
            let (group, dropped) = local_group(x, &a, p)?;
            rejected += dropped;
            if p > 1 && group.order() == factorial(p) {
                symmetric_primes.push(p);
            }
            local.insert(p, group);
        }

        let merged_classes = merge_symmetric_primes(x, &symmetric_primes);
        let class_products: Vec<usize> = merged_classes.iter().map(|c| c.iter().product()).collect();

        let divisors: Vec<usize> = modulus.divisors().into_iter().filter(|&m| m > 1).collect();
        let mut divisor_groups = BTreeMap::new();
        let mut divisor_multipliers = BTreeMap::new();
        let mut extended = BTreeMap::new();
        for &m in &divisors {
            let mut gens = Vec::new();
            for &mi in &class_products {
                gens.extend(lifted_symmetric(n, mi.gcd(&m)));
            }
            for &p in &primes {
                if m % p == 0 && !symmetric_primes.contains(&p) {
                    gens.extend(local[&p].generators().iter().cloned());
                }
            }
            let (kept, dropped) = automorphisms_only(x, gens);
            rejected += dropped;
            let em = PermGroup::new(n, kept)?;

            let am = a.congruent_to_one(n / m);
            let mut ext_gens = em.generators().to_vec();
            ext_gens.extend(multipliers(x, &am));
            let (kept, dropped) = automorphisms_only(x, ext_gens);
            rejected += dropped;
            extended.insert(m, PermGroup::new(n, kept)?);
            divisor_groups.insert(m, em);
            divisor_multipliers.insert(m, am);
        }

        let top = extended[&n].clone();
        let mut gens = top.generators().to_vec();
        let systems: Vec<usize> = divisors
            .iter()
            .copied()
            .filter(|&k| BlockSystem::cosets(n, k).is_invariant_under(&top))
            .collect();
        for &k in &systems {
            for &kk in &systems {
                if kk % k != 0 {
                    continue;
                }
                // ρ^{n/k} on the block of size kk through 0, identity elsewhere.
                let spacing = n / kk;
                let shift: Vec<usize> = (0..n)
                    .map(|v| if v % spacing == 0 { (v + n / k) % n } else { v })
                    .collect();
                if !x.preserved_by(&shift) {
                    continue;
                }
                for block in 0..spacing {
                    for h in extended[&k].generators() {
                        let restricted: Vec<usize> = (0..n)
                            .map(|v| if v % spacing == block { h.apply(v) } else { v })
                            .collect();
                        if x.preserved_by(&restricted) {
                            gens.push(Permutation::from_images_unchecked(restricted));
                        } else {
                            rejected += 1;
                        }
                    }
                }
            }
        }
        let group = PermGroup::reduced(n, gens)?;

        Ok(SquareFreeWorkspace {
            multipliers: a,
            local,
            symmetric_primes,
            merged_classes,
            divisor_groups,
            divisor_multipliers,
            extended,
            group,
            rejected,
        })
    }

    pub fn description(&self) -> GroupDescription {
        GroupDescription::generated_by(self.group.degree(), self.group.generators().to_vec())
    }

    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

/// `Aut(X)` for a circulant of square-free composite order, as a generating set.
pub fn aut_squarefree(x: &CirculantGraph) -> Result<GroupDescription> {
    Ok(SquareFreeWorkspace::build(x)?.description())
}
