//! Number theory over `Z_n`: factorization, the unit group and its
//! subgroups, multiplier stabilizers and CRT splitting.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A positive modulus together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    n: usize,
    prime_factors: Vec<(usize, u32)>,
}

impl Modulus {
    pub fn new(n: usize) -> Result<Self> {
        factorize(n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn prime_factors(&self) -> &[(usize, u32)] {
        &self.prime_factors
    }

    pub fn primes(&self) -> Vec<usize> {
        self.prime_factors.iter().map(|&(p, _)| p).collect()
    }

    pub fn is_prime(&self) -> bool {
        self.prime_factors.len() == 1 && self.prime_factors[0].1 == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.prime_factors.iter().all(|&(_, e)| e == 1)
    }

    /// True when `n = pq` for distinct primes `p < q`.
    pub fn as_two_primes(&self) -> Option<(usize, usize)> {
        match self.prime_factors.as_slice() {
            [(p, 1), (q, 1)] => Some((*p, *q)),
            _ => None,
        }
    }

    /// True when `n = p^e` with `e >= 1`.
    pub fn as_prime_power(&self) -> Option<(usize, u32)> {
        match self.prime_factors.as_slice() {
            [(p, e)] => Some((*p, *e)),
            _ => None,
        }
    }

    pub fn euler_phi(&self) -> usize {
        self.prime_factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<usize> {
        let mut out = vec![1usize];
        for &(p, e) in &self.prime_factors {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for &d in &out {
                let mut pk = 1;
                for _ in 0..=e {
                    next.push(d * pk);
                    pk *= p;
                }
            }
            out = next;
        }
        out.sort_unstable();
        out
    }

    pub fn is_unit(&self, a: usize) -> bool {
        if self.n == 1 {
            return false;
        }
        (a % self.n).gcd(&self.n) == 1
    }

    /// The units of `Z_n` in increasing order. `Z_1^*` is empty.
    pub fn units(&self) -> Vec<usize> {
        (1..self.n).filter(|&a| self.is_unit(a)).collect()
    }
}

/// Trial-division factorization.
pub fn factorize(n: usize) -> Result<Modulus> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut rest = n;
    let mut prime_factors = Vec::new();
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            prime_factors.push((p, e));
        }
        p += 1;
    }
    if rest > 1 {
        prime_factors.push((rest, 1));
    }
    Ok(Modulus { n, prime_factors })
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && factorize(n).map(|m| m.is_prime()).unwrap_or(false)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: usize, m: usize) -> Option<usize> {
    if m == 1 {
        return Some(0);
    }
    let ext = (a as i64 % m as i64).extended_gcd(&(m as i64));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m as i64) as usize)
}

/// A subgroup of `Z_n^*`, stored as its sorted elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitSubgroup {
    n: usize,
    elements: Vec<usize>,
}

impl UnitSubgroup {
    pub fn trivial(n: usize) -> Self {
        let elements = if n >= 2 { vec![1] } else { Vec::new() };
        UnitSubgroup { n, elements }
    }

    /// The full unit group.
    pub fn full(modulus: &Modulus) -> Self {
        UnitSubgroup {
            n: modulus.n(),
            elements: modulus.units(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&(a % self.n.max(1))).is_ok()
    }

    /// Elements congruent to 1 modulo `d`.
    pub fn congruent_to_one(&self, d: usize) -> UnitSubgroup {
        UnitSubgroup {
            n: self.n,
            elements: self.elements.iter().copied().filter(|&a| a % d == 1 % d).collect(),
        }
    }

    /// A small generating set, chosen greedily in increasing order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::new();
        if !self.elements.is_empty() {
            span.insert(1);
        }
        for &a in &self.elements {
            if span.contains(&a) {
                continue;
            }
            gens.push(a);
            span = closure(self.n, span.iter().copied().chain(std::iter::once(a)));
        }
        gens
    }
}

fn closure(n: usize, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let gens: Vec<usize> = gens.into_iter().collect();
    let mut set = BTreeSet::new();
    set.insert(1 % n);
    let mut frontier = vec![1 % n];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = x * g % n;
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// The smallest multiplicatively closed subset of `Z_n^*` containing `gens`.
pub fn subgroup_generated(modulus: &Modulus, gens: &[usize]) -> Result<UnitSubgroup> {
    let n = modulus.n();
    for &g in gens {
        if !modulus.is_unit(g) {
            return Err(Error::NotCoprime { element: g, n });
        }
    }
    if n < 2 {
        return Ok(UnitSubgroup::trivial(n));
    }
    let gens: Vec<usize> = gens.iter().map(|g| g % n).collect();
    Ok(UnitSubgroup {
        n,
        elements: closure(n, gens).into_iter().collect(),
    })
}

/// Every subgroup of `Z_n^*` exactly once, sorted by size then by elements.
///
/// Built from the cyclic subgroups by repeated pairwise joins until no new
/// subgroup appears.
pub fn all_unit_subgroups(modulus: &Modulus) -> Vec<UnitSubgroup> {
    let n = modulus.n();
    if n < 2 {
        return vec![UnitSubgroup::trivial(n)];
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(vec![1]);
    for u in modulus.units() {
        found.insert(closure(n, [u]).into_iter().collect());
    }
    loop {
        let current: Vec<Vec<usize>> = found.iter().cloned().collect();
        let mut grew = false;
        for (i, h) in current.iter().enumerate() {
            for k in &current[i + 1..] {
                let joined: Vec<usize> = closure(n, h.iter().chain(k.iter()).copied())
                    .into_iter()
                    .collect();
                if found.insert(joined) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<UnitSubgroup> = found
        .into_iter()
        .map(|elements| UnitSubgroup { n, elements })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements.cmp(&b.elements)));
    out
}

/// True iff `hs mod n` lies in `set` for every `s` in `set` and `h` in `subgroup`.
pub fn is_union_of_cosets(set: &[usize], subgroup: &UnitSubgroup) -> bool {
    let n = subgroup.n();
    if n == 0 {
        return true;
    }
    let member: BTreeSet<usize> = set.iter().map(|s| s % n).collect();
    member
        .iter()
        .all(|&s| subgroup.elements().iter().all(|&h| member.contains(&(h * s % n))))
}

/// `{a in Z_n^* : aS = S}`.
pub fn multiplier_stabilizer(modulus: &Modulus, set: &[usize]) -> UnitSubgroup {
    let n = modulus.n();
    let member: BTreeSet<usize> = set.iter().map(|s| s % n).collect();
    let elements = modulus
        .units()
        .into_iter()
        .filter(|&a| member.iter().all(|&s| member.contains(&(a * s % n))))
        .collect();
    UnitSubgroup { n, elements }
}

fn check_split(modulus: &Modulus, m: usize) -> Result<usize> {
    let n = modulus.n();
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::NotDivisor { m, n });
    }
    let rest = n / m;
    if m.gcd(&rest) != 1 {
        return Err(Error::NotCoprimeSplit { n, m });
    }
    Ok(rest)
}

/// `x -> (x mod m, x mod n/m)` for a coprime split `n = m * (n/m)`.
pub fn crt_split(modulus: &Modulus, m: usize, x: usize) -> Result<(usize, usize)> {
    let rest = check_split(modulus, m)?;
    Ok((x % m, x % rest))
}

/// Inverse of [`crt_split`].
pub fn crt_combine(modulus: &Modulus, m: usize, (a, b): (usize, usize)) -> Result<usize> {
    let rest = check_split(modulus, m)?;
    Ok(crt_pair(m, rest, a, b))
}

/// The unique `x mod m*r` with `x = a mod m` and `x = b mod r`; `m`, `r` coprime.
pub(crate) fn crt_pair(m: usize, r: usize, a: usize, b: usize) -> usize {
    let n = m * r;
    if r == 1 {
        return a % m;
    }
    let inv = inverse_mod(m % r, r).expect("coprime split");
    let a = a % m;
    let delta = (b % r + r - a % r) % r;
    (a + m * (delta * inv % r)) % n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize) -> Modulus {
        factorize(n).unwrap()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(m(15).prime_factors(), &[(3, 1), (5, 1)]);
        assert!(m(1).prime_factors().is_empty());
        assert_eq!(m(360).prime_factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(0), Err(Error::ZeroModulus));
        assert!(m(13).is_prime());
        assert!(m(30).is_squarefree());
        assert!(!m(12).is_squarefree());
        assert_eq!(m(15).as_two_primes(), Some((3, 5)));
        assert_eq!(m(30).as_two_primes(), None);
    }

    #[test]
    fn factorization_product() {
        for n in 1..=1000 {
            let md = m(n);
            let prod: usize = md.prime_factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(md.prime_factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn generated_subgroups() {
        assert_eq!(subgroup_generated(&m(13), &[5]).unwrap().elements(), &[1, 5, 8, 12]);
        assert_eq!(subgroup_generated(&m(13), &[]).unwrap().elements(), &[1]);
        assert_eq!(subgroup_generated(&m(5), &[2]).unwrap().elements(), &[1, 2, 3, 4]);
        assert_eq!(
            subgroup_generated(&m(12), &[5, 4]),
            Err(Error::NotCoprime { element: 4, n: 12 })
        );
    }

    #[test]
    fn enumerate_subgroups() {
        let sizes: Vec<usize> = all_unit_subgroups(&m(5)).iter().map(|h| h.len()).collect();
        assert_eq!(sizes, vec![1, 2, 4]);
        let sizes: Vec<usize> = all_unit_subgroups(&m(13)).iter().map(|h| h.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
        let eight: Vec<Vec<usize>> = all_unit_subgroups(&m(8))
            .iter()
            .map(|h| h.elements().to_vec())
            .collect();
        assert_eq!(
            eight,
            vec![vec![1], vec![1, 3], vec![1, 5], vec![1, 7], vec![1, 3, 5, 7]]
        );
    }

    #[test]
    fn coset_unions() {
        let h5 = subgroup_generated(&m(5), &[4]).unwrap();
        assert!(is_union_of_cosets(&[1, 4], &h5));
        let z7 = UnitSubgroup::full(&m(7));
        assert!(!is_union_of_cosets(&[1, 2, 5, 6], &z7));
        let squares = subgroup_generated(&m(13), &[4]).unwrap();
        assert_eq!(squares.elements(), &[1, 3, 4, 9, 10, 12]);
        assert!(!is_union_of_cosets(&[1, 5, 8, 12], &squares));
    }

    #[test]
    fn multiplier_stabilizer_examples() {
        assert_eq!(multiplier_stabilizer(&m(5), &[1, 4]).elements(), &[1, 4]);
        assert_eq!(multiplier_stabilizer(&m(8), &[1, 7]).elements(), &[1, 7]);
        assert_eq!(multiplier_stabilizer(&m(9), &[]).elements(), m(9).units().as_slice());
    }

    #[test]
    fn multiplier_stabilizer_is_maximal_coset_subgroup() {
        for n in 2..=50 {
            let md = m(n);
            let subgroups = all_unit_subgroups(&md);
            // a handful of symmetric sets per n
            for mask in 0u32..16 {
                let set: Vec<usize> = (1..n)
                    .filter(|&s| {
                        let r = s.min(n - s);
                        mask >> (r % 4) & 1 == 1 && r % 3 != 0
                    })
                    .collect();
                let a = multiplier_stabilizer(&md, &set);
                assert!(is_union_of_cosets(&set, &a));
                for h in &subgroups {
                    if is_union_of_cosets(&set, h) {
                        assert!(h.elements().iter().all(|&x| a.contains(x)));
                    }
                }
            }
        }
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_split(&m(15), 3, 7).unwrap(), (1, 2));
        assert_eq!(crt_split(&m(15), 3, 0).unwrap(), (0, 0));
        assert_eq!(crt_split(&m(6), 2, 5).unwrap(), (1, 2));
        assert_eq!(crt_split(&m(12), 2, 5), Err(Error::NotCoprimeSplit { n: 12, m: 2 }));
    }

    #[test]
    fn crt_roundtrip() {
        for n in 1..=200 {
            let md = m(n);
            for d in md.divisors() {
                if d.gcd(&(n / d)) != 1 {
                    continue;
                }
                for x in 0..n {
                    let parts = crt_split(&md, d, x).unwrap();
                    assert_eq!(crt_combine(&md, d, parts).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn phi_and_divisors() {
        assert_eq!(m(30).euler_phi(), 8);
        assert_eq!(m(12).divisors(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(inverse_mod(3, 7), Some(5));
        assert_eq!(inverse_mod(2, 4), None);
    }

    proptest::proptest! {
        #[test]
        fn generated_is_closed(n in 2usize..120, seeds in proptest::collection::vec(1usize..500, 0..3)) {
            let md = m(n);
            let gens: Vec<usize> = seeds.into_iter().filter(|&g| md.is_unit(g)).collect();
            let h = subgroup_generated(&md, &gens).unwrap();
            for &a in h.elements() {
                for &b in h.elements() {
                    proptest::prop_assert!(h.contains(a * b % n));
                }
            }
            proptest::prop_assert_eq!(md.euler_phi() % h.len(), 0);
        }
    }
}
