//! Permutation groups given by generators, with a lazily built stabilizer
//! chain for exact order and membership.

mod chain;
mod description;
mod perm;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

pub use chain::{ElementIter, StabChain};
pub use description::{GroupDescription, WreathLabelling};
pub use perm::Permutation;

use crate::error::{Error, Result};
use crate::zmod::{crt_pair, factorize};

/// Default bound on group orders for element enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

/// A permutation group on `0..degree`.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    /// `S_n` generated by the `n`-cycle and the transposition `(0 1)`.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::rotation(n));
            if n > 2 {
                gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
            }
        }
        PermGroup::new(n, gens).unwrap()
    }

    /// `⟨ρ⟩` on `n` points.
    pub fn cyclic(n: usize) -> Self {
        PermGroup::new(n, vec![Permutation::rotation(n)]).unwrap()
    }

    /// `⟨ρ, reflection⟩` on `n` points.
    pub fn dihedral(n: usize) -> Self {
        PermGroup::new(n, vec![Permutation::rotation(n), Permutation::reflection(n)]).unwrap()
    }

    /// Keeps only generators that enlarge the group generated by the earlier ones.
    pub fn reduced(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        let mut chain = StabChain::new(degree);
        let mut kept = Vec::new();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
            if chain.insert(&g) {
                kept.push(g);
            }
        }
        let group = PermGroup {
            degree,
            generators: kept,
            chain: OnceLock::new(),
        };
        let _ = group.chain.set(chain);
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::from_generators(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Equal orders and mutual generator membership.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut idx = 0;
        while idx < orbit.len() {
            let x = orbit[idx];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            idx += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orb = self.orbit(p);
                for &x in &orb {
                    seen[x] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    fn require_transitive(&self) -> Result<()> {
        if self.is_transitive() {
            Ok(())
        } else {
            Err(Error::Intransitive)
        }
    }

    /// All elements, provided the order is within `bound`.
    pub fn elements(&self, bound: u64) -> Result<ElementIter<'_>> {
        let order = self.order();
        if order > BigUint::from(bound) {
            return Err(Error::BudgetExceeded(format!(
                "group of order {order} exceeds the enumeration bound {bound}"
            )));
        }
        Ok(self.chain().elements())
    }

    /// Finest block system in which `seed.0` and `seed.1` share a block.
    pub fn minimal_blocks(&self, seed: (usize, usize)) -> Result<BlockSystem> {
        self.require_transitive()?;
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue = VecDeque::new();
        let (a, b) = seed;
        if a != b {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
            queue.push_back((a, b));
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let (gx, gy) = (g.apply(x), g.apply(y));
                let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                    queue.push_back((gx, gy));
                }
            }
        }
        let mut cells: Vec<Vec<usize>> = Vec::new();
        let mut cell_of_root = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            if cell_of_root[r] == usize::MAX {
                cell_of_root[r] = cells.len();
                cells.push(Vec::new());
            }
            cells[cell_of_root[r]].push(x);
        }
        Ok(BlockSystem::new(n, cells))
    }

    pub fn is_primitive(&self) -> Result<bool> {
        self.require_transitive()?;
        for v in 1..self.degree {
            if self.minimal_blocks((0, v))?.blocks().len() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coset partitions of `Z_n` (one per divisor `k`, blocks of size `k`)
    /// left invariant by the group. The group must contain the rotation.
    pub fn cyclic_block_systems(&self) -> Result<Vec<BlockSystem>> {
        let n = self.degree;
        if n > 1 && !self.contains(&Permutation::rotation(n)) {
            return Err(Error::RotationMissing(n));
        }
        let divisors = if n == 0 { Vec::new() } else { factorize(n)?.divisors() };
        Ok(divisors
            .into_iter()
            .map(|k| BlockSystem::cosets(n, k))
            .filter(|b| b.is_invariant_under(self))
            .collect())
    }

    /// `H ≀ K` on `U × V`, point `(u, v)` at index `u * |V| + v`.
    pub fn wreath(outer: &PermGroup, inner: &PermGroup) -> PermGroup {
        let (a, b) = (outer.degree, inner.degree);
        let n = a * b;
        let mut gens = Vec::new();
        for h in &outer.generators {
            let images = (0..n).map(|idx| h.apply(idx / b) * b + idx % b).collect();
            gens.push(Permutation::from_images_unchecked(images));
        }
        // one fibre per outer orbit is enough
        for orbit in outer.orbits() {
            let u = orbit[0];
            for k in &inner.generators {
                let images = (0..n)
                    .map(|idx| if idx / b == u { u * b + k.apply(idx % b) } else { idx })
                    .collect();
                gens.push(Permutation::from_images_unchecked(images));
            }
        }
        PermGroup::new(n, gens).unwrap()
    }

    /// `H × K` acting on `Z_{mr}` through `x -> (x mod m, x mod r)`.
    pub fn direct_product_crt(left: &PermGroup, right: &PermGroup) -> Result<PermGroup> {
        let (m, r) = (left.degree, right.degree);
        if m.gcd(&r) != 1 {
            return Err(Error::NotCoprimeSplit { n: m * r, m });
        }
        let n = m * r;
        let mut gens = Vec::new();
        for h in &left.generators {
            let images = (0..n).map(|x| crt_pair(m, r, h.apply(x % m), x % r)).collect();
            gens.push(Permutation::from_images_unchecked(images));
        }
        for k in &right.generators {
            let images = (0..n).map(|x| crt_pair(m, r, x % m, k.apply(x % r))).collect();
            gens.push(Permutation::from_images_unchecked(images));
        }
        PermGroup::new(n, gens)
    }

    /// Conjugates every generator by the relabelling `map` (old label -> new label).
    pub fn relabel(&self, map: &[usize]) -> PermGroup {
        PermGroup::new(
            self.degree,
            self.generators.iter().map(|g| g.relabel(map)).collect(),
        )
        .unwrap()
    }

    /// Whether some `x` in the group has `x g x^-1 = h`.
    ///
    /// Computes the conjugacy class of `g` as its orbit under conjugation by
    /// the generators; refuses groups above `bound`.
    pub fn are_conjugate(&self, g: &Permutation, h: &Permutation, bound: u64) -> Result<bool> {
        Ok(self.conjugacy_class(g, bound)?.contains(h))
    }

    pub fn conjugacy_class(&self, g: &Permutation, bound: u64) -> Result<HashSet<Permutation>> {
        let order = self.order();
        if order > BigUint::from(bound) {
            return Err(Error::BudgetExceeded(format!(
                "group of order {order} exceeds the enumeration bound {bound}"
            )));
        }
        let mut class = HashSet::new();
        class.insert(g.clone());
        let mut frontier = vec![g.clone()];
        while let Some(x) = frontier.pop() {
            for s in &self.generators {
                let y = x.conjugate_by(s);
                if class.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(class)
    }

    /// Orbit count of the induced action on the given objects.
    pub fn count_orbits_on<T, F>(&self, objects: &[T], act: F) -> usize
    where
        T: Ord + Clone,
        F: Fn(&Permutation, &T) -> T,
    {
        let index: std::collections::BTreeMap<T, usize> =
            objects.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut seen = vec![false; objects.len()];
        let mut count = 0;
        for start in 0..objects.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for g in &self.generators {
                    let img = act(g, &objects[i]);
                    let j = *index.get(&img).expect("action must preserve the object set");
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        count
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order().is_one()
    }
}

/// A partition of `0..degree` into equal-size cells, sorted by smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockSystem {
    degree: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Self {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        BlockSystem { degree, blocks }
    }

    /// Cosets of the order-`k` subgroup `(n/k) Z_n`.
    pub fn cosets(n: usize, k: usize) -> Self {
        let step = n / k;
        let blocks = (0..step).map(|r| (0..k).map(|j| r + j * step).collect()).collect();
        BlockSystem::new(n, blocks)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1 || self.block_size() <= 1
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&x)).unwrap()
    }

    /// For each generator and block `B`: `g(B) = B'` for some block `B'`.
    pub fn is_invariant_under(&self, group: &PermGroup) -> bool {
        let mut cell = vec![0usize; self.degree];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                cell[x] = i;
            }
        }
        group.generators().iter().all(|g| {
            self.blocks.iter().all(|b| {
                let target = cell[g.apply(b[0])];
                b.iter().all(|&x| cell[g.apply(x)] == target)
            })
        })
    }

    /// Block property for every generator: `g(B) = B` or `g(B) ∩ B = ∅`.
    pub fn satisfies_block_property(&self, group: &PermGroup) -> bool {
        group.generators().iter().all(|g| {
            self.blocks.iter().all(|b| {
                let image: BTreeSet<usize> = b.iter().map(|&x| g.apply(x)).collect();
                let orig: BTreeSet<usize> = b.iter().copied().collect();
                image == orig || image.is_disjoint(&orig)
            })
        })
    }
}

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::factorize;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    /// Closure of the generators by breadth-first multiplication.
    fn enumerate_by_closure(g: &PermGroup) -> HashSet<Permutation> {
        let mut set = HashSet::new();
        let id = Permutation::identity(g.degree());
        set.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for s in g.generators() {
                let y = x.then(s);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn chain_orders() {
        assert_eq!(PermGroup::symmetric(4).order(), BigUint::from(24u32));
        assert_eq!(PermGroup::dihedral(8).order(), BigUint::from(16u32));
        assert!(!PermGroup::cyclic(5).contains(&Permutation::reflection(5)));
        assert_eq!(PermGroup::symmetric(30).order(), factorial(30));
        assert_eq!(PermGroup::trivial(3).order(), BigUint::one());
        assert_eq!(
            PermGroup::new(3, vec![Permutation::identity(4)]).unwrap_err(),
            Error::DegreeMismatch { expected: 3, found: 4 }
        );
    }

    #[test]
    fn dihedral_enumeration_matches() {
        let d8 = PermGroup::dihedral(8);
        let by_closure = enumerate_by_closure(&d8);
        assert_eq!(by_closure.len(), 16);
        let by_chain: HashSet<Permutation> = d8.elements(100).unwrap().collect();
        assert_eq!(by_chain, by_closure);
    }

    #[test]
    fn blocks_examples() {
        let z6 = PermGroup::cyclic(6);
        let b = z6.minimal_blocks((0, 2)).unwrap();
        assert_eq!(b.blocks(), &[vec![0, 2, 4], vec![1, 3, 5]]);
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.minimal_blocks((0, 1)).unwrap().blocks().len(), 1);
        let d4 = PermGroup::dihedral(4);
        assert_eq!(d4.minimal_blocks((0, 2)).unwrap().blocks(), &[vec![0, 2], vec![1, 3]]);
        let intransitive = PermGroup::new(4, vec![perm(&[1, 0, 2, 3])]).unwrap();
        assert_eq!(intransitive.minimal_blocks((0, 1)), Err(Error::Intransitive));
    }

    #[test]
    fn cyclic_systems() {
        let sizes = |g: &PermGroup| -> Vec<usize> {
            g.cyclic_block_systems().unwrap().iter().map(|b| b.block_size()).collect()
        };
        assert_eq!(sizes(&PermGroup::cyclic(6)), vec![1, 2, 3, 6]);
        assert_eq!(sizes(&PermGroup::symmetric(6)), vec![1, 6]);
        let aut_2k3 = PermGroup::wreath(&PermGroup::symmetric(2), &PermGroup::symmetric(3));
        // product index x*3+y corresponds to vertex x + 2y of X(6,{2,4})
        let map: Vec<usize> = (0..6).map(|idx| idx / 3 + 2 * (idx % 3)).collect();
        let relabelled = aut_2k3.relabel(&map);
        assert!(sizes(&relabelled).contains(&3));
        assert_eq!(
            PermGroup::dihedral(5).relabel(&[0, 2, 1, 3, 4]).cyclic_block_systems().unwrap_err(),
            Error::RotationMissing(5)
        );
    }

    #[test]
    fn primitivity() {
        assert!(PermGroup::symmetric(5).is_primitive().unwrap());
        assert!(!PermGroup::dihedral(6).is_primitive().unwrap());
        assert!(PermGroup::cyclic(5).is_primitive().unwrap());
    }

    #[test]
    fn wreath_orders() {
        let w = PermGroup::wreath(&PermGroup::symmetric(2), &PermGroup::symmetric(3));
        assert_eq!(w.order(), BigUint::from(72u32));
        let w = PermGroup::wreath(&PermGroup::symmetric(5), &PermGroup::symmetric(2));
        assert_eq!(w.order(), BigUint::from(3840u32));
        let w = PermGroup::wreath(&PermGroup::trivial(1), &PermGroup::symmetric(4));
        assert_eq!(w.order(), BigUint::from(24u32));
        // intransitive outer still yields |H| * |K|^|U|
        let w = PermGroup::wreath(&PermGroup::trivial(2), &PermGroup::cyclic(3));
        assert_eq!(w.order(), BigUint::from(9u32));
    }

    #[test]
    fn direct_products() {
        let g = PermGroup::direct_product_crt(&PermGroup::symmetric(3), &PermGroup::symmetric(5))
            .unwrap();
        assert_eq!((g.degree(), g.order()), (15, BigUint::from(720u32)));
        let t = PermGroup::direct_product_crt(&PermGroup::trivial(3), &PermGroup::trivial(5))
            .unwrap();
        assert!(t.is_trivial());
        let c = PermGroup::direct_product_crt(&PermGroup::cyclic(3), &PermGroup::cyclic(5))
            .unwrap();
        assert!(c.contains(&Permutation::rotation(15)));
        assert!(c.same_group(&PermGroup::cyclic(15)));
        assert!(PermGroup::direct_product_crt(&PermGroup::cyclic(2), &PermGroup::cyclic(4)).is_err());
    }

    #[test]
    fn conjugacy() {
        let s3 = PermGroup::symmetric(3);
        assert!(s3.are_conjugate(&perm(&[1, 0, 2]), &perm(&[0, 2, 1]), 1000).unwrap());
        let z4 = PermGroup::cyclic(4);
        let r = Permutation::rotation(4);
        assert!(!z4.are_conjugate(&r, &r.inverse(), 1000).unwrap());
        let d4 = PermGroup::dihedral(4);
        assert!(d4.are_conjugate(&r, &r.inverse(), 1000).unwrap());
        assert!(matches!(
            PermGroup::symmetric(12).are_conjugate(&r.pow(0), &r.pow(0), 1000),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn reduced_keeps_group() {
        let m7 = factorize(7).unwrap();
        let gens: Vec<Permutation> = (0..6)
            .map(|k| Permutation::affine(&m7, 1 + k, 2 * k + 1).unwrap())
            .collect();
        let full = PermGroup::new(7, gens.clone()).unwrap();
        let reduced = PermGroup::reduced(7, gens).unwrap();
        assert!(full.same_group(&reduced));
        assert!(reduced.generators().len() <= 3);
        assert_eq!(full.order(), BigUint::from(42u32));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just((0..n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        }

        fn arb_group() -> impl Strategy<Value = PermGroup> {
            (2usize..8).prop_flat_map(|n| {
                proptest::collection::vec(arb_perm(n), 1..4)
                    .prop_map(move |gens| PermGroup::new(n, gens).unwrap())
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn order_matches_enumeration(g in arb_group()) {
                prop_assume!(g.order() <= BigUint::from(10_000u32));
                let elems = enumerate_by_closure(&g);
                prop_assert_eq!(BigUint::from(elems.len()), g.order());
                let listed: HashSet<Permutation> = g.elements(10_000).unwrap().collect();
                prop_assert_eq!(listed, elems);
            }

            #[test]
            fn membership(g in arb_group(), idx in proptest::collection::vec(0usize..4, 1..4), other in arb_perm(7)) {
                let gens = g.generators();
                prop_assume!(!gens.is_empty());
                let mut x = Permutation::identity(g.degree());
                for i in idx {
                    x = x.then(&gens[i % gens.len()]);
                }
                prop_assert!(g.contains(&x));
                if other.degree() == g.degree() && g.order() <= BigUint::from(10_000u32) {
                    let elems = enumerate_by_closure(&g);
                    prop_assert_eq!(g.contains(&other), elems.contains(&other));
                }
            }

            #[test]
            fn minimal_blocks_are_blocks(g in arb_group(), b in 1usize..8) {
                prop_assume!(g.is_transitive());
                let b = b % g.degree();
                let sys = g.minimal_blocks((0, b)).unwrap();
                prop_assert!(sys.satisfies_block_property(&g));
                let size = sys.block_size();
                prop_assert!(sys.blocks().iter().all(|c| c.len() == size));
                prop_assert_eq!(sys.block_of(0), sys.block_of(b));
            }

            #[test]
            fn wreath_order_formula(h in arb_group(), k in arb_group()) {
                prop_assume!(h.degree() * k.degree() <= 24);
                let w = PermGroup::wreath(&h, &k);
                let expected = h.order() * num_traits::pow(k.order(), h.degree());
                prop_assert_eq!(w.order(), expected);
            }
        }
    }
}
