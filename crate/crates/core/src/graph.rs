//! Circulant graphs `X(n; S)` and the dense graphs produced from them.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zmod::{factorize, Modulus};

/// Anything with a finite vertex set and a labelled arc relation.
///
/// `arc_label(i, j) == 0` means there is no arc from `i` to `j`; any other
/// value is the arc's colour plus one. Undirected graphs are symmetric.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn arc_label(&self, i: usize, j: usize) -> u32;
    fn is_directed(&self) -> bool;

    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.arc_label(i, j) != 0
    }

    /// True iff `images` (as `i -> images[i]`) preserves arcs, non-arcs and colours.
    fn preserved_by(&self, images: &[usize]) -> bool {
        let n = self.order();
        if images.len() != n {
            return false;
        }
        (0..n).all(|i| (0..n).all(|j| self.arc_label(i, j) == self.arc_label(images[i], images[j])))
    }

    fn to_dense(&self) -> DenseGraph {
        let n = self.order();
        let mut labels = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                labels[i * n + j] = self.arc_label(i, j);
            }
        }
        DenseGraph {
            order: n,
            directed: self.is_directed(),
            labels,
        }
    }
}

/// The connection set `S` of a circulant: sorted residues in `[1, n-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConnectionSet {
    n: usize,
    elements: Vec<usize>,
    colours: Option<BTreeMap<usize, u32>>,
    directed: bool,
}

impl ConnectionSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn colours(&self) -> Option<&BTreeMap<usize, u32>> {
        self.colours.as_ref()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The circulant (colour) (di)graph `X(n; S)` on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CirculantGraph {
    modulus: Modulus,
    connection: ConnectionSet,
    member: Vec<u32>,
}

impl CirculantGraph {
    /// Validated uncoloured circulant.
    pub fn new(n: usize, set: &[usize], directed: bool) -> Result<Self> {
        Self::build(n, set, None, directed)
    }

    /// Undirected uncoloured circulant, the common case.
    pub fn undirected(n: usize, set: &[usize]) -> Result<Self> {
        Self::new(n, set, false)
    }

    /// Colour circulant; every element of `colours` keys must be in the set.
    pub fn with_colours(n: usize, colours: BTreeMap<usize, u32>, directed: bool) -> Result<Self> {
        let set: Vec<usize> = colours.keys().copied().collect();
        Self::build(n, &set, Some(colours), directed)
    }

    fn build(
        n: usize,
        set: &[usize],
        colours: Option<BTreeMap<usize, u32>>,
        directed: bool,
    ) -> Result<Self> {
        let modulus = factorize(n)?;
        let mut elements: Vec<usize> = set.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&s| s == 0 || s >= n) {
            return Err(Error::RangeViolation(bad));
        }
        let mut member = vec![0u32; n];
        for &s in &elements {
            member[s] = colours.as_ref().map_or(1, |c| c[&s] + 1);
        }
        if !directed {
            for &s in &elements {
                let neg = n - s;
                if member[neg] == 0 {
                    return Err(Error::SymmetryViolation(s));
                }
                if member[neg] != member[s] {
                    return Err(Error::ColourMismatch(s));
                }
            }
        }
        Ok(CirculantGraph {
            modulus,
            connection: ConnectionSet {
                n,
                elements,
                colours,
                directed,
            },
            member,
        })
    }

    pub fn n(&self) -> usize {
        self.modulus.n()
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    /// The connection set elements.
    pub fn set(&self) -> &[usize] {
        &self.connection.elements
    }

    pub fn is_coloured(&self) -> bool {
        self.connection.colours.is_some()
    }

    pub fn contains_difference(&self, d: usize) -> bool {
        self.member[d % self.n()] != 0
    }

    /// Number of undirected edges (or arcs, when directed).
    pub fn edge_count(&self) -> usize {
        let arcs = self.n() * self.connection.len();
        if self.connection.directed {
            arcs
        } else {
            arcs / 2
        }
    }

    pub(crate) fn require_plain(&self, what: &str) -> Result<()> {
        if self.connection.directed || self.is_coloured() {
            return Err(Error::Precondition(format!(
                "{what} requires an undirected, uncoloured graph"
            )));
        }
        Ok(())
    }

    /// Text form `n;s1,s2,...`.
    pub fn to_text(&self) -> String {
        let set: Vec<String> = self.set().iter().map(|s| s.to_string()).collect();
        format!("{};{}", self.n(), set.join(","))
    }
}

impl Adjacency for CirculantGraph {
    fn order(&self) -> usize {
        self.n()
    }

    fn arc_label(&self, i: usize, j: usize) -> u32 {
        let n = self.n();
        self.member[(j + n - i % n) % n]
    }

    fn is_directed(&self) -> bool {
        self.connection.directed
    }

    fn preserved_by(&self, images: &[usize]) -> bool {
        // Only rows leaving the images of each vertex need checking, but the
        // full comparison is cheap at the orders handled here.
        let n = self.n();
        if images.len() != n {
            return false;
        }
        for i in 0..n {
            let gi = images[i];
            for (j, &gj) in images.iter().enumerate() {
                if self.member[(j + n - i) % n] != self.member[(gj + n - gi) % n] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for CirculantGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set: Vec<String> = self.set().iter().map(|s| s.to_string()).collect();
        write!(f, "X({}; {{{}}})", self.n(), set.join(","))
    }
}

/// An explicit graph stored as a row-major label matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DenseGraph {
    order: usize,
    directed: bool,
    labels: Vec<u32>,
}

impl DenseGraph {
    pub fn empty(order: usize, directed: bool) -> Self {
        DenseGraph {
            order,
            directed,
            labels: vec![0; order * order],
        }
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(order, false);
        for &(a, b) in edges {
            g.set_label(a, b, 1);
            g.set_label(b, a, 1);
        }
        g
    }

    pub fn set_label(&mut self, i: usize, j: usize, label: u32) {
        assert!(i != j || label == 0, "loops are not allowed");
        self.labels[i * self.order + j] = label;
    }

    pub fn edge_count(&self) -> usize {
        let arcs = self.labels.iter().filter(|&&l| l != 0).count();
        if self.directed {
            arcs
        } else {
            arcs / 2
        }
    }
}

impl Adjacency for DenseGraph {
    fn order(&self) -> usize {
        self.order
    }

    fn arc_label(&self, i: usize, j: usize) -> u32 {
        self.labels[i * self.order + j]
    }

    fn is_directed(&self) -> bool {
        self.directed
    }
}

/// Lexicographic product `X[Y]`; vertex `(x, y)` sits at index `x * |Y| + y`.
pub fn wreath_graph(outer: &impl Adjacency, inner: &impl Adjacency) -> DenseGraph {
    let (a, b) = (outer.order(), inner.order());
    let n = a * b;
    let mut g = DenseGraph::empty(n, outer.is_directed() || inner.is_directed());
    for x1 in 0..a {
        for y1 in 0..b {
            for x2 in 0..a {
                for y2 in 0..b {
                    let label = if x1 == x2 {
                        inner.arc_label(y1, y2)
                    } else {
                        outer.arc_label(x1, x2)
                    };
                    if label != 0 {
                        g.set_label(x1 * b + y1, x2 * b + y2, label);
                    }
                }
            }
        }
    }
    g
}

/// Subgraph induced on the multiples of `m`, relabelled `km -> k`.
pub fn subgroup_induced(x: &CirculantGraph, m: usize) -> Result<CirculantGraph> {
    let n = x.n();
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::NotDivisor { m, n });
    }
    let order = n / m;
    let directed = x.connection.directed;
    match &x.connection.colours {
        None => {
            let set: Vec<usize> = (1..order).filter(|&k| x.contains_difference(k * m)).collect();
            CirculantGraph::new(order, &set, directed)
        }
        Some(colours) => {
            let map: BTreeMap<usize, u32> = (1..order)
                .filter_map(|k| colours.get(&(k * m)).map(|&c| (k, c)))
                .collect();
            CirculantGraph::with_colours(order, map, directed)
        }
    }
}

/// `X(n; Z_n \ (S ∪ {0}))`.
pub fn complement(x: &CirculantGraph) -> Result<CirculantGraph> {
    x.require_plain("complement")?;
    let n = x.n();
    let set: Vec<usize> = (1..n).filter(|&d| !x.contains_difference(d)).collect();
    CirculantGraph::undirected(n, &set)
}

/// Connectivity of an undirected circulant: `gcd(S ∪ {n}) = 1`.
pub fn is_connected(x: &CirculantGraph) -> bool {
    x.set().iter().fold(x.n(), |g, &s| g.gcd(&s)) == 1
}

/// Splits `X` as `outer ≀ inner` along the order-`d` subgroup `H = (n/d) Z_n`.
///
/// Returns `Some((outer, inner))` exactly when `S \ H` is a union of cosets of
/// `H`. Vertex `x + (n/d) y` of `X` corresponds to `(x, y)` of the product;
/// that correspondence is re-verified on every successful split.
pub fn wreath_decomposition(
    x: &CirculantGraph,
    d: usize,
) -> Result<Option<(CirculantGraph, CirculantGraph)>> {
    let n = x.n();
    if d <= 1 || d >= n || !n.is_multiple_of(d) {
        return Err(Error::Precondition(format!(
            "wreath split of order {n} needs a proper nontrivial divisor, got {d}"
        )));
    }
    let step = n / d;
    for &s in x.set() {
        if s % step == 0 {
            continue;
        }
        let label = x.arc_label(0, s);
        if (0..d).any(|j| x.arc_label(0, (s + j * step) % n) != label) {
            return Ok(None);
        }
    }
    let inner = subgroup_induced(x, step)?;
    let directed = x.connection.directed;
    let outer = match &x.connection.colours {
        None => {
            let set: Vec<usize> = (1..step).filter(|&r| x.contains_difference(r)).collect();
            CirculantGraph::new(step, &set, directed)?
        }
        Some(colours) => {
            let map: BTreeMap<usize, u32> = (1..step)
                .filter_map(|r| colours.get(&r).map(|&c| (r, c)))
                .collect();
            CirculantGraph::with_colours(step, map, directed)?
        }
    };
    let product = wreath_graph(&outer, &inner);
    let vertex = |idx: usize| (idx / d + step * (idx % d)) % n;
    for a in 0..n {
        for b in 0..n {
            if product.arc_label(a, b) != x.arc_label(vertex(a), vertex(b)) {
                return Err(Error::Internal(format!(
                    "wreath split of {x} along order {d} does not reproduce adjacency"
                )));
            }
        }
    }
    Ok(Some((outer, inner)))
}

/// Parses a comma list such as `"1,4"`; the empty string is the empty set.
/// `column_offset` is added to reported columns (1-based).
pub fn parse_set_list(text: &str, line: usize, column_offset: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    if text.trim().is_empty() {
        return Ok(out);
    }
    let mut col = column_offset;
    for piece in text.split(',') {
        let trimmed = piece.trim();
        let lead = piece.len() - piece.trim_start().len();
        match trimmed.parse::<usize>() {
            Ok(v) => out.push(v),
            Err(_) => {
                return Err(Error::Parse {
                    line,
                    column: col + lead,
                    message: format!("expected a non-negative integer, found {trimmed:?}"),
                })
            }
        }
        col += piece.len() + 1;
    }
    Ok(out)
}

/// Parses the text form `n;s1,s2,...`.
pub fn parse_graph_spec(text: &str, line: usize) -> Result<(usize, Vec<usize>)> {
    let Some((head, tail)) = text.split_once(';') else {
        return Err(Error::Parse {
            line,
            column: 1,
            message: "expected `n;s1,s2,...`".into(),
        });
    };
    let lead = head.len() - head.trim_start().len();
    let n = head.trim().parse::<usize>().map_err(|_| Error::Parse {
        line,
        column: 1 + lead,
        message: format!("expected the order n, found {:?}", head.trim()),
    })?;
    let set = parse_set_list(tail, line, head.len() + 2)?;
    Ok((n, set))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(n: usize, s: &[usize]) -> CirculantGraph {
        CirculantGraph::undirected(n, s).unwrap()
    }

    #[test]
    fn construction() {
        let c5 = circ(5, &[1, 4]);
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(CirculantGraph::undirected(5, &[1]), Err(Error::SymmetryViolation(1)));
        assert_eq!(CirculantGraph::undirected(5, &[0]), Err(Error::RangeViolation(0)));
        assert_eq!(CirculantGraph::undirected(5, &[7]), Err(Error::RangeViolation(7)));
        let k4 = circ(4, &[1, 2, 3]);
        assert_eq!(k4.edge_count(), 6);
        assert!(CirculantGraph::new(5, &[1], true).is_ok());
    }

    #[test]
    fn colour_symmetry() {
        let bad: BTreeMap<usize, u32> = [(1, 0), (4, 1)].into_iter().collect();
        assert_eq!(
            CirculantGraph::with_colours(5, bad, false),
            Err(Error::ColourMismatch(1))
        );
        let good: BTreeMap<usize, u32> = [(1, 0), (4, 0), (2, 1), (3, 1)].into_iter().collect();
        let g = CirculantGraph::with_colours(5, good, false).unwrap();
        assert_eq!(g.arc_label(0, 2), 2);
        assert_eq!(g.arc_label(0, 1), 1);
    }

    #[test]
    fn wreath_graph_examples() {
        let empty2 = DenseGraph::empty(2, false);
        let k3 = circ(3, &[1, 2]);
        assert_eq!(wreath_graph(&empty2, &k3).edge_count(), 6);
        let k2 = circ(2, &[1]);
        let empty3 = DenseGraph::empty(3, false);
        let kk = wreath_graph(&k2, &empty3);
        assert_eq!(kk.edge_count(), 9);
        let c5 = circ(5, &[1, 4]);
        let single = DenseGraph::empty(1, false);
        assert_eq!(wreath_graph(&c5, &single), c5.to_dense());
    }

    #[test]
    fn induced_examples() {
        let x = circ(6, &[2, 4]);
        assert_eq!(subgroup_induced(&x, 2).unwrap().set(), &[1, 2]);
        assert!(subgroup_induced(&x, 3).unwrap().set().is_empty());
        assert_eq!(subgroup_induced(&x, 1).unwrap(), x);
        assert_eq!(subgroup_induced(&x, 4), Err(Error::NotDivisor { m: 4, n: 6 }));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&circ(5, &[1, 4])).unwrap().set(), &[2, 3]);
        assert!(complement(&circ(4, &[1, 2, 3])).unwrap().set().is_empty());
        assert_eq!(complement(&circ(6, &[2, 4])).unwrap().set(), &[1, 3, 5]);
    }

    #[test]
    fn connectivity() {
        assert!(!is_connected(&circ(6, &[2, 4])));
        assert!(is_connected(&circ(6, &[1, 5])));
        assert!(!is_connected(&circ(7, &[])));
    }

    #[test]
    fn wreath_decomposition_examples() {
        let (outer, inner) = wreath_decomposition(&circ(6, &[2, 4]), 3).unwrap().unwrap();
        assert_eq!((outer.n(), outer.set()), (2, &[][..]));
        assert_eq!((inner.n(), inner.set()), (3, &[1, 2][..]));
        let (outer, inner) = wreath_decomposition(&circ(10, &[5]), 2).unwrap().unwrap();
        assert_eq!((outer.n(), outer.set()), (5, &[][..]));
        assert_eq!((inner.n(), inner.set()), (2, &[1][..]));
        assert!(wreath_decomposition(&circ(5, &[1, 4]), 5).is_err());
        assert!(wreath_decomposition(&circ(6, &[1, 5]), 3).unwrap().is_none());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_graph_spec("5;1,4", 1).unwrap(), (5, vec![1, 4]));
        assert_eq!(parse_graph_spec("6;", 1).unwrap(), (6, vec![]));
        match parse_graph_spec("5;1,x", 3) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_graph_spec("5", 1), Err(Error::Parse { column: 1, .. })));
    }

    fn all_symmetric_sets(n: usize) -> Vec<Vec<usize>> {
        let reps: Vec<usize> = (1..=n / 2).collect();
        (0u32..1 << reps.len())
            .map(|mask| {
                let mut s = Vec::new();
                for (i, &r) in reps.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s.push(r);
                        if n - r != r {
                            s.push(n - r);
                        }
                    }
                }
                s.sort_unstable();
                s
            })
            .collect()
    }

    #[test]
    fn rotation_and_reflection_preserve_adjacency() {
        for n in 1..=12 {
            for s in all_symmetric_sets(n) {
                let x = circ(n, &s);
                let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
                assert!(x.preserved_by(&rot));
                assert!(x.preserved_by(&refl));
                assert_eq!(complement(&complement(&x).unwrap()).unwrap(), x);
                for m in factorize(n).unwrap().divisors() {
                    let y = subgroup_induced(&x, m).unwrap();
                    assert!(!y.is_directed());
                }
            }
        }
    }

    #[test]
    fn wreath_decomposition_guard_holds() {
        for n in 4..=30 {
            let divisors: Vec<usize> = factorize(n)
                .unwrap()
                .divisors()
                .into_iter()
                .filter(|&d| d > 1 && d < n)
                .collect();
            if divisors.is_empty() {
                continue;
            }
            let sets = all_symmetric_sets(n);
            let stride = (sets.len() / 64).max(1);
            for s in sets.iter().step_by(stride) {
                let x = circ(n, s);
                for &d in &divisors {
                    wreath_decomposition(&x, d).unwrap();
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn wreath_edge_count(a in 1usize..6, b in 1usize..6, ma in 0u32..8, mb in 0u32..8) {
            let pick = |n: usize, mask: u32| -> CirculantGraph {
                let s: Vec<usize> = (1..n).filter(|&x| mask >> (x.min(n - x) % 3) & 1 == 1).collect();
                circ(n, &s)
            };
            let x = pick(a, ma);
            let y = pick(b, mb);
            let w = wreath_graph(&x, &y);
            proptest::prop_assert_eq!(w.edge_count(), a * y.edge_count() + x.edge_count() * b * b);
        }
    }
}
