//! Individualize-and-refine backtracking over vertex images.
//!
//! Refinement splits cells by the multiset of labelled arc pairs into each
//! splitter cell; splits are ordered by key, never by vertex number, so the
//! trace of a refinement is an isomorphism invariant and two branches can be
//! compared trace against trace.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::Adjacency;
use crate::permgroup::Permutation;

type Cells = Vec<Vec<usize>>;

/// Label pairs `(label(i,j), label(j,i))` coded as small integers shared by both graphs.
struct Coded {
    n: usize,
    codes: Vec<u16>,
}

impl Coded {
    #[inline]
    fn code(&self, i: usize, j: usize) -> u16 {
        self.codes[i * self.n + j]
    }
}

fn encode<A: Adjacency, B: Adjacency>(left: &A, right: &B) -> (Coded, Coded, usize) {
    let mut kinds: Vec<(u32, u32)> = Vec::new();
    let mut code_of = |pair: (u32, u32)| -> u16 {
        if pair == (0, 0) {
            return 0;
        }
        match kinds.iter().position(|&k| k == pair) {
            Some(p) => p as u16 + 1,
            None => {
                kinds.push(pair);
                kinds.len() as u16
            }
        }
    };
    let mut build = |g: &dyn Fn(usize, usize) -> u32, n: usize| {
        let mut codes = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                codes[i * n + j] = code_of((g(i, j), g(j, i)));
            }
        }
        Coded { n, codes }
    };
    let l = build(&|i, j| left.arc_label(i, j), left.order());
    let r = build(&|i, j| right.arc_label(i, j), right.order());
    (l, r, kinds.len())
}

pub(crate) struct Searcher<'a, A: Adjacency, B: Adjacency> {
    left: &'a A,
    right: &'a B,
    lcode: Coded,
    rcode: Coded,
    kinds: usize,
    deadline: Option<Instant>,
    nodes: u64,
}

impl<'a, A: Adjacency, B: Adjacency> Searcher<'a, A, B> {
    pub(crate) fn new(left: &'a A, right: &'a B, deadline: Option<Instant>) -> Self {
        let (lcode, rcode, kinds) = encode(left, right);
        Searcher {
            left,
            right,
            lcode,
            rcode,
            kinds,
            deadline,
            nodes: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::BudgetExceeded("search time limit reached".into()));
                }
            }
        }
        Ok(())
    }

    fn refine(&self, right_side: bool, cells: &mut Cells) -> Vec<u32> {
        let code = if right_side { &self.rcode } else { &self.lcode };
        let mut trace = Vec::new();
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < cells.len() {
                let splitter = cells[s].clone();
                let mut c = 0;
                while c < cells.len() {
                    if cells[c].len() > 1 {
                        let mut keyed: Vec<(Vec<u16>, usize)> = cells[c]
                            .iter()
                            .map(|&v| {
                                let mut key = vec![0u16; self.kinds];
                                for &u in &splitter {
                                    let k = code.code(v, u);
                                    if k != 0 {
                                        key[k as usize - 1] += 1;
                                    }
                                }
                                (key, v)
                            })
                            .collect();
                        if keyed.iter().any(|(k, _)| *k != keyed[0].0) {
                            keyed.sort();
                            let mut fragments: Cells = Vec::new();
                            trace.push(u32::MAX);
                            trace.push(s as u32);
                            trace.push(c as u32);
                            let mut prev: Option<&Vec<u16>> = None;
                            for (key, v) in &keyed {
                                if prev != Some(key) {
                                    fragments.push(Vec::new());
                                    trace.extend(key.iter().map(|&x| x as u32));
                                    prev = Some(key);
                                }
                                fragments.last_mut().unwrap().push(*v);
                            }
                            trace.extend(fragments.iter().map(|f| f.len() as u32));
                            let count = fragments.len();
                            cells.splice(c..=c, fragments);
                            c += count - 1;
                            changed = true;
                        }
                    }
                    c += 1;
                }
                s += 1;
            }
            if !changed {
                break;
            }
        }
        trace
    }

    fn individualize(cells: &Cells, k: usize, v: usize) -> Cells {
        let mut out = Vec::with_capacity(cells.len() + 1);
        out.extend_from_slice(&cells[..k]);
        out.push(vec![v]);
        out.push(cells[k].iter().copied().filter(|&x| x != v).collect());
        out.extend_from_slice(&cells[k + 1..]);
        out
    }

    fn shapes_match(a: &Cells, b: &Cells) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.len() == y.len())
    }

    /// Unit partition refined on each side; `None` if the sides already differ.
    pub(crate) fn initial(&self) -> Option<(Cells, Cells)> {
        if self.left.order() != self.right.order() {
            return None;
        }
        let n = self.left.order();
        let mut l: Cells = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
        let mut r = l.clone();
        let tl = self.refine(false, &mut l);
        let tr = self.refine(true, &mut r);
        (tl == tr && Self::shapes_match(&l, &r)).then_some((l, r))
    }

    /// Individualizes `v` on the left and `w` on the right in cell `k`, then refines.
    pub(crate) fn branch(&self, left: &Cells, right: &Cells, k: usize, v: usize, w: usize) -> Option<(Cells, Cells)> {
        let mut l = Self::individualize(left, k, v);
        let mut r = Self::individualize(right, k, w);
        let tl = self.refine(false, &mut l);
        let tr = self.refine(true, &mut r);
        (tl == tr && Self::shapes_match(&l, &r)).then_some((l, r))
    }

    /// Depth-first search for a label-preserving bijection compatible with
    /// the paired partitions.
    pub(crate) fn extend(&mut self, left: &Cells, right: &Cells) -> Result<Option<Permutation>> {
        self.tick()?;
        let Some(k) = left.iter().position(|c| c.len() > 1) else {
            let n = self.left.order();
            let mut images = vec![0; n];
            for (a, b) in left.iter().zip(right) {
                images[a[0]] = b[0];
            }
            let ok = (0..n).all(|i| {
                (0..n).all(|j| self.left.arc_label(i, j) == self.right.arc_label(images[i], images[j]))
            });
            return Ok(ok.then(|| Permutation::from_images_unchecked(images)));
        };
        let v = left[k][0];
        for &w in &right[k] {
            if let Some((l, r)) = self.branch(left, right, k, v, w) {
                if let Some(found) = self.extend(&l, &r)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }

    /// Partition of the left graph after individualizing `v` in cell `k` and refining.
    pub(crate) fn individualize_left(&self, cells: &Cells, k: usize, v: usize) -> Cells {
        let mut l = Self::individualize(cells, k, v);
        self.refine(false, &mut l);
        l
    }
}

pub(crate) fn is_discrete(cells: &Cells) -> bool {
    cells.iter().all(|c| c.len() == 1)
}
