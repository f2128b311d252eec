//! Brute-force oracles that only read the edge list and the weights.
//!
//! Nothing here calls into the library's search code, so agreement with it is
//! evidence rather than tautology.

#![allow(dead_code)]

use bondcover::{VertexId, VertexSet, Weight, WeightedMultigraph};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Dense copy of a small graph, vertices indexed 0..n in identifier order.
pub struct Small {
    pub n: usize,
    pub ids: Vec<VertexId>,
    pub mult: Vec<Vec<u32>>,
    pub weights: Vec<Weight>,
}

impl Small {
    pub fn new(g: &WeightedMultigraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let n = ids.len();
        assert!(n <= 20, "oracle graphs are tiny");
        let index = |v: VertexId| ids.iter().position(|&x| x == v).unwrap();
        let mut mult = vec![vec![0; n]; n];
        for (a, b, m) in g.edges() {
            let (i, j) = (index(a), index(b));
            mult[i][j] += m;
            mult[j][i] += m;
        }
        let weights = ids.iter().map(|&v| g.weight(v).clone()).collect();
        Small { n, ids, mult, weights }
    }

    pub fn full(&self) -> usize {
        (1 << self.n) - 1
    }

    pub fn mask_of(&self, set: &VertexSet) -> usize {
        set.iter()
            .map(|v| 1 << self.ids.iter().position(|x| x == v).expect("vertex of the graph"))
            .fold(0, |a, b| a | b)
    }

    pub fn set_of(&self, mask: usize) -> VertexSet {
        (0..self.n).filter(|i| mask >> i & 1 == 1).map(|i| self.ids[i]).collect()
    }

    pub fn weight_of(&self, mask: usize) -> Weight {
        (0..self.n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(Weight::zero(), |acc, i| acc + &self.weights[i])
    }

    /// Whether `mask` induces a connected subgraph (false for the empty set).
    pub fn connected(&self, mask: usize) -> bool {
        if mask == 0 {
            return false;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1 << start;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..self.n {
                if mask >> j & 1 == 1 && seen >> j & 1 == 0 && self.mult[i][j] > 0 {
                    seen |= 1 << j;
                    stack.push(j);
                }
            }
        }
        seen == mask
    }

    pub fn crossing(&self, x: usize, y: usize) -> u64 {
        let mut total = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if x >> i & 1 == 1 && y >> j & 1 == 1 {
                    total += u64::from(self.mult[i][j]);
                }
            }
        }
        total
    }

    /// Edges inside every vertex subset.
    fn inner_edges(&self) -> Vec<u64> {
        let mut e = vec![0u64; 1 << self.n];
        for mask in 1..1usize << self.n {
            let top = usize::BITS - 1 - mask.leading_zeros();
            let rest = mask & !(1 << top);
            let into: u64 = (0..self.n)
                .filter(|j| rest >> j & 1 == 1)
                .map(|j| u64::from(self.mult[top as usize][j]))
                .sum();
            e[mask] = e[rest] + into;
        }
        e
    }

    /// `table[U]` is true when G[U] contains two disjoint connected sets with
    /// at least c edges between them. Built bottom-up: either some G[U − v]
    /// already has such a pair, or U itself splits into two connected halves.
    pub fn model_table(&self, c: u64) -> Vec<bool> {
        let size = 1usize << self.n;
        let e = self.inner_edges();
        let conn: Vec<bool> = (0..size).map(|m| self.connected(m)).collect();
        let mut has = vec![false; size];
        for u in 1..size {
            if (0..self.n).any(|v| u >> v & 1 == 1 && has[u & !(1 << v)]) {
                has[u] = true;
                continue;
            }
            let low = u & u.wrapping_neg();
            let rest = u & !low;
            // X ranges over subsets of U containing the lowest vertex.
            let mut sub = rest;
            loop {
                let x = sub | low;
                let y = u & !x;
                if y != 0 && conn[x] && conn[y] && e[u] - e[x] - e[y] >= c {
                    has[u] = true;
                    break;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        has
    }

    /// Minimum cover weight and the covers attaining it, by trying all 2^n sets.
    pub fn optimum(&self, c: u64) -> (Weight, Vec<usize>) {
        let has = self.model_table(c);
        let full = self.full();
        let mut best: Option<Weight> = None;
        let mut argmin = Vec::new();
        for s in 0..=full {
            if has[full & !s] {
                continue;
            }
            let w = self.weight_of(s);
            match &best {
                Some(b) if w > *b => {}
                Some(b) if w == *b => argmin.push(s),
                _ => {
                    best = Some(w);
                    argmin = vec![s];
                }
            }
        }
        (best.expect("the full set is a cover"), argmin)
    }

    /// All inclusion-minimal covers.
    pub fn minimal_covers(&self, c: u64) -> Vec<usize> {
        let has = self.model_table(c);
        let full = self.full();
        (0..=full)
            .filter(|&s| !has[full & !s])
            .filter(|&s| (0..self.n).all(|v| s >> v & 1 == 0 || has[(full & !s) | 1 << v]))
            .collect()
    }

    /// Whether some edge cut δ(X) is a bond of size at least c: removing its
    /// edges from a connected graph leaves exactly two components.
    pub fn has_bond_by_cuts(&self, c: u64) -> bool {
        let full = self.full();
        for comp in self.component_masks(full) {
            let low = comp & comp.wrapping_neg();
            let mut sub = comp & !low;
            loop {
                let x = sub | low;
                if x != comp && self.crossing(x, comp & !x) >= c && self.pieces_after_cut(comp, x) == 2 {
                    return true;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & (comp & !low);
            }
        }
        false
    }

    fn pieces_after_cut(&self, comp: usize, x: usize) -> usize {
        let mut uf = UnionFind::new(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let both = comp >> i & 1 == 1 && comp >> j & 1 == 1;
                let same_side = (x >> i & 1) == (x >> j & 1);
                if both && same_side && self.mult[i][j] > 0 {
                    uf.union(i, j);
                }
            }
        }
        (0..self.n).filter(|&i| comp >> i & 1 == 1 && uf.find(i) == i).count()
    }

    pub fn component_masks(&self, mask: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut rest = mask;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut seen = 1 << start;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..self.n {
                    if rest >> j & 1 == 1 && seen >> j & 1 == 0 && self.mult[i][j] > 0 {
                        seen |= 1 << j;
                        stack.push(j);
                    }
                }
            }
            out.push(seen);
            rest &= !seen;
        }
        out
    }

    /// Whether G[mask] is a forest, parallel edges counting as cycles.
    pub fn is_forest(&self, mask: usize) -> bool {
        let mut uf = UnionFind::new(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if mask >> i & 1 == 0 || mask >> j & 1 == 0 || self.mult[i][j] == 0 {
                    continue;
                }
                if self.mult[i][j] > 1 || !uf.union(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Minimum weight of a set whose removal leaves a forest.
    pub fn fvs_optimum(&self) -> Weight {
        let full = self.full();
        (0..=full)
            .filter(|&s| self.is_forest(full & !s))
            .map(|s| self.weight_of(s))
            .min()
            .expect("removing everything leaves a forest")
    }

    pub fn total_edges(&self) -> u64 {
        self.crossing(self.full(), self.full()) / 2
    }
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        self.parent[x] = r;
        r
    }

    /// False when x and y were already joined.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (a, b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        self.parent[a] = b;
        true
    }
}

/// Checks a model against the definition without library help.
pub fn model_is_valid(g: &WeightedMultigraph, x: &VertexSet, y: &VertexSet, c: u32) -> bool {
    let small = Small::new(g);
    if !x.iter().chain(y).all(|v| g.contains(*v)) || !x.is_disjoint(y) {
        return false;
    }
    let (mx, my) = (small.mask_of(x), small.mask_of(y));
    small.connected(mx) && small.connected(my) && small.crossing(mx, my) >= u64::from(c)
}

pub fn int(n: i64) -> Weight {
    Weight::from_integer(n.into())
}

/// Random weight: an integer in 1..=10, or sometimes a fraction with
/// denominator up to 4.
pub fn random_weight(rng: &mut ChaCha8Rng) -> Weight {
    let num: i64 = rng.gen_range(1..=10);
    if rng.gen_bool(0.3) {
        Weight::new(num.into(), rng.gen_range(1..=4i64).into())
    } else {
        int(num)
    }
}

/// Random graph on 1..=n: a random spanning tree when `connected`, plus each
/// other pair with probability p; multiplicities uniform in 1..=max_mult.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, max_mult: u32, connected: bool) -> WeightedMultigraph {
    let mut g = WeightedMultigraph::new();
    for i in 1..=n as u32 {
        g.add_vertex(VertexId(i), random_weight(rng)).unwrap();
    }
    if connected {
        for i in 2..=n as u32 {
            let parent = rng.gen_range(1..i);
            g.add_edge(VertexId(i), VertexId(parent), rng.gen_range(1..=max_mult)).unwrap();
        }
    }
    for i in 1..=n as u32 {
        for j in i + 1..=n as u32 {
            let (a, b) = (VertexId(i), VertexId(j));
            if g.multiplicity(a, b) == 0 && rng.gen_bool(p) {
                g.add_edge(a, b, rng.gen_range(1..=max_mult)).unwrap();
            }
        }
    }
    g
}
