//! Bitmask view of a small multigraph used by the exhaustive searches.

use crate::error::{Error, Result};
use crate::multigraph::{block_partition, VertexId, VertexSet, WeightedMultigraph};

pub(crate) type Mask = u128;

/// Largest vertex count the bitmask searches accept.
pub const DENSE_LIMIT: usize = 128;

#[inline]
pub(crate) fn bit(i: usize) -> Mask {
    1 << i
}

pub(crate) fn bits(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(i)
    })
}

#[inline]
fn lowest(mask: Mask) -> usize {
    mask.trailing_zeros() as usize
}

#[derive(Debug, Clone)]
pub(crate) struct Dense {
    /// Sorted, so index order agrees with identifier order.
    pub ids: Vec<VertexId>,
    pub adj: Vec<Mask>,
    pub mult: Vec<Vec<u32>>,
}

impl Dense {
    pub fn new(g: &WeightedMultigraph, vertices: &VertexSet) -> Result<Self> {
        if vertices.len() > DENSE_LIMIT {
            return Err(Error::TooLarge {
                size: vertices.len(),
                limit: DENSE_LIMIT,
            });
        }
        let ids: Vec<VertexId> = vertices.iter().copied().collect();
        let n = ids.len();
        let mut adj = vec![0; n];
        let mut mult = vec![vec![0; n]; n];
        for (i, &v) in ids.iter().enumerate() {
            if !g.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
            for (u, m) in g.neighbors(v) {
                if let Ok(j) = ids.binary_search(&u) {
                    adj[i] |= bit(j);
                    mult[i][j] = m;
                }
            }
        }
        Ok(Dense { ids, adj, mult })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn full(&self) -> Mask {
        if self.len() == DENSE_LIMIT {
            Mask::MAX
        } else {
            bit(self.len()) - 1
        }
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub fn mask_of<'a>(&self, set: impl IntoIterator<Item = &'a VertexId>) -> Mask {
        set.into_iter()
            .filter_map(|&v| self.index_of(v))
            .fold(0, |m, i| m | bit(i))
    }

    pub fn set_of(&self, mask: Mask) -> VertexSet {
        bits(mask).map(|i| self.ids[i]).collect()
    }

    pub fn reach(&self, start: usize, within: Mask) -> Mask {
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for i in bits(frontier) {
                next |= self.adj[i];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn components(&self, alive: Mask) -> Vec<Mask> {
        let mut rest = alive;
        let mut out = Vec::new();
        while rest != 0 {
            let comp = self.reach(lowest(rest), rest);
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    /// Total multiplicity of edges between `v` and the vertices of `set`.
    #[inline]
    pub fn mult_into(&self, v: usize, set: Mask) -> u64 {
        bits(self.adj[v] & set)
            .map(|j| u64::from(self.mult[v][j]))
            .sum()
    }

    pub fn cut(&self, a: Mask, b: Mask) -> u64 {
        bits(a).map(|i| self.mult_into(i, b)).sum()
    }

    pub fn edge_count(&self, alive: Mask) -> u64 {
        self.cut(alive, alive) / 2
    }

    pub fn blocks(&self, alive: Mask) -> Vec<Mask> {
        let idx: Vec<usize> = bits(alive).collect();
        let local: Vec<Vec<usize>> = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.adj[i] & bit(j) != 0)
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        block_partition(&local)
            .into_iter()
            .map(|b| b.into_iter().fold(0, |m, k| m | bit(idx[k])))
            .collect()
    }

    /// A partition (A, B) of a block of `G[alive]` into connected sides with
    /// at least `c` crossing edges, if `G[alive]` has one.
    pub fn find_bond(&self, alive: Mask, c: u64) -> Option<(Mask, Mask)> {
        for i in bits(alive) {
            for j in bits(self.adj[i] & alive) {
                if j > i && u64::from(self.mult[i][j]) >= c {
                    return Some((bit(i), bit(j)));
                }
            }
        }
        for comp in self.components(alive) {
            if comp.count_ones() < 2 {
                continue;
            }
            for block in self.blocks(comp) {
                if block.count_ones() < 2 {
                    continue;
                }
                let search = Search::new(self, block);
                let root = lowest(block);
                let mut found = None;
                search.run(root, 0, &mut |a, cut| {
                    if cut >= c {
                        found = Some((a, block & !a));
                        true
                    } else {
                        false
                    }
                });
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    /// Largest crossing count of a partition of the component of `u` in
    /// `G[alive]` into connected sides with `u` on one side and `v` on the
    /// other, capped at `cap`. Returns the side containing `u` as witness.
    pub fn max_separating(&self, alive: Mask, u: usize, v: usize, cap: u64) -> (u64, Option<Mask>) {
        let comp = self.reach(u, alive);
        if comp & bit(v) == 0 {
            return (0, None);
        }
        let mut best = (0, None);
        let search = Search::new(self, comp);
        search.run(u, bit(v), &mut |a, cut| {
            if best.1.is_none() || cut > best.0 {
                best = (cut.min(cap), Some(a));
            }
            best.0 >= cap
        });
        best
    }
}

/// Enumerates every connected set A containing a root inside `domain` whose
/// complement `domain ∖ A` is non-empty, connected and contains every
/// excluded vertex.
struct Search<'a> {
    dense: &'a Dense,
    domain: Mask,
    deg: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(dense: &'a Dense, domain: Mask) -> Self {
        let deg = (0..dense.len())
            .map(|i| {
                if domain & bit(i) != 0 {
                    dense.mult_into(i, domain)
                } else {
                    0
                }
            })
            .collect();
        Search { dense, domain, deg }
    }

    /// Calls `visit(A, cut(A))` for every qualifying A; stops as soon as
    /// `visit` returns true.
    fn run(&self, root: usize, excluded: Mask, visit: &mut dyn FnMut(Mask, u64) -> bool) -> bool {
        let a = bit(root);
        let cut = self.deg[root];
        self.rec(a, excluded, cut, visit)
    }

    fn rec(&self, a: Mask, excluded: Mask, cut: u64, visit: &mut dyn FnMut(Mask, u64) -> bool) -> bool {
        let rest = self.domain & !a;
        if rest == 0 {
            return false;
        }
        // Growing A only shrinks the complement, so excluded vertices split
        // across complement components can never be reunited.
        let comp = self.dense.reach(lowest(if excluded != 0 { excluded } else { rest }), rest);
        if excluded & !comp != 0 {
            return false;
        }
        if comp == rest && visit(a, cut) {
            return true;
        }
        let mut frontier = 0;
        for i in bits(a) {
            frontier |= self.dense.adj[i];
        }
        frontier &= self.domain & !a & !excluded;
        let mut excluded = excluded;
        for v in bits(frontier) {
            let inside = self.dense.mult_into(v, a);
            let next_cut = cut + self.deg[v] - 2 * inside;
            if self.rec(a | bit(v), excluded, next_cut, visit) {
                return true;
            }
            excluded |= bit(v);
        }
        false
    }
}
