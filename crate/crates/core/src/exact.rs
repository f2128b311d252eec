//! Exact minimum-weight c-bond covers for desk-scale instances.
//!
//! The search is a branch and bound over minimal θ_c-models: any cover must
//! contain a vertex of every model, so each node finds an inclusion-minimal
//! model of the remaining graph and branches on which of its vertices is the
//! first one deleted. Vertices tried in earlier sibling branches are marked as
//! kept, which makes every inclusion-minimal cover reachable exactly once.

use num_traits::Zero;

use crate::dense::{bit, bits, Dense, Mask};
use crate::error::{Error, Result};
use crate::multigraph::{VertexSet, WeightedMultigraph};
use crate::structure::Outgrowth;
use crate::Weight;

/// Search limits for the exact oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Maximum number of branch nodes before giving up with
    /// [`Error::BudgetExceeded`].
    pub budget: u64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { budget: 10_000_000 }
    }
}

/// A minimum-weight c-bond cover of `g` and its weight.
///
/// Among the optimal covers the search reaches, the lexicographically smallest
/// identifier sequence is returned.
pub fn exact_cover(g: &WeightedMultigraph, c: u32) -> Result<(VertexSet, Weight)> {
    exact_cover_with(g, c, ExactOptions::default())
}

pub fn exact_cover_with(
    g: &WeightedMultigraph,
    c: u32,
    opts: ExactOptions,
) -> Result<(VertexSet, Weight)> {
    let all = g.vertex_set();
    Ok(exact_cover_restricted(g, c, &all, opts)?.expect("deleting every vertex is always a cover"))
}

/// Like [`exact_cover`], but only vertices in `allowed` may be deleted.
/// Returns `None` when no such cover exists.
pub fn exact_cover_restricted(
    g: &WeightedMultigraph,
    c: u32,
    allowed: &VertexSet,
    opts: ExactOptions,
) -> Result<Option<(VertexSet, Weight)>> {
    if c == 0 {
        return Err(Error::InvalidParams("the order c must be at least 1".into()));
    }
    let mut nodes = 0;
    let mut cover = VertexSet::new();
    let mut total = Weight::zero();
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let dense = Dense::new(g, &comp)?;
        let weights: Vec<Weight> = dense.ids.iter().map(|&v| g.weight(v).clone()).collect();
        let mut bb = BranchAndBound {
            dense: &dense,
            weights: &weights,
            c: u64::from(c),
            nodes: &mut nodes,
            budget: opts.budget,
            best: None,
        };
        let kept = dense.full() & !dense.mask_of(allowed);
        bb.search(dense.full(), kept, 0, Weight::zero())?;
        match bb.best {
            Some((mask, w)) => {
                cover.extend(dense.set_of(mask));
                total += w;
            }
            None => return Ok(None),
        }
    }
    Ok(Some((cover, total)))
}

struct BranchAndBound<'a> {
    dense: &'a Dense,
    weights: &'a [Weight],
    c: u64,
    nodes: &'a mut u64,
    budget: u64,
    best: Option<(Mask, Weight)>,
}

impl BranchAndBound<'_> {
    fn search(&mut self, alive: Mask, kept: Mask, chosen: Mask, weight: Weight) -> Result<()> {
        *self.nodes += 1;
        if *self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let Some(model) = minimal_model(self.dense, alive, self.c) else {
            let better = match &self.best {
                None => true,
                Some((mask, w)) => weight < *w || (weight == *w && lex_less(chosen, *mask)),
            };
            if better {
                self.best = Some((chosen, weight));
            }
            return Ok(());
        };
        let candidates = model & !kept;
        if candidates == 0 {
            return Ok(());
        }
        if let Some((_, best)) = &self.best {
            let cheapest = bits(candidates)
                .map(|i| &self.weights[i])
                .min()
                .expect("candidates are non-empty");
            if &weight + cheapest > *best {
                return Ok(());
            }
        }
        let mut kept = kept;
        for v in bits(candidates) {
            let next = &weight + &self.weights[v];
            let prune = matches!(&self.best, Some((_, best)) if next > *best);
            if !prune {
                self.search(alive & !bit(v), kept, chosen | bit(v), next)?;
            }
            kept |= bit(v);
        }
        Ok(())
    }
}

/// Vertex set of an inclusion-minimal θ_c-model of `G[alive]`.
fn minimal_model(dense: &Dense, alive: Mask, c: u64) -> Option<Mask> {
    let (a, b) = dense.find_bond(alive, c)?;
    let mut model = a | b;
    'outer: loop {
        for v in bits(model) {
            if let Some((a, b)) = dense.find_bond(model & !bit(v), c) {
                model = a | b;
                continue 'outer;
            }
        }
        return Some(model);
    }
}

/// Lexicographic order on increasing index sequences.
fn lex_less(a: Mask, b: Mask) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let first = diff.trailing_zeros();
    // The set holding `first` has the smaller next element, unless the other
    // set has already ended and is therefore a prefix.
    if a & (1 << first) != 0 {
        b >> first != 0
    } else {
        a >> first == 0
    }
}

/// Every inclusion-minimal c-bond cover of `g`.
pub fn enumerate_minimal_covers(g: &WeightedMultigraph, c: u32) -> Result<Vec<VertexSet>> {
    enumerate_minimal_covers_with(g, c, ExactOptions::default())
}

pub fn enumerate_minimal_covers_with(
    g: &WeightedMultigraph,
    c: u32,
    opts: ExactOptions,
) -> Result<Vec<VertexSet>> {
    if c == 0 {
        return Err(Error::InvalidParams("the order c must be at least 1".into()));
    }
    let dense = Dense::new(g, &g.vertex_set())?;
    let mut leaves = Vec::new();
    let mut nodes = 0;
    collect_covers(&dense, u64::from(c), dense.full(), 0, &mut leaves, &mut nodes, opts.budget)?;
    let full = dense.full();
    let mut out: Vec<VertexSet> = leaves
        .into_iter()
        .filter(|&s| {
            bits(s).all(|v| dense.find_bond((full & !s) | bit(v), u64::from(c)).is_some())
        })
        .map(|s| dense.set_of(s))
        .collect();
    out.sort();
    Ok(out)
}

fn collect_covers(
    dense: &Dense,
    c: u64,
    alive: Mask,
    kept: Mask,
    out: &mut Vec<Mask>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let Some(model) = minimal_model(dense, alive, c) else {
        out.push(dense.full() & !alive);
        return Ok(());
    };
    let mut kept = kept;
    for v in bits(model & !kept) {
        collect_covers(dense, c, alive & !bit(v), kept, out, nodes, budget)?;
        kept |= bit(v);
    }
    Ok(())
}

/// Minimum-weight T ⊆ V(K) such that K^{(u,v)} − T has no θ_{i+1}-model with
/// u and v on different sides.
///
/// Built by adding c parallel u–v edges to K^{(u,v)} and solving for order
/// c + i + 1 with u and v undeletable: in that graph every θ_{c+i+1}-model
/// must separate u from v, and it gains exactly c crossing edges from the
/// added bundle.
pub fn constrained_cover(
    g: &WeightedMultigraph,
    og: &Outgrowth,
    i: u32,
    c: u32,
    opts: ExactOptions,
) -> Result<(VertexSet, Weight)> {
    if i >= c {
        return Err(Error::InvalidParams(format!("index {i} must be below c = {c}")));
    }
    let mut h = og.anchored_graph(g)?;
    h.add_edge(og.u, og.v, c)?;
    exact_cover_restricted(&h, c + i + 1, &og.component, opts)
        .map(|r| r.expect("deleting all of K leaves only the added bundle"))
}

/// Minimum-weight T ⊆ V(K) such that K^{(u,v)} plus `j` parallel u–v edges,
/// minus T, has no θ_c-model.
pub fn anchored_cover(
    g: &WeightedMultigraph,
    og: &Outgrowth,
    j: u32,
    c: u32,
    opts: ExactOptions,
) -> Result<(VertexSet, Weight)> {
    if j >= c {
        return Err(Error::InvalidParams(format!("index {j} must be below c = {c}")));
    }
    let mut h = og.anchored_graph(g)?;
    h.add_edge(og.u, og.v, j)?;
    exact_cover_restricted(&h, c, &og.component, opts)
        .map(|r| r.expect("deleting all of K leaves fewer than c edges"))
}
