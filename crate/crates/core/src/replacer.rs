//! Shrinking a large outgrowth to a fixed gadget without changing the optimum.
//!
//! For an outgrowth (K, u, v) let T_j be a cheapest T ⊆ V(K) such that
//! K^{(u,v)} plus j parallel u–v edges, minus T, has no θ_c-model, and let
//! w_j be its weight. The gadget replacing K is the path u, x_1, …, x_{c−1}, v
//! with additional edges x_i–u for i ≥ 2, where x_i weighs w_i. Every cover of
//! the new graph lifts to a cover of the old one that is no heavier.

use num_traits::Zero;

use crate::detect::{is_theta_free, max_separating_theta};
use crate::error::{Error, Result};
use crate::exact::{anchored_cover, ExactOptions};
use crate::multigraph::{VertexId, VertexSet, WeightedMultigraph};
use crate::structure::Outgrowth;
use crate::Weight;

/// Everything needed to redo a replacement and lift covers through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementRecord {
    pub c: u32,
    pub u: VertexId,
    pub v: VertexId,
    /// V(K).
    pub removed: VertexSet,
    /// x_1, …, x_{c−1}.
    pub gadget: Vec<VertexId>,
    /// w_1, …, w_{c−1}.
    pub gadget_weights: Vec<Weight>,
    /// T_0, …, T_{c−1}.
    pub separators: Vec<VertexSet>,
    /// w_0, …, w_{c−1}.
    pub separator_weights: Vec<Weight>,
}

impl ReplacementRecord {
    /// Gadget edges: u–x_1, x_i–x_{i+1}, x_{c−1}–v and x_i–u for i ≥ 2.
    pub fn gadget_edges(&self) -> Vec<(VertexId, VertexId)> {
        let x = &self.gadget;
        let Some((&first, &last)) = x.first().zip(x.last()) else {
            return Vec::new();
        };
        let mut edges = vec![(self.u, first)];
        edges.extend(x.windows(2).map(|w| (w[0], w[1])));
        edges.push((last, self.v));
        edges.extend(x.iter().skip(1).map(|&xi| (xi, self.u)));
        edges
    }

    /// Rebuilds the replaced graph from the graph the record was made for.
    pub fn apply(&self, g: &WeightedMultigraph) -> Result<WeightedMultigraph> {
        for &x in self.removed.iter().chain([&self.u, &self.v]) {
            if !g.contains(x) {
                return Err(Error::InconsistentTrace(format!(
                    "replacement refers to missing vertex {x}"
                )));
            }
        }
        let mut out = g.delete_vertices(&self.removed);
        for (&x, w) in self.gadget.iter().zip(&self.gadget_weights) {
            out.add_vertex(x, w.clone()).map_err(|_| {
                Error::InconsistentTrace(format!("gadget vertex {x} already exists"))
            })?;
        }
        for (a, b) in self.gadget_edges() {
            out.add_edge(a, b, 1)?;
        }
        Ok(out)
    }

    fn gadget_set(&self) -> VertexSet {
        self.gadget.iter().copied().collect()
    }
}

/// Replaces the outgrowth `og` of `g` (of size at least c) by the gadget.
pub fn replace_outgrowth(
    g: &WeightedMultigraph,
    og: &Outgrowth,
    c: u32,
    opts: ExactOptions,
) -> Result<(WeightedMultigraph, ReplacementRecord)> {
    og.validate(g, c)?;
    if og.size() < c as usize {
        return Err(Error::Precondition(format!(
            "outgrowth of size {} is smaller than c = {c}",
            og.size()
        )));
    }
    let mut separators = Vec::new();
    let mut separator_weights: Vec<Weight> = Vec::new();
    for j in 0..c {
        let (t, w) = anchored_cover(g, og, j, c, opts)?;
        if separator_weights.last().is_some_and(|prev| *prev > w) {
            return Err(Error::Precondition(format!(
                "separator weights decrease at index {j}"
            )));
        }
        separators.push(t);
        separator_weights.push(w);
    }
    debug_assert!(separator_weights[0].is_zero());

    let mut next = g.next_id().0;
    let gadget: Vec<VertexId> = (1..c)
        .map(|_| {
            next += 1;
            VertexId(next - 1)
        })
        .collect();
    let rec = ReplacementRecord {
        c,
        u: og.u,
        v: og.v,
        removed: og.component.clone(),
        gadget,
        gadget_weights: separator_weights[1..].to_vec(),
        separators,
        separator_weights,
    };
    let replaced = rec.apply(g)?;
    Ok((replaced, rec))
}

/// Drops vertices from a cover of `g` while it stays a cover, heaviest first
/// and ties by identifier.
pub fn minimalize(g: &WeightedMultigraph, c: u32, cover: &VertexSet) -> Result<VertexSet> {
    let mut order: Vec<VertexId> = cover.iter().copied().collect();
    order.sort_by(|a, b| g.weight(*b).cmp(g.weight(*a)).then(a.cmp(b)));
    let mut s = cover.clone();
    for x in order {
        s.remove(&x);
        if !is_theta_free(&g.delete_vertices(&s), c)? {
            s.insert(x);
        }
    }
    Ok(s)
}

/// Lifts a cover of the replaced graph to a cover of `g` that is no heavier.
///
/// The cover is first made inclusion-minimal. If it then contains an anchor
/// the gadget vertices are simply dropped; otherwise the gadget is swapped
/// for T_ℓ, where ℓ is the largest order of a model separating u from v in
/// what remains outside the gadget.
pub fn lift_solution(
    g: &WeightedMultigraph,
    rec: &ReplacementRecord,
    cover: &VertexSet,
) -> Result<VertexSet> {
    let replaced = rec.apply(g)?;
    if let Some(&x) = cover.iter().find(|&&x| !replaced.contains(x)) {
        return Err(Error::UnknownVertex(x));
    }
    if !is_theta_free(&replaced.delete_vertices(cover), rec.c)? {
        return Err(Error::NotACover("solution does not cover the replaced graph".into()));
    }
    let s = minimalize(&replaced, rec.c, cover)?;
    let gadget = rec.gadget_set();
    let outside: VertexSet = s.difference(&gadget).copied().collect();
    let lifted = if s.contains(&rec.u) || s.contains(&rec.v) {
        outside
    } else {
        let mut gone = s.clone();
        gone.extend(gadget.iter().copied());
        let rest = replaced.delete_vertices(&gone);
        let l = max_separating_theta(&rest, rec.u, rec.v, rec.c)?;
        let mut lifted = outside;
        lifted.extend(rec.separators[l as usize].iter().copied());
        lifted
    };
    if !is_theta_free(&g.delete_vertices(&lifted), rec.c)? {
        return Err(Error::InconsistentTrace("lifted set is not a cover".into()));
    }
    if g.weight_of(&lifted) > replaced.weight_of(cover) {
        return Err(Error::InconsistentTrace("lifted set is heavier than its source".into()));
    }
    Ok(lifted)
}
