//! The peeling loop and the backward reconstruction of a cover.
//!
//! Each round classifies the current graph with [`structure`]. A large
//! outgrowth is replaced by a gadget; a model or a cluster collection yields
//! a thin layer whose weight is subtracted, deleting the vertices it
//! exhausts. Once the graph has no θ_c-model the events are replayed
//! backwards: deleted vertices are added to the cover and replacements are
//! lifted.

use std::collections::BTreeMap;

use num_traits::One;

use crate::detect::{find_theta_model, is_theta_free, minimize_model};
use crate::error::{Error, Result};
use crate::exact::ExactOptions;
use crate::multigraph::{VertexId, VertexSet, WeightedMultigraph};
use crate::replacer::{lift_solution, minimalize, replace_outgrowth, ReplacementRecord};
use crate::structure::{structure, StructureOutcome, StructureParams};
use crate::weighting::{cluster_layer, model_layer, subtract_layer, zero_layer, ThinLayer};
use crate::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    pub c: u32,
    pub params: StructureParams,
    /// Prune the cover to an inclusion-minimal one while reconstructing.
    pub reverse_delete: bool,
    pub exact: ExactOptions,
}

impl SolveConfig {
    pub fn new(c: u32) -> Self {
        SolveConfig {
            c,
            params: StructureParams::for_order(c),
            reverse_delete: false,
            exact: ExactOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.c == 0 {
            return Err(Error::InvalidParams("the order c must be at least 1".into()));
        }
        self.params.validate()
    }
}

/// What produced a layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerKind {
    /// Removal of vertices that already weigh nothing.
    Zero,
    Model,
    Clusters,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeelEvent {
    Replacement(ReplacementRecord),
    Layer { kind: LayerKind, layer: ThinLayer },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelTrace {
    pub events: Vec<PeelEvent>,
    /// Vertex weights after each event.
    pub snapshots: Vec<BTreeMap<VertexId, Weight>>,
    /// Largest α over the layer events, or 1 if there are none.
    pub realized_alpha: Weight,
}

impl PeelTrace {
    pub fn count(&self, pred: impl Fn(&PeelEvent) -> bool) -> usize {
        self.events.iter().filter(|e| pred(e)).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub cover: VertexSet,
    pub weight: Weight,
    pub trace: PeelTrace,
}

impl Solution {
    pub fn realized_alpha(&self) -> &Weight {
        &self.trace.realized_alpha
    }
}

fn apply(g: &WeightedMultigraph, event: &PeelEvent) -> Result<WeightedMultigraph> {
    match event {
        PeelEvent::Replacement(rec) => rec.apply(g),
        PeelEvent::Layer { layer, .. } => subtract_layer(g, layer),
    }
}

/// Runs the peeling loop and reconstructs a c-bond cover of `g`.
pub fn solve(g: &WeightedMultigraph, cfg: &SolveConfig) -> Result<Solution> {
    cfg.validate()?;
    let c = cfg.c;
    let mut current = g.clone();
    let mut events = Vec::new();
    let mut snapshots = Vec::new();
    loop {
        let zero = zero_layer(&current);
        let event = if !zero.deleted.is_empty() {
            PeelEvent::Layer { kind: LayerKind::Zero, layer: zero }
        } else {
            match structure(&current, c, &cfg.params)? {
                StructureOutcome::ThetaFree => break,
                StructureOutcome::LargeOutgrowth(og) => {
                    let (_, rec) = replace_outgrowth(&current, &og, c, cfg.exact)?;
                    PeelEvent::Replacement(rec)
                }
                StructureOutcome::SmallModel(m) => PeelEvent::Layer {
                    kind: LayerKind::Model,
                    layer: model_layer(&current, &m)?,
                },
                StructureOutcome::Clusters(cc) => match cluster_layer(&current, &cc, c) {
                    Ok(layer) => PeelEvent::Layer { kind: LayerKind::Clusters, layer },
                    // Collections sparser than 8c carry no guarantee; peel a model instead.
                    Err(Error::Precondition(_)) => {
                        let m = find_theta_model(&current, c)?.expect("clusters imply a model");
                        PeelEvent::Layer {
                            kind: LayerKind::Model,
                            layer: model_layer(&current, &minimize_model(&current, &m)?)?,
                        }
                    }
                    Err(e) => return Err(e),
                },
            }
        };
        let next = apply(&current, &event)?;
        debug_assert!(next.vertex_count() < current.vertex_count());
        snapshots.push(next.weights().clone());
        events.push(event);
        current = next;
    }
    let realized_alpha = events
        .iter()
        .filter_map(|e| match e {
            PeelEvent::Layer { layer, .. } => Some(layer.alpha.clone()),
            PeelEvent::Replacement(_) => None,
        })
        .max()
        .unwrap_or_else(Weight::one);
    let trace = PeelTrace { events, snapshots, realized_alpha };
    let cover = reconstruct(&trace, g, cfg)?;
    let weight = g.weight_of(&cover);
    Ok(Solution { cover, weight, trace })
}

/// Replays `trace` from `g` and builds the cover backwards.
///
/// Every intermediate graph is re-derived and compared with the recorded
/// snapshots, and the final graph must have no θ_c-model.
pub fn reconstruct(trace: &PeelTrace, g: &WeightedMultigraph, cfg: &SolveConfig) -> Result<VertexSet> {
    cfg.validate()?;
    let c = cfg.c;
    if trace.snapshots.len() != trace.events.len() {
        return Err(Error::InconsistentTrace("one snapshot per event is required".into()));
    }
    let mut chain = vec![g.clone()];
    for (i, (event, snapshot)) in trace.events.iter().zip(&trace.snapshots).enumerate() {
        let prev = chain.last().expect("chain starts with g");
        let next = apply(prev, event)?;
        if next.weights() != snapshot {
            return Err(Error::InconsistentTrace(format!("event {i} does not match its snapshot")));
        }
        if next.vertex_count() >= prev.vertex_count() {
            return Err(Error::InconsistentTrace(format!("event {i} does not shrink the graph")));
        }
        chain.push(next);
    }
    if !is_theta_free(chain.last().expect("non-empty"), c)? {
        return Err(Error::InconsistentTrace("final graph still has a θ_c-model".into()));
    }

    let mut cover = VertexSet::new();
    for (event, before) in trace.events.iter().zip(&chain).rev() {
        match event {
            PeelEvent::Layer { layer, .. } => {
                cover.extend(layer.deleted.iter().copied());
                if cfg.reverse_delete {
                    cover = minimalize(before, c, &cover)?;
                }
            }
            PeelEvent::Replacement(rec) => {
                cover = lift_solution(before, rec, &cover)?;
            }
        }
    }
    if cfg.reverse_delete {
        cover = minimalize(g, c, &cover)?;
    }
    Ok(cover)
}

/// Whether `g − cover` has no θ_c-model.
pub fn verify_cover(g: &WeightedMultigraph, c: u32, cover: &VertexSet) -> Result<bool> {
    if let Some(&v) = cover.iter().find(|&&v| !g.contains(v)) {
        return Err(Error::UnknownVertex(v));
    }
    is_theta_free(&g.delete_vertices(cover), c)
}
