//! Thin weight layers peeled off in each round.
//!
//! A layer is a weight function w^o ≤ w that is tight on at least one vertex
//! and such that every c-bond cover S pays w^o(S) ≥ w^o(V)/α. Two kinds are
//! built: a uniform layer on a θ_c-model (every cover meets the model) and a
//! layer proportional to the cluster weighting w_𝒞(v) = |ext(C)|/|C|.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::detect::ThetaModel;
use crate::error::{Error, Result};
use crate::multigraph::{ClusterCollection, VertexId, VertexSet, WeightedMultigraph};
use crate::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinLayer {
    /// w^o; vertices not listed have layer weight zero.
    pub layer_weight: BTreeMap<VertexId, Weight>,
    pub alpha: Weight,
    /// Vertices whose residual weight becomes zero.
    pub deleted: VertexSet,
}

impl ThinLayer {
    pub fn weight_of<'a>(&self, set: impl IntoIterator<Item = &'a VertexId>) -> Weight {
        set.into_iter()
            .filter_map(|v| self.layer_weight.get(v))
            .fold(Weight::zero(), |acc, w| acc + w)
    }

    pub fn total(&self) -> Weight {
        self.layer_weight.values().fold(Weight::zero(), |acc, w| acc + w)
    }

    /// Checks 0 ≤ w^o ≤ w, tightness somewhere, and that `deleted` is exactly
    /// the set of tight vertices.
    pub fn check_bounds(&self, g: &WeightedMultigraph) -> Result<()> {
        let mut tight = VertexSet::new();
        for (&v, lw) in &self.layer_weight {
            if !g.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
            let w = g.weight(v);
            if *lw < Weight::zero() || lw > w {
                return Err(Error::InvalidWeight {
                    vertex: v,
                    reason: "layer weight outside [0, w(v)]".into(),
                });
            }
        }
        for v in g.vertices() {
            let lw = self.layer_weight.get(&v).cloned().unwrap_or_else(Weight::zero);
            if lw == *g.weight(v) {
                tight.insert(v);
            }
        }
        if tight.is_empty() {
            return Err(Error::Precondition("layer is not tight on any vertex".into()));
        }
        if tight != self.deleted {
            return Err(Error::Precondition("deleted set differs from the tight vertices".into()));
        }
        Ok(())
    }
}

/// w_𝒞(v) = |ext(C)| / |C| for v ∈ C, with ext taken inside G[∪𝒞].
pub fn cluster_weighting(g: &WeightedMultigraph, cc: &ClusterCollection) -> Result<BTreeMap<VertexId, Weight>> {
    cc.validate(g)?;
    let inner = g.induced(&cc.union());
    let mut out = BTreeMap::new();
    for cluster in cc.iter() {
        let w = Weight::new(inner.ext_edges(cluster).into(), cluster.len().into());
        for &v in cluster {
            out.insert(v, w.clone());
        }
    }
    Ok(out)
}

fn argmin_layer(
    g: &WeightedMultigraph,
    layer_weight: BTreeMap<VertexId, Weight>,
    alpha: Weight,
) -> ThinLayer {
    let deleted = layer_weight
        .iter()
        .filter(|(v, lw)| *lw == g.weight(**v))
        .map(|(&v, _)| v)
        .collect();
    ThinLayer { layer_weight, alpha, deleted }
}

/// Uniform layer of height ε = min w on the model, with α = |M|.
pub fn model_layer(g: &WeightedMultigraph, m: &ThetaModel) -> Result<ThinLayer> {
    m.validate(g)?;
    let vertices = m.vertices();
    let eps = vertices
        .iter()
        .map(|&v| g.weight(v))
        .min()
        .expect("models are non-empty")
        .clone();
    if eps.is_zero() {
        let v = *vertices.iter().find(|&&v| g.weight(v).is_zero()).unwrap();
        return Err(Error::InvalidWeight {
            vertex: v,
            reason: "zero-weight vertices must be removed before building a layer".into(),
        });
    }
    let layer = vertices.iter().map(|&v| (v, eps.clone())).collect();
    Ok(argmin_layer(g, layer, Weight::from_integer(vertices.len().into())))
}

/// Layer ε·w_𝒞 with ε = min w(v)/w_𝒞(v) over ∪𝒞 and α = 4·capacity.
///
/// Requires δ(G/𝒞) ≥ 8c, which makes every cover pay at least a 1/(4·capacity)
/// share of the cluster weighting.
pub fn cluster_layer(g: &WeightedMultigraph, cc: &ClusterCollection, c: u32) -> Result<ThinLayer> {
    let (q, _) = g.contract_clusters(cc)?;
    let delta = q.min_edge_degree().unwrap_or(0);
    if delta < 8 * u64::from(c) {
        return Err(Error::Precondition(format!(
            "contracted minimum edge-degree {delta} is below 8c = {}",
            8 * c
        )));
    }
    let wc = cluster_weighting(g, cc)?;
    let mut eps: Option<Weight> = None;
    for (&v, share) in &wc {
        let w = g.weight(v);
        if w.is_zero() {
            return Err(Error::InvalidWeight {
                vertex: v,
                reason: "zero-weight vertices must be removed before building a layer".into(),
            });
        }
        let ratio = w / share;
        if eps.as_ref().is_none_or(|e| ratio < *e) {
            eps = Some(ratio);
        }
    }
    let eps = eps.expect("cluster collections with positive minimum degree are non-empty");
    let layer = wc.into_iter().map(|(v, share)| (v, &eps * share)).collect();
    let alpha = Weight::from_integer((4 * cc.capacity()).into());
    Ok(argmin_layer(g, layer, alpha))
}

/// The layer equal to w on zero-weight vertices, with α = 1.
pub fn zero_layer(g: &WeightedMultigraph) -> ThinLayer {
    let deleted: VertexSet = g.vertices().filter(|&v| g.weight(v).is_zero()).collect();
    let layer_weight = deleted.iter().map(|&v| (v, Weight::zero())).collect();
    ThinLayer {
        layer_weight,
        alpha: Weight::one(),
        deleted,
    }
}

/// w(v) = edeg(v) for every vertex.
pub fn edge_degree_weighting(g: &WeightedMultigraph) -> BTreeMap<VertexId, u64> {
    g.vertices()
        .map(|v| (v, g.edge_degree(v).expect("listed vertices exist")))
        .collect()
}

/// G with weights w − w^o, dropping the vertices whose residual is zero.
pub fn subtract_layer(g: &WeightedMultigraph, layer: &ThinLayer) -> Result<WeightedMultigraph> {
    let mut out = g.clone();
    let mut zero = VertexSet::new();
    for (&v, lw) in &layer.layer_weight {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let residual = g.weight(v) - lw;
        if residual < Weight::zero() {
            return Err(Error::InvalidWeight {
                vertex: v,
                reason: "layer weight exceeds the vertex weight".into(),
            });
        }
        if residual.is_zero() {
            zero.insert(v);
        }
        out.set_weight(v, residual)?;
    }
    if zero != layer.deleted {
        return Err(Error::InconsistentTrace(
            "layer deletes a different set than it zeroes".into(),
        ));
    }
    Ok(out.delete_vertices(&zero))
}
