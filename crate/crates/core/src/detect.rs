//! Exact detection of θ_c-models.
//!
//! A θ_c-model is a pair of disjoint connected vertex sets X and Y joined by at
//! least c edges. A graph contains one exactly when it has a bond (a minimal
//! edge cut) of size at least c, and every bond lives inside a single block,
//! so the search runs block by block over connected bipartitions.

use crate::dense::{bit, Dense};
use crate::error::{Error, Result};
use crate::multigraph::{VertexId, VertexSet, WeightedMultigraph};

/// Two disjoint connected vertex sets crossed by at least `order` edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaModel {
    pub x: VertexSet,
    pub y: VertexSet,
    pub order: u32,
}

impl ThetaModel {
    /// Builds a model and checks it against `g`.
    pub fn new(g: &WeightedMultigraph, x: VertexSet, y: VertexSet, order: u32) -> Result<Self> {
        let m = ThetaModel { x, y, order };
        m.validate(g)?;
        Ok(m)
    }

    pub fn validate(&self, g: &WeightedMultigraph) -> Result<()> {
        if self.order == 0 {
            return Err(Error::InvalidModel("order must be positive".into()));
        }
        if let Some(v) = self.vertices().into_iter().find(|&v| !g.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        if !self.x.is_disjoint(&self.y) {
            return Err(Error::InvalidModel("sides intersect".into()));
        }
        if !g.is_connected_set(&self.x) || !g.is_connected_set(&self.y) {
            return Err(Error::InvalidModel("a side is empty or disconnected".into()));
        }
        let crossing = g.crossing_edges(&self.x, &self.y);
        if crossing < u64::from(self.order) {
            return Err(Error::InvalidModel(format!(
                "{crossing} crossing edges, need {}",
                self.order
            )));
        }
        Ok(())
    }

    /// X ∪ Y.
    pub fn vertices(&self) -> VertexSet {
        self.x.union(&self.y).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.x.len() + self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.x.contains(&v) || self.y.contains(&v)
    }
}

fn check_order(c: u32) -> Result<()> {
    if c == 0 {
        Err(Error::InvalidParams("the order c must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Finds a θ_c-model of `g`, or certifies that none exists.
///
/// Components are searched in order of their smallest identifier, so the
/// result is reproducible. Fails with [`Error::TooLarge`] when a component
/// exceeds [`DENSE_LIMIT`](crate::DENSE_LIMIT) vertices.
pub fn find_theta_model(g: &WeightedMultigraph, c: u32) -> Result<Option<ThetaModel>> {
    check_order(c)?;
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let dense = Dense::new(g, &comp)?;
        let alive = dense.full();
        // More than 2c|V| edges forces a model, so the search cannot fail.
        let forced = dense.edge_count(alive) > 2 * u64::from(c) * comp.len() as u64;
        let found = dense.find_bond(alive, u64::from(c));
        debug_assert!(!forced || found.is_some());
        if let Some((a, b)) = found {
            return Ok(Some(ThetaModel {
                x: dense.set_of(a),
                y: dense.set_of(b),
                order: c,
            }));
        }
    }
    Ok(None)
}

pub fn is_theta_free(g: &WeightedMultigraph, c: u32) -> Result<bool> {
    Ok(find_theta_model(g, c)?.is_none())
}

/// Shrinks a model until no single vertex can be dropped from X ∪ Y.
pub fn minimize_model(g: &WeightedMultigraph, m: &ThetaModel) -> Result<ThetaModel> {
    m.validate(g)?;
    let mut current = m.clone();
    'outer: loop {
        let vertices = current.vertices();
        for &v in &vertices {
            let mut rest = vertices.clone();
            rest.remove(&v);
            if let Some(smaller) = find_theta_model(&g.induced(&rest), m.order)? {
                current = smaller;
                continue 'outer;
            }
        }
        return Ok(current);
    }
}

/// Extends a model to a bond: returns (X′, V ∖ X′) where X′ ⊇ X and the
/// edges leaving X′ form a minimal cut of size at least the model order.
///
/// Vertices of the model's component are absorbed one at a time into a side
/// they are adjacent to, preferring X.
pub fn model_to_bond(g: &WeightedMultigraph, m: &ThetaModel) -> Result<(VertexSet, VertexSet)> {
    m.validate(g)?;
    let start = *m.x.iter().next().expect("validated sides are non-empty");
    let component = g
        .components()
        .into_iter()
        .find(|comp| comp.contains(&start))
        .expect("model vertices belong to the graph");
    let mut x = m.x.clone();
    let mut y = m.y.clone();
    let mut pending: VertexSet = component
        .iter()
        .filter(|v| !m.contains(**v))
        .copied()
        .collect();
    while !pending.is_empty() {
        let next = pending.iter().copied().find_map(|w| {
            let mut to_x = false;
            let mut to_y = false;
            for (n, _) in g.neighbors(w) {
                to_x |= x.contains(&n);
                to_y |= y.contains(&n);
            }
            (to_x || to_y).then_some((w, to_x))
        });
        let (w, to_x) = next.expect("component vertices are reachable from the model");
        pending.remove(&w);
        if to_x {
            x.insert(w);
        } else {
            y.insert(w);
        }
    }
    let rest = g.vertices().filter(|v| !x.contains(v)).collect();
    Ok((x, rest))
}

fn check_anchors(g: &WeightedMultigraph, u: VertexId, v: VertexId) -> Result<()> {
    for w in [u, v] {
        if !g.contains(w) {
            return Err(Error::UnknownVertex(w));
        }
    }
    if u == v {
        return Err(Error::Precondition(format!(
            "separated vertices must differ, got {u} twice"
        )));
    }
    Ok(())
}

/// Largest crossing count (capped at `cap`) over models with `u` in X and
/// `v` in Y, with the witnessing X.
fn separating(g: &WeightedMultigraph, u: VertexId, v: VertexId, cap: u64) -> Result<(u64, Option<VertexSet>)> {
    let component = g
        .components()
        .into_iter()
        .find(|comp| comp.contains(&u))
        .expect("anchors are checked by the caller");
    if !component.contains(&v) {
        return Ok((0, None));
    }
    let dense = Dense::new(g, &component)?;
    let ui = dense.index_of(u).expect("u lies in its component");
    let vi = dense.index_of(v).expect("v lies in the same component");
    let (value, side) = dense.max_separating(dense.full(), ui, vi, cap);
    debug_assert!(side.is_none_or(|a| a & bit(ui) != 0));
    Ok((value, side.map(|a| dense.set_of(a))))
}

/// Finds a θ_i-model with `u` in X and `v` in Y.
pub fn find_separating_model(
    g: &WeightedMultigraph,
    u: VertexId,
    v: VertexId,
    i: u32,
) -> Result<Option<ThetaModel>> {
    check_anchors(g, u, v)?;
    check_order(i)?;
    let (value, side) = separating(g, u, v, u64::from(i))?;
    match side {
        Some(x) if value >= u64::from(i) => {
            let component = g
                .components()
                .into_iter()
                .find(|comp| comp.contains(&u))
                .expect("u belongs to g");
            let y = component.difference(&x).copied().collect();
            Ok(Some(ThetaModel { x, y, order: i }))
        }
        _ => Ok(None),
    }
}

/// The largest ℓ < c such that some θ_ℓ-model separates `u` from `v`; zero
/// when they lie in different components. Returns c − 1 if a θ_c-model
/// separating them exists.
pub fn max_separating_theta(g: &WeightedMultigraph, u: VertexId, v: VertexId, c: u32) -> Result<u32> {
    check_anchors(g, u, v)?;
    check_order(c)?;
    if c == 1 {
        return Ok(0);
    }
    let (value, _) = separating(g, u, v, u64::from(c - 1))?;
    Ok(value as u32)
}
