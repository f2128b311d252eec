use std::collections::BTreeMap;

use crate::multigraph::{VertexId, VertexSet, WeightedMultigraph};
use crate::Weight;

pub fn int(n: i64) -> Weight {
    Weight::from_integer(n.into())
}

pub fn frac(p: i64, q: i64) -> Weight {
    Weight::new(p.into(), q.into())
}

/// Vertices 1..=n with the given integer weights.
pub fn graph(weights: &[i64], edges: &[(u32, u32, u32)]) -> WeightedMultigraph {
    let mut g = WeightedMultigraph::new();
    for (i, &w) in weights.iter().enumerate() {
        g.add_vertex(VertexId(i as u32 + 1), int(w)).unwrap();
    }
    for &(u, v, m) in edges {
        g.add_edge(VertexId(u), VertexId(v), m).unwrap();
    }
    g
}

pub fn complete(n: u32, m: u32) -> WeightedMultigraph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            edges.push((u, v, m));
        }
    }
    graph(&vec![1; n as usize], &edges)
}

pub fn set(ids: &[u32]) -> VertexSet {
    ids.iter().map(|&i| VertexId(i)).collect()
}

/// Renames each contracted singleton back to its original vertex.
pub fn relabel(
    g: &WeightedMultigraph,
    provenance: &BTreeMap<VertexId, VertexSet>,
) -> WeightedMultigraph {
    let name = |v: VertexId| *provenance[&v].iter().next().unwrap();
    let mut out = WeightedMultigraph::new();
    for v in g.vertices() {
        out.add_vertex(name(v), g.weight(v).clone()).unwrap();
    }
    for (u, v, m) in g.edges() {
        out.add_edge(name(u), name(v), m).unwrap();
    }
    out
}
