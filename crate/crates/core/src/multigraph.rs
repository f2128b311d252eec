//! Vertex-weighted loopless multigraphs.
//!
//! [`WeightedMultigraph`] is the value type every other module works on. Vertex
//! identifiers are stable: deleting or contracting never renames a surviving
//! vertex, and freshly created vertices (replacement gadgets, contracted
//! clusters) always receive an identifier larger than any identifier the graph
//! has ever held.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Weight;

/// Stable vertex identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

/// A loopless multigraph with exact non-negative rational vertex weights.
#[derive(Debug, Clone, Default)]
pub struct WeightedMultigraph {
    weights: BTreeMap<VertexId, Weight>,
    adj: BTreeMap<VertexId, BTreeMap<VertexId, u32>>,
    next_id: u32,
}

impl PartialEq for WeightedMultigraph {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && self.adj == other.adj
    }
}

impl Eq for WeightedMultigraph {}

impl WeightedMultigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: VertexId, weight: Weight) -> Result<()> {
        if self.weights.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        if weight.is_negative() {
            return Err(Error::InvalidWeight {
                vertex: id,
                reason: "weights must be non-negative".into(),
            });
        }
        self.weights.insert(id, weight);
        self.adj.insert(id, BTreeMap::new());
        self.next_id = self.next_id.max(id.0 + 1);
        Ok(())
    }

    /// Adds a vertex whose identifier has never been used by this graph.
    pub fn add_fresh_vertex(&mut self, weight: Weight) -> VertexId {
        let id = VertexId(self.next_id);
        self.add_vertex(id, weight)
            .expect("fresh identifiers are unused and callers pass non-negative weights");
        id
    }

    /// Adds `multiplicity` parallel edges between `u` and `v`.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, multiplicity: u32) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.check(u)?;
        self.check(v)?;
        if multiplicity == 0 {
            return Ok(());
        }
        *self.adj.get_mut(&u).unwrap().entry(v).or_insert(0) += multiplicity;
        *self.adj.get_mut(&v).unwrap().entry(u).or_insert(0) += multiplicity;
        Ok(())
    }

    pub fn remove_edges_between(&mut self, u: VertexId, v: VertexId) {
        if let Some(nbrs) = self.adj.get_mut(&u) {
            nbrs.remove(&v);
        }
        if let Some(nbrs) = self.adj.get_mut(&v) {
            nbrs.remove(&u);
        }
    }

    pub fn set_weight(&mut self, v: VertexId, weight: Weight) -> Result<()> {
        self.check(v)?;
        if weight.is_negative() {
            return Err(Error::InvalidWeight {
                vertex: v,
                reason: "weights must be non-negative".into(),
            });
        }
        self.weights.insert(v, weight);
        Ok(())
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if self.weights.contains_key(&v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.weights.contains_key(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Vertices in increasing identifier order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.weights.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.weights.keys().copied().collect()
    }

    /// Smallest identifier that is guaranteed never to have been used.
    pub fn next_id(&self) -> VertexId {
        VertexId(self.next_id)
    }

    /// Weight of `v`.
    ///
    /// Panics if `v` is not a vertex of the graph.
    pub fn weight(&self, v: VertexId) -> &Weight {
        &self.weights[&v]
    }

    pub fn weights(&self) -> &BTreeMap<VertexId, Weight> {
        &self.weights
    }

    pub fn weight_of<'a>(&self, set: impl IntoIterator<Item = &'a VertexId>) -> Weight {
        set.into_iter()
            .filter_map(|v| self.weights.get(v))
            .fold(Weight::zero(), |acc, w| acc + w)
    }

    pub fn total_weight(&self) -> Weight {
        self.weights.values().fold(Weight::zero(), |acc, w| acc + w)
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        self.adj
            .get(&u)
            .and_then(|n| n.get(&v))
            .copied()
            .unwrap_or(0)
    }

    /// Neighbours of `v` with the multiplicity of the connecting edge.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.adj
            .get(&v)
            .into_iter()
            .flat_map(|n| n.iter().map(|(&u, &m)| (u, m)))
    }

    pub fn vertex_degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |n| n.len())
    }

    /// Sum of the multiplicities of the edges incident to `v`.
    pub fn edge_degree(&self, v: VertexId) -> Result<u64> {
        let nbrs = self.adj.get(&v).ok_or(Error::UnknownVertex(v))?;
        Ok(nbrs.values().map(|&m| u64::from(m)).sum())
    }

    /// Distinct vertex pairs `(u, v, multiplicity)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.adj.iter().flat_map(|(&u, nbrs)| {
            nbrs.iter()
                .filter(move |(&v, _)| u < v)
                .map(move |(&v, &m)| (u, v, m))
        })
    }

    /// Number of distinct adjacent pairs.
    pub fn pair_count(&self) -> usize {
        self.edges().count()
    }

    /// Total edge multiplicity, i.e. |E(G)| counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges().map(|(_, _, m)| u64::from(m)).sum()
    }

    /// μ(G); zero for edgeless graphs.
    pub fn max_multiplicity(&self) -> u32 {
        self.edges().map(|(_, _, m)| m).max().unwrap_or(0)
    }

    /// δ(G); `None` for the empty graph.
    pub fn min_edge_degree(&self) -> Option<u64> {
        self.adj
            .values()
            .map(|n| n.values().map(|&m| u64::from(m)).sum())
            .min()
    }

    pub fn induced(&self, keep: &VertexSet) -> Self {
        let weights = self
            .weights
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, w)| (v, w.clone()))
            .collect();
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, nbrs)| {
                let nbrs = nbrs
                    .iter()
                    .filter(|(u, _)| keep.contains(u))
                    .map(|(&u, &m)| (u, m))
                    .collect();
                (v, nbrs)
            })
            .collect();
        WeightedMultigraph {
            weights,
            adj,
            next_id: self.next_id,
        }
    }

    pub fn delete_vertices<'a>(&self, remove: impl IntoIterator<Item = &'a VertexId>) -> Self {
        let remove: VertexSet = remove.into_iter().copied().collect();
        let keep = self
            .weights
            .keys()
            .filter(|v| !remove.contains(v))
            .copied()
            .collect();
        self.induced(&keep)
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.reach(v, |_| true);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    fn reach(&self, start: VertexId, allowed: impl Fn(VertexId) -> bool) -> VertexSet {
        let mut comp = VertexSet::new();
        let mut queue = VecDeque::from([start]);
        comp.insert(start);
        while let Some(x) = queue.pop_front() {
            for (y, _) in self.neighbors(x) {
                if allowed(y) && comp.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        comp
    }

    /// Whether `set` is non-empty and induces a connected subgraph.
    pub fn is_connected_set(&self, set: &VertexSet) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        if !self.contains(start) {
            return false;
        }
        self.reach(start, |y| set.contains(&y)).len() == set.len()
    }

    /// Total multiplicity of edges with exactly one endpoint in `set`.
    pub fn ext_edges(&self, set: &VertexSet) -> u64 {
        set.iter()
            .flat_map(|&v| self.neighbors(v))
            .filter(|(u, _)| !set.contains(u))
            .map(|(_, m)| u64::from(m))
            .sum()
    }

    /// Total multiplicity of edges between two disjoint vertex sets.
    pub fn crossing_edges(&self, x: &VertexSet, y: &VertexSet) -> u64 {
        x.iter()
            .flat_map(|&v| self.neighbors(v))
            .filter(|(u, _)| y.contains(u))
            .map(|(_, m)| u64::from(m))
            .sum()
    }

    /// Blocks: isolated vertices, bridges and biconnected components.
    ///
    /// Every edge lies in exactly one block and two blocks share at most one
    /// vertex (a cut vertex).
    pub fn blocks(&self) -> Vec<VertexSet> {
        let ids: Vec<VertexId> = self.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj: Vec<Vec<usize>> = ids
            .iter()
            .map(|&v| self.neighbors(v).map(|(u, _)| index[&u]).collect())
            .collect();
        block_partition(&adj)
            .into_iter()
            .map(|b| b.into_iter().map(|i| ids[i]).collect())
            .collect()
    }

    pub fn cut_vertices(&self) -> VertexSet {
        let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
        for block in self.blocks() {
            for v in block {
                *count.entry(v).or_default() += 1;
            }
        }
        count
            .into_iter()
            .filter(|&(_, n)| n > 1)
            .map(|(v, _)| v)
            .collect()
    }

    /// G/𝒞: restricts to ∪𝒞 and contracts every cluster to a single fresh
    /// vertex. Parallel edges between clusters are summed, loops are dropped.
    ///
    /// The contracted vertex carries the total weight of its cluster. The
    /// returned map sends every contracted vertex back to its cluster.
    pub fn contract_clusters(
        &self,
        clusters: &ClusterCollection,
    ) -> Result<(WeightedMultigraph, BTreeMap<VertexId, VertexSet>)> {
        clusters.validate(self)?;
        let mut out = WeightedMultigraph {
            next_id: self.next_id,
            ..Default::default()
        };
        let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut provenance = BTreeMap::new();
        for cluster in clusters.iter() {
            let id = out.add_fresh_vertex(self.weight_of(cluster));
            for &v in cluster {
                owner.insert(v, id);
            }
            provenance.insert(id, cluster.clone());
        }
        for (u, v, m) in self.edges() {
            if let (Some(&a), Some(&b)) = (owner.get(&u), owner.get(&v)) {
                if a != b {
                    out.add_edge(a, b, m)?;
                }
            }
        }
        Ok((out, provenance))
    }
}

/// Blocks of a simple graph given by adjacency lists (duplicates ignored).
pub(crate) fn block_partition(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        if adj[root].is_empty() {
            disc[root] = time;
            time += 1;
            blocks.push(vec![root]);
            continue;
        }
        // Iterative DFS: frames of (vertex, parent, next neighbour position).
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push(root);
        let mut frames = vec![(root, UNSEEN, 0usize)];
        while let Some(&mut (v, parent, ref mut pos)) = frames.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push(w);
                    frames.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut block = vec![parent];
                loop {
                    let x = stack.pop().expect("dfs stack holds the subtree of v");
                    block.push(x);
                    if x == v {
                        break;
                    }
                }
                block.sort_unstable();
                blocks.push(block);
            }
        }
        stack.clear();
    }
    blocks
}

/// Pairwise-disjoint, non-empty vertex sets that are each connected in the
/// graph they were validated against.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClusterCollection {
    clusters: Vec<VertexSet>,
}

impl ClusterCollection {
    pub fn new(g: &WeightedMultigraph, clusters: Vec<VertexSet>) -> Result<Self> {
        let cc = ClusterCollection { clusters };
        cc.validate(g)?;
        Ok(cc)
    }

    /// One singleton cluster per vertex of `g`.
    pub fn singletons(g: &WeightedMultigraph) -> Self {
        ClusterCollection {
            clusters: g.vertices().map(|v| VertexSet::from([v])).collect(),
        }
    }

    pub fn validate(&self, g: &WeightedMultigraph) -> Result<()> {
        let mut seen = VertexSet::new();
        for (i, cluster) in self.clusters.iter().enumerate() {
            if cluster.is_empty() {
                return Err(Error::InvalidClusters(format!("cluster {i} is empty")));
            }
            for &v in cluster {
                if !g.contains(v) {
                    return Err(Error::UnknownVertex(v));
                }
                if !seen.insert(v) {
                    return Err(Error::InvalidClusters(format!(
                        "vertex {v} lies in more than one cluster"
                    )));
                }
            }
            if !g.is_connected_set(cluster) {
                return Err(Error::InvalidClusters(format!(
                    "cluster {i} is not connected"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.clusters.iter()
    }

    pub fn clusters(&self) -> &[VertexSet] {
        &self.clusters
    }

    /// Size of the largest cluster.
    pub fn capacity(&self) -> usize {
        self.clusters.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    /// ∪𝒞.
    pub fn union(&self) -> VertexSet {
        self.clusters.iter().flatten().copied().collect()
    }

    pub fn cluster_of(&self, v: VertexId) -> Option<&VertexSet> {
        self.clusters.iter().find(|c| c.contains(&v))
    }
}
