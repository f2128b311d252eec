//! The structural decomposition driving each peeling round.
//!
//! [`structure`] inspects a graph and returns one of four outcomes: a large
//! two-terminal piece that can be shrunk (an outgrowth), a small θ_c-model,
//! a cluster collection whose contraction has large minimum edge-degree, or
//! a certificate that the graph has no θ_c-model.
//!
//! The cluster construction follows a bounded-size packing argument whose
//! guaranteed constants are far beyond desk scale, so the parameters are
//! configurable and [`structure`] falls back to a minimized model whenever the
//! construction does not produce a valid collection.

use std::collections::{BTreeMap, BTreeSet};

use crate::detect::{find_separating_model, find_theta_model, max_separating_theta, minimize_model, ThetaModel};
use crate::error::{Error, Result};
use crate::multigraph::{ClusterCollection, VertexId, VertexSet, WeightedMultigraph};

/// A component K of G − {u, v} whose neighbourhood is exactly {u, v} and
/// whose anchored graph K^{(u,v)} has no θ_c-model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Outgrowth {
    pub component: VertexSet,
    pub u: VertexId,
    pub v: VertexId,
}

impl Outgrowth {
    pub fn size(&self) -> usize {
        self.component.len()
    }

    /// K^{(u,v)}: the graph induced on K ∪ {u, v} without u–v edges.
    pub fn anchored_graph(&self, g: &WeightedMultigraph) -> Result<WeightedMultigraph> {
        let mut keep = self.component.clone();
        keep.insert(self.u);
        keep.insert(self.v);
        if let Some(&x) = keep.iter().find(|&&x| !g.contains(x)) {
            return Err(Error::UnknownVertex(x));
        }
        let mut h = g.induced(&keep);
        h.remove_edges_between(self.u, self.v);
        Ok(h)
    }

    pub fn validate(&self, g: &WeightedMultigraph, c: u32) -> Result<()> {
        let fail = |msg: &str| Err(Error::InvalidOutgrowth(msg.to_string()));
        if self.u == self.v {
            return fail("anchors must differ");
        }
        if self.component.contains(&self.u) || self.component.contains(&self.v) {
            return fail("anchors lie inside the component");
        }
        let h = self.anchored_graph(g)?;
        let rest = g.delete_vertices([&self.u, &self.v]);
        if !rest.components().contains(&self.component) {
            return fail("not a component of G − {u, v}");
        }
        let mut nbrs = VertexSet::new();
        for &x in &self.component {
            nbrs.extend(g.neighbors(x).map(|(y, _)| y).filter(|y| !self.component.contains(y)));
        }
        if nbrs != BTreeSet::from([self.u, self.v]) {
            return fail("neighbourhood is not exactly the two anchors");
        }
        if find_theta_model(&h, c)?.is_some() {
            return fail("anchored graph contains a θ_c-model");
        }
        Ok(())
    }
}

/// Every outgrowth of `g` with the given anchors, in component order.
pub fn outgrowths_at(g: &WeightedMultigraph, c: u32, u: VertexId, v: VertexId) -> Result<Vec<Outgrowth>> {
    let rest = g.delete_vertices([&u, &v]);
    let mut out = Vec::new();
    for comp in rest.components() {
        let mut touches_u = false;
        let mut touches_v = false;
        for &x in &comp {
            touches_u |= g.multiplicity(x, u) > 0;
            touches_v |= g.multiplicity(x, v) > 0;
        }
        if !(touches_u && touches_v) {
            continue;
        }
        let og = Outgrowth { component: comp, u, v };
        if find_theta_model(&og.anchored_graph(g)?, c)?.is_none() {
            out.push(og);
        }
    }
    Ok(out)
}

/// Every outgrowth whose size lies in `sizes`, scanning anchor pairs in
/// lexicographic order.
fn outgrowths(
    g: &WeightedMultigraph,
    c: u32,
    sizes: std::ops::Range<usize>,
    first_only: bool,
) -> Result<Vec<Outgrowth>> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            let rest = g.delete_vertices([&u, &v]);
            for comp in rest.components() {
                if !sizes.contains(&comp.len()) {
                    continue;
                }
                let touches = |a: VertexId| comp.iter().any(|&x| g.multiplicity(x, a) > 0);
                if !(touches(u) && touches(v)) {
                    continue;
                }
                let og = Outgrowth { component: comp, u, v };
                if find_theta_model(&og.anchored_graph(g)?, c)?.is_none() {
                    out.push(og);
                    if first_only {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The first outgrowth of size at least `min_size` in lexicographic anchor
/// order.
pub fn find_outgrowth(g: &WeightedMultigraph, c: u32, min_size: usize) -> Result<Option<Outgrowth>> {
    Ok(outgrowths(g, c, min_size.max(1)..usize::MAX, true)?.pop())
}

/// Removes the non-cut vertices of every block without a θ_c-model, until
/// every block has one.
pub fn strip_theta_free_blocks(g: &WeightedMultigraph, c: u32) -> Result<WeightedMultigraph> {
    let mut g = g.clone();
    loop {
        let cut = g.cut_vertices();
        let mut remove = VertexSet::new();
        for block in g.blocks() {
            if find_theta_model(&g.induced(&block), c)?.is_none() {
                remove.extend(block.difference(&cut).copied());
            }
        }
        if remove.is_empty() {
            return Ok(g);
        }
        g = g.delete_vertices(&remove);
    }
}

/// One outgrowth collapsed into a u–v edge bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapsedOutgrowth {
    pub outgrowth: Outgrowth,
    /// Largest order of a model of K^{(u,v)} separating u from v.
    pub multiplicity: u32,
    /// Sides of such a model covering the component of u in K^{(u,v)}; empty
    /// when the multiplicity is zero.
    pub u_side: VertexSet,
    pub v_side: VertexSet,
}

/// Undoes [`reduce_to_1_reduced`] for models and cluster collections.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expansion {
    pub rounds: Vec<Vec<CollapsedOutgrowth>>,
}

impl Expansion {
    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// Turns a model of the reduced graph into a model of the original.
    pub fn expand_model(&self, g: &WeightedMultigraph, m: &ThetaModel) -> Result<ThetaModel> {
        let mut x = m.x.clone();
        let mut y = m.y.clone();
        for round in self.rounds.iter().rev() {
            for k in round {
                let (u, v) = (k.outgrowth.u, k.outgrowth.v);
                let k_all = k.outgrowth.component.iter().copied();
                if x.contains(&u) && x.contains(&v) {
                    x.extend(k_all);
                } else if y.contains(&u) && y.contains(&v) {
                    y.extend(k_all);
                } else if k.multiplicity > 0 && x.contains(&u) && y.contains(&v) {
                    x.extend(k.u_side.iter().copied());
                    y.extend(k.v_side.iter().copied());
                } else if k.multiplicity > 0 && x.contains(&v) && y.contains(&u) {
                    x.extend(k.v_side.iter().copied());
                    y.extend(k.u_side.iter().copied());
                }
            }
        }
        ThetaModel::new(g, x, y, m.order)
    }

    /// Turns a cluster collection of the reduced graph into one of the
    /// original whose contraction is at least as dense.
    pub fn expand_clusters(&self, g: &WeightedMultigraph, cc: &ClusterCollection) -> Result<ClusterCollection> {
        let mut clusters: Vec<VertexSet> = cc.clusters().to_vec();
        for round in self.rounds.iter().rev() {
            for k in round {
                let (u, v) = (k.outgrowth.u, k.outgrowth.v);
                let cu = clusters.iter().position(|c| c.contains(&u));
                let cv = clusters.iter().position(|c| c.contains(&v));
                match (cu, cv) {
                    (Some(i), Some(j)) if i == j => {
                        clusters[i].extend(k.outgrowth.component.iter().copied());
                    }
                    (Some(i), Some(j)) if k.multiplicity > 0 => {
                        clusters[i].extend(k.u_side.iter().copied());
                        clusters[j].extend(k.v_side.iter().copied());
                    }
                    _ => {}
                }
            }
        }
        ClusterCollection::new(g, clusters)
    }
}

/// Collapses outgrowths into u–v edge bundles until none is left.
///
/// Each round keeps the outgrowths whose span V(K) ∪ {u, v} contains no other
/// outgrowth's span as a proper subset, takes them greedily in lexicographic
/// anchor order while their components stay disjoint from each other and from
/// the anchors already taken, and replaces each by a u–v bundle whose
/// multiplicity is the largest order of a model of K^{(u,v)} separating u from
/// v.
pub fn reduce_to_1_reduced(g: &WeightedMultigraph, c: u32) -> Result<(WeightedMultigraph, Expansion)> {
    if let Some(og) = find_outgrowth(g, c, c as usize)? {
        return Err(Error::Precondition(format!(
            "outgrowth of size {} at anchors ({}, {}) must be replaced first",
            og.size(),
            og.u,
            og.v
        )));
    }
    let mut g = g.clone();
    let mut expansion = Expansion::default();
    loop {
        let all = outgrowths(&g, c, 1..usize::MAX, false)?;
        if all.is_empty() {
            return Ok((g, expansion));
        }
        let span = |og: &Outgrowth| {
            let mut s = og.component.clone();
            s.insert(og.u);
            s.insert(og.v);
            s
        };
        let spans: Vec<VertexSet> = all.iter().map(span).collect();
        let mut taken: Vec<&Outgrowth> = Vec::new();
        let mut used = VertexSet::new();
        let mut anchors = VertexSet::new();
        for (i, og) in all.iter().enumerate() {
            let dominated = spans
                .iter()
                .any(|s| s.len() < spans[i].len() && s.is_subset(&spans[i]));
            if dominated
                || !og.component.is_disjoint(&used)
                || !og.component.is_disjoint(&anchors)
                || used.contains(&og.u)
                || used.contains(&og.v)
            {
                continue;
            }
            used.extend(og.component.iter().copied());
            anchors.insert(og.u);
            anchors.insert(og.v);
            taken.push(og);
        }
        let mut round = Vec::new();
        let mut next = g.delete_vertices(&used);
        for og in taken {
            let h = og.anchored_graph(&g)?;
            let multiplicity = max_separating_theta(&h, og.u, og.v, c)?;
            let (u_side, v_side) = if multiplicity > 0 {
                let m = find_separating_model(&h, og.u, og.v, multiplicity)?
                    .expect("the separating value is witnessed");
                (m.x, m.y)
            } else {
                (VertexSet::new(), VertexSet::new())
            };
            next.add_edge(og.u, og.v, multiplicity)?;
            round.push(CollapsedOutgrowth {
                outgrowth: og.clone(),
                multiplicity,
                u_side,
                v_side,
            });
        }
        expansion.rounds.push(round);
        g = next;
    }
}

/// Tuning knobs of the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct StructureParams {
    /// Target minimum edge-degree of the contracted graph.
    pub t: u64,
    /// Edge-degree threshold for high-degree vertices.
    pub k: u64,
    /// Number of vertices of each packed multipath.
    pub r: usize,
    /// Size bound for models reported by the decomposition proper.
    pub model_bound: usize,
}

impl StructureParams {
    /// t = 8c, k = t, r = 4k and B = 16c.
    pub fn for_order(c: u32) -> Self {
        let t = 8 * u64::from(c);
        StructureParams {
            t,
            k: t,
            r: 4 * t as usize,
            model_bound: 16 * c as usize,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t == 0 || self.k == 0 || self.r == 0 || self.model_bound == 0 {
            return Err(Error::InvalidParams("t, k, r and the model bound must be positive".into()));
        }
        Ok(())
    }

    /// min{k^r + k + 1, r + r(k − 1)k^r}, saturating.
    pub fn capacity_bound(&self) -> u64 {
        let kr = self.k.saturating_pow(self.r.min(u32::MAX as usize) as u32);
        let r = self.r as u64;
        let first = kr.saturating_add(self.k).saturating_add(1);
        let second = r.saturating_add(r.saturating_mul(self.k - 1).saturating_mul(kr));
        first.min(second)
    }
}

/// Result of [`decompose_1_reduced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    SmallModel(ThetaModel),
    Clusters(ClusterCollection),
    ThetaFree,
    /// The parameters were too small for the construction to conclude.
    Failure(String),
}

/// Builds a cluster collection {a} ∪ B_a (a ∈ A) of `z` in which every
/// cluster has at least k/c edges leaving it inside the collection.
///
/// Requires that {A, B} partitions V(Z), μ(Z) < c, every A-vertex has
/// edge-degree at least k, B is independent and every B-vertex has at least
/// two neighbours.
pub fn merge_clusters(z: &WeightedMultigraph, a: &VertexSet, b: &VertexSet, k: u64, c: u32) -> Result<ClusterCollection> {
    let fail = |msg: String| Err(Error::Precondition(msg));
    if !a.is_disjoint(b) || a.union(b).copied().collect::<VertexSet>() != z.vertex_set() {
        return fail("A and B must partition the vertex set".into());
    }
    if z.max_multiplicity() >= c {
        return fail(format!("maximum multiplicity must stay below {c}"));
    }
    for &x in a {
        if z.edge_degree(x)? < k {
            return fail(format!("vertex {x} of A has edge-degree below {k}"));
        }
    }
    for &x in b {
        if z.neighbors(x).any(|(y, _)| b.contains(&y)) {
            return fail(format!("B is not independent at {x}"));
        }
        if z.vertex_degree(x) < 2 {
            return fail(format!("vertex {x} of B has fewer than two neighbours"));
        }
    }

    let c64 = u64::from(c);
    let mut extra: BTreeMap<VertexId, VertexSet> = a.iter().map(|&x| (x, VertexSet::new())).collect();
    let mut covered: VertexSet = a.clone();
    // Edges leaving {x} ∪ B_x towards the rest of the collection.
    let leaving = |x: VertexId, bx: &VertexSet, covered: &VertexSet| -> u64 {
        std::iter::once(x)
            .chain(bx.iter().copied())
            .flat_map(|y| z.neighbors(y))
            .filter(|(y, _)| covered.contains(y) && *y != x && !bx.contains(y))
            .map(|(_, m)| u64::from(m))
            .sum()
    };
    loop {
        let deficient = a
            .iter()
            .copied()
            .find(|&x| leaving(x, &extra[&x], &covered) * c64 < k);
        let Some(x) = deficient else { break };
        let bx = &extra[&x];
        let p: u64 = z
            .neighbors(x)
            .filter(|(y, _)| covered.contains(y) && !bx.contains(y))
            .map(|(_, m)| u64::from(m))
            .sum();
        let mut free: Vec<(u32, VertexId)> = z
            .neighbors(x)
            .filter(|(y, _)| b.contains(y) && !covered.contains(y))
            .map(|(y, m)| (m, y))
            .collect();
        free.sort_by(|l, r| r.0.cmp(&l.0).then(l.1.cmp(&r.1)));
        let need = k.saturating_sub(p);
        let mut got = 0;
        let mut chosen = VertexSet::new();
        for (m, y) in free {
            if got >= need {
                break;
            }
            got += u64::from(m);
            chosen.insert(y);
        }
        if got < need {
            return Err(Error::Precondition(format!(
                "vertex {x} cannot reach {need} edges into unused B-vertices"
            )));
        }
        covered.extend(chosen.iter().copied());
        extra.insert(x, chosen);
    }
    let clusters: Vec<VertexSet> = extra
        .into_iter()
        .map(|(x, mut bx)| {
            bx.insert(x);
            bx
        })
        .collect();
    ClusterCollection::new(z, clusters)
}

fn pair_model(g: &WeightedMultigraph, x: VertexSet, y: VertexSet, c: u32) -> Result<ThetaModel> {
    minimize_model(g, &ThetaModel::new(g, x, y, c)?)
}

/// A minimized model of `g[within]`, or a failure if there is none.
fn model_within(g: &WeightedMultigraph, within: &VertexSet, c: u32, what: &str) -> Result<Decomposition> {
    match find_theta_model(&g.induced(within), c)? {
        Some(m) => Ok(Decomposition::SmallModel(minimize_model(g, &m)?)),
        None => Ok(Decomposition::Failure(format!("expected a model inside {what}"))),
    }
}

/// First pair of contracted vertices joined by at least c edges.
fn heavy_pair(q: &WeightedMultigraph, c: u32) -> Option<(VertexId, VertexId)> {
    q.edges().find(|&(_, _, m)| m >= c).map(|(a, b, _)| (a, b))
}

/// Greedily packs vertex-disjoint induced paths on exactly `r` vertices of
/// `g[avail]`, scanning start vertices in identifier order.
fn pack_paths(g: &WeightedMultigraph, avail: &VertexSet, r: usize) -> Vec<Vec<VertexId>> {
    const STEP_LIMIT: u64 = 1_000_000;
    let mut steps = 0;
    let mut avail = avail.clone();
    let mut out = Vec::new();
    'pack: loop {
        for &start in &avail {
            let mut path = vec![start];
            if extend_path(g, &avail, r, &mut path, &mut steps, STEP_LIMIT) {
                for x in &path {
                    avail.remove(x);
                }
                out.push(path);
                continue 'pack;
            }
            if steps >= STEP_LIMIT {
                break 'pack;
            }
        }
        break;
    }
    out
}

fn extend_path(
    g: &WeightedMultigraph,
    avail: &VertexSet,
    r: usize,
    path: &mut Vec<VertexId>,
    steps: &mut u64,
    limit: u64,
) -> bool {
    if path.len() == r {
        return true;
    }
    let last = *path.last().expect("paths are non-empty");
    let candidates: Vec<VertexId> = g.neighbors(last).map(|(y, _)| y).collect();
    for y in candidates {
        *steps += 1;
        if *steps >= limit {
            return false;
        }
        if !avail.contains(&y) || path.contains(&y) {
            continue;
        }
        // Induced: y may only touch the current end of the path.
        if path[..path.len() - 1].iter().any(|&p| g.multiplicity(p, y) > 0) {
            continue;
        }
        path.push(y);
        if extend_path(g, avail, r, path, steps, limit) {
            return true;
        }
        path.pop();
    }
    false
}

/// The cluster construction on a graph without outgrowths.
pub fn decompose_1_reduced(g: &WeightedMultigraph, c: u32, params: &StructureParams) -> Result<Decomposition> {
    params.validate()?;
    if let Some(og) = find_outgrowth(g, c, 1)? {
        return Err(Error::Precondition(format!(
            "graph has an outgrowth at anchors ({}, {})",
            og.u, og.v
        )));
    }
    if let Some((a, b, _)) = g.edges().find(|&(_, _, m)| m >= c) {
        return Ok(Decomposition::SmallModel(ThetaModel::new(
            g,
            VertexSet::from([a]),
            VertexSet::from([b]),
            c,
        )?));
    }
    let h = strip_theta_free_blocks(g, c)?;
    if h.is_empty() {
        return Ok(Decomposition::ThetaFree);
    }
    let k = params.k;

    let mut heavy = VertexSet::new();
    for x in h.vertices() {
        if h.edge_degree(x)? >= k {
            heavy.insert(x);
        }
    }
    let light: VertexSet = h.vertex_set().difference(&heavy).copied().collect();
    let paths = pack_paths(&h, &light, params.r);
    let on_paths: VertexSet = paths.iter().flatten().copied().collect();
    let rest: VertexSet = light.difference(&on_paths).copied().collect();
    let small: Vec<VertexSet> = h.induced(&rest).components();

    // Contract clusters and paths, keeping heavy vertices as singletons.
    #[derive(Clone, Copy, PartialEq, Eq)]
    enum Kind {
        Heavy,
        Path(usize),
        Small(usize),
    }
    let mut groups: Vec<(VertexSet, Kind)> = heavy.iter().map(|&w| (VertexSet::from([w]), Kind::Heavy)).collect();
    groups.extend(paths.iter().enumerate().map(|(i, p)| (p.iter().copied().collect(), Kind::Path(i))));
    groups.extend(small.iter().enumerate().map(|(i, s)| (s.clone(), Kind::Small(i))));
    let cc = ClusterCollection::new(&h, groups.iter().map(|(s, _)| s.clone()).collect())?;
    let (q, prov) = h.contract_clusters(&cc)?;
    let kind_of: BTreeMap<VertexId, Kind> = prov
        .iter()
        .map(|(&id, set)| {
            let kind = groups.iter().find(|(s, _)| s == set).expect("every group is contracted").1;
            (id, kind)
        })
        .collect();

    if let Some((a, b)) = heavy_pair(&q, c) {
        return Ok(Decomposition::SmallModel(pair_model(&h, prov[&a].clone(), prov[&b].clone(), c)?));
    }

    let mut good = Vec::new();
    let mut bad_vertices = VertexSet::new();
    for (&id, &kind) in &kind_of {
        let Kind::Small(i) = kind else { continue };
        let cluster = &small[i];
        match q.vertex_degree(id) {
            0 => return model_within(&h, cluster, c, "an isolated cluster"),
            1 => {
                let (nbr, _) = q.neighbors(id).next().expect("degree one");
                if kind_of[&nbr] == Kind::Heavy {
                    let mut within = cluster.clone();
                    within.extend(prov[&nbr].iter().copied());
                    return model_within(&h, &within, c, "a pendant cluster and its heavy neighbour");
                }
                bad_vertices.extend(cluster.iter().copied());
            }
            _ => good.push(i),
        }
    }

    let run_limit = (2 * u64::from(c)).saturating_pow(2 * c);
    for path in &paths {
        let on_path: VertexSet = path.iter().copied().collect();
        let mut run = 0u64;
        for &x in path {
            let black = h
                .neighbors(x)
                .all(|(y, _)| on_path.contains(&y) || bad_vertices.contains(&y));
            run = if black { run + 1 } else { 0 };
            if run >= run_limit {
                let mut within = on_path.clone();
                for cluster in &small {
                    if cluster.iter().any(|z| bad_vertices.contains(z))
                        && cluster.iter().any(|&z| h.neighbors(z).any(|(y, _)| on_path.contains(&y)))
                    {
                        within.extend(cluster.iter().copied());
                    }
                }
                return model_within(&h, &within, c, "a black run and its pendant clusters");
            }
        }
    }

    let mut primed: Vec<VertexSet> = heavy.iter().map(|&w| VertexSet::from([w])).collect();
    primed.extend(paths.iter().map(|p| p.iter().copied().collect()));
    primed.extend(good.iter().map(|&i| small[i].clone()));
    let primed = ClusterCollection::new(&h, primed)?;
    let (z, zprov) = h.contract_clusters(&primed)?;
    if let Some((a, b)) = heavy_pair(&z, c) {
        return Ok(Decomposition::SmallModel(pair_model(&h, zprov[&a].clone(), zprov[&b].clone(), c)?));
    }
    let good_sets: BTreeSet<&VertexSet> = good.iter().map(|&i| &small[i]).collect();
    let (zb, za): (VertexSet, VertexSet) = z.vertices().partition(|id| good_sets.contains(&zprov[id]));
    let merged = match merge_clusters(&z, &za, &zb, k, c) {
        Ok(m) => m,
        Err(Error::Precondition(msg)) => return Ok(Decomposition::Failure(msg)),
        Err(e) => return Err(e),
    };
    let clusters: Vec<VertexSet> = merged
        .iter()
        .map(|group| group.iter().flat_map(|id| zprov[id].iter().copied()).collect())
        .collect();
    let result = ClusterCollection::new(&h, clusters)?;
    let (contracted, _) = h.contract_clusters(&result)?;
    let delta = contracted.min_edge_degree().unwrap_or(0);
    if delta < params.t {
        return Ok(Decomposition::Failure(format!(
            "contracted minimum edge-degree {delta} is below t = {}",
            params.t
        )));
    }
    if result.capacity() as u64 > params.capacity_bound() {
        return Ok(Decomposition::Failure("capacity bound exceeded".into()));
    }
    Ok(Decomposition::Clusters(ClusterCollection::new(g, result.clusters().to_vec())?))
}

/// The four possible results of [`structure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureOutcome {
    /// An outgrowth of size at least c.
    LargeOutgrowth(Outgrowth),
    /// An inclusion-minimal θ_c-model. Its size is at most the model bound
    /// unless the decomposition failed and the exhaustive fallback was used.
    SmallModel(ThetaModel),
    /// A cluster collection with δ(G/𝒞) ≥ t.
    Clusters(ClusterCollection),
    ThetaFree,
}

/// Classifies `g` for one peeling round.
///
/// Tries, in order: a θ_c-freeness certificate; an outgrowth of size at
/// least c; outgrowth reduction followed by the cluster construction,
/// with results mapped back to `g`; and finally a minimized model found by
/// exhaustive search.
pub fn structure(g: &WeightedMultigraph, c: u32, params: &StructureParams) -> Result<StructureOutcome> {
    params.validate()?;
    let Some(model) = find_theta_model(g, c)? else {
        return Ok(StructureOutcome::ThetaFree);
    };
    if let Some(og) = find_outgrowth(g, c, c as usize)? {
        return Ok(StructureOutcome::LargeOutgrowth(og));
    }
    let (reduced, expansion) = reduce_to_1_reduced(g, c)?;
    match decompose_1_reduced(&reduced, c, params)? {
        Decomposition::SmallModel(m) => {
            let m = minimize_model(g, &expansion.expand_model(g, &m)?)?;
            if m.len() <= params.model_bound {
                return Ok(StructureOutcome::SmallModel(m));
            }
        }
        Decomposition::Clusters(cc) => {
            let cc = expansion.expand_clusters(g, &cc)?;
            let (q, _) = g.contract_clusters(&cc)?;
            if q.min_edge_degree().unwrap_or(0) >= params.t && cc.capacity() as u64 <= params.capacity_bound().saturating_mul(u64::from(c)) {
                return Ok(StructureOutcome::Clusters(cc));
            }
        }
        Decomposition::ThetaFree | Decomposition::Failure(_) => {}
    }
    Ok(StructureOutcome::SmallModel(minimize_model(g, &model)?))
}
