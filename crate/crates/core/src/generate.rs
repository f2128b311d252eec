//! Seeded random instances.
//!
//! All generators draw from a ChaCha8 stream, so a seed pins the instance on
//! every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detect::is_theta_free;
use crate::error::{Error, Result};
use crate::multigraph::{VertexId, VertexSet, WeightedMultigraph};
use crate::Weight;

/// Which family to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Erdős–Rényi style: each pair is joined with probability p, with a
    /// uniform multiplicity in 1..=max_mult.
    Gnp,
    /// A θ_c-free random tree plus extra edges that all touch a planted set.
    Planted,
    /// A random core with θ_c-free pieces hanging between anchor pairs.
    GadgetChain,
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gnp" => Ok(Model::Gnp),
            "planted" => Ok(Model::Planted),
            "gadget-chain" => Ok(Model::GadgetChain),
            _ => Err(Error::InvalidParams(format!(
                "unknown model {s:?}; expected gnp, planted or gadget-chain"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    /// Vertex count (of the base tree or core for the structured models).
    pub n: usize,
    pub c: u32,
    pub p: f64,
    pub max_mult: u32,
    /// Weights are drawn uniformly from 1..=max_weight.
    pub max_weight: u32,
    /// Extra edges for `planted`, pieces for `gadget-chain`.
    pub extra: usize,
    /// Size of the planted set, or the largest piece for `gadget-chain`.
    pub size: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 10,
            c: 2,
            p: 0.3,
            max_mult: 2,
            max_weight: 5,
            extra: 3,
            size: 3,
        }
    }
}

impl GenParams {
    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidParams(format!("p = {} is not a probability", self.p)));
        }
        if self.c == 0 || self.max_mult == 0 || self.max_weight == 0 {
            return Err(Error::InvalidParams("c, max_mult and max_weight must be positive".into()));
        }
        Ok(())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn weight(rng: &mut ChaCha8Rng, params: &GenParams) -> Weight {
    Weight::from_integer(rng.gen_range(1..=params.max_weight).into())
}

fn with_vertices(rng: &mut ChaCha8Rng, n: usize, params: &GenParams) -> WeightedMultigraph {
    let mut g = WeightedMultigraph::new();
    for i in 1..=n as u32 {
        g.add_vertex(VertexId(i), weight(rng, params)).expect("fresh identifiers");
    }
    g
}

pub fn generate(model: Model, params: &GenParams, seed: u64) -> Result<WeightedMultigraph> {
    match model {
        Model::Gnp => gnp(params, seed),
        Model::Planted => planted(params, seed).map(|(g, _)| g),
        Model::GadgetChain => gadget_chain(params, seed),
    }
}

pub fn gnp(params: &GenParams, seed: u64) -> Result<WeightedMultigraph> {
    params.validate()?;
    let mut rng = rng(seed);
    let mut g = with_vertices(&mut rng, params.n, params);
    for u in 1..=params.n as u32 {
        for v in u + 1..=params.n as u32 {
            if rng.gen_bool(params.p) {
                let m = rng.gen_range(1..=params.max_mult);
                g.add_edge(VertexId(u), VertexId(v), m)?;
            }
        }
    }
    Ok(g)
}

/// Random tree on vertices `first..first+n` with multiplicities below c.
fn random_tree(rng: &mut ChaCha8Rng, g: &mut WeightedMultigraph, ids: &[VertexId], c: u32) -> Result<()> {
    let top = c.saturating_sub(1).max(1);
    for i in 1..ids.len() {
        let parent = ids[rng.gen_range(0..i)];
        g.add_edge(ids[i], parent, rng.gen_range(1..=top))?;
    }
    Ok(())
}

/// A random tree with multiplicities below c (so no θ_c-model), plus
/// `extra` edges each incident to a random planted set P of `size` vertices.
/// Returns the graph and P, which is a c-bond cover of it.
pub fn planted(params: &GenParams, seed: u64) -> Result<(WeightedMultigraph, VertexSet)> {
    params.validate()?;
    if params.c < 2 {
        return Err(Error::InvalidParams("planted instances need c ≥ 2".into()));
    }
    if params.size == 0 || params.size > params.n {
        return Err(Error::InvalidParams("the planted set must have 1..=n vertices".into()));
    }
    let mut rng = rng(seed);
    let mut g = with_vertices(&mut rng, params.n, params);
    let ids: Vec<VertexId> = g.vertices().collect();
    random_tree(&mut rng, &mut g, &ids, params.c)?;
    let planted: Vec<VertexId> = ids.choose_multiple(&mut rng, params.size).copied().collect();
    for _ in 0..params.extra {
        let p = *planted.choose(&mut rng).expect("planted set is non-empty");
        let others: Vec<VertexId> = ids.iter().copied().filter(|&x| x != p).collect();
        let Some(&q) = others.choose(&mut rng) else { break };
        g.add_edge(p, q, rng.gen_range(1..=params.max_mult))?;
    }
    Ok((g, planted.into_iter().collect()))
}

/// A random connected core of `n` vertices with `extra` pieces, each a
/// θ_c-free tree of c..=max(c, size) vertices attached to two distinct core
/// anchors, so each piece is an outgrowth of size at least c. Chords are
/// added inside a piece only while its anchored graph stays θ_c-free.
pub fn gadget_chain(params: &GenParams, seed: u64) -> Result<WeightedMultigraph> {
    params.validate()?;
    if params.n < 2 {
        return Err(Error::InvalidParams("the core needs at least two vertices".into()));
    }
    let c = params.c;
    let mut rng = rng(seed);
    let mut g = with_vertices(&mut rng, params.n, params);
    let core: Vec<VertexId> = g.vertices().collect();
    random_tree(&mut rng, &mut g, &core, c + 1)?;
    for u in 0..core.len() {
        for v in u + 1..core.len() {
            if rng.gen_bool(params.p) {
                g.add_edge(core[u], core[v], rng.gen_range(1..=params.max_mult))?;
            }
        }
    }
    let c_size = c as usize;
    for _ in 0..params.extra {
        let size = rng.gen_range(c_size..=params.size.max(c_size));
        let piece: Vec<VertexId> = (0..size).map(|_| g.add_fresh_vertex(weight(&mut rng, params))).collect();
        random_tree(&mut rng, &mut g, &piece, c)?;
        let pair: Vec<VertexId> = core.choose_multiple(&mut rng, 2).copied().collect();
        let (u, v) = (pair[0], pair[1]);
        g.add_edge(u, *piece.choose(&mut rng).unwrap(), 1)?;
        g.add_edge(v, *piece.choose(&mut rng).unwrap(), 1)?;
        let mut span: VertexSet = piece.iter().copied().collect();
        span.insert(u);
        span.insert(v);
        for _ in 0..size {
            let (a, b) = (*piece.choose(&mut rng).unwrap(), *piece.choose(&mut rng).unwrap());
            if a == b {
                continue;
            }
            let mut trial = g.clone();
            trial.add_edge(a, b, 1)?;
            let mut anchored = trial.induced(&span);
            anchored.remove_edges_between(u, v);
            if is_theta_free(&anchored, c)? {
                g = trial;
            }
        }
    }
    Ok(g)
}
