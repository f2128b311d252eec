//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (rational arithmetic or integer counts). Time
//! limits are the wall-clock budgets each criterion is allowed.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bondcover::generate::{gadget_chain, planted, GenParams};
use bondcover::io::format_decimal;
use bondcover::replacer::ReplacementRecord;
use bondcover::structure::find_outgrowth;
use bondcover::weighting::subtract_layer;
use bondcover::{
    exact_cover, find_theta_model, lift_solution, replace_outgrowth, solve, verify_cover,
    ExactOptions, PeelEvent, SolveConfig, VertexId, VertexSet, Weight, WeightedMultigraph,
};
use common::{int, model_is_valid, random_graph, random_weight, Small};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: usize, detail: String) -> Outcome {
    Outcome { passed: failures == 0, detail }
}

/// Criterion 1: model detection agrees with bond enumeration.
fn detection_matches_bonds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let graphs = 10_000;
    let mut mismatches = 0;
    for _ in 0..graphs {
        let n = rng.gen_range(2..=6);
        let p = rng.gen_range(0.0..0.7);
        let g = random_graph(&mut rng, n, p, 3, true);
        let small = Small::new(&g);
        for c in 2..=4u32 {
            let found = find_theta_model(&g, c).unwrap();
            let ok = match &found {
                Some(m) => model_is_valid(&g, &m.x, &m.y, c) && small.has_bond_by_cuts(c.into()),
                None => !small.has_bond_by_cuts(c.into()),
            };
            mismatches += usize::from(!ok);
        }
    }
    outcome(mismatches, format!("{graphs} connected graphs x c in {{2,3,4}}, {mismatches} mismatches"))
}

/// Criterion 2: exact_cover against 2^n enumeration.
fn exact_matches_enumeration() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = 0;
    for i in 0..500 {
        let c = 2 + (i % 2) as u32;
        let n = rng.gen_range(1..=12);
        let (p, connected) = (rng.gen_range(0.1..0.6), rng.gen_bool(0.7));
        let g = random_graph(&mut rng, n, p, c + 1, connected);
        let small = Small::new(&g);
        let (opt, argmin) = small.optimum(c.into());
        let (cover, w) = exact_cover(&g, c).unwrap();
        if w != opt || !argmin.contains(&small.mask_of(&cover)) {
            failures += 1;
        }
    }
    outcome(failures, format!("500 instances with n <= 12, {failures} disagreements"))
}

/// Criterion 3: c = 2 against a forest-based feedback vertex set search.
fn fvs_cross_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=12);
        let (p, connected) = (rng.gen_range(0.1..0.5), rng.gen_bool(0.7));
        let g = random_graph(&mut rng, n, p, 2, connected);
        let fvs = Small::new(&g).fvs_optimum();
        if exact_cover(&g, 2).unwrap().1 != fvs {
            failures += 1;
        }
    }
    outcome(failures, format!("300 instances with n <= 12, {failures} disagreements"))
}

/// Criterion 4: replacing an outgrowth keeps the optimum, and lifting an
/// optimal cover of the smaller graph gives an optimal cover of the larger.
fn replacement_keeps_optimum() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut tried, mut failures) = (0, 0);
    let mut seed = 0u64;
    while tried < 200 {
        seed += 1;
        let c = 2 + (seed % 2) as u32;
        let params = GenParams {
            n: rng.gen_range(3..=5),
            c,
            p: 0.4,
            max_mult: c,
            max_weight: 6,
            extra: rng.gen_range(1..=2),
            size: c as usize + rng.gen_range(0..=2),
        };
        let g = gadget_chain(&params, seed).unwrap();
        if g.vertex_count() > 14 {
            continue;
        }
        let Some(og) = find_outgrowth(&g, c, c as usize).unwrap() else {
            failures += 1;
            tried += 1;
            continue;
        };
        tried += 1;
        let (h, rec) = replace_outgrowth(&g, &og, c, ExactOptions::default()).unwrap();
        let opt_g = Small::new(&g).optimum(c.into()).0;
        let opt_h = Small::new(&h).optimum(c.into()).0;
        let (cover_h, w_h) = exact_cover(&h, c).unwrap();
        let lifted = lift_solution(&g, &rec, &cover_h).unwrap();
        let lifted_ok = verify_cover(&g, c, &lifted).unwrap() && g.weight_of(&lifted) == opt_g;
        if opt_g != opt_h || w_h != opt_h || !lifted_ok || h.vertex_count() >= g.vertex_count() {
            failures += 1;
        }
    }
    outcome(failures, format!("{tried} gadget-chain instances with n <= 14, {failures} failures"))
}

/// Criterion 5: in the gadget with i extra u-v edges, {x_i} is a cheapest cover.
fn gadget_self_test() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checks, mut failures) = (0, 0);
    for c in 2..=5u32 {
        for _ in 0..25 {
            let mut w: Vec<Weight> = (1..c).map(|_| random_weight(&mut rng)).collect();
            w.sort();
            let heavy = w.iter().fold(Weight::one(), |a, b| a + b);
            let (u, v) = (VertexId(1), VertexId(2));
            let gadget: Vec<VertexId> = (3..c + 2).map(VertexId).collect();
            let rec = ReplacementRecord {
                c,
                u,
                v,
                removed: VertexSet::new(),
                gadget: gadget.clone(),
                gadget_weights: w.clone(),
                separators: Vec::new(),
                separator_weights: Vec::new(),
            };
            let mut base = WeightedMultigraph::new();
            base.add_vertex(u, heavy.clone()).unwrap();
            base.add_vertex(v, heavy.clone()).unwrap();
            let base = rec.apply(&base).unwrap();
            // The path u, x_1, ..., x_{c-1}, v plus chords x_i-u for i >= 2.
            let mut expected = vec![(u, gadget[0])];
            expected.extend(gadget.windows(2).map(|p| (p[0], p[1])));
            expected.push((gadget[c as usize - 2], v));
            expected.extend(gadget.iter().skip(1).map(|&x| (x, u)));
            let shape_ok = expected.iter().all(|&(a, b)| base.multiplicity(a, b) == 1)
                && base.edge_count() == expected.len() as u64;
            for i in 1..c {
                checks += 1;
                let mut g = base.clone();
                g.add_edge(u, v, i).unwrap();
                let xi = VertexSet::from([gadget[i as usize - 1]]);
                let opt = exact_cover(&g, c).unwrap().1;
                let oracle = Small::new(&g).optimum(c.into()).0;
                if !shape_ok || opt != w[i as usize - 1] || oracle != opt || !verify_cover(&g, c, &xi).unwrap() {
                    failures += 1;
                }
            }
        }
    }
    outcome(failures, format!("{checks} (c, chain, i) cases for c in 2..=5, {failures} failures"))
}

/// Contracted edge count and cluster weights computed from scratch.
fn cluster_quantities(small: &Small, clusters: &[usize]) -> (u64, Vec<Weight>, u64) {
    let mut w = vec![Weight::zero(); small.n];
    let mut min_degree = u64::MAX;
    let mut total = 0;
    for (a, &ca) in clusters.iter().enumerate() {
        let ext = small.crossing(ca, small.full() & !ca);
        min_degree = min_degree.min(ext);
        for (b, &cb) in clusters.iter().enumerate() {
            if a < b {
                total += small.crossing(ca, cb);
            }
        }
        let share = Weight::new(ext.into(), ca.count_ones().into());
        for (i, slot) in w.iter_mut().enumerate() {
            if ca >> i & 1 == 1 {
                *slot = share.clone();
            }
        }
    }
    (total, w, min_degree)
}

/// Criterion 6: every minimal cover carries a 1/(2r) share of the cluster
/// weighting when the contracted graph is dense enough.
fn cluster_sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let c = 2u32;
    let (mut built, mut failures, mut covers) = (0, 0, 0usize);
    while built < 100 {
        let q = rng.gen_range(3..=5usize);
        let mut sizes: Vec<usize> = (0..q).map(|_| rng.gen_range(1..=3)).collect();
        while sizes.iter().sum::<usize>() > 12 {
            let i = sizes.iter().position(|&s| s > 1).unwrap();
            sizes[i] -= 1;
        }
        let mut g = WeightedMultigraph::new();
        let mut members: Vec<Vec<VertexId>> = Vec::new();
        let mut next = 1;
        for &s in &sizes {
            let ids: Vec<VertexId> = (0..s).map(|k| VertexId(next + k as u32)).collect();
            next += s as u32;
            for &x in &ids {
                g.add_vertex(x, int(1)).unwrap();
            }
            for pair in ids.windows(2) {
                g.add_edge(pair[0], pair[1], 1).unwrap();
            }
            members.push(ids);
        }
        let per_pair = (16 + q - 2) / (q - 1) + rng.gen_range(0..=1);
        for a in 0..q {
            for b in a + 1..q {
                for _ in 0..per_pair {
                    let x = members[a][rng.gen_range(0..sizes[a])];
                    let y = members[b][rng.gen_range(0..sizes[b])];
                    g.add_edge(x, y, 1).unwrap();
                }
            }
        }
        let small = Small::new(&g);
        let clusters: Vec<usize> = members
            .iter()
            .map(|ids| small.mask_of(&ids.iter().copied().collect()))
            .collect();
        let (edges, w, delta) = cluster_quantities(&small, &clusters);
        if delta < 8 * u64::from(c) {
            continue;
        }
        built += 1;
        let r = *sizes.iter().max().unwrap() as i64;
        let lower = Weight::new(edges.into(), (2 * r).into());
        let upper = int(2 * edges as i64);
        for x in small.minimal_covers(c.into()) {
            covers += 1;
            let share = (0..small.n)
                .filter(|i| x >> i & 1 == 1)
                .fold(Weight::zero(), |a, i| a + &w[i]);
            if share < lower || share > upper {
                failures += 1;
            }
        }
    }
    outcome(failures, format!("{built} instances, {covers} minimal covers, {failures} outside the bounds"))
}

/// Criterion 7: edge-degree share of minimal covers in dense graphs with low
/// multiplicity.
fn edge_degree_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut built, mut failures, mut covers) = (0, 0, 0usize);
    while built < 40 {
        let c = 2 + (built % 2) as u32;
        let n = if c == 2 { rng.gen_range(13..=14) } else { rng.gen_range(11..=13) };
        let mut g = WeightedMultigraph::new();
        for i in 1..=n as u32 {
            g.add_vertex(VertexId(i), int(1)).unwrap();
        }
        for a in 1..=n as u32 {
            for b in a + 1..=n as u32 {
                let m = if c == 2 || rng.gen_bool(0.85) { c - 1 } else { 1 };
                if rng.gen_bool(0.97) {
                    g.add_edge(VertexId(a), VertexId(b), m).unwrap();
                }
            }
        }
        let small = Small::new(&g);
        let degree = |i: usize| small.mult[i].iter().map(|&m| u64::from(m)).sum::<u64>();
        if (0..n).map(degree).min().unwrap() < 6 * u64::from(c) {
            continue;
        }
        built += 1;
        let edges = small.total_edges();
        for x in small.minimal_covers(c.into()) {
            covers += 1;
            let share: u64 = (0..n).filter(|i| x >> i & 1 == 1).map(degree).sum();
            if edges > 2 * share || 2 * share > 4 * edges {
                failures += 1;
            }
        }
    }
    outcome(failures, format!("{built} instances, {covers} minimal covers, {failures} outside the bounds"))
}

fn end_to_end_instance(rng: &mut ChaCha8Rng, i: u64) -> (WeightedMultigraph, u32) {
    let c = 2 + (i % 2) as u32;
    let g = match i % 10 {
        // Dense doubled cliques are where the cluster layers appear (c = 3).
        9 => {
            let n = rng.gen_range(13..=14u32);
            let mut g = WeightedMultigraph::new();
            for v in 1..=n {
                g.add_vertex(VertexId(v), random_weight(rng)).unwrap();
            }
            for a in 1..=n {
                for b in a + 1..=n {
                    let m = if rng.gen_bool(0.95) { 2 } else { 1 };
                    g.add_edge(VertexId(a), VertexId(b), m).unwrap();
                }
            }
            g
        }
        3 | 8 => {
            let params = GenParams {
                n: rng.gen_range(4..=12),
                c,
                p: 0.3,
                max_mult: c,
                max_weight: 9,
                extra: rng.gen_range(1..=6),
                size: rng.gen_range(1..=3),
            };
            planted(&params, i).unwrap().0
        }
        4 | 7 => {
            let params = GenParams {
                n: rng.gen_range(3..=5),
                c,
                p: 0.4,
                max_mult: c,
                max_weight: 9,
                extra: rng.gen_range(1..=2),
                size: c as usize + 1,
            };
            gadget_chain(&params, i).unwrap()
        }
        _ => {
            let n = rng.gen_range(2..=14);
            let (p, connected) = (rng.gen_range(0.15..0.6), rng.gen_bool(0.8));
            random_graph(rng, n, p, c + 1, connected)
        }
    };
    (g, c)
}

/// Criteria 8, 9 and 10 share one run.
fn end_to_end() -> [Outcome; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut infeasible, mut over_alpha, mut solved) = (0, 0, 0);
    let (mut layers, mut enumerated, mut bad_layers) = (0, 0, 0);
    let (mut free_graphs, mut dense_free) = (0, 0);
    let mut kinds = [0usize; 4];
    let mut ratios = Vec::new();
    let mut i = 0;
    while solved < 500 {
        i += 1;
        let (g, c) = end_to_end_instance(&mut rng, i);
        if g.vertex_count() > 14 {
            continue;
        }
        solved += 1;
        let small = Small::new(&g);
        let out = solve(&g, &SolveConfig::new(c)).unwrap();
        let remaining = small.full() & !small.mask_of(&out.cover);
        if small.model_table(c.into())[remaining] || !verify_cover(&g, c, &out.cover).unwrap() {
            infeasible += 1;
        }
        let opt = small.optimum(c.into()).0;
        if out.weight > &out.trace.realized_alpha * &opt {
            over_alpha += 1;
        }
        ratios.push(bondcover::io::ratio(&out.weight, &opt));

        let mut current = g.clone();
        for event in &out.trace.events {
            let next = match event {
                PeelEvent::Replacement(rec) => {
                    kinds[0] += 1;
                    rec.apply(&current).unwrap()
                }
                PeelEvent::Layer { layer, kind } => {
                    kinds[1 + *kind as usize] += 1;
                    layers += 1;
                    let bounded = layer
                        .layer_weight
                        .iter()
                        .all(|(v, lw)| *lw >= Weight::zero() && lw <= current.weight(*v));
                    let tight = layer.layer_weight.iter().any(|(v, lw)| lw == current.weight(*v));
                    let mut thin = true;
                    if current.vertex_count() <= 14 {
                        enumerated += 1;
                        let local = Small::new(&current);
                        let lw = |mask: usize| {
                            local
                                .set_of(mask)
                                .iter()
                                .filter_map(|v| layer.layer_weight.get(v))
                                .fold(Weight::zero(), |a, b| a + b)
                        };
                        let need = lw(local.full()) / &layer.alpha;
                        thin = local.minimal_covers(c.into()).into_iter().all(|s| lw(s) >= need);
                    }
                    if !(bounded && tight && thin) {
                        bad_layers += 1;
                    }
                    subtract_layer(&current, layer).unwrap()
                }
            };
            current = next;
        }
        free_graphs += 1;
        let local = Small::new(&current);
        let certified = !local.model_table(c.into())[local.full()];
        if !certified || current.edge_count() > 2 * u64::from(c) * current.vertex_count() as u64 {
            dense_free += 1;
        }
    }
    ratios.sort();
    let median = &ratios[ratios.len() / 2];
    let worst = ratios.last().unwrap();
    [
        outcome(
            infeasible + over_alpha,
            format!(
                "{solved} instances, {infeasible} infeasible, {over_alpha} above realized alpha; \
                 median ratio {}, max {}; {} replacements, {} zero, {} model and {} cluster layers",
                format_decimal(median, 4),
                format_decimal(worst, 4),
                kinds[0],
                kinds[1],
                kinds[2],
                kinds[3]
            ),
        ),
        outcome(
            bad_layers,
            format!("{layers} layers, {enumerated} checked by minimal-cover enumeration (n <= 14), {bad_layers} violations"),
        ),
        outcome(dense_free, format!("{free_graphs} certified-free graphs, {dense_free} violations")),
    ]
}

fn main() -> ExitCode {
    let mut all_passed = true;
    let mut report = |id: usize, names: &[&str], limit: Duration, run: &mut dyn FnMut() -> Vec<Outcome>| {
        let start = Instant::now();
        let outcomes = run();
        let elapsed = start.elapsed();
        for (k, o) in outcomes.into_iter().enumerate() {
            let in_time = elapsed <= limit;
            let passed = o.passed && in_time;
            all_passed &= passed;
            println!(
                "{} criterion {:>2} {}: {} [{:.1}s, limit {}s]",
                if passed { "PASS" } else { "FAIL" },
                id + k,
                names[k],
                o.detail,
                elapsed.as_secs_f64(),
                limit.as_secs()
            );
        }
    };
    let min = |m: u64| Duration::from_secs(60 * m);
    report(1, &["model detection vs bond enumeration"], min(2), &mut || vec![detection_matches_bonds()]);
    report(2, &["exact cover vs subset enumeration"], min(3), &mut || vec![exact_matches_enumeration()]);
    report(3, &["c = 2 vs feedback vertex set"], min(2), &mut || vec![fvs_cross_check()]);
    report(4, &["outgrowth replacement keeps the optimum"], min(5), &mut || vec![replacement_keeps_optimum()]);
    report(5, &["gadget self-test"], Duration::from_secs(30), &mut || vec![gadget_self_test()]);
    report(6, &["cluster weighting sandwich"], min(3), &mut || vec![cluster_sandwich()]);
    report(7, &["edge-degree sandwich"], min(2), &mut || vec![edge_degree_bounds()]);
    report(8, &["end-to-end ratio", "thin-layer invariants", "edge count of certified-free graphs"], min(10), &mut || end_to_end().into());
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
