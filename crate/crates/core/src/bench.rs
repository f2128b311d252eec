//! Running the solver and the exact oracle over a corpus, with CSV output.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::driver::{solve, SolveConfig};
use crate::error::{Error, Result};
use crate::exact::exact_cover_with;
use crate::io::{format_decimal, format_weight, parse_instance, ratio};
use crate::multigraph::WeightedMultigraph;
use crate::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub m: u64,
    pub c: u32,
    pub alg_weight: Weight,
    /// None when the oracle is off or ran out of budget.
    pub opt: Option<Weight>,
    pub realized_alpha: Weight,
    pub iterations: usize,
    /// Wall time of the solve call; None unless timing was requested.
    pub millis: Option<u128>,
}

impl BenchRow {
    pub fn ratio(&self) -> Option<Weight> {
        self.opt.as_ref().map(|o| ratio(&self.alg_weight, o))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BenchOptions {
    pub oracle: bool,
    /// Record wall time. Off by default so that output is reproducible.
    pub timing: bool,
}

/// Reads every `*.bond` file in `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<(String, WeightedMultigraph)>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "bond"));
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&p)?;
            Ok((name, parse_instance(&text)?))
        })
        .collect()
}

fn run_one(name: &str, g: &WeightedMultigraph, cfg: &SolveConfig, opts: BenchOptions) -> Result<BenchRow> {
    let start = Instant::now();
    let solution = solve(g, cfg)?;
    let elapsed = start.elapsed().as_millis();
    let opt = if opts.oracle {
        match exact_cover_with(g, cfg.c, cfg.exact) {
            Ok((_, w)) => Some(w),
            Err(Error::BudgetExceeded { .. } | Error::TooLarge { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(BenchRow {
        instance: name.to_string(),
        n: g.vertex_count(),
        m: g.edge_count(),
        c: cfg.c,
        alg_weight: solution.weight.clone(),
        opt,
        realized_alpha: solution.realized_alpha().clone(),
        iterations: solution.trace.events.len(),
        millis: opts.timing.then_some(elapsed),
    })
}

/// Solves every instance in parallel. Rows come back in input order.
pub fn bench(
    corpus: &[(String, WeightedMultigraph)],
    cfg: &SolveConfig,
    opts: BenchOptions,
) -> Result<Vec<BenchRow>> {
    cfg.validate()?;
    corpus
        .par_iter()
        .map(|(name, g)| run_one(name, g, cfg, opts))
        .collect()
}

const HEADER: [&str; 13] = [
    "instance",
    "n",
    "m",
    "c",
    "alg_weight",
    "alg_weight_decimal",
    "opt",
    "opt_decimal",
    "ratio",
    "ratio_decimal",
    "realized_alpha",
    "iterations",
    "millis",
];

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let to_io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(HEADER).map_err(to_io)?;
    let opt_pair = |x: Option<&Weight>| match x {
        Some(x) => (format_weight(x), format_decimal(x, 6)),
        None => (String::new(), String::new()),
    };
    for row in rows {
        let (opt, opt_dec) = opt_pair(row.opt.as_ref());
        let (ratio, ratio_dec) = opt_pair(row.ratio().as_ref());
        w.write_record([
            row.instance.clone(),
            row.n.to_string(),
            row.m.to_string(),
            row.c.to_string(),
            format_weight(&row.alg_weight),
            format_decimal(&row.alg_weight, 6),
            opt,
            opt_dec,
            ratio,
            ratio_dec,
            format_weight(&row.realized_alpha),
            row.iterations.to_string(),
            row.millis.map(|m| m.to_string()).unwrap_or_default(),
        ])
        .map_err(to_io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::*;

    fn csv_string(rows: &[BenchRow]) -> String {
        let mut buf = Vec::new();
        write_csv(rows, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_corpus_is_header_only() {
        let rows = bench(&[], &SolveConfig::new(2), BenchOptions::default()).unwrap();
        assert_eq!(csv_string(&rows).lines().count(), 1);
    }

    #[test]
    fn three_instances() {
        let corpus = vec![
            ("theta".to_string(), graph(&[5, 1], &[(1, 2, 3)])),
            ("k4".to_string(), complete(4, 1)),
            ("path".to_string(), graph(&[1; 3], &[(1, 2, 1), (2, 3, 1)])),
        ];
        let opts = BenchOptions { oracle: true, timing: false };
        let rows = bench(&corpus, &SolveConfig::new(2), opts).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].instance, "theta");
        for row in &rows {
            assert!(row.ratio().unwrap() <= row.realized_alpha);
        }
        let again = bench(&corpus, &SolveConfig::new(2), opts).unwrap();
        assert_eq!(csv_string(&rows), csv_string(&again));
    }
}
