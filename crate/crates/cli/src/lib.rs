//! Suite runner and exporters behind the `pschur` binary.

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use rayon::prelude::*;

use pschur::combinatorics::{
    branching_duality_check, dim_specht, partitions_of, tensor_bookkeeping,
};
use pschur::ddha::{
    d_algebra, d_dimension_check, d_v_invariants_in, ddha_relation_check, psi_span,
    specht_realization, structure_constants_check,
};
use pschur::duality::{
    classical_sw_check, conjecture_probe, levi_duality_with, mixed_invariants_check,
    monotonicity_chain, parabolic_duality_check, restriction_stability_check,
};
use pschur::parabolic::{
    block_and_center, cartan_check, cartan_matrix, dimension_report, idempotent_sum_matrix,
    parabolic_algebra, pim_decomposition, radical_nilpotency, rank_filtration_check,
    simple_dims_check, CartanReport,
};
use pschur::schur::{
    group_image_span, levi_dim_formula, monomial_span_dim, omega_dim_formula, GroupSpec,
};
use pschur::{Check, MatrixQ, Report, ReportRecord, Status, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Combinatorics,
    Schur,
    Ddha,
    Levi,
    ParabolicDuality,
    ParabolicStructure,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 6] = [
        Suite::Combinatorics,
        Suite::Schur,
        Suite::Ddha,
        Suite::Levi,
        Suite::ParabolicDuality,
        Suite::ParabolicStructure,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Combinatorics => "combinatorics",
            Suite::Schur => "schur",
            Suite::Ddha => "ddha",
            Suite::Levi => "levi",
            Suite::ParabolicDuality => "parabolic-duality",
            Suite::ParabolicStructure => "parabolic-structure",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::CONCRETE.to_vec(),
            s => vec![s],
        }
    }

    /// Combinatorial identities never touch the tensor space.
    fn budgeted(&self) -> bool {
        *self != Suite::Combinatorics
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        Suite::CONCRETE
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| anyhow!("unknown suite {s:?}"))
    }
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> anyhow::Result<RangeInclusive<usize>> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<usize>()?,
            b.trim_start_matches('=').trim().parse::<usize>()?,
        ),
        None => {
            let v = s.trim().parse::<usize>()?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        bail!("range {s:?} must be nonempty and start at 1 or more");
    }
    Ok(lo..=hi)
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suite: Suite,
    pub n: RangeInclusive<usize>,
    pub r: RangeInclusive<usize>,
    pub seed: u64,
    pub budget: usize,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(
        suite: Suite,
        n: RangeInclusive<usize>,
        r: RangeInclusive<usize>,
        seed: u64,
    ) -> Self {
        RunConfig {
            suite,
            n,
            r,
            seed,
            budget: 256,
            timings: false,
        }
    }
}

/// Runs every `(suite, n, r)` job in the grid and returns the records
/// sorted by suite, `n`, `r` and check name.
pub fn run_suite(cfg: &RunConfig) -> Vec<ReportRecord> {
    let mut jobs = Vec::new();
    for suite in cfg.suite.expand() {
        for n in cfg.n.clone() {
            for r in cfg.r.clone() {
                jobs.push((suite, n, r));
            }
        }
    }
    let mut records: Vec<ReportRecord> = jobs
        .par_iter()
        .flat_map_iter(|&(suite, n, r)| run_job(suite, n, r, cfg))
        .collect();
    records.sort_by(|a, b| (&a.suite, a.n, a.r, &a.check).cmp(&(&b.suite, b.n, b.r, &b.check)));
    records
}

fn run_job(suite: Suite, n: usize, r: usize, cfg: &RunConfig) -> Vec<ReportRecord> {
    let size = (n + 1).checked_pow(r as u32).unwrap_or(usize::MAX);
    if suite.budgeted() && size > cfg.budget {
        return vec![ReportRecord {
            n,
            r,
            suite: suite.name().into(),
            check: "budget".into(),
            status: Status::Skipped,
            computed: Some(size.into()),
            expected: Some(cfg.budget.into()),
            oracle: None,
            seed: cfg.seed,
            elapsed_ms: 0,
        }];
    }
    let start = Instant::now();
    let reports = match suite {
        Suite::Combinatorics => Ok(vec![
            branching_duality_check(n, r),
            tensor_bookkeeping(n, r),
        ]),
        Suite::Schur => schur_suite(n, r, cfg.seed),
        Suite::Ddha => ddha_suite(n, r),
        Suite::Levi => levi_suite(n, r, cfg.seed),
        Suite::ParabolicDuality => parabolic_duality_suite(n, r, cfg.seed),
        Suite::ParabolicStructure => parabolic_structure_suite(n, r, cfg.seed),
        Suite::All => unreachable!("expanded before scheduling"),
    };
    let elapsed = if cfg.timings {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    let mut out = Vec::new();
    match reports {
        Ok(reports) => {
            for rep in reports {
                let title = rep.title.clone();
                for check in rep.checks {
                    let mut rec = ReportRecord::from_check(suite.name(), n, r, cfg.seed, check);
                    rec.check = format!("{title}: {}", rec.check);
                    rec.elapsed_ms = elapsed;
                    out.push(rec);
                }
            }
        }
        Err(e) => out.push(ReportRecord {
            n,
            r,
            suite: suite.name().into(),
            check: "error".into(),
            status: Status::Fail,
            computed: Some(Value::Text(e.to_string())),
            expected: None,
            oracle: None,
            seed: cfg.seed,
            elapsed_ms: elapsed,
        }),
    }
    out
}

fn schur_suite(n: usize, r: usize, seed: u64) -> pschur::Result<Vec<Report>> {
    let mut images = Report::new("group images", n, r);
    for spec in [
        GroupSpec::Levi { n },
        GroupSpec::Parabolic { n },
        GroupSpec::Enhanced { n },
        GroupSpec::UnipotentV { n },
        GroupSpec::Gm { n },
    ] {
        let image = group_image_span(spec, r, seed)?;
        let (allowed, units) = spec.positions();
        images.expect(
            format!("{} dim vs monomial oracle", spec.name()),
            image.handle.dim(),
            monomial_span_dim(&allowed, r, &units),
        );
    }
    let dims = |name: &str| {
        images
            .get(&format!("{name} dim vs monomial oracle"))
            .and_then(|c| c.computed.as_ref())
            .and_then(Value::as_int)
            .unwrap_or(-1) as usize
    };
    let (levi, omega) = (dims("levi"), dims("unipotent"));
    images.expect("levi dim", levi, levi_dim_formula(n, r) as usize);
    images.expect("omega dim", omega, omega_dim_formula(n, r) as usize);
    let classical = classical_sw_check(n + 1, r)?.into_report();
    Ok(vec![images, classical])
}

fn ddha_suite(n: usize, r: usize) -> pschur::Result<Vec<Report>> {
    let mut out = vec![ddha_relation_check(n, r), d_dimension_check(n, r)?];
    for l in 1..=n.min(r) {
        let mut rep = structure_constants_check(n, r, l)?;
        rep.title = format!("structure constants l={l}");
        out.push(rep);
    }
    let mut specht = Report::new("specht realizations", n, r);
    for l in 0..=r {
        for lam in partitions_of(l, n) {
            let s = specht_realization(&lam, n, r)?;
            specht.expect(format!("lambda={lam}"), s.dim(), dim_specht(&lam) as usize);
        }
    }
    out.push(specht);
    Ok(out)
}

/// One summary record per instance; the supporting checks are folded into
/// its status.
fn levi_suite(n: usize, r: usize, seed: u64) -> pschur::Result<Vec<Report>> {
    let d = d_algebra(n, r)?;
    let dual = levi_duality_with(&d, seed)?;
    let mut out = Report::new("levi", n, r);
    let ok = dual.passed();
    let dims = vec![
        dual.left_dim,
        dual.right_dim,
        levi_dim_formula(n, r) as usize,
    ];
    out.push(Check {
        name: "duality".into(),
        status: if ok { Status::Pass } else { Status::Fail },
        computed: Some(dims.into()),
        expected: None,
        oracle: None,
        detail: None,
    });
    Ok(vec![out])
}

fn parabolic_duality_suite(n: usize, r: usize, seed: u64) -> pschur::Result<Vec<Report>> {
    let p = parabolic_algebra(n, r, seed)?;
    let d = d_algebra(n, r)?;
    let dv_is_psi = d_v_invariants_in(&d, seed)? == psi_span(n, r);
    Ok(vec![
        parabolic_duality_check(&p, &d, seed)?.into_report(),
        restriction_stability_check(n, r, seed)?,
        mixed_invariants_check(&p, dv_is_psi, seed)?,
        conjecture_probe(&d, seed)?,
        monotonicity_chain(&p, seed)?,
    ])
}

fn parabolic_structure_suite(n: usize, r: usize, seed: u64) -> pschur::Result<Vec<Report>> {
    let p = parabolic_algebra(n, r, seed)?;
    let d = d_algebra(n, r)?;
    let dv_is_psi = d_v_invariants_in(&d, seed)? == psi_span(n, r);
    let mut misc = Report::new("idempotents and radical", n, r);
    misc.assert(
        "weight idempotents sum to identity",
        idempotent_sum_matrix(n, r)? == MatrixQ::identity((n + 1).pow(r as u32)),
    );
    let nil = radical_nilpotency(&p);
    misc.record_against("radical nilpotency index", nil, r + 2);
    misc.assert("radical power r+2 vanishes", nil <= r + 2);
    let (_, cartan) = cartan_check(&p)?;
    Ok(vec![
        dimension_report(&p),
        rank_filtration_check(&p)?,
        pim_decomposition(&p)?.report,
        simple_dims_check(&p)?,
        cartan,
        block_and_center(&p, dv_is_psi)?,
        misc,
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => bail!("unknown format {s:?}"),
        }
    }
}

fn value_cell(v: &Option<Value>) -> anyhow::Result<String> {
    Ok(match v {
        None => String::new(),
        Some(Value::Text(s)) => s.clone(),
        Some(v) => serde_json::to_string(v)?,
    })
}

pub fn write_records<W: Write>(
    records: &[ReportRecord],
    format: Format,
    mut out: W,
) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "n",
                "r",
                "suite",
                "check",
                "status",
                "computed",
                "expected",
                "oracle",
                "seed",
                "elapsed_ms",
            ])?;
            for rec in records {
                w.write_record([
                    rec.n.to_string(),
                    rec.r.to_string(),
                    rec.suite.clone(),
                    rec.check.clone(),
                    rec.status.to_string(),
                    value_cell(&rec.computed)?,
                    value_cell(&rec.expected)?,
                    value_cell(&rec.oracle)?,
                    rec.seed.to_string(),
                    rec.elapsed_ms.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn compute_cartan(n: usize, r: usize, seed: u64) -> anyhow::Result<CartanReport> {
    let p = parabolic_algebra(n, r, seed)?;
    Ok(cartan_matrix(&p)?)
}

pub fn write_cartan<W: Write>(
    report: &CartanReport,
    format: Format,
    mut out: W,
) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["gamma".to_string()];
            header.extend(report.labels.iter().cloned());
            w.write_record(&header)?;
            for (label, row) in report.labels.iter().zip(&report.matrix) {
                let mut line = vec![label.clone()];
                line.extend(row.iter().map(|v| v.to_string()));
                w.write_record(&line)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn export_cartan(
    n: usize,
    r: usize,
    seed: u64,
    path: &Path,
    format: Format,
) -> anyhow::Result<CartanReport> {
    let report = compute_cartan(n, r, seed)?;
    let file =
        std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_cartan(&report, format, std::io::BufWriter::new(file))
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(report)
}

/// Rows `(check, computed, expected, status)` of the dimension report.
pub fn dims_table(n: usize, r: usize, seed: u64) -> anyhow::Result<Vec<[String; 4]>> {
    let p = parabolic_algebra(n, r, seed)?;
    let rep = dimension_report(&p);
    let mut rows = vec![[
        "dim P".to_string(),
        p.dim().to_string(),
        String::new(),
        Status::Pass.to_string(),
    ]];
    for c in rep.checks {
        let cell = |v: &Option<Value>| v.as_ref().map(|v| v.to_string()).unwrap_or_default();
        rows.push([
            c.name.clone(),
            cell(&c.computed),
            cell(&c.expected),
            c.status.to_string(),
        ]);
    }
    Ok(rows)
}

pub fn count_status(records: &[ReportRecord], status: Status) -> usize {
    records.iter().filter(|r| r.status == status).count()
}
