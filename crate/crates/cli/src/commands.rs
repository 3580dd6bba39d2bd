//! The subcommands. Each returns its outputs as JSON plus a flat table for
//! `--format csv`; nothing is written until the run has finished.

use std::path::PathBuf;

use becsc::bounds::{
    mwais, mwais_weighted, outer_bound_all, permutation_bound_allornothing, that_two_receiver, BoundReport,
};
use becsc::codes::{build_index_code, monte_carlo_t, verify_decodability, GraphFamily, MonteCarloOptions};
use becsc::codes::TransmissionSchedule;
use becsc::gf::Field;
use becsc::sideinfo::{graph_to_linear, ScalableSideInfo};
use serde_json::{json, Value};

use crate::config::{Loaded, SideInfoSpec};
use crate::CliError;

/// Largest receiver count for which every permutation report is emitted;
/// above it only the binding permutation is listed.
pub const MAX_LISTED_PERMUTATION_RECEIVERS: usize = 6;

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Outcome {
    pub outputs: Value,
    pub table: Table,
    /// Set when a schedule fails verification; the record is still written.
    pub failure: Option<String>,
    /// Deferred file writes.
    pub files: Vec<(PathBuf, String)>,
}

impl Outcome {
    fn new(outputs: Value, table: Table) -> Self {
        Outcome {
            outputs,
            table,
            failure: None,
            files: Vec::new(),
        }
    }
}

fn num(x: f64) -> String {
    x.to_string()
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn check_receivers(what: &str, got: usize, want: usize) -> Result<(), CliError> {
    if got != want {
        return Err(CliError::Config(format!(
            "{what} describes {got} receivers but the side information has {want}"
        )));
    }
    Ok(())
}

pub fn bound(l: &Loaded, seed: u64) -> Result<Outcome, CliError> {
    let cfg = l.channel()?;
    let si = l.side_info()?;
    let r = l.rates()?;
    let n = si.n_receivers();
    check_receivers("the channel", cfg.n_receivers(), n)?;
    check_receivers("rates", r.len(), n)?;
    let sweep = outer_bound_all(&r, &si, &cfg)?;
    let binding = sweep.binding_report();
    let listed: Vec<&BoundReport> = if n <= MAX_LISTED_PERMUTATION_RECEIVERS {
        sweep.reports.iter().collect()
    } else {
        vec![binding]
    };
    let mut outputs = json!({
        "n_receivers": n,
        "n_permutations": sweep.reports.len(),
        "reports": listed,
        "reports_truncated": listed.len() < sweep.reports.len(),
        "binding": binding,
        "all_satisfied": sweep.all_satisfied(),
    });
    if let ScalableSideInfo::AllOrNothing(g) = &si {
        let pb = permutation_bound_allornothing(g, &r, &cfg)?;
        outputs["permutation_bound"] = json!(pb);
        outputs["mwais_rate_limit"] = json!(mwais_weighted(g, &r)?.weight);
    }
    if n == 2 {
        outputs["t_hat"] = json!(that_two_receiver(&r, &si, &cfg)?);
    }
    let rows = listed
        .iter()
        .map(|b| {
            vec![
                seed.to_string(),
                join(&b.permutation),
                num(b.lhs),
                num(b.rhs),
                num(b.slack),
                b.satisfied.to_string(),
                b.unbounded.to_string(),
                (b.permutation == binding.permutation).to_string(),
            ]
        })
        .collect();
    let table = Table {
        header: vec!["seed", "permutation", "lhs", "rhs", "slack", "satisfied", "unbounded", "binding"],
        rows,
    };
    Ok(Outcome::new(outputs, table))
}

pub fn mwais_cmd(l: &Loaded, seed: u64) -> Result<Outcome, CliError> {
    let g = l.graph()?;
    let (result, source) = match (&l.config.demands, &l.config.rates) {
        (Some(k), _) => {
            check_receivers("demands", k.len(), g.n())?;
            (mwais(&g, k)?, "demands")
        }
        (None, Some(r)) => {
            check_receivers("rates", r.len(), g.n())?;
            (mwais_weighted(&g, r)?, "rates")
        }
        (None, None) => return Err(CliError::Config("mwais needs \"demands\" or \"rates\"".into())),
    };
    let outputs = json!({
        "weights_from": source,
        "weight": result.weight,
        "witness": result.witness,
    });
    let table = Table {
        header: vec!["seed", "weights_from", "weight", "witness"],
        rows: vec![vec![seed.to_string(), source.into(), num(result.weight), join(&result.witness)]],
    };
    Ok(Outcome::new(outputs, table))
}

pub fn indexcode(l: &Loaded, seed: u64, family: Option<GraphFamily>) -> Result<Outcome, CliError> {
    let g = l.graph()?;
    let k = l.demands()?;
    check_receivers("demands", k.len(), g.n())?;
    let code = build_index_code(&g, &k, family, Field::gf2())?;
    let slots: Vec<&Vec<(usize, usize)>> = code.xor.slots.iter().collect();
    let schedule_file = l.config.schedule_out.as_ref().map(|p| l.resolve(p));
    let outputs = json!({
        "family": code.family,
        "exact_family": code.family.is_exact(),
        "t": code.t,
        "w_star": code.w_star,
        "slack": code.slack(),
        "slack_bound": code.slack_bound,
        "decode_success": code.report.decode_success,
        "slots": slots,
        "schedule_file": schedule_file,
    });
    let verified = code.report.all_decoded() && code.slack() <= code.slack_bound as isize;
    let table = Table {
        header: vec!["seed", "family", "T", "W_star", "slack", "slack_bound", "verified"],
        rows: vec![vec![
            seed.to_string(),
            code.family.to_string(),
            code.t.to_string(),
            code.w_star.to_string(),
            code.slack().to_string(),
            code.slack_bound.to_string(),
            verified.to_string(),
        ]],
    };
    let mut out = Outcome::new(outputs, table);
    if !code.report.all_decoded() {
        out.failure = Some(format!("receivers fail to decode: {:?}", code.report.decode_success));
    } else if !verified {
        out.failure = Some(format!(
            "T - W* = {} exceeds the guaranteed slack {}",
            code.slack(),
            code.slack_bound
        ));
    }
    if let Some(path) = schedule_file {
        out.files.push((path, code.schedule.to_json()));
    }
    Ok(out)
}

pub fn simulate2(l: &Loaded, seed: u64, trials: Option<u64>, threads: Option<usize>) -> Result<Outcome, CliError> {
    let cfg = l.channel()?;
    let si = l.side_info()?;
    let r = l.rates()?;
    check_receivers("the channel", cfg.n_receivers(), si.n_receivers())?;
    check_receivers("rates", r.len(), si.n_receivers())?;
    cfg.check_nondegenerate().map_err(|e| CliError::Config(format!("channel: {e}")))?;
    let n = l.config.n.ok_or_else(|| CliError::Config("missing required key \"n\"".into()))?;
    let trials = trials.or(l.config.trials).unwrap_or(1);
    let opts = MonteCarloOptions {
        threads,
        budget: l.config.budget,
    };
    let summary = monte_carlo_t(&si, &cfg, &r, n, trials, seed, &opts)?;
    let t_hat = that_two_receiver(&r, &si, &cfg)?;
    let abs_diff = (summary.mean - t_hat).abs();

    let mut rows: Vec<Vec<String>> = summary
        .trials
        .iter()
        .map(|t| {
            let mut row = vec!["trial".to_string(), seed.to_string(), t.trial.to_string(), t.t.to_string(), num(t.t_over_n)];
            row.extend(std::iter::repeat_n(String::new(), 4));
            row
        })
        .collect();
    rows.push(vec![
        "summary".into(),
        seed.to_string(),
        String::new(),
        String::new(),
        String::new(),
        num(summary.mean),
        summary.stderr.map(num).unwrap_or_default(),
        num(t_hat),
        num(abs_diff),
    ]);
    let outputs = json!({
        "n": summary.n,
        "demands": summary.demands,
        "counts": summary.counts,
        "trials": summary.trials,
        "mean": summary.mean,
        "stderr": summary.stderr,
        "t_hat": t_hat,
        "abs_diff": abs_diff,
    });
    let table = Table {
        header: vec!["kind", "seed", "trial", "T", "T_over_n", "mean", "stderr", "t_hat", "abs_diff"],
        rows,
    };
    Ok(Outcome::new(outputs, table))
}

pub fn verify(l: &Loaded, seed: u64) -> Result<Outcome, CliError> {
    let path = l
        .config
        .schedule
        .as_ref()
        .map(|p| l.resolve(p))
        .ok_or_else(|| CliError::Config("missing required key \"schedule\"".into()))?;
    let si = match l.config.side_info.as_ref() {
        Some(SideInfoSpec::Graph(_)) => {
            let g = l.graph()?;
            let k = l.demands()?;
            check_receivers("demands", k.len(), g.n())?;
            graph_to_linear(&g, &k, Field::gf2())?
        }
        Some(SideInfoSpec::Matrices(_)) => match l.side_info()? {
            ScalableSideInfo::Replicated(si) => si,
            ScalableSideInfo::AllOrNothing(_) => unreachable!(),
        },
        None => return Err(CliError::Config("missing required key \"side_info\"".into())),
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Config(format!("cannot read schedule {}: {e}", path.display())))?;
    let schedule = TransmissionSchedule::from_json(si.field(), si.demands().to_vec(), &text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let report = verify_decodability(&schedule, &si)?;
    let outputs = json!({
        "schedule_file": path,
        "t": report.t,
        "decode_success": report.decode_success,
        "final_rank": report.final_rank,
        "all_decoded": report.all_decoded(),
    });
    let rows = (0..si.n_receivers())
        .map(|i| {
            vec![
                seed.to_string(),
                i.to_string(),
                report.decode_success[i].to_string(),
                report.final_rank[i].to_string(),
                report.t.to_string(),
            ]
        })
        .collect();
    let table = Table {
        header: vec!["seed", "receiver", "decoded", "final_rank", "T"],
        rows,
    };
    let mut out = Outcome::new(outputs, table);
    if !report.all_decoded() {
        out.failure = Some(format!("receivers fail to decode: {:?}", report.decode_success));
    }
    Ok(out)
}
