//! Experiment configuration files.
//!
//! ```json
//! {
//!   "channel": {"n_receivers": 2, "mode": "independent", "per_receiver_eps": [0.2, 0.3]},
//!   "side_info": {"graph": {"n": 2, "edges": [[1, 0]], "undirected": false}},
//!   "rates": [0.3, 0.3],
//!   "n": 100000,
//!   "trials": 20,
//!   "seed": 7
//! }
//! ```
//!
//! Explicit channels use `"mode": "explicit"` with `"pattern_probs": {"10": 0.2, ...}`,
//! where character `i` of a pattern is 1 if receiver `i` got the slot. Linear
//! side information uses `{"matrices": {"field_degree": 8, "demands": [..],
//! "mats": [[A_0^0, A_0^1], [A_1^0, A_1^1]]}}`, each `A_i^j` a list of rows;
//! an empty list means receiver `i` knows nothing about receiver `j`'s packets.
//! Relative paths are resolved against the directory of the config file.

use std::fmt;
use std::path::{Path, PathBuf};

use becsc::channel::ChannelConfig;
use becsc::gf::{Field, DEFAULT_DEGREE};
use becsc::linalg::GfMatrix;
use becsc::sideinfo::{InformationGraph, LinearSideInfo, ScalableSideInfo};
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub channel: Option<ChannelSpec>,
    pub side_info: Option<SideInfoSpec>,
    pub rates: Option<Vec<f64>>,
    pub demands: Option<Vec<usize>>,
    pub n: Option<u64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    /// Slot budget per simulated trial.
    pub budget: Option<u64>,
    /// Schedule file to check (`verify`).
    pub schedule: Option<PathBuf>,
    /// Where `indexcode` writes its schedule.
    pub schedule_out: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub n_receivers: usize,
    pub mode: ChannelMode,
    pub per_receiver_eps: Option<Vec<f64>>,
    pub pattern_probs: Option<PatternProbs>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelMode {
    Independent,
    Explicit,
}

/// `pattern -> probability` entries in file order, duplicates kept so they
/// can be rejected.
#[derive(Debug, Default)]
pub struct PatternProbs(pub Vec<(String, f64)>);

impl<'de> Deserialize<'de> for PatternProbs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = PatternProbs;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping erasure patterns to probabilities")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<PatternProbs, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry::<String, f64>()? {
                    out.push(entry);
                }
                Ok(PatternProbs(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum SideInfoSpec {
    Graph(GraphSpec),
    Matrices(MatrixSpec),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub undirected: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    #[serde(default = "default_degree")]
    pub field_degree: u8,
    pub demands: Vec<usize>,
    #[serde(default)]
    pub mats: Option<Vec<Vec<Vec<Vec<u32>>>>>,
}

fn default_degree() -> u8 {
    DEFAULT_DEGREE
}

/// A parsed config plus its raw JSON (echoed in result records) and the
/// directory relative paths refer to.
pub struct Loaded {
    pub config: ExperimentConfig,
    pub raw: serde_json::Value,
    pub base: PathBuf,
}

fn invalid(what: &str, e: impl fmt::Display) -> CliError {
    CliError::Config(format!("{what}: {e}"))
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, path.parent().unwrap_or(Path::new(".")))
        .map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
}

pub fn parse(text: &str, base: &Path) -> Result<Loaded, CliError> {
    let config: ExperimentConfig = serde_json::from_str(text).map_err(|e| {
        CliError::Config(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    let raw = serde_json::from_str(text).expect("already parsed");
    Ok(Loaded {
        config,
        raw,
        base: base.to_path_buf(),
    })
}

impl Loaded {
    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    pub fn channel(&self) -> Result<ChannelConfig, CliError> {
        let spec = self.config.channel.as_ref().ok_or_else(|| missing("channel"))?;
        let cfg = match spec.mode {
            ChannelMode::Independent => {
                let eps = spec
                    .per_receiver_eps
                    .clone()
                    .ok_or_else(|| missing("channel.per_receiver_eps"))?;
                if spec.pattern_probs.is_some() {
                    return Err(CliError::Config(
                        "channel.pattern_probs is only valid with \"mode\": \"explicit\"".into(),
                    ));
                }
                ChannelConfig::independent(eps).map_err(|e| invalid("channel", e))?
            }
            ChannelMode::Explicit => {
                let probs = spec.pattern_probs.as_ref().ok_or_else(|| missing("channel.pattern_probs"))?;
                if spec.per_receiver_eps.is_some() {
                    return Err(CliError::Config(
                        "channel.per_receiver_eps is only valid with \"mode\": \"independent\"".into(),
                    ));
                }
                ChannelConfig::from_patterns(spec.n_receivers, probs.0.iter().map(|(s, p)| (s.as_str(), *p)))
                    .map_err(|e| invalid("channel", e))?
            }
        };
        if cfg.n_receivers() != spec.n_receivers {
            return Err(CliError::Config(format!(
                "channel lists {} receivers but n_receivers is {}",
                cfg.n_receivers(),
                spec.n_receivers
            )));
        }
        Ok(cfg)
    }

    pub fn graph(&self) -> Result<InformationGraph, CliError> {
        match self.config.side_info.as_ref().ok_or_else(|| missing("side_info"))? {
            SideInfoSpec::Graph(g) => build_graph(g),
            SideInfoSpec::Matrices(_) => Err(CliError::Config(
                "this command needs an All-or-Nothing side_info.graph".into(),
            )),
        }
    }

    pub fn side_info(&self) -> Result<ScalableSideInfo, CliError> {
        match self.config.side_info.as_ref().ok_or_else(|| missing("side_info"))? {
            SideInfoSpec::Graph(g) => Ok(ScalableSideInfo::AllOrNothing(build_graph(g)?)),
            SideInfoSpec::Matrices(m) => Ok(ScalableSideInfo::Replicated(build_matrices(m)?)),
        }
    }

    pub fn rates(&self) -> Result<Vec<f64>, CliError> {
        self.config.rates.clone().ok_or_else(|| missing("rates"))
    }

    pub fn demands(&self) -> Result<Vec<usize>, CliError> {
        self.config.demands.clone().ok_or_else(|| missing("demands"))
    }
}

fn missing(key: &str) -> CliError {
    CliError::Config(format!("missing required key {key:?}"))
}

fn build_graph(g: &GraphSpec) -> Result<InformationGraph, CliError> {
    InformationGraph::from_edges(g.n, &g.edges, !g.undirected).map_err(|e| invalid("side_info.graph", e))
}

fn build_matrices(m: &MatrixSpec) -> Result<LinearSideInfo, CliError> {
    let field = Field::get(m.field_degree).map_err(|e| invalid("side_info.matrices.field_degree", e))?;
    let n = m.demands.len();
    let Some(mats) = &m.mats else {
        return Ok(LinearSideInfo::none(field, m.demands.clone()));
    };
    if mats.len() != n || mats.iter().any(|row| row.len() != n) {
        return Err(CliError::Config(format!(
            "side_info.matrices.mats must be a {n} x {n} array of matrices"
        )));
    }
    let mut built = Vec::with_capacity(n);
    for (i, row) in mats.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (j, rows) in row.iter().enumerate() {
            let k = m.demands[j];
            let a = if rows.is_empty() {
                GfMatrix::zeros(field, 1, k)
            } else {
                GfMatrix::from_u32_rows(field, k, rows)
                    .map_err(|e| invalid(&format!("side_info.matrices.mats[{i}][{j}]"), e))?
            };
            out.push(a);
        }
        built.push(out);
    }
    LinearSideInfo::new(field, m.demands.clone(), built).map_err(|e| invalid("side_info.matrices", e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loaded(text: &str) -> Result<Loaded, CliError> {
        parse(text, Path::new("."))
    }

    #[test]
    fn unknown_keys_report_position() {
        let err = loaded("{\n  \"seed\": 1,\n  \"colour\": 2\n}").err().unwrap();
        let CliError::Config(msg) = err else { panic!() };
        assert!(msg.contains("line 3") && msg.contains("colour"), "{msg}");
    }

    #[test]
    fn explicit_channel_patterns() {
        let l = loaded(
            r#"{"channel": {"n_receivers": 2, "mode": "explicit",
                "pattern_probs": {"00": 0.1, "10": 0.2, "01": 0.3, "11": 0.4}}}"#,
        )
        .unwrap();
        let c = l.channel().unwrap();
        // Receiver 0 is erased in patterns 00 and 01.
        assert!((c.eps_of(&[0]).unwrap() - 0.4).abs() < 1e-12);
        let dup = loaded(
            r#"{"channel": {"n_receivers": 1, "mode": "explicit", "pattern_probs": {"0": 0.5, "0": 0.5}}}"#,
        )
        .unwrap();
        assert!(dup.channel().is_err());
    }

    #[test]
    fn mode_and_fields_must_agree() {
        let l = loaded(r#"{"channel": {"n_receivers": 1, "mode": "explicit", "per_receiver_eps": [0.1]}}"#).unwrap();
        assert!(l.channel().is_err());
        let l = loaded(r#"{"channel": {"n_receivers": 2, "mode": "independent", "per_receiver_eps": [0.1]}}"#).unwrap();
        assert!(l.channel().is_err());
    }

    #[test]
    fn matrices_default_to_no_knowledge() {
        let l = loaded(r#"{"side_info": {"matrices": {"demands": [2, 3]}}}"#).unwrap();
        let ScalableSideInfo::Replicated(si) = l.side_info().unwrap() else { panic!() };
        assert_eq!(si.joint_rank(&[0, 1], 1), 0);
        assert_eq!(si.field().degree(), DEFAULT_DEGREE);
        let l = loaded(r#"{"side_info": {"matrices": {"field_degree": 1, "demands": [2, 1],
            "mats": [[[], [[1]]], [[[1, 1]], []]]}}}"#)
        .unwrap();
        let ScalableSideInfo::Replicated(si) = l.side_info().unwrap() else { panic!() };
        assert_eq!(si.joint_rank(&[1], 0), 1);
        assert_eq!(si.joint_rank(&[0], 1), 1);
    }
}
