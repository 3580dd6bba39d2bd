//! The two-receiver feedback scheme with linear side information.
//!
//! Preprocessing splits each receiver's demand space `D_i` into three parts:
//! rows of `A_i^i` it already knows (`P_i^i`), rows of `A_j^i` known by the
//! other receiver (`P_j^i`), and unit vectors completing the basis (`U^i`,
//! `nu^i` of them).
//!
//! Transmission then runs in three phases:
//!
//! 1. For receiver 0 and then receiver 1, each `<u, p^i>` with `u` in `U^i`
//!    is repeated until either receiver gets it. Those that only the other
//!    receiver got (`K_j^i` of them) are queued for `i` ahead of the `P_j^i`
//!    packets. Every queued packet for `i` is known to `j`.
//! 2. The heads of both queues are XORed together. A receiver that gets the
//!    slot cancels the other receiver's part and advances its own queue.
//!    The phase ends as soon as either queue is empty.
//! 3. The rest of the other queue is sent uncoded until its owner gets it.
//!
//! The phase logic is written once against [`Emitter`]: the counting engine
//! used for large Monte Carlo runs ignores coefficients, while the recording
//! engine materializes every slot so the result can be verified.

use rayon::prelude::*;
use serde::Serialize;

use super::schedule::TransmissionSchedule;
use super::verify::verify_decodability;
use crate::bounds::scaled_demands;
use crate::channel::{ChannelConfig, ChannelSampler, ErasurePattern};
use crate::error::{Error, Result};
use crate::gf::{Gf, GfVector};
use crate::linalg::{complete_to_full_space, extend_basis};
use crate::sideinfo::{LinearSideInfo, ScalableSideInfo};

/// Basis split for one receiver `i` (with `j` the other receiver).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceiverSplit {
    /// Rows of `A_i^i` forming a basis of its row space.
    pub p_own: Vec<GfVector>,
    /// Rows of `A_j^i` extending `p_own` to a basis of `Sp([A_i^i; A_j^i])`.
    pub p_other: Vec<GfVector>,
    /// Unit vectors completing the basis of `D_i`.
    pub u: Vec<GfVector>,
}

impl ReceiverSplit {
    /// `nu^i`.
    pub fn nu(&self) -> usize {
        self.u.len()
    }

    /// `d_j^i`.
    pub fn d(&self) -> usize {
        self.p_other.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreprocessResult {
    pub receivers: [ReceiverSplit; 2],
}

impl PreprocessResult {
    pub fn counts(&self) -> PhaseCounts {
        PhaseCounts {
            nu: [self.receivers[0].nu(), self.receivers[1].nu()],
            d: [self.receivers[0].d(), self.receivers[1].d()],
            own: [self.receivers[0].p_own.len(), self.receivers[1].p_own.len()],
        }
    }
}

fn require_two(n: usize) -> Result<()> {
    if n != 2 {
        return Err(Error::precondition(format!(
            "the two-receiver scheme needs exactly 2 receivers, got {n}"
        )));
    }
    Ok(())
}

pub fn preprocess(si: &LinearSideInfo) -> Result<PreprocessResult> {
    require_two(si.n_receivers())?;
    let split = |i: usize| -> Result<ReceiverSplit> {
        let j = 1 - i;
        let k = si.demands()[i];
        let p_own = extend_basis(&[], si.mat(i, i))?.added;
        let p_other = extend_basis(&p_own, si.mat(j, i))?.added;
        let known: Vec<GfVector> = p_own.iter().chain(&p_other).cloned().collect();
        let u = complete_to_full_space(si.field(), &known, k)?;
        Ok(ReceiverSplit { p_own, p_other, u })
    };
    Ok(PreprocessResult {
        receivers: [split(0)?, split(1)?],
    })
}

/// The sizes that drive the phases.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseCounts {
    /// `nu^i`.
    pub nu: [usize; 2],
    /// `d_j^i`, indexed by the destination `i`.
    pub d: [usize; 2],
    /// `rho(A_i^i)`.
    pub own: [usize; 2],
}

impl PhaseCounts {
    /// Counts at the given demands, computed from ranks only.
    pub fn at_scale(si: &ScalableSideInfo, demands: &[usize]) -> Result<PhaseCounts> {
        require_two(si.n_receivers())?;
        let mut c = PhaseCounts {
            nu: [0; 2],
            d: [0; 2],
            own: [0; 2],
        };
        for i in 0..2 {
            let own = si.joint_rank_at(&[i], i, demands)?;
            let joint = si.joint_rank_at(&[i, 1 - i], i, demands)?;
            c.own[i] = own;
            c.d[i] = joint - own;
            c.nu[i] = demands[i] - joint;
        }
        Ok(c)
    }

    pub fn total_packets(&self) -> usize {
        (0..2).map(|i| self.own[i] + self.d[i] + self.nu[i]).sum()
    }
}

/// Per-run bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunStats {
    /// Total slots.
    pub t: usize,
    /// `T_1^i`: Phase-1 slots spent on receiver `i`'s packets.
    pub phase1_slots: [usize; 2],
    /// Phase-1 packets of receiver `i` that `i` itself received.
    pub phase1_received: [usize; 2],
    /// `K_j^i`: Phase-1 packets of receiver `i` received only by `j`.
    pub lost: [usize; 2],
    pub phase2_slots: usize,
    pub phase3_slots: usize,
    /// `T_i^2`: slots from the start of Phase 2 until receiver `i` has its
    /// whole queue.
    pub delivery_slots: [usize; 2],
    pub decode_success: [bool; 2],
}

/// One part of a slot: a packet destined to `receiver`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Part {
    /// `<u, p^i>` for the `index`-th vector of `U^i`.
    Fresh { receiver: usize, index: usize },
    /// `<a, p^i>` for the `index`-th row of `P_j^i`.
    Known { receiver: usize, index: usize },
}

/// Receives every slot the scheme sends.
pub trait Emitter {
    fn emit(&mut self, parts: &[Part], pattern: ErasurePattern) -> Result<()>;
}

/// Discards slots.
pub struct CountOnly;

impl Emitter for CountOnly {
    #[inline]
    fn emit(&mut self, _: &[Part], _: ErasurePattern) -> Result<()> {
        Ok(())
    }
}

/// Builds the explicit coefficient vectors.
pub struct Recorder<'a> {
    pre: &'a PreprocessResult,
    schedule: TransmissionSchedule,
}

impl<'a> Recorder<'a> {
    pub fn new(pre: &'a PreprocessResult, si: &LinearSideInfo) -> Self {
        Recorder {
            pre,
            schedule: TransmissionSchedule::new(si.field(), si.demands().to_vec()),
        }
    }

    pub fn into_schedule(self) -> TransmissionSchedule {
        self.schedule
    }
}

impl Emitter for Recorder<'_> {
    fn emit(&mut self, parts: &[Part], pattern: ErasurePattern) -> Result<()> {
        let mut v = vec![Gf::ZERO; self.schedule.dim()];
        for part in parts {
            let (i, src) = match *part {
                Part::Fresh { receiver, index } => (receiver, &self.pre.receivers[receiver].u[index]),
                Part::Known { receiver, index } => {
                    (receiver, &self.pre.receivers[receiver].p_other[index])
                }
            };
            let off = self.schedule.offset(i);
            for (dst, &c) in v[off..off + src.len()].iter_mut().zip(src) {
                *dst += c;
            }
        }
        self.schedule.push(v, Some(pattern))
    }
}

/// Slot budget before a run is declared nonterminating:
/// `100 (sum k + 1) / (1 - max_i eps_i)`, or `100 (sum k + 1)` when some
/// receiver never receives.
pub fn default_budget(total_packets: usize, cfg: &ChannelConfig) -> u64 {
    let worst = (0..cfg.n_receivers())
        .map(|i| cfg.eps_mask(1 << i))
        .fold(0.0f64, f64::max);
    let base = 100.0 * (total_packets as f64 + 1.0);
    if worst >= 1.0 {
        base as u64
    } else {
        (base / (1.0 - worst)).ceil() as u64
    }
}

struct Clock {
    t: u64,
    budget: u64,
}

impl Clock {
    fn tick(&mut self) -> Result<()> {
        if self.t >= self.budget {
            return Err(Error::Timeout { budget: self.budget });
        }
        self.t += 1;
        Ok(())
    }
}

/// Runs the three phases against a pattern source.
pub fn drive<E: Emitter>(
    counts: &PhaseCounts,
    sampler: &mut ChannelSampler<'_>,
    budget: u64,
    emitter: &mut E,
) -> Result<RunStats> {
    let mut clock = Clock { t: 0, budget };
    let mut stats = RunStats {
        t: 0,
        phase1_slots: [0; 2],
        phase1_received: [0; 2],
        lost: [0; 2],
        phase2_slots: 0,
        phase3_slots: 0,
        delivery_slots: [0; 2],
        decode_success: [false; 2],
    };
    let mut lost: [Vec<usize>; 2] = [Vec::new(), Vec::new()];

    for i in 0..2 {
        let j = 1 - i;
        for index in 0..counts.nu[i] {
            loop {
                clock.tick()?;
                let z = sampler.sample();
                emitter.emit(&[Part::Fresh { receiver: i, index }], z)?;
                stats.phase1_slots[i] += 1;
                if z.received(i) {
                    stats.phase1_received[i] += 1;
                    break;
                }
                if z.received(j) {
                    lost[i].push(index);
                    break;
                }
            }
        }
        stats.lost[i] = lost[i].len();
    }

    let queue_len = [lost[0].len() + counts.d[0], lost[1].len() + counts.d[1]];
    let item = |i: usize, l: usize| -> Part {
        if l < lost[i].len() {
            Part::Fresh {
                receiver: i,
                index: lost[i][l],
            }
        } else {
            Part::Known {
                receiver: i,
                index: l - lost[i].len(),
            }
        }
    };
    let mut head = [0usize; 2];
    let mut since_phase2 = 0usize;

    while head[0] < queue_len[0] && head[1] < queue_len[1] {
        clock.tick()?;
        let z = sampler.sample();
        emitter.emit(&[item(0, head[0]), item(1, head[1])], z)?;
        stats.phase2_slots += 1;
        since_phase2 += 1;
        for i in 0..2 {
            if z.received(i) {
                head[i] += 1;
                if head[i] == queue_len[i] {
                    stats.delivery_slots[i] = since_phase2;
                }
            }
        }
    }

    for i in 0..2 {
        while head[i] < queue_len[i] {
            clock.tick()?;
            let z = sampler.sample();
            emitter.emit(&[item(i, head[i])], z)?;
            stats.phase3_slots += 1;
            since_phase2 += 1;
            if z.received(i) {
                head[i] += 1;
                if head[i] == queue_len[i] {
                    stats.delivery_slots[i] = since_phase2;
                }
            }
        }
    }

    stats.t = clock.t as usize;
    // Each receiver now holds p_own, p_other and all of U^i.
    stats.decode_success = [true; 2];
    Ok(stats)
}

/// Runs the scheme with explicit coefficients and verifies the result.
/// `budget` overrides [`default_budget`].
pub fn run_two_receiver_with(
    si: &LinearSideInfo,
    cfg: &ChannelConfig,
    seed: u64,
    trial: u64,
    budget: Option<u64>,
) -> Result<(TransmissionSchedule, RunStats)> {
    require_two(si.n_receivers())?;
    if cfg.n_receivers() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: cfg.n_receivers(),
        });
    }
    let pre = preprocess(si)?;
    let counts = pre.counts();
    let budget = budget.unwrap_or_else(|| default_budget(counts.total_packets(), cfg));
    let mut sampler = cfg.sampler(seed, trial);
    let mut rec = Recorder::new(&pre, si);
    let mut stats = drive(&counts, &mut sampler, budget, &mut rec)?;
    let schedule = rec.into_schedule();
    let report = verify_decodability(&schedule, si)?;
    stats.decode_success = [report.decode_success[0], report.decode_success[1]];
    Ok((schedule, stats))
}

pub fn run_two_receiver(
    si: &LinearSideInfo,
    cfg: &ChannelConfig,
    seed: u64,
) -> Result<(TransmissionSchedule, RunStats)> {
    run_two_receiver_with(si, cfg, seed, 0, None)
}

/// Counts-only run for one trial.
pub fn run_counts(counts: &PhaseCounts, cfg: &ChannelConfig, seed: u64, trial: u64, budget: Option<u64>) -> Result<RunStats> {
    let budget = budget.unwrap_or_else(|| default_budget(counts.total_packets(), cfg));
    drive(counts, &mut cfg.sampler(seed, trial), budget, &mut CountOnly)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialOutcome {
    pub trial: u64,
    pub t: usize,
    pub t_over_n: f64,
    pub stats: RunStats,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloSummary {
    pub n: u64,
    pub demands: Vec<usize>,
    pub counts: PhaseCounts,
    pub trials: Vec<TrialOutcome>,
    pub mean: f64,
    /// Standard error of the mean; absent for a single trial.
    pub stderr: Option<f64>,
}

/// Sample mean and standard error (`None` for fewer than two samples).
pub fn mean_stderr(xs: &[f64]) -> (f64, Option<f64>) {
    let m = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, None);
    }
    let mean = xs.iter().sum::<f64>() / m;
    if xs.len() < 2 {
        return (mean, None);
    }
    if xs.iter().all(|&x| x == xs[0]) {
        return (xs[0], Some(0.0));
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
    (mean, Some((var / m).sqrt()))
}

/// Options for [`monte_carlo_t`].
#[derive(Clone, Debug, Default)]
pub struct MonteCarloOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub budget: Option<u64>,
}

/// Runs `trials` independent trials at demands `ceil(n r)` and summarizes
/// `T/n`. Trial `t` uses stream `t` of `seed`, so results do not depend on
/// the thread count.
pub fn monte_carlo_t(
    si: &ScalableSideInfo,
    cfg: &ChannelConfig,
    r: &[f64],
    n: u64,
    trials: u64,
    seed: u64,
    opts: &MonteCarloOptions,
) -> Result<MonteCarloSummary> {
    require_two(si.n_receivers())?;
    if r.len() != 2 || cfg.n_receivers() != 2 {
        return Err(Error::precondition("rates and channel must describe 2 receivers"));
    }
    if n == 0 {
        return Err(Error::Domain("the scale n must be positive".into()));
    }
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let demands = scaled_demands(r, n);
    let counts = PhaseCounts::at_scale(si, &demands)?;
    let run = |trial: u64| -> Result<TrialOutcome> {
        let stats = run_counts(&counts, cfg, seed, trial, opts.budget)?;
        Ok(TrialOutcome {
            trial,
            t: stats.t,
            t_over_n: stats.t as f64 / n as f64,
            stats,
        })
    };
    let outcomes: Vec<TrialOutcome> = match opts.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Domain(format!("cannot start worker threads: {e}")))?
            .install(|| (0..trials).into_par_iter().map(run).collect::<Result<_>>())?,
        None => (0..trials).into_par_iter().map(run).collect::<Result<_>>()?,
    };
    let ratios: Vec<f64> = outcomes.iter().map(|o| o.t_over_n).collect();
    let (mean, stderr) = mean_stderr(&ratios);
    Ok(MonteCarloSummary {
        n,
        demands,
        counts,
        trials: outcomes,
        mean,
        stderr,
    })
}
