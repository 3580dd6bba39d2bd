//! Structural graph-family detection and code dispatch.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::index::{
    code_acyclic, code_directed_cycle, code_even_antihole, code_even_cycle, code_odd_antihole,
    code_odd_cycle, code_tree, is_forest, XorSchedule,
};
use super::schedule::TransmissionSchedule;
use super::verify::{verify_decodability, DecodeReport};
use crate::bounds::mwais_value;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::sideinfo::{bits, graph_to_linear, InformationGraph};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFamily {
    Acyclic,
    DirectedCycle,
    Forest,
    EvenCycle,
    OddCycle,
    EvenAntihole,
    OddAntihole,
}

impl GraphFamily {
    pub const ALL: [GraphFamily; 7] = [
        GraphFamily::Acyclic,
        GraphFamily::DirectedCycle,
        GraphFamily::Forest,
        GraphFamily::EvenCycle,
        GraphFamily::OddCycle,
        GraphFamily::EvenAntihole,
        GraphFamily::OddAntihole,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphFamily::Acyclic => "acyclic",
            GraphFamily::DirectedCycle => "directed_cycle",
            GraphFamily::Forest => "forest",
            GraphFamily::EvenCycle => "even_cycle",
            GraphFamily::OddCycle => "odd_cycle",
            GraphFamily::EvenAntihole => "even_antihole",
            GraphFamily::OddAntihole => "odd_antihole",
        }
    }

    /// Whether the code meets `T = W*` for every demand vector.
    pub fn is_exact(self) -> bool {
        !matches!(self, GraphFamily::OddCycle | GraphFamily::OddAntihole)
    }

    /// Largest guaranteed `T - W*` for demands `k`.
    pub fn slack_bound(self, k: &[usize]) -> usize {
        let min = k.iter().copied().min().unwrap_or(0);
        match self {
            GraphFamily::OddCycle => min.div_ceil(2),
            GraphFamily::OddAntihole => min.div_ceil(k.len() / 2),
            _ => 0,
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = GraphFamily::ALL.iter().map(|f| f.name()).collect();
                Error::Domain(format!("unknown graph family {s:?}; expected one of {names:?}"))
            })
    }
}

/// Traversal order of an undirected cycle through all nodes, starting at 0
/// and moving to the smaller neighbour first.
pub fn cycle_order(g: &InformationGraph) -> Option<Vec<usize>> {
    let n = g.n();
    if g.is_directed() || n < 3 || (0..n).any(|i| g.degree(i) != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0usize;
    loop {
        let next = bits(g.out_mask(cur)).find(|&v| v != prev)?;
        if next == 0 {
            break;
        }
        if order.contains(&next) {
            return None;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == n).then_some(order)
}

/// Order `v_0 -> v_1 -> ... -> v_{N-1} -> v_0` of a directed Hamiltonian
/// cycle that is the whole graph.
pub fn directed_cycle_order(g: &InformationGraph) -> Option<Vec<usize>> {
    let n = g.n();
    if !g.is_directed() || n < 2 || (0..n).any(|i| g.degree(i) != 1) {
        return None;
    }
    let mut order = vec![0usize];
    let mut cur = 0usize;
    loop {
        let next = bits(g.out_mask(cur)).next()?;
        if next == 0 {
            break;
        }
        if order.contains(&next) {
            return None;
        }
        order.push(next);
        cur = next;
    }
    (order.len() == n).then_some(order)
}

/// Cycle order of the complement, if the graph is an antihole on `N >= 4`.
pub fn antihole_order(g: &InformationGraph) -> Option<Vec<usize>> {
    if g.is_directed() || g.n() < 4 {
        return None;
    }
    cycle_order(&g.complement().ok()?)
}

/// Position-to-label map under which `g` is an instance of `family`.
pub fn family_layout(g: &InformationGraph, family: GraphFamily) -> Option<Vec<usize>> {
    let n = g.n();
    let identity = || (0..n).collect::<Vec<_>>();
    match family {
        GraphFamily::Acyclic => g.induces_acyclic(g.all_mask()).then(identity),
        GraphFamily::DirectedCycle => directed_cycle_order(g),
        GraphFamily::Forest => is_forest(g).then(identity),
        GraphFamily::EvenCycle => cycle_order(g).filter(|_| n >= 4 && n % 2 == 0),
        GraphFamily::OddCycle => cycle_order(g).filter(|_| n >= 5 && n % 2 == 1),
        GraphFamily::EvenAntihole => antihole_order(g).filter(|_| n % 2 == 0),
        GraphFamily::OddAntihole => antihole_order(g).filter(|_| n >= 5 && n % 2 == 1),
    }
}

/// First matching family, trying exact codes before slack-bounded ones:
/// acyclic and directed cycle for directed graphs; forest, cycles and
/// antiholes for undirected graphs.
pub fn detect_family(g: &InformationGraph) -> Option<GraphFamily> {
    let order: &[GraphFamily] = if g.is_directed() {
        &[GraphFamily::Acyclic, GraphFamily::DirectedCycle]
    } else {
        &[
            GraphFamily::Forest,
            GraphFamily::EvenCycle,
            GraphFamily::EvenAntihole,
            GraphFamily::OddCycle,
            GraphFamily::OddAntihole,
        ]
    };
    order.iter().copied().find(|&f| family_layout(g, f).is_some())
}

/// A constructed and verified index code.
#[derive(Clone, Debug)]
pub struct IndexCode {
    pub family: GraphFamily,
    /// Slots as node sets in graph labels.
    pub xor: XorSchedule,
    pub schedule: TransmissionSchedule,
    pub t: usize,
    pub w_star: usize,
    pub slack_bound: usize,
    pub report: DecodeReport,
}

impl IndexCode {
    pub fn slack(&self) -> isize {
        self.t as isize - self.w_star as isize
    }
}

/// Node-set schedule for `g` under `family` (graph labels).
pub fn xor_code_for(g: &InformationGraph, k: &[usize], family: GraphFamily) -> Result<XorSchedule> {
    if k.len() != g.n() {
        return Err(Error::Dimension {
            expected: g.n(),
            found: k.len(),
        });
    }
    let layout = family_layout(g, family)
        .ok_or_else(|| Error::Unsupported(format!("the graph is not a {family} graph")))?;
    let local: Vec<usize> = layout.iter().map(|&v| k[v]).collect();
    let xor = match family {
        GraphFamily::Acyclic => code_acyclic(g, k)?,
        GraphFamily::Forest => code_tree(g, k)?,
        GraphFamily::DirectedCycle => code_directed_cycle(&local)?,
        GraphFamily::EvenCycle => code_even_cycle(&local)?,
        GraphFamily::OddCycle => code_odd_cycle(&local)?,
        GraphFamily::EvenAntihole => code_even_antihole(&local)?,
        GraphFamily::OddAntihole => code_odd_antihole(&local)?.0,
    };
    Ok(xor.relabel(&layout))
}

/// Detects (or checks) the family, builds the code, and verifies it.
pub fn build_index_code(
    g: &InformationGraph,
    k: &[usize],
    family: Option<GraphFamily>,
    field: &'static Field,
) -> Result<IndexCode> {
    let family = match family {
        Some(f) => f,
        None => detect_family(g).ok_or_else(|| {
            Error::Unsupported("the graph is not acyclic, a directed cycle, a forest, a cycle or an antihole".into())
        })?,
    };
    let xor = xor_code_for(g, k, family)?;
    let schedule = xor.to_transmission(k, field)?;
    let si = graph_to_linear(g, k, field)?;
    let report = verify_decodability(&schedule, &si)?;
    Ok(IndexCode {
        family,
        t: xor.len(),
        w_star: mwais_value(g, k)?,
        slack_bound: family.slack_bound(k),
        xor,
        schedule,
        report,
    })
}
