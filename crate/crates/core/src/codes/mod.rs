//! Transmission schemes and the decodability verifier.

pub mod two_receiver;
pub mod family;
pub mod index;
pub mod schedule;
pub mod verify;

pub use two_receiver::{
    monte_carlo_t, preprocess, run_two_receiver, MonteCarloOptions, MonteCarloSummary,
    PhaseCounts, PreprocessResult, RunStats,
};
pub use family::{build_index_code, detect_family, GraphFamily, IndexCode};
pub use index::{
    code_acyclic, code_antihole_general, code_cycle_zero_node, code_directed_cycle,
    code_even_antihole, code_even_cycle, code_odd_antihole, code_odd_cycle, code_tree,
    XorSchedule,
};
pub use schedule::{Slot, SparseSlot, TransmissionSchedule};
pub use verify::{verify_decodability, DecodeReport, KnowledgeState};
