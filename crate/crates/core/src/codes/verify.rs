//! Decodability check by span membership.
//!
//! Every receiver starts from its side information, each `A_i^j` embedded in
//! the global coordinate space, and adds the coefficient vector of every slot
//! it received. It decodes iff the unit vectors of its own block lie in the
//! resulting row space.

use serde::Serialize;

use super::schedule::{Slot, TransmissionSchedule};
use crate::error::{Error, Result};
use crate::gf::{Gf, GfVector};
use crate::linalg::EchelonBasis;
use crate::sideinfo::LinearSideInfo;

/// Per-receiver knowledge spaces.
#[derive(Clone, Debug)]
pub struct KnowledgeState {
    demands: Vec<usize>,
    offsets: Vec<usize>,
    spaces: Vec<EchelonBasis>,
}

impl KnowledgeState {
    /// Knowledge before any slot: the embedded side information.
    pub fn from_side_info(si: &LinearSideInfo) -> Self {
        let demands = si.demands().to_vec();
        let offsets = super::schedule::offsets(&demands);
        let dim: usize = demands.iter().sum();
        let n = demands.len();
        let mut spaces = Vec::with_capacity(n);
        for i in 0..n {
            let mut b = EchelonBasis::new(si.field(), dim);
            for j in 0..n {
                for row in si.mat(i, j).row_vectors() {
                    let mut v = vec![Gf::ZERO; dim];
                    v[offsets[j]..offsets[j] + demands[j]].copy_from_slice(row);
                    b.insert(&v).expect("embedded row has global dimension");
                }
            }
            spaces.push(b);
        }
        KnowledgeState {
            demands,
            offsets,
            spaces,
        }
    }

    /// Adds a slot to every receiver that received it.
    pub fn absorb(&mut self, slot: &Slot) -> Result<()> {
        for (i, space) in self.spaces.iter_mut().enumerate() {
            if slot.feedback.is_none_or(|p| p.received(i)) {
                space.insert(&slot.coeffs)?;
            }
        }
        Ok(())
    }

    /// Adds one vector to a single receiver.
    pub fn learn(&mut self, receiver: usize, v: &GfVector) -> Result<bool> {
        self.spaces[receiver].insert(v)
    }

    pub fn knows(&self, receiver: usize, v: &[Gf]) -> Result<bool> {
        self.spaces[receiver].contains(v)
    }

    pub fn rank(&self, receiver: usize) -> usize {
        self.spaces[receiver].rank()
    }

    pub fn decoded(&self, receiver: usize) -> bool {
        let off = self.offsets[receiver];
        (off..off + self.demands[receiver]).all(|c| self.spaces[receiver].contains_unit(c))
    }
}

/// Outcome of replaying a schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodeReport {
    /// Number of slots.
    pub t: usize,
    pub decode_success: Vec<bool>,
    /// Dimension of each receiver's knowledge space at the end.
    pub final_rank: Vec<usize>,
}

impl DecodeReport {
    pub fn all_decoded(&self) -> bool {
        self.decode_success.iter().all(|&d| d)
    }
}

pub fn verify_decodability(schedule: &TransmissionSchedule, si: &LinearSideInfo) -> Result<DecodeReport> {
    if schedule.demands() != si.demands() {
        return Err(Error::schema(format!(
            "schedule is built for demands {:?} but the side information has {:?}",
            schedule.demands(),
            si.demands()
        )));
    }
    if schedule.field() != si.field() {
        return Err(Error::FieldMismatch);
    }
    let mut state = KnowledgeState::from_side_info(si);
    for slot in schedule.slots() {
        if slot.coeffs.len() != schedule.dim() {
            return Err(Error::schema("slot dimension differs from the packet count"));
        }
        state.absorb(slot)?;
    }
    let n = si.n_receivers();
    Ok(DecodeReport {
        t: schedule.len(),
        decode_success: (0..n).map(|i| state.decoded(i)).collect(),
        final_rank: (0..n).map(|i| state.rank(i)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::linalg::GfMatrix;

    #[test]
    fn own_knowledge_needs_nothing() {
        let f = Field::gf256();
        let mut si = LinearSideInfo::none(f, vec![2]);
        si.set_mat(0, 0, GfMatrix::identity(f, 2)).unwrap();
        let s = TransmissionSchedule::new(f, vec![2]);
        assert!(verify_decodability(&s, &si).unwrap().all_decoded());
    }

    #[test]
    fn nothing_known_nothing_sent() {
        let f = Field::gf256();
        let si = LinearSideInfo::none(f, vec![1]);
        let s = TransmissionSchedule::new(f, vec![1]);
        let rep = verify_decodability(&s, &si).unwrap();
        assert_eq!(rep.decode_success, vec![false]);
    }

    #[test]
    fn xor_with_side_information() {
        let f = Field::gf2();
        let g = crate::sideinfo::InformationGraph::from_edges(2, &[(0, 1)], false).unwrap();
        let si = crate::sideinfo::graph_to_linear(&g, &[1, 1], f).unwrap();
        let mut s = TransmissionSchedule::new(f, vec![1, 1]);
        s.push_xor(&[(0, 0), (1, 0)]).unwrap();
        let rep = verify_decodability(&s, &si).unwrap();
        assert_eq!(rep.decode_success, vec![true, true]);
        let none = LinearSideInfo::none(f, vec![1, 1]);
        assert_eq!(verify_decodability(&s, &none).unwrap().decode_success, vec![false, false]);
    }

    #[test]
    fn feedback_limits_reception() {
        let f = Field::gf2();
        let si = LinearSideInfo::none(f, vec![1, 1]);
        let mut s = TransmissionSchedule::new(f, vec![1, 1]);
        s.push(vec![Gf::ONE, Gf::ZERO], Some("01".parse().unwrap())).unwrap();
        s.push(vec![Gf::ZERO, Gf::ONE], Some("01".parse().unwrap())).unwrap();
        let rep = verify_decodability(&s, &si).unwrap();
        assert_eq!(rep.decode_success, vec![false, true]);
        assert_eq!(rep.final_rank, vec![0, 2]);
    }

    #[test]
    fn demand_mismatch_is_schema_error() {
        let f = Field::gf2();
        let si = LinearSideInfo::none(f, vec![1, 1]);
        let s = TransmissionSchedule::new(f, vec![2]);
        assert!(matches!(verify_decodability(&s, &si), Err(Error::Schema(_))));
    }
}
