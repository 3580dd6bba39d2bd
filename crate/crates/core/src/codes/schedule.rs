//! Transmission schedules over the global packet index space.
//!
//! Receiver `i` owns coordinates `offset(i) .. offset(i) + k_i`, where
//! `offset(i) = k_0 + ... + k_{i-1}`. On disk a schedule is a bare JSON
//! array of slots:
//!
//! ```json
//! [{"coeffs": [[0, 1, 1], [1, 0, 1]], "feedback": "10"}]
//! ```
//!
//! Each triple is `[receiver, packet_index, coefficient]`; `feedback` is
//! present only for channel-dependent schedules.

use serde::{Deserialize, Serialize};

use crate::channel::ErasurePattern;
use crate::error::{Error, Result};
use crate::gf::{Field, Gf, GfVector};

/// One coded transmission.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub coeffs: GfVector,
    /// Erasure pattern observed for this slot, if the channel was random.
    pub feedback: Option<ErasurePattern>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransmissionSchedule {
    field: &'static Field,
    demands: Vec<usize>,
    offsets: Vec<usize>,
    slots: Vec<Slot>,
}

/// Serialized form of a slot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SparseSlot {
    pub coeffs: Vec<(usize, usize, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feedback: Option<String>,
}

pub fn offsets(demands: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    demands
        .iter()
        .map(|&k| {
            let o = acc;
            acc += k;
            o
        })
        .collect()
}

impl TransmissionSchedule {
    pub fn new(field: &'static Field, demands: Vec<usize>) -> Self {
        TransmissionSchedule {
            field,
            offsets: offsets(&demands),
            demands,
            slots: Vec::new(),
        }
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn demands(&self) -> &[usize] {
        &self.demands
    }

    pub fn n_receivers(&self) -> usize {
        self.demands.len()
    }

    /// Total number of packets, the dimension of every coefficient vector.
    pub fn dim(&self) -> usize {
        self.demands.iter().sum()
    }

    pub fn offset(&self, receiver: usize) -> usize {
        self.offsets[receiver]
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Appends a slot after checking its dimension and that it is not all zero.
    pub fn push(&mut self, coeffs: GfVector, feedback: Option<ErasurePattern>) -> Result<()> {
        if coeffs.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::schema(format!("slot {} has no nonzero coefficient", self.len())));
        }
        if let Some(p) = feedback {
            if p.len() != self.n_receivers() {
                return Err(Error::schema(format!(
                    "slot {} feedback has {} entries for {} receivers",
                    self.len(),
                    p.len(),
                    self.n_receivers()
                )));
            }
        }
        self.slots.push(Slot { coeffs, feedback });
        Ok(())
    }

    /// Appends the XOR of the given `(receiver, packet_index)` packets.
    pub fn push_xor(&mut self, packets: &[(usize, usize)]) -> Result<()> {
        let mut v = vec![Gf::ZERO; self.dim()];
        for &(i, l) in packets {
            if i >= self.n_receivers() || l >= self.demands[i] {
                return Err(Error::Domain(format!(
                    "packet ({i}, {l}) is outside the demand vector {:?}",
                    self.demands
                )));
            }
            v[self.offsets[i] + l] += Gf::ONE;
        }
        self.push(v, None)
    }

    pub fn to_sparse(&self) -> Vec<SparseSlot> {
        self.slots
            .iter()
            .map(|s| {
                let mut coeffs = Vec::new();
                for (i, (&off, &k)) in self.offsets.iter().zip(&self.demands).enumerate() {
                    for l in 0..k {
                        let c = s.coeffs[off + l];
                        if !c.is_zero() {
                            coeffs.push((i, l, c.value() as u32));
                        }
                    }
                }
                SparseSlot {
                    coeffs,
                    feedback: s.feedback.map(|p| p.to_string()),
                }
            })
            .collect()
    }

    pub fn from_sparse(field: &'static Field, demands: Vec<usize>, slots: &[SparseSlot]) -> Result<Self> {
        let mut out = TransmissionSchedule::new(field, demands);
        for (t, s) in slots.iter().enumerate() {
            let mut v = vec![Gf::ZERO; out.dim()];
            for &(i, l, c) in &s.coeffs {
                if i >= out.n_receivers() || l >= out.demands[i] {
                    return Err(Error::schema(format!(
                        "slot {t}: packet ({i}, {l}) is outside the demand vector {:?}",
                        out.demands
                    )));
                }
                let c = field
                    .element(c)
                    .map_err(|e| Error::schema(format!("slot {t}: {e}")))?;
                v[out.offsets[i] + l] += c;
            }
            let feedback = s
                .feedback
                .as_deref()
                .map(str::parse::<ErasurePattern>)
                .transpose()
                .map_err(|e| Error::schema(format!("slot {t}: {e}")))?;
            out.push(v, feedback)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_sparse()).expect("slots serialize")
    }

    pub fn from_json(field: &'static Field, demands: Vec<usize>, text: &str) -> Result<Self> {
        let slots: Vec<SparseSlot> =
            serde_json::from_str(text).map_err(|e| Error::schema(format!("schedule: {e}")))?;
        TransmissionSchedule::from_sparse(field, demands, &slots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_are_prefix_sums() {
        assert_eq!(offsets(&[2, 0, 3]), vec![0, 2, 2]);
    }

    #[test]
    fn rejects_zero_and_misfit_slots() {
        let mut s = TransmissionSchedule::new(Field::gf2(), vec![1, 2]);
        assert!(s.push(vec![Gf::ZERO; 3], None).is_err());
        assert!(s.push(vec![Gf::ONE; 2], None).is_err());
        assert!(s.push_xor(&[(0, 1)]).is_err());
        assert!(s.push_xor(&[(1, 0), (1, 0)]).is_err());
        s.push_xor(&[(0, 0), (1, 1)]).unwrap();
        assert_eq!(s.slots()[0].coeffs, vec![Gf::ONE, Gf::ZERO, Gf::ONE]);
    }

    #[test]
    fn json_round_trip() {
        let f = Field::gf256();
        let mut s = TransmissionSchedule::new(f, vec![2, 1]);
        s.push(vec![Gf(3), Gf::ZERO, Gf(200)], Some("10".parse().unwrap())).unwrap();
        s.push_xor(&[(0, 1)]).unwrap();
        let text = s.to_json();
        let back = TransmissionSchedule::from_json(f, vec![2, 1], &text).unwrap();
        assert_eq!(back, s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["coeffs"], serde_json::json!([[0, 0, 3], [1, 0, 200]]));
        assert_eq!(v[0]["feedback"], "10");
        assert!(v[1].get("feedback").is_none());
    }

    #[test]
    fn json_errors() {
        let f = Field::gf2();
        assert!(TransmissionSchedule::from_json(f, vec![1], r#"[{"coeffs": [[0, 0, 2]]}]"#).is_err());
        assert!(TransmissionSchedule::from_json(f, vec![1], r#"[{"coeffs": [[1, 0, 1]]}]"#).is_err());
        assert!(TransmissionSchedule::from_json(f, vec![1], r#"[{"coeffs": []}]"#).is_err());
        assert!(TransmissionSchedule::from_json(f, vec![1], r#"[{"coeffs": [[0,0,1]], "x": 1}]"#).is_err());
        assert!(TransmissionSchedule::from_json(f, vec![1], r#"[{"coeffs": [[0,0,1]], "feedback": "11"}]"#).is_err());
    }
}
