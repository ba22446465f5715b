//! Counter vectors and rule deltas.
//!
//! Configurations carry vectors over ℕ, rule labels carry vectors over ℤ.
//! Entries are arbitrary precision: desk-scale instances stay tiny, but
//! gadget constants (tower values) can be large.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

pub type Nat = BigUint;
pub type Int = BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VecError {
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// A counter vector in ℕ^d.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CVec(pub Vec<Nat>);

/// A rule delta in ℤ^d.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Delta(pub Vec<Int>);

impl CVec {
    pub fn zeros(dim: usize) -> Self {
        CVec(vec![Nat::zero(); dim])
    }

    pub fn from_u64s(entries: &[u64]) -> Self {
        CVec(entries.iter().map(|&n| Nat::from(n)).collect())
    }

    pub fn unit(dim: usize, coord: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[coord] = Nat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|n| n.is_zero())
    }

    /// Componentwise v + u over ℤ; `None` when some entry would go negative.
    pub fn checked_add(&self, delta: &Delta) -> Option<CVec> {
        assert_eq!(self.dim(), delta.dim(), "dimension mismatch");
        let mut out = Vec::with_capacity(self.dim());
        for (v, u) in self.0.iter().zip(delta.0.iter()) {
            let sum = Int::from(v.clone()) + u;
            if sum.is_negative() {
                return None;
            }
            out.push(sum.to_biguint().unwrap());
        }
        Some(CVec(out))
    }

    pub fn add(&self, other: &CVec) -> CVec {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        CVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise subtraction; `None` when `other` exceeds `self` somewhere.
    pub fn checked_sub(&self, other: &CVec) -> Option<CVec> {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let mut out = Vec::with_capacity(self.dim());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(CVec(out))
    }

    /// Componentwise ≤ (the product ordering).  Named distinctly from
    /// `PartialOrd::le`, which is the derived lexicographic order.
    pub fn leq(&self, other: &CVec) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &CVec) -> Result<CVec, VecError> {
        if self.dim() != other.dim() {
            return Err(VecError::LengthMismatch(self.dim(), other.dim()));
        }
        Ok(CVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        ))
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &CVec) -> Result<CVec, VecError> {
        if self.dim() != other.dim() {
            return Err(VecError::LengthMismatch(self.dim(), other.dim()));
        }
        Ok(CVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        ))
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// The largest entry, or zero for the empty vector.
    pub fn max_entry(&self) -> Nat {
        self.0.iter().max().cloned().unwrap_or_else(Nat::zero)
    }
}

impl Delta {
    pub fn zeros(dim: usize) -> Self {
        Delta(vec![Int::zero(); dim])
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        Delta(entries.iter().map(|&n| Int::from(n)).collect())
    }

    /// ±1 on a single coordinate.
    pub fn unit(dim: usize, coord: usize, sign: i64) -> Self {
        let mut d = Self::zeros(dim);
        d.0[coord] = Int::from(sign);
        d
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|n| n.is_zero())
    }

    /// Sum of absolute values (number of unit steps in a chain decomposition).
    pub fn l1_norm(&self) -> Nat {
        self.0
            .iter()
            .map(|n| n.abs().to_biguint().unwrap())
            .fold(Nat::zero(), |a, b| a + b)
    }

    /// The positive and negative parts: `u = u_plus − u_minus` with both
    /// parts in ℕ^d and disjoint supports.
    pub fn split(&self) -> (CVec, CVec) {
        let mut plus = Vec::with_capacity(self.dim());
        let mut minus = Vec::with_capacity(self.dim());
        for n in &self.0 {
            if n.is_positive() {
                plus.push(n.to_biguint().unwrap());
                minus.push(Nat::zero());
            } else {
                plus.push(Nat::zero());
                minus.push(n.abs().to_biguint().unwrap());
            }
        }
        (CVec(plus), CVec(minus))
    }

    /// Largest absolute value among negative entries (`max⁻`).
    pub fn max_neg(&self) -> Nat {
        self.split().1.max_entry()
    }

    /// Largest positive entry (`max⁺`).
    pub fn max_pos(&self) -> Nat {
        self.split().0.max_entry()
    }
}

/// Positive/negative parts of a delta; see [`Delta::split`].
pub fn split_delta(u: &Delta) -> (CVec, CVec) {
    u.split()
}

impl fmt::Display for CVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for CVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_delta_examples() {
        let (p, m) = split_delta(&Delta::from_i64s(&[-2, 1, 0]));
        assert_eq!(p, CVec::from_u64s(&[0, 1, 0]));
        assert_eq!(m, CVec::from_u64s(&[2, 0, 0]));

        let (p, m) = split_delta(&Delta::from_i64s(&[0, 0]));
        assert_eq!(p, CVec::from_u64s(&[0, 0]));
        assert_eq!(m, CVec::from_u64s(&[0, 0]));

        let (p, m) = split_delta(&Delta::from_i64s(&[3, -3]));
        assert_eq!(p, CVec::from_u64s(&[3, 0]));
        assert_eq!(m, CVec::from_u64s(&[0, 3]));
    }

    #[test]
    fn split_parts_recompose_with_disjoint_support() {
        for raw in [[-5i64, 7], [0, 0], [2, -2]] {
            let u = Delta::from_i64s(&raw);
            let (p, m) = u.split();
            for i in 0..2 {
                let diff = Int::from(p.0[i].clone()) - Int::from(m.0[i].clone());
                assert_eq!(diff, u.0[i]);
                assert!(p.0[i].is_zero() || m.0[i].is_zero());
            }
        }
    }

    #[test]
    fn meet_join_support_examples() {
        let a = CVec::from_u64s(&[2, 5]);
        let b = CVec::from_u64s(&[3, 1]);
        assert_eq!(a.meet(&b).unwrap(), CVec::from_u64s(&[2, 1]));
        let c = CVec::from_u64s(&[1, 3]);
        let d = CVec::from_u64s(&[2, 0]);
        assert_eq!(c.join(&d).unwrap(), CVec::from_u64s(&[2, 3]));
        // 1-based in prose, 0-based indices here.
        assert_eq!(CVec::from_u64s(&[0, 4, 0, 1]).support(), vec![1, 3]);
    }

    #[test]
    fn meet_length_mismatch_is_an_error() {
        let a = CVec::from_u64s(&[1]);
        let b = CVec::from_u64s(&[1, 2]);
        assert!(a.meet(&b).is_err());
        assert!(a.join(&b).is_err());
    }

    #[test]
    fn checked_add_detects_negative_results() {
        let v = CVec::from_u64s(&[3, 2, 0]);
        let u = Delta::from_i64s(&[0, -1, 2]);
        assert_eq!(v.checked_add(&u).unwrap(), CVec::from_u64s(&[3, 1, 2]));
        let u = Delta::from_i64s(&[0, 0, -1]);
        assert_eq!(v.checked_add(&u), None);
    }
}
