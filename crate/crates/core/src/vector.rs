//! Exact integer vectors.
//!
//! All arithmetic is carried out on `i64` with checked operations; any
//! operation that would wrap returns [`Error::Overflow`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Deref, Index};

use crate::error::{Error, Result};

/// An integer vector. Ordered graded-lexicographically: first by 1-norm,
/// then lexicographically by entries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntVec(Vec<i64>);

impl IntVec {
    pub fn new(entries: Vec<i64>) -> Self {
        IntVec(entries)
    }

    pub fn zeros(len: usize) -> Self {
        IntVec(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        IntVec(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise positive part `u+`.
    pub fn pos_part(&self) -> IntVec {
        IntVec(self.0.iter().map(|&x| x.max(0)).collect())
    }

    /// Componentwise negative part `u-`, so that `u = u+ - u-`.
    pub fn neg_part(&self) -> Result<IntVec> {
        self.0
            .iter()
            .map(|&x| if x < 0 { x.checked_neg().ok_or(Error::Overflow("neg_part")) } else { Ok(0) })
            .collect::<Result<Vec<_>>>()
            .map(IntVec)
    }

    pub fn one_norm(&self) -> Result<i64> {
        self.0.iter().try_fold(0i64, |acc, &x| {
            acc.checked_add(x.checked_abs().ok_or(Error::Overflow("one_norm"))?)
                .ok_or(Error::Overflow("one_norm"))
        })
    }

    fn norm_wide(&self) -> i128 {
        self.0.iter().map(|&x| (x as i128).abs()).sum()
    }

    pub fn checked_add(&self, other: &IntVec) -> Result<IntVec> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow("vector addition")))
            .collect::<Result<Vec<_>>>()
            .map(IntVec)
    }

    pub fn checked_sub(&self, other: &IntVec) -> Result<IntVec> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b).ok_or(Error::Overflow("vector subtraction")))
            .collect::<Result<Vec<_>>>()
            .map(IntVec)
    }

    pub fn checked_neg(&self) -> Result<IntVec> {
        self.0
            .iter()
            .map(|&a| a.checked_neg().ok_or(Error::Overflow("vector negation")))
            .collect::<Result<Vec<_>>>()
            .map(IntVec)
    }

    pub fn checked_scale(&self, k: i64) -> Result<IntVec> {
        self.0
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(Error::Overflow("vector scaling")))
            .collect::<Result<Vec<_>>>()
            .map(IntVec)
    }

    /// Sign-flips `u` so its first nonzero entry is positive.
    pub fn canonicalize(&self) -> Result<IntVec> {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.checked_neg(),
            _ => Ok(self.clone()),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().find(|&&x| x != 0).is_none_or(|&x| x > 0)
    }

    /// One character per coordinate: `+`, `-` or `0`.
    pub fn sign_pattern(&self) -> String {
        self.0
            .iter()
            .map(|&x| match x.cmp(&0) {
                Ordering::Greater => '+',
                Ordering::Less => '-',
                Ordering::Equal => '0',
            })
            .collect()
    }

    /// `self ≥ other` componentwise.
    pub fn dominates(&self, other: &IntVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// `self > other` in the sense used throughout: `≥` componentwise and not equal.
    pub fn strictly_dominates(&self, other: &IntVec) -> bool {
        self.dominates(other) && self != other
    }

    /// `self ⊑ other`: `self+ ≤ other+` and `self- ≤ other-`.
    pub fn conformal_le(&self, other: &IntVec) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| {
            if a > 0 {
                b >= a
            } else if a < 0 {
                b <= a
            } else {
                true
            }
        })
    }

    /// No coordinate where one vector is positive and the other negative.
    pub fn sign_compatible(&self, other: &IntVec) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| !((a > 0 && b < 0) || (a < 0 && b > 0)))
    }

    pub fn support_intersects(&self, other: &IntVec) -> bool {
        self.0.iter().zip(&other.0).any(|(&a, &b)| a != 0 && b != 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }
}

impl Deref for IntVec {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl Index<usize> for IntVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl From<Vec<i64>> for IntVec {
    fn from(v: Vec<i64>) -> Self {
        IntVec(v)
    }
}

impl From<&[i64]> for IntVec {
    fn from(v: &[i64]) -> Self {
        IntVec(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for IntVec {
    fn from(v: [i64; N]) -> Self {
        IntVec(v.to_vec())
    }
}

impl Ord for IntVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm_wide()
            .cmp(&other.norm_wide())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for IntVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Canonicalizes every vector, then sorts and deduplicates.
pub fn canonical_set<I: IntoIterator<Item = IntVec>>(vs: I) -> Result<Vec<IntVec>> {
    let mut out = vs
        .into_iter()
        .map(|v| v.canonicalize())
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}
