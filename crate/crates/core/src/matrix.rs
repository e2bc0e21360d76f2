//! Finitely supported supermatrices and the graded bracket.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parity::{Parity, ParityFunction};
use crate::scalar::Scalar;

pub type Index = (i64, i64);

/// A finitely supported matrix indexed by ℤ×ℤ, graded by a parity function.
///
/// Zero entries are never stored, so `support()` is the literal support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    parity: Arc<ParityFunction>,
    entries: BTreeMap<Index, Scalar>,
}

impl SuperMatrix {
    pub fn zero(parity: Arc<ParityFunction>) -> Self {
        SuperMatrix {
            parity,
            entries: BTreeMap::new(),
        }
    }

    /// The elementary matrix `e_{ij}`.
    pub fn unit(parity: Arc<ParityFunction>, i: i64, j: i64) -> Self {
        let mut m = Self::zero(parity);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn from_entries(
        parity: Arc<ParityFunction>,
        entries: impl IntoIterator<Item = (i64, i64, Scalar)>,
    ) -> Self {
        let mut m = Self::zero(parity);
        for (i, j, v) in entries {
            m.add_at(i, j, &v);
        }
        m
    }

    pub fn parity(&self) -> &Arc<ParityFunction> {
        &self.parity
    }

    /// The same entries graded by another parity function.
    pub fn with_parity(&self, parity: Arc<ParityFunction>) -> Self {
        SuperMatrix {
            parity,
            entries: self.entries.clone(),
        }
    }

    pub fn get(&self, i: i64, j: i64) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: i64, j: i64, v: Scalar) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_at(&mut self, i: i64, j: i64, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_insert_with(Scalar::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (Index, &Scalar)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = Index> + '_ {
        self.entries.keys().copied()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Grade of the elementary position `(i, j)`.
    pub fn position_parity(&self, i: i64, j: i64) -> Parity {
        self.parity.at(i) + self.parity.at(j)
    }

    /// `Some(s)` when every stored entry has grade `s`; zero is homogeneous of both grades
    /// and reports `Even`.
    pub fn degree(&self) -> Option<Parity> {
        let mut it = self.entries.keys().map(|&(i, j)| self.position_parity(i, j));
        let first = match it.next() {
            None => return Some(Parity::Even),
            Some(p) => p,
        };
        it.all(|p| p == first).then_some(first)
    }

    pub fn homogeneous_part(&self, s: Parity) -> Self {
        SuperMatrix {
            parity: self.parity.clone(),
            entries: self
                .entries
                .iter()
                .filter(|(&(i, j), _)| self.position_parity(i, j) == s)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    /// Largest `|i - j|` over the support, or `None` for the zero matrix.
    pub fn band_radius(&self) -> Option<u64> {
        self.entries.keys().map(|&(i, j)| i.abs_diff(j)).max()
    }

    fn check_same_parity(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.parity, &other.parity) || self.parity == other.parity {
            Ok(())
        } else {
            Err(Error::ParityMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_parity(other)?;
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            out.add_at(i, j, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.parity.clone());
        }
        SuperMatrix {
            parity: self.parity.clone(),
            entries: self.entries.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Row-indexed view used by products.
    fn rows(&self) -> BTreeMap<i64, Vec<(i64, &Scalar)>> {
        let mut rows: BTreeMap<i64, Vec<(i64, &Scalar)>> = BTreeMap::new();
        for (&(i, k), v) in &self.entries {
            rows.entry(i).or_default().push((k, v));
        }
        rows
    }

    /// The graded bracket
    /// `[a,b]_ij = Σ_k a_ik b_kj − (−1)^{(p(i)+p(k))(p(j)+p(k))} b_ik a_kj`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_same_parity(other)?;
        let p = &*self.parity;
        let mut out = Self::zero(self.parity.clone());
        let other_rows = other.rows();
        for (&(i, k), a_ik) in &self.entries {
            if let Some(row) = other_rows.get(&k) {
                for &(j, b_kj) in row {
                    out.add_at(i, j, &(a_ik * b_kj));
                }
            }
        }
        let self_rows = self.rows();
        for (&(i, k), b_ik) in &other.entries {
            if let Some(row) = self_rows.get(&k) {
                let pk = p.at(k);
                let pi = p.at(i);
                for &(j, a_kj) in row {
                    let odd = ((pi + pk).is_odd()) && ((p.at(j) + pk).is_odd());
                    out.add_at(i, j, &(b_ik * a_kj).signed(!odd));
                }
            }
        }
        Ok(out)
    }

    /// `Σ_i (−1)^{p(i)} a_ii`.
    pub fn supertrace(&self) -> Scalar {
        self.entries
            .iter()
            .filter(|(&(i, j), _)| i == j)
            .map(|(&(i, _), v)| v.clone().signed(self.parity.at(i).is_odd()))
            .sum()
    }

    /// Smallest and largest row or column index in the support.
    pub fn index_range(&self) -> Option<(i64, i64)> {
        let lo = self.entries.keys().map(|&(i, j)| i.min(j)).min()?;
        let hi = self.entries.keys().map(|&(i, j)| i.max(j)).max()?;
        Some((lo, hi))
    }
}

// ---- wire format ----

#[derive(Serialize, Deserialize)]
struct SuperMatrixJson {
    parity: ParityFunction,
    entries: Vec<(i64, i64, Scalar)>,
}

impl Serialize for SuperMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SuperMatrixJson {
            parity: (*self.parity).clone(),
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), v)| (i, j, v.clone()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SuperMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = SuperMatrixJson::deserialize(deserializer)?;
        Ok(SuperMatrix::from_entries(Arc::new(j.parity), j.entries))
    }
}
