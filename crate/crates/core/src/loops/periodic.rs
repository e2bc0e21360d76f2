use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::SuperMatrix;
use crate::parity::ParityFunction;
use crate::scalar::Scalar;

use super::holds_everywhere;

/// How the parity function behaves under a shift by the period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PeriodicType {
    /// `p(i + k) = p(i)`.
    A,
    /// `p(i + k) = p(i) + 1`.
    B,
}

/// A banded matrix with `a_{i+k, j+k} = a_{ij}`, stored as the rows `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicBandMatrix {
    k: i64,
    band: u64,
    parity: Arc<ParityFunction>,
    kind: PeriodicType,
    cells: BTreeMap<(i64, i64), Scalar>,
}

impl PeriodicBandMatrix {
    /// The zero matrix; fails unless the parity function has the periodicity of `kind`.
    pub fn zero(k: i64, band: u64, parity: Arc<ParityFunction>, kind: PeriodicType) -> Result<Self> {
        if k < 1 {
            return Err(Error::PeriodicMismatch(format!("period must be positive, got {k}")));
        }
        let ok = holds_everywhere(&parity, k, |i| match kind {
            PeriodicType::A => parity.at(i + k) == parity.at(i),
            PeriodicType::B => parity.at(i + k) != parity.at(i),
        });
        if !ok {
            let want = match kind {
                PeriodicType::A => "p(i + k) = p(i)",
                PeriodicType::B => "p(i + k) = p(i) + 1",
            };
            return Err(Error::IncompatibleParity(format!("type {kind:?} with k = {k} needs {want}")));
        }
        Ok(PeriodicBandMatrix {
            k,
            band,
            parity,
            kind,
            cells: BTreeMap::new(),
        })
    }

    /// Builds a matrix from cells `(r, j, value)` with `0 <= r < k` and `|r − j| <= band`.
    pub fn from_cells(
        k: i64,
        band: u64,
        parity: Arc<ParityFunction>,
        kind: PeriodicType,
        cells: impl IntoIterator<Item = (i64, i64, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(k, band, parity, kind)?;
        for (r, j, v) in cells {
            out.set(r, j, v)?;
        }
        Ok(out)
    }

    pub fn period(&self) -> i64 {
        self.k
    }

    pub fn band(&self) -> u64 {
        self.band
    }

    pub fn kind(&self) -> PeriodicType {
        self.kind
    }

    pub fn parity(&self) -> &Arc<ParityFunction> {
        &self.parity
    }

    pub fn cells(&self) -> impl Iterator<Item = ((i64, i64), &Scalar)> {
        self.cells.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn set(&mut self, r: i64, j: i64, v: Scalar) -> Result<()> {
        if !(0..self.k).contains(&r) || r.abs_diff(j) > self.band {
            return Err(Error::PeriodicMismatch(format!(
                "cell ({r}, {j}) is outside rows 0..{} and band {}",
                self.k, self.band
            )));
        }
        if v.is_zero() {
            self.cells.remove(&(r, j));
        } else {
            self.cells.insert((r, j), v);
        }
        Ok(())
    }

    /// Entry `a_ij` of the full matrix.
    pub fn get(&self, i: i64, j: i64) -> Scalar {
        let r = i.rem_euclid(self.k);
        let shift = i - r;
        self.cells.get(&(r, j - shift)).cloned().unwrap_or_default()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.k != other.k {
            return Err(Error::PeriodicMismatch(format!("periods {} and {}", self.k, other.k)));
        }
        if self.kind != other.kind {
            return Err(Error::PeriodicMismatch(format!("types {:?} and {:?}", self.kind, other.kind)));
        }
        if *self.parity != *other.parity {
            return Err(Error::ParityMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.band = self.band.max(other.band);
        for (&(r, j), v) in &other.cells {
            let cur = out.cells.get(&(r, j)).cloned().unwrap_or_default();
            out.set(r, j, cur + v)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        out.cells = self
            .cells
            .iter()
            .map(|(&k, v)| (k, v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    /// The graded bracket of the full matrices, computed on the rows `0..k`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let band = self.band + other.band;
        let mut out = Self::zero(self.k, band, self.parity.clone(), self.kind)?;
        let p = &*self.parity;
        let mut acc: BTreeMap<(i64, i64), Scalar> = BTreeMap::new();
        for (&(r, l), x_rl) in &self.cells {
            let lo = l - other.band as i64;
            for j in lo..=l + other.band as i64 {
                let y_lj = other.get(l, j);
                if !y_lj.is_zero() {
                    *acc.entry((r, j)).or_default() += &(x_rl * &y_lj);
                }
            }
        }
        for (&(r, l), y_rl) in &other.cells {
            let (pr, pl) = (p.at(r), p.at(l));
            let lo = l - self.band as i64;
            for j in lo..=l + self.band as i64 {
                let x_lj = self.get(l, j);
                if x_lj.is_zero() {
                    continue;
                }
                let odd = (pr + pl).is_odd() && (p.at(j) + pl).is_odd();
                *acc.entry((r, j)).or_default() += &(y_rl * &x_lj).signed(!odd);
            }
        }
        for ((r, j), v) in acc {
            out.set(r, j, v)?;
        }
        Ok(out)
    }

    /// The entries with both indices in `[lo, hi]`, as a finite supermatrix.
    pub fn truncate(&self, lo: i64, hi: i64) -> SuperMatrix {
        let mut out = SuperMatrix::zero(self.parity.clone());
        let b = self.band as i64;
        for i in lo..=hi {
            for j in (i - b).max(lo)..=(i + b).min(hi) {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct PeriodicJson {
    k: i64,
    band: u64,
    parity: ParityFunction,
    #[serde(rename = "type")]
    kind: PeriodicType,
    cells: Vec<(i64, i64, Scalar)>,
}

impl Serialize for PeriodicBandMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PeriodicJson {
            k: self.k,
            band: self.band,
            parity: (*self.parity).clone(),
            kind: self.kind,
            cells: self.cells.iter().map(|(&(r, j), v)| (r, j, v.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PeriodicBandMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PeriodicJson::deserialize(d)?;
        PeriodicBandMatrix::from_cells(j.k, j.band, Arc::new(j.parity), j.kind, j.cells).map_err(serde::de::Error::custom)
    }
}
