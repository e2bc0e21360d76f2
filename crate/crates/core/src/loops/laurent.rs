use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parity::{Parity, ParityFunction};
use crate::scalar::Scalar;

use super::periodic::{PeriodicBandMatrix, PeriodicType};

/// A Laurent polynomial in `t` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly(BTreeMap<i64, Scalar>);

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Scalar, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Scalar {
        self.0.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.0.iter().map(|(&e, c)| (e, c))
    }

    pub fn add_term(&mut self, exp: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(exp).or_default();
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.0 {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.0 {
            for (&e2, c2) in &other.0 {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly(self.0.iter().map(|(&e, c)| (e, -c.clone())).collect())
    }
}

/// Prints as `3t^-1 + 1 - 2t^2`; non-integer coefficients are parenthesized.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&e, c)) in self.0.iter().enumerate() {
            let negative = *c < Scalar::zero();
            let mag = c.abs();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag == Scalar::one();
            if e == 0 || !unit {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match e {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A `k × k` matrix over Laurent polynomials, graded by the parities of its rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentMatrix {
    pub parities: Vec<Parity>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn zero(parities: Vec<Parity>) -> Self {
        let k = parities.len();
        LaurentMatrix {
            parities,
            entries: vec![vec![LaurentPoly::zero(); k]; k],
        }
    }

    pub fn identity(parities: Vec<Parity>) -> Self {
        let mut m = Self::zero(parities);
        for r in 0..m.size() {
            m.entries[r][r] = LaurentPoly::monomial(Scalar::one(), 0);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.parities.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(LaurentPoly::is_zero)
    }

    /// `(m | n)`: numbers of even and odd rows.
    pub fn superdimension(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.size() - odd, odd)
    }

    /// The graded commutator; `t` is even.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.parities != other.parities {
            return Err(Error::ParityMismatch);
        }
        let k = self.size();
        let p = &self.parities;
        let mut out = Self::zero(p.clone());
        for r in 0..k {
            for s in 0..k {
                let mut acc = LaurentPoly::zero();
                for l in 0..k {
                    acc = acc.add(&self.entries[r][l].mul(&other.entries[l][s]));
                    let term = other.entries[r][l].mul(&self.entries[l][s]);
                    let odd = (p[r] + p[l]).is_odd() && (p[s] + p[l]).is_odd();
                    acc = acc.add(&if odd { term } else { term.neg() });
                }
                out.entries[r][s] = acc;
            }
        }
        Ok(out)
    }

    /// One line per row, entries separated by ` | `.
    pub fn grid(&self) -> String {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" | ") + "\n")
            .collect()
    }
}

/// `M(t)_{r,s} = Σ_d a_{r, s + dk} t^d` for `0 <= r, s < k`.
pub fn to_loop(x: &PeriodicBandMatrix) -> Result<LaurentMatrix> {
    if x.kind() != PeriodicType::A {
        return Err(Error::PeriodicMismatch("to_loop needs a type A matrix".into()));
    }
    let k = x.period();
    let parities = (0..k).map(|r| x.parity().at(r)).collect();
    let mut out = LaurentMatrix::zero(parities);
    for ((r, j), v) in x.cells() {
        let s = j.rem_euclid(k);
        let d = (j - s) / k;
        out.entries[r as usize][s as usize].add_term(d, v);
    }
    Ok(out)
}

/// Inverse of [`to_loop`] for a given parity function; the band is the smallest that fits.
pub fn from_loop(m: &LaurentMatrix, parity: Arc<ParityFunction>) -> Result<PeriodicBandMatrix> {
    let k = m.size() as i64;
    let mut cells = Vec::new();
    let mut band = 0u64;
    for (r, row) in m.entries.iter().enumerate() {
        for (s, poly) in row.iter().enumerate() {
            for (d, c) in poly.terms() {
                let j = s as i64 + d * k;
                band = band.max((r as i64).abs_diff(j));
                cells.push((r as i64, j, c.clone()));
            }
        }
    }
    let out = PeriodicBandMatrix::from_cells(k, band, parity, PeriodicType::A, cells)?;
    let parities: Vec<Parity> = (0..k).map(|r| out.parity().at(r)).collect();
    if parities != m.parities {
        return Err(Error::ParityMismatch);
    }
    Ok(out)
}
