//! Growth classes of infinite matrices, decided on a small descriptor grammar.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthClass {
    /// Finitely many entries in every row, column and in the first and third quadrants.
    G,
    /// `|i-j|^λ / |i+j| → 0` along the support for some `λ > 0`.
    L,
    /// The same limit for every `λ > 0`.
    O,
    /// Bounded distance from the diagonal.
    C,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GrowthClass::G => "g",
            GrowthClass::L => "l",
            GrowthClass::O => "o",
            GrowthClass::C => "c",
        };
        f.write_str(s)
    }
}

/// Shape of the support of a (possibly infinite) matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportProfile {
    FiniteSupport(BTreeSet<(i64, i64)>),
    /// `a_ij = 0` whenever `|i - j| > radius`.
    Band(u64),
    /// `a_ij = 0` whenever `|i - j| > coeff · max(|i|,|j|,1)^exponent`.
    ParametricBand { coeff: Scalar, exponent: Scalar },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthWitness {
    /// Band radius `c` of the constant-width class.
    Radius(u64),
    /// An exponent `λ` for which the limit vanishes.
    Lambda(Scalar),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthDecision {
    pub class: GrowthClass,
    pub member: bool,
    pub witness: Option<GrowthWitness>,
}

/// Decides whether a matrix with the given support profile lies in `class`.
pub fn class_membership(profile: &SupportProfile, class: GrowthClass) -> Result<GrowthDecision> {
    let decision = |member, witness| GrowthDecision {
        class,
        member,
        witness,
    };
    let band = |c: u64| match class {
        GrowthClass::C => GrowthWitness::Radius(c),
        GrowthClass::L => GrowthWitness::Lambda(Scalar::one()),
        _ => GrowthWitness::Radius(c),
    };
    match profile {
        SupportProfile::FiniteSupport(s) => {
            let c = s.iter().map(|&(i, j)| i.abs_diff(j)).max().unwrap_or(0);
            Ok(decision(true, Some(band(c))))
        }
        SupportProfile::Band(c) => Ok(decision(true, Some(band(*c)))),
        SupportProfile::ParametricBand { coeff, exponent } => {
            if *coeff < Scalar::zero() {
                return Err(Error::UnsupportedProfile(format!("negative coefficient {coeff}")));
            }
            if *exponent < Scalar::zero() || *exponent >= Scalar::one() {
                return Err(Error::UnsupportedProfile(format!(
                    "exponent {exponent} outside [0, 1)"
                )));
            }
            if exponent.is_zero() || coeff.is_zero() {
                // a bounded band in disguise
                let c = ceil_nonneg(coeff);
                return Ok(decision(true, Some(band(c))));
            }
            // along the band edge |i-j|^λ/|i+j| ~ |i|^{ελ-1}, which vanishes iff λ < 1/ε
            match class {
                GrowthClass::G => Ok(decision(true, None)),
                GrowthClass::L => {
                    let lambda = Scalar::one() / (Scalar::from_int(2) * exponent.clone());
                    Ok(decision(true, Some(GrowthWitness::Lambda(lambda))))
                }
                GrowthClass::O | GrowthClass::C => Ok(decision(false, None)),
            }
        }
    }
}

fn ceil_nonneg(x: &Scalar) -> u64 {
    use num::ToPrimitive;
    let n = x.numer();
    let d = x.denom();
    let q = (n + d - num::BigInt::from(1)) / d;
    q.to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_and_finite() {
        let d = class_membership(&SupportProfile::Band(3), GrowthClass::C).unwrap();
        assert!(d.member);
        assert_eq!(d.witness, Some(GrowthWitness::Radius(3)));
        let f = SupportProfile::FiniteSupport([(0, 5)].into_iter().collect());
        for c in [GrowthClass::G, GrowthClass::L, GrowthClass::O, GrowthClass::C] {
            assert!(class_membership(&f, c).unwrap().member);
        }
    }

    #[test]
    fn sublinear_band() {
        let p = SupportProfile::ParametricBand {
            coeff: Scalar::one(),
            exponent: Scalar::new(1, 2),
        };
        assert!(!class_membership(&p, GrowthClass::O).unwrap().member);
        assert!(!class_membership(&p, GrowthClass::C).unwrap().member);
        assert!(class_membership(&p, GrowthClass::G).unwrap().member);
        let l = class_membership(&p, GrowthClass::L).unwrap();
        assert_eq!(l.witness, Some(GrowthWitness::Lambda(Scalar::one())));

        // sample the limit expression along the band edge j = i + sqrt(i)
        let ratio = |i: f64, lambda: f64| i.sqrt().powf(lambda) / (2.0 * i + i.sqrt());
        assert!(ratio(1e12, 2.0) > 0.4);
        assert!(ratio(1e12, 1.0) < 1e-5);
    }

    #[test]
    fn outside_grammar() {
        let p = SupportProfile::ParametricBand {
            coeff: Scalar::one(),
            exponent: Scalar::one(),
        };
        assert!(matches!(
            class_membership(&p, GrowthClass::L),
            Err(Error::UnsupportedProfile(_))
        ));
    }

    #[test]
    fn zero_exponent_is_bounded() {
        let p = SupportProfile::ParametricBand {
            coeff: Scalar::new(5, 2),
            exponent: Scalar::zero(),
        };
        let d = class_membership(&p, GrowthClass::C).unwrap();
        assert!(d.member);
        assert_eq!(d.witness, Some(GrowthWitness::Radius(3)));
    }
}
