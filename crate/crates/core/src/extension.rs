//! The one-dimensional central extension by the cocycle `str([a,b] J)`.

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::matrix::SuperMatrix;
use crate::parity::ParityFunction;
use crate::scalar::Scalar;

/// Diagonal entry of `J`: `+1` on negative indices, `-1` on the rest.
pub fn j_sign(i: i64) -> i64 {
    if i < 0 {
        1
    } else {
        -1
    }
}

/// `Σ_i (−1)^{p(i)} [a,b]_ii J_ii`.
pub fn cocycle(a: &SuperMatrix, b: &SuperMatrix) -> Result<Scalar> {
    let c = a.bracket(b)?;
    Ok(j_weighted_supertrace(&c))
}

/// `str(x J)` for a single matrix.
pub fn j_weighted_supertrace(x: &SuperMatrix) -> Scalar {
    let p = x.parity();
    x.entries()
        .filter(|((i, j), _)| i == j)
        .map(|((i, _), v)| v.clone().signed(p.at(i).is_odd() != (j_sign(i) < 0)))
        .sum()
}

/// An element `mat + z·c` of the extended algebra, `c` the central generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedElement {
    pub mat: SuperMatrix,
    pub z: Scalar,
}

impl ExtendedElement {
    pub fn new(mat: SuperMatrix, z: Scalar) -> Self {
        ExtendedElement { mat, z }
    }

    pub fn from_matrix(mat: SuperMatrix) -> Self {
        ExtendedElement {
            mat,
            z: Scalar::zero(),
        }
    }

    pub fn parity(&self) -> &Arc<ParityFunction> {
        self.mat.parity()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(ExtendedElement {
            mat: self.mat.add(&other.mat)?,
            z: &self.z + &other.z,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ExtendedElement {
            mat: self.mat.scale(c),
            z: &self.z * c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero() && self.z.is_zero()
    }
}

/// `[(a, s), (b, t)] = ([a, b], str([a,b] J))`; central parts do not contribute.
pub fn extended_bracket(x: &ExtendedElement, y: &ExtendedElement) -> Result<ExtendedElement> {
    let mat = x.mat.bracket(&y.mat)?;
    let z = j_weighted_supertrace(&mat);
    Ok(ExtendedElement { mat, z })
}

#[derive(Serialize, Deserialize)]
struct ExtendedJson {
    parity: ParityFunction,
    entries: Vec<(i64, i64, Scalar)>,
    #[serde(default)]
    z: Scalar,
}

impl Serialize for ExtendedElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExtendedJson {
            parity: (**self.mat.parity()).clone(),
            entries: self
                .mat
                .entries()
                .map(|((i, j), v)| (i, j, v.clone()))
                .collect(),
            z: self.z.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExtendedElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = ExtendedJson::deserialize(deserializer)?;
        Ok(ExtendedElement {
            mat: SuperMatrix::from_entries(Arc::new(j.parity), j.entries),
            z: j.z,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pst() -> Arc<ParityFunction> {
        Arc::new(ParityFunction::p_st())
    }

    #[test]
    fn cocycle_examples() {
        let p = pst();
        let a = SuperMatrix::unit(p.clone(), -1, 0);
        let b = SuperMatrix::unit(p.clone(), 0, -1);
        assert_eq!(cocycle(&a, &b).unwrap(), Scalar::from_int(-2));
        assert_eq!(a.bracket(&b).unwrap().supertrace(), Scalar::zero());

        let c = SuperMatrix::unit(p.clone(), 0, 1);
        let d = SuperMatrix::unit(p.clone(), 2, 3);
        assert!(cocycle(&c, &d).unwrap().is_zero());
    }

    #[test]
    fn extended_examples() {
        let p = pst();
        let x = ExtendedElement::from_matrix(SuperMatrix::unit(p.clone(), -1, 0));
        let y = ExtendedElement::from_matrix(SuperMatrix::unit(p.clone(), 0, -1));
        let r = extended_bracket(&x, &y).unwrap();
        let expected = SuperMatrix::from_entries(
            p.clone(),
            [(-1, -1, Scalar::one()), (0, 0, Scalar::one())],
        );
        assert_eq!(r.mat, expected);
        assert_eq!(r.z, Scalar::from_int(-2));

        let central = ExtendedElement::new(SuperMatrix::zero(p.clone()), Scalar::one());
        assert!(extended_bracket(&central, &x).unwrap().is_zero());

        let d0 = ExtendedElement::from_matrix(SuperMatrix::unit(p.clone(), 0, 0));
        let d1 = ExtendedElement::from_matrix(SuperMatrix::unit(p, 1, 1));
        assert!(extended_bracket(&d0, &d1).unwrap().is_zero());
    }

    #[test]
    fn json_z_field() {
        let e: ExtendedElement =
            serde_json::from_str(r#"{"parity": "p_st", "entries": [[0, 0, 1]], "z": "-1/2"}"#).unwrap();
        assert_eq!(e.z, Scalar::new(-1, 2));
        let back: ExtendedElement = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
    }
}
