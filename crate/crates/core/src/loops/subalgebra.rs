use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SuperMatrix;
use crate::parity::ParityFunction;
use crate::scalar::Scalar;

use super::holds_everywhere;

/// Which classical-type subalgebra to cut out.
///
/// Each kind comes with an involutive automorphism Θ; members are its fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum InvolutionSpec {
    /// Reflection `i ↦ −i`; needs `p(i) = p(−i)` and `p(0) = 0`.
    B,
    /// Reflection `i ↦ 1 − i`; needs `p(i) = p(1 − i)`.
    D,
    /// Reflection `i ↦ 1 − i`; needs `p(i) = p(1 − i) + 1`.
    Pe,
    /// Commutant of the odd involution pairing `offset + 2r ↔ offset + 2r + 1`.
    Q { offset: i64 },
}

impl InvolutionSpec {
    pub fn q() -> Self {
        InvolutionSpec::Q { offset: 0 }
    }

    pub fn all() -> [InvolutionSpec; 4] {
        [InvolutionSpec::B, InvolutionSpec::D, InvolutionSpec::Pe, InvolutionSpec::q()]
    }

    /// The index involution underlying Θ.
    pub fn index_map(&self, i: i64) -> i64 {
        match *self {
            InvolutionSpec::B => -i,
            InvolutionSpec::D | InvolutionSpec::Pe => 1 - i,
            InvolutionSpec::Q { offset } => {
                if (i - offset).rem_euclid(2) == 0 {
                    i + 1
                } else {
                    i - 1
                }
            }
        }
    }

    /// Fails with `IncompatibleParity` unless `p` meets the kind's requirement.
    pub fn check(&self, p: &ParityFunction) -> Result<()> {
        let ok = match self {
            InvolutionSpec::B => p.at(0).bit() == 0 && holds_everywhere(p, 0, |i| p.at(i) == p.at(-i)),
            InvolutionSpec::D => holds_everywhere(p, 1, |i| p.at(i) == p.at(1 - i)),
            InvolutionSpec::Pe | InvolutionSpec::Q { .. } => {
                holds_everywhere(p, 2, |i| p.at(i) != p.at(self.index_map(i)))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IncompatibleParity(format!("{self} needs {}", self.requirement())))
        }
    }

    fn requirement(&self) -> &'static str {
        match self {
            InvolutionSpec::B => "p(i) = p(-i) and p(0) = 0",
            InvolutionSpec::D => "p(i) = p(1 - i)",
            InvolutionSpec::Pe => "p(i) = p(1 - i) + 1",
            InvolutionSpec::Q { .. } => "the pairing to swap parities",
        }
    }

    /// Sign gauge on the basis vectors for the reflection kinds.
    fn gauge(&self, p: &ParityFunction, i: i64) -> bool {
        if !p.at(i).is_odd() {
            return false;
        }
        match self {
            InvolutionSpec::B => i < 0,
            InvolutionSpec::D => i < 1,
            _ => false,
        }
    }

    /// Applies Θ. The reflection kinds use the negative super-transpose with
    /// respect to an invariant form; `q` conjugates by the pairing with the
    /// grading sign.
    pub fn apply(&self, a: &SuperMatrix) -> Result<SuperMatrix> {
        let p = a.parity().clone();
        self.check(&p)?;
        let mut out = SuperMatrix::zero(p.clone());
        for ((u, v), x) in a.entries() {
            let (i, j, negate) = match self {
                InvolutionSpec::Q { .. } => {
                    let odd = (p.at(u) + p.at(v)).is_odd();
                    (self.index_map(u), self.index_map(v), odd)
                }
                _ => {
                    let (i, j) = (self.index_map(v), self.index_map(u));
                    let twist = (p.at(i) + p.at(j)).is_odd() && p.at(j).is_odd();
                    let g = self.gauge(&p, i) != self.gauge(&p, j);
                    (i, j, !(twist ^ g))
                }
            };
            out.add_at(i, j, &x.clone().signed(negate));
        }
        Ok(out)
    }
}

impl fmt::Display for InvolutionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionSpec::B => f.write_str("b"),
            InvolutionSpec::D => f.write_str("d"),
            InvolutionSpec::Pe => f.write_str("pe"),
            InvolutionSpec::Q { offset: 0 } => f.write_str("q"),
            InvolutionSpec::Q { offset } => write!(f, "q:{offset}"),
        }
    }
}

impl FromStr for InvolutionSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b" | "B" => Ok(InvolutionSpec::B),
            "d" | "D" => Ok(InvolutionSpec::D),
            "pe" => Ok(InvolutionSpec::Pe),
            "q" => Ok(InvolutionSpec::q()),
            _ => match s.strip_prefix("q:").map(str::parse) {
                Some(Ok(offset)) => Ok(InvolutionSpec::Q { offset }),
                _ => Err(Error::Parse(format!("unknown subalgebra kind {s:?}"))),
            },
        }
    }
}

pub fn subalgebra_member(a: &SuperMatrix, spec: InvolutionSpec) -> Result<bool> {
    Ok(spec.apply(a)? == *a)
}

/// `½(a + Θa)`: idempotent, fixes members, image is the member set.
pub fn subalgebra_project(a: &SuperMatrix, spec: InvolutionSpec) -> Result<SuperMatrix> {
    Ok(a.add(&spec.apply(a)?)?.scale(&Scalar::new(1, 2)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::parity::parse_word;

    fn st() -> Arc<ParityFunction> {
        Arc::new(ParityFunction::p_st())
    }

    fn d_compatible() -> Arc<ParityFunction> {
        Arc::new(ParityFunction::periodic_everywhere(parse_word("0011").unwrap()))
    }

    fn e(p: &Arc<ParityFunction>, i: i64, j: i64) -> SuperMatrix {
        SuperMatrix::unit(p.clone(), i, j)
    }

    #[test]
    fn examples() {
        let p = st();
        // even block: a_ij = −a_{−j,−i}
        let b = e(&p, 0, 2).sub(&e(&p, -2, 0)).unwrap();
        assert!(subalgebra_member(&b, InvolutionSpec::B).unwrap());
        assert!(!subalgebra_member(&e(&p, 0, 2), InvolutionSpec::B).unwrap());
        let q = e(&p, 0, 2).add(&e(&p, 1, 3)).unwrap();
        assert!(subalgebra_member(&q, InvolutionSpec::q()).unwrap());
        let d = d_compatible();
        assert!(!subalgebra_member(&e(&d, 0, 1), InvolutionSpec::D).unwrap());
    }

    #[test]
    fn parity_requirements() {
        let odd0 = Arc::new(ParityFunction::constant(crate::parity::Parity::Odd));
        let x = SuperMatrix::zero(odd0);
        assert!(matches!(InvolutionSpec::B.apply(&x), Err(Error::IncompatibleParity(_))));
        assert!(InvolutionSpec::D.check(&ParityFunction::p_st()).is_err());
        assert!(InvolutionSpec::Pe.check(&ParityFunction::p_st()).is_ok());
        assert!(InvolutionSpec::D.check(&d_compatible()).is_ok());
        assert!(InvolutionSpec::q().check(&ParityFunction::p_plus()).is_err());
        assert!(InvolutionSpec::B.check(&ParityFunction::p_plus()).is_err());
    }

    /// Θ is an involution and respects the bracket on a spread of unit pairs.
    #[test]
    fn involutive_automorphism() {
        for (spec, p) in [
            (InvolutionSpec::B, st()),
            (InvolutionSpec::Pe, st()),
            (InvolutionSpec::q(), st()),
            (InvolutionSpec::D, d_compatible()),
        ] {
            for (i, j, k, l) in [(0, 1, 1, -1), (-1, 2, 2, 0), (1, 1, 1, -2), (0, -1, -1, 0), (2, 3, 3, 1)] {
                let a = e(&p, i, j).add(&e(&p, j, k).scale(&Scalar::from_int(3))).unwrap();
                let b = e(&p, k, l).add(&e(&p, l, i)).unwrap();
                assert_eq!(spec.apply(&spec.apply(&a).unwrap()).unwrap(), a, "{spec}");
                let lhs = spec.apply(&a.bracket(&b).unwrap()).unwrap();
                let rhs = spec.apply(&a).unwrap().bracket(&spec.apply(&b).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{spec} on ({i},{j},{k},{l})");
            }
        }
    }

    #[test]
    fn projection() {
        let p = st();
        let a = e(&p, 0, 1).add(&e(&p, 2, -1).scale(&Scalar::from_int(5))).unwrap();
        for spec in [InvolutionSpec::B, InvolutionSpec::Pe, InvolutionSpec::q()] {
            let pa = subalgebra_project(&a, spec).unwrap();
            assert!(subalgebra_member(&pa, spec).unwrap());
            assert_eq!(subalgebra_project(&pa, spec).unwrap(), pa);
        }
        assert_eq!("q:3".parse::<InvolutionSpec>().unwrap(), InvolutionSpec::Q { offset: 3 });
        assert_eq!(InvolutionSpec::Q { offset: 3 }.to_string(), "q:3");
    }
}
