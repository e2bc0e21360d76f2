use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parity::{Parity, ParityFunction, TailRule};
use crate::scalar::Scalar;

/// Odd values of `p` on the inclusive range `[a, b]`.
pub fn odd_count(p: &ParityFunction, a: i64, b: i64) -> Result<u64> {
    if a > b {
        return Err(Error::InvalidRange(format!("[{a}, {b}] is empty")));
    }
    Ok(p.odd_count(a, b))
}

/// `Odd(p; a, b) / |b − a|`, with the inclusive count over the exclusive length.
pub fn density(p: &ParityFunction, a: i64, b: i64) -> Result<Scalar> {
    if a == b {
        return Err(Error::InvalidRange("density needs a != b".into()));
    }
    let (lo, hi) = (a.min(b), a.max(b));
    Ok(Scalar::new(p.odd_count(lo, hi) as i64, hi - lo))
}

/// A cardinality that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl Count {
    pub fn is_infinite(self) -> bool {
        self == Count::Infinite
    }

    fn plus(self, other: Count) -> Count {
        match (self, other) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a + b),
            _ => Count::Infinite,
        }
    }

    fn minus_one_if(self, cond: bool) -> Count {
        match self {
            Count::Finite(a) if cond => Count::Finite(a - 1),
            c => c,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => s.serialize_u64(*n),
            Count::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Count::Finite(n)),
            Raw::S(s) if s == "inf" => Ok(Count::Infinite),
            Raw::S(s) => Err(D::Error::custom(format!("expected a count or \"inf\", got {s:?}"))),
        }
    }
}

/// Odd and even counts on `(−∞, 0]` and `[0, +∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountInvariants {
    pub odd_neg: Count,
    pub even_neg: Count,
    pub odd_pos: Count,
    pub even_pos: Count,
}

/// Which parities occur infinitely often on one half-line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SidePattern {
    Mixed,
    Even,
    Odd,
}

impl SidePattern {
    fn of(odd: Count, even: Count) -> Self {
        match (odd.is_infinite(), even.is_infinite()) {
            (true, true) => SidePattern::Mixed,
            (true, false) => SidePattern::Odd,
            _ => SidePattern::Even,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SidePattern::Mixed => "Mixed",
            SidePattern::Even => "Even",
            SidePattern::Odd => "Odd",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParityClass {
    /// Finitely many odd or finitely many even values.
    Finite { even: Count, odd: Count },
    /// Patterns on the left and right half-lines; `(Mixed, Mixed)` is `Inf`.
    NonFinite { left: SidePattern, right: SidePattern },
}

impl ParityClass {
    pub fn is_inf(&self) -> bool {
        matches!(
            self,
            ParityClass::NonFinite {
                left: SidePattern::Mixed,
                right: SidePattern::Mixed
            }
        )
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ParityClass::Finite { .. })
    }

    /// `"m|n"` for finite functions, `"Inf"` or e.g. `"EvenOdd"` otherwise.
    pub fn label(&self) -> String {
        match self {
            ParityClass::Finite { even, odd } => format!("{even}|{odd}"),
            ParityClass::NonFinite {
                left: SidePattern::Mixed,
                right: SidePattern::Mixed,
            } => "Inf".into(),
            ParityClass::NonFinite { left, right } => format!("{}{}", left.name(), right.name()),
        }
    }

    /// The class after exchanging the two half-lines.
    pub fn mirrored(&self) -> Self {
        match *self {
            ParityClass::NonFinite { left, right } => ParityClass::NonFinite {
                left: right,
                right: left,
            },
            c => c,
        }
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub counts: CountInvariants,
    pub class: ParityClass,
}

#[derive(Serialize, Deserialize)]
struct ClassificationJson {
    class: String,
    finite: bool,
    counts: CountInvariants,
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassificationJson {
            class: self.class.label(),
            finite: self.class.is_finite(),
            counts: self.counts,
        }
        .serialize(s)
    }
}

fn half_count(tail: &TailRule, c: Parity, finite_part: u64) -> Count {
    if tail.contains(c) {
        Count::Infinite
    } else {
        Count::Finite(finite_part)
    }
}

pub fn classify(p: &ParityFunction) -> Classification {
    let lo = p.window_lo().min(0);
    let hi = p.window_hi().max(0);
    let counts = CountInvariants {
        odd_neg: half_count(p.left_tail(), Parity::Odd, p.odd_count(lo, 0)),
        even_neg: half_count(p.left_tail(), Parity::Even, p.even_count(lo, 0)),
        odd_pos: half_count(p.right_tail(), Parity::Odd, p.odd_count(0, hi)),
        even_pos: half_count(p.right_tail(), Parity::Even, p.even_count(0, hi)),
    };
    let zero_odd = p.at(0).is_odd();
    let odd = counts.odd_neg.plus(counts.odd_pos).minus_one_if(zero_odd);
    let even = counts.even_neg.plus(counts.even_pos).minus_one_if(!zero_odd);
    let class = if odd.is_infinite() && even.is_infinite() {
        ParityClass::NonFinite {
            left: SidePattern::of(counts.odd_neg, counts.even_neg),
            right: SidePattern::of(counts.odd_pos, counts.even_pos),
        }
    } else {
        ParityClass::Finite { even, odd }
    };
    Classification { counts, class }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_examples() {
        let st = ParityFunction::p_st();
        assert_eq!(odd_count(&st, 0, 3).unwrap(), 2);
        assert_eq!(odd_count(&ParityFunction::p_plus(), -4, -1).unwrap(), 0);
        assert_eq!(odd_count(&st, -5, 5).unwrap(), 6);
        assert!(odd_count(&st, 3, 2).is_err());
    }

    #[test]
    fn density_examples() {
        let st = ParityFunction::p_st();
        assert_eq!(density(&st, 0, 4).unwrap(), Scalar::new(1, 2));
        let odd = ParityFunction::constant(Parity::Odd);
        assert_eq!(density(&odd, 3, 10).unwrap(), Scalar::new(8, 7));
        for n in 1..20 {
            assert!(density(&ParityFunction::p_plus(), -2 * n, -1).unwrap().is_zero());
        }
        assert!(density(&st, 5, 5).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&ParityFunction::p_st()).class.label(), "Inf");
        let plus = classify(&ParityFunction::p_plus());
        assert_eq!(plus.counts.odd_neg, Count::Finite(1));
        assert_eq!(plus.counts.even_pos, Count::Finite(0));
        assert!(plus.counts.even_neg.is_infinite() && plus.counts.odd_pos.is_infinite());
        assert_eq!(plus.class.label(), "EvenOdd");
        let one = ParityFunction::with_flips(Parity::Even, &[0]);
        assert_eq!(classify(&one).class.label(), "inf|1");
        let holes = ParityFunction::with_flips(Parity::Odd, &[-3, 0, 4]);
        assert_eq!(classify(&holes).class.label(), "3|inf");
    }

    #[test]
    fn count_json() {
        let c = classify(&ParityFunction::p_plus());
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"class":"EvenOdd","finite":false,"counts":{"odd_neg":1,"even_neg":"inf","odd_pos":"inf","even_pos":0}}"#
        );
        let back: CountInvariants = serde_json::from_str(
            r#"{"odd_neg":1,"even_neg":"inf","odd_pos":"inf","even_pos":0}"#,
        )
        .unwrap();
        assert_eq!(back, c.counts);
    }
}
