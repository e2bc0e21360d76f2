use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parity::{BlockProgram, Parity, ParityFunction, ParitySource};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("side must be left or right, got {s:?}"))),
        }
    }
}

/// Window families `[near, far]` measured as distances from the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    /// `[⌈√(2^i)⌉, 2^i]` for `i = 4..=17`.
    Anchored,
    /// `[2^(i−1), 2^i]` for `i = 4..=17`.
    Dyadic,
    Custom(Vec<(i64, i64)>),
}

impl Schedule {
    pub fn windows(&self) -> Result<Vec<(i64, i64)>> {
        let w: Vec<(i64, i64)> = match self {
            Schedule::Anchored => (4..=17)
                .map(|i| {
                    let far = 1i64 << i;
                    let near = (far as f64).sqrt().ceil() as i64;
                    (near, far)
                })
                .collect(),
            Schedule::Dyadic => (4..=17).map(|i| (1i64 << (i - 1), 1i64 << i)).collect(),
            Schedule::Custom(w) => w.clone(),
        };
        validate(&w)?;
        Ok(w)
    }
}

impl std::str::FromStr for Schedule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "anchored" => Ok(Schedule::Anchored),
            "dyadic" => Ok(Schedule::Dyadic),
            _ => Err(Error::Parse(format!("unknown schedule {s:?}"))),
        }
    }
}

/// Both endpoints must run off to infinity with a growing gap.
fn validate(w: &[(i64, i64)]) -> Result<()> {
    if w.len() < 2 {
        return Err(Error::InvalidSchedule("need at least two windows".into()));
    }
    for (t, &(near, far)) in w.iter().enumerate() {
        if near < 1 || far <= near {
            return Err(Error::InvalidSchedule(format!("window {t} = [{near}, {far}] is not 1 <= near < far")));
        }
        if t > 0 {
            let (pn, pf) = w[t - 1];
            if near < pn {
                return Err(Error::InvalidSchedule(format!("window {t} moves its near end inwards")));
            }
            if far - near <= pf - pn {
                return Err(Error::InvalidSchedule(format!("window {t} does not widen")));
            }
        }
    }
    Ok(())
}

/// A function whose spectrum can be computed: finitely presented or generated by blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpectrumInput {
    Blocks(BlockProgram),
    Presented(ParityFunction),
}

impl SpectrumInput {
    fn source(&self) -> &dyn ParitySource {
        match self {
            SpectrumInput::Blocks(b) => b,
            SpectrumInput::Presented(p) => p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub lo: i64,
    pub hi: i64,
    pub density: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEstimate {
    pub side: Side,
    pub lower: Scalar,
    pub upper: Scalar,
    pub exact: bool,
    /// Largest change of either endpoint between the last half and the last quarter of the schedule.
    pub drift: f64,
    pub samples: Vec<SpectrumSample>,
}

/// Density spectrum on one side.
///
/// Eventually periodic inputs get the exact single point `odd/period` of
/// their tail. Block programs get `[min, max]` of the window densities over
/// the last half of the schedule, clamped to `[0, 1]`.
pub fn spectrum(input: &SpectrumInput, side: Side, schedule: &Schedule) -> Result<SpectrumEstimate> {
    let windows = schedule.windows()?;
    let src = input.source();
    let samples: Vec<SpectrumSample> = windows
        .iter()
        .map(|&(near, far)| {
            let (lo, hi) = match side {
                Side::Right => (near, far),
                Side::Left => (-far, -near),
            };
            SpectrumSample {
                lo,
                hi,
                density: Scalar::new(src.count_odd(lo, hi) as i64, hi - lo),
            }
        })
        .collect();
    if let SpectrumInput::Presented(p) = input {
        let tail = match side {
            Side::Left => p.left_tail(),
            Side::Right => p.right_tail(),
        };
        let point = Scalar::new(tail.occurrences(Parity::Odd), tail.period());
        return Ok(SpectrumEstimate {
            side,
            lower: point.clone(),
            upper: point,
            exact: true,
            drift: 0.0,
            samples,
        });
    }
    let range = |from: usize| {
        let tail = &samples[from..];
        let clamp = |x: &Scalar| x.clone().min(Scalar::one());
        let lo = tail.iter().map(|s| clamp(&s.density)).min().unwrap();
        let hi = tail.iter().map(|s| clamp(&s.density)).max().unwrap();
        (lo, hi)
    };
    let n = samples.len();
    let (lower, upper) = range(n / 2);
    let (ql, qu) = range(n - (n / 4).max(1));
    let drift = (ql.to_f64() - lower.to_f64()).abs().max((qu.to_f64() - upper.to_f64()).abs());
    Ok(SpectrumEstimate {
        side,
        lower,
        upper,
        exact: false,
        drift,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::BlockRule;

    #[test]
    fn exact_points() {
        let st = SpectrumInput::Presented(ParityFunction::p_st());
        let r = spectrum(&st, Side::Right, &Schedule::Anchored).unwrap();
        assert!(r.exact);
        assert_eq!((r.lower.clone(), r.upper), (Scalar::new(1, 2), Scalar::new(1, 2)));
        let plus = SpectrumInput::Presented(ParityFunction::p_plus());
        assert_eq!(spectrum(&plus, Side::Left, &Schedule::Anchored).unwrap().upper, Scalar::zero());
        assert_eq!(spectrum(&plus, Side::Right, &Schedule::Dyadic).unwrap().lower, Scalar::one());
    }

    #[test]
    fn geometric_blocks() {
        let b = SpectrumInput::Blocks(BlockProgram::new(Parity::Even, BlockRule::Geometric(2)).unwrap());
        for side in [Side::Left, Side::Right] {
            let e = spectrum(&b, side, &Schedule::Anchored).unwrap();
            assert!(!e.exact);
            let (lo, hi) = (e.lower.to_f64(), e.upper.to_f64());
            assert!((lo - 1.0 / 3.0).abs() < 0.02, "{lo}");
            assert!((hi - 2.0 / 3.0).abs() < 0.02, "{hi}");
        }
        // dyadic windows resolve single blocks
        let d = spectrum(&b, Side::Right, &Schedule::Dyadic).unwrap();
        assert!(d.lower.to_f64() < 0.01 && d.upper.to_f64() > 0.99);
    }

    #[test]
    fn schedule_validation() {
        assert!(Schedule::Custom(vec![(1, 4)]).windows().is_err());
        assert!(Schedule::Custom(vec![(1, 4), (2, 4)]).windows().is_err());
        assert!(Schedule::Custom(vec![(3, 8), (2, 20)]).windows().is_err());
        assert!(Schedule::Custom(vec![(0, 8), (2, 20)]).windows().is_err());
        assert!(Schedule::Custom(vec![(1, 8), (2, 20)]).windows().is_ok());
    }
}
