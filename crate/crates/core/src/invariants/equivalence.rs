use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parity::{lcm, Parity, ParityFunction, TailRule};
use crate::permutation::{FinPermutation, Group, MembershipCertificate, TailMap};
use crate::scalar::Scalar;

use super::classify::{classify, ParityClass};

/// Result of an equivalence decision.
///
/// When `equivalent` holds, `sigma` satisfies `p1 ∘ sigma = p2`, or
/// `p1 ∘ sigma ∘ tau = p2` when `via_tau` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub equivalent: bool,
    pub group: Group,
    pub sigma: Option<FinPermutation>,
    pub via_tau: bool,
    pub certificate: Option<MembershipCertificate>,
    pub reason: String,
}

impl EquivalenceWitness {
    fn no(group: Group, reason: impl Into<String>) -> Self {
        EquivalenceWitness {
            equivalent: false,
            group,
            sigma: None,
            via_tau: false,
            certificate: None,
            reason: reason.into(),
        }
    }

    /// Applies the witness to `p1`.
    pub fn replay(&self, p1: &ParityFunction) -> Option<ParityFunction> {
        let sigma = self.sigma.as_ref()?;
        let q = sigma.act_on_parity(p1);
        Some(if self.via_tau {
            FinPermutation::tau().act_on_parity(&q)
        } else {
            q
        })
    }
}

/// Decides whether `p2 = p1 ∘ σ` (or `p1 ∘ σ ∘ τ`) for some σ in `group`,
/// and constructs σ when it does.
pub fn equivalent(p1: &ParityFunction, p2: &ParityFunction, group: Group) -> Result<EquivalenceWitness> {
    let c1 = classify(p1).class;
    let c2 = classify(p2).class;
    match (c1.is_finite(), c2.is_finite()) {
        (true, true) => return finite_case(p1, p2, c1, c2, group),
        (true, false) | (false, true) => {
            return Ok(EquivalenceWitness::no(
                group,
                format!("one function is finite ({c1} vs {c2})"),
            ))
        }
        (false, false) => {}
    }
    let tau = FinPermutation::tau();
    let p2_flipped = tau.act_on_parity(p2);
    match group {
        Group::Sg | Group::Sl | Group::SZ => {
            if c1 == c2 {
                witness(p1, p2, p2, group, false, format!("same class {c1}"))
            } else if c1.mirrored() == c2 {
                witness(p1, &p2_flipped, p2, group, true, format!("class {c1} mirrors {c2}"))
            } else if group == Group::SZ {
                Err(Error::Unsupported(
                    "S_Z-equivalence of non-finite functions in different classes has no witness in the permutation grammar".into(),
                ))
            } else {
                Ok(EquivalenceWitness::no(group, format!("classes differ: {c1} vs {c2}")))
            }
        }
        Group::Sc | Group::So | Group::Sn | Group::Sm => {
            let s1 = exact_spectra(p1);
            let s2 = exact_spectra(p2);
            let describe = |s: &(Scalar, Scalar)| format!("({}, {})", s.0, s.1);
            if s1 == s2 {
                witness(p1, p2, p2, group, false, format!("spectra agree: {}", describe(&s1)))
            } else if s1 == (s2.1.clone(), s2.0.clone()) {
                witness(p1, &p2_flipped, p2, group, true, format!("spectra agree after tau: {}", describe(&s1)))
            } else if group == Group::Sm {
                Err(Error::Unsupported(
                    "S_m-equivalence of functions with different spectra is not decided".into(),
                ))
            } else {
                Ok(EquivalenceWitness::no(
                    group,
                    format!("spectra differ: {} vs {}", describe(&s1), describe(&s2)),
                ))
            }
        }
    }
}

/// Left and right density points of an eventually periodic function.
fn exact_spectra(p: &ParityFunction) -> (Scalar, Scalar) {
    let point = |t: &TailRule| Scalar::new(t.occurrences(Parity::Odd), t.period());
    (point(p.left_tail()), point(p.right_tail()))
}

fn finite_case(
    p1: &ParityFunction,
    p2: &ParityFunction,
    c1: ParityClass,
    c2: ParityClass,
    group: Group,
) -> Result<EquivalenceWitness> {
    if c1 != c2 {
        return Ok(EquivalenceWitness::no(group, format!("totals differ: {c1} vs {c2}")));
    }
    // Both share a constant background, so they differ on a finite set.
    let lo = p1.window_lo().min(p2.window_lo());
    let hi = p1.window_hi().max(p2.window_hi());
    let mut gained = Vec::new();
    let mut lost = Vec::new();
    for x in lo..=hi {
        match (p1.at(x), p2.at(x)) {
            (Parity::Even, Parity::Odd) => gained.push(x),
            (Parity::Odd, Parity::Even) => lost.push(x),
            _ => {}
        }
    }
    debug_assert_eq!(gained.len(), lost.len());
    let mut exceptions = BTreeMap::new();
    for (&a, &b) in gained.iter().zip(&lost) {
        exceptions.insert(a, b);
        exceptions.insert(b, a);
    }
    let sigma = FinPermutation::new(exceptions, TailMap::translation(0), TailMap::translation(0))?;
    let certificate = sigma.membership(group);
    Ok(EquivalenceWitness {
        equivalent: true,
        group,
        sigma: Some(sigma),
        via_tau: false,
        certificate: Some(certificate),
        reason: format!("same totals {c1}; {} transpositions", gained.len()),
    })
}

fn witness(
    p1: &ParityFunction,
    target: &ParityFunction,
    p2: &ParityFunction,
    group: Group,
    via_tau: bool,
    reason: String,
) -> Result<EquivalenceWitness> {
    let sigma = order_match(p1, target)?;
    let certificate = sigma.membership(group);
    let w = EquivalenceWitness {
        equivalent: true,
        group,
        sigma: Some(sigma),
        via_tau,
        certificate: Some(certificate.clone()),
        reason,
    };
    if !certificate.member || w.replay(p1).as_ref() != Some(p2) {
        return Err(Error::Unsupported(format!(
            "witness construction failed for {group}"
        )));
    }
    Ok(w)
}

/// How the level set `{x : p(x) = c}` of a non-finite function extends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    BoundedBelow,
    BoundedAbove,
    TwoWay,
}

fn shape(p: &ParityFunction, c: Parity) -> Shape {
    match (p.left_tail().contains(c), p.right_tail().contains(c)) {
        (false, _) => Shape::BoundedBelow,
        (true, false) => Shape::BoundedAbove,
        (true, true) => Shape::TwoWay,
    }
}

/// Position of `x` within its level set: which end it is counted from and its rank.
fn rank(p: &ParityFunction, c: Parity, x: i64) -> (bool, u64) {
    match shape(p, c) {
        Shape::BoundedBelow => (true, p.count(p.window_lo(), x - 1, c)),
        Shape::BoundedAbove => (false, p.count(x + 1, p.window_hi(), c)),
        Shape::TwoWay if x >= 0 => (true, p.count(0, x - 1, c)),
        Shape::TwoWay => (false, p.count(x + 1, -1, c)),
    }
}

/// Inverse of [`rank`].
fn select(p: &ParityFunction, c: Parity, ascending: bool, n: u64) -> i64 {
    let period = p.tail_period();
    let span = p.window_hi() - p.window_lo() + 2;
    let reach = span.abs() + (n as i64 + 2) * period + p.window_lo().abs() + p.window_hi().abs();
    if ascending {
        let start = match shape(p, c) {
            Shape::BoundedBelow => p.window_lo(),
            _ => 0,
        };
        // smallest y >= start with n + 1 hits in [start, y]
        let (mut lo, mut hi) = (start, start + reach);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if p.count(start, mid, c) > n {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    } else {
        let start = match shape(p, c) {
            Shape::BoundedAbove => p.window_hi(),
            _ => -1,
        };
        let (mut lo, mut hi) = (start - reach, start);
        while lo < hi {
            let mid = lo + (hi - lo + 1) / 2;
            if p.count(mid, start, c) > n {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }
}

/// A permutation σ with `p1 ∘ σ = p2`, matching the level sets of the two
/// functions in order. Requires both to be non-finite with the same side patterns.
fn order_match(p1: &ParityFunction, p2: &ParityFunction) -> Result<FinPermutation> {
    for c in [Parity::Even, Parity::Odd] {
        if shape(p1, c) != shape(p2, c) {
            return Err(Error::WrongClass("level sets have different shapes".into()));
        }
    }
    let f = |x: i64| -> i64 {
        let c = p2.at(x);
        let (ascending, n) = rank(p2, c, x);
        select(p1, c, ascending, n)
    };
    let occurrences_lcm = |t: &TailRule| {
        [Parity::Even, Parity::Odd]
            .iter()
            .map(|&c| t.occurrences(c))
            .filter(|&n| n > 0)
            .fold(1, lcm)
    };
    let right_period = p2.right_tail().period() * occurrences_lcm(p1.right_tail());
    let left_period = p2.left_tail().period() * occurrences_lcm(p1.left_tail());
    let w = [p1.window_lo(), p1.window_hi(), p2.window_lo(), p2.window_hi()]
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap()
        + 1;
    let l2 = p2.tail_period().max(p1.tail_period());
    let t = w + l2 * (2 * w + 3) + 1;
    FinPermutation::from_affine_fn(f, -t, t, left_period, right_period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::parse_word;

    fn check(p1: &ParityFunction, p2: &ParityFunction, w: &EquivalenceWitness) {
        assert!(w.equivalent);
        let q = w.replay(p1).unwrap();
        assert_eq!(&q, p2);
        let sigma = w.sigma.as_ref().unwrap();
        for x in -200..=200 {
            let y = if w.via_tau { sigma.apply(-x - 1) } else { sigma.apply(x) };
            assert_eq!(p1.at(y), p2.at(x));
        }
    }

    #[test]
    fn finite_transposition() {
        let p = ParityFunction::with_flips(Parity::Even, &[0]);
        let q = ParityFunction::with_flips(Parity::Even, &[7]);
        let w = equivalent(&p, &q, Group::Sc).unwrap();
        check(&p, &q, &w);
        assert_eq!(w.sigma, Some(FinPermutation::swap(0, 7)));
        let r = ParityFunction::with_flips(Parity::Even, &[1, 2]);
        assert!(!equivalent(&p, &r, Group::Sc).unwrap().equivalent);
    }

    #[test]
    fn inf_functions_are_g_equivalent() {
        let st = ParityFunction::p_st();
        let shifted = st.complement();
        let w = equivalent(&st, &shifted, Group::Sg).unwrap();
        check(&st, &shifted, &w);
        let p = ParityFunction::periodic_everywhere(parse_word("011").unwrap());
        let w = equivalent(&st, &p, Group::Sg).unwrap();
        check(&st, &p, &w);
    }

    #[test]
    fn spectra_separate_small_groups() {
        let st = ParityFunction::p_st();
        let p = ParityFunction::periodic_everywhere(parse_word("011").unwrap());
        let w = equivalent(&st, &p, Group::Sn).unwrap();
        assert!(!w.equivalent);
        let q = ParityFunction::new(
            -2,
            parse_word("1101").unwrap(),
            TailRule::periodic(parse_word("01").unwrap()).unwrap(),
            TailRule::periodic(parse_word("0110").unwrap()).unwrap(),
        );
        let w = equivalent(&st, &q, Group::Sc).unwrap();
        check(&st, &q, &w);
        assert!(w.certificate.unwrap().member);
    }

    #[test]
    fn tau_twist() {
        let plus = ParityFunction::p_plus();
        let minus = FinPermutation::tau().act_on_parity(&plus);
        let w = equivalent(&plus, &minus, Group::Sg).unwrap();
        assert!(w.via_tau);
        check(&plus, &minus, &w);
        let w = equivalent(&plus, &minus, Group::Sc).unwrap();
        assert!(w.via_tau);
        check(&plus, &minus, &w);
    }

    #[test]
    fn side_patterns() {
        // even on the left, p_st on the right; versus a version with extra odds
        let a = ParityFunction::new(
            0,
            vec![],
            TailRule::Constant(Parity::Even),
            TailRule::periodic(parse_word("01").unwrap()).unwrap(),
        );
        let b = ParityFunction::new(
            -5,
            parse_word("101").unwrap(),
            TailRule::Constant(Parity::Even),
            TailRule::periodic(parse_word("001").unwrap()).unwrap(),
        );
        let w = equivalent(&a, &b, Group::Sg).unwrap();
        check(&a, &b, &w);
        assert!(!equivalent(&a, &b, Group::Sc).unwrap().equivalent);
        assert!(matches!(equivalent(&a, &b, Group::Sm), Err(Error::Unsupported(_))));
        assert!(!equivalent(&a, &ParityFunction::p_st(), Group::Sg).unwrap().equivalent);
    }
}
