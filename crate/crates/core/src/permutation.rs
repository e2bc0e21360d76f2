//! Finitely presented permutations of ℤ.
//!
//! A [`FinPermutation`] is given by finitely many exceptional values and two
//! tail maps. A tail map with period `k` sends `r + m·k` (with `0 ≤ r < k`) to
//! `c_r + m·s_r`. The right tail covers non-exceptional `i ≥ 0`, the left
//! tail non-exceptional `i < 0`. Bijectivity is decided exactly at
//! construction, and every constructor returns the canonical presentation
//! (minimal tail periods, no redundant exceptions), so `==` is equality of maps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extension::{j_sign, ExtendedElement};
use crate::matrix::SuperMatrix;
use crate::parity::{lcm, NamedOr, ParityFunction};
use crate::scalar::Scalar;

/// Largest residue modulus examined when deciding coverage at infinity.
const MAX_MODULUS: i64 = 1_000_000;
/// Largest `|y|` range scanned when counting preimages.
const MAX_SCAN: i64 = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    Sc,
    So,
    Sn,
    Sm,
    Sl,
    Sg,
    SZ,
}

impl Group {
    /// Smallest to largest.
    pub const TOWER: [Group; 7] = [
        Group::Sc,
        Group::So,
        Group::Sn,
        Group::Sm,
        Group::Sl,
        Group::Sg,
        Group::SZ,
    ];
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Group::Sc => "Sc",
            Group::So => "So",
            Group::Sn => "Sn",
            Group::Sm => "Sm",
            Group::Sl => "Sl",
            Group::Sg => "Sg",
            Group::SZ => "SZ",
        };
        f.write_str(s)
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "").as_str() {
            "sc" | "c" => Ok(Group::Sc),
            "so" | "o" => Ok(Group::So),
            "sn" | "n" => Ok(Group::Sn),
            "sm" | "m" => Ok(Group::Sm),
            "sl" | "l" => Ok(Group::Sl),
            "sg" | "g" => Ok(Group::Sg),
            "sz" | "z" => Ok(Group::SZ),
            _ => Err(Error::Parse(format!("unknown group {s:?}"))),
        }
    }
}

/// Per-residue arithmetic progressions on one side of ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailMap {
    period: i64,
    /// `(offset, step)` for each residue class.
    classes: Vec<(i64, i64)>,
}

impl TailMap {
    pub fn new(classes: Vec<(i64, i64)>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::Parse("tail map needs at least one class".into()));
        }
        if let Some(r) = classes.iter().position(|&(_, s)| s == 0) {
            return Err(Error::NotBijective(format!("class {r} has step 0")));
        }
        Ok(TailMap {
            period: classes.len() as i64,
            classes,
        })
    }

    pub fn translation(offset: i64) -> Self {
        TailMap {
            period: 1,
            classes: vec![(offset, 1)],
        }
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn classes(&self) -> &[(i64, i64)] {
        &self.classes
    }

    pub fn eval(&self, i: i64) -> i64 {
        let (c, s) = self.classes[i.rem_euclid(self.period) as usize];
        c + i.div_euclid(self.period) * s
    }

    /// Same map with the smallest period.
    fn reduced(&self) -> Self {
        let k = self.period;
        for d in (1..k).filter(|d| k % d == 0) {
            let j = k / d;
            let ok = (0..d).all(|r| {
                let (c, s) = self.classes[r as usize];
                s % j == 0
                    && (1..j).all(|t| {
                        self.classes[(r + t * d) as usize] == (c + t * (s / j), s)
                    })
            });
            if ok {
                return TailMap {
                    period: d,
                    classes: (0..d)
                        .map(|r| {
                            let (c, s) = self.classes[r as usize];
                            (c, s / j)
                        })
                        .collect(),
                };
            }
        }
        self.clone()
    }

    /// Smallest index `T ≥ 0` such that every `i ≥ T` maps outside `[lo, hi]`.
    fn right_escape(&self, lo: i64, hi: i64) -> i64 {
        let k = self.period;
        (0..k)
            .map(|r| {
                let (c, s) = self.classes[r as usize];
                let m = if s > 0 {
                    (hi - c).div_euclid(s) + 1
                } else {
                    (c - lo).div_euclid(-s) + 1
                };
                r + m.max(0) * k
            })
            .max()
            .unwrap()
    }

    /// Largest index `T < 0` such that every `i ≤ T` maps outside `[lo, hi]`.
    fn left_escape(&self, lo: i64, hi: i64) -> i64 {
        let k = self.period;
        (0..k)
            .map(|r| {
                let (c, s) = self.classes[r as usize];
                let m = if s > 0 {
                    div_ceil(lo - c, s) - 1
                } else {
                    div_ceil(c - hi, -s) - 1
                };
                r + m.min(-1) * k
            })
            .min()
            .unwrap()
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// A progression `y = c + m·s` fed by indices `i = r + m·k` of one tail.
#[derive(Clone, Copy, Debug)]
struct Progression {
    side: Side,
    r: i64,
    k: i64,
    c: i64,
    s: i64,
}

impl Progression {
    /// `+1` if the values run off to `+∞`, `-1` for `-∞`.
    fn direction(&self) -> i64 {
        match self.side {
            Side::Right => self.s.signum(),
            Side::Left => -self.s.signum(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinPermutation {
    exceptions: BTreeMap<i64, i64>,
    left: TailMap,
    right: TailMap,
}

/// The preimage table on `[-bound, bound]` computed while checking bijectivity.
struct Coverage {
    bound: i64,
    preimage: Vec<i64>,
}

impl FinPermutation {
    /// Validates and canonicalizes a presentation.
    pub fn new(exceptions: BTreeMap<i64, i64>, left: TailMap, right: TailMap) -> Result<Self> {
        let sigma = FinPermutation {
            exceptions,
            left: left.reduced(),
            right: right.reduced(),
        }
        .pruned();
        sigma.coverage()?;
        Ok(sigma)
    }

    pub fn identity() -> Self {
        Self::shift(0)
    }

    pub fn shift(n: i64) -> Self {
        FinPermutation {
            exceptions: BTreeMap::new(),
            left: TailMap::translation(n),
            right: TailMap::translation(n),
        }
    }

    /// `i ↦ -i-1`.
    pub fn tau() -> Self {
        let t = TailMap {
            period: 1,
            classes: vec![(-1, -1)],
        };
        FinPermutation {
            exceptions: BTreeMap::new(),
            left: t.clone(),
            right: t,
        }
    }

    /// The transposition of `a` and `b`.
    pub fn swap(a: i64, b: i64) -> Self {
        let mut exceptions = BTreeMap::new();
        if a != b {
            exceptions.insert(a, b);
            exceptions.insert(b, a);
        }
        FinPermutation {
            exceptions,
            left: TailMap::translation(0),
            right: TailMap::translation(0),
        }
    }

    /// Identity outside a finite window, `i ↦ image[i - lo]` on `[lo, lo + len)`.
    pub fn from_window(lo: i64, image: &[i64]) -> Result<Self> {
        let exceptions = image
            .iter()
            .enumerate()
            .map(|(t, &v)| (lo + t as i64, v))
            .collect();
        Self::new(exceptions, TailMap::translation(0), TailMap::translation(0))
    }

    pub fn exceptions(&self) -> &BTreeMap<i64, i64> {
        &self.exceptions
    }

    pub fn left_tail(&self) -> &TailMap {
        &self.left
    }

    pub fn right_tail(&self) -> &TailMap {
        &self.right
    }

    pub fn apply(&self, i: i64) -> i64 {
        if let Some(&v) = self.exceptions.get(&i) {
            v
        } else {
            self.tail_value(i)
        }
    }

    fn tail_value(&self, i: i64) -> i64 {
        if i >= 0 {
            self.right.eval(i)
        } else {
            self.left.eval(i)
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    fn pruned(mut self) -> Self {
        let redundant: Vec<i64> = self
            .exceptions
            .iter()
            .filter(|(&i, &v)| self.tail_value(i) == v)
            .map(|(&i, _)| i)
            .collect();
        for i in redundant {
            self.exceptions.remove(&i);
        }
        self
    }

    fn progressions(&self) -> Vec<Progression> {
        let mut out = Vec::new();
        for (side, t) in [(Side::Left, &self.left), (Side::Right, &self.right)] {
            for (r, &(c, s)) in t.classes.iter().enumerate() {
                out.push(Progression {
                    side,
                    r: r as i64,
                    k: t.period,
                    c,
                    s,
                });
            }
        }
        out
    }

    /// Exact bijectivity decision.
    ///
    /// Far from the origin only tail progressions contribute, so bijectivity
    /// there is a residue-coverage condition. Near the origin preimages are
    /// counted explicitly.
    fn coverage(&self) -> Result<Coverage> {
        let progs = self.progressions();
        for dir in [1, -1] {
            let heading: Vec<&Progression> = progs.iter().filter(|p| p.direction() == dir).collect();
            let modulus = residue_modulus(&heading)?;
            let mut hits = vec![0u8; modulus as usize];
            for p in &heading {
                let a = p.s.abs();
                let mut x = p.c.rem_euclid(a);
                while x < modulus {
                    hits[x as usize] = hits[x as usize].saturating_add(1);
                    x += a;
                }
            }
            if let Some(rho) = hits.iter().position(|&h| h != 1) {
                let what = if hits[rho] == 0 { "missed" } else { "hit twice" };
                let end = if dir > 0 { "+inf" } else { "-inf" };
                return Err(Error::NotBijective(format!(
                    "residue {rho} mod {modulus} is {what} near {end}"
                )));
            }
        }

        let mut bound = 0i64;
        for p in &progs {
            let start = match p.side {
                Side::Right => p.c,
                Side::Left => p.c - p.s,
            };
            bound = bound.max(start.abs());
        }
        for (&i, &v) in &self.exceptions {
            bound = bound.max(v.abs()).max(self.tail_value(i).abs());
        }
        bound += 1;
        if bound > MAX_SCAN {
            return Err(Error::SizeBound(format!("preimage scan range {bound} too large")));
        }

        const EMPTY: i64 = i64::MIN;
        let width = (2 * bound + 1) as usize;
        let mut preimage = vec![EMPTY; width];
        let mut place = |y: i64, i: i64| -> Result<()> {
            let slot = &mut preimage[(y + bound) as usize];
            if *slot != EMPTY {
                return Err(Error::NotBijective(format!("{} and {} both map to {y}", *slot, i)));
            }
            *slot = i;
            Ok(())
        };
        for p in &progs {
            let mut m: i64 = match p.side {
                Side::Right => 0,
                Side::Left => -1,
            };
            let step: i64 = match p.side {
                Side::Right => 1,
                Side::Left => -1,
            };
            loop {
                let y = p.c + m * p.s;
                if y.abs() > bound {
                    break;
                }
                let i = p.r + m * p.k;
                if !self.exceptions.contains_key(&i) {
                    place(y, i)?;
                }
                m += step;
            }
        }
        for (&i, &v) in &self.exceptions {
            place(v, i)?;
        }
        if let Some(t) = preimage.iter().position(|&x| x == EMPTY) {
            return Err(Error::NotBijective(format!("{} has no preimage", t as i64 - bound)));
        }
        Ok(Coverage { bound, preimage })
    }

    pub fn invert(&self) -> Self {
        let cov = self.coverage().expect("validated at construction");
        let progs = self.progressions();
        let tail_for = |dir: i64| -> TailMap {
            let heading: Vec<&Progression> = progs.iter().filter(|p| p.direction() == dir).collect();
            let q = residue_modulus(&heading).expect("validated");
            let classes = (0..q)
                .map(|rho| {
                    let p = heading
                        .iter()
                        .find(|p| (rho - p.c).rem_euclid(p.s.abs()) == 0)
                        .expect("validated coverage");
                    (p.r + p.k * ((rho - p.c) / p.s), p.k * q / p.s)
                })
                .collect();
            TailMap { period: q, classes }
        };
        let mut inv = FinPermutation {
            exceptions: BTreeMap::new(),
            left: tail_for(-1).reduced(),
            right: tail_for(1).reduced(),
        };
        for (t, &i) in cov.preimage.iter().enumerate() {
            let y = t as i64 - cov.bound;
            if inv.tail_value(y) != i {
                inv.exceptions.insert(y, i);
            }
        }
        inv
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        let b = self
            .exceptions
            .keys()
            .map(|k| k.abs())
            .max()
            .unwrap_or(0);
        let lo_key = other.exceptions.keys().next().copied().unwrap_or(0);
        let hi_key = other.exceptions.keys().next_back().copied().unwrap_or(0);
        let t_right = other.right.right_escape(-b, b).max(hi_key + 1).max(0);
        let t_left = other.left.left_escape(-b, b).min(lo_key - 1).min(-1);
        let outer = lcm(self.left.period, self.right.period);
        let f = |i: i64| self.apply(other.apply(i));
        Self::from_affine_fn(
            f,
            t_left,
            t_right,
            other.left.period * outer,
            other.right.period * outer,
        )
        .expect("composition of bijections is a bijection")
    }

    /// Builds a permutation from a function that is tail-affine with the given
    /// periods for `i ≤ t_left` and `i ≥ t_right`.
    pub fn from_affine_fn(
        f: impl Fn(i64) -> i64,
        t_left: i64,
        t_right: i64,
        left_period: i64,
        right_period: i64,
    ) -> Result<Self> {
        assert!(t_left < 0 && t_right >= 0 && left_period >= 1 && right_period >= 1);
        let fit_right = |k: i64| -> Result<TailMap> {
            let classes = (0..k)
                .map(|r| {
                    let i1 = t_right + (r - t_right).rem_euclid(k);
                    let i2 = i1 + k;
                    let s = f(i2) - f(i1);
                    (f(i1) - i1.div_euclid(k) * s, s)
                })
                .collect();
            TailMap::new(classes)
        };
        let fit_left = |k: i64| -> Result<TailMap> {
            let classes = (0..k)
                .map(|r| {
                    let i1 = t_left - (t_left - r).rem_euclid(k);
                    let i2 = i1 - k;
                    let s = f(i1) - f(i2);
                    (f(i1) - i1.div_euclid(k) * s, s)
                })
                .collect();
            TailMap::new(classes)
        };
        let mut sigma = FinPermutation {
            exceptions: BTreeMap::new(),
            left: fit_left(left_period)?.reduced(),
            right: fit_right(right_period)?.reduced(),
        };
        for i in t_left + 1..t_right {
            let v = f(i);
            if sigma.tail_value(i) != v {
                sigma.exceptions.insert(i, v);
            }
        }
        sigma.coverage()?;
        Ok(sigma)
    }

    /// Whether `self` and `other` agree on `[lo, hi]`.
    pub fn agrees_on(&self, other: &Self, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|i| self.apply(i) == other.apply(i))
    }

    /// A range containing every exception and the start of both tails.
    pub fn support_hint(&self) -> (i64, i64) {
        let lo = self.exceptions.keys().next().copied().unwrap_or(0).min(0);
        let hi = self.exceptions.keys().next_back().copied().unwrap_or(0).max(0);
        (lo - 2 * self.left.period, hi + 2 * self.right.period)
    }

    fn all_classes(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        let l = self.left.classes.iter().enumerate().map(|(r, &(c, s))| (r as i64, c, s - self.left.period));
        let r = self.right.classes.iter().enumerate().map(|(r, &(c, s))| (r as i64, c, s - self.right.period));
        l.chain(r).map(|(r, c, slope)| (r, c - r, slope))
    }

    fn bounded_displacement(&self) -> bool {
        self.all_classes().all(|(_, _, slope)| slope == 0)
    }

    /// Every tail progression keeps the sign of its indices.
    fn sign_preserving(&self) -> bool {
        self.right.classes.iter().all(|&(_, s)| s > 0) && self.left.classes.iter().all(|&(_, s)| s > 0)
    }

    /// `max |σ(i) - i|` for a bounded-displacement permutation.
    fn max_displacement(&self) -> u64 {
        let tails = self.all_classes().map(|(_, offset, _)| offset.unsigned_abs());
        let exc = self.exceptions.iter().map(|(&i, &v)| v.abs_diff(i));
        tails.chain(exc).max().unwrap_or(0)
    }

    pub fn membership(&self, group: Group) -> MembershipCertificate {
        let cert = |member, witness| MembershipCertificate {
            group,
            member,
            witness,
        };
        let bounded = self.bounded_displacement();
        let sign_ok = self.sign_preserving();
        match group {
            Group::SZ => cert(true, None),
            Group::Sc | Group::So | Group::Sn => {
                if bounded {
                    cert(true, Some(Witness::Displacement(self.max_displacement())))
                } else {
                    let (side, r) = self.first_unbounded_class();
                    cert(
                        false,
                        Some(Witness::Counterexample(format!(
                            "displacement grows linearly on {side} tail class {r}"
                        ))),
                    )
                }
            }
            Group::Sm => {
                if bounded {
                    cert(true, Some(Witness::Displacement(self.max_displacement())))
                } else if !sign_ok {
                    cert(false, Some(Witness::Counterexample(self.sign_violation())))
                } else if self.all_classes().all(|(_, _, slope)| slope != 0) {
                    cert(true, Some(Witness::Lambda(Scalar::new(1, 2))))
                } else {
                    cert(
                        false,
                        Some(Witness::Counterexample(
                            "displacement is bounded on some tail classes and linear on others".into(),
                        )),
                    )
                }
            }
            Group::Sl | Group::Sg => {
                if sign_ok {
                    let w = if group == Group::Sl {
                        Witness::Lambda(Scalar::new(1, 2))
                    } else {
                        Witness::Displacement(self.sign_threshold())
                    };
                    cert(true, Some(w))
                } else {
                    cert(false, Some(Witness::Counterexample(self.sign_violation())))
                }
            }
        }
    }

    fn first_unbounded_class(&self) -> (&'static str, i64) {
        let k = self.left.period;
        if let Some(r) = self.left.classes.iter().position(|&(_, s)| s != k) {
            return ("left", r as i64);
        }
        let k = self.right.period;
        let r = self.right.classes.iter().position(|&(_, s)| s != k).unwrap_or(0);
        ("right", r as i64)
    }

    fn sign_violation(&self) -> String {
        if let Some(r) = self.right.classes.iter().position(|&(_, s)| s < 0) {
            format!("right tail class {r} is sent towards -inf")
        } else {
            let r = self.left.classes.iter().position(|&(_, s)| s < 0).unwrap_or(0);
            format!("left tail class {r} is sent towards +inf")
        }
    }

    /// A constant `c` with `σ(i)/i > 0` whenever `|i| > c`, for a sign-preserving σ.
    fn sign_threshold(&self) -> u64 {
        let kmax = self.exceptions.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0);
        let r = self.right.right_escape(0, 0);
        let l = self.left.left_escape(0, 0);
        kmax.max(r.unsigned_abs()).max(l.unsigned_abs())
    }

    /// `i ↦ p(σ(i))`.
    pub fn act_on_parity(&self, p: &ParityFunction) -> ParityFunction {
        let (wlo, whi) = (p.window_lo(), p.window_hi());
        let lo_key = self.exceptions.keys().next().copied().unwrap_or(0);
        let hi_key = self.exceptions.keys().next_back().copied().unwrap_or(0);
        let lo = self.left.left_escape(wlo, whi).min(lo_key).min(0);
        let hi = self.right.right_escape(wlo, whi).max(hi_key).max(0);
        let pl = p.tail_period();
        ParityFunction::from_fn(
            |i| p.at(self.apply(i)),
            lo,
            hi,
            self.left.period * pl,
            self.right.period * pl,
        )
    }

    /// The isomorphism of extended algebras induced by relabelling indices.
    ///
    /// Entry `(i, j)` moves to `(σi, σj)`, the target grading is `p∘σ⁻¹`, and
    /// the central coordinate picks up `Σ_j (−1)^{p(j)} a_jj (J_{σj} − J_j)`.
    pub fn phi(&self, x: &ExtendedElement) -> Result<ExtendedElement> {
        if !self.membership(Group::Sg).member {
            return Err(Error::NotInGroup(Group::Sg));
        }
        let p = x.parity();
        let target = Arc::new(self.invert().act_on_parity(p));
        let mut z = x.z.clone();
        let moved = x.mat.entries().map(|((i, j), v)| {
            if i == j {
                let delta = j_sign(self.apply(i)) - j_sign(i);
                if delta != 0 {
                    z += v.clone().signed(p.at(i).is_odd()) * Scalar::from_int(delta);
                }
            }
            (self.apply(i), self.apply(j), v.clone())
        });
        let mat = SuperMatrix::from_entries(target, moved.collect::<Vec<_>>());
        Ok(ExtendedElement { mat, z })
    }

    pub fn builtin(name: &str) -> Option<Self> {
        let name = name.trim();
        if name == "identity" {
            return Some(Self::identity());
        }
        if name == "tau" {
            return Some(Self::tau());
        }
        if let Some(n) = name.strip_prefix("shift:") {
            return n.trim().parse().ok().map(Self::shift);
        }
        if let Some(rest) = name.strip_prefix("swap:") {
            let (a, b) = rest.split_once(',')?;
            return Some(Self::swap(a.trim().parse().ok()?, b.trim().parse().ok()?));
        }
        None
    }
}

fn residue_modulus(heading: &[&Progression]) -> Result<i64> {
    let mut q = 1i64;
    for p in heading {
        q = lcm(q, p.s.abs());
        if q > MAX_MODULUS {
            return Err(Error::UnsupportedPermutation(format!(
                "tail step modulus exceeds {MAX_MODULUS}"
            )));
        }
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A bound on `|σ(i) − i|` (small groups) or the sign threshold (`Sg`).
    Displacement(u64),
    /// An exponent making the defining limit vanish.
    Lambda(Scalar),
    Counterexample(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub group: Group,
    pub member: bool,
    pub witness: Option<Witness>,
}

// ---- wire format ----

#[derive(Serialize, Deserialize)]
struct TailMapJson {
    period: i64,
    classes: Vec<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct FinPermutationJson {
    #[serde(default)]
    exceptions: Vec<(i64, i64)>,
    left_tail: TailMapJson,
    right_tail: TailMapJson,
}

impl TailMapJson {
    fn to_tail(&self) -> Result<TailMap> {
        if self.period < 1 || self.classes.len() as i64 != self.period {
            return Err(Error::Parse(format!(
                "tail period {} does not match {} classes",
                self.period,
                self.classes.len()
            )));
        }
        TailMap::new(self.classes.clone())
    }
}

impl Serialize for FinPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let tail = |t: &TailMap| TailMapJson {
            period: t.period,
            classes: t.classes.clone(),
        };
        FinPermutationJson {
            exceptions: self.exceptions.iter().map(|(&a, &b)| (a, b)).collect(),
            left_tail: tail(&self.left),
            right_tail: tail(&self.right),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinPermutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match NamedOr::<FinPermutationJson>::deserialize(deserializer)? {
            NamedOr::Named(n) => FinPermutation::builtin(&n)
                .ok_or_else(|| D::Error::custom(format!("unknown builtin permutation {n:?}"))),
            NamedOr::Explicit(j) => {
                let mut exceptions = BTreeMap::new();
                for &(a, b) in &j.exceptions {
                    if exceptions.insert(a, b).is_some() {
                        return Err(D::Error::custom(format!("index {a} listed twice")));
                    }
                }
                let left = j.left_tail.to_tail().map_err(D::Error::custom)?;
                let right = j.right_tail.to_tail().map_err(D::Error::custom)?;
                FinPermutation::new(exceptions, left, right).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::Parity;

    fn stretch() -> FinPermutation {
        // 3m ↦ 2m, 3m+1 ↦ 4m+1, 3m+2 ↦ 4m+3 on both sides
        let t = TailMap::new(vec![(0, 2), (1, 4), (3, 4)]).unwrap();
        FinPermutation::new(BTreeMap::new(), t.clone(), t).unwrap()
    }

    #[test]
    fn builtins_and_inverse() {
        assert_eq!(FinPermutation::shift(1).compose(&FinPermutation::shift(-1)), FinPermutation::identity());
        assert_eq!(FinPermutation::shift(3).invert(), FinPermutation::shift(-3));
        assert_eq!(FinPermutation::identity().invert(), FinPermutation::identity());
        assert_eq!(FinPermutation::tau().invert(), FinPermutation::tau());
        let s = FinPermutation::swap(0, 1);
        assert!(s.compose(&s).is_identity());
        for i in -5..=5 {
            assert_eq!(FinPermutation::tau().apply(FinPermutation::tau().apply(i)), i);
        }
    }

    #[test]
    fn rejects_non_bijections() {
        let t = TailMap::new(vec![(0, 3), (2, 3)]).unwrap();
        assert!(matches!(
            FinPermutation::new(BTreeMap::new(), t.clone(), t),
            Err(Error::NotBijective(_))
        ));
        let mut ex = BTreeMap::new();
        ex.insert(0, 1);
        assert!(FinPermutation::new(ex, TailMap::translation(0), TailMap::translation(0)).is_err());
        // both tails translate by one: 0 and -1 collide? no, i+1 everywhere is fine
        assert!(FinPermutation::new(BTreeMap::new(), TailMap::translation(1), TailMap::translation(1)).is_ok());
        // mismatched translations leave a hole
        assert!(FinPermutation::new(BTreeMap::new(), TailMap::translation(0), TailMap::translation(1)).is_err());
    }

    #[test]
    fn stretch_inverse_and_compose() {
        let s = stretch();
        let inv = s.invert();
        for i in -200..200 {
            assert_eq!(inv.apply(s.apply(i)), i);
            assert_eq!(s.apply(inv.apply(i)), i);
        }
        assert!(s.compose(&inv).is_identity());
        let c = s.compose(&FinPermutation::swap(2, -7)).compose(&FinPermutation::shift(4));
        for i in -100..100 {
            assert_eq!(c.apply(i), s.apply(FinPermutation::swap(2, -7).apply(i + 4)));
        }
    }

    #[test]
    fn canonical_presentation() {
        // identity written with period 2 and a redundant exception
        let t = TailMap::new(vec![(0, 2), (1, 2)]).unwrap();
        let mut ex = BTreeMap::new();
        ex.insert(5, 5);
        let id = FinPermutation::new(ex, t.clone(), t).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn membership_examples() {
        let c = FinPermutation::shift(5).membership(Group::Sc);
        assert!(c.member);
        assert_eq!(c.witness, Some(Witness::Displacement(5)));
        assert!(!FinPermutation::tau().membership(Group::Sg).member);
        assert!(FinPermutation::tau().membership(Group::SZ).member);
        let s = stretch();
        let l = s.membership(Group::Sl);
        assert!(l.member);
        assert_eq!(l.witness, Some(Witness::Lambda(Scalar::new(1, 2))));
        assert!(!s.membership(Group::So).member);
        assert!(s.membership(Group::Sm).member);
    }

    #[test]
    fn sign_threshold_is_sound() {
        let s = stretch().compose(&FinPermutation::swap(-3, 4));
        let Some(Witness::Displacement(c)) = s.membership(Group::Sg).witness else {
            panic!("expected a threshold");
        };
        let c = c as i64;
        for i in (c + 1)..(c + 300) {
            assert!(s.apply(i) > 0 && s.apply(-i) < 0);
        }
    }

    #[test]
    fn action_on_parity() {
        let pst = ParityFunction::p_st();
        assert_eq!(FinPermutation::identity().act_on_parity(&pst), pst);
        let shifted = FinPermutation::shift(1).act_on_parity(&pst);
        assert_eq!(shifted, pst.complement());
        let flipped = FinPermutation::tau().act_on_parity(&ParityFunction::p_plus());
        for i in -5..=5 {
            assert_eq!(flipped.at(i), if i <= -1 { Parity::Odd } else { Parity::Even });
        }
        let s = stretch();
        let q = s.act_on_parity(&pst);
        for i in -300..300 {
            assert_eq!(q.at(i), pst.at(s.apply(i)));
        }
    }

    #[test]
    fn phi_examples() {
        let p = Arc::new(ParityFunction::p_st());
        let sh = FinPermutation::shift(1);
        let x = ExtendedElement::from_matrix(SuperMatrix::unit(p.clone(), 0, 0));
        let y = sh.phi(&x).unwrap();
        assert_eq!(y.mat.support().collect::<Vec<_>>(), vec![(1, 1)]);
        assert!(y.z.is_zero());
        let x = ExtendedElement::from_matrix(SuperMatrix::unit(p.clone(), -1, -1));
        let y = sh.phi(&x).unwrap();
        assert_eq!(y.mat.support().collect::<Vec<_>>(), vec![(0, 0)]);
        assert_eq!(y.z, Scalar::from_int(2));
        assert_eq!(FinPermutation::tau().phi(&x), Err(Error::NotInGroup(Group::Sg)));
        let id = FinPermutation::identity().phi(&x).unwrap();
        assert_eq!(id, x);
    }

    #[test]
    fn json_formats() {
        let s: FinPermutation = serde_json::from_str(r#""shift:-2""#).unwrap();
        assert_eq!(s, FinPermutation::shift(-2));
        let s: FinPermutation = serde_json::from_str(
            r#"{"exceptions": [[0, 1], [1, 0]], "left_tail": {"period": 1, "classes": [[0, 1]]}, "right_tail": {"period": 1, "classes": [[0, 1]]}}"#,
        )
        .unwrap();
        assert_eq!(s, FinPermutation::swap(0, 1));
        let back: FinPermutation = serde_json::from_str(&serde_json::to_string(&stretch()).unwrap()).unwrap();
        assert_eq!(back, stretch());
        assert!(serde_json::from_str::<FinPermutation>(
            r#"{"left_tail": {"period": 1, "classes": [[0, 2]]}, "right_tail": {"period": 1, "classes": [[0, 1]]}}"#
        )
        .is_err());
    }
}
