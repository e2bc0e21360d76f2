//! Parity functions ℤ → ℤ/2.
//!
//! A [`ParityFunction`] is presented by a finite window of explicit values and
//! two tail rules. Periodic tails are anchored absolutely: a tail with word `w`
//! takes the value `w[i mod |w|]` at index `i`. Every constructor returns the
//! canonical presentation, so structural equality is pointwise equality.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Self {
        if bit & 1 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// `(-1)^self` as an integer.
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            '0' => Ok(Parity::Even),
            '1' => Ok(Parity::Odd),
            _ => Err(Error::Parse(format!("parity digit must be 0 or 1, got {c:?}"))),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Parity::Even => '0',
            Parity::Odd => '1',
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    // addition in ℤ/2 is xor
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Parity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Parity::from_char(c).map_err(serde::de::Error::custom),
            _ => Err(serde::de::Error::custom(format!("expected \"0\" or \"1\", got {s:?}"))),
        }
    }
}

pub fn parse_word(s: &str) -> Result<Vec<Parity>> {
    s.chars().map(Parity::from_char).collect()
}

pub fn word_string(w: &[Parity]) -> String {
    w.iter().map(|p| p.to_char()).collect()
}

/// Behaviour of a parity function beyond its window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TailRule {
    Constant(Parity),
    /// Non-constant primitive word, anchored at index 0.
    Periodic(Vec<Parity>),
}

impl TailRule {
    /// Reduces a word to its primitive period; constant words become `Constant`.
    pub fn periodic(word: Vec<Parity>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Parse("periodic tail needs a nonempty word".into()));
        }
        let len = word.len();
        let period = (1..=len)
            .filter(|d| len.is_multiple_of(*d))
            .find(|&d| (0..len).all(|i| word[i] == word[i % d]))
            .unwrap_or(len);
        if period == 1 {
            Ok(TailRule::Constant(word[0]))
        } else {
            Ok(TailRule::Periodic(word[..period].to_vec()))
        }
    }

    pub fn at(&self, i: i64) -> Parity {
        match self {
            TailRule::Constant(c) => *c,
            TailRule::Periodic(w) => w[i.rem_euclid(w.len() as i64) as usize],
        }
    }

    pub fn period(&self) -> i64 {
        match self {
            TailRule::Constant(_) => 1,
            TailRule::Periodic(w) => w.len() as i64,
        }
    }

    pub fn word(&self) -> Vec<Parity> {
        match self {
            TailRule::Constant(c) => vec![*c],
            TailRule::Periodic(w) => w.clone(),
        }
    }

    /// Number of occurrences of `c` in one period.
    pub fn occurrences(&self, c: Parity) -> i64 {
        self.word().iter().filter(|&&x| x == c).count() as i64
    }

    pub fn contains(&self, c: Parity) -> bool {
        self.occurrences(c) > 0
    }

    /// `#{ j ∈ [0, n) : rule(j) = c }`, extended to negative `n` so that
    /// differences give counts on arbitrary intervals.
    fn cumulative(&self, n: i64, c: Parity) -> i64 {
        let w = self.word();
        let len = w.len() as i64;
        let full = n.div_euclid(len);
        let rest = n.rem_euclid(len) as usize;
        full * self.occurrences(c) + w[..rest].iter().filter(|&&x| x == c).count() as i64
    }

    /// Occurrences of `c` in `[a, b]`; zero when `a > b`.
    pub fn count(&self, a: i64, b: i64, c: Parity) -> u64 {
        if a > b {
            return 0;
        }
        (self.cumulative(b + 1, c) - self.cumulative(a, c)) as u64
    }
}

/// A finitely presented parity function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityFunction {
    window_lo: i64,
    window: Vec<Parity>,
    left: TailRule,
    right: TailRule,
}

impl ParityFunction {
    pub fn new(window_lo: i64, window: Vec<Parity>, left: TailRule, right: TailRule) -> Self {
        let mut p = ParityFunction {
            window_lo,
            window,
            left,
            right,
        };
        p.canonicalize();
        p
    }

    /// `p_st(x) = x mod 2`.
    pub fn p_st() -> Self {
        Self::periodic_everywhere(vec![Parity::Even, Parity::Odd])
    }

    /// Odd exactly on the nonnegative integers.
    pub fn p_plus() -> Self {
        Self::new(
            0,
            vec![],
            TailRule::Constant(Parity::Even),
            TailRule::Constant(Parity::Odd),
        )
    }

    pub fn constant(c: Parity) -> Self {
        Self::new(0, vec![], TailRule::Constant(c), TailRule::Constant(c))
    }

    /// The same periodic rule on both sides; panics on an empty word.
    pub fn periodic_everywhere(word: Vec<Parity>) -> Self {
        let rule = TailRule::periodic(word).expect("nonempty word");
        Self::new(0, vec![], rule.clone(), rule)
    }

    /// Constant `background` except at the listed indices, which get the other parity.
    pub fn with_flips(background: Parity, flips: &[i64]) -> Self {
        if flips.is_empty() {
            return Self::constant(background);
        }
        let lo = *flips.iter().min().unwrap();
        let hi = *flips.iter().max().unwrap();
        let window = (lo..=hi)
            .map(|i| {
                if flips.contains(&i) {
                    background.flip()
                } else {
                    background
                }
            })
            .collect();
        Self::new(
            lo,
            window,
            TailRule::Constant(background),
            TailRule::Constant(background),
        )
    }

    /// Builds the canonical presentation of `f`, assuming `f` agrees with a
    /// `left_period`-periodic function below `lo` and with a
    /// `right_period`-periodic function above `hi`.
    pub fn from_fn(
        f: impl Fn(i64) -> Parity,
        lo: i64,
        hi: i64,
        left_period: i64,
        right_period: i64,
    ) -> Self {
        assert!(left_period >= 1 && right_period >= 1);
        let hi = hi.max(lo - 1);
        let window = (lo..=hi).map(&f).collect();
        let left_word: Vec<Parity> = (0..left_period)
            .map(|j| {
                // representative of residue j strictly below lo
                let x = lo - 1 - (lo - 1 - j).rem_euclid(left_period);
                f(x)
            })
            .collect();
        let right_word: Vec<Parity> = (0..right_period)
            .map(|j| {
                let x = hi + 1 + (j - (hi + 1)).rem_euclid(right_period);
                f(x)
            })
            .collect();
        Self::new(
            lo,
            window,
            TailRule::periodic(left_word).unwrap(),
            TailRule::periodic(right_word).unwrap(),
        )
    }

    fn canonicalize(&mut self) {
        self.left = TailRule::periodic(self.left.word()).unwrap();
        self.right = TailRule::periodic(self.right.word()).unwrap();
        let mut start = 0;
        while start < self.window.len()
            && self.window[start] == self.left.at(self.window_lo + start as i64)
        {
            start += 1;
        }
        self.window.drain(..start);
        self.window_lo += start as i64;
        while let Some(&last) = self.window.last() {
            let idx = self.window_lo + self.window.len() as i64 - 1;
            if last == self.right.at(idx) {
                self.window.pop();
            } else {
                break;
            }
        }
        if self.window.is_empty() {
            if self.left == self.right {
                self.window_lo = 0;
            } else {
                // let the right tail reach as far left as it agrees with the left tail
                while self.left.at(self.window_lo - 1) == self.right.at(self.window_lo - 1) {
                    self.window_lo -= 1;
                }
            }
        }
    }

    pub fn at(&self, i: i64) -> Parity {
        if i < self.window_lo {
            self.left.at(i)
        } else if i > self.window_hi() {
            self.right.at(i)
        } else {
            self.window[(i - self.window_lo) as usize]
        }
    }

    pub fn window_lo(&self) -> i64 {
        self.window_lo
    }

    pub fn window_hi(&self) -> i64 {
        self.window_lo + self.window.len() as i64 - 1
    }

    pub fn window(&self) -> &[Parity] {
        &self.window
    }

    pub fn left_tail(&self) -> &TailRule {
        &self.left
    }

    pub fn right_tail(&self) -> &TailRule {
        &self.right
    }

    /// Least common multiple of the two tail periods.
    pub fn tail_period(&self) -> i64 {
        lcm(self.left.period(), self.right.period())
    }

    /// Occurrences of `c` in the inclusive range `[a, b]`; zero when `a > b`.
    pub fn count(&self, a: i64, b: i64, c: Parity) -> u64 {
        if a > b {
            return 0;
        }
        let lo = self.window_lo;
        let hi = self.window_hi();
        let mut total = self.left.count(a, b.min(lo - 1), c);
        total += self.right.count(a.max(hi + 1), b, c);
        let (wa, wb) = (a.max(lo), b.min(hi));
        if wa <= wb {
            total += self.window[(wa - lo) as usize..=(wb - lo) as usize]
                .iter()
                .filter(|&&x| x == c)
                .count() as u64;
        }
        total
    }

    pub fn odd_count(&self, a: i64, b: i64) -> u64 {
        self.count(a, b, Parity::Odd)
    }

    pub fn even_count(&self, a: i64, b: i64) -> u64 {
        self.count(a, b, Parity::Even)
    }

    /// Pointwise `p + 1`.
    pub fn complement(&self) -> Self {
        let flip = |r: &TailRule| TailRule::periodic(r.word().iter().map(|x| x.flip()).collect()).unwrap();
        Self::new(
            self.window_lo,
            self.window.iter().map(|x| x.flip()).collect(),
            flip(&self.left),
            flip(&self.right),
        )
    }

    /// A range outside of which both tails are in force, padded by two tail periods.
    pub fn support_hint(&self) -> (i64, i64) {
        let pad = 2 * self.tail_period();
        (self.window_lo - pad, self.window_hi().max(self.window_lo) + pad)
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "p_st" => Some(Self::p_st()),
            "p_plus" => Some(Self::p_plus()),
            "even" => Some(Self::constant(Parity::Even)),
            "odd" => Some(Self::constant(Parity::Odd)),
            _ => None,
        }
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b) * b).abs()
    }
}

/// Anything that can be evaluated and counted on ℤ.
pub trait ParitySource {
    fn parity_at(&self, i: i64) -> Parity;

    /// Odd values in the inclusive range `[a, b]`; zero when `a > b`.
    fn count_odd(&self, a: i64, b: i64) -> u64 {
        (a..=b).filter(|&i| self.parity_at(i).is_odd()).count() as u64
    }
}

impl ParitySource for ParityFunction {
    fn parity_at(&self, i: i64) -> Parity {
        self.at(i)
    }

    fn count_odd(&self, a: i64, b: i64) -> u64 {
        self.odd_count(a, b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockRule {
    /// Block `n` has length `r^n`.
    Geometric(u64),
    /// Block `n` has length `(n + 1)^d`.
    Polynomial(u32),
}

/// Alternating constant blocks on ℕ with growing lengths, mirrored onto the
/// negative integers by `p(-1 - i) = p(i)`. Not eventually periodic in general.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockProgram {
    pub start_parity: Parity,
    pub rule: BlockRule,
}

impl BlockProgram {
    pub fn new(start_parity: Parity, rule: BlockRule) -> Result<Self> {
        if let BlockRule::Geometric(r) = rule {
            if r < 2 {
                return Err(Error::Parse("geometric block ratio must be at least 2".into()));
            }
        }
        Ok(BlockProgram { start_parity, rule })
    }

    fn block_len(&self, n: u32) -> i64 {
        match self.rule {
            BlockRule::Geometric(r) => (r as i64).saturating_pow(n),
            BlockRule::Polynomial(d) => ((n as i64) + 1).saturating_pow(d),
        }
    }

    /// Odd values in `[0, x)` for `x >= 0`.
    fn odd_prefix(&self, x: i64) -> i64 {
        let mut start = 0i64;
        let mut odd = 0i64;
        let mut n = 0u32;
        let mut parity = self.start_parity;
        while start < x {
            let len = self.block_len(n);
            let end = start.saturating_add(len).min(x);
            if parity.is_odd() {
                odd += end - start;
            }
            start = start.saturating_add(len);
            n += 1;
            parity = parity.flip();
        }
        odd
    }

    fn at_nonnegative(&self, i: i64) -> Parity {
        let mut start = 0i64;
        let mut n = 0u32;
        let mut parity = self.start_parity;
        loop {
            let len = self.block_len(n);
            if i < start.saturating_add(len) {
                return parity;
            }
            start += len;
            n += 1;
            parity = parity.flip();
        }
    }
}

impl ParitySource for BlockProgram {
    fn parity_at(&self, i: i64) -> Parity {
        if i >= 0 {
            self.at_nonnegative(i)
        } else {
            self.at_nonnegative(-1 - i)
        }
    }

    fn count_odd(&self, a: i64, b: i64) -> u64 {
        if a > b {
            return 0;
        }
        let mut total = 0;
        if b >= 0 {
            let lo = a.max(0);
            total += self.odd_prefix(b + 1) - self.odd_prefix(lo);
        }
        if a < 0 {
            // mirror [a, min(b,-1)] onto [-1-min(b,-1), -1-a]
            let hi = b.min(-1);
            total += self.odd_prefix(-a) - self.odd_prefix(-1 - hi);
        }
        total as u64
    }
}

// ---- wire format ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailJson {
    #[serde(rename = "const")]
    Const(String),
    #[serde(rename = "periodic")]
    Periodic(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityFunctionJson {
    #[serde(default)]
    pub window_lo: i64,
    #[serde(default)]
    pub window: String,
    pub left_tail: TailJson,
    pub right_tail: TailJson,
}

impl TailJson {
    fn to_rule(&self) -> Result<TailRule> {
        match self {
            TailJson::Const(s) => {
                let w = parse_word(s)?;
                if w.len() != 1 {
                    return Err(Error::Parse(format!("const tail must be one digit, got {s:?}")));
                }
                Ok(TailRule::Constant(w[0]))
            }
            TailJson::Periodic(s) => TailRule::periodic(parse_word(s)?),
        }
    }

    fn from_rule(rule: &TailRule) -> Self {
        match rule {
            TailRule::Constant(c) => TailJson::Const(c.to_char().to_string()),
            TailRule::Periodic(w) => TailJson::Periodic(word_string(w)),
        }
    }
}

impl TryFrom<&ParityFunctionJson> for ParityFunction {
    type Error = Error;

    fn try_from(j: &ParityFunctionJson) -> Result<Self> {
        Ok(ParityFunction::new(
            j.window_lo,
            parse_word(&j.window)?,
            j.left_tail.to_rule()?,
            j.right_tail.to_rule()?,
        ))
    }
}

impl From<&ParityFunction> for ParityFunctionJson {
    fn from(p: &ParityFunction) -> Self {
        ParityFunctionJson {
            window_lo: p.window_lo,
            window: word_string(&p.window),
            left_tail: TailJson::from_rule(&p.left),
            right_tail: TailJson::from_rule(&p.right),
        }
    }
}

/// Either a builtin name (a JSON string) or an explicit object. Dispatches on
/// the token type instead of buffering, so parse errors keep their position.
pub(crate) enum NamedOr<T> {
    Named(String),
    Explicit(T),
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for NamedOr<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct Visit<T>(std::marker::PhantomData<T>);

        impl<'de, T: Deserialize<'de>> serde::de::Visitor<'de> for Visit<T> {
            type Value = NamedOr<T>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a builtin name or an object")
            }

            fn visit_str<E: serde::de::Error>(self, s: &str) -> std::result::Result<Self::Value, E> {
                Ok(NamedOr::Named(s.to_owned()))
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(self, map: A) -> std::result::Result<Self::Value, A::Error> {
                T::deserialize(serde::de::value::MapAccessDeserializer::new(map)).map(NamedOr::Explicit)
            }
        }

        deserializer.deserialize_any(Visit(std::marker::PhantomData))
    }
}

impl Serialize for ParityFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ParityFunctionJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParityFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match NamedOr::<ParityFunctionJson>::deserialize(deserializer)? {
            NamedOr::Named(name) => ParityFunction::builtin(&name)
                .ok_or_else(|| D::Error::custom(format!("unknown builtin parity function {name:?}"))),
            NamedOr::Explicit(j) => ParityFunction::try_from(&j).map_err(D::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BlockProgramJson {
    start_parity: String,
    rule: BlockRule,
}

#[derive(Serialize, Deserialize)]
struct BlocksWrapper {
    blocks: BlockProgramJson,
}

impl Serialize for BlockProgram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BlocksWrapper {
            blocks: BlockProgramJson {
                start_parity: self.start_parity.to_char().to_string(),
                rule: self.rule,
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BlockProgram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = BlocksWrapper::deserialize(deserializer)?;
        let start = parse_word(&w.blocks.start_parity).map_err(D::Error::custom)?;
        if start.len() != 1 {
            return Err(D::Error::custom("start_parity must be \"0\" or \"1\""));
        }
        BlockProgram::new(start[0], w.blocks.rule).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Parity::{Even, Odd};

    #[test]
    fn builtin_values() {
        let st = ParityFunction::p_st();
        assert_eq!(st.at(4), Even);
        assert_eq!(st.at(-3), Odd);
        let plus = ParityFunction::p_plus();
        assert_eq!(plus.at(-1), Even);
        assert_eq!(plus.at(0), Odd);
        assert_eq!(plus.at(1000), Odd);
    }

    #[test]
    fn canonical_forms_coincide() {
        // p_st written with a redundant window and a doubled period
        let w = parse_word("0101").unwrap();
        let a = ParityFunction::new(
            -4,
            parse_word("01010").unwrap(),
            TailRule::periodic(w.clone()).unwrap(),
            TailRule::periodic(w).unwrap(),
        );
        assert_eq!(a, ParityFunction::p_st());

        // p_plus written with its boundary moved right into the window
        let b = ParityFunction::new(
            -3,
            parse_word("00011").unwrap(),
            TailRule::Constant(Even),
            TailRule::Constant(Odd),
        );
        assert_eq!(b, ParityFunction::p_plus());
    }

    #[test]
    fn empty_window_boundary_is_canonical() {
        // left p_st, right all odd: boundary can sit at any odd index
        let l = TailRule::periodic(vec![Even, Odd]).unwrap();
        let r = TailRule::Constant(Odd);
        let a = ParityFunction::new(4, vec![], l.clone(), r.clone());
        let b = ParityFunction::new(3, vec![], l, r);
        assert_eq!(a, b);
        for i in -10..10 {
            assert_eq!(a.at(i), b.at(i));
        }
    }

    #[test]
    fn counting_matches_enumeration() {
        let p = ParityFunction::new(
            -3,
            parse_word("1101").unwrap(),
            TailRule::periodic(parse_word("011").unwrap()).unwrap(),
            TailRule::periodic(parse_word("0010").unwrap()).unwrap(),
        );
        for a in -20..20 {
            for b in a..a + 25 {
                let brute = (a..=b).filter(|&i| p.at(i) == Odd).count() as u64;
                assert_eq!(p.odd_count(a, b), brute, "[{a},{b}]");
                assert_eq!(p.even_count(a, b), (b - a + 1) as u64 - brute);
            }
        }
    }

    #[test]
    fn from_fn_recovers_presentation() {
        let p = ParityFunction::new(
            2,
            parse_word("110").unwrap(),
            TailRule::periodic(parse_word("01").unwrap()).unwrap(),
            TailRule::Constant(Odd),
        );
        let q = ParityFunction::from_fn(|i| p.at(i), -7, 9, 2, 3);
        assert_eq!(p, q);
    }

    #[test]
    fn json_round_trip_and_builtins() {
        let p: ParityFunction = serde_json::from_str(
            r#"{"window_lo": -1, "window": "1", "left_tail": {"const": "0"}, "right_tail": {"periodic": "0110"}}"#,
        )
        .unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let q: ParityFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        let st: ParityFunction = serde_json::from_str(r#""p_st""#).unwrap();
        assert_eq!(st, ParityFunction::p_st());
        assert!(serde_json::from_str::<ParityFunction>(r#""nope""#).is_err());
        assert!(serde_json::from_str::<ParityFunction>(
            r#"{"window": "2", "left_tail": {"const": "0"}, "right_tail": {"const": "0"}}"#
        )
        .is_err());
    }

    #[test]
    fn block_program_counts() {
        let b = BlockProgram::new(Even, BlockRule::Geometric(2)).unwrap();
        // blocks: [0] even, [1,2] odd, [3..6] even, [7..14] odd
        let expected = [0, 1, 1, 0, 0, 0, 0, 1, 1];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(b.parity_at(i as i64).bit(), e);
            assert_eq!(b.parity_at(-1 - i as i64).bit(), e);
        }
        for a in -40..40 {
            for len in 0..50 {
                let bb = a + len;
                let brute = (a..=bb).filter(|&i| b.parity_at(i).is_odd()).count() as u64;
                assert_eq!(b.count_odd(a, bb), brute);
            }
        }
        let j = serde_json::to_string(&b).unwrap();
        assert_eq!(j, r#"{"blocks":{"start_parity":"0","rule":{"geometric":2}}}"#);
        let back: BlockProgram = serde_json::from_str(&j).unwrap();
        assert_eq!(back, b);
    }
}
