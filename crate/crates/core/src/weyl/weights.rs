use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parity::{lcm, Parity};

use super::cartan::Root;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub coords: Vec<i64>,
    pub parity: Parity,
}

impl Weight {
    /// Parity is the sum of the δ-coordinates mod 2.
    pub fn new(coords: Vec<i64>, m: usize) -> Self {
        let odd = coords[m..].iter().sum::<i64>().rem_euclid(2) == 1;
        Weight {
            coords,
            parity: Parity::from_bit(odd as u8),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightSetLabel {
    Tautological,
    Dual,
    Tensor(u32),
    Adjoint,
    /// Irreducible covariant module for a hook partition.
    Covariant(Vec<u32>),
    User,
}

impl fmt::Display for WeightSetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSetLabel::Tautological => f.write_str("tautological"),
            WeightSetLabel::Dual => f.write_str("dual"),
            WeightSetLabel::Tensor(d) => write!(f, "tensor({d})"),
            WeightSetLabel::Adjoint => f.write_str("adjoint"),
            WeightSetLabel::Covariant(l) => {
                let parts: Vec<String> = l.iter().map(u32::to_string).collect();
                write!(f, "covariant({})", parts.join(","))
            }
            WeightSetLabel::User => f.write_str("user"),
        }
    }
}

/// A finite weight multiset of a gl(m|n)-module. Membership ignores multiplicity.
#[derive(Clone, Debug, Serialize)]
pub struct WeightSet {
    pub m: usize,
    pub n: usize,
    pub label: WeightSetLabel,
    pub weights: Vec<Weight>,
    pub multiplicities: Vec<u64>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
}

impl WeightSet {
    /// Builds a set from `(coords, multiplicity)` pairs; repeated coords are merged.
    pub fn from_multiset(m: usize, n: usize, label: WeightSetLabel, items: impl IntoIterator<Item = (Vec<i64>, u64)>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (c, k) in items {
            if c.len() != m + n {
                return Err(Error::InvalidWord(format!("weight {c:?} has length {} not {}", c.len(), m + n)));
            }
            if k == 0 {
                return Err(Error::InvalidWord("multiplicities must be positive".into()));
            }
            *merged.entry(c).or_default() += k;
        }
        let mut weights = Vec::with_capacity(merged.len());
        let mut multiplicities = Vec::with_capacity(merged.len());
        let mut index = HashMap::new();
        for (ix, (c, k)) in merged.into_iter().enumerate() {
            index.insert(c.clone(), ix);
            weights.push(Weight::new(c, m));
            multiplicities.push(k);
        }
        Ok(WeightSet { m, n, label, weights, multiplicities, index })
    }

    pub fn user(m: usize, n: usize, coords: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_multiset(m, n, WeightSetLabel::User, coords.into_iter().map(|c| (c, 1)))
    }

    pub fn tautological(m: usize, n: usize) -> Self {
        let dim = m + n;
        let items = (0..dim).map(|a| (unit(dim, a, 1), 1));
        Self::from_multiset(m, n, WeightSetLabel::Tautological, items).unwrap()
    }

    pub fn dual(m: usize, n: usize) -> Self {
        let dim = m + n;
        let items = (0..dim).map(|a| (unit(dim, a, -1), 1));
        Self::from_multiset(m, n, WeightSetLabel::Dual, items).unwrap()
    }

    /// Weights of `V^{⊗d}`: compositions of `d` with multinomial multiplicities.
    pub fn tensor(m: usize, n: usize, d: u32) -> Self {
        let mut items = Vec::new();
        compositions(d as i64, m + n, &mut vec![], &mut items);
        let fact = |k: i64| (1..=k as u64).product::<u64>();
        let items = items.into_iter().map(|c| {
            let mult = fact(d as i64) / c.iter().map(|&x| fact(x)).product::<u64>();
            (c, mult)
        });
        Self::from_multiset(m, n, WeightSetLabel::Tensor(d), items).unwrap()
    }

    /// Roots `v_a − v_b` together with `0` of multiplicity `m + n − 1`.
    pub fn adjoint(m: usize, n: usize) -> Self {
        let dim = m + n;
        let mut items = vec![(vec![0; dim], (dim as u64).saturating_sub(1).max(1))];
        for a in 0..dim {
            for b in 0..dim {
                if a != b {
                    items.push((Root::difference(dim, a, b).0, 1));
                }
            }
        }
        Self::from_multiset(m, n, WeightSetLabel::Adjoint, items).unwrap()
    }

    /// Weights of the covariant module for a hook partition, counted by
    /// semistandard supertableaux over `ε₁ < … < ε_m < δ₁ < … < δ_n`.
    pub fn covariant(m: usize, n: usize, shape: &[u32]) -> Result<Self> {
        let shape: Vec<usize> = shape.iter().copied().filter(|&r| r > 0).map(|r| r as usize).collect();
        if shape.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWord(format!("{shape:?} is not a partition")));
        }
        if shape.get(m).is_some_and(|&r| r > n) {
            return Err(Error::InvalidWord(format!("{shape:?} is not an ({m}|{n}) hook partition")));
        }
        let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
        let mut fill = vec![vec![usize::MAX; shape.first().copied().unwrap_or(0)]; shape.len()];
        let mut counts: HashMap<Vec<i64>, u64> = HashMap::new();
        tableaux(m, m + n, &cells, 0, &mut fill, &mut counts);
        let label = WeightSetLabel::Covariant(shape.iter().map(|&r| r as u32).collect());
        Self::from_multiset(m, n, label, counts)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn contains(&self, coords: &[i64]) -> bool {
        self.index.contains_key(coords)
    }

    pub fn position(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Total dimension counted with multiplicity.
    pub fn dimension(&self) -> u64 {
        self.multiplicities.iter().sum()
    }
}

fn unit(dim: usize, a: usize, v: i64) -> Vec<i64> {
    let mut c = vec![0; dim];
    c[a] = v;
    c
}

fn compositions(left: i64, parts: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() + 1 == parts {
        prefix.push(left);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in 0..=left {
        prefix.push(k);
        compositions(left - k, parts, prefix, out);
        prefix.pop();
    }
}

fn tableaux(m: usize, dim: usize, cells: &[(usize, usize)], at: usize, fill: &mut [Vec<usize>], out: &mut HashMap<Vec<i64>, u64>) {
    if at == cells.len() {
        let mut w = vec![0i64; dim];
        for &(r, c) in cells {
            w[fill[r][c]] += 1;
        }
        *out.entry(w).or_default() += 1;
        return;
    }
    let (r, c) = cells[at];
    for letter in 0..dim {
        let even = letter < m;
        // rows weakly increase in even letters, strictly in odd ones
        if c > 0 {
            let left = fill[r][c - 1];
            if letter < left || (letter == left && !even) {
                continue;
            }
        }
        // columns strictly increase in even letters, weakly in odd ones
        if r > 0 {
            let up = fill[r - 1][c];
            if letter < up || (letter == up && even) {
                continue;
            }
        }
        fill[r][c] = letter;
        tableaux(m, dim, cells, at + 1, fill, out);
    }
    fill[r][c] = usize::MAX;
}

/// Partitions of `d` whose `(m+1)`-th part is at most `n`.
pub fn hook_partitions(m: usize, n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=left.min(max)).rev() {
            prefix.push(k);
            go(left - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    go(d, d, &mut vec![], &mut all);
    all.retain(|l| l.get(m).is_none_or(|&r| r as usize <= n));
    all
}

/// The maximal run `γ − qα, …, γ + pα` inside Γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaString {
    pub p: u32,
    pub q: u32,
    /// `p + q − 1`, kept in the conventional form; the run has `p + q + 1` weights.
    pub length: i64,
}

pub fn alpha_string(set: &WeightSet, gamma: &[i64], alpha: &Root) -> Result<AlphaString> {
    if !set.contains(gamma) {
        return Err(Error::WeightNotInSet);
    }
    if alpha.is_zero() {
        return Ok(AlphaString { p: 0, q: 0, length: -1 });
    }
    let step = |k: i64| -> Vec<i64> { gamma.iter().zip(&alpha.0).map(|(g, a)| g + k * a).collect() };
    let mut p = 0;
    while set.contains(&step(p as i64 + 1)) {
        p += 1;
    }
    let mut q = 0;
    while set.contains(&step(-(q as i64) - 1)) {
        q += 1;
    }
    Ok(AlphaString { p, q, length: p as i64 + q as i64 - 1 })
}

/// `r_α(γ) = γ + (p − q)α`.
pub fn reflect_weight(set: &WeightSet, gamma: &[i64], alpha: &Root) -> Result<Weight> {
    let s = alpha_string(set, gamma, alpha)?;
    let k = s.p as i64 - s.q as i64;
    let coords = gamma.iter().zip(&alpha.0).map(|(g, a)| g + k * a).collect();
    Ok(Weight::new(coords, set.m))
}

fn reflection_map(set: &WeightSet, alpha: &Root) -> Vec<usize> {
    set.weights
        .iter()
        .map(|w| {
            let image = reflect_weight(set, &w.coords, alpha).expect("weight comes from the set");
            set.position(&image.coords).expect("strings stay inside the set")
        })
        .collect()
}

/// The composite `r_{w_1} ∘ … ∘ r_{w_k}` on Γ as an index map (the last root acts first).
pub fn apply_word(word: &[Root], set: &WeightSet) -> Vec<usize> {
    let mut map: Vec<usize> = (0..set.len()).collect();
    for alpha in word.iter().rev() {
        let r = reflection_map(set, alpha);
        map = map.iter().map(|&x| r[x]).collect();
    }
    map
}

/// Least `k ≥ 1` with the `k`-fold composite equal to the identity on Γ.
pub fn order_on(word: &[Root], set: &WeightSet) -> u64 {
    let map = apply_word(word, set);
    let mut seen = vec![false; map.len()];
    let mut order = 1u64;
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = map[x];
            len += 1;
        }
        order = lcm(order as i64, len as i64) as u64;
    }
    order
}
