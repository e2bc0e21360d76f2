use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{Letter, ParityWord};

/// Cap on the number of root systems a linear orbit may visit.
const MAX_ORBIT: usize = 200_000;

/// A vector in the `(ε₁..ε_m, δ₁..δ_n)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    /// `slot_a − slot_b` in dimension `dim`.
    pub fn difference(dim: usize, a: usize, b: usize) -> Self {
        let mut v = vec![0; dim];
        v[a] += 1;
        v[b] -= 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `(x, y)` with `(ε_a, ε_b) = δ_ab` and `(δ_a, δ_b) = −δ_ab`; slots `>= m` are δ.
    pub fn form(&self, other: &Root, m: usize) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .map(|(k, (x, y))| if k < m { x * y } else { -x * y })
            .sum()
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|x| -x).collect())
    }

    pub fn add_scaled(&self, other: &Root, c: i64) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(x, y)| x + c * y).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Even roots live inside one block; `ε − δ` roots are odd.
    pub fn is_even(&self, m: usize) -> bool {
        let e = self.0[..m].iter().any(|&x| x != 0);
        let d = self.0[m..].iter().any(|&x| x != 0);
        !(e && d)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Simple roots `v_i − v_{i+1}` of a word, where the k-th `E` is `ε_k` and the k-th `D` is `δ_k`.
pub fn simple_roots(word: &ParityWord) -> Vec<Root> {
    let m = word.m();
    let dim = word.len();
    let mut slots = Vec::with_capacity(dim);
    let (mut e, mut d) = (0, 0);
    for l in word.letters() {
        match l {
            Letter::E => {
                slots.push(e);
                e += 1;
            }
            Letter::D => {
                slots.push(m + d);
                d += 1;
            }
        }
    }
    slots.windows(2).map(|w| Root::difference(dim, w[0], w[1])).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    pub entries: Vec<Vec<i64>>,
    /// `true` for isotropic (⊗) nodes.
    pub grey: Vec<bool>,
}

impl CartanMatrix {
    /// Gram matrix of the roots; rows with negative diagonal are negated.
    pub fn from_roots(roots: &[Root], m: usize) -> Self {
        let mut entries: Vec<Vec<i64>> = roots
            .iter()
            .map(|a| roots.iter().map(|b| a.form(b, m)).collect())
            .collect();
        for (i, row) in entries.iter_mut().enumerate() {
            if row[i] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }
        let grey = (0..roots.len()).map(|i| entries[i][i] == 0).collect();
        CartanMatrix { entries, grey }
    }

    pub fn from_word(word: &ParityWord) -> Self {
        Self::from_roots(&simple_roots(word), word.m())
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// 1-based entry access.
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }
}

/// `r_{α_i}(α_j)` as coefficients over the simple roots; nodes are 1-based.
pub fn linear_reflection(a: &CartanMatrix, i: usize, j: usize) -> Vec<i64> {
    let mut out = vec![0; a.size()];
    out[j - 1] = 1;
    if i == j {
        out[j - 1] = -1;
        return out;
    }
    let coeff = match a.at(i, i) {
        2 => -a.at(i, j),
        1 => -2 * a.at(i, j),
        0 if a.at(j, i) != 0 => 1,
        0 => 0,
        d => -2 * a.at(i, j) / d,
    };
    out[i - 1] += coeff;
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    /// Root systems in discovery order, each as the ordered list of simple roots.
    pub bases: Vec<Vec<Root>>,
    /// Node sequence (applied left to right) leading from the first base to each entry.
    pub certificates: Vec<Vec<usize>>,
    /// `false` when the depth or size cap cut the search short.
    pub complete: bool,
}

impl OrbitReport {
    pub fn contains_set(&self, roots: &[Root]) -> bool {
        let key: BTreeSet<&Root> = roots.iter().collect();
        self.bases.iter().any(|b| b.iter().collect::<BTreeSet<_>>() == key)
    }
}

fn apply_linear(roots: &[Root], m: usize, i: usize) -> Vec<Root> {
    let a = CartanMatrix::from_roots(roots, m);
    (1..=roots.len())
        .map(|j| {
            let coeffs = linear_reflection(&a, i, j);
            coeffs
                .iter()
                .zip(roots)
                .fold(Root(vec![0; roots[0].0.len()]), |acc, (&c, r)| acc.add_scaled(r, c))
        })
        .collect()
}

/// Closure of the distinguished simple-root system under linear reflections.
///
/// Systems are identified as sets of roots. The search stops at `depth`
/// reflections from the start.
pub fn linear_weyl_orbit(m: usize, n: usize, depth: usize) -> OrbitReport {
    let start = simple_roots(&ParityWord::distinguished(m, n));
    let key = |r: &[Root]| r.iter().cloned().collect::<BTreeSet<Root>>();
    let mut seen: HashMap<BTreeSet<Root>, usize> = HashMap::new();
    seen.insert(key(&start), 0);
    let mut report = OrbitReport {
        bases: vec![start],
        certificates: vec![vec![]],
        complete: true,
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(ix) = queue.pop_front() {
        if report.certificates[ix].len() >= depth {
            report.complete = false;
            continue;
        }
        let here = report.bases[ix].clone();
        for i in 1..=here.len() {
            let next = apply_linear(&here, m, i);
            let k = key(&next);
            if seen.contains_key(&k) {
                continue;
            }
            if report.bases.len() >= MAX_ORBIT {
                report.complete = false;
                return report;
            }
            let mut cert = report.certificates[ix].clone();
            cert.push(i);
            seen.insert(k, report.bases.len());
            queue.push_back(report.bases.len());
            report.bases.push(next);
            report.certificates.push(cert);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ParityWord {
        s.parse().unwrap()
    }

    #[test]
    fn cartan_of_words() {
        let a = CartanMatrix::from_word(&w("EEDD"));
        assert_eq!(a.entries, vec![vec![2, -1, 0], vec![-1, 0, 1], vec![0, -1, 2]]);
        assert_eq!(a.grey, vec![false, true, false]);
        let b = CartanMatrix::from_word(&w("EDED"));
        assert!(b.grey.iter().all(|&g| g));
    }

    #[test]
    fn five_cases() {
        let sl3 = CartanMatrix::from_word(&w("EEE"));
        assert_eq!(linear_reflection(&sl3, 1, 1), vec![-1, 0]);
        assert_eq!(linear_reflection(&sl3, 1, 2), vec![1, 1]);
        let sl21 = CartanMatrix::from_word(&w("EED"));
        assert_eq!(linear_reflection(&sl21, 2, 1), vec![1, 1]);
        let sl11 = CartanMatrix::from_word(&w("ED"));
        assert_eq!(linear_reflection(&sl11, 1, 1), vec![-1]);
        // grey node with a vanishing column entry fixes the root
        let long = CartanMatrix::from_word(&w("EDEE"));
        assert_eq!(linear_reflection(&long, 1, 3), vec![0, 0, 1]);
        let b_type = CartanMatrix {
            entries: vec![vec![2, -1], vec![-1, 1]],
            grey: vec![false, false],
        };
        assert_eq!(linear_reflection(&b_type, 2, 1), vec![1, 2]);
    }

    #[test]
    fn classical_reflections_agree() {
        // on all-even words the formula is s_i(x) = x − (x, α_i) α_i
        let word = w("EEEE");
        let roots = simple_roots(&word);
        let a = CartanMatrix::from_word(&word);
        for i in 1..=3 {
            for j in 1..=3 {
                let c = linear_reflection(&a, i, j);
                let got = c.iter().zip(&roots).fold(Root(vec![0; 4]), |acc, (&k, r)| acc.add_scaled(r, k));
                let want = roots[j - 1].add_scaled(&roots[i - 1], -roots[j - 1].form(&roots[i - 1], 4));
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn small_orbits() {
        let sl2 = linear_weyl_orbit(2, 0, 6);
        assert!(sl2.complete);
        assert_eq!(sl2.bases.len(), 2);
        assert_eq!(sl2.bases[1], vec![Root(vec![-1, 1])]);
        assert_eq!(linear_weyl_orbit(1, 1, 6).bases.len(), 2);
        let sl21 = linear_weyl_orbit(2, 1, 6);
        for word in ["EED", "EDE", "DEE"] {
            assert!(sl21.contains_set(&simple_roots(&w(word))), "{word}");
        }
        let cut = linear_weyl_orbit(3, 2, 1);
        assert!(!cut.complete);
    }
}
