use serde::Serialize;

use crate::error::{Error, Result};
use crate::parity::lcm;

use super::cartan::{simple_roots, Root};
use super::weights::{hook_partitions, order_on, WeightSet};
use super::word::ParityWord;

/// Largest `m + n` accepted by [`check_coxeter`].
pub const MAX_RANK: usize = 6;
/// Largest tensor degree accepted by [`check_coxeter`].
pub const MAX_DEGREE: u32 = 6;
/// Default order floor for ∞-edges.
pub const DEFAULT_FLOOR: u64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// `r_i² = 1`.
    Square,
    /// `(r_i r_j)³ = 1` for adjacent white nodes.
    Braid,
    /// `(r_i r_j)² = 1` for non-adjacent nodes.
    Commute,
}

impl RelationKind {
    fn divides(self) -> u64 {
        match self {
            RelationKind::Square | RelationKind::Commute => 2,
            RelationKind::Braid => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub kind: RelationKind,
    /// 1-based nodes; a square has one entry.
    pub nodes: Vec<usize>,
    pub d: u32,
    pub order: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfiniteEdge {
    pub nodes: (usize, usize),
    /// Order of `r_i r_j` for `d = 1..=d_max`.
    pub orders_by_d: Vec<u64>,
    pub exceeds_floor: bool,
    pub nondecreasing: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxeterReport {
    pub m: usize,
    pub n: usize,
    pub d_max: u32,
    pub floor: u64,
    pub base: ParityWord,
    /// Which weight sets the orders were measured on.
    pub weight_sets: String,
    pub relations: Vec<Relation>,
    pub infinite_edges: Vec<InfiniteEdge>,
    pub pass: bool,
}

/// Order of a word on `V^{⊗d}`, taken as the lcm over its covariant constituents.
fn order_in_degree(word: &[Root], constituents: &[WeightSet]) -> u64 {
    constituents.iter().fold(1, |acc, g| lcm(acc as i64, order_on(word, g) as i64) as u64)
}

/// Tests the Coxeter relations expected for the distinguished base of sl(m|n).
///
/// White-white neighbours should braid, distant nodes commute, every
/// reflection is an involution, and white-grey neighbours carry an ∞-edge:
/// their product must have order above `floor` at `d_max` and the order must
/// not drop as `d` grows. Results are evidence on finite weight sets only.
pub fn check_coxeter(m: usize, n: usize, d_max: u32, floor: u64) -> Result<CoxeterReport> {
    if m + n > MAX_RANK {
        return Err(Error::SizeBound(format!("m + n = {} exceeds {MAX_RANK}", m + n)));
    }
    if d_max > MAX_DEGREE {
        return Err(Error::SizeBound(format!("d_max = {d_max} exceeds {MAX_DEGREE}")));
    }
    if m + n < 2 || d_max == 0 {
        return Err(Error::InvalidRange("need m + n >= 2 and d_max >= 1".into()));
    }
    let base = ParityWord::distinguished(m, n);
    let roots = simple_roots(&base);
    let nodes = roots.len();
    let grey: Vec<bool> = (1..=nodes).map(|i| base.is_grey(i).unwrap()).collect();

    let by_degree: Vec<Vec<WeightSet>> = (1..=d_max)
        .map(|d| {
            hook_partitions(m, n, d)
                .iter()
                .map(|l| WeightSet::covariant(m, n, l).expect("hook partitions are valid shapes"))
                .collect()
        })
        .collect();
    let order = |word: &[Root], d: u32| order_in_degree(word, &by_degree[d as usize - 1]);

    let mut relations = Vec::new();
    let mut infinite_edges = Vec::new();
    for d in 1..=d_max {
        for i in 1..=nodes {
            let o = order(&[roots[i - 1].clone()], d);
            relations.push(Relation {
                kind: RelationKind::Square,
                nodes: vec![i],
                d,
                order: o,
                pass: 2 % o == 0,
            });
        }
    }
    for i in 1..=nodes {
        for j in i + 1..=nodes {
            let word = [roots[i - 1].clone(), roots[j - 1].clone()];
            let kind = if j > i + 1 {
                RelationKind::Commute
            } else if !grey[i - 1] && !grey[j - 1] {
                RelationKind::Braid
            } else if grey[i - 1] != grey[j - 1] {
                let orders_by_d: Vec<u64> = (1..=d_max).map(|d| order(&word, d)).collect();
                let exceeds_floor = *orders_by_d.last().unwrap() > floor;
                let nondecreasing = orders_by_d.windows(2).all(|w| w[0] <= w[1]);
                infinite_edges.push(InfiniteEdge {
                    nodes: (i, j),
                    orders_by_d,
                    exceeds_floor,
                    nondecreasing,
                    pass: exceeds_floor && nondecreasing,
                });
                continue;
            } else {
                // adjacent grey nodes do not occur in the distinguished base
                continue;
            };
            for d in 1..=d_max {
                let o = order(&word, d);
                relations.push(Relation {
                    kind,
                    nodes: vec![i, j],
                    d,
                    order: o,
                    pass: kind.divides() % o == 0,
                });
            }
        }
    }
    let pass = relations.iter().all(|r| r.pass) && infinite_edges.iter().all(|e| e.pass);
    Ok(CoxeterReport {
        m,
        n,
        d_max,
        floor,
        base,
        weight_sets: format!(
            "gl({m}|{n}) weights of the covariant constituents of V^{{⊗d}}, d = 1..={d_max}; orders are lcms over constituents"
        ),
        relations,
        infinite_edges,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_a2_passes() {
        let r = check_coxeter(3, 0, 4, DEFAULT_FLOOR).unwrap();
        assert!(r.pass);
        assert!(r.infinite_edges.is_empty());
        assert!(r.relations.iter().any(|x| x.kind == RelationKind::Braid && x.order == 3));
    }

    #[test]
    fn sl21_edge_orders() {
        let r = check_coxeter(2, 1, 6, DEFAULT_FLOOR).unwrap();
        assert!(r.relations.iter().all(|x| x.pass));
        assert_eq!(r.infinite_edges.len(), 1);
        let e = &r.infinite_edges[0];
        assert_eq!(e.nodes, (1, 2));
        assert_eq!(e.orders_by_d, vec![3, 20, 84, 72, 1320, 1560]);
        assert!(e.exceeds_floor);
        assert!(!e.nondecreasing);
    }

    #[test]
    fn bounds() {
        assert!(matches!(check_coxeter(4, 3, 2, 12), Err(Error::SizeBound(_))));
        assert!(matches!(check_coxeter(2, 1, 7, 12), Err(Error::SizeBound(_))));
    }
}
