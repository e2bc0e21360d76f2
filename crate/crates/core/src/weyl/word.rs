use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `m + n` for which bases are enumerated.
const MAX_RANK: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// An ε-slot (even basis vector).
    E,
    /// A δ-slot (odd basis vector).
    D,
}

/// A base of gl(m|n) as the sequence of parities of the ordered basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParityWord(Vec<Letter>);

impl ParityWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        ParityWord(letters)
    }

    /// `E^m D^n`.
    pub fn distinguished(m: usize, n: usize) -> Self {
        let mut v = vec![Letter::E; m];
        v.extend(std::iter::repeat_n(Letter::D, n));
        ParityWord(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn m(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::E).count()
    }

    pub fn n(&self) -> usize {
        self.len() - self.m()
    }

    /// Number of Dynkin nodes, `m + n − 1`.
    pub fn nodes(&self) -> usize {
        self.len().saturating_sub(1)
    }

    /// Node `i` (1-based) is grey iff letters `i` and `i+1` differ.
    pub fn is_grey(&self, i: usize) -> Result<bool> {
        self.check_node(i)?;
        Ok(self.0[i - 1] != self.0[i])
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.nodes() {
            return Err(Error::InvalidWord(format!(
                "node {i} out of range 1..={}",
                self.nodes()
            )));
        }
        Ok(())
    }

    /// Base change through the isotropic simple root at node `i`.
    pub fn odd_reflection(&self, i: usize) -> Result<Self> {
        if !self.is_grey(i)? {
            return Err(Error::WhiteNode(i));
        }
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Ok(ParityWord(v))
    }

    /// Diagram such as `○--⊗--○`.
    pub fn diagram(&self) -> String {
        (1..=self.nodes())
            .map(|i| if self.0[i - 1] != self.0[i] { "⊗" } else { "○" })
            .collect::<Vec<_>>()
            .join("--")
    }
}

impl fmt::Display for ParityWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::E => "E",
                Letter::D => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for ParityWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'E' | 'e' => Ok(Letter::E),
                'D' | 'd' => Ok(Letter::D),
                _ => Err(Error::InvalidWord(format!("letter {c:?} is not E or D"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ParityWord)
    }
}

impl Serialize for ParityWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ParityWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All bases of gl(m|n) linked by odd reflections; edge weights are node indices.
#[derive(Clone, Debug)]
pub struct BaseGraph {
    pub m: usize,
    pub n: usize,
    pub graph: UnGraph<ParityWord, usize>,
}

impl BaseGraph {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn is_connected(&self) -> bool {
        petgraph::algo::connected_components(&self.graph) <= 1
    }

    pub fn words(&self) -> Vec<&ParityWord> {
        self.graph.node_weights().collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph bases_gl_{}_{} {{\n", self.m, self.n);
        for idx in self.graph.node_indices() {
            let w = &self.graph[idx];
            out.push_str(&format!("  \"{w}\" [label=\"{w}\\n{}\"];\n", w.diagram()));
        }
        for e in self.graph.edge_indices() {
            let (a, b) = self.graph.edge_endpoints(e).unwrap();
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                self.graph[a], self.graph[b], self.graph[e]
            ));
        }
        out.push_str("}\n");
        out
    }

    /// One line per base: word and diagram.
    pub fn to_ascii(&self) -> String {
        self.graph
            .node_weights()
            .map(|w| format!("{w}  {}\n", w.diagram()))
            .collect()
    }
}

/// Breadth-first closure of the distinguished word under odd reflections.
pub fn enumerate_bases(m: usize, n: usize) -> Result<BaseGraph> {
    if m + n == 0 {
        return Err(Error::InvalidWord("gl(0|0) has no bases".into()));
    }
    if m + n > MAX_RANK {
        return Err(Error::SizeBound(format!("m + n = {} exceeds {MAX_RANK}", m + n)));
    }
    let mut graph = UnGraph::new_undirected();
    let mut seen: HashMap<ParityWord, NodeIndex> = HashMap::new();
    let start = ParityWord::distinguished(m, n);
    let root = graph.add_node(start.clone());
    seen.insert(start.clone(), root);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let here = seen[&w];
        for i in 1..=w.nodes() {
            let Ok(next) = w.odd_reflection(i) else { continue };
            let there = match seen.get(&next) {
                Some(&ix) => ix,
                None => {
                    let ix = graph.add_node(next.clone());
                    seen.insert(next.clone(), ix);
                    queue.push_back(next);
                    ix
                }
            };
            if here.index() < there.index() {
                graph.add_edge(here, there, i);
            }
        }
    }
    Ok(BaseGraph { m, n, graph })
}
