use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use anyhow::{bail, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use superglinf::extension::{cocycle, extended_bracket, ExtendedElement};
use superglinf::invariants::{classify, equivalent, spectrum, EquivalenceWitness, SpectrumEstimate, SpectrumInput};
use superglinf::loops::{
    from_loop, subalgebra_member, subalgebra_project, to_loop, InvolutionSpec, LaurentMatrix, PeriodicBandMatrix,
    PeriodicType,
};
use superglinf::matrix::SuperMatrix;
use superglinf::parity::{parse_word, ParityFunction};
use superglinf::permutation::{FinPermutation, Group};
use superglinf::sample::Sampler;
use superglinf::scalar::Scalar;
use superglinf::weyl::{check_coxeter, enumerate_bases, CoxeterReport, ParityWord};

use crate::input::load;
use crate::Verb;

/// What a verb prints, and whether its checks held.
pub struct Report {
    pub text: String,
    pub pass: bool,
}

fn json<T: Serialize>(value: &T, pass: bool) -> Result<Report> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(Report { text, pass })
}

pub fn run(verb: &Verb) -> Result<Report> {
    match verb {
        Verb::ParityClassify { input } => {
            let p: ParityFunction = load(input)?;
            json(&classify(&p), true)
        }
        Verb::ParityEquiv { first, second, group } => parity_equiv(first, second, *group),
        Verb::ParitySpectrum { input, side, schedule, csv } => {
            let input: SpectrumInput = load(input)?;
            let estimate = spectrum(&input, *side, schedule)?;
            if *csv {
                spectrum_csv(&estimate)
            } else {
                json(&estimate, true)
            }
        }
        Verb::Bracket { a, b, extended } => {
            if *extended {
                let (x, y): (ExtendedElement, ExtendedElement) = (load(a)?, load(b)?);
                json(&extended_bracket(&x, &y)?, true)
            } else {
                let (x, y): (SuperMatrix, SuperMatrix) = (load(a)?, load(b)?);
                json(&x.bracket(&y)?, true)
            }
        }
        Verb::Cocycle { a, b } => {
            let (x, y): (SuperMatrix, SuperMatrix) = (load(a)?, load(b)?);
            json(&CocycleReport { cocycle: cocycle(&x, &y)? }, true)
        }
        Verb::Phi { sigma, x } => {
            let sigma: FinPermutation = load(sigma)?;
            let x: ExtendedElement = load(x)?;
            json(&sigma.phi(&x)?, true)
        }
        Verb::WeylBases { m, n, dot, ascii } => weyl_bases(*m, *n, *dot, *ascii),
        Verb::WeylCoxeter { m, n, d_max, floor, ascii } => {
            let report = check_coxeter(*m, *n, *d_max, *floor)?;
            if *ascii {
                Ok(Report { text: coxeter_ascii(&report), pass: report.pass })
            } else {
                json(&report, report.pass)
            }
        }
        Verb::LoopCheck { x, y, window, trials, seed, ascii } => match (x, y) {
            (Some(x), Some(y)) => loop_pair(&load(x)?, &load(y)?, *window, *ascii),
            (None, None) => loop_trials(*trials, *seed, *window),
            _ => bail!("loop-check takes two matrices or none"),
        },
        Verb::SubalgCheck { kind, a, b, trials, seed } => match a {
            Some(a) => {
                let b = b.as_deref().map(load).transpose()?;
                subalg_explicit(*kind, &load(a)?, b.as_ref())
            }
            None => subalg_trials(*kind, *trials, *seed),
        },
    }
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub cocycle: Scalar,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivReport {
    #[serde(flatten)]
    pub witness: EquivalenceWitness,
    /// Whether applying the witness to the first function gives the second; absent when there is no witness.
    pub replay_verified: Option<bool>,
}

fn parity_equiv(first: &str, second: &str, group: Group) -> Result<Report> {
    let (p1, p2): (ParityFunction, ParityFunction) = (load(first)?, load(second)?);
    let witness = equivalent(&p1, &p2, group)?;
    let replay_verified = witness.equivalent.then(|| witness.replay(&p1).as_ref() == Some(&p2));
    let pass = replay_verified != Some(false);
    json(&EquivReport { witness, replay_verified }, pass)
}

fn spectrum_csv(e: &SpectrumEstimate) -> Result<Report> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["lo", "hi", "density", "density_f64"])?;
    for s in &e.samples {
        w.write_record([s.lo.to_string(), s.hi.to_string(), s.density.to_string(), format!("{:.6}", s.density.to_f64())])?;
    }
    let mut text = String::from_utf8(w.into_inner()?)?;
    let side = serde_json::to_value(e.side)?;
    writeln!(
        text,
        "# estimate side={} lower={} upper={} exact={} drift={:.6}",
        side.as_str().unwrap_or_default(),
        e.lower,
        e.upper,
        e.exact,
        e.drift
    )?;
    Ok(Report { text, pass: true })
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseEntry {
    pub word: ParityWord,
    pub diagram: String,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseEdge {
    pub from: ParityWord,
    pub to: ParityWord,
    pub node: usize,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct BasesReport {
    pub m: usize,
    pub n: usize,
    pub count: usize,
    pub connected: bool,
    pub bases: Vec<BaseEntry>,
    pub edges: Vec<BaseEdge>,
}

fn weyl_bases(m: usize, n: usize, dot: bool, ascii: bool) -> Result<Report> {
    let g = enumerate_bases(m, n)?;
    if dot {
        return Ok(Report { text: g.to_dot(), pass: true });
    }
    if ascii {
        return Ok(Report { text: g.to_ascii(), pass: true });
    }
    let graph = &g.graph;
    let report = BasesReport {
        m,
        n,
        count: g.node_count(),
        connected: g.is_connected(),
        bases: graph
            .node_weights()
            .map(|w| BaseEntry { word: w.clone(), diagram: w.diagram() })
            .collect(),
        edges: graph
            .edge_indices()
            .filter_map(|e| {
                let (a, b) = graph.edge_endpoints(e)?;
                Some(BaseEdge { from: graph[a].clone(), to: graph[b].clone(), node: graph[e] })
            })
            .collect(),
    };
    json(&report, true)
}

fn coxeter_ascii(r: &CoxeterReport) -> String {
    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    let mut out = String::new();
    let _ = writeln!(out, "sl({}|{})  base {}  {}", r.m, r.n, r.base, r.base.diagram());
    let _ = writeln!(out, "{:<10}{:<10}{:>4}{:>8}  result", "relation", "nodes", "d", "order");
    for rel in &r.relations {
        let kind = format!("{:?}", rel.kind).to_lowercase();
        let nodes = format!("{:?}", rel.nodes);
        let _ = writeln!(out, "{kind:<10}{nodes:<10}{:>4}{:>8}  {}", rel.d, rel.order, mark(rel.pass));
    }
    for e in &r.infinite_edges {
        let orders: Vec<String> = e.orders_by_d.iter().map(u64::to_string).collect();
        let _ = writeln!(
            out,
            "infinite {:?}: {}  above {}: {}  nondecreasing: {}",
            e.nodes,
            orders.join(" "),
            r.floor,
            mark(e.exceeds_floor),
            mark(e.nondecreasing)
        );
    }
    let _ = writeln!(out, "verdict: {}", if r.pass { "PASS" } else { "FAIL" });
    out
}

#[derive(Serialize)]
struct LoopPairReport {
    period: i64,
    kind: PeriodicType,
    superdimension: Option<(usize, usize)>,
    x_loop: Option<LaurentMatrix>,
    y_loop: Option<LaurentMatrix>,
    bracket_loop: Option<LaurentMatrix>,
    bracket: PeriodicBandMatrix,
    checks: BTreeMap<&'static str, bool>,
    pass: bool,
}

/// Compares the periodic bracket with a dense bracket of truncations on the
/// part of `[-w, w]` that the truncation cannot disturb.
fn dense_agrees(x: &PeriodicBandMatrix, y: &PeriodicBandMatrix, z: &PeriodicBandMatrix, w: i64) -> Result<bool> {
    let reach = (x.band() + y.band()) as i64;
    if w <= reach {
        bail!("window {w} must exceed the combined band {reach}");
    }
    let dense = x.truncate(-w, w).bracket(&y.truncate(-w, w))?;
    for i in reach - w..=w - reach {
        for j in i - reach..=i + reach {
            if dense.get(i, j) != z.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn loop_checks(x: &PeriodicBandMatrix, y: &PeriodicBandMatrix, w: i64) -> Result<(BTreeMap<&'static str, bool>, PeriodicBandMatrix)> {
    let z = x.bracket(y)?;
    let mut checks = BTreeMap::new();
    checks.insert("dense_window", dense_agrees(x, y, &z, w)?);
    if x.kind() == PeriodicType::A {
        let (lx, ly) = (to_loop(x)?, to_loop(y)?);
        checks.insert("homomorphism", to_loop(&z)? == lx.bracket(&ly)?);
        let back = from_loop(&lx, x.parity().clone())?;
        checks.insert("round_trip", back.cells().eq(x.cells()));
    }
    Ok((checks, z))
}

fn loop_pair(x: &PeriodicBandMatrix, y: &PeriodicBandMatrix, w: i64, ascii: bool) -> Result<Report> {
    let (checks, z) = loop_checks(x, y, w)?;
    let pass = checks.values().all(|&ok| ok);
    let loops = match x.kind() {
        PeriodicType::A => Some((to_loop(x)?, to_loop(y)?, to_loop(&z)?)),
        PeriodicType::B => None,
    };
    if ascii {
        let mut text = String::new();
        match &loops {
            Some((lx, ly, lz)) => {
                let (even, odd) = lx.superdimension();
                let _ = writeln!(text, "period {}  superdimension ({even}|{odd})", x.period());
                for (name, m) in [("x", lx), ("y", ly), ("[x, y]", lz)] {
                    let _ = write!(text, "{name}:\n{}", m.grid());
                }
            }
            None => {
                let _ = writeln!(text, "period {}  type B (no loop form)", x.period());
            }
        }
        for (name, ok) in &checks {
            let _ = writeln!(text, "{name}: {}", if *ok { "ok" } else { "FAIL" });
        }
        return Ok(Report { text, pass });
    }
    let (x_loop, y_loop, bracket_loop) = match loops {
        Some((a, b, c)) => (Some(a), Some(b), Some(c)),
        None => (None, None, None),
    };
    let report = LoopPairReport {
        period: x.period(),
        kind: x.kind(),
        superdimension: x_loop.as_ref().map(LaurentMatrix::superdimension),
        x_loop,
        y_loop,
        bracket_loop,
        bracket: z,
        checks,
        pass,
    };
    json(&report, pass)
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub check: String,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialsReport {
    pub seed: u64,
    pub trials: usize,
    pub failures: Vec<TrialFailure>,
    pub pass: bool,
}

impl TrialsReport {
    fn new(seed: u64, trials: usize, failures: Vec<TrialFailure>) -> Self {
        let pass = failures.is_empty();
        TrialsReport { seed, trials, failures, pass }
    }
}

fn loop_trials(trials: usize, seed: u64, w: i64) -> Result<Report> {
    let mut s = Sampler::new(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let k = s.rng().random_range(1..=4i64);
        let word = s.parity_word(k as usize);
        let p = Arc::new(ParityFunction::periodic_everywhere(word));
        let (cx, cy) = (s.rng().random_range(0..=3u64), s.rng().random_range(0..=3u64));
        let (tx, ty) = (s.rng().random_range(1..=6usize), s.rng().random_range(1..=6usize));
        let x = s.periodic_band(k, cx, &p, PeriodicType::A, tx);
        let y = s.periodic_band(k, cy, &p, PeriodicType::A, ty);
        let (checks, _) = loop_checks(&x, &y, w)?;
        failures.extend(
            checks
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(check, _)| TrialFailure { trial, check: check.into() }),
        );
    }
    let report = TrialsReport::new(seed, trials, failures);
    let pass = report.pass;
    json(&report, pass)
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct SubalgReport {
    pub kind: String,
    pub a_member: bool,
    pub projection: SuperMatrix,
    pub checks: BTreeMap<String, bool>,
    pub pass: bool,
}

fn subalg_checks(kind: InvolutionSpec, a: &SuperMatrix, b: Option<&SuperMatrix>) -> Result<(bool, SuperMatrix, BTreeMap<String, bool>)> {
    let a_member = subalgebra_member(a, kind)?;
    let pa = subalgebra_project(a, kind)?;
    let mut checks = BTreeMap::new();
    checks.insert("projection_member".to_string(), subalgebra_member(&pa, kind)?);
    checks.insert("projection_idempotent".to_string(), subalgebra_project(&pa, kind)? == pa);
    if a_member {
        checks.insert("member_fixed".to_string(), pa == *a);
    }
    if let Some(b) = b {
        let pb = subalgebra_project(b, kind)?;
        checks.insert("closure".to_string(), subalgebra_member(&pa.bracket(&pb)?, kind)?);
    }
    Ok((a_member, pa, checks))
}

fn subalg_explicit(kind: InvolutionSpec, a: &SuperMatrix, b: Option<&SuperMatrix>) -> Result<Report> {
    let (a_member, projection, checks) = subalg_checks(kind, a, b)?;
    let pass = checks.values().all(|&ok| ok);
    json(&SubalgReport { kind: kind.to_string(), a_member, projection, checks, pass }, pass)
}

/// A parity function each kind accepts.
fn compatible_parity(kind: InvolutionSpec) -> Arc<ParityFunction> {
    Arc::new(match kind {
        InvolutionSpec::D => ParityFunction::periodic_everywhere(parse_word("0011").expect("valid word")),
        _ => ParityFunction::p_st(),
    })
}

fn subalg_trials(kind: InvolutionSpec, trials: usize, seed: u64) -> Result<Report> {
    let p = compatible_parity(kind);
    let mut s = Sampler::new(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let (ta, tb) = (s.rng().random_range(1..=5usize), s.rng().random_range(1..=5usize));
        let a = s.matrix(&p, -5, 5, ta);
        let b = s.matrix(&p, -5, 5, tb);
        let (_, _, checks) = subalg_checks(kind, &a, Some(&b))?;
        failures.extend(checks.into_iter().filter(|(_, ok)| !ok).map(|(check, _)| TrialFailure { trial, check }));
    }
    let report = TrialsReport::new(seed, trials, failures);
    let pass = report.pass;
    json(&report, pass)
}
