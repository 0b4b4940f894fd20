//! Property suites. Each suite expands into a list of named cases; a case
//! measures one residual and is compared against its tolerance.

mod algebra;
mod growth;
mod norms;
mod young;

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use orlicz_core::cocycle::Cocycle;
use orlicz_core::group::{Group, GroupElement, Weight};
use orlicz_core::orlicz::OrliczVector;
use orlicz_core::random::{random_vector, seeded_rng, MAX_RANDOM_SUPPORT};
use rand::RngCore;

use crate::config::SuiteConfig;
use crate::record::VerificationRecord;

pub type CoreResult<T> = orlicz_core::Result<T>;
type V = OrliczVector<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Young,
    Norms,
    Cocycle,
    Twisted,
    Duality,
    Splitting,
    Lambda,
    Growth,
    Membership,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Young,
        Suite::Norms,
        Suite::Cocycle,
        Suite::Twisted,
        Suite::Duality,
        Suite::Splitting,
        Suite::Lambda,
        Suite::Growth,
        Suite::Membership,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Young => "young",
            Suite::Norms => "norms",
            Suite::Cocycle => "cocycle",
            Suite::Twisted => "twisted",
            Suite::Duality => "duality",
            Suite::Splitting => "splitting",
            Suite::Lambda => "lambda",
            Suite::Growth => "growth",
            Suite::Membership => "membership",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

type Runner = Box<dyn FnOnce(&mut dyn RngCore) -> CoreResult<f64> + Send>;

/// A named check: `run` returns the residual, which passes when it is at most
/// `tolerance`.
pub struct Case {
    pub id: String,
    /// Registry id of the invariant this case exercises.
    pub invariant: &'static str,
    pub anchor: &'static str,
    pub tolerance: f64,
    run: Runner,
}

impl Case {
    pub fn new<F>(id: impl Into<String>, invariant: &'static str, anchor: &'static str, tolerance: f64, run: F) -> Self
    where
        F: FnOnce(&mut dyn RngCore) -> CoreResult<f64> + Send + 'static,
    {
        Self { id: id.into(), invariant, anchor, tolerance, run: Box::new(run) }
    }
}

impl fmt::Debug for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Case({}, {})", self.id, self.invariant)
    }
}

/// Sizes shared by the suites.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Sizes {
    /// Large sweeps (random vectors, pairs).
    pub sweep: usize,
    /// Triple-based checks.
    pub triples: usize,
}

impl Sizes {
    fn from(cfg: &SuiteConfig) -> Self {
        Self { sweep: cfg.run.samples, triples: (cfg.run.samples / 10).max(1) }
    }
}

/// Expands a suite into its cases without running them.
pub fn cases(cfg: &SuiteConfig, suite: Suite) -> Vec<Case> {
    let sizes = Sizes::from(cfg);
    match suite {
        Suite::Young => young::cases(cfg, sizes),
        Suite::Norms => norms::cases(cfg, sizes),
        Suite::Membership => norms::membership_cases(),
        Suite::Cocycle => algebra::cocycle_cases(cfg),
        Suite::Twisted => algebra::twisted_cases(cfg, sizes),
        Suite::Duality => algebra::duality_cases(cfg, sizes),
        Suite::Splitting => algebra::splitting_cases(cfg, sizes),
        Suite::Lambda => algebra::lambda_cases(cfg, sizes),
        Suite::Growth => growth::cases(),
    }
}

/// FNV-1a of `suite/case`, used as the random stream of a case.
fn stream_id(suite: Suite, case: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.name().bytes().chain([b'/']).chain(case.bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn execute(cfg: &SuiteConfig, suite: Suite, case: Case) -> VerificationRecord {
    let tolerance = cfg.tolerance(case.invariant, case.tolerance);
    let seed = cfg.run.seed;
    let mut rng = seeded_rng(seed, stream_id(suite, &case.id));
    let run = case.run;
    let outcome = catch_unwind(AssertUnwindSafe(move || run(&mut rng)));
    let name = suite.name();
    match outcome {
        Ok(Ok(residual)) => VerificationRecord::new(name, &case.id, case.anchor, residual, tolerance, seed),
        Ok(Err(e)) => VerificationRecord::failed(name, &case.id, case.anchor, tolerance, seed, e.to_string()),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "case panicked".into());
            VerificationRecord::failed(name, &case.id, case.anchor, tolerance, seed, format!("panic: {msg}"))
        }
    }
}

/// Runs every case of `suite`. Cases run on a small thread pool; records come
/// back in case order and do not depend on scheduling.
pub fn run_suite(cfg: &SuiteConfig, suite: Suite) -> Vec<VerificationRecord> {
    let cases = cases(cfg, suite);
    let n = cases.len();
    let queue: Mutex<Vec<Option<Case>>> = Mutex::new(cases.into_iter().map(Some).collect());
    let results: Mutex<Vec<Option<VerificationRecord>>> = Mutex::new(vec![None; n]);
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(n.max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let case = queue.lock().unwrap()[i].take().expect("each case runs once");
                let record = execute(cfg, suite, case);
                results.lock().unwrap()[i] = Some(record);
            });
        }
    });
    results.into_inner().unwrap().into_iter().map(|r| r.expect("every case ran")).collect()
}

/// Runs the given suites in order.
pub fn run_suites(cfg: &SuiteConfig, suites: &[Suite]) -> Vec<VerificationRecord> {
    suites.iter().flat_map(|&s| run_suite(cfg, s)).collect()
}

// Shared fixtures.

/// Catalog pair specs plus the configured pair when it is not among them.
pub(crate) fn pair_specs(cfg: &SuiteConfig) -> Vec<String> {
    let mut specs: Vec<String> = orlicz_core::young::catalog::DEFAULT_PAIRS.iter().map(|s| s.to_string()).collect();
    if !specs.contains(&cfg.objects.pair) {
        specs.push(cfg.objects.pair.clone());
    }
    specs
}

pub(crate) fn cyclic(n: i64) -> Arc<Group> {
    Arc::new(Group::cyclic(n).expect("valid order"))
}

pub(crate) fn z(d: usize) -> Arc<Group> {
    Arc::new(Group::free_abelian(d))
}

pub(crate) fn heis() -> Arc<Group> {
    Arc::new(Group::heisenberg())
}

pub(crate) fn sample_vectors(
    group: &Arc<Group>,
    ball: &[GroupElement],
    n: usize,
    rng: &mut dyn RngCore,
) -> CoreResult<Vec<V>> {
    (0..n).map(|_| random_vector::<f64, _>(group, ball, MAX_RANDOM_SUPPORT, &mut &mut *rng)).collect()
}

/// The lower-triangular unit phase on `ℤ²`: `Ω(x, y) = exp(iθ x₂y₁)`.
pub(crate) fn swap_phase(group: &Arc<Group>, theta: f64) -> Cocycle<f64> {
    Cocycle::bilinear_phase(Arc::clone(group), vec![vec![0, 0], vec![1, 0]], theta).expect("z2 phase")
}

/// Named cocycles used across suites: coboundaries of the catalog weights
/// on every group, plus bilinear phases and products on `ℤ²`.
pub(crate) fn catalog_cocycles(group: &Arc<Group>) -> Vec<(String, Cocycle<f64>)> {
    let w = |spec: &str| Weight::parse(Arc::clone(group), spec).expect("catalog weight");
    let mut out = vec![("trivial".to_string(), Cocycle::trivial(Arc::clone(group)))];
    for spec in ["poly:1", "poly:2", "subexp:0.5:1", "sublog:1:1"] {
        out.push((format!("cob({spec})"), Cocycle::coboundary_from_weight(&w(spec))));
    }
    if group.kind() == orlicz_core::GroupKind::FreeAbelian(2) {
        let phase = swap_phase(group, std::f64::consts::PI);
        let generic = swap_phase(group, 0.7);
        let cob1 = Cocycle::coboundary_from_weight(&w("poly:1"));
        let sigma = Cocycle::coboundary_from_weight(&w("subexp:0.5:1"));
        out.push(("phase(pi)".into(), phase.clone()));
        out.push(("phase(0.7)".into(), generic.clone()));
        out.push(("cob(poly:1)*phase(0.7)".into(), cob1.product(&generic).unwrap()));
        out.push(("cob(subexp:0.5:1)*phase(pi)".into(), sigma.product(&phase).unwrap()));
    }
    out
}

/// `Ω(1,1) = −1` on `ℤ₂`, all other values 1.
pub(crate) fn sign_cocycle() -> Cocycle<f64> {
    let g = cyclic(2);
    let one = g.element(vec![1]).unwrap();
    Cocycle::from_fn(g, "sign", move |s, t| {
        Ok(num_complex::Complex::new(if *s == one && *t == one { -1.0 } else { 1.0 }, 0.0))
    })
}

/// The coboundary of `ω₁` on `ℤ²` with `Ω((1,0),(0,1))` scaled by 1.1.
pub(crate) fn broken_cocycle() -> Cocycle<f64> {
    let g = z(2);
    let base = Cocycle::coboundary_from_weight(&Weight::polynomial(Arc::clone(&g), 1.0).unwrap());
    let (s0, t0) = (g.element(vec![1, 0]).unwrap(), g.element(vec![0, 1]).unwrap());
    Cocycle::from_fn(g, "broken", move |s, t| {
        let v = base.eval(s, t)?;
        Ok(if *s == s0 && *t == t0 { v * 1.1 } else { v })
    })
}

/// Largest radius `≤ cap` whose ball has at most `max_size` elements.
pub(crate) fn radius_within(group: &Group, cap: u32, max_size: usize) -> CoreResult<u32> {
    let mut r = 0;
    while r < cap && group.ball_size(r + 1)? <= max_size {
        r += 1;
    }
    Ok(r)
}
