//! Exact sums of class functions over `I(f) = { f + a : a ∈ F_q }`, their
//! shifted correlations, and the empirical statistics built on the same
//! sweep.
//!
//! Every experiment starts from a [`IntervalLab`], which records the cycle
//! type of `f + b` for every `b ∈ F_q` once. A shifted value `f + h + a` is
//! then a table lookup at `b = a + h`.
//!
//! Sweeps run on a private rayon pool. Work is cut into blocks of a fixed
//! size that does not depend on the number of workers, and block results are
//! combined in block order, so reports are identical for every worker count
//! (including floating-point sums).

mod battery;
mod census;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::class_functions::{partitions_of, ClassFnError, ClassFunction, CycleType};
use crate::finite_field::{FieldCtx, FieldElement, FieldError};
use crate::morse_galois::{bad_shift_check, is_morse, MorseDiagnostics, MorseError};
use crate::polynomial::{ddf_parts, Poly, PolyError};
use crate::scalar::Scalar;

pub use battery::{large_q_demo, moebius_battery, LargeQRow, MoebiusBattery};
pub use census::{
    chebotarev_empirical, gauss_census, gauss_formula, morse_density_scan, squarefree_census,
    ChebotarevReport, ChebotarevRow, MorseScan, SquarefreeCensus,
};

/// Largest `q` the sweeps accept.
pub const MAX_SWEEP_ORDER: u64 = 1 << 26;

const BLOCK: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("invalid interval specification: {0}")]
    InvalidSpec(String),
    #[error("Möbius dichotomy violated: single sum {single}, correlation {correlation}")]
    DichotomyViolation { single: String, correlation: String },
    #[error("no suitable s found in a field of order {0}")]
    NoSuitableS(u64),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("could not build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    ClassFn(#[from] ClassFnError),
    #[error(transparent)]
    Morse(#[from] MorseError),
}

/// Where a report's predicted constant comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PredictionKind {
    /// Uniform `S_d` (or `S_d^k`) average: `f` is Morse.
    Generic,
    /// Product of caller-supplied single-shift constants.
    Supplied,
    /// `raw_sum / q`; no independent prediction is available.
    Empirical,
}

impl fmt::Display for PredictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PredictionKind::Generic => "generic",
            PredictionKind::Supplied => "supplied",
            PredictionKind::Empirical => "empirical",
        })
    }
}

/// A validated correlation experiment: `Σ_a Π_i φ_i(f + h_i + a)`.
#[derive(Clone, Debug)]
pub struct IntervalSpec<T> {
    pub f: Poly,
    pub shifts: Vec<FieldElement>,
    pub phis: Vec<ClassFunction<T>>,
}

impl<T: Scalar> IntervalSpec<T> {
    pub fn new(f: Poly, shifts: Vec<FieldElement>, phis: Vec<ClassFunction<T>>) -> Result<Self, LabError> {
        let d = match f.degree() {
            Some(d) if d >= 2 && f.is_monic() => d,
            _ => return Err(LabError::InvalidSpec(format!("f = {f} must be monic of degree >= 2"))),
        };
        if shifts.is_empty() || shifts.len() != phis.len() {
            return Err(LabError::InvalidSpec(format!(
                "{} shifts for {} class functions",
                shifts.len(),
                phis.len()
            )));
        }
        for (i, h) in shifts.iter().enumerate() {
            if h.ctx_id() != f.ctx().id() {
                return Err(LabError::InvalidSpec("shift from another field".into()));
            }
            if shifts[..i].contains(h) {
                return Err(LabError::InvalidSpec("shifts must be distinct".into()));
            }
        }
        if let Some(phi) = phis.iter().find(|phi| phi.degree() != d) {
            return Err(LabError::InvalidSpec(format!(
                "class function {} has degree {}, f has degree {d}",
                phi.name(),
                phi.degree()
            )));
        }
        Ok(IntervalSpec { f, shifts, phis })
    }

    pub fn single(f: Poly, phi: ClassFunction<T>) -> Result<Self, LabError> {
        let zero = f.ctx().zero();
        IntervalSpec::new(f, vec![zero], vec![phi])
    }

    pub fn summary(&self) -> String {
        let ctx = self.f.ctx();
        let shifts: Vec<String> = self.shifts.iter().map(|h| h.to_string()).collect();
        let phis: Vec<&str> = self.phis.iter().map(|p| p.name()).collect();
        format!(
            "p={} l={} f={} shifts=[{}] phis=[{}]",
            ctx.p(),
            ctx.degree(),
            self.f,
            shifts.join(","),
            phis.join(",")
        )
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentReport<T> {
    pub summary: String,
    pub q: u64,
    pub raw_sum: T,
    pub predicted_constant: T,
    pub prediction: PredictionKind,
    /// `predicted_constant · q`.
    pub main_term: T,
    pub abs_error: T,
    /// `|raw_sum - main_term| / √q`.
    pub normalized_error: f64,
    /// Joint cycle types of `(f + h_1 + a, ..., f + h_k + a)` over the `a`
    /// for which all members are squarefree.
    pub cycle_type_counts: BTreeMap<Vec<CycleType>, u64>,
    /// Number of `a` with some `f + h_i + a` not squarefree.
    pub nonsquarefree_count: u64,
    pub elapsed: Duration,
    pub worker_count: usize,
}

impl<T: Scalar> ExperimentReport<T> {
    /// Replaces the prediction and recomputes the derived error terms.
    pub fn with_prediction(mut self, constant: T, kind: PredictionKind) -> Self {
        let q = T::from_count(self.q);
        self.main_term = constant.clone() * q;
        self.abs_error = (self.raw_sum.clone() - self.main_term.clone()).abs();
        self.normalized_error = self.abs_error.to_f64_lossy() / (self.q as f64).sqrt();
        self.predicted_constant = constant;
        self.prediction = kind;
        self
    }

    /// Equality ignoring timing and worker count.
    pub fn same_result(&self, other: &Self) -> bool {
        self.summary == other.summary
            && self.q == other.q
            && self.raw_sum == other.raw_sum
            && self.predicted_constant == other.predicted_constant
            && self.prediction == other.prediction
            && self.main_term == other.main_term
            && self.abs_error == other.abs_error
            && self.normalized_error.to_bits() == other.normalized_error.to_bits()
            && self.cycle_type_counts == other.cycle_type_counts
            && self.nonsquarefree_count == other.nonsquarefree_count
    }
}

/// Cycle types of every `f + b`, `b ∈ F_q`, plus the Morse diagnostics of
/// `f`, shared by all experiments on the same interval.
pub struct IntervalLab {
    f: Poly,
    d: usize,
    q: u64,
    partitions: Vec<CycleType>,
    /// Indexed by the canonical index of `b`; `None` when `f + b` is not
    /// squarefree.
    table: Vec<Option<u16>>,
    morse: MorseDiagnostics,
    pool: Arc<rayon::ThreadPool>,
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool, LabError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| LabError::Pool(e.to_string()))
}

fn sweep_order(ctx: &FieldCtx) -> Result<u64, LabError> {
    match ctx.order_u64() {
        Some(q) if q <= MAX_SWEEP_ORDER => Ok(q),
        _ => Err(LabError::TooLarge(format!("q = {} exceeds {MAX_SWEEP_ORDER}", ctx.order()))),
    }
}

impl IntervalLab {
    /// `workers = 0` lets rayon choose.
    pub fn new(f: &Poly, workers: usize) -> Result<IntervalLab, LabError> {
        let d = match f.degree() {
            Some(d) if d >= 2 && f.is_monic() => d,
            _ => return Err(LabError::InvalidSpec(format!("f = {f} must be monic of degree >= 2"))),
        };
        let ctx = f.ctx().clone();
        let q = sweep_order(&ctx)?;
        let partitions = partitions_of(d)?;
        let morse = is_morse(f)?;
        let pool = build_pool(workers)?;
        let df = f.derivative();
        let table = pool.install(|| {
            (0..q as usize)
                .into_par_iter()
                .with_min_len(BLOCK)
                .map(|i| {
                    let g = f.add_constant(&ctx.from_index(i as u64));
                    let common = g.gcd(&df).expect("same field");
                    if !common.is_one() {
                        return None;
                    }
                    let lam = CycleType::from_parts(ddf_parts(&ctx, g.coeffs()));
                    let idx = partitions.binary_search_by(|probe| lam.cmp(probe)).expect("partition of d");
                    Some(idx as u16)
                })
                .collect()
        });
        Ok(IntervalLab { f: f.clone(), d, q, partitions, table, morse, pool: Arc::new(pool) })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.f.ctx()
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn morse(&self) -> &MorseDiagnostics {
        &self.morse
    }

    pub fn worker_count(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Whether uniform `S_d` statistics are the right prediction.
    pub fn generic(&self) -> bool {
        self.morse.is_morse && !self.morse.hypothesis_warning
    }

    /// Cycle type of `f + b`, `None` if it is not squarefree.
    pub fn cycle_type(&self, b: &FieldElement) -> Option<&CycleType> {
        let i = self.ctx().index(b)? as usize;
        self.table[i].map(|k| &self.partitions[k as usize])
    }

    /// Runs `visit(a_index, joint_entries)` over all `a` in fixed-size
    /// blocks, folding each block with `fold` and returning the block
    /// results in order.
    fn blocks<R, F>(&self, shifts: &[FieldElement], init: impl Fn() -> R + Sync, visit: F) -> Vec<R>
    where
        R: Send,
        F: Fn(&mut R, &[Option<u16>]) + Sync,
    {
        let ctx = self.ctx();
        let q = self.q;
        let zero_only = shifts.len() == 1 && shifts[0].is_zero();
        let nblocks = q.div_ceil(BLOCK as u64);
        self.pool.install(|| {
            (0..nblocks)
                .into_par_iter()
                .map(|blk| {
                    let mut acc = init();
                    let mut joint = vec![None; shifts.len()];
                    let start = blk * BLOCK as u64;
                    let end = (start + BLOCK as u64).min(q);
                    for i in start..end {
                        if zero_only {
                            joint[0] = self.table[i as usize];
                        } else {
                            let a = ctx.from_index(i);
                            for (slot, h) in joint.iter_mut().zip(shifts) {
                                let b = ctx.add(&a, h);
                                *slot = self.table[ctx.index(&b).expect("index in range") as usize];
                            }
                        }
                        visit(&mut acc, &joint);
                    }
                    acc
                })
                .collect()
        })
    }

    fn check_shifts(&self, shifts: &[FieldElement]) -> Result<(), LabError> {
        if shifts.is_empty() {
            return Err(LabError::InvalidSpec("no shifts".into()));
        }
        for (i, h) in shifts.iter().enumerate() {
            if h.ctx_id() != self.ctx().id() {
                return Err(LabError::InvalidSpec("shift from another field".into()));
            }
            if shifts[..i].contains(h) {
                return Err(LabError::InvalidSpec("shifts must be distinct".into()));
            }
        }
        Ok(())
    }

    /// Exact `Σ_a Π_i φ_i(f + h_i + a)` with joint cycle-type counts. The
    /// prediction is left empirical; see [`IntervalLab::correlation_sum`].
    pub fn raw_correlation<T: Scalar>(
        &self,
        shifts: &[FieldElement],
        phis: &[ClassFunction<T>],
    ) -> Result<ExperimentReport<T>, LabError> {
        let start = Instant::now();
        let spec = IntervalSpec::new(self.f.clone(), shifts.to_vec(), phis.to_vec())?;
        let parts = self.blocks(
            shifts,
            || (T::zero(), BTreeMap::<Vec<u16>, u64>::new(), 0u64),
            |(sum, counts, nsf), joint| {
                let mut value = T::one();
                for (entry, phi) in joint.iter().zip(phis) {
                    let v = match entry {
                        Some(k) => phi.value_at(*k as usize),
                        None => phi.default_nonsquarefree(),
                    };
                    value = value * v.clone();
                    if value.is_zero() {
                        break;
                    }
                }
                *sum = sum.clone() + value;
                if joint.iter().all(Option::is_some) {
                    let key: Vec<u16> = joint.iter().map(|e| e.unwrap()).collect();
                    *counts.entry(key).or_insert(0) += 1;
                } else {
                    *nsf += 1;
                }
            },
        );
        let mut raw = T::zero();
        let mut counts = BTreeMap::new();
        let mut nsf = 0;
        for (s, c, n) in parts {
            raw = raw + s;
            for (k, v) in c {
                *counts.entry(k).or_insert(0) += v;
            }
            nsf += n;
        }
        let cycle_type_counts = counts
            .into_iter()
            .map(|(k, v)| (k.iter().map(|&i| self.partitions[i as usize].clone()).collect(), v))
            .collect();
        let empirical = raw.clone() / T::from_count(self.q);
        let report = ExperimentReport {
            summary: spec.summary(),
            q: self.q,
            raw_sum: raw,
            predicted_constant: T::zero(),
            prediction: PredictionKind::Empirical,
            main_term: T::zero(),
            abs_error: T::zero(),
            normalized_error: 0.0,
            cycle_type_counts,
            nonsquarefree_count: nsf,
            elapsed: Duration::ZERO,
            worker_count: self.worker_count(),
        };
        let mut report = report.with_prediction(empirical, PredictionKind::Empirical);
        report.elapsed = start.elapsed();
        Ok(report)
    }

    /// `Σ_a φ(f + a)`. Predicted constant: the `S_d` mean of `φ` when `f` is
    /// Morse, otherwise the empirical constant.
    pub fn class_sum<T: Scalar>(&self, phi: &ClassFunction<T>) -> Result<ExperimentReport<T>, LabError> {
        self.correlation_sum(&[self.ctx().zero()], std::slice::from_ref(phi), None)
    }

    /// `Σ_a Π_i φ_i(f + h_i + a)`.
    ///
    /// The prediction is `Π_i mean(φ_i)` when `f` is Morse. Otherwise, when
    /// `single_constants` are given and no difference of shifts is a bad
    /// shift, it is their product. Failing both, it is empirical.
    pub fn correlation_sum<T: Scalar>(
        &self,
        shifts: &[FieldElement],
        phis: &[ClassFunction<T>],
        single_constants: Option<&[T]>,
    ) -> Result<ExperimentReport<T>, LabError> {
        self.check_shifts(shifts)?;
        let start = Instant::now();
        let report = self.raw_correlation(shifts, phis)?;
        let report = if self.generic() {
            let c = phis.iter().fold(T::one(), |acc, phi| acc * phi.mean_constant());
            report.with_prediction(c, PredictionKind::Generic)
        } else if let Some(cs) = single_constants {
            if cs.len() != phis.len() {
                return Err(LabError::InvalidSpec(format!(
                    "{} constants for {} class functions",
                    cs.len(),
                    phis.len()
                )));
            }
            match bad_shift_check(&self.f, shifts) {
                Ok(false) => {
                    let c = cs.iter().fold(T::one(), |acc, c| acc * c.clone());
                    report.with_prediction(c, PredictionKind::Supplied)
                }
                // a bad shift or critical points out of reach: no product law
                Ok(true) | Err(MorseError::ExtensionTooLarge(_)) => report,
                Err(e) => return Err(e.into()),
            }
        } else {
            report
        };
        Ok(ExperimentReport { elapsed: start.elapsed(), ..report })
    }
}

/// One-shot `Σ_{a ∈ F_q} φ(f + a)`.
pub fn class_sum<T: Scalar>(
    f: &Poly,
    phi: &ClassFunction<T>,
    workers: usize,
) -> Result<ExperimentReport<T>, LabError> {
    let start = Instant::now();
    let lab = IntervalLab::new(f, workers)?;
    let report = lab.class_sum(phi)?;
    Ok(ExperimentReport { elapsed: start.elapsed(), ..report })
}

/// One-shot correlation sum for a validated spec.
pub fn correlation_sum<T: Scalar>(
    spec: &IntervalSpec<T>,
    single_constants: Option<&[T]>,
    workers: usize,
) -> Result<ExperimentReport<T>, LabError> {
    let start = Instant::now();
    let lab = IntervalLab::new(&spec.f, workers)?;
    let report = lab.correlation_sum(&spec.shifts, &spec.phis, single_constants)?;
    Ok(ExperimentReport { elapsed: start.elapsed(), ..report })
}
