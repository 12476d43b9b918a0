//! Counting experiments: Chebotarev frequencies, squarefree censuses, the
//! Gauss count of irreducibles and the scan over `f + s·x`.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{build_pool, sweep_order, IntervalLab, LabError};
use crate::class_functions::CycleType;
use crate::finite_field::{make_prime_field, FieldElement};
use crate::morse_galois::is_morse;
use crate::polynomial::Poly;

/// Enumeration limit for [`gauss_census`].
pub const GAUSS_LIMIT: u64 = 10_000_000;

const MAX_JOINT_ROWS: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct ChebotarevRow {
    pub cycle_types: Vec<CycleType>,
    pub count: u64,
    /// `count` over the number of squarefree specializations.
    pub frequency: f64,
    /// `Π 1/z_λ`, the uniform `S_d^k` density.
    pub predicted: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug)]
pub struct ChebotarevReport {
    pub summary: String,
    pub q: u64,
    pub squarefree_total: u64,
    pub nonsquarefree_count: u64,
    /// All joint classes when there are at most a few thousand of them,
    /// otherwise only the observed ones.
    pub rows: Vec<ChebotarevRow>,
    pub total_variation: f64,
    /// `max |frequency - predicted| · √q`.
    pub max_scaled_deviation: f64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeCensus {
    pub q: u64,
    /// Number of `a` with every `f + h_i + a` squarefree.
    pub all_squarefree: u64,
    pub complement: u64,
    /// `k(d-1)`.
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseScan {
    pub q: u64,
    /// `s` with `f + s·x` not Morse, in canonical order.
    pub bad_s: Vec<FieldElement>,
    /// Set when `p | 2d` or `f'' = 0`; the scan still runs.
    pub hypothesis_violated: Option<String>,
}

impl MorseScan {
    pub fn count(&self) -> usize {
        self.bad_s.len()
    }
}

fn cartesian(parts: &[CycleType], k: usize) -> Vec<Vec<CycleType>> {
    let mut out: Vec<Vec<CycleType>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                parts.iter().map(move |lam| {
                    let mut v = prefix.clone();
                    v.push(lam.clone());
                    v
                })
            })
            .collect();
    }
    out
}

impl IntervalLab {
    pub fn chebotarev(&self, shifts: &[FieldElement]) -> Result<ChebotarevReport, LabError> {
        let start = Instant::now();
        let phis = vec![crate::ClassFunction::<crate::Rational>::builtin(crate::BuiltinKind::Prime, self.d)?; shifts.len()];
        let rep = self.raw_correlation(shifts, &phis)?;
        let total: u64 = rep.cycle_type_counts.values().sum();
        let k = shifts.len();
        let keys: Vec<Vec<CycleType>> = match self.partitions.len().checked_pow(k as u32) {
            Some(n) if n <= MAX_JOINT_ROWS => cartesian(&self.partitions, k),
            _ => rep.cycle_type_counts.keys().cloned().collect(),
        };
        let rows: Vec<ChebotarevRow> = keys
            .into_iter()
            .map(|cycle_types| {
                let count = rep.cycle_type_counts.get(&cycle_types).copied().unwrap_or(0);
                let frequency = if total == 0 { 0.0 } else { count as f64 / total as f64 };
                let predicted = cycle_types.iter().map(|l| 1.0 / l.centralizer_order() as f64).product();
                ChebotarevRow { cycle_types, count, frequency, predicted, deviation: frequency - predicted }
            })
            .collect();
        let total_variation = 0.5 * rows.iter().map(|r| r.deviation.abs()).sum::<f64>();
        let sq = (self.q as f64).sqrt();
        let max_scaled_deviation = rows.iter().map(|r| r.deviation.abs() * sq).fold(0.0, f64::max);
        Ok(ChebotarevReport {
            summary: rep.summary,
            q: self.q,
            squarefree_total: total,
            nonsquarefree_count: rep.nonsquarefree_count,
            rows,
            total_variation,
            max_scaled_deviation,
            elapsed: start.elapsed(),
        })
    }

    pub fn squarefree_census(&self, shifts: &[FieldElement]) -> Result<SquarefreeCensus, LabError> {
        self.check_shifts(shifts)?;
        let bad: u64 = self
            .blocks(shifts, || 0u64, |n, joint| {
                if joint.iter().any(Option::is_none) {
                    *n += 1;
                }
            })
            .into_iter()
            .sum();
        Ok(SquarefreeCensus {
            q: self.q,
            all_squarefree: self.q - bad,
            complement: bad,
            bound: (shifts.len() * (self.d - 1)) as u64,
        })
    }
}

/// Frequencies of (joint) cycle types against the uniform prediction.
pub fn chebotarev_empirical(f: &Poly, shifts: &[FieldElement], workers: usize) -> Result<ChebotarevReport, LabError> {
    IntervalLab::new(f, workers)?.chebotarev(shifts)
}

pub fn squarefree_census(f: &Poly, shifts: &[FieldElement], workers: usize) -> Result<SquarefreeCensus, LabError> {
    IntervalLab::new(f, workers)?.squarefree_census(shifts)
}

/// `(1/d) Σ_{e | d} μ(d/e) p^e`.
pub fn gauss_formula(p: u64, d: u32) -> u64 {
    let mobius = |mut n: u32| -> i128 {
        let mut sign = 1;
        let mut r = 2;
        while r * r <= n {
            if n % r == 0 {
                n /= r;
                if n % r == 0 {
                    return 0;
                }
                sign = -sign;
            }
            r += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    };
    let total: i128 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| mobius(d / e) * (p as i128).pow(e))
        .sum();
    (total / d as i128) as u64
}

/// Counts monic irreducibles of degree `d` over `F_p` by enumeration and
/// returns `(enumerated, formula)`.
pub fn gauss_census(p: u64, d: u32) -> Result<(u64, u64), LabError> {
    let ctx = make_prime_field(p)?;
    let total = match p.checked_pow(d) {
        Some(n) if n <= GAUSS_LIMIT => n,
        _ => return Err(LabError::TooLarge(format!("{p}^{d} monic polynomials"))),
    };
    let count = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let mut coeffs = Vec::with_capacity(d as usize + 1);
            let mut rest = idx;
            for _ in 0..d {
                coeffs.push(ctx.from_u64(rest % p));
                rest /= p;
            }
            coeffs.push(ctx.one());
            Poly::new(&ctx, coeffs).is_irreducible()
        })
        .count() as u64;
    Ok((count, gauss_formula(p, d)))
}

/// The `s ∈ F_q` for which `f + s·x` is not Morse.
pub fn morse_density_scan(f: &Poly, workers: usize) -> Result<MorseScan, LabError> {
    let d = match f.degree() {
        Some(d) if d >= 2 && f.is_monic() => d,
        _ => return Err(LabError::InvalidSpec(format!("f = {f} must be monic of degree >= 2"))),
    };
    let ctx = f.ctx().clone();
    let q = sweep_order(&ctx)?;
    let p = ctx.p();
    let hypothesis_violated = if p == 2 || (d as u64) % p == 0 {
        Some(format!("p = {p} divides 2d = {}", 2 * d))
    } else if f.derivative().derivative().is_zero() {
        Some("f'' vanishes".to_string())
    } else {
        None
    };
    let pool = build_pool(workers)?;
    let flags: Vec<Result<bool, LabError>> = pool.install(|| {
        (0..q)
            .into_par_iter()
            .map(|i| {
                let s = ctx.from_index(i);
                let fs = f.add(&Poly::monomial(&ctx, s, 1));
                Ok(!is_morse(&fs)?.is_morse)
            })
            .collect()
    });
    let mut bad_s = Vec::new();
    for (i, flag) in flags.into_iter().enumerate() {
        if flag? {
            bad_s.push(ctx.from_index(i as u64));
        }
    }
    Ok(MorseScan { q, bad_s, hypothesis_violated })
}
