//! Möbius and Chowla sums together with the discriminant classifier, and
//! the large-`q` construction where the two stop agreeing.

use std::collections::HashMap;

use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ExperimentReport, IntervalLab, LabError};
use crate::class_functions::{BuiltinKind, ClassFunction};
use crate::finite_field::{make_extension, make_prime_field, FieldElement};
use crate::morse_galois::{classify_mu_cancellation, critical_data, CancellationKind, CancellationVerdict};
use crate::polynomial::{roots_of_split, Poly, DEFAULT_FACTOR_SEED};
use crate::scalar::Scalar;
use crate::Rational;

/// Largest `q` accepted by [`large_q_demo`].
pub const LARGE_Q_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct MoebiusBattery {
    /// `Σ_a μ(f + h_1 + a)`.
    pub single: ExperimentReport<Rational>,
    /// `Σ_a Π_i μ(f + h_i + a)`.
    pub chowla: ExperimentReport<Rational>,
    pub verdict: CancellationVerdict,
    pub tolerance: f64,
}

fn mu(d: usize) -> Result<ClassFunction<Rational>, LabError> {
    Ok(ClassFunction::builtin(BuiltinKind::Moebius, d)?)
}

fn large(x: &Rational, q: u64, c: f64) -> bool {
    x.abs().to_f64_lossy() >= q as f64 - c * (q as f64).sqrt()
}

fn small(x: &Rational, q: u64, c: f64) -> bool {
    x.abs().to_f64_lossy() <= c * (q as f64).sqrt()
}

/// Runs the single Möbius sum and the Chowla sum over `shifts`, attaches the
/// classifier verdict, and checks that either both sums are within `c·√q`
/// of `q` in size or both are at most `c·√q`, matching the verdict.
pub fn moebius_battery(
    f: &Poly,
    shifts: &[FieldElement],
    tolerance: f64,
    workers: usize,
) -> Result<MoebiusBattery, LabError> {
    let lab = IntervalLab::new(f, workers)?;
    lab.check_shifts(shifts)?;
    let verdict = classify_mu_cancellation(f)?;
    let m = mu(lab.degree())?;
    let single = lab.correlation_sum(&shifts[..1], std::slice::from_ref(&m), None)?;
    let chowla = lab.correlation_sum(shifts, &vec![m; shifts.len()], None)?;
    let q = lab.q();
    let both_large = large(&single.raw_sum, q, tolerance) && large(&chowla.raw_sum, q, tolerance);
    let both_small = small(&single.raw_sum, q, tolerance) && small(&chowla.raw_sum, q, tolerance);
    let consistent = match verdict.kind {
        CancellationKind::NoCancellation => {
            let sign = verdict.sign.unwrap_or(0) as i128;
            both_large && single.raw_sum.numer().signum() == sign
        }
        CancellationKind::SquareRootCancellation => both_small,
    };
    if !consistent {
        return Err(LabError::DichotomyViolation {
            single: single.raw_sum.to_string(),
            correlation: chowla.raw_sum.to_string(),
        });
    }
    Ok(MoebiusBattery { single, chowla, verdict, tolerance })
}

#[derive(Clone, Debug)]
pub struct LargeQRow {
    pub p: u64,
    pub l: usize,
    pub q: u64,
    /// `f_s = x^3 + s·x`.
    pub f: Poly,
    pub s: FieldElement,
    /// Critical value `α = (2s/3)β` with `β^2 = -s/3`; shifts are `i·α`.
    pub alpha: FieldElement,
    pub is_morse: bool,
    /// `Σ_a μ(f_s + i·α + a)` for `i = 1..p`.
    pub single_sums: Vec<Rational>,
    /// `Σ_a Π_{i=1}^{p} μ(f_s + i·α + a)`.
    pub product_sum: Rational,
    pub nonsquarefree_count: u64,
    /// Every element of the multiset union of `R + h_i` occurs exactly twice.
    pub multiplicity_two: bool,
    pub singles_small: bool,
    pub product_large: bool,
    pub tolerance: f64,
}

impl LargeQRow {
    pub fn passed(&self) -> bool {
        self.is_morse && self.multiplicity_two && self.singles_small && self.product_large
    }
}

/// For each `q = p^l`: picks the first `s` (canonical order) with `-s/3` a
/// nonzero square, uses the `p` shifts `i·α` and compares the single Möbius
/// sums of `x^3 + s·x` against the `p`-fold Chowla sum.
pub fn large_q_demo(p: u64, ls: &[usize], tolerance: f64, workers: usize) -> Result<Vec<LargeQRow>, LabError> {
    if p < 5 {
        return Err(LabError::InvalidSpec(format!("need an odd prime p >= 5, got {p}")));
    }
    let base = make_prime_field(p)?;
    let mut rows = Vec::new();
    for &l in ls {
        let ctx = make_extension(&base, l, 0)?;
        let q = match ctx.order_u64() {
            Some(q) if q <= LARGE_Q_LIMIT => q,
            _ => return Err(LabError::TooLarge(format!("{p}^{l}"))),
        };
        let three = ctx.from_u64(3);
        let s = (1..q)
            .map(|i| ctx.from_index(i))
            .find(|s| {
                let t = ctx.neg(&ctx.div(s, &three).expect("p > 3"));
                ctx.quadratic_character(&t) == 1
            })
            .ok_or(LabError::NoSuitableS(q))?;
        let t = ctx.neg(&ctx.div(&s, &three)?);
        let sq = Poly::new(&ctx, vec![ctx.neg(&t), ctx.zero(), ctx.one()]);
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_FACTOR_SEED);
        let beta = roots_of_split(&ctx, sq.coeffs(), &mut rng)[0];
        let alpha = ctx.mul(&ctx.div(&ctx.add(&s, &s), &three)?, &beta);
        let f = Poly::new(&ctx, vec![ctx.zero(), s, ctx.zero(), ctx.one()]);
        let shifts: Vec<FieldElement> = (1..=p).map(|i| ctx.scale(&alpha, i)).collect();

        let lab = IntervalLab::new(&f, workers)?;
        let m = mu(3)?;
        let single_sums = shifts
            .iter()
            .map(|h| Ok(lab.correlation_sum(std::slice::from_ref(h), std::slice::from_ref(&m), None)?.raw_sum))
            .collect::<Result<Vec<_>, LabError>>()?;
        let product = lab.correlation_sum(&shifts, &vec![m; shifts.len()], None)?;

        let cd = critical_data(&f)?;
        let ext = &cd.ext_ctx;
        let mut multiset: HashMap<FieldElement, u32> = HashMap::new();
        for h in &shifts {
            let he = cd.embedding.map(h);
            for v in &cd.values {
                *multiset.entry(ext.add(v, &he)).or_insert(0) += 1;
            }
        }
        let multiplicity_two = multiset.values().all(|&c| c == 2);

        rows.push(LargeQRow {
            p,
            l,
            q,
            s,
            alpha,
            is_morse: lab.morse().is_morse,
            singles_small: single_sums.iter().all(|x| small(x, q, tolerance)),
            product_large: Rational::from_integer(2) * product.raw_sum.abs() >= Rational::from_integer(q as i128),
            single_sums,
            nonsquarefree_count: product.nonsquarefree_count,
            product_sum: product.raw_sum,
            multiplicity_two,
            tolerance,
            f,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> Poly {
        Poly::from_i64s(&make_prime_field(p).unwrap(), c)
    }

    #[test]
    fn cube_battery() {
        let f = poly(7, &[0, 0, 0, 1]);
        let b = moebius_battery(&f, &[f.ctx().zero()], 2.0, 1).unwrap();
        assert_eq!(b.single.raw_sum, Rational::from_integer(-6));
        assert_eq!(b.verdict.kind, CancellationKind::NoCancellation);
        let f = poly(13, &[0, 0, 0, 1]);
        let ctx = f.ctx().clone();
        let b = moebius_battery(&f, &[ctx.zero(), ctx.one()], 2.0, 1).unwrap();
        assert!(b.single.raw_sum.abs() >= Rational::from_integer(10));
        assert_eq!(b.chowla.raw_sum, Rational::from_integer(11));
    }

    #[test]
    fn morse_battery_cancels() {
        let f = poly(101, &[3, 1, 0, 1]);
        let ctx = f.ctx().clone();
        let b = moebius_battery(&f, &[ctx.zero(), ctx.one()], 3.0, 2).unwrap();
        assert_eq!(b.verdict.kind, CancellationKind::SquareRootCancellation);
    }

    #[test]
    fn violation_is_reported() {
        let f = poly(101, &[3, 1, 0, 1]);
        let ctx = f.ctx().clone();
        let err = moebius_battery(&f, &[ctx.zero(), ctx.one()], 0.0, 1).unwrap_err();
        assert!(matches!(err, LabError::DichotomyViolation { .. }));
    }

    #[test]
    fn large_q_small_cases() {
        let rows = large_q_demo(5, &[1, 2], 3.0, 1).unwrap();
        for row in &rows {
            assert!(row.multiplicity_two);
            assert!(row.is_morse);
            assert!(row.single_sums.windows(2).all(|w| w[0] == w[1]));
            assert_eq!(row.single_sums.len(), 5);
        }
        let row = &rows[1];
        assert_eq!(row.q, 25);
        assert!(row.nonsquarefree_count <= 10);
        assert!(row.product_sum.abs() >= Rational::from_integer(25 - 10));
    }
}
