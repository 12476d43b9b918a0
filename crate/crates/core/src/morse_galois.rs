//! Critical points and values, the Morse test, the bad-shift set `B(f)`,
//! and the discriminant-square classifier for Möbius sums.
//!
//! Critical points are computed inside a single extension `F_{q^M}` that
//! contains every root of `f'`, so no maps between different extensions are
//! ever needed: the only embedding is `F_q → F_{q^M}`.

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::finite_field::{
    extension_unchecked, inv_mod, make_prime_field, FieldCtx, FieldElement, FieldError, MAX_EXT_DEGREE,
};
use crate::polynomial::{interpolate, roots_of_split, Poly, PolyError, DEFAULT_FACTOR_SEED};

/// Largest splitting degree `M` over `F_q` attempted for critical points.
pub const MAX_SPLITTING_DEGREE: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorseError {
    #[error("f' vanishes identically")]
    DerivativeVanishes,
    #[error("critical points need an extension of degree {0}, above the supported bound")]
    ExtensionTooLarge(usize),
    #[error("characteristic 2 is not supported here")]
    EvenCharacteristic,
    #[error("field too small: need p > {needed}, have p = {p}")]
    FieldTooSmall { p: u64, needed: u64 },
    #[error("polynomial must be monic of degree at least 2")]
    BadInput,
    #[error("shift set must be nonempty with distinct elements")]
    InvalidShifts,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The embedding `F_q → F_{q^M}` determined by a root of the modulus of
/// `F_q`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldCtx,
    target: FieldCtx,
    /// Images of `1, y, ..., y^{l-1}`.
    basis: Vec<FieldElement>,
}

impl Embedding {
    fn new(source: &FieldCtx, target: &FieldCtx) -> Embedding {
        let l = source.degree();
        let basis = if l == 1 {
            vec![target.one()]
        } else {
            let modulus = Poly::new(
                target,
                source.modulus().iter().map(|&c| target.from_u64(c)).collect(),
            );
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_FACTOR_SEED);
            let root = roots_of_split(target, modulus.coeffs(), &mut rng)[0];
            let mut basis = Vec::with_capacity(l);
            let mut cur = target.one();
            for _ in 0..l {
                basis.push(cur);
                cur = target.mul(&cur, &root);
            }
            basis
        };
        Embedding { source: source.clone(), target: target.clone(), basis }
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    pub fn map(&self, a: &FieldElement) -> FieldElement {
        a.coeffs().iter().zip(&self.basis).fold(self.target.zero(), |acc, (&c, b)| {
            self.target.add(&acc, &self.target.scale(b, c as u64))
        })
    }

    pub fn map_poly(&self, f: &Poly) -> Poly {
        f.map_into(&self.target, |c| self.map(c))
    }

    /// Preimage of `b`, if `b` lies in the image of `F_q`.
    pub fn pull_back(&self, b: &FieldElement) -> Option<FieldElement> {
        let p = self.target.p();
        let l = self.basis.len();
        let n = self.target.degree();
        if l == 1 {
            return self.target.prime_field_value(b).map(|v| self.source.from_u64(v));
        }
        // rows: target coordinates; columns: basis images, then b
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row: Vec<u64> = self.basis.iter().map(|e| e.coeffs()[i] as u64).collect();
                row.push(b.coeffs()[i] as u64);
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..l {
            let Some(r) = (pivot_row..n).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(pivot_row, r);
            let inv = inv_mod(rows[pivot_row][col], p);
            for v in rows[pivot_row].iter_mut() {
                *v = *v * inv % p;
            }
            for r2 in 0..n {
                if r2 != pivot_row && rows[r2][col] != 0 {
                    let factor = rows[r2][col];
                    for c in 0..=l {
                        rows[r2][c] = (rows[r2][c] + (p - factor) * rows[pivot_row][c] % p) % p;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        if rows[pivot_row..].iter().any(|row| row[l] != 0) {
            return None;
        }
        let mut coeffs = vec![0u64; l];
        for (i, &col) in pivots.iter().enumerate() {
            coeffs[col] = rows[i][l];
        }
        self.source.from_coeffs(&coeffs).ok()
    }
}

/// Critical points of `f` (roots of `f'` with multiplicity) and the
/// critical values `f(τ)`, all inside a common splitting field.
#[derive(Clone, Debug)]
pub struct CriticalData {
    pub ext_ctx: FieldCtx,
    pub embedding: Embedding,
    /// Points in canonical order with multiplicities.
    pub points: Vec<(FieldElement, u32)>,
    /// `values[i] = f(points[i].0)`.
    pub values: Vec<FieldElement>,
    pub distinct_value_count: usize,
}

impl CriticalData {
    /// Distinct critical values in canonical order.
    pub fn distinct_values(&self) -> Vec<FieldElement> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.canonical_cmp(b));
        v.dedup();
        v
    }
}

fn require_monic(f: &Poly) -> Result<usize, MorseError> {
    match f.degree() {
        Some(d) if d >= 2 && f.is_monic() => Ok(d),
        _ => Err(MorseError::BadInput),
    }
}

pub fn critical_data(f: &Poly) -> Result<CriticalData, MorseError> {
    require_monic(f)?;
    let ctx = f.ctx();
    let df = f.derivative();
    if df.is_zero() {
        return Err(MorseError::DerivativeVanishes);
    }
    if df.is_constant() {
        // no critical points at all
        let embedding = Embedding::new(ctx, ctx);
        return Ok(CriticalData {
            ext_ctx: ctx.clone(),
            embedding,
            points: Vec::new(),
            values: Vec::new(),
            distinct_value_count: 0,
        });
    }
    let factors = df.factor(DEFAULT_FACTOR_SEED)?;
    let splitting = factors
        .factors
        .iter()
        .fold(1usize, |acc, (g, _)| acc.lcm(&g.degree_or_zero()));
    let total = splitting * ctx.degree();
    if splitting > MAX_SPLITTING_DEGREE || total > MAX_EXT_DEGREE {
        return Err(MorseError::ExtensionTooLarge(total));
    }
    let ext = extension_unchecked(&make_prime_field(ctx.p())?, total, 0)?;
    let embedding = Embedding::new(ctx, &ext);
    let f_ext = embedding.map_poly(f);
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_FACTOR_SEED);
    let mut points = Vec::new();
    for (g, mult) in &factors.factors {
        let g_ext = embedding.map_poly(g);
        for root in roots_of_split(&ext, g_ext.coeffs(), &mut rng) {
            points.push((root, *mult));
        }
    }
    points.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let values: Vec<FieldElement> = points.iter().map(|(t, _)| f_ext.eval(t)).collect();
    let mut distinct = values.clone();
    distinct.sort_by(|a, b| a.canonical_cmp(b));
    distinct.dedup();
    Ok(CriticalData {
        ext_ctx: ext,
        embedding,
        points,
        values,
        distinct_value_count: distinct.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorseMethod {
    /// Decided without locating critical points (`f'` has the wrong degree
    /// or is not squarefree).
    Derivative,
    /// Critical values computed in the splitting field of `f'`.
    SplittingField,
    /// Squarefreeness of `Res_x(f'(x), f(x) - t)`, used when the splitting
    /// field is too large.
    CriticalValuePolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseDiagnostics {
    pub is_morse: bool,
    pub derivative_degree: Option<usize>,
    pub derivative_squarefree: bool,
    /// Number of distinct critical values, when computed.
    pub distinct_critical_values: Option<usize>,
    /// `gcd(q, 2d) ≠ 1`: the Morse property may not force the full
    /// symmetric group.
    pub hypothesis_warning: bool,
    pub method: MorseMethod,
}

/// `f` is Morse when `f'` has degree `d-1`, is squarefree, and the `d-1`
/// critical values are distinct.
pub fn is_morse(f: &Poly) -> Result<MorseDiagnostics, MorseError> {
    let d = require_monic(f)?;
    let p = f.ctx().p();
    let hypothesis_warning = p == 2 || (d as u64) % p == 0;
    let df = f.derivative();
    let derivative_degree = df.degree();
    let mut diag = MorseDiagnostics {
        is_morse: false,
        derivative_degree,
        derivative_squarefree: false,
        distinct_critical_values: None,
        hypothesis_warning,
        method: MorseMethod::Derivative,
    };
    if derivative_degree != Some(d - 1) {
        return Ok(diag);
    }
    diag.derivative_squarefree = d == 2 || df.is_squarefree()?;
    if !diag.derivative_squarefree {
        return Ok(diag);
    }
    match critical_data(f) {
        Ok(cd) => {
            diag.method = MorseMethod::SplittingField;
            diag.distinct_critical_values = Some(cd.distinct_value_count);
            diag.is_morse = cd.distinct_value_count == d - 1;
        }
        Err(MorseError::ExtensionTooLarge(_)) => {
            diag.method = MorseMethod::CriticalValuePolynomial;
            let v = critical_value_polynomial(f)?;
            diag.is_morse = v.degree() == Some(d - 1) && v.is_squarefree()?;
        }
        Err(e) => return Err(e),
    }
    Ok(diag)
}

/// `V(t) = Res_x(f'(x), f(x) - t)`: its roots are the critical values,
/// repeated by the multiplicity of the critical point. Needs `q >= d`.
pub fn critical_value_polynomial(f: &Poly) -> Result<Poly, MorseError> {
    let d = require_monic(f)?;
    let ctx = f.ctx();
    if ctx.order_u64().is_some_and(|q| q < d as u64) {
        return Err(MorseError::FieldTooSmall { p: ctx.p(), needed: d as u64 });
    }
    let df = f.derivative();
    if df.is_zero() {
        return Err(MorseError::DerivativeVanishes);
    }
    let xs: Vec<FieldElement> = (0..d as u64).map(|i| ctx.from_index(i)).collect();
    let ys = xs
        .iter()
        .map(|t| df.resultant(&f.add_constant(&ctx.neg(t))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(interpolate(ctx, &xs, &ys))
}

/// `B(f) = ((R_f - R_f) \ {0}) ∩ F_q`, in canonical order.
pub fn bad_set(f: &Poly) -> Result<Vec<FieldElement>, MorseError> {
    let cd = critical_data(f)?;
    let ext = &cd.ext_ctx;
    let values = cd.distinct_values();
    let mut out = Vec::new();
    for a in &values {
        for b in &values {
            if a == b {
                continue;
            }
            let diff = ext.sub(a, b);
            if let Some(x) = cd.embedding.pull_back(&diff) {
                out.push(x);
            }
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    Ok(out)
}

/// Whether some nonzero difference of shifts lands in `B(f)`.
pub fn bad_shift_check(f: &Poly, shifts: &[FieldElement]) -> Result<bool, MorseError> {
    if shifts.is_empty() {
        return Err(MorseError::InvalidShifts);
    }
    for (i, a) in shifts.iter().enumerate() {
        if shifts[..i].contains(a) {
            return Err(MorseError::InvalidShifts);
        }
    }
    if shifts.len() == 1 {
        return Ok(false);
    }
    let ctx = f.ctx();
    let bad = bad_set(f)?;
    Ok(shifts.iter().any(|a| {
        shifts
            .iter()
            .any(|b| a != b && bad.contains(&ctx.sub(a, b)))
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CancellationKind {
    /// `μ` has constant sign on the squarefree part of the interval.
    NoCancellation,
    SquareRootCancellation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationVerdict {
    pub kind: CancellationKind,
    /// The constant sign of `μ`, for [`CancellationKind::NoCancellation`].
    pub sign: Option<i8>,
    /// `D(t) = disc_x(f(x) + t)`.
    pub witness: Poly,
    /// Exponents of the squarefree decomposition of `D`.
    pub exponents: Vec<u32>,
}

/// Decides whether `Σ_a μ(f + a)` cancels by testing whether
/// `D(t) = disc_x(f(x) + t)` is a constant times a square.
///
/// `μ(g) = (-1)^d χ(disc g)` for squarefree `g`, so if `D = c·S(t)^2` the
/// sign is `(-1)^d χ(c)` on every squarefree member of the interval.
pub fn classify_mu_cancellation(f: &Poly) -> Result<CancellationVerdict, MorseError> {
    let d = require_monic(f)?;
    let ctx = f.ctx();
    if ctx.p() == 2 {
        return Err(MorseError::EvenCharacteristic);
    }
    if ctx.p() <= d as u64 {
        return Err(MorseError::FieldTooSmall { p: ctx.p(), needed: d as u64 });
    }
    let witness = f.disc_in_t()?;
    let (lc, _) = witness.monic();
    let exponents: Vec<u32> = if witness.is_constant() {
        Vec::new()
    } else {
        let mut e: Vec<u32> = witness.squarefree_decomposition()?.into_iter().map(|(_, m)| m).collect();
        e.sort_unstable();
        e
    };
    let square = !witness.is_zero() && exponents.iter().all(|e| e % 2 == 0);
    let verdict = if square {
        let parity: i8 = if d % 2 == 0 { 1 } else { -1 };
        CancellationVerdict {
            kind: CancellationKind::NoCancellation,
            sign: Some(parity * ctx.quadratic_character(&lc)),
            witness,
            exponents,
        }
    } else {
        CancellationVerdict { kind: CancellationKind::SquareRootCancellation, sign: None, witness, exponents }
    };
    Ok(verdict)
}

/// `μ(g)` from the quadratic character of the discriminant:
/// `(-1)^d χ(disc g)`, and `0` when `disc g = 0`.
pub fn stickelberger_mu(g: &Poly) -> Result<i8, MorseError> {
    let ctx = g.ctx();
    if ctx.p() == 2 {
        return Err(MorseError::EvenCharacteristic);
    }
    let d = match g.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(MorseError::BadInput),
    };
    let disc = g.discriminant()?;
    let chi = ctx.quadratic_character(&disc);
    Ok(if d % 2 == 0 { chi } else { -chi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_functions::{BuiltinKind, ClassFunction};
    use crate::finite_field::make_extension;
    use crate::Rational;
    use rand::Rng;

    fn poly(p: u64, c: &[i64]) -> Poly {
        Poly::from_i64s(&make_prime_field(p).unwrap(), c)
    }

    fn as_ints(ctx: &FieldCtx, v: &[FieldElement]) -> Vec<u64> {
        v.iter().map(|a| ctx.prime_field_value(a).unwrap()).collect()
    }

    #[test]
    fn critical_data_quartic() {
        let f = poly(13, &[0, 0, -2, 0, 1]);
        let cd = critical_data(&f).unwrap();
        let pts: Vec<FieldElement> = cd.points.iter().map(|(t, _)| *t).collect();
        assert_eq!(as_ints(&cd.ext_ctx, &pts), vec![0, 1, 12]);
        assert_eq!(as_ints(&cd.ext_ctx, &cd.distinct_values()), vec![0, 12]);
        assert_eq!(cd.distinct_value_count, 2);
        let dfe = cd.embedding.map_poly(&f.derivative());
        assert!(pts.iter().all(|t| dfe.eval(t).is_zero()));
    }

    #[test]
    fn critical_data_cube_and_quadratic() {
        let cd = critical_data(&poly(7, &[0, 0, 0, 1])).unwrap();
        assert_eq!(cd.points.len(), 1);
        assert_eq!(cd.points[0].1, 2);
        assert!(cd.points[0].0.is_zero());
        assert_eq!(cd.distinct_value_count, 1);
        let cd = critical_data(&poly(11, &[5, 0, 1])).unwrap();
        assert_eq!(cd.points.len(), 1);
        assert_eq!(as_ints(&cd.ext_ctx, &cd.values), vec![5]);
        assert_eq!(critical_data(&poly(3, &[0, 0, 0, 1])).unwrap_err(), MorseError::DerivativeVanishes);
    }

    #[test]
    fn critical_points_in_extension() {
        // f' = 3x^2 + 3 over F_7 has roots ±i in F_49
        let f = poly(7, &[0, 3, 0, 1]);
        let cd = critical_data(&f).unwrap();
        assert_eq!(cd.ext_ctx.degree(), 2);
        assert_eq!(cd.points.len(), 2);
        let fe = cd.embedding.map_poly(&f);
        for ((t, m), v) in cd.points.iter().zip(&cd.values) {
            assert_eq!(*m, 1);
            assert_eq!(fe.eval(t), *v);
        }
    }

    #[test]
    fn morse_examples() {
        assert!(!is_morse(&poly(13, &[0, 0, -2, 0, 1])).unwrap().is_morse);
        assert!(!is_morse(&poly(7, &[0, 0, 0, 1])).unwrap().is_morse);
        let d = is_morse(&poly(7, &[0, 1, 0, 1])).unwrap();
        assert!(d.is_morse);
        assert_eq!(d.distinct_critical_values, Some(2));
        assert!(!d.hypothesis_warning);
        // x^3 + x over F_7: critical points ±3, values 2 and 5
        let cd = critical_data(&poly(7, &[0, 1, 0, 1])).unwrap();
        let pts: Vec<FieldElement> = cd.points.iter().map(|(t, _)| *t).collect();
        assert_eq!(as_ints(&cd.ext_ctx, &pts), vec![3, 4]);
        assert_eq!(as_ints(&cd.ext_ctx, &cd.values), vec![2, 5]);
        assert!(is_morse(&poly(3, &[0, 1, 0, 1])).unwrap().hypothesis_warning);
    }

    #[test]
    fn morse_methods_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let p = [11u64, 13, 17, 101][rng.gen_range(0..4)];
            let d = rng.gen_range(2..=6);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p as i64)).collect();
            if rng.gen_bool(0.3) {
                c.iter_mut().skip(1).step_by(2).for_each(|x| *x = 0);
            }
            c.push(1);
            let f = poly(p, &c);
            let diag = is_morse(&f).unwrap();
            if diag.derivative_degree == Some(d - 1) && diag.derivative_squarefree {
                let v = critical_value_polynomial(&f).unwrap();
                let alt = v.degree() == Some(d - 1) && v.is_squarefree().unwrap();
                assert_eq!(diag.is_morse, alt, "{f:?}");
            }
        }
    }

    #[test]
    fn bad_set_examples() {
        for p in [5u64, 7, 11, 13, 101] {
            let b = bad_set(&poly(p, &[0, 0, -2, 0, 1])).unwrap();
            let ctx = make_prime_field(p).unwrap();
            assert_eq!(as_ints(&ctx, &b), vec![1, p - 1]);
            assert!(bad_set(&poly(p, &[0, 0, 0, 1])).unwrap().is_empty());
        }
    }

    #[test]
    fn bad_set_bounds_and_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let p = [7u64, 11, 13, 31][rng.gen_range(0..4)];
            let d = rng.gen_range(2..=5);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p as i64)).collect();
            c.push(1);
            let f = poly(p, &c);
            let ctx = f.ctx().clone();
            let b = bad_set(&f).unwrap();
            assert!(b.len() <= (d - 1) * (d - 1));
            for x in &b {
                assert!(b.contains(&ctx.neg(x)));
                assert!(!x.is_zero());
            }
        }
    }

    #[test]
    fn bad_set_over_extension_field() {
        let f25 = make_extension(&make_prime_field(5).unwrap(), 2, 0).unwrap();
        let f = Poly::from_i64s(&f25, &[0, 0, -2, 0, 1]);
        let b = bad_set(&f).unwrap();
        assert_eq!(b, vec![f25.from_u64(1), f25.from_u64(4)]);
        // x^3 + y x with y a generator: critical values ±(2y/3)β
        let g = Poly::new(&f25, vec![f25.zero(), f25.generator(), f25.zero(), f25.one()]);
        for x in bad_set(&g).unwrap() {
            assert!(!x.is_zero());
        }
    }

    #[test]
    fn bad_shift_examples() {
        let f = poly(13, &[0, 0, -2, 0, 1]);
        let ctx = f.ctx().clone();
        assert!(bad_shift_check(&f, &[ctx.zero(), ctx.one()]).unwrap());
        assert!(!bad_shift_check(&f, &[ctx.zero(), ctx.from_u64(2)]).unwrap());
        assert!(!bad_shift_check(&f, &[ctx.from_u64(5)]).unwrap());
        let cube = poly(13, &[0, 0, 0, 1]);
        let h: Vec<_> = (0..5).map(|i| ctx.from_u64(i)).collect();
        assert!(!bad_shift_check(&cube, &h).unwrap());
        assert_eq!(bad_shift_check(&f, &[]), Err(MorseError::InvalidShifts));
        assert_eq!(bad_shift_check(&f, &[ctx.one(), ctx.one()]), Err(MorseError::InvalidShifts));
    }

    #[test]
    fn classifier_examples() {
        let v = classify_mu_cancellation(&poly(7, &[0, 0, 0, 1])).unwrap();
        assert_eq!(v.kind, CancellationKind::NoCancellation);
        assert_eq!(v.witness, poly(7, &[0, 0, -27]));
        assert_eq!(v.exponents, vec![2]);
        // Σ_a μ(x^3 + a) over F_7 by enumeration
        let f7 = make_prime_field(7).unwrap();
        let mu = ClassFunction::<Rational>::builtin(BuiltinKind::Moebius, 3).unwrap();
        let total: Rational = f7
            .elements()
            .map(|a| mu.evaluate(&poly(7, &[0, 0, 0, 1]).add_constant(&a)).unwrap())
            .sum();
        assert_eq!(total, Rational::from_integer(-6));
        assert_eq!(v.sign, Some(-1));
        assert_eq!(Rational::from_integer(v.sign.unwrap() as i128 * 6), total);
        let v5 = classify_mu_cancellation(&poly(5, &[0, 0, 0, 1])).unwrap();
        assert_eq!(v5.sign, Some(1));
        let w = classify_mu_cancellation(&poly(7, &[0, 1, 0, 1])).unwrap();
        assert_eq!(w.kind, CancellationKind::SquareRootCancellation);
        assert_eq!(w.sign, None);
        assert_eq!(
            classify_mu_cancellation(&poly(2, &[1, 1, 1])).unwrap_err(),
            MorseError::EvenCharacteristic
        );
        assert!(matches!(
            classify_mu_cancellation(&poly(3, &[0, 0, 0, 1])),
            Err(MorseError::FieldTooSmall { .. })
        ));
    }

    #[test]
    fn stickelberger_examples() {
        assert_eq!(stickelberger_mu(&poly(5, &[1, 0, 1])).unwrap(), 1);
        assert_eq!(stickelberger_mu(&poly(3, &[1, 0, 1])).unwrap(), -1);
        assert_eq!(stickelberger_mu(&poly(3, &[0, 0, 1])).unwrap(), 0);
        assert_eq!(stickelberger_mu(&poly(2, &[1, 1, 1])).unwrap_err(), MorseError::EvenCharacteristic);
    }

    #[test]
    fn stickelberger_matches_factorization() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let primes: Vec<u64> = (3..=97).filter(|&n| crate::finite_field::is_prime_u64(n)).collect();
        let mut checked = 0;
        while checked < 1000 {
            let p = primes[rng.gen_range(0..primes.len())];
            let d = rng.gen_range(1..=6);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p as i64)).collect();
            c.push(1);
            let g = poly(p, &c);
            if !g.is_squarefree().unwrap() {
                continue;
            }
            let omega = g.factor(0).unwrap().omega();
            let mu = if omega % 2 == 0 { 1 } else { -1 };
            assert_eq!(stickelberger_mu(&g).unwrap(), mu);
            checked += 1;
        }
    }

    #[test]
    fn embedding_round_trip() {
        let f9 = make_extension(&make_prime_field(3).unwrap(), 2, 0).unwrap();
        let big = extension_unchecked(&make_prime_field(3).unwrap(), 6, 0).unwrap();
        let emb = Embedding::new(&f9, &big);
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(emb.map(&f9.mul(&a, &b)), big.mul(&emb.map(&a), &emb.map(&b)));
            }
            assert_eq!(emb.pull_back(&emb.map(&a)), Some(a));
        }
        // an element of F_{3^6} outside F_9
        assert_eq!(emb.pull_back(&big.generator()), None);
    }
}
