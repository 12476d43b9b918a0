//! Univariate polynomials over a [`FieldCtx`].
//!
//! Coefficients are stored in ascending degree with no trailing zeros. The
//! heavy lifting happens in slice-level helpers (`ops`) that take the field
//! context explicitly so hot loops avoid reference-count traffic.

mod factor;
pub(crate) mod ops;
mod resultant;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::finite_field::{FieldCtx, FieldElement};

pub use factor::{FactorizationResult, DEFAULT_FACTOR_SEED};
pub(crate) use factor::{ddf_parts, roots_of_split};
pub use resultant::interpolate;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials belong to different fields")]
    CtxMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero polynomial not allowed here")]
    ZeroInput,
    #[error("polynomial must have degree at least {0}")]
    DegreeTooSmall(usize),
    #[error("field too small: need p > {needed}, have p = {p}")]
    FieldTooSmall { p: u64, needed: u64 },
    #[error("brute-force search space too large ({0} candidates)")]
    TooLarge(String),
}

#[derive(Clone)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.id().hash(state);
        self.coeffs.hash(state);
    }
}

impl Poly {
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<FieldElement>) -> Poly {
        ops::trim(&mut coeffs);
        Poly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &FieldCtx) -> Poly {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &FieldCtx) -> Poly {
        Poly::constant(ctx, ctx.one())
    }

    pub fn x(ctx: &FieldCtx) -> Poly {
        Poly::new(ctx, vec![ctx.zero(), ctx.one()])
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElement) -> Poly {
        Poly::new(ctx, vec![c])
    }

    /// `c·x^e`.
    pub fn monomial(ctx: &FieldCtx, c: FieldElement, e: usize) -> Poly {
        let mut coeffs = vec![ctx.zero(); e + 1];
        coeffs[e] = c;
        Poly::new(ctx, coeffs)
    }

    /// Integer coefficients (ascending), reduced into the prime subfield.
    pub fn from_i64s(ctx: &FieldCtx, coeffs: &[i64]) -> Poly {
        Poly::new(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `0`; for guards only.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.ctx.zero())
    }

    fn check(&self, other: &Poly) -> Result<(), PolyError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::CtxMismatch)
        }
    }

    fn wrap(&self, coeffs: Vec<FieldElement>) -> Poly {
        Poly::new(&self.ctx, coeffs)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(self.ctx == other.ctx);
        self.wrap(ops::add(&self.ctx, &self.coeffs, &other.coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert!(self.ctx == other.ctx);
        self.wrap(ops::sub(&self.ctx, &self.coeffs, &other.coeffs))
    }

    pub fn neg(&self) -> Poly {
        self.wrap(self.coeffs.iter().map(|c| self.ctx.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(self.ctx == other.ctx);
        self.wrap(ops::mul(&self.ctx, &self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        self.wrap(self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `f + a` for a field element `a`.
    pub fn add_constant(&self, a: &FieldElement) -> Poly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(*a);
        } else {
            coeffs[0] = self.ctx.add(&coeffs[0], a);
        }
        self.wrap(coeffs)
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (q, r) = ops::divrem(&self.ctx, &self.coeffs, &divisor.coeffs);
        Ok((self.wrap(q), self.wrap(r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Returns `(leading coefficient, monic associate)`; zero maps to
    /// `(0, 0)`.
    pub fn monic(&self) -> (FieldElement, Poly) {
        match self.leading_coeff() {
            None => (self.ctx.zero(), self.clone()),
            Some(lc) => {
                let inv = self.ctx.inv(&lc).expect("nonzero leading coefficient");
                (lc, self.scale(&inv))
            }
        }
    }

    pub fn eval(&self, a: &FieldElement) -> FieldElement {
        ops::eval(&self.ctx, &self.coeffs, a)
    }

    /// Formal derivative `Σ i·a_i x^{i-1}` in characteristic `p`.
    pub fn derivative(&self) -> Poly {
        self.wrap(ops::derivative(&self.ctx, &self.coeffs))
    }

    /// Second Hasse–Schmidt derivative `Σ_{i≥2} C(i,2)·a_i·x^{i-2}`.
    ///
    /// Unlike `f''`, this does not vanish identically on `x^2` in
    /// characteristic 2.
    pub fn second_hasse_schmidt(&self) -> Poly {
        let p = self.ctx.p();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(2)
            .map(|(i, a)| {
                let i = i as u64;
                // C(i,2) = i(i-1)/2; divide the even factor before reducing
                let binom = if i % 2 == 0 {
                    ((i / 2) % p) * ((i - 1) % p) % p
                } else {
                    (i % p) * (((i - 1) / 2) % p) % p
                };
                self.ctx.scale(a, binom)
            })
            .collect();
        self.wrap(coeffs)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(self.wrap(ops::gcd(&self.ctx, &self.coeffs, &other.coeffs)))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: u64, m: &Poly) -> Poly {
        let r = ops::rem(&self.ctx, &self.coeffs, &m.coeffs);
        self.wrap(ops::pow_mod(&self.ctx, &r, e, &m.coeffs))
    }

    /// Composition with `x ↦ x + c`.
    pub fn translate(&self, c: &FieldElement) -> Poly {
        let mut acc = Poly::zero(&self.ctx);
        let lin = Poly::new(&self.ctx, vec![*c, self.ctx.one()]);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add_constant(a);
        }
        acc
    }

    /// Orders by degree, then by coefficients from the top down using the
    /// canonical element order.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                match a.canonical_cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Applies a coefficient map into another field.
    pub fn map_into<F>(&self, target: &FieldCtx, mut f: F) -> Poly
    where
        F: FnMut(&FieldElement) -> FieldElement,
    {
        Poly::new(target, self.coeffs.iter().map(&mut f).collect())
    }
}

/// Writes in the expression grammar accepted by the CLI, highest degree
/// first: `x^4 + 5*x^2 + 3`. Extension coefficients appear as `(c0:c1)`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c.is_one(), e) {
                (_, 0) => write!(f, "{c}")?,
                (true, 1) => write!(f, "x")?,
                (true, _) => write!(f, "x^{e}")?,
                (false, 1) => write!(f, "{c}*x")?,
                (false, _) => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ctx.p(), self)
    }
}
