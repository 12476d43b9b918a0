//! Exact arithmetic in `F_p` and `F_{p^l}`.
//!
//! A [`FieldCtx`] describes the field (characteristic, extension degree and
//! the defining modulus); [`FieldElement`]s are plain `Copy` values carrying
//! their coefficient vector in the power basis `1, y, ..., y^{l-1}` together
//! with the identity of the owning field. All arithmetic goes through the
//! context.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::polynomial::Poly;

/// Largest extension degree an element can represent. Extensions built by
/// users are limited to [`MAX_USER_EXTENSION`]; the remaining room is used by
/// splitting fields of derivatives.
pub const MAX_EXT_DEGREE: usize = 24;

/// Largest degree accepted by [`make_extension`] from user input.
pub const MAX_USER_EXTENSION: usize = 12;

/// Characteristic bound: residues times residues must fit in `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    CtxMismatch,
    #[error("coefficient vector has the wrong length for this field")]
    BadCoefficients,
}

/// Element of a finite field in its power-basis representation.
///
/// Unused trailing slots are always zero, so derived equality and hashing are
/// structural.
#[derive(Clone, Copy)]
pub struct FieldElement {
    coeffs: [u32; MAX_EXT_DEGREE],
    len: u8,
    ctx_id: u64,
}

impl FieldElement {
    /// Coefficients `c_0..c_{l-1}` with `a = Σ c_i y^i`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[..self.len as usize]
    }

    pub fn ctx_id(&self) -> u64 {
        self.ctx_id
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs()[1..].iter().all(|&c| c == 0)
    }

    /// Compares by canonical index `Σ c_i p^i` without computing it.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs().iter().rev().cmp(other.coeffs().iter().rev())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx_id == other.ctx_id && self.coeffs() == other.coeffs()
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx_id.hash(state);
        self.coeffs().hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Prime-subfield elements print as integers, others as `(c0:c1:...)`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        if c[1..].iter().all(|&x| x == 0) {
            write!(f, "{}", c[0])
        } else {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(":"))
        }
    }
}

/// Binary operations accepted by [`FieldCtx::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// The exponent is the canonical index of the right operand.
    Pow,
}

struct Inner {
    p: u64,
    l: usize,
    /// Monic modulus coefficients `m_0..m_l` (empty for prime fields).
    modulus: Vec<u64>,
    /// `(p - m_i) % p` for `i < l`, used during reduction.
    neg_modulus: Vec<u64>,
    id: u64,
    order: BigUint,
    order_u64: Option<u64>,
}

/// Immutable description of `F_q`, `q = p^l`. Cloning is cheap.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.0.p)
            .field("l", &self.0.l)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

fn field_id(p: u64, modulus: &[u64]) -> u64 {
    // FNV-1a over (p, modulus); equal descriptions give equal ids.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    feed(p);
    feed(modulus.len() as u64);
    for &m in modulus {
        feed(m);
    }
    h
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Builds `F_p`.
pub fn make_prime_field(p: u64) -> Result<FieldCtx, FieldError> {
    if p < 2 {
        return Err(FieldError::OutOfRange(format!("characteristic {p} < 2")));
    }
    if p >= MAX_CHARACTERISTIC {
        return Err(FieldError::OutOfRange(format!("characteristic {p} >= 2^31")));
    }
    if !is_prime_u64(p) {
        return Err(FieldError::NotPrime(p));
    }
    Ok(FieldCtx::from_parts(p, Vec::new()))
}

/// Builds `F_{p^l}` over the prime field `base`.
///
/// Candidate moduli `x^l + c_{l-1}x^{l-1} + ... + c_0` are visited in
/// ascending canonical order of `(c_0, ..., c_{l-1})`, starting from the
/// offset given by the base-`p` digits of `seed` and wrapping around. The
/// first irreducible candidate wins.
pub fn make_extension(base: &FieldCtx, l: usize, seed: u64) -> Result<FieldCtx, FieldError> {
    if !base.is_prime_field() {
        return Err(FieldError::OutOfRange("base of an extension must be a prime field".into()));
    }
    if l == 0 || l > MAX_USER_EXTENSION {
        return Err(FieldError::OutOfRange(format!(
            "extension degree {l} outside 1..={MAX_USER_EXTENSION}"
        )));
    }
    extension_unchecked(base, l, seed)
}

/// Same as [`make_extension`] but allows degrees up to [`MAX_EXT_DEGREE`].
pub(crate) fn extension_unchecked(
    base: &FieldCtx,
    l: usize,
    seed: u64,
) -> Result<FieldCtx, FieldError> {
    if l == 1 {
        return Ok(base.clone());
    }
    if l > MAX_EXT_DEGREE {
        return Err(FieldError::OutOfRange(format!("extension degree {l} > {MAX_EXT_DEGREE}")));
    }
    let p = base.p();
    // the search is deterministic, so results can be shared
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize, u64), Vec<u64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(modulus) = cache.lock().expect("cache lock").get(&(p, l, seed)) {
        return Ok(FieldCtx::from_parts(p, modulus.clone()));
    }
    let mut digits = vec![0u64; l];
    let mut s = seed;
    for d in digits.iter_mut() {
        *d = s % p;
        s /= p;
    }
    loop {
        let mut coeffs: Vec<FieldElement> = digits.iter().map(|&c| base.from_u64(c)).collect();
        coeffs.push(base.one());
        let cand = Poly::new(base, coeffs);
        if cand.is_irreducible() {
            let mut modulus = digits.clone();
            modulus.push(1);
            cache.lock().expect("cache lock").insert((p, l, seed), modulus.clone());
            return Ok(FieldCtx::from_parts(p, modulus));
        }
        // odometer increment, wrapping at p^l
        for d in digits.iter_mut() {
            *d += 1;
            if *d == p {
                *d = 0;
            } else {
                break;
            }
        }
    }
}

impl FieldCtx {
    fn from_parts(p: u64, modulus: Vec<u64>) -> FieldCtx {
        let l = if modulus.is_empty() { 1 } else { modulus.len() - 1 };
        let neg_modulus = modulus.iter().take(l).map(|&m| (p - m) % p).collect();
        let order = BigUint::from(p).pow(l as u32);
        let order_u64 = order.to_u64();
        let id = field_id(p, &modulus);
        FieldCtx(Arc::new(Inner { p, l, modulus, neg_modulus, id, order, order_u64 }))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.l
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.l == 1
    }

    /// Monic modulus coefficients, ascending; empty for a prime field.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// `q = p^l`, exactly.
    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    /// `q` when it fits in 64 bits.
    pub fn order_u64(&self) -> Option<u64> {
        self.0.order_u64
    }

    #[inline]
    fn raw(&self, coeffs: [u32; MAX_EXT_DEGREE]) -> FieldElement {
        FieldElement { coeffs, len: self.0.l as u8, ctx_id: self.0.id }
    }

    pub fn zero(&self) -> FieldElement {
        self.raw([0; MAX_EXT_DEGREE])
    }

    pub fn one(&self) -> FieldElement {
        let mut c = [0; MAX_EXT_DEGREE];
        c[0] = 1;
        self.raw(c)
    }

    /// The integer `n` reduced into the prime subfield.
    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut c = [0; MAX_EXT_DEGREE];
        c[0] = (n % self.0.p) as u32;
        self.raw(c)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    /// Element from its power-basis coefficients; missing high coefficients
    /// are zero.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.0.l {
            return Err(FieldError::BadCoefficients);
        }
        let mut c = [0; MAX_EXT_DEGREE];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = (v % self.0.p) as u32;
        }
        Ok(self.raw(c))
    }

    /// The generator `y` of the power basis (equals `0` in a prime field
    /// only in the degenerate sense; callers should not rely on it there).
    pub fn generator(&self) -> FieldElement {
        if self.0.l == 1 {
            return self.zero();
        }
        let mut c = [0; MAX_EXT_DEGREE];
        c[1] = 1;
        self.raw(c)
    }

    /// Canonical index `Σ c_i p^i`, when `q` fits in 64 bits.
    pub fn index(&self, a: &FieldElement) -> Option<u64> {
        self.0.order_u64?;
        let p = self.0.p;
        Some(a.coeffs().iter().rev().fold(0u64, |acc, &c| acc * p + c as u64))
    }

    /// Inverse of [`FieldCtx::index`].
    pub fn from_index(&self, mut idx: u64) -> FieldElement {
        let mut c = [0; MAX_EXT_DEGREE];
        for slot in c.iter_mut().take(self.0.l) {
            *slot = (idx % self.0.p) as u32;
            idx /= self.0.p;
        }
        self.raw(c)
    }

    /// All elements in canonical order. Panics if `q` does not fit in `u64`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.0.order_u64.expect("field too large to enumerate");
        (0..q).map(move |i| self.from_index(i))
    }

    #[inline]
    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert_eq!(a.ctx_id, self.0.id);
        debug_assert_eq!(b.ctx_id, self.0.id);
        let p = self.0.p as u32;
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.0.l {
            let s = a.coeffs[i] + b.coeffs[i];
            c[i] = if s >= p { s - p } else { s };
        }
        self.raw(c)
    }

    #[inline]
    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.0.p as u32;
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.0.l {
            c[i] = if a.coeffs[i] == 0 { 0 } else { p - a.coeffs[i] };
        }
        self.raw(c)
    }

    #[inline]
    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert_eq!(a.ctx_id, self.0.id);
        debug_assert_eq!(b.ctx_id, self.0.id);
        let p = self.0.p;
        let l = self.0.l;
        if l == 1 {
            let mut c = [0; MAX_EXT_DEGREE];
            c[0] = ((a.coeffs[0] as u64 * b.coeffs[0] as u64) % p) as u32;
            return self.raw(c);
        }
        let mut prod = [0u64; 2 * MAX_EXT_DEGREE - 1];
        for i in 0..l {
            let ai = a.coeffs[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..l {
                prod[i + j] = (prod[i + j] + ai * b.coeffs[j] as u64) % p;
            }
        }
        let neg = &self.0.neg_modulus;
        for k in (l..2 * l - 1).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            for i in 0..l {
                prod[k - l + i] = (prod[k - l + i] + neg[i] * top) % p;
            }
        }
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..l {
            c[i] = prod[i] as u32;
        }
        self.raw(c)
    }

    /// Scales by a prime-subfield integer.
    pub fn scale(&self, a: &FieldElement, k: u64) -> FieldElement {
        let p = self.0.p;
        let k = k % p;
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.0.l {
            c[i] = ((a.coeffs[i] as u64 * k) % p) as u32;
        }
        self.raw(c)
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let p = self.0.p;
        if self.0.l == 1 {
            let r = inv_mod(a.coeffs[0] as u64, p);
            let mut c = [0; MAX_EXT_DEGREE];
            c[0] = r as u32;
            return Some(self.raw(c));
        }
        // extended Euclid on F_p[y]: find u with u·a ≡ 1 mod m
        let a_poly: Vec<u64> = a.coeffs().iter().map(|&c| c as u64).collect();
        let u = fp_poly_inverse(&a_poly, &self.0.modulus, p);
        let mut c = [0; MAX_EXT_DEGREE];
        for (slot, v) in c.iter_mut().zip(u) {
            *slot = v as u32;
        }
        Some(self.raw(c))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        let inv = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    /// Checked binary arithmetic, validating field membership.
    pub fn apply(
        &self,
        op: ArithOp,
        a: &FieldElement,
        b: &FieldElement,
    ) -> Result<FieldElement, FieldError> {
        if a.ctx_id != self.0.id || b.ctx_id != self.0.id {
            return Err(FieldError::CtxMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Pow => {
                let e = a
                    .coeffs()
                    .iter()
                    .zip(b.coeffs())
                    .rev()
                    .fold(BigUint::zero(), |acc, (_, &c)| acc * self.0.p + c);
                self.pow_big(a, &e)
            }
        })
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        if self.0.l == 1 {
            return *a;
        }
        self.pow(a, self.0.p)
    }

    /// `a ↦ a^{p^k}`.
    pub fn frobenius_iter(&self, a: &FieldElement, k: usize) -> FieldElement {
        let mut x = *a;
        for _ in 0..k % self.0.l {
            x = self.frobenius(&x);
        }
        x
    }

    pub fn in_prime_subfield(&self, a: &FieldElement) -> bool {
        self.frobenius(a) == *a
    }

    /// Membership in the subfield `F_{p^k}` (requires `k | l`).
    pub fn in_subfield(&self, a: &FieldElement, k: usize) -> bool {
        self.frobenius_iter(a, k) == *a
    }

    /// `a^{1/p}`, the inverse of Frobenius.
    pub fn pth_root(&self, a: &FieldElement) -> FieldElement {
        self.frobenius_iter(a, self.0.l - 1)
    }

    /// Quadratic character: `0`, `1` or `-1`. Requires odd characteristic.
    pub fn quadratic_character(&self, a: &FieldElement) -> i8 {
        if a.is_zero() {
            return 0;
        }
        debug_assert!(self.0.p != 2);
        let e = (&self.0.order - 1u32) >> 1;
        let r = self.pow_big(a, &e);
        if r.is_one() {
            1
        } else {
            -1
        }
    }

    /// Integer value of `a` when it lies in the prime subfield.
    pub fn prime_field_value(&self, a: &FieldElement) -> Option<u64> {
        if a.coeffs()[1..].iter().all(|&c| c == 0) {
            Some(a.coeffs[0] as u64)
        } else {
            None
        }
    }

    /// Whether the order is `<= limit`.
    pub fn order_at_most(&self, limit: u64) -> bool {
        self.0.order_u64.is_some_and(|q| q <= limit)
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u64
}

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let inv_lc = inv_mod(b[db], p);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] * inv_lc % p;
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + (p - c) * bi) % p;
        }
        fp_trim(&mut r);
    }
    fp_trim(&mut q);
    (q, r)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m` over `F_p`.
fn fp_poly_inverse(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    fp_trim(&mut r1);
    let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 is a nonzero constant
    let c = inv_mod(r0[0], p);
    t0.iter().map(|&x| x * c % p).collect()
}
