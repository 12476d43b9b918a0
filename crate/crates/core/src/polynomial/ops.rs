//! Slice-level polynomial arithmetic. Inputs are trimmed coefficient slices
//! (ascending degree); outputs are trimmed vectors.

use num_bigint::BigUint;

use crate::finite_field::{FieldCtx, FieldElement};

pub(crate) type Coeffs = Vec<FieldElement>;

#[inline]
pub(crate) fn trim(v: &mut Coeffs) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn add(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Coeffs {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = ctx.add(o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Coeffs {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or_else(|| ctx.zero());
        match b.get(i) {
            Some(y) => out.push(ctx.sub(&x, y)),
            None => out.push(x),
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> (Coeffs, Coeffs) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lc = b[db];
    let inv_lc = if lc.is_one() { None } else { Some(ctx.inv(&lc).expect("nonzero")) };
    let mut q = vec![ctx.zero(); r.len() - db];
    for k in (0..r.len() - db).rev() {
        let top = r[k + db];
        if top.is_zero() {
            continue;
        }
        let c = match &inv_lc {
            Some(inv) => ctx.mul(&top, inv),
            None => top,
        };
        q[k] = c;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = ctx.sub(&r[k + i], &ctx.mul(&c, bi));
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Coeffs {
    if a.len() < b.len() {
        let mut r = a.to_vec();
        trim(&mut r);
        return r;
    }
    divrem(ctx, a, b).1
}

pub(crate) fn mul_mod(
    ctx: &FieldCtx,
    a: &[FieldElement],
    b: &[FieldElement],
    m: &[FieldElement],
) -> Coeffs {
    rem(ctx, &mul(ctx, a, b), m)
}

/// `base^e mod m`; `base` must already be reduced.
pub(crate) fn pow_mod(ctx: &FieldCtx, base: &[FieldElement], mut e: u64, m: &[FieldElement]) -> Coeffs {
    let mut acc = rem(ctx, &[ctx.one()], m);
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(ctx, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(ctx, &b, &b, m);
        }
    }
    acc
}

pub(crate) fn pow_mod_big(
    ctx: &FieldCtx,
    base: &[FieldElement],
    e: &BigUint,
    m: &[FieldElement],
) -> Coeffs {
    let mut acc = rem(ctx, &[ctx.one()], m);
    for i in (0..e.bits()).rev() {
        acc = mul_mod(ctx, &acc, &acc, m);
        if e.bit(i) {
            acc = mul_mod(ctx, &acc, base, m);
        }
    }
    acc
}

/// `h^q mod m` computed as `l` successive `p`-th powers.
pub(crate) fn pow_q_mod(ctx: &FieldCtx, h: &[FieldElement], m: &[FieldElement]) -> Coeffs {
    let mut out = h.to_vec();
    for _ in 0..ctx.degree() {
        out = pow_mod(ctx, &out, ctx.p(), m);
    }
    out
}

pub(crate) fn monic(ctx: &FieldCtx, a: &[FieldElement]) -> Coeffs {
    match a.last() {
        None => Vec::new(),
        Some(lc) if lc.is_one() => a.to_vec(),
        Some(lc) => {
            let inv = ctx.inv(lc).expect("nonzero");
            a.iter().map(|c| ctx.mul(c, &inv)).collect()
        }
    }
}

/// Monic gcd by the Euclidean algorithm.
pub(crate) fn gcd(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Coeffs {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(ctx, &x, &y);
        x = y;
        y = r;
    }
    monic(ctx, &x)
}

pub(crate) fn eval(ctx: &FieldCtx, a: &[FieldElement], x: &FieldElement) -> FieldElement {
    a.iter().rev().fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, x), c))
}

pub(crate) fn derivative(ctx: &FieldCtx, a: &[FieldElement]) -> Coeffs {
    let mut out: Coeffs = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ctx.scale(c, i as u64))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn is_one(a: &[FieldElement]) -> bool {
    a.len() == 1 && a[0].is_one()
}

/// Exact quotient `a / b` (asserts divisibility in debug builds).
pub(crate) fn div_exact(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Coeffs {
    let (q, r) = divrem(ctx, a, b);
    debug_assert!(r.is_empty());
    q
}
