//! Resultants, discriminants and the discriminant of `f(x) + t` as a
//! polynomial in `t`.

use super::ops;
use super::{Poly, PolyError};
use crate::finite_field::{FieldCtx, FieldElement};

/// Lagrange interpolation through `(x_i, y_i)`; the `x_i` must be distinct.
pub fn interpolate(ctx: &FieldCtx, xs: &[FieldElement], ys: &[FieldElement]) -> Poly {
    let mut acc = Poly::zero(ctx);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one(ctx);
        let mut denom = ctx.one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::new(ctx, vec![ctx.neg(xj), ctx.one()]));
            denom = ctx.mul(&denom, &ctx.sub(xi, xj));
        }
        let c = ctx.div(yi, &denom).expect("distinct nodes");
        acc = acc.add(&basis.scale(&c));
    }
    acc
}

impl Poly {
    /// `Res(f, g)` by the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Poly) -> Result<FieldElement, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let ctx = &self.ctx;
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        let mut acc = ctx.one();
        loop {
            let da = a.len() - 1;
            let db = b.len() - 1;
            if db == 0 {
                return Ok(ctx.mul(&acc, &ctx.pow(&b[0], da as u64)));
            }
            if da == 0 {
                return Ok(ctx.mul(&acc, &ctx.pow(&a[0], db as u64)));
            }
            let r = ops::rem(ctx, &a, &b);
            if r.is_empty() {
                return Ok(ctx.zero());
            }
            // Res(a,b) = (-1)^{da·db} · lc(b)^{da - deg r} · Res(b, r)
            if (da * db) % 2 == 1 {
                acc = ctx.neg(&acc);
            }
            let lc = b[db];
            acc = ctx.mul(&acc, &ctx.pow(&lc, (da - (r.len() - 1)) as u64));
            a = b;
            b = r;
        }
    }

    /// `Π_{i<j} (α_i - α_j)^2 · lc^{2d-2}`; zero iff `g` has a repeated root.
    pub fn discriminant(&self) -> Result<FieldElement, PolyError> {
        let d = self.require_degree_at_least(1)?;
        let ctx = &self.ctx;
        let (lc, m) = self.monic();
        let dm = m.derivative();
        if dm.is_zero() {
            return Ok(ctx.zero());
        }
        let mut disc = m.resultant(&dm)?;
        if (d * (d - 1) / 2) % 2 == 1 {
            disc = ctx.neg(&disc);
        }
        Ok(ctx.mul(&disc, &ctx.pow(&lc, (2 * d - 2) as u64)))
    }

    /// `D(t) = disc_x(f(x) + t)` by interpolation through `t = 0, ..., d-1`.
    /// Requires `p > d`.
    pub fn disc_in_t(&self) -> Result<Poly, PolyError> {
        let d = self.require_degree_at_least(2)?;
        let ctx = &self.ctx;
        if ctx.p() <= d as u64 {
            return Err(PolyError::FieldTooSmall { p: ctx.p(), needed: d as u64 });
        }
        let xs: Vec<FieldElement> = (0..d as u64).map(|t| ctx.from_u64(t)).collect();
        let ys = xs
            .iter()
            .map(|t| self.add_constant(t).discriminant())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(interpolate(ctx, &xs, &ys))
    }

    fn require_degree_at_least(&self, min: usize) -> Result<usize, PolyError> {
        match self.degree() {
            Some(d) if d >= min => Ok(d),
            _ => Err(PolyError::DegreeTooSmall(min)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_prime_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Determinant of the Sylvester matrix by Gaussian elimination.
    fn sylvester_resultant(f: &Poly, g: &Poly) -> FieldElement {
        let ctx = f.ctx();
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        let size = m + n;
        let mut mat = vec![vec![ctx.zero(); size]; size];
        for row in 0..n {
            for (j, c) in f.coeffs().iter().rev().enumerate() {
                mat[row][row + j] = *c;
            }
        }
        for row in 0..m {
            for (j, c) in g.coeffs().iter().rev().enumerate() {
                mat[n + row][row + j] = *c;
            }
        }
        let mut det = ctx.one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return ctx.zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = ctx.neg(&det);
            }
            det = ctx.mul(&det, &mat[col][col]);
            let inv = ctx.inv(&mat[col][col]).unwrap();
            for r in col + 1..size {
                let factor = ctx.mul(&mat[r][col], &inv);
                for c in col..size {
                    let v = ctx.mul(&factor, &mat[col][c]);
                    mat[r][c] = ctx.sub(&mat[r][c], &v);
                }
            }
        }
        det
    }

    #[test]
    fn resultant_examples() {
        let f7 = make_prime_field(7).unwrap();
        let a = Poly::from_i64s(&f7, &[1, 0, 1]);
        let b = Poly::from_i64s(&f7, &[-1, 0, 1]);
        assert_eq!(a.resultant(&b).unwrap(), f7.from_u64(4));
        assert_eq!(sylvester_resultant(&a, &b), f7.from_u64(4));
        // Res(x - a, g) = g(a)
        let g = Poly::from_i64s(&f7, &[3, 5, 0, 2]);
        for v in f7.elements() {
            let lin = Poly::new(&f7, vec![f7.neg(&v), f7.one()]);
            assert_eq!(lin.resultant(&g).unwrap(), g.eval(&v));
        }
        let shared = Poly::from_i64s(&f7, &[-1, 1]).mul(&Poly::from_i64s(&f7, &[2, 1]));
        assert!(shared.resultant(&Poly::from_i64s(&f7, &[-1, 0, 1])).unwrap().is_zero());
        assert_eq!(a.resultant(&Poly::zero(&f7)), Err(PolyError::ZeroInput));
    }

    #[test]
    fn resultant_matches_sylvester() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [2u64, 3, 7, 101] {
            let ctx = make_prime_field(p).unwrap();
            for _ in 0..200 {
                let m = rng.gen_range(1..=6);
                let n = rng.gen_range(1..=6);
                let mut fc: Vec<i64> = (0..=m).map(|_| rng.gen_range(0..p as i64)).collect();
                let mut gc: Vec<i64> = (0..=n).map(|_| rng.gen_range(0..p as i64)).collect();
                fc[m] = rng.gen_range(1..p as i64);
                gc[n] = rng.gen_range(1..p as i64);
                let f = Poly::from_i64s(&ctx, &fc);
                let g = Poly::from_i64s(&ctx, &gc);
                assert_eq!(f.resultant(&g).unwrap(), sylvester_resultant(&f, &g));
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        let f5 = make_prime_field(5).unwrap();
        assert_eq!(Poly::from_i64s(&f5, &[1, 0, 1]).discriminant().unwrap(), f5.one());
        assert!(Poly::monomial(&f5, f5.one(), 2).discriminant().unwrap().is_zero());
        let f101 = make_prime_field(101).unwrap();
        for b in 0..10 {
            for c in 0..10 {
                let g = Poly::from_i64s(&f101, &[c, b, 1]);
                assert_eq!(g.discriminant().unwrap(), f101.from_i64(b * b - 4 * c));
            }
        }
    }

    #[test]
    fn disc_in_t_examples() {
        let f11 = make_prime_field(11).unwrap();
        let x2 = Poly::monomial(&f11, f11.one(), 2);
        assert_eq!(x2.disc_in_t().unwrap(), Poly::from_i64s(&f11, &[0, -4]));
        let x3 = Poly::monomial(&f11, f11.one(), 3);
        assert_eq!(x3.disc_in_t().unwrap(), Poly::from_i64s(&f11, &[0, 0, -27]));
        let f3 = make_prime_field(3).unwrap();
        assert_eq!(
            Poly::monomial(&f3, f3.one(), 3).disc_in_t(),
            Err(PolyError::FieldTooSmall { p: 3, needed: 3 })
        );
    }

    #[test]
    fn disc_in_t_matches_specializations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for p in [7u64, 11, 13, 101] {
            let ctx = make_prime_field(p).unwrap();
            for _ in 0..25 {
                let d = rng.gen_range(2..=5.min(p as usize - 1));
                let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p as i64)).collect();
                c.push(1);
                let f = Poly::from_i64s(&ctx, &c);
                let dt = f.disc_in_t().unwrap();
                assert!(dt.degree_or_zero() < d);
                for a in ctx.elements() {
                    assert_eq!(dt.eval(&a), f.add_constant(&a).discriminant().unwrap());
                }
            }
        }
    }

    #[test]
    fn discriminant_vanishes_iff_not_squarefree() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for i in 0..500 {
            let p = [3u64, 5, 7, 11][i % 4];
            let ctx = make_prime_field(p).unwrap();
            let d = rng.gen_range(2..=6);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p as i64)).collect();
            c.push(1);
            let g = Poly::from_i64s(&ctx, &c);
            assert_eq!(g.discriminant().unwrap().is_zero(), !g.is_squarefree().unwrap());
        }
    }
}
