//! Squarefree, distinct-degree and equal-degree factorization, Rabin's
//! irreducibility test and a trial-division oracle.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ops::{self, Coeffs};
use super::{Poly, PolyError};
use crate::class_functions::CycleType;
use crate::finite_field::{FieldCtx, FieldElement};

pub const DEFAULT_FACTOR_SEED: u64 = 0;

/// Complete factorization `unit · Π factor^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationResult {
    /// Monic irreducible factors with multiplicities, sorted by degree and
    /// then canonically.
    pub factors: Vec<(Poly, u32)>,
    pub unit: FieldElement,
}

impl FactorizationResult {
    /// Number of distinct irreducible factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn reconstruct(&self, ctx: &FieldCtx) -> Poly {
        let mut acc = Poly::constant(ctx, self.unit);
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u64));
        }
        acc
    }

    /// Degrees of the factors, repeated by multiplicity, descending.
    pub fn degree_multiset(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree_or_zero() as u32, *m as usize))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

pub(crate) fn random_element<R: Rng>(ctx: &FieldCtx, rng: &mut R) -> FieldElement {
    let coeffs: Vec<u64> = (0..ctx.degree()).map(|_| rng.gen_range(0..ctx.p())).collect();
    ctx.from_coeffs(&coeffs).expect("length matches")
}

/// `p`-th root of a polynomial whose exponents are all multiples of `p`.
fn pth_root_poly(ctx: &FieldCtx, a: &[FieldElement]) -> Coeffs {
    let p = ctx.p() as usize;
    a.iter().step_by(p).map(|c| ctx.pth_root(c)).collect()
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with their multiplicities.
pub(crate) fn squarefree_decomposition(ctx: &FieldCtx, f: &[FieldElement]) -> Vec<(Coeffs, u32)> {
    let mut out = Vec::new();
    sqf_rec(ctx, f, 1, &mut out);
    out
}

fn sqf_rec(ctx: &FieldCtx, f: &[FieldElement], scale: u32, out: &mut Vec<(Coeffs, u32)>) {
    if f.len() <= 1 {
        return;
    }
    let df = ops::derivative(ctx, f);
    let mut c = ops::gcd(ctx, f, &df);
    let mut w = ops::div_exact(ctx, f, &c);
    let mut i = 1;
    while w.len() > 1 {
        let y = ops::gcd(ctx, &w, &c);
        let z = ops::div_exact(ctx, &w, &y);
        if z.len() > 1 {
            out.push((z, i * scale));
        }
        i += 1;
        c = ops::div_exact(ctx, &c, &y);
        w = y;
    }
    if c.len() > 1 {
        let root = pth_root_poly(ctx, &c);
        sqf_rec(ctx, &root, scale * ctx.p() as u32, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// `(k, product of all irreducible factors of degree k)`.
pub(crate) fn distinct_degree_groups(ctx: &FieldCtx, g: &[FieldElement]) -> Vec<(usize, Coeffs)> {
    let mut out = Vec::new();
    let x = vec![ctx.zero(), ctx.one()];
    let mut rem = g.to_vec();
    let mut h = ops::rem(ctx, &x, &rem);
    let mut i = 0;
    while rem.len() - 1 >= 2 * (i + 1) {
        i += 1;
        h = ops::pow_q_mod(ctx, &h, &rem);
        let gi = ops::gcd(ctx, &ops::sub(ctx, &h, &x), &rem);
        if gi.len() > 1 {
            rem = ops::div_exact(ctx, &rem, &gi);
            h = ops::rem(ctx, &h, &rem);
            out.push((i, gi));
        }
    }
    if rem.len() > 1 {
        out.push((rem.len() - 1, rem));
    }
    out
}

/// Cycle type of a monic squarefree polynomial via distinct-degree
/// factorization only.
pub(crate) fn ddf_parts(ctx: &FieldCtx, g: &[FieldElement]) -> Vec<u32> {
    let mut parts = Vec::new();
    for (k, prod) in distinct_degree_groups(ctx, g) {
        let count = (prod.len() - 1) / k;
        parts.extend(std::iter::repeat_n(k as u32, count));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Splits a monic squarefree product of irreducibles of degree `k`.
pub(crate) fn equal_degree_split<R: Rng>(
    ctx: &FieldCtx,
    g: Coeffs,
    k: usize,
    rng: &mut R,
    out: &mut Vec<Coeffs>,
) {
    let n = g.len() - 1;
    if n == k {
        out.push(g);
        return;
    }
    let odd = ctx.p() != 2;
    let exponent = if odd {
        Some((ctx.order().pow(k as u32) - BigUint::one()) >> 1)
    } else {
        None
    };
    loop {
        let mut h: Coeffs = (0..n).map(|_| random_element(ctx, rng)).collect();
        ops::trim(&mut h);
        if h.len() < 2 {
            continue;
        }
        let d = ops::gcd(ctx, &h, &g);
        let candidate = if d.len() > 1 {
            d
        } else {
            let t = match &exponent {
                Some(e) => {
                    let t = ops::pow_mod_big(ctx, &h, e, &g);
                    ops::sub(ctx, &t, &[ctx.one()])
                }
                None => {
                    // absolute trace from F_{2^{lk}} to F_2
                    let mut cur = h.clone();
                    let mut acc = h.clone();
                    for _ in 1..ctx.degree() * k {
                        cur = ops::mul_mod(ctx, &cur, &cur, &g);
                        acc = ops::add(ctx, &acc, &cur);
                    }
                    acc
                }
            };
            ops::gcd(ctx, &t, &g)
        };
        if candidate.len() > 1 && candidate.len() < g.len() {
            let other = ops::div_exact(ctx, &g, &candidate);
            equal_degree_split(ctx, candidate, k, rng, out);
            equal_degree_split(ctx, other, k, rng, out);
            return;
        }
    }
}

/// Roots of a monic squarefree polynomial that splits into linear factors.
pub(crate) fn roots_of_split<R: Rng>(ctx: &FieldCtx, g: &[FieldElement], rng: &mut R) -> Vec<FieldElement> {
    let mut linears = Vec::new();
    equal_degree_split(ctx, g.to_vec(), 1, rng, &mut linears);
    let mut roots: Vec<FieldElement> = linears.iter().map(|l| ctx.neg(&l[0])).collect();
    roots.sort_by(|a, b| a.canonical_cmp(b));
    roots
}

/// Roots of `g` that lie in its field, each once, in canonical order.
pub(crate) fn roots_in_field<R: Rng>(ctx: &FieldCtx, g: &[FieldElement], rng: &mut R) -> Vec<FieldElement> {
    let m = ops::monic(ctx, g);
    if m.len() < 2 {
        return Vec::new();
    }
    let x = vec![ctx.zero(), ctx.one()];
    let xq = ops::pow_q_mod(ctx, &ops::rem(ctx, &x, &m), &m);
    let split = ops::gcd(ctx, &ops::sub(ctx, &xq, &x), &m);
    if split.len() < 2 {
        return Vec::new();
    }
    roots_of_split(ctx, &split, rng)
}

fn sort_factors(factors: &mut [(Poly, u32)]) {
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
}

impl Poly {
    fn require_degree(&self, min: usize) -> Result<usize, PolyError> {
        match self.degree() {
            Some(d) if d >= min => Ok(d),
            _ => Err(PolyError::DegreeTooSmall(min)),
        }
    }

    /// True iff no irreducible factor is repeated.
    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        self.require_degree(1)?;
        let g = self.gcd(&self.derivative())?;
        Ok(g.is_one())
    }

    /// Rabin's test: `x^{q^n} ≡ x (mod g)` and
    /// `gcd(x^{q^{n/r}} - x, g) = 1` for every prime `r | n`.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(0) | None => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let ctx = &self.ctx;
        let g = ops::monic(ctx, &self.coeffs);
        let x = vec![ctx.zero(), ctx.one()];
        let mut powers: Vec<Coeffs> = Vec::with_capacity(n + 1);
        powers.push(x.clone());
        for i in 1..=n {
            let next = ops::pow_q_mod(ctx, &powers[i - 1], &g);
            powers.push(next);
        }
        if powers[n] != x {
            return false;
        }
        prime_divisors(n).into_iter().all(|r| {
            let t = ops::sub(ctx, &powers[n / r], &x);
            ops::is_one(&ops::gcd(ctx, &t, &g))
        })
    }

    /// Cycle type of a squarefree polynomial (degrees of its irreducible
    /// factors) computed by distinct-degree factorization.
    pub fn degree_pattern(&self) -> Result<CycleType, PolyError> {
        self.require_degree(1)?;
        if !self.is_squarefree()? {
            return Err(PolyError::NotSquarefree);
        }
        let (_, m) = self.monic();
        Ok(CycleType::from_parts(ddf_parts(&self.ctx, &m.coeffs)))
    }

    /// Full factorization. The factor set does not depend on `seed`.
    pub fn factor(&self, seed: u64) -> Result<FactorizationResult, PolyError> {
        self.require_degree(1)?;
        let ctx = &self.ctx;
        let (unit, m) = self.monic();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors = Vec::new();
        for (part, mult) in squarefree_decomposition(ctx, &m.coeffs) {
            for (k, group) in distinct_degree_groups(ctx, &part) {
                let mut pieces = Vec::new();
                equal_degree_split(ctx, group, k, &mut rng, &mut pieces);
                factors.extend(pieces.into_iter().map(|c| (Poly::new(ctx, c), mult)));
            }
        }
        sort_factors(&mut factors);
        Ok(FactorizationResult { factors, unit })
    }

    /// Squarefree decomposition of the monic associate: pairwise coprime
    /// squarefree parts with multiplicities.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, u32)>, PolyError> {
        self.require_degree(1)?;
        let (_, m) = self.monic();
        Ok(squarefree_decomposition(&self.ctx, &m.coeffs)
            .into_iter()
            .map(|(c, e)| (Poly::new(&self.ctx, c), e))
            .collect())
    }

    /// Distinct roots in the coefficient field, in canonical order.
    pub fn roots(&self, seed: u64) -> Vec<FieldElement> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        roots_in_field(&self.ctx, &self.coeffs, &mut rng)
    }

    /// Trial division by every monic polynomial of degree `<= deg/2`.
    /// Guarded to `q^{ceil(deg/2)} <= 10^6` candidates.
    pub fn brute_force_factor(&self) -> Result<FactorizationResult, PolyError> {
        let n = self.require_degree(1)?;
        let ctx = &self.ctx;
        let half = n / 2;
        let q = ctx.order_u64().unwrap_or(u64::MAX);
        let limit = 1_000_000u64;
        let space = (0..n.div_ceil(2)).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&v| v <= limit));
        if space.is_none() {
            return Err(PolyError::TooLarge(format!("q={} degree={}", ctx.order(), n)));
        }
        let (unit, m) = self.monic();
        let mut rest = m.coeffs;
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        for k in 1..=half {
            if rest.len() - 1 < 2 * k {
                break;
            }
            let count = q.pow(k as u32);
            for idx in 0..count {
                let mut cand = Vec::with_capacity(k + 1);
                let mut t = idx;
                for _ in 0..k {
                    cand.push(ctx.from_index(t % q));
                    t /= q;
                }
                cand.push(ctx.one());
                let mut mult = 0;
                loop {
                    let (quo, r) = ops::divrem(ctx, &rest, &cand);
                    if !r.is_empty() {
                        break;
                    }
                    rest = quo;
                    mult += 1;
                }
                if mult > 0 {
                    factors.push((Poly::new(ctx, cand), mult));
                }
                if rest.len() - 1 < 2 * k {
                    break;
                }
            }
        }
        if rest.len() > 1 {
            let leftover = Poly::new(ctx, rest);
            match factors.iter_mut().find(|(f, _)| *f == leftover) {
                Some(entry) => entry.1 += 1,
                None => factors.push((leftover, 1)),
            }
        }
        sort_factors(&mut factors);
        Ok(FactorizationResult { factors, unit })
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::{make_extension, make_prime_field};
    use rand::Rng;

    fn all_monic(ctx: &FieldCtx, d: usize) -> Vec<Poly> {
        let q = ctx.order_u64().unwrap();
        (0..q.pow(d as u32))
            .map(|mut idx| {
                let mut c = Vec::new();
                for _ in 0..d {
                    c.push(ctx.from_index(idx % q));
                    idx /= q;
                }
                c.push(ctx.one());
                Poly::new(ctx, c)
            })
            .collect()
    }

    fn random_poly(ctx: &FieldCtx, d: usize, rng: &mut impl Rng) -> Poly {
        let mut c: Vec<_> = (0..d).map(|_| random_element(ctx, rng)).collect();
        c.push(ctx.one());
        Poly::new(ctx, c)
    }

    #[test]
    fn squarefree_examples() {
        let f5 = make_prime_field(5).unwrap();
        assert!(!Poly::monomial(&f5, f5.one(), 2).is_squarefree().unwrap());
        assert!(!Poly::monomial(&f5, f5.one(), 3).is_squarefree().unwrap());
        assert!(Poly::from_i64s(&f5, &[1, 0, 1]).is_squarefree().unwrap());
        assert_eq!(Poly::one(&f5).is_squarefree(), Err(PolyError::DegreeTooSmall(1)));
        // x^5 + 1 = (x+1)^5 has vanishing derivative
        assert!(!Poly::from_i64s(&f5, &[1, 0, 0, 0, 0, 1]).is_squarefree().unwrap());
    }

    #[test]
    fn irreducible_examples() {
        let f3 = make_prime_field(3).unwrap();
        let f5 = make_prime_field(5).unwrap();
        assert!(Poly::from_i64s(&f3, &[1, 0, 1]).is_irreducible());
        assert!(!Poly::from_i64s(&f5, &[1, 0, 1]).is_irreducible());
        assert!(Poly::from_i64s(&f5, &[3, 1]).is_irreducible());
        let f2 = make_prime_field(2).unwrap();
        assert!(Poly::from_i64s(&f2, &[1, 1, 1]).is_irreducible());
    }

    #[test]
    fn degree_pattern_examples() {
        let f7 = make_prime_field(7).unwrap();
        let split = Poly::from_i64s(&f7, &[0, 1])
            .mul(&Poly::from_i64s(&f7, &[-1, 1]))
            .mul(&Poly::from_i64s(&f7, &[-2, 1]));
        assert_eq!(split.degree_pattern().unwrap().parts(), &[1, 1, 1]);
        let cube_plus_one = Poly::from_i64s(&f7, &[1, 0, 0, 1]);
        // the cube roots of -1 mod 7 are 3, 5 and 6
        let oracle = cube_plus_one.brute_force_factor().unwrap().degree_multiset();
        assert_eq!(oracle, vec![1, 1, 1]);
        assert_eq!(cube_plus_one.degree_pattern().unwrap().parts(), &oracle[..]);
        let f5 = make_prime_field(5).unwrap();
        let c = Poly::from_i64s(&f5, &[1, 0, 0, 1]);
        assert_eq!(c.degree_pattern().unwrap().parts(), &[2, 1]);
        assert_eq!(
            Poly::monomial(&f7, f7.one(), 2).degree_pattern(),
            Err(PolyError::NotSquarefree)
        );
    }

    #[test]
    fn factor_examples() {
        let f5 = make_prime_field(5).unwrap();
        let r = Poly::from_i64s(&f5, &[1, 0, 1]).factor(0).unwrap();
        assert_eq!(
            r.factors,
            vec![(Poly::from_i64s(&f5, &[2, 1]), 1), (Poly::from_i64s(&f5, &[3, 1]), 1)]
        );
        let f7 = make_prime_field(7).unwrap();
        let r = Poly::from_i64s(&f7, &[0, 0, -2, 0, 1]).factor(3).unwrap();
        assert_eq!(
            r.factors,
            vec![
                (Poly::from_i64s(&f7, &[0, 1]), 2),
                (Poly::from_i64s(&f7, &[3, 1]), 1),
                (Poly::from_i64s(&f7, &[4, 1]), 1),
            ]
        );
        assert_eq!(r.omega(), 3);
    }

    #[test]
    fn factor_roundtrip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fields = [
            make_prime_field(2).unwrap(),
            make_prime_field(3).unwrap(),
            make_prime_field(101).unwrap(),
            make_extension(&make_prime_field(2).unwrap(), 3, 0).unwrap(),
            make_extension(&make_prime_field(5).unwrap(), 2, 0).unwrap(),
        ];
        for i in 0..1000 {
            let ctx = &fields[i % fields.len()];
            let d = rng.gen_range(1..=8);
            let mut g = random_poly(ctx, d, &mut rng);
            if i % 3 == 0 {
                g = g.mul(&random_poly(ctx, rng.gen_range(1..=3), &mut rng).pow(2));
            }
            let scale = random_element(ctx, &mut rng);
            if !scale.is_zero() {
                g = g.scale(&scale);
            }
            let r = g.factor(i as u64).unwrap();
            assert_eq!(r.reconstruct(ctx), g);
            assert!(r.factors.iter().all(|(f, _)| f.is_irreducible() && f.is_monic()));
            // seed independence
            assert_eq!(g.factor(i as u64 + 999).unwrap(), r);
            assert_eq!(g.is_irreducible(), r.is_irreducible());
            assert_eq!(g.is_squarefree().unwrap(), r.is_squarefree());
            if r.is_squarefree() {
                assert_eq!(g.degree_pattern().unwrap().parts(), &r.degree_multiset()[..]);
            }
        }
    }

    #[test]
    fn factor_matches_trial_division_exhaustively() {
        for p in [2, 3, 5] {
            let ctx = make_prime_field(p).unwrap();
            for d in 1..=4 {
                for g in all_monic(&ctx, d) {
                    assert_eq!(g.factor(0).unwrap(), g.brute_force_factor().unwrap(), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn brute_force_guard() {
        let f = make_prime_field(1009).unwrap();
        let g = Poly::monomial(&f, f.one(), 6).add_constant(&f.one());
        assert!(matches!(g.brute_force_factor(), Err(PolyError::TooLarge(_))));
    }

    #[test]
    fn gauss_count_small() {
        fn moebius(n: usize) -> i64 {
            let ps = prime_divisors(n);
            let squarefree = ps.iter().product::<usize>() == n;
            if !squarefree {
                0
            } else if ps.len() % 2 == 0 {
                1
            } else {
                -1
            }
        }
        for p in [2u64, 3, 5, 7] {
            let ctx = make_prime_field(p).unwrap();
            for d in 1..=4usize {
                let count = all_monic(&ctx, d).iter().filter(|g| g.is_irreducible()).count() as i64;
                let formula: i64 = (1..=d)
                    .filter(|e| d % e == 0)
                    .map(|e| moebius(d / e) * (p as i64).pow(e as u32))
                    .sum::<i64>()
                    / d as i64;
                assert_eq!(count, formula, "p={p} d={d}");
            }
        }
    }

    #[test]
    fn roots_in_extension() {
        let f5 = make_prime_field(5).unwrap();
        let f25 = make_extension(&f5, 2, 0).unwrap();
        // x^2 - 2 is irreducible over F_5 but splits over F_25
        let g = Poly::from_i64s(&f25, &[-2, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let roots = roots_in_field(&f25, g.coeffs(), &mut rng);
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(g.eval(r).is_zero());
        }
        let h = Poly::from_i64s(&f5, &[-2, 0, 1]);
        assert!(roots_in_field(&f5, h.coeffs(), &mut rng).is_empty());
    }
}
