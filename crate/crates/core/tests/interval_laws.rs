use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shortint::interval_lab::{IntervalLab, PredictionKind};
use shortint::morse_galois::{bad_set, bad_shift_check};
use shortint::{make_extension, make_prime_field, BuiltinKind, ExactClassFunction, FieldCtx, FloatClassFunction, Poly, Rational};

fn phi(kind: BuiltinKind, d: usize) -> ExactClassFunction {
    ExactClassFunction::builtin(kind, d).unwrap()
}

fn random_monic(ctx: &FieldCtx, d: usize, rng: &mut ChaCha8Rng) -> Poly {
    let p = ctx.p() as i64;
    let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
    c.push(1);
    Poly::from_i64s(ctx, &c)
}

#[test]
fn worker_count_does_not_change_results() {
    let ctx = make_prime_field(1009).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..4 {
        let d = rng.gen_range(3..=5);
        let f = random_monic(&ctx, d, &mut rng);
        let shifts = [ctx.zero(), ctx.from_u64(rng.gen_range(1..1009))];
        let exact = [phi(BuiltinKind::Moebius, d), phi(BuiltinKind::Divisor(2), d)];
        let float = [
            FloatClassFunction::builtin(BuiltinKind::Prime, d).unwrap(),
            FloatClassFunction::builtin(BuiltinKind::Divisor(3), d).unwrap(),
        ];
        let runs: Vec<_> = [1, 2, 8]
            .iter()
            .map(|&w| {
                let lab = IntervalLab::new(&f, w).unwrap();
                (lab.correlation_sum(&shifts, &exact, None).unwrap(), lab.correlation_sum(&shifts, &float, None).unwrap())
            })
            .collect();
        for r in &runs[1..] {
            assert!(r.0.same_result(&runs[0].0));
            assert!(r.1.same_result(&runs[0].1));
            assert_eq!(r.1.raw_sum.to_bits(), runs[0].1.raw_sum.to_bits());
        }
    }
}

#[test]
fn cycle_types_partition_the_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for ctx in [make_prime_field(101).unwrap(), make_extension(&make_prime_field(7).unwrap(), 2, 0).unwrap()] {
        for _ in 0..5 {
            let d = rng.gen_range(2..=6);
            let f = random_monic(&ctx, d, &mut rng);
            let lab = IntervalLab::new(&f, 2).unwrap();
            let rep = lab.class_sum(&phi(BuiltinKind::Prime, d)).unwrap();
            let total: u64 = rep.cycle_type_counts.values().sum::<u64>() + rep.nonsquarefree_count;
            assert_eq!(total, lab.q());
            for (types, _) in &rep.cycle_type_counts {
                assert_eq!(types[0].degree(), d);
            }
            let irreducible = rep
                .cycle_type_counts
                .iter()
                .filter(|(t, _)| t[0].parts() == [d as u32])
                .map(|(_, n)| *n)
                .sum::<u64>();
            assert_eq!(rep.raw_sum, Rational::from_integer(irreducible as i128));
        }
    }
}

#[test]
fn squarefree_complement_is_bounded() {
    let ctx = make_prime_field(211).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let d = rng.gen_range(2..=6);
        let f = random_monic(&ctx, d, &mut rng);
        let h = ctx.from_u64(rng.gen_range(1..211));
        let census = IntervalLab::new(&f, 1).unwrap().squarefree_census(&[ctx.zero(), h]).unwrap();
        assert!(census.complement <= census.bound, "{f} h={h}: {census:?}");
        assert_eq!(census.all_squarefree + census.complement, 211);
    }
}

/// Monic `f` of degree `d` with a double critical point: `f' = d (x - r)^2 h(x)`.
fn non_morse(ctx: &FieldCtx, d: usize, rng: &mut ChaCha8Rng) -> Poly {
    let p = ctx.p();
    let r = ctx.from_u64(rng.gen_range(0..p));
    let h = random_monic(ctx, d - 3, rng);
    let lin = Poly::new(ctx, vec![ctx.neg(&r), ctx.one()]);
    let fp = lin.mul(&lin).mul(&h).scale(&ctx.from_u64(d as u64));
    let mut c = vec![ctx.from_u64(rng.gen_range(0..p))];
    for (i, a) in fp.coeffs().iter().enumerate() {
        c.push(ctx.div(a, &ctx.from_u64(i as u64 + 1)).unwrap());
    }
    Poly::new(ctx, c)
}

#[test]
fn good_shifts_give_product_of_densities() {
    // constants are twice the worst case seen over several primes
    let tolerances = [(BuiltinKind::Prime, 0.64), (BuiltinKind::Moebius, 4.0), (BuiltinKind::Divisor(2), 56.0)];
    let p = 1009;
    let ctx = make_prime_field(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut tested = 0;
    while tested < 20 {
        let d = rng.gen_range(3..=5);
        let f = non_morse(&ctx, d, &mut rng);
        assert!(f.is_monic());
        let shifts = [ctx.zero(), ctx.from_u64(rng.gen_range(1..p))];
        if bad_shift_check(&f, &shifts).unwrap() {
            continue;
        }
        let lab = IntervalLab::new(&f, 0).unwrap();
        assert!(!lab.morse().is_morse);
        for (kind, c) in tolerances {
            let phi = phi(kind, d);
            let single = lab.class_sum(&phi).unwrap().predicted_constant;
            let pair = lab.correlation_sum(&shifts, &[phi.clone(), phi.clone()], Some(&[single, single])).unwrap();
            assert_eq!(pair.prediction, PredictionKind::Supplied);
            assert_eq!(pair.predicted_constant, single * single);
            assert!(pair.normalized_error <= c, "{f} {shifts:?} {kind:?}: {}", pair.normalized_error);
        }
        tested += 1;
    }
}

#[test]
fn titchmarsh_and_shifted_divisor_sums() {
    let p = 10007u64;
    let ctx = make_prime_field(p).unwrap();
    let f = Poly::from_i64s(&ctx, &[0, 1, 0, 1]);
    let lab = IntervalLab::new(&f, 0).unwrap();
    assert!(lab.generic());
    let sq = (p as f64).sqrt();
    // twice the largest |error|/sqrt(p) seen for x^3 + x at p = 1009, 1019, 10007
    let prime = phi(BuiltinKind::Prime, 3);
    let d2 = phi(BuiltinKind::Divisor(2), 3);
    let d3 = phi(BuiltinKind::Divisor(3), 3);
    let cases = [
        (vec![prime.clone(), d2.clone()], Rational::new(4, 3), 2.4),
        (vec![d2.clone(), d2.clone()], Rational::from_integer(16), 15.0),
        (vec![d2, d3], Rational::from_integer(40), 61.0),
    ];
    for (phis, constant, c) in cases {
        let rep = lab.correlation_sum(&[ctx.zero(), ctx.from_u64(1)], &phis, None).unwrap();
        assert_eq!(rep.predicted_constant, constant);
        let err = (rep.raw_sum - constant * Rational::from_integer(p as i128)).to_integer().unsigned_abs() as f64;
        assert!(err <= c * sq, "{} err {err}", rep.summary);
    }
}

#[test]
fn bad_set_is_symmetric_and_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [11u64, 13, 101, 1009] {
        let ctx = make_prime_field(p).unwrap();
        for _ in 0..6 {
            let d = rng.gen_range(2..=6usize);
            if d as u64 % p == 0 {
                continue;
            }
            let f = random_monic(&ctx, d, &mut rng);
            let b = bad_set(&f).unwrap();
            assert!(b.len() <= (d - 1) * (d - 1));
            for x in &b {
                assert!(!x.is_zero());
                assert!(b.contains(&ctx.neg(x)), "{f}: {x} without its negative");
            }
        }
    }
}
