//! The golden battery: every worked example and asymptotic law checked at
//! fixed primes with calibrated tolerances.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use shortint::class_functions::partitions_of;
use shortint::finite_field::is_prime_u64;
use shortint::interval_lab::{gauss_census, large_q_demo, morse_density_scan, IntervalLab};
use shortint::morse_galois::{bad_set, classify_mu_cancellation, stickelberger_mu, CancellationKind};
use shortint::{make_prime_field, BuiltinKind, ExactClassFunction, FieldCtx, Poly, Rational};

use crate::report::{self, strip_timings};
use crate::tolerances::Tolerances;

/// `(p ≡ 2 mod 3 and 3 mod 4, p ≡ 1 mod 3 and 1 mod 4, small prime)`.
pub const DEFAULT_PRIMES: [u64; 3] = [10007, 10009, 1009];
pub const QUICK_PRIMES: [u64; 3] = [1019, 1009, 101];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub workers: usize,
    pub quick: bool,
    pub tolerances: Tolerances,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0, workers: 0, quick: false, tolerances: Tolerances::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub observed: String,
    pub predicted: String,
    pub tolerance: String,
    pub pass: bool,
    pub elapsed_ms: f64,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "name": self.name,
            "observed": self.observed,
            "predicted": self.predicted,
            "tolerance": self.tolerance,
            "pass": self.pass,
            "elapsed_ms": self.elapsed_ms,
        })
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<28} observed: {} | predicted: {} | tolerance: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.observed,
            self.predicted,
            self.tolerance
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub primes: [u64; 3],
    pub checks: Vec<Check>,
    /// Experiment reports behind the checks, in execution order.
    pub experiments: Vec<Value>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        json!({
            "primes": self.primes,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "experiments": self.experiments,
            "passed": self.checks.len() - failed,
            "failed": failed,
        })
    }
}

type Outcome = Result<(bool, String, String, String), String>;

struct Runner<'a> {
    opts: &'a SuiteOptions,
    primes: [u64; 3],
    labs: BTreeMap<(u64, String), IntervalLab>,
    experiments: Vec<Value>,
    checks: Vec<Check>,
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn phi(kind: BuiltinKind, d: usize) -> Result<ExactClassFunction, String> {
    ExactClassFunction::builtin(kind, d).map_err(err)
}

fn f64_of(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `|observed - predicted| / √p`.
fn scaled(observed: &Rational, predicted: &Rational, p: u64) -> f64 {
    f64_of(&(observed - predicted).abs()) / (p as f64).sqrt()
}

fn x_pow_plus_x(ctx: &FieldCtx, d: usize) -> Poly {
    let mut c = vec![0i64; d + 1];
    c[1] = 1;
    c[d] = 1;
    Poly::from_i64s(ctx, &c)
}

fn fmt3(x: f64) -> String {
    format!("{x:.3}")
}

impl<'a> Runner<'a> {
    fn field(&self, p: u64) -> Result<FieldCtx, String> {
        make_prime_field(p).map_err(err)
    }

    fn lab(&mut self, f: &Poly) -> Result<&IntervalLab, String> {
        let key = (f.ctx().p(), f.to_string());
        if !self.labs.contains_key(&key) {
            let lab = IntervalLab::new(f, self.opts.workers).map_err(err)?;
            self.labs.insert(key.clone(), lab);
        }
        Ok(&self.labs[&key])
    }

    fn sum(&mut self, f: &Poly, shifts: &[u64], phis: &[ExactClassFunction]) -> Result<Rational, String> {
        let ctx = f.ctx().clone();
        let h: Vec<_> = shifts.iter().map(|&s| ctx.from_u64(s)).collect();
        let rep = self.lab(f)?.correlation_sum(&h, phis, None).map_err(err)?;
        self.experiments.push(report::experiment(&rep));
        Ok(rep.raw_sum)
    }

    fn run(&mut self, id: u32, name: &'static str, body: impl FnOnce(&mut Self) -> Outcome) {
        let start = Instant::now();
        let (pass, observed, predicted, tolerance) = match body(self) {
            Ok(t) => t,
            Err(e) => (false, format!("error: {e}"), String::new(), String::new()),
        };
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        self.checks.push(Check { id, name, observed, predicted, tolerance, pass, elapsed_ms });
    }

    fn gauss(&mut self) -> Outcome {
        let mut mismatches = Vec::new();
        let mut total = 0;
        for p in [2u64, 3, 5, 7] {
            for d in 2..=4u32 {
                let (e, g) = gauss_census(p, d).map_err(err)?;
                total += 1;
                if e != g {
                    mismatches.push(format!("p={p} d={d}: {e} vs {g}"));
                }
            }
        }
        Ok((
            mismatches.is_empty(),
            format!("{}/{total} equal {}", total - mismatches.len(), mismatches.join(" ")),
            "(1/d) sum mu(d/e) p^e".into(),
            "exact".into(),
        ))
    }

    fn cube_densities(&mut self) -> Outcome {
        let [p21, p11, _] = self.primes;
        let mut obs = Vec::new();
        let mut pred = Vec::new();
        let mut ok = true;
        for p in [7, 13, p11, 5, 11, p21] {
            let ctx = self.field(p)?;
            let f = Poly::from_i64s(&ctx, &[0, 0, 0, 1]);
            let got = self.sum(&f, &[0], &[phi(BuiltinKind::Prime, 3)?])?;
            let want = if p % 3 == 1 { Rational::from_integer(2 * (p as i128 - 1) / 3) } else { Rational::from_integer(0) };
            ok &= got == want;
            obs.push(format!("p={p}:{got}"));
            pred.push(format!("{want}"));
        }
        Ok((ok, obs.join(" "), format!("2(p-1)/3 or 0: {}", pred.join(" ")), "exact".into()))
    }

    fn cube_independence(&mut self) -> Outcome {
        let p = self.primes[1];
        let c = self.opts.tolerances.cube_pair;
        let ctx = self.field(p)?;
        let f = Poly::from_i64s(&ctx, &[0, 0, 0, 1]);
        let want = Rational::new(4 * p as i128, 9);
        let mut worst: f64 = 0.0;
        for h in [1, 2] {
            let got = self.sum(&f, &[0, h], &[phi(BuiltinKind::Prime, 3)?, phi(BuiltinKind::Prime, 3)?])?;
            worst = worst.max(scaled(&got, &want, p));
        }
        Ok((worst <= c, format!("p={p} max |err|/sqrt(p) = {}", fmt3(worst)), "4p/9".into(), format!("C = {c}")))
    }

    fn morse_polys(&mut self) -> Result<Vec<Poly>, String> {
        let ctx = self.field(self.primes[0])?;
        let mut out = Vec::new();
        for d in 3..=5 {
            let f = x_pow_plus_x(&ctx, d);
            if !self.lab(&f)?.generic() {
                return Err(format!("{f} is not Morse over F_{}", ctx.p()));
            }
            out.push(f);
        }
        Ok(out)
    }

    fn morse_primes(&mut self) -> Outcome {
        let p = self.primes[0];
        let tol = self.opts.tolerances.clone();
        let mut ok = true;
        let mut obs = Vec::new();
        let mut tols = Vec::new();
        let pr = Rational::from_integer(p as i128);
        for f in self.morse_polys()? {
            let d = f.degree_or_zero();
            let prime = phi(BuiltinKind::Prime, d)?;
            let single = self.sum(&f, &[0], std::slice::from_ref(&prime))?;
            let pair = self.sum(&f, &[0, 1], &[prime.clone(), prime])?;
            let e1 = scaled(&single, &(pr / d as i128), p);
            let e2 = scaled(&pair, &(pr / (d * d) as i128), p);
            let (c1, c2) = (tol.prime_single.get(d).ok_or("no tolerance")?, tol.prime_pair.get(d).ok_or("no tolerance")?);
            ok &= e1 <= c1 && e2 <= c2;
            obs.push(format!("d={d}: {} / {}", fmt3(e1), fmt3(e2)));
            tols.push(format!("{c1}/{c2}"));
        }
        Ok((ok, format!("p={p} |err|/sqrt(p) single/pair {}", obs.join(", ")), "p/d, p/d^2".into(), format!("C = {}", tols.join(", "))))
    }

    fn moebius_cancellation(&mut self) -> Outcome {
        let p = self.primes[0];
        let tol = self.opts.tolerances.clone();
        let zero = Rational::from_integer(0);
        let mut ok = true;
        let mut obs = Vec::new();
        let mut tols = Vec::new();
        for f in self.morse_polys()? {
            let d = f.degree_or_zero();
            let mu = phi(BuiltinKind::Moebius, d)?;
            let single = self.sum(&f, &[0], std::slice::from_ref(&mu))?;
            let chowla = self.sum(&f, &[0, 1], &[mu.clone(), mu])?;
            let verdict = classify_mu_cancellation(&f).map_err(err)?;
            let (e1, e2) = (scaled(&single, &zero, p), scaled(&chowla, &zero, p));
            let (c1, c2) = (tol.mu_single.get(d).ok_or("no tolerance")?, tol.chowla.get(d).ok_or("no tolerance")?);
            ok &= e1 <= c1 && e2 <= c2 && verdict.kind == CancellationKind::SquareRootCancellation;
            obs.push(format!("d={d}: {} / {} {:?}", fmt3(e1), fmt3(e2), verdict.kind));
            tols.push(format!("{c1}/{c2}"));
        }
        Ok((ok, format!("p={p} |sum|/sqrt(p) mu/chowla {}", obs.join(", ")), "0".into(), format!("C = {}", tols.join(", "))))
    }

    fn moebius_exact(&mut self) -> Outcome {
        let [p21, p11, _] = self.primes;
        let mut ok = true;
        let mut obs = Vec::new();
        // enumeration oracle
        for p in [7u64, 5] {
            let ctx = self.field(p)?;
            let f = Poly::from_i64s(&ctx, &[0, 0, 0, 1]);
            let mu = phi(BuiltinKind::Moebius, 3)?;
            let direct: Rational = ctx
                .elements()
                .map(|a| mu.evaluate(&f.add_constant(&a)).map_err(err))
                .sum::<Result<Rational, String>>()?;
            let want = if p % 3 == 1 { -(p as i128 - 1) } else { p as i128 - 1 };
            ok &= direct == Rational::from_integer(want);
            obs.push(format!("p={p}:{direct}"));
        }
        for p in [7, 5, p11, p21] {
            let ctx = self.field(p)?;
            let f = Poly::from_i64s(&ctx, &[0, 0, 0, 1]);
            let got = self.sum(&f, &[0], &[phi(BuiltinKind::Moebius, 3)?])?;
            let sign: i128 = if p % 3 == 1 { -1 } else { 1 };
            let verdict = classify_mu_cancellation(&f).map_err(err)?;
            ok &= got == Rational::from_integer(sign * (p as i128 - 1));
            ok &= verdict.kind == CancellationKind::NoCancellation && verdict.sign.map(i128::from) == Some(sign);
            obs.push(format!("p={p}:{got} ({:?} {:+})", verdict.kind, verdict.sign.unwrap_or(0)));
        }
        Ok((ok, obs.join(" "), "-(p-1) if p = 1 mod 3, p-1 if p = 2 mod 3".into(), "exact".into()))
    }

    fn quartic(&mut self) -> Outcome {
        let [p3, p1, _] = self.primes;
        let tol = self.opts.tolerances.quartic.clone();
        let prime = phi(BuiltinKind::Prime, 4)?;
        let pp = [prime.clone(), prime.clone()];

        let ctx = self.field(p1)?;
        let f = Poly::from_i64s(&ctx, &[0, 0, -2, 0, 1]);
        let b = bad_set(&f).map_err(err)?;
        let two_good = !b.contains(&ctx.from_u64(2));
        let pr = Rational::from_integer(p1 as i128);
        let e01 = scaled(&self.sum(&f, &[0, 1], &pp)?, &(pr / 8), p1);
        let e02 = scaled(&self.sum(&f, &[0, 2], &pp)?, &(pr / 16), p1);

        let ctx = self.field(p3)?;
        let f = Poly::from_i64s(&ctx, &[0, 0, -2, 0, 1]);
        let pr = Rational::from_integer(p3 as i128);
        let z01 = scaled(&self.sum(&f, &[0, 1], &pp)?, &Rational::from_integer(0), p3);
        let s = scaled(&self.sum(&f, &[0], std::slice::from_ref(&prime))?, &(pr / 4), p3);

        let ok = two_good && e01 <= tol.pair && e02 <= tol.pair && z01 <= tol.pair && s <= tol.single;
        Ok((
            ok,
            format!(
                "p={p1}: {} {} (2 in B: {}); p={p3}: {} {}",
                fmt3(e01),
                fmt3(e02),
                !two_good,
                fmt3(z01),
                fmt3(s)
            ),
            "p/8, p/16; 0, p/4".into(),
            format!("C = {} (pairs), {} (single)", tol.pair, tol.single),
        ))
    }

    fn bad_sets(&mut self) -> Outcome {
        let mut ok = true;
        let mut obs = Vec::new();
        for p in [5, 7, 11, 13, self.primes[0]] {
            let ctx = self.field(p)?;
            let b4 = bad_set(&Poly::from_i64s(&ctx, &[0, 0, -2, 0, 1])).map_err(err)?;
            let b3 = bad_set(&Poly::from_i64s(&ctx, &[0, 0, 0, 1])).map_err(err)?;
            ok &= b4 == vec![ctx.one(), ctx.from_u64(p - 1)] && b3.is_empty();
            let show: Vec<String> = b4.iter().map(|x| x.to_string()).collect();
            obs.push(format!("p={p}:{{{}}}/{}", show.join(","), b3.len()));
        }
        Ok((ok, obs.join(" "), "{1, p-1} and empty".into(), "exact".into()))
    }

    fn divisors(&mut self) -> Outcome {
        let p = self.primes[0];
        let tol = self.opts.tolerances.divisor.clone();
        let ctx = self.field(p)?;
        let f = x_pow_plus_x(&ctx, 4);
        if !self.lab(&f)?.generic() {
            return Err(format!("{f} is not Morse"));
        }
        let d2 = phi(BuiltinKind::Divisor(2), 4)?;
        let prime = phi(BuiltinKind::Prime, 4)?;
        let pr = Rational::from_integer(p as i128);
        let e1 = scaled(&self.sum(&f, &[0], std::slice::from_ref(&d2))?, &(pr * 5), p);
        let e2 = scaled(&self.sum(&f, &[0, 1], &[prime, d2.clone()])?, &(pr * Rational::new(5, 4)), p);
        let e3 = scaled(&self.sum(&f, &[0, 1], &[d2.clone(), d2])?, &(pr * 25), p);
        Ok((
            e1 <= tol.single && e2 <= tol.prime_pair && e3 <= tol.pair,
            format!("p={p} |err|/sqrt(p) {} {} {}", fmt3(e1), fmt3(e2), fmt3(e3)),
            "5p, 5p/4, 25p".into(),
            format!("C = {}, {}, {}", tol.single, tol.prime_pair, tol.pair),
        ))
    }

    fn mu_sgn(&mut self) -> Outcome {
        let mut n = 0;
        let mut ok = true;
        for d in 1..=8 {
            for lam in partitions_of(d).map_err(err)? {
                let parity = if d % 2 == 0 { 1 } else { -1 };
                ok &= lam.mu_value() == parity * lam.sgn_value();
                n += 1;
            }
        }
        Ok((ok, format!("{n} partitions"), "(-1)^parts = (-1)^d sgn".into(), "exact".into()))
    }

    fn oracles(&mut self) -> Outcome {
        let mut compared = 0;
        let mut ok = true;
        for p in [2u64, 3, 5] {
            let ctx = self.field(p)?;
            for d in 1..=4u32 {
                for idx in 0..p.pow(d) {
                    let mut c = Vec::new();
                    let mut rest = idx;
                    for _ in 0..d {
                        c.push(ctx.from_u64(rest % p));
                        rest /= p;
                    }
                    c.push(ctx.one());
                    let g = Poly::new(&ctx, c);
                    ok &= g.factor(self.opts.seed).map_err(err)? == g.brute_force_factor().map_err(err)?;
                    compared += 1;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        let primes: Vec<u64> = (3..100).filter(|&n| is_prime_u64(n)).collect();
        let mut sticks = 0;
        while sticks < 1000 {
            let p = primes[rng.gen_range(0..primes.len())];
            let ctx = self.field(p)?;
            let d = rng.gen_range(1..=6);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p as i64)).collect();
            c.push(1);
            let g = Poly::from_i64s(&ctx, &c);
            if !g.is_squarefree().map_err(err)? {
                continue;
            }
            let omega = g.factor(self.opts.seed).map_err(err)?.omega();
            ok &= stickelberger_mu(&g).map_err(err)? == if omega % 2 == 0 { 1 } else { -1 };
            sticks += 1;
        }
        Ok((ok, format!("{compared} factorizations, {sticks} discriminant signs"), "agreement".into(), "exact".into()))
    }

    fn squarefree(&mut self) -> Outcome {
        let p = self.primes[2];
        let ctx = self.field(p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed.wrapping_add(1));
        let mut worst = (0, 0);
        let mut ok = true;
        for _ in 0..100 {
            let d = rng.gen_range(2..=5);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p as i64)).collect();
            c.push(1);
            let f = Poly::from_i64s(&ctx, &c);
            let h1 = rng.gen_range(0..p);
            let h2 = (h1 + rng.gen_range(1..p)) % p;
            let lab = IntervalLab::new(&f, self.opts.workers).map_err(err)?;
            let census = lab.squarefree_census(&[ctx.from_u64(h1), ctx.from_u64(h2)]).map_err(err)?;
            ok &= census.complement <= census.bound;
            if census.complement > worst.0 || (census.complement == worst.0 && census.bound < worst.1) {
                worst = (census.complement, census.bound);
            }
        }
        Ok((ok, format!("p={p} 100 specs, largest complement {} (bound {})", worst.0, worst.1), "<= k(d-1)".into(), "exact bound".into()))
    }

    fn chebotarev(&mut self) -> Outcome {
        let p = self.primes[0];
        let c = self.opts.tolerances.chebotarev.d4;
        let ctx = self.field(p)?;
        let f = x_pow_plus_x(&ctx, 4);
        let rep = self.lab(&f)?.chebotarev(&[ctx.zero()]).map_err(err)?;
        self.experiments.push(report::chebotarev(&rep));
        let rows: Vec<String> = rep
            .rows
            .iter()
            .map(|r| format!("{}:{:.4}", report::joint_key(&r.cycle_types), r.frequency))
            .collect();
        Ok((
            rep.rows.len() == 5 && rep.max_scaled_deviation <= c,
            format!("p={p} {} max |dev|*sqrt(p) = {}", rows.join(" "), fmt3(rep.max_scaled_deviation)),
            "1/z".into(),
            format!("C = {c}"),
        ))
    }

    fn morse_scan(&mut self) -> Outcome {
        let ctx13 = self.field(13)?;
        let cube = morse_density_scan(&Poly::from_i64s(&ctx13, &[0, 0, 0, 1]), self.opts.workers).map_err(err)?;
        let mut ok = cube.bad_s == vec![ctx13.zero()];
        let p = self.primes[2];
        let ctx = self.field(p)?;
        let factor = self.opts.tolerances.morse_scan.factor;
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed.wrapping_add(2));
        let mut obs = Vec::new();
        for _ in 0..3 {
            let d = rng.gen_range(3..=5usize);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p as i64)).collect();
            c.push(1);
            let f = Poly::from_i64s(&ctx, &c);
            let scan = morse_density_scan(&f, self.opts.workers).map_err(err)?;
            self.experiments.push(json!({"f": f.to_string(), "scan": report::morse_scan(&scan)}));
            ok &= scan.hypothesis_violated.is_none() && scan.count() as u64 <= factor * (d * d) as u64;
            obs.push(format!("d={d}:{}", scan.count()));
        }
        let bad13: Vec<String> = cube.bad_s.iter().map(|s| s.to_string()).collect();
        Ok((
            ok,
            format!("x^3/F_13 {{{}}}; p={p} {}", bad13.join(","), obs.join(" ")),
            "{0}; O(1)".into(),
            format!("count <= {factor}d^2"),
        ))
    }

    fn large_q(&mut self) -> Outcome {
        let c = self.opts.tolerances.large_q.single;
        let rows = large_q_demo(5, &[4, 5], c, self.opts.workers).map_err(err)?;
        let mut obs = Vec::new();
        for row in &rows {
            self.experiments.push(report::large_q_row(row));
            let singles: Vec<String> = row.single_sums.iter().map(|x| x.to_string()).collect();
            obs.push(format!(
                "q={}: singles {{{}}} product {} mult2 {}",
                row.q,
                singles.join(","),
                row.product_sum,
                row.multiplicity_two
            ));
        }
        Ok((rows.iter().all(|r| r.passed()), obs.join("; "), "|single| small, |product| >= q/2".into(), format!("C = {c}")))
    }
}

fn check_primes(primes: [u64; 3]) -> Result<(), String> {
    let [a, b, c] = primes;
    for p in primes {
        if !is_prime_u64(p) || p < 17 {
            return Err(format!("{p} is not a usable prime"));
        }
    }
    if a % 3 != 2 || a % 4 != 3 || b % 3 != 1 || b % 4 != 1 {
        return Err(format!("primes {a}, {b}, {c} have the wrong residues"));
    }
    Ok(())
}

/// Checks 1 to 15.
fn run_checks(opts: &SuiteOptions, primes: [u64; 3]) -> (Vec<Check>, Vec<Value>) {
    let mut r = Runner { opts, primes, labs: BTreeMap::new(), experiments: Vec::new(), checks: Vec::new() };
    r.run(1, "gauss-count", Runner::gauss);
    r.run(2, "cube-prime-density", Runner::cube_densities);
    r.run(3, "cube-independence", Runner::cube_independence);
    r.run(4, "morse-primes", Runner::morse_primes);
    r.run(5, "moebius-cancellation", Runner::moebius_cancellation);
    r.run(6, "moebius-no-cancellation", Runner::moebius_exact);
    r.run(7, "quartic-dependence", Runner::quartic);
    r.run(8, "bad-shift-sets", Runner::bad_sets);
    r.run(9, "divisor-constants", Runner::divisors);
    r.run(10, "mu-sign-identity", Runner::mu_sgn);
    r.run(11, "oracle-equivalence", Runner::oracles);
    r.run(12, "squarefree-census", Runner::squarefree);
    r.run(13, "chebotarev-frequencies", Runner::chebotarev);
    r.run(14, "morse-genericity", Runner::morse_scan);
    r.run(15, "large-q-demo", Runner::large_q);
    (r.checks, r.experiments)
}

fn fingerprint(checks: &[Check], experiments: &[Value]) -> String {
    let mut v = json!({
        "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        "experiments": experiments,
    });
    strip_timings(&mut v);
    v.to_string()
}

/// Runs every check. The last one reruns the others with a different
/// worker count and compares the timing-free JSON byte for byte.
pub fn run_suite(opts: &SuiteOptions) -> SuiteReport {
    let primes = if opts.quick { QUICK_PRIMES } else { DEFAULT_PRIMES };
    if let Err(e) = check_primes(primes) {
        let check = Check {
            id: 0,
            name: "prime-selection",
            observed: e,
            predicted: String::new(),
            tolerance: String::new(),
            pass: false,
            elapsed_ms: 0.0,
        };
        return SuiteReport { primes, checks: vec![check], experiments: Vec::new() };
    }
    let (mut checks, experiments) = run_checks(opts, primes);
    let start = Instant::now();
    let workers = match opts.workers {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        w => w,
    };
    let other = if workers == 1 { 3 } else { 1 };
    let rerun = SuiteOptions { workers: other, ..opts.clone() };
    let (checks2, experiments2) = run_checks(&rerun, primes);
    let same = fingerprint(&checks, &experiments) == fingerprint(&checks2, &experiments2);
    checks.push(Check {
        id: 16,
        name: "determinism",
        observed: if same { "identical" } else { "different" }.into(),
        predicted: "identical JSON without timings across worker counts".into(),
        tolerance: "byte-identical".into(),
        pass: same,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    });
    SuiteReport { primes, checks, experiments }
}
