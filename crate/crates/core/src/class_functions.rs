//! Cycle types, conjugacy-class weights in `S_d`, and arithmetic class
//! functions.
//!
//! A class function assigns a value to each partition of `d`. It is lifted
//! to monic degree-`d` polynomials through the cycle type (the multiset of
//! irreducible factor degrees) on squarefree inputs, and to a fixed bounded
//! default elsewhere.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::polynomial::{Poly, PolyError};
use crate::scalar::Scalar;

/// Largest degree for which partitions are enumerated.
pub const MAX_PARTITION_DEGREE: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassFnError {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("weights do not sum to 1 (sum = {0})")]
    WeightsNotNormalized(String),
    #[error("degree mismatch: class function has degree {expected}, input has degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a partition of {d}: {parts}")]
    BadPartition { d: usize, parts: String },
    #[error("default value {0} exceeds the table bound")]
    DefaultUnbounded(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A partition of `d`, parts in descending order.
///
/// The derived order compares part sequences lexicographically, so
/// descending order is the canonical reverse-lexicographic enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    /// Sorts the parts; panics on an empty list or a zero part.
    pub fn from_parts(mut parts: Vec<u32>) -> CycleType {
        assert!(!parts.is_empty() && parts.iter().all(|&x| x > 0));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|&x| x as usize).sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// `(-1)^{#parts}`.
    pub fn mu_value(&self) -> i8 {
        if self.parts.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Sign of a permutation of this cycle type, `(-1)^{Σ (part - 1)}`.
    pub fn sgn_value(&self) -> i8 {
        let transpositions: usize = self.parts.iter().map(|&x| x as usize - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Size of the centralizer `z_λ = Π i^{m_i} m_i!`; the class has
    /// `d!/z_λ` elements.
    pub fn centralizer_order(&self) -> u64 {
        let mut z = 1u64;
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i] as u64;
            let mut m = 0u64;
            while i < self.parts.len() && self.parts[i] as u64 == part {
                m += 1;
                z *= part * m;
                i += 1;
            }
        }
        z
    }

    pub fn class_size(&self) -> u64 {
        factorial(self.degree() as u64) / self.centralizer_order()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for CycleType {
    type Err = ClassFnError;

    /// Parses `"3,1,1"`; parts must already be in descending order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ClassFnError::BadPartition { d: 0, parts: s.to_string() };
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad());
        }
        Ok(CycleType { parts })
    }
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// All partitions of `d`, in descending (reverse-lexicographic) order.
pub fn partitions_of(d: usize) -> Result<Vec<CycleType>, ClassFnError> {
    if d == 0 || d > MAX_PARTITION_DEGREE {
        return Err(ClassFnError::OutOfRange(format!(
            "partition degree {d} outside 1..={MAX_PARTITION_DEGREE}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(d as u32, d as u32, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<CycleType>) {
    if remaining == 0 {
        out.push(CycleType { parts: current.clone() });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// The class functions with closed-form tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    /// Indicator of irreducibility: the full `d`-cycle.
    Prime,
    /// `(-1)^{#parts}`.
    Moebius,
    /// Ordered factorizations into `r` factors, `r^{#parts}` on squarefree
    /// inputs.
    Divisor(u32),
}

impl BuiltinKind {
    pub fn label(&self) -> String {
        match self {
            BuiltinKind::Prime => "prime".into(),
            BuiltinKind::Moebius => "mu".into(),
            BuiltinKind::Divisor(r) => format!("d{r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction<T> {
    d: usize,
    name: String,
    partitions: Vec<CycleType>,
    table: Vec<T>,
    default_nonsquarefree: T,
}

impl<T: Scalar> ClassFunction<T> {
    pub fn builtin(kind: BuiltinKind, d: usize) -> Result<Self, ClassFnError> {
        if d < 2 {
            return Err(ClassFnError::OutOfRange(format!("class function degree {d} < 2")));
        }
        if let BuiltinKind::Divisor(r) = kind {
            if r < 2 {
                return Err(ClassFnError::OutOfRange(format!("divisor order {r} < 2")));
            }
        }
        let partitions = partitions_of(d)?;
        let table = partitions
            .iter()
            .map(|lam| match kind {
                BuiltinKind::Prime => {
                    if lam.num_parts() == 1 {
                        T::one()
                    } else {
                        T::zero()
                    }
                }
                BuiltinKind::Moebius => T::from_ratio(lam.mu_value() as i64, 1),
                BuiltinKind::Divisor(r) => T::from_count((r as u64).pow(lam.num_parts() as u32)),
            })
            .collect();
        Ok(ClassFunction { d, name: kind.label(), partitions, table, default_nonsquarefree: T::zero() })
    }

    /// A class function from explicit values; partitions not listed get 0.
    pub fn from_table<I>(name: &str, d: usize, entries: I, default_nonsquarefree: T) -> Result<Self, ClassFnError>
    where
        I: IntoIterator<Item = (CycleType, T)>,
    {
        let partitions = partitions_of(d)?;
        let mut table = vec![T::zero(); partitions.len()];
        for (lam, v) in entries {
            let idx = position(&partitions, &lam)
                .ok_or_else(|| ClassFnError::BadPartition { d, parts: lam.to_string() })?;
            table[idx] = v;
        }
        let bound = table.iter().map(|v| v.abs()).fold(T::zero(), |a, b| if b > a { b } else { a }) + T::one();
        if default_nonsquarefree.abs() > bound {
            return Err(ClassFnError::DefaultUnbounded(default_nonsquarefree.to_string()));
        }
        Ok(ClassFunction { d, name: name.to_string(), partitions, table, default_nonsquarefree })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn partitions(&self) -> &[CycleType] {
        &self.partitions
    }

    pub fn default_nonsquarefree(&self) -> &T {
        &self.default_nonsquarefree
    }

    /// Value on a partition of `d`; `None` for anything else.
    pub fn value(&self, lam: &CycleType) -> Option<&T> {
        position(&self.partitions, lam).map(|i| &self.table[i])
    }

    /// Value by position in [`ClassFunction::partitions`].
    pub fn value_at(&self, idx: usize) -> &T {
        &self.table[idx]
    }

    /// Position of a partition in the canonical enumeration.
    pub fn index_of(&self, lam: &CycleType) -> Option<usize> {
        position(&self.partitions, lam)
    }

    /// `(1/d!) Σ_{σ ∈ S_d} φ(σ) = Σ_λ φ(λ)/z_λ`.
    pub fn mean_constant(&self) -> T {
        self.partitions
            .iter()
            .zip(&self.table)
            .fold(T::zero(), |acc, (lam, v)| acc + v.clone() / T::from_count(lam.centralizer_order()))
    }

    /// `Σ_λ w(λ)·φ(λ)` for a probability distribution `w` on cycle types.
    pub fn coset_constant(&self, weights: &BTreeMap<CycleType, T>) -> Result<T, ClassFnError> {
        let mut total = T::zero();
        let mut acc = T::zero();
        for (lam, w) in weights {
            let v = self
                .value(lam)
                .ok_or_else(|| ClassFnError::BadPartition { d: self.d, parts: lam.to_string() })?;
            total = total + w.clone();
            acc = acc + w.clone() * v.clone();
        }
        if !total.approx_eq(&T::one()) {
            return Err(ClassFnError::WeightsNotNormalized(total.to_string()));
        }
        Ok(acc)
    }

    /// `φ(g)`: the table value on the cycle type of a squarefree `g`, the
    /// default otherwise.
    pub fn evaluate(&self, g: &Poly) -> Result<T, ClassFnError> {
        let found = g.degree_or_zero();
        if g.degree() != Some(self.d) {
            return Err(ClassFnError::DegreeMismatch { expected: self.d, found });
        }
        if !g.is_squarefree()? {
            return Ok(self.default_nonsquarefree.clone());
        }
        let lam = g.degree_pattern()?;
        Ok(self.value(&lam).expect("pattern is a partition of d").clone())
    }
}

fn position(partitions: &[CycleType], lam: &CycleType) -> Option<usize> {
    // partitions are sorted descending
    partitions.binary_search_by(|probe| lam.cmp(probe)).ok()
}

/// Uniform `S_d` weights `1/z_λ`.
pub fn uniform_weights<T: Scalar>(d: usize) -> Result<BTreeMap<CycleType, T>, ClassFnError> {
    Ok(partitions_of(d)?
        .into_iter()
        .map(|lam| {
            let w = T::one() / T::from_count(lam.centralizer_order());
            (lam, w)
        })
        .collect())
}

pub fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_prime_field;
    use crate::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn partition_enumeration() {
        let p4: Vec<String> = partitions_of(4).unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(p4, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(partitions_of(1).unwrap().len(), 1);
        let counts: Vec<usize> = (1..=12).map(|d| partitions_of(d).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        assert!(partitions_of(0).is_err());
        assert!(partitions_of(13).is_err());
    }

    #[test]
    fn class_equation() {
        for d in 1..=12 {
            let total: Rational = partitions_of(d)
                .unwrap()
                .iter()
                .map(|l| r(1, l.centralizer_order() as i128))
                .sum();
            assert_eq!(total, r(1, 1));
            let sizes: u64 = partitions_of(d).unwrap().iter().map(|l| l.class_size()).sum();
            assert_eq!(sizes, factorial(d as u64));
        }
    }

    #[test]
    fn mu_sgn_identity() {
        for d in 1..=8 {
            for lam in partitions_of(d).unwrap() {
                let parity = if d % 2 == 0 { 1 } else { -1 };
                assert_eq!(lam.mu_value(), parity * lam.sgn_value(), "{lam}");
            }
        }
    }

    #[test]
    fn builtin_values() {
        let prime = ClassFunction::<Rational>::builtin(BuiltinKind::Prime, 3).unwrap();
        assert_eq!(prime.value(&CycleType::from_parts(vec![3])), Some(&r(1, 1)));
        assert_eq!(prime.value(&CycleType::from_parts(vec![1, 2])), Some(&r(0, 1)));
        let mu = ClassFunction::<Rational>::builtin(BuiltinKind::Moebius, 2).unwrap();
        assert_eq!(mu.value(&CycleType::from_parts(vec![1, 1])), Some(&r(1, 1)));
        let d2 = ClassFunction::<Rational>::builtin(BuiltinKind::Divisor(2), 3).unwrap();
        assert_eq!(d2.value(&CycleType::from_parts(vec![1, 2])), Some(&r(4, 1)));
        assert!(ClassFunction::<Rational>::builtin(BuiltinKind::Prime, 1).is_err());
        assert!(ClassFunction::<Rational>::builtin(BuiltinKind::Divisor(1), 3).is_err());
    }

    #[test]
    fn ordered_factorizations_of_squarefree() {
        // g = x(x^2+1) over F_3: count monic h with h | g, i.e. ordered pairs (h, g/h)
        let f3 = make_prime_field(3).unwrap();
        let g = Poly::from_i64s(&f3, &[0, 1]).mul(&Poly::from_i64s(&f3, &[1, 0, 1]));
        let mut pairs = 0;
        for deg in 0..=3u32 {
            for idx in 0..3u64.pow(deg) {
                let mut c: Vec<i64> = (0..deg).map(|i| ((idx / 3u64.pow(i)) % 3) as i64).collect();
                c.push(1);
                let h = Poly::from_i64s(&f3, &c);
                if g.rem(&h).unwrap().is_zero() {
                    pairs += 1;
                }
            }
        }
        let d2 = ClassFunction::<Rational>::builtin(BuiltinKind::Divisor(2), 3).unwrap();
        assert_eq!(d2.evaluate(&g).unwrap(), r(pairs, 1));
        assert_eq!(pairs, 4);
    }

    #[test]
    fn mean_constants() {
        for d in 2..=8 {
            let prime = ClassFunction::<Rational>::builtin(BuiltinKind::Prime, d).unwrap();
            assert_eq!(prime.mean_constant(), r(1, d as i128));
            let mu = ClassFunction::<Rational>::builtin(BuiltinKind::Moebius, d).unwrap();
            assert_eq!(mu.mean_constant(), r(0, 1));
            for rr in 2..=4u32 {
                let dr = ClassFunction::<Rational>::builtin(BuiltinKind::Divisor(rr), d).unwrap();
                let expected = binomial(d as u64 + rr as u64 - 1, rr as u64 - 1);
                assert_eq!(dr.mean_constant(), r(expected as i128, 1), "d={d} r={rr}");
            }
        }
        let d2 = ClassFunction::<Rational>::builtin(BuiltinKind::Divisor(2), 2).unwrap();
        assert_eq!(d2.mean_constant(), r(3, 1));
        let float = ClassFunction::<f64>::builtin(BuiltinKind::Prime, 3).unwrap();
        assert!((float.mean_constant() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn coset_constants() {
        let prime = ClassFunction::<Rational>::builtin(BuiltinKind::Prime, 3).unwrap();
        let uniform = uniform_weights::<Rational>(3).unwrap();
        assert_eq!(prime.coset_constant(&uniform).unwrap(), prime.mean_constant());
        let point: BTreeMap<_, _> = [(CycleType::from_parts(vec![3]), r(1, 1))].into();
        assert_eq!(prime.coset_constant(&point).unwrap(), r(1, 1));
        let kummer: BTreeMap<_, _> = [
            (CycleType::from_parts(vec![1, 1, 1]), r(1, 3)),
            (CycleType::from_parts(vec![3]), r(2, 3)),
        ]
        .into();
        assert_eq!(prime.coset_constant(&kummer).unwrap(), r(2, 3));
        let bad: BTreeMap<_, _> = [(CycleType::from_parts(vec![3]), r(1, 2))].into();
        assert!(matches!(prime.coset_constant(&bad), Err(ClassFnError::WeightsNotNormalized(_))));
    }

    #[test]
    fn evaluate_examples() {
        let f5 = make_prime_field(5).unwrap();
        let mu = ClassFunction::<Rational>::builtin(BuiltinKind::Moebius, 2).unwrap();
        assert_eq!(mu.evaluate(&Poly::from_i64s(&f5, &[1, 0, 1])).unwrap(), r(1, 1));
        let f3 = make_prime_field(3).unwrap();
        let prime = ClassFunction::<Rational>::builtin(BuiltinKind::Prime, 2).unwrap();
        assert_eq!(prime.evaluate(&Poly::from_i64s(&f3, &[1, 0, 1])).unwrap(), r(1, 1));
        let x2 = Poly::from_i64s(&f3, &[0, 0, 1]);
        assert_eq!(prime.evaluate(&x2).unwrap(), r(0, 1));
        assert_eq!(mu.evaluate(&x2).unwrap(), r(0, 1));
        assert_eq!(
            prime.evaluate(&Poly::from_i64s(&f3, &[0, 1])),
            Err(ClassFnError::DegreeMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn moebius_matches_factorization() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 500 {
            let p = [2u64, 3, 5, 7, 13][rng.gen_range(0..5)];
            let ctx = make_prime_field(p).unwrap();
            let d = rng.gen_range(2..=6);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p as i64)).collect();
            c.push(1);
            let g = Poly::from_i64s(&ctx, &c);
            if !g.is_squarefree().unwrap() {
                continue;
            }
            let mu = ClassFunction::<Rational>::builtin(BuiltinKind::Moebius, d).unwrap();
            let omega = g.factor(0).unwrap().omega();
            let expected = if omega % 2 == 0 { 1 } else { -1 };
            assert_eq!(mu.evaluate(&g).unwrap(), r(expected, 1));
            checked += 1;
        }
    }

    #[test]
    fn custom_tables() {
        let lam: CycleType = "3,1".parse().unwrap();
        let f = ClassFunction::from_table("half", 4, [(lam.clone(), r(-1, 2))], r(0, 1)).unwrap();
        assert_eq!(f.value(&lam), Some(&r(-1, 2)));
        assert_eq!(f.value(&"4".parse().unwrap()), Some(&r(0, 1)));
        assert!(matches!(
            ClassFunction::from_table("big", 4, [(lam.clone(), r(1, 1))], r(5, 1)),
            Err(ClassFnError::DefaultUnbounded(_))
        ));
        assert!(ClassFunction::from_table("bad", 3, [(lam, r(1, 1))], r(0, 1)).is_err());
        assert!("1,3".parse::<CycleType>().is_err());
    }
}
