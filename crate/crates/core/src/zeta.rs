//! Brute-force point counts and L-polynomials, as an oracle for the genus
//! and place counts computed from ramification data.
//!
//! Nothing here calls into `kummer` beyond reading `n` and `h`: the local
//! count at zeros and poles is redone by Taylor stripping, and even-degree
//! extensions are enumerated as quadratic extensions of a tabled subfield.

use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, checked_pow};
use crate::error::{Error, Result};
use crate::ffield::{field_extend, FieldCtx, Fe};
use crate::kummer::{genus_hurwitz, KummerCurve};
use crate::polyring::{FqPoly, PolyRing};
use crate::ring::{rational_to_f64, Rationals, Ring};

/// Largest `q^k` enumerated.
pub const MAX_COUNT: u64 = 250_000_000;
const CHUNK: u64 = 1 << 20;
/// Allowed deviation of `|alpha|` from `sqrt(q)` for reciprocal roots.
pub const WEIL_TOLERANCE: f64 = 1e-6;
/// Subfield size limit for the quadratic tower representation.
const TOWER_BASE_LIMIT: u64 = 1 << 21;
/// Fields up to this size come with log tables from `FieldCtx`.
const TABLED_LIMIT: u64 = 1 << 21;
/// Largest field given a private discrete-log table (4 bytes per element).
const LOG_TABLE_LIMIT: u64 = 1 << 27;
const MAX_DIM: usize = 28;

/// Arithmetic needed by the counter.
trait CountField: Sync {
    type E: Copy + PartialEq + Send + Sync;
    fn size(&self) -> u64;
    fn element(&self, i: u64) -> Self::E;
    fn zero(&self) -> Self::E;
    fn lift(&self, c: Fe) -> Self::E;
    fn add(&self, a: Self::E, b: Self::E) -> Self::E;
    fn mul(&self, a: Self::E, b: Self::E) -> Self::E;
    /// Whether nonzero `c` is a `g`-th power, `g | q - 1`.
    fn is_power(&self, c: Self::E, g: u64) -> bool;
}

/// The extension together with the base field it lifts coefficients from.
struct Direct(FieldCtx, FieldCtx);

impl CountField for Direct {
    type E = Fe;
    fn size(&self) -> u64 {
        self.0.size()
    }
    fn element(&self, i: u64) -> Fe {
        self.0.element(i).expect("in range")
    }
    fn zero(&self) -> Fe {
        Fe::ZERO
    }
    fn lift(&self, c: Fe) -> Fe {
        self.0.embed(&self.1, c)
    }
    fn add(&self, a: Fe, b: Fe) -> Fe {
        self.0.add(&a, &b)
    }
    fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.0.mul(&a, &b)
    }
    fn is_power(&self, c: Fe, g: u64) -> bool {
        self.0.pow(&c, (self.0.size() - 1) / g) == Fe::ONE
    }
}

/// `F_p[t] / (m)` on digit arrays, with a discrete-log table for the
/// power test. Used where `FieldCtx` has no tables and `k` is odd.
struct Digits {
    p: u32,
    dim: usize,
    /// `p - m_j` for the low coefficients of the monic modulus.
    neg_modulus: Vec<u32>,
    ext: FieldCtx,
    base: FieldCtx,
    log: Vec<u32>,
}

type DigitVec = [u16; MAX_DIM];

impl Digits {
    fn new(base: &FieldCtx, ext: FieldCtx) -> Self {
        let p = ext.p() as u32;
        let dim = ext.degree();
        assert!(dim <= MAX_DIM && p < 1 << 16);
        let neg_modulus = ext.modulus()[..dim].iter().map(|&m| (p - m as u32) % p).collect();
        let mut field = Digits { p, dim, neg_modulus, base: base.clone(), log: Vec::new(), ext };
        let gamma = field.digits_of(field.ext.primitive_element());
        let mut log = vec![0u32; field.ext.size() as usize];
        let mut e = field.digits_of(Fe::ONE);
        for i in 0..field.ext.size() - 1 {
            log[field.encode(&e) as usize] = i as u32;
            e = field.mul(e, gamma);
        }
        field.log = log;
        field
    }

    fn digits_of(&self, a: Fe) -> DigitVec {
        let mut out = [0u16; MAX_DIM];
        for (o, d) in out.iter_mut().zip(self.ext.digits(a)) {
            *o = d as u16;
        }
        out
    }

    fn encode(&self, a: &DigitVec) -> u64 {
        a[..self.dim].iter().rev().fold(0u64, |acc, &d| acc * self.p as u64 + d as u64)
    }
}

impl CountField for Digits {
    type E = DigitVec;
    fn size(&self) -> u64 {
        self.ext.size()
    }
    fn element(&self, mut i: u64) -> DigitVec {
        let mut out = [0u16; MAX_DIM];
        for o in out.iter_mut().take(self.dim) {
            *o = (i % self.p as u64) as u16;
            i /= self.p as u64;
        }
        out
    }
    fn zero(&self) -> DigitVec {
        [0; MAX_DIM]
    }
    fn lift(&self, c: Fe) -> DigitVec {
        self.digits_of(self.ext.embed(&self.base, c))
    }
    fn add(&self, a: DigitVec, b: DigitVec) -> DigitVec {
        let mut out = [0u16; MAX_DIM];
        for i in 0..self.dim {
            let s = a[i] as u32 + b[i] as u32;
            out[i] = if s >= self.p { s - self.p } else { s } as u16;
        }
        out
    }
    fn mul(&self, a: DigitVec, b: DigitVec) -> DigitVec {
        let (p, dim) = (self.p, self.dim);
        let mut acc = [0u32; 2 * MAX_DIM];
        for i in 0..dim {
            if a[i] == 0 {
                continue;
            }
            for j in 0..dim {
                acc[i + j] += a[i] as u32 * b[j] as u32;
            }
            // keep the sums bounded for large p
            if p > 1 << 8 {
                for x in acc[i..i + dim].iter_mut() {
                    *x %= p;
                }
            }
        }
        for i in (dim..2 * dim - 1).rev() {
            let t = acc[i] % p;
            if t != 0 {
                for j in 0..dim {
                    acc[i - dim + j] = (acc[i - dim + j] + t * self.neg_modulus[j]) % p;
                }
            }
        }
        let mut out = [0u16; MAX_DIM];
        for i in 0..dim {
            out[i] = (acc[i] % p) as u16;
        }
        out
    }
    fn is_power(&self, c: DigitVec, g: u64) -> bool {
        self.log[self.encode(&c) as usize] as u64 % g == 0
    }
}

/// `K[t] / (t^2 + c1 t + c0)`, elements `x0 + x1 t`.
struct Quadratic {
    k: FieldCtx,
    c0: Fe,
    c1: Fe,
    /// Embedding of the original field is `k.embed(base, _)`.
    base: FieldCtx,
}

impl Quadratic {
    fn new(base: &FieldCtx, k: FieldCtx) -> Self {
        let ring = PolyRing::new(k.clone());
        for c1 in [Fe::ZERO, Fe::ONE] {
            for c0 in k.elements() {
                if ring.is_irreducible(&ring.poly(vec![c0, c1, Fe::ONE])) {
                    return Quadratic { k, c0, c1, base: base.clone() };
                }
            }
        }
        unreachable!("every finite field has an irreducible quadratic of this shape")
    }

    /// `N(x0 + x1 t) = x0^2 - c1 x0 x1 + c0 x1^2`.
    fn norm(&self, a: (Fe, Fe)) -> Fe {
        let k = &self.k;
        let (x0, x1) = a;
        let t = k.sub(&k.mul(&x0, &x0), &k.mul(&self.c1, &k.mul(&x0, &x1)));
        k.add(&t, &k.mul(&self.c0, &k.mul(&x1, &x1)))
    }
}

impl CountField for Quadratic {
    type E = (Fe, Fe);
    fn size(&self) -> u64 {
        self.k.size() * self.k.size()
    }
    fn element(&self, i: u64) -> (Fe, Fe) {
        let s = self.k.size();
        (self.k.element(i % s).expect("in range"), self.k.element(i / s).expect("in range"))
    }
    fn zero(&self) -> (Fe, Fe) {
        (Fe::ZERO, Fe::ZERO)
    }
    fn lift(&self, c: Fe) -> (Fe, Fe) {
        (self.k.embed(&self.base, c), Fe::ZERO)
    }
    fn add(&self, a: (Fe, Fe), b: (Fe, Fe)) -> (Fe, Fe) {
        (self.k.add(&a.0, &b.0), self.k.add(&a.1, &b.1))
    }
    fn mul(&self, a: (Fe, Fe), b: (Fe, Fe)) -> (Fe, Fe) {
        let k = &self.k;
        let lo = k.mul(&a.0, &b.0);
        let mid = k.add(&k.mul(&a.0, &b.1), &k.mul(&a.1, &b.0));
        let hi = k.mul(&a.1, &b.1);
        // t^2 = -c1 t - c0
        (k.sub(&lo, &k.mul(&hi, &self.c0)), k.sub(&mid, &k.mul(&hi, &self.c1)))
    }
    fn is_power(&self, c: (Fe, Fe), g: u64) -> bool {
        // c^{(Q-1)/g} = N(c)^{(|K|-1)/g} since g divides |K| - 1
        self.k.pow(&self.norm(c), (self.k.size() - 1) / g) == Fe::ONE
    }
}

/// Number of places of degree one of `y^n = h` over `F_{q^k}`.
pub fn count_points(curve: &KummerCurve, k: usize) -> Result<u64> {
    let q = curve.q();
    let size = checked_pow(q, k as u64).filter(|&s| s <= MAX_COUNT).ok_or(Error::Budget {
        what: "point count",
        size: (q as u128).saturating_pow(k as u32),
        limit: MAX_COUNT as u128,
    })?;
    let base = curve.field();
    if k % 2 == 0 && size / q.pow(k as u32 / 2) <= TOWER_BASE_LIMIT {
        let sub = field_extend(base, k / 2)?;
        Ok(count_with(&Quadratic::new(base, sub), curve))
    } else if k == 1 {
        Ok(count_with(&Direct(base.clone(), base.clone()), curve))
    } else {
        let ext = field_extend(base, k)?;
        if size > TABLED_LIMIT && size <= LOG_TABLE_LIMIT && ext.degree() <= MAX_DIM {
            Ok(count_with(&Digits::new(base, ext), curve))
        } else {
            Ok(count_with(&Direct(ext, base.clone()), curve))
        }
    }
}

fn count_with<F: CountField>(field: &F, curve: &KummerCurve) -> u64 {
    let n = curve.n();
    let (num, den) = curve.h().expand_parts();
    let lift = |p: &FqPoly| -> Vec<F::E> { p.coeffs().iter().map(|c| field.lift(*c)).collect() };
    let (num, den) = (lift(&num), lift(&den));
    // g-th roots of a local unit u, with u^{-1} replaced by u^{g-1}
    let fibre = |top: F::E, bottom: F::E, m: i64| -> u64 {
        let g = gcd(n, m.unsigned_abs());
        let mut c = top;
        for _ in 1..g {
            c = field.mul(c, bottom);
        }
        if g == 1 || field.is_power(c, g) {
            g
        } else {
            0
        }
    };
    let at = |a: F::E| -> u64 {
        let (m_num, top) = strip(field, &num, a);
        let (m_den, bottom) = strip(field, &den, a);
        fibre(top, bottom, m_num as i64 - m_den as i64)
    };
    let size = field.size();
    let finite: u64 = (0..size.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            (lo..(lo + CHUNK).min(size)).map(|i| at(field.element(i))).sum::<u64>()
        })
        .sum();
    // at infinity the local unit is the ratio of leading coefficients
    let m_inf = den.len() as i64 - num.len() as i64;
    finite + fibre(*num.last().expect("nonzero"), *den.last().expect("nonzero"), m_inf)
}

/// Multiplicity of `a` as a root of `p`, and the value at `a` of `p / (v - a)^m`.
fn strip<F: CountField>(field: &F, p: &[F::E], a: F::E) -> (u32, F::E) {
    let mut cur: Vec<F::E> = p.to_vec();
    let mut m = 0;
    loop {
        // synthetic division by v - a
        let mut quotient = vec![field.zero(); cur.len().saturating_sub(1)];
        let mut acc = field.zero();
        for i in (0..cur.len()).rev() {
            acc = field.add(field.mul(acc, a), cur[i]);
            if i > 0 {
                quotient[i - 1] = acc;
            }
        }
        if acc != field.zero() {
            return (m, acc);
        }
        m += 1;
        cur = quotient;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub q: u64,
    pub g: u64,
    pub counts: Vec<u64>,
    /// `a_0, ..., a_{2g}` of `L(T)`.
    pub lpoly: Vec<i128>,
    pub functional_eq: bool,
    pub weil_ok: bool,
    pub elapsed_ms: u128,
}

impl ZetaReport {
    pub fn passed(&self) -> bool {
        self.functional_eq && self.weil_ok
    }
}

/// `L(T)` from `N_1, ..., N_{2g}` by Newton's identities on the power sums
/// `S_k = q^k + 1 - N_k` of the reciprocal roots.
pub fn lpoly_from_counts(q: u64, g: u64, counts: &[u64]) -> Result<ZetaReport> {
    let start = Instant::now();
    let len = 2 * g as usize;
    if counts.len() < len {
        return Err(Error::InvalidArgument(format!("need {len} counts, got {}", counts.len())));
    }
    let overflow = || Error::Inconsistent("L-polynomial coefficients overflow".into());
    let qi = q as i128;
    let mut s = Vec::with_capacity(len);
    for (k, &nk) in counts.iter().take(len).enumerate() {
        let qk = qi.checked_pow(k as u32 + 1).ok_or_else(overflow)?;
        s.push(qk + 1 - nk as i128);
    }
    // e_k of the reciprocal roots; a_k = (-1)^k e_k
    let mut e = vec![1i128];
    for k in 1..=len {
        let mut acc = 0i128;
        for i in 1..=k {
            let term = e[k - i].checked_mul(s[i - 1]).ok_or_else(overflow)?;
            acc = if i % 2 == 1 { acc.checked_add(term) } else { acc.checked_sub(term) }.ok_or_else(overflow)?;
        }
        if acc % k as i128 != 0 {
            return Err(Error::Inconsistent(format!("e_{k} = {acc}/{k} is not an integer")));
        }
        e.push(acc / k as i128);
    }
    let lpoly: Vec<i128> = e.iter().enumerate().map(|(k, &ek)| if k % 2 == 0 { ek } else { -ek }).collect();
    let functional_eq = (0..=len).all(|i| {
        let gi = g as i64 - i as i64;
        if gi >= 0 {
            qi.checked_pow(gi as u32).and_then(|f| f.checked_mul(lpoly[i])) == Some(lpoly[len - i])
        } else {
            true
        }
    });
    let weil_ok = weil_check(q, &lpoly);
    Ok(ZetaReport {
        q,
        g,
        counts: counts[..len].to_vec(),
        lpoly,
        functional_eq,
        weil_ok,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Roots of `x^{2g} L(1/x)` lie on `|x| = sqrt(q)`, checked on the
/// square-free part in floating point.
fn weil_check(q: u64, lpoly: &[i128]) -> bool {
    if lpoly.len() <= 1 {
        return true;
    }
    let ring = PolyRing::new(Rationals);
    // x^{2g} L(1/x) has coefficient a_i at x^{2g-i}
    let coeffs: Vec<BigRational> =
        lpoly.iter().rev().map(|&a| BigRational::from_integer(BigInt::from(a))).collect();
    let p = ring.poly(coeffs);
    let g = ring.gcd(&p, &ring.derivative(&p));
    let Some(sqfree) = ring.div_exact(&p, &g) else { return false };
    let sqfree = ring.monic(&sqfree);
    let c: Vec<f64> = sqfree.coeffs().iter().map(rational_to_f64).collect();
    let r = (q as f64).sqrt();
    match aberth(&c) {
        Some(roots) => roots.iter().all(|z| (z.norm() - r).abs() <= WEIL_TOLERANCE),
        None => false,
    }
}

/// Aberth–Ehrlich iteration for a monic polynomial, coefficients low to high.
fn aberth(c: &[f64]) -> Option<Vec<Complex64>> {
    let deg = c.len() - 1;
    if deg == 0 {
        return Some(Vec::new());
    }
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &ci in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + ci;
        }
        (p, dp)
    };
    // Cauchy bound for the starting circle
    let bound = 1.0 + c[..deg].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(bound * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 {
            return Some(z);
        }
    }
    // accept if residuals are tiny even without a clean stop
    z.iter().all(|&zi| eval(zi).0.norm() < 1e-9).then_some(z)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusVerification {
    pub genus: u64,
    pub passed: bool,
    pub report: ZetaReport,
}

/// Counts places over `F_{q^k}`, `k <= 2g`, with `g` from the Hurwitz
/// formula, and checks that they assemble into a valid L-polynomial.
pub fn verify_genus(curve: &KummerCurve) -> Result<GenusVerification> {
    let start = Instant::now();
    let g = genus_hurwitz(curve).genus;
    let g = u64::try_from(g).map_err(|_| Error::Inconsistent(format!("negative genus {g}")))?;
    let counts = (1..=2 * g as usize).map(|k| count_points(curve, k)).collect::<Result<Vec<_>>>()?;
    let mut report = lpoly_from_counts(curve.q(), g, &counts)?;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(GenusVerification { genus: g, passed: report.passed(), report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_create;
    use crate::kummer::{curve_create, rational_places};
    use crate::polyring::parse_expr;

    fn fq(q: u64) -> FieldCtx {
        let (p, d) = crate::arith::prime_power(q).unwrap();
        field_create(p, d as usize).unwrap()
    }

    fn canonical(q: u64) -> KummerCurve {
        KummerCurve::canonical(&fq(q), Fe::ONE, 1).unwrap()
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_points(&canonical(3), 1).unwrap(), 4);
        assert_eq!(count_points(&canonical(3), 2).unwrap(), 16);
        assert_eq!(count_points(&canonical(4), 1).unwrap(), 5);
        for q in [3, 4, 5, 7, 8, 9, 11, 13] {
            assert_eq!(count_points(&canonical(q), 1).unwrap(), q + 1);
        }
        assert!(count_points(&canonical(5), 13).unwrap_err().is_budget());
    }

    #[test]
    fn tower_and_direct_agree() {
        let f5 = fq(5);
        let c = curve_create(&f5, 4, &parse_expr(&f5, "2*v^3*(v+1)^-1*(v^2+2)").unwrap()).unwrap();
        for k in [2usize, 4] {
            let q = Quadratic::new(&f5, field_extend(&f5, k / 2).unwrap());
            let direct = Direct(field_extend(&f5, k).unwrap(), f5.clone());
            assert_eq!(count_with(&q, &c), count_with(&direct, &c), "k = {k}");
        }
        let f4 = fq(4);
        let c = curve_create(&f4, 3, &parse_expr(&f4, "v^2*(v+1)").unwrap()).unwrap();
        let q = Quadratic::new(&f4, field_extend(&f4, 2).unwrap());
        assert_eq!(count_with(&q, &c), count_with(&Direct(field_extend(&f4, 4).unwrap(), f4.clone()), &c));
    }

    #[test]
    fn digit_backend_agrees_with_tables() {
        let f5 = fq(5);
        let c = curve_create(&f5, 4, &parse_expr(&f5, "2*v^3*(v+1)^-1*(v^2+2)").unwrap()).unwrap();
        let ext = field_extend(&f5, 5).unwrap();
        assert_eq!(count_with(&Digits::new(&f5, ext.clone()), &c), count_with(&Direct(ext, f5.clone()), &c));
        let f4 = fq(4);
        let c = curve_create(&f4, 3, &parse_expr(&f4, "[0,1]*v^2*(v+[1,1])").unwrap()).unwrap();
        let ext = field_extend(&f4, 3).unwrap();
        assert_eq!(count_with(&Digits::new(&f4, ext.clone()), &c), count_with(&Direct(ext, f4.clone()), &c));
        let f13 = fq(13);
        let c = curve_create(&f13, 6, &parse_expr(&f13, "v^3+5*v+1").unwrap()).unwrap();
        let ext = field_extend(&f13, 3).unwrap();
        assert_eq!(count_with(&Digits::new(&f13, ext.clone()), &c), count_with(&Direct(ext, f13.clone()), &c));
    }

    #[test]
    fn oracle_agrees_with_ramification_rule() {
        for q in [3u64, 4, 5, 7] {
            let field = fq(q);
            for s in 1..(q as i64 - 1).max(2) {
                if gcd(s as u64, q - 1) != 1 {
                    continue;
                }
                for lambda in field.elements().skip(1) {
                    let c = KummerCurve::canonical(&field, lambda, s).unwrap();
                    for k in 1..=4usize {
                        if q.pow(k as u32) > 3000 {
                            continue;
                        }
                        assert_eq!(count_points(&c, k).unwrap(), rational_places(&c, k).unwrap(), "q={q} s={s} k={k}");
                    }
                }
            }
        }
        let f7 = fq(7);
        for h in ["v^2*(v+3)^-1*(v^2+1)^5", "3*v^3+v+1", "(v^4+v+3)^2*v^-1"] {
            for n in [2, 3, 6] {
                if let Ok(c) = curve_create(&f7, n, &parse_expr(&f7, h).unwrap()) {
                    for k in 1..=3 {
                        assert_eq!(count_points(&c, k).unwrap(), rational_places(&c, k).unwrap(), "{h} n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn lpoly_examples() {
        let r = lpoly_from_counts(3, 1, &[4, 16]).unwrap();
        assert_eq!(r.lpoly, vec![1, 0, 3]);
        assert!(r.functional_eq && r.weil_ok);
        let r = lpoly_from_counts(7, 0, &[]).unwrap();
        assert_eq!(r.lpoly, vec![1]);
        assert!(r.passed());
        // N_1 = 4, N_2 = 10 is not a genus-1 curve over F_3 (the product would
        // be 1 + 0 T - 3 T^2 ... with roots off the Weil circle)
        let bad = lpoly_from_counts(3, 1, &[4, 10]).unwrap();
        assert!(!bad.passed());
        assert!(lpoly_from_counts(3, 1, &[4]).is_err());
    }

    #[test]
    fn elliptic_curve_trace_matches_count() {
        // y^2 = v^3 + v + 1 over F_5: a_1 = N_1 - q - 1
        let f5 = fq(5);
        let c = curve_create(&f5, 2, &parse_expr(&f5, "v^3+v+1").unwrap()).unwrap();
        let n1 = count_points(&c, 1).unwrap();
        let n2 = count_points(&c, 2).unwrap();
        let r = lpoly_from_counts(5, 1, &[n1, n2]).unwrap();
        assert_eq!(r.lpoly[1], n1 as i128 - 6);
        assert!(r.passed());
    }

    #[test]
    fn verify_small_genera() {
        let v = verify_genus(&canonical(3)).unwrap();
        assert!(v.passed);
        assert_eq!(v.genus, 1);
        assert_eq!(v.report.counts, vec![4, 16]);
        let v = verify_genus(&canonical(4)).unwrap();
        assert!(v.passed);
        assert_eq!(v.genus, 3);
        let r = &v.report;
        for i in 0..=6usize {
            if i <= 3 {
                assert_eq!(r.lpoly[6 - i], 4i128.pow(3 - i as u32) * r.lpoly[i]);
            }
        }
    }

    #[test]
    fn wrong_genus_is_detected() {
        let c = canonical(4);
        let counts: Vec<u64> = (1..=4).map(|k| count_points(&c, k).unwrap()).collect();
        let r = lpoly_from_counts(4, 2, &counts);
        assert!(r.map_or(true, |r| !r.passed()));
    }
}
