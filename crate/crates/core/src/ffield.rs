//! Finite fields `F_{p^d} = F_p[t]/(m(t))`.
//!
//! An element is stored by its integer encoding `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`
//! of the coefficient vector over `F_p`; this encoding is also the field's
//! enumeration order. Fields up to 2^21 elements get log/antilog/Zech tables,
//! built on first use. Larger fields (up to 2^40) use schoolbook arithmetic.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, factorize, gcd, is_prime};
use crate::error::{Error, Result};
use crate::polyring::PolyRing;
use crate::ring::{Field, Ring};

pub const MAX_FIELD_SIZE: u64 = 1 << 40;
const TABLE_LIMIT: u64 = 1 << 21;
const MAX_DEGREE: usize = 40;
const NONE: u32 = u32::MAX;

/// A field element, identified by its integer encoding.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn index(self) -> u64 {
        self.0
    }

    #[cfg(test)]
    /// Wraps a raw encoding without a range check.
    pub(crate) fn from_index(i: u64) -> Fe {
        Fe(i)
    }
}

/// Realizes a smaller field inside a larger one by sending the smaller
/// field's generator `g` to a root `r` of its modulus.
#[derive(Clone)]
pub struct Embedding {
    base: FieldCtx,
    /// `r^i` for `i < base.degree()`.
    images: Vec<Fe>,
}

impl Embedding {
    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn generator_image(&self) -> Fe {
        self.images.get(1).copied().unwrap_or(Fe::ZERO)
    }

    /// Maps an element of the base field into the extension `ext`.
    pub fn apply(&self, ext: &FieldCtx, a: Fe) -> Fe {
        let digits = self.base.digits(a);
        let mut acc = Fe::ZERO;
        for (c, img) in digits.iter().zip(&self.images) {
            if *c != 0 {
                acc = ext.add(&acc, &ext.mul(&Fe(*c), img));
            }
        }
        acc
    }
}

struct Tables {
    log: Vec<u32>,
    exp: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, `NONE` when `1 + g^k = 0`.
    zech: Vec<u32>,
}

struct Inner {
    p: u64,
    d: usize,
    modulus: Vec<u64>,
    size: u64,
    tables: OnceLock<Option<Tables>>,
    parent: Option<Embedding>,
}

/// A finite field context. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p(), self.degree(), self.modulus())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.p() == other.p() && self.modulus() == other.modulus())
    }
}

impl Eq for FieldCtx {}

/// Serialized form of a context: `{p, d, modulus}` with the modulus listed
/// little-endian, leading 1 included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub d: usize,
    pub modulus: Vec<u64>,
}

/// Builds `F_{p^d}` with the smallest monic irreducible modulus of degree `d`.
///
/// Candidates `t^d + c_{d-1} t^{d-1} + ... + c_0` are scanned in increasing
/// order of the integer encoding of `(c_0, ..., c_{d-1})`, so the highest
/// non-leading coefficient is the most significant.
pub fn field_create(p: u64, d: usize) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let size = checked_pow(p, d as u64)
        .filter(|&s| s <= MAX_FIELD_SIZE)
        .ok_or(Error::FieldTooLarge { p, d })?;
    if d == 1 {
        return Ok(FieldCtx::build(p, 1, vec![0, 1], size, None));
    }
    let prime = FieldCtx::build(p, 1, vec![0, 1], p, None);
    let ring = PolyRing::new(prime.clone());
    let low_count = size;
    for idx in 0..low_count {
        // constant term zero means t divides the candidate
        if idx % p == 0 {
            continue;
        }
        let mut coeffs: Vec<Fe> = prime.digits_of_index(idx, d).into_iter().map(Fe).collect();
        coeffs.push(Fe::ONE);
        let cand = ring.poly(coeffs);
        if ring.is_irreducible(&cand) {
            let modulus = cand.coeffs().iter().map(|c| c.0).collect();
            return Ok(FieldCtx::build(p, d, modulus, size, None));
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Builds `F_{q^k}` over the prime field together with an embedding of `base`.
///
/// The base generator is sent to the smallest root (in enumeration order) of
/// the base modulus inside the extension.
pub fn field_extend(base: &FieldCtx, k: usize) -> Result<FieldCtx> {
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    let plain = field_create(base.p(), base.degree() * k)?;
    let ring = PolyRing::new(plain.clone());
    let modulus = ring.poly(base.modulus().iter().map(|&c| Fe(c)).collect());
    let root = ring
        .roots(&modulus)
        .into_iter()
        .min()
        .expect("the modulus of F_q splits in F_{q^k}");
    let images: Vec<Fe> = (0..base.degree()).map(|i| plain.pow(&root, i as u64)).collect();
    let parent = Embedding { base: base.clone(), images };
    Ok(FieldCtx::build(
        plain.p(),
        plain.degree(),
        plain.modulus().to_vec(),
        plain.size(),
        Some(parent),
    ))
}

/// Number of `y` in the field of `c` with `y^m = c`.
pub fn nth_power_solutions(field: &FieldCtx, c: Fe, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("exponent m must be positive".into()));
    }
    if c == Fe::ZERO {
        return Ok(1);
    }
    let order = field.size() - 1;
    let g = gcd(m, order);
    if field.pow(&c, order / g) == Fe::ONE {
        Ok(g)
    } else {
        Ok(0)
    }
}

impl FieldCtx {
    fn build(p: u64, d: usize, modulus: Vec<u64>, size: u64, parent: Option<Embedding>) -> FieldCtx {
        assert!(d <= MAX_DEGREE);
        FieldCtx {
            inner: Arc::new(Inner {
                p,
                d,
                modulus,
                size,
                tables: OnceLock::new(),
                parent,
            }),
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.inner.d
    }

    pub fn size(&self) -> u64 {
        self.inner.size
    }

    /// Little-endian modulus coefficients, leading 1 included.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn parent(&self) -> Option<&Embedding> {
        self.inner.parent.as_ref()
    }

    /// Image of `a` (an element of `base`) in this field. `base` must be this
    /// field, the prime field, or the base of this field's embedding.
    pub fn embed(&self, base: &FieldCtx, a: Fe) -> Fe {
        if base.degree() == 1 || base == self {
            return a;
        }
        match self.parent() {
            Some(emb) if emb.base() == base => emb.apply(self, a),
            _ => panic!("{base:?} has no recorded embedding into {self:?}"),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p(),
            d: self.degree(),
            modulus: self.modulus().to_vec(),
        }
    }

    /// The class of `t`, which generates the field over `F_p`.
    pub fn generator(&self) -> Fe {
        if self.degree() == 1 {
            Fe::ZERO
        } else {
            Fe(self.p())
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size()).map(Fe)
    }

    pub fn element(&self, index: u64) -> Result<Fe> {
        if index < self.size() {
            Ok(Fe(index))
        } else {
            Err(Error::NotInField(index.to_string()))
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.size()))
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.size()))
    }

    /// Coefficients over `F_p`, little-endian, always `degree()` long.
    pub fn digits(&self, a: Fe) -> Vec<u64> {
        self.digits_of_index(a.0, self.degree())
    }

    fn digits_of_index(&self, mut x: u64, len: usize) -> Vec<u64> {
        let p = self.p();
        (0..len)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<Fe> {
        if digits.len() > self.degree() || digits.iter().any(|&c| c >= self.p()) {
            return Err(Error::NotInField(format!("{digits:?}")));
        }
        Ok(self.encode(digits))
    }

    /// Whether `a` lies in the prime subfield.
    pub fn is_prime_subfield(&self, a: Fe) -> bool {
        a.0 < self.p()
    }

    /// `"[c0,c1,...]"`, the serialized form of an element.
    pub fn format_digits(&self, a: Fe) -> String {
        let parts: Vec<String> = self.digits(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(&a, self.p())
    }

    pub fn multiplicative_order(&self, a: Fe) -> Option<u64> {
        if a == Fe::ZERO {
            return None;
        }
        let mut order = self.size() - 1;
        for (r, _) in factorize(order) {
            while order % r == 0 && self.pow(&a, order / r) == Fe::ONE {
                order /= r;
            }
        }
        Some(order)
    }

    /// Smallest generator of the multiplicative group in enumeration order.
    pub fn primitive_element(&self) -> Fe {
        if let Some(t) = self.tables() {
            return Fe(t.exp[1 % t.exp.len()] as u64);
        }
        self.find_primitive()
    }

    fn find_primitive(&self) -> Fe {
        let order = self.size() - 1;
        let primes: Vec<u64> = factorize(order).into_iter().map(|(r, _)| r).collect();
        (1..self.size())
            .map(Fe)
            .find(|&g| primes.iter().all(|&r| self.pow_slow(g, order / r) != Fe::ONE))
            .expect("multiplicative group is cyclic")
    }

    pub fn nth_power_solutions(&self, c: Fe, m: u64) -> Result<u64> {
        nth_power_solutions(self, c, m)
    }

    pub fn is_nth_power(&self, c: Fe, m: u64) -> bool {
        c == Fe::ZERO || self.pow(&c, (self.size() - 1) / gcd(m, self.size() - 1)) == Fe::ONE
    }

    /// Some `y` with `y^m = c`, if one exists.
    pub fn nth_root(&self, c: Fe, m: u64) -> Option<Fe> {
        if c == Fe::ZERO || m == 0 {
            return (m > 0).then_some(Fe::ZERO).or((c == Fe::ONE).then_some(Fe::ONE));
        }
        let order = self.size() - 1;
        if let Some(t) = self.tables() {
            let l = t.log[c.0 as usize] as u64;
            let g = gcd(m, order);
            if l % g != 0 {
                return None;
            }
            let n = order / g;
            let x = if n == 1 {
                0
            } else {
                let inv = mod_inverse((m / g) % n, n)?;
                ((l / g) as u128 * inv as u128 % n as u128) as u64
            };
            return Some(Fe(t.exp[x as usize] as u64));
        }
        if !self.is_nth_power(c, m) {
            return None;
        }
        let ring = PolyRing::new(self.clone());
        let mut coeffs = vec![Fe::ZERO; m as usize + 1];
        coeffs[0] = self.neg(&c);
        coeffs[m as usize] = Fe::ONE;
        ring.roots(&ring.poly(coeffs)).into_iter().min()
    }

    fn encode(&self, digits: &[u64]) -> Fe {
        let p = self.p();
        Fe(digits.iter().rev().fold(0u64, |acc, &c| acc * p + c))
    }

    fn tables(&self) -> Option<&Tables> {
        self.inner
            .tables
            .get_or_init(|| (self.size() <= TABLE_LIMIT && self.degree() > 1).then(|| self.build_tables()))
            .as_ref()
    }

    fn build_tables(&self) -> Tables {
        let q = self.size() as usize;
        let g = self.find_primitive();
        let mut exp = Vec::with_capacity(q - 1);
        let mut cur = Fe::ONE;
        for _ in 0..q - 1 {
            exp.push(cur.0 as u32);
            cur = self.mul_slow(cur, g);
        }
        let mut log = vec![NONE; q];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let zech = exp
            .iter()
            .map(|&e| {
                let s = self.add_digits(Fe::ONE, Fe(e as u64));
                if s == Fe::ZERO {
                    NONE
                } else {
                    log[s.0 as usize]
                }
            })
            .collect();
        Tables { log, exp, zech }
    }

    fn add_digits(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut scale = 1u64;
        while x > 0 || y > 0 {
            let s = (x % p + y % p) % p;
            out += s * scale;
            x /= p;
            y /= p;
            scale = scale.wrapping_mul(p);
        }
        Fe(out)
    }

    fn neg_digits(&self, a: Fe) -> Fe {
        let p = self.p();
        let mut x = a.0;
        let mut out = 0u64;
        let mut scale = 1u64;
        while x > 0 {
            let c = x % p;
            out += ((p - c) % p) * scale;
            x /= p;
            scale = scale.wrapping_mul(p);
        }
        Fe(out)
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        let d = self.degree();
        if d == 1 {
            return Fe(mul_mod(a.0, b.0, p));
        }
        let mut x = [0u64; MAX_DEGREE];
        let mut y = [0u64; MAX_DEGREE];
        decode_into(a.0, p, &mut x[..d]);
        decode_into(b.0, p, &mut y[..d]);
        let m = self.modulus();
        let mut prod = [0u128; 2 * MAX_DEGREE];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + x[i] as u128 * y[j] as u128) % p as u128;
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = prod[i] % p as u128;
            if c == 0 {
                continue;
            }
            let negc = p as u128 - c;
            for j in 0..d {
                prod[i - d + j] = (prod[i - d + j] + negc * m[j] as u128) % p as u128;
            }
        }
        let digits: Vec<u64> = prod[..d].iter().map(|&c| c as u64).collect();
        self.encode(&digits)
    }

    fn pow_slow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_slow(base, base);
            }
        }
        acc
    }
}

fn decode_into(mut x: u64, p: u64, out: &mut [u64]) {
    for o in out.iter_mut() {
        *o = x % p;
        x /= p;
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}

impl Ring for FieldCtx {
    type Elem = Fe;

    fn zero(&self) -> Fe {
        Fe::ZERO
    }

    fn one(&self) -> Fe {
        Fe::ONE
    }

    fn is_zero(&self, a: &Fe) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.p();
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.degree() == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= p { s - p } else { s });
        }
        if a.0 == 0 {
            return *b;
        }
        if b.0 == 0 {
            return *a;
        }
        if let Some(t) = self.tables() {
            let n = t.exp.len() as u64;
            let la = t.log[a.0 as usize] as u64;
            let lb = t.log[b.0 as usize] as u64;
            let k = (lb + n - la) % n;
            let z = t.zech[k as usize];
            if z == NONE {
                return Fe::ZERO;
            }
            return Fe(t.exp[((la + z as u64) % n) as usize] as u64);
        }
        self.add_digits(*a, *b)
    }

    fn neg(&self, a: &Fe) -> Fe {
        let p = self.p();
        if p == 2 || a.0 == 0 {
            return *a;
        }
        if self.degree() == 1 {
            return Fe(p - a.0);
        }
        self.neg_digits(*a)
    }

    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if self.degree() > 1 {
            if let Some(t) = self.tables() {
                let n = t.exp.len() as u64;
                let s = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % n;
                return Fe(t.exp[s as usize] as u64);
            }
        }
        self.mul_slow(*a, *b)
    }

    fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p() as i64) as u64)
    }

    fn pow(&self, a: &Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        if self.degree() > 1 {
            if let Some(t) = self.tables() {
                let n = t.exp.len() as u128;
                let s = (t.log[a.0 as usize] as u128 * (e as u128 % n)) % n;
                return Fe(t.exp[s as usize] as u64);
            }
        }
        self.pow_slow(*a, e)
    }
}

impl Field for FieldCtx {
    fn inv(&self, a: &Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        if self.degree() > 1 {
            if let Some(t) = self.tables() {
                let n = t.exp.len();
                let l = t.log[a.0 as usize] as usize;
                return Some(Fe(t.exp[(n - l) % n] as u64));
            }
        }
        Some(self.pow(a, self.size() - 2))
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_nth(field: &FieldCtx, c: Fe, m: u64) -> u64 {
        field.elements().filter(|y| field.pow(y, m) == c).count() as u64
    }

    #[test]
    fn create_small_fields() {
        let f3 = field_create(3, 1).unwrap();
        assert_eq!(f3.modulus(), &[0, 1]);
        assert_eq!(f3.size(), 3);
        let f4 = field_create(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(field_create(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(field_create(3, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(field_create(2, 41), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn modulus_is_smallest_irreducible() {
        // F_9: t^2 + 1 is the first irreducible (t^2, t^2+2 = (t-1)(t+1) fail)
        assert_eq!(field_create(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // F_8: t^3 + t + 1
        assert_eq!(field_create(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        // F_25: t^2 + 2 (t^2 + 1 = (t-2)(t+2) over F_5)
        assert_eq!(field_create(5, 2).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, d) in [(2, 1), (3, 2), (2, 4), (5, 3), (7, 1), (13, 2), (5, 12), (3, 13)] {
            let f = field_create(p, d).unwrap();
            for _ in 0..200 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                assert_eq!(f.add(&a, &f.neg(&a)), Fe::ZERO);
                if a != Fe::ZERO {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), Fe::ONE);
                }
                // Frobenius is a ring homomorphism
                assert_eq!(f.frobenius(f.add(&a, &b)), f.add(&f.frobenius(a), &f.frobenius(b)));
                assert_eq!(f.frobenius(f.mul(&a, &b)), f.mul(&f.frobenius(a), &f.frobenius(b)));
                let mut x = a;
                for _ in 0..d {
                    x = f.frobenius(x);
                }
                assert_eq!(x, a);
            }
        }
    }

    #[test]
    fn table_and_schoolbook_paths_agree() {
        let f = field_create(3, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.mul(&a, &b), f.mul_slow(a, b));
            assert_eq!(f.add(&a, &b), f.add_digits(a, b));
        }
    }

    #[test]
    fn nth_power_solution_examples() {
        let f5 = field_create(5, 1).unwrap();
        assert_eq!(nth_power_solutions(&f5, Fe::ONE, 4).unwrap(), 4);
        assert_eq!(nth_power_solutions(&f5, Fe::ZERO, 4).unwrap(), 1);
        let f7 = field_create(7, 1).unwrap();
        assert_eq!(nth_power_solutions(&f7, f7.from_int(2), 3).unwrap(), 0);
        assert!(nth_power_solutions(&f7, Fe::ONE, 0).is_err());
    }

    #[test]
    fn nth_power_solutions_partition_the_field() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 81] {
            let (p, t) = crate::arith::prime_power(q).unwrap();
            let f = field_create(p, t as usize).unwrap();
            for m in 1..q {
                let total: u64 = f.elements().map(|c| nth_power_solutions(&f, c, m).unwrap()).sum();
                assert_eq!(total, q, "q={q} m={m}");
            }
            for m in [1, 2, 3, q - 1] {
                for c in f.elements().take(20) {
                    assert_eq!(nth_power_solutions(&f, c, m).unwrap(), brute_nth(&f, c, m));
                }
            }
        }
    }

    #[test]
    fn nth_roots() {
        let f = field_create(3, 3).unwrap();
        for c in f.elements() {
            for m in [1u64, 2, 13, 26, 4] {
                match f.nth_root(c, m) {
                    Some(y) => assert_eq!(f.pow(&y, m), c),
                    None => assert_eq!(brute_nth(&f, c, m), 0),
                }
            }
        }
        let big = field_create(5, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = big.random_nonzero(&mut rng);
        let c = big.pow(&x, 4);
        let y = big.nth_root(c, 4).unwrap();
        assert_eq!(big.pow(&y, 4), c);
    }

    #[test]
    fn extension_embeddings() {
        let f3 = field_create(3, 1).unwrap();
        let f9 = field_extend(&f3, 2).unwrap();
        assert_eq!(f9.size(), 9);
        let emb = f9.parent().unwrap();
        for a in f3.elements() {
            assert_eq!(emb.apply(&f9, a), a);
        }

        let f4 = field_create(2, 2).unwrap();
        let f16 = field_extend(&f4, 2).unwrap();
        let emb = f16.parent().unwrap();
        let r = emb.generator_image();
        // g^2 + g + 1 = 0 in F_16
        let val = f16.add(&f16.add(&f16.mul(&r, &r), &r), &Fe::ONE);
        assert_eq!(val, Fe::ZERO);
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(emb.apply(&f16, f4.mul(&a, &b)), f16.mul(&emb.apply(&f16, a), &emb.apply(&f16, b)));
                assert_eq!(emb.apply(&f16, f4.add(&a, &b)), f16.add(&emb.apply(&f16, a), &emb.apply(&f16, b)));
            }
        }
        // injective
        let images: std::collections::HashSet<_> = f4.elements().map(|a| emb.apply(&f16, a)).collect();
        assert_eq!(images.len(), 4);
    }

    #[test]
    fn serialization_shapes() {
        let f9 = field_create(3, 2).unwrap();
        let g = f9.generator();
        assert_eq!(f9.format_digits(f9.add(&f9.from_int(2), &g)), "[2,1]");
        let json = serde_json::to_string(&f9.descriptor()).unwrap();
        assert_eq!(json, r#"{"p":3,"d":2,"modulus":[1,0,1]}"#);
        assert_eq!(f9.from_digits(&[2, 1]).unwrap(), f9.add(&f9.from_int(2), &g));
        assert!(f9.from_digits(&[3]).is_err());
        assert!(f9.from_digits(&[1, 1, 1]).is_err());
    }
}
