//! Dense univariate polynomials over any [`Ring`], with the field-specific
//! algorithms (division, gcd, factorization, root finding) layered on top.

mod bezout;
mod factor;
mod parse;
mod ratfunc;

pub use bezout::int_bezout;
pub use factor::FACTOR_SEED;
pub use parse::{format_element, format_factored, format_poly, parse_expr, parse_expr_in};
pub use ratfunc::{poly_sort_key, FactoredRationalFunction, Place, RatFuncField, RationalFunction};
pub(crate) use ratfunc::eval_lifted;

use crate::ffield::{FieldCtx, Fe};
use crate::ring::{Field, Ring};

/// Coefficients little-endian, trailing zeros trimmed; the zero polynomial
/// has no coefficients and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

pub type FqPoly = Poly<Fe>;
pub type FqPolyRing = PolyRing<FieldCtx>;

/// The ring `R[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// Builds a polynomial from little-endian coefficients, trimming zeros.
    pub fn poly(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.poly(vec![c])
    }

    /// The variable.
    pub fn var(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); k + 1];
        coeffs[k] = c;
        self.poly(coeffs)
    }

    /// `v - a`.
    pub fn linear(&self, a: &R::Elem) -> Poly<R::Elem> {
        self.poly(vec![self.base.neg(a), self.base.one()])
    }

    pub fn is_monic(&self, p: &Poly<R::Elem>) -> bool {
        p.lead().is_some_and(|c| self.base.is_one(c))
    }

    pub fn scale(&self, p: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.poly(p.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, p: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if p.is_zero() {
            return p.clone();
        }
        let mut coeffs = vec![self.base.zero(); k];
        coeffs.extend(p.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn map_coeffs<S: Ring>(&self, p: &Poly<R::Elem>, target: &PolyRing<S>, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S::Elem> {
        target.poly(p.coeffs.iter().map(f).collect())
    }

    pub fn eval(&self, p: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        p.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    pub fn derivative(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.poly(
            p.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.base.mul(&self.base.from_int(i as i64), c))
                .collect(),
        )
    }

    /// `p(q(v))`.
    pub fn compose(&self, p: &Poly<R::Elem>, q: &Poly<R::Elem>) -> Poly<R::Elem> {
        p.coeffs.iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, q), &self.constant(c.clone()))
        })
    }

    /// Division by a polynomial with unit leading coefficient `lead_inv^{-1}`.
    fn divrem_with(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>, lead_inv: &R::Elem) -> (Poly<R::Elem>, Poly<R::Elem>) {
        let db = b.coeffs.len() - 1;
        if a.coeffs.len() <= db {
            return (self.zero(), a.clone());
        }
        let mut r = a.coeffs.clone();
        let mut q = vec![self.base.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.base.mul(&r[i + db], lead_inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !self.base.is_zero(bj) {
                    r[i + j] = self.base.sub(&r[i + j], &self.base.mul(&c, bj));
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (self.poly(q), self.poly(r))
    }

    /// Quotient and remainder by a monic divisor; works over any ring.
    pub fn divrem_monic(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> (Poly<R::Elem>, Poly<R::Elem>) {
        assert!(self.is_monic(b), "divisor must be monic");
        self.divrem_with(a, b, &self.base.one())
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly { coeffs: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = self.base.add(c, s);
        }
        self.poly(coeffs)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !self.base.is_zero(bj) {
                    out[i + j] = self.base.add(&out[i + j], &self.base.mul(ai, bj));
                }
            }
        }
        self.poly(out)
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
}

impl<F: Field> PolyRing<F> {
    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let lead = b.lead().expect("division by the zero polynomial");
        let inv = self.base.inv(lead).expect("nonzero leading coefficient");
        self.divrem_with(a, b, &inv)
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divrem(a, b).1
    }

    /// Quotient of an exact division; `None` if `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        match p.lead() {
            None => p.clone(),
            Some(l) => self.scale(p, &self.base.inv(l).expect("nonzero")),
        }
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` the monic gcd.
    pub fn xgcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = self.base.inv(l).expect("nonzero");
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    /// `a^e mod m`.
    pub fn powmod(&self, a: &Poly<F::Elem>, mut e: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
            e >>= 1;
            if e > 0 {
                base = self.rem(&self.mul(&base, &base), m);
            }
        }
        acc
    }
}

impl PolyRing<FieldCtx> {
    pub fn field(&self) -> &FieldCtx {
        &self.base
    }

    pub fn random_poly<G: rand::Rng + ?Sized>(&self, rng: &mut G, max_degree: usize) -> FqPoly {
        self.poly((0..=max_degree).map(|_| self.base.random(rng)).collect())
    }

    /// Distinct-degree irreducibility test: `f` of degree `d` is irreducible
    /// iff `gcd(v^{Q^i} - v, f) = 1` for all `i <= d/2`.
    pub fn is_irreducible(&self, f: &FqPoly) -> bool {
        let d = match f.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let q = self.base.size();
        let x = self.var();
        let mut h = x.clone();
        for _ in 1..=d / 2 {
            h = self.powmod(&h, q, f);
            if self.gcd(&self.sub(&h, &x), f).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Distinct roots of a nonzero polynomial, sorted in enumeration order.
    pub fn roots(&self, f: &FqPoly) -> Vec<Fe> {
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic(f);
        let x = self.var();
        let frob = self.powmod(&x, self.base.size(), &f);
        let split = self.gcd(&self.sub(&frob, &x), &f);
        let mut roots: Vec<Fe> = factor::equal_degree(self, &split, 1)
            .into_iter()
            .map(|lin| self.base.neg(&lin.coeffs[0]))
            .collect();
        roots.sort();
        roots
    }

    /// Full factorization into the leading coefficient and sorted
    /// `(monic irreducible, multiplicity)` pairs.
    pub fn factor(&self, f: &FqPoly) -> crate::Result<(Fe, Vec<(FqPoly, u32)>)> {
        factor::factor(self, f)
    }
}

#[cfg(test)]
mod tests;
