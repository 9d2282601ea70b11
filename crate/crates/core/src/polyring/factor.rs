//! Square-free, distinct-degree and Cantor–Zassenhaus equal-degree
//! factorization over finite fields.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{poly_sort_key, FqPoly, FqPolyRing};
use crate::error::{Error, Result};
use crate::ffield::Fe;
use crate::ring::Ring;

/// Seed of the splitting generator. Every equal-degree split restarts from
/// it, so a given input always factors along the same path.
pub const FACTOR_SEED: u64 = 0x00C4_2117_2FAC_7002;

pub(super) fn factor(ring: &FqPolyRing, f: &FqPoly) -> Result<(Fe, Vec<(FqPoly, u32)>)> {
    let lead = *f.lead().ok_or(Error::ZeroPolynomial("factorization"))?;
    let monic = ring.monic(f);
    let mut acc: BTreeMap<(usize, Vec<u64>), (FqPoly, u32)> = BTreeMap::new();
    for (part, mult) in square_free(ring, &monic) {
        for (block, deg) in distinct_degree(ring, &part) {
            for irr in equal_degree(ring, &block, deg) {
                acc.entry(poly_sort_key(&irr))
                    .and_modify(|e| e.1 += mult)
                    .or_insert((irr, mult));
            }
        }
    }
    Ok((lead, acc.into_values().collect()))
}

/// Square-free decomposition of a monic polynomial: pairwise coprime
/// square-free parts with their multiplicities.
pub(super) fn square_free(ring: &FqPolyRing, f: &FqPoly) -> Vec<(FqPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let field = ring.field();
    let p = field.p();
    let one = ring.one();
    let df = ring.derivative(f);
    let mut c = ring.gcd(f, &df);
    let mut w = ring.div_exact(f, &c).expect("gcd divides");
    let mut i = 1u32;
    while w != one {
        let y = ring.gcd(&w, &c);
        let z = ring.div_exact(&w, &y).expect("gcd divides");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = ring.div_exact(&c, &y).expect("gcd divides");
        w = y;
    }
    if c != one {
        // c is a p-th power: c(v) = g(v)^p with g = sum a_{ip}^{1/p} v^i
        let root_exp = field.size() / p;
        let coeffs: Vec<Fe> = c
            .coeffs()
            .iter()
            .step_by(p as usize)
            .map(|a| field.pow(a, root_exp))
            .collect();
        let g = ring.poly(coeffs);
        for (part, m) in square_free(ring, &g) {
            out.push((part, m * p as u32));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree.
pub(super) fn distinct_degree(ring: &FqPolyRing, f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    let q = ring.field().size();
    let x = ring.var();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = ring.powmod(&h, q, &rest);
        let g = ring.gcd(&ring.sub(&h, &x), &rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = ring.div_exact(&rest, &g).expect("gcd divides");
            h = ring.rem(&h, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus: all monic irreducible factors of a square-free monic
/// `f` whose irreducible factors all have degree `r`.
pub(crate) fn equal_degree(ring: &FqPolyRing, f: &FqPoly, r: usize) -> Vec<FqPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut out = Vec::new();
    split_rec(ring, f, r, &mut rng, &mut out);
    out.sort_by_key(poly_sort_key);
    out
}

fn split_rec(ring: &FqPolyRing, f: &FqPoly, r: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FqPoly>) {
    let d = match f.degree() {
        None | Some(0) => return,
        Some(d) => d,
    };
    if d == r {
        out.push(f.clone());
        return;
    }
    loop {
        let a = ring.random_poly(rng, d - 1);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = splitting_element(ring, &a, f, r);
        let g = ring.gcd(&b, f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < d {
            let h = ring.div_exact(f, &g).expect("gcd divides");
            split_rec(ring, &g, r, rng, out);
            split_rec(ring, &h, r, rng, out);
            return;
        }
    }
}

/// For odd `Q`: `a^{(Q^r - 1)/2} - 1`, computed as the norm-like product
/// `a a^Q ... a^{Q^{r-1}}` raised to `(Q-1)/2`. In characteristic 2 the
/// absolute trace `a + a^2 + ... + a^{2^{tr-1}}` plays the same role.
fn splitting_element(ring: &FqPolyRing, a: &FqPoly, f: &FqPoly, r: usize) -> FqPoly {
    let field = ring.field();
    let q = field.size();
    if field.p() == 2 {
        let steps = field.degree() * r;
        let mut term = a.clone();
        let mut acc = a.clone();
        for _ in 1..steps {
            term = ring.rem(&ring.mul(&term, &term), f);
            acc = ring.add(&acc, &term);
        }
        return acc;
    }
    let mut conj = a.clone();
    let mut prod = a.clone();
    for _ in 1..r {
        conj = ring.powmod(&conj, q, f);
        prod = ring.rem(&ring.mul(&prod, &conj), f);
    }
    let b = ring.powmod(&prod, (q - 1) / 2, f);
    ring.sub(&b, &ring.one())
}
