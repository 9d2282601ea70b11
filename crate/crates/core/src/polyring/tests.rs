use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::arith::prime_power;
use crate::error::Error;
use crate::ffield::field_create;

fn fq(q: u64) -> FieldCtx {
    let (p, t) = prime_power(q).unwrap();
    field_create(p, t as usize).unwrap()
}

fn ring(q: u64) -> FqPolyRing {
    PolyRing::new(fq(q))
}

fn int_poly(r: &FqPolyRing, coeffs: &[i64]) -> FqPoly {
    r.poly(coeffs.iter().map(|&c| r.field().from_int(c)).collect())
}

/// Brute-force oracle: a polynomial of degree <= 3 is irreducible iff it has
/// no root; for higher degree, trial division by every monic of degree <= d/2.
fn brute_irreducible(r: &FqPolyRing, f: &FqPoly) -> bool {
    let d = f.degree().unwrap();
    if d == 0 {
        return false;
    }
    let q = r.field().size();
    for k in 1..=d / 2 {
        for idx in 0..q.pow(k as u32) {
            let mut coeffs: Vec<Fe> = (0..k).map(|i| Fe::from_index((idx / q.pow(i as u32)) % q)).collect();
            coeffs.push(Fe::ONE);
            let g = r.poly(coeffs);
            if r.rem(f, &g).is_zero() {
                return false;
            }
        }
    }
    true
}

#[test]
fn factor_examples() {
    let r3 = ring(3);
    let f = int_poly(&r3, &[0, -1, 0, 1]);
    let (unit, parts) = r3.factor(&f).unwrap();
    assert_eq!(unit, Fe::ONE);
    let expected: Vec<(FqPoly, u32)> = [0, 1, 2].iter().map(|&a| (r3.linear(&r3.field().from_int(a)), 1)).collect();
    let mut got = parts.clone();
    got.sort_by_key(|(p, _)| poly_sort_key(p));
    let mut exp = expected;
    exp.sort_by_key(|(p, _)| poly_sort_key(p));
    assert_eq!(got, exp);

    let g = int_poly(&r3, &[1, 0, 1]);
    assert!(r3.is_irreducible(&g));
    assert_eq!(r3.factor(&g).unwrap().1, vec![(g.clone(), 1)]);

    let r5 = ring(5);
    let h = r5.pow(&int_poly(&r5, &[1, 0, 1]), 2);
    let (_, parts) = r5.factor(&h).unwrap();
    let two = r5.linear(&r5.field().from_int(2));
    let three = r5.linear(&r5.field().from_int(3));
    assert_eq!(parts.len(), 2);
    assert!(parts.contains(&(two, 2)));
    assert!(parts.contains(&(three, 2)));

    assert!(r5.factor(&r5.zero()).is_err());
}

#[test]
fn factor_with_pth_powers() {
    // (v+1)^9 (v^2+1)^3 over F_3 needs the p-th root step twice
    let r3 = ring(3);
    let a = r3.pow(&int_poly(&r3, &[1, 1]), 9);
    let b = r3.pow(&int_poly(&r3, &[1, 0, 1]), 3);
    let (_, parts) = r3.factor(&r3.mul(&a, &b)).unwrap();
    assert_eq!(parts, vec![(int_poly(&r3, &[1, 1]), 9), (int_poly(&r3, &[1, 0, 1]), 3)]);
    // v^4 + v^2 over F_2 = v^2 (v+1)^2
    let r2 = ring(2);
    let (_, parts) = r2.factor(&int_poly(&r2, &[0, 0, 1, 0, 1])).unwrap();
    assert_eq!(parts, vec![(r2.var(), 2), (int_poly(&r2, &[1, 1]), 2)]);
}

#[test]
fn random_factorizations_multiply_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [3u64, 4, 5, 7, 9] {
        let r = ring(q);
        for _ in 0..60 {
            let f = r.random_poly(&mut rng, 12);
            if f.is_zero() {
                continue;
            }
            let (unit, parts) = r.factor(&f).unwrap();
            let mut prod = r.constant(unit);
            for (p, m) in &parts {
                assert!(r.is_irreducible(p), "q={q} {p:?}");
                assert!(r.is_monic(p));
                prod = r.mul(&prod, &r.pow(p, *m as u64));
            }
            assert_eq!(prod, f);
        }
    }
}

#[test]
fn irreducibility_matches_trial_division() {
    for q in [2u64, 3, 4] {
        let r = ring(q);
        for d in 1..=4u32 {
            for idx in 0..q.pow(d) {
                let mut coeffs: Vec<Fe> = (0..d).map(|i| Fe::from_index((idx / q.pow(i)) % q)).collect();
                coeffs.push(Fe::ONE);
                let f = r.poly(coeffs);
                assert_eq!(r.is_irreducible(&f), brute_irreducible(&r, &f), "{f:?}");
            }
        }
    }
}

#[test]
fn roots_are_exactly_the_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for q in [4u64, 7, 9, 16] {
        let r = ring(q);
        for _ in 0..30 {
            let f = r.random_poly(&mut rng, 6);
            if f.degree().unwrap_or(0) == 0 {
                continue;
            }
            let brute: Vec<Fe> = r.field().elements().filter(|a| r.eval(&f, a) == Fe::ZERO).collect();
            assert_eq!(r.roots(&f), brute);
        }
    }
}

#[test]
fn valuations() {
    let f5 = fq(5);
    let r5 = PolyRing::new(f5.clone());
    let h = parse_expr(&f5, "2*(v^5-v)").unwrap();
    assert_eq!(h.valuation(&Place::at(&r5, f5.from_int(2))), 1);
    assert_eq!(h.valuation(&Place::Infinite), -5);
    let one = FactoredRationalFunction::one(&f5);
    assert_eq!(one.valuation(&Place::Infinite), 0);
    assert_eq!(one.valuation(&Place::at(&r5, Fe::ZERO)), 0);
}

#[test]
fn parse_examples() {
    let f5 = fq(5);
    let r5 = PolyRing::new(f5.clone());
    let h = parse_expr(&f5, "2*(v^5-v)^3").unwrap();
    assert_eq!(h.unit(), f5.from_int(2));
    let mut roots: Vec<u64> = h.factors().iter().map(|(p, e)| {
        assert_eq!(*e, 3);
        f5.neg(&p.coeffs()[0]).index()
    }).collect();
    roots.sort();
    assert_eq!(roots, vec![0, 1, 2, 3, 4]);
    // expand-and-refactor oracle
    let (num, den) = h.expand_parts();
    let v5v = int_poly(&r5, &[0, -1, 0, 0, 0, 1]);
    assert_eq!(num, r5.scale(&r5.pow(&v5v, 3), &f5.from_int(2)));
    assert_eq!(den, r5.one());

    let f3 = fq(3);
    let r3 = PolyRing::new(f3.clone());
    let g = parse_expr(&f3, "(v^2+1)/(v-1)").unwrap();
    assert_eq!(g.factors(), &[(int_poly(&r3, &[2, 1]), -1), (int_poly(&r3, &[1, 0, 1]), 1)]);

    let c = parse_expr(&f3, "v^0").unwrap();
    assert!(c.is_constant());
    assert_eq!(c.unit(), Fe::ONE);

    assert!(matches!(parse_expr(&f5, "7*v"), Err(Error::CoefficientOutOfField { .. })));
    assert!(matches!(parse_expr(&f5, "v +* 1"), Err(Error::Parse { pos: 3, .. })));
    assert!(matches!(parse_expr(&f5, "(v"), Err(Error::Parse { .. })));
    assert!(matches!(parse_expr(&f5, "v/(v-v)"), Err(Error::DivisionByZero)));
    assert!(parse_expr(&f5, "v-v").is_err());
    assert_eq!(parse_expr(&f5, "-v + 2*v").unwrap(), parse_expr(&f5, "v").unwrap());
    assert_eq!(parse_expr(&f5, "v^-2").unwrap(), parse_expr(&f5, "1/v^2").unwrap());

    let f9 = fq(9);
    let a = parse_expr(&f9, "[2,1]*v").unwrap();
    assert_eq!(f9.format_digits(a.unit()), "[2,1]");
    assert!(matches!(parse_expr(&f9, "[1,1,1]"), Err(Error::CoefficientOutOfField { .. })));
}

#[test]
fn printer_examples() {
    let f5 = fq(5);
    let h = parse_expr(&f5, "2*(v^5-v)^7*(v^2+2)^4").unwrap();
    assert_eq!(
        format_factored(&h),
        "2*v^7*(v+1)^7*(v+2)^7*(v+3)^7*(v+4)^7*(v^2+2)^4"
    );
    let g = parse_expr(&f5, "(v^2+2)/(3*v-3)").unwrap();
    assert_eq!(format_factored(&g), "2*(v^2+2)/(v+4)");
    assert_eq!(format_factored(&parse_expr(&f5, "1/v").unwrap()), "1/v");
}

#[test]
fn ratfunc_canonical_form() {
    let f5 = fq(5);
    let rf = RatFuncField::new(f5.clone());
    let r = rf.poly_ring().clone();
    let a = rf.frac(int_poly(&r, &[0, 2, 2]), int_poly(&r, &[0, 3])).unwrap();
    // (2v^2+2v)/(3v) = (2v+2)/3 = 4v + 4
    assert_eq!(a.num(), &int_poly(&r, &[4, 4]));
    assert_eq!(a.den(), &r.one());
    assert!(rf.frac(r.one(), r.zero()).is_err());
    let b = rf.inv(&a).unwrap();
    assert_eq!(rf.mul(&a, &b), rf.one());
}

fn arb_field() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 4, 5, 7, 9])
}

fn poly_from(r: &FqPolyRing, idx: &[u64]) -> FqPoly {
    let q = r.field().size();
    r.poly(idx.iter().map(|&i| Fe::from_index(i % q)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_axioms(q in arb_field(), a in prop::collection::vec(0u64..100, 0..8),
                   b in prop::collection::vec(0u64..100, 0..8), c in prop::collection::vec(0u64..100, 0..8)) {
        let r = ring(q);
        let (a, b, c) = (poly_from(&r, &a), poly_from(&r, &b), poly_from(&r, &c));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.add(&a, &r.neg(&a)), r.zero());
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
    }

    #[test]
    fn gcd_and_xgcd(q in arb_field(), a in prop::collection::vec(0u64..100, 0..10),
                    b in prop::collection::vec(0u64..100, 0..10)) {
        let r = ring(q);
        let (a, b) = (poly_from(&r, &a), poly_from(&r, &b));
        let g = r.gcd(&a, &b);
        prop_assert_eq!(&g, &r.gcd(&b, &a));
        if !g.is_zero() {
            prop_assert!(r.rem(&a, &g).is_zero());
            prop_assert!(r.rem(&b, &g).is_zero());
        }
        let (g2, s, t) = r.xgcd(&a, &b);
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
    }

    #[test]
    fn divrem_identity(q in arb_field(), a in prop::collection::vec(0u64..100, 0..12),
                       b in prop::collection::vec(0u64..100, 1..6)) {
        let r = ring(q);
        let (a, b) = (poly_from(&r, &a), poly_from(&r, &b));
        prop_assume!(!b.is_zero());
        let (quo, rem) = r.divrem(&a, &b);
        prop_assert_eq!(r.add(&r.mul(&quo, &b), &rem), a);
        prop_assert!(rem.degree() < b.degree());
    }

    #[test]
    fn print_parse_round_trip(q in arb_field(), unit in 1u64..100,
                              parts in prop::collection::vec((prop::collection::vec(0u64..100, 1..4), -4i64..5), 0..4)) {
        let field = fq(q);
        let r = PolyRing::new(field.clone());
        let unit = Fe::from_index(1 + unit % (q - 1));
        let mut f = FactoredRationalFunction::constant(&field, unit).unwrap();
        for (idx, e) in parts {
            let p = poly_from(&r, &idx);
            if p.is_zero() || e == 0 {
                continue;
            }
            f = f.mul(&FactoredRationalFunction::from_poly(&field, &p).unwrap().pow(e));
        }
        let text = format_factored(&f);
        prop_assert_eq!(parse_expr(&field, &text).unwrap(), f, "{}", text);
    }
}
