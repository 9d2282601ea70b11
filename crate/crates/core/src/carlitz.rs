//! The Carlitz module over `F_q[x]`: `C_x(u) = u^q + x u`, extended to a ring
//! homomorphism `f -> C_f` into `F_q`-linear polynomials in `u`.

use serde::Serialize;

use crate::arith::{checked_pow, prime_power};
use crate::error::{Error, Result};
use crate::ffield::{field_create, FieldCtx, Fe};
use crate::group::{abelian_invariants, additive_times_multiplicative, greedy_generators, AbelianInvariants};
use crate::polyring::{format_poly, FqPoly, FqPolyRing, Poly, PolyRing};
use crate::ring::Ring;

/// `u -> sum_i c_i(x) u^{q^i}`; trailing zero coefficients trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearizedOperator {
    coeffs: Vec<FqPoly>,
}

impl LinearizedOperator {
    pub fn coeffs(&self) -> &[FqPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `q`-degree: the largest `i` with `c_i != 0`.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

/// Polynomials in `u` over `F_q[x]`.
pub type TorsionRing = PolyRing<FqPolyRing>;
pub type TorsionPoly = Poly<FqPoly>;

/// Result of checking `f -> C_f` on a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub additive: bool,
    pub multiplicative: bool,
    pub commutative: bool,
    /// `(law, index)` of the first coefficient where a law fails.
    pub first_difference: Option<(String, usize)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.additive && self.multiplicative && self.commutative
    }
}

#[derive(Clone, Debug)]
pub struct CarlitzModule {
    ring: FqPolyRing,
    q: u64,
}

impl CarlitzModule {
    pub fn new(field: FieldCtx) -> Self {
        let q = field.size();
        CarlitzModule { ring: PolyRing::new(field), q }
    }

    pub fn field(&self) -> &FieldCtx {
        self.ring.field()
    }

    pub fn poly_ring(&self) -> &FqPolyRing {
        &self.ring
    }

    fn trim(&self, mut coeffs: Vec<FqPoly>) -> LinearizedOperator {
        while coeffs.last().is_some_and(FqPoly::is_zero) {
            coeffs.pop();
        }
        LinearizedOperator { coeffs }
    }

    pub fn zero(&self) -> LinearizedOperator {
        LinearizedOperator { coeffs: Vec::new() }
    }

    /// `C_x`.
    pub fn c_x(&self) -> LinearizedOperator {
        self.trim(vec![self.ring.var(), self.ring.one()])
    }

    pub fn add(&self, a: &LinearizedOperator, b: &LinearizedOperator) -> LinearizedOperator {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.ring.zero();
        self.trim(
            (0..n)
                .map(|i| {
                    let x = a.coeffs.get(i).unwrap_or(&zero);
                    let y = b.coeffs.get(i).unwrap_or(&zero);
                    self.ring.add(x, y)
                })
                .collect(),
        )
    }

    /// Left multiplication by a polynomial in `x`.
    pub fn scale(&self, c: &FqPoly, a: &LinearizedOperator) -> LinearizedOperator {
        self.trim(a.coeffs.iter().map(|ai| self.ring.mul(c, ai)).collect())
    }

    /// `b(x)^{q^i} = b(x^{q^i})`, since the coefficients lie in `F_q`.
    fn frobenius_poly(&self, b: &FqPoly, i: usize) -> FqPoly {
        if i == 0 || b.is_zero() {
            return b.clone();
        }
        let step = self.q.pow(i as u32) as usize;
        let deg = b.degree().unwrap_or(0);
        let mut coeffs = vec![Fe::ZERO; deg * step + 1];
        for (k, c) in b.coeffs().iter().enumerate() {
            coeffs[k * step] = *c;
        }
        self.ring.poly(coeffs)
    }

    /// `(a o b)(u) = a(b(u))`: `c_{i+j} += a_i b_j(x)^{q^i}`.
    pub fn compose(&self, a: &LinearizedOperator, b: &LinearizedOperator) -> LinearizedOperator {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.ring.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                let term = self.ring.mul(ai, &self.frobenius_poly(bj, i));
                out[i + j] = self.ring.add(&out[i + j], &term);
            }
        }
        self.trim(out)
    }

    /// `C_f = sum_k a_k C_x^{(k)}` for `f = sum_k a_k x^k`.
    pub fn operator(&self, f: &FqPoly) -> LinearizedOperator {
        let cx = self.c_x();
        let mut power = self.trim(vec![self.ring.one()]);
        let mut acc = self.zero();
        for (k, a) in f.coeffs().iter().enumerate() {
            if k > 0 {
                power = self.compose(&cx, &power);
            }
            if *a != Fe::ZERO {
                acc = self.add(&acc, &self.scale(&self.ring.constant(*a), &power));
            }
        }
        acc
    }

    /// Checks `C_{f+g} = C_f + C_g` and `C_{fg} = C_f o C_g = C_g o C_f`.
    pub fn axiom_check(&self, f: &FqPoly, g: &FqPoly) -> AxiomReport {
        let (cf, cg) = (self.operator(f), self.operator(g));
        let sum_lhs = self.operator(&self.ring.add(f, g));
        let sum_rhs = self.add(&cf, &cg);
        let prod = self.operator(&self.ring.mul(f, g));
        let fg = self.compose(&cf, &cg);
        let gf = self.compose(&cg, &cf);
        let first = [("additive", &sum_lhs, &sum_rhs), ("multiplicative", &prod, &fg), ("commutative", &fg, &gf)]
            .into_iter()
            .find_map(|(law, x, y)| first_mismatch(x, y).map(|i| (law.to_string(), i)));
        AxiomReport {
            additive: sum_lhs == sum_rhs,
            multiplicative: prod == fg,
            commutative: fg == gf,
            first_difference: first,
        }
    }

    /// Evaluates an operator at `x = xv`, `u = uv` in `ext`, an extension of
    /// this module's field.
    pub fn eval(&self, op: &LinearizedOperator, ext: &FieldCtx, xv: Fe, uv: Fe) -> Fe {
        let mut upow = uv;
        let mut acc = Fe::ZERO;
        for c in &op.coeffs {
            let cv = crate::polyring::eval_lifted(self.field(), ext, c, xv);
            acc = ext.add(&acc, &ext.mul(&cv, &upow));
            upow = ext.pow(&upow, self.q);
        }
        acc
    }

    /// The operator as a polynomial in `u`: coefficient `c_i` at `u^{q^i}`.
    pub fn as_u_poly(&self, op: &LinearizedOperator) -> TorsionPoly {
        let tr = TorsionRing::new(self.ring.clone());
        let Some(top) = op.q_degree() else {
            return tr.zero();
        };
        let mut coeffs = vec![self.ring.zero(); self.q.pow(top as u32) as usize + 1];
        for (i, c) in op.coeffs.iter().enumerate() {
            coeffs[self.q.pow(i as u32) as usize] = c.clone();
        }
        tr.poly(coeffs)
    }

    /// Torsion data for `M = x^k`, `k >= 1`.
    pub fn torsion_polynomial(&self, m: &FqPoly) -> Result<CarlitzModulus> {
        let k = match m.coeffs().split_last() {
            Some((lead, rest)) if *lead == Fe::ONE && rest.iter().all(|c| *c == Fe::ZERO) && !rest.is_empty() => rest.len(),
            _ => return Err(Error::ModulusNotPowerOfX(format_poly(self.field(), m, 'x'))),
        };
        let deg_u = checked_pow(self.q, k as u64)
            .filter(|&d| d <= 1 << 16)
            .ok_or(Error::Budget { what: "torsion polynomial degree", size: (self.q as u128).pow(k as u32), limit: 1 << 16 })?;
        let tr = TorsionRing::new(self.ring.clone());
        let op = self.operator(m);
        let torsion = self.as_u_poly(&op);
        debug_assert_eq!(torsion.degree(), Some(deg_u as usize));
        let generator = if k >= 2 {
            let lower = self.as_u_poly(&self.operator(&self.ring.monomial(Fe::ONE, k - 1)));
            let (quotient, remainder) = tr.divrem_monic(&torsion, &lower);
            // w^{q-1} + x with w = T_{x^{k-1}}(u), expanded independently
            let expected = tr.add(&tr.pow(&lower, self.q - 1), &tr.constant(self.ring.var()));
            Some(GeneratorEquation {
                exact_division: remainder.is_zero(),
                matches_expected: quotient == expected,
                quotient,
            })
        } else {
            None
        };
        Ok(CarlitzModulus {
            k,
            operator: op,
            torsion,
            degree_u: deg_u,
            generator,
        })
    }
}

fn first_mismatch(a: &LinearizedOperator, b: &LinearizedOperator) -> Option<usize> {
    let n = a.coeffs.len().max(b.coeffs.len());
    (0..n).find(|&i| a.coeffs.get(i) != b.coeffs.get(i))
}

#[derive(Clone, Debug)]
pub struct GeneratorEquation {
    /// `T_{x^k} / T_{x^{k-1}}` as a polynomial in `u`.
    pub quotient: TorsionPoly,
    pub exact_division: bool,
    /// Whether the quotient equals `w^{q-1} + x`, `w = T_{x^{k-1}}(u)`.
    pub matches_expected: bool,
}

#[derive(Clone, Debug)]
pub struct CarlitzModulus {
    /// `M = x^k`.
    pub k: usize,
    pub operator: LinearizedOperator,
    pub torsion: TorsionPoly,
    pub degree_u: u64,
    pub generator: Option<GeneratorEquation>,
}

/// Operator as `(i, c_i)` pairs with `c_i` written in `x`.
pub fn operator_terms(field: &FieldCtx, op: &LinearizedOperator) -> Vec<(usize, String)> {
    op.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, format_poly(field, c, 'x')))
        .collect()
}

/// Largest unit group enumerated: `13^2 * 12` elements.
pub const MAX_UNIT_GROUP: u64 = 13 * 13 * 12;

/// The unit group of `F_q[x]/(x^{n+1})`.
#[derive(Clone, Debug, Serialize)]
pub struct UnitGroup {
    pub q: u64,
    pub n: usize,
    pub order: u64,
    pub exponent: u64,
    pub invariant_factors: Vec<u64>,
    pub primary_factors: Vec<u64>,
    /// Generators as coefficient vectors `a_0, ..., a_n` of field-element indices.
    pub generators: Vec<Vec<u64>>,
    pub abelian: bool,
    /// Only meaningful for `n = 1`: invariant factors equal those of `(F_q,+) x F_q^*`.
    pub matches_additive_times_multiplicative: Option<bool>,
    #[serde(skip)]
    pub elements: Vec<Vec<Fe>>,
    #[serde(skip)]
    field: Option<FieldCtx>,
}

impl UnitGroup {
    /// Product of two units modulo `x^{n+1}`.
    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        truncated_mul(self.field.as_ref().expect("field"), a, b)
    }
}

fn truncated_mul(field: &FieldCtx, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let len = a.len();
    let mut out = vec![Fe::ZERO; len];
    for (i, ai) in a.iter().enumerate() {
        if *ai == Fe::ZERO {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] = field.add(&out[i + j], &field.mul(ai, bj));
        }
    }
    out
}

/// Enumerates `(F_q[x]/(x^{n+1}))^*` and decomposes it by order census.
pub fn unit_group(q: u64, n: usize) -> Result<UnitGroup> {
    let (p, t) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if n == 0 {
        return Err(Error::InvalidArgument("unit group needs n >= 1".into()));
    }
    let order = checked_pow(q, n as u64).and_then(|x| x.checked_mul(q - 1)).unwrap_or(u64::MAX);
    if q > 13 || order > MAX_UNIT_GROUP {
        return Err(Error::Budget { what: "unit group enumeration", size: order as u128, limit: MAX_UNIT_GROUP as u128 });
    }
    let field = field_create(p, t as usize)?;
    let len = n + 1;
    let mut elements = Vec::with_capacity(order as usize);
    for idx in 0..q.pow(len as u32) {
        let v: Vec<Fe> = (0..len).map(|i| field.element((idx / q.pow(i as u32)) % q).expect("in range")).collect();
        if v[0] != Fe::ZERO {
            elements.push(v);
        }
    }
    let mut id = vec![Fe::ZERO; len];
    id[0] = Fe::ONE;
    let op = |a: &Vec<Fe>, b: &Vec<Fe>| truncated_mul(&field, a, b);
    let orders: Vec<u64> = elements.iter().map(|x| crate::group::element_order(x, &id, op)).collect();
    let inv: AbelianInvariants = abelian_invariants(&orders);
    let generators = greedy_generators(&elements, &orders, &id, op);
    let abelian = generators
        .iter()
        .enumerate()
        .all(|(i, a)| generators[i + 1..].iter().all(|b| op(a, b) == op(b, a)));
    let matches = (n == 1).then(|| inv.invariant_factors == additive_times_multiplicative(p, t));
    Ok(UnitGroup {
        q,
        n,
        order: inv.order,
        exponent: inv.exponent,
        invariant_factors: inv.invariant_factors,
        primary_factors: inv.primary_factors,
        generators: generators.iter().map(|g| g.iter().map(|c| c.index()).collect()).collect(),
        abelian,
        matches_additive_times_multiplicative: matches,
        elements,
        field: Some(field),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CarlitzInvariants {
    pub genus: u128,
    pub places: u128,
    pub group: u128,
}

/// Genus, number of rational places and Galois group order of the
/// cyclotomic function field with modulus `x^{deg_m}`.
pub fn carlitz_invariants(q: u64, deg_m: u32) -> Result<CarlitzInvariants> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if deg_m == 0 {
        return Err(Error::InvalidArgument("modulus degree must be at least 1".into()));
    }
    let n = deg_m as i128 - 1;
    let overflow = || Error::Budget { what: "invariant size", size: u128::MAX, limit: u128::MAX };
    let qn = (q as i128).checked_pow(n as u32).ok_or_else(overflow)?;
    let twice = qn.checked_mul(n * q as i128 - n - 2).ok_or_else(overflow)?;
    let genus = 1 + twice / 2;
    Ok(CarlitzInvariants {
        genus: genus as u128,
        places: (qn + 1) as u128,
        group: (qn * (q as i128 - 1)) as u128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn module(q: u64) -> CarlitzModule {
        let (p, t) = prime_power(q).unwrap();
        CarlitzModule::new(field_create(p, t as usize).unwrap())
    }

    fn xpoly(m: &CarlitzModule, c: &[i64]) -> FqPoly {
        m.poly_ring().poly(c.iter().map(|&x| m.field().from_int(x)).collect())
    }

    #[test]
    fn operator_examples() {
        for q in [3u64, 4, 5] {
            let m = module(q);
            let r = m.poly_ring();
            let cx = m.operator(&r.var());
            assert_eq!(cx.coeffs(), &[r.var(), r.one()]);
            assert_eq!(m.operator(&r.one()).coeffs(), &[r.one()]);
            let cx2 = m.operator(&r.monomial(Fe::ONE, 2));
            let xq_plus_x = r.add(&r.monomial(Fe::ONE, q as usize), &r.var());
            assert_eq!(cx2.coeffs(), &[r.monomial(Fe::ONE, 2), xq_plus_x, r.one()]);
        }
    }

    #[test]
    fn axiom_examples() {
        let m = module(5);
        let x = xpoly(&m, &[0, 1]);
        let rep = m.axiom_check(&x, &x);
        assert!(rep.passed());
        assert_eq!(m.operator(&xpoly(&m, &[0, 2])), m.add(&m.c_x(), &m.c_x()));
        assert!(m.axiom_check(&xpoly(&m, &[1, 1]), &xpoly(&m, &[-1, 1])).passed());
    }

    #[test]
    fn operators_are_additive_on_points() {
        use rand::SeedableRng;
        let m = module(3);
        let ext = crate::ffield::field_extend(m.field(), 4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let op = m.operator(&xpoly(&m, &[2, 1, 1]));
        for _ in 0..50 {
            let (xv, a, b) = (ext.random(&mut rng), ext.random(&mut rng), ext.random(&mut rng));
            let lhs = m.eval(&op, &ext, xv, ext.add(&a, &b));
            let rhs = ext.add(&m.eval(&op, &ext, xv, a), &m.eval(&op, &ext, xv, b));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn torsion_examples() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let m = module(q);
            let r = m.poly_ring();
            for k in 1..=3usize {
                if q.pow(k as u32) > 1000 {
                    continue;
                }
                let t = m.torsion_polynomial(&r.monomial(Fe::ONE, k)).unwrap();
                assert_eq!(t.torsion.degree(), Some(q.pow(k as u32) as usize));
                assert_eq!(t.degree_u, q.pow(k as u32));
                if let Some(g) = &t.generator {
                    assert!(g.exact_division && g.matches_expected, "q={q} k={k}");
                }
            }
        }
        let m = module(3);
        assert!(matches!(m.torsion_polynomial(&xpoly(&m, &[1, 1])), Err(Error::ModulusNotPowerOfX(_))));
        assert!(m.torsion_polynomial(&xpoly(&m, &[1])).is_err());
    }

    #[test]
    fn unit_group_examples() {
        let g = unit_group(3, 1).unwrap();
        assert_eq!(g.order, 6);
        let mut listed: Vec<Vec<u64>> = g.elements.iter().map(|e| e.iter().map(|c| c.index()).collect()).collect();
        listed.sort();
        assert_eq!(listed, vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![2, 0], vec![2, 1], vec![2, 2]]);
        assert_eq!(g.invariant_factors, vec![6]);
        assert_eq!(g.matches_additive_times_multiplicative, Some(true));

        let g4 = unit_group(4, 1).unwrap();
        assert_eq!((g4.order, g4.exponent), (12, 6));
        assert_eq!(g4.primary_factors, vec![2, 2, 3]);
        assert!(g4.abelian);
        let one = g4.mul(&[Fe::ONE, Fe::ZERO], &[Fe::ONE, Fe::ZERO]);
        assert_eq!(one, vec![Fe::ONE, Fe::ZERO]);

        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            for n in 1..=2usize {
                let g = unit_group(q, n).unwrap();
                assert_eq!(g.order, q.pow(n as u32) * (q - 1));
                assert_eq!(g.elements.len() as u64, g.order);
                let span = crate::group::generated_subgroup(
                    &g.generators.iter().map(|v| v.iter().map(|&i| Fe::from_index(i)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    &{
                        let mut id = vec![Fe::ZERO; n + 1];
                        id[0] = Fe::ONE;
                        id
                    },
                    |a, b| g.mul(a, b),
                );
                assert_eq!(span.len() as u64, g.order);
            }
        }
        assert!(unit_group(16, 1).unwrap_err().is_budget());
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(carlitz_invariants(3, 2).unwrap(), CarlitzInvariants { genus: 1, places: 4, group: 6 });
        assert_eq!(carlitz_invariants(5, 2).unwrap(), CarlitzInvariants { genus: 6, places: 6, group: 20 });
        assert_eq!(carlitz_invariants(3, 3).unwrap(), CarlitzInvariants { genus: 10, places: 10, group: 18 });
        assert!(carlitz_invariants(6, 2).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn homomorphism_on_random_pairs(q in prop::sample::select(vec![3u64, 4, 5]),
                                        f in prop::collection::vec(0u64..5, 0..5),
                                        g in prop::collection::vec(0u64..5, 0..5)) {
            let m = module(q);
            let r = m.poly_ring();
            let f = r.poly(f.iter().map(|&i| Fe::from_index(i % q)).collect());
            let g = r.poly(g.iter().map(|&i| Fe::from_index(i % q)).collect());
            let rep = m.axiom_check(&f, &g);
            prop_assert!(rep.passed(), "{:?}", rep);
        }
    }
}
