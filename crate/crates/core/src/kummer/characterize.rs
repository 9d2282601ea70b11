//! Deciding whether `y^{q-1} = h` is the `x^2` Carlitz cyclotomic field,
//! and producing an explicit isomorphism when it is.

use std::collections::HashSet;

use serde::Serialize;

use super::automorphism::{automorphism_search, compose, Automorphism, AutomorphismSummary, Mobius};
use super::isomorphism::{build_isomorphism, IsomorphismWitness};
use super::normalize::{equal_exponent_check, normalize_curve, EqualExponents, NormalizedCurve};
use super::ramification::{genus_hurwitz, rational_places};
use super::{curve_create, BasePoint, KummerCurve};
use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::group::{abelian_invariants, additive_times_multiplicative, element_order};
use crate::polyring::FactoredRationalFunction;
use crate::ring::{Field, Ring};

/// Outcome of the search for `G = <sigma> x I`, `I` elementary abelian of
/// order `q` commuting with `sigma: y -> zeta y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionA {
    pub holds: bool,
    /// `search` or `supplied`.
    pub source: &'static str,
    pub automorphisms_found: usize,
    /// Found automorphisms with `k = 1`, i.e. commuting with `sigma`.
    pub centralizer_size: usize,
    /// Order-`p` elements of the centralizer.
    pub order_p_elements: usize,
    /// Those acting on `v` by a translation.
    pub translation_type: usize,
    pub group_order: u64,
    pub invariant_factors: Vec<u64>,
    pub expected_invariant_factors: Vec<u64>,
    pub generators: Vec<AutomorphismSummary>,
    /// Base points fixed by every element of `I`.
    pub fixed_points: Vec<BasePoint>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// `q = 2`: the field is rational and there is nothing to decide.
    Trivial { q: u64 },
    Isomorphic {
        genus: i64,
        rational_places: u64,
        condition_a: ConditionA,
        normalized: NormalizedCurve,
        equal_exponents: EqualExponents,
        witness: IsomorphismWitness,
    },
    FailsB { genus: i64, expected: i64 },
    FailsC { genus: i64, rational_places: u64, expected: u64 },
    FailsA { genus: i64, rational_places: u64, evidence: ConditionA },
}

impl Verdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Verdict::Isomorphic { .. } | Verdict::Trivial { .. })
    }

    /// `"A"`, `"B"` or `"C"` for a failed condition.
    pub fn failed_condition(&self) -> Option<&'static str> {
        match self {
            Verdict::FailsA { .. } => Some("A"),
            Verdict::FailsB { .. } => Some("B"),
            Verdict::FailsC { .. } => Some("C"),
            _ => None,
        }
    }
}

/// Runs the full pipeline on `y^{q-1} = h_raw`. Supplied generators must be
/// automorphisms of the reduced model returned by `curve_create`.
pub fn characterize(
    field: &FieldCtx,
    h_raw: &FactoredRationalFunction,
    generators: Option<&[Automorphism]>,
    seed: u64,
) -> Result<Verdict> {
    let q = field.size();
    if q == 2 {
        return Ok(Verdict::Trivial { q });
    }
    let curve = curve_create(field, q - 1, h_raw)?;
    let genus = genus_hurwitz(&curve).genus;
    let expected_genus = 1 + (q as i64) * (q as i64 - 3) / 2;
    if genus != expected_genus {
        return Ok(Verdict::FailsB { genus, expected: expected_genus });
    }
    let places = rational_places(&curve, 1)?;
    if places != q + 1 {
        return Ok(Verdict::FailsC { genus, rational_places: places, expected: q + 1 });
    }
    let condition_a = match generators {
        Some(gens) => condition_a_from_generators(&curve, gens)?,
        None => find_condition_a_group(&curve)?,
    };
    if !condition_a.holds {
        return Ok(Verdict::FailsA { genus, rational_places: places, evidence: condition_a });
    }
    let normalized = normalize_curve(field, h_raw, &condition_a.fixed_points)?;
    let equal_exponents = equal_exponent_check(&normalized.curve);
    if !equal_exponents.passed {
        return Err(Error::Inconsistent(format!(
            "conditions hold but normalized exponents differ: {:?}",
            equal_exponents.exponents
        )));
    }
    let witness = build_isomorphism(&normalized.curve, seed)?;
    Ok(Verdict::Isomorphic {
        genus,
        rational_places: places,
        condition_a,
        normalized,
        equal_exponents,
        witness,
    })
}

/// `(v, y) -> (v, zeta y)` for a primitive `n`-th root of unity `zeta`.
pub fn kummer_generator(curve: &KummerCurve) -> Automorphism {
    let field = curve.field();
    let zeta = field.pow(&field.primitive_element(), (curve.q() - 1) / curve.n());
    Automorphism {
        mobius: Mobius::identity(),
        f: FactoredRationalFunction::constant(field, zeta).expect("nonzero"),
        k: 1,
    }
}

fn power(curve: &KummerCurve, t: &Automorphism, e: u64) -> Automorphism {
    let mut acc = Automorphism::identity(curve);
    for _ in 0..e {
        acc = compose(curve, &acc, t);
    }
    acc
}

fn mobius_order(field: &FieldCtx, m: &Mobius) -> u64 {
    let id = Mobius::identity();
    element_order(m, &id, |a, b| a.after(field, b))
}

fn commute(curve: &KummerCurve, a: &Automorphism, b: &Automorphism) -> bool {
    compose(curve, a, b) == compose(curve, b, a)
}

fn span(curve: &KummerCurve, gens: &[Automorphism]) -> HashSet<Automorphism> {
    crate::group::generated_subgroup(gens, &Automorphism::identity(curve), |a, b| compose(curve, a, b))
}

/// Exhaustive search, among automorphisms normalizing the Kummer group,
/// for an elementary abelian `p`-group `I` of order `q` commuting with
/// `sigma`. Then `<sigma> x I` has type `(F_q, +) x F_q^*`.
pub fn find_condition_a_group(curve: &KummerCurve) -> Result<ConditionA> {
    let field = curve.field();
    let q = curve.q();
    let p = field.p();
    let all = automorphism_search(curve)?;
    let all_set: HashSet<&Automorphism> = all.iter().collect();
    let centralizer: Vec<&Automorphism> = all.iter().filter(|t| t.k == 1).collect();

    // One lift of order p per parabolic Möbius map: the p-th power of any
    // lift is (id, c, 1) with c a root of unity, fixed by a constant twist.
    let mut candidates: Vec<Automorphism> = Vec::new();
    let mut seen = HashSet::new();
    let inv_p = mod_inverse(p, q - 1);
    for t in &centralizer {
        if t.mobius == Mobius::identity() || !seen.insert(t.mobius) || mobius_order(field, &t.mobius) != p {
            continue;
        }
        let pth = power(curve, t, p);
        debug_assert!(pth.f.is_constant() && pth.mobius == Mobius::identity());
        let c = pth.f.unit();
        let zeta = field.pow(&field.inv(&c).expect("nonzero"), inv_p);
        let lift = Automorphism { mobius: t.mobius, f: t.f.scale(zeta), k: 1 };
        if power(curve, &lift, p) == Automorphism::identity(curve) && all_set.contains(&lift) {
            candidates.push(lift);
        }
    }
    let translation_type = candidates.iter().filter(|t| t.mobius.is_translation()).count();

    let mut gens = Vec::new();
    let found = extend_elementary(curve, &candidates, 0, &mut gens, q);
    let sigma = kummer_generator(curve);
    let expected = expected_type(field);
    let mut report = ConditionA {
        holds: false,
        source: "search",
        automorphisms_found: all.len(),
        centralizer_size: centralizer.len(),
        order_p_elements: candidates.len(),
        translation_type,
        group_order: 0,
        invariant_factors: Vec::new(),
        expected_invariant_factors: expected.clone(),
        generators: Vec::new(),
        fixed_points: Vec::new(),
        note: "searched exhaustively among automorphisms normalizing <sigma>".into(),
    };
    if !found {
        report.note = format!(
            "no elementary abelian subgroup of order {q} commutes with sigma; {}",
            report.note
        );
        return Ok(report);
    }
    if !gens.iter().all(|g| commute(curve, g, &sigma)) {
        return Err(Error::Verification("k = 1 automorphism does not commute with sigma".into()));
    }
    // element orders of <sigma> x I, both factors verified above
    let n = curve.n();
    let mut orders = Vec::new();
    for j in 0..n {
        let o = n / crate::arith::gcd(j, n);
        orders.push(o);
        orders.extend(std::iter::repeat(o * p).take(q as usize - 1));
    }
    let inv = abelian_invariants(&orders);
    report.holds = inv.invariant_factors == expected;
    report.group_order = inv.order;
    report.invariant_factors = inv.invariant_factors;
    report.fixed_points = common_fixed_points(curve, &gens);
    report.generators = std::iter::once(&sigma).chain(&gens).map(|g| g.summary(field)).collect();
    Ok(report)
}

fn extend_elementary(curve: &KummerCurve, cands: &[Automorphism], start: usize, gens: &mut Vec<Automorphism>, q: u64) -> bool {
    let current = span(curve, gens);
    if current.len() as u64 == q {
        return true;
    }
    for i in start..cands.len() {
        let c = &cands[i];
        if current.contains(c) || !gens.iter().all(|g| commute(curve, g, c)) {
            continue;
        }
        gens.push(c.clone());
        if extend_elementary(curve, cands, i + 1, gens, q) {
            return true;
        }
        gens.pop();
    }
    false
}

fn common_fixed_points(curve: &KummerCurve, gens: &[Automorphism]) -> Vec<BasePoint> {
    let field = curve.field();
    curve
        .base_points()
        .into_iter()
        .filter(|&pt| gens.iter().all(|g| g.mobius.apply(field, pt) == pt))
        .collect()
}

fn expected_type(field: &FieldCtx) -> Vec<u64> {
    additive_times_multiplicative(field.p(), field.degree() as u32)
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    (1..m).find(|x| (a % m) * x % m == 1).expect("coprime")
}

/// Condition (A) for a user-supplied generating set: the generated group
/// must be abelian of order `q(q - 1)` and of the right type.
fn condition_a_from_generators(curve: &KummerCurve, gens: &[Automorphism]) -> Result<ConditionA> {
    let field = curve.field();
    let q = curve.q();
    let expected = expected_type(field);
    for g in gens {
        if !g.certificate_holds(curve) {
            return Err(Error::Verification(format!("supplied map {:?} is not an automorphism", g.summary(field))));
        }
    }
    let mut report = ConditionA {
        holds: false,
        source: "supplied",
        automorphisms_found: gens.len(),
        centralizer_size: gens.iter().filter(|g| g.k == 1).count(),
        order_p_elements: 0,
        translation_type: 0,
        group_order: 0,
        invariant_factors: Vec::new(),
        expected_invariant_factors: expected.clone(),
        generators: gens.iter().map(|g| g.summary(field)).collect(),
        fixed_points: Vec::new(),
        note: String::new(),
    };
    let limit = (q * (q - 1)) as usize;
    let group = bounded_span(curve, gens, limit);
    let Some(group) = group else {
        report.note = format!("generated group exceeds order {limit}");
        return Ok(report);
    };
    report.group_order = group.len() as u64;
    let abelian = gens.iter().all(|a| gens.iter().all(|b| commute(curve, a, b)));
    let id = Automorphism::identity(curve);
    let orders: Vec<u64> = group.iter().map(|t| element_order(t, &id, |a, b| compose(curve, a, b))).collect();
    let inv = abelian_invariants(&orders);
    report.order_p_elements = orders.iter().filter(|&&o| o == field.p()).count();
    let sylow: Vec<Automorphism> = group
        .iter()
        .zip(&orders)
        .filter(|(_, &o)| o == field.p())
        .map(|(t, _)| t.clone())
        .collect();
    report.translation_type = sylow.iter().filter(|t| t.mobius.is_translation()).count();
    report.fixed_points = common_fixed_points(curve, &sylow);
    report.holds = abelian && group.len() == limit && inv.invariant_factors == expected;
    report.invariant_factors = inv.invariant_factors;
    report.note = if abelian { "supplied generators".into() } else { "supplied generators do not commute".into() };
    Ok(report)
}

fn bounded_span(curve: &KummerCurve, gens: &[Automorphism], limit: usize) -> Option<Vec<Automorphism>> {
    let id = Automorphism::identity(curve);
    let mut seen: HashSet<Automorphism> = HashSet::from([id.clone()]);
    let mut order = vec![id];
    let mut i = 0;
    while i < order.len() {
        for g in gens {
            let y = compose(curve, &order[i], g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                order.push(y);
            }
        }
        i += 1;
    }
    Some(order)
}
