//! End-to-end acceptance checks shared by the `acceptance` test target and
//! `cyclo selftest`. Tolerances and time limits are pinned here.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{gcd, prime_power};
use crate::carlitz::{unit_group, CarlitzModule};
use crate::error::Result;
use crate::ffield::{field_create, FieldCtx, Fe};
use crate::kummer::{
    canonical_automorphisms, characterize, compose, genus_hurwitz, kummer_generator, orbit_census,
    orbit_constraint_scan, carlitz_model_witness, rational_places, subfield_genus, Automorphism, KummerCurve, ShortOrbit,
    SubfieldGenus, Verdict,
};
use crate::polyring::parse_expr;
use crate::zeta::{count_points, verify_genus};

/// Fields used by the genus, place, orbit and scan checks.
pub const SMALL_Q: [u64; 8] = [3, 4, 5, 7, 8, 9, 11, 13];
pub const CARLITZ_PAIRS: usize = 100;
pub const CARLITZ_MAX_DEGREE: usize = 3;
pub const MODEL_POINTS: usize = 1000;
/// Known failures: the check is faithful and red, with the reason shown.
pub const BLOCKED: &[(&str, &str)] = &[(
    "10",
    "v = 1/w turns v^3(v-1)(v-2)(v-3)(v-4) into 4(w^5 - w), so the curve is the canonical one in disguise",
)];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Outcome {
    pub fn blocked_reason(&self) -> Option<&'static str> {
        BLOCKED.iter().find(|(id, _)| *id == self.id).map(|(_, why)| *why)
    }

    /// A failure not listed in `BLOCKED`, or a listed one that now passes.
    pub fn unexpected(&self) -> bool {
        self.passed == self.blocked_reason().is_some()
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let limit = self.limit.map(|l| format!(" / limit {:.0?}", l)).unwrap_or_default();
        let mut s = format!(
            "{status} [{:>2}] {} ({:.2?}{limit}): {}",
            self.id, self.title, self.elapsed, self.detail
        );
        if let Some(why) = self.blocked_reason() {
            s.push_str(&format!(" [known: {why}]"));
        }
        s
    }
}

fn fq(q: u64) -> FieldCtx {
    let (p, d) = prime_power(q).expect("prime power");
    field_create(p, d as usize).expect("valid field")
}

fn canonical(q: u64) -> KummerCurve {
    KummerCurve::canonical(&fq(q), Fe::ONE, 1).expect("canonical curve")
}

type Check = fn(u64) -> Result<(bool, String)>;

/// Runs every check, reporting each outcome as soon as it is known.
pub fn run(long: bool, seed: u64, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let secs = Duration::from_secs;
    let mut table: Vec<(&'static str, &'static str, Option<Duration>, Check)> = vec![
        ("1", "genus of the canonical curve", Some(secs(1)), genus_check),
        ("2", "q + 1 rational places by ramification and enumeration", Some(secs(5)), places_check),
        ("3", "zeta verification for q = 3, 4", Some(secs(30)), zeta_check),
    ];
    if long {
        table.push(("3L", "zeta verification for q = 5", Some(secs(15 * 60)), zeta_long_check));
    }
    table.extend([
        ("4", "Carlitz additivity and multiplicativity", None, carlitz_check as Check),
        ("5", "torsion degree and generator equation", None, torsion_check),
        ("6", "unit group of F_q[x]/(x^2)", None, units_check),
        ("7", "orbit census of the canonical group", None, census_check),
        ("8", "characterization round trip", Some(secs(120)), round_trip_check),
        ("9", "Carlitz to Kummer model witness", None, carlitz_model_check),
        ("10", "negative control fails condition (A)", None, negative_control_check),
        ("11", "fixed field of the Kummer group is rational", None, subfield_check),
        ("12", "orbit constraint scan", None, scan_check),
    ]);
    let mut out = Vec::new();
    for (id, title, limit, check) in table {
        let start = Instant::now();
        let result = check(seed);
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if let Some(l) = limit {
            if elapsed > l {
                passed = false;
                detail.push_str("; over the time limit");
            }
        }
        let o = Outcome { id, title, passed, detail, elapsed, limit };
        report(&o);
        out.push(o);
    }
    out
}

fn genus_check(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for q in SMALL_Q {
        let g = genus_hurwitz(&canonical(q)).genus;
        let expected = 1 + q as i64 * (q as i64 - 3) / 2;
        if g != expected {
            bad.push(format!("q={q}: {g} != {expected}"));
        }
    }
    Ok(summary(bad, SMALL_Q.len(), "fields"))
}

fn places_check(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for q in SMALL_Q {
        let c = canonical(q);
        let (rule, counted) = (rational_places(&c, 1)?, count_points(&c, 1)?);
        if rule != q + 1 || counted != q + 1 {
            bad.push(format!("q={q}: rule {rule}, enumeration {counted}"));
        }
    }
    Ok(summary(bad, SMALL_Q.len(), "fields"))
}

fn zeta_check(_: u64) -> Result<(bool, String)> {
    let three = verify_genus(&canonical(3))?;
    let four = verify_genus(&canonical(4))?;
    let ok = three.passed
        && three.genus == 1
        && three.report.counts.get(1) == Some(&16)
        && four.passed
        && four.genus == 3
        && four.report.counts.len() == 6;
    Ok((
        ok,
        format!("q=3 L={:?} counts={:?}; q=4 L={:?} counts={:?}", three.report.lpoly, three.report.counts, four.report.lpoly, four.report.counts),
    ))
}

fn zeta_long_check(_: u64) -> Result<(bool, String)> {
    let five = verify_genus(&canonical(5))?;
    Ok((
        five.passed && five.genus == 6 && five.report.counts.len() == 12,
        format!("q=5 L={:?}", five.report.lpoly),
    ))
}

fn carlitz_check(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for q in [3, 4, 5] {
        let m = CarlitzModule::new(fq(q));
        for _ in 0..CARLITZ_PAIRS {
            let f = m.poly_ring().random_poly(&mut rng, CARLITZ_MAX_DEGREE);
            let g = m.poly_ring().random_poly(&mut rng, CARLITZ_MAX_DEGREE);
            let r = m.axiom_check(&f, &g);
            if !(r.additive && r.multiplicative) {
                bad.push(format!("q={q}: {:?}", r.first_difference));
            }
        }
    }
    Ok(summary(bad, 3 * CARLITZ_PAIRS, "pairs"))
}

fn torsion_check(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let qs = [2, 3, 4, 5, 7, 8, 9];
    for q in qs {
        let m = CarlitzModule::new(fq(q));
        let t = m.torsion_polynomial(&m.poly_ring().monomial(Fe::ONE, 2))?;
        let generator_ok = t.generator.as_ref().is_some_and(|g| g.exact_division && g.matches_expected);
        if t.degree_u != q * q || t.torsion.degree() != Some((q * q) as usize) || !generator_ok {
            bad.push(format!("q={q}: degree {}, generator {generator_ok}", t.degree_u));
        }
    }
    Ok(summary(bad, qs.len(), "fields"))
}

fn units_check(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13] {
        let u = unit_group(q, 1)?;
        if u.order != q * (q - 1) || !u.abelian || u.matches_additive_times_multiplicative != Some(true) {
            bad.push(format!("q={q}: order {} factors {:?}", u.order, u.invariant_factors));
        }
    }
    Ok(summary(bad, 9, "fields"))
}

fn census_check(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for q in SMALL_Q {
        let c = canonical(q);
        let group = canonical_automorphisms(&c)?;
        let census = orbit_census(&c, &group)?;
        let mut short: Vec<(u64, u64)> =
            census.orbits.iter().filter(|o| o.short).map(|o| (o.size, o.stabilizer_order)).collect();
        short.sort_unstable_by(|a, b| b.cmp(a));
        if census.group_order != q * (q - 1) || short != [(q, q - 1), (1, q * (q - 1))] {
            bad.push(format!("q={q}: |G|={} short={short:?}", census.group_order));
        }
    }
    Ok(summary(bad, SMALL_Q.len(), "fields"))
}

fn round_trip_check(seed: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut total = 0;
    for q in [5, 7, 9, 11, 13] {
        let field = fq(q);
        for n in (1..=q - 2).filter(|&n| gcd(n, q - 1) == 1) {
            for lambda in field.elements().skip(1) {
                total += 1;
                let h = KummerCurve::canonical(&field, lambda, n as i64)?.h().clone();
                match characterize(&field, &h, None, seed)? {
                    Verdict::Isomorphic { witness, .. }
                        if witness.transcript.passed
                            && witness.transcript.points_tested == crate::kummer::WITNESS_POINTS => {}
                    other => bad.push(format!("q={q} n={n} lambda={}: {:?}", lambda.index(), other.failed_condition())),
                }
            }
        }
    }
    Ok(summary(bad, total, "curves"))
}

fn carlitz_model_check(seed: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut total = 0;
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let field = fq(q);
        for lambda in field.elements().skip(1) {
            total += 1;
            let r = carlitz_model_witness(q, lambda, MODEL_POINTS, seed)?;
            let symbolic_ok = r.symbolic_forward && r.symbolic_inverse;
            let dynamic_ok = r.dynamic_passed && r.carlitz_points == MODEL_POINTS && r.kummer_points == MODEL_POINTS;
            // the symbolic reduction is required for q <= 4 only
            if !dynamic_ok || (q <= 4 && !symbolic_ok) {
                bad.push(format!("q={q} lambda={}: symbolic {symbolic_ok} dynamic {dynamic_ok}", lambda.index()));
            }
        }
    }
    Ok(summary(bad, total, "(q, lambda) pairs"))
}

fn negative_control_check(seed: u64) -> Result<(bool, String)> {
    let field = fq(5);
    let h = parse_expr(&field, "v^3*(v-1)*(v-2)*(v-3)*(v-4)")?;
    let verdict = characterize(&field, &h, None, seed)?;
    Ok(match verdict {
        Verdict::FailsA { genus, rational_places, evidence } => (
            genus == 6 && rational_places == 6,
            format!("genus {genus}, {rational_places} places, fails (A) after {} automorphisms", evidence.automorphisms_found),
        ),
        Verdict::Isomorphic { genus, rational_places, condition_a, .. } => (
            false,
            format!(
                "genus {genus}, {rational_places} places, but (A) holds with I fixing {:?}; verdict isomorphic",
                condition_a.fixed_points
            ),
        ),
        other => (false, format!("verdict {:?}", other.failed_condition())),
    })
}

fn subfield_check(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for q in SMALL_Q {
        let c = canonical(q);
        let sigma = kummer_generator(&c);
        let mut h: Vec<Automorphism> = vec![Automorphism::identity(&c)];
        for _ in 1..q - 1 {
            h.push(compose(&c, h.last().expect("nonempty"), &sigma));
        }
        let census = orbit_census(&c, &h)?;
        let short: Vec<ShortOrbit> = census.orbits.iter().filter(|o| o.short).map(|o| ShortOrbit::new(o.size)).collect();
        let genus = genus_hurwitz(&c).genus as u64;
        let (p, _) = prime_power(q).expect("prime power");
        let g = subfield_genus(genus, census.group_order, p, &short)?;
        if g != (SubfieldGenus::Exact { genus: 0 }) || short.len() as u64 != q + 1 {
            bad.push(format!("q={q}: {g:?} from {} short orbits", short.len()));
        }
    }
    Ok(summary(bad, SMALL_Q.len(), "fields"))
}

fn scan_check(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for q in SMALL_Q {
        let s = orbit_constraint_scan(q)?;
        let has_q_and_1 = s.survivors.iter().any(|p| p[..] == [q, 1]);
        let long = s.survivors.iter().filter(|p| p.len() >= 4).count();
        if !has_q_and_1 || long > 0 {
            bad.push(format!("q={q}: {{q,1}} present {has_q_and_1}, {long} patterns with k >= 4"));
        }
    }
    Ok(summary(bad, SMALL_Q.len(), "fields"))
}

fn summary(bad: Vec<String>, total: usize, unit: &str) -> (bool, String) {
    if bad.is_empty() {
        (true, format!("{total} {unit} ok"))
    } else {
        (false, format!("{} of {total} {unit} failed: {}", bad.len(), bad.join("; ")))
    }
}
