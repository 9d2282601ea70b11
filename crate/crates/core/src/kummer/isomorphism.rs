//! Explicit isomorphisms: twisted canonical curves to `u^{q-1} = lambda' (v^q - v)`,
//! and the Carlitz `x^2`-torsion model to the canonical curve.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::KummerCurve;
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::ffield::{field_create, field_extend, FieldCtx, Fe};
use crate::polyring::{format_element, int_bezout, PolyRing};
use crate::ring::{Field, Ring};

/// Round trips checked per witness.
pub const WITNESS_POINTS: usize = 100;
const WITNESS_EXTENSION: usize = 3;
const MODEL_EXTENSION: usize = 6;
/// Sampling attempts allowed per requested point before giving up.
const ATTEMPTS_PER_POINT: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub seed: u64,
    pub extension_degree: usize,
    pub points_tested: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForwardMap {
    pub u_expr: String,
    pub v_expr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseMap {
    pub y_expr: String,
    pub v_expr: String,
}

/// `u = y^a (v^q - v)^b` maps `y^{q-1} = lambda (v^q - v)^n` onto
/// `u^{q-1} = lambda^a (v^q - v)`, with inverse `y = lambda^b u^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsomorphismWitness {
    pub a: i64,
    pub b: i64,
    /// Coefficients of `lambda^a` over the prime field.
    pub lambda_target: Vec<u64>,
    pub forward: ForwardMap,
    pub inverse: InverseMap,
    pub transcript: Transcript,
}

fn monomial_expr(parts: &[(String, i64)]) -> String {
    let terms: Vec<String> = parts
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(base, e)| if *e == 1 { base.clone() } else { format!("{base}^{e}") })
        .collect();
    if terms.is_empty() {
        "1".into()
    } else {
        terms.join("*")
    }
}

fn signed_pow(field: &FieldCtx, x: Fe, e: i64) -> Fe {
    super::automorphism::signed_pow(field, x, e)
}

/// Witness for a curve `y^{q-1} = lambda (v^q - v)^n` with `gcd(n, q-1) = 1`.
pub fn build_isomorphism(curve: &KummerCurve, seed: u64) -> Result<IsomorphismWitness> {
    let field = curve.field();
    let q = curve.q();
    let s = match curve.canonical_exponent() {
        Some(s) if curve.n() == q - 1 => s,
        _ => return Err(Error::NotCanonical(crate::polyring::format_factored(curve.h()))),
    };
    if gcd(s.unsigned_abs(), q - 1) != 1 {
        return Err(Error::Incompatible(format!("exponent {s} is not prime to {}", q - 1)));
    }
    let (a, b, _) = int_bezout(s, q as i64 - 1)?;
    let lambda = curve.lambda();
    let target = signed_pow(field, lambda, a);
    let vq_v = format!("(v^{q}-v)");
    let y_coeff = signed_pow(field, lambda, b);
    let y_expr = {
        let mono = monomial_expr(&[("u".into(), s)]);
        if y_coeff == Fe::ONE {
            mono
        } else {
            format!("{}*{mono}", format_element(field, y_coeff))
        }
    };

    let ext = field_extend(field, WITNESS_EXTENSION)?;
    let lam = ext.embed(field, lambda);
    let lam_target = ext.embed(field, target);
    let lam_b = ext.embed(field, y_coeff);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut passed = true;
    let mut attempts = 0;
    while tested < WITNESS_POINTS {
        attempts += 1;
        if attempts > WITNESS_POINTS * ATTEMPTS_PER_POINT {
            return Err(Error::Budget {
                what: "isomorphism sample points",
                size: attempts as u128,
                limit: (WITNESS_POINTS * ATTEMPTS_PER_POINT) as u128,
            });
        }
        let v = ext.random(&mut rng);
        let t = ext.sub(&ext.pow(&v, q), &v);
        if t == Fe::ZERO {
            continue;
        }
        let rhs = ext.mul(&lam, &signed_pow(&ext, t, s));
        let Some(y0) = ext.nth_root(rhs, q - 1) else { continue };
        // spread over the fibre
        let zeta = ext.pow(&ext.random_nonzero(&mut rng), (ext.size() - 1) / (q - 1));
        let y = ext.mul(&y0, &zeta);
        tested += 1;

        let u = ext.mul(&signed_pow(&ext, y, a), &signed_pow(&ext, t, b));
        let on_target = ext.pow(&u, q - 1) == ext.mul(&lam_target, &t);
        let y_back = ext.mul(&lam_b, &signed_pow(&ext, u, s));
        let u_back = ext.mul(&signed_pow(&ext, y_back, a), &signed_pow(&ext, t, b));
        passed &= on_target && y_back == y && u_back == u;
    }
    let witness = IsomorphismWitness {
        a,
        b,
        lambda_target: field.digits(target),
        forward: ForwardMap {
            u_expr: monomial_expr(&[("y".into(), a), (vq_v, b)]),
            v_expr: "v".into(),
        },
        inverse: InverseMap { y_expr, v_expr: "v".into() },
        transcript: Transcript { seed, extension_degree: WITNESS_EXTENSION, points_tested: tested, passed },
    };
    if !passed {
        return Err(Error::Verification(format!("isomorphism round trip failed: {witness:?}")));
    }
    Ok(witness)
}

/// Checks of `u = 1/W`, `v = y/(lambda W)` with `W = y^q + x y`, from the
/// Carlitz model `W^{q-1} + x = 0` to `u^{q-1} = lambda (v^q - v)`, and of
/// the inverse `y = lambda v / u`, `x = -1/(lambda (v^q - v))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CarlitzModelReport {
    pub q: u64,
    pub lambda: String,
    pub seed: u64,
    pub extension_degree: usize,
    /// The cleared forward identity lies in the ideal of the Carlitz relation.
    pub symbolic_forward: bool,
    /// Same for `x (v^q - v) lambda + 1`.
    pub symbolic_inverse: bool,
    pub carlitz_points: usize,
    pub kummer_points: usize,
    pub degenerate_skipped: usize,
    pub dynamic_passed: bool,
}

impl CarlitzModelReport {
    pub fn passed(&self) -> bool {
        self.symbolic_forward && self.symbolic_inverse && self.dynamic_passed
    }
}

/// Runs the symbolic reduction and `points` random checks in each direction
/// over `F_{q^6}`.
pub fn carlitz_model_witness(q: u64, lambda: Fe, points: usize, seed: u64) -> Result<CarlitzModelReport> {
    let (p, d) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let field = field_create(p, d as usize)?;
    if lambda == Fe::ZERO || lambda.index() >= q {
        return Err(Error::NotInField(format!("lambda index {}", lambda.index())));
    }
    let (symbolic_forward, symbolic_inverse) = symbolic_checks(&field, lambda);

    let ext = field_extend(&field, MODEL_EXTENSION)?;
    let lam = ext.embed(&field, lambda);
    let lam_inv = ext.inv(&lam).expect("nonzero");
    let ring = PolyRing::new(ext.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = points.max(1) * ATTEMPTS_PER_POINT;
    let mut ok = true;
    let mut skipped = 0;

    let forward = |x: Fe, y: Fe| -> Option<(Fe, Fe)> {
        let w = ext.add(&ext.pow(&y, q), &ext.mul(&x, &y));
        let w_inv = ext.inv(&w)?;
        Some((w_inv, ext.mul(&ext.mul(&y, &lam_inv), &w_inv)))
    };
    let inverse = |u: Fe, v: Fe| -> Option<(Fe, Fe)> {
        let t = ext.mul(&lam, &ext.sub(&ext.pow(&v, q), &v));
        let x = ext.neg(&ext.inv(&t)?);
        Some((x, ext.mul(&ext.mul(&lam, &v), &ext.inv(&u)?)))
    };
    let on_kummer = |u: Fe, v: Fe| ext.pow(&u, q - 1) == ext.mul(&lam, &ext.sub(&ext.pow(&v, q), &v));
    let on_carlitz = |x: Fe, y: Fe| {
        let w = ext.add(&ext.pow(&y, q), &ext.mul(&x, &y));
        ext.add(&ext.pow(&w, q - 1), &x) == Fe::ZERO
    };

    // Carlitz side: pick y, solve (y x + y^q)^{q-1} + x = 0 for x.
    let mut carlitz_points = 0;
    let mut attempts = 0;
    while carlitz_points < points {
        attempts += 1;
        if attempts > budget {
            return Err(Error::Budget { what: "Carlitz sample points", size: attempts as u128, limit: budget as u128 });
        }
        let y = ext.random(&mut rng);
        let lin = ring.poly(vec![ext.pow(&y, q), y]);
        let rel = ring.add(&ring.pow(&lin, q - 1), &ring.var());
        let roots = ring.roots(&rel);
        if roots.is_empty() {
            continue;
        }
        let x = roots[rng_index(&mut rng, roots.len())];
        let Some((u, v)) = forward(x, y) else {
            skipped += 1;
            continue;
        };
        carlitz_points += 1;
        ok &= on_carlitz(x, y) && on_kummer(u, v) && inverse(u, v) == Some((x, y));
    }

    // Kummer side: pick v, take a (q-1)-th root.
    let mut kummer_points = 0;
    attempts = 0;
    while kummer_points < points {
        attempts += 1;
        if attempts > budget {
            return Err(Error::Budget { what: "Kummer sample points", size: attempts as u128, limit: budget as u128 });
        }
        let v = ext.random(&mut rng);
        let t = ext.mul(&lam, &ext.sub(&ext.pow(&v, q), &v));
        if t == Fe::ZERO {
            skipped += 1;
            continue;
        }
        let Some(u) = ext.nth_root(t, q - 1) else { continue };
        let Some((x, y)) = inverse(u, v) else {
            skipped += 1;
            continue;
        };
        kummer_points += 1;
        ok &= on_kummer(u, v) && on_carlitz(x, y) && forward(x, y) == Some((u, v));
    }

    Ok(CarlitzModelReport {
        q,
        lambda: format_element(&field, lambda),
        seed,
        extension_degree: MODEL_EXTENSION,
        symbolic_forward,
        symbolic_inverse,
        carlitz_points,
        kummer_points,
        degenerate_skipped: skipped,
        dynamic_passed: ok,
    })
}

fn rng_index(rng: &mut ChaCha8Rng, len: usize) -> usize {
    use rand::Rng;
    rng.gen_range(0..len)
}

/// Both identities with denominators cleared by `lambda^q W^q`, reduced
/// modulo the Carlitz relation as a monic polynomial in `y` over `F_q[x]`.
fn symbolic_checks(field: &FieldCtx, lambda: Fe) -> (bool, bool) {
    let q = field.size();
    let fx = PolyRing::new(field.clone());
    let fxy = PolyRing::new(fx.clone());
    let c = |a: Fe| fxy.constant(fx.constant(a));
    let x = fxy.constant(fx.var());
    let y = fxy.var();
    let yq = fxy.pow(&y, q);
    let w = fxy.add(&yq, &fxy.mul(&x, &y));
    let w_pow = fxy.pow(&w, q - 1);
    let relation = fxy.add(&w_pow, &x);

    let lam_q = field.pow(&lambda, q);
    let lam_qm1 = field.pow(&lambda, q - 1);
    // lambda^q W^q (v^q - v) = y^q - lambda^{q-1} y W^{q-1}
    let cleared_vq_v = fxy.sub(&yq, &fxy.mul(&c(lam_qm1), &fxy.mul(&y, &w_pow)));
    // u^{q-1} = lambda (v^q - v), times lambda^q W^q
    let forward = fxy.sub(&fxy.mul(&c(lam_q), &w), &fxy.mul(&c(lambda), &cleared_vq_v));
    // x lambda (v^q - v) + 1 = 0, times lambda^q W^q
    let inverse = fxy.add(
        &fxy.mul(&c(lambda), &fxy.mul(&x, &cleared_vq_v)),
        &fxy.mul(&c(lam_q), &fxy.pow(&w, q)),
    );
    let reduces = |f| fxy.divrem_monic(f, &relation).1.is_zero();
    (reduces(&forward), reduces(&inverse))
}
