use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::engine::{full_basis, parity_of, Evaluator, VertexModel};
use crate::error::{Error, Result};
use crate::fock::{binomial, factorial, BasisState, Gq, HalfInt, Scalar, Vector};
use crate::report::{CheckRecord, CheckReport};

fn weight_of(v: &Vector) -> Result<HalfInt> {
    if v.is_zero() {
        return Ok(HalfInt::ZERO);
    }
    v.weight().ok_or_else(|| Error::Inhomogeneous(format!("{v:?}")))
}

fn sign(k: i64) -> Gq {
    Gq::int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Left side minus right side of the Borcherds identity at (m, n, k).
pub fn borcherds_residual(
    ev: &mut Evaluator,
    a: &Vector,
    b: &Vector,
    c: &Vector,
    (m, n, k): (i64, i64, i64),
) -> Result<Vector> {
    let (wa, wb, wc) = (weight_of(a)?, weight_of(b)?, weight_of(c)?);
    let s = parity_of(a)?.koszul(parity_of(b)?);
    let mut out = Vector::zero();

    // Σ_j C(m,j) (a_{(n+j)}b)_{(m+k−j)} c; a_{(n+j)}b vanishes once n+j ≥ wa+wb.
    let mut jl = (wa + wb).floor() - 1 - n;
    if m >= 0 {
        jl = jl.min(m);
    }
    check_ceiling(ev, jl)?;
    for j in 0..=jl.max(-1) {
        let coef = Gq::big(binomial(m, j));
        if coef.is_zero() {
            continue;
        }
        let ab = ev.apply_mode(a, n + j, b)?;
        let t = ev.apply_mode(&ab, m + k - j, c)?;
        out.add_scaled(&t, &coef);
    }

    // Σ_j (−1)^j C(n,j) [a_{(m+n−j)} b_{(k+j)} c − s(−1)^n b_{(n+k−j)} a_{(m+j)} c]
    let j1 = (wb + wc).floor() - 1 - k;
    let j2 = (wa + wc).floor() - 1 - m;
    let (j1, j2) = if n >= 0 { (j1.min(n), j2.min(n)) } else { (j1, j2) };
    check_ceiling(ev, j1.max(j2))?;
    for j in 0..=j1.max(j2).max(-1) {
        let coef = sign(j) * Gq::big(binomial(n, j));
        if coef.is_zero() {
            continue;
        }
        if j <= j1 {
            let bc = ev.apply_mode(b, k + j, c)?;
            let t = ev.apply_mode(a, m + n - j, &bc)?;
            out.add_scaled(&t, &-coef.clone());
        }
        if j <= j2 {
            let ac = ev.apply_mode(a, m + j, c)?;
            let t = ev.apply_mode(b, n + k - j, &ac)?;
            out.add_scaled(&t, &(coef * Gq::int(s) * sign(n)));
        }
    }
    Ok(out)
}

fn check_ceiling(ev: &Evaluator, j: i64) -> Result<()> {
    if j > ev.j_ceiling {
        Err(Error::SumCeiling(ev.j_ceiling))
    } else {
        Ok(())
    }
}

/// Borcherds identity on the box [−R, R]³; one record per triple.
pub fn check_borcherds(
    ev: &mut Evaluator,
    a: &Vector,
    b: &Vector,
    c: &Vector,
    r: i64,
    fingerprint: &str,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("borcherds", fingerprint);
    let al = ev.alphabet();
    let label = format!("a={} b={} c={}", a.display(al), b.display(al), c.display(al));
    for m in -r..=r {
        for n in -r..=r {
            for k in -r..=r {
                let res = borcherds_residual(ev, a, b, c, (m, n, k))?;
                report.push(CheckRecord::exact(
                    "borcherds-identity",
                    format!("{label} (m,n,k)=({m},{n},{k})"),
                    res.is_zero(),
                    residual_string(&res),
                ));
            }
        }
    }
    Ok(report)
}

/// Renders an exact residual: "0" or the largest coefficient modulus squared.
pub fn residual_string(v: &Vector) -> String {
    v.iter()
        .map(|(_, c)| c.norm_sqr())
        .max()
        .map(|x| format!("|c|^2={x}"))
        .unwrap_or_else(|| "0".into())
}

/// Translation T v = v_{(−2)}Ω.
pub fn translate(ev: &mut Evaluator, v: &Vector) -> Result<Vector> {
    ev.apply_mode(v, -2, &Vector::vacuum())
}

/// Coefficients of z^p in Y(a,z)b and in (−1)^{p(a)p(b)} e^{zT} Y(b,−z)a for
/// p from −(wa+wb) to `order`; returns the powers where they differ.
pub fn skew_symmetry_mismatches(
    ev: &mut Evaluator,
    a: &Vector,
    b: &Vector,
    order: i64,
) -> Result<Vec<i64>> {
    let (wa, wb) = (weight_of(a)?, weight_of(b)?);
    let s = Gq::int(parity_of(a)?.koszul(parity_of(b)?));
    let top = (wa + wb).floor();
    let mut bad = Vec::new();
    for p in -top..=order {
        // z^p ↔ a_{(−p−1)} b
        let lhs = ev.apply_mode(a, -p - 1, b)?;
        let mut rhs = Vector::zero();
        // i − m − 1 = p with m ≤ top − 1 ⇒ i ≤ top + p
        for i in 0..=(top + p).max(-1) {
            let m = i - p - 1;
            let mut t = ev.apply_mode(b, m, a)?;
            for _ in 0..i {
                t = translate(ev, &t)?;
            }
            let coef = s.clone() * sign(-m - 1) * Gq::real(num_rational::BigRational::new(
                BigInt::from(1),
                factorial(i as u64),
            ));
            rhs.add_scaled(&t, &coef);
        }
        if lhs != rhs {
            bad.push(p);
        }
    }
    Ok(bad)
}

pub fn check_skew_symmetry(
    ev: &mut Evaluator,
    a: &Vector,
    b: &Vector,
    order: i64,
    fingerprint: &str,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("skew-symmetry", fingerprint);
    let bad = skew_symmetry_mismatches(ev, a, b, order)?;
    let al = ev.alphabet();
    let rec = CheckRecord::exact(
        "skew-symmetry",
        format!("a={} b={} order={order}", a.display(al), b.display(al)),
        bad.is_empty(),
        if bad.is_empty() { "0".into() } else { format!("mismatch at z-powers {bad:?}") },
    );
    report.push(rec);
    Ok(report)
}

/// Least N with (z−w)^N ⟨d|[Y(a,z),Y(b,w)]|c⟩ = 0, found on a finite Laurent window.
pub fn locality_order(
    ev: &mut Evaluator,
    a: &Vector,
    b: &Vector,
    c: &Vector,
    d: &crate::fock::BasisState,
    ceiling: usize,
) -> Result<usize> {
    let (wa, wb, wc) = (weight_of(a)?, weight_of(b)?, weight_of(c)?);
    let s_tot = wa + wb + wc - d.weight() - HalfInt::int(2);
    let Some(s_tot) = s_tot.to_integer() else {
        return Ok(0);
    };
    let sgn = Gq::int(parity_of(a)?.koszul(parity_of(b)?));
    let len = ceiling as i64 + 2;
    let m0 = -(len / 2);
    let mut seq = Vec::with_capacity(len as usize);
    for m in m0..m0 + len {
        let k = s_tot - m;
        let bc = ev.apply_mode(b, k, c)?;
        let abc = ev.apply_mode(a, m, &bc)?;
        let ac = ev.apply_mode(a, m, c)?;
        let bac = ev.apply_mode(b, k, &ac)?;
        seq.push(abc.coeff(d) - sgn.clone() * bac.coeff(d));
    }
    for n in 0..=ceiling {
        if seq.iter().all(|x| x.is_zero()) {
            return Ok(n);
        }
        seq = seq.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    Err(Error::LocalityCeiling(ceiling))
}

/// Borcherds identity on `samples` seeded draws: basis states a, b, c of weight ≤
/// `max_weight` (a, b non-vacuum) and (m, n, k) uniform in [−R, R]³. Draws whose
/// terms leave a truncated model are redrawn.
pub fn sampled_borcherds(
    model: &dyn VertexModel,
    max_weight: HalfInt,
    samples: usize,
    r: i64,
    seed: u64,
    fingerprint: &str,
) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<BasisState> =
        full_basis(model).into_iter().filter(|b| b.weight() <= max_weight).collect();
    let fields: Vec<&BasisState> = states.iter().filter(|b| !b.is_vacuum()).collect();
    if fields.is_empty() {
        return Err(Error::Argument(format!("no non-vacuum states of weight <= {max_weight}")));
    }
    let mut ev = Evaluator::new(model);
    let al = model.alphabet();
    let mut report = CheckReport::new("borcherds", fingerprint);
    let mut attempts = 0;
    while report.records.len() < samples {
        attempts += 1;
        if attempts > 100 * samples.max(1) {
            return Err(Error::Argument(format!("too few samples stay below the cutoff {}", model.cutoff())));
        }
        let a = Vector::basis(fields[rng.gen_range(0..fields.len())].clone());
        let b = Vector::basis(fields[rng.gen_range(0..fields.len())].clone());
        let c = Vector::basis(states[rng.gen_range(0..states.len())].clone());
        let mnk = (rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        let res = match borcherds_residual(&mut ev, &a, &b, &c, mnk) {
            Err(Error::AboveCutoff { .. }) => continue,
            r => r?,
        };
        report.push(CheckRecord::exact(
            "borcherds-identity",
            format!("a={} b={} c={} (m,n,k)={mnk:?} seed={seed}", a.display(al), b.display(al), c.display(al)),
            res.is_zero(),
            residual_string(&res),
        ));
    }
    Ok(report)
}

/// Largest [`locality_order`] over all matrix elements ⟨d|·|c⟩ with basis states c, d
/// of weight ≤ `max_weight`.
pub fn field_locality_order(
    model: &dyn VertexModel,
    a: &Vector,
    b: &Vector,
    max_weight: HalfInt,
    ceiling: usize,
) -> Result<usize> {
    let mut ev = Evaluator::new(model);
    let states: Vec<BasisState> =
        full_basis(model).into_iter().filter(|s| s.weight() <= max_weight).collect();
    let mut order = 0;
    for c in &states {
        let cv = Vector::basis(c.clone());
        for d in &states {
            order = order.max(locality_order(&mut ev, a, b, &cv, d, ceiling)?);
        }
    }
    Ok(order)
}
