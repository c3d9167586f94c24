use super::algebras::{NeveuSchwarz, Virasoro, N2};
use super::descriptor::VermaKind;
use super::lie::Brackets;
use super::model::VosaModel;
use crate::error::{Error, Result};
use crate::fock::{BasisState, Gq, HalfInt, Mode, Vector};
use crate::modes::{residual_string, translate, Evaluator, VertexModel};
use crate::report::{CheckRecord, CheckReport};
use crate::unitarity::mode_window;

/// Checks [x_m, y_n] against a bracket table, with field `fields[id]` standing for
/// generator `id` of the table. States of weight ≤ `state_cutoff` are used; a state is
/// skipped (and the record flagged truncated) when an intermediate weight exceeds the
/// model cutoff.
pub fn relation_check(
    model: &VosaModel,
    suite: &str,
    table: &dyn Brackets,
    fields: &[Vector],
    range: HalfInt,
    state_cutoff: HalfInt,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(suite, &model.fingerprint());
    let mut ev = Evaluator::new(model);
    let al = model.alphabet();
    let cutoff = model.cutoff();
    let states: Vec<BasisState> = (0..=state_cutoff.min(cutoff).twice())
        .flat_map(|t| model.basis(HalfInt::from_twice(t)))
        .collect();
    let weights: Vec<HalfInt> = fields
        .iter()
        .map(|f| f.weight().ok_or_else(|| Error::Inhomogeneous(format!("{f:?}"))))
        .collect::<Result<_>>()?;
    for (xi, x) in fields.iter().enumerate() {
        for (yi, y) in fields.iter().enumerate() {
            for m in mode_window(weights[xi], range) {
                for n in mode_window(weights[yi], range) {
                    let br = table.bracket(
                        Mode::new(xi as u16, m),
                        Mode::new(yi as u16, n),
                    );
                    let mut worst = Vector::zero();
                    let mut truncated = false;
                    for s in &states {
                        let w = s.weight();
                        if [w - m, w - n, w - m - n].iter().any(|&u| u > cutoff) {
                            truncated = true;
                            continue;
                        }
                        let sv = Vector::basis(s.clone());
                        let mut res = ev.graded_commutator(x, m, y, n, &sv)?;
                        for (z, c) in &br.modes {
                            let t = ev.apply_shifted(&fields[z.gen as usize], z.index, &sv)?;
                            res.add_scaled(&t, &-c.clone());
                        }
                        res.add_scaled(&sv, &-br.central.clone());
                        if !res.is_zero() && worst.is_zero() {
                            worst = res;
                        }
                    }
                    let label = format!(
                        "[{}_{m}, {}_{n}] on weights <= {state_cutoff}",
                        al.gen(xi as u16).name,
                        al.gen(yi as u16).name
                    );
                    report.push(
                        CheckRecord::exact(suite, label, worst.is_zero(), residual_string(&worst))
                            .flag_truncated(truncated),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// [L_m, L_n] = (m−n)L_{m+n} + c(m³−m)/12 δ_{m,−n} with L_n = ν_{(n+1)}.
pub fn virasoro_check(model: &VosaModel, range: i64, state_cutoff: HalfInt) -> Result<CheckReport> {
    let table = Virasoro { c: model.central_charge().clone() };
    relation_check(
        model,
        "virasoro",
        &table,
        &[model.conformal().clone()],
        HalfInt::int(range),
        state_cutoff,
    )
}

/// Full NS or N=2 relation set, with the fields taken from the model's generators
/// (L = ν, G = τ for NS; L, J, G⁺, G⁻ for N=2).
pub fn superalgebra_check(
    model: &VosaModel,
    kind: VermaKind,
    range: HalfInt,
    state_cutoff: HalfInt,
) -> Result<CheckReport> {
    let c = model.central_charge().clone();
    let (table, names): (Box<dyn Brackets>, &[&str]) = match kind {
        VermaKind::Virasoro => (Box::new(Virasoro { c }), &["L"]),
        VermaKind::Ns => (Box::new(NeveuSchwarz { c }), &["L", "G"]),
        VermaKind::N2 => (Box::new(N2 { c }), &["L", "J", "G+", "G-"]),
    };
    let mut fields = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let f = if i == 0 {
            model.conformal().clone()
        } else if kind == VermaKind::Ns {
            model
                .superconformal()
                .cloned()
                .ok_or_else(|| Error::Argument("model has no superconformal vector".into()))?
        } else {
            model
                .generator_by_name(name)
                .ok_or_else(|| Error::Argument(format!("model has no generator {name}")))?
        };
        fields.push(f);
    }
    relation_check(model, &format!("{}-relations", kind.label()), table.as_ref(), &fields, range, state_cutoff)
}

/// V_n = 0 for n < 0 and V_0 = span{Ω} on the truncated basis.
pub fn cft_type_check(model: &VosaModel) -> (bool, CheckReport) {
    let zero = model.basis(HalfInt::ZERO);
    let ok = zero.len() == 1 && zero[0].is_vacuum();
    let mut report = CheckReport::new("cft-type", &model.fingerprint());
    report.push(CheckRecord::exact(
        "cft-type",
        format!("{}: dim V_0 = {}", model.name(), zero.len()),
        ok,
        if ok { "0".into() } else { format!("dim V_0 - 1 = {}", zero.len() as i64 - 1) },
    ));
    (ok, report)
}

/// L₋₁Ω = 0 and [T, a_{(n)}]c = −n a_{(n−1)}c for T = L₋₁ on the given states.
pub fn translation_check(
    model: &VosaModel,
    states: &[Vector],
    range: i64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("translation", &model.fingerprint());
    let mut ev = Evaluator::new(model);
    let nu = model.conformal().clone();
    let t_vac = ev.apply_mode(&nu, 0, &Vector::vacuum())?;
    report.push(CheckRecord::exact(
        "translation-vacuum",
        "L_-1 vacuum".into(),
        t_vac.is_zero(),
        residual_string(&t_vac),
    ));
    let cutoff = model.cutoff();
    let al = model.alphabet();
    for a in states {
        let wa = a.weight().unwrap_or(HalfInt::ZERO);
        let ta = translate(&mut ev, a)?;
        let mut worst = Vector::zero();
        let mut truncated = false;
        for n in -range..=range {
            for t in 0..=cutoff.twice() {
                for c in model.basis(HalfInt::from_twice(t)) {
                    let w = c.weight() + wa - HalfInt::int(n + 1);
                    if w + HalfInt::ONE > cutoff || c.weight() + HalfInt::ONE > cutoff {
                        truncated = true;
                        continue;
                    }
                    let cv = Vector::basis(c);
                    let ac = ev.apply_mode(a, n, &cv)?;
                    let tac = ev.apply_mode(&nu, 0, &ac)?;
                    let tc = ev.apply_mode(&nu, 0, &cv)?;
                    let atc = ev.apply_mode(a, n, &tc)?;
                    let lhs = tac.sub(&atc);
                    let rhs = ev.apply_mode(a, n - 1, &cv)?.scale(&Gq::int(-n));
                    let alt = ev.apply_mode(&ta, n, &cv)?;
                    let res = if lhs != rhs { lhs.sub(&rhs) } else { lhs.sub(&alt) };
                    if !res.is_zero() && worst.is_zero() {
                        worst = res;
                    }
                }
            }
        }
        report.push(
            CheckRecord::exact(
                "translation-covariance",
                format!("a={} |n|<={range}", a.display(al)),
                worst.is_zero(),
                residual_string(&worst),
            )
            .flag_truncated(truncated),
        );
    }
    Ok(report)
}
