use llvkit::lefschetz::{
    complete_sl2_of_class, hl_test, simultaneous_primitivity_check, symplectic_hl_check,
};
use llvkit::linalg::Matrix;
use llvkit::llv::{
    dual_lefschetz_commute, positive_orthogonal_classes, so41_subalgebra, so4_symplectic,
    weil_operator,
};
use llvkit::ring::find_isotropic;
use llvkit::sample::{isotropic_vectors, IntVectors};
use llvkit::{Error, Rational, Scalar};
use serde_json::{json, Value};

use crate::report::{Outcome, Report};
use crate::setup::{texts, Subject};

const HL: &str = "a degree-2 class satisfies Hard Lefschetz exactly when q is nonzero on it";
const PAIRS: &str = "dual Lefschetz operators of non-isotropic classes commute";
const SYMPLECTIC_HL: &str = "L_sigma and L_sigma-bar satisfy Hard Lefschetz along the bigrading";
const PRIMITIVITY: &str = "[Lambda_sigma, Lambda_sigma-bar] = [L_sigma, Lambda_sigma-bar] = 0";
const GAMMA: &str = "Lambda_gamma and Lambda_gamma' commute for gamma = sigma + sigma-bar, gamma' = -i(sigma - sigma-bar)";
const WEIL: &str =
    "[L_gamma, Lambda_gamma'] = i(H_sigma - H_sigma-bar) acts as i(p - q) on type (p, q)";
const SO4: &str =
    "L, Lambda, H of sigma and sigma-bar span two commuting sl2's, closed of dimension 6";
const SO41: &str =
    "three positive orthogonal classes generate so(4,1) of dimension 10 with its relations";

const GENERIC: usize = 50;
const ISOTROPIC: usize = 10;
const PAIR_COUNT: usize = 50;
const SEED: u64 = 11;

fn skip_bigraded(rep: &mut Report) {
    for (name, anchor) in [
        ("symplectic-hl", SYMPLECTIC_HL),
        ("simultaneous-primitivity", PRIMITIVITY),
        ("dual-lefschetz-gamma", GAMMA),
        ("weil-operator", WEIL),
        ("so4", SO4),
    ] {
        rep.push(
            name,
            anchor,
            Outcome::skip("ring carries no bigrading", Value::Null),
        );
    }
}

pub fn run<T: Scalar>(s: &Subject<T>, rep: &mut Report) {
    let r = &s.ring;
    let hk = s.hyperkahler;
    let b2 = r.dim_of(2);

    match &s.form {
        Some(q) => {
            let classes = sample_classes(q, b2);
            let mut mismatches = Vec::new();
            let mut isotropic = 0;
            for (k, a) in classes.iter().enumerate() {
                let nonzero = !q.bilinear(a, a).is_zero();
                isotropic += usize::from(!nonzero);
                if hl_test(r, &r.embed(2, a)) != nonzero {
                    mismatches.push(k);
                }
            }
            rep.push(
                "hl-iff-nonisotropic",
                HL,
                Outcome::predicted(
                    hk,
                    mismatches.is_empty(),
                    json!({ "classes": classes.len(), "isotropic": isotropic, "mismatches": mismatches }),
                    || format!("{} classes contradict the criterion", mismatches.len()),
                ),
            );
            rep.push("dual-lefschetz-pairs", PAIRS, pairs(s, q, &classes));
        }
        None => {
            rep.push(
                "hl-iff-nonisotropic",
                HL,
                Outcome::skip("no quadratic form available", Value::Null),
            );
            rep.push(
                "dual-lefschetz-pairs",
                PAIRS,
                Outcome::skip("no quadratic form available", Value::Null),
            );
        }
    }

    match &s.bigraded {
        None => skip_bigraded(rep),
        Some(b) => {
            let shl = symplectic_hl_check(b);
            rep.push(
                "symplectic-hl",
                SYMPLECTIC_HL,
                Outcome::check(shl.passed(), json!({ "failures": shl.failures }), || {
                    shl.failures[0].clone()
                }),
            );
            let sp = simultaneous_primitivity_check(b);
            rep.push(
                "simultaneous-primitivity",
                PRIMITIVITY,
                Outcome::check(sp.passed(), json!({ "failures": sp.failures }), || {
                    sp.failures[0].clone()
                }),
            );

            let sigma = r.component(b.sigma(), 2);
            let sigma_bar = r.component(b.sigma_bar(), 2);
            let gamma: Vec<T> = sigma
                .iter()
                .zip(&sigma_bar)
                .map(|(x, y)| x.add_ref(y))
                .collect();
            let diff: Vec<T> = sigma
                .iter()
                .zip(&sigma_bar)
                .map(|(x, y)| x.sub_ref(y))
                .collect();
            // over Q the real multiple sigma - sigma-bar gives the same dual operator up to scale
            let gamma_prime: Vec<T> = match T::imaginary_unit() {
                Some(i) => diff.iter().map(|x| (-i.clone()).mul_ref(x)).collect(),
                None => diff,
            };
            rep.push(
                "dual-lefschetz-gamma",
                GAMMA,
                match dual_lefschetz_commute(r, &gamma, &gamma_prime) {
                    Ok(ok) => Outcome::check(
                        ok,
                        json!({ "gamma": texts(&gamma), "gamma_prime": texts(&gamma_prime) }),
                        || "[Λ_γ, Λ_γ'] ≠ 0".into(),
                    ),
                    Err(e) => Outcome::error(e),
                },
            );

            rep.push(
                "weil-operator",
                WEIL,
                match weil_operator(b) {
                    Ok(w) => {
                        let diag: Vec<T> = (0..w.rows()).map(|i| w[(i, i)].clone()).collect();
                        Outcome::pass(json!({ "eigenvalues": texts(&dedup(diag)) }))
                    }
                    Err(Error::NeedsGaussian) => {
                        Outcome::skip("needs --field gaussian", Value::Null)
                    }
                    Err(e) => Outcome::fail(e.to_string(), Value::Null),
                },
            );

            rep.push(
                "so4",
                SO4,
                match so4_symplectic(b) {
                    Ok((alg, report)) => Outcome::check(
                        report.passed() && alg.dim() == 6,
                        json!({ "dim": alg.dim(), "failures": report.failures }),
                        || {
                            report
                                .failures
                                .first()
                                .cloned()
                                .unwrap_or_else(|| format!("dimension {}", alg.dim()))
                        },
                    ),
                    Err(e) => Outcome::error(e),
                },
            );
        }
    }

    rep.push(
        "so41",
        SO41,
        match &s.form {
            None => Outcome::skip("no quadratic form available", Value::Null),
            Some(q) => match positive_orthogonal_classes(q, 3) {
                Err(e) => Outcome::skip(e.to_string(), Value::Null),
                Ok(w) => match so41_subalgebra(r, q, &w) {
                    Ok((alg, report)) => Outcome::predicted(
                        hk,
                        report.passed() && alg.dim() == 10,
                        json!({ "dim": alg.dim(), "failures": report.failures }),
                        || {
                            report
                                .failures
                                .first()
                                .cloned()
                                .unwrap_or_else(|| format!("dimension {}", alg.dim()))
                        },
                    ),
                    Err(e) => Outcome::predicted_error(hk, e),
                },
            },
        },
    );
}

fn dedup<T: Scalar>(v: Vec<T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for x in v {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Enumerated integer classes followed by isotropic ones when the form is real.
fn sample_classes<T: Scalar>(q: &Matrix<T>, b2: usize) -> Vec<Vec<T>> {
    let mut classes: Vec<Vec<T>> = IntVectors::new(b2, SEED)
        .take(GENERIC)
        .map(|v| v.into_iter().map(T::from_int).collect())
        .collect();
    if q.entries().iter().all(Scalar::is_real) {
        let rq: Matrix<Rational> = q.map(|x| x.real_part());
        if let Ok(e) = find_isotropic(&rq) {
            let lift = |v: Vec<Rational>| v.into_iter().map(T::from_rational).collect::<Vec<T>>();
            classes.push(lift(e.clone()));
            classes.extend(
                isotropic_vectors(&rq, &e, SEED)
                    .take(ISOTROPIC - 1)
                    .map(lift),
            );
        }
    }
    classes
}

fn pairs<T: Scalar>(s: &Subject<T>, q: &Matrix<T>, classes: &[Vec<T>]) -> Outcome {
    let r = &s.ring;
    let mut lams = Vec::new();
    for a in classes.iter().filter(|a| !q.bilinear(a, a).is_zero()) {
        match complete_sl2_of_class(r, a) {
            Ok(t) => lams.push(t.lam.matrix),
            Err(e) if s.hyperkahler => return Outcome::error(e),
            Err(_) => {}
        }
        if lams.len() > PAIR_COUNT {
            break;
        }
    }
    let mut bad = Vec::new();
    for k in 0..lams.len().saturating_sub(1) {
        if !lams[k].commutator(&lams[k + 1]).is_zero() {
            bad.push(k);
        }
    }
    let checked = lams.len().saturating_sub(1);
    Outcome::predicted(
        s.hyperkahler,
        bad.is_empty(),
        json!({ "pairs": checked, "noncommuting": bad }),
        || format!("{} of {checked} pairs fail to commute", bad.len()),
    )
}
