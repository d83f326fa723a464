use llvkit::linalg::Matrix;
use llvkit::llv::verbitsky_component;
use llvkit::ring::find_isotropic;
use llvkit::sample::{isotropic_vectors, IntVectors};
use llvkit::{Rational, Scalar};
use serde_json::{json, Value};

use crate::report::{Outcome, Report};
use crate::setup::{CliError, Subject};

const COMPONENT: &str = "the subalgebra generated by degree 2 has the dimensions of Sym^k H^2 up to the middle and is stable under every Lambda";
const POWERS: &str = "alpha^(n+1) = 0 exactly for isotropic alpha";

const ISOTROPIC: usize = 100;
const GENERIC: usize = 20;
const SEED: u64 = 5;

pub fn run<T: Scalar>(s: &Subject<T>, rep: &mut Report) -> Result<(), CliError> {
    let r = &s.ring;
    let hk = s.hyperkahler;
    rep.push(
        "component",
        COMPONENT,
        match verbitsky_component(r) {
            Ok(v) => Outcome::predicted(
                hk,
                v.report.passed(),
                json!({ "dims": v.dims, "expected": v.expected, "failures": v.report.failures.len() }),
                || v.report.failures[0].clone(),
            ),
            Err(e) => Outcome::predicted_error(hk, e),
        },
    );

    let Some(q) = &s.form else {
        rep.push(
            "isotropic-powers",
            POWERS,
            Outcome::skip("no quadratic form available", Value::Null),
        );
        return Ok(());
    };
    if !q.entries().iter().all(Scalar::is_real) {
        rep.push(
            "isotropic-powers",
            POWERS,
            Outcome::skip("form has non-real entries", Value::Null),
        );
        return Ok(());
    }
    let rq: Matrix<Rational> = q.map(|x| x.real_part());
    let e = match find_isotropic(&rq) {
        Ok(e) => e,
        Err(e) => {
            rep.push(
                "isotropic-powers",
                POWERS,
                Outcome::skip(e.to_string(), Value::Null),
            );
            return Ok(());
        }
    };
    let n = r.top_degree() / 4;
    let lift =
        |v: &[Rational]| -> Vec<T> { v.iter().map(|x| T::from_rational(x.clone())).collect() };
    let vanishes = |a: &[T]| r.power(&r.embed(2, a), n + 1).iter().all(T::is_zero);

    let isotropic: Vec<Vec<T>> = std::iter::once(e.clone())
        .chain(isotropic_vectors(&rq, &e, SEED))
        .take(ISOTROPIC)
        .map(|v| lift(&v))
        .collect();
    let nonvanishing: Vec<usize> = (0..isotropic.len())
        .filter(|&k| !vanishes(&isotropic[k]))
        .collect();
    let generic: Vec<Vec<T>> = IntVectors::new(rq.rows(), SEED)
        .map(|v| v.into_iter().map(T::from_int).collect::<Vec<T>>())
        .filter(|a| !q.bilinear(a, a).is_zero())
        .take(GENERIC)
        .collect();
    let vanishing: Vec<usize> = (0..generic.len())
        .filter(|&k| vanishes(&generic[k]))
        .collect();
    rep.push(
        "isotropic-powers",
        POWERS,
        Outcome::predicted(
            hk,
            nonvanishing.is_empty() && vanishing.is_empty(),
            json!({
                "n": n,
                "isotropic": isotropic.len(),
                "isotropic_nonvanishing": nonvanishing,
                "nonisotropic": generic.len(),
                "nonisotropic_vanishing": vanishing,
            }),
            || {
                format!(
                    "{} isotropic powers survive, {} non-isotropic powers vanish",
                    nonvanishing.len(),
                    vanishing.len()
                )
            },
        ),
    );
    Ok(())
}
