use llvkit::bbf::{form_signature, fujiki_check};
use llvkit::ring::ValidationReport;
use llvkit::Scalar;
use serde_json::{json, Value};

use super::hodge_numbers;
use crate::report::{Outcome, Report};
use crate::setup::{text, Subject};

const AXIOMS: &str =
    "graded-commutative associative ring with unit and nondegenerate Poincaré pairing";
const BIGRADING: &str =
    "products respect the (p,q) bigrading; sigma and sigma-bar have types (2,0) and (0,2)";
const DIMENSIONS: &str = "graded dimensions match the construction of the ring";
const SIGNATURE: &str = "the BBF form has signature (3, b2 - 3)";
const FUJIKI: &str = "Fujiki relation: the top power of a class is a fixed multiple of q(a)^n";

/// At most this many violations are listed in report data.
const LISTED: usize = 20;

fn violations(v: &ValidationReport) -> Value {
    json!(v
        .violations
        .iter()
        .take(LISTED)
        .map(|x| x.to_string())
        .collect::<Vec<_>>())
}

pub fn run<T: Scalar>(s: &Subject<T>, rep: &mut Report) {
    let r = &s.ring;
    let v = r.validate();
    let data = json!({ "dims": r.dims(), "violations": violations(&v), "violation_count": v.violations.len() });
    rep.push(
        "ring-axioms",
        AXIOMS,
        Outcome::check(v.passed(), data, || v.violations[0].to_string()),
    );

    match &s.bigraded {
        Some(b) => {
            let v = b.validate();
            let data = json!({ "hodge_numbers": hodge_numbers(b), "violations": violations(&v) });
            rep.push(
                "bigrading",
                BIGRADING,
                Outcome::check(v.passed(), data, || v.violations[0].to_string()),
            );
        }
        None => rep.push(
            "bigrading",
            BIGRADING,
            Outcome::skip("ring carries no bigrading", Value::Null),
        ),
    }

    match &s.expected_dims {
        Some(expected) => {
            let dims = r.dims();
            let even: Vec<usize> = r.even_dims();
            let data = json!({ "dims": dims, "even_degree_dims": even, "expected": expected });
            let ok = dims == *expected;
            rep.push(
                "graded-dimensions",
                DIMENSIONS,
                Outcome::check(ok, data, || format!("dims {dims:?} ≠ {expected:?}")),
            );
        }
        None => rep.push(
            "graded-dimensions",
            DIMENSIONS,
            Outcome::skip(
                "no dimension prediction for ring files",
                json!({ "dims": r.dims() }),
            ),
        ),
    }

    let Some(form) = &s.form else {
        rep.push(
            "form-signature",
            SIGNATURE,
            Outcome::skip("no quadratic form available", Value::Null),
        );
        rep.push(
            "fujiki",
            FUJIKI,
            Outcome::skip("no quadratic form available", Value::Null),
        );
        return;
    };
    let b2 = form.rows();
    let signature = form_signature(form);
    rep.push(
        "form-signature",
        SIGNATURE,
        match signature {
            Ok((pos, neg)) => Outcome::predicted(
                s.hyperkahler,
                pos == 3 && neg + 3 == b2,
                json!({ "pos": pos, "neg": neg, "b2": b2 }),
                || format!("signature ({pos}, {neg})"),
            ),
            Err(e) => Outcome::predicted_error(s.hyperkahler, e),
        },
    );
    if !s.hyperkahler {
        rep.push(
            "fujiki",
            FUJIKI,
            Outcome::skip("no prediction for this ring", Value::Null),
        );
        return;
    }
    rep.push(
        "fujiki",
        FUJIKI,
        match fujiki_check(r, form) {
            Ok(f) => {
                Outcome::pass(json!({ "c": text(&f.c), "n": f.n, "classes_checked": f.checked }))
            }
            Err(e) => Outcome::error(e),
        },
    );
}
