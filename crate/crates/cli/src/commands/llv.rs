use llvkit::lefschetz::weight_operator;
use llvkit::lie::{ad_grading, so_identify};
use llvkit::llv::{derivation_check, llv_algebra, preserves_form};
use llvkit::Scalar;
use serde_json::json;

use crate::report::{Outcome, Report};
use crate::setup::Subject;

const CLOSURE: &str =
    "the Lie algebra generated by all Lefschetz operators has the dimension of so(b2 + 2)";
const GRADING: &str = "the weight operator grades it in degrees -2, 0, 2 with g_2 = H^2";
const KILLING: &str = "its Killing form has the signature of so(b2 - 2, 4)";
const DUAL: &str = "dual Lefschetz operators of Hard Lefschetz classes commute";
const DERIVATIONS: &str =
    "the degree-zero part acts by derivations preserving the form, up to the weight operator";

/// Classes whose dual operators are compared pairwise.
const DUAL_CLASSES: usize = 8;

pub fn run<T: Scalar>(s: &Subject<T>, rep: &mut Report) {
    let r = &s.ring;
    let hk = s.hyperkahler;
    let llv = match llv_algebra(r) {
        Ok(l) => l,
        Err(e) => {
            rep.push("closure", CLOSURE, Outcome::predicted_error(hk, e));
            return;
        }
    };
    let g = &llv.algebra;
    let b2 = r.dim_of(2);
    let expected = (b2 + 2) * (b2 + 1) / 2;
    rep.push(
        "closure",
        CLOSURE,
        Outcome::predicted(
            hk,
            g.dim() == expected,
            json!({ "dim": g.dim(), "expected": expected, "generating_classes": llv.classes.len(), "ambient": r.dim() }),
            || format!("dimension {} ≠ {expected}", g.dim()),
        ),
    );

    let h = weight_operator(r).matrix;
    let grading = ad_grading(g, &h);
    match &grading {
        Ok(gr) => {
            let (up, zero, down) = gr.dims();
            let want = (b2, b2 * (b2 - 1) / 2 + 1, b2);
            let pieces: Vec<(i64, usize)> = gr.pieces.iter().map(|(k, v)| (*k, v.len())).collect();
            rep.push(
                "grading",
                GRADING,
                Outcome::predicted(
                    hk,
                    (up, zero, down) == want && pieces.len() == 3,
                    json!({ "g2": up, "g0": zero, "g-2": down, "expected": [want.0, want.1, want.2], "eigenvalues": pieces }),
                    || format!("({up}, {zero}, {down}) ≠ {want:?}"),
                ),
            );
        }
        Err(e) => rep.push("grading", GRADING, Outcome::predicted_error(hk, e)),
    }

    rep.push(
        "killing-signature",
        KILLING,
        match so_identify(g, b2) {
            Ok(so) => Outcome::predicted(hk, so.verdict, json!(so), || {
                format!(
                    "signature ({} compact, {} noncompact) ≠ ({}, {})",
                    so.killing_signature.compact,
                    so.killing_signature.noncompact,
                    so.expected_signature.compact,
                    so.expected_signature.noncompact
                )
            }),
            Err(e) => Outcome::predicted_error(hk, e),
        },
    );

    let lams: Vec<_> = llv
        .triples
        .iter()
        .take(DUAL_CLASSES)
        .map(|t| &t.lam.matrix)
        .collect();
    let mut bad = Vec::new();
    let mut pairs = 0;
    for i in 0..lams.len() {
        for j in i + 1..lams.len() {
            pairs += 1;
            if !lams[i].commutator(lams[j]).is_zero() {
                bad.push((i, j));
            }
        }
    }
    rep.push(
        "dual-lefschetz-commute",
        DUAL,
        Outcome::predicted(
            hk,
            bad.is_empty(),
            json!({ "pairs": pairs, "noncommuting": bad }),
            || format!("{} pairs fail to commute", bad.len()),
        ),
    );

    if !hk {
        rep.push(
            "derivations",
            DERIVATIONS,
            Outcome::skip("no prediction for this ring", json!(null)),
        );
        return;
    }
    let Ok(gr) = grading else {
        rep.push(
            "derivations",
            DERIVATIONS,
            Outcome::fail("grading unavailable", json!(null)),
        );
        return;
    };
    let g0 = gr.pieces.get(&0).cloned().unwrap_or_default();
    let unit = r.unit();
    let h_unit = h.mul_vec(&unit)[0].clone();
    let (mut not_derivation, mut not_isometry) = (Vec::new(), Vec::new());
    for (k, d) in g0.iter().enumerate() {
        // remove the multiple of H that moves the unit
        let d = d.to_dense();
        let c = d.mul_vec(&unit)[0].clone() / h_unit.clone();
        let d = &d - &h.scale(&c);
        if !derivation_check(&d, r) {
            not_derivation.push(k);
        }
        if let Some(q) = &s.form {
            if !preserves_form(&d, r, q) {
                not_isometry.push(k);
            }
        }
    }
    rep.push(
        "derivations",
        DERIVATIONS,
        Outcome::check(
            not_derivation.is_empty() && not_isometry.is_empty(),
            json!({
                "checked": g0.len(),
                "form_checked": s.form.is_some(),
                "not_derivations": not_derivation,
                "not_isometries": not_isometry,
            }),
            || {
                format!(
                    "{} non-derivations, {} non-isometries",
                    not_derivation.len(),
                    not_isometry.len()
                )
            },
        ),
    );
}
