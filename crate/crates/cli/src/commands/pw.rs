use llvkit::filtration::{
    diagonal_lagrangian_triple, lagrangian_monodromy, nilpotent_orbit_check, perverse_filtration,
    perverse_hodge_check, weak_pw, LagrangianTriple, PwReport,
};
use llvkit::linalg::Matrix;
use llvkit::llv::positive_orthogonal_classes;
use llvkit::ring::find_isotropic;
use llvkit::sample::isotropic_vectors;
use llvkit::{Rational, Scalar};
use serde_json::{json, Value};

use super::jumps;
use crate::args::PwArgs;
use crate::report::{Outcome, Report};
use crate::setup::{parse_vector, text, texts, CliError, Subject};

const TRIPLE: &str = "beta, eta isotropic, rho positive and orthogonal to both";
const INDEX: &str = "N = [L_beta, Lambda_rho] has index 3 on H^2 and 2n + 1 on the whole ring";
const PW: &str = "P_m H^k = W_{2m+2n} H^k with W centered at k, in every degree";
const ORBIT: &str = "q(Nx, conj Nx) > 0 for x spanned by two positive classes";
const INDEPENDENCE: &str = "the perverse filtration has the same jumps for every isotropic class";
const HODGE: &str = "the perverse numbers match the Hodge numbers after a shift by n";

/// Isotropic classes compared against each other.
const ISOTROPIC_SAMPLES: usize = 10;

fn real_form<T: Scalar>(q: &Matrix<T>) -> Result<Matrix<Rational>, CliError> {
    if !q.entries().iter().all(Scalar::is_real) {
        return Err(CliError::Usage("the form has non-real entries".into()));
    }
    Ok(q.map(|x| x.real_part()))
}

fn lift<T: Scalar>(v: &[Rational]) -> Vec<T> {
    v.iter().map(|x| T::from_rational(x.clone())).collect()
}

fn triple<T: Scalar>(q: &Matrix<T>, args: &PwArgs) -> Result<LagrangianTriple<T>, CliError> {
    let t = match (&args.beta, &args.eta, &args.rho) {
        (Some(b), Some(e), Some(r)) => LagrangianTriple {
            beta: parse_vector(b)?,
            eta: parse_vector(e)?,
            rho: parse_vector(r)?,
        },
        (None, None, None) => {
            let t = diagonal_lagrangian_triple(&real_form(q)?)?;
            LagrangianTriple {
                beta: lift(&t.beta),
                eta: lift(&t.eta),
                rho: lift(&t.rho),
            }
        }
        _ => {
            return Err(CliError::Usage(
                "--beta, --eta and --rho must be given together".into(),
            ))
        }
    };
    t.validate(q)?;
    Ok(t)
}

pub fn run<T: Scalar>(s: &Subject<T>, args: &PwArgs, rep: &mut Report) -> Result<(), CliError> {
    let Some(q) = &s.form else {
        return Err(CliError::Usage(
            "pw needs a quadratic form on degree 2".into(),
        ));
    };
    let r = &s.ring;
    let hk = s.hyperkahler;
    let t = triple(q, args)?;
    let n = r.top_degree() / 4;
    rep.push(
        "lagrangian-triple",
        TRIPLE,
        Outcome::pass(
            json!({ "beta": texts(&t.beta), "eta": texts(&t.eta), "rho": texts(&t.rho) }),
        ),
    );

    match weak_pw(r, q, &t) {
        Ok(pw) => pw_records(&pw, n, hk, rep),
        Err(e) => {
            rep.push("monodromy-index", INDEX, Outcome::predicted_error(hk, &e));
            rep.push("p-equals-w", PW, Outcome::predicted_error(hk, &e));
        }
    }

    rep.push("nilpotent-orbit", ORBIT, orbit(s, q, &t));
    rep.push("isotropic-independence", INDEPENDENCE, independence(s, q)?);

    rep.push(
        "perverse-hodge",
        HODGE,
        match &s.bigraded {
            None => Outcome::skip("ring carries no bigrading", Value::Null),
            Some(b) => match perverse_hodge_check(b) {
                Ok(ph) => Outcome::predicted(
                    hk,
                    ph.report.passed() && ph.offset == Some(n as i64),
                    json!({ "offset": ph.offset, "expected": n, "offsets": ph.offsets }),
                    || match ph.report.failures.first() {
                        Some(f) => f.clone(),
                        None => format!("offset {:?} ≠ {n}", ph.offset),
                    },
                ),
                Err(e) => Outcome::predicted_error(hk, e),
            },
        },
    );
    Ok(())
}

fn pw_records(pw: &PwReport, n: usize, hk: bool, rep: &mut Report) {
    let (i2, total) = (pw.index_degree_two, pw.index_total);
    rep.push(
        "monodromy-index",
        INDEX,
        Outcome::predicted(
            hk,
            i2 == 3 && total == 2 * n + 1,
            json!({ "degree_two": i2, "total": total, "expected": [3, 2 * n + 1] }),
            || format!("index ({i2}, {total}) ≠ (3, {})", 2 * n + 1),
        ),
    );
    let degrees: Vec<Value> = pw
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "index": d.index,
                "perverse": jumps(&d.perverse_jumps),
                "weight": jumps(&d.weight_jumps),
                "shift": d.shift,
            })
        })
        .collect();
    let want = 2 * n as i64;
    rep.push(
        "p-equals-w",
        PW,
        Outcome::predicted(
            hk,
            pw.report.passed() && pw.uniform_shift == Some(want),
            json!({ "shift": pw.uniform_shift, "expected_shift": want, "degrees": degrees }),
            || match pw.report.failures.first() {
                Some(f) => f.clone(),
                None => format!("shift {:?} ≠ {want}", pw.uniform_shift),
            },
        ),
    );
}

fn orbit<T: Scalar>(s: &Subject<T>, q: &Matrix<T>, t: &LagrangianTriple<T>) -> Outcome {
    let r = &s.ring;
    let big_n = match lagrangian_monodromy(r, q, t) {
        Ok(m) => m.block(r, 2),
        Err(e) => return Outcome::predicted_error(s.hyperkahler, e),
    };
    let w = match positive_orthogonal_classes(q, 2) {
        Ok(w) => w,
        Err(e) => return Outcome::skip(e.to_string(), Value::Null),
    };
    match T::imaginary_unit() {
        Some(i) => {
            let x: Vec<T> = w[0]
                .iter()
                .zip(&w[1])
                .map(|(u, v)| u.add_ref(&i.mul_ref(v)))
                .collect();
            let nx = big_n.mul_vec(&x);
            let bar: Vec<T> = nx.iter().map(Scalar::conj).collect();
            let value = q.bilinear(&nx, &bar);
            match nilpotent_orbit_check(&big_n, &x, q) {
                Ok(ok) => Outcome::predicted(
                    s.hyperkahler,
                    ok,
                    json!({ "value": text(&value), "x": texts(&x) }),
                    || format!("q(Nx, conj Nx) = {}", text(&value)),
                ),
                Err(e) => Outcome::predicted_error(s.hyperkahler, e),
            }
        }
        None => {
            // x = u + iv with real u, v: q(Nx, conj Nx) = q(Nu, Nu) + q(Nv, Nv)
            let (nu, nv) = (big_n.mul_vec(&w[0]), big_n.mul_vec(&w[1]));
            let value = q.bilinear(&nu, &nu) + q.bilinear(&nv, &nv);
            let ok = value.real_sign() == Some(std::cmp::Ordering::Greater);
            Outcome::predicted(
                s.hyperkahler,
                ok,
                json!({ "value": text(&value), "u": texts(&w[0]), "v": texts(&w[1]) }),
                || format!("q(Nx, conj Nx) = {}", text(&value)),
            )
        }
    }
}

fn independence<T: Scalar>(s: &Subject<T>, q: &Matrix<T>) -> Result<Outcome, CliError> {
    let r = &s.ring;
    let rq = real_form(q)?;
    let e = match find_isotropic(&rq) {
        Ok(e) => e,
        Err(e) => return Ok(Outcome::skip(e.to_string(), Value::Null)),
    };
    let classes: Vec<Vec<T>> = std::iter::once(e.clone())
        .chain(isotropic_vectors(&rq, &e, 7))
        .take(ISOTROPIC_SAMPLES)
        .map(|v| lift(&v))
        .collect();
    let mut tables = Vec::new();
    for beta in &classes {
        let mut table = Vec::new();
        for k in 0..=r.top_degree() {
            match perverse_filtration(r, q, beta, k) {
                Ok(p) => table.push(p.jumps()),
                Err(e) => return Ok(Outcome::predicted_error(s.hyperkahler, e)),
            }
        }
        tables.push(table);
    }
    let differing: Vec<usize> = (1..tables.len())
        .filter(|&i| tables[i] != tables[0])
        .collect();
    let reference: Vec<Value> = tables[0].iter().map(jumps).collect();
    Ok(Outcome::predicted(
        s.hyperkahler,
        differing.is_empty(),
        json!({ "classes": classes.len(), "jumps": reference, "differing": differing }),
        || format!("{} classes give different jumps", differing.len()),
    ))
}
