use llvkit::clifford::{clifford, kuga_plane, CliffordAlgebra, CliffordElement, SignVerdict};
use llvkit::linalg::Matrix;
use llvkit::sample::IntVectors;
use llvkit::{Error, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{KugaArgs, RunConfig};
use crate::report::{Outcome, Report};
use crate::setup::{parse_form, standard_form, subject, text, CliError};

const DIMENSION: &str = "the Clifford algebra of an m-dimensional space has dimension 2^m";
const RELATIONS: &str = "v v = Q(v, v) for every vector v";
const ASSOCIATIVITY: &str = "multiplication is associative";
const CONJUGATION: &str = "conjugation is an involutive anti-automorphism";
const TRACE: &str = "Tr(1) = 1 and Tr(xy) = Tr(yx)";
const MU: &str = "mu = gamma gamma' / |gamma||gamma'| squares to -1";
const COMMUTES: &str = "mu commutes with vectors orthogonal to the plane of gamma, gamma'";
const POLARIZATION: &str =
    "exactly one of sigma_a, -sigma_a with sigma_a(x, y) = Tr(x a conj y) is positive against mu";

const VECTORS: usize = 100;
const TRIPLES: usize = 100;
const SEED: u64 = 0x6b75_6761;

fn form<T: Scalar>(cfg: &RunConfig, args: &KugaArgs) -> Result<(String, Matrix<T>), CliError> {
    let lift = |m: &Matrix<llvkit::Rational>| m.map(|x| T::from_rational(x.clone()));
    match (&cfg.q, args.dim) {
        (Some(q), dim) => {
            let q = parse_form(q)?;
            if dim.is_some_and(|d| d != q.rows()) {
                return Err(CliError::Usage(format!(
                    "--dim is {} but --q has size {}",
                    dim.unwrap(),
                    q.rows()
                )));
            }
            Ok((format!("form of dimension {}", q.rows()), lift(&q)))
        }
        (None, Some(0)) => Err(CliError::Usage("--dim must be positive".into())),
        (None, Some(m)) => Ok((
            format!("standard form of dimension {m}"),
            lift(&standard_form(m)),
        )),
        (None, None) => {
            let s = subject::<T>(cfg, true)?;
            let q = s.form.ok_or_else(|| {
                CliError::Usage("the ring carries no quadratic form; pass --q or --dim".into())
            })?;
            Ok((format!("degree-2 form of {}", s.description), q))
        }
    }
}

fn random_element<T: Scalar>(c: &CliffordAlgebra<T>, rng: &mut ChaCha8Rng) -> CliffordElement<T> {
    let mut coeffs = vec![T::zero(); c.dim()];
    for _ in 0..4 {
        let k = rng.gen_range(0..c.dim());
        coeffs[k] = T::from_int(rng.gen_range(-3..=3));
    }
    c.from_coeffs(coeffs).expect("length matches")
}

pub fn run<T: Scalar>(
    cfg: &RunConfig,
    args: &KugaArgs,
    field: &'static str,
) -> Result<Report, CliError> {
    let (description, q) = form::<T>(cfg, args)?;
    let c = clifford(&q)?;
    let mut rep = Report::new("kuga", description, field);
    let m = c.m();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    rep.push(
        "clifford-dimension",
        DIMENSION,
        Outcome::check(c.dim() == 1 << m, json!({ "m": m, "dim": c.dim() }), || {
            format!("dimension {} ≠ 2^{m}", c.dim())
        }),
    );

    let mut bad = Vec::new();
    let vectors: Vec<Vec<T>> = IntVectors::new(m, SEED)
        .take(VECTORS)
        .map(|v| v.into_iter().map(T::from_int).collect())
        .collect();
    for (k, v) in vectors.iter().enumerate() {
        let x = c.vector(v)?;
        if c.multiply(&x, &x)? != c.scalar(q.bilinear(v, v)) {
            bad.push(k);
        }
    }
    rep.push(
        "generator-relations",
        RELATIONS,
        Outcome::check(
            bad.is_empty(),
            json!({ "vectors": vectors.len(), "failing": bad }),
            || format!("{} vectors violate v v = Q(v, v)", bad.len()),
        ),
    );

    let mut bad = 0;
    for _ in 0..TRIPLES {
        let (x, y, z) = (
            random_element(&c, &mut rng),
            random_element(&c, &mut rng),
            random_element(&c, &mut rng),
        );
        if c.multiply(&c.multiply(&x, &y)?, &z)? != c.multiply(&x, &c.multiply(&y, &z)?)? {
            bad += 1;
        }
    }
    rep.push(
        "associativity",
        ASSOCIATIVITY,
        Outcome::check(
            bad == 0,
            json!({ "triples": TRIPLES, "failing": bad }),
            || format!("{bad} triples fail"),
        ),
    );

    let (mut involution, mut anti) = (0, 0);
    let mut trace = 0;
    for _ in 0..TRIPLES {
        let (x, y) = (random_element(&c, &mut rng), random_element(&c, &mut rng));
        if c.conjugate(&c.conjugate(&x)) != x {
            involution += 1;
        }
        if c.conjugate(&c.multiply(&x, &y)?) != c.multiply(&c.conjugate(&y), &c.conjugate(&x))? {
            anti += 1;
        }
        if c.trace(&c.multiply(&x, &y)?) != c.trace(&c.multiply(&y, &x)?) {
            trace += 1;
        }
    }
    rep.push(
        "conjugation",
        CONJUGATION,
        Outcome::check(
            involution == 0 && anti == 0,
            json!({ "pairs": TRIPLES, "not_involutive": involution, "not_anti": anti }),
            || format!("{involution} involution and {anti} anti-automorphism failures"),
        ),
    );
    let unit_trace = c.trace(&c.one());
    rep.push(
        "trace",
        TRACE,
        Outcome::check(
            unit_trace == T::one() && trace == 0,
            json!({ "pairs": TRIPLES, "trace_of_unit": text(&unit_trace), "failing": trace }),
            || format!("Tr(1) = {}, {trace} pairs fail", text(&unit_trace)),
        ),
    );

    complex_structure(&c, &q, &mut rep)?;
    Ok(rep)
}

fn complex_structure<T: Scalar>(
    c: &CliffordAlgebra<T>,
    q: &Matrix<T>,
    rep: &mut Report,
) -> Result<(), CliError> {
    let skip_all = |rep: &mut Report, e: &Error| {
        let reason = e.to_string();
        rep.push(
            "complex-structure",
            MU,
            Outcome::skip(reason.clone(), Value::Null),
        );
        rep.push(
            "complement-commutes",
            COMMUTES,
            Outcome::skip(reason.clone(), Value::Null),
        );
        rep.push(
            "polarization",
            POLARIZATION,
            Outcome::skip(reason, Value::Null),
        );
    };
    let plane = match kuga_plane(q) {
        Ok(p) => p,
        Err(e @ Error::Inadmissible(_)) => {
            skip_all(rep, &e);
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let mu = match c.complex_structure(&plane.gamma, &plane.gamma_prime) {
        Ok(mu) => mu,
        Err(e @ Error::Inadmissible(_)) => {
            skip_all(rep, &e);
            return Ok(());
        }
        Err(e) => {
            rep.push("complex-structure", MU, Outcome::error(e));
            return Ok(());
        }
    };
    let sq = c.multiply(&mu, &mu)?;
    rep.push(
        "complex-structure",
        MU,
        Outcome::check(sq == c.scalar(-T::one()), json!({ "gamma": crate::setup::texts(&plane.gamma), "gamma_prime": crate::setup::texts(&plane.gamma_prime) }), || {
            "μ² ≠ -1".into()
        }),
    );

    // columns of the diagonal frame other than gamma and gamma'
    let mut others: Vec<Vec<T>> = (0..plane.complement.cols())
        .filter(|&j| {
            plane.gamma_restricted[j].is_zero() && plane.gamma_prime_restricted[j].is_zero()
        })
        .map(|j| plane.complement.column(j))
        .collect();
    others.extend(plane.h.clone());
    let mut bad = Vec::new();
    for (k, v) in others.iter().enumerate() {
        let x = c.vector(v)?;
        if c.multiply(&mu, &x)? != c.multiply(&x, &mu)? {
            bad.push(k);
        }
    }
    rep.push(
        "complement-commutes",
        COMMUTES,
        Outcome::check(
            bad.is_empty(),
            json!({ "vectors": others.len(), "failing": bad }),
            || format!("{} orthogonal vectors do not commute with μ", bad.len()),
        ),
    );

    // with a third positive direction h the form lives on C(h⊥)
    let (algebra, a, on) = match &plane.h {
        Some(_) => {
            let ch = clifford(&plane.restricted)?;
            let a = ch.complex_structure(&plane.gamma_restricted, &plane.gamma_prime_restricted)?;
            (ch, a, "complement of h")
        }
        None => (c.clone(), mu, "full algebra"),
    };
    let p = algebra.polarization_form(&a)?;
    let sign = match p.verdict {
        SignVerdict::Positive => "+",
        SignVerdict::Negative => "-",
        SignVerdict::Indefinite => "none",
    };
    rep.push(
        "polarization",
        POLARIZATION,
        Outcome::check(
            p.verdict.is_definite() && p.report.passed(),
            json!({
                "on": on,
                "dim": algebra.dim(),
                "symmetry": p.symmetry,
                "probe_signature": p.probe_signature.map(|s| json!({ "pos": s.pos, "neg": s.neg, "null": s.null })),
                "positive_sign": sign,
            }),
            || match p.report.failures.first() {
                Some(f) => f.clone(),
                None => "neither sign is positive on the probe".into(),
            },
        ),
    );
    Ok(())
}
