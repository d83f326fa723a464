use std::fmt;

use llvkit::bbf::bbf_form;
use llvkit::linalg::Matrix;
use llvkit::ring::{
    bigraded_torus, binomial, bogomolov_model_with, is_k3_signature, k3_gram, k3_ring, load_ring,
    load_ring_unvalidated, predicted_dim, sym_dim, torus_ring, BigradedAlgebra, GradedAlgebra,
    Saturation,
};
use llvkit::{Rational, Scalar};

use crate::args::{Fixture, RunConfig};

pub const MAX_B2: usize = 24;
pub const MAX_N: usize = 3;
pub const MAX_TORUS_G: usize = 4;
/// Largest `dim Sym^{n+1}(H)` the sampled ideal saturation is allowed to span.
pub const MAX_SATURATION_WIDTH: usize = 1000;

/// Anything that stops a run before checks start; always exit status 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(llvkit::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<llvkit::Error> for CliError {
    fn from(e: llvkit::Error) -> Self {
        CliError::Core(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// The ring a command runs on, with whatever extra structure is available.
pub struct Subject<T: Scalar> {
    pub description: String,
    pub ring: GradedAlgebra<T>,
    pub bigraded: Option<BigradedAlgebra<T>>,
    /// Quadratic form on degree 2, in the coordinates of `ring`.
    pub form: Option<Matrix<T>>,
    /// Dimension of every degree `0..=top`, when the construction predicts it.
    pub expected_dims: Option<Vec<usize>>,
    /// Whether hyperkähler-type predictions (structure theorem, Fujiki, ...) apply.
    pub hyperkahler: bool,
}

fn lift<T: Scalar>(m: &Matrix<Rational>) -> Matrix<T> {
    m.map(|x| T::from_rational(x.clone()))
}

fn lift_ring<T: Scalar>(r: &GradedAlgebra<Rational>) -> GradedAlgebra<T> {
    r.map_scalars(|x| T::from_rational(x.clone()))
}

fn lift_bigraded<T: Scalar>(b: &BigradedAlgebra<Rational>) -> BigradedAlgebra<T> {
    b.map_scalars(|x| T::from_rational(x.clone()))
}

/// `diag(1, 1, 1, -1, ..., -1)` of size `b`.
pub fn standard_form(b: usize) -> Matrix<Rational> {
    let d: Vec<Rational> = (0..b)
        .map(|i| Rational::from_int(if i < 3 { 1 } else { -1 }))
        .collect();
    Matrix::diagonal(&d)
}

/// `diag:a,b,...` or rows separated by `;` with comma-separated exact entries.
pub fn parse_form(text: &str) -> Result<Matrix<Rational>, CliError> {
    let entries = |s: &str| -> Result<Vec<Rational>, CliError> {
        s.split(',')
            .map(|x| Rational::parse_exact(x.trim()).map_err(CliError::from))
            .collect()
    };
    let m = if let Some(rest) = text.strip_prefix("diag:") {
        Matrix::diagonal(&entries(rest)?)
    } else {
        let rows = text
            .split(';')
            .map(entries)
            .collect::<Result<Vec<_>, _>>()?;
        if rows.iter().any(|r| r.len() != rows.len()) {
            return usage(format!(
                "--q: {} rows of unequal or non-square length",
                rows.len()
            ));
        }
        Matrix::from_rows(rows)
    };
    if m.rows() == 0 {
        return usage("--q: empty form");
    }
    if !m.is_symmetric() {
        return Err(llvkit::Error::NotSymmetric.into());
    }
    Ok(m)
}

/// Comma-separated exact coordinates.
pub fn parse_vector<T: Scalar>(text: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|x| T::parse_exact(x.trim()).map_err(CliError::from))
        .collect()
}

fn reject(flags: &[(&str, bool)], context: &str) -> Result<(), CliError> {
    match flags.iter().find(|(_, set)| *set) {
        Some((flag, _)) => usage(format!("--{flag} does not apply to {context}")),
        None => Ok(()),
    }
}

pub fn subject<T: Scalar>(cfg: &RunConfig, validated: bool) -> Result<Subject<T>, CliError> {
    let q_override = cfg.q.as_deref().map(parse_form).transpose()?;
    match (cfg.fixture, &cfg.input) {
        (Some(Fixture::Bogomolov), _) => {
            reject(&[("g", cfg.g.is_some())], "the bogomolov fixture")?;
            let q = match q_override {
                Some(q) => q,
                None => standard_form(cfg.b2.unwrap_or(5)),
            };
            let b2 = q.rows();
            if cfg.b2.is_some_and(|b| b != b2) {
                return usage(format!("--b2 is {} but --q has size {b2}", cfg.b2.unwrap()));
            }
            if !(5..=MAX_B2).contains(&b2) {
                return usage(format!("b2 must lie in 5..={MAX_B2}, got {b2}"));
            }
            let n = cfg.n.unwrap_or(2);
            if !(1..=MAX_N).contains(&n) {
                return usage(format!("n must lie in 1..={MAX_N}, got {n}"));
            }
            let width = sym_dim(b2, n + 1);
            if width > MAX_SATURATION_WIDTH {
                return Err(llvkit::Error::TooLarge(format!(
                    "ideal saturation would span dim Sym^{}(Q^{b2}) = {width} > {MAX_SATURATION_WIDTH}",
                    n + 1
                ))
                .into());
            }
            let needed = width - predicted_dim(b2, n, n + 1);
            if cfg.budget < needed {
                return usage(format!(
                    "--budget {} is below the {needed} samples the ideal needs",
                    cfg.budget
                ));
            }
            let sat = Saturation {
                budget: cfg.budget,
                ..Saturation::default()
            };
            let model = bogomolov_model_with(&q, n, sat)?;
            let expected = (0..=4 * n)
                .map(|k| {
                    if k % 2 == 1 {
                        0
                    } else {
                        predicted_dim(b2, n, k / 2)
                    }
                })
                .collect();
            Ok(Subject {
                description: format!("fixture bogomolov (b2 = {b2}, n = {n})"),
                ring: lift_ring(&model.ring),
                bigraded: Some(lift_bigraded(&model.bigraded)),
                form: Some(lift(&q)),
                expected_dims: Some(expected),
                hyperkahler: true,
            })
        }
        (Some(Fixture::K3), _) => {
            reject(
                &[
                    ("b2", cfg.b2.is_some()),
                    ("n", cfg.n.is_some()),
                    ("g", cfg.g.is_some()),
                ],
                "the k3 fixture",
            )?;
            let q = q_override.unwrap_or_else(k3_gram);
            if q.rows() != 22 || !is_k3_signature(&q) {
                return usage("the k3 fixture needs a 22x22 form of signature (3,19)");
            }
            let sat = Saturation {
                budget: cfg.budget,
                ..Saturation::default()
            };
            let model = bogomolov_model_with(&q, 1, sat)?;
            Ok(Subject {
                description: "fixture k3".into(),
                ring: lift_ring(&k3_ring(&q)?),
                bigraded: Some(lift_bigraded(&model.bigraded)),
                form: Some(lift(&q)),
                expected_dims: Some(vec![1, 0, 22, 0, 1]),
                hyperkahler: true,
            })
        }
        (Some(Fixture::Torus), _) => {
            reject(
                &[
                    ("b2", cfg.b2.is_some()),
                    ("n", cfg.n.is_some()),
                    ("q", cfg.q.is_some()),
                ],
                "the torus fixture",
            )?;
            let g = cfg.g.unwrap_or(2);
            if !(1..=MAX_TORUS_G).contains(&g) {
                return usage(format!("g must lie in 1..={MAX_TORUS_G}, got {g}"));
            }
            let (ring, bigraded, form) = if g % 2 == 0 {
                let b = bigraded_torus::<T>(g)?;
                let form = bbf_form(&b)?;
                (b.ring().clone(), Some(b), Some(form))
            } else {
                (torus_ring::<T>(g)?, None, None)
            };
            Ok(Subject {
                description: format!("fixture torus (g = {g})"),
                ring,
                bigraded,
                form,
                expected_dims: Some((0..=2 * g).map(|k| binomial(2 * g, k)).collect()),
                hyperkahler: false,
            })
        }
        (None, Some(path)) => {
            reject(
                &[
                    ("b2", cfg.b2.is_some()),
                    ("n", cfg.n.is_some()),
                    ("g", cfg.g.is_some()),
                ],
                "ring files",
            )?;
            let file = if validated {
                load_ring::<T>(path)?
            } else {
                load_ring_unvalidated::<T>(path)?
            };
            let bigraded = file.ring.bigraded().cloned();
            let form = match (q_override, file.quadratic_form) {
                (Some(q), _) => Some(lift(&q)),
                (None, Some(q)) => Some(q),
                (None, None) => bigraded.as_ref().and_then(|b| bbf_form(b).ok()),
            };
            if let Some(f) = &form {
                if f.rows() != file.ring.ring().dim_of(2) {
                    return usage(format!(
                        "form has size {} but degree 2 has dimension {}",
                        f.rows(),
                        file.ring.ring().dim_of(2)
                    ));
                }
            }
            Ok(Subject {
                description: format!("file {}", path.display()),
                ring: file.ring.ring().clone(),
                bigraded,
                form,
                expected_dims: None,
                hyperkahler: true,
            })
        }
        (None, None) => usage("one of --fixture or --input is required"),
    }
}

/// Exact text of a scalar, for report data.
pub fn text<T: Scalar>(x: &T) -> String {
    x.to_exact_string()
}

pub fn texts<T: Scalar>(v: &[T]) -> Vec<String> {
    v.iter().map(text).collect()
}
