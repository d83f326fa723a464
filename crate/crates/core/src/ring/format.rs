//! JSON ring descriptions.
//!
//! ```json
//! {
//!   "top_degree": 4,
//!   "dims": [1, 0, 2, 0, 1],
//!   "basis": [["1"], [], ["x", "y"], [], ["pt"]],
//!   "products": [{"i": 1, "j": 2, "k": 3, "coeff": "1/2"}, ...],
//!   "integration": ["1"],
//!   "bigrading": [[0, 0], [2, 0], [0, 2], [2, 2]],
//!   "sigma": ["0", "1", "0", "0"],
//!   "sigma_bar": ["0", "0", "1", "0"],
//!   "quadratic_form": [["0", "1"], ["1", "0"]]
//! }
//! ```
//!
//! Indices in `products` are global basis indices; every ordered pair with a
//! nonzero product is listed. Coefficients are exact strings; JSON numbers are
//! rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::bigraded::BigradedAlgebra;
use crate::ring::graded::{GradedAlgebra, StructureConstant};
use crate::scalar::Scalar;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    top_degree: usize,
    dims: Vec<usize>,
    basis: Vec<Vec<String>>,
    products: Vec<RawProduct>,
    integration: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bigrading: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma_bar: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quadratic_form: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProduct {
    i: usize,
    j: usize,
    k: usize,
    coeff: String,
}

/// A graded or bigraded ring.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyRing<T: Scalar> {
    Graded(GradedAlgebra<T>),
    Bigraded(BigradedAlgebra<T>),
}

impl<T: Scalar> AnyRing<T> {
    pub fn ring(&self) -> &GradedAlgebra<T> {
        match self {
            AnyRing::Graded(r) => r,
            AnyRing::Bigraded(b) => b.ring(),
        }
    }

    pub fn bigraded(&self) -> Option<&BigradedAlgebra<T>> {
        match self {
            AnyRing::Graded(_) => None,
            AnyRing::Bigraded(b) => Some(b),
        }
    }
}

/// Contents of a ring file.
#[derive(Clone, Debug, PartialEq)]
pub struct RingFile<T: Scalar> {
    pub ring: AnyRing<T>,
    pub quadratic_form: Option<Matrix<T>>,
}

fn parse_scalar<T: Scalar>(s: &str, location: String) -> Result<T> {
    T::parse_exact(s).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse { location, message },
        other => other,
    })
}

fn parse_vec<T: Scalar>(v: &[String], field: &str) -> Result<Vec<T>> {
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_scalar(s, format!("{field}[{i}]")))
        .collect()
}

/// Parses and validates a ring description.
pub fn parse_ring<T: Scalar>(text: &str) -> Result<RingFile<T>> {
    let file = parse_ring_unvalidated(text)?;
    match &file.ring {
        AnyRing::Graded(r) => r.validate().into_result()?,
        AnyRing::Bigraded(b) => b.validate().into_result()?,
    }
    Ok(file)
}

/// Parses a ring description, checking structure but not the ring axioms.
pub fn parse_ring_unvalidated<T: Scalar>(text: &str) -> Result<RingFile<T>> {
    let raw: RawRing = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if raw.dims.len() != raw.top_degree + 1 {
        return Err(Error::Inconsistent(format!(
            "dims has {} entries for top degree {}",
            raw.dims.len(),
            raw.top_degree
        )));
    }
    if raw.basis.len() != raw.dims.len() {
        return Err(Error::Inconsistent(format!(
            "basis has {} degrees, dims has {}",
            raw.basis.len(),
            raw.dims.len()
        )));
    }
    for (d, (labels, &dim)) in raw.basis.iter().zip(&raw.dims).enumerate() {
        if labels.len() != dim {
            return Err(Error::Inconsistent(format!(
                "degree {d}: {} labels, dimension {dim}",
                labels.len()
            )));
        }
    }
    let constants = raw
        .products
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            Ok(StructureConstant {
                i: p.i,
                j: p.j,
                k: p.k,
                coeff: parse_scalar(&p.coeff, format!("products[{idx}].coeff"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let integration = parse_vec(&raw.integration, "integration")?;
    let labels = raw.basis.into_iter().flatten().collect();
    let ring = GradedAlgebra::new(&raw.dims, labels, constants, integration)?;

    let quadratic_form = match raw.quadratic_form {
        None => None,
        Some(rows) => {
            let b = ring.dim_of(2);
            if rows.len() != b || rows.iter().any(|r| r.len() != b) {
                return Err(Error::Inconsistent(format!(
                    "quadratic_form must be {b}x{b}"
                )));
            }
            let parsed = rows
                .iter()
                .enumerate()
                .map(|(i, r)| parse_vec(r, &format!("quadratic_form[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let m = if b == 0 {
                Matrix::zeros(0, 0)
            } else {
                Matrix::from_rows(parsed)
            };
            if !m.is_symmetric() {
                return Err(Error::NotSymmetric);
            }
            Some(m)
        }
    };

    let ring = match raw.bigrading {
        None => AnyRing::Graded(ring),
        Some(bideg) => {
            if bideg.len() != ring.dim() {
                return Err(Error::Inconsistent(format!(
                    "bigrading has {} entries for {} basis elements",
                    bideg.len(),
                    ring.dim()
                )));
            }
            for (i, &[p, q]) in bideg.iter().enumerate() {
                if p + q != ring.degree_of_basis(i) {
                    return Err(Error::Parse {
                        location: format!("bigrading[{i}]"),
                        message: format!(
                            "type ({p},{q}) does not match degree {}",
                            ring.degree_of_basis(i)
                        ),
                    });
                }
            }
            let (Some(s), Some(sb)) = (raw.sigma, raw.sigma_bar) else {
                return Err(Error::Parse {
                    location: "bigrading".into(),
                    message: "a bigraded ring needs sigma and sigma_bar".into(),
                });
            };
            let sigma = parse_vec(&s, "sigma")?;
            let sigma_bar = parse_vec(&sb, "sigma_bar")?;
            AnyRing::Bigraded(BigradedAlgebra::new(
                ring,
                bideg.iter().map(|&[p, q]| (p, q)).collect(),
                sigma,
                sigma_bar,
            )?)
        }
    };
    Ok(RingFile {
        ring,
        quadratic_form,
    })
}

pub fn load_ring<T: Scalar>(path: impl AsRef<Path>) -> Result<RingFile<T>> {
    parse_ring(&read(path.as_ref())?)
}

pub fn load_ring_unvalidated<T: Scalar>(path: impl AsRef<Path>) -> Result<RingFile<T>> {
    parse_ring_unvalidated(&read(path.as_ref())?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Serializes a ring description; the output parses back to an equal value.
pub fn ring_to_json<T: Scalar>(file: &RingFile<T>) -> String {
    let r = file.ring.ring();
    let strs = |v: &[T]| v.iter().map(T::to_exact_string).collect::<Vec<_>>();
    let basis = (0..=r.top_degree())
        .map(|d| r.labels()[r.degree_range(d)].to_vec())
        .collect();
    let products = r
        .structure_constants()
        .map(|c| RawProduct {
            i: c.i,
            j: c.j,
            k: c.k,
            coeff: c.coeff.to_exact_string(),
        })
        .collect();
    let bi = file.ring.bigraded();
    let raw = RawRing {
        top_degree: r.top_degree(),
        dims: r.dims(),
        basis,
        products,
        integration: strs(r.integration()),
        bigrading: bi.map(|b| b.bidegrees().iter().map(|&(p, q)| [p, q]).collect()),
        sigma: bi.map(|b| strs(b.sigma())),
        sigma_bar: bi.map(|b| strs(b.sigma_bar())),
        quadratic_form: file
            .quadratic_form
            .as_ref()
            .map(|m| m.to_rows().iter().map(|row| strs(row)).collect()),
    };
    serde_json::to_string_pretty(&raw).expect("ring description serializes")
}

pub fn save_ring<T: Scalar>(file: &RingFile<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path.as_ref(), ring_to_json(file))
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::fixtures::{bigraded_torus, k3_gram, k3_ring};
    use crate::scalar::Rational;

    #[test]
    fn k3_round_trip() {
        let file = RingFile {
            ring: AnyRing::Graded(k3_ring(&k3_gram()).unwrap()),
            quadratic_form: Some(k3_gram()),
        };
        let text = ring_to_json(&file);
        let back: RingFile<Rational> = parse_ring(&text).unwrap();
        assert_eq!(back, file);
    }

    #[test]
    fn bigraded_round_trip() {
        let file = RingFile {
            ring: AnyRing::Bigraded(bigraded_torus::<Rational>(2).unwrap()),
            quadratic_form: None,
        };
        let back: RingFile<Rational> = parse_ring(&ring_to_json(&file)).unwrap();
        assert_eq!(back, file);
    }

    const SMALL: &str = r#"{
        "top_degree": 4,
        "dims": [1, 0, 1, 0, 1],
        "basis": [["1"], [], ["x"], [], ["x^2"]],
        "products": [
            {"i": 0, "j": 0, "k": 0, "coeff": "1"},
            {"i": 0, "j": 1, "k": 1, "coeff": "1"},
            {"i": 1, "j": 0, "k": 1, "coeff": "1"},
            {"i": 0, "j": 2, "k": 2, "coeff": "1"},
            {"i": 2, "j": 0, "k": 2, "coeff": "1"},
            {"i": 1, "j": 1, "k": 2, "coeff": "COEFF"}
        ],
        "integration": ["1"]
    }"#;

    #[test]
    fn distinct_errors() {
        assert!(parse_ring::<Rational>(&SMALL.replace("COEFF", "2/3")).is_ok());
        let bad = parse_ring::<Rational>(&SMALL.replace("COEFF", "0.5"));
        assert!(
            matches!(bad, Err(Error::Parse { ref location, .. }) if location == "products[5].coeff")
        );
        let float = parse_ring::<Rational>(&SMALL.replace("\"COEFF\"", "0.5"));
        assert!(matches!(float, Err(Error::Parse { .. })));
        let dims = parse_ring::<Rational>(
            &SMALL
                .replace("COEFF", "1")
                .replace("[1, 0, 1, 0, 1]", "[1, 0, 1, 1]"),
        );
        assert!(matches!(dims, Err(Error::Inconsistent(_))));
        let degenerate = parse_ring::<Rational>(&SMALL.replace("COEFF", "0"));
        assert!(matches!(degenerate, Err(Error::Validation(_))));
    }

    #[test]
    fn missing_symmetry_partner() {
        let text = SMALL
            .replace("COEFF", "1")
            .replace("{\"i\": 1, \"j\": 0, \"k\": 1, \"coeff\": \"1\"},", "");
        let err = parse_ring::<Rational>(&text).unwrap_err();
        assert!(err.to_string().contains("commutativity"), "{err}");
    }

    #[test]
    fn bigrading_must_match_degree() {
        let text = SMALL.replace("COEFF", "1").replace(
            "\"integration\": [\"1\"]",
            "\"integration\": [\"1\"], \"bigrading\": [[0,0],[1,0],[2,2]], \"sigma\": [\"0\",\"1\",\"0\"], \"sigma_bar\": [\"0\",\"1\",\"0\"]",
        );
        let err = parse_ring::<Rational>(&text).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "bigrading[1]"));
    }
}
