//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Scalar`], an exact field with
//! decidable equality and a conjugation. Two fields are provided: the
//! rationals ([`Rational`]) and the Gaussian rationals ([`Gaussian`]), i.e.
//! `Q(i)` with `i^2 = -1` stored as a pair of rationals.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Neg;

use num::bigint::BigInt;
use num::{BigRational, Complex, Num, One, Signed, Zero};

use crate::error::Error;

/// Rational numbers with arbitrary precision numerator and denominator.
pub type Rational = BigRational;

/// Gaussian rationals `a + b i`.
pub type Gaussian = Complex<Rational>;

/// An exact field element.
pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// Field conjugation: the identity on `Q`, `i -> -i` on `Q(i)`.
    fn conj(&self) -> Self;

    fn from_rational(q: Rational) -> Self;

    fn real_part(&self) -> Rational;

    fn imag_part(&self) -> Rational;

    /// The imaginary unit, if the field contains one.
    fn imaginary_unit() -> Option<Self>;

    /// Parses the exact text form (`"3"`, `"-2/5"`, `"1/2+3/4 i"`).
    fn parse_exact(s: &str) -> Result<Self, Error>;

    /// The exact text form accepted by [`Scalar::parse_exact`].
    fn to_exact_string(&self) -> String;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let prod = a.mul_ref(b);
        *self = self.add_ref(&prod);
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    fn is_real(&self) -> bool {
        self.imag_part().is_zero()
    }

    /// Sign of a real element; `None` when the element is not real.
    fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        Some(self.real_part().cmp(&Rational::zero()))
    }

    /// The multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn gaussian(re: Rational, im: Rational) -> Gaussian {
    Complex::new(re, im)
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse {
        location: String::new(),
        message: format!("malformed rational {s:?}"),
    };
    if s.is_empty() {
        return Err(bad());
    }
    // Reject floats explicitly: only exact input is accepted.
    if s.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

fn rational_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Scalar for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn real_part(&self) -> Rational {
        self.clone()
    }

    fn imag_part(&self) -> Rational {
        Rational::zero()
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }

    fn parse_exact(s: &str) -> Result<Self, Error> {
        if s.contains('i') {
            return Err(Error::Parse {
                location: String::new(),
                message: format!("{s:?} is not rational"),
            });
        }
        parse_rational(s)
    }

    fn to_exact_string(&self) -> String {
        rational_string(self)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn is_real(&self) -> bool {
        true
    }
}

impl Scalar for Gaussian {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_rational(q: Rational) -> Self {
        Complex::new(q, Rational::zero())
    }

    fn real_part(&self) -> Rational {
        self.re.clone()
    }

    fn imag_part(&self) -> Rational {
        self.im.clone()
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Complex::new(Rational::zero(), Rational::one()))
    }

    fn parse_exact(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Complex::new(parse_rational(&t)?, Rational::zero()));
        };
        // Split "re±im" at the last sign that is not a leading sign.
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k])?, &body[k..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(Complex::new(re, im))
    }

    fn to_exact_string(&self) -> String {
        if self.im.is_zero() {
            return rational_string(&self.re);
        }
        let im = format!("{} i", rational_string(&self.im.abs()));
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            if self.im.is_negative() {
                format!("-{im}")
            } else {
                im
            }
        } else {
            format!("{}{sign}{im}", rational_string(&self.re))
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_rationals() {
        for s in ["0", "3", "-2/5", "7/3"] {
            let q = Rational::parse_exact(s).unwrap();
            assert_eq!(q.to_exact_string(), s);
        }
        assert_eq!(Rational::parse_exact("4/6").unwrap(), rat(2, 3));
        assert!(Rational::parse_exact("0.5").is_err());
        assert!(Rational::parse_exact("1/0").is_err());
        assert!(Rational::parse_exact("1+i").is_err());
    }

    #[test]
    fn parse_and_print_gaussians() {
        let z = Gaussian::parse_exact("1/2+3/4 i").unwrap();
        assert_eq!(z, gaussian(rat(1, 2), rat(3, 4)));
        assert_eq!(z.to_exact_string(), "1/2+3/4 i");
        assert_eq!(
            Gaussian::parse_exact("-i").unwrap(),
            gaussian(int(0), int(-1))
        );
        assert_eq!(
            Gaussian::parse_exact("2 i").unwrap(),
            gaussian(int(0), int(2))
        );
        assert_eq!(
            Gaussian::parse_exact("-1-2/3 i").unwrap(),
            gaussian(int(-1), rat(-2, 3))
        );
        for s in ["5", "-1/2 i", "3-1 i", "0"] {
            let z = Gaussian::parse_exact(s).unwrap();
            assert_eq!(Gaussian::parse_exact(&z.to_exact_string()).unwrap(), z);
        }
    }

    #[test]
    fn conjugation() {
        let i = Gaussian::imaginary_unit().unwrap();
        assert_eq!(i.mul_ref(&i), -Gaussian::one());
        assert_eq!(Scalar::conj(&i), -i.clone());
        assert_eq!(rat(3, 7).conj(), rat(3, 7));
        assert!(Rational::imaginary_unit().is_none());
    }
}
