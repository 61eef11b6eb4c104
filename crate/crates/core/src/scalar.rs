//! Scalar backends: exact rationals, exact Gaussian rationals and complex floats.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

pub use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::Error;

/// Exact rational with machine-word numerator and denominator.
pub type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Gaussian,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Gaussian => "gaussian",
            Backend::Float => "float",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "rational" | "exact-rational" => Ok(Backend::Rational),
            "gaussian" | "gaussian-rational" => Ok(Backend::Gaussian),
            "float" | "complex-float64" => Ok(Backend::Float),
            other => Err(Error::Parse(format!("unknown backend `{other}`"))),
        }
    }
}

static FLOAT_EPS_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Tolerance used by the float backend for every zero test.
pub fn float_epsilon() -> f64 {
    f64::from_bits(FLOAT_EPS_BITS.load(Ordering::Relaxed))
}

pub fn set_float_epsilon(eps: f64) {
    FLOAT_EPS_BITS.store(eps.to_bits(), Ordering::Relaxed);
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_q(q: Q) -> Self {
        Self::from_ratio(*q.numer(), *q.denom())
    }
    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    /// `exp(i·π·t)` when the backend represents it exactly.
    fn exp_i_pi(t: Q) -> Option<Self>;
    /// Pivot weight for elimination; any monotone proxy of the modulus.
    fn magnitude(&self) -> f64;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, Error>;

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
    fn is_one(&self) -> bool {
        self.approx_eq(&Self::one())
    }
}

fn q_json(q: &Q) -> Value {
    json!({ "num": *q.numer(), "den": *q.denom() })
}

fn q_from_json(v: &Value) -> Result<Q, Error> {
    let num = v
        .get("num")
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::Parse(format!("rational needs integer `num`: {v}")))?;
    let den = v.get("den").map_or(Some(1), Value::as_i64).ok_or_else(|| {
        Error::Parse(format!("rational needs integer `den`: {v}"))
    })?;
    if den == 0 {
        return Err(Error::Parse("rational with zero denominator".into()));
    }
    Ok(Q::new(num, den))
}

/// Reduces `t` (a multiple of π) into `[0, 2)`.
fn reduce_turn(t: Q) -> Q {
    let two = Q::from_integer(2);
    let mut r = t % two;
    if r.is_negative() {
        r += two;
    }
    r
}

impl Scalar for Q {
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Q::new(num, den)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn conj(&self) -> Self {
        *self
    }
    fn exp_i_pi(t: Q) -> Option<Self> {
        let r = reduce_turn(t);
        if Zero::is_zero(&r) {
            Some(Q::from_integer(1))
        } else if r == Q::from_integer(1) {
            Some(-Q::from_integer(1))
        } else {
            None
        }
    }
    fn magnitude(&self) -> f64 {
        (*self.numer() as f64 / *self.denom() as f64).abs()
    }
    fn to_json(&self) -> Value {
        q_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, Error> {
        if v.get("im").is_some() || v.get("float_re").is_some() {
            return Err(Error::Parse(format!("not a rational scalar: {v}")));
        }
        q_from_json(v)
    }
}

/// `re + im·i` with rational parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Q,
    pub im: Q,
}

impl Gaussian {
    pub fn new(re: Q, im: Q) -> Self {
        Gaussian { re, im }
    }
    pub fn i() -> Self {
        Gaussian::new(Q::from_integer(0), Q::from_integer(1))
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        // Skip the cross terms on the real line; most catalog scalars are real.
        if Zero::is_zero(&self.im) && Zero::is_zero(&o.im) {
            return Gaussian::new(self.re * o.re, Q::from_integer(0));
        }
        Gaussian::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Zero::is_zero(&self.re), Zero::is_zero(&self.im)) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -self.im),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

impl Scalar for Gaussian {
    const BACKEND: Backend = Backend::Gaussian;

    fn zero() -> Self {
        Gaussian::new(Q::from_integer(0), Q::from_integer(0))
    }
    fn one() -> Self {
        Gaussian::new(Q::from_integer(1), Q::from_integer(0))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Gaussian::new(Q::new(num, den), Q::from_integer(0))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = self.re * self.re + self.im * self.im;
        Some(Gaussian::new(self.re / n, -self.im / n))
    }
    fn conj(&self) -> Self {
        Gaussian::new(self.re, -self.im)
    }
    fn exp_i_pi(t: Q) -> Option<Self> {
        let r = reduce_turn(t) * Q::from_integer(2);
        if !r.is_integer() {
            return None;
        }
        Some(match r.to_integer() {
            0 => Gaussian::one(),
            1 => Gaussian::i(),
            2 => -Gaussian::one(),
            _ => -Gaussian::i(),
        })
    }
    fn magnitude(&self) -> f64 {
        self.re.magnitude() + self.im.magnitude()
    }
    fn to_json(&self) -> Value {
        json!({ "re": q_json(&self.re), "im": q_json(&self.im) })
    }
    fn from_json(v: &Value) -> Result<Self, Error> {
        match (v.get("re"), v.get("im")) {
            (Some(re), Some(im)) => Ok(Gaussian::new(q_from_json(re)?, q_from_json(im)?)),
            _ if v.get("num").is_some() => Ok(Gaussian::new(q_from_json(v)?, Q::from_integer(0))),
            _ => Err(Error::Parse(format!("not a gaussian-rational scalar: {v}"))),
        }
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.norm() <= float_epsilon()
    }
    fn inv(&self) -> Option<Self> {
        (!Scalar::is_zero(self)).then(|| Complex64::new(1.0, 0.0) / self)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn exp_i_pi(t: Q) -> Option<Self> {
        let r = reduce_turn(t);
        // Exact values at quarter turns keep float and exact runs aligned.
        let quarter = r * Q::from_integer(2);
        if quarter.is_integer() {
            return Some(match quarter.to_integer() {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            });
        }
        let x = std::f64::consts::PI * (*r.numer() as f64) / (*r.denom() as f64);
        Some(Complex64::new(x.cos(), x.sin()))
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_json(&self) -> Value {
        json!({ "float_re": self.re, "float_im": self.im })
    }
    fn from_json(v: &Value) -> Result<Self, Error> {
        if let Some(re) = v.get("float_re").and_then(Value::as_f64) {
            let im = v.get("float_im").and_then(Value::as_f64).unwrap_or(0.0);
            return Ok(Complex64::new(re, im));
        }
        if v.get("re").is_some() {
            let g = Gaussian::from_json(v)?;
            let f = |q: Q| *q.numer() as f64 / *q.denom() as f64;
            return Ok(Complex64::new(f(g.re), f(g.im)));
        }
        let q = q_from_json(v)?;
        Ok(Complex64::new(*q.numer() as f64 / *q.denom() as f64, 0.0))
    }
}

/// Dispatches a generic expression over the backend chosen at runtime.
#[macro_export]
macro_rules! with_backend {
    ($backend:expr, $S:ident => $body:expr) => {
        match $backend {
            $crate::scalar::Backend::Rational => {
                type $S = $crate::scalar::Q;
                $body
            }
            $crate::scalar::Backend::Gaussian => {
                type $S = $crate::scalar::Gaussian;
                $body
            }
            $crate::scalar::Backend::Float => {
                type $S = $crate::scalar::Complex64;
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_units() {
        let i = Gaussian::exp_i_pi(Q::new(1, 2)).unwrap();
        assert_eq!(i * i, -Gaussian::one());
        assert_eq!(Gaussian::exp_i_pi(Q::new(-1, 2)).unwrap(), i.conj());
        assert_eq!(Gaussian::exp_i_pi(Q::new(1, 3)), None);
        assert_eq!(Q::exp_i_pi(Q::new(3, 1)), Some(-Q::from_integer(1)));
    }

    #[test]
    fn gaussian_inverse() {
        let z = Gaussian::new(Q::new(1, 2), Q::new(-3, 4));
        assert_eq!(z * z.inv().unwrap(), Gaussian::one());
        assert!(Gaussian::zero().inv().is_none());
    }

    #[test]
    fn json_round_trip() {
        let z = Gaussian::new(Q::new(5, 3), Q::new(-1, 7));
        assert_eq!(Gaussian::from_json(&z.to_json()).unwrap(), z);
        let q = Q::new(-4, 9);
        assert_eq!(<Q as Scalar>::from_json(&q.to_json()).unwrap(), q);
        let c = Complex64::new(0.25, -2.0);
        assert_eq!(<Complex64 as Scalar>::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn float_roots_match_exact_quarter_turns() {
        let w = Complex64::exp_i_pi(Q::new(1, 3)).unwrap();
        let w6 = (0..6).fold(<Complex64 as Scalar>::one(), |acc, _| acc * w);
        assert!(w6.approx_eq(&<Complex64 as Scalar>::one()));
        assert_eq!(Complex64::exp_i_pi(Q::new(3, 2)).unwrap(), Complex64::new(0.0, -1.0));
    }
}
