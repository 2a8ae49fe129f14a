//! Exact scalar tower, polynomials and real root isolation.
//!
//! A [`Scalar`] is a rational, a quadratic surd, a real algebraic number or
//! a binary64 float. Exact variants promote among themselves; floats never
//! mix with exact values implicitly. Use [`Scalar::to_float`] to demote.

pub mod algebraic;
pub mod interval;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod surd;
pub mod unipoly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
pub use algebraic::{AlgebraicReal, FieldElement};
pub use interval::Interval;
pub use poly::QPoly;
pub use surd::Surd;
pub use unipoly::{UniPoly, Var};

use algebraic::{combine_unrelated, decimal_width, format_decimal};
use poly::{rat_to_f64, sign};
use surd::QuadValue;

/// Digits printed after the decimal point unless configured otherwise.
pub const DEFAULT_DIGITS: usize = 12;

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Surd(Surd),
    Algebraic(FieldElement),
    Float(f64),
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Mul,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar::Rational(q)
    }

    pub fn float(x: f64) -> Self {
        Scalar::Float(x)
    }

    /// `a + b*sqrt(d)`, normalized.
    pub fn surd(a: BigRational, b: BigRational, d: &BigInt) -> Self {
        Self::from_quad(Surd::normalized(a, b, d))
    }

    /// Square root of a nonnegative rational, or of a nonnegative float.
    pub fn sqrt(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) if !q.is_negative() => Ok(Self::from_quad(Surd::sqrt_rational(q))),
            Scalar::Float(x) if *x >= 0.0 => Ok(Scalar::Float(x.sqrt())),
            Scalar::Rational(_) | Scalar::Float(_) => Err(Error::Unsupported(
                "square root of a negative number".into(),
            )),
            _ => Err(Error::Unsupported(
                "square roots are taken of rationals only; use root(poly; [lo,hi])".into(),
            )),
        }
    }

    fn from_quad(q: QuadValue) -> Self {
        match q {
            QuadValue::Rational(r) => Scalar::Rational(r),
            QuadValue::Surd(s) => Scalar::Surd(s),
        }
    }

    /// Converts an algebraic real to the simplest exact variant.
    pub fn from_algebraic_real(a: AlgebraicReal) -> Self {
        if let Some(q) = a.as_rational() {
            return Scalar::Rational(q);
        }
        Self::from_field(FieldElement::generator_value(a))
    }

    fn from_field(f: FieldElement) -> Self {
        if let Some(q) = f.as_rational() {
            return Scalar::Rational(q);
        }
        let gen = f.generator().clone();
        if let Some(r) = gen.as_rational() {
            return Scalar::Rational(f.value().eval(&r));
        }
        if gen.degree() == 2 {
            // alpha = c + sigma*sqrt(disc)/(2A) with c the midpoint of the conjugates.
            let p = gen.poly();
            let (a2, b1, c0) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let two_a = BigRational::from_integer(2.into()) * &a2;
            let center = -&b1 / &two_a;
            let disc = (&b1 * &b1 - BigRational::from_integer(4.into()) * &a2 * &c0).to_integer();
            let side = gen.sign_of(&QPoly::from_coeffs(vec![
                -center.clone(),
                BigRational::one(),
            ]));
            let v0 = f.value().coeff(0);
            let v1 = f.value().coeff(1);
            let a = v0 + &v1 * &center;
            let b = v1 * BigRational::from_integer(side.into()) / two_a;
            return Self::surd(a, b, &disc);
        }
        Scalar::Algebraic(f)
    }

    fn to_field(&self) -> Option<FieldElement> {
        match self {
            Scalar::Surd(s) => Some(FieldElement::new(
                Arc::new(Surd::radical_generator(&s.d)),
                QPoly::from_coeffs(vec![s.a.clone(), s.b.clone()]),
            )),
            Scalar::Algebraic(f) => Some(f.clone()),
            _ => None,
        }
    }

    pub fn is_float(&self) -> bool {
        matches!(self, Scalar::Float(_))
    }

    pub fn is_exact(&self) -> bool {
        !self.is_float()
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Explicit demotion to binary64.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => rat_to_f64(q),
            Scalar::Float(x) => *x,
            Scalar::Surd(s) => {
                let approx = s.to_f64();
                let w = BigRational::new(BigInt::one(), BigInt::one() << 64usize)
                    * BigRational::from_float(approx.abs().max(1e-300))
                        .unwrap_or_else(BigRational::one);
                rat_to_f64(&s.enclose(&w).midpoint())
            }
            Scalar::Algebraic(f) => f.to_f64(),
        }
    }

    /// Exact sign; floats report the sign of the value with 0 for zero.
    pub fn signum(&self) -> i8 {
        match self {
            Scalar::Rational(q) => sign(q),
            Scalar::Surd(s) => s.signum(),
            Scalar::Algebraic(f) => f.signum(),
            Scalar::Float(x) => {
                if *x > 0.0 {
                    1
                } else if *x < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Float(x) => *x == 0.0,
            _ => false,
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    fn exact_binop(x: &Scalar, y: &Scalar, op: Op) -> Scalar {
        use Scalar::*;
        match (x, y, op) {
            (Rational(a), Rational(b), Op::Add) => Rational(a + b),
            (Rational(a), Rational(b), Op::Mul) => Rational(a * b),
            (Rational(q), Surd(s), Op::Add) | (Surd(s), Rational(q), Op::Add) => {
                Surd(s.add_rational(q))
            }
            (Rational(q), Surd(s), Op::Mul) | (Surd(s), Rational(q), Op::Mul) => {
                Self::from_quad(s.mul_rational(q))
            }
            (Surd(s), Surd(t), Op::Add) if s.d == t.d => Self::from_quad(s.add(t)),
            (Surd(s), Surd(t), Op::Mul) if s.d == t.d => Self::from_quad(s.mul(t)),
            (Rational(q), other, _) | (other, Rational(q), _) => {
                let f = other.to_field().expect("irrational exact value");
                let c = QPoly::constant(q.clone());
                let v = match op {
                    Op::Add => f.value() + &c,
                    Op::Mul => f.value() * &c,
                };
                Self::from_field(FieldElement::new(f.generator().clone(), v))
            }
            _ => {
                let fx = x.to_field().expect("exact");
                let fy = y.to_field().expect("exact");
                match fx.unify(&fy) {
                    Some((g, a, b)) => {
                        let v = match op {
                            Op::Add => &a + &b,
                            Op::Mul => &a * &b,
                        };
                        Self::from_field(FieldElement::new(g, v))
                    }
                    None => Self::from_algebraic_real(combine_unrelated(
                        &fx,
                        &fy,
                        matches!(op, Op::Mul),
                    )),
                }
            }
        }
    }

    fn checked_op(&self, other: &Scalar, op: Op) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(match op {
                Op::Add => a + b,
                Op::Mul => a * b,
            })),
            (Scalar::Float(_), _) | (_, Scalar::Float(_)) => Err(Error::MixedArithmetic),
            _ => Ok(Self::exact_binop(self, other, op)),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_op(other, Op::Add)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_op(&-other, Op::Add)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_op(other, Op::Mul)
    }

    pub fn recip(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) if q.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(q) => Ok(Scalar::Rational(q.recip())),
            Scalar::Surd(s) => Ok(Scalar::Surd(s.recip())),
            Scalar::Algebraic(f) => f
                .inverse()
                .map(Self::from_field)
                .ok_or(Error::DivisionByZero),
            Scalar::Float(x) if *x == 0.0 => Err(Error::DivisionByZero),
            Scalar::Float(x) => Ok(Scalar::Float(1.0 / x)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if self.is_float() != other.is_float() {
            return Err(Error::MixedArithmetic);
        }
        self.checked_mul(&other.recip()?)
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut out = if self.is_float() {
            Scalar::Float(1.0)
        } else {
            Scalar::one()
        };
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact comparison; errors on mixed float and exact operands.
    pub fn cmp_exact(&self, other: &Scalar) -> Result<Ordering> {
        if self.is_float() || other.is_float() {
            let d = self.checked_sub(other)?;
            return Ok(d.signum().cmp(&0));
        }
        if let Some(d) = self.difference_in_common_field(other) {
            return Ok(d.signum().cmp(&0));
        }
        // Different fields: compare isolating intervals instead of building
        // the compositum.
        Ok(self
            .to_algebraic_real()?
            .cmp_value(&other.to_algebraic_real()?))
    }

    /// `self - other` when both already live in one number field.
    fn difference_in_common_field(&self, other: &Scalar) -> Option<Scalar> {
        use Scalar::*;
        match (self, other) {
            (Rational(_), _) | (_, Rational(_)) => Some(self - other),
            (Surd(s), Surd(t)) if s.d == t.d => Some(self - other),
            (Surd(_), Surd(_)) => None,
            _ => {
                let (fx, fy) = (self.to_field()?, other.to_field()?);
                let (g, a, b) = fx.unify(&fy)?;
                Some(Self::from_field(FieldElement::new(g, &a - &b)))
            }
        }
    }

    /// Rational enclosure narrower than `width`.
    pub fn enclose(&self, width: &BigRational) -> Result<Interval> {
        match self {
            Scalar::Rational(q) => Ok(Interval::point(q.clone())),
            Scalar::Surd(s) => Ok(s.enclose(width)),
            Scalar::Algebraic(f) => Ok(f.enclose(width)),
            Scalar::Float(_) => Err(Error::ExactInputRequired),
        }
    }

    pub fn to_algebraic_real(&self) -> Result<AlgebraicReal> {
        match self {
            Scalar::Rational(q) => Ok(AlgebraicReal::rational(q.clone())),
            Scalar::Surd(s) => Ok(s.to_algebraic_real()),
            Scalar::Algebraic(f) => Ok(f.to_algebraic_real()),
            Scalar::Float(_) => Err(Error::ExactInputRequired),
        }
    }

    /// Decimal rendering with `digits` places after the point.
    pub fn decimal(&self, digits: usize) -> String {
        match self {
            Scalar::Float(x) => format!("{:.*}", digits, x),
            Scalar::Rational(q) => format_decimal(q, digits),
            exact => {
                let iv = exact.enclose(&decimal_width(digits)).expect("exact");
                format_decimal(&iv.midpoint(), digits)
            }
        }
    }

    /// Canonical text form; algebraic reals carry a decimal with `digits`
    /// places, floats print with `digits` significant digits.
    pub fn display_with(&self, digits: usize) -> String {
        match self {
            Scalar::Rational(q) => q.to_string(),
            Scalar::Surd(s) => s.to_string(),
            Scalar::Algebraic(f) => {
                let a = f.to_algebraic_real();
                format!(
                    "root({}; [{}, {}]) ≈ {}",
                    a.poly().display_var("x"),
                    a.interval().lo,
                    a.interval().hi,
                    a.decimal(digits)
                )
            }
            Scalar::Float(x) => format_float(*x, digits),
        }
    }
}

/// Shortest of `{}` and `digits` significant digits, so that round values
/// stay short and long ones are bounded.
pub fn format_float(x: f64, digits: usize) -> String {
    let plain = format!("{x}");
    if plain.len() <= digits + 3 {
        return plain;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let v: f64 = s.parse().unwrap_or(x);
    format!("{v}")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(DEFAULT_DIGITS))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            (Scalar::Float(_), _) | (_, Scalar::Float(_)) => false,
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Surd(a), Scalar::Surd(b)) => a == b,
            (Scalar::Rational(_), Scalar::Surd(_)) | (Scalar::Surd(_), Scalar::Rational(_)) => {
                false
            }
            _ => self.cmp_exact(other).is_ok_and(Ordering::is_eq),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        self.cmp_exact(other).ok().or_else(|| match (self, other) {
            (Scalar::Float(a), Scalar::Float(b)) => a.partial_cmp(b),
            _ => None,
        })
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

const MIXED: &str = "mixed float and exact arithmetic; demote explicitly with to_float";

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(Error::DivisionByZero) => panic!("division by zero"),
                    Err(_) => panic!("{}", MIXED),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Surd(s) => Scalar::Surd(s.neg()),
            Scalar::Algebraic(f) => {
                Scalar::Algebraic(FieldElement::new(f.generator().clone(), -f.value()))
            }
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Float(x) => s.serialize_f64(*x),
            exact => s.serialize_str(&exact.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(Scalar::Float(x)),
            Repr::Text(t) => {
                parse::parse_scalar(&t, parse::Mode::Exact).map_err(serde::de::Error::custom)
            }
        }
    }
}

/// Algebraic structure shared by matrix entries: scalars, polynomials and
/// floats.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_r(&self, o: &Self) -> Self;
    fn sub_r(&self, o: &Self) -> Self;
    fn mul_r(&self, o: &Self) -> Self;
    fn neg_r(&self) -> Self;
    fn is_zero_r(&self) -> bool;
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        if self.is_float() {
            Scalar::Float(0.0)
        } else {
            Scalar::zero()
        }
    }
    fn one_like(&self) -> Self {
        if self.is_float() {
            Scalar::Float(1.0)
        } else {
            Scalar::one()
        }
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn is_zero_r(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for QPoly {
    fn zero_like(&self) -> Self {
        QPoly::zero()
    }
    fn one_like(&self) -> Self {
        QPoly::one()
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn is_zero_r(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn is_zero_r(&self) -> bool {
        *self == 0.0
    }
}

/// Distinct real roots of `p`, ascending, each isolating interval narrower
/// than `width`.
pub fn isolate_real_roots(p: &UniPoly, width: &BigRational) -> Result<Vec<AlgebraicReal>> {
    let q = p.to_qpoly()?;
    if q.is_zero() {
        return Err(Error::NoRootSet);
    }
    Ok(roots::isolate_qpoly(&q)
        .into_iter()
        .map(|r| r.refined(width))
        .collect())
}

/// Rational roots of `p`, ascending.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<BigRational>> {
    let q = p.to_qpoly()?;
    if q.is_zero() {
        return Err(Error::NoRootSet);
    }
    Ok(roots::rational_roots_qpoly(&q))
}

/// Exact sign of `p(x)`.
pub fn sign_at(p: &UniPoly, x: &Scalar) -> Result<i8> {
    if x.is_float() {
        return Err(Error::ExactInputRequired);
    }
    let q = p.to_qpoly()?;
    Ok(sign_of_qpoly_at(&q, x))
}

/// Exact sign of a rational polynomial at an exact scalar.
pub fn sign_of_qpoly_at(q: &QPoly, x: &Scalar) -> i8 {
    match x {
        Scalar::Rational(r) => q.sign_at(r),
        Scalar::Float(_) => panic!("exact input required"),
        other => {
            let f = other.to_field().expect("exact");
            f.generator().sign_of(&q.compose(f.value()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly::rat;

    fn s2() -> Scalar {
        Scalar::int(2).sqrt().unwrap()
    }

    #[test]
    fn surd_arithmetic_normalizes() {
        let r = &s2() * &s2();
        assert_eq!(r, Scalar::int(2));
        assert!(r.is_rational());
        let half = &s2() / &Scalar::int(2);
        assert_eq!(half.to_string(), "1/2*sqrt(2)");
        assert_eq!(half.recip().unwrap().to_string(), "sqrt(2)");
    }

    #[test]
    fn mixed_radicals_promote() {
        let s3 = Scalar::int(3).sqrt().unwrap();
        let sum = &s2() + &s3;
        assert!(matches!(sum, Scalar::Algebraic(_)));
        assert!((sum.to_f64() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-14);
        let back = &(&sum - &s3) - &s2();
        assert!(back.is_zero() || back.signum() == 0);
        let prod = &s2() * &s3;
        assert_eq!(prod, Scalar::int(6).sqrt().unwrap());
    }

    #[test]
    fn mixing_float_and_exact_is_an_error() {
        assert_eq!(
            Scalar::int(1).checked_add(&Scalar::Float(1.0)),
            Err(Error::MixedArithmetic)
        );
        assert_eq!(
            Scalar::int(1).to_float().checked_add(&Scalar::Float(1.0)),
            Ok(Scalar::Float(2.0))
        );
    }

    #[test]
    fn spec_root_examples() {
        let p = UniPoly::from_qpoly(QPoly::from_ints(&[-1, 0, 1]), Var::Lambda);
        let roots = isolate_real_roots(&p, &rat(1, 1_000_000)).unwrap();
        assert_eq!(
            roots
                .iter()
                .map(|r| r.as_rational().unwrap())
                .collect::<Vec<_>>(),
            vec![rat(-1, 1), rat(1, 1)]
        );

        let lam = UniPoly::from_qpoly(QPoly::x(), Var::Lambda);
        let r0 = isolate_real_roots(&lam, &rat(1, 1_000_000)).unwrap();
        assert_eq!(r0.len(), 1);
        assert_eq!(r0[0].as_rational(), Some(rat(0, 1)));

        let q = UniPoly::from_qpoly(QPoly::from_ints(&[-1, 0, 2]), Var::Lambda);
        let w = rat(1, 1_000_000);
        let r = isolate_real_roots(&q, &w).unwrap();
        assert_eq!(r.len(), 2);
        for (root, expect) in r.iter().zip([
            -std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_1_SQRT_2,
        ]) {
            assert!(root.interval().width() < w);
            assert!((root.to_f64() - expect).abs() < 1e-6);
        }
        assert!(rational_roots(&q).unwrap().is_empty());
        let q4 = UniPoly::from_qpoly(QPoly::from_ints(&[-1, 0, 4]), Var::Lambda);
        assert_eq!(rational_roots(&q4).unwrap(), vec![rat(-1, 2), rat(1, 2)]);
    }

    #[test]
    fn root_errors() {
        let z = UniPoly::from_qpoly(QPoly::zero(), Var::E);
        assert_eq!(isolate_real_roots(&z, &rat(1, 2)), Err(Error::NoRootSet));
        let f = UniPoly::new(vec![Scalar::Float(1.0), Scalar::Float(1.0)], Var::E);
        assert_eq!(
            isolate_real_roots(&f, &rat(1, 2)),
            Err(Error::ExactInputRequired)
        );
        assert_eq!(
            sign_at(
                &UniPoly::from_qpoly(QPoly::x(), Var::E),
                &Scalar::Float(0.0)
            ),
            Err(Error::ExactInputRequired)
        );
    }

    #[test]
    fn sign_at_examples() {
        // (2 lambda)^2 - 4 at lambda = 1
        let p = UniPoly::from_qpoly(QPoly::from_ints(&[-4, 0, 4]), Var::Lambda);
        assert_eq!(sign_at(&p, &Scalar::int(1)).unwrap(), 0);
        let lam = UniPoly::from_qpoly(QPoly::x(), Var::Lambda);
        assert_eq!(sign_at(&lam, &Scalar::zero()).unwrap(), 0);
        // trace of word (1,1,0,1,0) at E = 0 is -lambda^3 + 4 lambda... checked
        // through its value 3/sqrt(2) at the positive zero of 2 lambda^2 - 1.
        let x = AlgebraicReal::from_poly_interval(
            &QPoly::from_ints(&[-1, 0, 2]),
            rat(7, 10),
            rat(71, 100),
        )
        .unwrap();
        let x = Scalar::from_algebraic_real(x);
        let tr = &Scalar::int(3) / &s2();
        assert_eq!(tr, &x * &Scalar::int(3));
        let tr2m4 = UniPoly::from_qpoly(QPoly::from_ints(&[-4, 0, 9]), Var::Lambda);
        assert_eq!(sign_at(&tr2m4, &x).unwrap(), 1);
    }

    #[test]
    fn serde_round_trip() {
        for v in [
            Scalar::ratio(-5, 7),
            s2(),
            Scalar::Float(0.25),
            &Scalar::int(2).sqrt().unwrap() + &Scalar::int(3).sqrt().unwrap(),
        ] {
            let j = serde_json::to_string(&v).unwrap();
            let back: Scalar = serde_json::from_str(&j).unwrap();
            assert_eq!(back, v, "{j}");
        }
    }
}
