//! Quadratic surds `a + b*sqrt(d)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::algebraic::AlgebraicReal;
use super::interval::Interval;
use super::poly::{sign, QPoly};

/// `a + b*sqrt(d)` with `b != 0` and `d >= 2` squarefree (as far as trial
/// division up to a fixed bound can tell).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

const TRIAL_LIMIT: u64 = 100_000;

/// Splits `n > 0` as `s^2 * r` with `r` free of square factors below the
/// trial-division bound.
pub fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut r = n.clone();
    let mut s = BigInt::one();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pp = BigInt::from(p * p);
        if pp > r {
            break;
        }
        while (&r % &pp).is_zero() {
            r /= &pp;
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = r.sqrt();
    if &root * &root == r {
        s *= &root;
        r = BigInt::one();
    }
    (s, r)
}

/// Result of normalizing `a + b*sqrt(n)`: rational when the radical
/// vanishes or is a perfect square.
pub enum QuadValue {
    Rational(BigRational),
    Surd(Surd),
}

impl Surd {
    pub fn normalized(a: BigRational, b: BigRational, n: &BigInt) -> QuadValue {
        assert!(!n.is_negative(), "negative radicand");
        if b.is_zero() || n.is_zero() {
            return QuadValue::Rational(a);
        }
        let (s, r) = square_split(n);
        let b = b * BigRational::from_integer(s);
        if r.is_one() {
            return QuadValue::Rational(a + b);
        }
        QuadValue::Surd(Surd { a, b, d: r })
    }

    /// `sqrt(q)` for a nonnegative rational.
    pub fn sqrt_rational(q: &BigRational) -> QuadValue {
        assert!(!q.is_negative(), "square root of a negative number");
        // sqrt(p/q) = sqrt(p*q)/q
        let n = q.numer() * q.denom();
        let b = BigRational::new(BigInt::one(), q.denom().clone());
        Surd::normalized(BigRational::zero(), b, &n)
    }

    pub fn signum(&self) -> i8 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == 0 || sa == sb {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(self.d.clone());
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    /// Rational bounds on `sqrt(d)` of width at most `2^-k`.
    fn sqrt_d_enclosure(&self, k: u32) -> Interval {
        let scale = BigInt::one() << k;
        let s = (&self.d * &scale * &scale).sqrt();
        let den = BigRational::from_integer(scale);
        Interval::new(
            BigRational::from_integer(s.clone()) / &den,
            BigRational::from_integer(s + 1) / &den,
        )
    }

    pub fn enclose(&self, width: &BigRational) -> Interval {
        let mut k = 8;
        loop {
            let iv = self.sqrt_d_enclosure(k).scale(&self.b).add_scalar(&self.a);
            if &iv.width() < width {
                return iv;
            }
            k += 8;
        }
    }

    /// Monic-free integer minimal polynomial `x^2 - 2a x + a^2 - b^2 d`.
    pub fn minpoly(&self) -> QPoly {
        let d = BigRational::from_integer(self.d.clone());
        QPoly::from_coeffs(vec![
            &self.a * &self.a - &self.b * &self.b * d,
            -BigRational::from_integer(2.into()) * &self.a,
            BigRational::one(),
        ])
        .primitive()
    }

    pub fn to_algebraic_real(&self) -> AlgebraicReal {
        // Conjugates differ by 2|b|sqrt(d) > 2|b|, so an enclosure of width
        // |b| isolates.
        let iv = self.enclose(&self.b.abs());
        AlgebraicReal::from_poly_interval(&self.minpoly(), iv.lo, iv.hi)
            .expect("surd enclosure isolates")
    }

    /// `sqrt(d)` as an algebraic real, the shared generator for all surds
    /// with this radicand.
    pub fn radical_generator(d: &BigInt) -> AlgebraicReal {
        let s = d.sqrt();
        let poly = QPoly::from_coeffs(vec![
            -BigRational::from_integer(d.clone()),
            BigRational::zero(),
            BigRational::one(),
        ]);
        AlgebraicReal::from_isolating(
            poly,
            Interval::new(
                BigRational::from_integer(s.clone()),
                BigRational::from_integer(s + 1),
            ),
        )
    }

    pub fn to_f64(&self) -> f64 {
        use super::poly::rat_to_f64;
        rat_to_f64(&self.a)
            + rat_to_f64(&self.b) * rat_to_f64(&BigRational::from_integer(self.d.clone())).sqrt()
    }

    /// Conjugate norm `a^2 - b^2 d`, nonzero for an irrational surd.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    pub fn add(&self, o: &Surd) -> QuadValue {
        debug_assert_eq!(self.d, o.d);
        Surd::normalized(&self.a + &o.a, &self.b + &o.b, &self.d)
    }

    pub fn add_rational(&self, q: &BigRational) -> Surd {
        Surd {
            a: &self.a + q,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, o: &Surd) -> QuadValue {
        debug_assert_eq!(self.d, o.d);
        let d = BigRational::from_integer(self.d.clone());
        let a = &self.a * &o.a + &self.b * &o.b * d;
        let b = &self.a * &o.b + &self.b * &o.a;
        Surd::normalized(a, b, &self.d)
    }

    pub fn mul_rational(&self, q: &BigRational) -> QuadValue {
        Surd::normalized(&self.a * q, &self.b * q, &self.d)
    }

    pub fn neg(&self) -> Surd {
        Surd {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn recip(&self) -> Surd {
        let n = self.norm();
        Surd {
            a: &self.a / &n,
            b: -&self.b / &n,
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mag = self.b.abs();
        let radical = if mag.is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", mag, self.d)
        };
        let neg = self.b.is_negative();
        if self.a.is_zero() {
            write!(f, "{}{}", if neg { "-" } else { "" }, radical)
        } else {
            write!(f, "{}{}{}", self.a, if neg { "-" } else { "+" }, radical)
        }
    }
}
