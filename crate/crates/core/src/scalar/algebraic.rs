//! Real algebraic numbers.
//!
//! [`AlgebraicReal`] is a squarefree integer polynomial together with a
//! rational interval isolating exactly one of its real roots.
//! [`FieldElement`] is a value `f(alpha)` with `f` rational and `alpha` an
//! [`AlgebraicReal`] generator, so that arithmetic among numbers sharing a
//! generator reduces to polynomial arithmetic modulo the defining polynomial.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::interval::Interval;
use super::linalg::{charpoly, companion, kron, mat_poly, RatMatrix};
use super::poly::{rat_to_f64, sign, QPoly};
use super::roots::{bisect, isolate_qpoly};

/// A real root of a squarefree primitive integer polynomial, pinned by an
/// isolating interval.
///
/// For a linear polynomial the interval is the single point of the root.
/// Otherwise `lo < hi`, the polynomial has opposite nonzero signs at the
/// endpoints and exactly one root in between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicReal {
    poly: QPoly,
    interval: Interval,
}

impl AlgebraicReal {
    pub fn rational(x: BigRational) -> Self {
        let poly = QPoly::from_coeffs(vec![-x.clone(), BigRational::one()]).primitive();
        AlgebraicReal {
            poly,
            interval: Interval::point(x),
        }
    }

    pub(crate) fn from_isolating(poly: QPoly, interval: Interval) -> Self {
        debug_assert!(poly.deg() >= 2);
        debug_assert!(poly.sign_at(&interval.lo) * poly.sign_at(&interval.hi) < 0);
        AlgebraicReal { poly, interval }
    }

    /// Builds the root of `poly` lying in `[lo, hi]`; fails unless exactly
    /// one distinct real root lies there.
    pub fn from_poly_interval(poly: &QPoly, lo: BigRational, hi: BigRational) -> Option<Self> {
        if poly.is_zero() || lo > hi {
            return None;
        }
        let target = Interval::new(lo, hi);
        let mut hits: Vec<AlgebraicReal> = isolate_qpoly(poly)
            .into_iter()
            .filter(|r| r.may_lie_in(&target))
            .collect();
        // Refine candidates that straddle an endpoint until they settle.
        loop {
            let mut undecided = false;
            hits.retain(|r| match r.lies_in(&target) {
                Some(inside) => inside,
                None => {
                    undecided = true;
                    true
                }
            });
            if !undecided {
                break;
            }
            hits = hits.into_iter().map(|r| r.refine_once()).collect();
        }
        (hits.len() == 1).then(|| hits.pop().unwrap())
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.poly.deg() == 1).then(|| self.interval.lo.clone())
    }

    fn may_lie_in(&self, target: &Interval) -> bool {
        self.interval.intersects(target)
    }

    fn lies_in(&self, target: &Interval) -> Option<bool> {
        if !self.interval.intersects(target) {
            Some(false)
        } else if target.lo <= self.interval.lo && self.interval.hi <= target.hi {
            Some(true)
        } else if self.interval.is_point() {
            Some(target.contains(&self.interval.lo))
        } else {
            None
        }
    }

    /// Halves the isolating interval.
    pub fn refine_once(&self) -> Self {
        if self.interval.is_point() {
            return self.clone();
        }
        match bisect(&self.poly, &self.interval) {
            Ok(iv) => AlgebraicReal {
                poly: self.poly.clone(),
                interval: iv,
            },
            Err(x) => AlgebraicReal::rational(x),
        }
    }

    /// Refines until the interval is narrower than `width`.
    pub fn refined(&self, width: &BigRational) -> Self {
        let mut cur = self.clone();
        while !cur.interval.is_point() && &cur.interval.width() >= width {
            cur = cur.refine_once();
        }
        cur
    }

    /// Exact sign of `f` evaluated at this root.
    pub fn sign_of(&self, f: &QPoly) -> i8 {
        if let Some(x) = self.as_rational() {
            return f.sign_at(&x);
        }
        let r = f.rem(&self.poly);
        if r.is_constant() {
            return sign(&r.coeff(0));
        }
        let g = self.poly.gcd(&r);
        if g.deg() >= 1 && g.sign_at(&self.interval.lo) * g.sign_at(&self.interval.hi) < 0 {
            return 0;
        }
        // r(alpha) is a nonzero algebraic number, so refinement terminates.
        let mut cur = self.clone();
        loop {
            if let Some(s) = r.eval_interval(&cur.interval).strict_sign() {
                return s;
            }
            cur = cur.refine_once();
        }
    }

    /// Enclosure of `f(alpha)` of width below `width`.
    pub fn enclose(&self, f: &QPoly, width: &BigRational) -> Interval {
        let mut cur = self.clone();
        loop {
            let iv = f.eval_interval(&cur.interval);
            if &iv.width() < width || cur.interval.is_point() {
                return iv;
            }
            cur = cur.refine_once();
        }
    }

    /// Whether `self` and `other` denote the same real number.
    pub fn same_number(&self, other: &AlgebraicReal) -> bool {
        self.common_generator(other).is_some()
    }

    /// If both denote the same number, a representation whose polynomial
    /// divides both defining polynomials.
    pub fn common_generator(&self, other: &AlgebraicReal) -> Option<AlgebraicReal> {
        if self == other {
            return Some(self.clone());
        }
        let lo = std::cmp::max(&self.interval.lo, &other.interval.lo).clone();
        let hi = std::cmp::min(&self.interval.hi, &other.interval.hi).clone();
        if lo > hi {
            return None;
        }
        let g = self.poly.gcd(&other.poly);
        if g.deg() == 0 {
            return None;
        }
        let g = g.primitive();
        if lo == hi {
            return g.eval(&lo).is_zero().then(|| AlgebraicReal::rational(lo));
        }
        if g.sign_at(&lo) * g.sign_at(&hi) < 0 {
            if g.deg() == 1 {
                let root = -g.coeff(0) / g.coeff(1);
                return Some(AlgebraicReal::rational(root));
            }
            return Some(AlgebraicReal {
                poly: g,
                interval: Interval::new(lo, hi),
            });
        }
        None
    }

    /// Exact order of two real algebraic numbers.
    pub fn cmp_value(&self, other: &AlgebraicReal) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if self.same_number(other) {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.interval.hi < b.interval.lo {
                return Ordering::Less;
            }
            if b.interval.hi < a.interval.lo {
                return Ordering::Greater;
            }
            a = a.refine_once();
            b = b.refine_once();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let iv = self
            .refined(&BigRational::new(1.into(), (1u64 << 60).into()))
            .interval;
        rat_to_f64(&iv.midpoint())
    }

    /// Decimal string with `digits` digits after the point.
    pub fn decimal(&self, digits: usize) -> String {
        let iv = self.enclose(&QPoly::x(), &decimal_width(digits));
        format_decimal(&iv.midpoint(), digits)
    }

    /// Companion matrix of the defining polynomial.
    pub(crate) fn companion(&self) -> RatMatrix {
        companion(&self.poly)
    }
}

/// Half a unit in the last printed place.
pub(crate) fn decimal_width(digits: usize) -> BigRational {
    BigRational::new(
        1.into(),
        num_bigint::BigInt::from(10u32).pow(digits as u32) * 4,
    )
}

/// Rounds a rational to `digits` places after the point.
pub(crate) fn format_decimal(x: &BigRational, digits: usize) -> String {
    use num_bigint::BigInt;
    use num_traits::Signed;
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (x.abs() * BigRational::from_integer(scale.clone()))
        .round()
        .to_integer();
    let neg = x.is_negative() && !scaled.is_zero();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        s.push('.');
        s.push_str(&format!(
            "{:0>width$}",
            frac_part.to_string(),
            width = digits
        ));
    }
    s
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.as_rational() {
            return write!(f, "{x}");
        }
        write!(
            f,
            "root({}; [{}, {}]) ≈ {}",
            self.poly.display_var("x"),
            self.interval.lo,
            self.interval.hi,
            self.decimal(12)
        )
    }
}

/// The value `value(generator)`, with `value` reduced modulo the generator's
/// defining polynomial.
#[derive(Clone, Debug)]
pub struct FieldElement {
    generator: Arc<AlgebraicReal>,
    value: QPoly,
}

impl FieldElement {
    pub fn generator_value(generator: AlgebraicReal) -> Self {
        let value = QPoly::x().rem(generator.poly());
        FieldElement {
            generator: Arc::new(generator),
            value,
        }
    }

    pub fn new(generator: Arc<AlgebraicReal>, value: QPoly) -> Self {
        let value = value.rem(generator.poly());
        FieldElement { generator, value }
    }

    pub fn generator(&self) -> &Arc<AlgebraicReal> {
        &self.generator
    }

    pub fn value(&self) -> &QPoly {
        &self.value
    }

    /// Rational value if the reduced polynomial is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.value.is_constant().then(|| self.value.coeff(0))
    }

    pub fn signum(&self) -> i8 {
        self.generator.sign_of(&self.value)
    }

    pub fn enclose(&self, width: &BigRational) -> Interval {
        self.generator.enclose(&self.value, width)
    }

    /// Brings two elements onto one generator, if their generators agree.
    pub(crate) fn unify(&self, other: &FieldElement) -> Option<(Arc<AlgebraicReal>, QPoly, QPoly)> {
        if Arc::ptr_eq(&self.generator, &other.generator) || self.generator == other.generator {
            return Some((
                self.generator.clone(),
                self.value.clone(),
                other.value.clone(),
            ));
        }
        let common = self.generator.common_generator(&other.generator)?;
        let g = Arc::new(common);
        let a = self.value.rem(g.poly());
        let b = other.value.rem(g.poly());
        Some((g, a, b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<FieldElement> {
        let p = self.generator.poly();
        let (g, s, _) = self.value.ext_gcd(p);
        if g.deg() == 0 {
            return Some(FieldElement::new(self.generator.clone(), s));
        }
        // The generator's polynomial factors as g * (p / g); keep the factor
        // that carries the generator.
        let iv = self.generator.interval();
        if g.sign_at(&iv.lo) * g.sign_at(&iv.hi) < 0 {
            return None;
        }
        let rest = p.div_exact(&g).expect("gcd divides").primitive();
        let gen = if rest.deg() == 1 {
            AlgebraicReal::rational(-rest.coeff(0) / rest.coeff(1))
        } else {
            AlgebraicReal {
                poly: rest,
                interval: iv.clone(),
            }
        };
        FieldElement::new(Arc::new(gen), self.value.clone()).inverse()
    }

    /// Matrix of multiplication by this element on the power basis of the
    /// generator.
    pub(crate) fn multiplication_matrix(&self) -> RatMatrix {
        mat_poly(&self.value, &self.generator.companion())
    }

    /// Defining polynomial and isolating interval of this value.
    pub fn to_algebraic_real(&self) -> AlgebraicReal {
        if self.value == QPoly::x() {
            return (*self.generator).clone();
        }
        if let Some(x) = self.as_rational() {
            return AlgebraicReal::rational(x);
        }
        let cp = charpoly(&self.multiplication_matrix());
        select_root(&cp, |w| self.enclose(w))
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(
            &self
                .enclose(&BigRational::new(1.into(), (1u64 << 60).into()))
                .midpoint(),
        )
    }
}

/// Picks the root of `poly` matching a refinable enclosure.
pub(crate) fn select_root(
    poly: &QPoly,
    enclose: impl Fn(&BigRational) -> Interval,
) -> AlgebraicReal {
    let mut cands = isolate_qpoly(poly);
    let mut width = BigRational::one();
    loop {
        let target = enclose(&width);
        cands.retain(|c| c.interval.intersects(&target));
        assert!(
            !cands.is_empty(),
            "value is not a root of its characteristic polynomial"
        );
        if cands.len() == 1 {
            return cands.pop().unwrap();
        }
        cands = cands.into_iter().map(|c| c.refine_once()).collect();
        width /= BigRational::from_integer(4.into());
    }
}

/// Sum or product of two field elements over different generators, through
/// the characteristic polynomial of the Kronecker sum or product.
pub(crate) fn combine_unrelated(
    a: &FieldElement,
    b: &FieldElement,
    product: bool,
) -> AlgebraicReal {
    let ma = a.multiplication_matrix();
    let mb = b.multiplication_matrix();
    let ia = RatMatrix::identity(ma.n);
    let ib = RatMatrix::identity(mb.n);
    let m = if product {
        kron(&ma, &mb)
    } else {
        kron(&ma, &ib).add(&kron(&ia, &mb))
    };
    let cp = charpoly(&m);
    select_root(&cp, |w| {
        let half = w / BigRational::from_integer(8.into());
        let ea = a.enclose(&half);
        let eb = b.enclose(&half);
        if product {
            ea.mul(&eb)
        } else {
            ea.add(&eb)
        }
    })
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_algebraic_real())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::poly::rat;

    fn sqrt2() -> AlgebraicReal {
        AlgebraicReal::from_poly_interval(&QPoly::from_ints(&[-2, 0, 1]), rat(1, 1), rat(2, 1))
            .unwrap()
    }

    #[test]
    fn sign_decisions() {
        let a = sqrt2();
        assert_eq!(a.sign_of(&QPoly::from_ints(&[-2, 0, 1])), 0);
        assert_eq!(a.sign_of(&QPoly::from_ints(&[-141, 100])), 1);
        assert_eq!(a.sign_of(&QPoly::from_ints(&[-142, 100])), -1);
    }

    #[test]
    fn inverse_handles_reducible_generator() {
        // alpha = sqrt(2) presented through (x^2 - 2)(x^2 - 3).
        let p = QPoly::from_ints(&[-2, 0, 1]) * QPoly::from_ints(&[-3, 0, 1]);
        let gen = AlgebraicReal {
            poly: p,
            interval: Interval::new(rat(13, 10), rat(3, 2)),
        };
        let e = FieldElement::new(Arc::new(gen), QPoly::from_ints(&[-3, 0, 1]));
        // x^2 - 3 at sqrt(2) is -1.
        let inv = e.inverse().unwrap();
        assert_eq!(inv.signum(), -1);
        assert_eq!(inv.as_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn unrelated_sum_has_quartic_poly() {
        let a = FieldElement::generator_value(sqrt2());
        let s3 =
            AlgebraicReal::from_poly_interval(&QPoly::from_ints(&[-3, 0, 1]), rat(1, 1), rat(2, 1))
                .unwrap();
        let b = FieldElement::generator_value(s3);
        let s = combine_unrelated(&a, &b, false);
        assert_eq!(s.poly(), &QPoly::from_ints(&[1, 0, -10, 0, 1]));
        assert!((s.to_f64() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
        let p = combine_unrelated(&a, &b, true);
        assert_eq!(p.poly(), &QPoly::from_ints(&[-6, 0, 1]));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(format_decimal(&rat(5, 2), 0), "3");
        assert_eq!(sqrt2().decimal(6), "1.414214");
    }
}
