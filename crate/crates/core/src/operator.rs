//! Periodic potentials, transfer and monodromy matrices, finite sections.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::linalg::det_qpoly;
use crate::scalar::{QPoly, Ring, Scalar, UniPoly, Var};

/// One period `v(0), ..., v(K-1)` of a periodic potential.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    window: Vec<Scalar>,
    exact: bool,
}

impl Potential {
    /// Mixed float and exact entries are demoted to floats.
    pub fn new(window: Vec<Scalar>) -> Result<Self> {
        if window.is_empty() {
            return Err(Error::EmptyPotential);
        }
        if window
            .iter()
            .any(|v| matches!(v, Scalar::Float(x) if !x.is_finite()))
        {
            return Err(Error::NonFinite);
        }
        let exact = window.iter().all(Scalar::is_exact);
        let window = if exact || window.iter().all(Scalar::is_float) {
            window
        } else {
            window.iter().map(Scalar::to_float).collect()
        };
        Ok(Potential { window, exact })
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Potential::new(values.iter().map(|&v| Scalar::int(v)).collect()).expect("nonempty")
    }

    /// `v = lambda * w` for a 0/1 word.
    pub fn from_word(word: &[u8], lambda: &Scalar) -> Result<Self> {
        if word.iter().any(|&b| b > 1) {
            return Err(Error::InvalidWord);
        }
        let zero = lambda.zero_like();
        Potential::new(
            word.iter()
                .map(|&b| if b == 1 { lambda.clone() } else { zero.clone() })
                .collect(),
        )
    }

    pub fn period(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[Scalar] {
        &self.window
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_rational(&self) -> bool {
        self.window.iter().all(Scalar::is_rational)
    }

    pub fn rational_window(&self) -> Option<Vec<BigRational>> {
        self.window
            .iter()
            .map(|v| v.as_rational().cloned())
            .collect()
    }

    /// `v(n)` for any integer `n`.
    pub fn value(&self, n: i64) -> &Scalar {
        &self.window[n.rem_euclid(self.period() as i64) as usize]
    }

    /// `u(n) = v(n + j)`.
    pub fn shifted(&self, j: i64) -> Potential {
        let k = self.period() as i64;
        Potential {
            window: (0..k).map(|n| self.value(n + j).clone()).collect(),
            exact: self.exact,
        }
    }

    /// `u(n) = v(j - 1 - n)`, the potential whose forward monodromy is the
    /// reversed-order product starting at `j`.
    pub fn reflected_at(&self, j: i64) -> Potential {
        let k = self.period() as i64;
        Potential {
            window: (0..k).map(|n| self.value(j - 1 - n).clone()).collect(),
            exact: self.exact,
        }
    }

    /// Window read backwards, `u(n) = v(K - 1 - n)`.
    pub fn reversed(&self) -> Potential {
        self.reflected_at(self.period() as i64)
    }

    /// The same operator described with two periods per window.
    pub fn doubled(&self) -> Potential {
        let mut window = self.window.clone();
        window.extend_from_slice(&self.window);
        Potential {
            window,
            exact: self.exact,
        }
    }

    pub fn to_float(&self) -> Potential {
        Potential {
            window: self.window.iter().map(Scalar::to_float).collect(),
            exact: false,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.window.iter().map(Scalar::to_f64).collect()
    }

    /// Zero in the arithmetic mode of this potential.
    pub fn zero(&self) -> Scalar {
        self.window[0].zero_like()
    }

    fn check_energy(&self, e: &Scalar) -> Result<()> {
        if e.is_exact() != self.exact {
            return Err(Error::MixedArithmetic);
        }
        Ok(())
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(Scalar::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// 2x2 matrix `[[m11, m12], [m21, m22]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2<T> {
    pub m11: T,
    pub m12: T,
    pub m21: T,
    pub m22: T,
}

impl<T: Ring> Mat2<T> {
    pub fn new(m11: T, m12: T, m21: T, m22: T) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn identity_like(x: &T) -> Self {
        Mat2::new(x.one_like(), x.zero_like(), x.zero_like(), x.one_like())
    }

    pub fn mul(&self, o: &Mat2<T>) -> Mat2<T> {
        Mat2 {
            m11: self.m11.mul_r(&o.m11).add_r(&self.m12.mul_r(&o.m21)),
            m12: self.m11.mul_r(&o.m12).add_r(&self.m12.mul_r(&o.m22)),
            m21: self.m21.mul_r(&o.m11).add_r(&self.m22.mul_r(&o.m21)),
            m22: self.m21.mul_r(&o.m12).add_r(&self.m22.mul_r(&o.m22)),
        }
    }

    pub fn det(&self) -> T {
        self.m11.mul_r(&self.m22).sub_r(&self.m12.mul_r(&self.m21))
    }

    pub fn trace(&self) -> T {
        self.m11.add_r(&self.m22)
    }

    pub fn transpose(&self) -> Mat2<T> {
        Mat2::new(
            self.m11.clone(),
            self.m21.clone(),
            self.m12.clone(),
            self.m22.clone(),
        )
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2 {
            m11: f(&self.m11),
            m12: f(&self.m12),
            m21: f(&self.m21),
            m22: f(&self.m22),
        }
    }
}

impl Mat2<Scalar> {
    pub fn from_ints(m11: i64, m12: i64, m21: i64, m22: i64) -> Self {
        Mat2::new(
            Scalar::int(m11),
            Scalar::int(m12),
            Scalar::int(m21),
            Scalar::int(m22),
        )
    }
}

impl fmt::Display for Mat2<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

/// Product of transfer matrices with diagonal entries `d(n)` and energy
/// `e`: forward order `T(K-1+j)...T(j)`, or reversed order `T(j)...T(K-1+j)`.
pub(crate) fn transfer_product<T: Ring>(
    diag: impl Fn(i64) -> T,
    e: &T,
    k: usize,
    j: i64,
    reversed: bool,
) -> Mat2<T> {
    let mut acc = Mat2::identity_like(e);
    for n in j..j + k as i64 {
        let t = symbolic_transfer(&diag(n), e);
        acc = if reversed { acc.mul(&t) } else { t.mul(&acc) };
    }
    acc
}

fn symbolic_transfer<T: Ring>(v: &T, e: &T) -> Mat2<T> {
    let one = e.one_like();
    Mat2::new(e.sub_r(v), one.neg_r(), one, e.zero_like())
}

/// `T(n, E) = [[E - v(n), -1], [1, 0]]`.
pub fn transfer_matrix(v_n: &Scalar, e: &Scalar) -> Result<Mat2<Scalar>> {
    if v_n.is_exact() != e.is_exact() {
        return Err(Error::MixedArithmetic);
    }
    Ok(symbolic_transfer(v_n, e))
}

/// Monodromy matrix starting at shift `j` (any integer), in forward or
/// reversed multiplication order.
pub fn monodromy(p: &Potential, e: &Scalar, j: i64, reversed: bool) -> Result<Mat2<Scalar>> {
    p.check_energy(e)?;
    Ok(transfer_product(
        |n| p.value(n).clone(),
        e,
        p.period(),
        j,
        reversed,
    ))
}

/// Monodromy at `E = 0` in the potential's own arithmetic mode.
pub fn monodromy_at_zero(p: &Potential, j: i64, reversed: bool) -> Mat2<Scalar> {
    monodromy(p, &p.zero(), j, reversed).expect("matching modes")
}

/// Monodromy matrix as polynomials in `E`.
pub fn monodromy_polynomial(p: &Potential) -> Mat2<UniPoly> {
    let zero = p.zero();
    let e = UniPoly::linear(&zero, Var::E);
    transfer_product(
        |n| UniPoly::constant(p.value(n).clone(), Var::E),
        &e,
        p.period(),
        0,
        false,
    )
}

/// Monodromy matrix over `Q[E]` for a rational potential.
pub fn monodromy_qpoly(p: &Potential) -> Option<Mat2<QPoly>> {
    let w = p.rational_window()?;
    let k = w.len() as i64;
    Some(transfer_product(
        |n| QPoly::constant(w[n.rem_euclid(k) as usize].clone()),
        &QPoly::x(),
        w.len(),
        0,
        false,
    ))
}

/// `tr M(E)`, monic of degree `K`.
pub fn trace_polynomial(p: &Potential) -> UniPoly {
    let m = monodromy_polynomial(p);
    m.m11.add_r(&m.m22)
}

/// The tridiagonal matrix `H_{a..b}` with unit off-diagonals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteSection {
    pub a: i64,
    pub b: i64,
    pub diagonal: Vec<Scalar>,
}

pub fn finite_section(p: &Potential, a: i64, b: i64) -> Result<FiniteSection> {
    if a > b {
        return Err(Error::EmptySection);
    }
    Ok(FiniteSection {
        a,
        b,
        diagonal: (a..=b).map(|n| p.value(n).clone()).collect(),
    })
}

impl FiniteSection {
    pub fn size(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal_f64(&self) -> Vec<f64> {
        self.diagonal.iter().map(Scalar::to_f64).collect()
    }

    pub fn to_dense_f64(&self) -> nalgebra::DMatrix<f64> {
        let n = self.size();
        let d = self.diagonal_f64();
        nalgebra::DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                d[i]
            } else if i.abs_diff(j) == 1 {
                1.0
            } else {
                0.0
            }
        })
    }

    /// `det(H_{a..b} - E)` by the three-term recurrence.
    pub fn det_shifted(&self, e: &Scalar) -> Scalar {
        let mut prev = e.one_like();
        let mut cur = &self.diagonal[0] - e;
        for v in &self.diagonal[1..] {
            let next = &(&(v - e) * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `det(x I - H_{a..b})` by fraction-free elimination, for rational
    /// diagonals.
    pub fn charpoly(&self) -> Option<QPoly> {
        let n = self.size();
        let d: Vec<BigRational> = self
            .diagonal
            .iter()
            .map(|v| v.as_rational().cloned())
            .collect::<Option<_>>()?;
        let rows: Vec<Vec<QPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            &QPoly::x() - &QPoly::constant(d[i].clone())
                        } else if i.abs_diff(j) == 1 {
                            QPoly::from_ints(&[-1])
                        } else {
                            QPoly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Some(det_qpoly(&rows))
    }
}

/// Dense determinant with partial pivoting (exact pivots are nonzero
/// entries, float pivots the largest in magnitude).
fn dense_det(mut a: Vec<Vec<Scalar>>) -> Scalar {
    let n = a.len();
    let one = a[0][0].one_like();
    let mut det = one;
    for k in 0..n {
        let piv = if a[k][k].is_float() {
            (k..n).max_by(|&i, &j| a[i][k].to_f64().abs().total_cmp(&a[j][k].to_f64().abs()))
        } else {
            (k..n).find(|&i| a[i][k].signum() != 0)
        };
        let Some(p) = piv.filter(|&p| !a[p][k].is_zero()) else {
            return a[0][0].zero_like();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det = &det * &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            let (upper, lower) = a.split_at_mut(i);
            for (x, p) in lower[0][k..n].iter_mut().zip(&upper[k][k..n]) {
                *x = &*x - &(&f * p);
            }
        }
    }
    det
}

/// `det(H_{a..b} - E)` as a dense determinant, with the conventions
/// `1` for an empty section (`b = a - 1`) and `0` for `b = a - 2`.
fn section_det(p: &Potential, a: i64, b: i64, e: &Scalar) -> Scalar {
    match b - a {
        -1 => e.one_like(),
        -2 => e.zero_like(),
        _ => {
            let n = (b - a + 1) as usize;
            let zero = e.zero_like();
            let one = e.one_like();
            let rows = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                p.value(a + i as i64) - e
                            } else if i.abs_diff(j) == 1 {
                                one.clone()
                            } else {
                                zero.clone()
                            }
                        })
                        .collect()
                })
                .collect();
            dense_det(rows)
        }
    }
}

/// `M(E)` from determinants of finite sections:
/// `(-1)^(K+1) [[-D(0,K-1), -D(1,K-1)], [D(0,K-2), D(1,K-2)]]` with
/// `D(a,b) = det(H_{a..b} - E)`.
pub fn monodromy_via_determinants(p: &Potential, e: &Scalar) -> Result<Mat2<Scalar>> {
    p.check_energy(e)?;
    let k = p.period() as i64;
    let d = |a: i64, b: i64| section_det(p, a, b, e);
    let m = Mat2::new(-d(0, k - 1), -d(1, k - 1), d(0, k - 2), d(1, k - 2));
    Ok(if k % 2 == 0 { m.map(|x| -x) } else { m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse::{parse_list, Mode};

    fn pot(s: &str) -> Potential {
        Potential::new(parse_list(s, Mode::Exact).unwrap()).unwrap()
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(
            transfer_matrix(&Scalar::zero(), &Scalar::zero()).unwrap(),
            Mat2::from_ints(0, -1, 1, 0)
        );
        assert_eq!(
            transfer_matrix(&Scalar::int(2), &Scalar::zero()).unwrap(),
            Mat2::from_ints(-2, -1, 1, 0)
        );
        let t = transfer_matrix(&Scalar::ratio(1, 2), &Scalar::int(3)).unwrap();
        assert_eq!(
            t,
            Mat2::new(
                Scalar::ratio(5, 2),
                Scalar::int(-1),
                Scalar::int(1),
                Scalar::zero()
            )
        );
        assert_eq!(
            transfer_matrix(&Scalar::int(1), &Scalar::Float(0.0)),
            Err(Error::MixedArithmetic)
        );
    }

    #[test]
    fn monodromy_examples() {
        let p = pot("2,1/2,1/2");
        let h = Scalar::ratio(1, 2);
        let m0 = monodromy_at_zero(&p, 0, false);
        assert_eq!(
            m0,
            Mat2::new(
                Scalar::int(2),
                Scalar::ratio(3, 4),
                Scalar::zero(),
                h.clone()
            )
        );
        assert_eq!(
            monodromy_at_zero(&p, 2, false),
            Mat2::new(h.clone(), Scalar::zero(), Scalar::zero(), Scalar::int(2))
        );
        let q = Potential::from_word(&[1, 1, 0], &Scalar::int(1)).unwrap();
        assert_eq!(monodromy_at_zero(&q, 0, false), Mat2::from_ints(1, 1, 0, 1));
        let r = pot("sqrt(2)/2, sqrt(2)/2, 0, sqrt(2)/2, 0");
        let s2 = Scalar::int(2).sqrt().unwrap();
        let expect = Mat2::new(
            -(&s2 / &Scalar::int(2)),
            Scalar::int(-1),
            Scalar::zero(),
            -s2,
        );
        assert_eq!(monodromy_at_zero(&r, 0, false), expect);
    }

    #[test]
    fn trace_polynomial_examples() {
        assert_eq!(
            trace_polynomial(&Potential::from_ints(&[3])).to_string(),
            "E - 3"
        );
        assert_eq!(
            trace_polynomial(&Potential::from_ints(&[-1, 1])).to_string(),
            "E^2 - 3"
        );
        assert_eq!(
            trace_polynomial(&Potential::from_ints(&[0, 1, 0])).to_string(),
            "E^3 - E^2 - 3*E + 1"
        );
    }

    #[test]
    fn determinant_path_examples() {
        for s in ["0,1,0", "-1,1", "2,1/2,1/2", "3", "sqrt(2), 1/3"] {
            let p = pot(s);
            let z = Scalar::zero();
            assert_eq!(
                monodromy_via_determinants(&p, &z).unwrap(),
                monodromy(&p, &z, 0, false).unwrap(),
                "{s}"
            );
        }
        let m = monodromy_via_determinants(&pot("-1,1"), &Scalar::zero()).unwrap();
        assert_eq!(m.det(), Scalar::one());
    }

    #[test]
    fn finite_section_examples() {
        let s = finite_section(&pot("0,1,0"), 0, 1).unwrap();
        assert_eq!(s.diagonal, vec![Scalar::zero(), Scalar::one()]);
        assert_eq!(
            finite_section(&Potential::from_ints(&[5]), 0, 0)
                .unwrap()
                .diagonal,
            vec![Scalar::int(5)]
        );
        let t = finite_section(&Potential::from_ints(&[-1, 1]), -2, 2).unwrap();
        assert_eq!(
            t.diagonal,
            [-1, 1, -1, 1, -1]
                .iter()
                .map(|&v| Scalar::int(v))
                .collect::<Vec<_>>()
        );
        assert_eq!(
            finite_section(&Potential::from_ints(&[1]), 1, 0),
            Err(Error::EmptySection)
        );
        assert_eq!(s.charpoly().unwrap(), QPoly::from_ints(&[-1, -1, 1]));
    }

    #[test]
    fn reflected_potential_gives_reversed_product() {
        let p = pot("2,1/2,1/3,-1");
        for j in 0..4 {
            assert_eq!(
                monodromy_at_zero(&p, j, true),
                monodromy_at_zero(&p.reflected_at(j), 0, false)
            );
        }
    }
}
