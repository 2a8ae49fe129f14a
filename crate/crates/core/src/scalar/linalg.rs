//! Small exact dense linear algebra over the rationals and over `Q[x]`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::QPoly;

/// Dense square rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub n: usize,
    pub data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        RatMatrix { n: self.n, data }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> RatMatrix {
        RatMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }
}

/// Companion matrix of a nonconstant polynomial (made monic).
pub fn companion(p: &QPoly) -> RatMatrix {
    let m = p.monic();
    let n = m.deg();
    let mut c = RatMatrix::zeros(n);
    for i in 1..n {
        c.set(i, i - 1, BigRational::one());
    }
    for i in 0..n {
        c.set(i, n - 1, -m.coeff(i));
    }
    c
}

/// `f(m)` by Horner's scheme.
pub fn mat_poly(f: &QPoly, m: &RatMatrix) -> RatMatrix {
    let n = m.n;
    let mut acc = RatMatrix::zeros(n);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(m).add(&RatMatrix::identity(n).scale(c));
    }
    acc
}

pub fn kron(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.n * b.n;
    let mut out = RatMatrix::zeros(n);
    for i in 0..a.n {
        for j in 0..a.n {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.n {
                for l in 0..b.n {
                    out.set(i * b.n + k, j * b.n + l, x * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Monic characteristic polynomial `det(x I - m)` (Faddeev-LeVerrier).
pub fn charpoly(m: &RatMatrix) -> QPoly {
    let n = m.n;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = RatMatrix::zeros(n);
    let id = RatMatrix::identity(n);
    for k in 1..=n {
        mk = m.mul(&mk).add(&id.scale(&coeffs[n - k + 1]));
        let am = m.mul(&mk);
        coeffs[n - k] = -am.trace() / BigRational::from_integer((k as i64).into());
    }
    QPoly::from_coeffs(coeffs)
}

/// Determinant of a square matrix over `Q[x]` by fraction-free elimination.
pub fn det_qpoly(rows: &[Vec<QPoly>]) -> QPoly {
    let n = rows.len();
    if n == 0 {
        return QPoly::one();
    }
    let mut a: Vec<Vec<QPoly>> = rows.to_vec();
    let mut sign = false;
    let mut prev = QPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return QPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = QPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn det_rat(m: &RatMatrix) -> BigRational {
    let n = m.n;
    let mut a = m.clone();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let piv = a.get(k, k).clone();
        det *= &piv;
        for i in k + 1..n {
            let f = a.get(i, k) / &piv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = a.get(i, j) - &f * a.get(k, j);
                a.set(i, j, v);
            }
        }
    }
    det
}
