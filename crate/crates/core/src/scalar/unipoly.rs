//! Univariate polynomials over [`Scalar`], labelled by their variable.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{QPoly, Ring, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    E,
    #[serde(rename = "λ")]
    Lambda,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::E => "E",
            Var::Lambda => "λ",
        }
    }
}

/// Coefficients ascend by degree; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
    var: Var,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>, var: Var) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs, var }
    }

    pub fn zero(var: Var) -> Self {
        UniPoly {
            coeffs: Vec::new(),
            var,
        }
    }

    pub fn constant(c: Scalar, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    /// `x - c` in the given variable.
    pub fn linear(c: &Scalar, var: Var) -> Self {
        let one = c.one_like();
        Self::new(vec![-c, one], var)
    }

    pub fn from_qpoly(q: QPoly, var: Var) -> Self {
        Self::new(
            q.coeffs().iter().cloned().map(Scalar::Rational).collect(),
            var,
        )
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Rational-coefficient view; floats and irrational coefficients are
    /// rejected.
    pub fn to_qpoly(&self) -> Result<QPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            match c {
                Scalar::Rational(q) => out.push(q.clone()),
                Scalar::Float(_) => return Err(Error::ExactInputRequired),
                _ => return Err(Error::Unsupported("rational coefficients required".into())),
            }
        }
        Ok(QPoly::from_coeffs(out))
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn to_float(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(Scalar::to_float).collect(), self.var)
    }

    pub fn add_constant(&self, c: &Scalar) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(c.clone());
        } else {
            coeffs[0] = &coeffs[0] + c;
        }
        UniPoly::new(coeffs, self.var)
    }

    fn combine(&self, o: &UniPoly, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = self
            .coeffs
            .first()
            .or(o.coeffs.first())
            .map(Scalar::zero_like)
            .unwrap_or_else(Scalar::zero);
        let coeffs = (0..n)
            .map(|i| {
                f(
                    self.coeffs.get(i).unwrap_or(&zero),
                    o.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        UniPoly::new(coeffs, self.var)
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.var);
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::new(coeffs, self.var)
    }
}

impl Ring for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.var)
    }
    fn one_like(&self) -> Self {
        let one = self
            .coeffs
            .first()
            .map(Scalar::one_like)
            .unwrap_or_else(Scalar::one);
        UniPoly::constant(one, self.var)
    }
    fn add_r(&self, o: &Self) -> Self {
        self.combine(o, |a, b| a + b)
    }
    fn sub_r(&self, o: &Self) -> Self {
        self.combine(o, |a, b| a - b)
    }
    fn mul_r(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_r(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
    fn is_zero_r(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Ok(q) = self.to_qpoly() {
            return f.write_str(&q.display_var(self.var.symbol()));
        }
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*{}", self.var.symbol()),
                _ => format!("({c})*{}^{i}", self.var.symbol()),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
