//! Symbolic classification of `{0, λ}`-valued periodic potentials.
//!
//! For a word `w ∈ {0,1}^K` the monodromy at `E = 0` of the potential `λ·w`
//! has polynomial entries in `λ`. A real `λ*` is a counterexample to
//! FSM-simplicity when `M21(λ*) = 0`, `|tr M(λ*)| > 2` and `|M11(λ*)| < 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{transfer_product, Mat2};
use crate::scalar::roots::isolate_qpoly;
use crate::scalar::{AlgebraicReal, QPoly, Scalar, UniPoly, Var, DEFAULT_DIGITS};

/// Period cap used when `PERIODIC_FSM_MAX_K` is unset.
pub const DEFAULT_MAX_PERIOD: usize = 12;

/// Periods from this value on are outside the range the closed-form
/// classification was carried out for; results there are flagged.
pub const EXTRAPOLATION_FROM: usize = 10;

/// The configured period cap.
pub fn max_period() -> usize {
    std::env::var("PERIODIC_FSM_MAX_K")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_PERIOD)
}

fn check_word(word: &[u8]) -> Result<()> {
    if word.is_empty() {
        return Err(Error::EmptyPotential);
    }
    if word.iter().any(|&b| b > 1) {
        return Err(Error::InvalidWord);
    }
    Ok(())
}

/// Monodromy at `E = 0` of `λ·w` with entries in `Q[λ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicMonodromy {
    pub word: Vec<u8>,
    pub matrix: Mat2<QPoly>,
}

impl SymbolicMonodromy {
    pub fn to_unipoly(&self) -> Mat2<UniPoly> {
        self.matrix
            .map(|q| UniPoly::from_qpoly(q.clone(), Var::Lambda))
    }

    pub fn trace(&self) -> QPoly {
        &self.matrix.m11 + &self.matrix.m22
    }

    /// Exact value at a rational or algebraic `λ`.
    pub fn eval(&self, lambda: &Scalar) -> Mat2<Scalar> {
        self.matrix.map(|q| eval_qpoly(q, lambda))
    }

    pub fn display_entries(&self) -> [String; 4] {
        let m = &self.matrix;
        [&m.m11, &m.m12, &m.m21, &m.m22].map(|q| q.display_var("λ"))
    }
}

pub fn symbolic_monodromy(word: &[u8]) -> Result<SymbolicMonodromy> {
    check_word(word)?;
    let k = word.len() as i64;
    let matrix = transfer_product(
        |n| {
            QPoly::monomial(
                BigRational::from_integer(word[n.rem_euclid(k) as usize].into()),
                1,
            )
        },
        &QPoly::zero(),
        word.len(),
        0,
        false,
    );
    let det = matrix.det();
    if det != QPoly::one() {
        return Err(Error::Unsupported(format!(
            "symbolic determinant {det} differs from 1 for word {word:?}"
        )));
    }
    Ok(SymbolicMonodromy {
        word: word.to_vec(),
        matrix,
    })
}

/// Horner evaluation of a rational polynomial at an exact scalar.
pub fn eval_qpoly(q: &QPoly, x: &Scalar) -> Scalar {
    q.coeffs().iter().rev().fold(Scalar::zero(), |acc, c| {
        &(&acc * x) + &Scalar::rational(c.clone())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// One real zero of `M21` and the decisions made there.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub lambda: Scalar,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
    pub decimal: String,
    pub trace: Scalar,
    pub trace_outside: bool,
    pub m11_inside: bool,
    pub counterexample: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub word: Vec<u8>,
    pub m21_poly: String,
    pub trace_poly: String,
    pub parity: Parity,
    /// `M21` in `μ = λ²` after removing a factor `λ` in the odd case.
    pub reduced_poly: String,
    pub m21_identically_zero: bool,
    pub zeros: Vec<ZeroRecord>,
    pub counterexamples: Vec<Scalar>,
    pub rational_counterexamples: Vec<Scalar>,
    pub rational_only: bool,
    #[serde(skip)]
    pub monodromy: Option<SymbolicMonodromy>,
}

impl SearchRecord {
    /// Counterexamples relevant under the record's `rational_only` setting.
    pub fn certificates(&self) -> &[Scalar] {
        if self.rational_only {
            &self.rational_counterexamples
        } else {
            &self.counterexamples
        }
    }
}

/// Rational bounds `lo ≤ √q ≤ hi` with `hi - lo ≤ 2^-bits / den(q)`.
fn sqrt_bounds(q: &BigRational, bits: u32) -> (BigRational, BigRational) {
    let (n, d) = (q.numer(), q.denom());
    let scale = BigInt::one() << bits;
    let s = (n * d * &scale * &scale).sqrt();
    let den = d * &scale;
    (
        BigRational::new(s.clone(), den.clone()),
        BigRational::new(s + 1, den),
    )
}

/// The two square roots `±√μ` of a positive algebraic `μ`, as algebraic reals.
fn lift_square_roots(mu: &AlgebraicReal) -> [AlgebraicReal; 2] {
    if let Some(q) = mu.as_rational() {
        let root = Scalar::rational(q)
            .sqrt()
            .expect("positive")
            .to_algebraic_real()
            .expect("exact");
        let neg = (-&Scalar::from_algebraic_real(root.clone()))
            .to_algebraic_real()
            .expect("exact");
        return [neg, root];
    }
    let poly = mu.poly().in_square();
    let mut cur = mu.clone();
    let mut bits = 32;
    loop {
        while !cur.interval().lo.is_positive() {
            cur = cur.refine_once();
        }
        let (lo, _) = sqrt_bounds(&cur.interval().lo, bits);
        let (_, hi) = sqrt_bounds(&cur.interval().hi, bits);
        let pos = AlgebraicReal::from_poly_interval(&poly, lo.clone(), hi.clone());
        let neg = AlgebraicReal::from_poly_interval(&poly, -hi, -lo);
        if let (Some(p), Some(n)) = (pos, neg) {
            return [n, p];
        }
        cur = cur.refined(&(cur.interval().width() / BigRational::from_integer(1024.into())));
        bits += 16;
    }
}

fn zero_record(m: &SymbolicMonodromy, lambda: &AlgebraicReal) -> ZeroRecord {
    let tr = m.trace();
    let four = QPoly::constant(BigRational::from_integer(4.into()));
    let trace_outside = lambda.sign_of(&(&(&tr * &tr) - &four)) > 0;
    let m11 = &m.matrix.m11;
    let m11_inside = lambda.sign_of(&(&(m11 * m11) - &QPoly::one())) < 0;
    let value = Scalar::from_algebraic_real(lambda.clone());
    let (rational, minpoly, interval) = match lambda.as_rational() {
        Some(q) => (Some(q.to_string()), None, None),
        None => (
            None,
            Some(lambda.poly().display_var("λ")),
            Some([
                lambda.interval().lo.to_string(),
                lambda.interval().hi.to_string(),
            ]),
        ),
    };
    ZeroRecord {
        decimal: value.decimal(DEFAULT_DIGITS),
        trace: eval_qpoly(&tr, &value),
        lambda: value,
        rational,
        minpoly,
        interval,
        trace_outside,
        m11_inside,
        counterexample: trace_outside && m11_inside,
    }
}

/// Real zeros of `M21(λ)` and the exact decisions at each of them.
pub fn counterexample_lambdas(word: &[u8], rational_only: bool) -> Result<SearchRecord> {
    let m = symbolic_monodromy(word)?;
    let m21 = m.matrix.m21.clone();
    let parity = match m21.parity() {
        Some(0) => Parity::Even,
        Some(_) => Parity::Odd,
        None => {
            return Err(Error::Unsupported(format!(
                "M21 = {} of word {word:?} is neither even nor odd",
                m21.display_var("λ")
            )))
        }
    };
    let tr = m.trace();
    let mut record = SearchRecord {
        word: word.to_vec(),
        m21_poly: m21.display_var("λ"),
        trace_poly: tr.display_var("λ"),
        parity,
        reduced_poly: String::new(),
        m21_identically_zero: m21.is_zero(),
        zeros: Vec::new(),
        counterexamples: Vec::new(),
        rational_counterexamples: Vec::new(),
        rational_only,
        monodromy: None,
    };

    if m21.is_zero() {
        // Every λ is a zero; a certificate would need |tr| > 2 somewhere.
        let excess = &(&tr * &tr) - &QPoly::constant(BigRational::from_integer(4.into()));
        if !(excess.is_constant() && !excess.coeff(0).is_positive()) {
            return Err(Error::Unsupported(format!(
                "M21 vanishes identically for word {word:?} with nonconstant trace"
            )));
        }
        record.reduced_poly = "0".into();
        record.monodromy = Some(m);
        return Ok(record);
    }

    let odd = parity == Parity::Odd;
    let reduced = if odd { m21.shift_down(1) } else { m21.clone() }
        .even_part_in_square()
        .expect("parity checked");
    record.reduced_poly = reduced.display_var("μ");

    let mut lambdas: Vec<AlgebraicReal> = Vec::new();
    if odd {
        lambdas.push(AlgebraicReal::rational(BigRational::zero()));
    }
    if !reduced.is_constant() {
        for mu in isolate_qpoly(&reduced) {
            match mu.sign_of(&QPoly::x()) {
                0 => {
                    if !odd {
                        lambdas.push(AlgebraicReal::rational(BigRational::zero()));
                    }
                }
                s if s > 0 => lambdas.extend(lift_square_roots(&mu)),
                _ => {}
            }
        }
    }
    lambdas.sort_by(|a, b| a.cmp_value(b));
    debug_assert!(lambdas.iter().all(|l| l.sign_of(&m21) == 0));

    for l in &lambdas {
        let z = zero_record(&m, l);
        if z.counterexample {
            record.counterexamples.push(z.lambda.clone());
            if z.rational.is_some() {
                record.rational_counterexamples.push(z.lambda.clone());
            }
        }
        record.zeros.push(z);
    }
    record.monodromy = Some(m);
    Ok(record)
}

/// Word with `w[n]` equal to bit `n` of `index`.
pub fn word_from_index(index: u64, k: usize) -> Vec<u8> {
    (0..k).map(|n| ((index >> n) & 1) as u8).collect()
}

fn word_index(word: &[u8]) -> u64 {
    word.iter().enumerate().map(|(n, &b)| (b as u64) << n).sum()
}

/// Whether the word has the smallest index among its cyclic shifts and
/// their reversals.
pub fn is_orbit_representative(word: &[u8]) -> bool {
    let k = word.len();
    let own = word_index(word);
    let rev: Vec<u8> = word.iter().rev().copied().collect();
    (0..k).all(|s| {
        let shifted: Vec<u8> = (0..k).map(|n| word[(n + s) % k]).collect();
        let rshifted: Vec<u8> = (0..k).map(|n| rev[(n + s) % k]).collect();
        own <= word_index(&shifted) && own <= word_index(&rshifted)
    })
}

/// Records for every word of period `k`, in index order.
pub fn enumerate_family(k: usize, rational_only: bool, dedupe: bool) -> Result<Vec<SearchRecord>> {
    let max = max_period();
    if k == 0 {
        return Err(Error::EmptyPotential);
    }
    if k > max || k > 63 {
        return Err(Error::PeriodTooLarge { k, max });
    }
    (0..1u64 << k)
        .into_par_iter()
        .map(|i| word_from_index(i, k))
        .filter(|w| !dedupe || is_orbit_representative(w))
        .map(|w| counterexample_lambdas(&w, rational_only))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyClassification {
    pub period: usize,
    pub rational_only: bool,
    pub dedupe: bool,
    pub words_checked: usize,
    pub extrapolated: bool,
    pub all_fsm_simple: bool,
    pub records: Vec<SearchRecord>,
}

/// Words of period `k` admitting a counterexample `λ`.
///
/// Shifts and reversals of a word are words of the same period, so checking
/// the unshifted monodromy of every word covers the whole family.
pub fn classify_family(
    k: usize,
    rational_only: bool,
    dedupe: bool,
) -> Result<FamilyClassification> {
    let all = enumerate_family(k, rational_only, dedupe)?;
    let words_checked = all.len();
    let records: Vec<SearchRecord> = all
        .into_iter()
        .filter(|r| !r.certificates().is_empty())
        .collect();
    Ok(FamilyClassification {
        period: k,
        rational_only,
        dedupe,
        words_checked,
        extrapolated: k >= EXTRAPOLATION_FROM,
        all_fsm_simple: records.is_empty(),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entries(w: &[u8]) -> [String; 4] {
        symbolic_monodromy(w).unwrap().display_entries()
    }

    #[test]
    fn table_rows() {
        assert_eq!(
            entries(&[1, 1, 0]),
            ["λ", "1", "λ^2 - 1", "λ"].map(String::from)
        );
        assert_eq!(entries(&[0, 0, 0]), ["0", "1", "-1", "0"].map(String::from));
        assert_eq!(
            entries(&[1, 1, 1]),
            ["-λ^3 + 2*λ", "-λ^2 + 1", "λ^2 - 1", "λ"].map(String::from)
        );
        assert_eq!(entries(&[1, 0, 0]), ["λ", "1", "-1", "0"].map(String::from));
        assert_eq!(
            entries(&[0, 1, 1]),
            ["λ", "-λ^2 + 1", "-1", "λ"].map(String::from)
        );
        assert_eq!(
            entries(&[1, 1, 0, 1]),
            ["-2*λ^2 + 1", "-2*λ", "λ", "1"].map(String::from)
        );
        assert_eq!(
            entries(&[0, 0, 0, 0]),
            ["1", "0", "0", "1"].map(String::from)
        );
    }

    #[test]
    fn k3_zeros_have_trace_two() {
        for w in [[1u8, 1, 0], [1, 1, 1]] {
            let r = counterexample_lambdas(&w, false).unwrap();
            let z: Vec<_> = r
                .zeros
                .iter()
                .map(|z| (z.lambda.clone(), z.trace.clone()))
                .collect();
            assert_eq!(
                z,
                vec![
                    (Scalar::int(-1), Scalar::int(-2)),
                    (Scalar::int(1), Scalar::int(2))
                ]
            );
            assert!(r.counterexamples.is_empty());
        }
    }

    #[test]
    fn k5_irrational_counterexample() {
        let r = counterexample_lambdas(&[1, 1, 0, 1, 0], false).unwrap();
        let h = Scalar::sqrt(&Scalar::ratio(1, 2)).unwrap();
        assert_eq!(r.counterexamples, vec![-&h, h]);
        assert!(r.rational_counterexamples.is_empty());
        let r = counterexample_lambdas(&[1, 1, 0, 1, 0], true).unwrap();
        assert!(r.certificates().is_empty());
    }

    #[test]
    fn k9_rational_counterexample() {
        let r = counterexample_lambdas(&[1, 1, 0, 1, 0, 1, 0, 1, 1], true).unwrap();
        assert!(r.certificates().contains(&Scalar::ratio(1, 2)));
        assert!(r.certificates().contains(&Scalar::ratio(-1, 2)));
    }

    #[test]
    fn identically_zero_m21() {
        let r = counterexample_lambdas(&[0, 0, 0, 0], false).unwrap();
        assert!(r.m21_identically_zero && r.counterexamples.is_empty());
    }

    #[test]
    fn small_families_are_simple() {
        for k in 1..=4 {
            let c = classify_family(k, false, false).unwrap();
            assert!(c.all_fsm_simple, "K = {k}");
            assert_eq!(c.words_checked, 1 << k);
        }
        assert!(classify_family(5, true, false).unwrap().all_fsm_simple);
        assert!(!classify_family(5, false, false).unwrap().all_fsm_simple);
    }

    #[test]
    fn orbit_representatives() {
        assert!(is_orbit_representative(&[1, 0, 0]));
        assert!(!is_orbit_representative(&[0, 0, 1]));
        let reps = (0..8)
            .filter(|&i| is_orbit_representative(&word_from_index(i, 3)))
            .count();
        assert_eq!(reps, 4);
    }

    #[test]
    fn square_root_lift() {
        let mu = isolate_qpoly(&QPoly::from_ints(&[-1, 0, 0, 1, 0, 1]))
            .into_iter()
            .find(|r| r.interval().hi.is_positive())
            .unwrap();
        let [n, p] = lift_square_roots(&mu);
        assert!(p.sign_of(&QPoly::x()) > 0 && n.sign_of(&QPoly::x()) < 0);
        let sq = mu.poly().in_square();
        assert_eq!(p.sign_of(&sq), 0);
        assert!((p.to_f64().powi(2) - mu.to_f64()).abs() < 1e-12);
    }
}
