//! Sturm sequences and exact real root isolation for rational polynomials.
//!
//! Isolation works on the squarefree part. Rational roots are split off
//! exactly and quadratic factors whose two roots are both real are detected
//! and split off as well, so that roots of such factors carry a degree-two
//! defining polynomial. Any remaining defining polynomial is squarefree and
//! has no rational roots, but it is not certified irreducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebraic::AlgebraicReal;
use super::interval::Interval;
use super::poly::{sign, QPoly};

/// Sturm sequence of a polynomial, content-normalized at every step.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<QPoly>,
}

impl Sturm {
    pub fn new(p: &QPoly) -> Self {
        let mut seq = vec![p.primitive()];
        if p.deg() == 0 {
            return Sturm { seq };
        }
        seq.push(p.derivative().primitive());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(positive_rescale(&-&r));
        }
        Sturm { seq }
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| sign(&p.leading())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = sign(&p.leading());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Number of distinct roots in `(a, b]`, for `a` not a root and `a < b`.
    pub fn count_between(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Integer primitive part with the sign of `p` kept.
fn positive_rescale(p: &QPoly) -> QPoly {
    let q = p.primitive();
    if sign(&q.leading()) == sign(&p.leading()) {
        q
    } else {
        -q
    }
}

/// Split point strictly inside `(a, b)` that is not a root of `p`.
fn split_point(p: &QPoly, a: &BigRational, b: &BigRational) -> BigRational {
    let w = b - a;
    let mut den = 2i64;
    loop {
        for num in 1..den {
            if num.gcd(&den) != 1 {
                continue;
            }
            let t = BigRational::new(num.into(), den.into());
            let m = a + &w * &t;
            if !p.eval(&m).is_zero() {
                return m;
            }
        }
        den += 1;
    }
}

fn isolate_raw(p: &QPoly) -> Vec<Interval> {
    let sturm = Sturm::new(p);
    let bound = p.root_bound();
    let lo = -bound.clone();
    let hi = bound;
    let mut out = Vec::new();
    let total = sturm.count_between(&lo, &hi);
    let mut stack = vec![(lo, hi, total)];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(Interval::new(a, b)),
            _ => {
                let m = split_point(p, &a, &b);
                let left = sturm.count_between(&a, &m);
                stack.push((m.clone(), b, n - left));
                stack.push((a, m, left));
            }
        }
    }
    out
}

/// Bisect an isolating interval of a squarefree `p` once. Returns `Err(x)`
/// if the midpoint happens to be the (rational) root.
pub(crate) fn bisect(p: &QPoly, iv: &Interval) -> Result<Interval, BigRational> {
    let mid = iv.midpoint();
    let sm = p.sign_at(&mid);
    if sm == 0 {
        return Err(mid);
    }
    if p.sign_at(&iv.lo) == sm {
        Ok(Interval::new(mid, iv.hi.clone()))
    } else {
        Ok(Interval::new(iv.lo.clone(), mid))
    }
}

fn exact_root_in(p: &QPoly, iv: &Interval) -> Option<BigRational> {
    let lead = p.leading();
    let mut cur = iv.clone();
    while cur.width() * &lead >= BigRational::one() {
        match bisect(p, &cur) {
            Ok(next) => cur = next,
            Err(x) => return Some(x),
        }
    }
    let scaled_lo = &cur.lo * &lead;
    let c = scaled_lo.ceil();
    if c <= &cur.hi * &lead {
        let cand = c / &lead;
        if p.eval(&cand).is_zero() {
            return Some(cand);
        }
    }
    None
}

fn integer_candidate(iv: &Interval) -> Option<BigInt> {
    let c = iv.lo.ceil();
    (c <= iv.hi).then(|| c.to_integer())
}

/// Looks for an integer quadratic `lead*x^2 - s*x + t` dividing `p` whose
/// roots are exactly the roots isolated by `a` and `b`.
fn quadratic_pair(p: &QPoly, a: &mut Interval, b: &mut Interval) -> Option<QPoly> {
    let lead = p.leading();
    loop {
        let s = a.add(b).scale(&lead);
        let t = a.mul(b).scale(&lead);
        if s.width() < BigRational::one() && t.width() < BigRational::one() {
            let (si, ti) = (integer_candidate(&s)?, integer_candidate(&t)?);
            let q = QPoly::from_coeffs(vec![
                BigRational::from_integer(ti),
                BigRational::from_integer(-si),
                lead.clone(),
            ]);
            p.div_exact(&q)?;
            let changes = |iv: &Interval| q.sign_at(&iv.lo) * q.sign_at(&iv.hi) < 0;
            return (changes(a) && changes(b)).then(|| q.primitive());
        }
        *a = bisect(p, a).ok()?;
        *b = bisect(p, b).ok()?;
    }
}

/// Distinct real roots of a nonzero rational polynomial, in ascending order.
pub fn isolate_qpoly(p: &QPoly) -> Vec<AlgebraicReal> {
    assert!(!p.is_zero(), "zero polynomial has no root set");
    let sq = p.squarefree();
    if sq.deg() == 0 {
        return Vec::new();
    }
    let mut rationals = Vec::new();
    let mut irrational = Vec::new();
    for iv in isolate_raw(&sq) {
        match exact_root_in(&sq, &iv) {
            Some(x) => rationals.push(x),
            None => irrational.push(iv),
        }
    }
    let mut rest = sq.clone();
    for r in &rationals {
        let lin = QPoly::from_coeffs(vec![-r.clone(), BigRational::one()]);
        rest = rest
            .div_exact(&lin)
            .expect("rational root divides")
            .primitive();
    }

    let mut roots: Vec<AlgebraicReal> =
        rationals.into_iter().map(AlgebraicReal::rational).collect();
    let mut paired = vec![None; irrational.len()];
    for i in 0..irrational.len() {
        if paired[i].is_some() {
            continue;
        }
        for j in (i + 1)..irrational.len() {
            if paired[j].is_some() {
                continue;
            }
            let (mut a, mut b) = (irrational[i].clone(), irrational[j].clone());
            if let Some(q) = quadratic_pair(&rest, &mut a, &mut b) {
                rest = rest.div_exact(&q).expect("checked divisor").primitive();
                irrational[i] = a;
                irrational[j] = b;
                paired[i] = Some(q.clone());
                paired[j] = Some(q);
                break;
            }
        }
    }
    for (iv, q) in irrational.into_iter().zip(paired) {
        let poly = q.unwrap_or_else(|| rest.clone());
        roots.push(AlgebraicReal::from_isolating(poly, iv));
    }
    roots.sort_by(|a, b| a.interval().lo.cmp(&b.interval().lo));
    roots
}

/// Rational roots of a nonzero rational polynomial, ascending, each checked
/// by exact evaluation.
pub fn rational_roots_qpoly(p: &QPoly) -> Vec<BigRational> {
    let out: Vec<BigRational> = isolate_qpoly(p)
        .into_iter()
        .filter_map(|r| r.as_rational())
        .collect();
    debug_assert!(out.iter().all(|r| p.eval(r).is_zero()));
    out
}

/// Multiplicity of the root `x` in `p` (0 if not a root).
pub fn multiplicity(p: &QPoly, x: &AlgebraicReal) -> usize {
    let mut d = p.clone();
    let mut k = 0;
    while !d.is_zero() && x.sign_of(&d) == 0 {
        k += 1;
        d = d.derivative();
    }
    k
}
