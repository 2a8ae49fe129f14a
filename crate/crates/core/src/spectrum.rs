//! Band spectra, Dirichlet eigenvalues of one-sided compressions, Floquet
//! eigenvalues and band diagrams over a coupling-constant grid.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::operator::{
    finite_section, monodromy, monodromy_at_zero, monodromy_qpoly, trace_polynomial, Potential,
};
use crate::scalar::roots::{isolate_qpoly, multiplicity};
use crate::scalar::{AlgebraicReal, QPoly, Scalar};

/// Relative gap below which float band edges are reported as ambiguous.
const EDGE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lo: Scalar,
    pub hi: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandSet {
    pub bands: Vec<Band>,
    /// One flag per adjacent pair of raw bands: whether they touch and were
    /// coalesced.
    pub merged: Vec<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl BandSet {
    pub fn contains(&self, e: &Scalar) -> bool {
        self.bands.iter().any(|b| &b.lo <= e && e <= &b.hi)
    }

    /// Coalesces bands that share an endpoint.
    pub fn merge(&self) -> BandSet {
        let mut bands: Vec<Band> = Vec::new();
        let mut merged = Vec::new();
        for b in &self.bands {
            match bands.last_mut() {
                Some(last) if last.hi == b.lo => {
                    last.hi = b.hi.clone();
                    merged.push(true);
                }
                Some(_) => {
                    merged.push(false);
                    bands.push(b.clone());
                }
                None => bands.push(b.clone()),
            }
        }
        BandSet {
            bands,
            merged,
            warnings: self.warnings.clone(),
        }
    }
}

impl fmt::Display for BandSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .bands
            .iter()
            .map(|b| format!("[{}, {}]", b.lo, b.hi))
            .collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    Reversed,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Forward => "forward",
            Orientation::Reversed => "reversed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletEigenvalue {
    pub value: Scalar,
    pub shift: i64,
    pub orientation: Orientation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneSidedSpectrum {
    pub bands: BandSet,
    pub dirichlet_eigenvalues: Vec<DirichletEigenvalue>,
    /// Candidates discarded because `|M11| >= 1` there.
    pub rejected: Vec<Scalar>,
}

/// Sorted list of the roots of `p`, repeated by multiplicity.
fn roots_with_multiplicity(p: &QPoly) -> Vec<AlgebraicReal> {
    let mut out = Vec::new();
    for r in isolate_qpoly(p) {
        let m = multiplicity(p, &r);
        out.extend(std::iter::repeat_n(r, m));
    }
    out
}

fn bands_from_edges(edges: Vec<Scalar>) -> BandSet {
    let bands: Vec<Band> = edges
        .chunks(2)
        .map(|c| Band {
            lo: c[0].clone(),
            hi: c[1].clone(),
        })
        .collect();
    let merged = vec![false; bands.len().saturating_sub(1)];
    BandSet {
        bands,
        merged,
        warnings: Vec::new(),
    }
}

/// Exact band edges of a rational potential: the roots of `tr M(E) -+ 2`.
fn exact_band_edges(p: &Potential) -> Vec<Scalar> {
    let k = p.period();
    let tr = trace_polynomial(p).to_qpoly().expect("rational potential");
    let two = QPoly::from_ints(&[2]);
    let mut roots = roots_with_multiplicity(&(&tr - &two));
    roots.extend(roots_with_multiplicity(&(&tr + &two)));
    assert_eq!(
        roots.len(),
        2 * k,
        "trace polynomial of a real potential has 2K real roots of tr = ±2"
    );
    roots.sort_by(|a, b| a.cmp_value(b));
    roots.into_iter().map(Scalar::from_algebraic_real).collect()
}

fn sym_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Float band edges from the periodic and antiperiodic Floquet matrices.
fn float_band_edges(v: &[f64]) -> Vec<f64> {
    if v.len() == 1 {
        return vec![v[0] - 2.0, v[0] + 2.0];
    }
    let mut edges = floquet_real(v, 1.0);
    edges.extend(floquet_real(v, -1.0));
    edges.sort_by(f64::total_cmp);
    edges
}

fn floquet_real(v: &[f64], corner: f64) -> Vec<f64> {
    let k = v.len();
    let mut m = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            v[i]
        } else if i.abs_diff(j) == 1 {
            1.0
        } else {
            0.0
        }
    });
    m[(0, k - 1)] += corner;
    m[(k - 1, 0)] += corner;
    sym_eigenvalues(m)
}

/// `sigma(H)` as `K` closed bands, unmerged.
pub fn spectrum_bands(p: &Potential) -> BandSet {
    if p.is_rational() {
        return bands_from_edges(exact_band_edges(p));
    }
    let edges = float_band_edges(&p.to_f64());
    let scale = edges.iter().fold(1.0f64, |m, e| m.max(e.abs()));
    let mut set = bands_from_edges(edges.iter().map(|&e| Scalar::Float(e)).collect());
    if p.is_exact() {
        set.warnings
            .push("irrational potential: band edges computed in binary64".into());
    }
    if edges
        .windows(2)
        .any(|w| (w[1] - w[0]).abs() < EDGE_TOL * scale && w[1] != w[0])
    {
        set.warnings.push("band edge ambiguous".into());
    }
    set
}

/// Whether `|tr M(0)| > 2`, with the trace.
pub fn is_invertible(p: &Potential) -> (bool, Scalar) {
    let tr = monodromy_at_zero(p, 0, false).trace();
    let inv = match &tr {
        Scalar::Float(t) => t.abs() > 2.0,
        exact => (&(exact * exact) - &Scalar::int(4)).signum() > 0,
    };
    (inv, tr)
}

fn with_period_two(p: &Potential) -> Potential {
    if p.period() == 1 {
        p.doubled()
    } else {
        p.clone()
    }
}

/// Zeros of `M(E)_{2,1}` computed from the symbolic monodromy and from the
/// characteristic polynomial of `H_{0..K-2}`, for a rational potential.
pub fn dirichlet_zero_sets(p: &Potential) -> Option<(Vec<AlgebraicReal>, Vec<AlgebraicReal>)> {
    let p = with_period_two(p);
    let m = monodromy_qpoly(&p)?;
    let k = p.period() as i64;
    let cp = finite_section(&p, 0, k - 2).ok()?.charpoly()?;
    Some((isolate_qpoly(&m.m21), isolate_qpoly(&cp)))
}

/// Eigenvalues of `H_{0..K-2}`: exact for rational potentials (both
/// computation paths must agree), binary64 otherwise.
pub fn dirichlet_candidates(p: &Potential) -> Vec<Scalar> {
    if let Some((via_monodromy, via_section)) = dirichlet_zero_sets(p) {
        assert_eq!(
            via_monodromy.len(),
            via_section.len(),
            "Dirichlet zero sets disagree"
        );
        for (a, b) in via_monodromy.iter().zip(&via_section) {
            assert!(a.same_number(b), "Dirichlet zero sets disagree");
        }
        return via_section
            .into_iter()
            .map(Scalar::from_algebraic_real)
            .collect();
    }
    float_dirichlet_candidates(&with_period_two(p).to_f64())
        .into_iter()
        .map(Scalar::Float)
        .collect()
}

fn float_dirichlet_candidates(v: &[f64]) -> Vec<f64> {
    let k = v.len();
    let m = DMatrix::from_fn(k - 1, k - 1, |i, j| {
        if i == j {
            v[i]
        } else if i.abs_diff(j) == 1 {
            1.0
        } else {
            0.0
        }
    });
    sym_eigenvalues(m)
}

/// `sigma(H_+)`: the bands plus Dirichlet candidates with `|M(E)_{1,1}| < 1`.
pub fn one_sided_spectrum(p: &Potential) -> OneSidedSpectrum {
    let bands = spectrum_bands(p);
    let q = with_period_two(p);
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    if let Some(m) = monodromy_qpoly(&q) {
        let test = &(&m.m11 * &m.m11) - &QPoly::one();
        let k = q.period() as i64;
        let cp = finite_section(&q, 0, k - 2)
            .expect("K >= 2")
            .charpoly()
            .expect("rational");
        for r in isolate_qpoly(&cp) {
            let keep = r.sign_of(&test) < 0;
            let v = Scalar::from_algebraic_real(r);
            if keep {
                accepted.push(v)
            } else {
                rejected.push(v)
            }
        }
    } else {
        let f = q.to_float();
        for e in float_dirichlet_candidates(&f.to_f64()) {
            let m = monodromy(&f, &Scalar::Float(e), 0, false).expect("float mode");
            if m.m11.to_f64().abs() < 1.0 {
                accepted.push(Scalar::Float(e));
            } else {
                rejected.push(Scalar::Float(e));
            }
        }
    }
    let dirichlet_eigenvalues = accepted
        .into_iter()
        .map(|value| DirichletEigenvalue {
            value,
            shift: 0,
            orientation: Orientation::Forward,
        })
        .collect();
    OneSidedSpectrum {
        bands,
        dirichlet_eigenvalues,
        rejected,
    }
}

/// Eigenvalues of `H_{0..K-1}` with corner entries `e^{-i phi}` (top right)
/// and `e^{i phi}` (bottom left), ascending.
pub fn floquet_eigenvalues(p: &Potential, phi: f64) -> Vec<f64> {
    let v = with_period_two(p).to_f64();
    let k = v.len();
    let mut m = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            Complex64::new(v[i], 0.0)
        } else if i.abs_diff(j) == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    m[(0, k - 1)] += Complex64::from_polar(1.0, -phi);
    m[(k - 1, 0)] += Complex64::from_polar(1.0, phi);
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterlacingReport {
    pub holds: bool,
    pub phi: f64,
    pub dirichlet: Vec<f64>,
    pub floquet: Vec<f64>,
    /// First violated inequality, as `(left, right)` values.
    pub witness: Option<(f64, f64)>,
}

/// Checks `F_1 <= D_1 <= F_2 <= ... <= D_{K-1} <= F_K` up to `1e-9`.
pub fn check_interlacing(p: &Potential, phi: f64) -> InterlacingReport {
    const TOL: f64 = 1e-9;
    let v = with_period_two(p).to_f64();
    let dirichlet = float_dirichlet_candidates(&v);
    let floquet = floquet_eigenvalues(p, phi);
    let mut chain = Vec::with_capacity(2 * floquet.len());
    for (i, f) in floquet.iter().enumerate() {
        chain.push(*f);
        if let Some(d) = dirichlet.get(i) {
            chain.push(*d);
        }
    }
    let witness = chain
        .windows(2)
        .find(|w| w[0] > w[1] + TOL * (1.0 + w[0].abs()))
        .map(|w| (w[0], w[1]));
    InterlacingReport {
        holds: witness.is_none(),
        phi,
        dirichlet,
        floquet,
        witness,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowType {
    Band,
    Dirichlet,
}

/// One row of a band diagram. Dirichlet rows have `e_lo == e_hi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda: f64,
    #[serde(rename = "type")]
    pub kind: RowType,
    pub j: Option<i64>,
    pub orientation: Option<Orientation>,
    pub e_lo: f64,
    pub e_hi: f64,
    /// Index of the eigenvalue of `H_{0..K-2}` this row came from.
    #[serde(skip)]
    pub branch: usize,
}

/// Accepted Dirichlet eigenvalues of the compression with potential `u`,
/// paired with their eigenvalue index.
fn accepted_dirichlet(u: &[f64]) -> Vec<(usize, f64)> {
    let pot = Potential::new(u.iter().map(|&x| Scalar::Float(x)).collect()).expect("nonempty");
    float_dirichlet_candidates(u)
        .into_iter()
        .enumerate()
        .filter(|(_, e)| {
            let m = monodromy(&pot, &Scalar::Float(*e), 0, false).expect("float mode");
            m.m11.to_f64().abs() < 1.0
        })
        .collect()
}

fn sweep_one(word: &[u8], lambda: f64, include_dirichlet: bool) -> Vec<SweepRow> {
    let v: Vec<f64> = word.iter().map(|&b| lambda * b as f64).collect();
    let mut rows: Vec<SweepRow> = float_band_edges(&v)
        .chunks(2)
        .map(|c| SweepRow {
            lambda,
            kind: RowType::Band,
            j: None,
            orientation: None,
            e_lo: c[0],
            e_hi: c[1],
            branch: 0,
        })
        .collect();
    if !include_dirichlet {
        return rows;
    }
    let k = v.len() as i64;
    let base: Vec<f64> = if k == 1 { vec![v[0], v[0]] } else { v.clone() };
    let kk = base.len() as i64;
    let at = |n: i64| base[n.rem_euclid(kk) as usize];
    for j in 0..k {
        for orientation in [Orientation::Forward, Orientation::Reversed] {
            let u: Vec<f64> = match orientation {
                Orientation::Forward => (0..kk).map(|n| at(n + j)).collect(),
                Orientation::Reversed => (0..kk).map(|n| at(j - 1 - n)).collect(),
            };
            for (branch, e) in accepted_dirichlet(&u) {
                rows.push(SweepRow {
                    lambda,
                    kind: RowType::Dirichlet,
                    j: Some(j),
                    orientation: Some(orientation),
                    e_lo: e,
                    e_hi: e,
                    branch,
                });
            }
        }
    }
    rows
}

/// Bands and accepted Dirichlet eigenvalues of all shifted compressions in
/// both orientations, for `v = lambda * w` over the grid.
pub fn band_diagram_sweep(
    word: &[u8],
    grid: &[f64],
    include_dirichlet: bool,
) -> Result<Vec<SweepRow>> {
    if word.is_empty() {
        return Err(crate::error::Error::EmptyPotential);
    }
    if word.iter().any(|&b| b > 1) {
        return Err(crate::error::Error::InvalidWord);
    }
    Ok(grid
        .par_iter()
        .flat_map_iter(|&l| sweep_one(word, l, include_dirichlet))
        .collect())
}

/// `steps + 1` equally spaced points from `lo` to `hi`.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 0 {
        return vec![lo];
    }
    (0..=steps)
        .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
        .collect()
}

/// A Dirichlet branch changing sign between consecutive grid points, or
/// vanishing at a grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroCrossing {
    pub lambda_before: f64,
    pub lambda_after: f64,
    pub j: i64,
    pub orientation: Orientation,
    pub e_before: f64,
    pub e_after: f64,
}

/// Sign changes of the Dirichlet branches of a sweep (rows must come from a
/// single ascending grid).
pub fn dirichlet_zero_crossings(rows: &[SweepRow]) -> Vec<ZeroCrossing> {
    use std::collections::BTreeMap;
    let mut branches: BTreeMap<(i64, u8, usize), Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.kind == RowType::Dirichlet) {
        let o = matches!(r.orientation, Some(Orientation::Reversed)) as u8;
        branches
            .entry((r.j.unwrap_or(0), o, r.branch))
            .or_default()
            .push((r.lambda, r.e_lo));
    }
    let mut grid: Vec<f64> = rows.iter().map(|r| r.lambda).collect();
    grid.dedup();
    let next_of = |l: f64| {
        grid.iter()
            .position(|&g| g == l)
            .and_then(|i| grid.get(i + 1))
            .copied()
    };
    let mut out = Vec::new();
    for ((j, o, _), pts) in branches {
        let orientation = if o == 1 {
            Orientation::Reversed
        } else {
            Orientation::Forward
        };
        for (i, &(l, e)) in pts.iter().enumerate() {
            if e == 0.0 {
                out.push(ZeroCrossing {
                    lambda_before: l,
                    lambda_after: l,
                    j,
                    orientation,
                    e_before: e,
                    e_after: e,
                });
            }
            if let Some(&(l2, e2)) = pts.get(i + 1) {
                if next_of(l) == Some(l2) && e * e2 < 0.0 {
                    out.push(ZeroCrossing {
                        lambda_before: l,
                        lambda_after: l2,
                        j,
                        orientation,
                        e_before: e,
                        e_after: e2,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse::{parse_scalar, Mode};

    fn s(x: &str) -> Scalar {
        parse_scalar(x, Mode::Exact).unwrap()
    }

    fn edges(b: &BandSet) -> Vec<Scalar> {
        b.bands
            .iter()
            .flat_map(|b| [b.lo.clone(), b.hi.clone()])
            .collect()
    }

    #[test]
    fn constant_potential_band() {
        let b = spectrum_bands(&Potential::from_ints(&[3]));
        assert_eq!(edges(&b), vec![Scalar::int(1), Scalar::int(5)]);
    }

    #[test]
    fn two_and_three_periodic_bands() {
        let b = spectrum_bands(&Potential::from_ints(&[-1, 1]));
        assert_eq!(
            edges(&b),
            vec![s("-sqrt(5)"), s("-1"), s("1"), s("sqrt(5)")]
        );
        let c = spectrum_bands(&Potential::from_ints(&[0, 1, 0]));
        assert_eq!(
            edges(&c),
            vec![
                s("-sqrt(3)"),
                s("-1"),
                s("1-sqrt(2)"),
                s("1"),
                s("sqrt(3)"),
                s("1+sqrt(2)")
            ]
        );
        // E = 2 has trace -1, so it lies in the top band.
        assert!(c.contains(&Scalar::int(2)));
        assert_eq!(
            c.to_string(),
            "[-sqrt(3), -1] ∪ [1-sqrt(2), 1] ∪ [sqrt(3), 1+sqrt(2)]"
        );
    }

    #[test]
    fn invertibility_examples() {
        let p = Potential::new(vec![
            Scalar::int(2),
            Scalar::ratio(1, 2),
            Scalar::ratio(1, 2),
        ])
        .unwrap();
        assert_eq!(is_invertible(&p), (true, Scalar::ratio(5, 2)));
        assert_eq!(
            is_invertible(&Potential::from_ints(&[0, 1, 0])),
            (false, Scalar::int(1))
        );
        for k in 1..6 {
            assert!(!is_invertible(&Potential::from_ints(&vec![0; k])).0);
        }
    }

    #[test]
    fn dirichlet_examples() {
        assert_eq!(
            dirichlet_candidates(&Potential::from_ints(&[0, 1, 0])),
            vec![s("1/2-1/2*sqrt(5)"), s("1/2+1/2*sqrt(5)")]
        );
        assert_eq!(
            dirichlet_candidates(&Potential::from_ints(&[4, -7])),
            vec![Scalar::int(4)]
        );
        assert_eq!(
            dirichlet_candidates(&Potential::from_ints(&[5])),
            vec![Scalar::int(5)]
        );
    }

    #[test]
    fn one_sided_examples() {
        let o = one_sided_spectrum(&Potential::from_ints(&[0, 1, 0]));
        let vals: Vec<Scalar> = o
            .dirichlet_eigenvalues
            .iter()
            .map(|d| d.value.clone())
            .collect();
        assert_eq!(vals, vec![s("-(sqrt(5)-1)/2")]);
        assert_eq!(o.rejected, vec![s("(1+sqrt(5))/2")]);
        for w in [[-1, 1], [3, 7], [0, 0]] {
            assert!(one_sided_spectrum(&Potential::from_ints(&w))
                .dirichlet_eigenvalues
                .is_empty());
        }
        let c = one_sided_spectrum(&Potential::from_ints(&[3]));
        assert!(c.dirichlet_eigenvalues.is_empty());
        assert_eq!(edges(&c.bands), vec![Scalar::int(1), Scalar::int(5)]);
    }

    #[test]
    fn floquet_values_match_dense_oracle() {
        // Frozen from a dense symmetric eigensolver on [[0,1,1],[1,1,1],[1,1,0]].
        let ev = floquet_eigenvalues(&Potential::from_ints(&[0, 1, 0]), 0.0);
        let expect = [-1.0, 1.0 - 2f64.sqrt(), 1.0 + 2f64.sqrt()];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{ev:?}");
        }
        let pi = floquet_eigenvalues(&Potential::from_ints(&[7]), std::f64::consts::PI);
        assert!((pi[0] - 7.0).abs() < 1e-12 && (pi[1] - 7.0).abs() < 1e-12);
    }

    #[test]
    fn interlacing_examples() {
        assert!(check_interlacing(&Potential::from_ints(&[0, 1, 0]), 0.0).holds);
        let r = check_interlacing(&Potential::from_ints(&[2, -3]), 0.0);
        assert!(r.holds);
        assert_eq!(r.dirichlet, vec![2.0]);
    }

    #[test]
    fn free_word_sweep() {
        let rows = band_diagram_sweep(&[0], &[0.5, 1.0], true).unwrap();
        let bands: Vec<_> = rows.iter().filter(|r| r.kind == RowType::Band).collect();
        assert_eq!(bands.len(), 2);
        assert!(bands.iter().all(|r| r.e_lo == -2.0 && r.e_hi == 2.0));
        assert!(rows.iter().all(|r| r.kind == RowType::Band));
    }
}
