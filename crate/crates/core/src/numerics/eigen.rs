//! Eigenvalues of dense Hermitian matrices.
//!
//! Householder reduction to a real symmetric tridiagonal matrix followed by
//! the implicit QL iteration with Wilkinson-type shifts. Only eigenvalues are
//! computed; the reflectors are never accumulated.

use num_complex::Complex64 as C64;

use super::matrix::CMatrix;
use crate::error::{Result, WalkError};

/// Symmetry tolerance on `|a_ij - conj(a_ji)|`.
pub const TOL_HERMITIAN: f64 = 1e-10;

/// QL sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Real eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Self { eigenvalues }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x * x).sum()
    }

    pub fn min(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }
}

/// All eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Spectrum> {
    let n = m.dim();
    let (dev, row, col) = m.hermiticity_defect();
    if dev > TOL_HERMITIAN {
        return Err(WalkError::NonHermitianInput { row, col, deviation: dev });
    }
    if n == 0 {
        return Ok(Spectrum::new(Vec::new()));
    }
    let (mut diag, mut offdiag) = tridiagonalize(m);
    tridiagonal_ql(&mut diag, &mut offdiag)?;
    Ok(Spectrum::new(diag))
}

/// Packed lower triangle: row `i` holds columns `0..=i`.
struct LowerPacked {
    data: Vec<C64>,
}

impl LowerPacked {
    fn from_hermitian(m: &CMatrix) -> Self {
        let n = m.dim();
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in 0..=i {
                // Average the two triangles so tiny asymmetries do not bias the result.
                let z = 0.5 * (m[(i, j)] + m[(j, i)].conj());
                data.push(if i == j { C64::new(z.re, 0.0) } else { z });
            }
        }
        Self { data }
    }

    #[inline]
    fn offset(i: usize) -> usize {
        i * (i + 1) / 2
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> C64 {
        debug_assert!(j <= i);
        self.data[Self::offset(i) + j]
    }

    #[inline]
    fn row_mut(&mut self, i: usize) -> &mut [C64] {
        let o = Self::offset(i);
        &mut self.data[o..o + i + 1]
    }
}

/// Unitary reduction to tridiagonal form. Returns the real diagonal and the
/// moduli of the sub-diagonal (the phases are removable by a diagonal unitary).
fn tridiagonalize(m: &CMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.dim();
    let mut a = LowerPacked::from_hermitian(m);
    let mut diag = vec![0.0; n];
    let mut offdiag = vec![0.0; n];
    let zero = C64::new(0.0, 0.0);

    let mut v = vec![zero; n];
    let mut p = vec![zero; n];

    for k in 0..n.saturating_sub(1) {
        diag[k] = a.get(k, k).re;
        let lo = k + 1;
        let x0 = a.get(lo, k);
        let tail_sq: f64 = (lo + 1..n).map(|i| a.get(i, k).norm_sqr()).sum();
        if tail_sq == 0.0 {
            offdiag[k] = x0.norm();
            continue;
        }
        let xnorm = (x0.norm_sqr() + tail_sq).sqrt();
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C64::new(1.0, 0.0) };
        // alpha = -phase * |x|, so v0 = x0 - alpha never cancels. v is kept
        // scaled by 1/|x| so columns near the underflow threshold stay finite.
        let rel0 = x0.norm() / xnorm;
        v[lo] = phase * (rel0 + 1.0);
        for i in lo + 1..n {
            v[i] = a.get(i, k) / xnorm;
        }
        let vnorm_sq = 2.0 * (1.0 + rel0);
        let tau = 2.0 / vnorm_sq;
        offdiag[k] = xnorm;

        // p = tau * B v over the trailing block.
        for pi in p[lo..n].iter_mut() {
            *pi = zero;
        }
        for i in lo..n {
            let vi = v[i];
            let mut acc = zero;
            for j in lo..i {
                let b = a.get(i, j);
                acc += b * v[j];
                p[j] += b.conj() * vi;
            }
            acc += a.get(i, i) * vi;
            p[i] += acc;
        }
        let mut vp = zero;
        for i in lo..n {
            p[i] *= tau;
            vp += v[i].conj() * p[i];
        }
        let kk = 0.5 * tau * vp.re;
        // w = p - K v, stored in p.
        for i in lo..n {
            p[i] -= kk * v[i];
        }
        for i in lo..n {
            let (vi, wi) = (v[i], p[i]);
            let row = a.row_mut(i);
            for j in lo..=i {
                row[j] -= vi * p[j].conj() + wi * v[j].conj();
            }
            row[i].im = 0.0;
        }
    }
    diag[n - 1] = a.get(n - 1, n - 1).re;
    (diag, offdiag)
}

/// Implicit QL on a symmetric tridiagonal matrix. `offdiag[i]` couples `i` and
/// `i + 1`; on return `diag` holds the eigenvalues (unsorted).
fn tridiagonal_ql(diag: &mut [f64], offdiag: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    offdiag[n - 1] = 0.0;
    // Rank-deficient inputs leave clusters near zero where a purely relative
    // test never fires; couplings below eps * |T| are negligible anyway.
    let floor = f64::EPSILON * diag.iter().zip(offdiag.iter()).fold(0.0f64, |m, (d, e)| m.max(d.abs() + e.abs()));
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if offdiag[m].abs() <= (f64::EPSILON * dd).max(floor) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return Err(WalkError::ConvergenceFailure { dim: n, iterations: sweeps });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * offdiag[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + offdiag[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * offdiag[i];
                let b = c * offdiag[i];
                r = f.hypot(g);
                offdiag[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    offdiag[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            offdiag[l] = g;
            offdiag[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn half_identity() {
        let m = CMatrix::from_real_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]);
        let s = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(s.len(), 2);
        for x in s.eigenvalues {
            assert!((x - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = CMatrix::from_real_rows(&[vec![0.5, 0.25], vec![0.25, 0.5]]);
        let s = hermitian_eigenvalues(&m).unwrap();
        assert!((s.eigenvalues[0] - 0.75).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 0.25).abs() < 1e-14);
    }

    #[test]
    fn complex_off_diagonal() {
        // [[a, b],[b*, a]] has eigenvalues a +/- |b| for any phase of b.
        let m = CMatrix::from_rows(&[vec![c(0.5, 0.0), c(0.0, -0.3)], vec![c(0.0, 0.3), c(0.5, 0.0)]]);
        let s = hermitian_eigenvalues(&m).unwrap();
        assert!((s.eigenvalues[0] - 0.8).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 0.2).abs() < 1e-14);
    }

    #[test]
    fn diagonal_input_passes_through() {
        let m = CMatrix::diagonal(&[0.1, 0.4, 0.2, 0.3]);
        let s = hermitian_eigenvalues(&m).unwrap();
        let expected = [0.4, 0.3, 0.2, 0.1];
        for (a, b) in s.eigenvalues.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn one_by_one() {
        let m = CMatrix::diagonal(&[0.7]);
        assert_eq!(hermitian_eigenvalues(&m).unwrap().eigenvalues, vec![0.7]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(&[vec![c(0.5, 0.0), c(0.0, 0.1)], vec![c(0.0, 0.1), c(0.5, 0.0)]]);
        assert!(matches!(hermitian_eigenvalues(&m), Err(WalkError::NonHermitianInput { .. })));
    }

    #[test]
    fn rank_one_projector() {
        let v: Vec<C64> = (0..7).map(|k| c((k as f64).cos(), (0.3 * k as f64).sin())).collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<C64> = v.iter().map(|z| z / norm).collect();
        let s = hermitian_eigenvalues(&CMatrix::outer(&v)).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!(s.eigenvalues[1..].iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn trace_and_norm_invariants() {
        let n = 40;
        let m = CMatrix::from_fn(n, |i, j| {
            let (a, b) = (i.min(j) as f64, i.max(j) as f64);
            let z = c((a * 0.37 + b * 0.11).sin(), (a * 0.5 - b * 0.23).cos());
            if i == j {
                c(z.re, 0.0)
            } else if i < j {
                z
            } else {
                z.conj()
            }
        });
        let s = hermitian_eigenvalues(&m).unwrap();
        assert!((s.sum() - m.trace().re).abs() < 1e-10 * n as f64);
        let fro = m.frobenius_norm().powi(2);
        assert!((s.sum_of_squares() - fro).abs() < 1e-10 * fro);
    }
}
