//! The condition matrix `X` of `Φ̂∘Φ` and the sufficient conditions for
//! multiplicativity of `ν₂` built on it.
//!
//! `X` is indexed by row-major pairs: `x[(i·d + k), (j·d + l)] = Tr Φ(E_ik)†Φ(E_jl)`.
//! In the rotated basis `F_jk = U E_jk U†` it becomes `(U†⊗Uᵀ) X (U⊗Ū)`.

use rayon::prelude::*;

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::linalg::{
    c64, exp_i_hermitian, kron, max_abs, unitarity_defect, ComplexMatrix, RealMatrix, C64,
};
use crate::random::{haar_unitary, seeded_rng};

/// Unitarity tolerance for basis changes.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionMatrix {
    d: usize,
    matrix: ComplexMatrix,
}

impl ConditionMatrix {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `Tr Φ(F_ik)†Φ(F_jl)`.
    pub fn entry(&self, i: usize, k: usize, j: usize, l: usize) -> C64 {
        self.matrix[(i * self.d + k, j * self.d + l)]
    }

    /// Smallest real part over all entries.
    pub fn min_real(&self) -> f64 {
        self.matrix.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }

    /// Largest imaginary magnitude over all entries.
    pub fn max_imag(&self) -> f64 {
        self.matrix.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// The same map's condition matrix in the basis `U E_jk U†`.
    pub fn rotated(&self, u: &ComplexMatrix) -> Result<ConditionMatrix> {
        check_unitary(u, self.d)?;
        Ok(self.rotated_unchecked(u))
    }

    fn rotated_unchecked(&self, u: &ComplexMatrix) -> ConditionMatrix {
        let w = kron(u, &u.map(|z| z.conj()));
        ConditionMatrix {
            d: self.d,
            matrix: w.adjoint() * &self.matrix * w,
        }
    }
}

fn check_unitary(u: &ComplexMatrix, d: usize) -> Result<()> {
    if u.shape() != (d, d) {
        return Err(Error::DimensionMismatch(format!("basis change of shape {:?}, expected {d}x{d}", u.shape())));
    }
    let defect = unitarity_defect(u);
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    Ok(())
}

/// `X` in the basis `U E_jk U†` (`U = I` when `None`).
pub fn condition_matrix(phi: &Channel, u: Option<&ComplexMatrix>) -> Result<ConditionMatrix> {
    let s = phi.superop();
    let base = ConditionMatrix {
        d: phi.dim_in(),
        matrix: s.as_matrix().adjoint() * s.as_matrix(),
    };
    match u {
        None => Ok(base),
        Some(u) => base.rotated(u),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PostrCheck {
    pub holds: bool,
    /// Smallest real part of an entry of `X`.
    pub min_entry: f64,
    /// Largest imaginary magnitude of an entry of `X`.
    pub max_imag: f64,
}

impl PostrCheck {
    fn from_matrix(x: &ConditionMatrix, tol: f64) -> Self {
        let min_entry = x.min_real();
        let max_imag = x.max_imag();
        Self {
            holds: min_entry >= -tol && max_imag <= tol,
            min_entry,
            max_imag,
        }
    }
}

/// Whether every `Tr Φ(F_ik)†Φ(F_jl)` is real and nonnegative to `tol`.
pub fn check_postr(phi: &Channel, u: Option<&ComplexMatrix>, tol: f64) -> Result<PostrCheck> {
    Ok(PostrCheck::from_matrix(&condition_matrix(phi, u)?, tol))
}

/// Whether every Choi entry is real and nonnegative to `tol`.
pub fn choi_entrywise_nonneg(phi: &Channel, tol: f64) -> bool {
    phi.choi().as_matrix().iter().all(|z| z.re >= -tol && z.im.abs() <= tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_steps: usize,
    /// Acceptance tolerance on the entries of the rotated `X`.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            max_steps: 500,
            tol: 1e-9,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisSearch {
    pub best_u: ComplexMatrix,
    pub min_entry: f64,
    pub max_imag: f64,
    pub holds: bool,
    /// `Σ min(0, Re x)² + Σ (Im x)²` at `best_u`.
    pub penalty: f64,
}

/// Hermitian generator from `d²` real parameters: the diagonal, then the real
/// and imaginary parts of the strict upper triangle.
fn generator(theta: &[f64], d: usize) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        h[(j, j)] = c64(theta[j], 0.0);
    }
    let mut idx = d;
    for j in 0..d {
        for k in j + 1..d {
            let z = c64(theta[idx], theta[idx + 1]);
            h[(j, k)] = z;
            h[(k, j)] = z.conj();
            idx += 2;
        }
    }
    h
}

/// Residuals over the upper triangle of the Hermitian `X'`.
fn residuals(x: &ConditionMatrix, scale: f64) -> Vec<f64> {
    let n = x.matrix.nrows();
    let mut r = Vec::with_capacity(n * (n + 1));
    for a in 0..n {
        for b in a..n {
            let z = x.matrix[(a, b)] / scale;
            r.push(z.re.min(0.0));
            if a != b {
                r.push(z.im);
            }
        }
    }
    r
}

/// Heuristic search for a basis `U E_jk U†` in which `X` is entrywise
/// nonnegative. `U = U₀ exp(iH(θ))` is refined by Levenberg–Marquardt on the
/// violation residuals from `U₀ = I` and `restarts − 1` Haar starts.
///
/// Not finding a basis does not show that none exists.
pub fn search_basis(phi: &Channel, cfg: &SearchConfig) -> Result<BasisSearch> {
    let x = condition_matrix(phi, None)?;
    let d = x.d;
    let scale = max_abs(&x.matrix).max(f64::MIN_POSITIVE);
    let restarts = cfg.restarts.max(1);
    let candidates: Vec<(f64, ComplexMatrix)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let u0 = if r == 0 {
                crate::linalg::identity(d)
            } else {
                haar_unitary(&mut seeded_rng(cfg.seed, r as u64), d)
            };
            levenberg_marquardt(&x, &u0, scale, cfg)
        })
        .collect();
    let (_, best_u) = candidates
        .into_iter()
        .reduce(|best, next| if next.0 < best.0 { next } else { best })
        .expect("at least one restart");
    let check = check_postr(phi, Some(&best_u), cfg.tol)?;
    let rotated = x.rotated_unchecked(&best_u);
    let penalty = residuals(&rotated, 1.0).iter().map(|r| r * r).sum();
    Ok(BasisSearch {
        best_u,
        min_entry: check.min_entry,
        max_imag: check.max_imag,
        holds: check.holds,
        penalty,
    })
}

fn levenberg_marquardt(x: &ConditionMatrix, u0: &ComplexMatrix, scale: f64, cfg: &SearchConfig) -> (f64, ComplexMatrix) {
    let d = x.d;
    let n = d * d;
    let unitary = |theta: &[f64]| u0 * exp_i_hermitian(&generator(theta, d));
    let eval = |theta: &[f64]| residuals(&x.rotated_unchecked(&unitary(theta)), scale);
    let cost = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>();

    let mut theta = vec![0.0; n];
    let mut r = eval(&theta);
    let mut c = cost(&r);
    let mut mu = 1e-3;
    let h = 1e-6;
    let target = (cfg.tol / scale).powi(2) * 1e-2;
    for _ in 0..cfg.max_steps {
        if c <= target {
            break;
        }
        let m = r.len();
        let mut jac = RealMatrix::zeros(m, n);
        for p in 0..n {
            let mut plus = theta.clone();
            let mut minus = theta.clone();
            plus[p] += h;
            minus[p] -= h;
            let (rp, rm) = (eval(&plus), eval(&minus));
            for i in 0..m {
                jac[(i, p)] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let rv = nalgebra::DVector::from_column_slice(&r);
        let jtj = jac.transpose() * &jac;
        let jtr = jac.transpose() * rv;
        let mut improved = false;
        for _ in 0..20 {
            let mut lhs = jtj.clone();
            for p in 0..n {
                lhs[(p, p)] += mu * (1.0 + jtj[(p, p)]);
            }
            let Some(step) = lhs.cholesky().map(|ch| ch.solve(&(-&jtr))) else {
                mu *= 10.0;
                continue;
            };
            let candidate: Vec<f64> = theta.iter().zip(step.iter()).map(|(t, s)| t + s).collect();
            let rc = eval(&candidate);
            let cc = cost(&rc);
            if cc < c {
                theta = candidate;
                r = rc;
                c = cc;
                mu = (mu / 3.0).max(1e-12);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    (c, unitary(&theta))
}

/// Parameters of the structured maps `[Φ(M)]_jj = Σ_l d_jl m_ll`,
/// `[Φ(M)]_jk = a_jk ((1+ε_jk)/2 m_jk + (1−ε_jk)/2 m_kj)` for `j ≠ k`.
///
/// Only the off-diagonal entries of `a` and `ε` are meaningful; diagonal entries
/// are stored as `0` and `+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormParams {
    d: RealMatrix,
    a: ComplexMatrix,
    epsilon: RealMatrix,
}

pub const FORM_TOL: f64 = 1e-9;

impl FormParams {
    pub fn new(d: RealMatrix, a: ComplexMatrix, epsilon: RealMatrix) -> Result<Self> {
        let n = d.nrows();
        if n == 0 || d.shape() != (n, n) || a.shape() != (n, n) || epsilon.shape() != (n, n) {
            return Err(Error::DimensionMismatch("D, A and epsilon must be square of equal size".into()));
        }
        if d.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidParameter("D must be entrywise nonnegative".into()));
        }
        crate::linalg::ensure_finite(&a)?;
        let mut a = a;
        let mut epsilon = epsilon;
        for j in 0..n {
            a[(j, j)] = c64(0.0, 0.0);
            epsilon[(j, j)] = 1.0;
            for k in j + 1..n {
                let e = epsilon[(j, k)];
                if (e != 1.0 && e != -1.0) || epsilon[(k, j)] != e {
                    return Err(Error::InvalidParameter(format!("epsilon[{j},{k}] must be a symmetric +-1")));
                }
                if (a[(j, k)] - a[(k, j)].conj()).norm() > FORM_TOL * a[(j, k)].norm().max(1.0) {
                    return Err(Error::InvalidParameter(format!("a[{j},{k}] must equal conj(a[{k},{j}])")));
                }
            }
        }
        Ok(Self { d, a, epsilon })
    }

    pub fn dim(&self) -> usize {
        self.d.nrows()
    }

    pub fn d(&self) -> &RealMatrix {
        &self.d
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn epsilon(&self) -> &RealMatrix {
        &self.epsilon
    }

    /// Trace preserving exactly when `D` is column stochastic.
    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        self.d.column_iter().all(|c| (c.sum() - 1.0).abs() <= tol)
    }

    pub fn apply(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |j, k| {
            if j == k {
                (0..n).map(|l| m[(l, l)] * self.d[(j, l)]).sum()
            } else {
                let e = self.epsilon[(j, k)];
                self.a[(j, k)] * (m[(j, k)] * ((1.0 + e) / 2.0) + m[(k, j)] * ((1.0 - e) / 2.0))
            }
        })
    }
}

/// Recovers `(D, A, ε)` when `Φ` has the structured form, probing the matrix
/// units (which determine a linear map). `ε_jk` is set to `+1` when `a_jk = 0`.
pub fn recognize_form(phi: &Channel, tol: f64) -> Option<FormParams> {
    let n = phi.dim_in();
    if phi.dim_out() != n {
        return None;
    }
    let image = |j: usize, k: usize| phi.apply(&crate::linalg::matrix_unit(j, k, n).expect("in range")).expect("shape");
    let off_support_ok = |m: &ComplexMatrix, allowed: &[(usize, usize)]| {
        (0..n).all(|r| (0..n).all(|c| allowed.contains(&(r, c)) || m[(r, c)].norm() <= tol))
    };

    let mut d = RealMatrix::zeros(n, n);
    for l in 0..n {
        let out = image(l, l);
        let diag: Vec<(usize, usize)> = (0..n).map(|j| (j, j)).collect();
        if !off_support_ok(&out, &diag) {
            return None;
        }
        for j in 0..n {
            let z = out[(j, j)];
            if z.im.abs() > tol || z.re < -tol {
                return None;
            }
            d[(j, l)] = z.re.max(0.0);
        }
    }

    let mut a = ComplexMatrix::zeros(n, n);
    let mut epsilon = RealMatrix::from_element(n, n, 1.0);
    for j in 0..n {
        for k in j + 1..n {
            let fwd = image(j, k);
            let bwd = image(k, j);
            let pair = [(j, k), (k, j)];
            if !off_support_ok(&fwd, &pair) || !off_support_ok(&bwd, &pair) {
                return None;
            }
            let (alpha, beta) = (fwd[(j, k)], fwd[(k, j)]);
            let (value, eps) = match (alpha.norm() > tol, beta.norm() > tol) {
                (true, true) => return None,
                (true, false) => (alpha, 1.0),
                (false, true) => (beta.conj(), -1.0),
                (false, false) => (c64(0.0, 0.0), 1.0),
            };
            // Φ(E_kj) must be the matching adjoint image.
            let expected_bwd = if eps > 0.0 { (value.conj(), c64(0.0, 0.0)) } else { (c64(0.0, 0.0), value) };
            if (bwd[(k, j)] - expected_bwd.0).norm() > tol || (bwd[(j, k)] - expected_bwd.1).norm() > tol {
                return None;
            }
            a[(j, k)] = value;
            a[(k, j)] = value.conj();
            epsilon[(j, k)] = eps;
            epsilon[(k, j)] = eps;
        }
    }
    FormParams::new(d, a, epsilon).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, matrix_unit, max_abs_diff, hs_inner, PSD_TOL};
    use crate::random::ginibre;
    use crate::zoo;

    fn real(rows: &[&[f64]]) -> RealMatrix {
        RealMatrix::from_fn(rows.len(), rows[0].len(), |r, c| rows[r][c])
    }

    /// Oracle: the defining traces in the rotated basis, entry by entry.
    fn direct(phi: &Channel, u: &ComplexMatrix) -> ComplexMatrix {
        let d = phi.dim_in();
        let f = |j: usize, k: usize| {
            let e = matrix_unit(j, k, d).unwrap();
            phi.apply(&(u * e * u.adjoint())).unwrap()
        };
        ComplexMatrix::from_fn(d * d, d * d, |row, col| hs_inner(&f(row / d, row % d), &f(col / d, col % d)))
    }

    #[test]
    fn examples() {
        let a = ComplexMatrix::from_row_slice(2, 2, &[c64(2.0, 0.0), c64(-1.0, 0.0), c64(-1.0, 0.0), c64(2.0, 0.0)]);
        let diag = zoo::diagonal_map(&a).unwrap();
        let x = condition_matrix(&diag, None).unwrap();
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        let expected = if i == j && k == l { a[(i, k)].norm_sqr() } else { 0.0 };
                        assert!((x.entry(i, k, j, l) - c64(expected, 0.0)).norm() < 1e-13);
                    }
                }
            }
        }
        assert!(check_postr(&diag, None, 1e-10).unwrap().holds);
        assert!(!choi_entrywise_nonneg(&diag, 1e-12));

        assert!(max_abs_diff(condition_matrix(&Channel::identity(3), None).unwrap().as_matrix(), &identity(9)) < 1e-15);
        assert!(choi_entrywise_nonneg(&Channel::identity(3), 0.0));

        let wh = zoo::werner_holevo(3).unwrap();
        assert!(check_postr(&wh, None, 1e-10).unwrap().holds);

        let qubit = zoo::qubit_canonical([0.0, 0.0, 0.2], [0.3, -0.2, 0.4]).unwrap();
        assert!(check_postr(&qubit, None, 1e-10).unwrap().holds);
        let nonneg = zoo::qubit_canonical([0.2, 0.0, 0.1], [0.5, 0.3, 0.4]).unwrap();
        assert!(choi_entrywise_nonneg(&nonneg, 1e-12));
        assert!(check_postr(&nonneg, None, 1e-10).unwrap().holds);
    }

    #[test]
    fn transform_law_matches_direct() {
        let mut rng = seeded_rng(1, 0);
        for seed in 0..5 {
            let phi = zoo::random_cp(3, 2, 2, seed).unwrap();
            let u = haar_unitary(&mut rng, 3);
            let fast = condition_matrix(&phi, Some(&u)).unwrap();
            assert!(max_abs_diff(fast.as_matrix(), &direct(&phi, &u)) <= 1e-11);
            // Column-major form: (Uᵀ⊗U†) X (Ū⊗U) after swapping pair order.
            let x = condition_matrix(&phi, None).unwrap();
            let swap = |m: &ComplexMatrix| ComplexMatrix::from_fn(9, 9, |r, c| m[((r % 3) * 3 + r / 3, (c % 3) * 3 + c / 3)]);
            let col_major = kron(&u.transpose(), &u.adjoint()) * swap(x.as_matrix()) * kron(&u.map(|z| z.conj()), &u);
            assert!(max_abs_diff(&swap(&col_major), fast.as_matrix()) <= 1e-11);
            let ev = crate::linalg::eigvalsh(fast.as_matrix());
            assert!(ev[0] >= -1e-10 * ev[ev.len() - 1]);
        }
        let not_unitary = identity(2).scale(1.1);
        assert!(matches!(
            condition_matrix(&Channel::identity(2), Some(&not_unitary)),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn covariance_under_conjugation() {
        let mut rng = seeded_rng(2, 0);
        for seed in 0..10 {
            let phi = zoo::random_cp(2, 2, 2, seed).unwrap();
            let v = haar_unitary(&mut rng, 2);
            // Φ_V(A) = V Φ(V†AV) V†; in the basis V E V† it looks like Φ at I.
            let phi_v = phi.conjugated(&v.adjoint(), &v).unwrap();
            let rotated = condition_matrix(&phi_v, Some(&v)).unwrap();
            let base = condition_matrix(&phi, None).unwrap();
            assert!(max_abs_diff(rotated.as_matrix(), base.as_matrix()) < 1e-12);
            assert_eq!(
                check_postr(&phi_v, Some(&v), 1e-10).unwrap().holds,
                check_postr(&phi, None, 1e-10).unwrap().holds
            );
        }
    }

    #[test]
    fn nonneg_choi_implies_condition() {
        for seed in 0..30 {
            let mut rng = seeded_rng(seed, 0);
            let k: Vec<ComplexMatrix> = (0..2).map(|_| ginibre(&mut rng, 2, 2).map(|z| c64(z.re.abs(), 0.0))).collect();
            let phi = Channel::from_kraus(k).unwrap();
            assert!(choi_entrywise_nonneg(&phi, 0.0));
            assert!(check_postr(&phi, None, 1e-12).unwrap().holds);
        }
    }

    #[test]
    fn search_recovers_rotated_basis() {
        let phi = zoo::qubit_canonical([0.0, 0.0, 0.2], [0.3, -0.2, 0.4]).unwrap();
        let at_identity = search_basis(&phi, &SearchConfig::default()).unwrap();
        assert!(at_identity.holds);

        let v = haar_unitary(&mut seeded_rng(3, 0), 2);
        let phi_v = phi.conjugated(&v.adjoint(), &v).unwrap();
        assert!(check_postr(&phi_v, Some(&v), 1e-10).unwrap().holds);
        assert!(!check_postr(&phi_v, None, 1e-9).unwrap().holds);
        let found = search_basis(&phi_v, &SearchConfig::default()).unwrap();
        assert!(found.holds, "min {} imag {}", found.min_entry, found.max_imag);

        let random = zoo::random_cp(2, 2, 3, 11).unwrap();
        let result = search_basis(&random, &SearchConfig::default().with_seed(5)).unwrap();
        let recheck = check_postr(&random, Some(&result.best_u), 1e-9).unwrap();
        assert_eq!(result.min_entry, recheck.min_entry);
        assert_eq!(result.holds, recheck.holds);
    }

    #[test]
    fn form_recognition() {
        let unnormalized = zoo::werner_holevo_unnormalized(3).unwrap();
        let f = recognize_form(&unnormalized, FORM_TOL).unwrap();
        for j in 0..3 {
            for l in 0..3 {
                assert!((f.d()[(j, l)] - if j == l { 0.0 } else { 1.0 }).abs() < 1e-12);
                if j != l {
                    assert!((f.a()[(j, l)] - c64(-1.0, 0.0)).norm() < 1e-12);
                    assert_eq!(f.epsilon()[(j, l)], -1.0);
                }
            }
        }
        let d = real(&[&[0.2, 0.5, 0.0], &[0.3, 0.5, 0.1], &[0.5, 0.0, 0.9]]);
        let qc = recognize_form(&zoo::qc_map(&d).unwrap(), FORM_TOL).unwrap();
        assert!((qc.d() - &d).norm() < 1e-12 && qc.is_trace_preserving(1e-12));
        assert!(qc.a().iter().all(|z| z.norm() < 1e-12));

        let lambda = 0.5;
        let dep = recognize_form(&zoo::depolarizing(3, lambda).unwrap(), FORM_TOL).unwrap();
        for j in 0..3 {
            for l in 0..3 {
                let expected = if j == l { lambda } else { 0.0 } + (1.0 - lambda) / 3.0;
                assert!((dep.d()[(j, l)] - expected).abs() < 1e-12);
                if j != l {
                    assert!((dep.a()[(j, l)] - c64(lambda, 0.0)).norm() < 1e-12);
                    assert_eq!(dep.epsilon()[(j, l)], 1.0);
                }
            }
        }
        assert!(recognize_form(&zoo::random_channel(3, 3, 2, 1).unwrap(), FORM_TOL).is_none());
        assert!(recognize_form(&zoo::random_channel(2, 3, 2, 1).unwrap(), FORM_TOL).is_none());
    }

    #[test]
    fn recognized_cp_maps_satisfy_condition() {
        let d = real(&[&[0.6, 0.3], &[0.4, 0.7]]);
        let a = ComplexMatrix::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(0.2, 0.2), c64(0.2, -0.2), c64(0.0, 0.0)]);
        for eps in [1.0, -1.0] {
            let params = FormParams::new(d.clone(), a.clone(), RealMatrix::from_element(2, 2, eps)).unwrap();
            let phi = zoo::form_map(&params).unwrap();
            assert!(phi.is_cp(PSD_TOL));
            let back = recognize_form(&phi, FORM_TOL).unwrap();
            assert!((back.a() - params.a()).norm() < 1e-12);
            assert!(check_postr(&phi, None, 1e-12).unwrap().holds);
        }
        assert!(FormParams::new(d.clone(), a.clone(), real(&[&[1.0, 1.0], &[-1.0, 1.0]])).is_err());
        assert!(FormParams::new(real(&[&[-0.1, 0.0], &[0.0, 1.0]]), a, RealMatrix::from_element(2, 2, 1.0)).is_err());
    }
}
