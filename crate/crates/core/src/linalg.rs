//! Dense complex linear algebra: matrix types with progressively stronger
//! invariants, Schatten norms, tensor products, block and operator-basis
//! decompositions, and partial traces.
//!
//! Operator vectorization is row-major throughout: `vec(A)[r * cols + c] = A[r, c]`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;
pub type RealMatrix = DMatrix<f64>;

/// Relative tolerance for positive semidefiniteness, scaled by the largest |eigenvalue|.
pub const PSD_TOL: f64 = 1e-10;
/// Entrywise tolerance under which a matrix counts as Hermitian as-is.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Largest relative Hermiticity defect that construction repairs by symmetrizing.
pub const SYMMETRIZE_LIMIT: f64 = 1e-9;
/// Tolerance used when checking operator bases for orthonormality.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Lifts a real matrix to a complex one.
pub fn complexify(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| c64(x, 0.0))
}

pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

pub fn ensure_finite(m: &ComplexMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn ensure_square(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() == m.ncols() {
        Ok(m.nrows())
    } else {
        Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

/// Largest entry modulus.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise modulus of `a - b`. Panics if shapes differ.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn trace(m: &ComplexMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// Hilbert–Schmidt inner product `Tr a† b`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_row(m: &ComplexMatrix) -> ComplexVector {
    let (rows, cols) = m.shape();
    ComplexVector::from_fn(rows * cols, |i, _| m[(i / cols, i % cols)])
}

pub fn unvec_row(v: &ComplexVector, rows: usize, cols: usize) -> ComplexMatrix {
    assert_eq!(v.len(), rows * cols, "vector length does not match shape");
    ComplexMatrix::from_fn(rows, cols, |r, c| v[r * cols + c])
}

/// The matrix unit `E_jk`: a single 1 at row `j`, column `k`.
pub fn matrix_unit(j: usize, k: usize, d: usize) -> Result<ComplexMatrix> {
    if j >= d || k >= d {
        return Err(Error::IndexOutOfRange {
            row: j,
            col: k,
            dim: d,
        });
    }
    let mut e = ComplexMatrix::zeros(d, d);
    e[(j, k)] = c64(1.0, 0.0);
    Ok(e)
}

/// All `d²` matrix units in row-major `(j, k)` order.
pub fn matrix_units(d: usize) -> Vec<ComplexMatrix> {
    (0..d * d)
        .map(|m| matrix_unit(m / d, m % d, d).expect("index in range"))
        .collect()
}

/// Largest entry of `|m - m†|`.
pub fn hermitian_defect(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn symmetrize(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Only the Hermitian part of `m` is used. Column `i` of the returned matrix
/// is the unit eigenvector for eigenvalue `i`.
pub fn eigh(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let eig = nalgebra::linalg::SymmetricEigen::new(symmetrize(m));
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn eigvalsh(m: &ComplexMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = symmetrize(m).symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Singular values, descending.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Full SVD `m = U diag(s) V†` with singular values descending.
pub fn svd(m: &ComplexMatrix) -> (ComplexMatrix, Vec<f64>, ComplexMatrix) {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V†");
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let s = order.iter().map(|&i| svd.singular_values[i]).collect();
    let u_sorted = ComplexMatrix::from_fn(u.nrows(), k, |r, c| u[(r, order[c])]);
    let v_sorted = ComplexMatrix::from_fn(v_t.ncols(), k, |r, c| v_t[(order[c], r)].conj());
    (u_sorted, s, v_sorted)
}

pub fn validate_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        Err(Error::InvalidExponent(p))
    } else {
        Ok(())
    }
}

/// `ℓ_p` norm of a vector of nonnegative magnitudes, computed with rescaling
/// so that large `p` neither overflows nor underflows. `p = ∞` is the maximum.
pub fn lp_norm(magnitudes: &[f64], p: f64) -> f64 {
    let top = magnitudes.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    if p.is_infinite() {
        return top;
    }
    let sum: f64 = magnitudes.iter().map(|x| (x / top).powf(p)).sum();
    top * sum.powf(1.0 / p)
}

/// Schatten p-norm: the `ℓ_p` norm of the singular values. `p = f64::INFINITY`
/// gives the operator norm.
pub fn schatten_norm(a: &ComplexMatrix, p: f64) -> Result<f64> {
    validate_exponent(p)?;
    ensure_finite(a)?;
    Ok(lp_norm(&singular_values(a), p))
}

/// `|A| = sqrt(A† A)`.
pub fn abs_matrix(a: &ComplexMatrix) -> Result<HermitianMatrix> {
    ensure_square(a)?;
    ensure_finite(a)?;
    let (_, s, v) = svd(a);
    let scaled = ComplexMatrix::from_fn(v.nrows(), v.ncols(), |r, c| v[(r, c)] * s[c]);
    HermitianMatrix::new(&scaled * v.adjoint())
}

/// Kronecker product; entry `(i·rB + r, j·cB + c)` is `A[i,j]·B[r,c]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Splits `Γ` on `C^d ⊗ C^{d'}` into its `d × d` grid of `d' × d'` blocks `M_jk`,
/// so that `Γ = Σ_jk E_jk ⊗ M_jk`. The result is indexed `blocks[j][k]`.
pub fn block_decompose(gamma: &ComplexMatrix, d: usize) -> Result<Vec<Vec<ComplexMatrix>>> {
    let n = ensure_square(gamma)?;
    if d == 0 || n % d != 0 {
        return Err(Error::DimensionMismatch(format!(
            "side {n} is not divisible by first-factor dimension {d}"
        )));
    }
    let inner = n / d;
    Ok((0..d)
        .map(|j| {
            (0..d)
                .map(|k| gamma.view((j * inner, k * inner), (inner, inner)).into_owned())
                .collect()
        })
        .collect())
}

/// Inverse of [`block_decompose`].
pub fn block_compose(blocks: &[Vec<ComplexMatrix>]) -> ComplexMatrix {
    let d = blocks.len();
    let inner = blocks[0][0].nrows();
    let mut out = ComplexMatrix::zeros(d * inner, d * inner);
    for (j, row) in blocks.iter().enumerate() {
        for (k, block) in row.iter().enumerate() {
            out.view_mut((j * inner, k * inner), (inner, inner)).copy_from(block);
        }
    }
    out
}

/// Largest deviation of the Gram matrix `Tr G_m† G_n` from the identity.
pub fn orthonormality_defect(basis: &[ComplexMatrix]) -> f64 {
    let mut worst = 0.0f64;
    for (m, gm) in basis.iter().enumerate() {
        for (n, gn) in basis.iter().enumerate() {
            let target = if m == n { 1.0 } else { 0.0 };
            worst = worst.max((hs_inner(gm, gn) - target).norm());
        }
    }
    worst
}

/// Expands `Γ = Σ_m G_m ⊗ W_m` over an orthonormal operator basis `{G_m}` of the
/// first factor, returning `W_m = Tr₁ (G_m† ⊗ I) Γ`.
pub fn basis_decompose(gamma: &ComplexMatrix, basis: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>> {
    let d = basis
        .first()
        .map(|g| g.nrows())
        .ok_or_else(|| Error::InvalidParameter("empty operator basis".into()))?;
    if basis.iter().any(|g| g.shape() != (d, d)) {
        return Err(Error::DimensionMismatch("basis elements differ in shape".into()));
    }
    if basis.len() != d * d {
        return Err(Error::InvalidParameter(format!(
            "operator basis has {} elements, expected {}",
            basis.len(),
            d * d
        )));
    }
    let defect = orthonormality_defect(basis);
    if defect > ORTHONORMAL_TOL {
        return Err(Error::NonOrthonormalBasis(defect));
    }
    let blocks = block_decompose(gamma, d)?;
    Ok(basis
        .iter()
        .map(|g| {
            let inner = blocks[0][0].nrows();
            let mut w = ComplexMatrix::zeros(inner, inner);
            for j in 0..d {
                for k in 0..d {
                    let coeff = g[(j, k)].conj();
                    if coeff != C64::new(0.0, 0.0) {
                        w += &blocks[j][k] * coeff;
                    }
                }
            }
            w
        })
        .collect())
}

/// `Σ_m G_m ⊗ W_m`.
pub fn basis_compose(basis: &[ComplexMatrix], coefficients: &[ComplexMatrix]) -> ComplexMatrix {
    basis
        .iter()
        .zip(coefficients)
        .map(|(g, w)| kron(g, w))
        .reduce(|acc, x| acc + x)
        .expect("nonempty basis")
}

/// Which tensor factor a partial trace removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

/// Partial trace of `Γ` on `C^{d1} ⊗ C^{d2}` over the given factor.
pub fn partial_trace(gamma: &ComplexMatrix, which: Factor, d1: usize, d2: usize) -> Result<ComplexMatrix> {
    let n = ensure_square(gamma)?;
    if n != d1 * d2 {
        return Err(Error::DimensionMismatch(format!(
            "matrix side {n} != {d1} * {d2}"
        )));
    }
    Ok(match which {
        Factor::Second => ComplexMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|k| gamma[(i * d2 + k, j * d2 + k)]).sum()
        }),
        Factor::First => ComplexMatrix::from_fn(d2, d2, |r, c| {
            (0..d1).map(|j| gamma[(j * d2 + r, j * d2 + c)]).sum()
        }),
    })
}

/// Outcome of a positive-semidefiniteness test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdCheck {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

/// PSD test with tolerance relative to the largest |eigenvalue|.
pub fn is_psd(a: &HermitianMatrix, tol: f64) -> PsdCheck {
    psd_from_eigenvalues(&a.eigenvalues(), tol)
}

pub(crate) fn psd_from_eigenvalues(values: &[f64], tol: f64) -> PsdCheck {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = values.iter().map(|x| x.abs()).fold(0.0, f64::max);
    PsdCheck {
        psd: min >= -tol * scale,
        min_eigenvalue: min,
    }
}

/// Pauli matrices `σ_0 = I, σ_1 = X, σ_2 = Y, σ_3 = Z`.
pub fn pauli(k: usize) -> ComplexMatrix {
    let z = c64(0.0, 0.0);
    let one = c64(1.0, 0.0);
    let i = c64(0.0, 1.0);
    match k {
        0 => ComplexMatrix::from_row_slice(2, 2, &[one, z, z, one]),
        1 => ComplexMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        2 => ComplexMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        3 => ComplexMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        _ => panic!("Pauli index {k} out of range"),
    }
}

/// The orthonormal qubit operator basis `G_k = 2^{-1/2} σ_k`.
pub fn pauli_basis() -> Vec<ComplexMatrix> {
    (0..4).map(|k| pauli(k).scale(std::f64::consts::FRAC_1_SQRT_2)).collect()
}

/// Largest entry of `|U†U - I|`.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

/// `exp(iH)` for Hermitian `H`, via its eigendecomposition.
pub fn exp_i_hermitian(h: &ComplexMatrix) -> ComplexMatrix {
    let (values, vectors) = eigh(h);
    let phased = ComplexMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, c| {
        vectors[(r, c)] * C64::from_polar(1.0, values[c])
    });
    phased * vectors.adjoint()
}

/// `f(H)` for Hermitian `H`, applying `f` to each eigenvalue.
pub fn hermitian_function(h: &ComplexMatrix, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let (values, vectors) = eigh(h);
    let scaled = ComplexMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, c| {
        vectors[(r, c)] * f(values[c])
    });
    scaled * vectors.adjoint()
}

/// A square matrix equal to its adjoint (after repairing a small defect).
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
    defect: f64,
}

impl HermitianMatrix {
    /// Symmetrizes `m` to `(m + m†)/2` when its relative Hermiticity defect is at
    /// most [`SYMMETRIZE_LIMIT`]; larger defects are rejected.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        ensure_square(&m)?;
        ensure_finite(&m)?;
        let defect = hermitian_defect(&m);
        if defect > SYMMETRIZE_LIMIT * max_abs(&m).max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self {
            inner: symmetrize(&m),
            defect,
        })
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    /// Hermiticity defect of the input before symmetrization.
    pub fn symmetrization_defect(&self) -> f64 {
        self.defect
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.inner)
    }

    pub fn eigen(&self) -> (Vec<f64>, ComplexMatrix) {
        eigh(&self.inner)
    }

    pub fn trace(&self) -> f64 {
        trace(&self.inner).re
    }
}

/// A unit-trace positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    inner: HermitianMatrix,
}

impl DensityMatrix {
    pub const EIGENVALUE_FLOOR: f64 = -1e-10;
    pub const TRACE_TOL: f64 = 1e-12;

    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let h = HermitianMatrix::new(m)?;
        let tr = h.trace();
        if (tr - 1.0).abs() > Self::TRACE_TOL {
            return Err(Error::NotNormalized(tr));
        }
        let min = h.eigenvalues().first().copied().unwrap_or(0.0);
        if min < Self::EIGENVALUE_FLOOR {
            return Err(Error::NotPsd(min));
        }
        Ok(Self { inner: h })
    }

    pub fn from_pure(state: &PureState) -> Self {
        Self {
            inner: HermitianMatrix::new(state.density()).expect("projector is Hermitian"),
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        self.inner.as_matrix()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner.into_matrix()
    }
}

/// A unit vector of amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: ComplexVector,
}

impl PureState {
    pub const NORM_TOL: f64 = 1e-12;

    pub fn new(amplitudes: ComplexVector) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidParameter("empty state vector".into()));
        }
        if !amplitudes.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: ComplexVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidParameter("cannot normalize a zero or non-finite vector".into()));
        }
        Self::new(amplitudes.unscale(norm))
    }

    /// Computational basis state `|j⟩` in dimension `d`.
    pub fn basis(j: usize, d: usize) -> Result<Self> {
        if j >= d {
            return Err(Error::IndexOutOfRange { row: j, col: 0, dim: d });
        }
        let mut v = ComplexVector::zeros(d);
        v[j] = c64(1.0, 0.0);
        Self::new(v)
    }

    /// `d^{-1/2} Σ_j |j⟩|j⟩` on `C^d ⊗ C^d`.
    pub fn maximally_entangled(d: usize) -> Self {
        Self::maximally_entangled_in(d, d, d)
    }

    /// `m^{-1/2} Σ_{j<m} |j⟩|j⟩` embedded in `C^{d1} ⊗ C^{d2}`, `m ≤ min(d1, d2)`.
    pub fn maximally_entangled_in(m: usize, d1: usize, d2: usize) -> Self {
        assert!(m >= 1 && m <= d1.min(d2), "entangled rank out of range");
        let mut v = ComplexVector::zeros(d1 * d2);
        let amp = 1.0 / (m as f64).sqrt();
        for j in 0..m {
            v[j * d2 + j] = c64(amp, 0.0);
        }
        Self { amplitudes: v }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    /// `ψψ†`.
    pub fn density(&self) -> ComplexMatrix {
        &self.amplitudes * self.amplitudes.adjoint()
    }

    pub fn kron(&self, other: &PureState) -> PureState {
        PureState {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{ginibre, seeded_rng};

    fn diag(values: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(
            values.len(),
            values.iter().map(|&x| c64(x, 0.0)),
        ))
    }

    #[test]
    fn matrix_units_are_orthonormal() {
        let e00 = matrix_unit(0, 0, 2).unwrap();
        assert_eq!(e00, diag(&[1.0, 0.0]));
        let e01 = matrix_unit(0, 1, 2).unwrap();
        assert_eq!(e01[(0, 1)], c64(1.0, 0.0));
        assert_eq!(max_abs(&e01), 1.0);
        let e10 = matrix_unit(1, 0, 2).unwrap();
        assert_eq!(hs_inner(&e01, &e01), c64(1.0, 0.0));
        assert_eq!(hs_inner(&e01, &e10), c64(0.0, 0.0));
        assert!(orthonormality_defect(&matrix_units(3)) < 1e-15);
        assert!(matches!(matrix_unit(2, 0, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn schatten_norm_basic_values() {
        assert!((schatten_norm(&diag(&[3.0, -4.0]), 1.0).unwrap() - 7.0).abs() < 1e-14);
        for d in 1..5 {
            for &p in &[1.0, 1.5, 2.0, 3.0, 7.5] {
                let expected = (d as f64).powf(1.0 / p);
                assert!((schatten_norm(&identity(d), p).unwrap() - expected).abs() < 1e-13);
            }
            assert!((schatten_norm(&identity(d), f64::INFINITY).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!(matches!(schatten_norm(&identity(2), 0.5), Err(Error::InvalidExponent(_))));
        assert!(matches!(schatten_norm(&identity(2), f64::NAN), Err(Error::InvalidExponent(_))));
    }

    #[test]
    fn schatten_two_norm_is_frobenius() {
        let mut rng = seeded_rng(7, 0);
        for _ in 0..20 {
            let a = ginibre(&mut rng, 3, 3);
            let frob: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((schatten_norm(&a, 2.0).unwrap() - frob).abs() < 1e-12);
        }
    }

    #[test]
    fn abs_matrix_of_diagonal_and_hermitian() {
        let a = abs_matrix(&diag(&[3.0, -4.0])).unwrap();
        assert!(max_abs_diff(a.as_matrix(), &diag(&[3.0, 4.0])) < 1e-13);

        let mut rng = seeded_rng(8, 0);
        let g = ginibre(&mut rng, 4, 4);
        let h = symmetrize(&g);
        let mut expected: Vec<f64> = eigvalsh(&h).iter().map(|x| x.abs()).collect();
        expected.sort_by(f64::total_cmp);
        let got = abs_matrix(&h).unwrap().eigenvalues();
        for (x, y) in got.iter().zip(&expected) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(abs_matrix(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn abs_matrix_preserves_frobenius_and_trace_norm() {
        let mut rng = seeded_rng(9, 0);
        for _ in 0..10 {
            let a = ginibre(&mut rng, 3, 3);
            let abs = abs_matrix(&a).unwrap();
            assert!((abs.as_matrix().norm() - a.norm()).abs() < 1e-12);
            assert!((abs.trace() - schatten_norm(&a, 1.0).unwrap()).abs() < 1e-12);
            assert!(is_psd(&abs, PSD_TOL).psd);
        }
    }

    #[test]
    fn kron_layout_and_singular_values() {
        assert_eq!(kron(&identity(2), &identity(2)), identity(4));
        let k = kron(&matrix_unit(0, 1, 2).unwrap(), &matrix_unit(1, 0, 2).unwrap());
        let mut expected = ComplexMatrix::zeros(4, 4);
        expected[(1, 2)] = c64(1.0, 0.0);
        assert_eq!(k, expected);

        let mut rng = seeded_rng(10, 0);
        let a = ginibre(&mut rng, 2, 3);
        let b = ginibre(&mut rng, 3, 2);
        let mut products: Vec<f64> = singular_values(&a)
            .iter()
            .flat_map(|x| singular_values(&b).into_iter().map(move |y| x * y))
            .collect();
        products.sort_by(|x, y| y.total_cmp(x));
        let got = singular_values(&kron(&a, &b));
        for (x, y) in got.iter().zip(&products) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn block_decompose_examples() {
        let x = ginibre(&mut seeded_rng(11, 0), 3, 3);
        let gamma = kron(&matrix_unit(0, 0, 2).unwrap(), &x);
        let blocks = block_decompose(&gamma, 2).unwrap();
        assert_eq!(blocks[0][0], x);
        assert_eq!(max_abs(&blocks[0][1]) + max_abs(&blocks[1][0]) + max_abs(&blocks[1][1]), 0.0);

        // Σ E_jk ⊗ E_jk has blocks E_jk.
        let units = matrix_units(2);
        let m: ComplexMatrix = units.iter().map(|e| kron(e, e)).sum();
        let blocks = block_decompose(&m, 2).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(blocks[j][k], matrix_unit(j, k, 2).unwrap());
            }
        }
        assert!(matches!(block_decompose(&identity(5), 2), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn block_decompose_reconstructs_psd_input() {
        let mut rng = seeded_rng(12, 0);
        let g = ginibre(&mut rng, 6, 6);
        let gamma = &g * g.adjoint();
        let blocks = block_decompose(&gamma, 3).unwrap();
        // Direct resummation Σ E_jk ⊗ M_jk.
        let mut sum = ComplexMatrix::zeros(6, 6);
        for j in 0..3 {
            for k in 0..3 {
                sum += kron(&matrix_unit(j, k, 3).unwrap(), &blocks[j][k]);
            }
            let diag_block = HermitianMatrix::new(blocks[j][j].clone()).unwrap();
            assert!(is_psd(&diag_block, PSD_TOL).psd);
        }
        assert!(max_abs_diff(&sum, &gamma) <= 1e-13 * max_abs(&gamma).max(1.0));
        assert_eq!(block_compose(&blocks), gamma);
    }

    #[test]
    fn basis_decompose_standard_basis_matches_blocks() {
        let gamma = ginibre(&mut seeded_rng(13, 0), 6, 6);
        let coeffs = basis_decompose(&gamma, &matrix_units(2)).unwrap();
        let blocks = block_decompose(&gamma, 2).unwrap();
        for (m, w) in coeffs.iter().enumerate() {
            assert!(max_abs_diff(w, &blocks[m / 2][m % 2]) < 1e-15);
        }
    }

    #[test]
    fn basis_decompose_bell_state_in_pauli_basis() {
        let g = pauli_basis();
        let signs = [1.0, 1.0, -1.0, 1.0];
        let gamma: ComplexMatrix = (0..4).map(|m| kron(&g[m], &g[m]).scale(signs[m])).sum();
        let w = basis_decompose(&gamma, &g).unwrap();
        for m in 0..4 {
            assert!(max_abs_diff(&w[m], &g[m].scale(signs[m])) < 1e-15);
        }
    }

    #[test]
    fn basis_decompose_reconstructs_and_keeps_hermiticity() {
        let mut rng = seeded_rng(14, 0);
        let g = ginibre(&mut rng, 4, 4);
        let gamma = symmetrize(&g);
        let basis = pauli_basis();
        let w = basis_decompose(&gamma, &basis).unwrap();
        assert!(max_abs_diff(&basis_compose(&basis, &w), &gamma) < 1e-12);
        for wm in &w {
            assert!(hermitian_defect(wm) < 1e-14);
        }
        let general = ginibre(&mut rng, 6, 6);
        let w = basis_decompose(&general, &matrix_units(2)).unwrap();
        assert!(max_abs_diff(&basis_compose(&matrix_units(2), &w), &general) < 1e-12);
    }

    #[test]
    fn basis_decompose_rejects_non_orthonormal_basis() {
        let mut basis = pauli_basis();
        basis[1] = basis[1].scale(1.1);
        assert!(matches!(
            basis_decompose(&identity(4), &basis),
            Err(Error::NonOrthonormalBasis(_))
        ));
    }

    #[test]
    fn partial_trace_examples() {
        let mut rng = seeded_rng(15, 0);
        let a = ginibre(&mut rng, 2, 2);
        let b = ginibre(&mut rng, 3, 3);
        let ab = kron(&a, &b);
        let tr2 = partial_trace(&ab, Factor::Second, 2, 3).unwrap();
        assert!(max_abs_diff(&tr2, &(&a * trace(&b))) < 1e-13);
        let tr1 = partial_trace(&ab, Factor::First, 2, 3).unwrap();
        assert!(max_abs_diff(&tr1, &(&b * trace(&a))) < 1e-13);

        let bell = PureState::maximally_entangled(2).density();
        let reduced = partial_trace(&bell, Factor::Second, 2, 2).unwrap();
        assert!(max_abs_diff(&reduced, &identity(2).scale(0.5)) < 1e-15);

        assert!(partial_trace(&ab, Factor::Second, 3, 3).is_err());
    }

    #[test]
    fn partial_trace_preserves_trace_index_contraction() {
        let mut rng = seeded_rng(16, 0);
        let gamma = ginibre(&mut rng, 6, 6);
        // Index contraction oracle: Tr₂ Γ[i,j] = Σ_k Γ[(i,k),(j,k)] via 4-index view.
        let t = |i: usize, k: usize, j: usize, l: usize| gamma[(i * 3 + k, j * 3 + l)];
        let reduced = partial_trace(&gamma, Factor::Second, 2, 3).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let direct: C64 = (0..3).map(|k| t(i, k, j, k)).sum();
                assert!((reduced[(i, j)] - direct).norm() < 1e-13);
            }
        }
        assert!((trace(&reduced) - trace(&gamma)).norm() < 1e-13);
        let other = partial_trace(&gamma, Factor::First, 2, 3).unwrap();
        assert!((trace(&other) - trace(&gamma)).norm() < 1e-13);
    }

    #[test]
    fn psd_predicate() {
        let check = is_psd(&HermitianMatrix::new(identity(3)).unwrap(), PSD_TOL);
        assert!(check.psd);
        assert!((check.min_eigenvalue - 1.0).abs() < 1e-15);
        let check = is_psd(&HermitianMatrix::new(diag(&[1.0, -0.5])).unwrap(), PSD_TOL);
        assert!(!check.psd);
        assert!((check.min_eigenvalue + 0.5).abs() < 1e-15);
    }

    #[test]
    fn hermitian_constructor_symmetrizes_small_defects_only() {
        let mut m = identity(2);
        m[(0, 1)] = c64(1e-11, 0.0);
        let h = HermitianMatrix::new(m.clone()).unwrap();
        assert!(h.symmetrization_defect() > 0.0);
        assert_eq!(hermitian_defect(h.as_matrix()), 0.0);
        m[(0, 1)] = c64(1e-6, 0.0);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn density_and_pure_state_invariants() {
        assert!(DensityMatrix::new(identity(2).scale(0.5)).is_ok());
        assert!(matches!(DensityMatrix::new(identity(2)), Err(Error::NotNormalized(_))));
        assert!(matches!(
            DensityMatrix::new(diag(&[1.5, -0.5])),
            Err(Error::NotPsd(_))
        ));
        let psi = PureState::normalized(ComplexVector::from_vec(vec![c64(1.0, 1.0), c64(0.0, 2.0)])).unwrap();
        assert!((psi.amplitudes().norm() - 1.0).abs() < 1e-15);
        let rho = DensityMatrix::from_pure(&psi);
        assert!((trace(rho.as_matrix()).re - 1.0).abs() < 1e-15);
        assert!(PureState::new(ComplexVector::from_vec(vec![c64(1.0, 0.0), c64(1.0, 0.0)])).is_err());
        assert!(PureState::normalized(ComplexVector::zeros(3)).is_err());
    }

    #[test]
    fn jordan_decomposition_trace_identity() {
        let mut rng = seeded_rng(17, 0);
        for _ in 0..10 {
            let a = symmetrize(&ginibre(&mut rng, 4, 4));
            let plus = hermitian_function(&a, |x| x.max(0.0));
            let minus = hermitian_function(&a, |x| (-x).max(0.0));
            assert!(max_abs_diff(&(&plus - &minus), &a) < 1e-12);
            let lhs = schatten_norm(&a, 1.0).unwrap();
            let rhs = trace(&plus).re + trace(&minus).re;
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn exp_i_hermitian_is_unitary() {
        let h = symmetrize(&ginibre(&mut seeded_rng(18, 0), 3, 3));
        assert!(unitarity_defect(&exp_i_hermitian(&h)) < 1e-13);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
            proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n)
                .prop_map(move |v| ComplexMatrix::from_iterator(n, n, v.into_iter().map(|(r, i)| c64(r, i))))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn schatten_norm_nonincreasing_in_p(a in matrix(3)) {
                let ps = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];
                let norms: Vec<f64> = ps.iter().map(|&p| schatten_norm(&a, p).unwrap()).collect();
                for w in norms.windows(2) {
                    prop_assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-14);
                }
            }

            #[test]
            fn schatten_norm_triangle_and_homogeneity(a in matrix(3), b in matrix(3), s in -3.0f64..3.0) {
                for &p in &[1.0, 2.0, f64::INFINITY] {
                    let na = schatten_norm(&a, p).unwrap();
                    let nb = schatten_norm(&b, p).unwrap();
                    let nab = schatten_norm(&(&a + &b), p).unwrap();
                    prop_assert!(nab <= na + nb + 1e-12);
                    let scaled = schatten_norm(&a.scale(s), p).unwrap();
                    prop_assert!((scaled - s.abs() * na).abs() <= 1e-12 * (1.0 + na));
                }
            }

            #[test]
            fn decompositions_round_trip(g in matrix(6)) {
                let blocks = block_decompose(&g, 2).unwrap();
                prop_assert!(max_abs_diff(&block_compose(&blocks), &g) <= 1e-12);
                let units = matrix_units(3);
                let w = basis_decompose(&g, &units).unwrap();
                prop_assert!(max_abs_diff(&basis_compose(&units, &w), &g) <= 1e-12);
            }
        }
    }
}
