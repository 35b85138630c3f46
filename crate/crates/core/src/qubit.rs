//! Bloch-sphere machinery for qubit maps.
//!
//! A 2×2 matrix is written `A = z₀I + (w + iu)·σ`. A qubit map acts as
//! `Φ(I) = cI + t·σ`, `Φ(σ_k) = s_k I + (T e_k)·σ`, so that
//! `Φ(I + w·σ) = (c + s·w) I + (t + Tw)·σ`. Trace preserving means `s = 0`
//! and `c = 1`; unital means `t = 0`.

use nalgebra::{Matrix3, Rotation3, UnitQuaternion, Vector3};

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::linalg::{c64, identity, pauli, schatten_norm, singular_values, trace, ComplexMatrix, C64};

/// Tolerance for reading `s = 0`, `t = 0` and `c = 1` off extracted parameters.
pub const PARAM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct BlochDecomposition {
    pub z0: C64,
    pub w: Vector3<f64>,
    pub u: Vector3<f64>,
}

fn ensure_qubit(a: &ComplexMatrix) -> Result<()> {
    if a.shape() != (2, 2) {
        return Err(Error::DimensionMismatch(format!("expected a 2x2 matrix, got {:?}", a.shape())));
    }
    Ok(())
}

pub fn bloch_decompose(a: &ComplexMatrix) -> Result<BlochDecomposition> {
    ensure_qubit(a)?;
    let z0 = trace(a) * 0.5;
    let z: Vec<C64> = (1..4).map(|k| trace(&(pauli(k) * a)) * 0.5).collect();
    Ok(BlochDecomposition {
        z0,
        w: Vector3::new(z[0].re, z[1].re, z[2].re),
        u: Vector3::new(z[0].im, z[1].im, z[2].im),
    })
}

/// `z₀I + Σ_k z_k σ_k` for complex coefficients.
fn compose_complex(z0: C64, z: [C64; 3]) -> ComplexMatrix {
    let mut out = identity(2) * z0;
    for (k, zk) in z.iter().enumerate() {
        out += pauli(k + 1) * *zk;
    }
    out
}

pub fn bloch_compose(b: &BlochDecomposition) -> ComplexMatrix {
    compose_complex(b.z0, [0, 1, 2].map(|k| c64(b.w[k], b.u[k])))
}

impl BlochDecomposition {
    /// `I + (w + iu)·σ`.
    pub fn normalized(w: Vector3<f64>, u: Vector3<f64>) -> Self {
        Self {
            z0: c64(1.0, 0.0),
            w,
            u,
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.z0.im.abs() <= tol && self.u.norm() <= tol
    }
}

/// Parameters of a qubit map, including the trace weight `c` of `Φ(I)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitMapParams {
    pub s: Vector3<f64>,
    pub t: Vector3<f64>,
    pub t_matrix: Matrix3<f64>,
    pub identity_weight: f64,
}

impl QubitMapParams {
    /// Trace-preserving canonical parameters: `s = 0`, `T = diag(λ)`.
    pub fn canonical(t: [f64; 3], lambda: [f64; 3]) -> Self {
        Self {
            s: Vector3::zeros(),
            t: Vector3::from(t),
            t_matrix: Matrix3::from_diagonal(&Vector3::from(lambda)),
            identity_weight: 1.0,
        }
    }

    pub fn is_tp(&self) -> bool {
        self.s.norm() <= PARAM_TOL && (self.identity_weight - 1.0).abs() <= PARAM_TOL
    }

    pub fn is_unital(&self) -> bool {
        self.t.norm() <= PARAM_TOL
    }

    /// The map's action on a matrix, `Φ(z₀I + z·σ)`.
    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        ensure_qubit(a)?;
        let z0 = trace(a) * 0.5;
        let z: Vec<C64> = (1..4).map(|k| trace(&(pauli(k) * a)) * 0.5).collect();
        let out0 = z0 * self.identity_weight + (0..3).map(|k| z[k] * self.s[k]).sum::<C64>();
        let out = [0, 1, 2].map(|r| z0 * self.t[r] + (0..3).map(|k| z[k] * self.t_matrix[(r, k)]).sum::<C64>());
        Ok(compose_complex(out0, out))
    }
}

/// Builds the channel with the given parameters; non-CP parameter sets are
/// rejected with [`Error::NotCompletelyPositive`].
pub fn qubit_map(params: &QubitMapParams) -> Result<Channel> {
    let values = params.s.iter().chain(params.t.iter()).chain(params.t_matrix.iter());
    if !values.chain(std::iter::once(&params.identity_weight)).all(|x| x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let channel = Channel::from_linear_map(2, 2, |m| params.apply(m).expect("2x2 input"))?;
    if params.is_tp() {
        Channel::new(channel.kraus().to_vec(), true)
    } else {
        Ok(channel)
    }
}

/// Extracts `(s, t, T, c)` from the images of `I, σ₁, σ₂, σ₃`.
pub fn qubit_map_params(phi: &Channel) -> Result<QubitMapParams> {
    if phi.dim_in() != 2 || phi.dim_out() != 2 {
        return Err(Error::DimensionMismatch("qubit parameters need a 2 -> 2 map".into()));
    }
    let image = bloch_decompose(&phi.apply(&identity(2))?)?;
    let mut s = Vector3::zeros();
    let mut t_matrix = Matrix3::zeros();
    for k in 0..3 {
        let b = bloch_decompose(&phi.apply(&pauli(k + 1))?)?;
        s[k] = b.z0.re;
        t_matrix.set_column(k, &b.w);
    }
    Ok(QubitMapParams {
        s,
        t: image.w,
        t_matrix,
        identity_weight: image.z0.re,
    })
}

/// Result of bringing `T` to diagonal form with proper rotations.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub params: QubitMapParams,
    /// `R₁`, with `T' = R₁ᵀ T R₂` and `t' = R₁ᵀ t`.
    pub r1: Matrix3<f64>,
    pub r2: Matrix3<f64>,
    /// Qubit unitaries with `U (n·σ) U† = (R n)·σ` for `R₁` and `R₂`.
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
}

impl Canonical {
    /// The canonical map equals `A ↦ U† Φ(V A V†) U`.
    pub fn conjugate(&self, phi: &Channel) -> Result<Channel> {
        phi.conjugated(&self.v, &self.u.adjoint())
    }
}

/// Singular value decomposition of `T` with rotations in SO(3); any sign
/// needed to keep `det = +1` is moved into the last singular value.
pub fn canonicalize(params: &QubitMapParams) -> Canonical {
    let svd = params.t_matrix.svd(true, true);
    let mut r1 = svd.u.expect("U requested");
    let mut r2 = svd.v_t.expect("V requested").transpose();
    let mut lambda = svd.singular_values;
    if r1.determinant() < 0.0 {
        r1.set_column(2, &(-r1.column(2)));
        lambda[2] = -lambda[2];
    }
    if r2.determinant() < 0.0 {
        r2.set_column(2, &(-r2.column(2)));
        lambda[2] = -lambda[2];
    }
    let canonical = QubitMapParams {
        s: r2.transpose() * params.s,
        t: r1.transpose() * params.t,
        t_matrix: Matrix3::from_diagonal(&lambda),
        identity_weight: params.identity_weight,
    };
    Canonical {
        params: canonical,
        u: rotation_to_unitary(&r1),
        v: rotation_to_unitary(&r2),
        r1,
        r2,
    }
}

/// The SU(2) element `U` with `U (n·σ) U† = (R n)·σ`.
pub fn rotation_to_unitary(r: &Matrix3<f64>) -> ComplexMatrix {
    let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(*r));
    let (w, x, y, z) = (q.w, q.i, q.j, q.k);
    // cos(θ/2) I − i sin(θ/2) n·σ
    identity(2) * c64(w, 0.0) - (pauli(1).scale(x) + pauli(2).scale(y) + pauli(3).scale(z)) * c64(0.0, 1.0)
}

/// Eigenvalues `(+, −)` of `A†A` for `A = I + (w + iu)·σ`.
pub fn eig_adagger_a_closed(w: &Vector3<f64>, u: &Vector3<f64>) -> (f64, f64) {
    let z2 = w.norm_squared() + u.norm_squared();
    let root = (w.norm_squared() + w.norm_squared() * u.norm_squared() - u.dot(w).powi(2)).max(0.0).sqrt();
    (1.0 + z2 + 2.0 * root, 1.0 + z2 - 2.0 * root)
}

/// Eigenvalues `(φ₊, φ₋)` of `Φ(A)†Φ(A)` for a trace-preserving map and
/// `A = I + (w + iu)·σ`. Other maps are routed to [`eig_phi_a_general`].
pub fn eig_phi_a_closed(params: &QubitMapParams, w: &Vector3<f64>, u: &Vector3<f64>) -> (f64, f64) {
    if !params.is_tp() {
        return eig_phi_a_general(params, w, u);
    }
    let a = params.t + params.t_matrix * w;
    let b = params.t_matrix * u;
    let base = 1.0 + a.norm_squared() + b.norm_squared();
    let root = (a.norm_squared() * (1.0 + b.norm_squared()) - a.dot(&b).powi(2)).max(0.0).sqrt();
    (base + 2.0 * root, base - 2.0 * root)
}

/// Eigenvalues of `Φ(A)†Φ(A)` for any qubit map. With `Φ(A) = ζI + (a + ib)·σ`,
/// `ζ = c + s·w + i s·u`, `a = t + Tw`, `b = Tu`, they are
/// `|ζ|² + |a|² + |b|² ± 2√(|Re ζ·a + Im ζ·b|² + |a×b|²)`.
pub fn eig_phi_a_general(params: &QubitMapParams, w: &Vector3<f64>, u: &Vector3<f64>) -> (f64, f64) {
    let zeta = c64(params.identity_weight + params.s.dot(w), params.s.dot(u));
    let a = params.t + params.t_matrix * w;
    let b = params.t_matrix * u;
    let base = zeta.norm_sqr() + a.norm_squared() + b.norm_squared();
    let root = ((a * zeta.re + b * zeta.im).norm_squared() + a.cross(&b).norm_squared()).sqrt();
    (base + 2.0 * root, base - 2.0 * root)
}

/// `(Tr|A|)²` for `A = I + (w + iu)·σ`.
pub fn trace_norm_sq_closed(w: &Vector3<f64>, u: &Vector3<f64>) -> f64 {
    let z2 = w.norm_squared() + u.norm_squared();
    let inner = (1.0 - w.norm_squared() + u.norm_squared()).powi(2) + 4.0 * u.dot(w).powi(2);
    2.0 * (1.0 + z2 + inner.sqrt())
}

/// `|x + a|^m + |x − a|^m`, nondecreasing in `x ≥ 0` and in `a ≥ 0` for `m ≥ 1`.
pub fn f_mono(x: f64, a: f64, m: f64) -> f64 {
    (x + a).abs().powf(m) + (x - a).abs().powf(m)
}

/// `f(x, a, m)^{2/m} / x²`, nonincreasing in `x > 0` for `m ≥ 2`.
pub fn g_mono(x: f64, a: f64, m: f64) -> f64 {
    f_mono(x, a, m).powf(2.0 / m) / (x * x)
}

/// Whether exponents below 2 are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InequalityMode {
    /// Requires `p ≥ 2`.
    Strict,
    /// Any `p ≥ 1`; outcomes are recorded, not relied on.
    Exploratory,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrongInequality {
    /// `‖Φ(A)‖_p² / ‖A‖₁²`.
    pub lhs: f64,
    /// `‖Φ(I + ŵ·σ)‖_p² / ‖I + ŵ·σ‖₁²`.
    pub rhs: f64,
    pub holds: bool,
    pub exploratory: bool,
}

pub const STRONG_INEQUALITY_TOL: f64 = 1e-10;

/// Compares the `1 → p` ratio at `A` with the ratio at `I + ŵ·σ`, where `ŵ` is
/// the unit vector along the real Bloch part of `A/z₀` (`(0,0,1)` if that is zero).
pub fn verify_strong_inequality(
    phi: &Channel,
    a: &ComplexMatrix,
    p: f64,
    mode: InequalityMode,
) -> Result<StrongInequality> {
    crate::linalg::validate_exponent(p)?;
    if mode == InequalityMode::Strict && p < 2.0 {
        return Err(Error::InvalidParameter(format!("p = {p} < 2 needs exploratory mode")));
    }
    let params = qubit_map_params(phi)?;
    if !params.is_tp() {
        return Err(Error::NotTracePreserving(params.s.norm().max((params.identity_weight - 1.0).abs())));
    }
    let b = bloch_decompose(a)?;
    if b.z0.norm() <= 1e-14 * crate::linalg::max_abs(a).max(f64::MIN_POSITIVE) {
        return Err(Error::InvalidParameter("A has z0 = 0; use the traceless companion".into()));
    }
    let lhs = ratio_sq(phi, a, p)?;
    let normalized = bloch_decompose(&a.map(|x| x / b.z0))?;
    let w_hat = if normalized.w.norm() > 0.0 {
        normalized.w.normalize()
    } else {
        Vector3::new(0.0, 0.0, 1.0)
    };
    let reference = bloch_compose(&BlochDecomposition::normalized(w_hat, Vector3::zeros()));
    let rhs = ratio_sq(phi, &reference, p)?;
    Ok(StrongInequality {
        lhs,
        rhs,
        holds: lhs <= rhs + STRONG_INEQUALITY_TOL,
        exploratory: mode == InequalityMode::Exploratory,
    })
}

fn ratio_sq(phi: &Channel, a: &ComplexMatrix, p: f64) -> Result<f64> {
    let num = schatten_norm(&phi.apply(a)?, p)?;
    let den = schatten_norm(a, 1.0)?;
    Ok((num / den).powi(2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TracelessCheck {
    /// `‖Φ(z·σ)‖_p / ‖z·σ‖₁`.
    pub ratio: f64,
    /// Largest singular value of `T`.
    pub bound: f64,
    pub holds: bool,
}

/// Companion to [`verify_strong_inequality`] for `z₀ = 0`: the ratio is at most
/// the largest singular value of `T`.
pub fn traceless_ratio(phi: &Channel, a: &ComplexMatrix, p: f64) -> Result<TracelessCheck> {
    crate::linalg::validate_exponent(p)?;
    let params = qubit_map_params(phi)?;
    if !params.is_tp() {
        return Err(Error::NotTracePreserving(params.s.norm()));
    }
    let b = bloch_decompose(a)?;
    if b.z0.norm() > 1e-12 * crate::linalg::max_abs(a) {
        return Err(Error::InvalidParameter("A is not traceless".into()));
    }
    // Only the traceless part enters; the translation t does not act on it.
    let out = (0..3).fold(ComplexMatrix::zeros(2, 2), |acc, r| {
        let coeff: C64 = (0..3).map(|k| c64(b.w[k], b.u[k]) * params.t_matrix[(r, k)]).sum();
        acc + pauli(r + 1) * coeff
    });
    let ratio = schatten_norm(&out, p)? / schatten_norm(a, 1.0)?;
    let bound = singular_values(&crate::linalg::complexify(&nalgebra::DMatrix::from_fn(3, 3, |r, c| {
        params.t_matrix[(r, c)]
    })))[0];
    Ok(TracelessCheck {
        ratio,
        bound,
        holds: ratio <= bound + STRONG_INEQUALITY_TOL,
    })
}
