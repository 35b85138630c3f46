//! Completely positive maps in Kraus form, with Choi and superoperator views.
//!
//! A [`Channel`] is `Φ(ρ) = Σ_a K_a ρ K_a†`, so it is completely positive by
//! construction. Trace preservation is validated eagerly when flagged.
//!
//! The Choi matrix is the block matrix `Σ_jk E_jk ⊗ Φ(E_jk)`. The superoperator
//! matrix acts on row-major vectorizations, `S · vec(A) = vec(Φ(A))`, which makes
//! it `Σ_a K_a ⊗ conj(K_a)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    block_compose, c64, ensure_finite, identity, kron, matrix_unit, max_abs_diff,
    psd_from_eigenvalues, singular_values, vec_row, ComplexMatrix, ComplexVector, HermitianMatrix,
    PsdCheck, PureState, PSD_TOL,
};

/// Tolerance for `Σ K†K = I` (and `Σ K K† = I` for unitality).
pub const TP_TOL: f64 = 1e-9;
/// Kraus rank truncation, relative to the largest Choi eigenvalue.
pub const KRAUS_RANK_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
    trace_preserving: bool,
}

impl Channel {
    /// Builds a channel from Kraus operators (each `dim_out × dim_in`). When
    /// `trace_preserving` is set, `Σ K†K = I` is checked to [`TP_TOL`].
    pub fn new(kraus: Vec<ComplexMatrix>, trace_preserving: bool) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        let (dim_out, dim_in) = first.shape();
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::DimensionMismatch("Kraus operators must be nonempty".into()));
        }
        for k in &kraus {
            if k.shape() != (dim_out, dim_in) {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator of shape {:?}, expected {:?}",
                    k.shape(),
                    (dim_out, dim_in)
                )));
            }
            ensure_finite(k)?;
        }
        let channel = Self {
            dim_in,
            dim_out,
            kraus,
            trace_preserving,
        };
        if trace_preserving {
            let defect = channel.tp_defect();
            if defect > TP_TOL {
                return Err(Error::NotTracePreserving(defect));
            }
        }
        Ok(channel)
    }

    /// Like [`Channel::new`], flagging trace preservation when it holds to [`TP_TOL`].
    pub fn from_kraus(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let mut channel = Self::new(kraus, false)?;
        channel.trace_preserving = channel.tp_defect() <= TP_TOL;
        Ok(channel)
    }

    pub fn identity(d: usize) -> Self {
        Self {
            dim_in: d,
            dim_out: d,
            kraus: vec![identity(d)],
            trace_preserving: true,
        }
    }

    /// Builds the channel for an arbitrary linear map given by its action on
    /// matrices. Fails with [`Error::NotCompletelyPositive`] when the Choi matrix
    /// is not PSD.
    pub fn from_linear_map(
        dim_in: usize,
        dim_out: usize,
        map: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    ) -> Result<Self> {
        let blocks: Vec<Vec<ComplexMatrix>> = (0..dim_in)
            .map(|j| {
                (0..dim_in)
                    .map(|k| {
                        let out = map(&matrix_unit(j, k, dim_in).expect("index in range"));
                        assert_eq!(out.shape(), (dim_out, dim_out), "map output has wrong shape");
                        out
                    })
                    .collect()
            })
            .collect();
        let choi = ChoiMatrix::from_matrix(dim_in, dim_out, block_compose(&blocks)).map_err(|e| match e {
            Error::NotPsd(min) => Error::NotCompletelyPositive(min),
            other => other,
        })?;
        kraus_from_choi(&choi, KRAUS_RANK_TOL)
    }

    /// Convex (or, more generally, nonnegative) combination `Σ w_i Φ_i`.
    pub fn mixture(parts: &[(f64, &Channel)]) -> Result<Self> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let mut kraus = Vec::new();
        for &(w, ch) in parts {
            if !(w >= 0.0) {
                return Err(Error::InvalidParameter(format!("negative mixture weight {w}")));
            }
            if (ch.dim_in, ch.dim_out) != (first.dim_in, first.dim_out) {
                return Err(Error::DimensionMismatch("mixture components differ in dimension".into()));
            }
            if w > 0.0 {
                kraus.extend(ch.kraus.iter().map(|k| k.scale(w.sqrt())));
            }
        }
        if kraus.is_empty() {
            kraus.push(ComplexMatrix::zeros(first.dim_out, first.dim_in));
        }
        Self::from_kraus(kraus)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// Whether the channel was flagged (and validated) as trace preserving.
    pub fn flagged_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    /// `Σ_a K_a A K_a†`.
    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.shape() != (self.dim_in, self.dim_in) {
            return Err(Error::DimensionMismatch(format!(
                "input of shape {:?}, channel expects {}x{}",
                a.shape(),
                self.dim_in,
                self.dim_in
            )));
        }
        Ok(self.apply_unchecked(a))
    }

    pub(crate) fn apply_unchecked(&self, a: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out += k * a * k.adjoint();
        }
        out
    }

    /// The Hilbert–Schmidt adjoint `Φ̂(B) = Σ_a K_a† B K_a`.
    pub fn apply_adjoint(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if b.shape() != (self.dim_out, self.dim_out) {
            return Err(Error::DimensionMismatch(format!(
                "adjoint input of shape {:?}, channel output is {}x{}",
                b.shape(),
                self.dim_out,
                self.dim_out
            )));
        }
        Ok(self.apply_adjoint_unchecked(b))
    }

    pub(crate) fn apply_adjoint_unchecked(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            out += k.adjoint() * b * k;
        }
        out
    }

    /// Output `Φ(ψψ†)`.
    pub fn output_of(&self, state: &PureState) -> Result<ComplexMatrix> {
        if state.dim() != self.dim_in {
            return Err(Error::DimensionMismatch(format!(
                "state of dimension {}, channel input dimension {}",
                state.dim(),
                self.dim_in
            )));
        }
        Ok(self.output_of_vector(state.amplitudes()))
    }

    pub(crate) fn output_of_vector(&self, psi: &ComplexVector) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            let phi = k * psi;
            out += &phi * phi.adjoint();
        }
        out
    }

    pub fn choi(&self) -> ChoiMatrix {
        let n = self.dim_in * self.dim_out;
        let mut m = ComplexMatrix::zeros(n, n);
        for k in &self.kraus {
            // Column-major storage of K is exactly v[j*d_out + r] = K[r, j].
            let v = ComplexVector::from_column_slice(k.as_slice());
            m += &v * v.adjoint();
        }
        ChoiMatrix {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            matrix: m,
        }
    }

    pub fn superop(&self) -> SuperopMatrix {
        let mut m = ComplexMatrix::zeros(self.dim_out * self.dim_out, self.dim_in * self.dim_in);
        for k in &self.kraus {
            m += kron(k, &k.map(|z| z.conj()));
        }
        SuperopMatrix {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            matrix: m,
        }
    }

    /// `Φ̂`, again completely positive, with Kraus operators `K_a†`.
    pub fn adjoint(&self) -> Channel {
        let kraus: Vec<ComplexMatrix> = self.kraus.iter().map(|k| k.adjoint()).collect();
        let mut out = Channel {
            dim_in: self.dim_out,
            dim_out: self.dim_in,
            kraus,
            trace_preserving: false,
        };
        out.trace_preserving = out.tp_defect() <= TP_TOL;
        out
    }

    /// `Φ ⊗ Ω` with Kraus set `{K_a ⊗ L_b}`.
    pub fn tensor(&self, other: &Channel) -> Channel {
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| other.kraus.iter().map(move |b| kron(a, b)))
            .collect();
        Channel {
            dim_in: self.dim_in * other.dim_in,
            dim_out: self.dim_out * other.dim_out,
            kraus,
            trace_preserving: self.trace_preserving && other.trace_preserving,
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Channel) -> Result<Channel> {
        if next.dim_in != self.dim_out {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: output {} feeds input {}",
                self.dim_out, next.dim_in
            )));
        }
        let kraus = next
            .kraus
            .iter()
            .flat_map(|b| self.kraus.iter().map(move |a| b * a))
            .collect();
        Ok(Channel {
            dim_in: self.dim_in,
            dim_out: next.dim_out,
            kraus,
            trace_preserving: self.trace_preserving && next.trace_preserving,
        })
    }

    /// `A ↦ post Φ(pre A pre†) post†`.
    pub fn conjugated(&self, pre: &ComplexMatrix, post: &ComplexMatrix) -> Result<Channel> {
        if pre.shape() != (self.dim_in, self.dim_in) || post.shape() != (self.dim_out, self.dim_out) {
            return Err(Error::DimensionMismatch("conjugating matrices have wrong shape".into()));
        }
        Channel::from_kraus(self.kraus.iter().map(|k| post * k * pre).collect())
    }

    /// `max |Σ K†K − I|`.
    pub fn tp_defect(&self) -> f64 {
        let sum: ComplexMatrix = self.kraus.iter().map(|k| k.adjoint() * k).sum();
        max_abs_diff(&sum, &identity(self.dim_in))
    }

    /// `max |Φ(I_in) − I_out|`.
    pub fn unital_defect(&self) -> f64 {
        let sum: ComplexMatrix = self.kraus.iter().map(|k| k * k.adjoint()).sum();
        max_abs_diff(&sum, &identity(self.dim_out))
    }

    /// Complete positivity via Choi PSD (relative tolerance).
    pub fn is_cp(&self, tol: f64) -> bool {
        self.choi().psd_check(tol).psd
    }

    pub fn is_tp(&self, tol: f64) -> bool {
        self.tp_defect() <= tol
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        self.unital_defect() <= tol
    }

    pub fn to_json(&self) -> ChannelJson {
        let encode = |k: &ComplexMatrix| {
            (0..k.nrows())
                .map(|r| (0..k.ncols()).map(|c| [k[(r, c)].re, k[(r, c)].im]).collect())
                .collect()
        };
        ChannelJson {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            trace_preserving: self.trace_preserving,
            kraus: self.kraus.iter().map(encode).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("channel JSON serializes")
    }

    pub fn from_json(json: &ChannelJson) -> Result<Self> {
        let mut kraus = Vec::with_capacity(json.kraus.len());
        for (a, rows) in json.kraus.iter().enumerate() {
            if rows.len() != json.dim_out || rows.iter().any(|r| r.len() != json.dim_in) {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator {a} is not {}x{}",
                    json.dim_out, json.dim_in
                )));
            }
            kraus.push(ComplexMatrix::from_fn(json.dim_out, json.dim_in, |r, c| {
                let [re, im] = rows[r][c];
                c64(re, im)
            }));
        }
        Self::new(kraus, json.trace_preserving)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}

/// On-disk channel format: Kraus operators as rows of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelJson {
    pub dim_in: usize,
    pub dim_out: usize,
    pub trace_preserving: bool,
    pub kraus: Vec<Vec<Vec<[f64; 2]>>>,
}

/// The Choi matrix `Σ_jk E_jk ⊗ Φ(E_jk)` of side `dim_in · dim_out`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    dim_in: usize,
    dim_out: usize,
    matrix: ComplexMatrix,
}

impl ChoiMatrix {
    /// Validates Hermiticity and PSD (relative tolerance [`PSD_TOL`]).
    pub fn from_matrix(dim_in: usize, dim_out: usize, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.shape() != (dim_in * dim_out, dim_in * dim_out) {
            return Err(Error::DimensionMismatch(format!(
                "Choi matrix of shape {:?} for dimensions {dim_in} -> {dim_out}",
                matrix.shape()
            )));
        }
        let h = HermitianMatrix::new(matrix)?;
        let check = psd_from_eigenvalues(&h.eigenvalues(), PSD_TOL);
        if !check.psd {
            return Err(Error::NotPsd(check.min_eigenvalue));
        }
        Ok(Self {
            dim_in,
            dim_out,
            matrix: h.into_matrix(),
        })
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Block `(j, k)`, equal to `Φ(E_jk)`.
    pub fn block(&self, j: usize, k: usize) -> ComplexMatrix {
        let d = self.dim_out;
        self.matrix.view((j * d, k * d), (d, d)).into_owned()
    }

    pub fn psd_check(&self, tol: f64) -> PsdCheck {
        psd_from_eigenvalues(&crate::linalg::eigvalsh(&self.matrix), tol)
    }

    /// Largest entrywise difference from another Choi matrix of the same shape.
    pub fn distance(&self, other: &ChoiMatrix) -> f64 {
        max_abs_diff(&self.matrix, &other.matrix)
    }
}

/// Kraus operators `√λ · unvec(v)` from the Choi eigenpairs with
/// `λ ≥ rank_tol · λ_max`.
pub fn kraus_from_choi(choi: &ChoiMatrix, rank_tol: f64) -> Result<Channel> {
    let (values, vectors) = crate::linalg::eigh(&choi.matrix);
    let top = values.last().copied().unwrap_or(0.0);
    let check = psd_from_eigenvalues(&values, PSD_TOL);
    if !check.psd {
        return Err(Error::NotPsd(check.min_eigenvalue));
    }
    let (d_in, d_out) = (choi.dim_in, choi.dim_out);
    let mut kraus: Vec<ComplexMatrix> = values
        .iter()
        .enumerate()
        .rev()
        .filter(|&(_, &lambda)| top > 0.0 && lambda >= rank_tol * top)
        .map(|(i, &lambda)| {
            let col = vectors.column(i);
            ComplexMatrix::from_fn(d_out, d_in, |r, j| col[j * d_out + r] * lambda.sqrt())
        })
        .collect();
    if kraus.is_empty() {
        kraus.push(ComplexMatrix::zeros(d_out, d_in));
    }
    Channel::from_kraus(kraus)
}

/// Matrix of `Φ` on row-major vectorized operators, `d_out² × d_in²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperopMatrix {
    dim_in: usize,
    dim_out: usize,
    matrix: ComplexMatrix,
}

impl SuperopMatrix {
    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn apply(&self, a: &ComplexMatrix) -> ComplexMatrix {
        let v = &self.matrix * vec_row(a);
        crate::linalg::unvec_row(&v, self.dim_out, self.dim_out)
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        singular_values(&self.matrix)
    }
}
