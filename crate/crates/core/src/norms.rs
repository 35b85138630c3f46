//! Maximal output p-norms, induced `q → p` norms and multiplicativity ratios.
//!
//! `ν_p` is estimated by multi-start Riemannian gradient ascent over unit
//! amplitude vectors. The induced norms use a generalized power method on the
//! unit `q`-ball: each step maximizes the linearization of the convex objective,
//! so values never decrease. Both report the best restart; agreement between
//! the top two restarts is the convergence certificate.

use rayon::prelude::*;

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::linalg::{
    basis_decompose, c64, eigh, is_psd, lp_norm, pauli_basis, schatten_norm, svd, unvec_row,
    validate_exponent, ComplexMatrix, ComplexVector, HermitianMatrix, PureState, PSD_TOL,
};
use crate::random::{ginibre, haar_state, random_hermitian, seeded_rng};

/// Two restarts agree when their values differ by at most this (relative to max(1, value)).
pub const AGREEMENT_TOL: f64 = 1e-8;

const ARMIJO: f64 = 1e-4;
const MAX_STEP: f64 = 1e8;
const FD_STEP: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop a restart once a step improves the value by less than `step_tol · value`.
    pub step_tol: f64,
    /// Slack used when comparing optimized values with known bounds.
    pub value_tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 2000,
            step_tol: 1e-12,
            value_tol: 1e-10,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormResult<A> {
    pub value: f64,
    pub argmax: A,
    /// Restarts whose value is within [`AGREEMENT_TOL`] of the best.
    pub restarts_agreeing: usize,
    pub restarts_run: usize,
    /// The two best restarts agree within [`AGREEMENT_TOL`].
    pub converged: bool,
}

fn agree(best: f64, other: f64) -> bool {
    best - other <= AGREEMENT_TOL * best.abs().max(1.0)
}

/// Picks the best candidate (lowest index on ties) and the agreement statistics.
fn summarize<A>(candidates: Vec<(f64, A)>) -> NormResult<A> {
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| candidates[b].0.total_cmp(&candidates[a].0).then(a.cmp(&b)));
    let best = candidates[order[0]].0;
    let restarts_agreeing = candidates.iter().filter(|(v, _)| agree(best, *v)).count();
    let converged = order.len() >= 2 && agree(best, candidates[order[1]].0);
    let restarts_run = candidates.len();
    let (value, argmax) = candidates.into_iter().nth(order[0]).expect("nonempty");
    NormResult {
        value,
        argmax,
        restarts_agreeing,
        restarts_run,
        converged,
    }
}

/// `‖ρ‖_p` of a Hermitian matrix together with the dual matrix `W`, so that
/// `d‖ρ‖_p = Tr(W dρ)`.
fn hermitian_norm_and_dual(rho: &ComplexMatrix, p: f64) -> (f64, ComplexMatrix) {
    let n = rho.nrows();
    if p == 2.0 {
        let value = rho.norm();
        let dual = if value > 0.0 { rho.unscale(value) } else { ComplexMatrix::zeros(n, n) };
        return (value, dual);
    }
    let (values, vectors) = eigh(rho);
    let mags: Vec<f64> = values.iter().map(|x| x.abs()).collect();
    let value = lp_norm(&mags, p);
    if value == 0.0 {
        return (0.0, ComplexMatrix::zeros(n, n));
    }
    let weights = dual_weights(&mags, p, value);
    let scaled = ComplexMatrix::from_fn(n, n, |r, c| vectors[(r, c)] * (weights[c] * values[c].signum()));
    (value, scaled * vectors.adjoint())
}

/// Weights `w_i` of the dual element for magnitudes `x` with `ℓ_p` norm `norm`.
fn dual_weights(x: &[f64], p: f64, norm: f64) -> Vec<f64> {
    let top = x.iter().copied().fold(0.0, f64::max);
    if p.is_infinite() {
        let near: Vec<bool> = x.iter().map(|&v| v >= top * (1.0 - 1e-12)).collect();
        let m = near.iter().filter(|&&b| b).count() as f64;
        near.iter().map(|&b| if b { 1.0 / m } else { 0.0 }).collect()
    } else if p == 1.0 {
        x.iter().map(|&v| if v > 0.0 { 1.0 } else { 0.0 }).collect()
    } else {
        x.iter().map(|&v| (v / norm).powf(p - 1.0)).collect()
    }
}

struct PureObjective<'a> {
    channel: &'a Channel,
    p: f64,
}

impl PureObjective<'_> {
    fn value(&self, psi: &ComplexVector) -> f64 {
        let rho = self.channel.output_of_vector(psi);
        if self.p == 2.0 {
            return rho.norm();
        }
        let values = crate::linalg::eigvalsh(&rho);
        lp_norm(&values.iter().map(|x| x.abs()).collect::<Vec<_>>(), self.p)
    }

    /// Value and Euclidean gradient `2 Φ̂(W) ψ`.
    fn value_and_gradient(&self, psi: &ComplexVector) -> (f64, ComplexVector) {
        let rho = self.channel.output_of_vector(psi);
        let (value, w) = hermitian_norm_and_dual(&rho, self.p);
        let mut grad = ComplexVector::zeros(psi.len());
        for k in self.channel.kraus() {
            grad += k.adjoint() * (&w * (k * psi));
        }
        (value, grad * c64(2.0, 0.0))
    }

    fn fd_gradient(&self, psi: &ComplexVector) -> ComplexVector {
        let mut grad = ComplexVector::zeros(psi.len());
        for i in 0..psi.len() {
            for (part, dir) in [(0, c64(1.0, 0.0)), (1, c64(0.0, 1.0))] {
                let mut plus = psi.clone();
                let mut minus = psi.clone();
                plus[i] += dir * FD_STEP;
                minus[i] -= dir * FD_STEP;
                let slope = (self.value(&plus.normalize()) - self.value(&minus.normalize())) / (2.0 * FD_STEP);
                if part == 0 {
                    grad[i].re = slope;
                } else {
                    grad[i].im = slope;
                }
            }
        }
        grad
    }
}

fn tangent(psi: &ComplexVector, g: &ComplexVector) -> ComplexVector {
    g - psi * c64(psi.dotc(g).re, 0.0)
}

/// Backtracking search along `direction` from `psi`; returns the accepted point.
fn line_search(
    objective: &PureObjective,
    psi: &ComplexVector,
    value: f64,
    direction: &ComplexVector,
    eta: &mut f64,
) -> Option<(f64, ComplexVector)> {
    let slope = direction.norm_squared();
    if !(slope > 0.0) {
        return None;
    }
    for _ in 0..60 {
        let candidate = (psi + direction * c64(*eta, 0.0)).normalize();
        let v = objective.value(&candidate);
        if v >= value + ARMIJO * *eta * slope && v > value {
            return Some((v, candidate));
        }
        *eta *= 0.5;
        if *eta < 1e-16 {
            break;
        }
    }
    None
}

fn ascend(objective: &PureObjective, start: ComplexVector, cfg: &OptimizerConfig) -> (f64, ComplexVector) {
    let mut psi = start.normalize();
    let (mut value, mut grad) = objective.value_and_gradient(&psi);
    let mut eta = 1.0;
    for _ in 0..cfg.max_iters {
        let dir = tangent(&psi, &grad);
        let step = match line_search(objective, &psi, value, &dir, &mut eta) {
            Some(found) => Some(found),
            None => {
                // Analytic gradient unreliable (degenerate spectrum): retry with differences.
                let mut fd_eta = 1.0;
                let fd_dir = tangent(&psi, &objective.fd_gradient(&psi));
                line_search(objective, &psi, value, &fd_dir, &mut fd_eta).inspect(|_| eta = fd_eta)
            }
        };
        let Some((new_value, new_psi)) = step else { break };
        let improvement = new_value - value;
        psi = new_psi;
        (value, grad) = objective.value_and_gradient(&psi);
        eta = (eta * 2.0).min(MAX_STEP);
        if improvement <= cfg.step_tol * value {
            break;
        }
    }
    (objective.value(&psi), psi)
}

/// `ν_p(Φ) = max_ψ ‖Φ(ψψ†)‖_p`, estimated from below.
pub fn nu_p(phi: &Channel, p: f64, cfg: &OptimizerConfig) -> Result<NormResult<PureState>> {
    nu_p_with_starts(phi, p, cfg, &[])
}

/// [`nu_p`] with additional deterministic starting states tried before the
/// random restarts.
pub fn nu_p_with_starts(
    phi: &Channel,
    p: f64,
    cfg: &OptimizerConfig,
    starts: &[PureState],
) -> Result<NormResult<PureState>> {
    validate_exponent(p)?;
    if let Some(bad) = starts.iter().find(|s| s.dim() != phi.dim_in()) {
        return Err(Error::DimensionMismatch(format!(
            "start of dimension {}, channel input dimension {}",
            bad.dim(),
            phi.dim_in()
        )));
    }
    let objective = PureObjective { channel: phi, p };
    let run = |streams: std::ops::Range<usize>| -> Vec<(f64, ComplexVector)> {
        streams
            .into_par_iter()
            .map(|r| {
                let start = haar_state(&mut seeded_rng(cfg.seed, r as u64), phi.dim_in());
                ascend(&objective, start.amplitudes().clone(), cfg)
            })
            .collect()
    };
    let mut candidates: Vec<(f64, ComplexVector)> = starts
        .par_iter()
        .map(|s| ascend(&objective, s.amplitudes().clone(), cfg))
        .collect();
    let restarts = cfg.restarts.max(1);
    candidates.extend(run(0..restarts));
    let mut result = summarize(candidates.clone());
    if p < 2.0 && !result.converged {
        candidates.extend(run(restarts..2 * restarts));
        result = summarize(candidates);
    }
    Ok(NormResult {
        value: result.value,
        argmax: PureState::normalized(result.argmax)?,
        restarts_agreeing: result.restarts_agreeing,
        restarts_run: result.restarts_run,
        converged: result.converged,
    })
}

/// Domain of the supremum in `‖Φ‖_{q→p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    SelfAdjoint,
    Unrestricted,
}

/// Maximizer of `Re Tr(G† B)` over `‖B‖_q ≤ 1` given singular values `g` of `G`.
fn ball_weights(g: &[f64], q: f64) -> Vec<f64> {
    let mut w = vec![0.0; g.len()];
    if g.is_empty() {
        return w;
    }
    if q == 1.0 {
        let top = (0..g.len()).max_by(|&a, &b| g[a].total_cmp(&g[b]).then(b.cmp(&a))).expect("nonempty");
        w[top] = 1.0;
        return w;
    }
    if q.is_infinite() {
        return vec![1.0; g.len()];
    }
    let dual = q / (q - 1.0);
    let norm = lp_norm(g, dual);
    if norm == 0.0 {
        return w;
    }
    g.iter().map(|&x| (x / norm).powf(dual - 1.0)).collect()
}

struct InducedObjective<'a> {
    channel: &'a Channel,
    q: f64,
    p: f64,
    domain: Domain,
}

impl InducedObjective<'_> {
    fn output_norm_and_dual(&self, a: &ComplexMatrix) -> (f64, ComplexMatrix) {
        let y = self.channel.apply_unchecked(a);
        if self.domain == Domain::SelfAdjoint {
            return hermitian_norm_and_dual(&y, self.p);
        }
        if self.p == 2.0 {
            let value = y.norm();
            return (value, if value > 0.0 { y.unscale(value) } else { y });
        }
        let (u, s, v) = svd(&y);
        let value = lp_norm(&s, self.p);
        if value == 0.0 {
            return (0.0, ComplexMatrix::zeros(y.nrows(), y.ncols()));
        }
        let w = dual_weights(&s, self.p, value);
        let scaled = ComplexMatrix::from_fn(u.nrows(), u.ncols(), |r, c| u[(r, c)] * w[c]);
        (value, scaled * v.adjoint())
    }

    fn ratio(&self, a: &ComplexMatrix) -> f64 {
        let num = schatten_norm(&self.channel.apply_unchecked(a), self.p).unwrap_or(0.0);
        let den = schatten_norm(a, self.q).unwrap_or(0.0);
        if den > 0.0 {
            num / den
        } else {
            0.0
        }
    }

    /// The point of the unit `q`-ball maximizing `Re Tr(G† B)` over the domain.
    fn linear_maximizer(&self, g: &ComplexMatrix) -> ComplexMatrix {
        match self.domain {
            Domain::SelfAdjoint => {
                let h = crate::linalg::symmetrize(g);
                if self.q == 2.0 {
                    let n = h.norm();
                    return if n > 0.0 { h.unscale(n) } else { h };
                }
                let (omega, w) = eigh(&h);
                let mags: Vec<f64> = omega.iter().map(|x| x.abs()).collect();
                let weights = ball_weights(&mags, self.q);
                let scaled =
                    ComplexMatrix::from_fn(w.nrows(), w.ncols(), |r, c| w[(r, c)] * (weights[c] * omega[c].signum()));
                scaled * w.adjoint()
            }
            Domain::Unrestricted => {
                if self.q == 2.0 {
                    let n = g.norm();
                    return if n > 0.0 { g.unscale(n) } else { g.clone() };
                }
                let (u, s, v) = svd(g);
                let weights = ball_weights(&s, self.q);
                let scaled = ComplexMatrix::from_fn(u.nrows(), u.ncols(), |r, c| u[(r, c)] * weights[c]);
                scaled * v.adjoint()
            }
        }
    }

    fn run(&self, start: ComplexMatrix, cfg: &OptimizerConfig) -> (f64, ComplexMatrix) {
        let norm = schatten_norm(&start, self.q).unwrap_or(0.0);
        let mut a = if norm > 0.0 { start.unscale(norm) } else { start };
        let (mut value, mut dual) = self.output_norm_and_dual(&a);
        for _ in 0..cfg.max_iters {
            let g = self.channel.apply_adjoint_unchecked(&dual);
            let b = self.linear_maximizer(&g);
            let (new_value, new_dual) = self.output_norm_and_dual(&b);
            if !(new_value > value) {
                break;
            }
            let improvement = new_value - value;
            a = b;
            value = new_value;
            dual = new_dual;
            if improvement <= cfg.step_tol * value {
                break;
            }
        }
        (self.ratio(&a), a)
    }
}

/// `‖Φ‖_{q→p} = sup ‖Φ(A)‖_p / ‖A‖_q`, over self-adjoint or all `A`.
pub fn norm_q_to_p(
    phi: &Channel,
    q: f64,
    p: f64,
    domain: Domain,
    cfg: &OptimizerConfig,
) -> Result<NormResult<ComplexMatrix>> {
    validate_exponent(q)?;
    validate_exponent(p)?;
    let objective = InducedObjective {
        channel: phi,
        q,
        p,
        domain,
    };
    let d = phi.dim_in();
    let candidates: Vec<(f64, ComplexMatrix)> = (0..cfg.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = seeded_rng(cfg.seed, r as u64);
            let start = match domain {
                Domain::SelfAdjoint => random_hermitian(&mut rng, d),
                Domain::Unrestricted => ginibre(&mut rng, d, d),
            };
            objective.run(start, cfg)
        })
        .collect();
    Ok(summarize(candidates))
}

/// `‖Φ‖_{2→2}`: the largest singular value of the superoperator matrix.
pub fn norm_2_to_2_exact(phi: &Channel) -> f64 {
    phi.superop().singular_values()[0]
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactTwoNorm {
    pub value: f64,
    /// Self-adjoint, unit Hilbert–Schmidt norm.
    pub witness: ComplexMatrix,
    /// `‖Φ(witness)‖₂`.
    pub witness_value: f64,
}

/// [`norm_2_to_2_exact`] with a self-adjoint maximizer obtained by taking the
/// Hermitian or anti-Hermitian part of the top right singular vector.
pub fn norm_2_to_2_witness(phi: &Channel) -> ExactTwoNorm {
    let (_, _, v) = svd(phi.superop().as_matrix());
    let d = phi.dim_in();
    let top = unvec_row(&v.column(0).into_owned(), d, d);
    let herm = (&top + top.adjoint()).scale(0.5);
    let anti = (&top - top.adjoint()) * c64(0.0, -0.5);
    let pick = if herm.norm() >= anti.norm() { herm } else { anti };
    let witness = pick.unscale(pick.norm());
    let witness_value = phi.apply_unchecked(&witness).norm();
    ExactTwoNorm {
        value: norm_2_to_2_exact(phi),
        witness,
        witness_value,
    }
}

#[derive(Clone, Debug)]
pub struct MultResult {
    /// `ν_p(Φ⊗Ω) / (ν_p(Φ) ν_p(Ω))`.
    pub ratio: f64,
    pub nu_a: NormResult<PureState>,
    pub nu_b: NormResult<PureState>,
    pub nu_ab: NormResult<PureState>,
    pub converged: bool,
}

impl MultResult {
    /// Best joint input found.
    pub fn witness(&self) -> &PureState {
        &self.nu_ab.argmax
    }
}

/// Multiplicativity ratio of `ν_p` on `Φ⊗Ω`. The product of the factor
/// maximizers and the maximally entangled state are always among the starts,
/// so the ratio is at least 1 up to rounding.
pub fn mult_ratio(phi: &Channel, omega: &Channel, p: f64, cfg: &OptimizerConfig) -> Result<MultResult> {
    let nu_a = nu_p(phi, p, cfg)?;
    let nu_b = nu_p(omega, p, cfg)?;
    if nu_a.value == 0.0 || nu_b.value == 0.0 {
        return Err(Error::InvalidParameter("multiplicativity ratio of a zero map".into()));
    }
    let joint = phi.tensor(omega);
    let (d1, d2) = (phi.dim_in(), omega.dim_in());
    let starts = [
        nu_a.argmax.kron(&nu_b.argmax),
        PureState::maximally_entangled_in(d1.min(d2), d1, d2),
    ];
    let nu_ab = nu_p_with_starts(&joint, p, cfg, &starts)?;
    let ratio = nu_ab.value / (nu_a.value * nu_b.value);
    let converged = nu_a.converged && nu_b.converged && nu_ab.converged;
    Ok(MultResult {
        ratio,
        nu_a,
        nu_b,
        nu_ab,
        converged,
    })
}

#[derive(Clone, Debug)]
pub struct SingularBasis {
    /// Orthonormal operators `G_m` with `(Φ̂∘Φ)(G_m) = μ_m² G_m`.
    pub basis: Vec<ComplexMatrix>,
    /// `μ_m`, descending.
    pub singular_values: Vec<f64>,
    /// Whether every `G_m` is self-adjoint.
    pub self_adjoint: bool,
}

/// Relative gap below which eigenvalues of `Φ̂∘Φ` are treated as one eigenspace.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Orthonormal eigenbasis of `Φ̂∘Φ`. `Φ̂∘Φ` preserves Hermiticity, so each
/// eigenspace is closed under `A ↦ A†` and has a self-adjoint orthonormal basis;
/// that basis is built by real Gram–Schmidt on Hermitian and anti-Hermitian parts.
pub fn singular_basis(phi: &Channel) -> SingularBasis {
    let d = phi.dim_in();
    let s = phi.superop();
    let x = s.as_matrix().adjoint() * s.as_matrix();
    let (values, vectors) = eigh(&x);
    let n = values.len();
    let top = values[n - 1].abs().max(f64::MIN_POSITIVE);
    // Descending order, grouped into near-degenerate clusters.
    let order: Vec<usize> = (0..n).rev().collect();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c) if values[c[0]] - values[i] <= DEGENERACY_TOL * top => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    let mut basis = Vec::with_capacity(n);
    let mut singular_values = Vec::with_capacity(n);
    let mut self_adjoint = true;
    for cluster in clusters {
        let originals: Vec<ComplexMatrix> = cluster
            .iter()
            .map(|&i| unvec_row(&vectors.column(i).into_owned(), d, d))
            .collect();
        let mut chosen: Vec<ComplexMatrix> = Vec::with_capacity(cluster.len());
        for a in &originals {
            for cand in [(a + a.adjoint()).scale(0.5), (a - a.adjoint()) * c64(0.0, -0.5)] {
                if chosen.len() == cluster.len() {
                    break;
                }
                let mut h = cand;
                for g in &chosen {
                    let overlap = crate::linalg::hs_inner(g, &h).re;
                    h -= g.scale(overlap);
                }
                let norm = h.norm();
                if norm > 1e-6 {
                    chosen.push(h.unscale(norm));
                }
            }
        }
        if chosen.len() != cluster.len() {
            self_adjoint = false;
            chosen = originals;
        }
        for (&i, g) in cluster.iter().zip(chosen) {
            basis.push(g);
            singular_values.push(values[i].max(0.0).sqrt());
        }
    }
    SingularBasis {
        basis,
        singular_values,
        self_adjoint,
    }
}

#[derive(Clone, Debug)]
pub struct BellObstruction {
    /// `G₀⊗G₀ + G₁⊗G₁ − G₂⊗G₂ + G₃⊗G₃` in the basis `G_k = 2^{-1/2} σ_k`.
    pub gamma: ComplexMatrix,
    /// Coefficients `W_m` with `Γ = Σ G_m ⊗ W_m`.
    pub coefficients: Vec<ComplexMatrix>,
    /// `N = Σ_m G_m Tr|W_m|`.
    pub n: ComplexMatrix,
    pub eigenvalues: Vec<f64>,
    pub is_psd: bool,
    pub trace_norm: f64,
}

/// The two-qubit example showing that replacing each `W_m` by `Tr|W_m|` need
/// not give a positive operator.
pub fn bell_obstruction() -> BellObstruction {
    let g = pauli_basis();
    let signs = [1.0, 1.0, -1.0, 1.0];
    let gamma = g
        .iter()
        .zip(signs)
        .fold(ComplexMatrix::zeros(4, 4), |acc, (gm, s)| acc + crate::linalg::kron(gm, gm).scale(s));
    let coefficients = basis_decompose(&gamma, &g).expect("Pauli basis is orthonormal");
    let n = g.iter().zip(&coefficients).fold(ComplexMatrix::zeros(2, 2), |acc, (gm, w)| {
        acc + gm.scale(schatten_norm(w, 1.0).expect("finite"))
    });
    let h = HermitianMatrix::new(n.clone()).expect("N is Hermitian");
    let eigenvalues = h.eigenvalues();
    let check = is_psd(&h, PSD_TOL);
    let trace_norm = eigenvalues.iter().map(|x| x.abs()).sum();
    BellObstruction {
        gamma,
        coefficients,
        n,
        eigenvalues,
        is_psd: check.psd,
        trace_norm,
    }
}
