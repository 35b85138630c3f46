//! Deterministic random matrices and states.
//!
//! Every generator draws from a ChaCha stream selected by `(seed, stream)`, so
//! parallel restarts reproduce exactly regardless of scheduling.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c64, C64, ComplexMatrix, ComplexVector, PureState};

pub type DetRng = ChaCha20Rng;

pub fn seeded_rng(seed: u64, stream: u64) -> DetRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex normal: real and imaginary parts i.i.d. N(0, 1/2).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Ginibre matrix with i.i.d. standard complex normal entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    // Row-major fill keeps the stream order independent of nalgebra's storage.
    let mut m = ComplexMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = complex_normal(rng);
        }
    }
    m
}

/// Haar-uniform pure state.
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> PureState {
    loop {
        let v = ComplexVector::from_fn(d, |_, _| complex_normal(rng));
        if let Ok(state) = PureState::normalized(v) {
            return state;
        }
    }
}

/// Haar-uniform unitary via QR of a Ginibre matrix with the phase fix on R's diagonal.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let qr = ginibre(rng, d, d).qr();
    let q = qr.q();
    let r = qr.r();
    let phases = ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            let z = r[(i, i)];
            if z.norm() > 0.0 {
                z / z.norm()
            } else {
                c64(1.0, 0.0)
            }
        } else {
            c64(0.0, 0.0)
        }
    });
    q * phases
}

/// Random Hermitian matrix from a real diagonal and a complex upper triangle.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        let x: f64 = rng.sample(StandardNormal);
        h[(j, j)] = c64(x, 0.0);
        for k in j + 1..d {
            let z = complex_normal(rng);
            h[(j, k)] = z;
            h[(k, j)] = z.conj();
        }
    }
    h
}
