//! Multiplicativity sweeps over `p` and their CSV form.

use serde::{Deserialize, Serialize};

use crate::channel::Channel;
use crate::error::Result;
use crate::linalg::{schatten_norm, validate_exponent, PureState};
use crate::norms::{mult_ratio, OptimizerConfig};

pub const CSV_HEADER: &str = "p,nu_A,nu_B,nu_AB,ratio,bell_ratio,converged";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultRow {
    pub p: f64,
    pub nu_a: f64,
    pub nu_b: f64,
    pub nu_ab: f64,
    pub ratio: f64,
    /// `‖(Φ⊗Ω)(ββ†)‖_p / (ν_p(Φ)ν_p(Ω))` for the maximally entangled `β`.
    pub bell_ratio: f64,
    pub converged: bool,
}

/// `‖(Φ⊗Ω)(ββ†)‖_p` with `β` maximally entangled on the smaller input factor.
pub fn bell_value(phi: &Channel, omega: &Channel, p: f64) -> Result<f64> {
    validate_exponent(p)?;
    let (d1, d2) = (phi.dim_in(), omega.dim_in());
    let beta = PureState::maximally_entangled_in(d1.min(d2), d1, d2);
    schatten_norm(&phi.tensor(omega).output_of(&beta)?, p)
}

pub fn mult_row(phi: &Channel, omega: &Channel, p: f64, cfg: &OptimizerConfig) -> Result<MultRow> {
    let r = mult_ratio(phi, omega, p, cfg)?;
    let product = r.nu_a.value * r.nu_b.value;
    Ok(MultRow {
        p,
        nu_a: r.nu_a.value,
        nu_b: r.nu_b.value,
        nu_ab: r.nu_ab.value,
        ratio: r.ratio,
        bell_ratio: bell_value(phi, omega, p)? / product,
        converged: r.converged,
    })
}

/// One row per exponent in `p_grid`.
pub fn sweep(phi: &Channel, omega: &Channel, p_grid: &[f64], cfg: &OptimizerConfig) -> Result<Vec<MultRow>> {
    p_grid.iter().map(|&p| mult_row(phi, omega, p, cfg)).collect()
}

/// `start, start + step, ...` up to `stop` inclusive (with rounding slack).
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    if !(step > 0.0) || stop < start {
        return vec![start];
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + step * i as f64).collect()
}

/// First adjacent pair of rows where `bell_ratio − 1` turns from `≤ 0` to `> 0`.
pub fn bell_crossing(rows: &[MultRow]) -> Option<(f64, f64)> {
    rows.windows(2)
        .find(|w| w[0].bell_ratio <= 1.0 && w[1].bell_ratio > 1.0)
        .map(|w| (w[0].p, w[1].p))
}

/// Float formatting shared by CSV reports: 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn rows_to_csv(rows: &[MultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [r.p, r.nu_a, r.nu_b, r.nu_ab, r.ratio, r.bell_ratio].map(fmt_float);
        out.push_str(&fields.join(","));
        out.push(',');
        out.push_str(if r.converged { "true" } else { "false" });
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn identity_pair_rows() {
        let id = Channel::identity(2);
        let rows = sweep(&id, &id, &[1.0, 2.0, 3.0], &OptimizerConfig::default().with_restarts(8)).unwrap();
        for r in &rows {
            assert!((r.ratio - 1.0).abs() < 1e-10);
            assert!((r.bell_ratio - 1.0).abs() < 1e-10);
        }
        let csv = rows_to_csv(&rows);
        assert!(csv.starts_with("p,nu_A,nu_B,nu_AB,ratio,bell_ratio,converged\n"));
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().nth(1).unwrap().starts_with("1.0000000000000000e0,"));
    }

    #[test]
    fn werner_holevo_bell_ratio_crosses_one() {
        let wh = zoo::werner_holevo(3).unwrap();
        let ratio = |p: f64| {
            let nu = 2f64.powf(1.0 / p - 1.0);
            bell_value(&wh, &wh, p).unwrap() / (nu * nu)
        };
        assert!((ratio(2.0) - (1.0 - 0.1835)).abs() < 1e-3);
        assert!(ratio(4.7) < 1.0 && ratio(4.8) > 1.0 && ratio(5.0) > 1.0);
    }

    #[test]
    fn grid_and_crossing() {
        let g = linear_grid(4.0, 5.2, 0.1);
        assert_eq!(g.len(), 13);
        assert!((g[12] - 5.2).abs() < 1e-12);
        let row = |p: f64, b: f64| MultRow {
            p,
            nu_a: 1.0,
            nu_b: 1.0,
            nu_ab: 1.0,
            ratio: 1.0,
            bell_ratio: b,
            converged: true,
        };
        let rows = [row(4.6, 0.99), row(4.7, 0.995), row(4.8, 1.001)];
        assert_eq!(bell_crossing(&rows), Some((4.7, 4.8)));
        assert_eq!(bell_crossing(&rows[..2]), None);
    }
}
