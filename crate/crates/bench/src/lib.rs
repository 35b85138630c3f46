//! Fixed inputs shared by the benchmarks.

use cpmult_core::norms::OptimizerConfig;
use cpmult_core::{Channel, ZooSpec};

pub fn channel(spec: &str) -> Channel {
    spec.parse::<ZooSpec>().expect("valid spec").build().expect("CP spec")
}

/// `(label, channel)` pairs covering small and tensor-sized inputs.
pub fn fixtures() -> Vec<(&'static str, Channel)> {
    vec![
        ("qubit", channel("random:2:2:2:1")),
        ("qutrit", channel("random:3:3:3:2")),
        ("werner-holevo-3", channel("werner-holevo:3")),
    ]
}

pub fn optimizer(restarts: usize) -> OptimizerConfig {
    OptimizerConfig::default().with_restarts(restarts).with_seed(7)
}
