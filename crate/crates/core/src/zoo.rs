//! Constructors for the standard map families, plus random channels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::Channel;
use crate::conditions::FormParams;
use crate::error::{Error, Result};
use crate::linalg::{
    c64, eigh, ensure_finite, ensure_square, hermitian_defect, hermitian_function, identity, matrix_unit,
    max_abs, psd_from_eigenvalues, trace, ComplexMatrix, ComplexVector, RealMatrix, PSD_TOL,
};
use crate::qubit::{qubit_map, QubitMapParams};
use crate::random::{ginibre, seeded_rng};

/// Column sums of a QC transition matrix must be 1 within this tolerance.
pub const STOCHASTIC_TOL: f64 = 1e-12;

/// Diagonal map `Φ(E_jk) = a_jk E_jk` for PSD `A`, with diagonal Kraus operators
/// `diag(√λ_r V[:, r])` from the eigendecomposition `A = V Λ V†`.
pub fn diagonal_map(a: &ComplexMatrix) -> Result<Channel> {
    let d = ensure_square(a)?;
    ensure_finite(a)?;
    let defect = hermitian_defect(a);
    if defect > crate::linalg::HERMITIAN_TOL * max_abs(a).max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let (values, vectors) = eigh(a);
    let check = psd_from_eigenvalues(&values, PSD_TOL);
    if !check.psd {
        return Err(Error::NotPsd(check.min_eigenvalue));
    }
    let top = values.last().copied().unwrap_or(0.0);
    let mut kraus: Vec<ComplexMatrix> = values
        .iter()
        .enumerate()
        .rev()
        .filter(|&(_, &l)| top > 0.0 && l > PSD_TOL * top)
        .map(|(r, &l)| {
            let diag = ComplexVector::from_fn(d, |j, _| vectors[(j, r)] * l.sqrt());
            ComplexMatrix::from_diagonal(&diag)
        })
        .collect();
    if kraus.is_empty() {
        kraus.push(ComplexMatrix::zeros(d, d));
    }
    Channel::from_kraus(kraus)
}

fn check_stochastic(d: &RealMatrix) -> Result<()> {
    if d.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::InvalidParameter("transition matrix must be entrywise nonnegative".into()));
    }
    for (l, col) in d.column_iter().enumerate() {
        let sum: f64 = col.iter().sum();
        if (sum - 1.0).abs() > STOCHASTIC_TOL {
            return Err(Error::InvalidParameter(format!("column {l} sums to {sum}, not 1")));
        }
    }
    Ok(())
}

/// Quantum-classical map: measure in the computational basis, then move
/// `l → j` with probability `d_jl`. Kraus set `{√d_jl E_jl}`.
pub fn qc_map(d: &RealMatrix) -> Result<Channel> {
    if d.nrows() != d.ncols() || d.nrows() == 0 {
        return Err(Error::NotSquare {
            rows: d.nrows(),
            cols: d.ncols(),
        });
    }
    check_stochastic(d)?;
    let n = d.nrows();
    let mut kraus = Vec::new();
    for j in 0..n {
        for l in 0..n {
            if d[(j, l)] > 0.0 {
                kraus.push(matrix_unit(j, l, n)?.scale(d[(j, l)].sqrt()));
            }
        }
    }
    Channel::new(kraus, true)
}

/// `Φ(M) = ((Tr M) I − Mᵀ)/(d − 1)`.
pub fn werner_holevo(d: usize) -> Result<Channel> {
    let scale = 1.0 / ((d.max(2) - 1) as f64).sqrt();
    let kraus = antisymmetric_generators(d)?.into_iter().map(|k| k.scale(scale)).collect();
    Channel::new(kraus, true)
}

/// `Φ(M) = (Tr M) I − Mᵀ`, completely positive but scaling traces by `d − 1`.
pub fn werner_holevo_unnormalized(d: usize) -> Result<Channel> {
    Channel::from_kraus(antisymmetric_generators(d)?)
}

fn antisymmetric_generators(d: usize) -> Result<Vec<ComplexMatrix>> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("Werner-Holevo map needs d >= 2, got {d}")));
    }
    let mut kraus = Vec::with_capacity(d * (d - 1) / 2);
    for j in 0..d {
        for k in j + 1..d {
            kraus.push(matrix_unit(j, k, d)? - matrix_unit(k, j, d)?);
        }
    }
    Ok(kraus)
}

/// The map `[Φ(M)]_jj = Σ_l d_jl m_ll`,
/// `[Φ(M)]_jk = a_jk ((1+ε_jk)/2 m_jk + (1−ε_jk)/2 m_kj)` for `j ≠ k`.
///
/// Not every parameter set is completely positive; those are rejected with
/// [`Error::NotCompletelyPositive`] carrying the smallest Choi eigenvalue.
pub fn form_map(params: &FormParams) -> Result<Channel> {
    let n = params.dim();
    Channel::from_linear_map(n, n, |m| params.apply(m))
}

/// `Φ(ρ) = λρ + (1 − λ)(Tr ρ) I/d`, valid for `−1/(d²−1) ≤ λ ≤ 1`.
pub fn depolarizing(d: usize, lambda: f64) -> Result<Channel> {
    if d == 0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("depolarizing({d}, {lambda})")));
    }
    let id = identity(d);
    let channel =
        Channel::from_linear_map(d, d, |m| m.scale(lambda) + id.clone() * (trace(m) * ((1.0 - lambda) / d as f64)))?;
    // Depolarizing maps are trace preserving; re-flag after Choi round-off.
    Channel::new(channel.kraus().to_vec(), true)
}

/// The single-Kraus map `Φ(ρ) = A†ρA`.
pub fn extreme_cp(a: &ComplexMatrix) -> Result<Channel> {
    ensure_finite(a)?;
    if a.is_empty() || max_abs(a) == 0.0 {
        return Err(Error::InvalidParameter("extreme map needs a nonzero matrix".into()));
    }
    Channel::from_kraus(vec![a.adjoint()])
}

/// Random CPT map: Ginibre Kraus operators `G_a` normalized as `G_a S^{-1/2}`
/// with `S = Σ G_a†G_a`.
pub fn random_channel(d_in: usize, d_out: usize, kraus_count: usize, seed: u64) -> Result<Channel> {
    let raw = random_kraus(d_in, d_out, kraus_count, seed)?;
    if d_out * kraus_count < d_in {
        return Err(Error::InvalidParameter(format!(
            "{kraus_count} Kraus operators of shape {d_out}x{d_in} cannot be trace preserving"
        )));
    }
    let s: ComplexMatrix = raw.iter().map(|g| g.adjoint() * g).sum();
    let inv_sqrt = hermitian_function(&s, |x| 1.0 / x.max(f64::MIN_POSITIVE).sqrt());
    Channel::new(raw.iter().map(|g| g * &inv_sqrt).collect(), true)
}

/// Random CP map with unnormalized Ginibre Kraus operators scaled by `1/√(k·d_in)`.
pub fn random_cp(d_in: usize, d_out: usize, kraus_count: usize, seed: u64) -> Result<Channel> {
    let scale = 1.0 / ((kraus_count * d_in) as f64).sqrt();
    Channel::from_kraus(
        random_kraus(d_in, d_out, kraus_count, seed)?
            .into_iter()
            .map(|g| g.scale(scale))
            .collect(),
    )
}

fn random_kraus(d_in: usize, d_out: usize, kraus_count: usize, seed: u64) -> Result<Vec<ComplexMatrix>> {
    if d_in == 0 || d_out == 0 || kraus_count == 0 {
        return Err(Error::InvalidParameter("random maps need positive dimensions and Kraus count".into()));
    }
    let mut rng = seeded_rng(seed, 0);
    Ok((0..kraus_count).map(|_| ginibre(&mut rng, d_out, d_in)).collect())
}

/// Trace-preserving qubit map in canonical form: `T = diag(λ)`, `s = 0`.
pub fn qubit_canonical(t: [f64; 3], lambda: [f64; 3]) -> Result<Channel> {
    qubit_map(&QubitMapParams::canonical(t, lambda))
}

/// Serializable description of a zoo member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ZooSpec {
    Identity { d: usize },
    /// Real PSD matrix `A`.
    Diagonal { a: Vec<Vec<f64>> },
    /// Column-stochastic `D`.
    Qc { d: Vec<Vec<f64>> },
    WernerHolevo { d: usize },
    Form {
        d: Vec<Vec<f64>>,
        a: Vec<Vec<f64>>,
        epsilon: Vec<Vec<f64>>,
    },
    Depolarizing { d: usize, lambda: f64 },
    Extreme { a: Vec<Vec<f64>> },
    QubitCanonical { t: [f64; 3], lambda: [f64; 3] },
    Random {
        d_in: usize,
        d_out: usize,
        kraus_count: usize,
        seed: u64,
    },
    RandomCp {
        d_in: usize,
        d_out: usize,
        kraus_count: usize,
        seed: u64,
    },
}

fn real_matrix(rows: &[Vec<f64>]) -> Result<RealMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(Error::DimensionMismatch("matrix rows must be nonempty and equal length".into()));
    }
    Ok(RealMatrix::from_fn(n, m, |r, c| rows[r][c]))
}

fn complex_matrix(rows: &[Vec<f64>]) -> Result<ComplexMatrix> {
    Ok(real_matrix(rows)?.map(|x| c64(x, 0.0)))
}

impl ZooSpec {
    pub fn build(&self) -> Result<Channel> {
        match self {
            ZooSpec::Identity { d } => {
                if *d == 0 {
                    return Err(Error::InvalidParameter("identity needs d >= 1".into()));
                }
                Ok(Channel::identity(*d))
            }
            ZooSpec::Diagonal { a } => diagonal_map(&complex_matrix(a)?),
            ZooSpec::Qc { d } => qc_map(&real_matrix(d)?),
            ZooSpec::WernerHolevo { d } => werner_holevo(*d),
            ZooSpec::Form { d, a, epsilon } => {
                let params = FormParams::new(real_matrix(d)?, complex_matrix(a)?, real_matrix(epsilon)?)?;
                form_map(&params)
            }
            ZooSpec::Depolarizing { d, lambda } => depolarizing(*d, *lambda),
            ZooSpec::Extreme { a } => extreme_cp(&complex_matrix(a)?),
            ZooSpec::QubitCanonical { t, lambda } => qubit_canonical(*t, *lambda),
            ZooSpec::Random {
                d_in,
                d_out,
                kraus_count,
                seed,
            } => random_channel(*d_in, *d_out, *kraus_count, *seed),
            ZooSpec::RandomCp {
                d_in,
                d_out,
                kraus_count,
                seed,
            } => random_cp(*d_in, *d_out, *kraus_count, *seed),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            ZooSpec::Identity { .. } => "identity",
            ZooSpec::Diagonal { .. } => "diagonal",
            ZooSpec::Qc { .. } => "qc",
            ZooSpec::WernerHolevo { .. } => "werner-holevo",
            ZooSpec::Form { .. } => "form",
            ZooSpec::Depolarizing { .. } => "depolarizing",
            ZooSpec::Extreme { .. } => "extreme",
            ZooSpec::QubitCanonical { .. } => "qubit-canonical",
            ZooSpec::Random { .. } => "random",
            ZooSpec::RandomCp { .. } => "random-cp",
        }
    }
}

fn parse_err(spec: &str, why: impl fmt::Display) -> Error {
    Error::Parse(format!("bad zoo spec {spec:?}: {why}"))
}

fn parse_num<T: FromStr>(spec: &str, field: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    field.trim().parse().map_err(|e| parse_err(spec, format!("{field:?}: {e}")))
}

/// `"1,2;3,4"` → rows.
fn parse_rows(spec: &str, text: &str) -> Result<Vec<Vec<f64>>> {
    let rows: Vec<Vec<f64>> = text
        .split(';')
        .map(|row| row.split(',').map(|x| parse_num(spec, x)).collect())
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(parse_err(spec, "rows have different lengths"));
    }
    Ok(rows)
}

fn parse_triple(spec: &str, text: &str) -> Result<[f64; 3]> {
    let values: Vec<f64> = text.split(',').map(|x| parse_num(spec, x)).collect::<Result<_>>()?;
    values
        .try_into()
        .map_err(|_| parse_err(spec, "expected three comma-separated numbers"))
}

fn keyed<'a>(spec: &str, field: &'a str, key: &str) -> Result<&'a str> {
    field
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| parse_err(spec, format!("expected {key}=...")))
}

impl FromStr for ZooSpec {
    type Err = Error;

    /// Parses `family:arg:arg...`, e.g. `werner-holevo:3`, `depolarizing:2:0.5`,
    /// `diagonal:2,-1;-1,2`, `qubit-canonical:t=0,0,0.3:lambda=0.5,0.5,0.4`,
    /// `random:din:dout:k:seed`, `form:D=...:A=...:eps=...`.
    fn from_str(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.trim().split(':').collect();
        let (family, args) = parts.split_first().expect("split yields one part");
        let want = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(parse_err(spec, format!("{family} takes {n} argument(s), got {}", args.len())))
            }
        };
        match *family {
            "identity" => {
                want(1)?;
                Ok(ZooSpec::Identity {
                    d: parse_num(spec, args[0])?,
                })
            }
            "werner-holevo" => {
                want(1)?;
                Ok(ZooSpec::WernerHolevo {
                    d: parse_num(spec, args[0])?,
                })
            }
            "depolarizing" => {
                want(2)?;
                Ok(ZooSpec::Depolarizing {
                    d: parse_num(spec, args[0])?,
                    lambda: parse_num(spec, args[1])?,
                })
            }
            "diagonal" => {
                want(1)?;
                Ok(ZooSpec::Diagonal {
                    a: parse_rows(spec, args[0])?,
                })
            }
            "qc" => {
                want(1)?;
                Ok(ZooSpec::Qc {
                    d: parse_rows(spec, args[0])?,
                })
            }
            "extreme" => {
                want(1)?;
                Ok(ZooSpec::Extreme {
                    a: parse_rows(spec, args[0])?,
                })
            }
            "form" => {
                want(3)?;
                Ok(ZooSpec::Form {
                    d: parse_rows(spec, keyed(spec, args[0], "D")?)?,
                    a: parse_rows(spec, keyed(spec, args[1], "A")?)?,
                    epsilon: parse_rows(spec, keyed(spec, args[2], "eps")?)?,
                })
            }
            "qubit-canonical" => {
                want(2)?;
                Ok(ZooSpec::QubitCanonical {
                    t: parse_triple(spec, keyed(spec, args[0], "t")?)?,
                    lambda: parse_triple(spec, keyed(spec, args[1], "lambda")?)?,
                })
            }
            "random" | "random-cp" => {
                want(4)?;
                let (d_in, d_out, kraus_count, seed) = (
                    parse_num(spec, args[0])?,
                    parse_num(spec, args[1])?,
                    parse_num(spec, args[2])?,
                    parse_num(spec, args[3])?,
                );
                Ok(if *family == "random" {
                    ZooSpec::Random {
                        d_in,
                        d_out,
                        kraus_count,
                        seed,
                    }
                } else {
                    ZooSpec::RandomCp {
                        d_in,
                        d_out,
                        kraus_count,
                        seed,
                    }
                })
            }
            other => Err(parse_err(spec, format!("unknown family {other:?}"))),
        }
    }
}

fn fmt_rows(rows: &[Vec<f64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(f64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn fmt_triple(v: &[f64; 3]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ZooSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = self.family();
        match self {
            ZooSpec::Identity { d } | ZooSpec::WernerHolevo { d } => write!(f, "{family}:{d}"),
            ZooSpec::Depolarizing { d, lambda } => write!(f, "{family}:{d}:{lambda}"),
            ZooSpec::Diagonal { a } | ZooSpec::Extreme { a } => write!(f, "{family}:{}", fmt_rows(a)),
            ZooSpec::Qc { d } => write!(f, "{family}:{}", fmt_rows(d)),
            ZooSpec::Form { d, a, epsilon } => write!(
                f,
                "{family}:D={}:A={}:eps={}",
                fmt_rows(d),
                fmt_rows(a),
                fmt_rows(epsilon)
            ),
            ZooSpec::QubitCanonical { t, lambda } => {
                write!(f, "{family}:t={}:lambda={}", fmt_triple(t), fmt_triple(lambda))
            }
            ZooSpec::Random {
                d_in,
                d_out,
                kraus_count,
                seed,
            }
            | ZooSpec::RandomCp {
                d_in,
                d_out,
                kraus_count,
                seed,
            } => write!(f, "{family}:{d_in}:{d_out}:{kraus_count}:{seed}"),
        }
    }
}
