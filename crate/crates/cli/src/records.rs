//! Line-delimited JSON records.
//!
//! Float amplitudes are `[re, im]` number pairs; exact amplitudes are
//! `["p/q", "p/q"]` string pairs so no precision is lost.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use slocc_core::{Complex64, ExactComplex, QubitState, State3, State4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Float => "float",
            Mode::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Float([f64; 2]),
    Exact([String; 2]),
}

impl Amplitude {
    pub fn from_float(z: Complex64) -> Self {
        Amplitude::Float([z.re, z.im])
    }

    pub fn from_exact(z: &ExactComplex) -> Self {
        Amplitude::Exact([format_rational(&z.re), format_rational(&z.im)])
    }

    fn to_float(&self) -> Result<Complex64, RecordError> {
        match self {
            Amplitude::Float([re, im]) if re.is_finite() && im.is_finite() => Ok(Complex64::new(*re, *im)),
            Amplitude::Float(_) => Err(RecordError::new("non-finite amplitude")),
            Amplitude::Exact([re, im]) => {
                let (re, im) = (parse_rational(re)?, parse_rational(im)?);
                let f = |r: &BigRational| num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN);
                Ok(Complex64::new(f(&re), f(&im)))
            }
        }
    }

    fn to_exact(&self) -> Result<ExactComplex, RecordError> {
        match self {
            Amplitude::Exact([re, im]) => Ok(ExactComplex::new(parse_rational(re)?, parse_rational(im)?)),
            Amplitude::Float([re, im]) => {
                let conv = |x: f64| BigRational::from_float(x).ok_or_else(|| RecordError::new("non-finite amplitude"));
                Ok(ExactComplex::new(conv(*re)?, conv(*im)?))
            }
        }
    }
}

/// `p/q` in lowest terms with a positive denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational, RecordError> {
    let bad = || RecordError::new(format!("invalid rational {s:?}"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(RecordError::new(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateRecord {
    pub id: String,
    pub n_qubits: u8,
    pub mode: Mode,
    pub amplitudes: Vec<Amplitude>,
}

/// A validated state in one of the four shapes.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedState {
    Float3(State3<Complex64>),
    Float4(State4<Complex64>),
    Exact3(State3<ExactComplex>),
    Exact4(State4<ExactComplex>),
}

impl ParsedState {
    pub fn n_qubits(&self) -> u8 {
        match self {
            ParsedState::Float3(_) | ParsedState::Exact3(_) => 3,
            ParsedState::Float4(_) | ParsedState::Exact4(_) => 4,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            ParsedState::Float3(_) | ParsedState::Float4(_) => Mode::Float,
            ParsedState::Exact3(_) | ParsedState::Exact4(_) => Mode::Exact,
        }
    }

    pub fn amplitudes(&self) -> Vec<Amplitude> {
        match self {
            ParsedState::Float3(s) => s.amplitudes().iter().map(|z| Amplitude::from_float(*z)).collect(),
            ParsedState::Float4(s) => s.amplitudes().iter().map(|z| Amplitude::from_float(*z)).collect(),
            ParsedState::Exact3(s) => s.amplitudes().iter().map(Amplitude::from_exact).collect(),
            ParsedState::Exact4(s) => s.amplitudes().iter().map(Amplitude::from_exact).collect(),
        }
    }
}

fn build<S: slocc_core::Scalar, const Q: usize>(amps: Vec<S>) -> Result<QubitState<S, Q>, RecordError> {
    QubitState::new(amps).map_err(|e| RecordError::new(e.to_string()))
}

impl StateRecord {
    pub fn from_state(id: impl Into<String>, state: &ParsedState) -> Self {
        Self {
            id: id.into(),
            n_qubits: state.n_qubits(),
            mode: state.mode(),
            amplitudes: state.amplitudes(),
        }
    }

    /// Validates and converts; `mode` overrides the record's own mode.
    pub fn parse(&self, mode: Option<Mode>) -> Result<ParsedState, RecordError> {
        let n = match self.n_qubits {
            3 | 4 => self.n_qubits as usize,
            other => return Err(RecordError::new(format!("n_qubits must be 3 or 4, got {other}"))),
        };
        if self.amplitudes.len() != 1 << n {
            return Err(RecordError::new(format!(
                "expected {} amplitudes, got {}",
                1 << n,
                self.amplitudes.len()
            )));
        }
        for a in &self.amplitudes {
            let consistent = matches!(
                (self.mode, a),
                (Mode::Float, Amplitude::Float(_)) | (Mode::Exact, Amplitude::Exact(_))
            );
            if !consistent {
                return Err(RecordError::new(format!("amplitude {a:?} does not match mode {}", self.mode)));
            }
        }
        match mode.unwrap_or(self.mode) {
            Mode::Float => {
                let amps = self.amplitudes.iter().map(Amplitude::to_float).collect::<Result<Vec<_>, _>>()?;
                Ok(if n == 3 {
                    ParsedState::Float3(build(amps)?)
                } else {
                    ParsedState::Float4(build(amps)?)
                })
            }
            Mode::Exact => {
                let amps = self.amplitudes.iter().map(Amplitude::to_exact).collect::<Result<Vec<_>, _>>()?;
                Ok(if n == 3 {
                    ParsedState::Exact3(build(amps)?)
                } else {
                    ParsedState::Exact4(build(amps)?)
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps2: f64,
    pub eps4: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flag {
    pub name: String,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    pub value: Amplitude,
}

/// One output line of `classify`. Records that failed carry `error` and
/// no verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct VerdictRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_qubits: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<Amplitude>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<Residual>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<Flag>,
    /// Thresholds in effect; absent in exact mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Tolerance>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct RecordError(pub String);

impl RecordError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

impl From<slocc_core::Error> for RecordError {
    fn from(e: slocc_core::Error) -> Self {
        Self(e.to_string())
    }
}
