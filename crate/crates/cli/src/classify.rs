use std::io::{BufRead, Write};

use slocc_core::classifier4::Slocc4Verdict;
use slocc_core::{classify3, classify4, Complex64, Criterion3Report, ExactComplex, Scalar, ToleranceConfig};

use crate::records::{Amplitude, Flag, Mode, ParsedState, RecordError, Residual, StateRecord, Tolerance, VerdictRecord};

trait ToAmplitude: Scalar {
    fn amplitude(&self) -> Amplitude;
}

impl ToAmplitude for Complex64 {
    fn amplitude(&self) -> Amplitude {
        Amplitude::from_float(*self)
    }
}

impl ToAmplitude for ExactComplex {
    fn amplitude(&self) -> Amplitude {
        Amplitude::from_exact(self)
    }
}

fn amplitude<S: ToAmplitude>(z: &S) -> Amplitude {
    z.amplitude()
}

fn flag(name: impl Into<String>, value: bool) -> Flag {
    Flag {
        name: name.into(),
        value,
    }
}

fn three<S: ToAmplitude>(out: &mut VerdictRecord, r: Criterion3Report<S>) {
    out.verdict = Some(r.class.label().to_string());
    out.discriminant = Some(amplitude(&r.discriminant));
    out.residuals = r
        .residuals
        .iter()
        .map(|p| Residual {
            name: p.label(),
            value: amplitude(&p.value),
        })
        .collect();
    out.flags = vec![
        flag("discriminant_nonzero", r.flags.discriminant_nonzero),
        flag("bc_minors_zero", r.flags.bc_minors_zero),
        flag("ac_minors_zero", r.flags.ac_minors_zero),
        flag("ab_minors_zero", r.flags.ab_minors_zero),
    ];
    out.warnings = r.warnings;
}

fn four<S: ToAmplitude>(out: &mut VerdictRecord, v: Slocc4Verdict<S>) {
    out.verdict = Some(v.kind.label().to_string());
    out.placement = v.kind.placement();
    let e = v.evidence;
    out.residuals = vec![Residual {
        name: "a2a13-a3a12+a4a11-a5a10-a0a15+a1a14-a6a9+a7a8".into(),
        value: amplitude(&e.linear_invariant),
    }];
    out.flags = e.flags.into_iter().map(|(n, v)| flag(n, v)).collect();
    out.flags.push(flag("ghz4.inequality", e.ghz4.inequality));
    for (k, &b) in e.ghz4.equalities.iter().enumerate() {
        out.flags.push(flag(format!("ghz4.equality{}", k + 1), b));
    }
    for (k, b) in e.w4.equalities().into_iter().enumerate() {
        out.flags.push(flag(format!("w4.equality{}", k + 1), b));
    }
    for (k, &b) in e.w4.inequalities.iter().enumerate() {
        out.flags.push(flag(format!("w4.inequality{}", k + 1), b));
    }
}

/// Classifies one parsed state.
pub fn classify_state(id: &str, state: &ParsedState, tol: &ToleranceConfig) -> Result<VerdictRecord, RecordError> {
    let mut out = VerdictRecord {
        id: id.to_string(),
        n_qubits: Some(state.n_qubits()),
        mode: Some(state.mode()),
        ..Default::default()
    };
    if state.mode() == Mode::Float {
        out.tolerance = Some(Tolerance {
            eps2: tol.eps2,
            eps4: tol.eps4,
        });
    }
    match state {
        ParsedState::Float3(s) => three::<Complex64>(&mut out, classify3(s, tol)?),
        ParsedState::Exact3(s) => three::<ExactComplex>(&mut out, classify3(s, tol)?),
        ParsedState::Float4(s) => four::<Complex64>(&mut out, classify4(s, tol)?),
        ParsedState::Exact4(s) => four::<ExactComplex>(&mut out, classify4(s, tol)?),
    }
    Ok(out)
}

/// Classifies one input line; failures become error records.
pub fn classify_line(line: &str, line_no: usize, mode: Option<Mode>, tol: &ToleranceConfig) -> VerdictRecord {
    let fallback_id = format!("line{line_no}");
    let record: StateRecord = match serde_json::from_str(line) {
        Ok(r) => r,
        Err(e) => {
            // Keep the id when the line is JSON with an id but otherwise malformed.
            let id = serde_json::from_str::<serde_json::Value>(line)
                .ok()
                .and_then(|v| v.get("id").and_then(|x| x.as_str()).map(String::from))
                .unwrap_or(fallback_id);
            return VerdictRecord {
                id,
                error: Some(format!("malformed record: {e}")),
                ..Default::default()
            };
        }
    };
    let result = record.parse(mode).and_then(|s| classify_state(&record.id, &s, tol));
    result.unwrap_or_else(|e| VerdictRecord {
        id: record.id.clone(),
        n_qubits: Some(record.n_qubits),
        mode: Some(mode.unwrap_or(record.mode)),
        error: Some(e.0),
        ..Default::default()
    })
}

/// Streams verdicts for every nonblank input line, in order. Returns the
/// number of records that errored.
pub fn run(input: impl BufRead, mut output: impl Write, mode: Option<Mode>, tol: &ToleranceConfig) -> std::io::Result<usize> {
    let mut errors = 0;
    for (k, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v = classify_line(&line, k + 1, mode, tol);
        errors += usize::from(v.error.is_some());
        serde_json::to_writer(&mut output, &v)?;
        output.write_all(b"\n")?;
    }
    output.flush()?;
    Ok(errors)
}
