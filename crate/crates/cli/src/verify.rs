use serde_json::{json, Value};

use matchlab_core::folner::{check_certificate, Issue, Verdict};
use matchlab_core::ramsey::RamseyVerdict;
use matchlab_core::rational;

use crate::commands::ramsey_bundle;
use crate::error::{CliError, Outcome};
use crate::manifest::Inputs;
use crate::schema::{parse_rational, CertificateJson, RamseyBundle, CERTIFICATE_FORMAT, RAMSEY_FORMAT};
use crate::Report;

/// Re-checks a certificate or Ramsey bundle from its own contents.
pub fn verify(path: &str) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let raw: Value = inputs.read_json(path)?;
    let schema = |source| CliError::Json { path: path.into(), source };
    match raw.get("format").and_then(Value::as_str) {
        Some(CERTIFICATE_FORMAT) => verify_certificate(serde_json::from_value(raw).map_err(schema)?),
        Some(RAMSEY_FORMAT) => verify_ramsey(serde_json::from_value(raw).map_err(schema)?),
        other => Err(CliError::Invalid(format!("{path}: unrecognised format {other:?}"))),
    }
}

fn describe(issue: &Issue) -> String {
    match issue {
        Issue::BelowThreshold { pair, mu, needed } => format!("pair {pair}: mu {mu} below threshold {needed}"),
        Issue::ValueMismatch { pair, stored, recomputed } => {
            format!("pair {pair}: stored mu {stored}, recomputed {recomputed}")
        }
        Issue::WitnessSize { pair, stored, witness } => {
            format!("pair {pair}: stored mu {stored} but the witness has {witness} edges")
        }
        Issue::PairsMismatch { expected, stored } => format!("pairs: expected {expected}, stored {stored}"),
        Issue::WrongPair { pair } => format!("pair {pair}: translates differ from the required pair"),
        Issue::VerdictMismatch { claimed, actual } => format!("pass: stored {claimed}, recomputed {actual}"),
    }
}

fn verify_certificate(stored: CertificateJson) -> Result<Report, CliError> {
    let cert = stored.to_certificate()?;
    let mut problems = match check_certificate(&cert)? {
        Verdict::Pass => Vec::new(),
        Verdict::Fail(issues) => issues.iter().map(describe).collect(),
    };
    if stored.threshold != cert.threshold() {
        problems.push(format!("threshold: stored {}, recomputed {}", stored.threshold, cert.threshold()));
    }
    let ratio = rational::format(&cert.min_ratio());
    if parse_rational(&stored.min_ratio)? != cert.min_ratio() {
        problems.push(format!("min_ratio: stored {}, recomputed {ratio}", stored.min_ratio));
    }
    if problems.is_empty() && !cert.pass {
        problems.push("certificate records a failing verdict".into());
    }
    let outcome = if problems.is_empty() { Outcome::Pass } else { Outcome::Fail };
    let text = if problems.is_empty() {
        format!("PASS |F| = {}, min ratio {ratio}, {} pairs re-checked", cert.f.len(), cert.pairs.len())
    } else {
        format!("FAIL\n{}", problems.join("\n"))
    };
    Ok(Report::new(outcome, json!({ "pass": problems.is_empty(), "issues": problems }), text))
}

fn verify_ramsey(stored: RamseyBundle) -> Result<Report, CliError> {
    let (inst, verdict) = ramsey_bundle(
        &stored.a,
        &stored.b,
        &stored.c,
        stored.colors,
        &stored.eps,
        stored.budget,
        stored.cap,
        stored.samples,
        stored.manifest.seed,
    )?;
    let eps = parse_rational(&stored.eps)?;
    let mut problems = Vec::new();
    for (i, w) in stored.witnesses.iter().enumerate() {
        if !inst.validates(&w.psi, &w.phi, stored.colors, &eps)? {
            problems.push(format!("witness {i}: family fails the matching bound"));
        }
    }
    match &verdict {
        RamseyVerdict::Holds { witnesses } => {
            if stored.verdict != "holds" {
                problems.push(format!("verdict: stored {}, recomputed holds", stored.verdict));
            }
            if witnesses.len() != stored.witnesses.len() {
                problems.push(format!("witnesses: stored {}, recomputed {}", stored.witnesses.len(), witnesses.len()));
            }
            for (i, (w, s)) in witnesses.iter().zip(&stored.witnesses).enumerate() {
                if w.phi != s.phi {
                    problems.push(format!("witness {i}: coloring differs from the enumeration"));
                }
            }
        }
        RamseyVerdict::Fails { phi, .. } => {
            if stored.verdict != "fails" {
                problems.push(format!("verdict: stored {}, recomputed fails", stored.verdict));
            }
            if stored.counterexample.as_ref().map(|c| &c.phi) != Some(phi) {
                problems.push("counterexample: differs from the recomputed coloring".into());
            }
        }
    }
    let holds = matches!(verdict, RamseyVerdict::Holds { .. });
    let outcome = if problems.is_empty() && holds { Outcome::Pass } else { Outcome::Fail };
    let text = if problems.is_empty() {
        format!("{} ({} witnesses re-validated)", if holds { "HOLDS" } else { "FAILS" }, stored.witnesses.len())
    } else {
        format!("MISMATCH\n{}", problems.join("\n"))
    };
    Ok(Report::new(outcome, json!({ "holds": holds, "issues": problems }), text))
}
