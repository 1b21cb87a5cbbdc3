//! Single-instance decisions with optional interval rescaling.

use std::path::Path;

use convex_order::json::{decision_to_json, FunctionalInput};
use convex_order::ordering::{decide, CrossingProfile, Verdict, Witness};
use convex_order::{Decision, Functional, Rational};
use serde_json::Value;

use crate::error::{CliError, Result};

/// Accepts a preset name, an inline JSON document, or a path to one.
pub fn load_functional(arg: &str, paper_convention: bool, interval: Option<&(Rational, Rational)>) -> Result<Functional> {
    if let Some(f) = Functional::preset(arg.trim()) {
        return Ok(f);
    }
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if Path::new(arg).is_file() {
        std::fs::read_to_string(arg)?
    } else {
        return Err(CliError::input(format!("`{arg}` is not a preset, a file, or inline JSON")));
    };
    let input = FunctionalInput::parse(&text)?;
    if paper_convention && !input.is_paper_convention() {
        return Err(CliError::input("--paper-convention expects {\"pairs\": [{\"a\": .., \"alpha\": ..}]}"));
    }
    Ok(input.into_functional(interval.map(|(lo, hi)| (lo, hi)))?)
}

/// Expresses a decision on `[lo, hi]`: positions map by `t ↦ lo + t·(hi - lo)`,
/// gaps and areas scale by `hi - lo`.
pub fn to_interval(d: &Decision, lo: &Rational, hi: &Rational) -> Decision {
    let w = hi - lo;
    let pos = |t: &Rational| lo + t * &w;
    let verdict = |v: &Verdict<Rational>| match v {
        Verdict::Fails(Witness::Hinge { s, gap }) => Verdict::Fails(Witness::Hinge { s: pos(s), gap: gap * &w }),
        other => other.clone(),
    };
    Decision {
        verdict: verdict(&d.verdict),
        crossings: d.crossings.as_ref().map(|p| CrossingProfile {
            points: p.points.iter().map(pos).collect(),
            areas: p.areas.iter().map(|a| a * &w).collect(),
            initial_sign: p.initial_sign,
        }),
        lemma: d.lemma.as_ref().map(verdict),
    }
}

/// Decides `lhs ≼ rhs` and renders the verdict JSON.
pub fn check(lhs: &Functional, rhs: &Functional, diagnose: bool, interval: Option<&(Rational, Rational)>) -> Result<(Decision, Value)> {
    let d = decide(lhs, rhs, diagnose)?;
    let shown = match interval {
        Some((lo, hi)) => to_interval(&d, lo, hi),
        None => d.clone(),
    };
    Ok((d, decision_to_json(&shown, diagnose)))
}
