//! Closed-form checkers against the generic decider and the brute-force
//! oracle, on seeded random parameter tuples.

use std::collections::BTreeMap;

use convex_order::json::{decision_to_json, ParamsDoc};
use convex_order::oracle::{oracle_decide, refine_grid};
use convex_order::ordering::decide;
use convex_order::rational::{format_rational, rat};
use convex_order::theorems::{Case, Check, Theorem, ThlHParams, ThqoParams, ThrHParams, TheoremParams};
use convex_order::{OracleReport, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, Result};

/// Largest denominator of a drawn free parameter. Small denominators land
/// on case boundaries often, which is where transcription slips show up.
const MAX_DRAW_DENOMINATOR: i64 = 16;
const MAX_ATTEMPTS: usize = 100_000;

#[derive(Clone, Debug)]
pub struct Record {
    pub index: usize,
    pub params: TheoremParams<Rational>,
    pub check: Check,
    pub decider_holds: Option<bool>,
    pub decision: Value,
    pub oracle: OracleReport,
    pub means_equal: bool,
    pub witness_verified: Option<bool>,
    pub crossings: Option<usize>,
    pub issues: Vec<&'static str>,
    /// Observations that are not disagreements.
    pub notes: Vec<&'static str>,
}

impl Record {
    pub fn agrees(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "disagreement",
            "theorem": self.params.theorem().name(),
            "index": self.index,
            "issues": self.issues,
            "notes": self.notes,
            "params": ParamsDoc::from_params(&self.params),
            "check": check_json(&self.check),
            "decider": self.decision,
            "oracle": {
                "clean": self.oracle.clean(),
                "max_violation": format_rational(&self.oracle.max_violation),
                "worst_s": self.oracle.worst_s.as_ref().map(format_rational),
                "tested_functions": self.oracle.tested_functions,
            },
            "means_equal": self.means_equal,
            "witness_verified": self.witness_verified,
        })
    }
}

fn check_json(c: &Check) -> Value {
    json!({"holds": c.holds, "mean_ok": c.mean_ok, "case": c.case.map(Case::label)})
}

/// Runs every comparison for one parameter set.
pub fn evaluate(index: usize, params: TheoremParams<Rational>) -> Record {
    let check = params.check();
    let (a, b) = params.functional_pair();
    let means_equal = a.barycenter() == b.barycenter();
    let oracle = oracle_decide(&a, &b, &refine_grid(&a, &b));
    let mut issues = Vec::new();
    let (decider_holds, decision, witness_verified, crossings) = match decide(&a, &b, true) {
        Ok(d) => {
            let verified = d.verdict.witness().map(|w| w.verify(&a, &b));
            let n = d.crossings.as_ref().map(|p| p.crossings());
            (Some(d.verdict.holds()), decision_to_json(&d, true), verified, n)
        }
        Err(e) => {
            issues.push("paths");
            (None, json!({"error": e.to_string()}), None, None)
        }
    };
    if let Some(h) = decider_holds {
        if h != check.holds {
            issues.push("holds");
        }
        if h != oracle.clean() {
            issues.push("oracle");
        }
    }
    if check.mean_ok != means_equal {
        issues.push("mean");
    }
    if witness_verified == Some(false) {
        issues.push("witness");
    }
    let mut notes = Vec::new();
    if let (TheoremParams::Thqo(p), Some(Case::IV)) = (&params, check.case) {
        // The three crossings sit at 1-α₁ < 1-β < 1-α₂, which needs α₁ > β.
        // Otherwise the condition is trivially met and the pair crosses once.
        if p.alpha1 > p.beta {
            if crossings != Some(3) {
                issues.push("case_iv_crossings");
            }
        } else {
            notes.push("case_iv_single_crossing");
        }
    }
    Record { index, params, check, decider_holds, decision, oracle, means_equal, witness_verified, crossings, issues, notes }
}

fn draw(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(2..=MAX_DRAW_DENOMINATOR);
    rat(rng.gen_range(1..q), q)
}

fn in_open_unit(x: &Rational) -> bool {
    *x > Rational::zero() && *x < Rational::one()
}

/// Draws hypotheses-satisfying parameters with the mean condition enforced
/// by solving for the dependent weights.
pub fn sample(theorem: Theorem, rng: &mut ChaCha8Rng) -> Result<TheoremParams<Rational>> {
    let one = Rational::one();
    let half = rat(1, 2);
    for _ in 0..MAX_ATTEMPTS {
        let candidate = match theorem {
            Theorem::ThlH => {
                let mut alpha = [draw(rng), draw(rng), draw(rng)];
                alpha.sort_by(|x, y| y.cmp(x));
                if alpha[0] == alpha[1] || alpha[1] == alpha[2] {
                    continue;
                }
                let u = alpha.clone().map(|x| &one - x);
                let a1 = draw(rng);
                // a2 + a3 = 1 - a1 and a2·u2 + a3·u3 = 1/2 - a1·u1
                let a2 = ((&one - &a1) * &u[2] - (&half - &a1 * &u[0])) / (&u[2] - &u[1]);
                let a3 = &one - &a1 - &a2;
                if ![&a2, &a3].iter().all(|x| in_open_unit(x)) {
                    continue;
                }
                ThlHParams::new([a1, a2, a3], alpha).map(TheoremParams::ThlH)
            }
            Theorem::ThrH => {
                let (mut al2, mut al3) = (draw(rng), draw(rng));
                if al2 < al3 {
                    std::mem::swap(&mut al2, &mut al3);
                }
                let (a1, a2) = (draw(rng), draw(rng));
                // a3·(1-α₃) + a4 = 1/2 - a2·(1-α₂) with a3 + a4 = 1 - a1 - a2
                let a3 = (&half - &a1 - &a2 * &al2) / &al3;
                let a4 = &one - &a1 - &a2 - &a3;
                if ![&a3, &a4].iter().all(|x| in_open_unit(x)) {
                    continue;
                }
                ThrHParams::new([a1, a2, a3, a4], al2, al3).map(TheoremParams::ThrH)
            }
            Theorem::Thqo => {
                let (mut al1, mut al2) = (draw(rng), draw(rng));
                if al1 < al2 {
                    std::mem::swap(&mut al1, &mut al2);
                }
                let (a, beta, b1) = (draw(rng), draw(rng), draw(rng));
                let mean = &a * (&one - &al1) + (&one - &a) * (&one - &al2);
                let b2 = (&one - &b1 - &mean) / &beta;
                let b3 = &one - &b1 - &b2;
                if ![&b2, &b3].iter().all(|x| in_open_unit(x)) {
                    continue;
                }
                ThqoParams::new(a, al1, al2, beta, [b1, b2, b3]).map(TheoremParams::Thqo)
            }
        };
        if let Ok(p) = candidate {
            return Ok(p);
        }
    }
    Err(CliError::input(format!("could not draw valid {} parameters", theorem.name())))
}

#[derive(Clone, Debug)]
pub struct AgreeSummary {
    pub theorem: Option<Theorem>,
    pub seed: u64,
    pub samples: usize,
    pub forced: usize,
    pub disagreements: Vec<Record>,
    pub decider_holds: usize,
    /// Fails verdicts seen, and how many of their witnesses re-evaluated exactly.
    pub witnesses: usize,
    pub witnesses_verified: usize,
    pub cases: BTreeMap<String, usize>,
    pub issues: BTreeMap<&'static str, usize>,
    pub notes: BTreeMap<&'static str, usize>,
}

impl AgreeSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "summary",
            "theorem": self.theorem.map(Theorem::name),
            "seed": self.seed,
            "samples": self.samples,
            "forced": self.forced,
            "agreements": self.samples - self.disagreements.len(),
            "disagreements": self.disagreements.len(),
            "decider_holds": self.decider_holds,
            "decider_fails": self.samples - self.decider_holds,
            "witnesses_verified": format!("{}/{}", self.witnesses_verified, self.witnesses),
            "cases": self.cases,
            "issues": self.issues,
            "notes": self.notes,
        })
    }
}

/// Evaluates `forced` first, then random draws up to `samples` in total.
/// Draws are sequential from the seed; evaluation runs in parallel.
pub fn run(theorem: Option<Theorem>, samples: usize, seed: u64, forced: Vec<TheoremParams<Rational>>) -> Result<AgreeSummary> {
    if samples == 0 {
        return Err(CliError::input("--samples must be positive"));
    }
    let forced_count = forced.len();
    let mut all = forced;
    if all.len() < samples {
        let theorem = theorem.ok_or_else(|| CliError::input("--theorem is required for random samples"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while all.len() < samples {
            all.push(sample(theorem, &mut rng)?);
        }
    }
    let records: Vec<Record> = all.into_par_iter().enumerate().map(|(i, p)| evaluate(i, p)).collect();
    let mut summary = AgreeSummary {
        theorem,
        seed,
        samples: records.len(),
        forced: forced_count,
        disagreements: Vec::new(),
        decider_holds: 0,
        witnesses: 0,
        witnesses_verified: 0,
        cases: BTreeMap::new(),
        issues: BTreeMap::new(),
        notes: BTreeMap::new(),
    };
    for r in records {
        if r.decider_holds == Some(true) {
            summary.decider_holds += 1;
        }
        if let Some(ok) = r.witness_verified {
            summary.witnesses += 1;
            summary.witnesses_verified += usize::from(ok);
        }
        let label = r.check.case.map(|c| c.label().to_string()).unwrap_or_else(|| "none".into());
        *summary.cases.entry(label).or_default() += 1;
        for issue in &r.issues {
            *summary.issues.entry(issue).or_default() += 1;
        }
        for note in &r.notes {
            *summary.notes.entry(note).or_default() += 1;
        }
        if !r.agrees() {
            summary.disagreements.push(r);
        }
    }
    Ok(summary)
}

/// Parses forced parameter records: one JSON object, an array, or JSON lines.
pub fn parse_params(text: &str) -> Result<Vec<TheoremParams<Rational>>> {
    let docs: Vec<ParamsDoc> = match serde_json::from_str::<Value>(text) {
        Ok(Value::Array(items)) => items
            .into_iter()
            .map(serde_json::from_value)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| CliError::input(format!("bad params record: {e}")))?,
        Ok(v) => vec![serde_json::from_value(v).map_err(|e| CliError::input(format!("bad params record: {e}")))?],
        Err(_) => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(|e| CliError::input(format!("bad params record: {e}"))))
            .collect::<Result<_>>()?,
    };
    docs.into_iter().map(|d| d.into_params().map_err(CliError::from)).collect()
}
