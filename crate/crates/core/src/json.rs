//! JSON forms of functionals, verdicts and theorem parameter records.
//!
//! Rationals travel as strings (`"3/4"`, `"2"`, `"0.9"`) or bare integers
//! on input, and always as `"p/q"` strings on output.
//!
//! ```json
//! {"atoms":[{"t":"1/4","w":"1/2"},{"t":"3/4","w":"1/2"}],"uniform":"0"}
//! {"pairs":[{"alpha":"3/4","a":"1/4"}, ...],"uniform":"0"}
//! ```

use std::fmt;

use num_traits::Zero;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::ordering::Sign;
use crate::rational::{format_rational, parse_rational};
use crate::theorems::{ThlHParams, ThqoParams, ThrHParams, TheoremParams};
use crate::{CrossingProfile, Decision, Error, Functional, Rational, Verdict, Witness};

/// Rational with the string wire form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl Default for Q {
    fn default() -> Self {
        Q(Rational::zero())
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct QVisitor;

        impl Visitor<'_> for QVisitor {
            type Value = Q;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rational(v).map(Q).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
        }

        deserializer.deserialize_any(QVisitor)
    }
}

fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub t: Q,
    pub w: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalDoc {
    pub atoms: Vec<AtomDoc>,
    #[serde(default)]
    pub uniform: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub alpha: Q,
    pub a: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaperDoc {
    pub pairs: Vec<PairDoc>,
    #[serde(default)]
    pub uniform: Q,
}

/// Either input form, picked by the key present.
#[derive(Clone, Debug)]
pub enum FunctionalInput {
    Atoms(FunctionalDoc),
    Pairs(PaperDoc),
}

impl FunctionalInput {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
        let bad = |e: serde_json::Error| Error::Parse(format!("bad functional: {e}"));
        if value.get("pairs").is_some() {
            serde_json::from_value(value).map(FunctionalInput::Pairs).map_err(bad)
        } else {
            serde_json::from_value(value).map(FunctionalInput::Atoms).map_err(bad)
        }
    }

    pub fn is_paper_convention(&self) -> bool {
        matches!(self, FunctionalInput::Pairs(_))
    }

    /// Positions of atom-form input are read on `[lo, hi]` when an interval
    /// is given; coefficient pairs are interval-free.
    pub fn into_functional(self, interval: Option<(&Rational, &Rational)>) -> Result<Functional, Error> {
        match self {
            FunctionalInput::Atoms(doc) => {
                let atoms = doc.atoms.into_iter().map(|a| (a.t.0, a.w.0));
                match interval {
                    Some((lo, hi)) => Functional::rescaled_from(atoms, doc.uniform.0, lo, hi),
                    None => Functional::new(atoms, doc.uniform.0),
                }
            }
            FunctionalInput::Pairs(doc) => {
                Functional::from_paper_convention(doc.pairs.into_iter().map(|p| (p.a.0, p.alpha.0)), doc.uniform.0)
            }
        }
    }
}

pub fn functional_to_json(f: &Functional) -> Value {
    let atoms: Vec<Value> = f.atoms().iter().map(|a| json!({"t": q(&a.position), "w": q(&a.weight)})).collect();
    json!({"atoms": atoms, "uniform": q(f.uniform_weight())})
}

pub fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::Linear { direction } => json!({"kind": "linear", "direction": direction.to_string()}),
        Witness::Hinge { s, gap } => json!({"kind": "hinge", "s": q(s), "gap": q(gap)}),
    }
}

pub fn crossings_to_json(p: &CrossingProfile) -> Value {
    json!({
        "n": p.crossings(),
        "points": p.points.iter().map(q).collect::<Vec<_>>(),
        "areas": p.areas.iter().map(q).collect::<Vec<_>>(),
        "initial_sign": p.initial_sign.as_i8(),
    })
}

pub fn verdict_to_json(v: &Verdict, crossings: Option<&CrossingProfile>) -> Value {
    json!({
        "outcome": v.outcome(),
        "witness": v.witness().map(witness_to_json),
        "crossings": crossings.map(crossings_to_json),
    })
}

/// Verdict JSON; with `diagnose`, adds both decision paths.
pub fn decision_to_json(d: &Decision, diagnose: bool) -> Value {
    let mut out = verdict_to_json(&d.verdict, d.crossings.as_ref());
    if diagnose {
        out["paths"] = json!({
            "cumulative": d.verdict.outcome(),
            "lemma": d.lemma.as_ref().map(|v| json!({
                "outcome": v.outcome(),
                "witness": v.witness().map(witness_to_json),
            })),
        });
    }
    out
}

pub fn verdict_from_json(value: &Value) -> Result<Verdict, Error> {
    let bad = |what: &str| Error::Parse(format!("bad verdict JSON: {what}"));
    let rational = |v: &Value| -> Result<Rational, Error> {
        v.as_str().ok_or_else(|| bad("expected rational string")).and_then(parse_rational)
    };
    match value.get("outcome").and_then(Value::as_str) {
        Some("holds") => Ok(Verdict::Holds),
        Some("equal") => Ok(Verdict::Equal),
        Some("fails") => {
            let w = value.get("witness").ok_or_else(|| bad("missing witness"))?;
            match w.get("kind").and_then(Value::as_str) {
                Some("hinge") => Ok(Verdict::Fails(Witness::Hinge {
                    s: rational(&w["s"])?,
                    gap: rational(&w["gap"])?,
                })),
                Some("linear") => {
                    let direction = match w.get("direction").and_then(Value::as_str) {
                        Some("+1") => Sign::Positive,
                        Some("-1") => Sign::Negative,
                        _ => return Err(bad("direction")),
                    };
                    Ok(Verdict::Fails(Witness::Linear { direction }))
                }
                _ => Err(bad("witness kind")),
            }
        }
        _ => Err(bad("outcome")),
    }
}

/// Theorem parameter record, tagged by `"theorem"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "theorem", deny_unknown_fields)]
pub enum ParamsDoc {
    #[serde(rename = "thlH")]
    ThlH { a: [Q; 3], alpha: [Q; 3] },
    #[serde(rename = "thrH")]
    ThrH { a: [Q; 4], alpha2: Q, alpha3: Q },
    #[serde(rename = "thqo")]
    Thqo { a: Q, alpha1: Q, alpha2: Q, beta: Q, b: [Q; 3] },
}

impl ParamsDoc {
    pub fn into_params(self) -> Result<TheoremParams<Rational>, Error> {
        let un = |xs: Vec<Q>| xs.into_iter().map(|x| x.0).collect::<Vec<_>>();
        Ok(match self {
            ParamsDoc::ThlH { a, alpha } => {
                let (a, alpha) = (un(a.into()), un(alpha.into()));
                TheoremParams::ThlH(ThlHParams::new(arr(a), arr(alpha))?)
            }
            ParamsDoc::ThrH { a, alpha2, alpha3 } => {
                TheoremParams::ThrH(ThrHParams::new(arr(un(a.into())), alpha2.0, alpha3.0)?)
            }
            ParamsDoc::Thqo { a, alpha1, alpha2, beta, b } => {
                TheoremParams::Thqo(ThqoParams::new(a.0, alpha1.0, alpha2.0, beta.0, arr(un(b.into())))?)
            }
        })
    }

    pub fn from_params(p: &TheoremParams<Rational>) -> Self {
        let wrap = |x: &Rational| Q(x.clone());
        match p {
            TheoremParams::ThlH(p) => ParamsDoc::ThlH { a: p.a.each_ref().map(wrap), alpha: p.alpha.each_ref().map(wrap) },
            TheoremParams::ThrH(p) => ParamsDoc::ThrH {
                a: p.a.each_ref().map(wrap),
                alpha2: wrap(&p.alpha2),
                alpha3: wrap(&p.alpha3),
            },
            TheoremParams::Thqo(p) => ParamsDoc::Thqo {
                a: wrap(&p.a),
                alpha1: wrap(&p.alpha1),
                alpha2: wrap(&p.alpha2),
                beta: wrap(&p.beta),
                b: p.b.each_ref().map(wrap),
            },
        }
    }
}

fn arr<const N: usize>(v: Vec<Rational>) -> [Rational; N] {
    v.try_into().unwrap_or_else(|_| unreachable!("length fixed by the record type"))
}
