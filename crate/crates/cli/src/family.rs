//! Parameterised instance families for `threshold` and `scan`.

use std::collections::BTreeMap;
use std::fmt;

use convex_order::json::FunctionalInput;
use convex_order::rational::{format_rational, parse_rational, rat};
use convex_order::theorems::{ThlHParams, ThqoParams, ThrHParams, TheoremParams};
use convex_order::{Functional, Rational};
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::expr;

pub type Params = BTreeMap<String, Rational>;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `a·f(1-α) + (1-2a)·f(1/2) + a·f(α) ≤ mean`.
    Symmetric3,
    /// `mean ≤ a·f(0) + b·f(1-α) + b·f(α) + a·f(1)` with `2a + 2b = 1`.
    Endpoint4,
    /// Two symmetric nodes against a three-node rule with endpoints.
    TwoVsThree,
    /// `mean ≤ (f(0) + f(x) + f(1-x) + f(1))/4`, `x ∈ [0, 1/2]`.
    Bp1,
    /// Functional templates whose numeric strings are expressions in the parameters.
    Custom { lhs: String, rhs: String },
}

/// One concrete comparison `lhs ≼ rhs`, plus the closed-form parameters
/// when the family maps onto one of the characterised shapes.
#[derive(Clone, Debug)]
pub struct Instance {
    pub lhs: Functional,
    pub rhs: Functional,
    pub theorem: Option<TheoremParams<Rational>>,
}

fn point(t: Rational, w: Rational) -> (Rational, Rational) {
    (t, w)
}

fn open(name: &str, x: &Rational, lo: &Rational, hi: &Rational) -> Result<()> {
    if lo < x && x < hi {
        Ok(())
    } else {
        Err(CliError::input(format!("{name} = {} outside ({}, {})", format_rational(x), format_rational(lo), format_rational(hi))))
    }
}

impl Family {
    pub fn parse(name: &str, lhs: Option<&str>, rhs: Option<&str>) -> Result<Self> {
        match name {
            "symmetric3" => Ok(Family::Symmetric3),
            "endpoint4" => Ok(Family::Endpoint4),
            "twoVsThree" => Ok(Family::TwoVsThree),
            "bp1" => Ok(Family::Bp1),
            "custom" => match (lhs, rhs) {
                (Some(l), Some(r)) => Ok(Family::Custom { lhs: l.to_string(), rhs: r.to_string() }),
                _ => Err(CliError::input("family `custom` needs --lhs and --rhs templates")),
            },
            other => Err(CliError::input(format!(
                "unknown family `{other}` (expected symmetric3, endpoint4, twoVsThree, bp1 or custom)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Symmetric3 => "symmetric3",
            Family::Endpoint4 => "endpoint4",
            Family::TwoVsThree => "twoVsThree",
            Family::Bp1 => "bp1",
            Family::Custom { .. } => "custom",
        }
    }

    /// Recognised parameters; `None` for `custom`, which accepts any name.
    pub fn param_names(&self) -> Option<&'static [&'static str]> {
        match self {
            Family::Symmetric3 | Family::Endpoint4 => Some(&["a", "alpha"]),
            Family::TwoVsThree => Some(&["alpha", "a", "beta", "b1", "b2", "b3"]),
            Family::Bp1 => Some(&["x"]),
            Family::Custom { .. } => None,
        }
    }

    pub fn defaults(&self) -> Params {
        let mut p = Params::new();
        if *self == Family::TwoVsThree {
            p.insert("a".into(), rat(1, 2));
            p.insert("beta".into(), rat(1, 2));
            p.insert("b1".into(), rat(1, 6));
            p.insert("b2".into(), rat(2, 3));
            p.insert("b3".into(), rat(1, 6));
        }
        p
    }

    /// Builds the comparison at `params`; errors if a parameter is missing
    /// or outside the family's range.
    pub fn instance(&self, params: &Params) -> Result<Instance> {
        let get = |k: &str| {
            params.get(k).cloned().ok_or_else(|| CliError::input(format!("family {} needs parameter `{k}`", self.name())))
        };
        let (zero, one, half) = (Rational::zero(), Rational::one(), rat(1, 2));
        match self {
            Family::Symmetric3 => {
                let (a, alpha) = (get("a")?, get("alpha")?);
                open("a", &a, &zero, &half)?;
                open("alpha", &alpha, &half, &one)?;
                let b = &one - rat(2, 1) * &a;
                let lhs = Functional::new(
                    [point(&one - &alpha, a.clone()), point(half.clone(), b.clone()), point(alpha.clone(), a.clone())],
                    zero.clone(),
                )?;
                let theorem = ThlHParams::new([a.clone(), b, a], [alpha.clone(), half, &one - &alpha]).ok();
                Ok(Instance { lhs, rhs: Functional::uniform(), theorem: theorem.map(TheoremParams::ThlH) })
            }
            Family::Endpoint4 => {
                let (a, alpha) = (get("a")?, get("alpha")?);
                open("a", &a, &zero, &half)?;
                open("alpha", &alpha, &half, &one)?;
                let b = &half - &a;
                let rhs = Functional::new(
                    [
                        point(zero.clone(), a.clone()),
                        point(&one - &alpha, b.clone()),
                        point(alpha.clone(), b.clone()),
                        point(one.clone(), a.clone()),
                    ],
                    zero.clone(),
                )?;
                let theorem = ThrHParams::new([a.clone(), b.clone(), b, a], alpha.clone(), &one - &alpha).ok();
                Ok(Instance { lhs: Functional::uniform(), rhs, theorem: theorem.map(TheoremParams::ThrH) })
            }
            Family::TwoVsThree => {
                let (alpha, a, beta) = (get("alpha")?, get("a")?, get("beta")?);
                let b = [get("b1")?, get("b2")?, get("b3")?];
                open("alpha", &alpha, &half, &one)?;
                open("a", &a, &zero, &one)?;
                open("beta", &beta, &zero, &one)?;
                let lhs = Functional::new(
                    [point(&one - &alpha, a.clone()), point(alpha.clone(), &one - &a)],
                    zero.clone(),
                )?;
                let rhs = Functional::new(
                    [point(zero.clone(), b[0].clone()), point(&one - &beta, b[1].clone()), point(one.clone(), b[2].clone())],
                    zero.clone(),
                )?;
                let theorem = ThqoParams::new(a, alpha.clone(), &one - &alpha, beta, b).ok();
                Ok(Instance { lhs, rhs, theorem: theorem.map(TheoremParams::Thqo) })
            }
            Family::Bp1 => {
                let x = get("x")?;
                if x < zero || x > half {
                    return Err(CliError::input(format!("x = {} outside [0, 1/2]", format_rational(&x))));
                }
                let q = rat(1, 4);
                let rhs = Functional::new(
                    [
                        point(zero.clone(), q.clone()),
                        point(x.clone(), q.clone()),
                        point(&one - &x, q.clone()),
                        point(one.clone(), q.clone()),
                    ],
                    zero,
                )?;
                let theorem = ThrHParams::new([q.clone(), q.clone(), q.clone(), q], &one - &x, x).ok();
                Ok(Instance { lhs: Functional::uniform(), rhs, theorem: theorem.map(TheoremParams::ThrH) })
            }
            Family::Custom { lhs, rhs } => Ok(Instance {
                lhs: fill_template(lhs, params)?,
                rhs: fill_template(rhs, params)?,
                theorem: None,
            }),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Presets pass through; otherwise every string in the JSON template is
/// evaluated as an expression.
fn fill_template(template: &str, params: &Params) -> Result<Functional> {
    if let Some(f) = Functional::preset(template.trim()) {
        return Ok(f);
    }
    let mut value: Value =
        serde_json::from_str(template).map_err(|e| CliError::input(format!("bad custom template: {e}")))?;
    substitute(&mut value, params)?;
    Ok(FunctionalInput::parse(&value.to_string())?.into_functional(None)?)
}

fn substitute(value: &mut Value, params: &Params) -> Result<()> {
    match value {
        Value::String(s) => *s = format_rational(&expr::eval(s, params)?),
        Value::Array(items) => items.iter_mut().try_for_each(|v| substitute(v, params))?,
        Value::Object(map) => map.values_mut().try_for_each(|v| substitute(v, params))?,
        _ => {}
    }
    Ok(())
}

/// Swept parameter, its grid, and the fixed values.
#[derive(Clone, Debug)]
pub struct ScanSpec {
    pub family: Family,
    pub param: String,
    pub start: Rational,
    pub stop: Rational,
    pub step: Rational,
    pub fixed: Params,
}

impl ScanSpec {
    /// `sweep` is `name=from:to:step`; `fixes` are `name=value`.
    pub fn new(family: Family, sweep: &str, fixes: &[String]) -> Result<Self> {
        let (param, range) =
            sweep.split_once('=').ok_or_else(|| CliError::input(format!("--sweep `{sweep}`: expected name=from:to:step")))?;
        let parts: Vec<&str> = range.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(CliError::input(format!("--sweep `{sweep}`: expected name=from:to:step")));
        };
        let num = |s: &str| parse_rational(s.trim()).map_err(CliError::from);
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if step <= Rational::zero() {
            return Err(CliError::input("sweep step must be positive"));
        }
        if stop < start {
            return Err(CliError::input("sweep range is empty"));
        }
        let mut fixed = family.defaults();
        for fix in fixes {
            let (k, v) = fix.split_once('=').ok_or_else(|| CliError::input(format!("--fix `{fix}`: expected name=value")))?;
            fixed.insert(k.trim().to_string(), num(v)?);
        }
        let param = param.trim().to_string();
        if let Some(names) = family.param_names() {
            for k in fixed.keys().chain(std::iter::once(&param)) {
                if !names.contains(&k.as_str()) {
                    return Err(CliError::input(format!("family {family} has no parameter `{k}`")));
                }
            }
        }
        fixed.remove(&param);
        Ok(Self { family, param, start, stop, step, fixed })
    }

    pub fn grid(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut x = self.start.clone();
        while x <= self.stop {
            out.push(x.clone());
            x += &self.step;
        }
        out
    }

    pub fn params_at(&self, x: &Rational) -> Params {
        let mut p = self.fixed.clone();
        p.insert(self.param.clone(), x.clone());
        p
    }

    pub fn instance_at(&self, x: &Rational) -> Result<Instance> {
        self.family.instance(&self.params_at(x))
    }
}
