//! Exact boundary of a monotone holds-region along one parameter.

use convex_order::ordering::decide_cumulative;
use convex_order::rational::format_rational;
use convex_order::Rational;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::family::ScanSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Holds below the boundary (`p ≤ p*`).
    AtMost,
    /// Holds above the boundary (`p ≥ p*`).
    AtLeast,
}

impl Direction {
    pub fn symbol(self) -> &'static str {
        match self {
            Direction::AtMost => "<=",
            Direction::AtLeast => ">=",
        }
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    AllHold,
    AllFail,
    Boundary {
        direction: Direction,
        /// Extreme holding value with denominator within the bound.
        threshold: Rational,
        /// Nearest failing value on the other side with denominator within the bound.
        neighbour: Rational,
        /// Last holding and first failing grid points.
        bracket: (Rational, Rational),
        confirmed: bool,
    },
}

#[derive(Clone, Debug)]
pub struct ThresholdReport {
    pub family: String,
    pub param: String,
    pub fixed: Vec<(String, Rational)>,
    pub max_denominator: u64,
    pub grid_points: usize,
    pub region: Region,
}

impl ThresholdReport {
    pub fn threshold(&self) -> Option<&Rational> {
        match &self.region {
            Region::Boundary { threshold, .. } => Some(threshold),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let fixed: serde_json::Map<String, Value> =
            self.fixed.iter().map(|(k, v)| (k.clone(), Value::String(format_rational(v)))).collect();
        let mut out = json!({
            "family": self.family,
            "parameter": self.param,
            "fixed": fixed,
            "max_denominator": self.max_denominator,
            "grid_points": self.grid_points,
        });
        match &self.region {
            Region::AllHold | Region::AllFail => {
                out["region"] = json!(if self.region == Region::AllHold { "all-hold" } else { "all-fail" });
                out["threshold"] = Value::Null;
            }
            Region::Boundary { direction, threshold, neighbour, bracket, confirmed } => {
                out["region"] = json!("boundary");
                out["direction"] = json!(direction.symbol());
                out["threshold"] = json!(format_rational(threshold));
                out["approx"] = json!(threshold.to_f64());
                out["first_failing"] = json!(format_rational(neighbour));
                out["bracket"] = json!([format_rational(&bracket.0), format_rational(&bracket.1)]);
                out["confirmed"] = json!(confirmed);
            }
        }
        out
    }
}

fn holds_at(spec: &ScanSpec, x: &Rational) -> Result<bool> {
    let inst = spec.instance_at(x)?;
    Ok(decide_cumulative(&inst.lhs, &inst.rhs).holds())
}

/// Scans the grid, checks monotonicity, then refines the boundary between
/// the bracketing grid points to the extreme holding rational with
/// denominator at most `max_denominator`.
pub fn find_threshold(spec: &ScanSpec, max_denominator: u64) -> Result<ThresholdReport> {
    if max_denominator == 0 {
        return Err(CliError::input("max denominator must be positive"));
    }
    let grid = spec.grid();
    let flags = crate::scan::par_map(&grid, |x| holds_at(spec, x))?;
    let report = |region| ThresholdReport {
        family: spec.family.name().to_string(),
        param: spec.param.clone(),
        fixed: spec.fixed.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        max_denominator,
        grid_points: grid.len(),
        region,
    };
    if flags.iter().all(|h| *h) {
        return Ok(report(Region::AllHold));
    }
    if flags.iter().all(|h| !*h) {
        return Ok(report(Region::AllFail));
    }
    let changes: Vec<usize> = (1..flags.len()).filter(|&i| flags[i] != flags[i - 1]).collect();
    if changes.len() != 1 {
        let at: Vec<String> = changes.iter().map(|&i| format_rational(&grid[i])).collect();
        return Err(CliError::NonMonotoneRegion {
            param: spec.param.clone(),
            detail: format!("outcome changes at {}", at.join(", ")),
        });
    }
    let i = changes[0];
    let (lo, hi) = (grid[i - 1].clone(), grid[i].clone());
    let (direction, threshold, neighbour, bracket) = if flags[0] {
        let (t, n) = last_holding(&lo, &hi, max_denominator, |x| holds_at(spec, x))?;
        (Direction::AtMost, t, n, (lo, hi))
    } else {
        // Reflect so the holding side is on the left.
        let (t, n) = last_holding(&-hi.clone(), &-lo.clone(), max_denominator, |x| holds_at(spec, &-x.clone()))?;
        (Direction::AtLeast, -t, -n, (hi, lo))
    };
    let confirmed = holds_at(spec, &threshold)? && !holds_at(spec, &neighbour)?;
    Ok(report(Region::Boundary { direction, threshold, neighbour, bracket, confirmed }))
}

/// Given `holds(lo)`, `!holds(hi)` and `holds` monotone on `[lo, hi]`, returns
/// the largest fraction with denominator `≤ max_den` that holds, and the
/// smallest one above it that fails.
///
/// Stern–Brocot descent on `x - floor(lo)`, taking whole runs of
/// same-direction steps by galloping.
pub fn last_holding(
    lo: &Rational,
    hi: &Rational,
    max_den: u64,
    mut holds: impl FnMut(&Rational) -> Result<bool>,
) -> Result<(Rational, Rational)> {
    let shift = lo.floor();
    let n = BigInt::from(max_den);
    let mut pred = |p: &BigInt, q: &BigInt| -> Result<bool> {
        let x = Rational::new(p.clone(), q.clone()) + &shift;
        if x <= *lo {
            Ok(true)
        } else if x >= *hi {
            Ok(false)
        } else {
            holds(&x)
        }
    };
    let (mut lp, mut lq) = (BigInt::zero(), BigInt::one());
    let (mut rp, mut rq) = (BigInt::one(), BigInt::zero());
    loop {
        let k = gallop(|k| {
            let q = &lq + &rq * k;
            if q > n {
                return Ok(false);
            }
            pred(&(&lp + &rp * k), &q)
        })?;
        if k > 0 {
            lp += &rp * k;
            lq += &rq * k;
        }
        let j = gallop(|j| {
            let q = &rq + &lq * j;
            if q > n {
                return Ok(false);
            }
            Ok(!pred(&(&rp + &lp * j), &q)?)
        })?;
        if j > 0 {
            rp += &lp * j;
            rq += &lq * j;
        }
        if k == 0 && j == 0 {
            break;
        }
    }
    let left = Rational::new(lp, lq) + &shift;
    let right = if rq.is_zero() { hi.clone() } else { Rational::new(rp, rq) + &shift };
    Ok((left, right))
}

/// Largest `k ≥ 0` with `ok(k)`, for `ok` true on a prefix of the naturals
/// and `ok(0)` assumed.
fn gallop(mut ok: impl FnMut(u64) -> Result<bool>) -> Result<u64> {
    let mut k = 0u64;
    let mut step = 1u64;
    while ok(k + step)? {
        k += step;
        step *= 2;
    }
    while step > 1 {
        step /= 2;
        if ok(k + step)? {
            k += step;
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use convex_order::rational::rat;

    fn below(c: Rational) -> impl FnMut(&Rational) -> Result<bool> {
        move |x| Ok(*x <= c)
    }

    #[test]
    fn finds_exact_boundary_inside_bracket() {
        let (t, n) = last_holding(&rat(3, 4), &rat(9, 10), 100, below(rat(5, 6))).unwrap();
        assert_eq!(t, rat(5, 6));
        assert!(n > rat(5, 6) && n <= rat(9, 10));
    }

    #[test]
    fn irrational_like_boundary_gives_best_lower_fraction() {
        // Largest fraction with denominator ≤ 10 below 0.7071
        let (t, n) = last_holding(&rat(0, 1), &rat(1, 1), 10, |x| Ok(x.clone() * x.clone() <= rat(1, 2))).unwrap();
        assert_eq!(t, rat(7, 10));
        assert_eq!(n, rat(5, 7));
    }

    #[test]
    fn tiny_denominator_bound() {
        let (t, _) = last_holding(&rat(1, 10), &rat(1, 2), 2, below(rat(2, 5))).unwrap();
        assert_eq!(t, rat(0, 1));
    }

    #[test]
    fn handles_negative_ranges() {
        let (t, _) = last_holding(&rat(-3, 2), &rat(-1, 5), 50, below(rat(-1, 3))).unwrap();
        assert_eq!(t, rat(-1, 3));
    }

    #[test]
    fn gallop_finds_prefix_end() {
        assert_eq!(gallop(|k| Ok(k <= 37)).unwrap(), 37);
        assert_eq!(gallop(|k| Ok(k == 0)).unwrap(), 0);
    }
}
