//! Convex-order decisions between two functionals.
//!
//! `A ≼ B` means `A(f) ≤ B(f)` for every convex `f` on `[0,1]`. With
//! `D = F_A - F_B` and `G(s) = ∫₀ˢ D`, this holds exactly when `G(1) = 0` and
//! `G ≤ 0` on `[0,1]` ([`decide_cumulative`]). The crossing analysis of `D`
//! ([`decide_lemma`]) reaches the same answer through alternating area sums
//! and serves as an independent cross-check.

use std::cmp::Ordering;
use std::fmt;

use crate::functional::{Functional, TestFunction};
use crate::pl::{Affine, PlFunction};
use crate::{Error, Scalar};

/// `c0 + c1·s + c2·s²` in absolute coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic<T> {
    pub c0: T,
    pub c1: T,
    pub c2: T,
}

impl<T: Scalar> Quadratic<T> {
    pub fn eval(&self, s: &T) -> T {
        (self.c2.clone() * s.clone() + self.c1.clone()) * s.clone() + self.c0.clone()
    }

    pub fn derivative(&self) -> Affine<T> {
        Affine::new(self.c2.clone() + self.c2.clone(), self.c1.clone())
    }

    /// Antiderivative of `piece` that takes `value` at `start`.
    fn integrate(piece: &Affine<T>, start: &T, value: T) -> Self {
        let c2 = piece.slope.clone() * T::half();
        let c1 = piece.intercept.clone();
        let c0 = value - (c2.clone() * start.clone() + c1.clone()) * start.clone();
        Self { c0, c1, c2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Positive => 1,
        }
    }

    fn of<T: Scalar>(x: &T) -> Option<Self> {
        match x.sign() {
            Ordering::Less => Some(Sign::Negative),
            Ordering::Greater => Some(Sign::Positive),
            Ordering::Equal => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-1",
            Sign::Positive => "+1",
        })
    }
}

/// `D = F_A - F_B` together with its exact antiderivative `G`.
#[derive(Clone, Debug)]
pub struct DiffFunction<T> {
    diff: PlFunction<T>,
    antiderivative: Vec<Quadratic<T>>,
}

impl<T: Scalar> DiffFunction<T> {
    pub fn diff(&self) -> &PlFunction<T> {
        &self.diff
    }

    /// One quadratic per segment of [`DiffFunction::diff`].
    pub fn antiderivative(&self) -> &[Quadratic<T>] {
        &self.antiderivative
    }

    pub fn is_zero(&self) -> bool {
        self.diff.is_zero()
    }

    /// `G(s)` for `s ∈ [0,1]`; clamps outside.
    pub fn g(&self, s: &T) -> T {
        if *s <= T::zero() {
            return T::zero();
        }
        let bps = self.diff.breakpoints();
        let i = bps.partition_point(|b| b < s).saturating_sub(1).min(self.antiderivative.len() - 1);
        let s = if *s > T::one() { T::one() } else { s.clone() };
        self.antiderivative[i].eval(&s)
    }

    /// `G(1) = mean(B) - mean(A)`.
    pub fn total(&self) -> T {
        self.antiderivative.last().expect("at least one segment").eval(&T::one())
    }

    /// Every point where `G` can attain a local maximum: all breakpoints and
    /// each interior zero of a decreasing piece of `D`, in increasing order.
    pub fn extremum_candidates(&self) -> Vec<T> {
        let mut out = Vec::new();
        for (start, end, piece) in self.diff.segments() {
            out.push(start.clone());
            if piece.slope.sign() == Ordering::Less {
                if let Some(root) = piece.interior_root(start, end) {
                    out.push(root);
                }
            }
        }
        out.push(T::one());
        out
    }

    /// Maximiser of `G` on `[0,1]`, smallest `s` on ties.
    pub fn argmax(&self) -> (T, T) {
        let mut best: Option<(T, T)> = None;
        for s in self.extremum_candidates() {
            let value = self.g(&s);
            if best.as_ref().is_none_or(|(_, v)| value.clone() - v.clone() > T::tolerance()) {
                best = Some((s, value));
            }
        }
        best.expect("candidate set is never empty")
    }

    /// `G` starts at zero, is continuous at every breakpoint and
    /// differentiates to `D` on each segment.
    pub fn is_consistent(&self) -> bool {
        let bps = self.diff.breakpoints();
        let starts_at_zero = self.antiderivative[0].eval(&T::zero()).is_negligible();
        let continuous = (1..self.antiderivative.len())
            .all(|i| self.antiderivative[i - 1].eval(&bps[i]).approx_eq(&self.antiderivative[i].eval(&bps[i])));
        let derivative_matches = self.antiderivative.iter().zip(self.diff.pieces()).all(|(q, p)| {
            let d = q.derivative();
            d.slope.approx_eq(&p.slope) && d.intercept.approx_eq(&p.intercept)
        });
        starts_at_zero && continuous && derivative_matches
    }
}

pub fn difference<T: Scalar>(a: &Functional<T>, b: &Functional<T>) -> DiffFunction<T> {
    let diff = a.cdf().sub(&b.cdf());
    let mut antiderivative = Vec::with_capacity(diff.pieces().len());
    let mut value = T::zero();
    for (start, end, piece) in diff.segments() {
        let q = Quadratic::integrate(piece, start, value);
        value = q.eval(end);
        antiderivative.push(q);
    }
    DiffFunction { diff, antiderivative }
}

/// Sign-change structure of `D`: crossing points `x₁ < … < xₙ`, absolute
/// areas `A₀ … Aₙ` of `|D|` between consecutive crossings, and the sign of
/// `D` before the first crossing.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossingProfile<T> {
    pub points: Vec<T>,
    pub areas: Vec<T>,
    pub initial_sign: Sign,
}

impl<T: Scalar> CrossingProfile<T> {
    pub fn crossings(&self) -> usize {
        self.points.len()
    }

    /// Sign of `D` on the `i`-th inter-crossing interval.
    pub fn sign_of(&self, i: usize) -> Sign {
        match (self.initial_sign, i % 2) {
            (s, 0) => s,
            (Sign::Negative, _) => Sign::Positive,
            (Sign::Positive, _) => Sign::Negative,
        }
    }

    /// `Σ ±Aᵢ`, which equals `G(1)`.
    pub fn signed_total(&self) -> T {
        self.areas.iter().enumerate().fold(T::zero(), |acc, (i, area)| match self.sign_of(i) {
            Sign::Positive => acc + area.clone(),
            Sign::Negative => acc - area.clone(),
        })
    }
}

pub fn crossing_profile<T: Scalar>(d: &DiffFunction<T>) -> Result<CrossingProfile<T>, Error> {
    if d.is_zero() {
        return Err(Error::DegenerateDifference);
    }
    // (start, sign, |area|) for each stretch where D keeps one strict sign;
    // stretches with D ≡ 0 are skipped and so fold into the preceding group.
    let mut groups: Vec<(T, Sign, T)> = Vec::new();
    for ((start, end, piece), q) in d.diff.segments().zip(&d.antiderivative) {
        let mut cuts = vec![start.clone()];
        cuts.extend(piece.interior_root(start, end));
        cuts.push(end.clone());
        for w in cuts.windows(2) {
            let mid = (w[0].clone() + w[1].clone()) * T::half();
            let Some(sign) = Sign::of(&piece.eval(&mid)) else { continue };
            let area = (q.eval(&w[1]) - q.eval(&w[0])).abs();
            match groups.last_mut() {
                Some((_, s, total)) if *s == sign => *total = total.clone() + area,
                _ => groups.push((w[0].clone(), sign, area)),
            }
        }
    }
    let initial_sign = groups.first().map(|g| g.1).ok_or(Error::DegenerateDifference)?;
    let points = groups.iter().skip(1).map(|g| g.0.clone()).collect();
    let areas = groups.into_iter().map(|g| g.2).collect();
    Ok(CrossingProfile { points, areas, initial_sign })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness<T> {
    /// Means differ: `f(t) = direction·t` separates the functionals.
    Linear { direction: Sign },
    /// `A(h_s) - B(h_s) = gap > 0` for the hinge `h_s(t) = max(t - s, 0)`.
    Hinge { s: T, gap: T },
}

impl<T: Scalar> Witness<T> {
    pub fn test_function(&self) -> TestFunction<T> {
        match self {
            Witness::Linear { direction: Sign::Positive } => TestFunction::identity(),
            Witness::Linear { direction: Sign::Negative } => TestFunction::Linear { slope: -T::one(), intercept: T::zero() },
            Witness::Hinge { s, .. } => TestFunction::Hinge(s.clone()),
        }
    }

    /// Re-evaluates both functionals on the witness function. Hinge witnesses
    /// must reproduce `gap` exactly; linear ones must show a strict violation.
    pub fn verify(&self, a: &Functional<T>, b: &Functional<T>) -> bool {
        let f = self.test_function();
        let excess = a.evaluate(&f) - b.evaluate(&f);
        match self {
            Witness::Linear { .. } => excess.sign() == Ordering::Greater,
            Witness::Hinge { gap, .. } => gap.sign() == Ordering::Greater && excess.approx_eq(gap),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<T> {
    Holds,
    /// `D ≡ 0`: the two functionals coincide.
    Equal,
    Fails(Witness<T>),
}

impl<T> Verdict<T> {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::Fails(_))
    }

    pub fn outcome(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Equal => "equal",
            Verdict::Fails(_) => "fails",
        }
    }

    pub fn witness(&self) -> Option<&Witness<T>> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }
}

/// Ground-truth decision through the cumulative integral `G`.
pub fn decide_cumulative<T: Scalar>(a: &Functional<T>, b: &Functional<T>) -> Verdict<T> {
    decide_cumulative_with(&difference(a, b))
}

fn decide_cumulative_with<T: Scalar>(d: &DiffFunction<T>) -> Verdict<T> {
    if d.is_zero() {
        return Verdict::Equal;
    }
    match Sign::of(&d.total()) {
        // G(1) = mean(B) - mean(A); the identity separates toward the larger mean.
        Some(Sign::Positive) => return Verdict::Fails(Witness::Linear { direction: Sign::Negative }),
        Some(Sign::Negative) => return Verdict::Fails(Witness::Linear { direction: Sign::Positive }),
        None => {}
    }
    let (s, peak) = d.argmax();
    if peak.sign() == Ordering::Greater {
        Verdict::Fails(Witness::Hinge { s, gap: peak })
    } else {
        Verdict::Holds
    }
}

/// Decision through the crossing profile and alternating area sums.
///
/// Requires equal means and `D ≢ 0`. Fails whenever `D` is positive first or
/// crosses an even number of times; otherwise checks
/// `A₀ - A₁ + … + A_{2m-2} ≥ A_{2m-1}` for `m = 1 … (n-1)/2`.
pub fn decide_lemma<T: Scalar>(a: &Functional<T>, b: &Functional<T>) -> Result<Verdict<T>, Error> {
    decide_lemma_with(&difference(a, b))
}

fn decide_lemma_with<T: Scalar>(d: &DiffFunction<T>) -> Result<Verdict<T>, Error> {
    if d.is_zero() {
        return Err(Error::DegenerateDifference);
    }
    if !d.total().is_negligible() {
        return Err(Error::MeansDiffer(d.total().to_string()));
    }
    let profile = crossing_profile(d)?;
    Ok(lemma_verdict(&profile))
}

fn lemma_verdict<T: Scalar>(profile: &CrossingProfile<T>) -> Verdict<T> {
    let n = profile.crossings();
    let areas = &profile.areas;
    if profile.initial_sign == Sign::Positive {
        // G rises on the first interval, so G(x₁) = A₀ > 0.
        let s = profile.points.first().cloned().unwrap_or_else(T::one);
        return Verdict::Fails(Witness::Hinge { s, gap: areas[0].clone() });
    }
    if n.is_multiple_of(2) {
        // The last interval is negative again, so G(xₙ) = Aₙ > 0.
        return Verdict::Fails(Witness::Hinge { s: profile.points[n - 1].clone(), gap: areas[n].clone() });
    }
    // G(x_{2m}) = -(A₀ - A₁ + … + A_{2m-2} - A_{2m-1}).
    let mut running = T::zero();
    for m in 1..=(n - 1) / 2 {
        running = running + areas[2 * m - 2].clone() - areas[2 * m - 1].clone();
        if running.sign() == Ordering::Less {
            return Verdict::Fails(Witness::Hinge { s: profile.points[2 * m - 1].clone(), gap: -running });
        }
    }
    Verdict::Holds
}

/// Full result of [`decide`].
#[derive(Clone, Debug, PartialEq)]
pub struct Decision<T> {
    pub verdict: Verdict<T>,
    /// Present whenever `D ≢ 0`.
    pub crossings: Option<CrossingProfile<T>>,
    /// Lemma-path verdict, filled in diagnostic mode when applicable.
    pub lemma: Option<Verdict<T>>,
}

/// Decides `a ≼ b`. With `diagnose`, also runs the crossing-count path and
/// reports [`Error::InternalDisagreement`] if the two outcomes differ.
pub fn decide<T: Scalar>(a: &Functional<T>, b: &Functional<T>, diagnose: bool) -> Result<Decision<T>, Error> {
    let d = difference(a, b);
    let verdict = decide_cumulative_with(&d);
    let crossings = if d.is_zero() { None } else { Some(crossing_profile(&d)?) };
    let lemma = if diagnose && !d.is_zero() && d.total().is_negligible() {
        let lemma = decide_lemma_with(&d)?;
        if lemma.holds() != verdict.holds() {
            return Err(Error::InternalDisagreement(format!(
                "cumulative path says {}, crossing path says {}",
                verdict.outcome(),
                lemma.outcome()
            )));
        }
        Some(lemma)
    } else {
        None
    };
    Ok(Decision { verdict, crossings, lemma })
}
