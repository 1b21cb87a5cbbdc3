//! Closed-form characterisations for three families of two-sided
//! quadrature inequalities on `[0,1]`, written in the `a·f(αx + (1-α)y)`
//! convention.
//!
//! * [`ThlHParams`]: three interior nodes below the integral mean.
//! * [`ThrHParams`]: both endpoints plus two interior nodes above the mean.
//! * [`ThqoParams`]: two interior nodes below a three-node rule with endpoints.
//!
//! Each checker reports the mean condition, the overall answer, and the
//! first satisfied case in the order the cases are listed. Case conditions
//! are transcribed literally, strict and non-strict inequalities included;
//! [`TheoremParams::functional_pair`] gives the pair for the generic decider
//! that arbitrates boundary configurations.

use std::fmt;

use crate::functional::Functional;
use crate::{Error, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl Case {
    const ALL: [Case; 8] = [Case::I, Case::II, Case::III, Case::IV, Case::V, Case::VI, Case::VII, Case::VIII];

    pub fn label(self) -> &'static str {
        match self {
            Case::I => "i",
            Case::II => "ii",
            Case::III => "iii",
            Case::IV => "iv",
            Case::V => "v",
            Case::VI => "vi",
            Case::VII => "vii",
            Case::VIII => "viii",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == label)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    ThlH,
    ThrH,
    Thqo,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::ThlH, Theorem::ThrH, Theorem::Thqo];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::ThlH => "thlH",
            Theorem::ThrH => "thrH",
            Theorem::Thqo => "thqo",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub mean_ok: bool,
    /// First satisfied case, reported even when the mean condition fails.
    pub case: Option<Case>,
}

impl Check {
    fn from_cases(mean_ok: bool, cases: &[bool]) -> Self {
        let case = Case::ALL.into_iter().zip(cases).find(|(_, ok)| **ok).map(|(c, _)| c);
        Self { holds: mean_ok && case.is_some(), mean_ok, case }
    }
}

fn open_unit<T: Scalar>(name: &str, x: &T) -> Result<(), Error> {
    if *x > T::zero() && *x < T::one() {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{name} = {x} must lie in (0,1)")))
    }
}

fn unit_sum<T: Scalar>(name: &str, xs: &[T]) -> Result<(), Error> {
    let total = xs.iter().fold(T::zero(), |acc, x| acc + x.clone());
    if total.approx_eq(&T::one()) {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{name} sum to {total}, expected 1")))
    }
}

fn between<T: PartialOrd>(x: &T, lo: &T, hi: &T) -> bool {
    lo < x && x < hi
}

/// `Σ aᵢ f(αᵢx + (1-αᵢ)y) ≤ mean`, three nodes, `α₁ > α₂ > α₃`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThlHParams<T> {
    pub a: [T; 3],
    pub alpha: [T; 3],
}

impl<T: Scalar> ThlHParams<T> {
    pub fn new(a: [T; 3], alpha: [T; 3]) -> Result<Self, Error> {
        for (i, x) in a.iter().enumerate() {
            open_unit(&format!("a{}", i + 1), x)?;
        }
        for (i, x) in alpha.iter().enumerate() {
            open_unit(&format!("alpha{}", i + 1), x)?;
        }
        unit_sum("a1..a3", &a)?;
        if !(alpha[0] > alpha[1] && alpha[1] > alpha[2]) {
            return Err(Error::Hypothesis("need alpha1 > alpha2 > alpha3".into()));
        }
        Ok(Self { a, alpha })
    }

    pub fn check(&self) -> Check {
        let [a1, a2, a3] = self.a.clone();
        let al3 = self.alpha[2].clone();
        let [u1, u2, u3] = self.alpha.clone().map(|x| T::one() - x);
        let two = T::one() + T::one();
        let s12 = a1.clone() + a2.clone();
        let mean = a1.clone() * u1.clone() + a2.clone() * u2.clone() + a3.clone() * u3.clone();
        let mean_ok = mean.approx_eq(&T::half());

        let tail = two.clone() * al3 >= a3;
        let head = u1 >= a1.clone() * T::half();
        let cases = [
            a1 <= u1 && s12 >= u3,
            a1 >= u2 && s12 >= u3,
            a1 <= u1 && s12 <= u2,
            a1 <= u1 && between(&s12, &u2, &u3) && tail,
            a1 >= u2 && s12 < u3 && tail,
            a1 > u1 && s12 <= u2 && head,
            between(&a1, &u1, &u2) && s12 >= u3 && head,
            between(&a1, &u1, &u2)
                && between(&s12, &u2, &u3)
                && head
                && two.clone() * a1 * u1 + two * a2 * u2 >= s12.clone() * s12,
        ];
        Check::from_cases(mean_ok, &cases)
    }
}

/// `a₁f(x) + a₂f(α₂x + (1-α₂)y) + a₃f(α₃x + (1-α₃)y) + a₄f(y) ≥ mean`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThrHParams<T> {
    pub a: [T; 4],
    pub alpha2: T,
    pub alpha3: T,
}

impl<T: Scalar> ThrHParams<T> {
    pub fn new(a: [T; 4], alpha2: T, alpha3: T) -> Result<Self, Error> {
        for (i, x) in a.iter().enumerate() {
            open_unit(&format!("a{}", i + 1), x)?;
        }
        open_unit("alpha2", &alpha2)?;
        open_unit("alpha3", &alpha3)?;
        unit_sum("a1..a4", &a)?;
        if alpha2 <= alpha3 {
            return Err(Error::Hypothesis("need alpha2 > alpha3".into()));
        }
        Ok(Self { a, alpha2, alpha3 })
    }

    pub fn check(&self) -> Check {
        let [a1, a2, a3, a4] = self.a.clone();
        let (al2, al3) = (self.alpha2.clone(), self.alpha3.clone());
        let (u2, u3) = (T::one() - al2.clone(), T::one() - al3.clone());
        let two = T::one() + T::one();
        let s12 = a1.clone() + a2.clone();
        let s123 = s12.clone() + a3.clone();
        let mean = a2.clone() * u2.clone() + a3 * u3.clone() + a4.clone();
        let mean_ok = mean.approx_eq(&T::half());

        let tail = al3.clone() <= two.clone() * a4;
        let head = two.clone() * a1.clone() + al2.clone() >= T::one();
        let cases = [
            a1 >= u2 && s12 >= u3,
            s12 <= u2 && s123 <= u3,
            u2 <= a1 && u3 >= s123,
            u2 <= a1 && between(&u3, &s12, &s123) && tail,
            u2 >= s12 && s123 > u3 && tail,
            a1 < u2 && s12 >= u3 && head,
            a1 < u2 && s12 > u2 && s123 <= u3 && head,
            between(&u2, &a1, &s12)
                && between(&u3, &s12, &s123)
                && head
                && two.clone() * a1 * u3.clone() + two * a2 * (al2 - al3) >= u3.clone() * u3,
        ];
        Check::from_cases(mean_ok, &cases)
    }
}

/// `a·f(α₁x + (1-α₁)y) + (1-a)·f(α₂x + (1-α₂)y) ≤ b₁f(x) + b₂f(βx + (1-β)y) + b₃f(y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThqoParams<T> {
    pub a: T,
    pub alpha1: T,
    pub alpha2: T,
    pub beta: T,
    pub b: [T; 3],
}

impl<T: Scalar> ThqoParams<T> {
    pub fn new(a: T, alpha1: T, alpha2: T, beta: T, b: [T; 3]) -> Result<Self, Error> {
        open_unit("a", &a)?;
        open_unit("alpha1", &alpha1)?;
        open_unit("alpha2", &alpha2)?;
        open_unit("beta", &beta)?;
        for (i, x) in b.iter().enumerate() {
            open_unit(&format!("b{}", i + 1), x)?;
        }
        unit_sum("b1..b3", &b)?;
        if alpha1 <= alpha2 {
            return Err(Error::Hypothesis("need alpha1 > alpha2".into()));
        }
        Ok(Self { a, alpha1, alpha2, beta, b })
    }

    pub fn check(&self) -> Check {
        let [b1, b2, b3] = self.b.clone();
        let a = self.a.clone();
        let lhs_mean = b2.clone() * (T::one() - self.beta.clone()) + b3;
        let rhs_mean = a.clone() * (T::one() - self.alpha1.clone())
            + (T::one() - a.clone()) * (T::one() - self.alpha2.clone());
        let mean_ok = lhs_mean.approx_eq(&rhs_mean);
        let s12 = b1.clone() + b2;
        let third = between(&a, &b1, &s12)
            && self.alpha2 < self.beta
            && (T::one() - self.alpha1.clone()) * b1.clone()
                >= (self.alpha1.clone() - self.beta.clone()) * (a.clone() - b1.clone());
        let cases = [a <= b1, a >= s12, self.alpha2 >= self.beta, third];
        Check::from_cases(mean_ok, &cases)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TheoremParams<T> {
    ThlH(ThlHParams<T>),
    ThrH(ThrHParams<T>),
    Thqo(ThqoParams<T>),
}

impl<T: Scalar> TheoremParams<T> {
    pub fn theorem(&self) -> Theorem {
        match self {
            Self::ThlH(_) => Theorem::ThlH,
            Self::ThrH(_) => Theorem::ThrH,
            Self::Thqo(_) => Theorem::Thqo,
        }
    }

    pub fn check(&self) -> Check {
        match self {
            Self::ThlH(p) => p.check(),
            Self::ThrH(p) => p.check(),
            Self::Thqo(p) => p.check(),
        }
    }

    /// `(A, B)` such that the inequality is exactly `A ≼ B`.
    pub fn functional_pair(&self) -> (Functional<T>, Functional<T>) {
        let build = |pairs: Vec<(T, T)>| Functional::from_paper_convention(pairs, T::zero()).expect("validated parameters");
        match self {
            Self::ThlH(p) => {
                let rule = build(p.a.iter().cloned().zip(p.alpha.iter().cloned()).collect());
                (rule, Functional::uniform())
            }
            Self::ThrH(p) => {
                let [a1, a2, a3, a4] = p.a.clone();
                let rule = build(vec![(a1, T::one()), (a2, p.alpha2.clone()), (a3, p.alpha3.clone()), (a4, T::zero())]);
                (Functional::uniform(), rule)
            }
            Self::Thqo(p) => {
                let lhs = build(vec![(p.a.clone(), p.alpha1.clone()), (T::one() - p.a.clone(), p.alpha2.clone())]);
                let [b1, b2, b3] = p.b.clone();
                let rhs = build(vec![(b1, T::one()), (b2, p.beta.clone()), (b3, T::zero())]);
                (lhs, rhs)
            }
        }
    }
}

pub fn check_thlh<T: Scalar>(p: &ThlHParams<T>) -> Check {
    p.check()
}

pub fn check_thrh<T: Scalar>(p: &ThrHParams<T>) -> Check {
    p.check()
}

pub fn check_thqo<T: Scalar>(p: &ThqoParams<T>) -> Check {
    p.check()
}
