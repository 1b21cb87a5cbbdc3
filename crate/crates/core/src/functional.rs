//! Quadrature functionals on `[0,1]`: finitely many weighted point
//! evaluations plus a weighted integral mean, with total mass one.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::pl::{Affine, PlFunction};
use crate::{Error, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Atom<T> {
    pub position: T,
    pub weight: T,
}

/// Probability functional `f ↦ Σ wᵢ f(tᵢ) + u ∫₀¹ f`.
///
/// Atoms are sorted by strictly increasing position and carry positive
/// weight; coincident atoms are merged on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional<T> {
    atoms: Vec<Atom<T>>,
    uniform: T,
}

/// Closed-form convex test functions.
#[derive(Clone, Debug, PartialEq)]
pub enum TestFunction<T> {
    /// `t ↦ max(t - s, 0)`
    Hinge(T),
    /// `t ↦ t²`
    Square,
    /// `t ↦ slope·t + intercept`
    Linear { slope: T, intercept: T },
    Constant(T),
}

impl<T: Scalar> TestFunction<T> {
    pub fn identity() -> Self {
        Self::Linear { slope: T::one(), intercept: T::zero() }
    }

    pub fn eval(&self, t: &T) -> T {
        match self {
            Self::Hinge(s) => {
                let d = t.clone() - s.clone();
                if d > T::zero() {
                    d
                } else {
                    T::zero()
                }
            }
            Self::Square => t.clone() * t.clone(),
            Self::Linear { slope, intercept } => slope.clone() * t.clone() + intercept.clone(),
            Self::Constant(c) => c.clone(),
        }
    }

    /// `∫₀¹ f(t) dt`.
    pub fn integral(&self) -> T {
        match self {
            Self::Hinge(s) => {
                if *s >= T::one() {
                    T::zero()
                } else if *s <= T::zero() {
                    T::half() - s.clone()
                } else {
                    let r = T::one() - s.clone();
                    r.clone() * r * T::half()
                }
            }
            Self::Square => T::ratio(1, 3),
            Self::Linear { slope, intercept } => slope.clone() * T::half() + intercept.clone(),
            Self::Constant(c) => c.clone(),
        }
    }
}

impl<T: Scalar> fmt::Display for TestFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Hinge(s) => write!(f, "hinge:{s}"),
            Self::Square => f.write_str("square"),
            Self::Linear { slope, intercept } => write!(f, "linear:{slope}:{intercept}"),
            Self::Constant(c) => write!(f, "constant:{c}"),
        }
    }
}

/// Parses `hinge:<s>`, `square`, `linear:<slope>[:<intercept>]`, `t`,
/// `constant:<c>`. Anything else is [`Error::UnsupportedTestFunction`].
impl FromStr for TestFunction<crate::Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        use crate::rational::parse_rational;
        let mut parts = s.trim().split(':');
        let head = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let unsupported = || Error::UnsupportedTestFunction(s.to_string());
        match (head, args.as_slice()) {
            ("hinge", [x]) => Ok(Self::Hinge(parse_rational(x)?)),
            ("square", []) => Ok(Self::Square),
            ("t", []) => Ok(Self::identity()),
            ("linear", [m]) => Ok(Self::Linear { slope: parse_rational(m)?, intercept: num_traits::Zero::zero() }),
            ("linear", [m, c]) => Ok(Self::Linear { slope: parse_rational(m)?, intercept: parse_rational(c)? }),
            ("constant", [c]) => Ok(Self::Constant(parse_rational(c)?)),
            _ => Err(unsupported()),
        }
    }
}

impl<T: Scalar> Functional<T> {
    /// Validates and normalises `(position, weight)` atoms plus an integral
    /// mean weight.
    pub fn new(atoms: impl IntoIterator<Item = (T, T)>, uniform: T) -> Result<Self, Error> {
        let mut raw: Vec<Atom<T>> = Vec::new();
        let mut total = uniform.clone();
        if uniform.sign() == Ordering::Less {
            return Err(Error::NegativeWeight(uniform.to_string()));
        }
        for (position, weight) in atoms {
            if position < T::zero() || position > T::one() {
                return Err(Error::Domain(position.to_string()));
            }
            if weight.sign() == Ordering::Less {
                return Err(Error::NegativeWeight(weight.to_string()));
            }
            total = total + weight.clone();
            raw.push(Atom { position, weight });
        }
        if !total.approx_eq(&T::one()) {
            return Err(Error::Mass(total.to_string()));
        }
        raw.sort_by(|a, b| a.position.partial_cmp(&b.position).unwrap_or(Ordering::Equal));
        let mut atoms: Vec<Atom<T>> = Vec::with_capacity(raw.len());
        for atom in raw {
            match atoms.last_mut() {
                Some(last) if last.position == atom.position => last.weight = last.weight.clone() + atom.weight,
                _ => atoms.push(atom),
            }
        }
        atoms.retain(|a| !a.weight.is_negligible());
        let uniform = if uniform.is_negligible() { T::zero() } else { uniform };
        Ok(Self { atoms, uniform })
    }

    /// Builds from the `a·f(αx + (1-α)y)` convention: each `(a, α)` pair
    /// becomes an atom of weight `a` at position `1 - α`.
    pub fn from_paper_convention(pairs: impl IntoIterator<Item = (T, T)>, uniform: T) -> Result<Self, Error> {
        Self::new(pairs.into_iter().map(|(a, alpha)| (T::one() - alpha, a)), uniform)
    }

    pub fn uniform() -> Self {
        Self { atoms: Vec::new(), uniform: T::one() }
    }

    pub fn midpoint() -> Self {
        Self { atoms: vec![Atom { position: T::half(), weight: T::one() }], uniform: T::zero() }
    }

    pub fn trapezoid() -> Self {
        Self::new([(T::zero(), T::half()), (T::one(), T::half())], T::zero()).expect("valid preset")
    }

    pub fn simpson() -> Self {
        Self::new(
            [(T::zero(), T::ratio(1, 6)), (T::half(), T::ratio(2, 3)), (T::one(), T::ratio(1, 6))],
            T::zero(),
        )
        .expect("valid preset")
    }

    /// Named presets: `uniform`, `midpoint`, `trapezoid`, `simpson`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "uniform" => Some(Self::uniform()),
            "midpoint" => Some(Self::midpoint()),
            "trapezoid" => Some(Self::trapezoid()),
            "simpson" => Some(Self::simpson()),
            _ => None,
        }
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn uniform_weight(&self) -> &T {
        &self.uniform
    }

    /// Right-continuous distribution function of the underlying measure.
    pub fn cdf(&self) -> PlFunction<T> {
        let mut breakpoints = vec![T::zero()];
        breakpoints.extend(
            self.atoms
                .iter()
                .map(|a| a.position.clone())
                .filter(|p| *p > T::zero() && *p < T::one()),
        );
        breakpoints.push(T::one());

        let mut pieces = Vec::with_capacity(breakpoints.len() - 1);
        let mut mass = T::zero();
        let mut next_atom = 0;
        for start in &breakpoints[..breakpoints.len() - 1] {
            while next_atom < self.atoms.len() && self.atoms[next_atom].position <= *start {
                mass = mass + self.atoms[next_atom].weight.clone();
                next_atom += 1;
            }
            pieces.push(Affine::new(self.uniform.clone(), mass.clone()));
        }
        PlFunction::from_parts(breakpoints, pieces, T::zero(), T::one())
    }

    /// Mean of the underlying measure, `∫ t dF`.
    pub fn barycenter(&self) -> T {
        self.atoms
            .iter()
            .fold(self.uniform.clone() * T::half(), |acc, a| acc + a.weight.clone() * a.position.clone())
    }

    pub fn evaluate(&self, f: &TestFunction<T>) -> T {
        self.atoms
            .iter()
            .fold(self.uniform.clone() * f.integral(), |acc, a| acc + a.weight.clone() * f.eval(&a.position))
    }

    /// `λ·self + (1-λ)·other`, for `λ ∈ [0,1]`.
    pub fn mix(&self, other: &Self, lambda: &T) -> Result<Self, Error> {
        let rest = T::one() - lambda.clone();
        let atoms = self
            .atoms
            .iter()
            .map(|a| (a.position.clone(), lambda.clone() * a.weight.clone()))
            .chain(other.atoms.iter().map(|a| (a.position.clone(), rest.clone() * a.weight.clone())));
        let uniform = lambda.clone() * self.uniform.clone() + rest.clone() * other.uniform.clone();
        Self::new(atoms, uniform)
    }

    /// Pulls atoms given on `[lo, hi]` back to `[0,1]` via `t ↦ (t - lo)/(hi - lo)`.
    pub fn rescaled_from(atoms: impl IntoIterator<Item = (T, T)>, uniform: T, lo: &T, hi: &T) -> Result<Self, Error> {
        if hi <= lo {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        let width = hi.clone() - lo.clone();
        let mut mapped = Vec::new();
        for (t, w) in atoms {
            if t < *lo || t > *hi {
                return Err(Error::Domain(format!("{t} outside [{lo}, {hi}]")));
            }
            mapped.push(((t - lo.clone()) / width.clone(), w));
        }
        Self::new(mapped, uniform)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::Rational;

    type Frac = (i64, i64);

    fn f(atoms: &[(Frac, Frac)], uniform: Frac) -> Result<Functional<Rational>, Error> {
        Functional::new(atoms.iter().map(|&(t, w)| (rat(t.0, t.1), rat(w.0, w.1))), rat(uniform.0, uniform.1))
    }

    #[test]
    fn single_atom_midpoint() {
        let m = f(&[((1, 2), (1, 1))], (0, 1)).unwrap();
        assert_eq!(m, Functional::midpoint());
    }

    #[test]
    fn coincident_atoms_merge() {
        let m = f(&[((3, 4), (1, 2)), ((1, 4), (1, 3)), ((1, 4), (1, 6))], (0, 1)).unwrap();
        let expect = [(rat(1, 4), rat(1, 2)), (rat(3, 4), rat(1, 2))];
        assert_eq!(m.atoms().len(), 2);
        for (atom, (t, w)) in m.atoms().iter().zip(expect) {
            assert_eq!((atom.position.clone(), atom.weight.clone()), (t, w));
        }
    }

    #[test]
    fn zero_weights_drop() {
        let m = f(&[((1, 3), (0, 1)), ((1, 2), (1, 1))], (0, 1)).unwrap();
        assert_eq!(m, Functional::midpoint());
    }

    #[test]
    fn simpson_preset_matches_explicit() {
        let s = f(&[((0, 1), (1, 6)), ((1, 2), (2, 3)), ((1, 1), (1, 6))], (0, 1)).unwrap();
        assert_eq!(s, Functional::simpson());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(f(&[((1, 2), (1, 2))], (0, 1)), Err(Error::Mass(_))));
        assert!(matches!(f(&[((3, 2), (1, 1))], (0, 1)), Err(Error::Domain(_))));
        assert!(matches!(f(&[((-1, 2), (1, 1))], (0, 1)), Err(Error::Domain(_))));
        assert!(matches!(f(&[((1, 2), (3, 2)), ((1, 4), (-1, 2))], (0, 1)), Err(Error::NegativeWeight(_))));
        assert!(matches!(f(&[((1, 2), (3, 2))], (-1, 2)), Err(Error::NegativeWeight(_))));
    }

    #[test]
    fn paper_convention_positions() {
        let end = Functional::from_paper_convention([(rat(1, 1), rat(1, 1))], rat(0, 1)).unwrap();
        assert_eq!(end.atoms()[0].position, rat(0, 1));

        let ex1 = Functional::from_paper_convention(
            [(rat(1, 4), rat(3, 4)), (rat(1, 2), rat(1, 2)), (rat(1, 4), rat(1, 4))],
            rat(0, 1),
        )
        .unwrap();
        let got: Vec<_> = ex1.atoms().iter().map(|a| (a.position.clone(), a.weight.clone())).collect();
        assert_eq!(got, vec![(rat(1, 4), rat(1, 4)), (rat(1, 2), rat(1, 2)), (rat(3, 4), rat(1, 4))]);

        let sym = Functional::from_paper_convention([(rat(1, 2), rat(9, 10)), (rat(1, 2), rat(1, 10))], rat(0, 1)).unwrap();
        let got: Vec<_> = sym.atoms().iter().map(|a| a.position.clone()).collect();
        assert_eq!(got, vec![rat(1, 10), rat(9, 10)]);
    }

    #[test]
    fn cdf_shapes() {
        let step = Functional::<Rational>::midpoint().cdf();
        assert_eq!(step.value(&rat(0, 1)), rat(0, 1));
        assert_eq!(step.value(&rat(49, 100)), rat(0, 1));
        assert_eq!(step.value(&rat(1, 2)), rat(1, 1));
        assert_eq!(step.value(&rat(1, 1)), rat(1, 1));

        let ramp = Functional::<Rational>::uniform().cdf();
        for k in 0..=10 {
            assert_eq!(ramp.value(&rat(k, 10)), rat(k, 10));
        }

        let mixed = f(&[((1, 2), (1, 2))], (1, 2)).unwrap().cdf();
        assert_eq!(mixed.value(&rat(1, 4)), rat(1, 8));
        assert_eq!(mixed.left_limit(&rat(1, 2)), rat(1, 4));
        assert_eq!(mixed.value(&rat(1, 2)), rat(3, 4));
        assert_eq!(mixed.value(&rat(1, 1)), rat(1, 1));
    }

    #[test]
    fn cdf_with_endpoint_atoms() {
        let trap = Functional::<Rational>::trapezoid().cdf();
        assert_eq!(trap.value(&rat(-1, 10)), rat(0, 1));
        assert_eq!(trap.value(&rat(0, 1)), rat(1, 2));
        assert_eq!(trap.left_limit(&rat(1, 1)), rat(1, 2));
        assert_eq!(trap.value(&rat(1, 1)), rat(1, 1));
        assert!(trap.is_nondecreasing());
    }

    #[test]
    fn barycenters() {
        assert_eq!(Functional::<Rational>::midpoint().barycenter(), rat(1, 2));
        assert_eq!(Functional::<Rational>::simpson().barycenter(), rat(1, 2));
        assert_eq!(f(&[((1, 10), (1, 2)), ((9, 10), (1, 2))], (0, 1)).unwrap().barycenter(), rat(1, 2));
        assert_eq!(f(&[((0, 1), (1, 1))], (0, 1)).unwrap().barycenter(), rat(0, 1));
    }

    #[test]
    fn evaluations() {
        let half = TestFunction::Hinge(rat(1, 2));
        assert_eq!(Functional::<Rational>::midpoint().evaluate(&half), rat(0, 1));
        assert_eq!(Functional::<Rational>::uniform().evaluate(&half), rat(1, 8));
        assert_eq!(Functional::<Rational>::simpson().evaluate(&TestFunction::Square), rat(1, 3));
        assert_eq!(Functional::<Rational>::trapezoid().evaluate(&half), rat(1, 4));
        assert_eq!(Functional::<Rational>::uniform().evaluate(&TestFunction::Constant(rat(7, 1))), rat(7, 1));
    }

    #[test]
    fn hinge_integral_outside_unit_interval() {
        assert_eq!(TestFunction::Hinge(rat(-1, 1)).integral(), rat(3, 2));
        assert_eq!(TestFunction::Hinge(rat(2, 1)).integral(), rat(0, 1));
    }

    #[test]
    fn test_function_parsing() {
        assert_eq!("hinge:1/2".parse::<TestFunction<Rational>>().unwrap(), TestFunction::Hinge(rat(1, 2)));
        assert_eq!("square".parse::<TestFunction<Rational>>().unwrap(), TestFunction::Square);
        assert_eq!("t".parse::<TestFunction<Rational>>().unwrap(), TestFunction::identity());
        assert!(matches!("exp".parse::<TestFunction<Rational>>(), Err(Error::UnsupportedTestFunction(_))));
        assert!(matches!("hinge".parse::<TestFunction<Rational>>(), Err(Error::UnsupportedTestFunction(_))));
    }

    #[test]
    fn interval_rescaling() {
        let m = Functional::rescaled_from([(rat(3, 1), rat(1, 1))], rat(0, 1), &rat(2, 1), &rat(4, 1)).unwrap();
        assert_eq!(m, Functional::midpoint());
        assert!(Functional::rescaled_from([(rat(5, 1), rat(1, 1))], rat(0, 1), &rat(2, 1), &rat(4, 1)).is_err());
    }

    #[test]
    fn float_instantiation_works() {
        let s = Functional::<f64>::simpson();
        assert!((s.evaluate(&TestFunction::Square) - 1.0 / 3.0).abs() < 1e-15);
        let g = Functional::<f64>::new([(0.1, 0.3), (0.7, 0.7000000000000001)], 0.0).unwrap();
        assert_eq!(g.atoms().len(), 2);
    }
}
