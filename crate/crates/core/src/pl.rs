//! Piecewise-affine, possibly discontinuous functions on `[0,1]`.
//!
//! Convention: right-continuous. Segment `i` covers `[b_i, b_{i+1})`, the
//! value at `t = 1` is stored separately, and `t < 0` maps to `before`.

use std::cmp::Ordering;

use crate::Scalar;

/// `slope * t + intercept`, in absolute coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine<T> {
    pub slope: T,
    pub intercept: T,
}

impl<T: Scalar> Affine<T> {
    pub fn new(slope: T, intercept: T) -> Self {
        Self { slope, intercept }
    }

    pub fn constant(value: T) -> Self {
        Self::new(T::zero(), value)
    }

    pub fn eval(&self, t: &T) -> T {
        self.slope.clone() * t.clone() + self.intercept.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.slope.is_negligible() && self.intercept.is_negligible()
    }

    /// Root strictly inside `(lo, hi)`, if the line crosses zero there.
    pub fn interior_root(&self, lo: &T, hi: &T) -> Option<T> {
        if self.slope.is_negligible() {
            return None;
        }
        let root = -self.intercept.clone() / self.slope.clone();
        (root > *lo && root < *hi).then_some(root)
    }

    fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.slope.clone() - other.slope.clone(),
            self.intercept.clone() - other.intercept.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlFunction<T> {
    breakpoints: Vec<T>,
    pieces: Vec<Affine<T>>,
    before: T,
    at_end: T,
}

impl<T: Scalar> PlFunction<T> {
    /// Builds from breakpoints `0 = b_0 < … < b_m = 1` and one affine piece per
    /// segment. Panics if the shape is inconsistent; callers own the invariant.
    pub fn from_parts(breakpoints: Vec<T>, pieces: Vec<Affine<T>>, before: T, at_end: T) -> Self {
        assert!(breakpoints.len() >= 2, "need at least the two endpoints");
        assert_eq!(pieces.len() + 1, breakpoints.len(), "one piece per segment");
        assert!(breakpoints[0].is_zero() && breakpoints[breakpoints.len() - 1].is_one());
        assert!(
            breakpoints.windows(2).all(|w| w[0] < w[1]),
            "breakpoints must be strictly increasing"
        );
        Self { breakpoints, pieces, before, at_end }
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Affine<T>] {
        &self.pieces
    }

    /// `(start, end, piece)` for every segment.
    pub fn segments(&self) -> impl Iterator<Item = (&T, &T, &Affine<T>)> {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .map(|(w, p)| (&w[0], &w[1], p))
    }

    fn segment_index(&self, t: &T) -> usize {
        // last i with b_i <= t, clamped to the final segment
        let i = self.breakpoints.partition_point(|b| b <= t);
        i.saturating_sub(1).min(self.pieces.len() - 1)
    }

    pub fn value(&self, t: &T) -> T {
        if *t < T::zero() {
            return self.before.clone();
        }
        if *t >= T::one() {
            return self.at_end.clone();
        }
        self.pieces[self.segment_index(t)].eval(t)
    }

    pub fn left_limit(&self, t: &T) -> T {
        if *t <= T::zero() {
            return self.before.clone();
        }
        if *t > T::one() {
            return self.at_end.clone();
        }
        let i = self.breakpoints.partition_point(|b| b < t) - 1;
        self.pieces[i].eval(t)
    }

    /// Jump `f(b) - f(b⁻)` at each breakpoint, in breakpoint order.
    pub fn jumps(&self) -> Vec<(T, T)> {
        self.breakpoints
            .iter()
            .map(|b| (b.clone(), self.value(b) - self.left_limit(b)))
            .collect()
    }

    /// Pointwise difference on the merged breakpoint set.
    pub fn sub(&self, other: &Self) -> Self {
        let mut merged: Vec<T> = Vec::with_capacity(self.breakpoints.len() + other.breakpoints.len());
        let (mut i, mut j) = (0, 0);
        while i < self.breakpoints.len() || j < other.breakpoints.len() {
            let next = match (self.breakpoints.get(i), other.breakpoints.get(j)) {
                (Some(a), Some(b)) => match a.partial_cmp(b).unwrap_or(Ordering::Equal) {
                    Ordering::Less => {
                        i += 1;
                        a.clone()
                    }
                    Ordering::Greater => {
                        j += 1;
                        b.clone()
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        a.clone()
                    }
                },
                (Some(a), None) => {
                    i += 1;
                    a.clone()
                }
                (None, Some(b)) => {
                    j += 1;
                    b.clone()
                }
                (None, None) => unreachable!(),
            };
            merged.push(next);
        }
        let pieces = merged[..merged.len() - 1]
            .iter()
            .map(|start| {
                let lhs = &self.pieces[self.segment_index(start)];
                let rhs = &other.pieces[other.segment_index(start)];
                lhs.sub(rhs)
            })
            .collect();
        Self::from_parts(
            merged,
            pieces,
            self.before.clone() - other.before.clone(),
            self.at_end.clone() - other.at_end.clone(),
        )
    }

    /// Identically zero on `[0,1)` and at both ends.
    pub fn is_zero(&self) -> bool {
        self.before.is_negligible() && self.at_end.is_negligible() && self.pieces.iter().all(Affine::is_zero)
    }

    /// Monotone check: no negative slope and no downward jump.
    pub fn is_nondecreasing(&self) -> bool {
        self.pieces.iter().all(|p| p.slope.sign() != Ordering::Less)
            && self.jumps().iter().all(|(_, jump)| jump.sign() != Ordering::Less)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::Rational;

    fn step_at_half() -> PlFunction<Rational> {
        PlFunction::from_parts(
            vec![rat(0, 1), rat(1, 2), rat(1, 1)],
            vec![Affine::constant(rat(0, 1)), Affine::constant(rat(1, 1))],
            rat(0, 1),
            rat(1, 1),
        )
    }

    fn ramp() -> PlFunction<Rational> {
        PlFunction::from_parts(vec![rat(0, 1), rat(1, 1)], vec![Affine::new(rat(1, 1), rat(0, 1))], rat(0, 1), rat(1, 1))
    }

    #[test]
    fn right_continuous_values() {
        let f = step_at_half();
        assert_eq!(f.value(&rat(1, 2)), rat(1, 1));
        assert_eq!(f.left_limit(&rat(1, 2)), rat(0, 1));
        assert_eq!(f.value(&rat(-1, 1)), rat(0, 1));
        assert_eq!(f.value(&rat(1, 1)), rat(1, 1));
        assert_eq!(f.jumps()[1], (rat(1, 2), rat(1, 1)));
    }

    #[test]
    fn difference_merges_breakpoints() {
        let d = step_at_half().sub(&ramp());
        assert_eq!(d.breakpoints(), &[rat(0, 1), rat(1, 2), rat(1, 1)]);
        assert_eq!(d.value(&rat(1, 4)), rat(-1, 4));
        assert_eq!(d.value(&rat(3, 4)), rat(1, 4));
        assert_eq!(d.value(&rat(1, 1)), rat(0, 1));
        assert!(!d.is_zero());
        assert!(step_at_half().sub(&step_at_half()).is_zero());
    }

    #[test]
    fn monotonicity() {
        assert!(step_at_half().is_nondecreasing());
        assert!(!step_at_half().sub(&ramp()).is_nondecreasing());
    }

    #[test]
    fn interior_roots_exclude_endpoints() {
        let line = Affine::new(rat(-1, 1), rat(1, 2));
        assert_eq!(line.interior_root(&rat(0, 1), &rat(1, 1)), Some(rat(1, 2)));
        assert_eq!(line.interior_root(&rat(1, 2), &rat(1, 1)), None);
        assert_eq!(Affine::constant(rat(1, 1)).interior_root(&rat(0, 1), &rat(1, 1)), None);
    }
}
