//! Brute-force verifier. Evaluates both functionals directly on hinge
//! functions and a few smooth convex functions, without going through the
//! CDF difference or its antiderivative.

use std::cmp::Ordering;

use crate::functional::{Functional, TestFunction};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport<T> {
    pub tested_functions: usize,
    /// Largest `A(f) - B(f)` seen, or zero.
    pub max_violation: T,
    /// Hinge location of the worst violation, when it came from a hinge.
    pub worst_s: Option<T>,
    /// `A(t²) - B(t²)`. Kept apart from `max_violation` because it mixes
    /// every hinge at once and so is not a sharp measure of the gap.
    pub square_excess: T,
}

impl<T: Scalar> OracleReport<T> {
    pub fn clean(&self) -> bool {
        self.max_violation.is_negligible()
    }
}

/// Probes `a ≼ b` on `h_s` for every `s` in `s_grid`, plus `t` and `-t`
/// (mean equality) and `t²`.
pub fn oracle_decide<T: Scalar>(a: &Functional<T>, b: &Functional<T>, s_grid: &[T]) -> OracleReport<T> {
    let square_excess = a.evaluate(&TestFunction::Square) - b.evaluate(&TestFunction::Square);
    let mut report = OracleReport { tested_functions: 1, max_violation: T::zero(), worst_s: None, square_excess };
    let mut probe = |f: TestFunction<T>, s: Option<&T>| {
        report.tested_functions += 1;
        let excess = a.evaluate(&f) - b.evaluate(&f);
        if excess.clone() - report.max_violation.clone() > T::tolerance() {
            report.max_violation = excess;
            report.worst_s = s.cloned();
        }
    };
    for s in s_grid {
        probe(TestFunction::Hinge(s.clone()), Some(s));
    }
    probe(TestFunction::identity(), None);
    probe(TestFunction::Linear { slope: -T::one(), intercept: T::zero() }, None);
    report
}

/// Finite grid that contains a violating hinge location whenever one
/// exists: every node where the two CDFs jump differently, the midpoint of
/// each gap between such nodes, and each zero of the CDF difference.
pub fn refine_grid<T: Scalar>(a: &Functional<T>, b: &Functional<T>) -> Vec<T> {
    // Net jump of F_A - F_B at each position.
    let mut jumps: Vec<(T, T)> = a
        .atoms()
        .iter()
        .map(|x| (x.position.clone(), x.weight.clone()))
        .chain(b.atoms().iter().map(|x| (x.position.clone(), -x.weight.clone())))
        .collect();
    jumps.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
    let mut net: Vec<(T, T)> = Vec::new();
    for (t, w) in jumps {
        match net.last_mut() {
            Some((last, acc)) if *last == t => *acc = acc.clone() + w,
            _ => net.push((t, w)),
        }
    }
    net.retain(|(_, w)| !w.is_negligible());
    let slope = a.uniform_weight().clone() - b.uniform_weight().clone();
    if net.is_empty() && slope.is_negligible() {
        return vec![T::zero(), T::one()];
    }

    let mut nodes = vec![T::zero()];
    nodes.extend(net.iter().map(|(t, _)| t.clone()).filter(|t| *t > T::zero() && *t < T::one()));
    nodes.push(T::one());

    let mut grid = nodes.clone();
    let mut level = T::zero();
    let mut next = 0;
    for w in nodes.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        grid.push((lo.clone() + hi.clone()) * T::half());
        while next < net.len() && net[next].0 <= *lo {
            level = level + net[next].1.clone();
            next += 1;
        }
        // F_A - F_B = slope·t + level on [lo, hi)
        if !slope.is_negligible() {
            let root = -level.clone() / slope.clone();
            if root >= *lo && root <= *hi {
                grid.push(root);
            }
        }
    }
    grid.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    grid.dedup();
    grid
}
