//! Frozen expected values, each cross-checked against an independent
//! floating-point quadrature of the defining integral.

use convex_order::ordering::{crossing_profile, decide_cumulative, difference, Sign};
use convex_order::rational::rat;
use convex_order::{Functional, Rational, Scalar, TestFunction, Verdict, Witness};

/// Plain CDF of a discrete/uniform mixture in f64, straight from the atoms.
fn cdf_f64(atoms: &[(f64, f64)], uniform: f64, t: f64) -> f64 {
    let jumps: f64 = atoms.iter().filter(|(p, _)| *p <= t).map(|(_, w)| w).sum();
    uniform * t.clamp(0.0, 1.0) + jumps
}

/// Composite midpoint rule. Cells have width `1/CELLS` so that every jump at
/// a multiple of 1/120 lands on a cell boundary.
fn integrate(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    const CELLS: f64 = 240_000.0;
    let n = ((hi - lo) * CELLS).round() as usize;
    if n == 0 {
        return 0.0;
    }
    let h = (hi - lo) / n as f64;
    (0..n).map(|i| f(lo + (i as f64 + 0.5) * h)).sum::<f64>() * h
}

fn atoms_of(f: &Functional) -> Vec<(f64, f64)> {
    f.atoms().iter().map(|a| (a.position.approx(), a.weight.approx())).collect()
}

fn abs_area(a: &Functional, b: &Functional, lo: f64, hi: f64) -> f64 {
    let (aa, ba) = (atoms_of(a), atoms_of(b));
    let (ua, ub) = (a.uniform_weight().approx(), b.uniform_weight().approx());
    integrate(|t| (cdf_f64(&aa, ua, t) - cdf_f64(&ba, ub, t)).abs(), lo, hi)
}

fn signed_area(a: &Functional, b: &Functional, lo: f64, hi: f64) -> f64 {
    let (aa, ba) = (atoms_of(a), atoms_of(b));
    let (ua, ub) = (a.uniform_weight().approx(), b.uniform_weight().approx());
    integrate(|t| cdf_f64(&aa, ua, t) - cdf_f64(&ba, ub, t), lo, hi)
}

fn two_point(lo: Rational, hi: Rational) -> Functional {
    Functional::new([(lo, rat(1, 2)), (hi, rat(1, 2))], rat(0, 1)).unwrap()
}

fn close(x: f64, expected: &Rational) {
    assert!((x - expected.approx()).abs() < 1e-6, "{x} vs {expected}");
}

#[test]
fn hinge_mean_closed_form() {
    let numeric = integrate(|t| (t - 0.5f64).max(0.0), 0.0, 1.0);
    let frozen = rat(1, 8);
    close(numeric, &frozen);
    assert_eq!(Functional::uniform().evaluate(&TestFunction::Hinge(rat(1, 2))), frozen);
    for k in 0..=10 {
        let s = k as f64 / 10.0;
        let numeric = integrate(|t| (t - s).max(0.0), 0.0, 1.0);
        assert!((numeric - (1.0 - s).powi(2) / 2.0).abs() < 1e-8);
    }
}

#[test]
fn midpoint_vs_uniform_antiderivative() {
    let (a, b) = (Functional::midpoint(), Functional::uniform());
    let d = difference(&a, &b);
    for k in 1..=8 {
        let s = rat(k, 8);
        close(signed_area(&a, &b, 0.0, s.approx()), &d.g(&s));
    }
    // G(s) = -s²/2 on [0, 1/2]
    assert_eq!(d.g(&rat(1, 2)), rat(-1, 8));
    assert_eq!(d.g(&rat(1, 3)), rat(-1, 18));
    assert_eq!(d.total(), rat(0, 1));
}

#[test]
fn uniform_vs_trapezoid_antiderivative() {
    let (a, b) = (Functional::uniform(), Functional::trapezoid());
    let d = difference(&a, &b);
    // D(t) = t - 1/2 on (0,1)
    assert_eq!(d.diff().value(&rat(1, 5)), rat(-3, 10));
    for k in 0..=10 {
        let s = rat(k, 10);
        close(signed_area(&a, &b, 0.0, s.approx()), &d.g(&s));
        assert!(d.g(&s) <= rat(0, 1));
    }
    assert_eq!(d.total(), rat(0, 1));
}

#[test]
fn quarter_points_profile() {
    let a = two_point(rat(1, 4), rat(3, 4));
    let b = Functional::uniform();
    let frozen = rat(1, 32);
    for (lo, hi) in [(0.0, 0.25), (0.25, 0.5), (0.5, 0.75), (0.75, 1.0)] {
        close(abs_area(&a, &b, lo, hi), &frozen);
    }
    let p = crossing_profile(&difference(&a, &b)).unwrap();
    assert_eq!(p.points, vec![rat(1, 4), rat(1, 2), rat(3, 4)]);
    assert_eq!(p.areas, vec![frozen; 4]);
}

#[test]
fn tenth_points_profile_and_gap() {
    let a = two_point(rat(1, 10), rat(9, 10));
    let b = Functional::uniform();
    let (a0, a1) = (rat(1, 200), rat(2, 25));
    close(abs_area(&a, &b, 0.0, 0.1), &a0);
    close(abs_area(&a, &b, 0.1, 0.5), &a1);
    close(abs_area(&a, &b, 0.5, 0.9), &a1);
    close(abs_area(&a, &b, 0.9, 1.0), &a0);

    let p = crossing_profile(&difference(&a, &b)).unwrap();
    assert_eq!(p.initial_sign, Sign::Negative);
    assert_eq!(p.areas, vec![a0.clone(), a1.clone(), a1.clone(), a0.clone()]);

    // G(1/2) = -A0 + A1 = 3/40 and the hinge gap is 1/5 - 1/8.
    let gap = rat(3, 40);
    close(signed_area(&a, &b, 0.0, 0.5), &gap);
    assert_eq!(a1 - a0, gap);
    let h = TestFunction::Hinge(rat(1, 2));
    assert_eq!(a.evaluate(&h), rat(1, 5));
    assert_eq!(b.evaluate(&h), rat(1, 8));
    assert_eq!(decide_cumulative(&a, &b), Verdict::Fails(Witness::Hinge { s: rat(1, 2), gap }));
}

#[test]
fn trapezoid_vs_midpoint_gap() {
    let h = TestFunction::Hinge(rat(1, 2));
    assert_eq!(Functional::trapezoid().evaluate(&h), rat(1, 4));
    assert_eq!(Functional::midpoint().evaluate(&h), rat(0, 1));
    assert_eq!(
        decide_cumulative(&Functional::trapezoid(), &Functional::midpoint()),
        Verdict::Fails(Witness::Hinge { s: rat(1, 2), gap: rat(1, 4) })
    );
}
