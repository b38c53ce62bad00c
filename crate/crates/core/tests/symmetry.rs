mod common;

use common::{diffusion_equation, harry_dym_equation, symmetry_ranking, tx_ansatz};
use involutive::analysis::SolutionDimension;
use involutive::completion::{linear, minimal_involutive_basis, CompletionOptions};
use involutive::diffpoly::LinearDiffPoly;
use involutive::monomial::{DivisionKind, MultiIndex};
use involutive::scalars::{rational, RationalFunction};
use involutive::symmetry::{determining_system, symmetry_dimension, DiffPolynomial, SolvedEquation};

// coordinates (t, x, y); fields xi1, xi2, eta
const T: usize = 0;
const X: usize = 1;
const Y: usize = 2;

fn c(v: i64) -> RationalFunction {
    RationalFunction::from_int(3, v)
}

fn v(i: usize) -> RationalFunction {
    RationalFunction::var(3, i)
}

fn inv(i: usize) -> RationalFunction {
    v(i).inv().unwrap()
}

fn e(t: u32, x: u32, y: u32) -> [u32; 3] {
    [t, x, y]
}

fn eq(terms: &[(RationalFunction, usize, [u32; 3])]) -> LinearDiffPoly {
    let t: Vec<(RationalFunction, usize, &[u32])> = terms.iter().map(|(c, j, a)| (c.clone(), *j, &a[..])).collect();
    linear(3, 3, &t)
}

fn sorted(mut v: Vec<LinearDiffPoly>) -> Vec<LinearDiffPoly> {
    let r = symmetry_ranking();
    v.sort_by(|a, b| r.compare(b.ld(&r).unwrap(), a.ld(&r).unwrap()));
    v
}

fn diffusion_involutive() -> Vec<LinearDiffPoly> {
    let m1 = c(-1);
    vec![
        eq(&[(c(1), 0, e(0, 0, 1))]),
        eq(&[(c(1), 1, e(0, 0, 1))]),
        eq(&[(c(1), 2, e(0, 0, 1))]),
        eq(&[(c(1), 0, e(0, 1, 0))]),
        eq(&[(c(1), 1, e(0, 1, 0)), (-&inv(T), 0, e(0, 0, 0))]),
        eq(&[(c(1), 2, e(0, 1, 0))]),
        eq(&[(c(1), 0, e(1, 0, 0)), (-&inv(T), 0, e(0, 0, 0))]),
        eq(&[(c(1), 1, e(1, 0, 0)), (m1, 2, e(0, 0, 0))]),
        eq(&[(c(1), 2, e(1, 0, 0))]),
    ]
}

fn harry_dym_involutive() -> Vec<LinearDiffPoly> {
    let third = RationalFunction::constant(3, rational(-1, 3));
    vec![
        eq(&[(c(1), 2, e(0, 2, 0))]),
        eq(&[(c(1), 2, e(1, 1, 0))]),
        eq(&[(c(1), 2, e(0, 0, 1)), (-&inv(Y), 2, e(0, 0, 0))]),
        eq(&[(c(1), 2, e(1, 0, 0))]),
        eq(&[(c(1), 1, e(0, 0, 1))]),
        eq(&[(c(1), 1, e(0, 1, 0)), (third, 0, e(1, 0, 0)), (-&inv(Y), 2, e(0, 0, 0))]),
        eq(&[(c(1), 1, e(1, 0, 0))]),
        eq(&[(c(1), 0, e(2, 0, 0))]),
        eq(&[(c(1), 0, e(0, 0, 1))]),
        eq(&[(c(1), 0, e(0, 1, 0))]),
    ]
}

fn opts(kind: DivisionKind) -> CompletionOptions {
    CompletionOptions::new(kind, symmetry_ranking())
}

fn annihilates(system: &[LinearDiffPoly], sol: &[RationalFunction]) -> bool {
    system.iter().all(|p| p.evaluate(sol).is_zero())
}

#[test]
fn diffusion_symmetries() {
    for kind in DivisionKind::ALL {
        let res = symmetry_dimension(&[diffusion_equation()], &tx_ansatz(), &opts(kind)).unwrap();
        assert_eq!(res.basis.elements, sorted(diffusion_involutive()), "{kind}");
        assert_eq!(res.dimension, SolutionDimension::Finite(3));
    }
    let sys = determining_system(&[diffusion_equation()], &tx_ansatz(), &symmetry_ranking()).unwrap();
    // xi1 = c1 t, xi2 = c1 x + c2 t + c3, eta = c2
    let family = [[v(T), v(X), c(0)], [c(0), v(T), c(1)], [c(0), c(1), c(0)]];
    for sol in &family {
        assert!(annihilates(&sys.equations, sol));
        assert!(annihilates(&diffusion_involutive(), sol));
    }
    assert!(!annihilates(&sys.equations, &[c(1), c(0), v(Y)]));
}

#[test]
fn harry_dym_symmetries() {
    for kind in [DivisionKind::Janet, DivisionKind::Pommaret] {
        let res = symmetry_dimension(&[harry_dym_equation()], &tx_ansatz(), &opts(kind)).unwrap();
        assert_eq!(res.basis.elements, sorted(harry_dym_involutive()), "{kind}");
        assert_eq!(res.dimension, SolutionDimension::Finite(5));
    }
    let sys = determining_system(&[harry_dym_equation()], &tx_ansatz(), &symmetry_ranking()).unwrap();
    // xi1 = c1 + c2 t, xi2 = c3 + c4 x + c5 x^2, eta = (c4 - c2/3 + 2 c5 x) y
    let y = v(Y);
    let family = [
        [c(1), c(0), c(0)],
        [v(T), c(0), y.scale(&rational(-1, 3))],
        [c(0), c(1), c(0)],
        [c(0), v(X), y.clone()],
        [c(0), v(X).pow(2), &(&c(2) * &v(X)) * &y],
    ];
    for sol in &family {
        assert!(annihilates(&sys.equations, sol));
        assert!(annihilates(&harry_dym_involutive(), sol));
    }
}

#[test]
fn determining_systems_are_homogeneous() {
    for e in [diffusion_equation(), harry_dym_equation()] {
        let sys = determining_system(&[e], &tx_ansatz(), &symmetry_ranking()).unwrap();
        assert!(!sys.equations.is_empty());
        for p in &sys.equations {
            assert!(p.constant().is_zero());
            assert!(p.num_terms() > 0);
            assert!(p.is_monic(&symmetry_ranking()));
        }
    }
}

#[test]
fn translations_solve_the_trivial_equation() {
    let trivial = SolvedEquation::new(0, MultiIndex::new(&[1, 0]), DiffPolynomial::zero());
    let sys = determining_system(&[trivial], &tx_ansatz(), &symmetry_ranking()).unwrap();
    assert!(!sys.equations.is_empty());
    for sol in [[c(1), c(0), c(0)], [c(0), c(1), c(0)], [c(3), c(-2), c(0)]] {
        assert!(annihilates(&sys.equations, &sol));
    }
}

#[test]
fn transport_equation_has_infinitely_many_symmetries() {
    let transport = SolvedEquation::new(0, MultiIndex::new(&[1, 0]), DiffPolynomial::dep(0, &[0, 1]));
    let res = symmetry_dimension(&[transport], &tx_ansatz(), &opts(DivisionKind::Janet)).unwrap();
    let SolutionDimension::Infinite(gens) = res.dimension else {
        panic!("expected infinite");
    };
    assert!(gens.iter().all(|(_, g)| !g.multipliers.is_empty()));
    let b = minimal_involutive_basis(&res.system.equations, &opts(DivisionKind::LexInduced)).unwrap();
    assert_eq!(b.len(), res.basis.len());
}
