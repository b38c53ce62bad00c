mod common;

use common::{four_var, janet, lewy, suite, Example};
use involutive::analysis::{
    cartan_hilbert_polynomial, classify, complementary_set, covering_entries, hilbert_data, hilbert_function,
    hilbert_function_graded, hilbert_polynomial, ivp_spec, parametric_derivatives, solution_dimension, InitialKind,
    SolutionDimension,
};
use involutive::completion::{minimal_involutive_basis, CompletionOptions, InvolutiveBasis};
use involutive::diffpoly::{Derivative, Scheme};
use involutive::monomial::{monomials_up_to, DivisionKind, MultiIndex, VarSet};
use involutive::scalars::Rational;

fn complete(ex: &Example, kind: DivisionKind) -> InvolutiveBasis {
    minimal_involutive_basis(&ex.input, &CompletionOptions::new(kind, ex.ranking.clone())).unwrap()
}

fn vs(v: &[usize]) -> VarSet {
    VarSet::from_indices(v.iter().copied())
}

#[test]
fn hilbert_function_matches_enumeration() {
    for kind in DivisionKind::ALL {
        for ex in suite() {
            let b = complete(&ex, kind);
            let data = hilbert_data(&b);
            for s in 0..=data.stabilization + 3 {
                let count = parametric_derivatives(&b, s).len() as u128;
                assert_eq!(hilbert_function(&b, s), count, "{} / {kind} / s={s}", ex.name);
                if s >= data.stabilization {
                    assert_eq!(data.hp.eval(i64::from(s)), Rational::from_integer(count.into()));
                }
                let graded = hilbert_function_graded(&b, s).unwrap();
                let below = if s == 0 { 0 } else { hilbert_function(&b, s - 1) };
                assert_eq!(graded, count - below, "{} / {kind} / s={s}", ex.name);
            }
        }
    }
}

#[test]
fn cartan_form_agrees_for_pommaret_bases() {
    for ex in suite() {
        let b = complete(&ex, DivisionKind::Pommaret);
        let hp = hilbert_polynomial(&b);
        let cartan = cartan_hilbert_polynomial(&b).unwrap();
        for s in 0..12 {
            assert_eq!(hp.eval(s), cartan.eval(s), "{} / s={s}", ex.name);
        }
    }
}

#[test]
fn ivp_covers_every_parametric_derivative_once() {
    for kind in DivisionKind::ALL {
        for ex in suite() {
            let b = complete(&ex, kind);
            let spec = ivp_spec(&b).unwrap();
            let upto = hilbert_data(&b).stabilization + 3;
            for d in parametric_derivatives(&b, upto) {
                assert_eq!(covering_entries(&spec, &d).len(), 1, "{} / {kind} / {d:?}", ex.name);
            }
            for e in &spec.entries {
                assert_eq!(e.kind == InitialKind::ArbitraryConstant, e.multipliers.is_empty());
            }
        }
    }
}

#[test]
fn classification_is_division_independent() {
    for ex in suite() {
        let bases: Vec<InvolutiveBasis> = DivisionKind::ALL.iter().map(|&k| complete(&ex, k)).collect();
        let n = ex.ranking.nvars();
        for j in 0..ex.ranking.nindets() {
            for a in monomials_up_to(n, 5) {
                let d = Derivative::new(j, a);
                let c = classify(&d, &bases[0]);
                for b in &bases[1..] {
                    assert_eq!(classify(&d, b), c, "{} / {d:?}", ex.name);
                }
            }
        }
    }
}

#[test]
fn ivp_requires_orderly_ranking() {
    let ex = janet();
    let lex = ex.ranking.with_scheme(Scheme::Lex);
    let b = minimal_involutive_basis(&ex.input, &CompletionOptions::new(DivisionKind::Janet, lex)).unwrap();
    assert!(ivp_spec(&b).is_err());
}

#[test]
fn janet_example_complement() {
    let b = complete(&janet(), DivisionKind::Janet);
    let mut got = complementary_set(&b).unwrap()[0]
        .decomposition
        .finite_monomials()
        .unwrap();
    got.sort();
    let mut want: Vec<MultiIndex> = [
        [0, 0, 0],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [0, 0, 2],
        [1, 1, 1],
        [1, 0, 2],
        [0, 0, 3],
        [1, 0, 3],
    ]
    .iter()
    .map(|e| MultiIndex::new(e))
    .collect();
    want.sort();
    assert_eq!(got, want);
    assert_eq!(solution_dimension(&b).unwrap(), SolutionDimension::Finite(12));
}

#[test]
fn four_variable_initial_data() {
    let ex = four_var();
    let janet = ivp_spec(&complete(&ex, DivisionKind::Janet)).unwrap();
    assert_eq!(janet.entries.len(), 1);
    let e = &janet.entries[0];
    assert_eq!(e.derivative, Derivative::base(0, 4));
    assert_eq!(e.multipliers, vs(&[3]));
    assert_eq!(e.pinned, vs(&[0, 1, 2]));

    let pom = ivp_spec(&complete(&ex, DivisionKind::Pommaret)).unwrap();
    let got: Vec<(Derivative, VarSet, InitialKind)> = pom
        .entries
        .iter()
        .map(|e| (e.derivative.clone(), e.multipliers, e.kind))
        .collect();
    assert_eq!(
        got,
        vec![
            (Derivative::base(0, 4), VarSet::empty(), InitialKind::ArbitraryConstant),
            (
                Derivative::new(0, MultiIndex::new(&[0, 0, 0, 1])),
                vs(&[3]),
                InitialKind::ArbitraryFunction
            ),
        ]
    );
}

#[test]
fn lewy_has_infinite_dimension() {
    let ex = lewy();
    let b = complete(&ex, DivisionKind::Janet);
    let SolutionDimension::Infinite(gens) = solution_dimension(&b).unwrap() else {
        panic!("expected infinite");
    };
    assert_eq!(gens.len(), 2);
    for (j, (indet, g)) in gens.iter().enumerate() {
        assert_eq!(*indet, j);
        assert!(g.tip.is_one());
        assert_eq!(g.multipliers, vs(&[1, 2]));
    }
    // two functions of two variables: HF(s) = 2*C(s+2, 2)
    for s in 0..8u32 {
        assert_eq!(hilbert_function(&b, s), u128::from((s + 1) * (s + 2)));
    }
}
