mod common;

use common::{janet, k, suite, x, Example};
use involutive::completion::{
    conventional_normal_form, groebner_oracle, involutive_normal_form, linear, minimal_involutive_basis,
    minimal_involutive_basis_observed, verify_involutive, verify_partial_involutive, CompletionOptions,
    InvolutiveBasis,
};
use involutive::diffpoly::{Derivative, LinearDiffPoly, Scheme};
use involutive::monomial::{DivisionKind, MultiIndex};

fn complete(ex: &Example, kind: DivisionKind) -> InvolutiveBasis {
    minimal_involutive_basis(&ex.input, &CompletionOptions::new(kind, ex.ranking.clone()))
        .unwrap_or_else(|e| panic!("{} / {kind}: {e}", ex.name))
}

#[test]
fn outputs_verify_and_are_groebner() {
    for kind in DivisionKind::ALL {
        for ex in suite() {
            let b = complete(&ex, kind);
            assert!(verify_involutive(&b), "{} / {kind}", ex.name);
            assert!(groebner_oracle(&b.elements, &ex.ranking), "{} / {kind}", ex.name);
        }
    }
}

#[test]
fn input_lies_in_output_ideal() {
    for kind in DivisionKind::ALL {
        for ex in suite() {
            let b = complete(&ex, kind);
            for f in &ex.input {
                assert!(
                    conventional_normal_form(f, &b.elements, &ex.ranking).is_zero(),
                    "{} / {kind}",
                    ex.name
                );
            }
        }
    }
}

#[test]
fn involutive_normal_forms_are_conventional_fixed_points() {
    let ex = janet();
    let b = complete(&ex, DivisionKind::Janet);
    let p = linear(
        3,
        1,
        &[
            (k(3, 1), 0, &[3, 1, 2]),
            (x(3, 2), 0, &[0, 1, 5]),
            (x(3, 0), 0, &[1, 0, 1]),
            (k(3, 7), 0, &[0, 0, 0]),
        ],
    );
    let h = involutive_normal_form(&p, &b.elements, DivisionKind::Janet, &ex.ranking);
    assert_eq!(conventional_normal_form(&h, &b.elements, &ex.ranking), h);
    assert_eq!(h, conventional_normal_form(&p, &b.elements, &ex.ranking));

    let d2_d22 = ex.input[1].differentiate(1);
    assert!(involutive_normal_form(&d2_d22, &b.elements, DivisionKind::Janet, &ex.ranking).is_zero());
    assert!(conventional_normal_form(&d2_d22, &b.elements, &ex.ranking).is_zero());
}

#[test]
fn criterion_does_not_change_output() {
    for kind in DivisionKind::ALL {
        for ex in suite() {
            let on = CompletionOptions::new(kind, ex.ranking.clone());
            let off = on.clone().with_criterion(false);
            let a = minimal_involutive_basis(&ex.input, &on).unwrap();
            let b = minimal_involutive_basis(&ex.input, &off).unwrap();
            assert_eq!(a.elements, b.elements, "{} / {kind}", ex.name);
            assert!(a.stats.nf_calls <= b.stats.nf_calls);
        }
    }
    let ex = janet();
    let on = CompletionOptions::new(DivisionKind::Janet, ex.ranking.clone());
    let a = minimal_involutive_basis(&ex.input, &on).unwrap();
    let b = minimal_involutive_basis(&ex.input, &on.clone().with_criterion(false)).unwrap();
    assert!(a.stats.criterion_hits > 0);
    assert!(a.stats.nf_calls < b.stats.nf_calls);
}

#[test]
fn completion_ranking_independence() {
    for kind in [DivisionKind::Janet, DivisionKind::LexInduced] {
        for ex in suite() {
            let base = CompletionOptions::new(kind, ex.ranking.clone());
            let a = minimal_involutive_basis(&ex.input, &base).unwrap();
            for scheme in [Scheme::Lex, Scheme::GrLex, Scheme::DegRevLex] {
                let opts = base.clone().with_completion(ex.ranking.with_scheme(scheme));
                let b = minimal_involutive_basis(&ex.input, &opts).unwrap();
                assert_eq!(a.elements, b.elements, "{} / {kind} / {scheme}", ex.name);
            }
        }
    }
}

#[test]
fn idempotence() {
    for kind in DivisionKind::ALL {
        for ex in suite() {
            let opts = CompletionOptions::new(kind, ex.ranking.clone());
            let a = minimal_involutive_basis(&ex.input, &opts).unwrap();
            let b = minimal_involutive_basis(&a.elements, &opts).unwrap();
            assert_eq!(a.elements, b.elements, "{} / {kind}", ex.name);
        }
    }
}

#[test]
fn minimality() {
    for kind in DivisionKind::ALL {
        for ex in suite() {
            let b = complete(&ex, kind);
            let lds = b.leading_derivatives();
            for (a, da) in lds.iter().enumerate() {
                for (c, dc) in lds.iter().enumerate() {
                    if a == c {
                        continue;
                    }
                    if let Some(beta) = dc.quotient(da) {
                        let s = &b.separations[c];
                        assert!(!beta.support().is_subset(&s.multiplicative), "{} / {kind}", ex.name);
                    }
                }
            }
        }
    }
}

#[test]
fn snapshots_are_partially_involutive() {
    for kind in DivisionKind::ALL {
        for ex in suite() {
            let opts = CompletionOptions::new(kind, ex.ranking.clone());
            let mut checked = 0usize;
            let mut failures = Vec::new();
            let mut observe = |s: &involutive::completion::Snapshot| {
                let elements: Vec<LinearDiffPoly> = s.elements.iter().map(|p| (*p).clone()).collect();
                let b = InvolutiveBasis::from_elements(&elements, opts.clone()).unwrap();
                checked += 1;
                if !verify_partial_involutive(&b, s.next) {
                    failures.push(format!("{:?}", s.next));
                }
            };
            minimal_involutive_basis_observed(&ex.input, &opts, &mut observe).unwrap();
            assert!(failures.is_empty(), "{} / {kind}: {failures:?}", ex.name);
            assert!(checked > 0 || ex.name == "lewy", "{} / {kind}", ex.name);
        }
    }
}

#[test]
fn partial_involutivity_extremes() {
    let ex = janet();
    let b = complete(&ex, DivisionKind::Janet);
    let low = Derivative::base(0, 3);
    assert!(verify_partial_involutive(&b, &low));
    let high = Derivative::new(0, MultiIndex::new(&[20, 20, 20]));
    assert_eq!(verify_partial_involutive(&b, &high), verify_involutive(&b));

    let raw = InvolutiveBasis::from_elements(&ex.input, b.options.clone()).unwrap();
    assert!(verify_partial_involutive(&raw, &low));
    assert!(!verify_partial_involutive(&raw, &high));
}
