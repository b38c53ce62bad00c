#![allow(dead_code)]

use involutive::completion::linear;
use involutive::diffpoly::{LinearDiffPoly, Ranking, Scheme, Tiebreak};
use involutive::monomial::MultiIndex;
use involutive::scalars::RationalFunction;
use involutive::symmetry::{determining_system, DiffPolynomial, SolvedEquation, VectorFieldAnsatz};

pub struct Example {
    pub name: &'static str,
    pub input: Vec<LinearDiffPoly>,
    pub ranking: Ranking,
}

pub fn k(n: usize, v: i64) -> RationalFunction {
    RationalFunction::from_int(n, v)
}

pub fn x(n: usize, i: usize) -> RationalFunction {
    RationalFunction::var(n, i)
}

pub fn grlex(n: usize, m: usize) -> Ranking {
    Ranking::new(Scheme::GrLex, n, m, Tiebreak::TermFirst)
}

pub fn janet() -> Example {
    Example {
        name: "janet",
        input: vec![
            linear(3, 1, &[(k(3, 1), 0, &[2, 0, 0]), (-&x(3, 1), 0, &[0, 0, 2])]),
            linear(3, 1, &[(k(3, 1), 0, &[0, 2, 0])]),
        ],
        ranking: grlex(3, 1),
    }
}

pub fn four_var() -> Example {
    Example {
        name: "four_var",
        input: vec![
            linear(
                4,
                1,
                &[
                    (k(4, 1), 0, &[1, 0, 0, 0]),
                    (x(4, 1), 0, &[0, 0, 1, 0]),
                    (k(4, 1), 0, &[0, 0, 0, 0]),
                ],
            ),
            linear(4, 1, &[(k(4, 1), 0, &[0, 1, 0, 0]), (x(4, 0), 0, &[0, 0, 0, 1])]),
        ],
        ranking: grlex(4, 1),
    }
}

pub fn lewy() -> Example {
    let two = |i| &k(3, 2) * &x(3, i);
    Example {
        name: "lewy",
        input: vec![
            linear(
                3,
                2,
                &[
                    (k(3, 1), 0, &[1, 0, 0]),
                    (-&two(2), 0, &[0, 1, 0]),
                    (k(3, -1), 1, &[0, 0, 1]),
                    (-&two(0), 1, &[0, 1, 0]),
                ],
            ),
            linear(
                3,
                2,
                &[
                    (k(3, 1), 1, &[1, 0, 0]),
                    (two(0), 0, &[0, 1, 0]),
                    (k(3, 1), 0, &[0, 0, 1]),
                    (-&two(2), 1, &[0, 1, 0]),
                ],
            ),
        ],
        ranking: grlex(3, 2),
    }
}

pub fn tx_ansatz() -> VectorFieldAnsatz {
    VectorFieldAnsatz::new(vec!["t".into(), "x".into()], vec!["y".into()])
}

/// degrevlex with y > x > t on the coordinates (t, x, y) and xi1 > xi2 > eta.
pub fn symmetry_ranking() -> Ranking {
    Ranking::with_orders(Scheme::DegRevLex, vec![2, 1, 0], vec![0, 1, 2], Tiebreak::TermFirst).unwrap()
}

/// y_t = t*y_xx - y*y_x
pub fn diffusion_equation() -> SolvedEquation {
    let rhs = &(&DiffPolynomial::indep(0) * &DiffPolynomial::dep(0, &[0, 2]))
        - &(&DiffPolynomial::dep(0, &[0, 0]) * &DiffPolynomial::dep(0, &[0, 1]));
    SolvedEquation::new(0, MultiIndex::new(&[1, 0]), rhs)
}

/// y_t = y^3*y_xxx
pub fn harry_dym_equation() -> SolvedEquation {
    let rhs = &DiffPolynomial::dep(0, &[0, 0]).pow(3) * &DiffPolynomial::dep(0, &[0, 3]);
    SolvedEquation::new(0, MultiIndex::new(&[1, 0]), rhs)
}

fn determining(name: &'static str, eq: SolvedEquation) -> Example {
    let r = symmetry_ranking();
    let sys = determining_system(&[eq], &tx_ansatz(), &r).unwrap();
    Example {
        name,
        input: sys.equations,
        ranking: r,
    }
}

pub fn diffusion() -> Example {
    determining("diffusion", diffusion_equation())
}

pub fn harry_dym() -> Example {
    determining("harry_dym", harry_dym_equation())
}

pub fn suite() -> Vec<Example> {
    vec![janet(), four_var(), lewy(), diffusion(), harry_dym()]
}
