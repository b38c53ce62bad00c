//! Principal and parametric derivatives, initial-value data, and the
//! Hilbert function and polynomial of an involutive system.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::completion::InvolutiveBasis;
use crate::diffpoly::{Derivative, Names};
use crate::monomial::{self, multiples_of_degree, ComplementaryDecomposition, Generator, MonomialError, VarSet};
use crate::scalars::{fmt_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("the main ranking is not orderly")]
    NotOrderly,
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeClass {
    Principal,
    Parametric,
}

/// A derivative is principal when it is a derivative of some leading derivative.
pub fn classify(theta: &Derivative, b: &InvolutiveBasis) -> DerivativeClass {
    let principal = b
        .leading_derivatives()
        .iter()
        .any(|d| d.indet == theta.indet && d.index.divides(&theta.index));
    if principal {
        DerivativeClass::Principal
    } else {
        DerivativeClass::Parametric
    }
}

/// Complement of the leading derivatives of indeterminate `indet`, in the
/// original variable coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    pub indet: usize,
    pub decomposition: ComplementaryDecomposition,
}

pub fn complementary_set(b: &InvolutiveBasis) -> Result<Vec<Complement>, AnalysisError> {
    let r = b.ranking();
    let n = b.nvars();
    (0..b.nindets())
        .map(|j| {
            let set = b.ranked_leading_set(j);
            let dec = monomial::complementary_decomposition(n, &set, b.division())?;
            let back = |g: &Generator| Generator {
                tip: r.unranked(&g.tip),
                multipliers: r.unrank_vars(g.multipliers),
            };
            Ok(Complement {
                indet: j,
                decomposition: ComplementaryDecomposition {
                    nvars: n,
                    finite_part: dec.finite_part.iter().map(|m| r.unranked(m)).collect(),
                    generators: dec.generators.iter().map(back).collect(),
                },
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialKind {
    ArbitraryFunction,
    ArbitraryConstant,
}

/// `∂_γ y_j` restricted to `x_i = x_i°` for `i` in `pinned`, prescribed as an
/// arbitrary function of the multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IvpEntry {
    pub derivative: Derivative,
    pub multipliers: VarSet,
    pub pinned: VarSet,
    pub kind: InitialKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IvpSpec {
    pub nvars: usize,
    pub entries: Vec<IvpEntry>,
}

pub fn ivp_spec(b: &InvolutiveBasis) -> Result<IvpSpec, AnalysisError> {
    if !b.ranking().is_orderly() {
        return Err(AnalysisError::NotOrderly);
    }
    let n = b.nvars();
    let mut entries = Vec::new();
    for c in complementary_set(b)? {
        for g in c.decomposition.cones() {
            let kind = if g.multipliers.is_empty() {
                InitialKind::ArbitraryConstant
            } else {
                InitialKind::ArbitraryFunction
            };
            entries.push(IvpEntry {
                derivative: Derivative::new(c.indet, g.tip),
                multipliers: g.multipliers,
                pinned: g.multipliers.complement(n),
                kind,
            });
        }
    }
    Ok(IvpSpec { nvars: n, entries })
}

impl IvpSpec {
    pub fn display_with<'a>(&'a self, names: &'a Names) -> IvpDisplay<'a> {
        IvpDisplay { spec: self, names }
    }
}

pub struct IvpDisplay<'a> {
    spec: &'a IvpSpec,
    names: &'a Names,
}

impl fmt::Display for IvpDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mut nf, mut nc) = (0, 0);
        for e in &self.spec.entries {
            write!(f, "{}", e.derivative.display_with(self.names))?;
            if !e.pinned.is_empty() {
                let at: Vec<String> = e
                    .pinned
                    .iter()
                    .map(|i| format!("{0}={0}°", self.names.vars[i]))
                    .collect();
                write!(f, "|{}", at.join(","))?;
            }
            match e.kind {
                InitialKind::ArbitraryConstant => {
                    nc += 1;
                    writeln!(f, " = c{nc}")?;
                }
                InitialKind::ArbitraryFunction => {
                    nf += 1;
                    let args: Vec<&str> = e.multipliers.iter().map(|i| self.names.vars[i].as_str()).collect();
                    writeln!(f, " = phi{nf}({})", args.join(","))?;
                }
            }
        }
        Ok(())
    }
}

/// Univariate polynomial in `s` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly { coeffs: vec![c] }.trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        UniPoly { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, s: i64) -> Rational {
        let x = Rational::from_integer(s.into());
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    fn add(&self, other: &UniPoly, sign: i64) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let sgn = Rational::from_integer(sign.into());
        let coeffs = (0..len)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                let b = other.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                a + b * &sgn
            })
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return UniPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(c)
    }

    /// `C(s + a, k)` as a polynomial in `s`.
    pub fn binomial_shifted(a: i64, k: usize) -> UniPoly {
        let mut p = UniPoly::constant(Rational::one());
        for i in 0..k as i64 {
            let lin = UniPoly::from_coeffs(vec![Rational::from_integer((a - i).into()), Rational::one()]);
            p = p.mul(&lin).scaled(&Rational::new(1.into(), (i + 1).into()));
        }
        p
    }

    fn scaled(&self, c: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let body = match k {
                0 => fmt_rational(&a),
                _ => {
                    let pw = if k == 1 { "s".to_string() } else { format!("s^{k}") };
                    if a.is_one() {
                        pw
                    } else {
                        format!("{}*{pw}", fmt_rational(&a))
                    }
                }
            };
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

struct Tip {
    deg: u32,
    mu: usize,
}

fn tips(b: &InvolutiveBasis) -> Vec<Tip> {
    b.leading_derivatives()
        .iter()
        .zip(&b.separations)
        .map(|(d, s)| Tip {
            deg: d.order(),
            mu: s.multiplicative.len(),
        })
        .collect()
}

/// Number of parametric derivatives of order at most `s`.
pub fn hilbert_function(b: &InvolutiveBasis, s: u32) -> u128 {
    let (n, m) = (b.nvars() as u128, b.nindets() as u128);
    let all = m * monomial::binomial(n + u128::from(s), u128::from(s));
    let principal: u128 = tips(b)
        .iter()
        .map(|t| (t.deg..=s).map(|i| multiples_of_degree(i - t.deg, t.mu)).sum::<u128>())
        .sum();
    all - principal
}

/// Number of parametric derivatives of order exactly `s`, read off the
/// complementary generators.
pub fn hilbert_function_graded(b: &InvolutiveBasis, s: u32) -> Result<u128, AnalysisError> {
    Ok(complementary_set(b)?
        .iter()
        .map(|c| c.decomposition.count_of_degree(s))
        .sum())
}

pub fn hilbert_polynomial(b: &InvolutiveBasis) -> UniPoly {
    let (n, m) = (b.nvars(), b.nindets() as i64);
    let mut hp = UniPoly::binomial_shifted(n as i64, n).scaled(&Rational::from_integer(m.into()));
    for t in tips(b) {
        let term = UniPoly::binomial_shifted(t.mu as i64 - i64::from(t.deg), t.mu);
        hp = hp.add(&term, -1);
    }
    hp
}

/// Cumulative Hilbert polynomial from the Cartan characters of the leading
/// sets; needs leading sets that are Pommaret-involutive.
pub fn cartan_hilbert_polynomial(b: &InvolutiveBasis) -> Result<UniPoly, AnalysisError> {
    let n = b.nvars();
    let mut hp = UniPoly::zero();
    for j in 0..b.nindets() {
        let set = b.ranked_leading_set(j);
        let ch = monomial::cartan_characters(n, &set)?;
        hp = hp.add(&UniPoly::constant(Rational::from_integer(ch.finite.into())), 1);
        for (k, &sig) in ch.sigma.iter().enumerate() {
            let i = k + 1;
            let term = UniPoly::binomial_shifted(i as i64 - i64::from(ch.q), i);
            hp = hp.add(&term.scaled(&Rational::from_integer(sig.into())), 1);
        }
    }
    Ok(hp)
}

/// Degree from which the Hilbert function agrees with the Hilbert polynomial.
pub fn stabilization(b: &InvolutiveBasis) -> u32 {
    let hp = hilbert_polynomial(b);
    let bound = b.leading_derivatives().iter().map(Derivative::order).max().unwrap_or(0) + b.nvars() as u32;
    let agrees = |s: u32| Rational::from_integer(hilbert_function(b, s).into()) == hp.eval(i64::from(s));
    let mut s0 = bound;
    while s0 > 0 && agrees(s0 - 1) {
        s0 -= 1;
    }
    s0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub hp: UniPoly,
    pub stabilization: u32,
    /// `(s, HF(s))` for `s = 0..=stabilization + 3`.
    pub samples: Vec<(u32, u128)>,
}

pub fn hilbert_data(b: &InvolutiveBasis) -> HilbertData {
    let st = stabilization(b);
    HilbertData {
        hp: hilbert_polynomial(b),
        stabilization: st,
        samples: (0..=st + 3).map(|s| (s, hilbert_function(b, s))).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionDimension {
    Finite(u128),
    /// Cones with multipliers, per indeterminate.
    Infinite(Vec<(usize, Generator)>),
}

pub fn solution_dimension(b: &InvolutiveBasis) -> Result<SolutionDimension, AnalysisError> {
    let comps = complementary_set(b)?;
    let free: Vec<(usize, Generator)> = comps
        .iter()
        .flat_map(|c| {
            c.decomposition
                .generators
                .iter()
                .filter(|g| !g.multipliers.is_empty())
                .map(move |g| (c.indet, g.clone()))
        })
        .collect();
    if free.is_empty() {
        let count = comps.iter().map(|c| c.decomposition.cones().count() as u128).sum();
        Ok(SolutionDimension::Finite(count))
    } else {
        Ok(SolutionDimension::Infinite(free))
    }
}

/// Parametric derivatives of order at most `s`, by enumeration.
pub fn parametric_derivatives(b: &InvolutiveBasis, s: u32) -> Vec<Derivative> {
    let n = b.nvars();
    (0..b.nindets())
        .flat_map(|j| {
            monomial::monomials_up_to(n, s)
                .into_iter()
                .map(move |a| Derivative::new(j, a))
        })
        .filter(|d| classify(d, b) == DerivativeClass::Parametric)
        .collect()
}

/// IVP entries whose cones contain `theta`; exactly one when the spec is complete.
pub fn covering_entries<'a>(spec: &'a IvpSpec, theta: &Derivative) -> Vec<&'a IvpEntry> {
    spec.entries
        .iter()
        .filter(|e| {
            e.derivative.indet == theta.indet && monomial::in_cone(&e.derivative.index, e.multipliers, &theta.index)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::{linear, minimal_involutive_basis, CompletionOptions};
    use crate::diffpoly::{Ranking, Scheme, Tiebreak};
    use crate::monomial::{DivisionKind, MultiIndex};
    use crate::scalars::RationalFunction;

    fn janet_basis(kind: DivisionKind) -> InvolutiveBasis {
        let one = RationalFunction::from_int(3, 1);
        let x2 = RationalFunction::var(3, 1);
        let f = vec![
            linear(3, 1, &[(one.clone(), 0, &[2, 0, 0]), (-&x2, 0, &[0, 0, 2])]),
            linear(3, 1, &[(one, 0, &[0, 2, 0])]),
        ];
        let r = Ranking::new(Scheme::GrLex, 3, 1, Tiebreak::TermFirst);
        minimal_involutive_basis(&f, &CompletionOptions::new(kind, r)).unwrap()
    }

    #[test]
    fn binomial_polynomials() {
        let p = UniPoly::binomial_shifted(2, 2);
        for s in 0..6i64 {
            let want = (s + 2) * (s + 1) / 2;
            assert_eq!(p.eval(s), Rational::from_integer(want.into()));
        }
        assert_eq!(p.to_string(), "1/2*s^2 + 3/2*s + 1");
    }

    #[test]
    fn janet_example_counts() {
        for kind in DivisionKind::ALL {
            let b = janet_basis(kind);
            assert_eq!(
                hilbert_polynomial(&b),
                UniPoly::constant(Rational::from_integer(12.into()))
            );
            assert_eq!(hilbert_function(&b, 0), 1);
            assert_eq!(solution_dimension(&b).unwrap(), SolutionDimension::Finite(12));
            for s in 0..10 {
                assert_eq!(hilbert_function(&b, s) as usize, parametric_derivatives(&b, s).len());
            }
        }
    }

    #[test]
    fn graded_count_is_a_difference() {
        for kind in DivisionKind::ALL {
            let b = janet_basis(kind);
            for s in 1..9 {
                let diff = hilbert_function(&b, s) - hilbert_function(&b, s - 1);
                assert_eq!(hilbert_function_graded(&b, s).unwrap(), diff);
            }
        }
    }

    #[test]
    fn cartan_form_matches() {
        let b = janet_basis(DivisionKind::Pommaret);
        let hp = hilbert_polynomial(&b);
        let c = cartan_hilbert_polynomial(&b).unwrap();
        for s in 4..12 {
            assert_eq!(hp.eval(s), c.eval(s));
        }
    }

    #[test]
    fn classification() {
        let b = janet_basis(DivisionKind::Janet);
        let d = |a: &[u32]| Derivative::new(0, MultiIndex::new(a));
        assert_eq!(classify(&d(&[2, 0, 0]), &b), DerivativeClass::Principal);
        assert_eq!(classify(&d(&[1, 0, 2]), &b), DerivativeClass::Parametric);
        assert_eq!(classify(&d(&[0, 0, 0]), &b), DerivativeClass::Parametric);
    }
}
