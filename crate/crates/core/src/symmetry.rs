//! Lie point symmetries of polynomial PDE systems in solved form: prolonged
//! vector fields and the linear determining system for `ξ`, `η`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::analysis::{self, AnalysisError, SolutionDimension};
use crate::completion::{minimal_involutive_basis, CompletionError, CompletionOptions, InvolutiveBasis};
use crate::diffpoly::{Derivative, LinearDiffPoly, Names, Ranking};
use crate::monomial::MultiIndex;
use crate::scalars::{fmt_rational, MultivarPolynomial, Rational, RationalFunction};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error("prolongation order {q} is below the derivative order {needed} of the equation")]
    OrderTooSmall { q: u32, needed: u32 },
    #[error("equation for {0} has a right-hand side containing its own lead or a derivative of it")]
    SelfReferential(String),
    #[error("substitution of leads does not reach a fixed point")]
    Circular,
    #[error("the generated condition is not linear in the vector field")]
    NonLinear,
    #[error("the equation already contains vector field symbols")]
    FieldInInput,
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Independent variable `x_i`, jet coordinate `y_{j;α}` (`α = 0` is `y_j`),
/// or a derivative of vector field component `k` (`ξ_k` for `k < n`, then
/// `η_{k-n}`) with respect to `(x_1..x_n, y_1..y_m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Indep(usize),
    Dep(usize, MultiIndex),
    Field(usize, MultiIndex),
}

type PowerProduct = Vec<(Symbol, u32)>;

fn mul_pp(a: &PowerProduct, b: &PowerProduct) -> PowerProduct {
    let mut m: BTreeMap<Symbol, u32> = a.iter().cloned().collect();
    for (s, e) in b {
        *m.entry(s.clone()).or_insert(0) += e;
    }
    m.into_iter().collect()
}

/// Polynomial with rational coefficients in [`Symbol`]s.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffPolynomial {
    terms: BTreeMap<PowerProduct, Rational>,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![(s, 1)], Rational::one());
        p
    }

    pub fn indep(i: usize) -> Self {
        Self::symbol(Symbol::Indep(i))
    }

    /// `y_{j;α}`.
    pub fn dep(j: usize, alpha: &[u32]) -> Self {
        Self::symbol(Symbol::Dep(j, MultiIndex::new(alpha)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PowerProduct, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, pp: PowerProduct, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(pp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = Self::zero();
        for (k, v) in &self.terms {
            p.add_term(k.clone(), v * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::int(1), |acc, _| &acc * self)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|pp| pp.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn partial(&self, s: &Symbol) -> Self {
        let mut p = Self::zero();
        for (pp, c) in &self.terms {
            if let Some(pos) = pp.iter().position(|(t, _)| t == s) {
                let e = pp[pos].1;
                let mut rest = pp.clone();
                if e == 1 {
                    rest.remove(pos);
                } else {
                    rest[pos].1 = e - 1;
                }
                p.add_term(rest, c * Rational::from_integer(e.into()));
            }
        }
        p
    }

    pub fn substitute(&self, s: &Symbol, by: &DiffPolynomial) -> Self {
        let mut out = Self::zero();
        let mut powers: Vec<DiffPolynomial> = vec![Self::int(1)];
        for (pp, c) in &self.terms {
            let Some(pos) = pp.iter().position(|(t, _)| t == s) else {
                out.add_term(pp.clone(), c.clone());
                continue;
            };
            let e = pp[pos].1 as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * by;
                powers.push(next);
            }
            let mut rest = pp.clone();
            rest.remove(pos);
            for (q, d) in &powers[e].terms {
                out.add_term(mul_pp(&rest, q), c * d);
            }
        }
        out
    }

    /// Highest order of a jet coordinate present; 0 if none.
    pub fn max_order(&self) -> u32 {
        self.symbols()
            .iter()
            .filter_map(|s| match s {
                Symbol::Dep(_, a) => Some(a.deg()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn display_with<'a>(&'a self, ansatz: &'a VectorFieldAnsatz) -> DiffPolyDisplay<'a> {
        DiffPolyDisplay { p: self, a: ansatz }
    }
}

impl std::ops::Add for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn add(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        let mut p = self.clone();
        for (k, v) in &rhs.terms {
            p.add_term(k.clone(), v.clone());
        }
        p
    }
}

impl std::ops::Sub for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn sub(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        let mut p = self.clone();
        for (k, v) in &rhs.terms {
            p.add_term(k.clone(), -v.clone());
        }
        p
    }
}

impl std::ops::Mul for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn mul(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        let mut p = DiffPolynomial::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                p.add_term(mul_pp(a, b), c * d);
            }
        }
        p
    }
}

pub struct DiffPolyDisplay<'a> {
    p: &'a DiffPolynomial,
    a: &'a VectorFieldAnsatz,
}

impl fmt::Display for DiffPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (k, (pp, c)) in self.p.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || pp.is_empty() {
                factors.push(fmt_rational(&a));
            }
            for (s, e) in pp {
                let base = self.a.symbol_name(s);
                factors.push(if *e == 1 { base } else { format!("{base}^{e}") });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// `ξ_i(x, y)` for the independent variables and `η_j(x, y)` for the
/// dependent ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFieldAnsatz {
    pub indep: Vec<String>,
    pub dep: Vec<String>,
}

impl VectorFieldAnsatz {
    pub fn new(indep: Vec<String>, dep: Vec<String>) -> Self {
        VectorFieldAnsatz { indep, dep }
    }

    pub fn n(&self) -> usize {
        self.indep.len()
    }

    pub fn m(&self) -> usize {
        self.dep.len()
    }

    /// Variables and indeterminates of the determining system.
    pub fn names(&self) -> Names {
        let vars = self.indep.iter().chain(&self.dep).cloned().collect();
        let mut funcs: Vec<String> = (1..=self.n()).map(|i| format!("xi{i}")).collect();
        if self.m() == 1 {
            funcs.push("eta".into());
        } else {
            funcs.extend((1..=self.m()).map(|j| format!("eta{j}")));
        }
        Names::new(vars, funcs)
    }

    fn symbol_name(&self, s: &Symbol) -> String {
        let sub = |a: &MultiIndex, vars: &[String]| -> String {
            a.exponents()
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(vars[i].clone(), e as usize))
                .collect::<Vec<_>>()
                .join("")
        };
        match s {
            Symbol::Indep(i) => self.indep[*i].clone(),
            Symbol::Dep(j, a) if a.deg() == 0 => self.dep[*j].clone(),
            Symbol::Dep(j, a) => format!("{}_{}", self.dep[*j], sub(a, &self.indep)),
            Symbol::Field(k, b) => {
                let names = self.names();
                let base = names.funcs[*k].clone();
                if b.deg() == 0 {
                    base
                } else {
                    format!("{base}_{}", sub(b, &names.vars))
                }
            }
        }
    }

    fn field(&self, k: usize) -> Symbol {
        Symbol::Field(k, MultiIndex::zero(self.n() + self.m()))
    }

    /// `ξ_i` as a polynomial.
    pub fn xi(&self, i: usize) -> DiffPolynomial {
        DiffPolynomial::symbol(self.field(i))
    }

    /// `η_j` as a polynomial.
    pub fn eta(&self, j: usize) -> DiffPolynomial {
        DiffPolynomial::symbol(self.field(self.n() + j))
    }

    /// Total derivative `D_i`.
    pub fn total_derivative(&self, p: &DiffPolynomial, i: usize) -> DiffPolynomial {
        let n = self.n();
        let mut out = DiffPolynomial::zero();
        for s in p.symbols() {
            let ds = match &s {
                Symbol::Indep(k) => {
                    if *k == i {
                        DiffPolynomial::int(1)
                    } else {
                        continue;
                    }
                }
                Symbol::Dep(j, a) => DiffPolynomial::symbol(Symbol::Dep(*j, a.incremented(i))),
                Symbol::Field(k, b) => {
                    let mut d = DiffPolynomial::symbol(Symbol::Field(*k, b.incremented(i)));
                    for j in 0..self.m() {
                        let yj = DiffPolynomial::symbol(Symbol::Dep(j, MultiIndex::unit(n, i)));
                        let fj = DiffPolynomial::symbol(Symbol::Field(*k, b.incremented(n + j)));
                        d = &d + &(&yj * &fj);
                    }
                    d
                }
            };
            out = &out + &(&p.partial(&s) * &ds);
        }
        out
    }

    /// Prolongation coefficient `ζ_{j;path}`; independent of the order of `path`.
    pub fn zeta(&self, j: usize, path: &[usize]) -> DiffPolynomial {
        let mut sorted = path.to_vec();
        sorted.sort_unstable();
        let n = self.n();
        let mut alpha = MultiIndex::zero(n);
        let mut z = self.eta(j);
        for &i in &sorted {
            z = self.total_derivative(&z, i);
            for q in 0..n {
                let y = DiffPolynomial::symbol(Symbol::Dep(j, alpha.incremented(q)));
                let dxi = self.total_derivative(&self.xi(q), i);
                z = &z - &(&y * &dxi);
            }
            alpha = alpha.incremented(i);
        }
        z
    }

    fn zeta_of(&self, j: usize, alpha: &MultiIndex) -> DiffPolynomial {
        let path: Vec<usize> = alpha
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        self.zeta(j, &path)
    }

    /// `Ẑ^{(q)} f`.
    pub fn apply_prolonged_field(&self, f: &DiffPolynomial, q: u32) -> Result<DiffPolynomial, SymmetryError> {
        let needed = f.max_order();
        if needed > q {
            return Err(SymmetryError::OrderTooSmall { q, needed });
        }
        let mut out = DiffPolynomial::zero();
        for s in f.symbols() {
            let coef = match &s {
                Symbol::Indep(i) => self.xi(*i),
                Symbol::Dep(j, a) if a.deg() == 0 => self.eta(*j),
                Symbol::Dep(j, a) => self.zeta_of(*j, a),
                Symbol::Field(..) => return Err(SymmetryError::FieldInInput),
            };
            out = &out + &(&coef * &f.partial(&s));
        }
        Ok(out)
    }
}

/// `y_{j;lead} = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedEquation {
    pub indet: usize,
    pub lead: MultiIndex,
    pub rhs: DiffPolynomial,
}

impl SolvedEquation {
    pub fn new(indet: usize, lead: MultiIndex, rhs: DiffPolynomial) -> Self {
        SolvedEquation { indet, lead, rhs }
    }

    fn lead_symbol(&self) -> Symbol {
        Symbol::Dep(self.indet, self.lead.clone())
    }

    /// `y_{j;α} - rhs`.
    pub fn as_polynomial(&self) -> DiffPolynomial {
        &DiffPolynomial::symbol(self.lead_symbol()) - &self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct DeterminingSystem {
    pub equations: Vec<LinearDiffPoly>,
    pub names: Names,
}

const SUBSTITUTION_ROUNDS: usize = 64;

struct OnShell<'a> {
    ansatz: &'a VectorFieldAnsatz,
    eqs: &'a [SolvedEquation],
    cache: HashMap<Symbol, DiffPolynomial>,
}

impl OnShell<'_> {
    fn replacement(&mut self, s: &Symbol) -> Option<DiffPolynomial> {
        let Symbol::Dep(j, a) = s else { return None };
        if let Some(p) = self.cache.get(s) {
            return Some(p.clone());
        }
        let eq = self.eqs.iter().find(|e| e.indet == *j && e.lead.divides(a))?;
        let gamma = a.checked_sub(&eq.lead).expect("lead divides");
        let mut p = eq.rhs.clone();
        for (i, &e) in gamma.exponents().iter().enumerate() {
            for _ in 0..e {
                p = self.ansatz.total_derivative(&p, i);
            }
        }
        self.cache.insert(s.clone(), p.clone());
        Some(p)
    }

    fn reduce(&mut self, mut p: DiffPolynomial) -> Result<DiffPolynomial, SymmetryError> {
        for _ in 0..SUBSTITUTION_ROUNDS {
            let mut changed = false;
            for s in p.symbols() {
                if let Some(by) = self.replacement(&s) {
                    p = p.substitute(&s, &by);
                    changed = true;
                }
            }
            if !changed {
                return Ok(p);
            }
        }
        Err(SymmetryError::Circular)
    }
}

/// Splits `p` by power products of jet coordinates of order ≥ 1; each
/// coefficient is linear in the vector field.
fn collect(p: &DiffPolynomial, ansatz: &VectorFieldAnsatz) -> Result<Vec<LinearDiffPoly>, SymmetryError> {
    let (n, m) = (ansatz.n(), ansatz.m());
    let nv = n + m;
    let mut groups: BTreeMap<PowerProduct, LinearDiffPoly> = BTreeMap::new();
    for (pp, c) in p.terms() {
        let mut key = Vec::new();
        let mut coeff = MultiIndex::zero(nv);
        let mut field: Option<Derivative> = None;
        for (s, e) in pp {
            match s {
                Symbol::Dep(_, a) if a.deg() > 0 => key.push((s.clone(), *e)),
                Symbol::Dep(j, _) => coeff.set(n + j, coeff.deg_i(n + j) + e),
                Symbol::Indep(i) => coeff.set(*i, coeff.deg_i(*i) + e),
                Symbol::Field(k, b) => {
                    if *e != 1 || field.is_some() {
                        return Err(SymmetryError::NonLinear);
                    }
                    field = Some(Derivative::new(*k, b.clone()));
                }
            }
        }
        let rf = RationalFunction::from_poly(MultivarPolynomial::monomial(nv, coeff, c.clone()));
        let entry = groups.entry(key).or_insert_with(|| LinearDiffPoly::zero(nv, nv));
        match field {
            Some(d) => entry.add_term(d, rf),
            None => {
                let c = entry.constant() + &rf;
                entry.set_constant(c);
            }
        }
    }
    Ok(groups.into_values().filter(|q| !q.is_zero()).collect())
}

/// Invariance conditions of `eqs` under the point transformations generated
/// by `ansatz`, split into linear equations for `ξ`, `η`, each made monic
/// under `ranking`.
pub fn determining_system(
    eqs: &[SolvedEquation],
    ansatz: &VectorFieldAnsatz,
    ranking: &Ranking,
) -> Result<DeterminingSystem, SymmetryError> {
    for e in eqs {
        let own = e.rhs.symbols().into_iter().any(|s| match s {
            Symbol::Dep(j, a) => j == e.indet && e.lead.divides(&a),
            Symbol::Field(..) => true,
            _ => false,
        });
        if own {
            return Err(SymmetryError::SelfReferential(ansatz.symbol_name(&e.lead_symbol())));
        }
    }
    let mut shell = OnShell {
        ansatz,
        eqs,
        cache: HashMap::new(),
    };
    let mut out: Vec<LinearDiffPoly> = Vec::new();
    for e in eqs {
        let f = e.as_polynomial();
        let z = ansatz.apply_prolonged_field(&f, f.max_order())?;
        let z = shell.reduce(z)?;
        for p in collect(&z, ansatz)? {
            let p = p.normalize(ranking).expect("nonzero");
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(DeterminingSystem {
        equations: out,
        names: ansatz.names(),
    })
}

#[derive(Clone, Debug)]
pub struct SymmetryResult {
    pub system: DeterminingSystem,
    pub basis: InvolutiveBasis,
    pub dimension: SolutionDimension,
}

/// Determining system, its minimal involutive basis and the dimension of
/// its solution space.
pub fn symmetry_dimension(
    eqs: &[SolvedEquation],
    ansatz: &VectorFieldAnsatz,
    opts: &CompletionOptions,
) -> Result<SymmetryResult, SymmetryError> {
    let system = determining_system(eqs, ansatz, &opts.main)?;
    let basis = minimal_involutive_basis(&system.equations, opts)?;
    let dimension = analysis::solution_dimension(&basis)?;
    Ok(SymmetryResult {
        system,
        basis,
        dimension,
    })
}
