//! Derivatives `∂_α y_j`, rankings, and differential polynomials linear in the
//! `y_j` with coefficients in the field of rational functions of `x`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use smallvec::SmallVec;
use thiserror::Error;

use crate::monomial::{MultiIndex, VarSet};
use crate::scalars::{RationalFunction, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffPolyError {
    #[error("cannot make the zero polynomial monic")]
    ZeroPolynomial,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("unknown ranking scheme `{0}`")]
    UnknownScheme(String),
    #[error("unknown tiebreak `{0}`")]
    UnknownTiebreak(String),
    #[error("`{0:?}` is not a permutation of 0..{1}")]
    NotAPermutation(Vec<usize>, usize),
}

/// `∂_α y_j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Derivative {
    pub indet: usize,
    pub index: MultiIndex,
}

impl Derivative {
    pub fn new(indet: usize, index: MultiIndex) -> Self {
        Derivative { indet, index }
    }

    /// The undifferentiated indeterminate `y_j` in `n` variables.
    pub fn base(indet: usize, n: usize) -> Self {
        Derivative::new(indet, MultiIndex::zero(n))
    }

    pub fn order(&self) -> u32 {
        self.index.deg()
    }

    pub fn differentiated(&self, i: usize) -> Derivative {
        Derivative::new(self.indet, self.index.incremented(i))
    }

    pub fn prolonged(&self, beta: &MultiIndex) -> Derivative {
        Derivative::new(self.indet, &self.index + beta)
    }

    /// Least common derivative; only defined for the same indeterminate.
    pub fn lcm(&self, other: &Derivative) -> Option<Derivative> {
        (self.indet == other.indet).then(|| Derivative::new(self.indet, self.index.lcm(&other.index)))
    }

    /// `β` with `∂_β self = other`, if any.
    pub fn quotient(&self, other: &Derivative) -> Option<MultiIndex> {
        if self.indet != other.indet {
            return None;
        }
        other.index.checked_sub(&self.index)
    }

    pub fn display_with<'a>(&'a self, names: &'a Names) -> DerivativeDisplay<'a> {
        DerivativeDisplay { d: self, names }
    }
}

impl fmt::Debug for Derivative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D[y{},{:?}]", self.indet + 1, self.index)
    }
}

pub struct DerivativeDisplay<'a> {
    d: &'a Derivative,
    names: &'a Names,
}

impl fmt::Display for DerivativeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = &self.names.funcs[self.d.indet];
        if self.d.order() == 0 {
            return f.write_str(name);
        }
        write!(f, "D[{name},{{")?;
        for (k, e) in self.d.index.exponents().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}]")
    }
}

/// Names of the independent variables and of the indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Names {
    pub vars: Vec<String>,
    pub funcs: Vec<String>,
}

impl Names {
    pub fn new(vars: Vec<String>, funcs: Vec<String>) -> Self {
        Names { vars, funcs }
    }

    /// `x1..xn`, and `y` or `y1..ym`.
    pub fn default_for(n: usize, m: usize) -> Self {
        let funcs = if m == 1 {
            vec!["y".to_string()]
        } else {
            (1..=m).map(|j| format!("y{j}")).collect()
        };
        Names::new(crate::monomial::default_names(n), funcs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    Lex,
    #[default]
    GrLex,
    DegRevLex,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Lex => "lex",
            Scheme::GrLex => "grlex",
            Scheme::DegRevLex => "degrevlex",
        }
    }
}

impl FromStr for Scheme {
    type Err = DiffPolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lex" => Ok(Scheme::Lex),
            "grlex" | "deglex" => Ok(Scheme::GrLex),
            "degrevlex" | "grevlex" => Ok(Scheme::DegRevLex),
            _ => Err(DiffPolyError::UnknownScheme(s.to_string())),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How derivatives of different indeterminates compare once the order (for
/// orderly schemes) is equal: by the multiindex first, or by the
/// indeterminate first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Tiebreak {
    #[default]
    TermFirst,
    IndetFirst,
}

impl Tiebreak {
    pub fn name(self) -> &'static str {
        match self {
            Tiebreak::TermFirst => "term",
            Tiebreak::IndetFirst => "indet",
        }
    }
}

impl FromStr for Tiebreak {
    type Err = DiffPolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "term" | "term-first" => Ok(Tiebreak::TermFirst),
            "indet" | "indet-first" | "indeterminate" => Ok(Tiebreak::IndetFirst),
            _ => Err(DiffPolyError::UnknownTiebreak(s.to_string())),
        }
    }
}

impl fmt::Display for Tiebreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sort key of a derivative: larger key means higher rank.
pub type RankKey = SmallVec<[i64; 10]>;

/// A ranking of derivatives. `variable_order[0]` is the highest variable and
/// `indeterminate_order[0]` the highest indeterminate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ranking {
    pub scheme: Scheme,
    pub variable_order: Vec<usize>,
    pub indeterminate_order: Vec<usize>,
    pub tiebreak: Tiebreak,
    // indeterminate index -> priority, higher wins
    priority: Vec<i64>,
}

fn check_permutation(p: &[usize], n: usize) -> Result<(), DiffPolyError> {
    let mut seen = vec![false; n];
    if p.len() != n {
        return Err(DiffPolyError::NotAPermutation(p.to_vec(), n));
    }
    for &i in p {
        if i >= n || seen[i] {
            return Err(DiffPolyError::NotAPermutation(p.to_vec(), n));
        }
        seen[i] = true;
    }
    Ok(())
}

impl Ranking {
    /// Variables and indeterminates ranked by index.
    pub fn new(scheme: Scheme, nvars: usize, nindets: usize, tiebreak: Tiebreak) -> Self {
        Self::with_orders(scheme, (0..nvars).collect(), (0..nindets).collect(), tiebreak)
            .expect("identity permutations")
    }

    pub fn with_orders(
        scheme: Scheme,
        variable_order: Vec<usize>,
        indeterminate_order: Vec<usize>,
        tiebreak: Tiebreak,
    ) -> Result<Self, DiffPolyError> {
        check_permutation(&variable_order, variable_order.len())?;
        check_permutation(&indeterminate_order, indeterminate_order.len())?;
        let m = indeterminate_order.len();
        let mut priority = vec![0; m];
        for (pos, &j) in indeterminate_order.iter().enumerate() {
            priority[j] = (m - pos) as i64;
        }
        Ok(Ranking {
            scheme,
            variable_order,
            indeterminate_order,
            tiebreak,
            priority,
        })
    }

    pub fn nvars(&self) -> usize {
        self.variable_order.len()
    }

    pub fn nindets(&self) -> usize {
        self.indeterminate_order.len()
    }

    /// The same variable and indeterminate orders under another scheme.
    pub fn with_scheme(&self, scheme: Scheme) -> Ranking {
        Ranking { scheme, ..self.clone() }
    }

    /// Orderly: the order of differentiation decides first.
    pub fn is_orderly(&self) -> bool {
        self.scheme != Scheme::Lex
    }

    /// `α` with exponents listed from the highest variable down.
    pub fn ranked(&self, alpha: &MultiIndex) -> MultiIndex {
        alpha.permuted(&self.variable_order)
    }

    /// Inverse of [`Ranking::ranked`].
    pub fn unranked(&self, ranked: &MultiIndex) -> MultiIndex {
        let mut out = MultiIndex::zero(ranked.len());
        for (k, &v) in self.variable_order.iter().enumerate() {
            out.set(v, ranked.deg_i(k));
        }
        out
    }

    /// Maps positions in ranked coordinates back to variable indices.
    pub fn unrank_vars(&self, set: VarSet) -> VarSet {
        VarSet::from_indices(set.iter().map(|k| self.variable_order[k]))
    }

    pub fn rank_key(&self, d: &Derivative) -> RankKey {
        let a = d.index.exponents();
        let mut key = RankKey::new();
        let p = self.priority[d.indet];
        if self.is_orderly() {
            key.push(i64::from(d.order()));
        }
        if self.tiebreak == Tiebreak::IndetFirst {
            key.push(p);
        }
        match self.scheme {
            Scheme::Lex | Scheme::GrLex => {
                key.extend(self.variable_order.iter().map(|&v| i64::from(a[v])));
            }
            Scheme::DegRevLex => {
                key.extend(self.variable_order.iter().rev().map(|&v| -i64::from(a[v])));
            }
        }
        if self.tiebreak == Tiebreak::TermFirst {
            key.push(p);
        }
        key
    }

    pub fn compare(&self, a: &Derivative, b: &Derivative) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        self.rank_key(a).cmp(&self.rank_key(b))
    }

    pub fn max<'a>(&self, a: &'a Derivative, b: &'a Derivative) -> &'a Derivative {
        if self.compare(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}-first)", self.scheme, self.tiebreak)
    }
}

/// `c + Σ a_θ θ` with `c, a_θ ∈ K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearDiffPoly {
    nvars: usize,
    nindets: usize,
    constant: RationalFunction,
    terms: BTreeMap<Derivative, RationalFunction>,
}

impl LinearDiffPoly {
    pub fn zero(nvars: usize, nindets: usize) -> Self {
        LinearDiffPoly {
            nvars,
            nindets,
            constant: RationalFunction::zero(nvars),
            terms: BTreeMap::new(),
        }
    }

    /// The single term `c·θ`.
    pub fn term(nvars: usize, nindets: usize, theta: Derivative, c: RationalFunction) -> Self {
        let mut p = Self::zero(nvars, nindets);
        p.add_term(theta, c);
        p
    }

    pub fn from_terms<I>(nvars: usize, nindets: usize, constant: RationalFunction, it: I) -> Self
    where
        I: IntoIterator<Item = (Derivative, RationalFunction)>,
    {
        let mut p = Self::zero(nvars, nindets);
        p.constant = constant;
        for (d, c) in it {
            p.add_term(d, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nindets(&self) -> usize {
        self.nindets
    }

    pub fn constant(&self) -> &RationalFunction {
        &self.constant
    }

    pub fn set_constant(&mut self, c: RationalFunction) {
        self.constant = c;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    /// No derivative terms but a nonzero constant: the equation `c = 0` has no solution.
    pub fn is_inconsistent(&self) -> bool {
        self.terms.is_empty() && !self.constant.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Derivative, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Derivative) -> Option<&RationalFunction> {
        self.terms.get(d)
    }

    pub fn add_term(&mut self, d: Derivative, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn remove_term(&mut self, d: &Derivative) -> Option<RationalFunction> {
        self.terms.remove(d)
    }

    pub fn leading(&self, r: &Ranking) -> Option<(&Derivative, &RationalFunction)> {
        self.terms.iter().max_by(|a, b| r.compare(a.0, b.0))
    }

    pub fn ld(&self, r: &Ranking) -> Option<&Derivative> {
        self.leading(r).map(|(d, _)| d)
    }

    pub fn lc(&self, r: &Ranking) -> Option<&RationalFunction> {
        self.leading(r).map(|(_, c)| c)
    }

    /// Terms in descending rank.
    pub fn sorted_terms(&self, r: &Ranking) -> Vec<(&Derivative, &RationalFunction)> {
        let mut v: Vec<_> = self.terms.iter().map(|(d, c)| (r.rank_key(d), d, c)).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v.into_iter().map(|(_, d, c)| (d, c)).collect()
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.nindets);
        }
        LinearDiffPoly {
            nvars: self.nvars,
            nindets: self.nindets,
            constant: &self.constant * c,
            terms: self.terms.iter().map(|(d, a)| (d.clone(), a * c)).collect(),
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &LinearDiffPoly, c: &RationalFunction) -> Self {
        let mut out = self.clone();
        out.constant = &out.constant + &(&other.constant * c);
        for (d, a) in &other.terms {
            out.add_term(d.clone(), a * c);
        }
        out
    }

    pub fn differentiate(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.nindets);
        out.constant = self.constant.partial_derivative(i);
        for (d, c) in &self.terms {
            out.add_term(d.differentiated(i), c.clone());
            out.add_term(d.clone(), c.partial_derivative(i));
        }
        out
    }

    /// `∂_β self`.
    pub fn prolong(&self, beta: &MultiIndex) -> Self {
        let mut out = self.clone();
        for (i, &e) in beta.exponents().iter().enumerate() {
            for _ in 0..e {
                out = out.differentiate(i);
            }
        }
        out
    }

    /// Divides through by the leading coefficient.
    pub fn normalize(&self, r: &Ranking) -> Result<Self, DiffPolyError> {
        if let Some(lc) = self.lc(r) {
            if lc.is_one() {
                return Ok(self.clone());
            }
            return Ok(self.scale(&lc.inv()?));
        }
        if self.constant.is_zero() {
            return Err(DiffPolyError::ZeroPolynomial);
        }
        Ok(self.scale(&self.constant.inv()?))
    }

    pub fn is_monic(&self, r: &Ranking) -> bool {
        self.lc(r).is_some_and(RationalFunction::is_one)
    }

    /// Substitutes explicit candidate solutions `y_j = sol[j]` (rational
    /// functions of `x`); zero means the equation is satisfied.
    pub fn evaluate(&self, sol: &[RationalFunction]) -> RationalFunction {
        let mut acc = self.constant.clone();
        for (d, c) in &self.terms {
            let mut v = sol[d.indet].clone();
            for (i, &e) in d.index.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = v.partial_derivative(i);
                }
            }
            acc = &acc + &(c * &v);
        }
        acc
    }

    pub fn display_with<'a>(&'a self, names: &'a Names, r: &'a Ranking) -> LinearDisplay<'a> {
        LinearDisplay { p: self, names, r }
    }
}

impl std::ops::Add for &LinearDiffPoly {
    type Output = LinearDiffPoly;

    fn add(self, rhs: &LinearDiffPoly) -> LinearDiffPoly {
        self.add_scaled(rhs, &RationalFunction::one(self.nvars))
    }
}

impl std::ops::Sub for &LinearDiffPoly {
    type Output = LinearDiffPoly;

    fn sub(self, rhs: &LinearDiffPoly) -> LinearDiffPoly {
        self.add_scaled(rhs, &RationalFunction::from_int(self.nvars, -1))
    }
}

impl fmt::Debug for LinearDiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Names::default_for(self.nvars, self.nindets);
        let r = Ranking::new(Scheme::GrLex, self.nvars, self.nindets, Tiebreak::TermFirst);
        write!(f, "{}", self.display_with(&names, &r))
    }
}

pub struct LinearDisplay<'a> {
    p: &'a LinearDiffPoly,
    names: &'a Names,
    r: &'a Ranking,
}

fn is_negative(c: &RationalFunction) -> bool {
    let num = c.numer();
    num.num_terms() == 1 && num.terms().next().is_some_and(|(_, a)| a.is_negative())
}

fn write_addend(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &RationalFunction,
    body: Option<String>,
    vars: &[String],
) -> fmt::Result {
    let neg = is_negative(c);
    let abs = if neg { -c } else { c.clone() };
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let Some(body) = body else {
        return write!(f, "{}", abs.display_with(vars));
    };
    if abs.is_one() {
        return f.write_str(&body);
    }
    if abs.is_polynomial() && abs.numer().num_terms() > 1 {
        write!(f, "({})*{body}", abs.display_with(vars))
    } else {
        write!(f, "{}*{body}", abs.display_with(vars))
    }
}

impl fmt::Display for LinearDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.p.sorted_terms(self.r) {
            let body = d.display_with(self.names).to_string();
            write_addend(f, first, c, Some(body), &self.names.vars)?;
            first = false;
        }
        if !self.p.constant.is_zero() {
            write_addend(f, first, &self.p.constant, None, &self.names.vars)?;
        }
        Ok(())
    }
}
