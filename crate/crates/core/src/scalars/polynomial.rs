use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::monomial::MultiIndex;

pub type Rational = BigRational;

/// Sparse distributed polynomial over ℚ in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultivarPolynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl MultivarPolynomial {
    pub fn zero(nvars: usize) -> Self {
        MultivarPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, MultiIndex::zero(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, MultiIndex::unit(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: MultiIndex, c: Rational) -> Self {
        debug_assert_eq!(m.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultivarPolynomial { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, Rational)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Leading term under graded-lexicographic order.
    pub fn leading_grlex(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_grlex(b.0))
    }

    fn leading_lex(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultivarPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &MultiIndex, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultivarPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k + m, a * c)).collect(),
        }
    }

    /// Scales so that the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_grlex() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.deg_i(i);
            if e == 0 {
                continue;
            }
            let mut k = m.clone();
            k.set(i, e - 1);
            out.add_term(k, c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.deg_i(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::deg).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.deg_i(v) > 0)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultivarPolynomial) -> Option<MultivarPolynomial> {
        let (lm_d, lc_d) = d.leading_lex()?;
        if d.terms.len() == 1 {
            let mut q = Self::zero(self.nvars);
            for (m, c) in &self.terms {
                q.terms.insert(m.checked_sub(lm_d)?, c / lc_d);
            }
            return Some(q);
        }
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((lm_r, lc_r)) = rem.leading_lex() {
            let e = lm_r.checked_sub(lm_d)?;
            let c = lc_r / lc_d;
            rem = &rem - &d.mul_monomial(&e, &c);
            q.add_term(e, c);
        }
        Some(q)
    }

    /// Coefficients in `x_v`, indexed by power; the coefficients do not contain `x_v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<MultivarPolynomial> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.deg_i(v) as usize;
            let mut k = m.clone();
            k.set(v, 0);
            out[e].terms.insert(k, c.clone());
        }
        out
    }

    /// Substitutes polynomials for the variables (all in a common ring).
    pub fn substitute(&self, values: &[MultivarPolynomial]) -> MultivarPolynomial {
        let nv = values.first().map_or(self.nvars, |v| v.nvars);
        let mut out = Self::zero(nv);
        for (m, c) in &self.terms {
            let mut t = Self::constant(nv, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &values[i].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names }
    }
}

impl Add for &MultivarPolynomial {
    type Output = MultivarPolynomial;

    fn add(self, rhs: &MultivarPolynomial) -> MultivarPolynomial {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &MultivarPolynomial {
    type Output = MultivarPolynomial;

    fn sub(self, rhs: &MultivarPolynomial) -> MultivarPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultivarPolynomial {
    type Output = MultivarPolynomial;

    fn mul(self, rhs: &MultivarPolynomial) -> MultivarPolynomial {
        let mut out = MultivarPolynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultivarPolynomial {
    type Output = MultivarPolynomial;

    fn neg(self) -> MultivarPolynomial {
        self.scale(&-Rational::one())
    }
}

pub struct PolyDisplay<'a> {
    p: &'a MultivarPolynomial,
    names: &'a [String],
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.p.terms.iter().collect();
        terms.sort_by(|a, b| b.0.cmp_grlex(a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", m.display_with(self.names))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), m.display_with(self.names))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultivarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::monomial::default_names(self.nvars);
        write!(f, "{}", self.display_with(&names))
    }
}
