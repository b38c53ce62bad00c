use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::polynomial::{MultivarPolynomial, Rational};
use super::ScalarError;

/// Reduced quotient of polynomials: `gcd(num, den) = 1` and the graded-lex
/// leading coefficient of `den` is 1. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: MultivarPolynomial,
    den: MultivarPolynomial,
}

impl RationalFunction {
    pub fn new(num: MultivarPolynomial, den: MultivarPolynomial) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: MultivarPolynomial, den: MultivarPolynomial) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if let Some(c) = den.as_constant() {
            return RationalFunction {
                num: num.scale(&c.recip()),
                den: MultivarPolynomial::one(n),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::with_monic_den(num, den)
    }

    fn with_monic_den(num: MultivarPolynomial, den: MultivarPolynomial) -> Self {
        let lc = den.leading_grlex().map(|(_, c)| c.clone()).unwrap();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunction {
            num: MultivarPolynomial::zero(nvars),
            den: MultivarPolynomial::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultivarPolynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MultivarPolynomial::constant(nvars, c))
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MultivarPolynomial::var(nvars, i))
    }

    pub fn from_poly(p: MultivarPolynomial) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: MultivarPolynomial::one(n),
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &MultivarPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &MultivarPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        let dn = self.num.derivative(i);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derivative(i);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::canonical(num, &self.den * &self.den)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> RationalDisplay<'a> {
        RationalDisplay { r: self, names }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let l = self.den.div_exact(&g).unwrap();
        let r = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &r) + &(&rhs.num * &l);
        RationalFunction::canonical(num, &self.den * &r)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &-rhs
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        let n = self.nvars();
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(n);
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        let split = |p: &MultivarPolynomial, q: &MultivarPolynomial| {
            let g = gcd(p, q);
            if g.is_one() {
                (p.clone(), q.clone())
            } else {
                (p.div_exact(&g).unwrap(), q.div_exact(&g).unwrap())
            }
        };
        let (n1, d2) = split(&self.num, &rhs.den);
        let (n2, d1) = split(&rhs.num, &self.den);
        RationalFunction::with_monic_den(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

pub struct RationalDisplay<'a> {
    r: &'a RationalFunction,
    names: &'a [String],
}

impl RationalDisplay<'_> {
    /// True when the rendering can be juxtaposed with `*` without parentheses.
    pub fn is_atomic(&self) -> bool {
        self.r.den.is_one() && self.r.num.num_terms() <= 1
    }
}

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.r.num.display_with(self.names);
        if self.r.den.is_one() {
            return write!(f, "{num}");
        }
        if self.r.num.num_terms() > 1 {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        let den = self.r.den.display_with(self.names);
        let simple_den = self.r.den.num_terms() == 1 && self.r.den.terms().next().is_some_and(|(m, _)| m.deg() == 1);
        if simple_den {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::monomial::default_names(self.nvars());
        write!(f, "{}", self.display_with(&names))
    }
}
