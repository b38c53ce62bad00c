//! Multivariate GCD over ℚ: recursive subresultant remainder sequences, with a
//! plain Euclidean pass once only one variable is left.

use crate::monomial::MultiIndex;

use super::polynomial::{MultivarPolynomial, Rational};
use num_traits::One;

/// Monic (graded-lex leading coefficient 1) greatest common divisor.
pub fn gcd(a: &MultivarPolynomial, b: &MultivarPolynomial) -> MultivarPolynomial {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultivarPolynomial::one(n);
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        let mut g: Option<MultiIndex> = None;
        for (m, _) in a.terms().chain(b.terms()) {
            g = Some(match g {
                None => m.clone(),
                Some(g) => g.gcd(m),
            });
        }
        return MultivarPolynomial::monomial(n, g.unwrap(), Rational::one());
    }
    let am = a.monic();
    let bm = b.monic();
    if am == bm {
        return am;
    }
    let vars: Vec<usize> = (0..n).filter(|&v| a.contains_var(v) || b.contains_var(v)).collect();
    let v = *vars.last().expect("non-constant polynomial has a variable");
    if vars.len() == 1 {
        return euclid(am, bm, v);
    }
    if !a.contains_var(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.contains_var(v) {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = subresultant_gcd(pa, pb, v);
    (&primitive_in(&g, v) * &c).monic()
}

/// GCD of the coefficients of `a` viewed as a polynomial in `x_v`.
pub fn content_in(a: &MultivarPolynomial, v: usize) -> MultivarPolynomial {
    let mut coeffs: Vec<_> = a.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    if coeffs.is_empty() {
        return MultivarPolynomial::zero(a.nvars());
    }
    coeffs.sort_by_key(|c| (c.total_degree(), c.num_terms()));
    let mut g = coeffs[0].monic();
    for c in &coeffs[1..] {
        if g.is_one() {
            break;
        }
        g = gcd(&g, c);
    }
    g
}

fn primitive_in(a: &MultivarPolynomial, v: usize) -> MultivarPolynomial {
    let c = content_in(a, v);
    a.div_exact(&c).expect("content divides")
}

fn lead_in(p: &MultivarPolynomial, v: usize) -> MultivarPolynomial {
    p.coefficients_in(v).pop().expect("nonzero")
}

fn shifted(p: &MultivarPolynomial, v: usize, k: u32) -> MultivarPolynomial {
    let mut e = MultiIndex::zero(p.nvars());
    e.set(v, k);
    p.mul_monomial(&e, &Rational::one())
}

/// Univariate Euclid over the field ℚ.
fn euclid(mut a: MultivarPolynomial, mut b: MultivarPolynomial, v: usize) -> MultivarPolynomial {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let db = b.degree_in(v);
        let lb = lead_in(&b, v).as_constant().expect("univariate");
        let mut r = a;
        while !r.is_zero() && r.degree_in(v) >= db {
            let lr = lead_in(&r, v).as_constant().expect("univariate");
            r = &r - &shifted(&b, v, r.degree_in(v) - db).scale(&(lr / &lb));
        }
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// `lc(q)^(deg p - deg q + 1) * p mod q` in `x_v`.
fn pseudo_remainder(p: &MultivarPolynomial, q: &MultivarPolynomial, v: usize) -> MultivarPolynomial {
    let dq = q.degree_in(v);
    let lq = lead_in(q, v);
    let mut left = p.degree_in(v) + 1 - dq;
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(v) >= dq {
        let lr = lead_in(&r, v);
        r = &(&r * &lq) - &(&shifted(q, v, r.degree_in(v) - dq) * &lr);
        left -= 1;
    }
    for _ in 0..left {
        r = &r * &lq;
    }
    r
}

fn subresultant_gcd(pa: MultivarPolynomial, pb: MultivarPolynomial, v: usize) -> MultivarPolynomial {
    let n = pa.nvars();
    let (mut a, mut b) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let mut g = MultivarPolynomial::one(n);
    let mut h = MultivarPolynomial::one(n);
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(v) == 0 {
            return MultivarPolynomial::one(n);
        }
        let div = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&div).expect("subresultant division is exact");
        g = lead_in(&a, v);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}
