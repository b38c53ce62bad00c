//! Problem files: `key: value` directives, one per line, `#` comments.
//!
//! ```text
//! vars: x1 x2 x3
//! funcs: y
//! ranking: grlex
//! eq: D[y,{2,0,0}] - x2*D[y,{0,0,2}]
//! eq: D[y,x2,x2]
//! ```

use involutive::diffpoly::{Derivative, LinearDiffPoly, Names, Scheme, Tiebreak};
use involutive::monomial::MultiIndex;
use involutive::scalars::{Rational, RationalFunction};
use involutive::symmetry::{DiffPolynomial, SolvedEquation};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Num(Rational),
    Var(usize),
    Deriv(usize, MultiIndex),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Option<Expr>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub names: Names,
    pub ranking: Option<Scheme>,
    pub tie: Option<Tiebreak>,
    pub completion: Option<Scheme>,
    /// Variables of the determining system, highest first, as indices into
    /// `vars ++ funcs`.
    pub detvars: Option<Vec<usize>>,
    pub equations: Vec<Equation>,
    pub monomials: Vec<MultiIndex>,
}

impl Problem {
    pub fn nvars(&self) -> usize {
        self.names.vars.len()
    }

    pub fn nfuncs(&self) -> usize {
        self.names.funcs.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(s: &str, line: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Num(chars[start..i].iter().collect()),
                col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if "+-*/^()[]{},=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return err(line, col, format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    end_col: usize,
    names: &'a Names,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, self.col(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn node(&self, kind: ExprKind, col: usize) -> Expr {
        Expr {
            kind,
            line: self.line,
            col,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let col = self.col();
            if self.eat('+') {
                let rhs = self.term()?;
                lhs = self.node(ExprKind::Add(Box::new(lhs), Box::new(rhs)), col);
            } else if self.eat('-') {
                let rhs = self.term()?;
                lhs = self.node(ExprKind::Sub(Box::new(lhs), Box::new(rhs)), col);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let col = self.col();
            if self.eat('*') {
                let rhs = self.unary()?;
                lhs = self.node(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), col);
            } else if self.eat('/') {
                let rhs = self.unary()?;
                lhs = self.node(ExprKind::Div(Box::new(lhs), Box::new(rhs)), col);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let col = self.col();
        if self.eat('-') {
            let e = self.unary()?;
            return Ok(self.node(ExprKind::Neg(Box::new(e)), col));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        let col = self.col();
        if self.eat('^') {
            let e = self.small_int("exponent")?;
            return Ok(self.node(ExprKind::Pow(Box::new(base), e), col));
        }
        Ok(base)
    }

    fn small_int(&mut self, what: &str) -> Result<u32, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                let v = s.parse::<u32>().or_else(|_| self.fail(format!("{what} too large")))?;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn func_index(&self, name: &str) -> Option<usize> {
        self.names.funcs.iter().position(|f| f == name)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.names.vars.iter().position(|v| v == name)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                let q: Rational = s.parse().or_else(|_| self.fail("bad number"))?;
                Ok(self.node(ExprKind::Num(q), col))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(id))
                if id == "D" && self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::Sym('[')) =>
            {
                self.pos += 2;
                self.derivative(col)
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if let Some(i) = self.var_index(&id) {
                    Ok(self.node(ExprKind::Var(i), col))
                } else if let Some(j) = self.func_index(&id) {
                    let n = self.names.vars.len();
                    Ok(self.node(ExprKind::Deriv(j, MultiIndex::zero(n)), col))
                } else {
                    err(self.line, col, format!("unknown identifier `{id}`"))
                }
            }
            Some(Tok::Sym(c)) => self.fail(format!("unexpected `{c}`")),
            None => self.fail("unexpected end of expression"),
        }
    }

    fn derivative(&mut self, col: usize) -> Result<Expr, ParseError> {
        let n = self.names.vars.len();
        let fcol = self.col();
        let j = match self.peek().cloned() {
            Some(Tok::Ident(f)) => match self.func_index(&f) {
                Some(j) => j,
                None => return err(self.line, fcol, format!("unknown function `{f}`")),
            },
            _ => return self.fail("expected a function name"),
        };
        self.pos += 1;
        let mut alpha = MultiIndex::zero(n);
        if self.eat(',') {
            let bcol = self.col();
            if self.eat('{') {
                let mut ex = vec![self.small_int("order")?];
                while self.eat(',') {
                    ex.push(self.small_int("order")?);
                }
                self.expect('}')?;
                if ex.len() != n {
                    return err(
                        self.line,
                        bcol,
                        format!("multiindex has {} entries, expected {n}", ex.len()),
                    );
                }
                alpha = MultiIndex::new(&ex);
            } else {
                loop {
                    let vcol = self.col();
                    match self.peek().cloned() {
                        Some(Tok::Ident(v)) => match self.var_index(&v) {
                            Some(i) => {
                                self.pos += 1;
                                let mut k = 1;
                                if self.eat('^') {
                                    k = self.small_int("order")?;
                                }
                                alpha.set(i, alpha.deg_i(i) + k);
                            }
                            None => return err(self.line, vcol, format!("unknown variable `{v}`")),
                        },
                        _ => return self.fail("expected a variable name"),
                    }
                    if !self.eat(',') {
                        break;
                    }
                }
            }
        }
        self.expect(']')?;
        Ok(self.node(ExprKind::Deriv(j, alpha), col))
    }
}

/// Parses one expression over the given names.
pub fn parse_expr(text: &str, names: &Names, line: usize, col0: usize) -> Result<Expr, ParseError> {
    let toks = lex(text, line, col0)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col: col0 + text.chars().count(),
        names,
    };
    if p.peek().is_none() {
        return p.fail("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail("unexpected trailing input");
    }
    Ok(e)
}

fn parse_equation(text: &str, names: &Names, line: usize, col0: usize) -> Result<Equation, ParseError> {
    let (lhs, rhs) = match text.find('=') {
        Some(k) => {
            let rest = &text[k + 1..];
            let rcol = col0 + text[..k + 1].chars().count();
            (&text[..k], Some(parse_expr(rest, names, line, rcol)?))
        }
        None => (text, None),
    };
    Ok(Equation {
        lhs: parse_expr(lhs, names, line, col0)?,
        rhs,
        line,
    })
}

fn parse_names(value: &str, line: usize, col: usize, taken: &[String]) -> Result<Vec<String>, ParseError> {
    let mut out: Vec<String> = Vec::new();
    for w in value.split_whitespace() {
        let ok = w.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && w.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return err(line, col, format!("`{w}` is not a valid name"));
        }
        if w == "D" {
            return err(line, col, "`D` is reserved for derivatives");
        }
        if out.iter().chain(taken).any(|v| v == w) {
            return err(line, col, format!("name `{w}` declared twice"));
        }
        out.push(w.to_string());
    }
    Ok(out)
}

fn parse_monomial(text: &str, names: &Names, line: usize, col: usize) -> Result<MultiIndex, ParseError> {
    let n = names.vars.len();
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
        let ex: Result<Vec<u32>, _> = inner.split(',').map(|s| s.trim().parse::<u32>()).collect();
        let ex = ex.or_else(|_| err(line, col, "bad exponent vector"))?;
        if ex.len() != n {
            return err(line, col, format!("multiindex has {} entries, expected {n}", ex.len()));
        }
        return Ok(MultiIndex::new(&ex));
    }
    fn walk(e: &Expr, acc: &mut MultiIndex, k: u32) -> Result<(), ParseError> {
        match &e.kind {
            ExprKind::Var(i) => {
                acc.set(*i, acc.deg_i(*i) + k);
                Ok(())
            }
            ExprKind::Num(q) if q == &Rational::from_integer(1.into()) => Ok(()),
            ExprKind::Mul(a, b) => {
                walk(a, acc, k)?;
                walk(b, acc, k)
            }
            ExprKind::Pow(a, p) => walk(a, acc, k * p),
            _ => err(e.line, e.col, "a monomial is a product of variable powers"),
        }
    }
    let e = parse_expr(text, names, line, col)?;
    let mut acc = MultiIndex::zero(n);
    walk(&e, &mut acc, 1)?;
    Ok(acc)
}

/// Parses a problem file.
pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut funcs: Option<Vec<String>> = None;
    let mut ranking = None;
    let mut tie = None;
    let mut completion = None;
    let mut detvars_raw: Option<(String, usize, usize)> = None;
    let mut eq_lines: Vec<(String, usize, usize)> = Vec::new();
    let mut mono_lines: Vec<(String, usize, usize)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(colon) = body.find(':') else {
            let col = body.len() - body.trim_start().len() + 1;
            return err(line, col, "expected `key: value`");
        };
        let key = body[..colon].trim();
        let value = &body[colon + 1..];
        let vcol = body[..colon + 1].chars().count() + 1;
        let kcol = body.len() - body.trim_start().len() + 1;
        match key {
            "vars" => {
                let v = parse_names(value, line, vcol, &[])?;
                if v.is_empty() {
                    return err(line, vcol, "no variables declared");
                }
                vars = Some(v);
            }
            "funcs" => {
                let taken = vars.clone().unwrap_or_default();
                let f = parse_names(value, line, vcol, &taken)?;
                if f.is_empty() {
                    return err(line, vcol, "no functions declared");
                }
                funcs = Some(f);
            }
            "ranking" => {
                ranking = Some(
                    value
                        .trim()
                        .parse::<Scheme>()
                        .or_else(|e| err(line, vcol, e.to_string()))?,
                )
            }
            "tie" => {
                tie = Some(
                    value
                        .trim()
                        .parse::<Tiebreak>()
                        .or_else(|e| err(line, vcol, e.to_string()))?,
                )
            }
            "completion" => {
                completion = Some(
                    value
                        .trim()
                        .parse::<Scheme>()
                        .or_else(|e| err(line, vcol, e.to_string()))?,
                )
            }
            "detvars" => detvars_raw = Some((value.to_string(), line, vcol)),
            "eq" => eq_lines.push((value.to_string(), line, vcol)),
            "mono" => mono_lines.push((value.to_string(), line, vcol)),
            other => return err(line, kcol, format!("unknown directive `{other}`")),
        }
    }
    let lines = text.lines().count().max(1);
    let Some(vars) = vars else {
        return err(lines, 1, "missing `vars:` declaration");
    };
    let funcs = funcs.unwrap_or_else(|| vec!["y".to_string()]);
    if vars.iter().any(|v| funcs.contains(v)) {
        return err(1, 1, "variables and functions must have distinct names");
    }
    let names = Names::new(vars, funcs);
    let equations = eq_lines
        .iter()
        .map(|(s, l, c)| parse_equation(s, &names, *l, *c))
        .collect::<Result<Vec<_>, _>>()?;
    let monomials = mono_lines
        .iter()
        .map(|(s, l, c)| parse_monomial(s, &names, *l, *c))
        .collect::<Result<Vec<_>, _>>()?;
    if equations.is_empty() && monomials.is_empty() {
        return err(lines, 1, "no equations");
    }
    let detvars = match detvars_raw {
        None => None,
        Some((s, line, col)) => {
            let all: Vec<&String> = names.vars.iter().chain(&names.funcs).collect();
            let mut order = Vec::new();
            for w in s.split_whitespace() {
                match all.iter().position(|v| *v == w) {
                    Some(i) if !order.contains(&i) => order.push(i),
                    Some(_) => return err(line, col, format!("`{w}` listed twice")),
                    None => return err(line, col, format!("unknown identifier `{w}`")),
                }
            }
            if order.len() != all.len() {
                return err(line, col, "detvars must list every variable and function once");
            }
            Some(order)
        }
    };
    Ok(Problem {
        names,
        ranking,
        tie,
        completion,
        detvars,
        equations,
        monomials,
    })
}

enum Lin {
    Scalar(RationalFunction),
    Poly(LinearDiffPoly),
}

fn lin(e: &Expr, n: usize, m: usize) -> Result<Lin, ParseError> {
    let promote = |v: Lin| match v {
        Lin::Poly(p) => p,
        Lin::Scalar(c) => LinearDiffPoly::from_terms(n, m, c, std::iter::empty()),
    };
    Ok(match &e.kind {
        ExprKind::Num(q) => Lin::Scalar(RationalFunction::constant(n, q.clone())),
        ExprKind::Var(i) => Lin::Scalar(RationalFunction::var(n, *i)),
        ExprKind::Deriv(j, a) => Lin::Poly(LinearDiffPoly::term(
            n,
            m,
            Derivative::new(*j, a.clone()),
            RationalFunction::one(n),
        )),
        ExprKind::Neg(a) => match lin(a, n, m)? {
            Lin::Scalar(c) => Lin::Scalar(-&c),
            Lin::Poly(p) => Lin::Poly(p.scale(&RationalFunction::from_int(n, -1))),
        },
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let sub = matches!(e.kind, ExprKind::Sub(..));
            match (lin(a, n, m)?, lin(b, n, m)?) {
                (Lin::Scalar(x), Lin::Scalar(y)) => Lin::Scalar(if sub { &x - &y } else { &x + &y }),
                (x, y) => {
                    let (x, y) = (promote(x), promote(y));
                    Lin::Poly(if sub { &x - &y } else { &x + &y })
                }
            }
        }
        ExprKind::Mul(a, b) => match (lin(a, n, m)?, lin(b, n, m)?) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Lin::Scalar(&x * &y),
            (Lin::Scalar(c), Lin::Poly(p)) | (Lin::Poly(p), Lin::Scalar(c)) => Lin::Poly(p.scale(&c)),
            (Lin::Poly(_), Lin::Poly(_)) => {
                return err(e.line, e.col, "product of two derivative expressions is not linear")
            }
        },
        ExprKind::Div(a, b) => {
            let Lin::Scalar(d) = lin(b, n, m)? else {
                return err(e.line, e.col, "division by a derivative expression");
            };
            let inv = d.inv().or_else(|_| err(e.line, e.col, "division by zero"))?;
            match lin(a, n, m)? {
                Lin::Scalar(x) => Lin::Scalar(&x * &inv),
                Lin::Poly(p) => Lin::Poly(p.scale(&inv)),
            }
        }
        ExprKind::Pow(a, k) => match lin(a, n, m)? {
            Lin::Scalar(x) => Lin::Scalar(x.pow(*k)),
            Lin::Poly(p) if *k == 1 => Lin::Poly(p),
            Lin::Poly(_) => return err(e.line, e.col, "power of a derivative expression is not linear"),
        },
    })
}

/// `lhs - rhs` as a linear differential polynomial over `Q(x)`.
pub fn linear_equation(eq: &Equation, names: &Names) -> Result<LinearDiffPoly, ParseError> {
    let (n, m) = (names.vars.len(), names.funcs.len());
    let to_poly = |e: &Expr| -> Result<LinearDiffPoly, ParseError> {
        Ok(match lin(e, n, m)? {
            Lin::Poly(p) => p,
            Lin::Scalar(c) => LinearDiffPoly::from_terms(n, m, c, std::iter::empty()),
        })
    };
    let l = to_poly(&eq.lhs)?;
    Ok(match &eq.rhs {
        Some(r) => &l - &to_poly(r)?,
        None => l,
    })
}

/// Parses a single linear expression, as printed by the reports.
pub fn parse_linear(text: &str, names: &Names) -> Result<LinearDiffPoly, ParseError> {
    let eq = parse_equation(text, names, 1, 1)?;
    linear_equation(&eq, names)
}

/// Parses a rational function of the variables in `names`.
pub fn parse_scalar(text: &str, names: &Names) -> Result<RationalFunction, ParseError> {
    let e = parse_expr(text, names, 1, 1)?;
    match lin(&e, names.vars.len(), names.funcs.len())? {
        Lin::Scalar(c) => Ok(c),
        Lin::Poly(_) => err(1, 1, "expected an expression without derivatives"),
    }
}

fn poly(e: &Expr) -> Result<DiffPolynomial, ParseError> {
    Ok(match &e.kind {
        ExprKind::Num(q) => DiffPolynomial::constant(q.clone()),
        ExprKind::Var(i) => DiffPolynomial::indep(*i),
        ExprKind::Deriv(j, a) => DiffPolynomial::dep(*j, a.exponents()),
        ExprKind::Neg(a) => poly(a)?.scale(&Rational::from_integer((-1).into())),
        ExprKind::Add(a, b) => &poly(a)? + &poly(b)?,
        ExprKind::Sub(a, b) => &poly(a)? - &poly(b)?,
        ExprKind::Mul(a, b) => &poly(a)? * &poly(b)?,
        ExprKind::Div(a, b) => {
            let d = poly(b)?;
            let c = match d.terms().collect::<Vec<_>>().as_slice() {
                [] => return err(e.line, e.col, "division by zero"),
                [(pp, c)] if pp.is_empty() => (*c).clone(),
                _ => return err(e.line, e.col, "only division by numbers is allowed here"),
            };
            if c.is_zero() {
                return err(e.line, e.col, "division by zero");
            }
            poly(a)?.scale(&(Rational::from_integer(1.into()) / c))
        }
        ExprKind::Pow(a, k) => poly(a)?.pow(*k),
    })
}

/// An equation `D[y,α] = rhs` in solved form.
pub fn solved_equation(eq: &Equation) -> Result<SolvedEquation, ParseError> {
    let ExprKind::Deriv(j, a) = &eq.lhs.kind else {
        return err(eq.lhs.line, eq.lhs.col, "expected a solved equation `D[y,...] = rhs`");
    };
    let Some(rhs) = &eq.rhs else {
        return err(eq.lhs.line, eq.lhs.col, "expected a solved equation `D[y,...] = rhs`");
    };
    Ok(SolvedEquation::new(*j, a.clone(), poly(rhs)?))
}
