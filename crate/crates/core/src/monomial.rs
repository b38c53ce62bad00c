//! Multiindices, involutive divisions and monomial completion.
//!
//! Variables are indexed `0..n` and ordered `x_1 ≻ x_2 ≻ … ≻ x_n` by index,
//! which is the order every division in this module is defined against.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

use crate::exec::Execution;

/// Exponent vector `α ∈ ℕⁿ`, also read as the monomial `x^α`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(SmallVec<[u32; 6]>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, n))
    }

    pub fn new(exponents: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(exponents))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut m = Self::zero(n);
        m.0[i] = 1;
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn deg(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn deg_i(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self | other` as monomials.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !other.divides(self) {
            return None;
        }
        Some(MultiIndex(
            self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn incremented(&self, i: usize) -> MultiIndex {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    pub fn set(&mut self, i: usize, e: u32) {
        self.0[i] = e;
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> VarSet {
        let mut s = VarSet::empty();
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                s.insert(i);
            }
        }
        s
    }

    /// Reorders the exponents so that position `k` holds the exponent of variable `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> MultiIndex {
        MultiIndex(perm.iter().map(|&p| self.0[p]).collect())
    }

    /// Lexicographic comparison with `x_1` most significant.
    pub fn cmp_lex(&self, other: &MultiIndex) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn cmp_grlex(&self, other: &MultiIndex) -> Ordering {
        self.deg().cmp(&other.deg()).then_with(|| self.cmp_lex(other))
    }

    pub fn cmp_degrevlex(&self, other: &MultiIndex) -> Ordering {
        self.deg().cmp(&other.deg()).then_with(|| {
            for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }

    /// Renders the monomial with the given variable names, `1` for the zero index.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, names }
    }
}

impl Add for &MultiIndex {
    type Output = MultiIndex;

    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), rhs.len());
        MultiIndex(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.len());
        let shown = self.display_with(&names).to_string();
        f.write_str(&shown)
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a MultiIndex,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `x1, …, xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// A set of variable indices, at most 64 variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VarSet(u64);

impl VarSet {
    pub const MAX_VARS: usize = 64;

    pub fn empty() -> Self {
        VarSet(0)
    }

    pub fn all(n: usize) -> Self {
        if n >= 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    /// Variables with index `>= from` among the first `n`.
    pub fn from_index(from: usize, n: usize) -> Self {
        VarSet(Self::all(n).0 & !Self::all(from).0)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VarSet::empty();
        for i in it {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, n: usize) -> VarSet {
        VarSet(!self.0 & Self::all(n).0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (0..64).filter(move |i| bits & (1 << i) != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisionKind {
    Janet,
    Pommaret,
    LexInduced,
}

impl DivisionKind {
    pub const ALL: [DivisionKind; 3] = [DivisionKind::Janet, DivisionKind::Pommaret, DivisionKind::LexInduced];

    pub fn is_noetherian(self) -> bool {
        !matches!(self, DivisionKind::Pommaret)
    }

    pub fn name(self) -> &'static str {
        match self {
            DivisionKind::Janet => "janet",
            DivisionKind::Pommaret => "pommaret",
            DivisionKind::LexInduced => "lexinduced",
        }
    }
}

impl fmt::Display for DivisionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DivisionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "janet" | "j" => Ok(DivisionKind::Janet),
            "pommaret" | "p" => Ok(DivisionKind::Pommaret),
            "lexinduced" | "lex-induced" | "lex" | "dlex" => Ok(DivisionKind::LexInduced),
            other => Err(format!("unknown division `{other}`")),
        }
    }
}

/// Admissible monomial orderings; used to pick the lowest prolongation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrLex,
    DegRevLex,
}

impl MonomialOrder {
    pub fn compare(self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::GrLex => a.cmp_grlex(b),
            MonomialOrder::DegRevLex => a.cmp_degrevlex(b),
        }
    }
}

/// Partition of the variables into multiplicative and nonmultiplicative ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Separation {
    pub multiplicative: VarSet,
    pub nonmultiplicative: VarSet,
}

impl Separation {
    fn from_multiplicative(mult: VarSet, n: usize) -> Self {
        Separation {
            multiplicative: mult,
            nonmultiplicative: mult.complement(n),
        }
    }

    pub fn mu(&self) -> usize {
        self.multiplicative.len()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonomialError {
    #[error("monomial {0:?} is not an element of the set")]
    NotInSet(MultiIndex),
    #[error("monomials have mismatched dimensions")]
    DimensionMismatch,
    #[error("set is not {0}-involutive")]
    NotInvolutive(DivisionKind),
    #[error("completion did not close after {steps} prolongation steps")]
    CapExceeded { steps: usize, partial: Vec<MultiIndex> },
}

fn janet_multiplicative(u: &MultiIndex, set: &[MultiIndex]) -> VarSet {
    let n = u.len();
    let mut mult = VarSet::empty();
    // group = elements agreeing with u on x_1..x_{i-1}
    let mut group: Vec<&MultiIndex> = set.iter().collect();
    for i in 0..n {
        let max = group.iter().map(|v| v.deg_i(i)).max().unwrap_or(0);
        if u.deg_i(i) == max {
            mult.insert(i);
        }
        group.retain(|v| v.deg_i(i) == u.deg_i(i));
    }
    mult
}

fn pommaret_multiplicative(u: &MultiIndex) -> VarSet {
    let n = u.len();
    match (0..n).rev().find(|&i| u.deg_i(i) > 0) {
        None => VarSet::all(n),
        Some(k) => VarSet::from_index(k, n),
    }
}

fn lex_induced_multiplicative(u: &MultiIndex, set: &[MultiIndex]) -> VarSet {
    let n = u.len();
    let mut mult = VarSet::all(n);
    for v in set {
        if v.cmp_lex(u) == Ordering::Less {
            for i in 0..n {
                if u.deg_i(i) < v.deg_i(i) {
                    mult.remove(i);
                }
            }
        }
    }
    mult
}

fn multiplicative_unchecked(u: &MultiIndex, set: &[MultiIndex], kind: DivisionKind) -> VarSet {
    match kind {
        DivisionKind::Janet => janet_multiplicative(u, set),
        DivisionKind::Pommaret => pommaret_multiplicative(u),
        DivisionKind::LexInduced => lex_induced_multiplicative(u, set),
    }
}

/// Multiplicative/nonmultiplicative variables of `u` within `set`.
pub fn separation(u: &MultiIndex, set: &[MultiIndex], kind: DivisionKind) -> Result<Separation, MonomialError> {
    if set.iter().any(|v| v.len() != u.len()) {
        return Err(MonomialError::DimensionMismatch);
    }
    if !set.contains(u) {
        return Err(MonomialError::NotInSet(u.clone()));
    }
    Ok(Separation::from_multiplicative(
        multiplicative_unchecked(u, set, kind),
        u.len(),
    ))
}

/// Separations of every element, in the order of `set`.
pub fn separations(set: &[MultiIndex], kind: DivisionKind) -> Vec<Separation> {
    set.iter()
        .map(|u| Separation::from_multiplicative(multiplicative_unchecked(u, set, kind), u.len()))
        .collect()
}

/// `w ∈ u·L(u)` for the given multiplicative variables of `u`.
pub fn in_cone(u: &MultiIndex, mult: VarSet, w: &MultiIndex) -> bool {
    match w.checked_sub(u) {
        Some(q) => q.support().is_subset(&mult),
        None => false,
    }
}

pub fn involutive_divides(
    u: &MultiIndex,
    w: &MultiIndex,
    set: &[MultiIndex],
    kind: DivisionKind,
) -> Result<bool, MonomialError> {
    let sep = separation(u, set, kind)?;
    if w.len() != u.len() {
        return Err(MonomialError::DimensionMismatch);
    }
    Ok(in_cone(u, sep.multiplicative, w))
}

/// Index of an involutive divisor of `w` in `set`, given precomputed separations.
pub fn find_involutive_divisor(w: &MultiIndex, set: &[MultiIndex], seps: &[Separation]) -> Option<usize> {
    set.iter().zip(seps).position(|(u, s)| in_cone(u, s.multiplicative, w))
}

fn sorted_unique(set: &[MultiIndex]) -> Vec<MultiIndex> {
    let mut v = set.to_vec();
    v.sort_by(|a, b| a.cmp_lex(b));
    v.dedup();
    v
}

/// Maximal subset with pairwise disjoint involutive cones.
pub fn autoreduce(set: &[MultiIndex], kind: DivisionKind) -> Vec<MultiIndex> {
    let mut current = sorted_unique(set);
    loop {
        let seps = separations(&current, kind);
        let victim = (0..current.len())
            .find(|&i| (0..current.len()).any(|j| j != i && in_cone(&current[j], seps[j].multiplicative, &current[i])));
        match victim {
            Some(i) => {
                current.remove(i);
            }
            None => return current,
        }
    }
}

/// True iff `set` is autoreduced and every nonmultiplicative prolongation has an
/// involutive divisor.
pub fn is_involutive(set: &[MultiIndex], kind: DivisionKind) -> bool {
    let seps = separations(set, kind);
    for (i, u) in set.iter().enumerate() {
        for (j, v) in set.iter().enumerate() {
            if i != j && in_cone(v, seps[j].multiplicative, u) {
                return false;
            }
        }
    }
    set.iter().zip(&seps).all(|(u, s)| {
        s.nonmultiplicative
            .iter()
            .all(|i| find_involutive_divisor(&u.incremented(i), set, &seps).is_some())
    })
}

/// Involutive completion by lowest nonmultiplicative prolongations.
///
/// `cap` bounds the number of prolongations added; the partial set is
/// returned inside [`MonomialError::CapExceeded`].
pub fn complete(
    set: &[MultiIndex],
    kind: DivisionKind,
    order: MonomialOrder,
    cap: usize,
) -> Result<Vec<MultiIndex>, MonomialError> {
    if let Some(first) = set.first() {
        if set.iter().any(|u| u.len() != first.len()) {
            return Err(MonomialError::DimensionMismatch);
        }
    }
    let mut current = autoreduce(set, kind);
    let mut steps = 0;
    loop {
        let seps = separations(&current, kind);
        let mut lowest: Option<MultiIndex> = None;
        for (u, s) in current.iter().zip(&seps) {
            for i in s.nonmultiplicative.iter() {
                let w = u.incremented(i);
                if find_involutive_divisor(&w, &current, &seps).is_some() {
                    continue;
                }
                if lowest.as_ref().is_none_or(|l| order.compare(&w, l) == Ordering::Less) {
                    lowest = Some(w);
                }
            }
        }
        let Some(w) = lowest else {
            current.sort_by(|a, b| b.cmp_lex(a));
            return Ok(current);
        };
        if steps >= cap {
            return Err(MonomialError::CapExceeded {
                steps,
                partial: current,
            });
        }
        steps += 1;
        current.push(w);
        current = autoreduce(&current, kind);
    }
}

/// One cone `tip · k[multipliers]` of a complementary decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub tip: MultiIndex,
    pub multipliers: VarSet,
}

impl Generator {
    pub fn contains(&self, w: &MultiIndex) -> bool {
        in_cone(&self.tip, self.multipliers, w)
    }

    /// Number of cone elements of total degree exactly `s`.
    pub fn count_of_degree(&self, s: u32) -> u128 {
        let d = self.tip.deg();
        if s < d {
            return 0;
        }
        multiples_of_degree(s - d, self.multipliers.len())
    }
}

/// Number of monomials of degree `e` in `mu` variables.
pub fn multiples_of_degree(e: u32, mu: usize) -> u128 {
    if mu == 0 {
        return u128::from(e == 0);
    }
    binomial(u128::from(e) + mu as u128 - 1, mu as u128 - 1)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Disjoint decomposition of the complement of a monomial ideal:
/// finitely many isolated monomials plus cones with multiplier sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementaryDecomposition {
    pub nvars: usize,
    pub finite_part: Vec<MultiIndex>,
    pub generators: Vec<Generator>,
}

impl ComplementaryDecomposition {
    /// All cones, with the finite part as multiplier-free cones.
    pub fn cones(&self) -> impl Iterator<Item = Generator> + '_ {
        self.finite_part
            .iter()
            .map(|m| Generator {
                tip: m.clone(),
                multipliers: VarSet::empty(),
            })
            .chain(self.generators.iter().cloned())
    }

    pub fn is_finite(&self) -> bool {
        self.generators.iter().all(|g| g.multipliers.is_empty())
    }

    /// Number of cones containing `w`; 0 or 1 for a valid decomposition.
    pub fn multiplicity(&self, w: &MultiIndex) -> usize {
        self.finite_part.iter().filter(|m| *m == w).count() + self.generators.iter().filter(|g| g.contains(w)).count()
    }

    pub fn count_of_degree(&self, s: u32) -> u128 {
        self.cones().map(|g| g.count_of_degree(s)).sum()
    }

    /// Explicit monomial list, when no cone carries multipliers.
    pub fn finite_monomials(&self) -> Option<Vec<MultiIndex>> {
        if !self.is_finite() {
            return None;
        }
        let mut v: Vec<MultiIndex> = self.cones().map(|g| g.tip).collect();
        v.sort_by(|a, b| a.cmp_grlex(b));
        Some(v)
    }
}

fn stanley_split(
    gens: &[MultiIndex],
    order: &[usize],
    level: usize,
    prefix: MultiIndex,
    mults: VarSet,
    out: &mut Vec<Generator>,
) {
    let rest = &order[level..];
    if gens.iter().any(|g| rest.iter().all(|&i| g.deg_i(i) == 0)) {
        return;
    }
    if gens.is_empty() {
        out.push(Generator {
            tip: prefix,
            multipliers: mults.union(VarSet::from_indices(rest.iter().copied())),
        });
        return;
    }
    let i = order[level];
    let d = gens.iter().map(|g| g.deg_i(i)).max().unwrap_or(0);
    for k in 0..=d {
        let sub: Vec<MultiIndex> = gens.iter().filter(|g| g.deg_i(i) <= k).cloned().collect();
        let mut p = prefix.clone();
        p.set(i, k);
        let m = if k == d {
            let mut m = mults;
            m.insert(i);
            m
        } else {
            mults
        };
        stanley_split(&sub, order, level + 1, p, m, out);
    }
}

/// Cone decomposition of the complement of `(gens)` by recursive splitting,
/// taking variables in `order`.
pub fn cone_decomposition(n: usize, gens: &[MultiIndex], order: &[usize]) -> Vec<Generator> {
    let mut out = Vec::new();
    stanley_split(gens, order, 0, MultiIndex::zero(n), VarSet::empty(), &mut out);
    out
}

/// Monomials of degree exactly `d` in the variables of `vars`.
pub fn monomials_of_degree_in(n: usize, vars: VarSet, d: u32) -> Vec<MultiIndex> {
    let vs = vars.to_vec();
    let mut out = Vec::new();
    let mut cur = MultiIndex::zero(n);
    fn rec(vs: &[usize], d: u32, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        match vs.split_first() {
            None => {
                if d == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&v, rest)) => {
                if rest.is_empty() {
                    cur.set(v, d);
                    out.push(cur.clone());
                    cur.set(v, 0);
                    return;
                }
                for e in (0..=d).rev() {
                    cur.set(v, e);
                    rec(rest, d - e, cur, out);
                }
                cur.set(v, 0);
            }
        }
    }
    rec(&vs, d, &mut cur, &mut out);
    out
}

/// All monomials in `n` variables of degree `<= d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<MultiIndex> {
    (0..=d)
        .flat_map(|k| monomials_of_degree_in(n, VarSet::all(n), k))
        .collect()
}

pub fn in_ideal(gens: &[MultiIndex], w: &MultiIndex) -> bool {
    gens.iter().any(|g| g.divides(w))
}

/// Moves every cone tip below degree `q` up to degree `q`, sending the
/// monomials it skips into the finite part.
fn normalize_to_degree(n: usize, cones: Vec<Generator>, q: u32) -> (Vec<MultiIndex>, Vec<Generator>) {
    let mut finite = Vec::new();
    let mut gens = Vec::new();
    for c in cones {
        let d = c.tip.deg();
        if c.multipliers.is_empty() {
            finite.push(c.tip);
            continue;
        }
        if d >= q {
            gens.push(c);
            continue;
        }
        for k in 0..(q - d) {
            for w in monomials_of_degree_in(n, c.multipliers, k) {
                finite.push(&c.tip + &w);
            }
        }
        for w in monomials_of_degree_in(n, c.multipliers, q - d) {
            let from = w.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
            let mults = c.multipliers.intersection(VarSet::from_index(from, n));
            gens.push(Generator {
                tip: &c.tip + &w,
                multipliers: mults,
            });
        }
    }
    (finite, gens)
}

/// Complementary decomposition of an involutive monomial set.
///
/// Janet: cones from splitting on `x_1, x_2, …` (multipliers agree with the
/// Janet multiplicative variables of the tip in `U ∪ {tip}`).
/// Pommaret: complement monomials below degree `q` plus the degree-`q`
/// complement monomials with their Pommaret multipliers.
/// LexInduced: cones from splitting on `x_n, x_{n-1}, …`, normalized to degree `q`.
pub fn complementary_decomposition(
    n: usize,
    set: &[MultiIndex],
    kind: DivisionKind,
) -> Result<ComplementaryDecomposition, MonomialError> {
    if set.iter().any(|u| u.len() != n) {
        return Err(MonomialError::DimensionMismatch);
    }
    if !set.is_empty() && !is_involutive(set, kind) {
        return Err(MonomialError::NotInvolutive(kind));
    }
    let q = set.iter().map(MultiIndex::deg).max().unwrap_or(0);
    let (finite_part, generators) = match kind {
        DivisionKind::Janet => {
            let order: Vec<usize> = (0..n).collect();
            (Vec::new(), cone_decomposition(n, set, &order))
        }
        DivisionKind::Pommaret => {
            let finite: Vec<MultiIndex> = (0..q)
                .flat_map(|k| monomials_of_degree_in(n, VarSet::all(n), k))
                .filter(|w| !in_ideal(set, w))
                .collect();
            let gens = monomials_of_degree_in(n, VarSet::all(n), q)
                .into_iter()
                .filter(|w| !in_ideal(set, w))
                .map(|w| Generator {
                    multipliers: pommaret_multiplicative(&w),
                    tip: w,
                })
                .collect();
            (finite, gens)
        }
        DivisionKind::LexInduced => {
            let order: Vec<usize> = (0..n).rev().collect();
            normalize_to_degree(n, cone_decomposition(n, set, &order), q)
        }
    };
    let mut finite_part = finite_part;
    finite_part.sort_by(|a, b| a.cmp_grlex(b));
    let mut generators = generators;
    generators.sort_by(|a, b| a.tip.cmp_grlex(&b.tip));
    Ok(ComplementaryDecomposition {
        nvars: n,
        finite_part,
        generators,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanCharacters {
    pub q: u32,
    /// `sigma[i - 1]` = number of degree-`q` generators with `i` multipliers.
    pub sigma: Vec<u64>,
    /// Size of the finite part below degree `q`.
    pub finite: u64,
}

pub fn cartan_characters(n: usize, set: &[MultiIndex]) -> Result<CartanCharacters, MonomialError> {
    let dec = complementary_decomposition(n, set, DivisionKind::Pommaret)?;
    let q = set.iter().map(MultiIndex::deg).max().unwrap_or(0);
    let mut sigma = vec![0u64; n];
    for g in &dec.generators {
        let i = g.multipliers.len();
        if i > 0 {
            sigma[i - 1] += 1;
        }
    }
    Ok(CartanCharacters {
        q,
        sigma,
        finite: dec.finite_part.len() as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// (a): a divisor of a multiplicative monomial is not multiplicative.
    NotFilter { u: MultiIndex, w: MultiIndex },
    /// (b): overlapping cones without containment.
    Overlap { u: MultiIndex, v: MultiIndex },
    /// (c): `v ∈ u·L(u)` but `L(v) ⊄ L(u)`.
    NotNested { u: MultiIndex, v: MultiIndex },
    /// (d): shrinking the set removed multiplicative variables.
    NotMonotone { u: MultiIndex, subset: Vec<MultiIndex> },
}

/// `u·L(u) ∩ v·L(v) ≠ ∅`, decided exactly.
pub fn cones_intersect(u: &MultiIndex, mu: VarSet, v: &MultiIndex, mv: VarSet) -> bool {
    (0..u.len()).all(|i| match (mu.contains(i), mv.contains(i)) {
        (false, false) => u.deg_i(i) == v.deg_i(i),
        (true, false) => v.deg_i(i) >= u.deg_i(i),
        (false, true) => u.deg_i(i) >= v.deg_i(i),
        (true, true) => true,
    })
}

/// Checks division conditions (a) to (d) on `set`; (a) up to multiples of degree
/// `filter_degree`, (d) over all subsets when `|set| <= 12`.
pub fn axioms_check(
    set: &[MultiIndex],
    kind: DivisionKind,
    filter_degree: u32,
    exec: Execution,
) -> Vec<AxiomViolation> {
    let set = sorted_unique(set);
    let Some(first) = set.first() else {
        return Vec::new();
    };
    let n = first.len();
    let seps = separations(&set, kind);
    let mut out = Vec::new();

    let multiples = monomials_up_to(n, filter_degree);
    for (u, s) in set.iter().zip(&seps) {
        for w in multiples.iter().filter(|w| w.support().is_subset(&s.multiplicative)) {
            for i in w.support().iter() {
                let mut v = w.clone();
                v.set(i, w.deg_i(i) - 1);
                if !v.support().is_subset(&s.multiplicative) {
                    out.push(AxiomViolation::NotFilter {
                        u: u.clone(),
                        w: w.clone(),
                    });
                }
            }
        }
    }

    for (a, (u, su)) in set.iter().zip(&seps).enumerate() {
        for (b, (v, sv)) in set.iter().zip(&seps).enumerate() {
            if a >= b {
                continue;
            }
            if cones_intersect(u, su.multiplicative, v, sv.multiplicative)
                && !in_cone(u, su.multiplicative, v)
                && !in_cone(v, sv.multiplicative, u)
            {
                out.push(AxiomViolation::Overlap {
                    u: u.clone(),
                    v: v.clone(),
                });
            }
        }
    }

    for (u, su) in set.iter().zip(&seps) {
        for (v, sv) in set.iter().zip(&seps) {
            if u != v && in_cone(u, su.multiplicative, v) && !sv.multiplicative.is_subset(&su.multiplicative) {
                out.push(AxiomViolation::NotNested {
                    u: u.clone(),
                    v: v.clone(),
                });
            }
        }
    }

    if set.len() <= 12 {
        let masks: Vec<u32> = (1u32..(1 << set.len())).collect();
        let found = exec.flat_map(&masks, |&mask| {
            let subset: Vec<MultiIndex> = set
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, m)| m.clone())
                .collect();
            let sub_seps = separations(&subset, kind);
            subset
                .iter()
                .zip(&sub_seps)
                .filter_map(|(u, s_sub)| {
                    let k = set.iter().position(|x| x == u).unwrap();
                    (!seps[k].multiplicative.is_subset(&s_sub.multiplicative)).then(|| AxiomViolation::NotMonotone {
                        u: u.clone(),
                        subset: subset.clone(),
                    })
                })
                .collect::<Vec<_>>()
        });
        out.extend(found);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e)
    }

    fn example1() -> Vec<MultiIndex> {
        vec![m(&[2, 0, 1]), m(&[1, 1, 0]), m(&[1, 0, 2])]
    }

    fn vs(v: &[usize]) -> VarSet {
        VarSet::from_indices(v.iter().copied())
    }

    #[test]
    fn example1_separations() {
        let u = example1();
        let j = separation(&u[0], &u, DivisionKind::Janet).unwrap();
        assert_eq!(j.multiplicative, vs(&[0, 1, 2]));
        assert!(j.nonmultiplicative.is_empty());
        let l = separation(&u[2], &u, DivisionKind::LexInduced).unwrap();
        assert_eq!(l.multiplicative, vs(&[0, 1, 2]));
        let p = separation(&m(&[0, 0]), &[m(&[0, 0])], DivisionKind::Pommaret).unwrap();
        assert_eq!(p.multiplicative, vs(&[0, 1]));
    }

    #[test]
    fn separation_rejects_foreign_monomial() {
        let u = example1();
        assert_eq!(
            separation(&m(&[0, 0, 1]), &u, DivisionKind::Janet),
            Err(MonomialError::NotInSet(m(&[0, 0, 1])))
        );
    }

    #[test]
    fn involutive_division_examples() {
        let u = example1();
        assert!(!involutive_divides(&u[1], &m(&[2, 1, 0]), &u, DivisionKind::Janet).unwrap());
        assert!(involutive_divides(&u[2], &m(&[1, 3, 5]), &u, DivisionKind::LexInduced).unwrap());
        for kind in DivisionKind::ALL {
            for x in &u {
                assert!(involutive_divides(x, x, &u, kind).unwrap());
            }
        }
    }

    #[test]
    fn autoreduce_examples() {
        let u = example1();
        let mut sorted = u.clone();
        sorted.sort();
        let mut got = autoreduce(&u, DivisionKind::Janet);
        got.sort();
        assert_eq!(got, sorted);
        assert!(autoreduce(&[], DivisionKind::Janet).is_empty());
        assert_eq!(
            autoreduce(&[m(&[1, 0]), m(&[1, 1])], DivisionKind::Pommaret),
            vec![m(&[1, 0])]
        );
    }

    #[test]
    fn example1_completions() {
        let u = example1();
        let mut j = complete(&u, DivisionKind::Janet, MonomialOrder::GrLex, 100).unwrap();
        j.sort();
        let mut want = u.clone();
        want.push(m(&[2, 1, 0]));
        want.sort();
        assert_eq!(j, want);

        let mut l = complete(&u, DivisionKind::LexInduced, MonomialOrder::GrLex, 100).unwrap();
        l.sort();
        let mut want = u.clone();
        want.push(m(&[1, 1, 1]));
        want.sort();
        assert_eq!(l, want);

        assert!(matches!(
            complete(&u, DivisionKind::Pommaret, MonomialOrder::GrLex, 100),
            Err(MonomialError::CapExceeded { steps: 100, .. })
        ));
    }

    #[test]
    fn janet_decomposition_of_example1() {
        let u = complete(&example1(), DivisionKind::Janet, MonomialOrder::GrLex, 100).unwrap();
        let dec = complementary_decomposition(3, &u, DivisionKind::Janet).unwrap();
        let got: Vec<(MultiIndex, VarSet)> = dec.generators.iter().map(|g| (g.tip.clone(), g.multipliers)).collect();
        // x1*x3 is a complement monomial as well; it gets its own point.
        assert_eq!(
            got,
            vec![
                (m(&[0, 0, 0]), vs(&[1, 2])),
                (m(&[1, 0, 0]), VarSet::empty()),
                (m(&[1, 0, 1]), VarSet::empty()),
                (m(&[2, 0, 0]), vs(&[0])),
            ]
        );
        // Janet multipliers of each tip within U ∪ {tip}.
        for g in &dec.generators {
            let mut ext = u.clone();
            ext.push(g.tip.clone());
            let s = separation(&g.tip, &ext, DivisionKind::Janet).unwrap();
            assert_eq!(s.multiplicative, g.multipliers);
        }
    }

    #[test]
    fn trivial_decompositions() {
        let dec = complementary_decomposition(3, &[m(&[0, 0, 0])], DivisionKind::Janet).unwrap();
        assert!(dec.finite_part.is_empty() && dec.generators.is_empty());
        let dec = complementary_decomposition(2, &[], DivisionKind::Pommaret).unwrap();
        assert_eq!(dec.generators.len(), 1);
        assert_eq!(dec.generators[0].multipliers, VarSet::all(2));
    }

    #[test]
    fn cartan_examples() {
        let c = cartan_characters(1, &[m(&[1])]).unwrap();
        assert_eq!(c.sigma, vec![0]);
        assert_eq!(c.finite, 1);
        let c = cartan_characters(2, &[]).unwrap();
        assert_eq!(c.q, 0);
        assert_eq!(c.sigma, vec![0, 1]);
        assert!(matches!(
            cartan_characters(3, &example1()),
            Err(MonomialError::NotInvolutive(DivisionKind::Pommaret))
        ));
    }

    #[test]
    fn axioms_on_example1() {
        for kind in DivisionKind::ALL {
            assert!(axioms_check(&example1(), kind, 3, Execution::Sequential).is_empty());
            assert!(axioms_check(&[m(&[1, 2])], kind, 3, Execution::Sequential).is_empty());
        }
    }

    #[test]
    fn degree_orders() {
        assert_eq!(m(&[1, 0, 1]).cmp_degrevlex(&m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(m(&[1, 0, 1]).cmp_grlex(&m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(monomials_of_degree_in(3, VarSet::all(3), 2).len(), 6);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(multiples_of_degree(0, 0), 1);
        assert_eq!(multiples_of_degree(2, 3), 6);
    }
}
