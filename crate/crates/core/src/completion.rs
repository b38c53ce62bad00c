//! Involutive reduction, completion to a minimal involutive basis, and the
//! independent checks (local involutivity, Gröbner property).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::diffpoly::{Derivative, LinearDiffPoly, Names, Ranking};
use crate::exec::Execution;
use crate::monomial::{self, DivisionKind, MultiIndex, Separation, VarSet};
use crate::scalars::RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionOptions {
    pub division: DivisionKind,
    /// Main ranking `≻`.
    pub main: Ranking,
    /// Completion ranking `≻_c`, used to pick the next prolongation.
    pub completion: Ranking,
    /// Budget of nonmultiplicative prolongations examined.
    pub cap: usize,
    pub use_criterion: bool,
    /// Conventional autoreduction of the input before completing.
    pub autoreduce_input: bool,
    pub trace: bool,
}

impl CompletionOptions {
    pub fn new(division: DivisionKind, main: Ranking) -> Self {
        CompletionOptions {
            division,
            completion: main.clone(),
            main,
            cap: 10_000,
            use_criterion: true,
            autoreduce_input: false,
            trace: false,
        }
    }

    pub fn with_completion(mut self, r: Ranking) -> Self {
        self.completion = r;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap.max(1);
        self
    }

    pub fn with_criterion(mut self, on: bool) -> Self {
        self.use_criterion = on;
        self
    }

    pub fn with_trace(mut self, on: bool) -> Self {
        self.trace = on;
        self
    }

    pub fn with_autoreduce_input(mut self, on: bool) -> Self {
        self.autoreduce_input = on;
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompletionError {
    #[error("no nonzero equations")]
    EmptyInput,
    #[error("the system is inconsistent: it implies a nonzero equation without derivatives")]
    Inconsistent(LinearDiffPoly),
    #[error("completion did not close after {steps} prolongation examinations")]
    CapExceeded { steps: usize, partial: Vec<LinearDiffPoly> },
    #[error("elements share the leading derivative {0:?}")]
    DuplicateLeader(Derivative),
    #[error("polynomials live in different rings")]
    Mismatch,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionStats {
    pub nf_calls: usize,
    pub prolongations: usize,
    pub criterion_hits: usize,
    pub zero_reductions: usize,
    pub insertions: usize,
    pub displaced: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Discarded by the chain criterion.
    Skipped,
    Zero,
    New(Derivative),
}

/// One examined nonmultiplicative prolongation `∂_x g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub element: Derivative,
    pub var: usize,
    pub verdict: Verdict,
}

impl TraceEvent {
    pub fn display_with<'a>(&'a self, names: &'a Names) -> TraceDisplay<'a> {
        TraceDisplay { e: self, names }
    }
}

pub struct TraceDisplay<'a> {
    e: &'a TraceEvent,
    names: &'a Names,
}

impl fmt::Display for TraceDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let el = self.e.element.display_with(self.names);
        let v = &self.names.vars[self.e.var];
        match &self.e.verdict {
            Verdict::Skipped => write!(f, "{el} * {v}: criterion, skipped"),
            Verdict::Zero => write!(f, "{el} * {v}: reduces to 0"),
            Verdict::New(d) => write!(f, "{el} * {v}: new element {}", d.display_with(self.names)),
        }
    }
}

/// Leading derivatives of a set with their multiplicative variables, used
/// to find involutive (or conventional) divisors.
struct Reducers<'a> {
    polys: Vec<&'a LinearDiffPoly>,
    lds: Vec<Derivative>,
    mults: Vec<VarSet>,
    // per indeterminate, indices in ascending ld order
    by_indet: Vec<Vec<usize>>,
}

fn multiplicative_sets(lds: &[Derivative], kind: DivisionKind, r: &Ranking) -> Vec<VarSet> {
    let m = r.nindets();
    let mut out = vec![VarSet::empty(); lds.len()];
    for j in 0..m {
        let idx: Vec<usize> = (0..lds.len()).filter(|&k| lds[k].indet == j).collect();
        let set: Vec<MultiIndex> = idx.iter().map(|&k| r.ranked(&lds[k].index)).collect();
        for (&k, s) in idx.iter().zip(monomial::separations(&set, kind)) {
            out[k] = r.unrank_vars(s.multiplicative);
        }
    }
    out
}

impl<'a> Reducers<'a> {
    fn new(polys: Vec<&'a LinearDiffPoly>, kind: Option<DivisionKind>, r: &Ranking) -> Self {
        let lds: Vec<Derivative> = polys
            .iter()
            .map(|p| p.ld(r).expect("reducers have derivative terms").clone())
            .collect();
        let n = r.nvars();
        let mults = match kind {
            Some(kind) => multiplicative_sets(&lds, kind, r),
            None => vec![VarSet::all(n); lds.len()],
        };
        let mut by_indet = vec![Vec::new(); r.nindets()];
        for (k, d) in lds.iter().enumerate() {
            by_indet[d.indet].push(k);
        }
        for v in &mut by_indet {
            v.sort_by(|&a, &b| r.compare(&lds[a], &lds[b]));
        }
        Reducers {
            polys,
            lds,
            mults,
            by_indet,
        }
    }

    /// First reducer whose leading derivative divides `theta` along its
    /// multiplicative variables, with the quotient `β`.
    fn divisor(&self, theta: &Derivative) -> Option<(usize, MultiIndex)> {
        self.by_indet[theta.indet].iter().find_map(|&k| {
            let beta = self.lds[k].quotient(theta)?;
            beta.support().is_subset(&self.mults[k]).then_some((k, beta))
        })
    }

    fn reduce(&self, p: &LinearDiffPoly, r: &Ranking) -> LinearDiffPoly {
        let mut cache: HashMap<(usize, MultiIndex), LinearDiffPoly> = HashMap::new();
        let mut h = p.clone();
        let mut bound = None;
        loop {
            let mut keyed: Vec<_> = h
                .terms()
                .map(|(d, _)| (r.rank_key(d), d.clone()))
                .filter(|(k, _)| bound.as_ref().is_none_or(|b| k < b))
                .collect();
            keyed.sort_by(|a, b| b.0.cmp(&a.0));
            let hit = keyed
                .into_iter()
                .find_map(|(key, d)| self.divisor(&d).map(|(k, beta)| (key, d, k, beta)));
            let Some((key, theta, k, beta)) = hit else {
                return h;
            };
            let a = h.coefficient(&theta).expect("term present").clone();
            let pf = self.prolongation(k, &beta, &mut cache);
            let lc = pf.coefficient(&theta).expect("leading term survives prolongation");
            let c = -&a.checked_div(lc).expect("nonzero leading coefficient");
            h = h.add_scaled(&pf, &c);
            debug_assert!(h.coefficient(&theta).is_none());
            bound = Some(key);
        }
    }

    fn prolongation(
        &self,
        k: usize,
        beta: &MultiIndex,
        cache: &mut HashMap<(usize, MultiIndex), LinearDiffPoly>,
    ) -> LinearDiffPoly {
        if beta.deg() == 0 {
            return self.polys[k].clone();
        }
        if let Some(p) = cache.get(&(k, beta.clone())) {
            return p.clone();
        }
        let i = beta.support().iter().next().expect("nonzero multiindex");
        let mut lower = beta.clone();
        lower.set(i, beta.deg_i(i) - 1);
        let p = self.prolongation(k, &lower, cache).differentiate(i);
        cache.insert((k, beta.clone()), p.clone());
        p
    }
}

fn nonzero_terms(g: &[LinearDiffPoly]) -> Vec<&LinearDiffPoly> {
    g.iter().filter(|p| p.num_terms() > 0).collect()
}

/// Involutive normal form of `p` modulo `g` (full reduction of every term).
pub fn involutive_normal_form(
    p: &LinearDiffPoly,
    g: &[LinearDiffPoly],
    division: DivisionKind,
    ranking: &Ranking,
) -> LinearDiffPoly {
    Reducers::new(nonzero_terms(g), Some(division), ranking).reduce(p, ranking)
}

/// Conventional (non-involutive) normal form: any derivative of a leading
/// derivative is reducible.
pub fn conventional_normal_form(p: &LinearDiffPoly, g: &[LinearDiffPoly], ranking: &Ranking) -> LinearDiffPoly {
    Reducers::new(nonzero_terms(g), None, ranking).reduce(p, ranking)
}

#[derive(Clone, Debug)]
struct Triple {
    poly: LinearDiffPoly,
    ld: Derivative,
    anc: Derivative,
    processed: VarSet,
}

/// Mid-run state handed to an observer just before a prolongation is examined.
pub struct Snapshot<'a> {
    pub elements: Vec<&'a LinearDiffPoly>,
    pub queue_empty: bool,
    /// Leading derivative of the prolongation about to be examined.
    pub next: &'a Derivative,
}

#[derive(Clone, Debug)]
pub struct InvolutiveBasis {
    /// Monic elements, descending by leading derivative.
    pub elements: Vec<LinearDiffPoly>,
    pub separations: Vec<Separation>,
    pub options: CompletionOptions,
    pub stats: CompletionStats,
    pub trace: Vec<TraceEvent>,
}

impl InvolutiveBasis {
    /// Wraps a given system: makes it monic, sorts it and computes the
    /// separations, without completing it.
    pub fn from_elements(elements: &[LinearDiffPoly], options: CompletionOptions) -> Result<Self, CompletionError> {
        let r = &options.main;
        let mut els = Vec::new();
        for p in elements {
            if p.is_zero() {
                continue;
            }
            if p.is_inconsistent() {
                return Err(CompletionError::Inconsistent(p.clone()));
            }
            els.push(p.normalize(r).expect("nonzero"));
        }
        els.sort_by(|a, b| r.compare(b.ld(r).unwrap(), a.ld(r).unwrap()));
        for w in els.windows(2) {
            if w[0].ld(r) == w[1].ld(r) {
                return Err(CompletionError::DuplicateLeader(w[0].ld(r).unwrap().clone()));
            }
        }
        let lds: Vec<Derivative> = els.iter().map(|p| p.ld(r).unwrap().clone()).collect();
        let n = r.nvars();
        let separations = multiplicative_sets(&lds, options.division, r)
            .into_iter()
            .map(|mult| Separation {
                multiplicative: mult,
                nonmultiplicative: mult.complement(n),
            })
            .collect();
        Ok(InvolutiveBasis {
            elements: els,
            separations,
            options,
            stats: CompletionStats::default(),
            trace: Vec::new(),
        })
    }

    pub fn ranking(&self) -> &Ranking {
        &self.options.main
    }

    pub fn division(&self) -> DivisionKind {
        self.options.division
    }

    pub fn nvars(&self) -> usize {
        self.options.main.nvars()
    }

    pub fn nindets(&self) -> usize {
        self.options.main.nindets()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_derivatives(&self) -> Vec<Derivative> {
        let r = self.ranking();
        self.elements.iter().map(|p| p.ld(r).unwrap().clone()).collect()
    }

    /// Leading multiindices of indeterminate `j`, in the ranked coordinates
    /// (first position = highest variable) used by the divisions.
    pub fn ranked_leading_set(&self, j: usize) -> Vec<MultiIndex> {
        let r = self.ranking();
        self.leading_derivatives()
            .into_iter()
            .filter(|d| d.indet == j)
            .map(|d| r.ranked(&d.index))
            .collect()
    }
}

fn priority_lowest(items: &[Derivative], r: &Ranking) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, d) in items.iter().enumerate() {
        match best {
            Some(b) if r.compare(d, &items[b]) != Ordering::Less => {}
            _ => best = Some(k),
        }
    }
    best
}

struct Engine<'o> {
    opts: &'o CompletionOptions,
    t: Vec<Triple>,
    q: Vec<Triple>,
    stats: CompletionStats,
    trace: Vec<TraceEvent>,
}

impl Engine<'_> {
    fn polys(&self) -> Vec<&LinearDiffPoly> {
        self.t.iter().map(|t| &t.poly).collect()
    }

    fn mults(&self) -> Vec<VarSet> {
        let lds: Vec<Derivative> = self.t.iter().map(|t| t.ld.clone()).collect();
        multiplicative_sets(&lds, self.opts.division, &self.opts.main)
    }

    fn criterion(&self, ld_g: &Derivative, theta: &Derivative, mults: &[VarSet]) -> bool {
        let rc = &self.opts.completion;
        self.t.iter().zip(mults).any(|(f, mult)| {
            if f.anc.indet != theta.indet {
                return false;
            }
            let Some(beta) = f.ld.quotient(ld_g) else {
                return false;
            };
            if !beta.support().is_subset(mult) {
                return false;
            }
            let l = theta.lcm(&f.anc).expect("same indeterminate");
            rc.compare(&l, ld_g) == Ordering::Less
        })
    }

    fn normal_form(&mut self, p: &LinearDiffPoly) -> Result<Option<LinearDiffPoly>, CompletionError> {
        self.stats.nf_calls += 1;
        let r = &self.opts.main;
        let h = Reducers::new(self.polys(), Some(self.opts.division), r).reduce(p, r);
        if h.is_zero() {
            self.stats.zero_reductions += 1;
            return Ok(None);
        }
        if h.is_inconsistent() {
            return Err(CompletionError::Inconsistent(h));
        }
        Ok(Some(h.normalize(r).expect("nonzero")))
    }

    fn restrict_processed(&mut self) {
        let mults = self.mults();
        let n = self.opts.main.nvars();
        for (t, m) in self.t.iter_mut().zip(mults) {
            t.processed = t.processed.intersection(m.complement(n));
        }
    }

    /// Adds `h`; a new leading derivative displaces higher elements into `Q`.
    fn insert(&mut self, h: LinearDiffPoly, same_ld: bool, anc: &Derivative, processed: VarSet) {
        let r = &self.opts.main;
        let ld = h.ld(r).expect("nonzero").clone();
        self.stats.insertions += 1;
        if same_ld {
            self.t.push(Triple {
                poly: h,
                ld,
                anc: anc.clone(),
                processed,
            });
        } else {
            self.t.push(Triple {
                poly: h,
                ld: ld.clone(),
                anc: ld.clone(),
                processed: VarSet::empty(),
            });
            let (keep, moved): (Vec<Triple>, Vec<Triple>) = std::mem::take(&mut self.t)
                .into_iter()
                .partition(|f| r.compare(&f.ld, &ld) != Ordering::Greater);
            self.stats.displaced += moved.len();
            self.t = keep;
            self.q.extend(moved);
        }
        self.restrict_processed();
    }

    fn upper(&mut self) -> Result<(), CompletionError> {
        while !self.q.is_empty() {
            let lds: Vec<Derivative> = self.q.iter().map(|t| t.ld.clone()).collect();
            let k = priority_lowest(&lds, &self.opts.main).expect("nonempty");
            let g = self.q.remove(k);
            if self.opts.use_criterion && self.criterion(&g.ld, &g.anc, &self.mults()) {
                self.stats.criterion_hits += 1;
                continue;
            }
            if let Some(h) = self.normal_form(&g.poly)? {
                let same = h.ld(&self.opts.main) == Some(&g.ld);
                self.insert(h, same, &g.anc, g.processed);
                return Ok(());
            }
        }
        Ok(())
    }

    fn lower(&mut self, observer: &mut dyn FnMut(&Snapshot)) -> Result<(), CompletionError> {
        loop {
            let mults = self.mults();
            let n = self.opts.main.nvars();
            let mut cands: Vec<(usize, usize, Derivative)> = Vec::new();
            for (k, (t, m)) in self.t.iter().zip(&mults).enumerate() {
                for x in m.complement(n).difference(t.processed).iter() {
                    let d = t.ld.differentiated(x);
                    let below_queue = self
                        .q
                        .iter()
                        .all(|f| self.opts.main.compare(&d, &f.ld) == Ordering::Less);
                    if below_queue {
                        cands.push((k, x, d));
                    }
                }
            }
            let lds: Vec<Derivative> = cands.iter().map(|c| c.2.clone()).collect();
            let Some(best) = priority_lowest(&lds, &self.opts.completion) else {
                return Ok(());
            };
            let (k, x, d) = cands.swap_remove(best);
            if self.stats.prolongations >= self.opts.cap {
                let mut partial: Vec<LinearDiffPoly> = self.t.iter().map(|t| t.poly.clone()).collect();
                partial.extend(self.q.iter().map(|t| t.poly.clone()));
                return Err(CompletionError::CapExceeded {
                    steps: self.stats.prolongations,
                    partial,
                });
            }
            observer(&Snapshot {
                elements: self.polys(),
                queue_empty: self.q.is_empty(),
                next: &d,
            });
            self.stats.prolongations += 1;
            self.t[k].processed.insert(x);
            let anc = self.t[k].anc.clone();
            let element = self.t[k].ld.clone();
            let verdict = if self.opts.use_criterion && self.criterion(&d, &anc, &mults) {
                self.stats.criterion_hits += 1;
                Verdict::Skipped
            } else {
                let p = self.t[k].poly.differentiate(x);
                match self.normal_form(&p)? {
                    None => Verdict::Zero,
                    Some(h) => {
                        let hld = h.ld(&self.opts.main).unwrap().clone();
                        let same = hld == d;
                        self.insert(h, same, &anc, VarSet::empty());
                        Verdict::New(hld)
                    }
                }
            };
            if self.opts.trace {
                self.trace.push(TraceEvent {
                    element,
                    var: x,
                    verdict,
                });
            }
        }
    }
}

fn prepare_input(f: &[LinearDiffPoly], opts: &CompletionOptions) -> Result<Vec<LinearDiffPoly>, CompletionError> {
    let r = &opts.main;
    let (n, m) = (r.nvars(), r.nindets());
    let mut out = Vec::new();
    for p in f {
        if p.nvars() != n || p.nindets() != m {
            return Err(CompletionError::Mismatch);
        }
        if p.is_zero() {
            continue;
        }
        if p.is_inconsistent() {
            return Err(CompletionError::Inconsistent(p.clone()));
        }
        out.push(p.normalize(r).expect("nonzero"));
    }
    if out.is_empty() {
        return Err(CompletionError::EmptyInput);
    }
    if opts.autoreduce_input {
        out = conventional_autoreduce(out, r)?;
    }
    Ok(out)
}

/// Reduces every element by the others (conventional reduction) until no
/// leading derivative is a derivative of another.
pub fn conventional_autoreduce(
    mut set: Vec<LinearDiffPoly>,
    r: &Ranking,
) -> Result<Vec<LinearDiffPoly>, CompletionError> {
    loop {
        let mut changed = false;
        let mut k = 0;
        while k < set.len() {
            let others: Vec<LinearDiffPoly> = set
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, p)| p.clone())
                .collect();
            let h = conventional_normal_form(&set[k], &others, r);
            if h.is_zero() {
                set.remove(k);
                changed = true;
                continue;
            }
            if h.is_inconsistent() {
                return Err(CompletionError::Inconsistent(h));
            }
            let h = h.normalize(r).expect("nonzero");
            if h != set[k] {
                set[k] = h;
                changed = true;
            }
            k += 1;
        }
        if !changed {
            return Ok(set);
        }
    }
}

/// Minimal involutive basis of the differential ideal generated by `f`.
pub fn minimal_involutive_basis(
    f: &[LinearDiffPoly],
    opts: &CompletionOptions,
) -> Result<InvolutiveBasis, CompletionError> {
    minimal_involutive_basis_observed(f, opts, &mut |_| {})
}

/// As [`minimal_involutive_basis`], calling `observer` before every
/// prolongation examination.
pub fn minimal_involutive_basis_observed(
    f: &[LinearDiffPoly],
    opts: &CompletionOptions,
    observer: &mut dyn FnMut(&Snapshot),
) -> Result<InvolutiveBasis, CompletionError> {
    let input = prepare_input(f, opts)?;
    let r = &opts.main;
    let lds: Vec<Derivative> = input.iter().map(|p| p.ld(r).unwrap().clone()).collect();
    let first = priority_lowest(&lds, r).expect("nonempty");
    let mut engine = Engine {
        opts,
        t: Vec::new(),
        q: Vec::new(),
        stats: CompletionStats::default(),
        trace: Vec::new(),
    };
    for (k, p) in input.into_iter().enumerate() {
        let triple = Triple {
            ld: lds[k].clone(),
            anc: lds[k].clone(),
            poly: p,
            processed: VarSet::empty(),
        };
        if k == first {
            engine.t.push(triple);
        } else {
            engine.q.push(triple);
        }
    }
    loop {
        engine.upper()?;
        engine.lower(observer)?;
        if engine.q.is_empty() {
            break;
        }
    }
    let mut elements: Vec<LinearDiffPoly> = engine.t.into_iter().map(|t| t.poly).collect();
    tail_reduce(&mut elements, opts);
    let mut basis = InvolutiveBasis::from_elements(&elements, opts.clone())?;
    basis.stats = engine.stats;
    basis.trace = engine.trace;
    Ok(basis)
}

/// Replaces each element by its leading term plus the involutive normal
/// form of its tail; the leading derivatives do not change.
fn tail_reduce(elements: &mut [LinearDiffPoly], opts: &CompletionOptions) {
    let r = &opts.main;
    for k in 0..elements.len() {
        let p = elements[k].clone();
        let (ld, lc) = {
            let (d, c) = p.leading(r).unwrap();
            (d.clone(), c.clone())
        };
        let mut tail = p.clone();
        tail.remove_term(&ld);
        let reduced = involutive_normal_form(&tail, elements, opts.division, r);
        let mut out = reduced;
        out.add_term(ld, lc);
        elements[k] = out;
    }
}

/// Every nonmultiplicative prolongation reduces to zero.
pub fn verify_involutive(b: &InvolutiveBasis) -> bool {
    verify_involutive_with(b, Execution::default())
}

pub fn verify_involutive_with(b: &InvolutiveBasis, exec: Execution) -> bool {
    prolongation_checks(b, None, exec)
}

/// Checks only prolongations whose leading derivative is `≺_c vartheta`.
pub fn verify_partial_involutive(b: &InvolutiveBasis, vartheta: &Derivative) -> bool {
    prolongation_checks(b, Some(vartheta), Execution::default())
}

fn prolongation_checks(b: &InvolutiveBasis, below: Option<&Derivative>, exec: Execution) -> bool {
    let r = b.ranking();
    let rc = &b.options.completion;
    let lds = b.leading_derivatives();
    let pairs: Vec<(usize, usize)> = b
        .separations
        .iter()
        .enumerate()
        .flat_map(|(k, s)| s.nonmultiplicative.iter().map(move |x| (k, x)))
        .filter(|&(k, x)| below.is_none_or(|v| rc.compare(&lds[k].differentiated(x), v) == Ordering::Less))
        .collect();
    let red = Reducers::new(b.elements.iter().collect(), Some(b.division()), r);
    exec.all(&pairs, |&(k, x)| {
        red.reduce(&b.elements[k].differentiate(x), r).is_zero()
    })
}

/// Differential S-polynomial of two elements of the same indeterminate.
pub fn s_polynomial(f: &LinearDiffPoly, g: &LinearDiffPoly, r: &Ranking) -> Option<LinearDiffPoly> {
    let (df, cf) = f.leading(r)?;
    let (dg, cg) = g.leading(r)?;
    let l = df.lcm(dg)?;
    let pf = f.prolong(&df.quotient(&l).unwrap()).scale(&cf.inv().unwrap());
    let pg = g.prolong(&dg.quotient(&l).unwrap()).scale(&cg.inv().unwrap());
    Some(&pf - &pg)
}

/// All pairwise S-polynomials reduce to zero conventionally.
pub fn groebner_oracle(f: &[LinearDiffPoly], ranking: &Ranking) -> bool {
    groebner_oracle_with(f, ranking, Execution::default())
}

pub fn groebner_oracle_with(f: &[LinearDiffPoly], ranking: &Ranking, exec: Execution) -> bool {
    let f: Vec<LinearDiffPoly> = f.iter().filter(|p| p.num_terms() > 0).cloned().collect();
    let pairs: Vec<(usize, usize)> = (0..f.len())
        .flat_map(|a| (a + 1..f.len()).map(move |b| (a, b)))
        .collect();
    let red = Reducers::new(f.iter().collect(), None, ranking);
    exec.all(&pairs, |&(a, b)| match s_polynomial(&f[a], &f[b], ranking) {
        None => true,
        Some(s) => red.reduce(&s, ranking).is_zero(),
    })
}

/// Helper for building a zero-constant polynomial from `(coefficient, indeterminate, α)` triples.
pub fn linear(nvars: usize, nindets: usize, terms: &[(RationalFunction, usize, &[u32])]) -> LinearDiffPoly {
    LinearDiffPoly::from_terms(
        nvars,
        nindets,
        RationalFunction::zero(nvars),
        terms
            .iter()
            .map(|(c, j, a)| (Derivative::new(*j, MultiIndex::new(a)), c.clone())),
    )
}
