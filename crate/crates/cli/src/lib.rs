//! Front end of the `involutive` command: problem-file parsing, subcommand
//! dispatch and text/JSON reports.

pub mod parse;
pub mod report;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use involutive::analysis::{self, SolutionDimension};
use involutive::completion::{
    minimal_involutive_basis, verify_involutive, CompletionError, CompletionOptions, InvolutiveBasis,
};
use involutive::diffpoly::{LinearDiffPoly, Ranking, Scheme, Tiebreak};
use involutive::monomial::{self, DivisionKind, MonomialError, MonomialOrder};
use involutive::symmetry::{self, SymmetryError, VectorFieldAnsatz};
use thiserror::Error;

use parse::{linear_equation, parse_problem, solved_equation, ParseError, Problem};
use report::{BasisReport, ComplementReport, DimensionReport, HilbertReport, IvpReport, Report};

#[derive(Parser, Debug)]
#[command(name = "involutive", version, about = "Involutive completion of linear PDE systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

fn parse_division(s: &str) -> Result<DivisionKind, String> {
    s.parse()
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse()
        .map_err(|e: involutive::diffpoly::DiffPolyError| e.to_string())
}

fn parse_tie(s: &str) -> Result<Tiebreak, String> {
    s.parse()
        .map_err(|e: involutive::diffpoly::DiffPolyError| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// janet | pommaret | lexinduced
    #[arg(long, global = true, value_parser = parse_division)]
    pub division: Option<DivisionKind>,
    /// lex | grlex | degrevlex
    #[arg(long, global = true, value_parser = parse_scheme)]
    pub ranking: Option<Scheme>,
    /// term | indet
    #[arg(long, global = true, value_parser = parse_tie)]
    pub tie: Option<Tiebreak>,
    #[arg(long = "completion-ranking", global = true, value_parser = parse_scheme)]
    pub completion_ranking: Option<Scheme>,
    /// Budget of prolongation examinations.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    pub criterion: Switch,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true)]
    pub trace: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            division: None,
            ranking: None,
            tie: None,
            completion_ranking: None,
            cap: 10_000,
            criterion: Switch::On,
            json: false,
            trace: false,
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Complete a linear system to a minimal involutive basis.
    Complete { file: PathBuf },
    /// Check whether the given system is already involutive.
    Verify { file: PathBuf },
    /// Complete, then print the initial-value problem.
    Ivp { file: PathBuf },
    /// Complete, then print Hilbert function and polynomial.
    Hilbert {
        file: PathBuf,
        /// Print HF(s) up to this order.
        #[arg(long)]
        s: Option<u32>,
    },
    /// Determining system of Lie point symmetries and its dimension.
    Symmetry { file: PathBuf },
    /// Separations, completion and complement of a monomial set (`mono:` lines).
    Monomial { file: PathBuf },
}

impl Command {
    pub fn file(&self) -> &PathBuf {
        match self {
            Command::Complete { file }
            | Command::Verify { file }
            | Command::Ivp { file }
            | Command::Hilbert { file, .. }
            | Command::Symmetry { file }
            | Command::Monomial { file } => file,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

/// Rendered result of one invocation.
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.report).expect("report serializes") + "\n"
        } else {
            self.text.clone()
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn linear_ranking(p: &Problem, flags: &Flags) -> (Ranking, Ranking) {
    let scheme = flags.ranking.or(p.ranking).unwrap_or(Scheme::GrLex);
    let tie = flags.tie.or(p.tie).unwrap_or(Tiebreak::TermFirst);
    let main = Ranking::new(scheme, p.nvars(), p.nfuncs(), tie);
    let comp = flags
        .completion_ranking
        .or(p.completion)
        .map_or_else(|| main.clone(), |s| main.with_scheme(s));
    (main, comp)
}

fn options(division: DivisionKind, main: Ranking, comp: Ranking, flags: &Flags) -> CompletionOptions {
    CompletionOptions::new(division, main)
        .with_completion(comp)
        .with_cap(flags.cap)
        .with_criterion(flags.criterion == Switch::On)
        .with_trace(flags.trace)
}

fn equations(p: &Problem) -> Result<Vec<LinearDiffPoly>, CliError> {
    if p.equations.is_empty() {
        return Err(CliError::Input("no equations".into()));
    }
    p.equations
        .iter()
        .map(|e| linear_equation(e, &p.names).map_err(CliError::from))
        .collect()
}

/// Result of a completion, or the cap-exceeded outcome with exit code 2.
#[allow(clippy::large_enum_variant)]
enum Completed {
    Done(InvolutiveBasis, f64),
    Capped(Outcome),
}

fn run_completion(
    cmd: &str,
    eqs: &[LinearDiffPoly],
    opts: &CompletionOptions,
    p: &Problem,
) -> Result<Completed, CliError> {
    let t0 = Instant::now();
    match minimal_involutive_basis(eqs, opts) {
        Ok(b) => Ok(Completed::Done(b, t0.elapsed().as_secs_f64() * 1e3)),
        Err(CompletionError::CapExceeded { steps, partial }) => {
            let mut report = Report::new(cmd, opts);
            report.cap_exceeded = Some(steps);
            let names = &p.names;
            let partial_text: Vec<String> = partial
                .iter()
                .map(|q| q.display_with(names, &opts.main).to_string())
                .collect();
            report.partial = Some(partial_text.clone());
            let mut text = format!("cap exceeded after {steps} prolongation examinations\npartial system:\n");
            for l in partial_text {
                let _ = writeln!(text, "  {l}");
            }
            Ok(Completed::Capped(Outcome {
                report,
                text,
                exit_code: 2,
            }))
        }
        Err(e) => Err(input(e)),
    }
}

fn basis_section(text: &mut String, b: &BasisReport) {
    let _ = writeln!(text, "basis ({} elements):", b.elements.len());
    for e in &b.elements {
        let _ = writeln!(
            text,
            "  {}    [mult: {}]",
            e.text,
            if e.multiplicative.is_empty() {
                "-".to_string()
            } else {
                e.multiplicative.join(" ")
            }
        );
    }
    let s = &b.stats;
    let _ = writeln!(
        text,
        "prolongations: {}, normal forms: {}, criterion hits: {}",
        s.prolongations, s.nf_calls, s.criterion_hits
    );
}

fn trace_section(text: &mut String, b: &InvolutiveBasis, names: &involutive::diffpoly::Names) {
    if b.trace.is_empty() {
        return;
    }
    let _ = writeln!(text, "trace:");
    for e in &b.trace {
        let _ = writeln!(text, "  {}", e.display_with(names));
    }
}

fn complement_section(text: &mut String, comps: &[ComplementReport]) {
    let _ = writeln!(text, "parametric generators:");
    for c in comps {
        let m = if c.multipliers.is_empty() {
            "-".to_string()
        } else {
            c.multipliers.join(" ")
        };
        let _ = writeln!(text, "  {}    [mult: {m}]", c.derivative);
    }
}

fn dimension_line(d: &SolutionDimension) -> String {
    match d {
        SolutionDimension::Finite(k) => format!("dimension: {k}"),
        SolutionDimension::Infinite(g) => format!("dimension: infinite ({} generators with multipliers)", g.len()),
    }
}

/// Runs one subcommand on the text of a problem file.
pub fn execute(cmd: &Command, text: &str, flags: &Flags) -> Result<Outcome, CliError> {
    let p = parse_problem(text)?;
    match cmd {
        Command::Complete { .. } => complete_like(&p, flags, "complete", |_, _, _| Ok(())),
        Command::Ivp { .. } => complete_like(&p, flags, "ivp", |b, report, text| {
            let spec = analysis::ivp_spec(b).map_err(input)?;
            let r = IvpReport::new(&spec, &p.names);
            let _ = writeln!(text, "initial data:");
            for l in &r.lines {
                let _ = writeln!(text, "  {l}");
            }
            report.ivp = Some(r);
            Ok(())
        }),
        Command::Hilbert { s, .. } => complete_like(&p, flags, "hilbert", |b, report, text| {
            let data = analysis::hilbert_data(b);
            let upto = s.unwrap_or(data.stabilization + 3);
            let h = HilbertReport::new(b, &data, upto);
            for (k, v) in &h.samples {
                let _ = writeln!(text, "HF({k}) = {v}");
            }
            let _ = writeln!(text, "HP(s) = {}", h.hp);
            let _ = writeln!(text, "stabilization: {}", h.stabilization);
            let dim = analysis::solution_dimension(b).map_err(input)?;
            let _ = writeln!(text, "{}", dimension_line(&dim));
            report.hilbert = Some(h);
            report.dimension = Some(DimensionReport::new(&dim, &p.names));
            Ok(())
        }),
        Command::Verify { .. } => verify(&p, flags),
        Command::Symmetry { .. } => symmetry_cmd(&p, flags),
        Command::Monomial { .. } => monomial_cmd(&p, flags),
    }
}

fn complete_like(
    p: &Problem,
    flags: &Flags,
    cmd: &str,
    extra: impl FnOnce(&InvolutiveBasis, &mut Report, &mut String) -> Result<(), CliError>,
) -> Result<Outcome, CliError> {
    let eqs = equations(p)?;
    let (main, comp) = linear_ranking(p, flags);
    let division = flags.division.unwrap_or(DivisionKind::Janet);
    let opts = options(division, main, comp, flags);
    let (b, ms) = match run_completion(cmd, &eqs, &opts, p)? {
        Completed::Done(b, ms) => (b, ms),
        Completed::Capped(o) => return Ok(o),
    };
    let mut report = Report::new(cmd, &opts);
    let br = BasisReport::new(&b, &p.names);
    let mut text = String::new();
    let _ = writeln!(text, "{}", report.options.summary());
    basis_section(&mut text, &br);
    trace_section(&mut text, &b, &p.names);
    if flags.trace {
        report.trace = Some(b.trace.iter().map(|e| e.display_with(&p.names).to_string()).collect());
    }
    report.basis = Some(br);
    report.timing_ms = Some(ms);
    extra(&b, &mut report, &mut text)?;
    Ok(Outcome {
        report,
        text,
        exit_code: 0,
    })
}

fn verify(p: &Problem, flags: &Flags) -> Result<Outcome, CliError> {
    let eqs = equations(p)?;
    let (main, comp) = linear_ranking(p, flags);
    let divisions = match flags.division {
        Some(d) => vec![d],
        None => DivisionKind::ALL.to_vec(),
    };
    let mut text = String::new();
    let mut results = Vec::new();
    let mut report = Report::new("verify", &options(divisions[0], main.clone(), comp.clone(), flags));
    for d in divisions {
        let opts = options(d, main.clone(), comp.clone(), flags);
        let b = InvolutiveBasis::from_elements(&eqs, opts).map_err(input)?;
        let ok = verify_involutive(&b);
        let _ = writeln!(text, "{d}: involutive: {ok}");
        results.push((d.name().to_string(), ok));
    }
    report.involutive = Some(results);
    Ok(Outcome {
        report,
        text,
        exit_code: 0,
    })
}

fn symmetry_cmd(p: &Problem, flags: &Flags) -> Result<Outcome, CliError> {
    if p.equations.is_empty() {
        return Err(CliError::Input("no equations".into()));
    }
    let eqs = p.equations.iter().map(solved_equation).collect::<Result<Vec<_>, _>>()?;
    let ansatz = VectorFieldAnsatz::new(p.names.vars.clone(), p.names.funcs.clone());
    let nv = p.nvars() + p.nfuncs();
    let scheme = flags.ranking.or(p.ranking).unwrap_or(Scheme::DegRevLex);
    let tie = flags.tie.or(p.tie).unwrap_or(Tiebreak::TermFirst);
    let order = p.detvars.clone().unwrap_or_else(|| (0..nv).collect());
    let main = Ranking::with_orders(scheme, order, (0..nv).collect(), tie).map_err(input)?;
    let comp = flags
        .completion_ranking
        .or(p.completion)
        .map_or_else(|| main.clone(), |s| main.with_scheme(s));
    let division = flags.division.unwrap_or(DivisionKind::Janet);
    let opts = options(division, main, comp, flags);
    let names = ansatz.names();
    let t0 = Instant::now();
    let res = match symmetry::symmetry_dimension(&eqs, &ansatz, &opts) {
        Ok(r) => r,
        Err(SymmetryError::Completion(CompletionError::CapExceeded { steps, .. })) => {
            let mut report = Report::new("symmetry", &opts);
            report.cap_exceeded = Some(steps);
            return Ok(Outcome {
                report,
                text: format!("cap exceeded after {steps} prolongation examinations\n"),
                exit_code: 2,
            });
        }
        Err(e) => return Err(input(e)),
    };
    let mut report = Report::new("symmetry", &opts);
    let mut text = String::new();
    let _ = writeln!(text, "{}", report.options.summary());
    let _ = writeln!(text, "determining system ({} equations):", res.system.equations.len());
    let sys: Vec<String> = res
        .system
        .equations
        .iter()
        .map(|q| q.display_with(&names, &opts.main).to_string())
        .collect();
    for l in &sys {
        let _ = writeln!(text, "  {l}");
    }
    let br = BasisReport::new(&res.basis, &names);
    basis_section(&mut text, &br);
    trace_section(&mut text, &res.basis, &names);
    let comps = ComplementReport::all(&res.basis, &names).map_err(input)?;
    complement_section(&mut text, &comps);
    let _ = writeln!(text, "{}", dimension_line(&res.dimension));
    report.system = Some(sys);
    report.basis = Some(br);
    report.complement = Some(comps);
    report.dimension = Some(DimensionReport::new(&res.dimension, &names));
    report.timing_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
    Ok(Outcome {
        report,
        text,
        exit_code: 0,
    })
}

fn monomial_cmd(p: &Problem, flags: &Flags) -> Result<Outcome, CliError> {
    if p.monomials.is_empty() {
        return Err(CliError::Input("no monomials (`mono:` lines)".into()));
    }
    let set = &p.monomials;
    let vars = &p.names.vars;
    let divisions = match flags.division {
        Some(d) => vec![d],
        None => DivisionKind::ALL.to_vec(),
    };
    let order = match flags.completion_ranking.or(p.completion).unwrap_or(Scheme::GrLex) {
        Scheme::Lex => MonomialOrder::Lex,
        Scheme::GrLex => MonomialOrder::GrLex,
        Scheme::DegRevLex => MonomialOrder::DegRevLex,
    };
    let main = Ranking::new(Scheme::GrLex, p.nvars(), 1, Tiebreak::TermFirst);
    let mut report = Report::new("monomial", &options(divisions[0], main.clone(), main, flags));
    let mut text = String::new();
    let mut code = 0;
    let mut sections = Vec::new();
    let mono = |m: &monomial::MultiIndex| m.display_with(vars).to_string();
    let vs = |s: monomial::VarSet| -> Vec<String> { s.iter().map(|i| vars[i].clone()).collect() };
    for d in divisions {
        let _ = writeln!(text, "{d}:");
        let seps = monomial::separations(set, d);
        let mut rows = Vec::new();
        for (u, s) in set.iter().zip(&seps) {
            let _ = writeln!(
                text,
                "  {}    mult: {{{}}}  nonmult: {{{}}}",
                mono(u),
                vs(s.multiplicative).join(", "),
                vs(s.nonmultiplicative).join(", ")
            );
            rows.push(report::SeparationRow {
                monomial: mono(u),
                multiplicative: vs(s.multiplicative),
                nonmultiplicative: vs(s.nonmultiplicative),
            });
        }
        let inv = monomial::is_involutive(set, d);
        let _ = writeln!(text, "  involutive: {inv}");
        let mut section = report::MonomialSection {
            division: d.name().to_string(),
            separations: rows,
            involutive: inv,
            completion: None,
            added: None,
            cap_exceeded: None,
            complement: None,
        };
        match monomial::complete(set, d, order, flags.cap) {
            Ok(done) => {
                let added: Vec<String> = done.iter().filter(|m| !set.contains(m)).map(mono).collect();
                let _ = writeln!(
                    text,
                    "  completion: {}",
                    done.iter().map(mono).collect::<Vec<_>>().join(", ")
                );
                let _ = writeln!(
                    text,
                    "  added: {}",
                    if added.is_empty() { "-".into() } else { added.join(", ") }
                );
                let dec = monomial::complementary_decomposition(p.nvars(), &done, d).map_err(input)?;
                let mut comp = Vec::new();
                for g in dec.cones() {
                    comp.push(ComplementReport {
                        derivative: mono(&g.tip),
                        multipliers: vs(g.multipliers),
                    });
                }
                let _ = writeln!(
                    text,
                    "  complement: {}",
                    comp.iter()
                        .map(|c| format!("{}{{{}}}", c.derivative, c.multipliers.join(",")))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                section.completion = Some(done.iter().map(mono).collect());
                section.added = Some(added);
                section.complement = Some(comp);
            }
            Err(MonomialError::CapExceeded { steps, .. }) => {
                let _ = writeln!(text, "  completion: cap exceeded after {steps} steps");
                section.cap_exceeded = Some(steps);
                code = 2;
            }
            Err(e) => return Err(input(e)),
        }
        sections.push(section);
    }
    report.monomial = Some(sections);
    Ok(Outcome {
        report,
        text,
        exit_code: code,
    })
}

/// Reads the file named by the command (`-` is standard input) and runs it.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let path = cli.command.file();
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|source| CliError::Io {
            path: "-".into(),
            source,
        })?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?
    };
    execute(&cli.command, &text, &cli.flags)
}
