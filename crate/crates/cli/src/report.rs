//! Machine-readable report; the text output is rendered alongside it.

use involutive::analysis::{self, AnalysisError, HilbertData, InitialKind, IvpSpec, SolutionDimension};
use involutive::completion::{CompletionOptions, CompletionStats, InvolutiveBasis};
use involutive::diffpoly::{Derivative, Names};
use involutive::monomial::VarSet;
use serde::Serialize;

#[derive(Serialize, Debug, Clone)]
pub struct OptionsReport {
    pub division: String,
    pub ranking: String,
    pub tie: String,
    pub completion_ranking: String,
    pub variable_order: Vec<usize>,
    pub cap: usize,
    pub criterion: bool,
}

impl OptionsReport {
    pub fn summary(&self) -> String {
        format!(
            "division: {}, ranking: {} ({}), completion ranking: {}",
            self.division, self.ranking, self.tie, self.completion_ranking
        )
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct TermReport {
    pub func: String,
    pub index: Vec<u32>,
    pub coefficient: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct ElementReport {
    pub text: String,
    pub constant: String,
    pub terms: Vec<TermReport>,
    pub multiplicative: Vec<String>,
    pub nonmultiplicative: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct StatsReport {
    pub prolongations: usize,
    pub nf_calls: usize,
    pub criterion_hits: usize,
}

impl From<&CompletionStats> for StatsReport {
    fn from(s: &CompletionStats) -> Self {
        StatsReport {
            prolongations: s.prolongations,
            nf_calls: s.nf_calls,
            criterion_hits: s.criterion_hits,
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct BasisReport {
    pub elements: Vec<ElementReport>,
    pub stats: StatsReport,
}

fn var_names(s: VarSet, names: &Names) -> Vec<String> {
    s.iter().map(|i| names.vars[i].clone()).collect()
}

impl BasisReport {
    pub fn new(b: &InvolutiveBasis, names: &Names) -> Self {
        let r = b.ranking();
        let elements = b
            .elements
            .iter()
            .zip(&b.separations)
            .map(|(p, s)| ElementReport {
                text: p.display_with(names, r).to_string(),
                constant: p.constant().display_with(&names.vars).to_string(),
                terms: p
                    .sorted_terms(r)
                    .into_iter()
                    .map(|(d, c)| TermReport {
                        func: names.funcs[d.indet].clone(),
                        index: d.index.exponents().to_vec(),
                        coefficient: c.display_with(&names.vars).to_string(),
                    })
                    .collect(),
                multiplicative: var_names(s.multiplicative, names),
                nonmultiplicative: var_names(s.nonmultiplicative, names),
            })
            .collect();
        BasisReport {
            elements,
            stats: (&b.stats).into(),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct ComplementReport {
    pub derivative: String,
    pub multipliers: Vec<String>,
}

impl ComplementReport {
    pub fn all(b: &InvolutiveBasis, names: &Names) -> Result<Vec<Self>, AnalysisError> {
        let mut out = Vec::new();
        for c in analysis::complementary_set(b)? {
            for g in c.decomposition.cones() {
                out.push(ComplementReport {
                    derivative: Derivative::new(c.indet, g.tip).display_with(names).to_string(),
                    multipliers: var_names(g.multipliers, names),
                });
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct IvpEntryReport {
    pub derivative: String,
    pub pinned: Vec<String>,
    pub multipliers: Vec<String>,
    pub kind: &'static str,
}

#[derive(Serialize, Debug, Clone)]
pub struct IvpReport {
    pub lines: Vec<String>,
    pub entries: Vec<IvpEntryReport>,
}

impl IvpReport {
    pub fn new(spec: &IvpSpec, names: &Names) -> Self {
        let lines = spec
            .display_with(names)
            .to_string()
            .lines()
            .map(str::to_string)
            .collect();
        let entries = spec
            .entries
            .iter()
            .map(|e| IvpEntryReport {
                derivative: e.derivative.display_with(names).to_string(),
                pinned: var_names(e.pinned, names),
                multipliers: var_names(e.multipliers, names),
                kind: match e.kind {
                    InitialKind::ArbitraryFunction => "function",
                    InitialKind::ArbitraryConstant => "constant",
                },
            })
            .collect();
        IvpReport { lines, entries }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct HilbertReport {
    pub samples: Vec<(u32, u128)>,
    pub hp: String,
    pub hp_coefficients: Vec<String>,
    pub stabilization: u32,
}

impl HilbertReport {
    pub fn new(b: &InvolutiveBasis, data: &HilbertData, upto: u32) -> Self {
        HilbertReport {
            samples: (0..=upto).map(|s| (s, analysis::hilbert_function(b, s))).collect(),
            hp: data.hp.to_string(),
            hp_coefficients: data.hp.coeffs().iter().map(|c| c.to_string()).collect(),
            stabilization: data.stabilization,
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct GeneratorReport {
    pub func: String,
    pub tip: Vec<u32>,
    pub multipliers: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct DimensionReport {
    pub finite: Option<u128>,
    pub infinite: Option<Vec<GeneratorReport>>,
}

impl DimensionReport {
    pub fn new(d: &SolutionDimension, names: &Names) -> Self {
        match d {
            SolutionDimension::Finite(k) => DimensionReport {
                finite: Some(*k),
                infinite: None,
            },
            SolutionDimension::Infinite(gens) => DimensionReport {
                finite: None,
                infinite: Some(
                    gens.iter()
                        .map(|(j, g)| GeneratorReport {
                            func: names.funcs[*j].clone(),
                            tip: g.tip.exponents().to_vec(),
                            multipliers: var_names(g.multipliers, names),
                        })
                        .collect(),
                ),
            },
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct SeparationRow {
    pub monomial: String,
    pub multiplicative: Vec<String>,
    pub nonmultiplicative: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct MonomialSection {
    pub division: String,
    pub separations: Vec<SeparationRow>,
    pub involutive: bool,
    pub completion: Option<Vec<String>>,
    pub added: Option<Vec<String>>,
    pub cap_exceeded: Option<usize>,
    pub complement: Option<Vec<ComplementReport>>,
}

#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub command: String,
    pub options: OptionsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<ComplementReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ivp: Option<IvpReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<DimensionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involutive: Option<Vec<(String, bool)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomial: Option<Vec<MonomialSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap_exceeded: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, opts: &CompletionOptions) -> Self {
        Report {
            command: command.to_string(),
            options: OptionsReport {
                division: opts.division.name().to_string(),
                ranking: opts.main.scheme.name().to_string(),
                tie: opts.main.tiebreak.name().to_string(),
                completion_ranking: opts.completion.scheme.name().to_string(),
                variable_order: opts.main.variable_order.clone(),
                cap: opts.cap,
                criterion: opts.use_criterion,
            },
            system: None,
            basis: None,
            complement: None,
            ivp: None,
            hilbert: None,
            dimension: None,
            involutive: None,
            monomial: None,
            trace: None,
            cap_exceeded: None,
            partial: None,
            timing_ms: None,
        }
    }
}
