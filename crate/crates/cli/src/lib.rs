//! Command-line surface over the exact orbifold-zeta library: analysis
//! reports, zeta computation, dual-pair verification, corpus generation,
//! and a machine-readable JSON form of every report.

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use bhzeta::corpus::{generate, CorpusParams};
use bhzeta::cyczeta::CyclotomicProduct;
use bhzeta::invpoly::InvertiblePolynomial;
use bhzeta::orbzeta::{verify_duality, OrbifoldPair, Route, RouteEquivalence};
use bhzeta::symgroup::{parse_generator_list, Ambient, AmbientTag, Subgroup};
use bhzeta::{Error, DEFAULT_ENUM_BOUND};

#[derive(Parser, Debug)]
#[command(
    name = "bhzeta",
    version,
    about = "Exact orbifold monodromy zeta functions of invertible polynomials and their duals"
)]
pub struct Cli {
    /// Emit the full report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weights, symmetry group, and transpose of an invertible polynomial.
    Analyze {
        /// Polynomial such as "x^2*y + y^3" (coefficients are dropped).
        polynomial: Option<String>,
        /// Exponent matrix rows instead, such as "2,1;0,3".
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Orbifold (optionally reduced) zeta function of a pair (f, G).
    Zeta {
        polynomial: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        /// full | trivial | monodromy | sl, or generators "1/2,0;1/3,1/3".
        #[arg(long, default_value = "trivial")]
        group: String,
        /// Also divide by the aggregated (1 - t) factor.
        #[arg(long)]
        reduced: bool,
        /// Computation route; "both" cross-checks them.
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
        /// Group-enumeration cutoff (also via BHH_ENUM_BOUND).
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Dual pair plus every duality verdict for (f, G).
    Dual {
        polynomial: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value = "trivial")]
        group: String,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Run the duality verdicts over a corpus or a single polynomial.
    Verify {
        /// Single polynomial; omit to sweep the builtin corpus.
        polynomial: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        /// Subgroup for single-pair mode (ignored with --all-subgroups).
        #[arg(long, default_value = "trivial")]
        group: String,
        /// Verify every subgroup of every entry.
        #[arg(long)]
        all_subgroups: bool,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[arg(long, default_value_t = 4)]
        max_exponent: u32,
        #[arg(long, default_value_t = 200)]
        max_det: u64,
    },
    /// List the builtin corpus entries within the given bounds.
    Corpus {
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[arg(long, default_value_t = 4)]
        max_exponent: u32,
        #[arg(long, default_value_t = 200)]
        max_det: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Formula,
    Definition,
    Both,
}

/// Exit code contract: 0 success, 1 input or usage error, 2 verification
/// failure.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

#[derive(Serialize, Deserialize, Debug, Default)]
#[serde(default)]
pub struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

/// One factor (1 - e(c)·t^m)^s of a zeta function; all fields are exact
/// decimal/rational strings.
#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct TermJson {
    pub m: String,
    pub c: String,
    pub s: String,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct GroupJson {
    pub order: String,
    pub generators: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct VerdictsJson {
    #[serde(rename = "mainTheorem")]
    pub main_theorem: String,
    #[serde(rename = "lemmaSL")]
    pub lemma_sl: String,
    #[serde(rename = "orderProduct")]
    pub order_product: String,
    #[serde(rename = "blmsIsotropy")]
    pub blms_isotropy: String,
    #[serde(rename = "ellSwap")]
    pub ell_swap: String,
    #[serde(rename = "signIdentity")]
    pub sign_identity: String,
    #[serde(rename = "mI0equalsKtilde")]
    pub m_i0_equals_k_tilde: String,
    #[serde(rename = "routeEquivalence")]
    pub route_equivalence: String,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct VerifyRowJson {
    pub entry: String,
    #[serde(rename = "groupOrder")]
    pub group_order: String,
    pub status: String,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct SummaryJson {
    pub pairs: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct CorpusEntryJson {
    pub name: String,
    pub polynomial: String,
    pub det: String,
}

#[derive(Serialize, Deserialize, Debug, Default)]
#[serde(default)]
pub struct ResultBody {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(rename = "exponentMatrix", skip_serializing_if = "Option::is_none")]
    pub exponent_matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    #[serde(rename = "gradingElement", skip_serializing_if = "Option::is_none")]
    pub grading_element: Option<String>,
    #[serde(rename = "invariantFactors", skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transpose: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Vec<TermJson>>,
    #[serde(rename = "zetaDisplay", skip_serializing_if = "Option::is_none")]
    pub zeta_display: Option<String>,
    #[serde(rename = "reducedZeta", skip_serializing_if = "Option::is_none")]
    pub reduced_zeta: Option<Vec<TermJson>>,
    #[serde(rename = "reducedZetaDisplay", skip_serializing_if = "Option::is_none")]
    pub reduced_zeta_display: Option<String>,
    #[serde(rename = "eulerCharacteristic", skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<String>,
    #[serde(rename = "dualPolynomial", skip_serializing_if = "Option::is_none")]
    pub dual_polynomial: Option<String>,
    #[serde(rename = "dualGroup", skip_serializing_if = "Option::is_none")]
    pub dual_group: Option<GroupJson>,
    #[serde(rename = "dualReducedZetaDisplay", skip_serializing_if = "Option::is_none")]
    pub dual_reduced_zeta_display: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<VerdictsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<VerifyRowJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<SummaryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<CorpusEntryJson>>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct Report {
    pub command: String,
    pub input: InputEcho,
    pub result: ResultBody,
    pub warnings: Vec<String>,
    #[serde(rename = "exitStatus")]
    pub exit_status: i32,
}

/// Errors before any report exists: malformed input or usage. Always exit 1.
pub type UsageResult<T> = Result<T, String>;

fn enumeration_bound(flag: Option<u64>) -> UsageResult<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("BHH_ENUM_BOUND") {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| format!("BHH_ENUM_BOUND must be a positive integer, got {text:?}")),
        Err(_) => Ok(DEFAULT_ENUM_BOUND),
    }
}

fn load_polynomial(
    polynomial: &Option<String>,
    matrix: &Option<String>,
) -> UsageResult<(InvertiblePolynomial, Vec<String>, InputEcho)> {
    let echo = InputEcho {
        polynomial: polynomial.clone(),
        matrix: matrix.clone(),
        group: None,
    };
    match (polynomial, matrix) {
        (Some(_), Some(_)) => Err("give either a polynomial or --matrix, not both".into()),
        (None, None) => Err("missing input: give a polynomial or --matrix".into()),
        (Some(text), None) => {
            let (p, warnings) = InvertiblePolynomial::parse(text).map_err(|e| e.to_string())?;
            Ok((p, warnings, echo))
        }
        (None, Some(text)) => {
            let p = InvertiblePolynomial::parse_matrix(text).map_err(|e| e.to_string())?;
            Ok((p, Vec::new(), echo))
        }
    }
}

fn resolve_group(ambient: &Ambient, spec: &str) -> UsageResult<Subgroup> {
    match spec {
        "full" => Ok(ambient.full_group()),
        "trivial" => Ok(ambient.trivial_subgroup()),
        "monodromy" => Ok(ambient.monodromy_subgroup()),
        "sl" => Ok(ambient.full_group().sl_intersection()),
        text => {
            let generators = parse_generator_list(text).map_err(|e| e.to_string())?;
            for alpha in &generators {
                if alpha.len() != ambient.n() {
                    return Err(format!(
                        "generator has {} coordinates, polynomial has {} variables",
                        alpha.len(),
                        ambient.n()
                    ));
                }
            }
            let elements = generators
                .iter()
                .map(|alpha| ambient.element(alpha))
                .collect::<Result<Vec<_>, Error>>()
                .map_err(|e| e.to_string())?;
            ambient.subgroup_generated(&elements).map_err(|e| e.to_string())
        }
    }
}

fn group_json(h: &Subgroup) -> GroupJson {
    GroupJson {
        order: h.order().to_string(),
        generators: h.generating_elements().iter().map(|g| g.to_string()).collect(),
    }
}

fn terms_json(z: &CyclotomicProduct) -> Vec<TermJson> {
    z.to_binomial_form()
        .terms()
        .iter()
        .map(|t| TermJson { m: t.m.to_string(), c: t.c.to_string(), s: t.s.to_string() })
        .collect()
}

fn verdicts_json(report: &bhzeta::orbzeta::DualityReport) -> VerdictsJson {
    let show = |b: bool| if b { "pass" } else { "FAIL" }.to_string();
    VerdictsJson {
        main_theorem: show(report.main_theorem),
        lemma_sl: show(report.lemma_sl),
        order_product: show(report.order_product),
        blms_isotropy: show(report.blms_isotropy),
        ell_swap: show(report.ell_swap),
        sign_identity: show(report.sign_identity),
        m_i0_equals_k_tilde: show(report.m_i0_equals_k_tilde),
        route_equivalence: match report.route_equivalence {
            RouteEquivalence::Pass => "pass".to_string(),
            RouteEquivalence::Fail => "FAIL".to_string(),
            RouteEquivalence::SkippedBound => "skipped (bound)".to_string(),
        },
    }
}

fn matrix_rows(p: &InvertiblePolynomial) -> Vec<Vec<String>> {
    let e = p.exponent_matrix();
    (0..e.rows())
        .map(|i| (0..e.cols()).map(|j| e.at(i, j).to_string()).collect())
        .collect()
}

pub fn run(cli: &Cli) -> UsageResult<Report> {
    match &cli.command {
        Command::Analyze { polynomial, matrix } => cmd_analyze(polynomial, matrix),
        Command::Zeta { polynomial, matrix, group, reduced, method, bound } => {
            cmd_zeta(polynomial, matrix, group, *reduced, *method, *bound)
        }
        Command::Dual { polynomial, matrix, group, bound } => {
            cmd_dual(polynomial, matrix, group, *bound)
        }
        Command::Verify {
            polynomial,
            matrix,
            group,
            all_subgroups,
            bound,
            max_vars,
            max_exponent,
            max_det,
        } => cmd_verify(
            polynomial,
            matrix,
            group,
            *all_subgroups,
            *bound,
            CorpusParams { max_vars: *max_vars, max_exponent: *max_exponent, max_det: *max_det },
        ),
        Command::Corpus { max_vars, max_exponent, max_det } => cmd_corpus(CorpusParams {
            max_vars: *max_vars,
            max_exponent: *max_exponent,
            max_det: *max_det,
        }),
    }
}

fn cmd_analyze(polynomial: &Option<String>, matrix: &Option<String>) -> UsageResult<Report> {
    let (p, warnings, input) = load_polynomial(polynomial, matrix)?;
    let ambient = Ambient::new(&p, AmbientTag::Source);
    let full = ambient.full_group();
    let transpose = p.transpose().map_err(|e| e.to_string())?;
    let result = ResultBody {
        polynomial: Some(p.to_string()),
        exponent_matrix: Some(matrix_rows(&p)),
        det: Some(p.determinant().to_string()),
        weights: Some(p.weights().vector().iter().map(|q| q.to_string()).collect()),
        grading_element: Some(ambient.grading_element().to_string()),
        invariant_factors: Some(
            full.invariant_factors().iter().map(|d| d.to_string()).collect(),
        ),
        transpose: Some(transpose.to_string()),
        ..ResultBody::default()
    };
    Ok(Report {
        command: "analyze".into(),
        input,
        result,
        warnings,
        exit_status: EXIT_OK,
    })
}

fn cmd_zeta(
    polynomial: &Option<String>,
    matrix: &Option<String>,
    group_spec: &str,
    reduced: bool,
    method: Method,
    bound_flag: Option<u64>,
) -> UsageResult<Report> {
    let bound = enumeration_bound(bound_flag)?;
    let (p, mut warnings, mut input) = load_polynomial(polynomial, matrix)?;
    input.group = Some(group_spec.to_string());
    let ambient = Ambient::new(&p, AmbientTag::Source);
    let group = resolve_group(&ambient, group_spec)?;
    let pair = OrbifoldPair::new(group).map_err(|e| e.to_string())?;

    let (zeta, exit_status) = match method {
        Method::Formula => (pair.orbifold_zeta_formula().map_err(|e| e.to_string())?, EXIT_OK),
        Method::Definition => {
            (pair.orbifold_zeta_definition(bound).map_err(|e| e.to_string())?, EXIT_OK)
        }
        Method::Both => {
            let formula = pair.orbifold_zeta_formula().map_err(|e| e.to_string())?;
            let definition = pair.orbifold_zeta_definition(bound).map_err(|e| e.to_string())?;
            if formula == definition {
                (formula, EXIT_OK)
            } else {
                warnings.push("computation routes disagree".into());
                (formula, EXIT_VERIFICATION)
            }
        }
    };

    let mut result = ResultBody {
        polynomial: Some(p.to_string()),
        det: Some(p.determinant().to_string()),
        weights: Some(p.weights().vector().iter().map(|q| q.to_string()).collect()),
        invariant_factors: Some(
            ambient.full_group().invariant_factors().iter().map(|d| d.to_string()).collect(),
        ),
        group: Some(group_json(pair.group())),
        zeta: Some(terms_json(&zeta)),
        zeta_display: Some(zeta.to_binomial_form().to_string()),
        euler_characteristic: Some(zeta.degree().to_string()),
        ..ResultBody::default()
    };
    if reduced {
        let route = if method == Method::Definition { Route::Definition } else { Route::Formula };
        let reduced_zeta = pair.reduced_orbifold_zeta(route, bound).map_err(|e| e.to_string())?;
        result.reduced_zeta = Some(terms_json(&reduced_zeta));
        result.reduced_zeta_display = Some(reduced_zeta.to_binomial_form().to_string());
    }
    if exit_status == EXIT_VERIFICATION {
        // Never show a value whose two routes differ.
        result.zeta = None;
        result.zeta_display = None;
        result.reduced_zeta = None;
        result.reduced_zeta_display = None;
        result.euler_characteristic = None;
    }
    Ok(Report { command: "zeta".into(), input, result, warnings, exit_status })
}

fn cmd_dual(
    polynomial: &Option<String>,
    matrix: &Option<String>,
    group_spec: &str,
    bound_flag: Option<u64>,
) -> UsageResult<Report> {
    let bound = enumeration_bound(bound_flag)?;
    let (p, mut warnings, mut input) = load_polynomial(polynomial, matrix)?;
    input.group = Some(group_spec.to_string());
    let ambient = Ambient::new(&p, AmbientTag::Source);
    let group = resolve_group(&ambient, group_spec)?;
    let pair = OrbifoldPair::new(group).map_err(|e| e.to_string())?;
    let report = verify_duality(&pair, bound).map_err(|e| e.to_string())?;
    if report.route_equivalence == RouteEquivalence::SkippedBound {
        warnings.push("route-equivalence check skipped: group order exceeds bound".into());
    }

    let result = ResultBody {
        polynomial: Some(p.to_string()),
        group: Some(group_json(pair.group())),
        dual_polynomial: Some(report.dual.polynomial().to_string()),
        dual_group: Some(group_json(report.dual.group())),
        reduced_zeta: Some(terms_json(&report.pair_reduced_zeta)),
        reduced_zeta_display: Some(report.pair_reduced_zeta.to_binomial_form().to_string()),
        dual_reduced_zeta_display: Some(report.dual_reduced_zeta.to_binomial_form().to_string()),
        verdicts: Some(verdicts_json(&report)),
        ..ResultBody::default()
    };
    let exit_status = if report.all_pass() { EXIT_OK } else { EXIT_VERIFICATION };
    Ok(Report { command: "dual".into(), input, result, warnings, exit_status })
}

fn cmd_verify(
    polynomial: &Option<String>,
    matrix: &Option<String>,
    group_spec: &str,
    all_subgroups: bool,
    bound_flag: Option<u64>,
    params: CorpusParams,
) -> UsageResult<Report> {
    let bound = enumeration_bound(bound_flag)?;
    let mut input = InputEcho::default();
    let mut warnings = Vec::new();

    // (name, polynomial) rows in canonical order.
    let targets: Vec<(String, InvertiblePolynomial)> =
        if polynomial.is_some() || matrix.is_some() {
            let (p, w, echo) = load_polynomial(polynomial, matrix)?;
            input = echo;
            warnings.extend(w);
            vec![(p.to_string(), p)]
        } else {
            generate(&params)
                .into_iter()
                .map(|entry| (entry.name, entry.polynomial))
                .collect()
        };
    if targets.is_empty() {
        return Err("empty corpus selection: no polynomial matches the given bounds".into());
    }

    let mut rows = Vec::new();
    let mut summary = SummaryJson { pairs: 0, pass: 0, fail: 0, skipped: 0 };
    for (name, p) in &targets {
        let ambient = Ambient::new(p, AmbientTag::Source);
        let groups: Vec<Subgroup> = if all_subgroups {
            match ambient.all_subgroups(bound) {
                Ok(subs) => subs,
                Err(Error::EnumerationBound { .. }) => {
                    rows.push(VerifyRowJson {
                        entry: name.clone(),
                        group_order: "-".into(),
                        status: "skipped (bound)".into(),
                    });
                    summary.skipped += 1;
                    continue;
                }
                Err(e) => return Err(e.to_string()),
            }
        } else {
            vec![resolve_group(&ambient, group_spec)?]
        };
        for h in groups {
            let order = h.order().to_string();
            let pair = OrbifoldPair::new(h).map_err(|e| e.to_string())?;
            let report = verify_duality(&pair, bound).map_err(|e| e.to_string())?;
            summary.pairs += 1;
            let status = if !report.all_pass() {
                summary.fail += 1;
                let failed: Vec<&str> = report
                    .verdicts()
                    .iter()
                    .filter(|(_, v)| v.starts_with("FAIL"))
                    .map(|(k, _)| *k)
                    .collect();
                format!("FAIL ({})", failed.join(", "))
            } else if report.route_equivalence == RouteEquivalence::SkippedBound {
                summary.pass += 1;
                "pass (route check skipped: bound)".into()
            } else {
                summary.pass += 1;
                "pass".into()
            };
            rows.push(VerifyRowJson { entry: name.clone(), group_order: order, status });
        }
    }
    if summary.skipped > 0 {
        warnings.push(format!(
            "{} entr{} skipped: symmetry group order exceeds bound {bound}",
            summary.skipped,
            if summary.skipped == 1 { "y" } else { "ies" }
        ));
    }
    let exit_status = if summary.fail > 0 { EXIT_VERIFICATION } else { EXIT_OK };
    let result = ResultBody { rows: Some(rows), summary: Some(summary), ..ResultBody::default() };
    Ok(Report { command: "verify".into(), input, result, warnings, exit_status })
}

fn cmd_corpus(params: CorpusParams) -> UsageResult<Report> {
    if params.max_vars == 0 || params.max_exponent == 0 || params.max_det == 0 {
        return Err("corpus bounds must be positive".into());
    }
    let entries: Vec<CorpusEntryJson> = generate(&params)
        .into_iter()
        .map(|entry| CorpusEntryJson {
            name: entry.name,
            det: entry.polynomial.determinant().to_string(),
            polynomial: entry.polynomial.to_string(),
        })
        .collect();
    let result = ResultBody { entries: Some(entries), ..ResultBody::default() };
    Ok(Report {
        command: "corpus".into(),
        input: InputEcho::default(),
        result,
        warnings: Vec::new(),
        exit_status: EXIT_OK,
    })
}

/// Human-readable rendering; line order is fixed so output is byte-stable.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let r = &report.result;
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    if let Some(p) = &r.polynomial {
        line(format!("polynomial: {p}"));
    }
    if let Some(rows) = &r.exponent_matrix {
        line("exponent matrix:".into());
        for row in rows {
            line(format!("  [{}]", row.join(", ")));
        }
    }
    if let Some(d) = &r.det {
        line(format!("det E: {d}"));
    }
    if let Some(w) = &r.weights {
        line(format!("weights: ({})", w.join(", ")));
    }
    if let Some(g0) = &r.grading_element {
        line(format!("grading element g0: {g0}"));
    }
    if let Some(factors) = &r.invariant_factors {
        let shape = if factors.is_empty() {
            "trivial".to_string()
        } else {
            factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
        };
        line(format!("symmetry group G_f: {shape}"));
    }
    if let Some(t) = &r.transpose {
        line(format!("transpose polynomial: {t}"));
    }
    if let Some(g) = &r.group {
        let generators =
            if g.generators.is_empty() { "none".to_string() } else { g.generators.join(", ") };
        line(format!("group: order {} with generators {generators}", g.order));
    }
    let term_list = |terms: &[TermJson]| {
        terms
            .iter()
            .map(|t| format!("(m={}, c={}, s={})", t.m, t.c, t.s))
            .collect::<Vec<_>>()
            .join(", ")
    };
    if let Some(z) = &r.zeta_display {
        line(format!("orbifold zeta: {z}"));
        if let Some(terms) = &r.zeta {
            line(format!("  factors: {}", term_list(terms)));
        }
        if let Some(chi) = &r.euler_characteristic {
            line(format!("orbifold Euler characteristic: {chi}"));
        }
    }
    if let Some(z) = &r.reduced_zeta_display {
        line(format!("reduced orbifold zeta: {z}"));
        if let Some(terms) = &r.reduced_zeta {
            line(format!("  factors: {}", term_list(terms)));
        }
    }
    if let Some(p) = &r.dual_polynomial {
        line(format!("dual polynomial: {p}"));
    }
    if let Some(g) = &r.dual_group {
        let generators =
            if g.generators.is_empty() { "none".to_string() } else { g.generators.join(", ") };
        line(format!("dual group: order {} with generators {generators}", g.order));
    }
    if let Some(z) = &r.dual_reduced_zeta_display {
        line(format!("dual reduced orbifold zeta: {z}"));
    }
    if let Some(v) = &r.verdicts {
        line("verdicts:".into());
        line(format!("  mainTheorem: {}", v.main_theorem));
        line(format!("  lemmaSL: {}", v.lemma_sl));
        line(format!("  orderProduct: {}", v.order_product));
        line(format!("  blmsIsotropy: {}", v.blms_isotropy));
        line(format!("  ellSwap: {}", v.ell_swap));
        line(format!("  signIdentity: {}", v.sign_identity));
        line(format!("  mI0equalsKtilde: {}", v.m_i0_equals_k_tilde));
        line(format!("  routeEquivalence: {}", v.route_equivalence));
    }
    if let Some(rows) = &r.rows {
        for row in rows {
            line(format!("{} |G|={}: {}", row.entry, row.group_order, row.status));
        }
    }
    if let Some(s) = &r.summary {
        line(format!(
            "summary: {} pair{} verified — {} pass, {} fail, {} skipped",
            s.pairs,
            if s.pairs == 1 { "" } else { "s" },
            s.pass,
            s.fail,
            s.skipped
        ));
    }
    if let Some(entries) = &r.entries {
        for e in entries {
            line(format!("{}: {} (det {})", e.name, e.polynomial, e.det));
        }
        line(format!("{} corpus entries", entries.len()));
    }
    for w in &report.warnings {
        line(format!("warning: {w}"));
    }
    out
}
