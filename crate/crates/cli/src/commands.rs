//! Subcommand implementations. Each returns a JSON result, a text rendering
//! and an exit status.

use std::collections::BTreeSet;

use kmhecke::{
    catalog, infinite_family, linalg, verify, BigRational, Character, Field, HeckeAlgebra, IntegralPart, KacMoodyMatrix,
    KatoStatus, KatoVerdict, KatoWitness, LowerSet, ModuleVector, ParameterSet, PrincipalError, PrincipalSeries, Quadratic,
    RootDatum, ScalarError, TauAnalysis, TauContext, TitsCone,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Bounds, DatumSpec, JobConfig, ValueList};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Roots,
    AnalyzeTau,
    Kato,
    WeightSpace,
    GenWeightSpace,
    Ord,
    VerifyIdentities,
    ExampleLemma37 { parity_variant: bool },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Roots => "roots",
            Command::AnalyzeTau => "analyze-tau",
            Command::Kato => "kato",
            Command::WeightSpace => "weight-space",
            Command::GenWeightSpace => "gen-weight-space",
            Command::Ord => "ord",
            Command::VerifyIdentities => "verify-identities",
            Command::ExampleLemma37 { .. } => "example-lemma37",
        }
    }

    pub fn needs_config(&self) -> bool {
        !matches!(self, Command::VerifyIdentities | Command::ExampleLemma37 { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Irreducible,
    Reducible,
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub seed: u64,
    pub bound_coroot: Option<i64>,
    pub bound_length: Option<usize>,
    pub expect: Option<Expect>,
}

/// The report envelope and the process exit status.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub exit: i32,
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    field: &'a str,
    seed: u64,
    bounds: Bounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    expect: Option<Expect>,
    result: Value,
}

struct Body {
    result: Value,
    lines: Vec<String>,
    exit: i32,
}

impl Body {
    fn ok(result: Value, lines: Vec<String>) -> Self {
        Self { result, lines, exit: 0 }
    }
}

pub fn effective_bounds(cfg: Option<&JobConfig>, command: Command, opts: &Options) -> Bounds {
    let mut b = cfg.map(|c| c.bounds).unwrap_or_default();
    if matches!(command, Command::ExampleLemma37 { .. }) {
        b.coroot_height = 40;
    }
    if let Some(c) = opts.bound_coroot {
        b.coroot_height = c;
    }
    if let Some(l) = opts.bound_length {
        b.weyl_length = l;
    }
    b
}

pub fn run(command: Command, cfg: Option<&JobConfig>, opts: &Options) -> Result<Outcome, CliError> {
    let bounds = effective_bounds(cfg, command, opts);
    bounds.validate()?;
    let (field, body) = match (command, cfg) {
        (Command::VerifyIdentities, _) => ("rational", verify_identities(opts.seed)),
        (Command::ExampleLemma37 { parity_variant }, _) => ("rational", odd_pair_example(parity_variant, bounds.coroot_height)?),
        (_, None) => return Err(CliError::Config(format!("{} needs --config", command.name()))),
        (_, Some(cfg)) => {
            if needs_extension(cfg)? {
                ("quadratic", Job::<Quadratic>::new(cfg, bounds)?.dispatch(command, opts)?)
            } else {
                ("rational", Job::<BigRational>::new(cfg, bounds)?.dispatch(command, opts)?)
            }
        }
    };
    let envelope = Envelope {
        tool: "kmhecke",
        version: env!("CARGO_PKG_VERSION"),
        command: command.name(),
        field,
        seed: opts.seed,
        bounds,
        expect: opts.expect,
        result: body.result,
    };
    let report = serde_json::to_value(&envelope).expect("report serializes");
    let mut text = format!("kmhecke {} {} (field {field})\n", env!("CARGO_PKG_VERSION"), command.name());
    for l in &body.lines {
        text.push_str(l);
        text.push('\n');
    }
    Ok(Outcome { report, text, exit: body.exit })
}

/// Rationals unless some scalar or `sqrt(q)` needs a quadratic extension.
/// Two different extensions cannot be mixed.
fn needs_extension(cfg: &JobConfig) -> Result<bool, CliError> {
    let mut radicands = BTreeSet::new();
    for s in cfg.scalars() {
        if let Some(d) = Quadratic::parse(s)?.radicand() {
            radicands.insert(d);
        }
    }
    if let Some(q) = cfg.parameters.q {
        if let Some(d) = Quadratic::sqrt_of_int(q)?.radicand() {
            radicands.insert(d);
        }
    }
    let mut it = radicands.iter();
    match (it.next(), it.next()) {
        (Some(&a), Some(&b)) => Err(ScalarError::MixedExtension(a, b).into()),
        (first, _) => Ok(first.is_some()),
    }
}

pub fn build_datum(spec: &DatumSpec) -> Result<RootDatum, CliError> {
    match (&spec.catalog, &spec.matrix) {
        (Some(name), None) => {
            if spec.simple_roots.is_some() || spec.simple_coroots.is_some() {
                return Err(CliError::Config("datum.catalog cannot be combined with explicit simple roots".into()));
            }
            catalog::by_name(name).ok_or_else(|| {
                CliError::Config(format!(
                    "unknown catalog datum {name:?}; known: A1, A1-half, A2, B2, G2, affine-A1, rank3, odd-pair, odd-pair-parity"
                ))
            })
        }
        (None, Some(rows)) => {
            let matrix = KacMoodyMatrix::new(rows.clone())?;
            match (&spec.simple_roots, &spec.simple_coroots) {
                (Some(r), Some(c)) => Ok(RootDatum::new(matrix, r.clone(), c.clone())?),
                (None, None) => Ok(RootDatum::minimal_realization(matrix)?),
                _ => Err(CliError::Config("give both datum.simple_roots and datum.simple_coroots, or neither".into())),
            }
        }
        (Some(_), Some(_)) => Err(CliError::Config("give datum.catalog or datum.matrix, not both".into())),
        (None, None) => Err(CliError::Config("datum needs catalog or matrix".into())),
    }
}

fn parse_all<F: Field>(values: &[String]) -> Result<Vec<F>, CliError> {
    values.iter().map(|s| F::parse(s).map_err(CliError::from)).collect()
}

fn character<F: Field>(list: &ValueList, rank: usize, what: &str) -> Result<Character<F>, CliError> {
    let c = Character::new(parse_all(&list.values)?).map_err(|e| CliError::Config(format!("{what}: {e}")))?;
    c.ensure_rank(rank).map_err(|e| CliError::Config(format!("{what}: {e}")))?;
    Ok(c)
}

fn strings<F: Field>(values: &[F]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

struct Job<'c, F> {
    cfg: &'c JobConfig,
    bounds: Bounds,
    algebra: HeckeAlgebra<F>,
}

impl<'c, F: Field> Job<'c, F> {
    fn new(cfg: &'c JobConfig, bounds: Bounds) -> Result<Self, CliError> {
        let datum = build_datum(&cfg.datum)?;
        let k = datum.num_simple();
        let p = &cfg.parameters;
        let params = match (p.q, &p.sigma) {
            (Some(q), None) if p.sigma_prime.is_none() => ParameterSet::from_q(k, q)?,
            (None, Some(sigma)) => {
                let sigma: Vec<F> = parse_all(sigma)?;
                let sigma_prime = match &p.sigma_prime {
                    Some(sp) => parse_all(sp)?,
                    None => sigma.clone(),
                };
                ParameterSet::new(sigma, sigma_prime)
            }
            (None, None) => return Err(CliError::Config("parameters need q or sigma".into())),
            _ => return Err(CliError::Config("give parameters.q or parameters.sigma, not both".into())),
        };
        let algebra = HeckeAlgebra::new(datum, params)?;
        Ok(Self { cfg, bounds, algebra })
    }

    fn dispatch(&self, command: Command, opts: &Options) -> Result<Body, CliError> {
        match command {
            Command::Validate => self.validate(),
            Command::Roots => self.roots(),
            Command::AnalyzeTau => self.analyze(opts.expect),
            Command::Kato => self.kato(opts.expect),
            Command::WeightSpace => self.weight_space(false),
            Command::GenWeightSpace => self.weight_space(true),
            Command::Ord => self.ord(),
            Command::VerifyIdentities | Command::ExampleLemma37 { .. } => unreachable!("handled without a datum"),
        }
    }

    fn lattice_rank(&self) -> usize {
        self.algebra.lattice_rank()
    }

    fn tau(&self) -> Result<Character<F>, CliError> {
        let list = self.cfg.character.as_ref().ok_or_else(|| CliError::Config("this command needs [character]".into()))?;
        character(list, self.lattice_rank(), "character")
    }

    fn vector(&self) -> Result<ModuleVector<F>, CliError> {
        let spec = self.cfg.vector.as_ref().ok_or_else(|| CliError::Config("this command needs [vector]".into()))?;
        let group = self.algebra.group();
        let k = self.algebra.num_simple();
        let mut x = ModuleVector::zero();
        for t in &spec.terms {
            if let Some(&bad) = t.word.iter().find(|&&i| i == 0 || i > k) {
                return Err(CliError::Config(format!("vector word {:?}: generator {bad} is not in 1..={k}", t.word)));
            }
            let word: Vec<usize> = t.word.iter().map(|i| i - 1).collect();
            x = &x + &ModuleVector::basis(group.from_word(&word)).scale(&F::parse(&t.scalar)?);
        }
        Ok(x)
    }

    fn validate(&self) -> Result<Body, CliError> {
        let datum = self.algebra.datum();
        let k = datum.num_simple();
        let rows = datum.matrix().rows().to_vec();
        let det = linalg::integer_determinant(&rows);
        let params = self.algebra.params();
        let sigma: Vec<F> = (0..k).map(|i| params.sigma(i).clone()).collect();
        let sigma_prime: Vec<F> = (0..k).map(|i| params.sigma_prime(i).clone()).collect();
        let tau = self.cfg.character.as_ref().map(|_| self.tau()).transpose()?;
        if self.cfg.vector.is_some() {
            self.vector()?;
        }
        let longest = self.algebra.group().longest_length(self.bounds.weyl_length);
        let mut lines = vec![
            format!("datum OK: {k} simple reflections, lattice rank {}", datum.lattice_rank()),
            format!("matrix {rows:?}, determinant {det}"),
            format!("sigma {:?}, sigma' {:?}", strings(&sigma), strings(&sigma_prime)),
        ];
        if let Some(l) = longest {
            lines.push(format!("finite Weyl group, longest element of length {l}"));
        }
        if let Some(t) = &tau {
            lines.push(format!("character {:?}", strings(t.values())));
        }
        let result = json!({
            "matrix": rows,
            "determinant": det.to_string(),
            "num_simple": k,
            "lattice_rank": datum.lattice_rank(),
            "simple_roots": (0..k).map(|j| datum.simple_root(j).to_vec()).collect::<Vec<_>>(),
            "simple_coroots": (0..k).map(|i| datum.simple_coroot(i).to_vec()).collect::<Vec<_>>(),
            "sigma": strings(&sigma),
            "sigma_prime": strings(&sigma_prime),
            "character": tau.as_ref().map(|t| strings(t.values())),
            "finite_longest_length": longest,
        });
        Ok(Body::ok(result, lines))
    }

    fn roots(&self) -> Result<Body, CliError> {
        let datum = self.algebra.datum();
        let group = self.algebra.group();
        let tau = self.cfg.character.as_ref().map(|_| self.tau()).transpose()?;
        let ctx = tau.map(|t| TauContext::new(&self.algebra, t)).transpose()?;
        let mut rows = Vec::new();
        let mut lines = vec![format!("positive real coroots of height <= {}", self.bounds.coroot_height)];
        for beta in datum.enumerate_coroots(self.bounds.coroot_height).iter().filter(|b| b.is_positive()) {
            let r = group.reflection_from_coroot(beta).map_err(|e| CliError::Invariant(e.to_string()))?;
            let y = datum.coroot_to_y(beta);
            let mut row = json!({
                "coroot": beta,
                "height": beta.height(),
                "y": y,
                "reflection": r.element.word_one_based(),
            });
            let mut line = format!("{beta}  ht {}  Y {y:?}  r = {}", beta.height(), r.element);
            if let Some(ctx) = &ctx {
                let value = ctx.tau_of_coroot(beta);
                let in_phi = ctx.in_phi(beta);
                row["tau"] = json!(value.to_string());
                row["in_phi_tau"] = json!(in_phi);
                line.push_str(&format!("  tau {value}{}", if in_phi { "  in Phi_(tau)" } else { "" }));
            }
            rows.push(row);
            lines.push(line);
        }
        lines.push(format!("{} coroots", rows.len()));
        Ok(Body::ok(json!({ "count": rows.len(), "coroots": rows }), lines))
    }

    fn analysis(&self) -> Result<(TauContext<'_, F>, TauAnalysis<F>), CliError> {
        let ctx = TauContext::new(&self.algebra, self.tau()?)?;
        let an = TauAnalysis::compute(&ctx, self.bounds.coroot_height, self.bounds.weyl_length)?;
        Ok((ctx, an))
    }

    fn analyze(&self, expect: Option<Expect>) -> Result<Body, CliError> {
        let (ctx, an) = self.analysis()?;
        let report = an.report();
        let semidirect = an.semidirect_check(&ctx);
        let verdict = an.kato();
        let mut lines = vec![
            format!("Phi_(tau): {} coroots, Sigma_tau {:?}", report.phi_tau.len(), report.sigma_tau.iter().map(ToString::to_string).collect::<Vec<_>>()),
            format!("S_tau words {:?}", report.s_tau_words),
            format!("S_tau matrix {:?}", report.s_tau_matrix),
            format!(
                "ball of length {}: |W_tau| = {}, |W_(tau)| = {}, |R_tau| = {}",
                an.length_bound, report.w_tau_ball_size, report.w_paren_tau_ball_size, report.r_tau_ball.len()
            ),
            format!("semidirect decomposition on the ball: {}", if semidirect { "ok" } else { "FAILED" }),
        ];
        if !report.sigma_certificate.uncertified.is_empty() {
            lines.push(format!(
                "warning: {} coroots could not be certified non-minimal within the bound",
                report.sigma_certificate.uncertified.len()
            ));
        }
        lines.extend(verdict_lines(&verdict));
        let exit = if semidirect { expect_exit(expect, &verdict) } else { 3 };
        let mut result = serde_json::to_value(&report).expect("report serializes");
        result["semidirect_check"] = json!(semidirect);
        Ok(Body { result, lines, exit })
    }

    fn kato(&self, expect: Option<Expect>) -> Result<Body, CliError> {
        let (_, an) = self.analysis()?;
        let verdict = an.kato();
        let exit = expect_exit(expect, &verdict);
        let result = json!({ "character": strings(an.character.values()), "uc": an.uc, "verdict": verdict });
        Ok(Body { result, lines: verdict_lines(&verdict), exit })
    }

    fn weight_space(&self, generalized: bool) -> Result<Body, CliError> {
        let tau = self.tau()?;
        let eigen = match &self.cfg.weight {
            Some(w) => character(w, self.lattice_rank(), "weight")?,
            None => tau.clone(),
        };
        let series = PrincipalSeries::new(&self.algebra, tau.clone()).map_err(CliError::principal("principal series"))?;
        let dom = LowerSet::ball(self.algebra.group(), self.bounds.ball);
        let basis = if generalized {
            series.generalized_weight_space(&eigen, &dom, self.bounds.n_cap)
        } else {
            series.weight_space(&eigen, &dom)
        }
        .map_err(CliError::principal("weight space"))?;
        let kind = if generalized { "generalized weight space" } else { "weight space" };
        let mut lines = vec![format!(
            "{kind} for {:?} on the ball of length {} ({} elements): dimension {}",
            strings(eigen.values()),
            self.bounds.ball,
            dom.len(),
            basis.len()
        )];
        lines.extend(basis.iter().map(|v| format!("  {v}")));
        let mut result = json!({
            "eigencharacter": strings(eigen.values()),
            "domain_size": dom.len(),
            "dimension": basis.len(),
            "basis": basis,
        });
        if !generalized && eigen == tau {
            let ctx = TauContext::new(&self.algebra, tau)?;
            let r_tau = TauAnalysis::compute(&ctx, self.bounds.coroot_height, self.bounds.ball)?.r_tau_ball.len();
            result["r_tau_ball_size"] = json!(r_tau);
            lines.push(format!("|R_tau| on the ball: {r_tau}"));
        }
        Ok(Body::ok(result, lines))
    }

    fn ord(&self) -> Result<Body, CliError> {
        let x = self.vector()?;
        let tau = self.tau()?;
        let series = PrincipalSeries::new(&self.algebra, tau.clone()).map_err(CliError::principal("principal series"))?;
        let ord = match series.ord(&x) {
            Ok(n) => n,
            Err(PrincipalError::NotInGenWeightSpace(cap)) => {
                let lines = vec![format!("x = {x} is not in the generalized tau-weight space (checked {cap} steps)")];
                return Ok(Body { result: json!({ "vector": x, "ord": Value::Null, "steps": cap }), lines, exit: 1 });
            }
            Err(e) => return Err(CliError::principal(format!("ord of {x}"))(e)),
        };
        let lambda = series.dominant_probe(self.bounds.probe_coeff).map_err(CliError::principal("probe"))?;
        let cone = match self.algebra.datum().tits_cone(&lambda, Some(self.bounds.dominance_cap)) {
            TitsCone::InPositiveCone(w) => json!({ "positive": w.iter().map(|i| i + 1).collect::<Vec<_>>() }),
            TitsCone::InNegativeCone(w) => json!({ "negative": w.iter().map(|i| i + 1).collect::<Vec<_>>() }),
            TitsCone::Undetermined => json!("undetermined"),
        };
        let probe = series.ord_probe(&x, &lambda).map_err(CliError::principal("ord probe"))?;
        let ctx = TauContext::new(&self.algebra, tau)?;
        let itg = IntegralPart::new(&ctx).map_err(CliError::principal("integral part"))?;
        let stats = itg.stats(&x);
        let tau_length = stats.as_ref().ok().map(|s| s.tau_length);
        let mut lines = vec![format!("x = {x}"), format!("ord_tau(x) = {ord}"), format!("probe lambda {lambda:?}: ord = {probe}")];
        match tau_length {
            Some(Some(l)) => lines.push(format!("l_tau(x) = {l}, l_tau + 1 {} ord", if l + 1 == ord { "=" } else { "!=" })),
            Some(None) => lines.push("x = 0".into()),
            None => lines.push(format!("l_tau(x) unavailable: {}", stats.err().map(|e| e.to_string()).unwrap_or_default())),
        }
        let result = json!({
            "vector": x,
            "ord": ord,
            "probe": { "lambda": lambda, "tits_cone": cone, "ord": probe },
            "tau_length": tau_length.flatten(),
        });
        Ok(Body::ok(result, lines))
    }
}

fn verdict_lines(v: &KatoVerdict) -> Vec<String> {
    let mut lines = vec![format!("verdict: {:?} (coroot bound {}, length bound {})", v.status, v.coroot_bound, v.length_bound)];
    match &v.witness {
        Some(KatoWitness::ZetaNumeratorVanishes(b)) => lines.push(format!("witness: tau(zeta^num) = 0 at coroot {b}")),
        Some(KatoWitness::StabilizerExcess(w)) => lines.push(format!("witness: {w} lies in W_tau but not in W_(tau)")),
        None => {}
    }
    if let Some(l) = v.finite_longest_length {
        lines.push(format!("Weyl group is finite (longest length {l}); the verdict is exact"));
    }
    lines
}

fn expect_exit(expect: Option<Expect>, v: &KatoVerdict) -> i32 {
    let wanted = match expect {
        None => return 0,
        Some(Expect::Irreducible) => KatoStatus::Irreducible,
        Some(Expect::Reducible) => KatoStatus::Reducible,
    };
    i32::from(v.status != wanted)
}

fn verify_identities(seed: u64) -> Body {
    let groups = verify::full_suite(seed);
    let mut lines = Vec::new();
    let (mut cases, mut failed) = (0, 0);
    for (name, outcomes) in &groups {
        for o in outcomes {
            cases += o.cases;
            failed += o.failed;
            let mark = if o.passed() { "ok  " } else { "FAIL" };
            lines.push(format!("{mark} {name}: {} ({} cases, {} failed)", o.name, o.cases, o.failed));
            lines.extend(o.examples.iter().map(|e| format!("       {e}")));
        }
    }
    lines.push(format!("{cases} cases, {failed} failed"));
    let result = json!({ "cases": cases, "failed": failed, "groups": groups });
    Body { result, lines, exit: if failed == 0 { 0 } else { 3 } }
}

fn odd_pair_example(parity_variant: bool, coroot_bound: i64) -> Result<Body, CliError> {
    let datum = if parity_variant { catalog::odd_pair_parity() } else { catalog::odd_pair() };
    let report = infinite_family::check(datum, 4, coroot_bound)?;
    let mut lines = vec![
        format!("matrix {:?}, determinant {}", report.matrix, report.determinant),
        format!(
            "coroot bound {}: {} coroots, {} in Phi_(tau)+",
            report.coroot_bound, report.enumerated_coroots, report.enumerated_phi_tau_plus
        ),
    ];
    for c in &report.checks {
        lines.push(format!(
            "w = {:?}: coroot {:?}, {} inversions, exact {}, bounded {}",
            c.conjugator, c.coroot, c.inversions, c.exact, c.bounded
        ));
    }
    lines.push(report.summary());
    let exit = if report.all_passed() { 0 } else { 1 };
    let mut result = serde_json::to_value(&report).expect("report serializes");
    result["summary"] = json!(report.summary());
    Ok(Body { result, lines, exit })
}
