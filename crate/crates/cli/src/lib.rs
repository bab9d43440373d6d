//! Scenario files for `crossed-forge`: parsing, running and report emission.
//!
//! A scenario is a JSON object with keys `system`, `checks` and optionally
//! `name` and `output`. Reports are JSON with sorted keys, or plain text.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crossed_core::analysis::{self, CommutantConstraints};
use crossed_core::catalog::{self, CatalogEntry};
use crossed_core::ideal;
use crossed_core::{
    AlgebraError, AlphaSpec, CrossedElem, CrossedSystem, Group, GroupElem, Ring, RingAutomorphism, RingElem, SigmaKernel,
    SigmaSpec,
};

// ---- schema ---------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub system: SystemSpec,
    pub checks: Vec<CheckSpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

/// Either `{"catalog": name, ...params}` or an inline `{"ring", "group", "sigma", "alpha"}`.
#[derive(Clone, Debug, PartialEq)]
pub enum SystemSpec {
    Catalog { name: String, params: BTreeMap<String, Value> },
    Inline(InlineSystem),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineSystem {
    pub ring: RingSpec,
    /// `C4`, `S3`, `C2xC2` or `Z`.
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha: Vec<AlphaEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Modular { n: u64 },
    PolyQuotient { p: u64, modulus: Vec<u64> },
    Truncated { p: u64, m: usize },
    FiniteField { p: u64, degree: usize },
    Laurent,
    Multivariate { p: u64, vars: usize, degree: u32 },
    Functions { p: u64, points: usize },
    Matrix { n: usize, modulus: u64 },
}

/// Images of the algebra generators of `A`, either for a generator of a
/// cyclic (or infinite cyclic) group or per group element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SigmaJson {
    Generator(Vec<String>),
    Table(BTreeMap<String, Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaEntry {
    pub s: String,
    pub t: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CheckSpec {
    Verify,
    Center,
    Commutant,
    Maximal,
    Commutative,
    Ideal { generators: Vec<String> },
    Lift { ideal: Vec<String> },
    Descend { subgroup: Vec<String> },
    Obstruction { c: String, d: String, g: String },
    #[serde(rename = "theorem-suite")]
    Suite,
}

impl CheckSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            CheckSpec::Verify => "verify",
            CheckSpec::Center => "center",
            CheckSpec::Commutant => "commutant",
            CheckSpec::Maximal => "maximal",
            CheckSpec::Commutative => "commutative",
            CheckSpec::Ideal { .. } => "ideal",
            CheckSpec::Lift { .. } => "lift",
            CheckSpec::Descend { .. } => "descend",
            CheckSpec::Obstruction { .. } => "obstruction",
            CheckSpec::Suite => "theorem-suite",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: Format,
    /// Adds `elapsed_ms` per check; off by default so reports are reproducible.
    #[serde(default)]
    pub timings: bool,
}

impl Serialize for SystemSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            SystemSpec::Catalog { name, params } => {
                let mut map = Map::new();
                map.insert("catalog".into(), Value::String(name.clone()));
                for (k, v) in params {
                    map.insert(k.clone(), v.clone());
                }
                map.serialize(serializer)
            }
            SystemSpec::Inline(inline) => inline.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for SystemSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let mut map = Map::deserialize(deserializer)?;
        match map.remove("catalog") {
            Some(Value::String(name)) => Ok(SystemSpec::Catalog { name, params: map.into_iter().collect() }),
            Some(other) => Err(D::Error::custom(format!("catalog must be a string, got {other}"))),
            None => serde_json::from_value(Value::Object(map)).map(SystemSpec::Inline).map_err(D::Error::custom),
        }
    }
}

// ---- resolution -----------------------------------------------------------------

/// A parsed scenario with its system built and every literal resolved.
/// The system is assembled without validation; the `verify` check validates.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub definition: ScenarioSpec,
    pub system: Arc<CrossedSystem>,
    pub entry: Option<CatalogEntry>,
    pub checks: Vec<ResolvedCheck>,
}

#[derive(Clone, Debug)]
pub enum ResolvedCheck {
    Verify,
    Center,
    Commutant,
    Maximal,
    Commutative,
    Ideal(Vec<CrossedElem>),
    Lift(Vec<RingElem>),
    Descend(BTreeSet<GroupElem>),
    Obstruction(RingElem, RingElem, GroupElem),
    Suite,
}

fn param_text(v: &Value) -> anyhow::Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Array(items) => Ok(items.iter().map(param_text).collect::<anyhow::Result<Vec<_>>>()?.join(",")),
        other => bail!("unsupported parameter value {other}"),
    }
}

fn build_ring(definition: &RingSpec) -> crossed_core::Result<Arc<Ring>> {
    match definition {
        RingSpec::Modular { n } => Ring::modular(*n),
        RingSpec::PolyQuotient { p, modulus } => Ring::poly_quotient(*p, modulus.clone()),
        RingSpec::Truncated { p, m } => Ring::truncated_polynomial(*p, *m),
        RingSpec::FiniteField { p, degree } => Ring::finite_field(*p, *degree),
        RingSpec::Laurent => Ok(Ring::laurent_rational()),
        RingSpec::Multivariate { p, vars, degree } => Ring::truncated_multivariate(*p, *vars, *degree),
        RingSpec::Functions { p, points } => Ring::functions(*p, *points),
        RingSpec::Matrix { n, modulus } => Ring::matrix(*n, *modulus),
    }
}

fn build_inline(inline: &InlineSystem) -> anyhow::Result<Arc<CrossedSystem>> {
    let ring = build_ring(&inline.ring).context("system.ring")?;
    let group = if inline.group.trim() == "Z" { Group::integers() } else { catalog::parse_group(&inline.group).context("system.group")? };
    let automorphism = |images: &Vec<String>| {
        let refs: Vec<&str> = images.iter().map(String::as_str).collect();
        RingAutomorphism::parse(&ring, &refs)
    };
    let sigma = match &inline.sigma {
        None => SigmaSpec::Identity,
        Some(SigmaJson::Generator(images)) => SigmaSpec::Generator(automorphism(images).context("system.sigma.generator")?),
        Some(SigmaJson::Table(table)) => {
            let mut out = Vec::new();
            for (g, images) in table {
                let g = group.parse(g).with_context(|| format!("system.sigma.table key {g:?}"))?;
                out.push((g, automorphism(images).context("system.sigma.table")?));
            }
            SigmaSpec::Table(out)
        }
    };
    let alpha = if inline.alpha.is_empty() {
        AlphaSpec::Trivial
    } else {
        let mut out = Vec::new();
        for (i, entry) in inline.alpha.iter().enumerate() {
            let ctx = || format!("system.alpha[{i}]");
            out.push(((group.parse(&entry.s).with_context(ctx)?, group.parse(&entry.t).with_context(ctx)?), ring.parse(&entry.value).with_context(ctx)?));
        }
        AlphaSpec::Table(out)
    };
    Ok(CrossedSystem::assemble(ring, group, sigma, alpha)?)
}

fn resolve_check(sys: &Arc<CrossedSystem>, check: &CheckSpec) -> anyhow::Result<ResolvedCheck> {
    let ring = sys.ring();
    let group = sys.group();
    Ok(match check {
        CheckSpec::Verify => ResolvedCheck::Verify,
        CheckSpec::Center => ResolvedCheck::Center,
        CheckSpec::Commutant => ResolvedCheck::Commutant,
        CheckSpec::Maximal => ResolvedCheck::Maximal,
        CheckSpec::Commutative => ResolvedCheck::Commutative,
        CheckSpec::Suite => ResolvedCheck::Suite,
        CheckSpec::Ideal { generators } => {
            ResolvedCheck::Ideal(generators.iter().map(|g| CrossedElem::parse(sys, g)).collect::<Result<_, _>>()?)
        }
        CheckSpec::Lift { ideal } => ResolvedCheck::Lift(ideal.iter().map(|a| ring.parse(a)).collect::<Result<_, _>>()?),
        CheckSpec::Descend { subgroup } => {
            ResolvedCheck::Descend(subgroup.iter().map(|g| group.parse(g)).collect::<Result<_, _>>()?)
        }
        CheckSpec::Obstruction { c, d, g } => ResolvedCheck::Obstruction(ring.parse(c)?, ring.parse(d)?, group.parse(g)?),
    })
}

/// Parses and resolves a scenario. JSON syntax errors carry line and column.
pub fn parse_scenario(text: &str) -> anyhow::Result<Scenario> {
    let definition: ScenarioSpec = serde_json::from_str(text).map_err(|e| anyhow!("scenario: {e}"))?;
    resolve(definition)
}

pub fn resolve(definition: ScenarioSpec) -> anyhow::Result<Scenario> {
    let (system, entry) = match &definition.system {
        SystemSpec::Catalog { name, params } => {
            let mut text = BTreeMap::new();
            for (k, v) in params {
                text.insert(k.clone(), param_text(v).with_context(|| format!("system.{k}"))?);
            }
            let entry = catalog::build(name, &text).context("system")?;
            (entry.system.clone(), Some(entry))
        }
        SystemSpec::Inline(inline) => (build_inline(inline)?, None),
    };
    let checks = definition
        .checks
        .iter()
        .enumerate()
        .map(|(i, c)| resolve_check(&system, c).with_context(|| format!("checks[{i}] ({})", c.kind())))
        .collect::<anyhow::Result<_>>()?;
    Ok(Scenario { definition, system, entry, checks })
}

/// Canonical JSON for the scenario itself.
pub fn emit_scenario(scenario: &ScenarioSpec) -> String {
    serde_json::to_string_pretty(&serde_json::to_value(scenario).expect("scenario serializes")).expect("json")
}

// ---- running --------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub index: usize,
    pub kind: &'static str,
    /// `ok` when the check ran, `error` when it could not (size guard, hypothesis, ...).
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub system: Value,
    pub checks: Vec<CheckReport>,
}

fn group_json(g: &GroupElem) -> Value {
    let text = g.to_string();
    match text.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(text),
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

/// Element lists longer than this are summarized by their size only.
const LIST_LIMIT: usize = 64;

fn listing<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    let all = strings(items);
    if all.len() <= LIST_LIMIT {
        json!({"size": all.len(), "elements": all})
    } else {
        json!({"size": all.len()})
    }
}

/// Systems at most this large also get the definition-level brute force.
const BRUTE_FORCE_LIMIT: u64 = 729;

fn product_size(sys: &Arc<CrossedSystem>) -> Option<u64> {
    let (r, g) = (sys.ring().size()?, sys.group().order()?);
    r.checked_pow(u32::try_from(g).ok()?)
}

fn require_valid(sys: &Arc<CrossedSystem>) -> crossed_core::Result<()> {
    let report = sys.verify()?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(AlgebraError::Validation(report))
    }
}

fn hom_json(check: &ideal::HomomorphismCheck) -> Value {
    json!({"pairs_checked": check.pairs_checked, "all_pairs": check.all_pairs})
}

fn run_check(sys: &Arc<CrossedSystem>, check: &ResolvedCheck) -> crossed_core::Result<Value> {
    if !matches!(check, ResolvedCheck::Verify) {
        require_valid(sys)?;
    }
    Ok(match check {
        ResolvedCheck::Verify => {
            let report = sys.verify()?;
            let mut violations = Map::new();
            for c in report.violated() {
                violations.insert(c.label().into(), json!({"count": report.counts[&c], "witnesses": report.witnesses(c)}));
            }
            json!({"valid": report.is_valid(), "violations": violations})
        }
        ResolvedCheck::Center => {
            let center = analysis::center_compute(sys)?;
            let mut out = listing(&center);
            if product_size(sys).is_some_and(|n| n <= BRUTE_FORCE_LIMIT) {
                let brute: BTreeSet<_> = analysis::center_bruteforce(sys)?.into_iter().collect();
                out["matches_bruteforce"] = json!(brute == center.iter().cloned().collect::<BTreeSet<_>>());
            }
            out
        }
        ResolvedCheck::Commutant => match analysis::commutant_constraints(sys)? {
            CommutantConstraints::Finite(m) => {
                let degrees: Map<String, Value> = m.iter().map(|(s, r)| (s.to_string(), listing(r))).collect();
                json!({"degrees": degrees})
            }
            CommutantConstraints::Periodic { period, classes } => {
                let classes: Map<String, Value> = classes.iter().map(|(c, r)| (c.to_string(), listing(r))).collect();
                json!({"period": period, "classes": classes})
            }
            CommutantConstraints::KernelDichotomy(kernel) => {
                let kernel = match kernel {
                    SigmaKernel::Multiples(0) => json!("trivial"),
                    SigmaKernel::Multiples(m) => json!(format!("{m}Z")),
                    SigmaKernel::Finite(set) => json!(strings(&set)),
                };
                json!({"kernel": kernel, "rule": "R_s = A for s in the kernel of sigma, {0} otherwise"})
            }
        },
        ResolvedCheck::Maximal => {
            let v = analysis::is_maximal_commutative(sys)?;
            let witness = match &v.witness {
                Some((g, r)) => json!({"degree": group_json(g), "coefficient": r.to_string()}),
                None => Value::Null,
            };
            json!({"maximal_commutative": v.maximal, "witness": witness})
        }
        ResolvedCheck::Commutative => {
            let v = analysis::is_commutative(sys)?;
            let (condition, witness) = match &v.failure {
                Some((n, w)) => (json!(n), json!(w)),
                None => (Value::Null, Value::Null),
            };
            let mut out = json!({"commutative": v.commutative, "failed_condition": condition, "witness": witness});
            if product_size(sys).is_some_and(|n| n <= BRUTE_FORCE_LIMIT) {
                out["matches_bruteforce"] = json!(analysis::is_commutative_bruteforce(sys)? == v.commutative);
            }
            out
        }
        ResolvedCheck::Ideal(gens) => {
            let i = ideal::ideal_closure(sys, gens)?;
            let mut out = json!({
                "generators": strings(gens),
                "size": i.len(),
                "base_intersection": listing(i.intersect_base()),
            });
            if sys.ring().is_commutative() {
                out["commutant_intersection_size"] = json!(i.intersect_commutant()?.len());
                if let Some(start) = gens.iter().find(|g| !g.is_zero()) {
                    let r = ideal::replay_to_commutant(&i, start)?;
                    out["replay"] = json!({"rounds": r.rounds, "witness": r.witness.to_string(), "trail": strings(&r.trail)});
                }
            }
            out
        }
        ResolvedCheck::Lift(gens) => {
            let a = ideal::right_ideal_generated(sys.ring(), gens)?;
            let l = ideal::lift_ideal(sys, &a)?;
            json!({
                "ideal": listing(&a),
                "lifted_size": l.elements.len(),
                "right_ideal": l.right_ideal,
                "two_sided": l.two_sided,
                "fixed": l.fixed,
            })
        }
        ResolvedCheck::Descend(n) => {
            let d = ideal::quotient_descend(sys, n)?;
            let hom = d.verify_homomorphism()?;
            let mut out = json!({
                "quotient": d.target().describe(),
                "homomorphism": hom_json(&hom),
                "injective_on_base": d.injective_on_base()?,
            });
            if let Some(gen) = ideal::descent_generator(sys, n)? {
                let i = ideal::ideal_closure(sys, &[gen.clone()])?;
                out["ideal"] = json!({
                    "generator": gen.to_string(),
                    "size": i.len(),
                    "killed": d.kills(&i)?,
                    "meets_base": i.intersect_base().len() > 1,
                });
            }
            out
        }
        ResolvedCheck::Obstruction(c, d, g) => {
            let ob = ideal::zero_divisor_obstruction(sys, c, d, g)?;
            let hom = ob.descent.verify_homomorphism()?;
            json!({
                "annihilator": listing(&ob.annihilator),
                "quotient": ob.descent.target().describe(),
                "homomorphism": hom_json(&hom),
                "ideal_size": ob.ideal.len(),
                "base_intersection": listing(&ob.base_intersection),
                "misses_non_zero_divisors": ob.holds(),
                "non_zero_divisor": ob.non_zero_divisor.map(|a| a.to_string()),
            })
        }
        ResolvedCheck::Suite => serde_json::to_value(ideal::run_theorem_suite(sys)?).expect("report serializes"),
    })
}

fn system_json(scenario: &Scenario) -> Value {
    let mut out = json!({"description": scenario.system.describe()});
    if let Some(entry) = &scenario.entry {
        out["catalog"] = json!(entry.label());
        out["model"] = json!(entry.model);
    }
    out
}

pub fn run_scenario(scenario: &Scenario) -> Report {
    let timings = scenario.definition.output.timings;
    let checks = scenario
        .checks
        .iter()
        .enumerate()
        .map(|(index, check)| {
            let start = Instant::now();
            let outcome = run_check(&scenario.system, check);
            let elapsed_ms = timings.then(|| start.elapsed().as_millis());
            let kind = scenario.definition.checks[index].kind();
            match outcome {
                Ok(result) => CheckReport { index, kind, status: "ok", result: Some(result), error: None, elapsed_ms },
                Err(e) => CheckReport { index, kind, status: "error", result: None, error: Some(e.to_string()), elapsed_ms },
            }
        })
        .collect();
    Report { scenario: scenario.definition.name.clone(), system: system_json(scenario), checks }
}

fn text_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_value(v, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|x| x.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  -\n"));
                            text_value(item, indent + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// Pretty JSON with sorted keys, newline-terminated; or an indented text rendering.
pub fn emit_report(report: &Report, format: Format) -> String {
    let value = serde_json::to_value(report).expect("report serializes");
    match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("json") + "\n",
        Format::Text => {
            let mut out = String::new();
            if let Some(name) = &report.scenario {
                out.push_str(&format!("scenario: {name}\n"));
            }
            text_value(&value["system"], 0, &mut out);
            for check in &report.checks {
                out.push_str(&format!("\n[{}] {}: {}\n", check.index, check.kind, check.status));
                if let Some(result) = &check.result {
                    text_value(result, 1, &mut out);
                }
                if let Some(e) = &check.error {
                    out.push_str(&format!("  error: {e}\n"));
                }
                if let Some(ms) = check.elapsed_ms {
                    out.push_str(&format!("  elapsed_ms: {ms}\n"));
                }
            }
            out
        }
    }
}

/// `name(keys): description` for every catalog constructor.
pub fn catalog_listing() -> String {
    catalog::CONSTRUCTORS
        .iter()
        .map(|(name, keys, what)| format!("{name}({}): {what}\n", keys.join(", ")))
        .collect()
}
