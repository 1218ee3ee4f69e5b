use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use goodred_core::criterion::{self, FieldProfile, Status, Verdict};
use goodred_core::dvfclassify::{self, ExtensionDescriptor};
use goodred_core::examples::{self, ExamplesError, SearchParams};
use goodred_core::gf::{FieldError, GaloisField};
use goodred_core::groups::{
    self, FamilySpec, GeneratorInput, GroupError, GroupInput, GroupProfile, PermutationGroup,
    DEFAULT_ENUMERATION_CAP,
};
use goodred_core::kummer::{self, BranchDivisor, DivisorInput};
use goodred_core::localfield::{self, LaurentRepresentative};
use goodred_core::rational;
use goodred_core::vancycles::{self, TailConfiguration};

const SCHEMA_VERSION: u32 = 1;
const CAP_VAR: &str = "GOODRED_ENUM_CAP";
/// Flags that take no value; everything else in a config file becomes `--key value`.
const SWITCHES: &[&str] = &["json", "unramified-base"];

#[derive(Parser)]
#[command(name = "goodred", version, about = "Good-reduction criteria for three-point covers with cyclic p-Sylow groups")]
struct Cli {
    /// Emit a versioned JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// TOML file supplying defaults for flags not given on the command line.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Profile a permutation group or a structured family at a prime.
    AnalyzeGroup(GroupSource),
    /// Decide the good-reduction criterion.
    Decide(DecideArgs),
    /// List tail configurations satisfying the vanishing cycles formula.
    EnumerateTails(TailArgs),
    /// Reduce a tame Kummer branch divisor and test it for m-th powers.
    KummerCheck(KummerArgs),
    /// Artin-Schreier conductor of y^p - y = f.
    Conductor(ConductorArgs),
    /// Classify a Kummer extension of a discretely valued field.
    ClassifyDvf(DvfArgs),
    /// Search prime powers q giving PGL_m(q) examples.
    SearchExamples(SearchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Pgl,
    Semidirect,
}

#[derive(Args)]
struct GroupSource {
    /// JSON group {degree, generators, label?}.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["family", "gens"])]
    group: Option<PathBuf>,
    /// Generators in cycle notation separated by ';'.
    #[arg(long, requires = "degree", conflicts_with = "family")]
    gens: Option<String>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args)]
struct DecideArgs {
    #[command(flatten)]
    source: GroupSource,
    /// JSON group profile, instead of a group.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["group", "gens", "family"])]
    profile: Option<PathBuf>,
    /// Absolute ramification index e(K).
    #[arg(long, default_value_t = 1)]
    e: u64,
    /// Branching indices, comma separated.
    #[arg(long, value_delimiter = ',')]
    branching: Vec<u64>,
}

#[derive(Args)]
struct TailArgs {
    #[arg(long)]
    r: u64,
    #[arg(long)]
    mg: u64,
    #[arg(long)]
    prim: usize,
    #[arg(long, default_value_t = 0)]
    max_new: usize,
}

#[derive(Args)]
struct KummerArgs {
    /// JSON divisor {m, p, d, points: [{residue, exponent}]}.
    #[arg(long, value_name = "FILE", conflicts_with = "points")]
    divisor: Option<PathBuf>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    d: u32,
    /// Inline points "residue:exponent,..." with encoded residues.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// Number of branch points, to check the exponent sum identity.
    #[arg(long)]
    r: Option<u64>,
}

#[derive(Args)]
struct ConductorArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    field_deg: u32,
    /// Terms "exponent:coefficient,..." with exponents <= 0.
    #[arg(long, allow_hyphen_values = true)]
    terms: String,
}

#[derive(Args)]
struct DvfArgs {
    /// JSON descriptor; individual flags are used when absent.
    #[arg(long, value_name = "FILE")]
    descriptor: Option<PathBuf>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    e_k: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    v_a: Option<i64>,
    #[arg(long)]
    residue_pth_power: Option<bool>,
    #[arg(long)]
    contains_zeta: Option<bool>,
    #[arg(long)]
    uniformizer_index: Option<u64>,
    #[arg(long)]
    residue_separable: Option<bool>,
    /// Descriptor of the full Z/p^n extension whose degree-p layer is given.
    #[arg(long, value_name = "FILE")]
    full: Option<PathBuf>,
    /// The tower base is unramified over a field with algebraically closed residue field.
    #[arg(long)]
    unramified_base: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    m: u64,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    qmax: u64,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let argv = match merge_config(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((name, value, text)) => {
            if cli.json {
                let report = json!({ "schema_version": SCHEMA_VERSION, "command": name, "result": value });
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let capped = e.chain().any(|c| {
        matches!(c.downcast_ref::<GroupError>(), Some(GroupError::CapExceeded { .. }))
            || matches!(c.downcast_ref::<FieldError>(), Some(FieldError::TooLarge { .. }))
            || matches!(
                c.downcast_ref::<ExamplesError>(),
                Some(ExamplesError::Overflow { .. } | ExamplesError::Group(GroupError::CapExceeded { .. }))
            )
    });
    if capped {
        3
    } else {
        2
    }
}

/// Appends flags from `--config` for every key not already on the command line.
fn merge_config(mut argv: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = argv.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(argv);
    };
    let path = match argv[pos].strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => argv
            .get(pos + 1)
            .cloned()
            .context("--config needs a file")?,
    };
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {path}"))?;
    let table: toml::Table = text.parse().with_context(|| format!("parsing {path}"))?;
    let subcommand = (1..argv.len())
        .find(|&i| !argv[i].starts_with('-') && argv[i - 1] != "--config")
        .map(|i| argv[i].clone());
    let mut extra = Vec::new();
    let add = |key: &str, value: &toml::Value, extra: &mut Vec<String>| -> Result<()> {
        let flag = format!("--{}", key.replace('_', "-"));
        if argv.iter().any(|a| a == &flag || a.starts_with(&format!("{flag}="))) {
            return Ok(());
        }
        match value {
            toml::Value::Boolean(b) if SWITCHES.contains(&&flag[2..]) => {
                if *b {
                    extra.push(flag);
                }
            }
            toml::Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect::<Result<_>>()?;
                extra.push(format!("{flag}={}", parts.join(",")));
            }
            v => extra.push(format!("{flag}={}", scalar(v)?)),
        }
        Ok(())
    };
    for (key, value) in &table {
        match value {
            toml::Value::Table(section) => {
                if subcommand.as_deref() == Some(key.replace('_', "-").as_str()) {
                    for (k, v) in section {
                        add(k, v, &mut extra)?;
                    }
                }
            }
            v => add(key, v, &mut extra)?,
        }
    }
    argv.extend(extra);
    Ok(argv)
}

fn scalar(v: &toml::Value) -> Result<String> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Boolean(b) => b.to_string(),
        other => bail!("unsupported config value {other}"),
    })
}

fn enumeration_cap() -> Result<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{CAP_VAR} must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_ENUMERATION_CAP),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

type Output = (&'static str, Value, String);

fn run(cli: &Cli) -> Result<Output> {
    let cap = enumeration_cap()?;
    match &cli.command {
        Command::AnalyzeGroup(src) => {
            let gp = group_profile(src, cap)?;
            Ok(("analyze-group", to_value(&gp), profile_text(&gp)))
        }
        Command::Decide(a) => decide(a, cap),
        Command::EnumerateTails(a) => {
            let found = vancycles::enumerate(a.r, a.mg, a.prim, a.max_new)?;
            let mut text = format!("{} configuration(s)\n", found.len());
            for c in &found {
                text.push_str(&tails_text(c));
                text.push('\n');
            }
            Ok(("enumerate-tails", to_value(&found), text))
        }
        Command::KummerCheck(a) => kummer_check(a),
        Command::Conductor(a) => {
            let field = GaloisField::new(a.p, a.field_deg)?;
            let f = LaurentRepresentative::parse_terms(&field, &a.terms)?;
            let c = localfield::as_conductor(&f, &field)?;
            let value = json!({
                "conductor": c.conductor,
                "kind": c.kind,
                "reduced_terms": c.reduced.format_terms(),
            });
            let text = format!(
                "conductor: {}\nkind: {:?}\nreduced terms: {}\n",
                c.conductor,
                c.kind,
                c.reduced.format_terms()
            );
            Ok(("conductor", value, text))
        }
        Command::ClassifyDvf(a) => classify_dvf(a),
        Command::SearchExamples(a) => {
            let params = SearchParams {
                m: a.m,
                n: a.n,
                p: a.p,
                q_max: a.qmax,
            };
            let records = examples::search(&params)?;
            let mut text = format!("{} example(s)\n", records.len());
            for r in &records {
                text.push_str(&format!(
                    "q = {} = {}^{}  v_p(q^m - 1) = {}  |PGL_{}(q)| = {}  {}\n",
                    r.q,
                    r.ell,
                    r.d,
                    r.sylow_order_exponent,
                    a.m,
                    r.group_order,
                    status_text(&r.verdict)
                ));
            }
            Ok(("search-examples", to_value(&records), text))
        }
    }
}

fn group_profile(src: &GroupSource, cap: usize) -> Result<GroupProfile> {
    if let Some(family) = src.family {
        let need = |v: Option<u64>, name: &str| v.with_context(|| format!("--family needs --{name}"));
        let spec = match family {
            Family::Pgl => FamilySpec::Pgl {
                m: need(src.m, "m")?,
                q: need(src.q, "q")?,
                p: need(src.p, "p")?,
            },
            Family::Semidirect => FamilySpec::Semidirect {
                p: need(src.p, "p")?,
                s: src.s.unwrap_or(1),
                m: need(src.m, "m")?,
            },
        };
        return Ok(groups::family_profile(&spec, cap)?);
    }
    let input: GroupInput = if let Some(path) = &src.group {
        read_json(path)?
    } else if let Some(gens) = &src.gens {
        GroupInput {
            degree: src.degree.context("--gens needs --degree")?,
            generators: gens
                .split(';')
                .map(|g| GeneratorInput::Cycles(g.trim().to_string()))
                .collect(),
            label: None,
        }
    } else {
        bail!("give a group with --group, --gens or --family");
    };
    let p = src.p.context("--p is required")?;
    let g = PermutationGroup::try_from(input)?;
    Ok(groups::profile(&g, p, cap)?)
}

fn decide(a: &DecideArgs, cap: usize) -> Result<Output> {
    let gp: GroupProfile = match &a.profile {
        Some(path) => read_json(path)?,
        None => group_profile(&a.source, cap)?,
    };
    let field = FieldProfile::new(gp.p, a.e)?;
    let verdict = if a.branching.is_empty() {
        criterion::decide(&gp, &field)?
    } else {
        criterion::decide_with_branching(&gp, &field, &a.branching)?
    };
    let mut text = profile_text(&gp);
    text.push_str(&format!("e(K): {}\n", a.e));
    text.push_str(&verdict_text(&verdict));
    let value = json!({ "profile": gp, "field": field, "verdict": verdict });
    Ok(("decide", value, text))
}

fn kummer_check(a: &KummerArgs) -> Result<Output> {
    let raw = match (&a.divisor, &a.points) {
        (Some(path), _) => BranchDivisor::try_from(read_json::<DivisorInput>(path)?)?,
        (None, Some(points)) => {
            let input = DivisorInput {
                m: a.m.context("--points needs --m")?,
                p: a.p.context("--points needs --p")?,
                d: a.d,
                points: parse_points(points)?,
            };
            BranchDivisor::try_from(input)?
        }
        (None, None) => bail!("give a divisor with --divisor or --points"),
    };
    let d = kummer::normalize(&raw)?;
    let test = kummer::mth_power_reduction_test(&d);
    let fractions: Vec<String> = d
        .exponents()
        .iter()
        .map(|&e| rational::to_text(&kummer::tail_fraction(e, d.m)))
        .collect();
    let identity = a.r.map(|r| kummer::exponent_sum_identity(&d, r));
    let value = json!({
        "normalized": d,
        "degenerate": d.is_degenerate(),
        "multiplicative_type": kummer::is_multiplicative_type(&d),
        "is_mth_power": test.is_mth_power,
        "class_sums": test.class_sums,
        "tail_fractions": fractions,
        "exponent_sum_identity": identity,
    });
    let mut text = format!(
        "normalized exponents: {:?}\nmultiplicative type: {}\nm-th power in k(x): {}\n",
        d.exponents(),
        yes(kummer::is_multiplicative_type(&d)),
        yes(test.is_mth_power)
    );
    for c in &test.class_sums {
        text.push_str(&format!("  class {:?}: sum = {} mod {}\n", c.residue, c.sum_mod_m, d.m));
    }
    text.push_str(&format!("tail fractions: {}\n", fractions.join(" ")));
    if let Some(i) = identity {
        text.push_str(&format!("exponent sum = m(r - 2): {}\n", yes(i)));
    }
    Ok(("kummer-check", value, text))
}

fn parse_points(text: &str) -> Result<Vec<kummer::BranchPointInput>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (x, a) = item
                .split_once(':')
                .with_context(|| format!("bad point {item:?}, expected residue:exponent"))?;
            Ok(kummer::BranchPointInput {
                residue: kummer::ResidueInput::Encoded(x.trim().parse()?),
                exponent: a.trim().parse()?,
            })
        })
        .collect()
}

fn classify_dvf(a: &DvfArgs) -> Result<Output> {
    let d: ExtensionDescriptor = match &a.descriptor {
        Some(path) => read_json(path)?,
        None => {
            let need = |name: &str| format!("classify-dvf needs --descriptor or --{name}");
            ExtensionDescriptor {
                p: a.p.with_context(|| need("p"))?,
                n: a.n.unwrap_or(1),
                e_k: a.e_k.with_context(|| need("e-k"))?,
                v_a: a.v_a.with_context(|| need("v-a"))?,
                residue_is_pth_power: a.residue_pth_power.with_context(|| need("residue-pth-power"))?,
                contains_zeta: a.contains_zeta.with_context(|| need("contains-zeta"))?,
                uniformizer_index: a.uniformizer_index.unwrap_or(1),
                residue_separable: a.residue_separable,
            }
        }
    };
    let class = dvfclassify::classify(&d)?;
    let mut value = json!({ "descriptor": d, "class": class });
    let mut text = format!("class: {class:?}\n");
    if d.n == 1 {
        let forced = dvfclassify::low_ram_forces_naive(&d)?;
        let violations = dvfclassify::low_ram_violations(&d)?;
        text.push_str(&format!("e(K) < p - 1 forces naive ramification: {}\n", yes(forced)));
        for v in &violations {
            text.push_str(&format!("  violation: {v}\n"));
        }
        value["low_ram_forces_naive"] = json!(forced);
        value["low_ram_violations"] = json!(violations);
    }
    if let Some(path) = &a.full {
        let full: ExtensionDescriptor = read_json(path)?;
        let base_flag = a.unramified_base.then_some(true);
        let consistent = dvfclassify::mu_lift_equivalence(&d, &full, base_flag)?;
        text.push_str(&format!("mu-type lifts consistently to Z/p^{}: {}\n", full.n, yes(consistent)));
        value["mu_lift_consistent"] = json!(consistent);
    }
    Ok(("classify-dvf", value, text))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn profile_text(gp: &GroupProfile) -> String {
    let m = gp
        .m_invariant
        .map_or_else(|| "undefined".to_string(), |m| m.to_string());
    format!(
        "order: {}\np: {}\nv_p(|G|): {}\nsylow cyclic: {}\nm_G: {m}\norder-p classes: {}\ncenter exponent: {}\n",
        gp.order,
        gp.p,
        gp.p_valuation,
        yes(gp.sylow_cyclic),
        gp.order_p_class_count,
        gp.center_exponent
    )
}

fn status_text(v: &Verdict) -> String {
    match v.status {
        Status::PotentiallyGood if v.good_reduction_outright => "PotentiallyGood (good reduction outright)".into(),
        Status::PotentiallyGood => format!(
            "PotentiallyGood (tame degree divides {})",
            v.tame_degree_divides.unwrap_or(1)
        ),
        Status::Inconclusive => "Inconclusive".into(),
    }
}

fn verdict_text(v: &Verdict) -> String {
    let mut text = format!("verdict: {}\n", status_text(v));
    for r in &v.reasons {
        text.push_str(&format!("  - {r}\n"));
    }
    text
}

fn tails_text(c: &TailConfiguration) -> String {
    let join = |it: Vec<String>| it.join(" ");
    format!(
        "primitive [{}]  new [{}]",
        join(c.primitive_invariants().map(rational::to_text).collect()),
        join(c.new_invariants().map(rational::to_text).collect())
    )
}
