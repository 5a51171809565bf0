//! Argument parsing, input ingestion and report rendering for `sacat`.

use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sacat::cohomology::{
    cocycle_of_extension, h1_cohomology, h2_cohomology_with_cap, CoefficientGroup, DEFAULT_SOLVER_CAP,
};
use sacat::extensions::{
    baer_sum, classify_central, find_splitting, group_from_json, is_central_huq, is_central_smith,
    subobjects_of_kernel_are_normal, Extension,
};
use sacat::groups::{builtin_with_cap, center, FiniteGroup, DEFAULT_CLOSURE_CAP};
use sacat::homology::{h1, DEFAULT_CERTIFIED_CAP};
use sacat::theorems::{
    hochschild_serre_with, is_perfect, stallings_stammbach_with, universal_central_extension,
    universal_coefficients_with, FiveTermReport, HomologyCaps,
};
use sacat::verify::{run_suite, suite_json, DEFAULT_SEED};
use sacat::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sacat", version, about = "Homology, cohomology and central extensions of finite groups")]
pub struct Cli {
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest group order for the certified homology path.
    #[arg(long, global = true, env = "SACAT_CAP_ORDER")]
    pub cap: Option<usize>,
    /// Largest cocycle system accepted by the solver.
    #[arg(long, global = true)]
    pub solver_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basic facts about a group.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// H1 and H2 with integer coefficients.
    Homology {
        spec: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        degree: Option<u8>,
        #[arg(long)]
        uncertified: bool,
    },
    /// H1 and H2 with trivial coefficients.
    Cohomology {
        spec: String,
        #[arg(long)]
        coeff: String,
        /// Print one representative cocycle per invariant factor.
        #[arg(long)]
        reps: bool,
    },
    /// Central extensions.
    Centr {
        #[command(subcommand)]
        action: CentrAction,
    },
    /// Five-term exact sequences.
    Exact {
        #[command(subcommand)]
        action: ExactAction,
    },
    /// Universal central extension of a perfect group.
    Uce {
        spec: String,
        #[arg(long)]
        uncertified: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum GroupAction {
    Info { spec: String },
}

#[derive(Debug, Subcommand)]
pub enum CentrAction {
    /// One extension per class of H2(Y, A).
    Classify {
        base: String,
        #[arg(long)]
        coeff: String,
        #[arg(long, default_value_t = 256)]
        max_classes: usize,
    },
    /// Baer sum of two extensions given as JSON files.
    Baer { first: String, second: String },
    /// Centrality certificates for an extension given as a JSON file.
    Check { extension: String },
}

#[derive(Debug, Subcommand)]
pub enum ExactAction {
    Stallings {
        extension: String,
    },
    Hs {
        extension: String,
        #[arg(long)]
        coeff: String,
    },
    Uct {
        base: String,
        #[arg(long)]
        coeff: String,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

/// Machine and human renderings of one invocation.
#[derive(Debug, Clone)]
pub struct Report {
    pub machine: Value,
    pub human: String,
    pub exit_code: i32,
}

impl Report {
    fn new(machine: Value, human: String, pass: bool) -> Report {
        Report { machine, human, exit_code: if pass { EXIT_PASS } else { EXIT_FAIL } }
    }

    /// What goes to stdout.
    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.machine).expect("JSON values serialize") + "\n"
        } else {
            self.human.clone()
        }
    }
}

/// A failure with its exit code and a one-line diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub exit_code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { exit_code: EXIT_USAGE, message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.message, "exit_code": self.exit_code })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let exit_code = match e {
            Error::NotSquare { .. }
            | Error::NotClosed { .. }
            | Error::NotAssociative { .. }
            | Error::NoIdentity
            | Error::NoInverse { .. }
            | Error::EmptyTable
            | Error::Parse { .. }
            | Error::UnsupportedName(_)
            | Error::ClosureTooLarge { .. }
            | Error::MapLength { .. }
            | Error::Schema(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure { exit_code, message: e.to_string() }
    }
}

type Outcome = std::result::Result<Report, Failure>;

struct Settings {
    cap: usize,
    solver_cap: usize,
}

/// Parses and runs one command line. Never panics on bad input.
pub fn run<I, T>(argv: I) -> (Outcome, bool)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (Ok(Report { machine: Value::Null, human: e.to_string(), exit_code: EXIT_PASS }), false);
            }
            let first = e.to_string().lines().next().unwrap_or("invalid arguments").to_string();
            return (Err(Failure::usage(first)), false);
        }
    };
    let json = cli.json;
    (dispatch(cli), json)
}

fn dispatch(cli: Cli) -> Outcome {
    let settings = Settings {
        cap: cli.cap.unwrap_or(DEFAULT_CERTIFIED_CAP),
        solver_cap: cli.solver_cap.unwrap_or(DEFAULT_SOLVER_CAP),
    };
    match cli.command {
        Command::Group { action: GroupAction::Info { spec } } => group_info(&spec),
        Command::Homology { spec, degree, uncertified } => homology(&settings, &spec, degree, uncertified),
        Command::Cohomology { spec, coeff, reps } => cohomology(&settings, &spec, &coeff, reps),
        Command::Centr { action } => match action {
            CentrAction::Classify { base, coeff, max_classes } => {
                classify(&spec_group(&base)?, &coefficients(&coeff)?, max_classes)
            }
            CentrAction::Baer { first, second } => baer(&read_extension(&first)?, &read_extension(&second)?),
            CentrAction::Check { extension } => check(&read_extension(&extension)?),
        },
        Command::Exact { action } => exact(&settings, action),
        Command::Uce { spec, uncertified, seed } => uce(&settings, &spec, uncertified, seed),
        Command::Verify(args) => verify(&args),
    }
}

fn read_json(path: &str) -> std::result::Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{path}: invalid JSON: {e}")))
}

/// A DSL string, or a path to a Cayley JSON file.
pub fn spec_group(spec: &str) -> std::result::Result<Arc<FiniteGroup>, Failure> {
    if Path::new(spec).is_file() {
        let v = read_json(spec)?;
        return group_from_json(&v).map(Arc::new).map_err(|e| located(spec, e));
    }
    Ok(Arc::new(builtin_with_cap(spec, DEFAULT_CLOSURE_CAP)?))
}

fn located(path: &str, e: Error) -> Failure {
    let f = Failure::from(e);
    Failure { message: format!("{path}: {}", f.message), ..f }
}

fn coefficients(spec: &str) -> std::result::Result<CoefficientGroup, Failure> {
    CoefficientGroup::from_spec(spec).map_err(|e| match e {
        Error::NotAbelian => Failure::usage(format!("coefficient group {spec} is not abelian")),
        other => other.into(),
    })
}

pub fn read_extension(path: &str) -> std::result::Result<Extension, Failure> {
    let v = read_json(path)?;
    Extension::from_json(&v).map_err(|e| located(path, e))
}

fn factors(v: &[u64]) -> String {
    if v.is_empty() {
        "0".into()
    } else {
        v.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join(" x ")
    }
}

fn group_info(spec: &str) -> Outcome {
    let g = spec_group(spec)?;
    let ab = h1(&g);
    let z = center(&g);
    let perfect = is_perfect(&g);
    let machine = json!({
        "label": g.label(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "center_order": z.order(),
        "perfect": perfect,
        "h1": ab.structure().factors(),
    });
    let human = format!(
        "group     {}\norder     {}\nabelian   {}\nexponent  {}\ncenter    order {}\nperfect   {}\nH1        {}\n",
        g.label(),
        g.order(),
        g.is_abelian(),
        g.exponent(),
        z.order(),
        perfect,
        factors(ab.structure().factors())
    );
    Ok(Report::new(machine, human, true))
}

fn homology(s: &Settings, spec: &str, degree: Option<u8>, uncertified: bool) -> Outcome {
    let g = spec_group(spec)?;
    let mut machine = json!({ "group": g.label(), "order": g.order() });
    let mut human = format!("group  {} (order {})\n", g.label(), g.order());
    if degree != Some(2) {
        let ab = h1(&g);
        machine["h1"] = json!(ab.structure().factors());
        human += &format!("H1     {}\n", factors(ab.structure().factors()));
    }
    if degree != Some(1) {
        let caps = HomologyCaps { certified: s.cap, allow_uncertified: uncertified };
        let hy = caps.h2(&g)?;
        machine["h2"] = json!(hy.structure().factors());
        machine["certified"] = json!(hy.certified());
        let stamp = if hy.certified() { "" } else { "  (uncertified)" };
        human += &format!("H2     {}{stamp}\n", factors(hy.structure().factors()));
    }
    Ok(Report::new(machine, human, true))
}

fn cohomology(s: &Settings, spec: &str, coeff: &str, reps: bool) -> Outcome {
    let g = spec_group(spec)?;
    let a = coefficients(coeff)?;
    let h1c = h1_cohomology(&g, &a);
    let h2c = h2_cohomology_with_cap(&g, &a, s.solver_cap)?;
    let mut machine = json!({
        "group": g.label(),
        "coeff": a.structure().factors(),
        "h1": h1c.structure().factors(),
        "h2": h2c.structure().factors(),
        "h2_order": h2c.structure().order().to_string(),
    });
    let mut human = format!(
        "group    {}\ncoeff    {}\nH1(-,A)  {}\nH2(-,A)  {} (order {})\n",
        g.label(),
        a.label(),
        factors(h1c.structure().factors()),
        factors(h2c.structure().factors()),
        h2c.structure().order()
    );
    if reps {
        machine["reps"] = Value::Array(h2c.representatives().iter().map(|c| c.to_json()).collect());
        for (i, c) in h2c.representatives().iter().enumerate() {
            human += &format!("rep {i}   {:?}\n", c.values());
        }
    }
    Ok(Report::new(machine, human, true))
}

fn classify(y: &Arc<FiniteGroup>, a: &CoefficientGroup, max_classes: usize) -> Outcome {
    let classes = classify_central(y, a, max_classes)?;
    let rows: Vec<Value> = classes
        .iter()
        .map(|c| {
            let x = c.extension.total();
            json!({
                "coords": c.coords,
                "total_order": x.order(),
                "total_abelian": x.is_abelian(),
                "total_exponent": x.exponent(),
                "split": find_splitting(&c.extension).is_some(),
            })
        })
        .collect();
    let mut human = format!("{} central extensions of {} by {}\n", classes.len(), y.label(), a.label());
    for r in &rows {
        human += &format!(
            "  {:<12} order {:<4} abelian {:<5} exponent {:<3} split {}\n",
            r["coords"].to_string(),
            r["total_order"],
            r["total_abelian"],
            r["total_exponent"],
            r["split"]
        );
    }
    let machine = json!({ "base": y.label(), "coeff": a.structure().factors(), "classes": rows });
    Ok(Report::new(machine, human, true))
}

fn baer(e1: &Extension, e2: &Extension) -> Outcome {
    let sum = baer_sum(e1, e2)?;
    let f = cocycle_of_extension(&sum)?;
    let machine = json!({ "extension": sum.to_json(), "cocycle": f.to_json(), "total_order": sum.total().order() });
    let human = format!(
        "Baer sum: total order {}, abelian {}, split {}\n",
        sum.total().order(),
        sum.total().is_abelian(),
        find_splitting(&sum).is_some()
    );
    Ok(Report::new(machine, human, true))
}

fn check(e: &Extension) -> Outcome {
    let huq = is_central_huq(e);
    let smith = is_central_smith(e);
    let central = e.is_central();
    let violations = if central { Some(subobjects_of_kernel_are_normal(e)?.len()) } else { None };
    let agree = huq.is_some() == smith.holds() && huq.is_some() == central;
    let machine = json!({
        "central": central,
        "huq": huq.as_ref().map(|c| json!({ "multiplicity": c.multiplicity })),
        "smith": {
            "relation_order": smith.relation_order,
            "congruence": smith.is_congruence(),
            "connector_order": smith.connector_order,
            "connector_is_subgroup": smith.connector_is_subgroup,
            "squares": smith.squares.iter().map(|s| json!({
                "corner": s.corner.to_string(),
                "image_size": s.image_size,
                "expected": s.expected,
                "injective": s.injective,
            })).collect::<Vec<_>>(),
            "holds": smith.holds(),
        },
        "non_normal_kernel_subgroups": violations,
        "split": find_splitting(e).is_some(),
        "agree": agree,
    });
    let human = format!(
        "kernel order     {}\ncentral          {central}\nHuq cooperator   {}\nSmith connector  {}\nagree            {agree}\n",
        e.kernel().order(),
        huq.is_some(),
        smith.holds()
    );
    Ok(Report::new(machine, human, agree && violations.unwrap_or(0) == 0))
}

fn render_sequence(r: &FiveTermReport) -> String {
    let mut out = format!("{}: {}\n", r.name, if r.is_pass() { "PASS" } else { "FAIL" });
    for (label, node) in r.labels.iter().zip(&r.nodes) {
        out += &format!("  {:<16} {}\n", label, factors(node.factors()));
    }
    for v in &r.verdicts {
        out += &format!(
            "  at {:<13} |im| = {:<4} |ker| = {:<4} {}\n",
            r.labels[v.node],
            v.image_order,
            v.kernel_order,
            if v.exact { "exact" } else { "NOT exact" }
        );
    }
    out
}

fn exact(s: &Settings, action: ExactAction) -> Outcome {
    let r = match action {
        ExactAction::Stallings { extension } => {
            let e = read_extension(&extension)?;
            let hx = sacat::homology::h2_with_cap(e.total(), s.cap)?;
            let hy = sacat::homology::h2_with_cap(e.base(), s.cap)?;
            stallings_stammbach_with(&e, &hx, &hy)?
        }
        ExactAction::Hs { extension, coeff } => {
            let e = read_extension(&extension)?;
            let a = coefficients(&coeff)?;
            let h2y = h2_cohomology_with_cap(e.base(), &a, s.solver_cap)?;
            let h2x = h2_cohomology_with_cap(e.total(), &a, s.solver_cap)?;
            hochschild_serre_with(&e, &a, &h2y, &h2x)?
        }
        ExactAction::Uct { base, coeff } => {
            let y = spec_group(&base)?;
            let a = coefficients(&coeff)?;
            let hy = sacat::homology::h2_with_cap(&y, s.cap)?;
            let h = h2_cohomology_with_cap(&y, &a, s.solver_cap)?;
            universal_coefficients_with(&y, &a, &hy, &h)?
        }
    };
    Ok(Report::new(r.to_json(), render_sequence(&r), r.is_pass()))
}

fn uce(s: &Settings, spec: &str, uncertified: bool, seed: u64) -> Outcome {
    let y = spec_group(spec)?;
    let caps = HomologyCaps { certified: s.cap, allow_uncertified: uncertified };
    let u = universal_central_extension(&y, caps, seed)?;
    let human = format!(
        "universal central extension of {}\n  total order  {}\n  kernel       {}\n  certified    {}\n  perfect      {}\n  split        {}\n  initiality   {}/{} sample extensions\n",
        y.label(),
        u.extension.total().order(),
        factors(u.kernel_structure.factors()),
        u.certified,
        u.total_perfect,
        u.split,
        u.initiality.iter().filter(|c| c.holds()).count(),
        u.initiality.len()
    );
    Ok(Report::new(u.to_json(), human, u.holds()))
}

fn verify(args: &VerifyArgs) -> Outcome {
    if args.suite != "paper" {
        return Err(Failure::usage(format!("unknown suite {:?}; available: paper", args.suite)));
    }
    let results = run_suite(args.seed)?;
    let machine = suite_json(args.seed, &results);
    let human: String = results.iter().map(|r| r.line() + "\n").collect();
    let pass = results.iter().all(|r| r.pass);
    Ok(Report::new(machine, human, pass))
}
