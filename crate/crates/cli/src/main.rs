use std::path::PathBuf;
use std::process::ExitCode;

use chernforge_core::checks::{self, realization_recipe_expected, REALIZATION_RECIPE};
use chernforge_core::recipe::report::{number, plan_json};
use chernforge_core::{
    eval_recipe, leading_coefficient, non_kahler_threshold, parse_recipe, realize_targets,
    Admission, AsdPolicy, BigInt, CupFormFamily, Error, ErrorKind, RealizationPlan, Report,
};
use clap::{Parser, Subcommand};
use serde_json::json;

/// Exact Chern numbers of complex 3-folds built from surfaces, twistor
/// spaces and blow-ups.
#[derive(Parser)]
#[command(name = "chernforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a recipe file and report each emitted 3-fold.
    Eval {
        file: PathBuf,
        #[arg(long, env = "CHERNFORGE_POLICY", default_value = "known", value_parser = parse_policy)]
        policy: AsdPolicy,
        /// One JSON object per emit instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Build one 6-manifold carrying (c1^3, c1c2) = (8n, 24m) and (8ntilde, 48m).
    Realize {
        #[arg(long, allow_negative_numbers = true)]
        m: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        n: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        ntilde: BigInt,
        #[arg(long, env = "CHERNFORGE_POLICY", default_value = "known", value_parser = parse_policy)]
        policy: AsdPolicy,
        #[arg(long)]
        json: bool,
    },
    /// Non-Kahler threshold of the pencil c1 = 2n.alpha + beta.
    Threshold {
        #[arg(long, allow_negative_numbers = true)]
        a3: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        a2b: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        ab2: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        b3: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        ap1: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        bp1: BigInt,
        #[arg(long)]
        betti_sum: BigInt,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive the library's core Chern-number identities and report each check.
    VerifyPaper,
}

fn parse_policy(s: &str) -> Result<AsdPolicy, String> {
    AsdPolicy::parse(s).ok_or_else(|| format!("unknown policy {s:?}; expected known, assume or reject"))
}

const EXIT_DOMAIN: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_POLICY: u8 = 3;

fn domain_exit(e: &Error) -> ExitCode {
    ExitCode::from(match e.kind() {
        ErrorKind::Domain => EXIT_DOMAIN,
        ErrorKind::Policy => EXIT_POLICY,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { file, policy, json } => eval(&file, policy, json),
        Command::Realize { m, n, ntilde, policy, json } => realize(&m, &n, &ntilde, policy, json),
        Command::Threshold { a3, a2b, ab2, b3, ap1, bp1, betti_sum, json } => {
            let family = CupFormFamily { a3, a2b, ab2, b3, a_p1: ap1, b_p1: bp1, betti_sum };
            threshold(&family, json)
        }
        Command::VerifyPaper => verify(),
    }
}

fn eval(file: &PathBuf, policy: AsdPolicy, as_json: bool) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    let recipe = match parse_recipe::<BigInt>(&text) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}:{e}", file.display());
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let reports = match eval_recipe(&recipe, policy) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            for step in &e.provenance {
                eprintln!("  after: {step}");
            }
            return domain_exit(&e.source);
        }
    };
    for (i, (report, expr)) in reports.iter().zip(recipe.emits()).enumerate() {
        if as_json {
            println!("{}", report.to_json());
        } else {
            if i > 0 {
                println!();
            }
            println!("emit {expr}");
            print!("{report}");
        }
    }
    ExitCode::SUCCESS
}

fn plan_warnings(plan: &RealizationPlan<BigInt>, policy: AsdPolicy) -> Vec<String> {
    match policy.admits(&plan.surface) {
        Ok(Admission::Assumed) => vec![format!(
            "anti-self-dual metric on {} assumed by policy `{policy}` (unverified)",
            plan.surface.name
        )],
        _ => vec![],
    }
}

fn realize(m: &BigInt, n: &BigInt, ntilde: &BigInt, policy: AsdPolicy, as_json: bool) -> ExitCode {
    let plan = match realize_targets(m, n, ntilde, policy) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return domain_exit(&e);
        }
    };
    let warnings = plan_warnings(&plan, policy);
    if as_json {
        println!("{}", plan_json(&plan, &warnings));
        return ExitCode::SUCCESS;
    }
    let s = &plan.surface;
    println!("targets     m = {}, n = {}, ntilde = {}", plan.m, plan.n, plan.n_tilde);
    println!("surface     {} (chi = {}, tau = {}, c1^2 = {})", s.name, s.chi, s.tau, s.c1_squared());
    println!("k = {}  (k0 = {}), l = {}", plan.k, plan.k0, plan.l);
    println!("\n(X, J): blow-up of P(O + K^-1) at {} points", plan.l);
    print!("{}", Report::from_threefold(&plan.x_j, warnings.clone()));
    println!("\n(X, J~): blow-up of the twistor space at {} points", plan.l);
    print!("{}", Report::from_threefold(&plan.x_jtilde, warnings));
    ExitCode::SUCCESS
}

fn threshold(family: &CupFormFamily<BigInt>, as_json: bool) -> ExitCode {
    let lead = leading_coefficient(family);
    match non_kahler_threshold(family) {
        Ok(n) => {
            if as_json {
                println!(
                    "{}",
                    json!({
                        "schema_version": 1,
                        "threshold": number(&n),
                        "leading_coefficient": lead.to_string(),
                    })
                );
            } else {
                println!("leading coefficient  {lead}");
                println!("threshold N          {n}");
                println!("no Kahler structure in the pencil for |n| > {n}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            domain_exit(&e)
        }
    }
}

fn verify() -> ExitCode {
    let mut all = true;
    for c in checks::run_all() {
        all &= c.passed();
        match &c.outcome {
            Ok(detail) => println!("PASS  {:>2}  {}: {detail}", c.id, c.name),
            Err(why) => println!("FAIL  {:>2}  {}: {why}", c.id, c.name),
        }
    }
    let recipe = parse_recipe::<BigInt>(REALIZATION_RECIPE)
        .map_err(|e| e.to_string())
        .and_then(|r| eval_recipe(&r, AsdPolicy::KnownTable).map_err(|e| e.to_string()));
    match recipe {
        Ok(reports) if reports.len() == 1 && reports[0].numbers == realization_recipe_expected() => {
            println!("PASS  10  recipe evaluation: twistor side of (1, 0, -6) = {}", reports[0].numbers);
        }
        other => {
            all = false;
            println!("FAIL  10  recipe evaluation: {other:?}");
        }
    }
    if all {
        println!("all checks passed");
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_DOMAIN)
    }
}
