use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use leafmult::commands::{
    bound_exit_code, bound_summary, check_message, cmd_appendix, cmd_bound, cmd_check, cmd_verify, verify_exit_code, CommandError, Manifest, Overrides,
};
use leafmult::pairs::StepKind;

#[derive(Parser)]
#[command(name = "leafmult")]
#[command(about = "Certified multiplicity bounds for polynomials restricted to leaves of commuting vector fields")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args)]
struct Common {
    /// Problem manifest (JSON, or TOML with a .toml extension)
    #[arg(long)]
    manifest: PathBuf,

    /// Seed for random linear combinations
    #[arg(long)]
    seed: Option<u64>,

    /// Starting jet order
    #[arg(long)]
    jet_order: Option<u32>,

    /// S-pair cap per Groebner basis
    #[arg(long)]
    budget: Option<usize>,

    /// Where to write the JSON trace
    #[arg(long)]
    trace: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides { seed: self.seed, jet_order: self.jet_order, budget: self.budget, trace: self.trace.clone() }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check commutation and nonsingularity
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Bound the local multiplicity of F and G on the leaf
    Bound {
        #[command(flatten)]
        common: Common,
    },
    /// Run randomized lemma suites or re-verify a bound trace
    Verify {
        /// radical-lemma, power-lemma, lt-facts, poisson-lemma, foliation or all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Bound trace to re-verify
        #[arg(long)]
        from_trace: Option<PathBuf>,
    },
    /// Build the extension witness H for F and the ideal of the manifest
    Appendix {
        #[command(flatten)]
        common: Common,
    },
}

fn run(cli: Cli) -> Result<i32, CommandError> {
    match cli.command {
        Cmd::Check { common } => {
            let c = cmd_check(&Manifest::load(&common.manifest)?)?;
            println!("commute     {}", c.commute);
            println!("nonsingular {}", c.nonsingular);
            if !c.ok() {
                println!("{}", check_message(&c));
            }
            Ok(c.exit_code())
        }
        Cmd::Bound { common } => {
            let r = cmd_bound(&Manifest::load(&common.manifest)?, &common.overrides())?;
            for (i, s) in r.ledger.steps.iter().enumerate() {
                let kind = match s.kind {
                    StepKind::Radical => "radical",
                    StepKind::Poisson => "poisson",
                    StepKind::Jacobian => "jacobian",
                };
                println!(
                    "{:>3} {:<9} m -> {}*m + {}  deg {} -> {}  [{}]",
                    i,
                    kind,
                    s.transfer.a,
                    s.transfer.b,
                    s.degree_before,
                    s.degree_after,
                    s.after.global.join(", ")
                );
            }
            if let Some(n) = &r.ledger.note {
                println!("note: {}", n);
            }
            println!("{}", bound_summary(&r));
            Ok(bound_exit_code(&r))
        }
        Cmd::Verify { suite, seed, count, from_trace } => {
            let reps = cmd_verify(&suite, seed, count, from_trace.as_deref())?;
            for r in &reps {
                println!("{:<14} {} cases  {}  {} ms", r.suite, r.cases, if r.passed() { "pass" } else { "FAIL" }, r.millis);
                for f in &r.failures {
                    println!("  {}", f);
                }
            }
            Ok(verify_exit_code(&reps))
        }
        Cmd::Appendix { common } => {
            let t = cmd_appendix(&Manifest::load(&common.manifest)?, &common.overrides())?;
            let w = &t.witness;
            println!("h       {}", w.h);
            println!("mu      {}", w.mu);
            println!("subsets {} (at most {})", w.factors, 1u64 << w.mu);
            println!("H       {}", w.big_h);
            println!("divides h^{} to order {}; vanishes on {} class(es) to order {}", 1u64 << w.mu, w.divisibility_order, w.locus_classes, w.vanishing_order);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    ExitCode::from(code as u8)
}
