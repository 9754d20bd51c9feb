use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use braidaug::braid::{link_stats, parse_braid, BraidWord};
use braidaug::cluster::{initial_seed, quiver_dot, seed_to_json, Seed};
use braidaug::dga::{aug_equations, differentials};
use braidaug::filling::{all_pinch_orders, distinct_seeds, run_filling, Plan};
use braidaug::verify::{default_goldens, parse_goldens, run_acceptance, VerifyConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "braidaug", version, about = "Augmentations, cluster seeds and filling charts of positive braid closures")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct WordArgs {
    /// Comma- or space-separated letters, e.g. "1,2,1,2".
    word: String,
    /// Strand count; defaults to the largest letter plus one.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Differentials of the degree-1 chords.
    Dga(WordArgs),
    /// Augmentation equations and link data.
    Aug(WordArgs),
    /// Initial seed.
    Seed(WordArgs),
    /// Initial seed after a mutation sequence.
    Mutate {
        #[command(flatten)]
        word: WordArgs,
        /// Vertex ids in application order, e.g. "1,3,2".
        #[arg(long)]
        seq: String,
    },
    /// Runs a filling plan (JSON file).
    Filling {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        plan: PathBuf,
    },
    /// Groups all pinch orders by final seed.
    Census(WordArgs),
    /// Runs the acceptance suite.
    Verify {
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Replacement golden file.
        #[arg(long)]
        goldens: Option<PathBuf>,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Check(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Check(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow::anyhow!(msg.into()))
}

fn word(a: &WordArgs) -> Result<BraidWord, Failure> {
    parse_braid(&a.word, a.n).map_err(|e| Failure::Usage(anyhow::Error::new(e).context(format!("braid `{}`", a.word))))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn no_dot(f: Format, cmd: &str) -> Outcome {
    if f == Format::Dot {
        return Err(usage(format!("`{cmd}` has no dot output")));
    }
    Ok(())
}

fn print_seed(s: &Seed, f: Format) {
    match f {
        Format::Json => print_json(&serde_json::to_value(seed_to_json(s)).expect("seed serializes")),
        Format::Dot => print!("{}", quiver_dot(&s.quiver, Some(s))),
        Format::Text => {
            for v in s.quiver.vertices() {
                let tag = if v.frozen { " frozen" } else { "" };
                let var = s.var(v.id).expect("vertex has a variable");
                println!("A{} (level {}{tag}) = {var}", v.id, v.level);
            }
            for a in s.quiver.arrows() {
                let w = if a.weight2 % 2 == 0 { (a.weight2 / 2).to_string() } else { format!("{}/2", a.weight2) };
                println!("{} -> {} x{w}", a.from, a.to);
            }
        }
    }
}

fn cmd_dga(a: &WordArgs, f: Format) -> Outcome {
    no_dot(f, "dga")?;
    let w = word(a)?;
    let d = differentials(&w);
    let aug = aug_equations(&w);
    match f {
        Format::Json => {
            let diffs: serde_json::Map<String, Value> =
                d.iter().enumerate().map(|(k, p)| (format!("a{}", k + 1), json!(p.to_string()))).collect();
            print_json(&json!({
                "word": w.to_string(),
                "differentials": diffs,
                "equations": aug.equations.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "eliminated": aug.eliminated.to_string(),
            }));
        }
        _ => {
            for (k, p) in d.iter().enumerate() {
                println!("d a{} = {p}", k + 1);
            }
            for (k, e) in aug.equations.iter().enumerate() {
                println!("E{} = {e}", k + 1);
            }
            println!("eliminated = {}", aug.eliminated);
        }
    }
    Ok(())
}

fn cmd_aug(a: &WordArgs, f: Format) -> Outcome {
    no_dot(f, "aug")?;
    let w = word(a)?;
    let aug = aug_equations(&w);
    let stats = link_stats(&w);
    match f {
        Format::Json => print_json(&json!({
            "word": w.to_string(),
            "components": stats.components,
            "tb": stats.tb,
            "minors": aug.minors.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "equations": aug.equations.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "eliminated": aug.eliminated.to_string(),
        })),
        _ => {
            println!("components = {}, tb = {}", stats.components, stats.tb);
            for (k, (m, e)) in aug.minors.iter().zip(&aug.equations).enumerate() {
                println!("Delta{} = {m}", k + 1);
                println!("E{} = {e}", k + 1);
            }
            println!("eliminated = {}", aug.eliminated);
        }
    }
    Ok(())
}

fn parse_seq(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| usage(format!("bad vertex `{s}` in --seq"))))
        .collect()
}

fn cmd_mutate(a: &WordArgs, seq: &str, f: Format) -> Outcome {
    let w = word(a)?;
    let seq = parse_seq(seq)?;
    let s = initial_seed(&w).apply_mutation_sequence(&seq).context("mutation")?;
    if f == Format::Text {
        println!("# mutations in application order, first applied first;");
        println!("# as a composite map this is the reverse, read right to left");
        println!("# sequence: {seq:?}");
    }
    print_seed(&s, f);
    Ok(())
}

fn cmd_filling(a: &WordArgs, plan: &PathBuf, f: Format) -> Outcome {
    let w = word(a)?;
    let text = std::fs::read_to_string(plan).with_context(|| format!("reading {}", plan.display())).map_err(Failure::Usage)?;
    let plan: Plan = serde_json::from_str(&text).map_err(|e| Failure::Usage(anyhow::Error::new(e).context("plan file")))?;
    let r = run_filling(&w, &plan).context("filling")?;
    match f {
        Format::Json => {
            let chart: serde_json::Map<String, Value> =
                r.chart.chart.iter().map(|(id, m)| (format!("A'{id}"), json!(m.to_string()))).collect();
            print_json(&json!({
                "word": w.to_string(),
                "mutation_sequence": r.mutation_sequence,
                "final_seed": seed_to_json(&r.final_seed),
                "relations": r.chart.relation_strings(),
                "chart": chart,
                "determinant": r.chart.determinant.map(|d| d.to_string()),
            }));
        }
        Format::Dot => print!("{}", quiver_dot(&r.final_seed.quiver, Some(&r.final_seed))),
        Format::Text => {
            println!("# mutations in application order, first applied first");
            println!("sequence: {:?}", r.mutation_sequence);
            for rel in r.chart.relation_strings() {
                println!("relation: {rel}");
            }
            for (id, m) in &r.chart.chart {
                println!("A'{id} = {m}");
            }
            match r.chart.determinant {
                Some(d) => println!("determinant = {d}"),
                None => println!("determinant = overflow"),
            }
            print_seed(&r.final_seed, f);
        }
    }
    Ok(())
}

fn cmd_census(a: &WordArgs, f: Format) -> Outcome {
    no_dot(f, "census")?;
    let w = word(a)?;
    let orders = all_pinch_orders(w.len());
    let plans: Vec<Plan> = orders.iter().map(|o| Plan::from_pinch_order(o)).collect();
    let groups = distinct_seeds(&w, &plans).context("census")?;
    match f {
        Format::Json => print_json(&json!({
            "word": w.to_string(),
            "plans": plans.len(),
            "groups": groups.len(),
            "representatives": groups.iter().map(|g| &orders[g[0]]).collect::<Vec<_>>(),
            "sizes": groups.iter().map(Vec::len).collect::<Vec<_>>(),
        })),
        _ => {
            println!("{} groups over {} pinch orders", groups.len(), plans.len());
            for g in &groups {
                println!("{:?} ({} of {})", orders[g[0]], g.len(), plans.len());
            }
        }
    }
    Ok(())
}

fn cmd_verify(seed: u64, trials: u64, goldens: Option<&PathBuf>, f: Format) -> Outcome {
    no_dot(f, "verify")?;
    let g = match goldens {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())).map_err(Failure::Usage)?;
            parse_goldens(&text)?
        }
        None => default_goldens(),
    };
    let cfg = VerifyConfig { seed, trials: trials as usize, ..VerifyConfig::default() };
    let outcomes = run_acceptance(&g, &cfg);
    match f {
        Format::Json => print_json(&json!(outcomes
            .iter()
            .map(|o| json!({"id": o.id, "name": o.name, "passed": o.passed(), "failure": o.failure}))
            .collect::<Vec<_>>())),
        _ => {
            for o in &outcomes {
                println!("{}", o.line());
            }
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    if failed > 0 {
        return Err(Failure::Check(anyhow::anyhow!("{failed} of {} criteria failed", outcomes.len())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = cli.format;
    let res = match &cli.cmd {
        Cmd::Dga(a) => cmd_dga(a, f),
        Cmd::Aug(a) => cmd_aug(a, f),
        Cmd::Seed(a) => word(a).map(|w| print_seed(&initial_seed(&w), f)),
        Cmd::Mutate { word, seq } => cmd_mutate(word, seq, f),
        Cmd::Filling { word, plan } => cmd_filling(word, plan, f),
        Cmd::Census(a) => cmd_census(a, f),
        Cmd::Verify { seed, trials, goldens } => cmd_verify(*seed, *trials, goldens.as_ref(), f),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Check(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
