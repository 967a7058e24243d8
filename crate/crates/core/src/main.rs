use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use colored_partitions::harness::{
    bijection_audit, case, case_names, load_case, run_all, verify, IdentityCase, Mode, Verdict,
};
use colored_partitions::qseries::gen_function;

#[derive(Parser)]
#[command(
    name = "cpart",
    version,
    about = "Verify colored-partition identities to a truncation order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in cases.
    List,
    /// Compare the sum and product sides of one case.
    Verify {
        case: String,
        #[arg(long)]
        order: Option<usize>,
        /// Cross-check the sum side against the brute-force count.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verify every built-in case and run the structural checks.
    RunAll {
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check the path bijection up to a box count.
    Audit {
        case: String,
        #[arg(long, default_value_t = 10)]
        boxes: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the sum side of a case.
    Series {
        case: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Verify a case described in a JSON file.
    Load {
        file: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
}

const FAILED: u8 = 1;
const CONFIG: u8 = 2;

fn config_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(CONFIG)
}

fn report_case(c: &IdentityCase, order: Option<usize>, oracle: bool, as_json: bool) -> ExitCode {
    let report = match verify(c, order.unwrap_or(c.order), oracle) {
        Ok(r) => r,
        Err(e) => return config_error(e),
    };
    if as_json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
    if report.is_failure(c.mode) {
        ExitCode::from(FAILED)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List => {
            for name in case_names() {
                match case(name) {
                    Ok(c) => {
                        let mode = match c.mode {
                            Mode::Assert => "assert",
                            Mode::Explore => "explore",
                        };
                        let product = c
                            .product
                            .as_ref()
                            .map(ToString::to_string)
                            .unwrap_or_default();
                        println!("{name:<18} {mode:<8} order {:<3} {product}", c.order);
                    }
                    Err(e) => return config_error(e),
                }
            }
            ExitCode::SUCCESS
        }
        Command::Verify {
            case: name,
            order,
            oracle,
            json,
        } => match case(&name) {
            Ok(c) => report_case(&c, order, oracle, json),
            Err(e) => config_error(e),
        },
        Command::Load {
            file,
            order,
            oracle,
            json,
        } => match load_case(&file) {
            Ok(c) => report_case(&c, order, oracle, json),
            Err(e) => config_error(e),
        },
        Command::RunAll { order, json } => {
            let summary = run_all(order);
            if json {
                let reports: Vec<_> = summary.reports.iter().map(|(_, r)| r.to_json()).collect();
                println!(
                    "{}",
                    json!({ "reports": reports, "structural": summary.structural })
                );
            } else {
                for (_, r) in &summary.reports {
                    print!("{r}");
                }
                for check in &summary.structural {
                    println!("{check}");
                }
            }
            if summary.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(FAILED)
            }
        }
        Command::Audit {
            case: name,
            boxes,
            json,
        } => {
            let report = match case(&name).and_then(|c| bijection_audit(&c, boxes)) {
                Ok(r) => r,
                Err(e) => return config_error(e),
            };
            if json {
                println!(
                    "{}",
                    serde_json::to_value(&report).expect("reports serialize")
                );
            } else {
                print!("{report}");
            }
            if report.verdict == Verdict::Pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(FAILED)
            }
        }
        Command::Series {
            case: name,
            order,
            json,
        } => {
            let series = match case(&name).and_then(|c| gen_function(&c.rules, &c.spec, 2 * order))
            {
                Ok(s) => s,
                Err(e) => return config_error(e),
            };
            if json {
                println!("{}", series.to_json());
            } else {
                println!("{series}");
            }
            ExitCode::SUCCESS
        }
    }
}
