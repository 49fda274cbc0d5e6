mod args;
mod commands;
mod spec;

use std::io::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command};
use commands::{execute, Env, Failure, Outcome, EXIT_USAGE};
use spec::{BudgetOverrides, ExperimentSpec};

const GLOBAL_WITH_VALUE: &[&str] = &[
    "--ring", "--t-max", "--e-max", "--i-max", "--k-max", "--seed",
];

/// The subcommand tokens with every global flag removed.
fn invocation(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--json" {
            continue;
        }
        if GLOBAL_WITH_VALUE.contains(&a.as_str()) {
            it.next();
            continue;
        }
        if GLOBAL_WITH_VALUE
            .iter()
            .any(|g| a.starts_with(&format!("{g}=")))
        {
            continue;
        }
        out.push(a.clone());
    }
    out
}

struct Run {
    env: Env,
    invocation: Vec<String>,
}

fn load(path: &std::path::Path) -> Result<ExperimentSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    ExperimentSpec::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn prepare(
    mut spec: ExperimentSpec,
    flags: &BudgetOverrides,
    seed: Option<u64>,
    invocation: Vec<String>,
) -> Result<Run, Failure> {
    let budgets = flags
        .over(&spec.budgets)
        .resolve()
        .map_err(Failure::usage)?;
    spec.budgets = BudgetOverrides {
        t_max: Some(budgets.t_max),
        e_max: Some(budgets.e_max),
        i_max: Some(budgets.i_max),
        k_max: Some(budgets.k_max),
    };
    let built = spec.build()?;
    Ok(Run {
        env: Env {
            spec,
            built,
            budgets,
            seed,
        },
        invocation,
    })
}

fn task_command(tokens: &[String]) -> Result<Command, Failure> {
    let argv = std::iter::once("charp".to_string()).chain(tokens.iter().cloned());
    Cli::try_parse_from(argv)
        .map(|c| c.command)
        .map_err(|e| Failure::usage(e.to_string()))
}

fn run_one(env: &Env, cmd: &Command) -> Outcome {
    execute(cmd, env).unwrap_or_else(|f| Outcome {
        code: f.code,
        result: json!({ "error": f.message }),
        text: format!("error: {}\n", f.message),
    })
}

fn run_tasks(env: &Env) -> Outcome {
    let mut tasks = Vec::new();
    let mut text = String::new();
    let mut code = 0;
    for line in &env.spec.tasks {
        let out = match shlex::split(line) {
            None => Outcome {
                code: EXIT_USAGE,
                result: json!({ "error": "unbalanced quotes" }),
                text: "error: unbalanced quotes\n".into(),
            },
            Some(tokens) => match task_command(&tokens) {
                Ok(Command::Run | Command::Replay { .. }) => Outcome {
                    code: EXIT_USAGE,
                    result: json!({ "error": "nested run/replay is not supported" }),
                    text: "error: nested run/replay is not supported\n".into(),
                },
                Ok(cmd) => run_one(env, &cmd),
                Err(f) => Outcome {
                    code: f.code,
                    result: json!({ "error": f.message }),
                    text: format!("error: {}\n", f.message),
                },
            },
        };
        text.push_str(&format!("$ {line}\n{}", out.text));
        code = code.max(out.code);
        tasks.push(json!({ "task": line, "exit_code": out.code, "result": out.result }));
    }
    Outcome {
        code,
        result: json!({ "tasks": tasks }),
        text,
    }
}

fn report(run: &Run, out: &Outcome, elapsed_ms: f64) -> Value {
    json!({
        "schema": 1,
        "invocation": run.invocation,
        "spec": run.env.spec,
        "spec_text": run.env.spec.to_text(),
        "budgets": run.env.budgets,
        "seed": run.env.seed,
        "exit_code": out.code,
        "result": out.result,
        "timing_ms": elapsed_ms,
    })
}

fn replay_source(
    path: &std::path::Path,
) -> Result<(ExperimentSpec, Vec<String>, Option<u64>), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("not a report: {e}")))?;
    if v["schema"] != 1 {
        return Err(Failure::usage("unsupported report schema"));
    }
    let spec_text = v["spec_text"]
        .as_str()
        .ok_or_else(|| Failure::usage("report lacks spec_text"))?;
    let spec = ExperimentSpec::parse(spec_text).map_err(Failure::usage)?;
    let inv: Vec<String> = serde_json::from_value(v["invocation"].clone())
        .map_err(|_| Failure::usage("report lacks an invocation"))?;
    Ok((spec, inv, v["seed"].as_u64()))
}

fn main_inner() -> Result<ExitCode, Failure> {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return Ok(ExitCode::from(code as u8));
        }
    };
    let flags = BudgetOverrides {
        t_max: cli.t_max,
        e_max: cli.e_max,
        i_max: cli.i_max,
        k_max: cli.k_max,
    };
    let (spec, inv, seed) = match &cli.command {
        Command::Replay { report } => replay_source(report)?,
        _ => {
            let path = cli
                .ring
                .as_ref()
                .ok_or_else(|| Failure::usage("--ring FILE is required"))?;
            (load(path)?, invocation(&argv), cli.seed)
        }
    };
    let cmd = task_command(&inv)?;
    let run = prepare(spec, &flags, seed, inv)?;
    let start = Instant::now();
    let out = match cmd {
        Command::Run => run_tasks(&run.env),
        Command::Replay { .. } => return Err(Failure::usage("a report cannot replay a replay")),
        other => run_one(&run.env, &other),
    };
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(&report(&run, &out, ms)).expect("serializable");
        s.push('\n');
        s
    } else {
        out.text
    };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    Ok(ExitCode::from(out.code as u8))
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(c) => c,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
