//! `lore`: solve, verify and inspect fully integrable systems from JSON.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use laurent_ore::io::{parse_representation, parse_system, representation_to_value, system_to_json, InputKind, SystemInput};
use laurent_ore::linalg::MatrixF;
use laurent_ore::system::{iso_test, verify_group, GroupCheck};
use laurent_ore::{solver, Error, SolverConfig, Vars};

#[derive(Parser)]
#[command(name = "lore", version, about = "Hyperexponential solutions of integrable difference-differential systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Map processing order, comma separated (default: input order).
    #[arg(long, global = true, value_delimiter = ',')]
    order: Option<Vec<String>>,

    /// Cap on the degree of polynomial ansatz parts.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    max_degree: Option<u32>,

    /// Cap on the dispersion of shift denominators.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    max_dispersion: Option<u32>,

    /// Coordinate (1-based) used as the cyclic pivot.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pivot: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a representation of all hyperexponential solutions.
    Solve { system: PathBuf },
    /// Check every group of a representation against the system.
    Verify { system: PathBuf, representation: PathBuf },
    /// Check the pairwise integrability conditions.
    Check { system: PathBuf },
    /// Decide whether two one-dimensional submodules are isomorphic.
    ///
    /// PAIR holds `{"first": {map: value}, "second": {map: value}}` with the
    /// eigenvalues `f` in `delta(u) = f u` and `sigma(u) = f u`.
    Iso { system: PathBuf, pair: PathBuf },
    /// Print the first-order system attached to structure matrices.
    Associated { system: PathBuf },
}

/// An error together with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Parse { .. } | Error::InvalidInput(_) | Error::DivisionByZero | Error::SingularMatrix => 2,
            Error::NotIntegrable { .. } => 3,
            e if e.is_incompleteness() => 4,
            Error::InternalInconsistency(_) => 5,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

struct Report {
    value: Value,
    pretty: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.value).expect("serializable") + "\n",
                Format::Pretty => report.pretty,
            };
            // a closed pipe downstream is not an error of ours
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn config(cli: &Cli) -> SolverConfig {
    let mut cfg = SolverConfig::default();
    if let Some(d) = cli.max_degree {
        cfg.max_degree = d as usize;
    }
    if let Some(d) = cli.max_dispersion {
        cfg.max_dispersion = d as usize;
    }
    if let Some(p) = cli.pivot {
        cfg.pivot = p as usize - 1;
    }
    cfg.order = cli.order.clone();
    cfg
}

fn read(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(text)
}

fn load(path: &Path) -> Result<SystemInput, Failure> {
    Ok(parse_system(&read(path)?)?)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let cfg = config(cli);
    match &cli.command {
        Command::Solve { system } => solve(&load(system)?, &cfg),
        Command::Verify { system, representation } => verify(&load(system)?, &read(representation)?),
        Command::Check { system } => check(&load(system)?),
        Command::Iso { system, pair } => iso(&load(system)?, &read(pair)?),
        Command::Associated { system } => associated(&load(system)?),
    }
}

fn solve(input: &SystemInput, cfg: &SolverConfig) -> Result<Report, Failure> {
    let sys = input.integrable_system()?;
    let rep = solver::solve_recursive(&sys, cfg)?;
    let value = representation_to_value(&rep, &input.vars, &input.delta, true);
    let mut pretty = format!("{} group(s)\n", rep.len());
    for (i, g) in value["groups"].as_array().expect("groups").iter().enumerate() {
        pretty += &format!("group {}: {}\n", i + 1, g["display"].as_str().unwrap_or(""));
        for (name, v) in g["certificate"].as_object().expect("certificate") {
            pretty += &format!("  {name}: {}\n", v.as_str().unwrap_or(""));
        }
        for col in g["vectors"].as_array().expect("vectors") {
            let entries: Vec<&str> = col.as_array().expect("column").iter().filter_map(|x| x.as_str()).collect();
            pretty += &format!("  ({})\n", entries.join(", "));
        }
    }
    Ok(Report { value, pretty, code: 0 })
}

fn check_value(vars: &Vars, c: &GroupCheck) -> Value {
    let residuals: Vec<Value> = c
        .residuals
        .iter()
        .map(|r| {
            let rows: Vec<Value> = r
                .residual
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| json!({"row": i + 1, "value": vars.show(x)}))
                .collect();
            json!({"map": r.map, "vector": r.column + 1, "entries": rows})
        })
        .collect();
    json!({
        "passed": c.passed(),
        "full_rank": c.full_rank,
        "certificate_ok": c.certificate_ok,
        "residuals": residuals,
    })
}

fn verify(input: &SystemInput, text: &str) -> Result<Report, Failure> {
    let sys = input.integrable_system()?;
    let rep = parse_representation(text, &input.vars, sys.dim())?;
    let mut groups = Vec::new();
    let mut pretty = String::new();
    let mut all = true;
    for (i, g) in rep.groups.iter().enumerate() {
        let c = verify_group(&sys, g)?;
        all &= c.passed();
        let mut v = check_value(&input.vars, &c);
        v["group"] = json!(i + 1);
        if c.passed() {
            pretty += &format!("group {}: pass\n", i + 1);
        } else {
            pretty += &format!("group {}: FAIL\n", i + 1);
            if !c.full_rank {
                pretty += "  vectors are not independent\n";
            }
            if !c.certificate_ok {
                pretty += "  certificate values are not compatible\n";
            }
            for r in v["residuals"].as_array().expect("residuals") {
                for e in r["entries"].as_array().expect("entries") {
                    pretty += &format!(
                        "  map '{}', vector {}, row {}: residual {}\n",
                        r["map"].as_str().unwrap_or(""),
                        r["vector"],
                        e["row"],
                        e["value"].as_str().unwrap_or("")
                    );
                }
            }
        }
        groups.push(v);
    }
    Ok(Report {
        value: json!({"passed": all, "groups": groups}),
        pretty,
        code: if all { 0 } else { 5 },
    })
}

fn matrix_value(vars: &Vars, m: &MatrixF) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::from(m.row(i).iter().map(|x| vars.show(x)).collect::<Vec<_>>()))
        .collect();
    Value::from(rows)
}

fn check(input: &SystemInput) -> Result<Report, Failure> {
    match input.integrable_system() {
        Ok(_) => Ok(Report {
            value: json!({"integrable": true}),
            pretty: "integrable\n".into(),
            code: 0,
        }),
        Err(Error::NotIntegrable { first, second, residual }) => Ok(Report {
            value: json!({
                "integrable": false,
                "pair": [first, second],
                "residual": matrix_value(&input.vars, &residual),
            }),
            pretty: format!("not integrable: the condition for ({first}, {second}) fails\n"),
            code: 3,
        }),
        Err(e) => Err(e.into()),
    }
}

fn tuple(vars: &Vars, v: &Value, key: &str) -> Result<Vec<(String, laurent_ore::RatFunc)>, Failure> {
    let bad = |message: String| Failure { code: 2, message };
    let obj: &Map<String, Value> = v
        .get(key)
        .and_then(|x| x.as_object())
        .ok_or_else(|| bad(format!("missing object '{key}'")))?;
    obj.iter()
        .map(|(name, s)| {
            let s = s.as_str().ok_or_else(|| bad(format!("{key}.{name}: expected a string")))?;
            let f = vars.parse(s).map_err(|e| bad(format!("{key}.{name}: {e}")))?;
            Ok((name.clone(), f))
        })
        .collect()
}

fn iso(input: &SystemInput, text: &str) -> Result<Report, Failure> {
    let v: Value = serde_json::from_str(text).map_err(|e| Failure {
        code: 2,
        message: format!("parse error at line {}, column {}: {e}", e.line(), e.column()),
    })?;
    let f = tuple(&input.vars, &v, "first")?;
    let g = tuple(&input.vars, &v, "second")?;
    if f.len() != g.len() || f.len() != input.delta.len() {
        return Err(Failure {
            code: 2,
            message: "both tuples must give one value per map".into(),
        });
    }
    Ok(match iso_test(&input.delta, &f, &g)? {
        Some(r) => {
            let r = input.vars.show(&r);
            Report {
                pretty: format!("isomorphic, witness {r}\n"),
                value: json!({"isomorphic": true, "witness": r}),
                code: 0,
            }
        }
        None => Report {
            value: json!({"isomorphic": false}),
            pretty: "non-isomorphic\n".into(),
            code: 0,
        },
    })
}

fn associated(input: &SystemInput) -> Result<Report, Failure> {
    if input.kind != InputKind::Structure {
        return Err(Failure {
            code: 2,
            message: "'associated' expects a document with input_kind \"structure\"".into(),
        });
    }
    let sys = input.structure()?.associated_system()?;
    let text = system_to_json(&input.vars, &input.parameters, sys.delta(), sys.matrices(), InputKind::Associated);
    Ok(Report {
        value: serde_json::from_str(&text).expect("own output parses"),
        pretty: text + "\n",
        code: 0,
    })
}
