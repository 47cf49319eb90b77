use std::fs;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sphereworld::{Configuration64, Mode, Point64, PunctureMap64};
use sphereworld_harness::batch::run_batch;
use sphereworld_harness::probe::{probe_continuity, ProbeOptions};
use sphereworld_harness::render::render_svg;
use sphereworld_harness::run::{run_prepared, setup_doc, to_json, validate_prepared, ValidationDoc};
use sphereworld_harness::{prepare, Engine, ExitCode, Failure, Overrides, PathDoc, Prepared, Scenario};

#[derive(Parser)]
#[command(name = "sphereworld-mp", version, about = "Multi-robot motion planning in sphere worlds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ScenarioArgs {
    #[arg(long, value_name = "FILE")]
    scenario: PathBuf,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario, and a path file against it when given.
    Validate {
        #[command(flatten)]
        s: ScenarioArgs,
        #[arg(long, value_name = "FILE")]
        path: Option<PathBuf>,
    },
    /// Plan and validate; writes path.json, report.json and timings.json.
    Plan {
        #[command(flatten)]
        s: ScenarioArgs,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Topological complexity of F(X_{n,m}, k), or a scenario's rule count against it.
    Tc {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_name = "FILE")]
        scenario: Option<PathBuf>,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
    },
    /// Isotopy H(., s) of the start and goal (s = 0 is the retraction).
    Retract {
        #[command(flatten)]
        s: ScenarioArgs,
        /// Isotopy parameter in [0, 1].
        #[arg(long = "s", default_value_t = 0.0)]
        param: f64,
    },
    /// Puncture set and influence radii.
    Punctures {
        #[command(flatten)]
        s: ScenarioArgs,
    },
    /// phi of the given points (default: retracted start and goal).
    Phi {
        #[command(flatten)]
        s: ScenarioArgs,
        #[arg(long, value_name = "X,Y,..")]
        point: Vec<String>,
    },
    /// phi^{-1} of the given points.
    PhiInv {
        #[command(flatten)]
        s: ScenarioArgs,
        #[arg(long, value_name = "X,Y,..")]
        point: Vec<String>,
    },
    /// Per-rule Lipschitz estimates of the planner's sections.
    ProbeContinuity {
        #[command(flatten)]
        s: ScenarioArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// SVG of a planar scenario and its path (planned unless --path is given).
    Render {
        #[command(flatten)]
        s: ScenarioArgs,
        #[arg(long, value_name = "FILE")]
        path: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Run every *.json scenario in a directory; writes summary.csv.
    Batch {
        #[arg(value_name = "DIR")]
        dir: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::new(ExitCode::Usage, msg)
}

fn load(s: &ScenarioArgs) -> Result<Prepared, Failure> {
    let scenario = Scenario::load(&s.scenario)?;
    prepare(&scenario, Overrides::from_env(s.mode)?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| usage(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_point(text: &str, dim: usize) -> Result<Point64, Failure> {
    let coords = text
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("point {text:?}: {e}")))?;
    if coords.len() != dim {
        return Err(usage(format!("point {text:?} has dimension {}, expected {dim}", coords.len())));
    }
    Ok(Point64::new(coords))
}

fn world_planner(p: &Prepared) -> Result<&sphereworld::TransportedPlanner64, Failure> {
    match &p.engine {
        Engine::World(t) => Ok(t),
        Engine::Euclidean(_) => Err(usage("this command needs a \"world\" scenario")),
    }
}

fn pmap(p: &Prepared) -> Result<&PunctureMap64, Failure> {
    Ok(world_planner(p)?.puncture_map())
}

fn cmd_validate(s: &ScenarioArgs, path: Option<&Path>) -> Result<ExitCode, Failure> {
    let p = load(s)?;
    let Some(file) = path else {
        println!("{}", to_json(&json!({ "status": "valid", "setup": setup_doc(&p) })).trim_end());
        return Ok(ExitCode::Valid);
    };
    let text = fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let doc: PathDoc = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let report = validate_prepared(&p, &doc.to_path());
    print!("{}", to_json(&ValidationDoc::from(&report)));
    Ok(if report.valid { ExitCode::Valid } else { ExitCode::ValidationFailure })
}

fn cmd_plan(s: &ScenarioArgs, out: Option<&Path>) -> Result<ExitCode, Failure> {
    let outcome = match load(s) {
        Ok(p) => run_prepared(&p),
        Err(f) if f.code == ExitCode::Usage => return Err(f),
        Err(f) => {
            eprintln!("{f}");
            if let Some(dir) = out {
                let report = json!({ "status": f.code.label(), "exit_code": f.code.code(), "message": f.message });
                write_file(&dir.join("report.json"), &to_json(&report))?;
            }
            return Ok(f.code);
        }
    };
    match out {
        Some(dir) => {
            outcome.write(dir)?;
            println!("{}", to_json(&outcome.report).trim_end());
        }
        None => match outcome.path_doc() {
            Some(doc) => print!("{}", to_json(&doc)),
            None => print!("{}", to_json(&outcome.report)),
        },
    }
    Ok(outcome.code)
}

fn cmd_tc(
    n: Option<usize>,
    m: Option<usize>,
    k: Option<usize>,
    scenario: Option<&Path>,
    mode: Option<Mode>,
) -> Result<ExitCode, Failure> {
    if let Some(file) = scenario {
        let p = load(&ScenarioArgs { scenario: file.to_path_buf(), mode })?;
        print!("{}", to_json(&setup_doc(&p)));
        return Ok(ExitCode::Valid);
    }
    let (Some(n), Some(m), Some(k)) = (n, m, k) else {
        return Err(usage("tc needs --n, --m and --k, or --scenario"));
    };
    let row = sphereworld::tc::tc_row(n, m, k).map_err(|e| usage(e.to_string()))?;
    let value = row.value(k);
    let mut doc = json!({
        "n": n, "m": m, "k": k, "tc": value,
        "row": row.to_string(), "formula": row.formula(), "condition": row.condition(),
    });
    if let Some(mode) = mode {
        let rules = match (mode, m) {
            (Mode::Strict, 0) => k * k,
            (Mode::Merged, 0) => 2 * k - 1,
            _ => sphereworld::Planner64::punctured(n, k, synthetic_punctures(n, m), mode)
                .map_err(|e| usage(e.to_string()))?
                .rule_count(),
        };
        doc["mode"] = json!(mode.to_string());
        doc["rule_count"] = json!(rules);
        doc["gap"] = json!(rules as i64 - value as i64);
    }
    print!("{}", to_json(&doc));
    Ok(ExitCode::Valid)
}

/// Punctures on distinct spread levels, as in a generic world.
fn synthetic_punctures(n: usize, m: usize) -> Vec<Point64> {
    (0..m)
        .map(|i| {
            let mut p = Point64::origin(n);
            p.coords_mut()[0] = i as f64;
            p
        })
        .collect()
}

fn cmd_retract(s: &ScenarioArgs, param: f64) -> Result<ExitCode, Failure> {
    let p = load(s)?;
    let atlas = world_planner(&p)?.atlas();
    let map = |c: &Configuration64| {
        atlas.config_isotopy(c, param).map(|c| c.to_f64()).map_err(|e| usage(e.to_string()))
    };
    let doc = json!({
        "s": param,
        "outer_width": atlas.outer_width(),
        "obstacle_widths": atlas.obstacle_widths(),
        "start": map(&p.start)?,
        "goal": map(&p.goal)?,
    });
    print!("{}", to_json(&doc));
    Ok(ExitCode::Valid)
}

fn cmd_punctures(s: &ScenarioArgs) -> Result<ExitCode, Failure> {
    let p = load(s)?;
    let doc = match &p.engine {
        Engine::World(t) => json!({
            "punctures": t.puncture_map().punctures().iter().map(Point64::to_f64).collect::<Vec<_>>(),
            "influence_radii": t.puncture_map().influence_radii(),
        }),
        Engine::Euclidean(planner) => json!({
            "punctures": planner.punctures().iter().map(Point64::to_f64).collect::<Vec<_>>(),
        }),
    };
    print!("{}", to_json(&doc));
    Ok(ExitCode::Valid)
}

fn cmd_phi(s: &ScenarioArgs, points: &[String], inverse: bool) -> Result<ExitCode, Failure> {
    let p = load(s)?;
    let map = pmap(&p)?;
    let dim = p.engine.dim();
    let inputs: Vec<Point64> = if points.is_empty() {
        if inverse {
            return Err(usage("phi-inv needs at least one --point"));
        }
        let atlas = world_planner(&p)?.atlas();
        let mut v = Vec::new();
        for c in [&p.start, &p.goal] {
            let r = atlas.config_retract(c).map_err(|e| usage(e.to_string()))?;
            v.extend(r.into_points());
        }
        v
    } else {
        points.iter().map(|t| parse_point(t, dim)).collect::<Result<_, _>>()?
    };
    let mut rows = Vec::new();
    for x in &inputs {
        let y = if inverse { map.inverse(x) } else { map.forward(x) };
        rows.push(match y {
            Ok(y) => json!({ "input": x.to_f64(), "output": y.to_f64() }),
            Err(e) => json!({ "input": x.to_f64(), "error": e.to_string() }),
        });
    }
    print!("{}", to_json(&rows));
    Ok(ExitCode::Valid)
}

fn cmd_probe(s: &ScenarioArgs, trials: usize, delta: f64, out: Option<&Path>) -> Result<ExitCode, Failure> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(usage("--delta must be positive"));
    }
    let p = load(s)?;
    let report = probe_continuity(&p.engine, ProbeOptions { trials, delta, seed: p.seed });
    let text = to_json(&report);
    match out {
        Some(dir) => write_file(&dir.join("continuity.json"), &text)?,
        None => print!("{text}"),
    }
    Ok(if report.clean || report.experimental { ExitCode::Valid } else { ExitCode::ValidationFailure })
}

fn cmd_render(s: &ScenarioArgs, path: Option<&Path>, out: Option<&Path>) -> Result<ExitCode, Failure> {
    let p = load(s)?;
    let (path, code) = match path {
        Some(file) => {
            let text = fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let doc: PathDoc =
                serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            (Some(doc.to_path()), ExitCode::Valid)
        }
        None => {
            let outcome = run_prepared(&p);
            (outcome.path, outcome.code)
        }
    };
    let svg = render_svg(&p, path.as_ref()).map_err(|e| usage(e.to_string()))?;
    match out {
        Some(dir) => write_file(&dir.join("scene.svg"), &svg)?,
        None => print!("{svg}"),
    }
    Ok(code)
}

fn cmd_batch(dir: &Path, out: &Path, parallelism: usize, mode: Option<Mode>) -> Result<ExitCode, Failure> {
    let summary = run_batch(dir, out, parallelism, Overrides::from_env(mode)?)?;
    let failed = summary.rows.iter().filter(|r| !r.valid).count();
    println!("{} scenarios, {} failed; summary in {}", summary.rows.len(), failed, out.join("summary.csv").display());
    Ok(summary.code)
}

fn dispatch(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Validate { s, path } => cmd_validate(&s, path.as_deref()),
        Command::Plan { s, out } => cmd_plan(&s, out.as_deref()),
        Command::Tc { n, m, k, scenario, mode } => cmd_tc(n, m, k, scenario.as_deref(), mode),
        Command::Retract { s, param } => cmd_retract(&s, param),
        Command::Punctures { s } => cmd_punctures(&s),
        Command::Phi { s, point } => cmd_phi(&s, &point, false),
        Command::PhiInv { s, point } => cmd_phi(&s, &point, true),
        Command::ProbeContinuity { s, trials, delta, out } => cmd_probe(&s, trials, delta, out.as_deref()),
        Command::Render { s, path, out } => cmd_render(&s, path.as_deref(), out.as_deref()),
        Command::Batch { dir, out, parallelism, mode } => cmd_batch(&dir, &out, parallelism, mode),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Usage.code() } else { 0 };
            let _ = e.print();
            process::exit(code);
        }
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("{f}");
            f.code
        }
    };
    process::exit(code.code());
}
