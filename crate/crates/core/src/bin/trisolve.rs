use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use trisolve::classification::{
    bounds, distinct_feasible_pairs, distinct_feasible_vacancies, feasible_pair_count_formula, is_feasible_pair,
    is_feasible_vacancy, position_class,
};
use trisolve::library::Library;
use trisolve::search::{count_solutions, player_odds, shortest_solution, solution_equivalence_classes, Player, SearchBudget};
use trisolve::service::{analyze, serve, Engine};
use trisolve::{BoardShape, Error, HoleCoord, Position, Solution, ENGINE_VERSION};

#[derive(Parser)]
#[command(name = "trisolve", version, about = "Triangular peg solitaire solver")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class and feasibility of a single-vacancy start.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vacancy: HoleCoord,
    },
    /// Feasible vacancies (or pairs) up to symmetry.
    Feasible {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pairs: bool,
    },
    /// Constructive solution to one peg, optionally at a given hole.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vacancy: HoleCoord,
        #[arg(long)]
        finish: Option<HoleCoord>,
        #[arg(long, env = "TRISOLVE_CACHE")]
        cache: Option<PathBuf>,
    },
    /// Fewest-move solution by exhaustive search.
    Shortest {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vacancy: Option<HoleCoord>,
        #[arg(long)]
        finish: Option<HoleCoord>,
        #[arg(long)]
        max_moves: Option<usize>,
        /// Node budget.
        #[arg(long, default_value_t = 60_000_000)]
        budget: u64,
        /// Time limit in seconds.
        #[arg(long)]
        seconds: Option<u64>,
    },
    /// Number of jump sequences solving a problem.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vacancy: HoleCoord,
        #[arg(long)]
        finish: HoleCoord,
        /// Also group the solutions into equivalence classes.
        #[arg(long)]
        classes: bool,
    },
    /// Chance that a random player clears T5.
    Odds {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long)]
        vacancy: HoleCoord,
        #[arg(long)]
        player: Player,
    },
    /// SAX and F-E counts of a T5 position with per-jump effects.
    Sax {
        #[arg(long)]
        position: String,
    },
    /// Replay a solution and report where it fails.
    Replay {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        solution: String,
    },
    /// Lower and upper bounds on the shortest solution.
    Bounds {
        #[arg(long)]
        n: usize,
    },
    /// Write a solution cache for every feasible pair up to `--max-n`.
    GenCache {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Run the JSON service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, env = "TRISOLVE_CACHE")]
        cache: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        threads: usize,
    },
}

/// Outcome of a command: text for humans, JSON for `--json`.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, code: 0 }
    }
}

fn code_for(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 3,
        Error::Infeasible(_)
        | Error::Unsolvable(_)
        | Error::ReplayFailed { .. }
        | Error::NotSolved { .. }
        | Error::IllegalJump { .. }
        | Error::Stall { .. } => 1,
        _ => 2,
    }
}

fn load_cache(path: Option<&PathBuf>) -> Result<Option<Library>, Error> {
    let Some(path) = path else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Library::parse(&text).map(Some)
}

fn run(cmd: Cmd) -> Result<Report, Error> {
    match cmd {
        Cmd::Classify { n, vacancy } => {
            let feasible = is_feasible_vacancy(n, vacancy)?;
            let start = Position::with_vacancy(n, vacancy);
            let class = position_class(&start);
            let finishes: Vec<String> = BoardShape::new(n)?
                .holes()
                .filter(|&f| is_feasible_pair(n, vacancy, f).unwrap_or(false))
                .map(|f| f.to_string())
                .collect();
            let text = format!(
                "T{n} vacancy {vacancy}: class {class}, {}\nfeasible finishes: {}",
                if feasible { "feasible" } else { "infeasible" },
                finishes.join(" ")
            );
            let json = json!({ "n": n, "vacancy": vacancy.to_string(), "class": class, "vector": class.vector(),
                "feasible": feasible, "feasible_finishes": finishes });
            Ok(Report { text, json, code: if feasible { 0 } else { 1 } })
        }
        Cmd::Feasible { n, pairs } => {
            if pairs {
                let list: Vec<String> = distinct_feasible_pairs(n).iter().map(|(s, f)| format!("{s}-{f}")).collect();
                let formula = feasible_pair_count_formula(n);
                let text = format!("T{n}: {} distinct feasible pairs (formula {formula})\n{}", list.len(), list.join(" "));
                Ok(Report::ok(text, json!({ "n": n, "count": list.len(), "formula": formula, "pairs": list })))
            } else {
                let list: Vec<String> = distinct_feasible_vacancies(n).iter().map(|c| c.to_string()).collect();
                let text = format!("T{n}: {} distinct feasible vacancies\n{}", list.len(), list.join(" "));
                Ok(Report::ok(text, json!({ "n": n, "count": list.len(), "vacancies": list })))
            }
        }
        Cmd::Solve { n, vacancy, finish, cache } => {
            let engine = Engine::new(load_cache(cache.as_ref())?);
            let sol = engine.solve(n, vacancy, finish)?;
            let json = json!({ "n": n, "vacancy": sol.vacancy.to_string(), "finish": sol.finish.to_string(),
                "moves": sol.moves.len(), "jumps": sol.jump_count(), "solution": sol.text() });
            Ok(Report::ok(sol.text(), json))
        }
        Cmd::Shortest { n, vacancy, finish, max_moves, budget, seconds } => {
            let budget = SearchBudget { max_moves, node_limit: budget, time_limit: seconds.map(Duration::from_secs) };
            let r = shortest_solution(n, vacancy, finish, &budget)?;
            let (text, code) = match (&r.moves, &r.witness) {
                (Some(k), Some(w)) => (format!("{k} moves: {w}"), 0),
                _ if r.budget_exhausted => (format!("budget exhausted after {} nodes; no solution below {} moves", r.nodes, r.lower_bound), 3),
                _ => (format!("no solution within {} moves", r.lower_bound - 1), 1),
            };
            Ok(Report { text, json: serde_json::to_value(&r).expect("serializable"), code })
        }
        Cmd::Count { n, vacancy, finish, classes } => {
            let count = count_solutions(n, vacancy, Some(finish))?;
            let mut json = json!({ "n": n, "vacancy": vacancy.to_string(), "finish": finish.to_string(), "count": count.to_string() });
            let mut text = format!("{count} solutions");
            if classes {
                let eq = solution_equivalence_classes(n, vacancy, finish)?;
                text += &format!(", {} classes ({} by directed jumps)", eq.undirected, eq.directed);
                json["classes"] = json!(eq.undirected);
                json["directed_classes"] = json!(eq.directed);
            }
            Ok(Report::ok(text, json))
        }
        Cmd::Odds { n, vacancy, player } => {
            if n != 5 {
                return Err(Error::WrongShape);
            }
            let r = player_odds(vacancy, player)?;
            let text = format!("1 in {} ({})", r.odds_rounded, r.probability);
            let json = json!({ "vacancy": vacancy.to_string(), "player": format!("{player:?}"),
                "probability": r.probability.to_string(), "odds": r.odds_rounded });
            Ok(Report::ok(text, json))
        }
        Cmd::Sax { position } => {
            let p = Position::parse_text(5, &position)?;
            let a = analyze(&p)?;
            let (sax, fe) = (a.sax.expect("T5"), a.fe.expect("T5"));
            let mut text = format!("SAX {} (S {} A {} X {}), F-E {} (F {} E {})", sax.total, sax.s, sax.a, sax.x, fe.total, fe.f, fe.e);
            for j in &a.legal_jumps {
                text += &format!("\n{} {:?} {:+}", j.jump, j.category.expect("T5"), j.sax_delta.expect("T5"));
            }
            Ok(Report::ok(text, serde_json::to_value(&a).expect("serializable")))
        }
        Cmd::Replay { n, solution } => {
            let sol = Solution::parse(n, &solution)?;
            let (text, failure) = match sol.replay() {
                Err(f) => (format!("illegal jump at move {} (jump {})", f.move_index + 1, f.jump_index + 1), Some(f.move_index + 1)),
                Ok(end) if end.count() == 1 => (format!("valid: {} moves, {} to {}", sol.moves.len(), sol.vacancy, sol.finish), None),
                Ok(end) => (format!("incomplete after move {}: {} pegs remain", sol.moves.len(), end.count()), Some(sol.moves.len() + 1)),
            };
            let json = json!({ "n": n, "valid": failure.is_none(), "failing_move": failure, "moves": sol.moves.len() });
            Ok(Report { text, json, code: if failure.is_none() { 0 } else { 1 } })
        }
        Cmd::Bounds { n } => {
            let b = bounds(n)?;
            let upper = b.upper.map(|u| u.to_string()).unwrap_or_else(|| "unknown".into());
            Ok(Report::ok(format!("T{n}: {} <= S({n}) <= {upper}", b.lower), serde_json::to_value(b).expect("serializable")))
        }
        Cmd::GenCache { out, max_n } => {
            let mut text = String::from("# n;vacancy;finish;moves\n");
            let mut count = 0;
            for sol in Library::builtin().iter() {
                text += &format!("{};{};{};{}\n", sol.n, sol.vacancy, sol.finish, sol.text());
                count += 1;
            }
            for n in 9..=max_n {
                for (s, f) in distinct_feasible_pairs(n) {
                    let sol = trisolve::constructive::solve_pair(n, s, f)?;
                    text += &format!("{n};{s};{f};{}\n", sol.text());
                    count += 1;
                }
            }
            std::fs::write(&out, text).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
            Ok(Report::ok(format!("wrote {count} solutions to {}", out.display()), json!({ "solutions": count })))
        }
        Cmd::Serve { port, host, cache, threads } => {
            let engine = Engine::new(load_cache(cache.as_ref())?);
            let addr = format!("{host}:{port}");
            eprintln!("trisolve {ENGINE_VERSION} listening on http://{addr}");
            serve(&addr, engine, threads)?;
            Ok(Report::ok(String::new(), Value::Null))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli.cmd) {
        Ok(r) => {
            let out = if json { serde_json::to_string_pretty(&r.json).expect("serializable") } else { r.text };
            if !out.is_empty() {
                // A closed pipe (e.g. `| head`) is not an error worth reporting.
                let _ = writeln!(std::io::stdout(), "{out}");
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            if json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code_for(&e))
        }
    }
}
