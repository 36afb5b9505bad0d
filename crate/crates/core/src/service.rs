//! Stateless JSON handlers and the HTTP server that exposes them.

use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::board::{parse_moves, BoardShape, HoleCoord, Position, Solution};
use crate::classification::{hole_class, position_class, ClassSignature};
use crate::constructive;
use crate::error::{Error, Result};
use crate::library::Library;
use crate::sax::{classify_jump, fe_count, jump_sax_delta, sax_count, FeBreakdown, JumpCategory, SaxBreakdown};
use crate::search::{solve_from, SearchBudget};
use crate::ENGINE_VERSION;

/// Largest board the service accepts.
pub const MAX_SERVICE_N: usize = 24;

/// Largest board on which hints come from exhaustive search.
pub const EXACT_HINT_N: usize = 6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JumpInfo {
    pub jump: String,
    pub category: Option<JumpCategory>,
    pub sax_delta: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub pegs: usize,
    pub class: ClassSignature,
    pub feasible_targets: Vec<u8>,
    pub legal_jumps: Vec<JumpInfo>,
    pub sax: Option<SaxBreakdown>,
    pub fe: Option<FeBreakdown>,
}

pub fn analyze(p: &Position) -> Result<AnalyzeReport> {
    let t5 = p.n() == 5;
    let class = position_class(p);
    let mut legal_jumps = Vec::new();
    for j in p.legal_jumps() {
        legal_jumps.push(JumpInfo {
            jump: j.to_string(),
            category: if t5 { Some(classify_jump(p, &j)?) } else { None },
            sax_delta: if t5 { Some(jump_sax_delta(p, &j)?) } else { None },
        });
    }
    Ok(AnalyzeReport {
        n: p.n(),
        pegs: p.count(),
        class,
        feasible_targets: class.finishing_classes(),
        legal_jumps,
        sax: if t5 { Some(sax_count(p)?) } else { None },
        fe: if t5 { Some(fe_count(p)?) } else { None },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hint {
    /// `None` when no jump is legal.
    pub jump: Option<String>,
    pub exact: bool,
    /// Known only when `exact`.
    pub winnable: Option<bool>,
}

/// Next jump towards one peg (at `goal` if given). Exact on small boards,
/// otherwise the jump leaving the most follow-up jumps.
pub fn hint(p: &Position, goal: Option<HoleCoord>, budget: &SearchBudget) -> Result<Hint> {
    let legal = p.legal_jumps();
    if p.n() <= EXACT_HINT_N {
        if let Some(path) = solve_from(p, goal, budget)? {
            return Ok(Hint { jump: path.first().map(|j| j.to_string()), exact: true, winnable: Some(true) });
        }
        return Ok(Hint { jump: legal.first().map(|j| j.to_string()), exact: true, winnable: Some(false) });
    }
    let corner = |c: HoleCoord| {
        let n = p.n() as i32 - 1;
        (c.x, c.y) == (0, 0) || (c.x, c.y) == (0, n) || (c.x, c.y) == (n, n)
    };
    let best = legal.iter().max_by_key(|j| {
        let next = p.apply_jump(j).expect("legal jump");
        (!corner(j.to), next.legal_jumps().len(), std::cmp::Reverse(j.to_string()))
    });
    Ok(Hint { jump: best.map(|j| j.to_string()), exact: false, winnable: None })
}

/// Request handler. The optional cache is consulted before solving.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    pub cache: Option<Library>,
    pub hint_budget: SearchBudget,
}

impl Engine {
    pub fn new(cache: Option<Library>) -> Engine {
        let hint_budget = SearchBudget { node_limit: 20_000_000, time_limit: Some(Duration::from_secs(10)), ..Default::default() };
        Engine { cache, hint_budget }
    }

    pub fn solve(&self, n: usize, vacancy: HoleCoord, finish: Option<HoleCoord>) -> Result<Solution> {
        if let (Some(lib), Some(f)) = (&self.cache, finish) {
            if let Some(sol) = lib.lookup(n, vacancy, f) {
                return Ok(sol);
            }
        }
        constructive::solve(n, vacancy, finish)
    }

    pub fn handle(&self, method: &str, path: &str, body: &[u8]) -> Response {
        let result = match (method, path.trim_end_matches('/')) {
            ("GET", p) if p.starts_with("/board/") => board(&p["/board/".len()..]),
            ("POST", "/analyze") => parse::<PositionReq>(body).and_then(|r| {
                let report = analyze(&r.position()?).map_err(Failure::from)?;
                Ok(serde_json::to_value(report).expect("serializable"))
            }),
            ("POST", "/move") => parse::<MoveReq>(body).and_then(|r| self.do_move(r)),
            ("POST", "/hint") => parse::<HintReq>(body).and_then(|r| self.do_hint(r)),
            ("POST", "/solve") => parse::<SolveReq>(body).and_then(|r| self.do_solve(r)),
            (_, "/analyze" | "/move" | "/hint" | "/solve") => Err(Failure { status: 405, message: format!("{method} not allowed") }),
            _ => Err(Failure { status: 404, message: format!("no route {path}") }),
        };
        let (status, mut body) = match result {
            Ok(v) => (200, v),
            Err(f) => (f.status, json!({ "error": f.message })),
        };
        body["engine_version"] = json!(ENGINE_VERSION);
        Response { status, body }
    }

    fn do_move(&self, r: MoveReq) -> std::result::Result<Value, Failure> {
        let p = PositionReq { n: r.n, occupied: r.occupied }.position()?;
        let moves = parse_moves(&r.r#move).map_err(Failure::from)?;
        let [m] = moves.as_slice() else {
            return Err(Failure { status: 400, message: format!("expected one move, got {}", moves.len()) });
        };
        let next = p.apply_move(m).map_err(Failure::from)?;
        Ok(json!({ "n": r.n, "move": m.to_string(), "occupied": next.to_alpha_list(), "pegs": next.count() }))
    }

    fn do_hint(&self, r: HintReq) -> std::result::Result<Value, Failure> {
        let p = PositionReq { n: r.n, occupied: r.occupied }.position()?;
        let goal = match r.goal.as_deref() {
            None | Some("any") => None,
            Some(h) => Some(hole(h, r.n)?),
        };
        let h = hint(&p, goal, &self.hint_budget).map_err(Failure::from)?;
        Ok(serde_json::to_value(h).expect("serializable"))
    }

    fn do_solve(&self, r: SolveReq) -> std::result::Result<Value, Failure> {
        check_n(r.n)?;
        let v = hole(&r.vacancy, r.n)?;
        let f = r.finish.as_deref().map(|f| hole(f, r.n)).transpose()?;
        let sol = self.solve(r.n, v, f).map_err(Failure::from)?;
        Ok(json!({
            "n": r.n,
            "vacancy": sol.vacancy.to_string(),
            "finish": sol.finish.to_string(),
            "moves": sol.moves.len(),
            "jumps": sol.jump_count(),
            "solution": sol.text(),
        }))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Response {
    pub status: u16,
    pub body: Value,
}

#[derive(Debug)]
struct Failure {
    status: u16,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e {
            Error::Budget { .. } => 504,
            Error::BoardSize(_)
            | Error::TooSmall { .. }
            | Error::TooLarge { .. }
            | Error::BadHole(_)
            | Error::Unrepresentable(..)
            | Error::Syntax { .. }
            | Error::EmptyMove
            | Error::Unknown { .. } => 400,
            _ => 422,
        };
        Failure { status, message: e.to_string() }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(body: &[u8]) -> std::result::Result<T, Failure> {
    serde_json::from_slice(body).map_err(|e| Failure { status: 400, message: format!("malformed request: {e}") })
}

fn check_n(n: usize) -> std::result::Result<BoardShape, Failure> {
    if n > MAX_SERVICE_N {
        return Err(Error::TooLarge { n, max: MAX_SERVICE_N }.into());
    }
    BoardShape::new(n).map_err(Failure::from)
}

fn hole(text: &str, n: usize) -> std::result::Result<HoleCoord, Failure> {
    let c: HoleCoord = text.parse().map_err(|e: Error| Failure { status: 400, message: e.to_string() })?;
    if !c.is_valid(n) {
        return Err(Error::OffBoard(text.to_string(), n).into());
    }
    Ok(c)
}

fn board(n: &str) -> std::result::Result<Value, Failure> {
    let n: usize = n.parse().map_err(|_| Failure { status: 400, message: format!("bad board size '{n}'") })?;
    let shape = check_n(n)?;
    let holes: Vec<Value> = shape
        .holes()
        .map(|c| json!({ "hole": c.to_string(), "x": c.x, "y": c.y, "class": hole_class(c) }))
        .collect();
    Ok(json!({ "n": n, "holes": holes }))
}

#[derive(Deserialize)]
struct PositionReq {
    n: usize,
    occupied: Vec<String>,
}

impl PositionReq {
    fn position(&self) -> std::result::Result<Position, Failure> {
        check_n(self.n)?;
        let holes = self.occupied.iter().map(|h| hole(h, self.n)).collect::<std::result::Result<Vec<_>, _>>()?;
        Position::from_holes(self.n, holes).map_err(Failure::from)
    }
}

#[derive(Deserialize)]
struct MoveReq {
    n: usize,
    occupied: Vec<String>,
    r#move: String,
}

#[derive(Deserialize)]
struct HintReq {
    n: usize,
    occupied: Vec<String>,
    goal: Option<String>,
}

#[derive(Deserialize)]
struct SolveReq {
    n: usize,
    vacancy: String,
    finish: Option<String>,
}

/// Serve until the process exits, answering from `threads` workers.
pub fn serve(addr: &str, engine: Engine, threads: usize) -> Result<()> {
    let server = Arc::new(tiny_http::Server::http(addr).map_err(|e| Error::Io(e.to_string()))?);
    let engine = Arc::new(engine);
    let workers: Vec<_> = (0..threads.max(1))
        .map(|_| {
            let (server, engine) = (Arc::clone(&server), Arc::clone(&engine));
            std::thread::spawn(move || {
                for mut req in server.incoming_requests() {
                    let mut body = Vec::new();
                    let resp = match req.as_reader().read_to_end(&mut body) {
                        Ok(_) => engine.handle(req.method().as_str(), req.url(), &body),
                        Err(e) => Response { status: 400, body: json!({ "error": e.to_string(), "engine_version": ENGINE_VERSION }) },
                    };
                    let header = tiny_http::Header::from_bytes("Content-Type", "application/json").expect("static header");
                    let out = tiny_http::Response::from_string(resp.body.to_string())
                        .with_status_code(resp.status)
                        .with_header(header);
                    let _ = req.respond(out);
                }
            })
        })
        .collect();
    for w in workers {
        let _ = w.join();
    }
    Ok(())
}
