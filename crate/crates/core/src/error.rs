use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("board side {0} is outside 2..=26")]
    BoardSize(usize),
    #[error("operation needs n >= {min}, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("operation supports n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("malformed hole '{0}'")]
    BadHole(String),
    #[error("coordinate ({0},{1}) has no alphanumeric name")]
    Unrepresentable(i32, i32),
    #[error("hole {0} is not on T{1}")]
    OffBoard(String, usize),
    #[error("{0} to {1} is not a jump")]
    NotAJump(String, String),
    #[error("move has no jumps")]
    EmptyMove,
    #[error("jumps {0} do not chain")]
    BrokenChain(String),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("illegal jump {jump} at jump {index}")]
    IllegalJump { jump: String, index: usize },
    #[error("replay failed at move {move_index}, jump {jump_index}")]
    ReplayFailed { move_index: usize, jump_index: usize },
    #[error("replay ends with {pegs} pegs, not one at the finish")]
    NotSolved { pegs: usize },
    #[error("problem is infeasible: {0}")]
    Infeasible(String),
    #[error("no solution exists: {0}")]
    Unsolvable(String),
    #[error("position is not on T5")]
    WrongShape,
    #[error("search budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },
    #[error("scheduler stalled with {pegs} pegs after {jumps} jumps")]
    Stall { pegs: usize, jumps: usize },
    #[error("purge script failed: {0}")]
    Purge(String),
    #[error("data file line {line}: {msg}")]
    Data { line: usize, msg: String },
    #[error("unknown {kind} '{value}'")]
    Unknown { kind: &'static str, value: String },
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
