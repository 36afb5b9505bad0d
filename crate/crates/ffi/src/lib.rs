//! C ABI for the engine.
//!
//! Every fallible function returns a `TsStatus`. Results are written through
//! out-pointers, and the message for the last failure on the calling thread
//! is available from `ts_last_error`. Handles and strings returned by the
//! library are owned by the caller and released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use trisolve::classification::{is_feasible_pair, position_class, ClassSignature};
use trisolve::search::{count_solutions, player_odds, shortest_solution, Player, SearchBudget};
use trisolve::{constructive, sax, Error, HoleCoord, Position, Solution};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Infeasible = 3,
    Unsolvable = 4,
    IllegalMove = 5,
    BudgetExhausted = 6,
    Internal = 7,
}

/// Parity class of a position. A `PEGk` position can only end with its
/// last peg on a class `k` hole.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsClass {
    Empty = 0,
    Peg0 = 1,
    Peg1 = 2,
    Peg2 = 3,
}

/// Opaque board position.
pub struct TsPosition(Position);

/// Opaque solution.
pub struct TsSolution(Solution);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_for(e: &Error) -> TsStatus {
    match e {
        Error::Infeasible(_) => TsStatus::Infeasible,
        Error::Unsolvable(_) => TsStatus::Unsolvable,
        Error::Budget { .. } => TsStatus::BudgetExhausted,
        Error::IllegalJump { .. } | Error::NotAJump(..) | Error::OffBoard(..) | Error::BrokenChain(_) => TsStatus::IllegalMove,
        Error::Stall { .. } | Error::Purge(_) | Error::Data { .. } | Error::Io(_) => TsStatus::Internal,
        _ => TsStatus::InvalidArgument,
    }
}

/// Run `f`, turning errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), TsStatus>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            TsStatus::Internal
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, TsStatus>;
}

impl<T> OrStatus<T> for trisolve::Result<T> {
    fn or_status(self) -> Result<T, TsStatus> {
        self.map_err(|e| {
            set_error(&e.to_string());
            status_for(&e)
        })
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, TsStatus> {
    if p.is_null() {
        set_error("null pointer");
        return Err(TsStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        TsStatus::InvalidArgument
    })
}

unsafe fn hole(n: usize, p: *const c_char) -> Result<HoleCoord, TsStatus> {
    let c = HoleCoord::from_alpha(text(p)?).or_status()?;
    if !c.is_valid(n) {
        return Err(Error::OffBoard(c.to_string(), n)).or_status();
    }
    Ok(c)
}

unsafe fn optional_hole(n: usize, p: *const c_char) -> Result<Option<HoleCoord>, TsStatus> {
    if p.is_null() {
        Ok(None)
    } else {
        hole(n, p).map(Some)
    }
}

fn non_null<T>(p: *const T) -> Result<(), TsStatus> {
    if p.is_null() {
        set_error("null pointer");
        Err(TsStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), TsStatus> {
    non_null(out)?;
    out.write(v);
    Ok(())
}

/// Engine version, a static string.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    static V: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    V.as_ptr().cast()
}

/// Message for the last failure on this thread. Valid until the next call
/// into the library from the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by the library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Full board `T_n` with one hole at `vacancy` (e.g. `"a1"`).
///
/// # Safety
/// `vacancy` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_position_new(n: usize, vacancy: *const c_char, out: *mut *mut TsPosition) -> TsStatus {
    guard(|| {
        let v = hole(n, vacancy)?;
        write(out, Box::into_raw(Box::new(TsPosition(Position::with_vacancy(n, v)))))
    })
}

/// Position from a hole list or a row-by-row `o`/`.` picture.
///
/// # Safety
/// `position` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_position_parse(n: usize, position: *const c_char, out: *mut *mut TsPosition) -> TsStatus {
    guard(|| {
        let p = Position::parse_text(n, text(position)?).or_status()?;
        write(out, Box::into_raw(Box::new(TsPosition(p))))
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ts_position_free(p: *mut TsPosition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of pegs, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_position_peg_count(p: *const TsPosition) -> usize {
    p.as_ref().map_or(0, |p| p.0.count())
}

/// Number of legal single jumps, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_position_legal_jump_count(p: *const TsPosition) -> usize {
    p.as_ref().map_or(0, |p| p.0.legal_jumps().len())
}

/// Play one move such as `"a3-a1"` or `"a1-a3-c3"`. The position is left
/// unchanged when the move is illegal.
///
/// # Safety
/// `p` must be a live handle and `mv` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ts_position_apply(p: *mut TsPosition, mv: *const c_char) -> TsStatus {
    guard(|| {
        non_null(p)?;
        let pos = &mut (*p).0;
        let moves = trisolve::board::parse_moves(text(mv)?).or_status()?;
        let [m] = moves.as_slice() else {
            set_error("expected exactly one move");
            return Err(TsStatus::InvalidArgument);
        };
        *pos = pos.apply_move(m).or_status()?;
        Ok(())
    })
}

/// Occupied holes as a space-separated string; free with `ts_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_position_holes(p: *const TsPosition, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        non_null(p)?;
        let s = CString::new((*p).0.to_alpha_list().join(" ")).expect("no NUL in hole names");
        write(out, s.into_raw())
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_position_class(p: *const TsPosition, out: *mut TsClass) -> TsStatus {
    guard(|| {
        non_null(p)?;
        let c = match position_class(&(*p).0) {
            ClassSignature::Empty => TsClass::Empty,
            ClassSignature::Peg0 => TsClass::Peg0,
            ClassSignature::Peg1 => TsClass::Peg1,
            ClassSignature::Peg2 => TsClass::Peg2,
        };
        write(out, c)
    })
}

/// SAX count of a T5 position.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_sax_count(p: *const TsPosition, out: *mut i32) -> TsStatus {
    guard(|| {
        non_null(p)?;
        write(out, sax::sax_count(&(*p).0).or_status()?.total)
    })
}

/// Whether the vacancy-to-finish problem passes the parity test.
///
/// # Safety
/// Strings must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_is_feasible(n: usize, vacancy: *const c_char, finish: *const c_char, out: *mut bool) -> TsStatus {
    guard(|| {
        let (s, f) = (hole(n, vacancy)?, hole(n, finish)?);
        write(out, is_feasible_pair(n, s, f).or_status()?)
    })
}

/// Constructive solution; `finish` may be null for "anywhere".
///
/// # Safety
/// `vacancy` must be NUL-terminated, `finish` null or NUL-terminated, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_solve(n: usize, vacancy: *const c_char, finish: *const c_char, out: *mut *mut TsSolution) -> TsStatus {
    guard(|| {
        let s = hole(n, vacancy)?;
        let f = optional_hole(n, finish)?;
        let sol = constructive::solve(n, s, f).or_status()?;
        write(out, Box::into_raw(Box::new(TsSolution(sol))))
    })
}

/// Fewest-move solution within `node_limit` search nodes. Either end may be
/// null. No solution under the budget gives `BudgetExhausted`.
///
/// # Safety
/// Strings must be null or NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_shortest(
    n: usize,
    vacancy: *const c_char,
    finish: *const c_char,
    node_limit: u64,
    out: *mut *mut TsSolution,
) -> TsStatus {
    guard(|| {
        non_null(out)?;
        let s = optional_hole(n, vacancy)?;
        let f = optional_hole(n, finish)?;
        let budget = SearchBudget { node_limit, ..Default::default() };
        let r = shortest_solution(n, s, f, &budget).or_status()?;
        match r.witness {
            Some(w) => write(out, Box::into_raw(Box::new(TsSolution(w)))),
            None if r.budget_exhausted => Err(Error::Budget { nodes: r.nodes }).or_status(),
            None => Err(Error::Unsolvable(format!("T{n}"))).or_status(),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ts_solution_free(s: *mut TsSolution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of moves, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_solution_move_count(s: *const TsSolution) -> usize {
    s.as_ref().map_or(0, |s| s.0.moves.len())
}

/// Solution text such as `"a3-a1, c3-a3, ..."`; free with `ts_string_free`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_solution_text(s: *const TsSolution, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        non_null(s)?;
        write(out, CString::new((*s).0.text()).expect("no NUL in solution").into_raw())
    })
}

/// Finishing hole of a solution; free with `ts_string_free`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_solution_finish(s: *const TsSolution, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        non_null(s)?;
        write(out, CString::new((*s).0.finish.to_string()).expect("no NUL in hole").into_raw())
    })
}

/// Number of jump sequences from `vacancy` to one peg at `finish`.
/// Saturates at `UINT64_MAX`.
///
/// # Safety
/// Strings must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_count_solutions(n: usize, vacancy: *const c_char, finish: *const c_char, out: *mut u64) -> TsStatus {
    guard(|| {
        let (s, f) = (hole(n, vacancy)?, hole(n, finish)?);
        let c = count_solutions(n, s, Some(f)).or_status()?;
        write(out, u64::try_from(c).unwrap_or(u64::MAX))
    })
}

/// `N` in "1 in N" for a random player on T5; `player` is 'A', 'B' or 'C'.
///
/// # Safety
/// `vacancy` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_player_odds(vacancy: *const c_char, player: c_char, out: *mut u64) -> TsStatus {
    guard(|| {
        let v = hole(5, vacancy)?;
        let p: Player = (player as u8 as char).to_string().parse().or_status()?;
        write(out, player_odds(v, p).or_status()?.odds_rounded)
    })
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn null_out_is_reported() {
        let s = unsafe { ts_position_new(5, c"a1".as_ptr(), ptr::null_mut()) };
        assert_eq!(s, TsStatus::NullPointer);
    }
}
