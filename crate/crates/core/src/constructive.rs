//! Fast non-search solver: a small solved sub-board plus purges that clear
//! the rest of the board, interleaved by the scheduler.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::board::{BoardShape, HoleCoord, Jump, Position, Solution, Transform};
use crate::classification::{is_feasible_pair, is_feasible_vacancy};
use crate::error::{Error, Result};
use crate::library::Library;
use crate::purge::{band_purges_with, edge_row_purges, schedule, CatalystChoice, Frame, PlacedPurge};

/// A triangle `T_size` inside the board with its top corner at `anchor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubBoard {
    pub size: usize,
    pub anchor: HoleCoord,
}

impl SubBoard {
    pub fn contains(&self, c: HoleCoord) -> bool {
        let (x, y) = (c.x - self.anchor.x, c.y - self.anchor.y);
        0 <= x && x <= y && y < self.size as i32
    }

    pub fn to_local(&self, c: HoleCoord) -> HoleCoord {
        c.offset(-self.anchor.x, -self.anchor.y)
    }

    pub fn to_global(&self, c: HoleCoord) -> HoleCoord {
        c.offset(self.anchor.x, self.anchor.y)
    }

    /// Holes between this triangle and the left, right and bottom board edges.
    pub fn gaps(&self, n: usize) -> (i32, i32, i32) {
        let (ax, ay) = (self.anchor.x, self.anchor.y);
        (ax, ay - ax, n as i32 - self.size as i32 - ay)
    }
}

/// One way to grow the current triangle by three rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Growth {
    Bottom,
    Left,
    Right,
}

impl Growth {
    /// Frame of the enlarged triangle in which the new band is the bottom
    /// three rows, and the enlarged triangle itself.
    fn step(self, b: SubBoard) -> (Frame, SubBoard) {
        let k = b.size + 3;
        let (ax, ay) = (b.anchor.x, b.anchor.y);
        let (t, nx, ny) = match self {
            Growth::Bottom => (Transform::I, ax, ay),
            Growth::Left => (Transform::R2, ax - 3, ay - 3),
            Growth::Right => (Transform::R, ax, ay - 3),
        };
        (Frame { t, size: k, dx: nx, dy: ny }, SubBoard { size: k, anchor: HoleCoord::new(nx, ny) })
    }
}

/// Valid sub-boards for a vacancy, sorted by anchor `(x, y)`: side 4, 5 or 6
/// congruent to `n` mod 3, enclosing the vacancy, with every gap a multiple
/// of 3. For `n <= 6` the board itself.
pub fn choose_subboard(n: usize, vacancy: HoleCoord) -> Result<Vec<SubBoard>> {
    subboards(n, vacancy, &[4, 5, 6])
}

fn subboards(n: usize, vacancy: HoleCoord, sizes: &[usize]) -> Result<Vec<SubBoard>> {
    BoardShape::new(n)?;
    if !vacancy.is_valid(n) {
        return Err(Error::OffBoard(vacancy.to_string(), n));
    }
    if n <= 6 {
        return Ok(vec![SubBoard { size: n, anchor: HoleCoord::new(0, 0) }]);
    }
    let Some(&m) = sizes.iter().find(|&&m| m % 3 == n % 3 && m <= n) else { return Ok(vec![]) };
    let mut out = Vec::new();
    for ax in (0..n as i32).step_by(3) {
        for ay in (ax..n as i32).step_by(3) {
            let b = SubBoard { size: m, anchor: HoleCoord::new(ax, ay) };
            let (_, _, gb) = b.gaps(n);
            if gb >= 0 && gb % 3 == 0 && b.contains(vacancy) {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// Sub-board, its solution, and the purges clearing everything else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvePlan {
    pub n: usize,
    pub sub: SubBoard,
    /// Solution on the sub-board, in its local coordinates.
    pub base: Solution,
    pub purges: Vec<PlacedPurge>,
}

impl SolvePlan {
    pub fn start(&self) -> Position {
        Position::with_vacancy(self.n, self.sub.to_global(self.base.vacancy))
    }

    pub fn run(&self) -> Result<Solution> {
        let main: Vec<Jump> = self.base.jumps().map(|j| j.offset(self.sub.anchor.x, self.sub.anchor.y)).collect();
        finish(self.n, &self.start(), &main, &self.purges)
    }
}

fn finish(n: usize, start: &Position, main: &[Jump], purges: &[PlacedPurge]) -> Result<Solution> {
    let run = schedule(start, main, purges)?;
    if run.end.count() != 1 || run.unfinished > 0 {
        return Err(Error::Stall { pegs: run.end.count(), jumps: run.jumps.len() });
    }
    let sol = Solution::from_jumps(n, &run.jumps)?;
    sol.validate()?;
    Ok(sol)
}

/// Orders in which the growth steps can be taken: each kind kept together,
/// in every permutation of the three kinds.
fn growth_orders(left: usize, right: usize, bottom: usize) -> Vec<Vec<Growth>> {
    let kinds = [(Growth::Bottom, bottom), (Growth::Left, left), (Growth::Right, right)];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out: Vec<Vec<Growth>> = Vec::new();
    for p in perms {
        let seq: Vec<Growth> = p.iter().flat_map(|&i| std::iter::repeat_n(kinds[i].0, kinds[i].1)).collect();
        if !out.contains(&seq) {
            out.push(seq);
        }
    }
    out
}

/// Band variants tried for every growth step.
const BAND_VARIANTS: [(bool, CatalystChoice); 4] = [
    (false, CatalystChoice::Standard),
    (true, CatalystChoice::Standard),
    (false, CatalystChoice::Alternate),
    (true, CatalystChoice::Alternate),
];

fn grow(sub: SubBoard, order: &[Growth], mirrored: bool, choice: CatalystChoice) -> Result<Vec<PlacedPurge>> {
    let mut b = sub;
    let mut purges = Vec::new();
    for &g in order {
        let (frame, next) = g.step(b);
        let frame = if mirrored { frame.mirrored() } else { frame };
        purges.extend(band_purges_with(frame, choice)?);
        b = next;
    }
    Ok(purges)
}

/// Candidate plans in the order they are tried.
pub fn plans(n: usize, vacancy: HoleCoord) -> Result<Vec<SolvePlan>> {
    let lib = Library::builtin();
    let mut out = Vec::new();
    let mut sizes: Vec<Vec<usize>> = vec![vec![4, 5, 6]];
    // Fall back to larger congruent bases from the library.
    sizes.push(vec![7, 8]);
    for sz in sizes {
        for sub in subboards(n, vacancy, &sz)? {
            let (gl, gr, gb) = sub.gaps(n);
            let local = sub.to_local(vacancy);
            let bases = lib.from_vacancy(sub.size, local);
            for (mirrored, choice) in BAND_VARIANTS {
                for order in growth_orders(gl as usize / 3, gr as usize / 3, gb as usize / 3) {
                    for base in &bases {
                        out.push(SolvePlan { n, sub, base: base.clone(), purges: grow(sub, &order, mirrored, choice)? });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Solve a feasible vacancy to one peg anywhere.
pub fn solve_vacancy(n: usize, vacancy: HoleCoord) -> Result<Solution> {
    if !is_feasible_vacancy(n, vacancy)? {
        return Err(Error::Infeasible(format!("vacancy {vacancy} on T{n}")));
    }
    let mut last = Error::Unsolvable(format!("vacancy {vacancy} on T{n}"));
    for plan in plans(n, vacancy)? {
        match plan.run() {
            Ok(sol) => return Ok(sol),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Solve to any hole, or to `finish` when given.
pub fn solve(n: usize, vacancy: HoleCoord, finish: Option<HoleCoord>) -> Result<Solution> {
    match finish {
        Some(f) => solve_pair(n, vacancy, f),
        None => solve_vacancy(n, vacancy),
    }
}

type Memo = HashMap<(usize, HoleCoord, HoleCoord), Option<Solution>>;

/// Solve a feasible pair; `n >= 6`, or a solvable pair on T4 or T5.
pub fn solve_pair(n: usize, vacancy: HoleCoord, finish: HoleCoord) -> Result<Solution> {
    if !is_feasible_pair(n, vacancy, finish)? {
        return Err(Error::Infeasible(format!("{vacancy} to {finish} on T{n}")));
    }
    let mut memo = Memo::new();
    pair(n, vacancy, finish, &mut memo).ok_or_else(|| Error::Unsolvable(format!("{vacancy} to {finish} on T{n}")))
}

fn pair(n: usize, s: HoleCoord, f: HoleCoord, memo: &mut Memo) -> Option<Solution> {
    if let Some(hit) = memo.get(&(n, s, f)) {
        return hit.clone();
    }
    let sol = if n <= 8 { Library::builtin().lookup(n, s, f) } else { pair_inductive(n, s, f, memo) };
    memo.insert((n, s, f), sol.clone());
    sol
}

fn pair_inductive(n: usize, s: HoleCoord, f: HoleCoord, memo: &mut Memo) -> Option<Solution> {
    let low = n as i32 - 4;
    // Both ends fit in a corner triangle T_{n-3}: solve there, clear the band.
    for t in Transform::ALL {
        let (ts, tf) = (t.apply(s, n), t.apply(f, n));
        if ts.y > low || tf.y > low {
            continue;
        }
        let Some(inner) = pair(n - 3, ts, tf, memo) else { continue };
        let main: Vec<Jump> = inner.jumps().copied().collect();
        let start = Position::with_vacancy(n, ts);
        for (mirrored, choice) in BAND_VARIANTS {
            let frame = if mirrored { Frame::identity(n).mirrored() } else { Frame::identity(n) };
            let Ok(band) = band_purges_with(frame, choice) else { continue };
            if let Ok(sol) = finish(n, &start, &main, &band) {
                return Some(sol.transform(t.inverse()));
            }
        }
    }
    // Otherwise the vacancy goes to the last three rows and the finish above.
    for t in Transform::ALL {
        let (ts, tf) = (t.apply(s, n), t.apply(f, n));
        if ts.y <= low || tf.y > low {
            continue;
        }
        let start = Position::with_vacancy(n, ts);
        for placement in edge_row_purges(n, ts).unwrap_or_default() {
            let Some(inner) = pair(n - 3, placement.leaves, tf, memo) else { continue };
            let main: Vec<Jump> = placement.jumps.iter().chain(inner.jumps()).copied().collect();
            if let Ok(sol) = finish(n, &start, &main, &placement.sides) {
                return Some(sol.transform(t.inverse()));
            }
        }
    }
    None
}
