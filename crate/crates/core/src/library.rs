//! Known solutions: published fixtures and the base-case table for small boards.
//!
//! `data/base_solutions.txt` holds one solution per line as
//! `n;vacancy;finish;moves`, covering one representative of every solvable
//! pair for `4 <= n <= 8`. Lookups map any pair onto a stored one by board
//! symmetry, or by time reversal.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::board::{HoleCoord, Solution, Transform};
use crate::classification::{canonical_pair, distinct_feasible_pairs};
use crate::error::{Error, Result};
use crate::search::{brute_force_solution, SearchBudget};

const BASE_TEXT: &str = include_str!("../data/base_solutions.txt");

/// Boards covered by the base table.
pub const BASE_SIZES: std::ops::RangeInclusive<usize> = 4..=8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub n: usize,
    pub vacancy: &'static str,
    pub text: &'static str,
    pub moves: usize,
}

const T5_A1: &str = "a3-a1, c3-a3, e5-c3, b2-d4, c5-c3, a5-c5, d5-b5-b3, d4-b2, a4-a2, a1-a3-c3-a1";

/// Published solutions, verbatim. The T5 `a4` entry is `a2-a4`, which
/// reaches the position after the first move of the `a1` solution, followed
/// by the rest of that solution.
pub const FIXTURES: &[Fixture] = &[
    Fixture { n: 4, vacancy: "a2", text: "a4-a2, a1-a3, c4-a4-a2, c3-a3-a1-c3, d4-b2", moves: 5 },
    Fixture { n: 5, vacancy: "a1", text: T5_A1, moves: 10 },
    Fixture { n: 5, vacancy: "a4", text: "a2-a4, c3-a3, e5-c3, b2-d4, c5-c3, a5-c5, d5-b5-b3, d4-b2, a4-a2, a1-a3-c3-a1", moves: 10 },
    Fixture { n: 5, vacancy: "b3", text: "b5-b3, d4-b4, d5-b5, b2-d4, a2-c4, a4-a2, e5-c3-c5, b5-d5, a1-a3-c5, d5-b5, a5-c5", moves: 11 },
    Fixture { n: 5, vacancy: "c5", text: "a5-c5, d5-b5, a3-c5, a1-a3, b2-b4, d4-b2, a4-a2, b5-d5, e5-c5-c3-a1-a3-c5", moves: 9 },
    Fixture {
        n: 6,
        vacancy: "a1",
        text: "a3-a1, c4-a2, a4-c4, d4-b4, a6-a4, a1-a3-a5, c6-c4, f6-d4, e6-c6-a6-a4, c3-e5-c5-a5-a3-c5-c3-a1",
        moves: 10,
    },
    Fixture {
        n: 6,
        vacancy: "a4",
        text: "a6-a4, a3-a5, a1-a3, c4-a2-a4-c4, d4-b4, c6-c4, e6-c6-a6-a4, f6-d4, c3-e5-c5-a5-a3-c5-c3-a1",
        moves: 9,
    },
    Fixture {
        n: 6,
        vacancy: "b3",
        text: "d5-b3, c6-c4, c3-c5, a6-c6, d6-b6, f6-d6, a4-c4, a2-a4-a6-c6-e6, a1-c3, d4-f6-d6-b4-b2-d4-b4-b6",
        moves: 10,
    },
    Fixture {
        n: 6,
        vacancy: "c5",
        text: "a3-c5, d4-b4, a4-c4, f6-d4, a6-a4, c3-e5, d6-b4, b6-d6-f6-d4, a1-a3-a5-c5-e5-c3-c5-a3-c3-a1",
        moves: 9,
    },
    Fixture {
        n: 6,
        vacancy: "b6",
        text: "d6-b6, a6-c6, f6-d6-b6, c4-e6, a4-a6-c6-c4, c3-c5, a2-a4-c4, a1-c3, d4-b4-b2-d4-f6-d6-b4-b6",
        moves: 9,
    },
    Fixture {
        n: 7,
        vacancy: "c3",
        text: "a1-c3, d4-b2, f6-d4, a3-c3-e5, d6-d4-f6, b4-d6, a5-c5, f7-d5-b5, d7-f7, g7-e7, b7-d7-f7, a7-a5-c7-c5-a5-a3-a1-c3-c5-e7-g7-e5",
        moves: 12,
    },
    Fixture {
        n: 8,
        vacancy: "a2",
        text: "a4-a2, a1-a3, a6-a4-a2, c5-a5, e5-c5, d7-d5-b5-d7, c8-c6-a6-a4, f8-d6, c3-c5-e7-c7, a8-c8-c6, g7-e5-c3-a1-a3-a5, h8-f8-f6-d6-b6-b8, e8-c8-a8-a6-a4-c4-a2",
        moves: 13,
    },
    Fixture {
        n: 9,
        vacancy: "a2",
        text: "a4-a2, a6-a4, c5-a3-a5, e7-c5, g9-e7, d4-d6-f8, i9-g9-e7, f6-d4-b4-d6-f8, c7-c5, a1-a3, h8-f6, e9-e7, c9-c7, a9-c9-e9-g9-g7-e5, b2-d4-f6-d6-b4, a8-c8-e8-g8-e6-e8-c6-a4-c4-a2-a4-a6-c6-c8-a6-a8",
        moves: 16,
    },
    Fixture {
        n: 10,
        vacancy: "a3",
        text: "a1-a3, a4-a2, a6-a4, a8-a6, c3-a1-a3-a5-a7, c5-a3, e5-c3-c5-a5, g7-e5-c5, f8-f6, f10-f8, d7-d5-b5-d7-f9-f7-d5, c8-c6-a6-a8-c8-e8-e6, d10-b8-b6, b10-d10-f10-d8-d10, i9-g7-e5-e7, h10-h8-f8, j10-h10-f10, a10-a8-c10-e10-g10-g8-e8-e6-c4-a2-a4-a6-c6",
        moves: 18,
    },
];

impl Fixture {
    pub fn solution(&self) -> Result<Solution> {
        Solution::parse(self.n, self.text)
    }
}

/// Stored solutions keyed by `(n, vacancy index, finish index)`.
#[derive(Clone, Debug, Default)]
pub struct Library {
    entries: BTreeMap<(usize, usize, usize), Solution>,
}

impl Library {
    /// Parse and replay every line.
    pub fn parse(text: &str) -> Result<Library> {
        let mut lib = Library::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::Data { line, msg };
            let parts: Vec<&str> = l.splitn(4, ';').collect();
            if parts.len() != 4 {
                return Err(bad("expected n;vacancy;finish;moves".into()));
            }
            let n: usize = parts[0].parse().map_err(|_| bad(format!("bad size {}", parts[0])))?;
            let v = HoleCoord::from_alpha(parts[1]).map_err(|e| bad(e.to_string()))?;
            let f = HoleCoord::from_alpha(parts[2]).map_err(|e| bad(e.to_string()))?;
            let sol = Solution::parse(n, parts[3]).map_err(|e| bad(e.to_string()))?;
            if sol.vacancy != v || sol.finish != f {
                return Err(bad(format!("solution runs {} to {}", sol.vacancy, sol.finish)));
            }
            sol.validate().map_err(|e| bad(e.to_string()))?;
            lib.insert(sol);
        }
        Ok(lib)
    }

    pub fn builtin() -> &'static Library {
        static LIB: OnceLock<Library> = OnceLock::new();
        LIB.get_or_init(|| Library::parse(BASE_TEXT).expect("built-in base solutions"))
    }

    pub fn insert(&mut self, sol: Solution) {
        self.entries.insert((sol.n, sol.vacancy.index(), sol.finish.index()), sol);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Solution> {
        self.entries.values()
    }

    fn get(&self, n: usize, s: HoleCoord, f: HoleCoord) -> Option<&Solution> {
        self.entries.get(&(n, s.index(), f.index()))
    }

    /// A solution from `s` to `f`, through a symmetric image or a reversal
    /// of a stored one.
    pub fn lookup(&self, n: usize, s: HoleCoord, f: HoleCoord) -> Option<Solution> {
        for t in Transform::ALL {
            let (ts, tf) = (t.apply(s, n), t.apply(f, n));
            if let Some(sol) = self.get(n, ts, tf) {
                return Some(sol.transform(t.inverse()));
            }
        }
        for t in Transform::ALL {
            let (ts, tf) = (t.apply(s, n), t.apply(f, n));
            if let Some(sol) = self.get(n, tf, ts) {
                return Some(sol.reversed().transform(t.inverse()));
            }
        }
        None
    }

    /// Every stored solution (up to symmetry) starting at `s`, fewest moves first.
    pub fn from_vacancy(&self, n: usize, s: HoleCoord) -> Vec<Solution> {
        let mut out: Vec<Solution> = crate::board::BoardShape::new(n)
            .map(|b| b.holes().collect::<Vec<_>>())
            .unwrap_or_default()
            .into_iter()
            .filter_map(|f| self.lookup(n, s, f))
            .collect();
        out.sort_by_key(|sol| sol.moves.len());
        out
    }
}

/// Solve one representative of every feasible pair on the base boards by
/// exhaustive search and render the table. Unsolvable pairs are skipped.
pub fn generate(sizes: impl IntoIterator<Item = usize>, budget: &SearchBudget) -> Result<String> {
    let mut out = String::from("# n;vacancy;finish;moves\n");
    for n in sizes {
        for (s, f) in distinct_feasible_pairs(n) {
            debug_assert_eq!(canonical_pair(n, s, f), (s, f));
            if let Some(sol) = brute_force_solution(n, s, Some(f), budget)? {
                writeln!(out, "{n};{s};{f};{}", sol.text()).unwrap();
            }
        }
    }
    Ok(out)
}
