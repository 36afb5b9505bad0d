//! Exhaustive search on boards up to T10, where a position fits one `u64`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::board::{tri, BoardShape, HoleCoord, Jump, Position, Solution, Transform, DIRECTIONS};
use crate::classification::{is_feasible_pair, lower_bound_moves};
use crate::error::{Error, Result};
use crate::sax::{self, JumpCategory};

pub const MAX_SEARCH_N: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BitJump {
    pub from: u8,
    pub over: u8,
    pub to: u8,
    need: u64,
    flip: u64,
}

impl BitJump {
    #[inline]
    pub fn legal(&self, b: u64) -> bool {
        b & self.need == self.need && b >> self.to & 1 == 0
    }

    #[inline]
    pub fn apply(&self, b: u64) -> u64 {
        b ^ self.flip
    }

    pub fn jump(&self) -> Jump {
        Jump {
            from: HoleCoord::from_index(self.from as usize),
            over: HoleCoord::from_index(self.over as usize),
            to: HoleCoord::from_index(self.to as usize),
        }
    }
}

/// Jump and symmetry tables for one board size.
pub struct Geometry {
    pub n: usize,
    pub full: u64,
    pub jumps: Vec<BitJump>,
    by_origin: Vec<Vec<u16>>,
    by_dest: Vec<Vec<u16>>,
    tables: Vec<Vec<[u64; 256]>>,
}

impl Geometry {
    fn build(n: usize) -> Geometry {
        let holes: Vec<HoleCoord> = BoardShape::new(n).unwrap().holes().collect();
        let size = holes.len();
        let full = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
        let mut jumps = Vec::new();
        let mut by_origin = vec![Vec::new(); size];
        let mut by_dest = vec![Vec::new(); size];
        for &c in &holes {
            for &(dx, dy) in &DIRECTIONS {
                let over = c.offset(dx, dy);
                let to = c.offset(2 * dx, 2 * dy);
                if to.is_valid(n) {
                    let (f, o, t) = (c.index() as u8, over.index() as u8, to.index() as u8);
                    by_origin[f as usize].push(jumps.len() as u16);
                    by_dest[t as usize].push(jumps.len() as u16);
                    jumps.push(BitJump {
                        from: f,
                        over: o,
                        to: t,
                        need: 1 << f | 1 << o,
                        flip: 1 << f | 1 << o | 1 << t,
                    });
                }
            }
        }
        let bytes = size.div_ceil(8);
        let tables = Transform::ALL
            .iter()
            .map(|&t| {
                (0..bytes)
                    .map(|k| {
                        let mut tab = [0u64; 256];
                        for (v, slot) in tab.iter_mut().enumerate() {
                            for bit in 0..8 {
                                let i = 8 * k + bit;
                                if v >> bit & 1 == 1 && i < size {
                                    *slot |= 1 << t.apply(holes[i], n).index();
                                }
                            }
                        }
                        tab
                    })
                    .collect()
            })
            .collect();
        Geometry { n, full, jumps, by_origin, by_dest, tables }
    }

    pub fn get(n: usize) -> Result<&'static Geometry> {
        static GEOMS: OnceLock<Vec<Geometry>> = OnceLock::new();
        if n > MAX_SEARCH_N {
            return Err(Error::TooLarge { n, max: MAX_SEARCH_N });
        }
        BoardShape::new(n)?;
        let all = GEOMS.get_or_init(|| (2..=MAX_SEARCH_N).map(Geometry::build).collect());
        Ok(&all[n - 2])
    }

    #[inline]
    pub fn transform(&self, t: Transform, b: u64) -> u64 {
        let tabs = &self.tables[t.index()];
        let mut out = 0;
        for (k, tab) in tabs.iter().enumerate() {
            out |= tab[(b >> (8 * k) & 0xff) as usize];
        }
        out
    }

    #[inline]
    pub fn canonical(&self, b: u64, group: &[Transform]) -> u64 {
        group.iter().map(|&t| self.transform(t, b)).min().unwrap_or(b)
    }

    pub fn legal(&self, b: u64) -> impl Iterator<Item = &BitJump> + '_ {
        self.jumps.iter().filter(move |j| j.legal(b))
    }

    pub fn from_position(&self, p: &Position) -> Result<u64> {
        if p.n() != self.n {
            return Err(Error::BoardSize(p.n()));
        }
        Ok(p.as_u64())
    }

    pub fn position(&self, b: u64) -> Position {
        Position::from_u64(self.n, b)
    }

    pub fn vacancy(&self, c: HoleCoord) -> u64 {
        self.full & !(1 << c.index())
    }

    /// Every position one move away (or one un-move back when `dir` is
    /// `Backward`), in any order, possibly repeated.
    pub fn for_each_child(&self, b: u64, dir: Direction, f: &mut impl FnMut(u64)) {
        for j in &self.jumps {
            if dir.legal(j, b) {
                let c = j.apply(b);
                f(c);
                self.chain(c, dir.tip(j), dir, f);
            }
        }
    }

    fn next_jumps(&self, at: u8, dir: Direction) -> &[u16] {
        match dir {
            Direction::Forward => &self.by_origin[at as usize],
            Direction::Backward => &self.by_dest[at as usize],
        }
    }

    fn chain(&self, b: u64, at: u8, dir: Direction, f: &mut impl FnMut(u64)) {
        for &ji in self.next_jumps(at, dir) {
            let j = &self.jumps[ji as usize];
            if dir.legal(j, b) {
                let c = j.apply(b);
                f(c);
                self.chain(c, dir.tip(j), dir, f);
            }
        }
    }

    /// Children together with the jump indices used, in playing order for
    /// moves and in undoing order for un-moves.
    pub fn children_with_moves(&self, b: u64, dir: Direction) -> Vec<(u64, Vec<usize>)> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for (ji, j) in self.jumps.iter().enumerate() {
            if dir.legal(j, b) {
                path.push(ji);
                self.chain_moves(j.apply(b), dir.tip(j), dir, &mut path, &mut out);
                path.pop();
            }
        }
        out
    }

    fn chain_moves(&self, b: u64, at: u8, dir: Direction, path: &mut Vec<usize>, out: &mut Vec<(u64, Vec<usize>)>) {
        out.push((b, path.clone()));
        for &ji in self.next_jumps(at, dir) {
            let j = &self.jumps[ji as usize];
            if dir.legal(j, b) {
                path.push(ji as usize);
                self.chain_moves(j.apply(b), dir.tip(j), dir, path, out);
                path.pop();
            }
        }
    }
}

/// Play forward with jumps, or backward with un-jumps (a peg at `to` returns
/// to `from`, refilling `over`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    #[inline]
    fn legal(self, j: &BitJump, b: u64) -> bool {
        match self {
            Direction::Forward => j.legal(b),
            Direction::Backward => b & j.flip == 1 << j.to,
        }
    }

    /// Where the moving peg sits after the jump.
    #[inline]
    fn tip(self, j: &BitJump) -> u8 {
        match self {
            Direction::Forward => j.to,
            Direction::Backward => j.from,
        }
    }

    fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// Transforms fixing every hole in `holes`.
pub fn stabilizer(n: usize, holes: &[HoleCoord]) -> Vec<Transform> {
    Transform::ALL.into_iter().filter(|&t| holes.iter().all(|&c| t.apply(c, n) == c)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_moves: Option<usize>,
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_moves: None, node_limit: 60_000_000, time_limit: None }
    }
}

struct Meter {
    nodes: u64,
    limit: u64,
    deadline: Option<Instant>,
}

impl Meter {
    fn new(budget: &SearchBudget) -> Self {
        Meter { nodes: 0, limit: budget.node_limit, deadline: budget.time_limit.map(|d| Instant::now() + d) }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Budget { nodes: self.nodes });
        }
        if self.nodes.is_multiple_of(65_536) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Budget { nodes: self.nodes });
                }
            }
        }
        Ok(())
    }
}

fn goal_reached(b: u64, goal: Option<HoleCoord>) -> bool {
    match goal {
        Some(f) => b == 1 << f.index(),
        None => b.count_ones() == 1,
    }
}

struct Dfs<'a> {
    g: &'a Geometry,
    goal: Option<HoleCoord>,
    group: Vec<Transform>,
    dead: FxHashSet<u64>,
    meter: Meter,
    path: Vec<usize>,
}

impl Dfs<'_> {
    fn run(&mut self, b: u64) -> Result<bool> {
        if goal_reached(b, self.goal) {
            return Ok(true);
        }
        if b.count_ones() <= 1 {
            return Ok(false);
        }
        let key = self.g.canonical(b, &self.group);
        if self.dead.contains(&key) {
            return Ok(false);
        }
        self.meter.tick()?;
        for (ji, j) in self.g.jumps.iter().enumerate() {
            if j.legal(b) {
                self.path.push(ji);
                if self.run(j.apply(b))? {
                    return Ok(true);
                }
                self.path.pop();
            }
        }
        self.dead.insert(key);
        Ok(false)
    }
}

/// Jumps from `p` to one peg (at `goal` if given), or `None` if impossible.
pub fn solve_from(p: &Position, goal: Option<HoleCoord>, budget: &SearchBudget) -> Result<Option<Vec<Jump>>> {
    let g = Geometry::get(p.n())?;
    let group = stabilizer(p.n(), &goal.into_iter().collect::<Vec<_>>());
    let mut dfs = Dfs { g, goal, group, dead: FxHashSet::default(), meter: Meter::new(budget), path: Vec::new() };
    if dfs.run(g.from_position(p)?)? {
        Ok(Some(dfs.path.iter().map(|&i| g.jumps[i].jump()).collect()))
    } else {
        Ok(None)
    }
}

fn check_problem(n: usize, vacancy: HoleCoord, finish: Option<HoleCoord>) -> Result<()> {
    BoardShape::new(n)?;
    for c in std::iter::once(vacancy).chain(finish) {
        if !c.is_valid(n) {
            return Err(Error::OffBoard(c.to_string(), n));
        }
    }
    Ok(())
}

/// Exhaustive solvability with failure memoization. Intended for n <= 8.
pub fn brute_force_solvable(n: usize, vacancy: HoleCoord, finish: Option<HoleCoord>, budget: &SearchBudget) -> Result<bool> {
    Ok(brute_force_solution(n, vacancy, finish, budget)?.is_some())
}

pub fn brute_force_solution(
    n: usize,
    vacancy: HoleCoord,
    finish: Option<HoleCoord>,
    budget: &SearchBudget,
) -> Result<Option<Solution>> {
    check_problem(n, vacancy, finish)?;
    let start = Position::with_vacancy(n, vacancy);
    match solve_from(&start, finish, budget)? {
        Some(jumps) => Ok(Some(Solution::from_jumps(n, &jumps)?)),
        None => Ok(None),
    }
}

/// Number of ordered jump sequences from the start to the goal.
pub fn count_solutions(n: usize, vacancy: HoleCoord, finish: Option<HoleCoord>) -> Result<u128> {
    check_problem(n, vacancy, finish)?;
    let g = Geometry::get(n)?;
    let mut memo = FxHashMap::default();
    Ok(count_from(g, g.vacancy(vacancy), finish, &mut memo))
}

fn count_from(g: &Geometry, b: u64, goal: Option<HoleCoord>, memo: &mut FxHashMap<u64, u128>) -> u128 {
    if goal_reached(b, goal) {
        return 1;
    }
    if let Some(&c) = memo.get(&b) {
        return c;
    }
    let total = g.legal(b).map(|j| count_from(g, j.apply(b), goal, memo)).sum();
    memo.insert(b, total);
    total
}

/// Every solution as a jump-index sequence, refusing beyond `limit`.
fn all_solutions(g: &Geometry, start: u64, goal: Option<HoleCoord>, limit: u128) -> Result<Vec<Vec<usize>>> {
    let mut memo = FxHashMap::default();
    let total = count_from(g, start, goal, &mut memo);
    if total > limit {
        return Err(Error::Budget { nodes: total as u64 });
    }
    fn walk(
        g: &Geometry,
        b: u64,
        goal: Option<HoleCoord>,
        memo: &mut FxHashMap<u64, u128>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if goal_reached(b, goal) {
            out.push(path.clone());
            return;
        }
        for (ji, j) in g.jumps.iter().enumerate() {
            if j.legal(b) && count_from(g, j.apply(b), goal, memo) > 0 {
                path.push(ji);
                walk(g, j.apply(b), goal, memo, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, start, goal, &mut memo, &mut Vec::new(), &mut out);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceClasses {
    pub solutions: u128,
    /// Jump multisets with a jump identified by its line and jumped hole.
    pub undirected: usize,
    /// Jump multisets keeping each jump's direction.
    pub directed: usize,
}

/// Group solutions by multiset of jumps, merged under the symmetries fixing
/// both the vacancy and the finish.
pub fn solution_equivalence_classes(n: usize, vacancy: HoleCoord, finish: HoleCoord) -> Result<EquivalenceClasses> {
    check_problem(n, vacancy, Some(finish))?;
    let g = Geometry::get(n)?;
    let sols = all_solutions(g, g.vacancy(vacancy), Some(finish), 5_000_000)?;
    let group = stabilizer(n, &[vacancy, finish]);
    let key = |s: &[usize], directed: bool| -> Vec<(usize, usize, usize)> {
        group
            .iter()
            .map(|&t| {
                let mut k: Vec<(usize, usize, usize)> = s
                    .iter()
                    .map(|&ji| {
                        let j = g.jumps[ji].jump().transform(t, n);
                        let (a, o, c) = (j.from.index(), j.over.index(), j.to.index());
                        if directed || a < c {
                            (a, o, c)
                        } else {
                            (c, o, a)
                        }
                    })
                    .collect();
                k.sort_unstable();
                k
            })
            .min()
            .unwrap()
    };
    let undirected: BTreeSet<_> = sols.iter().map(|s| key(s, false)).collect();
    let directed: BTreeSet<_> = sols.iter().map(|s| key(s, true)).collect();
    Ok(EquivalenceClasses { solutions: sols.len() as u128, undirected: undirected.len(), directed: directed.len() })
}

/// Jumps over `over` are allowed only if listed in `allowed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpConstraint {
    pub over: HoleCoord,
    pub allowed: Vec<Jump>,
}

impl JumpConstraint {
    fn permits(&self, j: &Jump) -> bool {
        j.over != self.over || self.allowed.contains(j)
    }
}

/// Distinct positions reachable from the one-vacancy start, the start included.
pub fn reachable_count(n: usize, vacancy: HoleCoord, constraint: Option<&JumpConstraint>) -> Result<usize> {
    check_problem(n, vacancy, None)?;
    let g = Geometry::get(n)?;
    let allowed: Vec<bool> = g.jumps.iter().map(|j| constraint.is_none_or(|c| c.permits(&j.jump()))).collect();
    let start = g.vacancy(vacancy);
    let mut seen = FxHashSet::default();
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(b) = queue.pop_front() {
        for (ji, j) in g.jumps.iter().enumerate() {
            if allowed[ji] && j.legal(b) {
                let c = j.apply(b);
                if seen.insert(c) {
                    queue.push_back(c);
                }
            }
        }
    }
    Ok(seen.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    /// Uniform over all legal jumps.
    A,
    /// Avoids jumps into a corner and out of the interior.
    B,
    /// Keeps the SAX count from dropping below its starting level (or 0).
    C,
}

impl std::str::FromStr for Player {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Player::A),
            "B" => Ok(Player::B),
            "C" => Ok(Player::C),
            _ => Err(Error::Unknown { kind: "player", value: s.to_string() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddsResult {
    pub probability: BigRational,
    /// `N` in "1 in N".
    pub odds_rounded: u64,
    /// Probability of every position where play stops.
    pub terminals: BTreeMap<u64, BigRational>,
}

fn admissible(g: &Geometry, b: u64, player: Player, threshold: i32) -> Vec<usize> {
    let legal: Vec<usize> = (0..g.jumps.len()).filter(|&i| g.jumps[i].legal(b)).collect();
    let pegs = b.count_ones();
    if player == Player::A || pegs == 2 || legal.is_empty() {
        return legal;
    }
    let ok: Vec<usize> = legal
        .iter()
        .copied()
        .filter(|&i| {
            let j = &g.jumps[i];
            match player {
                Player::B => {
                    let cat = sax::category_bits(j.from, j.over, j.to);
                    cat != JumpCategory::IntoCorner && cat != JumpCategory::OutOfInterior
                }
                _ => sax::sax_bits(j.apply(b)).total >= threshold,
            }
        })
        .collect();
    if ok.is_empty() && pegs as usize == tri(5) - 1 {
        legal
    } else {
        ok
    }
}

/// Exact chance that a player choosing uniformly among admissible jumps ends
/// with one peg on T5.
pub fn player_odds(vacancy: HoleCoord, player: Player) -> Result<OddsResult> {
    check_problem(5, vacancy, None)?;
    let g = Geometry::get(5)?;
    let start = g.vacancy(vacancy);
    let threshold = sax::sax_bits(start).total.min(0);
    // Propagate probability mass level by level; every jump removes one peg.
    let mut level: BTreeMap<u64, BigRational> = BTreeMap::from([(start, BigRational::one())]);
    let mut terminals: BTreeMap<u64, BigRational> = BTreeMap::new();
    while !level.is_empty() {
        let mut next: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (b, p) in level {
            let moves = admissible(g, b, player, threshold);
            if moves.is_empty() {
                *terminals.entry(b).or_insert_with(BigRational::zero) += p;
                continue;
            }
            let share = p / BigRational::from_integer(BigInt::from(moves.len()));
            for i in moves {
                *next.entry(g.jumps[i].apply(b)).or_insert_with(BigRational::zero) += share.clone();
            }
        }
        level = next;
    }
    let probability: BigRational = terminals
        .iter()
        .filter(|(b, _)| b.count_ones() == 1)
        .map(|(_, p)| p.clone())
        .fold(BigRational::zero(), |a, b| a + b);
    let odds_rounded = if probability.is_zero() {
        0
    } else {
        probability.recip().round().to_integer().to_u64().unwrap_or(u64::MAX)
    };
    Ok(OddsResult { probability, odds_rounded, terminals })
}

/// Fixed partition of the board into Merson regions: corners, consecutive
/// edge pairs and disjoint interior hexagons.
pub fn merson_regions(n: usize) -> Vec<Vec<HoleCoord>> {
    let m = n as i32 - 1;
    let mut regions: Vec<Vec<HoleCoord>> = vec![
        vec![HoleCoord::new(0, 0)],
        vec![HoleCoord::new(0, m)],
        vec![HoleCoord::new(m, m)],
    ];
    // Walk each edge from one corner to the next; pairs start next to the corner.
    let edges: [Box<dyn Fn(i32) -> HoleCoord>; 3] = [
        Box::new(|k| HoleCoord::new(0, k)),
        Box::new(move |k| HoleCoord::new(k, m)),
        Box::new(move |k| HoleCoord::new(m - k, m - k)),
    ];
    for edge in &edges {
        let mut k = 1;
        while k + 1 < m {
            regions.push(vec![edge(k), edge(k + 1)]);
            k += 2;
        }
    }
    // Maximum set of disjoint hexagons inside the interior.
    let centres: Vec<HoleCoord> = BoardShape::new(n)
        .unwrap()
        .holes()
        .filter(|c| DIRECTIONS.iter().all(|&(dx, dy)| {
            let q = c.offset(dx, dy);
            q.is_valid(n) && q.x >= 1 && q.y - q.x >= 1 && q.y < m
        }))
        .collect();
    let hex = |c: HoleCoord| -> Vec<HoleCoord> {
        std::iter::once(c).chain(DIRECTIONS.iter().map(|&(dx, dy)| c.offset(dx, dy))).collect()
    };
    let mut best: Vec<HoleCoord> = Vec::new();
    for mask in 0u32..(1 << centres.len()) {
        if (mask.count_ones() as usize) <= best.len() {
            continue;
        }
        let chosen: Vec<HoleCoord> = (0..centres.len()).filter(|i| mask >> i & 1 == 1).map(|i| centres[i]).collect();
        let mut cells = BTreeSet::new();
        if chosen.iter().all(|&c| hex(c).into_iter().all(|h| cells.insert(h.index()))) {
            best = chosen;
        }
    }
    regions.extend(best.into_iter().map(hex));
    regions
}

/// Admissible move estimates from the Merson partition and its images.
///
/// Forward: every full region of two or more holes, and every full corner
/// but the final one, must be left by a move starting inside it. Backward:
/// every region emptied since the start, other than the one holding the
/// vacancy, was first touched by a move starting inside it.
struct Heuristic {
    corners: u64,
    big: Vec<Vec<u64>>,
    all: Vec<Vec<u64>>,
}

impl Heuristic {
    fn new(g: &Geometry) -> Self {
        let regions = merson_regions(g.n);
        let mask = |r: &[HoleCoord], t: Transform| r.iter().fold(0u64, |m, &c| m | 1 << t.apply(c, g.n).index());
        let corners = regions.iter().filter(|r| r.len() == 1).fold(0, |m, r| m | mask(r, Transform::I));
        let images = |keep: fn(&Vec<HoleCoord>) -> bool| -> Vec<Vec<u64>> {
            Transform::ALL
                .iter()
                .map(|&t| regions.iter().filter(|r| keep(r)).map(|r| mask(r, t)).collect())
                .collect()
        };
        Heuristic { corners, big: images(|r| r.len() > 1), all: images(|_| true) }
    }

    /// Moves from `b` down to one peg (at `finish` if given).
    #[inline]
    fn forward(&self, b: u64, finish: Option<u64>) -> usize {
        if b.count_ones() <= 1 {
            return 0;
        }
        let corners = match finish {
            Some(f) => (b & self.corners & !f).count_ones() as usize,
            None => ((b & self.corners).count_ones() as usize).saturating_sub(1),
        };
        let best = self.big.iter().map(|rs| rs.iter().filter(|&&r| b & r == r).count()).max().unwrap_or(0);
        (best + corners).max(1)
    }

    /// Moves from a one-vacancy start (at `vacancy` if given) up to `b`.
    #[inline]
    fn backward(&self, b: u64, full: u64, vacancy: Option<u64>) -> usize {
        if (full & !b).count_ones() <= 1 {
            return 0;
        }
        let best = self
            .all
            .iter()
            .map(|rs| rs.iter().filter(|&&r| b & r == 0 && vacancy.is_none_or(|v| r & v == 0)).count())
            .max()
            .unwrap_or(0);
        let best = if vacancy.is_some() { best } else { best.saturating_sub(1) };
        best.max(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortestResult {
    /// Minimal move count, when found.
    pub moves: Option<usize>,
    /// No solution has fewer moves than this.
    pub lower_bound: usize,
    pub witness: Option<Solution>,
    pub nodes: u64,
    pub proved_minimal: bool,
    /// Search stopped on the node or time budget.
    pub budget_exhausted: bool,
}

/// Holes allowed at one end of a problem given the other end.
fn endpoint_set(n: usize, fixed: Option<HoleCoord>, other: Option<HoleCoord>, vacancy_side: bool) -> Vec<HoleCoord> {
    if let Some(c) = fixed {
        return vec![c];
    }
    let shape = BoardShape::new(n).unwrap();
    shape
        .holes()
        .filter(|&c| {
            let pair = |o: HoleCoord| {
                let (s, f) = if vacancy_side { (c, o) } else { (o, c) };
                is_feasible_pair(n, s, f).unwrap_or(false)
            };
            match other {
                Some(o) => pair(o),
                None => shape.holes().any(pair),
            }
        })
        .collect()
}

type Layers = FxHashMap<u64, u8>;

struct Layered {
    seen: Layers,
    frontier: Vec<u64>,
    depth: usize,
}

struct Frontier<'a> {
    g: &'a Geometry,
    h: &'a Heuristic,
    group: &'a [Transform],
    dir: Direction,
    vacancy: Option<u64>,
    finish: Option<u64>,
}

impl Frontier<'_> {
    #[inline]
    fn estimate(&self, b: u64) -> usize {
        match self.dir {
            Direction::Forward => self.h.forward(b, self.finish),
            Direction::Backward => self.h.backward(b, self.g.full, self.vacancy),
        }
    }

    fn start(&self, starts: &[u64], bound: usize) -> Layered {
        let mut seen: Layers = FxHashMap::default();
        let mut frontier = Vec::new();
        for &s in starts {
            let k = self.g.canonical(s, self.group);
            if self.estimate(k) <= bound && seen.insert(k, 0).is_none() {
                frontier.push(k);
            }
        }
        Layered { seen, frontier, depth: 0 }
    }

    /// Add one layer, pruned by `d + h <= bound`.
    fn grow(&self, l: &mut Layered, bound: usize, meter: &mut Meter) -> Result<()> {
        let d = l.depth + 1;
        let mut next = Vec::new();
        for &b in &l.frontier {
            let mut err = Ok(());
            self.g.for_each_child(b, self.dir, &mut |c| {
                if err.is_err() || d + self.estimate(c) > bound {
                    return;
                }
                let k = self.g.canonical(c, self.group);
                if let Entry::Vacant(e) = l.seen.entry(k) {
                    e.insert(d as u8);
                    next.push(k);
                    err = meter.tick();
                }
            });
            err?;
        }
        l.frontier = next;
        l.depth = d;
        Ok(())
    }

    /// Moves in playing order linking `target` to a layer start: from the
    /// start to `target` for forward layers, from `target` to the finish for
    /// backward ones.
    fn path(&self, layers: &Layers, target: u64) -> Vec<Vec<Jump>> {
        let mut moves = Vec::new();
        let mut at = target;
        let mut d = layers[&self.g.canonical(at, self.group)];
        while d > 0 {
            let (next, mut jumps) = self
                .g
                .children_with_moves(at, self.dir.flip())
                .into_iter()
                .find(|(c, _)| layers.get(&self.g.canonical(*c, self.group)) == Some(&(d - 1)))
                .expect("layered predecessor");
            if self.dir == Direction::Forward {
                jumps.reverse();
            }
            moves.push(jumps.iter().map(|&i| self.g.jumps[i].jump()).collect());
            at = next;
            d -= 1;
        }
        if self.dir == Direction::Forward {
            moves.reverse();
        }
        moves
    }
}

/// Minimal-move solution by iterative bound with meet-in-the-middle.
///
/// Forward layers grow by moves from the allowed starts, backward layers by
/// un-moves from the allowed single-peg finishes; a shared position at depths
/// summing to at most the bound gives a solution. The bound rises from a
/// proven lower bound, so the first solution found is minimal.
pub fn shortest_solution(
    n: usize,
    vacancy: Option<HoleCoord>,
    finish: Option<HoleCoord>,
    budget: &SearchBudget,
) -> Result<ShortestResult> {
    let g = Geometry::get(n)?;
    if n < 4 {
        return Err(Error::TooSmall { n, min: 4 });
    }
    for c in vacancy.iter().chain(finish.iter()) {
        if !c.is_valid(n) {
            return Err(Error::OffBoard(c.to_string(), n));
        }
    }
    if let (Some(s), Some(f)) = (vacancy, finish) {
        if !is_feasible_pair(n, s, f)? {
            return Err(Error::Infeasible(format!("{s} to {f} on T{n}")));
        }
    }
    let fixed: Vec<HoleCoord> = vacancy.iter().chain(finish.iter()).copied().collect();
    let group = stabilizer(n, &fixed);
    let h = Heuristic::new(g);
    let fwd: Vec<u64> = endpoint_set(n, vacancy, finish, true).into_iter().map(|c| g.vacancy(c)).collect();
    let bwd: Vec<u64> = endpoint_set(n, finish, vacancy, false).into_iter().map(|c| 1 << c.index()).collect();
    if fwd.is_empty() || bwd.is_empty() {
        return Err(Error::Infeasible(format!("no feasible problem on T{n}")));
    }
    let vmask = vacancy.map(|c| 1u64 << c.index());
    let fmask = finish.map(|c| 1u64 << c.index());
    let front_fr = Frontier { g, h: &h, group: &group, dir: Direction::Forward, vacancy: vmask, finish: fmask };
    let back_fr = Frontier { dir: Direction::Backward, ..front_fr };
    let mut meter = Meter::new(budget);
    let mut bound = if vacancy.is_none() && finish.is_none() {
        lower_bound_moves(n)?
    } else {
        fwd.iter().map(|&b| h.forward(b, fmask)).min().unwrap_or(1)
    };
    let max_moves = budget.max_moves.unwrap_or(tri(n) - 2);
    while bound <= max_moves {
        let attempt = (|| -> Result<Option<Solution>> {
            // Grow the smaller frontier until the depths add up to the bound.
            let mut front = front_fr.start(&fwd, bound);
            let mut back = back_fr.start(&bwd, bound);
            while front.depth + back.depth < bound && !(front.frontier.is_empty() && back.frontier.is_empty()) {
                let grow_front = !front.frontier.is_empty()
                    && (back.frontier.is_empty() || front.frontier.len() <= back.frontier.len());
                if grow_front {
                    front_fr.grow(&mut front, bound, &mut meter)?;
                } else {
                    back_fr.grow(&mut back, bound, &mut meter)?;
                }
            }
            if std::env::var("TRISOLVE_TRACE").is_ok() {
                eprintln!("bound {bound}: front {}@{} back {}@{}", front.seen.len(), front.depth, back.seen.len(), back.depth);
            }
            let (front, back) = (front.seen, back.seen);
            let meet = front
                .iter()
                .filter_map(|(&p, &dp)| back.get(&p).map(|&dq| (dp as usize + dq as usize, p)))
                .min();
            let Some((_, p)) = meet else { return Ok(None) };
            let jumps: Vec<Jump> = front_fr.path(&front, p).into_iter().chain(back_fr.path(&back, p)).flatten().collect();
            Ok(Some(Solution::from_jumps(n, &jumps)?))
        })();
        match attempt {
            Ok(Some(sol)) => {
                sol.validate()?;
                let moves = sol.moves.len();
                return Ok(ShortestResult {
                    moves: Some(moves),
                    lower_bound: moves,
                    witness: Some(sol),
                    nodes: meter.nodes,
                    proved_minimal: true,
                    budget_exhausted: false,
                });
            }
            Ok(None) => bound += 1,
            Err(Error::Budget { .. }) => {
                return Ok(ShortestResult {
                    moves: None,
                    lower_bound: bound,
                    witness: None,
                    nodes: meter.nodes,
                    proved_minimal: false,
                    budget_exhausted: true,
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ShortestResult { moves: None, lower_bound: bound, witness: None, nodes: meter.nodes, proved_minimal: false, budget_exhausted: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HoleCoord {
        s.parse().unwrap()
    }

    #[test]
    fn geometry_transforms_match_board() {
        for n in 4..=10 {
            let g = Geometry::get(n).unwrap();
            let p = Position::with_vacancy(n, HoleCoord::new(1, 2));
            for t in Transform::ALL {
                assert_eq!(g.transform(t, p.as_u64()), p.transform(t).as_u64());
            }
            assert_eq!(g.canonical(p.as_u64(), &Transform::ALL), p.canonical().as_u64());
        }
    }

    #[test]
    fn legal_jumps_match_board() {
        let g = Geometry::get(6).unwrap();
        let p = Position::with_vacancy(6, h("c5"));
        let mut a: Vec<Jump> = g.legal(p.as_u64()).map(|j| j.jump()).collect();
        let mut b = p.legal_jumps();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn t4_pairs() {
        let b = SearchBudget::default();
        assert!(brute_force_solvable(4, h("a2"), Some(h("b2")), &b).unwrap());
        assert!(!brute_force_solvable(4, h("a2"), Some(h("a3")), &b).unwrap());
        assert!(!brute_force_solvable(4, h("a2"), Some(h("c4")), &b).unwrap());
    }

    #[test]
    fn corner_complement_count() {
        assert_eq!(count_solutions(5, h("a1"), Some(h("a1"))).unwrap(), 6816);
        assert_eq!(count_solutions(5, h("b3"), Some(h("b3"))).unwrap(), 0);
    }

    #[test]
    fn reachability() {
        assert_eq!(reachable_count(4, h("a2"), None).unwrap(), 62);
    }

    #[test]
    fn regions() {
        // r = lower bound + 1 for even n
        for (n, r) in [(6, 9), (8, 13), (10, 18)] {
            assert_eq!(merson_regions(n).len(), r);
        }
        for n in 4..=10 {
            let mut seen = BTreeSet::new();
            for r in merson_regions(n) {
                for c in r {
                    assert!(c.is_valid(n));
                    assert!(seen.insert(c));
                }
            }
        }
    }

    #[test]
    fn small_shortest() {
        let r = shortest_solution(4, None, None, &SearchBudget::default()).unwrap();
        assert_eq!(r.moves, Some(5));
        assert!(r.proved_minimal);
        r.witness.unwrap().validate().unwrap();
    }
}
