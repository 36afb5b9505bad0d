//! Board geometry, positions, jumps and solution notation.
//!
//! Holes use skew coordinates `(x, y)` with `0 <= x <= y <= n-1`. The row-major
//! bit index of a hole is `T(y) + x`, so `a1` is bit 0 and the bottom-right
//! corner is bit `T(n) - 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported side. Letters run a..z, so columns stop at 25.
pub const MAX_N: usize = 26;
const WORDS: usize = 6;

/// The six jump directions in skew coordinates.
pub const DIRECTIONS: [(i32, i32); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)];

/// Triangular number `k(k+1)/2`.
pub const fn tri(k: usize) -> usize {
    k * (k + 1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoardShape {
    n: usize,
}

impl BoardShape {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::BoardSize(n));
        }
        Ok(BoardShape { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn hole_count(self) -> usize {
        tri(self.n)
    }

    pub fn contains(self, c: HoleCoord) -> bool {
        c.is_valid(self.n)
    }

    /// All holes in bit-index order.
    pub fn holes(self) -> impl Iterator<Item = HoleCoord> {
        let n = self.n as i32;
        (0..n).flat_map(|y| (0..=y).map(move |x| HoleCoord::new(x, y)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HoleCoord {
    pub x: i32,
    pub y: i32,
}

impl HoleCoord {
    pub const fn new(x: i32, y: i32) -> Self {
        HoleCoord { x, y }
    }

    pub fn is_valid(self, n: usize) -> bool {
        0 <= self.x && self.x <= self.y && (self.y as usize) < n
    }

    pub fn index(self) -> usize {
        tri(self.y as usize) + self.x as usize
    }

    pub fn from_index(i: usize) -> Self {
        let mut y = 0;
        while tri(y + 1) <= i {
            y += 1;
        }
        HoleCoord::new((i - tri(y)) as i32, y as i32)
    }

    pub fn offset(self, dx: i32, dy: i32) -> Self {
        HoleCoord::new(self.x + dx, self.y + dy)
    }

    /// Alphanumeric name, `(6, 9)` -> `g10`.
    pub fn to_alpha(self) -> Result<String> {
        if !(0..26).contains(&self.x) || self.y < 0 {
            return Err(Error::Unrepresentable(self.x, self.y));
        }
        Ok(format!("{}{}", (b'a' + self.x as u8) as char, self.y + 1))
    }

    pub fn from_alpha(text: &str) -> Result<Self> {
        let text = text.trim();
        let mut chars = text.chars();
        let letter = chars.next().ok_or_else(|| Error::BadHole(text.to_string()))?;
        let letter = letter.to_ascii_lowercase();
        if !letter.is_ascii_lowercase() {
            return Err(Error::BadHole(text.to_string()));
        }
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::BadHole(text.to_string()));
        }
        let row: i32 = digits.parse().map_err(|_| Error::BadHole(text.to_string()))?;
        if row < 1 {
            return Err(Error::BadHole(text.to_string()));
        }
        Ok(HoleCoord::new((letter as u8 - b'a') as i32, row - 1))
    }

    /// Hole class `(x + y) mod 3`.
    pub fn class(self) -> u8 {
        ((self.x + self.y).rem_euclid(3)) as u8
    }
}

impl fmt::Display for HoleCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_alpha() {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "({},{})", self.x, self.y),
        }
    }
}

impl FromStr for HoleCoord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HoleCoord::from_alpha(s)
    }
}

impl Serialize for HoleCoord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HoleCoord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        HoleCoord::from_alpha(&s).map_err(serde::de::Error::custom)
    }
}

/// An element `r^k f^s` of the board's symmetry group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Transform {
    I,
    R,
    R2,
    F,
    RF,
    R2F,
}

impl Transform {
    pub const ALL: [Transform; 6] = [
        Transform::I,
        Transform::R,
        Transform::R2,
        Transform::F,
        Transform::RF,
        Transform::R2F,
    ];

    fn parts(self) -> (u8, bool) {
        match self {
            Transform::I => (0, false),
            Transform::R => (1, false),
            Transform::R2 => (2, false),
            Transform::F => (0, true),
            Transform::RF => (1, true),
            Transform::R2F => (2, true),
        }
    }

    fn from_parts(rot: u8, flip: bool) -> Self {
        match (rot % 3, flip) {
            (0, false) => Transform::I,
            (1, false) => Transform::R,
            (2, false) => Transform::R2,
            (0, true) => Transform::F,
            (1, true) => Transform::RF,
            _ => Transform::R2F,
        }
    }

    pub fn index(self) -> usize {
        Transform::ALL.iter().position(|&t| t == self).unwrap()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Transform) -> Transform {
        let (a, s) = self.parts();
        let (b, t) = other.parts();
        // f r^b = r^-b f
        let b = if s { (3 - b) % 3 } else { b };
        Transform::from_parts(a + b, s ^ t)
    }

    pub fn inverse(self) -> Transform {
        Transform::ALL
            .into_iter()
            .find(|&u| self.compose(u) == Transform::I)
            .unwrap()
    }

    pub fn apply(self, c: HoleCoord, n: usize) -> HoleCoord {
        let (rot, flip) = self.parts();
        let m = n as i32 - 1;
        let mut c = c;
        if flip {
            c = HoleCoord::new(c.y - c.x, c.y);
        }
        for _ in 0..rot {
            c = HoleCoord::new(c.y - c.x, m - c.x);
        }
        c
    }

    /// Linear part acting on a direction vector.
    pub fn apply_dir(self, d: (i32, i32)) -> (i32, i32) {
        let (rot, flip) = self.parts();
        let mut d = d;
        if flip {
            d = (d.1 - d.0, d.1);
        }
        for _ in 0..rot {
            d = (d.1 - d.0, -d.0);
        }
        d
    }

    pub fn name(self) -> &'static str {
        match self {
            Transform::I => "i",
            Transform::R => "r",
            Transform::R2 => "r2",
            Transform::F => "f",
            Transform::RF => "rf",
            Transform::R2F => "r2f",
        }
    }
}

/// Occupancy of a board of side `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Position {
    n: u8,
    bits: [u64; WORDS],
}

impl Position {
    pub fn empty(n: usize) -> Self {
        assert!((2..=MAX_N).contains(&n), "board side {n} out of range");
        Position { n: n as u8, bits: [0; WORDS] }
    }

    pub fn full(n: usize) -> Self {
        let mut p = Position::empty(n);
        for i in 0..tri(n) {
            p.bits[i / 64] |= 1 << (i % 64);
        }
        p
    }

    pub fn with_vacancy(n: usize, v: HoleCoord) -> Self {
        let mut p = Position::full(n);
        p.remove(v);
        p
    }

    pub fn single(n: usize, c: HoleCoord) -> Self {
        let mut p = Position::empty(n);
        p.insert(c);
        p
    }

    pub fn from_holes<I: IntoIterator<Item = HoleCoord>>(n: usize, holes: I) -> Result<Self> {
        let mut p = Position::empty(n);
        for c in holes {
            if !c.is_valid(n) {
                return Err(Error::OffBoard(c.to_string(), n));
            }
            p.insert(c);
        }
        Ok(p)
    }

    /// Low 64 bits; the whole position for `n <= 10`.
    pub fn from_u64(n: usize, bits: u64) -> Self {
        let mut p = Position::empty(n);
        p.bits[0] = bits;
        p
    }

    pub fn as_u64(&self) -> u64 {
        debug_assert!(tri(self.n()) <= 64);
        self.bits[0]
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn shape(&self) -> BoardShape {
        BoardShape { n: self.n() }
    }

    pub fn contains(&self, c: HoleCoord) -> bool {
        c.is_valid(self.n()) && self.get(c.index())
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, c: HoleCoord) {
        debug_assert!(c.is_valid(self.n()));
        let i = c.index();
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, c: HoleCoord) {
        debug_assert!(c.is_valid(self.n()));
        let i = c.index();
        self.bits[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn pegs(&self) -> impl Iterator<Item = HoleCoord> + '_ {
        (0..tri(self.n())).filter(|&i| self.get(i)).map(HoleCoord::from_index)
    }

    pub fn complement(&self) -> Self {
        let full = Position::full(self.n());
        let mut p = *self;
        for (w, f) in p.bits.iter_mut().zip(full.bits) {
            *w = !*w & f;
        }
        p
    }

    pub fn transform(&self, t: Transform) -> Self {
        if t == Transform::I {
            return *self;
        }
        let n = self.n();
        let mut p = Position::empty(n);
        for c in self.pegs() {
            p.insert(t.apply(c, n));
        }
        p
    }

    pub fn is_fixed_by(&self, t: Transform) -> bool {
        self.transform(t) == *self
    }

    /// Numeric order with the highest word most significant.
    fn key(&self) -> [u64; WORDS] {
        let mut k = self.bits;
        k.reverse();
        k
    }

    /// Smallest image under `group`.
    pub fn canonical_under(&self, group: &[Transform]) -> Self {
        group
            .iter()
            .map(|&t| self.transform(t))
            .min_by_key(|p| p.key())
            .unwrap_or(*self)
    }

    /// Smallest of the six symmetric images.
    pub fn canonical(&self) -> Self {
        self.canonical_under(&Transform::ALL)
    }

    pub fn is_legal(&self, j: &Jump) -> bool {
        let n = self.n();
        j.from.is_valid(n)
            && j.over.is_valid(n)
            && j.to.is_valid(n)
            && self.contains(j.from)
            && self.contains(j.over)
            && !self.contains(j.to)
    }

    /// Every legal jump, ordered by origin index then direction.
    pub fn legal_jumps(&self) -> Vec<Jump> {
        let n = self.n();
        let mut out = Vec::new();
        for from in self.pegs() {
            for &(dx, dy) in &DIRECTIONS {
                let over = from.offset(dx, dy);
                let to = from.offset(2 * dx, 2 * dy);
                if to.is_valid(n) && self.contains(over) && !self.contains(to) {
                    out.push(Jump { from, over, to });
                }
            }
        }
        out
    }

    pub fn apply_jump(&self, j: &Jump) -> Result<Self> {
        if !self.is_legal(j) {
            return Err(Error::IllegalJump { jump: j.to_string(), index: 0 });
        }
        let mut p = *self;
        p.remove(j.from);
        p.remove(j.over);
        p.insert(j.to);
        Ok(p)
    }

    /// Inverse of `apply_jump`; `j` must have just been played.
    pub fn undo_jump(&self, j: &Jump) -> Result<Self> {
        let n = self.n();
        if !(self.contains(j.to) && j.from.is_valid(n) && !self.contains(j.from) && !self.contains(j.over)) {
            return Err(Error::IllegalJump { jump: j.to_string(), index: 0 });
        }
        let mut p = *self;
        p.insert(j.from);
        p.insert(j.over);
        p.remove(j.to);
        Ok(p)
    }

    pub fn apply_move(&self, m: &Move) -> Result<Self> {
        let mut p = *self;
        for (k, j) in m.jumps.iter().enumerate() {
            p = p.apply_jump(j).map_err(|_| Error::IllegalJump { jump: j.to_string(), index: k })?;
        }
        Ok(p)
    }

    pub fn to_alpha_list(&self) -> Vec<String> {
        self.pegs().map(|c| c.to_string()).collect()
    }

    /// Read either a list of occupied holes (`"a1 b2, c3"`) or a row-by-row
    /// picture of `tri(n)` cells using `o`/`x`/`1` for pegs and `.`/`0` for holes.
    pub fn parse_text(n: usize, text: &str) -> Result<Self> {
        BoardShape::new(n)?;
        let cells: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let picture = !cells.is_empty() && cells.iter().all(|c| matches!(c, 'o' | 'x' | '1' | '.' | '0'));
        if picture {
            if cells.len() != tri(n) {
                return Err(Error::Syntax { pos: cells.len(), msg: format!("picture needs {} cells", tri(n)) });
            }
            let pegs = cells.iter().enumerate().filter(|(_, &c)| matches!(c, 'o' | 'x' | '1'));
            return Position::from_holes(n, pegs.map(|(i, _)| HoleCoord::from_index(i)));
        }
        let holes = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(HoleCoord::from_alpha)
            .collect::<Result<Vec<_>>>()?;
        Position::from_holes(n, holes)
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Position(n={}, {:?})", self.n, self.to_alpha_list())
    }
}

/// Rows drawn top to bottom, `o` for a peg and `.` for a hole.
impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n() as i32;
        for y in 0..n {
            let row: Vec<&str> = (0..=y)
                .map(|x| if self.contains(HoleCoord::new(x, y)) { "o" } else { "." })
                .collect();
            writeln!(f, "{}{}", " ".repeat((n - 1 - y) as usize), row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Jump {
    pub from: HoleCoord,
    pub over: HoleCoord,
    pub to: HoleCoord,
}

impl Jump {
    /// Jump between two holes two steps apart along a lattice direction.
    pub fn between(from: HoleCoord, to: HoleCoord) -> Result<Self> {
        let (dx, dy) = (to.x - from.x, to.y - from.y);
        if dx % 2 != 0 || dy % 2 != 0 || !DIRECTIONS.contains(&(dx / 2, dy / 2)) {
            return Err(Error::NotAJump(from.to_string(), to.to_string()));
        }
        Ok(Jump { from, over: from.offset(dx / 2, dy / 2), to })
    }

    pub fn reversed(&self) -> Jump {
        Jump { from: self.to, over: self.over, to: self.from }
    }

    pub fn transform(&self, t: Transform, n: usize) -> Jump {
        Jump { from: t.apply(self.from, n), over: t.apply(self.over, n), to: t.apply(self.to, n) }
    }

    pub fn offset(&self, dx: i32, dy: i32) -> Jump {
        Jump { from: self.from.offset(dx, dy), over: self.over.offset(dx, dy), to: self.to.offset(dx, dy) }
    }
}

impl fmt::Display for Jump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.from, self.to)
    }
}

/// One or more consecutive jumps by the same peg.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub jumps: Vec<Jump>,
}

impl Move {
    pub fn new(jumps: Vec<Jump>) -> Result<Self> {
        if jumps.is_empty() {
            return Err(Error::EmptyMove);
        }
        if jumps.windows(2).any(|w| w[1].from != w[0].to) {
            return Err(Error::BrokenChain(jumps.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(" ")));
        }
        Ok(Move { jumps })
    }

    pub fn from_holes(holes: &[HoleCoord]) -> Result<Self> {
        if holes.len() < 2 {
            return Err(Error::EmptyMove);
        }
        let jumps = holes.windows(2).map(|w| Jump::between(w[0], w[1])).collect::<Result<Vec<_>>>()?;
        Move::new(jumps)
    }

    pub fn holes(&self) -> Vec<HoleCoord> {
        let mut hs = vec![self.jumps[0].from];
        hs.extend(self.jumps.iter().map(|j| j.to));
        hs
    }

    pub fn start(&self) -> HoleCoord {
        self.jumps[0].from
    }

    pub fn end(&self) -> HoleCoord {
        self.jumps[self.jumps.len() - 1].to
    }

    pub fn transform(&self, t: Transform, n: usize) -> Move {
        Move { jumps: self.jumps.iter().map(|j| j.transform(t, n)).collect() }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.holes().iter().map(|c| c.to_string()).collect();
        f.write_str(&hs.join("-"))
    }
}

/// Group jumps into moves, merging a jump into the previous move when the
/// same peg continues.
pub fn group_jumps(jumps: &[Jump]) -> Vec<Move> {
    let mut moves: Vec<Move> = Vec::new();
    for &j in jumps {
        match moves.last_mut() {
            Some(m) if m.end() == j.from => m.jumps.push(j),
            _ => moves.push(Move { jumps: vec![j] }),
        }
    }
    moves
}

/// Parse comma-separated moves of dash-separated holes.
pub fn parse_moves(text: &str) -> Result<Vec<Move>> {
    let mut moves = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let start = offset + (part.len() - part.trim_start().len());
        offset += part.len() + 1;
        let part = part.trim();
        if part.is_empty() {
            return Err(Error::Syntax { pos: start, msg: "empty move".into() });
        }
        let holes = part
            .split('-')
            .map(|h| HoleCoord::from_alpha(h).map_err(|_| Error::Syntax { pos: start, msg: format!("bad hole in '{part}'") }))
            .collect::<Result<Vec<_>>>()?;
        if holes.len() < 2 {
            return Err(Error::Syntax { pos: start, msg: format!("move '{part}' needs two holes") });
        }
        let m = Move::from_holes(&holes).map_err(|e| Error::Syntax { pos: start, msg: e.to_string() })?;
        moves.push(m);
    }
    Ok(moves)
}

pub fn emit_moves(moves: &[Move]) -> String {
    moves.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
}

/// A one-vacancy-to-one-peg solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub n: usize,
    pub vacancy: HoleCoord,
    pub finish: HoleCoord,
    pub moves: Vec<Move>,
}

#[derive(Serialize, Deserialize)]
struct SolutionRepr {
    n: usize,
    vacancy: HoleCoord,
    finish: HoleCoord,
    moves: String,
}

impl Serialize for Solution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SolutionRepr { n: self.n, vacancy: self.vacancy, finish: self.finish, moves: self.text() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Solution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SolutionRepr::deserialize(d)?;
        let moves = parse_moves(&r.moves).map_err(serde::de::Error::custom)?;
        Ok(Solution { n: r.n, vacancy: r.vacancy, finish: r.finish, moves })
    }
}

/// Where replay failed: move and jump indices, both zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReplayFailure {
    pub move_index: usize,
    pub jump_index: usize,
}

impl Solution {
    /// Build from moves; the vacancy is where the first jump lands and the
    /// finish is where the last one lands.
    pub fn from_moves(n: usize, moves: Vec<Move>) -> Result<Self> {
        BoardShape::new(n)?;
        let first = moves.first().ok_or(Error::EmptyMove)?;
        let vacancy = first.jumps[0].to;
        let finish = moves.last().unwrap().end();
        Ok(Solution { n, vacancy, finish, moves })
    }

    pub fn from_jumps(n: usize, jumps: &[Jump]) -> Result<Self> {
        Solution::from_moves(n, group_jumps(jumps))
    }

    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Solution::from_moves(n, parse_moves(text)?)
    }

    pub fn jumps(&self) -> impl Iterator<Item = &Jump> {
        self.moves.iter().flat_map(|m| m.jumps.iter())
    }

    pub fn jump_count(&self) -> usize {
        self.moves.iter().map(|m| m.jumps.len()).sum()
    }

    pub fn start(&self) -> Position {
        Position::with_vacancy(self.n, self.vacancy)
    }

    /// Replay from the start and return the final position.
    pub fn replay(&self) -> std::result::Result<Position, ReplayFailure> {
        let mut p = self.start();
        for (mi, m) in self.moves.iter().enumerate() {
            for (ji, j) in m.jumps.iter().enumerate() {
                if (ji > 0 && m.jumps[ji - 1].to != j.from) || !p.is_legal(j) {
                    return Err(ReplayFailure { move_index: mi, jump_index: ji });
                }
                p = p.apply_jump(j).unwrap();
            }
        }
        Ok(p)
    }

    /// Positions after every jump, the start included.
    pub fn trace(&self) -> Result<Vec<Position>> {
        let mut p = self.start();
        let mut out = vec![p];
        for j in self.jumps() {
            p = p.apply_jump(j)?;
            out.push(p);
        }
        Ok(out)
    }

    /// Replay succeeds and ends with one peg at `finish`.
    pub fn validate(&self) -> Result<()> {
        if !self.vacancy.is_valid(self.n) || !self.finish.is_valid(self.n) {
            return Err(Error::OffBoard(self.vacancy.to_string(), self.n));
        }
        let end = self.replay().map_err(|f| Error::ReplayFailed { move_index: f.move_index, jump_index: f.jump_index })?;
        if end != Position::single(self.n, self.finish) {
            return Err(Error::NotSolved { pegs: end.count() });
        }
        Ok(())
    }

    /// Time-reversed solution of the swapped problem: the same jumps played in
    /// reverse order from the complemented end position, regrouped greedily.
    /// Chains usually break apart, so the move count can grow.
    pub fn reversed(&self) -> Solution {
        let mut jumps: Vec<Jump> = self.jumps().copied().collect();
        jumps.reverse();
        Solution { n: self.n, vacancy: self.finish, finish: self.vacancy, moves: group_jumps(&jumps) }
    }

    pub fn transform(&self, t: Transform) -> Solution {
        Solution {
            n: self.n,
            vacancy: t.apply(self.vacancy, self.n),
            finish: t.apply(self.finish, self.n),
            moves: self.moves.iter().map(|m| m.transform(t, self.n)).collect(),
        }
    }

    pub fn text(&self) -> String {
        emit_moves(&self.moves)
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Normalized notation: lowercase, one space after each comma.
pub fn normalize(text: &str) -> Result<String> {
    Ok(emit_moves(&parse_moves(text)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HoleCoord {
        s.parse().unwrap()
    }

    #[test]
    fn alpha_round_trip() {
        assert_eq!(HoleCoord::new(6, 9).to_alpha().unwrap(), "g10");
        assert_eq!(h("a1"), HoleCoord::new(0, 0));
        for c in BoardShape::new(12).unwrap().holes() {
            assert_eq!(h(&c.to_alpha().unwrap()), c);
        }
        assert!(HoleCoord::from_alpha("1a").is_err());
        assert!(HoleCoord::from_alpha("a0").is_err());
        assert!(HoleCoord::new(26, 30).to_alpha().is_err());
    }

    #[test]
    fn index_round_trip() {
        for i in 0..tri(MAX_N) {
            assert_eq!(HoleCoord::from_index(i).index(), i);
        }
    }

    #[test]
    fn rotation_example() {
        assert_eq!(Transform::R.apply(HoleCoord::new(0, 1), 5), HoleCoord::new(1, 4));
        assert_eq!(Transform::R.apply(HoleCoord::new(1, 3), 5), HoleCoord::new(2, 3));
    }

    #[test]
    fn group_table() {
        let n = 7;
        for a in Transform::ALL {
            for b in Transform::ALL {
                let ab = a.compose(b);
                for c in BoardShape::new(n).unwrap().holes() {
                    assert_eq!(ab.apply(c, n), a.apply(b.apply(c, n), n));
                }
                for d in DIRECTIONS {
                    assert_eq!(ab.apply_dir(d), a.apply_dir(b.apply_dir(d)));
                }
            }
            assert_eq!(a.compose(a.inverse()), Transform::I);
        }
        assert_eq!(Transform::F.compose(Transform::F), Transform::I);
        assert_eq!(Transform::R.compose(Transform::R).compose(Transform::R), Transform::I);
        // not abelian
        assert_ne!(Transform::R.compose(Transform::F), Transform::F.compose(Transform::R));
    }

    #[test]
    fn directions_closed_under_group() {
        for t in Transform::ALL {
            let mut img: Vec<_> = DIRECTIONS.iter().map(|&d| t.apply_dir(d)).collect();
            img.sort();
            let mut ds = DIRECTIONS.to_vec();
            ds.sort();
            assert_eq!(img, ds);
        }
    }

    #[test]
    fn pair_orbit() {
        let mut orbit: Vec<(String, String)> = Transform::ALL
            .iter()
            .map(|&t| (t.apply(h("a2"), 5).to_string(), t.apply(h("b4"), 5).to_string()))
            .collect();
        orbit.sort();
        let mut want: Vec<(String, String)> = [("a2", "b4"), ("b5", "c4"), ("d4", "b3"), ("b2", "c4"), ("a4", "b3"), ("d5", "b4")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        want.sort();
        assert_eq!(orbit, want);
    }

    #[test]
    fn first_jumps_from_corner() {
        let p = Position::with_vacancy(5, h("a1"));
        let mut js: Vec<String> = p.legal_jumps().iter().map(|j| j.to_string()).collect();
        js.sort();
        assert_eq!(js, ["a3-a1", "c3-a1"]);
        assert!(Position::full(5).legal_jumps().is_empty());
        let q = Position::from_holes(4, [h("a1"), h("a3")]).unwrap();
        assert!(q.legal_jumps().is_empty());
    }

    #[test]
    fn move_removes_pegs() {
        let mut p = Position::full(5);
        p.remove(h("a3"));
        p.remove(h("c3"));
        let m = &parse_moves("a1-a3-c3-a1").unwrap()[0];
        let after = p.apply_move(m).unwrap();
        assert_eq!(after.count(), p.count() - 3);
        assert!(after.contains(h("a1")));
        match p.apply_move(&parse_moves("a1-a3-a5").unwrap()[0]) {
            Err(Error::IllegalJump { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn undo_restores() {
        let p = Position::with_vacancy(6, h("c5"));
        for j in p.legal_jumps() {
            let q = p.apply_jump(&j).unwrap();
            assert_eq!(q.undo_jump(&j).unwrap(), p);
        }
    }

    #[test]
    fn complement_involution() {
        let p = Position::with_vacancy(5, h("b3"));
        assert_eq!(p.complement(), Position::single(5, h("b3")));
        assert_eq!(Position::full(5).complement(), Position::empty(5));
        assert_eq!(p.complement().complement(), p);
    }

    #[test]
    fn parse_t4_fixture() {
        let s = Solution::parse(4, "a4-a2, a1-a3, c4-a4-a2, c3-a3-a1-c3, d4-b2").unwrap();
        assert_eq!(s.moves.len(), 5);
        assert_eq!(s.jump_count(), 8);
        assert_eq!(s.vacancy, h("a2"));
        assert_eq!(s.finish, h("b2"));
        s.validate().unwrap();
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_moves("a4-a2, a1-x3") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_moves("a4-a2,").is_err());
        assert!(parse_moves("a4").is_err());
        assert!(parse_moves("a1-b3").is_err());
    }

    #[test]
    fn normalize_notation() {
        assert_eq!(normalize("A4-a2 ,a1-A3,  c4-a4-a2").unwrap(), "a4-a2, a1-a3, c4-a4-a2");
    }

    #[test]
    fn canonical_corner() {
        let p = Position::single(5, h("a5"));
        assert_eq!(p.canonical(), Position::single(5, h("a1")));
        assert_eq!(Position::single(5, h("e5")).canonical(), Position::single(5, h("a1")));
    }

    #[test]
    fn reverse_regroups() {
        let s = Solution::parse(5, "a3-a1, c3-a3, e5-c3, b2-d4, c5-c3, a5-c5, d5-b5-b3, d4-b2, a4-a2, a1-a3-c3-a1").unwrap();
        s.validate().unwrap();
        let r = s.reversed();
        r.validate().unwrap();
        assert_eq!(r.vacancy, h("a1"));
        assert_eq!(r.jump_count(), s.jump_count());
        assert_eq!(r.reversed().jumps().collect::<Vec<_>>(), s.jumps().collect::<Vec<_>>());
    }

    #[test]
    fn position_text_forms() {
        let a = Position::parse_text(4, "b2 a3, b3 c3 a4 b4 c4 d4 a2").unwrap();
        let b = Position::parse_text(4, ". oo ooo oooo").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, Position::with_vacancy(4, HoleCoord::new(0, 0)));
        assert!(Position::parse_text(4, "o o o").is_err());
    }
}
