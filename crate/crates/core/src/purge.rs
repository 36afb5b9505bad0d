//! Purges: jump scripts that clear a block of pegs and restore a catalyst.
//!
//! Templates live in `data/purges.txt` in local coordinates and are placed
//! on a board through a [`Frame`]. The scheduler interleaves placed purges
//! with a main jump sequence.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::board::{parse_moves, BoardShape, HoleCoord, Jump, Position, Transform};
use crate::error::{Error, Result};

const CATALOG_TEXT: &str = include_str!("../data/purges.txt");

/// A script together with the catalyst holes that are full when it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub full: Vec<HoleCoord>,
    pub jumps: Vec<Jump>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalystOption {
    pub holes: Vec<HoleCoord>,
    pub scripts: Vec<Script>,
}

/// A catalytic purge in local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub name: String,
    pub cells: Vec<HoleCoord>,
    pub options: Vec<CatalystOption>,
}

/// Edge-row script: clears the cells from one vacancy, leaving the row above
/// full except `leaves`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeScript {
    pub vacancy: HoleCoord,
    pub leaves: HoleCoord,
    pub jumps: Vec<Jump>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeTemplate {
    pub cells: Vec<HoleCoord>,
    pub row: Vec<HoleCoord>,
    pub scripts: Vec<EdgeScript>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub trapezoid: Template,
    pub three: Template,
    pub six: Template,
    pub edge: EdgeTemplate,
}

fn holes(words: &str, line: usize) -> Result<Vec<HoleCoord>> {
    words
        .split_whitespace()
        .map(|w| HoleCoord::from_alpha(w).map_err(|e| Error::Data { line, msg: e.to_string() }))
        .collect()
}

fn jumps_of(text: &str, line: usize) -> Result<Vec<Jump>> {
    let moves = parse_moves(text).map_err(|e| Error::Data { line, msg: e.to_string() })?;
    Ok(moves.into_iter().flat_map(|m| m.jumps).collect())
}

#[derive(Default)]
struct Block {
    name: String,
    cells: Vec<HoleCoord>,
    catalysts: Vec<Vec<HoleCoord>>,
    row: Vec<HoleCoord>,
    scripts: Vec<(usize, Vec<HoleCoord>, Vec<Jump>)>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog> {
        let mut blocks: Vec<Block> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let (key, rest) = l.split_once(' ').unwrap_or((l, ""));
            if key == "purge" {
                blocks.push(Block { name: rest.trim().to_string(), ..Block::default() });
                continue;
            }
            let b = blocks.last_mut().ok_or(Error::Data { line, msg: "entry before any purge".into() })?;
            match key {
                "cells" => b.cells = holes(rest, line)?,
                "catalyst" => b.catalysts.push(holes(rest, line)?),
                "row" => b.row = holes(rest, line)?,
                "script" => {
                    let (head, body) = rest.split_once(':').ok_or(Error::Data { line, msg: "missing ':'".into() })?;
                    b.scripts.push((line, holes(head, line)?, jumps_of(body, line)?));
                }
                _ => return Err(Error::Data { line, msg: format!("unknown key {key}") }),
            }
        }
        let mut take = |name: &str| -> Result<Block> {
            let i = blocks
                .iter()
                .position(|b| b.name == name)
                .ok_or(Error::Data { line: 0, msg: format!("missing purge {name}") })?;
            Ok(blocks.remove(i))
        };
        let trapezoid = Self::template(take("trapezoid")?, true)?;
        let three = Self::template(take("three")?, false)?;
        let six = Self::template(take("six")?, false)?;
        let e = take("edge")?;
        let mut scripts = Vec::new();
        for (line, hs, jumps) in e.scripts {
            if hs.len() != 2 {
                return Err(Error::Data { line, msg: "edge script needs vacancy and leftover".into() });
            }
            scripts.push(EdgeScript { vacancy: hs[0], leaves: hs[1], jumps });
        }
        let cat = Catalog { trapezoid, three, six, edge: EdgeTemplate { cells: e.cells, row: e.row, scripts } };
        cat.verify()?;
        Ok(cat)
    }

    fn template(b: Block, add_reversals: bool) -> Result<Template> {
        let mut options: Vec<CatalystOption> =
            b.catalysts.iter().map(|h| CatalystOption { holes: h.clone(), scripts: Vec::new() }).collect();
        for (line, full, jumps) in b.scripts {
            let opt = options
                .iter_mut()
                .find(|o| full.iter().all(|h| o.holes.contains(h)))
                .ok_or(Error::Data { line, msg: "script matches no catalyst".into() })?;
            opt.scripts.push(Script { full, jumps });
        }
        if add_reversals {
            // The complementary catalyst is handled by the same jumps in reverse order.
            for opt in &mut options {
                let extra: Vec<Script> = opt
                    .scripts
                    .iter()
                    .map(|s| Script {
                        full: opt.holes.iter().copied().filter(|h| !s.full.contains(h)).collect(),
                        jumps: s.jumps.iter().rev().copied().collect(),
                    })
                    .collect();
                opt.scripts.extend(extra);
            }
        }
        Ok(Template { name: b.name, cells: b.cells, options })
    }

    /// The catalog shipped with the crate, verified on first use.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(CATALOG_TEXT).expect("built-in purge catalog"))
    }

    pub fn templates(&self) -> [&Template; 3] {
        [&self.trapezoid, &self.three, &self.six]
    }

    pub fn verify(&self) -> Result<()> {
        for t in self.templates() {
            verify_template(t)?;
        }
        verify_edge(&self.edge)
    }
}

/// Large enough to hold every template in local coordinates.
const ENCLOSING: usize = 8;

fn run_script(start: &Position, jumps: &[Jump], allowed: &BTreeSet<HoleCoord>, name: &str) -> Result<Position> {
    let mut p = *start;
    for (i, j) in jumps.iter().enumerate() {
        if ![j.from, j.over, j.to].iter().all(|h| allowed.contains(h)) {
            return Err(Error::Purge(format!("{name}: jump {j} leaves the template")));
        }
        p = p.apply_jump(j).map_err(|_| Error::Purge(format!("{name}: jump {} ({j}) is illegal", i + 1)))?;
    }
    Ok(p)
}

/// Replay every script on an enclosing board: cells emptied, catalyst
/// restored, everything else untouched.
pub fn verify_template(t: &Template) -> Result<()> {
    for opt in &t.options {
        let allowed: BTreeSet<HoleCoord> = t.cells.iter().chain(&opt.holes).copied().collect();
        let configs: BTreeSet<Vec<HoleCoord>> = opt.scripts.iter().map(|s| sorted(&s.full)).collect();
        if configs.len() != opt.scripts.len() {
            return Err(Error::Purge(format!("{}: duplicate catalyst configuration", t.name)));
        }
        for s in &opt.scripts {
            if s.full.is_empty() || s.full.len() == opt.holes.len() {
                return Err(Error::Purge(format!("{}: catalyst must be unlike", t.name)));
            }
            let mut start = Position::full(ENCLOSING);
            for h in opt.holes.iter().filter(|h| !s.full.contains(h)) {
                start.remove(*h);
            }
            let mut want = start;
            for &c in &t.cells {
                want.remove(c);
            }
            let end = run_script(&start, &s.jumps, &allowed, &t.name)?;
            if end != want {
                return Err(Error::Purge(format!("{}: script for {:?} has the wrong effect", t.name, s.full)));
            }
        }
    }
    Ok(())
}

pub fn verify_edge(e: &EdgeTemplate) -> Result<()> {
    let allowed: BTreeSet<HoleCoord> = e.cells.iter().chain(&e.row).copied().collect();
    for s in &e.scripts {
        if !e.cells.contains(&s.vacancy) || !e.row.contains(&s.leaves) || s.vacancy.class() != s.leaves.class() {
            return Err(Error::Purge(format!("edge script {}: bad endpoints", s.vacancy)));
        }
        let mut start = Position::full(ENCLOSING);
        start.remove(s.vacancy);
        let mut want = Position::full(ENCLOSING);
        for &c in e.cells.iter().chain(std::iter::once(&s.leaves)) {
            want.remove(c);
        }
        if run_script(&start, &s.jumps, &allowed, "edge")? != want {
            return Err(Error::Purge(format!("edge script {}: wrong effect", s.vacancy)));
        }
    }
    Ok(())
}

fn sorted(h: &[HoleCoord]) -> Vec<HoleCoord> {
    let mut v = h.to_vec();
    v.sort();
    v
}

/// Local coordinates on `T_size`, transformed by `t` and translated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub t: Transform,
    pub size: usize,
    pub dx: i32,
    pub dy: i32,
}

impl Frame {
    pub fn identity(n: usize) -> Frame {
        Frame { t: Transform::I, size: n, dx: 0, dy: 0 }
    }

    pub fn apply(&self, c: HoleCoord) -> HoleCoord {
        self.t.apply(c, self.size).offset(self.dx, self.dy)
    }

    pub fn jump(&self, j: &Jump) -> Jump {
        Jump { from: self.apply(j.from), over: self.apply(j.over), to: self.apply(j.to) }
    }

    /// The same frame with local coordinates mirrored first.
    pub fn mirrored(&self) -> Frame {
        Frame { t: self.t.compose(Transform::F), ..*self }
    }

    /// Local shift applied before this frame.
    fn shifted(&self, x: i32, y: i32) -> impl Fn(HoleCoord) -> HoleCoord + '_ {
        move |c| self.apply(c.offset(x, y))
    }
}

/// A purge placed on a board with its chosen catalyst, in board coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedPurge {
    pub label: String,
    pub cells: Vec<HoleCoord>,
    pub catalyst: CatalystOption,
}

impl PlacedPurge {
    fn place(t: &Template, label: &str, map: impl Fn(HoleCoord) -> HoleCoord, option: usize) -> PlacedPurge {
        let mj = |j: &Jump| Jump { from: map(j.from), over: map(j.over), to: map(j.to) };
        let o = &t.options[option];
        PlacedPurge {
            label: label.to_string(),
            cells: t.cells.iter().map(|&c| map(c)).collect(),
            catalyst: CatalystOption {
                holes: o.holes.iter().map(|&c| map(c)).collect(),
                scripts: o
                    .scripts
                    .iter()
                    .map(|s| Script { full: s.full.iter().map(|&c| map(c)).collect(), jumps: s.jumps.iter().map(mj).collect() })
                    .collect(),
            },
        }
    }
}

/// Which catalyst each purge of a chain uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CatalystChoice {
    /// 3-purge straddles its top cell; a 6-purge next to the chain start
    /// uses the pair left of its top row, later ones the pair left of
    /// their bottom row.
    #[default]
    Standard,
    /// Every purge uses the other catalyst.
    Alternate,
}

/// 3- and 6-purges clearing a parallelogram of `width` columns in rows
/// `y0..y0+3`, starting at column `x0` of the top row in `frame`'s local
/// coordinates. The neighbour on the left is assumed to supply the catalyst.
pub fn chain_purges(frame: Frame, x0: i32, y0: i32, width: usize) -> Result<Vec<PlacedPurge>> {
    chain_purges_with(frame, x0, y0, width, CatalystChoice::Standard)
}

pub fn chain_purges_with(frame: Frame, x0: i32, y0: i32, width: usize, choice: CatalystChoice) -> Result<Vec<PlacedPurge>> {
    if width == 1 {
        return Err(Error::Purge("a chain of width 1 cannot be cleared".into()));
    }
    let cat = Catalog::builtin();
    let mut out = Vec::new();
    let mut x = x0;
    let end = x0 + width as i32;
    if width % 2 == 1 {
        let opt = if choice == CatalystChoice::Standard { 0 } else { 1 };
        out.push(PlacedPurge::place(&cat.three, "3", frame.shifted(x - 1, y0 - 2), opt));
        x += 1;
    }
    while x < end {
        let opt = usize::from(x != x0) ^ usize::from(choice == CatalystChoice::Alternate);
        out.push(PlacedPurge::place(&cat.six, "6", frame.shifted(x - 2, y0 - 3), opt));
        x += 2;
    }
    Ok(out)
}

/// Purges clearing the bottom three rows of `T_k` in `frame`, with a
/// trapezoid at the left end whose catalyst is the left end of row `k-4`.
pub fn band_purges(frame: Frame) -> Result<Vec<PlacedPurge>> {
    band_purges_with(frame, CatalystChoice::Standard)
}

pub fn band_purges_with(frame: Frame, choice: CatalystChoice) -> Result<Vec<PlacedPurge>> {
    let k = frame.size;
    if k < 7 {
        return Err(Error::Purge(format!("band needs a board of side at least 7, got {k}")));
    }
    let cat = Catalog::builtin();
    let y0 = k as i32 - 3;
    let mut out = vec![PlacedPurge::place(&cat.trapezoid, "T", frame.shifted(0, y0 - 3), 0)];
    out.extend(chain_purges_with(frame, 3, y0, k - 5, choice)?);
    Ok(out)
}

/// An edge-row purge placed at column `tx` of the last three rows of `T_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePlacement {
    pub tx: i32,
    pub mirrored: bool,
    pub jumps: Vec<Jump>,
    /// The vacancy left in the row above the bottom three.
    pub leaves: HoleCoord,
    pub sides: Vec<PlacedPurge>,
}

/// Clear the last three rows of `T_n` from a vacancy in them. The trapezoid
/// part is shifted (or mirrored) to cover the vacancy and the rest of the
/// rows is cleared by 3- and 6-purge chains on both sides.
pub fn edge_row_purges(n: usize, vacancy: HoleCoord) -> Result<Vec<EdgePlacement>> {
    BoardShape::new(n)?;
    if n < 6 || vacancy.y < n as i32 - 3 || !vacancy.is_valid(n) {
        return Err(Error::Purge(format!("{vacancy} is not in the last three rows of T{n}")));
    }
    let cat = Catalog::builtin();
    let y0 = n as i32 - 3;
    let mut out = Vec::new();
    for mirrored in [false, true] {
        let frame = if mirrored { Frame::identity(n).mirrored() } else { Frame::identity(n) };
        let local = if mirrored { Transform::F.apply(vacancy, n) } else { vacancy };
        for tx in 0..=(n as i32 - 5) {
            let right = n as i32 - 5 - tx;
            if tx == 1 || right == 1 {
                continue;
            }
            let v = local.offset(-tx, -(y0 - 3));
            let Some(s) = cat.edge.scripts.iter().find(|s| s.vacancy == v) else { continue };
            let map = frame.shifted(tx, y0 - 3);
            // The hole left behind must be on the smaller board.
            if !map(s.leaves).is_valid(n - 3) {
                continue;
            }
            let jumps = s.jumps.iter().map(|j| Jump { from: map(j.from), over: map(j.over), to: map(j.to) }).collect();
            let mut sides = chain_purges(frame, tx + 3, y0, right as usize)?;
            sides.extend(chain_purges(frame.mirrored(), n as i32 - 2 - tx, y0, tx as usize)?);
            out.push(EdgePlacement { tx, mirrored, jumps, leaves: map(s.leaves), sides });
        }
    }
    Ok(out)
}

/// Where a scheduled jump came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    Main,
    Purge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheduled {
    pub jumps: Vec<Jump>,
    pub sources: Vec<Source>,
    pub end: Position,
    /// Purges that never finished.
    pub unfinished: usize,
}

struct Running {
    next: usize,
    script: Option<usize>,
    started: usize,
}

/// Interleave purges with the main sequence:
/// 1. start any unstarted purge whose catalyst is unlike (and whose first
///    jump is legal);
/// 2. else advance started purges, most recently started first;
/// 3. else stop at one peg, or play the next main jump.
///
/// Running out of main jumps ends the run; an illegal main jump is a stall.
pub fn schedule(start: &Position, main: &[Jump], purges: &[PlacedPurge]) -> Result<Scheduled> {
    let mut p = *start;
    let mut state: Vec<Running> = purges.iter().map(|_| Running { next: 0, script: None, started: 0 }).collect();
    let mut order = 0;
    let mut out = Scheduled { jumps: Vec::new(), sources: Vec::new(), end: p, unfinished: 0 };
    let mut mi = 0;
    let play = |p: &mut Position, j: Jump, src: Source, out: &mut Scheduled| {
        *p = p.apply_jump(&j).expect("checked jump");
        out.jumps.push(j);
        out.sources.push(src);
    };
    'outer: loop {
        for (i, purge) in purges.iter().enumerate() {
            if state[i].script.is_some() {
                continue;
            }
            let cat = &purge.catalyst;
            let full: Vec<HoleCoord> = sorted(&cat.holes.iter().copied().filter(|&h| p.contains(h)).collect::<Vec<_>>());
            if full.is_empty() || full.len() == cat.holes.len() {
                continue;
            }
            let Some(si) = cat.scripts.iter().position(|s| sorted(&s.full) == full) else { continue };
            let first = cat.scripts[si].jumps[0];
            if p.is_legal(&first) {
                order += 1;
                state[i] = Running { next: 1, script: Some(si), started: order };
                play(&mut p, first, Source::Purge(i), &mut out);
                continue 'outer;
            }
        }
        let mut live: Vec<usize> = (0..purges.len())
            .filter(|&i| state[i].script.is_some_and(|s| state[i].next < purges[i].catalyst.scripts[s].jumps.len()))
            .collect();
        live.sort_by_key(|&i| std::cmp::Reverse(state[i].started));
        for i in live {
            let s = state[i].script.unwrap();
            let j = purges[i].catalyst.scripts[s].jumps[state[i].next];
            if p.is_legal(&j) {
                state[i].next += 1;
                play(&mut p, j, Source::Purge(i), &mut out);
                continue 'outer;
            }
        }
        if p.count() <= 1 || mi == main.len() {
            break;
        }
        let j = main[mi];
        if !p.is_legal(&j) {
            return Err(Error::Stall { pegs: p.count(), jumps: out.jumps.len() });
        }
        mi += 1;
        play(&mut p, j, Source::Main, &mut out);
    }
    out.end = p;
    out.unfinished = (0..purges.len())
        .filter(|&i| state[i].script.is_none_or(|s| state[i].next < purges[i].catalyst.scripts[s].jumps.len()))
        .count();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HoleCoord {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_catalog_verifies() {
        let c = Catalog::builtin();
        assert_eq!(c.trapezoid.cells.len(), 12);
        assert_eq!(c.trapezoid.options[0].scripts.len(), 6);
        assert_eq!(c.edge.scripts.len(), 12);
    }

    #[test]
    fn reversed_trapezoid_script_matches_printed_example() {
        let opt = &Catalog::builtin().trapezoid.options[0];
        let s = opt.scripts.iter().find(|s| s.full == vec![h("a3")]).unwrap();
        let text: Vec<String> = s.jumps.iter().take(6).map(|j| j.to_string()).collect();
        assert_eq!(text, ["d5-b3", "a4-c4", "a6-a4", "c6-a6", "e6-c6", "c5-c3"]);
    }

    #[test]
    fn broken_script_rejected() {
        let bad = CATALOG_TEXT.replace("script a3: a3-c3, d5-b3, c3-a3", "script a3: a3-c3, c3-a3");
        assert!(Catalog::parse(&bad).is_err());
    }

    #[test]
    fn width_one_chain_rejected() {
        assert!(chain_purges(Frame::identity(10), 3, 7, 1).is_err());
    }

    #[test]
    fn band_layout_t10() {
        let b = band_purges(Frame::identity(10)).unwrap();
        let labels: Vec<&str> = b.iter().map(|p| p.label.as_str()).collect();
        assert_eq!(labels, ["T", "3", "6", "6"]);
        assert_eq!(b[1].cells, vec![h("d8"), h("e9"), h("f10")]);
        assert_eq!(b[1].catalyst.holes, vec![h("c8"), h("e8")]);
        assert_eq!(b[2].catalyst.holes, vec![h("e10"), h("f10")]);
    }

    #[test]
    fn figure_seven_attribution() {
        let band = band_purges(Frame::identity(10)).unwrap();
        let start = Position::with_vacancy(10, h("c7"));
        let run = schedule(&start, &[], &band).unwrap();
        let names = ["T", "3", "L", "R"];
        let seq: Vec<&str> = run
            .sources
            .iter()
            .map(|s| match s {
                Source::Purge(i) => names[*i],
                Source::Main => "M",
            })
            .collect();
        let want = "T 3 3 L L R R R R R R L L 3 L L".split(' ').collect::<Vec<_>>();
        assert_eq!(&seq[..16], &want[..]);
        assert_eq!(run.jumps.len(), 27);
        assert_eq!(run.unfinished, 0);
        let mut want_end = Position::with_vacancy(10, h("c7"));
        for p in &band {
            for &c in &p.cells {
                want_end.remove(c);
            }
        }
        assert_eq!(run.end, want_end);
    }
}
