//! Reference implementations written independently of the engine: their own
//! coordinates, jump generation, replay and exhaustive solvers. Slow and
//! plain on purpose.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Triangle of side `n`, holes `(x, y)` with `0 <= x <= y < n`, numbered row
/// by row.
pub struct Tri {
    pub n: usize,
    pub cells: Vec<(i32, i32)>,
    /// `[from, over, to]` cell numbers of every jump.
    pub jumps: Vec<[usize; 3]>,
}

impl Tri {
    pub fn new(n: usize) -> Tri {
        let mut cells = Vec::new();
        for y in 0..n as i32 {
            for x in 0..=y {
                cells.push((x, y));
            }
        }
        let mut t = Tri { n, cells, jumps: Vec::new() };
        let steps = [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)];
        for i in 0..t.cells.len() {
            let (x, y) = t.cells[i];
            for (dx, dy) in steps {
                if let (Some(o), Some(d)) = (t.at(x + dx, y + dy), t.at(x + 2 * dx, y + 2 * dy)) {
                    t.jumps.push([i, o, d]);
                }
            }
        }
        t
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn at(&self, x: i32, y: i32) -> Option<usize> {
        if 0 <= x && x <= y && y < self.n as i32 {
            Some((y * (y + 1) / 2 + x) as usize)
        } else {
            None
        }
    }

    /// `"c5"` is column `c`, row 5.
    pub fn hole(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        let mut chars = name.chars();
        let letter = chars.next()?;
        if !letter.is_ascii_lowercase() {
            return None;
        }
        let row: i32 = chars.as_str().parse().ok()?;
        self.at(letter as i32 - 'a' as i32, row - 1)
    }

    pub fn name(&self, i: usize) -> String {
        let (x, y) = self.cells[i];
        format!("{}{}", (b'a' + x as u8) as char, y + 1)
    }

    /// Colour with three consecutive holes on any line all different.
    pub fn colour(&self, i: usize) -> i32 {
        let (x, y) = self.cells[i];
        (x + y) % 3
    }

    /// Rotation by 120 degrees and one reflection, as cell permutations.
    pub fn rotate(&self, i: usize) -> usize {
        let (x, y) = self.cells[i];
        self.at(y - x, self.n as i32 - 1 - x).unwrap()
    }

    pub fn reflect(&self, i: usize) -> usize {
        let (x, y) = self.cells[i];
        self.at(y - x, y).unwrap()
    }

    /// All six symmetries as permutation tables.
    pub fn symmetries(&self) -> Vec<Vec<usize>> {
        let id: Vec<usize> = (0..self.size()).collect();
        let r: Vec<usize> = id.iter().map(|&i| self.rotate(i)).collect();
        let r2: Vec<usize> = id.iter().map(|&i| r[r[i]]).collect();
        let mut out = vec![id, r, r2];
        for k in 0..3 {
            let g: Vec<usize> = (0..self.size()).map(|i| out[k][self.reflect(i)]).collect();
            out.push(g);
        }
        out
    }
}

/// Outcome of replaying solution text.
#[derive(Debug)]
pub struct Replay {
    pub vacancy: String,
    pub pegs: Vec<String>,
    pub moves: usize,
    pub jumps: usize,
    /// Any position along the way, the start and end included, fixed by rotation.
    pub rotation_fixed: bool,
}

/// Replay `"a3-a1, c3-a3-a1, ..."` from the board full except where the
/// first jump lands.
pub fn replay(n: usize, text: &str) -> Result<Replay, String> {
    let t = Tri::new(n);
    let mut moves: Vec<Vec<usize>> = Vec::new();
    for m in text.split(',') {
        let hs: Option<Vec<usize>> = m.split('-').map(|h| t.hole(h)).collect();
        let hs = hs.ok_or_else(|| format!("bad move '{m}'"))?;
        if hs.len() < 2 {
            return Err(format!("short move '{m}'"));
        }
        moves.push(hs);
    }
    let first = moves.first().ok_or("empty")?;
    let vacancy = first[1];
    let mut board = vec![true; t.size()];
    board[vacancy] = false;
    let fixed = |b: &[bool]| (0..t.size()).all(|i| b[i] == b[t.rotate(i)]);
    let mut rotation_fixed = fixed(&board);
    let mut jumps = 0;
    for (mi, m) in moves.iter().enumerate() {
        for w in m.windows(2) {
            let (a, b) = (t.cells[w[0]], t.cells[w[1]]);
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let ok_dir = matches!((dx, dy), (2, 0) | (-2, 0) | (0, 2) | (0, -2) | (2, 2) | (-2, -2));
            if !ok_dir {
                return Err(format!("move {}: {}-{} is not a jump", mi + 1, t.name(w[0]), t.name(w[1])));
            }
            let over = t.at(a.0 + dx / 2, a.1 + dy / 2).unwrap();
            if !board[w[0]] || !board[over] || board[w[1]] {
                return Err(format!("move {}: {}-{} is illegal", mi + 1, t.name(w[0]), t.name(w[1])));
            }
            board[w[0]] = false;
            board[over] = false;
            board[w[1]] = true;
            jumps += 1;
            rotation_fixed |= fixed(&board);
        }
    }
    let pegs = (0..t.size()).filter(|&i| board[i]).map(|i| t.name(i)).collect();
    Ok(Replay { vacancy: t.name(vacancy), pegs, moves: moves.len(), jumps, rotation_fixed })
}

/// Parity test on hole colours: `(s, f)` is feasible when the full board
/// minus `s` and the lone peg at `f` agree on every pairwise colour parity.
pub fn parity_feasible(t: &Tri, s: usize, f: usize) -> bool {
    let mut c = [0usize; 3];
    for i in 0..t.size() {
        if i != s {
            c[t.colour(i) as usize] += 1;
        }
    }
    let mut d = [0usize; 3];
    d[t.colour(f) as usize] = 1;
    let v = |c: [usize; 3]| [(c[0] + c[1]) % 2, (c[1] + c[2]) % 2, (c[0] + c[2]) % 2];
    v(c) == v(d)
}

/// Orbits of parity-feasible pairs under the six symmetries.
pub fn distinct_pairs(n: usize) -> usize {
    let t = Tri::new(n);
    let syms = t.symmetries();
    let mut seen = HashSet::new();
    for s in 0..t.size() {
        for f in 0..t.size() {
            if parity_feasible(&t, s, f) {
                let key = syms.iter().map(|g| (g[s], g[f])).min().unwrap();
                seen.insert(key);
            }
        }
    }
    seen.len()
}

/// Bitboard helpers for boards with at most 64 holes.
pub struct Small {
    pub t: Tri,
    pub jumps: Vec<(u64, u64, u64)>,
}

impl Small {
    pub fn new(n: usize) -> Small {
        let t = Tri::new(n);
        assert!(t.size() <= 64);
        let jumps = t.jumps.iter().map(|j| (1u64 << j[0], 1u64 << j[1], 1u64 << j[2])).collect();
        Small { t, jumps }
    }

    pub fn full(&self) -> u64 {
        if self.t.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.t.size()) - 1
        }
    }

    pub fn bit(&self, name: &str) -> u64 {
        1 << self.t.hole(name).unwrap()
    }

    pub fn children(&self, b: u64) -> impl Iterator<Item = u64> + '_ {
        self.jumps
            .iter()
            .filter(move |&&(f, o, d)| b & f != 0 && b & o != 0 && b & d == 0)
            .map(move |&(f, o, d)| b ^ f ^ o ^ d)
    }

    /// Can `b` be reduced to one peg (at `goal`, if given)?
    pub fn solvable(&self, b: u64, goal: Option<u64>, memo: &mut HashMap<u64, bool>) -> bool {
        if b.count_ones() == 1 {
            return goal.is_none_or(|g| g == b);
        }
        if let Some(&v) = memo.get(&b) {
            return v;
        }
        let kids: Vec<u64> = self.children(b).collect();
        let v = kids.into_iter().any(|c| self.solvable(c, goal, memo));
        memo.insert(b, v);
        v
    }

    /// Number of jump sequences from `b` to the lone peg `goal`.
    pub fn count(&self, b: u64, goal: u64, memo: &mut HashMap<u64, u128>) -> u128 {
        if b.count_ones() == 1 {
            return (b == goal) as u128;
        }
        if let Some(&v) = memo.get(&b) {
            return v;
        }
        let kids: Vec<u64> = self.children(b).collect();
        let v = kids.into_iter().map(|c| self.count(c, goal, memo)).sum();
        memo.insert(b, v);
        v
    }

    /// Chance of ending with one peg when every legal jump is equally likely.
    pub fn random_play(&self, b: u64, memo: &mut HashMap<u64, BigRational>) -> BigRational {
        if let Some(v) = memo.get(&b) {
            return v.clone();
        }
        let kids: Vec<u64> = self.children(b).collect();
        let v = if kids.is_empty() {
            BigRational::from_integer(BigInt::from((b.count_ones() == 1) as u8))
        } else {
            let k = BigInt::from(kids.len());
            let sum = kids.iter().fold(BigRational::from_integer(BigInt::from(0)), |acc, &c| acc + self.random_play(c, memo));
            sum / BigRational::from_integer(k)
        };
        memo.insert(b, v.clone());
        v
    }

    /// Positions reached by one move: a chain of jumps by one peg.
    pub fn move_children(&self, b: u64) -> HashSet<u64> {
        let mut states = HashSet::new();
        let mut stack: Vec<(u64, u64)> = (0..self.t.size()).map(|i| 1u64 << i).filter(|&f| b & f != 0).map(|f| (b, f)).collect();
        while let Some((cur, at)) = stack.pop() {
            for &(f, o, d) in &self.jumps {
                if f == at && cur & o != 0 && cur & d == 0 {
                    let next = (cur ^ f ^ o ^ d, d);
                    if states.insert(next) {
                        stack.push(next);
                    }
                }
            }
        }
        states.into_iter().map(|(p, _)| p).collect()
    }

    /// Fewest moves from any one-vacancy start to any single peg, by
    /// breadth-first search over moves.
    pub fn shortest_any(&self) -> usize {
        let full = self.full();
        let mut layer: HashSet<u64> = (0..self.t.size()).map(|i| full ^ (1 << i)).collect();
        let mut seen = layer.clone();
        for depth in 1.. {
            let mut next = HashSet::new();
            for &b in &layer {
                for c in self.move_children(b) {
                    if c.count_ones() == 1 {
                        return depth;
                    }
                    if seen.insert(c) {
                        next.insert(c);
                    }
                }
            }
            assert!(!next.is_empty(), "no solution");
            layer = next;
        }
        unreachable!()
    }
}
