//! Pagoda counts on T5: the SAX count, the F−E count and the jump taxonomy.
//!
//! Weights: +1 on the interior holes b3, b4, c4; −1 on the corners and the
//! edge midpoints a3, c3, c5. Each shaded edge region {a2,a3,a4},
//! {b2,c3,d4}, {b5,c5,d5} adds 1 when it holds two or more pegs.

use serde::{Deserialize, Serialize};

use crate::board::{HoleCoord, Jump, Position};
use crate::classification::is_feasible_pair;
use crate::error::{Error, Result};

const fn bit(x: i32, y: i32) -> u64 {
    1 << ((y * (y + 1) / 2 + x) as u64)
}

pub const CORNERS: u64 = bit(0, 0) | bit(0, 4) | bit(4, 4);
pub const INTERIOR: u64 = bit(1, 2) | bit(1, 3) | bit(2, 3);
pub const PLUS: u64 = INTERIOR;
pub const MINUS: u64 = CORNERS | bit(0, 2) | bit(2, 2) | bit(2, 4);
pub const EDGE_REGIONS: [u64; 3] = [
    bit(0, 1) | bit(0, 2) | bit(0, 3),
    bit(1, 1) | bit(2, 2) | bit(3, 3),
    bit(1, 4) | bit(2, 4) | bit(3, 4),
];
pub const FODDER: u64 =
    bit(0, 1) | bit(1, 1) | bit(1, 2) | bit(0, 3) | bit(1, 3) | bit(2, 3) | bit(3, 3) | bit(1, 4) | bit(3, 4);
const BOUNDARY: u64 = ((1 << 15) - 1) & !INTERIOR;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaxBreakdown {
    pub s: i32,
    pub a: i32,
    pub x: i32,
    pub total: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeBreakdown {
    pub f: i32,
    pub e: i32,
    pub total: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum JumpCategory {
    IntoCorner,
    OutOfInterior,
    EdgeToEdge,
    IntoInterior,
    Other,
}

fn t5_bits(p: &Position) -> Result<u64> {
    if p.n() != 5 {
        return Err(Error::WrongShape);
    }
    Ok(p.as_u64())
}

fn ones(b: u64) -> i32 {
    b.count_ones() as i32
}

/// SAX count of a raw T5 bitboard.
pub fn sax_bits(b: u64) -> SaxBreakdown {
    let s = EDGE_REGIONS.iter().filter(|&&r| ones(b & r) >= 2).count() as i32;
    let a = ones(b & PLUS);
    let x = ones(b & MINUS);
    SaxBreakdown { s, a, x, total: s + a - x }
}

/// F−E count of a raw T5 bitboard.
pub fn fe_bits(b: u64) -> FeBreakdown {
    let f = ones(b & FODDER);
    let mut e = ones(b & CORNERS);
    for r in EDGE_REGIONS {
        e += match ones(b & r) {
            0 => 0,
            3 => 2,
            _ => 1,
        };
    }
    FeBreakdown { f, e, total: f - e }
}

pub fn sax_count(p: &Position) -> Result<SaxBreakdown> {
    Ok(sax_bits(t5_bits(p)?))
}

pub fn fe_count(p: &Position) -> Result<FeBreakdown> {
    Ok(fe_bits(t5_bits(p)?))
}

fn checked_jump(p: &Position, j: &Jump) -> Result<u64> {
    let b = t5_bits(p)?;
    if !p.is_legal(j) {
        return Err(Error::IllegalJump { jump: j.to_string(), index: 0 });
    }
    Ok(b)
}

pub fn jump_sax_delta(p: &Position, j: &Jump) -> Result<i32> {
    let b = checked_jump(p, j)?;
    let after = p.apply_jump(j)?.as_u64();
    Ok(sax_bits(after).total - sax_bits(b).total)
}

fn mask(c: HoleCoord) -> u64 {
    1 << c.index()
}

/// Rule-of-thumb category, checked in the listed order.
pub fn classify_jump(p: &Position, j: &Jump) -> Result<JumpCategory> {
    checked_jump(p, j)?;
    Ok(category(j))
}

fn category(j: &Jump) -> JumpCategory {
    category_bits(j.from.index() as u8, j.over.index() as u8, j.to.index() as u8)
}

/// Category of a jump given by hole indices.
pub fn category_bits(from: u8, over: u8, to: u8) -> JumpCategory {
    let (from, over, to) = (1u64 << from, 1u64 << over, 1u64 << to);
    if to & CORNERS != 0 {
        JumpCategory::IntoCorner
    } else if from & INTERIOR != 0 {
        JumpCategory::OutOfInterior
    } else if from & BOUNDARY != 0 && to & BOUNDARY != 0 && over & INTERIOR != 0 {
        JumpCategory::EdgeToEdge
    } else if to & INTERIOR != 0 {
        JumpCategory::IntoInterior
    } else {
        JumpCategory::Other
    }
}

fn is_corner(c: HoleCoord) -> bool {
    mask(c) & CORNERS != 0
}

fn check_pair(vacancy: HoleCoord, finish: HoleCoord) -> Result<()> {
    if !is_feasible_pair(5, vacancy, finish)? {
        return Err(Error::Infeasible(format!("{vacancy} to {finish} on T5")));
    }
    Ok(())
}

/// SAX of the start minus SAX of the single finishing peg.
pub fn slack(vacancy: HoleCoord, finish: HoleCoord) -> Result<i32> {
    check_pair(vacancy, finish)?;
    let start = sax_bits(Position::with_vacancy(5, vacancy).as_u64()).total;
    let end = sax_bits(mask(finish)).total;
    Ok(start - end)
}

/// Slack less one for a corner start and one for a corner finish, for the
/// forced first and last jumps.
pub fn effective_slack(vacancy: HoleCoord, finish: HoleCoord) -> Result<i32> {
    Ok(slack(vacancy, finish)? - is_corner(vacancy) as i32 - is_corner(finish) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HoleCoord {
        s.parse().unwrap()
    }

    #[test]
    fn full_and_single() {
        let full = sax_count(&Position::full(5)).unwrap();
        assert_eq!(full, SaxBreakdown { s: 3, a: 3, x: 6, total: 0 });
        assert_eq!(sax_count(&Position::with_vacancy(5, h("a1"))).unwrap().total, 1);
        assert_eq!(sax_count(&Position::single(5, h("a1"))).unwrap().total, -1);
        assert_eq!(sax_count(&Position::single(5, h("b3"))).unwrap().total, 1);
        assert!(sax_count(&Position::full(6)).is_err());
    }

    #[test]
    fn fodder_counts() {
        assert_eq!(fe_count(&Position::full(5)).unwrap(), FeBreakdown { f: 9, e: 9, total: 0 });
        assert_eq!(fe_count(&Position::with_vacancy(5, h("b3"))).unwrap().f, 8);
    }

    #[test]
    fn categories() {
        let p = Position::with_vacancy(5, h("a1"));
        let j = Jump::between(h("a3"), h("a1")).unwrap();
        assert_eq!(classify_jump(&p, &j).unwrap(), JumpCategory::IntoCorner);
        assert_eq!(jump_sax_delta(&p, &j).unwrap(), -1);
        assert_eq!(category(&Jump::between(h("b3"), h("b5")).unwrap()), JumpCategory::OutOfInterior);
        assert_eq!(category(&Jump::between(h("a3"), h("c5")).unwrap()), JumpCategory::EdgeToEdge);
        assert_eq!(category(&Jump::between(h("a3"), h("c3")).unwrap()), JumpCategory::EdgeToEdge);
        assert_eq!(category(&Jump::between(h("b2"), h("b4")).unwrap()), JumpCategory::IntoInterior);
        assert_eq!(category(&Jump::between(h("a2"), h("a4")).unwrap()), JumpCategory::Other);
        let bad = Jump::between(h("a1"), h("a3")).unwrap();
        assert!(classify_jump(&p, &bad).is_err());
    }

    #[test]
    fn table_one_samples() {
        assert_eq!(effective_slack(h("c5"), h("c5")).unwrap(), 2);
        assert_eq!(effective_slack(h("b3"), h("b3")).unwrap(), -2);
        assert_eq!(effective_slack(h("a1"), h("a4")).unwrap(), 0);
        assert!(slack(h("a1"), h("b3")).is_ok());
        assert!(slack(h("a1"), h("b2")).is_err());
    }
}
