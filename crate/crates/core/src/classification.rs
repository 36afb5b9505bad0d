//! Position classes, feasibility, feasible-pair counts and move bounds.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::board::{tri, BoardShape, HoleCoord, Jump, Position, Transform, DIRECTIONS};
use crate::error::{Error, Result};

/// The jump-invariant parity vector `(c1+c2, c0+c2, c0+c1) mod 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassSignature {
    Empty,
    Peg0,
    Peg1,
    Peg2,
}

impl ClassSignature {
    pub fn from_counts(c: [usize; 3]) -> Self {
        let v = [(c[1] + c[2]) % 2, (c[0] + c[2]) % 2, (c[0] + c[1]) % 2];
        match v {
            [0, 0, 0] => ClassSignature::Empty,
            [0, 1, 1] => ClassSignature::Peg0,
            [1, 0, 1] => ClassSignature::Peg1,
            [1, 1, 0] => ClassSignature::Peg2,
            _ => unreachable!("parity vector {v:?} cannot occur"),
        }
    }

    pub fn vector(self) -> [u8; 3] {
        match self {
            ClassSignature::Empty => [0, 0, 0],
            ClassSignature::Peg0 => [0, 1, 1],
            ClassSignature::Peg1 => [1, 0, 1],
            ClassSignature::Peg2 => [1, 1, 0],
        }
    }

    /// Class of a lone peg with hole class `i`.
    pub fn single(i: u8) -> Self {
        match i % 3 {
            0 => ClassSignature::Peg0,
            1 => ClassSignature::Peg1,
            _ => ClassSignature::Peg2,
        }
    }

    /// Hole classes where a position of this class could end with one peg.
    pub fn finishing_classes(self) -> Vec<u8> {
        match self {
            ClassSignature::Empty => vec![],
            ClassSignature::Peg0 => vec![0],
            ClassSignature::Peg1 => vec![1],
            ClassSignature::Peg2 => vec![2],
        }
    }
}

impl fmt::Display for ClassSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassSignature::Empty => "EMPTY",
            ClassSignature::Peg0 => "PEG0",
            ClassSignature::Peg1 => "PEG1",
            ClassSignature::Peg2 => "PEG2",
        })
    }
}

pub fn hole_class(c: HoleCoord) -> u8 {
    c.class()
}

pub fn class_counts(p: &Position) -> [usize; 3] {
    let mut c = [0; 3];
    for h in p.pegs() {
        c[h.class() as usize] += 1;
    }
    c
}

pub fn position_class(p: &Position) -> ClassSignature {
    ClassSignature::from_counts(class_counts(p))
}

/// A starting vacancy with an optional finishing hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Problem {
    pub n: usize,
    pub vacancy: HoleCoord,
    pub finish: Option<HoleCoord>,
}

impl Problem {
    pub fn new(n: usize, vacancy: HoleCoord, finish: Option<HoleCoord>) -> Result<Self> {
        BoardShape::new(n)?;
        for c in std::iter::once(vacancy).chain(finish) {
            if !c.is_valid(n) {
                return Err(Error::OffBoard(c.to_string(), n));
            }
        }
        Ok(Problem { n, vacancy, finish })
    }

    pub fn start(&self) -> Position {
        Position::with_vacancy(self.n, self.vacancy)
    }

    pub fn is_complement(&self) -> bool {
        self.finish == Some(self.vacancy)
    }
}

fn check_theory_range(n: usize) -> Result<()> {
    BoardShape::new(n)?;
    if n < 4 {
        return Err(Error::TooSmall { n, min: 4 });
    }
    Ok(())
}

fn vacancy_condition(n: usize, s: HoleCoord) -> bool {
    !(n % 3 == 1 && s.class() == 0)
}

fn pair_condition(n: usize, s: HoleCoord, f: HoleCoord) -> bool {
    let (cs, cf) = (s.class(), f.class());
    if n % 3 == 1 {
        cs != 0 && (cs + cf) % 3 == 0
    } else {
        cs == cf
    }
}

/// Whether the one-vacancy start can possibly be solved to one peg.
pub fn is_feasible_vacancy(n: usize, vacancy: HoleCoord) -> Result<bool> {
    check_theory_range(n)?;
    if !vacancy.is_valid(n) {
        return Err(Error::OffBoard(vacancy.to_string(), n));
    }
    Ok(vacancy_condition(n, vacancy))
}

/// The necessary parity condition for playing from `vacancy` to `finish`.
pub fn is_feasible_pair(n: usize, vacancy: HoleCoord, finish: HoleCoord) -> Result<bool> {
    check_theory_range(n)?;
    for c in [vacancy, finish] {
        if !c.is_valid(n) {
            return Err(Error::OffBoard(c.to_string(), n));
        }
    }
    Ok(pair_condition(n, vacancy, finish))
}

pub fn is_feasible(pr: &Problem) -> Result<bool> {
    match pr.finish {
        Some(f) => is_feasible_pair(pr.n, pr.vacancy, f),
        None => is_feasible_vacancy(pr.n, pr.vacancy),
    }
}

/// Canonical orbit representative of a hole: the image with the smallest index.
pub fn canonical_hole(n: usize, c: HoleCoord) -> HoleCoord {
    Transform::ALL.iter().map(|&t| t.apply(c, n)).min_by_key(|h| h.index()).unwrap()
}

/// Canonical representative of a pair under the diagonal group action.
pub fn canonical_pair(n: usize, s: HoleCoord, f: HoleCoord) -> (HoleCoord, HoleCoord) {
    Transform::ALL
        .iter()
        .map(|&t| (t.apply(s, n), t.apply(f, n)))
        .min_by_key(|(a, b)| (a.index(), b.index()))
        .unwrap()
}

/// A transform taking `(s, f)` to its canonical pair.
pub fn canonicalizing_transform(n: usize, s: HoleCoord, f: HoleCoord) -> Transform {
    let target = canonical_pair(n, s, f);
    Transform::ALL.into_iter().find(|&t| (t.apply(s, n), t.apply(f, n)) == target).unwrap()
}

/// One representative per orbit of feasible vacancies.
pub fn distinct_feasible_vacancies(n: usize) -> Vec<HoleCoord> {
    let set: BTreeSet<(usize, HoleCoord)> = BoardShape::new(n)
        .map(|b| b.holes().collect::<Vec<_>>())
        .unwrap_or_default()
        .into_iter()
        .filter(|&c| vacancy_condition(n, c))
        .map(|c| {
            let r = canonical_hole(n, c);
            (r.index(), r)
        })
        .collect();
    set.into_iter().map(|(_, c)| c).collect()
}

/// One representative per orbit of feasible `(vacancy, finish)` pairs. The
/// parity condition is applied for every `n >= 2`.
pub fn distinct_feasible_pairs(n: usize) -> Vec<(HoleCoord, HoleCoord)> {
    let holes: Vec<HoleCoord> = match BoardShape::new(n) {
        Ok(b) => b.holes().collect(),
        Err(_) => return vec![],
    };
    let mut set = BTreeSet::new();
    for &s in &holes {
        for &f in &holes {
            if pair_condition(n, s, f) {
                let (a, b) = canonical_pair(n, s, f);
                set.insert((a.index(), b.index()));
            }
        }
    }
    set.into_iter().map(|(a, b)| (HoleCoord::from_index(a), HoleCoord::from_index(b))).collect()
}

/// Closed-form count of distinct feasible pairs.
pub fn feasible_pair_count_formula(n: usize) -> u64 {
    let t = tri(n) as u64;
    let n = n as u64;
    if n % 3 == 1 {
        (t - 1) * (t - 1) / 27
    } else if n.is_multiple_of(2) {
        (4 * t * t + 9 * n * n) / 72
    } else {
        (4 * t * t + 9 * (n + 1) * (n + 1)) / 72
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: usize,
    pub upper: Option<usize>,
}

/// Merson-region lower bound on the shortest solution.
pub fn lower_bound_moves(n: usize) -> Result<usize> {
    check_theory_range(n)?;
    Ok(tri((n - 4) / 3) + (3 * n - 2) / 2)
}

/// Upper bound from the long-sweep construction, stated only for multiples of 12.
pub fn upper_bound_moves(n: usize) -> Option<usize> {
    if n == 0 || !n.is_multiple_of(12) {
        return None;
    }
    Some(n * n / 8 + 7 * n / 6 - 3)
}

pub fn bounds(n: usize) -> Result<BoundPair> {
    Ok(BoundPair { lower: lower_bound_moves(n)?, upper: upper_bound_moves(n) })
}

/// Fixed by the 120 degree rotation.
pub fn has_rotational_symmetry(p: &Position) -> bool {
    p.is_fixed_by(Transform::R)
}

/// A hole set whose peg-count parity only one line of jumps can change.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityInvariant {
    /// The edge-to-edge line through the centre, e.g. `a3-c3`.
    pub line: (HoleCoord, HoleCoord),
    pub holes: Vec<HoleCoord>,
}

/// Parity counts on T4 broken only by one edge-to-edge jump through b3.
///
/// For each line through b3 the admissible sets form a coset of the
/// jump-invariant subspace; the smallest member is returned.
pub fn derive_t4_parity_invariants() -> Vec<ParityInvariant> {
    let n = 4;
    let holes: Vec<HoleCoord> = BoardShape::new(n).unwrap().holes().collect();
    let mut lines: Vec<[HoleCoord; 3]> = Vec::new();
    for &a in &holes {
        for &(dx, dy) in &DIRECTIONS[..] {
            let b = a.offset(dx, dy);
            let c = a.offset(2 * dx, 2 * dy);
            if c.is_valid(n) && a.index() < c.index() {
                lines.push([a, b, c]);
            }
        }
    }
    let centre = HoleCoord::new(1, 2);
    let mut out = Vec::new();
    for special in lines.iter().filter(|l| l[1] == centre) {
        let mut best: Option<u32> = None;
        for mask in 1u32..(1 << holes.len()) {
            let hits = |l: &[HoleCoord; 3]| l.iter().filter(|c| mask >> c.index() & 1 == 1).count() % 2;
            let ok = lines.iter().all(|l| if l == special { hits(l) == 1 } else { hits(l) == 0 });
            if ok && best.is_none_or(|b| (mask.count_ones(), mask) < (b.count_ones(), b)) {
                best = Some(mask);
            }
        }
        if let Some(mask) = best {
            out.push(ParityInvariant {
                line: (special[0], special[2]),
                holes: (0..holes.len()).filter(|i| mask >> i & 1 == 1).map(HoleCoord::from_index).collect(),
            });
        }
    }
    out
}

/// Whether `j` changes the peg-count parity of `set`.
pub fn breaks_parity(set: &[HoleCoord], j: &Jump) -> bool {
    [j.from, j.over, j.to].iter().filter(|c| set.contains(c)).count() % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HoleCoord {
        s.parse().unwrap()
    }

    #[test]
    fn hole_classes() {
        assert_eq!(hole_class(h("a1")), 0);
        assert_eq!(hole_class(h("b3")), 0);
        // centre of T10 is d7 = (3,6)
        assert_eq!(hole_class(h("d7")), 0);
    }

    #[test]
    fn full_board_classes() {
        assert_eq!(position_class(&Position::full(5)), ClassSignature::Empty);
        assert_eq!(position_class(&Position::full(10)), ClassSignature::Peg0);
        for c in BoardShape::new(6).unwrap().holes() {
            assert_eq!(position_class(&Position::single(6, c)), ClassSignature::single(c.class()));
        }
        assert_eq!(position_class(&Position::with_vacancy(10, h("d7"))), ClassSignature::Empty);
    }

    #[test]
    fn vacancy_feasibility() {
        let reps: Vec<String> = distinct_feasible_vacancies(10).iter().map(|c| c.to_string()).collect();
        assert_eq!(reps, ["a2", "a3", "b4", "a5", "b5", "c6"]);
        assert!(!is_feasible_vacancy(10, h("d7")).unwrap());
        for n in [5, 6] {
            assert!(BoardShape::new(n).unwrap().holes().all(|c| is_feasible_vacancy(n, c).unwrap()));
        }
        assert!(is_feasible_vacancy(3, h("a1")).is_err());
    }

    #[test]
    fn pair_feasibility() {
        assert!(is_feasible_pair(5, h("a1"), h("c5")).unwrap());
        assert!(is_feasible_pair(4, h("a2"), h("c4")).unwrap());
        assert!(!is_feasible_pair(5, h("a1"), h("b2")).unwrap());
        assert!(is_feasible_pair(2, h("a1"), h("a1")).is_err());
    }

    #[test]
    fn pair_counts() {
        let want = [1, 4, 3, 17, 29, 27, 80, 125, 108, 260, 356];
        for (n, &w) in (2..=12).zip(want.iter()) {
            assert_eq!(distinct_feasible_pairs(n).len(), w, "n={n}");
            assert_eq!(feasible_pair_count_formula(n), w as u64, "n={n}");
        }
    }

    #[test]
    fn move_bounds() {
        let want = [5, 6, 8, 10, 12, 13, 17, 18, 20];
        for (n, &w) in (4..=12).zip(want.iter()) {
            assert_eq!(lower_bound_moves(n).unwrap(), w);
        }
        assert_eq!(upper_bound_moves(12), Some(29));
        assert_eq!(upper_bound_moves(24), Some(97));
        assert_eq!(upper_bound_moves(10), None);
    }

    #[test]
    fn symmetric_positions() {
        assert!(has_rotational_symmetry(&Position::empty(7)));
        assert!(has_rotational_symmetry(&Position::full(7)));
        assert!(!has_rotational_symmetry(&Position::with_vacancy(5, h("a1"))));
    }

    #[test]
    fn t4_parity_sets() {
        let inv = derive_t4_parity_invariants();
        assert_eq!(inv.len(), 3);
        let names: Vec<(String, Vec<String>)> = inv
            .iter()
            .map(|p| (format!("{}-{}", p.line.0, p.line.1), p.holes.iter().map(|c| c.to_string()).collect()))
            .collect();
        assert!(names.contains(&("a3-c3".to_string(), vec!["b3".into(), "b4".into(), "c4".into()])));
        // rotation carries each set onto another one
        for p in &inv {
            let mut img: Vec<HoleCoord> = p.holes.iter().map(|&c| Transform::R.apply(c, 4)).collect();
            img.sort_by_key(|c| c.index());
            assert!(inv.iter().any(|q| q.holes == img));
        }
    }
}
