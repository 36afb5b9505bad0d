use std::time::{Duration, Instant};

use trisolve::board::{BoardShape, Position, Transform};
use trisolve::classification::{distinct_feasible_pairs, is_feasible_vacancy};
use trisolve::constructive::{choose_subboard, solve_pair, solve_vacancy};

const LIMIT: Duration = Duration::from_secs(1);

#[test]
fn every_feasible_vacancy_4_to_20() {
    let mut failures = Vec::new();
    for n in 4..=20 {
        for s in BoardShape::new(n).unwrap().holes() {
            if !is_feasible_vacancy(n, s).unwrap() {
                continue;
            }
            let t0 = Instant::now();
            match solve_vacancy(n, s) {
                Ok(sol) => {
                    sol.validate().unwrap();
                    assert_eq!(sol.vacancy, s);
                    assert!(t0.elapsed() < LIMIT, "T{n} {s} took {:?}", t0.elapsed());
                }
                Err(e) => failures.push(format!("T{n} {s}: {e}")),
            }
        }
    }
    assert!(failures.is_empty(), "{} failures: {:#?}", failures.len(), failures);
}

#[test]
fn every_feasible_pair_6_to_12() {
    let mut failures = Vec::new();
    for n in 6..=12 {
        for (s, f) in distinct_feasible_pairs(n) {
            let t0 = Instant::now();
            match solve_pair(n, s, f) {
                Ok(sol) => {
                    sol.validate().unwrap();
                    assert_eq!((sol.vacancy, sol.finish), (s, f));
                    assert!(t0.elapsed() < LIMIT, "T{n} {s}->{f} took {:?}", t0.elapsed());
                }
                Err(e) => failures.push(format!("T{n} {s}->{f}: {e}")),
            }
        }
    }
    assert!(failures.is_empty(), "{} failures: {:#?}", failures.len(), failures);
}

#[test]
fn subboards_are_congruent_and_enclose() {
    for n in 7..=20 {
        for s in BoardShape::new(n).unwrap().holes() {
            for b in choose_subboard(n, s).unwrap() {
                assert!(b.contains(s));
                assert_eq!(b.size % 3, n % 3);
                let (l, r, d) = b.gaps(n);
                assert!(l >= 0 && r >= 0 && d >= 0);
                assert_eq!((l % 3, r % 3, d % 3), (0, 0, 0));
            }
        }
    }
}

// A rotationally symmetric position cannot lie on a path from a vacancy back
// to the same hole.
#[test]
fn complement_solutions_avoid_rotational_symmetry() {
    for n in [6, 7, 9, 10] {
        for (s, f) in distinct_feasible_pairs(n).into_iter().filter(|(s, f)| s == f) {
            let sol = solve_pair(n, s, f).unwrap();
            for p in sol.trace().unwrap() {
                assert!(!fixed_by_rotation(&p), "T{n} {s}: {:?}", p.to_alpha_list());
            }
        }
    }
}

fn fixed_by_rotation(p: &Position) -> bool {
    p.is_fixed_by(Transform::R)
}
