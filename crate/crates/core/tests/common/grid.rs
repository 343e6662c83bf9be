//! Brute-force grid decision of two-alternative plan rationalizability,
//! independent of the solver path: constraints are read straight off the
//! plan and the search runs in scaled integer arithmetic.

#![allow(dead_code)]

use evibel::evidence::{EventRef, Skeleton};
use evibel::plan::Plan;

/// Common denominator for the difference grid: lcm(1..=8).
pub const SCALE: i64 = 840;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// All rationals p/q with q <= 8 and |p/q| <= 1, over SCALE.
pub fn difference_values() -> Vec<i64> {
    let mut values = Vec::new();
    for q in 1..=8i64 {
        for p in -q..=q {
            if gcd(p, q) == 1 || (p == 0 && q == 1) {
                values.push(p * (SCALE / q));
            }
        }
    }
    values.sort_unstable();
    values.dedup();
    values
}

/// -1, 0, +1: which side of the tie the first alternative must land on.
fn required_sign(plan: &Plan, event: &EventRef) -> i64 {
    let chosen = plan.choice(event).expect("plan covers the family");
    let first = &plan.alternatives()[0];
    let second = &plan.alternatives()[1];
    match (chosen.contains(first), chosen.contains(second)) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => -1,
        (false, false) => unreachable!("choice sets are non-empty"),
    }
}

fn sign_holds(total: i64, sign: i64) -> bool {
    match sign {
        0 => total == 0,
        1 => total > 0,
        _ => total < 0,
    }
}

/// Grid decision of rationalizability by evidence: search for per-state
/// weight differences meeting every event's required argmax shape.
pub fn oracle_by_evidence(skeleton: &Skeleton, plan: &Plan, values: &[i64]) -> bool {
    let rows: Vec<(Vec<usize>, i64)> = skeleton
        .event_refs()
        .iter()
        .map(|event| {
            let members = skeleton.resolve_event(event).unwrap();
            (members.into_iter().collect(), required_sign(plan, event))
        })
        .collect();
    search(skeleton.states().len(), &rows, values)
}

/// Grid decision of rationalizability by beliefs: search for per-type
/// integral differences; the trivial event constrains their sum.
pub fn oracle_by_beliefs(skeleton: &Skeleton, plan: &Plan, values: &[i64]) -> bool {
    let n_events = skeleton.events().len();
    let mut rows: Vec<(Vec<usize>, i64)> = skeleton
        .events()
        .iter()
        .enumerate()
        .map(|(ei, event)| {
            (
                vec![ei],
                required_sign(plan, &EventRef::named(event.name())),
            )
        })
        .collect();
    rows.push(((0..n_events).collect(), required_sign(plan, &EventRef::Omega)));
    search(n_events, &rows, values)
}

fn search(dims: usize, rows: &[(Vec<usize>, i64)], values: &[i64]) -> bool {
    fn rec(dims: usize, point: &mut Vec<i64>, rows: &[(Vec<usize>, i64)], values: &[i64]) -> bool {
        let depth = point.len();
        if depth == dims {
            return true;
        }
        'next: for &v in values {
            point.push(v);
            for (support, sign) in rows {
                if support.iter().max() == Some(&depth) {
                    let total: i64 = support.iter().map(|&i| point[i]).sum();
                    if !sign_holds(total, *sign) {
                        point.pop();
                        continue 'next;
                    }
                }
            }
            if rec(dims, point, rows, values) {
                return true;
            }
            point.pop();
        }
        false
    }
    rec(dims, &mut Vec::new(), rows, values)
}
