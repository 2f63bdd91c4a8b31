//! Independent brute-force reference implementations.
//!
//! These are deliberately naive: they work on explicit element sets and
//! exhaustive enumeration, never on the closed-form shortcuts used by the
//! production code, so the test suites can hold the two against each other.

use crate::model::{IntegerProgram, Relation, Sense};

/// Checks whether a candidate coordinate vector describes a set closed
/// under addition: build `S = {0} union { n >= m : m v_{n mod m} + (n mod m)
/// <= n }` and test every pairwise sum up to the bound `m * (max(v) + 1)`,
/// beyond which no new violation can occur. `v` must be positive and of
/// length `m - 1`; the result then agrees with membership of `v` in the
/// Kunz polytope.
pub fn closed_under_addition(m: i64, v: &[i64]) -> bool {
    assert_eq!(v.len() as i64, m - 1);
    assert!(v.iter().all(|&c| c >= 1));
    let member = |n: i64| -> bool {
        if n < 0 {
            return false;
        }
        let r = n % m;
        if r == 0 {
            return true;
        }
        m * v[(r - 1) as usize] + r <= n
    };
    let max_v = v.iter().copied().max().unwrap_or(1);
    let limit = m * (max_v + 1);
    let elements: Vec<i64> = (1..=limit).filter(|&n| member(n)).collect();
    for (i, &a) in elements.iter().enumerate() {
        for &b in &elements[i..] {
            if !member(a + b) {
                return false;
            }
        }
    }
    true
}

/// Explicit additive closure of a generating set up to `limit`, as a
/// membership bitmap: `out[n]` says whether `n` is a sum of generators.
pub fn closure_bitmap(generators: &[i64], limit: usize) -> Vec<bool> {
    let mut member = vec![false; limit + 1];
    member[0] = true;
    for n in 1..=limit {
        member[n] = generators
            .iter()
            .any(|&g| (g as usize) <= n && member[n - g as usize]);
    }
    member
}

/// Special gaps greater than `m` straight from the definition: gaps `h > m`
/// such that the set stays closed under addition after adjoining `h`. The
/// semigroup itself is rebuilt by additive closure of the Apéry generating
/// set `{m} union {m x_i + i}`, so nothing here shares code with the
/// production shortcut.
pub fn special_gaps_by_closure(m: i64, x: &[i64]) -> Vec<i64> {
    assert_eq!(x.len() as i64, m - 1);
    let mut generators = vec![m];
    for (i, &v) in x.iter().enumerate() {
        generators.push(m * v + (i as i64 + 1));
    }
    let max_gen = *generators.iter().max().unwrap();
    // Twice the largest possible gap is enough for every test below.
    let limit = (2 * max_gen) as usize;
    let member = closure_bitmap(&generators, limit);
    let frobenius = (0..=limit).rev().find(|&n| !member[n]);
    let Some(frobenius) = frobenius else {
        return Vec::new(); // no gaps at all cannot happen for m >= 2
    };
    let mut out = Vec::new();
    for h in (m + 1)..=(frobenius as i64) {
        let hu = h as usize;
        if member[hu] {
            continue;
        }
        if !member[2 * hu] {
            continue;
        }
        let closed = (1..=frobenius)
            .filter(|&s| member[s])
            .all(|s| hu + s > limit || member[hu + s]);
        if closed {
            out.push(h);
        }
    }
    out
}

/// Result of exhaustively enumerating a bounded integer program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridResult {
    Infeasible,
    Optimal { value: i64, optima: Vec<Vec<i64>> },
}

/// Exhaustive grid enumeration of a bounded integer program: every point of
/// the bounding box is tested against every constraint. Returns `None` when
/// the box holds more than `cap` points. Optima are sorted
/// lexicographically.
pub fn grid_optimize(ip: &IntegerProgram, cap: u64) -> Option<GridResult> {
    let n = ip.num_vars;
    let mut size: u64 = 1;
    for v in 0..n {
        if ip.lower[v] > ip.upper[v] {
            return Some(GridResult::Infeasible);
        }
        let w = (ip.upper[v] - ip.lower[v] + 1) as u64;
        size = size.checked_mul(w)?;
        if size > cap {
            return None;
        }
    }
    let feasible = |p: &[i64]| {
        ip.constraints.iter().all(|c| {
            let lhs: i128 = c.terms.iter().map(|&(v, a)| a as i128 * p[v] as i128).sum();
            match c.relation {
                Relation::Le => lhs <= c.rhs as i128,
                Relation::Ge => lhs >= c.rhs as i128,
                Relation::Eq => lhs == c.rhs as i128,
            }
        })
    };
    let objective = |p: &[i64]| -> i128 {
        ip.objective.iter().map(|&(v, a)| a as i128 * p[v] as i128).sum()
    };
    let mut point: Vec<i64> = ip.lower.clone();
    let mut best: Option<i128> = None;
    let mut optima: Vec<Vec<i64>> = Vec::new();
    loop {
        if feasible(&point) {
            let val = objective(&point);
            let better = match (best, ip.sense) {
                (None, _) => true,
                (Some(b), Sense::Minimize) => val < b,
                (Some(b), Sense::Maximize) => val > b,
            };
            if better {
                best = Some(val);
                optima.clear();
                optima.push(point.clone());
            } else if best == Some(val) {
                optima.push(point.clone());
            }
        }
        // mixed-radix increment
        let mut v = 0;
        loop {
            if v == n {
                let result = match best {
                    None => GridResult::Infeasible,
                    Some(val) => {
                        optima.sort_unstable();
                        GridResult::Optimal { value: val as i64, optima }
                    }
                };
                return Some(result);
            }
            if point[v] < ip.upper[v] {
                point[v] += 1;
                break;
            }
            point[v] = ip.lower[v];
            v += 1;
        }
    }
}
