//! Minimal nonnegative solutions of linear Diophantine systems
//! (Contejean–Devie completion).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::vector::Vector;

/// Default cap on the number of frontier vectors explored.
pub const DEFAULT_BUDGET: usize = 2_000_000;

fn image(columns: &[Vector], rows: usize, x: &[u32]) -> Vec<i128> {
    let mut out = vec![0i128; rows];
    for (c, &k) in columns.iter().zip(x) {
        if k == 0 {
            continue;
        }
        for (o, &v) in out.iter_mut().zip(c) {
            *o += v as i128 * k as i128;
        }
    }
    out
}

fn dominates(x: &[u32], m: &[u32]) -> bool {
    x.iter().zip(m).all(|(a, b)| a >= b)
}

/// Minimal nonzero `x` in `N^n` with `sum_i x_i columns[i] = 0`, where
/// variable `i` is capped by `caps[i]` when given.
fn completion(
    columns: &[Vector],
    rows: usize,
    caps: &[Option<u32>],
    budget: usize,
) -> Result<Vec<Vec<u32>>> {
    let n = columns.len();
    let col_images: Vec<Vec<i128>> = columns
        .iter()
        .map(|c| c.iter().map(|&v| v as i128).collect())
        .collect();
    let mut minimal: Vec<Vec<u32>> = Vec::new();
    let mut frontier: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut explored = 0usize;
    while !frontier.is_empty() {
        explored += frontier.len();
        if explored > budget {
            return Err(Error::BoundExceeded {
                what: "diophantine completion",
                bound: budget as u64,
            });
        }
        let mut pending = Vec::new();
        for x in frontier {
            let ax = image(columns, rows, &x);
            if ax.iter().all(|&v| v == 0) {
                minimal.push(x);
            } else {
                pending.push((x, ax));
            }
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (x, ax) in pending {
            for j in 0..n {
                let inner: i128 = ax.iter().zip(&col_images[j]).map(|(a, b)| a * b).sum();
                if inner >= 0 {
                    continue;
                }
                if let Some(cap) = caps[j] {
                    if x[j] >= cap {
                        continue;
                    }
                }
                let mut y = x.clone();
                y[j] += 1;
                if minimal.iter().any(|m| dominates(&y, m)) {
                    continue;
                }
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    minimal.sort();
    Ok(minimal)
}

/// Minimal nonzero nonnegative solutions of `sum_i x_i columns[i] = 0`.
pub fn minimal_homogeneous(rows: usize, columns: &[Vector], budget: usize) -> Result<Vec<Vec<u32>>> {
    completion(columns, rows, &vec![None; columns.len()], budget)
}

/// Componentwise-minimal `x` in `N^n` with `sum_i x_i columns[i] = target`.
///
/// Every solution dominates one of the returned ones, and the difference is
/// a solution of the homogeneous system.
pub fn minimal_solutions(
    rows: usize,
    columns: &[Vector],
    target: &[i64],
    budget: usize,
) -> Result<Vec<Vec<u32>>> {
    if target.iter().all(|&t| t == 0) {
        return Ok(vec![vec![0; columns.len()]]);
    }
    let mut cols = columns.to_vec();
    cols.push(target.iter().map(|t| -t).collect());
    let mut caps = vec![None; columns.len()];
    caps.push(Some(1));
    let sols = completion(&cols, rows, &caps, budget)?;
    let n = columns.len();
    Ok(sols
        .into_iter()
        .filter(|s| s[n] == 1)
        .map(|mut s| {
            s.truncate(n);
            s
        })
        .collect())
}
