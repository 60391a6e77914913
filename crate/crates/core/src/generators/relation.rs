//! Integer-relation detection for rational-independence tests.
//!
//! Given reals `x_0, ..., x_{n-1}`, look for a nonzero integer vector `c`
//! with `max |c_k| <= H` and `|c . x| <= tau`. The primary engine is PSLQ in
//! double precision; when `(2H + 1)^n` is small an exhaustive enumeration
//! backs it up. Neither can certify independence of floating-point inputs,
//! so a negative answer is always reported as heuristic.

#![allow(clippy::needless_range_loop)]

/// Enumeration is used only when `(2H + 1)^n` does not exceed this.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

const GAMMA: f64 = 1.154_700_538_379_251_5; // sqrt(4/3)
const MAX_COEFFICIENT: f64 = 4.5e15;

/// Outcome of a bounded integer-relation search.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationSearch {
    pub relation: Option<Vec<i64>>,
    /// Residual `|c . x|` of the returned relation, or the smallest residual
    /// among bounded candidates inspected when none qualified.
    pub residual: f64,
    pub method: SearchMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Sparse,
    Pslq,
    Exhaustive,
    None,
}

pub fn residual(relation: &[i64], x: &[f64]) -> f64 {
    relation
        .iter()
        .zip(x)
        .map(|(&c, &v)| c as f64 * v)
        .sum::<f64>()
        .abs()
}

fn max_abs_coeff(c: &[i64]) -> i64 {
    c.iter().map(|v| v.abs()).max().unwrap_or(0)
}

/// Canonical sign: first nonzero coefficient positive.
fn canonical(mut c: Vec<i64>) -> Vec<i64> {
    if c.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
        c.iter_mut().for_each(|v| *v = -*v);
    }
    c
}

/// Whether `(2 bound + 1)^n <= EXHAUSTIVE_LIMIT`.
pub fn exhaustive_feasible(n: usize, bound: u32) -> bool {
    let base = 2 * bound as u64 + 1;
    let mut total: u64 = 1;
    for _ in 0..n {
        total = match total.checked_mul(base) {
            Some(t) if t <= EXHAUSTIVE_LIMIT => t,
            _ => return false,
        };
    }
    true
}

/// Bounded relation search: sparse pre-pass, PSLQ, then exhaustive
/// enumeration when feasible.
pub fn find_integer_relation(x: &[f64], bound: u32, tau: f64) -> RelationSearch {
    let n = x.len();
    if n == 0 || bound == 0 {
        return RelationSearch {
            relation: None,
            residual: f64::INFINITY,
            method: SearchMethod::None,
        };
    }
    let mut best = f64::INFINITY;

    if let Some((c, r)) = sparse_relation(x, tau, &mut best) {
        return RelationSearch {
            relation: Some(c),
            residual: r,
            method: SearchMethod::Sparse,
        };
    }
    if n >= 2 {
        let out = pslq(x, bound, tau, pslq_iteration_cap(n));
        best = best.min(out.best_residual);
        if let Some(c) = out.relation {
            let r = residual(&c, x);
            return RelationSearch {
                relation: Some(c),
                residual: r,
                method: SearchMethod::Pslq,
            };
        }
    }
    if exhaustive_feasible(n, bound) {
        let out = exhaustive_relation(x, bound, tau);
        best = best.min(out.best_residual);
        if let Some(c) = out.relation {
            let r = residual(&c, x);
            return RelationSearch {
                relation: Some(c),
                residual: r,
                method: SearchMethod::Exhaustive,
            };
        }
    }
    RelationSearch {
        relation: None,
        residual: best,
        method: SearchMethod::None,
    }
}

fn pslq_iteration_cap(n: usize) -> usize {
    2_000 + 200 * n
}

/// Relations supported on one entry, or on two entries with unit coefficients.
fn sparse_relation(x: &[f64], tau: f64, best: &mut f64) -> Option<(Vec<i64>, f64)> {
    let n = x.len();
    for k in 0..n {
        let r = x[k].abs();
        *best = best.min(r);
        if r <= tau {
            let mut c = vec![0; n];
            c[k] = 1;
            return Some((c, r));
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            for sign in [-1i64, 1] {
                let r = (x[a] + sign as f64 * x[b]).abs();
                *best = best.min(r);
                if r <= tau {
                    let mut c = vec![0; n];
                    c[a] = 1;
                    c[b] = sign;
                    return Some((c, r));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub relation: Option<Vec<i64>>,
    pub best_residual: f64,
}

/// Exhaustive enumeration over `[-bound, bound]^n`, keeping the qualifying
/// vector of smallest max-norm (ties: smallest residual).
pub fn exhaustive_relation(x: &[f64], bound: u32, tau: f64) -> SearchOutcome {
    let n = x.len();
    let h = bound as i64;
    let mut c = vec![-h; n];
    let mut best_residual = f64::INFINITY;
    let mut found: Option<(i64, f64, Vec<i64>)> = None;
    loop {
        let first_nonzero = c.iter().find(|&&v| v != 0);
        if first_nonzero.is_some_and(|&v| v > 0) {
            let r = residual(&c, x);
            best_residual = best_residual.min(r);
            if r <= tau {
                let norm = max_abs_coeff(&c);
                let better = match &found {
                    None => true,
                    Some((bn, br, _)) => norm < *bn || (norm == *bn && r < *br),
                };
                if better {
                    found = Some((norm, r, c.clone()));
                }
            }
        }
        // odometer increment
        let mut k = n;
        loop {
            if k == 0 {
                return SearchOutcome {
                    relation: found.map(|(_, _, c)| c),
                    best_residual,
                };
            }
            k -= 1;
            if c[k] < h {
                c[k] += 1;
                break;
            }
            c[k] = -h;
        }
    }
}

/// PSLQ integer-relation detection in double precision.
///
/// Every iteration inspects the columns of the accumulated unimodular
/// matrix and returns the first one within `bound` whose residual is at most
/// `tau`. The search stops once the lower bound on the norm of any exact
/// relation exceeds `bound * sqrt(n)`, when coefficients grow past the
/// exactly representable range, or after `max_iter` iterations.
pub fn pslq(x: &[f64], bound: u32, tau: f64, max_iter: usize) -> SearchOutcome {
    let n = x.len();
    let mut best_residual = f64::INFINITY;
    let none = |best_residual| SearchOutcome {
        relation: None,
        best_residual,
    };
    if n < 2 {
        return none(best_residual);
    }
    let scale = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        let mut c = vec![0; n];
        c[0] = 1;
        return SearchOutcome {
            relation: Some(c),
            best_residual: 0.0,
        };
    }
    let xs: Vec<f64> = x.iter().map(|v| v / scale).collect();

    let mut s = vec![0.0; n];
    for k in 0..n {
        s[k] = xs[k..].iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    let t = s[0];
    let mut y: Vec<f64> = xs.iter().map(|v| v / t).collect();
    s.iter_mut().for_each(|v| *v /= t);

    let cols = n - 1;
    let mut h = vec![vec![0.0; cols]; n];
    for i in 0..n {
        for j in 0..cols.min(i + 1) {
            if j == i {
                h[i][j] = s[i + 1] / s[i];
            } else {
                let denom = s[j] * s[j + 1];
                h[i][j] = if denom == 0.0 { 0.0 } else { -y[i] * y[j] / denom };
            }
        }
    }
    let mut a = identity(n);
    let mut b = identity(n);

    let reduce = |i: usize, j: usize, h: &mut Vec<Vec<f64>>, y: &mut Vec<f64>, a: &mut Vec<Vec<f64>>, b: &mut Vec<Vec<f64>>| {
        if h[j][j] == 0.0 {
            return;
        }
        let t = (h[i][j] / h[j][j]).round();
        if t == 0.0 {
            return;
        }
        y[j] += t * y[i];
        for k in 0..=j {
            h[i][k] -= t * h[j][k];
        }
        for k in 0..n {
            a[i][k] -= t * a[j][k];
            b[k][j] += t * b[k][i];
        }
    };

    for i in 1..n {
        for j in (0..i.min(cols)).rev() {
            reduce(i, j, &mut h, &mut y, &mut a, &mut b);
        }
    }

    for _ in 0..max_iter {
        if let Some(c) = inspect_columns(&b, x, bound, tau, &mut best_residual) {
            return SearchOutcome {
                relation: Some(c),
                best_residual,
            };
        }

        // exchange step
        let mut m = 0;
        let mut best = -1.0;
        let mut g = GAMMA;
        for (i, row) in h.iter().enumerate().take(cols) {
            let v = g * row[i].abs();
            if v > best {
                best = v;
                m = i;
            }
            g *= GAMMA;
        }
        y.swap(m, m + 1);
        a.swap(m, m + 1);
        h.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }

        // corner step
        if m + 2 < n {
            let t0 = h[m][m].hypot(h[m][m + 1]);
            if t0 == 0.0 {
                break;
            }
            let t1 = h[m][m] / t0;
            let t2 = h[m][m + 1] / t0;
            for row in h.iter_mut().skip(m) {
                let t3 = row[m];
                let t4 = row[m + 1];
                row[m] = t1 * t3 + t2 * t4;
                row[m + 1] = -t2 * t3 + t1 * t4;
            }
        }

        // reduction
        for i in (m + 1)..n {
            for j in (0..i.min(m + 2).min(cols)).rev() {
                reduce(i, j, &mut h, &mut y, &mut a, &mut b);
            }
        }

        let overflow = a.iter().chain(b.iter()).flatten().any(|v| v.abs() > MAX_COEFFICIENT);
        if overflow {
            break;
        }
        let max_diag = (0..cols).map(|j| h[j][j].abs()).fold(0.0, f64::max);
        if max_diag == 0.0 {
            break;
        }
        if 1.0 / max_diag > bound as f64 * (n as f64).sqrt() {
            if let Some(c) = inspect_columns(&b, x, bound, tau, &mut best_residual) {
                return SearchOutcome {
                    relation: Some(c),
                    best_residual,
                };
            }
            break;
        }
    }
    none(best_residual)
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn inspect_columns(b: &[Vec<f64>], x: &[f64], bound: u32, tau: f64, best: &mut f64) -> Option<Vec<i64>> {
    let n = x.len();
    let mut found: Option<(f64, Vec<i64>)> = None;
    for j in 0..n {
        let c: Vec<i64> = (0..n).map(|k| b[k][j] as i64).collect();
        if c.iter().all(|&v| v == 0) || max_abs_coeff(&c) > bound as i64 {
            continue;
        }
        let r = residual(&c, x);
        *best = best.min(r);
        if r <= tau && found.as_ref().is_none_or(|(br, _)| r < *br) {
            found = Some((r, c));
        }
    }
    found.map(|(_, c)| canonical(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pslq_recovers_planted_relations() {
        let s2 = 2f64.sqrt();
        let s3 = 3f64.sqrt();
        // 3 s2 - 2 s3 + (2 s3 - 3 s2) = 0
        let x = [1.0, s2, s3, 2.0 * s3 - 3.0 * s2];
        let out = pslq(&x, 10, 1e-9, 10_000);
        let c = out.relation.expect("relation");
        assert!(residual(&c, &x) <= 1e-9);
        assert!(max_abs_coeff(&c) <= 10);
    }

    #[test]
    fn pslq_finds_nothing_for_square_roots_of_primes() {
        let x: Vec<f64> = [1.0, 2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt()]
            .iter()
            .map(|v| v / (2.0 * PI))
            .collect();
        let out = pslq(&x, 10, 1e-9, 10_000);
        assert!(out.relation.is_none());
    }

    #[test]
    fn exhaustive_prefers_smallest_norm() {
        let x = [0.25, 0.5, 0.0];
        let out = exhaustive_relation(&x, 3, 1e-12);
        assert_eq!(out.relation, Some(vec![0, 0, 1]));
    }

    #[test]
    fn feasibility_threshold() {
        assert!(exhaustive_feasible(4, 10)); // 21^4 = 194481
        assert!(!exhaustive_feasible(4, 20)); // 41^4 > 1e6
        assert!(!exhaustive_feasible(200, 1));
    }

    #[test]
    fn sparse_pass_catches_equal_entries() {
        let out = find_integer_relation(&[0.3, 0.7, 0.3], 10, 1e-9);
        assert_eq!(out.method, SearchMethod::Sparse);
        assert_eq!(out.relation, Some(vec![1, 0, -1]));
    }
}
