//! Small helpers for integer vectors.

use std::cmp::Ordering;

pub type Vector = Vec<i64>;

pub fn add(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[i64], k: i64) -> Vector {
    a.iter().map(|x| x * k).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot128(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

pub fn gcd_of(a: &[i64]) -> i64 {
    a.iter().fold(0i64, |g, &x| num_integer::gcd(g, x))
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(a: &[i64]) -> Vector {
    let g = gcd_of(a);
    if g <= 1 {
        a.to_vec()
    } else {
        a.iter().map(|x| x / g).collect()
    }
}

/// Weight-then-lexicographic comparison of `(weight, vector)` pairs.
pub fn weight_lex(wa: i64, a: &[i64], wb: i64, b: &[i64]) -> Ordering {
    wa.cmp(&wb).then_with(|| a.cmp(b))
}
