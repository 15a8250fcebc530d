//! Closed-form block counts, growth rates and exact improvement thresholds.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Per-block count of the best known base graph (`G_4`).
pub const BEST_BLOCK_COUNT: u32 = 36;
/// Order of the best known base graph.
pub const BEST_BLOCK_ORDER: u32 = 9;

/// Minimal connected dominating sets of `G_t` meeting `X`: `(t³ + t²)/2 - t`.
pub fn f(t: usize) -> Result<BigUint> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t must be at least 2, got {t}")));
    }
    let t = BigUint::from(t);
    let cube_plus_square = &t * &t * &t + &t * &t;
    Ok(cube_plus_square / 2u32 - t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateReport {
    pub t: usize,
    #[serde(serialize_with = "as_decimal")]
    pub f: BigUint,
    pub order: usize,
    /// `f(t)^(1 / (2t + 1))`.
    pub rate: f64,
    /// `rate` truncated to four decimals.
    pub rendered: String,
}

fn as_decimal<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub fn growth_rate(t: usize) -> Result<RateReport> {
    let count = f(t)?;
    let order = 2 * t + 1;
    let rate = rate_of(&count, order);
    Ok(RateReport {
        t,
        f: count,
        order,
        rate,
        rendered: truncate4(rate),
    })
}

/// `count^(1/order)` as a float.
pub fn rate_of(count: &BigUint, order: usize) -> f64 {
    let c = count.to_f64().unwrap_or(f64::INFINITY);
    c.powf(1.0 / order as f64)
}

pub fn truncate4(x: f64) -> String {
    format!("{:.4}", (x * 1e4).floor() / 1e4)
}

/// True iff `a^(1/m) > b^(1/n)`, decided exactly as `a^n > b^m`.
pub fn rate_exceeds(a: &BigUint, m: usize, b: &BigUint, n: usize) -> bool {
    a.pow(n as u32) > b.pow(m as u32)
}

/// The `t` in `2..=t_max` with the largest growth rate; ties go to the smaller `t`.
pub fn best_t(t_max: usize) -> Result<usize> {
    if t_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "t_max must be at least 2, got {t_max}"
        )));
    }
    let mut best = 2;
    let mut best_f = f(2)?;
    for t in 3..=t_max {
        let ft = f(t)?;
        if rate_exceeds(&ft, 2 * t + 1, &best_f, 2 * best + 1) {
            best = t;
            best_f = ft;
        }
    }
    Ok(best)
}

/// Least per-block count `C` for an order-`m` block to beat `36^(1/9)`,
/// i.e. the least `C` with `C⁹ > 36^m`.
pub fn threshold(m: usize) -> Result<BigUint> {
    if m < 1 {
        return Err(Error::InvalidParameter("block order must be at least 1".into()));
    }
    let target = BigUint::from(BEST_BLOCK_COUNT).pow(m as u32);
    // floor(target^(1/9)) + 1 whether or not the root is exact.
    Ok(target.nth_root(BEST_BLOCK_ORDER) + 1u32)
}

/// Whether a block of order `m` with count `c` beats `G_4`, by exact comparison.
pub fn beats_best(c: &BigUint, m: usize) -> bool {
    !c.is_zero()
        && rate_exceeds(
            c,
            m,
            &BigUint::from(BEST_BLOCK_COUNT),
            BEST_BLOCK_ORDER as usize,
        )
}
