//! Vertex-count bounds.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{isqrt, ratio, Int, Rational};
use crate::error::{Error, Result};

/// `n_q(c) = (q+1)(q+2)·c + 2q³+3q²−q + (q⁴−q²)/c`.
pub fn n_of(q: &Int, c: &Int) -> Rational {
    let a = (q + 1) * (q + 2);
    let b = 2 * q * q * q + 3 * q * q - q;
    let d = q * q * q * q - q * q;
    Rational::from_integer(a * c + b) + ratio(d, c.clone())
}

/// Derivative of `n_q` in `c`: `(q+1)(q+2) − (q⁴−q²)/c²`.
pub fn n_prime(q: &Int, c: &Int) -> Rational {
    let a = (q + 1) * (q + 2);
    let d = q * q * q * q - q * q;
    Rational::from_integer(a) - ratio(d, c * c)
}

/// Where the minimum of `n_q` over feasible `c` sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// minimum at `c = q`
    Generic,
    /// `q ∈ {2, 5, 7, 12, 47}`: minimum at `c = q − 1`
    QMinusOne,
    /// `q ∈ {4, 6, 8}`: minimum at `c = q − 2`
    QMinusTwo,
}

const Q_MINUS_ONE_SET: [i64; 5] = [2, 5, 7, 12, 47];
const Q_MINUS_TWO_SET: [i64; 3] = [4, 6, 8];

impl Regime {
    pub fn of(q: &Int) -> Regime {
        if Q_MINUS_ONE_SET.iter().any(|&v| *q == Int::from(v)) {
            Regime::QMinusOne
        } else if Q_MINUS_TWO_SET.iter().any(|&v| *q == Int::from(v)) {
            Regime::QMinusTwo
        } else {
            Regime::Generic
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub q: Int,
    pub lower: Int,
    pub upper: Int,
    pub c_at_lower: Int,
    pub c_at_upper: Int,
    pub regime: Regime,
}

/// Exact lower and upper bounds on the vertex count for a given `q`, and the
/// `c` at which each is attained.
pub fn theorem7_bounds(q: &Int) -> Result<BoundsReport> {
    if !q.is_positive() {
        return Err(Error::domain(format!("q must be positive, got {q}")));
    }
    let base = 4 * q * q * q + 6 * q * q;
    let regime = Regime::of(q);
    let (lower, c_at_lower) = match regime {
        Regime::Generic => (base, q.clone()),
        Regime::QMinusOne => (base - 2 * (q + 1), q - 1),
        Regime::QMinusTwo => {
            let tail = Int::from(12) / (q - 2);
            (base - 2 * (q - 1) + tail, q - 2)
        }
    };
    let q3 = q + 3;
    Ok(BoundsReport {
        q: q.clone(),
        lower,
        upper: q * q * &q3 * &q3,
        c_at_lower,
        c_at_upper: q * (q + 1),
        regime,
    })
}

/// `⌈2q³ + 3q² − q + 2q(q+1)·√(q²+q−2)⌉`, computed as
/// `2q³ + 3q² − q + ⌈√t⌉` with `t = 4q²(q+1)²(q²+q−2)`.
pub fn appendix_lower_bound(q: &Int) -> Result<Int> {
    if !q.is_positive() {
        return Err(Error::domain(format!("q must be positive, got {q}")));
    }
    let t = 4 * q * q * (q + 1) * (q + 1) * (q * q + q - 2);
    let root = isqrt(&t)?;
    let ceil = if (&root * &root - &t).is_zero() { root } else { root + 1 };
    Ok(2 * q * q * q + 3 * q * q - q + ceil)
}
