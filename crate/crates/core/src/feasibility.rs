//! The feasibility oracle: `(q, c)` is feasible exactly when `1 ≤ c ≤ q(q+1)`
//! and `α = (q⁴−q²)/c`, `β = q(q+1)(q+2)(q+3)/(c+2q)` are integers of the same
//! parity. Everything else in the crate is checked against this predicate.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{as_integer, divides, ratio, Int, Rational};
use crate::params::{alpha, beta, ParamPair};

/// Conditions in the order they are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    Range,
    Alpha,
    Beta,
    Parity,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Range => "range",
            Condition::Alpha => "alpha",
            Condition::Beta => "beta",
            Condition::Parity => "parity",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub pair: ParamPair,
    pub in_range: bool,
    pub alpha_integral: bool,
    pub beta_integral: bool,
    /// `α ≡ β (mod 2)`; false whenever either one is not an integer.
    pub parity_match: bool,
    pub feasible: bool,
    pub alpha: Rational,
    pub beta: Rational,
}

impl FeasibilityVerdict {
    /// The first failing condition in the order range, α, β, parity.
    pub fn first_failed(&self) -> Option<Condition> {
        if !self.in_range {
            Some(Condition::Range)
        } else if !self.alpha_integral {
            Some(Condition::Alpha)
        } else if !self.beta_integral {
            Some(Condition::Beta)
        } else if !self.parity_match {
            Some(Condition::Parity)
        } else {
            None
        }
    }
}

pub fn check(p: &ParamPair) -> FeasibilityVerdict {
    let alpha = alpha(p);
    let beta = beta(p);
    let in_range = p.in_range();
    let alpha_int = as_integer(&alpha);
    let beta_int = as_integer(&beta);
    let parity_match = match (&alpha_int, &beta_int) {
        (Some(a), Some(b)) => a.is_even() == b.is_even(),
        _ => false,
    };
    let alpha_integral = alpha_int.is_some();
    let beta_integral = beta_int.is_some();
    FeasibilityVerdict {
        pair: p.clone(),
        in_range,
        alpha_integral,
        beta_integral,
        parity_match,
        feasible: in_range && alpha_integral && beta_integral && parity_match,
        alpha,
        beta,
    }
}

/// Same predicate as `check(p).feasible` without building the diagnostics.
pub fn is_feasible(p: &ParamPair) -> bool {
    if !p.in_range() {
        return false;
    }
    let (a, ra) = p.alpha_numerator().div_rem(p.c());
    if ra != Int::from(0) {
        return false;
    }
    let (b, rb) = p.beta_numerator().div_rem(&p.s());
    if rb != Int::from(0) {
        return false;
    }
    a.is_even() == b.is_even()
}

/// The original pair of divisibility conditions:
/// (S1) `c | q⁴ − q²`;
/// (S2) `c + 2q` divides `q⁴ + 3q³ + 5q² + 3q + q(q⁴−q²)/c`.
///
/// When (S1) fails the S2 quantity is a proper fraction and (S2) is reported
/// false.
pub fn check_s1_s2(p: &ParamPair) -> (bool, bool) {
    let (q, c) = (p.q(), p.c());
    let s1 = divides(c, &p.alpha_numerator());
    let q2 = q * q;
    let poly = &q2 * &q2 + 3 * &q2 * q + 5 * &q2 + 3 * q;
    let value = Rational::from_integer(poly) + ratio(q * p.alpha_numerator(), c.clone());
    let s2 = (value / Rational::from_integer(p.s())).is_integer();
    (s1, s2)
}
