//! The `(q, c)` parameterisation of a triangle-free strongly regular graph and
//! everything that follows from it: degree, eigenvalues, multiplicities and
//! vertex count.

use std::fmt;

use num_traits::{One, Signed};

use crate::arith::{ratio, Int, Rational};
use crate::error::{Error, Result};

/// A candidate parameter set: `q` is the positive eigenvalue, `c` the number
/// of common neighbours of two non-adjacent vertices.
///
/// Construction only enforces `q ≥ 1, c ≥ 1`. Since `k = c(q+1) + q²`, that is
/// already enough for `k ≥ 3` and `k > c`, which rule out the pentagon and the
/// complete bipartite graphs. Whether `c ≤ q(q+1)` holds is a feasibility
/// question and is left to [`crate::feasibility`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamPair {
    q: Int,
    c: Int,
}

impl ParamPair {
    pub fn new(q: impl Into<Int>, c: impl Into<Int>) -> Result<Self> {
        let (q, c) = (q.into(), c.into());
        if !q.is_positive() || !c.is_positive() {
            return Err(Error::domain(format!(
                "parameters need q >= 1 and c >= 1, got q = {q}, c = {c}"
            )));
        }
        Ok(ParamPair { q, c })
    }

    pub fn q(&self) -> &Int {
        &self.q
    }

    pub fn c(&self) -> &Int {
        &self.c
    }

    /// `q(q+1)`, the largest admissible `c`.
    pub fn c_max(&self) -> Int {
        &self.q * (&self.q + 1)
    }

    pub fn in_range(&self) -> bool {
        self.c <= self.c_max()
    }

    pub fn degree(&self) -> Int {
        &self.c * (&self.q + 1) + &self.q * &self.q
    }

    pub fn s(&self) -> Int {
        &self.c + 2 * &self.q
    }

    /// `q⁴ − q²`, the numerator of α.
    pub fn alpha_numerator(&self) -> Int {
        let q2 = &self.q * &self.q;
        &q2 * &q2 - &q2
    }

    /// `q(q+1)(q+2)(q+3)`, the numerator of β.
    pub fn beta_numerator(&self) -> Int {
        rising4(&self.q)
    }
}

impl fmt::Display for ParamPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, c={})", self.q, self.c)
    }
}

/// `q(q+1)(q+2)(q+3)`.
pub(crate) fn rising4(q: &Int) -> Int {
    q * (q + 1) * (q + 2) * (q + 3)
}

/// Everything derivable from a [`ParamPair`].
///
/// `m1` and `m2` stay exact rationals: when `m1 + m2` and `m1 − m2` are
/// integers of different parity the individual multiplicities are
/// half-integers, and rejecting them is the oracle's job, not this one's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub k: Int,
    pub s: Int,
    pub lambda1: Int,
    pub lambda2: Int,
    pub m1: Rational,
    pub m2: Rational,
    /// Vertex count `n_q(c) = A·c + B + D/c`.
    pub n: Rational,
    pub a: Int,
    pub b: Int,
    pub d: Int,
}

pub fn derive_spectrum(p: &ParamPair) -> Spectrum {
    let (q, c) = (p.q(), p.c());
    let k = p.degree();
    let s = p.s();

    let scale: Int = 2 * c * &s;
    let base = &k - 1 + c;
    let m1 = ratio(&k * (&base * (&s + c) - 2 * c), scale.clone());
    let m2 = ratio(&k * (&base * (&s - c) + 2 * c), scale);

    let a = (q + 1) * (q + 2);
    let b = 2 * q * q * q + 3 * q * q - q;
    let d = p.alpha_numerator();
    let n = Rational::from_integer(&a * c + &b) + ratio(d.clone(), c.clone());

    Spectrum {
        lambda1: q.clone(),
        lambda2: -(q + c),
        k,
        s,
        m1,
        m2,
        n,
        a,
        b,
        d,
    }
}

/// `m1 + m2 = k(k+c−1)/c`.
pub fn msum(p: &ParamPair) -> Rational {
    let k = p.degree();
    ratio(&k * (&k + p.c() - 1), p.c().clone())
}

/// `m1 − m2 = k(k+c−3)/s`.
pub fn mdiff(p: &ParamPair) -> Rational {
    let k = p.degree();
    ratio(&k * (&k + p.c() - 3), p.s())
}

/// `α = (q⁴ − q²)/c`.
pub fn alpha(p: &ParamPair) -> Rational {
    ratio(p.alpha_numerator(), p.c().clone())
}

/// `β = q(q+1)(q+2)(q+3)/(c + 2q)`.
pub fn beta(p: &ParamPair) -> Rational {
    ratio(p.beta_numerator(), p.s())
}

impl Spectrum {
    /// `m1 + m2 + 1`, which equals `n` whenever the multiplicities are integral.
    pub fn multiplicity_total(&self) -> Rational {
        &self.m1 + &self.m2 + Rational::one()
    }
}
