//! Spectrum of the second subconstituent `X₂`: the graph induced on the
//! vertices at distance two from a fixed vertex.
//!
//! `X₂` is connected and `(k−c)`-regular on `ℓ = k(k−1)/c` vertices, and its
//! only possible eigenvalues are `q(q+c) > q > −c > −(q+c)`. The top one is
//! simple; the multiplicities `x, y, z` of the other three are pinned down by
//! the first three power sums.

use num_traits::{One, Signed, Zero};

use crate::arith::{ratio, Int, Rational};
use crate::error::{Error, Result};
use crate::params::ParamPair;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubconstituentSpectrum {
    pub pair: ParamPair,
    /// Order of `X₂`, `k(k−1)/c`.
    pub ell: Rational,
    /// Valency of `X₂`, `k − c`.
    pub degree: Int,
    /// `[q(q+c), q, −c, −(q+c)]`, strictly decreasing.
    pub eigs: [Int; 4],
    /// `[1, x, y, z]`.
    pub mults: [Rational; 4],
    pub k2: Rational,
}

impl SubconstituentSpectrum {
    pub fn x(&self) -> &Rational {
        &self.mults[1]
    }

    pub fn y(&self) -> &Rational {
        &self.mults[2]
    }

    pub fn z(&self) -> &Rational {
        &self.mults[3]
    }
}

fn require_in_range(p: &ParamPair) -> Result<()> {
    if p.in_range() {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is outside 1 <= c <= q(q+1)")))
    }
}

/// `z = (q+c−1)(q²+qc+c)(q²+q−c) / (c(c+2q))`.
fn z_of(q: &Int, c: &Int) -> Rational {
    let t = q * q + q * c + c;
    ratio((q + c - 1) * &t * (q * q + q - c), c * (c + 2 * q))
}

pub fn subconstituent_spectrum(p: &ParamPair) -> Result<SubconstituentSpectrum> {
    require_in_range(p)?;
    let (q, c) = (p.q(), p.c());
    let k = p.degree();
    let t = q * q + q * c + c;

    let x = ratio(
        (q + 1) * &t * (q * q + 2 * q * c + c * c - 2 * c - q),
        c * (c + 2 * q),
    );
    let y = Rational::from_integer(&t - 1);
    let z = z_of(q, c);

    Ok(SubconstituentSpectrum {
        pair: p.clone(),
        ell: ratio(&k * (&k - 1), c.clone()),
        degree: &k - c,
        eigs: [q * (q + c), q.clone(), -c.clone(), -(q + c)],
        mults: [Rational::one(), x, y, z],
        k2: krein_k2(p)?,
    })
}

/// `S_i = Σ mult · eigⁱ` for `i = 0..=3`.
pub fn power_sums(spec: &SubconstituentSpectrum) -> [Rational; 4] {
    power_sums_up_to::<4>(spec)
}

/// `S_i` for `i < N`.
pub fn power_sums_up_to<const N: usize>(spec: &SubconstituentSpectrum) -> [Rational; N] {
    std::array::from_fn(|i| {
        spec.eigs
            .iter()
            .zip(&spec.mults)
            .map(|(e, m)| m * Rational::from_integer(num_traits::pow(e.clone(), i)))
            .fold(Rational::zero(), |acc, v| acc + v)
    })
}

/// Krein parameter `K₂`, defined through `qc(c+2q)·z = (q²+qc+c)·K₂`.
pub fn krein_k2(p: &ParamPair) -> Result<Rational> {
    require_in_range(p)?;
    let (q, c) = (p.q(), p.c());
    let t = q * q + q * c + c;
    Ok(z_of(q, c) * Rational::from_integer(q * c * (c + 2 * q)) / Rational::from_integer(t))
}

/// `K₂ ≥ 0`.
pub fn krein_condition_holds(p: &ParamPair) -> Result<bool> {
    Ok(!krein_k2(p)?.is_negative())
}
