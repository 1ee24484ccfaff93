//! Exact integer primitives. Every quantity in the crate is a [`BigInt`] or a
//! [`BigRational`]; nothing is ever rounded through floating point.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Signed arbitrary-precision integer.
pub type Int = BigInt;

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// `⌊√n⌋` by integer Newton iteration.
///
/// The starting point `2^⌈bits/2⌉` is never below the root, so the iterates
/// decrease monotonically until they stop; a final correction step pins
/// `r² ≤ n < (r+1)²` regardless of where the iteration landed.
pub fn isqrt(n: &Int) -> Result<Int> {
    if n.is_negative() {
        return Err(Error::domain(format!("isqrt of negative value {n}")));
    }
    if *n < Int::from(2) {
        return Ok(n.clone());
    }
    let bits = n.bits();
    let mut x: Int = Int::one() << bits.div_ceil(2);
    loop {
        let y: Int = (&x + n / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while &x * &x > *n {
        x -= 1;
    }
    loop {
        let next: Int = &x + 1;
        if &next * &next <= *n {
            x = next;
        } else {
            break;
        }
    }
    Ok(x)
}

/// Whether `n` is a perfect square (negative values never are).
pub fn is_square(n: &Int) -> bool {
    match isqrt(n) {
        Ok(r) => &r * &r == *n,
        Err(_) => false,
    }
}

/// `n / d` when `d` divides `n`.
pub fn exact_div(n: &Int, d: &Int) -> Result<Int> {
    if d.is_zero() {
        return Err(Error::domain("division by zero"));
    }
    let (quot, rem) = n.div_rem(d);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(Error::NotDivisible {
            dividend: n.clone(),
            divisor: d.clone(),
        })
    }
}

/// `d | n` for nonzero `d`; zero divides only zero.
pub fn divides(d: &Int, n: &Int) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        (n % d).is_zero()
    }
}

/// Prime factorisation of `n ≥ 1` by trial division up to the square root of
/// the unfactored part. Factors come out ascending.
pub fn factorize(n: &Int) -> Result<Vec<(Int, u32)>> {
    if !n.is_positive() {
        return Err(Error::domain(format!("cannot factor non-positive value {n}")));
    }
    let mut rest: BigUint = n.magnitude().clone();
    let mut factors = Vec::new();

    let mut strip = |rest: &mut BigUint, p: u64| {
        let mut e = 0u32;
        while (&*rest % p).is_zero() {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((Int::from(p), e));
        }
    };

    strip(&mut rest, 2);
    strip(&mut rest, 3);
    // 6k ± 1 wheel
    let mut p: u64 = 5;
    while !rest.is_one() {
        let square = BigUint::from(p) * p;
        if square > rest {
            break;
        }
        strip(&mut rest, p);
        strip(&mut rest, p + 2);
        p += 6;
    }
    if !rest.is_one() {
        factors.push((Int::from_biguint(Sign::Plus, rest), 1));
    }
    factors.sort();
    Ok(factors)
}

/// Positive divisors `d` of `n` with `d ≤ bound`, ascending and duplicate-free.
pub fn divisors_up_to(n: &Int, bound: &Int) -> Result<Vec<Int>> {
    let factors = factorize(n)?;
    let mut divisors = vec![Int::one()];
    if !bound.is_positive() {
        return Ok(Vec::new());
    }
    for (p, e) in &factors {
        let mut grown = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for d in &divisors {
            let mut x = d.clone();
            grown.push(x.clone());
            for _ in 0..*e {
                x *= p;
                if x > *bound {
                    break;
                }
                grown.push(x.clone());
            }
        }
        divisors = grown;
    }
    divisors.sort();
    Ok(divisors)
}

/// The integer value of `r` if it has one.
pub fn as_integer(r: &Rational) -> Option<Int> {
    r.is_integer().then(|| r.to_integer())
}

pub(crate) fn ratio(numer: Int, denom: Int) -> Rational {
    Rational::new(numer, denom)
}

/// Renders a rational as a plain decimal integer, or `p/q` when it is not one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
