//! Closed-form families of feasible parameters and the polynomial identities
//! behind them.
//!
//! Every membership predicate here is a claim about the oracle in
//! [`crate::feasibility`]; the test suite checks each claim against it rather
//! than trusting the algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{divides, divisors_up_to, is_square, isqrt, Int};
use crate::error::{Error, Result};
use crate::feasibility::is_feasible;
use crate::params::{rising4, ParamPair};

fn is_infinite_c(c: &Int) -> bool {
    *c == Int::from(2) || *c == Int::from(4) || *c == Int::from(6)
}

/// `h = |(c−2)(c−4)(c−6)|`.
pub fn h_of(c: &Int) -> Result<Int> {
    if !c.is_positive() {
        return Err(Error::domain(format!("c must be positive, got {c}")));
    }
    if is_infinite_c(c) {
        return Err(Error::InfiniteFamily(c.clone()));
    }
    let h: Int = (c - 2) * (c - 4) * (c - 6);
    Ok(h.abs())
}

/// `q_m = c(h−1)/2` for odd `c`: the largest feasible `q`, and itself feasible.
pub fn q_m(c: &Int) -> Result<Int> {
    if c.is_even() {
        return Err(Error::domain(format!("q_m needs odd c, got {c}")));
    }
    let h = h_of(c)?;
    Ok(c * (h - 1) / 2)
}

/// `h* = h/16` for even `c ≥ 8`.
pub fn h_star(c: &Int) -> Result<Int> {
    if c.is_odd() || *c < Int::from(8) {
        return Err(Error::domain(format!("h* needs even c >= 8, got {c}")));
    }
    let h = h_of(c)?;
    debug_assert!(divides(&Int::from(16), &h));
    Ok(h / 16)
}

/// `q_m* = c(h*−1)/2` for even `c ≥ 8`.
pub fn q_m_star(c: &Int) -> Result<Int> {
    let hs = h_star(c)?;
    Ok(c * (hs - 1) / 2)
}

/// `c(c−2)(c−4)(c−6) − 16·q(q+1)(q+2)(q+3) = (c+2q)(c−2q−6)(c²−6c+8+12q+4q²)`,
/// with each side evaluated on its own.
pub fn theorem2_identity(q: &Int, c: &Int) -> bool {
    let lhs = c * (c - 2) * (c - 4) * (c - 6) - 16 * rising4(q);
    let rhs = (c + 2 * q) * (c - 2 * q - 6) * (c * c - 6 * c + 8 + 12 * q + 4 * q * q);
    lhs == rhs
}

/// Residue rule for `c ∈ {2, 4, 6}`: every `q` is feasible except
/// `q ≡ 3 (mod 4)` when `c = 2` and `q ≡ 1 (mod 4)` when `c = 6`.
pub fn theorem3_feasible(q: &Int, c: &Int) -> Result<bool> {
    let r = q.mod_floor(&Int::from(4));
    match c.to_i64() {
        Some(2) => Ok(r != Int::from(3)),
        Some(4) => Ok(true),
        Some(6) => Ok(r != Int::one()),
        _ => Err(Error::domain(format!("residue rule covers c in {{2,4,6}}, got {c}"))),
    }
}

/// `x mod m ∈ {2a mod m, 4a mod m, 6a mod m}`, taken literally.
fn in_even_classes(x: &Int, a: &Int, m: &Int) -> bool {
    let r = x.mod_floor(m);
    [2, 4, 6]
        .iter()
        .any(|e| (a * Int::from(*e)).mod_floor(m) == r)
}

fn is_one_or_seven_mod_nine(b: &Int) -> bool {
    let r = b.mod_floor(&Int::from(9));
    r == Int::from(1) || r == Int::from(7)
}

/// `q = bc` is feasible when `c ≡ 2, 4, 6 (mod 2b+1)`, or when
/// `b ≡ 1, 7 (mod 9)` and `c ≡ 2, 4, 6 (mod (2b+1)/3)`.
pub fn theorem4_member(b: &Int, c: &Int) -> Result<bool> {
    if !b.is_positive() || !c.is_positive() {
        return Err(Error::domain(format!("need b >= 1 and c >= 1, got b = {b}, c = {c}")));
    }
    let modulus = 2 * b + 1;
    if in_even_classes(c, &Int::one(), &modulus) {
        return Ok(true);
    }
    if is_one_or_seven_mod_nine(b) {
        let t = modulus / 3;
        return Ok(in_even_classes(c, &Int::one(), &t));
    }
    Ok(false)
}

/// `{q, q²−q, q², q²+q}` restricted to positive values, ascending and deduplicated.
pub fn theorem5_values(q: &Int) -> Vec<Int> {
    let q2 = q * q;
    let set: BTreeSet<Int> = [q.clone(), &q2 - q, q2.clone(), &q2 + q]
        .into_iter()
        .filter(|c| c.is_positive())
        .collect();
    set.into_iter().collect()
}

/// The three families that are feasible for only finitely many `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FiniteFamily {
    /// `c = q − 1`
    QMinusOne,
    /// `c = q + 1`
    QPlusOne,
    /// `c = q² − 1`
    QSquaredMinusOne,
}

impl FiniteFamily {
    pub const ALL: [FiniteFamily; 3] = [
        FiniteFamily::QMinusOne,
        FiniteFamily::QPlusOne,
        FiniteFamily::QSquaredMinusOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FiniteFamily::QMinusOne => "c=q-1",
            FiniteFamily::QPlusOne => "c=q+1",
            FiniteFamily::QSquaredMinusOne => "c=q^2-1",
        }
    }

    pub fn c_for(self, q: &Int) -> Int {
        match self {
            FiniteFamily::QMinusOne => q - 1,
            FiniteFamily::QPlusOne => q + 1,
            FiniteFamily::QSquaredMinusOne => q * q - 1,
        }
    }

    /// Every `q` that can possibly be feasible: `s = c + 2q` must divide a
    /// fixed remainder (280, 80 and `2q + 4` respectively).
    fn candidates(self) -> Vec<Int> {
        match self {
            FiniteFamily::QMinusOne => divisor_preimages(280, |d| (d + 1, 3)),
            FiniteFamily::QPlusOne => divisor_preimages(80, |d| (d - 1, 3)),
            // q² + 2q − 1 ≤ 2q + 4 forces q² ≤ 5
            FiniteFamily::QSquaredMinusOne => (1..=2).map(Int::from).collect(),
        }
    }
}

impl fmt::Display for FiniteFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `q = num/den` for each divisor `d` of `n` where `(num, den) = to_q(d)` divides evenly.
fn divisor_preimages(n: i64, to_q: impl Fn(i64) -> (i64, i64)) -> Vec<Int> {
    let n = Int::from(n);
    divisors_up_to(&n, &n)
        .expect("positive constant")
        .iter()
        .filter_map(|d| {
            let (num, den) = to_q(i64::try_from(d).expect("small divisor"));
            (num > 0 && num % den == 0).then(|| Int::from(num / den))
        })
        .collect()
}

/// The feasible `q` of each finite family, found by running the oracle over
/// the divisor-bounded candidate set.
pub fn theorem6_sets() -> BTreeMap<FiniteFamily, BTreeSet<Int>> {
    FiniteFamily::ALL
        .iter()
        .map(|&fam| {
            let qs = fam
                .candidates()
                .into_iter()
                .filter(|q| {
                    ParamPair::new(q.clone(), fam.c_for(q))
                        .map(|p| is_feasible(&p))
                        .unwrap_or(false)
                })
                .collect();
            (fam, qs)
        })
        .collect()
}

/// The division identities used to bound the finite families:
///
/// - `81·q(q+1)(q+2)(q+3) = (3q−1)(27q³+171q²+354q+280) + 280`
/// - `81·q(q+1)(q+2)(q+3) = (3q+1)(27q³+153q²+246q+80) − 80`
/// - `q(q+1)(q+2)(q+3) = (q²+2q−1)(q+2)² + (2q+4)`
pub fn theorem6_identities(q: &Int) -> bool {
    let prod = rising4(q);
    let q2 = q * q;
    let q3 = &q2 * q;
    let minus = (3 * q - 1) * (27 * &q3 + 171 * &q2 + 354 * q + 280) + 280;
    let plus = (3 * q + 1) * (27 * &q3 + 153 * &q2 + 246 * q + 80) - 80;
    let square = (&q2 + 2 * q - 1) * (q + 2) * (q + 2) + (2 * q + 4);
    81 * &prod == minus && 81 * &prod == plus && prod == square
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Prediction {
    Feasible,
    Unknown,
}

/// The division `b(q+1)(q+2)(q+3) = (q+2b−1)·Q + R` behind `c = q(q−1)/b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QrFamily {
    pub b: Int,
    pub q: Int,
    pub c: Int,
    pub quotient: Int,
    pub remainder: Int,
    pub prediction: Prediction,
}

/// `Q = b(q² − (2b−7)q + 4b² − 16b + 18)`.
pub fn qr_quotient(b: &Int, q: &Int) -> Int {
    b * (q * q - (2 * b - 7) * q + 4 * b * b - 16 * b + 18)
}

/// `R = −4b(b−1)(b−2)(2b−3)`.
pub fn qr_remainder(b: &Int) -> Int {
    -4 * b * (b - 1) * (b - 2) * (2 * b - 3)
}

/// Whether `b(q+1)(q+2)(q+3) = (q+2b−1)·Q + R` holds at `(b, q)`.
pub fn qr_identity(b: &Int, q: &Int) -> bool {
    let lhs = b * (q + 1) * (q + 2) * (q + 3);
    let rhs = (q + 2 * b - 1) * qr_quotient(b, q) + qr_remainder(b);
    lhs == rhs
}

pub fn qr_family(b: &Int, q: &Int) -> Result<QrFamily> {
    if !b.is_positive() {
        return Err(Error::domain(format!("b must be positive, got {b}")));
    }
    if *q < Int::from(2) {
        return Err(Error::domain(format!("c = q(q-1)/b needs q >= 2, got {q}")));
    }
    let pronic = q * (q - 1);
    if !divides(b, &pronic) {
        return Err(Error::domain(format!("{b} does not divide q(q-1) = {pronic}")));
    }
    let remainder = qr_remainder(b);
    let prediction = if *b <= Int::from(2) {
        Prediction::Feasible
    } else {
        Prediction::Unknown
    };
    Ok(QrFamily {
        b: b.clone(),
        q: q.clone(),
        c: pronic / b,
        quotient: qr_quotient(b, q),
        remainder,
        prediction,
    })
}

/// All feasible `q` with `c = q(q−1)/b`, for `b ≥ 3`.
///
/// β is an integer only when `q + 2b − 1` divides `R`, and `R ≠ 0` for `b ≥ 3`,
/// so the candidates are the divisors of `|R|` shifted by `1 − 2b`.
pub fn qr_feasible_set(b: &Int) -> Result<Vec<Int>> {
    if *b < Int::from(3) {
        return Err(Error::InfiniteFamily(b.clone()));
    }
    let r = qr_remainder(b).abs();
    let shift = 2 * b - 1;
    let mut out = Vec::new();
    for d in divisors_up_to(&r, &r)? {
        let q: Int = &d - &shift;
        if q < Int::from(2) {
            continue;
        }
        let pronic = &q * (&q - 1);
        if !divides(b, &pronic) {
            continue;
        }
        let p = ParamPair::new(q.clone(), pronic / b)?;
        if is_feasible(&p) {
            out.push(q);
        }
    }
    Ok(out)
}

/// How a catalog rule picks `c` from `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RuleKind {
    /// fixed `c`, excluding one residue of `q` mod 4
    FixedC { c: i64, excluded_mod4: Option<i64> },
    /// `c = q/b` with `b ≡ 1, 7 (mod 9)` and `q ≡ 2b, 4b, 6b (mod (2b+1)/3)`
    QOverBNineClass,
    /// `c = q/b` with other `b` and `q ≡ 2b, 4b, 6b (mod 2b+1)`
    QOverBOther,
    Q,
    HalfQTimesQMinusOne,
    QTimesQMinusOne,
    QSquared,
    QTimesQPlusOne,
}

/// One of the infinite families in the summary catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRule {
    pub name: &'static str,
    pub parameter_binding: &'static str,
    pub claims_infinite: bool,
    kind: RuleKind,
}

impl FamilyRule {
    const fn new(name: &'static str, parameter_binding: &'static str, kind: RuleKind) -> Self {
        FamilyRule {
            name,
            parameter_binding,
            claims_infinite: true,
            kind,
        }
    }

    /// Whether the rule asserts that `(q, c)` is feasible. Pairs outside
    /// `1 ≤ c ≤ q(q+1)` are never members.
    pub fn contains(&self, q: &Int, c: &Int) -> bool {
        let Ok(pair) = ParamPair::new(q.clone(), c.clone()) else {
            return false;
        };
        if !pair.in_range() {
            return false;
        }
        match self.kind {
            RuleKind::FixedC { c: fixed, excluded_mod4 } => {
                *c == Int::from(fixed)
                    && excluded_mod4.is_none_or(|r| q.mod_floor(&Int::from(4)) != Int::from(r))
            }
            RuleKind::QOverBNineClass | RuleKind::QOverBOther => {
                if !divides(c, q) {
                    return false;
                }
                let b = q / c;
                let nine = is_one_or_seven_mod_nine(&b);
                let modulus = match (self.kind, nine) {
                    (RuleKind::QOverBNineClass, true) => (2 * &b + 1) / 3,
                    (RuleKind::QOverBOther, false) => 2 * &b + 1,
                    _ => return false,
                };
                in_even_classes(q, &b, &modulus)
            }
            RuleKind::Q => c == q,
            RuleKind::HalfQTimesQMinusOne => c * 2 == q * (q - 1),
            RuleKind::QTimesQMinusOne => *c == q * (q - 1),
            RuleKind::QSquared => *c == q * q,
            RuleKind::QTimesQPlusOne => *c == q * (q + 1),
        }
    }

    /// The values of `c` the rule produces at `q`, ascending. For the `c = q/b`
    /// rules `b` runs over the divisors of `q` up to `b_max` (all of them when
    /// `None`).
    pub fn generate(&self, q: &Int, b_max: Option<&Int>) -> Vec<Int> {
        if !q.is_positive() {
            return Vec::new();
        }
        let candidates: Vec<Int> = match self.kind {
            RuleKind::FixedC { c, .. } => vec![Int::from(c)],
            RuleKind::QOverBNineClass | RuleKind::QOverBOther => {
                let bound = b_max.cloned().unwrap_or_else(|| q.clone());
                divisors_up_to(q, &bound)
                    .unwrap_or_default()
                    .into_iter()
                    .map(|b| q / b)
                    .collect()
            }
            RuleKind::Q => vec![q.clone()],
            RuleKind::HalfQTimesQMinusOne => vec![q * (q - 1) / 2],
            RuleKind::QTimesQMinusOne => vec![q * (q - 1)],
            RuleKind::QSquared => vec![q * q],
            RuleKind::QTimesQPlusOne => vec![q * (q + 1)],
        };
        let members: BTreeSet<Int> = candidates
            .into_iter()
            .filter(|c| self.contains(q, c))
            .collect();
        members.into_iter().collect()
    }

    /// The smallest `q` with `(q, c)` in the rule, if there is one.
    pub fn witness_q(&self, c: &Int) -> Option<Int> {
        if !c.is_positive() {
            return None;
        }
        let found = match self.kind {
            RuleKind::FixedC { c: fixed, .. } => {
                if *c != Int::from(fixed) {
                    return None;
                }
                let start = smallest_q_covering(c);
                (0..4).map(|i| &start + i).find(|q| self.contains(q, c))
            }
            RuleKind::QOverBNineClass | RuleKind::QOverBOther => {
                // Once 2b+1 exceeds both c and 6 the residues are literal and
                // only c ∈ {2,4,6} could match, so b ≤ max(c, 6) suffices.
                let limit = std::cmp::max(c.clone(), Int::from(6));
                let mut b = Int::one();
                let mut hit = None;
                while b <= limit {
                    let q = &b * c;
                    if self.contains(&q, c) {
                        hit = Some(q);
                        break;
                    }
                    b += 1;
                }
                hit
            }
            RuleKind::Q => Some(c.clone()),
            RuleKind::QSquared => is_square(c).then(|| isqrt(c).expect("positive")),
            RuleKind::QTimesQPlusOne => {
                let r = isqrt(c).expect("positive");
                (&r * (&r + 1) == *c).then_some(r)
            }
            RuleKind::QTimesQMinusOne => {
                let r = isqrt(c).expect("positive") + 1;
                (&r * (&r - 1) == *c).then_some(r)
            }
            RuleKind::HalfQTimesQMinusOne => {
                let r = isqrt(&(2 * c)).expect("positive") + 1;
                (&r * (&r - 1) == 2 * c).then_some(r)
            }
        };
        found.filter(|q| self.contains(q, c))
    }
}

fn smallest_q_covering(c: &Int) -> Int {
    let mut q: Int = (isqrt(&(4 * c + 1)).expect("positive") - 1) / 2;
    if q.is_zero() {
        q = Int::one();
    }
    while &q * (&q + 1) < *c {
        q += 1;
    }
    q
}

/// The summary list of infinite families.
pub fn family_catalog() -> Vec<FamilyRule> {
    vec![
        FamilyRule::new(
            "c=2",
            "q ≡ 0,1,2 (mod 4)",
            RuleKind::FixedC { c: 2, excluded_mod4: Some(3) },
        ),
        FamilyRule::new("c=4", "all q", RuleKind::FixedC { c: 4, excluded_mod4: None }),
        FamilyRule::new(
            "c=6",
            "q ≡ 0,2,3 (mod 4)",
            RuleKind::FixedC { c: 6, excluded_mod4: Some(1) },
        ),
        FamilyRule::new(
            "c=q/b:b=1,7(mod9)",
            "b ≡ 1,7 (mod 9); q ≡ 0 (mod b), q ≡ 2b,4b,6b (mod (2b+1)/3)",
            RuleKind::QOverBNineClass,
        ),
        FamilyRule::new(
            "c=q/b:b=0,2,3,4,5,6,8(mod9)",
            "b ≡ 0,2,3,4,5,6,8 (mod 9); q ≡ 0 (mod b), q ≡ 2b,4b,6b (mod 2b+1)",
            RuleKind::QOverBOther,
        ),
        FamilyRule::new("c=q", "all q", RuleKind::Q),
        FamilyRule::new("c=q(q-1)/2", "all q >= 2", RuleKind::HalfQTimesQMinusOne),
        FamilyRule::new("c=q(q-1)", "all q >= 2", RuleKind::QTimesQMinusOne),
        FamilyRule::new("c=q^2", "all q", RuleKind::QSquared),
        FamilyRule::new("c=q(q+1)", "all q", RuleKind::QTimesQPlusOne),
    ]
}

pub fn find_rule(name: &str) -> Result<FamilyRule> {
    family_catalog()
        .into_iter()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    fn feasible(q: &Int, c: &Int) -> bool {
        is_feasible(&ParamPair::new(q.clone(), c.clone()).unwrap())
    }

    #[test]
    fn h_and_endpoints() {
        assert_eq!(h_of(&int(7)).unwrap(), int(15));
        assert_eq!(q_m(&int(7)).unwrap(), int(49));
        assert_eq!(h_of(&int(9)).unwrap(), int(105));
        assert_eq!(q_m(&int(9)).unwrap(), int(468));
        assert_eq!(h_of(&int(8)).unwrap(), int(48));
        assert_eq!(h_star(&int(8)).unwrap(), int(3));
        assert_eq!(q_m_star(&int(8)).unwrap(), int(8));
        assert_eq!(h_of(&int(1)).unwrap(), int(15));
        assert_eq!(h_of(&int(3)).unwrap(), int(3));
    }

    #[test]
    fn h_rejects_infinite_and_bad_parity() {
        for c in [2, 4, 6] {
            assert!(matches!(h_of(&int(c)), Err(Error::InfiniteFamily(_))));
        }
        assert!(matches!(q_m(&int(4)), Err(Error::Domain(_))));
        assert!(q_m(&int(8)).is_err());
        assert!(q_m_star(&int(9)).is_err());
        assert!(q_m_star(&int(6)).is_err());
        assert!(h_of(&int(0)).is_err());
    }

    #[test]
    fn theorem2_identity_examples() {
        assert!(theorem2_identity(&int(1), &int(1)));
        assert!(theorem2_identity(&int(7), &int(7)));
        assert!(theorem2_identity(&int(468), &int(9)));
    }

    #[test]
    fn theorem2_identity_grid() {
        for q in -100..100 {
            for c in -100..100 {
                assert!(theorem2_identity(&int(q), &int(c)));
            }
        }
    }

    #[test]
    fn odd_endpoints_are_feasible() {
        for c in (1..100).step_by(2) {
            let c = int(c);
            assert!(feasible(&q_m(&c).unwrap(), &c), "c = {c}");
        }
    }

    #[test]
    fn even_endpoints_fail_exactly_when_c_is_4_mod_8() {
        for c in (8..=98).step_by(2) {
            let cc = int(c);
            let ok = feasible(&q_m_star(&cc).unwrap(), &cc);
            assert_eq!(ok, c % 8 != 4, "c = {c}");
        }
    }

    #[test]
    fn feasible_s_divides_the_quartic() {
        for q in 1..=150i64 {
            for c in 1..=q * (q + 1) {
                if matches!(c, 2 | 4 | 6) {
                    continue;
                }
                let (qq, cc) = (int(q), int(c));
                if feasible(&qq, &cc) {
                    let quartic = &cc * (&cc - 2) * (&cc - 4) * (&cc - 6);
                    assert!(divides(&(&cc + 2 * &qq), &quartic), "({q},{c})");
                    assert!(qq <= &cc * (h_of(&cc).unwrap() - 1) / 2);
                }
            }
        }
    }

    #[test]
    fn theorem3_examples() {
        assert!(!theorem3_feasible(&int(3), &int(2)).unwrap());
        assert!(!theorem3_feasible(&int(5), &int(6)).unwrap());
        assert!(theorem3_feasible(&int(7), &int(4)).unwrap());
        assert!(theorem3_feasible(&int(7), &int(3)).is_err());
    }

    #[test]
    fn theorem3_matches_oracle() {
        for c in [2i64, 4, 6] {
            let cc = int(c);
            for q in 1..=2000i64 {
                let qq = int(q);
                if &qq * (&qq + 1) < cc {
                    continue;
                }
                assert_eq!(theorem3_feasible(&qq, &cc).unwrap(), feasible(&qq, &cc), "({q},{c})");
            }
        }
    }

    #[test]
    fn theorem4_examples() {
        assert!(theorem4_member(&int(7), &int(2)).unwrap());
        assert!(feasible(&int(14), &int(2)));
        // modulus 3: the classes {2,1,0} cover everything
        assert!(theorem4_member(&int(1), &int(4)).unwrap());
        assert!(feasible(&int(4), &int(4)));
        assert!(theorem4_member(&int(2), &int(7)).unwrap());
        assert!(feasible(&int(14), &int(7)));
        // b = 7 part 2 gives mod 5 where part 1 needs mod 15
        assert!(theorem4_member(&int(7), &int(7)).unwrap());
        assert!(!theorem4_member(&int(2), &int(3)).unwrap());
        assert!(theorem4_member(&int(0), &int(3)).is_err());
    }

    #[test]
    fn theorem4_is_sound() {
        for b in 1..=12i64 {
            for c in 1..=300i64 {
                let (bb, cc) = (int(b), int(c));
                if theorem4_member(&bb, &cc).unwrap() {
                    assert!(feasible(&(&bb * &cc), &cc), "b={b}, c={c}");
                }
            }
        }
    }

    #[test]
    fn theorem5_examples() {
        assert_eq!(theorem5_values(&int(3)), vec![int(3), int(6), int(9), int(12)]);
        assert_eq!(theorem5_values(&int(1)), vec![int(1), int(2)]);
        assert_eq!(theorem5_values(&int(2)), vec![int(2), int(4), int(6)]);
        for q in 1..=300 {
            for c in theorem5_values(&int(q)) {
                assert!(feasible(&int(q), &c));
            }
        }
    }

    #[test]
    fn theorem6_sets_are_exact() {
        let sets = theorem6_sets();
        let as_set = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<BTreeSet<_>>();
        assert_eq!(sets[&FiniteFamily::QMinusOne], as_set(&[2, 5, 7, 12, 47]));
        assert_eq!(sets[&FiniteFamily::QPlusOne], as_set(&[1, 3, 13]));
        assert!(sets[&FiniteFamily::QSquaredMinusOne].is_empty());
    }

    #[test]
    fn theorem6_sets_match_linear_scan() {
        let sets = theorem6_sets();
        for fam in FiniteFamily::ALL {
            let scanned: BTreeSet<Int> = (1..=1000i64)
                .map(int)
                .filter(|q| {
                    let c = fam.c_for(q);
                    c.is_positive() && feasible(q, &c)
                })
                .collect();
            assert_eq!(sets[&fam], scanned, "{fam}");
        }
        assert!(!feasible(&int(5), &int(24)));
    }

    #[test]
    fn theorem6_identity_examples() {
        for q in [1, 13, 47] {
            assert!(theorem6_identities(&int(q)));
        }
        for q in -100..=100 {
            assert!(theorem6_identities(&int(q)));
        }
    }

    #[test]
    fn qr_examples() {
        let f = qr_family(&int(1), &int(5)).unwrap();
        assert_eq!(f.remainder, int(0));
        assert_eq!(f.c, int(20));
        assert_eq!(f.prediction, Prediction::Feasible);

        let f = qr_family(&int(2), &int(5)).unwrap();
        assert_eq!(f.remainder, int(0));
        assert_eq!(f.c, int(10));
        assert!(feasible(&int(5), &int(10)));

        let f = qr_family(&int(3), &int(9)).unwrap();
        assert_eq!(f.c, int(24));
        assert_eq!(f.prediction, Prediction::Unknown);
        assert!(qr_identity(&int(3), &int(9)));

        assert!(qr_family(&int(5), &int(4)).is_err());
        assert!(qr_family(&int(1), &int(1)).is_err());
    }

    #[test]
    fn qr_quotient_reduces_at_b1() {
        for q in -50..50 {
            let q = int(q);
            assert_eq!(qr_quotient(&int(1), &q), (&q + 2) * (&q + 3));
        }
    }

    #[test]
    fn qr_identity_grid() {
        for b in -20..=20 {
            for q in -20..=20 {
                assert!(qr_identity(&int(b), &int(q)));
            }
        }
    }

    #[test]
    fn qr_small_b_always_feasible() {
        for b in [1, 2] {
            for q in 2..=300i64 {
                if let Ok(f) = qr_family(&int(b), &int(q)) {
                    assert!(feasible(&f.q, &f.c), "b={b}, q={q}");
                }
            }
        }
    }

    #[test]
    fn qr_finite_sets_match_scan() {
        for b in 3..=8i64 {
            let bb = int(b);
            let limit = qr_remainder(&bb).abs();
            let mut scanned = Vec::new();
            let mut q = int(2);
            while q <= limit {
                if let Ok(f) = qr_family(&bb, &q) {
                    if feasible(&f.q, &f.c) {
                        scanned.push(q.clone());
                    }
                }
                q += 1;
            }
            assert_eq!(qr_feasible_set(&bb).unwrap(), scanned, "b = {b}");
        }
    }

    #[test]
    fn catalog_examples() {
        let rule = find_rule("c=q(q-1)/2").unwrap();
        assert_eq!(rule.generate(&int(4), None), vec![int(6)]);
        assert!(feasible(&int(4), &int(6)));

        let rule = find_rule("c=q^2").unwrap();
        assert!(rule.contains(&int(2), &int(4)));

        let rule = find_rule("c=2").unwrap();
        assert!(rule.contains(&int(5), &int(2)));
        assert!(!rule.contains(&int(7), &int(2)));

        assert_eq!(family_catalog().len(), 10);
        assert!(find_rule("c=q+1").is_err());
    }

    #[test]
    fn catalog_is_sound() {
        let ten = int(10);
        for rule in family_catalog() {
            for q in 1..=300i64 {
                let q = int(q);
                for c in rule.generate(&q, Some(&ten)) {
                    assert!(rule.contains(&q, &c));
                    assert!(feasible(&q, &c), "{} at ({q},{c})", rule.name);
                }
            }
        }
    }

    #[test]
    fn witnesses_are_members() {
        for rule in family_catalog() {
            for c in 1..=60i64 {
                let c = int(c);
                if let Some(q) = rule.witness_q(&c) {
                    assert!(rule.contains(&q, &c), "{} at c={c}", rule.name);
                }
            }
        }
        let rule = find_rule("c=q(q-1)/2").unwrap();
        assert_eq!(rule.witness_q(&int(10)), Some(int(5)));
        assert_eq!(rule.witness_q(&int(11)), None);
        let rule = find_rule("c=6").unwrap();
        assert_eq!(rule.witness_q(&int(6)), Some(int(2)));
    }
}
