//! Ground fields and exact scalars.
//!
//! A scalar is either an arbitrary-precision rational (always kept reduced,
//! positive denominator — `num`'s `BigRational` maintains that on
//! construction) or a residue mod a prime `p`. Moduli are restricted to
//! `p < 2^31` so residue products fit in a `u64` without overflow.
//!
//! Scalar literals use the grammar `-?[0-9]+(/[1-9][0-9]*)?`: an optional
//! leading minus, then digits, then optionally a slash and an *unsigned,
//! nonzero* denominator. Signs on denominators ("2/-4") are rejected rather
//! than normalized, as are empty strings, whitespace, and anything else.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// The ground field of a computation: ℚ or 𝔽_p (p prime, p < 2^31).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    /// Validated constructor for 𝔽_p. Rejects composites, 0, 1, and
    /// moduli ≥ 2^31 (the bound that keeps residue products in `u64`).
    pub fn fp(p: u64) -> Result<Field> {
        if p >= 1 << 31 {
            return Err(Error::ParseError(format!(
                "modulus {p} is too large (must be < 2^31)"
            )));
        }
        if !is_prime_u64(p) {
            return Err(Error::ParseError(format!("modulus {p} is not prime")));
        }
        Ok(Field::Fp(p))
    }

    /// Characteristic: 0 for ℚ, p for 𝔽_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => *p,
        }
    }

    pub fn is_char_two(&self) -> bool {
        self.characteristic() == 2
    }

    /// Zero of this field.
    pub fn zero(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { val: 0, p: *p },
        }
    }

    /// One of this field.
    pub fn one(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { val: 1 % p, p: *p },
        }
    }

    /// Embed a signed integer.
    pub fn int(&self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let p_i = *p as i128;
                let r = ((n as i128 % p_i) + p_i) % p_i;
                Scalar::Fp { val: r as u64, p: *p }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// Deterministic trial-division primality test; the modulus bound keeps the
/// loop below 2^16 iterations.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. Rationals are kept reduced with positive
/// denominator; residues are kept in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { val: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    /// A machine integer as an element of the field (reduced mod p over
    /// 𝔽_p).
    pub fn from_int(field: Field, n: i64) -> Scalar {
        match field {
            Field::Q => Scalar::Q(BigRational::from_integer(n.into())),
            Field::Fp(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { val: r, p }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { val, p } => *val == 1 % p,
        }
    }

    /// Build a rational from a numerator/denominator pair of machine ints.
    /// Panics if `den == 0`; intended for literals in code and tests.
    pub fn rat(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn check_same(&self, other: &Scalar) {
        debug_assert!(
            self.field() == other.field(),
            "scalar arithmetic across fields ({} vs {}); constructors must have validated this",
            self.field(),
            other.field()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => {
                Scalar::Fp { val: (a + b) % p, p: *p }
            }
            _ => unreachable!("mixed-field scalars past construction"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => {
                // a, b < 2^31 so the product fits in u64.
                Scalar::Fp { val: (a * b) % p, p: *p }
            }
            _ => unreachable!("mixed-field scalars past construction"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { val, p } => Scalar::Fp { val: (p - val) % p, p: *p },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(a.recip()))
                }
            }
            Scalar::Fp { val, p } => {
                if *val == 0 {
                    None
                } else {
                    Some(Scalar::Fp { val: mod_inverse(*val, *p), p: *p })
                }
            }
        }
    }

    /// Reduce a rational scalar mod p (denominator inverted mod p).
    /// Errors with FieldMismatch if the denominator vanishes mod p or the
    /// scalar is already a residue of a different modulus.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Q(r) => {
                let p_big = BigInt::from(p);
                let num = r.numer().mod_floor_u64(&p_big);
                let den = r.denom().mod_floor_u64(&p_big);
                if den == 0 {
                    return Err(Error::FieldMismatch(format!(
                        "denominator of {self} vanishes mod {p}"
                    )));
                }
                Ok(Scalar::Fp { val: (num * mod_inverse(den, p)) % p, p })
            }
            Scalar::Fp { p: q, .. } => {
                if *q == p {
                    Ok(self.clone())
                } else {
                    Err(Error::FieldMismatch(format!(
                        "cannot reduce a residue mod {q} into F{p}"
                    )))
                }
            }
        }
    }

    /// Parse a literal in the given field. See the module docs for the
    /// grammar; 𝔽_p accepts (possibly signed) integers reduced mod p and
    /// rejects fraction forms.
    pub fn parse_in(field: Field, s: &str) -> Result<Scalar> {
        let (neg, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let (num_str, den_str) = match rest.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (rest, None),
        };
        let digits_ok = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(num_str) {
            return Err(Error::ParseError(format!("bad scalar literal {s:?}")));
        }
        if let Some(d) = den_str {
            // Denominators must be unsigned, nonzero, and without leading
            // zeros' only exception being, well, none: "0..." means the
            // leading digit is 0 which only "0" itself has, and that is
            // rejected as zero.
            if !digits_ok(d) || d.starts_with('0') {
                return Err(Error::ParseError(format!("bad scalar literal {s:?}")));
            }
        }
        let mut num: BigInt = num_str.parse().expect("digit-checked");
        if neg {
            num = -num;
        }
        let den: BigInt = match den_str {
            Some(d) => d.parse().expect("digit-checked"),
            None => BigInt::one(),
        };
        match field {
            Field::Q => Ok(Scalar::Q(BigRational::new(num, den))),
            Field::Fp(p) => {
                if den_str.is_some() {
                    return Err(Error::ParseError(format!(
                        "fraction literal {s:?} not allowed over F{p}"
                    )));
                }
                let q = Scalar::Q(BigRational::from_integer(num));
                q.reduce_mod(p)
            }
        }
    }

    /// Residue value for 𝔽_p scalars; panics over ℚ (callers check).
    pub fn residue(&self) -> u64 {
        match self {
            Scalar::Fp { val, .. } => *val,
            Scalar::Q(_) => panic!("residue() on a rational"),
        }
    }

    /// The rational value if this is a ℚ scalar.
    pub fn rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    /// True if the reduced value is an integer (denominator 1) — always
    /// true over 𝔽_p.
    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_integer(),
            Scalar::Fp { .. } => true,
        }
    }
}

/// Extended-Euclid inverse of `a` mod `p` for prime `p`, `a != 0 (mod p)`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "gcd(a, p) must be 1 for prime p and a != 0");
    let p_i = p as i128;
    (((old_s % p_i) + p_i) % p_i) as u64
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        use num::Integer;
        let m = self.mod_floor(p);
        // 0 <= m < p < 2^31, so this conversion cannot fail.
        u64::try_from(m).expect("mod_floor result fits u64")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().magnitude(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_constructor_validates() {
        assert!(Field::fp(2).is_ok());
        assert!(Field::fp(3).is_ok());
        assert!(Field::fp(2147483647).is_ok()); // 2^31 - 1 is prime
        assert!(matches!(Field::fp(1), Err(Error::ParseError(_))));
        assert!(matches!(Field::fp(4), Err(Error::ParseError(_))));
        assert!(matches!(Field::fp(1 << 31), Err(Error::ParseError(_))));
    }

    #[test]
    fn rational_arithmetic_reduces() {
        let a = Scalar::rat(2, 4);
        let b = Scalar::rat(1, 2);
        assert_eq!(a, b);
        assert_eq!(a.add(&b), Scalar::rat(1, 1));
        assert_eq!(a.mul(&b), Scalar::rat(1, 4));
        assert_eq!(a.sub(&b), Field::Q.zero());
        assert_eq!(Scalar::rat(-3, 6).to_string(), "-1/2");
    }

    #[test]
    fn residue_arithmetic() {
        let f = Field::Fp(7);
        let a = f.int(5);
        let b = f.int(4);
        assert_eq!(a.add(&b), f.int(2));
        assert_eq!(a.mul(&b), f.int(6));
        assert_eq!(a.neg(), f.int(2));
        assert_eq!(f.int(-3), f.int(4));
        assert_eq!(a.inv().unwrap(), f.int(3)); // 5*3 = 15 = 1 mod 7
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn inverse_matches_over_big_modulus() {
        let p = 2147483647u64;
        let f = Field::Fp(p);
        let a = f.int(1234567);
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(Scalar::parse_in(Field::Q, "2/4").unwrap(), Scalar::rat(1, 2));
        assert_eq!(Scalar::parse_in(Field::Q, "-7").unwrap(), Scalar::rat(-7, 1));
        assert_eq!(Scalar::parse_in(Field::Q, "0").unwrap(), Field::Q.zero());
        // Signs are only legal on the numerator.
        assert!(Scalar::parse_in(Field::Q, "2/-4").is_err());
        assert!(Scalar::parse_in(Field::Q, "-2/-4").is_err());
        assert!(Scalar::parse_in(Field::Q, "2/0").is_err());
        assert!(Scalar::parse_in(Field::Q, "2/04").is_err());
        assert!(Scalar::parse_in(Field::Q, "").is_err());
        assert!(Scalar::parse_in(Field::Q, " 1").is_err());
        assert!(Scalar::parse_in(Field::Q, "1.5").is_err());
        // F_p: integers reduced mod p, fractions rejected.
        assert_eq!(Scalar::parse_in(Field::Fp(5), "-3").unwrap(), Field::Fp(5).int(2));
        assert_eq!(Scalar::parse_in(Field::Fp(5), "12").unwrap(), Field::Fp(5).int(2));
        assert!(Scalar::parse_in(Field::Fp(5), "1/2").is_err());
    }

    #[test]
    fn reduce_mod_handles_denominators() {
        // 1/2 mod 5 = 3 because 2*3 = 6 = 1.
        assert_eq!(Scalar::rat(1, 2).reduce_mod(5).unwrap(), Field::Fp(5).int(3));
        // 1/5 mod 5 does not exist.
        assert!(Scalar::rat(1, 5).reduce_mod(5).is_err());
        // Negative numerators floor-reduce into 0..p.
        assert_eq!(Scalar::rat(-1, 1).reduce_mod(5).unwrap(), Field::Fp(5).int(4));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::rat(3, 1).to_string(), "3");
        assert_eq!(Scalar::rat(1, 3).to_string(), "1/3");
        assert_eq!(Field::Fp(5).int(-1).to_string(), "4");
    }
}
