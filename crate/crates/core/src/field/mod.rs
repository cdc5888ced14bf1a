//! Exact scalars over ℚ and prime fields, dense polynomials, and the
//! root/squarefree/dlf machinery built on top of them.

mod laurent;
mod poly;
mod roots;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use laurent::{
    crt_profile, crt_profile_from_roots, laurent_normalize, CrtBlock, CrtProfile, LaurentElement, LaurentNormalForm,
};
pub use poly::Polynomial;
pub use roots::{find_roots, is_dlf, squarefree_part, DlfVerdict, RootMultiset};

/// Largest characteristic accepted by the exhaustive searches
/// (root finding, stratum enumeration).
pub const MAX_SEARCH_PRIME: u64 = 1 << 20;

/// The coefficient field: ℚ or 𝔽p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// 𝔽p, after checking that `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldValue {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldValue {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldValue {
        match self {
            FieldSpec::Rationals => FieldValue::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => FieldValue::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(self, numer: i64, denom: i64) -> Result<FieldValue> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_i64(numer).div(&self.from_i64(denom))
    }

    /// All elements of a prime field in ascending residue order.
    pub fn elements(self) -> Option<impl Iterator<Item = FieldValue>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p).map(move |value| FieldValue::Residue { value, modulus: p })),
        }
    }

    /// Rejects characteristics too large for exhaustive search.
    pub fn check_searchable(self) -> Result<u64> {
        match self {
            FieldSpec::Rationals => Err(Error::UnsupportedShape(
                "exhaustive search needs a prime field".into(),
            )),
            FieldSpec::Prime(p) if p > MAX_SEARCH_PRIME => {
                Err(Error::limit(format!("characteristic {p} too large for exhaustive search"), MAX_SEARCH_PRIME))
            }
            FieldSpec::Prime(p) => Ok(p),
        }
    }

    /// Image of a rational number in this field.
    pub fn reduce(self, q: &BigRational) -> Result<FieldValue> {
        match self {
            FieldSpec::Rationals => Ok(FieldValue::Rational(q.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(p);
                let residue = |n: &BigInt| -> u64 {
                    let r = ((n % &m) + &m) % &m;
                    bigint_to_u128(&r).expect("residue below p") as u64
                };
                let d = residue(q.denom());
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                let n = FieldValue::Residue { value: residue(q.numer()), modulus: p };
                n.div(&FieldValue::Residue { value: d, modulus: p })
            }
        }
    }

    /// Parses a scalar in the CLI syntax: `a` or `a/b` over ℚ, a residue in
    /// `[0, p)` over 𝔽p.
    pub fn parse_value(self, text: &str) -> std::result::Result<FieldValue, String> {
        match self {
            FieldSpec::Rationals => {
                let (n, d) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| format!("bad rational `{text}`"))?;
                let d: BigInt = d.parse().map_err(|_| format!("bad rational `{text}`"))?;
                if d.is_zero() {
                    return Err(format!("zero denominator in `{text}`"));
                }
                Ok(FieldValue::Rational(BigRational::new(n, d)))
            }
            FieldSpec::Prime(p) => {
                let value: u64 = text.parse().map_err(|_| format!("bad residue `{text}`"))?;
                if value >= p {
                    return Err(format!("residue {value} not in [0, {p})"));
                }
                Ok(FieldValue::Residue { value, modulus: p })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix('F')
            .ok_or_else(|| Error::parse(0, format!("unknown field `{s}` (expected Q or F<p>)")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::parse(0, format!("bad characteristic in `{s}`")))?;
        FieldSpec::prime(p)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar. Rationals are kept in lowest terms with a positive
/// denominator (guaranteed by `BigRational`); residues are reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldValue {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldValue {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldValue::Rational(_) => FieldSpec::Rationals,
            FieldValue::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(r) => r.is_zero(),
            FieldValue::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldValue::Rational(r) => r.is_one(),
            FieldValue::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<FieldValue> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldValue::Rational(r) => FieldValue::Rational(r.recip()),
            FieldValue::Residue { value, modulus } => FieldValue::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &FieldValue) -> Result<FieldValue> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> FieldValue {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldValue::Rational(r) => Some(r),
            FieldValue::Residue { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            FieldValue::Rational(_) => None,
            FieldValue::Residue { value, .. } => Some(*value),
        }
    }

    fn same_field(&self, other: &FieldValue) -> bool {
        self.spec() == other.spec()
    }
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl Add for &FieldValue {
    type Output = FieldValue;

    fn add(self, rhs: &FieldValue) -> FieldValue {
        assert!(self.same_field(rhs), "field mismatch: {} vs {}", self.spec(), rhs.spec());
        match (self, rhs) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a + b),
            (FieldValue::Residue { value: a, modulus }, FieldValue::Residue { value: b, .. }) => FieldValue::Residue {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldValue {
    type Output = FieldValue;

    fn sub(self, rhs: &FieldValue) -> FieldValue {
        self + &(-rhs)
    }
}

impl Mul for &FieldValue {
    type Output = FieldValue;

    fn mul(self, rhs: &FieldValue) -> FieldValue {
        assert!(self.same_field(rhs), "field mismatch: {} vs {}", self.spec(), rhs.spec());
        match (self, rhs) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a * b),
            (FieldValue::Residue { value: a, modulus }, FieldValue::Residue { value: b, .. }) => FieldValue::Residue {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldValue {
    type Output = FieldValue;

    fn neg(self) -> FieldValue {
        match self {
            FieldValue::Rational(a) => FieldValue::Rational(-a),
            FieldValue::Residue { value, modulus } => FieldValue::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

/// Canonical field order: ascending residues in 𝔽p, ascending rationals in ℚ.
impl Ord for FieldValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => a.cmp(b),
            (FieldValue::Residue { value: a, modulus: p }, FieldValue::Residue { value: b, modulus: q }) => {
                (p, a).cmp(&(q, b))
            }
            (FieldValue::Rational(_), FieldValue::Residue { .. }) => Ordering::Less,
            (FieldValue::Residue { .. }, FieldValue::Rational(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for FieldValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            FieldValue::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            FieldValue::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Small helper for the rational root search: `|r|` as `u128` when it fits.
pub(crate) fn bigint_to_u128(n: &BigInt) -> Option<u128> {
    n.abs().to_u128()
}
