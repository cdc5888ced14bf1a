use std::fmt;

use super::{FieldSpec, FieldValue};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients low degree first. The zero
/// polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<FieldValue>,
}

impl Polynomial {
    pub fn new(spec: FieldSpec, coeffs: Vec<FieldValue>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.spec() != spec) {
            return Err(Error::FieldMismatch {
                left: spec.to_string(),
                right: bad.spec().to_string(),
            });
        }
        Ok(Self::from_raw(spec, coeffs))
    }

    pub(crate) fn from_raw(spec: FieldSpec, mut coeffs: Vec<FieldValue>) -> Self {
        while coeffs.last().is_some_and(FieldValue::is_zero) {
            coeffs.pop();
        }
        Polynomial { spec, coeffs }
    }

    /// Integer coefficients reduced into `spec`.
    pub fn from_i64s(spec: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_raw(spec, coeffs.iter().map(|&c| spec.from_i64(c)).collect())
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Polynomial { spec, coeffs: Vec::new() }
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::constant(spec.one())
    }

    pub fn constant(c: FieldValue) -> Self {
        let spec = c.spec();
        Self::from_raw(spec, vec![c])
    }

    pub fn x(spec: FieldSpec) -> Self {
        Self::from_raw(spec, vec![spec.zero(), spec.one()])
    }

    /// `x - r`.
    pub fn linear_root(r: &FieldValue) -> Self {
        let spec = r.spec();
        Self::from_raw(spec, vec![-r, spec.one()])
    }

    /// Parses the CLI coefficient list (`c0 c1 ... cd`).
    pub fn parse(spec: FieldSpec, text: &str) -> std::result::Result<Self, String> {
        let coeffs = text
            .split_whitespace()
            .map(|tok| spec.parse_value(tok))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::from_raw(spec, coeffs))
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[FieldValue] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldValue {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn leading(&self) -> Option<&FieldValue> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> FieldValue {
        self.coeff(0)
    }

    pub fn eval(&self, x: &FieldValue) -> FieldValue {
        self.coeffs
            .iter()
            .rev()
            .fold(self.spec.zero(), |acc, c| &(&acc * x) + c)
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_raw(&other.neg()))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.mul_raw(other))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &FieldValue) -> Polynomial {
        Self::from_raw(self.spec, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub(crate) fn add_raw(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Self::from_raw(self.spec, coeffs)
    }

    pub(crate) fn mul_raw(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.spec);
        }
        let mut out = vec![self.spec.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_raw(self.spec, out)
    }

    pub fn pow(&self, n: usize) -> Polynomial {
        (0..n).fold(Self::one(self.spec), |acc, _| acc.mul_raw(self))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check(divisor)?;
        let lead_inv = divisor.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.spec), self.clone()));
        }
        let mut quot = vec![self.spec.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_raw(self.spec, quot), Self::from_raw(self.spec, rem)))
    }

    pub fn divides(&self, other: &Polynomial) -> Result<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub(crate) fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Rescales so the constant term is 1; `None` when it is zero.
    pub fn with_unit_constant(&self) -> Option<Polynomial> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return None;
        }
        Some(self.scale(&c0.inv().ok()?))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.spec.from_i64(i as i64))
            .collect();
        Self::from_raw(self.spec, coeffs)
    }

    /// Space-separated coefficient list, the inverse of [`Polynomial::parse`].
    pub fn coefficient_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = super::roots::is_negative(c);
            let mag = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}
