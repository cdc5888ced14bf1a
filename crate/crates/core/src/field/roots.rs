use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{bigint_to_u128, FieldSpec, FieldValue, Polynomial};
use crate::error::{Error, Result};

/// Largest |a₀| or |a_d| for which the rational root search enumerates divisors.
const MAX_RATIONAL_ROOT_BOUND: u128 = 100_000_000_000_000;
const MAX_RATIONAL_CANDIDATES: usize = 1_000_000;

/// Roots of a polynomial inside its coefficient field, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootMultiset {
    /// Distinct roots in canonical field order.
    pub roots: Vec<(FieldValue, usize)>,
    pub unfactored_degree: usize,
    /// Monic rootless cofactor left after deflating every root.
    pub cofactor: Polynomial,
}

impl RootMultiset {
    pub fn distinct(&self) -> impl Iterator<Item = &FieldValue> {
        self.roots.iter().map(|(r, _)| r)
    }

    pub fn degree(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum::<usize>() + self.unfactored_degree
    }
}

/// Result of the distinct-linear-factor test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DlfVerdict {
    Dlf { roots: Vec<FieldValue> },
    RepeatedRoot { root: FieldValue, multiplicity: usize },
    Unfactored { degree: usize },
}

impl DlfVerdict {
    pub fn is_dlf(&self) -> bool {
        matches!(self, DlfVerdict::Dlf { .. })
    }
}

impl fmt::Display for DlfVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DlfVerdict::Dlf { roots } => {
                let list: Vec<String> = roots.iter().map(ToString::to_string).collect();
                write!(f, "roots {}", list.join(" "))
            }
            DlfVerdict::RepeatedRoot { root, .. } => write!(f, "repeated root {root}"),
            DlfVerdict::Unfactored { degree } => write!(f, "unfactored degree {degree}"),
        }
    }
}

fn deflate(f: &Polynomial, r: &FieldValue) -> Polynomial {
    // Synthetic division by (x - r); caller guarantees f(r) = 0.
    let n = f.coeffs().len();
    let mut out = vec![f.spec().zero(); n - 1];
    let mut carry = f.spec().zero();
    for i in (1..n).rev() {
        carry = &f.coeffs()[i] + &(&carry * r);
        out[i - 1] = carry.clone();
    }
    Polynomial::from_raw(f.spec(), out)
}

/// Root extraction: exhaustive over 𝔽p, rational root theorem over ℚ.
pub fn find_roots(f: &Polynomial) -> Result<RootMultiset> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let candidates = match f.spec() {
        FieldSpec::Prime(_) => {
            f.spec().check_searchable()?;
            None
        }
        FieldSpec::Rationals => Some(rational_candidates(f)?),
    };
    let mut rest = f.clone();
    let mut roots = Vec::new();
    let mut take = |r: FieldValue, rest: &mut Polynomial| {
        let mut m = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
            *rest = deflate(rest, &r);
            m += 1;
        }
        if m > 0 {
            roots.push((r, m));
        }
    };
    match candidates {
        None => {
            for r in f.spec().elements().expect("prime field") {
                if rest.degree() == Some(0) {
                    break;
                }
                take(r, &mut rest);
            }
        }
        Some(cands) => {
            for r in cands {
                if rest.degree() == Some(0) {
                    break;
                }
                take(r, &mut rest);
            }
        }
    }
    let unfactored_degree = rest.degree().unwrap_or(0);
    Ok(RootMultiset {
        roots,
        unfactored_degree,
        cofactor: rest.monic(),
    })
}

/// Sorted candidate rational roots of `f` (0 included when f(0) = 0).
fn rational_candidates(f: &Polynomial) -> Result<Vec<FieldValue>> {
    let lcm = f
        .coeffs()
        .iter()
        .filter_map(FieldValue::as_rational)
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c.as_rational().expect("rational") * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    let a0 = &ints[low];
    let an = ints.last().expect("nonzero polynomial");
    let mut out = Vec::new();
    if low > 0 {
        out.push(BigRational::zero());
    }
    if ints.len() - 1 > low {
        let bound = |n: &BigInt| {
            bigint_to_u128(n)
                .filter(|&v| v <= MAX_RATIONAL_ROOT_BOUND)
                .ok_or_else(|| Error::limit("rational root search coefficient size", MAX_RATIONAL_ROOT_BOUND as u64))
        };
        let nums = divisors(bound(a0)?);
        let dens = divisors(bound(an)?);
        if nums.len().saturating_mul(dens.len()) > MAX_RATIONAL_CANDIDATES {
            return Err(Error::limit("rational root candidates", MAX_RATIONAL_CANDIDATES as u64));
        }
        for &p in &nums {
            for &q in &dens {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let r = BigRational::new(BigInt::from(p), BigInt::from(q));
                out.push(-r.clone());
                out.push(r);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out.into_iter().map(FieldValue::Rational).collect())
}

fn divisors(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct-linear-factor test with a witness.
pub fn is_dlf(f: &Polynomial) -> Result<DlfVerdict> {
    match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    let rm = find_roots(f)?;
    if let Some((root, multiplicity)) = rm.roots.iter().find(|(_, m)| *m > 1) {
        return Ok(DlfVerdict::RepeatedRoot {
            root: root.clone(),
            multiplicity: *multiplicity,
        });
    }
    if rm.unfactored_degree > 0 {
        return Ok(DlfVerdict::Unfactored {
            degree: rm.unfactored_degree,
        });
    }
    Ok(DlfVerdict::Dlf {
        roots: rm.roots.into_iter().map(|(r, _)| r).collect(),
    })
}

/// Product of the distinct irreducible factors of `f`, scaled so g(0) = 1.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial> {
    match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let g = match f.spec() {
        FieldSpec::Rationals => f.exact_div(&f.gcd(&f.derivative())?)?,
        FieldSpec::Prime(p) => radical_mod_p(f, p)?,
    };
    g.with_unit_constant()
        .ok_or_else(|| Error::Internal("squarefree part lost its constant term".into()))
}

fn radical_mod_p(f: &Polynomial, p: u64) -> Result<Polynomial> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Polynomial::one(f.spec()));
    }
    let df = f.derivative();
    if df.is_zero() {
        return radical_mod_p(&pth_root(f, p), p);
    }
    let c = f.gcd(&df)?;
    let w = f.exact_div(&c)?.monic();
    let mut rest = c;
    loop {
        let y = rest.gcd(&w)?;
        if y.degree().unwrap_or(0) == 0 {
            break;
        }
        rest = rest.exact_div(&y)?;
    }
    Ok(w.mul_raw(&radical_mod_p(&rest, p)?).monic())
}

/// For f = h(xᵖ) over 𝔽p, the polynomial whose p-th power is f.
fn pth_root(f: &Polynomial, p: u64) -> Polynomial {
    let coeffs = f.coeffs().iter().step_by(p as usize).cloned().collect();
    Polynomial::from_raw(f.spec(), coeffs)
}

pub(crate) fn is_negative(v: &FieldValue) -> bool {
    v.as_rational().is_some_and(|r| r.is_negative())
}
