use std::collections::BTreeMap;

use super::{find_roots, FieldSpec, FieldValue, Polynomial};
use crate::error::{Error, Result};

/// Sparse element of 𝔽[x, x⁻¹]. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentElement {
    spec: FieldSpec,
    terms: BTreeMap<i64, FieldValue>,
}

impl LaurentElement {
    pub fn new(spec: FieldSpec, terms: impl IntoIterator<Item = (i64, FieldValue)>) -> Result<Self> {
        let mut map: BTreeMap<i64, FieldValue> = BTreeMap::new();
        for (e, c) in terms {
            if c.spec() != spec {
                return Err(Error::FieldMismatch {
                    left: spec.to_string(),
                    right: c.spec().to_string(),
                });
            }
            let sum = match map.remove(&e) {
                Some(old) => &old + &c,
                None => c,
            };
            if !sum.is_zero() {
                map.insert(e, sum);
            }
        }
        Ok(LaurentElement { spec, terms: map })
    }

    pub fn from_polynomial(f: &Polynomial) -> Self {
        let terms = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.clone()))
            .collect();
        LaurentElement { spec: f.spec(), terms }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn terms(&self) -> &BTreeMap<i64, FieldValue> {
        &self.terms
    }
}

/// Generators of the ideal (g) ⊂ 𝔽[x, x⁻¹] as ordinary polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentNormalForm {
    pub monic: Polynomial,
    /// Same polynomial scaled to constant term 1.
    pub canonical: Polynomial,
}

pub fn laurent_normalize(g: &LaurentElement) -> Result<LaurentNormalForm> {
    let (&low, _) = g.terms.first_key_value().ok_or(Error::ZeroElement)?;
    if g.terms.len() == 1 {
        return Err(Error::UnitElement);
    }
    let (&high, _) = g.terms.last_key_value().expect("nonempty");
    let mut coeffs = vec![g.spec.zero(); (high - low) as usize + 1];
    for (&e, c) in &g.terms {
        coeffs[(e - low) as usize] = c.clone();
    }
    let shifted = Polynomial::from_raw(g.spec, coeffs);
    let canonical = shifted
        .with_unit_constant()
        .ok_or_else(|| Error::Internal("shifted Laurent element lost its constant term".into()))?;
    Ok(LaurentNormalForm {
        monic: shifted.monic(),
        canonical,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtBlock {
    pub factor: Polynomial,
    pub multiplicity: usize,
    pub dimension: usize,
}

/// Shape of 𝔽[x]/(f) ≅ ∏ 𝔽[x]/(fᵢ^mᵢ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtProfile {
    pub dimension: usize,
    pub blocks: Vec<CrtBlock>,
    pub maximal_ideals: usize,
    /// True iff the quotient is 𝔽^dimension.
    pub is_split_semisimple: bool,
}

/// Validates a caller-supplied factorization and reports the CRT blocks.
pub fn crt_profile(f: &Polynomial, factors: &[(Polynomial, usize)]) -> Result<CrtProfile> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut product = Polynomial::one(f.spec());
    for (fi, m) in factors {
        if fi.spec() != f.spec() {
            return Err(Error::FieldMismatch {
                left: f.spec().to_string(),
                right: fi.spec().to_string(),
            });
        }
        if fi.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if *m == 0 {
            return Err(Error::ProductMismatch);
        }
        product = product.mul_raw(&fi.pow(*m));
    }
    for (i, (a, _)) in factors.iter().enumerate() {
        for (b, _) in &factors[i + 1..] {
            if a.gcd(b)?.degree() != Some(0) {
                return Err(Error::NotCoprime(format!("{a} and {b}")));
            }
        }
    }
    if product.monic() != f.monic() {
        return Err(Error::ProductMismatch);
    }
    let blocks: Vec<CrtBlock> = factors
        .iter()
        .map(|(fi, m)| CrtBlock {
            factor: fi.monic(),
            multiplicity: *m,
            dimension: m * fi.degree().unwrap_or(0),
        })
        .collect();
    let dimension = f.degree().unwrap_or(0);
    let is_split_semisimple = blocks.iter().all(|b| b.multiplicity == 1 && b.factor.degree() == Some(1));
    Ok(CrtProfile {
        dimension,
        maximal_ideals: blocks.len(),
        blocks,
        is_split_semisimple,
    })
}

/// [`crt_profile`] with the factorization taken from the roots of `f`.
pub fn crt_profile_from_roots(f: &Polynomial) -> Result<CrtProfile> {
    let rm = find_roots(f)?;
    if rm.unfactored_degree > 0 {
        return Err(Error::UnsupportedShape(format!(
            "{f} does not split into linear factors ({} degrees unfactored)",
            rm.unfactored_degree
        )));
    }
    let factors: Vec<(Polynomial, usize)> = rm.roots.iter().map(|(r, m)| (Polynomial::linear_root(r), *m)).collect();
    crt_profile(f, &factors)
}
