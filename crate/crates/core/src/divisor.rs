//! Places, valuations and `Q`-divisors on affine lines and DVR models.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor;
use crate::field::Field;
use crate::fields::{FieldDesc, FieldElement};
use crate::poly::PolyRing;
use crate::ratfunc::{RatFunc, RatFuncField};

/// Places are irreducibility-checked up to this degree.
pub const MAX_PLACE_DEGREE: usize = 4;

/// A height-one prime: a monic irreducible polynomial of `k[t]`, or the
/// closed point of a DVR model `k[t]_(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place<E> {
    Poly(Vec<E>),
    Local,
}

impl Place<FieldElement> {
    /// A polynomial place, checked monic and irreducible by trial division.
    pub fn checked(k: &FieldDesc, g: Vec<FieldElement>) -> Result<Self> {
        let invalid = Error::InvalidPlace {
            max_degree: MAX_PLACE_DEGREE,
        };
        let FieldDesc::Finite(gf) = k else {
            return Err(Error::Unsupported(k.name()));
        };
        let raw: Vec<u32> = g
            .iter()
            .map(|c| match c {
                FieldElement::Finite(x) => *x,
                FieldElement::Rational(_) => u32::MAX,
            })
            .collect();
        if raw.contains(&u32::MAX) || raw.len() < 2 || raw.len() > MAX_PLACE_DEGREE + 1 {
            return Err(invalid);
        }
        let ring = PolyRing::new(gf.clone());
        if raw.last() != Some(&1) || !factor::is_irreducible_trial(&ring, &raw) {
            return Err(invalid);
        }
        Ok(Place::Poly(g))
    }
}

/// A finitely supported formal combination of places with rational
/// coefficients, tagged with the ring model it lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDivisor<E> {
    model: String,
    coeffs: BTreeMap<Place<E>, BigRational>,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl<E: Clone + Ord> QDivisor<E> {
    pub fn zero(model: &str) -> Self {
        QDivisor {
            model: model.to_string(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn single(model: &str, place: Place<E>, coeff: BigRational) -> Self {
        let mut d = Self::zero(model);
        d.add_term(place, coeff);
        d
    }

    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn add_term(&mut self, place: Place<E>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(place.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&place);
        }
    }

    pub fn coeff(&self, place: &Place<E>) -> BigRational {
        self.coeffs.get(place).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place<E>, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    fn same_model(&self, other: &Self) -> Result<()> {
        if self.model != other.model {
            return Err(Error::MixedModels {
                left: self.model.clone(),
                right: other.model.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero(&self.model);
        for (p, c) in &self.coeffs {
            out.add_term(p.clone(), c * q);
        }
        out
    }

    /// Coefficientwise `self >= other` on the union of supports.
    pub fn geq(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_effective())
    }

    /// Same support and coefficients, moved to another model.
    pub fn relabel(&self, model: &str) -> Self {
        QDivisor {
            model: model.to_string(),
            coeffs: self.coeffs.clone(),
        }
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl<E: Clone + Ord> QDivisor<E> {
    /// Text form such as `3/4*(y) + 2*(y^2 + 1)`; `local` is the closed
    /// point of a DVR model named by `local_param`.
    pub fn format<F: Field<Elem = E>>(&self, field: &F, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let ring = PolyRing::new(field.clone());
        let mut out = String::new();
        for (i, (place, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            } else if c.is_negative() {
                out.push('-');
            }
            let place_s = match place {
                Place::Poly(g) => ring.format(g, var),
                Place::Local => var.to_string(),
            };
            let a = c.abs();
            if a.is_one() {
                let _ = write!(out, "({place_s})");
            } else {
                let _ = write!(out, "{}*({place_s})", format_rational(&a));
            }
        }
        out
    }

    pub fn to_json<F: Field<Elem = E>>(&self, field: &F) -> Result<Vec<DivisorTerm>> {
        self.coeffs
            .iter()
            .map(|(place, c)| {
                Ok(DivisorTerm {
                    place: match place {
                        Place::Poly(g) => {
                            PlaceJson::Poly(g.iter().map(|x| field.format(x)).collect())
                        }
                        Place::Local => PlaceJson::Local("local".into()),
                    },
                    coeff: RationalJson::from_rational(c)?,
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTerm {
    pub place: PlaceJson,
    pub coeff: RationalJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaceJson {
    Poly(Vec<String>),
    Local(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i64,
    pub den: i64,
}

impl RationalJson {
    pub fn from_rational(q: &BigRational) -> Result<Self> {
        let too_big = || Error::Limit(format!("rational {q} does not fit in i64"));
        Ok(RationalJson {
            num: q.numer().to_i64().ok_or_else(too_big)?,
            den: q.denom().to_i64().ok_or_else(too_big)?,
        })
    }
}

/// Valuation of `f` at a place of `k[t]` (or at `t` for [`Place::Local`]).
pub fn ord_at<F: Field>(kt: &RatFuncField<F>, f: &RatFunc<F::Elem>, place: &Place<F::Elem>) -> Result<i64> {
    let v = match place {
        Place::Local => kt.ord_zero(f),
        Place::Poly(g) => kt.ord_at(f, g),
    };
    v.ok_or(Error::ZeroValuation)
}

/// The affine divisor `sum_P ord_P(f) P` over monic irreducible places.
pub fn divisor_of<F: Field>(
    kt: &RatFuncField<F>,
    f: &RatFunc<F::Elem>,
    model: &str,
) -> Result<QDivisor<F::Elem>> {
    if kt.is_zero(f) {
        return Err(Error::ZeroValuation);
    }
    let field = kt.base();
    let mut out = QDivisor::zero(model);
    for (poly, sign) in [(&f.num, 1i64), (&f.den, -1i64)] {
        if poly.len() <= 1 {
            continue;
        }
        let factors = field
            .factor_poly(poly)
            .ok_or_else(|| Error::Unsupported(format!("{model} (no factorization over the coefficients)")))?;
        for (g, m) in factors {
            out.add_term(Place::Poly(g), rational(sign * m as i64, 1));
        }
    }
    Ok(out)
}

/// `ord_t(f) * (t)` on a DVR model.
pub fn local_divisor_of<F: Field>(
    kt: &RatFuncField<F>,
    f: &RatFunc<F::Elem>,
    model: &str,
) -> Result<QDivisor<F::Elem>> {
    let v = kt.ord_zero(f).ok_or(Error::ZeroValuation)?;
    Ok(QDivisor::single(model, Place::Local, rational(v, 1)))
}
