//! Coefficient and residue fields: `F_{p^k}` and `F_{p^k}(y)`.
//!
//! [`FieldDesc`] is the runtime descriptor read from JSON; it implements
//! [`Field`] and [`RootField`] by dispatching to the concrete field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, RootField};
use crate::gf::Gf;
use crate::ratfunc::{RatFunc, RatFuncField};

/// Largest prime accepted by default.
pub const DEFAULT_MAX_PRIME: u32 = 7;

#[derive(Clone, Debug, PartialEq)]
pub enum FieldDesc {
    /// `F_{p^k}`, perfect.
    Finite(Gf),
    /// `F_{p^k}(y)`, with root basis `y^{j/p^e}`.
    Rational(RatFuncField<Gf>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Finite(u32),
    Rational(RatFunc<u32>),
}

/// JSON form of a field descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub k_deg: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    #[serde(default)]
    pub transcendental: Transcendental,
    /// Name of the class of the modulus variable in `F_{p^k}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Transcendental {
    Flag(bool),
    Name(String),
}

impl Default for Transcendental {
    fn default() -> Self {
        Transcendental::Flag(false)
    }
}

impl Transcendental {
    pub fn name(&self) -> Option<&str> {
        match self {
            Transcendental::Flag(false) => None,
            Transcendental::Flag(true) => Some("y"),
            Transcendental::Name(n) => Some(n),
        }
    }
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec {
            p,
            k_deg: 1,
            modulus: None,
            transcendental: Transcendental::Flag(false),
            generator: None,
        }
    }

    pub fn rational(p: u32, var: &str) -> Self {
        FieldSpec {
            transcendental: Transcendental::Name(var.to_string()),
            ..FieldSpec::prime(p)
        }
    }
}

impl FieldDesc {
    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Self::from_spec_capped(spec, DEFAULT_MAX_PRIME)
    }

    pub fn from_spec_capped(spec: &FieldSpec, max_prime: u32) -> Result<Self> {
        if spec.p > max_prime {
            return Err(Error::Limit(format!(
                "p = {} exceeds the configured cap {max_prime}",
                spec.p
            )));
        }
        let gen = spec.generator.as_deref().unwrap_or("a");
        let gf = match (&spec.modulus, spec.k_deg) {
            (_, 0) => return Err(Error::InvalidField("k_deg must be >= 1".into())),
            (None, 1) => Gf::prime(spec.p)?,
            (None, k) => {
                return Err(Error::InvalidField(format!(
                    "k_deg = {k} needs an explicit modulus"
                )))
            }
            (Some(m), k) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus has degree {} but k_deg = {k}",
                        m.len().saturating_sub(1)
                    )));
                }
                Gf::new(spec.p, m, gen)?
            }
        };
        Ok(match spec.transcendental.name() {
            None => FieldDesc::Finite(gf),
            Some(v) => FieldDesc::Rational(RatFuncField::new(gf, v)),
        })
    }

    pub fn finite_prime(p: u32) -> Result<Self> {
        Self::from_spec(&FieldSpec::prime(p))
    }

    pub fn rational_prime(p: u32, var: &str) -> Result<Self> {
        Self::from_spec(&FieldSpec::rational(p, var))
    }

    pub fn to_spec(&self) -> FieldSpec {
        let gf = self.gf();
        let (modulus, generator) = if gf.degree() > 1 {
            (
                Some(gf.modulus().to_vec()),
                Some(gf.generator_name().to_string()),
            )
        } else {
            (None, None)
        };
        FieldSpec {
            p: gf.p(),
            k_deg: gf.degree(),
            modulus,
            transcendental: match self {
                FieldDesc::Finite(_) => Transcendental::Flag(false),
                FieldDesc::Rational(r) => Transcendental::Name(r.var.clone()),
            },
            generator,
        }
    }

    /// The finite field of constants.
    pub fn gf(&self) -> &Gf {
        match self {
            FieldDesc::Finite(g) => g,
            FieldDesc::Rational(r) => r.base(),
        }
    }

    pub fn p(&self) -> u32 {
        self.gf().p()
    }

    pub fn is_perfect(&self) -> bool {
        matches!(self, FieldDesc::Finite(_))
    }

    pub fn transcendental_name(&self) -> Option<&str> {
        match self {
            FieldDesc::Finite(_) => None,
            FieldDesc::Rational(r) => Some(&r.var),
        }
    }

    /// Short display name, e.g. `F_9` or `F_3(y)`.
    pub fn name(&self) -> String {
        let q = self.gf().order();
        match self {
            FieldDesc::Finite(_) => format!("F_{q}"),
            FieldDesc::Rational(r) => format!("F_{q}({})", r.var),
        }
    }

    pub fn from_gf(&self, c: u32) -> FieldElement {
        match self {
            FieldDesc::Finite(_) => FieldElement::Finite(c),
            FieldDesc::Rational(r) => FieldElement::Rational(r.from_base(c)),
        }
    }

    /// The transcendental `y`, if any.
    pub fn transcendental(&self) -> Option<FieldElement> {
        match self {
            FieldDesc::Finite(_) => None,
            FieldDesc::Rational(r) => Some(FieldElement::Rational(r.var())),
        }
    }

    /// The class of the modulus variable of `F_{p^k}`, if `k > 1`.
    pub fn generator(&self) -> Option<FieldElement> {
        self.gf().generator().map(|g| self.from_gf(g))
    }

    fn fin<'a>(&self, a: &'a FieldElement) -> &'a u32 {
        match a {
            FieldElement::Finite(x) => x,
            FieldElement::Rational(_) => panic!("rational element in a finite field"),
        }
    }

    fn rat<'a>(&self, a: &'a FieldElement) -> &'a RatFunc<u32> {
        match a {
            FieldElement::Rational(x) => x,
            FieldElement::Finite(_) => panic!("finite element in a rational function field"),
        }
    }
}

macro_rules! dispatch {
    ($self:ident, $g:ident => $fin:expr, $r:ident => $rat:expr) => {
        match $self {
            FieldDesc::Finite($g) => FieldElement::Finite($fin),
            FieldDesc::Rational($r) => FieldElement::Rational($rat),
        }
    };
}

impl Field for FieldDesc {
    type Elem = FieldElement;

    fn characteristic(&self) -> u64 {
        self.p() as u64
    }

    fn zero(&self) -> FieldElement {
        dispatch!(self, g => g.zero(), r => r.zero())
    }

    fn one(&self) -> FieldElement {
        dispatch!(self, g => g.one(), r => r.one())
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Finite(x) => *x == 0,
            FieldElement::Rational(x) => x.num.is_empty(),
        }
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        dispatch!(self,
            g => g.add(self.fin(a), self.fin(b)),
            r => r.add(self.rat(a), self.rat(b)))
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        dispatch!(self, g => g.neg(self.fin(a)), r => r.neg(self.rat(a)))
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        dispatch!(self,
            g => g.sub(self.fin(a), self.fin(b)),
            r => r.sub(self.rat(a), self.rat(b)))
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        dispatch!(self,
            g => g.mul(self.fin(a), self.fin(b)),
            r => r.mul(self.rat(a), self.rat(b)))
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        match self {
            FieldDesc::Finite(g) => g.inv(self.fin(a)).map(FieldElement::Finite),
            FieldDesc::Rational(r) => r.inv(self.rat(a)).map(FieldElement::Rational),
        }
    }

    fn from_i64(&self, n: i64) -> FieldElement {
        dispatch!(self, g => g.from_i64(n), r => r.from_i64(n))
    }

    fn frobenius(&self, a: &FieldElement, e: u32) -> FieldElement {
        dispatch!(self,
            g => g.frobenius(self.fin(a), e),
            r => r.frobenius(self.rat(a), e))
    }

    fn format(&self, a: &FieldElement) -> String {
        match self {
            FieldDesc::Finite(g) => g.format(self.fin(a)),
            FieldDesc::Rational(r) => r.format(self.rat(a)),
        }
    }

    fn factor_poly(&self, f: &[FieldElement]) -> Option<Vec<(Vec<FieldElement>, u32)>> {
        match self {
            FieldDesc::Finite(g) => {
                let raw: Vec<u32> = f.iter().map(|c| *self.fin(c)).collect();
                let fs = g.factor_poly(&raw)?;
                Some(
                    fs.into_iter()
                        .map(|(h, m)| (h.into_iter().map(FieldElement::Finite).collect(), m))
                        .collect(),
                )
            }
            FieldDesc::Rational(_) => None,
        }
    }
}

impl RootField for FieldDesc {
    fn root_rank(&self, e: u32) -> usize {
        match self {
            FieldDesc::Finite(g) => g.root_rank(e),
            FieldDesc::Rational(r) => r.root_rank(e),
        }
    }

    fn root_radicand(&self, j: usize, e: u32) -> FieldElement {
        dispatch!(self, g => g.root_radicand(j, e), r => r.root_radicand(j, e))
    }

    fn root_coords(&self, a: &FieldElement, e: u32) -> Vec<FieldElement> {
        match self {
            FieldDesc::Finite(g) => g
                .root_coords(self.fin(a), e)
                .into_iter()
                .map(FieldElement::Finite)
                .collect(),
            FieldDesc::Rational(r) => r
                .root_coords(self.rat(a), e)
                .into_iter()
                .map(FieldElement::Rational)
                .collect(),
        }
    }

    fn root_label(&self, j: usize, e: u32) -> String {
        match self {
            FieldDesc::Finite(g) => g.root_label(j, e),
            FieldDesc::Rational(r) => r.root_label(j, e),
        }
    }
}

/// An element of `k^{1/p^e}`, as coordinates in the fixed root basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFieldElement {
    pub e: u32,
    pub coords: Vec<FieldElement>,
}

impl RootFieldElement {
    /// The represented element raised to the `p^e`, an element of `k`.
    pub fn radicand(&self, k: &FieldDesc) -> FieldElement {
        k.root_assemble(&self.coords, self.e)
    }
}

/// `a^{p^e}`.
pub fn frobenius_power(k: &FieldDesc, a: &FieldElement, e: u32) -> FieldElement {
    k.frobenius(a, e)
}

/// `a^{1/p^e}` expanded in the root basis of `k`.
pub fn pth_root(k: &FieldDesc, a: &FieldElement, e: u32) -> RootFieldElement {
    RootFieldElement {
        e,
        coords: k.root_coords(a, e),
    }
}

/// Labels of the root basis of `k^{1/p^e}` over `k`; the first is always `1`.
pub fn residue_root_basis(k: &FieldDesc, e: u32) -> Vec<String> {
    (0..k.root_rank(e)).map(|j| k.root_label(j, e)).collect()
}
