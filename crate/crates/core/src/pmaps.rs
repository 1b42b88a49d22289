//! Root modules `R^{1/p^e}` and `p^{-e}`-linear maps.
//!
//! `R` is either a polynomial ring `k[t]` or its localization `k[t]_(t)`.
//! Both sit inside `K = k(t)`, and every element of `K^{1/p^e}` is stored
//! through coordinates in the free basis `u_j^{1/p^e} t^{i/p^e}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algext::AlgExt;
use crate::divisor::{self, QDivisor};
use crate::error::{Error, Result};
use crate::expr;
use crate::field::{Field, RootField};
use crate::fields::FieldDesc;
use crate::linalg;
use crate::ratfunc::{RatFunc, RatFuncField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    /// `k[t]`
    Poly,
    /// `k[t]_(t)`
    Local,
}

/// `k[t]` or `k[t]_(t)` over a coefficient field with a chosen root basis.
#[derive(Clone, Debug, PartialEq)]
pub struct RingModel<F: RootField> {
    kind: RingKind,
    frac: RatFuncField<F>,
    coeff_name: String,
    symbols: Vec<(String, F::Elem)>,
}

pub type Elem<F> = RatFunc<<F as Field>::Elem>;

/// Basis tag `(j, i)` for `u_j^{1/p^e} t^{i/p^e}`; `j` is 0-based here and
/// printed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tag {
    pub j: usize,
    pub i: usize,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j + 1, self.i)
    }
}

impl Tag {
    pub fn parse(s: &str) -> Result<Tag> {
        let bad = || Error::BadTag(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (j, i) = inner.split_once(',').ok_or_else(bad)?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        if j == 0 {
            return Err(bad());
        }
        Ok(Tag { j: j - 1, i })
    }
}

impl<F: RootField> RingModel<F> {
    /// `symbols` binds names of coefficient-field elements for parsing.
    pub fn new(
        kind: RingKind,
        coeff: F,
        param: &str,
        coeff_name: &str,
        symbols: Vec<(String, F::Elem)>,
    ) -> Self {
        RingModel {
            kind,
            frac: RatFuncField::new(coeff, param),
            coeff_name: coeff_name.to_string(),
            symbols,
        }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn frac(&self) -> &RatFuncField<F> {
        &self.frac
    }

    pub fn coeff(&self) -> &F {
        self.frac.base()
    }

    pub fn param(&self) -> &str {
        self.frac.var_name()
    }

    pub fn p(&self) -> u64 {
        self.frac.characteristic()
    }

    pub fn q(&self, e: u32) -> usize {
        self.p().pow(e) as usize
    }

    /// Same ring with the other kind (localize, or forget localization).
    pub fn with_kind(&self, kind: RingKind) -> Self {
        RingModel {
            kind,
            ..self.clone()
        }
    }

    /// e.g. `F_3[y]` or `F_3(y)[x]_(x)`.
    pub fn name(&self) -> String {
        let t = self.param();
        match self.kind {
            RingKind::Poly => format!("{}[{t}]", self.coeff_name),
            RingKind::Local => format!("{}[{t}]_({t})", self.coeff_name),
        }
    }

    pub fn contains(&self, a: &Elem<F>) -> bool {
        match self.kind {
            RingKind::Poly => self.frac.is_poly(a),
            RingKind::Local => !self.coeff().is_zero(&a.den[0]),
        }
    }

    pub fn is_unit(&self, a: &Elem<F>) -> bool {
        match self.kind {
            RingKind::Poly => self.frac.is_poly(a) && a.num.len() == 1,
            RingKind::Local => self.frac.ord_zero(a) == Some(0),
        }
    }

    pub fn divisor_of(&self, a: &Elem<F>) -> Result<QDivisor<F::Elem>> {
        match self.kind {
            RingKind::Poly => divisor::divisor_of(&self.frac, a, &self.name()),
            RingKind::Local => divisor::local_divisor_of(&self.frac, a, &self.name()),
        }
    }

    pub fn zero_divisor(&self) -> QDivisor<F::Elem> {
        QDivisor::zero(&self.name())
    }

    pub fn parse(&self, src: &str) -> Result<Elem<F>> {
        let t = self.frac.var();
        expr::eval_str(&self.frac, src, &|v| {
            if v == self.param() {
                return Some(t.clone());
            }
            self.symbols
                .iter()
                .find(|(name, _)| name == v)
                .map(|(_, c)| self.frac.from_base(c.clone()))
        })
    }

    /// Parse and require membership in the ring.
    pub fn parse_member(&self, src: &str) -> Result<Elem<F>> {
        let a = self.parse(src)?;
        if !self.contains(&a) {
            return Err(Error::NotIntegral(format!("{src} in {}", self.name())));
        }
        Ok(a)
    }

    pub fn format(&self, a: &Elem<F>) -> String {
        self.frac.format(a)
    }

    /// `m * p^e`, the rank of `R^{1/p^e}` over `R`.
    pub fn rank(&self, e: u32) -> usize {
        self.frac.root_rank(e)
    }

    pub fn residue_rank(&self, e: u32) -> usize {
        self.coeff().root_rank(e)
    }

    pub fn tag(&self, idx: usize, e: u32) -> Tag {
        let m = self.residue_rank(e);
        Tag { j: idx % m, i: idx / m }
    }

    pub fn index(&self, tag: Tag, e: u32) -> Result<usize> {
        let m = self.residue_rank(e);
        if tag.j >= m || tag.i >= self.q(e) {
            return Err(Error::BadTag(tag.to_string()));
        }
        Ok(tag.i * m + tag.j)
    }

    pub fn label(&self, idx: usize, e: u32) -> String {
        self.frac.root_label(idx, e)
    }

    /// `u_j t^i`, the `p^e`-th power of basis element `idx`.
    pub fn radicand(&self, idx: usize, e: u32) -> Elem<F> {
        self.frac.root_radicand(idx, e)
    }

    /// Coordinates of `f^{1/p^e}`.
    pub fn decompose(&self, f: &Elem<F>, e: u32) -> RootElement<F> {
        RootElement {
            e,
            coords: self.frac.root_coords(f, e),
        }
    }

    pub fn root_basis(&self, e: u32) -> RootBasis {
        let n = self.rank(e);
        RootBasis {
            e,
            tags: (0..n).map(|idx| self.tag(idx, e)).collect(),
            labels: (0..n).map(|idx| self.label(idx, e)).collect(),
        }
    }

    /// The basis element `idx` as a root element.
    pub fn basis_element(&self, idx: usize, e: u32) -> RootElement<F> {
        let mut coords = vec![self.frac.zero(); self.rank(e)];
        coords[idx] = self.frac.one();
        RootElement { e, coords }
    }

    /// `a^{p^e}` for a root element `a`.
    pub fn root_radicand(&self, a: &RootElement<F>) -> Elem<F> {
        self.frac.root_assemble(&a.coords, a.e)
    }

    pub fn root_mul(&self, a: &RootElement<F>, b: &RootElement<F>) -> Result<RootElement<F>> {
        if a.e != b.e {
            return Err(Error::LevelMismatch { map: a.e, element: b.e });
        }
        let prod = self.frac.mul(&self.root_radicand(a), &self.root_radicand(b));
        Ok(self.decompose(&prod, a.e))
    }

    pub fn root_add(&self, a: &RootElement<F>, b: &RootElement<F>) -> Result<RootElement<F>> {
        if a.e != b.e {
            return Err(Error::LevelMismatch { map: a.e, element: b.e });
        }
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| self.frac.add(x, y))
            .collect();
        Ok(RootElement { e: a.e, coords })
    }

    /// `c * a` for `c` in `K`.
    pub fn root_scale(&self, a: &RootElement<F>, c: &Elem<F>) -> RootElement<F> {
        RootElement {
            e: a.e,
            coords: a.coords.iter().map(|x| self.frac.mul(x, c)).collect(),
        }
    }

    /// The projection onto `t^{(p^e-1)/p^e}` (tag `(1, p^e-1)`).
    pub fn generator_map(&self, e: u32) -> PeMap<F> {
        let top = (self.q(e) - 1) * self.residue_rank(e);
        self.projection(top, e)
    }

    /// The map sending basis element `idx` to 1 and the rest to 0.
    pub fn projection(&self, idx: usize, e: u32) -> PeMap<F> {
        let mut images = vec![self.frac.zero(); self.rank(e)];
        images[idx] = self.frac.one();
        PeMap {
            ring: self.clone(),
            e,
            images,
        }
    }

    pub fn zero_map(&self, e: u32) -> PeMap<F> {
        PeMap {
            ring: self.clone(),
            e,
            images: vec![self.frac.zero(); self.rank(e)],
        }
    }

    pub fn map(&self, e: u32, images: Vec<Elem<F>>) -> Result<PeMap<F>> {
        if e == 0 {
            return Err(Error::LevelMismatch { map: 0, element: 1 });
        }
        if images.len() != self.rank(e) {
            return Err(Error::BadTag(format!(
                "expected {} images, got {}",
                self.rank(e),
                images.len()
            )));
        }
        Ok(PeMap {
            ring: self.clone(),
            e,
            images,
        })
    }
}

impl RingModel<FieldDesc> {
    pub fn over(kind: RingKind, k: &FieldDesc, param: &str) -> Self {
        let mut symbols = Vec::new();
        if let (Some(name), Some(y)) = (k.transcendental_name(), k.transcendental()) {
            symbols.push((name.to_string(), y));
        }
        if let Some(g) = k.generator() {
            symbols.push((k.gf().generator_name().to_string(), g));
        }
        RingModel::new(kind, k.clone(), param, &k.name(), symbols)
    }

    pub fn poly(k: &FieldDesc, param: &str) -> Self {
        Self::over(RingKind::Poly, k, param)
    }

    pub fn local(k: &FieldDesc, param: &str) -> Self {
        Self::over(RingKind::Local, k, param)
    }
}

impl RingModel<AlgExt<FieldDesc>> {
    /// A ring over the residue extension `l = k[w]/(g)`, with the symbols
    /// of `k` embedded and `w` bound to the class of the variable.
    pub fn over_ext(kind: RingKind, l: &AlgExt<FieldDesc>, param: &str) -> Self {
        let k = l.base();
        let mut symbols = Vec::new();
        if let (Some(name), Some(y)) = (k.transcendental_name(), k.transcendental()) {
            symbols.push((name.to_string(), l.embed(&y)));
        }
        if let Some(g) = k.generator() {
            symbols.push((k.gf().generator_name().to_string(), l.embed(&g)));
        }
        let name = if l.degree() > 1 {
            symbols.push((l.name().to_string(), l.generator()));
            format!("{}[{}]", k.name(), l.name())
        } else {
            k.name()
        };
        RingModel::new(kind, l.clone(), param, &name, symbols)
    }
}

/// The ordered basis of `R^{1/p^e}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBasis {
    pub e: u32,
    pub tags: Vec<Tag>,
    pub labels: Vec<String>,
}

/// An element of `K^{1/p^e}` as coordinates in the root basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootElement<F: Field> {
    pub e: u32,
    pub coords: Vec<RatFunc<F::Elem>>,
}

/// A `p^{-e}`-linear map, i.e. an `R`-linear map `R^{1/p^e} -> R` (or its
/// `K`-linear extension), stored by its images on the root basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PeMap<F: RootField> {
    ring: RingModel<F>,
    e: u32,
    images: Vec<Elem<F>>,
}

impl<F: RootField> PeMap<F> {
    pub fn ring(&self) -> &RingModel<F> {
        &self.ring
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn images(&self) -> &[Elem<F>] {
        &self.images
    }

    pub fn image(&self, tag: Tag) -> Result<&Elem<F>> {
        Ok(&self.images[self.ring.index(tag, self.e)?])
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|a| self.ring.frac.is_zero(a))
    }

    /// All images lie in `R`.
    pub fn is_integral(&self) -> bool {
        self.images.iter().all(|a| self.ring.contains(a))
    }

    pub fn apply(&self, xi: &RootElement<F>) -> Result<Elem<F>> {
        if xi.e != self.e {
            return Err(Error::LevelMismatch {
                map: self.e,
                element: xi.e,
            });
        }
        let k = &self.ring.frac;
        let mut acc = k.zero();
        for (c, img) in xi.coords.iter().zip(&self.images) {
            if k.is_zero(c) || k.is_zero(img) {
                continue;
            }
            acc = k.add(&acc, &k.mul(c, img));
        }
        Ok(acc)
    }

    /// `phi(f^{1/p^e})`.
    pub fn eval_radicand(&self, f: &Elem<F>) -> Elem<F> {
        self.apply(&self.ring.decompose(f, self.e))
            .expect("decompose produces the map's level")
    }

    fn same_ring(&self, other: &PeMap<F>) -> Result<()> {
        if self.e != other.e {
            return Err(Error::LevelMismatch {
                map: other.e,
                element: self.e,
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring.name(),
                other.ring.name()
            )));
        }
        Ok(())
    }

    /// The unique `c` in `K` with `self(-) = phi(c^{1/p^e} -)`.
    pub fn cofactor(&self, phi: &PeMap<F>) -> Result<Elem<F>> {
        self.same_ring(phi)?;
        if phi.is_zero() {
            return Err(Error::ZeroMap);
        }
        let k = &self.ring.frac;
        let n = self.images.len();
        let e = self.e;
        let gamma = if self.ring.residue_rank(e) == 1 && *phi == self.ring.generator_map(e) {
            // Under the projection onto t^{(q-1)/q}, the dual of t^{i/q}
            // is t^{(q-1-i)/q}.
            (0..n).map(|s| self.images[n - 1 - s].clone()).collect()
        } else {
            self.cofactor_coords(phi)?
        };
        Ok(k.root_assemble(&gamma, e))
    }

    /// Solve `sum_s gamma_s phi(b_s b_t) = self(b_t)` for all tags `t`.
    pub fn cofactor_coords(&self, phi: &PeMap<F>) -> Result<Vec<Elem<F>>> {
        self.same_ring(phi)?;
        if phi.is_zero() {
            return Err(Error::ZeroMap);
        }
        let k = &self.ring.frac;
        let n = self.images.len();
        let rads: Vec<_> = (0..n).map(|i| self.ring.radicand(i, self.e)).collect();
        let mut m = vec![vec![k.zero(); n]; n];
        for t in 0..n {
            for s in t..n {
                let v = phi.eval_radicand(&k.mul(&rads[s], &rads[t]));
                m[t][s] = v.clone();
                m[s][t] = v;
            }
        }
        linalg::solve(k, &m, &self.images).ok_or_else(|| {
            Error::Inconsistent("cofactor system has no unique solution".into())
        })
    }

    /// The cofactor against the canonical generator.
    pub fn canonical_cofactor(&self) -> Result<Elem<F>> {
        self.cofactor(&self.ring.generator_map(self.e))
    }

    pub fn is_generator(&self) -> Result<bool> {
        Ok(self.ring.is_unit(&self.canonical_cofactor()?))
    }

    /// `Delta = (1/(p^e - 1)) div(c)` for the canonical cofactor `c`.
    pub fn delta(&self) -> Result<QDivisor<F::Elem>> {
        self.delta_against(&self.ring.generator_map(self.e))
    }

    /// `Delta` computed against another generator `phi`.
    pub fn delta_against(&self, phi: &PeMap<F>) -> Result<QDivisor<F::Elem>> {
        if self.is_zero() {
            return Err(Error::ZeroMap);
        }
        let c = self.cofactor(phi)?;
        let d = self.ring.divisor_of(&c)?;
        Ok(d.scale(&level_factor(self.ring.q(self.e))))
    }

    /// `xi -> self(c^{1/p^e} xi)`.
    pub fn twist(&self, c: &Elem<F>) -> Result<PeMap<F>> {
        let k = &self.ring.frac;
        if k.is_zero(c) {
            return Err(Error::ZeroTwist);
        }
        let images = (0..self.images.len())
            .map(|s| self.eval_radicand(&k.mul(c, &self.ring.radicand(s, self.e))))
            .collect();
        Ok(PeMap {
            ring: self.ring.clone(),
            e: self.e,
            images,
        })
    }

    /// `self^m = self o self^{1/p^e} o ... o self^{1/p^{(m-1)e}}` at level `m e`.
    ///
    /// On radicands this is the `m`-fold composite of `f -> self(f^{1/p^e})`.
    pub fn iterate(&self, m: u32) -> Result<PeMap<F>> {
        if m == 0 {
            return Err(Error::LevelMismatch {
                map: self.e,
                element: 0,
            });
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let level = self.e * m;
        let images = (0..self.ring.rank(level))
            .map(|idx| {
                let mut f = self.ring.radicand(idx, level);
                for _ in 0..m {
                    f = self.eval_radicand(&f);
                }
                f
            })
            .collect();
        Ok(PeMap {
            ring: self.ring.clone(),
            e: level,
            images,
        })
    }

    /// `phi(1) = 1`.
    pub fn is_splitting(&self) -> bool {
        self.ring.frac.is_one(&self.images[0])
    }

    /// Same images over another ring model with the same fraction field.
    pub fn rehome(&self, ring: &RingModel<F>) -> Result<PeMap<F>> {
        if ring.frac != self.ring.frac {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring.name(),
                ring.name()
            )));
        }
        Ok(PeMap {
            ring: ring.clone(),
            e: self.e,
            images: self.images.clone(),
        })
    }

    pub fn to_json(&self) -> PeMapJson {
        let images = (0..self.images.len())
            .map(|idx| {
                (
                    self.ring.tag(idx, self.e).to_string(),
                    self.ring.format(&self.images[idx]),
                )
            })
            .collect();
        PeMapJson {
            e: Some(self.e),
            images: Images::Tagged(images),
        }
    }

    /// Text table of images, one `label -> value` per line.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (idx, img) in self.images.iter().enumerate() {
            out.push_str(&format!(
                "{} {} -> {}\n",
                self.ring.tag(idx, self.e),
                self.ring.label(idx, self.e),
                self.ring.format(img)
            ));
        }
        out
    }
}

/// Failure to extend: the first basis element whose image is not integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub element: String,
    pub value: String,
}

/// Outcome of extending a map along a cover.
#[derive(Clone, Debug, PartialEq)]
pub enum Extension<F: RootField> {
    Extends(PeMap<F>),
    Fails(Witness),
}

impl<F: RootField> Extension<F> {
    pub fn map(&self) -> Option<&PeMap<F>> {
        match self {
            Extension::Extends(m) => Some(m),
            Extension::Fails(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Extension::Extends(_) => None,
            Extension::Fails(w) => Some(w),
        }
    }

    pub fn extends(&self) -> bool {
        matches!(self, Extension::Extends(_))
    }
}

/// `1/(q - 1)`.
pub fn level_factor(q: usize) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(q as i64 - 1))
}

/// JSON form of a map: `{"e":1,"images":{"(1,0)":"1",...}}` or with a plain
/// list of images in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeMapJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    pub images: Images,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Images {
    List(Vec<String>),
    /// Missing tags map to zero.
    Tagged(BTreeMap<String, String>),
}

impl PeMapJson {
    pub fn build<F: RootField>(&self, ring: &RingModel<F>) -> Result<PeMap<F>> {
        self.build_at(ring, 1)
    }

    /// Build at the map's own level, or `default_e` when it has none.
    pub fn build_at<F: RootField>(&self, ring: &RingModel<F>, default_e: u32) -> Result<PeMap<F>> {
        let e = self.e.unwrap_or(default_e);
        let images = match &self.images {
            Images::List(xs) => xs
                .iter()
                .map(|s| ring.parse(s))
                .collect::<Result<Vec<_>>>()?,
            Images::Tagged(map) => {
                let mut images = vec![ring.frac.zero(); ring.rank(e)];
                for (tag, s) in map {
                    let idx = ring.index(Tag::parse(tag)?, e)?;
                    images[idx] = ring.parse(s)?;
                }
                images
            }
        };
        ring.map(e, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::rational;
    use crate::divisor::Place;
    use crate::fields::FieldElement;

    fn f3y() -> RingModel<FieldDesc> {
        RingModel::poly(&FieldDesc::finite_prime(3).unwrap(), "y")
    }

    fn map(ring: &RingModel<FieldDesc>, e: u32, imgs: &[&str]) -> PeMap<FieldDesc> {
        let images = imgs.iter().map(|s| ring.parse(s).unwrap()).collect();
        ring.map(e, images).unwrap()
    }

    fn y_div(q: BigRational) -> QDivisor<FieldElement> {
        QDivisor::single(
            "F_3[y]",
            Place::Poly(vec![FieldElement::Finite(0), FieldElement::Finite(1)]),
            q,
        )
    }

    #[test]
    fn bases() {
        let r = f3y();
        assert_eq!(r.root_basis(1).labels, ["1", "y^(1/3)", "y^(2/3)"]);
        let k = FieldDesc::rational_prime(3, "y").unwrap();
        let rp = RingModel::local(&k, "x");
        let b = rp.root_basis(1);
        assert_eq!(b.labels.len(), 9);
        assert_eq!(b.labels[4], "x^(1/3)*y^(1/3)");
        assert_eq!(b.tags[4].to_string(), "(2,1)");
    }

    #[test]
    fn decompose_and_apply() {
        let r = f3y();
        let xi = r.decompose(&r.parse("y^4").unwrap(), 1);
        assert_eq!(xi.coords[1], r.parse("y").unwrap());
        let phi = map(&r, 1, &["1", "y", "y"]);
        assert_eq!(phi.apply(&xi).unwrap(), r.parse("y^2").unwrap());
        let xi = r.decompose(&r.parse("y^3").unwrap(), 1);
        assert_eq!(xi.coords[0], r.parse("y").unwrap());
        let wrong = r.decompose(&r.frac().one(), 2);
        assert!(matches!(phi.apply(&wrong), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn cofactor_examples() {
        let r = f3y();
        let g = r.generator_map(1);
        let psi = map(&r, 1, &["0", "y", "0"]);
        assert_eq!(psi.cofactor(&g).unwrap(), r.parse("y^4").unwrap());
        let psi = map(&r, 1, &["1", "0", "0"]);
        assert_eq!(psi.cofactor(&g).unwrap(), r.parse("y^2").unwrap());
        assert_eq!(g.cofactor(&g).unwrap(), r.frac().one());
        assert_eq!(psi.cofactor(&r.zero_map(1)), Err(Error::ZeroMap));
    }

    #[test]
    fn generators_and_deltas() {
        let r = f3y();
        let g = r.generator_map(1);
        assert!(g.is_generator().unwrap());
        assert!(g.delta().unwrap().is_zero());
        // cofactor 1 + y + y^2 = (y - 1)^2: a unit at (y) only
        let ones = map(&r, 1, &["1", "1", "1"]);
        assert_eq!(ones.canonical_cofactor().unwrap(), r.parse("(y - 1)^2").unwrap());
        assert!(!ones.is_generator().unwrap());
        let local = r.with_kind(RingKind::Local);
        assert!(ones.rehome(&local).unwrap().is_generator().unwrap());
        let psi = map(&r, 1, &["0", "y", "0"]);
        assert!(!psi.is_generator().unwrap());
        assert_eq!(psi.delta().unwrap(), y_div(rational(2, 1)));
        assert_eq!(r.zero_map(1).delta(), Err(Error::ZeroMap));
        let g2 = r.generator_map(2);
        assert_eq!(r.label(8, 2), "y^(8/9)");
        assert!(r.frac().is_one(&g2.images()[8]));
    }

    #[test]
    fn twists() {
        let r = f3y();
        let g = r.generator_map(1);
        assert_eq!(g.twist(&r.frac().one()).unwrap(), g);
        assert_eq!(
            g.twist(&r.parse("y^4").unwrap()).unwrap(),
            map(&r, 1, &["0", "y", "0"])
        );
        let t = g.twist(&r.parse("y").unwrap()).unwrap();
        assert_eq!(t, map(&r, 1, &["0", "1", "0"]));
        assert_eq!(t.delta().unwrap(), y_div(rational(1, 2)));
        assert_eq!(g.twist(&r.frac().zero()), Err(Error::ZeroTwist));
    }

    #[test]
    fn iterates() {
        let r = f3y();
        let g = r.generator_map(1);
        assert_eq!(g.iterate(1).unwrap(), g);
        assert_eq!(g.iterate(2).unwrap(), r.generator_map(2));
        let psi = map(&r, 1, &["0", "1", "0"]);
        let it = psi.iterate(2).unwrap();
        assert_eq!(it.canonical_cofactor().unwrap(), r.parse("y^4").unwrap());
        assert_eq!(it.delta().unwrap(), psi.delta().unwrap());
    }

    #[test]
    fn splittings() {
        let r = f3y();
        assert!(map(&r, 1, &["1", "y", "y"]).is_splitting());
        assert!(!r.generator_map(1).is_splitting());
        let phi = map(&r, 1, &["1", "0", "0"]);
        assert!(phi.is_splitting());
        assert!(!phi.twist(&r.parse("y").unwrap()).unwrap().is_splitting());
    }

    #[test]
    fn general_solver_matches_dual_basis_shortcut() {
        let r = f3y();
        let g = r.generator_map(2);
        let psi = r.generator_map(2).twist(&r.parse("y^5 + 2*y + 1").unwrap()).unwrap();
        let fast = psi.cofactor(&g).unwrap();
        let slow = r.frac().root_assemble(&psi.cofactor_coords(&g).unwrap(), 2);
        assert_eq!(fast, slow);
        assert_eq!(fast, r.parse("y^5 + 2*y + 1").unwrap());
    }

    #[test]
    fn local_model_over_rational_residue_field() {
        let k = FieldDesc::rational_prime(3, "y").unwrap();
        let rp = RingModel::local(&k, "x");
        let g = rp.generator_map(1);
        assert_eq!(rp.label(6, 1), "x^(2/3)");
        assert!(g.is_generator().unwrap());
        // the projection onto x^{2/3} y^{2/3} is another generator
        let h = rp.projection(8, 1);
        assert!(h.is_generator().unwrap());
        let phi = rp.projection(0, 1);
        assert_eq!(phi.cofactor(&h).unwrap(), rp.parse("x^2*y^2").unwrap());
        let phi = rp.projection(3, 1);
        assert_eq!(phi.cofactor(&h).unwrap(), rp.parse("x*y^2").unwrap());
    }

    #[test]
    fn json_round_trip() {
        let r = f3y();
        let j: PeMapJson =
            serde_json::from_str(r#"{"e":1,"images":{"(1,0)":"1","(1,1)":"y","(1,2)":"y"}}"#)
                .unwrap();
        let phi = j.build(&r).unwrap();
        assert_eq!(phi, map(&r, 1, &["1", "y", "y"]));
        assert_eq!(phi.to_json().build(&r).unwrap(), phi);
        let bad: PeMapJson = serde_json::from_str(r#"{"images":{"(1,3)":"1"}}"#).unwrap();
        assert!(matches!(bad.build(&r), Err(Error::BadTag(_))));
    }
}
