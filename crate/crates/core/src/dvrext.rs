//! Tame extensions of discrete valuation rings.
//!
//! `R = k[r]_(r)` sits inside `S = l[s]_(s)` through `r = u s^n`, where `u`
//! is a unit of `S`, `gcd(n, p) = 1` and `l = k[w]/(g)` is a separable
//! extension of residue fields. Maps on `R^{1/p^e}` are extended to
//! `L^{1/p^e}` through the basis
//! `u_j^{1/p^e} u^{i/p^e} s^{(n i mod p^e)/p^e}` of `S^{1/p^e}`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algext::AlgExt;
use crate::divisor::{rational, DivisorTerm, Place, QDivisor};
use crate::error::{Error, Result};
use crate::factor;
use crate::field::{Field, RootField};
use crate::fields::{FieldDesc, FieldElement, FieldSpec};
use crate::linalg;
use crate::pmaps::{Elem, Extension, PeMap, PeMapJson, RingKind, RingModel, Witness};
use crate::poly::PolyRing;

pub type ResidueExt = AlgExt<FieldDesc>;
pub type SElem = Elem<ResidueExt>;

/// Least `e >= 1` with `n | p^e - 1`, and `b = (p^e - 1)/n`.
pub fn minimal_e(p: u32, n: u32) -> Result<(u32, u64)> {
    if n == 0 || n.is_multiple_of(p) {
        return Err(Error::NotTame { n, p });
    }
    let (p, n64) = (p as u64, n as u64);
    let mut e = 1;
    let mut pe = p % n64;
    while pe != 1 % n64 {
        pe = pe * p % n64;
        e += 1;
    }
    Ok((e, (p.pow(e) - 1) / n64))
}

/// One element of the adapted basis of `S^{1/p^e}`.
#[derive(Clone, Debug, PartialEq)]
pub struct NewBasisElement {
    pub j: usize,
    pub i: usize,
    /// `n i mod p^e`.
    pub s_exp: usize,
    /// `floor(n i / p^e)`: `r^{i/p^e} = s^{shift} * (this element)` up to `u_j`.
    pub shift: usize,
    pub label: String,
    pub radicand: SElem,
}

#[derive(Debug)]
struct LevelData {
    basis: Vec<NewBasisElement>,
    /// Row `k`: coordinates of new basis element `k` in the root basis of `S`.
    matrix: Vec<Vec<SElem>>,
    inverse: Vec<Vec<SElem>>,
    det: SElem,
}

#[derive(Clone, Debug)]
pub struct TameExtension {
    k: FieldDesc,
    l: ResidueExt,
    n: u32,
    r_ring: RingModel<FieldDesc>,
    s_ring: RingModel<ResidueExt>,
    u: SElem,
    r_image: SElem,
    cache: Arc<RwLock<HashMap<u32, Arc<LevelData>>>>,
}

/// Coefficients of the residue minimal polynomial: field elements written
/// as strings or as integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Expr(String),
}

/// JSON descriptor of a tame extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<FieldSpec>,
    /// Minimal polynomial of the generator of `l` over `k`, low to high.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_min_poly: Option<Vec<Coeff>>,
    #[serde(default = "default_w")]
    pub l_generator: String,
    pub n: u32,
    #[serde(default = "default_u")]
    pub u: String,
    #[serde(default = "default_r")]
    pub base_var: String,
    #[serde(default = "default_s")]
    pub cover_var: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<PeMapJson>,
}

fn default_w() -> String {
    "w".into()
}
fn default_u() -> String {
    "1".into()
}
fn default_r() -> String {
    "r".into()
}
fn default_s() -> String {
    "s".into()
}

impl ExtensionSpec {
    pub fn build(&self) -> Result<TameExtension> {
        let kspec = self.k.clone().unwrap_or_else(|| FieldSpec::prime(self.p));
        if kspec.p != self.p {
            return Err(Error::InvalidField(format!(
                "k has characteristic {} but p = {}",
                kspec.p, self.p
            )));
        }
        let k = FieldDesc::from_spec(&kspec)?;
        let min_poly = match &self.l_min_poly {
            None => None,
            Some(cs) => {
                let ring = RingModel::poly(&k, &self.base_var);
                let coeffs = cs
                    .iter()
                    .map(|c| match c {
                        Coeff::Int(v) => Ok(k.from_i64(*v)),
                        Coeff::Expr(s) => {
                            let a = ring.parse(s)?;
                            if a.num.len() > 1 || a.den.len() > 1 {
                                return Err(Error::InvalidField(format!(
                                    "coefficient {s} is not an element of {}",
                                    k.name()
                                )));
                            }
                            Ok(a.num.first().cloned().unwrap_or_else(|| k.zero()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(coeffs)
            }
        };
        TameExtension::new(
            &k,
            min_poly,
            &self.l_generator,
            self.n,
            &self.u,
            &self.base_var,
            &self.cover_var,
        )
    }
}

impl TameExtension {
    pub fn new(
        k: &FieldDesc,
        l_min_poly: Option<Vec<FieldElement>>,
        l_generator: &str,
        n: u32,
        u: &str,
        base_var: &str,
        cover_var: &str,
    ) -> Result<Self> {
        let p = k.p();
        if n == 0 || n.is_multiple_of(p) {
            return Err(Error::NotTame { n, p });
        }
        let l = match l_min_poly {
            None => AlgExt::trivial(k.clone(), l_generator),
            Some(g) => {
                let l = AlgExt::new(k.clone(), g, l_generator)?;
                if l.degree() > 1 {
                    check_irreducible(k, l.modulus())?;
                }
                l
            }
        };
        let r_ring = RingModel::local(k, base_var);
        let s_ring = RingModel::over_ext(RingKind::Local, &l, cover_var);
        let u = s_ring.parse(u)?;
        if !s_ring.is_unit(&u) {
            return Err(Error::NotUnit(s_ring.format(&u)));
        }
        let sf = s_ring.frac();
        let r_image = sf.mul(&u, &sf.var_pow(n as i64));
        Ok(TameExtension {
            k: k.clone(),
            l,
            n,
            r_ring,
            s_ring,
            u,
            r_image,
            cache: Arc::new(RwLock::new(HashMap::new())),
        })
    }

    pub fn k(&self) -> &FieldDesc {
        &self.k
    }

    pub fn l(&self) -> &ResidueExt {
        &self.l
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.k.p()
    }

    pub fn u(&self) -> &SElem {
        &self.u
    }

    pub fn base(&self) -> &RingModel<FieldDesc> {
        &self.r_ring
    }

    pub fn cover(&self) -> &RingModel<ResidueExt> {
        &self.s_ring
    }

    pub fn minimal_e(&self) -> (u32, u64) {
        minimal_e(self.p(), self.n).expect("tameness checked at construction")
    }

    /// The field embedding `K -> L`, `r -> u s^n`.
    pub fn embed(&self, f: &Elem<FieldDesc>) -> SElem {
        let sf = self.s_ring.frac();
        self.r_ring
            .frac()
            .map_into(f, sf, &|c| sf.from_base(self.l.embed(c)), &self.r_image)
            .expect("field embeddings are injective")
    }

    /// `Ram = (n - 1) (s)`.
    pub fn ramification_divisor(&self) -> QDivisor<Vec<FieldElement>> {
        QDivisor::single(
            &self.s_ring.name(),
            Place::Local,
            rational(self.n as i64 - 1, 1),
        )
    }

    /// `(r) -> n (s)`.
    pub fn pullback(
        &self,
        d: &QDivisor<FieldElement>,
    ) -> Result<QDivisor<Vec<FieldElement>>> {
        if d.model() != self.r_ring.name() {
            return Err(Error::MixedModels {
                left: d.model().to_string(),
                right: self.r_ring.name(),
            });
        }
        let mut out = QDivisor::zero(&self.s_ring.name());
        let n = rational(self.n as i64, 1);
        for (place, c) in d.terms() {
            if *place != Place::Local {
                return Err(Error::ForeignSupport {
                    model: self.r_ring.name(),
                });
            }
            out.add_term(Place::Local, c * &n);
        }
        Ok(out)
    }

    /// The map on `R` sending `r^{b/p^e}` to 1 and the other basis elements
    /// to 0, where `b = (p^e - 1)/n`.
    pub fn lifted_generator(&self, e: u32) -> Result<PeMap<FieldDesc>> {
        let q = self.r_ring.q(e) as u64;
        if !(q - 1).is_multiple_of(self.n as u64) {
            return Err(Error::LevelNotDivisible {
                n: self.n,
                p: self.p(),
                e,
                minimal: self.minimal_e().0,
            });
        }
        let b = ((q - 1) / self.n as u64) as usize;
        let idx = b * self.r_ring.residue_rank(e);
        Ok(self.r_ring.projection(idx, e))
    }

    fn level(&self, e: u32) -> Result<Arc<LevelData>> {
        if let Some(d) = self.cache.read().expect("cache lock").get(&e) {
            return Ok(d.clone());
        }
        let data = Arc::new(self.compute_level(e)?);
        self.cache
            .write()
            .expect("cache lock")
            .insert(e, data.clone());
        Ok(data)
    }

    fn compute_level(&self, e: u32) -> Result<LevelData> {
        let sf = self.s_ring.frac();
        let q = self.s_ring.q(e);
        let m = self.s_ring.residue_rank(e);
        let n = self.n as usize;
        let s = self.s_ring.param();
        let u_is_one = sf.is_one(&self.u);
        let mut basis = Vec::with_capacity(m * q);
        for i in 0..q {
            for j in 0..m {
                let s_exp = n * i % q;
                let shift = n * i / q;
                let mut parts = Vec::new();
                let uj = self.k.root_label(j, e);
                if uj != "1" {
                    parts.push(uj);
                }
                if i > 0 && !u_is_one {
                    parts.push(format!("u^({i}/{q})"));
                }
                if s_exp > 0 {
                    parts.push(format!("{s}^({s_exp}/{q})"));
                }
                let label = if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                };
                let radicand = sf.mul(
                    &sf.mul(
                        &sf.from_base(self.l.root_radicand(j, e)),
                        &sf.pow(&self.u, i as u64),
                    ),
                    &sf.var_pow(s_exp as i64),
                );
                basis.push(NewBasisElement {
                    j,
                    i,
                    s_exp,
                    shift,
                    label,
                    radicand,
                });
            }
        }
        let matrix: Vec<Vec<SElem>> = basis
            .iter()
            .map(|b| self.s_ring.decompose(&b.radicand, e).coords)
            .collect();
        let det = linalg::determinant(sf, &matrix);
        let inverse = linalg::inverse(sf, &matrix)
            .ok_or_else(|| Error::Inconsistent("adapted basis is singular".into()))?;
        Ok(LevelData {
            basis,
            matrix,
            inverse,
            det,
        })
    }

    /// The adapted basis of `S^{1/p^e}`, ordered like the root basis of `R`.
    pub fn new_basis(&self, e: u32) -> Result<Vec<NewBasisElement>> {
        Ok(self.level(e)?.basis.clone())
    }

    /// Coordinates of the adapted basis in the root basis of `S`.
    pub fn new_basis_matrix(&self, e: u32) -> Result<Vec<Vec<SElem>>> {
        Ok(self.level(e)?.matrix.clone())
    }

    pub fn new_basis_determinant(&self, e: u32) -> Result<SElem> {
        Ok(self.level(e)?.det.clone())
    }

    /// Extend `psi` to `L^{1/p^e}` and test whether it maps `S^{1/p^e}`
    /// into `S`.
    pub fn extend_map(&self, psi: &PeMap<FieldDesc>) -> Result<Extension<ResidueExt>> {
        if psi.ring() != &self.r_ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                psi.ring().name(),
                self.r_ring.name()
            )));
        }
        let e = psi.e();
        if psi.is_zero() {
            return Ok(Extension::Extends(self.s_ring.zero_map(e)));
        }
        let data = self.level(e)?;
        let sf = self.s_ring.frac();
        let mut values = Vec::with_capacity(data.basis.len());
        for (idx, b) in data.basis.iter().enumerate() {
            // r^{i/q} u_j^{1/q} = s^{shift} * b
            let v = sf.mul(
                &self.embed(&psi.images()[idx]),
                &sf.var_pow(-(b.shift as i64)),
            );
            if !self.s_ring.contains(&v) {
                return Ok(Extension::Fails(Witness {
                    element: b.label.clone(),
                    value: self.s_ring.format(&v),
                }));
            }
            values.push(v);
        }
        let images = linalg::mat_vec(sf, &data.inverse, &values);
        debug_assert!(images.iter().all(|a| self.s_ring.contains(a)));
        Ok(Extension::Extends(self.s_ring.map(e, images)?))
    }

    /// Decide extension by `pi^* Delta_psi >= Ram` and cross-check it.
    pub fn extends_criterion(&self, psi: &PeMap<FieldDesc>) -> Result<CriterionReport> {
        let ram = self.ramification_divisor();
        let extension = self.extend_map(psi)?;
        if psi.is_zero() {
            return Ok(CriterionReport {
                extends: true,
                map_extends: true,
                delta_psi: None,
                pullback: None,
                ram,
                delta_bar: None,
                delta_extension: None,
                iterate_check: None,
                extension,
            });
        }
        let e = psi.e();
        let delta_psi = psi.delta()?;
        let pullback = self.pullback(&delta_psi)?;
        let extends = pullback.geq(&ram)?;
        let (delta_bar, delta_extension) = match (&extension, extends) {
            (Extension::Extends(bar), true) => {
                (Some(pullback.sub(&ram)?), Some(bar.delta()?))
            }
            (_, true) => (Some(pullback.sub(&ram)?), None),
            _ => (None, None),
        };
        let q = self.r_ring.q(e) as u64;
        let iterate_check = if !(q - 1).is_multiple_of(self.n as u64) {
            let ord = self.minimal_e().0;
            let m = ord / ord.gcd(&e);
            let it = psi.iterate(m)?;
            let divisor_extends = self.pullback(&it.delta()?)?.geq(&ram)?;
            let map_extends = self.extend_map(&it)?.extends();
            Some(IterateCheck {
                m,
                divisor_extends,
                map_extends,
            })
        } else {
            None
        };
        Ok(CriterionReport {
            extends,
            map_extends: extension.extends(),
            delta_psi: Some(delta_psi),
            pullback: Some(pullback),
            ram,
            delta_bar,
            delta_extension,
            iterate_check,
            extension,
        })
    }

    /// JSON form of a divisor on `S`.
    pub fn s_divisor_json(&self, d: &QDivisor<Vec<FieldElement>>) -> Result<Vec<DivisorTerm>> {
        d.to_json(&self.l)
    }

    pub fn format_s_divisor(&self, d: &QDivisor<Vec<FieldElement>>) -> String {
        d.format(&self.l, self.s_ring.param())
    }

    pub fn format_r_divisor(&self, d: &QDivisor<FieldElement>) -> String {
        d.format(&self.k, self.r_ring.param())
    }
}

fn check_irreducible(k: &FieldDesc, g: &[FieldElement]) -> Result<()> {
    let FieldDesc::Finite(gf) = k else {
        return Err(Error::Unsupported(format!(
            "residue extensions of {} (irreducibility cannot be checked)",
            k.name()
        )));
    };
    let raw: Vec<u32> = g
        .iter()
        .map(|c| match c {
            FieldElement::Finite(x) => *x,
            FieldElement::Rational(_) => unreachable!("finite field element"),
        })
        .collect();
    let ring = PolyRing::new(gf.clone());
    let factors = factor::factor(&ring, &raw);
    if factors.len() != 1 || factors[0].1 != 1 {
        return Err(Error::ReducibleModulus { p: k.p() });
    }
    Ok(())
}

/// The `psi^m` cross-check used when `n` does not divide `p^e - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterateCheck {
    pub m: u32,
    pub divisor_extends: bool,
    pub map_extends: bool,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    /// `pi^* Delta_psi >= Ram`.
    pub extends: bool,
    /// Whether [`TameExtension::extend_map`] succeeded.
    pub map_extends: bool,
    pub delta_psi: Option<QDivisor<FieldElement>>,
    pub pullback: Option<QDivisor<Vec<FieldElement>>>,
    pub ram: QDivisor<Vec<FieldElement>>,
    /// `pi^* Delta_psi - Ram`, when the criterion says the map extends.
    pub delta_bar: Option<QDivisor<Vec<FieldElement>>>,
    /// `Delta` of the extended map, computed directly on `S`.
    pub delta_extension: Option<QDivisor<Vec<FieldElement>>>,
    pub iterate_check: Option<IterateCheck>,
    pub extension: Extension<ResidueExt>,
}

impl CriterionReport {
    /// All the independent routes agree.
    pub fn consistent(&self) -> bool {
        self.extends == self.map_extends
            && self.delta_bar == self.delta_extension
            && self
                .iterate_check
                .as_ref()
                .is_none_or(|c| c.divisor_extends == self.extends && c.map_extends == self.extends)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(p: u32, n: u32) -> TameExtension {
        let k = FieldDesc::finite_prime(p).unwrap();
        TameExtension::new(&k, None, "w", n, "1", "y", "x").unwrap()
    }

    fn psi(t: &TameExtension, e: u32, imgs: &[&str]) -> PeMap<FieldDesc> {
        let images = imgs.iter().map(|s| t.base().parse(s).unwrap()).collect();
        t.base().map(e, images).unwrap()
    }

    #[test]
    fn minimal_levels() {
        assert_eq!(minimal_e(3, 4).unwrap(), (2, 2));
        assert_eq!(minimal_e(3, 2).unwrap(), (1, 1));
        assert_eq!(minimal_e(3, 1).unwrap(), (1, 2));
        assert_eq!(minimal_e(5, 3).unwrap(), (2, 8));
        assert_eq!(minimal_e(3, 6), Err(Error::NotTame { n: 6, p: 3 }));
    }

    #[test]
    fn ramification_and_pullback() {
        let t = ext(3, 4);
        assert_eq!(t.format_s_divisor(&t.ramification_divisor()), "3*(x)");
        assert!(ext(3, 1).ramification_divisor().is_zero());
        assert_eq!(t.format_s_divisor(&ext(5, 3).ramification_divisor()), "2*(x)");
        let d = QDivisor::single(&t.base().name(), Place::Local, rational(3, 4));
        assert_eq!(t.format_s_divisor(&t.pullback(&d).unwrap()), "3*(x)");
        let foreign = QDivisor::single(
            &t.base().name(),
            Place::Poly(vec![FieldElement::Finite(1), FieldElement::Finite(1)]),
            rational(1, 1),
        );
        assert!(matches!(t.pullback(&foreign), Err(Error::ForeignSupport { .. })));
    }

    #[test]
    fn adapted_basis_exponents() {
        let t = ext(3, 4);
        let exps: Vec<usize> = t.new_basis(2).unwrap().iter().map(|b| b.s_exp).collect();
        assert_eq!(exps, [0, 4, 8, 3, 7, 2, 6, 1, 5]);
        let exps: Vec<usize> = ext(3, 2).new_basis(1).unwrap().iter().map(|b| b.s_exp).collect();
        assert_eq!(exps, [0, 2, 1]);
        let det = t.new_basis_determinant(2).unwrap();
        assert!(t.cover().is_unit(&det));
    }

    #[test]
    fn lifted_generator_at_p3_n4() {
        let t = ext(3, 4);
        let phi = t.lifted_generator(2).unwrap();
        assert_eq!(t.base().label(2, 2), "y^(2/9)");
        assert!(t.base().frac().is_one(&phi.images()[2]));
        let d = phi.delta().unwrap();
        assert_eq!(t.format_r_divisor(&d), "3/4*(y)");
        assert_eq!(t.pullback(&d).unwrap(), t.ramification_divisor());
        let bar = t.extend_map(&phi).unwrap();
        assert!(bar.map().unwrap().is_generator().unwrap());
        assert!(matches!(
            t.lifted_generator(1),
            Err(Error::LevelNotDivisible { minimal: 2, .. })
        ));
    }

    #[test]
    fn example_maps_on_the_quartic_cover() {
        let t = ext(3, 4);
        match t.extend_map(&psi(&t, 1, &["1", "1", "0"])).unwrap() {
            Extension::Fails(w) => {
                assert_eq!(w.element, "x^(1/3)");
                assert_eq!(w.value, "1/x");
            }
            Extension::Extends(_) => panic!("should not extend"),
        }
        let bar = t.extend_map(&psi(&t, 1, &["1", "y", "0"])).unwrap();
        let bar = bar.map().unwrap();
        // x^{1/3} is the natural basis element (1,1)
        assert_eq!(bar.images()[1], t.cover().parse("x^3").unwrap());

        let rep = t.extends_criterion(&psi(&t, 1, &["0", "y", "0"])).unwrap();
        assert!(rep.extends && rep.consistent());
        assert_eq!(t.format_s_divisor(rep.delta_bar.as_ref().unwrap()), "5*(x)");
        let rep = t.extends_criterion(&psi(&t, 1, &["0", "1", "0"])).unwrap();
        assert!(!rep.extends && rep.consistent());
        let rep = t.extends_criterion(&t.lifted_generator(2).unwrap()).unwrap();
        assert!(rep.extends && rep.consistent());
        assert!(rep.delta_bar.unwrap().is_zero());
    }

    #[test]
    fn nontrivial_unit_and_residue_extension() {
        let k = FieldDesc::finite_prime(3).unwrap();
        let g = vec![k.one(), k.zero(), k.one()];
        let t = TameExtension::new(&k, Some(g), "w", 2, "1 + w*s", "r", "s").unwrap();
        let det = t.new_basis_determinant(1).unwrap();
        assert!(t.cover().is_unit(&det));
        let phi = t.lifted_generator(1).unwrap();
        let rep = t.extends_criterion(&phi).unwrap();
        assert!(rep.extends && rep.consistent());
        assert!(rep.extension.map().unwrap().is_generator().unwrap());
        assert!(matches!(
            TameExtension::new(&k, None, "w", 2, "s", "r", "s"),
            Err(Error::NotUnit(_))
        ));
    }
}
