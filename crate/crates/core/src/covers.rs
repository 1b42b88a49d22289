//! Kummer covers `F_q[y] -> F_q[x]`, `y = x^n`, of the affine line.

use serde::{Deserialize, Serialize};

use crate::divisor::{rational, DivisorTerm, Place, QDivisor};
use crate::dvrext::TameExtension;
use crate::error::{Error, Result};
use crate::factor;
use crate::field::Field;
use crate::fields::{FieldDesc, FieldElement, FieldSpec};
use crate::pmaps::{Elem, Extension, PeMap, PeMapJson, RingModel, Witness};
use crate::poly::{Poly, PolyRing};

#[derive(Clone, Debug)]
pub struct KummerCover {
    k: FieldDesc,
    n: u32,
    base: RingModel<FieldDesc>,
    cover: RingModel<FieldDesc>,
    local: TameExtension,
}

/// A place of `F_q[y]` and the places of `F_q[x]` above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub base: Poly<FieldElement>,
    pub above: Vec<(Poly<FieldElement>, u32)>,
}

/// Cover descriptor: `{"p":3,"k_deg":1,"n":4,"e":1,"map":{"images":[...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub k_deg: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    pub n: u32,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default = "default_y")]
    pub base_var: String,
    #[serde(default = "default_x")]
    pub cover_var: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<PeMapJson>,
}

fn one() -> u32 {
    1
}
fn default_y() -> String {
    "y".into()
}
fn default_x() -> String {
    "x".into()
}

impl CoverSpec {
    pub fn field(&self) -> Result<FieldDesc> {
        FieldDesc::from_spec(&FieldSpec {
            p: self.p,
            k_deg: self.k_deg,
            modulus: self.modulus.clone(),
            transcendental: Default::default(),
            generator: self.generator.clone(),
        })
    }

    pub fn build(&self) -> Result<KummerCover> {
        KummerCover::new(&self.field()?, self.n, &self.base_var, &self.cover_var)
    }

    /// The map in the descriptor; its `e` defaults to the descriptor's.
    pub fn psi(&self, cover: &KummerCover) -> Result<Option<PeMap<FieldDesc>>> {
        self.map
            .as_ref()
            .map(|m| m.build_at(cover.base(), self.e))
            .transpose()
    }
}

/// Outcome of all routes through the Main Theorem for one map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainTheoremReport {
    pub global_extends: bool,
    pub criterion_extends: bool,
    pub local_extends: bool,
    pub delta_psi: Option<Vec<DivisorTerm>>,
    pub pullback: Option<Vec<DivisorTerm>>,
    pub ram: Vec<DivisorTerm>,
    pub delta_bar: Option<Vec<DivisorTerm>>,
    pub splitting_in: bool,
    pub splitting_out: Option<bool>,
    pub consistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// The same report with divisors already formatted, for text output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTheoremText {
    pub delta_psi: Option<String>,
    pub pullback: Option<String>,
    pub ram: String,
    pub delta_bar: Option<String>,
    pub extension: Option<String>,
}

impl KummerCover {
    pub fn new(k: &FieldDesc, n: u32, base_var: &str, cover_var: &str) -> Result<Self> {
        if !k.is_perfect() {
            return Err(Error::Unsupported(format!(
                "Kummer covers over {}; the coefficient field must be finite",
                k.name()
            )));
        }
        if base_var == cover_var {
            return Err(Error::InvalidField("base and cover variables coincide".into()));
        }
        let local = TameExtension::new(k, None, "w", n, "1", base_var, cover_var)?;
        Ok(KummerCover {
            k: k.clone(),
            n,
            base: RingModel::poly(k, base_var),
            cover: RingModel::poly(k, cover_var),
            local,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> &FieldDesc {
        &self.k
    }

    pub fn base(&self) -> &RingModel<FieldDesc> {
        &self.base
    }

    pub fn cover(&self) -> &RingModel<FieldDesc> {
        &self.cover
    }

    /// The tame extension of local rings at `(x)` over `(y)`.
    pub fn local(&self) -> &TameExtension {
        &self.local
    }

    /// `f(y) -> f(x^n)`.
    pub fn substitute(&self, f: &Elem<FieldDesc>) -> Elem<FieldDesc> {
        let ring = &self.cover.frac().ring;
        let n = self.n as usize;
        self.cover
            .frac()
            .frac(ring.inflate(&f.num, n), ring.inflate(&f.den, n))
            .expect("inflation keeps denominators nonzero")
    }

    /// Fibers over the monic irreducible places of degree at most
    /// `max_degree`, by factoring `g(x^n)`.
    pub fn fibers(&self, max_degree: usize) -> Vec<Fiber> {
        let gf = self.k.gf();
        let ring = PolyRing::new(gf.clone());
        let mut out = Vec::new();
        for d in 1..=max_degree {
            for g in factor::monic_polys(&ring, d) {
                if !factor::is_irreducible_trial(&ring, &g) {
                    continue;
                }
                let lifted = ring.inflate(&g, self.n as usize);
                let above = factor::factor(&ring, &lifted)
                    .into_iter()
                    .map(|(h, m)| (self.lift_poly(&h), m))
                    .collect();
                out.push(Fiber {
                    base: self.lift_poly(&g),
                    above,
                });
            }
        }
        out
    }

    fn lift_poly(&self, g: &[u32]) -> Poly<FieldElement> {
        g.iter().map(|&c| FieldElement::Finite(c)).collect()
    }

    /// Places of `F_q[x]` with ramification index above 1, as
    /// `(place of S, place of R, index)`, among fibers of degree <= 2.
    pub fn ramified_places(&self) -> Vec<(Poly<FieldElement>, Poly<FieldElement>, u32)> {
        let mut out = Vec::new();
        for fiber in self.fibers(2) {
            for (h, m) in &fiber.above {
                if *m > 1 {
                    out.push((h.clone(), fiber.base.clone(), *m));
                }
            }
        }
        out
    }

    /// Extend `psi` from `F_q[y]` to `F_q[x]`.
    ///
    /// `x^{i/q} = x^{-a} (y^t)^{1/q}` with `a >= 0` least such that
    /// `q a = -i (mod n)` and `t = (i + a q)/n`.
    pub fn global_extend(&self, psi: &PeMap<FieldDesc>) -> Result<Extension<FieldDesc>> {
        if psi.ring() != &self.base {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                psi.ring().name(),
                self.base.name()
            )));
        }
        let e = psi.e();
        if psi.is_zero() {
            return Ok(Extension::Extends(self.cover.zero_map(e)));
        }
        let q = self.base.q(e);
        let n = self.n as usize;
        let kx = self.cover.frac();
        let ky = self.base.frac();
        let mut images = Vec::with_capacity(q);
        for i in 0..q {
            let a = (0..n).find(|a| (q * a + i).is_multiple_of(n)).expect("gcd(q, n) = 1");
            let t = (i + a * q) / n;
            let v = psi.eval_radicand(&ky.var_pow(t as i64));
            let value = kx.mul(&kx.var_pow(-(a as i64)), &self.substitute(&v));
            if !self.cover.contains(&value) {
                return Ok(Extension::Fails(Witness {
                    element: self.cover.label(i, e),
                    value: self.cover.format(&value),
                }));
            }
            images.push(value);
        }
        Ok(Extension::Extends(self.cover.map(e, images)?))
    }

    /// `pi^*` on divisors of `F_q[y]`: `(g(y)) -> div(g(x^n))`.
    pub fn pullback(&self, d: &QDivisor<FieldElement>) -> Result<QDivisor<FieldElement>> {
        if d.model() != self.base.name() {
            return Err(Error::MixedModels {
                left: d.model().to_string(),
                right: self.base.name(),
            });
        }
        let mut out = self.cover.zero_divisor();
        let kx = self.cover.frac();
        for (place, c) in d.terms() {
            let Place::Poly(g) = place else {
                return Err(Error::ForeignSupport {
                    model: self.base.name(),
                });
            };
            let lifted = kx.from_poly(kx.ring.inflate(g, self.n as usize));
            out = out.add(&self.cover.divisor_of(&lifted)?.scale(c))?;
        }
        Ok(out)
    }

    /// `Ram = (n - 1) (x)`.
    pub fn ramification_divisor(&self) -> QDivisor<FieldElement> {
        let x = Place::Poly(self.cover.frac().ring.var());
        QDivisor::single(&self.cover.name(), x, rational(self.n as i64 - 1, 1))
    }

    pub fn format_base_divisor(&self, d: &QDivisor<FieldElement>) -> String {
        d.format(&self.k, self.base.param())
    }

    pub fn format_cover_divisor(&self, d: &QDivisor<FieldElement>) -> String {
        d.format(&self.k, self.cover.param())
    }

    /// Run the global extension, the divisor criterion and the local
    /// decision at `(x)` over `(y)`, and compare them.
    pub fn check_main_theorem(
        &self,
        psi: &PeMap<FieldDesc>,
    ) -> Result<(MainTheoremReport, MainTheoremText)> {
        let ram = self.ramification_divisor();
        let extension = self.global_extend(psi)?;
        let local_psi = psi.rehome(self.local.base())?;
        let local = self.local.extends_criterion(&local_psi)?;
        let splitting_in = psi.is_splitting();
        let splitting_out = extension.map().map(|m| m.is_splitting());
        let ram_text = self.format_cover_divisor(&ram);
        let ram_json = ram.to_json(&self.k)?;
        let extension_text = extension.map().map(|m| m.describe());
        if psi.is_zero() {
            let report = MainTheoremReport {
                global_extends: true,
                criterion_extends: true,
                local_extends: local.extends,
                delta_psi: None,
                pullback: None,
                ram: ram_json,
                delta_bar: None,
                splitting_in,
                splitting_out,
                consistent: local.extends && local.consistent(),
                witness: None,
            };
            let text = MainTheoremText {
                delta_psi: None,
                pullback: None,
                ram: ram_text,
                delta_bar: None,
                extension: extension_text,
            };
            return Ok((report, text));
        }
        let delta_psi = psi.delta()?;
        let pullback = self.pullback(&delta_psi)?;
        let criterion_extends = pullback.geq(&ram)?;
        let global_extends = extension.extends();
        let mut consistent = global_extends == criterion_extends
            && global_extends == local.extends
            && local.consistent();
        let mut delta_bar = None;
        if let Some(bar) = extension.map() {
            let expected = pullback.sub(&ram)?;
            let actual = bar.delta()?;
            consistent &= actual == expected && splitting_out == Some(splitting_in);
            delta_bar = Some(actual);
        }
        let report = MainTheoremReport {
            global_extends,
            criterion_extends,
            local_extends: local.extends,
            delta_psi: Some(delta_psi.to_json(&self.k)?),
            pullback: Some(pullback.to_json(&self.k)?),
            ram: ram_json,
            delta_bar: delta_bar.as_ref().map(|d| d.to_json(&self.k)).transpose()?,
            splitting_in,
            splitting_out,
            consistent,
            witness: extension.witness().cloned(),
        };
        let text = MainTheoremText {
            delta_psi: Some(self.format_base_divisor(&delta_psi)),
            pullback: Some(self.format_cover_divisor(&pullback)),
            ram: ram_text,
            delta_bar: delta_bar.as_ref().map(|d| self.format_cover_divisor(d)),
            extension: extension_text,
        };
        Ok((report, text))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(p: u32, n: u32) -> KummerCover {
        KummerCover::new(&FieldDesc::finite_prime(p).unwrap(), n, "y", "x").unwrap()
    }

    fn psi(c: &KummerCover, e: u32, imgs: &[&str]) -> PeMap<FieldDesc> {
        let images = imgs.iter().map(|s| c.base().parse(s).unwrap()).collect();
        c.base().map(e, images).unwrap()
    }

    fn fe(xs: &[u32]) -> Poly<FieldElement> {
        xs.iter().map(|&x| FieldElement::Finite(x)).collect()
    }

    #[test]
    fn ramification() {
        assert_eq!(cover(3, 4).ramified_places(), [(fe(&[0, 1]), fe(&[0, 1]), 4)]);
        assert!(cover(3, 1).ramified_places().is_empty());
        let fibers = cover(3, 2).fibers(1);
        let over_y_minus_1 = fibers.iter().find(|f| f.base == fe(&[2, 1])).unwrap();
        assert_eq!(over_y_minus_1.above, [(fe(&[1, 1]), 1), (fe(&[2, 1]), 1)]);
    }

    #[test]
    fn example_2_1_extensions() {
        let c = cover(3, 4);
        let bar = c.global_extend(&psi(&c, 1, &["1", "y", "y"])).unwrap();
        let bar = bar.map().unwrap();
        assert_eq!(bar.images()[1], c.cover().parse("x^3").unwrap());
        assert_eq!(bar.images()[2], c.cover().parse("x^2").unwrap());
        let fail = c.global_extend(&psi(&c, 1, &["1", "1", "0"])).unwrap();
        let w = fail.witness().unwrap();
        assert_eq!((w.element.as_str(), w.value.as_str()), ("x^(1/3)", "1/x"));
        let c1 = cover(3, 1);
        let phi = psi(&c1, 1, &["y + 1", "2", "y^2"]);
        let bar = c1.global_extend(&phi).unwrap();
        let expected: Vec<_> = ["x + 1", "2", "x^2"]
            .iter()
            .map(|s| c1.cover().parse(s).unwrap())
            .collect();
        assert_eq!(bar.map().unwrap().images(), expected.as_slice());
    }

    #[test]
    fn main_theorem_reports() {
        let c = cover(3, 4);
        let (rep, text) = c.check_main_theorem(&psi(&c, 1, &["0", "y", "0"])).unwrap();
        assert!(rep.global_extends && rep.criterion_extends && rep.local_extends);
        assert!(rep.consistent);
        assert_eq!(text.delta_psi.as_deref(), Some("2*(y)"));
        assert_eq!(text.pullback.as_deref(), Some("8*(x)"));
        assert_eq!(text.delta_bar.as_deref(), Some("5*(x)"));
        let (rep, _) = c.check_main_theorem(&c.base().generator_map(1)).unwrap();
        assert!(!rep.global_extends && !rep.criterion_extends && rep.consistent);
        let json = serde_json::to_string(&rep).unwrap();
        let back: MainTheoremReport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn pullback_of_unramified_places() {
        let c = cover(3, 2);
        let d = c.base().divisor_of(&c.base().parse("y - 1").unwrap()).unwrap();
        assert_eq!(c.format_cover_divisor(&c.pullback(&d).unwrap()), "(x + 1) + (x + 2)");
    }
}
