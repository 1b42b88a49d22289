//! The wildly ramified extension `F_3[x,y] -> F_3[x,y,z]/(z^3 - x z - y^2)`
//! localized at `(x)`.
//!
//! `L = K[z]/(z^3 - x z - y^2)` with `K = F_3(y)(x)`. Elements of
//! `L^{1/3}` are written in the basis `x^{i/3} z^{j/3}`; the generic
//! extension of `phi` is computed through the basis `x^{i/3} y^{j/3}` of
//! `K^{1/3}`, which also spans `L^{1/3}` over `L`.

use crate::algext::AlgExt;
use crate::error::{Error, Result};
use crate::field::{Field, RootField};
use crate::fields::{FieldDesc, FieldElement};
use crate::linalg;
use crate::pmaps::{Elem, PeMap, RingModel};
use crate::poly::{Poly, PolyRing};
use crate::ratfunc::RatFuncField;

pub type KField = RatFuncField<FieldDesc>;
pub type LField = AlgExt<KField>;
/// An element of `L`, as coefficients of `1, z, z^2` over `K`.
pub type WildBaseElement = Poly<Elem<FieldDesc>>;

/// Names of the six Table 1 arguments, `x^{i/3} z^{j/3}` with `j >= 1`.
pub const TABLE_ROWS: [&str; 6] = [
    "z^(1/3)",
    "x^(1/3)*z^(1/3)",
    "x^(2/3)*z^(1/3)",
    "z^(2/3)",
    "x^(1/3)*z^(2/3)",
    "x^(2/3)*z^(2/3)",
];

/// `(i, j)` for each Table 1 row, the radicand being `x^i z^j`.
const TABLE_EXPONENTS: [(usize, usize); 6] = [(0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2)];

/// An element of `L^{1/3}` in the basis `x^{i/3} z^{j/3}`, index `3 i + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildRootElement {
    pub coords: Vec<WildBaseElement>,
}

#[derive(Clone, Debug)]
pub struct WildCase {
    k: FieldDesc,
    kf: KField,
    l: LField,
    rp: RingModel<FieldDesc>,
    /// Row `t` holds the coordinates of `(x^i z^j)^{1/3}`, `t = 3 i + j`,
    /// in the basis `x^{i/3} y^{j/3}`.
    to_k_basis: Vec<Vec<WildBaseElement>>,
    from_k_basis: Vec<Vec<WildBaseElement>>,
}

/// Outcome of the two extension tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildVerdict {
    pub extends: bool,
    pub table_integral: bool,
}

impl WildCase {
    pub fn new() -> Result<Self> {
        let k = FieldDesc::rational_prime(3, "y")?;
        let rp = RingModel::local(&k, "x");
        let kf = rp.frac().clone();
        let y = kf.from_base(k.transcendental().expect("F_3(y)"));
        let x = kf.var();
        // z^3 - x z - y^2
        let modulus = vec![
            kf.neg(&kf.mul(&y, &y)),
            kf.neg(&x),
            kf.zero(),
            kf.one(),
        ];
        let l = AlgExt::new(kf.clone(), modulus, "z")?;
        let mut to_k_basis = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                let rad = l.mul(&l.embed(&kf.var_pow(i)), &l.pow(&l.generator(), j));
                to_k_basis.push(l.root_coords(&rad, 1));
            }
        }
        let transpose: Vec<Vec<_>> = (0..9)
            .map(|r| (0..9).map(|c| to_k_basis[c][r].clone()).collect())
            .collect();
        let from_k_basis = linalg::inverse(&l, &transpose)
            .ok_or_else(|| Error::Inconsistent("x^{i/3} z^{j/3} is not a basis".into()))?;
        Ok(WildCase {
            k,
            kf,
            l,
            rp,
            to_k_basis,
            from_k_basis,
        })
    }

    /// `R_p = F_3(y)[x]_(x)`, with root basis `x^{i/3} y^{j/3}`.
    pub fn base(&self) -> &RingModel<FieldDesc> {
        &self.rp
    }

    pub fn l(&self) -> &LField {
        &self.l
    }

    pub fn k(&self) -> &FieldDesc {
        &self.k
    }

    /// Parse an element of `L` in `x`, `y`, `z`.
    pub fn parse_l(&self, src: &str) -> Result<WildBaseElement> {
        let y = self.kf.from_base(self.k.transcendental().expect("F_3(y)"));
        crate::expr::eval_str(&self.l, src, &|v| match v {
            "x" => Some(self.l.embed(&self.kf.var())),
            "y" => Some(self.l.embed(&y)),
            "z" => Some(self.l.generator()),
            _ => None,
        })
    }

    pub fn format_l(&self, a: &WildBaseElement) -> String {
        self.l.format(a)
    }

    /// The basis element `x^{i/3} z^{j/3}`.
    pub fn basis_element(&self, i: usize, j: usize) -> WildRootElement {
        let mut coords = vec![self.l.zero(); 9];
        coords[3 * i + j] = self.l.one();
        WildRootElement { coords }
    }

    /// `c` viewed in `L^{1/3}` (coefficient of the basis element 1).
    pub fn scalar(&self, c: WildBaseElement) -> WildRootElement {
        let mut coords = vec![self.l.zero(); 9];
        coords[0] = c;
        WildRootElement { coords }
    }

    /// The cube of `a`, an element of `L`.
    pub fn cube(&self, a: &WildRootElement) -> WildBaseElement {
        let mut acc = self.l.zero();
        for (t, c) in a.coords.iter().enumerate() {
            if self.l.is_zero(c) {
                continue;
            }
            let (i, j) = (t / 3, t % 3);
            let rad = self.l.mul(&self.l.embed(&self.kf.var_pow(i as i64)), &self.l.pow(&self.l.generator(), j as u64));
            acc = self.l.add(&acc, &self.l.mul(&self.l.frobenius(c, 1), &rad));
        }
        acc
    }

    /// The cube root of `a` in the basis `x^{i/3} z^{j/3}`.
    pub fn cube_root(&self, a: &WildBaseElement) -> WildRootElement {
        let lambda = self.l.root_coords(a, 1);
        WildRootElement {
            coords: linalg::mat_vec(&self.l, &self.from_k_basis, &lambda),
        }
    }

    pub fn add(&self, a: &WildRootElement, b: &WildRootElement) -> WildRootElement {
        WildRootElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| self.l.add(x, y)).collect(),
        }
    }

    pub fn neg(&self, a: &WildRootElement) -> WildRootElement {
        WildRootElement {
            coords: a.coords.iter().map(|x| self.l.neg(x)).collect(),
        }
    }

    /// Product in `L^{1/3}`, re-expanded in the basis `x^{i/3} z^{j/3}`.
    pub fn multiply(&self, a: &WildRootElement, b: &WildRootElement) -> WildRootElement {
        self.cube_root(&self.l.mul(&self.cube(a), &self.cube(b)))
    }

    /// Coordinates of `a` in the basis `x^{i/3} y^{j/3}` over `L`.
    pub fn k_basis_coords(&self, a: &WildRootElement) -> Vec<WildBaseElement> {
        let mut out = vec![self.l.zero(); 9];
        for (t, c) in a.coords.iter().enumerate() {
            if self.l.is_zero(c) {
                continue;
            }
            for (idx, v) in self.to_k_basis[t].iter().enumerate() {
                out[idx] = self.l.add(&out[idx], &self.l.mul(c, v));
            }
        }
        out
    }

    fn check_map(&self, phi: &PeMap<FieldDesc>) -> Result<()> {
        if phi.ring() != &self.rp || phi.e() != 1 {
            return Err(Error::RingMismatch(format!(
                "expected a map on {} at e = 1",
                self.rp.name()
            )));
        }
        Ok(())
    }

    /// The generic extension `phi_bar` evaluated on `a`.
    pub fn extend_apply(&self, phi: &PeMap<FieldDesc>, a: &WildRootElement) -> Result<WildBaseElement> {
        self.check_map(phi)?;
        let lambda = self.k_basis_coords(a);
        let mut acc = self.l.zero();
        for (lam, img) in lambda.iter().zip(phi.images()) {
            if self.l.is_zero(lam) || self.kf.is_zero(img) {
                continue;
            }
            acc = self.l.add(&acc, &self.l.mul(lam, &self.l.embed(img)));
        }
        Ok(acc)
    }

    /// The six values `phi_bar(x^{i/3} z^{j/3})`, `j >= 1`, from first principles.
    pub fn table1_formulae(&self, phi: &PeMap<FieldDesc>) -> Result<Vec<WildBaseElement>> {
        TABLE_EXPONENTS
            .iter()
            .map(|&(i, j)| self.extend_apply(phi, &self.basis_element(i, j)))
            .collect()
    }

    /// The coefficient of each image `phi(x^{i/3} y^{j/3})` in each Table 1
    /// row: row `r`, column `3 i + j`. Every row is `L`-linear in the images,
    /// so this matrix is the fully symbolic form of the table.
    pub fn table1_coefficients(&self) -> Vec<Vec<WildBaseElement>> {
        TABLE_EXPONENTS
            .iter()
            .map(|&(i, j)| self.k_basis_coords(&self.basis_element(i, j)))
            .collect()
    }

    /// Table 1 as printed, evaluated on `phi`.
    pub fn printed_table1(&self, phi: &PeMap<FieldDesc>) -> Result<Vec<WildBaseElement>> {
        self.check_map(phi)?;
        let f = |i: usize, j: usize| self.l.embed(&phi.images()[3 * i + j]);
        let z = self.l.generator();
        let z2 = self.l.mul(&z, &z);
        let y = self.l.embed(&self.kf.from_base(self.k.transcendental().expect("F_3(y)")));
        let inv_x = self.l.embed(&self.kf.var_pow(-1));
        let l = &self.l;
        let lin = |terms: &[(&WildBaseElement, WildBaseElement)]| {
            terms
                .iter()
                .fold(l.zero(), |acc, (c, v)| l.add(&acc, &l.mul(c, v)))
        };
        let one = l.one();
        let minus = l.neg(&one);
        Ok(vec![
            l.mul(&inv_x, &lin(&[(&z, f(2, 0)), (&minus, f(2, 2))])),
            lin(&[(&z, f(0, 0)), (&minus, f(0, 2))]),
            lin(&[(&z, f(1, 0)), (&minus, f(1, 2))]),
            l.mul(&inv_x, &lin(&[(&z2, f(1, 0)), (&z, f(1, 2)), (&y, f(1, 1))])),
            l.mul(&inv_x, &lin(&[(&z2, f(2, 0)), (&z, f(2, 2)), (&y, f(1, 1))])),
            lin(&[(&z2, f(0, 0)), (&z, f(0, 2)), (&y, f(0, 1))]),
        ])
    }

    /// `a` lies in `S_q = R_p[z]`: every coefficient of `1, z, z^2` has
    /// nonnegative `x`-valuation.
    pub fn is_integral(&self, a: &WildBaseElement) -> bool {
        a.iter()
            .all(|c| self.kf.is_zero(c) || self.kf.ord_zero(c).is_some_and(|v| v >= 0))
    }

    /// `phi(x^{i/3} y^{j/3})` vanishes in `k(p)` for `i in {1, 2}`,
    /// `j in {0, 1, 2}`, cross-checked against integrality of the six
    /// Table 1 values.
    pub fn wild_verdict(&self, phi: &PeMap<FieldDesc>) -> Result<WildVerdict> {
        self.check_map(phi)?;
        let extends = (1..3).all(|i| {
            (0..3).all(|j| {
                let v = &phi.images()[3 * i + j];
                self.kf.is_zero(v) || self.kf.ord_zero(v).is_some_and(|o| o >= 1)
            })
        });
        let table_integral = self
            .table1_formulae(phi)?
            .iter()
            .all(|v| self.is_integral(v));
        Ok(WildVerdict {
            extends,
            table_integral,
        })
    }

    pub fn wild_extends(&self, phi: &PeMap<FieldDesc>) -> Result<bool> {
        if !phi.is_integral() {
            return Err(Error::NotIntegral(format!("images of phi in {}", self.rp.name())));
        }
        let v = self.wild_verdict(phi)?;
        if v.extends != v.table_integral {
            return Err(Error::Inconsistent(
                "residue conditions and Table 1 integrality disagree".into(),
            ));
        }
        Ok(v.extends)
    }

    /// The generator sending `x^{2/3} y^{2/3}` to 1.
    pub fn generator(&self) -> PeMap<FieldDesc> {
        self.rp.projection(8, 1)
    }

    /// The cofactor of `phi` against [`WildCase::generator`].
    pub fn cofactor(&self, phi: &PeMap<FieldDesc>) -> Result<Elem<FieldDesc>> {
        self.check_map(phi)?;
        phi.cofactor(&self.generator())
    }

    /// `ord_x(Delta_phi)`.
    pub fn delta_order(&self, phi: &PeMap<FieldDesc>) -> Result<num_rational::BigRational> {
        self.check_map(phi)?;
        let d = phi.delta_against(&self.generator())?;
        Ok(d.coeff(&crate::divisor::Place::Local))
    }

    /// `ord_{R_p}(Delta_phi) >= 1`.
    pub fn wild_delta_criterion(&self, phi: &PeMap<FieldDesc>) -> Result<bool> {
        Ok(self.delta_order(phi)? >= crate::divisor::rational(1, 1))
    }

    /// The reduction of `z^3 - x z - y^2` at `x = 0`, over `F_3(y)`.
    pub fn residue_modulus(&self) -> Poly<FieldElement> {
        self.l
            .modulus()
            .iter()
            .map(|c| {
                
                self
                    .kf
                    .map_into(c, &self.k, &|a| a.clone(), &self.k.zero())
                    .expect("coefficients are regular at x = 0")
            })
            .collect()
    }

    /// Coordinates of `1, z, z^2` in `k(q) = F_3(y)[z]/(z^3 - y^2)`; the
    /// residue extension is purely inseparable, so it is handled as a
    /// quotient ring rather than a field.
    pub fn residue_images(&self) -> Vec<Vec<FieldElement>> {
        let ring = PolyRing::new(self.k.clone());
        let m = self.residue_modulus();
        (0..3)
            .map(|j| {
                let r = ring.rem(&ring.monomial(self.k.one(), j), &m);
                let mut v = r;
                v.resize(3, self.k.zero());
                v
            })
            .collect()
    }
}
