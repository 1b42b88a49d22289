//! Rational function fields `F(t)` over a coefficient field.
//!
//! Fractions are kept reduced with a monic denominator, so equality is
//! syntactic.

use crate::field::{paren, Field, RootField};
use crate::poly::{Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc<E> {
    pub num: Poly<E>,
    pub den: Poly<E>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatFuncField<F: Field> {
    pub ring: PolyRing<F>,
    pub var: String,
}

impl<F: Field> RatFuncField<F> {
    pub fn new(base: F, var: &str) -> Self {
        RatFuncField {
            ring: PolyRing::new(base),
            var: var.to_string(),
        }
    }

    pub fn base(&self) -> &F {
        &self.ring.field
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    /// Build `num / den`, reducing. `None` if `den = 0`.
    pub fn frac(&self, num: Poly<F::Elem>, den: Poly<F::Elem>) -> Option<RatFunc<F::Elem>> {
        let num = self.ring.trim(num);
        let den = self.ring.trim(den);
        if den.is_empty() {
            return None;
        }
        if num.is_empty() {
            return Some(self.zero());
        }
        if den.len() == 1 {
            let inv = self.base().inv(&den[0]).unwrap();
            return Some(RatFunc {
                num: self.ring.scale(&num, &inv),
                den: self.ring.one(),
            });
        }
        let g = self.ring.gcd(&num, &den);
        let (num, den) = if g.len() > 1 {
            (
                self.ring.div_exact(&num, &g).unwrap(),
                self.ring.div_exact(&den, &g).unwrap(),
            )
        } else {
            (num, den)
        };
        let inv = self.base().inv(self.ring.lead(&den).unwrap()).unwrap();
        Some(RatFunc {
            num: self.ring.scale(&num, &inv),
            den: self.ring.scale(&den, &inv),
        })
    }

    pub fn from_poly(&self, num: Poly<F::Elem>) -> RatFunc<F::Elem> {
        RatFunc {
            num: self.ring.trim(num),
            den: self.ring.one(),
        }
    }

    pub fn from_base(&self, c: F::Elem) -> RatFunc<F::Elem> {
        self.from_poly(vec![c])
    }

    /// The variable `t`.
    pub fn var(&self) -> RatFunc<F::Elem> {
        self.from_poly(self.ring.var())
    }

    /// `t^d` for any integer `d`.
    pub fn var_pow(&self, d: i64) -> RatFunc<F::Elem> {
        let one = self.base().one();
        if d >= 0 {
            self.from_poly(self.ring.monomial(one, d as usize))
        } else {
            RatFunc {
                num: self.ring.one(),
                den: self.ring.monomial(one, (-d) as usize),
            }
        }
    }

    pub fn is_poly(&self, a: &RatFunc<F::Elem>) -> bool {
        a.den.len() == 1
    }

    /// Valuation at `t = 0`; `None` for zero.
    pub fn ord_zero(&self, a: &RatFunc<F::Elem>) -> Option<i64> {
        let n = self.ring.low_order(&a.num)? as i64;
        let d = self.ring.low_order(&a.den).unwrap() as i64;
        Some(n - d)
    }

    /// Valuation at the monic irreducible `g`; `None` for zero.
    pub fn ord_at(&self, a: &RatFunc<F::Elem>, g: &[F::Elem]) -> Option<i64> {
        if a.num.is_empty() {
            return None;
        }
        let count = |f: &[F::Elem]| -> i64 {
            let mut f = f.to_vec();
            let mut c = 0;
            while let Some(q) = self.ring.div_exact(&f, g) {
                f = q;
                c += 1;
            }
            c
        };
        Some(count(&a.num) - count(&a.den))
    }

    /// Image under the field map sending the coefficients through `coeff`
    /// and `t` to `t_val`. `None` if the denominator maps to zero.
    pub fn map_into<G: Field>(
        &self,
        a: &RatFunc<F::Elem>,
        target: &G,
        coeff: &impl Fn(&F::Elem) -> G::Elem,
        t_val: &G::Elem,
    ) -> Option<G::Elem> {
        let n = self.ring.eval_in(&a.num, target, coeff, t_val);
        let d = self.ring.eval_in(&a.den, target, coeff, t_val);
        target.div(&n, &d)
    }
}

impl<F: Field> Field for RatFuncField<F> {
    type Elem = RatFunc<F::Elem>;

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn zero(&self) -> Self::Elem {
        RatFunc {
            num: Vec::new(),
            den: self.ring.one(),
        }
    }

    fn one(&self) -> Self::Elem {
        RatFunc {
            num: self.ring.one(),
            den: self.ring.one(),
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        if a.den == b.den {
            let num = self.ring.add(&a.num, &b.num);
            if a.den.len() == 1 {
                return RatFunc { num, den: a.den.clone() };
            }
            return self.frac(num, a.den.clone()).unwrap();
        }
        let num = self.ring.add(
            &self.ring.mul(&a.num, &b.den),
            &self.ring.mul(&b.num, &a.den),
        );
        let den = self.ring.mul(&a.den, &b.den);
        self.frac(num, den).unwrap()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        if a.den.len() == 1 && b.den.len() == 1 {
            return RatFunc {
                num: self.ring.mul(&a.num, &b.num),
                den: self.ring.one(),
            };
        }
        // cross-cancel before multiplying
        let g1 = self.ring.gcd(&a.num, &b.den);
        let g2 = self.ring.gcd(&b.num, &a.den);
        let an = self.ring.div_exact(&a.num, &g1).unwrap();
        let bd = self.ring.div_exact(&b.den, &g1).unwrap();
        let bn = self.ring.div_exact(&b.num, &g2).unwrap();
        let ad = self.ring.div_exact(&a.den, &g2).unwrap();
        let num = self.ring.mul(&an, &bn);
        let den = self.ring.mul(&ad, &bd);
        let inv = self.base().inv(self.ring.lead(&den).unwrap()).unwrap();
        RatFunc {
            num: self.ring.scale(&num, &inv),
            den: self.ring.scale(&den, &inv),
        }
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_empty() {
            return None;
        }
        let inv = self.base().inv(self.ring.lead(&a.num).unwrap()).unwrap();
        Some(RatFunc {
            num: self.ring.scale(&a.den, &inv),
            den: self.ring.scale(&a.num, &inv),
        })
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_base(self.base().from_i64(n))
    }

    fn frobenius(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        // Frobenius is an injective ring map, so it keeps the fraction
        // reduced and the denominator monic.
        RatFunc {
            num: self.ring.frobenius(&a.num, e),
            den: self.ring.frobenius(&a.den, e),
        }
    }

    fn format(&self, a: &Self::Elem) -> String {
        let n = self.ring.format(&a.num, &self.var);
        if a.den.len() == 1 {
            return n;
        }
        let d = self.ring.format(&a.den, &self.var);
        format!("{}/{}", paren(&n), paren(&d))
    }
}

impl<F: RootField> RootField for RatFuncField<F> {
    fn root_rank(&self, e: u32) -> usize {
        self.base().root_rank(e) * self.characteristic().pow(e) as usize
    }

    /// Index `i * m + j` stands for `u_j t^i`.
    fn root_radicand(&self, idx: usize, e: u32) -> Self::Elem {
        let m = self.base().root_rank(e);
        let (i, j) = (idx / m, idx % m);
        self.from_poly(self.ring.monomial(self.base().root_radicand(j, e), i))
    }

    fn root_coords(&self, a: &Self::Elem, e: u32) -> Vec<Self::Elem> {
        let q = self.characteristic().pow(e) as usize;
        let m = self.base().root_rank(e);
        // (g/h)^{1/q} = (g h^{q-1})^{1/q} / h
        let g = if a.den.len() == 1 {
            a.num.clone()
        } else {
            self.ring.mul(&a.num, &self.ring.pow(&a.den, (q - 1) as u64))
        };
        let mut polys: Vec<Poly<F::Elem>> = vec![Vec::new(); m * q];
        for (d, c) in g.iter().enumerate() {
            if self.base().is_zero(c) {
                continue;
            }
            let (quot, i) = (d / q, d % q);
            for (j, lam) in self.base().root_coords(c, e).into_iter().enumerate() {
                if self.base().is_zero(&lam) {
                    continue;
                }
                let slot = &mut polys[i * m + j];
                if slot.len() <= quot {
                    slot.resize(quot + 1, self.base().zero());
                }
                slot[quot] = self.base().add(&slot[quot], &lam);
            }
        }
        polys
            .into_iter()
            .map(|p| self.frac(p, a.den.clone()).unwrap())
            .collect()
    }

    fn root_label(&self, idx: usize, e: u32) -> String {
        let m = self.base().root_rank(e);
        let q = self.characteristic().pow(e);
        let (i, j) = (idx / m, idx % m);
        let t = match i {
            0 => String::new(),
            _ => format!("{}^({}/{})", self.var, i, q),
        };
        let u = self.base().root_label(j, e);
        match (u.as_str(), t.is_empty()) {
            ("1", true) => "1".to_string(),
            ("1", false) => t,
            (_, true) => u,
            (_, false) => format!("{t}*{u}"),
        }
    }
}
