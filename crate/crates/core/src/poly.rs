//! Dense univariate polynomials over a [`Field`].
//!
//! A polynomial is a `Vec` of coefficients, low degree first, with no
//! trailing zeros; the zero polynomial is the empty vector.

use crate::field::{paren, Field};

#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    pub field: F,
}

pub type Poly<E> = Vec<E>;

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn trim(&self, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
        while a.last().is_some_and(|c| self.field.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Vec::new()
    }

    pub fn one(&self) -> Poly<F::Elem> {
        vec![self.field.one()]
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.trim(vec![c])
    }

    /// `c * t^d`.
    pub fn monomial(&self, c: F::Elem, d: usize) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            return Vec::new();
        }
        let mut v = vec![self.field.zero(); d + 1];
        v[d] = c;
        v
    }

    pub fn var(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn degree(&self, a: &[F::Elem]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn is_constant(&self, a: &[F::Elem]) -> bool {
        a.len() <= 1
    }

    pub fn lead<'a>(&self, a: &'a [F::Elem]) -> Option<&'a F::Elem> {
        a.last()
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, s) in out.iter_mut().zip(short) {
            *o = self.field.add(o, s);
        }
        self.trim(out)
    }

    pub fn neg(&self, a: &[F::Elem]) -> Poly<F::Elem> {
        a.iter().map(|c| self.field.neg(c)).collect()
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &[F::Elem], c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return Vec::new();
        }
        self.trim(a.iter().map(|x| self.field.mul(x, c)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, a: &[F::Elem], k: usize) -> Poly<F::Elem> {
        if a.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.field.zero(); k];
        out.extend_from_slice(a);
        out
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.field.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let prod = self.field.mul(x, y);
                out[i + j] = self.field.add(&out[i + j], &prod);
            }
        }
        self.trim(out)
    }

    pub fn pow(&self, a: &[F::Elem], mut n: u64) -> Poly<F::Elem> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let lb = self.lead(b).expect("polynomial division by zero");
        let lb_inv = self.field.inv(lb).expect("leading coefficient is a unit");
        let db = b.len() - 1;
        let mut rem = a.to_vec();
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let c = self.field.mul(rem.last().unwrap(), &lb_inv);
            for (i, bc) in b.iter().enumerate() {
                let t = self.field.mul(&c, bc);
                rem[shift + i] = self.field.sub(&rem[shift + i], &t);
            }
            quot[shift] = c;
            // the leading term cancels exactly
            rem.pop();
            rem = self.trim(rem);
        }
        (self.trim(quot), rem)
    }

    pub fn rem(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        self.divrem(a, b).1
    }

    /// Exact quotient, `None` if `b` does not divide `a`.
    pub fn div_exact(&self, a: &[F::Elem], b: &[F::Elem]) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b);
        r.is_empty().then_some(q)
    }

    pub fn monic(&self, a: &[F::Elem]) -> Poly<F::Elem> {
        match self.lead(a) {
            None => Vec::new(),
            Some(l) => {
                let inv = self.field.inv(l).unwrap();
                self.scale(a, &inv)
            }
        }
    }

    pub fn is_monic(&self, a: &[F::Elem]) -> bool {
        self.lead(a).is_some_and(|l| self.field.is_one(l))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `g = s a + t b` and `g` monic.
    pub fn ext_gcd(
        &self,
        a: &[F::Elem],
        b: &[F::Elem],
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match self.lead(&r0) {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = self.field.inv(l).unwrap();
                (
                    self.scale(&r0, &inv),
                    self.scale(&s0, &inv),
                    self.scale(&t0, &inv),
                )
            }
        }
    }

    pub fn derivative(&self, a: &[F::Elem]) -> Poly<F::Elem> {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(c, &self.field.from_i64(i as i64)))
            .collect();
        self.trim(out)
    }

    pub fn eval(&self, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        a.iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    /// Horner evaluation in another field, through a coefficient map.
    pub fn eval_in<G: Field>(
        &self,
        a: &[F::Elem],
        target: &G,
        coeff: &impl Fn(&F::Elem) -> G::Elem,
        x: &G::Elem,
    ) -> G::Elem {
        a.iter().rev().fold(target.zero(), |acc, c| {
            target.add(&target.mul(&acc, x), &coeff(c))
        })
    }

    /// `a(t^n)`.
    pub fn inflate(&self, a: &[F::Elem], n: usize) -> Poly<F::Elem> {
        if a.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.field.zero(); (a.len() - 1) * n + 1];
        for (i, c) in a.iter().enumerate() {
            out[i * n] = c.clone();
        }
        out
    }

    /// Multiplicity of `t` as a factor.
    pub fn low_order(&self, a: &[F::Elem]) -> Option<usize> {
        a.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn mulmod(&self, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &[F::Elem], mut n: u64, m: &[F::Elem]) -> Poly<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            n >>= 1;
            if n > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    /// Frobenius `a(t)^{p^e}`, computed coefficientwise.
    pub fn frobenius(&self, a: &[F::Elem], e: u32) -> Poly<F::Elem> {
        if a.is_empty() {
            return Vec::new();
        }
        let q = self.field.characteristic().pow(e) as usize;
        let mut out = vec![self.field.zero(); (a.len() - 1) * q + 1];
        for (i, c) in a.iter().enumerate() {
            out[i * q] = self.field.frobenius(c, e);
        }
        out
    }

    pub fn format(&self, a: &[F::Elem], var: &str) -> String {
        if a.is_empty() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (d, c) in a.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{d}"),
            };
            let cs = self.field.format(c);
            let term = if mono.is_empty() {
                cs
            } else if self.field.is_one(c) {
                mono
            } else {
                format!("{}*{}", paren(&cs), mono)
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}
