//! The finite fields `F_{p^k} = F_p[a]/(m(a))`.
//!
//! Elements are encoded as integers `sum_i c_i p^i` where `c_i` is the
//! coefficient of `a^i`; for `k = 1` the encoding is the residue itself.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor;
use crate::field::{is_prime, Field, RootField};
use crate::poly::PolyRing;

/// Largest supported extension degree.
pub const MAX_K_DEG: u32 = 6;

const MAXK: usize = MAX_K_DEG as usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf {
    inner: Arc<GfInner>,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct GfInner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low-to-high, length `k + 1`. Empty for `k = 1`.
    modulus: Vec<u32>,
    name: String,
}

impl Gf {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        Ok(Gf {
            inner: Arc::new(GfInner {
                p,
                k: 1,
                q: p,
                modulus: Vec::new(),
                name: String::new(),
            }),
        })
    }

    /// `F_p[a]/(modulus)`; the modulus is given low-to-high and must be
    /// monic and irreducible over `F_p`.
    pub fn new(p: u32, modulus: &[u32], name: &str) -> Result<Self> {
        let base = Gf::prime(p)?;
        if modulus.len() <= 2 {
            // absent or linear modulus: the prime field itself
            return Ok(base);
        }
        let k = modulus.len() as u32 - 1;
        if k == 0 || k > MAX_K_DEG {
            return Err(Error::Limit(format!(
                "extension degree {k} outside 1..={MAX_K_DEG}"
            )));
        }
        let m: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        if m[k as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let ring = PolyRing::new(base.clone());
        if !factor::is_irreducible_trial(&ring, &m) {
            return Err(Error::ReducibleModulus { p });
        }
        Ok(Gf {
            inner: Arc::new(GfInner {
                p,
                k,
                q: p.pow(k),
                modulus: m,
                name: name.to_string(),
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn generator_name(&self) -> &str {
        &self.inner.name
    }

    /// The class of `a` (the adjoined root); `None` for prime fields.
    pub fn generator(&self) -> Option<u32> {
        (self.inner.k > 1).then_some(self.inner.p)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.inner.q
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        let p = self.inner.p;
        digits.iter().rev().fold(0, |acc, d| acc * p + d % p)
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut d = [0u32; MAXK];
        self.decode(a, &mut d);
        d[..self.inner.k as usize].to_vec()
    }

    fn decode(&self, mut a: u32, out: &mut [u32; MAXK]) {
        let p = self.inner.p;
        for slot in out.iter_mut().take(self.inner.k as usize) {
            *slot = a % p;
            a /= p;
        }
    }
}

impl Field for Gf {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.inner.p as u64
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return (a + b) % p;
        }
        let (mut x, mut y) = ([0; MAXK], [0; MAXK]);
        self.decode(*a, &mut x);
        self.decode(*b, &mut y);
        let k = self.inner.k as usize;
        let mut acc = 0;
        for i in (0..k).rev() {
            acc = acc * p + (x[i] + y[i]) % p;
        }
        acc
    }

    fn neg(&self, a: &u32) -> u32 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return (p - a % p) % p;
        }
        let mut x = [0; MAXK];
        self.decode(*a, &mut x);
        let mut acc = 0;
        for i in (0..self.inner.k as usize).rev() {
            acc = acc * p + (p - x[i]) % p;
        }
        acc
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return (a * b) % p;
        }
        let k = self.inner.k as usize;
        let (mut x, mut y) = ([0; MAXK], [0; MAXK]);
        self.decode(*a, &mut x);
        self.decode(*b, &mut y);
        let mut prod = [0u32; 2 * MAXK];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        let m = &self.inner.modulus;
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i]) % p;
            }
        }
        let mut acc = 0;
        for i in (0..k).rev() {
            acc = acc * p + prod[i];
        }
        acc
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, (self.inner.q - 2) as u64))
    }

    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.inner.p as i64) as u32
    }

    fn frobenius(&self, a: &u32, e: u32) -> u32 {
        let k = self.inner.k;
        let e = e % k;
        if e == 0 || *a < self.inner.p {
            return *a;
        }
        self.pow(a, (self.inner.p as u64).pow(e))
    }

    fn format(&self, a: &u32) -> String {
        if self.inner.k == 1 {
            return a.to_string();
        }
        let ring = PolyRing::new(Gf::prime(self.inner.p).unwrap());
        let d = ring.trim(self.digits(*a));
        ring.format(&d, &self.inner.name)
    }

    fn factor_poly(&self, f: &[u32]) -> Option<Vec<(Vec<u32>, u32)>> {
        Some(factor::factor(&PolyRing::new(self.clone()), f))
    }
}

impl RootField for Gf {
    fn root_rank(&self, _e: u32) -> usize {
        1
    }

    fn root_radicand(&self, _j: usize, _e: u32) -> u32 {
        1
    }

    fn root_coords(&self, a: &u32, e: u32) -> Vec<u32> {
        // Frobenius has order k on F_{p^k}, so its inverse is Frob^{k-1}.
        let k = self.inner.k;
        let back = (k - e % k) % k;
        vec![self.frobenius(a, back)]
    }

    fn root_label(&self, _j: usize, _e: u32) -> String {
        "1".to_string()
    }
}
