//! Simple algebraic extensions `F[w]/(g(w))`.
//!
//! Used for residue field extensions `l/k` and for the function field of
//! the wildly ramified example.

use crate::error::{Error, Result};
use crate::field::{Field, RootField};
use crate::linalg;
use crate::poly::{Poly, PolyRing};

#[derive(Clone, Debug, PartialEq)]
pub struct AlgExt<F: Field> {
    pub ring: PolyRing<F>,
    modulus: Poly<F::Elem>,
    name: String,
}

impl<F: Field> AlgExt<F> {
    /// `modulus` must be monic of degree >= 1. Separability is required
    /// (nonzero derivative); irreducibility is the caller's claim, and a
    /// reducible modulus surfaces as a failed inversion.
    pub fn new(base: F, modulus: Poly<F::Elem>, name: &str) -> Result<Self> {
        let ring = PolyRing::new(base);
        let modulus = ring.trim(modulus);
        if modulus.len() < 2 || !ring.is_monic(&modulus) {
            return Err(Error::InvalidField(
                "extension modulus must be monic of degree >= 1".into(),
            ));
        }
        if ring.derivative(&modulus).is_empty() {
            return Err(Error::InseparableResidue);
        }
        Ok(AlgExt {
            ring,
            modulus,
            name: name.to_string(),
        })
    }

    /// The trivial extension `F[w]/(w)`.
    pub fn trivial(base: F, name: &str) -> Self {
        let ring = PolyRing::new(base);
        let modulus = ring.var();
        AlgExt {
            ring,
            modulus,
            name: name.to_string(),
        }
    }

    pub fn base(&self) -> &F {
        &self.ring.field
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn embed(&self, c: &F::Elem) -> Poly<F::Elem> {
        self.ring.constant(c.clone())
    }

    pub fn generator(&self) -> Poly<F::Elem> {
        self.reduce(self.ring.var())
    }

    pub fn reduce(&self, a: Poly<F::Elem>) -> Poly<F::Elem> {
        if a.len() < self.modulus.len() {
            return self.ring.trim(a);
        }
        self.ring.rem(&a, &self.modulus)
    }

    /// Coordinates over the power basis `1, w, ..., w^{d-1}`, padded.
    pub fn coords(&self, a: &Poly<F::Elem>) -> Vec<F::Elem> {
        let mut v = a.clone();
        v.resize(self.degree(), self.base().zero());
        v
    }
}

impl<F: Field> Field for AlgExt<F> {
    type Elem = Poly<F::Elem>;

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }

    fn one(&self) -> Self::Elem {
        self.ring.one()
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ring.add(a, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.ring.neg(a)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(self.ring.mul(a, b))
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_empty() {
            return None;
        }
        let (g, s, _) = self.ring.ext_gcd(a, &self.modulus);
        (g.len() == 1).then(|| self.reduce(s))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.ring.constant(self.base().from_i64(n))
    }

    fn frobenius(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        if a.len() <= 1 {
            return a.iter().map(|c| self.base().frobenius(c, e)).collect();
        }
        let q = self.characteristic().pow(e);
        let wq = self.pow(&self.generator(), q);
        let mut acc = self.zero();
        let mut pw = self.one();
        for c in a {
            let term = self.ring.scale(&pw, &self.base().frobenius(c, e));
            acc = self.ring.add(&acc, &term);
            pw = self.mul(&pw, &wq);
        }
        acc
    }

    fn format(&self, a: &Self::Elem) -> String {
        self.ring.format(a, &self.name)
    }
}

impl<F: RootField> RootField for AlgExt<F> {
    fn root_rank(&self, e: u32) -> usize {
        self.base().root_rank(e)
    }

    fn root_radicand(&self, j: usize, e: u32) -> Self::Elem {
        self.embed(&self.base().root_radicand(j, e))
    }

    /// Separability makes `1, w^q, ..., w^{(d-1)q}` (`q = p^e`) a basis of
    /// the extension over the base. Writing `a = sum_i a_i w^{iq}` and
    /// `a_i = sum_j c_{ij}^q u_j` gives `a = sum_j (sum_i c_{ij} w^i)^q u_j`.
    fn root_coords(&self, a: &Self::Elem, e: u32) -> Vec<Self::Elem> {
        let d = self.degree();
        let m = self.base().root_rank(e);
        let alphas = if d == 1 {
            vec![a.first().cloned().unwrap_or_else(|| self.base().zero())]
        } else {
            let q = self.characteristic().pow(e);
            let wq = self.pow(&self.generator(), q);
            let mut cols = Vec::with_capacity(d);
            let mut pw = self.one();
            for _ in 0..d {
                cols.push(self.coords(&pw));
                pw = self.mul(&pw, &wq);
            }
            let matrix: Vec<Vec<F::Elem>> = (0..d)
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect();
            linalg::solve(self.base(), &matrix, &self.coords(a))
                .expect("separable extension: Frobenius-twisted power basis is a basis")
        };
        let mut out: Vec<Poly<F::Elem>> = vec![Vec::new(); m];
        for (i, alpha) in alphas.iter().enumerate() {
            if self.base().is_zero(alpha) {
                continue;
            }
            for (j, c) in self.base().root_coords(alpha, e).into_iter().enumerate() {
                let term = self.ring.monomial(c, i);
                out[j] = self.ring.add(&out[j], &term);
            }
        }
        out
    }

    fn root_label(&self, j: usize, e: u32) -> String {
        self.base().root_label(j, e)
    }
}
