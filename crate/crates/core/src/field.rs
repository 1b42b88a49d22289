//! Field contexts.
//!
//! Elements are plain data; every operation goes through the context object
//! that owns the structure (the modulus of `F_{p^k}`, the variable of a
//! rational function field, ...). This keeps elements cheap to hash and
//! compare while the contexts carry the runtime parameters.

use std::fmt::Debug;
use std::hash::Hash;

/// An exact field of positive characteristic.
pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Human-readable form, parseable by [`crate::expr`].
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        let p = self.characteristic() as i64;
        let r = n.rem_euclid(p);
        let one = self.one();
        let mut acc = self.zero();
        for _ in 0..r {
            acc = self.add(&acc, &one);
        }
        acc
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
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

    /// `a^{p^e}`.
    fn frobenius(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let p = self.characteristic();
        let mut out = a.clone();
        for _ in 0..e {
            out = self.pow(&out, p);
        }
        out
    }

    /// Factor a nonzero polynomial (coefficients low-to-high) into monic
    /// irreducibles with multiplicities. Returns `None` when the field has no
    /// factorization routine. The leading coefficient is dropped.
    fn factor_poly(&self, _f: &[Self::Elem]) -> Option<Vec<(Vec<Self::Elem>, u32)>> {
        None
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A field `k` together with a fixed basis `u_0^{1/p^e}, ..., u_{m-1}^{1/p^e}`
/// of `k^{1/p^e}` over `k`, with `u_0 = 1`.
///
/// An element of `k^{1/p^e}` is identified with its `p^e`-th power (its
/// *radicand*) in `k`; Frobenius is injective, so this is a ring isomorphism
/// onto `k`.
pub trait RootField: Field {
    /// `m = [k^{1/p^e} : k]`.
    fn root_rank(&self, e: u32) -> usize;

    /// `u_j`, the radicand of the `j`-th basis element.
    fn root_radicand(&self, j: usize, e: u32) -> Self::Elem;

    /// Coordinates `c_j` with `a^{1/p^e} = sum_j c_j u_j^{1/p^e}`, i.e.
    /// `a = sum_j c_j^{p^e} u_j`.
    fn root_coords(&self, a: &Self::Elem, e: u32) -> Vec<Self::Elem>;

    /// Display label of basis element `j`, e.g. `y^(2/3)`.
    fn root_label(&self, j: usize, e: u32) -> String;

    /// Inverse of [`RootField::root_coords`].
    fn root_assemble(&self, coords: &[Self::Elem], e: u32) -> Self::Elem {
        let mut acc = self.zero();
        for (j, c) in coords.iter().enumerate() {
            if self.is_zero(c) {
                continue;
            }
            let term = self.mul(&self.frobenius(c, e), &self.root_radicand(j, e));
            acc = self.add(&acc, &term);
        }
        acc
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Wrap a formatted element in parentheses unless it is atomic.
pub(crate) fn paren(s: &str) -> String {
    if s.contains(['+', '-', '/', '*', ' ']) {
        format!("({s})")
    } else {
        s.to_string()
    }
}
