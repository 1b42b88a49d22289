//! Factorization of univariate polynomials over small finite fields.
//!
//! [`factor`] runs squarefree decomposition followed by Berlekamp's
//! algorithm. The trial-division routines enumerate every monic candidate
//! and serve as the irreducibility test for places and as a brute-force
//! reference for small degrees.

use crate::field::Field;
use crate::gf::Gf;
use crate::linalg;
use crate::poly::{Poly, PolyRing};

/// All monic polynomials of exact degree `d` over the field.
pub fn monic_polys(ring: &PolyRing<Gf>, d: usize) -> impl Iterator<Item = Poly<u32>> + '_ {
    let q = ring.field.order() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push((idx % q) as u32);
            idx /= q;
        }
        v.push(1);
        v
    })
}

pub fn is_irreducible_trial(ring: &PolyRing<Gf>, f: &[u32]) -> bool {
    let Some(deg) = ring.degree(f) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for g in monic_polys(ring, d) {
            if ring.rem(f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Brute-force factorization by trial division, smallest factors first.
pub fn factor_trial(ring: &PolyRing<Gf>, f: &[u32]) -> Vec<(Poly<u32>, u32)> {
    let mut f = ring.monic(f);
    let mut out = Vec::new();
    let mut d = 1;
    while ring.degree(&f).unwrap_or(0) >= 2 * d {
        for g in monic_polys(ring, d) {
            let mut mult = 0;
            while let Some(q) = ring.div_exact(&f, &g) {
                f = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        d += 1;
    }
    // no factor of degree <= deg/2 remains, so the cofactor is irreducible
    if ring.degree(&f).unwrap_or(0) >= 1 {
        out.push((f, 1));
    }
    out.sort();
    out
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted. Constants factor as the empty list.
pub fn factor(ring: &PolyRing<Gf>, f: &[u32]) -> Vec<(Poly<u32>, u32)> {
    let f = ring.monic(f);
    let mut out: Vec<(Poly<u32>, u32)> = Vec::new();
    for (part, mult) in squarefree(ring, &f) {
        for g in berlekamp(ring, &part) {
            match out.iter_mut().find(|(h, _)| *h == g) {
                Some(entry) => entry.1 += mult,
                None => out.push((g, mult)),
            }
        }
    }
    out.sort();
    out
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with their multiplicities.
pub fn squarefree(ring: &PolyRing<Gf>, f: &[u32]) -> Vec<(Poly<u32>, u32)> {
    let mut out = Vec::new();
    if ring.degree(f).unwrap_or(0) == 0 {
        return out;
    }
    let p = ring.field.p();
    let df = ring.derivative(f);
    if df.is_empty() {
        for (g, m) in squarefree(ring, &pth_root(ring, f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut g = ring.gcd(f, &df);
    let mut w = ring.div_exact(f, &g).unwrap();
    let mut i = 1;
    while ring.degree(&w).unwrap_or(0) > 0 {
        let y = ring.gcd(&w, &g);
        let z = ring.div_exact(&w, &y).unwrap();
        if ring.degree(&z).unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        g = ring.div_exact(&g, &y).unwrap();
        w = y;
    }
    if ring.degree(&g).unwrap_or(0) > 0 {
        // what is left is a p-th power
        for (h, m) in squarefree(ring, &pth_root(ring, &g)) {
            out.push((h, m * p));
        }
    }
    out
}

/// `g^{1/p}` for a polynomial with zero derivative.
fn pth_root(ring: &PolyRing<Gf>, g: &[u32]) -> Poly<u32> {
    let gf = &ring.field;
    let p = gf.p() as usize;
    let k = gf.degree();
    let out = g
        .iter()
        .step_by(p)
        .map(|c| gf.frobenius(c, k - 1))
        .collect();
    ring.trim(out)
}

/// Irreducible factors of a monic squarefree polynomial.
fn berlekamp(ring: &PolyRing<Gf>, f: &[u32]) -> Vec<Poly<u32>> {
    let gf = &ring.field;
    let n = match ring.degree(f) {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![f.to_vec()],
        Some(n) => n,
    };
    let q = gf.order() as u64;
    // columns: t^{q i} mod f
    let xq = ring.powmod(&ring.var(), q, f);
    let mut cols = Vec::with_capacity(n);
    let mut pw = ring.one();
    for _ in 0..n {
        let mut c = pw.clone();
        c.resize(n, 0);
        cols.push(c);
        pw = ring.mulmod(&pw, &xq, f);
    }
    let matrix: Vec<Vec<u32>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let v = cols[c][r];
                    if r == c {
                        gf.sub(&v, &1)
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let kernel = linalg::kernel(gf, &matrix, n);
    let r = kernel.len();
    let mut factors = vec![f.to_vec()];
    for v in kernel {
        if factors.len() == r {
            break;
        }
        let v = ring.trim(v);
        if ring.degree(&v).unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            if ring.degree(&h).unwrap_or(0) <= 1 {
                next.push(h);
                continue;
            }
            let mut rest = h;
            for a in gf.elements() {
                if ring.degree(&rest).unwrap_or(0) <= 1 {
                    break;
                }
                let shifted = ring.sub(&v, &[a]);
                let g = ring.gcd(&rest, &shifted);
                let dg = ring.degree(&g).unwrap_or(0);
                if dg > 0 && dg < ring.degree(&rest).unwrap() {
                    rest = ring.div_exact(&rest, &g).unwrap();
                    next.push(g);
                }
            }
            next.push(rest);
        }
        factors = next;
    }
    factors
}
