//! Univariate polynomials over a [`Field`], with factorisation into
//! irreducibles over `F_p` (Berlekamp) and over `Q` (Zassenhaus: factor
//! modulo a good prime, Hensel-lift, recombine).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{is_prime, Field, Scalar};
use crate::linalg::Matrix;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Poly {
        let field = c.field();
        Poly::new(field, vec![c])
    }

    /// The monomial `t`.
    pub fn t(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        Poly::new(
            self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        Poly::new(
            self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].add_mul(a, b);
            }
        }
        Poly::new(self.field, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let inv = d.lc().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = &r[idx] - &(&c * dc);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g` and `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.ext_gcd(m);
        if g.degree() != Some(0) {
            return None;
        }
        Some(s.rem(m))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Factorisation into monic irreducibles with multiplicities, sorted by
    /// degree then coefficients.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "factoring the zero polynomial");
        let mut out = Vec::new();
        for (sqf, mult) in squarefree_decomposition(&self.monic()) {
            let parts = match self.field {
                Field::Prime(_) => berlekamp(&sqf),
                Field::Rationals => zassenhaus(&sqf),
            };
            out.extend(parts.into_iter().map(|p| (p, mult)));
        }
        out.sort_by(|a, b| {
            a.0.coeffs
                .len()
                .cmp(&b.0.coeffs.len())
                .then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0)))
        });
        out
    }
}

/// Squarefree decomposition of a monic polynomial: `f = prod g_i^i`.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field;
    if f.is_constant() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_constant() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_constant() {
        // Only in characteristic p: c is a p-th power.
        let p = field.characteristic() as usize;
        assert!(p > 0, "non-constant remainder in characteristic zero");
        let root = Poly::new(field, c.coeffs.iter().step_by(p).cloned().collect());
        for (g, m) in squarefree_decomposition(&root.monic()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Irreducible factors of a squarefree monic polynomial over `F_p`.
fn berlekamp(f: &Poly) -> Vec<Poly> {
    let field = f.field;
    let p = field.characteristic();
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return vec![f.monic()];
    }
    // Q - I where row k holds x^(pk) mod f.
    let xp = Poly::t(field).pow_mod(p, f);
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut cur = Poly::one(field);
    for _ in 0..n {
        let mut row: Vec<Scalar> = (0..n)
            .map(|i| cur.coeffs.get(i).cloned().unwrap_or_else(|| field.zero()))
            .collect();
        row.resize(n, field.zero());
        rows.push(row);
        cur = cur.mul(&xp).rem(f);
    }
    let mut q = Matrix::from_rows(field, &rows, n);
    for i in 0..n {
        let v = q.get(i, i) - &field.one();
        q.set(i, i, v);
    }
    // v with v(x)^p = v(x) mod f  <=>  v * (Q - I) = 0.
    let kernel: Vec<Poly> = q
        .transpose()
        .nullspace()
        .into_iter()
        .map(|v| Poly::new(field, v))
        .collect();
    let r = kernel.len();
    if r == 1 {
        return vec![f.monic()];
    }
    let mut factors = vec![f.monic()];
    let nonconst: Vec<&Poly> = kernel.iter().filter(|v| !v.is_constant()).collect();
    if p <= 257 {
        'outer: for v in &nonconst {
            let mut next = Vec::new();
            for h in factors.drain(..) {
                let mut pending = vec![h];
                for s in 0..p {
                    let shifted = v.sub(&Poly::constant(field.from_i64(s as i64)));
                    let mut rest = Vec::new();
                    for h in pending.drain(..) {
                        if h.degree() == Some(1) {
                            rest.push(h);
                            continue;
                        }
                        let g = h.gcd(&shifted);
                        match g.degree() {
                            Some(d) if d > 0 && d < h.degree().unwrap() => {
                                rest.push(h.div_exact(&g).monic());
                                rest.push(g);
                            }
                            _ => rest.push(h),
                        }
                    }
                    pending = rest;
                }
                next.extend(pending);
            }
            factors = next;
            if factors.len() == r {
                break 'outer;
            }
        }
    } else {
        // Random elements of the Berlekamp subalgebra, Cantor-Zassenhaus style.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_be71);
        while factors.len() < r {
            let mut v = Poly::zero(field);
            for b in &kernel {
                let c = field.from_i64(rng.gen_range(0..p as i64));
                v = v.add(&b.scale(&c));
            }
            let mut next = Vec::new();
            for h in factors.drain(..) {
                if h.degree() == Some(1) {
                    next.push(h);
                    continue;
                }
                let w = v.pow_mod((p - 1) / 2, &h).sub(&Poly::one(field));
                let g = h.gcd(&w);
                match g.degree() {
                    Some(d) if d > 0 && d < h.degree().unwrap() => {
                        next.push(h.div_exact(&g).monic());
                        next.push(g);
                    }
                    _ => next.push(h),
                }
            }
            factors = next;
        }
    }
    factors
}

// ---- integer polynomial helpers for Zassenhaus ----

type ZPoly = Vec<BigInt>;

fn z_trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(out)
}

fn z_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    z_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn z_symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    z_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn z_content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn z_primitive(a: &ZPoly) -> ZPoly {
    let c = z_content(a);
    if c.is_zero() {
        return a.clone();
    }
    let mut out: ZPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        out = out.into_iter().map(|x| -x).collect();
    }
    out
}

fn z_to_fp(a: &ZPoly, field: Field) -> Poly {
    Poly::new(field, a.iter().map(|c| field.from_bigint(c)).collect())
}

fn fp_to_z(a: &Poly) -> ZPoly {
    a.coeffs
        .iter()
        .map(|c| BigInt::from(c.residue().expect("prime field")))
        .collect()
}

fn z_to_q(a: &ZPoly) -> Poly {
    let q = Field::Rationals;
    Poly::new(q, a.iter().map(|c| q.from_bigint(c)).collect())
}

/// Exact quotient over Z if `d` divides `a`.
fn z_div_exact(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let (qq, r) = z_to_q(a).divrem(&z_to_q(d));
    if !r.is_zero() {
        return None;
    }
    let mut out = Vec::with_capacity(qq.coeffs.len());
    for c in &qq.coeffs {
        let r = c.as_rational().unwrap();
        if !r.is_integer() {
            return None;
        }
        out.push(r.numer().clone());
    }
    Some(out)
}

/// Lifts `g = a*b mod p` (a monic) to `g = A*B mod p^k`.
fn hensel_two(g: &ZPoly, a: &Poly, b: &Poly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let field = a.field;
    let (one, _, t) = a.ext_gcd(b);
    assert_eq!(one.degree(), Some(0), "Hensel factors not coprime");
    let pb = BigInt::from(p);
    let mut big_a = fp_to_z(a);
    let mut big_b = fp_to_z(b);
    let mut m = pb.clone();
    for _ in 1..k {
        let ab = z_mul(&big_a, &big_b);
        let n = g.len().max(ab.len());
        let diff: ZPoly = (0..n)
            .map(|i| {
                g.get(i).cloned().unwrap_or_default() - ab.get(i).cloned().unwrap_or_default()
            })
            .collect();
        let e_z: ZPoly = diff
            .iter()
            .map(|c| {
                debug_assert!((c % &m).is_zero(), "Hensel invariant broken");
                c / &m
            })
            .collect();
        let e = z_to_fp(&e_z, field);
        let alpha = t.mul(&e).rem(a);
        let beta = e.sub(&alpha.mul(b)).div_exact(a);
        let next_m = &m * &pb;
        let add = |x: &ZPoly, y: &Poly| -> ZPoly {
            let yz = fp_to_z(y);
            let n = x.len().max(yz.len());
            let v: ZPoly = (0..n)
                .map(|i| {
                    x.get(i).cloned().unwrap_or_default()
                        + &m * yz.get(i).cloned().unwrap_or_default()
                })
                .collect();
            z_mod(&v, &next_m)
        };
        big_a = add(&big_a, &alpha);
        big_b = add(&big_b, &beta);
        m = next_m;
    }
    (big_a, big_b)
}

/// Lifts the monic modular factors `hs` of `g` (g = lc * prod hs mod p).
fn hensel_multi(g: &ZPoly, hs: &[Poly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(k);
    let field = hs[0].field;
    if hs.len() == 1 {
        let lc = g.last().unwrap();
        let lc_inv = mod_inverse(lc, &modulus).expect("leading coefficient prime to p");
        return vec![z_mod(&g.iter().map(|c| c * &lc_inv).collect(), &modulus)];
    }
    let a = hs[0].clone();
    let lc = field.from_bigint(g.last().unwrap());
    let mut b = Poly::constant(lc);
    for h in &hs[1..] {
        b = b.mul(h);
    }
    let (big_a, big_b) = hensel_two(g, &a, &b, p, k);
    let mut out = vec![big_a];
    out.extend(hensel_multi(&big_b, &hs[1..], p, k));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Irreducible monic factors over Q of a squarefree monic rational polynomial.
fn zassenhaus(f: &Poly) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return vec![f.monic()];
    }
    // Clear denominators.
    let denom_lcm = f
        .coeffs
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.as_rational().unwrap().denom()));
    let g: ZPoly = z_primitive(
        &f.coeffs
            .iter()
            .map(|c| {
                let r: &BigRational = c.as_rational().unwrap();
                r.numer() * (&denom_lcm / r.denom())
            })
            .collect(),
    );
    let lc = g.last().unwrap().clone();

    // A prime keeping g squarefree and of full degree.
    let mut p = 3u64;
    let modular = loop {
        if is_prime(p) && !(&lc % BigInt::from(p)).is_zero() {
            let fp = Field::Prime(p);
            let gp = z_to_fp(&g, fp);
            if gp.gcd(&gp.derivative()).degree() == Some(0) {
                break gp;
            }
        }
        p += 2;
    };
    let hs = berlekamp(&modular.monic());
    if hs.len() == 1 {
        return vec![f.monic()];
    }

    // Mignotte-style bound on factor coefficients.
    let norm2: BigInt = g.iter().map(|c| c * c).sum();
    let bound = lc.abs() * (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let target = bound * 2u32 + 1u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= target {
        pk *= &pb;
        k += 1;
    }
    let mut lifted = hensel_multi(&g, &hs, p, k);

    let mut remaining = g;
    let mut found: Vec<ZPoly> = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), s) {
            let l = remaining.last().unwrap().clone();
            let mut cand: ZPoly = vec![l];
            for &i in &subset {
                cand = z_mod(&z_mul(&cand, &lifted[i]), &pk);
            }
            let cand = z_primitive(&z_symmetric(&cand, &pk));
            if let Some(q) = z_div_exact(&remaining, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                remaining = z_primitive(&q);
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, h)| h)
                    .collect();
            }
            None => s += 1,
        }
    }
    if remaining.len() > 1 {
        found.push(remaining);
    }
    found.iter().map(|z| z_to_q(z).monic()).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(field: Field, parts: &[(Poly, usize)]) -> Poly {
        let mut acc = Poly::one(field);
        for (p, m) in parts {
            for _ in 0..*m {
                acc = acc.mul(p);
            }
        }
        acc
    }

    #[test]
    fn divrem_and_gcd() {
        let q = Field::Rationals;
        let a = Poly::from_i64(q, &[-1, 0, 1]); // t^2 - 1
        let b = Poly::from_i64(q, &[-1, 1]); // t - 1
        let (quo, rem) = a.divrem(&b);
        assert!(rem.is_zero());
        assert_eq!(quo, Poly::from_i64(q, &[1, 1]));
        assert_eq!(a.gcd(&Poly::from_i64(q, &[1, 1])), Poly::from_i64(q, &[1, 1]));
    }

    #[test]
    fn factor_over_q() {
        let q = Field::Rationals;
        // (t^2+1)(t-2)^2(t^3-2)
        let f = Poly::from_i64(q, &[1, 0, 1])
            .mul(&Poly::from_i64(q, &[-2, 1]))
            .mul(&Poly::from_i64(q, &[-2, 1]))
            .mul(&Poly::from_i64(q, &[-2, 0, 0, 1]));
        let fac = f.factor();
        assert_eq!(fac.len(), 3);
        assert_eq!(expand(q, &fac), f.monic());
        assert!(fac.contains(&(Poly::from_i64(q, &[-2, 1]), 2)));
    }

    #[test]
    fn irreducible_over_q_but_not_mod_p() {
        // t^4 + 1 is irreducible over Q and splits modulo every prime.
        let q = Field::Rationals;
        let f = Poly::from_i64(q, &[1, 0, 0, 0, 1]);
        assert_eq!(f.factor(), vec![(f.clone(), 1)]);
        let f3 = Field::prime(3).unwrap();
        let g = Poly::from_i64(f3, &[1, 0, 0, 0, 1]);
        let fac = g.factor();
        assert!(fac.len() >= 2);
        assert_eq!(expand(f3, &fac), g);
    }

    #[test]
    fn factor_over_f2_with_repeated_factors() {
        let f2 = Field::prime(2).unwrap();
        // (t+1)^2 (t^2+t+1)
        let f = Poly::from_i64(f2, &[1, 1])
            .mul(&Poly::from_i64(f2, &[1, 1]))
            .mul(&Poly::from_i64(f2, &[1, 1, 1]));
        let fac = f.factor();
        assert_eq!(fac.len(), 2);
        assert_eq!(expand(f2, &fac), f);
        // t^2 + t = t (t + 1): Frobenius-fixed, tests the p-th root branch.
        let sq = Poly::from_i64(f2, &[0, 0, 1, 0, 1]); // t^4 + t^2 = t^2 (t+1)^2
        let fac = sq.factor();
        assert_eq!(fac.iter().map(|x| x.1).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn factor_cyclotomic_product() {
        let q = Field::Rationals;
        // t^6 - 1 = (t-1)(t+1)(t^2+t+1)(t^2-t+1)
        let f = Poly::from_i64(q, &[-1, 0, 0, 0, 0, 0, 1]);
        let fac = f.factor();
        assert_eq!(fac.len(), 4);
        assert_eq!(expand(q, &fac), f);
    }

    #[test]
    fn large_prime_field_split() {
        let fp = Field::prime(1_000_003).unwrap();
        let f = Poly::from_i64(fp, &[-6, 11, -6, 1]); // (t-1)(t-2)(t-3)
        let fac = f.factor();
        assert_eq!(fac.len(), 3);
        assert!(fac.iter().all(|(p, m)| p.degree() == Some(1) && *m == 1));
    }
}
