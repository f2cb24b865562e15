//! Finite-dimensional associative algebras given by structure constants:
//! Jacobson radical and complete sets of primitive orthogonal idempotents.
//!
//! The radical is the kernel of the trace form in characteristic zero. In
//! characteristic `p` it is cut out by the iterated generalised trace
//! conditions `Tr(X^(p^i)) / p^i mod p` (Cohen, Ivanyos and Wales), applied
//! to the left regular representation.
//!
//! Idempotents are found by Fitting splitting: for `c` in the algebra, a
//! coprime factorisation of its minimal polynomial `f * g` yields the
//! idempotent `u(c)` with `u = 1 mod f`, `u = 0 mod g`. A corner `eAe` is
//! certified local once some element's minimal polynomial is a power of an
//! irreducible whose degree equals `dim(eAe / rad)`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{CoordinateSolver, EchelonBasis, Matrix};
use crate::poly::Poly;

/// Random candidates tried before declaring a splitting failure.
const MAX_RANDOM_CANDIDATES: usize = 400;

#[derive(Clone, Debug)]
pub struct FdAlgebra {
    field: Field,
    dim: usize,
    // table[i * dim + j] = coordinates of b_i * b_j
    table: Vec<Vec<Scalar>>,
    one: Vec<Scalar>,
}

impl FdAlgebra {
    pub fn new(field: Field, dim: usize, table: Vec<Vec<Scalar>>, one: Vec<Scalar>) -> FdAlgebra {
        assert_eq!(table.len(), dim * dim);
        assert_eq!(one.len(), dim);
        FdAlgebra {
            field,
            dim,
            table,
            one,
        }
    }

    /// The full matrix algebra `M_n(F)` on matrix units (row-major), handy
    /// for tests.
    pub fn matrix_algebra(field: Field, n: usize) -> FdAlgebra {
        let dim = n * n;
        let mut table = vec![vec![field.zero(); dim]; dim * dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[(i * n + j) * dim + (j * n + l)][i * n + l] = field.one();
                }
            }
        }
        let mut one = vec![field.zero(); dim];
        for i in 0..n {
            one[i * n + i] = field.one();
        }
        FdAlgebra::new(field, dim, table, one)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[Scalar] {
        &self.one
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(&self.table[i * self.dim + j]) {
                    if !c.is_zero() {
                        o.add_mul(&ab, c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y -> x*y` in the structure basis.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(self.field, &cols, self.dim)
    }

    pub fn is_unit(&self, x: &[Scalar]) -> bool {
        self.left_mul_matrix(x).is_invertible()
    }

    pub fn is_nilpotent(&self, x: &[Scalar]) -> bool {
        let mut p = x.to_vec();
        for _ in 0..self.dim.max(1) {
            if p.iter().all(|c| c.is_zero()) {
                return true;
            }
            p = self.mul(&p, x);
        }
        p.iter().all(|c| c.is_zero())
    }

    pub fn is_idempotent(&self, x: &[Scalar]) -> bool {
        self.mul(x, x) == x
    }

    pub fn eval(&self, p: &Poly, x: &[Scalar]) -> Vec<Scalar> {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            for (a, u) in acc.iter_mut().zip(&self.one) {
                a.add_mul(c, u);
            }
        }
        acc
    }

    /// Minimal polynomial of `x` (monic).
    pub fn min_poly(&self, x: &[Scalar]) -> Poly {
        let mut powers = vec![self.one.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let m = Matrix::from_columns(self.field, &powers, self.dim);
            if let Some(c) = m.solve(&next) {
                let mut coeffs: Vec<Scalar> = c.iter().map(|v| -v).collect();
                coeffs.push(self.field.one());
                return Poly::new(self.field, coeffs);
            }
            powers.push(next);
        }
    }

    /// Basis of the Jacobson radical.
    pub fn radical(&self) -> Vec<Vec<Scalar>> {
        if self.dim == 0 {
            return Vec::new();
        }
        let rad = match self.field {
            Field::Rationals => self.radical_char0(),
            Field::Prime(p) => self.radical_char_p(p),
        };
        debug_assert!(rad.iter().all(|x| self.is_nilpotent(x)), "radical not nil");
        rad
    }

    fn trace_of_left(&self, k: usize) -> Scalar {
        let mut t = self.field.zero();
        for j in 0..self.dim {
            t = &t + &self.table[k * self.dim + j][j];
        }
        t
    }

    fn radical_char0(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim;
        let traces: Vec<Scalar> = (0..n).map(|k| self.trace_of_left(k)).collect();
        let mut form = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.field.zero();
                for (c, t) in self.table[i * n + j].iter().zip(&traces) {
                    acc.add_mul(c, t);
                }
                form.set(i, j, acc);
            }
        }
        form.transpose().nullspace()
    }

    fn radical_char_p(&self, p: u64) -> Vec<Vec<Scalar>> {
        let n = self.dim;
        let mut levels = 0u32;
        let mut pk = p as u128;
        while pk <= n as u128 {
            pk *= p as u128;
            levels += 1;
        }
        let mut current: Vec<Vec<Scalar>> = (0..n).map(|i| self.basis_vector(i)).collect();
        for i in 0..=levels {
            if current.is_empty() {
                break;
            }
            let mut conditions = Matrix::zeros(self.field, n, current.len());
            for y in 0..n {
                let by = self.basis_vector(y);
                for (xi, x) in current.iter().enumerate() {
                    let xy = self.mul(x, &by);
                    conditions.set(y, xi, self.field.from_i64(self.generalised_trace(&xy, p, i) as i64));
                }
            }
            current = conditions
                .nullspace()
                .into_iter()
                .map(|coeffs| {
                    let mut v = self.zero();
                    for (c, x) in coeffs.iter().zip(&current) {
                        for (o, xv) in v.iter_mut().zip(x) {
                            o.add_mul(c, xv);
                        }
                    }
                    v
                })
                .collect();
        }
        current
    }

    /// `Tr(L~^(p^i)) / p^i mod p` for an integer lift `L~` of left
    /// multiplication by `z`.
    fn generalised_trace(&self, z: &[Scalar], p: u64, i: u32) -> u64 {
        let n = self.dim;
        let modulus = (p as u128).pow(i + 1);
        let l = self.left_mul_matrix(z);
        let lift: Vec<u128> = (0..n * n)
            .map(|k| l.get(k / n, k % n).residue().unwrap() as u128)
            .collect();
        let matmul = |a: &[u128], b: &[u128]| -> Vec<u128> {
            let mut out = vec![0u128; n * n];
            for r in 0..n {
                for k in 0..n {
                    let x = a[r * n + k];
                    if x == 0 {
                        continue;
                    }
                    for c in 0..n {
                        out[r * n + c] = (out[r * n + c] + x * b[k * n + c]) % modulus;
                    }
                }
            }
            out
        };
        let mut e = (p as u128).pow(i);
        let mut base = lift;
        let mut acc: Option<Vec<u128>> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => matmul(&a, &base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = matmul(&base, &base);
            }
        }
        let m = acc.unwrap();
        let tr = (0..n).fold(0u128, |t, k| (t + m[k * n + k]) % modulus);
        let scale = (p as u128).pow(i);
        debug_assert_eq!(tr % scale, 0, "generalised trace not divisible");
        ((tr / scale) % p as u128) as u64
    }

    /// The corner algebra `e A e` and its basis in the coordinates of `self`.
    pub fn corner(&self, e: &[Scalar]) -> (FdAlgebra, Vec<Vec<Scalar>>) {
        let mut ech = EchelonBasis::new(self.field, self.dim);
        let mut basis = Vec::new();
        for i in 0..self.dim {
            let v = self.mul(&self.mul(e, &self.basis_vector(i)), e);
            if ech.insert(&v) {
                basis.push(v);
            }
        }
        let k = basis.len();
        let solver = CoordinateSolver::new(self.field, &basis, self.dim);
        let mut table = Vec::with_capacity(k * k);
        for a in &basis {
            for b in &basis {
                table.push(solver.coords(&self.mul(a, b)).expect("corner closed under product"));
            }
        }
        let one = solver.coords(e).expect("idempotent lies in its corner");
        (FdAlgebra::new(self.field, k, table, one), basis)
    }

    fn candidate(&self, attempt: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
        let n = self.dim;
        if attempt < n {
            return self.basis_vector(attempt);
        }
        let mut v = self.zero();
        for x in v.iter_mut() {
            *x = self.field.from_i64(rng.gen_range(-3..=3));
        }
        v
    }

    /// A complete set of primitive orthogonal idempotents summing to one.
    pub fn primitive_idempotents(&self, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Scalar>>> {
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        if self.dim == 1 {
            return Ok(vec![self.one.clone()]);
        }
        let semisimple_dim = self.dim - self.radical().len();
        if semisimple_dim == 1 {
            return Ok(vec![self.one.clone()]);
        }
        for attempt in 0..self.dim + MAX_RANDOM_CANDIDATES {
            let c = self.candidate(attempt, rng);
            let mu = self.min_poly(&c);
            let factors = mu.factor();
            if factors.len() >= 2 {
                let (irr, mult) = &factors[0];
                let mut f = Poly::one(self.field);
                for _ in 0..*mult {
                    f = f.mul(irr);
                }
                let g = mu.div_exact(&f);
                let g_inv = g.inv_mod(&f).expect("coprime parts of a minimal polynomial");
                let u = g.mul(&g_inv).rem(&mu);
                let e1 = self.eval(&u, &c);
                debug_assert!(self.is_idempotent(&e1));
                let e2: Vec<Scalar> = self.one.iter().zip(&e1).map(|(a, b)| a - b).collect();
                let mut out = Vec::new();
                for e in [e1, e2] {
                    let (corner, basis) = self.corner(&e);
                    for idem in corner.primitive_idempotents(rng)? {
                        out.push(embed(&idem, &basis, self.field, self.dim));
                    }
                }
                return Ok(out);
            }
            if factors[0].0.degree() == Some(semisimple_dim) {
                return Ok(vec![self.one.clone()]);
            }
        }
        Err(Error::Internal(format!(
            "idempotent splitting failed in an algebra of dimension {} (semisimple part {})",
            self.dim, semisimple_dim
        )))
    }
}

fn embed(coords: &[Scalar], basis: &[Vec<Scalar>], field: Field, dim: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    for (c, b) in coords.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in v.iter_mut().zip(b) {
            o.add_mul(c, x);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;

    /// Upper triangular 2x2 matrices: basis e11, e12, e22.
    fn upper_triangular(field: Field) -> FdAlgebra {
        let z = field.zero();
        let o = field.one();
        let v = |a: usize| {
            let mut x = vec![z.clone(); 3];
            x[a] = o.clone();
            x
        };
        let zero = vec![z.clone(); 3];
        // products of (e11, e12, e22)
        let table = vec![
            v(0), v(1), zero.clone(), // e11 * _
            zero.clone(), zero.clone(), v(1), // e12 * _
            zero.clone(), zero.clone(), v(2), // e22 * _
        ];
        FdAlgebra::new(field, 3, table, vec![o.clone(), z.clone(), o])
    }

    #[test]
    fn radical_of_triangular_algebra() {
        for field in [Field::Rationals, Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            let a = upper_triangular(field);
            let rad = a.radical();
            assert_eq!(rad.len(), 1, "over {field}");
            assert!(a.is_nilpotent(&rad[0]));
        }
    }

    #[test]
    fn matrix_algebra_is_semisimple_in_every_characteristic() {
        for field in [Field::Rationals, Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            assert!(FdAlgebra::matrix_algebra(field, 3).radical().is_empty());
        }
    }

    #[test]
    fn group_algebra_of_c2_in_characteristic_two_is_local() {
        // F2[C2] = F2[u]/(u^2 - 1): radical spanned by 1 + u.
        let f2 = Field::prime(2).unwrap();
        let z = f2.zero();
        let o = f2.one();
        let table = vec![
            vec![o.clone(), z.clone()],
            vec![z.clone(), o.clone()],
            vec![z.clone(), o.clone()],
            vec![o.clone(), z.clone()],
        ];
        let a = FdAlgebra::new(f2, 2, table, vec![o.clone(), z.clone()]);
        assert_eq!(a.radical().len(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(a.primitive_idempotents(&mut rng).unwrap().len(), 1);
    }

    #[test]
    fn split_matrix_algebra_into_rank_one_idempotents() {
        for field in [Field::Rationals, Field::prime(2).unwrap()] {
            let a = FdAlgebra::matrix_algebra(field, 3);
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let idems = a.primitive_idempotents(&mut rng).unwrap();
            assert_eq!(idems.len(), 3);
            let mut sum = a.zero();
            for (i, e) in idems.iter().enumerate() {
                assert!(a.is_idempotent(e));
                for (j, f) in idems.iter().enumerate() {
                    if i != j {
                        assert!(a.mul(e, f).iter().all(|x| x.is_zero()));
                    }
                }
                sum = sum.iter().zip(e).map(|(x, y)| x + y).collect();
            }
            assert_eq!(sum, a.one());
        }
    }

    #[test]
    fn cyclotomic_field_summand_is_local() {
        // Q[C3] = Q x Q(w): exactly two primitive idempotents.
        let q = Field::Rationals;
        let mut table = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let mut v = vec![q.zero(); 3];
                v[(i + j) % 3] = q.one();
                table.push(v);
            }
        }
        let a = FdAlgebra::new(q, 3, table, vec![q.one(), q.zero(), q.zero()]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(a.primitive_idempotents(&mut rng).unwrap().len(), 2);
    }

    #[test]
    fn min_poly_of_idempotent() {
        let q = Field::Rationals;
        let a = FdAlgebra::matrix_algebra(q, 2);
        let e11 = a.basis_vector(0);
        assert_eq!(a.min_poly(&e11), Poly::from_i64(q, &[0, -1, 1]));
        assert_eq!(a.min_poly(a.one()), Poly::from_i64(q, &[-1, 1]));
    }
}
