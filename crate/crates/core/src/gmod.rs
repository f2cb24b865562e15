//! Finitely generated graded projective right modules, presented as
//! `e (A(g_1) + ... + A(g_k))` for a homogeneous degree-0 idempotent `e`.
//!
//! Conventions: `A(g)_h = A_(g+h)`, so a free module with shifts `g_i` has
//! component `sum_i A_(g_i+h)` at `h`. A degree-0 map between free modules
//! with column shifts `c_j` and row shifts `r_i` is left multiplication by a
//! matrix whose `(i, j)` entry lies in `A_(r_i - c_j)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, GradedAlgebra};
use crate::error::{Error, Result};
use crate::fdalg::FdAlgebra;
use crate::field::Scalar;
use crate::grading::Degree;
use crate::linalg::{CoordinateSolver, EchelonBasis, Matrix};

/// Move an element between two algebras sharing basis labels, dropping
/// labels the target lacks.
pub fn transfer(e: &Element, from: &GradedAlgebra, to: &GradedAlgebra) -> Element {
    if from == to {
        return e.clone();
    }
    let cf = from.component(&e.degree);
    let ct = to.component(&e.degree);
    let mut out = to.zero_element(&e.degree);
    for (l, c) in cf.labels().iter().zip(&e.coords) {
        if let Some(k) = ct.position(l) {
            out.coords[k] = c.clone();
        }
    }
    out
}

/// Block offsets of `sum_i A_(shifts_i + h)`.
pub(crate) fn offsets(alg: &GradedAlgebra, shifts: &[Degree], h: &Degree) -> Vec<usize> {
    let mut out = vec![0];
    for s in shifts {
        let d = alg.component_dim(&alg.group().add(s, h));
        out.push(out.last().unwrap() + d);
    }
    out
}

fn transfer_vector(v: &[Scalar], shifts: &[Degree], h: &Degree, from: &GradedAlgebra, to: &GradedAlgebra) -> Vec<Scalar> {
    if from == to {
        return v.to_vec();
    }
    let g = from.group();
    let off = offsets(from, shifts, h);
    let mut out = Vec::new();
    for (i, s) in shifts.iter().enumerate() {
        let d = g.add(s, h);
        let block = Element {
            degree: d.clone(),
            coords: v[off[i]..off[i + 1]].to_vec(),
        };
        out.extend(transfer(&block, from, to).coords);
    }
    out
}

/// A matrix of homogeneous elements defining a degree-0 map between free
/// modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMatrix {
    algebra: GradedAlgebra,
    rows: Vec<Degree>,
    cols: Vec<Degree>,
    entries: Vec<Element>,
}

impl HomMatrix {
    pub fn zero(algebra: &GradedAlgebra, rows: &[Degree], cols: &[Degree]) -> HomMatrix {
        let g = algebra.group();
        let entries = rows
            .iter()
            .flat_map(|r| cols.iter().map(move |c| algebra.zero_element(&g.sub(r, c))))
            .collect();
        HomMatrix {
            algebra: algebra.clone(),
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries,
        }
    }

    pub fn identity(algebra: &GradedAlgebra, shifts: &[Degree]) -> HomMatrix {
        let mut m = HomMatrix::zero(algebra, shifts, shifts);
        for i in 0..shifts.len() {
            m.entries[i * shifts.len() + i] = algebra.one();
        }
        m
    }

    /// Entries given as coefficient lists in the component bases.
    pub fn from_coefficients(
        algebra: &GradedAlgebra,
        rows: &[Degree],
        cols: &[Degree],
        coeffs: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<HomMatrix> {
        if coeffs.len() != rows.len() || coeffs.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::Shape(format!(
                "expected a {}x{} matrix of coefficient lists",
                rows.len(),
                cols.len()
            )));
        }
        let g = algebra.group();
        let mut entries = Vec::new();
        for (i, row) in coeffs.into_iter().enumerate() {
            for (j, c) in row.into_iter().enumerate() {
                let d = g.sub(&rows[i], &cols[j]);
                let c = if c.is_empty() {
                    vec![algebra.field().zero(); algebra.component_dim(&d)]
                } else {
                    c
                };
                entries.push(algebra.element(&d, c).map_err(|e| {
                    Error::Shape(format!("entry ({},{}) of degree {d}: {e}", i + 1, j + 1))
                })?);
            }
        }
        Ok(HomMatrix {
            algebra: algebra.clone(),
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries,
        })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn rows(&self) -> &[Degree] {
        &self.rows
    }

    pub fn cols(&self) -> &[Degree] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.cols.len() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Element) -> Result<()> {
        let d = self.algebra.group().sub(&self.rows[i], &self.cols[j]);
        if e.degree != d {
            return Err(Error::InvalidDegree(format!(
                "entry ({i},{j}) must have degree {d}, got {}",
                e.degree
            )));
        }
        let k = i * self.cols.len() + j;
        self.entries[k] = e;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn coefficient_lists(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.rows.len())
            .map(|i| (0..self.cols.len()).map(|j| self.get(i, j).coords.clone()).collect())
            .collect()
    }

    pub fn mul(&self, other: &HomMatrix) -> HomMatrix {
        assert_eq!(self.cols, other.rows, "composing maps with mismatched shifts");
        let alg = &self.algebra;
        let mut out = HomMatrix::zero(alg, &self.rows, &other.cols);
        let n = self.cols.len();
        for i in 0..self.rows.len() {
            for k in 0..other.cols.len() {
                let mut acc = out.entries[i * other.cols.len() + k].clone();
                for j in 0..n {
                    let a = self.get(i, j);
                    let b = other.get(j, k);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = alg.add(&acc, &alg.mul(a, b));
                }
                out.entries[i * other.cols.len() + k] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &HomMatrix) -> HomMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        HomMatrix {
            algebra: self.algebra.clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| self.algebra.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> HomMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            for x in e.coords.iter_mut() {
                *x = &*x * c;
            }
        }
        out
    }

    pub fn sub(&self, other: &HomMatrix) -> HomMatrix {
        self.add(&other.scale(&-self.algebra.field().one()))
    }

    /// Entrywise transfer to an algebra sharing basis labels.
    pub fn transfer_to(&self, to: &GradedAlgebra) -> HomMatrix {
        HomMatrix {
            algebra: to.clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(|e| transfer(e, &self.algebra, to)).collect(),
        }
    }

    /// All coordinates, entry by entry.
    pub fn flat(&self) -> Vec<Scalar> {
        self.entries.iter().flat_map(|e| e.coords.iter().cloned()).collect()
    }

    fn from_flat(algebra: &GradedAlgebra, rows: &[Degree], cols: &[Degree], v: &[Scalar]) -> HomMatrix {
        let mut m = HomMatrix::zero(algebra, rows, cols);
        let mut pos = 0;
        for e in m.entries.iter_mut() {
            let d = e.coords.len();
            e.coords = v[pos..pos + d].to_vec();
            pos += d;
        }
        m
    }

    fn flat_dim(algebra: &GradedAlgebra, rows: &[Degree], cols: &[Degree]) -> usize {
        let g = algebra.group();
        rows.iter()
            .flat_map(|r| cols.iter().map(move |c| algebra.component_dim(&g.sub(r, c))))
            .sum()
    }

    /// The linear map `sum_j A_(c_j+h) -> sum_i A_(r_i+h)`.
    pub fn component_matrix(&self, h: &Degree) -> Matrix {
        let alg = &self.algebra;
        let g = alg.group();
        let ro = offsets(alg, &self.rows, h);
        let co = offsets(alg, &self.cols, h);
        let mut m = Matrix::zeros(alg.field(), *ro.last().unwrap(), *co.last().unwrap());
        for i in 0..self.rows.len() {
            for j in 0..self.cols.len() {
                let e = self.get(i, j);
                if e.is_zero() || ro[i + 1] == ro[i] || co[j + 1] == co[j] {
                    continue;
                }
                let block = alg.left_mul_matrix(e, &g.add(&self.cols[j], h));
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        let x = block.get(r, c);
                        if !x.is_zero() {
                            m.set(ro[i] + r, co[j] + c, x.clone());
                        }
                    }
                }
            }
        }
        m
    }

    /// Keep the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> HomMatrix {
        let r: Vec<Degree> = rows.iter().map(|&i| self.rows[i].clone()).collect();
        let c: Vec<Degree> = cols.iter().map(|&j| self.cols[j].clone()).collect();
        let mut out = HomMatrix::zero(&self.algebra, &r, &c);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.entries[a * c.len() + b] = self.get(i, j).clone();
            }
        }
        out
    }

    fn block_diagonal(a: &HomMatrix, b: &HomMatrix) -> HomMatrix {
        let rows: Vec<Degree> = a.rows.iter().chain(&b.rows).cloned().collect();
        let cols: Vec<Degree> = a.cols.iter().chain(&b.cols).cloned().collect();
        let mut out = HomMatrix::zero(&a.algebra, &rows, &cols);
        let nc = cols.len();
        for i in 0..a.rows.len() {
            for j in 0..a.cols.len() {
                out.entries[i * nc + j] = a.get(i, j).clone();
            }
        }
        for i in 0..b.rows.len() {
            for j in 0..b.cols.len() {
                out.entries[(a.rows.len() + i) * nc + a.cols.len() + j] = b.get(i, j).clone();
            }
        }
        out
    }

    fn shifted(&self, g: &Degree) -> HomMatrix {
        let grp = self.algebra.group();
        HomMatrix {
            algebra: self.algebra.clone(),
            rows: self.rows.iter().map(|r| grp.add(r, g)).collect(),
            cols: self.cols.iter().map(|c| grp.add(c, g)).collect(),
            entries: self.entries.clone(),
        }
    }
}

struct PresentationInner {
    algebra: GradedAlgebra,
    shifts: Vec<Degree>,
    idem: HomMatrix,
    bases: Mutex<HashMap<Degree, Arc<Vec<Vec<Scalar>>>>>,
}

/// `P = e (A(g_1) + ... + A(g_k))`.
#[derive(Clone)]
pub struct ProjectivePresentation(Arc<PresentationInner>);

impl std::fmt::Debug for ProjectivePresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProjectivePresentation")
            .field("algebra", &self.0.algebra)
            .field("shifts", &self.0.shifts)
            .field("idem", &self.0.idem.coefficient_lists())
            .finish()
    }
}

impl PartialEq for ProjectivePresentation {
    fn eq(&self, other: &ProjectivePresentation) -> bool {
        self.0.algebra == other.0.algebra && self.0.shifts == other.0.shifts && self.0.idem == other.0.idem
    }
}

impl ProjectivePresentation {
    pub fn new(algebra: &GradedAlgebra, shifts: Vec<Degree>, idem: HomMatrix) -> Result<ProjectivePresentation> {
        if idem.rows != shifts || idem.cols != shifts {
            return Err(Error::Shape("idempotent shifts do not match the ambient module".into()));
        }
        if &idem.algebra != algebra {
            return Err(Error::AlgebraMismatch("idempotent entries live in another algebra".into()));
        }
        if idem.mul(&idem) != idem {
            return Err(Error::Invariant("presentation matrix is not idempotent (e*e != e)".into()));
        }
        Ok(ProjectivePresentation::unchecked(algebra, shifts, idem))
    }

    fn unchecked(algebra: &GradedAlgebra, shifts: Vec<Degree>, idem: HomMatrix) -> ProjectivePresentation {
        ProjectivePresentation(Arc::new(PresentationInner {
            algebra: algebra.clone(),
            shifts,
            idem,
            bases: Mutex::new(HashMap::new()),
        }))
    }

    pub fn free(algebra: &GradedAlgebra, shifts: Vec<Degree>) -> ProjectivePresentation {
        let idem = HomMatrix::identity(algebra, &shifts);
        ProjectivePresentation::unchecked(algebra, shifts, idem)
    }

    /// `A` as a right module over itself.
    pub fn regular(algebra: &GradedAlgebra) -> ProjectivePresentation {
        ProjectivePresentation::free(algebra, vec![algebra.group().zero()])
    }

    pub fn zero(algebra: &GradedAlgebra) -> ProjectivePresentation {
        ProjectivePresentation::free(algebra, Vec::new())
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.0.algebra
    }

    pub fn shifts(&self) -> &[Degree] {
        &self.0.shifts
    }

    pub fn idempotent(&self) -> &HomMatrix {
        &self.0.idem
    }

    pub fn ambient_rank(&self) -> usize {
        self.0.shifts.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.idem.is_zero()
    }

    /// Basis of `P_h` as vectors in the ambient component: the pivot columns
    /// of `e_h`.
    pub fn component_basis(&self, h: &Degree) -> Arc<Vec<Vec<Scalar>>> {
        if let Some(b) = self.0.bases.lock().unwrap().get(h) {
            return b.clone();
        }
        let eh = self.0.idem.component_matrix(h);
        let (_, pivots) = eh.rref();
        let basis: Vec<Vec<Scalar>> = pivots.iter().map(|&c| eh.column(c)).collect();
        let basis = Arc::new(basis);
        self.0.bases.lock().unwrap().insert(h.clone(), basis.clone());
        basis
    }

    pub fn component_dim(&self, h: &Degree) -> usize {
        self.component_basis(h).len()
    }

    /// `P(g)`, with `P(g)_h = P_(g+h)`.
    pub fn shift(&self, g: &Degree) -> ProjectivePresentation {
        let grp = self.algebra().group();
        let shifts = self.0.shifts.iter().map(|s| grp.add(s, g)).collect();
        ProjectivePresentation::unchecked(self.algebra(), shifts, self.0.idem.shifted(g))
    }

    pub fn direct_sum(&self, other: &ProjectivePresentation) -> Result<ProjectivePresentation> {
        if self.algebra() != other.algebra() {
            return Err(Error::AlgebraMismatch("direct sum of modules over different algebras".into()));
        }
        let shifts = self.0.shifts.iter().chain(&other.0.shifts).cloned().collect();
        let idem = HomMatrix::block_diagonal(&self.0.idem, &other.0.idem);
        Ok(ProjectivePresentation::unchecked(self.algebra(), shifts, idem))
    }

    /// Drop ambient summands on which the idempotent vanishes identically.
    pub fn trim(&self) -> ProjectivePresentation {
        let n = self.ambient_rank();
        let e = &self.0.idem;
        let keep: Vec<usize> = (0..n)
            .filter(|&i| (0..n).any(|j| !e.get(i, j).is_zero() || !e.get(j, i).is_zero()))
            .collect();
        if keep.len() == n {
            return self.clone();
        }
        let shifts = keep.iter().map(|&i| self.0.shifts[i].clone()).collect();
        ProjectivePresentation::unchecked(self.algebra(), shifts, e.select(&keep, &keep))
    }

    /// Presentation with the same ambient module and another idempotent.
    pub fn with_idempotent(&self, idem: HomMatrix) -> ProjectivePresentation {
        ProjectivePresentation::unchecked(self.algebra(), self.0.shifts.clone(), idem)
    }

    pub fn is_idempotent(&self) -> bool {
        self.0.idem.mul(&self.0.idem) == self.0.idem
    }

    /// Default verification window: the exact support box where the algebra
    /// is bounded, otherwise `radius` beyond the generator degrees.
    pub fn window(&self, radius: Option<i64>) -> Window {
        let alg = self.algebra();
        let r = radius.unwrap_or(alg.generator_span() + 2);
        let rank = alg.group().rank();
        let mut lo = vec![0; rank];
        let mut hi = vec![0; rank];
        for c in 0..rank {
            let vals: Vec<i64> = self.0.shifts.iter().map(|s| s.free()[c]).collect();
            let (gmin, gmax) = (
                vals.iter().copied().min().unwrap_or(0),
                vals.iter().copied().max().unwrap_or(0),
            );
            let (alo, ahi) = alg.bounds()[c];
            lo[c] = match alo {
                Some(l) if radius.is_none() => l - gmax,
                _ => -gmax - r,
            };
            hi[c] = match ahi {
                Some(h) if radius.is_none() => h - gmin,
                _ => lo[c].max(-gmin) + r,
            };
            if hi[c] < lo[c] {
                hi[c] = lo[c];
            }
        }
        Window { lo, hi }
    }

    /// Component dimensions over a window.
    pub fn dims(&self, w: &Window) -> Vec<usize> {
        w.degrees(self.algebra()).iter().map(|h| self.component_dim(h)).collect()
    }

    /// Ranks of right multiplication by each basis element of `A_0` on the
    /// components in the window: an isomorphism invariant.
    fn action_signature(&self, w: &Window) -> Vec<usize> {
        let alg = self.algebra();
        let g = alg.group();
        let z = g.zero();
        let mut out = Vec::new();
        for k in 0..alg.component_dim(&z) {
            let a = alg.basis_element(&z, k);
            for h in w.degrees(alg) {
                let basis = self.component_basis(&h);
                if basis.is_empty() {
                    out.push(0);
                    continue;
                }
                let cols: Vec<Vec<Scalar>> = basis
                    .iter()
                    .map(|v| right_multiply(alg, self.shifts(), &h, v, &a))
                    .collect();
                out.push(Matrix::from_columns(alg.field(), &cols, cols[0].len()).rank());
            }
        }
        out
    }
}

/// `v * a` for `v` in the ambient component at `h`.
fn right_multiply(alg: &GradedAlgebra, shifts: &[Degree], h: &Degree, v: &[Scalar], a: &Element) -> Vec<Scalar> {
    let g = alg.group();
    let off = offsets(alg, shifts, h);
    let mut out = Vec::new();
    for (i, s) in shifts.iter().enumerate() {
        let d = g.add(s, h);
        let m = alg.right_mul_matrix(a, &d);
        out.extend(m.mul_vec(&v[off[i]..off[i + 1]]));
    }
    out
}

/// A box of degrees: free coordinates in `[lo, hi]`, all torsion values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn degrees(&self, alg: &GradedAlgebra) -> Vec<Degree> {
        alg.group().boxed(&self.lo, &self.hi)
    }

    pub fn union(&self, other: &Window) -> Window {
        Window {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| *a.min(b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| *a.max(b)).collect(),
        }
    }
}

/// A degree-0 map between presented modules. The matrix lives over the
/// target's algebra unless stated otherwise; source vectors are moved into
/// the matrix algebra by label.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub source: ProjectivePresentation,
    pub target: ProjectivePresentation,
    pub matrix: HomMatrix,
}

impl GradedMap {
    pub fn new(source: &ProjectivePresentation, target: &ProjectivePresentation, matrix: HomMatrix) -> Result<GradedMap> {
        if matrix.rows() != target.shifts() || matrix.cols() != source.shifts() {
            return Err(Error::Shape("map matrix does not match the ambient shifts".into()));
        }
        Ok(GradedMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(p: &ProjectivePresentation) -> GradedMap {
        GradedMap {
            source: p.clone(),
            target: p.clone(),
            matrix: p.idempotent().clone(),
        }
    }

    pub fn zero(p: &ProjectivePresentation, q: &ProjectivePresentation) -> GradedMap {
        GradedMap {
            source: p.clone(),
            target: q.clone(),
            matrix: HomMatrix::zero(q.algebra(), q.shifts(), p.shifts()),
        }
    }

    /// Whether `f = e_target f e_source` (same algebra only).
    pub fn is_compatible(&self) -> bool {
        if self.source.algebra() != self.target.algebra() || self.matrix.algebra() != self.target.algebra() {
            return true;
        }
        let m = self.target.idempotent().mul(&self.matrix).mul(self.source.idempotent());
        m == self.matrix
    }

    /// The linear map `P_h -> Q_h` in the pivot bases.
    pub fn component_matrix(&self, h: &Degree) -> Result<Matrix> {
        let src_alg = self.source.algebra();
        let mat_alg = self.matrix.algebra();
        let tgt_alg = self.target.algebra();
        let field = tgt_alg.field();
        let sb = self.source.component_basis(h);
        let tb = self.target.component_basis(h);
        let mh = self.matrix.component_matrix(h);
        let tdim = *offsets(tgt_alg, self.target.shifts(), h).last().unwrap();
        let solver = CoordinateSolver::new(field, &tb, tdim);
        let mut cols = Vec::with_capacity(sb.len());
        for v in sb.iter() {
            let lifted = transfer_vector(v, self.source.shifts(), h, src_alg, mat_alg);
            let image = mh.mul_vec(&lifted);
            let image = transfer_vector(&image, self.target.shifts(), h, mat_alg, tgt_alg);
            let c = solver.coords(&image).ok_or_else(|| {
                Error::Invariant(format!("map does not land in the target module in degree {h}"))
            })?;
            cols.push(c);
        }
        let mut m = Matrix::zeros(field, tb.len(), sb.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn compose(&self, before: &GradedMap) -> GradedMap {
        GradedMap {
            source: before.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&before.matrix.transfer_to(self.matrix.algebra())),
        }
    }

    /// Invertible on every component of the window.
    pub fn is_iso_on(&self, degrees: &[Degree]) -> Result<bool> {
        for h in degrees {
            let m = self.component_matrix(h)?;
            if !m.is_square() || !m.is_invertible() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `T(P) = P / P A_+`: apply the projection entrywise. The result is a
/// module over `A_(0,-)` graded by the full group.
pub fn functor_t(p: &ProjectivePresentation) -> Result<ProjectivePresentation> {
    let zs = p.algebra().zero_sub()?;
    let idem = p.idempotent().transfer_to(&zs);
    Ok(ProjectivePresentation::unchecked(&zs, p.shifts().to_vec(), idem))
}

/// `S(Q) = Q (x) A`: reinterpret the entries in `A`.
pub fn functor_s(q: &ProjectivePresentation) -> Result<ProjectivePresentation> {
    let parent = q
        .algebra()
        .restriction_parent()
        .ok_or_else(|| Error::AlgebraMismatch(format!("{} is not a zero part", q.algebra())))?
        .clone();
    let idem = q.idempotent().transfer_to(&parent);
    Ok(ProjectivePresentation::unchecked(&parent, q.shifts().to_vec(), idem))
}

/// `nu: TS(Q) -> Q`.
pub fn nu(q: &ProjectivePresentation) -> Result<GradedMap> {
    let ts = functor_t(&functor_s(q)?)?;
    GradedMap::new(&ts, q, q.idempotent().clone())
}

/// The random degree-0 perturbation `z` with entries in `A_+`.
fn positive_perturbation(p: &ProjectivePresentation, rng: &mut ChaCha8Rng) -> HomMatrix {
    let alg = p.algebra();
    let g = alg.group();
    let s = p.shifts();
    let mut z = HomMatrix::zero(alg, s, s);
    for i in 0..s.len() {
        for j in 0..s.len() {
            let d = g.sub(&s[i], &s[j]);
            if d.omega().unwrap_or(0) > 0 {
                z.set(i, j, alg.random_element(&d, rng)).unwrap();
            }
        }
    }
    z
}

/// The projection `f: P -> T(P)`.
pub fn projection_to_t(p: &ProjectivePresentation) -> Result<GradedMap> {
    let t = functor_t(p)?;
    GradedMap::new(p, &t, t.idempotent().clone())
}

/// A degree-0 section `g: T(P) -> P` of the projection, `x -> e(1+z)x` with
/// `z` a random matrix over `A_+` drawn from `seed` (seed 0 gives `z = 0`).
pub fn section(p: &ProjectivePresentation, seed: u64) -> Result<GradedMap> {
    let t = functor_t(p)?;
    GradedMap::new(&t, p, section_matrix(p, seed))
}

fn section_matrix(p: &ProjectivePresentation, seed: u64) -> HomMatrix {
    let alg = p.algebra();
    let e = p.idempotent();
    let mut lift = HomMatrix::identity(alg, p.shifts());
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        lift = lift.add(&positive_perturbation(p, &mut rng));
    }
    let pe = e.transfer_to(&alg.zero_sub().expect("graded by a group with an integer factor")).transfer_to(alg);
    e.mul(&lift).mul(&pe)
}

/// `psi: ST(P) -> P`, `x (x) a -> g(x) a`.
pub fn psi(p: &ProjectivePresentation, seed: u64) -> Result<GradedMap> {
    let st = functor_s(&functor_t(p)?)?;
    GradedMap::new(&st, p, section_matrix(p, seed))
}

/// `T` applied to a map between modules over `A`.
pub fn functor_t_map(f: &GradedMap) -> Result<GradedMap> {
    let src = functor_t(&f.source)?;
    let tgt = functor_t(&f.target)?;
    GradedMap::new(&src, &tgt, f.matrix.transfer_to(tgt.algebra()))
}

/// The space of degree-0 homomorphisms `P -> Q` as a basis of matrices
/// `e_Q M e_P`.
pub fn hom_space(p: &ProjectivePresentation, q: &ProjectivePresentation) -> Vec<HomMatrix> {
    let alg = p.algebra();
    let rows = q.shifts();
    let cols = p.shifts();
    let n = HomMatrix::flat_dim(alg, rows, cols);
    let mut ech = EchelonBasis::new(alg.field(), n);
    let mut out = Vec::new();
    for k in 0..n {
        let mut v = vec![alg.field().zero(); n];
        v[k] = alg.field().one();
        let b = HomMatrix::from_flat(alg, rows, cols, &v);
        let m = q.idempotent().mul(&b).mul(p.idempotent());
        if ech.insert(&m.flat()) {
            out.push(m);
        }
    }
    out
}

/// `End(P)_0` as a finite-dimensional algebra, with its basis.
pub fn end_algebra(p: &ProjectivePresentation) -> (FdAlgebra, Vec<HomMatrix>) {
    let alg = p.algebra();
    let basis = hom_space(p, p);
    let k = basis.len();
    let n = HomMatrix::flat_dim(alg, p.shifts(), p.shifts());
    let flats: Vec<Vec<Scalar>> = basis.iter().map(|b| b.flat()).collect();
    let solver = CoordinateSolver::new(alg.field(), &flats, n);
    let mut table = Vec::with_capacity(k * k);
    for a in &basis {
        for b in &basis {
            table.push(solver.coords(&a.mul(b).flat()).expect("End(P) closed under composition"));
        }
    }
    let one = solver.coords(&p.idempotent().flat()).unwrap_or_else(|| vec![alg.field().zero(); k]);
    (FdAlgebra::new(alg.field(), k, table, one), basis)
}

fn combine_basis(coords: &[Scalar], basis: &[HomMatrix], fallback: &HomMatrix) -> HomMatrix {
    let mut out = HomMatrix::zero(fallback.algebra(), fallback.rows(), fallback.cols());
    for (c, b) in coords.iter().zip(basis) {
        if !c.is_zero() {
            out = out.add(&b.scale(c));
        }
    }
    out
}

/// Indecomposable summands, trimmed, in a canonical order.
pub fn summands(p: &ProjectivePresentation, seed: u64) -> Result<Vec<ProjectivePresentation>> {
    if p.is_zero() {
        return Ok(Vec::new());
    }
    let (fd, basis) = end_algebra(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idems = fd.primitive_idempotents(&mut rng)?;
    let mut out: Vec<ProjectivePresentation> = idems
        .iter()
        .map(|c| p.with_idempotent(combine_basis(c, &basis, p.idempotent())).trim())
        .collect();
    for s in &out {
        if !s.is_idempotent() {
            return Err(Error::Internal("splitting produced a non-idempotent summand".into()));
        }
    }
    let w = p.window(None);
    let mut keyed: Vec<(SummandKey, ProjectivePresentation)> =
        out.drain(..).map(|s| (SummandKey::new(&s, &w), s)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, s)| s).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct SummandKey {
    first: usize,
    dims: Vec<usize>,
    signature: Vec<usize>,
}

impl SummandKey {
    fn new(s: &ProjectivePresentation, w: &Window) -> SummandKey {
        let dims = s.dims(w);
        let first = dims.iter().position(|&d| d > 0).unwrap_or(usize::MAX);
        SummandKey {
            first,
            dims,
            signature: s.action_signature(w),
        }
    }
}

/// Summands grouped into isomorphism classes, with multiplicities.
pub fn decompose(p: &ProjectivePresentation, seed: u64) -> Result<Vec<(ProjectivePresentation, usize)>> {
    let mut out: Vec<(ProjectivePresentation, usize)> = Vec::new();
    for s in summands(p, seed)? {
        match out.iter_mut().find(|(x, _)| indecomposables_iso(x, &s)) {
            Some(entry) => entry.1 += 1,
            None => out.push((s, 1)),
        }
    }
    Ok(out)
}

fn is_nilpotent_endo(u: &HomMatrix, dim: usize) -> bool {
    let mut power = u.clone();
    let mut e = 1usize;
    while e < dim.max(1) {
        power = power.mul(&power);
        e *= 2;
        if power.is_zero() {
            return true;
        }
    }
    power.is_zero()
}

/// Isomorphism test for indecomposables: some composite `X -> Y -> X` is a
/// unit of the local ring `End(X)_0`.
pub fn indecomposables_iso(x: &ProjectivePresentation, y: &ProjectivePresentation) -> bool {
    if x.algebra() != y.algebra() {
        return false;
    }
    let w = x.window(None).union(&y.window(None));
    if x.dims(&w) != y.dims(&w) {
        return false;
    }
    let fs = hom_space(x, y);
    if fs.is_empty() {
        return false;
    }
    let gs = hom_space(y, x);
    let end_dim = hom_space(x, x).len();
    for f in &fs {
        for g in &gs {
            if !is_nilpotent_endo(&g.mul(f), end_dim) {
                return true;
            }
        }
    }
    false
}

/// Graded isomorphism via Krull–Schmidt: summands must match as multisets.
pub fn graded_iso(p: &ProjectivePresentation, q: &ProjectivePresentation, seed: u64) -> Result<bool> {
    if p.algebra() != q.algebra() {
        return Ok(false);
    }
    let a = decompose(p, seed)?;
    let b = decompose(q, seed)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for (x, m) in &a {
        let hit = b
            .iter()
            .enumerate()
            .find(|(k, (y, n))| !used[*k] && n == m && indecomposables_iso(x, y));
        match hit {
            Some((k, _)) => used[k] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// A random projective: `e = u e0 u^-1` where `u = 1 + N` with `N` strictly
/// upper triangular and `e0` diagonal with idempotent basis elements of `A_0`.
pub fn random_projective(
    alg: &GradedAlgebra,
    rank: usize,
    shift_radius: i64,
    rng: &mut ChaCha8Rng,
) -> ProjectivePresentation {
    let g = alg.group();
    let shifts: Vec<Degree> = (0..rank)
        .map(|_| {
            let free: Vec<i64> = (0..g.rank()).map(|_| rng.gen_range(-shift_radius..=shift_radius)).collect();
            let tors: Vec<i64> = g.moduli().iter().map(|&n| rng.gen_range(0..n as i64)).collect();
            g.degree(free, tors).unwrap()
        })
        .collect();
    let mut idems = alg.idempotent_labels();
    idems.push(alg.one());
    let mut e0 = HomMatrix::zero(alg, &shifts, &shifts);
    let mut any = false;
    for i in 0..rank {
        let pick = rng.gen_range(0..=idems.len());
        if pick < idems.len() {
            e0.set(i, i, idems[pick].clone()).unwrap();
            any = true;
        }
    }
    if !any && rank > 0 {
        e0.set(0, 0, alg.one()).unwrap();
    }
    let mut n = HomMatrix::zero(alg, &shifts, &shifts);
    for i in 0..rank {
        for j in i + 1..rank {
            let d = g.sub(&shifts[i], &shifts[j]);
            n.set(i, j, alg.random_element(&d, rng)).unwrap();
        }
    }
    let id = HomMatrix::identity(alg, &shifts);
    let u = id.add(&n);
    let minus_n = n.scale(&-alg.field().one());
    let mut u_inv = id.clone();
    let mut power = id;
    for _ in 1..rank.max(1) {
        power = power.mul(&minus_n);
        u_inv = u_inv.add(&power);
    }
    let e = u.mul(&e0).mul(&u_inv);
    debug_assert_eq!(e.mul(&e), e);
    ProjectivePresentation::unchecked(alg, shifts, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::grading::GradingGroup;

    fn qx() -> GradedAlgebra {
        GradedAlgebra::poly(&GradedAlgebra::base_field(Field::Rationals), &[1]).unwrap()
    }

    fn d(x: i64) -> Degree {
        GradingGroup::integers().degree(vec![x], vec![]).unwrap()
    }

    #[test]
    fn shift_moves_components() {
        let a = qx();
        let p = ProjectivePresentation::regular(&a);
        let q = p.shift(&d(3));
        for h in -5..5 {
            assert_eq!(q.component_dim(&d(h)), a.component_dim(&d(3 + h)));
        }
        assert_eq!(p.shift(&d(0)), p);
        assert_eq!(p.shift(&d(2)).shift(&d(-2)), p);
    }

    #[test]
    fn t_of_shifted_polynomial_ring() {
        let p = ProjectivePresentation::free(&qx(), vec![d(-2)]);
        let t = functor_t(&p).unwrap();
        for h in -4..6 {
            assert_eq!(t.component_dim(&d(h)), usize::from(h == 2), "degree {h}");
        }
    }

    #[test]
    fn free_module_splits_by_generator_degree() {
        let p = ProjectivePresentation::free(&qx(), vec![d(0), d(-1)]);
        let parts = decompose(&p, 0).unwrap();
        assert_eq!(parts.len(), 2);
        let a0 = ProjectivePresentation::regular(&qx());
        let a1 = a0.shift(&d(-1));
        assert!(!graded_iso(&a0, &a1, 0).unwrap());
        assert!(graded_iso(&p, &a0.direct_sum(&a1).unwrap(), 0).unwrap());
        assert!(decompose(&ProjectivePresentation::zero(&qx()), 0).unwrap().is_empty());
    }

    #[test]
    fn psi_is_an_isomorphism() {
        let a = qx();
        let p = ProjectivePresentation::free(&a, vec![d(-1)]);
        let w = p.window(None).degrees(&a);
        for seed in 0..3 {
            let f = psi(&p, seed).unwrap();
            assert!(f.is_iso_on(&w).unwrap());
        }
    }

    #[test]
    fn corrupted_idempotent_is_rejected() {
        let a = qx();
        let s = vec![d(0)];
        let two = HomMatrix::identity(&a, &s).scale(&Field::Rationals.from_i64(2));
        assert!(matches!(ProjectivePresentation::new(&a, s, two), Err(Error::Invariant(_))));
    }
}
