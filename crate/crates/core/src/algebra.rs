//! Degreewise finite-dimensional graded algebras built from a closed family
//! of constructors. Every algebra answers component and multiplication
//! queries lazily; results are cached behind a mutex.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::grading::{Degree, GradingGroup, GroupHom};
use crate::linalg::{EchelonBasis, Matrix};

/// Basis labels. Products of labels are linear combinations of labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Unit(usize, usize),
    Group(Degree),
    Poly(Box<Label>, u32),
    Tensor(Box<Label>, Box<Label>),
    Left(Box<Label>),
    Right(Box<Label>),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Unit(i, j) => write!(f, "e{}_{}", i + 1, j + 1),
            Label::Group(d) => write!(f, "g{d}"),
            Label::Poly(l, 0) => write!(f, "{l}"),
            Label::Poly(l, k) => write!(f, "{l}.t^{k}"),
            Label::Tensor(a, b) => write!(f, "({a} (x) {b})"),
            Label::Left(l) => write!(f, "L:{l}"),
            Label::Right(l) => write!(f, "R:{l}"),
        }
    }
}

type Terms = Vec<(Label, Scalar)>;

/// Per free coordinate, inclusive lower and upper support bounds.
pub type Bounds = Vec<(Option<i64>, Option<i64>)>;

#[derive(Debug)]
pub struct Component {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
}

impl Component {
    fn new(mut labels: Vec<Label>) -> Component {
        labels.sort();
        labels.dedup();
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Component { labels, index }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn position(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }
}

/// Sparse structure constants between two components:
/// `table[i][j]` lists `(k, c)` with `b_i * b_j = sum c * b_k`.
pub type MulTable = Vec<Vec<Vec<(usize, Scalar)>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Matrix { shifts: Vec<Degree>, lower_only: bool },
    Poly { base: GradedAlgebra, var: Degree, embed: GroupHom },
    GroupAlgebra,
    Tensor(GradedAlgebra, GradedAlgebra),
    Product(GradedAlgebra, GradedAlgebra),
    Restrict { inner: GradedAlgebra, inclusion: GroupHom, keep_grading: bool },
    Regrade { inner: GradedAlgebra, hom: GroupHom },
}

struct Node {
    field: Field,
    group: GradingGroup,
    kind: Kind,
    bounds: Bounds,
    components: Mutex<HashMap<Degree, Arc<Component>>>,
    tables: Mutex<HashMap<(Degree, Degree), Arc<MulTable>>>,
    support: OnceLock<Option<Vec<Degree>>>,
    regrade_fibres: OnceLock<BTreeMap<Degree, Vec<Degree>>>,
}

/// A graded algebra handle; cheap to clone.
#[derive(Clone)]
pub struct GradedAlgebra(Arc<Node>);

impl PartialEq for GradedAlgebra {
    fn eq(&self, other: &GradedAlgebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.group == other.0.group && self.0.kind == other.0.kind)
    }
}

impl Eq for GradedAlgebra {}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedAlgebra({self})")
    }
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = &self.0.group;
        let plain_z = group.rank() == 1 && group.moduli().is_empty();
        let list = |ds: &[Degree]| {
            ds.iter()
                .map(|d| if plain_z { d.free()[0].to_string() } else { d.to_string() })
                .collect::<Vec<_>>()
                .join(", ")
        };
        match &self.0.kind {
            Kind::Matrix { shifts, lower_only: false } if shifts.len() == 1 && group.is_trivial() => {
                write!(f, "{}", self.0.field)
            }
            Kind::Matrix { shifts, lower_only } => {
                let name = if *lower_only { "triangular" } else { "matrix" };
                write!(f, "{name}({}, [{}]", self.0.field, list(shifts))?;
                if !plain_z {
                    write!(f, ", group={group}")?;
                }
                write!(f, ")")
            }
            Kind::Poly { base, var, .. } => write!(f, "poly({base}, deg={var})"),
            Kind::GroupAlgebra => write!(f, "groupalg({}, {group})", self.0.field),
            Kind::Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            Kind::Product(a, b) => write!(f, "product({a}, {b})"),
            Kind::Restrict { inner, inclusion, keep_grading: false } if *inclusion == inner.group().drop_free(0).1 => {
                write!(f, "zero_part({inner})")
            }
            Kind::Restrict { inner, keep_grading: false, .. } => write!(f, "restrict({inner}, {group})"),
            Kind::Restrict { inner, .. } => write!(f, "zero_sub({inner})"),
            Kind::Regrade { inner, .. } if group.is_trivial() => write!(f, "forget({inner})"),
            Kind::Regrade { inner, hom } => write!(f, "regrade({inner}, {})", hom.target()),
        }
    }
}

/// A homogeneous element: coordinates in the basis of one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub degree: Degree,
    pub coords: Vec<Scalar>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

fn combine(terms: Terms) -> Terms {
    let mut acc: BTreeMap<Label, Scalar> = BTreeMap::new();
    for (l, c) in terms {
        match acc.get_mut(&l) {
            Some(x) => *x = &*x + &c,
            None => {
                acc.insert(l, c);
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn shifts_bounds(group: &GradingGroup, degrees: &[Degree]) -> Bounds {
    (0..group.rank())
        .map(|c| {
            let vals = degrees.iter().map(|d| d.free()[c]);
            (vals.clone().min(), vals.max())
        })
        .collect()
}

fn add_bound(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

impl GradedAlgebra {
    fn build(field: Field, group: GradingGroup, kind: Kind, bounds: Bounds) -> GradedAlgebra {
        GradedAlgebra(Arc::new(Node {
            field,
            group,
            kind,
            bounds,
            components: Mutex::new(HashMap::new()),
            tables: Mutex::new(HashMap::new()),
            support: OnceLock::new(),
            regrade_fibres: OnceLock::new(),
        }))
    }

    /// The field itself, graded by the trivial group.
    pub fn base_field(field: Field) -> GradedAlgebra {
        GradedAlgebra::matrix(field, GradingGroup::trivial(), vec![GradingGroup::trivial().zero()]).unwrap()
    }

    /// `M_n(F)` with `e_ij` in degree `shifts[i] - shifts[j]`.
    pub fn matrix(field: Field, group: GradingGroup, shifts: Vec<Degree>) -> Result<GradedAlgebra> {
        GradedAlgebra::matrix_like(field, group, shifts, false)
    }

    /// Lower triangular matrices (`e_ij`, `i >= j`) with shifted grading.
    pub fn triangular(field: Field, group: GradingGroup, shifts: Vec<Degree>) -> Result<GradedAlgebra> {
        GradedAlgebra::matrix_like(field, group, shifts, true)
    }

    fn matrix_like(field: Field, group: GradingGroup, shifts: Vec<Degree>, lower_only: bool) -> Result<GradedAlgebra> {
        if shifts.is_empty() {
            return Err(Error::Unsupported("matrix algebra of size 0".into()));
        }
        for s in &shifts {
            if !group.contains(s) {
                return Err(Error::GroupMismatch(format!("shift {s} is not in {group}")));
            }
        }
        let n = shifts.len();
        let mut degs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !lower_only || i >= j {
                    degs.push(group.sub(&shifts[i], &shifts[j]));
                }
            }
        }
        let bounds = shifts_bounds(&group, &degs);
        Ok(GradedAlgebra::build(field, group, Kind::Matrix { shifts, lower_only }, bounds))
    }

    /// The group algebra `F[G]`, graded by `G` itself.
    pub fn group_algebra(field: Field, group: GradingGroup) -> GradedAlgebra {
        let bounds = vec![(None, None); group.rank()];
        GradedAlgebra::build(field, group, Kind::GroupAlgebra, bounds)
    }

    /// `B[t]` with a central variable. If `deg` has one more entry than the
    /// base group has coordinates, a new leading integer coordinate is added
    /// and the base is placed in degree 0 of it.
    pub fn poly(base: &GradedAlgebra, deg: &[i64]) -> Result<GradedAlgebra> {
        let bg = base.group().clone();
        if deg.len() == bg.ngens() {
            let var = bg.degree_from_flat(deg)?;
            return GradedAlgebra::poly_along(base, GroupHom::identity(&bg), var);
        }
        if deg.len() == bg.ngens() + 1 {
            let (target, _, right) = GradingGroup::integers().product(&bg);
            let var = target.degree_from_flat(deg)?;
            return GradedAlgebra::poly_along(base, right, var);
        }
        Err(Error::InvalidDegree(format!(
            "variable degree {deg:?} must have {} or {} entries",
            bg.ngens(),
            bg.ngens() + 1
        )))
    }

    /// `B[t]` graded by the target of `embed`, with `t` in degree `var`.
    pub fn poly_along(base: &GradedAlgebra, embed: GroupHom, var: Degree) -> Result<GradedAlgebra> {
        if embed.source() != base.group() || !embed.is_coordinate_embedding() {
            return Err(Error::GroupMismatch("polynomial base must embed coordinatewise".into()));
        }
        let group = embed.target().clone();
        if !group.contains(&var) {
            return Err(Error::GroupMismatch(format!("variable degree {var} is not in {group}")));
        }
        let base_bounds = transport_bounds(base, &embed);
        let finite = (0..group.rank()).any(|c| {
            let v = var.free()[c];
            (v > 0 && base_bounds[c].0.is_some()) || (v < 0 && base_bounds[c].1.is_some())
        });
        if !finite {
            return Err(Error::Unsupported(format!(
                "variable of degree {var} gives infinite-dimensional components"
            )));
        }
        let bounds = (0..group.rank())
            .map(|c| {
                let v = var.free()[c];
                let (lo, hi) = base_bounds[c];
                (if v >= 0 { lo } else { None }, if v <= 0 { hi } else { None })
            })
            .collect();
        Ok(GradedAlgebra::build(
            base.field(),
            group,
            Kind::Poly { base: base.clone(), var, embed },
            bounds,
        ))
    }

    /// Move an algebra over the trivial group into `group` (support in 0).
    pub fn lift_trivial(a: &GradedAlgebra, group: &GradingGroup) -> Result<GradedAlgebra> {
        if a.group() == group {
            return Ok(a.clone());
        }
        if !a.group().is_trivial() {
            return Err(Error::GroupMismatch(format!("{} vs {group}", a.group())));
        }
        GradedAlgebra::regrade(a, GroupHom::zero(a.group(), group))
    }

    fn align(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<(GradedAlgebra, GradedAlgebra)> {
        if a.field() != b.field() {
            return Err(Error::AlgebraMismatch(format!("fields {} and {}", a.field(), b.field())));
        }
        if a.group() == b.group() {
            Ok((a.clone(), b.clone()))
        } else if a.group().is_trivial() {
            Ok((GradedAlgebra::lift_trivial(a, b.group())?, b.clone()))
        } else if b.group().is_trivial() {
            Ok((a.clone(), GradedAlgebra::lift_trivial(b, a.group())?))
        } else {
            Err(Error::GroupMismatch(format!("{} vs {}", a.group(), b.group())))
        }
    }

    pub fn tensor(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
        let (a, b) = GradedAlgebra::align(a, b)?;
        if !a.has_finite_bounds() && !b.has_finite_bounds() {
            return Err(Error::Unsupported(
                "tensor product needs one factor with bounded support".into(),
            ));
        }
        let bounds = a
            .bounds()
            .iter()
            .zip(b.bounds())
            .map(|(x, y)| (add_bound(x.0, y.0), add_bound(x.1, y.1)))
            .collect();
        Ok(GradedAlgebra::build(a.field(), a.group().clone(), Kind::Tensor(a, b), bounds))
    }

    pub fn product(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
        let (a, b) = GradedAlgebra::align(a, b)?;
        let bounds = a
            .bounds()
            .iter()
            .zip(b.bounds())
            .map(|(x, y)| {
                let lo = match (x.0, y.0) {
                    (Some(p), Some(q)) => Some(p.min(q)),
                    _ => None,
                };
                let hi = match (x.1, y.1) {
                    (Some(p), Some(q)) => Some(p.max(q)),
                    _ => None,
                };
                (lo, hi)
            })
            .collect();
        Ok(GradedAlgebra::build(a.field(), a.group().clone(), Kind::Product(a, b), bounds))
    }

    /// The subalgebra of degrees in the image of a coordinate inclusion,
    /// graded either by the smaller group or (if `keep_grading`) by the
    /// original one.
    fn restrict(a: &GradedAlgebra, inclusion: GroupHom, keep_grading: bool) -> GradedAlgebra {
        let (group, bounds) = if keep_grading {
            let preimage_has = |c: usize| {
                inclusion
                    .coordinate_preimage(&a.group().free_unit(c))
                    .flatten()
                    .is_some()
            };
            let bounds = (0..a.group().rank())
                .map(|c| if preimage_has(c) { a.bounds()[c] } else { (Some(0), Some(0)) })
                .collect();
            (a.group().clone(), bounds)
        } else {
            let src = inclusion.source().clone();
            let bounds = (0..src.rank())
                .map(|c| {
                    let image = inclusion.apply(&src.free_unit(c));
                    let tc = image.free().iter().position(|&x| x != 0).unwrap();
                    a.bounds()[tc]
                })
                .collect();
            (src, bounds)
        };
        GradedAlgebra::build(
            a.field(),
            group,
            Kind::Restrict {
                inner: a.clone(),
                inclusion,
                keep_grading,
            },
            bounds,
        )
    }

    /// `A_(0,-)`: degrees with vanishing first integer coordinate, graded by
    /// the remaining coordinates.
    pub fn zero_part(&self) -> Result<GradedAlgebra> {
        self.zero_part_along(0)
    }

    pub fn zero_part_along(&self, coordinate: usize) -> Result<GradedAlgebra> {
        if coordinate >= self.group().rank() {
            return Err(Error::Unsupported(format!(
                "{} has no integer coordinate {coordinate}",
                self.group()
            )));
        }
        let (_, inclusion) = self.group().drop_free(coordinate);
        Ok(GradedAlgebra::restrict(self, inclusion, false))
    }

    /// `A_(0,-)` graded by the full group, concentrated in first coordinate 0.
    pub fn zero_sub(&self) -> Result<GradedAlgebra> {
        if self.group().rank() == 0 {
            return Err(Error::Unsupported(format!("{} has no integer coordinate", self.group())));
        }
        let (_, inclusion) = self.group().drop_free(0);
        Ok(GradedAlgebra::restrict(self, inclusion, true))
    }

    /// The identity component `A_0`, ungraded.
    pub fn identity_component(&self) -> GradedAlgebra {
        let inclusion = GroupHom::zero(&GradingGroup::trivial(), self.group());
        GradedAlgebra::restrict(self, inclusion, false)
    }

    /// Regrade along a homomorphism. Coordinate embeddings work for any
    /// algebra; other homomorphisms need finite support.
    pub fn regrade(a: &GradedAlgebra, hom: GroupHom) -> Result<GradedAlgebra> {
        if hom.source() != a.group() {
            return Err(Error::GroupMismatch(format!(
                "regrading map starts at {}, algebra is graded by {}",
                hom.source(),
                a.group()
            )));
        }
        let bounds = if hom.is_coordinate_embedding() {
            transport_bounds(a, &hom)
        } else {
            let Some(support) = a.support_degrees() else {
                return Err(Error::Unsupported(
                    "regrading along a non-injective map needs finite support".into(),
                ));
            };
            let images: Vec<Degree> = support.iter().map(|d| hom.apply(d)).collect();
            shifts_bounds(hom.target(), &images)
        };
        Ok(GradedAlgebra::build(
            a.field(),
            hom.target().clone(),
            Kind::Regrade { inner: a.clone(), hom },
            bounds,
        ))
    }

    /// Forget the grading entirely.
    pub fn forget_grading(&self) -> Result<GradedAlgebra> {
        GradedAlgebra::regrade(self, GroupHom::zero(self.group(), &GradingGroup::trivial()))
    }

    /// Regrade by `gamma x G`, supported in `0 x G`.
    pub fn extend_trivially(&self, gamma: &GradingGroup) -> Result<GradedAlgebra> {
        let (_, _, right) = gamma.product(self.group());
        GradedAlgebra::regrade(self, right)
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn group(&self) -> &GradingGroup {
        &self.0.group
    }

    pub fn bounds(&self) -> &Bounds {
        &self.0.bounds
    }

    pub fn has_finite_bounds(&self) -> bool {
        self.0.bounds.iter().all(|(lo, hi)| lo.is_some() && hi.is_some())
    }

    pub fn same(&self, other: &GradedAlgebra) -> bool {
        self == other
    }

    /// Largest absolute free coordinate among the degrees of a generating
    /// set; sizes default verification windows.
    pub fn generator_span(&self) -> i64 {
        let finite = self
            .bounds()
            .iter()
            .flat_map(|(lo, hi)| [lo.map(i64::abs), hi.map(i64::abs)])
            .flatten()
            .max()
            .unwrap_or(0);
        let own = match &self.0.kind {
            Kind::Poly { base, var, .. } => base
                .generator_span()
                .max(var.free().iter().map(|x| x.abs()).max().unwrap_or(0)),
            Kind::GroupAlgebra => i64::from(self.group().rank() > 0),
            Kind::Tensor(a, b) | Kind::Product(a, b) => a.generator_span().max(b.generator_span()),
            Kind::Restrict { inner, .. } | Kind::Regrade { inner, .. } => inner.generator_span(),
            Kind::Matrix { .. } => 0,
        };
        finite.max(own)
    }

    /// Basis labels of `A_0` that are idempotent.
    pub fn idempotent_labels(&self) -> Vec<Element> {
        let z = self.group().zero();
        let dim = self.component_dim(&z);
        (0..dim)
            .map(|i| self.basis_element(&z, i))
            .filter(|e| &self.mul(e, e) == e)
            .collect()
    }

    /// Whether the support lies in `omega >= 0` for free coordinate `c`.
    pub fn nonnegative_in(&self, c: usize) -> bool {
        c < self.group().rank() && matches!(self.bounds()[c].0, Some(lo) if lo >= 0)
    }

    /// All degrees with nonzero component, when finitely many.
    pub fn support_degrees(&self) -> Option<Vec<Degree>> {
        self.0
            .support
            .get_or_init(|| {
                if !self.has_finite_bounds() {
                    return None;
                }
                let lo: Vec<i64> = self.bounds().iter().map(|b| b.0.unwrap()).collect();
                let hi: Vec<i64> = self.bounds().iter().map(|b| b.1.unwrap()).collect();
                Some(
                    self.group()
                        .boxed(&lo, &hi)
                        .into_iter()
                        .filter(|d| self.component_dim(d) > 0)
                        .collect(),
                )
            })
            .clone()
    }

    pub fn component(&self, d: &Degree) -> Arc<Component> {
        if let Some(c) = self.0.components.lock().unwrap().get(d) {
            return c.clone();
        }
        let c = Arc::new(Component::new(self.compute_component(d)));
        self.0.components.lock().unwrap().insert(d.clone(), c.clone());
        c
    }

    pub fn component_dim(&self, d: &Degree) -> usize {
        if !self.group().contains(d) {
            return 0;
        }
        self.component(d).dim()
    }

    fn in_bounds(&self, d: &Degree) -> bool {
        self.bounds().iter().zip(d.free()).all(|((lo, hi), &x)| {
            lo.map_or(true, |l| x >= l) && hi.map_or(true, |h| x <= h)
        })
    }

    fn compute_component(&self, d: &Degree) -> Vec<Label> {
        if !self.in_bounds(d) {
            return Vec::new();
        }
        let g = self.group();
        match &self.0.kind {
            Kind::Matrix { shifts, lower_only } => {
                let n = shifts.len();
                let mut out = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if (!lower_only || i >= j) && &g.sub(&shifts[i], &shifts[j]) == d {
                            out.push(Label::Unit(i, j));
                        }
                    }
                }
                out
            }
            Kind::GroupAlgebra => vec![Label::Group(d.clone())],
            Kind::Poly { base, var, embed } => {
                let mut out = Vec::new();
                let (kmin, kmax) = self.poly_exponent_range(base, var, embed, d);
                for k in kmin..=kmax {
                    let rest = g.sub(d, &g.scale(var, k as i64));
                    if let Some(Some(pre)) = embed.coordinate_preimage(&rest) {
                        for l in base.component(&pre).labels() {
                            out.push(Label::Poly(Box::new(l.clone()), k));
                        }
                    }
                }
                out
            }
            Kind::Tensor(a, b) => {
                let mut out = Vec::new();
                if let Some(sa) = a.support_degrees() {
                    for alpha in sa {
                        let beta = g.sub(d, &alpha);
                        for la in a.component(&alpha).labels() {
                            for lb in b.component(&beta).labels() {
                                out.push(Label::Tensor(Box::new(la.clone()), Box::new(lb.clone())));
                            }
                        }
                    }
                } else {
                    for beta in b.support_degrees().expect("bounded tensor factor") {
                        let alpha = g.sub(d, &beta);
                        for la in a.component(&alpha).labels() {
                            for lb in b.component(&beta).labels() {
                                out.push(Label::Tensor(Box::new(la.clone()), Box::new(lb.clone())));
                            }
                        }
                    }
                }
                out
            }
            Kind::Product(a, b) => a
                .component(d)
                .labels()
                .iter()
                .map(|l| Label::Left(Box::new(l.clone())))
                .chain(b.component(d).labels().iter().map(|l| Label::Right(Box::new(l.clone()))))
                .collect(),
            Kind::Restrict {
                inner,
                inclusion,
                keep_grading,
            } => {
                let inner_degree = if *keep_grading {
                    match inclusion.coordinate_preimage(d).flatten() {
                        Some(_) => d.clone(),
                        None => return Vec::new(),
                    }
                } else {
                    inclusion.apply(d)
                };
                inner.component(&inner_degree).labels().to_vec()
            }
            Kind::Regrade { inner, hom } => {
                if let Some(pre) = hom.coordinate_preimage(d) {
                    match pre {
                        Some(p) => inner.component(&p).labels().to_vec(),
                        None => Vec::new(),
                    }
                } else {
                    let fibres = self.regrade_fibres(inner, hom);
                    let mut out = Vec::new();
                    for p in fibres.get(d).into_iter().flatten() {
                        out.extend(inner.component(p).labels().iter().cloned());
                    }
                    out
                }
            }
        }
    }

    fn regrade_fibres(&self, inner: &GradedAlgebra, hom: &GroupHom) -> &BTreeMap<Degree, Vec<Degree>> {
        self.0.regrade_fibres.get_or_init(|| {
            let mut map: BTreeMap<Degree, Vec<Degree>> = BTreeMap::new();
            for p in inner.support_degrees().expect("checked at construction") {
                map.entry(hom.apply(&p)).or_default().push(p);
            }
            map
        })
    }

    fn poly_exponent_range(&self, base: &GradedAlgebra, var: &Degree, embed: &GroupHom, d: &Degree) -> (u32, u32) {
        let base_bounds = transport_bounds(base, embed);
        let mut kmax: Option<i64> = None;
        for (c, &v) in var.free().iter().enumerate() {
            let x = d.free()[c];
            let cap = if v > 0 {
                base_bounds[c].0.map(|lo| (x - lo).div_euclid(v))
            } else if v < 0 {
                base_bounds[c].1.map(|hi| (hi - x).div_euclid(-v))
            } else {
                None
            };
            if let Some(cap) = cap {
                kmax = Some(kmax.map_or(cap, |k: i64| k.min(cap)));
            }
        }
        let kmax = kmax.expect("validated at construction");
        if kmax < 0 {
            (1, 0)
        } else {
            (0, kmax as u32)
        }
    }

    /// Degree of a basis label.
    pub fn degree_of(&self, l: &Label) -> Degree {
        let g = self.group();
        match (&self.0.kind, l) {
            (Kind::Matrix { shifts, .. }, Label::Unit(i, j)) => g.sub(&shifts[*i], &shifts[*j]),
            (Kind::GroupAlgebra, Label::Group(d)) => d.clone(),
            (Kind::Poly { base, var, embed }, Label::Poly(b, k)) => {
                g.add(&embed.apply(&base.degree_of(b)), &g.scale(var, *k as i64))
            }
            (Kind::Tensor(a, b), Label::Tensor(x, y)) => g.add(&a.degree_of(x), &b.degree_of(y)),
            (Kind::Product(a, _), Label::Left(x)) => a.degree_of(x),
            (Kind::Product(_, b), Label::Right(y)) => b.degree_of(y),
            (Kind::Restrict { inner, inclusion, keep_grading }, _) => {
                let d = inner.degree_of(l);
                if *keep_grading {
                    d
                } else {
                    inclusion.coordinate_preimage(&d).flatten().expect("label inside restriction")
                }
            }
            (Kind::Regrade { inner, hom }, _) => hom.apply(&inner.degree_of(l)),
            _ => panic!("label {l} does not belong to {self}"),
        }
    }

    /// Product of two basis labels.
    pub fn mul_labels(&self, x: &Label, y: &Label) -> Terms {
        let one = self.field().one();
        match (&self.0.kind, x, y) {
            (Kind::Matrix { .. }, Label::Unit(i, j), Label::Unit(k, l)) => {
                if j == k {
                    vec![(Label::Unit(*i, *l), one)]
                } else {
                    Vec::new()
                }
            }
            (Kind::GroupAlgebra, Label::Group(a), Label::Group(b)) => {
                vec![(Label::Group(self.group().add(a, b)), one)]
            }
            (Kind::Poly { base, .. }, Label::Poly(a, k), Label::Poly(b, l)) => base
                .mul_labels(a, b)
                .into_iter()
                .map(|(m, c)| (Label::Poly(Box::new(m), k + l), c))
                .collect(),
            (Kind::Tensor(a, b), Label::Tensor(x1, y1), Label::Tensor(x2, y2)) => {
                let left = a.mul_labels(x1, x2);
                if left.is_empty() {
                    return Vec::new();
                }
                let right = b.mul_labels(y1, y2);
                let mut out = Vec::new();
                for (la, ca) in &left {
                    for (lb, cb) in &right {
                        out.push((Label::Tensor(Box::new(la.clone()), Box::new(lb.clone())), ca * cb));
                    }
                }
                combine(out)
            }
            (Kind::Product(a, _), Label::Left(p), Label::Left(q)) => a
                .mul_labels(p, q)
                .into_iter()
                .map(|(m, c)| (Label::Left(Box::new(m)), c))
                .collect(),
            (Kind::Product(_, b), Label::Right(p), Label::Right(q)) => b
                .mul_labels(p, q)
                .into_iter()
                .map(|(m, c)| (Label::Right(Box::new(m)), c))
                .collect(),
            (Kind::Product(..), _, _) => Vec::new(),
            (Kind::Restrict { inner, .. }, _, _) | (Kind::Regrade { inner, .. }, _, _) => inner.mul_labels(x, y),
            _ => panic!("labels {x}, {y} do not belong to {self}"),
        }
    }

    /// The unit as a combination of labels (all in degree 0).
    pub fn unit_terms(&self) -> Terms {
        let one = self.field().one();
        match &self.0.kind {
            Kind::Matrix { shifts, .. } => (0..shifts.len()).map(|i| (Label::Unit(i, i), one.clone())).collect(),
            Kind::GroupAlgebra => vec![(Label::Group(self.group().zero()), one)],
            Kind::Poly { base, .. } => base
                .unit_terms()
                .into_iter()
                .map(|(l, c)| (Label::Poly(Box::new(l), 0), c))
                .collect(),
            Kind::Tensor(a, b) => {
                let mut out = Vec::new();
                for (la, ca) in a.unit_terms() {
                    for (lb, cb) in b.unit_terms() {
                        out.push((Label::Tensor(Box::new(la.clone()), Box::new(lb)), &ca * &cb));
                    }
                }
                out
            }
            Kind::Product(a, b) => a
                .unit_terms()
                .into_iter()
                .map(|(l, c)| (Label::Left(Box::new(l)), c))
                .chain(b.unit_terms().into_iter().map(|(l, c)| (Label::Right(Box::new(l)), c)))
                .collect(),
            Kind::Restrict { inner, .. } | Kind::Regrade { inner, .. } => inner.unit_terms(),
        }
    }

    fn terms_to_coords(&self, d: &Degree, terms: &Terms) -> Vec<Scalar> {
        let comp = self.component(d);
        let mut v = vec![self.field().zero(); comp.dim()];
        for (l, c) in terms {
            let i = comp
                .position(l)
                .unwrap_or_else(|| panic!("label {l} not in component {d} of {self}"));
            v[i] = &v[i] + c;
        }
        v
    }

    /// Structure constants `A_a x A_b -> A_(a+b)`.
    pub fn mul_table(&self, a: &Degree, b: &Degree) -> Arc<MulTable> {
        let key = (a.clone(), b.clone());
        if let Some(t) = self.0.tables.lock().unwrap().get(&key) {
            return t.clone();
        }
        let ca = self.component(a);
        let cb = self.component(b);
        let target = self.group().add(a, b);
        let cc = self.component(&target);
        let table: MulTable = ca
            .labels()
            .iter()
            .map(|x| {
                cb.labels()
                    .iter()
                    .map(|y| {
                        self.mul_labels(x, y)
                            .into_iter()
                            .map(|(l, c)| {
                                let k = cc.position(&l).unwrap_or_else(|| {
                                    panic!("product {x}*{y} = {l} not in degree {target} of {self}")
                                });
                                (k, c)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let table = Arc::new(table);
        self.0.tables.lock().unwrap().insert(key, table.clone());
        table
    }

    pub fn zero_element(&self, d: &Degree) -> Element {
        Element {
            degree: d.clone(),
            coords: vec![self.field().zero(); self.component_dim(d)],
        }
    }

    pub fn one(&self) -> Element {
        let z = self.group().zero();
        Element {
            coords: self.terms_to_coords(&z, &self.unit_terms()),
            degree: z,
        }
    }

    pub fn basis_element(&self, d: &Degree, i: usize) -> Element {
        let mut e = self.zero_element(d);
        e.coords[i] = self.field().one();
        e
    }

    /// Element from a coefficient list in the component basis.
    pub fn element(&self, d: &Degree, coords: Vec<Scalar>) -> Result<Element> {
        if !self.group().contains(d) {
            return Err(Error::GroupMismatch(format!("degree {d} is not in {}", self.group())));
        }
        let dim = self.component_dim(d);
        if coords.len() != dim {
            return Err(Error::Shape(format!(
                "component {d} of {self} has dimension {dim}, got {} coefficients",
                coords.len()
            )));
        }
        if coords.iter().any(|c| c.field() != self.field()) {
            return Err(Error::InvalidField(format!("coefficients must lie in {}", self.field())));
        }
        Ok(Element { degree: d.clone(), coords })
    }

    pub fn random_element(&self, d: &Degree, rng: &mut impl Rng) -> Element {
        let dim = self.component_dim(d);
        Element {
            degree: d.clone(),
            coords: (0..dim).map(|_| self.field().from_i64(rng.gen_range(-2..=2))).collect(),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let table = self.mul_table(&a.degree, &b.degree);
        let d = self.group().add(&a.degree, &b.degree);
        let mut out = vec![self.field().zero(); self.component_dim(&d)];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &table[i][j] {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        Element { degree: d, coords: out }
    }

    /// Checked product of two homogeneous elements.
    pub fn try_mul(&self, a: &Element, b: &Element) -> Result<Element> {
        for e in [a, b] {
            if self.element(&e.degree, e.coords.clone()).is_err() {
                return Err(Error::AlgebraMismatch(format!(
                    "element of degree {} does not belong to {self}",
                    e.degree
                )));
            }
        }
        Ok(self.mul(a, b))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        assert_eq!(a.degree, b.degree, "adding elements of different degrees");
        Element {
            degree: a.degree.clone(),
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    /// Matrix of `y -> a*y` from `A_h` to `A_(deg a + h)`.
    pub fn left_mul_matrix(&self, a: &Element, h: &Degree) -> Matrix {
        let table = self.mul_table(&a.degree, h);
        let target = self.group().add(&a.degree, h);
        let rows = self.component_dim(&target);
        let cols = self.component_dim(h);
        let mut m = Matrix::zeros(self.field(), rows, cols);
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                for (k, c) in &table[i][j] {
                    m.get_mut(*k, j).add_mul(x, c);
                }
            }
        }
        m
    }

    /// Matrix of `y -> y*a` from `A_h` to `A_(h + deg a)`.
    pub fn right_mul_matrix(&self, a: &Element, h: &Degree) -> Matrix {
        let table = self.mul_table(h, &a.degree);
        let target = self.group().add(h, &a.degree);
        let rows = self.component_dim(&target);
        let cols = self.component_dim(h);
        let mut m = Matrix::zeros(self.field(), rows, cols);
        for (j, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..cols {
                for (k, c) in &table[i][j] {
                    m.get_mut(*k, i).add_mul(x, c);
                }
            }
        }
        m
    }

    /// `1 in span(A_g A_(-g))`.
    pub fn unit_in_product(&self, g: &Degree) -> bool {
        let neg = self.group().neg(g);
        let table = self.mul_table(g, &neg);
        let dim0 = self.component_dim(&self.group().zero());
        let mut span = EchelonBasis::new(self.field(), dim0);
        for row in table.iter() {
            for entry in row {
                let mut v = vec![self.field().zero(); dim0];
                for (k, c) in entry {
                    v[*k] = c.clone();
                }
                span.insert(&v);
            }
        }
        span.contains(&self.one().coords)
    }

    /// Strongly graded test on the coordinate generators and their inverses;
    /// the set of `g` with `1 in A_g A_(-g)` is closed under addition.
    pub fn is_strongly_graded(&self) -> bool {
        let g = self.group();
        g.generators()
            .iter()
            .flat_map(|x| [x.clone(), g.neg(x)])
            .all(|x| self.unit_in_product(&x))
    }

    /// The projection onto `A_(0,-)`, as an element of `zero_part()`.
    pub fn project_pi(&self, a: &Element) -> Result<Element> {
        let zp = self.zero_part()?;
        let mut flat = a.degree.flat();
        flat.remove(0);
        let d = zp.group().degree_from_flat(&flat)?;
        if a.degree.omega() == Some(0) {
            Ok(Element { degree: d, coords: a.coords.clone() })
        } else {
            Ok(zp.zero_element(&d))
        }
    }

    /// The projection onto `A_(0,-)` inside the full grading: identity on
    /// first coordinate 0 and zero elsewhere. The result lives in `zero_sub()`.
    pub fn pi_sub(&self, a: &Element) -> Element {
        if a.degree.omega() == Some(0) {
            a.clone()
        } else {
            Element {
                degree: a.degree.clone(),
                coords: Vec::new(),
            }
        }
    }

    /// The underlying algebra when this is a restriction (labels coincide).
    pub fn restriction_parent(&self) -> Option<&GradedAlgebra> {
        match &self.0.kind {
            Kind::Restrict { inner, keep_grading: true, .. } => Some(inner),
            _ => None,
        }
    }
}

fn transport_bounds(a: &GradedAlgebra, embed: &GroupHom) -> Bounds {
    let target = embed.target();
    let src = embed.source();
    let mut out = vec![(Some(0), Some(0)); target.rank()];
    for c in 0..src.rank() {
        let image = embed.apply(&src.free_unit(c));
        if let Some(tc) = image.free().iter().position(|&x| x != 0) {
            out[tc] = a.bounds()[c];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> GradingGroup {
        GradingGroup::integers()
    }

    fn ints(g: &GradingGroup, xs: &[i64]) -> Vec<Degree> {
        xs.iter().map(|&x| g.degree(vec![x], vec![]).unwrap()).collect()
    }

    pub(crate) fn m5(field: Field) -> GradedAlgebra {
        GradedAlgebra::matrix(field, z(), ints(&z(), &[0, 1, 2, 2, 3])).unwrap()
    }

    fn deg(x: i64) -> Degree {
        z().degree(vec![x], vec![]).unwrap()
    }

    #[test]
    fn m5_component_dimensions() {
        let a = m5(Field::Rationals);
        assert_eq!(a.component_dim(&deg(0)), 7);
        assert_eq!(a.component_dim(&deg(1)), 5);
        assert_eq!(a.component_dim(&deg(-1)), 5);
        assert_eq!(a.component_dim(&deg(4)), 0);
        let total: usize = (-3..=3).map(|x| a.component_dim(&deg(x))).sum();
        assert_eq!(total, 25);
    }

    #[test]
    fn polynomial_components() {
        let q = GradedAlgebra::base_field(Field::Rationals);
        let qx = GradedAlgebra::poly(&q, &[1]).unwrap();
        assert_eq!(qx.component_dim(&deg(-3)), 0);
        assert_eq!(qx.component_dim(&deg(5)), 1);
        let x = qx.basis_element(&deg(1), 0);
        let x2 = qx.mul(&x, &x);
        assert_eq!(x2.degree, deg(2));
        assert_eq!(qx.component(&deg(2)).labels()[0], Label::Poly(Box::new(Label::Unit(0, 0)), 2));
    }

    #[test]
    fn matrix_units_multiply() {
        let a = GradedAlgebra::matrix(Field::Rationals, z(), ints(&z(), &[0, 1])).unwrap();
        let e12 = a.basis_element(&deg(-1), 0);
        let e21 = a.basis_element(&deg(1), 0);
        let p = a.mul(&e12, &e21);
        assert_eq!(p.degree, deg(0));
        let comp = a.component(&deg(0));
        assert_eq!(comp.labels()[comp.position(&Label::Unit(0, 0)).unwrap()], Label::Unit(0, 0));
        assert!(p.coords[comp.position(&Label::Unit(0, 0)).unwrap()].is_one());
    }

    #[test]
    fn tensor_with_polynomials() {
        let m = GradedAlgebra::matrix(Field::Rationals, z(), ints(&z(), &[0, 0])).unwrap();
        let qx = GradedAlgebra::poly(&GradedAlgebra::base_field(Field::Rationals), &[1]).unwrap();
        let t = GradedAlgebra::tensor(&m, &qx).unwrap();
        assert_eq!(t.component_dim(&deg(0)), 4);
        assert_eq!(t.component_dim(&deg(1)), 4);
        let c0 = t.component(&deg(0));
        let e12 = Label::Tensor(Box::new(Label::Unit(0, 1)), Box::new(Label::Poly(Box::new(Label::Unit(0, 0)), 0)));
        let one_x = Label::Tensor(Box::new(Label::Unit(0, 0)), Box::new(Label::Poly(Box::new(Label::Unit(0, 0)), 1)));
        let a = t.basis_element(&deg(0), c0.position(&e12).unwrap());
        let mut b = t.zero_element(&deg(1));
        // 1 (x) x = e11 (x) x + e22 (x) x
        let c1 = t.component(&deg(1));
        b.coords[c1.position(&one_x).unwrap()] = Field::Rationals.one();
        let other = Label::Tensor(Box::new(Label::Unit(1, 1)), Box::new(Label::Poly(Box::new(Label::Unit(0, 0)), 1)));
        b.coords[c1.position(&other).unwrap()] = Field::Rationals.one();
        let p = t.mul(&a, &b);
        let expect = Label::Tensor(Box::new(Label::Unit(0, 1)), Box::new(Label::Poly(Box::new(Label::Unit(0, 0)), 1)));
        assert_eq!(p.degree, deg(1));
        assert!(p.coords[c1.position(&expect).unwrap()].is_one());
        assert_eq!(p.coords.iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn zero_part_of_m5_has_four_blocks() {
        let a = m5(Field::Rationals);
        let zp = a.zero_part().unwrap();
        assert!(zp.group().is_trivial());
        assert_eq!(zp.component_dim(&zp.group().zero()), 7);
    }

    #[test]
    fn zero_part_of_polynomials() {
        let q = GradedAlgebra::base_field(Field::Rationals);
        let qx = GradedAlgebra::poly(&q, &[1]).unwrap();
        let zp = qx.zero_part().unwrap();
        assert_eq!(zp.component_dim(&zp.group().zero()), 1);
        let b = GradedAlgebra::group_algebra(Field::Rationals, GradingGroup::cyclic(2).unwrap());
        let bx = GradedAlgebra::poly(&b, &[1, 1]).unwrap();
        assert_eq!(bx.group(), &GradingGroup::new(1, vec![2]).unwrap());
        let zp = bx.zero_part().unwrap();
        for d in zp.group().window(0) {
            assert_eq!(zp.component_dim(&d), b.component_dim(&d));
        }
    }

    #[test]
    fn projection_kills_positive_degrees() {
        let q = GradedAlgebra::base_field(Field::Rationals);
        let qx = GradedAlgebra::poly(&q, &[1]).unwrap();
        let x = qx.basis_element(&deg(1), 0);
        assert!(qx.project_pi(&x).unwrap().is_zero());
        let a = m5(Field::Rationals);
        let e11 = a.basis_element(&deg(0), 0);
        assert_eq!(a.project_pi(&e11).unwrap().coords, e11.coords);
    }

    #[test]
    fn strongly_graded_examples() {
        let m2 = GradedAlgebra::matrix(Field::Rationals, z(), ints(&z(), &[0, 1])).unwrap();
        // A_1 A_-1 = span(e22): not strongly graded over Z.
        assert!(!m2.unit_in_product(&deg(1)));
        assert!(!m2.is_strongly_graded());
        assert!(!m5(Field::Rationals).is_strongly_graded());
        let qx = GradedAlgebra::poly(&GradedAlgebra::base_field(Field::Rationals), &[1]).unwrap();
        assert!(!qx.is_strongly_graded());
        let c2 = GradingGroup::cyclic(2).unwrap();
        let m2c2 = GradedAlgebra::matrix(Field::Rationals, c2.clone(), vec![c2.zero(), c2.torsion_unit(0)]).unwrap();
        assert!(m2c2.is_strongly_graded());
        assert!(GradedAlgebra::group_algebra(Field::Rationals, c2).is_strongly_graded());
    }

    #[test]
    fn forgetting_grading_collects_everything() {
        let a = m5(Field::Prime(2));
        let f = a.forget_grading().unwrap();
        assert_eq!(f.component_dim(&GradingGroup::trivial().zero()), 25);
        assert!(f.one().coords.iter().filter(|c| c.is_one()).count() == 5);
    }

    #[test]
    fn infinite_components_are_rejected() {
        let q = GradedAlgebra::base_field(Field::Rationals);
        assert!(GradedAlgebra::poly(&q, &[]).is_err());
        let c2 = GradedAlgebra::group_algebra(Field::Rationals, GradingGroup::cyclic(2).unwrap());
        assert!(matches!(GradedAlgebra::poly(&c2, &[1]), Err(Error::Unsupported(_))));
    }
}
