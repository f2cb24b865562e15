//! Graded `K_0` as a permutation module over the group ring, and the
//! comparison checks built on it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::gmod::{self, indecomposables_iso, summands, HomMatrix, ProjectivePresentation, Window};
use crate::grading::{induce_module, shift_module_iso, Degree, GroupHom, Orbit, ShiftModule, Subgroup};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One shift-orbit of indecomposable projectives.
#[derive(Clone, Debug)]
pub struct BasisClass {
    pub label: String,
    pub representative: ProjectivePresentation,
    pub stabilizer: Subgroup,
}

#[derive(Clone, Debug)]
pub struct K0Result {
    pub algebra: GradedAlgebra,
    pub basis: Vec<BasisClass>,
    pub module: ShiftModule,
    pub seed: u64,
    radius: Option<i64>,
}

/// A class in `K_0`: integer coefficients on (orbit, coset representative).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct K0Class {
    pub terms: BTreeMap<(usize, Degree), i64>,
}

impl K0Class {
    pub fn add(&self, other: &K0Class) -> K0Class {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            *out.terms.entry(k.clone()).or_insert(0) += v;
        }
        out.terms.retain(|_, v| *v != 0);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single basis element this class equals, if it is one.
    pub fn as_basis_element(&self) -> Option<(usize, Degree)> {
        match self.terms.iter().collect::<Vec<_>>().as_slice() {
            [(k, 1)] => Some((*k).clone()),
            _ => None,
        }
    }
}

/// Shifts `g` with `x = y(g)` possible: a box derived from the support of
/// the algebra and the ambient shifts of both modules.
fn candidate_shifts(x: &ProjectivePresentation, y: &ProjectivePresentation, radius: Option<i64>) -> Vec<Degree> {
    let alg = x.algebra();
    let grp = alg.group();
    let r = radius.unwrap_or(alg.generator_span() + 2);
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for c in 0..grp.rank() {
        let diffs: Vec<i64> = x
            .shifts()
            .iter()
            .flat_map(|d| y.shifts().iter().map(move |e| d.free()[c] - e.free()[c]))
            .collect();
        let dmin = *diffs.iter().min().unwrap();
        let dmax = *diffs.iter().max().unwrap();
        let (alo, ahi) = alg.bounds()[c];
        let mut l = dmin - ahi.unwrap_or(r);
        let mut h = dmax - alo.unwrap_or(-r);
        if let Some(a) = alo {
            l = l.max(dmin + a);
        }
        if let Some(b) = ahi {
            h = h.min(dmax + b);
        }
        lo.push(l);
        hi.push(h);
    }
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    grp.boxed(&lo, &hi)
}

fn dims_match_shifted(x: &ProjectivePresentation, y: &ProjectivePresentation, g: &Degree, w: &Window) -> bool {
    let grp = x.algebra().group();
    w.degrees(x.algebra())
        .iter()
        .all(|h| x.component_dim(h) == y.component_dim(&grp.add(g, h)))
}

/// Find `g` with `x = y(g)`.
fn match_shift(x: &ProjectivePresentation, y: &ProjectivePresentation, radius: Option<i64>) -> Option<Degree> {
    let w = x.window(radius);
    candidate_shifts(x, y, radius)
        .into_iter()
        .find(|g| dims_match_shifted(x, y, g, &w) && indecomposables_iso(x, &y.shift(g)))
}

fn stabilizer(x: &ProjectivePresentation, radius: Option<i64>) -> Subgroup {
    let grp = x.algebra().group();
    let w = x.window(radius);
    let gens: Vec<Degree> = candidate_shifts(x, x, radius)
        .into_iter()
        .filter(|g| !g.is_zero())
        .filter(|g| dims_match_shifted(x, x, g, &w) && indecomposables_iso(x, &x.shift(g)))
        .collect();
    Subgroup::generated(grp, &gens)
}

/// `K_0` of the category of graded projectives, computed from the
/// decomposition of the regular module.
pub fn k0(alg: &GradedAlgebra, seed: u64) -> Result<K0Result> {
    k0_with_radius(alg, seed, None)
}

pub fn k0_with_radius(alg: &GradedAlgebra, seed: u64, radius: Option<i64>) -> Result<K0Result> {
    let regular = ProjectivePresentation::regular(alg);
    let mut basis: Vec<BasisClass> = Vec::new();
    for x in summands(&regular, seed)? {
        if basis.iter().any(|b| match_shift(&x, &b.representative, radius).is_some()) {
            continue;
        }
        let stab = stabilizer(&x, radius);
        basis.push(BasisClass {
            label: format!("P{}", basis.len() + 1),
            representative: x,
            stabilizer: stab,
        });
    }
    let orbits = basis
        .iter()
        .map(|b| Orbit {
            label: b.label.clone(),
            stabilizer: b.stabilizer.clone(),
        })
        .collect();
    Ok(K0Result {
        algebra: alg.clone(),
        module: ShiftModule::new(alg.group(), orbits)?,
        basis,
        seed,
        radius,
    })
}

impl K0Result {
    /// Coordinates of `[P]`.
    pub fn class_map(&self, p: &ProjectivePresentation) -> Result<K0Class> {
        if p.algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch("module over a different algebra".into()));
        }
        let mut out = K0Class::default();
        for z in summands(p, self.seed)? {
            let hit = self.basis.iter().enumerate().find_map(|(i, b)| {
                match_shift(&z, &b.representative, self.radius).map(|g| (i, b.stabilizer.coset_rep(&g)))
            });
            let key = hit.ok_or_else(|| Error::Internal("indecomposable summand matches no basis class".into()))?;
            out = out.add(&K0Class {
                terms: BTreeMap::from([(key, 1)]),
            });
        }
        Ok(out)
    }

    /// `[P] * g`: shift every coordinate.
    pub fn act(&self, c: &K0Class, g: &Degree) -> K0Class {
        let grp = self.algebra.group();
        let mut out = K0Class::default();
        for ((i, d), v) in &c.terms {
            let key = (*i, self.basis[*i].stabilizer.coset_rep(&grp.add(d, g)));
            out = out.add(&K0Class {
                terms: BTreeMap::from([(key, *v)]),
            });
        }
        out
    }

    pub fn describe(&self) -> String {
        describe_module(&self.module)
    }

    pub fn basis_entries(&self) -> Vec<BasisEntry> {
        self.basis
            .iter()
            .map(|b| BasisEntry {
                label: b.label.clone(),
                shifts: b.representative.shifts().to_vec(),
                orbit_size: b.stabilizer.index(),
                stabilizer: b.stabilizer.generators(),
            })
            .collect()
    }
}

/// Human-readable form, e.g. `Z[Z]^1` or `Z^4`.
pub fn describe_module(m: &ShiftModule) -> String {
    if m.group().is_trivial() {
        return format!("Z^{}", m.num_orbits());
    }
    if let Some(r) = m.free_rank() {
        return format!("free of rank {r} over Z[{}]", m.group());
    }
    let parts: Vec<String> = m
        .orbits()
        .iter()
        .map(|o| {
            let gens: Vec<String> = o.stabilizer.generators().iter().map(|g| g.to_string()).collect();
            format!("Z[{}/<{}>]", m.group(), gens.join(","))
        })
        .collect();
    parts.join(" + ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisEntry {
    pub label: String,
    pub shifts: Vec<Degree>,
    pub orbit_size: Option<u64>,
    pub stabilizer: Vec<Degree>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Correspondence {
    pub lhs: String,
    pub rhs: String,
    pub shift: Degree,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub hypothesis_checks: Vec<CheckLine>,
    pub lhs_basis: Vec<BasisEntry>,
    pub rhs_basis: Vec<BasisEntry>,
    pub lhs_module: Option<String>,
    pub rhs_module: Option<String>,
    pub correspondence: Vec<Correspondence>,
    pub checks: Vec<CheckLine>,
    pub stages: Vec<Report>,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub data: serde_json::Map<String, serde_json::Value>,
    pub verdict: Verdict,
    pub seed: u64,
    pub version: String,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Report {
        Report {
            command: command.into(),
            hypothesis_checks: Vec::new(),
            lhs_basis: Vec::new(),
            rhs_basis: Vec::new(),
            lhs_module: None,
            rhs_module: None,
            correspondence: Vec::new(),
            checks: Vec::new(),
            stages: Vec::new(),
            data: serde_json::Map::new(),
            verdict: Verdict::Pass,
            seed,
            version: VERSION.to_string(),
        }
    }

    pub fn hypothesis(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.hypothesis_checks.push(CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        if !passed {
            self.verdict = Verdict::HypothesisNotMet;
        }
        passed
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        if !passed && self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Report for the plain `K_0` computation.
pub fn k0_report(alg: &GradedAlgebra, seed: u64, radius: Option<i64>) -> Result<Report> {
    let k = k0_with_radius(alg, seed, radius)?;
    let mut r = Report::new(format!("k0({alg})"), seed);
    r.rhs_basis = k.basis_entries();
    r.rhs_module = Some(k.describe());
    let regular = ProjectivePresentation::regular(alg);
    let class = k.class_map(&regular)?;
    let total: i64 = class.terms.values().sum();
    r.check(
        "regular module decomposes into basis classes",
        total as usize == summands(&regular, seed)?.len(),
        format!("[A] has {total} indecomposable summands"),
    );
    Ok(r)
}

/// Move a presentation to another algebra with the same labels, mapping
/// shifts along `hom`.
fn carry(p: &ProjectivePresentation, to: &GradedAlgebra, hom: &GroupHom) -> ProjectivePresentation {
    let shifts: Vec<Degree> = p.shifts().iter().map(|s| hom.apply(s)).collect();
    let src = p.algebra();
    let n = shifts.len();
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let e = p.idempotent().get(i, j);
            let ct = to.component(&to.group().sub(&shifts[i], &shifts[j]));
            let cs = src.component(&e.degree);
            let mut v = vec![to.field().zero(); ct.dim()];
            for (l, c) in cs.labels().iter().zip(&e.coords) {
                if let Some(k) = ct.position(l) {
                    v[k] = c.clone();
                }
            }
            row.push(v);
        }
        coeffs.push(row);
    }
    let idem = HomMatrix::from_coefficients(to, &shifts, &shifts, coeffs).expect("carried entries fit");
    ProjectivePresentation::new(to, shifts, idem).expect("carried idempotent")
}

/// Compare `lhs` induced along `hom` with `rhs`, mapping each lhs basis class
/// through `functor` and reading off its class in `rhs`.
fn compare_induced(
    report: &mut Report,
    lhs: &K0Result,
    rhs: &K0Result,
    hom: &GroupHom,
    functor: impl Fn(&ProjectivePresentation) -> Result<ProjectivePresentation>,
) -> Result<()> {
    let induced = induce_module(&lhs.module, hom)?;
    report.lhs_basis = lhs.basis_entries();
    report.rhs_basis = rhs.basis_entries();
    report.lhs_module = Some(describe_module(&induced));
    report.rhs_module = Some(rhs.describe());
    report.check(
        "induced module isomorphic to target K0",
        shift_module_iso(&induced, &rhs.module),
        format!("{} vs {}", describe_module(&induced), rhs.describe()),
    );
    let mut hit = vec![false; rhs.basis.len()];
    let mut ok = true;
    for (i, b) in lhs.basis.iter().enumerate() {
        let image = functor(&b.representative)?;
        let class = rhs.class_map(&image)?;
        match class.as_basis_element() {
            Some((j, g)) => {
                report.correspondence.push(Correspondence {
                    lhs: b.label.clone(),
                    rhs: rhs.basis[j].label.clone(),
                    shift: g,
                });
                let stab_ok = b.stabilizer.image(hom) == rhs.basis[j].stabilizer;
                if hit[j] || !stab_ok {
                    ok = false;
                }
                hit[j] = true;
                let _ = i;
            }
            None => ok = false,
        }
    }
    report.check(
        "basis classes correspond bijectively with matching stabilizers",
        ok && hit.iter().all(|&h| h),
        format!("{} lhs classes, {} rhs classes", lhs.basis.len(), rhs.basis.len()),
    );
    Ok(())
}

/// `K_0^G(A_(0,-)) (x) Z[Z x G] = K_0^(Z x G)(A)` for `A` supported in
/// `N x G`.
pub fn theorem1_check(alg: &GradedAlgebra, seed: u64, radius: Option<i64>) -> Result<Report> {
    let mut r = Report::new(format!("theorem1({alg})"), seed);
    theorem1_into(&mut r, alg, seed, radius)?;
    Ok(r)
}

fn theorem1_into(r: &mut Report, alg: &GradedAlgebra, seed: u64, radius: Option<i64>) -> Result<()> {
    if !r.hypothesis(
        "grading has an integer coordinate",
        alg.group().rank() >= 1,
        format!("grading group {}", alg.group()),
    ) {
        return Ok(());
    }
    if !r.hypothesis(
        "support in N x G",
        alg.nonnegative_in(0),
        format!("first-coordinate support bounds {:?}", alg.bounds()[0]),
    ) {
        return Ok(());
    }
    let zp = alg.zero_part()?;
    let zs = alg.zero_sub()?;
    let (_, inclusion) = alg.group().drop_free(0);
    let lhs = k0_with_radius(&zp, seed, radius)?;
    let rhs = k0_with_radius(alg, seed, radius)?;
    compare_induced(r, &lhs, &rhs, &inclusion, |x| gmod::functor_s(&carry(x, &zs, &inclusion)))
}

/// The case `G = 1`: `K_0(A_0) (x) Z[x, 1/x] = K_0^Z(A)`.
pub fn quillen_case(alg: &GradedAlgebra, seed: u64, radius: Option<i64>) -> Result<Report> {
    let mut r = Report::new(format!("quillen({alg})"), seed);
    let g = alg.group();
    if !r.hypothesis(
        "graded by Z",
        g.rank() == 1 && g.moduli().is_empty(),
        format!("grading group {g}"),
    ) {
        return Ok(r);
    }
    theorem1_into(&mut r, alg, seed, radius)?;
    Ok(r)
}

/// Iterate the one-coordinate comparison over `Z^m x G`. Without `m`, the
/// leading coordinates with nonnegative support are used.
pub fn corollary_check(alg: &GradedAlgebra, m: Option<usize>, seed: u64, radius: Option<i64>) -> Result<Report> {
    let mut r = Report::new(format!("corollary({alg})"), seed);
    let rank = alg.group().rank();
    let m = m.unwrap_or_else(|| (0..rank).take_while(|&c| alg.nonnegative_in(c)).count().max(1));
    if !r.hypothesis("integer coordinates present", m >= 1 && m <= rank, format!("m = {m}, rank {rank}")) {
        return Ok(r);
    }
    for c in 0..m {
        if !r.hypothesis(
            &format!("support nonnegative in coordinate {c}"),
            alg.nonnegative_in(c),
            format!("bounds {:?}", alg.bounds()[c]),
        ) {
            return Ok(r);
        }
    }
    let mut stage_alg = alg.clone();
    for _ in 0..m {
        let mut stage = Report::new(format!("theorem1({stage_alg})"), seed);
        theorem1_into(&mut stage, &stage_alg, seed, radius)?;
        let ok = stage.passed();
        r.check(&format!("stage over {}", stage_alg.group()), ok, stage.command.clone());
        r.stages.push(stage);
        stage_alg = stage_alg.zero_part()?;
    }
    // overall: K0^G(A_(0,-)) induced along G -> Z^m x G
    let base = stage_alg;
    let g = alg.group();
    let images = (0..base.group().rank())
        .map(|k| g.free_unit(m + k))
        .chain((0..g.moduli().len()).map(|k| g.torsion_unit(k)))
        .collect();
    let inclusion = GroupHom::new(base.group().clone(), g.clone(), images)?;
    let lhs = k0_with_radius(&base, seed, radius)?;
    let rhs = k0_with_radius(alg, seed, radius)?;
    let mut overall = Report::new("overall", seed);
    compare_induced(&mut overall, &lhs, &rhs, &inclusion, |x| {
        let mut p = x.clone();
        let mut hom_stack = Vec::new();
        // rebuild the chain of zero parts from the top
        let mut a = alg.clone();
        for _ in 0..m {
            hom_stack.push(a.clone());
            a = a.zero_part()?;
        }
        let mut current = base.clone();
        for parent in hom_stack.iter().rev() {
            let zs = parent.zero_sub()?;
            let (_, inc) = parent.group().drop_free(0);
            debug_assert_eq!(inc.source(), current.group());
            p = gmod::functor_s(&carry(&p, &zs, &inc))?;
            current = parent.clone();
        }
        Ok(p)
    })?;
    r.lhs_basis = overall.lhs_basis.clone();
    r.rhs_basis = overall.rhs_basis.clone();
    r.lhs_module = overall.lhs_module.clone();
    r.rhs_module = overall.rhs_module.clone();
    r.correspondence = overall.correspondence.clone();
    for c in overall.checks {
        r.check(&format!("overall: {}", c.name), c.passed, c.detail);
    }
    Ok(r)
}

/// `K_0^(Gamma x G)(A) = K_0^G(A) (x) Z[Gamma x G]` for `A` extended
/// trivially to `Gamma x G`.
pub fn lemma_check(
    alg: &GradedAlgebra,
    gamma: &crate::grading::GradingGroup,
    seed: u64,
    radius: Option<i64>,
) -> Result<Report> {
    let mut r = Report::new(format!("lemma({alg}, {gamma})"), seed);
    let (_, _, right) = gamma.product(alg.group());
    let ext = GradedAlgebra::regrade(alg, right.clone())?;
    let supported = (0..gamma.rank()).all(|c| ext.bounds()[c] == (Some(0), Some(0)));
    if !r.hypothesis(
        "support in 1 x G",
        supported,
        format!("extended grading {}", ext.group()),
    ) {
        return Ok(r);
    }
    let lhs = k0_with_radius(alg, seed, radius)?;
    let rhs = k0_with_radius(&ext, seed, radius)?;
    compare_induced(&mut r, &lhs, &rhs, &right, |x| Ok(carry(x, &ext, &right)))?;
    Ok(r)
}

/// For strongly graded `A`: `- (x)_(A_0) A` maps a basis of `K_0(A_0)`
/// bijectively onto a basis of `K_0^G(A)`.
pub fn dade_check(alg: &GradedAlgebra, seed: u64, radius: Option<i64>) -> Result<Report> {
    let mut r = Report::new(format!("dade({alg})"), seed);
    let strongly = alg.is_strongly_graded();
    let detail = alg
        .group()
        .generators()
        .iter()
        .flat_map(|g| [g.clone(), alg.group().neg(g)])
        .map(|g| format!("1 in A_{g} A_{}: {}", alg.group().neg(&g), alg.unit_in_product(&g)))
        .collect::<Vec<_>>()
        .join("; ");
    if !r.hypothesis("strongly graded", strongly, detail) {
        return Ok(r);
    }
    let a0 = alg.identity_component();
    let lhs = k0_with_radius(&a0, seed, radius)?;
    let rhs = k0_with_radius(alg, seed, radius)?;
    r.lhs_basis = lhs.basis_entries();
    r.rhs_basis = rhs.basis_entries();
    r.lhs_module = Some(lhs.describe());
    r.rhs_module = Some(rhs.describe());
    let finite = rhs.basis.iter().all(|b| b.stabilizer.index().is_some());
    r.check(
        "every shift orbit is finite",
        finite,
        format!("orbit sizes {:?}", rhs.basis.iter().map(|b| b.stabilizer.index()).collect::<Vec<_>>()),
    );
    if !finite {
        return Ok(r);
    }
    let rhs_rank: u64 = rhs.basis.iter().map(|b| b.stabilizer.index().unwrap()).sum();
    let zero_hom = GroupHom::zero(a0.group(), alg.group());
    let mut images = Vec::new();
    for b in &lhs.basis {
        let image = carry(&b.representative, alg, &zero_hom);
        let class = rhs.class_map(&image)?;
        match class.as_basis_element() {
            Some((j, g)) => {
                r.correspondence.push(Correspondence {
                    lhs: b.label.clone(),
                    rhs: rhs.basis[j].label.clone(),
                    shift: g.clone(),
                });
                images.push((j, g));
            }
            None => images.push((usize::MAX, alg.group().zero())),
        }
    }
    let mut distinct = images.clone();
    distinct.sort();
    distinct.dedup();
    let bijective = images.iter().all(|(j, _)| *j != usize::MAX)
        && distinct.len() == images.len()
        && images.len() as u64 == rhs_rank;
    r.check(
        "basis of K0(A_0) maps bijectively onto a Z-basis of graded K0",
        bijective,
        format!("{} classes on the left, rank {rhs_rank} on the right", lhs.basis.len()),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::grading::GradingGroup;

    fn m5(field: Field) -> GradedAlgebra {
        let z = GradingGroup::integers();
        let shifts = [0, 1, 2, 2, 3].iter().map(|&x| z.degree(vec![x], vec![]).unwrap()).collect();
        GradedAlgebra::matrix(field, z, shifts).unwrap()
    }

    #[test]
    fn m5_k_groups() {
        for field in [Field::Rationals, Field::Prime(2)] {
            let a = m5(field);
            let graded = k0(&a, 0).unwrap();
            assert_eq!(graded.module.free_rank(), Some(1), "over {field}");
            let zp = k0(&a.zero_part().unwrap(), 0).unwrap();
            assert!(zp.module.group().is_trivial());
            assert_eq!(zp.module.num_orbits(), 4);
            let ungraded = k0(&a.forget_grading().unwrap(), 0).unwrap();
            assert_eq!(ungraded.module.num_orbits(), 1);
        }
    }

    #[test]
    fn class_map_is_shift_equivariant() {
        let a = m5(Field::Rationals);
        let k = k0(&a, 0).unwrap();
        let z = a.group();
        let p = ProjectivePresentation::regular(&a);
        let g = z.free_unit(0);
        let lhs = k.class_map(&p.shift(&g)).unwrap();
        let rhs = k.act(&k.class_map(&p).unwrap(), &g);
        assert_eq!(lhs, rhs);
    }

    fn m2_poly() -> GradedAlgebra {
        let z = GradingGroup::integers();
        let shifts = vec![z.degree(vec![0], vec![]).unwrap(), z.degree(vec![1], vec![]).unwrap()];
        let m2 = GradedAlgebra::matrix(Field::Rationals, z, shifts).unwrap();
        GradedAlgebra::poly(&m2, &[1, 0]).unwrap()
    }

    #[test]
    fn comparison_checks_pass() {
        let qx = GradedAlgebra::poly(&GradedAlgebra::base_field(Field::Rationals), &[1]).unwrap();
        assert!(quillen_case(&qx, 0, None).unwrap().passed());
        let r = theorem1_check(&m2_poly(), 0, None).unwrap();
        assert!(r.passed(), "{:?} {:?}", r.hypothesis_checks, r.checks);
        let r = corollary_check(&m2_poly(), None, 0, None).unwrap();
        assert!(r.passed(), "{:?} {:?}", r.hypothesis_checks, r.checks);
        let q = GradedAlgebra::base_field(Field::Rationals);
        let r = lemma_check(&q, &GradingGroup::integers(), 0, None).unwrap();
        assert!(r.passed(), "{:?} {:?}", r.hypothesis_checks, r.checks);
    }

    #[test]
    fn dade_readings() {
        let c2 = GradingGroup::cyclic(2).unwrap();
        let shifts = vec![c2.zero(), c2.degree(vec![], vec![1]).unwrap()];
        let a = GradedAlgebra::matrix(Field::Rationals, c2, shifts).unwrap();
        let r = dade_check(&a, 0, None).unwrap();
        assert!(r.passed(), "{:?} {:?}", r.hypothesis_checks, r.checks);
        let z = GradingGroup::integers();
        let shifts = vec![z.zero(), z.degree(vec![1], vec![]).unwrap()];
        let a = GradedAlgebra::matrix(Field::Rationals, z, shifts).unwrap();
        assert_eq!(dade_check(&a, 0, None).unwrap().verdict, Verdict::HypothesisNotMet);
    }
}
