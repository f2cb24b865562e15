//! The filtration by generator degree in the integer coordinate, its layers,
//! and the functors `Theta_q`, `Psi_q` between modules over `A` and modules
//! over `A_(0,-)`.

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::gmod::{
    functor_s, functor_t, functor_t_map, graded_iso, nu, offsets, projection_to_t, psi, section, HomMatrix,
    ProjectivePresentation, Window,
};
use crate::grading::Degree;
use crate::ktheory::{K0Class, K0Result, Report};
use crate::linalg::EchelonBasis;

/// `P` together with its filtration: `F^lambda P` for every jump `lambda`.
#[derive(Clone, Debug)]
pub struct FilteredModule {
    pub base: ProjectivePresentation,
    pub bound: i64,
    pub jumps: Vec<i64>,
    pub layers: Vec<(i64, ProjectivePresentation)>,
}

fn require_positive(alg: &GradedAlgebra) -> Result<()> {
    if alg.group().rank() == 0 || !alg.nonnegative_in(0) {
        return Err(Error::HypothesisNotMet(format!(
            "{alg} is not supported in N x G"
        )));
    }
    Ok(())
}

/// Integer degree of the generator of the `i`-th ambient summand.
fn generator_degree(s: &Degree) -> i64 {
    -s.omega().unwrap_or(0)
}

fn live_rows(e: &HomMatrix) -> Vec<usize> {
    let n = e.rows().len();
    (0..n)
        .filter(|&i| (0..n).any(|j| !e.get(i, j).is_zero()))
        .collect()
}

/// Integer degrees in which `T(P)` is nonzero, ascending.
pub fn jumps(p: &ProjectivePresentation) -> Result<Vec<i64>> {
    require_positive(p.algebra())?;
    let t = functor_t(p)?;
    let mut out: Vec<i64> = live_rows(t.idempotent())
        .into_iter()
        .map(|i| generator_degree(&p.shifts()[i]))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Smallest `n >= 0` with `F^(-n) P = 0` and `F^n P = P`.
pub fn bound(p: &ProjectivePresentation) -> Result<i64> {
    let js = jumps(p)?;
    Ok(match (js.first(), js.last()) {
        (Some(&lo), Some(&hi)) => hi.max(1 - lo).max(0),
        _ => 0,
    })
}

/// `S` of the part of `T(P)` whose generator degrees satisfy `keep`.
fn induced_block(p: &ProjectivePresentation, keep: impl Fn(i64) -> bool) -> Result<ProjectivePresentation> {
    let t = functor_t(p)?;
    let idx: Vec<usize> = (0..p.ambient_rank())
        .filter(|&i| keep(generator_degree(&p.shifts()[i])))
        .collect();
    let shifts = idx.iter().map(|&i| p.shifts()[i].clone()).collect();
    let q = ProjectivePresentation::new(t.algebra(), shifts, t.idempotent().select(&idx, &idx))?;
    Ok(functor_s(&q)?.trim())
}

/// `F^lambda P`, presented in induced form.
pub fn filter(p: &ProjectivePresentation, lambda: i64) -> Result<ProjectivePresentation> {
    require_positive(p.algebra())?;
    induced_block(p, |k| k <= lambda)
}

/// `F^(lambda_k) P / F^(lambda_(k-1)) P` at the `k`-th jump; zero past the
/// last jump.
pub fn layer(p: &ProjectivePresentation, k: usize) -> Result<ProjectivePresentation> {
    let js = jumps(p)?;
    match js.get(k) {
        Some(&l) => induced_block(p, |x| x == l),
        None => Ok(ProjectivePresentation::zero(p.algebra())),
    }
}

pub fn layers(p: &ProjectivePresentation) -> Result<Vec<(i64, ProjectivePresentation)>> {
    jumps(p)?
        .into_iter()
        .map(|l| Ok((l, induced_block(p, |x| x == l)?)))
        .collect()
}

pub fn filtered(p: &ProjectivePresentation) -> Result<FilteredModule> {
    let js = jumps(p)?;
    let layers = js.iter().map(|&l| Ok((l, filter(p, l)?))).collect::<Result<_>>()?;
    Ok(FilteredModule {
        base: p.clone(),
        bound: bound(p)?,
        jumps: js,
        layers,
    })
}

/// `Theta_q(Q) = sum_omega Q_(omega,-) (x) A(-omega, 0)` for `Q` over
/// `A_(0,-)` with integer support in `[-q, q]`.
pub fn theta(q: &ProjectivePresentation, bound: i64) -> Result<ProjectivePresentation> {
    let parent = q
        .algebra()
        .restriction_parent()
        .ok_or_else(|| Error::AlgebraMismatch(format!("{} is not a zero part", q.algebra())))?;
    require_positive(parent)?;
    for i in live_rows(q.idempotent()) {
        let k = generator_degree(&q.shifts()[i]);
        if k.abs() > bound {
            return Err(Error::SupportBound(format!("generator degree {k} outside [-{bound}, {bound}]")));
        }
    }
    functor_s(q)
}

/// `Psi_q(P) = sum_omega T(P)_(omega,-)` for `P` with `F^(-q) P = 0` and
/// `F^q P = P`.
pub fn psi_q(p: &ProjectivePresentation, bound: i64) -> Result<ProjectivePresentation> {
    for k in jumps(p)? {
        if k <= -bound || k > bound {
            return Err(Error::SupportBound(format!("jump {k} outside ({}, {bound}]", -bound)));
        }
    }
    Ok(functor_t(p)?.trim())
}

/// Span in the ambient component at `h` of `P_(h') A_(h - h')` over the
/// degrees `h'` of the window with integer part at most `lambda`.
pub fn generated_span(p: &ProjectivePresentation, lambda: i64, h: &Degree, w: &Window) -> EchelonBasis {
    let alg = p.algebra();
    let g = alg.group();
    let off = offsets(alg, p.shifts(), h);
    let mut span = EchelonBasis::new(alg.field(), *off.last().unwrap());
    for h0 in w.degrees(alg) {
        if h0.omega().unwrap_or(0) > lambda {
            continue;
        }
        let d = g.sub(h, &h0);
        let dd = alg.component_dim(&d);
        if dd == 0 {
            continue;
        }
        let src = offsets(alg, p.shifts(), &h0);
        let basis = p.component_basis(&h0);
        for k in 0..dd {
            let a = alg.basis_element(&d, k);
            let blocks: Vec<_> = p
                .shifts()
                .iter()
                .map(|s| alg.right_mul_matrix(&a, &g.add(s, &h0)))
                .collect();
            for v in basis.iter() {
                let mut out = Vec::with_capacity(*off.last().unwrap());
                for (i, m) in blocks.iter().enumerate() {
                    out.extend(m.mul_vec(&v[src[i]..src[i + 1]]));
                }
                span.insert(&out);
            }
        }
    }
    span
}

/// The maps on the `k`-th layer induced by two sections differ by a map into
/// `F^(lambda_k - 1) P`.
pub fn section_independent(
    p: &ProjectivePresentation,
    k: usize,
    seed_a: u64,
    seed_b: u64,
    radius: Option<i64>,
) -> Result<bool> {
    let js = jumps(p)?;
    let Some(&l) = js.get(k) else {
        return Ok(true);
    };
    let idx: Vec<usize> = (0..p.ambient_rank())
        .filter(|&i| generator_degree(&p.shifts()[i]) == l)
        .collect();
    let all: Vec<usize> = (0..p.ambient_rank()).collect();
    let diff = section(p, seed_a)?.matrix.sub(&section(p, seed_b)?.matrix);
    let diff = diff.select(&all, &idx);
    let t = functor_t(p)?;
    let block_shifts: Vec<Degree> = idx.iter().map(|&i| p.shifts()[i].clone()).collect();
    let block = functor_s(&ProjectivePresentation::new(
        t.algebra(),
        block_shifts,
        t.idempotent().select(&idx, &idx),
    )?)?;
    let w = p.window(radius);
    for h in w.degrees(p.algebra()) {
        let basis = block.component_basis(&h);
        if basis.is_empty() {
            continue;
        }
        let lower = generated_span(p, l - 1, &h, &w);
        let m = diff.component_matrix(&h);
        if basis.iter().any(|v| !lower.contains(&m.mul_vec(v))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `M A_+ = M` (that is, `T(M) = 0`) forces `M = 0`. Returns whether the
/// implication holds for `m`.
pub fn nakayama_check(m: &ProjectivePresentation, radius: Option<i64>) -> Result<bool> {
    require_positive(m.algebra())?;
    if !functor_t(m)?.is_zero() {
        return Ok(true);
    }
    Ok(m.is_zero() && m.dims(&m.window(radius)).iter().all(|&d| d == 0))
}

/// Report form of [`nakayama_check`]; an algebra not supported in `N x G` is
/// rejected at the hypothesis.
pub fn nakayama_report(m: &ProjectivePresentation, seed: u64, radius: Option<i64>) -> Result<Report> {
    let alg = m.algebra();
    let mut r = Report::new("nakayama", seed);
    if !r.hypothesis(
        "support in N x G",
        alg.group().rank() >= 1 && alg.nonnegative_in(0),
        format!("{alg}"),
    ) {
        return Ok(r);
    }
    let t_zero = functor_t(m)?.is_zero();
    r.data.insert("t_is_zero".into(), serde_json::json!(t_zero));
    r.check(
        "T(M) = 0 implies M = 0",
        nakayama_check(m, radius)?,
        format!("T(M) zero: {t_zero}, M zero: {}", m.is_zero()),
    );
    Ok(r)
}

fn sum_dims(ps: &[ProjectivePresentation], degrees: &[Degree]) -> Vec<usize> {
    degrees
        .iter()
        .map(|h| ps.iter().map(|p| p.component_dim(h)).sum())
        .collect()
}

/// The filtration checks on `P`; `k0` enables the additivity check.
pub fn filtration_report(
    p: &ProjectivePresentation,
    k0: Option<&K0Result>,
    seed: u64,
    radius: Option<i64>,
) -> Result<Report> {
    let alg = p.algebra();
    let mut r = Report::new("filtration", seed);
    if !r.hypothesis(
        "support in N x G",
        alg.group().rank() >= 1 && alg.nonnegative_in(0),
        format!("{alg}"),
    ) {
        return Ok(r);
    }
    let js = jumps(p)?;
    let n = bound(p)?;
    let w = p.window(radius);
    let degrees = w.degrees(alg);
    let ls = layers(p)?;
    r.data.insert("jumps".into(), serde_json::json!(js));
    r.data.insert("bound".into(), serde_json::json!(n));
    r.data.insert(
        "layer_ranks".into(),
        serde_json::json!(ls.iter().map(|(_, l)| l.ambient_rank()).collect::<Vec<_>>()),
    );

    r.check("F^(-n) P = 0", filter(p, -n)?.is_zero(), format!("n = {n}"));
    r.check("F^n P = P", graded_iso(&filter(p, n)?, p, seed)?, format!("n = {n}"));

    let mut monotone = true;
    let mut generated = true;
    let mut prev: Option<Vec<usize>> = None;
    for l in -n..=n {
        let f = filter(p, l)?;
        let dims = f.dims(&w);
        if let Some(pd) = &prev {
            monotone &= pd.iter().zip(&dims).all(|(a, b)| a <= b);
        }
        for (h, &d) in degrees.iter().zip(&dims) {
            generated &= generated_span(p, l, h, &w).len() == d;
        }
        prev = Some(dims);
    }
    r.check("filtration is monotone", monotone, format!("lambda in [{}, {n}]", -n));
    r.check(
        "F^lambda P is the submodule generated in integer degree <= lambda",
        generated,
        format!("{} degrees", degrees.len()),
    );

    let layer_mods: Vec<ProjectivePresentation> = ls.iter().map(|(_, l)| l.clone()).collect();
    r.check(
        "layer dimensions sum to P",
        sum_dims(&layer_mods, &degrees) == p.dims(&w),
        format!("{} layers", ls.len()),
    );

    let q = n.max(1);
    let psi_p = psi_q(p, q)?;
    let tp = theta(&psi_p, q)?;
    let mut sum = ProjectivePresentation::zero(alg);
    for l in &layer_mods {
        sum = sum.direct_sum(l)?;
    }
    r.check("Theta(Psi(P)) = sum of layers", graded_iso(&tp, &sum, seed)?, String::new());
    let back = psi_q(&tp, q)?;
    let qw = psi_p.window(radius);
    let same = back.dims(&qw) == psi_p.dims(&qw) && nu(&psi_p)?.is_iso_on(&qw.degrees(psi_p.algebra()))?;
    r.check("Psi(Theta(Q)) = Q", same, String::new());

    let (sa, sb) = (2 * seed + 1, 2 * seed + 2);
    let independent = (0..js.len())
        .map(|k| section_independent(p, k, sa, sb, radius))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    r.check(
        "layers independent of the section",
        independent,
        format!("section seeds {sa} and {sb}"),
    );

    if let Some(k) = k0 {
        let whole = k.class_map(p)?;
        let mut parts = K0Class::default();
        for l in &layer_mods {
            parts = parts.add(&k.class_map(l)?);
        }
        r.check("[P] = sum of layer classes", whole == parts, String::new());
    }
    Ok(r)
}

/// The correspondence checks on `P`: `ST(P) = P` via `psi`, `TS(Q) = Q` via
/// `nu`.
pub fn swan_report(p: &ProjectivePresentation, seed: u64, radius: Option<i64>) -> Result<Report> {
    let alg = p.algebra();
    let mut r = Report::new("swan", seed);
    if !r.hypothesis(
        "support in N x G",
        alg.group().rank() >= 1 && alg.nonnegative_in(0),
        format!("{alg}"),
    ) {
        return Ok(r);
    }
    let w = p.window(radius);
    let degrees = w.degrees(alg);
    let t = functor_t(p)?;
    let tw = t.window(radius).union(&w);
    let tdeg = tw.degrees(t.algebra());

    let f = projection_to_t(p)?;
    let g = section(p, seed)?;
    let fg = f.compose(&g);
    let mut split = true;
    for h in &tdeg {
        split &= fg.component_matrix(h)?.is_identity();
    }
    r.check("section splits the projection", split, String::new());

    let g0 = section(p, 0)?;
    let diff = g.matrix.sub(&g0.matrix).transfer_to(t.algebra());
    r.check("two sections differ by a map into P A_+", diff.is_zero(), String::new());

    let map = psi(p, seed)?;
    let t_map = functor_t_map(&map)?;
    r.check(
        "T(psi) = nu on T(P)",
        t_map.matrix == nu(&t)?.matrix,
        String::new(),
    );
    let t_iso = t_map.is_iso_on(&tdeg)?;
    let iso = map.is_iso_on(&degrees)?;
    r.check("T(psi) invertible on the window", t_iso, format!("{} degrees", tdeg.len()));
    r.check("psi invertible on the window", iso, format!("{} degrees", degrees.len()));

    let st = functor_s(&t)?;
    r.check("ST(P) = P", graded_iso(&st, p, seed)?, String::new());
    let ts = functor_t(&st)?;
    r.check("nu invertible on the window", nu(&t)?.is_iso_on(&tdeg)?, String::new());
    r.check("TS(Q) = Q for Q = T(P)", graded_iso(&ts, &t, seed)?, String::new());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::grading::GradingGroup;

    fn qx() -> GradedAlgebra {
        GradedAlgebra::poly(&GradedAlgebra::base_field(Field::Rationals), &[1]).unwrap()
    }

    fn deg(a: &GradedAlgebra, x: i64) -> Degree {
        a.group().degree(vec![x], vec![]).unwrap()
    }

    #[test]
    fn filter_of_shifted_free() {
        let a = qx();
        let p = ProjectivePresentation::free(&a, vec![deg(&a, 0), deg(&a, -2)]);
        assert_eq!(jumps(&p).unwrap(), vec![0, 2]);
        let f = filter(&p, 1).unwrap();
        assert_eq!(f.shifts(), &[deg(&a, 0)]);
        assert_eq!(bound(&p).unwrap(), 2);
        for w in [-3, 0, 3] {
            let single = ProjectivePresentation::free(&a, vec![deg(&a, w)]);
            for l in -5..5 {
                assert_eq!(filter(&single, l).unwrap().is_zero(), l < -w);
            }
        }
    }

    #[test]
    fn reports_pass_on_qx() {
        let a = qx();
        let p = ProjectivePresentation::free(&a, vec![deg(&a, 0), deg(&a, -2), deg(&a, 1)]);
        let k = crate::ktheory::k0(&a, 0).unwrap();
        let r = filtration_report(&p, Some(&k), 3, None).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        let r = swan_report(&p, 3, None).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn theta_bound_and_nakayama() {
        let a = qx();
        let t = functor_t(&ProjectivePresentation::free(&a, vec![deg(&a, -3)])).unwrap();
        assert!(matches!(theta(&t, 2), Err(Error::SupportBound(_))));
        assert!(theta(&t, 3).is_ok());
        let laurent = GradedAlgebra::group_algebra(Field::Rationals, GradingGroup::integers());
        let m = ProjectivePresentation::regular(&laurent);
        assert!(matches!(nakayama_check(&m, None), Err(Error::HypothesisNotMet(_))));
        assert!(nakayama_check(&ProjectivePresentation::zero(&a), None).unwrap());
    }
}
