mod common;

use std::time::{Duration, Instant};

use common::*;
use gradedk_core::algebra::GradedAlgebra;
use gradedk_core::field::Field;
use gradedk_core::filtration::{filtration_report, nakayama_check, swan_report};
use gradedk_core::gmod::{HomMatrix, ProjectivePresentation};
use gradedk_core::grading::GradingGroup;
use gradedk_core::ktheory::{corollary_check, dade_check, k0, theorem1_check, Report, Verdict};
use gradedk_core::error::Error;

type Outcome = Result<String, String>;

fn failed_checks(r: &Report) -> String {
    r.hypothesis_checks
        .iter()
        .chain(&r.checks)
        .filter(|c| !c.passed)
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{out}, but took {took:?} (limit {limit:?})"));
    }
    Ok(format!("{out} in {took:?}"))
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(1), || {
        for field in [Field::Rationals, Field::Prime(2)] {
            let a = m5(field);
            let zp = k0(&a.zero_part().unwrap(), 0).map_err(|e| e.to_string())?;
            if !(zp.module.group().is_trivial() && zp.module.num_orbits() == 4) {
                return Err(format!("K0 of the zero part over {field} is {}", zp.describe()));
            }
            let graded = k0(&a, 0).map_err(|e| e.to_string())?;
            if graded.module.free_rank() != Some(1) {
                return Err(format!("graded K0 over {field} is {}", graded.describe()));
            }
            let plain = k0(&a.forget_grading().unwrap(), 0).map_err(|e| e.to_string())?;
            if plain.module.num_orbits() != 1 {
                return Err(format!("ungraded K0 over {field} is {}", plain.describe()));
            }
        }
        Ok("Z^4, free of rank 1 over Z[x,1/x], Z over Q and F_2".into())
    })
}

fn criterion_2() -> Outcome {
    timed(Duration::from_secs(60), || {
        let algs = corpus_algebras();
        for seed in 0..50 {
            let (_, p) = corpus_module(&algs, seed);
            let r = swan_report(&p, seed, None).map_err(|e| format!("seed {seed}: {e}"))?;
            if !r.passed() {
                return Err(format!("seed {seed}: {}", failed_checks(&r)));
            }
        }
        Ok("50 corpus modules".into())
    })
}

fn criterion_3() -> Outcome {
    let algs = corpus_algebras();
    let k0s: Vec<_> = algs.iter().map(|a| k0(a, 0)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    for seed in 0..50 {
        let (i, p) = corpus_module(&algs, seed);
        let r = filtration_report(&p, Some(&k0s[i]), seed, None).map_err(|e| format!("seed {seed}: {e}"))?;
        if !r.passed() {
            return Err(format!("seed {seed}: {}", failed_checks(&r)));
        }
    }
    Ok("50 corpus modules".into())
}

fn criterion_4() -> Outcome {
    let bases = [group_algebra_c2(), m2_c2(), q_times_q()];
    for b in &bases {
        let deg: Vec<i64> = std::iter::once(1).chain(std::iter::repeat(0).take(b.group().ngens())).collect();
        let a = GradedAlgebra::poly(b, &deg).map_err(|e| e.to_string())?;
        let r = theorem1_check(&a, 0, None).map_err(|e| e.to_string())?;
        if !r.passed() || r.correspondence.is_empty() {
            return Err(format!("{a}: {}", failed_checks(&r)));
        }
    }
    let qqxy = GradedAlgebra::poly(&GradedAlgebra::poly(&q_times_q(), &[1]).unwrap(), &[1, 0]).unwrap();
    for (a, rank) in [(qxy(), 1), (qqxy, 2)] {
        let r = corollary_check(&a, None, 0, None).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{a}: {}", failed_checks(&r)));
        }
        let k = k0(&a, 0).map_err(|e| e.to_string())?;
        if k.module.free_rank() != Some(rank) {
            return Err(format!("{a}: graded K0 is {}", k.describe()));
        }
    }
    Ok("theorem over B[x] for three B; corollary over Q[x,y] (rank 1) and (QxQ)[x,y] (rank 2)".into())
}

fn criterion_5() -> Outcome {
    let m5r = dade_check(&m5(Field::Rationals), 0, None).map_err(|e| e.to_string())?;
    let m5_ok = m5r.verdict == Verdict::HypothesisNotMet;
    let c2 = dade_check(&m2_c2(), 0, None).map_err(|e| e.to_string())?;
    let literal = dade_check(&m2_01(), 0, None).map_err(|e| e.to_string())?;
    let summary = format!(
        "Z-graded M2(Q)(0,1): {:?} [{}]; Z/2-graded M2(Q)(0,1): {:?} ({} vs {}); M5 not strongly graded: {m5_ok}",
        literal.verdict,
        failed_checks(&literal),
        c2.verdict,
        c2.lhs_module.clone().unwrap_or_default(),
        c2.rhs_module.clone().unwrap_or_default(),
    );
    if literal.passed() && m5_ok {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn criterion_6() -> Outcome {
    let a = qx();
    let z = GradingGroup::integers();
    let shifts = z_degrees(&[0, -1, 2]);
    let m = ProjectivePresentation::new(&a, shifts.clone(), HomMatrix::zero(&a, &shifts, &shifts))
        .map_err(|e| e.to_string())?;
    if !nakayama_check(&m, None).map_err(|e| e.to_string())? {
        return Err("T(M) = 0 but M has nonzero components".into());
    }
    for seed in 0..20 {
        let algs = corpus_algebras();
        let (_, p) = corpus_module(&algs, seed);
        if !nakayama_check(&p, None).map_err(|e| e.to_string())? {
            return Err(format!("corpus seed {seed}"));
        }
    }
    let laurent = GradedAlgebra::group_algebra(Field::Rationals, z);
    match nakayama_check(&ProjectivePresentation::regular(&laurent), None) {
        Err(Error::HypothesisNotMet(_)) => Ok("zero presentation confirmed; Laurent ring rejected at the hypothesis".into()),
        other => Err(format!("Laurent ring not rejected at the hypothesis: {other:?}")),
    }
}

fn criterion_7() -> Outcome {
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md"))
        .map_err(|e| format!("README.md: {e}"))?;
    if readme.contains("## Higher K-groups") {
        Ok("README documents the K_i (i >= 1) limitation".into())
    } else {
        Err("README lacks the higher K-groups section".into())
    }
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 7] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
    ];
    let mut failures = 0;
    for (n, f) in criteria {
        match f() {
            Ok(msg) => println!("criterion {n}: PASS {msg}"),
            Err(msg) => {
                failures += 1;
                println!("criterion {n}: FAIL {msg}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
