//! Acceptance criteria, each with its runtime budget. Prints one line per
//! criterion and exits nonzero if any fails.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thomason_core::category::{
    cat_product, fundamental_category, iso_check, nerve, nerve_map, saturate, FinPoset, DEFAULT_MAX_PATH_LEN,
};
use thomason_core::filtration::{monoid_filtration_report, muro_hom_filtration};
use thomason_core::homology::{homology, is_homology_iso, smith_normal_form, Matrix};
use thomason_core::simplicial::{last_vertex_map, product, sd, FiniteSimplicialSet};
use thomason_lab::corpus;
use thomason_lab::scenarios::{self, corner_formula_sweep, Options, CLOSURE_MIN_INSTANCES, FILTRATION_STAGES};

type Verdict = Result<String, String>;

/// Number, name, time budget in seconds and the check itself.
type Criterion<'a> = (usize, &'a str, u64, Box<dyn Fn() -> Verdict + 'a>);

fn scenario(name: &str, opts: &Options) -> Verdict {
    let r = scenarios::run(name, opts).map_err(|e| e.to_string())?;
    if r.passed(false) {
        Ok(format!("{} checks", r.checks.len()))
    } else {
        Err(r.to_text())
    }
}

fn w_factorization() -> Verdict {
    let r = scenarios::run("w-factorization", &Options { w_max_dim: 2, ..Options::default() })
        .map_err(|e| e.to_string())?;
    let sizes = &r.check("w.1").ok_or("no w.1 check")?.witness["sizes"];
    if !r.passed(false)
        || (sizes["A"].as_u64(), sizes["W"].as_u64(), sizes["B"].as_u64()) != (Some(2), Some(4), Some(5))
    {
        return Err(r.to_text());
    }
    Ok("n = 0, 1, 2".into())
}

fn corner_formula() -> Verdict {
    match corner_formula_sweep() {
        Ok((true, cases)) => Ok(format!("{cases} cases")),
        Ok((false, cases)) => Err(format!("mismatch after {cases} cases")),
        Err(e) => Err(e.to_string()),
    }
}

fn monoid_filtrations() -> Verdict {
    let problems = corpus::monoid_problems();
    if problems.len() < 5 {
        return Err("fewer than five monoid problems".into());
    }
    for (name, prob) in &problems {
        let r = monoid_filtration_report(prob, FILTRATION_STAGES).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{name}: {r:?}"));
        }
    }
    Ok(format!("{} problems", problems.len()))
}

fn muro_filtrations() -> Verdict {
    let problems = corpus::muro_problems();
    if problems.len() < 3 {
        return Err("fewer than three instances".into());
    }
    for (name, prob) in &problems {
        let (_, r) = muro_hom_filtration(prob, FILTRATION_STAGES).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{name}: {r:?}"));
        }
    }
    Ok(format!("{} instances", problems.len()))
}

fn random_poset(rng: &mut ChaCha8Rng, max: usize) -> FinPoset {
    let n = rng.gen_range(1..=max);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.4) {
                pairs.push((a, b));
            }
        }
    }
    FinPoset::from_relations((0..n).map(|a| format!("p{a}")).collect(), &pairs).unwrap()
}

/// Fraction-free elimination: rank, and the determinant when square.
fn bareiss(rows: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
    let mut a = rows;
    let (mut sign, mut previous, mut rank) = (BigInt::one(), BigInt::one(), 0);
    for col in 0..c {
        if rank == r {
            break;
        }
        let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else { continue };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..r {
            for j in col + 1..c {
                a[i][j] = (&a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j]) / &previous;
            }
            a[i][col] = BigInt::zero();
        }
        previous = a[rank][col].clone();
        rank += 1;
    }
    let det = if r == c && rank == r { sign * &a[r - 1][c - 1] } else { BigInt::zero() };
    (rank, det)
}

fn big_rows(m: &Matrix<BigInt>) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn properties() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..50 {
        let c = random_poset(&mut rng, 6).to_category();
        let back =
            saturate(&fundamental_category(&nerve(&c).unwrap()), DEFAULT_MAX_PATH_LEN).map_err(|e| e.to_string())?;
        if iso_check(&back.category, &c).map_err(|e| e.to_string())?.is_none() {
            return Err(format!("poset {k}: the fundamental category of the nerve differs"));
        }
    }
    for k in 0..200 {
        let (r, c) = (rng.gen_range(1..=10), rng.gen_range(1..=10));
        let m = Matrix::from_rows((0..r).map(|_| (0..c).map(|_| rng.gen_range(-9i64..=9)).collect()).collect());
        let snf = smith_normal_form(&m);
        let big = m.to_big();
        let d = &snf.diagonal;
        let divides = (1..d.len()).all(|i| d[i].is_zero() || (!d[i - 1].is_zero() && (&d[i] % &d[i - 1]).is_zero()));
        let unimodular = bareiss(big_rows(&snf.u)).1.abs().is_one() && bareiss(big_rows(&snf.v)).1.abs().is_one();
        let (rank, det) = bareiss(big_rows(&big));
        let det_ok = r != c || det.abs() == d.iter().fold(BigInt::one(), |acc, x| acc * x);
        if snf.u.mul(&big).mul(&snf.v) != snf.d() || !divides || !unimodular || snf.rank() != rank || !det_ok {
            return Err(format!("matrix {k}: Smith form postconditions fail"));
        }
    }
    for k in 0..30 {
        let simplices: Vec<Vec<usize>> = (0..rng.gen_range(1..=5))
            .map(|_| {
                let mut s: Vec<usize> = (0..5).filter(|_| rng.gen_bool(0.5)).collect();
                if s.is_empty() {
                    s.push(rng.gen_range(0..5));
                }
                s.truncate(4);
                s
            })
            .collect();
        let x = FiniteSimplicialSet::from_simplices((0..5).map(|v| format!("v{v}")).collect(), &simplices).unwrap();
        let sx = sd(&x).unwrap();
        let h = homology(&x);
        let last = is_homology_iso(&last_vertex_map(&Arc::new(x.clone())).unwrap());
        if homology(&sx) != h || sx.euler_characteristic() != x.euler_characteristic() || !last.iso {
            return Err(format!("complex {k}: subdivision changes homology"));
        }
    }
    for k in 0..20 {
        let (p, q) =
            (Arc::new(random_poset(&mut rng, 3).to_category()), Arc::new(random_poset(&mut rng, 3).to_category()));
        let prod = cat_product(&p, &q).unwrap();
        let (np, nq) = (Arc::new(nerve(&p).unwrap()), Arc::new(nerve(&q).unwrap()));
        let target = product(&np, &nq).unwrap();
        let n_prod = nerve(&prod.category).unwrap();
        let (first, second) = (nerve_map(&prod.first).unwrap(), nerve_map(&prod.second).unwrap());
        if n_prod.cell_counts() != target.space.cell_counts() {
            return Err(format!("pair {k}: cell counts of the nerve of a product differ"));
        }
        for m in 0..n_prod.cell_counts().len() {
            let mut images: Vec<_> = (0..n_prod.cell_count(m))
                .map(|c| (first.image_of_cell(m, c).clone(), second.image_of_cell(m, c).clone()))
                .collect();
            let mut expected: Vec<_> = (0..target.space.cell_count(m))
                .map(|t| (target.first.image_of_cell(m, t).clone(), target.second.image_of_cell(m, t).clone()))
                .collect();
            images.sort();
            expected.sort();
            if images != expected {
                return Err(format!("pair {k}: projections disagree in degree {m}"));
            }
        }
    }
    Ok("50 posets, 200 matrices, 30 complexes, 20 products".into())
}

fn closure() -> Verdict {
    let r = scenarios::run("closure", &Options::default()).map_err(|e| e.to_string())?;
    let total = r.check("closure.count").and_then(|c| c.witness["instances"].as_u64()).unwrap_or(0);
    if !r.passed(false) || total < CLOSURE_MIN_INSTANCES as u64 {
        return Err(r.to_text());
    }
    Ok(format!("{total} instances"))
}

fn main() -> ExitCode {
    let opts = Options::default();
    let criteria: Vec<Criterion> = vec![
        (1, "cube counterexample", 10, Box::new(|| scenario("cube", &opts))),
        (2, "corner of the square", 1, Box::new(|| scenario("raptis", &opts))),
        (3, "triple pushout-product", 5, Box::new(|| scenario("triple-product", &opts))),
        (4, "w-factorization", 30, Box::new(w_factorization)),
        (5, "corner formula", 10, Box::new(corner_formula)),
        (6, "monoid filtrations", 60, Box::new(monoid_filtrations)),
        (7, "hom-set filtrations", 60, Box::new(muro_filtrations)),
        (8, "engine properties", 60, Box::new(properties)),
        (9, "closure regression", 60, Box::new(closure)),
    ];
    let mut failed = 0;
    let mut out = std::io::stderr();
    for (n, name, limit, run) in criteria {
        let started = Instant::now();
        let verdict = run();
        let elapsed = started.elapsed();
        let verdict = match verdict {
            Ok(note) if elapsed > Duration::from_secs(limit) => Err(format!("{note}, over the {limit} s budget")),
            v => v,
        };
        let line = match &verdict {
            Ok(note) => format!("criterion {n}: PASS {name} ({note}; {:.2} s)", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                format!("criterion {n}: FAIL {name} ({:.2} s)\n{why}", elapsed.as_secs_f64())
            }
        };
        let _ = writeln!(out, "{line}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
