//! Acceptance criteria, one line each.
//!
//! All comparisons are exact (tolerance 0): arithmetic is over F_p or Q.
//! Runtime budgets are pinned per criterion and count as part of the check.
//! Expected values come from hand derivations or from the oracles below,
//! which use only field arithmetic and the raw action matrices.

use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use catres::exec::Threads;
use catres::format::{self, AnyAlgebra};
use catres::with_field;
use catres_core::auslander::{build_auslander, verify_auslander, AuslanderData};
use catres_core::certify::{
    adjunction_suite, certify_resolution, density_suite, four_term_suite, kernel_char_suite,
    unit_iso_suite, weakly_crepant_suite, CertConfig, Sequential, SuiteResult,
};
use catres_core::functors::theta;
use catres_core::homology::{
    global_dimension_with, is_self_injective, GlobalDimension, ProjResolution, ResolutionStatus,
};
use catres_core::modules::{hom_space, is_isomorphic, projective_cover, IsoBudget, Projectives};
use catres_core::random::{module, sample_rng};
use catres_core::{Algebra, Field, Mat, Repn};

/// Zero tolerance: every compared quantity is an exact integer or field element.
const TOLERANCE: usize = 0;
const SEED: u64 = 2024;

const BUDGET_1: Duration = Duration::from_secs(5);
const BUDGET_2: Duration = Duration::from_secs(30);
const BUDGET_3: Duration = Duration::from_secs(30);
const BUDGET_4: Duration = Duration::from_secs(120);
const BUDGET_5: Duration = Duration::from_secs(300);
const BUDGET_6: Duration = Duration::from_secs(300);
const BUDGET_7: Duration = Duration::from_secs(300);
const BUDGET_8: Duration = Duration::from_secs(300);
const BUDGET_9: Duration = Duration::from_secs(300);

const CORPUS: [&str; 8] = [
    "x2_f2.json",
    "x2_f5.json",
    "x3_f3.json",
    "x3_f7.json",
    "x3_q.json",
    "gentle_f3.json",
    "t2_q.json",
    "kxk_f5.json",
];

/// Algebras with nontrivial functor suites: self-injective and not.
const SUITE_ALGEBRAS: [&str; 3] = ["x2_f2.json", "x3_f3.json", "gentle_f3.json"];

type Check = Result<String, String>;

/// Criteria whose expected value does not hold mathematically. They still run
/// and print FAIL; the binary fails if one of them starts passing.
const KNOWN_FAILURES: [(usize, &str); 1] = [(
    3,
    "kQ/(ab) on the 2-cycle has global dimension 2 (pd S_1 = 2, pd S_2 = 1), so no syzygy is periodic",
)];

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn load(name: &str) -> AnyAlgebra {
    format::load_algebra(&corpus_dir().join(name))
        .unwrap_or_else(|e| panic!("corpus file {name}: {e}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- oracles ----

/// Rank by plain Gaussian elimination on row vectors.
fn dense_rank<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(&rows[rank][c]).expect("nonzero pivot");
        let pivot: Vec<F::Elem> = rows[rank].iter().map(|x| f.mul(x, &inv)).collect();
        #[allow(clippy::needless_range_loop)]
        for r in 0..rows.len() {
            if r != rank && !f.is_zero(&rows[r][c]) {
                let k = rows[r][c].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn mat_rows<F: Field>(m: &Mat<F>) -> Vec<Vec<F::Elem>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// `dim Hom(M, N)`: solve `ρ_M(b) X = X ρ_N(b)` for every basis element `b`
/// as one dense system in the `m·n` entries of `X`.
fn brute_hom_dim<F: Field>(m: &Repn<F>, n: &Repn<F>) -> usize {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return 0;
    }
    let mut eqs = Vec::new();
    for (a, b) in m.actions().iter().zip(n.actions()) {
        for r in 0..dm {
            for c in 0..dn {
                let mut row = vec![f.zero(); dm * dn];
                for k in 0..dm {
                    let x = &mut row[k * dn + c];
                    *x = f.add(x, a.get(r, k));
                }
                for k in 0..dn {
                    let x = &mut row[r * dn + k];
                    *x = f.sub(x, b.get(k, c));
                }
                eqs.push(row);
            }
        }
    }
    dm * dn - dense_rank(f, eqs)
}

/// `Λ/Jⁱ` for `Λ = k[x]/(xⁿ)` on the basis `1, x, …, xⁱ⁻¹`, with the
/// algebra basis `1, x, …, xⁿ⁻¹`.
fn truncation<F: Field>(lambda: &Arc<Algebra<F>>, i: usize) -> Repn<F> {
    let f = lambda.field();
    let action = (0..lambda.dim())
        .map(|k| Mat::from_fn(f, i, i, |r, c| if r + k == c { f.one() } else { f.zero() }))
        .collect();
    Repn::new(lambda.clone(), i, action).expect("truncations are modules")
}

/// Exactness and minimality of a resolution, from ranks of the raw matrices.
fn check_resolution<F: Field>(res: &ProjResolution<F>) -> Result<(), String> {
    let f = res.module.field();
    let rank = |m: &Mat<F>| dense_rank(f, mat_rows(m));
    ensure(rank(&res.augmentation.matrix) == res.module.dim(), || {
        "augmentation not onto".into()
    })?;
    let mut kernel = res.terms[0].dim() - res.module.dim();
    for (i, d) in res.differentials.iter().enumerate() {
        let r = rank(&d.matrix);
        ensure(r == kernel, || format!("not exact at P_{i}"))?;
        kernel = res.terms[i + 1].dim() - r;
        let target = &res.terms[i];
        let mut rad = Vec::new();
        for j in target
            .algebra()
            .radical_chain()
            .map_err(|e| e.to_string())?
            .radical()
            .basis()
        {
            let act = target.element_action(j);
            rad.extend(mat_rows(&act));
        }
        let rad_rank = dense_rank(f, rad.clone());
        rad.extend(mat_rows(&d.matrix));
        ensure(dense_rank(f, rad) == rad_rank, || {
            format!("image of d_{i} leaves the radical: not minimal")
        })?;
    }
    if let ResolutionStatus::Complete { .. } = res.status {
        ensure(kernel == 0, || "last differential not injective".into())?;
    }
    Ok(())
}

/// `ϑ(F)` as the cokernel of the corner parts of a projective presentation
/// `P₁ → P₀ → F`, with `Λ` acting through the corner isomorphism.
fn theta_by_presentation<F: Field>(
    m: &Repn<F>,
    data: &AuslanderData<F>,
) -> Result<Repn<F>, String> {
    let f = m.field();
    let proj = &data.tilde_projectives;
    let p0 = projective_cover(m, proj).map_err(|e| e.to_string())?;
    let k = p0.map.kernel();
    let p1 = projective_cover(&k.source, proj).map_err(|e| e.to_string())?;
    let d = p1.map.then(&k);
    let corner_part = |p: &Repn<F>| -> Vec<Vec<F::Elem>> {
        let rows = mat_rows(&p.element_action(&data.e));
        let r = dense_rank(f, rows.clone());
        let mut basis: Vec<Vec<F::Elem>> = Vec::new();
        for v in rows {
            let mut trial = basis.clone();
            trial.push(v.clone());
            if dense_rank(f, trial) > basis.len() {
                basis.push(v);
            }
        }
        assert_eq!(basis.len(), r);
        basis
    };
    let top0 = &d.target;
    let e0 = corner_part(top0);
    let image: Vec<Vec<F::Elem>> = corner_part(&d.source)
        .iter()
        .map(|v| d.matrix.apply_row(v))
        .collect();
    // Quotient of span(e0) by the image: extend a basis of the image to span(e0).
    let mut sub: Vec<Vec<F::Elem>> = Vec::new();
    for v in image {
        let mut t = sub.clone();
        t.push(v.clone());
        if dense_rank(f, t) > sub.len() {
            sub.push(v);
        }
    }
    let mut comp: Vec<Vec<F::Elem>> = Vec::new();
    for v in &e0 {
        let mut t = sub.clone();
        t.extend(comp.iter().cloned());
        t.push(v.clone());
        if dense_rank(f, t) > sub.len() + comp.len() {
            comp.push(v.clone());
        }
    }
    let q = comp.len();
    let basis = Mat::from_rows(f, top0.dim(), &[comp.clone(), sub.clone()].concat());
    let lambda = &data.lambda;
    let action = (0..lambda.dim())
        .map(|i| {
            let a = data.lambda_to_corner(&lambda.basis_element(i));
            let rho = top0.element_action(&a);
            let rows: Vec<Vec<F::Elem>> = comp
                .iter()
                .map(|v| {
                    let w = Mat::row_vector(f, v).mul(&rho);
                    let c = basis
                        .solve_left(&w)
                        .ok()
                        .flatten()
                        .expect("the corner part is a submodule over eÃe");
                    c.row(0)[..q].to_vec()
                })
                .collect();
            Mat::from_rows(f, q, &rows)
        })
        .collect();
    Repn::new(lambda.clone(), q, action).map_err(|e| e.to_string())
}

trait ApplyRow<F: Field> {
    fn apply_row(&self, v: &[F::Elem]) -> Vec<F::Elem>;
}

impl<F: Field> ApplyRow<F> for Mat<F> {
    fn apply_row(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        Mat::row_vector(self.field(), v).mul(self).row(0).to_vec()
    }
}

// ---- criteria ----

fn criterion_1() -> Check {
    fn one<F: Field>(lambda: &Arc<Algebra<F>>, n: usize, dim_m: usize, dim_tilde: usize) -> Check {
        let start = Instant::now();
        let data = build_auslander(lambda).map_err(|e| e.to_string())?;
        let r = verify_auslander(&data, n + 2).map_err(|e| e.to_string())?;
        let formula: usize = (1..=n).flat_map(|i| (1..=n).map(move |j| i.min(j))).sum();
        let brute: usize = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| brute_hom_dim(&truncation(lambda, i), &truncation(lambda, j)))
            .sum();
        ensure(r.n == n, || format!("n = {}", r.n))?;
        ensure(r.dim_m == dim_m, || format!("dim M = {}", r.dim_m))?;
        ensure(
            r.dim_tilde == dim_tilde && formula == dim_tilde && brute == dim_tilde,
            || {
                format!(
                    "dim Auslander = {}, Σmin = {formula}, brute force = {brute}",
                    r.dim_tilde
                )
            },
        )?;
        ensure(r.dim_corner == lambda.dim() && r.corner_iso_ok, || {
            format!("corner {:?}", r.corner_failures)
        })?;
        let t = start.elapsed();
        ensure(t <= BUDGET_1, || format!("{t:?} over budget"))?;
        Ok(format!(
            "n={n} dimM={dim_m} dimÃ={dim_tilde} dim eÃe={} ({:.2}s)",
            r.dim_corner,
            t.as_secs_f64()
        ))
    }
    let a = match load("x2_f5.json") {
        format::Any::Prime(c) => one(&c.algebra, 2, 3, 5)?,
        _ => return Err("x2_f5 is not over F_5".into()),
    };
    let b = match load("x3_f7.json") {
        format::Any::Prime(c) => one(&c.algebra, 3, 6, 14)?,
        _ => return Err("x3_f7 is not over F_7".into()),
    };
    Ok(format!("F_5[x]/x²: {a}; F_7[x]/x³: {b}"))
}

fn criterion_2() -> Check {
    fn one<F: Field>(lambda: &Arc<Algebra<F>>, expect: Option<usize>) -> Result<usize, String> {
        let start = Instant::now();
        let data = build_auslander(lambda).map_err(|e| e.to_string())?;
        let (verdict, resolutions) = global_dimension_with(&data.tilde_projectives, data.n + 2)
            .map_err(|e| e.to_string())?;
        let GlobalDimension::Finite { dim } = verdict else {
            return Err(format!("verdict {verdict}"));
        };
        if let Some(e) = expect {
            ensure(dim == e, || format!("finite({dim}), expected finite({e})"))?;
        }
        for r in &resolutions {
            ensure(
                matches!(r.status, ResolutionStatus::Complete { .. }),
                || "incomplete certificate".into(),
            )?;
            check_resolution(r)?;
        }
        ensure(start.elapsed() <= BUDGET_2, || {
            format!("{:?} over budget", start.elapsed())
        })?;
        Ok(dim)
    }
    let mut parts = Vec::new();
    for name in CORPUS {
        let expect = matches!(name, "x2_f5.json" | "x3_f7.json").then_some(2);
        let a = load(name);
        let d =
            with_field!(&a, c => one(&c.algebra, expect)).map_err(|e| format!("{name}: {e}"))?;
        parts.push(format!("{} finite({d})", name.trim_end_matches(".json")));
    }
    Ok(parts.join(", "))
}

fn criterion_3() -> Check {
    let mut parts = Vec::new();
    let mut failed = Vec::new();
    for name in ["x2_f2.json", "gentle_f3.json"] {
        let start = Instant::now();
        let a = load(name);
        let verdict = with_field!(&a, c => {
            let proj = Projectives::new(&c.algebra).map_err(|e| e.to_string())?;
            let (v, res) = global_dimension_with(&proj, 10).map_err(|e| e.to_string())?;
            (v, res.len())
        });
        let (v, res) = verdict;
        let label = name.trim_end_matches(".json");
        parts.push(format!("{label}: {v} ({res} resolutions)"));
        if !v.is_infinite() || start.elapsed() > BUDGET_3 {
            failed.push(label);
        }
    }
    let detail = parts.join("; ");
    if failed.is_empty() {
        Ok(detail)
    } else {
        Err(format!(
            "not certified infinite: {}; {detail}",
            failed.join(", ")
        ))
    }
}

fn cfg() -> CertConfig {
    CertConfig {
        seed: SEED,
        samples: 50,
        ..CertConfig::default()
    }
}

fn suite_line(name: &str, s: &SuiteResult) -> Result<String, String> {
    ensure(s.applicable && s.passed && s.failures == TOLERANCE, || {
        format!("{name}: {:?}", s.first_failure)
    })?;
    Ok(format!("{name} {}/{}", s.samples, s.checks))
}

fn executor() -> Threads {
    Threads::from_env().expect("valid CATRES_THREADS")
}

fn over_suite_algebras(budget: Duration, f: impl Fn(&str, &AnyAlgebra) -> Check) -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    for name in SUITE_ALGEBRAS {
        let a = load(name);
        parts.push(format!(
            "{}: {}",
            name.trim_end_matches(".json"),
            f(name, &a)?
        ));
    }
    let t = start.elapsed();
    ensure(t <= budget, || format!("{t:?} over budget"))?;
    Ok(format!("{} ({:.1}s)", parts.join("; "), t.as_secs_f64()))
}

fn criterion_4() -> Check {
    over_suite_algebras(BUDGET_4, |_, a| {
        with_field!(a, c => {
            let data = build_auslander(&c.algebra).map_err(|e| e.to_string())?;
            let s = unit_iso_suite(&data, &cfg(), &executor());
            ensure(s.samples == 100 && s.checks == 120, || format!("ran {} samples, {} checks", s.samples, s.checks))?;
            suite_line("unit", &s)
        })
    })
}

fn criterion_5() -> Check {
    over_suite_algebras(BUDGET_5, |_, a| {
        with_field!(a, c => {
            let data = build_auslander(&c.algebra).map_err(|e| e.to_string())?;
            let s = adjunction_suite(&data, &cfg(), &executor());
            ensure(s.samples == 50, || format!("ran {} samples", s.samples))?;
            suite_line("adjunction", &s)
        })
    })
}

fn criterion_6() -> Check {
    over_suite_algebras(BUDGET_6, |_, a| {
        with_field!(a, c => {
            let data = build_auslander(&c.algebra).map_err(|e| e.to_string())?;
            let ex = executor();
            let parts = [
                suite_line("four-term", &four_term_suite(&data, &cfg(), &ex))?,
                suite_line("cone", &density_suite(&data, &cfg(), &ex))?,
                suite_line("kernel", &kernel_char_suite(&data, &cfg(), &ex))?,
            ];
            Ok(parts.join(" "))
        })
    })
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    for name in ["x2_f2.json", "x3_f3.json"] {
        let a = load(name);
        let line = with_field!(&a, c => {
            let data = build_auslander(&c.algebra).map_err(|e| e.to_string())?;
            ensure(is_self_injective(&c.algebra).map_err(|e| e.to_string())?, || "not self-injective".into())?;
            let s = weakly_crepant_suite(&data, &cfg(), &executor()).map_err(|e| e.to_string())?;
            let injectives = data.lambda_projectives.projectives.len();
            ensure(s.checks == 50 + 30 + injectives, || format!("{} checks", s.checks))?;
            suite_line("crepant", &s)
        })?;
        parts.push(format!("{}: {line}", name.trim_end_matches(".json")));
    }
    let t2 = load("t2_q.json");
    let report = with_field!(&t2, c => certify_resolution(&c.algebra, &CertConfig { samples: 1, ..cfg() }, &Sequential))
        .map_err(|e| e.to_string())?;
    ensure(!report.suites["weakly_crepant"].applicable, || {
        "T2 reported applicable".into()
    })?;
    parts.push("t2: inapplicable".into());
    let t = start.elapsed();
    ensure(t <= BUDGET_7, || format!("{t:?} over budget"))?;
    Ok(format!("{} ({:.1}s)", parts.join("; "), t.as_secs_f64()))
}

fn criterion_8() -> Check {
    fn homs<F: Field>(a: &Arc<Algebra<F>>, index: u64) -> Result<usize, String> {
        let proj = Projectives::new(a).map_err(|e| e.to_string())?;
        let mut rng = sample_rng(SEED, 80, index);
        let mut mods: Vec<Repn<F>> = proj
            .projectives
            .iter()
            .chain(&proj.simples)
            .cloned()
            .collect();
        mods.extend((0..6).map(|_| module(a, &proj, 6, &mut rng)));
        mods.retain(|m| m.dim() <= 6);
        let mut pairs = 0;
        for m in &mods {
            for n in &mods {
                let fast = hom_space(m, n).map_err(|e| e.to_string())?.dim();
                let slow = brute_hom_dim(m, n);
                ensure(fast == slow, || {
                    format!(
                        "dim Hom {fast} vs brute force {slow} (dims {}, {})",
                        m.dim(),
                        n.dim()
                    )
                })?;
                pairs += 1;
            }
        }
        Ok(pairs)
    }
    fn thetas<F: Field>(lambda: &Arc<Algebra<F>>, count: u64) -> Result<(), String> {
        let data = build_auslander(lambda).map_err(|e| e.to_string())?;
        for i in 0..count {
            let mut rng = sample_rng(SEED, 81, i);
            let m = module(data.tilde(), &data.tilde_projectives, 12, &mut rng);
            let restricted = theta(&m, &data).map_err(|e| e.to_string())?.module;
            let presented = theta_by_presentation(&m, &data)?;
            ensure(restricted.dim() == presented.dim(), || {
                format!(
                    "sample {i}: dims {} vs {}",
                    restricted.dim(),
                    presented.dim()
                )
            })?;
            let iso = is_isomorphic(&restricted, &presented, IsoBudget::default())
                .map_err(|e| format!("sample {i}: {e}"))?;
            ensure(iso.is_some(), || format!("sample {i}: not isomorphic"))?;
        }
        Ok(())
    }
    let start = Instant::now();
    let mut pairs = 0;
    for (k, name) in CORPUS.iter().enumerate() {
        let a = load(name);
        pairs += with_field!(&a, c => {
            let mut p = homs(&c.algebra, k as u64)?;
            let data = build_auslander(&c.algebra).map_err(|e| e.to_string())?;
            if data.tilde().dim() <= 14 {
                p += homs(data.tilde(), 100 + k as u64)?;
            }
            Ok::<_, String>(p)
        })
        .map_err(|e| format!("{name}: {e}"))?;
    }
    let mut modules = 0;
    for name in ["x2_f2.json", "x3_f3.json"] {
        let a = load(name);
        with_field!(&a, c => thetas(&c.algebra, 30)).map_err(|e| format!("{name}: {e}"))?;
        modules += 30;
    }
    let t = start.elapsed();
    ensure(t <= BUDGET_8, || format!("{t:?} over budget"))?;
    Ok(format!(
        "{pairs} hom pairs, {modules} ϑ modules ({:.1}s)",
        t.as_secs_f64()
    ))
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let name = "x3_f3.json";
    let a = load(name);
    let config = CertConfig {
        seed: 7,
        samples: 20,
        ..CertConfig::default()
    };
    let json = |threads: Option<usize>| -> Result<String, String> {
        let r = match threads {
            None => with_field!(&a, c => certify_resolution(&c.algebra, &config, &Sequential)),
            Some(t) => {
                let ex = Threads::new(NonZeroUsize::new(t).unwrap());
                with_field!(&a, c => certify_resolution(&c.algebra, &config, &ex))
            }
        };
        r.map(|r| format::to_json(&r)).map_err(|e| e.to_string())
    };
    let base = json(None)?;
    for t in [None, Some(1), Some(2), Some(5)] {
        ensure(json(t)? == base, || {
            format!("report differs with threads {t:?}")
        })?;
    }
    let cli = |threads: &str| -> Result<(Vec<u8>, Option<i32>), String> {
        let out = Command::new(env!("CARGO_BIN_EXE_catres"))
            .args(["certify", "--samples", "20", "--seed", "7"])
            .arg(corpus_dir().join(name))
            .env("CATRES_THREADS", threads)
            .output()
            .map_err(|e| e.to_string())?;
        Ok((out.stdout, out.status.code()))
    };
    let (one, code1) = cli("1")?;
    let (four, code4) = cli("4")?;
    ensure(one == four && code1 == code4, || {
        "CLI output depends on CATRES_THREADS".into()
    })?;
    ensure(one == base.as_bytes(), || {
        "CLI and library reports differ".into()
    })?;
    ensure(code1 == Some(0), || format!("exit code {code1:?}"))?;
    let t = start.elapsed();
    ensure(t <= BUDGET_9, || format!("{t:?} over budget"))?;
    Ok(format!(
        "{} bytes identical over 6 runs, threads 1..5 ({:.1}s)",
        base.len(),
        t.as_secs_f64()
    ))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 9] = [
        ("Auslander construction fixtures", criterion_1),
        (
            "finite global dimension of the Auslander algebra",
            criterion_2,
        ),
        (
            "infinite global dimension by syzygy periodicity",
            criterion_3,
        ),
        ("unit isomorphism and naturality", criterion_4),
        ("left adjunction bijection", criterion_5),
        (
            "four-term sequences, cones and kernel characterization",
            criterion_6,
        ),
        ("weakly crepant", criterion_7),
        ("oracle equivalence", criterion_8),
        ("determinism across runs and thread counts", criterion_9),
    ];
    println!("acceptance: seed {SEED}, tolerance {TOLERANCE} (exact)");
    let mut passed = 0;
    let mut unexpected = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let known = KNOWN_FAILURES
            .iter()
            .find(|(k, _)| *k == id)
            .map(|(_, why)| *why);
        let start = Instant::now();
        let result = run();
        let t = start.elapsed().as_secs_f64();
        match (result, known) {
            (Ok(detail), None) => {
                passed += 1;
                println!("[PASS] {id} {title} ({t:.2}s): {detail}");
            }
            (Ok(detail), Some(_)) => {
                unexpected.push(id);
                println!("[PASS] {id} {title} ({t:.2}s): {detail} (listed as a known failure; update the list)");
            }
            (Err(reason), None) => {
                unexpected.push(id);
                println!("[FAIL] {id} {title} ({t:.2}s): {reason}");
            }
            (Err(reason), Some(why)) => {
                println!("[FAIL] {id} {title} ({t:.2}s): {reason} (known: {why})")
            }
        }
    }
    println!(
        "acceptance: {passed} passed, {} failed ({} known)",
        criteria.len() - passed,
        criteria.len()
            - passed
            - unexpected
                .iter()
                .filter(|id| KNOWN_FAILURES.iter().all(|(k, _)| k != *id))
                .count()
    );
    if !unexpected.is_empty() {
        println!("acceptance: unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
