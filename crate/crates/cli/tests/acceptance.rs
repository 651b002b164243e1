//! Acceptance criteria, one PASS/FAIL line each. Every check is exact; the
//! only tolerances are the wall-clock limits pinned below.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{graded, quotient_homology_dim, quotient_map_kernel_dim, sum, Dense, Graded};
use mixhom_core::builders::{
    appendix0, banalitaet_pair, example1, example2, exterior_algebra, ncforms_build, random_mixed,
};
use mixhom_core::complex::{hat, images_of, sub_complex};
use mixhom_core::deform::{
    imishom_check, pbar_decomposition, verify_cuqu, verify_relazion, DeformedStructure, BREXIT,
    TUESDAY, WATT_FIRST, WATT_SECOND,
};
use mixhom_core::homology::{
    corollary_check, imageiso_check, induced_map, linear_homology, pi_kernel, seslemma_check,
    skyscraper_test, total_homology, verify_theorem, Coboundary, Direction, Grading, MapMode,
    TotalComplex,
};
use mixhom_core::linear::rank;
use mixhom_core::{Field, Matrix, MixedComplex, PolySeq};

const Q: Field = Field::Rationals;

const LIMIT_AC1: Duration = Duration::from_secs(1);
const LIMIT_AC2: Duration = Duration::from_secs(5);
const LIMIT_AC3: Duration = Duration::from_secs(1);
const LIMIT_AC4: Duration = Duration::from_secs(60);
const LIMIT_AC5: Duration = Duration::from_secs(120);
const LIMIT_AC6: Duration = Duration::from_secs(10);
const LIMIT_AC7: Duration = Duration::from_secs(1);
const LIMIT_AC8: Duration = Duration::from_secs(30);

const AC5_SEEDS: u64 = 200;
const AC5_EXPLICIT: usize = 20;

/// Sub-claims whose stated value disagrees with an exact computation that
/// two independent implementations reproduce. They still print FAIL; they
/// do not fail the run unless they start passing.
const KNOWN_DISCREPANCIES: &[(&str, &str)] = &[("AC2", "ker pi_2 = 0")];

struct Claim {
    name: String,
    ok: bool,
    detail: String,
}

#[derive(Default)]
struct Claims(Vec<Claim>);

impl Claims {
    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.0.push(Claim { name: name.into(), ok, detail: detail.into() });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: T, want: T) {
        let detail = format!("got {got:?}, want {want:?}");
        self.check(name, got == want, detail);
    }
}

type Outcome = Result<Claims, String>;

fn ac1() -> Outcome {
    let mut c = Claims::default();
    let d = Arc::new(appendix0(Q));
    let h = linear_homology(&d, Direction::Chain).map_err(|e| e.to_string())?;
    c.eq("chain homology dims (1, 1)", h.iter().map(|x| x.dim()).collect::<Vec<_>>(), vec![1, 1]);
    let q = hat(&d).map_err(|e| e.to_string())?;
    let m = induced_map(&q.projection, MapMode::Chain, None).map_err(|e| e.to_string())?;
    c.eq("hat map on H_0 is the identity", m.degree(0).matrix.to_strings(), vec![vec!["1".to_string()]]);
    c.check("hat map on H_1 is zero", m.degree(1).matrix.is_zero(), format!("rank {}", m.degree(1).rank));
    let s = skyscraper_test(&d, Coboundary::D).map_err(|e| e.to_string())?;
    c.eq("not a skyscraper", s.holds, false);
    Ok(c)
}

fn anticommutators(g: &Graded) -> Vec<Dense> {
    (0..=g.top()).map(|n| g.anticommutator(n)).collect()
}

fn boundary_images(g: &Graded) -> Vec<Dense> {
    (0..=g.top())
        .map(|n| if n < g.top() { g.b_at(n + 1) } else { Dense::zeros(g.dims[n], 0) })
        .collect()
}

fn oracle_pi_kernel(base: &MixedComplex, deformed: &MixedComplex, n: isize) -> usize {
    let (g_d, g_u) = (graded(base), graded(deformed));
    let s1 = sum(&anticommutators(&g_d), &anticommutators(&g_u));
    let s2 = sum(&s1, &boundary_images(&g_u));
    quotient_map_kernel_dim(&g_u, &s1, &s2, n)
}

fn ac2() -> Outcome {
    let mut c = Claims::default();
    let q = Q.from_i64(2);
    let d = Arc::new(example1(&q, 6));
    let seq = PolySeq::geometric(q);
    let r = verify_theorem(&d, &seq, None).map_err(|e| e.to_string())?;
    let row = r.row(2);
    c.eq("dim H_2(D, b, Upsilon) = 1", row.deformed, 1);
    c.eq("dim H_2(D^, b^, Upsilon^) = 2", row.hat_deformed, 2);
    c.eq("dim H_2(D, b, d) = 2", row.mixed, 2);
    c.eq("dim H_1(im xi, b, Upsilon) = 1", row.image_xi_previous, 1);
    let s = DeformedStructure::new(d.clone(), &seq).map_err(|e| e.to_string())?;
    let lib = pi_kernel(&d, &seq, Some(4)).map_err(|e| e.to_string())?.degrees[2].kernel_dim();
    let oracle = oracle_pi_kernel(&d, &s.deformed, 2);
    c.check(
        "ker pi_2 = 0",
        lib == 0 && oracle == 0,
        format!("library {lib}, dense oracle {oracle}; the class of ((1-q) y, 0) maps to a boundary once b is divided out"),
    );
    let rows_ok = r.rows.iter().take(5).all(|x| x.part1 && x.part2_injective && x.part2_exact);
    c.check("theorem holds for n <= 4", rows_ok && r.preconditions.hold(), format!("report holds = {}", r.holds));
    Ok(c)
}

fn ac3() -> Outcome {
    let mut c = Claims::default();
    let d = Arc::new(example2(Q));
    let max = 8;
    let tot = TotalComplex::new(&d, Grading::Natural, max).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = (0..=max).map(|n| tot.dim(n)).collect();
    let pattern: Vec<usize> = (0..=max).map(|n| if n > 0 && n % 2 == 0 { 2 } else { 1 }).collect();
    c.eq("tot dims 1 at 0 and odd n, 2 at positive even n", dims, pattern);
    let k = pi_kernel(&d, &PolySeq::one(Q), Some(4)).map_err(|e| e.to_string())?;
    let ker = &k.degrees[2].kernel;
    c.eq("dim ker pi_2 = 1", ker.cols(), 1);
    // Same class as (0, 1): equal modulo boundaries from tot_3, and not a boundary.
    let e = Matrix::from_columns(Q, 2, &[vec![Q.zero(), Q.one()]]);
    let bounds = tot.differential(3);
    let base = rank(&Matrix::hstack(Q, 2, &[bounds, &e]));
    let with_ker = rank(&Matrix::hstack(Q, 2, &[bounds, &e, ker]));
    let nontrivial = rank(&Matrix::hstack(Q, 2, &[bounds, ker])) > rank(bounds);
    c.check("ker pi_2 is spanned by the class of (0, 1)", base == with_ker && nontrivial, format!("kernel {:?}", ker.to_strings()));
    Ok(c)
}

fn ac4() -> Outcome {
    let mut c = Claims::default();
    let d = Arc::new(ncforms_build(&exterior_algebra(Q), 4).map_err(|e| e.to_string())?);
    let s = skyscraper_test(&d, Coboundary::D).map_err(|e| e.to_string())?;
    c.eq("not a skyscraper for d", s.holds, false);
    // 1 (x) xy is basis vector 2 of D_1 = A (x) Abar.
    let mut v = vec![Q.zero(); d.dims()[1]];
    v[2] = Q.one();
    let sub = sub_complex(&d, images_of(&d, &[&d.xi()]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let survives = sub.spaces[1]
        .coordinates(&v)
        .and_then(|coords| s.sub_homology[1].space.class_of(&coords).ok())
        .is_some_and(|class| class.iter().any(|x| !x.is_zero()));
    c.check("1 (x) xy survives in H_1(im xi, b)", survives, format!("dim H_1(im xi, b) = {}", s.sub_homology[1].dim()));
    c.eq("witness in degree 1", s.witness.as_ref().map(|w| w.class_degree), Some(1));
    let cyclic = PolySeq::cyclic(Q);
    let u = skyscraper_test(&d, Coboundary::Upsilon(&cyclic)).map_err(|e| e.to_string())?;
    c.eq("skyscraper for Upsilon (cyclic)", u.holds, true);
    let (st, report) = verify_cuqu(d.clone()).map_err(|e| e.to_string())?;
    c.check("Karoubi identities", report.holds(), format!("{} failures", report.failures().count()));
    // d_N = 0 after truncation, so Xi_N = Upsilon_{N-1} b_N need not vanish.
    let t_id = st.t.ops()[..d.top()].iter().all(|t| *t == Matrix::identity(Q, t.rows()));
    c.eq("T = id below the truncation degree", t_id, true);
    let cor = corollary_check(&d, Some(2)).map_err(|e| e.to_string())?;
    c.check("corollary for n <= 2", cor.rows.iter().all(|r| r.holds), format!("{:?}", cor.rows.iter().map(|r| (r.mixed, r.deformed, r.correction)).collect::<Vec<_>>()));
    Ok(c)
}

fn ac5() -> Outcome {
    let mut c = Claims::default();
    let f = Field::prime(101).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC5);
    let explicit: Vec<PolySeq> = (0..AC5_EXPLICIT)
        .map(|_| PolySeq::random_explicit(f, 8, 3, 50, &mut rng))
        .collect();
    let mut failures = Vec::new();
    let mut runs = 0;
    for seed in 0..AC5_SEEDS {
        let len = rng.random_range(2..=6);
        let dims: Vec<usize> = (0..len).map(|_| rng.random_range(1..=4)).collect();
        let d = Arc::new(random_mixed(f, &dims, seed));
        let q = f.from_i64(rng.random_range(2..=100));
        let fixed = [PolySeq::cyclic(f), PolySeq::one(f), PolySeq::geometric(q)];
        for seq in fixed.iter().chain(&explicit) {
            let s = DeformedStructure::new(d.clone(), seq).map_err(|e| e.to_string())?;
            let r = verify_relazion(&s).map_err(|e| e.to_string())?;
            runs += 1;
            let ok = [WATT_FIRST, WATT_SECOND, BREXIT].iter().all(|id| r.holds_for(id)) && r.holds();
            if !ok {
                failures.push(format!("seed {seed}, {}", seq.label()));
            }
        }
    }
    c.check(
        "both expressions for Xi and the quadratic relation hold",
        failures.is_empty(),
        format!("{runs} runs, failures: {failures:?}"),
    );
    Ok(c)
}

fn ac6() -> Outcome {
    let mut c = Claims::default();
    let q = Q.from_i64(2);
    let d = Arc::new(example1(&q, 6));
    let seq = PolySeq::geometric(q);
    let s = DeformedStructure::new(d.clone(), &seq).map_err(|e| e.to_string())?;
    let p = pbar_decomposition(&s).map_err(|e| e.to_string())?;
    let tuesday = p.report.holds_for(TUESDAY);
    c.check("projector decomposition", p.report.holds(), format!("{} failures", p.report.failures().count()));
    c.eq("image of xibar meets ker xibar^2 in ker xibar", tuesday, true);
    let m = imishom_check(&s).map_err(|e| e.to_string())?;
    c.check("reduced model identities", m.report.holds(), format!("{} failures", m.report.failures().count()));
    let ses = seslemma_check(&m.sub.complex, &seq, None).map_err(|e| e.to_string())?;
    c.eq("short exact sequence on the reduced model", ses.holds, true);
    let iso = imageiso_check(&d, &seq, None).map_err(|e| e.to_string())?;
    let four = iso.rows.iter().filter(|r| r.trusted).all(|r| {
        r.quotient.0 == r.quotient.1
            && r.image_b.0 == r.image_b.1
            && r.pi_image.0 == r.pi_image.1
            && r.pi_kernel.0 == r.pi_kernel.1
    });
    c.check("d and Upsilon give equal dimensions in four places", four && iso.holds, format!("holds = {}", iso.holds));
    Ok(c)
}

fn ac7() -> Outcome {
    let mut c = Claims::default();
    let top = 8;
    let (_, target, phi) = banalitaet_pair(Q, top);
    // Oracle first: k in every degree, b = 0, d = id out of odd degrees.
    let g = Graded {
        dims: vec![1; top + 1],
        b: vec![Dense::zeros(1, 1); top],
        cob: (0..top)
            .map(|n| if n % 2 == 1 { Dense::identity(1) } else { Dense::zeros(1, 1) })
            .collect(),
    };
    let xi = anticommutators(&g);
    let oracle: Vec<usize> = (0..=top - 2).map(|n| quotient_homology_dim(&g, &xi, n as isize)).collect();
    c.eq("oracle: mixed homology of the target is k in trusted degrees", oracle.clone(), vec![1; top - 1]);
    let h = total_homology(&target, Grading::Natural, None).map_err(|e| e.to_string())?;
    let lib: Vec<usize> = h.degrees.iter().filter(|x| x.trusted).map(|x| x.dim()).collect();
    c.eq("library agrees with the oracle", lib, oracle);
    let cochain = induced_map(&phi, MapMode::Cochain, None).map_err(|e| e.to_string())?;
    let mixed = induced_map(&phi, MapMode::Mixed, None).map_err(|e| e.to_string())?;
    c.eq("cochain quasi-isomorphism", cochain.quasi_iso, true);
    c.eq("not a mixed quasi-isomorphism", mixed.quasi_iso, false);
    Ok(c)
}

fn ac8() -> Outcome {
    let mut c = Claims::default();
    let runs: &[&[&str]] = &[
        &["verify", "all", "--builtin", "example1", "--q", "2", "--c", "geometric"],
        &["verify", "theorem", "--builtin", "example1", "--format", "table"],
        &["skyscraper", "--builtin", "exterior2", "--N", "3"],
        &["mixed-homology", "--builtin", "random", "--field", "Fp", "--p", "101", "--seed", "7", "--c", "cyclic"],
        &["build", "--builtin", "exterior2", "--sigma", "sign-flip", "--N", "3"],
    ];
    for args in runs {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_mixhom"))
                .args(*args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        let same = a.stdout == b.stdout && a.status == b.status && !a.stdout.is_empty();
        c.check(&format!("byte-identical: {}", args.join(" ")), same, format!("{} bytes", a.stdout.len()));
    }
    Ok(c)
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: "AC1", title: "two-dimensional complex that is not a skyscraper", limit: LIMIT_AC1, run: ac1 },
    Criterion { id: "AC2", title: "quantum plane, q = 2, geometric sequence", limit: LIMIT_AC2, run: ac2 },
    Criterion { id: "AC3", title: "three-term complex, constant sequence", limit: LIMIT_AC3, run: ac3 },
    Criterion { id: "AC4", title: "exterior algebra forms, N = 4", limit: LIMIT_AC4, run: ac4 },
    Criterion { id: "AC5", title: "deformation identities on random complexes over F_101", limit: LIMIT_AC5, run: ac5 },
    Criterion { id: "AC6", title: "reduction lemmas on the quantum plane", limit: LIMIT_AC6, run: ac6 },
    Criterion { id: "AC7", title: "cochain but not mixed quasi-isomorphism", limit: LIMIT_AC7, run: ac7 },
    Criterion { id: "AC8", title: "deterministic reports", limit: LIMIT_AC8, run: ac8 },
];

fn main() -> ExitCode {
    let mut unexpected = 0;
    for cr in CRITERIA {
        let start = Instant::now();
        let outcome = (cr.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= cr.limit;
        let timing = format!("{:.2} s, limit {} s", elapsed.as_secs_f64(), cr.limit.as_secs());
        match outcome {
            Err(e) => {
                println!("FAIL {} {}: error: {e} ({timing})", cr.id, cr.title);
                unexpected += 1;
            }
            Ok(Claims(claims)) => {
                let failed: Vec<&Claim> = claims.iter().filter(|c| !c.ok).collect();
                let verdict = if failed.is_empty() && in_time { "PASS" } else { "FAIL" };
                println!("{verdict} {} {} ({timing})", cr.id, cr.title);
                if !in_time {
                    println!("     over the time limit");
                    unexpected += 1;
                }
                for claim in &claims {
                    let known = KNOWN_DISCREPANCIES.contains(&(cr.id, claim.name.as_str()));
                    if !claim.ok {
                        let tag = if known { "known discrepancy" } else { "failed" };
                        println!("     {tag}: {}: {}", claim.name, claim.detail);
                        unexpected += usize::from(!known);
                    } else if known {
                        println!("     known discrepancy now passes, update the list: {}", claim.name);
                        unexpected += 1;
                    }
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
