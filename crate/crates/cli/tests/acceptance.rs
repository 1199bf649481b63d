//! Acceptance criteria, one line per criterion. Runs as a plain binary so the
//! summary is printed even when every criterion passes.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fockcalc_core::matrix::{hermitian_residual, normality_residual};
use fockcalc_core::ops::assemble_matrix;
use fockcalc_core::oracle::check_oracle_agreement;
use fockcalc_core::samples::{self, default_samples, DEFAULT_SEED};
use fockcalc_core::theorems::{
    check_cphi_adjoint_factorization, check_degenerate_commutant, check_eigen_identity, check_h_conjugation,
    check_moebius_conjugation, commutant_symbols, disk_selfmap_by_sampling, disk_selfmap_criterion, fixed_point,
    non_normal_draws, printed_counterexample_tuples, reproduce_counterexample, SelfAdjointSymbolParams,
    NON_NORMAL_FLOOR,
};
use fockcalc_core::{AffineMap, Complex, FockParams, Verdict, WcoSymbol, WcoWeight};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cx(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, budget_secs: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < budget_secs, format!("took {:.2}s, budget {budget_secs}s", elapsed.as_secs_f64()))
}

fn selfadjoint_hermitian() -> Outcome {
    let start = Instant::now();
    let p = SelfAdjointSymbolParams::worked_example(1.0);
    let mut worst: f64 = 0.0;
    for n in [16, 32, 64] {
        let r = hermitian_residual(&assemble_matrix(&p.symbol(), p.fock_params(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?);
        ensure(r <= 1e-12, format!("N={n}: hermitian residual {r:e} > 1e-12"))?;
        worst = worst.max(r);
    }
    within(start.elapsed(), 1.0)?;
    Ok(format!("max hermitian residual {worst:e}"))
}

fn selfadjoint_falsification() -> Outcome {
    let start = Instant::now();
    let mut rng = samples::rng(DEFAULT_SEED);
    let mut smallest = f64::INFINITY;
    for draw in 0..100 {
        let a0 = samples::point_in_disk(&mut rng, 0.9);
        let r = a0.norm();
        let a1 = rng.gen_range((-1.0 + r)..=(1.0 - r));
        let c = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let p = SelfAdjointSymbolParams::new(c, a0, a1, 1.0).map_err(|e| e.to_string())?;
        let zero = cx(0.0, 0.0);
        for (label, q) in [
            ("Im c", p.perturbed(cx(0.0, 0.1), zero, zero)),
            ("Im a1", p.perturbed(zero, cx(0.0, 0.1), zero)),
            ("exponent", p.perturbed(zero, zero, cx(0.1, 0.0))),
        ] {
            let m = assemble_matrix(&q.symbol(), q.fock_params(32).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let res = hermitian_residual(&m);
            ensure(res >= 1e-3, format!("draw {draw}, {label}: residual {res:e} < 1e-3"))?;
            smallest = smallest.min(res);
        }
    }
    within(start.elapsed(), 5.0)?;
    Ok(format!("300 perturbed symbols, smallest residual {smallest:e}"))
}

fn fixed_point_and_conjugation() -> Outcome {
    let map = SelfAdjointSymbolParams::worked_example(1.0).map();
    let b = fixed_point(&map).map_err(|e| e.to_string())?;
    let gap = (b - cx(2.0 / 3.0, 0.0)).norm();
    ensure(gap <= 1e-15, format!("b = {b}, |b - 2/3| = {gap:e}"))?;
    let r = check_h_conjugation(&map, &default_samples(DEFAULT_SEED)).map_err(|e| e.to_string())?;
    let res = r.max_residual("|h(phi").ok_or("no residual")?;
    ensure(res <= 1e-12, format!("h conjugation residual {res:e}"))?;
    Ok(format!("b = {b}, h conjugation residual {res:e}"))
}

fn disk_criterion() -> Outcome {
    let mut rng = samples::rng(DEFAULT_SEED);
    let (mut inside, mut disagreements) = (0, 0);
    for _ in 0..200 {
        let a0 = samples::point_in_disk(&mut rng, 1.2);
        let a1 = rng.gen_range(-1.5..1.5);
        let predicate = disk_selfmap_criterion(a0, a1);
        inside += predicate as usize;
        if predicate != disk_selfmap_by_sampling(a0, a1, 1000) {
            disagreements += 1;
        }
    }
    ensure(disagreements == 0, format!("{disagreements} disagreements"))?;
    Ok(format!("200 draws ({inside} self-maps), 0 disagreements"))
}

fn eigen_identity() -> Outcome {
    let p = SelfAdjointSymbolParams::worked_example(1.0);
    let r = check_eigen_identity(&p, 5, &default_samples(DEFAULT_SEED), &[32]).map_err(|e| e.to_string())?;
    let pointwise = r.max_residual("pointwise").ok_or("no pointwise residual")?;
    let kernel = r.max_residual("W K_b").ok_or("no kernel residual")?;
    ensure(pointwise <= 1e-10, format!("pointwise residual {pointwise:e}"))?;
    ensure(kernel <= 1e-11, format!("kernel relation residual {kernel:e} at N=32"))?;
    Ok(format!("pointwise j<=5 {pointwise:e}, kernel N=32 {kernel:e}"))
}

fn commutant_generator() -> Outcome {
    let b = cx(2.0 / 3.0, 0.0);
    let (psi, _, d) = commutant_symbols(cx(1.0, 0.0), b, 1.0).map_err(|e| e.to_string())?;
    ensure(d.d0 == cx(0.0, 0.0) && d.d1 == cx(0.0, 0.0) && d.d2 == cx(1.0, 0.0), format!("eta=1 gives d = {:?}", (d.d0, d.d1, d.d2)))?;
    ensure(psi.as_affine() == Some(AffineMap::identity()), format!("eta=1 gives psi = {:?}", psi.coeffs()))?;

    let mut rng = samples::rng(DEFAULT_SEED);
    let mut worst: f64 = 0.0;
    let mut draws = 0;
    while draws < 50 {
        let b = samples::point_in_disk(&mut rng, 0.9);
        let eta = samples::point_in_disk(&mut rng, 3.0);
        if b.norm() < 1e-2 || (b.norm_sqr() * eta - 1.0).norm() < 0.05 {
            continue;
        }
        draws += 1;
        let (psi, _, _) = commutant_symbols(eta, b, 1.0).map_err(|e| e.to_string())?;
        let pts: Vec<Complex> = default_samples(DEFAULT_SEED)
            .into_iter()
            .filter(|z| psi.pole().is_none_or(|p| (z - p).norm() > 1e-3) && (b.conj() * z - 1.0).norm() > 1e-3)
            .collect();
        let r = check_moebius_conjugation(&psi, b, eta, &pts).map_err(|e| e.to_string())?;
        worst = worst.max(r.max_residual("").unwrap_or(f64::INFINITY));
    }
    ensure(worst <= 1e-12, format!("Moebius conjugation residual {worst:e}"))?;

    let eta = cx(2.0, 0.0);
    let r = reproduce_counterexample(eta).map_err(|e| e.to_string())?;
    let (phi_psi, psi_phi) = printed_counterexample_tuples(eta);
    let at_zero = |t: [Complex; 4]| t[1] / t[3];
    let (pp0, sp0) = (at_zero(phi_psi).re, at_zero(psi_phi).re);
    ensure((pp0 - sp0).abs() > 1e-6, "printed compositions agree at z = 0")?;
    let psi_phi_gap = r.max_residual("psi o phi vs printed").ok_or("no psi o phi residual")?;
    let phi_psi_gap = r.max_residual("phi o psi vs printed").ok_or("no phi o psi residual")?;
    ensure(
        psi_phi_gap <= 1e-12 && phi_psi_gap <= 1e-12,
        format!(
            "printed tuples vs computed compositions: psi o phi {psi_phi_gap:e}, phi o psi {phi_psi_gap:e} \
             (printed phi o psi at 0 = {pp0:.6}, printed psi o phi at 0 = {sp0:.6}; {})",
            r.notes.first().map(String::as_str).unwrap_or("")
        ),
    )?;
    ensure(r.verdict() == Verdict::Pass, r.notes_text())?;
    Ok(format!("Moebius residual {worst:e}; tuples match; phi o psi(0) = {pp0:.6} vs psi o phi(0) = {sp0:.6}"))
}

fn degenerate_commutant() -> Outcome {
    let b = cx(2.0 / 3.0, 0.0);
    let p = SelfAdjointSymbolParams::worked_example(1.0);
    let r = check_degenerate_commutant(b, &p, &[32]).map_err(|e| e.to_string())?;
    let g = (-2.0f64 / 9.0).exp();
    let expected_note = format!("g = e^(-alpha |b|^2 / 2) = {g:.17}");
    ensure(r.notes.contains(&expected_note), format!("missing note {expected_note:?}"))?;
    let scalar = r.max_residual("||M_g - g I||").ok_or("no scalar residual")?;
    let comm = r.max_residual("commutator").ok_or("no commutator residual")?;
    let normal = r.max_residual("normality").ok_or("no normality residual")?;
    ensure(scalar <= 1e-14, format!("scalar residual {scalar:e}"))?;
    ensure(comm <= 1e-12, format!("commutator residual {comm:e}"))?;
    ensure(normal <= 1e-14, format!("normality residual {normal:e}"))?;
    ensure(r.verdict() == Verdict::Pass, r.notes_text())?;
    Ok(format!("g = {g:.17}, scalar {scalar:e}, commutator {comm:e}, normality {normal:e}"))
}

fn adjoint_factorization() -> Outcome {
    let mut rng = samples::rng(DEFAULT_SEED);
    let params = FockParams::new(1.0, 64).map_err(|e| e.to_string())?;
    let betas = default_samples(DEFAULT_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let map = AffineMap::new(samples::point_in_disk(&mut rng, 0.99), samples::point_in_disk(&mut rng, 1.0))
            .map_err(|e| e.to_string())?;
        let r = check_cphi_adjoint_factorization(&map, &betas, params).map_err(|e| e.to_string())?;
        worst = worst.max(r.max_residual("T_").ok_or("no kernel residual")?);
    }
    ensure(worst <= 1e-11, format!("kernel identity residual {worst:e}"))?;
    Ok(format!("20 maps x {} samples, residual {worst:e}", betas.len()))
}

fn normality_dichotomy() -> Outcome {
    let residual = |sym: &WcoSymbol, n: usize| -> Result<f64, String> {
        let m = assemble_matrix(sym, FockParams::new(1.0, n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        normality_residual(&m, n / 2).map_err(|e| e.to_string())
    };
    let mut rng = samples::rng(DEFAULT_SEED);
    let mut normal_worst: f64 = 0.0;
    for _ in 0..50 {
        let map = AffineMap::new(samples::point_in_disk(&mut rng, 0.95), cx(0.0, 0.0)).map_err(|e| e.to_string())?;
        let sym = WcoSymbol::new(WcoWeight::one(), map);
        for n in [32, 64] {
            normal_worst = normal_worst.max(residual(&sym, n)?);
        }
    }
    ensure(normal_worst <= 1e-10, format!("b = 0 residual {normal_worst:e}"))?;
    let floor = (100.0 * 1e-10f64).max(NON_NORMAL_FLOOR);
    let mut smallest = f64::INFINITY;
    for map in non_normal_draws(DEFAULT_SEED, 50) {
        let sym = WcoSymbol::new(WcoWeight::one(), map);
        let (r32, r64) = (residual(&sym, 32)?, residual(&sym, 64)?);
        ensure(r32 >= floor, format!("{map:?}: N=32 residual {r32:e} below floor {floor:e}"))?;
        ensure(r64 >= r32, format!("{map:?}: residual decreased {r32:e} -> {r64:e}"))?;
        smallest = smallest.min(r32);
    }
    Ok(format!("b = 0 max {normal_worst:e}; b != 0 min {smallest:e} (golden floor {NON_NORMAL_FLOOR})"))
}

fn oracle_agreement() -> Outcome {
    let mut worst: f64 = 0.0;
    for alpha in [0.5, 1.0, 2.0] {
        let r = check_oracle_agreement(alpha, 16).map_err(|e| e.to_string())?;
        let v = r.max_residual("").ok_or("no residual")?;
        ensure(v <= 1e-8, format!("alpha {alpha}: {v:e}"))?;
        worst = worst.max(v);
    }
    Ok(format!("max |quad - exact| {worst:e}"))
}

fn suite_run() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fockcalc");
    let run = || -> Result<(std::process::Output, Duration), String> {
        let start = Instant::now();
        let out = Command::new(bin).arg("suite").env_remove("FOCKCALC_SEED").output().map_err(|e| e.to_string())?;
        Ok((out, start.elapsed()))
    };
    let (first, t1) = run()?;
    let (second, t2) = run()?;
    within(t1.max(t2), 30.0)?;
    ensure(first.stdout == second.stdout, "suite output differs between runs")?;
    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    let failing: Vec<String> = doc["reports"]
        .as_array()
        .ok_or("no reports")?
        .iter()
        .filter(|r| r["verdict"] == "Fail")
        .map(|r| format!("{} ({})", r["check"].as_str().unwrap_or("?"), r["notes"].as_str().unwrap_or("").split("; ").next().unwrap_or("")))
        .collect();
    ensure(
        failing.is_empty() && first.status.success(),
        format!(
            "{:.2}s, byte-identical; exit {:?}; failing: {}",
            t1.max(t2).as_secs_f64(),
            first.status.code(),
            failing.join(", ")
        ),
    )?;
    Ok(format!("{:.2}s, byte-identical, all Pass/Informational", t1.max(t2).as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("self-adjoint symbols give Hermitian sections", selfadjoint_hermitian),
        ("perturbed symbols are not Hermitian", selfadjoint_falsification),
        ("fixed point and h conjugation", fixed_point_and_conjugation),
        ("disk self-map predicate vs sampling", disk_criterion),
        ("eigen-identity and kernel relation", eigen_identity),
        ("commutant generator and counterexample", commutant_generator),
        ("degenerate commutant", degenerate_commutant),
        ("adjoint factorization of C_phi", adjoint_factorization),
        ("normality dichotomy", normality_dichotomy),
        ("quadrature oracle agreement", oracle_agreement),
        ("suite runtime, verdicts, determinism", suite_run),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
