//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always print; the
//! process exits non-zero when any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realdirac::algebra::{verify_algebra, Matrix8, MATRICES};
use realdirac::cli::hydrogen_report;
use realdirac::conserved::{conserved_set, select_normalization, NormalizationLedger};
use realdirac::field::{dalembertian, Field, DEFAULT_STEP};
use realdirac::free_field::{
    dirac_op, maxwell_assemble, maxwell_residual, plane_wave_phi, DiracOpField, EmPotentials, PlaneWaveParams,
    VacuumWave,
};
use realdirac::interaction::{f1_f2, linearization_study, CouplingParams, FINE_STRUCTURE};
use realdirac::lattice::{evolve, EvolveConfig, Grid1D, LatticeState, Trajectory};
use realdirac::quadrature::PeriodicSlab;
use realdirac::{FourVector, Point, RealField8};

type Outcome = Result<String, String>;

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_point(rng: &mut ChaCha8Rng, span: f64) -> Point {
    std::array::from_fn(|_| rng.random_range(-span..span))
}

fn algebra() -> Outcome {
    let start = Instant::now();
    let report = verify_algebra();
    let elapsed = start.elapsed();
    let worst = report.checks.iter().map(|c| c.max_abs_deviation).fold(0.0, f64::max);
    let ok = report.all_pass && worst < 1e-15 && elapsed < Duration::from_secs(1);
    verdict(ok, format!("{} identities, max deviation {worst:.1e}, {:.3} s", report.checks.len(), elapsed.as_secs_f64()))
}

fn plane_wave_residuals() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut first, mut second, mut norm) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let kappa = rng.random_range(0.2..3.0);
        let k = rng.random_range(-3.0..3.0);
        let params = PlaneWaveParams::new(kappa, k, 1.0).map_err(|e| e.to_string())?;
        let wave = plane_wave_phi(params);
        let x = random_point(&mut rng, 10.0);
        let phi = wave.value(x);
        let d = dirac_op(&wave, x, DEFAULT_STEP).map_err(|e| e.to_string())?;
        let box_op = dalembertian(&wave, x, DEFAULT_STEP).map_err(|e| e.to_string())?;
        first = first.max((d - MATRICES.n * phi * kappa).amax());
        second = second.max((box_op + phi * kappa * kappa).amax());
        norm = norm.max((phi.norm_squared() - 2.0).abs());
    }
    verdict(
        first < 1e-12 && second < 1e-12 && norm < 1e-12,
        format!("100 points: first order {first:.1e}, second order {second:.1e}, |Phi+Phi - 2| {norm:.1e}"),
    )
}

fn unnormalized_integrals() -> Outcome {
    let mut worst = 0.0f64;
    for (kappa, mode, box_l) in [(1.0, 1, 2.0 * PI), (2.0, 3, PI)] {
        let params = PlaneWaveParams::from_mode(kappa, mode, box_l).map_err(|e| e.to_string())?;
        let slab = PeriodicSlab::for_plane_wave(&params, 64).map_err(|e| e.to_string())?;
        let wave = plane_wave_phi(params);
        let chi = DiracOpField { phi: &wave, h: DEFAULT_STEP };
        let big_k = kappa;
        let ledger = NormalizationLedger::unnormalized(kappa, big_k);
        let set = conserved_set(&wave, &chi, &ledger, &slab, 0.0, DEFAULT_STEP).map_err(|e| e.to_string())?;
        let vol = 4.0 * kappa * kappa * box_l.powi(3);
        let kv = params.wave_vector();
        let mut rel = (set.q / vol - 1.0).abs();
        rel = rel.max((set.s3 / (vol * big_k / (2.0 * kappa)) - 1.0).abs());
        for a in 0..4 {
            let expected = vol * big_k / kappa * kv[a];
            let dev = if expected == 0.0 { set.p[a].abs() / vol } else { (set.p[a] / expected - 1.0).abs() };
            rel = rel.max(dev);
        }
        worst = worst.max(rel).max(set.route_spread() / vol);
    }
    verdict(worst < 1e-10, format!("two boxes, largest relative deviation {worst:.1e}"))
}

fn normalized_state() -> Outcome {
    let params = PlaneWaveParams::from_mode(1.0, 1, 2.0 * PI).map_err(|e| e.to_string())?;
    let slab = PeriodicSlab::for_plane_wave(&params, 64).map_err(|e| e.to_string())?;
    let wave = plane_wave_phi(params);
    let chi = DiracOpField { phi: &wave, h: DEFAULT_STEP };
    let ledger = select_normalization(1.0, 2.0 * PI, 1.0, 1.0).map_err(|e| e.to_string())?;
    let deviation = |ledger: &NormalizationLedger| -> Result<f64, String> {
        let set = conserved_set(&wave, &chi, ledger, &slab, 0.0, DEFAULT_STEP).map_err(|e| e.to_string())?;
        let kv = params.wave_vector();
        let mut dev = (set.q - 1.0).abs().max((set.s3 - 0.5).abs());
        for a in 0..4 {
            dev = dev.max((set.p[a] - kv[a]).abs());
        }
        Ok(dev)
    };
    let good = deviation(&ledger)?;
    let doubled = deviation(&ledger.with_big_k(2.0 * ledger.big_k))?;
    verdict(
        good < 1e-10 && doubled > 1e-3,
        format!("K = kappa deviation {good:.1e}; K = 2 kappa deviation {doubled:.3} (expected to fail)"),
    )
}

fn maxwell() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut res, mut mis) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let omega = rng.random_range(0.5..3.0);
        let wave = VacuumWave {
            polarization: FourVector::new(0.0, 1.0, 0.0, 0.0),
            wave_vector: FourVector::new(omega, 0.0, 0.0, omega),
        };
        let em = EmPotentials { a: wave, c: VacuumWave::zero() };
        let x = random_point(&mut rng, PI);
        let [ra, rc] = maxwell_residual(&em, x, DEFAULT_STEP).map_err(|e| e.to_string())?;
        res = res.max(ra.amax()).max(rc.amax());
        let assembled = maxwell_assemble(&em, x, DEFAULT_STEP).map_err(|e| e.to_string())?;
        let direct = dirac_op(&em, x, DEFAULT_STEP).map_err(|e| e.to_string())?;
        mis = mis.max((assembled - direct).amax());
    }
    verdict(res < 1e-10 && mis < 1e-10, format!("vacuum wave residual {res:.1e}, slot assembly mismatch {mis:.1e}"))
}

fn interaction() -> Outcome {
    let params = CouplingParams::electron(1.0).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let scale = 0.5 * params.big_k / params.e.abs();
    let (mut inv, mut f2dev) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let a = FourVector::from_fn(|_, _| rng.random_range(-scale..scale));
        let (f1, f2) = f1_f2(&a, params.e, params.big_k).map_err(|e| e.to_string())?;
        inv = inv.max((f1 * f2 - Matrix8::<f64>::identity()).amax());
        let f1_inv = f1.try_inverse().ok_or("F1 not invertible")?;
        f2dev = f2dev.max((f2 - f1_inv).amax());
    }
    let mut order = f64::INFINITY;
    for _ in 0..20 {
        let phi = RealField8::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let psi = RealField8::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let a = FourVector::from_fn(|_, _| rng.random_range(-scale..scale));
        let study = linearization_study(&phi, &psi, &a, &params, 0.01, 6).map_err(|e| e.to_string())?;
        order = order.min(study.asymptotic_order());
    }
    verdict(
        inv < 1e-12 && f2dev < 1e-12 && order >= 1.9,
        format!("1000 potentials: |F1(1+a) - 1| {inv:.1e}, |F2 - F1^-1| {f2dev:.1e}; linearization order {order:.4}"),
    )
}

fn hydrogen() -> Outcome {
    let start = Instant::now();
    let (r, _) = hydrogen_report(1.0, FINE_STRUCTURE, 1.0, 4000).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let analytic = (1.0 - FINE_STRUCTURE * FINE_STRUCTURE).sqrt();
    let energy = (r.k0_over_kappa_shooting - analytic).abs().max((r.k0_over_kappa - analytic).abs());
    let q = (r.q - 1.0).abs();
    let p0 = (r.p0 - r.k0_over_kappa).abs();
    let ok = energy < 1e-8 && q < 1e-8 && p0 < 1e-8 && r.max_dirac_residual < 1e-8 && elapsed < Duration::from_secs(10);
    verdict(
        ok,
        format!(
            "k0/kappa {:.12} (shooting off by {energy:.1e}), |Q - 1| {q:.1e}, |P0 - k0| {p0:.1e}, residual {:.1e}, {:.2} s",
            r.k0_over_kappa_shooting,
            r.max_dirac_residual,
            elapsed.as_secs_f64()
        ),
    )
}

fn run_lattice(n_z: usize, refine: usize) -> Result<Trajectory, String> {
    let box_l = 2.0 * PI;
    let params = PlaneWaveParams::from_mode(1.0, 1, box_l).map_err(|e| e.to_string())?;
    let wave = plane_wave_phi(params);
    let t_end = 10.0 * 2.0 * PI / params.k0();
    let grid = Grid1D::new(n_z * refine, box_l).map_err(|e| e.to_string())?;
    let base_steps = (t_end / (2.0 * PI / n_z as f64 / 4.0)).round() as usize;
    let steps = base_steps * refine;
    let config = EvolveConfig { dt: t_end / steps as f64, n_steps: steps, sample_every: steps / 40 };
    let initial = LatticeState::sample(&wave, &grid, 0.0);
    evolve(&grid, &initial, &config, params.kappa, None, params.k, Some(&wave)).map_err(|e| e.to_string())
}

fn evolution() -> Outcome {
    let start = Instant::now();
    let coarse = run_lattice(128, 1)?;
    let elapsed = start.elapsed();
    let fine = run_lattice(128, 2)?;
    let drift = coarse.relative_charge_drift();
    let err = coarse.max_phase_err().unwrap_or(f64::NAN);
    let drift_ratio = drift / fine.relative_charge_drift();
    let err_ratio = err / fine.max_phase_err().unwrap_or(f64::NAN);
    let ok = drift < 1e-8 && err < 1e-5 && drift_ratio >= 12.0 && err_ratio >= 12.0 && elapsed < Duration::from_secs(30);
    verdict(
        ok,
        format!(
            "n_z 128: Q drift {drift:.1e}, error {err:.1e}; halving gives {drift_ratio:.1}x and {err_ratio:.1}x; {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn negative_controls() -> Outcome {
    let cases: [&[&str]; 5] = [
        &["verify-algebra", "--tamper"],
        &["planewave", "--k0", "1.5"],
        &["interaction-check", "--field", "random"],
        &["maxwell-check", "--field", "nonwave"],
        &["conserved", "--k-factor", "2"],
    ];
    let mut codes = Vec::new();
    for args in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_realdirac")).args(args).output().map_err(|e| e.to_string())?;
        codes.push((args.join(" "), out.status.code()));
    }
    let ok = codes.iter().all(|(_, c)| *c == Some(1));
    let detail = codes.iter().map(|(a, c)| format!("{a} -> {c:?}")).collect::<Vec<_>>().join("; ");
    verdict(ok, detail)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("algebra identities", algebra),
        ("plane-wave residuals", plane_wave_residuals),
        ("unnormalized box integrals", unnormalized_integrals),
        ("normalized plane wave", normalized_state),
        ("Maxwell correspondence", maxwell),
        ("interaction construction", interaction),
        ("hydrogen ground state", hydrogen),
        ("lattice evolution", evolution),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
