//! Command-line front end.
//!
//! Every subcommand prints one JSON document on stdout; tables go to the
//! file named by `--csv`. Exit status is 0 when every check passes, 1
//! when a check fails and 2 for usage errors.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{verify_algebra_with, AlgebraSet, FLOAT_TOLERANCE, MATRICES};
use crate::conserved::{conserved_set, select_normalization, ConservedSet, NormalizationLedger};
use crate::error::{Error, Result};
use crate::field::{Field, FnField, FourVector, Point, RealField8, Spinor4, DEFAULT_STEP};
use crate::free_field::{
    canonical_check, dirac_op, maxwell_assemble, maxwell_residual, plane_wave_phi, DiracOpField, EmPotentials,
    PlaneWave, PlaneWaveParams, VacuumWave,
};
use crate::interaction::{
    a_op, canonical_check_int, em_source_value, f1_f2, family_em_source_value, hydrogen_ground_state,
    interacting_residual, linearization_study, shoot_ground_state, CoulombPotential, CouplingParams, CoupledPartner,
    HydrogenPhi, FINE_STRUCTURE,
};
use crate::io::write_csv_file;
use crate::lattice::{evolve, EvolveConfig, Grid1D, LatticeState};
use crate::quadrature::{PeriodicSlab, SphericalShell};
use crate::spinor::{from_dirac, to_dirac, DiracPairJson};

#[derive(Debug, Parser)]
#[command(name = "realdirac", version, about = "Real eight-component Dirac field: checks, solutions and evolution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the matrix identities.
    VerifyAlgebra(VerifyAlgebraArgs),
    /// Sample the plane wave and its residuals.
    Planewave(PlaneWaveArgs),
    /// Charge, energy-momentum and spin of the plane wave.
    Conserved(ConservedArgs),
    /// Maxwell equations packed into the real field.
    MaxwellCheck(MaxwellArgs),
    /// Coupling factors, linearization, sources and coupled residuals.
    InteractionCheck(InteractionArgs),
    /// Coulomb ground state, analytic and by shooting.
    Hydrogen(HydrogenArgs),
    /// Lattice time evolution of the plane wave.
    Evolve(EvolveArgs),
    /// Convert between the real field and the Dirac spinor.
    Transform(TransformArgs),
}

#[derive(Debug, Args)]
struct VerifyAlgebraArgs {
    /// Perturb one entry of the first spatial matrix before checking.
    #[arg(long)]
    tamper: bool,
}

#[derive(Debug, Args)]
struct WaveArgs {
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Wavenumber along z; defaults to one wavelength in the box.
    #[arg(long)]
    k: Option<f64>,
    /// Whole wavelengths in the box, used when --k is absent.
    #[arg(long, default_value_t = 1)]
    mode: i64,
    #[arg(long = "box-l", default_value_t = 2.0 * PI)]
    box_l: f64,
}

impl WaveArgs {
    fn params(&self) -> Result<PlaneWaveParams> {
        match self.k {
            Some(k) => PlaneWaveParams::new(self.kappa, k, self.box_l),
            None => PlaneWaveParams::from_mode(self.kappa, self.mode, self.box_l),
        }
    }
}

#[derive(Debug, Args)]
struct PlaneWaveArgs {
    #[command(flatten)]
    wave: WaveArgs,
    /// Time frequency; defaults to the dispersion value.
    #[arg(long)]
    k0: Option<f64>,
    /// Samples along z.
    #[arg(long, default_value_t = 16)]
    nz: usize,
    /// Samples in time over one period.
    #[arg(long, default_value_t = 4)]
    nt: usize,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConservedArgs {
    #[command(flatten)]
    wave: WaveArgs,
    /// K in units of κ.
    #[arg(long = "k-factor", default_value_t = 1.0)]
    k_factor: f64,
    #[arg(long, default_value_t = 64)]
    nz: usize,
    /// Evaluation time.
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MaxwellField {
    /// Transverse vacuum wave.
    Vacuum,
    /// `A¹ = sin x⁰`, which is not a solution.
    Nonwave,
}

#[derive(Debug, Args)]
struct MaxwellArgs {
    #[arg(long, value_enum, default_value_t = MaxwellField::Vacuum)]
    field: MaxwellField,
    #[arg(long, default_value_t = 1.3)]
    omega: f64,
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TestField {
    /// The free plane wave with no potential.
    Plane,
    /// A smooth field that solves nothing.
    Random,
}

#[derive(Debug, Args)]
struct InteractionArgs {
    #[arg(long, value_enum, default_value_t = TestField::Plane)]
    field: TestField,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// K; defaults to κ.
    #[arg(long = "big-k")]
    big_k: Option<f64>,
    /// Charge; defaults to −√α.
    #[arg(long, allow_hyphen_values = true)]
    e: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Debug, Args)]
struct HydrogenArgs {
    #[arg(long = "Z", default_value_t = 1.0)]
    z: f64,
    #[arg(long, default_value_t = FINE_STRUCTURE)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long = "grid-points", default_value_t = 4000)]
    grid_points: usize,
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long = "k-mode", default_value_t = 1)]
    k_mode: i64,
    #[arg(long = "box-l", default_value_t = 2.0 * PI)]
    box_l: f64,
    #[arg(long, default_value_t = 128)]
    nz: usize,
    /// Time step; defaults to dz/4.
    #[arg(long)]
    dt: Option<f64>,
    /// Number of steps; defaults to ten periods.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long = "sample-every", default_value_t = 10)]
    sample_every: usize,
    #[arg(long = "max-drift", default_value_t = 1e-8)]
    max_drift: f64,
    #[arg(long = "max-error", default_value_t = 1e-5)]
    max_error: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the final field to this file.
    #[arg(long)]
    snapshot: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct TransformArgs {
    /// Eight real components of Φ.
    #[arg(long, value_delimiter = ',', num_args = 1..=8, allow_hyphen_values = true)]
    phi: Option<Vec<f64>>,
    /// Four complex components of φ_a as re,im pairs.
    #[arg(long = "phi-a", value_delimiter = ',', num_args = 1..=8, allow_hyphen_values = true)]
    phi_a: Option<Vec<f64>>,
}

/// Outcome of a subcommand: JSON payload and pass/fail.
struct Outcome {
    json: serde_json::Value,
    pass: bool,
    failures: Vec<String>,
}

impl Outcome {
    fn new<T: Serialize>(payload: &T, failures: Vec<String>) -> Result<Self> {
        Ok(Self { json: serde_json::to_value(payload)?, pass: failures.is_empty(), failures })
    }
}

fn check(failures: &mut Vec<String>, name: &str, value: f64, limit: f64) {
    if value.is_nan() || value > limit {
        failures.push(format!("{name}: {value:e} exceeds {limit:e}"));
    }
}

/// Parse `argv` (including the program name) and run, writing JSON to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::VerifyAlgebra(a) => verify_algebra_cmd(a),
        Command::Planewave(a) => planewave_cmd(a),
        Command::Conserved(a) => conserved_cmd(a),
        Command::MaxwellCheck(a) => maxwell_cmd(a),
        Command::InteractionCheck(a) => interaction_cmd(a),
        Command::Hydrogen(a) => hydrogen_cmd(a),
        Command::Evolve(a) => evolve_cmd(a),
        Command::Transform(a) => transform_cmd(a),
    };
    match result {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize");
            if writeln!(out, "{text}").is_err() {
                return 2;
            }
            for f in &outcome.failures {
                let _ = writeln!(err, "FAILED {f}");
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Run with the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn verify_algebra_cmd(args: &VerifyAlgebraArgs) -> Result<Outcome> {
    let mut set = AlgebraSet::standard();
    if args.tamper {
        set.eta[1][(0, 0)] += 1;
    }
    let report = verify_algebra_with(&set, FLOAT_TOLERANCE);
    let failures = report
        .failures()
        .map(|c| format!("{}: deviation {:e}", c.identity_name, c.max_abs_deviation))
        .collect();
    Outcome::new(&report, failures)
}

#[derive(Serialize)]
struct PlaneWaveOut {
    kappa: f64,
    k: f64,
    k0: f64,
    omega: f64,
    box_l: f64,
    samples: usize,
    max_first_order_residual: f64,
    max_klein_gordon_residual: f64,
    max_norm2_deviation: f64,
    tolerance: f64,
}

fn planewave_cmd(args: &PlaneWaveArgs) -> Result<Outcome> {
    let params = args.wave.params()?;
    let omega = args.k0.unwrap_or_else(|| params.k0());
    if args.nz == 0 || args.nt == 0 {
        return Err(Error::InvalidParameter("--nz and --nt must be positive".into()));
    }
    let wave = PlaneWave::detuned(params, omega);
    let mass = MATRICES.n * params.kappa;
    let period = 2.0 * PI / omega.abs().max(f64::MIN_POSITIVE);
    let mut rows = Vec::with_capacity(args.nz * args.nt);
    let (mut first, mut kg, mut norm_dev) = (0.0f64, 0.0f64, 0.0f64);
    for it in 0..args.nt {
        for iz in 0..args.nz {
            let x: Point = [it as f64 * period / args.nt as f64, 0.0, 0.0, iz as f64 * params.box_l / args.nz as f64];
            let phi = wave.value(x);
            let r1 = (dirac_op(&wave, x, DEFAULT_STEP)? - mass * phi).amax();
            let r2 = canonical_check(&wave, params.kappa, params.kappa, x, DEFAULT_STEP)?.klein_gordon;
            let n2 = phi.norm_squared();
            first = first.max(r1);
            kg = kg.max(r2);
            norm_dev = norm_dev.max((n2 - 2.0).abs());
            let mut row = vec![x[0], x[3]];
            row.extend(phi.iter());
            row.push(r1.max(r2));
            row.push(n2);
            rows.push(row);
        }
    }
    if let Some(path) = &args.csv {
        let header =
            ["x0", "z", "phi1", "phi2", "phi3", "phi4", "phi5", "phi6", "phi7", "phi8", "residual_max", "norm2"];
        write_csv_file(path, &header, rows.iter().cloned())?;
    }
    let mut failures = Vec::new();
    check(&mut failures, "first_order_residual", first, args.tolerance);
    check(&mut failures, "klein_gordon_residual", kg, args.tolerance);
    check(&mut failures, "norm2_deviation", norm_dev, args.tolerance);
    let out = PlaneWaveOut {
        kappa: params.kappa,
        k: params.k,
        k0: params.k0(),
        omega,
        box_l: params.box_l,
        samples: rows.len(),
        max_first_order_residual: first,
        max_klein_gordon_residual: kg,
        max_norm2_deviation: norm_dev,
        tolerance: args.tolerance,
    };
    Outcome::new(&out, failures)
}

/// Charge, four-momentum and spin under their conventional names.
#[derive(Serialize)]
struct Functionals {
    #[serde(rename = "Q")]
    q: f64,
    #[serde(rename = "P0")]
    p0: f64,
    #[serde(rename = "P1")]
    p1: f64,
    #[serde(rename = "P2")]
    p2: f64,
    #[serde(rename = "P3")]
    p3: f64,
    #[serde(rename = "S3")]
    s3: f64,
}

impl Functionals {
    fn new(q: f64, p: [f64; 4], s3: f64) -> Self {
        Self { q, p0: p[0], p1: p[1], p2: p[2], p3: p[3], s3 }
    }

    fn max_deviation(&self, other: &Self) -> f64 {
        [
            self.q - other.q,
            self.p0 - other.p0,
            self.p1 - other.p1,
            self.p2 - other.p2,
            self.p3 - other.p3,
            self.s3 - other.s3,
        ]
        .iter()
        .fold(0.0, |m, d| m.max(d.abs()))
    }
}

#[derive(Serialize)]
struct ConservedOut {
    kappa: f64,
    k: f64,
    box_l: f64,
    big_k: f64,
    ledger: NormalizationLedger,
    #[serde(flatten)]
    values: Functionals,
    expected: Functionals,
    /// Raw integrals divided by `4κ²L³`.
    raw_over_volume: Functionals,
    routes: ConservedSet,
    max_deviation: f64,
    tolerance: f64,
}

fn conserved_cmd(args: &ConservedArgs) -> Result<Outcome> {
    let params = args.wave.params()?;
    let slab = PeriodicSlab::for_plane_wave(&params, args.nz)?;
    if args.k_factor.is_nan() || args.k_factor <= 0.0 {
        return Err(Error::InvalidParameter("--k-factor must be positive".into()));
    }
    let ledger = select_normalization(params.kappa, params.box_l, 1.0, 1.0)?;
    let ledger = ledger.with_big_k(ledger.big_k * args.k_factor);
    let wave = plane_wave_phi(params);
    let chi = DiracOpField { phi: &wave, h: DEFAULT_STEP };
    let set = conserved_set(&wave, &chi, &ledger, &slab, args.t, DEFAULT_STEP)?;
    let k = params.wave_vector();
    let values = Functionals::new(set.q, set.p, set.s3);
    let expected = Functionals::new(1.0, k.map(|v| ledger.hbar * v), 0.5 * ledger.hbar);
    let dev = values.max_deviation(&expected);
    let mut failures = Vec::new();
    check(&mut failures, "normalized_functionals", dev, args.tolerance);
    check(&mut failures, "route_spread", set.route_spread(), args.tolerance);
    let vol = 4.0 * params.kappa.powi(2) * params.box_l.powi(3);
    let raw_over_volume =
        Functionals::new(set.q / ledger.const_q / vol, set.p.map(|v| v / ledger.const_p / vol), set.s3 / ledger.const_m / vol);
    let out = ConservedOut {
        kappa: params.kappa,
        k: params.k,
        box_l: params.box_l,
        big_k: ledger.big_k,
        ledger,
        values,
        expected,
        raw_over_volume,
        routes: set,
        max_deviation: dev,
        tolerance: args.tolerance,
    };
    Outcome::new(&out, failures)
}

#[derive(Serialize)]
struct MaxwellOut {
    field: String,
    points: usize,
    max_residual_a: f64,
    max_residual_c: f64,
    max_assembly_mismatch: f64,
    tolerance: f64,
}

fn maxwell_cmd(args: &MaxwellArgs) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let wave = VacuumWave {
        polarization: FourVector::new(0.0, 1.0, 0.0, 0.0),
        wave_vector: FourVector::new(args.omega, 0.0, 0.0, args.omega),
    };
    let nonwave = FnField(|x: Point| FourVector::new(0.0, x[0].sin(), 0.0, 0.0));
    let (mut ra, mut rc, mut mis) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..args.points {
        let x: Point = std::array::from_fn(|_| rng.random_range(-PI..PI));
        let (res, assembled, direct) = match args.field {
            MaxwellField::Vacuum => {
                let em = EmPotentials { a: wave, c: VacuumWave::zero() };
                (maxwell_residual(&em, x, DEFAULT_STEP)?, maxwell_assemble(&em, x, DEFAULT_STEP)?, dirac_op(&em, x, DEFAULT_STEP)?)
            }
            MaxwellField::Nonwave => {
                let em = EmPotentials { a: &nonwave, c: VacuumWave::zero() };
                (maxwell_residual(&em, x, DEFAULT_STEP)?, maxwell_assemble(&em, x, DEFAULT_STEP)?, dirac_op(&em, x, DEFAULT_STEP)?)
            }
        };
        ra = ra.max(res[0].amax());
        rc = rc.max(res[1].amax());
        mis = mis.max((assembled - direct).amax());
    }
    let mut failures = Vec::new();
    check(&mut failures, "maxwell_residual_a", ra, args.tolerance);
    check(&mut failures, "maxwell_residual_c", rc, args.tolerance);
    check(&mut failures, "assembly_mismatch", mis, args.tolerance);
    let field = match args.field {
        MaxwellField::Vacuum => "vacuum",
        MaxwellField::Nonwave => "nonwave",
    };
    let out = MaxwellOut {
        field: field.into(),
        points: args.points,
        max_residual_a: ra,
        max_residual_c: rc,
        max_assembly_mismatch: mis,
        tolerance: args.tolerance,
    };
    Outcome::new(&out, failures)
}

#[derive(Serialize)]
struct InteractionOut {
    field: String,
    kappa: f64,
    big_k: f64,
    e: f64,
    samples: usize,
    singular_samples: usize,
    max_inverse_deviation: f64,
    max_f2_minus_f1_inverse: f64,
    linearization_order: f64,
    max_family_source_mismatch: f64,
    max_field_residual: f64,
    max_canonical_residual: f64,
    max_hamiltonian_mismatch: f64,
}

fn interaction_cmd(args: &InteractionArgs) -> Result<Outcome> {
    let params = CouplingParams::new(
        args.kappa,
        args.big_k.unwrap_or(args.kappa),
        args.e.unwrap_or(-FINE_STRUCTURE.sqrt()),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let random_a = |rng: &mut ChaCha8Rng| {
        // Potentials sized so that |e A / K| stays below one.
        let scale = 0.5 * params.big_k / params.e.abs().max(1e-12);
        FourVector::from_fn(|_, _| rng.random_range(-scale..scale))
    };
    let (mut inv_dev, mut f2_dev, mut singular) = (0.0f64, 0.0f64, 0);
    for _ in 0..args.samples {
        let a = random_a(&mut rng);
        match f1_f2(&a, params.e, params.big_k) {
            Ok((f1, f2)) => {
                inv_dev = inv_dev.max((f1 * f2 - crate::algebra::Matrix8::<f64>::identity()).amax());
                let inv = f1.try_inverse().ok_or_else(|| Error::InvalidParameter("F1 not invertible".into()))?;
                f2_dev = f2_dev.max((f2 - inv).amax());
            }
            Err(Error::SingularCoupling { .. }) => singular += 1,
            Err(e) => return Err(e),
        }
    }

    let random8 = |rng: &mut ChaCha8Rng| RealField8::from_fn(|_, _| rng.random_range(-1.0..1.0));
    let mut order = f64::INFINITY;
    let mut source = 0.0f64;
    for _ in 0..20 {
        let phi = random8(&mut rng);
        let psi = random8(&mut rng);
        let a = random_a(&mut rng);
        order = order.min(linearization_study(&phi, &psi, &a, &params, 0.01, 6)?.asymptotic_order());
        let family = a_op(&a, params.e, params.big_k) * (MATRICES.n * phi * params.kappa) + MATRICES.n * phi * params.kappa;
        let full = em_source_value(&phi, &family, &a, &params)?;
        source = source.max((full - family_em_source_value(&phi, &params)).amax());
    }

    let zero = FnField(|_x: Point| FourVector::zeros());
    let wave = plane_wave_phi(PlaneWaveParams::new(params.kappa, 0.7 * params.kappa, 1.0)?);
    let coeffs: Vec<f64> = (0..24).map(|_| rng.random_range(-1.0..1.0)).collect();
    let random_field =
        FnField(|x: Point| RealField8::from_fn(|r, _| coeffs[r] * (coeffs[8 + r] * x[0] + coeffs[16 + r] * x[3]).sin()));
    let (mut field_res, mut canon_res, mut ham) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..args.points {
        let x: Point = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let (res, canon) = match args.field {
            TestField::Plane => (
                interacting_residual(&wave, &zero, &params, x, DEFAULT_STEP)?,
                canonical_check_int(&wave, &zero, &params, x, DEFAULT_STEP)?,
            ),
            TestField::Random => (
                interacting_residual(&random_field, &zero, &params, x, DEFAULT_STEP)?,
                canonical_check_int(&random_field, &zero, &params, x, DEFAULT_STEP)?,
            ),
        };
        field_res = field_res.max(res.max());
        canon_res = canon_res.max(canon.max_relative());
        ham = ham.max((canon.hamiltonian - canon.legendre).abs());
    }

    let mut failures = Vec::new();
    check(&mut failures, "f1_times_one_plus_a", inv_dev, 1e-12);
    check(&mut failures, "f2_minus_f1_inverse", f2_dev, 1e-12);
    if order.is_nan() || order < 1.9 {
        failures.push(format!("linearization order {order} below 1.9"));
    }
    check(&mut failures, "family_source_reduction", source, 1e-9);
    check(&mut failures, "field_residual", field_res, 1e-10);
    check(&mut failures, "canonical_residual", canon_res, 1e-8);
    check(&mut failures, "hamiltonian_vs_legendre", ham, 1e-10);
    let out = InteractionOut {
        field: match args.field {
            TestField::Plane => "plane".into(),
            TestField::Random => "random".into(),
        },
        kappa: params.kappa,
        big_k: params.big_k,
        e: params.e,
        samples: args.samples,
        singular_samples: singular,
        max_inverse_deviation: inv_dev,
        max_f2_minus_f1_inverse: f2_dev,
        linearization_order: order,
        max_family_source_mismatch: source,
        max_field_residual: field_res,
        max_canonical_residual: canon_res,
        max_hamiltonian_mismatch: ham,
    };
    Outcome::new(&out, failures)
}

#[derive(Debug, Clone, Serialize)]
pub struct HydrogenReport {
    pub z: f64,
    pub alpha: f64,
    pub kappa: f64,
    pub k0_over_kappa: f64,
    pub k0_over_kappa_shooting: f64,
    pub shooting_deviation: f64,
    pub max_radial_deviation: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "P0")]
    pub p0: f64,
    pub p0_over_k0: f64,
    pub norm_integral: f64,
    /// Share of `∫(g² + f²)` inside the excluded inner ball, relative.
    pub excluded_fraction: f64,
    pub inner_radius: f64,
    pub singular_radius: f64,
    pub max_dirac_residual: f64,
    pub max_canonical_residual: f64,
}

/// Analytic and shooting ground states, normalized functionals and
/// pointwise residuals on `r ∈ [0.05, 20]/(Zακ)`.
pub fn hydrogen_report(z: f64, alpha: f64, kappa: f64, grid_points: usize) -> Result<(HydrogenReport, Vec<Vec<f64>>)> {
    let state = hydrogen_ground_state(z, alpha, kappa)?;
    let shot = shoot_ground_state(z, alpha, kappa, grid_points)?;
    let a = state.length_scale();
    let mut radial_dev = 0.0f64;
    for (i, &r) in shot.r.iter().enumerate() {
        if (0.01 * a..=20.0 * a).contains(&r) {
            radial_dev = radial_dev.max((shot.g[i] / state.g(r) - 1.0).abs()).max((shot.f[i] / state.f(r) - 1.0).abs());
        }
    }
    let rows = shot.r.iter().enumerate().map(|(i, &r)| vec![r, shot.g[i], shot.f[i], state.g(r), state.f(r)]).collect();

    let params = CouplingParams::new(kappa, kappa, -alpha.sqrt())?;
    let coulomb = CoulombPotential::nucleus(z, params.e);
    let phi = HydrogenPhi::new(state);
    let h = DEFAULT_STEP / kappa;
    let singular = coulomb.singular_radius(&params);
    let inner = 2.0 * singular + 4.0 * h;
    let shell = SphericalShell::new(inner, 40.0 * a, 600, 4, 4)?;
    let norm = state.norm_integral();
    let ledger = NormalizationLedger::for_bound_state(kappa, norm, 1.0, 1.0)?;
    let chi = CoupledPartner { phi: &phi, potential: &coulomb, params, h };
    let set = conserved_set(&phi, &chi, &ledger, &shell, 0.0, h)?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut dirac, mut canon) = (0.0f64, 0.0f64);
    for _ in 0..40 {
        let r = a * rng.random_range(0.05f64.ln()..20f64.ln()).exp();
        let mu: f64 = rng.random_range(-1.0..1.0);
        let az = rng.random_range(0.0..2.0 * PI);
        let s = (1.0 - mu * mu).sqrt();
        let x: Point = [rng.random_range(0.0..10.0), r * s * az.cos(), r * s * az.sin(), r * mu];
        let res = interacting_residual(&phi, &coulomb, &params, x, h)?;
        dirac = dirac.max(res.dirac_a_relative(kappa));
        canon = canon.max(canonical_check_int(&phi, &coulomb, &params, x, h)?.max_relative());
    }

    Ok((
        HydrogenReport {
            z,
            alpha,
            kappa,
            k0_over_kappa: state.k0 / kappa,
            k0_over_kappa_shooting: shot.k0 / kappa,
            shooting_deviation: (shot.k0 - state.k0).abs() / kappa,
            max_radial_deviation: radial_dev,
            q: set.q,
            p0: set.p[0],
            p0_over_k0: set.p[0] / state.k0,
            norm_integral: norm,
            excluded_fraction: state.norm_inside(inner) / norm,
            inner_radius: inner,
            singular_radius: singular,
            max_dirac_residual: dirac,
            max_canonical_residual: canon,
        },
        rows,
    ))
}

fn hydrogen_cmd(args: &HydrogenArgs) -> Result<Outcome> {
    let (report, rows) = hydrogen_report(args.z, args.alpha, args.kappa, args.grid_points)?;
    if let Some(path) = &args.csv {
        write_csv_file(path, &["r", "g", "f", "g_exact", "f_exact"], rows)?;
    }
    let tol = args.tolerance;
    let mut failures = Vec::new();
    check(&mut failures, "shooting_energy", report.shooting_deviation, tol);
    check(&mut failures, "charge", (report.q - 1.0).abs(), tol);
    check(&mut failures, "energy", (report.p0_over_k0 - 1.0).abs(), tol);
    check(&mut failures, "dirac_residual", report.max_dirac_residual, tol);
    check(&mut failures, "canonical_residual", report.max_canonical_residual, tol);
    Outcome::new(&report, failures)
}

#[derive(Serialize)]
struct EvolveOut {
    kappa: f64,
    k: f64,
    k0: f64,
    box_l: f64,
    nz: usize,
    dt: f64,
    steps: usize,
    cfl: f64,
    t_final: f64,
    q_initial: f64,
    relative_q_drift: f64,
    max_phase_err: f64,
    max_reality_defect: f64,
    phase_velocity: f64,
    expected_phase_velocity: Option<f64>,
    samples: usize,
}

fn evolve_cmd(args: &EvolveArgs) -> Result<Outcome> {
    let params = PlaneWaveParams::from_mode(args.kappa, args.k_mode, args.box_l)?;
    let grid = Grid1D::new(args.nz, args.box_l)?;
    let dt = args.dt.unwrap_or(grid.dz / 4.0);
    let steps = match args.steps {
        Some(s) => s,
        None => (10.0 * 2.0 * PI / params.k0() / dt).round() as usize,
    };
    let config = EvolveConfig { dt, n_steps: steps, sample_every: args.sample_every };
    let wave = plane_wave_phi(params);
    let initial = LatticeState::sample(&wave, &grid, 0.0);
    let traj = evolve(&grid, &initial, &config, args.kappa, None, params.k, Some(&wave))?;
    if let Some(path) = &args.csv {
        let rows = traj.samples.iter().map(|s| vec![s.t, s.q, s.p3, s.s3, s.phase_err.unwrap_or(f64::NAN), s.reality_defect]);
        write_csv_file(path, &["t", "Q", "P3", "S3", "phase_err", "reality_defect"], rows)?;
    }
    if let Some(path) = &args.snapshot {
        crate::io::write_snapshot_file(path, &traj.final_state.phi)?;
    }
    let drift = traj.relative_charge_drift();
    let err = traj.max_phase_err().unwrap_or(f64::NAN);
    let mut failures = Vec::new();
    check(&mut failures, "charge_drift", drift, args.max_drift);
    check(&mut failures, "phase_error", err, args.max_error);
    let (velocity, expected) = if params.k != 0.0 {
        (traj.phase_velocity(params.k), Some(params.k0() / params.k))
    } else {
        (f64::NAN, None)
    };
    let out = EvolveOut {
        kappa: args.kappa,
        k: params.k,
        k0: params.k0(),
        box_l: args.box_l,
        nz: args.nz,
        dt,
        steps,
        cfl: config.cfl(&grid),
        t_final: traj.final_state.t,
        q_initial: traj.samples[0].q,
        relative_q_drift: drift,
        max_phase_err: err,
        max_reality_defect: traj.samples.iter().map(|s| s.reality_defect).fold(0.0, f64::max),
        phase_velocity: if velocity.is_finite() { velocity } else { 0.0 },
        expected_phase_velocity: expected,
        samples: traj.samples.len(),
    };
    Outcome::new(&out, failures)
}

#[derive(Serialize)]
struct TransformOut {
    phi: Vec<f64>,
    dirac: DiracPairJson,
    reality_defect: f64,
    round_trip_error: f64,
}

fn transform_cmd(args: &TransformArgs) -> Result<Outcome> {
    for v in [&args.phi, &args.phi_a].into_iter().flatten() {
        if v.len() != 8 {
            return Err(Error::InvalidParameter(format!("expected 8 numbers, got {}", v.len())));
        }
    }
    let phi = match (&args.phi, &args.phi_a) {
        (Some(v), None) => RealField8::from_column_slice(v),
        (None, Some(v)) => from_dirac(&Spinor4::from_fn(|r, _| Complex64::new(v[2 * r], v[2 * r + 1]))),
        _ => return Err(Error::InvalidParameter("give exactly one of --phi and --phi-a".into())),
    };
    if !phi.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidParameter("components must be finite".into()));
    }
    let pair = to_dirac(&phi);
    let defect = pair.reality_defect();
    let round_trip = (from_dirac(&pair.phi_a) - phi).amax();
    let mut failures = Vec::new();
    check(&mut failures, "reality_defect", defect, crate::spinor::REALITY_TOLERANCE);
    check(&mut failures, "round_trip", round_trip, 1e-12 * phi.amax().max(1.0));
    let out = TransformOut { phi: phi.iter().copied().collect(), dirac: (&pair).into(), reality_defect: defect, round_trip_error: round_trip };
    Outcome::new(&out, failures)
}
