//! One function per command. Each returns its data product (if any) and a
//! residual report.

use std::path::Path;
use std::time::Instant;

use harmonics_core::lie::{GroupElement, IwasawaFactors, KElement};
use harmonics_core::matrix::CMatrix;
use harmonics_core::minkowski::{covering_map, MinkowskiVector};
use harmonics_core::poincare::{
    convolve_c_at, convolve_p_at, poincare_fourier, tilde_lift, CompactBump, PQuadrature, QElement, SeparablePFamily,
};
use harmonics_core::slc::{sl2c_fourier, GaussianWignerFamily, Measure, PlancherelReport};
use harmonics_core::su2::{peter_weyl_forward, peter_weyl_inverse, plancherel_k_residual, wigner_all, KQuadrature, KSpectrum};
use harmonics_core::{plancherel_constant, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::config::{Command, Format, JobConfig, Target};
use crate::error::{CliError, Result};
use crate::formats::{
    to_json_bytes, write_p_spectral_table, write_spectral_table, GroupElementJson, IwasawaJson, KElementJson,
    KSpectrumJson, LorentzJson, OneOrMany, QElementJson,
};
use crate::report::{Bound, ResidualReport, Row};
use crate::verify::{self, identity};

pub struct Outcome {
    /// Bytes for `--out`; `None` means the report itself is the output.
    pub data: Option<Vec<u8>>,
    pub report: ResidualReport,
}

struct Rows {
    report: ResidualReport,
    timing: bool,
}

impl Rows {
    fn new(timing: bool) -> Self {
        Self { report: ResidualReport::default(), timing }
    }

    fn push(&mut self, name: &'static str, residual: f64, start: Instant) {
        let id = identity(name);
        let ms = if self.timing { start.elapsed().as_millis() as u64 } else { 0 };
        self.report.push(Row::new(name, id.paper_ref, residual, id.bound, ms));
    }

    /// A row whose tolerance is specific to this command.
    fn push_with(&mut self, name: &str, paper_ref: &str, residual: f64, bound: Bound, start: Instant) {
        let ms = if self.timing { start.elapsed().as_millis() as u64 } else { 0 };
        self.report.push(Row::new(name, paper_ref, residual, bound, ms));
    }
}

fn read_input<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn input_or<T: DeserializeOwned + Serialize>(cfg: &JobConfig, fallback: impl FnOnce() -> T) -> Result<T> {
    match &cfg.input {
        Some(p) => read_input(p),
        None => Ok(fallback()),
    }
}

fn json_only(cfg: &JobConfig, command: Command) -> Result<()> {
    if cfg.output.format == Some(Format::Csv) {
        return Err(CliError::Config(format!("{command:?} writes JSON only")));
    }
    Ok(())
}

pub fn run(command: Command, cfg: &JobConfig) -> Result<Outcome> {
    match command {
        Command::Decompose => decompose(cfg),
        Command::Wigner => wigner(cfg),
        Command::TransformK => transform_k(cfg),
        Command::TransformG => transform_g(cfg),
        Command::TransformP => transform_p(cfg),
        Command::Plancherel => plancherel(cfg),
        Command::Lorentz => lorentz(cfg),
        Command::Convolve => convolve(cfg),
        Command::VerifyAll => Ok(Outcome { data: None, report: verify::verify_all(cfg.seed, cfg.timing)? }),
    }
}

fn decompose(cfg: &JobConfig) -> Result<Outcome> {
    json_only(cfg, Command::Decompose)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let input: OneOrMany<GroupElementJson> = input_or(cfg, || {
        OneOrMany::Many((0..4).map(|_| (&verify::random_by_entries(&mut rng)).into()).collect())
    })?;
    let start = Instant::now();
    let elements = input.into_vec().iter().map(GroupElementJson::to_element).collect::<Result<Vec<_>>>()?;
    let factors: Vec<IwasawaFactors> = elements.iter().map(IwasawaFactors::decompose).collect();
    let worst = elements
        .iter()
        .zip(&factors)
        .map(|(g, f)| f.compose().max_entry_distance(g))
        .fold(0.0, f64::max);
    let mut rows = Rows::new(cfg.timing);
    rows.push("iwasawa.round_trip", worst, start);
    let out: Vec<IwasawaJson> = factors.iter().map(IwasawaJson::from).collect();
    let data = if out.len() == 1 { to_json_bytes(&out[0])? } else { to_json_bytes(&out)? };
    Ok(Outcome { data: Some(data), report: rows.report })
}

fn wigner(cfg: &JobConfig) -> Result<Outcome> {
    json_only(cfg, Command::Wigner)?;
    let r = cfg.resolve(Command::Wigner)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let k = match &cfg.input {
        Some(p) => read_input::<KElementJson>(p)?.to_element(),
        None => KElement::random(&mut rng),
    };
    let start = Instant::now();
    let blocks = wigner_all(r.jmax_twice, &k)?;
    let worst = blocks
        .iter()
        .map(|d| (d * &d.adjoint()).max_abs_diff(&CMatrix::identity(d.dim())))
        .fold(0.0, f64::max);
    let mut rows = Rows::new(cfg.timing);
    rows.push_with("wigner.unitarity", "D^j(k) D^j(k)^dagger = I", worst, Bound::AtMost(1e-12), start);
    Ok(Outcome { data: Some(to_json_bytes(&KSpectrumJson::from_blocks(&blocks))?), report: rows.report })
}

fn random_spectrum(rng: &mut ChaCha8Rng, jmax_twice: u32) -> KSpectrum {
    let mut s = KSpectrum::zeros(jmax_twice);
    for tj in 0..=jmax_twice {
        for z in s.block_mut(tj).as_mut_slice() {
            *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    s
}

/// Synthesizes `f` from coefficients (from `--input` or random), samples it
/// on the `K` quadrature and transforms back.
fn transform_k(cfg: &JobConfig) -> Result<Outcome> {
    json_only(cfg, Command::TransformK)?;
    let r = cfg.resolve(Command::TransformK)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.coefficient_seed());
    let coeffs = match &cfg.input {
        Some(p) => read_input::<KSpectrumJson>(p)?.to_spectrum()?,
        None => random_spectrum(&mut rng, r.jmax_twice),
    };
    let jmax = coeffs.jmax_twice().max(r.jmax_twice);
    let quad = KQuadrature::new(harmonics_core::su2::IrrepIndex::new(jmax)?);
    let start = Instant::now();
    let samples = quad.sample(|k| peter_weyl_inverse(&coeffs, k));
    let spectrum = peter_weyl_forward(&quad, &samples, jmax)?;
    let mut padded = KSpectrum::zeros(jmax);
    for tj in 0..=coeffs.jmax_twice() {
        *padded.block_mut(tj) = coeffs.block(tj).clone();
    }
    let mut rows = Rows::new(cfg.timing);
    rows.push("k.inversion_round_trip", spectrum.max_abs_diff(&padded), start);
    rows.push("k.plancherel", plancherel_k_residual(&quad, &samples, jmax)?, start);
    Ok(Outcome { data: Some(to_json_bytes(&KSpectrumJson::from(&spectrum))?), report: rows.report })
}

fn g_family(cfg: &JobConfig, jmax_twice: u32) -> GaussianWignerFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.coefficient_seed());
    GaussianWignerFamily::random(&mut rng, cfg.family.sigma, cfg.family.tau, jmax_twice)
}

fn p_family(cfg: &JobConfig, jmax_twice: u32) -> SeparablePFamily {
    SeparablePFamily { v_sigma: cfg.family.v_sigma, g: g_family(cfg, jmax_twice) }
}

fn plancherel_rows(rows: &mut Rows, prefix: &str, rep: &PlancherelReport, dim: u32, start: Instant) {
    let (main, ratio, guard) = match prefix {
        "g" => ("g.plancherel", "g.plancherel_constant_ratio", "g.plancherel_constant_guard"),
        _ => ("poincare.plancherel", "poincare.plancherel_constant_ratio", "poincare.plancherel_constant_guard"),
    };
    rows.push(main, rep.residual_product, start);
    rows.push(ratio, (rep.unnormalized_ratio() * plancherel_constant(dim) - 1.0).abs(), start);
    rows.push(guard, rep.residual_unnormalized, start);
}

fn transform_g(cfg: &JobConfig) -> Result<Outcome> {
    let r = cfg.resolve(Command::TransformG)?;
    let f = g_family(cfg, r.jmax_twice).sample(std::sync::Arc::new(r.group_grid()?));
    let start = Instant::now();
    let table = sl2c_fourier(&f, &r.freq(), r.jmax_twice)?;
    let rep = PlancherelReport::new(f.norm_sqr(Measure::Product), f.norm_sqr(Measure::Haar), table.weighted_norm_sqr(), 3);
    let mut rows = Rows::new(cfg.timing);
    rows.push("g.plancherel", rep.residual_product, start);
    let mut data = Vec::new();
    write_spectral_table(&table, cfg.format(), &mut data)?;
    Ok(Outcome { data: Some(data), report: rows.report })
}

/// Exports the table only. Grids small enough to export cannot resolve the
/// Plancherel identity to its tolerance; `plancherel --target p` checks it.
fn transform_p(cfg: &JobConfig) -> Result<Outcome> {
    let r = cfg.resolve(Command::TransformP)?;
    let f = p_family(cfg, r.jmax_twice).sample([r.v; 4], std::sync::Arc::new(r.group_grid()?))?;
    let table = poincare_fourier(&f, &[r.eta; 4], &r.freq(), r.jmax_twice)?;
    let mut data = Vec::new();
    write_p_spectral_table(&table, cfg.format(), cfg.full, &mut data)?;
    Ok(Outcome { data: Some(data), report: ResidualReport::default() })
}

fn plancherel(cfg: &JobConfig) -> Result<Outcome> {
    let r = cfg.resolve(Command::Plancherel)?;
    let mut rows = Rows::new(cfg.timing);
    let start = Instant::now();
    match cfg.target() {
        Target::K => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.coefficient_seed());
            let quad = KQuadrature::new(r.irrep()?);
            let mut worst: f64 = 0.0;
            for _ in 0..100 {
                let s = random_spectrum(&mut rng, r.jmax_twice);
                worst = worst.max(plancherel_k_residual(&quad, &quad.sample(|k| peter_weyl_inverse(&s, k)), r.jmax_twice)?);
            }
            rows.push("k.plancherel", worst, start);
        }
        Target::G => {
            let f = g_family(cfg, r.jmax_twice).sample(std::sync::Arc::new(r.group_grid()?));
            let rep = harmonics_core::slc::plancherel_g(&f, &r.freq(), r.jmax_twice)?;
            plancherel_rows(&mut rows, "g", &rep, 3, start);
        }
        Target::P => {
            let f = p_family(cfg, r.jmax_twice).sample([r.v; 4], std::sync::Arc::new(r.group_grid()?))?;
            let rep = harmonics_core::poincare::poincare_plancherel(&f, &[r.eta; 4], &r.freq(), r.jmax_twice)?;
            plancherel_rows(&mut rows, "p", &rep, 7, start);
        }
    }
    Ok(Outcome { data: None, report: rows.report })
}

fn lorentz(cfg: &JobConfig) -> Result<Outcome> {
    json_only(cfg, Command::Lorentz)?;
    #[derive(serde::Deserialize, Serialize)]
    #[serde(deny_unknown_fields)]
    struct Input {
        element: GroupElementJson,
        #[serde(default)]
        vectors: Vec<[f64; 4]>,
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let input: Input = input_or(cfg, || Input {
        element: (&GroupElement::random(&mut rng, 0.5, 0.5)).into(),
        vectors: vec![[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]],
    })?;
    let start = Instant::now();
    let g = input.element.to_element()?;
    let m = covering_map(&g);
    let class = m.classify(1e-10 * (1.0 + g.frobenius_sqr()).powi(2));
    let vectors: Vec<MinkowskiVector> = input.vectors.into_iter().map(MinkowskiVector).collect();
    let mut rows = Rows::new(cfg.timing);
    let scale = (1.0 + g.frobenius_sqr()).powi(2);
    rows.push_with("lorentz.metric_defect", "L^T J L = J", m.metric_defect() / scale, Bound::AtMost(1e-12), start);
    let worst = vectors
        .iter()
        .map(|v| (m.apply(v).interval() - v.interval()).abs() / (scale * (1.0 + v.0.iter().map(|c| c * c).sum::<f64>())))
        .fold(0.0, f64::max);
    rows.push_with("lorentz.interval", "|L v|^2 = |v|^2", worst, Bound::AtMost(1e-12), start);
    Ok(Outcome { data: Some(to_json_bytes(&LorentzJson::new(&g, &m, class, &vectors))?), report: rows.report })
}

/// `ψ ∗ f̃` and `ψ ∗_c f̃` at points from `--input` or random ones, with `ψ`
/// a compact bump and `f` the separable family.
fn convolve(cfg: &JobConfig) -> Result<Outcome> {
    json_only(cfg, Command::Convolve)?;
    #[derive(Serialize)]
    struct Value {
        point: QElementJson,
        semidirect: [f64; 2],
        central: [f64; 2],
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let points: OneOrMany<QElementJson> = input_or(cfg, || {
        OneOrMany::Many((0..5).map(|_| (&QElement::random(&mut rng, 1.0, 0.5, 0.5)).into()).collect())
    })?;
    let points = points.into_vec().iter().map(QElementJson::to_element).collect::<Result<Vec<_>>>()?;
    let r = cfg.resolve(Command::Convolve)?;
    let family = p_family(cfg, r.jmax_twice.min(2));
    let bump = CompactBump { radius_v: 0.75, radius_g: 0.45 };
    let grid = harmonics_core::slc::CoordGrid::nak(
        KQuadrature::new(harmonics_core::su2::IrrepIndex::new(0)?),
        harmonics_core::abelian::LineGrid::new(0.9, 8)?,
        harmonics_core::abelian::LineGrid::new(0.9, 8)?,
        harmonics_core::abelian::LineGrid::new(0.9, 8)?,
    );
    let psi = bump.sample([harmonics_core::abelian::LineGrid::new(1.5, 8)?; 4], std::sync::Arc::new(grid))?;
    let start = Instant::now();
    let quad = PQuadrature::new(&psi);
    let ft = tilde_lift(family.closed_form());
    let mut worst: f64 = 0.0;
    let values: Vec<Value> = points
        .iter()
        .map(|x| {
            let a = convolve_p_at(&quad, &ft, x);
            let b = convolve_c_at(&quad, &ft, x);
            worst = worst.max((a - b).norm() / (1.0 + a.norm()));
            Value { point: x.into(), semidirect: [a.re, a.im], central: [b.re, b.im] }
        })
        .collect();
    let mut rows = Rows::new(cfg.timing);
    rows.push("poincare.central_convolution", worst, start);
    Ok(Outcome { data: Some(to_json_bytes(&values)?), report: rows.report })
}
