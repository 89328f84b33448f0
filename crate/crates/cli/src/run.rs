use std::fs::File;
use std::io::BufReader;

use casimir_core::dielectric::{
    load_optical_table, DielectricModel, DrudeModel, PlasmaModel, WindowMode, WindowSpec,
};
use casimir_core::lifshitz::{
    effective_reflection, material_spectral_density, pressure_closed_form,
    pressure_imag_frequency, pressure_real_frequency, window_force_comparison, Cavity, Method,
    PressureResult, QuadratureSpec, WindowedPlates,
};
use casimir_core::spectrum::{
    constant_r_free_energy, constant_r_pressure, ideal_casimir_pressure, total_density,
    ConstantReflection, PhysicalSetup,
};

use crate::config::{Command, MethodChoice, ModeChoice, ModelChoice, RunConfig};
use crate::output::{render, write_atomic, Cell, Table};
use crate::CliError;

/// Stand-in for `r = 1`, where the spectrum is a sum of delta functions.
const NEAR_PERFECT: f64 = 1.0 - 1e-9;

const SPECTRUM_COLUMNS: [&str; 7] = [
    "omega_rad_s",
    "xi",
    "density_pw_te",
    "density_pw_tm",
    "density_ew_te",
    "density_ew_tm",
    "density_total",
];

/// Evaluates the configured command.
pub fn execute(config: &RunConfig) -> Result<Table, CliError> {
    match config.command {
        Command::SpectrumConstR => spectrum_const_r(config),
        Command::PressureConstRSweep => pressure_sweep(config),
        Command::EffectiveR => effective_r(config),
        Command::SpectrumMaterial => spectrum_material(config),
        Command::WindowShape => window_shape(config),
        Command::WindowDiff => window_diff(config),
        Command::Pressure => pressure(config),
        Command::SeedDefaults => Err(CliError::Usage(
            "--seed-defaults prints a config file and produces no table".into(),
        )),
    }
}

/// Runs the command and writes its output to the configured destination.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let text = match config.command {
        Command::SeedDefaults => crate::config::default_config_text(),
        _ => render(config, &execute(config)?),
    };
    match &config.output {
        Some(path) => write_atomic(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn setup_at(a: f64) -> Result<PhysicalSetup, CliError> {
    Ok(PhysicalSetup::new(a)?)
}

fn quadrature(config: &RunConfig, setup: &PhysicalSetup) -> Result<QuadratureSpec, CliError> {
    let mut q = QuadratureSpec::for_setup(setup);
    let o = &config.quad;
    if let Some(v) = o.p_nodes {
        q.p_nodes = v;
    }
    if let Some(v) = o.panel_width {
        q.omega_panel_width = v;
    }
    if let Some(v) = o.omega_max {
        q.omega_max = v;
    }
    if let Some(v) = o.zeta_scale {
        q.zeta_scale = v;
    }
    if let Some(v) = o.rel_tol {
        q.rel_tol = v;
    }
    if let Some(v) = o.cutoff_delta {
        q.cutoff_delta = v;
    }
    q.validate(setup)?;
    Ok(q)
}

fn model_name(model: &ModelChoice) -> &'static str {
    match model {
        ModelChoice::Drude { .. } => "drude",
        ModelChoice::Plasma { .. } => "plasma",
        ModelChoice::Ideal => "ideal",
        ModelChoice::ConstR(_) => "const-r",
        ModelChoice::Constant(_) => "constant",
        ModelChoice::Tabulated(_) => "tabulated",
    }
}

/// The permittivity of a material model; `None` for reflection surrogates.
fn material(model: &ModelChoice) -> Result<Option<DielectricModel>, CliError> {
    Ok(Some(match model {
        ModelChoice::Drude { omega_p, nu } => DielectricModel::Drude(DrudeModel::new(*omega_p, *nu)?),
        ModelChoice::Plasma { omega_p } => DielectricModel::Plasma(PlasmaModel::new(*omega_p)?),
        ModelChoice::Constant(eps) => DielectricModel::constant(*eps),
        ModelChoice::Tabulated(path) => {
            let file = File::open(path).map_err(|source| CliError::Io {
                context: format!("opening optical table {}", path.display()),
                source,
            })?;
            DielectricModel::Tabulated(load_optical_table(BufReader::new(file))?)
        }
        ModelChoice::Ideal | ModelChoice::ConstR(_) => return Ok(None),
    }))
}

fn material_required(config: &RunConfig) -> Result<DielectricModel, CliError> {
    material(&config.model)?.ok_or_else(|| {
        CliError::Validation(format!(
            "--model {} has no permittivity; use drude, plasma, constant or tabulated",
            model_name(&config.model)
        ))
    })
}

fn cavity(config: &RunConfig) -> Result<Cavity, CliError> {
    Ok(match &config.model {
        ModelChoice::Ideal => Cavity::surrogate(ConstantReflection::real(1.0)?),
        ModelChoice::ConstR(r) => Cavity::surrogate(ConstantReflection::real(*r)?),
        _ => Cavity::symmetric(material_required(config)?),
    })
}

fn numeric_method(config: &RunConfig) -> Result<Method, CliError> {
    match config.method {
        MethodChoice::Real => Ok(Method::RealFrequency),
        MethodChoice::Imag => Ok(Method::ImagFrequency),
        MethodChoice::Closed => Err(CliError::Validation(
            "--method closed only applies to constant reflection; use real or imag".into(),
        )),
    }
}

fn pressure_with(
    config: &RunConfig,
    setup: &PhysicalSetup,
) -> Result<PressureResult, CliError> {
    let closed = |r: f64| -> Result<PressureResult, CliError> {
        Ok(pressure_closed_form(&ConstantReflection::real(r)?, setup))
    };
    match (&config.model, config.method) {
        (ModelChoice::Ideal, MethodChoice::Closed) => closed(1.0),
        (ModelChoice::ConstR(r), MethodChoice::Closed) => closed(*r),
        _ => {
            let method = numeric_method(config)?;
            let quad = quadrature(config, setup)?;
            let cavity = cavity(config)?;
            Ok(match method {
                Method::RealFrequency => pressure_real_frequency(&cavity, setup, &quad)?,
                _ => pressure_imag_frequency(&cavity, setup, &quad)?,
            })
        }
    }
}

fn linspace(from: f64, to: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| from + (to - from) * i as f64 / (n - 1) as f64)
        .collect()
}

fn logspace(from: f64, to: f64, n: usize) -> Vec<f64> {
    let (l0, l1) = (from.ln(), to.ln());
    (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn spectrum_const_r(config: &RunConfig) -> Result<Table, CliError> {
    let setup = setup_at(config.separation)?;
    let r = ConstantReflection::real(config.r.min(NEAR_PERFECT))?;
    let count = (config.xi_max / config.xi_step).floor() as usize;
    let mut table = Table::new(&SPECTRUM_COLUMNS);
    for i in 0..=count {
        let xi = i as f64 * config.xi_step;
        let s = total_density(&r, xi)?;
        table.push(spectrum_row(setup.omega(xi), xi, s.density_pw, s.density_ew));
    }
    Ok(table)
}

fn spectrum_row(omega: f64, xi: f64, pw: [f64; 2], ew: [f64; 2]) -> Vec<Cell> {
    let total = pw[0] + pw[1] + ew[0] + ew[1];
    [omega, xi, pw[0], pw[1], ew[0], ew[1], total]
        .into_iter()
        .map(Cell::Num)
        .collect()
}

fn pressure_sweep(config: &RunConfig) -> Result<Table, CliError> {
    let setup = setup_at(config.separation)?;
    let ideal = ideal_casimir_pressure(&setup);
    let mut table = Table::new(&["r", "pressure_pa", "ratio_to_ideal", "free_energy_j_m2"]);
    for r in linspace(config.r_min, config.r_max, config.points) {
        let refl = ConstantReflection::real(r)?;
        let p = constant_r_pressure(&refl, &setup);
        table.push(vec![
            r.into(),
            p.into(),
            (p / ideal).into(),
            constant_r_free_energy(&refl, &setup).into(),
        ]);
    }
    Ok(table)
}

fn effective_r(config: &RunConfig) -> Result<Table, CliError> {
    let mut table = Table::new(&[
        "a_m",
        "pressure_pa",
        "pressure_te_pa",
        "pressure_tm_pa",
        "r_te",
        "r_tm",
    ]);
    for a in logspace(config.a_min, config.a_max, config.points) {
        let setup = setup_at(a)?;
        let p = pressure_with(config, &setup)?;
        let r = effective_reflection(p.by_polarization, &setup)?;
        table.push(vec![
            a.into(),
            p.value.into(),
            p.by_polarization[0].into(),
            p.by_polarization[1].into(),
            r[0].into(),
            r[1].into(),
        ]);
    }
    Ok(table)
}

fn spectrum_material(config: &RunConfig) -> Result<Table, CliError> {
    let setup = setup_at(config.separation)?;
    let quad = quadrature(config, &setup)?;
    let cavity = cavity(config)?;
    let mut table = Table::new(&SPECTRUM_COLUMNS);
    for omega in linspace(config.omega_from, config.omega_to, config.points) {
        let s = material_spectral_density(&cavity, &setup, omega, &quad)?;
        table.push(spectrum_row(omega, s.xi, s.density_pw, s.density_ew));
    }
    Ok(table)
}

fn window_spec(config: &RunConfig, delta: f64, s: Option<f64>) -> Result<WindowSpec, CliError> {
    Ok(match s {
        Some(s) => WindowSpec::new(config.omega1, config.omega2, delta, s, WindowMode::Smooth)?,
        None => WindowSpec::sharp(config.omega1, config.omega2, delta)?,
    })
}

fn window_shape(config: &RunConfig) -> Result<Table, CliError> {
    let mut table = Table::new(&["delta", "s", "omega_rad_s", "phi"]);
    for &delta in &config.deltas {
        for &s in &config.sharpness {
            let spec = window_spec(config, delta, Some(s))?;
            for omega in linspace(config.omega_from, config.omega_to, config.points) {
                table.push(vec![
                    delta.into(),
                    s.into(),
                    omega.into(),
                    spec.factor(omega, config.separation).into(),
                ]);
            }
        }
    }
    Ok(table)
}

fn window_diff(config: &RunConfig) -> Result<Table, CliError> {
    let setup = setup_at(config.separation)?;
    let quad = quadrature(config, &setup)?;
    let model = material_required(config)?;
    let method = numeric_method(config)?;
    let shapes: Vec<Option<f64>> = match config.window_mode {
        ModeChoice::Sharp => vec![None],
        ModeChoice::Smooth => config.sharpness.iter().copied().map(Some).collect(),
    };
    let mut table = Table::new(&[
        "model",
        "method",
        "s",
        "delta",
        "pressure_pa",
        "windowed_pa",
        "difference_pa",
        "error_pa",
        "relative_change",
    ]);
    for &delta in &config.deltas {
        for &shape in &shapes {
            let spec = window_spec(config, delta, shape)?;
            let d = window_force_comparison(
                &model,
                &spec,
                &setup,
                method,
                WindowedPlates::Both,
                &quad,
            )?;
            let s = shape.map_or_else(|| "sharp".to_string(), |s| s.to_string());
            table.push(vec![
                model_name(&config.model).into(),
                method.label().into(),
                s.into(),
                delta.into(),
                d.base.value.into(),
                d.windowed.value.into(),
                d.difference.into(),
                d.error.into(),
                (d.difference / d.base.value).into(),
            ]);
        }
    }
    Ok(table)
}

fn pressure(config: &RunConfig) -> Result<Table, CliError> {
    let setup = setup_at(config.separation)?;
    let p = pressure_with(config, &setup)?;
    let (pw, ew) = match p.breakdown {
        Some(b) => (b.propagating, b.evanescent),
        None => (f64::NAN, f64::NAN),
    };
    let mut table = Table::new(&[
        "model",
        "method",
        "a_m",
        "pressure_pa",
        "propagating_pa",
        "evanescent_pa",
        "te_pa",
        "tm_pa",
        "error_pa",
    ]);
    table.push(vec![
        model_name(&config.model).into(),
        p.method.label().into(),
        config.separation.into(),
        p.value.into(),
        pw.into(),
        ew.into(),
        p.by_polarization[0].into(),
        p.by_polarization[1].into(),
        p.error_estimate.into(),
    ]);
    Ok(table)
}
