//! Run configuration: command-line flags merged over an optional
//! `key = value` file.

use std::collections::BTreeMap;
use std::path::PathBuf;

use casimir_core::constants::RAD_PER_SECOND_PER_EV;
use clap::{Arg, ArgAction};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    SpectrumConstR,
    PressureConstRSweep,
    EffectiveR,
    SpectrumMaterial,
    WindowShape,
    WindowDiff,
    Pressure,
    /// Print the default parameter set as a config file.
    SeedDefaults,
}

const COMMANDS: [(&str, Command); 7] = [
    ("spectrum-const-r", Command::SpectrumConstR),
    ("pressure-const-r-sweep", Command::PressureConstRSweep),
    ("effective-r", Command::EffectiveR),
    ("spectrum-material", Command::SpectrumMaterial),
    ("window-shape", Command::WindowShape),
    ("window-diff", Command::WindowDiff),
    ("pressure", Command::Pressure),
];

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::SeedDefaults => "seed-defaults",
            other => COMMANDS
                .iter()
                .find(|(_, c)| *c == other)
                .map(|(n, _)| *n)
                .expect("every command is listed"),
        }
    }

    fn parse(name: &str) -> Result<Self, CliError> {
        COMMANDS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| *c)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown command '{name}'; choose one of: {}",
                    command_names().join(", ")
                ))
            })
    }
}

fn command_names() -> Vec<&'static str> {
    COMMANDS.iter().map(|(n, _)| *n).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelChoice {
    Drude { omega_p: f64, nu: f64 },
    Plasma { omega_p: f64 },
    /// Perfect mirrors.
    Ideal,
    /// Constant real reflection coefficient on both polarizations.
    ConstR(f64),
    /// Frequency-independent real permittivity.
    Constant(f64),
    Tabulated(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Real,
    Imag,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeChoice {
    Sharp,
    Smooth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    JsonLines,
}

/// Optional overrides of the engine's quadrature defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadOverrides {
    pub p_nodes: Option<usize>,
    pub panel_width: Option<f64>,
    pub omega_max: Option<f64>,
    pub zeta_scale: Option<f64>,
    pub rel_tol: Option<f64>,
    pub cutoff_delta: Option<f64>,
}

/// A fully validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub model: ModelChoice,
    /// Plate separation, m.
    pub separation: f64,
    pub method: MethodChoice,
    pub r: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub xi_max: f64,
    pub xi_step: f64,
    pub a_min: f64,
    pub a_max: f64,
    pub omega_from: f64,
    pub omega_to: f64,
    pub points: usize,
    pub omega1: f64,
    pub omega2: f64,
    pub deltas: Vec<f64>,
    pub sharpness: Vec<f64>,
    pub window_mode: ModeChoice,
    pub quad: QuadOverrides,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Clone, Copy)]
enum Kind {
    Length,
    Frequency,
    Real,
    Count,
    List,
    Choice(&'static [&'static str]),
    Path,
}

struct Key {
    name: &'static str,
    default: &'static str,
    kind: Kind,
    help: &'static str,
}

const MODELS: &[&str] = &["drude", "plasma", "ideal", "const-r", "constant", "tabulated"];
const METHODS: &[&str] = &["imag", "real", "closed"];
const MODES: &[&str] = &["sharp", "smooth"];
const FORMATS: &[&str] = &["csv", "json-lines"];

const KEYS: &[Key] = &[
    Key { name: "model", default: "drude", kind: Kind::Choice(MODELS), help: "Plate material" },
    Key { name: "a", default: "100nm", kind: Kind::Length, help: "Plate separation (nm|um|m)" },
    Key { name: "omega-p", default: "9eV", kind: Kind::Frequency, help: "Plasma frequency (eV|meV|rad_s)" },
    Key { name: "nu", default: "35meV", kind: Kind::Frequency, help: "Drude relaxation frequency" },
    Key { name: "eps", default: "1e12", kind: Kind::Real, help: "Permittivity of the constant model" },
    Key { name: "table", default: "", kind: Kind::Path, help: "Optical table for the tabulated model" },
    Key { name: "method", default: "imag", kind: Kind::Choice(METHODS), help: "Pressure route" },
    Key { name: "r", default: "0.9", kind: Kind::Real, help: "Constant reflection coefficient" },
    Key { name: "r-min", default: "0", kind: Kind::Real, help: "Start of the reflectivity sweep" },
    Key { name: "r-max", default: "1", kind: Kind::Real, help: "End of the reflectivity sweep" },
    Key { name: "xi-max", default: "30", kind: Kind::Real, help: "Largest xi = 2 omega a / c" },
    Key { name: "xi-step", default: "0.05", kind: Kind::Real, help: "Spacing of xi samples" },
    Key { name: "a-min", default: "10nm", kind: Kind::Length, help: "Smallest separation of a sweep" },
    Key { name: "a-max", default: "1um", kind: Kind::Length, help: "Largest separation of a sweep" },
    Key { name: "omega-from", default: "1e14rad_s", kind: Kind::Frequency, help: "Start of a frequency sweep" },
    Key { name: "omega-to", default: "3e16rad_s", kind: Kind::Frequency, help: "End of a frequency sweep" },
    Key { name: "points", default: "101", kind: Kind::Count, help: "Samples in a sweep" },
    Key { name: "omega1", default: "7.5e14rad_s", kind: Kind::Frequency, help: "Lower window edge" },
    Key { name: "omega2", default: "9.4e15rad_s", kind: Kind::Frequency, help: "Upper window edge" },
    Key { name: "delta", default: "1", kind: Kind::List, help: "Window depth(s) in [0, 1], comma-separated" },
    Key { name: "s", default: "1,10,100", kind: Kind::List, help: "Window edge sharpness value(s)" },
    Key { name: "window-mode", default: "sharp", kind: Kind::Choice(MODES), help: "Window edges" },
    Key { name: "p-nodes", default: "auto", kind: Kind::Count, help: "Minimum nodes per contour branch" },
    Key { name: "panel-width", default: "auto", kind: Kind::Frequency, help: "Real-frequency panel width" },
    Key { name: "quad-omega-max", default: "auto", kind: Kind::Frequency, help: "Real-frequency cutoff" },
    Key { name: "zeta-scale", default: "auto", kind: Kind::Frequency, help: "Imaginary-frequency scale" },
    Key { name: "rel-tol", default: "auto", kind: Kind::Real, help: "Relative tolerance" },
    Key { name: "cutoff-delta", default: "auto", kind: Kind::Real, help: "Largest regularization step" },
    Key { name: "output", default: "-", kind: Kind::Path, help: "Output file, '-' for stdout" },
    Key { name: "format", default: "csv", kind: Kind::Choice(FORMATS), help: "Output format" },
];

fn key(name: &str) -> Option<&'static Key> {
    KEYS.iter().find(|k| k.name == name)
}

fn cli() -> clap::Command {
    let mut cmd = clap::Command::new("casimir")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Casimir pressure and pressure spectra between parallel plates")
        .arg_required_else_help(true)
        .arg(
            Arg::new("command")
                .value_name("COMMAND")
                .help(format!("One of: {}", command_names().join(", "))),
        )
        .arg(
            Arg::new("config")
                .long("config")
                .value_name("FILE")
                .help("Read `key = value` settings; flags take precedence"),
        )
        .arg(
            Arg::new("seed-defaults")
                .long("seed-defaults")
                .action(ArgAction::SetTrue)
                .help("Print the default parameter set as a config file"),
        );
    for k in KEYS {
        cmd = cmd.arg(
            Arg::new(k.name)
                .long(k.name)
                .value_name("VALUE")
                .allow_hyphen_values(true)
                .help(format!("{} [default: {}]", k.help, k.default)),
        );
    }
    cmd
}

/// Usage text.
pub fn usage() -> String {
    cli().render_help().to_string()
}

/// Parses `argv` (without the program name), reading `--config` if given.
pub fn parse_args(argv: &[String]) -> Result<RunConfig, CliError> {
    let matches = matches(argv)?;
    let file = match matches.get_one::<String>("config") {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|source| CliError::Io {
            context: format!("reading config file {path}"),
            source,
        })?),
        None => None,
    };
    from_matches(&matches, file.as_deref())
}

/// Builds a configuration from flags and an optional config-file text.
/// Flags override file values; `--config` in `argv` is ignored here.
pub fn parse_config(argv: &[String], file: Option<&str>) -> Result<RunConfig, CliError> {
    let matches = if argv.is_empty() && file.is_some() {
        cli().arg_required_else_help(false).try_get_matches_from(["casimir"])
    } else {
        cli().try_get_matches_from(std::iter::once("casimir".to_string()).chain(argv.iter().cloned()))
    }
    .map_err(clap_error)?;
    from_matches(&matches, file)
}

fn matches(argv: &[String]) -> Result<clap::ArgMatches, CliError> {
    cli()
        .try_get_matches_from(std::iter::once("casimir".to_string()).chain(argv.iter().cloned()))
        .map_err(clap_error)
}

fn clap_error(e: clap::Error) -> CliError {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
        ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => CliError::Help(e.to_string()),
        _ => {
            let text = e.render().to_string();
            let text = text.trim_end();
            CliError::Usage(text.strip_prefix("error: ").unwrap_or(text).to_string())
        }
    }
}

fn from_matches(matches: &clap::ArgMatches, file: Option<&str>) -> Result<RunConfig, CliError> {
    let mut values: BTreeMap<&'static str, String> = BTreeMap::new();
    let mut command = None;
    if let Some(text) = file {
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "config line {}: expected `key = value`, got '{line}'",
                    line_no + 1
                ))
            })?;
            let (k, v) = (k.trim(), v.trim());
            if k == "command" {
                command = Some(Command::parse(v)?);
                continue;
            }
            let spec = key(k).ok_or_else(|| {
                CliError::Usage(format!(
                    "config line {}: unknown key '{k}'; run `casimir --help` for the list",
                    line_no + 1
                ))
            })?;
            values.insert(spec.name, v.to_string());
        }
    }
    if let Some(name) = matches.get_one::<String>("command") {
        command = Some(Command::parse(name)?);
    }
    for k in KEYS {
        if let Some(v) = matches.get_one::<String>(k.name) {
            values.insert(k.name, v.clone());
        }
    }
    if matches.get_flag("seed-defaults") {
        command = Some(Command::SeedDefaults);
    }
    let command = command.ok_or_else(|| {
        CliError::Usage(format!(
            "missing command; choose one of: {}",
            command_names().join(", ")
        ))
    })?;
    resolve(command, &values)
}

fn raw<'a>(values: &'a BTreeMap<&'static str, String>, name: &str) -> &'a str {
    values
        .get(name)
        .map(String::as_str)
        .unwrap_or_else(|| key(name).expect("known key").default)
}

fn invalid(name: &str, message: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("--{name}: {message}"))
}

fn parse_number(name: &str, text: &str) -> Result<f64, CliError> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| invalid(name, format!("'{text}' is not a number")))?;
    if !v.is_finite() {
        return Err(invalid(name, format!("'{text}' is not finite")));
    }
    Ok(v)
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(invalid(name, format!("must be positive, got {v}")))
    }
}

fn parse_length(name: &str, text: &str) -> Result<f64, CliError> {
    let t = text.trim();
    let (number, scale) = if let Some(n) = t.strip_suffix("nm") {
        (n, 1e-9)
    } else if let Some(n) = t.strip_suffix("um") {
        (n, 1e-6)
    } else if let Some(n) = t.strip_suffix('m') {
        (n, 1.0)
    } else {
        return Err(invalid(
            name,
            format!("'{text}' has no length unit; write e.g. 100nm, 0.1um or 1e-7m"),
        ));
    };
    positive(name, parse_number(name, number)? * scale)
}

fn parse_frequency(name: &str, text: &str) -> Result<f64, CliError> {
    let t = text.trim();
    let (number, scale) = if let Some(n) = t.strip_suffix("rad_s") {
        (n, 1.0)
    } else if let Some(n) = t.strip_suffix("meV") {
        (n, 1e-3 * RAD_PER_SECOND_PER_EV)
    } else if let Some(n) = t.strip_suffix("eV") {
        (n, RAD_PER_SECOND_PER_EV)
    } else {
        return Err(invalid(
            name,
            format!("'{text}' has no frequency unit; write e.g. 9eV, 35meV or 1.5e15rad_s"),
        ));
    };
    positive(name, parse_number(name, number)? * scale)
}

fn parse_list(name: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let list = text
        .split(',')
        .map(|item| parse_number(name, item))
        .collect::<Result<Vec<_>, _>>()?;
    if list.is_empty() {
        return Err(invalid(name, "needs at least one value"));
    }
    Ok(list)
}

fn parse_count(name: &str, text: &str) -> Result<usize, CliError> {
    text.trim()
        .parse()
        .map_err(|_| invalid(name, format!("'{text}' is not a non-negative integer")))
}

fn optional<T>(
    values: &BTreeMap<&'static str, String>,
    name: &str,
    parse: impl Fn(&str, &str) -> Result<T, CliError>,
) -> Result<Option<T>, CliError> {
    match raw(values, name) {
        "auto" => Ok(None),
        text => parse(name, text).map(Some),
    }
}

fn check_choice(values: &BTreeMap<&'static str, String>) -> Result<(), CliError> {
    for k in KEYS {
        if let Kind::Choice(options) = k.kind {
            let v = raw(values, k.name);
            if !options.contains(&v) {
                return Err(invalid(
                    k.name,
                    format!("'{v}' is not one of {}", options.join(", ")),
                ));
            }
        }
    }
    Ok(())
}

fn resolve(command: Command, values: &BTreeMap<&'static str, String>) -> Result<RunConfig, CliError> {
    check_choice(values)?;
    let length = |n: &str| parse_length(n, raw(values, n));
    let frequency = |n: &str| parse_frequency(n, raw(values, n));
    let number = |n: &str| parse_number(n, raw(values, n));

    let model = match raw(values, "model") {
        "drude" => ModelChoice::Drude {
            omega_p: frequency("omega-p")?,
            nu: frequency("nu")?,
        },
        "plasma" => ModelChoice::Plasma {
            omega_p: frequency("omega-p")?,
        },
        "ideal" => ModelChoice::Ideal,
        "const-r" => ModelChoice::ConstR(number("r")?),
        "constant" => ModelChoice::Constant(positive("eps", number("eps")?)?),
        "tabulated" => match raw(values, "table") {
            "" => {
                return Err(invalid(
                    "table",
                    "the tabulated model needs an optical table; pass --table FILE",
                ))
            }
            path => ModelChoice::Tabulated(PathBuf::from(path)),
        },
        _ => unreachable!("choices checked"),
    };
    let method = match raw(values, "method") {
        "imag" => MethodChoice::Imag,
        "real" => MethodChoice::Real,
        _ => MethodChoice::Closed,
    };
    let window_mode = match raw(values, "window-mode") {
        "sharp" => ModeChoice::Sharp,
        _ => ModeChoice::Smooth,
    };
    let format = match raw(values, "format") {
        "csv" => OutputFormat::Csv,
        _ => OutputFormat::JsonLines,
    };

    let r = number("r")?;
    let r_min = number("r-min")?;
    let r_max = number("r-max")?;
    for (name, v) in [("r", r), ("r-min", r_min), ("r-max", r_max)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(invalid(name, format!("reflection coefficients lie in [0, 1], got {v}")));
        }
    }
    if r_min > r_max {
        return Err(invalid("r-min", "must not exceed --r-max"));
    }
    let deltas = parse_list("delta", raw(values, "delta"))?;
    if let Some(d) = deltas.iter().find(|d| !(0.0..=1.0).contains(*d)) {
        return Err(invalid("delta", format!("window depth lies in [0, 1], got {d}")));
    }
    let sharpness = parse_list("s", raw(values, "s"))?;
    if let Some(s) = sharpness.iter().find(|s| **s <= 0.0) {
        return Err(invalid("s", format!("sharpness must be positive, got {s}")));
    }
    let points = parse_count("points", raw(values, "points"))?;
    if points < 2 {
        return Err(invalid("points", "a sweep needs at least 2 points"));
    }
    let omega1 = frequency("omega1")?;
    let omega2 = frequency("omega2")?;
    if omega1 >= omega2 {
        return Err(invalid("omega1", "the window needs omega1 < omega2"));
    }
    let a_min = length("a-min")?;
    let a_max = length("a-max")?;
    if a_min >= a_max {
        return Err(invalid("a-min", "must be below --a-max"));
    }
    let omega_from = frequency("omega-from")?;
    let omega_to = frequency("omega-to")?;
    if omega_from >= omega_to {
        return Err(invalid("omega-from", "must be below --omega-to"));
    }
    let quad = QuadOverrides {
        p_nodes: optional(values, "p-nodes", parse_count)?,
        panel_width: optional(values, "panel-width", parse_frequency)?,
        omega_max: optional(values, "quad-omega-max", parse_frequency)?,
        zeta_scale: optional(values, "zeta-scale", parse_frequency)?,
        rel_tol: optional(values, "rel-tol", |n, t| positive(n, parse_number(n, t)?))?,
        cutoff_delta: optional(values, "cutoff-delta", |n, t| positive(n, parse_number(n, t)?))?,
    };
    let output = match raw(values, "output") {
        "-" | "" => None,
        p => Some(PathBuf::from(p)),
    };
    Ok(RunConfig {
        command,
        model,
        separation: length("a")?,
        method,
        r,
        r_min,
        r_max,
        xi_max: positive("xi-max", number("xi-max")?)?,
        xi_step: positive("xi-step", number("xi-step")?)?,
        a_min,
        a_max,
        omega_from,
        omega_to,
        points,
        omega1,
        omega2,
        deltas,
        sharpness,
        window_mode,
        quad,
        output,
        format,
    })
}

fn list_text(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn auto<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_else(|| "auto".into())
}

impl RunConfig {
    /// Every setting as `(key, value)` in a form that parses back to `self`.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let len = |v: f64| format!("{v:e}m");
        let freq = |v: f64| format!("{v:e}rad_s");
        let defaults = |name: &str| key(name).expect("known key").default.to_string();
        let (model, omega_p, nu, eps, table, r) = match &self.model {
            ModelChoice::Drude { omega_p, nu } => ("drude", freq(*omega_p), freq(*nu), defaults("eps"), String::new(), self.r.to_string()),
            ModelChoice::Plasma { omega_p } => ("plasma", freq(*omega_p), defaults("nu"), defaults("eps"), String::new(), self.r.to_string()),
            ModelChoice::Ideal => ("ideal", defaults("omega-p"), defaults("nu"), defaults("eps"), String::new(), self.r.to_string()),
            ModelChoice::ConstR(r) => ("const-r", defaults("omega-p"), defaults("nu"), defaults("eps"), String::new(), r.to_string()),
            ModelChoice::Constant(e) => ("constant", defaults("omega-p"), defaults("nu"), e.to_string(), String::new(), self.r.to_string()),
            ModelChoice::Tabulated(p) => ("tabulated", defaults("omega-p"), defaults("nu"), defaults("eps"), p.display().to_string(), self.r.to_string()),
        };
        vec![
            ("model", model.to_string()),
            ("a", len(self.separation)),
            ("omega-p", omega_p),
            ("nu", nu),
            ("eps", eps),
            ("table", table),
            ("method", match self.method {
                MethodChoice::Imag => "imag",
                MethodChoice::Real => "real",
                MethodChoice::Closed => "closed",
            }
            .to_string()),
            ("r", r),
            ("r-min", self.r_min.to_string()),
            ("r-max", self.r_max.to_string()),
            ("xi-max", self.xi_max.to_string()),
            ("xi-step", self.xi_step.to_string()),
            ("a-min", len(self.a_min)),
            ("a-max", len(self.a_max)),
            ("omega-from", freq(self.omega_from)),
            ("omega-to", freq(self.omega_to)),
            ("points", self.points.to_string()),
            ("omega1", freq(self.omega1)),
            ("omega2", freq(self.omega2)),
            ("delta", list_text(&self.deltas)),
            ("s", list_text(&self.sharpness)),
            ("window-mode", match self.window_mode {
                ModeChoice::Sharp => "sharp",
                ModeChoice::Smooth => "smooth",
            }
            .to_string()),
            ("p-nodes", auto(self.quad.p_nodes, |v| v.to_string())),
            ("panel-width", auto(self.quad.panel_width, freq)),
            ("quad-omega-max", auto(self.quad.omega_max, freq)),
            ("zeta-scale", auto(self.quad.zeta_scale, freq)),
            ("rel-tol", auto(self.quad.rel_tol, |v| v.to_string())),
            ("cutoff-delta", auto(self.quad.cutoff_delta, |v| v.to_string())),
            ("output", self
                .output
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| "-".into())),
            ("format", match self.format {
                OutputFormat::Csv => "csv",
                OutputFormat::JsonLines => "json-lines",
            }
            .to_string()),
        ]
    }

    /// The settings as config-file text, including the command.
    pub fn to_config_text(&self) -> String {
        let mut text = format!("command = {}\n", self.command.name());
        for (k, v) in self.entries() {
            text.push_str(&format!("{k} = {v}\n"));
        }
        text
    }
}

/// The default parameter set as config-file text.
pub fn default_config_text() -> String {
    let mut text = String::from(
        "# Gold plates (Drude, omega_p = 9 eV, nu = 35 meV) at a = 100 nm with a\n\
         # transparency window between 7.5e14 and 9.4e15 rad/s.\n\
         command = pressure\n",
    );
    for k in KEYS {
        text.push_str(&format!("{} = {}\n", k.name, k.default));
    }
    text
}

/// Recovers config-file text from the comment header of an output file.
pub fn config_from_header(output: &str) -> String {
    output
        .lines()
        .take_while(|l| l.starts_with('#'))
        .filter_map(|l| l.strip_prefix("# "))
        .filter(|l| l.contains(" = "))
        .map(|l| format!("{l}\n"))
        .collect()
}
