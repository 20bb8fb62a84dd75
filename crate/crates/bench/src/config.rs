//! Experiment configuration.
//!
//! The document is a flat list of `key = value` lines. `#` starts a comment,
//! blank lines are ignored, lists are comma-separated. Every problem found
//! is reported, not just the first.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    CycleQuadratic,
    CustomQuadratic,
    LipschitzNorm,
    HolderPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    Unconstrained,
    Box,
    Simplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryKind {
    Euclidean,
    Entropy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MethodKind {
    Axgd,
    Agd,
    Gd,
    Implicit,
}

impl MethodKind {
    pub fn name(self) -> &'static str {
        match self {
            MethodKind::Axgd => "axgd",
            MethodKind::Agd => "agd",
            MethodKind::Gd => "gd",
            MethodKind::Implicit => "implicit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleChoice {
    Smooth,
    Hoelder,
    Lipschitz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapModeKind {
    OracleOptimum,
    RadiusBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleVariantChoice {
    /// Simplex on the simplex; drift when noiseless, regularized when noisy.
    Auto,
    Drift,
    Regularized,
    Simplex,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StartPoint {
    /// Uniform point on the simplex, otherwise the origin (clamped to a box).
    Default,
    Zero,
    Uniform,
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub problem: ProblemKind,
    pub n: usize,
    pub nu: Option<f64>,
    pub problem_seed: u64,
    pub cycle_variant: CycleVariantChoice,
    pub mu: f64,
    pub diagonal: Option<Vec<f64>>,
    pub linear: Option<Vec<f64>>,
    /// Lipschitz constant of the norm-distance instance.
    pub function_lipschitz: f64,
    pub domain: DomainKind,
    pub box_lower: f64,
    pub box_upper: f64,
    pub geometry: GeometryKind,
    pub methods: Vec<MethodKind>,
    pub schedule: ScheduleChoice,
    pub sigma: Option<f64>,
    pub smoothness: Option<f64>,
    pub hoelder_constant: Option<f64>,
    pub diameter: Option<f64>,
    pub c_override: Option<f64>,
    pub radius: Option<f64>,
    pub steps: usize,
    pub eps_eta: Vec<f64>,
    pub num_seeds: usize,
    pub base_seed: u64,
    pub gap_mode: GapModeKind,
    pub gap_radius: Option<f64>,
    pub x0: StartPoint,
    pub implicit_tol: f64,
    pub implicit_max_inner: usize,
    pub timing: bool,
    pub write_csv: bool,
    pub write_json: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            name: "run".into(),
            problem: ProblemKind::CycleQuadratic,
            n: 100,
            nu: None,
            problem_seed: 0,
            cycle_variant: CycleVariantChoice::Auto,
            mu: axgd_core::oracle::DEFAULT_REGULARIZATION,
            diagonal: None,
            linear: None,
            function_lipschitz: 1.0,
            domain: DomainKind::Simplex,
            box_lower: -1.0,
            box_upper: 1.0,
            geometry: GeometryKind::Entropy,
            methods: vec![MethodKind::Axgd, MethodKind::Agd, MethodKind::Gd],
            schedule: ScheduleChoice::Smooth,
            sigma: None,
            smoothness: None,
            hoelder_constant: None,
            diameter: None,
            c_override: None,
            radius: None,
            steps: 1000,
            eps_eta: vec![0.0],
            num_seeds: 1,
            base_seed: 0,
            gap_mode: GapModeKind::OracleOptimum,
            gap_radius: None,
            x0: StartPoint::Default,
            implicit_tol: axgd_core::solver::IMPLICIT_TOL,
            implicit_max_inner: axgd_core::solver::IMPLICIT_MAX_INNER,
            timing: false,
            write_csv: true,
            write_json: true,
        }
    }
}

pub const KEYS: &[&str] = &[
    "name",
    "problem",
    "n",
    "nu",
    "problem_seed",
    "cycle_variant",
    "mu",
    "diagonal",
    "linear",
    "lipschitz",
    "domain",
    "box_lower",
    "box_upper",
    "geometry",
    "methods",
    "schedule",
    "sigma",
    "L",
    "L_nu",
    "D",
    "c_override",
    "R",
    "steps",
    "eps_eta",
    "num_seeds",
    "base_seed",
    "gap_mode",
    "gap_radius",
    "x0",
    "implicit_tol",
    "implicit_max_inner",
    "timing",
    "csv",
    "json",
];

fn parse_enum<T: Copy>(value: &str, options: &[(&str, T)]) -> std::result::Result<T, String> {
    options
        .iter()
        .find(|(name, _)| *name == value)
        .map(|(_, v)| *v)
        .ok_or_else(|| {
            let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
            format!("expected one of {}, got `{value}`", names.join(" | "))
        })
}

fn parse_num<T: FromStr>(value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("cannot parse `{value}` as a number"))
}

fn parse_list<T: FromStr>(value: &str) -> std::result::Result<Vec<T>, String> {
    value
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(parse_num)
        .collect()
}

fn parse_bool(value: &str) -> std::result::Result<bool, String> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("expected true or false, got `{value}`")),
    }
}

/// Split the document into a key map, reporting malformed lines, unknown
/// keys and duplicates.
fn tokenize(text: &str, errors: &mut Vec<String>) -> BTreeMap<String, (usize, String)> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            errors.push(format!("line {line_no}: expected `key = value`"));
            continue;
        };
        let key = key.trim();
        let value = value.trim();
        if !KEYS.contains(&key) {
            errors.push(format!("line {line_no}: unknown key `{key}`"));
            continue;
        }
        if let Some((first, _)) = map.get(key) {
            errors.push(format!(
                "line {line_no}: duplicate key `{key}` (first set on line {first})"
            ));
            continue;
        }
        map.insert(key.to_string(), (line_no, value.to_string()));
    }
    map
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut errors = Vec::new();
    let map = tokenize(text, &mut errors);
    let mut cfg = ExperimentConfig::default();
    let mut geometry_set = false;

    for (key, (line, value)) in &map {
        let mut fail = |msg: String| errors.push(format!("line {line}: {key}: {msg}"));
        let v = value.as_str();
        match key.as_str() {
            "name" => {
                if v.is_empty()
                    || !v
                        .chars()
                        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
                {
                    fail(format!(
                        "must be a non-empty [A-Za-z0-9_-] identifier, got `{v}`"
                    ));
                } else {
                    cfg.name = v.to_string();
                }
            }
            "problem" => match parse_enum(
                v,
                &[
                    ("cycle-quadratic", ProblemKind::CycleQuadratic),
                    ("custom-quadratic", ProblemKind::CustomQuadratic),
                    ("lipschitz-norm", ProblemKind::LipschitzNorm),
                    ("holder-power", ProblemKind::HolderPower),
                ],
            ) {
                Ok(p) => cfg.problem = p,
                Err(e) => fail(e),
            },
            "n" => match parse_num(v) {
                Ok(n) => cfg.n = n,
                Err(e) => fail(e),
            },
            "nu" => match parse_num(v) {
                Ok(x) => cfg.nu = Some(x),
                Err(e) => fail(e),
            },
            "problem_seed" => match parse_num(v) {
                Ok(x) => cfg.problem_seed = x,
                Err(e) => fail(e),
            },
            "cycle_variant" => match parse_enum(
                v,
                &[
                    ("auto", CycleVariantChoice::Auto),
                    ("drift", CycleVariantChoice::Drift),
                    ("regularized", CycleVariantChoice::Regularized),
                    ("simplex", CycleVariantChoice::Simplex),
                ],
            ) {
                Ok(x) => cfg.cycle_variant = x,
                Err(e) => fail(e),
            },
            "mu" => match parse_num(v) {
                Ok(x) => cfg.mu = x,
                Err(e) => fail(e),
            },
            "diagonal" => match parse_list(v) {
                Ok(x) => cfg.diagonal = Some(x),
                Err(e) => fail(e),
            },
            "linear" => match parse_list(v) {
                Ok(x) => cfg.linear = Some(x),
                Err(e) => fail(e),
            },
            "lipschitz" => match parse_num(v) {
                Ok(x) => cfg.function_lipschitz = x,
                Err(e) => fail(e),
            },
            "domain" => match parse_enum(
                v,
                &[
                    ("unconstrained", DomainKind::Unconstrained),
                    ("box", DomainKind::Box),
                    ("simplex", DomainKind::Simplex),
                ],
            ) {
                Ok(x) => cfg.domain = x,
                Err(e) => fail(e),
            },
            "box_lower" => match parse_num(v) {
                Ok(x) => cfg.box_lower = x,
                Err(e) => fail(e),
            },
            "box_upper" => match parse_num(v) {
                Ok(x) => cfg.box_upper = x,
                Err(e) => fail(e),
            },
            "geometry" => match parse_enum(
                v,
                &[
                    ("euclidean", GeometryKind::Euclidean),
                    ("entropy", GeometryKind::Entropy),
                ],
            ) {
                Ok(x) => {
                    cfg.geometry = x;
                    geometry_set = true;
                }
                Err(e) => fail(e),
            },
            "methods" => {
                let mut methods = Vec::new();
                for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    match parse_enum(
                        item,
                        &[
                            ("axgd", MethodKind::Axgd),
                            ("agd", MethodKind::Agd),
                            ("gd", MethodKind::Gd),
                            ("implicit", MethodKind::Implicit),
                        ],
                    ) {
                        Ok(m) if methods.contains(&m) => fail(format!("`{item}` listed twice")),
                        Ok(m) => methods.push(m),
                        Err(e) => fail(e),
                    }
                }
                cfg.methods = methods;
            }
            "schedule" => match parse_enum(
                v,
                &[
                    ("smooth", ScheduleChoice::Smooth),
                    ("hoelder", ScheduleChoice::Hoelder),
                    ("holder", ScheduleChoice::Hoelder),
                    ("lipschitz", ScheduleChoice::Lipschitz),
                ],
            ) {
                Ok(x) => cfg.schedule = x,
                Err(e) => fail(e),
            },
            "sigma" => match parse_num(v) {
                Ok(x) => cfg.sigma = Some(x),
                Err(e) => fail(e),
            },
            "L" => match parse_num(v) {
                Ok(x) => cfg.smoothness = Some(x),
                Err(e) => fail(e),
            },
            "L_nu" => match parse_num(v) {
                Ok(x) => cfg.hoelder_constant = Some(x),
                Err(e) => fail(e),
            },
            "D" => match parse_num(v) {
                Ok(x) => cfg.diameter = Some(x),
                Err(e) => fail(e),
            },
            "c_override" => match parse_num(v) {
                Ok(x) => cfg.c_override = Some(x),
                Err(e) => fail(e),
            },
            "R" => match parse_num(v) {
                Ok(x) => cfg.radius = Some(x),
                Err(e) => fail(e),
            },
            "steps" => match parse_num(v) {
                Ok(x) => cfg.steps = x,
                Err(e) => fail(e),
            },
            "eps_eta" => match parse_list(v) {
                Ok(x) => cfg.eps_eta = x,
                Err(e) => fail(e),
            },
            "num_seeds" => match parse_num(v) {
                Ok(x) => cfg.num_seeds = x,
                Err(e) => fail(e),
            },
            "base_seed" => match parse_num(v) {
                Ok(x) => cfg.base_seed = x,
                Err(e) => fail(e),
            },
            "gap_mode" => match parse_enum(
                v,
                &[
                    ("oracle-optimum", GapModeKind::OracleOptimum),
                    ("radius-bound", GapModeKind::RadiusBound),
                ],
            ) {
                Ok(x) => cfg.gap_mode = x,
                Err(e) => fail(e),
            },
            "gap_radius" => match parse_num(v) {
                Ok(x) => cfg.gap_radius = Some(x),
                Err(e) => fail(e),
            },
            "x0" => {
                cfg.x0 = match v {
                    "default" => StartPoint::Default,
                    "zero" => StartPoint::Zero,
                    "uniform" => StartPoint::Uniform,
                    _ => match parse_list(v) {
                        Ok(x) => StartPoint::Explicit(x),
                        Err(e) => {
                            fail(format!("expected default | zero | uniform | a list ({e})"));
                            StartPoint::Default
                        }
                    },
                }
            }
            "implicit_tol" => match parse_num(v) {
                Ok(x) => cfg.implicit_tol = x,
                Err(e) => fail(e),
            },
            "implicit_max_inner" => match parse_num(v) {
                Ok(x) => cfg.implicit_max_inner = x,
                Err(e) => fail(e),
            },
            "timing" => match parse_bool(v) {
                Ok(x) => cfg.timing = x,
                Err(e) => fail(e),
            },
            "csv" => match parse_bool(v) {
                Ok(x) => cfg.write_csv = x,
                Err(e) => fail(e),
            },
            "json" => match parse_bool(v) {
                Ok(x) => cfg.write_json = x,
                Err(e) => fail(e),
            },
            _ => unreachable!("tokenize only admits known keys"),
        }
    }

    if !geometry_set {
        cfg.geometry = match cfg.domain {
            DomainKind::Simplex => GeometryKind::Entropy,
            _ => GeometryKind::Euclidean,
        };
    }
    errors.extend(validate(&cfg));
    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(BenchError::Config(errors))
    }
}

fn positive(errors: &mut Vec<String>, name: &str, v: Option<f64>) {
    if let Some(v) = v {
        if !(v > 0.0) || !v.is_finite() {
            errors.push(format!("{name}: must be positive and finite, got {v}"));
        }
    }
}

/// Cross-field constraints. Returns every violation.
pub fn validate(cfg: &ExperimentConfig) -> Vec<String> {
    let mut errors = Vec::new();
    if cfg.steps == 0 {
        errors.push("steps: must be at least 1".into());
    }
    if cfg.num_seeds == 0 {
        errors.push("num_seeds: must be at least 1".into());
    }
    if cfg.eps_eta.is_empty() {
        errors.push("eps_eta: list is empty".into());
    }
    if let Some(e) = cfg.eps_eta.iter().find(|e| !(**e >= 0.0) || !e.is_finite()) {
        errors.push(format!(
            "eps_eta: entries must be nonnegative and finite, got {e}"
        ));
    }
    if cfg.methods.is_empty() {
        errors.push("methods: list is empty".into());
    }
    if cfg.n == 0 {
        errors.push("n: must be at least 1".into());
    }
    if cfg.problem == ProblemKind::CycleQuadratic && cfg.n < 3 {
        errors.push(format!("n: the cycle instance needs n >= 3, got {}", cfg.n));
    }
    match (cfg.geometry, cfg.domain) {
        (GeometryKind::Entropy, DomainKind::Simplex) | (GeometryKind::Euclidean, _) => {}
        (GeometryKind::Entropy, _) => {
            errors.push("geometry: entropy requires domain = simplex".into())
        }
    }
    if cfg.domain == DomainKind::Box && !(cfg.box_lower <= cfg.box_upper) {
        errors.push(format!(
            "box_lower: must not exceed box_upper ({} > {})",
            cfg.box_lower, cfg.box_upper
        ));
    }
    if let Some(nu) = cfg.nu {
        if !(nu > 0.0 && nu <= 1.0) {
            errors.push(format!("nu: must lie in (0, 1], got {nu}"));
        }
    }
    if !(cfg.mu > 0.0) {
        errors.push(format!("mu: must be positive, got {}", cfg.mu));
    }
    positive(&mut errors, "lipschitz", Some(cfg.function_lipschitz));
    positive(&mut errors, "sigma", cfg.sigma);
    positive(&mut errors, "L", cfg.smoothness);
    positive(&mut errors, "L_nu", cfg.hoelder_constant);
    positive(&mut errors, "D", cfg.diameter);
    positive(&mut errors, "c_override", cfg.c_override);
    positive(&mut errors, "R", cfg.radius);
    if !(cfg.implicit_tol >= 0.0) {
        errors.push(format!(
            "implicit_tol: must be nonnegative, got {}",
            cfg.implicit_tol
        ));
    }
    if cfg.implicit_max_inner < 2 {
        errors.push(format!(
            "implicit_max_inner: must be at least 2, got {}",
            cfg.implicit_max_inner
        ));
    }
    match cfg.gap_mode {
        GapModeKind::RadiusBound => match cfg.gap_radius {
            None => errors.push("gap_radius: required when gap_mode = radius-bound".into()),
            Some(r) if !(r >= 0.0) || !r.is_finite() => {
                errors.push(format!("gap_radius: must be nonnegative, got {r}"))
            }
            _ => {}
        },
        GapModeKind::OracleOptimum => {
            if cfg.gap_radius.is_some() {
                errors.push("gap_radius: only used with gap_mode = radius-bound".into());
            }
        }
    }
    let custom = cfg.problem == ProblemKind::CustomQuadratic;
    for (name, list) in [("diagonal", &cfg.diagonal), ("linear", &cfg.linear)] {
        if let Some(list) = list {
            if !custom {
                errors.push(format!("{name}: only used with problem = custom-quadratic"));
            } else if list.len() != cfg.n {
                errors.push(format!(
                    "{name}: expected {} entries, got {}",
                    cfg.n,
                    list.len()
                ));
            }
        }
    }
    if let Some(d) = &cfg.diagonal {
        if d.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            errors.push("diagonal: entries must be nonnegative and finite".into());
        }
    }
    if cfg.cycle_variant != CycleVariantChoice::Auto && cfg.problem != ProblemKind::CycleQuadratic {
        errors.push("cycle_variant: only used with problem = cycle-quadratic".into());
    }
    if cfg.problem == ProblemKind::CycleQuadratic {
        let on_simplex = cfg.domain == DomainKind::Simplex;
        match cfg.cycle_variant {
            CycleVariantChoice::Simplex if !on_simplex => {
                errors.push("cycle_variant: simplex requires domain = simplex".into())
            }
            CycleVariantChoice::Drift | CycleVariantChoice::Regularized if on_simplex => errors
                .push("cycle_variant: drift and regularized are unconstrained variants".into()),
            CycleVariantChoice::Drift if cfg.domain == DomainKind::Box => errors.push(
                "cycle_variant: drift is unbounded only without constraints; use auto".into(),
            ),
            _ => {}
        }
    }
    if let StartPoint::Explicit(x) = &cfg.x0 {
        if x.len() != cfg.n {
            errors.push(format!("x0: expected {} entries, got {}", cfg.n, x.len()));
        }
    }
    let smooth_problem = match cfg.problem {
        ProblemKind::CycleQuadratic | ProblemKind::CustomQuadratic => true,
        ProblemKind::HolderPower => cfg.nu.unwrap_or(DEFAULT_NU) == 1.0,
        ProblemKind::LipschitzNorm => false,
    };
    if !smooth_problem && cfg.smoothness.is_none() {
        if cfg.schedule == ScheduleChoice::Smooth {
            errors.push("schedule: smooth needs L, which this problem does not provide".into());
        }
        for m in &cfg.methods {
            if matches!(m, MethodKind::Agd | MethodKind::Gd) {
                errors.push(format!(
                    "methods: {} needs L, which this problem does not provide",
                    m.name()
                ));
            }
        }
    }
    errors
}

/// Hölder exponent of the radial power instance when `nu` is not set.
pub const DEFAULT_NU: f64 = 0.5;

/// The simplex benchmark: cycle Laplacian with n = 100, σ = L = 4.
pub const REFERENCE_CONFIG: &str = "\
# cycle-Laplacian quadratic on the unit simplex
problem = cycle-quadratic
n = 100
domain = simplex
geometry = entropy
methods = axgd, agd, gd
schedule = smooth
sigma = 4
L = 4
steps = 1000
";

#[cfg(test)]
mod tests {
    use super::*;

    fn errors_of(text: &str) -> Vec<String> {
        match parse_config(text) {
            Err(BenchError::Config(e)) => e,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn paper_default_parses() {
        let cfg = parse_config(REFERENCE_CONFIG).unwrap();
        assert_eq!(cfg.n, 100);
        assert_eq!(cfg.sigma, Some(4.0));
        assert_eq!(cfg.smoothness, Some(4.0));
        assert_eq!(cfg.domain, DomainKind::Simplex);
        assert_eq!(cfg.geometry, GeometryKind::Entropy);
        assert_eq!(cfg.steps, 1000);
    }

    #[test]
    fn zero_steps_is_named() {
        let e = errors_of("steps = 0\n");
        assert!(e.iter().any(|m| m.starts_with("steps")), "{e:?}");
    }

    #[test]
    fn entropy_needs_simplex() {
        let e = errors_of("geometry = entropy\ndomain = unconstrained\n");
        assert!(e
            .iter()
            .any(|m| m.contains("entropy requires domain = simplex")));
    }

    #[test]
    fn all_violations_are_listed() {
        let e = errors_of(
            "steps = 0\nnum_seeds = 0\nbogus = 1\neps_eta = 0.1, -1\nmethods = axgd, sgd\n",
        );
        assert!(e.iter().any(|m| m.contains("unknown key `bogus`")));
        assert!(e.iter().any(|m| m.starts_with("steps")));
        assert!(e.iter().any(|m| m.starts_with("num_seeds")));
        assert!(e.iter().any(|m| m.starts_with("eps_eta")));
        assert!(e.iter().any(|m| m.contains("`sgd`")));
    }

    #[test]
    fn comments_lists_and_duplicates() {
        let cfg =
            parse_config("# header\nmethods = axgd ,agd # trailing\n\neps_eta = 0.1,0.01, 0.001\n")
                .unwrap();
        assert_eq!(cfg.methods, vec![MethodKind::Axgd, MethodKind::Agd]);
        assert_eq!(cfg.eps_eta, vec![0.1, 0.01, 0.001]);
        let e = errors_of("steps = 5\nsteps = 6\n");
        assert!(e[0].contains("duplicate"));
        let e = errors_of("just a line\n");
        assert!(e[0].contains("key = value"));
    }

    #[test]
    fn geometry_follows_domain_by_default() {
        let cfg = parse_config("domain = unconstrained\n").unwrap();
        assert_eq!(cfg.geometry, GeometryKind::Euclidean);
        let cfg = parse_config("domain = simplex\ngeometry = euclidean\n").unwrap();
        assert_eq!(cfg.geometry, GeometryKind::Euclidean);
        let e = errors_of("domain = box\ngeometry = entropy\n");
        assert!(e.iter().any(|m| m.contains("entropy requires")));
    }

    #[test]
    fn nonsmooth_problem_rejects_smooth_only_pieces() {
        let e = errors_of("problem = lipschitz-norm\ndomain = unconstrained\nmethods = axgd, gd\n");
        assert!(e.iter().any(|m| m.contains("schedule: smooth needs L")));
        assert!(e.iter().any(|m| m.contains("gd needs L")));
        assert!(parse_config("problem = lipschitz-norm\ndomain = unconstrained\nmethods = axgd\nschedule = lipschitz\n").is_ok());
    }

    #[test]
    fn radius_mode_needs_radius() {
        let e = errors_of("gap_mode = radius-bound\n");
        assert!(e[0].starts_with("gap_radius"));
        assert!(parse_config("gap_mode = radius-bound\ngap_radius = 3\n").is_ok());
    }
}
