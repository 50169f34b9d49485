//! Scenario configuration: line-based `key = value` text with bracketed
//! sections and `#` comments.
//!
//! Parsing is strict in both directions: unknown sections or keys are
//! rejected with their line number, and each scenario kind must carry
//! exactly the sections it needs. Semantic constraints (sign conditions,
//! step-vs-horizon ordering, sweep axis domains) are checked here so a
//! [`Scenario`] handed to the runners is valid by construction.

use anyhow::{bail, Context, Result};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;
use velarde::spectral::ModelVariant;

/// Which pipeline a scenario drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Exact certificate chain: cascade checks, induction steps, series verdict.
    Certify,
    /// One trajectory with full monitor series.
    Simulate,
    /// A family of trajectories along one parameter axis.
    Sweep,
    /// Bounded-regime regression against a growth envelope.
    RegressGlobal,
}

impl Kind {
    pub fn word(self) -> &'static str {
        match self {
            Kind::Certify => "certify",
            Kind::Simulate => "simulate",
            Kind::Sweep => "sweep",
            Kind::RegressGlobal => "regress_global",
        }
    }

    fn from_word(word: &str) -> Option<Kind> {
        match word {
            "certify" => Some(Kind::Certify),
            "simulate" => Some(Kind::Simulate),
            "sweep" => Some(Kind::Sweep),
            "regress_global" => Some(Kind::RegressGlobal),
            _ => None,
        }
    }
}

/// Parameters of the exact certificate pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifySettings {
    /// Deepest cascade level to construct and check.
    pub n_max: u32,
    /// Sobolev index for the divergence threshold, in (-1, 1].
    pub s: f64,
    /// log₂ of the squared datum amplitude tested against the threshold.
    pub log2_eta_sq: f64,
    /// Forcing coefficient, must be positive.
    pub gamma1: f64,
    /// Damping coefficient, must be negative.
    pub gamma2: f64,
    /// Frequency samples per annulus in the induction step, at least 3.
    pub samples: usize,
}

/// Grid, model, and stepping parameters shared by the trajectory kinds.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicsSettings {
    pub n_modes: usize,
    pub half_width: f64,
    pub dealias_fraction: f64,
    pub alpha: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub variant: ModelVariant,
    pub eta: f64,
    pub t_end: f64,
    pub dt: f64,
    pub s: f64,
    pub blowup_factor: f64,
    pub picard_iters: usize,
}

/// Parameter axis a sweep walks along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Eta,
    Alpha,
    Gamma1,
    Gamma2,
    Dt,
}

impl SweepParam {
    pub fn word(self) -> &'static str {
        match self {
            SweepParam::Eta => "eta",
            SweepParam::Alpha => "alpha",
            SweepParam::Gamma1 => "gamma1",
            SweepParam::Gamma2 => "gamma2",
            SweepParam::Dt => "dt",
        }
    }

    fn from_word(word: &str) -> Option<SweepParam> {
        match word {
            "eta" => Some(SweepParam::Eta),
            "alpha" => Some(SweepParam::Alpha),
            "gamma1" => Some(SweepParam::Gamma1),
            "gamma2" => Some(SweepParam::Gamma2),
            "dt" => Some(SweepParam::Dt),
            _ => None,
        }
    }
}

/// One sweep axis: the parameter name and the values it takes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

/// A validated scenario. Exactly the optional blocks required by `kind`
/// are populated: certificate settings for `certify`, physics for the
/// trajectory kinds, and the axis only for `sweep`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub kind: Kind,
    pub cert: Option<CertifySettings>,
    pub sim: Option<PhysicsSettings>,
    pub sweep_axis: Option<SweepAxis>,
    pub output_dir: PathBuf,
}

/// Known sections and the keys each may carry.
const SECTIONS: &[(&str, &[&str])] = &[
    ("scenario", &["kind"]),
    ("certify", &["n_max", "s", "log2_eta_sq", "gamma1", "gamma2", "samples"]),
    ("grid", &["n_modes", "half_width", "dealias_fraction"]),
    ("model", &["alpha", "gamma1", "gamma2", "variant"]),
    ("sim", &["eta", "t_end", "dt", "s", "blowup_factor", "picard_iters"]),
    ("sweep", &["param", "values"]),
    ("output", &["dir"]),
];

fn section_keys(name: &str) -> Option<&'static [&'static str]> {
    SECTIONS
        .iter()
        .find(|(s, _)| *s == name)
        .map(|(_, keys)| *keys)
}

type RawSection = BTreeMap<String, (String, usize)>;

/// First pass: structure only. Produces section → key → (value, line)
/// and rejects anything outside the known vocabulary with its line number.
fn raw_parse(text: &str) -> Result<BTreeMap<String, RawSection>> {
    let mut sections: BTreeMap<String, RawSection> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            let name = name.trim();
            if section_keys(name).is_none() {
                bail!("config line {line_no}: unknown section [{name}]");
            }
            if sections.contains_key(name) {
                bail!("config line {line_no}: section [{name}] appears twice");
            }
            sections.insert(name.to_string(), BTreeMap::new());
            current = Some(name.to_string());
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            bail!("config line {line_no}: expected `key = value` or a [section] header");
        };
        let key = key.trim();
        let value = value.trim();
        let Some(section) = current.as_deref() else {
            bail!("config line {line_no}: key `{key}` appears before any [section] header");
        };
        let known = section_keys(section).expect("current section was validated");
        if !known.contains(&key) {
            bail!("config line {line_no}: unknown key `{key}` in [{section}]");
        }
        let entries = sections.get_mut(section).expect("section exists");
        if entries.contains_key(key) {
            bail!("config line {line_no}: key `{key}` already set in [{section}]");
        }
        entries.insert(key.to_string(), (value.to_string(), line_no));
    }
    Ok(sections)
}

/// Typed access into one raw section, with line numbers in every error.
struct SectionView<'a> {
    name: &'a str,
    entries: &'a RawSection,
}

impl<'a> SectionView<'a> {
    fn raw(&self, key: &str) -> Result<(&'a str, usize)> {
        match self.entries.get(key) {
            Some((value, line)) => Ok((value.as_str(), *line)),
            None => bail!("missing key `{key}` in [{}]", self.name),
        }
    }

    fn f64(&self, key: &str) -> Result<f64> {
        let (value, line) = self.raw(key)?;
        value
            .parse::<f64>()
            .with_context(|| format!("config line {line}: `{key}` is not a number: `{value}`"))
    }

    fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        if self.entries.contains_key(key) {
            self.f64(key)
        } else {
            Ok(default)
        }
    }

    fn usize(&self, key: &str) -> Result<usize> {
        let (value, line) = self.raw(key)?;
        value.parse::<usize>().with_context(|| {
            format!("config line {line}: `{key}` is not a non-negative integer: `{value}`")
        })
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        if self.entries.contains_key(key) {
            self.usize(key)
        } else {
            Ok(default)
        }
    }

    /// Length with an optional `pi` suffix: `16pi` means 16π.
    fn length(&self, key: &str) -> Result<f64> {
        let (value, line) = self.raw(key)?;
        if let Some(mantissa) = value.strip_suffix("pi") {
            let mantissa = mantissa.trim();
            let factor = if mantissa.is_empty() {
                1.0
            } else {
                mantissa.parse::<f64>().with_context(|| {
                    format!("config line {line}: `{key}` has a malformed pi multiple: `{value}`")
                })?
            };
            return Ok(factor * PI);
        }
        value
            .parse::<f64>()
            .with_context(|| format!("config line {line}: `{key}` is not a length: `{value}`"))
    }
}

fn view<'a>(
    sections: &'a BTreeMap<String, RawSection>,
    kind: Kind,
    name: &'a str,
) -> Result<SectionView<'a>> {
    match sections.get(name) {
        Some(entries) => Ok(SectionView { name, entries }),
        None => bail!(
            "scenario kind {} requires a [{name}] section",
            kind.word()
        ),
    }
}

fn sections_for(kind: Kind) -> &'static [&'static str] {
    match kind {
        Kind::Certify => &["scenario", "certify", "output"],
        Kind::Simulate | Kind::RegressGlobal => &["scenario", "grid", "model", "sim", "output"],
        Kind::Sweep => &["scenario", "grid", "model", "sim", "sweep", "output"],
    }
}

fn parse_certify(sections: &BTreeMap<String, RawSection>) -> Result<CertifySettings> {
    let sec = view(sections, Kind::Certify, "certify")?;
    let n_max_raw = sec.usize("n_max")?;
    let n_max = u32::try_from(n_max_raw).unwrap_or(u32::MAX);
    let settings = CertifySettings {
        n_max,
        s: sec.f64("s")?,
        log2_eta_sq: sec.f64("log2_eta_sq")?,
        gamma1: sec.f64("gamma1")?,
        gamma2: sec.f64("gamma2")?,
        samples: sec.usize("samples")?,
    };
    if settings.n_max < 1 || settings.n_max > 8 {
        bail!(
            "certify depth n_max must lie in 1..=8 (cascade construction budget), got {}",
            n_max_raw
        );
    }
    if !(settings.s.is_finite() && settings.s > -1.0 && settings.s <= 1.0) {
        bail!(
            "certify Sobolev index s must lie in (-1, 1], got {}",
            settings.s
        );
    }
    if !settings.log2_eta_sq.is_finite() {
        bail!("certify log2_eta_sq must be finite, got {}", settings.log2_eta_sq);
    }
    if !(settings.gamma2 < 0.0 && 0.0 < settings.gamma1) {
        bail!(
            "certify requires the sign condition gamma2 < 0 < gamma1, got gamma1 = {}, gamma2 = {}",
            settings.gamma1,
            settings.gamma2
        );
    }
    if settings.samples < 3 {
        bail!(
            "certify needs at least 3 frequency samples per annulus, got {}",
            settings.samples
        );
    }
    Ok(settings)
}

fn parse_physics(sections: &BTreeMap<String, RawSection>, kind: Kind) -> Result<PhysicsSettings> {
    let grid = view(sections, kind, "grid")?;
    let model = view(sections, kind, "model")?;
    let sim = view(sections, kind, "sim")?;
    let variant = match model.entries.get("variant") {
        None => ModelVariant::Nonlocal,
        Some((word, line)) => match word.as_str() {
            "nonlocal" => ModelVariant::Nonlocal,
            "local_dispersive" => ModelVariant::LocalDispersive,
            other => bail!(
                "config line {line}: variant must be `nonlocal` or `local_dispersive`, got `{other}`"
            ),
        },
    };
    let settings = PhysicsSettings {
        n_modes: grid.usize("n_modes")?,
        half_width: grid.length("half_width")?,
        dealias_fraction: grid.f64_or("dealias_fraction", 2.0 / 3.0)?,
        alpha: model.f64("alpha")?,
        gamma1: model.f64("gamma1")?,
        gamma2: model.f64("gamma2")?,
        variant,
        eta: sim.f64("eta")?,
        t_end: sim.f64("t_end")?,
        dt: sim.f64("dt")?,
        s: sim.f64_or("s", 1.0)?,
        blowup_factor: sim.f64_or("blowup_factor", 100.0)?,
        picard_iters: sim.usize_or("picard_iters", 0)?,
    };
    if settings.n_modes < 16 || settings.n_modes % 2 != 0 {
        bail!(
            "grid n_modes must be even and at least 16, got {}",
            settings.n_modes
        );
    }
    if !(settings.half_width.is_finite() && settings.half_width > 0.0) {
        bail!("grid half_width must be positive, got {}", settings.half_width);
    }
    if !(settings.dealias_fraction > 0.0 && settings.dealias_fraction <= 1.0) {
        bail!(
            "grid dealias_fraction must lie in (0, 1], got {}",
            settings.dealias_fraction
        );
    }
    if !(settings.alpha.is_finite() && settings.alpha >= 0.0) {
        bail!("model alpha must be non-negative, got {}", settings.alpha);
    }
    if !settings.gamma1.is_finite() || !settings.gamma2.is_finite() {
        bail!(
            "model coefficients must be finite, got gamma1 = {}, gamma2 = {}",
            settings.gamma1,
            settings.gamma2
        );
    }
    if !(settings.eta.is_finite() && settings.eta > 0.0) {
        bail!("sim eta must be positive, got {}", settings.eta);
    }
    if !(settings.dt.is_finite() && settings.dt > 0.0) {
        bail!("sim dt must be positive, got {}", settings.dt);
    }
    if !(settings.t_end.is_finite() && settings.t_end > settings.dt) {
        bail!(
            "sim horizon must satisfy dt < t_end, got dt = {}, t_end = {}",
            settings.dt,
            settings.t_end
        );
    }
    if !(settings.s.is_finite() && settings.s > -1.0 && settings.s <= 1.0) {
        bail!("sim Sobolev index s must lie in (-1, 1], got {}", settings.s);
    }
    if !(settings.blowup_factor.is_finite() && settings.blowup_factor > 1.0) {
        bail!(
            "sim blowup_factor must exceed 1, got {}",
            settings.blowup_factor
        );
    }
    if kind == Kind::RegressGlobal
        && !(settings.gamma2 == settings.gamma1 / 2.0 || settings.gamma2 == 0.0)
    {
        bail!(
            "regress_global covers the bounded regimes gamma2 = gamma1/2 and gamma2 = 0, \
             got gamma1 = {}, gamma2 = {}",
            settings.gamma1,
            settings.gamma2
        );
    }
    Ok(settings)
}

fn parse_sweep_axis(
    sections: &BTreeMap<String, RawSection>,
    physics: &PhysicsSettings,
) -> Result<SweepAxis> {
    let sec = view(sections, Kind::Sweep, "sweep")?;
    let (word, line) = sec.raw("param")?;
    let Some(param) = SweepParam::from_word(word) else {
        bail!(
            "config line {line}: sweep param must be one of eta, alpha, gamma1, gamma2, dt; got `{word}`"
        );
    };
    let (list, list_line) = sec.raw("values")?;
    let mut values = Vec::new();
    for piece in list.split(',') {
        let piece = piece.trim();
        let value = piece.parse::<f64>().with_context(|| {
            format!("config line {list_line}: sweep value is not a number: `{piece}`")
        })?;
        values.push(value);
    }
    if values.is_empty() {
        bail!("config line {list_line}: sweep values list is empty");
    }
    for &value in &values {
        let ok = match param {
            SweepParam::Eta => value.is_finite() && value > 0.0,
            SweepParam::Alpha => value.is_finite() && value >= 0.0,
            SweepParam::Gamma1 | SweepParam::Gamma2 => value.is_finite(),
            SweepParam::Dt => value.is_finite() && value > 0.0 && value < physics.t_end,
        };
        if !ok {
            bail!(
                "sweep value {} is outside the valid domain of {}",
                value,
                param.word()
            );
        }
    }
    Ok(SweepAxis { param, values })
}

/// Parses and validates one scenario from configuration text.
pub fn parse_config(text: &str) -> Result<Scenario> {
    let sections = raw_parse(text)?;
    let scenario = view2(&sections, "scenario")?;
    let (kind_word, kind_line) = scenario.raw("kind")?;
    let Some(kind) = Kind::from_word(kind_word) else {
        bail!(
            "config line {kind_line}: kind must be one of certify, simulate, sweep, regress_global; got `{kind_word}`"
        );
    };
    let allowed = sections_for(kind);
    for name in sections.keys() {
        if !allowed.contains(&name.as_str()) {
            bail!(
                "section [{name}] is not part of a {} scenario",
                kind.word()
            );
        }
    }
    let output = view(&sections, kind, "output")?;
    let (dir, _) = output.raw("dir")?;
    if dir.is_empty() {
        bail!("output dir must not be empty");
    }
    let output_dir = PathBuf::from(dir);
    let (cert, sim, sweep_axis) = match kind {
        Kind::Certify => (Some(parse_certify(&sections)?), None, None),
        Kind::Simulate | Kind::RegressGlobal => {
            (None, Some(parse_physics(&sections, kind)?), None)
        }
        Kind::Sweep => {
            let physics = parse_physics(&sections, kind)?;
            let axis = parse_sweep_axis(&sections, &physics)?;
            (None, Some(physics), Some(axis))
        }
    };
    Ok(Scenario {
        kind,
        cert,
        sim,
        sweep_axis,
        output_dir,
    })
}

fn view2<'a>(sections: &'a BTreeMap<String, RawSection>, name: &'a str) -> Result<SectionView<'a>> {
    match sections.get(name) {
        Some(entries) => Ok(SectionView { name, entries }),
        None => bail!("configuration needs a [{name}] section with a kind"),
    }
}

/// Shortest round-trip decimal for a float; `parse::<f64>` recovers the
/// exact bit pattern, which keeps serialized scenarios loss-free.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

/// Canonical text form: fixed section and key order, shortest round-trip
/// floats. `parse_config(serialize(s)) == s` for every valid scenario.
pub fn serialize(scenario: &Scenario) -> String {
    let mut out = String::new();
    out.push_str("[scenario]\n");
    out.push_str(&format!("kind = {}\n", scenario.kind.word()));
    if let Some(cert) = &scenario.cert {
        out.push_str("\n[certify]\n");
        out.push_str(&format!("n_max = {}\n", cert.n_max));
        out.push_str(&format!("s = {}\n", fmt_f64(cert.s)));
        out.push_str(&format!("log2_eta_sq = {}\n", fmt_f64(cert.log2_eta_sq)));
        out.push_str(&format!("gamma1 = {}\n", fmt_f64(cert.gamma1)));
        out.push_str(&format!("gamma2 = {}\n", fmt_f64(cert.gamma2)));
        out.push_str(&format!("samples = {}\n", cert.samples));
    }
    if let Some(sim) = &scenario.sim {
        out.push_str("\n[grid]\n");
        out.push_str(&format!("n_modes = {}\n", sim.n_modes));
        out.push_str(&format!("half_width = {}\n", fmt_f64(sim.half_width)));
        out.push_str(&format!(
            "dealias_fraction = {}\n",
            fmt_f64(sim.dealias_fraction)
        ));
        out.push_str("\n[model]\n");
        out.push_str(&format!("alpha = {}\n", fmt_f64(sim.alpha)));
        out.push_str(&format!("gamma1 = {}\n", fmt_f64(sim.gamma1)));
        out.push_str(&format!("gamma2 = {}\n", fmt_f64(sim.gamma2)));
        let variant = match sim.variant {
            ModelVariant::Nonlocal => "nonlocal",
            ModelVariant::LocalDispersive => "local_dispersive",
        };
        out.push_str(&format!("variant = {variant}\n"));
        out.push_str("\n[sim]\n");
        out.push_str(&format!("eta = {}\n", fmt_f64(sim.eta)));
        out.push_str(&format!("t_end = {}\n", fmt_f64(sim.t_end)));
        out.push_str(&format!("dt = {}\n", fmt_f64(sim.dt)));
        out.push_str(&format!("s = {}\n", fmt_f64(sim.s)));
        out.push_str(&format!("blowup_factor = {}\n", fmt_f64(sim.blowup_factor)));
        out.push_str(&format!("picard_iters = {}\n", sim.picard_iters));
    }
    if let Some(axis) = &scenario.sweep_axis {
        out.push_str("\n[sweep]\n");
        out.push_str(&format!("param = {}\n", axis.param.word()));
        let values: Vec<String> = axis.values.iter().map(|v| fmt_f64(*v)).collect();
        out.push_str(&format!("values = {}\n", values.join(", ")));
    }
    out.push_str("\n[output]\n");
    out.push_str(&format!("dir = {}\n", scenario.output_dir.display()));
    out
}

/// Physical parameters of the scenario, one `name = value` string per
/// line, for the run header echo and the report preamble.
pub fn header_lines(scenario: &Scenario) -> Vec<String> {
    let mut lines = vec![format!("kind = {}", scenario.kind.word())];
    if let Some(cert) = &scenario.cert {
        lines.push(format!("n_max = {}", cert.n_max));
        lines.push(format!("s = {}", fmt_f64(cert.s)));
        lines.push(format!("log2_eta_sq = {}", fmt_f64(cert.log2_eta_sq)));
        lines.push(format!("gamma1 = {}", fmt_f64(cert.gamma1)));
        lines.push(format!("gamma2 = {}", fmt_f64(cert.gamma2)));
        lines.push(format!("samples = {}", cert.samples));
    }
    if let Some(sim) = &scenario.sim {
        lines.push(format!("n_modes = {}", sim.n_modes));
        lines.push(format!("half_width = {}", fmt_f64(sim.half_width)));
        lines.push(format!("dealias_fraction = {}", fmt_f64(sim.dealias_fraction)));
        lines.push(format!("alpha = {}", fmt_f64(sim.alpha)));
        lines.push(format!("gamma1 = {}", fmt_f64(sim.gamma1)));
        lines.push(format!("gamma2 = {}", fmt_f64(sim.gamma2)));
        let variant = match sim.variant {
            ModelVariant::Nonlocal => "nonlocal",
            ModelVariant::LocalDispersive => "local_dispersive",
        };
        lines.push(format!("variant = {variant}"));
        lines.push(format!("eta = {}", fmt_f64(sim.eta)));
        lines.push(format!("t_end = {}", fmt_f64(sim.t_end)));
        lines.push(format!("dt = {}", fmt_f64(sim.dt)));
        lines.push(format!("s = {}", fmt_f64(sim.s)));
        lines.push(format!("blowup_factor = {}", fmt_f64(sim.blowup_factor)));
        lines.push(format!("picard_iters = {}", sim.picard_iters));
    }
    if let Some(axis) = &scenario.sweep_axis {
        lines.push(format!("sweep_param = {}", axis.param.word()));
        let values: Vec<String> = axis.values.iter().map(|v| fmt_f64(*v)).collect();
        lines.push(format!("sweep_values = {}", values.join(", ")));
    }
    lines
}
