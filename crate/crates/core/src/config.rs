//! Run configuration files: flat `key = value` lines under bracketed
//! section headers, `#` comments, no nesting. A `[schedule]` section may
//! repeat; each occurrence appends one schedule (runs use exactly one,
//! comparisons at least two). Matrices live in separate files referenced
//! by path, resolved against the config file's directory.
//!
//! ```text
//! [problem]
//! kind = toy
//!
//! [schedule]
//! kind = reversed_harmonic
//!
//! [run]
//! iters = 500
//! seed = 7
//!
//! [init]
//! kind = random
//! radius = 5
//!
//! [output]
//! trace = trace.csv
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSpec {
    Toy,
    Lp {
        source: LpSource,
    },
    LsL1 {
        source: LsL1Source,
        gamma: f64,
    },
    MatrixGame {
        payoff: Option<PathBuf>,
    },
    Markowitz {
        files: Option<MarkowitzFiles>,
        eta: f64,
        gamma: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpSource {
    Files { a: PathBuf, b: PathBuf, c: PathBuf },
    Random { m: usize, n: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum LsL1Source {
    Files { a: PathBuf, b: PathBuf },
    Random { m: usize, n: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkowitzFiles {
    pub mu: PathBuf,
    pub sigma: PathBuf,
    pub rho: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleSpec {
    pub kind: ScheduleKindSpec,
    pub reverse: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleKindSpec {
    Constant {
        alpha: f64,
    },
    /// `horizon = None` means "use the run's iteration count".
    ReversedHarmonic {
        horizon: Option<usize>,
    },
    Harmonic,
    Custom {
        steps: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitSpec {
    Zero,
    Random { radius: f64 },
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub trace: PathBuf,
    pub report: PathBuf,
    pub summary: PathBuf,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            trace: PathBuf::from("trace.csv"),
            report: PathBuf::from("report.csv"),
            summary: PathBuf::from("summary.csv"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub problem: ProblemSpec,
    pub schedules: Vec<ScheduleSpec>,
    pub iters: usize,
    pub seed: u64,
    pub record_every: usize,
    pub diagnostics: bool,
    pub eps: f64,
    pub reference_value: Option<f64>,
    pub init: InitSpec,
    pub output: OutputSpec,
}

struct Section {
    name: String,
    line: usize,
    entries: Vec<(String, String)>,
}

fn split_sections(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| {
                Error::Parse(format!("line {}: unterminated section header", idx + 1))
            })?;
            sections.push(Section {
                name: name.trim().to_string(),
                line: idx + 1,
                entries: Vec::new(),
            });
        } else if let Some((k, v)) = line.split_once('=') {
            let section = sections.last_mut().ok_or_else(|| {
                Error::Parse(format!("line {}: key outside any section", idx + 1))
            })?;
            section
                .entries
                .push((k.trim().to_string(), v.trim().to_string()));
        } else {
            return Err(Error::Parse(format!(
                "line {}: expected 'key = value'",
                idx + 1
            )));
        }
    }
    Ok(sections)
}

struct KeyMap {
    section: String,
    map: BTreeMap<String, String>,
}

impl KeyMap {
    fn from_section(s: &Section) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in &s.entries {
            if map.insert(k.clone(), v.clone()).is_some() {
                return Err(Error::Parse(format!("[{}]: duplicate key '{}'", s.name, k)));
            }
        }
        Ok(Self {
            section: s.name.clone(),
            map,
        })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn take_parsed<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.take(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                Error::Parse(format!(
                    "[{}]: bad value for '{}': '{}'",
                    self.section, key, raw
                ))
            }),
        }
    }

    fn require<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        self.take_parsed(key)?.ok_or_else(|| {
            Error::Parse(format!(
                "[{}]: missing required key '{}'",
                self.section, key
            ))
        })
    }

    fn finish(self) -> Result<()> {
        if let Some(k) = self.map.keys().next() {
            return Err(Error::Parse(format!(
                "[{}]: unknown key '{}'",
                self.section, k
            )));
        }
        Ok(())
    }
}

fn parse_bool(section: &str, key: &str, raw: &str) -> Result<bool> {
    match raw {
        "on" | "true" | "yes" => Ok(true),
        "off" | "false" | "no" => Ok(false),
        _ => Err(Error::Parse(format!(
            "[{section}]: bad boolean for '{key}': '{raw}'"
        ))),
    }
}

fn parse_problem(section: &Section) -> Result<ProblemSpec> {
    let mut keys = KeyMap::from_section(section)?;
    let kind: String = keys.require("kind")?;
    let spec = match kind.as_str() {
        "toy" => ProblemSpec::Toy,
        "lp" => {
            let a = keys.take("a");
            let b = keys.take("b");
            let c = keys.take("c");
            let source = match (a, b, c) {
                (Some(a), Some(b), Some(c)) => LpSource::Files {
                    a: a.into(),
                    b: b.into(),
                    c: c.into(),
                },
                (None, None, None) => LpSource::Random {
                    m: keys.require("m")?,
                    n: keys.require("n")?,
                    seed: keys.take_parsed("instance_seed")?.unwrap_or(0),
                },
                _ => {
                    return Err(Error::Parse(
                        "[problem]: lp needs either all of a/b/c or none (random)".into(),
                    ))
                }
            };
            ProblemSpec::Lp { source }
        }
        "lsl1" => {
            let gamma = keys.take_parsed("gamma")?.unwrap_or(1.0);
            let a = keys.take("a");
            let b = keys.take("b");
            let source = match (a, b) {
                (Some(a), Some(b)) => LsL1Source::Files {
                    a: a.into(),
                    b: b.into(),
                },
                (None, None) => LsL1Source::Random {
                    m: keys.require("m")?,
                    n: keys.require("n")?,
                    seed: keys.take_parsed("instance_seed")?.unwrap_or(0),
                },
                _ => {
                    return Err(Error::Parse(
                        "[problem]: lsl1 needs either both a/b or neither (random)".into(),
                    ))
                }
            };
            ProblemSpec::LsL1 { source, gamma }
        }
        "matrix_game" => ProblemSpec::MatrixGame {
            payoff: keys.take("payoff").map(PathBuf::from),
        },
        "markowitz" => {
            let eta = keys.take_parsed("eta")?.unwrap_or(0.5);
            let gamma = keys.take_parsed("gamma")?.unwrap_or(1.0);
            let mu = keys.take("mu");
            let sigma = keys.take("sigma");
            let rho = keys.take("rho");
            let files = match (mu, sigma, rho) {
                (Some(mu), Some(sigma), Some(rho)) => Some(MarkowitzFiles {
                    mu: mu.into(),
                    sigma: sigma.into(),
                    rho: rho.into(),
                }),
                (None, None, None) => None,
                _ => {
                    return Err(Error::Parse(
                        "[problem]: markowitz needs all of mu/sigma/rho or none (synthetic)".into(),
                    ))
                }
            };
            ProblemSpec::Markowitz { files, eta, gamma }
        }
        other => return Err(Error::Parse(format!("[problem]: unknown kind '{other}'"))),
    };
    keys.finish()?;
    Ok(spec)
}

fn parse_schedule(section: &Section) -> Result<ScheduleSpec> {
    let mut keys = KeyMap::from_section(section)?;
    let kind: String = keys.require("kind")?;
    let reverse = match keys.take("reverse") {
        Some(raw) => parse_bool("schedule", "reverse", &raw)?,
        None => false,
    };
    let kind = match kind.as_str() {
        "constant" => ScheduleKindSpec::Constant {
            alpha: keys.require("alpha")?,
        },
        "reversed_harmonic" => ScheduleKindSpec::ReversedHarmonic {
            horizon: keys.take_parsed("horizon")?,
        },
        "harmonic" => ScheduleKindSpec::Harmonic,
        "custom" => {
            let raw: String = keys.require("steps")?;
            let steps: Vec<f64> = raw
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("[schedule]: bad step '{t}'")))
                })
                .collect::<Result<_>>()?;
            ScheduleKindSpec::Custom { steps }
        }
        other => return Err(Error::Parse(format!("[schedule]: unknown kind '{other}'"))),
    };
    keys.finish()?;
    Ok(ScheduleSpec { kind, reverse })
}

impl RunSpec {
    pub fn parse(text: &str) -> Result<RunSpec> {
        let sections = split_sections(text)?;

        let mut problem = None;
        let mut schedules = Vec::new();
        let mut run_keys: Option<KeyMap> = None;
        let mut init_keys: Option<KeyMap> = None;
        let mut output_keys: Option<KeyMap> = None;

        for section in &sections {
            match section.name.as_str() {
                "problem" => {
                    if problem.is_some() {
                        return Err(Error::Parse("duplicate [problem] section".into()));
                    }
                    problem = Some(parse_problem(section)?);
                }
                "schedule" => schedules.push(parse_schedule(section)?),
                "run" | "init" | "output" => {
                    let slot = match section.name.as_str() {
                        "run" => &mut run_keys,
                        "init" => &mut init_keys,
                        _ => &mut output_keys,
                    };
                    if slot.is_some() {
                        return Err(Error::Parse(format!(
                            "line {}: duplicate [{}] section",
                            section.line, section.name
                        )));
                    }
                    *slot = Some(KeyMap::from_section(section)?);
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown section [{other}]",
                        section.line
                    )))
                }
            }
        }

        let problem = problem.ok_or_else(|| Error::Parse("missing [problem] section".into()))?;
        if schedules.is_empty() {
            return Err(Error::Parse("missing [schedule] section".into()));
        }

        let mut run_keys = run_keys.ok_or_else(|| Error::Parse("missing [run] section".into()))?;
        let iters: usize = run_keys.require("iters")?;
        if iters < 1 {
            return Err(Error::Parse("[run]: iters must be >= 1".into()));
        }
        let seed = run_keys.take_parsed("seed")?.unwrap_or(0);
        let record_every = run_keys.take_parsed("record_every")?.unwrap_or(1);
        if record_every < 1 {
            return Err(Error::Parse("[run]: record_every must be >= 1".into()));
        }
        let diagnostics = match run_keys.take("diagnostics") {
            Some(raw) => parse_bool("run", "diagnostics", &raw)?,
            None => false,
        };
        let eps = run_keys.take_parsed("eps")?.unwrap_or(0.25);
        let reference_value = run_keys.take_parsed("reference_value")?;
        run_keys.finish()?;

        let init = match init_keys {
            None => InitSpec::Zero,
            Some(mut keys) => {
                let kind: String = keys.require("kind")?;
                let init = match kind.as_str() {
                    "zero" => InitSpec::Zero,
                    "random" => {
                        let radius: f64 = keys.require("radius")?;
                        if radius.is_nan() || radius <= 0.0 {
                            return Err(Error::Parse("[init]: radius must be > 0".into()));
                        }
                        InitSpec::Random { radius }
                    }
                    "file" => InitSpec::File {
                        path: keys.require::<String>("path")?.into(),
                    },
                    other => return Err(Error::Parse(format!("[init]: unknown kind '{other}'"))),
                };
                keys.finish()?;
                init
            }
        };

        let output = match output_keys {
            None => OutputSpec::default(),
            Some(mut keys) => {
                let default = OutputSpec::default();
                let output = OutputSpec {
                    trace: keys
                        .take("trace")
                        .map(PathBuf::from)
                        .unwrap_or(default.trace),
                    report: keys
                        .take("report")
                        .map(PathBuf::from)
                        .unwrap_or(default.report),
                    summary: keys
                        .take("summary")
                        .map(PathBuf::from)
                        .unwrap_or(default.summary),
                };
                keys.finish()?;
                output
            }
        };

        Ok(RunSpec {
            problem,
            schedules,
            iters,
            seed,
            record_every,
            diagnostics,
            eps,
            reference_value,
            init,
            output,
        })
    }

    pub fn parse_file(path: &Path) -> Result<(RunSpec, PathBuf)> {
        let text = std::fs::read_to_string(path)?;
        let spec = Self::parse(&text)?;
        let base = path
            .parent()
            .unwrap_or_else(|| Path::new("."))
            .to_path_buf();
        Ok((spec, base))
    }

    /// Canonical text form; `parse(serialize(spec)) == spec`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("[problem]\n");
        match &self.problem {
            ProblemSpec::Toy => out.push_str("kind = toy\n"),
            ProblemSpec::Lp { source } => {
                out.push_str("kind = lp\n");
                match source {
                    LpSource::Files { a, b, c } => {
                        let _ = writeln!(out, "a = {}", a.display());
                        let _ = writeln!(out, "b = {}", b.display());
                        let _ = writeln!(out, "c = {}", c.display());
                    }
                    LpSource::Random { m, n, seed } => {
                        let _ = writeln!(out, "m = {m}\nn = {n}\ninstance_seed = {seed}");
                    }
                }
            }
            ProblemSpec::LsL1 { source, gamma } => {
                out.push_str("kind = lsl1\n");
                let _ = writeln!(out, "gamma = {gamma}");
                match source {
                    LsL1Source::Files { a, b } => {
                        let _ = writeln!(out, "a = {}", a.display());
                        let _ = writeln!(out, "b = {}", b.display());
                    }
                    LsL1Source::Random { m, n, seed } => {
                        let _ = writeln!(out, "m = {m}\nn = {n}\ninstance_seed = {seed}");
                    }
                }
            }
            ProblemSpec::MatrixGame { payoff } => {
                out.push_str("kind = matrix_game\n");
                if let Some(p) = payoff {
                    let _ = writeln!(out, "payoff = {}", p.display());
                }
            }
            ProblemSpec::Markowitz { files, eta, gamma } => {
                out.push_str("kind = markowitz\n");
                let _ = writeln!(out, "eta = {eta}\ngamma = {gamma}");
                if let Some(f) = files {
                    let _ = writeln!(out, "mu = {}", f.mu.display());
                    let _ = writeln!(out, "sigma = {}", f.sigma.display());
                    let _ = writeln!(out, "rho = {}", f.rho.display());
                }
            }
        }

        for s in &self.schedules {
            out.push_str("\n[schedule]\n");
            match &s.kind {
                ScheduleKindSpec::Constant { alpha } => {
                    let _ = writeln!(out, "kind = constant\nalpha = {alpha}");
                }
                ScheduleKindSpec::ReversedHarmonic { horizon } => {
                    out.push_str("kind = reversed_harmonic\n");
                    if let Some(h) = horizon {
                        let _ = writeln!(out, "horizon = {h}");
                    }
                }
                ScheduleKindSpec::Harmonic => out.push_str("kind = harmonic\n"),
                ScheduleKindSpec::Custom { steps } => {
                    let toks: Vec<String> = steps.iter().map(|t| format!("{t}")).collect();
                    let _ = writeln!(out, "kind = custom\nsteps = {}", toks.join(" "));
                }
            }
            if s.reverse {
                out.push_str("reverse = true\n");
            }
        }

        out.push_str("\n[run]\n");
        let _ = writeln!(out, "iters = {}", self.iters);
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "record_every = {}", self.record_every);
        let _ = writeln!(
            out,
            "diagnostics = {}",
            if self.diagnostics { "on" } else { "off" }
        );
        let _ = writeln!(out, "eps = {}", self.eps);
        if let Some(r) = self.reference_value {
            let _ = writeln!(out, "reference_value = {r}");
        }

        out.push_str("\n[init]\n");
        match &self.init {
            InitSpec::Zero => out.push_str("kind = zero\n"),
            InitSpec::Random { radius } => {
                let _ = writeln!(out, "kind = random\nradius = {radius}");
            }
            InitSpec::File { path } => {
                let _ = writeln!(out, "kind = file\npath = {}", path.display());
            }
        }

        out.push_str("\n[output]\n");
        let _ = writeln!(out, "trace = {}", self.output.trace.display());
        let _ = writeln!(out, "report = {}", self.output.report.display());
        let _ = writeln!(out, "summary = {}", self.output.summary.display());
        out
    }
}
