//! Run configuration. Every setting is a flat `key = value` pair; a config
//! file supplies values and command-line flags override them.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use ordlift::circle::Kind;
use ordlift::num::{parse_q, Q};
use ordlift::order::DEFAULT_POWER_CAP;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Tau,
    Compare,
    Growth,
    SandwichAudit,
    RepCheck,
    Causal,
    Suite,
}

impl Command {
    pub const ALL: [Command; 7] =
        [Command::Tau, Command::Compare, Command::Growth, Command::SandwichAudit, Command::RepCheck, Command::Causal, Command::Suite];

    pub fn name(self) -> &'static str {
        match self {
            Command::Tau => "tau",
            Command::Compare => "compare",
            Command::Growth => "growth",
            Command::SandwichAudit => "sandwich-audit",
            Command::RepCheck => "rep-check",
            Command::Causal => "causal",
            Command::Suite => "suite",
        }
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Input(format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
}

/// `circle`, `circle(kind=moebius)`, `circle(kind=pl, d=1/10)` or
/// `lagrangian(n=2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverSpec {
    Circle { kind: Kind, spread: Option<Q> },
    Lagrangian { n: usize },
}

impl CoverSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Input(format!("cover {s:?}: {why}"));
        let s = s.trim();
        let (name, params) = match s.split_once('(') {
            Some((name, rest)) => (name.trim(), rest.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?),
            None => (s, ""),
        };
        let mut kv = BTreeMap::new();
        for p in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = p.split_once('=').ok_or_else(|| bad("parameters are key=value"))?;
            kv.insert(k.trim(), v.trim());
        }
        let spec = match name {
            "circle" => {
                let kind = match kv.remove("kind") {
                    None | Some("pl") => Kind::Pl,
                    Some("moebius") => Kind::Moebius,
                    Some(k) => return Err(bad(&format!("unknown kind {k:?}"))),
                };
                let spread = kv.remove("d").map(parse_q).transpose().map_err(|e| bad(&e.to_string()))?;
                CoverSpec::Circle { kind, spread }
            }
            "lagrangian" => {
                let n = kv.remove("n").unwrap_or("2").parse().map_err(|_| bad("n must be a positive integer"))?;
                CoverSpec::Lagrangian { n }
            }
            _ => return Err(bad("expected circle or lagrangian")),
        };
        match kv.keys().next() {
            Some(k) => Err(bad(&format!("unknown parameter {k:?}"))),
            None => Ok(spec),
        }
    }
}

/// Keys accepted in config files and as flags, in header order.
pub const KEYS: [&str; 17] = [
    "command", "input", "reference", "seed", "samples", "tol", "power_cap", "cover", "kind", "q", "n", "g", "h", "criterion",
    "out", "format", "config",
];

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub reference: Option<PathBuf>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub tol: Q,
    pub power_cap: i64,
    pub cover: CoverSpec,
    pub kind: Kind,
    pub q: i64,
    pub n: Option<i64>,
    pub g: i64,
    pub h: i64,
    pub criterion: Option<u8>,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// The resolved settings as given, echoed into report headers.
    pub echo: Vec<(String, String)>,
}

/// Parses a flat config file: `key = value` lines, `#` comments.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| CliError::Input(format!("config line {}: expected key = value", i + 1)))?;
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) || key == "config" {
            return Err(CliError::Input(format!("config line {}: unknown key {:?}", i + 1, k.trim())));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_config_text(&text)
}

/// Exact decimal or rational text: `1/1000000`, `0.000001`, `1e-6`.
pub fn parse_tolerance(s: &str) -> Result<Q, CliError> {
    let bad = || CliError::Input(format!("tolerance {s:?} is not a nonnegative number"));
    let t = s.trim();
    let value = if t.contains('/') || !(t.contains('.') || t.contains(['e', 'E'])) {
        parse_q(t).map_err(|_| bad())?
    } else {
        let (mantissa, exp) = match t.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let digits: String = format!("{int}{frac}");
        let mut v = parse_q(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
        let ten = parse_q("10").expect("literal");
        let shift = exp - frac.len() as i32;
        for _ in 0..shift.unsigned_abs() {
            v = if shift > 0 { v * &ten } else { v / &ten };
        }
        v
    };
    if value < parse_q("0").expect("literal") {
        return Err(bad());
    }
    Ok(value)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim().parse().map_err(|_| CliError::Input(format!("{key} = {v:?} is not a valid number")))
}

impl RunConfig {
    /// Resolves raw settings; absent keys take their defaults.
    pub fn resolve(mut raw: BTreeMap<String, String>) -> Result<Self, CliError> {
        raw.remove("config");
        if let Some(k) = raw.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(CliError::Input(format!("unknown setting {k:?}")));
        }
        let get = |k: &str| raw.get(k).map(String::as_str);
        let command = Command::parse(get("command").ok_or_else(|| CliError::Input("no command given".into()))?)?;
        let kind = match get("kind").unwrap_or("pl") {
            "pl" => Kind::Pl,
            "moebius" => Kind::Moebius,
            k => return Err(CliError::Input(format!("kind {k:?}: expected pl or moebius"))),
        };
        let format = match get("format").unwrap_or("csv") {
            "csv" => Format::Csv,
            "svg" => Format::Svg,
            f => return Err(CliError::Input(format!("format {f:?}: expected csv or svg"))),
        };
        let cfg = RunConfig {
            command,
            input: get("input").map(PathBuf::from),
            reference: get("reference").map(PathBuf::from),
            seed: get("seed").map(|v| parse_num("seed", v)).transpose()?.unwrap_or(0),
            samples: get("samples").map(|v| parse_num("samples", v)).transpose()?,
            tol: parse_tolerance(get("tol").unwrap_or("1/1000000"))?,
            power_cap: get("power_cap").map(|v| parse_num("power_cap", v)).transpose()?.unwrap_or(DEFAULT_POWER_CAP),
            cover: CoverSpec::parse(get("cover").unwrap_or("circle"))?,
            kind,
            q: get("q").map(|v| parse_num("q", v)).transpose()?.unwrap_or(0),
            n: get("n").map(|v| parse_num("n", v)).transpose()?,
            g: get("g").map(|v| parse_num("g", v)).transpose()?.unwrap_or(2),
            h: get("h").map(|v| parse_num("h", v)).transpose()?.unwrap_or(3),
            criterion: get("criterion").map(|v| parse_num("criterion", v)).transpose()?,
            out: get("out").map(PathBuf::from),
            format,
            echo: Vec::new(),
        };
        if cfg.q < 0 {
            return Err(CliError::Input("q must be nonnegative".into()));
        }
        if cfg.power_cap < 1 {
            return Err(CliError::Input("power_cap must be positive".into()));
        }
        if cfg.samples == Some(0) {
            return Err(CliError::Input("samples must be positive".into()));
        }
        let echo = cfg.echo_pairs(&raw);
        Ok(RunConfig { echo, ..cfg })
    }

    /// Seed and caps always appear, with defaults filled in; other keys
    /// appear as given.
    fn echo_pairs(&self, raw: &BTreeMap<String, String>) -> Vec<(String, String)> {
        let mut out = vec![
            ("command".to_string(), self.command.name().to_string()),
            ("seed".to_string(), self.seed.to_string()),
            ("power_cap".to_string(), self.power_cap.to_string()),
        ];
        for key in KEYS {
            if matches!(key, "command" | "seed" | "power_cap" | "config" | "out" | "format") {
                continue;
            }
            if let Some(v) = raw.get(key) {
                out.push((key.to_string(), v.clone()));
            }
        }
        out
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Svg => "svg",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ordlift::num::q;

    fn raw(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn tolerance_forms() {
        assert_eq!(parse_tolerance("1e-6").unwrap(), q(1, 1_000_000));
        assert_eq!(parse_tolerance("0.000001").unwrap(), q(1, 1_000_000));
        assert_eq!(parse_tolerance("1/1000000").unwrap(), q(1, 1_000_000));
        assert_eq!(parse_tolerance("2.5E1").unwrap(), q(25, 1));
        assert_eq!(parse_tolerance("0").unwrap(), q(0, 1));
        assert!(parse_tolerance("-1").is_err());
        assert!(parse_tolerance("abc").is_err());
    }

    #[test]
    fn covers() {
        assert_eq!(CoverSpec::parse("circle").unwrap(), CoverSpec::Circle { kind: Kind::Pl, spread: None });
        assert_eq!(
            CoverSpec::parse("circle(kind=moebius, d=1/10)").unwrap(),
            CoverSpec::Circle { kind: Kind::Moebius, spread: Some(q(1, 10)) }
        );
        assert_eq!(CoverSpec::parse("lagrangian(n=3)").unwrap(), CoverSpec::Lagrangian { n: 3 });
        assert!(CoverSpec::parse("lagrangian(m=3)").is_err());
        assert!(CoverSpec::parse("torus").is_err());
    }

    #[test]
    fn config_file() {
        let m = parse_config_text("# demo\ncommand = growth\npower-cap = 64 # cap\n\nseed=3\n").unwrap();
        let cfg = RunConfig::resolve(m).unwrap();
        assert_eq!((cfg.command, cfg.power_cap, cfg.seed), (Command::Growth, 64, 3));
        assert!(parse_config_text("colour = red").is_err());
        assert!(parse_config_text("seed").is_err());
    }

    #[test]
    fn echo_records_defaults() {
        let cfg = RunConfig::resolve(raw(&[("command", "tau"), ("tol", "1e-3")])).unwrap();
        assert_eq!(cfg.echo[..3].iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>(), ["command", "seed", "power_cap"]);
        assert!(cfg.echo.contains(&("tol".into(), "1e-3".into())));
        assert!(RunConfig::resolve(raw(&[("command", "frobnicate")])).is_err());
        assert!(RunConfig::resolve(raw(&[])).is_err());
    }
}
