use super::{Command, GlobalArgs};
use crate::certify::TheoremClaim;
use crate::enclosure::DEFAULT_BITS;
use crate::inequalities::{
    default_grid, lookup, SuiteConfig, DEFAULT_GRID_DENSITY, DEFAULT_POINTWISE_N_MAX,
    DEFAULT_SCALAR_N_MAX,
};
use clap::ValueEnum;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Settings after merging the config file, flags and defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub n_max: u32,
    pub scalar_n_max: u32,
    pub grid_density: u32,
    pub bits: u32,
    pub claims: Option<Vec<String>>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub jobs: Option<usize>,
}

pub const CERTIFY_IDS: [&str; 11] = [
    "thm-1.2",
    "cor-3.1",
    "cor-3.2",
    "thm-t5",
    "thm-t3",
    "thm-t6",
    "cor-logconcave",
    "prop-5.1",
    "prop-5.7",
    "seq-t5",
    "seq-t6",
];

pub(crate) fn parse_certify_id(s: &str) -> Result<String, String> {
    if s == "limits" || CERTIFY_IDS.contains(&s) || TheoremClaim::from_id(s).is_some() {
        Ok(s.to_string())
    } else {
        Err(format!(
            "unknown claim id; valid ids: {}, limits",
            CERTIFY_IDS.join(", ")
        ))
    }
}

pub(crate) fn parse_claim_id(s: &str) -> Result<String, String> {
    match lookup(s.trim()) {
        Some(e) => Ok(e.id.to_string()),
        None => Err("unknown claim id; valid ids: R1 to R17".to_string()),
    }
}

/// Parses `key = value` lines; blank lines and lines starting with `#` are
/// skipped. Keys use underscores or dashes interchangeably.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.parse()
        .map_err(|_| format!("config key {key}: cannot parse {v:?}"))
}

#[derive(Default)]
struct FileValues {
    n_max: Option<u32>,
    scalar_n_max: Option<u32>,
    grid: Option<u32>,
    bits: Option<u32>,
    format: Option<Format>,
    out: Option<PathBuf>,
    claims: Option<Vec<String>>,
    jobs: Option<usize>,
}

fn file_values(map: &BTreeMap<String, String>) -> Result<FileValues, String> {
    let mut f = FileValues::default();
    for (k, v) in map {
        match k.as_str() {
            "n_max" => f.n_max = Some(parse_num(k, v)?),
            "scalar_n_max" => f.scalar_n_max = Some(parse_num(k, v)?),
            "grid" | "grid_density" => f.grid = Some(parse_num(k, v)?),
            "bits" => f.bits = Some(parse_num(k, v)?),
            "jobs" => f.jobs = Some(parse_num(k, v)?),
            "out" | "output_path" => f.out = Some(PathBuf::from(v)),
            "format" => {
                f.format = Some(
                    Format::from_str(v, true)
                        .map_err(|_| format!("config key format: unknown format {v:?}"))?,
                )
            }
            "claims" => {
                let ids = v
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(parse_claim_id)
                    .collect::<Result<Vec<_>, _>>()?;
                f.claims = Some(ids);
            }
            other => return Err(format!("unknown config key {other:?}")),
        }
    }
    Ok(f)
}

impl RunConfig {
    pub(crate) fn resolve(flags: &GlobalArgs, command: &Command) -> Result<Self, String> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
                file_values(&parse_config_text(&text)?)?
            }
            None => FileValues::default(),
        };
        let n_max = flags
            .n_max
            .or(file.n_max)
            .unwrap_or(DEFAULT_POINTWISE_N_MAX);
        let scalar_n_max = flags
            .scalar_n_max
            .or(file.scalar_n_max)
            .unwrap_or(n_max.max(DEFAULT_SCALAR_N_MAX));
        let grid_density = flags.grid.or(file.grid).unwrap_or(DEFAULT_GRID_DENSITY);
        let bits = flags.bits.or(file.bits).unwrap_or(DEFAULT_BITS);
        if n_max == 0 || grid_density == 0 || bits == 0 {
            return Err("n-max, grid and bits must be positive".into());
        }
        if flags.jobs == Some(0) || file.jobs == Some(0) {
            return Err("jobs must be positive".into());
        }
        let single_value = matches!(
            command,
            Command::Number { .. }
                | Command::Poly { .. }
                | Command::Value { .. }
                | Command::Zero { .. }
        );
        let default_format = if single_value {
            Format::Text
        } else {
            Format::Json
        };
        let claims = match command {
            Command::Verify { claims: Some(c) } => Some(c.clone()),
            _ => file.claims,
        };
        Ok(RunConfig {
            n_max,
            scalar_n_max,
            grid_density,
            bits,
            claims,
            output_path: flags.out.clone().or(file.out),
            format: flags.format.or(file.format).unwrap_or(default_format),
            jobs: flags.jobs.or(file.jobs),
        })
    }

    pub fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            pointwise_n_max: self.n_max,
            scalar_n_max: self.scalar_n_max,
            grid: default_grid(self.grid_density),
            bits: self.bits,
            include_certificates: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text_parsing() {
        let m = parse_config_text("# comment\nn-max = 4\n\nbits=128\n").unwrap();
        assert_eq!(m.get("n_max").map(String::as_str), Some("4"));
        assert_eq!(m.get("bits").map(String::as_str), Some("128"));
        assert!(parse_config_text("oops").is_err());
    }

    #[test]
    fn file_values_reject_unknown_keys_and_ids() {
        let m = parse_config_text("colour = red").unwrap();
        assert!(file_values(&m).is_err());
        let m = parse_config_text("claims = R1,R99").unwrap();
        assert!(file_values(&m).is_err());
        let m = parse_config_text("claims = r1, R13\nformat = CSV").unwrap();
        let f = file_values(&m).unwrap();
        assert_eq!(f.claims, Some(vec!["R1".into(), "R13".into()]));
        assert_eq!(f.format, Some(Format::Csv));
    }
}
