use std::fmt;
use std::path::Path;

use mixshuffle_core::ring::{RingElem, RingSpec};
use mixshuffle_core::semigroup::{OrderedSemigroup, SemigroupSpec};
use serde_json::Value;

/// A failure that maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<mixshuffle_core::Error> for ConfigError {
    fn from(e: mixshuffle_core::Error) -> Self {
        ConfigError(e.to_string())
    }
}

pub type CliResult<T> = Result<T, ConfigError>;

pub fn config_error<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(ConfigError(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Q,
    Z,
    Fp,
    Zp,
}

impl RingKind {
    pub fn of(ring: RingSpec) -> Self {
        match ring {
            RingSpec::Rationals => RingKind::Q,
            RingSpec::Integers => RingKind::Z,
            RingSpec::PrimeField { .. } => RingKind::Fp,
            RingSpec::TruncatedPAdic { .. } => RingKind::Zp,
        }
    }
}

/// Resolves `--ring`, `--p` and `--precision` into a ring. `implied` is the
/// ring a theorem runs over; an explicit `--ring` must agree with it.
pub fn resolve_ring(flag: Option<&str>, p: Option<u64>, precision: u32, implied: Option<RingKind>) -> CliResult<RingSpec> {
    let need_p = |what: &str| p.ok_or_else(|| ConfigError(format!("{what} needs --p")));
    let ring = match flag {
        Some("Q") => RingSpec::Rationals,
        Some("Z") => RingSpec::Integers,
        Some("Fp") => RingSpec::prime_field(need_p("--ring Fp")?)?,
        Some("Zp") => RingSpec::truncated_padic(need_p("--ring Zp")?, precision)?,
        Some(other) => RingSpec::parse(other)?,
        None => match implied {
            Some(RingKind::Q) => RingSpec::Rationals,
            Some(RingKind::Z) => RingSpec::Integers,
            Some(RingKind::Fp) => RingSpec::prime_field(need_p("this command")?)?,
            Some(RingKind::Zp) => RingSpec::truncated_padic(need_p("this command")?, precision)?,
            None => match p {
                Some(p) => RingSpec::prime_field(p)?,
                None => RingSpec::Rationals,
            },
        },
    };
    if let Some(kind) = implied {
        if RingKind::of(ring) != kind {
            return config_error(format!("this command runs over {kind:?}, not {ring}"));
        }
    }
    if let (Some(p), Some(q)) = (p, ring.prime()) {
        if p != q {
            return config_error(format!("--p {p} disagrees with ring {ring}"));
        }
    }
    Ok(ring)
}

pub fn parse_lambda(ring: RingSpec, s: &str) -> CliResult<RingElem> {
    RingElem::parse(ring, s).map_err(|e| ConfigError(format!("--lambda '{s}': {e}")))
}

fn names(list: &str) -> Vec<String> {
    list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Builds a semigroup from a preset (`free:x,y`, `set:a,b`, `monoid:x`,
/// `mu:p[,k]`, `idem:<file>`), inline JSON, or a JSON file path.
pub fn parse_semigroup(s: &str) -> CliResult<OrderedSemigroup> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("free:") {
        return Ok(OrderedSemigroup::free_abelian(&names(rest))?);
    }
    if let Some(rest) = s.strip_prefix("set:") {
        return Ok(OrderedSemigroup::ordered_set(&names(rest))?);
    }
    if let Some(rest) = s.strip_prefix("monoid:") {
        return Ok(OrderedSemigroup::free_monoid(&names(rest))?);
    }
    if let Some(rest) = s.strip_prefix("mu:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| ConfigError(format!("bad number '{t}' in '{s}'")));
        let (p, k) = match parts.as_slice() {
            [p] => (num(p)?, 1),
            [p, k] => (num(p)?, num(k)?),
            _ => return config_error(format!("expected mu:p or mu:p,k, got '{s}'")),
        };
        let k = u32::try_from(k).map_err(|_| ConfigError(format!("too many copies in '{s}'")))?;
        return Ok(OrderedSemigroup::mu_p(p, k, None)?);
    }
    if let Some(path) = s.strip_prefix("idem:") {
        let mut v = read_json(Path::new(path))?;
        if let Value::Object(m) = &mut v {
            if !m.contains_key("kind") {
                m.insert("kind".into(), Value::from("p_idempotent"));
                if !m.contains_key("order") {
                    let n = m.get("table").and_then(Value::as_array).map_or(0, Vec::len);
                    m.insert("order".into(), Value::from((0..n).collect::<Vec<_>>()));
                }
            }
        }
        return spec_from_value(v);
    }
    if s.starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| ConfigError(format!("semigroup JSON: {e}")))?;
        return spec_from_value(v);
    }
    let path = Path::new(s);
    if path.is_file() {
        return spec_from_value(read_json(path)?);
    }
    config_error(format!("unrecognized semigroup '{s}' (expected free:, set:, monoid:, mu:, idem:, JSON or a file)"))
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
}

fn spec_from_value(v: Value) -> CliResult<OrderedSemigroup> {
    let spec: SemigroupSpec = serde_json::from_value(v).map_err(|e| ConfigError(format!("semigroup JSON: {e}")))?;
    Ok(spec.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        assert_eq!(parse_semigroup("free:x,y").unwrap().describe(), "F(x,y)");
        assert_eq!(parse_semigroup("monoid:x").unwrap().describe(), "M(x)");
        assert_eq!(parse_semigroup("mu:3").unwrap().describe(), "mu_3");
        assert_eq!(parse_semigroup("mu:2,2").unwrap().describe(), "mu_2^2");
        assert_eq!(parse_semigroup(r#"{"kind":"ordered_set","letters":["a"]}"#).unwrap().describe(), "set{a}");
        assert!(parse_semigroup("mu:4").is_err());
        assert!(parse_semigroup("nonsense").is_err());
    }

    #[test]
    fn rings() {
        assert_eq!(resolve_ring(None, None, 8, None).unwrap(), RingSpec::Rationals);
        assert_eq!(resolve_ring(Some("Zp"), Some(3), 6, None).unwrap().to_string(), "Z/3^6");
        assert_eq!(resolve_ring(None, Some(5), 8, Some(RingKind::Fp)).unwrap().to_string(), "F_5");
        assert!(resolve_ring(Some("Q"), None, 8, Some(RingKind::Z)).is_err());
        assert!(resolve_ring(Some("Fp"), None, 8, None).is_err());
        assert!(resolve_ring(Some("F_3"), Some(5), 8, None).is_err());
    }
}
