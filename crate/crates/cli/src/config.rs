use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{file}:{line}: {msg}")]
    Syntax {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("unknown parameter `{key}` for command `{command}`")]
    UnknownKey { key: String, command: String },
    #[error("parameter `{key}`: {msg}")]
    BadValue { key: String, msg: String },
    #[error("invalid grid: {0}")]
    Grid(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    List(Vec<f64>),
}

impl Value {
    fn parse_like(&self, key: &str, raw: &str) -> Result<Value, ConfigError> {
        let bad = |msg: String| ConfigError::BadValue {
            key: key.to_string(),
            msg,
        };
        let raw = raw.trim();
        match self {
            Value::Num(_) => raw
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(Value::Num)
                .ok_or_else(|| bad(format!("expected a finite number, got `{raw}`"))),
            Value::Int(_) => raw
                .parse::<u64>()
                .map(Value::Int)
                .map_err(|_| bad(format!("expected a non-negative integer, got `{raw}`"))),
            Value::Bool(_) => match raw {
                "true" | "yes" | "1" => Ok(Value::Bool(true)),
                "false" | "no" | "0" => Ok(Value::Bool(false)),
                _ => Err(bad(format!("expected true or false, got `{raw}`"))),
            },
            Value::Text(_) => Ok(Value::Text(raw.to_string())),
            Value::List(_) => raw
                .split(',')
                .map(|s| s.trim().parse::<f64>().ok().filter(|v| v.is_finite()))
                .collect::<Option<Vec<_>>>()
                .filter(|v| !v.is_empty())
                .map(Value::List)
                .ok_or_else(|| bad(format!("expected comma-separated numbers, got `{raw}`"))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Num(v) => serde_json::json!(v),
            Value::Int(v) => serde_json::json!(v),
            Value::Bool(v) => serde_json::json!(v),
            Value::Text(v) => serde_json::json!(v),
            Value::List(v) => serde_json::json!(v),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(v) => write!(f, "{v}"),
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(v) => write!(f, "{v}"),
            Value::Text(v) => write!(f, "{v}"),
            Value::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

impl Spacing {
    pub fn as_str(self) -> &'static str {
        match self {
            Spacing::Log => "log",
            Spacing::Linear => "linear",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub z_min: f64,
    pub z_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.z_min.is_finite() && self.z_max.is_finite() && self.z_min < self.z_max) {
            return Err(ConfigError::Grid(format!(
                "need zmin < zmax, got {} and {}",
                self.z_min, self.z_max
            )));
        }
        if self.points < 2 {
            return Err(ConfigError::Grid(format!(
                "need at least 2 points, got {}",
                self.points
            )));
        }
        if self.spacing == Spacing::Log && self.z_min <= 0.0 {
            return Err(ConfigError::Grid("log spacing needs zmin > 0".into()));
        }
        Ok(())
    }

    /// Grid nodes with both end points exact.
    pub fn nodes(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.z_min;
                }
                if i == n - 1 {
                    return self.z_max;
                }
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Log => self.z_min * (self.z_max / self.z_min).powf(t),
                    Spacing::Linear => self.z_min + t * (self.z_max - self.z_min),
                }
            })
            .collect()
    }
}

/// Raw `key = value` pairs from a config file. `#` starts a comment.
pub fn read_file(path: &Path) -> Result<Vec<(String, String)>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_pairs(&text, &path.display().to_string())
}

pub fn parse_pairs(text: &str, file: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: String| ConfigError::Syntax {
            file: file.to_string(),
            line: i + 1,
            msg,
        };
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| syntax(format!("expected key = value, got `{line}`")))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(syntax("empty key".into()));
        }
        if out.iter().any(|(seen, _)| seen == k) {
            return Err(syntax(format!("duplicate key `{k}`")));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Splits a `key=value` override argument.
pub fn parse_override(arg: &str) -> Result<(String, String), ConfigError> {
    match arg.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(ConfigError::Syntax {
            file: "<command line>".into(),
            line: 0,
            msg: format!("expected key=value, got `{arg}`"),
        }),
    }
}

/// Parameters of one command after defaults, file and overrides are merged.
#[derive(Debug, Clone)]
pub struct Params {
    values: BTreeMap<String, Value>,
    order: Vec<String>,
}

impl Params {
    pub fn resolve(
        command: &str,
        defaults: Vec<(&'static str, Value)>,
        assignments: &[(String, String)],
    ) -> Result<Self, ConfigError> {
        let order: Vec<String> = defaults.iter().map(|(k, _)| k.to_string()).collect();
        let mut values: BTreeMap<String, Value> = defaults
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        for (k, raw) in assignments {
            let current = values.get(k).ok_or_else(|| ConfigError::UnknownKey {
                key: k.clone(),
                command: command.to_string(),
            })?;
            let parsed = current.parse_like(k, raw)?;
            values.insert(k.clone(), parsed);
        }
        Ok(Self { values, order })
    }

    pub fn num(&self, key: &str) -> f64 {
        match self.values.get(key) {
            Some(Value::Num(v)) => *v,
            other => panic!("parameter {key} is not numeric: {other:?}"),
        }
    }

    pub fn int(&self, key: &str) -> u64 {
        match self.values.get(key) {
            Some(Value::Int(v)) => *v,
            other => panic!("parameter {key} is not an integer: {other:?}"),
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        match self.values.get(key) {
            Some(Value::Bool(v)) => *v,
            other => panic!("parameter {key} is not a flag: {other:?}"),
        }
    }

    pub fn text(&self, key: &str) -> &str {
        match self.values.get(key) {
            Some(Value::Text(v)) => v,
            other => panic!("parameter {key} is not text: {other:?}"),
        }
    }

    pub fn list(&self, key: &str) -> &[f64] {
        match self.values.get(key) {
            Some(Value::List(v)) => v,
            other => panic!("parameter {key} is not a list: {other:?}"),
        }
    }

    /// Parameters in declaration order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.order.iter().map(|k| (k.as_str(), &self.values[k]))
    }

    pub fn choice(&self, key: &str, allowed: &[&str]) -> Result<String, ConfigError> {
        let v = self.text(key);
        if allowed.contains(&v) {
            Ok(v.to_string())
        } else {
            Err(ConfigError::BadValue {
                key: key.to_string(),
                msg: format!("expected one of {}, got `{v}`", allowed.join(", ")),
            })
        }
    }
}
