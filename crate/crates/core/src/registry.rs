//! Registry reference grammar: `name` or `name{key=value,...}` with real values.

use std::fmt;

use crate::OperatorError;

#[derive(Debug, Clone, PartialEq)]
pub struct RegistryRef {
    pub name: String,
    pub params: Vec<(String, f64)>,
}

impl RegistryRef {
    pub fn parse(text: &str) -> Result<Self, OperatorError> {
        let err = |msg: String| OperatorError::Parse { line: 1, msg };
        let t = text.trim();
        let (name, rest) = match t.find('{') {
            Some(i) => (&t[..i], Some(&t[i..])),
            None => (t, None),
        };
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_') {
            return Err(err(format!("bad registry name in {text:?}")));
        }
        let mut params = Vec::new();
        if let Some(rest) = rest {
            let inner = rest
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| err(format!("unbalanced braces in {text:?}")))?;
            for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (k, v) = item.split_once('=').ok_or_else(|| err(format!("expected key=value, got {item:?}")))?;
                let k = k.trim();
                let v: f64 = v.trim().parse().map_err(|_| err(format!("bad value for {k}: {v:?}")))?;
                if params.iter().any(|(p, _)| p == k) {
                    return Err(err(format!("duplicate key {k}")));
                }
                params.push((k.to_string(), v));
            }
        }
        Ok(Self { name: name.to_string(), params })
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn get_or(&self, key: &str, default: f64) -> f64 {
        self.get(key).unwrap_or(default)
    }

    /// Fails on any key outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), OperatorError> {
        for (k, _) in &self.params {
            if !allowed.contains(&k.as_str()) {
                return Err(OperatorError::Parse {
                    line: 1,
                    msg: format!("unknown key {k:?} for {}; allowed: {}", self.name, allowed.join(", ")),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for RegistryRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.params.is_empty() {
            let items: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}
