//! key=value config file and the flag > config > default resolution order.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config {} line {}: expected key=value",
                    path.display(),
                    lineno + 1
                )));
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// flag > config > default
    pub fn resolve<T: Clone + FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            Some(raw) => raw.parse::<T>().map_err(|_| {
                CliError::Usage(format!("config key {key} has unparsable value {raw:?}"))
            }),
            None => Ok(default),
        }
    }

    /// Same, but with no default: the value must come from somewhere.
    pub fn resolve_required<T: Clone + FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
    ) -> Result<T, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            Some(raw) => raw.parse::<T>().map_err(|_| {
                CliError::Usage(format!("config key {key} has unparsable value {raw:?}"))
            }),
            None => Err(CliError::Usage(format!("missing required option --{key}"))),
        }
    }
}
