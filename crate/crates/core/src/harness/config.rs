//! Run profiles and the TOML config file.
//!
//! Every key is optional and command-line flags win over the file:
//!
//! ```toml
//! profile = "desk"          # "full" or "desk"
//! seed = 7
//! out_dir = "results"
//! workers = 4               # 0 = one per core
//! functions = ["f1", "f2"]
//! algorithms = ["abc", "agabc"]
//! dims = [10, 30]
//! trials = 10
//! pop = 100                 # colony size
//! iters = 2000
//! limit = 100
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Full benchmark protocol.
    #[default]
    Full,
    /// Reduced budget that finishes in minutes.
    Desk,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Self::Full),
            "desk" => Ok(Self::Desk),
            _ => Err(Error::Lookup {
                kind: "profile",
                name: s.into(),
                valid: "full, desk".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileDefaults {
    pub colony_size: usize,
    pub max_iter: usize,
    pub limit: usize,
    pub trials: usize,
    pub dims: Vec<usize>,
}

impl Profile {
    pub fn bench(self) -> ProfileDefaults {
        match self {
            Self::Full => ProfileDefaults {
                colony_size: 1000,
                max_iter: 5000,
                limit: 100,
                trials: 20,
                dims: vec![60, 80, 100],
            },
            Self::Desk => ProfileDefaults {
                colony_size: 100,
                max_iter: 2000,
                limit: 100,
                trials: 10,
                dims: vec![10],
            },
        }
    }

    /// Scheduling budget; the same for both profiles.
    pub fn schedule(self) -> ProfileDefaults {
        ProfileDefaults {
            colony_size: 200,
            max_iter: 1000,
            limit: 50,
            trials: 20,
            dims: vec![60],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub profile: Option<Profile>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub workers: Option<usize>,
    pub functions: Option<Vec<String>>,
    pub algorithms: Option<Vec<String>>,
    pub dims: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub pop: Option<usize>,
    pub iters: Option<usize>,
    pub limit: Option<usize>,
}

impl ConfigFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_schema() {
        let c = ConfigFile::from_toml_str(
            r#"
            profile = "desk"
            seed = 7
            functions = ["f1", "f2"]
            dims = [10]
            pop = 50
            "#,
        )
        .unwrap();
        assert_eq!(c.profile, Some(Profile::Desk));
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.functions.as_deref(), Some(&["f1".to_string(), "f2".to_string()][..]));
        assert_eq!(c.pop, Some(50));
        assert_eq!(c.iters, None);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(ConfigFile::from_toml_str("populaton = 3").is_err());
        assert!(ConfigFile::from_toml_str("profile = \"huge\"").is_err());
    }

    #[test]
    fn profile_budgets() {
        assert_eq!(Profile::Full.bench().colony_size, 1000);
        assert_eq!(Profile::Desk.bench().dims, vec![10]);
        assert_eq!(Profile::Desk.schedule().limit, 50);
        assert!("DESK".parse::<Profile>().is_ok());
    }
}
