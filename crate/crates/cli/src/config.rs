use std::path::PathBuf;

use chromavar_core::group::is_prime;
use chromavar_core::Caps;
use serde::Serialize;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

/// Everything a command needs besides its name. All computations are
/// deterministic, so there is no seed.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub p: Option<u32>,
    /// `usize::MAX` stands for infinity.
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub caps: Caps,
    pub group: Option<PathBuf>,
    pub complex: Option<PathBuf>,
    pub presheaf: Option<PathBuf>,
    pub format: Format,
    /// Record wall time per check. Off by default so reports are reproducible.
    pub timings: bool,
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if let Some(p) = self.p {
            if !is_prime(p) {
                return Err(CliError::Usage(format!("-p {}: not a prime", p)));
            }
        }
        if let (Some(n), Some(d)) = (self.n, self.d) {
            if n != usize::MAX && n > d {
                return Err(CliError::Usage(format!("-n {} exceeds -d {}", n, d)));
            }
        }
        let caps = &self.caps;
        if caps.max_group_order == 0 || caps.max_enum == 0 || caps.max_level == 0 {
            return Err(CliError::Usage("caps must be positive".into()));
        }
        Ok(())
    }

    pub fn require_p(&self) -> CliResult<u32> {
        self.p.ok_or_else(|| CliError::Usage("missing -p".into()))
    }

    pub fn require_n(&self) -> CliResult<usize> {
        self.n.ok_or_else(|| CliError::Usage("missing -n".into()))
    }

    pub fn finite_n(&self) -> CliResult<usize> {
        match self.require_n()? {
            usize::MAX => Err(CliError::Usage("-n must be finite here".into())),
            n => Ok(n),
        }
    }
}

/// Parse a level: a non-negative integer or `inf`.
pub fn parse_level(s: &str) -> Result<usize, String> {
    match s {
        "inf" | "infinity" => Ok(usize::MAX),
        _ => s.parse::<usize>().map_err(|e| format!("{}: {}", s, e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels() {
        assert_eq!(parse_level("3"), Ok(3));
        assert_eq!(parse_level("inf"), Ok(usize::MAX));
        assert!(parse_level("-1").is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig { p: Some(4), ..Default::default() };
        assert!(c.validate().is_err());
        c.p = Some(3);
        c.n = Some(3);
        c.d = Some(2);
        assert!(c.validate().is_err());
        c.n = Some(usize::MAX);
        assert!(c.validate().is_ok());
        c.caps.max_enum = 0;
        assert!(c.validate().is_err());
    }
}
