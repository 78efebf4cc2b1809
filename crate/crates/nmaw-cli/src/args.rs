use std::env;
use std::ops::RangeInclusive;

use weather_stencils::GridDims;

use crate::error::CliError;

/// Global seed fallback used whenever a spec omits its seed field.
pub const SEED_ENV: &str = "NMAW_SEED";

pub fn resolve_seed(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = explicit {
        return Ok(seed);
    }
    match env::var(SEED_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            CliError::Input(format!(
                "{SEED_ENV} must be an unsigned integer, got '{text}'"
            ))
        }),
        Err(env::VarError::NotPresent) => Ok(0),
        Err(env::VarError::NotUnicode(_)) => {
            Err(CliError::Input(format!("{SEED_ENV} is not valid UTF-8")))
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GenerateSpec {
    pub pairs: usize,
    pub length: usize,
    pub edits: usize,
    pub seed: Option<u64>,
}

/// Parses a `--generate` value: `pairs,length,edits[,seed]`.
pub fn parse_generate(text: &str) -> Result<GenerateSpec, CliError> {
    let fields: Vec<&str> = text.split(',').map(str::trim).collect();
    if !(3..=4).contains(&fields.len()) {
        return Err(CliError::Input(format!(
            "--generate takes pairs,length,edits[,seed], got '{text}'"
        )));
    }
    let number = |field: &str, name: &str| -> Result<usize, CliError> {
        field.parse().map_err(|_| {
            CliError::Input(format!("--generate {name} must be an unsigned integer, got '{field}'"))
        })
    };
    let seed = match fields.get(3) {
        Some(field) => Some(field.parse().map_err(|_| {
            CliError::Input(format!("--generate seed must be a u64, got '{field}'"))
        })?),
        None => None,
    };
    Ok(GenerateSpec {
        pairs: number(fields[0], "pair count")?,
        length: number(fields[1], "length")?,
        edits: number(fields[2], "edit count")?,
        seed,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub dims: GridDims,
    pub seed: Option<u64>,
}

/// Parses a `--grid` value: `I,J,K,halo[,seed]`.
pub fn parse_grid(text: &str) -> Result<GridSpec, CliError> {
    let fields: Vec<&str> = text.split(',').map(str::trim).collect();
    if !(4..=5).contains(&fields.len()) {
        return Err(CliError::Input(format!(
            "--grid takes I,J,K,halo[,seed], got '{text}'"
        )));
    }
    let number = |field: &str, name: &str| -> Result<usize, CliError> {
        field.parse().map_err(|_| {
            CliError::Input(format!("--grid {name} must be an unsigned integer, got '{field}'"))
        })
    };
    let seed = match fields.get(4) {
        Some(field) => Some(field.parse().map_err(|_| {
            CliError::Input(format!("--grid seed must be a u64, got '{field}'"))
        })?),
        None => None,
    };
    Ok(GridSpec {
        dims: GridDims::new(
            number(fields[0], "I")?,
            number(fields[1], "J")?,
            number(fields[2], "K")?,
            number(fields[3], "halo")?,
        ),
        seed,
    })
}

/// Parses a `--pes` value: an inclusive `lo..hi` range or a single count.
pub fn parse_pe_range(text: &str) -> Result<RangeInclusive<u32>, CliError> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim()),
        None => (text.trim(), text.trim()),
    };
    let parse = |field: &str| -> Result<u32, CliError> {
        field.parse().map_err(|_| {
            CliError::Input(format!("--pes takes lo..hi or a single count, got '{text}'"))
        })
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo == 0 {
        return Err(CliError::Input("PE count must be at least 1".into()));
    }
    if hi < lo {
        return Err(CliError::Input(format!(
            "--pes range is empty: {lo}..{hi}"
        )));
    }
    if hi > 1024 {
        return Err(CliError::Input(format!(
            "--pes upper bound {hi} is past any plausible device"
        )));
    }
    Ok(lo..=hi)
}
