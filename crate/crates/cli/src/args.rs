//! Resolution of the shared flag types: conventions, presentations, twists.

use std::fs;
use std::path::Path;

use clap::Args;

use msign::catalog::{free_presentation, universal_presentation};
use msign::{BilinearCocycle, CoefMode, Convention, EpsImage, Presentation, QuadraticCochain, UnitExp};

use crate::Failure;

/// Reads `spec` as inline JSON when it starts with `{`, otherwise as a path.
pub fn json_text(spec: &str) -> Result<String, Failure> {
    if spec.trim_start().starts_with('{') {
        Ok(spec.to_string())
    } else {
        fs::read_to_string(spec).map_err(|e| Failure::input(format!("{spec}: {e}")))
    }
}

/// Coefficient-mode overrides shared by every convention-taking command.
#[derive(Args, Debug, Clone, Default)]
pub struct ModeArgs {
    /// Image of eps: generic, +1 or -1
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<EpsImage>,
    /// Reduce coefficients modulo this integer (0 for none)
    #[arg(long)]
    pub modulus: Option<u64>,
}

impl ModeArgs {
    pub fn apply(&self, base: CoefMode) -> CoefMode {
        CoefMode::new(self.eps.unwrap_or(base.eps), self.modulus.unwrap_or(base.modulus))
    }
}

/// A preset name, `u=<unit>`, a JSON convention file or inline JSON.
pub fn convention(spec: &str, mode: &ModeArgs) -> Result<Convention, Failure> {
    let looks_like_file = spec.trim_start().starts_with('{') || Path::new(spec).is_file();
    let conv = if looks_like_file {
        Convention::from_json(&json_text(spec)?)?
    } else {
        spec.parse::<Convention>()?
    };
    let m = mode.apply(conv.mode);
    Ok(conv.with_mode(m))
}

/// One of the built-in presentations or a JSON presentation file.
pub fn presentation(spec: &str) -> Result<Presentation, Failure> {
    Ok(match spec {
        "catalog" => universal_presentation(false),
        "catalog-tau" => universal_presentation(true),
        "free" => free_presentation(false),
        "free-tau" => free_presentation(true),
        path => Presentation::from_json(&json_text(path)?)?,
    })
}

/// A bilinear cocycle given by `--u` or by `--twist`.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct TwistArgs {
    /// The cocycle alpha_u
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<UnitExp>,
    /// Cocycle JSON, inline or a path: {"m11": .., "m12": .., "m21": .., "m22": ..}
    #[arg(long)]
    pub twist: Option<String>,
}

impl TwistArgs {
    pub fn resolve(&self) -> Result<BilinearCocycle, Failure> {
        match (&self.u, &self.twist) {
            (Some(u), _) => Ok(BilinearCocycle::alpha_u(*u)),
            (None, Some(spec)) => Ok(serde_json::from_str(&json_text(spec)?).map_err(msign::Error::from)?),
            (None, None) => unreachable!("clap requires one of --u, --twist"),
        }
    }
}

pub fn cochain(spec: &str) -> Result<QuadraticCochain, Failure> {
    Ok(serde_json::from_str(&json_text(spec)?).map_err(msign::Error::from)?)
}
