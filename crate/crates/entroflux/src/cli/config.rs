//! Run configuration: defaults, strict key=value config files, and flag
//! overlays.

use std::path::PathBuf;

use crate::fluxes::{DiffusionGuard, FluxCore};
use crate::hybrid::{SensorMode, SensorParams};
use crate::solver::{SchemeConfig, Stabilization, TimeIntegrator};
use crate::stabilization::SonicFix;
use crate::Error;

/// Fully resolved run configuration. Defaults follow the reference setup:
/// CFL 0.1, q = 10, eps = 0.1, delta = 1e-16, theta = 0.1, exponential
/// sensor, SSPRK3.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub case: Option<String>,
    pub flux: FluxCore,
    pub stabilization: Stabilization,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub cfl: f64,
    pub t_final: Option<f64>,
    pub sensor_q: f64,
    pub sensor_eps: f64,
    pub sensor_mode: SensorMode,
    pub delta: f64,
    pub theta: f64,
    pub integrator: TimeIntegrator,
    pub out_dir: PathBuf,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            case: None,
            flux: FluxCore::Eckep,
            stabilization: Stabilization::Es,
            nx: None,
            ny: None,
            cfl: 0.1,
            t_final: None,
            sensor_q: 10.0,
            sensor_eps: 0.1,
            sensor_mode: SensorMode::Exponential,
            delta: 1e-16,
            theta: 0.1,
            integrator: TimeIntegrator::Ssprk3,
            out_dir: PathBuf::from("."),
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Parse `key=value` config text; unknown keys abort with the offending
    /// key and line number. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected key=value, got \"{line}\"",
                    lineno + 1
                )));
            };
            cfg.apply(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(cfg)
    }

    /// Apply a single key=value setting.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), Error> {
        let bad = |what: &str| Error::Config(format!("invalid {what} \"{value}\""));
        match key {
            "case" => self.case = Some(value.to_string()),
            "flux" => self.flux = value.parse()?,
            "scheme" => self.stabilization = value.parse()?,
            "nx" => self.nx = Some(value.parse().map_err(|_| bad("nx"))?),
            "ny" => self.ny = Some(value.parse().map_err(|_| bad("ny"))?),
            "cfl" => self.cfl = value.parse().map_err(|_| bad("cfl"))?,
            "tfinal" => self.t_final = Some(value.parse().map_err(|_| bad("tfinal"))?),
            "q" => self.sensor_q = value.parse().map_err(|_| bad("q"))?,
            "eps" => self.sensor_eps = value.parse().map_err(|_| bad("eps"))?,
            "sensor_mode" | "sensor-mode" => self.sensor_mode = value.parse()?,
            "delta" => self.delta = value.parse().map_err(|_| bad("delta"))?,
            "theta" => self.theta = value.parse().map_err(|_| bad("theta"))?,
            "integrator" => self.integrator = value.parse()?,
            "out" => self.out_dir = PathBuf::from(value),
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            other => {
                return Err(Error::Config(format!("unknown key \"{other}\"")));
            }
        }
        Ok(())
    }

    /// Assemble the solver-side scheme configuration and validate it.
    pub fn scheme(&self) -> Result<SchemeConfig, Error> {
        let scheme = SchemeConfig {
            flux: self.flux,
            stabilization: self.stabilization,
            cfl: self.cfl,
            integrator: self.integrator,
            sensor: SensorParams {
                q: self.sensor_q,
                eps: self.sensor_eps,
                mode: self.sensor_mode,
            },
            guard: DiffusionGuard { delta: self.delta },
            fix: SonicFix { theta: self.theta },
        };
        scheme.validate()?;
        Ok(scheme)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_gives_defaults() {
        let cfg = RunConfig::parse("").unwrap();
        assert_eq!(cfg.cfl, 0.1);
        assert_eq!(cfg.sensor_q, 10.0);
        assert_eq!(cfg.sensor_eps, 0.1);
        assert_eq!(cfg.delta, 1e-16);
        assert_eq!(cfg.theta, 0.1);
        assert_eq!(cfg.sensor_mode, SensorMode::Exponential);
        assert_eq!(cfg.integrator, TimeIntegrator::Ssprk3);
        assert_eq!(cfg.flux, FluxCore::Eckep);
    }

    #[test]
    fn overrides_apply() {
        let cfg = RunConfig::parse("cfl=0.2\nflux=eckep\nscheme=hes\n").unwrap();
        assert_eq!(cfg.cfl, 0.2);
        assert_eq!(cfg.flux, FluxCore::Eckep);
        assert_eq!(cfg.stabilization, Stabilization::Hes);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let cfg = RunConfig::parse("# full config\n\ncfl = 0.25  # tight\n").unwrap();
        assert_eq!(cfg.cfl, 0.25);
    }

    #[test]
    fn unknown_key_names_key_and_line() {
        let err = RunConfig::parse("cfl=0.1\nflux=unknown\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("unknown"), "{msg}");

        let err = RunConfig::parse("wibble=3\n").unwrap_err();
        assert!(err.to_string().contains("wibble"));
    }

    #[test]
    fn scheme_validation_runs() {
        let mut cfg = RunConfig::default();
        cfg.flux = FluxCore::Llf;
        cfg.stabilization = Stabilization::Es;
        assert!(cfg.scheme().is_err(), "ES over LLF must be rejected");
        cfg.stabilization = Stabilization::None;
        assert!(cfg.scheme().is_ok());
    }
}
