//! Scheme configuration shared by the 1D and 2D drivers.

use crate::fluxes::{DiffusionGuard, FluxCore};
use crate::hybrid::SensorParams;
use crate::stabilization::SonicFix;
use crate::Error;

/// Interface stabilization wrapped around the core flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stabilization {
    /// Bare core flux.
    None,
    /// Core flux plus Rankine-Hugoniot scalar diffusion everywhere.
    Es,
    /// Sensor-blended: RH diffusion where the shock sensor fires,
    /// fourth-order background diffusion elsewhere.
    Hes,
}

impl std::str::FromStr for Stabilization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" | "ec" => Ok(Stabilization::None),
            "es" => Ok(Stabilization::Es),
            "hes" => Ok(Stabilization::Hes),
            other => Err(Error::Config(format!("unknown scheme \"{other}\""))),
        }
    }
}

impl Stabilization {
    pub fn name(self) -> &'static str {
        match self {
            Stabilization::None => "none",
            Stabilization::Es => "ES",
            Stabilization::Hes => "HES",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeIntegrator {
    Ssprk2,
    Ssprk3,
}

impl std::str::FromStr for TimeIntegrator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ssprk2" => Ok(TimeIntegrator::Ssprk2),
            "ssprk3" => Ok(TimeIntegrator::Ssprk3),
            other => Err(Error::Config(format!("unknown integrator \"{other}\""))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SchemeConfig {
    pub flux: FluxCore,
    pub stabilization: Stabilization,
    pub cfl: f64,
    pub integrator: TimeIntegrator,
    pub sensor: SensorParams,
    pub guard: DiffusionGuard,
    pub fix: SonicFix,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            flux: FluxCore::Eckep,
            stabilization: Stabilization::Es,
            cfl: 0.1,
            integrator: TimeIntegrator::Ssprk3,
            sensor: SensorParams::default(),
            guard: DiffusionGuard::default(),
            fix: SonicFix::default(),
        }
    }
}

impl SchemeConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::Config(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if matches!(self.stabilization, Stabilization::Es | Stabilization::Hes)
            && !self.flux.is_entropy_conservative()
        {
            return Err(Error::Config(format!(
                "{} stabilization requires an entropy-conservative core, got {}",
                self.stabilization.name(),
                self.flux.name()
            )));
        }
        if !(self.sensor.q > 0.0) || !(self.sensor.eps > 0.0) {
            return Err(Error::Config("sensor q and eps must be positive".into()));
        }
        if !(self.guard.delta > 0.0) || !(self.fix.theta > 0.0) {
            return Err(Error::Config("delta and theta must be positive".into()));
        }
        Ok(())
    }

    pub fn with_flux(mut self, flux: FluxCore) -> Self {
        self.flux = flux;
        self
    }

    pub fn with_stabilization(mut self, st: Stabilization) -> Self {
        self.stabilization = st;
        self
    }

    pub fn with_cfl(mut self, cfl: f64) -> Self {
        self.cfl = cfl;
        self
    }

    pub fn with_integrator(mut self, ti: TimeIntegrator) -> Self {
        self.integrator = ti;
        self
    }
}
