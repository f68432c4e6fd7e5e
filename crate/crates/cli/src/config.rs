use std::path::PathBuf;

use lapgeo::{FdOrder, Settings, Tolerances};
use serde::Serialize;

use crate::GlobalFlags;

/// Effective settings of one run. Echoed in every report, except the worker count,
/// which cannot change any result.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub fd_order: u32,
    pub trim: Option<usize>,
    pub tolerances: Tolerances,
    #[serde(skip)]
    pub workers: Option<usize>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_flags(f: &GlobalFlags, subcommand: &str) -> Result<Self, String> {
        FdOrder::from_int(f.fd_order).ok_or_else(|| format!("--fd-order must be 2 or 4, got {}", f.fd_order))?;
        let mut tol = Tolerances::default();
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut tol.const_tol, f.tol_const);
        set(&mut tol.fit_tol, f.tol_fit);
        set(&mut tol.ode_tol, f.tol_ode);
        set(&mut tol.amp_tol, f.tol_amp);
        set(&mut tol.poly_tol, f.tol_poly);
        tol.validate()?;
        if f.workers == Some(0) {
            return Err("--workers must be at least 1".into());
        }
        Ok(RunConfig {
            subcommand: subcommand.to_string(),
            fd_order: f.fd_order,
            trim: f.trim,
            tolerances: tol,
            workers: f.workers,
            out: f.out.clone(),
        })
    }

    pub fn settings(&self) -> Settings {
        Settings { order: FdOrder::from_int(self.fd_order).unwrap_or(FdOrder::Fourth), trim: self.trim, tol: self.tolerances.clone() }
    }
}
