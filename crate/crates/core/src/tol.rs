//! Tolerance ladder and numerical settings.

use serde::{Deserialize, Serialize};

/// Accuracy order of the central finite-difference stencils.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FdOrder {
    Second,
    Fourth,
}

impl FdOrder {
    pub fn from_int(k: u32) -> Option<Self> {
        match k {
            2 => Some(FdOrder::Second),
            4 => Some(FdOrder::Fourth),
            _ => None,
        }
    }

    pub fn as_int(self) -> u32 {
        match self {
            FdOrder::Second => 2,
            FdOrder::Fourth => 4,
        }
    }

    /// Boundary samples per end of a non-periodic axis reached by one-sided stencils.
    pub fn band(self) -> usize {
        match self {
            FdOrder::Second => 1,
            FdOrder::Fourth => 2,
        }
    }
}

/// Every threshold a verdict may consult. Relative unless noted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative std below which a field counts as constant.
    pub const_tol: f64,
    /// Primitive and linear fits.
    pub fit_tol: f64,
    /// ODE-defined verdicts.
    pub ode_tol: f64,
    /// Spectral amplitude cut, relative to the largest component.
    pub amp_tol: f64,
    /// Minimal polynomial residual.
    pub poly_tol: f64,
    /// Discretization tolerance for identities that hold exactly in the continuum.
    pub fd_tol: f64,
    /// Metric determinant floor, relative to `scale^(2n)`.
    pub reg_eps: f64,
    /// Frame orthonormality.
    pub frame_tol: f64,
    /// Curvature floor, relative to the inverse length scale.
    pub rank_floor: f64,
    /// Singular value cut for the rank of dL, relative to the largest.
    pub rank_tol: f64,
    /// Principal angle and direction tests.
    pub angle_tol: f64,
    /// Gradient norms below this (relative) make direction tests vacuous.
    pub grad_floor: f64,
    /// Singular value cut for subspace dimensions.
    pub sv_tol: f64,
    /// Unit-speed test for spectral input.
    pub speed_tol: f64,
    /// First-variation agreement, relative to total area.
    pub var_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            const_tol: 1e-4,
            fit_tol: 1e-3,
            ode_tol: 1e-5,
            amp_tol: 1e-8,
            poly_tol: 1e-8,
            fd_tol: 1e-3,
            reg_eps: 1e-10,
            frame_tol: 1e-8,
            rank_floor: 1e-7,
            rank_tol: 1e-3,
            angle_tol: 1e-3,
            grad_floor: 1e-6,
            sv_tol: 1e-8,
            speed_tol: 1e-6,
            var_tol: 1e-4,
        }
    }
}

impl Tolerances {
    /// Looser constancy test for data that is itself a finite-difference product.
    pub fn finite_difference_input() -> Self {
        Tolerances { const_tol: 1e-2, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), String> {
        let all = [
            ("const_tol", self.const_tol),
            ("fit_tol", self.fit_tol),
            ("ode_tol", self.ode_tol),
            ("amp_tol", self.amp_tol),
            ("poly_tol", self.poly_tol),
            ("fd_tol", self.fd_tol),
            ("reg_eps", self.reg_eps),
            ("frame_tol", self.frame_tol),
            ("rank_floor", self.rank_floor),
            ("rank_tol", self.rank_tol),
            ("angle_tol", self.angle_tol),
            ("grad_floor", self.grad_floor),
            ("sv_tol", self.sv_tol),
            ("speed_tol", self.speed_tol),
            ("var_tol", self.var_tol),
        ];
        for (name, v) in all {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        Ok(())
    }
}

/// Stencil order, trim override and tolerances for one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub order: FdOrder,
    /// Overrides the stencil's boundary band on non-periodic axes.
    pub trim: Option<usize>,
    pub tol: Tolerances,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { order: FdOrder::Fourth, trim: None, tol: Tolerances::default() }
    }
}

impl Settings {
    /// Samples dropped at each end of a non-periodic axis for quantities built from x directly.
    pub fn band(&self) -> usize {
        self.trim.unwrap_or_else(|| self.order.band())
    }

    /// Band for quantities differentiated twice in sequence (dL, Delta alpha, curvature derivatives).
    pub fn nested_band(&self) -> usize {
        2 * self.band()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        Tolerances::default().validate().unwrap();
    }

    #[test]
    fn rejects_non_positive() {
        let t = Tolerances { fit_tol: 0.0, ..Default::default() };
        assert!(t.validate().is_err());
    }

    #[test]
    fn band_follows_order() {
        let s = Settings { order: FdOrder::Second, ..Default::default() };
        assert_eq!(s.band(), 1);
        assert_eq!(s.nested_band(), 2);
    }
}
