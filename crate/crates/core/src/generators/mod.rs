//! Analytic immersions and ODE-driven constructions.

mod catalogue;
pub mod ode;
pub mod params;

use serde::Serialize;

pub use catalogue::{entries, Construction, GeneratorEntry, Generated, OdeDiagnostics};
pub use ode::{curve_from_curvature, CurvatureLaw, ProfileLaw};
pub use params::{ParamKind, ParamSpec, Params, Resolved};

use crate::error::{GeoError, Result};
use crate::tol::Tolerances;

pub fn find(name: &str) -> Result<GeneratorEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| GeoError::UnknownGenerator(name.to_string()))
}

/// Samples a catalogue entry. `counts` gives the samples per axis; an empty slice uses the
/// entry's default grid.
pub fn generate(name: &str, params: &Params, counts: &[usize], tol: &Tolerances) -> Result<Generated> {
    let entry = find(name)?;
    let resolved = params::resolve(entry.params, params)?;
    let counts = if counts.is_empty() { entry.default_grid } else { counts };
    let label = format!("{}({})", entry.name, resolved.describe());
    (entry.build)(&resolved, counts, tol, &label)
}

#[derive(Serialize)]
struct EntryJson<'a> {
    name: &'a str,
    intrinsic_dim: usize,
    ambient_dim: usize,
    params: &'a [ParamSpec],
    default_grid: &'a [usize],
    domain: &'a str,
    construction: Construction,
    provenance: &'a str,
}

/// Catalogue listing as a JSON value.
pub fn catalogue_json() -> serde_json::Value {
    let list = entries();
    let items: Vec<_> = list
        .iter()
        .map(|e| EntryJson {
            name: e.name,
            intrinsic_dim: e.intrinsic_dim,
            ambient_dim: e.ambient_dim,
            params: e.params,
            default_grid: e.default_grid,
            domain: e.domain,
            construction: e.construction,
            provenance: e.provenance,
        })
        .collect();
    serde_json::to_value(items).expect("catalogue serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{mean_curvature_vector, regularity_violations};
    use crate::scalar::{norm, sub};
    use crate::tol::Settings;

    #[test]
    fn every_entry_is_regular_and_matches_its_closed_form() {
        let settings = Settings::default();
        for e in entries() {
            let g = generate(e.name, &Params::default(), &[], &settings.tol)
                .unwrap_or_else(|err| panic!("{}: {err}", e.name));
            let s = &g.immersion;
            assert_eq!(s.intrinsic_dim(), e.intrinsic_dim, "{}", e.name);
            assert!(regularity_violations(s, &settings).is_empty(), "{} irregular", e.name);
            let Some(lap) = &g.laplace else { continue };
            let f = mean_curvature_vector(s, &settings).unwrap();
            let fd = f.laplace_of_position();
            let m = s.ambient_dim();
            let scale = f.interior().iter().map(|&p| norm(&lap[p * m..(p + 1) * m])).fold(0.0, f64::max);
            let worst = f
                .interior()
                .iter()
                .map(|&p| norm(&sub(&lap[p * m..(p + 1) * m], &fd[p * m..(p + 1) * m])))
                .fold(0.0, f64::max);
            let rel = worst / scale.max(1.0 / s.extent(&f.interior()));
            println!("{:32} {:.3e}", e.name, rel);
            assert!(rel <= settings.tol.fd_tol, "{}: closed form off by {rel:e}", e.name);
        }
    }

    #[test]
    fn gamma_eps_starts_where_expected() {
        let g = generate("gamma_eps", &Params::parse("eps=6").unwrap(), &[64], &Tolerances::default()).unwrap();
        let p = g.immersion.point(0);
        assert!(p[0].abs() < 1e-15 && (p[1] + 1.0 / 3.0).abs() < 1e-15 && p[2].abs() < 1e-15);
    }

    #[test]
    fn unknown_names_and_bad_params_are_rejected() {
        let t = Tolerances::default();
        assert!(matches!(generate("trefoil", &Params::default(), &[], &t), Err(GeoError::UnknownGenerator(_))));
        let p = Params::parse("t_min=0").unwrap();
        assert!(matches!(generate("cone", &p, &[], &t), Err(GeoError::SingularDomain(_))));
        assert!(generate("circle", &Params::default(), &[64, 64], &t).is_err());
    }
}
