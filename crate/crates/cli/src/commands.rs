use std::fs::File;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use lapgeo::frenet::{
    frenet, harmonic_lt_residual, homothety_functional, laplace_in_circle_check, laplace_in_line_residual,
    lg_metrics_curve, reparametrize_unit_speed, unit_speed_deviation,
};
use lapgeo::generators::{catalogue_json, generate, Params};
use lapgeo::geometry::{induced_metric, regularity_violations, total_area};
use lapgeo::laplace::{
    biharmonic_residual, classify_result, harmonic_mean_curvature_residual, image_fit, laplace_image_fit, laplace_map,
    lg_hypersurface, rank_profile, spherical_laplace, totally_real_check, LaplaceResult,
};
use lapgeo::report::{canonical, float};
use lapgeo::spectral::{
    conjugate_2type, decompose_closed_curve, decompose_flat_torus, minimal_polynomial_of, orthogonality_report,
    unit_speed_closed_curve, KType,
};
use lapgeo::{GeoError, Immersion, Result, Settings};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::Command;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Section {
    Metric,
    Laplace,
    Rank,
    Class,
    Lg,
    ImageFit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Homothetic,
    Conformal,
    HarmonicLt,
    Biharmonic,
    HarmonicMc,
    LgHomothetic,
    SphericalHarmonic,
    TotallyReal,
    LaplaceInLine,
    LaplaceInCircle,
}

pub fn run(command: Command, cfg: &RunConfig) -> Result<u8> {
    let settings = cfg.settings();
    match command {
        Command::Generate { name, params, grid } => cmd_generate(&name, &params, &grid, cfg),
        Command::Analyze { input, reports } => {
            let s = read(&input)?;
            let v = cmd_analyze(&s, &reports, &settings)?;
            emit(cfg, v).map(|_| 0)
        }
        Command::Check { property, input } => {
            let s = read(&input)?;
            let (holds, detail) = cmd_check(property, &s, &settings)?;
            let name = property.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            emit(cfg, json!({ "property": name, "holds": holds, "detail": detail, "source_label": s.label }))?;
            Ok(if holds { 0 } else { 1 })
        }
        Command::Spectrum { input, conjugate, minpoly } => {
            let s = read(&input)?;
            let v = cmd_spectrum(&s, conjugate.as_deref(), minpoly, &settings)?;
            emit(cfg, v).map(|_| 0)
        }
        Command::FitImage { input, points } => {
            let s = read(&input)?;
            let fit = if points {
                image_fit(s.points(), s.ambient_dim(), &settings)?
            } else {
                laplace_image_fit(&laplace_map(&s, &settings)?, &settings)?
            };
            let source = if points { "samples" } else { "laplace_image" };
            emit(cfg, json!({ "fitted": source, "fit": to_value(&fit)?, "source_label": s.label })).map(|_| 0)
        }
        Command::Catalogue => emit(cfg, catalogue_json()).map(|_| 0),
    }
}

fn read(path: &Path) -> Result<Immersion> {
    let f = File::open(path).map_err(|e| GeoError::Input(format!("{}: {e}", path.display())))?;
    Immersion::read_csv(f).map_err(|e| match e {
        GeoError::Parse(m) => GeoError::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn to_value<S: Serialize>(v: &S) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| GeoError::Input(e.to_string()))
}

/// Writes the report with the run configuration attached.
fn emit(cfg: &RunConfig, mut v: Value) -> Result<()> {
    if let Value::Object(ref mut o) = v {
        o.insert("config".into(), to_value(cfg)?);
    } else {
        v = json!({ "result": v, "config": to_value(cfg)? });
    }
    let text = serde_json::to_string_pretty(&canonical(v)).map_err(|e| GeoError::Input(e.to_string()))?;
    match &cfg.out {
        Some(p) => {
            let mut f = File::create(p)?;
            writeln!(f, "{text}")?;
        }
        None => stdout_line(&text)?,
    }
    Ok(())
}

/// Prints one line, treating a closed pipe as a normal end of output.
fn stdout_line(text: &str) -> Result<()> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn cmd_generate(name: &str, params: &[String], grid: &[usize], cfg: &RunConfig) -> Result<u8> {
    let mut p = Params::default();
    for item in params {
        p.extend(Params::parse(item)?);
    }
    let g = generate(name, &p, grid, &cfg.tolerances)?;
    match &cfg.out {
        Some(path) => {
            g.immersion.write_csv(File::create(path)?)?;
            let summary = json!({
                "generated": name,
                "label": g.immersion.label,
                "shape": g.immersion.grid().shape(),
                "ode": to_value(&g.ode)?,
                "path": path.display().to_string(),
                "config": to_value(cfg)?,
            });
            let text = serde_json::to_string_pretty(&canonical(summary)).map_err(|e| GeoError::Input(e.to_string()))?;
            stdout_line(&text)?;
        }
        None => match g.immersion.write_csv(std::io::stdout().lock()) {
            Err(GeoError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            other => other?,
        },
    }
    Ok(0)
}

/// Curve resampled by arclength when its parametrization is not unit speed.
fn unit_speed(c: &Immersion, settings: &Settings) -> Result<(Immersion, bool)> {
    if unit_speed_deviation(c) <= settings.tol.speed_tol {
        Ok((c.clone(), false))
    } else {
        Ok((reparametrize_unit_speed(c, settings)?, true))
    }
}

fn is_curve(s: &Immersion) -> bool {
    s.intrinsic_dim() == 1
}

fn section_result(r: Result<Value>) -> Value {
    r.unwrap_or_else(|e| json!({ "error": e.to_string() }))
}

fn cmd_analyze(s: &Immersion, reports: &[Section], settings: &Settings) -> Result<Value> {
    let all = [Section::Metric, Section::Laplace, Section::Rank, Section::Class, Section::Lg, Section::ImageFit];
    let wanted: &[Section] = if reports.is_empty() { &all } else { reports };
    let mut out = Map::new();
    out.insert("source_label".into(), json!(s.label));
    out.insert("intrinsic_dim".into(), json!(s.intrinsic_dim()));
    out.insert("ambient_dim".into(), json!(s.ambient_dim()));
    let needs_laplace = wanted.iter().any(|w| matches!(w, Section::Laplace | Section::Rank | Section::Class | Section::ImageFit));
    let lap: Option<LaplaceResult<f64>> = if needs_laplace { Some(laplace_map(s, settings)?) } else { None };
    for section in wanted {
        let (key, value) = match section {
            Section::Metric => ("metric", section_result(metric_section(s, settings))),
            Section::Laplace => {
                let r = lap.as_ref().expect("computed above");
                let v = json!({
                    "degenerate": r.degenerate,
                    "sup_norm": r.sup_norm,
                    "scale": r.scale,
                    "threshold": settings.tol.fd_tol * r.scale,
                    "trusted_samples": r.trusted().len(),
                });
                ("laplace", v)
            }
            Section::Rank => ("rank", to_value(&rank_profile(lap.as_ref().expect("computed above")))?),
            Section::Class => {
                let rep = classify_result(lap.as_ref().expect("computed above"), settings);
                let mut v = to_value(&rep)?;
                if let (Value::Object(o), Some(c)) = (&mut v, rep.constants.get("c")) {
                    o.insert("c".into(), float(*c));
                }
                ("class", v)
            }
            Section::Lg => ("lg", section_result(lg_section(s, settings))),
            Section::ImageFit => {
                ("image_fit", section_result(laplace_image_fit(lap.as_ref().expect("computed above"), settings).and_then(|f| to_value(&f))))
            }
        };
        out.insert(key.into(), value);
    }
    Ok(Value::Object(out))
}

fn metric_section(s: &Immersion, settings: &Settings) -> Result<Value> {
    let f = induced_metric(s, settings)?;
    let interior = f.interior();
    let dets: Vec<f64> = interior.iter().map(|&p| f.sqrt_det_g[p]).collect();
    let (lo, hi) = dets.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    Ok(json!({
        "samples": s.len(),
        "untrimmed_samples": interior.len(),
        "trim_band": f.trim_band,
        "regularity_violations": regularity_violations(s, settings).len(),
        "sqrt_det_g_min": lo,
        "sqrt_det_g_max": hi,
        "volume": total_area(s, settings)?,
    }))
}

fn lg_section(s: &Immersion, settings: &Settings) -> Result<Value> {
    if is_curve(s) {
        let (c, resampled) = unit_speed(s, settings)?;
        let f = frenet(&c, c.ambient_dim() - 1, settings)?;
        let r = lg_metrics_curve(&f, settings)?;
        Ok(json!({ "ratio": to_value(&r.ratio)?, "homothetic": r.homothetic, "conformal": r.conformal, "resampled": resampled }))
    } else {
        to_value(&lg_hypersurface(s, settings)?)
    }
}

fn cmd_check(property: Property, s: &Immersion, settings: &Settings) -> Result<(bool, Value)> {
    let curve_only = |name: &str| -> Result<()> {
        if is_curve(s) {
            Ok(())
        } else {
            Err(GeoError::Input(format!("{name} applies to curves only")))
        }
    };
    Ok(match property {
        Property::Homothetic | Property::Conformal => {
            if property == Property::Homothetic && is_curve(s) {
                let (c, resampled) = unit_speed(s, settings)?;
                let f = frenet(&c, c.ambient_dim() - 1, settings)?;
                let h = homothety_functional(&f, settings);
                (h.verdict.holds, json!({ "c": h.c, "constancy": to_value(&h.verdict)?, "resampled": resampled }))
            } else {
                let rep = classify_result(&laplace_map(s, settings)?, settings);
                let holds = if property == Property::Homothetic { rep.verdict.is_homothetic() } else { rep.verdict.is_conformal() };
                (holds, to_value(&rep)?)
            }
        }
        Property::HarmonicLt => {
            curve_only("harmonic-lt")?;
            let (c, resampled) = unit_speed(s, settings)?;
            let f = frenet(&c, c.ambient_dim() - 1, settings)?;
            let (_, v) = harmonic_lt_residual(&f, settings);
            (v.holds, json!({ "residual": to_value(&v)?, "resampled": resampled }))
        }
        Property::Biharmonic => {
            let r = biharmonic_residual(s, settings)?;
            (r.residual.holds, json!({ "residual": to_value(&r.residual)? }))
        }
        Property::HarmonicMc => {
            let r = harmonic_mean_curvature_residual(s, settings)?;
            (r.residual.holds, json!({ "residual": to_value(&r.residual)? }))
        }
        Property::LgHomothetic => {
            if is_curve(s) {
                let (c, resampled) = unit_speed(s, settings)?;
                let f = frenet(&c, c.ambient_dim() - 1, settings)?;
                let r = lg_metrics_curve(&f, settings)?;
                (r.homothetic, json!({ "ratio": to_value(&r.ratio)?, "resampled": resampled }))
            } else {
                let r = lg_hypersurface(s, settings)?;
                (r.verdict.is_homothetic(), to_value(&r)?)
            }
        }
        Property::SphericalHarmonic => {
            let r = spherical_laplace(s, settings)?;
            let mut v = to_value(&r)?;
            if let Value::Object(o) = &mut v {
                o.remove("energy_density");
            }
            (r.harmonic, v)
        }
        Property::TotallyReal => {
            let r = totally_real_check(s, settings)?;
            (r.totally_real_immersion && r.totally_real_laplace, to_value(&r)?)
        }
        Property::LaplaceInLine => {
            curve_only("laplace-in-line")?;
            let (c, resampled) = unit_speed(s, settings)?;
            let f = frenet(&c, (c.ambient_dim() - 1).min(3), settings)?;
            let r = laplace_in_line_residual(&c, &f, settings)?;
            let mut v = to_value(&r)?;
            if let Value::Object(o) = &mut v {
                o.insert("resampled".into(), json!(resampled));
            }
            (r.holds, v)
        }
        Property::LaplaceInCircle => {
            curve_only("laplace-in-circle")?;
            let r = laplace_in_circle_check(s, settings)?;
            (r.holds, to_value(&r)?)
        }
    })
}

fn cmd_spectrum(s: &Immersion, conjugate: Option<&Path>, minpoly: Option<usize>, settings: &Settings) -> Result<Value> {
    if !is_curve(s) {
        if conjugate.is_some() || minpoly.is_some() {
            return Err(GeoError::Input("--conjugate and --minpoly apply to curves only".into()));
        }
        let d = decompose_flat_torus(s, settings)?;
        let mut v = to_value(&d)?;
        if let (Value::Object(o), KType::Finite(_)) = (&mut v, d.k_type) {
            o.insert("orthogonality".into(), to_value(&orthogonality_report(&d, settings)?)?);
        }
        return Ok(v);
    }
    let (c, resampled) = unit_speed_closed_curve(s, settings)?;
    let d = decompose_closed_curve(&c, settings)?;
    let mut o = match to_value(&d)? {
        Value::Object(o) => o,
        _ => unreachable!("decompositions serialize to objects"),
    };
    o.insert("resampled".into(), json!(resampled));
    if let KType::Finite(_) = d.k_type {
        o.insert("orthogonality".into(), to_value(&orthogonality_report(&d, settings)?)?);
    }
    if let Some(k) = minpoly {
        o.insert("minimal_polynomial".into(), to_value(&minimal_polynomial_of(&d, k, settings))?);
    }
    if let Some(path) = conjugate {
        let cj = conjugate_2type(&d, settings)?;
        cj.curve.write_csv(File::create(path)?)?;
        o.insert(
            "conjugate".into(),
            json!({ "path": path.display().to_string(), "speed_deviation": cj.speed_deviation, "unit_speed": cj.unit_speed }),
        );
    }
    Ok(Value::Object(o))
}
