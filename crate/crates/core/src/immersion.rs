//! Sampled immersions and the shared CSV grid format.

use std::io::{BufRead, BufReader, Read, Write};

use crate::error::{GeoError, Result};
use crate::grid::{Axis, Grid};
use crate::scalar::{norm, Real};

/// Points of `x: M -> E^m` on a uniform grid, row-major over grid indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledImmersion<T> {
    grid: Grid<T>,
    ambient: usize,
    points: Vec<T>,
    pub label: String,
}

impl<T: Real> SampledImmersion<T> {
    pub fn new(grid: Grid<T>, ambient: usize, points: Vec<T>, label: impl Into<String>) -> Result<Self> {
        if ambient < 2 {
            return Err(GeoError::Input(format!("ambient dimension must be at least 2, got {ambient}")));
        }
        if points.len() != grid.len() * ambient {
            return Err(GeoError::Input(format!(
                "expected {} coordinates ({} samples x {ambient}), got {}",
                grid.len() * ambient,
                grid.len(),
                points.len()
            )));
        }
        if let Some(i) = points.iter().position(|v| !v.is_finite()) {
            return Err(GeoError::Input(format!("non-finite coordinate at sample {}", i / ambient)));
        }
        Ok(SampledImmersion { grid, ambient, points, label: label.into() })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn<F>(grid: Grid<T>, ambient: usize, label: impl Into<String>, f: F) -> Result<Self>
    where
        F: Fn(&[T]) -> Vec<T>,
    {
        let mut points = Vec::with_capacity(grid.len() * ambient);
        for i in 0..grid.len() {
            let p = f(&grid.params(i));
            if p.len() != ambient {
                return Err(GeoError::Input(format!("generator returned {} coordinates, expected {ambient}", p.len())));
            }
            points.extend(p);
        }
        Self::new(grid, ambient, points, label)
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn intrinsic_dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i * self.ambient..(i + 1) * self.ambient]
    }

    /// Largest point norm.
    pub fn scale(&self) -> T {
        self.points.chunks(self.ambient).map(norm).fold(T::zero(), T::max)
    }

    /// Largest distance from the centroid over the given samples; the natural length unit.
    pub fn extent(&self, samples: &[usize]) -> T {
        let m = self.ambient;
        let mut c = vec![T::zero(); m];
        for &i in samples {
            for k in 0..m {
                c[k] = c[k] + self.point(i)[k];
            }
        }
        let cnt = T::of(samples.len().max(1));
        for v in c.iter_mut() {
            *v = *v / cnt;
        }
        samples
            .iter()
            .map(|&i| norm(&crate::scalar::sub(self.point(i), &c)))
            .fold(T::zero(), T::max)
    }

    pub fn scaled(&self, c: T) -> Self {
        SampledImmersion {
            grid: self.grid.clone(),
            ambient: self.ambient,
            points: self.points.iter().map(|&v| v * c).collect(),
            label: self.label.clone(),
        }
    }

    /// Applies `p -> R p + b` with `R` row-major `m×m`.
    pub fn transformed(&self, r: &[T], b: &[T]) -> Self {
        let m = self.ambient;
        let mut pts = Vec::with_capacity(self.points.len());
        for p in self.points.chunks(m) {
            for i in 0..m {
                let mut acc = b[i];
                for j in 0..m {
                    acc = acc + r[i * m + j] * p[j];
                }
                pts.push(acc);
            }
        }
        SampledImmersion { grid: self.grid.clone(), ambient: m, points: pts, label: self.label.clone() }
    }

    /// Same grid, new point field.
    pub fn with_points(&self, ambient: usize, points: Vec<T>, label: impl Into<String>) -> Result<Self> {
        Self::new(self.grid.clone(), ambient, points, label)
    }

    pub fn cast<U: Real>(&self) -> SampledImmersion<U> {
        SampledImmersion {
            grid: self.grid.cast(),
            ambient: self.ambient,
            points: self.points.iter().map(|&v| U::lit(v.f64())).collect(),
            label: self.label.clone(),
        }
    }

    /// Writes the CSV grid format.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut w = std::io::BufWriter::new(w);
        let g = &self.grid;
        let join = |f: &dyn Fn(&Axis<T>) -> String, sep: &str| g.axes().iter().map(f).collect::<Vec<_>>().join(sep);
        writeln!(
            w,
            "# lapgeo-grid v1 n={} m={} shape={} periodic={} domain={} label={}",
            g.dim(),
            self.ambient,
            join(&|a| a.count.to_string(), ","),
            join(&|a| if a.periodic { "1".into() } else { "0".into() }, ","),
            join(&|a| format!("{:e}:{:e}", a.start.f64(), a.end.f64()), ";"),
            self.label.replace('\n', " ")
        )?;
        let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        let mut row: Vec<String> = Vec::with_capacity(g.dim() + self.ambient);
        for i in 0..g.len() {
            row.clear();
            row.extend(g.params(i).iter().map(|v| format!("{:e}", v.f64())));
            row.extend(self.point(i).iter().map(|v| format!("{:e}", v.f64())));
            out.write_record(&row).map_err(|e| GeoError::Parse(e.to_string()))?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads the CSV grid format.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut reader = BufReader::new(r);
        let mut header = String::new();
        reader.read_line(&mut header)?;
        let header = header.trim_end_matches(['\n', '\r']);
        if header.is_empty() {
            return Err(GeoError::Parse("missing header line `# lapgeo-grid v1 ...`".into()));
        }
        let h = parse_header(header)?;
        let axes = (0..h.n)
            .map(|k| Axis::new(h.shape[k], T::lit(h.domain[k].0), T::lit(h.domain[k].1), h.periodic[k]))
            .collect::<Result<Vec<_>>>()?;
        let grid = Grid::new(axes)?;
        let mut rows = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(reader);
        let width = h.n + h.m;
        let mut points = Vec::with_capacity(grid.len() * h.m);
        let mut count = 0usize;
        for (line, rec) in rows.records().enumerate() {
            let rec = rec.map_err(|e| GeoError::Parse(format!("row {}: {e}", line + 1)))?;
            if rec.len() != width {
                return Err(GeoError::Parse(format!("row {}: expected {width} fields, got {}", line + 1, rec.len())));
            }
            let vals = rec
                .iter()
                .map(|f| f.parse::<f64>().map_err(|e| GeoError::Parse(format!("row {}: `{f}`: {e}", line + 1))))
                .collect::<Result<Vec<f64>>>()?;
            if count < grid.len() {
                let expect = grid.params(count);
                for k in 0..h.n {
                    let tol = 1e-9 * (h.domain[k].1 - h.domain[k].0).abs().max(1.0);
                    if (vals[k] - expect[k].f64()).abs() > tol {
                        return Err(GeoError::Parse(format!(
                            "row {}: parameter {} is {} but the grid places {}",
                            line + 1,
                            k,
                            vals[k],
                            expect[k]
                        )));
                    }
                }
            }
            points.extend(vals[h.n..].iter().map(|&v| T::lit(v)));
            count += 1;
        }
        if count != grid.len() {
            return Err(GeoError::Parse(format!("expected {} rows, found {count}", grid.len())));
        }
        SampledImmersion::new(grid, h.m, points, h.label)
    }
}

struct Header {
    n: usize,
    m: usize,
    shape: Vec<usize>,
    periodic: Vec<bool>,
    domain: Vec<(f64, f64)>,
    label: String,
}

fn parse_header(line: &str) -> Result<Header> {
    let rest = line
        .strip_prefix("# lapgeo-grid v1")
        .ok_or_else(|| GeoError::Parse(format!("missing header `# lapgeo-grid v1`, found `{line}`")))?;
    let (fields, label) = match rest.find("label=") {
        Some(i) => (&rest[..i], rest[i + 6..].to_string()),
        None => (rest, String::new()),
    };
    let mut n = None;
    let mut m = None;
    let mut shape = None;
    let mut periodic = None;
    let mut domain = None;
    let bad = |k: &str, v: &str| GeoError::Parse(format!("header field {k}=`{v}` is malformed"));
    for tok in fields.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| GeoError::Parse(format!("header token `{tok}`")))?;
        match k {
            "n" => n = Some(v.parse::<usize>().map_err(|_| bad(k, v))?),
            "m" => m = Some(v.parse::<usize>().map_err(|_| bad(k, v))?),
            "shape" => {
                shape = Some(v.split(',').map(|s| s.parse::<usize>()).collect::<std::result::Result<Vec<_>, _>>().map_err(|_| bad(k, v))?)
            }
            "periodic" => {
                periodic = Some(
                    v.split(',')
                        .map(|s| match s {
                            "0" => Ok(false),
                            "1" => Ok(true),
                            _ => Err(bad(k, v)),
                        })
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            "domain" => {
                domain = Some(
                    v.split(';')
                        .map(|iv| {
                            let (a, b) = iv.split_once(':').ok_or_else(|| bad(k, v))?;
                            Ok((a.parse::<f64>().map_err(|_| bad(k, v))?, b.parse::<f64>().map_err(|_| bad(k, v))?))
                        })
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            _ => return Err(GeoError::Parse(format!("unknown header field `{k}`"))),
        }
    }
    let miss = |k: &str| GeoError::Parse(format!("header is missing `{k}=`"));
    let h = Header {
        n: n.ok_or_else(|| miss("n"))?,
        m: m.ok_or_else(|| miss("m"))?,
        shape: shape.ok_or_else(|| miss("shape"))?,
        periodic: periodic.ok_or_else(|| miss("periodic"))?,
        domain: domain.ok_or_else(|| miss("domain"))?,
        label: label.trim().to_string(),
    };
    if h.n == 0 || h.n > 2 || h.shape.len() != h.n || h.periodic.len() != h.n || h.domain.len() != h.n {
        return Err(GeoError::Parse(format!("header lists inconsistent axis counts for n={}", h.n)));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize) -> SampledImmersion<f64> {
        let g = Grid::curve(n, 0.0, std::f64::consts::TAU, true).unwrap();
        SampledImmersion::from_fn(g, 2, "circle r=1", |p| vec![p[0].cos(), p[0].sin()]).unwrap()
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let c = circle(32);
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# lapgeo-grid v1 n=1 m=2 shape=32 periodic=1 domain="));
        assert_eq!(text.lines().count(), 33);
        let back = SampledImmersion::<f64>::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn empty_input_names_the_header() {
        let err = SampledImmersion::<f64>::read_csv(&b""[..]).unwrap_err();
        assert!(err.to_string().contains("header"));
    }

    #[test]
    fn wrong_row_count_is_rejected() {
        let c = circle(16);
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let cut: String = text.lines().take(10).map(|l| format!("{l}\n")).collect();
        assert!(SampledImmersion::<f64>::read_csv(cut.as_bytes()).is_err());
    }

    #[test]
    fn rejects_mismatched_point_count() {
        let g = Grid::curve(16, 0.0, 1.0, false).unwrap();
        assert!(SampledImmersion::new(g, 2, vec![0.0; 5], "").is_err());
    }
}
