//! File formats: point-set and partition JSON, CSV tables, gnuplot columns.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coord::{Coordinate, QuadField, QuadInt};
use crate::error::{Error, Result};
use crate::geometry::{Cluster, Patch, Point, Region};
use crate::hull::{HullPartition, Interval};
use crate::spectra::{AutocorrelationMeasure, DiffractionEstimate};
use crate::statistics::FrequencyRow;

/// On-disk form of a patch. Exact coordinates are `[a, b]` meaning `a + bτ`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointSetFile {
    pub dim: usize,
    pub m: usize,
    pub coords: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Value>,
    pub points: Vec<Vec<Value>>,
    pub region: Region,
}

fn field_json(f: QuadField) -> Value {
    match f.name() {
        Some(name) => json!({ "tau": name }),
        None => json!({ "p": f.p, "q": f.q }),
    }
}

fn field_from_json(v: &Value) -> Result<QuadField> {
    if let Some(name) = v.get("tau").and_then(Value::as_str) {
        return QuadField::from_name(name).ok_or_else(|| Error::Format(format!("unknown field {name}")));
    }
    let p = v.get("p").and_then(Value::as_i64);
    let q = v.get("q").and_then(Value::as_i64);
    match (p, q) {
        (Some(p), Some(q)) => QuadField::new(p as i16, q as i16).ok_or_else(|| Error::Format("degenerate field".into())),
        _ => Err(Error::Format(format!("bad field {v}"))),
    }
}

fn coord_json(c: Coordinate) -> Value {
    match c {
        Coordinate::Exact(q) => json!([q.a, q.b]),
        Coordinate::Float(x) => json!(x),
    }
}

fn coord_from_json(v: &Value, field: Option<QuadField>) -> Result<Coordinate> {
    if let Some(x) = v.as_f64() {
        return Ok(Coordinate::Float(x));
    }
    let pair = v.as_array().filter(|a| a.len() == 2);
    match (pair, field) {
        (Some(a), Some(f)) => {
            let (x, y) = (a[0].as_i64(), a[1].as_i64());
            match (x, y) {
                (Some(x), Some(y)) => Ok(Coordinate::Exact(QuadInt::new(x, y, f))),
                _ => Err(Error::Format(format!("bad exact coordinate {v}"))),
            }
        }
        (Some(_), None) => Err(Error::Format("exact coordinate without a field".into())),
        _ => Err(Error::Format(format!("bad coordinate {v}"))),
    }
}

impl PointSetFile {
    pub fn from_patch(patch: &Patch) -> PointSetFile {
        let pts = patch.support_sorted();
        let mut field = None;
        let mut exact = !pts.is_empty();
        for (p, _) in &pts {
            for c in p.coords() {
                match c {
                    Coordinate::Exact(q) => field = Some(q.field),
                    Coordinate::Float(_) => exact = false,
                }
            }
        }
        let points = pts
            .iter()
            .map(|(p, color)| {
                let mut row: Vec<Value> = p.coords().iter().map(|c| coord_json(*c)).collect();
                row.push(json!(color));
                row
            })
            .collect();
        PointSetFile {
            dim: patch.region().dim(),
            m: patch.colors(),
            coords: if exact { "exact" } else { "float" }.into(),
            field: field.map(field_json),
            points,
            region: patch.region().clone(),
        }
    }

    pub fn to_patch(&self) -> Result<Patch> {
        let field = self.field.as_ref().map(field_from_json).transpose()?;
        let mut parts = vec![Vec::new(); self.m];
        for row in &self.points {
            if row.len() != self.dim + 1 {
                return Err(Error::DimensionMismatch {
                    expected: self.dim + 1,
                    found: row.len(),
                });
            }
            let color = row[self.dim]
                .as_u64()
                .filter(|c| (*c as usize) < self.m)
                .ok_or_else(|| Error::Format(format!("bad color {}", row[self.dim])))?;
            let coords = row[..self.dim]
                .iter()
                .map(|v| coord_from_json(v, field))
                .collect::<Result<Vec<_>>>()?;
            parts[color as usize].push(Point::new(&coords));
        }
        Ok(Patch::new(self.region.clone(), Cluster::new(parts)))
    }
}

pub fn write_point_set(w: impl Write, patch: &Patch) -> Result<()> {
    serde_json::to_writer_pretty(w, &PointSetFile::from_patch(patch))?;
    Ok(())
}

pub fn read_point_set(r: impl Read) -> Result<Patch> {
    let f: PointSetFile = serde_json::from_reader(r)?;
    f.to_patch()
}

/// A cluster as `[[coord…, color], …]`.
pub fn cluster_json(c: &Cluster) -> Value {
    let pts: Vec<Value> = c
        .support()
        .map(|(color, p)| {
            let mut row: Vec<Value> = p.coords().iter().map(|x| coord_json(*x)).collect();
            row.push(json!(color));
            Value::Array(row)
        })
        .collect();
    Value::Array(pts)
}

#[derive(Serialize)]
struct CellRecord<'a> {
    class: usize,
    cluster: Value,
    interval: &'a Interval,
}

/// Partition as a JSON list of `{class, cluster, interval}`.
pub fn partition_json(p: &HullPartition) -> Value {
    let cells: Vec<CellRecord> = p
        .cells
        .iter()
        .map(|c| CellRecord {
            class: c.class,
            cluster: cluster_json(&c.cluster),
            interval: &c.window,
        })
        .collect();
    serde_json::to_value(cells).expect("serializable")
}

fn fmt_offset(o: &[f64]) -> String {
    o.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(";")
}

pub fn write_frequency_csv(w: impl Write, rows: &[FrequencyRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["n", "offset", "count", "ratio"])?;
    for r in rows {
        out.write_record([r.n.to_string(), fmt_offset(&r.offset), r.count.to_string(), r.ratio.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_autocorr_csv(w: impl Write, measures: &[&AutocorrelationMeasure]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["t", "re", "im", "method"])?;
    for g in measures {
        for (t, c) in &g.entries {
            out.write_record([
                fmt_offset(&t.to_f64s()),
                c.re.to_string(),
                c.im.to_string(),
                g.method.name().to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_diffraction_csv(w: impl Write, est: &DiffractionEstimate) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["k", "re", "im", "intensity", "n", "retained"])?;
    for e in &est.entries {
        out.write_record([
            e.k.to_string(),
            e.amplitude.re.to_string(),
            e.amplitude.im.to_string(),
            e.intensity.to_string(),
            e.n.to_string(),
            e.retained.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Whitespace-separated columns with a `#` header, as gnuplot reads them.
pub fn write_plot_data(mut w: impl Write, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    writeln!(w, "# {}", header.join(" "))?;
    for r in rows {
        let line: Vec<String> = r.iter().map(|x| format!("{x:.12e}")).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{CutProjectSource, LatticeSource};
    use crate::geometry::PointSource;

    #[test]
    fn exact_round_trip() {
        let src = CutProjectSource::fibonacci();
        let patch = src.window(&Region::interval(0.0, 30.0)).unwrap();
        let mut buf = Vec::new();
        write_point_set(&mut buf, &patch).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("\"exact\"") && text.contains("golden"));
        let back = read_point_set(buf.as_slice()).unwrap();
        assert!(back.cluster().approx_eq(patch.cluster()));
        assert!(back.cluster().parts()[0].iter().all(|p| p.is_exact()));
    }

    #[test]
    fn float_round_trip() {
        let src = LatticeSource::scaled_integers(0.5, 2).unwrap();
        let patch = src.window(&Region::interval(-3.0, 3.0)).unwrap();
        let mut buf = Vec::new();
        write_point_set(&mut buf, &patch).unwrap();
        let back = read_point_set(buf.as_slice()).unwrap();
        assert!(back.cluster().approx_eq(patch.cluster()));
        assert!(read_point_set(&b"{\"dim\":1}"[..]).is_err());
    }
}
