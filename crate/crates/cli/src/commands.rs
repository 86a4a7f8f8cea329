use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use aperiodic_core::generators::{FibonacciMethod, SourceSpec};
use aperiodic_core::geometry::{enumerate_cluster_classes, Cluster, Point, Region, SharedSource};
use aperiodic_core::hull::{build_partition_1d_with_scan, hull_metric, DEFAULT_PARTITION_SCAN};
use aperiodic_core::io;
use aperiodic_core::spectra::{autocorr_direct, autocorr_from_frequencies, peak_scan, AutocorrelationMeasure};
use aperiodic_core::statistics::{default_offset_span, estimate_frequency, halton_offsets, VanHoveSpec};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::CliError;

/// Output directory plus the list of files written so far.
pub struct Outputs {
    dir: PathBuf,
    pub files: Vec<String>,
    pub plot_data: bool,
}

impl Outputs {
    pub fn new(dir: &Path, plot_data: bool) -> Result<Outputs, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            files: Vec::new(),
            plot_data,
        })
    }

    pub fn create(&mut self, name: &str) -> Result<BufWriter<File>, CliError> {
        let path = self.dir.join(name);
        let f = File::create(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.files.push(name.to_string());
        Ok(BufWriter::new(f))
    }

    pub fn json(&mut self, name: &str, v: &Value) -> Result<(), CliError> {
        let mut w = self.create(name)?;
        serde_json::to_writer_pretty(&mut w, v).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(w).map_err(|e| CliError::Io(e.to_string()))?;
        w.flush().map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn plot(&mut self, name: &str, header: &[&str], rows: &[Vec<f64>]) -> Result<(), CliError> {
        if self.plot_data {
            let mut w = self.create(name)?;
            io::write_plot_data(&mut w, header, rows)?;
            w.flush().map_err(|e| CliError::Io(e.to_string()))?;
        }
        Ok(())
    }
}

fn source(cfg: &mut RunConfig) -> Result<SharedSource, CliError> {
    let spec = cfg.source.get_or_insert(SourceSpec::Fibonacci {
        method: FibonacciMethod::default(),
        shift: None,
    });
    Ok(spec.build(cfg.seed)?)
}

fn schedule(cfg: &mut RunConfig, dim: usize, default: &[f64]) -> Result<VanHoveSpec, CliError> {
    let s = cfg.schedule.get_or_insert_with(|| default.to_vec()).clone();
    Ok(VanHoveSpec::new(dim, s)?)
}

fn cube(dim: usize, lo: f64, hi: f64) -> Region {
    Region::rect(&vec![lo; dim], &vec![hi; dim])
}

pub fn generate(cfg: &mut RunConfig, out: &mut Outputs) -> Result<String, CliError> {
    let src = source(cfg)?;
    let [lo, hi] = *cfg.region.get_or_insert([0.0, 100.0]);
    let patch = src.window(&cube(src.dim(), lo, hi))?;
    let mut w = out.create("points.json")?;
    io::write_point_set(&mut w, &patch)?;
    w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    let rows: Vec<Vec<f64>> = patch
        .support_sorted()
        .iter()
        .map(|(p, c)| p.to_f64s().into_iter().chain([*c as f64]).collect())
        .collect();
    out.plot("points.dat", &["coords", "color"], &rows)?;
    Ok(format!("{} points in [{lo}, {hi}]", patch.len()))
}

pub fn classes(cfg: &mut RunConfig, out: &mut Outputs) -> Result<String, CliError> {
    let src = source(cfg)?;
    let radius = *cfg.radius.get_or_insert(3.0);
    let scan = *cfg.scan.get_or_insert(500.0);
    let table = enumerate_cluster_classes(src.as_ref(), radius, &Region::cube(src.dim(), scan))?;
    let list: Vec<Value> = table
        .representatives
        .iter()
        .zip(&table.counts)
        .map(|(c, n)| json!({ "cluster": io::cluster_json(c), "count": n }))
        .collect();
    out.json("classes.json", &json!({ "radius": radius, "scan": scan, "classes": list }))?;
    Ok(format!("{} classes at radius {radius}", list.len()))
}

pub fn freq(cfg: &mut RunConfig, out: &mut Outputs) -> Result<String, CliError> {
    let src = source(cfg)?;
    let dim = src.dim();
    let spec = schedule(cfg, dim, &VanHoveSpec::default_for(dim).schedule)?;
    let pts = cfg.cluster.get_or_insert_with(|| vec![(0.0, 0)]).clone();
    if dim != 1 {
        return Err(CliError::Config("config clusters are one-dimensional".into()));
    }
    let p = Cluster::from_colored(src.colors(), pts.iter().map(|(x, c)| (*c, Point::x(*x))));
    if pts.iter().any(|(_, c)| *c >= src.colors()) {
        return Err(CliError::Config(format!("cluster colors must be below {}", src.colors())));
    }
    let count = *cfg.offsets.get_or_insert(10);
    let span = match cfg.offset_span {
        Some(s) => s,
        None => *cfg.offset_span.insert(default_offset_span(src.as_ref())?),
    };
    let est = estimate_frequency(src.as_ref(), &p, &spec, &halton_offsets(count.max(1), dim, span))?;
    let mut w = out.create("freq.csv")?;
    io::write_frequency_csv(&mut w, &est.rows)?;
    drop(w);
    out.json(
        "freq.json",
        &json!({
            "value": est.value,
            "uniformity_gap": est.uniformity_gap,
            "cauchy_gaps": est.cauchy_gaps,
            "per_n": est.per_n,
        }),
    )?;
    let rows: Vec<Vec<f64>> = est.per_n.iter().map(|(n, v)| vec![*n, *v]).collect();
    out.plot("freq.dat", &["n", "ratio"], &rows)?;
    Ok(format!("frequency {:.6}, uniformity gap {:.2e}", est.value, est.uniformity_gap))
}

pub fn autocorr(cfg: &mut RunConfig, out: &mut Outputs) -> Result<String, CliError> {
    let src = source(cfg)?;
    let w = cfg.weights_for(src.colors())?;
    let radius = *cfg.radius.get_or_insert(10.0);
    let spec = schedule(cfg, src.dim(), &[1000.0])?;
    let method = cfg.method.get_or_insert_with(|| "both".into()).clone();
    let mut measures: Vec<AutocorrelationMeasure> = Vec::new();
    if method == "frequency" || method == "both" {
        measures.push(autocorr_from_frequencies(src.as_ref(), &w, radius, &spec)?);
    }
    if method == "direct" || method == "both" {
        measures.push(autocorr_direct(src.as_ref(), &w, radius, &spec)?);
    }
    if measures.is_empty() {
        return Err(CliError::Config(format!("unknown method {method:?}")));
    }
    let refs: Vec<&AutocorrelationMeasure> = measures.iter().collect();
    let mut f = out.create("autocorr.csv")?;
    io::write_autocorr_csv(&mut f, &refs)?;
    drop(f);
    let max_diff = (measures.len() == 2).then(|| measures[0].max_diff(&measures[1]));
    out.json(
        "autocorr.json",
        &json!({
            "radius": radius,
            "n": spec.largest(),
            "support": measures[0].entries.len(),
            "hermitian_defect": measures[0].hermitian_defect(),
            "max_route_difference": max_diff,
        }),
    )?;
    let rows: Vec<Vec<f64>> = measures[0]
        .entries
        .iter()
        .map(|(t, c)| t.to_f64s().into_iter().chain([c.re, c.im]).collect())
        .collect();
    out.plot("autocorr.dat", &["t", "re", "im"], &rows)?;
    Ok(match max_diff {
        Some(d) => format!("{} coefficients, route difference {d:.2e}", measures[0].entries.len()),
        None => format!("{} coefficients", measures[0].entries.len()),
    })
}

pub fn diffract(cfg: &mut RunConfig, out: &mut Outputs) -> Result<String, CliError> {
    let src = source(cfg)?;
    let w = cfg.weights_for(src.colors())?;
    let [klo, khi] = *cfg.k_range.get_or_insert([-2.0, 2.0]);
    let spec = schedule(cfg, src.dim(), &[1000.0, 2000.0])?;
    let est = peak_scan(src.as_ref(), &w, (klo, khi), cfg.resolution, &spec)?;
    cfg.resolution = Some(est.resolution);
    let mut f = out.create("diffraction.csv")?;
    io::write_diffraction_csv(&mut f, &est)?;
    drop(f);
    let peaks: Vec<Value> = est
        .retained()
        .map(|e| json!({ "k": e.k, "intensity": e.intensity }))
        .collect();
    out.json(
        "diffraction.json",
        &json!({
            "n1": est.n1,
            "n2": est.n2,
            "threshold": est.threshold,
            "noise_floor": est.noise_floor,
            "candidates": est.entries.len(),
            "peaks": peaks,
        }),
    )?;
    let rows: Vec<Vec<f64>> = est
        .entries
        .iter()
        .map(|e| vec![e.k, e.intensity, if e.retained { 1.0 } else { 0.0 }])
        .collect();
    out.plot("diffraction.dat", &["k", "intensity", "retained"], &rows)?;
    Ok(format!("{} candidates, {} retained peaks", est.entries.len(), peaks.len()))
}

pub fn metric(cfg: &mut RunConfig, out: &mut Outputs) -> Result<String, CliError> {
    let a = source(cfg)?;
    let other = cfg
        .other
        .clone()
        .ok_or_else(|| CliError::Config("metric needs an `other` source".into()))?;
    let b = other.build(cfg.seed)?;
    let eps_grid = *cfg.eps_grid.get_or_insert(1e-3);
    let m = hull_metric(a.as_ref(), b.as_ref(), eps_grid)?;
    out.json("metric.json", &json!({ "lower": m.lower, "upper": m.upper, "eps_grid": m.eps_grid }))?;
    Ok(format!("distance in [{:.6}, {:.6}]", m.lower, m.upper))
}

pub fn partition(cfg: &mut RunConfig, out: &mut Outputs) -> Result<String, CliError> {
    let src = source(cfg)?;
    let radius = *cfg.radius.get_or_insert(3.0);
    let delta = *cfg.delta.get_or_insert(0.2);
    let scan = *cfg.scan.get_or_insert(DEFAULT_PARTITION_SCAN);
    let n = *schedule(cfg, 1, &[2000.0])?.schedule.last().expect("nonempty");
    let part = build_partition_1d_with_scan(src.as_ref(), radius, delta, scan)?;
    out.json("partition.json", &io::partition_json(&part))?;
    let mass = part.mass(src.as_ref(), n)?;
    out.json(
        "partition_summary.json",
        &json!({
            "radius": radius,
            "delta": delta,
            "classes": part.ball_classes.len(),
            "cells": part.cells.len(),
            "total_length": part.total_length(),
            "mass": mass,
            "n": n,
        }),
    )?;
    Ok(format!("{} cells from {} classes, mass {mass:.6}", part.cells.len(), part.ball_classes.len()))
}
