//! Browser bindings: figure, closest lattice points and the JSON report.

use vnspace::exact::{format_rational, parse_rational};
use vnspace::job::{self, JobSpec, LatticeSpec, NormSpec, Task};
use vnspace::lattice_enum::closest_lattice_points;
use vnspace::QVector;
use wasm_bindgen::prelude::*;

fn norm_spec(text: &str) -> NormSpec {
    if text.contains(',') {
        let forms = text
            .split(';')
            .filter(|r| !r.trim().is_empty())
            .map(|r| r.split(',').map(|c| c.trim().to_string()).collect())
            .collect();
        NormSpec::Forms { forms }
    } else {
        NormSpec::Named(text.trim().to_string())
    }
}

fn job_for(norm: &str, lattice: &str, dim: usize, seed: u32, tasks: Vec<Task>) -> JobSpec {
    JobSpec {
        dim,
        norm: norm_spec(norm),
        lattice: LatticeSpec::Named(lattice.trim().to_string()),
        adapted: "auto".into(),
        tasks,
        seed: seed.into(),
        trials: 20,
    }
}

pub fn figure(norm: &str, lattice: &str, seed: u32) -> Result<String, String> {
    let job = job_for(norm, lattice, 2, seed, vec![Task::Decompose, Task::Svg]);
    let out = job::run(&job).map_err(|e| e.to_string())?;
    Ok(out.svg.unwrap_or_default())
}

pub fn report(norm: &str, lattice: &str, dim: usize, seed: u32) -> Result<String, String> {
    let job = job_for(norm, lattice, dim, seed, Vec::new());
    Ok(job::run(&job).map_err(|e| e.to_string())?.report.to_json())
}

/// `{"distance": "p/q", "points": [[...], ...]}` for a point written `x1,x2,...`, in lattice coordinates.
pub fn closest(norm: &str, lattice: &str, point: &str) -> Result<String, String> {
    let coords = point
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let job = job_for(norm, lattice, coords.len(), 0, Vec::new());
    let problem = job::prepare(&job).map_err(|e| e.to_string())?;
    let (d, points) = closest_lattice_points(&QVector(coords), &problem.norm).map_err(|e| e.to_string())?;
    let points: Vec<Vec<String>> = points.iter().map(QVector::to_strings).collect();
    let points: Vec<String> = points
        .iter()
        .map(|p| {
            format!(
                "[{}]",
                p.iter().map(|c| format!("\"{c}\"")).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    Ok(format!(
        "{{\"distance\":\"{}\",\"points\":[{}]}}",
        format_rational(&d),
        points.join(",")
    ))
}

#[wasm_bindgen]
pub fn decompose_svg(norm: &str, lattice: &str, seed: u32) -> Result<String, JsValue> {
    figure(norm, lattice, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn report_json(norm: &str, lattice: &str, dim: usize, seed: u32) -> Result<String, JsValue> {
    report(norm, lattice, dim, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn closest_points(norm: &str, lattice: &str, point: &str) -> Result<String, JsValue> {
    closest(norm, lattice, point).map_err(|e| JsValue::from_str(&e))
}
