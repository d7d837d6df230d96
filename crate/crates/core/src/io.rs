//! File formats.
//!
//! Kernels are JSON objects `{"points": [...], "values": [[...], ...]}` with an
//! optional `"measure": [...]`, or CSV with a header row of labels followed by
//! one row of values per point. Bridges are
//! `{"x_points": [...], "y_points": [...], "values": [[...], ...]}`.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bridge::{validate_bridge, Bridge};
use crate::error::{Error, Result};
use crate::kernel::{Kernel, PointSet};
use crate::measure::MeasuredSpace;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelFile {
    pub points: Vec<String>,
    pub values: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<Vec<f64>>,
}

impl KernelFile {
    pub fn from_kernel(k: &Kernel, m: Option<&MeasuredSpace>) -> Self {
        Self {
            points: k.points().labels().to_vec(),
            values: k.to_rows(),
            measure: m.map(|m| m.weights().to_vec()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BridgeFile {
    pub x_points: Vec<String>,
    pub y_points: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl BridgeFile {
    pub fn from_bridge(b: &Bridge) -> Self {
        Self {
            x_points: b.x_points().labels().to_vec(),
            y_points: b.y_points().labels().to_vec(),
            values: b.to_rows(),
        }
    }
}

/// A kernel with its measure; the measure defaults to uniform weights.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedKernel {
    pub kernel: Kernel,
    pub space: MeasuredSpace,
    /// Whether the file carried explicit weights.
    pub explicit_measure: bool,
}

/// Reads a path, or standard input for `-`.
pub fn read_source(path: &Path, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        stdin.read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    Ok(text)
}

fn parse_csv(text: &str) -> Result<KernelFile> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let points: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let row = record
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("`{s}`: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        values.push(row);
    }
    Ok(KernelFile {
        points,
        values,
        measure: None,
    })
}

pub fn parse_kernel_file(text: &str) -> Result<KernelFile> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    } else {
        parse_csv(text)
    }
}

pub fn load_kernel(file: KernelFile) -> Result<LoadedKernel> {
    let points = PointSet::new(file.points)?;
    let kernel = Kernel::new(points.clone(), file.values)?;
    let explicit_measure = file.measure.is_some();
    let space = match file.measure {
        Some(w) => MeasuredSpace::new(points, w)?,
        None => MeasuredSpace::uniform(points),
    };
    Ok(LoadedKernel {
        kernel,
        space,
        explicit_measure,
    })
}

pub fn parse_kernel(text: &str) -> Result<LoadedKernel> {
    load_kernel(parse_kernel_file(text)?)
}

pub fn parse_bridge(text: &str, tol: f64) -> Result<Bridge> {
    let file: BridgeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    validate_bridge(
        file.values,
        PointSet::new(file.x_points)?,
        PointSet::new(file.y_points)?,
        tol,
    )
}

/// Canonical text form: keys sorted, two-space indentation, trailing newline.
/// Parsing the output and emitting it again reproduces it byte for byte.
pub fn emit<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("reports serialize to JSON");
    emit_value(&v)
}

pub fn emit_value(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize to JSON");
    s.push('\n');
    s
}
