//! Deterministic CSV rendering of trajectories.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use gaussent_core::TrajectoryPoint;

use crate::error::{CliError, Result};

pub const TRAJECTORY_HEADER: &str = "tau,gamma_t,n1,n2,c1,c2,simon_value,log_negativity,purity";

/// Scientific notation with `precision` significant digits. Negative zero is
/// printed as zero.
pub fn format_float(value: f64, precision: usize) -> String {
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{:.*e}", precision.saturating_sub(1), value)
}

pub fn render_trajectory(points: &[TrajectoryPoint], gamma: f64, precision: usize) -> String {
    let mut out = String::with_capacity(points.len() * 16 * precision);
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for p in points {
        let row = [
            p.tau,
            gamma * p.t,
            p.elems.n1,
            p.elems.n2,
            p.elems.c1,
            p.elems.c2,
            p.simon_value,
            p.negativity,
            p.purity,
        ];
        let cells: Vec<String> = row.iter().map(|v| format_float(*v, precision)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Parses a rendered trajectory back into rows of numbers.
pub fn parse_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|line| {
            line.split(',')
                .map(|c| c.parse().unwrap_or(f64::NAN))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(format_float(2.885390081777927, 12), "2.88539008178e0");
        assert_eq!(format_float(-0.0, 4), "0.000e0");
        assert_eq!(format_float(1.0, 1), "1e0");
        assert_eq!(format_float(-1.25e-7, 3), "-1.25e-7");
    }

    #[test]
    fn round_trip_at_full_precision() {
        for v in [0.1, 1.0 / 3.0, 2.0_f64.exp(), -7.5e-13] {
            let s = format_float(v, 17);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }
}
