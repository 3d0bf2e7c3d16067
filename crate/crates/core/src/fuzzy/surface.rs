use std::fmt::Write as _;

use rayon::prelude::*;

use super::inference::TNorm;
use super::rules::RuleBase;
use crate::error::{Error, Result};

/// Crisp outputs over a two-input sweep. `z` is row-major with one row per
/// `y` value.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceGrid {
    pub x_values: Vec<f64>,
    pub y_values: Vec<f64>,
    pub z: Vec<f64>,
}

/// A step along one axis where the output decreased.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityViolation {
    pub axis: Axis,
    pub row: usize,
    pub col: usize,
    pub drop: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl SurfaceGrid {
    pub fn resolution(&self) -> usize {
        self.x_values.len()
    }

    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.z[row * self.x_values.len() + col]
    }

    /// `x,y,z` header followed by one row per cell, six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.z.len() * 32 + 6);
        out.push_str("x,y,z\n");
        for (row, y) in self.y_values.iter().enumerate() {
            for (col, x) in self.x_values.iter().enumerate() {
                let _ = writeln!(out, "{x:.6},{y:.6},{:.6}", self.at(row, col));
            }
        }
        out
    }

    /// Every place where stepping up one axis lowers the output.
    pub fn monotonicity_violations(&self) -> Vec<MonotonicityViolation> {
        let k = self.resolution();
        let mut found = Vec::new();
        for row in 0..k {
            for col in 0..k {
                let here = self.at(row, col);
                if col + 1 < k && self.at(row, col + 1) < here {
                    found.push(MonotonicityViolation {
                        axis: Axis::X,
                        row,
                        col,
                        drop: here - self.at(row, col + 1),
                    });
                }
                if row + 1 < k && self.at(row + 1, col) < here {
                    found.push(MonotonicityViolation {
                        axis: Axis::Y,
                        row,
                        col,
                        drop: here - self.at(row + 1, col),
                    });
                }
            }
        }
        found
    }
}

/// Sweeps inputs `x_index` and `y_index` across their domains with
/// `resolution` points each, holding the others at `fixed` (domain midpoints
/// when `None`). `fixed`, when given, has one entry per input; the entries for
/// the swept inputs are ignored.
pub fn surface_grid(
    rb: &RuleBase,
    x_index: usize,
    y_index: usize,
    fixed: Option<&[f64]>,
    resolution: usize,
) -> Result<SurfaceGrid> {
    surface_grid_with(rb, x_index, y_index, fixed, resolution, TNorm::default())
}

pub fn surface_grid_with(
    rb: &RuleBase,
    x_index: usize,
    y_index: usize,
    fixed: Option<&[f64]>,
    resolution: usize,
    tnorm: TNorm,
) -> Result<SurfaceGrid> {
    let arity = rb.arity();
    for index in [x_index, y_index] {
        if index >= arity {
            return Err(Error::IndexOutOfRange { index, arity });
        }
    }
    if x_index == y_index {
        return Err(Error::InvalidParameter {
            name: "y_index",
            value: y_index as f64,
            reason: "must differ from x_index",
        });
    }
    if resolution < 2 {
        return Err(Error::InvalidParameter {
            name: "resolution",
            value: resolution as f64,
            reason: "must be at least 2",
        });
    }
    let base: Vec<f64> = match fixed {
        Some(values) if values.len() != arity => {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: values.len(),
            })
        }
        Some(values) => values.to_vec(),
        None => rb.inputs().iter().map(|v| v.domain().midpoint()).collect(),
    };

    let x_values: Vec<f64> = rb.inputs()[x_index].domain().linspace(resolution).collect();
    let y_values: Vec<f64> = rb.inputs()[y_index].domain().linspace(resolution).collect();

    let rows: Vec<Vec<f64>> = y_values
        .par_iter()
        .map(|&y| {
            let mut point = base.clone();
            point[y_index] = y;
            x_values
                .iter()
                .map(|&x| {
                    point[x_index] = x;
                    rb.infer_with(&point, tnorm).map(|r| r.crisp)
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    Ok(SurfaceGrid {
        x_values,
        y_values,
        z: rows.into_iter().flatten().collect(),
    })
}
