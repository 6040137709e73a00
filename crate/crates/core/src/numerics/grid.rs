use serde::Serialize;

use crate::error::{Error, Result};

const UNIFORMITY_TOL: f64 = 1e-12;

/// Uniformly spaced, strictly increasing sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    spacing: f64,
}

/// Compact summary of a grid for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridDescriptor {
    pub start: f64,
    pub end: f64,
    pub spacing: f64,
    pub len: usize,
}

impl Grid {
    /// `n` points from `start` to `end` inclusive.
    pub fn uniform(start: f64, end: f64, n: usize) -> Result<Self> {
        if !(start.is_finite() && end.is_finite()) || start >= end {
            return Err(Error::InvalidGrid(format!("need start < end, got [{start}, {end}]")));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
        }
        let h = (end - start) / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| start + i as f64 * h).collect();
        points[n - 1] = end;
        Ok(Self { points, spacing: h })
    }

    /// Points `start, start + step, ..., end`; the span must be a whole number of steps.
    pub fn with_step(start: f64, end: f64, step: f64) -> Result<Self> {
        let cells = checked_cells(end - start, step)?;
        Self::uniform(start, end, cells + 1)
    }

    /// Grid on `[-extent, extent]` with exact mirror symmetry about 0.
    pub fn symmetric(extent: f64, step: f64) -> Result<Self> {
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidGrid(format!("extent must be positive, got {extent}")));
        }
        let half = checked_cells(extent, step)?;
        let h = extent / half as f64;
        let points = (0..=2 * half)
            .map(|i| (i as f64 - half as f64) * h)
            .collect();
        Ok(Self { points, spacing: h })
    }

    /// Validate an arbitrary point list.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidGrid("need at least 2 points".into()));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidGrid("non-finite point".into()));
        }
        let n = points.len();
        let h = (points[n - 1] - points[0]) / (n - 1) as f64;
        for w in points.windows(2) {
            let d = w[1] - w[0];
            if d <= 0.0 {
                return Err(Error::InvalidGrid("points must be strictly increasing".into()));
            }
            if ((d - h) / h).abs() > UNIFORMITY_TOL * (1.0 + w[1].abs().max(w[0].abs()) / h) {
                return Err(Error::InvalidGrid("spacing is not uniform".into()));
            }
        }
        Ok(Self { points, spacing: h })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn start(&self) -> f64 {
        self.points[0]
    }

    pub fn end(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.points.len();
        (0..n).all(|i| self.points[i] == -self.points[n - 1 - i])
    }

    pub fn contains(&self, q: f64) -> bool {
        q >= self.start() && q <= self.end()
    }

    pub fn descriptor(&self) -> GridDescriptor {
        GridDescriptor {
            start: self.start(),
            end: self.end(),
            spacing: self.spacing,
            len: self.len(),
        }
    }
}

fn checked_cells(span: f64, step: f64) -> Result<usize> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
    }
    if !(span.is_finite() && span > 0.0) {
        return Err(Error::InvalidGrid(format!("span must be positive, got {span}")));
    }
    let cells = (span / step).round();
    if cells < 1.0 || ((cells * step - span) / span).abs() > 1e-9 {
        return Err(Error::InvalidGrid(format!(
            "span {span} is not a whole number of steps {step}"
        )));
    }
    Ok(cells as usize)
}
