//! Physical parameters of a highway stretch, the station design vector and
//! the external demand inputs.
//!
//! Cells are indexed 1..=N in every public interface; storage is zero-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-cell physical parameters of a highway stretch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellParams {
    /// Cell length [km].
    pub length_km: f64,
    /// Free-flow speed [km/h].
    pub free_flow_speed: f64,
    /// Congestion wave speed [km/h].
    pub wave_speed: f64,
    /// Maximum cell throughput [veh/h].
    pub capacity: f64,
    /// Jam density [veh/km].
    pub jam_density: f64,
    /// Off-ramp split ratio, fraction of the cell outflow leaving via an
    /// off-ramp.
    #[serde(default)]
    pub offramp_ratio: f64,
}

impl CellParams {
    pub fn validate(&self, cell: usize) -> Result<()> {
        let positive = [
            ("length_km", self.length_km),
            ("free_flow_speed", self.free_flow_speed),
            ("wave_speed", self.wave_speed),
            ("capacity", self.capacity),
            ("jam_density", self.jam_density),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::domain(format!(
                    "cell {cell}: {name} must be strictly positive, got {value}"
                )));
            }
        }
        if !(0.0..1.0).contains(&self.offramp_ratio) {
            return Err(Error::domain(format!(
                "cell {cell}: offramp_ratio must be in [0, 1), got {}",
                self.offramp_ratio
            )));
        }
        if self.wave_speed >= self.free_flow_speed {
            return Err(Error::domain(format!(
                "cell {cell}: wave_speed ({}) must be below free_flow_speed ({})",
                self.wave_speed, self.free_flow_speed
            )));
        }
        Ok(())
    }
}

/// An ordered list of cells describing one highway stretch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, transparent)]
pub struct StretchParams {
    pub cells: Vec<CellParams>,
}

impl StretchParams {
    pub fn new(cells: Vec<CellParams>) -> Result<Self> {
        let stretch = StretchParams { cells };
        stretch.validate()?;
        Ok(stretch)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cells.len() < 2 {
            return Err(Error::domain(format!(
                "a stretch needs at least 2 cells, got {}",
                self.cells.len()
            )));
        }
        for (idx, cell) in self.cells.iter().enumerate() {
            cell.validate(idx + 1)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cell parameters by 1-based index.
    pub fn cell(&self, index: usize) -> &CellParams {
        &self.cells[index - 1]
    }

    /// Largest simulation step satisfying the CFL condition
    /// `T <= min_i(L_i / v_i)` [h].
    pub fn max_step_hours(&self) -> f64 {
        self.cells
            .iter()
            .map(|c| c.length_km / c.free_flow_speed)
            .fold(f64::INFINITY, f64::min)
    }

    /// Free-flow traversal time of the whole stretch [h].
    pub fn free_flow_travel_time(&self) -> f64 {
        self.cells
            .iter()
            .map(|c| c.length_km / c.free_flow_speed)
            .sum()
    }
}

/// The 4-component station design vector: access cell, exit cell, mean
/// service time and station split ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StationDesign {
    /// Cell whose off-ramp feeds the station (1-based).
    pub access_cell: usize,
    /// Cell where station traffic merges back (1-based).
    pub exit_cell: usize,
    /// Average time spent at the station [min].
    pub service_time_min: f64,
    /// Fraction of the access cell's outflow entering the station.
    pub station_ratio: f64,
}

impl StationDesign {
    pub fn new(
        access_cell: usize,
        exit_cell: usize,
        service_time_min: f64,
        station_ratio: f64,
    ) -> Self {
        StationDesign {
            access_cell,
            exit_cell,
            service_time_min,
            station_ratio,
        }
    }

    pub fn service_time_hours(&self) -> f64 {
        self.service_time_min / 60.0
    }

    /// Service delay as a whole number of simulation steps (nearest-step
    /// rounding; below half a step means no delay).
    pub fn delay_steps(&self, step_hours: f64) -> usize {
        (self.service_time_hours() / step_hours).round() as usize
    }

    /// The design as the ordered gene vector `[i, j, delta_min, beta_s]`
    /// used by the optimizers.
    pub fn genes(&self) -> [f64; 4] {
        [
            self.access_cell as f64,
            self.exit_cell as f64,
            self.service_time_min,
            self.station_ratio,
        ]
    }

    /// Deterministic total order on designs (access, exit, service time,
    /// ratio), used for reproducible tie-breaking.
    pub fn lex_cmp(&self, other: &StationDesign) -> std::cmp::Ordering {
        self.access_cell
            .cmp(&other.access_cell)
            .then(self.exit_cell.cmp(&other.exit_cell))
            .then(self.service_time_min.total_cmp(&other.service_time_min))
            .then(self.station_ratio.total_cmp(&other.station_ratio))
    }

    /// Basic structural validity against a stretch (bounds checking against
    /// a design space is `design::is_feasible`).
    pub fn validate(&self, stretch: &StretchParams) -> Result<()> {
        let n = stretch.len();
        if self.access_cell < 1 || self.exit_cell > n || self.access_cell >= self.exit_cell {
            return Err(Error::domain(format!(
                "station cells must satisfy 1 <= access < exit <= {n}, got ({}, {})",
                self.access_cell, self.exit_cell
            )));
        }
        if !(0.0..=1.0).contains(&self.station_ratio) {
            return Err(Error::domain(format!(
                "station_ratio must be in [0, 1], got {}",
                self.station_ratio
            )));
        }
        let offramp = stretch.cell(self.access_cell).offramp_ratio;
        if self.station_ratio + offramp > 1.0 {
            return Err(Error::domain(format!(
                "station_ratio ({}) plus off-ramp ratio ({offramp}) at cell {} exceeds 1",
                self.station_ratio, self.access_cell
            )));
        }
        if self.service_time_min < 0.0 {
            return Err(Error::domain(format!(
                "service_time_min must be nonnegative, got {}",
                self.service_time_min
            )));
        }
        Ok(())
    }
}

/// Station parameters treated as fixed design choices rather than
/// optimization variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedParams {
    /// Supply share reserved for through traffic at merges, in (0, 1].
    pub mainstream_priority: f64,
    /// Maximum flow of the station's on-ramp back into the mainstream [veh/h].
    pub ramp_capacity: f64,
    /// Station length measured in cells (exit cell - access cell).
    pub station_cell_span: usize,
}

impl FixedParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.mainstream_priority > 0.0 && self.mainstream_priority <= 1.0) {
            return Err(Error::domain(format!(
                "mainstream_priority must be in (0, 1], got {}",
                self.mainstream_priority
            )));
        }
        if !(self.ramp_capacity > 0.0) {
            return Err(Error::domain(format!(
                "ramp_capacity must be positive, got {}",
                self.ramp_capacity
            )));
        }
        if self.station_cell_span < 1 {
            return Err(Error::domain("station_cell_span must be at least 1"));
        }
        Ok(())
    }
}

impl Default for FixedParams {
    fn default() -> Self {
        FixedParams {
            mainstream_priority: 0.95,
            ramp_capacity: 1500.0,
            station_cell_span: 2,
        }
    }
}

/// External demand over a simulation horizon: the mainstream inflow series
/// plus optional per-cell on-ramp demand series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemandProfile {
    /// Simulation step length [h].
    pub step_hours: f64,
    /// Flow offered to the first cell at each step [veh/h].
    pub mainstream_inflow: Vec<f64>,
    /// Demand offered to the on-ramp of a cell (1-based key) at each step
    /// [veh/h]. Series must match the horizon length.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub onramp_demand: BTreeMap<usize, Vec<f64>>,
}

impl DemandProfile {
    pub fn constant(step_hours: f64, horizon_steps: usize, inflow: f64) -> Self {
        DemandProfile {
            step_hours,
            mainstream_inflow: vec![inflow; horizon_steps],
            onramp_demand: BTreeMap::new(),
        }
    }

    pub fn horizon_steps(&self) -> usize {
        self.mainstream_inflow.len()
    }

    pub fn validate(&self, n_cells: usize) -> Result<()> {
        if !(self.step_hours > 0.0) {
            return Err(Error::domain(format!(
                "step_hours must be positive, got {}",
                self.step_hours
            )));
        }
        if self.mainstream_inflow.is_empty() {
            return Err(Error::domain("mainstream_inflow series is empty"));
        }
        if self.mainstream_inflow.iter().any(|f| !f.is_finite() || *f < 0.0) {
            return Err(Error::domain("mainstream_inflow contains a negative or non-finite value"));
        }
        for (cell, series) in &self.onramp_demand {
            if *cell < 1 || *cell > n_cells {
                return Err(Error::domain(format!(
                    "onramp_demand references cell {cell}, stretch has {n_cells} cells"
                )));
            }
            if series.len() != self.horizon_steps() {
                return Err(Error::Dimension(format!(
                    "onramp_demand series for cell {cell} has length {}, horizon is {}",
                    series.len(),
                    self.horizon_steps()
                )));
            }
            if series.iter().any(|f| !f.is_finite() || *f < 0.0) {
                return Err(Error::domain(format!(
                    "onramp_demand for cell {cell} contains a negative or non-finite value"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell() -> CellParams {
        CellParams {
            length_km: 0.5,
            free_flow_speed: 100.0,
            wave_speed: 25.0,
            capacity: 2000.0,
            jam_density: 80.0,
            offramp_ratio: 0.0,
        }
    }

    #[test]
    fn rejects_wave_speed_above_free_flow() {
        let mut c = cell();
        c.wave_speed = 120.0;
        assert!(c.validate(1).is_err());
    }

    #[test]
    fn rejects_offramp_ratio_of_one() {
        let mut c = cell();
        c.offramp_ratio = 1.0;
        let err = c.validate(3).unwrap_err().to_string();
        assert!(err.contains("cell 3"), "{err}");
        assert!(err.contains("offramp_ratio"), "{err}");
    }

    #[test]
    fn delay_steps_rounds_to_nearest() {
        let step = 0.0025;
        // 95 min = 1.5833 h -> 633.33 steps -> 633
        let d = StationDesign::new(4, 6, 95.0, 0.19);
        assert_eq!(d.delay_steps(step), 633);
        // below half a step means zero delay
        let d = StationDesign::new(4, 6, 60.0 * step * 0.49, 0.19);
        assert_eq!(d.delay_steps(step), 0);
        let d = StationDesign::new(4, 6, 60.0 * step * 0.51, 0.19);
        assert_eq!(d.delay_steps(step), 1);
    }

    #[test]
    fn station_ratio_plus_offramp_bounded() {
        let mut c = cell();
        c.offramp_ratio = 0.9;
        let stretch = StretchParams::new(vec![c, cell(), cell()]).unwrap();
        let d = StationDesign::new(1, 3, 30.0, 0.2);
        assert!(d.validate(&stretch).is_err());
        let d = StationDesign::new(1, 3, 30.0, 0.1);
        assert!(d.validate(&stretch).is_ok());
    }

    #[test]
    fn cfl_bound_is_min_over_cells() {
        let mut short = cell();
        short.length_km = 0.2;
        let stretch = StretchParams::new(vec![cell(), short]).unwrap();
        assert!((stretch.max_step_hours() - 0.002).abs() < 1e-12);
    }

    #[test]
    fn profile_rejects_mismatched_ramp_series() {
        let mut p = DemandProfile::constant(0.0025, 10, 500.0);
        p.onramp_demand.insert(2, vec![100.0; 9]);
        assert!(p.validate(5).is_err());
    }
}
