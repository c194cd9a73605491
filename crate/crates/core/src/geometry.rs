//! Camera field-of-view model and its rasterization onto the target plane.
//!
//! A camera sees a right circular cone: apex at the sensor, axis along the
//! boresight, half-aperture `half_angle`, truncated at `range`. Roll about
//! the boresight does not change a circular cone, so only azimuth and
//! elevation are carried.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Sub};

use crate::coverage::CellSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// Index of a sensor within its deployment.
pub type SensorId = usize;

/// A directional camera node with a fixed pose.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sensor {
    pub id: SensorId,
    pub position: Vec3,
    /// Boresight heading in the ground plane, radians in `[0, 2π)`.
    pub azimuth: f64,
    /// Boresight angle above the horizontal, radians in `[-π/2, π/2]`.
    pub elevation: f64,
    /// Cone half-aperture, radians in `(0, π/2)`.
    pub half_angle: f64,
    /// Sensing radius in meters.
    pub range: f64,
    /// Remaining battery, abstract energy units.
    pub energy: f64,
}

impl Sensor {
    pub fn validate(&self) -> Result<()> {
        if !(self.half_angle > 0.0 && self.half_angle < std::f64::consts::FRAC_PI_2) {
            return Err(Error::invalid("half_angle", "must lie in (0, pi/2)"));
        }
        if !(self.range > 0.0) || !self.range.is_finite() {
            return Err(Error::invalid("range", "must be positive"));
        }
        if !(self.energy >= 0.0) {
            return Err(Error::invalid("energy", "must be non-negative"));
        }
        Ok(())
    }

    pub fn boresight(&self) -> Vec3 {
        boresight_from_angles(self.azimuth, self.elevation)
    }

    pub fn is_live(&self) -> bool {
        self.energy > 0.0
    }
}

/// Horizontal rectangle at `height`, split into square cells of side `cell_size`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetRegion {
    pub x_extent: f64,
    pub y_extent: f64,
    pub height: f64,
    pub cell_size: f64,
}

impl TargetRegion {
    pub fn new(x_extent: f64, y_extent: f64, height: f64, cell_size: f64) -> Result<Self> {
        if !(cell_size > 0.0) || !cell_size.is_finite() {
            return Err(Error::invalid("cell_size", "must be positive"));
        }
        if !(x_extent > 0.0) || !x_extent.is_finite() {
            return Err(Error::invalid("l_x", "must be positive"));
        }
        if !(y_extent > 0.0) || !y_extent.is_finite() {
            return Err(Error::invalid("l_y", "must be positive"));
        }
        if !height.is_finite() {
            return Err(Error::invalid("h_t", "must be finite"));
        }
        Ok(TargetRegion {
            x_extent,
            y_extent,
            height,
            cell_size,
        })
    }

    pub fn n_cols(&self) -> usize {
        ((self.x_extent / self.cell_size).ceil() as usize).max(1)
    }

    pub fn n_rows(&self) -> usize {
        ((self.y_extent / self.cell_size).ceil() as usize).max(1)
    }

    pub fn n_cells(&self) -> usize {
        self.n_rows() * self.n_cols()
    }

    pub fn area(&self) -> f64 {
        self.x_extent * self.y_extent
    }

    pub fn cell_index(&self, row: usize, col: usize) -> usize {
        row * self.n_cols() + col
    }

    pub fn row_col(&self, index: usize) -> (usize, usize) {
        let cols = self.n_cols();
        (index / cols, index % cols)
    }

    /// Center of a cell, lifted to the plane height.
    pub fn cell_center(&self, index: usize) -> Vec3 {
        let (row, col) = self.row_col(index);
        Vec3::new(
            (col as f64 + 0.5) * self.cell_size,
            (row as f64 + 0.5) * self.cell_size,
            self.height,
        )
    }

    pub fn empty_set(&self) -> CellSet {
        CellSet::empty(self.n_rows(), self.n_cols())
    }

    pub fn ground_center(&self) -> Vec3 {
        Vec3::new(self.x_extent / 2.0, self.y_extent / 2.0, 0.0)
    }
}

pub fn boresight_from_angles(azimuth: f64, elevation: f64) -> Vec3 {
    let (sin_e, cos_e) = elevation.sin_cos();
    let (sin_a, cos_a) = azimuth.sin_cos();
    Vec3::new(cos_e * cos_a, cos_e * sin_a, sin_e)
}

/// Whether `q` lies inside the sensor's truncated cone (boundary inclusive).
pub fn covers_point(sensor: &Sensor, q: Vec3) -> bool {
    let d = q - sensor.position;
    let dist2 = d.norm_squared();
    if dist2 > sensor.range * sensor.range {
        return false;
    }
    if dist2 == 0.0 {
        return true;
    }
    let along = sensor.boresight().dot(d);
    along >= dist2.sqrt() * sensor.half_angle.cos()
}

/// Cells of `region` whose centers the sensor covers.
pub fn rasterize_coverage(sensor: &Sensor, region: &TargetRegion) -> CellSet {
    let mut set = region.empty_set();
    let dz = region.height - sensor.position.z;
    let r2 = sensor.range * sensor.range;
    if dz * dz > r2 {
        return set;
    }
    // Candidate cells lie within the horizontal disk cut from the range sphere.
    let reach = (r2 - dz * dz).sqrt();
    let g = region.cell_size;
    let (rows, cols) = (region.n_rows(), region.n_cols());
    let span = |lo: f64, hi: f64, n: usize| -> Option<(usize, usize)> {
        let first = ((lo / g) - 0.5).floor().max(0.0);
        let last = ((hi / g) - 0.5).ceil();
        if last < 0.0 || first >= n as f64 {
            return None;
        }
        Some((first as usize, (last as usize).min(n - 1)))
    };
    let Some((c0, c1)) = span(sensor.position.x - reach, sensor.position.x + reach, cols) else {
        return set;
    };
    let Some((r0, r1)) = span(sensor.position.y - reach, sensor.position.y + reach, rows) else {
        return set;
    };
    let axis = sensor.boresight();
    let cos_half = sensor.half_angle.cos();
    for row in r0..=r1 {
        let y = (row as f64 + 0.5) * g;
        for col in c0..=c1 {
            let q = Vec3::new((col as f64 + 0.5) * g, y, region.height);
            let d = q - sensor.position;
            let dist2 = d.norm_squared();
            if dist2 > r2 {
                continue;
            }
            if dist2 == 0.0 || axis.dot(d) >= dist2.sqrt() * cos_half {
                set.insert_unchecked(row * cols + col);
            }
        }
    }
    set
}

pub fn visually_neighbors(a: &Sensor, b: &Sensor, region: &TargetRegion) -> bool {
    let ca = rasterize_coverage(a, region);
    let cb = rasterize_coverage(b, region);
    ca.intersects_unchecked(&cb)
}

pub fn geo_neighbors(a: &Sensor, b: &Sensor, r: f64) -> bool {
    a.position.distance(b.position) <= r
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    pub(crate) fn sensor_at(x: f64, y: f64, elevation: f64, half_angle: f64, range: f64) -> Sensor {
        Sensor {
            id: 0,
            position: Vec3::new(x, y, 0.0),
            azimuth: 0.0,
            elevation,
            half_angle,
            range,
            energy: 1.0,
        }
    }

    fn close(a: Vec3, b: Vec3) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn boresight_examples() {
        assert!(close(boresight_from_angles(0.0, FRAC_PI_2), Vec3::new(0.0, 0.0, 1.0)));
        assert!(close(boresight_from_angles(0.0, 0.0), Vec3::new(1.0, 0.0, 0.0)));
        let h = 2f64.sqrt() / 2.0;
        assert!(close(boresight_from_angles(FRAC_PI_2, FRAC_PI_4), Vec3::new(0.0, h, h)));
        for k in 0..50 {
            let u = boresight_from_angles(k as f64 * 0.37, k as f64 * 0.11 - 2.0);
            assert!((u.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn covers_point_examples() {
        let s = sensor_at(0.0, 0.0, FRAC_PI_2, FRAC_PI_6, 100.0);
        assert!(covers_point(&s, Vec3::new(0.0, 0.0, 20.0)));
        assert!(!covers_point(&s, Vec3::new(100.0, 0.0, 20.0)));
        assert!(!covers_point(&s, Vec3::new(0.0, 0.0, 200.0)));
        assert!(covers_point(&s, s.position));
    }

    #[test]
    fn downward_boresight_sees_nothing_above() {
        let region = TargetRegion::new(100.0, 100.0, 20.0, 1.0).unwrap();
        for alpha in [0.1, FRAC_PI_6, 1.5] {
            let s = sensor_at(50.0, 50.0, -FRAC_PI_2, alpha, 100.0);
            assert!(rasterize_coverage(&s, &region).is_empty());
        }
    }

    #[test]
    fn tiny_aperture_covers_at_most_one_cell() {
        let region = TargetRegion::new(100.0, 100.0, 20.0, 0.5).unwrap();
        let s = sensor_at(50.25, 50.25, FRAC_PI_2, 1e-6, 100.0);
        assert!(rasterize_coverage(&s, &region).len() <= 1);
    }

    #[test]
    fn straight_up_disk_matches_subsampled_area() {
        // Oracle: 10x10 sub-sampling of each cell estimates the true footprint area.
        let region = TargetRegion::new(100.0, 100.0, 20.0, 0.5).unwrap();
        let s = sensor_at(50.0, 50.0, FRAC_PI_2, FRAC_PI_4, 100.0);
        let n = rasterize_coverage(&s, &region).len() as f64;
        let analytic = PI * 400.0 / 0.25;
        assert!((n - analytic).abs() / analytic < 0.02, "{n} vs {analytic}");

        let g = region.cell_size;
        let sub = 10;
        let mut hits = 0usize;
        for idx in 0..region.n_cells() {
            let c = region.cell_center(idx);
            if (c.x - 50.0).abs() > 22.0 || (c.y - 50.0).abs() > 22.0 {
                continue;
            }
            for i in 0..sub {
                for j in 0..sub {
                    let q = Vec3::new(
                        c.x - g / 2.0 + (i as f64 + 0.5) * g / sub as f64,
                        c.y - g / 2.0 + (j as f64 + 0.5) * g / sub as f64,
                        c.z,
                    );
                    if covers_point(&s, q) {
                        hits += 1;
                    }
                }
            }
        }
        let fine = hits as f64 / (sub * sub) as f64;
        assert!((n - fine).abs() / fine < 0.02, "{n} vs {fine}");
    }

    #[test]
    fn raster_matches_exhaustive_center_check() {
        let region = TargetRegion::new(30.0, 25.0, 12.0, 1.0).unwrap();
        for k in 0..40 {
            let mut s = sensor_at(
                (k * 7 % 31) as f64,
                (k * 11 % 26) as f64,
                0.2 + 0.03 * k as f64,
                0.3 + 0.02 * k as f64,
                15.0 + k as f64,
            );
            s.azimuth = k as f64 * 0.7;
            let set = rasterize_coverage(&s, &region);
            for idx in 0..region.n_cells() {
                assert_eq!(set.contains(idx), covers_point(&s, region.cell_center(idx)));
            }
        }
    }

    #[test]
    fn visual_neighbor_examples() {
        let region = TargetRegion::new(200.0, 100.0, 20.0, 1.0).unwrap();
        let a = sensor_at(40.0, 50.0, FRAC_PI_2, FRAC_PI_6, 60.0);
        assert!(visually_neighbors(&a, &a.clone(), &region));
        let b = sensor_at(140.0, 50.0, FRAC_PI_2, FRAC_PI_6, 60.0);
        assert!(!visually_neighbors(&a, &b, &region));

        // Two disks whose footprints share exactly one cell, found by counting.
        let small = TargetRegion::new(20.0, 5.0, 1.0, 1.0).unwrap();
        let tan = 2.2f64.atan(); // footprint radius 2.2 at height 1
        let left = sensor_at(5.5, 2.5, FRAC_PI_2, tan, 10.0);
        let right = sensor_at(9.5, 2.5, FRAC_PI_2, tan, 10.0);
        let shared = (0..small.n_cells())
            .filter(|&i| {
                let c = small.cell_center(i);
                covers_point(&left, c) && covers_point(&right, c)
            })
            .count();
        assert_eq!(shared, 1);
        assert!(visually_neighbors(&left, &right, &small));
    }

    #[test]
    fn geo_neighbor_examples() {
        let a = sensor_at(0.0, 0.0, 0.0, 0.5, 1.0);
        let b = sensor_at(25.0, 0.0, 0.0, 0.5, 1.0);
        let c = sensor_at(25.01, 0.0, 0.0, 0.5, 1.0);
        assert!(geo_neighbors(&a, &b, 25.0));
        assert!(!geo_neighbors(&a, &c, 25.0));
        assert!(geo_neighbors(&a, &a, 25.0));
    }

    #[test]
    fn sensor_validation() {
        let mut s = sensor_at(0.0, 0.0, 0.0, FRAC_PI_2, 1.0);
        assert!(s.validate().is_err());
        s.half_angle = 0.3;
        assert!(s.validate().is_ok());
        s.range = 0.0;
        assert!(s.validate().is_err());
        s.range = 1.0;
        s.energy = -1.0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn region_grid_bijection() {
        let region = TargetRegion::new(10.5, 7.2, 1.0, 1.0).unwrap();
        assert_eq!((region.n_rows(), region.n_cols()), (8, 11));
        for idx in 0..region.n_cells() {
            let (r, c) = region.row_col(idx);
            assert_eq!(region.cell_index(r, c), idx);
        }
        assert!(TargetRegion::new(10.0, 10.0, 1.0, 0.0).is_err());
    }
}
