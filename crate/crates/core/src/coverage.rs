//! Coverage set algebra: `C(S)`, the overlap set `OV(X)` and cardinalities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{rasterize_coverage, Sensor, SensorId, TargetRegion};

/// Membership set over the cells of a fixed `n_rows x n_cols` grid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    rows: usize,
    cols: usize,
    words: Vec<u64>,
}

impl CellSet {
    pub fn empty(rows: usize, cols: usize) -> Self {
        let cells = rows * cols;
        CellSet {
            rows,
            cols,
            words: vec![0; cells.div_ceil(64)],
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        let mut set = CellSet::empty(rows, cols);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.clear_tail();
        set
    }

    /// Builds a set from cell indices, rejecting out-of-range members.
    pub fn from_indices(
        rows: usize,
        cols: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut set = CellSet::empty(rows, cols);
        for idx in indices {
            set.insert(idx)?;
        }
        Ok(set)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn capacity(&self) -> usize {
        self.rows * self.cols
    }

    pub fn insert(&mut self, index: usize) -> Result<bool> {
        if index >= self.capacity() {
            return Err(Error::CellOutOfRange {
                index,
                cells: self.capacity(),
            });
        }
        Ok(self.insert_unchecked(index))
    }

    pub(crate) fn insert_unchecked(&mut self, index: usize) -> bool {
        let (w, b) = (index / 64, index % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, index: usize) -> bool {
        if index >= self.capacity() {
            return false;
        }
        let (w, b) = (index / 64, index % 64);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.capacity() && self.words[index / 64] & (1 << (index % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    fn check(&self, other: &CellSet) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::GridMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    pub fn union_with(&mut self, other: &CellSet) -> Result<()> {
        self.check(other)?;
        self.union_with_unchecked(other);
        Ok(())
    }

    pub fn intersect_with(&mut self, other: &CellSet) -> Result<()> {
        self.check(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        Ok(())
    }

    pub fn difference_with(&mut self, other: &CellSet) -> Result<()> {
        self.check(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        Ok(())
    }

    pub fn union(&self, other: &CellSet) -> Result<CellSet> {
        let mut out = self.clone();
        out.union_with(other)?;
        Ok(out)
    }

    pub fn intersection(&self, other: &CellSet) -> Result<CellSet> {
        let mut out = self.clone();
        out.intersect_with(other)?;
        Ok(out)
    }

    pub fn difference(&self, other: &CellSet) -> Result<CellSet> {
        let mut out = self.clone();
        out.difference_with(other)?;
        Ok(out)
    }

    pub fn is_subset(&self, other: &CellSet) -> Result<bool> {
        self.check(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0))
    }

    pub fn intersection_len(&self, other: &CellSet) -> Result<usize> {
        self.check(other)?;
        Ok(self.intersection_len_unchecked(other))
    }

    pub(crate) fn union_with_unchecked(&mut self, other: &CellSet) {
        debug_assert_eq!(self.dims(), other.dims());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn intersection_len_unchecked(&self, other: &CellSet) -> usize {
        debug_assert_eq!(self.dims(), other.dims());
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub(crate) fn difference_with_unchecked(&mut self, other: &CellSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Range of words holding any member; empty range for the empty set.
    pub(crate) fn word_span(&self) -> std::ops::Range<usize> {
        match self.words.iter().position(|&w| w != 0) {
            None => 0..0,
            Some(first) => {
                let last = self.words.iter().rposition(|&w| w != 0).expect("nonempty");
                first..last + 1
            }
        }
    }

    /// `|self ∩ other|`, reading only `span` (which must hold every member of `self`).
    pub(crate) fn intersection_len_in(&self, other: &CellSet, span: std::ops::Range<usize>) -> usize {
        self.words[span.clone()]
            .iter()
            .zip(&other.words[span])
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `|self \ other|`, reading only `span` (which must hold every member of `self`).
    pub(crate) fn difference_len_in(&self, other: &CellSet, span: std::ops::Range<usize>) -> usize {
        self.words[span.clone()]
            .iter()
            .zip(&other.words[span])
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    pub(crate) fn intersects_unchecked(&self, other: &CellSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Adds `a & b` into `self` (all three on the same grid).
    pub(crate) fn union_with_intersection_unchecked(&mut self, a: &CellSet, b: &CellSet) {
        for ((o, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *o |= x & y;
        }
    }

    fn clear_tail(&mut self) {
        let extra = self.words.len() * 64 - self.capacity();
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }
}

/// Wire form: grid dimensions plus the sorted member indices.
#[derive(Serialize, Deserialize)]
struct CellSetRepr {
    rows: usize,
    cols: usize,
    cells: Vec<usize>,
}

impl Serialize for CellSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CellSetRepr {
            rows: self.rows,
            cols: self.cols,
            cells: self.iter().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CellSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CellSetRepr::deserialize(deserializer)?;
        CellSet::from_indices(repr.rows, repr.cols, repr.cells).map_err(serde::de::Error::custom)
    }
}

pub fn cardinality(cs: &CellSet) -> usize {
    cs.len()
}

/// `C(S)`: union of the rasterized footprints of `sensors`.
pub fn union_coverage<'a>(
    sensors: impl IntoIterator<Item = &'a Sensor>,
    region: &TargetRegion,
) -> CellSet {
    let mut out = region.empty_set();
    for s in sensors {
        out.union_with_unchecked(&rasterize_coverage(s, region));
    }
    out
}

/// `OV(X)`: cells covered by at least two distinct sensors.
pub fn overlap_set<'a>(
    sensors: impl IntoIterator<Item = &'a Sensor>,
    region: &TargetRegion,
) -> CellSet {
    let sets: Vec<CellSet> = sensors
        .into_iter()
        .map(|s| rasterize_coverage(s, region))
        .collect();
    overlap_of(&sets, region.n_rows(), region.n_cols())
}

/// Union of a collection of precomputed cell sets.
pub fn union_of<'a>(sets: impl IntoIterator<Item = &'a CellSet>, rows: usize, cols: usize) -> CellSet {
    let mut out = CellSet::empty(rows, cols);
    for s in sets {
        out.union_with_unchecked(s);
    }
    out
}

/// Overlap set of a collection of precomputed cell sets.
pub fn overlap_of<'a>(sets: impl IntoIterator<Item = &'a CellSet>, rows: usize, cols: usize) -> CellSet {
    let mut seen = CellSet::empty(rows, cols);
    let mut twice = CellSet::empty(rows, cols);
    for s in sets {
        twice.union_with_intersection_unchecked(&seen, s);
        seen.union_with_unchecked(s);
    }
    twice
}

/// `|OV({candidate} ∪ selected)|`.
pub fn overlap_with_candidate(
    candidate: &Sensor,
    selected: &[Sensor],
    region: &TargetRegion,
) -> Result<usize> {
    if selected.iter().any(|s| s.id == candidate.id) {
        return Err(Error::Precondition(format!(
            "sensor {} is already selected",
            candidate.id
        )));
    }
    Ok(overlap_set(std::iter::once(candidate).chain(selected), region).len())
}

/// A set of sensors together with their rasterized footprints on one region.
///
/// Poses are fixed for the life of a deployment, so footprints are computed
/// once. Sensor ids must equal their index in `sensors`.
#[derive(Debug, Clone)]
pub struct Deployment {
    region: TargetRegion,
    sensors: Vec<Sensor>,
    footprints: Vec<CellSet>,
    sizes: Vec<usize>,
    spans: Vec<std::ops::Range<usize>>,
}

impl Deployment {
    pub fn new(region: TargetRegion, sensors: Vec<Sensor>) -> Result<Self> {
        for (i, s) in sensors.iter().enumerate() {
            if s.id != i {
                return Err(Error::invalid("id", format!("sensor at index {i} has id {}", s.id)));
            }
            s.validate()?;
        }
        let footprints = sensors.iter().map(|s| rasterize_coverage(s, &region)).collect();
        Ok(Self::assemble(region, sensors, footprints))
    }

    /// Builds a deployment from explicit footprints instead of rasterizing
    /// poses. Used for abstract set-cover instances.
    pub fn with_footprints(
        region: TargetRegion,
        sensors: Vec<Sensor>,
        footprints: Vec<CellSet>,
    ) -> Result<Self> {
        if sensors.len() != footprints.len() {
            return Err(Error::invalid("footprints", "one footprint per sensor required"));
        }
        let dims = (region.n_rows(), region.n_cols());
        if let Some(f) = footprints.iter().find(|f| f.dims() != dims) {
            return Err(Error::GridMismatch {
                left_rows: dims.0,
                left_cols: dims.1,
                right_rows: f.dims().0,
                right_cols: f.dims().1,
            });
        }
        for (i, s) in sensors.iter().enumerate() {
            if s.id != i {
                return Err(Error::invalid("id", format!("sensor at index {i} has id {}", s.id)));
            }
        }
        Ok(Self::assemble(region, sensors, footprints))
    }

    fn assemble(region: TargetRegion, sensors: Vec<Sensor>, footprints: Vec<CellSet>) -> Self {
        let sizes = footprints.iter().map(CellSet::len).collect();
        let spans = footprints.iter().map(CellSet::word_span).collect();
        Deployment {
            region,
            sensors,
            footprints,
            sizes,
            spans,
        }
    }

    /// `|C({id})|`
    pub fn footprint_len(&self, id: SensorId) -> usize {
        self.sizes[id]
    }

    pub(crate) fn footprint_span(&self, id: SensorId) -> std::ops::Range<usize> {
        self.spans[id].clone()
    }

    pub fn region(&self) -> &TargetRegion {
        &self.region
    }

    pub fn sensors(&self) -> &[Sensor] {
        &self.sensors
    }

    pub fn sensor(&self, id: SensorId) -> &Sensor {
        &self.sensors[id]
    }

    /// Battery is the only mutable part of a sensor; poses stay fixed.
    pub fn set_energy(&mut self, id: SensorId, energy: f64) {
        self.sensors[id].energy = energy.max(0.0);
    }

    pub fn footprint(&self, id: SensorId) -> &CellSet {
        &self.footprints[id]
    }

    pub fn len(&self) -> usize {
        self.sensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sensors.is_empty()
    }

    pub fn empty_set(&self) -> CellSet {
        self.region.empty_set()
    }

    /// `C(ids)`
    pub fn coverage_of(&self, ids: &[SensorId]) -> CellSet {
        union_of(ids.iter().map(|&i| &self.footprints[i]), self.region.n_rows(), self.region.n_cols())
    }

    /// `OV(ids)`
    pub fn overlap_of(&self, ids: &[SensorId]) -> CellSet {
        overlap_of(ids.iter().map(|&i| &self.footprints[i]), self.region.n_rows(), self.region.n_cols())
    }

    /// Ids of sensors with positive energy, ascending.
    pub fn live_ids(&self) -> Vec<SensorId> {
        self.sensors.iter().filter(|s| s.is_live()).map(|s| s.id).collect()
    }
}
