//! Geographic neighbor graph and minimum-hop delivery routes to the base station.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::geometry::{SensorId, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Vertex {
    Sensor(SensorId),
    Base,
}

/// Undirected graph over live sensors plus the base station; an edge joins
/// two vertices at distance `<= range`.
#[derive(Debug, Clone)]
pub struct GeoGraph {
    vertices: Vec<Vertex>,
    positions: Vec<Vec3>,
    adjacency: Vec<Vec<usize>>,
    range: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub path: Vec<Vertex>,
}

impl Route {
    pub fn hop_count(&self) -> usize {
        self.path.len().saturating_sub(1)
    }

    pub fn source(&self) -> Option<SensorId> {
        match self.path.first() {
            Some(Vertex::Sensor(id)) => Some(*id),
            _ => None,
        }
    }

    /// Sensors strictly between the source and the base.
    pub fn relays(&self) -> impl Iterator<Item = SensorId> + '_ {
        let inner = if self.path.len() > 2 {
            &self.path[1..self.path.len() - 1]
        } else {
            &[]
        };
        inner.iter().filter_map(|v| match v {
            Vertex::Sensor(id) => Some(*id),
            Vertex::Base => None,
        })
    }
}

/// Builds the graph from `(id, position)` pairs. Vertex order is ascending
/// sensor id followed by the base.
pub fn build_geo_graph(
    live: impl IntoIterator<Item = (SensorId, Vec3)>,
    range: f64,
    base: Vec3,
) -> GeoGraph {
    let mut nodes: Vec<(SensorId, Vec3)> = live.into_iter().collect();
    nodes.sort_by_key(|(id, _)| *id);
    nodes.dedup_by_key(|(id, _)| *id);
    let mut vertices: Vec<Vertex> = nodes.iter().map(|(id, _)| Vertex::Sensor(*id)).collect();
    let mut positions: Vec<Vec3> = nodes.iter().map(|(_, p)| *p).collect();
    vertices.push(Vertex::Base);
    positions.push(base);

    let n = vertices.len();
    let mut adjacency = vec![Vec::new(); n];
    let r2 = range * range;
    for i in 0..n {
        for j in i + 1..n {
            if (positions[i] - positions[j]).norm_squared() <= r2 {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    // Index order equals vertex order, so sorted indices give sorted vertices.
    for list in adjacency.iter_mut() {
        list.sort_unstable();
    }
    GeoGraph {
        vertices,
        positions,
        adjacency,
        range,
    }
}

impl GeoGraph {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn base_position(&self) -> Vec3 {
        *self.positions.last().expect("base vertex always present")
    }

    fn base_index(&self) -> usize {
        self.vertices.len() - 1
    }

    fn index_of(&self, v: Vertex) -> Option<usize> {
        match v {
            Vertex::Base => Some(self.base_index()),
            Vertex::Sensor(_) => self.vertices[..self.base_index()].binary_search(&v).ok(),
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index_of(v).is_some()
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.index_of(v)
            .map(|i| self.adjacency[i].iter().map(|&j| self.vertices[j]).collect())
            .unwrap_or_default()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adjacency[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// Unordered edges, each listed once.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (i, list) in self.adjacency.iter().enumerate() {
            for &j in list.iter().filter(|&&j| j > i) {
                out.push((self.vertices[i], self.vertices[j]));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Hop distance of every vertex to the base (`None` when disconnected).
    pub fn hops_to_base(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        let base = self.base_index();
        dist[base] = Some(0);
        let mut queue = VecDeque::from([base]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have distances");
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    fn walk(&self, start: usize, dist: &[Option<usize>]) -> Option<Route> {
        let mut hops = dist[start]?;
        let mut path = vec![self.vertices[start]];
        let mut at = start;
        while hops > 0 {
            // Neighbors are sorted, so the first one a hop closer is lexicographically smallest.
            at = *self.adjacency[at]
                .iter()
                .find(|&&v| dist[v] == Some(hops - 1))
                .expect("BFS distances are consistent");
            path.push(self.vertices[at]);
            hops -= 1;
        }
        Some(Route { path })
    }

    /// Routes for many sources with a single BFS.
    pub fn routes_to_base(&self, sources: &[SensorId]) -> Vec<Option<Route>> {
        let dist = self.hops_to_base();
        sources
            .iter()
            .map(|&s| self.index_of(Vertex::Sensor(s)).and_then(|i| self.walk(i, &dist)))
            .collect()
    }
}

/// Minimum-hop route from `source` to the base; among equal-length routes,
/// the lexicographically smallest vertex sequence. `None` when unreachable.
pub fn route_to_base(source: SensorId, graph: &GeoGraph) -> Option<Route> {
    graph.routes_to_base(&[source]).pop().flatten()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyCosts {
    /// Paid by a selected sensor for capturing and sending one frame.
    pub sense: f64,
    /// Paid by each intermediate sensor on a route.
    pub relay: f64,
}

impl Default for EnergyCosts {
    fn default() -> Self {
        EnergyCosts {
            sense: 1.0,
            relay: 0.5,
        }
    }
}

fn drain(energies: &mut [f64], id: SensorId, amount: f64) {
    let e = &mut energies[id];
    *e = (*e - amount).max(0.0);
}

/// Charges the source `sense` and every relay `relay`, clamping at zero.
/// `energies` is indexed by sensor id.
pub fn charge_route_energy(route: &Route, energies: &mut [f64], costs: &EnergyCosts) {
    if let Some(src) = route.source() {
        drain(energies, src, costs.sense);
    }
    for relay in route.relays() {
        drain(energies, relay, costs.relay);
    }
}

/// Sensing cost for a selected sensor with no route to the base.
pub fn charge_undelivered(source: SensorId, energies: &mut [f64], costs: &EnergyCosts) {
    drain(energies, source, costs.sense);
}
