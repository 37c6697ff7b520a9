//! Dart-based multigraphs of maximum degree three.
//!
//! Every edge owns two darts, `2e` and `2e + 1`; the partner of a dart is the
//! other dart of its edge. A loop is an edge whose two darts sit on the same
//! vertex. Parallel edges and loops are allowed throughout: composing 2-poles
//! can produce them and the algebra stays total that way.

use std::collections::VecDeque;
use std::fmt;

use arrayvec::ArrayVec;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ids::{EdgeSet, VertexSet};

pub const MAX_DEGREE: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    /// Owner vertex of every dart.
    owner: Vec<u32>,
    /// Darts at every vertex, in insertion order.
    incidence: Vec<ArrayVec<u32, MAX_DEGREE>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn new(vertex_count: usize) -> Self {
        Graph {
            owner: Vec::new(),
            incidence: vec![ArrayVec::new(); vertex_count],
        }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.owner.len() / 2
    }

    pub fn add_vertex(&mut self) -> usize {
        self.incidence.push(ArrayVec::new());
        self.incidence.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    order: n,
                });
            }
        }
        let needed = if u == v { 2 } else { 1 };
        if self.incidence[u].len() + needed > MAX_DEGREE {
            return Err(Error::DegreeExceeded { vertex: u });
        }
        if self.incidence[v].len() + 1 > MAX_DEGREE {
            return Err(Error::DegreeExceeded { vertex: v });
        }
        let e = self.edge_count();
        let d = self.owner.len() as u32;
        self.owner.push(u as u32);
        self.owner.push(v as u32);
        self.incidence[u].push(d);
        self.incidence[v].push(d + 1);
        Ok(e)
    }

    #[inline]
    pub fn partner(dart: usize) -> usize {
        dart ^ 1
    }

    #[inline]
    pub fn dart_edge(dart: usize) -> usize {
        dart >> 1
    }

    #[inline]
    pub fn owner(&self, dart: usize) -> usize {
        self.owner[dart] as usize
    }

    #[inline]
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.owner[2 * e] as usize, self.owner[2 * e + 1] as usize)
    }

    pub fn check_edge(&self, e: usize) -> Result<()> {
        if e >= self.edge_count() {
            return Err(Error::EdgeOutOfRange {
                edge: e,
                size: self.edge_count(),
            });
        }
        Ok(())
    }

    /// The endpoint of `e` other than `v` (or `v` itself for a loop).
    #[inline]
    pub fn opposite(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    }

    #[inline]
    pub fn darts(&self, v: usize) -> &[u32] {
        &self.incidence[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Edge ids at `v`, one entry per dart, so a loop is listed twice.
    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v]
            .iter()
            .map(|&d| Graph::dart_edge(d as usize))
    }

    /// Neighbours of `v` through each dart; a loop yields `v` twice.
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v]
            .iter()
            .map(|&d| self.owner(Graph::partner(d as usize)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.edge_count()).map(|e| self.endpoints(e))
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    /// Number of edges joining `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let count = self.neighbours(u).filter(|&w| w == v).count();
        if u == v {
            count / 2
        } else {
            count
        }
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.incidence[u]
            .iter()
            .map(|&d| d as usize)
            .find(|&d| self.owner(Graph::partner(d)) == v)
            .map(Graph::dart_edge)
    }

    /// First loop or parallel edge, if any.
    pub fn first_non_simple_edge(&self) -> Option<usize> {
        (0..self.edge_count()).find(|&e| {
            let (u, v) = self.endpoints(e);
            u == v
                || (0..e).any(|f| {
                    let (a, b) = self.endpoints(f);
                    (a, b) == (u, v) || (a, b) == (v, u)
                })
        })
    }

    pub fn is_simple(&self) -> bool {
        self.first_non_simple_edge().is_none()
    }

    /// Asserts the dart structure is an involution over valid owners.
    pub fn check_darts(&self) -> bool {
        let n = self.vertex_count() as u32;
        let owners_ok = self.owner.iter().all(|&o| o < n);
        let listed: usize = self.incidence.iter().map(|l| l.len()).sum();
        let consistent = self
            .incidence
            .iter()
            .enumerate()
            .all(|(v, darts)| darts.iter().all(|&d| self.owner[d as usize] as usize == v));
        owners_ok && listed == self.owner.len() && self.owner.len().is_multiple_of(2) && consistent
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet::new(self.edge_count())
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::from_ids(self.edge_count(), 0..self.edge_count())
    }

    /// Disjoint union; the vertices of `other` are shifted by the returned offset.
    pub fn disjoint_union(&self, other: &Graph) -> (Graph, usize) {
        let offset = self.vertex_count();
        let mut g = self.clone();
        for _ in 0..other.vertex_count() {
            g.add_vertex();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + offset, v + offset)
                .expect("degrees are preserved");
        }
        (g, offset)
    }

    /// Graph induced by the edges not in `removed`; vertex ids are unchanged.
    /// Returns the map from new edge ids to old ones.
    pub fn delete_edges(&self, removed: &EdgeSet) -> (Graph, Vec<usize>) {
        let mut g = Graph::new(self.vertex_count());
        let mut kept = Vec::with_capacity(self.edge_count());
        for e in 0..self.edge_count() {
            if !removed.contains(e) {
                let (u, v) = self.endpoints(e);
                g.add_edge(u, v).expect("degrees only decrease");
                kept.push(e);
            }
        }
        (g, kept)
    }

    /// Removes the given vertices with their edges and renumbers densely.
    /// Returns the old-to-new vertex map.
    pub fn delete_vertices(&self, removed: &VertexSet) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.vertex_count()];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !removed.contains(v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut g = Graph::new(next);
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                g.add_edge(a, b).expect("degrees only decrease");
            }
        }
        (g, map)
    }

    /// Connected components of the spanning subgraph `(V, edges)`.
    pub fn components(&self, edges: &EdgeSet) -> ComponentSummary {
        let n = self.vertex_count();
        let mut uf = UnionFind::new(n);
        for e in edges.iter() {
            let (u, v) = self.endpoints(e);
            uf.union(u, v);
        }
        let mut index = vec![usize::MAX; n];
        let mut components: Vec<Component> = Vec::new();
        let mut vertex_component = vec![0; n];
        for v in 0..n {
            let r = uf.find(v);
            if index[r] == usize::MAX {
                index[r] = components.len();
                components.push(Component::default());
            }
            let c = index[r];
            vertex_component[v] = c;
            components[c].vertex_count += 1;
        }
        for e in edges.iter() {
            let (u, _) = self.endpoints(e);
            components[vertex_component[u]].edge_count += 1;
        }
        for c in &mut components {
            c.is_odd = c.vertex_count % 2 == 1;
            c.is_isolated_vertex = c.vertex_count == 1 && c.edge_count == 0;
        }
        ComponentSummary {
            components,
            vertex_component,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.components(&self.all_edges()).len() == 1
    }

    /// Breadth-first distances from `source`; unreachable vertices get `None`.
    pub fn distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for w in self.neighbours(v) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Dimension of the cycle space, `m - n + c`.
    pub fn cycle_space_dimension(&self) -> usize {
        let c = self.components(&self.all_edges()).len();
        self.edge_count() + c - self.vertex_count()
    }

    pub fn validate_cubic(&self) -> std::result::Result<(), CubicViolation> {
        let bad_degree: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.degree(v) != 3)
            .collect();
        let disconnected = !self.is_connected();
        if bad_degree.is_empty() && !disconnected && self.vertex_count() > 0 {
            Ok(())
        } else {
            Err(CubicViolation {
                bad_degree,
                disconnected,
                empty: self.vertex_count() == 0,
            })
        }
    }

    /// [`Graph::validate_cubic`] as an [`Error::NotCubic`].
    pub fn require_cubic(&self) -> Result<()> {
        self.validate_cubic()
            .map_err(|v| Error::NotCubic(v.to_string()))
    }

    /// Whether the graph has no cut edge. Requires a connected graph.
    pub fn is_bridgeless(&self) -> Result<bool> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.bridges().is_empty())
    }

    /// All cut edges, found by iterative low-link search.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut bridges = Vec::new();
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, edge used to enter, next dart index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (v, via, ref mut i)) = stack.last_mut() {
                if *i < self.degree(v) {
                    let d = self.darts(v)[*i] as usize;
                    *i += 1;
                    let e = Graph::dart_edge(d);
                    if e == via {
                        continue;
                    }
                    let w = self.owner(Graph::partner(d));
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            bridges.push(via);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicViolation {
    pub bad_degree: Vec<usize>,
    pub disconnected: bool,
    pub empty: bool,
}

impl fmt::Display for CubicViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.empty {
            parts.push("empty graph".to_string());
        }
        if !self.bad_degree.is_empty() {
            parts.push(format!("vertices without degree 3: {:?}", self.bad_degree));
        }
        if self.disconnected {
            parts.push("disconnected".to_string());
        }
        f.write_str(&parts.join("; "))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub is_odd: bool,
    pub is_isolated_vertex: bool,
}

/// Components of a spanning subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    pub components: Vec<Component>,
    /// Component index of every vertex.
    pub vertex_component: Vec<usize>,
}

impl ComponentSummary {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn odd_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_odd).count()
    }

    pub fn isolated_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.is_isolated_vertex)
            .count()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        self.size.iter_mut().for_each(|s| *s = 1);
    }

    #[inline]
    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let up = self.parent[self.parent[x] as usize];
            self.parent[x] = up;
            x = up as usize;
        }
        x
    }

    #[inline]
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
    }

    #[inline]
    pub(crate) fn is_root(&self, x: usize) -> bool {
        self.parent[x] as usize == x
    }

    #[inline]
    pub(crate) fn root_size(&self, x: usize) -> usize {
        self.size[x] as usize
    }
}

/// Connected simple cubic graph on `n` vertices from the configuration model.
///
/// Pairings with loops, parallel edges or more than one component are
/// rejected and redrawn. The same `(n, seed)` always gives the same graph.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::invalid(format!(
            "random cubic graph needs even n >= 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    'attempt: for _ in 0..100_000 {
        points.shuffle(&mut rng);
        let mut g = Graph::new(n);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.find_edge(u, v).is_some() {
                continue 'attempt;
            }
            g.add_edge(u, v)?;
        }
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Infeasible(format!(
        "no simple connected pairing found for n = {n}"
    )))
}

/// A vertex bijection `a -> b` preserving edge multiplicities, if one exists.
///
/// `fixed` pins vertex pairs in advance. Plain backtracking in breadth-first
/// order; intended for test-sized graphs.
pub fn find_isomorphism(a: &Graph, b: &Graph, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return None;
    }

    // search order: fixed vertices first, then breadth-first
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &(x, _) in fixed {
        if !seen[x] {
            seen[x] = true;
            queue.push_back(x);
        }
    }
    let mut next_root = 0;
    while order.len() < n {
        if queue.is_empty() {
            while seen[next_root] {
                next_root += 1;
            }
            seen[next_root] = true;
            queue.push_back(next_root);
        }
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in a.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(x, y) in fixed {
        if map[x] != usize::MAX || used[y] {
            return None;
        }
        map[x] = y;
        used[y] = true;
    }
    let fixed_ok = fixed.iter().all(|&(x, y)| consistent(a, b, &map, x, y));
    if !fixed_ok {
        return None;
    }
    if extend(a, b, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn consistent(a: &Graph, b: &Graph, map: &[usize], x: usize, y: usize) -> bool {
    if a.degree(x) != b.degree(y) || a.multiplicity(x, x) != b.multiplicity(y, y) {
        return false;
    }
    let mut mapped_a = 0;
    for w in a.neighbours(x) {
        if w != x && map[w] != usize::MAX {
            mapped_a += 1;
            if a.multiplicity(x, w) != b.multiplicity(y, map[w]) {
                return false;
            }
        }
    }
    let mut inverse_hits = 0;
    for w in b.neighbours(y) {
        if w != y && map.contains(&w) {
            inverse_hits += 1;
        }
    }
    mapped_a == inverse_hits
}

fn extend(
    a: &Graph,
    b: &Graph,
    order: &[usize],
    pos: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(pos) else {
        return true;
    };
    if map[x] != usize::MAX {
        return extend(a, b, order, pos + 1, map, used);
    }
    let anchor = a.neighbours(x).find(|&w| map[w] != usize::MAX);
    let candidates: Vec<usize> = match anchor {
        Some(w) => {
            let mut c: Vec<usize> = b.neighbours(map[w]).collect();
            c.sort_unstable();
            c.dedup();
            c
        }
        None => (0..b.vertex_count()).collect(),
    };
    for y in candidates {
        if used[y] || !consistent(a, b, map, x, y) {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, order, pos + 1, map, used) {
            return true;
        }
        map[x] = usize::MAX;
        used[y] = false;
    }
    false
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b, &[]).is_some()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).unwrap()
    }

    pub(crate) fn theta() -> Graph {
        Graph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn degree_bound_is_enforced() {
        let mut g = theta();
        assert_eq!(g.add_edge(0, 1), Err(Error::DegreeExceeded { vertex: 0 }));
        let mut h = Graph::new(1);
        h.add_edge(0, 0).unwrap();
        assert!(matches!(
            h.add_edge(0, 0),
            Err(Error::DegreeExceeded { .. })
        ));
        assert!(matches!(
            Graph::new(2).add_edge(0, 5),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn dart_involution() {
        let g = k4();
        assert!(g.check_darts());
        for d in 0..2 * g.edge_count() {
            assert_eq!(Graph::partner(Graph::partner(d)), d);
            assert_ne!(Graph::partner(d), d);
        }
        assert_eq!(g.multiplicity(0, 1), 1);
        assert_eq!(theta().multiplicity(0, 1), 3);
    }

    #[test]
    fn components_of_empty_edge_set() {
        let g = k4();
        let c = g.components(&g.empty_edge_set());
        assert_eq!(c.len(), 4);
        assert_eq!(c.odd_count(), 4);
        assert_eq!(c.isolated_count(), 4);
    }

    #[test]
    fn components_of_k4_four_circuit() {
        let g = k4();
        // 0-1-2-3-0 uses edges 0 (01), 3 (12), 4 (23), 2 (03)
        let f = EdgeSet::from_ids(6, [0, 3, 4, 2]);
        let c = g.components(&f);
        assert_eq!(c.len(), 1);
        assert_eq!(c.odd_count(), 0);
        assert_eq!(c.components[0].edge_count, 4);
    }

    #[test]
    fn validate_cubic_reports() {
        assert!(k4().validate_cubic().is_ok());
        let (two, _) = k4().disjoint_union(&k4());
        let err = two.validate_cubic().unwrap_err();
        assert!(err.disconnected);
        assert!(err.to_string().contains("disconnected"));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.validate_cubic().unwrap_err().bad_degree, vec![0, 1, 2]);
    }

    #[test]
    fn bridges_of_joined_diamonds() {
        // two K4-minus-an-edge gadgets, each with one degree-2 vertex, joined by an edge
        let mut g = Graph::new(8);
        for off in [0, 4] {
            for (u, v) in [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)] {
                g.add_edge(u + off, v + off).unwrap();
            }
        }
        let bridge = g.add_edge(0, 4).unwrap();
        g.add_edge(3, 7).unwrap();
        assert_eq!(g.is_bridgeless(), Ok(true));

        let mut h = Graph::new(8);
        for off in [0, 4] {
            for (u, v) in [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)] {
                h.add_edge(u + off, v + off).unwrap();
            }
        }
        h.add_edge(0, 4).unwrap();
        assert_eq!(h.is_bridgeless(), Ok(false));
        assert_eq!(h.bridges(), vec![bridge]);
        assert_eq!(theta().is_bridgeless(), Ok(true));
        let (two, _) = k4().disjoint_union(&k4());
        assert_eq!(two.is_bridgeless(), Err(Error::Disconnected));
    }

    #[test]
    fn random_cubic_small_cases() {
        let g = random_cubic(4, 7).unwrap();
        assert!(is_isomorphic(&g, &k4()));
        assert_eq!(random_cubic(10, 3).unwrap(), random_cubic(10, 3).unwrap());
        assert!(random_cubic(7, 0).is_err());
        assert!(random_cubic(2, 0).is_err());
        for seed in 0..100 {
            let g = random_cubic(16, seed).unwrap();
            assert!(g.validate_cubic().is_ok());
            assert!(g.is_simple());
        }
    }

    #[test]
    fn delete_vertices_renumbers() {
        let g = k4();
        let (h, map) = g.delete_vertices(&VertexSet::from_ids(4, [1]));
        assert_eq!(map, vec![Some(0), None, Some(1), Some(2)]);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn isomorphism_respects_fixed_pairs() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let other = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(find_isomorphism(&path, &other, &[]), Some(vec![1, 0, 2]));
        assert!(find_isomorphism(&path, &other, &[(1, 1)]).is_none());
        assert!(!is_isomorphic(&k4(), &theta()));
    }
}
