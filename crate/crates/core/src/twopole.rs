//! 2-poles, the building blocks of the separating construction, and the
//! triangle transforms.
//!
//! A 2-pole is a graph with two distinguished degree-1 vertices, its
//! terminals. The edges at the terminals are the terminal edges and the
//! non-terminal neighbours they lead to are the attachments.

use crate::error::{Error, Result};
use crate::graph::{find_isomorphism, Graph};

pub use crate::composed::{
    construct_paper_graph, construct_variant_gprime, parse_pole_file, write_pole_file, AtomKind,
    BlockEmbedding, ComposedGraph, Flattened, Link, PoleFile, SeriesBlock, VertexOrigin,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoPole {
    pub graph: Graph,
    pub s: usize,
    pub t: usize,
}

impl TwoPole {
    pub fn new(graph: Graph, s: usize, t: usize) -> Result<Self> {
        let n = graph.vertex_count();
        for v in [s, t] {
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: n,
                });
            }
            if graph.degree(v) != 1 {
                return Err(Error::invalid(format!(
                    "terminal {v} has degree {}",
                    graph.degree(v)
                )));
            }
        }
        if s == t {
            return Err(Error::invalid("terminals must be distinct"));
        }
        Ok(TwoPole { graph, s, t })
    }

    /// Terminal edges at `s` and `t`; equal for the identity pole.
    pub fn terminal_edges(&self) -> (usize, usize) {
        let edge = |v: usize| {
            self.graph
                .incident_edges(v)
                .next()
                .expect("terminals have degree 1")
        };
        (edge(self.s), edge(self.t))
    }

    pub fn attachment_s(&self) -> usize {
        self.graph.opposite(self.terminal_edges().0, self.s)
    }

    pub fn attachment_t(&self) -> usize {
        self.graph.opposite(self.terminal_edges().1, self.t)
    }

    /// True when the two terminals are joined by a single edge.
    pub fn is_identity(&self) -> bool {
        self.graph.vertex_count() == 2
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.graph.vertex_count()).filter(move |&v| v != self.s && v != self.t)
    }

    pub fn interior_count(&self) -> usize {
        self.graph.vertex_count() - 2
    }

    /// Whether every non-terminal vertex has degree 3.
    pub fn is_complete(&self) -> bool {
        self.interior_vertices().all(|v| self.graph.degree(v) == 3)
    }

    /// Lowest interior vertex at distance exactly 3 from both terminals.
    pub fn far_vertex(&self) -> Option<usize> {
        let ds = self.graph.distances(self.s);
        let dt = self.graph.distances(self.t);
        self.interior_vertices()
            .find(|&v| ds[v] == Some(3) && dt[v] == Some(3))
    }

    /// The graph with both terminals identified into one closure vertex of
    /// degree 2. Edge ids are unchanged; returns the closure vertex.
    pub fn closed(&self) -> (Graph, usize) {
        let n = self.graph.vertex_count();
        let mut map = vec![0; n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if v != self.t {
                *slot = next;
                next += 1;
            }
        }
        map[self.t] = map[self.s];
        let mut g = Graph::new(n - 1);
        for (u, v) in self.graph.edges() {
            g.add_edge(map[u], map[v])
                .expect("closure vertex has degree 2");
        }
        (g, map[self.s])
    }

    /// Isomorphism mapping terminals to terminals in order.
    pub fn is_isomorphic(&self, other: &TwoPole) -> bool {
        find_isomorphism(
            &self.graph,
            &other.graph,
            &[(self.s, other.s), (self.t, other.t)],
        )
        .is_some()
    }
}

/// The Petersen graph: outer 5-circuit on 0..5, inner pentagram on 5..10 and
/// spokes `i - i+5`. Edge order is outer circuit, spokes, pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    edges.extend((0..5).map(|i| (i, (i + 1) % 5)));
    edges.extend((0..5).map(|i| (i, i + 5)));
    edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    Graph::from_edges(10, &edges).expect("petersen is cubic")
}

/// Replaces edge `e = xy` by `x-w` (keeping id `e`) and `w-y` (appended).
/// The new vertex `w` is the last vertex.
pub fn subdivide(g: &Graph, e: usize) -> Result<Graph> {
    g.check_edge(e)?;
    let w = g.vertex_count();
    let mut out = Graph::new(w + 1);
    for f in 0..g.edge_count() {
        let (u, v) = g.endpoints(f);
        if f == e {
            out.add_edge(u, w)?;
        } else {
            out.add_edge(u, v)?;
        }
    }
    out.add_edge(w, g.endpoints(e).1)?;
    Ok(out)
}

/// Removes a degree-2 vertex `v` and hangs a fresh terminal on each dangling
/// edge. The terminal at the lower former neighbour becomes `s`.
pub fn split_off(g: &Graph, v: usize) -> Result<TwoPole> {
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.vertex_count(),
        });
    }
    if g.degree(v) != 2 || g.multiplicity(v, v) > 0 {
        return Err(Error::invalid(format!(
            "split_off needs a loopless degree-2 vertex, {v} has degree {}",
            g.degree(v)
        )));
    }
    let mut dangling: Vec<(usize, usize)> =
        g.incident_edges(v).map(|e| (g.opposite(e, v), e)).collect();
    dangling.sort_unstable();
    let n = g.vertex_count();
    let map = |u: usize| if u > v { u - 1 } else { u };
    let (s, t) = (n - 1, n);
    let mut out = Graph::new(n + 1);
    for f in 0..g.edge_count() {
        let (a, b) = g.endpoints(f);
        if f == dangling[0].1 {
            out.add_edge(map(dangling[0].0), s)?;
        } else if f == dangling[1].1 {
            out.add_edge(map(dangling[1].0), t)?;
        } else {
            out.add_edge(map(a), map(b))?;
        }
    }
    TwoPole::new(out, s, t)
}

/// Two terminals joined by one edge; the unit of [`join`].
pub fn identity_pole() -> TwoPole {
    TwoPole::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), 0, 1).unwrap()
}

/// Petersen graph with edge `0-1` subdivided and the new vertex split off.
/// Interior vertices keep their Petersen ids; `s = 10` hangs on 0, `t = 11` on 1.
pub fn pole_p() -> TwoPole {
    let g = subdivide(&petersen(), 0).expect("edge 0 exists");
    split_off(&g, 10).expect("the subdivision vertex has degree 2")
}

/// Identifies `s1` with `s2` and `t1` with `t2`, then hangs a new terminal
/// edge on each merged vertex.
///
/// Layout: interior of `p1`, interior of `p2`, merged `s`, merged `t`, new
/// terminals `s'` and `t'`.
pub fn h_merge(p1: &TwoPole, p2: &TwoPole) -> Result<TwoPole> {
    let n1 = p1.graph.vertex_count();
    let n2 = p2.graph.vertex_count();
    let interior = n1 + n2 - 4;
    let (ms, mt) = (interior, interior + 1);
    let (ns, nt) = (interior + 2, interior + 3);
    let mut next = 0;
    let mut map_side = |p: &TwoPole| -> Vec<usize> {
        (0..p.graph.vertex_count())
            .map(|v| {
                if v == p.s {
                    ms
                } else if v == p.t {
                    mt
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect()
    };
    let m1 = map_side(p1);
    let m2 = map_side(p2);
    let mut g = Graph::new(interior + 4);
    for (u, v) in p1.graph.edges() {
        g.add_edge(m1[u], m1[v])?;
    }
    for (u, v) in p2.graph.edges() {
        g.add_edge(m2[u], m2[v])?;
    }
    g.add_edge(ms, ns)?;
    g.add_edge(mt, nt)?;
    TwoPole::new(g, ns, nt)
}

/// Series join: the `t`-side terminal edge of `a` and the `s`-side terminal
/// edge of `b` become one edge. The result has terminals `(a.s, b.t)`; its
/// vertices are those of `a` without `a.t`, then those of `b` without `b.s`.
pub fn join(a: &TwoPole, b: &TwoPole) -> Result<TwoPole> {
    let (_, ea) = a.terminal_edges();
    let (eb, _) = b.terminal_edges();
    let x = a.graph.opposite(ea, a.t);
    let y = b.graph.opposite(eb, b.s);
    let na = a.graph.vertex_count();
    let map_a = |v: usize| if v > a.t { v - 1 } else { v };
    let map_b = |v: usize| (na - 1) + if v > b.s { v - 1 } else { v };
    let mut g = Graph::new(na + b.graph.vertex_count() - 2);
    for f in 0..a.graph.edge_count() {
        if f == ea {
            // the joined edge takes the place of a's t-side terminal edge
            g.add_edge(map_a(x), map_b(y))?;
        } else {
            let (u, v) = a.graph.endpoints(f);
            g.add_edge(map_a(u), map_a(v))?;
        }
    }
    for f in 0..b.graph.edge_count() {
        if f != eb {
            let (u, v) = b.graph.endpoints(f);
            g.add_edge(map_b(u), map_b(v))?;
        }
    }
    TwoPole::new(g, map_a(a.s), map_b(b.t))
}

/// The 2-pole `H`: two copies of `P` merged at both terminal pairs.
pub fn build_h() -> TwoPole {
    h_merge(&pole_p(), &pole_p()).expect("H is well formed")
}

/// `k` copies of `H` joined in series.
pub fn build_h2(k: usize) -> Result<TwoPole> {
    if k == 0 {
        return Err(Error::invalid("h2 needs k >= 1"));
    }
    let h = build_h();
    let mut acc = h.clone();
    for _ in 1..k {
        acc = join(&acc, &h)?;
    }
    Ok(acc)
}

/// Replaces degree-3 vertex `v` by a triangle. The triangle vertices are `v`
/// and two new vertices `n`, `n + 1`; the i-th dart at `v` moves to the i-th
/// triangle vertex. Existing edge ids and endpoint order are kept and the
/// three triangle edges are appended.
pub fn expand_vertex_to_triangle(g: &Graph, v: usize) -> Result<(Graph, [usize; 3])> {
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.vertex_count(),
        });
    }
    if g.degree(v) != 3 {
        return Err(Error::invalid(format!(
            "vertex {v} has degree {}, expected 3",
            g.degree(v)
        )));
    }
    let n = g.vertex_count();
    let tri = [v, n, n + 1];
    let darts: Vec<usize> = g.darts(v).iter().map(|&d| d as usize).collect();
    let place = |dart: usize| -> usize {
        match darts.iter().position(|&d| d == dart) {
            Some(i) => tri[i],
            None => g.owner(dart),
        }
    };
    let mut out = Graph::new(n + 2);
    for e in 0..g.edge_count() {
        out.add_edge(place(2 * e), place(2 * e + 1))?;
    }
    out.add_edge(tri[0], tri[1])?;
    out.add_edge(tri[1], tri[2])?;
    out.add_edge(tri[2], tri[0])?;
    Ok((out, tri))
}

/// Contracts the triangle on `tri` into its lowest vertex and renumbers the
/// rest densely. Returns the old-to-new vertex map.
pub fn contract_triangle(g: &Graph, tri: [usize; 3]) -> Result<(Graph, Vec<usize>)> {
    let n = g.vertex_count();
    for &v in &tri {
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: n,
            });
        }
    }
    let [a, b, c] = tri;
    if a == b || b == c || a == c {
        return Err(Error::invalid("triangle vertices must be distinct"));
    }
    let sides = [(a, b), (b, c), (c, a)];
    let mut inner = Vec::with_capacity(3);
    for (x, y) in sides {
        let e = g.find_edge(x, y).ok_or_else(|| {
            Error::invalid(format!("{a},{b},{c} is not a triangle: no edge {x}-{y}"))
        })?;
        inner.push(e);
    }
    let outside: usize = tri.iter().map(|&v| g.degree(v)).sum::<usize>() - 6;
    if outside > 3 {
        return Err(Error::invalid(format!(
            "contracting {a},{b},{c} would create a vertex of degree {outside}"
        )));
    }
    let keep = a.min(b).min(c);
    let mut map = vec![0; n];
    let mut next = 0;
    for (v, slot) in map.iter_mut().enumerate() {
        if v == keep || !tri.contains(&v) {
            *slot = next;
            next += 1;
        }
    }
    for &v in &tri {
        map[v] = map[keep];
    }
    let mut out = Graph::new(n - 2);
    for e in 0..g.edge_count() {
        if !inner.contains(&e) {
            let (u, v) = g.endpoints(e);
            out.add_edge(map[u], map[v])?;
        }
    }
    Ok((out, map))
}

/// Every triangle `[a, b, c]` with `a < b < c`.
pub fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..g.vertex_count() {
        let mut nb: Vec<usize> = g.neighbours(a).filter(|&w| w > a).collect();
        nb.sort_unstable();
        nb.dedup();
        for (i, &b) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                if g.find_edge(b, c).is_some() {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Expands every vertex of a cubic graph into a triangle.
pub fn expand_all_vertices(g: &Graph) -> Result<Graph> {
    let mut out = g.clone();
    for v in 0..g.vertex_count() {
        out = expand_vertex_to_triangle(&out, v)?.0;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::{three_edge_colour, TerminalConstraint};
    use crate::graph::is_isomorphic;
    use crate::graph::tests::k4;

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!(p.validate_cubic().is_ok());
        assert_eq!(p.is_bridgeless(), Ok(true));
        assert!(p.is_simple());
        // girth 5: no triangles, no 4-circuits
        assert!(triangles(&p).is_empty());
        for v in 0..10 {
            let d = p.distances(v);
            for w in 0..10 {
                if w != v {
                    let common = p
                        .neighbours(v)
                        .filter(|&x| p.neighbours(w).any(|y| y == x))
                        .count();
                    assert!(common <= 1);
                }
            }
            assert!(d.iter().all(|x| x.unwrap() <= 2));
        }
        assert!(three_edge_colour(&p, &TerminalConstraint::Any)
            .unwrap()
            .is_none());
    }

    #[test]
    fn subdivide_and_split() {
        let g = subdivide(&k4(), 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 7));
        assert_eq!((0..5).filter(|&v| g.degree(v) == 2).count(), 1);
        assert!(split_off(&k4(), 0).is_err());
        let p = pole_p();
        assert_eq!((p.graph.vertex_count(), p.graph.edge_count()), (12, 16));
        assert_eq!((p.s, p.t), (10, 11));
        assert_eq!((p.attachment_s(), p.attachment_t()), (0, 1));
        assert!(p.is_complete());
    }

    #[test]
    fn pole_p_does_not_depend_on_the_edge() {
        let base = pole_p();
        let pet = petersen();
        for e in 0..15 {
            let q = split_off(&subdivide(&pet, e).unwrap(), 10).unwrap();
            assert!(q.is_isomorphic(&base), "edge {e}");
        }
    }

    #[test]
    fn h_and_h2_counts() {
        let h = build_h();
        assert_eq!((h.graph.vertex_count(), h.graph.edge_count()), (24, 34));
        assert_eq!(h.graph.degree(h.s), 1);
        assert_eq!(h.graph.degree(h.t), 1);
        assert!(h.is_complete());
        let (closed, c) = h.closed();
        assert_eq!(closed.degree(c), 2);
        assert_eq!(closed.cycle_space_dimension(), 12);
        let h2 = build_h2(2).unwrap();
        assert_eq!((h2.graph.vertex_count(), h2.graph.edge_count()), (46, 67));
        assert!(h2.is_complete());
        assert!(build_h2(0).is_err());
    }

    #[test]
    fn join_identity_and_associativity() {
        let p = pole_p();
        let id = identity_pole();
        assert!(join(&id, &p).unwrap().is_isomorphic(&p));
        assert!(join(&p, &id).unwrap().is_isomorphic(&p));
        assert!(join(&id, &id).unwrap().is_isomorphic(&id));
        let h = build_h();
        let left = join(&join(&p, &h).unwrap(), &p).unwrap();
        let right = join(&p, &join(&h, &p).unwrap()).unwrap();
        assert!(left.is_isomorphic(&right));
        // orientation matters: P then H is not H then P with terminals fixed
        let ph = join(&p, &h).unwrap();
        let hp = join(&h, &p).unwrap();
        assert!(!ph.is_isomorphic(&hp));
    }

    #[test]
    fn triangle_round_trips() {
        let pet = petersen();
        let (expanded, tri) = expand_vertex_to_triangle(&pet, 3).unwrap();
        assert_eq!(expanded.vertex_count(), 12);
        assert!(expanded.validate_cubic().is_ok());
        let (back, _) = contract_triangle(&expanded, tri).unwrap();
        assert_eq!(back, pet);
        let all = expand_all_vertices(&k4()).unwrap();
        assert_eq!(all.vertex_count(), 12);
        assert!(all.validate_cubic().is_ok());
        assert_eq!(triangles(&all).len(), 4);
        assert!(contract_triangle(&pet, [0, 1, 2]).is_err());
        assert!(expand_vertex_to_triangle(&Graph::from_edges(2, &[(0, 1)]).unwrap(), 0).is_err());
    }

    #[test]
    fn contraction_of_expanded_k4_vertex() {
        let (g, tri) = expand_vertex_to_triangle(&k4(), 0).unwrap();
        let (back, map) = contract_triangle(&g, tri).unwrap();
        assert!(is_isomorphic(&back, &k4()));
        assert_eq!(map[tri[1]], map[tri[0]]);
    }

    #[test]
    fn far_vertex_of_p() {
        let p = pole_p();
        let v = p.far_vertex().unwrap();
        assert_eq!(p.graph.distances(p.s)[v], Some(3));
        assert_eq!(p.graph.distances(p.t)[v], Some(3));
    }
}
