//! Exhaustive oddness and weak oddness.
//!
//! 2-factors of a cubic graph are the complements of its perfect matchings,
//! which are enumerated by backtracking. Even factors are the elements of the
//! cycle space over GF(2); constrained families (some edges forced in or out)
//! form an affine coset that is solved for once and then walked in Gray-code
//! order, one basis vector flip per step.

use crate::error::{Error, Result};
use crate::graph::{ComponentSummary, Graph, UnionFind};
use crate::ids::{EdgeSet, IdSet};

/// Default cycle-space dimension cap for [`weak_oddness_bf`].
pub const DEFAULT_DIMENSION_CAP: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub edges: EdgeSet,
}

impl Matching {
    pub fn is_matching(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        self.edges.iter().all(|e| {
            let (u, v) = g.endpoints(e);
            let ok = u != v && !seen[u] && !seen[v];
            seen[u] = true;
            seen[v] = true;
            ok
        })
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.is_matching(g) && 2 * self.edges.len() == g.vertex_count()
    }

    /// The complementary spanning subgraph; a 2-factor when `g` is cubic.
    pub fn complement(&self, g: &Graph) -> EdgeSet {
        let mut all = g.all_edges();
        all.xor_with(&self.edges);
        all
    }
}

struct Frame {
    vertex: usize,
    next: usize,
    edge: Option<usize>,
}

/// Lazy enumeration of perfect matchings; each is produced exactly once.
pub struct PerfectMatchings<'g> {
    g: &'g Graph,
    covered: Vec<bool>,
    stack: Vec<Frame>,
    started: bool,
    done: bool,
}

impl<'g> PerfectMatchings<'g> {
    fn lowest_uncovered(&self) -> Option<usize> {
        self.covered.iter().position(|&c| !c)
    }

    fn current(&self) -> Matching {
        let mut edges = self.g.empty_edge_set();
        for f in &self.stack {
            if let Some(e) = f.edge {
                edges.insert(e);
            }
        }
        Matching { edges }
    }
}

impl Iterator for PerfectMatchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            match self.lowest_uncovered() {
                None => {
                    self.done = true;
                    return Some(self.current());
                }
                Some(v) => self.stack.push(Frame {
                    vertex: v,
                    next: 0,
                    edge: None,
                }),
            }
        }
        loop {
            let g = self.g;
            let Some(top) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            let v = top.vertex;
            if let Some(e) = top.edge.take() {
                self.covered[v] = false;
                self.covered[g.opposite(e, v)] = false;
            }
            let mut found = None;
            while top.next < g.degree(v) {
                let e = Graph::dart_edge(g.darts(v)[top.next] as usize);
                top.next += 1;
                let w = g.opposite(e, v);
                if w != v && !self.covered[w] {
                    found = Some((e, w));
                    break;
                }
            }
            match found {
                None => {
                    self.stack.pop();
                }
                Some((e, w)) => {
                    top.edge = Some(e);
                    self.covered[v] = true;
                    self.covered[w] = true;
                    match self.lowest_uncovered() {
                        None => return Some(self.current()),
                        Some(u) => self.stack.push(Frame {
                            vertex: u,
                            next: 0,
                            edge: None,
                        }),
                    }
                }
            }
        }
    }
}

/// Every perfect matching of `g`, lowest uncovered vertex first.
pub fn perfect_matchings(g: &Graph) -> Result<PerfectMatchings<'_>> {
    g.require_cubic()?;
    Ok(perfect_matchings_unchecked(g))
}

pub(crate) fn perfect_matchings_unchecked(g: &Graph) -> PerfectMatchings<'_> {
    PerfectMatchings {
        g,
        covered: vec![false; g.vertex_count()],
        stack: Vec::new(),
        started: false,
        done: false,
    }
}

/// An optimal factor together with its odd-component count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorWitness {
    pub odd_components: usize,
    pub edges: EdgeSet,
}

/// Reusable scratch space for counting odd components of spanning subgraphs.
pub(crate) struct OddCounter {
    uf: UnionFind,
}

impl OddCounter {
    pub(crate) fn new(n: usize) -> Self {
        OddCounter {
            uf: UnionFind::new(n),
        }
    }

    /// Odd components of `(V, edges)`, skipping the component containing
    /// `skip` if given. Also returns the size of that skipped component.
    pub(crate) fn count(
        &mut self,
        g: &Graph,
        edges: &EdgeSet,
        skip: Option<usize>,
    ) -> (usize, usize) {
        self.uf.reset();
        for e in edges.iter() {
            let (u, v) = g.endpoints(e);
            self.uf.union(u, v);
        }
        let skip_root = skip.map(|v| self.uf.find(v));
        let mut odd = 0;
        for v in 0..g.vertex_count() {
            if self.uf.is_root(v) && Some(v) != skip_root && self.uf.root_size(v) % 2 == 1 {
                odd += 1;
            }
        }
        let skipped = skip_root.map_or(0, |r| self.uf.root_size(r));
        (odd, skipped)
    }
}

/// Oddness: fewest odd circuits over all 2-factors. `None` when the graph has
/// no perfect matching (only possible with bridges).
pub fn oddness_bf(g: &Graph) -> Result<Option<FactorWitness>> {
    g.require_cubic()?;
    let mut counter = OddCounter::new(g.vertex_count());
    let mut best: Option<FactorWitness> = None;
    for m in perfect_matchings_unchecked(g) {
        let factor = m.complement(g);
        let (odd, _) = counter.count(g, &factor, None);
        if best.as_ref().is_none_or(|b| odd < b.odd_components) {
            best = Some(FactorWitness {
                odd_components: odd,
                edges: factor,
            });
            if odd == 0 {
                break;
            }
        }
    }
    Ok(best)
}

/// An even-degree spanning subgraph with its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenSubgraph {
    pub edges: EdgeSet,
    pub components: ComponentSummary,
}

/// Fundamental-cycle basis of the cycle space, shortest cycles first.
pub fn cycle_basis(g: &Graph) -> Vec<EdgeSet> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; m];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &d in g.darts(v) {
                let e = Graph::dart_edge(d as usize);
                let w = g.owner(Graph::partner(d as usize));
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, e));
                    tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut basis: Vec<EdgeSet> = (0..m)
        .filter(|&e| !tree[e])
        .map(|e| {
            let mut cycle = EdgeSet::new(m);
            cycle.insert(e);
            let (mut a, mut b) = g.endpoints(e);
            while a != b {
                if depth[a] < depth[b] {
                    std::mem::swap(&mut a, &mut b);
                }
                let (up, pe) = parent[a].expect("non-root has a parent");
                cycle.toggle(pe);
                a = up;
            }
            cycle
        })
        .collect();
    basis.sort_by_key(|c| c.len());
    basis
}

/// The even subgraphs respecting a forcing, as `particular + span(basis)`.
#[derive(Debug, Clone)]
pub struct Coset {
    pub particular: EdgeSet,
    pub basis: Vec<EdgeSet>,
}

impl Coset {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Number of elements; saturates at `u128::MAX` for absurd dimensions.
    pub fn size(&self) -> u128 {
        1u128
            .checked_shl(self.basis.len() as u32)
            .unwrap_or(u128::MAX)
    }

    /// Visits every element in Gray-code order. The callback returns `false`
    /// to stop early.
    pub fn walk(&self, mut visit: impl FnMut(&EdgeSet) -> bool) {
        let mut x = self.particular.clone();
        if !visit(&x) {
            return;
        }
        let k = self.basis.len();
        assert!(k < 64, "coset dimension {k} too large to walk");
        for i in 1u64..(1u64 << k) {
            x.xor_with(&self.basis[i.trailing_zeros() as usize]);
            if !visit(&x) {
                return;
            }
        }
    }
}

/// Solves for the coset of even subgraphs containing `forced_in` and avoiding
/// `forced_out`; `None` if no even subgraph meets the forcing.
pub fn even_subgraph_coset(
    g: &Graph,
    forced_in: &EdgeSet,
    forced_out: &EdgeSet,
) -> Result<Option<Coset>> {
    if !forced_in.is_disjoint(forced_out) {
        return Err(Error::invalid("an edge is forced both in and out"));
    }
    let m = g.edge_count();
    let generators = cycle_basis(g);
    let d = generators.len();

    // rows: (coefficients over generators, right-hand side)
    let mut rows: Vec<(IdSet<()>, bool)> = forced_in
        .iter()
        .map(|e| (e, true))
        .chain(forced_out.iter().map(|e| (e, false)))
        .map(|(e, rhs)| {
            let coeffs = IdSet::from_ids(d, (0..d).filter(|&i| generators[i].contains(e)));
            (coeffs, rhs)
        })
        .collect();

    // reduced row echelon form
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..d {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r].0.contains(col)) else {
            continue;
        };
        rows.swap(rank, found);
        let (pivot_coeffs, pivot_rhs) = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0.contains(col) {
                row.0.xor_with(&pivot_coeffs);
                row.1 ^= pivot_rhs;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|(_, rhs)| *rhs) {
        return Ok(None);
    }

    let mut particular = EdgeSet::new(m);
    for (r, &col) in pivots.iter().enumerate() {
        if rows[r].1 {
            particular.xor_with(&generators[col]);
        }
    }
    let is_pivot = IdSet::<()>::from_ids(d, pivots.iter().copied());
    let basis = (0..d)
        .filter(|&f| !is_pivot.contains(f))
        .map(|f| {
            let mut v = generators[f].clone();
            for (r, &col) in pivots.iter().enumerate() {
                if rows[r].0.contains(f) {
                    v.xor_with(&generators[col]);
                }
            }
            v
        })
        .collect();
    Ok(Some(Coset { particular, basis }))
}

/// Lazy sequence of all even subgraphs meeting the forcing, each exactly once.
pub fn even_subgraphs<'g>(
    g: &'g Graph,
    forced_in: &EdgeSet,
    forced_out: &EdgeSet,
) -> Result<impl Iterator<Item = EvenSubgraph> + 'g> {
    let coset = even_subgraph_coset(g, forced_in, forced_out)?;
    let (current, basis) = match coset {
        Some(c) => (Some(c.particular), c.basis),
        None => (None, Vec::new()),
    };
    assert!(basis.len() < 64, "coset dimension too large to enumerate");
    let total = 1u64 << basis.len();
    let mut index = 0u64;
    let mut current = current;
    Ok(std::iter::from_fn(move || {
        let x = current.as_mut()?;
        if index >= total {
            return None;
        }
        if index > 0 {
            x.xor_with(&basis[index.trailing_zeros() as usize]);
        }
        index += 1;
        let edges = x.clone();
        let components = g.components(&edges);
        Some(EvenSubgraph { edges, components })
    }))
}

/// Weak oddness: fewest odd components (odd circuits and isolated vertices)
/// over all even factors, by exhausting the cycle space.
pub fn weak_oddness_bf(g: &Graph, dimension_cap: usize) -> Result<FactorWitness> {
    g.require_cubic()?;
    let dim = g.cycle_space_dimension();
    if dim > dimension_cap {
        return Err(Error::CapExceeded {
            what: "cycle-space dimension",
            value: dim,
            cap: dimension_cap,
        });
    }
    let empty = g.empty_edge_set();
    let coset = even_subgraph_coset(g, &empty, &empty)?.expect("unforced coset is never empty");
    let mut counter = OddCounter::new(g.vertex_count());
    let mut best = FactorWitness {
        odd_components: usize::MAX,
        edges: empty,
    };
    coset.walk(|x| {
        let (odd, _) = counter.count(g, x, None);
        if odd < best.odd_components {
            best = FactorWitness {
                odd_components: odd,
                edges: x.clone(),
            };
        }
        odd > 0
    });
    Ok(best)
}

/// Whether every vertex has even degree in `(V, edges)`.
pub fn is_even_factor(g: &Graph, edges: &EdgeSet) -> bool {
    let mut parity = vec![false; g.vertex_count()];
    for e in edges.iter() {
        let (u, v) = g.endpoints(e);
        parity[u] ^= true;
        parity[v] ^= true;
    }
    parity.iter().all(|&p| !p)
}

/// Whether every vertex has degree exactly 2 in `(V, edges)`.
pub fn is_two_factor(g: &Graph, edges: &EdgeSet) -> bool {
    let mut degree = vec![0usize; g.vertex_count()];
    for e in edges.iter() {
        let (u, v) = g.endpoints(e);
        degree[u] += 1;
        degree[v] += 1;
    }
    degree.iter().all(|&d| d == 2)
}

pub fn odd_component_count(g: &Graph, edges: &EdgeSet) -> usize {
    g.components(edges).odd_count()
}
