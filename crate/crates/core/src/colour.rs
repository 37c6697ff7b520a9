//! Exact 3-edge-colouring and resistance.
//!
//! The colouring search is backtracking with conflict-directed backjumping:
//! it always extends the partial colouring at the uncoloured edge with the
//! fewest admissible colours (ties go to the edge with more coloured
//! neighbours, then the lowest id), so a vertex with two coloured edges
//! immediately forces its third. A failed subtree reports which earlier
//! assignments caused the failure, and the search returns straight to the
//! latest of them. With three colours the edges at one vertex are fixed to
//! 1, 2, 3; with four, colours that have not appeared yet are
//! interchangeable and only the smallest of them is tried.
//!
//! Resistance is found by iterative deepening over deletion sets. Every
//! failed colouring attempt leaves behind the vertex (or edge) set the search
//! actually looked at; that set already spans an uncolourable subgraph, so a
//! working deletion set must hit it. The search therefore only branches on
//! the members of one such set not yet hit.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ids::{EdgeSet, IdSet, VertexSet};

pub type Colour = u8;

/// Restriction on the colours of designated edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum TerminalConstraint {
    #[default]
    Any,
    Same(usize, usize),
    Different(usize, usize),
    /// Explicit colours (1..=3) per edge.
    Fixed(Vec<(usize, Colour)>),
}

impl TerminalConstraint {
    fn edges(&self) -> Vec<usize> {
        match self {
            TerminalConstraint::Any => vec![],
            TerminalConstraint::Same(a, b) | TerminalConstraint::Different(a, b) => vec![*a, *b],
            TerminalConstraint::Fixed(list) => list.iter().map(|&(e, _)| e).collect(),
        }
    }

    pub fn is_satisfied(&self, colours: &[Colour]) -> bool {
        match self {
            TerminalConstraint::Any => true,
            TerminalConstraint::Same(a, b) => colours[*a] == colours[*b],
            TerminalConstraint::Different(a, b) => colours[*a] != colours[*b],
            TerminalConstraint::Fixed(list) => list.iter().all(|&(e, c)| colours[e] == c),
        }
    }
}

/// Colour (1-based) of every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColouring {
    pub colours: Vec<Colour>,
}

impl EdgeColouring {
    pub fn colour(&self, e: usize) -> Colour {
        self.colours[e]
    }

    pub fn count(&self, colour: Colour) -> usize {
        self.colours.iter().filter(|&&c| c == colour).count()
    }
}

/// Whether no two edges meeting at a vertex outside `relaxed` share a colour
/// and every colour lies in `1..=palette`.
pub fn is_proper_colouring(
    g: &Graph,
    colours: &[Colour],
    palette: Colour,
    relaxed: Option<&VertexSet>,
) -> bool {
    if colours.len() != g.edge_count() || colours.iter().any(|&c| c == 0 || c > palette) {
        return false;
    }
    (0..g.vertex_count()).all(|v| {
        if relaxed.is_some_and(|r| r.contains(v)) {
            return true;
        }
        let mut seen = 0u8;
        g.darts(v).iter().all(|&d| {
            let bit = 1 << colours[Graph::dart_edge(d as usize)];
            let fresh = seen & bit == 0;
            seen |= bit;
            fresh
        })
    })
}

struct Search<'g> {
    g: &'g Graph,
    enforced: Vec<bool>,
    colour: Vec<Colour>,
    used: Vec<u8>,
    fixed: Vec<Colour>,
    relation: Option<(usize, usize, bool)>,
    palette: Colour,
    fourth_budget: usize,
    fourth_used: usize,
    symmetric: bool,
    touched: Vec<bool>,
    uncoloured: usize,
}

enum Outcome {
    Coloured(Vec<Colour>),
    /// Edges the refutation looked at.
    Refuted(Vec<usize>),
}

impl<'g> Search<'g> {
    fn new(
        g: &'g Graph,
        constraint: &TerminalConstraint,
        relaxed: Option<&VertexSet>,
        palette: Colour,
        fourth_budget: usize,
    ) -> Result<Self> {
        for e in constraint.edges() {
            g.check_edge(e)?;
        }
        let mut fixed = vec![0; g.edge_count()];
        let mut relation = None;
        match constraint {
            TerminalConstraint::Any => {}
            TerminalConstraint::Same(a, b) => relation = Some((*a, *b, true)),
            TerminalConstraint::Different(a, b) => relation = Some((*a, *b, false)),
            TerminalConstraint::Fixed(list) => {
                for &(e, c) in list {
                    if !(1..=3).contains(&c) {
                        return Err(Error::invalid(format!("fixed colour {c} not in 1..=3")));
                    }
                    if fixed[e] != 0 && fixed[e] != c {
                        return Err(Error::invalid(format!("edge {e} fixed to two colours")));
                    }
                    fixed[e] = c;
                }
            }
        }
        Ok(Search {
            g,
            enforced: (0..g.vertex_count())
                .map(|v| !relaxed.is_some_and(|r| r.contains(v)))
                .collect(),
            colour: vec![0; g.edge_count()],
            used: vec![0; g.vertex_count()],
            fixed,
            relation,
            palette,
            fourth_budget,
            fourth_used: 0,
            symmetric: !matches!(constraint, TerminalConstraint::Fixed(_)),
            touched: vec![false; g.edge_count()],
            uncoloured: g.edge_count(),
        })
    }

    /// Bitmask of admissible colours (bit c for colour c).
    fn domain(&self, e: usize, max_used: Colour) -> u8 {
        let (u, v) = self.g.endpoints(e);
        let mut mask: u8 = ((1u16 << (self.palette + 1)) - 2) as u8;
        if self.fourth_used >= self.fourth_budget {
            mask &= !(1 << 4);
        }
        if self.symmetric {
            let limit = (max_used + 1).min(3);
            mask &= ((1u16 << (limit + 1)) - 2) as u8 | (mask & (1 << 4));
        }
        if self.enforced[u] {
            mask &= !self.used[u];
        }
        if self.enforced[v] {
            mask &= !self.used[v];
        }
        if self.fixed[e] != 0 {
            mask &= 1 << self.fixed[e];
        }
        if let Some((a, b, same)) = self.relation {
            let other = if e == a {
                Some(b)
            } else if e == b {
                Some(a)
            } else {
                None
            };
            if let Some(o) = other {
                if o == e {
                    if !same {
                        mask = 0;
                    }
                } else if self.colour[o] != 0 {
                    let bit = 1u8 << self.colour[o];
                    mask &= if same { bit } else { !bit };
                }
            }
        }
        mask
    }

    fn coloured_neighbours(&self, e: usize) -> usize {
        let (u, v) = self.g.endpoints(e);
        let count = |w: usize| {
            self.g
                .incident_edges(w)
                .filter(|&f| f != e && self.colour[f] != 0)
                .count()
        };
        count(u) + if u != v { count(v) } else { 0 }
    }

    fn select(&self, max_used: Colour) -> Option<(usize, u8)> {
        let mut best: Option<(usize, u8, u32, usize)> = None;
        for e in 0..self.g.edge_count() {
            if self.colour[e] != 0 {
                continue;
            }
            let mask = self.domain(e, max_used);
            let size = mask.count_ones();
            if size == 0 {
                return Some((e, 0));
            }
            let better = match best {
                None => true,
                Some((_, _, bsize, bn)) => {
                    size < bsize || (size == bsize && self.coloured_neighbours(e) > bn)
                }
            };
            if better {
                best = Some((e, mask, size, self.coloured_neighbours(e)));
            }
        }
        best.map(|(e, m, _, _)| (e, m))
    }

    fn set(&mut self, e: usize, c: Colour) {
        let (u, v) = self.g.endpoints(e);
        self.colour[e] = c;
        self.used[u] |= 1 << c;
        self.used[v] |= 1 << c;
        if c == 4 {
            self.fourth_used += 1;
        }
        self.uncoloured -= 1;
    }

    fn unset(&mut self, e: usize) {
        let (u, v) = self.g.endpoints(e);
        let c = self.colour[e];
        self.colour[e] = 0;
        self.used[u] &= !(1 << c);
        self.used[v] &= !(1 << c);
        if c == 4 {
            self.fourth_used -= 1;
        }
        self.uncoloured += 1;
    }

    /// Assigned edges that explain why the colours missing from `mask` are
    /// unavailable to `e`. One sufficient reason is recorded per colour.
    fn pruning_reasons(&self, e: usize, mask: u8, max_used: Colour) -> EdgeSet {
        let mut why = EdgeSet::new(self.g.edge_count());
        let (u, v) = self.g.endpoints(e);
        for c in 1..=self.palette {
            if mask >> c & 1 == 1 || (self.fixed[e] != 0 && self.fixed[e] != c) {
                continue;
            }
            let neighbour = [u, v]
                .into_iter()
                .filter(|&w| self.enforced[w])
                .flat_map(|w| self.g.incident_edges(w))
                .find(|&f| f != e && self.colour[f] == c);
            if let Some(f) = neighbour {
                why.insert(f);
                continue;
            }
            if let Some((a, b, _)) = self.relation {
                let other = if e == a { b } else { a };
                if (e == a || e == b) && other != e && self.colour[other] != 0 {
                    why.insert(other);
                    continue;
                }
            }
            if c == 4 && self.fourth_used >= self.fourth_budget {
                (0..self.g.edge_count())
                    .filter(|&f| self.colour[f] == 4)
                    .for_each(|f| why.insert(f));
                continue;
            }
            if self.symmetric && c <= 3 && c > max_used + 1 {
                (0..self.g.edge_count())
                    .filter(|&f| self.colour[f] != 0)
                    .for_each(|f| why.insert(f));
            }
        }
        why
    }

    /// Extends the partial colouring. On failure returns a set of assigned
    /// edges whose current colours already rule out every completion, which
    /// lets the caller skip back past assignments that played no part.
    fn solve(&mut self, max_used: Colour) -> std::result::Result<(), EdgeSet> {
        if self.uncoloured == 0 {
            return Ok(());
        }
        let Some((e, mask)) = self.select(max_used) else {
            return Ok(());
        };
        self.touched[e] = true;
        let mut conflict = self.pruning_reasons(e, mask, max_used);
        for c in 1..=self.palette {
            if mask >> c & 1 == 0 {
                continue;
            }
            self.set(e, c);
            let next_max = if c <= 3 { max_used.max(c) } else { max_used };
            let result = self.solve(next_max);
            if result.is_ok() {
                return Ok(());
            }
            self.unset(e);
            let cause = result.unwrap_err();
            if !cause.contains(e) {
                return Err(cause);
            }
            conflict.union_with(&cause);
            conflict.remove(e);
        }
        Err(conflict)
    }

    /// Replaces value symmetry by fixing colours 1, 2, 3 on the edges of
    /// one enforced vertex. Only sound for three colours without explicit
    /// colour constraints.
    fn fix_symmetry(&mut self) {
        if !self.symmetric || self.palette != 3 {
            return;
        }
        let anchor = (0..self.g.vertex_count()).find(|&v| {
            self.enforced[v]
                && self.g.degree(v) == 3
                && self.g.incident_edges(v).all(|e| !self.g.is_loop(e))
        });
        if let Some(v) = anchor {
            let edges: Vec<usize> = self.g.incident_edges(v).collect();
            for (e, c) in edges.into_iter().zip(1..) {
                self.fixed[e] = c;
            }
            self.symmetric = false;
        }
    }

    fn run(mut self) -> Outcome {
        // a loop at an enforced vertex can never be properly coloured
        for e in 0..self.g.edge_count() {
            let (u, v) = self.g.endpoints(e);
            if u == v && self.enforced[u] {
                return Outcome::Refuted(vec![e]);
            }
        }
        self.fix_symmetry();
        if self.solve(0).is_ok() {
            Outcome::Coloured(self.colour)
        } else {
            Outcome::Refuted(
                (0..self.g.edge_count())
                    .filter(|&e| self.touched[e])
                    .collect(),
            )
        }
    }
}

fn colour_with(
    g: &Graph,
    constraint: &TerminalConstraint,
    relaxed: Option<&VertexSet>,
    palette: Colour,
    fourth_budget: usize,
) -> Result<Outcome> {
    let outcome = Search::new(g, constraint, relaxed, palette, fourth_budget)?.run();
    if let Outcome::Coloured(colours) = &outcome {
        assert!(
            is_proper_colouring(g, colours, palette, relaxed) && constraint.is_satisfied(colours),
            "colouring search returned an improper colouring"
        );
        assert!(colours.iter().filter(|&&c| c == 4).count() <= fourth_budget);
    }
    Ok(outcome)
}

/// A proper 3-edge-colouring meeting `constraint`, or `None` if there is none.
///
/// Vertices of degree 1 and 2 are fine; properness is only required where
/// edges meet.
pub fn three_edge_colour(
    g: &Graph,
    constraint: &TerminalConstraint,
) -> Result<Option<EdgeColouring>> {
    three_edge_colour_relaxed(g, constraint, None)
}

/// Like [`three_edge_colour`], with properness waived at the vertices in
/// `relaxed`. Waiving properness at a vertex set is equivalent to deleting it.
pub fn three_edge_colour_relaxed(
    g: &Graph,
    constraint: &TerminalConstraint,
    relaxed: Option<&VertexSet>,
) -> Result<Option<EdgeColouring>> {
    Ok(match colour_with(g, constraint, relaxed, 3, 0)? {
        Outcome::Coloured(colours) => Some(EdgeColouring { colours }),
        Outcome::Refuted(_) => None,
    })
}

pub fn is_colourable(g: &Graph) -> bool {
    matches!(
        colour_with(g, &TerminalConstraint::Any, None, 3, 0),
        Ok(Outcome::Coloured(_))
    )
}

/// Minimum deletion set found by [`resistance_vertex`] or [`resistance_edge`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeletionWitness {
    pub value: usize,
    /// Deleted vertex or edge ids, sorted.
    pub deleted: Vec<usize>,
}

/// Smallest subset of `0..universe` accepted by `test`, by iterative
/// deepening over hitting sets. `test` returns `None` when a deletion set
/// works and otherwise a core: ids that every working superset must hit.
fn min_deletion(
    universe: usize,
    budget: usize,
    mut test: impl FnMut(&[usize]) -> Result<Option<Vec<usize>>>,
) -> Result<Option<Vec<usize>>> {
    struct Hitting<'t, T> {
        universe: usize,
        cores: Vec<IdSet<()>>,
        core_ids: Vec<Vec<usize>>,
        explored: HashSet<Vec<usize>>,
        test: &'t mut T,
    }

    impl<T: FnMut(&[usize]) -> Result<Option<Vec<usize>>>> Hitting<'_, T> {
        fn search(&mut self, deleted: &mut Vec<usize>, left: usize) -> Result<bool> {
            let mut key = deleted.clone();
            key.sort_unstable();
            if !self.explored.insert(key) {
                return Ok(false);
            }
            let current = IdSet::from_ids(self.universe, deleted.iter().copied());
            let core = match self.cores.iter().position(|c| c.is_disjoint(&current)) {
                Some(i) => i,
                None => match (self.test)(deleted)? {
                    None => return Ok(true),
                    Some(ids) => {
                        self.cores
                            .push(IdSet::from_ids(self.universe, ids.iter().copied()));
                        self.core_ids.push(ids);
                        self.cores.len() - 1
                    }
                },
            };
            if left == 0 {
                return Ok(false);
            }
            for v in self.core_ids[core].clone() {
                deleted.push(v);
                if self.search(deleted, left - 1)? {
                    return Ok(true);
                }
                deleted.pop();
            }
            Ok(false)
        }
    }

    let mut h = Hitting {
        universe,
        cores: Vec::new(),
        core_ids: Vec::new(),
        explored: HashSet::new(),
        test: &mut test,
    };
    for k in 0..=budget {
        h.explored.clear();
        let mut deleted = Vec::new();
        if h.search(&mut deleted, k)? {
            deleted.sort_unstable();
            return Ok(Some(deleted));
        }
    }
    Ok(None)
}

/// Fewest vertices among `allowed` at which properness must be waived for a
/// colouring meeting `constraint` to exist, trying sets of size up to
/// `budget`. Returns the sorted set, or `None` if no set within budget works.
pub(crate) fn min_relaxation(
    g: &Graph,
    constraint: &TerminalConstraint,
    allowed: &VertexSet,
    budget: usize,
) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    min_deletion(n, budget, |combo| {
        let relaxed = VertexSet::from_ids(n, combo.iter().copied());
        Ok(match colour_with(g, constraint, Some(&relaxed), 3, 0)? {
            Outcome::Coloured(_) => None,
            Outcome::Refuted(edges) => {
                let mut core: Vec<usize> = edges
                    .iter()
                    .flat_map(|&e| {
                        let (u, v) = g.endpoints(e);
                        [u, v]
                    })
                    .filter(|&v| allowed.contains(v))
                    .collect();
                core.sort_unstable();
                core.dedup();
                Some(core)
            }
        })
    })
}

/// Vertex resistance: fewest vertices whose deletion leaves a
/// 3-edge-colourable graph. Every failed colouring attempt yields the
/// vertices its refutation touched, and later candidates must hit them.
/// `None` means no set of size `<= budget` works; the budget defaults to `n`.
pub fn resistance_vertex(g: &Graph, budget: Option<usize>) -> Result<Option<DeletionWitness>> {
    g.require_cubic()?;
    let n = g.vertex_count();
    let budget = budget.unwrap_or(n).min(n);
    let found = min_deletion(n, budget, |combo| {
        let (h, map) = g.delete_vertices(&VertexSet::from_ids(n, combo.iter().copied()));
        Ok(
            match colour_with(&h, &TerminalConstraint::Any, None, 3, 0)? {
                Outcome::Coloured(_) => None,
                Outcome::Refuted(edges) => {
                    let back: Vec<usize> = (0..n).filter(|&v| map[v].is_some()).collect();
                    let mut core: Vec<usize> = edges
                        .iter()
                        .flat_map(|&e| {
                            let (u, v) = h.endpoints(e);
                            [back[u], back[v]]
                        })
                        .collect();
                    core.sort_unstable();
                    core.dedup();
                    Some(core)
                }
            },
        )
    })?;
    Ok(found.map(|deleted| DeletionWitness {
        value: deleted.len(),
        deleted,
    }))
}

/// Edge resistance: fewest edges whose removal leaves a 3-edge-colourable graph.
pub fn resistance_edge(g: &Graph, budget: Option<usize>) -> Result<Option<DeletionWitness>> {
    g.require_cubic()?;
    let m = g.edge_count();
    let budget = budget.unwrap_or(m).min(m);
    let found = min_deletion(m, budget, |combo| {
        let (h, kept) = g.delete_edges(&EdgeSet::from_ids(m, combo.iter().copied()));
        Ok(
            match colour_with(&h, &TerminalConstraint::Any, None, 3, 0)? {
                Outcome::Coloured(_) => None,
                Outcome::Refuted(edges) => {
                    let mut core: Vec<usize> = edges.into_iter().map(|e| kept[e]).collect();
                    core.sort_unstable();
                    core.dedup();
                    Some(core)
                }
            },
        )
    })?;
    Ok(found.map(|deleted| DeletionWitness {
        value: deleted.len(),
        deleted,
    }))
}

/// Fewest edges of colour 4 over all proper 4-edge-colourings.
pub fn min_fourth_colour(g: &Graph) -> Result<(usize, EdgeColouring)> {
    g.require_cubic()?;
    for k in 0..=g.edge_count() {
        if let Outcome::Coloured(colours) = colour_with(g, &TerminalConstraint::Any, None, 4, k)? {
            let used = colours.iter().filter(|&&c| c == 4).count();
            debug_assert_eq!(used, k);
            return Ok((used, EdgeColouring { colours }));
        }
    }
    unreachable!("colouring every edge 4 is never needed beyond a matching")
}
