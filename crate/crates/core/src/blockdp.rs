//! Exact decomposition solver for composed graphs.
//!
//! Every block (a chain of 2-poles) is summarised by a profile over its
//! boundary states, computed once by exhaustive search inside the block:
//!
//! * a [`FactorProfile`] gives, for even factors or 2-factors, the fewest odd
//!   components strictly inside the block when the terminal edges are both
//!   unused (`out`) or both used by a path crossing the block with an even or
//!   odd number of interior vertices (`in_even`, `in_odd`);
//! * a [`ColourProfile`] gives the fewest interior vertex deletions letting
//!   the block be 3-edge-coloured with equal or distinct terminal colours.
//!
//! A block's two terminal edges are either both in or both out of an even
//! subgraph, so these states are exhaustive. Profiles of chains follow from
//! their links by series composition, and the skeleton is then solved by
//! enumerating which skeleton edges are used (factors) or which colours meet
//! at skeleton vertices (resistance).

use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::colour::{min_relaxation, three_edge_colour, TerminalConstraint};
use crate::composed::{ComposedGraph, Flattened, SeriesBlock};
use crate::error::{Error, Result};
use crate::factors::{
    even_subgraph_coset, is_even_factor, is_two_factor, odd_component_count, OddCounter,
    DEFAULT_DIMENSION_CAP,
};
use crate::graph::{Graph, UnionFind};
use crate::ids::{EdgeSet, VertexSet};
use crate::twopole::TwoPole;

/// Largest skeleton the enumeration accepts.
pub const MAX_SKELETON_EDGES: usize = 20;

/// A non-negative count or infinity; addition saturates at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(u32);

impl Cost {
    pub const INF: Cost = Cost(u32::MAX);
    pub const ZERO: Cost = Cost(0);

    pub fn finite(v: usize) -> Cost {
        assert!(v < u32::MAX as usize);
        Cost(v as u32)
    }

    pub fn is_finite(self) -> bool {
        self != Cost::INF
    }

    pub fn value(self) -> Option<usize> {
        self.is_finite().then_some(self.0 as usize)
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        if self.is_finite() && rhs.is_finite() {
            Cost(
                self.0
                    .checked_add(rhs.0)
                    .filter(|&v| v != u32::MAX)
                    .expect("cost overflow"),
            )
        } else {
            Cost::INF
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.value().serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorMode {
    /// Even factors; isolated vertices count as odd components.
    EvenFactor,
    /// 2-factors; every vertex lies on a circuit.
    TwoFactor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorProfile {
    pub mode: FactorMode,
    pub out: Cost,
    pub in_even: Cost,
    pub in_odd: Cost,
}

impl FactorProfile {
    /// Profile of a single edge: nothing inside, a used edge adds no vertex.
    pub fn identity(mode: FactorMode) -> Self {
        FactorProfile {
            mode,
            out: Cost::ZERO,
            in_even: Cost::ZERO,
            in_odd: Cost::INF,
        }
    }

    pub fn in_state(&self, parity: usize) -> Cost {
        if parity.is_multiple_of(2) {
            self.in_even
        } else {
            self.in_odd
        }
    }

    pub fn min_in(&self) -> Cost {
        self.in_even.min(self.in_odd)
    }
}

/// Optimal interior edge sets (pole edge ids, terminal edges excluded) for
/// each state of a [`FactorProfile`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactorWitnesses {
    pub out: Option<EdgeSet>,
    pub in_even: Option<EdgeSet>,
    pub in_odd: Option<EdgeSet>,
}

impl FactorWitnesses {
    fn in_state(&self, parity: usize) -> Option<&EdgeSet> {
        if parity.is_multiple_of(2) {
            self.in_even.as_ref()
        } else {
            self.in_odd.as_ref()
        }
    }
}

/// Profile of `p` by exhaustive search, with the default dimension cap.
pub fn factor_profile(p: &TwoPole, mode: FactorMode) -> Result<FactorProfile> {
    factor_profile_with(p, mode, DEFAULT_DIMENSION_CAP).map(|(profile, _)| profile)
}

/// Profile and witnesses of `p`, enumerating the even subgraphs of `p` with
/// its terminals identified, once with the terminal edges forced out and once
/// forced in. `dimension_cap` bounds the size of each enumerated coset.
pub fn factor_profile_with(
    p: &TwoPole,
    mode: FactorMode,
    dimension_cap: usize,
) -> Result<(FactorProfile, FactorWitnesses)> {
    let (closed, c) = p.closed();
    let dim = closed.cycle_space_dimension().saturating_sub(1);
    if dim > dimension_cap {
        return Err(Error::CapExceeded {
            what: "block cycle-space dimension",
            value: dim,
            cap: dimension_cap,
        });
    }
    let (ts, tt) = p.terminal_edges();
    let terminal = EdgeSet::from_ids(closed.edge_count(), [ts]);
    let none = closed.empty_edge_set();
    let mut counter = OddCounter::new(closed.vertex_count());
    let mut degree = vec![0u8; closed.vertex_count()];

    let mut profile = FactorProfile {
        mode,
        out: Cost::INF,
        in_even: Cost::INF,
        in_odd: Cost::INF,
    };
    let mut witnesses = FactorWitnesses::default();
    for used in [false, true] {
        let (fin, fout) = if used {
            (&terminal, &none)
        } else {
            (&none, &terminal)
        };
        let Some(coset) = even_subgraph_coset(&closed, fin, fout)? else {
            continue;
        };
        coset.walk(|x| {
            if mode == FactorMode::TwoFactor {
                degree.iter_mut().for_each(|d| *d = 0);
                for e in x.iter() {
                    let (u, v) = closed.endpoints(e);
                    degree[u] += 1;
                    degree[v] += 1;
                }
                if degree.iter().enumerate().any(|(v, &d)| v != c && d != 2) {
                    return true;
                }
            }
            let (odd, through) = counter.count(&closed, x, Some(c));
            let cost = Cost::finite(odd);
            let (slot, witness) = if !used {
                (&mut profile.out, &mut witnesses.out)
            } else if (through - 1) % 2 == 0 {
                (&mut profile.in_even, &mut witnesses.in_even)
            } else {
                (&mut profile.in_odd, &mut witnesses.in_odd)
            };
            if cost < *slot {
                *slot = cost;
                let mut interior = x.clone();
                interior.remove(ts);
                interior.remove(tt);
                *witness = Some(interior);
            }
            true
        });
    }
    Ok((profile, witnesses))
}

/// Profile of `a` and `b` joined in series.
pub fn compose_series(a: &FactorProfile, b: &FactorProfile) -> Result<FactorProfile> {
    if a.mode != b.mode {
        return Err(Error::invalid("cannot compose profiles of different modes"));
    }
    let cross = |p: usize| (a.in_state(0) + b.in_state(p)).min(a.in_state(1) + b.in_state(p + 1));
    Ok(FactorProfile {
        mode: a.mode,
        out: a.out + b.out,
        in_even: cross(0),
        in_odd: cross(1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ColourProfile {
    pub same: Cost,
    pub diff: Cost,
}

impl ColourProfile {
    pub fn identity() -> Self {
        ColourProfile {
            same: Cost::ZERO,
            diff: Cost::INF,
        }
    }

    pub fn get(&self, same: bool) -> Cost {
        if same {
            self.same
        } else {
            self.diff
        }
    }

    pub fn min(&self) -> Cost {
        self.same.min(self.diff)
    }
}

/// Optimal interior deletion sets (local vertex ids) for a [`ColourProfile`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColourWitnesses {
    pub same: Option<Vec<usize>>,
    pub diff: Option<Vec<usize>>,
}

/// Fewest interior vertex deletions giving a 3-edge-colouring of `p` with
/// equal / distinct terminal colours, trying deletion sets of size up to
/// `max_d` (all sizes if `None`). Entries not reached are infinite.
pub fn colour_profile(
    p: &TwoPole,
    max_d: Option<usize>,
) -> Result<(ColourProfile, ColourWitnesses)> {
    let (ts, tt) = p.terminal_edges();
    let n = p.graph.vertex_count();
    let interior = VertexSet::from_ids(n, p.interior_vertices());
    let limit = max_d.unwrap_or(n).min(interior.len());
    let same = min_relaxation(
        &p.graph,
        &TerminalConstraint::Same(ts, tt),
        &interior,
        limit,
    )?;
    let diff = if ts == tt {
        None
    } else {
        min_relaxation(
            &p.graph,
            &TerminalConstraint::Different(ts, tt),
            &interior,
            limit,
        )?
    };
    let cost = |w: &Option<Vec<usize>>| w.as_ref().map_or(Cost::INF, |w| Cost::finite(w.len()));
    Ok((
        ColourProfile {
            same: cost(&same),
            diff: cost(&diff),
        },
        ColourWitnesses { same, diff },
    ))
}

/// Colour profile of `a` and `b` joined in series: the joining edge has one
/// colour, so equal ends need equal-equal or distinct-distinct halves.
pub fn compose_series_colour(a: &ColourProfile, b: &ColourProfile) -> ColourProfile {
    ColourProfile {
        same: (a.same + b.same).min(a.diff + b.diff),
        diff: (a.same + b.diff).min(a.diff + b.same).min(a.diff + b.diff),
    }
}

struct FactorLink {
    profile: FactorProfile,
    witnesses: FactorWitnesses,
}

/// Per-link parity choices reaching each chain parity at least cost.
#[derive(Debug, Clone)]
struct ChainFactor {
    out: Cost,
    /// Indexed by chain parity: (cost, per-link parities).
    through: [(Cost, Vec<usize>); 2],
}

fn chain_factor(links: &[&FactorLink]) -> ChainFactor {
    let mut through = [(Cost::ZERO, Vec::new()), (Cost::INF, Vec::new())];
    let mut out = Cost::ZERO;
    for link in links {
        out = out + link.profile.out;
        let mut next = [(Cost::INF, Vec::new()), (Cost::INF, Vec::new())];
        for (target, slot) in next.iter_mut().enumerate() {
            for prev in 0..2 {
                let here = (target + prev) % 2;
                let cost = through[prev].0 + link.profile.in_state(here);
                if cost < slot.0 {
                    let mut parities = through[prev].1.clone();
                    parities.push(here);
                    *slot = (cost, parities);
                }
            }
        }
        through = next;
    }
    ChainFactor { out, through }
}

fn distinct_poles(c: &ComposedGraph) -> Vec<Arc<TwoPole>> {
    let mut poles: Vec<Arc<TwoPole>> = Vec::new();
    for (_, block) in c.block_edges() {
        for link in &block.links {
            if !poles
                .iter()
                .any(|p| Arc::ptr_eq(p, &link.pole) || **p == *link.pole)
            {
                poles.push(link.pole.clone());
            }
        }
    }
    poles
}

fn pole_index(poles: &[Arc<TwoPole>], pole: &Arc<TwoPole>) -> usize {
    poles
        .iter()
        .position(|p| Arc::ptr_eq(p, pole) || **p == **pole)
        .expect("pole was registered")
}

fn check_skeleton(c: &ComposedGraph) -> Result<()> {
    let m = c.skeleton.edge_count();
    if m > MAX_SKELETON_EDGES {
        return Err(Error::CapExceeded {
            what: "skeleton edges",
            value: m,
            cap: MAX_SKELETON_EDGES,
        });
    }
    if c.blocks.len() != m {
        return Err(Error::invalid("block table does not match the skeleton"));
    }
    Ok(())
}

/// Result of [`solve_composed`].
#[derive(Debug, Clone, Serialize)]
pub struct FactorSolution {
    pub mode: FactorMode,
    pub value: usize,
    /// Skeleton edges used by the factor.
    pub used_skeleton_edges: Vec<usize>,
    /// Used block edges with the parity of the path through them.
    pub block_parities: Vec<(usize, usize)>,
    /// The optimal factor as flattened edge ids.
    pub factor_edges: Vec<usize>,
}

/// Exact weak oddness (even-factor mode) or oddness (two-factor mode) of the
/// flattened graph. The assembled witness is checked on the flattened graph
/// before returning.
pub fn solve_composed(c: &ComposedGraph, mode: FactorMode) -> Result<FactorSolution> {
    let flat = c.flatten()?;
    solve_composed_on(c, &flat, mode)
}

pub fn solve_composed_on(
    c: &ComposedGraph,
    flat: &Flattened,
    mode: FactorMode,
) -> Result<FactorSolution> {
    check_skeleton(c)?;
    let sk = &c.skeleton;
    let (ns, ms) = (sk.vertex_count(), sk.edge_count());

    let poles = distinct_poles(c);
    let links: Vec<FactorLink> = poles
        .iter()
        .map(|p| {
            factor_profile_with(p, mode, DEFAULT_DIMENSION_CAP)
                .map(|(profile, witnesses)| FactorLink { profile, witnesses })
        })
        .collect::<Result<_>>()?;
    let chains: Vec<Option<ChainFactor>> = c
        .blocks
        .iter()
        .map(|b| {
            b.as_ref().map(|b| {
                let refs: Vec<&FactorLink> = b
                    .links
                    .iter()
                    .map(|l| &links[pole_index(&poles, &l.pole)])
                    .collect();
                chain_factor(&refs)
            })
        })
        .collect();

    let mut best: Option<(Cost, u32, Vec<(usize, usize)>)> = None;
    let mut uf = UnionFind::new(ns);
    let mut degree = vec![0usize; ns];
    for mask in 0u32..(1u32 << ms) {
        degree.iter_mut().for_each(|d| *d = 0);
        for e in (0..ms).filter(|&e| mask >> e & 1 == 1) {
            let (u, v) = sk.endpoints(e);
            degree[u] += 1;
            degree[v] += 1;
        }
        let feasible = degree.iter().all(|&d| match mode {
            FactorMode::EvenFactor => d == 0 || d == 2,
            FactorMode::TwoFactor => d == 2,
        });
        if !feasible {
            continue;
        }
        let mut total = Cost::ZERO;
        for (e, chain) in chains.iter().enumerate() {
            if let Some(chain) = chain {
                if mask >> e & 1 == 0 {
                    total = total + chain.out;
                }
            }
        }
        if !total.is_finite() {
            continue;
        }
        if mode == FactorMode::EvenFactor {
            total = total + Cost::finite(degree.iter().filter(|&&d| d == 0).count());
        }

        uf.reset();
        for e in (0..ms).filter(|&e| mask >> e & 1 == 1) {
            let (u, v) = sk.endpoints(e);
            uf.union(u, v);
        }
        let mut parities = Vec::new();
        let roots: Vec<usize> = (0..ns).map(|v| uf.find(v)).collect();
        for root in (0..ns).filter(|&v| roots[v] == v && degree[v] > 0) {
            let vertices = roots.iter().filter(|&&r| r == root).count();
            let blocks: Vec<usize> = (0..ms)
                .filter(|&e| {
                    mask >> e & 1 == 1 && chains[e].is_some() && roots[sk.endpoints(e).0] == root
                })
                .collect();
            // dp over the circuit's blocks: best cost for each accumulated parity
            let mut dp: Vec<[(Cost, usize); 2]> = Vec::with_capacity(blocks.len() + 1);
            let mut start = [(Cost::INF, 0), (Cost::INF, 0)];
            start[vertices % 2] = (Cost::ZERO, 0);
            dp.push(start);
            for &e in &blocks {
                let chain = chains[e].as_ref().unwrap();
                let prev = *dp.last().unwrap();
                let mut next = [(Cost::INF, 0), (Cost::INF, 0)];
                for (target, slot) in next.iter_mut().enumerate() {
                    for q in 0..2 {
                        let cost = prev[(target + q) % 2].0 + chain.through[q].0;
                        if cost < slot.0 {
                            *slot = (cost, q);
                        }
                    }
                }
                dp.push(next);
            }
            let last = dp.last().unwrap();
            let (circuit_cost, mut parity) = if last[0].0 <= last[1].0 + Cost::finite(1) {
                (last[0].0, 0)
            } else {
                (last[1].0 + Cost::finite(1), 1)
            };
            total = total + circuit_cost;
            for (i, &e) in blocks.iter().enumerate().rev() {
                let q = dp[i + 1][parity].1;
                parities.push((e, q));
                parity = (parity + q) % 2;
            }
        }
        if total.is_finite() && best.as_ref().is_none_or(|b| total < b.0) {
            parities.sort_unstable();
            best = Some((total, mask, parities));
        }
    }

    let Some((value, mask, block_parities)) = best else {
        return Err(Error::Infeasible(match mode {
            FactorMode::TwoFactor => "no 2-factor".to_string(),
            FactorMode::EvenFactor => "no even factor".to_string(),
        }));
    };
    let value = value.value().unwrap();

    // assemble the witness on the flattened graph
    let g = &flat.graph;
    let mut factor = g.empty_edge_set();
    for e in 0..ms {
        let used = mask >> e & 1 == 1;
        if let Some(f) = flat.plain_edges[e] {
            if used {
                factor.insert(f);
            }
            continue;
        }
        let block = c.blocks[e].as_ref().unwrap();
        let emb = flat.blocks[e].as_ref().unwrap();
        let link_parities: Option<&Vec<usize>> = if used {
            let q = block_parities.iter().find(|(b, _)| *b == e).unwrap().1;
            for &f in &emb.connections {
                factor.insert(f);
            }
            Some(&chains[e].as_ref().unwrap().through[q].1)
        } else {
            None
        };
        for (li, link) in block.links.iter().enumerate() {
            let fl = &links[pole_index(&poles, &link.pole)];
            let local = match link_parities {
                Some(ps) => fl.witnesses.in_state(ps[li]),
                None => fl.witnesses.out.as_ref(),
            };
            let local =
                local.ok_or_else(|| Error::WitnessMismatch("missing block witness".into()))?;
            for f in local.iter() {
                let mapped = emb.link_edges[li][f].ok_or_else(|| {
                    Error::WitnessMismatch("terminal edge in interior witness".into())
                })?;
                factor.insert(mapped);
            }
        }
    }
    verify_factor(g, &factor, mode, value)?;
    Ok(FactorSolution {
        mode,
        value,
        used_skeleton_edges: (0..ms).filter(|&e| mask >> e & 1 == 1).collect(),
        block_parities,
        factor_edges: factor.to_vec(),
    })
}

/// Independent check of a factor witness on an explicit graph.
pub fn verify_factor(g: &Graph, factor: &EdgeSet, mode: FactorMode, value: usize) -> Result<()> {
    let shape_ok = match mode {
        FactorMode::EvenFactor => is_even_factor(g, factor),
        FactorMode::TwoFactor => is_two_factor(g, factor),
    };
    if !shape_ok {
        return Err(Error::WitnessMismatch(format!(
            "assembled edge set is not a {mode:?} factor"
        )));
    }
    let odd = odd_component_count(g, factor);
    if odd != value {
        return Err(Error::WitnessMismatch(format!(
            "witness has {odd} odd components, solver claimed {value}"
        )));
    }
    Ok(())
}

struct ColourLink {
    profile: ColourProfile,
    witnesses: ColourWitnesses,
}

/// Chain colour costs with per-link relations (`true` = same).
#[derive(Debug, Clone)]
struct ChainColour {
    same: (Cost, Vec<bool>),
    diff: (Cost, Vec<bool>),
}

impl ChainColour {
    fn get(&self, same: bool) -> &(Cost, Vec<bool>) {
        if same {
            &self.same
        } else {
            &self.diff
        }
    }

    fn min(&self) -> Cost {
        self.same.0.min(self.diff.0)
    }
}

fn chain_colour(links: &[&ColourLink]) -> ChainColour {
    let mut acc = ChainColour {
        same: (Cost::ZERO, vec![]),
        diff: (Cost::INF, vec![]),
    };
    for link in links {
        let mut same = (Cost::INF, vec![]);
        let mut diff = (Cost::INF, vec![]);
        // (previous relation, this link's relation, resulting relation)
        let table = [
            (true, true, true),
            (false, false, true),
            (true, false, false),
            (false, true, false),
            (false, false, false),
        ];
        for (prev, here, result) in table {
            let cost = acc.get(prev).0 + link.profile.get(here);
            let slot = if result { &mut same } else { &mut diff };
            if cost < slot.0 {
                let mut rels = acc.get(prev).1.clone();
                rels.push(here);
                *slot = (cost, rels);
            }
        }
        acc = ChainColour { same, diff };
    }
    acc
}

/// Result of [`solve_composed_resistance`].
#[derive(Debug, Clone, Serialize)]
pub struct ResistanceSolution {
    pub value: usize,
    /// Deleted vertices of the flattened graph, sorted.
    pub deleted: Vec<usize>,
    /// Sum over all links of their cheaper colour-profile entry.
    pub block_lower_bound: usize,
}

/// Exact resistance of the flattened graph.
pub fn solve_composed_resistance(c: &ComposedGraph) -> Result<ResistanceSolution> {
    let flat = c.flatten()?;
    solve_composed_resistance_on(c, &flat)
}

struct SkeletonSearch<'a> {
    sk: &'a Graph,
    chains: &'a [Option<ChainColour>],
    /// Per skeleton edge: colour variables at its first and second endpoint.
    vars: Vec<(usize, usize)>,
    deleted: u32,
    colour: Vec<u8>,
    remaining_bound: Vec<Cost>,
    best: Cost,
    best_colours: Option<(u32, Vec<u8>)>,
}

impl SkeletonSearch<'_> {
    fn vertex_ok(&self, v: usize) -> bool {
        if self.deleted >> v & 1 == 1 {
            return true;
        }
        let mut seen = 0u8;
        for d in self.sk.darts(v) {
            let d = *d as usize;
            let e = Graph::dart_edge(d);
            let var = if d.is_multiple_of(2) {
                self.vars[e].0
            } else {
                self.vars[e].1
            };
            let c = self.colour[var];
            if c != 0 {
                if seen >> c & 1 == 1 {
                    return false;
                }
                seen |= 1 << c;
            }
        }
        true
    }

    fn search(&mut self, e: usize, cost: Cost, max_used: u8) {
        if cost + self.remaining_bound[e] >= self.best {
            return;
        }
        if e == self.sk.edge_count() {
            self.best = cost;
            self.best_colours = Some((self.deleted, self.colour.clone()));
            return;
        }
        let (a, b) = self.vars[e];
        let (u, v) = self.sk.endpoints(e);
        let limit = (max_used + 1).min(3);
        for ca in 1..=limit {
            self.colour[a] = ca;
            if !self.vertex_ok(u) {
                self.colour[a] = 0;
                continue;
            }
            let (lo, hi) = if a == b {
                (ca, ca)
            } else {
                (1, (ca.max(max_used) + 1).min(3))
            };
            for cb in lo..=hi {
                self.colour[b] = cb;
                if self.vertex_ok(v) && self.vertex_ok(u) {
                    let add = match &self.chains[e] {
                        Some(chain) => chain.get(ca == cb).0,
                        None => Cost::ZERO,
                    };
                    self.search(e + 1, cost + add, max_used.max(ca).max(cb));
                }
                if a != b {
                    self.colour[b] = 0;
                }
            }
            self.colour[a] = 0;
        }
    }
}

pub fn solve_composed_resistance_on(
    c: &ComposedGraph,
    flat: &Flattened,
) -> Result<ResistanceSolution> {
    check_skeleton(c)?;
    let sk = &c.skeleton;
    let (ns, ms) = (sk.vertex_count(), sk.edge_count());
    if ns > 31 {
        return Err(Error::CapExceeded {
            what: "skeleton vertices",
            value: ns,
            cap: 31,
        });
    }
    let poles = distinct_poles(c);
    let links: Vec<ColourLink> = poles
        .iter()
        .map(|p| {
            colour_profile(p, None).map(|(profile, witnesses)| ColourLink { profile, witnesses })
        })
        .collect::<Result<_>>()?;
    let mut block_lower_bound = Cost::ZERO;
    let chains: Vec<Option<ChainColour>> = c
        .blocks
        .iter()
        .map(|b| {
            b.as_ref().map(|b| {
                let refs: Vec<&ColourLink> = b
                    .links
                    .iter()
                    .map(|l| &links[pole_index(&poles, &l.pole)])
                    .collect();
                for r in &refs {
                    block_lower_bound = block_lower_bound + r.profile.min();
                }
                chain_colour(&refs)
            })
        })
        .collect();
    if let Some(e) = chains
        .iter()
        .position(|ch| ch.as_ref().is_some_and(|ch| !ch.min().is_finite()))
    {
        return Err(Error::Infeasible(format!(
            "block on skeleton edge {e} admits no colouring"
        )));
    }

    // colour variables: one per plain edge, one per block end
    let mut vars = Vec::with_capacity(ms);
    let mut next = 0;
    for e in 0..ms {
        if c.blocks[e].is_some() {
            vars.push((next, next + 1));
            next += 2;
        } else {
            vars.push((next, next));
            next += 1;
        }
    }
    let mut remaining_bound = vec![Cost::ZERO; ms + 1];
    for e in (0..ms).rev() {
        let here = chains[e].as_ref().map_or(Cost::ZERO, |ch| ch.min());
        remaining_bound[e] = remaining_bound[e + 1] + here;
    }

    let mut search = SkeletonSearch {
        sk,
        chains: &chains,
        vars,
        deleted: 0,
        colour: vec![0; next],
        remaining_bound,
        best: Cost::INF,
        best_colours: None,
    };
    let mut masks: Vec<u32> = (0u32..(1u32 << ns)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let base = Cost::finite(mask.count_ones() as usize);
        if base >= search.best {
            break;
        }
        search.deleted = mask;
        search.search(0, base, 0);
    }
    let (deleted_mask, colours) = search
        .best_colours
        .clone()
        .ok_or_else(|| Error::Infeasible("no colouring of the skeleton".into()))?;
    let value = search.best.value().unwrap();

    let mut deleted: Vec<usize> = (0..ns).filter(|&v| deleted_mask >> v & 1 == 1).collect();
    for e in 0..ms {
        let (Some(block), Some(chain)) = (&c.blocks[e], &chains[e]) else {
            continue;
        };
        let (a, b) = search.vars[e];
        let rels = &chain.get(colours[a] == colours[b]).1;
        let emb = flat.blocks[e].as_ref().unwrap();
        for (li, link) in block.links.iter().enumerate() {
            let cl = &links[pole_index(&poles, &link.pole)];
            let local = if rels[li] {
                &cl.witnesses.same
            } else {
                &cl.witnesses.diff
            };
            let local = local
                .as_ref()
                .ok_or_else(|| Error::WitnessMismatch("missing colour witness".into()))?;
            for &v in local {
                deleted.push(emb.link_vertices[li][v].expect("deleted vertices are interior"));
            }
        }
    }
    deleted.sort_unstable();
    verify_deletion(&flat.graph, &deleted, value)?;
    let block_lower_bound = block_lower_bound.value().unwrap();
    if block_lower_bound > value {
        return Err(Error::WitnessMismatch(format!(
            "block lower bound {block_lower_bound} exceeds claimed optimum {value}"
        )));
    }
    Ok(ResistanceSolution {
        value,
        deleted,
        block_lower_bound,
    })
}

/// Independent check that deleting `deleted` leaves a 3-edge-colourable graph.
pub fn verify_deletion(g: &Graph, deleted: &[usize], value: usize) -> Result<()> {
    if deleted.len() != value {
        return Err(Error::WitnessMismatch(format!(
            "{} deleted vertices, solver claimed {value}",
            deleted.len()
        )));
    }
    let (h, _) = g.delete_vertices(&VertexSet::from_ids(
        g.vertex_count(),
        deleted.iter().copied(),
    ));
    if three_edge_colour(&h, &TerminalConstraint::Any)?.is_none() {
        return Err(Error::WitnessMismatch(
            "graph is not colourable after the deletions".into(),
        ));
    }
    Ok(())
}

/// Factor profile of a whole chain by series composition of its links.
pub fn block_factor_profile(block: &SeriesBlock, mode: FactorMode) -> Result<FactorProfile> {
    let mut acc = FactorProfile::identity(mode);
    for link in &block.links {
        acc = compose_series(&acc, &factor_profile(&link.pole, mode)?)?;
    }
    Ok(acc)
}

/// Colour profile of a whole chain by series composition of its links.
pub fn block_colour_profile(block: &SeriesBlock) -> Result<ColourProfile> {
    let mut acc = ColourProfile::identity();
    for link in &block.links {
        acc = compose_series_colour(&acc, &colour_profile(&link.pole, None)?.0);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::resistance_vertex;
    use crate::factors::{oddness_bf, weak_oddness_bf};
    use crate::graph::tests::{k4, theta};
    use crate::twopole::{build_h, build_h2, identity_pole, join, pole_p};

    const FREE: usize = DEFAULT_DIMENSION_CAP;

    #[test]
    fn identity_profiles() {
        for mode in [FactorMode::EvenFactor, FactorMode::TwoFactor] {
            let (p, _) = factor_profile_with(&identity_pole(), mode, FREE).unwrap();
            assert_eq!(p, FactorProfile::identity(mode));
        }
        let (c, _) = colour_profile(&identity_pole(), None).unwrap();
        assert_eq!(c, ColourProfile::identity());
    }

    #[test]
    fn pole_p_profiles() {
        let p = pole_p();
        let two = factor_profile(&p, FactorMode::TwoFactor).unwrap();
        assert_eq!(two.out, Cost::finite(2));
        assert_eq!(two.in_odd, Cost::finite(1));
        let (c, w) = colour_profile(&p, None).unwrap();
        assert_eq!(c.diff, Cost::finite(1));
        assert!(c.same > c.diff);
        assert_eq!(w.diff.unwrap().len(), 1);
    }

    #[test]
    fn h_profiles() {
        let h = build_h();
        let even = factor_profile(&h, FactorMode::EvenFactor).unwrap();
        assert_eq!(even.out, Cost::finite(2));
        assert_eq!(even.min_in(), Cost::finite(3));
        let two = factor_profile(&h, FactorMode::TwoFactor).unwrap();
        assert_eq!(two.out, Cost::finite(2));
        assert_eq!(two.min_in(), Cost::finite(3));
        let (c, _) = colour_profile(&h, None).unwrap();
        assert_eq!(c.same, Cost::finite(2));
        assert!(c.diff >= Cost::finite(2));
    }

    #[test]
    fn witnesses_realise_costs() {
        let h = build_h();
        let (closed, c) = h.closed();
        let (ts, tt) = h.terminal_edges();
        for mode in [FactorMode::EvenFactor, FactorMode::TwoFactor] {
            let (p, w) = factor_profile_with(&h, mode, FREE).unwrap();
            let out = w.out.unwrap();
            assert!(!out.contains(ts) && !out.contains(tt));
            let (odd, _) = OddCounter::new(closed.vertex_count()).count(&closed, &out, Some(c));
            assert_eq!(Cost::finite(odd), p.out);
            let mut through = w.in_odd.or(w.in_even).unwrap();
            through.insert(ts);
            through.insert(tt);
            let (odd, _) = OddCounter::new(closed.vertex_count()).count(&closed, &through, Some(c));
            assert_eq!(Cost::finite(odd), p.min_in());
        }
    }

    #[test]
    fn composition_matches_direct_profile() {
        let h = build_h();
        let hh = build_h2(2).unwrap();
        for mode in [FactorMode::EvenFactor, FactorMode::TwoFactor] {
            let a = factor_profile(&h, mode).unwrap();
            let composed = compose_series(&a, &a).unwrap();
            let direct = factor_profile(&hh, mode).unwrap();
            assert_eq!(composed, direct, "{mode:?}");
        }
        let p = pole_p();
        let pp = join(&p, &p).unwrap();
        let a = colour_profile(&p, None).unwrap().0;
        assert_eq!(
            compose_series_colour(&a, &a),
            colour_profile(&pp, None).unwrap().0
        );
    }

    #[test]
    fn mixed_modes_rejected() {
        let a = FactorProfile::identity(FactorMode::EvenFactor);
        let b = FactorProfile::identity(FactorMode::TwoFactor);
        assert!(compose_series(&a, &b).is_err());
    }

    #[test]
    fn plain_skeletons() {
        let k = ComposedGraph::new(k4());
        assert_eq!(solve_composed(&k, FactorMode::EvenFactor).unwrap().value, 0);
        assert_eq!(solve_composed(&k, FactorMode::TwoFactor).unwrap().value, 0);
        assert_eq!(solve_composed_resistance(&k).unwrap().value, 0);
        let t = ComposedGraph::new(theta());
        assert_eq!(solve_composed(&t, FactorMode::TwoFactor).unwrap().value, 0);
        let t = t.insert_pole_into_edge(0, SeriesBlock::identity()).unwrap();
        assert_eq!(solve_composed(&t, FactorMode::TwoFactor).unwrap().value, 0);
        assert_eq!(solve_composed_resistance(&t).unwrap().value, 0);
    }

    #[test]
    fn small_blocks_agree_with_brute_force() {
        let blocks = [
            SeriesBlock::pole_p(),
            SeriesBlock::pole_p().then(SeriesBlock::pole_p()),
            SeriesBlock::h(),
        ];
        for block in blocks {
            for e in [0, 3] {
                let c = ComposedGraph::new(k4())
                    .insert_pole_into_edge(e, block.clone())
                    .unwrap();
                let g = c.flatten().unwrap().graph;
                let weak = weak_oddness_bf(&g, FREE).unwrap().odd_components;
                assert_eq!(
                    solve_composed(&c, FactorMode::EvenFactor).unwrap().value,
                    weak
                );
                let odd = oddness_bf(&g).unwrap().map(|w| w.odd_components);
                let dp = solve_composed(&c, FactorMode::TwoFactor)
                    .ok()
                    .map(|s| s.value);
                assert_eq!(dp, odd);
                let rho = resistance_vertex(&g, None).unwrap().unwrap().value;
                assert_eq!(solve_composed_resistance(&c).unwrap().value, rho);
            }
        }
    }

    #[test]
    fn oversized_skeleton_rejected() {
        let g = crate::graph::random_cubic(14, 1).unwrap();
        let err = solve_composed(&ComposedGraph::new(g), FactorMode::EvenFactor).unwrap_err();
        assert!(matches!(
            err,
            Error::CapExceeded {
                cap: MAX_SKELETON_EDGES,
                ..
            }
        ));
    }

    #[test]
    fn cost_arithmetic() {
        assert_eq!(Cost::finite(2) + Cost::finite(3), Cost::finite(5));
        assert_eq!(Cost::finite(2) + Cost::INF, Cost::INF);
        assert_eq!(Cost::INF.to_string(), "inf");
    }
}
