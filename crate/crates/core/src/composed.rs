//! Composed graphs: a small skeleton multigraph whose edges may carry series
//! chains of 2-poles, plus the text format used to store them.
//!
//! # Pole file format
//!
//! ```text
//! # comment
//! skeleton 4                 # skeleton vertex count
//! edge 1 2                   # plain skeleton edge
//! block 0 1 h2(k=2)          # skeleton edge carrying a block, s at 0, t at 1
//! ```
//!
//! or, for a bare 2-pole, a single line `twopole <expr>`. Block expressions
//! are series chains `term + term + ...` with terms `identity`, `p`, `h` and
//! `h2(k=N)` (the last is shorthand for `N` copies of `h`). Skeleton edge ids
//! follow line order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::twopole::{build_h, identity_pole, join, pole_p, TwoPole};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Identity,
    P,
    H,
    Custom(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub kind: AtomKind,
    pub pole: Arc<TwoPole>,
}

/// A chain of 2-poles joined in series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesBlock {
    pub links: Vec<Link>,
}

impl SeriesBlock {
    fn atom(kind: AtomKind, pole: TwoPole) -> Self {
        SeriesBlock {
            links: vec![Link {
                kind,
                pole: Arc::new(pole),
            }],
        }
    }

    pub fn identity() -> Self {
        Self::atom(AtomKind::Identity, identity_pole())
    }

    pub fn pole_p() -> Self {
        Self::atom(AtomKind::P, pole_p())
    }

    pub fn h() -> Self {
        Self::atom(AtomKind::H, build_h())
    }

    /// `k` copies of `H` in series, sharing one pole allocation.
    pub fn h2(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("h2 needs k >= 1"));
        }
        let h = Arc::new(build_h());
        Ok(SeriesBlock {
            links: (0..k)
                .map(|_| Link {
                    kind: AtomKind::H,
                    pole: h.clone(),
                })
                .collect(),
        })
    }

    pub fn custom(name: impl Into<String>, pole: TwoPole) -> Self {
        Self::atom(AtomKind::Custom(name.into()), pole)
    }

    pub fn then(mut self, other: SeriesBlock) -> Self {
        self.links.extend(other.links);
        self
    }

    /// The chain joined into a single explicit 2-pole.
    pub fn to_pole(&self) -> Result<TwoPole> {
        let mut acc = (*self.links[0].pole).clone();
        for link in &self.links[1..] {
            acc = join(&acc, &link.pole)?;
        }
        Ok(acc)
    }

    /// Block expression in the pole file grammar.
    pub fn expr(&self) -> Result<String> {
        let mut terms = Vec::new();
        let mut i = 0;
        while i < self.links.len() {
            match &self.links[i].kind {
                AtomKind::H => {
                    let run = self.links[i..]
                        .iter()
                        .take_while(|l| l.kind == AtomKind::H)
                        .count();
                    terms.push(if run == 1 {
                        "h".to_string()
                    } else {
                        format!("h2(k={run})")
                    });
                    i += run;
                    continue;
                }
                AtomKind::P => terms.push("p".to_string()),
                AtomKind::Identity => terms.push("identity".to_string()),
                AtomKind::Custom(name) => {
                    return Err(Error::invalid(format!(
                        "custom block {name:?} has no file representation"
                    )))
                }
            }
            i += 1;
        }
        Ok(terms.join(" + "))
    }
}

/// Where a flattened vertex came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexOrigin {
    Skeleton(usize),
    Block {
        skeleton_edge: usize,
        link: usize,
        local: usize,
    },
}

/// How one block chain sits inside the flattened graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEmbedding {
    /// Flattened edges carrying the chain's terminal and joining edges, from
    /// the `s` end to the `t` end. Identity links contribute none.
    pub connections: Vec<usize>,
    /// Per link: local edge id to flattened edge id (`None` for terminal edges).
    pub link_edges: Vec<Vec<Option<usize>>>,
    /// Per link: local vertex id to flattened vertex id (`None` for terminals).
    pub link_vertices: Vec<Vec<Option<usize>>>,
}

#[derive(Debug, Clone)]
pub struct Flattened {
    pub graph: Graph,
    pub origin: Vec<VertexOrigin>,
    /// Per skeleton edge: the flattened edge of a plain edge.
    pub plain_edges: Vec<Option<usize>>,
    /// Per skeleton edge: the embedding of a block edge.
    pub blocks: Vec<Option<BlockEmbedding>>,
}

impl Flattened {
    pub fn skeleton_vertex_count(&self) -> usize {
        self.origin
            .iter()
            .filter(|o| matches!(o, VertexOrigin::Skeleton(_)))
            .count()
    }
}

/// A skeleton multigraph with some edges replaced by 2-pole chains. The `s`
/// end of a chain attaches to the first endpoint of its skeleton edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedGraph {
    pub skeleton: Graph,
    pub blocks: Vec<Option<SeriesBlock>>,
}

impl ComposedGraph {
    pub fn new(skeleton: Graph) -> Self {
        let blocks = vec![None; skeleton.edge_count()];
        ComposedGraph { skeleton, blocks }
    }

    /// Turns the plain skeleton edge `e` into a block edge.
    pub fn insert_pole_into_edge(&self, e: usize, block: SeriesBlock) -> Result<Self> {
        self.skeleton.check_edge(e)?;
        if self.blocks[e].is_some() {
            return Err(Error::invalid(format!(
                "skeleton edge {e} already carries a block"
            )));
        }
        let mut out = self.clone();
        out.blocks[e] = Some(block);
        Ok(out)
    }

    pub fn block_edges(&self) -> impl Iterator<Item = (usize, &SeriesBlock)> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .filter_map(|(e, b)| b.as_ref().map(|b| (e, b)))
    }

    /// Expands skeleton vertex `v` into a triangle; blocks stay on their edges.
    pub fn expand_vertex_to_triangle(&self, v: usize) -> Result<(Self, [usize; 3])> {
        let (skeleton, tri) = crate::twopole::expand_vertex_to_triangle(&self.skeleton, v)?;
        let mut blocks = self.blocks.clone();
        blocks.resize(skeleton.edge_count(), None);
        Ok((ComposedGraph { skeleton, blocks }, tri))
    }

    /// The explicit graph. Skeleton vertices keep their ids; block interiors
    /// follow in skeleton-edge order.
    pub fn flatten(&self) -> Result<Flattened> {
        let ns = self.skeleton.vertex_count();
        let mut g = Graph::new(ns);
        let mut origin: Vec<VertexOrigin> = (0..ns).map(VertexOrigin::Skeleton).collect();
        let mut plain_edges = vec![None; self.skeleton.edge_count()];
        let mut blocks = vec![None; self.skeleton.edge_count()];
        let degree_err = |e: Error| match e {
            Error::DegreeExceeded { vertex } => {
                Error::invalid(format!("flattened vertex {vertex} would exceed degree 3"))
            }
            other => other,
        };
        for e in 0..self.skeleton.edge_count() {
            let (u, v) = self.skeleton.endpoints(e);
            let Some(block) = &self.blocks[e] else {
                plain_edges[e] = Some(g.add_edge(u, v).map_err(degree_err)?);
                continue;
            };
            let mut pending = u;
            let mut emb = BlockEmbedding {
                connections: vec![],
                link_edges: vec![],
                link_vertices: vec![],
            };
            for (li, link) in block.links.iter().enumerate() {
                let pole = &link.pole;
                let pn = pole.graph.vertex_count();
                let mut vmap = vec![None; pn];
                let mut emap = vec![None; pole.graph.edge_count()];
                if !pole.is_identity() {
                    for local in pole.interior_vertices() {
                        vmap[local] = Some(g.add_vertex());
                        origin.push(VertexOrigin::Block {
                            skeleton_edge: e,
                            link: li,
                            local,
                        });
                    }
                    let att = vmap[pole.attachment_s()].expect("attachment is interior");
                    emb.connections
                        .push(g.add_edge(pending, att).map_err(degree_err)?);
                    let (ts, tt) = pole.terminal_edges();
                    for f in 0..pole.graph.edge_count() {
                        if f != ts && f != tt {
                            let (a, b) = pole.graph.endpoints(f);
                            emap[f] = Some(
                                g.add_edge(vmap[a].unwrap(), vmap[b].unwrap())
                                    .map_err(degree_err)?,
                            );
                        }
                    }
                    pending = vmap[pole.attachment_t()].expect("attachment is interior");
                }
                emb.link_edges.push(emap);
                emb.link_vertices.push(vmap);
            }
            emb.connections
                .push(g.add_edge(pending, v).map_err(degree_err)?);
            blocks[e] = Some(emb);
        }
        Ok(Flattened {
            graph: g,
            origin,
            plain_edges,
            blocks,
        })
    }
}

fn k4_skeleton() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).expect("K4")
}

/// `K4` on `u0..u3` with the three edges at `u0` replaced by chains of `k`
/// copies of `H`; `k = 2` is the 136-vertex separating graph.
pub fn construct_paper_graph(k: usize) -> Result<ComposedGraph> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let mut c = ComposedGraph::new(k4_skeleton());
    for e in 0..3 {
        c = c.insert_pole_into_edge(e, SeriesBlock::h2(k)?)?;
    }
    Ok(c)
}

/// The `k = 2` graph with a further `H2` chain on each edge of the triangle
/// `u1 u2 u3`.
pub fn construct_variant_gprime() -> Result<ComposedGraph> {
    let mut c = construct_paper_graph(2)?;
    for e in 3..6 {
        c = c.insert_pole_into_edge(e, SeriesBlock::h2(2)?)?;
    }
    Ok(c)
}

/// Contents of a pole file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PoleFile {
    Composed(ComposedGraph),
    TwoPole(SeriesBlock),
}

fn line_err(line: usize, message: impl Into<String>) -> Error {
    Error::ParseLine {
        line,
        message: message.into(),
    }
}

pub fn parse_block_expr(expr: &str) -> Result<SeriesBlock, String> {
    let mut block: Option<SeriesBlock> = None;
    for raw in expr.split('+') {
        let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        let part = match term.as_str() {
            "identity" => SeriesBlock::identity(),
            "p" => SeriesBlock::pole_p(),
            "h" => SeriesBlock::h(),
            other => {
                let k = other
                    .strip_prefix("h2(k=")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| format!("unknown block term {other:?}"))?;
                SeriesBlock::h2(k).map_err(|e| e.to_string())?
            }
        };
        block = Some(match block {
            None => part,
            Some(b) => b.then(part),
        });
    }
    block.ok_or_else(|| "empty block expression".to_string())
}

pub fn parse_pole_file(text: &str) -> Result<PoleFile> {
    let mut skeleton: Option<Graph> = None;
    let mut blocks: Vec<Option<SeriesBlock>> = Vec::new();
    let mut twopole: Option<SeriesBlock> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match keyword {
            "twopole" => {
                if skeleton.is_some() || twopole.is_some() {
                    return Err(line_err(line, "twopole must be the only statement"));
                }
                twopole = Some(parse_block_expr(rest).map_err(|m| line_err(line, m))?);
            }
            "skeleton" => {
                if skeleton.is_some() || twopole.is_some() {
                    return Err(line_err(line, "duplicate header"));
                }
                let n = rest
                    .parse()
                    .map_err(|_| line_err(line, format!("bad vertex count {rest:?}")))?;
                skeleton = Some(Graph::new(n));
            }
            "edge" | "block" => {
                let g = skeleton
                    .as_mut()
                    .ok_or_else(|| line_err(line, "edge before skeleton header"))?;
                let mut parts = rest.splitn(3, char::is_whitespace);
                let mut endpoint = || -> Result<usize> {
                    let tok = parts.next().unwrap_or("");
                    tok.parse()
                        .map_err(|_| line_err(line, format!("bad vertex {tok:?}")))
                };
                let (u, v) = (endpoint()?, endpoint()?);
                g.add_edge(u, v)
                    .map_err(|e| line_err(line, e.to_string()))?;
                if keyword == "block" {
                    let expr = parts.next().unwrap_or("");
                    blocks.push(Some(parse_block_expr(expr).map_err(|m| line_err(line, m))?));
                } else {
                    if parts.next().is_some_and(|r| !r.trim().is_empty()) {
                        return Err(line_err(line, "trailing tokens after edge"));
                    }
                    blocks.push(None);
                }
            }
            other => return Err(line_err(line, format!("unknown statement {other:?}"))),
        }
    }
    match (skeleton, twopole) {
        (Some(skeleton), None) => Ok(PoleFile::Composed(ComposedGraph { skeleton, blocks })),
        (None, Some(block)) => Ok(PoleFile::TwoPole(block)),
        _ => Err(line_err(
            text.lines().count().max(1),
            "missing skeleton or twopole statement",
        )),
    }
}

pub fn write_pole_file(file: &PoleFile) -> Result<String> {
    match file {
        PoleFile::TwoPole(block) => Ok(format!("twopole {}\n", block.expr()?)),
        PoleFile::Composed(c) => {
            let mut out = format!("skeleton {}\n", c.skeleton.vertex_count());
            for (e, (u, v)) in c.skeleton.edges().enumerate() {
                match &c.blocks[e] {
                    None => out.push_str(&format!("edge {u} {v}\n")),
                    Some(b) => out.push_str(&format!("block {u} {v} {}\n", b.expr()?)),
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twopole::{build_h2, expand_vertex_to_triangle};

    #[test]
    fn paper_graph_counts() {
        let c = construct_paper_graph(2).unwrap();
        let f = c.flatten().unwrap();
        assert_eq!((f.graph.vertex_count(), f.graph.edge_count()), (136, 204));
        assert!(f.graph.validate_cubic().is_ok());
        assert!(f.graph.is_simple());
        assert_eq!(f.graph.is_bridgeless(), Ok(true));
        let in_blocks = f
            .origin
            .iter()
            .filter(|o| matches!(o, VertexOrigin::Block { .. }))
            .count();
        assert_eq!(in_blocks, 132);
        assert_eq!(f.skeleton_vertex_count(), 4);

        let f1 = construct_paper_graph(1).unwrap().flatten().unwrap();
        assert_eq!((f1.graph.vertex_count(), f1.graph.edge_count()), (70, 105));
        assert!(f1.graph.validate_cubic().is_ok());
        assert!(construct_paper_graph(0).is_err());
    }

    #[test]
    fn chain_flattening_matches_joined_pole() {
        // a theta skeleton with one h2(2) block equals closing the explicit pole
        let skeleton = Graph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let c = ComposedGraph::new(skeleton)
            .insert_pole_into_edge(0, SeriesBlock::h2(2).unwrap())
            .unwrap();
        let flat = c.flatten().unwrap().graph;
        let pole = build_h2(2).unwrap();
        // explicit: identify pole terminals with the two theta vertices
        let mut g = pole.graph.clone();
        g.add_edge(pole.s, pole.t).unwrap();
        g.add_edge(pole.s, pole.t).unwrap();
        assert!(crate::graph::is_isomorphic(&flat, &g));
    }

    #[test]
    fn skeleton_only_flattens_to_itself() {
        let c = ComposedGraph::new(k4_skeleton());
        assert_eq!(c.flatten().unwrap().graph, k4_skeleton());
        let ided = c.insert_pole_into_edge(2, SeriesBlock::identity()).unwrap();
        assert!(crate::graph::is_isomorphic(
            &ided.flatten().unwrap().graph,
            &k4_skeleton()
        ));
    }

    #[test]
    fn insertion_guards() {
        let c = construct_paper_graph(2).unwrap();
        assert!(c.insert_pole_into_edge(0, SeriesBlock::h()).is_err());
        assert!(c.insert_pole_into_edge(17, SeriesBlock::h()).is_err());
        let g = construct_variant_gprime().unwrap().flatten().unwrap().graph;
        assert!(g.validate_cubic().is_ok());
        assert_eq!(g.vertex_count(), 136 + 3 * 44);
    }

    #[test]
    fn expanded_u0() {
        let c = construct_paper_graph(2).unwrap();
        let (e, _) = c.expand_vertex_to_triangle(0).unwrap();
        let f = e.flatten().unwrap();
        assert_eq!(f.graph.vertex_count(), 138);
        assert!(f.graph.validate_cubic().is_ok());
        let direct = expand_vertex_to_triangle(&c.flatten().unwrap().graph, 0)
            .unwrap()
            .0;
        assert!(crate::graph::is_isomorphic(&f.graph, &direct));
    }

    #[test]
    fn pole_file_round_trip() {
        let c = construct_variant_gprime().unwrap();
        let text = write_pole_file(&PoleFile::Composed(c.clone())).unwrap();
        assert!(text.contains("block 0 1 h2(k=2)"));
        assert_eq!(parse_pole_file(&text).unwrap(), PoleFile::Composed(c));
        let mixed = "twopole p + h + h + identity\n";
        let parsed = parse_pole_file(mixed).unwrap();
        assert_eq!(
            write_pole_file(&parsed).unwrap(),
            "twopole p + h2(k=2) + identity\n"
        );
    }

    #[test]
    fn pole_file_errors() {
        assert!(matches!(
            parse_pole_file("edge 0 1"),
            Err(Error::ParseLine { line: 1, .. })
        ));
        assert!(matches!(
            parse_pole_file("skeleton 2\nblock 0 1 q"),
            Err(Error::ParseLine { line: 2, .. })
        ));
        assert!(matches!(
            parse_pole_file("skeleton 2\nedge 0 5"),
            Err(Error::ParseLine { line: 2, .. })
        ));
        assert!(matches!(
            parse_pole_file("twopole h2(k=0)"),
            Err(Error::ParseLine { line: 1, .. })
        ));
        assert!(parse_pole_file("").is_err());
        let custom = SeriesBlock::custom("x", crate::twopole::pole_p());
        assert!(write_pole_file(&PoleFile::TwoPole(custom)).is_err());
    }
}
