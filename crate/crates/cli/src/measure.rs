use std::time::Instant;

use serde::Serialize;
use snarklab_core::blockdp::{solve_composed_on, solve_composed_resistance_on};
use snarklab_core::colour::resistance_vertex;
use snarklab_core::composed::ComposedGraph;
use snarklab_core::factors::{oddness_bf, weak_oddness_bf};
use snarklab_core::{Error, FactorMode, Graph};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Auto,
    Bruteforce,
    Decomposition,
}

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub dimension: usize,
    pub oddness_order: usize,
    pub rho_budget: Option<usize>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            dimension: snarklab_core::factors::DEFAULT_DIMENSION_CAP,
            oddness_order: 26,
            rho_budget: Some(8),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Wanted {
    pub rho: bool,
    pub weak: bool,
    pub oddness: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Known,
    Unknown,
    #[serde(rename = "no-2-factor")]
    No2Factor,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deleted_vertices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_edges: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Measure {
    pub value: Option<usize>,
    pub status: Status,
    pub method: &'static str,
    pub millis: u128,
    pub witness: Option<Witness>,
}

impl Measure {
    fn known(value: usize, method: &'static str, witness: Witness) -> Self {
        Measure {
            value: Some(value),
            status: Status::Known,
            method,
            millis: 0,
            witness: Some(witness),
        }
    }

    pub fn cell(&self) -> String {
        match self.status {
            Status::Known => self.value.unwrap().to_string(),
            Status::Unknown => "unknown".into(),
            Status::No2Factor => "no-2-factor".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureResult {
    pub schema_version: u32,
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub rho: Option<Measure>,
    pub weak_oddness: Option<Measure>,
    pub oddness: Option<Measure>,
}

impl MeasureResult {
    /// Checks the chain rho <= weak <= oddness and evenness of the factor measures.
    pub fn check_invariants(&self) -> Result<(), CliError> {
        let known = |m: &Option<Measure>| m.as_ref().and_then(|m| m.value);
        let (r, w, o) = (
            known(&self.rho),
            known(&self.weak_oddness),
            known(&self.oddness),
        );
        let bad = |what: String| Err(CliError::Assertion(format!("{}: {what}", self.graph)));
        if let (Some(r), Some(w)) = (r, w) {
            if r > w {
                return bad(format!("rho {r} exceeds weak oddness {w}"));
            }
        }
        if let (Some(w), Some(o)) = (w, o) {
            if w > o {
                return bad(format!("weak oddness {w} exceeds oddness {o}"));
            }
        }
        if let (Some(r), Some(o)) = (r, o) {
            if r > o {
                return bad(format!("rho {r} exceeds oddness {o}"));
            }
        }
        for v in [w, o].into_iter().flatten() {
            if v % 2 == 1 {
                return bad(format!("odd factor measure {v}"));
            }
        }
        Ok(())
    }

    pub fn methods(&self) -> String {
        [&self.rho, &self.weak_oddness, &self.oddness]
            .iter()
            .map(|m| m.as_ref().map_or("-", |m| m.method))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn total_millis(&self) -> u128 {
        [&self.rho, &self.weak_oddness, &self.oddness]
            .iter()
            .filter_map(|m| m.as_ref())
            .map(|m| m.millis)
            .sum()
    }

    pub fn clear_timing(&mut self) {
        for m in [&mut self.rho, &mut self.weak_oddness, &mut self.oddness]
            .into_iter()
            .flatten()
        {
            m.millis = 0;
        }
    }
}

fn timed(run: impl FnOnce() -> Result<Measure, CliError>) -> Result<Measure, CliError> {
    let start = Instant::now();
    let mut m = run()?;
    m.millis = start.elapsed().as_millis();
    Ok(m)
}

/// Errors unless every requested brute-force measure fits the caps.
pub fn check_caps(g: &Graph, wanted: Wanted, caps: &Caps) -> Result<(), Error> {
    let dim = g.cycle_space_dimension();
    if (wanted.rho || wanted.weak) && dim > caps.dimension {
        return Err(Error::CapExceeded {
            what: "cycle-space dimension",
            value: dim,
            cap: caps.dimension,
        });
    }
    if wanted.oddness && g.vertex_count() > caps.oddness_order {
        return Err(Error::CapExceeded {
            what: "order for oddness enumeration",
            value: g.vertex_count(),
            cap: caps.oddness_order,
        });
    }
    Ok(())
}

pub fn brute_force(
    name: &str,
    g: &Graph,
    wanted: Wanted,
    caps: &Caps,
) -> Result<MeasureResult, CliError> {
    g.require_cubic()?;
    check_caps(g, wanted, caps)?;
    let rho = wanted
        .rho
        .then(|| {
            timed(|| {
                Ok(match resistance_vertex(g, caps.rho_budget)? {
                    Some(w) => Measure::known(
                        w.value,
                        "bruteforce",
                        Witness {
                            deleted_vertices: Some(w.deleted),
                            factor_edges: None,
                        },
                    ),
                    None => Measure {
                        value: None,
                        status: Status::Unknown,
                        method: "budget-exceeded",
                        millis: 0,
                        witness: None,
                    },
                })
            })
        })
        .transpose()?;
    let weak_oddness = wanted
        .weak
        .then(|| {
            timed(|| {
                let w = weak_oddness_bf(g, caps.dimension)?;
                Ok(Measure::known(
                    w.odd_components,
                    "bruteforce",
                    Witness {
                        deleted_vertices: None,
                        factor_edges: Some(w.edges.to_vec()),
                    },
                ))
            })
        })
        .transpose()?;
    let oddness = wanted
        .oddness
        .then(|| {
            timed(|| {
                Ok(match oddness_bf(g)? {
                    Some(w) => Measure::known(
                        w.odd_components,
                        "bruteforce",
                        Witness {
                            deleted_vertices: None,
                            factor_edges: Some(w.edges.to_vec()),
                        },
                    ),
                    None => Measure {
                        value: None,
                        status: Status::No2Factor,
                        method: "bruteforce",
                        millis: 0,
                        witness: None,
                    },
                })
            })
        })
        .transpose()?;
    Ok(MeasureResult {
        schema_version: SCHEMA_VERSION,
        graph: name.to_string(),
        n: g.vertex_count(),
        m: g.edge_count(),
        rho,
        weak_oddness,
        oddness,
    })
}

pub fn decomposition(
    name: &str,
    c: &ComposedGraph,
    wanted: Wanted,
) -> Result<MeasureResult, CliError> {
    let flat = c.flatten()?;
    flat.graph.require_cubic()?;
    let rho = wanted
        .rho
        .then(|| {
            timed(|| {
                let s = solve_composed_resistance_on(c, &flat)?;
                Ok(Measure::known(
                    s.value,
                    "decomposition",
                    Witness {
                        deleted_vertices: Some(s.deleted),
                        factor_edges: None,
                    },
                ))
            })
        })
        .transpose()?;
    let factor = |mode| {
        timed(|| {
            Ok(match solve_composed_on(c, &flat, mode) {
                Ok(s) => Measure::known(
                    s.value,
                    "decomposition",
                    Witness {
                        deleted_vertices: None,
                        factor_edges: Some(s.factor_edges),
                    },
                ),
                Err(Error::Infeasible(_)) if mode == FactorMode::TwoFactor => Measure {
                    value: None,
                    status: Status::No2Factor,
                    method: "decomposition",
                    millis: 0,
                    witness: None,
                },
                Err(e) => return Err(e.into()),
            })
        })
    };
    let weak_oddness = wanted
        .weak
        .then(|| factor(FactorMode::EvenFactor))
        .transpose()?;
    let oddness = wanted
        .oddness
        .then(|| factor(FactorMode::TwoFactor))
        .transpose()?;
    Ok(MeasureResult {
        schema_version: SCHEMA_VERSION,
        graph: name.to_string(),
        n: flat.graph.vertex_count(),
        m: flat.graph.edge_count(),
        rho,
        weak_oddness,
        oddness,
    })
}

pub fn render_table(r: &MeasureResult) -> String {
    let mut out = format!(
        "graph     {}\nvertices  {}\nedges     {}\n",
        r.graph, r.n, r.m
    );
    out.push_str(&format!(
        "{:<14}{:<13}{:<17}{}\n",
        "measure", "value", "method", "millis"
    ));
    for (label, m) in [
        ("rho", &r.rho),
        ("weak_oddness", &r.weak_oddness),
        ("oddness", &r.oddness),
    ] {
        if let Some(m) = m {
            out.push_str(&format!(
                "{:<14}{:<13}{:<17}{}\n",
                label,
                m.cell(),
                m.method,
                m.millis
            ));
        }
    }
    out
}
