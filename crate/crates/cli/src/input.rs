use std::fs;
use std::path::Path;

use snarklab_core::composed::{parse_pole_file, ComposedGraph, PoleFile};
use snarklab_core::format::{parse_edgelist, parse_graph6};
use snarklab_core::Graph;

use crate::CliError;

/// A parsed input file.
pub enum Input {
    Graph(Graph),
    Composed(ComposedGraph),
    Pole(PoleFile),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    G6,
    Edgelist,
    Pole,
}

fn sniff(path: &Path, text: &str) -> InputFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => return InputFormat::G6,
        Some("pole") => return InputFormat::Pole,
        Some("edgelist" | "el") => return InputFormat::Edgelist,
        _ => {}
    }
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with("skeleton") || first.starts_with("twopole") {
        InputFormat::Pole
    } else if first.split_whitespace().all(|w| w.parse::<usize>().is_ok()) {
        InputFormat::Edgelist
    } else {
        InputFormat::G6
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path, format: Option<InputFormat>) -> Result<Input, CliError> {
    let text = read_text(path)?;
    let format = format.unwrap_or_else(|| sniff(path, &text));
    Ok(match format {
        InputFormat::G6 => Input::Graph(parse_graph6(text.trim_end_matches(['\n', '\r']))?),
        InputFormat::Edgelist => Input::Graph(parse_edgelist(&text)?),
        InputFormat::Pole => match parse_pole_file(&text)? {
            PoleFile::Composed(c) => Input::Composed(c),
            other => Input::Pole(other),
        },
    })
}
