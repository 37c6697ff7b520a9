use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use snarklab_core::format::parse_graph6;

use crate::measure::{brute_force, Caps, MeasureResult, Wanted};
use crate::CliError;

#[derive(Debug, Serialize)]
struct Row {
    id: usize,
    n: Option<usize>,
    m: Option<usize>,
    rho: String,
    weak: String,
    oddness: String,
    gap: Option<i64>,
    methods: String,
    millis: Option<u128>,
    error: String,
}

impl Row {
    fn failed(id: usize, error: String) -> Self {
        Row {
            id,
            n: None,
            m: None,
            rho: String::new(),
            weak: String::new(),
            oddness: String::new(),
            gap: None,
            methods: String::new(),
            millis: None,
            error,
        }
    }
}

fn scan_line(id: usize, line: &str, caps: &Caps, timing: bool) -> Result<Row, CliError> {
    let g = match parse_graph6(line) {
        Ok(g) => g,
        Err(e) => return Ok(Row::failed(id, e.to_string())),
    };
    let all = Wanted {
        rho: true,
        weak: true,
        oddness: true,
    };
    let mut r: MeasureResult = match brute_force(&id.to_string(), &g, all, caps) {
        Ok(r) => r,
        Err(CliError::Core(e)) => return Ok(Row::failed(id, e.to_string())),
        Err(e) => return Err(e),
    };
    r.check_invariants()?;
    if !timing {
        r.clear_timing();
    }
    let value = |m: &Option<crate::measure::Measure>| m.as_ref().and_then(|m| m.value);
    let gap = match (value(&r.weak_oddness), value(&r.oddness)) {
        (Some(w), Some(o)) => Some(o as i64 - w as i64),
        _ => None,
    };
    let cell =
        |m: &Option<crate::measure::Measure>| m.as_ref().map(|m| m.cell()).unwrap_or_default();
    Ok(Row {
        id,
        n: Some(r.n),
        m: Some(r.m),
        rho: cell(&r.rho),
        weak: cell(&r.weak_oddness),
        oddness: cell(&r.oddness),
        gap,
        methods: r.methods(),
        millis: Some(r.total_millis()),
        error: String::new(),
    })
}

/// Worker count from `SNARKLAB_THREADS`; 0 or unset means serial.
pub fn threads_from_env() -> usize {
    std::env::var("SNARKLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}

/// Measures every graph6 line of `text` and writes CSV rows in input order.
pub fn scan(
    text: &str,
    caps: &Caps,
    only_gaps: bool,
    timing: bool,
    threads: usize,
    out: impl Write,
) -> Result<(), CliError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let rows: Vec<Result<Row, CliError>> = if threads == 0 {
        lines
            .iter()
            .map(|&(id, l)| scan_line(id, l, caps, timing))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
        pool.install(|| {
            lines
                .par_iter()
                .map(|&(id, l)| scan_line(id, l, caps, timing))
                .collect()
        })
    };
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    writer
        .write_record([
            "id", "n", "m", "rho", "weak", "oddness", "gap", "methods", "millis", "error",
        ])
        .map_err(csv_err)?;
    for row in rows {
        let row = row?;
        if only_gaps && row.gap.unwrap_or(0) == 0 {
            continue;
        }
        writer.serialize(&row).map_err(csv_err)?;
    }
    writer.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}
