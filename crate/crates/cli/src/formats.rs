//! Reading and writing graphs in the three interchange formats.

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use minorkit::io::{from_dimacs, from_graph6, from_json, to_dimacs, to_graph6, to_json};
use minorkit::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum GraphFormat {
    #[default]
    Graph6,
    Dimacs,
    Json,
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    Ok(match format {
        GraphFormat::Graph6 => from_graph6(text.trim())?,
        GraphFormat::Dimacs => from_dimacs(text)?,
        GraphFormat::Json => from_json(text)?,
    })
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => to_graph6(g),
        GraphFormat::Dimacs => to_dimacs(g),
        GraphFormat::Json => to_json(g),
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_graph(path: &Path, format: GraphFormat) -> Result<Graph> {
    parse_graph(&read_text(path)?, format).with_context(|| format!("parsing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use minorkit::patterns::wheel;

    #[test]
    fn every_format_round_trips() {
        let g = wheel(5).unwrap();
        for f in [GraphFormat::Graph6, GraphFormat::Dimacs, GraphFormat::Json] {
            assert_eq!(parse_graph(&write_graph(&g, f), f).unwrap(), g);
        }
    }
}
