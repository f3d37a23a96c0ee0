use std::path::Path;

use crate::cantor::{TableJson, Transducer};
use crate::dynamics::SftModel;
use crate::error::{Error, Result};
use crate::symbolic::{build_graph, DirectedGraph, GraphJson};

/// Built-in maps of Cantor space.
pub const SYSTEMS: &[&str] = &[
    "full2",
    "odometer",
    "identity",
    "bitflip",
    "odometer-swap",
    "constant0",
    "golden-mean",
    "cycles35",
];

/// Built-in graphs.
pub const GRAPHS: &[&str] = &["full2", "golden-mean", "c2", "cycles35"];

pub fn named_graph(name: &str) -> Option<DirectedGraph> {
    let g = match name {
        "full2" => build_graph(["0", "1"], [("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]),
        "golden-mean" => build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a")]),
        "c2" => build_graph(["0", "1"], [("0", "1"), ("1", "0")]),
        // a 3-cycle and a 5-cycle through vertex 0
        "cycles35" => build_graph(
            ["0", "1", "2", "3", "4", "5", "6"],
            [
                ("0", "1"),
                ("1", "2"),
                ("2", "0"),
                ("0", "3"),
                ("3", "4"),
                ("4", "5"),
                ("5", "6"),
                ("6", "0"),
            ],
        ),
        _ => return None,
    };
    Some(g.expect("built-in graphs are valid"))
}

/// A built-in graph by name, or a graph JSON file.
pub fn load_graph(spec: &str) -> Result<DirectedGraph> {
    if let Some(g) = named_graph(spec) {
        return Ok(g);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::UnknownSystem(spec.into()));
    }
    DirectedGraph::from_json(&std::fs::read_to_string(path)?)
}

/// A built-in system by name, or a JSON file holding either a graph (whose
/// shift is used) or a transducer table.
pub fn load_system(spec: &str, max_depth: usize) -> Result<Transducer> {
    let t = match spec {
        "full2" => Transducer::shift(max_depth),
        "odometer" => Transducer::odometer(max_depth),
        "identity" => Transducer::identity(max_depth),
        "bitflip" => Transducer::bitflip(max_depth),
        "odometer-swap" => Transducer::odometer_swap(max_depth),
        "constant0" => Transducer::constant(0, max_depth),
        "golden-mean" | "cycles35" => Transducer::sft_shift(
            spec,
            SftModel::new(named_graph(spec).expect("listed")),
            max_depth,
        ),
        _ => {
            let path = Path::new(spec);
            if !path.exists() {
                return Err(Error::UnknownSystem(spec.into()));
            }
            let text = std::fs::read_to_string(path)?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| spec.to_owned());
            let value: serde_json::Value = serde_json::from_str(&text)?;
            if value.get("vertices").is_some() {
                let g: GraphJson = serde_json::from_value(value)?;
                Transducer::sft_shift(name, SftModel::new(g.try_into()?), max_depth)
            } else {
                let table: TableJson = serde_json::from_value(value)?;
                Transducer::from_table_json(name, table)?
            }
        }
    };
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_name_loads() {
        for name in SYSTEMS {
            assert_eq!(load_system(name, 8).unwrap().max_depth, 8);
        }
        for name in GRAPHS {
            assert!(named_graph(name).is_some());
        }
        assert!(matches!(load_system("nope", 8), Err(Error::UnknownSystem(_))));
    }
}
