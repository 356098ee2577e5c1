use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anyhow::{Context, Result};
use corepeel::Graph;
use flate2::read::MultiGzDecoder;

/// Reads an edge list, decompressing when the name ends in `.gz`.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let gz = path.extension().is_some_and(|e| e == "gz");
    let g = if gz {
        corepeel::parse_edge_list(BufReader::new(MultiGzDecoder::new(file)))
    } else {
        corepeel::parse_edge_list(BufReader::new(file))
    };
    g.with_context(|| format!("cannot read {}", path.display()))
}

/// File name without `.gz` and `.txt` suffixes.
pub fn dataset_name(path: &Path) -> String {
    let mut name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    for suffix in [".gz", ".txt"] {
        if let Some(stripped) = name.strip_suffix(suffix) {
            name = stripped.to_string();
        }
    }
    name
}
