//! Report assembly: stable instance hashes and deterministic report files
//! whose only run-dependent byte is an isolated timestamp header line.

use crate::canvas::Canvas;
use crate::Result;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

/// Content hash of a canvas instance, stable across runs.
pub fn canvas_hash(c: &Canvas) -> String {
    let graph = crate::plane_graph::to_json(&c.graph);
    let payload = serde_json::json!({
        "graph": graph,
        "lists": c.lists,
        "scaffold_vertices": c.scaffold.vertices.iter().collect::<Vec<_>>(),
        "scaffold_edges": c.scaffold.edges.iter().collect::<Vec<_>>(),
    });
    let mut hasher = Sha256::new();
    hasher.update(payload.to_string().as_bytes());
    let digest = hasher.finalize();
    digest.iter().take(16).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct ReportFile {
    pub name: String,
    /// Deterministic body; the writer prepends the timestamp header.
    pub body: String,
}

/// Write report files under `dir`. Every file starts with a single header
/// line carrying the generation timestamp; everything after it is
/// byte-deterministic for a fixed seed.
pub fn write_reports(dir: &Path, suite: &str, files: &[ReportFile]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let stamp = timestamp();
    let mut out = Vec::new();
    for f in files {
        let path = dir.join(&f.name);
        let content = format!("# canvas-forge suite={suite} generated_at={stamp}\n{}", f.body);
        std::fs::write(&path, content)?;
        out.push(path);
    }
    Ok(out)
}

fn timestamp() -> String {
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("{now}")
}

/// Drop the header line; the remainder is the deterministic payload.
pub fn strip_header(content: &str) -> &str {
    match content.split_once('\n') {
        Some((first, rest)) if first.starts_with('#') => rest,
        _ => content,
    }
}

/// Minimal CSV assembly; fields are plain tokens (no quoting needed).
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    s.push_str(&header.join(","));
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canvas::ListAssignment;
    use crate::colors::ColorSet;
    use crate::plane_graph::{OuterSpec, PlaneGraph, SubgraphRef};

    #[test]
    fn hash_is_stable_and_sensitive() {
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 2], vec![2, 0], vec![0, 1]],
            OuterSpec::First,
        )
        .unwrap();
        let c = Canvas {
            scaffold: SubgraphRef::from_parts([0], []),
            lists: ListAssignment::uniform(3, ColorSet::palette(3)),
            graph: g,
        };
        let h1 = canvas_hash(&c);
        let h2 = canvas_hash(&c);
        assert_eq!(h1, h2);
        let mut c2 = c.clone();
        c2.lists.set(0, ColorSet::palette(4));
        assert_ne!(h1, canvas_hash(&c2));
    }

    #[test]
    fn header_strips() {
        assert_eq!(strip_header("# x\nbody\n"), "body\n");
        assert_eq!(strip_header("body\n"), "body\n");
    }
}
