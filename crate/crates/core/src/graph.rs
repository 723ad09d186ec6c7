//! Areal adjacency structure for the intrinsic CAR prior.
//!
//! A graph is built from an undirected edge list over opaque region ids,
//! validated for symmetry (self-loops rejected, duplicates collapsed), and
//! annotated with per-region degrees and connected components. Regions with
//! no neighbors ("islands") are permitted; the BYM sampler pins their spatial
//! effect at zero and excludes them from the CAR sufficient statistics.

use crate::{Error, Result};
use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

/// Symmetric neighbor structure over an ordered list of region ids.
#[derive(Debug, Clone)]
pub struct AdjacencyGraph {
    region_ids: Vec<String>,
    neighbors: Vec<Vec<usize>>,
    component_label: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl AdjacencyGraph {
    /// Builds a graph from undirected edges. When `declared` is given it
    /// fixes the region order and the id universe: edge endpoints outside it
    /// are a validation error, declared ids without edges become islands.
    /// Without it, ids are taken in order of first appearance.
    pub fn from_edges(edges: &[(String, String)], declared: Option<&[String]>) -> Result<Self> {
        let mut ids: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        if let Some(declared) = declared {
            for id in declared {
                if index.insert(id.clone(), ids.len()).is_some() {
                    return Err(Error::Validation(format!(
                        "duplicate region id {id:?} in declared region list"
                    )));
                }
                ids.push(id.clone());
            }
        }

        let fixed_universe = declared.is_some();
        let mut unmatched: Vec<String> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (row, (a, b)) in edges.iter().enumerate() {
            if a == b {
                return Err(Error::Validation(format!(
                    "self-loop at edge row {}: region {a:?} listed as its own neighbor",
                    row + 1
                )));
            }
            let mut resolve = |id: &String| -> Option<usize> {
                if let Some(&k) = index.get(id) {
                    return Some(k);
                }
                if fixed_universe {
                    if !unmatched.contains(id) {
                        unmatched.push(id.clone());
                    }
                    return None;
                }
                let k = ids.len();
                index.insert(id.clone(), k);
                ids.push(id.clone());
                Some(k)
            };
            let i = resolve(a);
            let j = resolve(b);
            if let (Some(i), Some(j)) = (i, j) {
                pairs.push((i.min(j), i.max(j)));
            }
        }
        if !unmatched.is_empty() {
            unmatched.sort();
            return Err(Error::Validation(format!(
                "edge list mentions region ids absent from the counts file: {}",
                unmatched.join(", ")
            )));
        }

        pairs.sort_unstable();
        pairs.dedup();

        let mut neighbors = vec![Vec::new(); ids.len()];
        for &(i, j) in &pairs {
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }

        let (component_label, components) = label_components(&neighbors);
        Ok(Self {
            region_ids: ids,
            neighbors,
            component_label,
            components,
        })
    }

    /// Graph in which every region neighbors all others (degree I-1).
    pub fn complete(regions: usize) -> Result<Self> {
        if regions < 2 {
            return Err(Error::Domain(format!(
                "a complete graph needs at least 2 regions, got {regions}"
            )));
        }
        let ids: Vec<String> = (1..=regions).map(|k| format!("r{k:03}")).collect();
        let neighbors: Vec<Vec<usize>> = (0..regions)
            .map(|i| (0..regions).filter(|&j| j != i).collect())
            .collect();
        let (component_label, components) = label_components(&neighbors);
        Ok(Self {
            region_ids: ids,
            neighbors,
            component_label,
            components,
        })
    }

    pub fn len(&self) -> usize {
        self.region_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.region_ids.is_empty()
    }

    pub fn region_ids(&self) -> &[String] {
        &self.region_ids
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// Neighbor count m_i.
    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn is_island(&self, i: usize) -> bool {
        self.neighbors[i].is_empty()
    }

    pub fn island_count(&self) -> usize {
        (0..self.len()).filter(|&i| self.is_island(i)).count()
    }

    /// Connected components as disjoint, exhaustive index sets.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.component_label[i]
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Rank of the intrinsic CAR precision over the non-island regions:
    /// one less than the size of each multi-region component.
    pub fn icar_rank(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.len() >= 2)
            .map(|c| c.len() - 1)
            .sum()
    }

    /// Checks that the graph covers exactly the given region ids, in order.
    pub fn check_alignment(&self, region_ids: &[String]) -> Result<()> {
        if self.region_ids == region_ids {
            return Ok(());
        }
        let mut missing: Vec<&str> = region_ids
            .iter()
            .filter(|id| !self.region_ids.contains(id))
            .map(String::as_str)
            .collect();
        let mut extra: Vec<&str> = self
            .region_ids
            .iter()
            .filter(|id| !region_ids.contains(id))
            .map(String::as_str)
            .collect();
        missing.sort();
        extra.sort();
        Err(Error::Validation(format!(
            "adjacency graph and count data cover different regions \
             (missing from graph: [{}]; not in counts: [{}])",
            missing.join(", "),
            extra.join(", ")
        )))
    }
}

fn label_components(neighbors: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = neighbors.len();
    let mut label = vec![usize::MAX; n];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let comp = components.len();
        let mut members = Vec::new();
        stack.push(start);
        label[start] = comp;
        while let Some(i) = stack.pop() {
            members.push(i);
            for &j in &neighbors[i] {
                if label[j] == usize::MAX {
                    label[j] = comp;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    (label, components)
}

/// Loads an undirected edge list from CSV with header `region_a,region_b`.
pub fn load_adjacency<P: AsRef<Path>>(
    path: P,
    declared: Option<&[String]>,
) -> Result<AdjacencyGraph> {
    let file = std::fs::File::open(path.as_ref()).map_err(|e| {
        Error::Validation(format!(
            "cannot open adjacency file {}: {e}",
            path.as_ref().display()
        ))
    })?;
    read_adjacency(file, declared)
}

/// Reads an edge list in the adjacency CSV format from any reader.
pub fn read_adjacency<R: Read>(reader: R, declared: Option<&[String]>) -> Result<AdjacencyGraph> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    {
        let headers = csv.headers()?;
        if headers.len() < 2 || &headers[0] != "region_a" || &headers[1] != "region_b" {
            return Err(Error::Validation(format!(
                "adjacency file must start with header region_a,region_b, found {:?}",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
    }
    let mut edges = Vec::new();
    for (row, record) in csv.records().enumerate() {
        let record = record?;
        if record.len() < 2 {
            return Err(Error::Validation(format!(
                "adjacency row {} has {} fields, expected 2",
                row + 1,
                record.len()
            )));
        }
        edges.push((record[0].trim().to_string(), record[1].trim().to_string()));
    }
    AdjacencyGraph::from_edges(&edges, declared)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: &str, b: &str) -> (String, String) {
        (a.to_string(), b.to_string())
    }

    #[test]
    fn path_graph_degrees_and_single_component() {
        let g = AdjacencyGraph::from_edges(&[e("A", "B"), e("B", "C")], None).unwrap();
        assert_eq!(g.region_ids(), ["A", "B", "C"]);
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.degree(2), 1);
        assert_eq!(g.components().len(), 1);
        assert_eq!(g.icar_rank(), 2);
    }

    #[test]
    fn complete_graph_all_degrees_equal() {
        let g = AdjacencyGraph::complete(50).unwrap();
        assert!((0..50).all(|i| g.degree(i) == 49));
        assert_eq!(g.components().len(), 1);
        assert_eq!(g.icar_rank(), 49);

        let g = AdjacencyGraph::complete(2).unwrap();
        assert_eq!(g.edge_count(), 1);
        let g = AdjacencyGraph::complete(10).unwrap();
        assert_eq!(g.edge_count(), 45);
        assert!(AdjacencyGraph::complete(1).is_err());
    }

    #[test]
    fn declared_island_gets_own_component() {
        let declared = vec!["A".to_string(), "B".to_string(), "C".to_string()];
        let g = AdjacencyGraph::from_edges(&[e("A", "B")], Some(&declared)).unwrap();
        assert_eq!(g.degree(2), 0);
        assert!(g.is_island(2));
        assert_eq!(g.island_count(), 1);
        assert_eq!(g.components().len(), 2);
        assert_eq!(g.icar_rank(), 1);
    }

    #[test]
    fn self_loop_rejected_naming_row() {
        let err = AdjacencyGraph::from_edges(&[e("A", "B"), e("C", "C")], None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 2") && msg.contains("\"C\""), "{msg}");
    }

    #[test]
    fn unknown_edge_ids_rejected_with_list() {
        let declared = vec!["A".to_string(), "B".to_string()];
        let err =
            AdjacencyGraph::from_edges(&[e("A", "B"), e("B", "X"), e("Y", "A")], Some(&declared))
                .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('X') && msg.contains('Y'), "{msg}");
    }

    #[test]
    fn duplicate_and_reversed_edges_collapse() {
        let base = AdjacencyGraph::from_edges(&[e("A", "B"), e("B", "C")], None).unwrap();
        let noisy = AdjacencyGraph::from_edges(
            &[e("A", "B"), e("B", "A"), e("B", "C"), e("B", "C"), e("C", "B")],
            None,
        )
        .unwrap();
        assert_eq!(base.region_ids(), noisy.region_ids());
        for i in 0..base.len() {
            assert_eq!(base.neighbors(i), noisy.neighbors(i));
        }
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = AdjacencyGraph::from_edges(
            &[e("A", "B"), e("B", "C"), e("C", "D"), e("D", "A"), e("A", "C")],
            None,
        )
        .unwrap();
        let degree_sum: usize = (0..g.len()).map(|i| g.degree(i)).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn csv_roundtrip_and_header_check() {
        let data = "region_a,region_b\nA,B\nB,C\n";
        let g = read_adjacency(data.as_bytes(), None).unwrap();
        assert_eq!(g.len(), 3);

        let bad = "from,to\nA,B\n";
        assert!(read_adjacency(bad.as_bytes(), None).is_err());
    }

    #[test]
    fn alignment_check_reports_both_sides() {
        let g = AdjacencyGraph::from_edges(&[e("A", "B")], None).unwrap();
        let err = g
            .check_alignment(&["A".to_string(), "Z".to_string()])
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('Z') && msg.contains('B'), "{msg}");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// Loading is idempotent under edge duplication and reversal.
            #[test]
            fn symmetric_under_edge_noise(
                edges in proptest::collection::vec((0usize..12, 0usize..12), 1..40),
                seed in 0u64..1000,
            ) {
                let named: Vec<(String, String)> = edges
                    .iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| (format!("n{a}"), format!("n{b}")))
                    .collect();
                prop_assume!(!named.is_empty());
                let base = AdjacencyGraph::from_edges(&named, None).unwrap();

                // Duplicate and flip some edges deterministically from `seed`.
                let mut noisy = named.clone();
                for (k, (a, b)) in named.iter().enumerate() {
                    if (seed + k as u64) % 3 == 0 {
                        noisy.push((b.clone(), a.clone()));
                    }
                    if (seed + k as u64) % 4 == 0 {
                        noisy.push((a.clone(), b.clone()));
                    }
                }
                let renoised = AdjacencyGraph::from_edges(&noisy, None).unwrap();
                prop_assert_eq!(base.region_ids(), renoised.region_ids());
                for i in 0..base.len() {
                    prop_assert_eq!(base.neighbors(i), renoised.neighbors(i));
                    // Symmetry: j in N(i) iff i in N(j).
                    for &j in base.neighbors(i) {
                        prop_assert!(base.neighbors(j).contains(&i));
                    }
                }
                let degree_sum: usize = (0..base.len()).map(|i| base.degree(i)).sum();
                prop_assert_eq!(degree_sum, 2 * base.edge_count());
            }
        }
    }
}
