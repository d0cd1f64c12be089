//! Interaction graphs and adopter components.
//!
//! A [`Graph`] is a simple undirected graph over nodes `0..n`. The quantity
//! the adoption games need from it: given the set of players currently
//! adopting, the connected components of the subgraph induced by the
//! adopters (a technology is only worth what it connects you to).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A simple undirected graph; edges are stored normalized and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n_nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n_nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut normalized = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Param(format!("self-loop at node {u}")));
            }
            for node in [u, v] {
                if node >= n_nodes {
                    return Err(Error::Param(format!(
                        "edge endpoint {node} out of range for {n_nodes} nodes"
                    )));
                }
            }
            normalized.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            n_nodes,
            edges: normalized.into_iter().collect(),
        })
    }

    /// Parse the plain-text edge-list format.
    ///
    /// One edge per line as two whitespace-separated node ids. Blank lines
    /// and `#` comments are ignored. An optional leading `nodes K` line
    /// fixes the node count; otherwise it is one more than the largest id.
    /// Errors carry 1-based line numbers.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut declared: Option<usize> = None;
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        let mut saw_data = false;
        for (line_no, raw) in text.lines().enumerate() {
            let line_no = line_no + 1;
            let line = match raw.find('#') {
                Some(i) => raw[..i].trim(),
                None => raw.trim(),
            };
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] == "nodes" {
                if saw_data {
                    return Err(Error::EdgeList {
                        line: line_no,
                        message: "the `nodes` header must come before any edge".into(),
                    });
                }
                if declared.is_some() {
                    return Err(Error::EdgeList {
                        line: line_no,
                        message: "duplicate `nodes` header".into(),
                    });
                }
                let count = match tokens.as_slice() {
                    [_, k] => k.parse::<usize>().ok(),
                    _ => None,
                };
                declared = Some(count.ok_or(Error::EdgeList {
                    line: line_no,
                    message: format!("malformed header `{line}`, expected `nodes K`"),
                })?);
                saw_data = true;
                continue;
            }
            saw_data = true;
            if tokens.len() != 2 {
                return Err(Error::EdgeList {
                    line: line_no,
                    message: format!("expected two node ids, got `{line}`"),
                });
            }
            let mut pair = [0usize; 2];
            for (slot, token) in pair.iter_mut().zip(&tokens) {
                let id: i64 = token.parse().map_err(|_| Error::EdgeList {
                    line: line_no,
                    message: format!("`{token}` is not a node id"),
                })?;
                if id < 0 {
                    return Err(Error::EdgeList {
                        line: line_no,
                        message: format!("negative node id {id}"),
                    });
                }
                *slot = id as usize;
            }
            let (u, v) = (pair[0], pair[1]);
            if u == v {
                return Err(Error::EdgeList {
                    line: line_no,
                    message: format!("self-loop at node {u}"),
                });
            }
            edges.push((line_no, u, v));
        }
        let max_id = edges.iter().map(|&(_, u, v)| u.max(v)).max();
        let n_nodes = match declared {
            Some(k) => {
                if let Some(&(line, u, v)) =
                    edges.iter().find(|&&(_, u, v)| u >= k || v >= k)
                {
                    return Err(Error::EdgeList {
                        line,
                        message: format!(
                            "edge {u}-{v} references a node outside the declared {k}"
                        ),
                    });
                }
                k
            }
            None => max_id.map_or(0, |m| m + 1),
        };
        Graph::new(n_nodes, edges.into_iter().map(|(_, u, v)| (u, v)))
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Components of the subgraph induced by `adopters`.
    ///
    /// Returns adopter node -> (component id, component size). The id is the
    /// smallest node in the component, so the labeling is deterministic.
    pub fn adopter_components(&self, adopters: &[usize]) -> Result<BTreeMap<usize, (usize, usize)>> {
        let set: BTreeSet<usize> = adopters.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&n| n >= self.n_nodes) {
            return Err(Error::Param(format!(
                "adopter {bad} out of range for {} nodes",
                self.n_nodes
            )));
        }
        let index: BTreeMap<usize, usize> =
            set.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut dsu = UnionFind::new(set.len());
        for &(u, v) in &self.edges {
            if let (Some(&iu), Some(&iv)) = (index.get(&u), index.get(&v)) {
                dsu.union(iu, iv);
            }
        }
        let nodes: Vec<usize> = set.into_iter().collect();
        let mut component_id: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, &node) in nodes.iter().enumerate() {
            let root = dsu.find(i);
            component_id.entry(root).or_insert(node);
        }
        Ok(nodes
            .iter()
            .enumerate()
            .map(|(i, &node)| {
                let root = dsu.find(i);
                (node, (component_id[&root], dsu.size(root)))
            })
            .collect())
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete-graph edges are valid")
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    fn size(&mut self, x: usize) -> usize {
        let root = self.find(x);
        self.size[root]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_edges_comments_and_header() {
        let g = Graph::parse_edge_list(
            "# backbone sketch\nnodes 5\n0 1\n1 2   # bridge\n\n3 1\n",
        )
        .unwrap();
        assert_eq!(g.n_nodes(), 5);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn infers_node_count_and_dedupes() {
        let g = Graph::parse_edge_list("2 0\n0 2\n2 7\n").unwrap();
        assert_eq!(g.n_nodes(), 8);
        assert_eq!(g.edges(), &[(0, 2), (2, 7)]);
        assert_eq!(Graph::parse_edge_list("# nothing\n").unwrap().n_nodes(), 0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match Graph::parse_edge_list("0 1\n2\n") {
            Err(Error::EdgeList { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected EdgeList error, got {other:?}"),
        }
        match Graph::parse_edge_list("0 1\n3 -2\n") {
            Err(Error::EdgeList { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("negative"));
            }
            other => panic!("expected EdgeList error, got {other:?}"),
        }
        match Graph::parse_edge_list("0 1\n\n4 4\n") {
            Err(Error::EdgeList { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("self-loop"));
            }
            other => panic!("expected EdgeList error, got {other:?}"),
        }
        match Graph::parse_edge_list("nodes 3\n0 5\n") {
            Err(Error::EdgeList { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected EdgeList error, got {other:?}"),
        }
        match Graph::parse_edge_list("0 1\nnodes 4\n") {
            Err(Error::EdgeList { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected EdgeList error, got {other:?}"),
        }
    }

    #[test]
    fn adopter_components_split_along_non_adopters() {
        // Path 0-1-2 with the middle node holding out.
        let g = Graph::path(3);
        let comps = g.adopter_components(&[0, 2]).unwrap();
        assert_eq!(comps[&0], (0, 1));
        assert_eq!(comps[&2], (2, 1));
        let comps = g.adopter_components(&[0, 1, 2]).unwrap();
        assert_eq!(comps[&0], (0, 3));
        assert_eq!(comps[&2], (0, 3));
        assert!(g.adopter_components(&[]).unwrap().is_empty());
    }

    #[test]
    fn component_ids_are_smallest_members() {
        let g = Graph::new(6, [(0, 3), (3, 5), (1, 2)]).unwrap();
        let comps = g.adopter_components(&[1, 2, 3, 5]).unwrap();
        assert_eq!(comps[&3], (3, 2));
        assert_eq!(comps[&5], (3, 2));
        assert_eq!(comps[&1], (1, 2));
        assert_eq!(comps[&2], (1, 2));
    }

    #[test]
    fn component_sizes_partition_the_adopters() {
        let g = Graph::new(
            7,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (1, 4)],
        )
        .unwrap();
        for adopters in [vec![0, 2, 4, 6], vec![1, 2, 3], (0..7).collect::<Vec<_>>()] {
            let comps = g.adopter_components(&adopters).unwrap();
            let mut by_component: BTreeMap<usize, usize> = BTreeMap::new();
            for (&node, &(id, size)) in &comps {
                *by_component.entry(id).or_default() += 1;
                assert_eq!(comps[&id].0, id, "id is a member and canonical");
                assert_eq!(comps[&node].1, size);
            }
            for (id, members) in by_component {
                assert_eq!(comps[&id].1, members, "declared size matches membership");
            }
        }
        // Fully adopted connected graph: one component of everyone.
        let comps = g.adopter_components(&(0..7).collect::<Vec<_>>()).unwrap();
        assert!(comps.values().all(|&(id, size)| id == 0 && size == 7));
    }

    #[test]
    fn out_of_range_adopters_are_rejected() {
        let g = Graph::path(3);
        assert!(matches!(
            g.adopter_components(&[0, 9]),
            Err(Error::Param(_))
        ));
        assert!(matches!(Graph::new(2, [(0, 2)]), Err(Error::Param(_))));
        assert!(matches!(Graph::new(2, [(1, 1)]), Err(Error::Param(_))));
    }
}
