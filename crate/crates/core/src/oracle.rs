//! Ground-truth isomorphism decisions by plain pruned backtracking.
//!
//! Deliberately simple — degree and adjacency consistency are the only
//! pruning — so results are obviously correct. This is the anchor all
//! engine acceptance tests compare against. Exhaustive counting is capped
//! to keep worst cases bounded.

use crate::graph::{Graph, Permutation};

use thiserror::Error;

pub const DEFAULT_COUNT_CAP: u32 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices; exhaustive counting is capped at {cap}")]
    CapExceeded { n: u32, cap: u32 },
}

/// Search effort counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub solutions_found: u64,
}

struct Searcher {
    n: usize,
    adj_a: Vec<Vec<bool>>,
    adj_b: Vec<Vec<bool>>,
    deg_a: Vec<u32>,
    deg_b: Vec<u32>,
    mapping: Vec<usize>, // 0-based image of each A-vertex, n = unset
    used: Vec<bool>,
    stats: SearchStats,
    first: Option<Vec<u32>>,
    count_all: bool,
}

impl Searcher {
    fn new(ga: &Graph, gb: &Graph, count_all: bool) -> Self {
        let n = ga.vertex_count() as usize;
        let build = |g: &Graph| {
            let mut adj = vec![vec![false; n]; n];
            for (u, v) in g.edges() {
                adj[u as usize - 1][v as usize - 1] = true;
                adj[v as usize - 1][u as usize - 1] = true;
            }
            adj
        };
        Searcher {
            n,
            adj_a: build(ga),
            adj_b: build(gb),
            deg_a: ga.degree_info().degrees,
            deg_b: gb.degree_info().degrees,
            mapping: vec![n; n],
            used: vec![false; n],
            stats: SearchStats::default(),
            first: None,
            count_all,
        }
    }

    fn extend(&mut self, u: usize) {
        if u == self.n {
            self.stats.solutions_found += 1;
            if self.first.is_none() {
                self.first = Some(self.mapping.iter().map(|&v| v as u32 + 1).collect());
            }
            return;
        }
        for v in 0..self.n {
            if self.used[v] || self.deg_a[u] != self.deg_b[v] {
                continue;
            }
            let consistent = (0..u).all(|w| self.adj_a[w][u] == self.adj_b[self.mapping[w]][v]);
            if !consistent {
                continue;
            }
            self.stats.nodes_expanded += 1;
            self.mapping[u] = v;
            self.used[v] = true;
            self.extend(u + 1);
            self.used[v] = false;
            self.mapping[u] = self.n;
            if !self.count_all && self.first.is_some() {
                return;
            }
        }
    }
}

fn compatible(ga: &Graph, gb: &Graph) -> bool {
    ga.vertex_count() == gb.vertex_count()
        && ga.edge_count() == gb.edge_count()
        && ga.degree_info().sorted() == gb.degree_info().sorted()
}

/// Finds an isomorphism from `ga` onto `gb` if one exists, together with
/// search statistics. Deterministic: the lexicographically smallest
/// mapping is returned.
pub fn brute_force_iso_with_stats(ga: &Graph, gb: &Graph) -> (Option<Permutation>, SearchStats) {
    if !compatible(ga, gb) {
        return (None, SearchStats::default());
    }
    let mut s = Searcher::new(ga, gb, false);
    s.extend(0);
    let perm = s
        .first
        .map(|m| Permutation::new(m).expect("search produces bijections"));
    (perm, s.stats)
}

/// Finds an isomorphism from `ga` onto `gb` if one exists.
pub fn brute_force_iso(ga: &Graph, gb: &Graph) -> Option<Permutation> {
    brute_force_iso_with_stats(ga, gb).0
}

/// Exact number of isomorphisms from `ga` onto `gb` by exhaustive pruned
/// enumeration, capped at `cap` vertices.
pub fn count_isos_with_cap(ga: &Graph, gb: &Graph, cap: u32) -> Result<u64, OracleError> {
    if ga.vertex_count() > cap {
        return Err(OracleError::CapExceeded {
            n: ga.vertex_count(),
            cap,
        });
    }
    if !compatible(ga, gb) {
        return Ok(0);
    }
    let mut s = Searcher::new(ga, gb, true);
    s.extend(0);
    Ok(s.stats.solutions_found)
}

/// `count_isos` at the default cap of 10 vertices.
pub fn count_isos(ga: &Graph, gb: &Graph) -> Result<u64, OracleError> {
    count_isos_with_cap(ga, gb, DEFAULT_COUNT_CAP)
}

/// Automorphism group order: the number of isomorphisms of `g` onto
/// itself.
pub fn aut_order(g: &Graph) -> Result<u64, OracleError> {
    count_isos(g, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::verify_mapping;
    use crate::graph::{generate, parse_edge_list, GraphKind};

    fn ref_a() -> Graph {
        parse_edge_list("6\n1 2\n1 3\n1 4\n1 5\n2 3\n2 6\n3 6\n4 5\n4 6\n5 6").unwrap()
    }

    fn ref_b() -> Graph {
        parse_edge_list("6\n1 3\n1 4\n1 5\n1 6\n2 3\n2 4\n2 5\n2 6\n3 4\n5 6").unwrap()
    }

    #[test]
    fn reference_pair_smallest_mapping() {
        let (perm, stats) = brute_force_iso_with_stats(&ref_a(), &ref_b());
        let perm = perm.unwrap();
        assert_eq!(perm.as_slice(), &[1, 3, 4, 5, 6, 2]);
        assert!(verify_mapping(&ref_a(), &ref_b(), &perm));
        assert!(stats.nodes_expanded > 0);
    }

    #[test]
    fn reference_pair_has_sixteen_isomorphisms() {
        assert_eq!(count_isos(&ref_a(), &ref_b()).unwrap(), 16);
        assert_eq!(aut_order(&ref_a()).unwrap(), 16);
    }

    #[test]
    fn complete_vs_cycle_has_none() {
        let k4 = generate(&GraphKind::Complete { n: 4 }, 0).unwrap();
        let c4 = Graph::new(4, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert!(brute_force_iso(&k4, &c4).is_none());
        assert_eq!(count_isos(&k4, &c4).unwrap(), 0);
    }

    #[test]
    fn complete_graph_has_factorial_many() {
        let k4 = generate(&GraphKind::Complete { n: 4 }, 0).unwrap();
        assert_eq!(count_isos(&k4, &k4).unwrap(), 24);
        let k5 = generate(&GraphKind::Complete { n: 5 }, 0).unwrap();
        assert_eq!(aut_order(&k5).unwrap(), 120);
    }

    #[test]
    fn path_reflection() {
        let p3 = Graph::new(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(aut_order(&p3).unwrap(), 2);
    }

    #[test]
    fn torus_orientations_are_isomorphic() {
        let t34 = generate(&GraphKind::Torus { rows: 3, cols: 4 }, 0).unwrap();
        let t43 = generate(&GraphKind::Torus { rows: 4, cols: 3 }, 0).unwrap();
        let perm = brute_force_iso(&t34, &t43).unwrap();
        assert!(verify_mapping(&t34, &t43, &perm));
    }

    #[test]
    fn count_cap_enforced() {
        let big = generate(&GraphKind::Torus { rows: 4, cols: 3 }, 0).unwrap();
        assert!(matches!(
            count_isos(&big, &big),
            Err(OracleError::CapExceeded { n: 12, cap: 10 })
        ));
        assert_eq!(count_isos_with_cap(&big, &big, 12).unwrap(), 48);
    }

    #[test]
    fn found_iff_count_positive() {
        for seed in 0..8u64 {
            let g = generate(&GraphKind::Gnp { n: 6, prob: 0.5 }, seed).unwrap();
            let h = generate(&GraphKind::Gnp { n: 6, prob: 0.5 }, seed + 100).unwrap();
            let found = brute_force_iso(&g, &h).is_some();
            let count = count_isos(&g, &h).unwrap();
            assert_eq!(found, count > 0);
        }
    }
}
