//! Strict balance and maximum sub-hypergraph density.
//!
//! A hypergraph is strictly balanced when its density strictly exceeds the
//! density of every proper nonempty induced sub-hypergraph. It suffices to
//! inspect connected subsets: a densest part of any violating subset is
//! connected, so the search below enumerates connected vertex sets grown
//! from each seed vertex and never touches the remaining 2^v subsets.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Rational};

/// Exhaustive search is limited to this many vertices.
pub const SUBSET_SEARCH_BOUND: usize = 24;

/// Outcome of a strict-balance check. When `strictly_balanced` is false the
/// witness is a densest violating proper subset (smallest, then
/// lexicographically first, among the densest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceVerdict {
    pub strictly_balanced: bool,
    pub witness: Option<Vec<usize>>,
}

struct SubsetScan<'a> {
    adjacency: Vec<u32>,
    edge_masks: Vec<u32>,
    g: &'a Hypergraph,
}

impl<'a> SubsetScan<'a> {
    fn new(g: &'a Hypergraph) -> Result<Self> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if n > SUBSET_SEARCH_BOUND {
            return Err(Error::SearchBoundExceeded {
                vertices: n,
                bound: SUBSET_SEARCH_BOUND,
            });
        }
        let edge_masks = g.edge_masks();
        let mut adjacency = vec![0u32; n];
        for mask in &edge_masks {
            let mut bits = *mask;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                adjacency[v] |= mask & !(1 << v);
            }
        }
        Ok(SubsetScan {
            adjacency,
            edge_masks,
            g,
        })
    }

    fn induced_edge_count(&self, set: u32) -> usize {
        self.edge_masks
            .iter()
            .filter(|&&m| m & set == m)
            .count()
    }

    /// Calls `f(set, induced_edges)` once for every nonempty connected set.
    fn for_each_connected(&self, f: &mut impl FnMut(u32, usize)) {
        let n = self.g.vertex_count();
        for seed in 0..n {
            // Connected sets whose minimum vertex is `seed`.
            let below = (1u32 << seed) - 1;
            let start = 1u32 << seed;
            f(start, self.induced_edge_count(start));
            self.grow(start, self.adjacency[seed] & !below, below | start, f);
        }
    }

    fn grow(&self, set: u32, ext: u32, banned: u32, f: &mut impl FnMut(u32, usize)) {
        let mut remaining = ext;
        let mut banned = banned;
        while remaining != 0 {
            let v = remaining.trailing_zeros() as usize;
            let bit = 1u32 << v;
            remaining &= !bit;
            let next_set = set | bit;
            f(next_set, self.induced_edge_count(next_set));
            let next_ext = (remaining | self.adjacency[v]) & !(banned | bit) & !set;
            self.grow(next_set, next_ext, banned | bit, f);
            banned |= bit;
        }
    }
}

fn mask_to_vec(mut mask: u32) -> Vec<usize> {
    let mut out = Vec::new();
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Compares densities a/b vs c/d without leaving integers.
fn density_cmp(e1: usize, v1: usize, e2: usize, v2: usize) -> std::cmp::Ordering {
    (e1 as u64 * v2 as u64).cmp(&(e2 as u64 * v1 as u64))
}

/// Decides strict balance, with a certificate on failure.
pub fn is_strictly_balanced(g: &Hypergraph) -> Result<BalanceVerdict> {
    let scan = SubsetScan::new(g)?;
    let n = g.vertex_count();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let e_total = g.edge_count();
    // Best violating proper subset: density desc, size asc, lexicographic.
    let mut best: Option<(usize, u32)> = None; // (edges, set)
    scan.for_each_connected(&mut |set, edges| {
        if set == full {
            return;
        }
        // Violation: density(S) >= density(G).
        if density_cmp(edges, set.count_ones() as usize, e_total, n).is_lt() {
            return;
        }
        let replace = match best {
            None => true,
            Some((be, bset)) => {
                let o = density_cmp(edges, set.count_ones() as usize, be, bset.count_ones() as usize)
                    .then(bset.count_ones().cmp(&set.count_ones()))
                    .then_with(|| {
                        let cur = mask_to_vec(set);
                        let old = mask_to_vec(bset);
                        old.cmp(&cur)
                    });
                o.is_gt()
            }
        };
        if replace {
            best = Some((edges, set));
        }
    });
    Ok(match best {
        None => BalanceVerdict {
            strictly_balanced: true,
            witness: None,
        },
        Some((_, set)) => BalanceVerdict {
            strictly_balanced: false,
            witness: Some(mask_to_vec(set)),
        },
    })
}

/// Maximum of density(G|S) over nonempty vertex sets S, together with an
/// attaining set. Ties break toward the smallest set, then lexicographic.
/// Only sets that induce at least one edge matter, so subsets inducing no
/// edges are skipped.
pub fn max_density(g: &Hypergraph) -> Result<(Rational, Vec<usize>)> {
    if g.vertex_count() == 0 {
        return Err(Error::NoVertices);
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let scan = SubsetScan::new(g)?;
    // A size-minimal maximizer is connected, so the connected scan finds it.
    let mut best: Option<(usize, u32)> = None;
    scan.for_each_connected(&mut |set, edges| {
        if edges == 0 {
            return;
        }
        let replace = match best {
            None => true,
            Some((be, bset)) => density_cmp(
                edges,
                set.count_ones() as usize,
                be,
                bset.count_ones() as usize,
            )
            .then(bset.count_ones().cmp(&set.count_ones()))
            .then_with(|| mask_to_vec(bset).cmp(&mask_to_vec(set)))
            .is_gt(),
        };
        if replace {
            best = Some((edges, set));
        }
    });
    let (edges, set) = best.expect("at least one edge exists");
    let vertices = mask_to_vec(set);
    Ok((
        Rational::new(edges as i64, vertices.len() as i64),
        vertices,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_strictly_balanced() {
        let g = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let v = is_strictly_balanced(&g).unwrap();
        assert!(v.strictly_balanced);
        assert!(v.witness.is_none());
    }

    #[test]
    fn two_disjoint_edges_fail_with_edge_witness() {
        let g = Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let v = is_strictly_balanced(&g).unwrap();
        assert!(!v.strictly_balanced);
        assert_eq!(v.witness.unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn circular_pattern_is_strictly_balanced() {
        let g = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 3, 4]])
            .unwrap();
        let v = is_strictly_balanced(&g).unwrap();
        assert!(v.strictly_balanced, "witness {:?}", v.witness);
        // Independent oracle: check all 30 proper nonempty subsets directly.
        for mask in 1u32..31 {
            let subset = mask_to_vec(mask);
            let (h, _) = g.induced(&subset).unwrap();
            let lhs = h.edge_count() as i64 * 5;
            let rhs = 3 * subset.len() as i64;
            assert!(lhs < rhs, "subset {subset:?} too dense");
        }
    }

    #[test]
    fn verdicts_match_exhaustive_definition() {
        // Cross-check against a direct scan of all proper subsets for a mix
        // of small graphs.
        let graphs = vec![
            Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap(),
            Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap(),
            Hypergraph::new(2, 4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
                .unwrap(),
            Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap(),
            Hypergraph::edgeless(3, 3),
            Hypergraph::new(3, 7, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]])
                .unwrap(),
        ];
        for g in graphs {
            let verdict = is_strictly_balanced(&g).unwrap();
            let n = g.vertex_count();
            let rho = g.density().unwrap();
            let mut violated = false;
            for mask in 1u32..((1 << n) - 1) {
                let subset = mask_to_vec(mask);
                let (h, _) = g.induced(&subset).unwrap();
                if h.density().unwrap() >= rho {
                    violated = true;
                    break;
                }
            }
            assert_eq!(verdict.strictly_balanced, !violated, "graph {g:?}");
            if let Some(w) = verdict.witness {
                let (h, _) = g.induced(&w).unwrap();
                assert!(w.len() < n);
                assert!(h.density().unwrap() >= rho);
            }
        }
    }

    #[test]
    fn max_density_prefers_small_witness() {
        let g = Hypergraph::new(3, 4, vec![vec![0, 1, 2]]).unwrap();
        let (d, w) = max_density(&g).unwrap();
        assert_eq!(d, Rational::new(1, 3));
        assert_eq!(w, vec![0, 1, 2]);
    }

    #[test]
    fn max_density_of_strictly_balanced_is_whole_graph() {
        let g = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 3, 4]])
            .unwrap();
        let (d, w) = max_density(&g).unwrap();
        assert_eq!(d, Rational::new(3, 5));
        assert_eq!(w, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn max_density_two_overlapping_edges() {
        let g = Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let (d, w) = max_density(&g).unwrap();
        assert_eq!(d, Rational::new(1, 2));
        assert_eq!(w, vec![0, 1, 2, 3]);
        // Oracle: all 15 nonempty subsets.
        for mask in 1u32..16 {
            let subset = mask_to_vec(mask);
            let (h, _) = g.induced(&subset).unwrap();
            if h.edge_count() > 0 {
                assert!(h.density().unwrap() <= d);
            }
        }
    }

    #[test]
    fn max_density_requires_edges() {
        assert_eq!(
            max_density(&Hypergraph::edgeless(3, 3)).unwrap_err(),
            Error::NoEdges
        );
    }

    #[test]
    fn size_bound_enforced() {
        let g = Hypergraph::edgeless(3, 30);
        assert!(matches!(
            is_strictly_balanced(&g),
            Err(Error::SearchBoundExceeded { .. })
        ));
    }

    #[test]
    fn single_vertex_vacuously_balanced() {
        let g = Hypergraph::edgeless(3, 1);
        assert!(is_strictly_balanced(&g).unwrap().strictly_balanced);
    }
}
