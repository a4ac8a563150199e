//! s-uniform hypergraphs over dense integer vertex ids.
//!
//! Vertices are the ids `0..n`. Every edge is a set of exactly `s` distinct
//! vertices, stored as a strictly ascending vector; the edge list itself is
//! kept sorted and duplicate free. Isolated vertices are legal and count
//! toward the vertex total, which matters for density denominators.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Exact rational used for densities and density comparisons.
pub type Rational = num_rational::Ratio<i64>;

/// Formats a rational as `num/den`, keeping the slash even for integers.
pub fn format_rational(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    arity: usize,
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hypergraph(s={}, n={}, edges={:?})",
            self.arity, self.vertex_count, self.edges
        )
    }
}

impl Hypergraph {
    /// Builds a validated hypergraph. Each raw edge may list its vertices in
    /// any order; edges are normalized to ascending form and the edge list is
    /// sorted. Rejects wrong-size edges, repeated vertices, out-of-range ids
    /// and duplicate edges, each with its own diagnostic.
    pub fn new<I>(arity: usize, vertex_count: usize, raw_edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        if arity < 2 {
            return Err(Error::BadArity(arity));
        }
        let mut edges: Vec<Vec<usize>> = Vec::new();
        for (index, mut edge) in raw_edges.into_iter().enumerate() {
            if edge.len() != arity {
                return Err(Error::EdgeSize {
                    index,
                    expected: arity,
                    found: edge.len(),
                });
            }
            edge.sort_unstable();
            for w in edge.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::EdgeRepeatedVertex {
                        index,
                        vertex: w[0],
                    });
                }
            }
            if let Some(&max) = edge.last() {
                if max >= vertex_count {
                    return Err(Error::EdgeVertexRange {
                        index,
                        vertex: max,
                        vertex_count,
                    });
                }
            }
            edges.push(edge);
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by(|&a, &b| edges[a].cmp(&edges[b]));
        for w in order.windows(2) {
            if edges[w[0]] == edges[w[1]] {
                return Err(Error::DuplicateEdge {
                    index: w[0].max(w[1]),
                });
            }
        }
        edges.sort_unstable();
        Ok(Hypergraph {
            arity,
            vertex_count,
            edges,
        })
    }

    /// The hypergraph on `n` vertices with no edges.
    pub fn edgeless(arity: usize, vertex_count: usize) -> Self {
        Hypergraph {
            arity: arity.max(2),
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count
    }

    /// Membership test; `edge` must be sorted ascending.
    pub fn has_edge(&self, edge: &[usize]) -> bool {
        self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).is_ok()
    }

    /// Exact density e(G)/v(G).
    pub fn density(&self) -> Result<Rational> {
        if self.vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        Ok(Rational::new(
            self.edges.len() as i64,
            self.vertex_count as i64,
        ))
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for edge in &self.edges {
            for &v in edge {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Induced sub-hypergraph on `set`. Vertices are relabeled to
    /// `0..set.len()` preserving ascending id order; the returned map sends
    /// each new id to its original id. Edges are exactly those lying entirely
    /// inside `set`.
    pub fn induced(&self, set: &[usize]) -> Result<(Hypergraph, Vec<usize>)> {
        let chosen: BTreeSet<usize> = set.iter().copied().collect();
        if chosen.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        if let Some(&max) = chosen.iter().next_back() {
            if max >= self.vertex_count {
                return Err(Error::VertexOutOfRange(max));
            }
        }
        let map: Vec<usize> = chosen.iter().copied().collect();
        let mut back = vec![usize::MAX; self.vertex_count];
        for (new, &old) in map.iter().enumerate() {
            back[old] = new;
        }
        let mut edges = Vec::new();
        for edge in &self.edges {
            if edge.iter().all(|&v| chosen.contains(&v)) {
                edges.push(edge.iter().map(|&v| back[v]).collect());
            }
        }
        let g = Hypergraph {
            arity: self.arity,
            vertex_count: map.len(),
            edges,
        };
        Ok((g, map))
    }

    /// Partition of the vertex ids into maximal connected parts. Two vertices
    /// are connected when some chain of edges joins them, consecutive edges
    /// sharing at least one vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for edge in &self.edges {
            let root = find(&mut parent, edge[0]);
            for &v in &edge[1..] {
                let r = find(&mut parent, v);
                parent[r] = root;
            }
        }
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for v in 0..self.vertex_count {
            let r = find(&mut parent, v);
            buckets[r].push(v);
        }
        buckets.into_iter().filter(|b| !b.is_empty()).collect()
    }

    /// Searches the vertex-edge incidence structure for a cycle: an
    /// alternating sequence of vertices and edges closing on itself, with
    /// consecutive vertices distinct, consecutive edges distinct, and each
    /// consecutive vertex pair contained in the edge between them.
    pub fn find_cycle(&self) -> Option<CycleWitness> {
        // Bipartite incidence graph: nodes 0..n are vertices, n..n+m edges.
        let n = self.vertex_count;
        let m = self.edges.len();
        let inc = self.incidence();
        let neighbors = |node: usize| -> Vec<usize> {
            if node < n {
                inc[node].iter().map(|&e| n + e).collect()
            } else {
                self.edges[node - n].clone()
            }
        };
        let mut state = vec![0u8; n + m]; // 0 unseen, 1 on stack, 2 done
        let mut parent = vec![usize::MAX; n + m];
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, usize::MAX)];
            while let Some(&(node, from)) = stack.last() {
                if state[node] == 0 {
                    state[node] = 1;
                    parent[node] = from;
                    for next in neighbors(node) {
                        if next == from {
                            continue;
                        }
                        if state[next] == 1 {
                            // Back edge: walk parents from `node` to `next`.
                            let mut path = vec![node];
                            let mut cur = node;
                            while cur != next {
                                cur = parent[cur];
                                path.push(cur);
                            }
                            return Some(self.witness_from_path(&path, n));
                        }
                        if state[next] == 0 {
                            stack.push((next, node));
                        }
                    }
                } else {
                    state[node] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    fn witness_from_path(&self, path: &[usize], n: usize) -> CycleWitness {
        // `path` alternates vertex and edge nodes around the cycle; rotate so
        // it starts with a vertex.
        let mut nodes = path.to_vec();
        if nodes[0] >= n {
            nodes.rotate_left(1);
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (i, &node) in nodes.iter().enumerate() {
            if i % 2 == 0 {
                vertices.push(node);
            } else {
                edges.push(node - n);
            }
        }
        CycleWitness { vertices, edges }
    }

    /// Connected and without cycles.
    pub fn is_tree(&self) -> bool {
        self.components().len() == 1 && self.find_cycle().is_none()
    }

    /// Exact number of vertex permutations mapping the edge set onto itself.
    /// Isolated vertices are unconstrained and contribute a factorial factor;
    /// the rest is a backtracking search with degree pruning.
    pub fn count_automorphisms(&self) -> u128 {
        let deg = self.degrees();
        let active: Vec<usize> = (0..self.vertex_count).filter(|&v| deg[v] > 0).collect();
        let isolated = self.vertex_count - active.len();
        let mut result = factorial(isolated);
        if active.is_empty() {
            return result;
        }
        let (core, _) = self
            .induced(&active)
            .expect("non-empty active vertex set");
        result *= core.count_labeled_automorphisms();
        result
    }

    fn count_labeled_automorphisms(&self) -> u128 {
        let n = self.vertex_count;
        let deg = self.degrees();
        let inc = self.incidence();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut count = 0u128;
        self.automorphism_rec(0, &deg, &inc, &mut image, &mut used, &mut count);
        count
    }

    fn automorphism_rec(
        &self,
        v: usize,
        deg: &[usize],
        inc: &[Vec<usize>],
        image: &mut [usize],
        used: &mut [bool],
        count: &mut u128,
    ) {
        let n = self.vertex_count;
        if v == n {
            *count += 1;
            return;
        }
        'cand: for w in 0..n {
            if used[w] || deg[w] != deg[v] {
                continue;
            }
            image[v] = w;
            // Every edge through v whose vertices are all mapped must land on
            // an edge.
            for &ei in &inc[v] {
                let edge = &self.edges[ei];
                if edge.iter().all(|&u| image[u] != usize::MAX) {
                    let mut img: Vec<usize> = edge.iter().map(|&u| image[u]).collect();
                    img.sort_unstable();
                    if !self.has_edge(&img) {
                        image[v] = usize::MAX;
                        continue 'cand;
                    }
                }
            }
            used[w] = true;
            self.automorphism_rec(v + 1, deg, inc, image, used, count);
            used[w] = false;
            image[v] = usize::MAX;
        }
    }

    /// Bijection from this hypergraph onto `other` respecting edges both ways
    /// and extending `pinned` (pairs of (here, there) vertices), or `None`.
    /// A contradictory pinning simply yields `None`.
    pub fn find_isomorphism(
        &self,
        other: &Hypergraph,
        pinned: &[(usize, usize)],
    ) -> Option<Vec<usize>> {
        if self.arity != other.arity
            || self.vertex_count != other.vertex_count
            || self.edges.len() != other.edges.len()
        {
            return None;
        }
        let n = self.vertex_count;
        let deg1 = self.degrees();
        let deg2 = other.degrees();
        {
            let mut a = deg1.clone();
            let mut b = deg2.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return None;
            }
        }
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for &(u, w) in pinned {
            if u >= n || w >= n {
                return None;
            }
            if image[u] != usize::MAX {
                if image[u] != w {
                    return None;
                }
                continue;
            }
            if used[w] {
                return None;
            }
            image[u] = w;
            used[w] = true;
        }
        let inc = self.incidence();
        // Check edges already fully pinned before searching.
        for edge in &self.edges {
            if edge.iter().all(|&u| image[u] != usize::MAX) {
                let mut img: Vec<usize> = edge.iter().map(|&u| image[u]).collect();
                img.sort_unstable();
                if !other.has_edge(&img) {
                    return None;
                }
            }
        }
        if self.iso_rec(other, &deg1, &deg2, &inc, &mut image, &mut used, 0) {
            Some(image)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_rec(
        &self,
        other: &Hypergraph,
        deg1: &[usize],
        deg2: &[usize],
        inc: &[Vec<usize>],
        image: &mut [usize],
        used: &mut [bool],
        mut v: usize,
    ) -> bool {
        let n = self.vertex_count;
        while v < n && image[v] != usize::MAX {
            v += 1;
        }
        if v == n {
            // Injective map preserving edges; equal edge counts make it
            // reflect edges as well.
            return true;
        }
        'cand: for w in 0..n {
            if used[w] || deg2[w] != deg1[v] {
                continue;
            }
            image[v] = w;
            for &ei in &inc[v] {
                let edge = &self.edges[ei];
                if edge.iter().all(|&u| image[u] != usize::MAX) {
                    let mut img: Vec<usize> = edge.iter().map(|&u| image[u]).collect();
                    img.sort_unstable();
                    if !other.has_edge(&img) {
                        image[v] = usize::MAX;
                        continue 'cand;
                    }
                }
            }
            used[w] = true;
            if self.iso_rec(other, deg1, deg2, inc, image, used, v + 1) {
                return true;
            }
            used[w] = false;
            image[v] = usize::MAX;
        }
        false
    }

    /// Edges as vertex bitmasks; only valid for `vertex_count <= 32`.
    pub(crate) fn edge_masks(&self) -> Vec<u32> {
        debug_assert!(self.vertex_count <= 32);
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u32, |m, &v| m | (1 << v)))
            .collect()
    }

    /// Canonical text form: header `s n m`, then one ascending edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.arity, self.vertex_count, self.edges.len());
        for edge in &self.edges {
            let words: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text form. Edge lines may appear in any order; the result
    /// is normalized, so canonical files round-trip byte for byte.
    pub fn parse_text(input: &str) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: 1,
                message: format!("header must be `s n m`, got {:?}", header),
            });
        }
        let parse_num = |s: &str, line: usize| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid integer {:?}", s),
            })
        };
        let arity = parse_num(fields[0], 1)?;
        let vertex_count = parse_num(fields[1], 1)?;
        let edge_count = parse_num(fields[2], 1)?;
        let mut raw = Vec::with_capacity(edge_count);
        for i in 0..edge_count {
            let line_no = i + 2;
            let line = lines.next().ok_or(Error::Parse {
                line: line_no,
                message: "missing edge line".into(),
            })?;
            let mut edge = Vec::with_capacity(arity);
            for field in line.split_whitespace() {
                edge.push(parse_num(field, line_no)?);
            }
            raw.push((line_no, edge));
        }
        if let Some(extra) = lines.next() {
            if !extra.trim().is_empty() {
                return Err(Error::Parse {
                    line: edge_count + 2,
                    message: format!("unexpected trailing content {:?}", extra),
                });
            }
        }
        let edges: Vec<Vec<usize>> = raw.iter().map(|(_, e)| e.clone()).collect();
        Hypergraph::new(arity, vertex_count, edges).map_err(|e| match e {
            Error::EdgeSize { index, .. }
            | Error::EdgeRepeatedVertex { index, .. }
            | Error::EdgeVertexRange { index, .. }
            | Error::DuplicateEdge { index, .. } => Error::Parse {
                line: raw[index].0,
                message: e.to_string(),
            },
            other => other,
        })
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product::<u128>().max(1)
}

/// An alternating vertex/edge sequence witnessing a cycle. Index `i` pairs
/// vertex `vertices[i]` with edge `edges[i]`; the sequence wraps around.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Re-checks the three defining conditions against `g`.
    pub fn validate(&self, g: &Hypergraph) -> bool {
        let m = self.edges.len();
        if m < 2 || self.vertices.len() != m {
            return false;
        }
        for i in 0..m {
            let v = self.vertices[i];
            let v_next = self.vertices[(i + 1) % m];
            let e = self.edges[i];
            let e_next = self.edges[(i + 1) % m];
            if v == v_next || e == e_next || e >= g.edge_count() {
                return false;
            }
            let edge = &g.edges()[e];
            if !(edge.contains(&v) && edge.contains(&v_next)) {
                return false;
            }
        }
        true
    }
}
