//! Rooted hypergraphs and their classification relative to an exponent.
//!
//! A rooted hypergraph is a hypergraph with a designated proper subset of
//! root vertices. Its type (v, e) counts the non-root vertices and the edges
//! touching at least one non-root. Relative to an exponent alpha the pair is
//! dense when v - e*alpha < 0 and sparse when it is positive; the guard on
//! `Exponent` rules out equality inside the working range, so the dichotomy
//! is total there.
//!
//! Boundary conventions for the derived predicates:
//!   rigid: (S, H) is dense for every S with R <= S < V (so the pair itself
//!          must be dense, and S = V is excluded);
//!   safe:  (R, H|S) is sparse for every S with R < S <= V (so the pair
//!          itself must be sparse);
//!   minimally safe: safe, and no S with R < S < V makes (S, H) safe.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Edge-probability exponent kept as a guarded rational. The guard
/// `max(num, den) > bound` forbids v*den = e*num for all 1 <= v, e <= bound:
/// equality would force num | v and den | e, hence max(num, den) <= bound.
/// Every classification query checks its (v, e) against the bound first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exponent {
    num: u64,
    den: u64,
    bound: u64,
}

/// Default genericity bound used by the command-line tools.
pub const DEFAULT_GENERICITY_BOUND: u64 = 64;

impl Exponent {
    pub fn new(num: u64, den: u64, bound: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidExponent(format!(
                "exponent must be positive, got {num}/{den}"
            )));
        }
        if bound == 0 {
            return Err(Error::InvalidExponent("bound must be at least 1".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        if num.max(den) <= bound {
            return Err(Error::ExponentGuard { num, den, bound });
        }
        Ok(Exponent { num, den, bound })
    }

    /// Uses the largest bound the guard allows, capped at the default.
    pub fn with_default_bound(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidExponent(format!(
                "exponent must be positive, got {num}/{den}"
            )));
        }
        let g = num.gcd(&den);
        let bound = DEFAULT_GENERICITY_BOUND.min((num / g).max(den / g).saturating_sub(1));
        Exponent::new(num, den, bound.max(1))
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Dense/sparse decision for a type (v, e) by exact integer comparison.
    pub fn polarity(&self, vertices: usize, edges: usize) -> Result<Polarity> {
        if vertices as u64 > self.bound || edges as u64 > self.bound {
            return Err(Error::GenericityExceeded {
                vertices,
                edges,
                bound: self.bound,
            });
        }
        let lhs = vertices as u128 * self.den as u128;
        let rhs = edges as u128 * self.num as u128;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => Ok(Polarity::Dense),
            std::cmp::Ordering::Greater => Ok(Polarity::Sparse),
            std::cmp::Ordering::Equal => {
                unreachable!("guard excludes v*den = e*num inside the bound")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Dense,
    Sparse,
}

/// A hypergraph with a designated proper subset of root vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedHypergraph {
    graph: Hypergraph,
    roots: Vec<usize>,
}

impl RootedHypergraph {
    pub fn new<I>(graph: Hypergraph, roots: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let set: BTreeSet<usize> = roots.into_iter().collect();
        if let Some(&max) = set.iter().next_back() {
            if max >= graph.vertex_count() {
                return Err(Error::VertexOutOfRange(max));
            }
        }
        if set.len() >= graph.vertex_count() {
            return Err(Error::InvalidRoots);
        }
        Ok(RootedHypergraph {
            graph,
            roots: set.into_iter().collect(),
        })
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    /// Root ids in ascending order.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// Non-root ids in ascending order.
    pub fn non_roots(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.roots.iter().copied().collect();
        self.graph
            .vertices()
            .filter(|v| !set.contains(v))
            .collect()
    }

    /// The type (v, e): non-root vertices and edges touching a non-root.
    pub fn extension_type(&self) -> (usize, usize) {
        let set: BTreeSet<usize> = self.roots.iter().copied().collect();
        let v = self.graph.vertex_count() - set.len();
        let e = self
            .graph
            .edges()
            .iter()
            .filter(|edge| edge.iter().any(|x| !set.contains(x)))
            .count();
        (v, e)
    }

    /// Text form: the hypergraph format plus a final `roots:` line.
    pub fn to_text(&self) -> String {
        let mut out = self.graph.to_text();
        out.push_str("roots:");
        for r in &self.roots {
            out.push(' ');
            out.push_str(&r.to_string());
        }
        out.push('\n');
        out
    }

    pub fn parse_text(input: &str) -> Result<Self> {
        let trimmed = input.trim_end_matches('\n');
        let (graph_part, roots_line, line_no) = {
            let lines: Vec<&str> = trimmed.lines().collect();
            let last = lines.last().copied().unwrap_or_default();
            if !last.starts_with("roots:") {
                return Err(Error::Parse {
                    line: lines.len(),
                    message: "missing final `roots:` line".into(),
                });
            }
            let mut head = lines[..lines.len() - 1].join("\n");
            head.push('\n');
            (head, last, lines.len())
        };
        let graph = Hypergraph::parse_text(&graph_part)?;
        let body = roots_line.trim_start_matches("roots:");
        let mut roots = Vec::new();
        for field in body.split_whitespace() {
            roots.push(field.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid root id {field:?}"),
            })?);
        }
        RootedHypergraph::new(graph, roots)
    }
}

/// Classification of a rooted hypergraph relative to an exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Taxonomy {
    pub ext_type: (usize, usize),
    pub polarity: Polarity,
    pub rigid: bool,
    pub safe: bool,
    pub minimally_safe: bool,
}

/// Shared sub/nail-pair arithmetic over one rooted hypergraph.
struct PairContext<'a> {
    graph: &'a Hypergraph,
    roots: Vec<usize>,
    non_roots: Vec<usize>,
}

impl<'a> PairContext<'a> {
    fn new(rh: &'a RootedHypergraph) -> Self {
        PairContext {
            graph: rh.graph(),
            roots: rh.roots().to_vec(),
            non_roots: rh.non_roots(),
        }
    }

    /// Type of the nail pair (S, H): vertices outside S, edges leaving S.
    fn nail_type(&self, s: &BTreeSet<usize>) -> (usize, usize) {
        let v = self.graph.vertex_count() - s.len();
        let e = self
            .graph
            .edges()
            .iter()
            .filter(|edge| edge.iter().any(|x| !s.contains(x)))
            .count();
        (v, e)
    }

    /// Type of the sub pair (B, H|S) for B <= S: vertices of S outside B and
    /// edges inside S touching S minus B.
    fn sub_type(&self, base: &BTreeSet<usize>, s: &BTreeSet<usize>) -> (usize, usize) {
        let v = s.len() - base.len();
        let e = self
            .graph
            .edges()
            .iter()
            .filter(|edge| {
                edge.iter().all(|x| s.contains(x)) && edge.iter().any(|x| !base.contains(x))
            })
            .count();
        (v, e)
    }

    /// Every nail pair (S, H) with base <= S < V is dense.
    fn is_rigid_nailwise(&self, base: &BTreeSet<usize>, alpha: &Exponent) -> Result<bool> {
        let outside: Vec<usize> = self
            .graph
            .vertices()
            .filter(|v| !base.contains(v))
            .collect();
        // S = base plus any proper subset of the remaining vertices.
        for mask in 0..(1u64 << outside.len()) - 1 {
            let mut s = base.clone();
            for (i, &v) in outside.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    s.insert(v);
                }
            }
            let (v, e) = self.nail_type(&s);
            if alpha.polarity(v, e)? != Polarity::Dense {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every sub pair (base, H|S) with base < S <= V is sparse.
    fn is_safe_subwise(&self, base: &BTreeSet<usize>, alpha: &Exponent) -> Result<bool> {
        let outside: Vec<usize> = self
            .graph
            .vertices()
            .filter(|v| !base.contains(v))
            .collect();
        for mask in 1..=(1u64 << outside.len()) - 1 {
            let mut s = base.clone();
            for (i, &v) in outside.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    s.insert(v);
                }
            }
            let (v, e) = self.sub_type(base, &s);
            if alpha.polarity(v, e)? != Polarity::Sparse {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Rigidity of the sub pair (roots, H|S).
    fn is_sub_pair_rigid(&self, s: &BTreeSet<usize>, alpha: &Exponent) -> Result<bool> {
        let base: BTreeSet<usize> = self.roots.iter().copied().collect();
        let free: Vec<usize> = s.iter().copied().filter(|v| !base.contains(v)).collect();
        // T = base plus any proper subset of `free`; (T, H|S) must be dense.
        for mask in 0..(1u64 << free.len()) - 1 {
            let mut t = base.clone();
            for (i, &v) in free.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    t.insert(v);
                }
            }
            let v = s.len() - t.len();
            let e = self
                .graph
                .edges()
                .iter()
                .filter(|edge| {
                    edge.iter().all(|x| s.contains(x)) && edge.iter().any(|x| !t.contains(x))
                })
                .count();
            if alpha.polarity(v, e)? != Polarity::Dense {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subsets of non-roots in size-then-lexicographic order.
    fn supersets_of_roots(&self, proper: bool) -> Vec<BTreeSet<usize>> {
        let base: BTreeSet<usize> = self.roots.iter().copied().collect();
        let mut by_size: Vec<(usize, Vec<usize>, BTreeSet<usize>)> = Vec::new();
        let k = self.non_roots.len();
        let top = if proper {
            (1u64 << k) - 1
        } else {
            1u64 << k
        };
        for mask in 1..top {
            let mut s = base.clone();
            let mut added = Vec::new();
            for (i, &v) in self.non_roots.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    s.insert(v);
                    added.push(v);
                }
            }
            by_size.push((added.len(), added, s));
        }
        // Lexicographic order on the added vertices matches lexicographic
        // order on the full sets, since all candidates share the roots.
        by_size.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        by_size.into_iter().map(|(_, _, s)| s).collect()
    }
}

/// Computes the full taxonomy of a rooted hypergraph relative to `alpha`.
pub fn classify_rooted(rh: &RootedHypergraph, alpha: &Exponent) -> Result<Taxonomy> {
    let ctx = PairContext::new(rh);
    let ext_type = rh.extension_type();
    let polarity = alpha.polarity(ext_type.0, ext_type.1)?;
    let base: BTreeSet<usize> = rh.roots().iter().copied().collect();
    let rigid = ctx.is_rigid_nailwise(&base, alpha)?;
    let safe = ctx.is_safe_subwise(&base, alpha)?;
    let minimally_safe = if safe {
        let mut has_safe_nail = false;
        for s in ctx.supersets_of_roots(true) {
            if ctx.is_safe_subwise(&s, alpha)? {
                has_safe_nail = true;
                break;
            }
        }
        !has_safe_nail
    } else {
        false
    };
    Ok(Taxonomy {
        ext_type,
        polarity,
        rigid,
        safe,
        minimally_safe,
    })
}

/// Constructive witnesses behind the classification: when the pair is not
/// safe, a set S making (R, H|S) rigid; when it is not rigid, a set S making
/// (S, H) safe. Witnesses are minimal by size, then lexicographic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessStructure {
    pub rigid_subextension: Option<Vec<usize>>,
    pub safe_nailextension: Option<Vec<usize>>,
}

pub fn witness_structure(rh: &RootedHypergraph, alpha: &Exponent) -> Result<WitnessStructure> {
    let tax = classify_rooted(rh, alpha)?;
    let ctx = PairContext::new(rh);
    let mut rigid_subextension = None;
    let mut safe_nailextension = None;
    if !tax.safe {
        for s in ctx.supersets_of_roots(false) {
            if ctx.is_sub_pair_rigid(&s, alpha)? {
                rigid_subextension = Some(s.into_iter().collect());
                break;
            }
        }
    }
    if !tax.rigid {
        for s in ctx.supersets_of_roots(false) {
            if ctx.is_safe_subwise(&s, alpha)? {
                safe_nailextension = Some(s.into_iter().collect());
                break;
            }
        }
    }
    Ok(WitnessStructure {
        rigid_subextension,
        safe_nailextension,
    })
}

/// Expected number of ordered extension tuples in the binomial model on n
/// vertices with p = n^(-alpha): (n-r)(n-r-1)...(n-r-v+1) * p^e.
pub fn expected_extensions(rh: &RootedHypergraph, n: usize, alpha: &Exponent) -> Result<f64> {
    let (v, e) = rh.extension_type();
    let r = rh.root_count();
    if n <= v + r {
        return Err(Error::InvalidParameter(format!(
            "need more than {} vertices, got {n}",
            v + r
        )));
    }
    let mut tuples = 1f64;
    for i in 0..v {
        tuples *= (n - r - i) as f64;
    }
    let log_p = -(alpha.as_f64()) * (n as f64).ln();
    Ok(tuples * (e as f64 * log_p).exp())
}
