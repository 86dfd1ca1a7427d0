//! Immutable trees, BFS distances and the brute-force Wiener oracle.
//!
//! Adjacency is stored in compressed rows (`offsets` / `adj`) with every
//! neighbour list sorted, so two trees built from the same edge set compare
//! equal and serialise to identical bytes.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{ExactInt, ExactRatio};

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    offsets: Vec<usize>,
    adj: Vec<u32>,
    generation: Vec<u32>,
}

/// Hop counts from one source vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: VertexId,
    pub dist: Vec<u32>,
}

impl DistanceRow {
    pub fn max(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dist.iter().map(|&d| d as u64).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub average: ExactRatio,
}

impl Tree {
    /// Builds and validates a tree on `n` vertices. All generation tags are 0.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Tree> {
        Self::from_edges_with_generations(n, edges, vec![0; n])
    }

    pub fn from_edges_with_generations(
        n: usize,
        edges: &[(VertexId, VertexId)],
        generation: Vec<u32>,
    ) -> Result<Tree> {
        if n == 0 {
            return Err(Error::NotATree("a tree needs at least one vertex".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::BadParam(format!("{n} vertices exceed the u32 id space")));
        }
        if generation.len() != n {
            return Err(Error::BadParam(format!(
                "{} generation tags for {n} vertices",
                generation.len()
            )));
        }
        if generation.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::BadParam("generation tags must be nondecreasing".into()));
        }
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::BadVertexId { id, n });
                }
            }
            if u == v {
                return Err(Error::NotATree(format!("self-loop at vertex {u}")));
            }
        }
        if edges.len() != n - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {n} vertices, expected {}",
                edges.len(),
                n - 1
            )));
        }

        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in edges {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut adj = vec![0u32; 2 * edges.len()];
        for &(u, v) in edges {
            adj[fill[u]] = v as u32;
            fill[u] += 1;
            adj[fill[v]] = u as u32;
            fill[v] += 1;
        }
        for v in 0..n {
            let row = &mut adj[offsets[v]..offsets[v + 1]];
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NotATree(format!("parallel edges at vertex {v}")));
            }
        }

        let tree = Tree {
            offsets,
            adj,
            generation,
        };
        // n - 1 edges plus connectivity rules out cycles.
        let reached = tree.bfs_from(0).iter().filter(|&&d| d != u32::MAX).count();
        if reached != n {
            return Err(Error::NotATree(format!(
                "disconnected: {reached} of {n} vertices reachable"
            )));
        }
        Ok(tree)
    }

    pub fn single_vertex() -> Tree {
        Tree::from_edges(1, &[]).expect("single vertex")
    }

    pub fn single_edge() -> Tree {
        Tree::from_edges(2, &[(0, 1)]).expect("single edge")
    }

    /// Path on `n ≥ 1` vertices.
    pub fn path(n: usize) -> Result<Tree> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::from_edges(n, &edges)
    }

    /// Star `K_{1,k}` with centre 0.
    pub fn star(leaves: usize) -> Result<Tree> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Tree::from_edges(leaves + 1, &edges)
    }

    pub fn len(&self) -> usize {
        self.generation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generation.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[u32] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn generation(&self, v: VertexId) -> u32 {
        self.generation[v]
    }

    pub fn generations(&self) -> &[u32] {
        &self.generation
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.degree(v) == 1
    }

    pub fn leaves(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.len() {
            for &v in self.neighbors(u) {
                if (v as usize) > u {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    /// Same shape with vertex `v` renamed to `perm[v]`; generation tags reset.
    pub fn relabeled(&self, perm: &[VertexId]) -> Result<Tree> {
        if perm.len() != self.len() {
            return Err(Error::BadParam(
                "permutation length differs from tree order".into(),
            ));
        }
        let edges: Vec<_> = self.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(self.len(), &edges)
    }

    /// Induced subgraph on the vertices `keep` accepts, ids compacted in order.
    /// Fails if the remainder is not a tree.
    pub fn retain(&self, keep: impl Fn(VertexId) -> bool) -> Result<Tree> {
        let mut map = vec![usize::MAX; self.len()];
        let mut gens = Vec::new();
        for (v, slot) in map.iter_mut().enumerate() {
            if keep(v) {
                *slot = gens.len();
                gens.push(self.generation[v]);
            }
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| map[u] != usize::MAX && map[v] != usize::MAX)
            .map(|(u, v)| (map[u], map[v]))
            .collect();
        Tree::from_edges_with_generations(gens.len(), &edges, gens)
    }

    fn bfs_from(&self, source: VertexId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        let mut queue = VecDeque::with_capacity(self.len());
        bfs_into(self, source, &mut dist, &mut queue);
        dist
    }

    /// Unique path lengths from `source`.
    pub fn bfs_distances(&self, source: VertexId) -> Result<DistanceRow> {
        if source >= self.len() {
            return Err(Error::BadVertexId {
                id: source,
                n: self.len(),
            });
        }
        Ok(DistanceRow {
            source,
            dist: self.bfs_from(source),
        })
    }

    /// `n m` header followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::with_capacity(16 * self.len());
        writeln!(s, "{} {}", self.len(), self.edge_count()).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    /// Parses the edge-list format. Blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Tree> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
        let (n, m) = parse_pair(header)?;
        let edges = lines.map(parse_pair).collect::<Result<Vec<_>>>()?;
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header announces {m} edges, found {}",
                edges.len()
            )));
        }
        Tree::from_edges(n, &edges)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph tree {\n");
        for v in 0..self.len() {
            writeln!(s, "  {v} [gen={}];", self.generation[v]).unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(s, "  {u} -- {v};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(|tok| {
        tok.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad integer {tok:?} in line {line:?}")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a?, b?)),
        _ => Err(Error::Parse(format!("expected two integers, got {line:?}"))),
    }
}

fn bfs_into(t: &Tree, source: VertexId, dist: &mut [u32], queue: &mut VecDeque<u32>) {
    dist.fill(u32::MAX);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source as u32);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in t.neighbors(u as usize) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
}

/// Wiener index: distance sum over unordered pairs, by one BFS per vertex.
pub fn wiener_oracle(t: &Tree) -> ExactInt {
    let n = t.len();
    let ordered: u128 = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u32; n], VecDeque::with_capacity(n)),
            |(dist, queue), s| {
                bfs_into(t, s, dist, queue);
                dist.iter().map(|&d| d as u128).sum::<u128>()
            },
        )
        .sum();
    BigInt::from(ordered / 2)
}

/// Wiener index via edge cuts: each edge separates `k` and `n - k` vertices
/// and lies on exactly `k (n - k)` geodesics. Linear time.
pub fn wiener_edge_cut(t: &Tree) -> ExactInt {
    let n = t.len();
    let mut parent = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[0] = 0;
    order.push(0u32);
    let mut head = 0;
    while head < order.len() {
        let u = order[head] as usize;
        head += 1;
        for &v in t.neighbors(u) {
            if parent[v as usize] == u32::MAX {
                parent[v as usize] = u as u32;
                order.push(v);
            }
        }
    }
    let mut size = vec![1u64; n];
    let mut total: u128 = 0;
    for &v in order.iter().skip(1).rev() {
        let v = v as usize;
        let k = size[v];
        total += k as u128 * (n as u64 - k) as u128;
        size[parent[v] as usize] += k;
    }
    BigInt::from(total)
}

/// Largest geodesic distance, by double BFS.
pub fn diameter(t: &Tree) -> usize {
    let first = t.bfs_from(0);
    let far = argmax(&first);
    let second = t.bfs_from(far);
    second[argmax(&second)] as usize
}

fn argmax(d: &[u32]) -> usize {
    let mut best = 0;
    for (i, &x) in d.iter().enumerate() {
        if x > d[best] {
            best = i;
        }
    }
    best
}

pub fn degree_stats(t: &Tree) -> DegreeStats {
    let degrees: Vec<usize> = (0..t.len()).map(|v| t.degree(v)).collect();
    let total: usize = degrees.iter().sum();
    DegreeStats {
        degrees,
        average: BigRational::new(BigInt::from(total), BigInt::from(t.len())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int, ratio};

    #[test]
    fn smallest_trees() {
        let e = Tree::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(e.edge_count(), 1);
        let p3 = Tree::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.neighbors(1), &[0, 2]);
    }

    #[test]
    fn rejects_non_trees() {
        assert!(matches!(
            Tree::from_edges(4, &[(0, 1), (0, 2), (1, 2)]),
            Err(Error::NotATree(_))
        ));
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1), (0, 1)]),
            Err(Error::NotATree(_))
        ));
        assert!(matches!(Tree::from_edges(3, &[(0, 1)]), Err(Error::NotATree(_))));
        assert!(matches!(Tree::from_edges(2, &[(0, 0)]), Err(Error::NotATree(_))));
        assert!(matches!(Tree::from_edges(0, &[]), Err(Error::NotATree(_))));
        assert_eq!(
            Tree::from_edges(2, &[(0, 5)]),
            Err(Error::BadVertexId { id: 5, n: 2 })
        );
        assert!(Tree::from_edges_with_generations(2, &[(0, 1)], vec![1, 0]).is_err());
    }

    #[test]
    fn bfs_rows() {
        let p3 = Tree::path(3).unwrap();
        assert_eq!(p3.bfs_distances(0).unwrap().dist, vec![0, 1, 2]);
        let k13 = Tree::star(3).unwrap();
        assert_eq!(k13.bfs_distances(0).unwrap().dist, vec![0, 1, 1, 1]);
        let from_leaf = k13.bfs_distances(2).unwrap();
        assert_eq!(from_leaf.dist, vec![1, 2, 0, 2]);
        assert_eq!(k13.bfs_distances(4), Err(Error::BadVertexId { id: 4, n: 4 }));
    }

    #[test]
    fn wiener_small_values() {
        assert_eq!(wiener_oracle(&Tree::single_edge()), int(1));
        assert_eq!(wiener_oracle(&Tree::path(4).unwrap()), int(10));
        assert_eq!(wiener_oracle(&Tree::star(3).unwrap()), int(9));
        assert_eq!(wiener_oracle(&Tree::single_vertex()), int(0));
        assert_eq!(wiener_edge_cut(&Tree::single_vertex()), int(0));
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&Tree::single_vertex()), 0);
        assert_eq!(diameter(&Tree::path(4).unwrap()), 3);
        assert_eq!(diameter(&Tree::star(5).unwrap()), 2);
    }

    #[test]
    fn degree_averages() {
        let s = degree_stats(&Tree::single_edge());
        assert_eq!(s.degrees, vec![1, 1]);
        assert_eq!(s.average, ratio(1));
        let s = degree_stats(&Tree::star(3).unwrap());
        assert_eq!(s.degrees, vec![3, 1, 1, 1]);
        assert_eq!(s.average, frac(3, 2));
    }

    #[test]
    fn edge_list_and_dot_are_stable() {
        let t = Tree::from_edges(4, &[(2, 3), (0, 1), (1, 2)]).unwrap();
        let text = t.to_edge_list();
        assert_eq!(text, "4 3\n0 1\n1 2\n2 3\n");
        assert_eq!(Tree::parse_edge_list(&format!("# header\n{text}")).unwrap(), t);
        assert!(t.to_dot().contains("  1 -- 2;"));
        assert!(Tree::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(Tree::parse_edge_list("2 1\n0 x\n").is_err());
    }

    #[test]
    fn retain_drops_leaves() {
        let k13 = Tree::star(3).unwrap();
        let p2 = k13.retain(|v| v <= 1).unwrap();
        assert_eq!(p2.edges(), vec![(0, 1)]);
        assert!(k13.retain(|v| v != 0).is_err());
    }
}
