//! Non-isomorphic tree enumeration and canonical forms.
//!
//! Rooted trees come from canonical level sequences (each successor is found
//! by copying the subtree ending at the last non-root-child vertex); free trees
//! are the rooted ones deduplicated by their centre-rooted canonical form.

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;

use crate::tree::{Tree, VertexId};

/// Parenthesis encoding of `t` that is equal for two trees iff they are
/// isomorphic.
pub fn canonical_form(t: &Tree) -> Vec<u8> {
    centers(t)
        .into_iter()
        .map(|c| rooted_code(t, c))
        .min()
        .expect("nonempty tree has a centre")
}

pub fn is_isomorphic(a: &Tree, b: &Tree) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

/// One or two centres, by repeated leaf peeling.
pub fn centers(t: &Tree) -> Vec<VertexId> {
    let n = t.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<VertexId> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &u in t.neighbors(leaf) {
                let u = u as usize;
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(t: &Tree, root: VertexId) -> Vec<u8> {
    let n = t.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([root]);
    parent[root] = root;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in t.neighbors(u) {
            let v = v as usize;
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    let mut out = Vec::new();
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut codes[v]);
        kids.sort_unstable();
        let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        for k in kids {
            code.extend_from_slice(&k);
        }
        code.push(b')');
        if v == root {
            out = code;
        } else {
            codes[parent[v]].push(code);
        }
    }
    out
}

/// All rooted trees on `n` vertices as canonical level sequences (root at
/// level 0), starting from the path.
pub fn rooted_level_sequences(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let mut seq: Vec<usize> = (0..n).collect();
    let mut out = vec![seq.clone()];
    while let Some(p) = seq.iter().rposition(|&l| l > 1) {
        let q = seq[..p]
            .iter()
            .rposition(|&l| l == seq[p] - 1)
            .expect("a vertex above level 1 has a parent");
        let shift = p - q;
        for i in p..n {
            seq[i] = seq[i - shift];
        }
        out.push(seq.clone());
    }
    out
}

/// The tree described by a level sequence: each vertex hangs off the most
/// recent vertex one level up.
pub fn tree_from_levels(levels: &[usize]) -> Tree {
    let mut last_at = Vec::<usize>::new();
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    for (v, &l) in levels.iter().enumerate() {
        if l > 0 {
            edges.push((last_at[l - 1], v));
        }
        last_at.truncate(l);
        last_at.push(v);
    }
    Tree::from_edges(levels.len(), &edges).expect("level sequence is a tree")
}

/// Every free tree on exactly `n ≥ 1` vertices, one per isomorphism class,
/// in canonical-form order.
pub fn free_trees(n: usize) -> Vec<Tree> {
    let mut seen = BTreeMap::new();
    for levels in rooted_level_sequences(n) {
        let t = tree_from_levels(&levels);
        seen.entry(canonical_form(&t)).or_insert(t);
    }
    seen.into_values().collect()
}

/// Free trees on `1..=max_n` vertices, smaller orders first.
pub fn free_trees_up_to(max_n: usize) -> Vec<Tree> {
    (1..=max_n).flat_map(free_trees).collect()
}

/// Uniform labelled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    match n {
        0 | 1 => return Tree::single_vertex(),
        2 => return Tree::single_edge(),
        _ => {}
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = leaves.pop_first().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let u = leaves.pop_first().unwrap();
    let v = leaves.pop_first().unwrap();
    edges.push((u, v));
    Tree::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}
