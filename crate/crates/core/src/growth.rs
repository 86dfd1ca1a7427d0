//! Growth operations on trees and the model families built from them.
//!
//! Edge operations ([`subdivide`], [`star_fractal`]) rewrite every edge of the
//! current tree; vertex operations ([`grow_cayley`], [`grow_exponential`])
//! hang new leaves off existing vertices. In all of them old vertices keep
//! their ids and new vertices are numbered after them in a fixed order, so a
//! model is reproducible byte for byte and its generation tags are
//! nondecreasing.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{pow, ExactInt};
use crate::tree::{Tree, VertexId};

/// Default refusal threshold for [`grow`].
pub const DEFAULT_VERTEX_CAP: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    FirstOrderSubdivision,
    MthSubdivision { m: usize },
    StarFractal1m { m: usize },
    StarFractalWm { w: usize, m: usize },
    TGraph,
    Cayley { n: usize },
    Exponential { m: usize },
}

impl Family {
    /// Per-step edge multiplier for the edge-rewriting families.
    pub fn edge_factor(&self) -> Option<usize> {
        match *self {
            Family::FirstOrderSubdivision => Some(2),
            Family::MthSubdivision { m } => Some(m + 1),
            Family::StarFractal1m { m } => Some(m + 2),
            Family::StarFractalWm { w, m } => Some(w * (m + 1) + 1),
            Family::TGraph => Some(3),
            Family::Cayley { .. } | Family::Exponential { .. } => None,
        }
    }

    /// `(w, m)` of the equivalent star-fractal operation, `w` subdivision
    /// vertices per edge each carrying `m` leaves (`m = 0` is plain subdivision).
    pub fn edge_operation(&self) -> Option<(usize, usize)> {
        match *self {
            Family::FirstOrderSubdivision => Some((1, 0)),
            Family::MthSubdivision { m } => Some((m, 0)),
            Family::StarFractal1m { m } => Some((1, m)),
            Family::StarFractalWm { w, m } => Some((w, m)),
            Family::TGraph => Some((1, 1)),
            Family::Cayley { .. } | Family::Exponential { .. } => None,
        }
    }

    pub fn is_subdivision(&self) -> bool {
        matches!(
            self,
            Family::FirstOrderSubdivision | Family::MthSubdivision { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::FirstOrderSubdivision => "first_order_subdivision",
            Family::MthSubdivision { .. } => "subdivision",
            Family::StarFractal1m { .. } => "star_fractal_1m",
            Family::StarFractalWm { .. } => "star_fractal",
            Family::TGraph => "tgraph",
            Family::Cayley { .. } => "cayley",
            Family::Exponential { .. } => "exponential",
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::BadParam(what.to_string()));
        match *self {
            Family::MthSubdivision { m } | Family::StarFractal1m { m } | Family::Exponential { m }
                if m < 1 =>
            {
                bad("m must be at least 1")
            }
            Family::StarFractalWm { w, m } if w < 1 || m < 1 => bad("w and m must be at least 1"),
            Family::Cayley { n } if n < 3 => bad("Cayley coordination number must be at least 3"),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seed {
    SingleEdge,
    /// `K_{1,k}`; for the Cayley family `Star(n)` is the first generation itself.
    Star(usize),
    Explicit(Tree),
}

impl Seed {
    pub fn to_tree(&self) -> Result<Tree> {
        match self {
            Seed::SingleEdge => Ok(Tree::single_edge()),
            Seed::Star(k) => Tree::star(*k),
            Seed::Explicit(t) => Ok(t.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub family: Family,
    pub seed: Seed,
    pub steps: u32,
}

impl ModelSpec {
    pub fn new(family: Family, seed: Seed, steps: u32) -> ModelSpec {
        ModelSpec { family, seed, steps }
    }

    /// Family on its customary seed: a single edge, or the star `K_{1,n}`
    /// for Cayley trees.
    pub fn standard(family: Family, steps: u32) -> ModelSpec {
        let seed = match family {
            Family::Cayley { n } => Seed::Star(n),
            _ => Seed::SingleEdge,
        };
        ModelSpec::new(family, seed, steps)
    }

    pub fn with_steps(&self, steps: u32) -> ModelSpec {
        ModelSpec {
            steps,
            ..self.clone()
        }
    }

    /// Cayley trees on the symbolic star seed count the star as step 1.
    pub fn first_step(&self) -> u32 {
        match (&self.family, &self.seed) {
            (Family::Cayley { n }, Seed::Star(k)) if n == k => 1,
            _ => 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.family.validate()?;
        if let Seed::Star(k) = self.seed {
            if k < 1 {
                return Err(Error::BadParam("a star seed needs at least one leaf".into()));
            }
        }
        match (&self.family, &self.seed) {
            (Family::TGraph, Seed::SingleEdge) => Ok(()),
            (Family::TGraph, _) => Err(Error::BadParam("the T-graph grows from a single edge".into())),
            (Family::Cayley { n }, Seed::Star(k)) if n == k && self.steps < 1 => Err(Error::BadParam(
                "Cayley trees on the star seed start at t = 1".into(),
            )),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family={}", self.family.name())?;
        match self.family {
            Family::MthSubdivision { m } | Family::StarFractal1m { m } | Family::Exponential { m } => {
                write!(f, " m={m}")?
            }
            Family::StarFractalWm { w, m } => write!(f, " w={w} m={m}")?,
            Family::Cayley { n } => write!(f, " n={n}")?,
            Family::FirstOrderSubdivision | Family::TGraph => {}
        }
        write!(f, " seed=")?;
        match &self.seed {
            Seed::SingleEdge => write!(f, "edge")?,
            Seed::Star(k) => write!(f, "star:{k}")?,
            Seed::Explicit(t) => {
                write!(f, "tree:{}:", t.len())?;
                let edges: Vec<String> = t.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "{}", edges.join(","))?;
            }
        }
        write!(f, " t={}", self.steps)
    }
}

impl FromStr for Seed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Seed> {
        if s == "edge" {
            return Ok(Seed::SingleEdge);
        }
        if let Some(k) = s.strip_prefix("star:") {
            return k
                .parse()
                .map(Seed::Star)
                .map_err(|_| Error::Parse(format!("bad star size {k:?}")));
        }
        if let Some(rest) = s.strip_prefix("tree:") {
            let (n, list) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected tree:<n>:<edges>, got {s:?}")))?;
            let n: usize = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex count {n:?}")))?;
            let edges = list
                .split(',')
                .filter(|e| !e.is_empty())
                .map(|e| {
                    let (u, v) = e
                        .split_once('-')
                        .ok_or_else(|| Error::Parse(format!("bad edge {e:?}")))?;
                    let p = |x: &str| {
                        x.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad edge {e:?}")))
                    };
                    Ok((p(u)?, p(v)?))
                })
                .collect::<Result<Vec<_>>>()?;
            return Tree::from_edges(n, &edges).map(Seed::Explicit);
        }
        Err(Error::Parse(format!("unknown seed {s:?}")))
    }
}

impl FromStr for ModelSpec {
    type Err = Error;

    /// Parses `family=star_fractal w=2 m=3 seed=edge t=4`. Blank lines and
    /// `#` comments are ignored so config files can use the same grammar.
    fn from_str(s: &str) -> Result<ModelSpec> {
        let mut kv = std::collections::BTreeMap::new();
        for line in s.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split_whitespace() {
                let (k, v) = tok
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=value, got {tok:?}")))?;
                kv.insert(k.to_string(), v.to_string());
            }
        }
        let int = |key: &str| -> Result<Option<usize>> {
            kv.get(key)
                .map(|v| {
                    v.parse()
                        .map_err(|_| Error::Parse(format!("bad value for {key}: {v:?}")))
                })
                .transpose()
        };
        let need =
            |key: &str| -> Result<usize> { int(key)?.ok_or_else(|| Error::Parse(format!("missing {key}="))) };
        for key in kv.keys() {
            if !["family", "m", "w", "n", "seed", "t"].contains(&key.as_str()) {
                return Err(Error::Parse(format!("unknown key {key:?}")));
            }
        }
        let family = match kv.get("family").map(String::as_str) {
            Some("first_order_subdivision") => Family::FirstOrderSubdivision,
            Some("subdivision") => Family::MthSubdivision { m: need("m")? },
            Some("star_fractal_1m") => Family::StarFractal1m { m: need("m")? },
            Some("star_fractal") => Family::StarFractalWm {
                w: need("w")?,
                m: need("m")?,
            },
            Some("tgraph") => Family::TGraph,
            Some("cayley") => Family::Cayley { n: need("n")? },
            Some("exponential") => Family::Exponential { m: need("m")? },
            Some(other) => return Err(Error::Parse(format!("unknown family {other:?}"))),
            None => return Err(Error::Parse("missing family=".into())),
        };
        let steps = int("t")?.unwrap_or(0) as u32;
        let spec = match kv.get("seed") {
            Some(seed) => ModelSpec::new(family, seed.parse()?, steps),
            None => ModelSpec::standard(family, steps),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn next_generation(t: &Tree) -> u32 {
    t.generations().last().copied().unwrap_or(0) + 1
}

/// Replaces each edge `uv` by a path through `m` new vertices.
pub fn subdivide(t: &Tree, m: usize) -> Tree {
    star_fractal_unchecked(t, m, 0)
}

/// Subdivides each edge with `w` new vertices and hangs `m` leaves on each.
pub fn star_fractal(t: &Tree, w: usize, m: usize) -> Result<Tree> {
    if w < 1 || m < 1 {
        return Err(Error::BadParam("star-fractal needs w ≥ 1 and m ≥ 1".into()));
    }
    Ok(star_fractal_unchecked(t, w, m))
}

fn star_fractal_unchecked(t: &Tree, w: usize, m: usize) -> Tree {
    let old = t.edges();
    let n = t.len();
    let added = old.len() * w * (m + 1);
    let mut edges = Vec::with_capacity(old.len() * (w * (m + 1) + 1));
    let mut next = n;
    for (u, v) in old {
        let mut prev = u;
        for _ in 0..w {
            let centre = next;
            next += 1;
            edges.push((prev, centre));
            for _ in 0..m {
                edges.push((centre, next));
                next += 1;
            }
            prev = centre;
        }
        edges.push((prev, v));
    }
    let mut gens = t.generations().to_vec();
    gens.resize(n + added, next_generation(t));
    Tree::from_edges_with_generations(n + added, &edges, gens).expect("edge rewriting keeps a tree")
}

fn attach_leaves(t: &Tree, parents: &[VertexId], per_parent: usize) -> Tree {
    let n = t.len();
    let mut edges = t.edges();
    edges.reserve(parents.len() * per_parent);
    let mut next = n;
    for &p in parents {
        for _ in 0..per_parent {
            edges.push((p, next));
            next += 1;
        }
    }
    let mut gens = t.generations().to_vec();
    gens.resize(next, next_generation(t));
    Tree::from_edges_with_generations(next, &edges, gens).expect("attaching leaves keeps a tree")
}

/// Checks that every non-leaf vertex has degree `n` and returns the tree.
fn cayley_seed(seed: &Tree, n: usize) -> Result<()> {
    for v in 0..seed.len() {
        let d = seed.degree(v);
        if d != 1 && d != n {
            return Err(Error::SeedViolation {
                vertex: v,
                degree: d,
                expected: n,
            });
        }
    }
    Ok(())
}

fn cayley_step(t: &Tree, n: usize) -> Tree {
    attach_leaves(t, &t.leaves(), n - 1)
}

/// Cayley tree with coordination number `n`.
///
/// On `Seed::Star(n)` this is `C(t, n)`: `t = 1` is the star itself and each
/// later step gives every leaf `n - 1` children. On any other seed (whose
/// internal vertices must already have degree `n`) `t` counts leaf-growth
/// steps applied to the seed.
pub fn grow_cayley(n: usize, t: u32, seed: &Seed) -> Result<Tree> {
    if n < 3 {
        return Err(Error::BadParam(
            "Cayley coordination number must be at least 3".into(),
        ));
    }
    let (mut tree, steps) = match seed {
        Seed::Star(k) if *k == n => {
            if t < 1 {
                return Err(Error::BadParam(
                    "Cayley trees on the star seed start at t = 1".into(),
                ));
            }
            let edges: Vec<_> = (1..=n).map(|v| (0, v)).collect();
            let mut gens = vec![1; n + 1];
            gens[0] = 0;
            (Tree::from_edges_with_generations(n + 1, &edges, gens)?, t - 1)
        }
        other => {
            let seed = other.to_tree()?;
            cayley_seed(&seed, n)?;
            (seed, t)
        }
    };
    for _ in 0..steps {
        tree = cayley_step(&tree, n);
    }
    Ok(tree)
}

/// Gives every vertex `m` new leaf children, `t` times.
pub fn grow_exponential(seed: &Tree, m: usize, t: u32) -> Result<Tree> {
    if m < 1 {
        return Err(Error::BadParam("m must be at least 1".into()));
    }
    let mut tree = seed.clone();
    for _ in 0..t {
        let all: Vec<VertexId> = (0..tree.len()).collect();
        tree = attach_leaves(&tree, &all, m);
    }
    Ok(tree)
}

/// Grows `spec` under the default vertex cap.
pub fn grow(spec: &ModelSpec) -> Result<Tree> {
    grow_with_cap(spec, DEFAULT_VERTEX_CAP)
}

pub fn grow_with_cap(spec: &ModelSpec, cap: usize) -> Result<Tree> {
    let mut last = None;
    grow_each(spec, cap, |_, t| last = Some(t.clone()))?;
    Ok(last.expect("at least one step"))
}

/// Grows `spec`, calling `visit(step, tree)` for every intermediate model
/// from the seed (or `C(1, n)`) up to `spec.steps`.
pub fn grow_each(spec: &ModelSpec, cap: usize, mut visit: impl FnMut(u32, &Tree)) -> Result<()> {
    spec.validate()?;
    let predicted = predicted_counts(spec)?;
    let final_v = &predicted.corrected.steps.last().expect("nonempty").vertices;
    if final_v.to_usize().is_none_or(|v| v > cap) {
        return Err(Error::SizeCap {
            predicted: final_v.to_string(),
            cap,
        });
    }
    let first = spec.first_step();
    let mut tree = match (&spec.family, &spec.seed) {
        (Family::Cayley { n }, _) => grow_cayley(*n, first, &spec.seed)?,
        _ => spec.seed.to_tree()?,
    };
    visit(first, &tree);
    for step in first + 1..=spec.steps {
        tree = match spec.family {
            Family::Cayley { n } => cayley_step(&tree, n),
            Family::Exponential { m } => grow_exponential(&tree, m, 1)?,
            fam => {
                let (w, m) = fam.edge_operation().expect("edge family");
                star_fractal_unchecked(&tree, w, m)
            }
        };
        visit(step, &tree);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountSource {
    AsPrinted,
    Corrected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCount {
    pub step: u32,
    pub vertices: ExactInt,
    pub edges: ExactInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthCounts {
    pub source: CountSource,
    pub steps: Vec<StepCount>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountPrediction {
    /// Counts from iterating the exact per-step growth rule.
    pub corrected: GrowthCounts,
    /// The closed-form counts as usually stated; `None` where no closed form
    /// exists (Cayley growth on an arbitrary seed).
    pub as_printed: Option<GrowthCounts>,
}

/// Vertex and edge counts for every step of `spec`.
pub fn predicted_counts(spec: &ModelSpec) -> Result<CountPrediction> {
    spec.validate()?;
    let first = spec.first_step();
    let steps = first..=spec.steps;
    let seed_tree = match (&spec.family, &spec.seed) {
        (Family::Cayley { n }, Seed::Star(k)) if n == k => None,
        _ => Some(spec.seed.to_tree()?),
    };
    let count = |step, v: BigInt| StepCount {
        step,
        edges: &v - 1,
        vertices: v,
    };

    let (corrected, printed) = match spec.family {
        Family::Cayley { n } => {
            let psi = BigInt::from(n - 1);
            // (vertices, leaves)
            let (mut v, mut d) = match &seed_tree {
                None => (BigInt::from(n + 1), BigInt::from(n)),
                Some(t) => {
                    cayley_seed(t, n)?;
                    (BigInt::from(t.len()), BigInt::from(t.leaves().len()))
                }
            };
            let mut corrected = vec![count(first, v.clone())];
            for step in first + 1..=spec.steps {
                v += &psi * &d;
                d *= &psi;
                corrected.push(count(step, v.clone()));
            }
            let printed = seed_tree.is_none().then(|| {
                steps
                    .clone()
                    .map(|t| count(t, cayley_order_closed(n, t)))
                    .collect()
            });
            (corrected, printed)
        }
        Family::Exponential { m } => {
            let t0 = seed_tree.expect("explicit seed");
            let mut v = BigInt::from(t0.len());
            let mut corrected = vec![count(0, v.clone())];
            for step in 1..=spec.steps {
                v += &v * BigInt::from(m);
                corrected.push(count(step, v.clone()));
            }
            let printed = steps
                .clone()
                .map(|t| count(t, pow(m as i64 + 1, t) * BigInt::from(t0.len())))
                .collect();
            (corrected, Some(printed))
        }
        fam => {
            let t0 = seed_tree.expect("explicit seed");
            let (w, m) = fam.edge_operation().expect("edge family");
            let (mut v, mut e) = (BigInt::from(t0.len()), BigInt::from(t0.edge_count()));
            let mut corrected = vec![StepCount {
                step: 0,
                vertices: v.clone(),
                edges: e.clone(),
            }];
            for step in 1..=spec.steps {
                v += &e * BigInt::from(w * (m + 1));
                e *= BigInt::from(w * (m + 1) + 1);
                corrected.push(StepCount {
                    step,
                    vertices: v.clone(),
                    edges: e.clone(),
                });
            }
            let factor = printed_edge_factor(&fam);
            let (v0, e0) = (BigInt::from(t0.len()), BigInt::from(t0.edge_count()));
            let printed = steps
                .clone()
                .map(|t| {
                    let grow = pow(factor as i64, t);
                    StepCount {
                        step: t,
                        vertices: &v0 + (&grow - BigInt::one()) * &e0,
                        edges: grow * &e0,
                    }
                })
                .collect();
            (corrected, Some(printed))
        }
    };
    Ok(CountPrediction {
        corrected: GrowthCounts {
            source: CountSource::Corrected,
            steps: corrected,
        },
        as_printed: printed.map(|steps| GrowthCounts {
            source: CountSource::AsPrinted,
            steps,
        }),
    })
}

/// Edge multiplier of the stated closed-form counts. For the (w, m)
/// star-fractal it reads `(w+1)m+1`, which disagrees with the construction
/// (`w(m+1)+1`) whenever `w ≠ m`.
pub fn printed_edge_factor(family: &Family) -> usize {
    match *family {
        Family::StarFractalWm { w, m } => (w + 1) * m + 1,
        fam => fam.edge_factor().expect("edge family"),
    }
}

/// `|V(C(t, n))| = (n (n-1)^t - 2) / (n - 2)`.
pub fn cayley_order_closed(n: usize, t: u32) -> BigInt {
    (BigInt::from(n) * pow(n as i64 - 1, t) - 2) / BigInt::from(n - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::is_isomorphic;

    #[test]
    fn subdivision_of_an_edge() {
        let e = Tree::single_edge();
        assert_eq!(subdivide(&e, 1).edges(), vec![(0, 2), (1, 2)]);
        let p4 = subdivide(&e, 2);
        assert!(is_isomorphic(&p4, &Tree::path(4).unwrap()));
        assert_eq!(p4.generations(), &[0, 0, 1, 1]);
    }

    #[test]
    fn subdivision_counts_one_step() {
        let t = Tree::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        for m in 1..5 {
            let s = subdivide(&t, m);
            assert_eq!(s.len(), 5 + m * 4);
            assert_eq!(s.edge_count(), (m + 1) * 4);
        }
    }

    #[test]
    fn star_fractal_shapes() {
        let e = Tree::single_edge();
        let t1 = star_fractal(&e, 1, 1).unwrap();
        assert!(is_isomorphic(&t1, &Tree::star(3).unwrap()));
        let w2 = star_fractal(&e, 2, 1).unwrap();
        assert_eq!((w2.len(), w2.edge_count()), (6, 5));
        let m2 = star_fractal(&e, 1, 2).unwrap();
        assert_eq!(m2.len(), 5);
        assert_eq!(m2.degree(2), 4);
        // leaves come right after their centre
        assert_eq!(w2.neighbors(2), &[0, 3, 4]);
        assert!(star_fractal(&e, 0, 1).is_err());
    }

    #[test]
    fn cayley_construction() {
        let c = grow_cayley(4, 3, &Seed::Star(4)).unwrap();
        assert_eq!(c.len(), 53);
        let c31 = grow_cayley(3, 1, &Seed::Star(3)).unwrap();
        assert!(is_isomorphic(&c31, &Tree::star(3).unwrap()));
        let c32 = grow_cayley(3, 2, &Seed::Star(3)).unwrap();
        assert_eq!(c32.len(), 10);
        assert!((0..10).all(|v| c32.degree(v) == 1 || c32.degree(v) == 3));
        assert!(matches!(
            grow_cayley(2, 2, &Seed::Star(2)),
            Err(Error::BadParam(_))
        ));
        let p4 = Seed::Explicit(Tree::path(4).unwrap());
        assert!(matches!(grow_cayley(3, 1, &p4), Err(Error::SeedViolation { .. })));
    }

    #[test]
    fn exponential_construction() {
        let e = Tree::single_edge();
        let p4 = grow_exponential(&e, 1, 1).unwrap();
        assert!(is_isomorphic(&p4, &Tree::path(4).unwrap()));
        assert_eq!(grow_exponential(&e, 1, 0).unwrap(), e);
        let seed = Tree::path(5).unwrap();
        assert_eq!(grow_exponential(&seed, 2, 3).unwrap().len(), 135);
    }

    #[test]
    fn grow_dispatch() {
        assert_eq!(grow(&ModelSpec::standard(Family::TGraph, 3)).unwrap().len(), 28);
        let p10 = grow(&ModelSpec::standard(Family::MthSubdivision { m: 2 }, 2)).unwrap();
        assert!(is_isomorphic(&p10, &Tree::path(10).unwrap()));
        assert_eq!(
            grow(&ModelSpec::standard(Family::Cayley { n: 3 }, 2))
                .unwrap()
                .len(),
            10
        );
    }

    #[test]
    fn grow_refuses_oversized_models() {
        let spec = ModelSpec::standard(Family::StarFractalWm { w: 4, m: 4 }, 5);
        assert!(matches!(grow_with_cap(&spec, 1000), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn counts_match_examples() {
        let c = predicted_counts(&ModelSpec::standard(Family::FirstOrderSubdivision, 3)).unwrap();
        let last = c.corrected.steps.last().unwrap();
        assert_eq!(
            (last.vertices.clone(), last.edges.clone()),
            (BigInt::from(9), BigInt::from(8))
        );

        let c = predicted_counts(&ModelSpec::standard(Family::StarFractalWm { w: 2, m: 1 }, 1)).unwrap();
        assert_eq!(c.corrected.steps[1].edges, BigInt::from(5));
        assert_eq!(c.as_printed.unwrap().steps[1].edges, BigInt::from(4));

        let c = predicted_counts(&ModelSpec::standard(Family::StarFractal1m { m: 1 }, 2)).unwrap();
        let last = c.corrected.steps.last().unwrap();
        assert_eq!(
            (last.vertices.clone(), last.edges.clone()),
            (BigInt::from(10), BigInt::from(9))
        );

        let c = predicted_counts(&ModelSpec::standard(Family::Cayley { n: 4 }, 3)).unwrap();
        assert_eq!(c.corrected.steps.last().unwrap().vertices, BigInt::from(53));
        assert_eq!(
            c.as_printed.unwrap().steps.last().unwrap().vertices,
            BigInt::from(53)
        );
    }

    #[test]
    fn spec_text_round_trip() {
        let specs = [
            "family=star_fractal w=2 m=3 seed=edge t=4",
            "family=first_order_subdivision seed=edge t=2",
            "family=subdivision m=1 seed=star:3 t=1",
            "family=cayley n=4 seed=star:4 t=3",
            "family=exponential m=2 seed=tree:4:0-1,1-2,1-3 t=2",
            "family=tgraph seed=edge t=0",
        ];
        for s in specs {
            let spec: ModelSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        let spec: ModelSpec = "family=cayley n=3 t=2".parse().unwrap();
        assert_eq!(spec.seed, Seed::Star(3));
        assert!("family=tgraph seed=star:3 t=1".parse::<ModelSpec>().is_err());
        assert!("family=star_fractal w=2 t=1".parse::<ModelSpec>().is_err());
        assert!("family=tgraph bogus=1".parse::<ModelSpec>().is_err());
    }
}
