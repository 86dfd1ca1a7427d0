//! Exact Wiener-index formulas for the grown families.
//!
//! Two tiers. The canonical evaluators are one-step recursions checked
//! against the brute-force oracle and iterated with updated `(S, |V|)`; they
//! define ground truth. The [`printed`] evaluators transcribe the usual
//! multi-step closed forms literally, including the ones that are wrong, and
//! exist so the audit can say where they disagree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{pow, serde_opt_ratio, to_ratio, ExactInt, ExactRatio};
use crate::growth::{Family, ModelSpec, Seed};
use crate::tree::{wiener_oracle, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    /// Wiener index of the path `P_A` as a double sum.
    PathSum,
    /// One first-order subdivision step, `8S - 2n(n-1)`.
    FirstOrderStep,
    /// `t` first-order subdivision steps on any seed.
    FirstOrderIterated,
    /// `t` first-order subdivision steps on a single edge.
    EdgeFirstOrderIterated,
    /// One m-th order subdivision step.
    MthOrderStep,
    /// `t` m-th order subdivision steps.
    MthOrderIterated,
    /// One (1, m)-star-fractal step.
    OneMStarStep,
    /// `t` (1, m)-star-fractal steps.
    OneMStarIterated,
    /// One (w, m)-star-fractal step, expanded polynomial form.
    WmStarStepExpanded,
    /// One (w, m)-star-fractal step, grouped sum of the seven pair classes.
    WmStarStepCaseSum,
    /// `t` (w, m)-star-fractal steps.
    WmStarIterated,
    TGraphClosedForm,
    /// `C(t, n)` assembled from the branch sums.
    CayleyClosedForm,
    /// Leaf-growth recurrence on an arbitrary Cayley seed.
    CayleyGeneralSeed,
    ExponentialClosedForm,
    ExponentialEdgeClosedForm,
    /// Mean first-passage time from the Wiener index.
    MfptFromWiener,
    FirstOrderCounts,
    MthOrderCounts,
    OneMStarCounts,
    WmStarCounts,
    CayleyOrder,
    ExponentialOrder,
}

impl FormulaId {
    pub const ALL: [FormulaId; 23] = [
        FormulaId::PathSum,
        FormulaId::FirstOrderStep,
        FormulaId::FirstOrderIterated,
        FormulaId::EdgeFirstOrderIterated,
        FormulaId::MthOrderStep,
        FormulaId::MthOrderIterated,
        FormulaId::OneMStarStep,
        FormulaId::OneMStarIterated,
        FormulaId::WmStarStepExpanded,
        FormulaId::WmStarStepCaseSum,
        FormulaId::WmStarIterated,
        FormulaId::TGraphClosedForm,
        FormulaId::CayleyClosedForm,
        FormulaId::CayleyGeneralSeed,
        FormulaId::ExponentialClosedForm,
        FormulaId::ExponentialEdgeClosedForm,
        FormulaId::MfptFromWiener,
        FormulaId::FirstOrderCounts,
        FormulaId::MthOrderCounts,
        FormulaId::OneMStarCounts,
        FormulaId::WmStarCounts,
        FormulaId::CayleyOrder,
        FormulaId::ExponentialOrder,
    ];

    pub fn name(&self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .expect("unit variant serialises to a string")
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Canonical,
    AsPrinted,
}

pub type Params = BTreeMap<String, i64>;

/// Builds a parameter map from `(key, value)` pairs.
pub fn params<const N: usize>(kv: [(&str, i64); N]) -> Params {
    kv.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub formula: FormulaId,
    pub tier: Tier,
    pub params: Params,
    /// `None` where the formula is undefined (a zero denominator).
    #[serde(with = "serde_opt_ratio")]
    pub value: Option<ExactRatio>,
}

impl FormulaResult {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("formula results serialise")
    }
}

fn big(v: u64) -> ExactInt {
    BigInt::from(v)
}

fn check_order(n: &ExactInt) -> Result<()> {
    if *n < BigInt::one() {
        return Err(Error::BadParam("seed order must be at least 1".into()));
    }
    Ok(())
}

/// Wiener index of the path on `a ≥ 2` vertices, `(a-1)a(a+1)/6`.
pub fn path_wiener(a: &ExactInt) -> Result<ExactInt> {
    if *a < big(2) {
        return Err(Error::BadParam("a path needs at least 2 vertices".into()));
    }
    Ok((a - 1) * a * (a + 1) / 6)
}

/// One m-th order subdivision step: returns `(S', n')`.
pub fn step_subdivision(s: &ExactInt, n: &ExactInt, m: u64) -> Result<(ExactInt, ExactInt)> {
    if m < 1 {
        return Err(Error::BadParam("subdivision order must be at least 1".into()));
    }
    check_order(n)?;
    let m1 = m + 1;
    let next = big(m1 * m1 * m1) * s - n * n * big(m * m1 * m1 / 2) + n * big(m * m1 * (2 * m + 1) / 3)
        - big((m - 1) * m * m1 / 6);
    Ok((next, n + big(m) * (n - 1)))
}

/// Contributions to the Wiener index after one (w, m)-star-fractal step,
/// split by the kind of vertex pair. "Old" vertices are those of the seed,
/// "centres" the subdivision vertices and "leaves" their pendant vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarFractalCases {
    pub old_old: ExactInt,
    pub centre_centre: ExactInt,
    pub leaf_leaf_same_star: ExactInt,
    pub centre_old: ExactInt,
    pub leaf_old: ExactInt,
    pub leaf_leaf_cross: ExactInt,
    pub centre_leaf: ExactInt,
}

impl StarFractalCases {
    pub fn total(&self) -> ExactInt {
        &self.old_old
            + &self.centre_centre
            + &self.leaf_leaf_same_star
            + &self.centre_old
            + &self.leaf_old
            + &self.leaf_leaf_cross
            + &self.centre_leaf
    }
}

/// The seven pair-class sums of one (w, m)-star-fractal step applied to a
/// tree with Wiener index `s` on `n` vertices. `m = 0` is plain w-th order
/// subdivision.
pub fn star_fractal_cases(s: &ExactInt, n: &ExactInt, w: u64, m: u64) -> StarFractalCases {
    let e = n - 1;
    let c = big(w) * &e;
    let pairs = n * &e / 2;
    let old_old = big(w + 1) * s;
    let centre_centre =
        big((w + 1) * w * w) * s + &e * big((w - 1) * w * (w + 1) / 6) - &pairs * big((w + 1) * w * w);
    let centre_old = big(w * (w + 1)) * (big(2) * s - &pairs);
    let leaf_leaf_same_star = &c * big(m * m.saturating_sub(1));
    let leaf_old = big(m) * (&centre_old + &c * n);
    let leaf_leaf_cross = big(m * m) * (&centre_centre + &c * (&c - 1));
    let centre_leaf = big(m) * (big(2) * &centre_centre + &c * &c);
    StarFractalCases {
        old_old,
        centre_centre,
        leaf_leaf_same_star,
        centre_old,
        leaf_old,
        leaf_leaf_cross,
        centre_leaf,
    }
}

/// One (w, m)-star-fractal step: returns `(S', n')`.
pub fn step_star_fractal(s: &ExactInt, n: &ExactInt, w: u64, m: u64) -> Result<(ExactInt, ExactInt)> {
    if w < 1 || m < 1 {
        return Err(Error::BadParam("star-fractal needs w ≥ 1 and m ≥ 1".into()));
    }
    check_order(n)?;
    Ok(step_edge_operation(s, n, w, m))
}

fn step_edge_operation(s: &ExactInt, n: &ExactInt, w: u64, m: u64) -> (ExactInt, ExactInt) {
    let next = star_fractal_cases(s, n, w, m).total();
    (next, n + big(w * (m + 1)) * (n - 1))
}

/// One exponential-growth step (every vertex gains `m` leaves).
pub fn step_exponential(s: &ExactInt, n: &ExactInt, m: u64) -> (ExactInt, ExactInt) {
    let m1 = big(m + 1);
    let next = &m1 * &m1 * s + big(m * (m + 1)) * n * n - big(m) * n;
    (next, m1 * n)
}

/// Wiener index after `t` exponential steps from a seed with index `s0` on
/// `v0` vertices.
pub fn exponential_wiener(s0: &ExactInt, v0: &ExactInt, m: u64, t: u32) -> Result<ExactInt> {
    if m < 1 {
        return Err(Error::BadParam("m must be at least 1".into()));
    }
    check_order(v0)?;
    let (mut s, mut n) = (s0.clone(), v0.clone());
    for _ in 0..t {
        (s, n) = step_exponential(&s, &n, m);
    }
    Ok(s)
}

/// Wiener index of the T-graph at step `t`, from its closed form.
pub fn tgraph_wiener(t: u32) -> ExactRatio {
    printed::tgraph_closed_form(t)
}

/// State of the leaf-growth recurrence for Cayley trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyState {
    pub wiener: ExactInt,
    /// Distance sum over (leaf, non-leaf) pairs.
    pub leaf_internal: ExactInt,
    /// Distance sum over unordered leaf pairs.
    pub leaf_leaf: ExactInt,
    pub leaves: ExactInt,
    pub vertices: ExactInt,
}

impl CayleyState {
    /// The star `C(1, n)`.
    pub fn star(n: u64) -> CayleyState {
        CayleyState {
            wiener: big(n * n),
            leaf_internal: big(n),
            leaf_leaf: big(n * (n - 1)),
            leaves: big(n),
            vertices: big(n + 1),
        }
    }

    /// Measures the state of an explicit seed whose internal vertices all
    /// have degree `n`.
    pub fn from_seed(seed: &Tree, n: u64) -> Result<CayleyState> {
        for v in 0..seed.len() {
            let d = seed.degree(v);
            if d != 1 && d as u64 != n {
                return Err(Error::SeedViolation {
                    vertex: v,
                    degree: d,
                    expected: n as usize,
                });
            }
        }
        let leaves = seed.leaves();
        let (mut li, mut ll) = (0u64, 0u64);
        for &l in &leaves {
            let row = seed.bfs_distances(l)?;
            for (v, &d) in row.dist.iter().enumerate() {
                if seed.is_leaf(v) {
                    ll += d as u64;
                } else {
                    li += d as u64;
                }
            }
        }
        Ok(CayleyState {
            wiener: wiener_oracle(seed),
            leaf_internal: big(li),
            leaf_leaf: big(ll / 2),
            leaves: big(leaves.len() as u64),
            vertices: big(seed.len() as u64),
        })
    }

    /// Every leaf gains `n - 1` children.
    pub fn step(&self, n: u64) -> CayleyState {
        let psi = big(n - 1);
        let d = &self.leaves;
        let leaf_internal = &psi * (&self.leaf_internal + big(2) * &self.leaf_leaf + d * &self.vertices);
        let leaf_leaf = &psi * &psi * (&self.leaf_leaf + d * d) - &psi * d;
        CayleyState {
            wiener: &self.wiener + &leaf_internal + &leaf_leaf,
            leaf_internal,
            leaf_leaf,
            leaves: &psi * d,
            vertices: &self.vertices + &psi * d,
        }
    }
}

/// Wiener index after `t` leaf-growth steps on an explicit Cayley seed.
pub fn cayley_general_wiener(seed: &Tree, n: u64, t: u32) -> Result<ExactInt> {
    if n < 3 {
        return Err(Error::BadParam(
            "Cayley coordination number must be at least 3".into(),
        ));
    }
    let mut state = CayleyState::from_seed(seed, n)?;
    for _ in 0..t {
        state = state.step(n);
    }
    Ok(state.wiener)
}

/// Closed-form evaluation for `C(t, n)` with its intermediate branch sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyWiener {
    pub value: ExactRatio,
    /// Order of one branch (the centre plus one subtree).
    pub branch_order: ExactRatio,
    /// Distance sum from the centre to the vertices of one branch.
    pub theta: ExactRatio,
    /// Distance sum between two distinct branches.
    pub omega12: ExactRatio,
    /// Wiener index of one branch.
    pub gamma: ExactRatio,
    /// Same value obtained by running the branch recurrences.
    pub recursion: ExactInt,
}

pub fn cayley_wiener(n: u64, t: u32) -> Result<CayleyWiener> {
    if n < 3 {
        return Err(Error::BadParam(
            "Cayley coordination number must be at least 3".into(),
        ));
    }
    if t < 1 {
        return Err(Error::BadParam("Cayley trees start at t = 1".into()));
    }
    let closed = printed::cayley_closed_form(n, t);
    // branch_order, theta, omega12, gamma
    let (mut a, mut th, mut om, mut ga) = (big(2), big(1), big(2), big(1));
    let ni = big(n);
    for _ in 2..=t {
        a = (&ni - 1) * &a - (&ni - 3);
        th = (&ni - 1) * &th + &a - 1;
        let om_next = big(2) * (&a - 1) * &th;
        ga = (&ni - 1) * &ga + (&ni - 1) * (&ni - 2) / 2 * &om + &th;
        om = om_next;
    }
    let recursion = &ni * &ga + &ni * (&ni - 1) / 2 * &om;
    Ok(CayleyWiener { recursion, ..closed })
}

/// One point of a canonical Wiener sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePoint {
    pub step: u32,
    pub vertices: ExactInt,
    pub wiener: ExactInt,
}

/// Canonical Wiener indices of every step of `spec`, without growing it.
/// The seed index is taken from the oracle.
pub fn wiener_sequence(spec: &ModelSpec) -> Result<Vec<SequencePoint>> {
    spec.validate()?;
    let first = spec.first_step();
    let mut out = Vec::with_capacity((spec.steps - first + 1) as usize);
    match spec.family {
        Family::Cayley { n } => {
            let n = n as u64;
            let mut st = match &spec.seed {
                Seed::Star(k) if *k as u64 == n => CayleyState::star(n),
                other => CayleyState::from_seed(&other.to_tree()?, n)?,
            };
            out.push(SequencePoint {
                step: first,
                vertices: st.vertices.clone(),
                wiener: st.wiener.clone(),
            });
            for step in first + 1..=spec.steps {
                st = st.step(n);
                out.push(SequencePoint {
                    step,
                    vertices: st.vertices.clone(),
                    wiener: st.wiener.clone(),
                });
            }
        }
        fam => {
            let seed = spec.seed.to_tree()?;
            let (mut s, mut n) = (wiener_oracle(&seed), big(seed.len() as u64));
            out.push(SequencePoint {
                step: 0,
                vertices: n.clone(),
                wiener: s.clone(),
            });
            for step in 1..=spec.steps {
                (s, n) = match fam {
                    Family::Exponential { m } => step_exponential(&s, &n, m as u64),
                    Family::FirstOrderSubdivision | Family::MthSubdivision { .. } => {
                        let (w, _) = fam.edge_operation().expect("edge family");
                        step_subdivision(&s, &n, w as u64)?
                    }
                    _ => {
                        let (w, m) = fam.edge_operation().expect("edge family");
                        step_edge_operation(&s, &n, w as u64, m as u64)
                    }
                };
                out.push(SequencePoint {
                    step,
                    vertices: n.clone(),
                    wiener: s.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Canonical and as-printed multi-step values for one step of an iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WienerStep {
    pub step: u32,
    pub vertices: ExactInt,
    pub canonical: FormulaResult,
    pub as_printed: Vec<FormulaResult>,
}

/// The multi-step formula that describes `family` in closed form.
pub fn iterated_formula(family: &Family) -> FormulaId {
    match family {
        Family::FirstOrderSubdivision => FormulaId::FirstOrderIterated,
        Family::MthSubdivision { .. } => FormulaId::MthOrderIterated,
        Family::StarFractal1m { .. } => FormulaId::OneMStarIterated,
        Family::StarFractalWm { .. } => FormulaId::WmStarIterated,
        Family::TGraph => FormulaId::TGraphClosedForm,
        Family::Cayley { .. } => FormulaId::CayleyGeneralSeed,
        Family::Exponential { .. } => FormulaId::ExponentialClosedForm,
    }
}

/// Iterates the one-step theorem of an edge-rewriting family from a seed
/// with Wiener index `s0` on `n0` vertices, and evaluates the printed
/// multi-step closed forms alongside.
pub fn iterate_wiener(spec: &ModelSpec, s0: &ExactInt, n0: u64) -> Result<Vec<WienerStep>> {
    spec.validate()?;
    let Some((w, m)) = spec.family.edge_operation() else {
        return Err(Error::BadParam(format!(
            "{} is not an edge-rewriting family",
            spec.family.name()
        )));
    };
    let (w, m) = (w as u64, m as u64);
    let formula = iterated_formula(&spec.family);
    let s0i = i64::try_from(s0).unwrap_or(i64::MAX);
    let (mut s, mut n) = (s0.clone(), big(n0));
    let n0b = big(n0);
    let mut out = Vec::new();
    for step in 0..=spec.steps {
        if step > 0 {
            (s, n) = if spec.family.is_subdivision() {
                step_subdivision(&s, &n, w)?
            } else {
                step_edge_operation(&s, &n, w, m)
            };
        }
        let t = step as i64;
        let base = |extra: &[(&str, i64)]| {
            let mut p = params([("n", n0 as i64), ("s", s0i), ("t", t)]);
            for (k, v) in extra {
                p.insert(k.to_string(), *v);
            }
            p
        };
        let printed_result = |formula, p: Params, value| FormulaResult {
            formula,
            tier: Tier::AsPrinted,
            params: p,
            value,
        };
        let mut as_printed = Vec::new();
        let canonical_params;
        match spec.family {
            Family::FirstOrderSubdivision => {
                canonical_params = base(&[]);
                as_printed.push(printed_result(
                    formula,
                    canonical_params.clone(),
                    Some(printed::first_order_iterated(s0, &n0b, step)),
                ));
                if spec.seed == Seed::SingleEdge {
                    as_printed.push(printed_result(
                        FormulaId::EdgeFirstOrderIterated,
                        params([("t", t)]),
                        Some(printed::edge_first_order_iterated(step)),
                    ));
                }
            }
            Family::MthSubdivision { m: order } => {
                let order = order as u64;
                canonical_params = base(&[("m", order as i64)]);
                for variant in [DenominatorVariant::SeedOrder, DenominatorVariant::Order] {
                    as_printed.push(printed_result(
                        formula,
                        base(&[("m", order as i64), ("variant", variant as i64)]),
                        printed::mth_order_iterated(s0, &n0b, order, step, variant),
                    ));
                }
            }
            Family::StarFractal1m { .. } => {
                canonical_params = base(&[("m", m as i64)]);
                as_printed.push(printed_result(
                    formula,
                    canonical_params.clone(),
                    Some(printed::one_m_star_iterated(s0, &n0b, m, step)),
                ));
            }
            Family::StarFractalWm { .. } => {
                canonical_params = base(&[("m", m as i64), ("w", w as i64)]);
                as_printed.push(printed_result(
                    formula,
                    canonical_params.clone(),
                    printed::wm_star_iterated(s0, &n0b, w, m, step),
                ));
            }
            Family::TGraph => {
                canonical_params = params([("t", t)]);
                as_printed.push(printed_result(
                    formula,
                    canonical_params.clone(),
                    Some(tgraph_wiener(step)),
                ));
                as_printed.push(printed_result(
                    FormulaId::OneMStarIterated,
                    base(&[("m", 1)]),
                    Some(printed::one_m_star_iterated(s0, &n0b, 1, step)),
                ));
            }
            Family::Cayley { .. } | Family::Exponential { .. } => unreachable!("edge families only"),
        }
        out.push(WienerStep {
            step,
            vertices: n.clone(),
            canonical: FormulaResult {
                formula,
                tier: Tier::Canonical,
                params: canonical_params,
                value: Some(to_ratio(&s)),
            },
            as_printed,
        });
    }
    Ok(out)
}

/// Which denominator to use in the printed multi-step m-th order formula,
/// whose final term reads `(m+1)/(2n-1)` where the one-step theorem has
/// `(m+1)/(2m-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenominatorVariant {
    /// `2n - 1`, as printed.
    SeedOrder = 0,
    /// `2m - 1`, matching the one-step theorem.
    Order = 1,
}

/// Literal transcriptions of the printed closed forms. Several are wrong;
/// see the audit for where.
pub mod printed {
    use super::*;

    fn r(v: i64) -> ExactRatio {
        ExactRatio::from_integer(BigInt::from(v))
    }

    fn ri(v: &ExactInt) -> ExactRatio {
        to_ratio(v)
    }

    /// `base^exp` for a possibly negative exponent.
    fn rpow(base: i64, exp: i64) -> ExactRatio {
        let p = r(base).pow(exp.unsigned_abs() as i32);
        if exp < 0 {
            p.recip()
        } else {
            p
        }
    }

    fn power_sum(k: u64, p: u32) -> ExactRatio {
        (1..=k).map(|i| ri(&pow(i as i64, p))).sum()
    }

    fn geometric(base: &ExactRatio, terms: u32) -> Vec<ExactRatio> {
        let mut out = Vec::with_capacity(terms as usize);
        let mut acc = ExactRatio::one();
        for _ in 0..terms {
            out.push(acc.clone());
            acc *= base;
        }
        out
    }

    /// `Σ_{i=1}^{A-1} Σ_{j=1}^{A-i} j`.
    pub fn path_double_sum(a: u64) -> ExactRatio {
        let mut s = 0u128;
        for i in 1..a {
            let k = (a - i) as u128;
            s += k * (k + 1) / 2;
        }
        ExactRatio::from_integer(BigInt::from(s))
    }

    /// `8S - 2n(n-1)`.
    pub fn first_order_step(s: &ExactInt, n: &ExactInt) -> ExactRatio {
        ri(&(big(8) * s - big(2) * n * (n - 1)))
    }

    /// `(m+1)^3 S - 2n^2 Σi^3 / m + 2n Σi^2 - (m+1)/(2m-1) Σ_{i<m} i^2`.
    pub fn mth_order_step(s: &ExactInt, n: &ExactInt, m: u64) -> ExactRatio {
        let (s, n) = (ri(s), ri(n));
        let mi = m as i64;
        r((mi + 1).pow(3)) * s - r(2) * &n * &n * power_sum(m, 3) / r(mi) + r(2) * &n * power_sum(m, 2)
            - r(mi + 1) / r(2 * mi - 1) * power_sum(m - 1, 2)
    }

    /// `2(m+2)^2 S - (m+2)(n-1)(m+n)`.
    pub fn one_m_star_step(s: &ExactInt, n: &ExactInt, m: u64) -> ExactRatio {
        let m2 = big(m + 2);
        ri(&(big(2) * &m2 * &m2 * s - &m2 * (n - 1) * (n + big(m))))
    }

    fn psi(w: u64, m: u64) -> [ExactRatio; 4] {
        let (w, m) = (w as i64, m as i64);
        let mm = (m + 1) * (m + 1);
        [
            r((w + 1) * (w * (m + 1) + 1).pow(2)),
            r(w) / r(2) * r(mm * w * w - (m - 2) * (m + 1) * w - (m - 1)),
            r(w) / r(6) * r(4 * mm * w * w - 3 * (m + 1) * (3 * m - 2) * w - (m * m + 11 * m + 2)),
            r(w) / r(6) * r(mm * w * w - 6 * m * (m + 1) * w - (m * m + 8 * m + 1)),
        ]
    }

    /// Expanded one-step form `Ψ1 S - Ψ2 n^2 + Ψ3 n - Ψ4`.
    pub fn wm_star_step_expanded(s: &ExactInt, n: &ExactInt, w: u64, m: u64) -> ExactRatio {
        let [p1, p2, p3, p4] = psi(w, m);
        let n = ri(n);
        p1 * ri(s) - p2 * &n * &n + p3 * &n - p4
    }

    /// Grouped sum of the seven pair classes, coefficient by coefficient.
    pub fn wm_star_step_case_sum(s: &ExactInt, n: &ExactInt, w: u64, m: u64) -> ExactRatio {
        let (w, m) = (w as i64, m as i64);
        let (s, n) = (ri(s), ri(n));
        let q = |num: i64, den: i64| r(num) / r(den);
        let c_s = r((w + 1).pow(3) + w * m * (w + 1) * (w * m + 2 * w + 2));
        let c_n2 = q(w * (w + 1) * (w + 1), 2) + q(w * m * (w - 1) * (w * m + 1), 2) + r(m * w.pow(3));
        let c_n1 = q(w * (w + 1) * (2 * w + 1), 3) + q(w * (4 * w * w - 9 * w - 7) * m * m, 6);
        let c_n1b = r(w * m * (m - 1)) + q(w * m * (w - 1) * (8 * w + 5), 2);
        let c_0 = q((w - 7) * w * (w + 1) * m * m, 6) + q(w * m * (w * w - 3 * w - 1), 3);
        let c_0b = r(w * m * (m - 1)) + q((w - 1) * w * (w + 1), 6);
        c_s * s - c_n2 * &n * &n + c_n1 * &n + c_n1b * &n - c_0 - c_0b
    }

    /// `8^t S - (2^{3t} - 2^t)(n-1)/3 + (2^{2t-1} - 2^{3t-1})(n-1)^2`.
    pub fn first_order_iterated(s: &ExactInt, n: &ExactInt, t: u32) -> ExactRatio {
        let t = t as i64;
        let e = ri(&(n - 1));
        rpow(8, t) * ri(s) - (rpow(2, 3 * t) - rpow(2, t)) * &e / r(3)
            + (rpow(2, 2 * t - 1) - rpow(2, 3 * t - 1)) * &e * &e
    }

    /// `(2^t+1) 2^t (2^{t-1}+1) / 3`.
    pub fn edge_first_order_iterated(t: u32) -> ExactRatio {
        let t = t as i64;
        (rpow(2, t) + r(1)) * rpow(2, t) * (rpow(2, t - 1) + r(1)) / r(3)
    }

    /// The printed multi-step m-th order formula, with either denominator.
    pub fn mth_order_iterated(
        s: &ExactInt,
        n: &ExactInt,
        m: u64,
        t: u32,
        variant: DenominatorVariant,
    ) -> Option<ExactRatio> {
        let (mi, ti) = (m as i64, t as i64);
        let e = ri(&(n - 1));
        let s3 = power_sum(m, 3);
        let s2 = power_sum(m, 2);
        let s2m = power_sum(m - 1, 2);
        let sum = |f: &dyn Fn(i64) -> i64| -> ExactRatio { (0..ti).map(|j| rpow(mi + 1, f(j))).sum() };
        let den = match variant {
            DenominatorVariant::SeedOrder => ri(&(big(2) * n - 1)),
            DenominatorVariant::Order => r(2 * mi - 1),
        };
        if den.is_zero() {
            return None;
        }
        let cube = sum(&|j| 3 * j);
        Some(
            rpow(mi + 1, 3 * ti) * ri(s)
                - r(2) * &e * &e * &s3 * sum(&|j| 2 * (ti - 1) + j) / r(mi)
                - r(4) * &e * &s3 * sum(&|j| 2 * (ti + j) - 1) / r(mi)
                - r(2) * &s3 * &cube / r(mi)
                + r(2) * &e * &s2 * sum(&|j| ti + 2 * j - 1)
                - r(mi + 1) / den * s2m * &cube
                + r(2) * s2 * &cube,
        )
    }

    /// The printed multi-step (1, m)-star-fractal formula.
    pub fn one_m_star_iterated(s: &ExactInt, n: &ExactInt, m: u64, t: u32) -> ExactRatio {
        let (mi, ti) = (m as i64, t as i64);
        let n = ri(n);
        rpow(2, ti) * rpow(mi + 2, 2 * ti) * ri(s)
            - (rpow(2, ti) - r(1)) * rpow(mi + 2, 2 * ti - 1) * (&n * &n - r(2) * &n - r(1))
            - r(mi + 1) * (&n - r(1)) / r(2)
                * (rpow(2, ti + 1) * rpow(mi + 2, 2 * ti) - r(2) * rpow(mi + 2, ti))
                / r(2 * mi + 3)
    }

    /// Vertex count used by the printed multi-step (w, m) formula,
    /// `(mw)^k (n - mw/(mw-1)) + mw/(mw-1)`; undefined at `mw = 1`.
    pub fn wm_star_vertices(n: &ExactInt, w: u64, m: u64, k: u32) -> Option<ExactRatio> {
        let mw = (m * w) as i64;
        if mw == 1 {
            return None;
        }
        let q = r(mw) / r(mw - 1);
        Some(rpow(mw, k as i64) * (ri(n) - &q) + q)
    }

    /// The printed multi-step (w, m)-star-fractal formula.
    pub fn wm_star_iterated(s: &ExactInt, n: &ExactInt, w: u64, m: u64, t: u32) -> Option<ExactRatio> {
        let [p1, p2, p3, p4] = psi(w, m);
        let powers = geometric(&p1, t + 1);
        let mut total = &powers[t as usize] * ri(s);
        for i in 0..t {
            let v = wm_star_vertices(n, w, m, t - 1 - i)?;
            let pi = &powers[i as usize];
            total -= &p4 * pi;
            total -= &p2 * pi * &v * &v;
            total += &p3 * pi * &v;
        }
        Some(total)
    }

    /// `3^t + (2^{t+2}+5)/5 · 3^{2t-1} - 3^{t+1}/5`.
    pub fn tgraph_closed_form(t: u32) -> ExactRatio {
        let t = t as i64;
        rpow(3, t) + (rpow(2, t + 2) + r(5)) / r(5) * rpow(3, 2 * t - 1) - rpow(3, t + 1) / r(5)
    }

    /// Branch sums and the assembled Wiener index of `C(t, n)`, `t ≥ 1`.
    pub fn cayley_closed_form(n: u64, t: u32) -> CayleyWiener {
        let (n, t) = (n as i64, t as i64);
        let d = r(n - 2);
        let p = |e: i64| rpow(n - 1, e);
        let branch_order = (p(t) + r(n - 3)) / &d;
        let theta = (r((n - 2) * t - 1) * p(t) + r(1)) / (&d * &d);
        let omega12 =
            r(2) / (&d * &d * &d) * (r((n - 2) * t - 1) * p(2 * t) - r((n - 2) * t - 2) * p(t) - r(1));
        let gamma = p(t - 1)
            + (r(t - 1) * p(t + 1) - p(t - 1) + r(1)) / (&d * &d)
            + (r((n - 2) * t - n) * p(2 * t) + r(2) * p(t + 1)) / (&d * &d * &d);
        let value = r(n) * p(t - 1)
            + (r(n * (t - 1)) * p(t + 1) - r(n) * p(t - 1) + r(n)) / (&d * &d)
            + (r(n) * r((n - 2) * t - n) * p(2 * t) + r(2 * n) * p(t + 1)) / (&d * &d * &d)
            + r(n * (n - 1)) / (&d * &d * &d)
                * (r((n - 2) * t - 1) * p(2 * t) - r((n - 2) * t - 2) * p(t) - r(1));
        CayleyWiener {
            value,
            branch_order,
            theta,
            omega12,
            gamma,
            recursion: BigInt::zero(),
        }
    }

    /// `|V(C(t, n))| = n |A_t| - (n - 1)`.
    pub fn cayley_order_from_branches(n: u64, t: u32) -> ExactRatio {
        let c = cayley_closed_form(n, t);
        r(n as i64) * c.branch_order - r(n as i64 - 1)
    }

    /// Expanded multi-step form of the printed leaf-growth recurrence,
    /// starting from `(S, S1, S2, |ΔV|)` with `ψ = n - 1`.
    pub fn cayley_general_expanded(start: &CayleyState, n: u64, t: u32) -> ExactRatio {
        let psi = n as i64 - 1;
        let (s1, s2) = (ri(&start.leaf_internal), ri(&start.leaf_leaf));
        let dv = |j: i64| ri(&start.leaves) * rpow(psi, j);
        let t = t as i64;
        let inner = |i: i64| -> ExactRatio {
            let mut v = rpow(psi, 2 * i) * &s2;
            for j in 0..i {
                let d = dv(i - 1 - j);
                v += rpow(psi, 2 * j + 2) * &d * &d;
                v -= rpow(psi, 2 * j + 1) * d;
            }
            v
        };
        let mut total = ri(&start.wiener);
        for i in 1..=t {
            total += rpow(psi, i) * &s1;
            for j in 0..i {
                total += r(2) * rpow(psi, i - j) * dv(j);
            }
            total += inner(i);
        }
        for l in 1..=t {
            for i in 0..l {
                total += rpow(psi, l - i) * inner(i);
            }
        }
        total
    }

    /// `(1+m)^{2t} S + m(m+1) Σ (1+m)^{2i} |V_{t-i-1}|^2 - m Σ (1+m)^{2i} |V_{t-i-1}|`
    /// with `|V_j| = (m+1)^j V0`.
    pub fn exponential_closed_form(s: &ExactInt, v0: &ExactInt, m: u64, t: u32) -> ExactRatio {
        let (mi, ti) = (m as i64, t as i64);
        let v = |j: i64| rpow(mi + 1, j) * ri(v0);
        let mut total = rpow(mi + 1, 2 * ti) * ri(s);
        for i in 0..ti {
            let vj = v(ti - i - 1);
            total += r(mi * (mi + 1)) * rpow(mi + 1, 2 * i) * &vj * &vj;
            total -= r(mi) * rpow(mi + 1, 2 * i) * vj;
        }
        total
    }

    /// `(m+1)^{t-1} [2 + (4mt + m - 1)(m+1)^t]`.
    pub fn exponential_edge_closed_form(m: u64, t: u32) -> ExactRatio {
        let (mi, ti) = (m as i64, t as i64);
        rpow(mi + 1, ti - 1) * (r(2) + r(4 * mi * ti + mi - 1) * rpow(mi + 1, ti))
    }

    /// The mean first-passage time as `S / |V|`.
    pub fn mfpt_from_wiener(s: &ExactInt, n: &ExactInt) -> ExactRatio {
        ri(s) / ri(n)
    }
}
