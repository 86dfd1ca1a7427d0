//! Formula audit: every closed form, in both tiers, against the oracles.
//!
//! The audit grows each grid point and measures it with the brute-force
//! Wiener oracle (breadth-first search up to `bfs_cap` vertices, edge cuts
//! beyond), the exact first-passage solver, or plain vertex counting. Each
//! formula evaluation becomes one [`AuditRecord`]; the [`Ledger`] summarises
//! them per formula and tier.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    params, path_wiener, printed, star_fractal_cases, step_exponential, step_star_fractal, step_subdivision,
    CayleyState, DenominatorVariant, FormulaId, Params, Tier,
};
use crate::enumerate::free_trees_up_to;
use crate::exact::{pow, ratio_to_string, serde_opt_ratio, to_ratio, ExactInt, ExactRatio};
use crate::growth::{
    cayley_order_closed, grow_cayley, grow_exponential, printed_edge_factor, star_fractal, subdivide, Family,
    Seed, DEFAULT_VERTEX_CAP,
};
use crate::random_walk::ordered_fpt_total;
use crate::tree::{wiener_edge_cut, wiener_oracle, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch,
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub formula: FormulaId,
    pub tier: Tier,
    pub params: Params,
    #[serde(with = "serde_opt_ratio")]
    pub oracle_value: Option<ExactRatio>,
    #[serde(with = "serde_opt_ratio")]
    pub formula_value: Option<ExactRatio>,
    pub verdict: Verdict,
    #[serde(with = "serde_opt_ratio")]
    pub abs_diff: Option<ExactRatio>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AuditRecord {
    pub fn compare(
        formula: FormulaId,
        tier: Tier,
        params: Params,
        oracle: ExactRatio,
        value: Option<ExactRatio>,
    ) -> AuditRecord {
        let (verdict, diff) = match &value {
            Some(v) => {
                let d = (v - &oracle).abs();
                let verdict = if d == ExactRatio::from_integer(BigInt::from(0)) {
                    Verdict::Match
                } else {
                    Verdict::Mismatch
                };
                (verdict, Some(d))
            }
            None => (Verdict::Undefined, None),
        };
        AuditRecord {
            formula,
            tier,
            params,
            oracle_value: Some(oracle),
            formula_value: value,
            verdict,
            abs_diff: diff,
            note: None,
        }
    }

    fn failed(formula: FormulaId, tier: Tier, params: Params, note: String) -> AuditRecord {
        AuditRecord {
            formula,
            tier,
            params,
            oracle_value: None,
            formula_value: None,
            verdict: Verdict::Undefined,
            abs_diff: None,
            note: Some(note),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditGrid {
    /// Every free tree up to this order is a seed.
    pub max_seed_order: usize,
    /// Bounds for the subdivision order and the star-fractal `w`, `m`.
    pub m_max: u64,
    pub w_max: u64,
    pub t_max: u32,
    pub tgraph_t_max: u32,
    /// Paths `P_2 ..= P_path_max`.
    pub path_max: u64,
    pub cayley_n: (u64, u64),
    pub cayley_t_max: u32,
    pub exponential_m_max: u64,
    pub exponential_t_max: u32,
    /// Largest seed used for the exact first-passage audit.
    pub mfpt_max_order: usize,
    /// Above this order the edge-cut oracle replaces breadth-first search.
    pub bfs_cap: usize,
    pub vertex_cap: usize,
    /// Restrict the audit to these formulas; `None` audits all of them.
    #[serde(default)]
    pub formulas: Option<Vec<FormulaId>>,
}

impl Default for AuditGrid {
    fn default() -> AuditGrid {
        AuditGrid {
            max_seed_order: 12,
            m_max: 4,
            w_max: 4,
            t_max: 3,
            tgraph_t_max: 6,
            path_max: 64,
            cayley_n: (3, 6),
            cayley_t_max: 4,
            exponential_m_max: 4,
            exponential_t_max: 3,
            mfpt_max_order: 12,
            bfs_cap: 2000,
            vertex_cap: DEFAULT_VERTEX_CAP,
            formulas: None,
        }
    }
}

impl AuditGrid {
    /// A grid small enough for quick checks.
    pub fn small() -> AuditGrid {
        AuditGrid {
            max_seed_order: 6,
            m_max: 2,
            w_max: 2,
            t_max: 2,
            tgraph_t_max: 4,
            path_max: 16,
            cayley_n: (3, 4),
            cayley_t_max: 3,
            exponential_m_max: 2,
            exponential_t_max: 2,
            mfpt_max_order: 6,
            ..AuditGrid::default()
        }
    }

    /// The same grid restricted to `formulas`.
    pub fn only(mut self, formulas: &[FormulaId]) -> AuditGrid {
        self.formulas = Some(formulas.to_vec());
        self
    }

    pub fn wants(&self, id: FormulaId) -> bool {
        self.formulas.as_ref().is_none_or(|f| f.contains(&id))
    }

    fn wants_any(&self, ids: &[FormulaId]) -> bool {
        ids.iter().any(|&id| self.wants(id))
    }

    fn oracle(&self, t: &Tree) -> ExactRatio {
        if t.len() <= self.bfs_cap {
            to_ratio(&wiener_oracle(t))
        } else {
            to_ratio(&wiener_edge_cut(t))
        }
    }
}

fn r(v: &ExactInt) -> ExactRatio {
    to_ratio(v)
}

fn ri(v: i64) -> ExactRatio {
    ExactRatio::from_integer(BigInt::from(v))
}

fn with(mut p: Params, kv: &[(&str, i64)]) -> Params {
    for (k, v) in kv {
        p.insert(k.to_string(), *v);
    }
    p
}

struct SeedInfo {
    index: usize,
    tree: Tree,
    order: ExactInt,
    wiener: ExactInt,
}

/// Runs every formula over `grid`. Output order is deterministic: formula,
/// then parameters, then tier.
pub fn audit(grid: &AuditGrid) -> Vec<AuditRecord> {
    let seeds: Vec<SeedInfo> = free_trees_up_to(grid.max_seed_order)
        .into_iter()
        .enumerate()
        .filter(|(_, tree)| tree.len() >= 2)
        .map(|(index, tree)| SeedInfo {
            index,
            order: BigInt::from(tree.len()),
            wiener: wiener_oracle(&tree),
            tree,
        })
        .collect();

    let mut jobs: Vec<Box<dyn Fn() -> Vec<AuditRecord> + Send + Sync + '_>> = Vec::new();
    use FormulaId::*;
    let subdivision_ids = [
        FirstOrderStep,
        FirstOrderIterated,
        EdgeFirstOrderIterated,
        MthOrderStep,
        MthOrderIterated,
        FirstOrderCounts,
        MthOrderCounts,
    ];
    let star_ids = [
        OneMStarStep,
        OneMStarIterated,
        WmStarStepExpanded,
        WmStarStepCaseSum,
        WmStarIterated,
        OneMStarCounts,
        WmStarCounts,
    ];
    let exp_ids = [ExponentialClosedForm, ExponentialOrder];
    for seed in &seeds {
        if grid.wants_any(&subdivision_ids) {
            for m in 1..=grid.m_max {
                jobs.push(Box::new(move || edge_family(grid, seed, m, 0)));
            }
        }
        if grid.wants_any(&star_ids) {
            for w in 1..=grid.w_max {
                for m in 1..=grid.m_max {
                    jobs.push(Box::new(move || edge_family(grid, seed, w, m)));
                }
            }
        }
        if grid.wants_any(&exp_ids) {
            for m in 1..=grid.exponential_m_max {
                jobs.push(Box::new(move || exponential(grid, seed, m)));
            }
        }
        if grid.wants(MfptFromWiener) && seed.tree.len() <= grid.mfpt_max_order {
            jobs.push(Box::new(move || mfpt_records(seed)));
        }
        if grid.wants(CayleyGeneralSeed) {
            for n in grid.cayley_n.0..=grid.cayley_n.1 {
                if CayleyState::from_seed(&seed.tree, n).is_ok() {
                    jobs.push(Box::new(move || cayley_general(grid, seed, n)));
                }
            }
        }
    }
    if grid.wants(PathSum) {
        jobs.push(Box::new(|| path_records(grid)));
    }
    if grid.wants(TGraphClosedForm) {
        jobs.push(Box::new(|| tgraph_records(grid)));
    }
    if grid.wants_any(&[CayleyClosedForm, CayleyOrder]) {
        for n in grid.cayley_n.0..=grid.cayley_n.1 {
            jobs.push(Box::new(move || cayley_records(grid, n)));
        }
    }
    if grid.wants(ExponentialEdgeClosedForm) {
        for m in 1..=grid.exponential_m_max {
            jobs.push(Box::new(move || exponential_edge(grid, m)));
        }
    }

    let mut records: Vec<AuditRecord> = jobs
        .par_iter()
        .flat_map_iter(|job| job())
        .filter(|r| grid.wants(r.formula))
        .collect();
    records.sort_by(|a, b| (a.formula, &a.params, a.tier).cmp(&(b.formula, &b.params, b.tier)));
    records
}

fn path_records(grid: &AuditGrid) -> Vec<AuditRecord> {
    let mut out = Vec::new();
    for a in 2..=grid.path_max {
        let p = params([("a", a as i64)]);
        let tree = Tree::path(a as usize).expect("a ≥ 2");
        let oracle = grid.oracle(&tree);
        let canonical = path_wiener(&BigInt::from(a)).ok().map(|v| r(&v));
        out.push(AuditRecord::compare(
            FormulaId::PathSum,
            Tier::Canonical,
            p.clone(),
            oracle.clone(),
            canonical,
        ));
        out.push(AuditRecord::compare(
            FormulaId::PathSum,
            Tier::AsPrinted,
            p,
            oracle,
            Some(printed::path_double_sum(a)),
        ));
    }
    out
}

/// Subdivision (`m = 0`, order `w`) or (w, m)-star-fractal growth of one seed.
fn edge_family(grid: &AuditGrid, seed: &SeedInfo, w: u64, m: u64) -> Vec<AuditRecord> {
    let mut out = Vec::new();
    let subdivision = m == 0;
    let family = if subdivision {
        Family::MthSubdivision { m: w as usize }
    } else {
        Family::StarFractalWm {
            w: w as usize,
            m: m as usize,
        }
    };
    let base = params([("seed", seed.index as i64), ("n", seed.tree.len() as i64)]);
    let fam_params = if subdivision {
        with(base.clone(), &[("m", w as i64)])
    } else {
        with(base.clone(), &[("w", w as i64), ("m", m as i64)])
    };
    let (s0, n0) = (&seed.wiener, &seed.order);
    let per_edge = w * (m + 1) + 1;
    let wiener = if subdivision {
        grid.wants_any(&[
            FormulaId::FirstOrderStep,
            FormulaId::FirstOrderIterated,
            FormulaId::EdgeFirstOrderIterated,
            FormulaId::MthOrderStep,
            FormulaId::MthOrderIterated,
        ])
    } else {
        grid.wants_any(&[
            FormulaId::OneMStarStep,
            FormulaId::OneMStarIterated,
            FormulaId::WmStarStepExpanded,
            FormulaId::WmStarStepCaseSum,
            FormulaId::WmStarIterated,
        ])
    };
    let mut tree = seed.tree.clone();
    let (mut s, mut n) = (s0.clone(), n0.clone());
    for t in 0..=grid.t_max {
        if t > 0 {
            let predicted = tree.len() as u64 + (tree.edge_count() as u64) * (per_edge - 1);
            if predicted as usize > grid.vertex_cap {
                out.push(AuditRecord::failed(
                    iterated_id(w, m),
                    Tier::Canonical,
                    with(fam_params.clone(), &[("t", t as i64)]),
                    format!("model would have {predicted} vertices"),
                ));
                break;
            }
            let prev = (s.clone(), n.clone(), tree);
            tree = if subdivision {
                subdivide(&prev.2, w as usize)
            } else {
                star_fractal(&prev.2, w as usize, m as usize).expect("w, m ≥ 1")
            };
            (s, n) = if subdivision {
                step_subdivision(&prev.0, &prev.1, w).expect("valid")
            } else {
                step_star_fractal(&prev.0, &prev.1, w, m).expect("valid")
            };
        }
        let tp = with(fam_params.clone(), &[("t", t as i64)]);
        if wiener {
            let oracle = if t == 0 { r(s0) } else { grid.oracle(&tree) };
            if t == 1 {
                one_step_records(&mut out, &fam_params, &oracle, s0, n0, w, m);
            }
            iterated_records(&mut out, &tp, &oracle, &s, s0, n0, w, m, t, seed);
        }
        count_records(&mut out, &tp, &tree, n0, &seed.tree, &family, t);
    }
    out
}

fn iterated_id(w: u64, m: u64) -> FormulaId {
    match (w, m) {
        (_, 0) => FormulaId::MthOrderIterated,
        (1, _) => FormulaId::OneMStarIterated,
        _ => FormulaId::WmStarIterated,
    }
}

fn one_step_records(
    out: &mut Vec<AuditRecord>,
    p: &Params,
    oracle: &ExactRatio,
    s0: &ExactInt,
    n0: &ExactInt,
    w: u64,
    m: u64,
) {
    let mut push = |id, tier, value: ExactRatio| {
        out.push(AuditRecord::compare(
            id,
            tier,
            p.clone(),
            oracle.clone(),
            Some(value),
        ));
    };
    if m == 0 {
        let canonical = r(&step_subdivision(s0, n0, w).expect("valid").0);
        if w == 1 {
            push(FormulaId::FirstOrderStep, Tier::Canonical, canonical.clone());
            push(
                FormulaId::FirstOrderStep,
                Tier::AsPrinted,
                printed::first_order_step(s0, n0),
            );
        }
        push(FormulaId::MthOrderStep, Tier::Canonical, canonical);
        push(
            FormulaId::MthOrderStep,
            Tier::AsPrinted,
            printed::mth_order_step(s0, n0, w),
        );
    } else {
        let canonical = r(&star_fractal_cases(s0, n0, w, m).total());
        if w == 1 {
            push(FormulaId::OneMStarStep, Tier::Canonical, canonical.clone());
            push(
                FormulaId::OneMStarStep,
                Tier::AsPrinted,
                printed::one_m_star_step(s0, n0, m),
            );
        }
        push(FormulaId::WmStarStepCaseSum, Tier::Canonical, canonical.clone());
        push(
            FormulaId::WmStarStepCaseSum,
            Tier::AsPrinted,
            printed::wm_star_step_case_sum(s0, n0, w, m),
        );
        push(FormulaId::WmStarStepExpanded, Tier::Canonical, canonical);
        push(
            FormulaId::WmStarStepExpanded,
            Tier::AsPrinted,
            printed::wm_star_step_expanded(s0, n0, w, m),
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn iterated_records(
    out: &mut Vec<AuditRecord>,
    p: &Params,
    oracle: &ExactRatio,
    canonical: &ExactInt,
    s0: &ExactInt,
    n0: &ExactInt,
    w: u64,
    m: u64,
    t: u32,
    seed: &SeedInfo,
) {
    let canonical = r(canonical);
    let mut push = |id, tier, p: &Params, value: Option<ExactRatio>| {
        out.push(AuditRecord::compare(id, tier, p.clone(), oracle.clone(), value));
    };
    match (w, m) {
        (_, 0) => {
            if w == 1 {
                push(
                    FormulaId::FirstOrderIterated,
                    Tier::Canonical,
                    p,
                    Some(canonical.clone()),
                );
                push(
                    FormulaId::FirstOrderIterated,
                    Tier::AsPrinted,
                    p,
                    Some(printed::first_order_iterated(s0, n0, t)),
                );
                if seed.tree.len() == 2 {
                    let ep = params([("t", t as i64)]);
                    let a = pow(2, t) + 1;
                    push(
                        FormulaId::EdgeFirstOrderIterated,
                        Tier::Canonical,
                        &ep,
                        path_wiener(&a).ok().map(|v| r(&v)),
                    );
                    push(
                        FormulaId::EdgeFirstOrderIterated,
                        Tier::AsPrinted,
                        &ep,
                        Some(printed::edge_first_order_iterated(t)),
                    );
                }
            }
            push(FormulaId::MthOrderIterated, Tier::Canonical, p, Some(canonical));
            for variant in [DenominatorVariant::SeedOrder, DenominatorVariant::Order] {
                let vp = with(p.clone(), &[("variant", variant as i64)]);
                push(
                    FormulaId::MthOrderIterated,
                    Tier::AsPrinted,
                    &vp,
                    printed::mth_order_iterated(s0, n0, w, t, variant),
                );
            }
        }
        _ => {
            if w == 1 {
                push(
                    FormulaId::OneMStarIterated,
                    Tier::Canonical,
                    p,
                    Some(canonical.clone()),
                );
                push(
                    FormulaId::OneMStarIterated,
                    Tier::AsPrinted,
                    p,
                    Some(printed::one_m_star_iterated(s0, n0, m, t)),
                );
            }
            push(FormulaId::WmStarIterated, Tier::Canonical, p, Some(canonical));
            push(
                FormulaId::WmStarIterated,
                Tier::AsPrinted,
                p,
                printed::wm_star_iterated(s0, n0, w, m, t),
            );
        }
    }
}

fn count_records(
    out: &mut Vec<AuditRecord>,
    p: &Params,
    tree: &Tree,
    n0: &ExactInt,
    seed: &Tree,
    family: &Family,
    t: u32,
) {
    let (w, m) = family.edge_operation().expect("edge family");
    let e0 = BigInt::from(seed.edge_count());
    // corrected counts by iterating the per-edge rule
    let (mut v, mut e) = (n0.clone(), e0.clone());
    for _ in 0..t {
        v += &e * BigInt::from(w * (m + 1));
        e *= BigInt::from(w * (m + 1) + 1);
    }
    let factor = pow(printed_edge_factor(family) as i64, t);
    let printed_v: ExactInt = n0 + (&factor - 1) * &e0;
    let printed_e = factor * &e0;
    let ids: &[FormulaId] = match (w, m) {
        (1, 0) => &[FormulaId::FirstOrderCounts, FormulaId::MthOrderCounts],
        (_, 0) => &[FormulaId::MthOrderCounts],
        (1, _) => &[FormulaId::OneMStarCounts, FormulaId::WmStarCounts],
        _ => &[FormulaId::WmStarCounts],
    };
    let oracle_v = ri(tree.len() as i64);
    let oracle_e = ri(tree.edge_count() as i64);
    for &id in ids {
        // the stated (w, m) edge factor differs from the construction; the
        // others are shared with their own family
        let (pv, pe) = if id == FormulaId::WmStarCounts {
            (printed_v.clone(), printed_e.clone())
        } else {
            let f: ExactInt = pow(family.edge_factor().expect("edge family") as i64, t);
            (n0 + (&f - 1) * &e0, f * &e0)
        };
        for (which, oracle, canonical, printed_value) in [(0, &oracle_v, &v, pv), (1, &oracle_e, &e, pe)] {
            let cp = with(p.clone(), &[("edges", which)]);
            out.push(AuditRecord::compare(
                id,
                Tier::Canonical,
                cp.clone(),
                oracle.clone(),
                Some(r(canonical)),
            ));
            out.push(AuditRecord::compare(
                id,
                Tier::AsPrinted,
                cp,
                oracle.clone(),
                Some(r(&printed_value)),
            ));
        }
    }
}

fn tgraph_records(grid: &AuditGrid) -> Vec<AuditRecord> {
    let mut out = Vec::new();
    let mut tree = Tree::single_edge();
    let (mut s, mut n) = (BigInt::from(1), BigInt::from(2));
    for t in 0..=grid.tgraph_t_max {
        if t > 0 {
            tree = star_fractal(&tree, 1, 1).expect("valid");
            (s, n) = step_star_fractal(&s, &n, 1, 1).expect("valid");
        }
        let p = params([("t", t as i64)]);
        let oracle = grid.oracle(&tree);
        out.push(AuditRecord::compare(
            FormulaId::TGraphClosedForm,
            Tier::Canonical,
            p.clone(),
            oracle.clone(),
            Some(r(&s)),
        ));
        out.push(AuditRecord::compare(
            FormulaId::TGraphClosedForm,
            Tier::AsPrinted,
            p,
            oracle,
            Some(printed::tgraph_closed_form(t)),
        ));
    }
    out
}

fn cayley_records(grid: &AuditGrid, n: u64) -> Vec<AuditRecord> {
    let mut out = Vec::new();
    let mut state = CayleyState::star(n);
    for t in 1..=grid.cayley_t_max {
        if t > 1 {
            state = state.step(n);
        }
        let p = params([("n", n as i64), ("t", t as i64)]);
        let tree = match grow_cayley(n as usize, t, &Seed::Star(n as usize)) {
            Ok(tree) => tree,
            Err(e) => {
                out.push(AuditRecord::failed(
                    FormulaId::CayleyClosedForm,
                    Tier::Canonical,
                    p,
                    e.to_string(),
                ));
                continue;
            }
        };
        let oracle = grid.oracle(&tree);
        let closed = printed::cayley_closed_form(n, t);
        out.push(AuditRecord::compare(
            FormulaId::CayleyClosedForm,
            Tier::Canonical,
            p.clone(),
            oracle.clone(),
            Some(r(&state.wiener)),
        ));
        out.push(AuditRecord::compare(
            FormulaId::CayleyClosedForm,
            Tier::AsPrinted,
            p.clone(),
            oracle,
            Some(closed.value),
        ));
        let order = ri(tree.len() as i64);
        out.push(AuditRecord::compare(
            FormulaId::CayleyOrder,
            Tier::Canonical,
            p.clone(),
            order.clone(),
            Some(r(&state.vertices)),
        ));
        out.push(AuditRecord::compare(
            FormulaId::CayleyOrder,
            Tier::AsPrinted,
            with(p.clone(), &[("variant", 0)]),
            order.clone(),
            Some(r(&cayley_order_closed(n as usize, t))),
        ));
        out.push(AuditRecord::compare(
            FormulaId::CayleyOrder,
            Tier::AsPrinted,
            with(p, &[("variant", 1)]),
            order,
            Some(printed::cayley_order_from_branches(n, t)),
        ));
    }
    out
}

fn cayley_general(grid: &AuditGrid, seed: &SeedInfo, n: u64) -> Vec<AuditRecord> {
    let mut out = Vec::new();
    let start = CayleyState::from_seed(&seed.tree, n).expect("checked by caller");
    let mut state = start.clone();
    let mut tree = seed.tree.clone();
    for t in 0..=grid.cayley_t_max {
        if t > 0 {
            state = state.step(n);
            tree = grow_cayley(n as usize, 1, &Seed::Explicit(tree)).expect("valid Cayley seed");
        }
        let p = params([
            ("seed", seed.index as i64),
            ("order", seed.tree.len() as i64),
            ("n", n as i64),
            ("t", t as i64),
        ]);
        let oracle = grid.oracle(&tree);
        out.push(AuditRecord::compare(
            FormulaId::CayleyGeneralSeed,
            Tier::Canonical,
            p.clone(),
            oracle.clone(),
            Some(r(&state.wiener)),
        ));
        out.push(AuditRecord::compare(
            FormulaId::CayleyGeneralSeed,
            Tier::AsPrinted,
            p,
            oracle,
            Some(printed::cayley_general_expanded(&start, n, t)),
        ));
    }
    out
}

fn exponential(grid: &AuditGrid, seed: &SeedInfo, m: u64) -> Vec<AuditRecord> {
    let mut out = Vec::new();
    let (s0, n0) = (&seed.wiener, &seed.order);
    let (mut s, mut n) = (s0.clone(), n0.clone());
    let mut tree = seed.tree.clone();
    for t in 0..=grid.exponential_t_max {
        if t > 0 {
            (s, n) = step_exponential(&s, &n, m);
            tree = grow_exponential(&tree, m as usize, 1).expect("m ≥ 1");
        }
        let p = params([
            ("seed", seed.index as i64),
            ("n", seed.tree.len() as i64),
            ("m", m as i64),
            ("t", t as i64),
        ]);
        if grid.wants(FormulaId::ExponentialClosedForm) {
            let oracle = grid.oracle(&tree);
            out.push(AuditRecord::compare(
                FormulaId::ExponentialClosedForm,
                Tier::Canonical,
                p.clone(),
                oracle.clone(),
                Some(r(&s)),
            ));
            out.push(AuditRecord::compare(
                FormulaId::ExponentialClosedForm,
                Tier::AsPrinted,
                p.clone(),
                oracle,
                Some(printed::exponential_closed_form(s0, n0, m, t)),
            ));
        }
        let order = ri(tree.len() as i64);
        out.push(AuditRecord::compare(
            FormulaId::ExponentialOrder,
            Tier::Canonical,
            p.clone(),
            order.clone(),
            Some(r(&n)),
        ));
        out.push(AuditRecord::compare(
            FormulaId::ExponentialOrder,
            Tier::AsPrinted,
            p,
            order,
            Some(r(&(pow(m as i64 + 1, t) * n0))),
        ));
    }
    out
}

fn exponential_edge(grid: &AuditGrid, m: u64) -> Vec<AuditRecord> {
    let mut out = Vec::new();
    let edge = Tree::single_edge();
    let (mut s, mut n) = (BigInt::from(1), BigInt::from(2));
    let mut tree = edge;
    for t in 0..=grid.exponential_t_max {
        if t > 0 {
            (s, n) = step_exponential(&s, &n, m);
            tree = grow_exponential(&tree, m as usize, 1).expect("m ≥ 1");
        }
        let p = params([("m", m as i64), ("t", t as i64)]);
        let oracle = grid.oracle(&tree);
        out.push(AuditRecord::compare(
            FormulaId::ExponentialEdgeClosedForm,
            Tier::Canonical,
            p.clone(),
            oracle.clone(),
            Some(r(&s)),
        ));
        out.push(AuditRecord::compare(
            FormulaId::ExponentialEdgeClosedForm,
            Tier::AsPrinted,
            p,
            oracle,
            Some(printed::exponential_edge_closed_form(m, t)),
        ));
    }
    out
}

fn mfpt_records(seed: &SeedInfo) -> Vec<AuditRecord> {
    let n = seed.tree.len();
    let p = params([("seed", seed.index as i64), ("n", n as i64)]);
    let oracle = match ordered_fpt_total(&seed.tree) {
        Ok(total) => total / ri((n * (n - 1)) as i64),
        Err(e) => {
            return vec![AuditRecord::failed(
                FormulaId::MfptFromWiener,
                Tier::Canonical,
                p,
                e.to_string(),
            )];
        }
    };
    let canonical = ExactRatio::new(BigInt::from(2) * &seed.wiener, seed.order.clone());
    vec![
        AuditRecord::compare(
            FormulaId::MfptFromWiener,
            Tier::Canonical,
            p.clone(),
            oracle.clone(),
            Some(canonical),
        ),
        AuditRecord::compare(
            FormulaId::MfptFromWiener,
            Tier::AsPrinted,
            p,
            oracle,
            Some(printed::mfpt_from_wiener(&seed.wiener, &seed.order)),
        ),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub formula: FormulaId,
    pub tier: Tier,
    pub total: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub undefined: usize,
    /// `matches / (matches + mismatches)`; `None` when nothing was defined.
    pub pass_rate: Option<f64>,
    pub first_failure: Option<Params>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ledger {
    pub entries: Vec<LedgerEntry>,
}

/// Summarises records per (formula, tier), in [`FormulaId::ALL`] order.
pub fn ledger(records: &[AuditRecord]) -> Ledger {
    let mut entries = Vec::new();
    for formula in FormulaId::ALL {
        for tier in [Tier::Canonical, Tier::AsPrinted] {
            let rs: Vec<&AuditRecord> = records
                .iter()
                .filter(|r| r.formula == formula && r.tier == tier)
                .collect();
            if rs.is_empty() {
                continue;
            }
            let count = |v| rs.iter().filter(|r| r.verdict == v).count();
            let (matches, mismatches, undefined) = (
                count(Verdict::Match),
                count(Verdict::Mismatch),
                count(Verdict::Undefined),
            );
            let defined = matches + mismatches;
            entries.push(LedgerEntry {
                formula,
                tier,
                total: rs.len(),
                matches,
                mismatches,
                undefined,
                pass_rate: (defined > 0).then(|| matches as f64 / defined as f64),
                first_failure: rs
                    .iter()
                    .find(|r| r.verdict == Verdict::Mismatch)
                    .map(|r| r.params.clone()),
            });
        }
    }
    Ledger { entries }
}

impl Ledger {
    pub fn entry(&self, formula: FormulaId, tier: Tier) -> Option<&LedgerEntry> {
        self.entries
            .iter()
            .find(|e| e.formula == formula && e.tier == tier)
    }

    /// True when every canonical formula matched at every point.
    pub fn canonical_passes(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| e.tier == Tier::Canonical)
            .all(|e| e.mismatches == 0 && e.undefined == 0)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<28} {:<10} {:>7} {:>7} {:>8} {:>6} {:>9}  first failure",
            "formula", "tier", "points", "match", "mismatch", "undef", "pass"
        );
        for e in &self.entries {
            let tier = match e.tier {
                Tier::Canonical => "canonical",
                Tier::AsPrinted => "printed",
            };
            let rate = e.pass_rate.map_or("-".to_string(), |p| format!("{p:.4}"));
            let first = e.first_failure.as_ref().map_or("-".to_string(), format_params);
            let _ = writeln!(
                s,
                "{:<28} {:<10} {:>7} {:>7} {:>8} {:>6} {:>9}  {}",
                e.formula.name(),
                tier,
                e.total,
                e.matches,
                e.mismatches,
                e.undefined,
                rate,
                first
            );
        }
        s
    }
}

pub fn format_params(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One JSON object per line.
pub fn records_to_jsonl(records: &[AuditRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).expect("records serialise"));
        s.push('\n');
    }
    s
}

/// `value` of a record formatted for text output.
pub fn display_value(v: &Option<ExactRatio>) -> String {
    v.as_ref().map_or("undefined".to_string(), ratio_to_string)
}
