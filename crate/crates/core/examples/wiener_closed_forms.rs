//! Wiener indices by closed form next to the breadth-first oracle.

use treelike::closed_forms::{cayley_wiener, printed, star_fractal_cases, tgraph_wiener, wiener_sequence};
use treelike::exact::{int, ratio_to_string};
use treelike::growth::{grow, Family, ModelSpec};
use treelike::wiener_oracle;

fn main() -> treelike::Result<()> {
    println!("T-graph");
    for t in 0..=5 {
        let tree = grow(&ModelSpec::standard(Family::TGraph, t))?;
        println!(
            "  t={t}  closed form {:>8}  oracle {:>8}",
            ratio_to_string(&tgraph_wiener(t)),
            wiener_oracle(&tree)
        );
    }

    // the seven pair classes of one (w, m)-star-fractal step from an edge
    let cases = star_fractal_cases(&int(1), &int(2), 2, 3);
    println!("\n(2,3)-star-fractal step on an edge, by pair class:\n  {cases:?}");
    let tree = grow(&ModelSpec::standard(Family::StarFractalWm { w: 2, m: 3 }, 1))?;
    println!("  total {}  oracle {}", cases.total(), wiener_oracle(&tree));
    println!(
        "  expanded printed form {}  grouped printed form {}",
        ratio_to_string(&printed::wm_star_step_expanded(&int(1), &int(2), 2, 3)),
        ratio_to_string(&printed::wm_star_step_case_sum(&int(1), &int(2), 2, 3)),
    );

    println!("\nCayley trees C(t, n)");
    for n in 3..=5u64 {
        for t in 1..=4 {
            let c = cayley_wiener(n, t)?;
            let tree = grow(&ModelSpec::standard(Family::Cayley { n: n as usize }, t))?;
            println!(
                "  n={n} t={t}  closed {:>8}  recursion {:>8}  oracle {:>8}  (A={} theta={} omega12={} gamma={})",
                ratio_to_string(&c.value),
                c.recursion,
                wiener_oracle(&tree),
                ratio_to_string(&c.branch_order),
                ratio_to_string(&c.theta),
                ratio_to_string(&c.omega12),
                ratio_to_string(&c.gamma),
            );
        }
    }

    println!("\nexponential tree, m=1, from an edge");
    let spec = ModelSpec::standard(Family::Exponential { m: 1 }, 8);
    for p in wiener_sequence(&spec)? {
        println!(
            "  t={}  |V|={:>4}  S={:>8}  closed form {}",
            p.step,
            p.vertices,
            p.wiener,
            ratio_to_string(&printed::exponential_edge_closed_form(1, p.step))
        );
    }
    Ok(())
}
