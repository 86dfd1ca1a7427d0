//! Exact and simulated mean first-passage times.

use num_rational::BigRational;
use treelike::closed_forms::cayley_wiener;
use treelike::exact::ratio_to_string;
use treelike::growth::{grow, Family, ModelSpec};
use treelike::random_walk::{fpt_exact, mfpt, WalkConfig};
use treelike::{wiener_oracle, Tree};

fn main() -> treelike::Result<()> {
    let p3 = Tree::path(3)?;
    let to_end = fpt_exact(&p3, 0)?;
    println!(
        "P3, hitting times to vertex 0: {}",
        to_end.iter().map(ratio_to_string).collect::<Vec<_>>().join(", ")
    );

    let t2 = grow(&ModelSpec::standard(Family::TGraph, 2))?;
    for (name, tree) in [("P3", &p3), ("T-graph t=2", &t2)] {
        let rep = mfpt(tree, Some(&WalkConfig::new(7, 100_000)))?;
        let mc = rep.mc.as_ref().expect("requested");
        println!(
            "{name}: exact {}  2S/|V| {}  S/|V| {}  simulated {:.4} ± {:.4}",
            ratio_to_string(&rep.exact),
            ratio_to_string(&rep.from_wiener_2s_over_v),
            ratio_to_string(&rep.lemma_s_over_v),
            mc.mean,
            mc.std_error
        );
    }

    // commute times: F(u→v) + F(v→u) = 2(n-1) d(u, v)
    let n = t2.len();
    let (u, v) = (0, n - 1);
    let d = t2.bfs_distances(u)?.dist[v];
    let commute = &fpt_exact(&t2, v)?[u] + &fpt_exact(&t2, u)?[v];
    println!(
        "T-graph t=2, commute time between {u} and {v}: {} = 2·{}·{}",
        ratio_to_string(&commute),
        n - 1,
        d
    );

    // larger models take the exact value from the Wiener index
    let c = cayley_wiener(3, 8)?;
    let tree = grow(&ModelSpec::standard(Family::Cayley { n: 3 }, 8))?;
    let two_s_over_v =
        BigRational::from_integer(2 * wiener_oracle(&tree)) / BigRational::from_integer(tree.len().into());
    println!(
        "C(8, 3): |V| = {}, S = {}, MFPT = {}",
        tree.len(),
        ratio_to_string(&c.value),
        ratio_to_string(&two_s_over_v)
    );
    Ok(())
}
