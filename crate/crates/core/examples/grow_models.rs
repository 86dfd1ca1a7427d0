//! Grow one model of every family and compare its size with the predicted
//! counts, then print the T-graph at t = 2 as DOT.

use treelike::growth::{grow, predicted_counts, Family, ModelSpec};
use treelike::{diameter, wiener_oracle};

fn main() -> treelike::Result<()> {
    let specs = [
        ModelSpec::standard(Family::FirstOrderSubdivision, 4),
        ModelSpec::standard(Family::MthSubdivision { m: 2 }, 3),
        ModelSpec::standard(Family::StarFractal1m { m: 2 }, 3),
        ModelSpec::standard(Family::StarFractalWm { w: 2, m: 1 }, 3),
        ModelSpec::standard(Family::TGraph, 4),
        ModelSpec::standard(Family::Cayley { n: 4 }, 3),
        ModelSpec::standard(Family::Exponential { m: 2 }, 3),
        "family=star_fractal w=1 m=2 seed=tree:5:0-1,1-2,1-3,3-4 t=2".parse()?,
    ];
    println!(
        "{:<58} {:>7} {:>7} {:>5} {:>10}",
        "model", "|V|", "|E|", "diam", "wiener"
    );
    for spec in &specs {
        let tree = grow(spec)?;
        let predicted = predicted_counts(spec)?;
        let last = predicted.corrected.steps.last().expect("nonempty");
        assert_eq!(last.vertices, tree.len().into());
        assert_eq!(last.edges, tree.edge_count().into());
        println!(
            "{:<58} {:>7} {:>7} {:>5} {:>10}",
            spec.to_string(),
            tree.len(),
            tree.edge_count(),
            diameter(&tree),
            wiener_oracle(&tree)
        );
    }

    // the stated closed-form count for the (2, 1) star-fractal
    let spec = ModelSpec::standard(Family::StarFractalWm { w: 2, m: 1 }, 1);
    let p = predicted_counts(&spec)?;
    let stated = p.as_printed.expect("edge family");
    println!(
        "\n(2,1)-star-fractal after one step: {} edges generated, stated closed form gives {}",
        p.corrected.steps[1].edges, stated.steps[1].edges
    );

    println!("\n{}", grow(&ModelSpec::standard(Family::TGraph, 2))?.to_dot());
    Ok(())
}
