//! Fractal, walk and spectral dimensions, scaling fits, and the scan for
//! star-fractal pairs with equal fractal dimension.

use treelike::analysis::{
    delta_v, dim_equality_scan, model_dimensions, persistence, scaling_fit, walk_dimension_identity,
};
use treelike::exact::ratio_to_string;
use treelike::growth::{Family, ModelSpec};

fn main() -> treelike::Result<()> {
    let families = [
        Family::MthSubdivision { m: 1 },
        Family::StarFractal1m { m: 2 },
        Family::StarFractalWm { w: 2, m: 3 },
        Family::TGraph,
        Family::Cayley { n: 3 },
        Family::Exponential { m: 2 },
    ];
    for f in families {
        let dims = model_dimensions(&f);
        println!(
            "{:<18} {:?}  d_w = 1 + d_f: {:?}  {:?}",
            f.name(),
            dims,
            walk_dimension_identity(&f),
            persistence(&f)
        );
    }

    println!();
    for (f, range) in [
        (Family::TGraph, 4..=12),
        (Family::MthSubdivision { m: 1 }, 4..=12),
        (Family::StarFractalWm { w: 2, m: 3 }, 3..=8),
        (Family::Cayley { n: 4 }, 3..=12),
        (Family::Exponential { m: 2 }, 3..=12),
    ] {
        let fit = scaling_fit(&ModelSpec::standard(f, 0), range)?;
        println!(
            "{:<18} {:?} fitted {:.4}  analytic {:.4}  printed {:?}  r² {:.6}",
            f.name(),
            fit.kind,
            fit.exponent,
            fit.analytic_exponent,
            fit.printed_exponent,
            fit.r_squared
        );
    }

    let dv = delta_v(&ModelSpec::standard(Family::TGraph, 8))?;
    println!(
        "\nT-graph vertex increment ratio: limit {}, at t=8 {}, usually quoted {}",
        ratio_to_string(&dv.analytic),
        dv.empirical.as_ref().map_or("-".into(), ratio_to_string),
        ratio_to_string(&dv.as_printed)
    );

    println!("\nequal-dimension triples (w, n, m) with w, n, m ≤ 20 and w ≥ 2:");
    for s in dim_equality_scan(20, 20, 20).into_iter().filter(|s| s.w >= 2) {
        println!(
            "  ({}, {}, {})  d_f = {:.6}  {:?}",
            s.w, s.n, s.m, s.dimension, s.classes
        );
    }
    Ok(())
}
