//! Audit every closed form against the brute-force oracles and print the ledger.
//!
//! `cargo run --release --example formula_audit` runs the default grid;
//! pass `small` for a quick run.

use treelike::closed_forms::{FormulaId, Tier};
use treelike::verify::{audit, format_params, ledger, AuditGrid, Verdict};

fn main() {
    let grid = if std::env::args().any(|a| a == "small") {
        AuditGrid::small()
    } else {
        AuditGrid::default()
    };
    let records = audit(&grid);
    let l = ledger(&records);
    print!("{}", l.to_text());

    // the smallest counterexample for the expanded one-step star-fractal form
    if let Some(r) = records.iter().find(|r| {
        r.formula == FormulaId::WmStarStepExpanded
            && r.tier == Tier::AsPrinted
            && r.verdict == Verdict::Mismatch
    }) {
        println!(
            "\nexpanded star-fractal step at {}: formula {} vs oracle {}",
            format_params(&r.params),
            treelike::verify::display_value(&r.formula_value),
            treelike::verify::display_value(&r.oracle_value),
        );
    }
    println!("canonical tier passes: {}", l.canonical_passes());
}
