//! Verify the classical quadruple {1, 3, 8, 120} and a bipartite pair.
//!
//! Run with:
//!
//! ```
//! cargo run --example verify_fermat
//! ```

use dtuple::predicate::{verify_bipartite, verify_tuple};
use dtuple::{PowerTarget, Shift};

fn main() {
    let n = Shift::new(1).unwrap();
    let report = verify_tuple(&[1, 3, 8, 120], n, PowerTarget::ExactK(2)).unwrap();
    println!("{{1, 3, 8, 120}} with n = 1, squares: holds = {}", report.holds);
    for w in &report.witnesses {
        println!(
            "  {} * {} + 1 = {} = {}^2",
            w.a,
            w.b,
            w.product_plus_n,
            w.root.unwrap()
        );
    }

    // the pair ({1, 2}, {24, 840}): all four shifted products are squares
    let bip = verify_bipartite(&[1, 2], &[24, 840], n, 2).unwrap();
    println!("\n({{1, 2}}, {{24, 840}}) bipartite with n = 1: holds = {}", bip.holds);
    for w in &bip.witnesses {
        println!(
            "  {} * {} + 1 = {} = {}^2",
            w.a,
            w.b,
            w.product_plus_n,
            w.root.unwrap()
        );
    }

    // a set that fails, with the failing pairs reported
    let bad = verify_tuple(&[1, 2, 3], n, PowerTarget::ExactK(2)).unwrap();
    println!("\n{{1, 2, 3}} with n = 1, squares: holds = {}", bad.holds);
    for w in &bad.failures {
        println!("  {} * {} + 1 = {} is not a square", w.a, w.b, w.product_plus_n);
    }
}
