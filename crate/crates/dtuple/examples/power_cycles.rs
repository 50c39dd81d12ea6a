//! Four-cycles a1-a2-a3-a4 whose alternating shifted products are p1-th
//! and p2-th powers: a1*a2+n and a4*a1+n are p1-th powers, a2*a3+n and
//! a3*a4+n are p2-th powers.
//!
//! Run with:
//!
//! ```
//! cargo run --release --example power_cycles
//! ```

use dtuple::search::find_power_cycles;
use dtuple::Shift;

fn main() {
    let n = Shift::new(1).unwrap();

    let cycles = find_power_cycles((1, 120), n, 2, 2).unwrap();
    println!("square four-cycles in [1, 120] with n = 1: {}", cycles.len());
    for c in cycles.iter().take(10) {
        println!("  {:?}", c);
    }

    // mixed exponents
    let cycles = find_power_cycles((1, 500), n, 2, 3).unwrap();
    println!("\nsquare/cube four-cycles in [1, 500] with n = 1: {}", cycles.len());
    for c in &cycles {
        println!("  {:?}", c);
    }

    // large prime exponents leave nothing at desk scale
    let cycles = find_power_cycles((1, 20), n, 7, 7).unwrap();
    println!("\nseventh-power four-cycles in [1, 20] with n = 1: {}", cycles.len());
}
