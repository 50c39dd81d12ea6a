//! Exact values of f(x) and f-tilde(x): the largest tuple inside [1, x]
//! whose shifted pairwise products are all perfect powers, over shifts
//! 1 <= n <= x (resp. 1 <= |n| <= x).
//!
//! Run with:
//!
//! ```
//! cargo run --release --example f_function [X_MAX]
//! ```

use dtuple::search::compute_f;

fn main() {
    let x_max: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(30);
    println!("{:>4} {:>5} {:>8} {:>22} {:>6}", "x", "f(x)", "f~(x)", "witness", "shift");
    for x in 1..=x_max {
        let plain = compute_f(x, false, None).unwrap();
        let signed = compute_f(x, true, None).unwrap();
        println!(
            "{:>4} {:>5} {:>8} {:>22} {:>6}",
            x,
            plain.value,
            signed.value,
            format!("{:?}", signed.witness_set),
            signed.witness_shift,
        );
        assert!(signed.value >= plain.value);
    }
}
