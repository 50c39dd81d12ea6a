//! Equal sums of like powers at desk height, and the conjecture desk
//! check that any solution with m + n < k would violate.
//!
//! Run with:
//!
//! ```
//! cargo run --release --example power_sums
//! ```

use dtuple::conjectures::{equal_power_sums, lps_desk_check};

fn main() {
    // 1729 and friends
    for (k, h) in [(2u32, 8u64), (3, 15), (4, 160)] {
        let sols = equal_power_sums(k, 2, h).unwrap();
        println!("k = {k}, entries <= {h}: {} two-term solutions", sols.len());
        for s in sols.iter().take(5) {
            println!("  {} = sum of {k}-th powers of {:?} and {:?}", s.value, s.left, s.right);
        }
    }

    // fifth powers: nothing with fewer than five total terms at height 60
    for k in [3u32, 5] {
        let report = lps_desk_check(k, 60).unwrap();
        println!(
            "\nk = {k}, height 60: solutions with m + n < {k}: {} (conjecture holds here: {})",
            report.violations.len(),
            report.holds
        );
    }
}
