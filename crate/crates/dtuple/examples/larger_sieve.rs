//! Larger-sieve bounds on concrete sets, and the theta constants that
//! drive the sieve exponents.
//!
//! Run with:
//!
//! ```
//! cargo run --example larger_sieve
//! ```

use dtuple::arith::{euler_phi, primes_up_to};
use dtuple::sieve::{croot_elsholtz_bound, gallagher_bound, theta, SieveInstance};

fn main() {
    // perfect squares hit few residues modulo every prime
    let squares: Vec<u64> = (1..=70u64).map(|x| x * x).collect();
    let n_max = 4900;
    let q = 97;
    let inst = SieveInstance::from_set(n_max, &squares, &primes_up_to(q)).unwrap();

    let g = gallagher_bound(&inst, q).unwrap();
    println!(
        "gallagher on the {} squares in [1, {n_max}]: bound = {:.2} ({:?})",
        squares.len(),
        g.bound,
        g.verdict
    );
    let ce = croot_elsholtz_bound(&inst, q).unwrap();
    println!(
        "croot-elsholtz on the same instance:        bound = {:.2} ({:?})",
        ce.bound, ce.verdict
    );

    // theta_{k,m} against its floor k^m + phi(k) - 1 (equality at primes)
    println!("\n{:>4} {:>3} {:>16} {:>16}", "k", "m", "theta", "floor");
    for k in [3u64, 4, 12, 31] {
        for m in [1u32, 3, 5] {
            let t = theta(k, m).unwrap();
            let floor = k.pow(m) + euler_phi(k) - 1;
            println!("{:>4} {:>3} {:>16} {:>16}", k, m, t.value.to_string(), floor);
        }
    }
}
