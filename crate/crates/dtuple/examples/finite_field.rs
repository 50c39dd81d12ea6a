//! Finite-field models: character sums against the Vinogradov bound,
//! and exact power-residue cliques against their analytic ceiling.
//!
//! Run with:
//!
//! ```
//! cargo run --release --example finite_field
//! ```

use dtuple::ffmodel::{
    ff_clique_bound, power_residues, verify_vinogradov, CharacterTable, FiniteFieldModel,
    CHAR_SUM_TOL,
};

fn main() {
    // squares and cubes mod 13
    for k in [2u32, 3] {
        println!("{k}-th power residues mod 13: {:?}", power_residues(13, k).unwrap());
    }

    // |sum chi(ab + lambda)| <= sqrt(p |A| |B|) for every nontrivial chi
    let p = 31;
    let table = CharacterTable::build(p).unwrap();
    println!("\np = {p}, generator = {}", table.generator);
    let a: Vec<u64> = (1..16).collect();
    let b: Vec<u64> = (10..31).collect();
    for j in [1, 5, 15] {
        let rep = verify_vinogradov(&table, 7, j, &a, &b, CHAR_SUM_TOL).unwrap();
        println!(
            "  chi_{j}: |sum| = {:.4} <= {:.4} ({:?})",
            rep.quantity, rep.bound, rep.verdict
        );
    }

    // exact maximum clique with shifted products in squares-union-cubes
    println!("\npower-residue cliques, exponents {{2, 3}}, lambda = 1:");
    for p in [61u64, 127, 199] {
        let model = FiniteFieldModel::new(p, 1, vec![2, 3]).unwrap();
        let out = ff_clique_bound(&model, None).unwrap();
        println!(
            "  p = {p}: max |A| = {} <= {:.2} ({:?})",
            out.clique.len(),
            out.report.bound,
            out.report.verdict
        );
    }
}
