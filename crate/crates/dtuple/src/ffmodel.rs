//! Finite-field analogues of (bipartite) Diophantine tuples, and
//! numerical verification of the character-sum inequalities they rest
//! on: the Vinogradov double sum, the power-residue clique bound, the
//! Weil-model common-neighborhood bound, and the Karatsuba-type
//! asymmetric estimate with its corollary.
//!
//! Character sums run in double-precision complex arithmetic; verdicts
//! carry an absolute tolerance of `CHAR_SUM_TOL`. Discrete-log tables
//! keep p below `MAX_PRIME` so they stay in memory.

use std::collections::BTreeSet;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{self, mul_mod, pow_mod};
use crate::report::BoundReport;
use crate::search::clique::{self, BitGraph};
use crate::{Error, Result};

/// Absolute tolerance on character-sum verdicts.
pub const CHAR_SUM_TOL: f64 = 1e-6;

/// Largest prime a character table will be built for.
pub const MAX_PRIME: u64 = 1_000_000;

/// A prime p, a shift in F_p^*, and the power exponents in force.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteFieldModel {
    pub p: u64,
    pub lambda: u64,
    pub exponents: Vec<u64>,
}

impl FiniteFieldModel {
    pub fn new(p: u64, lambda: u64, exponents: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if lambda % p == 0 {
            return Err(Error::InvalidParam("lambda must be nonzero mod p".into()));
        }
        Ok(FiniteFieldModel {
            p,
            lambda: lambda % p,
            exponents,
        })
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidParam(format!("{p} is not prime")));
    }
    if p > MAX_PRIME {
        return Err(Error::InvalidParam(format!(
            "p = {p} exceeds the table cap {MAX_PRIME}"
        )));
    }
    Ok(())
}

/// Smallest primitive root mod p.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = arith::factorize(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

/// Discrete-log table over a fixed primitive root; multiplicative
/// characters are read off as roots of unity in the exponent.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub p: u64,
    pub generator: u64,
    pub order: u64,
    dlog: Vec<u32>,
}

impl CharacterTable {
    pub fn build(p: u64) -> Result<Self> {
        check_prime(p)?;
        let generator = primitive_root(p);
        let mut dlog = vec![0u32; p as usize];
        let mut acc = 1u64;
        for e in 0..p - 1 {
            dlog[acc as usize] = e as u32;
            acc = mul_mod(acc, generator, p);
        }
        Ok(CharacterTable {
            p,
            generator,
            order: p - 1,
            dlog,
        })
    }

    /// Discrete log of x in F_p^*; none for x = 0.
    pub fn dlog(&self, x: u64) -> Option<u64> {
        let x = x % self.p;
        (x != 0).then(|| u64::from(self.dlog[x as usize]))
    }

    /// chi_j(x) = e^{2 pi i j dlog(x) / (p-1)}; zero at x = 0.
    pub fn char_value(&self, j: u64, x: u64) -> Complex64 {
        assert!(j < self.order, "character index must lie below p-1");
        match self.dlog(x) {
            None => Complex64::new(0.0, 0.0),
            Some(e) => {
                let t = (j as u128 * e as u128 % self.order as u128) as f64;
                let angle = 2.0 * std::f64::consts::PI * t / self.order as f64;
                Complex64::new(angle.cos(), angle.sin())
            }
        }
    }

    pub fn char_order(&self, j: u64) -> u64 {
        self.order / num_integer::gcd(j, self.order)
    }

    /// Unit roots indexed by exponent, so sums can use table lookups.
    fn unit_roots(&self) -> Vec<Complex64> {
        (0..self.order)
            .map(|t| {
                let angle = 2.0 * std::f64::consts::PI * t as f64 / self.order as f64;
                Complex64::new(angle.cos(), angle.sin())
            })
            .collect()
    }
}

/// The k-th power residues {x^k mod p : x in F_p}, including 0, sorted.
pub fn power_residues(p: u64, k: u32) -> Result<Vec<u64>> {
    check_prime(p)?;
    if k < 2 {
        return Err(Error::InvalidParam("power residues need k >= 2".into()));
    }
    let set: BTreeSet<u64> = (0..p).map(|x| pow_mod(x, u64::from(k), p)).collect();
    Ok(set.into_iter().collect())
}

fn reduce_set(p: u64, set: &[u64], allow_zero: bool, name: &str) -> Result<Vec<u64>> {
    let mut out: Vec<u64> = set.iter().map(|&x| x % p).collect();
    out.sort_unstable();
    out.dedup();
    if !allow_zero && out.first() == Some(&0) {
        return Err(Error::InvalidParam(format!("{name} must avoid 0 mod p")));
    }
    Ok(out)
}

fn nontrivial(table: &CharacterTable, j: u64) -> Result<()> {
    if j == 0 || j >= table.order {
        return Err(Error::InvalidParam(
            "trivial character rejected; need 0 < j < p-1".into(),
        ));
    }
    Ok(())
}

/// |sum_{a in A, b in B} chi(ab + lambda)| <= sqrt(p |A| |B|) for a
/// nontrivial character and A, B inside F_p^*.
pub fn verify_vinogradov(
    table: &CharacterTable,
    lambda: u64,
    j: u64,
    set_a: &[u64],
    set_b: &[u64],
    tol: f64,
) -> Result<BoundReport> {
    nontrivial(table, j)?;
    let p = table.p;
    if lambda % p == 0 {
        return Err(Error::InvalidParam("lambda must be nonzero mod p".into()));
    }
    let a = reduce_set(p, set_a, false, "A")?;
    let b = reduce_set(p, set_b, false, "B")?;
    let roots = table.unit_roots();
    let mut sum = Complex64::new(0.0, 0.0);
    for &x in &a {
        for &y in &b {
            let arg = (mul_mod(x, y, p) + lambda) % p;
            if let Some(e) = table.dlog(arg) {
                sum += roots[(j as u128 * e as u128 % table.order as u128) as usize];
            }
        }
    }
    let rhs = ((p as f64) * a.len() as f64 * b.len() as f64).sqrt();
    Ok(BoundReport::checked(
        "vinogradov double character sum",
        sum.norm(),
        rhs,
        tol,
    ))
}

/// Exact clique bound in the finite-field model: the largest A inside
/// F_p^* with every pairwise shifted product in the union of the given
/// power-residue sets, checked against (2^m sqrt(p) + 2) prod (1 - 1/p_i)^{-1}.
#[derive(Clone, Debug, Serialize)]
pub struct FfCliqueBound {
    pub report: BoundReport,
    pub clique: Vec<u64>,
    pub exhaustive: bool,
}

pub fn ff_clique_bound(
    model: &FiniteFieldModel,
    deadline: Option<Instant>,
) -> Result<FfCliqueBound> {
    let p = model.p;
    let mut primes = model.exponents.clone();
    primes.sort_unstable();
    primes.dedup();
    for &q in &primes {
        if !arith::is_prime(q) {
            return Err(Error::InvalidParam(format!("exponent {q} is not prime")));
        }
        if (p - 1) % q != 0 {
            return Err(Error::Precondition(format!(
                "p = {p} is not 1 mod {q}; the power residues would be all of F_p"
            )));
        }
    }

    // union of the power-residue sets, as a membership table
    let mut in_union = vec![false; p as usize];
    for &q in &primes {
        for x in 0..p {
            in_union[pow_mod(x, q, p) as usize] = true;
        }
    }

    let verts: Vec<u64> = (1..p).collect();
    let mut g = BitGraph::new(verts.len());
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let val = (mul_mod(verts[i], verts[j], p) + model.lambda) % p;
            if in_union[val as usize] {
                g.add_edge(i, j);
            }
        }
    }
    let (best, exhaustive) = clique::max_clique_in(&g, None, deadline);
    let clique: Vec<u64> = best.iter().map(|&i| verts[i]).collect();

    let m = primes.len() as u32;
    let mut bound = (2f64.powi(m as i32) * (p as f64).sqrt() + 2.0)
        * primes
            .iter()
            .map(|&q| 1.0 / (1.0 - 1.0 / q as f64))
            .product::<f64>();
    if primes.is_empty() {
        bound = (p as f64).sqrt() + 2.0;
    }
    let report = if exhaustive {
        BoundReport::checked(
            "power-residue clique bound",
            clique.len() as f64,
            bound,
            CHAR_SUM_TOL,
        )
    } else {
        BoundReport::unchecked("power-residue clique bound", clique.len() as f64, bound)
            .with_note("clique search timed out; size is only a lower bound")
    };
    Ok(FfCliqueBound {
        report,
        clique,
        exhaustive,
    })
}

/// The set B = {b in F_p : ab + lambda is a d-th power for all a in A},
/// computed exactly and checked against |B| <= p/d^m + m sqrt(p).
#[derive(Clone, Debug, Serialize)]
pub struct WeilModelB {
    pub report: BoundReport,
    pub b_set: Vec<u64>,
}

pub fn weil_model_b(p: u64, d: u32, lambda: u64, set_a: &[u64], tol: f64) -> Result<WeilModelB> {
    check_prime(p)?;
    if d < 2 {
        return Err(Error::Precondition("weil model needs d >= 2".into()));
    }
    if (p - 1) % u64::from(d) != 0 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod {d}")));
    }
    if lambda % p == 0 {
        return Err(Error::InvalidParam("lambda must be nonzero mod p".into()));
    }
    let a = reduce_set(p, set_a, false, "A")?;
    let residues = power_residues(p, d)?;
    let is_power = {
        let mut v = vec![false; p as usize];
        for &r in &residues {
            v[r as usize] = true;
        }
        v
    };
    let b_set: Vec<u64> = (0..p)
        .filter(|&b| {
            a.iter()
                .all(|&x| is_power[((mul_mod(x, b, p) + lambda) % p) as usize])
        })
        .collect();
    let m = a.len() as f64;
    let bound = p as f64 / (d as f64).powf(m) + m * (p as f64).sqrt();
    Ok(WeilModelB {
        report: BoundReport::checked(
            "weil common-neighborhood bound",
            b_set.len() as f64,
            bound,
            tol,
        ),
        b_set,
    })
}

/// Karatsuba-type asymmetric double sum: for nontrivial chi, A inside
/// F_p, B inside F_p^*, and any nu >= 1,
/// |sum chi(ab+lambda)| <= |B|^{(2nu-1)/2nu} (2nu |A|^{2nu} sqrt(p) + (2nu)^nu |A|^nu p)^{1/2nu}.
pub fn verify_karatsuba(
    table: &CharacterTable,
    lambda: u64,
    set_a: &[u64],
    set_b: &[u64],
    nu: u32,
    j: u64,
    tol: f64,
) -> Result<BoundReport> {
    nontrivial(table, j)?;
    if nu < 1 {
        return Err(Error::InvalidParam("nu must be >= 1".into()));
    }
    let p = table.p;
    if lambda % p == 0 {
        return Err(Error::InvalidParam("lambda must be nonzero mod p".into()));
    }
    let a = reduce_set(p, set_a, true, "A")?;
    let b = reduce_set(p, set_b, false, "B")?;
    let roots = table.unit_roots();
    let mut sum = Complex64::new(0.0, 0.0);
    for &x in &a {
        for &y in &b {
            let arg = (mul_mod(x, y, p) + lambda) % p;
            if let Some(e) = table.dlog(arg) {
                sum += roots[(j as u128 * e as u128 % table.order as u128) as usize];
            }
        }
    }
    let two_nu = 2.0 * f64::from(nu);
    let asize = a.len() as f64;
    let bsize = b.len() as f64;
    let inner = two_nu * asize.powf(two_nu) * (p as f64).sqrt()
        + two_nu.powf(f64::from(nu)) * asize.powf(f64::from(nu)) * p as f64;
    let rhs = bsize.powf((two_nu - 1.0) / two_nu) * inner.powf(1.0 / two_nu);
    Ok(BoundReport::checked(
        "karatsuba asymmetric character sum",
        sum.norm(),
        rhs,
        tol,
    ))
}

/// Maximal B with all shifted products k-th powers against a large A:
/// when gcd(k, p-1) > 1 and |A| >= 2 nu p^{1/2nu}, |B| <= 12 nu sqrt(p).
/// Undersized A yields an inapplicable report rather than a verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CorKbReport {
    pub report: BoundReport,
    pub b_size: usize,
}

pub fn check_cor_kb(
    p: u64,
    k: u32,
    lambda: u64,
    set_a: &[u64],
    nu: u32,
    tol: f64,
) -> Result<CorKbReport> {
    check_prime(p)?;
    if k < 2 {
        return Err(Error::InvalidParam("cor-kb needs k >= 2".into()));
    }
    if nu < 1 {
        return Err(Error::InvalidParam("nu must be >= 1".into()));
    }
    let d = num_integer::gcd(u64::from(k), p - 1);
    if d == 1 {
        return Err(Error::Precondition(format!(
            "gcd(k, p-1) = 1: every element of F_p is a k-th power"
        )));
    }
    if lambda % p == 0 {
        return Err(Error::InvalidParam("lambda must be nonzero mod p".into()));
    }
    let a = reduce_set(p, set_a, true, "A")?;
    let threshold = 2.0 * f64::from(nu) * (p as f64).powf(1.0 / (2.0 * f64::from(nu)));
    if (a.len() as f64) < threshold {
        return Ok(CorKbReport {
            report: BoundReport::inapplicable(
                "large-A power bound",
                format!("|A| = {} is below 2 nu p^(1/2nu) = {threshold:.3}", a.len()),
            ),
            b_size: 0,
        });
    }
    let residues = power_residues(p, k)?;
    let is_power = {
        let mut v = vec![false; p as usize];
        for &r in &residues {
            v[r as usize] = true;
        }
        v
    };
    let b_size = (0..p)
        .filter(|&b| {
            a.iter()
                .all(|&x| is_power[((mul_mod(x, b, p) + lambda) % p) as usize])
        })
        .count();
    let bound = 12.0 * f64::from(nu) * (p as f64).sqrt();
    Ok(CorKbReport {
        report: BoundReport::checked("large-A power bound", b_size as f64, bound, tol),
        b_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    #[test]
    fn power_residue_examples() {
        assert_eq!(power_residues(7, 3).unwrap(), vec![0, 1, 6]);
        assert_eq!(power_residues(5, 2).unwrap(), vec![0, 1, 4]);
        // gcd(k, p-1) = 1 makes the power map a bijection
        assert_eq!(power_residues(7, 5).unwrap(), (0..7).collect::<Vec<u64>>());
        assert_eq!(power_residues(7, 2).unwrap(), vec![0, 1, 2, 4]);
    }

    #[test]
    fn power_residues_reduce_to_gcd() {
        for p in [7u64, 13, 31, 61] {
            for k in 2..=12u32 {
                let d = num_integer::gcd(u64::from(k), p - 1) as u32;
                if d >= 2 {
                    assert_eq!(
                        power_residues(p, k).unwrap(),
                        power_residues(p, d).unwrap(),
                        "p={p} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn table_round_trip() {
        for p in [3u64, 7, 13, 101, 997] {
            let t = CharacterTable::build(p).unwrap();
            for x in 1..p {
                let e = t.dlog(x).unwrap();
                assert_eq!(pow_mod(t.generator, e, p), x, "p={p} x={x}");
            }
        }
    }

    #[test]
    fn trivial_character_is_one() {
        let t = CharacterTable::build(13).unwrap();
        for x in 1..13 {
            let v = t.char_value(0, x);
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        assert_eq!(t.char_value(0, 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn characters_are_multiplicative() {
        let t = CharacterTable::build(101).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let j = rng.random_range(0..t.order);
            let x = rng.random_range(1..101);
            let y = rng.random_range(1..101);
            let lhs = t.char_value(j, mul_mod(x, y, 101));
            let rhs = t.char_value(j, x) * t.char_value(j, y);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn order_two_character_is_legendre() {
        let t = CharacterTable::build(7).unwrap();
        let j = (7 - 1) / 2;
        assert_eq!(t.char_order(j), 2);
        // quadratic residues mod 7 are {1, 2, 4}
        for (x, want) in [(1u64, 1.0), (2, 1.0), (3, -1.0), (4, 1.0), (5, -1.0), (6, -1.0)] {
            let v = t.char_value(j, x);
            assert!((v.re - want).abs() < 1e-12 && v.im.abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn orthogonality_picks_out_power_residues() {
        // sum_{j<d} chi^j(x) = d exactly on the nonzero d-th powers
        for (p, d) in [(13u64, 3u64), (13, 4), (31, 5), (29, 2)] {
            let t = CharacterTable::build(p).unwrap();
            let j0 = (p - 1) / d;
            assert_eq!(t.char_order(j0), d);
            let powers = power_residues(p, d as u32).unwrap();
            for x in 1..p {
                let total: Complex64 = (0..d).map(|r| t.char_value(j0 * r % (p - 1), x)).sum();
                let expect = if powers.binary_search(&x).is_ok() { d as f64 } else { 0.0 };
                assert!(
                    (total - Complex64::new(expect, 0.0)).norm() < 1e-9,
                    "p={p} d={d} x={x} total={total}"
                );
            }
        }
    }

    #[test]
    fn vinogradov_examples() {
        let t = CharacterTable::build(11).unwrap();
        // empty side: zero sum
        let r = verify_vinogradov(&t, 1, 3, &[], &[1, 2, 3], CHAR_SUM_TOL).unwrap();
        assert_eq!(r.quantity, 0.0);
        assert!(r.holds());

        // full multiplicative group, every nontrivial character
        let full: Vec<u64> = (1..11).collect();
        for j in 1..10 {
            let r = verify_vinogradov(&t, 1, j, &full, &full, CHAR_SUM_TOL).unwrap();
            assert!(r.holds(), "j={j}: {r:?}");
        }

        // trivial character rejected
        assert!(verify_vinogradov(&t, 1, 0, &full, &full, CHAR_SUM_TOL).is_err());
    }

    #[test]
    fn vinogradov_random_sweep_small() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for p in [5u64, 7, 11, 13] {
            let t = CharacterTable::build(p).unwrap();
            for _ in 0..50 {
                let j = rng.random_range(1..p - 1);
                let lambda = rng.random_range(1..p);
                let a: Vec<u64> = (1..p).filter(|_| rng.random_bool(0.5)).collect();
                let b: Vec<u64> = (1..p).filter(|_| rng.random_bool(0.5)).collect();
                let r = verify_vinogradov(&t, lambda, j, &a, &b, CHAR_SUM_TOL).unwrap();
                assert!(r.holds(), "p={p} {r:?}");
            }
        }
    }

    #[test]
    fn ff_clique_examples() {
        // p=7, squares {0,1,2,4}: bound (2 sqrt 7 + 2) * 2
        let model = FiniteFieldModel::new(7, 1, vec![2]).unwrap();
        let out = ff_clique_bound(&model, None).unwrap();
        assert!(out.exhaustive);
        assert!(out.report.holds(), "{out:?}");
        let expect = (2.0 * 7f64.sqrt() + 2.0) * 2.0;
        assert!((out.report.bound - expect).abs() < 1e-9);

        // p=13 with primes {2,3}
        let model = FiniteFieldModel::new(13, 1, vec![2, 3]).unwrap();
        let out = ff_clique_bound(&model, None).unwrap();
        assert!(out.report.holds());
        let expect = (4.0 * 13f64.sqrt() + 2.0) * 2.0 * 1.5;
        assert!((out.report.bound - expect).abs() < 1e-9);

        // empty exponent list: no edges at all
        let model = FiniteFieldModel::new(13, 1, vec![]).unwrap();
        let out = ff_clique_bound(&model, None).unwrap();
        assert!(out.clique.len() <= 1);
        assert!(out.report.holds());

        // divisibility precondition
        let model = FiniteFieldModel::new(7, 1, vec![5]).unwrap();
        assert!(ff_clique_bound(&model, None).is_err());
    }

    #[test]
    fn ff_clique_matches_brute_force() {
        // brute-force subset check on a tiny field
        let model = FiniteFieldModel::new(13, 2, vec![2]).unwrap();
        let out = ff_clique_bound(&model, None).unwrap();
        let residues = power_residues(13, 2).unwrap();
        let ok = |a: u64, b: u64| residues.binary_search(&((a * b + 2) % 13)).is_ok();
        let mut best = 0;
        for mask in 0u32..(1 << 12) {
            let set: Vec<u64> = (0..12).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            if set.len() > best
                && (0..set.len()).all(|i| (i + 1..set.len()).all(|j| ok(set[i], set[j])))
            {
                best = set.len();
            }
        }
        assert_eq!(out.clique.len(), best);
    }

    #[test]
    fn weil_examples() {
        // p=13, d=3, A={1}: B = {b : b+1 is a cube} = {0, 4, 7, 11, 12}
        let out = weil_model_b(13, 3, 1, &[1], CHAR_SUM_TOL).unwrap();
        assert_eq!(out.b_set, vec![0, 4, 7, 11, 12]);
        assert!(out.report.holds());

        // empty A: every b qualifies vacuously, bound is exactly p
        let out = weil_model_b(13, 3, 1, &[], CHAR_SUM_TOL).unwrap();
        assert_eq!(out.b_set.len(), 13);
        assert_eq!(out.report.bound, 13.0);
        assert!(out.report.holds());

        assert!(weil_model_b(5, 3, 1, &[1], CHAR_SUM_TOL).is_err()); // 5 is not 1 mod 3
    }

    #[test]
    fn karatsuba_examples() {
        let t = CharacterTable::build(31).unwrap();
        let r = verify_karatsuba(&t, 1, &[], &[1, 2, 3], 2, 5, CHAR_SUM_TOL).unwrap();
        assert_eq!(r.quantity, 0.0);
        assert!(r.holds());

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for p in [11u64, 31, 97] {
            let t = CharacterTable::build(p).unwrap();
            for nu in 1..=3 {
                for _ in 0..20 {
                    let j = rng.random_range(1..p - 1);
                    let lambda = rng.random_range(1..p);
                    let a: Vec<u64> = (0..p).filter(|_| rng.random_bool(0.3)).collect();
                    let b: Vec<u64> = (1..p).filter(|_| rng.random_bool(0.3)).collect();
                    let r = verify_karatsuba(&t, lambda, &a, &b, nu, j, CHAR_SUM_TOL).unwrap();
                    assert!(r.holds(), "p={p} nu={nu}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn karatsuba_nu_one_against_vinogradov() {
        // both bounds hold simultaneously on a shared instance
        let t = CharacterTable::build(61).unwrap();
        let a: Vec<u64> = (1..20).collect();
        let b: Vec<u64> = (5..40).collect();
        let vin = verify_vinogradov(&t, 7, 3, &a, &b, CHAR_SUM_TOL).unwrap();
        let kar = verify_karatsuba(&t, 7, &a, &b, 1, 3, CHAR_SUM_TOL).unwrap();
        assert!(vin.holds() && kar.holds());
        assert!((vin.quantity - kar.quantity).abs() < 1e-9);
    }

    #[test]
    fn cor_kb_examples() {
        // p=13, k=2, nu=1: need |A| >= 2 sqrt(13) ~ 7.2, so 8 elements
        let a: Vec<u64> = (1..=8).collect();
        let out = check_cor_kb(13, 2, 1, &a, 1, CHAR_SUM_TOL).unwrap();
        assert!(out.report.holds(), "{out:?}");
        assert!(out.report.bound <= 12.0 * 13f64.sqrt() + 1e-9);

        // undersized A: not applicable, no verdict
        let out = check_cor_kb(13, 2, 1, &[1, 2], 1, CHAR_SUM_TOL).unwrap();
        assert_eq!(out.report.verdict, crate::Verdict::Inapplicable);

        // gcd(k, p-1) = 1 rejected
        assert!(check_cor_kb(13, 5, 1, &(1..=8).collect::<Vec<u64>>(), 1, CHAR_SUM_TOL).is_err());
    }
}
