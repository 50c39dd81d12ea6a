//! Decides the shifted-product properties for explicit finite sets:
//! whether every pairwise product plus a shift lands among k-th powers
//! (`ExactK`), among powers with bounded exponent (`UpToD`), or among all
//! perfect powers (`AnyPower`), with full witness reporting. Also the
//! bipartite variant over ordered pairs and the robust pair count.

use serde::Serialize;

use crate::arith::{self, ExponentCap};
use crate::{Error, Result};

/// Which shifted-product codomain is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum PowerTarget {
    /// Exact k-th powers, k >= 2.
    ExactK(u32),
    /// Powers x^e with 2 <= e <= d.
    UpToD(u32),
    /// All perfect powers, tested up to an explicit exponent cap.
    AnyPower(u32),
}

impl PowerTarget {
    pub fn exact(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParam(format!("k must be >= 2, got {k}")));
        }
        Ok(PowerTarget::ExactK(k))
    }

    pub fn up_to(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParam(format!("d must be >= 2, got {d}")));
        }
        Ok(PowerTarget::UpToD(d))
    }

    pub fn any_power(cap: ExponentCap) -> Self {
        PowerTarget::AnyPower(cap.get())
    }

    /// Cap so that no qualifying exponent is missed for shifted products
    /// up to `max_product + |n|`.
    pub fn any_power_covering(max_product: u128, n: Shift) -> Self {
        PowerTarget::AnyPower(ExponentCap::covering(max_product + n.magnitude() as u128).get())
    }
}

/// A nonzero shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Shift(i64);

impl Shift {
    pub fn new(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParam("shift n must be nonzero".into()));
        }
        Ok(Shift(n))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn magnitude(self) -> u64 {
        self.0.unsigned_abs()
    }
}

fn ser_i128<S: serde::Serializer>(v: &i128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_u128<S: serde::Serializer>(
    v: &Option<u128>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Outcome of testing one pair against a target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub a: u64,
    pub b: u64,
    /// a*b + n; values that may exceed 64 bits serialize as decimal strings.
    #[serde(serialize_with = "ser_i128")]
    pub product_plus_n: i128,
    /// The exponent that qualified: the smallest qualifying prime for
    /// `UpToD`/`AnyPower`, or k itself for `ExactK`. Absent if the pair
    /// does not qualify.
    pub exponent: Option<u32>,
    #[serde(serialize_with = "ser_opt_u128")]
    pub root: Option<u128>,
}

impl PairWitness {
    pub fn holds(&self) -> bool {
        self.exponent.is_some()
    }
}

/// Tests whether `a*b + n` lands in the target power set. Symmetric in
/// `(a, b)`; products `<= 0` never qualify.
pub fn qualifies(a: u64, b: u64, n: Shift, target: PowerTarget) -> PairWitness {
    let product_plus_n = a as i128 * b as i128 + n.get() as i128;
    let mut witness = PairWitness {
        a,
        b,
        product_plus_n,
        exponent: None,
        root: None,
    };
    if product_plus_n <= 0 {
        return witness;
    }
    let m = product_plus_n as u128;
    let hit = match target {
        PowerTarget::ExactK(k) => arith::is_kth_power(m, k).map(|r| (k, r)),
        PowerTarget::UpToD(cap) | PowerTarget::AnyPower(cap) => {
            let cap = ExponentCap::new(cap).expect("target invariant");
            arith::smallest_power_exponent(m, cap).map(|p| (p, arith::ikroot(m, p)))
        }
    };
    if let Some((e, r)) = hit {
        witness.exponent = Some(e);
        witness.root = Some(r);
    }
    witness
}

/// Report for a whole-set check: holds iff every unordered pair of
/// distinct elements qualifies.
#[derive(Clone, Debug, Serialize)]
pub struct TupleReport {
    pub holds: bool,
    /// Sets of size <= 1 hold vacuously.
    pub vacuous: bool,
    pub witnesses: Vec<PairWitness>,
    pub failures: Vec<PairWitness>,
}

fn normalize_set(elements: &[u64]) -> Result<Vec<u64>> {
    if elements.iter().any(|&x| x == 0) {
        return Err(Error::InvalidParam("set elements must be >= 1".into()));
    }
    let mut v = elements.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// Checks the pairwise property over every unordered pair of distinct
/// elements, in lexicographic pair order.
pub fn verify_tuple(elements: &[u64], n: Shift, target: PowerTarget) -> Result<TupleReport> {
    let set = normalize_set(elements)?;
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            let w = qualifies(set[i], set[j], n, target);
            if w.holds() {
                witnesses.push(w);
            } else {
                failures.push(w);
            }
        }
    }
    Ok(TupleReport {
        holds: failures.is_empty(),
        vacuous: set.len() <= 1,
        witnesses,
        failures,
    })
}

/// Report for the bipartite property over ordered pairs A x B.
#[derive(Clone, Debug, Serialize)]
pub struct BipartiteReport {
    pub holds: bool,
    /// The property proper requires both sides to have size >= 2; smaller
    /// sides are reported on the available pairs and flagged here.
    pub degenerate: bool,
    pub witnesses: Vec<PairWitness>,
    pub failures: Vec<PairWitness>,
}

/// Checks `a*b + n` is a k-th power for every ordered pair in A x B,
/// including coincidences a = b when the sets intersect.
pub fn verify_bipartite(
    side_a: &[u64],
    side_b: &[u64],
    n: Shift,
    k: u32,
) -> Result<BipartiteReport> {
    let target = PowerTarget::exact(k)?;
    let a = normalize_set(side_a)?;
    let b = normalize_set(side_b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParam("both sides must be nonempty".into()));
    }
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for &x in &a {
        for &y in &b {
            let w = qualifies(x, y, n, target);
            if w.holds() {
                witnesses.push(w);
            } else {
                failures.push(w);
            }
        }
    }
    Ok(BipartiteReport {
        holds: failures.is_empty(),
        degenerate: a.len() < 2 || b.len() < 2,
        witnesses,
        failures,
    })
}

/// How many unordered pairs qualify, and the qualifying fraction.
#[derive(Clone, Debug, Serialize)]
pub struct RobustPairCount {
    pub count: u64,
    pub total_pairs: u64,
    /// count / C(|X|, 2) in lowest terms.
    pub delta_numer: u64,
    pub delta_denom: u64,
}

impl RobustPairCount {
    pub fn delta(&self) -> f64 {
        self.delta_numer as f64 / self.delta_denom as f64
    }
}

pub fn robust_pair_count(elements: &[u64], n: Shift, k: u32) -> Result<RobustPairCount> {
    let target = PowerTarget::exact(k)?;
    let set = normalize_set(elements)?;
    if set.len() < 2 {
        return Err(Error::Precondition("robust pair count needs |X| >= 2".into()));
    }
    let mut count = 0u64;
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            if qualifies(set[i], set[j], n, target).holds() {
                count += 1;
            }
        }
    }
    let total = (set.len() as u64) * (set.len() as u64 - 1) / 2;
    let g = num_integer::gcd(count.max(1), total);
    let (dn, dd) = if count == 0 { (0, 1) } else { (count / g, total / g) };
    Ok(RobustPairCount {
        count,
        total_pairs: total,
        delta_numer: dn,
        delta_denom: dd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn shift(n: i64) -> Shift {
        Shift::new(n).unwrap()
    }

    #[test]
    fn qualifies_examples() {
        let w = qualifies(1, 3, shift(1), PowerTarget::ExactK(2));
        assert_eq!(w.root, Some(2));
        assert_eq!(w.exponent, Some(2));

        let w = qualifies(2, 3, shift(1), PowerTarget::ExactK(2));
        assert!(!w.holds()); // 7 is not a square

        // product + n <= 0 never qualifies
        for target in [
            PowerTarget::ExactK(2),
            PowerTarget::UpToD(5),
            PowerTarget::AnyPower(10),
        ] {
            assert!(!qualifies(1, 2, shift(-3), target).holds());
        }
    }

    #[test]
    fn qualifies_is_symmetric() {
        for (a, b, n) in [(3u64, 8u64, 1i64), (17, 91, -4), (5, 5, 2), (1, 120, 1)] {
            for target in [PowerTarget::ExactK(2), PowerTarget::UpToD(7)] {
                let w1 = qualifies(a, b, shift(n), target);
                let w2 = qualifies(b, a, shift(n), target);
                assert_eq!(w1.exponent, w2.exponent);
                assert_eq!(w1.root, w2.root);
            }
        }
    }

    #[test]
    fn fermat_quadruple_holds() {
        let r = verify_tuple(&[1, 3, 8, 120], shift(1), PowerTarget::ExactK(2)).unwrap();
        assert!(r.holds);
        assert_eq!(r.witnesses.len(), 6);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn negative_shift_triple_holds() {
        // 1*2-1=1, 1*5-1=4, 2*5-1=9: all squares
        let r = verify_tuple(&[1, 2, 5], shift(-1), PowerTarget::ExactK(2)).unwrap();
        assert!(r.holds);
        assert_eq!(r.witnesses.len(), 3);
    }

    #[test]
    fn singleton_holds_vacuously() {
        let r = verify_tuple(&[7], shift(5), PowerTarget::ExactK(3)).unwrap();
        assert!(r.holds);
        assert!(r.vacuous);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn bipartite_examples() {
        // 25, 49, 841, 1681 are all squares
        let r = verify_bipartite(&[1, 2], &[24, 840], shift(1), 2).unwrap();
        assert!(r.holds);
        assert!(!r.degenerate);
        assert_eq!(r.witnesses.len(), 4);

        let r = verify_bipartite(&[1, 3], &[8], shift(1), 2).unwrap();
        assert!(r.holds);
        assert!(r.degenerate);

        let r = verify_bipartite(&[2], &[3], shift(1), 3).unwrap();
        assert!(!r.holds); // 7 is not a cube
    }

    #[test]
    fn bipartite_includes_coincidences() {
        // 2*2+1 = 5 is not a square, so overlapping sides must fail
        let r = verify_bipartite(&[2, 12], &[2, 4], shift(1), 2).unwrap();
        assert!(!r.holds);
        assert!(r.failures.iter().any(|w| w.a == 2 && w.b == 2));
    }

    #[test]
    fn exact_implies_up_to_d() {
        // monotone in the target: ExactK k qualifying implies UpToD d for d >= k
        for (set, n, k) in [
            (vec![1u64, 3, 8, 120], 1i64, 2u32),
            (vec![1, 2, 5], -1, 2),
            (vec![2, 11], 5, 3),
        ] {
            let exact = verify_tuple(&set, shift(n), PowerTarget::ExactK(k)).unwrap();
            assert!(exact.holds);
            for d in k..=k + 6 {
                let up = verify_tuple(&set, shift(n), PowerTarget::UpToD(d)).unwrap();
                assert!(up.holds, "d={d}");
            }
        }
    }

    #[test]
    fn bipartite_diagonal_implies_tuple() {
        let sets: [&[u64]; 2] = [&[1, 3, 8, 120], &[1, 2, 5]];
        let shifts = [1i64, -1];
        for (set, nv) in sets.iter().zip(shifts) {
            let bip = verify_bipartite(set, set, shift(nv), 2).unwrap();
            if bip.holds {
                let tup = verify_tuple(set, shift(nv), PowerTarget::ExactK(2)).unwrap();
                assert!(tup.holds);
            }
        }
    }

    #[test]
    fn robust_count_examples() {
        let r = robust_pair_count(&[1, 3, 8, 120], shift(1), 2).unwrap();
        assert_eq!(r.count, 6);
        assert_eq!((r.delta_numer, r.delta_denom), (1, 1));

        // only 1*3+1 = 4 qualifies among the three pairs
        let r = robust_pair_count(&[1, 2, 3], shift(1), 2).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!((r.delta_numer, r.delta_denom), (1, 3));

        // all products + n <= 0
        let r = robust_pair_count(&[1, 2, 3], shift(-100), 2).unwrap();
        assert_eq!(r.count, 0);
    }

    /// Oracle: the set of perfect powers up to a limit, built by plain
    /// enumeration of x^e, together with the smallest prime exponent.
    fn enumerated_powers(limit: u128) -> HashMap<u128, u32> {
        let mut table = HashMap::new();
        table.insert(1u128, 2u32);
        for e in 2..=(128 - limit.leading_zeros()) {
            let mut x: u128 = 2;
            while let Some(v) = x.checked_pow(e) {
                if v > limit {
                    break;
                }
                if arith::is_prime(e as u64) {
                    table.entry(v).or_insert(e);
                }
                x += 1;
            }
        }
        table
    }

    #[test]
    fn any_power_matches_enumeration_oracle() {
        let limit = 500u128 * 500 + 50;
        let oracle = enumerated_powers(limit);
        let cap = ExponentCap::covering(limit);
        for a in 1..=500u64 {
            for b in a..=500 {
                for n in [-50i64, -17, -2, -1, 1, 2, 17, 50] {
                    let w = qualifies(a, b, shift(n), PowerTarget::AnyPower(cap.get()));
                    let s = a as i128 * b as i128 + n as i128;
                    let want = if s <= 0 { None } else { oracle.get(&(s as u128)).copied() };
                    assert_eq!(w.exponent, want, "a={a} b={b} n={n}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn qualifies_symmetry(a in 1u64..10_000, b in 1u64..10_000, n in -500i64..500, k in 2u32..8) {
            prop_assume!(n != 0);
            let w1 = qualifies(a, b, shift(n), PowerTarget::ExactK(k));
            let w2 = qualifies(b, a, shift(n), PowerTarget::ExactK(k));
            prop_assert_eq!(w1.exponent, w2.exponent);
        }
    }
}
