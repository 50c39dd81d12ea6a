//! Desk-scale machinery around equal sums of like powers and the
//! singular root-matrix construction: exhaustive power-sum searches, the
//! exact 4x4 singularity identity, Leibniz factor enumeration, and the
//! greedy distinct-factor row selection with its quotient-set ledger.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::predicate::Shift;
use crate::{Error, Result};

/// Stored sums above this count abort the search instead of thrashing.
const MEMORY_GUARD: usize = 1 << 28;

fn ser_u128<S: serde::Serializer>(v: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_i128_grid<S: serde::Serializer>(
    v: &[[i128; 4]; 4],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(4))?;
    for row in v {
        let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Two disjoint sets of positive integers with equal sums of k-th
/// powers. `left` holds the overall smallest entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PowerSumSolution {
    pub k: u32,
    pub left: Vec<u64>,
    pub right: Vec<u64>,
    #[serde(serialize_with = "ser_u128")]
    pub value: u128,
}

fn canonical_pair(k: u32, first: &[u64], second: &[u64], value: u128) -> PowerSumSolution {
    let (left, right) = if first.iter().min() <= second.iter().min() {
        (first.to_vec(), second.to_vec())
    } else {
        (second.to_vec(), first.to_vec())
    };
    PowerSumSolution {
        k,
        left,
        right,
        value,
    }
}

fn side_sum(k: u32, side: &[u64]) -> Option<u128> {
    let mut total: u128 = 0;
    for &x in side {
        total = total.checked_add((x as u128).checked_pow(k)?)?;
    }
    Some(total)
}

/// All equal power-sum pairs with per-side and total term limits.
fn enumerate_solutions(
    k: u32,
    max_per_side: usize,
    height: u64,
    max_total_terms: Option<usize>,
) -> Result<Vec<PowerSumSolution>> {
    if k < 2 {
        return Err(Error::InvalidParam("power sums need k >= 2".into()));
    }
    if height < 1 {
        return Err(Error::InvalidParam("height bound must be >= 1".into()));
    }
    if max_per_side == 0 {
        return Ok(Vec::new());
    }
    if side_sum(k, &vec![height; max_per_side]).is_none() {
        return Err(Error::MemoryGuard(format!(
            "sums of {max_per_side} terms up to {height}^{k} overflow"
        )));
    }
    // count sides before enumerating them
    let mut side_count: u128 = 0;
    let mut choose: u128 = 1;
    for j in 1..=max_per_side.min(height as usize) {
        choose = choose * (height as u128 - j as u128 + 1) / j as u128;
        side_count = side_count.saturating_add(choose);
        if side_count > MEMORY_GUARD as u128 {
            return Err(Error::MemoryGuard(format!(
                "{side_count}+ candidate sides exceed the {MEMORY_GUARD} guard"
            )));
        }
    }

    // meet in the middle: bucket every side by its power sum
    let mut buckets: HashMap<u128, Vec<Vec<u64>>> = HashMap::new();
    let mut side: Vec<u64> = Vec::new();
    fn fill(
        k: u32,
        height: u64,
        max_per_side: usize,
        start: u64,
        sum: u128,
        side: &mut Vec<u64>,
        buckets: &mut HashMap<u128, Vec<Vec<u64>>>,
    ) {
        if !side.is_empty() {
            buckets.entry(sum).or_default().push(side.clone());
        }
        if side.len() == max_per_side {
            return;
        }
        for x in start..=height {
            let p = (x as u128).pow(k);
            side.push(x);
            fill(k, height, max_per_side, x + 1, sum + p, side, buckets);
            side.pop();
        }
    }
    fill(k, height, max_per_side, 1, 0, &mut side, &mut buckets);

    let mut out = Vec::new();
    for (value, sides) in buckets {
        if sides.len() < 2 {
            continue;
        }
        for i in 0..sides.len() {
            for j in i + 1..sides.len() {
                if let Some(cap) = max_total_terms {
                    if sides[i].len() + sides[j].len() > cap {
                        continue;
                    }
                }
                let disjoint = sides[i].iter().all(|x| !sides[j].contains(x));
                if disjoint {
                    out.push(canonical_pair(k, &sides[i], &sides[j], value));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Exhaustive search for equal sums of k-th powers over disjoint sides
/// of distinct entries up to the height bound, each side carrying at
/// most `max_terms_per_side` terms.
pub fn equal_power_sums(
    k: u32,
    max_terms_per_side: usize,
    height: u64,
) -> Result<Vec<PowerSumSolution>> {
    enumerate_solutions(k, max_terms_per_side, height, None)
}

/// Desk check of the power-sum conjecture: any solution found with
/// m + n < k total terms would be a counterexample.
#[derive(Clone, Debug, Serialize)]
pub struct LpsReport {
    pub k: u32,
    pub height: u64,
    pub violations: Vec<PowerSumSolution>,
    pub holds: bool,
}

pub fn lps_desk_check(k: u32, height: u64) -> Result<LpsReport> {
    if k < 2 {
        return Err(Error::InvalidParam("the conjecture concerns k >= 2".into()));
    }
    let violations = if k <= 2 {
        Vec::new() // sides are nonempty, so m + n >= 2 always
    } else {
        enumerate_solutions(k, k as usize - 2, height, Some(k as usize - 1))?
    };
    Ok(LpsReport {
        k,
        height,
        holds: violations.is_empty(),
        violations,
    })
}

/// The 4x4 value matrix with rows (u b_i + n, v b_i + n, u c_i + n, v c_i + n).
#[derive(Clone, Debug, Serialize)]
pub struct ValueMatrix {
    pub u: u64,
    pub v: u64,
    pub n: i64,
    #[serde(serialize_with = "ser_i128_grid")]
    pub entries: [[i128; 4]; 4],
}

pub fn value_matrix(u: u64, v: u64, n: Shift, b: [u64; 4], c: [u64; 4]) -> Result<ValueMatrix> {
    if u == 0 || u >= v {
        return Err(Error::InvalidParam("requires 0 < u < v".into()));
    }
    let nn = n.get() as i128;
    let mut entries = [[0i128; 4]; 4];
    for i in 0..4 {
        entries[i] = [
            u as i128 * b[i] as i128 + nn,
            v as i128 * b[i] as i128 + nn,
            u as i128 * c[i] as i128 + nn,
            v as i128 * c[i] as i128 + nn,
        ];
    }
    Ok(ValueMatrix {
        u,
        v,
        n: n.get(),
        entries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularCheck {
    #[serde(serialize_with = "ser_bigint")]
    pub det: BigInt,
    pub singular: bool,
}

/// Exact 4x4 determinant. Every `value_matrix` output is singular:
/// (v, -u, -v, u) is in the kernel by construction.
pub fn singular_check(matrix: &ValueMatrix) -> SingularCheck {
    let m: Vec<Vec<BigInt>> = matrix
        .entries
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut det = BigInt::zero();
    for (perm, sign) in permutations_signed(4) {
        let mut term = BigInt::one();
        for (r, &c) in perm.iter().enumerate() {
            term *= &m[r][c];
        }
        if sign {
            det += term;
        } else {
            det -= term;
        }
    }
    SingularCheck {
        singular: det.is_zero(),
        det,
    }
}

/// All permutations of 0..n with parity (true = even).
fn permutations_signed(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(items: &mut Vec<usize>, k: usize, even: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if k == items.len() {
            out.push((items.clone(), even));
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, even == (i == k), out);
            items.swap(k, i);
        }
    }
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    rec(&mut items, 0, true, &mut out);
    out
}

fn subsets_of_four(size: usize) -> Vec<Vec<usize>> {
    (0u32..16)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..4).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Every product (value only, sign dropped) appearing in the Leibniz
/// expansion of some fully-determined i x i submatrix.
fn partial_factors(entries: &[[Option<BigUint>; 4]; 4], size: usize) -> Vec<BigUint> {
    let mut out = Vec::new();
    let perms = permutations_signed(size);
    for rows in subsets_of_four(size) {
        'cols: for cols in subsets_of_four(size) {
            for &r in &rows {
                for &c in &cols {
                    if entries[r][c].is_none() {
                        continue 'cols;
                    }
                }
            }
            for (perm, _) in &perms {
                let mut term = BigUint::one();
                for (ri, &ci) in perm.iter().enumerate() {
                    term *= entries[rows[ri]][cols[ci]].as_ref().unwrap();
                }
                out.push(term);
            }
        }
    }
    out
}

/// The multiset of i x i factor values of a fully positive 4x4 matrix.
/// Counts per size are 16, 72, 96, 24 (208 in total).
pub fn leibniz_factors(entries: &[[u64; 4]; 4], size: usize) -> Result<Vec<BigUint>> {
    if !(1..=4).contains(&size) {
        return Err(Error::InvalidParam("factor size must be 1..=4".into()));
    }
    if entries.iter().flatten().any(|&x| x == 0) {
        return Err(Error::InvalidParam("matrix entries must be >= 1".into()));
    }
    let grid: [[Option<BigUint>; 4]; 4] =
        std::array::from_fn(|r| std::array::from_fn(|c| Some(BigUint::from(entries[r][c]))));
    let mut out = partial_factors(&grid, size);
    out.sort();
    Ok(out)
}

/// One candidate row: a stream element with its two associated values
/// (x, y) for the first four picks, (z, w) for the last four.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RowCandidate {
    pub element: u64,
    pub u_value: u64,
    pub v_value: u64,
}

/// Factor set and quotient set guarding one pick of the c-stage.
#[derive(Clone, Debug)]
pub struct FactorLedger {
    pub factors: BTreeSet<BigUint>,
    pub quotients: BTreeSet<BigRational>,
}

impl FactorLedger {
    fn from_entries(entries: &[[Option<BigUint>; 4]; 4]) -> Self {
        let mut factors: BTreeSet<BigUint> = BTreeSet::new();
        for size in 1..=4 {
            factors.extend(partial_factors(entries, size));
        }
        // S' = S with 1 adjoined; Q = S'/S'
        let mut with_one = factors.clone();
        with_one.insert(BigUint::one());
        let mut quotients = BTreeSet::new();
        for a in &with_one {
            for b in &with_one {
                quotients.insert(BigRational::new(
                    BigInt::from(a.clone()),
                    BigInt::from(b.clone()),
                ));
            }
        }
        FactorLedger { factors, quotients }
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn quotients_above_one(&self) -> usize {
        let one = BigRational::one();
        self.quotients.iter().filter(|q| **q > one).count()
    }

    /// The pick rule: z, w and w/z must all avoid the quotient set.
    pub fn admits(&self, z: u64, w: u64) -> bool {
        let zq = BigRational::from_integer(BigInt::from(z));
        let wq = BigRational::from_integer(BigInt::from(w));
        let ratio = BigRational::new(BigInt::from(w), BigInt::from(z));
        !self.quotients.contains(&zq)
            && !self.quotients.contains(&wq)
            && !self.quotients.contains(&ratio)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerStat {
    pub factor_count: usize,
    pub quotients_above_one: usize,
}

/// Outcome of a completed greedy selection.
#[derive(Clone, Debug, Serialize)]
pub struct GreedyOutcome {
    pub b_rows: Vec<RowCandidate>,
    pub c_rows: Vec<RowCandidate>,
    /// The 24 top-size factor values of the assembled matrix, sorted.
    pub four_factors: Vec<String>,
    /// Re-verified by an independent enumeration pass on success.
    pub all_distinct: bool,
    /// Ledger sizes observed at each of the four c-stage picks.
    pub ledger: Vec<LedgerStat>,
}

/// Greedy staged row selection. The b-stage takes the first candidate
/// and then the smallest candidates with x_i outside {y_1, ..., y_{i-1}};
/// the c-stage picks candidates whose values avoid the quotient set of
/// all determined factors. Each accepted pick is additionally
/// re-verified to keep every determined factor multiset duplicate-free
/// (real tuple streams get this from monotonicity of (ut+n)/(vt+n);
/// synthetic streams must have it enforced). On success the 24 top-size
/// factors are pairwise distinct, re-checked by an independent pass.
pub fn greedy_distinct_rows(
    stream: impl IntoIterator<Item = RowCandidate>,
) -> Result<GreedyOutcome> {
    let mut stream = stream.into_iter();
    let mut entries: [[Option<BigUint>; 4]; 4] = Default::default();
    let mut b_rows: Vec<RowCandidate> = Vec::new();
    let mut c_rows: Vec<RowCandidate> = Vec::new();
    let mut last_element: Option<u64> = None;
    let mut ledger_stats = Vec::new();

    let mut next_candidate = |last: &mut Option<u64>| -> Result<Option<RowCandidate>> {
        match stream.next() {
            None => Ok(None),
            Some(cand) => {
                if cand.u_value == 0 || cand.v_value == 0 {
                    return Err(Error::InvalidParam("row values must be positive".into()));
                }
                if last.is_some_and(|prev| cand.element <= prev) {
                    return Err(Error::InvalidParam(
                        "stream elements must be strictly increasing".into(),
                    ));
                }
                *last = Some(cand.element);
                Ok(Some(cand))
            }
        }
    };

    // factors of the determined part stay duplicate-free at every step
    let distinct_everywhere = |entries: &[[Option<BigUint>; 4]; 4]| -> bool {
        for size in 1..=4 {
            let multiset = partial_factors(entries, size);
            let set: BTreeSet<&BigUint> = multiset.iter().collect();
            if set.len() != multiset.len() {
                return false;
            }
        }
        true
    };

    // b-stage: fill rows 0..4 of the first two columns
    for i in 0..4 {
        loop {
            let Some(cand) = next_candidate(&mut last_element)? else {
                return Err(Error::StreamExhausted {
                    stage: "b",
                    progress: b_rows.iter().map(|r| r.element).collect(),
                });
            };
            let x = BigUint::from(cand.u_value);
            let forbidden = b_rows.iter().any(|r| r.v_value == cand.u_value);
            if i > 0 && forbidden {
                continue;
            }
            entries[i][0] = Some(x);
            entries[i][1] = Some(BigUint::from(cand.v_value));
            if i > 0 && !distinct_everywhere(&entries) {
                entries[i][0] = None;
                entries[i][1] = None;
                continue;
            }
            b_rows.push(cand);
            break;
        }
    }

    // c-stage: fill rows 0..4 of the last two columns
    for j in 0..4 {
        let ledger = FactorLedger::from_entries(&entries);
        ledger_stats.push(LedgerStat {
            factor_count: ledger.factor_count(),
            quotients_above_one: ledger.quotients_above_one(),
        });
        loop {
            let Some(cand) = next_candidate(&mut last_element)? else {
                let mut progress: Vec<u64> = b_rows.iter().map(|r| r.element).collect();
                progress.extend(c_rows.iter().map(|r| r.element));
                return Err(Error::StreamExhausted {
                    stage: "c",
                    progress,
                });
            };
            if !ledger.admits(cand.u_value, cand.v_value) {
                continue;
            }
            entries[j][2] = Some(BigUint::from(cand.u_value));
            entries[j][3] = Some(BigUint::from(cand.v_value));
            if !distinct_everywhere(&entries) {
                entries[j][2] = None;
                entries[j][3] = None;
                continue;
            }
            c_rows.push(cand);
            break;
        }
    }

    // independent re-verification of the 24 top-size factors
    let grid: [[u64; 4]; 4] = std::array::from_fn(|r| {
        [
            b_rows[r].u_value,
            b_rows[r].v_value,
            c_rows[r].u_value,
            c_rows[r].v_value,
        ]
    });
    let four = leibniz_factors(&grid, 4)?;
    let distinct: BTreeSet<&BigUint> = four.iter().collect();
    let all_distinct = distinct.len() == four.len();
    Ok(GreedyOutcome {
        b_rows,
        c_rows,
        four_factors: four.iter().map(|f| f.to_string()).collect(),
        all_distinct,
        ledger: ledger_stats,
    })
}

/// Synthetic candidate stream: strictly increasing elements with value
/// pairs drawn uniformly from [2, max_value], smaller value first.
pub fn synthetic_stream(seed: u64, len: usize, max_value: u64) -> Vec<RowCandidate> {
    use rand::prelude::*;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (1..=len as u64)
        .map(|element| {
            let a = rng.random_range(2..=max_value);
            let b = rng.random_range(2..=max_value);
            let (lo, hi) = if a == b { (a, a + 1) } else { (a.min(b), a.max(b)) };
            RowCandidate {
                element,
                u_value: lo,
                v_value: hi,
            }
        })
        .collect()
}

/// Real tuple stream: elements t with both u t + n and v t + n perfect
/// k-th powers, carrying the roots as row values.
pub fn tuple_stream(
    u: u64,
    v: u64,
    n: Shift,
    k: u32,
    range: (u64, u64),
) -> Result<Vec<RowCandidate>> {
    if u == 0 || u >= v {
        return Err(Error::InvalidParam("requires 0 < u < v".into()));
    }
    if k < 2 {
        return Err(Error::InvalidParam("tuple stream needs k >= 2".into()));
    }
    let mut out = Vec::new();
    for t in range.0.max(1)..=range.1 {
        let lo = u as i128 * t as i128 + n.get() as i128;
        let hi = v as i128 * t as i128 + n.get() as i128;
        if lo <= 0 || hi <= 0 {
            continue;
        }
        let (Some(x), Some(y)) = (
            crate::arith::is_kth_power(lo as u128, k),
            crate::arith::is_kth_power(hi as u128, k),
        ) else {
            continue;
        };
        out.push(RowCandidate {
            element: t,
            u_value: x as u64,
            v_value: y as u64,
        });
    }
    Ok(out)
}
