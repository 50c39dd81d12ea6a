//! Command-line dispatch. Every subcommand prints a single JSON result
//! envelope; exit codes are 0 (success), 1 (a checked property or
//! inequality failed), 2 (usage error), 3 (timeout / non-exhaustive
//! search).

mod support;

pub use support::{Cache, ResultEnvelope, RunConfig, CACHE_DIR_ENV, ENVELOPE_VERSION};

use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::{self, ExponentCap};
use crate::predicate::{self, PowerTarget, Shift};
use crate::report::Verdict;
use crate::{conjectures, extremal, ffmodel, search, sieve};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "dtuple", version, about = "Diophantine tuple verification and search toolkit")]
struct Cli {
    /// Key=value config file (timeout_seconds, worker_count, cache_dir,
    /// tolerance, output).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Search timeout in seconds.
    #[arg(long, global = true)]
    timeout: Option<u64>,

    /// Worker thread count (0 = all cores). Results never depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Cache directory for expensive searches (env DTUPLE_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Absolute tolerance for floating-point bound verdicts.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Write the envelope to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the pairwise property of a set (or a bipartite pair of sets).
    Verify {
        /// Comma-separated elements, e.g. 1,3,8,120.
        #[arg(long)]
        set: String,
        /// Second set: switches to the bipartite check (requires --k).
        #[arg(long)]
        set_b: Option<String>,
        /// Nonzero shift.
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        up_to_d: Option<u32>,
        #[arg(long)]
        any_power: bool,
        /// Exponent cap for --any-power (default: covering cap).
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Exact maximum clique in the tuple graph over a range or set.
    Clique {
        /// Inclusive vertex range lo:hi.
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        set: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        up_to_d: Option<u32>,
        #[arg(long)]
        any_power: bool,
        #[arg(long)]
        cap: Option<u32>,
        /// Restrict to edges of one color (a prime exponent).
        #[arg(long)]
        color: Option<u32>,
    },
    /// Maximum tuple size over all shifts up to x (f and f-tilde).
    Fvalue {
        #[arg(long)]
        x: u64,
        /// Also allow negative shifts (f-tilde).
        #[arg(long)]
        signed: bool,
    },
    /// Four-cycles whose alternating products are p1-th and p2-th powers.
    Cycles {
        #[arg(long)]
        range: String,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        p1: u32,
        #[arg(long)]
        p2: u32,
    },
    /// Finite-field verifiers: character sums, residue cliques, power models.
    Ffmodel {
        #[arg(long, value_enum)]
        check: FfCheck,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        /// Character index j (0 < j < p-1).
        #[arg(long)]
        char_index: Option<u64>,
        #[arg(long)]
        set_a: Option<String>,
        #[arg(long)]
        set_b: Option<String>,
        /// Power degree d for the Weil model.
        #[arg(long)]
        d: Option<u32>,
        /// Power exponent k.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        nu: Option<u32>,
        /// Comma-separated prime exponents for the clique bound.
        #[arg(long)]
        exponents: Option<String>,
    },
    /// Sieve bounds, theta constants, residue images, and log sums.
    Sieve {
        #[arg(long, value_enum)]
        op: SieveOp,
        #[arg(long)]
        set: Option<String>,
        /// Upper end N of the interval containing the set.
        #[arg(long)]
        n_max: Option<u64>,
        /// Sieve cutoff Q.
        #[arg(long)]
        q: Option<u64>,
        /// Use all primes up to this bound as the prime set.
        #[arg(long)]
        primes_up_to: Option<u64>,
        /// Explicit comma-separated prime set.
        #[arg(long)]
        primes: Option<String>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        m: Option<u32>,
        /// Image-size threshold for the P1 classification.
        #[arg(long)]
        threshold: Option<u64>,
        /// Shift n for the P3 classification.
        #[arg(long, allow_negative_numbers = true)]
        shift: Option<i64>,
        /// x for the Linnik form.
        #[arg(long)]
        x: Option<f64>,
        /// User-supplied constant c for the Linnik form.
        #[arg(long)]
        c: Option<f64>,
        /// User-supplied exponent L for the Linnik form.
        #[arg(long)]
        big_l: Option<f64>,
    },
    /// theta_{k,m} = sum over units i mod k of gcd(i-1,k)^m.
    Theta {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u32,
    },
    /// Extremal bound formulas, tabulated constants, and forbidden-subgraph checks.
    Bounds {
        #[arg(long, value_enum)]
        formula: Option<BoundsFormula>,
        /// Vertex count for formula mode.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        /// Larger side size for the ordered bound.
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        kcolors: Option<u64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        k: Option<u32>,
        /// Forbidden-subgraph mode over a tuple graph.
        #[arg(long, value_enum)]
        pattern: Option<PatternKind>,
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        set: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        shift: Option<i64>,
        #[arg(long)]
        up_to_d: Option<u32>,
        #[arg(long)]
        any_power: bool,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Equal sums of like powers and the desk conjecture check.
    Powersums {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        terms: usize,
        #[arg(long)]
        height: u64,
        /// Search for conjecture violations (m + n < k) instead.
        #[arg(long)]
        lps: bool,
    },
    /// Greedy distinct-factor row selection over a candidate stream.
    Construct {
        /// Synthetic stream mode.
        #[arg(long)]
        synthetic: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        len: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_value: u64,
        /// Tuple stream mode: smaller multiplier.
        #[arg(long)]
        u: Option<u64>,
        #[arg(long)]
        v: Option<u64>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        range: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FfCheck {
    Vinogradov,
    CliqueBound,
    Weil,
    Karatsuba,
    CorKb,
    Residues,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SieveOp {
    Gallagher,
    CrootElsholtz,
    Theta,
    Images,
    Mertens,
    Linnik,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BoundsFormula {
    Turan,
    Kst,
    OrderedKst,
    ColoredCycle,
    Robust,
    Constants,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PatternKind {
    Kr,
    Kst,
    ColoredCycle,
}

struct Outcome {
    inputs: Value,
    result: Value,
    exhaustive: bool,
    failed: bool,
    cacheable: bool,
}

impl Outcome {
    fn new(inputs: Value, result: Value) -> Self {
        Outcome {
            inputs,
            result,
            exhaustive: true,
            failed: false,
            cacheable: false,
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| Error::InvalidParam(format!("bad list entry {s:?}")))
        })
        .collect()
}

fn parse_range(text: &str) -> Result<(u64, u64)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::InvalidParam(format!("range must be lo:hi, got {text:?}")))?;
    let lo = lo
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::InvalidParam(format!("bad range start {lo:?}")))?;
    let hi = hi
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::InvalidParam(format!("bad range end {hi:?}")))?;
    if lo > hi || lo == 0 {
        return Err(Error::InvalidParam(format!(
            "range needs 1 <= lo <= hi, got {lo}:{hi}"
        )));
    }
    Ok((lo, hi))
}

/// Resolve the target flags; for the all-powers case the cap defaults to
/// the covering cap of the largest possible shifted product.
fn resolve_target(
    k: Option<u32>,
    up_to_d: Option<u32>,
    any_power: bool,
    cap: Option<u32>,
    max_element: u64,
    n: Shift,
) -> Result<PowerTarget> {
    let picked = [k.is_some(), up_to_d.is_some(), any_power]
        .iter()
        .filter(|&&b| b)
        .count();
    if picked != 1 {
        return Err(Error::InvalidParam(
            "exactly one of --k, --up-to-d, --any-power must be given".into(),
        ));
    }
    if let Some(k) = k {
        return PowerTarget::exact(k);
    }
    if let Some(d) = up_to_d {
        return PowerTarget::up_to(d);
    }
    match cap {
        Some(c) => Ok(PowerTarget::any_power(ExponentCap::new(c)?)),
        None => {
            let max_product = (max_element as u128) * (max_element as u128);
            Ok(PowerTarget::any_power_covering(max_product, n))
        }
    }
}

fn target_json(target: PowerTarget) -> Value {
    match target {
        PowerTarget::ExactK(k) => json!({"kind": "exact_k", "value": k}),
        PowerTarget::UpToD(d) => json!({"kind": "up_to_d", "value": d}),
        PowerTarget::AnyPower(c) => json!({"kind": "any_power", "cap": c}),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn report_failed(value: &Value) -> bool {
    match value {
        Value::Object(map) => {
            if map.get("verdict") == Some(&Value::String("fails".into())) {
                return true;
            }
            map.values().any(report_failed)
        }
        Value::Array(items) => items.iter().any(report_failed),
        _ => false,
    }
}

fn handle(command: &Command, cfg: &RunConfig, deadline: Instant) -> Result<Outcome> {
    match command {
        Command::Verify {
            set,
            set_b,
            n,
            k,
            up_to_d,
            any_power,
            cap,
        } => {
            let elements = parse_list(set)?;
            let shift = Shift::new(*n)?;
            match set_b {
                Some(other) => {
                    let Some(k) = k else {
                        return Err(Error::InvalidParam(
                            "bipartite verification requires --k".into(),
                        ));
                    };
                    let b = parse_list(other)?;
                    let report = predicate::verify_bipartite(&elements, &b, shift, *k)?;
                    let inputs = json!({
                        "set": elements, "set_b": b, "n": n, "k": k,
                    });
                    let mut out = Outcome::new(inputs, to_value(&report)?);
                    out.failed = !report.holds;
                    Ok(out)
                }
                None => {
                    let max = elements.iter().copied().max().unwrap_or(1);
                    let target = resolve_target(*k, *up_to_d, *any_power, *cap, max, shift)?;
                    let report = predicate::verify_tuple(&elements, shift, target)?;
                    let inputs = json!({
                        "set": elements, "n": n, "target": target_json(target),
                    });
                    let mut out = Outcome::new(inputs, to_value(&report)?);
                    out.failed = !report.holds;
                    Ok(out)
                }
            }
        }

        Command::Clique {
            range,
            set,
            n,
            k,
            up_to_d,
            any_power,
            cap,
            color,
        } => {
            let verts = match (range, set) {
                (Some(r), None) => {
                    let (lo, hi) = parse_range(r)?;
                    (lo..=hi).collect()
                }
                (None, Some(s)) => parse_list(s)?,
                _ => {
                    return Err(Error::InvalidParam(
                        "exactly one of --range, --set must be given".into(),
                    ))
                }
            };
            let shift = Shift::new(*n)?;
            let max = verts.iter().copied().max().unwrap_or(1);
            let target = resolve_target(*k, *up_to_d, *any_power, *cap, max, shift)?;
            let graph = search::build_tuple_graph(&verts, shift, target)?;
            let result = search::max_clique(&graph, *color, Some(deadline));
            let inputs = json!({
                "vertices": verts, "n": n, "target": target_json(target), "color": color,
            });
            let mut out = Outcome::new(
                inputs,
                json!({
                    "size": result.size,
                    "witness": result.witness,
                    "exhaustive": result.exhaustive,
                    "vertex_count": graph.vertex_count(),
                    "edge_count": graph.edge_count(),
                }),
            );
            out.exhaustive = result.exhaustive;
            out.cacheable = true;
            Ok(out)
        }

        Command::Fvalue { x, signed } => {
            let report = search::compute_f(*x, *signed, Some(deadline))?;
            let inputs = json!({"x": x, "signed": signed});
            let mut out = Outcome::new(inputs, to_value(&report)?);
            out.exhaustive = report.exhaustive;
            out.cacheable = true;
            Ok(out)
        }

        Command::Cycles { range, n, p1, p2 } => {
            let range = parse_range(range)?;
            let shift = Shift::new(*n)?;
            let cycles = search::find_power_cycles(range, shift, *p1, *p2)?;
            let inputs = json!({
                "range": [range.0, range.1], "n": n, "p1": p1, "p2": p2,
            });
            let mut out = Outcome::new(
                inputs,
                json!({"count": cycles.len(), "cycles": cycles}),
            );
            out.cacheable = true;
            Ok(out)
        }

        Command::Ffmodel {
            check,
            p,
            lambda,
            char_index,
            set_a,
            set_b,
            d,
            k,
            nu,
            exponents,
        } => {
            let tol = cfg.tolerance;
            let a = set_a.as_deref().map(parse_list).transpose()?.unwrap_or_default();
            let b = set_b.as_deref().map(parse_list).transpose()?.unwrap_or_default();
            match check {
                FfCheck::Vinogradov => {
                    let j = char_index
                        .ok_or_else(|| Error::InvalidParam("--char-index required".into()))?;
                    let table = ffmodel::CharacterTable::build(*p)?;
                    let report = ffmodel::verify_vinogradov(&table, *lambda, j, &a, &b, tol)?;
                    let inputs = json!({
                        "check": "vinogradov", "p": p, "lambda": lambda,
                        "char_index": j, "set_a": a, "set_b": b,
                    });
                    let mut out = Outcome::new(inputs, to_value(&report)?);
                    out.failed = report.verdict == Verdict::Fails;
                    Ok(out)
                }
                FfCheck::CliqueBound => {
                    let exps = exponents
                        .as_deref()
                        .map(parse_list)
                        .transpose()?
                        .unwrap_or_default();
                    let model = ffmodel::FiniteFieldModel::new(*p, *lambda, exps.clone())?;
                    let result = ffmodel::ff_clique_bound(&model, Some(deadline))?;
                    let inputs = json!({
                        "check": "clique_bound", "p": p, "lambda": lambda, "exponents": exps,
                    });
                    let mut out = Outcome::new(inputs, to_value(&result)?);
                    out.exhaustive = result.exhaustive;
                    out.failed = result.report.verdict == Verdict::Fails;
                    out.cacheable = true;
                    Ok(out)
                }
                FfCheck::Weil => {
                    let d = d.ok_or_else(|| Error::InvalidParam("--d required".into()))?;
                    let result = ffmodel::weil_model_b(*p, d, *lambda, &a, tol)?;
                    let inputs = json!({
                        "check": "weil", "p": p, "d": d, "lambda": lambda, "set_a": a,
                    });
                    let mut out = Outcome::new(inputs, to_value(&result)?);
                    out.failed = result.report.verdict == Verdict::Fails;
                    Ok(out)
                }
                FfCheck::Karatsuba => {
                    let j = char_index
                        .ok_or_else(|| Error::InvalidParam("--char-index required".into()))?;
                    let nu = nu.unwrap_or(1);
                    let table = ffmodel::CharacterTable::build(*p)?;
                    let report = ffmodel::verify_karatsuba(&table, *lambda, &a, &b, nu, j, tol)?;
                    let inputs = json!({
                        "check": "karatsuba", "p": p, "lambda": lambda,
                        "char_index": j, "nu": nu, "set_a": a, "set_b": b,
                    });
                    let mut out = Outcome::new(inputs, to_value(&report)?);
                    out.failed = report.verdict == Verdict::Fails;
                    Ok(out)
                }
                FfCheck::CorKb => {
                    let k = k.ok_or_else(|| Error::InvalidParam("--k required".into()))?;
                    let nu = nu.unwrap_or(1);
                    let result = ffmodel::check_cor_kb(*p, k, *lambda, &a, nu, tol)?;
                    let inputs = json!({
                        "check": "cor_kb", "p": p, "k": k, "lambda": lambda, "nu": nu, "set_a": a,
                    });
                    let mut out = Outcome::new(inputs, to_value(&result)?);
                    out.failed = result.report.verdict == Verdict::Fails;
                    Ok(out)
                }
                FfCheck::Residues => {
                    let k = k.ok_or_else(|| Error::InvalidParam("--k required".into()))?;
                    let residues = ffmodel::power_residues(*p, k)?;
                    let inputs = json!({"check": "residues", "p": p, "k": k});
                    Ok(Outcome::new(
                        inputs,
                        json!({"count": residues.len(), "residues": residues}),
                    ))
                }
            }
        }

        Command::Sieve {
            op,
            set,
            n_max,
            q,
            primes_up_to,
            primes,
            k,
            m,
            threshold,
            shift,
            x,
            c,
            big_l,
        } => {
            let prime_set = || -> Result<Vec<u64>> {
                match (primes_up_to, primes) {
                    (Some(q2), None) => Ok(arith::primes_up_to(*q2)),
                    (None, Some(list)) => parse_list(list),
                    (None, None) => Err(Error::InvalidParam(
                        "need --primes-up-to or --primes".into(),
                    )),
                    _ => Err(Error::InvalidParam(
                        "give only one of --primes-up-to, --primes".into(),
                    )),
                }
            };
            match op {
                SieveOp::Gallagher | SieveOp::CrootElsholtz => {
                    let set = parse_list(
                        set.as_deref()
                            .ok_or_else(|| Error::InvalidParam("--set required".into()))?,
                    )?;
                    let n_max = n_max.ok_or_else(|| Error::InvalidParam("--n-max required".into()))?;
                    let q = q.ok_or_else(|| Error::InvalidParam("--q required".into()))?;
                    let ps = prime_set()?;
                    let inst = sieve::SieveInstance::from_set(n_max, &set, &ps)?;
                    let (name, report) = match op {
                        SieveOp::Gallagher => ("gallagher", sieve::gallagher_bound(&inst, q)?),
                        _ => ("croot_elsholtz", sieve::croot_elsholtz_bound(&inst, q)?),
                    };
                    let inputs = json!({
                        "op": name, "set_size": set.len(), "set": set,
                        "n_max": n_max, "q": q, "primes": ps,
                    });
                    let mut out = Outcome::new(inputs, to_value(&report)?);
                    out.failed = report.verdict == Verdict::Fails;
                    Ok(out)
                }
                SieveOp::Theta => {
                    let k = k.ok_or_else(|| Error::InvalidParam("--k required".into()))?;
                    let m = m.ok_or_else(|| Error::InvalidParam("--m required".into()))?;
                    let t = sieve::theta(k, m)?;
                    Ok(Outcome::new(json!({"op": "theta", "k": k, "m": m}), to_value(&t)?))
                }
                SieveOp::Images => {
                    let set = parse_list(
                        set.as_deref()
                            .ok_or_else(|| Error::InvalidParam("--set required".into()))?,
                    )?;
                    let ps = prime_set()?;
                    let shift = shift.map(Shift::new).transpose()?;
                    let images = sieve::residue_images(&set, &ps, *threshold, shift)?;
                    let inputs = json!({
                        "op": "images", "set": set, "primes": ps,
                        "threshold": threshold, "shift": shift.map(|s| s.get()),
                    });
                    Ok(Outcome::new(inputs, to_value(&images)?))
                }
                SieveOp::Mertens => {
                    let ps = prime_set()?;
                    let sum = sieve::mertens_log_sum(&ps)?;
                    Ok(Outcome::new(
                        json!({"op": "mertens", "primes": ps}),
                        to_value(&sum)?,
                    ))
                }
                SieveOp::Linnik => {
                    let qmod = k.ok_or_else(|| Error::InvalidParam("--k (modulus q) required".into()))?;
                    let x = x.ok_or_else(|| Error::InvalidParam("--x required".into()))?;
                    let c = c.ok_or_else(|| Error::InvalidParam("--c required".into()))?;
                    let big_l =
                        big_l.ok_or_else(|| Error::InvalidParam("--big-l required".into()))?;
                    let form = sieve::linnik_form(qmod, x, c, big_l)?;
                    let inputs = json!({
                        "op": "linnik", "q": qmod, "x": x, "c": c, "big_l": big_l,
                    });
                    Ok(Outcome::new(inputs, to_value(&form)?))
                }
            }
        }

        Command::Theta { k, m } => {
            let t = sieve::theta(*k, *m)?;
            Ok(Outcome::new(json!({"k": k, "m": m}), to_value(&t)?))
        }

        Command::Bounds {
            formula,
            n,
            r,
            s,
            t,
            m,
            kcolors,
            delta,
            k,
            pattern,
            range,
            set,
            shift,
            up_to_d,
            any_power,
            cap,
        } => match (formula, pattern) {
            (Some(f), None) => {
                let need = |opt: Option<u64>, name: &str| {
                    opt.ok_or_else(|| Error::InvalidParam(format!("--{name} required")))
                };
                let need32 = |opt: Option<u32>, name: &str| {
                    opt.ok_or_else(|| Error::InvalidParam(format!("--{name} required")))
                };
                match f {
                    BoundsFormula::Turan => {
                        let n = need(*n, "n")?;
                        let r = need32(*r, "r")?;
                        if r < 2 {
                            return Err(Error::InvalidParam("turan needs r >= 2".into()));
                        }
                        let b = extremal::turan_bound(n, r);
                        let inputs = json!({"formula": "turan", "n": n, "r": r});
                        Ok(Outcome::new(
                            inputs,
                            json!({
                                "bound": *b.numer() as f64 / *b.denom() as f64,
                                "numer": b.numer(), "denom": b.denom(),
                            }),
                        ))
                    }
                    BoundsFormula::Kst => {
                        let n = need(*n, "n")?;
                        let s = need32(*s, "s")?;
                        let t = need32(*t, "t")?;
                        if !(1 <= s && s <= t) {
                            return Err(Error::InvalidParam("kst needs 1 <= s <= t".into()));
                        }
                        let b = extremal::kst_bound(n, s, t);
                        let inputs = json!({"formula": "kst", "n": n, "s": s, "t": t});
                        Ok(Outcome::new(inputs, json!({"bound": b})))
                    }
                    BoundsFormula::OrderedKst => {
                        let n = need(*n, "n")?;
                        let mbig = need(*m, "m")?;
                        let r = need32(*r, "r")?;
                        let t = need32(*t, "t")?;
                        if n > mbig || r < 1 || t < 1 {
                            return Err(Error::InvalidParam(
                                "ordered-kst needs n <= m and r, t >= 1".into(),
                            ));
                        }
                        let b = extremal::ordered_kst_bound(n, mbig, r, t);
                        let inputs =
                            json!({"formula": "ordered_kst", "n": n, "m": mbig, "r": r, "t": t});
                        Ok(Outcome::new(inputs, json!({"bound": b})))
                    }
                    BoundsFormula::ColoredCycle => {
                        let n = need(*n, "n")?;
                        let kc = need(*kcolors, "kcolors")?;
                        let b = extremal::colored_cycle_bound(n, kc);
                        let inputs = json!({"formula": "colored_cycle", "n": n, "kcolors": kc});
                        Ok(Outcome::new(inputs, json!({"bound": b})))
                    }
                    BoundsFormula::Robust => {
                        let delta = delta
                            .ok_or_else(|| Error::InvalidParam("--delta required".into()))?;
                        let s = need32(*s, "s")?;
                        let t = need32(*t, "t")?;
                        let b = extremal::robust_size_bound(delta, s, t)?;
                        let inputs = json!({"formula": "robust", "delta": delta, "s": s, "t": t});
                        Ok(Outcome::new(inputs, json!({"bound": b})))
                    }
                    BoundsFormula::Constants => {
                        let k = need32(*k, "k")?;
                        let c = extremal::constants(k)?;
                        Ok(Outcome::new(json!({"formula": "constants", "k": k}), to_value(&c)?))
                    }
                }
            }
            (None, Some(pk)) => {
                let shift = Shift::new(
                    shift.ok_or_else(|| Error::InvalidParam("--shift required".into()))?,
                )?;
                let verts: Vec<u64> = match (range, set) {
                    (Some(rg), None) => {
                        let (lo, hi) = parse_range(rg)?;
                        (lo..=hi).collect()
                    }
                    (None, Some(sl)) => parse_list(sl)?,
                    _ => {
                        return Err(Error::InvalidParam(
                            "exactly one of --range, --set must be given".into(),
                        ))
                    }
                };
                let max = verts.iter().copied().max().unwrap_or(1);
                let target = resolve_target(*k, *up_to_d, *any_power, *cap, max, shift)?;
                let graph = search::build_tuple_graph(&verts, shift, target)?;
                let pattern = match pk {
                    PatternKind::Kr => extremal::Pattern::Clique {
                        r: r.ok_or_else(|| Error::InvalidParam("--r required".into()))?,
                    },
                    PatternKind::Kst => extremal::Pattern::Biclique {
                        s: s.ok_or_else(|| Error::InvalidParam("--s required".into()))?,
                        t: t.ok_or_else(|| Error::InvalidParam("--t required".into()))?,
                    },
                    PatternKind::ColoredCycle => extremal::Pattern::ColoredCycle,
                };
                let hit = extremal::check_forbidden_subgraph(&graph, pattern)?;
                let inputs = json!({
                    "pattern": to_value(&pattern)?, "vertices": verts,
                    "shift": shift.get(), "target": target_json(target),
                });
                Ok(Outcome::new(
                    inputs,
                    json!({
                        "found": hit.found,
                        "witness": to_value(&hit.witness)?,
                        "edge_count": graph.edge_count(),
                        "vertex_count": graph.vertex_count(),
                    }),
                ))
            }
            _ => Err(Error::InvalidParam(
                "exactly one of --formula, --pattern must be given".into(),
            )),
        },

        Command::Powersums {
            k,
            terms,
            height,
            lps,
        } => {
            if *lps {
                let report = conjectures::lps_desk_check(*k, *height)?;
                let inputs = json!({"mode": "lps", "k": k, "height": height});
                let mut out = Outcome::new(inputs, to_value(&report)?);
                out.failed = !report.holds;
                Ok(out)
            } else {
                let sols = conjectures::equal_power_sums(*k, *terms, *height)?;
                let inputs = json!({"mode": "search", "k": k, "terms": terms, "height": height});
                Ok(Outcome::new(
                    inputs,
                    json!({"count": sols.len(), "solutions": sols}),
                ))
            }
        }

        Command::Construct {
            synthetic,
            seed,
            len,
            max_value,
            u,
            v,
            n,
            k,
            range,
        } => {
            let (inputs, stream) = if *synthetic {
                (
                    json!({"mode": "synthetic", "seed": seed, "len": len, "max_value": max_value}),
                    conjectures::synthetic_stream(*seed, *len, *max_value),
                )
            } else {
                let u = u.ok_or_else(|| Error::InvalidParam("--u required".into()))?;
                let v = v.ok_or_else(|| Error::InvalidParam("--v required".into()))?;
                let n = Shift::new(n.ok_or_else(|| Error::InvalidParam("--n required".into()))?)?;
                let k = k.ok_or_else(|| Error::InvalidParam("--k required".into()))?;
                let (lo, hi) = parse_range(
                    range
                        .as_deref()
                        .ok_or_else(|| Error::InvalidParam("--range required".into()))?,
                )?;
                (
                    json!({
                        "mode": "tuple", "u": u, "v": v, "n": n.get(), "k": k,
                        "range": [lo, hi],
                    }),
                    conjectures::tuple_stream(u, v, n, k, (lo, hi))?,
                )
            };
            let outcome = conjectures::greedy_distinct_rows(stream)?;
            let mut out = Outcome::new(inputs, to_value(&outcome)?);
            out.failed = !outcome.all_distinct;
            Ok(out)
        }
    }
}

/// Parse argv, run the command, and return the envelope plus exit code.
pub fn dispatch(argv: Vec<String>) -> Result<(ResultEnvelope, i32, Option<PathBuf>)> {
    let cli = Cli::try_parse_from(argv).map_err(Error::from_clap)?;
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.load_file(path)?;
    }
    if let Ok(dir) = std::env::var(CACHE_DIR_ENV) {
        cfg.cache_dir = Some(PathBuf::from(dir));
    }
    if let Some(t) = cli.timeout {
        cfg.timeout_seconds = t;
    }
    if let Some(w) = cli.workers {
        cfg.worker_count = w;
    }
    if let Some(dir) = &cli.cache_dir {
        cfg.cache_dir = Some(dir.clone());
    }
    if let Some(tol) = cli.tolerance {
        cfg.tolerance = tol;
    }
    if let Some(out) = &cli.output {
        cfg.output = Some(out.clone());
    }
    cfg.validate()?;

    let command_name = match &cli.command {
        Command::Verify { .. } => "verify",
        Command::Clique { .. } => "clique",
        Command::Fvalue { .. } => "fvalue",
        Command::Cycles { .. } => "cycles",
        Command::Ffmodel { .. } => "ffmodel",
        Command::Sieve { .. } => "sieve",
        Command::Theta { .. } => "theta",
        Command::Bounds { .. } => "bounds",
        Command::Powersums { .. } => "powersums",
        Command::Construct { .. } => "construct",
    };

    let deadline = Instant::now() + Duration::from_secs(cfg.timeout_seconds);
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.worker_count)
        .build()
        .map_err(|e| Error::InvalidParam(format!("worker pool: {e}")))?;
    let outcome = pool.install(|| handle(&cli.command, &cfg, deadline))?;

    // expensive searches go through the cache when one is configured
    let cache = match (&cfg.cache_dir, outcome.cacheable) {
        (Some(dir), true) => Some(Cache::open(dir)?),
        _ => None,
    };
    if let Some(cache) = &cache {
        let key = Cache::key(command_name, &outcome.inputs);
        if let Some(hit) = cache.lookup(&key) {
            let code = if !hit.exhaustive {
                3
            } else if report_failed(&hit.result) {
                1
            } else {
                0
            };
            return Ok((hit, code, cfg.output));
        }
    }

    let envelope = ResultEnvelope {
        command: command_name.to_string(),
        inputs: outcome.inputs,
        result: outcome.result,
        exhaustive: outcome.exhaustive,
        elapsed_ms: started.elapsed().as_millis() as u64,
        version: ENVELOPE_VERSION.to_string(),
    };
    if let Some(cache) = &cache {
        let key = Cache::key(command_name, &envelope.inputs);
        cache.store(&key, &envelope)?;
    }
    let code = if !envelope.exhaustive {
        3
    } else if outcome.failed {
        1
    } else {
        0
    };
    Ok((envelope, code, cfg.output))
}

impl Error {
    fn from_clap(err: clap::Error) -> Error {
        Error::InvalidParam(err.to_string())
    }
}

/// CLI entry point: prints the envelope and returns the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    // let clap print its own usage/help output
    let parsed = match Cli::try_parse_from(&argv) {
        Ok(_) => true,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    debug_assert!(parsed);
    match dispatch(argv) {
        Ok((envelope, code, output)) => {
            let text = serde_json::to_string_pretty(&envelope)
                .expect("envelope serialization cannot fail");
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => println!("{text}"),
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidParam(_) | Error::Precondition(_) => 2,
                _ => 1,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(line: &str) -> Vec<String> {
        std::iter::once("dtuple")
            .chain(line.split_whitespace())
            .map(String::from)
            .collect()
    }

    #[test]
    fn verify_fermat_set() {
        let (env, code, _) =
            dispatch(args("verify --set 1,3,8,120 --n 1 --k 2")).unwrap();
        assert_eq!(code, 0);
        assert_eq!(env.command, "verify");
        assert!(env.exhaustive);
        assert_eq!(env.result["holds"], serde_json::json!(true));
        assert_eq!(env.result["witnesses"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn verify_failure_exits_one() {
        let (env, code, _) = dispatch(args("verify --set 1,2,3 --n 1 --k 2")).unwrap();
        assert_eq!(code, 1);
        assert_eq!(env.result["holds"], serde_json::json!(false));
    }

    #[test]
    fn theta_subcommand() {
        let (env, code, _) = dispatch(args("theta --k 3 --m 1")).unwrap();
        assert_eq!(code, 0);
        assert_eq!(env.result["value"], serde_json::json!("4"));
    }

    #[test]
    fn clique_small_range() {
        let (env, code, _) = dispatch(args("clique --range 1:120 --n 1 --k 2")).unwrap();
        assert_eq!(code, 0);
        assert_eq!(env.result["size"], serde_json::json!(4));
        assert_eq!(env.result["witness"], serde_json::json!([1, 3, 8, 120]));
    }

    #[test]
    fn negative_shift_parses() {
        let (env, code, _) = dispatch(args("clique --range 1:60 --n -1 --k 2")).unwrap();
        assert_eq!(code, 0);
        assert!(env.result["size"].as_u64().unwrap() >= 2);
    }

    #[test]
    fn usage_errors() {
        assert!(dispatch(args("verify --set 1,2 --n 0 --k 2")).is_err());
        assert!(dispatch(args("verify --set 1,2 --n 1")).is_err());
        assert!(dispatch(args("clique --n 1 --k 2")).is_err());
        assert!(dispatch(args("bounds --formula turan --n 6")).is_err());
    }

    #[test]
    fn payloads_identical_across_worker_counts() {
        for line in [
            "verify --set 1,3,8,120 --n 1 --k 2",
            "clique --range 1:200 --n 1 --k 2",
            "fvalue --x 12 --signed",
            "cycles --range 1:120 --n 1 --p1 2 --p2 2",
            "theta --k 12 --m 3",
            "powersums --k 3 --terms 2 --height 12",
        ] {
            let (a, _, _) = dispatch(args(&format!("{line} --workers 1"))).unwrap();
            let (b, _, _) = dispatch(args(&format!("{line} --workers 4"))).unwrap();
            assert_eq!(
                serde_json::to_string(&a.result).unwrap(),
                serde_json::to_string(&b.result).unwrap(),
                "payload differs for {line}"
            );
        }
    }

    #[test]
    fn cache_round_trip_through_dispatch() {
        let dir = tempfile::tempdir().unwrap();
        let line = format!(
            "clique --range 1:100 --n 1 --k 2 --cache-dir {}",
            dir.path().display()
        );
        let (first, code, _) = dispatch(args(&line)).unwrap();
        assert_eq!(code, 0);
        let (second, code2, _) = dispatch(args(&line)).unwrap();
        assert_eq!(code2, 0);
        // the second run returns the stored envelope verbatim
        assert_eq!(first, second);
    }
}
