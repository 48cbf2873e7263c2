//! Searches over weight-`w` binary GB codes with `b = 1 + x`: canonical
//! enumeration of `a`, best distance per length, CSV records, and the
//! constructive check of the GV-style existence bound.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::gv_bound;
use crate::codes::{canonical_exponents, GbCode};
use crate::distance::{
    classical_qc_distance_with, cyclic_distance, estimate_distance, exact_distance_with,
    trivial_upper_bound, Distance, DistanceResult, EstimatorConfig, ExactOptions, DEFAULT_BUDGET,
};
use crate::error::{param, Error, Result};
use crate::field::{is_prime, Field};
use crate::num::{derive_seed, mult_order};
use crate::poly::Poly;
use crate::ring::RingPoly;

/// Primes `l <= max_ell` for which `q` is a primitive root, ascending.
pub fn prime_ell_stream(q: u32, max_ell: usize) -> Vec<usize> {
    (2..=max_ell)
        .filter(|&l| is_prime(l as u64) && l as u32 != q)
        .filter(|&l| mult_order(q as u64, l as u64).is_ok_and(|t| t == l as u64 - 1))
        .collect()
}

/// Iterator over canonical exponent sets of weight `wa` in length `l`,
/// in lexicographic order of the exponent lists.
#[derive(Clone, Debug)]
pub struct CanonicalIter {
    ell: usize,
    cur: Option<Vec<usize>>,
}

impl Iterator for CanonicalIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            let cur = self.cur.as_mut()?;
            let item = cur.clone();
            if !next_combination(cur, self.ell) {
                self.cur = None;
            }
            if canonical_exponents(&item, self.ell) == item {
                return Some(item);
            }
        }
    }
}

/// Advances `c = [0, c1, ..]` to the next set with `c0 = 0` in lex order.
fn next_combination(c: &mut [usize], ell: usize) -> bool {
    let w = c.len();
    let mut i = w;
    while i > 1 {
        i -= 1;
        if c[i] < ell - (w - i) {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Canonical exponent sets (constant term 1) of weight `wa`, one per orbit
/// under cyclic shifts and reciprocation.
pub fn enumerate_canonical(ell: usize, wa: usize) -> Result<CanonicalIter> {
    if wa < 1 || wa > ell {
        return param(format!("weight {wa} is out of range for l = {ell}"));
    }
    Ok(CanonicalIter {
        ell,
        cur: Some((0..wa).collect()),
    })
}

fn default_exact_dim() -> usize {
    26
}

fn default_batch() -> usize {
    64
}

fn default_true() -> bool {
    true
}

/// A search job, read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchJob {
    #[serde(default = "default_q")]
    pub q: u32,
    /// Row weights `w`; `a` has weight `w - 2`.
    pub weights: Vec<usize>,
    /// Explicit lengths.
    #[serde(default)]
    pub ells: Vec<usize>,
    /// Adds every prime up to this value with primitive root `q`.
    #[serde(default)]
    pub prime_max: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    /// Estimator trials; defaults to `max(10^4, 50 l)`.
    #[serde(default)]
    pub trials: Option<u64>,
    /// Largest kernel dimension handled by exact enumeration.
    #[serde(default = "default_exact_dim")]
    pub exact_max_dim: usize,
    #[serde(default = "default_true")]
    pub prune: bool,
    /// Candidates evaluated between updates of the running best.
    #[serde(default = "default_batch")]
    pub batch: usize,
    /// Record wall time; off by default so output is reproducible.
    #[serde(default)]
    pub timing: bool,
}

fn default_q() -> u32 {
    2
}

impl SearchJob {
    pub fn new(weights: Vec<usize>, ells: Vec<usize>, seed: u64) -> Self {
        SearchJob {
            q: 2,
            weights,
            ells,
            prime_max: None,
            seed,
            trials: None,
            exact_max_dim: default_exact_dim(),
            prune: true,
            batch: default_batch(),
            timing: false,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| {
            Error::Parameter(format!("search job, line {} column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("job serializes")
    }

    /// All lengths of the job, ascending and deduplicated.
    pub fn lengths(&self) -> Vec<usize> {
        let mut v = self.ells.clone();
        if let Some(m) = self.prime_max {
            v.extend(prime_ell_stream(self.q, m));
        }
        v.sort_unstable();
        v.dedup();
        v
    }

    fn validate(&self) -> Result<()> {
        if self.q != 2 {
            return param("searches are defined over F_2 only");
        }
        if self.weights.is_empty() {
            return param("job has no weights");
        }
        for &w in &self.weights {
            if w < 4 || w % 2 == 1 {
                return param(format!("row weight must be even and at least 4, got {w}"));
            }
        }
        if self.batch == 0 {
            return param("batch must be at least 1");
        }
        for l in self.lengths() {
            if l < 2 {
                return param(format!("length {l} is too small"));
            }
        }
        Ok(())
    }
}

/// Best code found for one `(l, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub ell: usize,
    pub n: usize,
    pub w: usize,
    pub a_exponents: Vec<usize>,
    pub k: usize,
    pub d: Distance,
    /// True when every evaluated candidate was settled by exact enumeration.
    pub exact: bool,
    pub seed: u64,
    pub trials: u64,
    pub ms: u64,
}

impl SearchRecord {
    pub fn code(&self) -> Result<GbCode> {
        GbCode::binary(self.ell, &self.a_exponents, &[0, 1])
    }
}

struct Outcome {
    d: Distance,
    exact: bool,
    seed: u64,
    trials: u64,
}

fn evaluate(code: &GbCode, job: &SearchJob, seed: u64, best: Option<usize>) -> Result<Outcome> {
    let ell = code.ell();
    let dim = ell + code.deg_h();
    if dim <= job.exact_max_dim {
        let budget = DEFAULT_BUDGET.max(1u128 << dim);
        let opts = ExactOptions {
            budget,
            stop_at: best,
        };
        let r = exact_distance_with(code, &opts)?;
        return Ok(Outcome {
            d: r.d,
            exact: true,
            seed,
            trials: 0,
        });
    }
    let trials = job.trials.unwrap_or((50 * ell as u64).max(10_000));
    let mut cfg = EstimatorConfig::new(trials, seed)?;
    cfg.early_stop_weight = best;
    let r: DistanceResult = estimate_distance(code, &cfg)?;
    Ok(Outcome {
        d: r.d,
        exact: false,
        seed,
        trials: r.trials_used,
    })
}

/// Best distance over canonical `a` of weight `w - 2` with `b = 1 + x`.
pub fn search_one(job: &SearchJob, ell: usize, w: usize) -> Result<SearchRecord> {
    let start = Instant::now();
    let one_x = RingPoly::from_exponents(Field::BINARY, ell, &[0, 1]);
    let cands: Vec<Vec<usize>> = enumerate_canonical(ell, w - 2)?.collect();
    // (distance, candidate index, outcome)
    let mut best: Option<(Distance, usize, Outcome)> = None;
    let mut all_exact = true;
    for (chunk_no, chunk) in cands.chunks(job.batch).enumerate() {
        let threshold = if job.prune {
            best.as_ref().and_then(|b| b.0.finite())
        } else {
            None
        };
        let results: Vec<Option<(usize, Outcome)>> = chunk
            .par_iter()
            .enumerate()
            .map(|(i, exps)| -> Result<Option<(usize, Outcome)>> {
                let idx = chunk_no * job.batch + i;
                let a = RingPoly::from_exponents(Field::BINARY, ell, exps);
                let code = GbCode::new(a, one_x.clone())?;
                if code.k() != 2 {
                    return Err(Error::Domain(format!(
                        "a = {exps:?} at l = {ell} is not divisible by 1+x"
                    )));
                }
                if let Some(t) = threshold {
                    if trivial_upper_bound(&code) <= Distance::Finite(t) {
                        return Ok(None);
                    }
                }
                let seed = derive_seed(job.seed, &[ell as u64, w as u64, idx as u64]);
                Ok(Some((idx, evaluate(&code, job, seed, threshold)?)))
            })
            .collect::<Result<_>>()?;
        for (idx, out) in results.into_iter().flatten() {
            all_exact &= out.exact;
            if best.as_ref().is_none_or(|b| out.d > b.0) {
                best = Some((out.d, idx, out));
            }
        }
    }
    let (d, idx, out) = best.expect("at least one canonical candidate");
    Ok(SearchRecord {
        ell,
        n: 2 * ell,
        w,
        a_exponents: cands[idx].clone(),
        k: 2,
        d,
        exact: all_exact,
        seed: out.seed,
        trials: out.trials,
        ms: if job.timing { start.elapsed().as_millis() as u64 } else { 0 },
    })
}

/// Runs every `(l, w)` of the job in ascending order, calling `on_record`
/// after each.
pub fn run_search_with(job: &SearchJob, mut on_record: impl FnMut(&SearchRecord)) -> Result<Vec<SearchRecord>> {
    job.validate()?;
    let mut out = Vec::new();
    for ell in job.lengths() {
        for &w in &job.weights {
            if w - 2 > ell {
                continue;
            }
            let r = search_one(job, ell, w)?;
            on_record(&r);
            out.push(r);
        }
    }
    Ok(out)
}

pub fn run_search(job: &SearchJob) -> Result<Vec<SearchRecord>> {
    run_search_with(job, |_| {})
}

/// Exhaustive exact weight-4 search over `2 <= l <= max_ell`.
pub fn sweep_weight4(max_ell: usize, seed: u64) -> Result<Vec<SearchRecord>> {
    let job = SearchJob::new(vec![4], (2..=max_ell).collect(), seed);
    run_search(&job)
}

/// For each weight, the smallest length reaching each distance.
pub fn min_length_per_distance(records: &[SearchRecord]) -> BTreeMap<usize, BTreeMap<Distance, usize>> {
    let mut out: BTreeMap<usize, BTreeMap<Distance, usize>> = BTreeMap::new();
    for r in records {
        let e = out.entry(r.w).or_default().entry(r.d).or_insert(r.n);
        *e = (*e).min(r.n);
    }
    out
}

pub const CSV_HEADER: [&str; 10] = ["ell", "n", "w", "a_exponents", "k", "d", "exact", "seed", "trials", "ms"];

pub fn write_csv<W: Write>(records: &[SearchRecord], out: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(out);
    wr.write_record(CSV_HEADER)?;
    for r in records {
        let exps: Vec<String> = r.a_exponents.iter().map(|e| e.to_string()).collect();
        wr.write_record([
            r.ell.to_string(),
            r.n.to_string(),
            r.w.to_string(),
            exps.join(" "),
            r.k.to_string(),
            r.d.to_string(),
            r.exact.to_string(),
            r.seed.to_string(),
            r.trials.to_string(),
            r.ms.to_string(),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

pub fn emit_csv(records: &[SearchRecord], path: &std::path::Path) -> Result<()> {
    write_csv(records, std::fs::File::create(path)?)
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SearchRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return param(format!("unexpected CSV header {header:?}"));
    }
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row?;
        let field = |i: usize| row.get(i).unwrap_or("");
        let num = |i: usize| -> Result<u64> {
            field(i)
                .parse()
                .map_err(|_| Error::Parameter(format!("bad value {:?} in column {}", field(i), CSV_HEADER[i])))
        };
        let a_exponents = field(3)
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| Error::Parameter(format!("bad exponent {s:?}"))))
            .collect::<Result<Vec<usize>>>()?;
        let d = match field(5) {
            "inf" => Distance::Infinite,
            _ => Distance::Finite(num(5)? as usize),
        };
        let exact = match field(6) {
            "true" => true,
            "false" => false,
            s => return param(format!("bad exact flag {s:?}")),
        };
        out.push(SearchRecord {
            ell: num(0)? as usize,
            n: num(1)? as usize,
            w: num(2)? as usize,
            a_exponents,
            k: num(4)? as usize,
            d,
            exact,
            seed: num(7)?,
            trials: num(8)?,
            ms: num(9)?,
        });
    }
    Ok(out)
}

/// Outcome of a constructive check of the GV-style existence bound for
/// `QC(h f, h)` with `h = 1 + x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GvWitness {
    pub ell: usize,
    pub target: usize,
    pub d_gv: usize,
    pub d_g: Distance,
    /// Exponents of the first `f` found, if any.
    pub f: Option<Vec<usize>>,
    pub d: Option<Distance>,
    pub exhaustive: bool,
    pub tried: u64,
}

/// Largest `f`-space searched exhaustively; beyond it `f` is sampled.
pub const GV_EXHAUSTIVE_BITS: usize = 20;

/// Searches `f` with `deg f < l - 1` for a binary code `QC(h f, h)`,
/// `h = 1 + x`, whose classical distance reaches `min(d[g], d_GV)`.
/// Exhaustive in increasing order of `f` read as a bit mask when the space
/// is small, else `samples` random draws from `seed`.
pub fn verify_gv_existence(ell: usize, seed: u64, samples: u64) -> Result<GvWitness> {
    if ell < 3 || !is_prime(ell as u64) || mult_order(2, ell as u64)? != ell as u64 - 1 {
        return param(format!("l = {ell} must be a prime with primitive root 2"));
    }
    let f2 = Field::BINARY;
    let h = Poly::from_exponents(f2, &[0, 1]);
    let g = Poly::cycle(f2, ell).exact_div(&h)?;
    let d_g = cyclic_distance(2, ell, &g)?;
    let d_gv = gv_bound(2, ell, 1)?;
    let target = d_g.finite().map_or(d_gv, |x| x.min(d_gv));
    let bits = ell - 1;
    let exhaustive = bits <= GV_EXHAUSTIVE_BITS;
    let opts = ExactOptions::default();
    let test = |mask: u64| -> Result<Option<Distance>> {
        let exps: Vec<usize> = (0..bits).filter(|i| mask >> i & 1 == 1).collect();
        let f = Poly::from_exponents(f2, &exps);
        let a = RingPoly::from_poly(&f.mul(&h), ell);
        let code = GbCode::new(a, RingPoly::from_poly(&h, ell))?;
        let d = classical_qc_distance_with(&code, &opts)?;
        Ok((d >= Distance::Finite(target)).then_some(d))
    };
    let mut tried = 0;
    let masks: Box<dyn Iterator<Item = u64>> = if exhaustive {
        Box::new(1..1u64 << bits)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = 1u64 << bits.min(63);
        Box::new((0..samples).map(move |_| rng.random_range(1..top)))
    };
    for mask in masks {
        tried += 1;
        if let Some(d) = test(mask)? {
            return Ok(GvWitness {
                ell,
                target,
                d_gv,
                d_g,
                f: Some((0..bits).filter(|i| mask >> i & 1 == 1).collect()),
                d: Some(d),
                exhaustive,
                tried,
            });
        }
    }
    Ok(GvWitness {
        ell,
        target,
        d_gv,
        d_g,
        f: None,
        d: None,
        exhaustive,
        tried,
    })
}
