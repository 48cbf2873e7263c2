//! Minimum distances: exact enumeration for small codes, randomized
//! information-set estimation for large ones, degeneracy tests, and the
//! distances of the classical cyclic and quasi-cyclic codes.
//!
//! Every witness stored in a [`DistanceResult`] is a Z-type codeword of the
//! GB code: it satisfies `H_X c = 0` and lies outside the row space of
//! `H_Z`. X-type codewords `(u, v)` are carried over by the weight
//! preserving map `(u, v) -> (-v̄, ū)`.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::codes::{poly_terms, AbCode, Commensurability, CssPair, GbCode, Term};
use crate::error::{param, Error, Result};
use crate::field::Field;
use crate::linalg::{pack_bits, unpack_bits, words_for, xor_into, BitRowSpace, FpMatrix, RowSpace};
use crate::poly::Poly;
use crate::ring::RingPoly;

/// Default ceiling on the number of vectors one exact enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 30;

/// Ceiling on estimator trials.
pub const MAX_TRIALS: u64 = 1_000_000_000;

const CHUNK_BITS: usize = 10;
const BLOCK_TRIALS: u64 = 32;

/// A distance value; `Infinite` stands for codes with no nontrivial
/// codewords (k = 0) or zero classical codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Distance::Infinite
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(usize),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Distance::Finite(n)),
            Raw::S(s) if s == "inf" => Ok(Distance::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad distance {s:?}"))),
        }
    }
}

/// Which CSS distance: `Z` minimizes over `ker H_X \ rowspace(H_Z)`, `X`
/// over `ker H_Z \ rowspace(H_X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    X,
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub d: Distance,
    pub exact: bool,
    /// Z-type codeword of length `2l` with weight `d`.
    pub witness: Option<Vec<u8>>,
    pub trials_used: u64,
    pub seed: u64,
    /// Vectors visited (exact) or candidates examined (estimator).
    pub steps: u64,
    pub q: u32,
}

impl DistanceResult {
    fn infinite(q: u32, exact: bool) -> Self {
        DistanceResult {
            d: Distance::Infinite,
            exact,
            witness: None,
            trials_used: 0,
            seed: 0,
            steps: 0,
            q,
        }
    }

    /// The witness as a pair of ring elements `(u, v)`.
    pub fn witness_polys(&self) -> Option<(RingPoly, RingPoly)> {
        let w = self.witness.as_ref()?;
        let f = Field::new(self.q).ok()?;
        let ell = w.len() / 2;
        Some((
            RingPoly::from_coeffs(f, w[..ell].to_vec()).ok()?,
            RingPoly::from_coeffs(f, w[ell..].to_vec()).ok()?,
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("distance result serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessWire {
    l: usize,
    u: Vec<Term>,
    v: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct ResultWire {
    d: Distance,
    exact: bool,
    q: u32,
    witness: Option<WitnessWire>,
    trials: u64,
    seed: u64,
    steps: u64,
}

impl Serialize for DistanceResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let witness = self.witness_polys().map(|(u, v)| WitnessWire {
            l: u.ell(),
            u: poly_terms(&u),
            v: poly_terms(&v),
        });
        ResultWire {
            d: self.d,
            exact: self.exact,
            q: self.q,
            witness,
            trials: self.trials_used,
            seed: self.seed,
            steps: self.steps,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistanceResult {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ResultWire::deserialize(d)?;
        let field = Field::new(w.q).map_err(serde::de::Error::custom)?;
        let witness = w.witness.map(|ww| {
            let half = |ts: &[Term]| {
                let terms: Vec<(usize, i64)> = ts
                    .iter()
                    .map(|t| match *t {
                        Term::Exp(e) => (e, 1),
                        Term::Pair(e, c) => (e, c),
                    })
                    .collect();
                RingPoly::from_terms(field, ww.l.max(1), &terms).coeffs().to_vec()
            };
            let mut v = half(&ww.u);
            v.extend(half(&ww.v));
            v
        });
        Ok(DistanceResult {
            d: w.d,
            exact: w.exact,
            witness,
            trials_used: w.trials,
            seed: w.seed,
            steps: w.steps,
            q: w.q,
        })
    }
}

/// Limits for exact enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    /// Maximum `q^dim` per enumerated kernel.
    pub budget: u128,
    /// Stop as soon as a nontrivial codeword of at most this weight is
    /// seen. The returned distance is then only an upper bound.
    pub stop_at: Option<usize>,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            budget: DEFAULT_BUDGET,
            stop_at: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EstimatorConfig {
    pub trials: u64,
    pub seed: u64,
    pub early_stop_weight: Option<usize>,
    /// Sample both sides of the AB code instead of the Z side of the GB code.
    pub use_ab: bool,
    /// Also scan pairwise row sums.
    pub pairs: bool,
}

impl EstimatorConfig {
    pub fn new(trials: u64, seed: u64) -> Result<Self> {
        let cfg = EstimatorConfig {
            trials,
            seed,
            early_stop_weight: None,
            use_ab: true,
            pairs: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.trials > MAX_TRIALS {
            return param(format!("trials must lie in [1, {MAX_TRIALS}], got {}", self.trials));
        }
        Ok(())
    }
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig::new(10_000, 0).expect("valid defaults")
    }
}

/// Distance of one CSS side with a witness of that side's type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideDistance {
    pub d: Distance,
    pub witness: Option<Vec<u8>>,
    pub steps: u64,
}

fn check_and_opposite(css: &CssPair, side: Side) -> (FpMatrix, FpMatrix) {
    match side {
        Side::Z => (css.hx(), css.hz()),
        Side::X => (css.hz(), css.hx()),
    }
}

/// True iff `c` is a nontrivial codeword on `side`: `c` is in the kernel of
/// the side's check matrix but not in the row space of the opposite one.
pub fn is_nontrivial(css: &CssPair, c: &[u8], side: Side) -> Result<bool> {
    if c.len() != css.n() {
        return param(format!("codeword length {} does not match n={}", c.len(), css.n()));
    }
    let (check, opp) = check_and_opposite(css, side);
    if check.mul_vec(c).iter().any(|&s| s != 0) {
        let name = if side == Side::Z { "H_X" } else { "H_Z" };
        return param(format!("vector fails the {name} check equation"));
    }
    Ok(!opp.row_space().contains(c))
}

trait Block: Clone + Send + Sync {
    fn from_words(w: &[u64], words: usize) -> Self;
    fn xor(&mut self, o: &Self);
    fn ones(&self) -> u32;
    fn words(&self) -> &[u64];
}

impl<const W: usize> Block for [u64; W] {
    fn from_words(w: &[u64], _: usize) -> Self {
        let mut a = [0u64; W];
        a[..w.len()].copy_from_slice(w);
        a
    }

    #[inline(always)]
    fn xor(&mut self, o: &Self) {
        for i in 0..W {
            self[i] ^= o[i];
        }
    }

    #[inline(always)]
    fn ones(&self) -> u32 {
        self.iter().map(|x| x.count_ones()).sum()
    }

    fn words(&self) -> &[u64] {
        self
    }
}

impl Block for Vec<u64> {
    fn from_words(w: &[u64], words: usize) -> Self {
        let mut v = w.to_vec();
        v.resize(words, 0);
        v
    }

    fn xor(&mut self, o: &Self) {
        for (a, b) in self.iter_mut().zip(o) {
            *a ^= b;
        }
    }

    fn ones(&self) -> u32 {
        self.iter().map(|x| x.count_ones()).sum()
    }

    fn words(&self) -> &[u64] {
        self
    }
}

struct Found<T> {
    weight: u32,
    vec: T,
}

/// Gray-code walk over all nonzero combinations of `basis`. The top basis
/// vectors select one of `2^p` chunks that run in parallel; the winner is
/// the lowest weight, then the lowest chunk index, then the first vector
/// visited in that chunk, so the result does not depend on scheduling.
fn gray_search<B: Block>(
    basis: &[B],
    outside: Option<&BitRowSpace>,
    below: u32,
    stop_at: Option<u32>,
) -> (Option<Found<Vec<u64>>>, u64) {
    let k = basis.len();
    if k == 0 {
        return (None, 0);
    }
    let p = k.min(CHUNK_BITS);
    let low = k - p;
    let (lo, hi) = basis.split_at(low);
    let zero = B::from_words(&[], basis[0].words().len());
    let global = AtomicU32::new(below);
    let stop = AtomicBool::new(false);
    let steps = AtomicU64::new(0);
    let per_chunk: Vec<Option<Found<B>>> = (0..1u64 << p)
        .into_par_iter()
        .map(|chunk| {
            if stop.load(Ordering::Relaxed) {
                return None;
            }
            let mut v = zero.clone();
            for (j, h) in hi.iter().enumerate() {
                if chunk >> j & 1 == 1 {
                    v.xor(h);
                }
            }
            let mut best: Option<Found<B>> = None;
            let mut best_w = below;
            let mut scratch = Vec::new();
            let mut visit = |v: &B| {
                let w = v.ones();
                if w == 0 || w >= best_w || w > global.load(Ordering::Relaxed) {
                    return false;
                }
                if let Some(rs) = outside {
                    if !rs.is_outside_with(v.words(), &mut scratch) {
                        return false;
                    }
                }
                best_w = w;
                best = Some(Found { weight: w, vec: v.clone() });
                global.fetch_min(w, Ordering::Relaxed);
                if stop_at.is_some_and(|s| w <= s) {
                    stop.store(true, Ordering::Relaxed);
                    return true;
                }
                false
            };
            let mut count = 1u64;
            if !visit(&v) {
                for s in 1..(1u64 << low) {
                    v.xor(&lo[s.trailing_zeros() as usize]);
                    count += 1;
                    if visit(&v) || (s & 0xffff == 0 && stop.load(Ordering::Relaxed)) {
                        break;
                    }
                }
            }
            steps.fetch_add(count, Ordering::Relaxed);
            best
        })
        .collect();
    let mut winner: Option<Found<B>> = None;
    for f in per_chunk.into_iter().flatten() {
        if winner.as_ref().is_none_or(|w| f.weight < w.weight) {
            winner = Some(f);
        }
    }
    let winner = winner.map(|f| Found {
        weight: f.weight,
        vec: f.vec.words().to_vec(),
    });
    (winner, steps.into_inner())
}

fn binary_search(
    n: usize,
    basis: &[Vec<u8>],
    outside: Option<&RowSpace>,
    below: u32,
    stop_at: Option<u32>,
) -> (Option<Found<Vec<u8>>>, u64) {
    let words = words_for(n);
    let packed: Vec<Vec<u64>> = basis.iter().map(|r| pack_bits(r)).collect();
    let bits = outside.map(|rs| rs.to_bits());
    let bits = bits.as_ref();
    macro_rules! fixed {
        ($w:literal) => {{
            let b: Vec<[u64; $w]> = packed.iter().map(|r| Block::from_words(r, $w)).collect();
            gray_search(&b, bits, below, stop_at)
        }};
    }
    let (found, steps) = match words {
        0 | 1 => fixed!(1),
        2 => fixed!(2),
        3..=4 => fixed!(4),
        5..=8 => fixed!(8),
        9..=16 => fixed!(16),
        17..=32 => fixed!(32),
        33..=64 => fixed!(64),
        _ => {
            let b: Vec<Vec<u64>> = packed.iter().map(|r| Block::from_words(r, words)).collect();
            gray_search(&b, bits, below, stop_at)
        }
    };
    let found = found.map(|f| Found {
        weight: f.weight,
        vec: unpack_bits(&f.vec, n),
    });
    (found, steps)
}

/// Mixed-radix walk over all `q^k` coefficient vectors.
fn odometer_search(
    field: Field,
    n: usize,
    basis: &[Vec<u8>],
    outside: Option<&RowSpace>,
    below: u32,
    stop_at: Option<u32>,
) -> (Option<Found<Vec<u8>>>, u64) {
    let k = basis.len();
    let q = field.q() as u8;
    let mut digits = vec![0u8; k];
    let mut v = vec![0u8; n];
    let mut best: Option<Found<Vec<u8>>> = None;
    let mut best_w = below;
    let mut steps = 0u64;
    let mut i = 0;
    while i < k {
        for (x, &b) in v.iter_mut().zip(&basis[i]) {
            *x = field.add(*x, b);
        }
        digits[i] += 1;
        if digits[i] == q {
            digits[i] = 0;
            i += 1;
            continue;
        }
        i = 0;
        steps += 1;
        let w = v.iter().filter(|&&x| x != 0).count() as u32;
        if w < best_w && outside.is_none_or(|rs| !rs.contains(&v)) {
            best_w = w;
            best = Some(Found { weight: w, vec: v.clone() });
            if stop_at.is_some_and(|s| w <= s) {
                break;
            }
        }
    }
    (best, steps)
}

fn budget_check(q: u32, dim: usize, budget: u128) -> Result<()> {
    let needed = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    Ok(())
}

/// Number of supports of size `1..below` in `n` positions, saturating.
fn ball_cost(n: usize, below: u32) -> u128 {
    let mut c: u128 = 1;
    let mut total: u128 = 0;
    for s in 1..(below as usize).min(n + 1) {
        c = c.saturating_mul((n - s + 1) as u128) / s as u128;
        total = total.saturating_add(c);
    }
    total
}

/// Binary search by support: the first weight `s < below` at which some
/// support of size `s` has zero syndrome under `check` and lies outside
/// `outside`. Supports are scanned in lexicographic order, the first index
/// in parallel, so the witness does not depend on scheduling.
fn ball_search(n: usize, check: &FpMatrix, outside: Option<&RowSpace>, below: u32) -> (Option<Found<Vec<u8>>>, u64) {
    let r = check.nrows();
    let words = words_for(r).max(1);
    let cols: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let col: Vec<u8> = (0..r).map(|i| check.get(i, j)).collect();
            let mut w = pack_bits(&col);
            w.resize(words, 0);
            w
        })
        .collect();
    let bits = outside.map(|rs| rs.to_bits());
    let steps = AtomicU64::new(0);

    fn rec(
        cols: &[Vec<u64>],
        start: usize,
        left: usize,
        syn: &mut [u64],
        support: &mut Vec<usize>,
        outside: Option<&BitRowSpace>,
        scratch: &mut Vec<u64>,
        count: &mut u64,
    ) -> bool {
        let n = cols.len();
        if left == 0 {
            *count += 1;
            if syn.iter().any(|&x| x != 0) {
                return false;
            }
            let Some(rs) = outside else { return true };
            let mut v = vec![0u64; words_for(n)];
            for &j in support.iter() {
                v[j / 64] |= 1 << (j % 64);
            }
            return rs.is_outside_with(&v, scratch);
        }
        for j in start..=n - left {
            xor_into(syn, &cols[j]);
            support.push(j);
            let hit = rec(cols, j + 1, left - 1, syn, support, outside, scratch, count);
            if hit {
                return true;
            }
            support.pop();
            xor_into(syn, &cols[j]);
        }
        false
    }

    for s in 1..(below as usize).min(n + 1) {
        let hits: Vec<Option<Vec<usize>>> = (0..=n - s)
            .into_par_iter()
            .map(|first| {
                let mut syn = cols[first].clone();
                let mut support = vec![first];
                let mut scratch = Vec::new();
                let mut count = 0;
                let hit = rec(&cols, first + 1, s - 1, &mut syn, &mut support, bits.as_ref(), &mut scratch, &mut count);
                steps.fetch_add(count, Ordering::Relaxed);
                hit.then_some(support)
            })
            .collect();
        if let Some(support) = hits.into_iter().flatten().next() {
            let mut v = vec![0u8; n];
            for j in support {
                v[j] = 1;
            }
            return (Some(Found { weight: s as u32, vec: v }), steps.into_inner());
        }
    }
    (None, steps.into_inner())
}

/// Minimum weight over nonzero combinations of `basis` lying outside
/// `outside`, restricted to weights below `below`. For binary codes with a
/// known `below` and the check matrix of the span available, scanning
/// supports of weight below `below` replaces the walk over the span when
/// that is cheaper.
fn min_weight(
    field: Field,
    n: usize,
    basis: &[Vec<u8>],
    check: Option<&FpMatrix>,
    outside: Option<&RowSpace>,
    below: Option<usize>,
    opts: &ExactOptions,
) -> Result<(Option<Found<Vec<u8>>>, u64)> {
    let below = below.map_or(u32::MAX, |b| b.min(u32::MAX as usize) as u32);
    let stop = opts.stop_at.map(|s| s as u32);
    if let (true, Some(check), true) = (field.is_binary(), check, below != u32::MAX) {
        let ball = ball_cost(n, below);
        let walk = 1u128.checked_shl(basis.len() as u32).unwrap_or(u128::MAX);
        if ball < walk {
            if ball > opts.budget {
                return Err(Error::Budget {
                    needed: ball,
                    budget: opts.budget,
                });
            }
            return Ok(ball_search(n, check, outside, below));
        }
    }
    budget_check(field.q(), basis.len(), opts.budget)?;
    Ok(if field.is_binary() {
        binary_search(n, basis, outside, below, stop)
    } else {
        odometer_search(field, n, basis, outside, below, stop)
    })
}

struct SideProblem {
    check: FpMatrix,
    kernel: FpMatrix,
    opposite: RowSpace,
}

fn side_problem(css: &CssPair, side: Side) -> SideProblem {
    let (check, opp) = check_and_opposite(css, side);
    SideProblem {
        kernel: check.kernel(),
        check,
        opposite: opp.row_space(),
    }
}

fn solve_side(field: Field, n: usize, p: &SideProblem, below: Option<usize>, opts: &ExactOptions) -> Result<SideDistance> {
    let (found, steps) = min_weight(field, n, p.kernel.rows(), Some(&p.check), Some(&p.opposite), below, opts)?;
    Ok(match found {
        Some(f) => SideDistance {
            d: Distance::Finite(f.weight as usize),
            witness: Some(f.vec),
            steps,
        },
        None => SideDistance {
            d: Distance::Infinite,
            witness: None,
            steps,
        },
    })
}

/// Exact distance of one side of an arbitrary CSS pair.
pub fn css_side_distance(css: &CssPair, side: Side, opts: &ExactOptions) -> Result<SideDistance> {
    let p = side_problem(css, side);
    solve_side(css.field(), css.n(), &p, None, opts)
}

/// Exact `min(d_X, d_Z)` of an arbitrary CSS pair.
pub fn css_distance(css: &CssPair, opts: &ExactOptions) -> Result<Distance> {
    let pz = side_problem(css, Side::Z);
    let px = side_problem(css, Side::X);
    budget_check(css.field().q(), pz.kernel.nrows(), opts.budget)?;
    let z = solve_side(css.field(), css.n(), &pz, None, opts)?;
    let x = solve_side(css.field(), css.n(), &px, z.d.finite(), opts)?;
    Ok(z.d.min(x.d))
}

/// Maps an X-type codeword `(u, v)` of a GB code to the Z-type codeword
/// `(-v̄, ū)` of the same weight.
pub fn x_to_z(field: Field, c: &[u8]) -> Vec<u8> {
    let ell = c.len() / 2;
    let (u, v) = c.split_at(ell);
    let mut out = vec![0u8; 2 * ell];
    for i in 0..ell {
        let j = (ell - i) % ell;
        out[i] = field.neg(v[j]);
        out[ell + i] = u[j];
    }
    out
}

/// Exact distance with the default budget.
pub fn exact_distance(code: &GbCode) -> Result<DistanceResult> {
    exact_distance_with(code, &ExactOptions::default())
}

/// Exact distance through the AB code: `d = min(d_Z', d_X')`. Commensurate
/// codes are first reduced to their base code, whose distance is the same.
pub fn exact_distance_with(code: &GbCode, opts: &ExactOptions) -> Result<DistanceResult> {
    if code.is_empty() {
        return Ok(DistanceResult::infinite(code.q(), true));
    }
    if let Commensurability::Commensurate { delta, base } = code.commensurate_decompose() {
        let mut r = exact_distance_with(&base, opts)?;
        r.witness = r.witness.map(|w| expand_vector(&w, base.ell(), delta));
        return Ok(r);
    }
    let ab = code.ab()?;
    let (d, witness, steps) = ab_exact(&ab, opts)?;
    Ok(DistanceResult {
        d,
        exact: opts.stop_at.is_none(),
        witness,
        trials_used: 0,
        seed: 0,
        steps,
        q: code.q(),
    })
}

fn expand_vector(w: &[u8], ell0: usize, delta: usize) -> Vec<u8> {
    let ell = ell0 * delta;
    let mut out = vec![0u8; 2 * ell];
    for i in 0..ell0 {
        out[i * delta] = w[i];
        out[ell + i * delta] = w[ell0 + i];
    }
    out
}

fn ab_exact(ab: &AbCode, opts: &ExactOptions) -> Result<(Distance, Option<Vec<u8>>, u64)> {
    let css = ab.css();
    let field = css.field();
    let pz = side_problem(&css, Side::Z);
    let px = side_problem(&css, Side::X);
    budget_check(field.q(), pz.kernel.nrows(), opts.budget)?;
    let z = solve_side(field, css.n(), &pz, None, opts)?;
    if let (Some(s), Some(d)) = (opts.stop_at, z.d.finite()) {
        if d <= s {
            return Ok((z.d, z.witness, z.steps));
        }
    }
    let x = solve_side(field, css.n(), &px, z.d.finite(), opts)?;
    let steps = z.steps + x.steps;
    Ok(if x.d < z.d {
        (x.d, x.witness.map(|w| x_to_z(field, &w)), steps)
    } else {
        (z.d, z.witness, steps)
    })
}

/// Exact distance of one side computed directly on the GB check matrices,
/// without the AB shortcut. The witness has the side's own type.
pub fn direct_side_distance(code: &GbCode, side: Side, opts: &ExactOptions) -> Result<SideDistance> {
    if code.is_empty() {
        return Ok(SideDistance {
            d: Distance::Infinite,
            witness: None,
            steps: 0,
        });
    }
    css_side_distance(&code.css(), side, opts)
}

/// Weight of the codeword `(b1, -a1)`, an upper bound on the distance.
pub fn trivial_upper_bound(code: &GbCode) -> Distance {
    match code.ab() {
        Ok(ab) => Distance::Finite(ab.a1().weight() + ab.b1().weight()),
        Err(_) => Distance::Infinite,
    }
}

/// Minimum distance of the cyclic code generated by `g` in `F_q[x]/(x^l-1)`.
pub fn cyclic_distance(q: u32, ell: usize, g: &Poly) -> Result<Distance> {
    cyclic_distance_with(q, ell, g, &ExactOptions::default())
}

pub fn cyclic_distance_with(q: u32, ell: usize, g: &Poly, opts: &ExactOptions) -> Result<Distance> {
    let field = Field::new(q)?;
    if g.field() != field {
        return param("generator polynomial is over a different field");
    }
    if ell == 0 {
        return param("ring length must be at least 1");
    }
    if g.is_zero() || !g.divides(&Poly::cycle(field, ell)) {
        return param(format!("generator {g} does not divide x^{ell}-1"));
    }
    let dim = ell - g.deg().expect("nonzero");
    if dim == 0 {
        return Ok(Distance::Infinite);
    }
    let basis: Vec<Vec<u8>> = (0..dim)
        .map(|i| RingPoly::from_poly(g, ell).shift(i).coeffs().to_vec())
        .collect();
    let (found, _) = min_weight(field, ell, &basis, None, None, None, opts)?;
    Ok(found.map_or(Distance::Infinite, |f| Distance::Finite(f.weight as usize)))
}

/// Minimum weight of a nonzero vector in `ker H_X`: the distance of the
/// classical quasi-cyclic code `QC(a, b)`.
pub fn classical_qc_distance(code: &GbCode) -> Result<Distance> {
    classical_qc_distance_with(code, &ExactOptions::default())
}

pub fn classical_qc_distance_with(code: &GbCode, opts: &ExactOptions) -> Result<Distance> {
    let kernel = code.css().hx().kernel();
    let (found, _) = min_weight(code.field(), code.n(), kernel.rows(), None, None, None, opts)?;
    Ok(found.map_or(Distance::Infinite, |f| Distance::Finite(f.weight as usize)))
}

struct EstSide {
    kernel: Vec<Vec<u8>>,
    opposite: RowSpace,
    to_z: bool,
}

struct BinSide {
    kernel: Vec<Vec<u64>>,
    opposite: BitRowSpace,
}

/// Per-trial best candidate, in side-local form.
struct Candidate {
    weight: u32,
    vec: Vec<u8>,
}

fn bin_trial(s: &BinSide, n: usize, perm: &[usize], below: u32, pairs: bool, scratch: &mut Vec<u64>) -> (Option<Candidate>, u64) {
    let mut rows = s.kernel.clone();
    let k = rows.len();
    let mut rank = 0;
    for &col in perm {
        if rank == k {
            break;
        }
        let (wi, mask) = (col / 64, 1u64 << (col % 64));
        let Some(r) = (rank..k).find(|&r| rows[r][wi] & mask != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let pivot = std::mem::take(&mut rows[rank]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[wi] & mask != 0 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    let mut best_w = below;
    let mut best: Option<Vec<u64>> = None;
    let mut examined = 0u64;
    for row in &rows {
        examined += 1;
        let w: u32 = row.iter().map(|x| x.count_ones()).sum();
        if w < best_w && s.opposite.is_outside_with(row, scratch) {
            best_w = w;
            best = Some(row.clone());
        }
    }
    if pairs {
        let mut tmp = vec![0u64; rows.first().map_or(0, |r| r.len())];
        for i in 0..k {
            for j in i + 1..k {
                examined += 1;
                let w: u32 = rows[i]
                    .iter()
                    .zip(&rows[j])
                    .map(|(a, b)| (a ^ b).count_ones())
                    .sum();
                if w < best_w {
                    for ((t, a), b) in tmp.iter_mut().zip(&rows[i]).zip(&rows[j]) {
                        *t = a ^ b;
                    }
                    if s.opposite.is_outside_with(&tmp, scratch) {
                        best_w = w;
                        best = Some(tmp.clone());
                    }
                }
            }
        }
    }
    let cand = best.map(|b| Candidate {
        weight: best_w,
        vec: unpack_bits(&b, n),
    });
    (cand, examined)
}

fn qary_trial(field: Field, s: &EstSide, perm: &[usize], below: u32, pairs: bool) -> (Option<Candidate>, u64) {
    let mut rows = s.kernel.clone();
    let k = rows.len();
    let mut rank = 0;
    for &col in perm {
        if rank == k {
            break;
        }
        let Some(r) = (rank..k).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = field.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = std::mem::take(&mut rows[rank]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let c = field.neg(row[col]);
                crate::linalg::axpy(field, row, c, &pivot);
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    let weight = |v: &[u8]| v.iter().filter(|&&x| x != 0).count() as u32;
    let mut best_w = below;
    let mut best: Option<Vec<u8>> = None;
    let mut examined = 0u64;
    for row in &rows {
        examined += 1;
        let w = weight(row);
        if w < best_w && !s.opposite.contains(row) {
            best_w = w;
            best = Some(row.clone());
        }
    }
    if pairs {
        for i in 0..k {
            for j in i + 1..k {
                for c in 1..field.q() as u8 {
                    examined += 1;
                    let mut t = rows[i].clone();
                    crate::linalg::axpy(field, &mut t, c, &rows[j]);
                    let w = weight(&t);
                    if w < best_w && !s.opposite.contains(&t) {
                        best_w = w;
                        best = Some(t);
                    }
                }
            }
        }
    }
    (best.map(|vec| Candidate { weight: best_w, vec }), examined)
}

/// Randomized upper bound on the distance. Each trial permutes the
/// columns uniformly at random, row-reduces the kernel generator matrix
/// with pivots taken in permuted order, and scans the rows (and row pairs)
/// for nontrivial low-weight codewords. Trial `t` draws from stream `t` of
/// a ChaCha8 generator seeded with `cfg.seed`; trials are merged in fixed
/// blocks so the result is independent of the worker count.
pub fn estimate_distance(code: &GbCode, cfg: &EstimatorConfig) -> Result<DistanceResult> {
    cfg.validate()?;
    if code.is_empty() {
        let mut r = DistanceResult::infinite(code.q(), false);
        r.seed = cfg.seed;
        return Ok(r);
    }
    let field = code.field();
    let n = code.n();
    let sides: Vec<EstSide> = if cfg.use_ab {
        let css = code.ab()?.css();
        vec![
            EstSide {
                kernel: css.hx().kernel().rows().to_vec(),
                opposite: css.hz().row_space(),
                to_z: false,
            },
            EstSide {
                kernel: css.hz().kernel().rows().to_vec(),
                opposite: css.hx().row_space(),
                to_z: true,
            },
        ]
    } else {
        let css = code.css();
        vec![EstSide {
            kernel: css.hx().kernel().rows().to_vec(),
            opposite: css.hz().row_space(),
            to_z: false,
        }]
    };
    let bin: Vec<BinSide> = if field.is_binary() {
        sides
            .iter()
            .map(|s| BinSide {
                kernel: s.kernel.iter().map(|r| pack_bits(r)).collect(),
                opposite: s.opposite.to_bits(),
            })
            .collect()
    } else {
        Vec::new()
    };

    let trial = |t: u64, below: u32| -> (Option<Candidate>, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(t);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Candidate> = None;
        let mut below = below;
        let mut examined = 0;
        let mut scratch = Vec::new();
        for i in 0..sides.len() {
            perm.shuffle(&mut rng);
            let (cand, ex) = if field.is_binary() {
                bin_trial(&bin[i], n, &perm, below, cfg.pairs, &mut scratch)
            } else {
                qary_trial(field, &sides[i], &perm, below, cfg.pairs)
            };
            examined += ex;
            if let Some(mut c) = cand {
                if sides[i].to_z {
                    c.vec = x_to_z(field, &c.vec);
                }
                below = c.weight;
                best = Some(c);
            }
        }
        (best, examined)
    };

    let mut best: Option<Candidate> = None;
    let mut used = 0u64;
    let mut examined = 0u64;
    while used < cfg.trials {
        let end = (used + BLOCK_TRIALS).min(cfg.trials);
        let below = best.as_ref().map_or(u32::MAX, |c| c.weight);
        let block: Vec<(Option<Candidate>, u64)> =
            (used..end).into_par_iter().map(|t| trial(t, below)).collect();
        for (cand, ex) in block {
            examined += ex;
            if let Some(c) = cand {
                if best.as_ref().is_none_or(|b| c.weight < b.weight) {
                    best = Some(c);
                }
            }
        }
        used = end;
        if let (Some(stop), Some(b)) = (cfg.early_stop_weight, &best) {
            if b.weight as usize <= stop {
                break;
            }
        }
    }
    let best = best.expect("a basis of a kernel with nontrivial vectors has a nontrivial row");
    Ok(DistanceResult {
        d: Distance::Finite(best.weight as usize),
        exact: false,
        witness: Some(best.vec),
        trials_used: used,
        seed: cfg.seed,
        steps: examined,
        q: code.q(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> GbCode {
        GbCode::binary(3, &[0, 1], &[0, 2]).unwrap()
    }

    #[test]
    fn nontriviality_examples() {
        let css = small().css();
        let c = vec![1, 0, 0, 0, 1, 0];
        assert!(is_nontrivial(&css, &c, Side::Z).unwrap());
        for row in css.hz().rows() {
            assert!(!is_nontrivial(&css, row, Side::Z).unwrap());
        }
        assert!(!is_nontrivial(&css, &[0; 6], Side::Z).unwrap());
        assert!(is_nontrivial(&css, &[1, 0, 0, 0, 0, 0], Side::Z).is_err());
    }

    #[test]
    fn exact_small_examples() {
        let r = exact_distance(&small()).unwrap();
        assert_eq!(r.d, Distance::Finite(2));
        assert!(r.exact);
        let w = r.witness.clone().unwrap();
        assert_eq!(w.iter().filter(|&&x| x != 0).count(), 2);
        assert!(is_nontrivial(&small().css(), &w, Side::Z).unwrap());
        let r = exact_distance(&GbCode::binary(2, &[0, 1], &[0, 1]).unwrap()).unwrap();
        assert_eq!(r.d, Distance::Finite(2));
        let empty = GbCode::binary(21, &[0, 1, 2, 4], &[0, 7, 14]).unwrap();
        assert_eq!(exact_distance(&empty).unwrap().d, Distance::Infinite);
    }

    #[test]
    fn budget_refusal() {
        let code = GbCode::binary(21, &[0, 3, 6, 12], &[0, 7]).unwrap();
        let opts = ExactOptions {
            budget: 1 << 10,
            stop_at: None,
        };
        assert!(matches!(exact_distance_with(&code, &opts), Err(Error::Budget { .. })));
    }

    #[test]
    fn x_witness_maps_to_z_witness() {
        let code = GbCode::binary(7, &[0, 2, 3, 4], &[0, 1]).unwrap();
        let css = code.css();
        let x = direct_side_distance(&code, Side::X, &ExactOptions::default()).unwrap();
        let w = x.witness.unwrap();
        assert!(is_nontrivial(&css, &w, Side::X).unwrap());
        let z = x_to_z(Field::BINARY, &w);
        assert!(is_nontrivial(&css, &z, Side::Z).unwrap());
    }

    #[test]
    fn cyclic_examples() {
        let f = Field::BINARY;
        let all = Poly::from_exponents(f, &(0..11).collect::<Vec<_>>());
        assert_eq!(cyclic_distance(2, 11, &all).unwrap(), Distance::Finite(11));
        let ham = Poly::from_exponents(f, &[0, 1, 3]);
        assert_eq!(cyclic_distance(2, 7, &ham).unwrap(), Distance::Finite(3));
        assert_eq!(cyclic_distance(2, 7, &Poly::cycle(f, 7)).unwrap(), Distance::Infinite);
        assert!(cyclic_distance(2, 7, &Poly::from_exponents(f, &[0, 2])).is_err());
        assert_eq!(cyclic_distance(2, 7, &Poly::one(f)).unwrap(), Distance::Finite(1));
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_qc_distance(&small()).unwrap(), Distance::Finite(2));
        let c = GbCode::binary(5, &[0], &[0]).unwrap();
        assert_eq!(classical_qc_distance(&c).unwrap(), Distance::Finite(2));
    }

    #[test]
    fn trivial_bound_examples() {
        let c = GbCode::binary(7, &[0, 2, 3, 4], &[0, 3]).unwrap();
        assert!(trivial_upper_bound(&c) >= exact_distance(&c).unwrap().d);
        let c = GbCode::binary(9, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(trivial_upper_bound(&c), Distance::Finite(2));
    }

    #[test]
    fn qary_exact_and_estimate_agree() {
        let c = GbCode::from_terms(3, 4, &[(0, 1), (1, 1)], &[(0, 1), (1, 1)]).unwrap();
        let e = exact_distance(&c).unwrap();
        assert_eq!(e.d, Distance::Finite(2));
        let est = estimate_distance(&c, &EstimatorConfig::new(200, 5).unwrap()).unwrap();
        assert_eq!(est.d, e.d);
        assert!(!est.exact);
    }

    #[test]
    fn estimator_is_reproducible() {
        let code = GbCode::binary(21, &[0, 3, 6, 12], &[0, 7]).unwrap();
        let cfg = EstimatorConfig::new(300, 42).unwrap();
        let a = estimate_distance(&code, &cfg).unwrap();
        let b = estimate_distance(&code, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.d, Distance::Finite(3));
        assert!(!a.exact);
    }

    #[test]
    fn result_json_roundtrip() {
        let r = exact_distance(&small()).unwrap();
        let s = r.to_json();
        assert!(s.contains("\"witness\":{\"l\":3,"));
        let back: DistanceResult = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let inf = DistanceResult::infinite(2, true);
        assert!(inf.to_json().contains("\"d\":\"inf\""));
    }

    #[test]
    fn support_scan_matches_walk() {
        let opts = ExactOptions::default();
        for (ell, a, b) in [(9, vec![0, 1], vec![0, 2]), (12, vec![0, 1, 2], vec![0, 3]), (10, vec![0, 3], vec![0, 1])] {
            let css = GbCode::binary(ell, &a, &b).unwrap().css();
            let p = side_problem(&css, Side::X);
            let walk = solve_side(css.field(), css.n(), &p, None, &opts).unwrap();
            let d = walk.d.finite().unwrap();
            let (found, _) = ball_search(css.n(), &p.check, Some(&p.opposite), d as u32 + 1);
            let f = found.unwrap();
            assert_eq!(f.weight as usize, d);
            assert!(is_nontrivial(&css, &f.vec, Side::X).unwrap());
            assert!(ball_search(css.n(), &p.check, Some(&p.opposite), d as u32).0.is_none());
        }
        assert_eq!(ball_cost(10, 3), 10 + 45);
    }
}
