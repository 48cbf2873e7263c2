//! Distance bounds for GB and quasi-cyclic codes, and per-code reports.

use num_bigint::BigUint;
use serde::Serialize;

use crate::codes::{CodeSpec, GbCode};
use crate::distance::{
    classical_qc_distance_with, cyclic_distance_with, trivial_upper_bound, Distance, DistanceResult,
    ExactOptions,
};
use crate::error::{domain, param, Error, Result};
use crate::field::Field;
use crate::maps::embed_code;
use crate::poly::Poly;

/// Largest `d` with
/// `sum_{s=1}^{d-1} (q-1)^s [C(2l, s) - C(l, s)] < q^(l - deg h) - 1`.
pub fn gv_bound(q: u32, ell: usize, deg_h: usize) -> Result<usize> {
    Field::new(q)?;
    if ell == 0 || deg_h == 0 || deg_h >= ell {
        return param(format!("gv_bound needs 0 < deg h < l, got deg h = {deg_h}, l = {ell}"));
    }
    let rhs = BigUint::from(q).pow((ell - deg_h) as u32) - 1u32;
    let qm1 = BigUint::from(q - 1);
    let mut c2 = BigUint::from(1u32);
    let mut c1 = BigUint::from(1u32);
    let mut pw = BigUint::from(1u32);
    let mut sum = BigUint::from(0u32);
    let mut d = 1;
    for s in 1..=2 * ell {
        c2 = c2 * (2 * ell - s + 1) / s;
        c1 = if s <= ell { c1 * (ell - s + 1) / s } else { BigUint::from(0u32) };
        pw *= &qm1;
        sum += &pw * (&c2 - &c1);
        if sum >= rhs {
            break;
        }
        d = s + 1;
    }
    Ok(d)
}

/// Which hypothesis of the special QC bound applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QcCase {
    /// `r = 0`: `d0 >= min(d[q], 1 + d[p])`.
    A,
    /// `gcd(r, x^l - 1) = 1`: `d0 >= min(2 d[q], d[p] / wgt r)`.
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QcSpecialBound {
    pub case: QcCase,
    pub p: String,
    pub q_poly: String,
    pub d_p: Distance,
    pub d_q: Distance,
    pub bound: Distance,
}

fn add_one(d: Distance) -> Distance {
    match d {
        Distance::Finite(x) => Distance::Finite(x + 1),
        Distance::Infinite => Distance::Infinite,
    }
}

/// Lower bound on the distance of `QC(f h, h)`. `d[p]` is the distance of
/// the cyclic code generated by `p`, so `d[1] = 1` and `d[x^l - 1]` is
/// infinite.
pub fn qc_special_bound(q: u32, ell: usize, h: &Poly, f: &Poly, r: &Poly) -> Result<QcSpecialBound> {
    qc_special_bound_with(q, ell, h, f, r, &ExactOptions::default())
}

pub fn qc_special_bound_with(
    q: u32,
    ell: usize,
    h: &Poly,
    f: &Poly,
    r: &Poly,
    opts: &ExactOptions,
) -> Result<QcSpecialBound> {
    let field = Field::new(q)?;
    if ell == 0 {
        return param("ring length must be at least 1");
    }
    if [h, f, r].iter().any(|p| p.field() != field) {
        return param("h, f and r must be over F_q");
    }
    let cycle = Poly::cycle(field, ell);
    let hh = h.gcd(&cycle);
    if h.is_zero() {
        return param("h must be nonzero");
    }
    let g = cycle.exact_div(&hh)?;
    let case = if r.is_zero() {
        QcCase::A
    } else {
        let c = r.gcd(&cycle);
        if !c.is_one() {
            return domain(format!("case (b) needs gcd(r, x^{ell}-1) = 1, got {c}"));
        }
        QcCase::B
    };
    let p = f.sub(r).gcd(&cycle);
    if !p.divides(&g) {
        return domain(format!("p = {p} does not divide the generator g = {g}"));
    }
    let qp = g.exact_div(&p)?;
    let d_p = cyclic_distance_with(q, ell, &p, opts)?;
    let d_q = cyclic_distance_with(q, ell, &qp, opts)?;
    let bound = match case {
        QcCase::A => d_q.min(add_one(d_p)),
        QcCase::B => {
            let twice = match d_q {
                Distance::Finite(x) => Distance::Finite(2 * x),
                Distance::Infinite => Distance::Infinite,
            };
            let ratio = match d_p {
                Distance::Finite(x) => Distance::Finite(x.div_ceil(r.weight())),
                Distance::Infinite => Distance::Infinite,
            };
            twice.min(ratio)
        }
    };
    Ok(QcSpecialBound {
        case,
        p: p.to_string(),
        q_poly: qp.to_string(),
        d_p,
        d_q,
        bound,
    })
}

/// Length bound for row-weight-4 codes: `n >= 1 + d^2` for odd `d` and
/// `n >= d^2` for even `d`.
pub fn weight4_length_check(n: usize, d: Distance) -> bool {
    match d {
        Distance::Infinite => true,
        Distance::Finite(d) => n >= weight4_min_length(d),
    }
}

/// Smallest length allowed by the weight-4 bound for distance `d`.
pub fn weight4_min_length(d: usize) -> usize {
    if d % 2 == 1 {
        1 + d * d
    } else {
        d * d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Violated,
    Unknown,
    ReportOnly,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub value: Option<Distance>,
    pub status: Status,
    pub note: String,
}

impl BoundEntry {
    fn new(value: Option<Distance>, status: Status, note: impl Into<String>) -> Self {
        BoundEntry {
            value,
            status,
            note: note.into(),
        }
    }

    fn na(note: impl Into<String>) -> Self {
        BoundEntry::new(None, Status::NotApplicable, note)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub code: CodeSpec,
    pub n: usize,
    pub k: usize,
    pub d: Option<Distance>,
    pub d_exact: bool,
    /// `d <= d_g`, the distance of the cyclic code generated by `g`.
    pub d_g: BoundEntry,
    /// `d >= d_0`, the distance of the classical code `QC(a, b)`.
    pub d_classical: BoundEntry,
    /// `d <= wgt(a1) + wgt(b1)`.
    pub trivial_upper: BoundEntry,
    /// Counting value `d_GV` for the code's `(q, l, deg h)`.
    pub d_gv: BoundEntry,
    /// Special QC lower bound on `d_0` when `b | a`.
    pub qc_special: BoundEntry,
    pub weight4_length: BoundEntry,
    pub locality_dimension: BoundEntry,
}

impl BoundReport {
    pub fn violations(&self) -> Vec<&'static str> {
        [
            ("d_g", &self.d_g),
            ("d_classical", &self.d_classical),
            ("trivial_upper", &self.trivial_upper),
            ("qc_special", &self.qc_special),
            ("weight4_length", &self.weight4_length),
        ]
        .into_iter()
        .filter(|(_, e)| e.status == Status::Violated)
        .map(|(n, _)| n)
        .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Upper-bound check `d <= bound`. An estimate is itself an upper bound,
/// so it can confirm but not refute.
fn upper_check(d: Option<&DistanceResult>, bound: Distance) -> Status {
    match d {
        None => Status::Unknown,
        Some(r) if r.d <= bound => Status::Pass,
        Some(r) if r.exact => Status::Violated,
        Some(_) => Status::Unknown,
    }
}

/// Lower-bound check `d >= bound`. Any reported weight is a real codeword,
/// so an estimate below the bound is a genuine violation.
fn lower_check(d: Option<&DistanceResult>, bound: Distance) -> Status {
    match d {
        None => Status::Unknown,
        Some(r) if r.d >= bound => {
            if r.exact {
                Status::Pass
            } else {
                Status::Unknown
            }
        }
        Some(_) => Status::Violated,
    }
}

/// Evaluates every applicable bound for `code` against a computed distance.
pub fn bound_report(code: &GbCode, d: Option<&DistanceResult>, opts: &ExactOptions) -> BoundReport {
    let base = BoundReport {
        code: code.spec(),
        n: code.n(),
        k: code.k(),
        d: d.map(|r| r.d),
        d_exact: d.is_some_and(|r| r.exact),
        d_g: BoundEntry::na("empty code"),
        d_classical: BoundEntry::na("empty code"),
        trivial_upper: BoundEntry::na("empty code"),
        d_gv: BoundEntry::na("empty code"),
        qc_special: BoundEntry::na("empty code"),
        weight4_length: BoundEntry::na("empty code"),
        locality_dimension: BoundEntry::na("empty code"),
    };
    if code.is_empty() {
        return base;
    }
    let q = code.q();
    let ell = code.ell();
    let budget_note = |e: &Error| match e {
        Error::Budget { .. } => "over budget".to_string(),
        other => other.to_string(),
    };
    let d_g = match cyclic_distance_with(q, ell, code.g(), opts) {
        Ok(v) => BoundEntry::new(Some(v), upper_check(d, v), "d <= d_g"),
        Err(e) => BoundEntry::new(None, Status::Unknown, budget_note(&e)),
    };
    let d_classical = match classical_qc_distance_with(code, opts) {
        Ok(v) => BoundEntry::new(Some(v), lower_check(d, v), "d >= d_0"),
        Err(e) => BoundEntry::new(None, Status::Unknown, budget_note(&e)),
    };
    let tub = trivial_upper_bound(code);
    let trivial_upper = BoundEntry::new(Some(tub), upper_check(d, tub), "d <= wgt(a1) + wgt(b1)");
    let d_gv = match gv_bound(q, ell, code.deg_h()) {
        Ok(v) => BoundEntry::new(Some(Distance::Finite(v)), Status::ReportOnly, "existence bound"),
        Err(_) => BoundEntry::na("needs 0 < deg h < l"),
    };
    let qc_special = {
        let (a, b) = (code.a().to_poly(), code.b().to_poly());
        match a.div_rem(&b) {
            Ok((f, rem)) if rem.is_zero() => {
                match qc_special_bound_with(q, ell, &b, &f, &Poly::zero(code.field()), opts) {
                    Ok(s) => {
                        let status = match classical_qc_distance_with(code, opts) {
                            Ok(d0) if d0 >= s.bound => Status::Pass,
                            Ok(_) => Status::Violated,
                            Err(_) => Status::Unknown,
                        };
                        BoundEntry::new(Some(s.bound), status, "d_0 >= min(d[q], 1 + d[p]) with r = 0")
                    }
                    Err(e) => BoundEntry::new(None, Status::NotApplicable, budget_note(&e)),
                }
            }
            _ => BoundEntry::na("needs b | a"),
        }
    };
    let weight4_length = if code.row_weight() == 4 {
        match d {
            Some(r) if r.exact || !weight4_length_check(code.n(), r.d) => BoundEntry::new(
                r.d.finite().map(|x| Distance::Finite(weight4_min_length(x))),
                if weight4_length_check(code.n(), r.d) { Status::Pass } else { Status::Violated },
                "n >= d^2 (+1 for odd d)",
            ),
            Some(_) => BoundEntry::new(None, Status::Unknown, "estimated distance"),
            None => BoundEntry::new(None, Status::Unknown, "no distance"),
        }
    } else {
        BoundEntry::na("row weight is not 4")
    };
    let locality_dimension = match embed_code(code, true) {
        Ok(e) => BoundEntry::new(
            Some(Distance::Finite(e.union.dimension)),
            Status::ReportOnly,
            format!("dims {:?}", e.union.dims),
        ),
        Err(e) => BoundEntry::na(e.to_string()),
    };
    BoundReport {
        d_g,
        d_classical,
        trivial_upper,
        d_gv,
        qc_special,
        weight4_length,
        locality_dimension,
        ..base
    }
}
