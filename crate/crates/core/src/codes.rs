//! Generalized bicycle (GB) codes, their asymmetric (AB) companions, and
//! the CSS check matrices built from circulant blocks.
//!
//! Block conventions: `A = a(P)` has `A[i][j] = a_{(i-j) mod l}`. The X
//! checks are `H_X = (A | B)` and the Z checks are `H_Z = (B^T | -A^T)`,
//! so the rows of `H_Z` are the shifts `x^i (b(x), -a(x))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, param, Error, Result};
use crate::field::Field;
use crate::linalg::FpMatrix;
use crate::num::gcd;
use crate::poly::Poly;
use crate::ring::{ring_gcd, RingPoly};

/// A sparse row: `(column, nonzero coefficient)` pairs in column order.
pub type SparseRow = Vec<(usize, u8)>;

/// A pair of CSS check matrices with `hx * hz^T = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssPair {
    field: Field,
    n: usize,
    hx: Vec<SparseRow>,
    hz: Vec<SparseRow>,
}

impl CssPair {
    /// Fails if the rows are not mutually orthogonal.
    pub fn new(field: Field, n: usize, hx: Vec<SparseRow>, hz: Vec<SparseRow>) -> Result<Self> {
        let pair = CssPair { field, n, hx, hz };
        if let Some((i, j)) = pair.first_non_orthogonal() {
            return param(format!("check rows X{i} and Z{j} are not orthogonal"));
        }
        Ok(pair)
    }

    fn first_non_orthogonal(&self) -> Option<(usize, usize)> {
        let f = self.field;
        let mut dense = vec![0u8; self.n];
        for (i, x) in self.hx.iter().enumerate() {
            for &(c, v) in x {
                dense[c] = v;
            }
            for (j, z) in self.hz.iter().enumerate() {
                let s = z
                    .iter()
                    .fold(0u8, |acc, &(c, v)| f.add(acc, f.mul(v, dense[c])));
                if s != 0 {
                    return Some((i, j));
                }
            }
            for &(c, _) in x {
                dense[c] = 0;
            }
        }
        None
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hx_rows(&self) -> &[SparseRow] {
        &self.hx
    }

    pub fn hz_rows(&self) -> &[SparseRow] {
        &self.hz
    }

    fn dense(&self, rows: &[SparseRow]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.field, rows.len(), self.n);
        for (r, row) in rows.iter().enumerate() {
            for &(c, v) in row {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn hx(&self) -> FpMatrix {
        self.dense(&self.hx)
    }

    pub fn hz(&self) -> FpMatrix {
        self.dense(&self.hz)
    }

    /// `k = n - rank H_X - rank H_Z` by Gaussian elimination.
    pub fn dimension(&self) -> usize {
        self.n - self.hx().rank() - self.hz().rank()
    }

    pub fn max_row_weight(&self) -> usize {
        self.hx.iter().chain(&self.hz).map(|r| r.len()).max().unwrap_or(0)
    }
}

/// Rows of the circulant `p(P)` (or its transpose) as sparse rows with a
/// column offset and scalar.
fn circulant_rows(p: &RingPoly, transpose: bool, offset: usize, scale: u8) -> Vec<SparseRow> {
    let ell = p.ell();
    let f = p.field();
    (0..ell)
        .map(|i| {
            let mut row: SparseRow = p
                .terms()
                .map(|(e, c)| {
                    // A[i][j] = p_{i-j}; A^T[i][j] = p_{j-i}
                    let j = if transpose { (i + e) % ell } else { (i + ell - e) % ell };
                    (offset + j, f.mul(c, scale))
                })
                .collect();
            row.sort_unstable();
            row
        })
        .collect()
}

fn join_rows(left: Vec<SparseRow>, right: Vec<SparseRow>) -> Vec<SparseRow> {
    left.into_iter()
        .zip(right)
        .map(|(mut l, r)| {
            l.extend(r);
            l
        })
        .collect()
}

/// `(X1 | X2)` for X checks and `(Z1^T | Z2^T)` for Z checks.
pub(crate) fn two_block_css(x1: &RingPoly, x2: &RingPoly, z1: &RingPoly, z2: &RingPoly) -> Result<CssPair> {
    let ell = x1.ell();
    let f = x1.field();
    let hx = join_rows(circulant_rows(x1, false, 0, 1), circulant_rows(x2, false, ell, 1));
    let hz = join_rows(circulant_rows(z1, true, 0, 1), circulant_rows(z2, true, ell, 1));
    CssPair::new(f, 2 * ell, hx, hz)
}

/// A generalized bicycle code `GB(a, b)` of length `n = 2l`.
#[derive(Clone, PartialEq, Eq)]
pub struct GbCode {
    a: RingPoly,
    b: RingPoly,
    h: Poly,
    g: Poly,
}

/// Transforms that map a GB code to an equivalent one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    /// `a(x^m), b(x^m)` with `gcd(m, l) = 1`.
    PowerSubstitution(usize),
    Swap,
    Reciprocal,
    /// `delta * a(x)`, `b` unchanged, `delta != 0`.
    Scale(u8),
    /// `f a, f b` with `gcd(f, x^l - 1) = 1`.
    Multiply(RingPoly),
}

impl GbCode {
    pub fn new(a: RingPoly, b: RingPoly) -> Result<Self> {
        if a.field() != b.field() || a.ell() != b.ell() {
            return param("a and b must live in the same ring");
        }
        if a.is_zero() && b.is_zero() {
            return param("a and b must not both be zero");
        }
        let h = ring_gcd(&a, &b)?;
        let g = Poly::cycle(a.field(), a.ell()).exact_div(&h)?;
        Ok(GbCode { a, b, h, g })
    }

    /// Builds a code from `(exponent, coefficient)` term lists.
    pub fn from_terms(q: u32, ell: usize, a: &[(usize, i64)], b: &[(usize, i64)]) -> Result<Self> {
        let f = Field::new(q)?;
        if ell == 0 {
            return param("circulant size must be at least 1");
        }
        GbCode::new(RingPoly::from_terms(f, ell, a), RingPoly::from_terms(f, ell, b))
    }

    /// Binary code from exponent lists.
    pub fn binary(ell: usize, a: &[usize], b: &[usize]) -> Result<Self> {
        if ell == 0 {
            return param("circulant size must be at least 1");
        }
        let f = Field::BINARY;
        GbCode::new(RingPoly::from_exponents(f, ell, a), RingPoly::from_exponents(f, ell, b))
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn q(&self) -> u32 {
        self.a.q()
    }

    pub fn ell(&self) -> usize {
        self.a.ell()
    }

    pub fn n(&self) -> usize {
        2 * self.ell()
    }

    pub fn a(&self) -> &RingPoly {
        &self.a
    }

    pub fn b(&self) -> &RingPoly {
        &self.b
    }

    /// Check polynomial `gcd(a, b, x^l - 1)`.
    pub fn h(&self) -> &Poly {
        &self.h
    }

    /// Generator polynomial `(x^l - 1) / h`.
    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn deg_h(&self) -> usize {
        self.h.deg().expect("h divides x^l - 1 and is nonzero")
    }

    pub fn k(&self) -> usize {
        2 * self.deg_h()
    }

    pub fn is_empty(&self) -> bool {
        self.k() == 0
    }

    pub fn row_weight(&self) -> usize {
        self.a.weight() + self.b.weight()
    }

    /// `H_X = (A | B)`, `H_Z = (B^T | -A^T)`; orthogonality is checked.
    pub fn css(&self) -> CssPair {
        two_block_css(&self.a, &self.b, &self.b, &self.a.neg())
            .expect("circulant blocks commute, so GB checks are orthogonal")
    }

    /// `rank H_X = rank H_Z = l - deg h`.
    pub fn rank(&self) -> usize {
        self.ell() - self.deg_h()
    }

    pub fn ab(&self) -> Result<AbCode> {
        if self.is_empty() {
            return domain("the AB code of an empty GB code is undefined");
        }
        let chi = self.a.to_poly().gcd(&self.b.to_poly());
        let ell = self.ell();
        let a1 = RingPoly::from_poly(&self.a.to_poly().exact_div(&chi)?, ell);
        let b1 = RingPoly::from_poly(&self.b.to_poly().exact_div(&chi)?, ell);
        Ok(AbCode {
            base: self.clone(),
            a1,
            b1,
            chi,
        })
    }

    pub fn apply(&self, t: &Transform) -> Result<GbCode> {
        let ell = self.ell();
        let f = self.field();
        match t {
            Transform::PowerSubstitution(m) => {
                if gcd(*m, ell) != 1 {
                    return param(format!("power substitution needs gcd(m, l) = 1, got gcd({m}, {ell}) = {}", gcd(*m, ell)));
                }
                GbCode::new(self.a.substitute_power(*m), self.b.substitute_power(*m))
            }
            Transform::Swap => GbCode::new(self.b.clone(), self.a.clone()),
            Transform::Reciprocal => GbCode::new(self.a.reciprocal(), self.b.reciprocal()),
            Transform::Scale(d) => {
                if *d as u32 % f.q() == 0 {
                    return param("scale factor delta must be nonzero in F_q");
                }
                GbCode::new(self.a.scale(*d % f.q() as u8), self.b.clone())
            }
            Transform::Multiply(p) => {
                if p.field() != f || p.ell() != ell {
                    return param("multiplier must live in the code's ring");
                }
                let cg = Poly::cycle(f, ell).gcd(&p.to_poly());
                if !cg.is_one() {
                    return param(format!("multiplier needs gcd(f, x^l - 1) = 1, got {cg}"));
                }
                GbCode::new(p.mul_mod(&self.a)?, p.mul_mod(&self.b)?)
            }
        }
    }

    /// Largest `Delta | l` such that both polynomials are polynomials in
    /// `x^Delta`; if `Delta > 1` also returns the base code over `l / Delta`.
    pub fn commensurate_decompose(&self) -> Commensurability {
        let ell = self.ell();
        let delta = self
            .a
            .exponents()
            .into_iter()
            .chain(self.b.exponents())
            .fold(ell, gcd);
        if delta <= 1 {
            return Commensurability::Incommensurate;
        }
        let ell0 = ell / delta;
        let shrink = |p: &RingPoly| {
            let terms: Vec<(usize, i64)> = p.terms().map(|(e, c)| (e / delta, c as i64)).collect();
            RingPoly::from_terms(p.field(), ell0, &terms)
        };
        let base = GbCode::new(shrink(&self.a), shrink(&self.b))
            .expect("base polynomials are nonzero when the originals are");
        Commensurability::Commensurate { delta, base }
    }

    /// Inverse of `commensurate_decompose`: `a(x^Delta), b(x^Delta)` over
    /// `l * Delta`.
    pub fn expand(&self, delta: usize) -> GbCode {
        let ell = self.ell() * delta;
        let grow = |p: &RingPoly| {
            let terms: Vec<(usize, i64)> = p.terms().map(|(e, c)| (e * delta, c as i64)).collect();
            RingPoly::from_terms(p.field(), ell, &terms)
        };
        GbCode::new(grow(&self.a), grow(&self.b)).expect("nonzero polynomials")
    }

    pub fn spec(&self) -> CodeSpec {
        CodeSpec::from_code(self)
    }
}

impl fmt::Debug for GbCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GB[q={}, l={}](a={}, b={}) [[{},{}]]",
            self.q(),
            self.ell(),
            self.a,
            self.b,
            self.n(),
            self.k()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Commensurability {
    Incommensurate,
    Commensurate { delta: usize, base: GbCode },
}

/// The asymmetric bicycle code `CSS((A1 | B1), H_Z)` with
/// `a1 = a / gcd(a, b)` and `b1 = b / gcd(a, b)` computed in `F_q[x]`.
#[derive(Clone, Debug)]
pub struct AbCode {
    base: GbCode,
    a1: RingPoly,
    b1: RingPoly,
    chi: Poly,
}

impl AbCode {
    pub fn base(&self) -> &GbCode {
        &self.base
    }

    pub fn a1(&self) -> &RingPoly {
        &self.a1
    }

    pub fn b1(&self) -> &RingPoly {
        &self.b1
    }

    /// The common factor `gcd(a, b)` in `F_q[x]`.
    pub fn chi(&self) -> &Poly {
        &self.chi
    }

    /// `k' = deg h`.
    pub fn k(&self) -> usize {
        self.base.deg_h()
    }

    /// `(H_X', H_Z)` with `H_X' = (A1 | B1)`.
    pub fn css(&self) -> CssPair {
        let b = self.base.b();
        let a = self.base.a();
        two_block_css(&self.a1, &self.b1, b, &a.neg())
            .expect("AB checks are orthogonal since a1 b = b1 a")
    }
}

/// Orbit representative of `a` under cyclic shifts and reciprocation:
/// the image with constant term 1 and minimal degree, ties broken by the
/// lexicographically smallest ascending exponent list. Binary only.
pub fn canonical_form(a: &RingPoly) -> Result<RingPoly> {
    canonical_form_in(a, false)
}

/// As `canonical_form`, optionally widening the group with power
/// substitutions `x -> x^m`, `gcd(m, l) = 1`.
pub fn canonical_form_in(a: &RingPoly, with_powers: bool) -> Result<RingPoly> {
    if !a.field().is_binary() {
        return param("canonical forms are defined for binary polynomials only");
    }
    if a.is_zero() {
        return param("the zero polynomial has no canonical form");
    }
    let ell = a.ell();
    let exps = a.exponents();
    let best = if with_powers {
        (1..ell.max(2))
            .filter(|&m| gcd(m, ell) == 1)
            .map(|m| {
                let mut e: Vec<usize> = exps.iter().map(|&x| x * m % ell).collect();
                e.sort_unstable();
                canonical_exponents(&e, ell)
            })
            .min_by(|x, y| canon_key(x).cmp(&canon_key(y)))
            .expect("m = 1 always qualifies")
    } else {
        canonical_exponents(&exps, ell)
    };
    Ok(RingPoly::from_exponents(a.field(), ell, &best))
}

fn canon_key(e: &[usize]) -> (usize, &[usize]) {
    (*e.last().unwrap_or(&0), e)
}

/// Canonical exponent list for a sorted, distinct, nonempty exponent set
/// in `[0, l)`.
pub fn canonical_exponents(exps: &[usize], ell: usize) -> Vec<usize> {
    let w = exps.len();
    let mut best: Option<Vec<usize>> = None;
    let mut cand = vec![0usize; w];
    let recip: Vec<usize> = {
        let mut r: Vec<usize> = exps.iter().map(|&e| (ell - e) % ell).collect();
        r.sort_unstable();
        r
    };
    for set in [exps, recip.as_slice()] {
        for j in 0..w {
            let base = set[j];
            for i in 0..w {
                let e = set[(j + i) % w];
                cand[i] = (e + ell - base) % ell;
            }
            let better = match &best {
                None => true,
                Some(b) => canon_key(&cand) < canon_key(b),
            };
            if better {
                best = Some(cand.clone());
            }
        }
    }
    best.unwrap_or_default()
}

/// One term of a JSON code spec: a bare exponent (coefficient 1) or an
/// `[exponent, coefficient]` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Term {
    Exp(usize),
    Pair(usize, i64),
}

impl Term {
    fn as_pair(&self) -> (usize, i64) {
        match *self {
            Term::Exp(e) => (e, 1),
            Term::Pair(e, c) => (e, c),
        }
    }
}

/// JSON interchange form `{"q":2,"l":21,"a":[0,3,6,12],"b":[0,7]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub q: u32,
    pub l: usize,
    pub a: Vec<Term>,
    pub b: Vec<Term>,
}

pub fn poly_terms(p: &RingPoly) -> Vec<Term> {
    if p.field().is_binary() {
        p.exponents().into_iter().map(Term::Exp).collect()
    } else {
        p.terms().map(|(e, c)| Term::Pair(e, c as i64)).collect()
    }
}

impl CodeSpec {
    pub fn from_code(code: &GbCode) -> Self {
        CodeSpec {
            q: code.q(),
            l: code.ell(),
            a: poly_terms(code.a()),
            b: poly_terms(code.b()),
        }
    }

    pub fn build(&self) -> Result<GbCode> {
        let a: Vec<(usize, i64)> = self.a.iter().map(Term::as_pair).collect();
        let b: Vec<(usize, i64)> = self.b.iter().map(Term::as_pair).collect();
        for &(e, _) in a.iter().chain(&b) {
            if e >= self.l {
                return param(format!("exponent {e} out of range for l={}", self.l));
            }
        }
        GbCode::from_terms(self.q, self.l, &a, &b)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| {
            Error::Parameter(format!("code spec line {} column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("code spec serializes")
    }
}
