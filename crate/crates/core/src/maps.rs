//! Hypergraph-product codes of two circulants, their maps to GB codes,
//! and embeddings of cyclic checks into hypercubic lattices.

use std::fmt::Write as _;

use serde::Serialize;

use crate::codes::{CssPair, GbCode, SparseRow};
use crate::distance::{cyclic_distance, Distance};
use crate::error::{domain, param, Result};
use crate::field::Field;
use crate::num::{gcd, mod_inverse};
use crate::poly::Poly;
use crate::ring::{ring_gcd, RingPoly};

/// Quantum hypergraph-product code `H_X = (I1 ⊗ H2 | H1 ⊗ I2)`,
/// `H_Z = (H1^T ⊗ I2 | -I1 ⊗ H2^T)` with `H_i = h_i(P_{n_i})`.
///
/// Qudit `(i, j)` of either block has index `i * n2 + j` within the block.
#[derive(Clone, Debug)]
pub struct QhpCode {
    h1: RingPoly,
    h2: RingPoly,
    css: CssPair,
    k1: usize,
    k2: usize,
    rank_k: usize,
    predicted_d: Option<Distance>,
}

fn circ(h: &RingPoly, r: usize, c: usize) -> u8 {
    let n = h.ell();
    h.coeff((r + n - c) % n)
}

/// Builds the QHP code; `h1` and `h2` are reduced modulo `x^{n_i} - 1`.
pub fn build_qhp(q: u32, h1: &Poly, n1: usize, h2: &Poly, n2: usize) -> Result<QhpCode> {
    let field = Field::new(q)?;
    if n1 == 0 || n2 == 0 {
        return param("circulant sizes must be at least 1");
    }
    if h1.is_zero() || h2.is_zero() {
        return param("h1 and h2 must be nonzero");
    }
    if h1.field() != field || h2.field() != field {
        return param("h1 and h2 must be over F_q");
    }
    let r1 = RingPoly::from_poly(h1, n1);
    let r2 = RingPoly::from_poly(h2, n2);
    let m = n1 * n2;
    let idx = |i: usize, j: usize| i * n2 + j;
    let mut hx: Vec<SparseRow> = Vec::with_capacity(m);
    let mut hz: Vec<SparseRow> = Vec::with_capacity(m);
    for i in 0..n1 {
        for j in 0..n2 {
            let mut x = SparseRow::new();
            for jj in 0..n2 {
                let v = circ(&r2, j, jj);
                if v != 0 {
                    x.push((idx(i, jj), v));
                }
            }
            for ii in 0..n1 {
                let v = circ(&r1, i, ii);
                if v != 0 {
                    x.push((m + idx(ii, j), v));
                }
            }
            hx.push(x);
            let mut z = SparseRow::new();
            for ii in 0..n1 {
                let v = circ(&r1, ii, i);
                if v != 0 {
                    z.push((idx(ii, j), v));
                }
            }
            for jj in 0..n2 {
                let v = circ(&r2, jj, j);
                if v != 0 {
                    z.push((m + idx(i, jj), field.neg(v)));
                }
            }
            z.sort_unstable();
            hz.push(z);
        }
    }
    let css = CssPair::new(field, 2 * m, hx, hz)?;
    let cyc1 = Poly::cycle(field, n1);
    let cyc2 = Poly::cycle(field, n2);
    let g1d = ring_gcd(&r1, &RingPoly::zero(field, n1))?;
    let g2d = ring_gcd(&r2, &RingPoly::zero(field, n2))?;
    let k1 = g1d.deg().unwrap_or(0);
    let k2 = g2d.deg().unwrap_or(0);
    let rank_k = css.dimension();
    assert_eq!(rank_k, 2 * k1 * k2, "QHP dimension must equal 2 k1 k2");
    let predicted_d = if k1 * k2 == 0 {
        Some(Distance::Infinite)
    } else {
        let d1 = cyclic_distance(q, n1, &cyc1.exact_div(&g1d)?);
        let d2 = cyclic_distance(q, n2, &cyc2.exact_div(&g2d)?);
        match (d1, d2) {
            (Ok(a), Ok(b)) => Some(a.min(b)),
            _ => None,
        }
    };
    Ok(QhpCode {
        h1: r1,
        h2: r2,
        css,
        k1,
        k2,
        rank_k,
        predicted_d,
    })
}

impl QhpCode {
    pub fn field(&self) -> Field {
        self.h1.field()
    }

    pub fn n1(&self) -> usize {
        self.h1.ell()
    }

    pub fn n2(&self) -> usize {
        self.h2.ell()
    }

    pub fn h1(&self) -> &RingPoly {
        &self.h1
    }

    pub fn h2(&self) -> &RingPoly {
        &self.h2
    }

    pub fn n(&self) -> usize {
        2 * self.n1() * self.n2()
    }

    /// `2 k1 k2`, equal to `n - rank H_X - rank H_Z`.
    pub fn k(&self) -> usize {
        self.rank_k
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    /// `min(d1, d2)` from the cyclic distances, when they fit the budget.
    pub fn predicted_d(&self) -> Option<Distance> {
        self.predicted_d
    }

    pub fn css(&self) -> &CssPair {
        &self.css
    }

    /// Image of QHP qudit indices under the map to `GB(a, b)`: the
    /// `H1 ⊗ I2` block goes to the `A` block and `I1 ⊗ H2` to the `B`
    /// block, both at circulant index `t(i, j)`.
    pub fn gb_qudit_map(&self) -> Result<Vec<usize>> {
        let (n1, n2) = (self.n1(), self.n2());
        let ell = n1 * n2;
        if gcd(n1, n2) != 1 {
            return mutually_prime_error(n1, n2);
        }
        let mut out = vec![0; 2 * ell];
        for i in 0..n1 {
            for j in 0..n2 {
                let t = qhp_index(n1, n2, i, j);
                out[i * n2 + j] = ell + t;
                out[ell + i * n2 + j] = t;
            }
        }
        Ok(out)
    }
}

fn mutually_prime_error<T>(n1: usize, n2: usize) -> Result<T> {
    domain(format!(
        "map requires mutually prime sizes, got gcd({n1}, {n2}) = {}",
        gcd(n1, n2)
    ))
}

/// Circulant index `t = n2 i + n1 j mod n1 n2`.
pub fn qhp_index(n1: usize, n2: usize, i: usize, j: usize) -> usize {
    (n2 * i + n1 * j) % (n1 * n2)
}

/// `GB(h1(x^{n2}), h2(x^{n1}))` over `l = n1 n2`.
pub fn qhp_to_gb(qhp: &QhpCode) -> Result<GbCode> {
    let (n1, n2) = (qhp.n1(), qhp.n2());
    if gcd(n1, n2) != 1 {
        return mutually_prime_error(n1, n2);
    }
    let ell = n1 * n2;
    let stretch = |p: &RingPoly, s: usize| {
        let terms: Vec<(usize, i64)> = p.terms().map(|(e, c)| (e * s, c as i64)).collect();
        RingPoly::from_terms(p.field(), ell, &terms)
    };
    GbCode::new(stretch(&qhp.h1, n2), stretch(&qhp.h2, n1))
}

/// Rotated QHP to GB: `a = h1(x)`, `b = h2(x^{n1})` modulo `x^l - 1`.
pub fn rotated_to_gb(h1: &Poly, h2: &Poly, n1: usize, ell: usize) -> Result<GbCode> {
    if ell == 0 {
        return param("circulant size must be at least 1");
    }
    if gcd(n1, ell) != 1 {
        return domain(format!("rotated map requires gcd(n1, l) = 1, got gcd({n1}, {ell}) = {}", gcd(n1, ell)));
    }
    let a = RingPoly::from_poly(h1, ell);
    let b = RingPoly::from_poly(&h2.compose_power(n1), ell);
    GbCode::new(a, b)
}

/// GB to rotated QHP: `h1 = a`, `h2 = b(x^{m1})` with `m1 n1 = 1 mod l`.
pub fn rotated_from_gb(code: &GbCode, n1: usize) -> Result<(RingPoly, RingPoly)> {
    let ell = code.ell();
    let Some(m1) = mod_inverse(n1, ell).filter(|_| gcd(n1, ell) == 1) else {
        return domain(format!("rotated map requires gcd(n1, l) = 1, got gcd({n1}, {ell}) = {}", gcd(n1, ell)));
    };
    Ok((code.a().clone(), code.b().substitute_power(m1)))
}

/// Periodicity vectors `L1 = (n1, 1)`, `L2 = (n1 n2 - l, n2)`; their cross
/// product is `l`.
pub fn periodicity_vectors(n1: usize, n2: usize, ell: usize) -> ((i64, i64), (i64, i64)) {
    let lambda = (n1 * n2) as i64 - ell as i64;
    ((n1 as i64, 1), (lambda, n2 as i64))
}

pub fn cross(u: (i64, i64), v: (i64, i64)) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

/// Map of the chain `Z_l` into a box `[0, l_0) x ... x [0, l_{w-1})`.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeEmbedding {
    pub ell: usize,
    /// Exponents `t_0 = 0 < t_1 < ...` after any power substitution.
    pub exponents: Vec<usize>,
    /// Power `m` applied as `x -> x^m` before embedding (1 if none).
    pub multiplier: usize,
    pub dims: Vec<usize>,
    /// Axes of length greater than one, minus exact additive merges.
    pub dimension: usize,
    /// Largest per-axis coordinate spread of any check.
    pub box_radius: usize,
    /// Checks whose qudits sit at `c, c + e_1, ..., c + e_{w-1}` in box
    /// coordinates; the rest wrap around the box boundary.
    pub bulk_checks: usize,
    #[serde(skip)]
    coords: Vec<Vec<usize>>,
}

impl LatticeEmbedding {
    pub fn coords(&self, t: usize) -> &[usize] {
        &self.coords[t % self.ell]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("embedding serializes")
    }

    /// SVG drawing of the index map. Even axes run horizontally and odd
    /// axes vertically; the check at `t = 0` is highlighted.
    pub fn to_svg(&self) -> String {
        let (mut w, mut h) = (1usize, 1usize);
        for (i, &d) in self.dims.iter().enumerate() {
            if i % 2 == 0 {
                w *= d;
            } else {
                h *= d;
            }
        }
        let place = |c: &[usize]| {
            let (mut x, mut y, mut sx, mut sy) = (0, 0, 1, 1);
            for (i, (&v, &d)) in c.iter().zip(&self.dims).enumerate() {
                if i % 2 == 0 {
                    x += v * sx;
                    sx *= d;
                } else {
                    y += v * sy;
                    sy *= d;
                }
            }
            (x, y)
        };
        let cell = 28;
        let mut s = String::new();
        let _ = write!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="monospace" font-size="10">"#,
            w * cell + cell,
            h * cell + cell
        );
        let support: Vec<usize> = self.exponents.clone();
        for t in 0..self.ell {
            let (x, y) = place(&self.coords[t]);
            let (cx, cy) = (cell / 2 + x * cell + cell / 2, cell / 2 + (h - 1 - y) * cell + cell / 2);
            let fill = if support.contains(&t) { "#d33" } else { "#ccc" };
            let _ = write!(
                s,
                r#"<circle cx="{cx}" cy="{cy}" r="9" fill="{fill}"/><text x="{cx}" y="{}" text-anchor="middle">{t}</text>"#,
                cy + 3
            );
        }
        s.push_str("</svg>");
        s
    }
}

/// Greedy mixed-radix coordinates of `r`: `x_{w-1} = r div t_{w-1}`, then
/// the remainder is split over the smaller exponents, `x_0` taking what
/// is left below `t_1`.
fn greedy_coords(r: usize, t: &[usize]) -> Vec<usize> {
    let w = t.len();
    let mut x = vec![0; w];
    let mut rest = r;
    for i in (1..w).rev() {
        x[i] = rest / t[i];
        rest %= t[i];
    }
    x[0] = rest;
    x
}

/// Embeds the cyclic chain for a check polynomial with exponents
/// `0 = t_0 < t_1 < ... < t_{w-1} < l`. With `prime_reduce`, first applies
/// `x -> x^m` where `m t_i = 1 mod l` for the first `t_i` coprime to `l`.
pub fn locality_embedding(exponents: &[usize], ell: usize, prime_reduce: bool) -> Result<LatticeEmbedding> {
    let mut t: Vec<usize> = exponents.to_vec();
    t.sort_unstable();
    t.dedup();
    if t.len() != exponents.len() {
        return param("exponents must be distinct");
    }
    if t.first() != Some(&0) {
        return param("exponents must start at 0");
    }
    if t.iter().any(|&e| e >= ell) {
        return param(format!("exponents must lie in [0, {ell})"));
    }
    let mut multiplier = 1;
    if prime_reduce {
        if let Some(&ti) = t.iter().skip(1).find(|&&e| gcd(e, ell) == 1) {
            let m = mod_inverse(ti, ell).expect("coprime");
            t = t.iter().map(|&e| e * m % ell).collect();
            t.sort_unstable();
            multiplier = m;
        }
    }
    let w = t.len();
    let mut dims = Vec::with_capacity(w);
    if w == 1 {
        dims.push(ell);
    } else {
        dims.push(t[1]);
        for i in 1..w - 1 {
            dims.push(t[i + 1].div_ceil(t[i]));
        }
        dims.push(ell.div_ceil(t[w - 1]));
    }
    let basis: Vec<usize> = if w == 1 { vec![1] } else { std::iter::once(1).chain(t[1..].iter().copied()).collect() };
    let coords: Vec<Vec<usize>> = (0..ell)
        .map(|r| if w == 1 { vec![r] } else { greedy_coords(r, &t) })
        .collect();
    let mut seen = std::collections::HashMap::new();
    for (r, c) in coords.iter().enumerate() {
        if c.iter().zip(&dims).any(|(x, d)| x >= d) {
            return domain(format!("index {r} falls outside the box {dims:?}"));
        }
        let back: usize = c.iter().zip(&basis).map(|(x, b)| x * b).sum();
        if back != r {
            return domain(format!("index map does not invert at {r}"));
        }
        if let Some(prev) = seen.insert(c.clone(), r) {
            return domain(format!("indices {prev} and {r} collide at {c:?}"));
        }
    }
    let mut box_radius = 0;
    for r in 0..ell {
        for axis in 0..w {
            let vals = t.iter().map(|&e| coords[(r + e) % ell][axis]);
            let (lo, hi) = vals.fold((usize::MAX, 0), |(lo, hi), v| (lo.min(v), hi.max(v)));
            box_radius = box_radius.max(hi - lo);
        }
    }
    let bulk_checks = (0..ell)
        .filter(|&r| {
            (1..w).all(|i| {
                let (c, d) = (&coords[r], &coords[(r + t[i]) % ell]);
                (0..w).all(|ax| d[ax] == c[ax] + (ax == i) as usize)
            })
        })
        .count();
    let mut merged = 0;
    for k in 1..w {
        let hit = (1..w).any(|i| (i + 1..w).any(|j| i != k && j != k && t[i] + t[j] == t[k]));
        if hit && dims[k] > 1 {
            merged += 1;
        }
    }
    let axes = dims.iter().filter(|&&d| d > 1).count();
    Ok(LatticeEmbedding {
        ell,
        exponents: t,
        multiplier,
        dims,
        dimension: axes.saturating_sub(merged).max(1),
        box_radius,
        bulk_checks,
        coords,
    })
}

/// Embeddings for a GB code: the chain laid out by the exponents of `a`
/// alone, and by the union of the shift-normalized exponents of `a` and
/// `b`, where each site carries one qudit from each block.
#[derive(Clone, Debug, Serialize)]
pub struct CodeEmbedding {
    pub a: LatticeEmbedding,
    pub union: LatticeEmbedding,
}

pub fn embed_code(code: &GbCode, prime_reduce: bool) -> Result<CodeEmbedding> {
    if let crate::codes::Commensurability::Commensurate { delta, .. } = code.commensurate_decompose() {
        return domain(format!("commensurate code (Delta = {delta}) has no connected embedding; reduce it first"));
    }
    let ell = code.ell();
    let norm = |p: &RingPoly| {
        let e = p.exponents();
        let s = e.first().copied().unwrap_or(0);
        let mut out: Vec<usize> = e.into_iter().map(|x| (x + ell - s) % ell).collect();
        out.sort_unstable();
        out
    };
    let a = norm(code.a());
    let mut u = a.clone();
    u.extend(norm(code.b()));
    u.sort_unstable();
    u.dedup();
    Ok(CodeEmbedding {
        a: locality_embedding(&a, ell, prime_reduce)?,
        union: locality_embedding(&u, ell, prime_reduce)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(e: &[usize]) -> Poly {
        Poly::from_exponents(Field::BINARY, e)
    }

    #[test]
    fn code42_qhp_parameters() {
        let q = build_qhp(2, &p2(&[0, 1, 2, 4]), 7, &p2(&[0, 1]), 3).unwrap();
        assert_eq!((q.n(), q.k()), (42, 8));
        assert_eq!(q.predicted_d(), Some(Distance::Finite(3)));
        let gb = qhp_to_gb(&q).unwrap();
        assert_eq!(gb.a().exponents(), vec![0, 3, 6, 12]);
        assert_eq!(gb.b().exponents(), vec![0, 7]);
        assert_eq!(gb.k(), 8);
        let q2 = build_qhp(2, &p2(&[0, 1, 2, 4]), 7, &p2(&[0, 1, 2]), 3).unwrap();
        assert_eq!(q2.k(), 16);
        assert_eq!(q2.predicted_d(), Some(Distance::Finite(2)));
    }

    #[test]
    fn smallest_qhp() {
        let q = build_qhp(2, &p2(&[0, 1]), 1, &p2(&[0, 1]), 1).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.k(), 2);
    }

    #[test]
    fn qhp_matches_gb_up_to_permutation() {
        let q = build_qhp(3, &Poly::from_terms(Field::new(3).unwrap(), &[(0, 1), (1, 2)]), 4, &Poly::from_terms(Field::new(3).unwrap(), &[(0, 1), (2, 1)]), 3).unwrap();
        let gb = qhp_to_gb(&q).unwrap();
        let perm = q.gb_qudit_map().unwrap();
        let f = gb.field();
        let permute = |rows: &[SparseRow], sign: u8| {
            let mut out: Vec<SparseRow> = rows
                .iter()
                .map(|r| {
                    let mut s: SparseRow = r.iter().map(|&(c, v)| (perm[c], f.mul(v, sign))).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            out.sort();
            out
        };
        let sorted = |rows: &[SparseRow]| {
            let mut v = rows.to_vec();
            v.sort();
            v
        };
        let gcss = gb.css();
        assert_eq!(permute(q.css().hx_rows(), 1), sorted(gcss.hx_rows()));
        assert_eq!(permute(q.css().hz_rows(), f.neg(1)), sorted(gcss.hz_rows()));
    }

    #[test]
    fn index_map() {
        assert_eq!(qhp_index(7, 3, 1, 1), 10);
        let mut seen = vec![false; 21];
        for i in 0..7 {
            for j in 0..3 {
                let t = qhp_index(7, 3, i, j);
                assert!(!seen[t]);
                seen[t] = true;
                assert_eq!(qhp_index(7, 3, (i + 1) % 7, j), (t + 3) % 21);
                assert_eq!(qhp_index(7, 3, i, (j + 1) % 3), (t + 7) % 21);
            }
        }
        let q = build_qhp(2, &p2(&[0, 1]), 4, &p2(&[0, 1]), 6).unwrap();
        assert!(matches!(qhp_to_gb(&q), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn rotated_code56() {
        let gb = rotated_to_gb(&p2(&[0, 1, 2, 4]), &p2(&[0, 27]), 9, 28).unwrap();
        assert_eq!(gb.b().exponents(), vec![0, 19]);
        assert_eq!(gb.k(), 2);
        let (h1, h2) = rotated_from_gb(&gb, 9).unwrap();
        assert_eq!(h1.exponents(), vec![0, 1, 2, 4]);
        assert_eq!(h2.exponents(), vec![0, 27]);
        assert_eq!(mod_inverse(9, 28), Some(25));
        let (l1, l2) = periodicity_vectors(9, 3, 28);
        assert_eq!((l1, l2), ((9, 1), (-1, 3)));
        assert_eq!(cross(l1, l2), 28);
        assert!(rotated_to_gb(&p2(&[0, 1]), &p2(&[0, 1]), 4, 28).is_err());
    }

    #[test]
    fn skewed_code42_map() {
        let b = RingPoly::from_poly(&p2(&[0, 1, 2]).compose_power(7), 21);
        assert_eq!(b.exponents(), vec![0, 7, 14]);
        let gb = GbCode::new(RingPoly::from_exponents(Field::BINARY, 21, &[0, 1, 2, 4]), b).unwrap();
        assert_eq!(gb.k(), 0);
    }

    #[test]
    fn embedding_examples() {
        let e = locality_embedding(&[0, 3, 6, 12], 21, false).unwrap();
        assert_eq!(e.dims, vec![3, 2, 2, 2]);
        assert_eq!(e.dimension, 4);
        assert_eq!((e.box_radius, e.bulk_checks), (1, 3));
        let e = locality_embedding(&[0, 1], 17, false).unwrap();
        assert_eq!(e.dims, vec![1, 17]);
        assert_eq!((e.box_radius, e.bulk_checks), (16, 16));
        assert_eq!(e.dimension, 1);
        let e = locality_embedding(&[0, 2, 7], 11, true).unwrap();
        assert_eq!(e.exponents, vec![0, 1, 9]);
        assert_eq!(e.dims, vec![1, 9, 2]);
        assert!(e.dimension <= 2);
        let e = locality_embedding(&[0, 2, 3, 5], 13, false).unwrap();
        assert_eq!(e.dimension, 3);
        assert!(locality_embedding(&[1, 2], 5, false).is_err());
    }

    #[test]
    fn code_embedding() {
        let gb = GbCode::binary(21, &[0, 3, 6, 12], &[0, 7]).unwrap();
        let e = embed_code(&gb, false).unwrap();
        assert_eq!(e.a.dims, vec![3, 2, 2, 2]);
        assert_eq!(e.union.exponents, vec![0, 3, 6, 7, 12]);
        assert!(e.union.dimension <= 5);
        assert!(e.union.to_svg().starts_with("<svg"));
        let com = GbCode::binary(10, &[0, 2], &[0, 6]).unwrap();
        assert!(embed_code(&com, false).is_err());
    }
}
