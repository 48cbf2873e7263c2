#![allow(dead_code)]

use gbtk::codes::GbCode;
use gbtk::search::enumerate_canonical;

/// Subsets of `[1, l)` of size `k`, each with 0 prepended.
pub fn sets_with_zero(ell: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, ell: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for e in start..ell {
            cur.push(e);
            rec(e + 1, ell, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && k <= ell {
        rec(1, ell, k - 1, &mut vec![0], &mut out);
    }
    out
}

/// Binary GB codes of row weight `w` up to equivalence: `a` canonical
/// under shifts and reciprocation, `b` normalized to constant term 1.
pub fn weight_codes(ell: usize, w: usize) -> Vec<GbCode> {
    let mut out = Vec::new();
    for wa in 1..w {
        let wb = w - wa;
        if wa > ell || wb > ell {
            continue;
        }
        for a in enumerate_canonical(ell, wa).unwrap() {
            for b in sets_with_zero(ell, wb) {
                out.push(GbCode::binary(ell, &a, &b).unwrap());
            }
        }
    }
    out
}
