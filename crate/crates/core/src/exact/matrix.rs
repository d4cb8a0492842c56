//! Exact determinants and kernels.

use super::poly::MultiPoly;
use super::rational::Rational;
use num::{One, Zero};

/// Determinant over Q[delta, mu] by fraction-free elimination. Every
/// division along the way is exact in the polynomial ring; that exactness is
/// asserted, not assumed. The empty matrix has determinant 1.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    for row in m {
        assert_eq!(row.len(), n, "determinant needs a square matrix");
    }
    if n == 0 {
        return MultiPoly::one();
    }
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            a[i][k] = MultiPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Determinant by summing over permutations. Exponential; reference
/// semantics for cross-checking the elimination path on small matrices.
pub fn leibniz_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = MultiPoly::zero();
    permute(&mut perm, 0, &mut |p, odd| {
        let mut term = MultiPoly::one();
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(&m[i][j]);
        }
        if odd {
            term = term.neg();
        }
        out = out.add(&term);
    });
    out
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], bool)) {
    let n = p.len();
    if k == n {
        let mut odd = false;
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut c = s;
            while !seen[c] {
                seen[c] = true;
                c = p[c];
                len += 1;
            }
            if len % 2 == 0 {
                odd = !odd;
            }
        }
        f(p, odd);
        return;
    }
    for i in k..n {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Reduced row echelon form over Q, scanning pivot columns left to right.
/// Returns the nonzero reduced rows and their pivot column indices.
pub fn rat_rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let order: Vec<usize> = (0..ncols).collect();
    rat_rref_ordered(rows, &order)
}

/// Reduced row echelon form with an explicit pivot-column preference order.
/// Pivot indices are reported in the original column numbering.
pub fn rat_rref_ordered(
    rows: &[Vec<Rational>],
    col_order: &[usize],
) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.iter().filter(|r| !r.iter().all(Zero::is_zero)).cloned().collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for &col in col_order {
        if next >= a.len() {
            break;
        }
        let pick = (next..a.len()).find(|&r| !a[r][col].is_zero());
        let Some(r) = pick else { continue };
        a.swap(next, r);
        let inv = Rational::one() / a[next][col].clone();
        for x in a[next].iter_mut() {
            *x *= &inv;
        }
        for r2 in 0..a.len() {
            if r2 != next && !a[r2][col].is_zero() {
                let f = a[r2][col].clone();
                for c in 0..a[r2].len() {
                    let d = &a[next][c] * &f;
                    a[r2][c] -= d;
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    a.truncate(next);
    (a, pivots)
}

/// Eliminate the pivot coordinates of `v` against reduced rows. The result
/// is supported away from the pivot columns; zero iff v lies in the span.
pub fn reduce_against(v: &[Rational], rref_rows: &[Vec<Rational>], pivots: &[usize]) -> Vec<Rational> {
    let mut out = v.to_vec();
    for (row, &p) in rref_rows.iter().zip(pivots) {
        if !out[p].is_zero() {
            let f = out[p].clone();
            for c in 0..out.len() {
                let d = &row[c] * &f;
                out[c] -= d;
            }
        }
    }
    out
}

/// Basis of the right kernel of the matrix, one vector per free column,
/// ordered by ascending free column index. `ncols` governs even when there
/// are no rows.
pub fn rat_kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (rref, pivots) = rat_rref(rows);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in rref.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}
