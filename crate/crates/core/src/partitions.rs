//! Restricted partition counts behind level dimensions and determinant
//! exponents.
//!
//! A level-m basis monomial is C^h P_{l+1/2}^{k_0} ... P_{2l}^{k_(l-1/2)},
//! so the level dimension d(l, m) counts partitions of m into parts from
//! {2} and the odd parts {1, 3, ..., 2l}. The generating function is
//!
//! ```text
//! F(x) = 1/(1-x^2) * prod_{j=0..l-1/2} 1/(1-x^(2j+1))
//! ```
//!
//! The mu-exponent e(l, m) of the level-m determinant adds up the number of
//! P factors over all such monomials; its generating function multiplies
//! F(x) by sum_i x^(2i+1)/(1-x^(2i+1)).
//!
//! Every count is computed twice, by direct enumeration and through the
//! series, and the two must agree.

use crate::algebra::HalfInt;
use crate::exact::{Rational, TruncSeries, DEFAULT_SERIES_ORDER};
use num::ToPrimitive;

fn order_for(m: u32) -> usize {
    DEFAULT_SERIES_ORDER.max(m as usize)
}

fn coeff_u64(s: &TruncSeries, m: u32) -> u64 {
    let c: Rational = s.coeff(m as usize);
    assert!(c.is_integer(), "count series must have integer coefficients");
    c.to_integer().to_u64().expect("count fits in u64")
}

/// Odd parts available at this l: 1, 3, ..., 2l.
fn odd_parts(ell: HalfInt) -> Vec<u32> {
    (0..=ell.minus_half()).map(|j| 2 * j + 1).collect()
}

/// Number of partitions of m into parts drawn from the given list, each
/// part usable any number of times.
fn count_partitions(parts: &[u32], m: u32) -> u64 {
    fn go(parts: &[u32], m: u32) -> u64 {
        if m == 0 {
            return 1;
        }
        let Some((&p, rest)) = parts.split_first() else {
            return 0;
        };
        let mut total = 0;
        let mut used = 0;
        while used <= m {
            total += go(rest, m - used);
            used += p;
        }
        total
    }
    go(parts, m)
}

/// Sum of `weight(multiplicities)` over all partitions of m into the given
/// parts; multiplicities arrive aligned with `parts`.
fn sum_over_partitions(parts: &[u32], m: u32, weight: &dyn Fn(&[u32]) -> u64) -> u64 {
    fn go(
        parts: &[u32],
        m: u32,
        mults: &mut Vec<u32>,
        weight: &dyn Fn(&[u32]) -> u64,
    ) -> u64 {
        if parts.len() == mults.len() {
            if m == 0 {
                return weight(mults);
            }
            return 0;
        }
        let p = parts[mults.len()];
        let mut total = 0;
        let mut used = 0;
        let mut k = 0;
        while used <= m {
            mults.push(k);
            total += go(parts, m - used, mults, weight);
            mults.pop();
            used += p;
            k += 1;
        }
        total
    }
    go(parts, m, &mut Vec::new(), weight)
}

/// The dimension generating function F(x) truncated at the given order.
pub fn dim_series(ell: HalfInt, order: usize) -> TruncSeries {
    let mut f = TruncSeries::geometric(order, 2);
    for p in odd_parts(ell) {
        f = f.mul(&TruncSeries::geometric(order, p as usize));
    }
    f
}

/// Generating function for the mu-exponents e(l, m).
pub fn mu_exponent_series(ell: HalfInt, order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    for p in odd_parts(ell) {
        let xp = TruncSeries::monomial(order, p as usize, num::One::one());
        s = s.add(&xp.mul(&TruncSeries::geometric(order, p as usize)));
    }
    s.mul(&dim_series(ell, order))
}

/// Level dimension d(l, m), by enumeration cross-checked against the series.
pub fn dim(ell: HalfInt, m: u32) -> u64 {
    let by_enum = dim_by_enumeration(ell, m);
    let by_series = coeff_u64(&dim_series(ell, order_for(m)), m);
    assert_eq!(by_enum, by_series, "dimension routes disagree at l={} m={}", ell, m);
    by_enum
}

pub fn dim_by_enumeration(ell: HalfInt, m: u32) -> u64 {
    let mut parts = vec![2u32];
    parts.extend(odd_parts(ell));
    count_partitions(&parts, m)
}

/// Partitions of n into odd parts of size at most 2l, by enumeration
/// cross-checked against the series. odd(l, 0) = 1.
pub fn odd_restricted(ell: HalfInt, n: u32) -> u64 {
    let by_enum = count_partitions(&odd_parts(ell), n);
    let mut s = TruncSeries::one(order_for(n));
    for p in odd_parts(ell) {
        s = s.mul(&TruncSeries::geometric(order_for(n), p as usize));
    }
    assert_eq!(by_enum, coeff_u64(&s, n), "odd-part routes disagree");
    by_enum
}

/// Total P-count e(l, m) over the level-m monomials: the mu-exponent of the
/// level-m determinant. Enumeration cross-checked against the series.
pub fn mu_exponent(ell: HalfInt, m: u32) -> u64 {
    // parts: [2, 1, 3, ...]; multiplicity 0 is h, the rest count P factors
    let mut parts = vec![2u32];
    parts.extend(odd_parts(ell));
    let by_enum = sum_over_partitions(&parts, m, &|mults| {
        mults[1..].iter().map(|&k| k as u64).sum()
    });
    let by_series = coeff_u64(&mu_exponent_series(ell, order_for(m)), m);
    assert_eq!(by_enum, by_series, "mu-exponent routes disagree at l={} m={}", ell, m);
    by_enum
}

/// Closed polynomial-floor forms for d(l, m) at the four smallest l.
pub fn dim_closed_form(ell: HalfInt, m: u32) -> Option<u64> {
    let m = m as u64;
    match ell.two_ell() {
        1 => Some((m + 2) / 2),
        3 => Some((m * m + 6 * m + 12) / 12),
        5 => Some((2 * m * m * m + 33 * m * m + 162 * m + 360) / 360),
        7 => Some((m * m * m * m + 36 * m * m * m + 442 * m * m + 2124 * m + 5040) / 5040),
        _ => None,
    }
}

/// Closed form of the mu-exponent at l = 1/2: m(m+2)/4 for even m,
/// (m+1)^2/4 for odd m.
pub fn mu_exponent_closed_form_min_l(m: u32) -> u64 {
    let m = m as u64;
    if m % 2 == 0 {
        m * (m + 2) / 4
    } else {
        (m + 1) * (m + 1) / 4
    }
}

/// d(l, m) = sum_n odd(l, m - 2n): strip the C-power and count the rest.
pub fn dimension_sum_identity(ell: HalfInt, m: u32) -> bool {
    let rhs: u64 = (0..=m / 2).map(|n| odd_restricted(ell, m - 2 * n)).sum();
    dim(ell, m) == rhs
}

/// sum_{j=0..floor(m/2)-1} d(l, m-2(j+1)) = sum_n n * odd(l, m - 2n):
/// the total delta-degree of the level-m determinant counted two ways.
pub fn delta_degree_identity(ell: HalfInt, m: u32) -> bool {
    let lhs: u64 = (0..m / 2).map(|j| dim(ell, m - 2 * (j + 1))).sum();
    let rhs: u64 = (0..=m / 2)
        .map(|n| n as u64 * odd_restricted(ell, m - 2 * n))
        .sum();
    lhs == rhs
}
