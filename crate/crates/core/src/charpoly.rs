//! Characteristic polynomial `det(xI - A)` of the adjacency matrix, by
//! fraction-free (Bareiss) elimination over Z[x].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::graph::Graph;

type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let len = a.len().max(b.len());
    let zero = BigInt::zero();
    trim((0..len).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

/// Exact division in Z[x]; panics if `b` does not divide `a`.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a.to_vec();
    if rem.len() <= db {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for shift in (0..quot.len()).rev() {
        let top = &rem[shift + db];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lead);
        assert!(r.is_zero(), "inexact polynomial division");
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= &q * c;
        }
        quot[shift] = q;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(quot)
}

/// Coefficients of `det(xI - A)` in ascending order of degree.
pub fn characteristic_polynomial(g: &Graph) -> Vec<BigInt> {
    let n = g.n();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let x: ZPoly = vec![BigInt::zero(), BigInt::one()];
    let minus_one: ZPoly = vec![-BigInt::one()];
    let mut m: Vec<Vec<ZPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        x.clone()
                    } else if g.has_edge(i, j) {
                        minus_one.clone()
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        })
        .collect();
    let mut prev: ZPoly = vec![BigInt::one()];
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_empty() {
            match (k + 1..n).find(|&i| !m[i][k].is_empty()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return vec![BigInt::zero(); n + 1],
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = sub(&mul(&m[k][k], &m[i][j]), &mul(&m[i][k], &m[k][j]));
                m[i][j] = exact_div(&t, &prev);
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if negate {
        det.iter_mut().for_each(|c| *c = -c.clone());
    }
    det.resize(n + 1, BigInt::zero());
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cases() {
        // P_3: x^3 - 2x
        assert_eq!(characteristic_polynomial(&Graph::path(3)), ints(&[0, -2, 0, 1]));
        // S_5: x^5 - 4x^3
        assert_eq!(characteristic_polynomial(&Graph::star(5)), ints(&[0, 0, 0, -4, 0, 1]));
        // K_3: (x-2)(x+1)^2 = x^3 - 3x - 2
        assert_eq!(characteristic_polynomial(&Graph::complete(3)), ints(&[-2, -3, 0, 1]));
        // C_4: x^4 - 4x^2 (eigenvalues 2, 0, 0, -2)
        assert_eq!(characteristic_polynomial(&Graph::cycle(4)), ints(&[0, 0, -4, 0, 1]));
        assert_eq!(characteristic_polynomial(&Graph::edgeless(2)), ints(&[0, 0, 1]));
    }
}
