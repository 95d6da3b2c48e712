//! Oracles written independently of the library algorithms.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant by fraction-field Gaussian elimination.
pub fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        let pivot_row = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pv;
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// `Res(a, b)` as the Sylvester determinant; coefficients ascending.
/// A constant argument gives the usual power of that constant.
pub fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigRational {
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 && n == 0 {
        return BigRational::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigRational::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = BigRational::from_integer(c.clone());
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigRational::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = BigRational::from_integer(c.clone());
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Monic polynomials over `F_p`, coefficients ascending, leading 1.
pub fn monic_polys(p: u64, degree: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let count = p.pow(degree as u32);
    for mut code in 0..count {
        let mut c = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            c.push(code % p);
            code /= p;
        }
        c.push(1);
        out.push(c);
    }
    out
}

pub fn mul_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Quotient when `b` (monic) divides `a` exactly.
pub fn div_exact_fp(a: &[u64], b: &[u64], p: u64) -> Option<Vec<u64>> {
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![0; a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db];
        quot[k] = c;
        for (j, bc) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p * p - c * bc % p) % p;
        }
    }
    rem.iter().all(|&x| x == 0).then_some(quot)
}

/// Monic irreducibles of each degree `1..=max_degree`, by sieving out
/// all products of lower-degree monics.
pub fn irreducibles(p: u64, max_degree: usize) -> Vec<Vec<u64>> {
    let mut irr: Vec<Vec<u64>> = Vec::new();
    for d in 1..=max_degree {
        let mut reducible = std::collections::HashSet::new();
        for d1 in 1..d {
            for a in monic_polys(p, d1) {
                for b in monic_polys(p, d - d1) {
                    reducible.insert(mul_fp(&a, &b, p));
                }
            }
        }
        irr.extend(
            monic_polys(p, d)
                .into_iter()
                .filter(|f| !reducible.contains(f)),
        );
    }
    irr
}

/// Degrees of the irreducible factors by trial division, or `None` when
/// some factor repeats.
pub fn brute_factor_degrees(f: &[u64], p: u64, irr: &[Vec<u64>]) -> Option<Vec<usize>> {
    let mut rest = f.to_vec();
    let mut degrees = Vec::new();
    let mut squarefree = true;
    for q in irr {
        let mut times = 0;
        while let Some(next) = div_exact_fp(&rest, q, p) {
            degrees.push(q.len() - 1);
            rest = next;
            times += 1;
        }
        squarefree &= times <= 1;
    }
    assert_eq!(rest, vec![1], "trial division left a cofactor");
    degrees.sort_unstable();
    squarefree.then_some(degrees)
}
