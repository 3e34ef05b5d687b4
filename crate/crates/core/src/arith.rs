//! Small-integer number theory, cyclotomic polynomials and the exact linear
//! algebra shared by the field and lattice code.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(m: u32) -> u32 {
    factorize(m)
        .iter()
        .fold(m, |acc, &(p, _)| acc / p * (p - 1))
}

/// Möbius function.
pub fn mobius(n: u32) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Trace of ζ_m^k from ℚ(ζ_m) to ℚ, i.e. the Ramanujan sum c_m(k).
pub fn ramanujan_sum(m: u32, k: i64) -> i64 {
    let g = gcd(residue(k, m) as u64, m as u64) as u32;
    let g = if g == 0 { m } else { g };
    let q = m / g;
    mobius(q) * (euler_phi(m) / euler_phi(q)) as i64
}

pub fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// Residues in `1..m` coprime to `m`, in increasing order.
pub fn unit_residues(m: u32) -> Vec<u32> {
    (1..m.max(2)).filter(|&k| gcd(k as u64, m as u64) == 1).collect()
}

/// Reduce an arbitrary integer to `0..m`.
pub fn residue(a: i64, m: u32) -> u32 {
    a.rem_euclid(m as i64) as u32
}

pub fn inverse_mod(a: i64, m: u32) -> Option<u32> {
    let a = residue(a, m) as i64;
    let ext = a.extended_gcd(&(m as i64));
    (ext.gcd == 1).then(|| residue(ext.x, m))
}

/// The m-th cyclotomic polynomial, as monic integer coefficients in
/// increasing degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicPolynomial {
    pub m: u32,
    pub coeffs: Vec<i64>,
}

impl CyclotomicPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }
}

/// Computes Φ_m by exact division of x^m − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_poly(m: u32) -> CyclotomicPolynomial {
    assert!(m >= 1, "cyclotomic polynomial of modulus 0");
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        num = div_exact_monic(&num, &cyclotomic_poly(d).coeffs);
    }
    CyclotomicPolynomial { m, coeffs: num }
}

fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Dense polynomials over the rationals, lowest degree first, no trailing zeros.
pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn qpoly_trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn qpoly_sub_scaled(a: &QPoly, b: &QPoly, c: &BigRational, shift: usize) -> QPoly {
    let mut out = a.clone();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, BigRational::zero());
    }
    for (i, bc) in b.iter().enumerate() {
        out[i + shift] -= bc * c;
    }
    qpoly_trim(&mut out);
    out
}

pub(crate) fn qpoly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qpoly_trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn qpoly_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let lead = b.last().expect("division by zero polynomial");
    let mut rem = a.clone();
    let mut quot = Vec::new();
    if rem.len() >= b.len() {
        quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    }
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        quot[shift] = c.clone();
        rem = qpoly_sub_scaled(&rem, b, &c, shift);
    }
    qpoly_trim(&mut quot);
    (quot, rem)
}

/// Solves `A x = b` over the rationals, where `A` is given as rows.
/// Returns `None` when the system is inconsistent. Free variables are set to
/// zero; callers that need uniqueness use a square nonsingular system.
pub(crate) fn solve_rational(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n_cols {
        let Some(p) = (row..n_rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(row, p);
        let inv = aug[row][col].recip();
        for c in col..=n_cols {
            aug[row][c] = &aug[row][c] * &inv;
        }
        for r in 0..n_rows {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=n_cols {
                    let t = &aug[row][c] * &f;
                    aug[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n_rows {
            break;
        }
    }
    if aug[row..].iter().any(|r| !r[n_cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n_cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n_cols].clone();
    }
    Some(x)
}

/// Exact determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

pub(crate) fn content(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |g, v| g.gcd(v)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_mul_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1).coeffs, [-1, 1]);
        assert_eq!(cyclotomic_poly(3).coeffs, [1, 1, 1]);
        assert_eq!(cyclotomic_poly(4).coeffs, [1, 0, 1]);
        assert_eq!(cyclotomic_poly(6).coeffs, [1, -1, 1]);
    }

    #[test]
    fn phi21_by_long_division() {
        // (x^21 - 1)(x - 1) / ((x^3 - 1)(x^7 - 1)) via long division.
        let mut x21 = vec![0i64; 22];
        x21[0] = -1;
        x21[21] = 1;
        let num = poly_mul_i64(&x21, &[-1, 1]);
        let mut x3 = vec![0i64; 4];
        x3[0] = -1;
        x3[3] = 1;
        let mut x7 = vec![0i64; 8];
        x7[0] = -1;
        x7[7] = 1;
        let den = poly_mul_i64(&x3, &x7);
        let expected = div_exact_monic(&num, &den);
        let phi = cyclotomic_poly(21);
        assert_eq!(phi.degree(), 12);
        assert_eq!(phi.coeffs, expected);
        assert_eq!(phi.coeffs, [1, -1, 0, 1, -1, 0, 1, 0, -1, 1, 0, -1, 1]);
    }

    #[test]
    fn cyclotomic_divides_x_m_minus_one() {
        for m in 1..=40 {
            let phi = cyclotomic_poly(m);
            assert_eq!(phi.degree() as u32, euler_phi(m));
            assert_eq!(*phi.coeffs.last().unwrap(), 1);
            let mut xm = vec![0i64; m as usize + 1];
            xm[0] = -1;
            xm[m as usize] = 1;
            // exact division succeeds without remainder
            let q = div_exact_monic(&xm, &phi.coeffs);
            assert_eq!(poly_mul_i64(&q, &phi.coeffs), xm);
        }
    }

    #[test]
    fn phi_values_at_one() {
        assert_eq!(cyclotomic_poly(5).eval(1), 5);
        assert_eq!(cyclotomic_poly(9).eval(1), 3);
        assert_eq!(cyclotomic_poly(21).eval(1), 1);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 0], [1, 3, 4], [0, 5, -2]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        // 2(3*-2 - 4*5) - (-1)(1*-2 - 0) + 0 = 2(-26) + (-2) = -54
        assert_eq!(determinant(&m), BigInt::from(-54));
        let swap: Vec<Vec<BigInt>> = [[0, 1], [1, 0]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(determinant(&swap), BigInt::from(-1));
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(inverse_mod(2, 7), Some(4));
        assert_eq!(inverse_mod(3, 21), None);
        assert_eq!(residue(-3, 5), 2);
        assert_eq!(unit_residues(10), [1, 3, 7, 9]);
        assert_eq!(euler_phi(21), 12);
        assert_eq!(euler_phi(32), 16);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }

    #[test]
    fn ramanujan_sums_by_direct_root_sums() {
        // compare against Σ cos(2π k j / m) over j coprime to m
        for m in [3u32, 4, 5, 8, 9, 12, 21] {
            for k in 0..m as i64 {
                let direct: f64 = unit_residues(m)
                    .iter()
                    .map(|&j| libm_cos(2.0 * core::f64::consts::PI * (k * j as i64) as f64 / m as f64))
                    .sum();
                assert!((direct - ramanujan_sum(m, k) as f64).abs() < 1e-9, "m={m} k={k}");
            }
        }
    }

    fn libm_cos(x: f64) -> f64 {
        std::primitive::f64::cos(x)
    }
}
