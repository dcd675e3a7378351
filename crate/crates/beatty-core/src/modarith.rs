//! Integer and modular primitives: extended gcd, generalized inverses,
//! order of 2, and nearest-integer continued fractions.

use num_bigint::BigUint;

use crate::{domain_err, Result};

/// Extended Euclidean algorithm: returns `(g, x, y)` with `a*x + b*y = g`
/// and `g = gcd(a, b) > 0`.
pub fn ext_gcd(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return domain_err("ext_gcd(0, 0) is undefined");
    }
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (r0, x0, y0) = (-r0, -x0, -y0);
    }
    Ok((r0, x0, y0))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// The multiplicative inverse of `a` modulo `m`, in `[1, m)`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 2 {
        return domain_err(format!("mod_inverse: modulus {m} < 2"));
    }
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m)?;
    if g != 1 {
        return domain_err(format!("mod_inverse: gcd({a}, {m}) = {g} != 1"));
    }
    Ok(x.rem_euclid(m))
}

/// `base^exp mod m` (for `m` small enough that `m^2` fits in `i64`).
pub fn mod_pow(base: i64, exp: u64, m: i64) -> i64 {
    debug_assert!(m >= 1 && m < (1 << 31));
    let mut result = 1i64 % m;
    let mut b = base.rem_euclid(m);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result
}

/// The generalized inverse `pbar` of `p` modulo `q`: the smallest positive
/// integer with `p*pbar == gcd(p,q) (mod q)`. Any two valid choices differ
/// by a multiple of `q/g`, so `pbar` lies in `[1, q/g]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralizedInverse {
    pub p: i64,
    pub q: i64,
    pub g: i64,
    pub pbar: i64,
}

pub fn generalized_inverse(p: i64, q: i64) -> Result<GeneralizedInverse> {
    if p < 1 || q < 2 {
        return domain_err(format!("generalized_inverse: need p >= 1, q >= 2, got ({p}, {q})"));
    }
    let g = gcd(p, q);
    let (a, b) = (p / g, q / g);
    // (p/g) * x == 1 (mod q/g) implies p * x == g (mod q); the smallest
    // positive solution is the least residue of x mod q/g (with 0 meaning b).
    let pbar = if b == 1 { 1 } else { mod_inverse(a, b)? };
    Ok(GeneralizedInverse { p, q, g, pbar })
}

/// The multiplicative order of 2 modulo an odd `q >= 3`.
pub fn order_of_two(q: i64) -> Result<u32> {
    if q < 3 || q % 2 == 0 {
        return domain_err(format!("order_of_two: q must be odd and >= 3, got {q}"));
    }
    let mut pow = 2i64 % q;
    let mut m = 1u32;
    while pow != 1 {
        pow = pow * 2 % q;
        m += 1;
    }
    Ok(m)
}

/// Number of ones in the binary expansion.
pub fn popcount(n: &BigUint) -> u64 {
    n.count_ones()
}

/// Nearest-integer continued fraction `[a_0; a_1, ..., a_n]` of `p/q`.
///
/// Uniquely determined by: `|a_i| >= 2` for `i > 0`; if `a_i = +-2` for
/// `0 < i < n` then `a_i * a_{i+1} > 0`; and `a_n != -2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicfExpansion {
    pub numerator: i64,
    pub denominator: i64,
    pub terms: Vec<i64>,
}

impl NicfExpansion {
    /// Evaluate the continued fraction back to a reduced fraction `(num, den)`.
    pub fn evaluate(&self) -> (i64, i64) {
        let mut num = 1i64;
        let mut den = 0i64;
        for &a in self.terms.iter().rev() {
            // value becomes a + den/num = (a*num + den)/num
            (num, den) = (a * num + den, num);
        }
        if den < 0 {
            num = -num;
            den = -den;
        }
        (num, den)
    }
}

/// Nearest integer to `p/q` (`q > 0`), ties resolved toward minus infinity.
///
/// The tie rule is forced by the canonical constraints: rounding a half-integer
/// up would terminate the expansion with `a_n = -2`.
fn nearest_down(p: i64, q: i64) -> i64 {
    debug_assert!(q > 0);
    // floor((2p + q - 1) / (2q))
    (2 * p + q - 1).div_euclid(2 * q)
}

/// Compute the NICF of `p/q`. Requires `gcd(p, q) = 1` and `q >= 1`.
pub fn nicf(p: i64, q: i64) -> Result<NicfExpansion> {
    if q < 1 {
        return domain_err(format!("nicf: denominator {q} < 1"));
    }
    if gcd(p, q) != 1 {
        return domain_err(format!("nicf: gcd({p}, {q}) != 1"));
    }
    let mut terms = Vec::new();
    let (mut num, mut den) = (p, q);
    loop {
        let a = nearest_down(num, den);
        terms.push(a);
        let rem = num - a * den; // in (-den/2, den/2]
        if rem == 0 {
            break;
        }
        // next value is den/rem
        if rem > 0 {
            (num, den) = (den, rem);
        } else {
            (num, den) = (-den, -rem);
        }
    }
    let e = NicfExpansion { numerator: p, denominator: q, terms };
    debug_assert!(nicf_constraints_hold(&e.terms), "NICF constraints violated for {p}/{q}");
    Ok(e)
}

/// Check the canonical NICF constraints on a term list.
pub fn nicf_constraints_hold(terms: &[i64]) -> bool {
    let n = terms.len();
    for (i, &a) in terms.iter().enumerate() {
        if i > 0 && a.abs() < 2 {
            return false;
        }
        if i > 0 && i + 1 < n && a.abs() == 2 && a * terms[i + 1] <= 0 {
            return false;
        }
    }
    // a trailing -2 duplicates [..., a-1, 2]; an integer a_0 = -2 is canonical
    n <= 1 || *terms.last().unwrap() != -2
}

/// Product of `|a_i|` over `i >= 1`; equals 1 for an integer input.
pub fn nicf_product(e: &NicfExpansion) -> i64 {
    e.terms.iter().skip(1).map(|a| a.abs()).product()
}
