//! Exact arithmetic in `Z[w]`, `w = e^{2*pi*i/q}`.
//!
//! Elements are kept in canonical form as the remainder modulo the q-th
//! cyclotomic polynomial `Phi_q`, so the zero test is a plain all-zero check:
//! an integer polynomial expression in `w` is zero exactly when its remainder
//! modulo `Phi_q` vanishes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Euler's totient of `q`.
pub fn euler_phi(q: i64) -> i64 {
    let mut n = q;
    let mut result = q;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            result -= result / d;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(q: i64) -> Vec<i64> {
    let mut divs = Vec::new();
    let mut d = 1;
    while d * d <= q {
        if q % d == 0 {
            divs.push(d);
            if d != q / d {
                divs.push(q / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    divs
}

/// Coefficients of `Phi_q` (ascending, monic, length `phi(q) + 1`), memoized.
///
/// Computed by exact long division of `x^q - 1` by the `Phi_d` of proper
/// divisors `d` of `q`.
pub fn cyclotomic_poly(q: i64) -> Arc<Vec<BigInt>> {
    assert!(q >= 1, "cyclotomic_poly: q must be >= 1");
    static CACHE: OnceLock<Mutex<HashMap<i64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&q) {
        return Arc::clone(p);
    }
    // x^q - 1
    let mut num = vec![BigInt::zero(); (q + 1) as usize];
    num[0] = -BigInt::one();
    num[q as usize] = BigInt::one();
    for d in divisors(q) {
        if d == q {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        num = poly_div_exact(&num, &phi_d);
    }
    let result = Arc::new(num);
    cache
        .lock()
        .unwrap()
        .entry(q)
        .or_insert_with(|| Arc::clone(&result));
    result
}

/// Exact division of `num` by the monic polynomial `den` (remainder must be 0).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = std::mem::replace(&mut rem[k + dd], BigInt::zero());
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate().take(dd) {
                if !d.is_zero() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// Reduce `coeffs` (ascending, any length) modulo `Phi_q` in place, then
/// truncate to length `phi(q)`.
fn reduce_mod_cyclotomic(q: i64, coeffs: &mut Vec<BigInt>) {
    let phi = cyclotomic_poly(q);
    let deg = phi.len() - 1;
    if coeffs.len() > deg {
        // nonzero lower-order terms of Phi_q, for sparse synthetic division
        let lower: Vec<(usize, &BigInt)> = phi[..deg]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for k in (deg..coeffs.len()).rev() {
            let c = std::mem::replace(&mut coeffs[k], BigInt::zero());
            if !c.is_zero() {
                for &(i, d) in &lower {
                    coeffs[k - deg + i] -= &c * d;
                }
            }
        }
    }
    coeffs.resize(deg, BigInt::zero());
}

/// An exact element of `Z[w]`, `w = e^{2*pi*i/q}`, stored as the canonical
/// remainder modulo `Phi_q` (coefficient vector of length `phi(q)`).
///
/// Two elements are equal as complex numbers iff their `(q, coeffs)` agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElt {
    q: i64,
    coeffs: Vec<BigInt>,
}

impl CycloElt {
    pub fn zero(q: i64) -> Self {
        assert!(q >= 1);
        CycloElt { q, coeffs: vec![BigInt::zero(); euler_phi(q) as usize] }
    }

    pub fn one(q: i64) -> Self {
        Self::from_int(q, 1)
    }

    pub fn from_int(q: i64, n: i64) -> Self {
        let mut e = Self::zero(q);
        if !e.coeffs.is_empty() {
            e.coeffs[0] = BigInt::from(n);
        } else {
            // q = 1 or 2 have phi >= 1, so this is unreachable; kept for safety
            e.coeffs = vec![BigInt::from(n)];
        }
        e
    }

    /// Build from an arbitrary integer polynomial in `w` (ascending coeffs),
    /// reducing modulo `x^q - 1` and then `Phi_q`.
    pub fn from_poly(q: i64, mut coeffs: Vec<BigInt>) -> Self {
        assert!(q >= 1);
        // fold exponents mod q first so the division input has degree < q
        if coeffs.len() > q as usize {
            let mut folded = vec![BigInt::zero(); q as usize];
            for (i, c) in coeffs.drain(..).enumerate() {
                folded[i % q as usize] += c;
            }
            coeffs = folded;
        }
        reduce_mod_cyclotomic(q, &mut coeffs);
        CycloElt { q, coeffs }
    }

    /// `w^e` with the exponent reduced mod `q`.
    pub fn root_power(q: i64, e: i64) -> Self {
        assert!(q >= 1);
        let e = e.rem_euclid(q) as usize;
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        Self::from_poly(q, coeffs)
    }

    pub fn modulus(&self) -> i64 {
        self.q
    }

    /// Canonical coefficients (length `phi(q)`).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q, "modulus mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloElt { q: self.q, coeffs }
    }

    pub fn neg(&self) -> Self {
        CycloElt { q: self.q, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: i64) -> Self {
        let n = BigInt::from(n);
        CycloElt { q: self.q, coeffs: self.coeffs.iter().map(|c| c * &n).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q, "modulus mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.q);
        }
        let mut prod = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_poly(self.q, prod)
    }

    /// Numeric evaluation at `e^{2*pi*i/q}`. For plots and magnitudes only;
    /// equality decisions go through the exact canonical form.
    pub fn embed_complex(&self) -> Complex64 {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.q as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * w + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc
    }
}

/// A working representation modulo `x^q - 1` only: a length-`q` coefficient
/// vector on which multiplication by `w^e`, `1 - w^e`, or `1 + w^e` is a
/// cheap rotation. Convert with [`CyclicPoly::to_elt`] for the exact zero test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPoly {
    q: i64,
    coeffs: Vec<BigInt>,
}

impl CyclicPoly {
    pub fn zero(q: i64) -> Self {
        assert!(q >= 1);
        CyclicPoly { q, coeffs: vec![BigInt::zero(); q as usize] }
    }

    pub fn one(q: i64) -> Self {
        let mut p = Self::zero(q);
        p.coeffs[0] = BigInt::one();
        p
    }

    pub fn root_power(q: i64, e: i64) -> Self {
        let mut p = Self::zero(q);
        p.coeffs[e.rem_euclid(q) as usize] = BigInt::one();
        p
    }

    pub fn from_counts(q: i64, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), q as usize);
        CyclicPoly { q, coeffs: counts.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn modulus(&self) -> i64 {
        self.q
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.q, other.q);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// `self *= w^e` (cyclic rotation of coefficients).
    pub fn mul_root_power(&mut self, e: i64) {
        let e = e.rem_euclid(self.q) as usize;
        if e != 0 {
            self.coeffs.rotate_right(e);
        }
    }

    /// `self *= (1 - w^e)`.
    pub fn mul_one_minus_root(&mut self, e: i64) {
        let q = self.q as usize;
        let e = e.rem_euclid(self.q) as usize;
        let mut rotated = vec![BigInt::zero(); q];
        for i in 0..q {
            rotated[(i + e) % q] = self.coeffs[i].clone();
        }
        for (a, b) in self.coeffs.iter_mut().zip(rotated) {
            *a -= b;
        }
    }

    /// `self *= (1 + w^e)`.
    pub fn mul_one_plus_root(&mut self, e: i64) {
        let q = self.q as usize;
        let e = e.rem_euclid(self.q) as usize;
        let mut rotated = vec![BigInt::zero(); q];
        for i in 0..q {
            rotated[(i + e) % q] = self.coeffs[i].clone();
        }
        for (a, b) in self.coeffs.iter_mut().zip(rotated) {
            *a += b;
        }
    }

    pub fn scale(&mut self, n: i64) {
        let n = BigInt::from(n);
        for c in self.coeffs.iter_mut() {
            *c *= &n;
        }
    }

    /// Canonical form modulo `Phi_q`.
    pub fn to_elt(&self) -> CycloElt {
        CycloElt::from_poly(self.q, self.coeffs.clone())
    }

    /// True iff the represented value at a primitive q-th root is zero.
    pub fn is_zero_at_primitive_root(&self) -> bool {
        self.to_elt().is_zero()
    }
}

/// Magnitude of the canonical element, numerically.
pub fn magnitude(e: &CycloElt) -> f64 {
    e.embed_complex().norm()
}

impl std::fmt::Display for CycloElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = if first || !c.is_negative() { c.clone() } else { -c };
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "w")?;
                    } else {
                        write!(f, "w^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_from_i64(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic_poly(1), poly_from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(2), poly_from_i64(&[1, 1]));
        assert_eq!(*cyclotomic_poly(6), poly_from_i64(&[1, -1, 1]));
        assert_eq!(*cyclotomic_poly(7), poly_from_i64(&[1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(*cyclotomic_poly(105).last().unwrap(), BigInt::from(1));
    }

    #[test]
    fn cyclotomic_product_is_x_q_minus_1() {
        for q in 1..=500i64 {
            let mut prod = poly_from_i64(&[1]);
            for d in divisors(q) {
                let phi_d = cyclotomic_poly(d);
                let mut next = vec![BigInt::zero(); prod.len() + phi_d.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in phi_d.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut expected = vec![BigInt::zero(); (q + 1) as usize];
            expected[0] = BigInt::from(-1);
            expected[q as usize] = BigInt::from(1);
            assert_eq!(prod, expected, "product of Phi_d != x^{q} - 1");
        }
    }

    #[test]
    fn root_power_examples() {
        for q in [1i64, 2, 5, 7, 12] {
            assert_eq!(CycloElt::root_power(q, 0), CycloElt::one(q));
            assert_eq!(CycloElt::root_power(q, q), CycloElt::one(q));
        }
        assert_eq!(CycloElt::root_power(6, 3), CycloElt::from_int(6, -1));
    }

    #[test]
    fn ring_axioms_and_exponent_law() {
        for q in 2..=30i64 {
            for a in 0..q {
                let x = CycloElt::root_power(q, a);
                assert!(x.add(&x.neg()).is_zero());
                assert!(!x.is_zero());
                for b in 0..q {
                    let y = CycloElt::root_power(q, b);
                    assert_eq!(x.mul(&y), CycloElt::root_power(q, a + b));
                }
            }
        }
    }

    #[test]
    fn full_geometric_sum_vanishes() {
        for q in 2..=60i64 {
            let mut s = CycloElt::zero(q);
            for e in 0..q {
                s = s.add(&CycloElt::root_power(q, e));
            }
            assert!(s.is_zero(), "geometric sum not zero for q = {q}");
        }
    }

    #[test]
    fn prime_geometric_sum_via_mul() {
        // (1 + w + ... + w^{q-1}) computed with explicit adds for prime q
        let q = 11;
        let s = (0..q).fold(CycloElt::zero(q), |acc, e| acc.add(&CycloElt::root_power(q, e)));
        assert!(s.is_zero());
    }

    #[test]
    fn embed_complex_matches_direct_evaluation() {
        assert_eq!(CycloElt::zero(5).embed_complex(), Complex64::new(0.0, 0.0));
        let i = CycloElt::root_power(4, 1).embed_complex();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let c = CycloElt::root_power(7, 1)
            .add(&CycloElt::root_power(7, 6))
            .embed_complex();
        let expected = 2.0 * (2.0 * std::f64::consts::PI / 7.0).cos();
        assert!((c - Complex64::new(expected, 0.0)).norm() < 1e-9);
        for q in 2..=200i64 {
            for e in [0, 1, q / 2, q - 1] {
                let direct = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / q as f64);
                let via = CycloElt::root_power(q, e).embed_complex();
                assert!((direct - via).norm() < 1e-9, "q={q} e={e}");
            }
        }
    }

    #[test]
    fn cyclic_poly_agrees_with_canonical_ops() {
        for q in 2..=20i64 {
            for e in 0..q {
                let mut p = CyclicPoly::one(q);
                p.mul_one_minus_root(e);
                let expected = CycloElt::one(q).sub(&CycloElt::root_power(q, e));
                assert_eq!(p.to_elt(), expected);

                let mut p = CyclicPoly::root_power(q, 3);
                p.mul_root_power(e);
                assert_eq!(p.to_elt(), CycloElt::root_power(q, 3 + e));
            }
        }
    }
}
