//! Beatty set indicator, duality and balance, and the discrete Fourier
//! transform of `B(p, q, r) = { floor(n*q/p + r) : n in Z }` on `Z_q`:
//! both the direct sum and the closed form
//! `[g|j] * g * (1 - w^j) / (1 - w^{j*pbar}) * w^{-j*r}`.

use num_rational::Ratio;

use crate::cyclotomic::{CycloElt, CyclicPoly};
use crate::modarith::{gcd, generalized_inverse, mod_inverse};
use crate::{domain_err, Result};

/// The triple `(p, q, r)` defining `B(p, q, r)`, normalized so that
/// `p >= 1` and `0 <= r < q`. Negative `p` is mapped to `-p` (the set is
/// invariant under `(p, n) -> (-p, -n)`); `p = 0` is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BeattyParams {
    p: i64,
    q: i64,
    r: i64,
}

impl BeattyParams {
    pub fn new(p: i64, q: i64, r: i64) -> Result<Self> {
        if q < 2 {
            return domain_err(format!("BeattyParams: q must be >= 2, got {q}"));
        }
        if p == 0 {
            return domain_err("BeattyParams: p = 0 defines no set");
        }
        Ok(BeattyParams { p: p.abs(), q, r: r.rem_euclid(q) })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// Multiplicity of `x` in the multiset `B(p, q, r)` on `Z_q`: the number
    /// of `n` in `[0, p)` with `floor(n*q/p + r) == x (mod q)`.
    pub fn indicator(&self, x: i64) -> i64 {
        let x = x.rem_euclid(self.q);
        let mut count = 0;
        for n in 0..self.p {
            if (n * self.q).div_euclid(self.p).rem_euclid(self.q) == (x - self.r).rem_euclid(self.q)
            {
                count += 1;
            }
        }
        count
    }

    /// Indicator counts for all residues, as a length-q vector.
    pub fn indicator_profile(&self) -> Vec<i64> {
        let mut counts = vec![0i64; self.q as usize];
        for n in 0..self.p {
            let x = ((n * self.q).div_euclid(self.p) + self.r).rem_euclid(self.q);
            counts[x as usize] += 1;
        }
        counts
    }

    /// Exact Fourier coefficient: `sum_{n=0}^{p-1} w^{-j * floor(n*q/p + r)}`.
    /// At `j = 0` this is the integer `p`.
    pub fn dft_direct(&self, j: i64) -> CycloElt {
        let j = j.rem_euclid(self.q);
        let mut counts = vec![0i64; self.q as usize];
        for n in 0..self.p {
            let e = (-j * ((n * self.q).div_euclid(self.p) + self.r)).rem_euclid(self.q);
            counts[e as usize] += 1;
        }
        CyclicPoly::from_counts(self.q, &counts).to_elt()
    }

    /// Closed form of the transform for `j != 0 (mod q)`, returned as a
    /// `(numerator, denominator)` pair in `Z[w]`, never divided:
    /// `(g * (1 - w^j) * w^{-j*r}, 1 - w^{j*pbar})` when `g | j`, and
    /// `(0, 1)` otherwise. The denominator is nonzero for `j != 0 (mod q)`.
    pub fn ft_closed_form(&self, j: i64) -> Result<(CycloElt, CycloElt)> {
        let q = self.q;
        let j = j.rem_euclid(q);
        if j == 0 {
            return domain_err("ft_closed_form: j == 0 (mod q); use dft_direct");
        }
        let gi = generalized_inverse(self.p, q)?;
        if j % gi.g != 0 {
            return Ok((CycloElt::zero(q), CycloElt::one(q)));
        }
        let mut num = CyclicPoly::root_power(q, -j * self.r);
        num.mul_one_minus_root(j);
        num.scale(gi.g);
        let mut den = CyclicPoly::one(q);
        den.mul_one_minus_root(j * gi.pbar);
        Ok((num.to_elt(), den.to_elt()))
    }

    /// Magnitude of the transform for `j != 0 (mod q)`:
    /// `[g|j] * g * |sin(pi*j/q) / sin(pi*j*pbar/q)|`.
    pub fn ft_magnitude(&self, j: i64) -> Result<f64> {
        let q = self.q;
        let j = j.rem_euclid(q);
        if j == 0 {
            return domain_err("ft_magnitude: j == 0 (mod q)");
        }
        let gi = generalized_inverse(self.p, q)?;
        if j % gi.g != 0 {
            return Ok(0.0);
        }
        let pi = std::f64::consts::PI;
        let num = (pi * j as f64 / q as f64).sin();
        let den = (pi * ((j * gi.pbar).rem_euclid(q)) as f64 / q as f64).sin();
        Ok(gi.g as f64 * (num / den).abs())
    }
}

/// Duality: for `gcd(p, q) = 1`, `1 <= p < q`, `r = 0`, membership of `x` in
/// `B(p, q, 0)` holds iff `frac(x*p/q)` is 0 or strictly greater than `1 - p/q`.
pub fn membership_by_duality(p: i64, q: i64, x: i64) -> Result<bool> {
    if q < 2 || p < 1 || p >= q || gcd(p, q) != 1 {
        return domain_err(format!("membership_by_duality: need gcd(p,q)=1, 1 <= p < q, got ({p}, {q})"));
    }
    let f = (x * p).rem_euclid(q); // q * frac(x*p/q)
    Ok(f == 0 || f > q - p)
}

/// Balance: `|B(p, q, 0) ∩ [x, y)| = ceil(y*p/q) - ceil(x*p/q)` for rational
/// `x < y`, `gcd(p, q) = 1`, `1 <= p < q`.
pub fn interval_count(p: i64, q: i64, x: Ratio<i64>, y: Ratio<i64>) -> Result<i64> {
    if q < 2 || p < 1 || p >= q || gcd(p, q) != 1 {
        return domain_err(format!("interval_count: need gcd(p,q)=1, 1 <= p < q, got ({p}, {q})"));
    }
    if x >= y {
        return domain_err("interval_count: need x < y");
    }
    let scale = Ratio::new(p, q);
    Ok((y * scale).ceil().to_integer() - (x * scale).ceil().to_integer())
}

/// Checks `floor(q*qbar/p) == -pbar (mod q)` where `qbar` is the inverse of
/// `q` mod `p` (1 when `p = 1`) and `pbar` the inverse of `p` mod `q`.
pub fn variation_identity_check(p: i64, q: i64) -> Result<bool> {
    if q < 2 || p < 1 || p >= q || gcd(p, q) != 1 {
        return domain_err(format!("variation_identity_check: need gcd(p,q)=1, 1 <= p < q, got ({p}, {q})"));
    }
    let qbar = if p == 1 { 1 } else { mod_inverse(q, p)? };
    let pbar = mod_inverse(p, q)?;
    // q*qbar ≡ 1 (mod p), so the floor equals (q*qbar - 1)/p — except at
    // p = 1, where only the exact middle expression makes sense
    let middle = (q * qbar - 1) / p;
    let floor_matches = p == 1 || (q * qbar).div_euclid(p) == middle;
    Ok(floor_matches && middle.rem_euclid(q) == (-pbar).rem_euclid(q))
}
