//! Trigonometric identities generated from cyclotomic cosets: cosecant sums,
//! the coset power sums `S(q, t)`, and sine/cosine ratio sums, verified
//! exactly by reduction to vanishing root-of-unity sums.

use crate::cyclotomic::{CycloElt, CyclicPoly};
use crate::modarith::{mod_pow, order_of_two};
use crate::{domain_err, Result};

/// The cyclotomic coset `C_q(x) = { x * 2^j mod q : 0 <= j < m }` (as a
/// multiset, `m = ord_2(q)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub q: i64,
    pub seed: i64,
    pub elements: Vec<i64>,
}

pub fn coset(q: i64, x: i64) -> Result<CyclotomicCoset> {
    let m = order_of_two(q)?;
    let x = x.rem_euclid(q);
    let elements = (0..m).map(|j| x * mod_pow(2, j as u64, q) % q).collect();
    Ok(CyclotomicCoset { q, seed: x, elements })
}

/// The distinct cosets `C_q(x)` over all seeds, each sorted, as a partition
/// of `Z_q`.
pub fn coset_partition(q: i64) -> Result<Vec<Vec<i64>>> {
    order_of_two(q)?;
    let mut seen = vec![false; q as usize];
    let mut parts = Vec::new();
    for x in 0..q {
        if seen[x as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut y = x;
        loop {
            seen[y as usize] = true;
            orbit.push(y);
            y = y * 2 % q;
            if y == x {
                break;
            }
        }
        orbit.sort_unstable();
        parts.push(orbit);
    }
    Ok(parts)
}

/// Verify `0 = sum_{k=1}^m csc(2^k pi / q)` for odd `q >= 3`.
///
/// The exact route clears denominators: with `1 - w^{2^k} =
/// (1 - w) prod_{s<k} (1 + w^{2^s})`, the cosecant sum vanishes iff
/// `sum_k w^{2^{k-1}} prod_{s=k}^{m-1} (1 + w^{2^s})` is zero in `Z[w]`
/// (it equals the full geometric sum `sum_{x=1}^{2^m - 1} w^x`).
/// Returns the exact verdict and the numeric residual of the cosecant sum.
pub fn csc_identity_check(q: i64) -> Result<(bool, f64)> {
    let m = order_of_two(q)?;
    // exact route: running suffix products, multiplied by one binomial a step
    let mut suffix = CyclicPoly::one(q);
    let mut sum = CyclicPoly::zero(q);
    for k in (1..=m as i64).rev() {
        let e = mod_pow(2, (k - 1) as u64, q);
        let mut term = suffix.clone();
        term.mul_root_power(e);
        sum.add_assign(&term);
        suffix.mul_one_plus_root(e);
    }
    let exact = sum.is_zero_at_primitive_root();

    let pi = std::f64::consts::PI;
    let residual: f64 = (1..=m as i64)
        .map(|k| {
            // csc(2^k pi / q): reduce the exponent modulo 2q to keep the angle small
            let e = mod_pow(2, k as u64, 2 * q);
            1.0 / (pi * e as f64 / q as f64).sin()
        })
        .sum();
    Ok((exact, residual))
}

/// `S(q, t) = sum_{u=1}^t sum_{a in C_q(2u-1)} w^a`, exactly.
pub fn s_sum(q: i64, t: i64) -> Result<CycloElt> {
    order_of_two(q)?;
    if t < 0 {
        return domain_err(format!("s_sum: t must be >= 0, got {t}"));
    }
    let mut counts = vec![0i64; q as usize];
    for u in 1..=t {
        for a in coset(q, 2 * u - 1)?.elements {
            counts[a as usize] += 1;
        }
    }
    Ok(CyclicPoly::from_counts(q, &counts).to_elt())
}

/// `sum_{k=0}^{m-1} sin(2 pi 2t 2^k / q) / sin(2 pi 2^k / q)`, numerically.
/// Equals `2 Re(S(q, t))`.
pub fn sine_ratio_sum(q: i64, t: i64) -> Result<f64> {
    ratio_sum(q, t, f64::sin)
}

/// `sum_{k=0}^{m-1} cos(2 pi 2t 2^k / q) / sin(2 pi 2^k / q)`, numerically.
/// Equals `-2 Im(S(q, t))`.
pub fn cosine_ratio_sum(q: i64, t: i64) -> Result<f64> {
    ratio_sum(q, t, f64::cos)
}

fn ratio_sum(q: i64, t: i64, top: fn(f64) -> f64) -> Result<f64> {
    let m = order_of_two(q)?;
    if t < 1 {
        return domain_err(format!("ratio sums need t >= 1, got {t}"));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    Ok((0..m as i64)
        .map(|k| {
            let pk = mod_pow(2, k as u64, q);
            let num_arg = two_pi * ((2 * t * pk) % q) as f64 / q as f64;
            let den_arg = two_pi * pk as f64 / q as f64;
            top(num_arg) / den_arg.sin()
        })
        .sum())
}

/// True iff the cosets of seeds `1, 3, ..., 2t-1` cover `Z_q \ {0}` perfectly
/// `c`-fold for some `c` (the condition under which `S(q, t) = -c`).
pub fn odd_cosets_cover(q: i64, t: i64) -> Result<Option<i64>> {
    order_of_two(q)?;
    let mut counts = vec![0i64; q as usize];
    for u in 1..=t {
        for a in coset(q, 2 * u - 1)?.elements {
            counts[a as usize] += 1;
        }
    }
    if counts[0] != 0 {
        return Ok(None);
    }
    let c = counts[1];
    Ok(counts[1..].iter().all(|&x| x == c).then_some(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_examples() {
        let c = coset(7, 1).unwrap();
        let mut e = c.elements.clone();
        e.sort_unstable();
        assert_eq!(e, vec![1, 2, 4]);
        let c = coset(7, 3).unwrap();
        let mut e = c.elements.clone();
        e.sort_unstable();
        assert_eq!(e, vec![3, 5, 6]);
        let c = coset(9, 0).unwrap();
        assert!(c.elements.iter().all(|&x| x == 0));
        assert_eq!(c.elements.len(), 6); // ord_2(9) = 6, counted with multiplicity
    }

    #[test]
    fn cosets_partition_zq() {
        for q in (3..=101i64).step_by(2) {
            let parts = coset_partition(q).unwrap();
            let mut all: Vec<i64> = parts.into_iter().flatten().collect();
            all.sort_unstable();
            assert_eq!(all, (0..q).collect::<Vec<_>>(), "partition fails for q={q}");
        }
    }

    #[test]
    fn csc_identity_small_cases() {
        // q = 3: csc(2pi/3) + csc(4pi/3) = 0, an antisymmetric pair
        let (exact, residual) = csc_identity_check(3).unwrap();
        assert!(exact && residual.abs() < 1e-12);
        // q = 7 realizes 1/sin(pi/7) - 1/sin(2pi/7) - 1/sin(3pi/7) = 0
        let (exact, residual) = csc_identity_check(7).unwrap();
        assert!(exact && residual.abs() < 1e-12);
        let pi = std::f64::consts::PI;
        let direct = 1.0 / (pi / 7.0).sin() - 1.0 / (2.0 * pi / 7.0).sin() - 1.0 / (3.0 * pi / 7.0).sin();
        assert!(direct.abs() < 1e-12);
        // q = 21: the six-term identity
        let (exact, residual) = csc_identity_check(21).unwrap();
        assert!(exact && residual.abs() < 1e-12);
        let direct = 1.0 / (pi / 21.0).sin() - 1.0 / (2.0 * pi / 21.0).sin()
            - 1.0 / (4.0 * pi / 21.0).sin()
            - 1.0 / (5.0 * pi / 21.0).sin()
            - 1.0 / (8.0 * pi / 21.0).sin()
            + 1.0 / (10.0 * pi / 21.0).sin();
        assert!(direct.abs() < 1e-12);
    }

    #[test]
    fn s_sum_examples() {
        assert_eq!(s_sum(7, 2).unwrap(), CycloElt::from_int(7, -1));
        assert!(s_sum(7, 0).unwrap().is_zero());
        assert!(s_sum(89, 0).unwrap().is_zero());
        // Re S(89, 8) = -1
        let s = s_sum(89, 8).unwrap();
        assert!((s.embed_complex().re - (-1.0)).abs() < 1e-9);
        assert_eq!(odd_cosets_cover(7, 2).unwrap(), Some(1));
    }

    #[test]
    fn ratio_sum_examples() {
        assert!((sine_ratio_sum(7, 2).unwrap() - (-2.0)).abs() < 1e-9);
        assert!((sine_ratio_sum(89, 8).unwrap() - (-2.0)).abs() < 1e-9);
    }

    #[test]
    fn ratio_sums_match_s_sum_embedding() {
        for q in (3..=151i64).step_by(2) {
            let m = order_of_two(q).unwrap() as i64;
            for t in 1..m.min(6) {
                let s = s_sum(q, t).unwrap().embed_complex();
                let sine = sine_ratio_sum(q, t).unwrap();
                let cosine = cosine_ratio_sum(q, t).unwrap();
                assert!((sine - 2.0 * s.re).abs() < 1e-9, "sine ratio fails q={q} t={t}");
                assert!((cosine - (-2.0 * s.im)).abs() < 1e-9, "cosine ratio fails q={q} t={t}");
            }
        }
    }

    #[test]
    fn cosine_ratio_vanishes_for_symmetric_cosets() {
        // when -1 is a power of 2 mod q, each coset is closed under negation,
        // so S(q, t) is real and the cosine ratio sum vanishes
        for q in (3..=151i64).step_by(2) {
            let m = order_of_two(q).unwrap() as i64;
            if !(0..m).any(|k| mod_pow(2, k as u64, q) == q - 1) {
                continue;
            }
            for t in 1..m.min(6) {
                assert!(
                    cosine_ratio_sum(q, t).unwrap().abs() < 1e-9,
                    "cosine ratio should vanish for q={q} t={t} (symmetric cosets)"
                );
            }
        }
    }

    #[test]
    fn s_sum_is_minus_c_when_cosets_cover() {
        for q in (3..=101i64).step_by(2) {
            let m = order_of_two(q).unwrap() as i64;
            for t in 1..=m {
                if let Some(c) = odd_cosets_cover(q, t).unwrap() {
                    assert_eq!(s_sum(q, t).unwrap(), CycloElt::from_int(q, -c), "q={q} t={t}");
                }
            }
        }
    }

    #[test]
    fn csc_identity_sweep() {
        for q in (3..=201i64).step_by(2) {
            let (exact, residual) = csc_identity_check(q).unwrap();
            assert!(exact, "exact csc identity fails for q={q}");
            assert!(residual.abs() < 1e-9, "numeric residual too large for q={q}: {residual}");
        }
    }
}
