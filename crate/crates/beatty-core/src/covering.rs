//! Perfect c-fold covering verification and construction.
//!
//! Two independent routes decide whether a family of Beatty sets covers every
//! residue the same number of times: the brute-force coverage profile, and
//! the spectral covering criterion (zeroth coefficient gives `sum p_k = c*q`,
//! all other coefficients of the indicator sum must vanish in `Z[w]`).

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::beatty::BeattyParams;
use crate::cyclotomic::{CycloElt, CyclicPoly};
use crate::modarith::{gcd, generalized_inverse, mod_inverse, mod_pow, order_of_two, popcount};
use crate::{domain_err, Result};

/// A modulus `q` and members `(p_k, r_k)`; the object tested or constructed
/// as a perfect c-fold cover.
///
/// JSON wire format: `{"q": int, "members": [[p, r], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringInstance {
    pub q: i64,
    pub members: Vec<(i64, i64)>,
}

impl CoveringInstance {
    pub fn new(q: i64, members: Vec<(i64, i64)>) -> Result<Self> {
        if q < 2 {
            return domain_err(format!("CoveringInstance: q must be >= 2, got {q}"));
        }
        if members.is_empty() {
            return domain_err("CoveringInstance: need at least one member");
        }
        let members = members
            .into_iter()
            .map(|(p, r)| {
                if p < 1 {
                    domain_err(format!("CoveringInstance: p must be >= 1, got {p}"))
                } else {
                    Ok((p, r.rem_euclid(q)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoveringInstance { q, members })
    }

    pub fn beatty_members(&self) -> Vec<BeattyParams> {
        self.members
            .iter()
            .map(|&(p, r)| BeattyParams::new(p, self.q, r).expect("validated at construction"))
            .collect()
    }

    /// Members as multisets of `(p, r mod q)` pairs, for order-insensitive
    /// comparison.
    fn member_multiset(&self) -> Vec<(i64, i64)> {
        let mut v: Vec<(i64, i64)> = self
            .members
            .iter()
            .map(|&(p, r)| (p, r.rem_euclid(self.q)))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn same_members(&self, other: &CoveringInstance) -> bool {
        self.q == other.q && self.member_multiset() == other.member_multiset()
    }
}

/// Verdict of a covering check. `is_perfect` holds iff the profile is
/// constant, iff no `j` fails the criterion and `sum p_k = c*q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverVerdict {
    pub is_perfect: bool,
    pub c: Option<i64>,
    pub profile: Vec<i64>,
    /// First failing `j` values (at most 16), empty when perfect.
    pub criterion_failures: Vec<i64>,
}

const MAX_RECORDED_FAILURES: usize = 16;

/// Pointwise sum of member indicators over one period.
pub fn coverage_profile(inst: &CoveringInstance) -> Vec<i64> {
    let mut profile = vec![0i64; inst.q as usize];
    for b in inst.beatty_members() {
        for (x, c) in b.indicator_profile().into_iter().enumerate() {
            profile[x] += c;
        }
    }
    profile
}

/// Brute-force route: perfect iff all profile entries are equal.
pub fn is_perfect_cover(inst: &CoveringInstance) -> CoverVerdict {
    let profile = coverage_profile(inst);
    let c = profile[0];
    let is_perfect = profile.iter().all(|&x| x == c);
    CoverVerdict {
        is_perfect,
        c: is_perfect.then_some(c),
        profile,
        criterion_failures: Vec::new(),
    }
}

/// Spectral route: checks `sum p_k = c*q` and, for each `j` in `[1, q)`, that
/// the cross-multiplied coefficient sum
/// `sum_{k: g_k|j} g_k w^{-j r_k} prod_{i != k, g_i|j} (1 - w^{j pbar_i})`
/// vanishes exactly in `Z[w]`.
pub fn covering_criterion(inst: &CoveringInstance) -> CoverVerdict {
    let q = inst.q;
    let profile = coverage_profile(inst);
    let p_sum: i64 = inst.members.iter().map(|&(p, _)| p).sum();
    let c_ok = p_sum % q == 0;

    let inverses: Vec<_> = inst
        .members
        .iter()
        .map(|&(p, _)| generalized_inverse(p, q).expect("validated at construction"))
        .collect();

    let mut failures = Vec::new();
    for j in 1..q {
        // terms with g_k not dividing j vanish behind the Iverson gate
        let active: Vec<usize> = (0..inst.members.len())
            .filter(|&k| j % inverses[k].g == 0)
            .collect();
        if active.is_empty() {
            continue;
        }
        // running pair: prod = prod of denominators so far, sum = the
        // cross-multiplied partial sum over the same denominators
        let mut prod = CyclicPoly::one(q);
        let mut sum = CyclicPoly::zero(q);
        for &k in &active {
            let (_, r_k) = inst.members[k];
            let gi = &inverses[k];
            sum.mul_one_minus_root(j * gi.pbar);
            let mut term = prod.clone();
            term.mul_root_power(-j * r_k);
            term.scale(gi.g);
            sum.add_assign(&term);
            prod.mul_one_minus_root(j * gi.pbar);
        }
        if !sum.is_zero_at_primitive_root() {
            if failures.len() < MAX_RECORDED_FAILURES {
                failures.push(j);
            } else {
                break;
            }
        }
    }

    let is_perfect = c_ok && failures.is_empty();
    CoverVerdict {
        is_perfect,
        c: is_perfect.then_some(p_sum / q),
        profile,
        criterion_failures: failures,
    }
}

/// Fraenkel's partition criterion: `B(p1, q, r1)` and `B(p2, q, r2)` partition
/// `Z` iff `p1 + p2 = q` and `p1*r1 + p2*r2 == -gcd(p1, q) (mod q)`.
pub fn fraenkel_two_set(q: i64, p1: i64, r1: i64, p2: i64, r2: i64) -> Result<bool> {
    if q < 2 || p1 < 1 || p1 >= q || p2 < 1 || p2 >= q {
        return domain_err(format!("fraenkel_two_set: need 1 <= p_k < q, got ({p1}, {p2}, q={q})"));
    }
    Ok(p1 + p2 == q && (p1 * r1 + p2 * r2 + gcd(p1, q)).rem_euclid(q) == 0)
}

/// CFC construction: for odd `q >= 3` and `delta` coprime to `q`, the
/// `m = ord_2(q)` sets with `p_k == delta * 2^{m-k}` and
/// `r_k == gamma - deltabar * 2^{k-1} (mod q)` form a perfect cover.
pub fn construct_cfc(q: i64, delta: i64, gamma: i64) -> Result<CoveringInstance> {
    if q < 3 || q % 2 == 0 {
        return domain_err(format!("construct_cfc: q must be odd and >= 3, got {q}"));
    }
    if gcd(delta.rem_euclid(q), q) != 1 {
        return domain_err(format!("construct_cfc: gcd(delta, q) != 1 for delta={delta}, q={q}"));
    }
    let m = order_of_two(q)? as i64;
    let delta_bar = mod_inverse(delta, q)?;
    let members = (1..=m)
        .map(|k| {
            let p = (delta.rem_euclid(q) * mod_pow(2, (m - k) as u64, q)).rem_euclid(q);
            let r = (gamma - delta_bar * mod_pow(2, (k - 1) as u64, q)).rem_euclid(q);
            (p, r)
        })
        .collect();
    CoveringInstance::new(q, members)
}

/// Predicted multiplicity of the CFC construction: the number of ones in the
/// binary expansion of `delta * (2^m - 1) / q`.
pub fn predicted_multiplicity(q: i64, delta: i64) -> Result<i64> {
    if q < 3 || q % 2 == 0 {
        return domain_err(format!("predicted_multiplicity: q must be odd and >= 3, got {q}"));
    }
    let delta = delta.rem_euclid(q);
    if gcd(delta, q) != 1 {
        return domain_err(format!("predicted_multiplicity: gcd(delta, q) != 1"));
    }
    let m = order_of_two(q)?;
    let val = BigUint::from(delta as u64) * ((BigUint::from(1u32) << m) - 1u32)
        / BigUint::from(q as u64);
    Ok(popcount(&val) as i64)
}

/// All `q <= limit` of the form `2^m - 1` (`m >= 2`) or
/// `(2^{2uv} - 1) / (2^u + 1)` (`u, v >= 1`), deduplicated and sorted.
/// These are the moduli admitting a nontrivial perfect 2-covering.
pub fn two_cover_moduli(limit: i64) -> Result<Vec<i64>> {
    if limit < 3 {
        return domain_err(format!("two_cover_moduli: limit must be >= 3, got {limit}"));
    }
    let mut out = Vec::new();
    let mut mersenne = 7i64; // 2^3 - 1
    while mersenne <= limit {
        out.push(mersenne);
        mersenne = 2 * mersenne + 1;
    }
    for u in 1u32..64 {
        let den = (1i128 << u) + 1;
        // value >= 2^{2uv - u - 1}, so 2uv stays small for desk-scale limits
        for v in 1u32.. {
            let e = 2 * u * v;
            if e >= 127 {
                break;
            }
            let num = (1i128 << e) - 1;
            debug_assert_eq!(num % den, 0);
            let q = num / den;
            if q > limit as i128 {
                break;
            }
            // q = 1, 3 have ord_2(q) < 3, too few sets for a nontrivial cover
            if q > 3 {
                out.push(q as i64);
            }
        }
        if (1i128 << (2 * u)) - 1 > den * limit as i128 {
            break;
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// True iff `q + 1` is a power of two (the Mersenne-form moduli).
pub fn is_mersenne(q: i64) -> bool {
    q >= 1 && (q + 1) & q == 0
}

/// Checkable predicate from the divisor-count lemma: for a perfect cover with
/// distinct `p_k` in `(0, q)`, `gcd(g_1, ..., g_m) = 1`, and no pair summing
/// to `q`, any `j != 0 (mod q)` that is a multiple of some `g_k` is a
/// multiple of at least three of them.
pub fn few_gi_property(inst: &CoveringInstance, j: i64) -> bool {
    let j = j.rem_euclid(inst.q);
    if j == 0 {
        return true;
    }
    let divisors = inst
        .members
        .iter()
        .filter(|&&(p, _)| j % gcd(p, inst.q) == 0)
        .count();
    divisors == 0 || divisors >= 3
}

/// Hypotheses under which `few_gi_property` is asserted.
pub fn few_gi_hypotheses_hold(inst: &CoveringInstance) -> bool {
    let q = inst.q;
    let ps: Vec<i64> = inst.members.iter().map(|&(p, _)| p).collect();
    let distinct = {
        let mut sorted = ps.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    };
    let in_range = ps.iter().all(|&p| p > 0 && p < q);
    let overall_gcd = ps.iter().fold(q, |acc, &p| gcd(acc, gcd(p, q))) == 1;
    let no_pair_sum = !ps
        .iter()
        .enumerate()
        .any(|(i, &a)| ps.iter().skip(i + 1).any(|&b| a + b == q));
    distinct && in_range && overall_gcd && no_pair_sum
}

/// Exact transform sum used by the criterion at one `j`, as a
/// `(numerator, denominator-product)` pair; exposed for diagnostics.
pub fn criterion_numerator(inst: &CoveringInstance, j: i64) -> Result<CycloElt> {
    let q = inst.q;
    let j = j.rem_euclid(q);
    if j == 0 {
        return domain_err("criterion_numerator: j == 0 (mod q)");
    }
    let mut prod = CyclicPoly::one(q);
    let mut sum = CyclicPoly::zero(q);
    for &(p, r) in &inst.members {
        let gi = generalized_inverse(p, q)?;
        if j % gi.g != 0 {
            continue;
        }
        sum.mul_one_minus_root(j * gi.pbar);
        let mut term = prod.clone();
        term.mul_root_power(-j * r);
        term.scale(gi.g);
        sum.add_assign(&term);
        prod.mul_one_minus_root(j * gi.pbar);
    }
    Ok(sum.to_elt())
}
