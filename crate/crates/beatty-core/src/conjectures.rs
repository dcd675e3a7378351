//! Desk-scale testers for the vanishing rational-function conjectures and the
//! strong sine-inequality conjecture. Scans are report-generating evidence,
//! never proofs: an empty violation list is recorded, not claimed as a theorem.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloElt, CyclicPoly};
use crate::modarith::{gcd, mod_inverse};
use crate::{domain_err, Result};

/// Data of `f(x) = sum_k x^{v_k} / (1 - x^{u_k})` with `u` strictly
/// increasing in `[1, q)` and `gcd(u_k, q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionSpec {
    pub q: i64,
    pub u: Vec<i64>,
    pub v: Vec<i64>,
}

impl RationalFunctionSpec {
    pub fn new(q: i64, u: Vec<i64>, v: Vec<i64>) -> Result<Self> {
        if q < 2 {
            return domain_err(format!("RationalFunctionSpec: q must be >= 2, got {q}"));
        }
        if u.len() != v.len() {
            return domain_err("RationalFunctionSpec: u and v lengths differ");
        }
        if !u.windows(2).all(|w| w[0] < w[1]) {
            return domain_err("RationalFunctionSpec: u must be strictly increasing");
        }
        for &uk in &u {
            if uk < 1 || uk >= q {
                return domain_err(format!("RationalFunctionSpec: u_k = {uk} outside [1, q)"));
            }
            if gcd(uk, q) != 1 {
                return domain_err(format!("RationalFunctionSpec: gcd({uk}, {q}) != 1"));
            }
        }
        Ok(RationalFunctionSpec { q, u, v })
    }
}

/// Exact decision whether `f` vanishes at `x = e^{2*pi*i*e/q}`, by
/// cross-multiplication in `Z[zeta_d]`, `d = q/gcd(e, q)`:
/// `sum_k x^{v_k} prod_{i != k} (1 - x^{u_i}) == 0 (mod Phi_d)`.
pub fn vanishes_at_root(spec: &RationalFunctionSpec, e: i64) -> Result<bool> {
    let q = spec.q;
    let e = e.rem_euclid(q);
    if e == 0 {
        return domain_err("vanishes_at_root: x = 1 is a pole of every term");
    }
    let g = gcd(e, q);
    let d = q / g;
    let e_red = e / g;
    for &uk in &spec.u {
        if (uk * e_red).rem_euclid(d) == 0 {
            return domain_err(format!("vanishes_at_root: 1 - x^{uk} = 0 at the chosen root"));
        }
    }
    let mut prod = CyclicPoly::one(d);
    let mut sum = CyclicPoly::zero(d);
    for (&uk, &vk) in spec.u.iter().zip(&spec.v) {
        sum.mul_one_minus_root(uk * e_red);
        let mut term = prod.clone();
        term.mul_root_power(vk * e_red);
        sum.add_assign(&term);
        prod.mul_one_minus_root(uk * e_red);
    }
    Ok(sum.is_zero_at_primitive_root())
}

/// Units of `Z_q` in `[1, q)`.
fn units(q: i64) -> Vec<i64> {
    (1..q).filter(|&u| gcd(u, q) == 1).collect()
}

fn increasing_tuples(pool: &[i64], n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(pool: &[i64], start: usize, n: usize, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in start..pool.len() {
            current.push(pool[i]);
            rec(pool, i + 1, n, current, out);
            current.pop();
        }
    }
    rec(pool, 0, n, &mut current, &mut out);
    out
}

/// `x^v * prod_{i != k} (1 - x^{u_i})` in canonical form, for all `k` and all
/// `v` in `[0, v_bound)`.
fn rotated_products(q: i64, u: &[i64], v_bound: i64) -> Vec<Vec<CycloElt>> {
    u.iter()
        .enumerate()
        .map(|(k, _)| {
            let mut a = CyclicPoly::one(q);
            for (i, &ui) in u.iter().enumerate() {
                if i != k {
                    a.mul_one_minus_root(ui);
                }
            }
            (0..v_bound)
                .map(|v| {
                    let mut b = a.clone();
                    b.mul_root_power(v);
                    b.to_elt()
                })
                .collect()
        })
        .collect()
}

/// Offset assignments `(v_1 = 0, v_2, ..., v_n)` making `f` vanish at
/// `e^{2*pi*i/q}`, found exactly by matching canonical partial sums.
/// Fixing `v_1 = 0` loses nothing: multiplying `f` by `x^{-v_1}` preserves
/// vanishing at every nonzero root.
fn vanishing_offsets(q: i64, u: &[i64], v_bound: i64) -> Vec<Vec<i64>> {
    let n = u.len();
    let products = rotated_products(q, u, v_bound);
    if n == 1 {
        return (0..1)
            .filter(|_| products[0][0].is_zero())
            .map(|_| vec![0])
            .collect();
    }
    // left half: v_1 = 0 plus free v_2..v_{h}; right half: v_{h+1}..v_n
    let h = n.div_ceil(2);
    let mut left: HashMap<Vec<BigInt>, Vec<Vec<i64>>> = HashMap::new();
    let mut assignment = vec![0i64; n];
    collect_sums(&products, 1, h, q, v_bound, &mut assignment, &mut |vs, sum| {
        left.entry(sum.neg().coeffs().to_vec())
            .or_default()
            .push(vs[..h].to_vec());
    });
    let mut hits = Vec::new();
    collect_sums(&products, h, n, q, v_bound, &mut assignment, &mut |vs, sum| {
        if let Some(lefts) = left.get(sum.coeffs()) {
            for l in lefts {
                let mut full = l.clone();
                full.extend_from_slice(&vs[h..]);
                hits.push(full);
            }
        }
    });
    hits.sort();
    hits
}

/// Enumerate sums `sum_{k in [lo, hi)} B_{k, v_k}` (plus the fixed `v_1 = 0`
/// term when `lo = 1`), invoking `emit` per assignment.
fn collect_sums(
    products: &[Vec<CycloElt>],
    lo: usize,
    hi: usize,
    q: i64,
    v_bound: i64,
    assignment: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64], &CycloElt),
) {
    let base = if lo == 1 {
        products[0][0].clone()
    } else {
        CycloElt::zero(q)
    };
    fn rec(
        products: &[Vec<CycloElt>],
        k: usize,
        hi: usize,
        v_bound: i64,
        acc: &CycloElt,
        assignment: &mut Vec<i64>,
        emit: &mut dyn FnMut(&[i64], &CycloElt),
    ) {
        if k == hi {
            emit(assignment, acc);
            return;
        }
        for v in 0..v_bound {
            assignment[k] = v;
            let next = acc.add(&products[k][v as usize]);
            rec(products, k + 1, hi, v_bound, &next, assignment, emit);
        }
    }
    rec(products, lo, hi, v_bound, &base, assignment, emit);
}

/// Scan for counterexamples to the vanishing conjecture: specs with
/// `sum u_k < q` whose `f` vanishes at `e^{2*pi*i/q}`. The conjecture
/// predicts an empty list. `v_1` is normalized to 0.
pub fn scan_rational_function(q: i64, n_max: usize, v_bound: i64) -> Result<Vec<RationalFunctionSpec>> {
    if q < 2 {
        return domain_err(format!("scan_rational_function: q must be >= 2, got {q}"));
    }
    let v_bound = v_bound.clamp(1, q);
    let pool = units(q);
    let mut violations = Vec::new();
    for n in 1..=n_max {
        for u in increasing_tuples(&pool, n) {
            if u.iter().sum::<i64>() >= q {
                continue;
            }
            for v in vanishing_offsets(q, &u, v_bound) {
                violations.push(RationalFunctionSpec::new(q, u.clone(), v)?);
            }
        }
    }
    Ok(violations)
}

/// Scan for counterexamples to the strengthened conjecture: specs with no
/// `u`-subset summing to a multiple of `q` that vanish at `e^{2*pi*i/q}` but
/// not at every q-th root of unity other than 1. Predicts an empty list.
pub fn strengthened_scan(q: i64, n_max: usize, v_bound: i64) -> Result<Vec<RationalFunctionSpec>> {
    if q < 2 {
        return domain_err(format!("strengthened_scan: q must be >= 2, got {q}"));
    }
    let v_bound = v_bound.clamp(1, q);
    let pool = units(q);
    let mut violations = Vec::new();
    for n in 1..=n_max {
        for u in increasing_tuples(&pool, n) {
            if has_zero_subset_sum(&u, q) {
                continue;
            }
            for v in vanishing_offsets(q, &u, v_bound) {
                let spec = RationalFunctionSpec::new(q, u.clone(), v)?;
                let everywhere = (2..q).try_fold(true, |acc, e| {
                    vanishes_at_root(&spec, e).map(|ok| acc && ok)
                })?;
                if !everywhere {
                    violations.push(spec);
                }
            }
        }
    }
    Ok(violations)
}

/// True iff some nonempty subset of `u` sums to a multiple of `q`.
pub fn has_zero_subset_sum(u: &[i64], q: i64) -> bool {
    let mut reachable = vec![false; q as usize];
    for &uk in u {
        let mut next = reachable.clone();
        next[(uk % q) as usize] = true;
        for (s, &r) in reachable.iter().enumerate() {
            if r {
                next[((s as i64 + uk) % q) as usize] = true;
            }
        }
        reachable = next;
    }
    reachable[0]
}

/// The Buhler example: `q = 15`, `u = (1,2,4,11,13,14)`, `v = (0,5,10,10,5,0)`.
pub fn buhler_spec() -> RationalFunctionSpec {
    RationalFunctionSpec::new(15, vec![1, 2, 4, 11, 13, 14], vec![0, 5, 10, 10, 5, 0])
        .expect("the fixed example is valid")
}

/// Scan for the strong inequality conjecture with `n` members: tuples of
/// distinct `p_k` coprime to `q > (7/4)^n` with `sum p_k <= q` for which
/// `2/sin(pi/q) <= sum_i 1/|sin(pi p_k pbar_i / q)|` holds for every `k`.
/// The conjecture predicts only `q = 2^n - 1` with `{p} == {1, 2, ..., 2^{n-1}}`.
pub fn strong_martin_scan(n: usize, q_lo: i64, q_hi: i64) -> Result<Vec<(i64, Vec<i64>)>> {
    if n < 1 || q_lo < 2 {
        return domain_err("strong_martin_scan: need n >= 1, q_lo >= 2");
    }
    let pi = std::f64::consts::PI;
    // equality is attained at the predicted tuples, so allow float slack
    let margin = 1e-9;
    let mut hits = Vec::new();
    for q in q_lo..=q_hi {
        if (q as f64) <= 1.75f64.powi(n as i32) {
            continue;
        }
        let lhs = 2.0 / (pi / q as f64).sin();
        let pool = units(q);
        let inverses: HashMap<i64, i64> = pool
            .iter()
            .map(|&p| (p, mod_inverse(p, q).expect("units are invertible")))
            .collect();
        for p in increasing_tuples(&pool, n) {
            if p.iter().sum::<i64>() > q {
                continue;
            }
            let all_hold = p.iter().all(|&pk| {
                let rhs: f64 = p
                    .iter()
                    .map(|&pi_| {
                        let e = (pk * inverses[&pi_]).rem_euclid(q);
                        1.0 / (pi * e as f64 / q as f64).sin().abs()
                    })
                    .sum();
                lhs <= rhs + margin
            });
            if all_hold {
                hits.push((q, p));
            }
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term_never_vanishes() {
        for q in 2..=12i64 {
            let spec = RationalFunctionSpec::new(q, vec![1], vec![0]).unwrap();
            assert!(!vanishes_at_root(&spec, 1).unwrap());
        }
    }

    #[test]
    fn buhler_example() {
        let spec = buhler_spec();
        for e in 1..15i64 {
            let vanishes = vanishes_at_root(&spec, e).unwrap();
            if gcd(e, 15) == 1 {
                assert!(vanishes, "should vanish at primitive 15th root e={e}");
            } else if e % 3 == 0 && e % 5 != 0 {
                assert!(!vanishes, "should not vanish at primitive 5th root e={e}");
            }
        }
        assert!(vanishes_at_root(&spec, 0).is_err());
    }

    #[test]
    fn buhler_has_zero_subset_sum() {
        assert!(has_zero_subset_sum(&[1, 2, 4, 11, 13, 14], 15));
        assert!(!has_zero_subset_sum(&[1, 2, 4], 15));
    }

    #[test]
    fn vanishes_consistent_with_numeric() {
        let spec = buhler_spec();
        for e in 1..15i64 {
            let exact = vanishes_at_root(&spec, e).unwrap();
            let x = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / 15.0);
            let f: num_complex::Complex64 = spec
                .u
                .iter()
                .zip(&spec.v)
                .map(|(&u, &v)| x.powi(v as i32) / (1.0 - x.powi(u as i32)))
                .sum();
            assert_eq!(exact, f.norm() < 1e-8, "e={e}, |f|={}", f.norm());
        }
    }

    #[test]
    fn small_scans_are_empty() {
        assert!(scan_rational_function(5, 4, 5).unwrap().is_empty());
        assert!(scan_rational_function(7, 4, 7).unwrap().is_empty());
        assert!(scan_rational_function(2, 0, 2).unwrap().is_empty());
    }

    #[test]
    fn covering_criterion_sum_vanishes_as_rational_function() {
        // perfect covers with unit members induce vanishing data:
        // u = pbar of each unit member, v = -r
        use crate::covering::construct_cfc;
        use crate::modarith::{generalized_inverse};
        for q in [7i64, 15, 21] {
            let inst = construct_cfc(q, 1, 2).unwrap();
            let mut pairs: Vec<(i64, i64)> = inst
                .members
                .iter()
                .map(|&(p, r)| {
                    let gi = generalized_inverse(p, q).unwrap();
                    (gi.pbar, (-r).rem_euclid(q))
                })
                .collect();
            pairs.sort_unstable();
            let (u, v): (Vec<i64>, Vec<i64>) = pairs.into_iter().unzip();
            let spec = RationalFunctionSpec::new(q, u, v).unwrap();
            assert!(vanishes_at_root(&spec, 1).unwrap(), "q={q}");
        }
    }

    #[test]
    fn strong_martin_examples() {
        // q = 7, p = (1, 2, 4) satisfies all three inequalities, and so does
        // its sign-variant (1, 2, 3) = (1, 2, -4) mod 7 — the inequalities
        // only see |sin|, which cannot tell p from q - p
        let hits = strong_martin_scan(3, 6, 8).unwrap();
        assert_eq!(hits, vec![(7, vec![1, 2, 3]), (7, vec![1, 2, 4])]);
        // q = 11: no qualifying tuple
        let hits = strong_martin_scan(3, 11, 11).unwrap();
        assert!(hits.is_empty());
        // q = 6 is inside the precondition range ((7/4)^3 ~ 5.36 < 6)
        assert!(strong_martin_scan(3, 6, 6).unwrap().is_empty());
    }
}
