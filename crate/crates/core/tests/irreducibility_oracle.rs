//! Root-subset irreducibility against exhaustive trial division.

use algheight::scan::{enumerate_candidates, ScanConfig};
use algheight::IntPoly;
use num_traits::ToPrimitive;

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|k| n % k == 0).collect()
}

/// Exact division in Z[x] over i64; `true` when `q` divides `p`.
fn divides(p: &[i64], q: &[i64]) -> bool {
    let mut r = p.to_vec();
    let dq = q.len() - 1;
    let lq = q[dq];
    for shift in (0..=(r.len() - 1 - dq)).rev() {
        let top = r[shift + dq];
        if top == 0 {
            continue;
        }
        if top % lq != 0 {
            return false;
        }
        let c = top / lq;
        for (j, &b) in q.iter().enumerate() {
            r[j + shift] -= c * b;
        }
    }
    r.iter().all(|&c| c == 0)
}

/// Every integer factor of degree `k <= d/2` has leading coefficient dividing
/// `c`, constant term dividing `p(0)` and middle coefficients within the
/// Mignotte bound `C(k, j) · ||p||_2`.
fn brute_force_irreducible(p: &[i64]) -> bool {
    let d = p.len() - 1;
    if d <= 1 {
        return true;
    }
    if p[0] == 0 {
        return false;
    }
    let norm = p.iter().map(|&c| (c * c) as f64).sum::<f64>().sqrt();
    for k in 1..=d / 2 {
        let bounds: Vec<i64> = (0..=k)
            .map(|j| (binomial(k, j) * norm).floor() as i64)
            .collect();
        for &lead in &divisors(p[d]) {
            for &c0 in &divisors(p[0]) {
                for sign in [1, -1] {
                    let mut q = vec![0i64; k + 1];
                    q[0] = sign * c0;
                    q[k] = lead;
                    if search_middle(p, &mut q, 1, &bounds) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn search_middle(p: &[i64], q: &mut Vec<i64>, j: usize, bounds: &[i64]) -> bool {
    let k = q.len() - 1;
    if j == k {
        return divides(p, q);
    }
    for c in -bounds[j]..=bounds[j] {
        q[j] = c;
        if search_middle(p, q, j + 1, bounds) {
            return true;
        }
    }
    false
}

fn all_polys(max_degree: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let span = (2 * bound + 1) as usize;
        for idx in 0..span.pow(d as u32) {
            let mut c = Vec::with_capacity(d + 1);
            let mut i = idx;
            for _ in 0..d {
                c.push((i % span) as i64 - bound);
                i /= span;
            }
            for lead in 1..=bound {
                let mut full = c.clone();
                full.push(lead);
                out.push(full);
            }
        }
    }
    out
}

#[test]
fn agrees_with_trial_division_up_to_degree_four() {
    let mut checked = 0;
    let mut reducible = 0;
    for coeffs in all_polys(4, 3) {
        let p = IntPoly::from_i64s(&coeffs).unwrap();
        if !p.is_canonical() || !p.is_squarefree() {
            continue;
        }
        let expected = brute_force_irreducible(&coeffs);
        let got = p.is_irreducible().unwrap();
        assert_eq!(got, expected, "{p}");
        checked += 1;
        reducible += usize::from(!expected);
    }
    assert!(checked > 5_000, "{checked}");
    assert!(reducible > 1_000, "{reducible}");
}

#[test]
fn scan_candidates_pass_the_oracle() {
    for (d, c) in [(1, 2), (2, 2), (3, 2)] {
        let cfg = ScanConfig::new(d, c);
        for cand in enumerate_candidates(&cfg) {
            let p = cand.unwrap();
            let coeffs: Vec<i64> = p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect();
            assert!(brute_force_irreducible(&coeffs), "{p}");
            assert!(p.is_canonical() && p.is_squarefree() && p.avoids_zero_and_units());
        }
    }
}

#[test]
fn candidates_are_exactly_the_filtered_box() {
    // Independent enumeration of the same box, filtered by the oracle.
    let cfg = ScanConfig::new(3, 2);
    let mut expected: Vec<IntPoly> = all_polys(3, 2)
        .into_iter()
        .filter(|c| {
            let p = IntPoly::from_i64s(c).unwrap();
            p.is_canonical()
                && p.avoids_zero_and_units()
                && p.is_squarefree()
                && brute_force_irreducible(c)
        })
        .map(|c| IntPoly::from_i64s(&c).unwrap())
        .collect();
    let mut got: Vec<IntPoly> = enumerate_candidates(&cfg).map(Result::unwrap).collect();
    expected.sort();
    let before = got.len();
    got.sort();
    got.dedup();
    assert_eq!(before, got.len(), "duplicates emitted");
    assert_eq!(got, expected);
}
