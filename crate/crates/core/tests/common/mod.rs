#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use bhbounds_core::poly::multi_indices;
use bhbounds_core::{Complex64, HomogeneousPolynomial, MultiIndex};
use proptest::prelude::*;

/// Max of `|P|` over a uniform `k`-point angle grid in every variable, by
/// direct evaluation. Exponential in the number of variables.
pub fn brute_grid_full(p: &HomogeneousPolynomial, k: usize) -> f64 {
    let n = p.num_vars();
    let mut z = vec![Complex64::new(1.0, 0.0); n];
    let mut digits = vec![0usize; n];
    let mut best: f64 = 0.0;
    loop {
        for (zj, &d) in z.iter_mut().zip(&digits) {
            *zj = Complex64::from_polar(1.0, TAU * d as f64 / k as f64);
        }
        best = best.max(p.evaluate(&z).unwrap().norm());
        let mut j = 0;
        loop {
            if j == n {
                return best;
            }
            digits[j] += 1;
            if digits[j] < k {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
    }
}

/// Same grid maximum with the first angle held at 0.
///
/// `|P(e^{i phi} z)| = |P(z)|` for homogeneous `P`, and shifting every grid
/// angle by a grid multiple maps the grid onto itself, so the maximum equals
/// the full-grid one at `k^{N-1}` cost.
pub fn brute_grid(p: &HomogeneousPolynomial, k: usize) -> f64 {
    let n = p.num_vars();
    if n == 1 {
        return p.evaluate(&[Complex64::new(1.0, 0.0)]).unwrap().norm();
    }
    let mut z = vec![Complex64::new(1.0, 0.0); n];
    let mut digits = vec![0usize; n - 1];
    let mut best: f64 = 0.0;
    loop {
        for (zj, &d) in z[1..].iter_mut().zip(&digits) {
            *zj = Complex64::from_polar(1.0, TAU * d as f64 / k as f64);
        }
        best = best.max(p.evaluate(&z).unwrap().norm());
        let mut j = 0;
        loop {
            if j == n - 1 {
                return best;
            }
            digits[j] += 1;
            if digits[j] < k {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
    }
}

/// `sum_alpha |c_alpha| |alpha|` computed term by term, for the oracle's own
/// slack `L pi / k`.
pub fn brute_slack(p: &HomogeneousPolynomial, k: usize) -> f64 {
    let l: f64 = p
        .terms()
        .map(|(a, c)| c.norm() * a.exponents().iter().map(|&e| e as f64).sum::<f64>())
        .sum();
    l * PI / k as f64
}

pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn poly(m: u32, n: usize, terms: &[(&[u32], f64)]) -> HomogeneousPolynomial {
    HomogeneousPolynomial::from_terms(
        m,
        n,
        terms.iter().map(|(a, c)| (MultiIndex::from(*a), real(*c))),
    )
    .unwrap()
}

/// Random nonzero polynomial with `1 <= N <= max_vars`, `1 <= m <= max_deg`
/// and coefficients in `[-2, 2]^2`; each monomial is present with probability
/// about 1/2.
pub fn arb_poly(max_vars: usize, max_deg: u32) -> impl Strategy<Value = HomogeneousPolynomial> {
    (1..=max_vars, 1..=max_deg)
        .prop_flat_map(|(n, m)| {
            let count = multi_indices(m, n).len();
            (
                Just((n, m)),
                prop::collection::vec((any::<bool>(), -2.0..2.0f64, -2.0..2.0f64), count),
            )
        })
        .prop_filter_map("zero polynomial", |((n, m), draws)| {
            let terms: Vec<_> = multi_indices(m, n)
                .into_iter()
                .zip(draws)
                .filter(|(_, (keep, _, _))| *keep)
                .map(|(a, (_, re, im))| (a, Complex64::new(re, im)))
                .collect();
            let p = HomogeneousPolynomial::from_terms(m, n, terms).ok()?;
            (!p.is_zero()).then_some(p)
        })
}

/// `(a, b, c)` with `ab < 0` and `|c(a+b)| <= 4|ab|`.
pub fn arb_family_params() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.1..3.0f64, 0.1..3.0f64, -1.0..1.0f64, any::<bool>()).prop_map(|(a, b, t, flip)| {
        let (a, b) = if flip { (-a, b) } else { (a, -b) };
        let sum = (a + b).abs();
        let cmax = if sum < 1e-9 {
            8.0
        } else {
            (4.0 * (a * b).abs() / sum).min(8.0)
        };
        (a, b, t * cmax)
    })
}
