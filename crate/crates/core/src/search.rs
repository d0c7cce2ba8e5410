//! Multi-restart pattern search for witness polynomials.
//!
//! The search runs over real coefficient vectors indexed by every weight-`m`
//! multi-index in `N` variables. Diagonal torus rotations can remove one phase
//! per variable, and the known witnesses are real, so complex phases are not
//! searched. This restriction is a heuristic.
//!
//! Each restart is a compass search: perturb one coefficient by `+-step`, keep
//! the move if the estimated ratio strictly improves, halve `step` after a
//! sweep with no improvement. Restart `r` draws from a ChaCha8 stream seeded
//! with `seed + r`, so restarts are independent of each other and of the
//! executor that runs them.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::{Executor, Sequential};
use crate::family::{bh_ratio, optimal_x};
use crate::norms::{SupNormConfig, SupNormResult};
use crate::poly::{count_multi_indices, multi_indices, HomogeneousPolynomial, MultiIndex};

/// Largest coefficient space the search will enumerate.
pub const MAX_SEARCH_DIM: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub m: u32,
    pub num_vars: usize,
    pub restarts: usize,
    pub rng_seed: u64,
    pub step_init: f64,
    pub step_min: f64,
    /// Ratio evaluations allowed per restart.
    pub eval_budget: usize,
    pub supnorm: SupNormConfig,
    /// Start restart 0 from `a = 1, b = -1, c = 2^{(m+1)/2}` instead of at random.
    pub seed_with_family: bool,
}

impl SearchConfig {
    pub fn new(m: u32, num_vars: usize) -> Self {
        Self {
            m,
            num_vars,
            restarts: 32,
            rng_seed: 0,
            step_init: 0.5,
            step_min: 1e-6,
            eval_budget: 400,
            supnorm: SupNormConfig::default(),
            seed_with_family: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::DegreeOutOfRange {
                degree: self.m,
                min: 2,
            });
        }
        if self.num_vars == 0 {
            return Err(Error::NoVariables);
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1"));
        }
        if !(self.step_min > 0.0 && self.step_min < self.step_init && self.step_init.is_finite()) {
            return Err(Error::InvalidConfig("need 0 < step_min < step_init"));
        }
        if self.eval_budget == 0 {
            return Err(Error::BudgetExhausted);
        }
        match count_multi_indices(self.m, self.num_vars) {
            Some(n) if n <= MAX_SEARCH_DIM => {}
            _ => {
                return Err(Error::SearchSpaceTooLarge {
                    degree: self.m,
                    num_vars: self.num_vars,
                })
            }
        }
        self.supnorm.validate()
    }
}

/// A polynomial together with the numbers that certify `D(m) >= certified_lower`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessCertificate {
    pub polynomial: HomogeneousPolynomial,
    pub coeff_norm: f64,
    pub supnorm: SupNormResult,
    /// `coeff_norm / supnorm.upper_bracket`.
    pub certified_lower: f64,
    /// `coeff_norm / supnorm.lower_estimate`.
    pub estimate: f64,
    pub supnorm_config: SupNormConfig,
    /// Present when the certificate came out of [`search`].
    pub search: Option<SearchOutcome>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub config: SearchConfig,
    /// Restart that produced the polynomial.
    pub restart: usize,
    /// Ratio evaluations spent across all restarts.
    pub evaluations: usize,
}

/// Wraps [`bh_ratio`] into a certificate.
pub fn certify(p: &HomogeneousPolynomial, cfg: &SupNormConfig) -> Result<WitnessCertificate> {
    let ratio = bh_ratio(p, cfg)?;
    Ok(WitnessCertificate {
        polynomial: p.clone(),
        coeff_norm: ratio.coeff_norm,
        certified_lower: ratio.certified,
        estimate: ratio.estimate,
        supnorm: ratio.supnorm,
        supnorm_config: cfg.clone(),
        search: None,
    })
}

#[derive(Clone, Debug)]
struct RestartResult {
    estimate: f64,
    coeffs: Vec<f64>,
    evaluations: usize,
}

struct Objective<'a> {
    cfg: &'a SearchConfig,
    basis: &'a [MultiIndex],
}

impl Objective<'_> {
    fn polynomial(&self, coeffs: &[f64]) -> Result<HomogeneousPolynomial> {
        HomogeneousPolynomial::from_terms(
            self.cfg.m,
            self.cfg.num_vars,
            self.basis
                .iter()
                .cloned()
                .zip(coeffs.iter().map(|&c| Complex64::new(c, 0.0))),
        )
    }

    /// Estimated ratio; unusable points (zero polynomial, degenerate sup
    /// norm) score `-inf`.
    fn value(&self, coeffs: &[f64]) -> f64 {
        self.polynomial(coeffs)
            .and_then(|p| bh_ratio(&p, &self.cfg.supnorm))
            .map(|r| r.estimate)
            .ok()
            .filter(|v| v.is_finite())
            .unwrap_or(f64::NEG_INFINITY)
    }
}

/// Coefficients of the lifted family `z_3 ... (a z_1^2 + b z_2^2 + c z_1 z_2)`.
///
/// Variables `3..=min(N, m)` get exponent 1. When `N < m` the leftover degree
/// goes on the last variable; with a single variable the only monomial is
/// `z_1^m`.
pub fn family_seed(m: u32, num_vars: usize, basis: &[MultiIndex]) -> Result<Vec<f64>> {
    let mut coeffs = alloc::vec![0.0; basis.len()];
    if num_vars == 1 {
        coeffs.iter_mut().for_each(|c| *c = 1.0);
        return Ok(coeffs);
    }
    let c = optimal_x(m)?;
    let lifted = (num_vars.min(m as usize)).saturating_sub(2) as u32;
    let leftover = m - 2 - lifted;
    let index = |e1: u32, e2: u32| {
        let mut e = alloc::vec![0u32; num_vars];
        e[0] = e1;
        e[1] = e2;
        for slot in e.iter_mut().skip(2).take(lifted as usize) {
            *slot = 1;
        }
        e[num_vars - 1] += leftover;
        MultiIndex::new(e)
    };
    for (alpha, value) in [(index(2, 0), 1.0), (index(0, 2), -1.0), (index(1, 1), c)] {
        if let Ok(pos) = basis.binary_search(&alpha) {
            coeffs[pos] = value;
        }
    }
    Ok(coeffs)
}

fn run_restart(cfg: &SearchConfig, basis: &[MultiIndex], restart: usize) -> Result<RestartResult> {
    let obj = Objective { cfg, basis };
    let mut coeffs = if restart == 0 && cfg.seed_with_family {
        family_seed(cfg.m, cfg.num_vars, basis)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed.wrapping_add(restart as u64));
        (0..basis.len())
            .map(|_| rng.gen_range(-2.0..=2.0))
            .collect()
    };

    let mut best = obj.value(&coeffs);
    let mut evaluations = 1;
    let mut step = cfg.step_init;
    'outer: while step >= cfg.step_min {
        let mut improved = false;
        for i in 0..coeffs.len() {
            for sign in [1.0, -1.0] {
                if evaluations >= cfg.eval_budget {
                    break 'outer;
                }
                let old = coeffs[i];
                coeffs[i] = old + sign * step;
                let v = obj.value(&coeffs);
                evaluations += 1;
                if v > best {
                    best = v;
                    improved = true;
                    break;
                }
                coeffs[i] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(RestartResult {
        estimate: best,
        coeffs,
        evaluations,
    })
}

/// Best witness over `cfg.restarts` independent pattern searches.
///
/// Restarts are merged by estimated ratio, ties going to the lowest restart
/// index, and the winner is certified with `cfg.supnorm`.
pub fn search(cfg: &SearchConfig) -> Result<WitnessCertificate> {
    search_with(cfg, &Sequential)
}

/// [`search`] with restarts fanned out on `exec`.
pub fn search_with<E: Executor>(cfg: &SearchConfig, exec: &E) -> Result<WitnessCertificate> {
    cfg.validate()?;
    let basis = multi_indices(cfg.m, cfg.num_vars);
    let results = exec.map_indexed(cfg.restarts, |r| run_restart(cfg, &basis, r));

    let mut best: Option<(usize, RestartResult)> = None;
    let mut evaluations = 0;
    for (r, result) in results.into_iter().enumerate() {
        let result = result?;
        evaluations += result.evaluations;
        if best
            .as_ref()
            .is_none_or(|(_, b)| result.estimate > b.estimate)
        {
            best = Some((r, result));
        }
    }
    let (restart, winner) = best.ok_or(Error::BudgetExhausted)?;
    if winner.estimate == f64::NEG_INFINITY {
        return Err(Error::ZeroPolynomial);
    }

    let obj = Objective { cfg, basis: &basis };
    let polynomial = obj.polynomial(&winner.coeffs)?;
    let mut cert = certify(&polynomial, &cfg.supnorm)?;
    cert.search = Some(SearchOutcome {
        config: cfg.clone(),
        restart,
        evaluations,
    });
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::lower_bound;
    use alloc::vec;

    #[test]
    fn config_validation() {
        let mut cfg = SearchConfig::new(2, 2);
        assert!(cfg.validate().is_ok());
        cfg.restarts = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = SearchConfig::new(2, 2);
        cfg.eval_budget = 0;
        assert_eq!(cfg.validate(), Err(Error::BudgetExhausted));
        let mut cfg = SearchConfig::new(2, 2);
        cfg.step_min = 1.0;
        assert!(cfg.validate().is_err());
        assert!(SearchConfig::new(1, 2).validate().is_err());
        assert!(SearchConfig::new(12, 12).validate().is_err());
    }

    #[test]
    fn family_seed_layout() {
        let basis = multi_indices(2, 2);
        let seed = family_seed(2, 2, &basis).unwrap();
        // basis order: z2^2, z1 z2, z1^2
        assert_eq!(seed, vec![-1.0, optimal_x(2).unwrap(), 1.0]);

        let basis = multi_indices(3, 4);
        let seed = family_seed(3, 4, &basis).unwrap();
        assert_eq!(seed.iter().filter(|&&c| c != 0.0).count(), 3);
        let pos = basis
            .binary_search(&MultiIndex::new(vec![1, 1, 1, 0]))
            .unwrap();
        assert_eq!(seed[pos], 4.0);

        // N < m: leftover degree lands on the last variable
        let basis = multi_indices(4, 3);
        let seed = family_seed(4, 3, &basis).unwrap();
        let pos = basis
            .binary_search(&MultiIndex::new(vec![2, 0, 2]))
            .unwrap();
        assert_eq!(seed[pos], 1.0);
    }

    #[test]
    fn single_variable_ratio_is_one() {
        let mut cfg = SearchConfig::new(2, 1);
        cfg.restarts = 3;
        cfg.eval_budget = 20;
        let cert = search(&cfg).unwrap();
        assert_eq!(cert.polynomial.len(), 1);
        assert_eq!(cert.estimate, 1.0);
    }

    #[test]
    fn seeded_search_recovers_family_at_m2() {
        let mut cfg = SearchConfig::new(2, 2);
        cfg.restarts = 4;
        cfg.eval_budget = 60;
        cfg.rng_seed = 7;
        let cert = search(&cfg).unwrap();
        assert!(cert.estimate >= 1.1066);
        assert!(cert.estimate >= lower_bound(2).unwrap() - 1e-6);
        assert!(cert.certified_lower <= cert.estimate);
        let outcome = cert.search.as_ref().unwrap();
        assert!(outcome.evaluations <= 4 * 60);
    }

    #[test]
    fn certify_fields_are_consistent() {
        let p =
            crate::family::build_pm(2, &crate::family::FamilyParams::optimal(2).unwrap()).unwrap();
        let cert = certify(&p, &SupNormConfig::default()).unwrap();
        assert_eq!(
            cert.certified_lower,
            cert.coeff_norm / cert.supnorm.upper_bracket
        );
        assert_eq!(cert.estimate, cert.coeff_norm / cert.supnorm.lower_estimate);
        assert!(cert.search.is_none());
    }
}
