//! Sparse homogeneous polynomials on `C^N`.
//!
//! A polynomial is stored as a map from exponent vectors to complex
//! coefficients, keyed in lexicographic order. Construction validates every
//! multi-index against the declared degree and number of variables and drops
//! exact zeros, so two polynomials compare equal iff they have the same
//! canonical form.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math methods are inherent only when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

/// Exponent vector `alpha` of the monomial `z^alpha = z_1^alpha_1 ... z_N^alpha_N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree `|alpha|`.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(exponents: &[u32]) -> Self {
        Self(exponents.to_vec())
    }
}

/// An `m`-homogeneous polynomial in `N` complex variables, in canonical sparse form.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPolynomial {
    degree: u32,
    num_vars: usize,
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl HomogeneousPolynomial {
    /// Builds a polynomial from `(multi-index, coefficient)` pairs.
    ///
    /// Every multi-index must have `num_vars` entries summing to `degree`.
    /// Repeated multi-indices are rejected rather than merged. Coefficients
    /// that are exactly zero are dropped.
    pub fn from_terms<I>(degree: u32, num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        if degree == 0 {
            return Err(Error::DegreeOutOfRange { degree, min: 1 });
        }
        if num_vars == 0 {
            return Err(Error::NoVariables);
        }
        let mut map = BTreeMap::new();
        let mut seen = BTreeMap::new();
        for (index, (alpha, coeff)) in terms.into_iter().enumerate() {
            if alpha.len() != num_vars {
                return Err(Error::TermLength {
                    index,
                    expected: num_vars,
                    found: alpha.len(),
                });
            }
            let weight = alpha.weight();
            if weight != u64::from(degree) {
                return Err(Error::TermWeight {
                    index,
                    alpha: alpha.into_inner(),
                    expected: u64::from(degree),
                    found: weight,
                });
            }
            if !coeff.re.is_finite() || !coeff.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
            if seen.insert(alpha.clone(), ()).is_some() {
                return Err(Error::DuplicateTerm {
                    index,
                    alpha: alpha.into_inner(),
                });
            }
            if coeff.re != 0.0 || coeff.im != 0.0 {
                map.insert(alpha, coeff);
            }
        }
        Ok(Self {
            degree,
            num_vars,
            terms: map,
        })
    }

    /// `coeff * z^alpha`.
    pub fn monomial(alpha: MultiIndex, coeff: Complex64) -> Result<Self> {
        let degree = u32::try_from(alpha.weight()).map_err(|_| Error::DegreeOutOfRange {
            degree: u32::MAX,
            min: 1,
        })?;
        let n = alpha.len();
        Self::from_terms(degree, n, [(alpha, coeff)])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of their multi-indices.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&MultiIndex, &Complex64)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Complex64 {
        self.terms.get(alpha).copied().unwrap_or_default()
    }

    /// `P(z) = sum_alpha c_alpha z^alpha`.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: z.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (alpha, &coeff) in &self.terms {
            let mut mono = coeff;
            for (&e, &zj) in alpha.exponents().iter().zip(z) {
                if e != 0 {
                    mono *= zj.powu(e);
                }
            }
            acc += mono;
        }
        Ok(acc)
    }

    /// `(sum_alpha |c_alpha|^p)^(1/p)` for `p >= 1`.
    ///
    /// Magnitudes are normalised by the largest one and summed in ascending
    /// order with compensation, so the result only depends on the multiset of
    /// coefficient moduli.
    pub fn coefficient_lp_norm(&self, p: f64) -> Result<f64> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidExponent(p));
        }
        let mut mags: Vec<f64> = self.terms.values().map(|c| c.norm()).collect();
        let max = mags.iter().copied().fold(0.0, f64::max);
        if max == 0.0 {
            return Ok(0.0);
        }
        mags.sort_by(f64::total_cmp);
        let sum: NeumaierSum = mags.iter().map(|&r| (r / max).powf(p)).collect();
        Ok(max * sum.total().powf(p.recip()))
    }

    /// Coefficients multiplied by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(a, &c)| (a.clone(), c * factor))
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .collect();
        Self {
            degree: self.degree,
            num_vars: self.num_vars,
            terms,
        }
    }

    /// The polynomial `z -> P(e^{i phi_1} z_1, ..., e^{i phi_N} z_N)`.
    pub fn rotated(&self, phases: &[f64]) -> Result<Self> {
        if phases.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: phases.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, &c)| {
                let phase: f64 = a
                    .exponents()
                    .iter()
                    .zip(phases)
                    .map(|(&e, &phi)| f64::from(e) * phi)
                    .sum();
                (a.clone(), c * Complex64::from_polar(1.0, phase))
            })
            .collect();
        Ok(Self {
            degree: self.degree,
            num_vars: self.num_vars,
            terms,
        })
    }

    /// Relabels variables: variable `j` of `self` becomes variable `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.num_vars;
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let mut hit = alloc::vec![false; n];
        for &p in perm {
            if p >= n || core::mem::replace(&mut hit[p], true) {
                return Err(Error::InvalidConfig("permutation is not a bijection"));
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, &c)| {
                let mut e = alloc::vec![0u32; n];
                for (j, &x) in a.exponents().iter().enumerate() {
                    e[perm[j]] = x;
                }
                (MultiIndex(e), c)
            })
            .collect();
        Ok(Self {
            degree: self.degree,
            num_vars: n,
            terms,
        })
    }

    /// Variables whose exponent is identical in every term.
    ///
    /// On the torus such a variable only contributes a unimodular factor, so
    /// `|P|` does not depend on its angle. A zero polynomial reports every
    /// variable as constant.
    pub fn constant_exponent_vars(&self) -> Vec<bool> {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return alloc::vec![true; self.num_vars];
        };
        let mut constant = alloc::vec![true; self.num_vars];
        for alpha in iter {
            for (j, flag) in constant.iter_mut().enumerate() {
                if alpha.exponents()[j] != first.exponents()[j] {
                    *flag = false;
                }
            }
        }
        constant
    }
}

/// The Bohnenblust-Hille exponent `2m/(m+1)`.
pub fn bh_exponent(m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::DegreeOutOfRange { degree: 0, min: 1 });
    }
    let num = 2 * u64::from(m);
    let den = u64::from(m) + 1;
    let g = gcd(num, den);
    Ok((num / g) as f64 / (den / g) as f64)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All multi-indices of weight `m` in `n` variables, in ascending lexicographic order.
pub fn multi_indices(m: u32, n: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut current = alloc::vec![0u32; n];
    fill(&mut out, &mut current, 0, m);
    out
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut [u32], pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.to_vec()));
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
}

/// Number of weight-`m` multi-indices in `n` variables, `C(m+n-1, n-1)`, or
/// `None` on overflow.
pub fn count_multi_indices(m: u32, n: usize) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    let k = (n - 1) as u64;
    let total = u64::from(m).checked_add(k)?;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * u128::from(total - k + i) / u128::from(i);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}
