//! The witness family `P_m(z) = z_3 ... z_m (a z_1^2 + b z_2^2 + c z_1 z_2)`
//! and the closed-form bounds on the polynomial Bohnenblust-Hille constant
//! `D(m)` that it produces.
//!
//! With `a = -b = 1` and `c = x`, the ratio of the `l_{2m/(m+1)}` coefficient
//! norm to the sup norm of `P_m` is
//!
//! ```text
//! f_m(x) = (2 + |x|^{2m/(m+1)})^{(m+1)/(2m)} / sqrt(4 + x^2)
//! ```
//!
//! which peaks at `x* = 2^{(m+1)/2}`. Its peak value simplifies to
//! `(1 + 2^{1-m})^{1/(2m)}`, which is how [`lower_bound`] evaluates it.
//! Terms like `2^m` would overflow long before `m = 1000`, so the quantities
//! here are all formed from logarithms.

use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math methods are inherent only when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::exec::{Executor, Sequential};
use crate::norms::{p2_closed_norm, sup_norm_with, SupNormConfig, SupNormResult};
use crate::poly::{bh_exponent, HomogeneousPolynomial, MultiIndex};

const LN_2: f64 = core::f64::consts::LN_2;

fn require_degree(m: u32, min: u32) -> Result<()> {
    if m < min {
        Err(Error::DegreeOutOfRange { degree: m, min })
    } else {
        Ok(())
    }
}

/// `ln(e^a + e^b)` without overflow.
fn ln_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Real coefficients `(a, b, c)` of `a z_1^2 + b z_2^2 + c z_1 z_2`, restricted
/// to `ab < 0` and `|c(a+b)| <= 4|ab|`, where the sup norm has a closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyParams {
    a: f64,
    b: f64,
    c: f64,
}

impl FamilyParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        p2_closed_norm(a, b, c)?;
        Ok(Self { a, b, c })
    }

    /// `a = 1, b = -1, c = 2^{(m+1)/2}`.
    pub fn optimal(m: u32) -> Result<Self> {
        Self::new(1.0, -1.0, optimal_x(m)?)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `(|a|+|b|) sqrt(1 + c^2/(4|ab|))`.
    pub fn closed_norm(&self) -> f64 {
        (self.a.abs() + self.b.abs())
            * (1.0 + self.c * self.c / (4.0 * (self.a * self.b).abs())).sqrt()
    }
}

/// `a z_1^2 + b z_2^2 + c z_1 z_2`.
pub fn build_p2(params: &FamilyParams) -> HomogeneousPolynomial {
    lift(2, params).expect("degree-2 lift is always valid")
}

/// `z_3 z_4 ... z_m P_2(z_1, z_2)` on `C^m`.
pub fn build_pm(m: u32, params: &FamilyParams) -> Result<HomogeneousPolynomial> {
    require_degree(m, 2)?;
    lift(m, params)
}

fn lift(m: u32, params: &FamilyParams) -> Result<HomogeneousPolynomial> {
    let n = m as usize;
    let index = |e1: u32, e2: u32| {
        let mut e = alloc::vec![1u32; n];
        e[0] = e1;
        e[1] = e2;
        MultiIndex::new(e)
    };
    HomogeneousPolynomial::from_terms(
        m,
        n,
        [
            (index(2, 0), Complex64::new(params.a, 0.0)),
            (index(0, 2), Complex64::new(params.b, 0.0)),
            (index(1, 1), Complex64::new(params.c, 0.0)),
        ],
    )
}

/// `ln f_m(x)`.
pub fn family_ratio_ln(m: u32, x: f64) -> Result<f64> {
    require_degree(m, 2)?;
    let mf = f64::from(m);
    let ln_x = x.abs().ln();
    // ln(2 + |x|^{2m/(m+1)})
    let ln_num = ln_add_exp(LN_2, 2.0 * mf / (mf + 1.0) * ln_x);
    // ln(4 + x^2)
    let ln_den = ln_add_exp(2.0 * LN_2, 2.0 * ln_x);
    Ok((mf + 1.0) / (2.0 * mf) * ln_num - 0.5 * ln_den)
}

/// `f_m(x) = (2 + (x^2)^{m/(m+1)})^{(m+1)/(2m)} / sqrt(4 + x^2)`, even in `x`.
///
/// Every `x` gives `D(m) >= f_m(x)`.
pub fn family_ratio(m: u32, x: f64) -> Result<f64> {
    family_ratio_ln(m, x).map(f64::exp)
}

/// Positive maximiser `2^{(m+1)/2}` of [`family_ratio`].
pub fn optimal_x(m: u32) -> Result<f64> {
    require_degree(m, 2)?;
    Ok(2f64.powf((f64::from(m) + 1.0) / 2.0))
}

/// `ln` of the lower bound, `ln(1 + 2^{1-m}) / (2m)`.
///
/// Strictly positive for every `m >= 2` whose `2^{1-m}` is representable
/// (through `m = 1075`).
pub fn lower_bound_ln(m: u32) -> Result<f64> {
    require_degree(m, 2)?;
    let t = 2f64.powi(1 - m.min(2000) as i32);
    Ok(t.ln_1p() / (2.0 * f64::from(m)))
}

/// `lower_bound(m) - 1`, accurate where `lower_bound(m)` itself rounds to 1.
pub fn lower_bound_excess(m: u32) -> Result<f64> {
    lower_bound_ln(m).map(f64::exp_m1)
}

/// `D(m) >= (2 + 2^m)^{(m+1)/(2m)} / sqrt(4 + 2^{m+1})`.
///
/// The value tends to 1 quickly; beyond `m ~ 47` it is within one ulp of 1.0,
/// so use [`lower_bound_ln`] or [`lower_bound_excess`] to see the gap.
pub fn lower_bound(m: u32) -> Result<f64> {
    lower_bound_ln(m).map(f64::exp)
}

/// `ln` of the hypercontractive upper bound.
pub fn upper_bound_ln(m: u32) -> Result<f64> {
    require_degree(m, 1)?;
    let mf = f64::from(m);
    Ok((mf - 1.0) * mf.recip().ln_1p() + 0.5 * mf.ln() + 0.5 * (mf - 1.0) * LN_2)
}

/// `D(m) <= (1 + 1/m)^{m-1} sqrt(m) sqrt(2)^{m-1}`.
pub fn upper_bound(m: u32) -> Result<f64> {
    require_degree(m, 1)?;
    if m > 1500 {
        return upper_bound_ln(m).map(f64::exp);
    }
    let mf = f64::from(m);
    let base = (1.0 + mf.recip()).powi(m as i32 - 1);
    // sqrt(m) sqrt(2)^{m-1} = sqrt(m 2^r) 2^q with m - 1 = 2q + r
    let q = (m - 1) / 2;
    let r = (m - 1) % 2;
    let root = (mf * 2f64.powi(r as i32)).sqrt() * 2f64.powi(q as i32);
    Ok(base * root)
}

/// `2^{1 - 1/m}`, the known lower bound on the real multilinear constant `C(m)`.
pub fn multilinear_lower_bound(m: u32) -> Result<f64> {
    require_degree(m, 1)?;
    Ok(2f64.powf(1.0 - f64::from(m).recip()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsRow {
    pub m: u32,
    pub lower: f64,
    /// `ln(lower)`, which stays informative after `lower` rounds to 1.
    pub lower_ln: f64,
    pub upper: f64,
    pub multilinear_lower: f64,
    pub optimal_x: f64,
}

impl BoundsRow {
    pub fn new(m: u32) -> Result<Self> {
        Ok(Self {
            m,
            lower: lower_bound(m)?,
            lower_ln: lower_bound_ln(m)?,
            upper: upper_bound(m)?,
            multilinear_lower: multilinear_lower_bound(m)?,
            optimal_x: optimal_x(m)?,
        })
    }

    /// Gap `upper / lower`.
    pub fn gap(&self) -> f64 {
        self.upper / self.lower
    }
}

/// One row per `m` in `m_min..=m_max`, ascending.
pub fn bounds_table(m_min: u32, m_max: u32) -> Result<Vec<BoundsRow>> {
    bounds_table_with(m_min, m_max, &Sequential)
}

pub fn bounds_table_with<E: Executor>(m_min: u32, m_max: u32, exec: &E) -> Result<Vec<BoundsRow>> {
    if m_min < 2 || m_min > m_max {
        return Err(Error::InvalidRange {
            from: m_min,
            to: m_max,
        });
    }
    let count = (m_max - m_min) as usize + 1;
    exec.map_indexed(count, |i| BoundsRow::new(m_min + i as u32))
        .into_iter()
        .collect()
}

/// Coefficient norm over sup norm for one polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct BhRatio {
    /// `l_{2m/(m+1)}` norm of the coefficients.
    pub coeff_norm: f64,
    /// `coeff_norm / lower_estimate`: the best guess at the ratio.
    pub estimate: f64,
    /// `coeff_norm / upper_bracket`: a rigorous lower bound on `D(m)`.
    pub certified: f64,
    pub supnorm: SupNormResult,
}

/// Every nonzero `m`-homogeneous polynomial gives `D(m) >= ratio`; this
/// computes the ratio both against the sup-norm estimate and against its
/// rigorous upper bracket.
pub fn bh_ratio(p: &HomogeneousPolynomial, cfg: &SupNormConfig) -> Result<BhRatio> {
    bh_ratio_with(p, cfg, &Sequential)
}

pub fn bh_ratio_with<E: Executor>(
    p: &HomogeneousPolynomial,
    cfg: &SupNormConfig,
    exec: &E,
) -> Result<BhRatio> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let coeff_norm = p.coefficient_lp_norm(bh_exponent(p.degree())?)?;
    let supnorm = sup_norm_with(p, cfg, exec)?;
    Ok(BhRatio {
        coeff_norm,
        estimate: coeff_norm / supnorm.lower_estimate,
        certified: coeff_norm / supnorm.upper_bracket,
        supnorm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    // Frozen from a 30-digit evaluation of the printed formula
    // (2 + 2^m)^{(m+1)/(2m)} / sqrt(4 + 2^{m+1}).
    const LOWER_2: f64 = 1.106_681_919_700_321_6;
    const LOWER_3: f64 = 1.037_890_815_556_213_4;
    const LOWER_4: f64 = 1.014_831_794_906_702_2;

    #[test]
    fn params_gate() {
        assert!(FamilyParams::new(1.0, 1.0, 0.0).is_err());
        assert!(FamilyParams::new(1.0, -1.0, 100.0).is_ok());
        assert!(FamilyParams::new(2.0, -1.0, 9.0).is_err());
    }

    #[test]
    fn p2_terms() {
        let p = build_p2(&FamilyParams::new(1.0, -1.0, 0.0).unwrap());
        let terms: Vec<(Vec<u32>, f64)> = p
            .terms()
            .map(|(a, c)| (a.exponents().to_vec(), c.re))
            .collect();
        assert_eq!(terms, vec![(vec![0, 2], -1.0), (vec![2, 0], 1.0)]);
        let q = build_p2(&FamilyParams::new(1.0, -1.0, 2.828427).unwrap());
        assert_eq!(q.len(), 3);
    }

    #[test]
    fn pm_terms_and_degenerate_lift() {
        let params = FamilyParams::new(1.0, -1.0, 2.0).unwrap();
        let p = build_pm(4, &params).unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(p.num_vars(), 4);
        assert_eq!(p.coefficient(&MultiIndex::new(vec![2, 0, 1, 1])).re, 1.0);
        assert_eq!(p.coefficient(&MultiIndex::new(vec![0, 2, 1, 1])).re, -1.0);
        assert_eq!(p.coefficient(&MultiIndex::new(vec![1, 1, 1, 1])).re, 2.0);
        assert_eq!(p.len(), 3);

        let params = FamilyParams::new(1.0, -1.0, 1.0).unwrap();
        assert_eq!(build_pm(2, &params).unwrap(), build_p2(&params));
        assert!(build_pm(1, &params).is_err());
    }

    #[test]
    fn pm_coefficient_norm_m3() {
        for x in [0.0, 0.5, 4.0, 17.0] {
            let p = build_pm(3, &FamilyParams::new(1.0, -1.0, x).unwrap()).unwrap();
            let v = p.coefficient_lp_norm(1.5).unwrap();
            let expected = (2.0 + x.powf(1.5)).powf(2.0 / 3.0);
            assert!((v - expected).abs() < 1e-13 * expected, "x = {x}");
        }
    }

    #[test]
    fn family_ratio_values() {
        // 2^{3/4} / 2
        assert!((family_ratio(2, 0.0).unwrap() - 0.840_896_415_253_714_5).abs() < 1e-15);
        assert!((family_ratio(2, 2f64.powf(1.5)).unwrap() - LOWER_2).abs() < 1e-15);
        assert!((family_ratio(3, 4.0).unwrap() - LOWER_3).abs() < 1e-15);
        assert_eq!(
            family_ratio(5, -3.0).unwrap(),
            family_ratio(5, 3.0).unwrap()
        );
        assert!(family_ratio(9, 1e300).unwrap().is_finite());
        assert!(family_ratio(1, 1.0).is_err());
    }

    #[test]
    fn optimal_x_values() {
        assert!((optimal_x(2).unwrap() - 2.828_427_124_746_19).abs() < 1e-15);
        assert_eq!(optimal_x(3).unwrap(), 4.0);
        assert_eq!(optimal_x(7).unwrap(), 16.0);
        assert!(optimal_x(1).is_err());
    }

    #[test]
    fn lower_bound_values() {
        assert!((lower_bound(2).unwrap() - LOWER_2).abs() < 1e-15);
        assert!((lower_bound(3).unwrap() - LOWER_3).abs() < 1e-15);
        assert!((lower_bound(4).unwrap() - LOWER_4).abs() < 1e-15);
        assert!(lower_bound(2).unwrap() >= 1.1066);
        assert!(lower_bound(1).is_err());
    }

    #[test]
    fn lower_bound_matches_printed_formula_for_small_m() {
        // direct evaluation is fine while 2^{m+1} is far from overflow
        for m in 2..=60u32 {
            let mf = f64::from(m);
            let direct = (2.0 + 2f64.powi(m as i32)).powf((mf + 1.0) / (2.0 * mf))
                / (4.0 + 2f64.powi(m as i32 + 1)).sqrt();
            let v = lower_bound(m).unwrap();
            assert!((v - direct).abs() <= 1e-14 * direct, "m = {m}");
        }
    }

    #[test]
    fn excess_is_positive_far_out() {
        for m in [50, 100, 500, 1000] {
            assert!(lower_bound_ln(m).unwrap() > 0.0);
            assert!(lower_bound_excess(m).unwrap() > 0.0);
        }
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(upper_bound(2).unwrap(), 3.0);
        assert_eq!(upper_bound(1).unwrap(), 1.0);
        assert!((upper_bound(3).unwrap() - 6.158_402_871_356_008).abs() < 1e-14);
        assert!(upper_bound(0).is_err());
        for m in [1, 2, 10, 200, 1400] {
            let direct = upper_bound(m).unwrap();
            let via_ln = upper_bound_ln(m).unwrap().exp();
            assert!((direct - via_ln).abs() <= 1e-12 * direct, "m = {m}");
        }
        assert!(upper_bound_ln(100_000).unwrap().is_finite());
    }

    #[test]
    fn multilinear_values() {
        assert_eq!(multilinear_lower_bound(1).unwrap(), 1.0);
        assert!((multilinear_lower_bound(2).unwrap() - core::f64::consts::SQRT_2).abs() < 1e-15);
        let far = multilinear_lower_bound(1_000_000).unwrap();
        assert!(far > 1.999 && far < 2.0);
    }

    #[test]
    fn table_rows() {
        let one = bounds_table(2, 2).unwrap();
        assert_eq!(one.len(), 1);
        assert!((one[0].lower - LOWER_2).abs() < 1e-15);
        assert_eq!(one[0].upper, 3.0);

        let four = bounds_table(2, 5).unwrap();
        assert_eq!(
            four.iter().map(|r| r.m).collect::<Vec<_>>(),
            vec![2, 3, 4, 5]
        );
        for w in four.windows(2) {
            assert!(w[1].lower < w[0].lower);
        }
        for row in &four {
            assert!(1.0 < row.lower && row.lower < row.upper);
            assert_eq!(row.optimal_x, optimal_x(row.m).unwrap());
        }
        assert!(bounds_table(3, 2).is_err());
        assert!(bounds_table(1, 4).is_err());
    }

    #[test]
    fn ratio_of_family_witness_m2() {
        let p = build_pm(2, &FamilyParams::optimal(2).unwrap()).unwrap();
        let r = bh_ratio(&p, &SupNormConfig::default()).unwrap();
        assert!((r.estimate - LOWER_2).abs() < 1e-8);
        assert!(r.certified <= r.estimate);
    }

    #[test]
    fn ratio_of_unit_monomial_is_one() {
        let p =
            HomogeneousPolynomial::monomial(MultiIndex::new(vec![3, 0]), Complex64::new(1.0, 0.0))
                .unwrap();
        let r = bh_ratio(&p, &SupNormConfig::default()).unwrap();
        assert_eq!(r.estimate, 1.0);
        assert_eq!(
            r.certified,
            1.0 / (1.0 + 3.0 * core::f64::consts::PI / 64.0)
        );
    }

    #[test]
    fn ratio_of_lifted_witness_m4() {
        let p = build_pm(4, &FamilyParams::new(1.0, -1.0, 2f64.powf(2.5)).unwrap()).unwrap();
        let r = bh_ratio(&p, &SupNormConfig::default()).unwrap();
        assert!((r.estimate - LOWER_4).abs() < 1e-6);
    }

    #[test]
    fn ratio_rejects_zero() {
        let p = HomogeneousPolynomial::from_terms(2, 2, []).unwrap();
        assert_eq!(
            bh_ratio(&p, &SupNormConfig::default()),
            Err(Error::ZeroPolynomial)
        );
    }
}
