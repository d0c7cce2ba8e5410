//! Supremum norm of a homogeneous polynomial on the closed unit polydisc.
//!
//! By the maximum modulus principle applied in each coordinate, the sup over
//! the polydisc equals the sup over the torus `|z_j| = 1`, so everything here
//! works with angle vectors `theta` and `z_j = e^{i theta_j}`.
//!
//! [`sup_norm`] brackets `||P||` from both sides:
//!
//! * a uniform `K^N` angle grid gives a starting point and a lower bound,
//! * cyclic coordinate ascent with golden-section line searches polishes it
//!   into `lower_estimate`,
//! * the grid value plus a Lipschitz slack `L * pi / K` gives the rigorous
//!   `upper_bracket`, since every torus point lies within `pi/K` of a grid
//!   point in each coordinate.
//!
//! The grid never enumerates angles that cannot change `|P|`: a variable whose
//! exponent is the same in every term contributes a unimodular factor and is
//! pinned to angle 0, and by homogeneity (`P(e^{i phi} z) = e^{i m phi} P(z)`)
//! one further variable can be pinned as well. Every full-grid point is
//! equivalent to a point of the reduced grid, so the maximum is unchanged.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
// f64 math methods are inherent only when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::exec::{Executor, Sequential};
use crate::poly::HomogeneousPolynomial;
use crate::sum::NeumaierSum;

/// Largest reduced grid we are willing to enumerate.
pub const MAX_GRID_POINTS: u64 = 1 << 32;

/// Width below which a golden-section bracket is considered collapsed.
pub const ANGLE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SupNormConfig {
    /// Grid points per angle axis, `K`.
    pub grid_points_per_axis: usize,
    /// Stop refining once a full sweep improves `|P|` by less than this.
    pub refine_tolerance: f64,
    /// Maximum number of coordinate-ascent sweeps.
    pub max_refine_iterations: usize,
    /// Number of contiguous grid slices handed to the executor.
    pub parallel_chunks: usize,
}

impl Default for SupNormConfig {
    fn default() -> Self {
        Self {
            grid_points_per_axis: 64,
            refine_tolerance: 1e-10,
            max_refine_iterations: 200,
            parallel_chunks: 16,
        }
    }
}

impl SupNormConfig {
    pub fn with_grid(mut self, k: usize) -> Self {
        self.grid_points_per_axis = k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_axis < 2 {
            return Err(Error::InvalidConfig(
                "grid_points_per_axis must be at least 2",
            ));
        }
        if !(self.refine_tolerance > 0.0 && self.refine_tolerance.is_finite()) {
            return Err(Error::InvalidConfig("refine_tolerance must be positive"));
        }
        if self.max_refine_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_refine_iterations must be positive",
            ));
        }
        if self.parallel_chunks == 0 {
            return Err(Error::InvalidConfig("parallel_chunks must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupNormResult {
    /// `|P(e^{i arg_angles})|`, a lower bound on `||P||`.
    pub lower_estimate: f64,
    /// Rigorous upper bound on `||P||` (up to floating-point rounding).
    pub upper_bracket: f64,
    /// Maximising angles, each in `[0, 2 pi)`.
    pub arg_angles: Vec<f64>,
    /// Grid points per axis used for the search.
    pub grid_used: usize,
    /// Raw maximum over the grid, before refinement.
    pub grid_value: f64,
    /// Coordinate-ascent sweeps performed.
    pub refine_sweeps: usize,
    /// Whether refinement met its tolerance within the sweep budget.
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridMax {
    pub value: f64,
    pub angles: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Refinement {
    pub value: f64,
    pub angles: Vec<f64>,
    pub sweeps: usize,
    pub converged: bool,
}

/// Indices of variables whose angles the grid must enumerate.
pub fn grid_variables(p: &HomogeneousPolynomial) -> Vec<usize> {
    p.constant_exponent_vars()
        .iter()
        .enumerate()
        .filter(|(_, &constant)| !constant)
        .map(|(j, _)| j)
        // the first active angle is fixed by the homogeneity rotation
        .skip(1)
        .collect()
}

struct TorusGrid {
    k: u64,
    vars: Vec<usize>,
    /// Coefficient and exponents on `vars`, reduced mod `k`.
    terms: Vec<(Complex64, Vec<u64>)>,
    roots: Vec<Complex64>,
    points: u64,
}

impl TorusGrid {
    fn new(p: &HomogeneousPolynomial, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidConfig(
                "grid_points_per_axis must be at least 2",
            ));
        }
        let vars = grid_variables(p);
        let k64 = k as u64;
        let points = u32::try_from(vars.len())
            .ok()
            .and_then(|d| k64.checked_pow(d))
            .filter(|&n| n <= MAX_GRID_POINTS)
            .ok_or(Error::GridTooLarge {
                dims: vars.len(),
                points_per_axis: k,
            })?;
        let terms = p
            .terms()
            .map(|(alpha, &c)| {
                let e = vars
                    .iter()
                    .map(|&j| u64::from(alpha.exponents()[j]) % k64)
                    .collect();
                (c, e)
            })
            .collect();
        let roots = (0..k)
            .map(|r| Complex64::from_polar(1.0, TAU * r as f64 / k as f64))
            .collect();
        Ok(Self {
            k: k64,
            vars,
            terms,
            roots,
            points,
        })
    }

    fn digits(&self, mut index: u64, out: &mut [u64]) {
        for d in out.iter_mut().rev() {
            *d = index % self.k;
            index /= self.k;
        }
    }

    /// Best `(|P|^2, index)` over `range`, first index wins ties.
    fn scan(&self, start: u64, end: u64) -> (f64, u64) {
        let mut digits = alloc::vec![0u64; self.vars.len()];
        let mut best = (f64::NEG_INFINITY, start);
        for index in start..end {
            self.digits(index, &mut digits);
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, e) in &self.terms {
                let r = e
                    .iter()
                    .zip(&digits)
                    .fold(0u64, |r, (&ej, &dj)| (r + ej * dj) % self.k);
                acc += c * self.roots[r as usize];
            }
            let v = acc.norm_sqr();
            if v > best.0 {
                best = (v, index);
            }
        }
        best
    }

    fn angles(&self, index: u64, num_vars: usize) -> Vec<f64> {
        let mut digits = alloc::vec![0u64; self.vars.len()];
        self.digits(index, &mut digits);
        let mut angles = alloc::vec![0.0; num_vars];
        for (&j, &d) in self.vars.iter().zip(&digits) {
            angles[j] = TAU * d as f64 / self.k as f64;
        }
        angles
    }
}

/// Maximum of `|P|` over the uniform `K^N` torus grid.
///
/// The returned value is a lower bound on `||P||`. Among equal maxima the
/// lexicographically smallest angle vector of the reduced grid is returned.
pub fn torus_grid_max(p: &HomogeneousPolynomial, k: usize) -> Result<GridMax> {
    torus_grid_max_with(p, k, 1, &Sequential)
}

/// [`torus_grid_max`] split into `chunks` contiguous slices run on `exec`.
///
/// Slices are merged in order with a strict comparison, so the answer does not
/// depend on `chunks` or on the executor.
pub fn torus_grid_max_with<E: Executor>(
    p: &HomogeneousPolynomial,
    k: usize,
    chunks: usize,
    exec: &E,
) -> Result<GridMax> {
    let grid = TorusGrid::new(p, k)?;
    let chunks = (chunks.max(1) as u64).min(grid.points);
    let bounds = |c: u64| {
        // points <= 2^32 and chunks <= points, so this cannot overflow
        c * grid.points / chunks
    };
    let partial = exec.map_indexed(chunks as usize, |c| {
        grid.scan(bounds(c as u64), bounds(c as u64 + 1))
    });
    let (best_sq, best_index) = partial
        .into_iter()
        .fold((f64::NEG_INFINITY, 0), |acc, cur| {
            if cur.0 > acc.0 {
                cur
            } else {
                acc
            }
        });
    Ok(GridMax {
        value: best_sq.max(0.0).sqrt(),
        angles: grid.angles(best_index, p.num_vars()),
    })
}

fn wrap_angle(t: f64) -> f64 {
    let r = t % TAU;
    let r = if r < 0.0 { r + TAU } else { r };
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `|P(e^{i theta})|^2` with one coordinate varied at a time.
struct TorusObjective<'a> {
    p: &'a HomogeneousPolynomial,
    z: Vec<Complex64>,
}

impl<'a> TorusObjective<'a> {
    fn new(p: &'a HomogeneousPolynomial, angles: &[f64]) -> Self {
        Self {
            p,
            z: angles
                .iter()
                .map(|&t| Complex64::from_polar(1.0, t))
                .collect(),
        }
    }

    fn at(&mut self, j: usize, t: f64) -> f64 {
        self.z[j] = Complex64::from_polar(1.0, t);
        // z has the right length by construction
        self.p.evaluate(&self.z).map_or(0.0, |v| v.norm_sqr())
    }
}

/// Golden-section maximisation of `f` on `[lo, hi]`.
fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > ANGLE_TOLERANCE {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Cyclic coordinate ascent on `theta -> |P(e^{i theta})|^2`.
///
/// Each coordinate is line-searched over `[theta_j - half_width, theta_j +
/// half_width]` and the move is only kept if it strictly improves the value,
/// so the returned value never drops below the starting one. Variables with a
/// constant exponent are skipped. Stops after the first sweep that gains less
/// than `tol` in `|P|`, or after `max_iter` sweeps.
pub fn refine_local(
    p: &HomogeneousPolynomial,
    angles: &[f64],
    half_width: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Refinement> {
    if angles.len() != p.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: p.num_vars(),
            found: angles.len(),
        });
    }
    let mut theta: Vec<f64> = angles.iter().map(|&t| wrap_angle(t)).collect();
    let active: Vec<usize> = p
        .constant_exponent_vars()
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(j, _)| j)
        .collect();
    let mut obj = TorusObjective::new(p, &theta);
    let mut best_sq = if active.is_empty() {
        obj.p.evaluate(&obj.z)?.norm_sqr()
    } else {
        obj.at(active[0], theta[active[0]])
    };

    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < max_iter {
        sweeps += 1;
        let before = best_sq.sqrt();
        for &j in &active {
            let center = theta[j];
            let (t, v) = golden_section_max(
                |t| obj.at(j, wrap_angle(t)),
                center - half_width,
                center + half_width,
            );
            if v > best_sq {
                best_sq = v;
                theta[j] = wrap_angle(t);
            }
            obj.at(j, theta[j]);
        }
        if best_sq.sqrt() - before < tol {
            converged = true;
            break;
        }
    }
    Ok(Refinement {
        value: best_sq.sqrt(),
        angles: theta,
        sweeps,
        converged,
    })
}

/// `L = sum_j sum_alpha |c_alpha| alpha_j`, a Lipschitz constant of
/// `theta -> |P(e^{i theta})|` in each coordinate direction summed over all
/// coordinates.
pub fn torus_lipschitz_bound(p: &HomogeneousPolynomial) -> f64 {
    let acc: NeumaierSum = p
        .terms()
        .map(|(alpha, c)| c.norm() * alpha.weight() as f64)
        .collect();
    acc.total()
}

/// Bracket `||P||` on the closed unit polydisc.
pub fn sup_norm(p: &HomogeneousPolynomial, cfg: &SupNormConfig) -> Result<SupNormResult> {
    sup_norm_with(p, cfg, &Sequential)
}

/// [`sup_norm`] with the grid scan fanned out on `exec`.
pub fn sup_norm_with<E: Executor>(
    p: &HomogeneousPolynomial,
    cfg: &SupNormConfig,
    exec: &E,
) -> Result<SupNormResult> {
    cfg.validate()?;
    let k = cfg.grid_points_per_axis;
    let grid = torus_grid_max_with(p, k, cfg.parallel_chunks, exec)?;
    let refined = refine_local(
        p,
        &grid.angles,
        TAU / k as f64,
        cfg.refine_tolerance,
        cfg.max_refine_iterations,
    )?;
    let slack = torus_lipschitz_bound(p) * PI / k as f64;
    let upper = (grid.value + slack).max(refined.value);
    Ok(SupNormResult {
        lower_estimate: refined.value,
        upper_bracket: upper,
        arg_angles: refined.angles,
        grid_used: k,
        grid_value: grid.value,
        refine_sweeps: refined.sweeps,
        converged: refined.converged,
    })
}

/// Closed-form norm of `a z1^2 + b z2^2 + c z1 z2` for real `a, b, c` with
/// `ab < 0` and `|c(a+b)| <= 4|ab|`: `(|a|+|b|) sqrt(1 + c^2/(4|ab|))`.
pub fn p2_closed_norm(a: f64, b: f64, c: f64) -> Result<f64> {
    let ab = a * b;
    let valid = a.is_finite()
        && b.is_finite()
        && c.is_finite()
        && ab < 0.0
        && (c * (a + b)).abs() <= 4.0 * ab.abs();
    if !valid {
        return Err(Error::OutOfValidityDomain { a, b, c });
    }
    Ok((a.abs() + b.abs()) * (1.0 + c * c / (4.0 * ab.abs())).sqrt())
}
