//! Minimization of the measured conditional entropy over projective bases.
//!
//! Qubit B: a uniform (θ, φ) grid over the Bloch sphere followed by a
//! Nelder–Mead refinement from the best grid point. Qutrit/ququart B: the best
//! of a batch of Haar-random bases, refined by coordinate descent over Givens
//! rotations of pairs of basis vectors.

use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::PI;

use super::measurement::{conditional_entropy_raw, MeasurementBasis};
use crate::linalg::{ComplexMatrix, C64};
use crate::random::{haar_unitary, rng_from_seed};
use crate::{Error, Result};

/// Tuning for [`super::classical_correlation_numeric_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Polar grid points, `θ_i = π i / n` for `i < n`.
    pub grid_theta: usize,
    /// Azimuthal grid points, `φ_j = 2π j / n` for `j < n`.
    pub grid_phi: usize,
    pub max_iterations: usize,
    /// Nelder–Mead stops once the simplex's value spread is below this.
    pub tolerance: f64,
    /// Haar-random bases drawn for `d_B ∈ {3, 4}`.
    pub sampled_bases: usize,
    pub max_sweeps: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_theta: 96,
            grid_phi: 192,
            max_iterations: 500,
            tolerance: 1e-11,
            sampled_bases: 2000,
            max_sweeps: 60,
            seed: 42,
        }
    }
}

/// Which search produced a classical-correlation value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchPath {
    /// `d_B = 1`: only the trivial measurement exists.
    Trivial,
    /// Bloch-sphere grid plus Nelder–Mead.
    QubitGrid,
    /// Haar-sampled bases plus Givens coordinate descent.
    SampledBases,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerDiagnostics {
    pub path: SearchPath,
    /// `(θ, φ)` for the qubit path; rotation angles are not reported for the sampled path.
    pub best_parameters: Vec<f64>,
    /// Number of starting candidates evaluated (grid points or sampled bases).
    pub grid_size: usize,
    pub refinement_iterations: usize,
    /// Refinement steps that lowered the best objective value.
    pub improvements: usize,
}

pub(crate) struct Minimum {
    pub value: f64,
    pub basis: MeasurementBasis,
    pub diagnostics: OptimizerDiagnostics,
}

pub(crate) struct NelderMeadResult {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub improvements: usize,
}

/// Standard Nelder–Mead (reflection 1, expansion 2, contraction ½, shrink ½).
pub(crate) fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> f64,
    start: &[f64],
    steps: &[f64],
    max_iterations: usize,
    tolerance: f64,
) -> NelderMeadResult {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for k in 0..n {
        let mut x = start.to_vec();
        x[k] += steps[k];
        let v = f(&x);
        simplex.push((x, v));
    }
    let sort = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    sort(&mut simplex);

    let mut iterations = 0;
    let mut improvements = 0;
    while iterations < max_iterations {
        if simplex[n].1 - simplex[0].1 < tolerance {
            break;
        }
        iterations += 1;
        let best_before = simplex[0].1;

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let along =
            |t: f64, worst: &[f64]| -> Vec<f64> { centroid.iter().zip(worst).map(|(c, w)| c + t * (w - c)).collect() };
        let worst = simplex[n].0.clone();
        let reflected = along(-1.0, &worst);
        let fr = f(&reflected);

        if fr < simplex[0].1 {
            let expanded = along(-2.0, &worst);
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let (contracted, fc) = if fr < simplex[n].1 {
                let x = along(-0.5, &worst);
                let v = f(&x);
                (x, v)
            } else {
                let x = along(0.5, &worst);
                let v = f(&x);
                (x, v)
            };
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for (x, v) in simplex.iter_mut().skip(1) {
                    for (xi, bi) in x.iter_mut().zip(&best) {
                        *xi = bi + 0.5 * (*xi - bi);
                    }
                    *v = f(x);
                }
            }
        }
        sort(&mut simplex);
        if simplex[0].1 < best_before {
            improvements += 1;
        }
    }
    let (point, value) = simplex.swap_remove(0);
    NelderMeadResult { point, value, iterations, improvements }
}

/// Wraps a fallible objective for the infallible minimizer; the first error is kept.
struct Objective<'a> {
    rho: &'a ComplexMatrix,
    da: usize,
    db: usize,
    error: Option<Error>,
}

impl Objective<'_> {
    fn eval(&mut self, vectors: &[Vec<C64>]) -> f64 {
        match conditional_entropy_raw(self.rho, self.da, self.db, vectors) {
            Ok(v) => v,
            Err(e) => {
                self.error.get_or_insert(e);
                f64::INFINITY
            }
        }
    }

    fn finish<T>(self, value: T) -> Result<T> {
        match self.error {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }
}

pub(crate) fn minimize_conditional_entropy(
    rho: &ComplexMatrix,
    da: usize,
    db: usize,
    config: &OptimizerConfig,
) -> Result<Minimum> {
    match db {
        1 => {
            let basis = MeasurementBasis::computational(1);
            let mut obj = Objective { rho, da, db, error: None };
            let value = obj.eval(basis.vectors());
            let diagnostics = OptimizerDiagnostics {
                path: SearchPath::Trivial,
                best_parameters: Vec::new(),
                grid_size: 1,
                refinement_iterations: 0,
                improvements: 0,
            };
            obj.finish(Minimum { value, basis, diagnostics })
        }
        2 => qubit_search(rho, da, config),
        3 | 4 => sampled_search(rho, da, db, config),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn qubit_search(rho: &ComplexMatrix, da: usize, config: &OptimizerConfig) -> Result<Minimum> {
    if config.grid_theta == 0 || config.grid_phi == 0 {
        return Err(Error::InvalidArgument("grid resolution must be positive"));
    }
    let mut obj = Objective { rho, da, db: 2, error: None };
    let dtheta = PI / config.grid_theta as f64;
    let dphi = 2.0 * PI / config.grid_phi as f64;

    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..config.grid_theta {
        let theta = dtheta * i as f64;
        for j in 0..config.grid_phi {
            let phi = dphi * j as f64;
            let v = obj.eval(MeasurementBasis::qubit(theta, phi).vectors());
            if v < best.0 {
                best = (v, theta, phi);
            }
        }
    }

    let nm = nelder_mead(
        |x| obj.eval(MeasurementBasis::qubit(x[0], x[1]).vectors()),
        &[best.1, best.2],
        &[dtheta, dphi],
        config.max_iterations,
        config.tolerance,
    );
    let (value, theta, phi) = if nm.value < best.0 { (nm.value, nm.point[0], nm.point[1]) } else { best };
    let diagnostics = OptimizerDiagnostics {
        path: SearchPath::QubitGrid,
        best_parameters: vec![theta, phi],
        grid_size: config.grid_theta * config.grid_phi,
        refinement_iterations: nm.iterations,
        improvements: nm.improvements,
    };
    obj.finish(Minimum { value, basis: MeasurementBasis::qubit(theta, phi), diagnostics })
}

fn columns(u: &ComplexMatrix) -> Vec<Vec<C64>> {
    (0..u.cols()).map(|j| u.column(j)).collect()
}

/// Rotates basis vectors `p` and `q` by `[[cos θ, −e^{−iφ} sin θ], [e^{iφ} sin θ, cos θ]]`.
fn givens(vectors: &[Vec<C64>], p: usize, q: usize, theta: f64, phi: f64) -> Vec<Vec<C64>> {
    let (c, s) = (libm::cos(theta), libm::sin(theta));
    let e = C64::from_polar(1.0, phi);
    let mut out = vectors.to_vec();
    for k in 0..vectors[p].len() {
        let (vp, vq) = (vectors[p][k], vectors[q][k]);
        out[p][k] = vp * c + vq * e * s;
        out[q][k] = -vp * e.conj() * s + vq * c;
    }
    out
}

fn sampled_search(rho: &ComplexMatrix, da: usize, db: usize, config: &OptimizerConfig) -> Result<Minimum> {
    if config.sampled_bases == 0 {
        return Err(Error::InvalidArgument("at least one sampled basis is required"));
    }
    let mut obj = Objective { rho, da, db, error: None };
    let mut rng = rng_from_seed(config.seed);
    let mut best_vectors = Vec::new();
    let mut best = f64::INFINITY;
    for _ in 0..config.sampled_bases {
        let vectors = columns(&haar_unitary(db, &mut rng));
        let v = obj.eval(&vectors);
        if v < best {
            best = v;
            best_vectors = vectors;
        }
    }

    let mut step = 0.25;
    let mut iterations = 0;
    let mut improvements = 0;
    for _ in 0..config.max_sweeps {
        let before = best;
        for p in 0..db {
            for q in p + 1..db {
                let current = best_vectors.clone();
                let nm = nelder_mead(
                    |x| obj.eval(&givens(&current, p, q, x[0], x[1])),
                    &[0.0, 0.0],
                    &[step, step],
                    config.max_iterations,
                    config.tolerance,
                );
                iterations += nm.iterations;
                if nm.value < best {
                    best = nm.value;
                    best_vectors = givens(&current, p, q, nm.point[0], nm.point[1]);
                    improvements += 1;
                }
            }
        }
        if before - best < config.tolerance {
            step *= 0.5;
            if step < 1e-4 {
                break;
            }
        }
    }

    let u = ComplexMatrix::from_fn(db, db, |i, j| best_vectors[j][i]);
    let diagnostics = OptimizerDiagnostics {
        path: SearchPath::SampledBases,
        best_parameters: Vec::new(),
        grid_size: config.sampled_bases,
        refinement_iterations: iterations,
        improvements,
    };
    obj.finish(Minimum { value: best, basis: MeasurementBasis::from_unitary_unchecked(&u), diagnostics })
}
