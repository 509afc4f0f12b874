//! Deterministic maximization over product measurement bases: a coarse grid
//! over both Bloch hemispheres followed by Nelder-Mead refinement.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::MeasurementBasis;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    /// Points per angle on the coarse grid (θ over `[0, π/2]`, φ over `[0, 2π)`).
    pub grid_points: usize,
    /// Number of best grid points refined.
    pub starts: usize,
    /// Iteration budget per refinement.
    pub max_iterations: usize,
    /// Relative spread of simplex values at convergence.
    pub ftol: f64,
    /// Simplex radius (radians) at convergence.
    pub xtol: f64,
    /// Candidates within this of the optimum count as ties.
    pub tie_tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_points: 24,
            starts: 5,
            max_iterations: 5000,
            ftol: 1e-13,
            xtol: 1e-8,
            tie_tol: 1e-12,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(Error::BadParameter("grid_points must be at least 2".into()));
        }
        if self.starts == 0 || self.max_iterations == 0 {
            return Err(Error::BadParameter("starts and max_iterations must be positive".into()));
        }
        for (name, v) in [("ftol", self.ftol), ("xtol", self.xtol), ("tie_tol", self.tie_tol)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::BadParameter(format!("{name} must be finite and nonnegative")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Optimum<T: Real> {
    pub value: T,
    pub basis: MeasurementBasis<T>,
    /// Total simplex iterations over all refinements.
    pub iterations: usize,
}

type Point<T> = [T; 4];

/// Maximizes `f` over `(θ_a, φ_a, θ_b, φ_b)`.
///
/// Among all evaluated points within `tie_tol` of the best value, the one
/// with the lexicographically smallest canonical angles is returned.
pub fn maximize<T, F>(f: F, cfg: &OptimizerConfig) -> Result<Optimum<T>>
where
    T: Real,
    F: Fn(&Point<T>) -> T,
{
    cfg.validate()?;
    let n = cfg.grid_points;
    let dtheta = T::frac_pi_2() / T::lit((n - 1) as f64);
    let dphi = T::two_pi() / T::lit(n as f64);
    let thetas: Vec<T> = (0..n).map(|k| dtheta * T::lit(k as f64)).collect();
    let phis: Vec<T> = (0..n).map(|k| dphi * T::lit(k as f64)).collect();

    let mut grid: Vec<(T, Point<T>)> = Vec::with_capacity(n.pow(4));
    for &ta in &thetas {
        for &pa in &phis {
            for &tb in &thetas {
                for &pb in &phis {
                    let p = [ta, pa, tb, pb];
                    grid.push((f(&p), p));
                }
            }
        }
    }
    // Stable sort keeps grid order among equal values, so starts are deterministic.
    grid.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));

    let ftol = T::lit(cfg.ftol).max(T::default_epsilon() * T::lit(100.0));
    let xtol = T::lit(cfg.xtol).max(T::default_epsilon().sqrt() * T::lit(10.0));
    let mut pool: Vec<(T, Point<T>)> = Vec::new();
    let mut iterations = 0;
    for &(_, start) in grid.iter().take(cfg.starts) {
        let (value, point, iters) = nelder_mead(&f, start, dtheta, ftol, xtol, cfg.max_iterations)?;
        iterations += iters;
        pool.push((value, point));
    }

    let best = pool.iter().map(|c| c.0).fold(grid[0].0, |a, b| a.max(b));
    let tie = T::lit(cfg.tie_tol);
    let mut choice: Option<(T, MeasurementBasis<T>)> = None;
    let ties = pool
        .iter()
        .chain(grid.iter().take_while(|c| c.0 >= best - tie))
        .filter(|c| c.0 >= best - tie);
    for &(value, p) in ties {
        let basis = MeasurementBasis::from_array(p).canonical();
        let better = match &choice {
            None => true,
            Some((_, current)) => lexicographic_less(&basis.to_array(), &current.to_array()),
        };
        if better {
            choice = Some((value, basis));
        }
    }
    let (value, basis) = choice.expect("candidate pool is never empty");
    Ok(Optimum {
        value,
        basis,
        iterations,
    })
}

fn lexicographic_less<T: Real>(a: &Point<T>, b: &Point<T>) -> bool {
    for i in 0..4 {
        if a[i] < b[i] {
            return true;
        }
        if a[i] > b[i] {
            return false;
        }
    }
    false
}

/// Maximizes by minimizing `-f`. Returns `(value, point, iterations)`.
fn nelder_mead<T, F>(
    f: &F,
    start: Point<T>,
    step: T,
    ftol: T,
    xtol: T,
    max_iterations: usize,
) -> Result<(T, Point<T>, usize)>
where
    T: Real,
    F: Fn(&Point<T>) -> T,
{
    let g = |p: &Point<T>| -f(p);
    let mut simplex: Vec<(T, Point<T>)> = Vec::with_capacity(5);
    simplex.push((g(&start), start));
    for i in 0..4 {
        let mut p = start;
        p[i] += step;
        simplex.push((g(&p), p));
    }
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let lerp = |a: &Point<T>, b: &Point<T>, t: T| -> Point<T> { std::array::from_fn(|i| a[i] + t * (b[i] - a[i])) };

    for iter in 0..max_iterations {
        simplex.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
        let (lo, hi) = (simplex[0].0, simplex[4].0);
        let anchor = simplex[0].1;
        let radius = simplex[1..]
            .iter()
            .flat_map(|(_, p)| (0..4).map(move |i| (p[i] - anchor[i]).abs()))
            .fold(T::zero(), |a, b| a.max(b));
        if hi - lo <= ftol * (T::one() + lo.abs()) && radius <= xtol {
            return Ok((-simplex[0].0, simplex[0].1, iter));
        }

        let mut centroid = [T::zero(); 4];
        for (_, p) in &simplex[..4] {
            for i in 0..4 {
                centroid[i] += p[i] / T::lit(4.0);
            }
        }
        let worst = simplex[4].1;
        let reflected = lerp(&centroid, &worst, -T::one());
        let fr = g(&reflected);
        if fr < simplex[0].0 {
            let expanded = lerp(&centroid, &worst, -two);
            let fe = g(&expanded);
            simplex[4] = if fe < fr { (fe, expanded) } else { (fr, reflected) };
            continue;
        }
        if fr < simplex[3].0 {
            simplex[4] = (fr, reflected);
            continue;
        }
        let (contracted, bound) = if fr < simplex[4].0 {
            (lerp(&centroid, &reflected, half), fr)
        } else {
            (lerp(&centroid, &worst, half), simplex[4].0)
        };
        let fc = g(&contracted);
        if fc < bound {
            simplex[4] = (fc, contracted);
            continue;
        }
        let best = simplex[0].1;
        for vertex in simplex.iter_mut().skip(1) {
            let p = lerp(&best, &vertex.1, half);
            *vertex = (g(&p), p);
        }
    }
    Err(Error::OptimizerFailure {
        iterations: max_iterations,
    })
}
