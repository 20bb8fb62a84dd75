//! Prox setups: a strongly convex `ψ` with a closed-form conjugate.
//!
//! Two geometries are provided. The Euclidean setup `ψ(x) = σ‖x‖²/2` works
//! on the whole space, a box or the simplex; the entropy setup
//! `ψ(x) = σ·Σ xᵢ ln xᵢ` lives on the unit simplex and is σ-strongly convex
//! with respect to `‖·‖₁`.

use crate::error::{Error, Result};
use crate::oracle::Vector;

#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Unconstrained,
    Box { lower: Vector, upper: Vector },
    Simplex,
}

impl Domain {
    /// Euclidean projection onto the domain.
    pub fn project(&self, y: &Vector) -> Vector {
        match self {
            Domain::Unconstrained => y.clone(),
            Domain::Box { lower, upper } => clamp(y, lower, upper),
            Domain::Simplex => project_simplex(y),
        }
    }

    /// Membership test with absolute slack `tol`.
    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        match self {
            Domain::Unconstrained => x.iter().all(|v| v.is_finite()),
            Domain::Box { lower, upper } => x
                .iter()
                .zip(lower.iter().zip(upper.iter()))
                .all(|(v, (l, u))| *v >= l - tol && *v <= u + tol),
            Domain::Simplex => x.iter().all(|&v| v >= -tol) && (x.sum() - 1.0).abs() <= tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Euclidean,
    Entropy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProxSetup {
    sigma: f64,
    geometry: Geometry,
    domain: Domain,
}

fn clamp(y: &Vector, lower: &Vector, upper: &Vector) -> Vector {
    Vector::from_fn(y.len(), |i, _| y[i].max(lower[i]).min(upper[i]))
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::usage(format!("sigma must be positive, got {sigma}")));
    }
    Ok(())
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn log_sum_exp(v: &Vector) -> f64 {
    let m = v.max();
    m + v.iter().map(|&t| (t - m).exp()).sum::<f64>().ln()
}

impl ProxSetup {
    /// `ψ(x) = σ‖x‖²/2` on the whole space, a box or the simplex.
    pub fn euclidean(sigma: f64, domain: Domain) -> Result<Self> {
        check_sigma(sigma)?;
        match &domain {
            Domain::Unconstrained => {}
            Domain::Box { lower, upper } => {
                if lower.len() != upper.len() {
                    return Err(Error::usage("box bounds have different lengths"));
                }
                if lower.iter().zip(upper.iter()).any(|(l, u)| !(l <= u)) {
                    return Err(Error::usage("box lower bound exceeds upper bound"));
                }
            }
            Domain::Simplex => {}
        }
        Ok(ProxSetup {
            sigma,
            geometry: Geometry::Euclidean,
            domain,
        })
    }

    /// `ψ(x) = σ·Σ xᵢ ln xᵢ` on the unit simplex.
    pub fn entropy_simplex(sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        Ok(ProxSetup {
            sigma,
            geometry: Geometry::Entropy,
            domain: Domain::Simplex,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn psi(&self, x: &Vector) -> f64 {
        match self.geometry {
            Geometry::Euclidean => 0.5 * self.sigma * x.norm_squared(),
            Geometry::Entropy => self.sigma * x.iter().map(|&v| xlogx(v)).sum::<f64>(),
        }
    }

    /// Fails on the simplex boundary under entropy, where `∇ψ` is unbounded.
    pub fn grad_psi(&self, x: &Vector) -> Result<Vector> {
        match self.geometry {
            Geometry::Euclidean => Ok(x * self.sigma),
            Geometry::Entropy => {
                if let Some(v) = x.iter().find(|&&v| !(v > 0.0)) {
                    return Err(Error::numeric(format!(
                        "entropy gradient needs strictly positive coordinates, found {v}"
                    )));
                }
                Ok(x.map(|v| self.sigma * (v.ln() + 1.0)))
            }
        }
    }

    pub fn psi_star(&self, z: &Vector) -> f64 {
        match (&self.geometry, &self.domain) {
            (Geometry::Euclidean, Domain::Unconstrained) => z.norm_squared() / (2.0 * self.sigma),
            (Geometry::Euclidean, _) => {
                let x = self.grad_psi_star(z);
                z.dot(&x) - self.psi(&x)
            }
            (Geometry::Entropy, _) => self.sigma * log_sum_exp(&(z / self.sigma)),
        }
    }

    /// The regularized argmax `argmax_{x ∈ X} ⟨z, x⟩ − ψ(x)`.
    pub fn grad_psi_star(&self, z: &Vector) -> Vector {
        match (&self.geometry, &self.domain) {
            (Geometry::Euclidean, Domain::Box { lower, upper }) => {
                clamp(&(z / self.sigma), lower, upper)
            }
            (Geometry::Euclidean, Domain::Simplex) => project_simplex(&(z / self.sigma)),
            (Geometry::Euclidean, Domain::Unconstrained) => z / self.sigma,
            (Geometry::Entropy, _) => {
                let scaled = z / self.sigma;
                let m = scaled.max();
                let e = scaled.map(|t| (t - m).exp());
                let s = e.sum();
                e / s
            }
        }
    }

    pub fn norm(&self, x: &Vector) -> f64 {
        match self.geometry {
            Geometry::Euclidean => x.norm(),
            Geometry::Entropy => x.lp_norm(1),
        }
    }

    pub fn dual_norm(&self, z: &Vector) -> f64 {
        match self.geometry {
            Geometry::Euclidean => z.norm(),
            Geometry::Entropy => z.amax(),
        }
    }

    /// `D_ψ(x, y) = ψ(x) − ψ(y) − ⟨∇ψ(y), x − y⟩`.
    pub fn bregman(&self, x: &Vector, y: &Vector) -> Result<f64> {
        if x.len() != y.len() {
            return Err(Error::usage("Bregman arguments have different lengths"));
        }
        match self.geometry {
            Geometry::Euclidean => Ok(0.5 * self.sigma * (x - y).norm_squared()),
            Geometry::Entropy => {
                if let Some(v) = y.iter().find(|&&v| !(v > 0.0)) {
                    return Err(Error::numeric(format!(
                        "entropy divergence needs an interior second argument, found {v}"
                    )));
                }
                // σ·Σ [xᵢ ln(xᵢ/yᵢ) − xᵢ + yᵢ], algebraically the definition.
                let s: f64 = x
                    .iter()
                    .zip(y.iter())
                    .map(|(&a, &b)| {
                        let t = if a == 0.0 { 0.0 } else { a * (a / b).ln() };
                        t - a + b
                    })
                    .sum();
                Ok(self.sigma * s)
            }
        }
    }

    /// `D_{ψ*}(z, w) = ψ*(z) − ψ*(w) − ⟨∇ψ*(w), z − w⟩`.
    pub fn bregman_conjugate(&self, z: &Vector, w: &Vector) -> f64 {
        match (&self.geometry, &self.domain) {
            (Geometry::Euclidean, Domain::Unconstrained) => {
                (z - w).norm_squared() / (2.0 * self.sigma)
            }
            _ => self.psi_star(z) - self.psi_star(w) - self.grad_psi_star(w).dot(&(z - w)),
        }
    }
}

/// Euclidean projection onto `{x ≥ 0, Σ xᵢ = 1}` by sort and threshold.
pub fn project_simplex(y: &Vector) -> Vector {
    let n = y.len();
    if n == 0 {
        return y.clone();
    }
    let mut u: Vec<f64> = y.iter().copied().collect();
    u.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        cumsum += uj;
        let t = (cumsum - 1.0) / (j + 1) as f64;
        if uj - t > 0.0 {
            theta = t;
        }
    }
    y.map(|v| (v - theta).max(0.0))
}
