//! First-order oracles and the benchmark instances.
//!
//! An [`Oracle`] answers value and gradient queries at a point. Instances
//! carry optional smoothness constants and, when known, a reference optimum
//! used by the exact-gap columns and by the oracle-optimum gap certificate.

use std::cell::{Cell, RefCell};
use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::mirror::project_simplex;

pub type Vector = DVector<f64>;

/// Regularity constants of an objective. Absent means unknown / not applicable.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Constants {
    /// Smoothness `L` (Lipschitz constant of the gradient, ℓ2).
    pub smoothness: Option<f64>,
    /// Hölder exponent `ν ∈ (0, 1]`.
    pub hoelder_exponent: Option<f64>,
    /// Hölder constant `L_ν`.
    pub hoelder_constant: Option<f64>,
    /// Lipschitz constant of the function itself.
    pub lipschitz: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Analytic,
    Numeric,
}

/// A known minimizer and minimum value.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub x: Vector,
    pub value: f64,
    pub provenance: Provenance,
}

pub trait Oracle {
    fn dim(&self) -> usize;

    fn value(&self, x: &Vector) -> f64;

    /// Gradient, or a fixed deterministic subgradient selection at kinks.
    fn gradient(&self, x: &Vector) -> Vector;

    fn constants(&self) -> Constants {
        Constants::default()
    }

    fn optimum(&self) -> Option<&Optimum> {
        None
    }

    /// `f(x) - f*` as plotted in the exact-gap column. Instances whose
    /// objective drifts along a flat direction override this.
    fn excess(&self, x: &Vector) -> Option<f64> {
        self.optimum().map(|opt| self.value(x) - opt.value)
    }
}

macro_rules! forward_oracle {
    ($ty:ty) => {
        impl<O: Oracle + ?Sized> Oracle for $ty {
            fn dim(&self) -> usize {
                (**self).dim()
            }
            fn value(&self, x: &Vector) -> f64 {
                (**self).value(x)
            }
            fn gradient(&self, x: &Vector) -> Vector {
                (**self).gradient(x)
            }
            fn constants(&self) -> Constants {
                (**self).constants()
            }
            fn optimum(&self) -> Option<&Optimum> {
                (**self).optimum()
            }
            fn excess(&self, x: &Vector) -> Option<f64> {
                (**self).excess(x)
            }
        }
    };
}

forward_oracle!(&O);
forward_oracle!(Box<O>);

fn check_dim<O: Oracle + ?Sized>(oracle: &O, x: &Vector) -> Result<()> {
    if x.len() != oracle.dim() {
        return Err(Error::usage(format!(
            "point has length {} but the oracle has dimension {}",
            x.len(),
            oracle.dim()
        )));
    }
    Ok(())
}

/// Checked value query.
pub fn eval_value<O: Oracle + ?Sized>(oracle: &O, x: &Vector) -> Result<f64> {
    check_dim(oracle, x)?;
    let v = oracle.value(x);
    if !v.is_finite() {
        return Err(Error::numeric(format!("objective value is {v}")));
    }
    Ok(v)
}

/// Checked gradient query.
pub fn eval_gradient<O: Oracle + ?Sized>(oracle: &O, x: &Vector) -> Result<Vector> {
    check_dim(oracle, x)?;
    let g = oracle.gradient(x);
    if g.len() != oracle.dim() {
        return Err(Error::usage(format!(
            "gradient has length {} but the oracle has dimension {}",
            g.len(),
            oracle.dim()
        )));
    }
    if g.iter().any(|v| !v.is_finite()) {
        return Err(Error::numeric("gradient has a non-finite entry"));
    }
    Ok(g)
}

type ValueFn = Box<dyn Fn(&Vector) -> f64 + Send + Sync>;
type GradientFn = Box<dyn Fn(&Vector) -> Vector + Send + Sync>;

/// An oracle assembled from closures.
pub struct FnOracle {
    dim: usize,
    value_fn: ValueFn,
    gradient_fn: GradientFn,
    constants: Constants,
    optimum: Option<Optimum>,
}

impl FnOracle {
    pub fn new(
        dim: usize,
        value_fn: impl Fn(&Vector) -> f64 + Send + Sync + 'static,
        gradient_fn: impl Fn(&Vector) -> Vector + Send + Sync + 'static,
    ) -> Self {
        FnOracle {
            dim,
            value_fn: Box::new(value_fn),
            gradient_fn: Box::new(gradient_fn),
            constants: Constants::default(),
            optimum: None,
        }
    }

    pub fn with_constants(mut self, constants: Constants) -> Self {
        self.constants = constants;
        self
    }

    pub fn with_optimum(mut self, optimum: Optimum) -> Self {
        self.optimum = Some(optimum);
        self
    }
}

impl fmt::Debug for FnOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnOracle")
            .field("dim", &self.dim)
            .field("constants", &self.constants)
            .finish_non_exhaustive()
    }
}

impl Oracle for FnOracle {
    fn dim(&self) -> usize {
        self.dim
    }
    fn value(&self, x: &Vector) -> f64 {
        (self.value_fn)(x)
    }
    fn gradient(&self, x: &Vector) -> Vector {
        (self.gradient_fn)(x)
    }
    fn constants(&self) -> Constants {
        self.constants
    }
    fn optimum(&self) -> Option<&Optimum> {
        self.optimum.as_ref()
    }
}

// ---------------------------------------------------------------------------
// Quadratics

/// `f(x) = ½⟨Ax, x⟩ − ⟨b, x⟩` with symmetric positive-semidefinite `A`.
#[derive(Debug, Clone)]
pub struct Quadratic {
    a: DMatrix<f64>,
    b: Vector,
    constants: Constants,
    optimum: Option<Optimum>,
    /// Unit vector spanning a flat direction removed before measuring the
    /// excess (drift mode of the singular cycle instance).
    drift_direction: Option<Vector>,
}

/// Build a quadratic oracle. `L` is set to `λ_max(A)`.
pub fn make_quadratic(a: DMatrix<f64>, b: Vector, optimum: Option<Optimum>) -> Result<Quadratic> {
    Quadratic::new(a, b, optimum)
}

impl Quadratic {
    pub fn new(a: DMatrix<f64>, b: Vector, optimum: Option<Optimum>) -> Result<Self> {
        let n = a.nrows();
        if n == 0 || a.ncols() != n {
            return Err(Error::usage(format!(
                "matrix must be square and non-empty, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if b.len() != n {
            return Err(Error::usage(format!(
                "vector b has length {} but the matrix is {n}x{n}",
                b.len()
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if a[(i, j)] != a[(j, i)] {
                    return Err(Error::usage(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        if a.iter().any(|v| !v.is_finite()) || b.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("quadratic data must be finite"));
        }
        let eig = SymmetricEigen::new(a.clone());
        let lmax = eig.eigenvalues.max();
        let lmin = eig.eigenvalues.min();
        if lmin < -1e-10 * lmax.abs().max(1.0) {
            return Err(Error::usage(format!(
                "matrix is not positive semidefinite (smallest eigenvalue {lmin:e})"
            )));
        }
        if let Some(opt) = &optimum {
            if opt.x.len() != n {
                return Err(Error::usage("reference optimum has the wrong dimension"));
            }
        }
        Ok(Quadratic {
            a,
            b,
            constants: Constants {
                smoothness: Some(lmax.max(0.0)),
                ..Constants::default()
            },
            optimum,
            drift_direction: None,
        })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn linear_term(&self) -> &Vector {
        &self.b
    }

    pub fn with_optimum(mut self, optimum: Optimum) -> Self {
        self.optimum = Some(optimum);
        self
    }

    /// Projection of `x` onto the complement of the drift direction.
    fn drift_free(&self, x: &Vector) -> Option<Vector> {
        self.drift_direction.as_ref().map(|u| x - u * u.dot(x))
    }
}

impl Oracle for Quadratic {
    fn dim(&self) -> usize {
        self.b.len()
    }

    fn value(&self, x: &Vector) -> f64 {
        0.5 * (&self.a * x).dot(x) - self.b.dot(x)
    }

    fn gradient(&self, x: &Vector) -> Vector {
        &self.a * x - &self.b
    }

    fn constants(&self) -> Constants {
        self.constants
    }

    fn optimum(&self) -> Option<&Optimum> {
        self.optimum.as_ref()
    }

    fn excess(&self, x: &Vector) -> Option<f64> {
        let opt = self.optimum.as_ref()?;
        match self.drift_free(x) {
            Some(p) => Some(self.value(&p) - opt.value),
            None => Some(self.value(x) - opt.value),
        }
    }
}

fn cycle_laplacian_entries(n: usize) -> Vec<i64> {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 2;
        let next = (i + 1) % n;
        m[i * n + next] = -1;
        m[next * n + i] = -1;
    }
    m
}

/// Laplacian of the `n`-cycle: 2 on the diagonal, −1 on the two off
/// diagonals and in the corners `(1, n)`, `(n, 1)`.
pub fn make_cycle_laplacian(n: usize) -> Result<DMatrix<f64>> {
    if n < 3 {
        return Err(Error::usage(format!(
            "cycle Laplacian needs n >= 3, got {n}"
        )));
    }
    let entries = cycle_laplacian_entries(n);
    Ok(DMatrix::from_fn(n, n, |i, j| entries[i * n + j] as f64))
}

/// How the cycle-Laplacian instance with `b = e₁` is posed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CycleVariant {
    /// Unconstrained and unbounded below along the all-ones direction. The
    /// reference optimum is the min-norm minimizer over `range(A)`; the
    /// excess is measured after removing the all-ones component.
    Drift,
    /// Unconstrained with `A + μI`, bounded below.
    Regularized { mu: f64 },
    /// Minimized over the unit simplex.
    Simplex,
}

pub const DEFAULT_REGULARIZATION: f64 = 1e-6;

/// The cycle-Laplacian quadratic with `b = e₁` and its reference optimum.
pub fn cycle_quadratic(n: usize, variant: CycleVariant) -> Result<Quadratic> {
    let lap = make_cycle_laplacian(n)?;
    let mut b = Vector::zeros(n);
    b[0] = 1.0;
    match variant {
        CycleVariant::Drift => {
            let ones = Vector::from_element(n, 1.0 / (n as f64).sqrt());
            let eig = SymmetricEigen::new(lap.clone());
            let cutoff = 1e-9 * eig.eigenvalues.max();
            let mut x = Vector::zeros(n);
            for (k, &lam) in eig.eigenvalues.iter().enumerate() {
                if lam > cutoff {
                    let v = eig.eigenvectors.column(k);
                    x += v * (v.dot(&b) / lam);
                }
            }
            let mut q = Quadratic::new(lap, b, None)?;
            // Over range(A) the linear term is the projection of b.
            let b_range = &q.b - &ones * ones.dot(&q.b);
            let value = 0.5 * (&q.a * &x).dot(&x) - b_range.dot(&x);
            q.optimum = Some(Optimum {
                x,
                value,
                provenance: Provenance::Numeric,
            });
            q.drift_direction = Some(ones);
            Ok(q)
        }
        CycleVariant::Regularized { mu } => {
            if !(mu > 0.0) {
                return Err(Error::usage(format!(
                    "regularization must be positive, got {mu}"
                )));
            }
            let a = lap + DMatrix::identity(n, n) * mu;
            let x = a
                .clone()
                .cholesky()
                .ok_or_else(|| Error::numeric("regularized Laplacian is not positive definite"))?
                .solve(&b);
            let value = -0.5 * b.dot(&x);
            Quadratic::new(
                a,
                b,
                Some(Optimum {
                    x,
                    value,
                    provenance: Provenance::Numeric,
                }),
            )
        }
        CycleVariant::Simplex => {
            let q = Quadratic::new(lap, b, None)?;
            let x = simplex_qp_minimizer(&q.a, &q.b)?;
            let value = q.value(&x);
            Ok(q.with_optimum(Optimum {
                x,
                value,
                provenance: Provenance::Numeric,
            }))
        }
    }
}

/// Minimize `½⟨Ax, x⟩ − ⟨b, x⟩` over the unit simplex.
///
/// Accelerated projected gradient identifies the support; a primal-dual
/// active-set loop then solves the KKT system on the support exactly.
pub fn simplex_qp_minimizer(a: &DMatrix<f64>, b: &Vector) -> Result<Vector> {
    let n = b.len();
    let lmax = SymmetricEigen::new(a.clone()).eigenvalues.max().max(1e-12);
    let mut x = Vector::from_element(n, 1.0 / n as f64);
    let mut y = x.clone();
    let mut t = 1.0_f64;
    for _ in 0..5000 {
        let g = a * &y - b;
        let next = project_simplex(&(&y - g / lmax));
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        y = &next + (&next - &x) * ((t - 1.0) / t_next);
        x = next;
        t = t_next;
    }

    let mut support: Vec<usize> = (0..n).filter(|&i| x[i] > 1e-10).collect();
    if support.is_empty() {
        support.push(x.imax());
    }
    for _ in 0..4 * n {
        let m = support.len();
        // [A_SS  -1] [x_S]   [b_S]
        // [1ᵀ     0] [λ  ] = [1  ]
        let mut kkt = DMatrix::zeros(m + 1, m + 1);
        let mut rhs = Vector::zeros(m + 1);
        for (r, &i) in support.iter().enumerate() {
            for (c, &j) in support.iter().enumerate() {
                kkt[(r, c)] = a[(i, j)];
            }
            kkt[(r, m)] = -1.0;
            kkt[(m, r)] = 1.0;
            rhs[r] = b[i];
        }
        rhs[m] = 1.0;
        let sol = kkt
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::numeric("singular KKT system in simplex QP"))?;
        let lambda = sol[m];

        let (neg_pos, neg_val) =
            (0..m).map(|r| (r, sol[r])).fold(
                (0, f64::INFINITY),
                |acc, v| if v.1 < acc.1 { v } else { acc },
            );
        if neg_val < -1e-14 {
            support.remove(neg_pos);
            continue;
        }

        let mut candidate = Vector::zeros(n);
        for (r, &i) in support.iter().enumerate() {
            candidate[i] = sol[r].max(0.0);
        }
        let mult = a * &candidate - b - Vector::from_element(n, lambda);
        let worst = (0..n)
            .filter(|i| !support.contains(i))
            .map(|i| (i, mult[i]))
            .fold(None, |acc: Option<(usize, f64)>, v| match acc {
                Some(a) if a.1 <= v.1 => Some(a),
                _ => Some(v),
            });
        match worst {
            Some((i, val)) if val < -1e-13 => {
                support.push(i);
                support.sort_unstable();
            }
            _ => {
                let s = candidate.sum();
                return Ok(candidate / s);
            }
        }
    }
    Err(Error::numeric(
        "simplex QP active-set loop did not terminate",
    ))
}

// ---------------------------------------------------------------------------
// Norm distance

/// `f(x) = L·‖x − c‖₂`.
#[derive(Debug, Clone)]
pub struct NormDistance {
    center: Vector,
    lipschitz: f64,
    optimum: Optimum,
}

pub fn make_lipschitz_norm(center: Vector, lipschitz: f64) -> Result<NormDistance> {
    if !(lipschitz > 0.0) || !lipschitz.is_finite() {
        return Err(Error::usage(format!(
            "Lipschitz constant must be positive, got {lipschitz}"
        )));
    }
    if center.is_empty() {
        return Err(Error::usage("center must be non-empty"));
    }
    Ok(NormDistance {
        optimum: Optimum {
            x: center.clone(),
            value: 0.0,
            provenance: Provenance::Analytic,
        },
        center,
        lipschitz,
    })
}

impl NormDistance {
    pub fn center(&self) -> &Vector {
        &self.center
    }
}

impl Oracle for NormDistance {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn value(&self, x: &Vector) -> f64 {
        self.lipschitz * (x - &self.center).norm()
    }

    fn gradient(&self, x: &Vector) -> Vector {
        let d = x - &self.center;
        let r = d.norm();
        if r == 0.0 {
            Vector::zeros(x.len())
        } else {
            d * (self.lipschitz / r)
        }
    }

    fn constants(&self) -> Constants {
        Constants {
            lipschitz: Some(self.lipschitz),
            ..Constants::default()
        }
    }

    fn optimum(&self) -> Option<&Optimum> {
        Some(&self.optimum)
    }
}

// ---------------------------------------------------------------------------
// Radial power

/// `f(x) = ‖x‖₂^{1+ν} / (1+ν)`, whose gradient `‖x‖^{ν−1}x` is ν-Hölder.
#[derive(Debug, Clone)]
pub struct RadialPower {
    nu: f64,
    dim: usize,
    hoelder_constant: f64,
    optimum: Optimum,
}

/// Safety factor applied on top of the sampled Hölder constant.
pub const HOELDER_SAFETY: f64 = 1.05;

pub fn make_holder_power(nu: f64, dim: usize) -> Result<RadialPower> {
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(Error::usage(format!(
            "Hölder exponent must lie in (0, 1], got {nu}"
        )));
    }
    if dim == 0 {
        return Err(Error::usage("dimension must be positive"));
    }
    Ok(RadialPower {
        nu,
        dim,
        hoelder_constant: HOELDER_SAFETY * sampled_hoelder_constant(nu, dim),
        optimum: Optimum {
            x: Vector::zeros(dim),
            value: 0.0,
            provenance: Provenance::Analytic,
        },
    })
}

fn radial_gradient(nu: f64, x: &Vector) -> Vector {
    let r = x.norm();
    if r == 0.0 {
        Vector::zeros(x.len())
    } else {
        x * r.powf(nu - 1.0)
    }
}

/// Largest observed `‖∇f(x) − ∇f(y)‖ / ‖x − y‖^ν` over a dense grid of
/// collinear pairs in `[−10, 10]` and random pairs in `dim` dimensions.
fn sampled_hoelder_constant(nu: f64, dim: usize) -> f64 {
    let grad_1d = |t: f64| t.signum() * t.abs().powf(nu);
    let grid: Vec<f64> = (0..=400).map(|i| -10.0 + 0.05 * i as f64).collect();
    let mut best = 0.0_f64;
    for (i, &s) in grid.iter().enumerate() {
        for &t in &grid[i + 1..] {
            let ratio = (grad_1d(s) - grad_1d(t)).abs() / (s - t).abs().powf(nu);
            best = best.max(ratio);
        }
    }
    if dim > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_4011);
        let normal = Normal::new(0.0, 1.0).expect("unit normal");
        for _ in 0..2000 {
            let x = Vector::from_fn(dim, |_, _| normal.sample(&mut rng));
            let y = Vector::from_fn(dim, |_, _| normal.sample(&mut rng));
            let num = (radial_gradient(nu, &x) - radial_gradient(nu, &y)).norm();
            let den = (&x - &y).norm().powf(nu);
            if den > 0.0 {
                best = best.max(num / den);
            }
        }
    }
    best
}

impl RadialPower {
    pub fn exponent(&self) -> f64 {
        self.nu
    }
}

impl Oracle for RadialPower {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &Vector) -> f64 {
        x.norm().powf(1.0 + self.nu) / (1.0 + self.nu)
    }

    fn gradient(&self, x: &Vector) -> Vector {
        radial_gradient(self.nu, x)
    }

    fn constants(&self) -> Constants {
        Constants {
            smoothness: (self.nu == 1.0).then_some(self.hoelder_constant),
            hoelder_exponent: Some(self.nu),
            hoelder_constant: Some(self.hoelder_constant),
            lipschitz: None,
        }
    }

    fn optimum(&self) -> Option<&Optimum> {
        Some(&self.optimum)
    }
}

// ---------------------------------------------------------------------------
// Noise

/// Additive Gaussian gradient noise `N(0, ε_η·I)` from a seeded stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub epsilon_eta: f64,
    pub seed: u64,
}

/// Gradient queries are perturbed; value queries are not.
///
/// The generator lives behind a `RefCell`, so a `Noisy` oracle is `Send` but
/// not `Sync`: one logical thread at a time.
pub struct Noisy<O> {
    inner: O,
    spec: NoiseSpec,
    normal: Option<Normal<f64>>,
    rng: RefCell<ChaCha8Rng>,
}

pub fn wrap_noisy<O: Oracle>(oracle: O, spec: NoiseSpec) -> Result<Noisy<O>> {
    Noisy::new(oracle, spec)
}

impl<O: Oracle> Noisy<O> {
    pub fn new(inner: O, spec: NoiseSpec) -> Result<Self> {
        if !(spec.epsilon_eta >= 0.0) || !spec.epsilon_eta.is_finite() {
            return Err(Error::usage(format!(
                "noise scale must be a nonnegative finite number, got {}",
                spec.epsilon_eta
            )));
        }
        let normal = if spec.epsilon_eta > 0.0 {
            Some(Normal::new(0.0, spec.epsilon_eta.sqrt()).expect("valid std dev"))
        } else {
            None
        };
        Ok(Noisy {
            inner,
            spec,
            normal,
            rng: RefCell::new(ChaCha8Rng::seed_from_u64(spec.seed)),
        })
    }

    pub fn spec(&self) -> NoiseSpec {
        self.spec
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

impl<O: Oracle> Oracle for Noisy<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn value(&self, x: &Vector) -> f64 {
        self.inner.value(x)
    }

    fn gradient(&self, x: &Vector) -> Vector {
        let mut g = self.inner.gradient(x);
        if let Some(normal) = &self.normal {
            let mut rng = self.rng.borrow_mut();
            for v in g.iter_mut() {
                *v += normal.sample(&mut *rng);
            }
        }
        g
    }

    fn constants(&self) -> Constants {
        self.inner.constants()
    }

    fn optimum(&self) -> Option<&Optimum> {
        self.inner.optimum()
    }

    fn excess(&self, x: &Vector) -> Option<f64> {
        self.inner.excess(x)
    }
}

/// Counts gradient queries passing through it.
pub struct Counting<O> {
    inner: O,
    gradient_calls: Cell<usize>,
}

impl<O: Oracle> Counting<O> {
    pub fn new(inner: O) -> Self {
        Counting {
            inner,
            gradient_calls: Cell::new(0),
        }
    }

    pub fn gradient_calls(&self) -> usize {
        self.gradient_calls.get()
    }
}

impl<O: Oracle> Oracle for Counting<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn value(&self, x: &Vector) -> f64 {
        self.inner.value(x)
    }
    fn gradient(&self, x: &Vector) -> Vector {
        self.gradient_calls.set(self.gradient_calls.get() + 1);
        self.inner.gradient(x)
    }
    fn constants(&self) -> Constants {
        self.inner.constants()
    }
    fn optimum(&self) -> Option<&Optimum> {
        self.inner.optimum()
    }
    fn excess(&self, x: &Vector) -> Option<f64> {
        self.inner.excess(x)
    }
}

/// Largest coordinate-wise mismatch between central differences and the
/// reported gradient, each scaled by `max(1, |∂ᵢf|)`.
pub fn finite_diff_check<O: Oracle + ?Sized>(oracle: &O, x: &Vector, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::usage(format!("step must be positive, got {h}")));
    }
    let g = eval_gradient(oracle, x)?;
    let mut worst = 0.0_f64;
    let mut probe = x.clone();
    for i in 0..x.len() {
        probe[i] = x[i] + h;
        let up = oracle.value(&probe);
        probe[i] = x[i] - h;
        let down = oracle.value(&probe);
        probe[i] = x[i];
        let fd = (up - down) / (2.0 * h);
        worst = worst.max((fd - g[i]).abs() / g[i].abs().max(1.0));
    }
    Ok(worst)
}
