//! Quantum side of the inequality: expectation values of the functional and
//! the operator identity `Σ_i w_i Π_i = N·I` behind its state independence.

use nalgebra::{Complex, DMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Inequality, WeightVector};
use crate::algebra::{QuadScalar, Ray};
use crate::error::{Error, Result};
use crate::rayset::ProblemInstance;

type C64 = Complex<f64>;

/// Tolerance for hermiticity, trace and positivity of explicit states.
pub const STATE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    MaximallyMixed,
    /// Pure state from normalized complex Gaussian amplitudes, seeded.
    RandomPure(u64),
    /// A `d×d` density matrix.
    Explicit(DMatrix<C64>),
}

impl StateSpec {
    /// The density matrix in dimension `d`, validated.
    pub fn density_matrix(&self, d: usize) -> Result<DMatrix<C64>> {
        match self {
            StateSpec::MaximallyMixed => Ok(DMatrix::identity(d, d) / C64::from(d as f64)),
            StateSpec::RandomPure(seed) => {
                let psi = random_pure_state(d, *seed);
                Ok(&psi * psi.adjoint())
            }
            StateSpec::Explicit(rho) => {
                validate_density_matrix(rho, d)?;
                Ok(rho.clone())
            }
        }
    }
}

/// Normalized vector of independent standard Gaussians (real and imaginary
/// parts), drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_pure_state(d: usize, seed: u64) -> DMatrix<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi = DMatrix::from_fn(d, 1, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        C64::new(re, im)
    });
    let norm = psi.norm();
    psi /= C64::from(norm);
    psi
}

pub fn validate_density_matrix(rho: &DMatrix<C64>, d: usize) -> Result<()> {
    if rho.nrows() != d || rho.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho.nrows().max(rho.ncols()),
        });
    }
    if (rho - rho.adjoint()).iter().any(|z| z.norm() > STATE_TOLERANCE) {
        return Err(Error::InvalidState("not Hermitian".into()));
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > STATE_TOLERANCE || trace.im.abs() > STATE_TOLERANCE {
        return Err(Error::InvalidState(format!("trace {trace} is not 1")));
    }
    let hermitian = (rho + rho.adjoint()) / C64::from(2.0);
    let min = hermitian
        .symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    if min < -STATE_TOLERANCE {
        return Err(Error::InvalidState(format!("negative eigenvalue {min}")));
    }
    Ok(())
}

fn sandwich(a: &[f64], rho: &DMatrix<C64>, b: &[f64]) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for (k, &ak) in a.iter().enumerate() {
        for (l, &bl) in b.iter().enumerate() {
            acc += rho[(k, l)] * (ak * bl);
        }
    }
    acc.re
}

/// `W = Σ_i w_i Tr(ρΠ_i) − Σ_(i,j) w_ij Tr(ρΠ_iΠ_j)` in floating point.
pub fn quantum_value(inst: &ProblemInstance, ineq: &Inequality, state: &StateSpec) -> Result<f64> {
    let rs = inst.rayset().ok_or(Error::MissingRays)?;
    let n = inst.vertex_count();
    if ineq.vertex_weights().len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: ineq.vertex_weights().len(),
        });
    }
    let rho = state.density_matrix(rs.dimension())?;
    let rays: Vec<Vec<f64>> = rs.rays().iter().map(Ray::to_f64).collect();
    let norms: Vec<f64> = rays.iter().map(|u| u.iter().map(|x| x * x).sum()).collect();

    let mut value = 0.0;
    for (i, &w) in ineq.vertex_weights().iter().enumerate() {
        value += w as f64 * sandwich(&rays[i], &rho, &rays[i]) / norms[i];
    }
    for term in ineq.edge_terms() {
        let (i, j) = (term.i, term.j);
        let overlap: f64 = rays[i].iter().zip(&rays[j]).map(|(a, b)| a * b).sum();
        // Tr(ρ |u_i><u_i|u_j><u_j|) / (|u_i|² |u_j|²)
        let joint = overlap * sandwich(&rays[j], &rho, &rays[i]) / (norms[i] * norms[j]);
        value -= term.weight as f64 * joint;
    }
    Ok(value)
}

/// An element of ℚ(√m): `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct QuadFraction {
    num: QuadScalar,
    den: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl QuadFraction {
    fn reduce(num: QuadScalar, den: i64) -> Self {
        let g = gcd(gcd(num.rat(), num.irr()), den);
        let g = if g == 0 { 1 } else { g };
        let g = if den < 0 { -g } else { g };
        QuadFraction {
            num: QuadScalar::new(num.rat() / g, num.irr() / g, num.discriminant())
                .expect("discriminant already validated"),
            den: den / g,
        }
    }

    fn add(&self, other: &Self) -> Result<Self> {
        let num = self
            .num
            .scale(other.den)?
            .add(&other.num.scale(self.den)?)?;
        let den = self.den.checked_mul(other.den).ok_or(Error::Overflow)?;
        Ok(Self::reduce(num, den))
    }

    fn equals_integer(&self, k: i64) -> Result<bool> {
        Ok(self.num.irr() == 0 && self.num.rat() == k.checked_mul(self.den).ok_or(Error::Overflow)?)
    }
}

/// Exact `Σ_i w_i |u_i><u_i| / <u_i|u_i>` compared against `N·I`.
fn exact_operator_sum(rays: &[Ray], weights: &[u64], n_bases: i64) -> Result<bool> {
    let d = rays[0].dimension();
    let disc = rays[0].discriminant().unwrap_or(1);
    let zero = QuadFraction {
        num: QuadScalar::zero(disc)?,
        den: 1,
    };
    let mut sum = vec![zero; d * d];
    for (ray, &w) in rays.iter().zip(weights) {
        if w == 0 {
            continue;
        }
        let c = ray.exact_coords().ok_or(Error::ModeMismatch)?;
        let mut norm2 = QuadScalar::zero(disc)?;
        for x in c {
            norm2 = norm2.add(&x.mul(x)?)?;
        }
        // 1/(p + q√m) = (p − q√m)/(p² − m q²)
        let inv_num = norm2.conjugate()?;
        let inv_den = norm2.norm()?;
        let w = i64::try_from(w).map_err(|_| Error::Overflow)?;
        for a in 0..d {
            for b in 0..d {
                let num = c[a].mul(&c[b])?.mul(&inv_num)?.scale(w)?;
                sum[a * d + b] = sum[a * d + b].add(&QuadFraction::reduce(num, inv_den))?;
            }
        }
    }
    for a in 0..d {
        for b in 0..d {
            let target = if a == b { n_bases } else { 0 };
            if !sum[a * d + b].equals_integer(target)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn numeric_operator_sum(rays: &[Ray], weights: &[u64], n_bases: f64, tol: f64) -> bool {
    let d = rays[0].dimension();
    let mut sum = DMatrix::<f64>::zeros(d, d);
    for (ray, &w) in rays.iter().zip(weights) {
        let u = ray.to_f64();
        let norm2: f64 = u.iter().map(|x| x * x).sum();
        for a in 0..d {
            for b in 0..d {
                sum[(a, b)] += w as f64 * u[a] * u[b] / norm2;
            }
        }
    }
    let target = DMatrix::<f64>::identity(d, d) * n_bases;
    (sum - target).iter().all(|x| x.abs() <= tol * n_bases.max(1.0))
}

/// Checks `Σ_i w_i Π_i = N·I`. Exact rays are summed exactly in ℚ(√m);
/// if that overflows, and for numeric rays, the sum is formed in floating
/// point and compared to 1e-12 (or the set's tolerance, if larger).
pub fn operator_sum_check(inst: &ProblemInstance, weights: &WeightVector) -> Result<bool> {
    let rs = inst.rayset().ok_or(Error::MissingRays)?;
    if weights.len() != inst.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: inst.vertex_count(),
            found: weights.len(),
        });
    }
    let n_bases = inst.basis_count();
    if rs.mode().is_exact() {
        match exact_operator_sum(rs.rays(), weights.as_slice(), n_bases as i64) {
            Err(Error::Overflow) => {}
            other => return other,
        }
    }
    let tol = match rs.mode() {
        crate::algebra::ScalarMode::Numeric { tolerance } => tolerance.max(1e-12),
        crate::algebra::ScalarMode::Exact { .. } => 1e-12,
    };
    Ok(numeric_operator_sum(
        rs.rays(),
        weights.as_slice(),
        n_bases as f64,
        tol,
    ))
}
