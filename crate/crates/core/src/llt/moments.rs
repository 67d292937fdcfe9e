use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::measure::{rational_to_f64, Distribution};

/// Exact mean vector and covariance matrix of a distribution on `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentData {
    pub dim: usize,
    pub mean: Vec<BigRational>,
    pub covariance: Vec<Vec<BigRational>>,
}

impl MomentData {
    /// Positive definiteness by Sylvester's criterion on exact leading minors.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.dim).all(|k| {
            let block: Vec<Vec<BigRational>> = self.covariance[..k]
                .iter()
                .map(|r| r[..k].to_vec())
                .collect();
            rational_det_inverse(&block).0.is_positive()
        })
    }

    pub fn mean_is_zero(&self) -> bool {
        self.mean.iter().all(Zero::is_zero)
    }

    pub fn mean_f64(&self) -> Vec<f64> {
        self.mean.iter().map(rational_to_f64).collect()
    }
}

/// `μ_k = Σ b_k q(b)` and `Γ_kl = Σ b_k b_l q(b) − μ_k μ_l`.
pub fn mean_cov(q: &Distribution) -> Result<MomentData> {
    let g = q.group();
    if !g.is_free() || g.free_rank() == 0 {
        return invalid(format!("moments need a distribution on Z^d with d >= 1, got {g}"));
    }
    let d = g.free_rank();
    let mut mean = vec![BigRational::zero(); d];
    let mut second = vec![vec![BigRational::zero(); d]; d];
    for (b, w) in q.iter() {
        let b: Vec<BigInt> = b.free().iter().map(|&v| BigInt::from(v)).collect();
        for k in 0..d {
            mean[k] += w * &b[k];
            for l in 0..d {
                second[k][l] += w * (&b[k] * &b[l]);
            }
        }
    }
    let covariance = (0..d)
        .map(|k| (0..d).map(|l| &second[k][l] - &mean[k] * &mean[l]).collect())
        .collect();
    Ok(MomentData {
        dim: d,
        mean,
        covariance,
    })
}

/// Determinant and (when it is nonzero) inverse by Gauss-Jordan over `Q`.
pub(crate) fn rational_det_inverse(
    m: &[Vec<BigRational>],
) -> (BigRational, Option<Vec<Vec<BigRational>>>) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return (BigRational::zero(), None);
        };
        if piv != col {
            a.swap(piv, col);
            inv.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                a[r][j] -= x;
                inv[r][j] -= y;
            }
        }
    }
    (det, Some(inv))
}

/// The heat kernel `K^t(y) = (2πt)^{-d/2} det(Γ)^{-1/2} exp(−y·Γ⁻¹y / 2t)`,
/// with `Γ⁻¹` and `det Γ` computed exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianKernel {
    dim: usize,
    inverse: Vec<Vec<f64>>,
    det: f64,
}

impl GaussianKernel {
    pub fn new(moments: &MomentData) -> Result<Self> {
        let (det, inv) = rational_det_inverse(&moments.covariance);
        let inv = match inv {
            Some(inv) if det.is_positive() => inv,
            _ => {
                return Err(Error::InvalidArgument(
                    "covariance is singular or not positive definite".into(),
                ))
            }
        };
        Ok(GaussianKernel {
            dim: moments.dim,
            inverse: inv
                .iter()
                .map(|r| r.iter().map(rational_to_f64).collect())
                .collect(),
            det: rational_to_f64(&det),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `y · Γ⁻¹ y`.
    pub fn quadratic_form(&self, y: &[f64]) -> f64 {
        self.inverse
            .iter()
            .zip(y)
            .map(|(row, yi)| yi * row.iter().zip(y).map(|(a, yj)| a * yj).sum::<f64>())
            .sum()
    }

    pub fn eval(&self, t: f64, y: &[f64]) -> f64 {
        let norm = (std::f64::consts::TAU * t).powf(self.dim as f64 / 2.0) * self.det.sqrt();
        (-self.quadratic_form(y) / (2.0 * t)).exp() / norm
    }
}

pub fn gaussian_kernel(moments: &MomentData, t: f64, y: &[f64]) -> Result<f64> {
    if t <= 0.0 || y.len() != moments.dim {
        return invalid(format!("kernel needs t > 0 and a point of length {}", moments.dim));
    }
    Ok(GaussianKernel::new(moments)?.eval(t, y))
}
