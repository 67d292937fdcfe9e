//! Local limit theorem: the attractor `Θ_p(n,x)/|Tor G| · K^n(φ(x) − nμ)`,
//! its error against exact convolution powers, time averages, total
//! variation bounds, and a period/irreducibility classifier.

mod classify;
mod moments;
mod report;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::dance::{analyze_dance, DanceData};
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Homomorphism};
use crate::intlinalg::{affine_dim, twist_to_coordinates, AffinePointSet, IntMatrix, Twist};
use crate::measure::{pushforward, Distribution};

pub use classify::{classify, Classification, Period, Verdict};
pub use moments::{gaussian_kernel, mean_cov, GaussianKernel, MomentData};
pub use report::{
    attractor_mass, llt_sup_error, sup_error_of_power, time_average_error, tv_to_uniform_coset,
    LltReport,
};

/// Width of the Gaussian window, in standard deviations.
pub const WINDOW_SIGMAS: f64 = 8.0;

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum AttractorCase {
    /// `rank(G_p) = 0`: the attractor is `Θ_p / |Tor G|`.
    D0,
    /// `rank(G_p) = d ≥ 1`.
    Diffusive {
        phi: Homomorphism,
        moments: MomentData,
        kernel: GaussianKernel,
        twist: Twist,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Attractor {
    pub dance: DanceData,
    pub case: AttractorCase,
    pub torsion_order: BigInt,
}

pub fn build_attractor(p: &Distribution) -> Result<Attractor> {
    let dance = analyze_dance(p)?;
    let g = p.group().clone();
    let torsion_order = g.torsion_order();
    if dance.rank_d == 0 {
        return Ok(Attractor {
            dance,
            case: AttractorCase::D0,
            torsion_order,
        });
    }

    let d = dance.rank_d;
    let free_points: Vec<Vec<BigInt>> = p
        .support()
        .map(|x| x.free().iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let s = AffinePointSet::new(g.free_rank(), free_points)?;
    let twist = twist_to_coordinates(&s)?;
    if twist.dim != d {
        return Err(Error::InvariantViolation(format!(
            "support has affine dimension {} but the walk subgroup has rank {d}",
            twist.dim
        )));
    }

    let t = g.torsion_len();
    let phi_rows = (0..d).map(|r| {
        (0..g.dim())
            .map(|c| {
                if c < t {
                    BigInt::zero()
                } else {
                    twist.phi.matrix()[(r, c - t)].clone()
                }
            })
            .collect::<Vec<_>>()
    });
    let phi = Homomorphism::new(
        g.clone(),
        GroupSpec::free(d),
        IntMatrix::from_rows(g.dim(), phi_rows)?,
    )?;
    if !phi.is_surjective()? {
        return Err(Error::InvariantViolation("φ is not surjective".into()));
    }

    let q = pushforward(p, &phi)?;
    let q_points = q
        .support()
        .map(|b| b.free().iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    if affine_dim(&AffinePointSet::new(d, q_points)?)? != d {
        return Err(Error::InvariantViolation(
            "pushforward under φ is not genuinely d-dimensional".into(),
        ));
    }
    let moments = mean_cov(&q)?;
    if !moments.is_positive_definite() {
        return Err(Error::InvariantViolation(
            "covariance of the pushforward is not positive definite".into(),
        ));
    }
    let kernel = GaussianKernel::new(&moments)?;
    Ok(Attractor {
        dance,
        case: AttractorCase::Diffusive {
            phi,
            moments,
            kernel,
            twist,
        },
        torsion_order,
    })
}

impl Attractor {
    pub fn group(&self) -> &GroupSpec {
        self.dance.group()
    }

    pub fn dim(&self) -> usize {
        self.dance.rank_d
    }

    pub fn moments(&self) -> Option<&MomentData> {
        match &self.case {
            AttractorCase::D0 => None,
            AttractorCase::Diffusive { moments, .. } => Some(moments),
        }
    }

    pub fn phi(&self) -> Option<&Homomorphism> {
        match &self.case {
            AttractorCase::D0 => None,
            AttractorCase::Diffusive { phi, .. } => Some(phi),
        }
    }

    fn weight(&self) -> f64 {
        (BigRational::new(self.dance.normalization_c.clone(), self.torsion_order.clone()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// The attractor at step `n` and point `x`.
    pub fn eval(&self, n: u64, x: &Element) -> Result<f64> {
        if !self.dance.on_live_coset(n, x)? {
            return Ok(0.0);
        }
        match &self.case {
            AttractorCase::D0 => Ok(self.weight()),
            AttractorCase::Diffusive {
                phi,
                moments,
                kernel,
                ..
            } => {
                let y = centered(phi, moments, n, x)?;
                Ok(self.weight() * kernel.eval(n as f64, &y))
            }
        }
    }

    /// Exact value in the rank-zero case.
    pub fn eval_exact(&self, n: u64, x: &Element) -> Result<Option<BigRational>> {
        match self.case {
            AttractorCase::D0 => Ok(Some(BigRational::new(
                self.dance.theta(n, x)?,
                self.torsion_order.clone(),
            ))),
            AttractorCase::Diffusive { .. } => Ok(None),
        }
    }

    /// Points of the live coset `G_p + n x0` where the attractor is not
    /// negligible: the whole coset when it is finite, otherwise the points
    /// whose Gaussian argument lies within [`WINDOW_SIGMAS`] standard deviations.
    pub fn window(&self, n: u64) -> Result<Vec<Element>> {
        let g = self.group();
        let ni = i64::try_from(n).map_err(|_| Error::InvalidArgument(format!("step {n} too large")))?;
        match &self.case {
            AttractorCase::D0 => {
                let shift = g.scale(ni, &self.dance.base_point)?;
                self.dance
                    .walk_subgroup
                    .elements()?
                    .iter()
                    .map(|h| g.add(h, &shift))
                    .collect()
            }
            AttractorCase::Diffusive {
                moments,
                kernel,
                twist,
                ..
            } => {
                let trailing: Vec<BigInt> =
                    twist.offset.iter().map(|w| w * BigInt::from(n)).collect();
                let untwist = twist.phi.inverse();
                let pts = gaussian_box(moments, n, |b| {
                    let mut v: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
                    v.extend(trailing.iter().cloned());
                    untwist.apply(&v)
                })?;
                let mut out = Vec::new();
                let mean = moments.mean_f64();
                for (b, free) in pts {
                    let y: Vec<f64> = b
                        .iter()
                        .zip(&mean)
                        .map(|(&bi, m)| bi as f64 - n as f64 * m)
                        .collect();
                    if kernel.quadratic_form(&y) / n as f64 > WINDOW_SIGMAS * WINDOW_SIGMAS {
                        continue;
                    }
                    let free = to_i64(&free)?;
                    for a in g.torsion_elements() {
                        let x = g.element(a.torsion(), &free)?;
                        if self.dance.on_live_coset(n, &x)? {
                            out.push(x);
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}

/// `φ(x) − nμ` as floats.
fn centered(phi: &Homomorphism, moments: &MomentData, n: u64, x: &Element) -> Result<Vec<f64>> {
    let b = phi.apply(x)?;
    Ok(b.free()
        .iter()
        .zip(&moments.mean)
        .map(|(&bi, m)| {
            (BigRational::from_integer(BigInt::from(bi)) - m * BigInt::from(n))
                .to_f64()
                .unwrap_or(f64::NAN)
        })
        .collect())
}

pub(super) fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            i64::try_from(x).map_err(|_| Error::Unsupported(format!("coordinate {x} exceeds i64")))
        })
        .collect()
}

/// Integer points `b` of the box `|b_i − nμ_i| ≤ 8 √(n Γ_ii)`, paired with `lift(b)`.
pub(super) fn gaussian_box<F>(moments: &MomentData, n: u64, lift: F) -> Result<Vec<(Vec<i64>, Vec<BigInt>)>>
where
    F: Fn(&[i64]) -> Vec<BigInt>,
{
    let nf = n as f64;
    let ranges: Vec<(i64, i64)> = (0..moments.dim)
        .map(|i| {
            let c = nf * moments.mean[i].to_f64().unwrap_or(0.0);
            let h = WINDOW_SIGMAS * (nf * moments.covariance[i][i].to_f64().unwrap_or(0.0)).sqrt();
            ((c - h).floor() as i64, (c + h).ceil() as i64)
        })
        .collect();
    let mut out = Vec::new();
    let mut b: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.push((b.clone(), lift(&b)));
        let mut i = 0;
        loop {
            if i == b.len() {
                return Ok(out);
            }
            if b[i] < ranges[i].1 {
                b[i] += 1;
                break;
            }
            b[i] = ranges[i].0;
            i += 1;
        }
    }
}
