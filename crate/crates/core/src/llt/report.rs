use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{classify, gaussian_box, to_i64, Attractor, AttractorCase, Period, Verdict};
use crate::dance::{analyze_dance, spectral_gap};
use crate::error::{Error, Result};
use crate::group::{Element, Index};
use crate::measure::{convolution_power, convolve, rational_to_f64, Distribution};

/// Relative slack added to a computed `ρ` before it is raised to a power, so
/// that the bound dominates the exact spectral radius despite rounding in `ρ`.
const RHO_SLACK: f64 = 1e-12;

/// Error of the attractor against the exact `p^(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LltReport {
    pub n: u64,
    pub sup_error: f64,
    /// `n^{d/2} · sup_error`.
    pub scaled_sup_error: f64,
    /// Exact sup error when the attractor is exact (`d = 0`).
    pub sup_error_exact: Option<BigRational>,
    pub tv_exact: Option<BigRational>,
    pub tv_bound: Option<f64>,
}

pub fn llt_sup_error(p: &Distribution, a: &Attractor, n: u64) -> Result<LltReport> {
    sup_error_of_power(a, &convolution_power(p, n), n)
}

/// As [`llt_sup_error`] for an already computed `pn = p^(n)`.
pub fn sup_error_of_power(a: &Attractor, pn: &Distribution, n: u64) -> Result<LltReport> {
    let mut points: BTreeSet<Element> = a.window(n)?.into_iter().collect();
    points.extend(pn.support().cloned());
    let points: Vec<Element> = points.into_iter().collect();

    let (sup_error, sup_error_exact) = match a.case {
        AttractorCase::D0 => {
            let mut best = BigRational::zero();
            for x in &points {
                let target = a.eval_exact(n, x)?.expect("rank-zero attractor is exact");
                let e = (pn.get(x) - target).abs();
                if e > best {
                    best = e;
                }
            }
            (rational_to_f64(&best), Some(best))
        }
        AttractorCase::Diffusive { .. } => {
            let sup = points
                .par_iter()
                .map(|x| Ok((pn.get_f64(x) - a.eval(n, x)?).abs()))
                .try_reduce(|| 0.0, |u, v| Ok(u.max(v)))?;
            (sup, None)
        }
    };
    Ok(LltReport {
        n,
        sup_error,
        scaled_sup_error: sup_error * (n as f64).powf(a.dim() as f64 / 2.0),
        sup_error_exact,
        tv_exact: None,
        tv_bound: None,
    })
}

/// Total attractor mass on the window at step `n`.
pub fn attractor_mass(a: &Attractor, n: u64) -> Result<f64> {
    a.window(n)?
        .par_iter()
        .map(|x| a.eval(n, x))
        .try_reduce(|| 0.0, |u, v| Ok(u + v))
}

/// `sup_x |(p^(n) + … + p^(n+s−1))(x)/s − target(x)|` where the target is
/// `1/|G|` on a finite group and `K^n(φ(x))/|Tor G|` on an infinite one.
///
/// Requires an irreducible walk of period `s`, and zero mean when `G` is infinite.
pub fn time_average_error(p: &Distribution, a: &Attractor, n: u64, s: u64) -> Result<f64> {
    let class = classify(p)?;
    if class.irreducible != Verdict::Yes {
        return Err(Error::Precondition(format!(
            "time averages need an irreducible walk ({})",
            class.reason.unwrap_or_default()
        )));
    }
    if class.period != Period::Finite(BigInt::from(s)) {
        return Err(Error::Precondition(format!(
            "s = {s} is not the period of the walk"
        )));
    }
    let mut terms = vec![convolution_power(p, n)];
    for _ in 1..s {
        let next = convolve(terms.last().expect("nonempty"), p)?;
        terms.push(next);
    }
    let g = p.group();
    let sf = BigRational::from_integer(BigInt::from(s));

    if let Some(order) = g.order() {
        let target = BigRational::new(BigInt::from(1), order);
        let mut best = BigRational::zero();
        for x in g.elements()? {
            let avg: BigRational = terms.iter().map(|t| t.get(&x)).sum::<BigRational>() / &sf;
            let e = (avg - &target).abs();
            if e > best {
                best = e;
            }
        }
        return Ok(rational_to_f64(&best));
    }

    let AttractorCase::Diffusive {
        phi,
        moments,
        kernel,
        twist,
    } = &a.case
    else {
        return Err(Error::Precondition("infinite walk with a rank-zero attractor".into()));
    };
    if !moments.mean_is_zero() {
        return Err(Error::Precondition("time averages on infinite groups need zero mean".into()));
    }
    if moments.dim != g.free_rank() {
        return Err(Error::Precondition("walk subgroup has infinite index".into()));
    }
    let untwist = twist.phi.inverse();
    let mut points: BTreeSet<Element> = BTreeSet::new();
    for (_, free) in gaussian_box(moments, n, |b| {
        untwist.apply(&b.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
    })? {
        let free = to_i64(&free)?;
        for t in g.torsion_elements() {
            points.insert(g.element(t.torsion(), &free)?);
        }
    }
    for t in &terms {
        points.extend(t.support().cloned());
    }
    let weight = 1.0 / a.torsion_order.to_f64().unwrap_or(f64::NAN);
    let points: Vec<Element> = points.into_iter().collect();
    points
        .par_iter()
        .map(|x| {
            let avg = terms.iter().map(|t| t.get_f64(x)).sum::<f64>() / s as f64;
            let b: Vec<f64> = phi.apply(x)?.free().iter().map(|&v| v as f64).collect();
            Ok((avg - weight * kernel.eval(n as f64, &b)).abs())
        })
        .try_reduce(|| 0.0, |u, v| Ok(u.max(v)))
}

/// `c · ρ^n` rounded upward, with `ρ` inflated by [`RHO_SLACK`].
fn upward_power_bound(c: f64, rho: f64, n: u64) -> f64 {
    let r = (rho * (1.0 + RHO_SLACK)).next_up();
    let mut acc = 1.0f64;
    for _ in 0..n {
        acc = (acc * r).next_up();
    }
    (acc * c).next_up()
}

/// Exact total variation between `p^(n)` and the uniform distribution on the
/// coset `G_p + n x0`, with the bound `((|G_p| − 1)/2) ρ^n`.
pub fn tv_to_uniform_coset(p: &Distribution, n: u64) -> Result<LltReport> {
    let data = analyze_dance(p)?;
    let Some(order) = data.walk_subgroup.order() else {
        return Err(Error::Unsupported("walk subgroup is infinite".into()));
    };
    let a = super::build_attractor(p)?;
    let pn = convolution_power(p, n);
    let coset: BTreeSet<Element> = a.window(n)?.into_iter().collect();
    let u = BigRational::new(BigInt::from(1), order.clone());
    let mut total = BigRational::zero();
    for x in &coset {
        total += (pn.get(x) - &u).abs();
    }
    for (x, w) in pn.iter() {
        if !coset.contains(x) {
            total += w;
        }
    }
    let tv = total / BigInt::from(2);

    let rho = spectral_gap(p)?.rho;
    let prefactor = BigRational::new(order - 1, BigInt::from(2));
    let c = rational_to_f64(&prefactor);
    let c = if BigRational::from_float(c).is_some_and(|f| f >= prefactor) { c } else { c.next_up() };
    let bound = upward_power_bound(c, rho, n);
    let bound_exact = BigRational::from_float(bound)
        .ok_or_else(|| Error::InvariantViolation(format!("bound {bound} is not finite")))?;
    if tv > bound_exact {
        return Err(Error::InvariantViolation(format!(
            "total variation {tv} exceeds the bound {bound} at n = {n}"
        )));
    }

    let mut report = super::sup_error_of_power(&a, &pn, n)?;
    report.tv_exact = Some(tv);
    report.tv_bound = Some(bound);
    Ok(report)
}

/// `[G:G_p]` when finite.
pub(super) fn finite_index(idx: &Index) -> Option<&BigInt> {
    match idx {
        Index::Finite(s) => Some(s),
        Index::Infinite => None,
    }
}
