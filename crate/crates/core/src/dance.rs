//! The walk subgroup `G_p`, the set `Ω(p)` where `|p̂| = 1`, the dance
//! function `Θ_p`, characteristic functions and the spectral gap.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{
    character_phase, torsion_dual, unit_root, DualPoint, Element, GroupSpec, Index,
    QuotientInvariants, Subgroup,
};
use crate::measure::{rational_to_f64, torsion_pushforward, Distribution};

/// Structural data of a walk: `G_p = ⟨supp(p) − x0⟩`, its rank, and the
/// normalization `c = |Tor(G/G_p)|` so that `Θ_p(n, x) = c · 1_{G_p}(x − n x0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DanceData {
    pub walk_subgroup: Subgroup,
    /// The least support element.
    pub base_point: Element,
    pub rank_d: usize,
    pub normalization_c: BigInt,
    /// Invariants of `G/G_p`. `Ω(p)` is the dual of this quotient.
    pub omega_invariants: QuotientInvariants,
}

impl DanceData {
    pub fn group(&self) -> &GroupSpec {
        self.walk_subgroup.parent()
    }

    /// `Θ_p(n, x)`.
    pub fn theta(&self, n: u64, x: &Element) -> Result<BigInt> {
        Ok(if self.on_live_coset(n, x)? {
            self.normalization_c.clone()
        } else {
            BigInt::zero()
        })
    }

    /// Whether `x ∈ G_p + n x0`.
    pub fn on_live_coset(&self, n: u64, x: &Element) -> Result<bool> {
        let g = self.group();
        let n = i64::try_from(n).map_err(|_| Error::InvalidArgument(format!("step {n} too large")))?;
        let shifted = g.sub(x, &g.scale(n, &self.base_point)?)?;
        self.walk_subgroup.contains(&shifted)
    }

    pub fn index(&self) -> Index {
        self.walk_subgroup.index()
    }
}

pub fn analyze_dance(p: &Distribution) -> Result<DanceData> {
    analyze_dance_at(p, p.min_support())
}

/// As [`analyze_dance`] with an explicit base point from the support.
pub fn analyze_dance_at(p: &Distribution, x0: &Element) -> Result<DanceData> {
    let g = p.group();
    if !p.weights().contains_key(x0) {
        return Err(Error::InvalidArgument(format!("{x0} is not in the support")));
    }
    let gens = p
        .support()
        .map(|x| g.sub(x, x0))
        .collect::<Result<Vec<_>>>()?;
    let walk_subgroup = Subgroup::generated(g, &gens)?;
    let omega_invariants = walk_subgroup.quotient_invariants();
    Ok(DanceData {
        rank_d: walk_subgroup.rank(),
        normalization_c: omega_invariants.torsion_order(),
        omega_invariants,
        walk_subgroup,
        base_point: x0.clone(),
    })
}

/// `Θ_p(n, x)`, analyzing `p` on each call.
pub fn theta(p: &Distribution, n: u64, x: &Element) -> Result<BigInt> {
    analyze_dance(p)?.theta(n, x)
}

/// Support weights grouped by the exact phase of `χ_ξ`.
fn phase_classes(p: &Distribution, xi: &DualPoint) -> Result<BTreeMap<BigRational, BigRational>> {
    let mut classes: BTreeMap<BigRational, BigRational> = BTreeMap::new();
    for (x, w) in p.iter() {
        let ph = character_phase(p.group(), xi, x)?;
        *classes.entry(ph).or_insert_with(BigRational::zero) += w;
    }
    Ok(classes)
}

/// `p̂(ξ) = Σ_x p(x) χ_ξ(x)`. When every support point has the same phase the
/// result is that root of unity, exactly.
pub fn char_fn(p: &Distribution, xi: &DualPoint) -> Result<Complex64> {
    let classes = phase_classes(p, xi)?;
    if classes.len() == 1 {
        let phase = classes.keys().next().expect("one class");
        return Ok(unit_root(phase));
    }
    Ok(classes
        .iter()
        .map(|(ph, w)| unit_root(ph) * rational_to_f64(w))
        .sum())
}

/// `ξ ∈ Ω(p)`, decided exactly: `χ_ξ` takes one value on all of `supp(p)`.
pub fn omega_contains(p: &Distribution, xi: &DualPoint) -> Result<bool> {
    let g = p.group();
    let first = character_phase(g, xi, p.min_support())?;
    for x in p.support() {
        if character_phase(g, xi, x)? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brute-force `Σ_{ξ ∈ Ω(p)} p̂(ξ)^n χ_ξ(−x)` over the dual of a finite group.
pub fn theta_by_integration(p: &Distribution, n: u64, x: &Element) -> Result<f64> {
    let g = p.group();
    if !g.is_finite() {
        return Err(Error::Unsupported(format!(
            "dual of {g} is not finite; use the indicator formula"
        )));
    }
    let minus_x = g.neg(x)?;
    let exponent = i32::try_from(n).map_err(|_| Error::InvalidArgument(format!("step {n} too large")))?;
    let mut total = Complex64::new(0.0, 0.0);
    for xi in torsion_dual(g) {
        if omega_contains(p, &xi)? {
            let chi = unit_root(&character_phase(g, &xi, &minus_x)?);
            total += char_fn(p, &xi)?.powi(exponent) * chi;
        }
    }
    Ok(total.re)
}

/// `Ω(p)` on a finite group, as a subgroup of `Ĝ ≅ G` (same moduli, characters
/// `x ↦ exp(2πi Σ k_i x_i / m_i)`), computed as the annihilator of `G_p`.
pub fn omega_finite(data: &DanceData) -> Result<Subgroup> {
    if !data.group().is_finite() {
        return Err(Error::Unsupported("Ω(p) is infinite on an infinite group".into()));
    }
    data.walk_subgroup.annihilator()
}

/// `ρ = max{|p̂_A(α)| : α ∈ Â \ Ω(p_A)}` together with a maximizing `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralGap {
    pub rho: f64,
    /// `None` when `Ω(p_A) = Â` and so `ρ = 0`.
    pub achieved_at: Option<DualPoint>,
}

pub fn spectral_gap(p: &Distribution) -> Result<SpectralGap> {
    let g = p.group();
    if !g.is_finite() {
        let first = p.min_support().free();
        let data = analyze_dance(p)?;
        if data.rank_d == 0 && p.support().any(|x| x.free() != first) {
            return Err(Error::InvariantViolation(
                "rank-zero walk whose support is not in a single torsion coset".into(),
            ));
        }
    }
    let pa = torsion_pushforward(p);
    let dual = torsion_dual(pa.group());
    let best = dual
        .par_iter()
        .map(|alpha| -> Result<Option<(f64, &DualPoint)>> {
            if omega_contains(&pa, alpha)? {
                return Ok(None);
            }
            Ok(Some((char_fn(&pa, alpha)?.norm(), alpha)))
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(b)) => {
                        let keep_a = a.0 > b.0 || (a.0 == b.0 && a.1 <= b.1);
                        Some(if keep_a { a } else { b })
                    }
                })
            },
        )?;
    Ok(match best {
        None => SpectralGap {
            rho: 0.0,
            achieved_at: None,
        },
        Some((rho, alpha)) => SpectralGap {
            rho,
            achieved_at: Some(alpha.clone()),
        },
    })
}

/// `[G : G_p]`, which is the period once the walk is known to be irreducible.
pub fn period_if_irreducible(p: &Distribution) -> Result<BigInt> {
    match analyze_dance(p)?.index() {
        Index::Finite(s) => Ok(s),
        Index::Infinite => Err(Error::Precondition(
            "period undefined: [G:G_p] infinite".into(),
        )),
    }
}
