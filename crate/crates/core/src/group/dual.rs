use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{Element, GroupSpec};
use crate::error::{invalid, Result};

/// A point `ξ` of the dual group: residues `k_i` for the torsion factors and
/// angles `θ_j ∈ [0, 1)` (in full turns) for the free factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualPoint {
    torsion_chars: Vec<i64>,
    torus_angles: Vec<BigRational>,
}

/// Value of a character at a point, with its exact phase.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub phase: BigRational,
    pub value: Complex64,
}

impl DualPoint {
    pub fn new(g: &GroupSpec, torsion_chars: &[i64], torus_angles: &[BigRational]) -> Result<Self> {
        if torsion_chars.len() != g.torsion_len() || torus_angles.len() != g.free_rank() {
            return invalid(format!("dual point shape does not fit {g}"));
        }
        Ok(DualPoint {
            torsion_chars: torsion_chars
                .iter()
                .zip(g.moduli())
                .map(|(&k, &m)| k.rem_euclid(m))
                .collect(),
            torus_angles: torus_angles.iter().map(reduce_mod_one).collect(),
        })
    }

    pub fn zero(g: &GroupSpec) -> Self {
        DualPoint {
            torsion_chars: vec![0; g.torsion_len()],
            torus_angles: vec![BigRational::zero(); g.free_rank()],
        }
    }

    /// Reads a torsion element `k ∈ A` as the character `x ↦ exp(2πi Σ k_i x_i / m_i)`.
    pub fn from_torsion(g: &GroupSpec, k: &Element) -> Result<Self> {
        g.torsion_group().check(&Element {
            torsion: k.torsion.clone(),
            free: Vec::new(),
        })?;
        Ok(DualPoint {
            torsion_chars: k.torsion.clone(),
            torus_angles: vec![BigRational::zero(); g.free_rank()],
        })
    }

    pub fn torsion_chars(&self) -> &[i64] {
        &self.torsion_chars
    }

    pub fn torus_angles(&self) -> &[BigRational] {
        &self.torus_angles
    }

    pub fn is_zero(&self) -> bool {
        self.torsion_chars.iter().all(|&k| k == 0) && self.torus_angles.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for DualPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .torsion_chars
            .iter()
            .map(ToString::to_string)
            .chain(self.torus_angles.iter().map(ToString::to_string))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

fn reduce_mod_one(q: &BigRational) -> BigRational {
    q - q.floor()
}

/// Exact phase `Σ k_i x_i / m_i + Σ θ_j y_j` reduced into `[0, 1)`.
pub fn character_phase(g: &GroupSpec, xi: &DualPoint, x: &Element) -> Result<BigRational> {
    g.check(x)?;
    if xi.torsion_chars.len() != g.torsion_len() || xi.torus_angles.len() != g.free_rank() {
        return invalid(format!("dual point {xi} does not fit {g}"));
    }
    let mut phase = BigRational::zero();
    for ((&k, &xv), &m) in xi.torsion_chars.iter().zip(&x.torsion).zip(g.moduli()) {
        let num = (k as i128 * xv as i128).rem_euclid(m as i128);
        phase += BigRational::new(BigInt::from(num), BigInt::from(m));
    }
    for (theta, &y) in xi.torus_angles.iter().zip(&x.free) {
        phase += theta * BigInt::from(y);
    }
    Ok(reduce_mod_one(&phase))
}

pub fn character_eval(g: &GroupSpec, xi: &DualPoint, x: &Element) -> Result<Character> {
    let phase = character_phase(g, xi, x)?;
    let value = unit_root(&phase);
    Ok(Character { phase, value })
}

/// `exp(2πi q)`. Multiples of a quarter turn are returned exactly.
pub fn unit_root(q: &BigRational) -> Complex64 {
    let r = reduce_mod_one(q);
    let four = BigInt::from(4);
    if four.is_multiple_of(r.denom()) {
        let quarter = (r.numer() * (&four / r.denom())).to_i64().unwrap_or(0);
        return match quarter {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let turns = r.to_f64().unwrap_or(0.0);
    Complex64::from_polar(1.0, std::f64::consts::TAU * turns)
}

/// Every character of the torsion subgroup, extended by zero on the free part.
/// For a finite group this is the whole dual.
pub fn torsion_dual(g: &GroupSpec) -> Vec<DualPoint> {
    g.torsion_elements()
        .map(|k| DualPoint {
            torsion_chars: k.torsion,
            torus_angles: vec![BigRational::zero(); g.free_rank()],
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn z12_phases() {
        let g = GroupSpec::cyclic(12).unwrap();
        let xi = DualPoint::new(&g, &[4], &[]).unwrap();
        let c = character_eval(&g, &xi, &g.element(&[3], &[]).unwrap()).unwrap();
        assert!(c.phase.is_zero());
        assert_eq!(c.value, Complex64::new(1.0, 0.0));
        let c = character_eval(&g, &xi, &g.element(&[1], &[]).unwrap()).unwrap();
        assert_eq!(c.phase, q(1, 3));
    }

    #[test]
    fn torus_half_turn() {
        let g = GroupSpec::free(1);
        let xi = DualPoint::new(&g, &[], &[q(1, 2)]).unwrap();
        let c = character_eval(&g, &xi, &g.element(&[], &[3]).unwrap()).unwrap();
        assert_eq!(c.phase, q(1, 2));
        assert_eq!(c.value, Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn angles_reduced() {
        let g = GroupSpec::free(1);
        let xi = DualPoint::new(&g, &[], &[q(-1, 3)]).unwrap();
        assert_eq!(xi.torus_angles()[0], q(2, 3));
    }

    #[test]
    fn exact_quarter_turns() {
        assert_eq!(unit_root(&q(1, 4)), Complex64::new(0.0, 1.0));
        assert_eq!(unit_root(&q(-1, 4)), Complex64::new(0.0, -1.0));
        let w = unit_root(&q(1, 3));
        assert!((w.re + 0.5).abs() < 1e-15);
    }
}
