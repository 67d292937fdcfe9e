//! Finitely-generated abelian groups `Z_{m1} × … × Z_{mt} × Z^k`.
//!
//! A group keeps the moduli it was built with, so `Z_4 × Z_6` stays
//! `Z_4 × Z_6` and its elements use those coordinates. The canonical
//! invariant-factor chain (`Z_2 × Z_12` for that example) is available from
//! [`GroupSpec::invariant_factors`] and drives isomorphism tests.

mod dual;
mod hom;
mod subgroup;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{invalid, Error, Result};
use crate::intlinalg::{snf, IntMatrix};

pub use dual::{character_eval, character_phase, torsion_dual, unit_root, Character, DualPoint};
pub use hom::Homomorphism;
pub use subgroup::{group_from_presentation, Index, QuotientInvariants, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<i64>,
    free_rank: usize,
}

/// A point of a [`GroupSpec`]: torsion residues followed by free coordinates.
///
/// The derived ordering is lexicographic on `(torsion, free)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    torsion: Vec<i64>,
    free: Vec<i64>,
}

impl Element {
    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn free(&self) -> &[i64] {
        &self.free
    }

    /// All coordinates, torsion first.
    pub fn coords(&self) -> Vec<BigInt> {
        self.torsion
            .iter()
            .chain(&self.free)
            .map(|&x| BigInt::from(x))
            .collect()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.torsion.iter().chain(&self.free).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl GroupSpec {
    pub fn new(moduli: Vec<i64>, free_rank: usize) -> Result<Self> {
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return invalid(format!("torsion modulus {m} must be at least 2"));
        }
        Ok(GroupSpec { moduli, free_rank })
    }

    pub fn cyclic(m: i64) -> Result<Self> {
        Self::new(vec![m], 0)
    }

    pub fn free(rank: usize) -> Self {
        GroupSpec {
            moduli: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn torsion_len(&self) -> usize {
        self.moduli.len()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Total number of coordinates `t + k`.
    pub fn dim(&self) -> usize {
        self.moduli.len() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.moduli.is_empty()
    }

    /// `|Tor(G)|`, the product of the moduli.
    pub fn torsion_order(&self) -> BigInt {
        self.moduli
            .iter()
            .fold(BigInt::one(), |acc, &m| acc * BigInt::from(m))
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// The torsion subgroup `A = Z_{m1} × … × Z_{mt}` as a group of its own.
    pub fn torsion_group(&self) -> GroupSpec {
        GroupSpec {
            moduli: self.moduli.clone(),
            free_rank: 0,
        }
    }

    /// Canonical chain `d_1 | d_2 | …` with every `d_i ≥ 2`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let diag = IntMatrix::diagonal(self.moduli.iter().map(|&m| BigInt::from(m)));
        snf(&diag)
            .diagonal()
            .into_iter()
            .filter(|d| d > &BigInt::one())
            .collect()
    }

    pub fn is_isomorphic(&self, other: &GroupSpec) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors() == other.invariant_factors()
    }

    pub fn zero(&self) -> Element {
        Element {
            torsion: vec![0; self.moduli.len()],
            free: vec![0; self.free_rank],
        }
    }

    /// Builds an element, reducing torsion residues into `[0, m_i)`.
    pub fn element(&self, torsion: &[i64], free: &[i64]) -> Result<Element> {
        if torsion.len() != self.moduli.len() || free.len() != self.free_rank {
            return invalid(format!(
                "element shape ({}, {}) does not fit {self}",
                torsion.len(),
                free.len()
            ));
        }
        Ok(Element {
            torsion: torsion
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| x.rem_euclid(m))
                .collect(),
            free: free.to_vec(),
        })
    }

    /// Element from a flat coordinate vector (torsion first).
    pub fn element_from_coords(&self, coords: &[BigInt]) -> Result<Element> {
        if coords.len() != self.dim() {
            return invalid(format!(
                "coordinate vector of length {} does not fit {self}",
                coords.len()
            ));
        }
        let t = self.moduli.len();
        let torsion = coords[..t]
            .iter()
            .zip(&self.moduli)
            .map(|(x, &m)| {
                let r = x.modpow(&BigInt::one(), &BigInt::from(m));
                r.to_i64().expect("residue fits in i64")
            })
            .collect();
        let free = coords[t..]
            .iter()
            .map(|x| {
                x.to_i64()
                    .ok_or_else(|| Error::InvalidArgument(format!("coordinate {x} overflows i64")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Element { torsion, free })
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if x.torsion.len() != self.moduli.len() || x.free.len() != self.free_rank {
            return Err(Error::GroupMismatch(format!("{x} is not an element of {self}")));
        }
        if x
            .torsion
            .iter()
            .zip(&self.moduli)
            .any(|(&r, &m)| r < 0 || r >= m)
        {
            return Err(Error::GroupMismatch(format!(
                "{x} has unreduced residues for {self}"
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &Element, b: &Element) -> Element {
        Element {
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.moduli)
                .map(|((x, y), m)| (x + y) % m)
                .collect(),
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.scale_unchecked(-1, a))
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, &self.scale_unchecked(-1, b)))
    }

    pub fn scale(&self, k: i64, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.scale_unchecked(k, a))
    }

    pub(crate) fn scale_unchecked(&self, k: i64, a: &Element) -> Element {
        Element {
            torsion: a
                .torsion
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| ((k as i128 * x as i128).rem_euclid(m as i128)) as i64)
                .collect(),
            free: a.free.iter().map(|&x| k * x).collect(),
        }
    }

    /// Every element of the torsion subgroup `A × {0}`, in lexicographic order.
    pub fn torsion_elements(&self) -> impl Iterator<Item = Element> + '_ {
        mixed_radix(&self.moduli).map(move |torsion| Element {
            torsion,
            free: vec![0; self.free_rank],
        })
    }

    /// Every element of a finite group.
    pub fn elements(&self) -> Result<Vec<Element>> {
        if !self.is_finite() {
            return Err(Error::Unsupported(format!("cannot enumerate infinite group {self}")));
        }
        Ok(self.torsion_elements().collect())
    }

    /// Position of a torsion element in [`GroupSpec::torsion_elements`] order.
    pub(crate) fn torsion_index(&self, x: &Element) -> usize {
        x.torsion
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&r, &m)| acc * m as usize + r as usize)
    }
}

fn mixed_radix(moduli: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total: usize = moduli.iter().map(|&m| m as usize).product();
    (0..total).map(move |mut idx| {
        let mut digits = vec![0i64; moduli.len()];
        for (d, &m) in digits.iter_mut().zip(moduli).rev() {
            *d = (idx % m as usize) as i64;
            idx /= m as usize;
        }
        digits
    })
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.moduli.iter().map(|m| format!("Z_{m}")).collect();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" x "))
    }
}
