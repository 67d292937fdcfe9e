use num_bigint::BigInt;
use num_traits::Zero;

use super::{Element, GroupSpec, Subgroup};
use crate::error::{Error, Result};
use crate::intlinalg::{IntMatrix, UnimodularMatrix};

/// A homomorphism given by an integer matrix acting on coordinate columns.
///
/// The matrix has `target.dim()` rows and `source.dim()` columns. Column `j`
/// is the image of the `j`-th generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: GroupSpec,
    target: GroupSpec,
    matrix: IntMatrix,
}

impl Homomorphism {
    /// Checks the shape and that every torsion generator of order `m` is sent
    /// to an element killed by `m`.
    pub fn new(source: GroupSpec, target: GroupSpec, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InvalidArgument(format!(
                "{}x{} matrix cannot map {source} to {target}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let t_out = target.torsion_len();
        for (j, &m) in source.moduli().iter().enumerate() {
            let col = matrix.column(j);
            let torsion_ok = col[..t_out]
                .iter()
                .zip(target.moduli())
                .all(|(c, &mt)| (c * m % mt).is_zero());
            let free_ok = col[t_out..].iter().all(Zero::is_zero);
            if !torsion_ok || !free_ok {
                return Err(Error::InvalidArgument(format!(
                    "generator {j} of order {m} has an image of different order; map is not well defined"
                )));
            }
        }
        Ok(Homomorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &GroupSpec) -> Self {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.dim()),
        }
    }

    /// `Tor(G) × Z^k → Tor(G) × Z^k`, identity on torsion and `phi` on the free part.
    pub fn free_automorphism(g: &GroupSpec, phi: &UnimodularMatrix) -> Result<Self> {
        if phi.dim() != g.free_rank() {
            return Err(Error::InvalidArgument(format!(
                "{}x{} automorphism does not act on the free part of {g}",
                phi.dim(),
                phi.dim()
            )));
        }
        let t = g.torsion_len();
        let p = phi.matrix();
        let rows = (0..g.dim()).map(|r| {
            (0..g.dim())
                .map(|c| match (r >= t, c >= t) {
                    (true, true) => p[(r - t, c - t)].clone(),
                    _ => BigInt::from(i64::from(r == c)),
                })
                .collect::<Vec<_>>()
        });
        let m = IntMatrix::from_rows(g.dim(), rows)?;
        Ok(Homomorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: m,
        })
    }

    /// `G → Z^k`, forgetting the torsion coordinates.
    pub fn free_projection(g: &GroupSpec) -> Self {
        Self::select(g, GroupSpec::free(g.free_rank()), g.torsion_len())
    }

    /// `G → Tor(G)`, forgetting the free coordinates.
    pub fn torsion_projection(g: &GroupSpec) -> Self {
        Self::select(g, g.torsion_group(), 0)
    }

    fn select(g: &GroupSpec, target: GroupSpec, start: usize) -> Self {
        let rows = (0..target.dim()).map(|r| {
            (0..g.dim())
                .map(|c| BigInt::from(i64::from(c == start + r)))
                .collect::<Vec<_>>()
        });
        let matrix = IntMatrix::from_rows(g.dim(), rows).expect("rectangular selection");
        Homomorphism {
            source: g.clone(),
            target,
            matrix,
        }
    }

    pub fn source(&self) -> &GroupSpec {
        &self.source
    }

    pub fn target(&self) -> &GroupSpec {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.source.check(x)?;
        self.target
            .element_from_coords(&self.matrix.mul_vec(&x.coords()))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Homomorphism) -> Result<Homomorphism> {
        if first.target != self.source {
            return Err(Error::GroupMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, first.source, first.target
            )));
        }
        Ok(Homomorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.checked_mul(&first.matrix)?,
        })
    }

    /// The image subgroup in the target.
    pub fn image(&self) -> Result<Subgroup> {
        let gens = (0..self.source.dim())
            .map(|j| self.target.element_from_coords(&self.matrix.column(j)))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::generated(&self.target, &gens)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image()? == Subgroup::whole(&self.target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ill_defined_maps() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let z6 = GroupSpec::cyclic(6).unwrap();
        let z2 = GroupSpec::cyclic(2).unwrap();
        assert!(Homomorphism::new(z4.clone(), z6, IntMatrix::from_i64(&[&[1]])).is_err());
        assert!(Homomorphism::new(z4.clone(), z2, IntMatrix::from_i64(&[&[1]])).is_ok());
        assert!(Homomorphism::new(z4, GroupSpec::free(1), IntMatrix::from_i64(&[&[1]])).is_err());
    }

    #[test]
    fn spitzer_twist_as_automorphism() {
        let g = GroupSpec::free(2);
        let phi = UnimodularMatrix::new(IntMatrix::from_i64(&[&[1, 0], &[1, 1]])).unwrap();
        let t = Homomorphism::free_automorphism(&g, &phi).unwrap();
        let x = g.element(&[], &[3, 4]).unwrap();
        assert_eq!(t.apply(&x).unwrap(), g.element(&[], &[3, 7]).unwrap());
        let inv = Homomorphism::free_automorphism(&g, &phi.inverse()).unwrap();
        assert_eq!(inv.compose(&t).unwrap(), Homomorphism::identity(&g));
    }

    #[test]
    fn projections() {
        let g = GroupSpec::new(vec![4], 1).unwrap();
        let x = g.element(&[3], &[-2]).unwrap();
        let f = Homomorphism::free_projection(&g);
        assert_eq!(f.apply(&x).unwrap().free(), &[-2]);
        assert!(f.is_surjective().unwrap());
        let a = Homomorphism::torsion_projection(&g);
        assert_eq!(a.apply(&x).unwrap().torsion(), &[3]);
        assert!(f.compose(&a).is_err());
    }
}
