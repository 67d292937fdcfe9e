use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Element, GroupSpec, Homomorphism};
use crate::error::{Error, Result};
use crate::intlinalg::{hnf, snf, solve_in_lattice, IntMatrix};

/// Index of a subgroup in its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(s) => write!(f, "{s}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// Invariant factors and free rank of a quotient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl QuotientInvariants {
    /// Order of the torsion part (1 when there is none).
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
}

/// A subgroup `H ≤ G`, stored as the lattice `L ⊆ Z^{t+k}` of all coordinate
/// vectors of elements of `H`. `L` always contains `m_i e_i` for each torsion
/// coordinate, and its basis is kept in Hermite normal form so two subgroups
/// are equal exactly when their representations are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: GroupSpec,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Subgroup {
    pub fn generated(g: &GroupSpec, gens: &[Element]) -> Result<Self> {
        for x in gens {
            g.check(x)?;
        }
        let n = g.dim();
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(Element::coords).collect();
        for (i, &m) in g.moduli().iter().enumerate() {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::from(m);
            rows.push(r);
        }
        let m = IntMatrix::from_rows(n, rows)?;
        let d = hnf(&m);
        Ok(Subgroup {
            parent: g.clone(),
            basis: d.basis(),
            pivots: d.pivots,
        })
    }

    pub fn trivial(g: &GroupSpec) -> Self {
        Self::generated(g, &[]).expect("empty generator list")
    }

    pub fn whole(g: &GroupSpec) -> Self {
        let n = g.dim();
        Subgroup {
            parent: g.clone(),
            basis: IntMatrix::identity(n),
            pivots: (0..n).collect(),
        }
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    /// Canonical HNF basis of the coordinate lattice.
    pub fn lattice_basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        self.parent.check(x)?;
        Ok(self.contains_coords(&x.coords()))
    }

    pub(crate) fn contains_coords(&self, v: &[BigInt]) -> bool {
        solve_in_lattice(&self.basis, &self.pivots, v).is_some()
    }

    pub fn index(&self) -> Index {
        if self.basis.rows() < self.parent.dim() {
            Index::Infinite
        } else {
            Index::Finite(self.pivot_product())
        }
    }

    fn pivot_product(&self) -> BigInt {
        self.pivots
            .iter()
            .enumerate()
            .map(|(i, &c)| self.basis[(i, c)].clone())
            .product()
    }

    /// Free rank of `H` itself.
    pub fn rank(&self) -> usize {
        self.basis.rows() - self.parent.torsion_len()
    }

    /// `|H|`, or `None` when `H` is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank() == 0).then(|| self.parent.torsion_order() / self.pivot_product())
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == 0
    }

    /// Invariants of `G / H`, read off the Smith form of the lattice basis.
    pub fn quotient_invariants(&self) -> QuotientInvariants {
        let d = snf(&self.basis).diagonal();
        QuotientInvariants {
            torsion: d.into_iter().filter(|x| x > &BigInt::one()).collect(),
            free_rank: self.parent.dim() - self.basis.rows(),
        }
    }

    /// The nonzero HNF rows, read as elements of the parent.
    pub fn generators(&self) -> Vec<Element> {
        self.basis
            .row_vecs()
            .iter()
            .map(|r| {
                self.parent
                    .element_from_coords(r)
                    .expect("basis row fits the parent")
            })
            .filter(|x| x != &self.parent.zero())
            .collect()
    }

    /// Every element of a finite subgroup, in the parent's torsion order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        if !self.is_finite() {
            return Err(Error::Unsupported(format!(
                "cannot enumerate infinite subgroup of {}",
                self.parent
            )));
        }
        Ok(self
            .parent
            .torsion_elements()
            .filter(|x| self.contains_coords(&x.coords()))
            .collect())
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        if self.parent != other.parent {
            return Err(Error::GroupMismatch(format!(
                "subgroups of {} and {}",
                self.parent, other.parent
            )));
        }
        Ok(self.basis.row_vecs().iter().all(|r| other.contains_coords(r)))
    }

    /// `H^† = {ξ ∈ Â : χ_ξ ≡ 1 on H}` for a finite subgroup `H`, where the
    /// dual of `A = Z_{m1} × … × Z_{mt}` is identified with `A` itself through
    /// `χ_k(x) = exp(2πi Σ k_i x_i / m_i)`.
    pub fn annihilator(&self) -> Result<Subgroup> {
        if !self.is_finite() {
            return Err(Error::Unsupported(
                "annihilator is implemented for finite subgroups only".into(),
            ));
        }
        let a = self.parent.torsion_group();
        let gens = self.generators();
        let l = a
            .moduli()
            .iter()
            .fold(BigInt::one(), |acc, &m| num_integer::lcm(acc, BigInt::from(m)));
        let kills = |k: &Element| {
            gens.iter().all(|h| {
                let s: BigInt = k
                    .torsion()
                    .iter()
                    .zip(h.torsion())
                    .zip(a.moduli())
                    .map(|((&ki, &hi), &m)| BigInt::from(ki) * hi * (&l / m))
                    .sum();
                (s % &l).is_zero()
            })
        };
        let members: Vec<Element> = a.torsion_elements().filter(kills).collect();
        Subgroup::generated(&a, &members)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators();
        if gens.is_empty() {
            return write!(f, "<0>");
        }
        let parts: Vec<String> = gens.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Canonical form of `Z^m / rowspan(relations)` together with the quotient map
/// `Z^m → Z_{d1} × … × Z^{m-r}`.
pub fn group_from_presentation(relations: &IntMatrix) -> Result<(GroupSpec, Homomorphism)> {
    let m = relations.cols();
    let s = snf(relations);
    let diag = s.diagonal();
    let r = diag.iter().filter(|x| !x.is_zero()).count();
    let v = s.v.matrix();

    let mut moduli = Vec::new();
    let mut rows = Vec::new();
    for (i, d) in diag.iter().enumerate().take(r) {
        if d > &BigInt::one() {
            let di = i64::try_from(d)
                .map_err(|_| Error::Unsupported(format!("invariant factor {d} exceeds i64")))?;
            moduli.push(di);
            rows.push(v.column(i));
        }
    }
    for i in r..m {
        rows.push(v.column(i));
    }
    let target = GroupSpec::new(moduli, m - r)?;
    let matrix = IntMatrix::from_rows(m, rows)?;
    let proj = Homomorphism::new(GroupSpec::free(m), target.clone(), matrix)?;
    Ok((target, proj))
}
