//! Unimodular changes of coordinates that straighten a lower-dimensional
//! point set onto the leading coordinate axes.
//!
//! A finite set `S ⊆ Z^k` whose affine hull has dimension `d < k` can be moved
//! by an automorphism `Φ` of `Z^k` so that every point of `Φ(S)` has the same
//! trailing `k - d` coordinates. The construction peels off one dimension at a
//! time: find a primitive integer normal vector `a` to the affine hull, complete
//! it to a unimodular matrix with `a` as its bottom row, and recurse on the
//! leading block.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::gcd_all;
use super::{IntMatrix, UnimodularMatrix};
use crate::error::{invalid, Error, Result};

/// A nonempty-or-not list of points in `Z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePointSet {
    ambient_dim: usize,
    points: Vec<Vec<BigInt>>,
}

impl AffinePointSet {
    pub fn new(ambient_dim: usize, points: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != ambient_dim) {
            return invalid(format!(
                "point of length {} in ambient dimension {ambient_dim}",
                p.len()
            ));
        }
        Ok(AffinePointSet {
            ambient_dim,
            points,
        })
    }

    pub fn from_i64(ambient_dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(
            ambient_dim,
            points
                .iter()
                .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Image under a square matrix acting on column vectors.
    pub fn transform(&self, m: &IntMatrix) -> AffinePointSet {
        AffinePointSet {
            ambient_dim: m.rows(),
            points: self.points.iter().map(|p| m.mul_vec(p)).collect(),
        }
    }

    /// Projection onto the first `d` coordinates.
    pub fn project_leading(&self, d: usize) -> AffinePointSet {
        assert!(d <= self.ambient_dim);
        AffinePointSet {
            ambient_dim: d,
            points: self.points.iter().map(|p| p[..d].to_vec()).collect(),
        }
    }

    fn differences(&self) -> IntMatrix {
        let base = &self.points[0];
        IntMatrix::from_rows(
            self.ambient_dim,
            self.points[1..]
                .iter()
                .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect::<Vec<_>>()),
        )
        .expect("points share the ambient dimension")
    }
}

/// Dimension of the affine hull of `s` over Q.
pub fn affine_dim(s: &AffinePointSet) -> Result<usize> {
    if s.is_empty() {
        return invalid("affine dimension of an empty set");
    }
    Ok(s.differences().rank())
}

/// A `k×k` integer matrix whose bottom row is `a` and whose determinant is
/// `gcd(a)`.
///
/// Columns of `[A; I]` are combined pairwise by the Euclidean algorithm until
/// the bottom row reads `(0, …, 0, g)`; the accumulated column operations `Q`
/// then give `M = M' · Q⁻¹` with `M' = diag(det Q, 1, …, 1)` over the bottom
/// row `(0, …, 0, g)`.
///
/// For `k = 1` the only candidate is `[[a₁]]`, whose determinant is `a₁`
/// itself (negative when `a₁` is).
pub fn bottom_row_unimodular(a: &[BigInt]) -> Result<IntMatrix> {
    let k = a.len();
    if k == 0 || a.iter().all(Zero::is_zero) {
        return invalid("bottom row must be a nonzero vector");
    }
    if k == 1 {
        return IntMatrix::from_rows(1, [[a[0].clone()]]);
    }

    let mut b: Vec<BigInt> = a.to_vec();
    let mut q = IntMatrix::identity(k);
    let mut sign = BigInt::one();

    for j in 0..k - 1 {
        let (mut x, mut y) = (j, j + 1);
        while !b[x].is_zero() && !b[y].is_zero() {
            // b[x] = s·b[y] + r with 0 <= r < |b[y]|
            let r = b[x].mod_floor(&b[y].abs());
            let s = (&b[x] - &r) / &b[y];
            b[x] = r;
            q.sub_col_multiple(x, y, &s);
            std::mem::swap(&mut x, &mut y);
        }
        if b[j + 1].is_zero() && !b[j].is_zero() {
            b.swap(j, j + 1);
            q.swap_cols(j, j + 1);
            sign = -sign;
        }
    }
    if b[k - 1].is_negative() {
        b[k - 1] = -&b[k - 1];
        q.negate_col(k - 1);
        sign = -sign;
    }
    debug_assert!(b[..k - 1].iter().all(Zero::is_zero));

    let mut m_prime = IntMatrix::identity(k);
    m_prime[(0, 0)] = sign;
    for c in 0..k {
        m_prime[(k - 1, c)] = b[c].clone();
    }
    let q_inv = q
        .integer_inverse()
        .ok_or_else(|| Error::InvariantViolation("column operations lost unimodularity".into()))?;
    Ok(&m_prime * &q_inv)
}

/// A primitive integer vector orthogonal to every difference `x - x0`, `x ∈ s`.
///
/// Rational reduced row echelon form of the difference matrix; the first free
/// column is set to 1, then denominators are cleared and the gcd divided out.
fn primitive_normal(s: &AffinePointSet) -> Vec<BigInt> {
    let k = s.ambient_dim();
    let diff = s.differences();
    let mut m: Vec<Vec<BigRational>> = diff
        .row_vecs()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();

    let mut pivot_cols = Vec::new();
    let mut pr = 0;
    for col in 0..k {
        let Some(p) = (pr..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pr, p);
        let inv = m[pr][col].recip();
        for x in m[pr].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != pr && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let prow = m[pr].clone();
                for (x, y) in m[r].iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(col);
        pr += 1;
    }

    let free = (0..k)
        .find(|c| !pivot_cols.contains(c))
        .expect("caller guarantees a proper affine hull");
    let mut a = vec![BigRational::zero(); k];
    a[free] = BigRational::one();
    for (i, &pc) in pivot_cols.iter().enumerate() {
        a[pc] = -m[i][free].clone();
    }
    let lcm = a
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = a
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = gcd_all(&ints);
    ints.into_iter().map(|x| x / &g).collect()
}

/// One reduction step: an automorphism `Φ` of `Z^k` and an integer `w` with
/// `(Φx)_k = w` for every `x ∈ s`.
pub fn flatten_affine(s: &AffinePointSet) -> Result<(UnimodularMatrix, BigInt)> {
    let k = s.ambient_dim();
    let dim = affine_dim(s)?;
    if dim >= k {
        return Err(Error::Precondition(format!(
            "point set spans all {k} dimensions; nothing to flatten"
        )));
    }
    let a = primitive_normal(s);
    let m = bottom_row_unimodular(&a)?;
    let phi = UnimodularMatrix::new(m)
        .map_err(|e| Error::InvariantViolation(format!("flatten produced {e}")))?;
    let w = a
        .iter()
        .zip(&s.points()[0])
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y);
    Ok((phi, w))
}

/// Output of [`twist_to_coordinates`]: `phi(s) ⊆ Z^dim × {offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub phi: UnimodularMatrix,
    pub offset: Vec<BigInt>,
    pub dim: usize,
}

/// Straightens `s` so that its image fills the first `d = affine_dim(s)`
/// coordinates and is constant on the remaining `k - d`.
pub fn twist_to_coordinates(s: &AffinePointSet) -> Result<Twist> {
    let k = s.ambient_dim();
    let d = affine_dim(s)?;
    let mut phi = UnimodularMatrix::identity(k);
    let mut current = s.clone();

    for lead in (d + 1..=k).rev() {
        let (step, _) = flatten_affine(&current.project_leading(lead))?;
        let lifted = UnimodularMatrix::trusted(step.into_matrix().pad_identity(k - lead));
        current = current.transform(lifted.matrix());
        phi = lifted.compose(&phi);
    }

    let offset = if current.is_empty() || d == k {
        Vec::new()
    } else {
        current.points()[0][d..].to_vec()
    };
    for p in current.points() {
        if p[d..] != offset[..] {
            return Err(Error::InvariantViolation(
                "twisted set is not constant on trailing coordinates".into(),
            ));
        }
    }
    Ok(Twist { phi, offset, dim: d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bottom_row_examples() {
        assert_eq!(bottom_row_unimodular(&ints(&[1])).unwrap(), IntMatrix::from_i64(&[&[1]]));

        let m = bottom_row_unimodular(&ints(&[2, 3])).unwrap();
        assert_eq!(m.row(1), &ints(&[2, 3])[..]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(1));

        let m = bottom_row_unimodular(&ints(&[4, 6])).unwrap();
        assert_eq!(m.row(1), &ints(&[4, 6])[..]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(2));
    }

    #[test]
    fn bottom_row_single_negative_entry() {
        let m = bottom_row_unimodular(&ints(&[0, -3])).unwrap();
        assert_eq!(m.row(1), &ints(&[0, -3])[..]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(3));
        let m = bottom_row_unimodular(&ints(&[0, 0, -1])).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(1));
    }

    #[test]
    fn bottom_row_rejects_zero() {
        assert!(bottom_row_unimodular(&ints(&[0, 0])).is_err());
        assert!(bottom_row_unimodular(&[]).is_err());
    }

    #[test]
    fn affine_dims() {
        let s = AffinePointSet::from_i64(2, &[&[0, 0]]).unwrap();
        assert_eq!(affine_dim(&s).unwrap(), 0);
        let s = AffinePointSet::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(affine_dim(&s).unwrap(), 1);
        let s = AffinePointSet::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(affine_dim(&s).unwrap(), 2);
        assert!(affine_dim(&AffinePointSet::new(2, vec![]).unwrap()).is_err());
    }

    #[test]
    fn flatten_diagonal_pair() {
        let s = AffinePointSet::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let (phi, w) = flatten_affine(&s).unwrap();
        assert_eq!(phi.matrix(), &IntMatrix::from_i64(&[&[1, 0], &[1, 1]]));
        assert_eq!(w, BigInt::from(1));
    }

    #[test]
    fn flatten_single_point_and_vertical_pair() {
        let s = AffinePointSet::from_i64(2, &[&[0, 0]]).unwrap();
        let (_, w) = flatten_affine(&s).unwrap();
        assert!(w.is_zero());

        let s = AffinePointSet::from_i64(2, &[&[0, 3], &[0, 0]]).unwrap();
        let (phi, w) = flatten_affine(&s).unwrap();
        let image = s.transform(phi.matrix());
        assert!(image.points().iter().all(|p| p[1] == w));
        assert!(w.is_zero());
        let firsts: Vec<BigInt> = image.points().iter().map(|p| p[0].abs()).collect();
        assert_eq!(firsts, ints(&[3, 0]));
    }

    #[test]
    fn flatten_rejects_full_dimensional() {
        let s = AffinePointSet::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(flatten_affine(&s), Err(Error::Precondition(_))));
    }

    #[test]
    fn twist_examples() {
        let s = AffinePointSet::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let t = twist_to_coordinates(&s).unwrap();
        assert_eq!(t.dim, 1);
        assert_eq!(t.phi.matrix(), &IntMatrix::from_i64(&[&[1, 0], &[1, 1]]));
        assert_eq!(t.offset, ints(&[1]));

        let s = AffinePointSet::from_i64(2, &[&[5, 7]]).unwrap();
        let t = twist_to_coordinates(&s).unwrap();
        assert_eq!(t.dim, 0);
        assert_eq!(t.offset, t.phi.apply(&ints(&[5, 7])));

        let s = AffinePointSet::from_i64(3, &[&[0, 0, 0], &[1, 1, 0], &[2, 0, 2]]).unwrap();
        let t = twist_to_coordinates(&s).unwrap();
        assert_eq!(t.dim, 2);
        let image = s.transform(t.phi.matrix());
        for p in image.points() {
            assert_eq!(p[2..], t.offset[..]);
        }
        assert_eq!(affine_dim(&image.project_leading(2)).unwrap(), 2);
    }

    #[test]
    fn twist_full_dimensional_is_identity() {
        let s = AffinePointSet::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let t = twist_to_coordinates(&s).unwrap();
        assert_eq!(t.phi, UnimodularMatrix::identity(2));
        assert!(t.offset.is_empty());
        assert!(twist_to_coordinates(&AffinePointSet::new(3, vec![]).unwrap()).is_err());
    }
}
