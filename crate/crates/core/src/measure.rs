//! Finitely-supported probability distributions with exact rational weights.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::group::{Element, GroupSpec, Homomorphism};

/// Left operands with at least this many support points are convolved in parallel.
const PARALLEL_THRESHOLD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    group: GroupSpec,
    weights: BTreeMap<Element, BigRational>,
}

impl Distribution {
    /// Merges repeated elements, drops zero weights and requires the rest to
    /// be positive with total exactly 1.
    pub fn new<I>(group: GroupSpec, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Element, BigRational)>,
    {
        let mut weights: BTreeMap<Element, BigRational> = BTreeMap::new();
        for (x, w) in entries {
            group.check(&x)?;
            if w.is_negative() {
                return invalid(format!("negative weight {w} at {x}"));
            }
            *weights.entry(x).or_insert_with(BigRational::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        let total: BigRational = weights.values().sum();
        if !total.is_one() {
            return invalid(format!("weights sum to {total}, not 1"));
        }
        Ok(Distribution { group, weights })
    }

    pub fn delta(group: &GroupSpec, x: &Element) -> Result<Self> {
        Self::new(group.clone(), [(x.clone(), BigRational::one())])
    }

    /// Equal mass on each listed element (repeats add up).
    pub fn uniform(group: &GroupSpec, support: &[Element]) -> Result<Self> {
        if support.is_empty() {
            return invalid("uniform distribution needs a nonempty support");
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(support.len()));
        Self::new(group.clone(), support.iter().map(|x| (x.clone(), w.clone())))
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn weights(&self) -> &BTreeMap<Element, BigRational> {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &BigRational)> {
        self.weights.iter()
    }

    /// Support in ascending element order.
    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.weights.keys()
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// The least support element.
    pub fn min_support(&self) -> &Element {
        self.weights.keys().next().expect("support is never empty")
    }

    pub fn get(&self, x: &Element) -> BigRational {
        self.weights.get(x).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn get_f64(&self, x: &Element) -> f64 {
        self.weights.get(x).map_or(0.0, rational_to_f64)
    }

    fn same_group(&self, other: &Distribution) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!(
                "distributions on {} and {}",
                self.group, other.group
            )));
        }
        Ok(())
    }

    /// Numerators over the least common denominator.
    fn scaled(&self) -> (BigInt, Vec<(&Element, BigInt)>) {
        let den = self
            .weights
            .values()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let nums = self
            .weights
            .iter()
            .map(|(x, w)| (x, w.numer() * (&den / w.denom())))
            .collect();
        (den, nums)
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact convolution `(p * q)(x) = Σ_y p(x - y) q(y)`.
pub fn convolve(p: &Distribution, q: &Distribution) -> Result<Distribution> {
    p.same_group(q)?;
    let g = &p.group;
    let (dp, np) = p.scaled();
    let (dq, nq) = q.scaled();

    let accumulate = |chunk: &[(&Element, BigInt)]| {
        let mut acc: HashMap<Element, BigInt> = HashMap::new();
        for (x, a) in chunk {
            for (y, b) in &nq {
                *acc.entry(g.add_unchecked(x, y)).or_insert_with(BigInt::zero) += a * b;
            }
        }
        acc
    };
    let acc = if np.len() >= PARALLEL_THRESHOLD {
        np.par_chunks(16)
            .map(accumulate)
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert_with(BigInt::zero) += v;
                }
                a
            })
    } else {
        accumulate(&np)
    };

    let den = dp * dq;
    let weights = acc
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, BigRational::new(v, den.clone())))
        .collect();
    Ok(Distribution {
        group: g.clone(),
        weights,
    })
}

/// `p^(n)` by binary exponentiation; `n = 0` gives `δ_0`.
pub fn convolution_power(p: &Distribution, n: u64) -> Distribution {
    let mut result = Distribution::delta(&p.group, &p.group.zero()).expect("point mass");
    let mut base = p.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = convolve(&result, &base).expect("same group");
        }
        k >>= 1;
        if k > 0 {
            base = convolve(&base, &base).expect("same group");
        }
    }
    result
}

/// The sequence `p^(1), p^(2), …` by repeated convolution.
pub fn powers(p: &Distribution) -> impl Iterator<Item = Distribution> + '_ {
    std::iter::successors(Some(p.clone()), move |prev| {
        Some(convolve(prev, p).expect("same group"))
    })
}

/// `f_*(p)(y) = Σ_{f(x) = y} p(x)`.
pub fn pushforward(p: &Distribution, f: &Homomorphism) -> Result<Distribution> {
    if f.source() != &p.group {
        return Err(Error::GroupMismatch(format!(
            "map from {} applied to a distribution on {}",
            f.source(),
            p.group
        )));
    }
    let entries = p
        .iter()
        .map(|(x, w)| Ok((f.apply(x)?, w.clone())))
        .collect::<Result<Vec<_>>>()?;
    Distribution::new(f.target().clone(), entries)
}

/// The image of `p` on `Tor(G)`.
pub fn torsion_pushforward(p: &Distribution) -> Distribution {
    pushforward(p, &Homomorphism::torsion_projection(&p.group)).expect("projection from p's group")
}

/// Positions `0 = X_0, X_1, …, X_n` of one walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkPath {
    pub positions: Vec<Element>,
}

impl WalkPath {
    pub fn end(&self) -> &Element {
        self.positions.last().expect("path starts at the identity")
    }
}

/// A seeded walk of `n` steps. Increments are drawn by inverse CDF over the
/// support in ascending element order.
pub fn sample_path(p: &Distribution, n: usize, seed: u64) -> WalkPath {
    sample_path_stream(p, n, seed, 0)
}

/// As [`sample_path`], drawing from the ChaCha stream `stream` of `seed`.
pub fn sample_path_stream(p: &Distribution, n: usize, seed: u64, stream: u64) -> WalkPath {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let support: Vec<&Element> = p.support().collect();
    let mut cdf = Vec::with_capacity(support.len());
    let mut acc = BigRational::zero();
    for w in p.weights.values() {
        acc += w;
        cdf.push(rational_to_f64(&acc));
    }
    let g = &p.group;
    let mut positions = Vec::with_capacity(n + 1);
    let mut here = g.zero();
    positions.push(here.clone());
    for _ in 0..n {
        let u: f64 = rng.gen();
        let i = cdf.partition_point(|&c| c <= u).min(support.len() - 1);
        here = g.add_unchecked(&here, support[i]);
        positions.push(here.clone());
    }
    WalkPath { positions }
}
