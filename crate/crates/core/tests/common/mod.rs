//! Strategies and brute-force checks shared by the property suites and the
//! acceptance harness.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use dancewalk::dance::{analyze_dance, analyze_dance_at, char_fn, omega_contains, omega_finite, theta};
use dancewalk::group::{torsion_dual, Element, GroupSpec, Homomorphism, Subgroup};
use dancewalk::intlinalg::{
    affine_dim, bottom_row_unimodular, hnf, snf, twist_to_coordinates, AffinePointSet, IntMatrix,
    UnimodularMatrix,
};
use dancewalk::llt::{classify, Period, Verdict};
use dancewalk::measure::{convolution_power, powers, pushforward, Distribution};

pub const CASES: u32 = 200;

pub type Check = std::result::Result<(), TestCaseError>;

pub fn config(seed: u64) -> Config {
    Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Runs `check` on `CASES` inputs drawn from `strategy` with a fixed seed.
pub fn run<S, F>(seed: u64, strategy: S, check: F) -> std::result::Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Check,
{
    TestRunner::new(config(seed))
        .run(&strategy, check)
        .map_err(|e| e.to_string())
}

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_rows(cols, rows.iter().map(|r| r.iter().copied())).unwrap()
}

pub fn cyclic_walk(m: i64, pts: &[i64]) -> Distribution {
    let g = GroupSpec::cyclic(m).unwrap();
    let s: Vec<Element> = pts.iter().map(|&x| g.element(&[x], &[]).unwrap()).collect();
    Distribution::uniform(&g, &s).unwrap()
}

// ---------------------------------------------------------------------------
// Strategies

pub fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| (vec(vec(-20i64..=20, c), r), Just(c)))
        .prop_map(|(rows, c)| matrix(&rows, c))
}

pub fn nonzero_vector() -> impl Strategy<Value = Vec<BigInt>> {
    vec(-30i64..=30, 1..=5)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| ints(&v))
}

/// A product of elementary row operations on the `k × k` identity.
pub fn unimodular(k: usize) -> BoxedStrategy<UnimodularMatrix> {
    if k == 0 {
        return Just(UnimodularMatrix::identity(0)).boxed();
    }
    vec((0..k, 0..k, -2i64..=2, 0u8..3), 0..8).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        for (i, j, c, kind) in ops {
            match kind {
                0 if i != j => {
                    let src = m[j].clone();
                    for (x, y) in m[i].iter_mut().zip(src) {
                        *x += c * y;
                    }
                }
                1 => m.swap(i, j),
                _ => m[i].iter_mut().for_each(|x| *x = -*x),
            }
        }
        UnimodularMatrix::new(matrix(&m, k)).unwrap()
    })
    .boxed()
}

/// Point sets in `Z^k`, about half of them lying in a proper affine subspace.
pub fn point_set() -> impl Strategy<Value = AffinePointSet> {
    (1usize..=4)
        .prop_flat_map(|k| (Just(k), 0..=k))
        .prop_flat_map(|(k, d)| {
            (
                Just(k),
                vec(-5i64..=5, k),
                vec(vec(-3i64..=3, k), d),
                vec(vec(-2i64..=2, d), 1..=6),
            )
        })
        .prop_map(|(k, base, dirs, coeffs)| {
            let pts = coeffs
                .iter()
                .map(|c| {
                    (0..k)
                        .map(|i| {
                            BigInt::from(
                                base[i] + c.iter().zip(&dirs).map(|(ci, v)| ci * v[i]).sum::<i64>(),
                            )
                        })
                        .collect()
                })
                .collect();
            AffinePointSet::new(k, pts).unwrap()
        })
}

/// Finite groups `Z_m1 × … × Z_mt` of order at most `max_order`.
pub fn finite_group(max_order: i64) -> impl Strategy<Value = GroupSpec> {
    vec(2i64..=9, 1..=3).prop_map(move |mut m| {
        while m.len() > 1 && m.iter().product::<i64>() > max_order {
            m.pop();
        }
        m[0] = m[0].min(max_order);
        GroupSpec::new(m, 0).unwrap()
    })
}

/// Groups `Z_m1 × … × Z_mt × Z^k` with `t, k ≤ 2`, never trivial.
pub fn mixed_group() -> impl Strategy<Value = GroupSpec> {
    (vec(2i64..=6, 0..=2), 0usize..=2).prop_map(|(m, k)| {
        let k = if m.is_empty() && k == 0 { 1 } else { k };
        GroupSpec::new(m, k).unwrap()
    })
}

/// Distributions on `g` with at most `max_support` points, integer weights in
/// `1..=4` and free coordinates in `[-span, span]`.
pub fn walk_on(g: GroupSpec, max_support: usize, span: i64) -> impl Strategy<Value = Distribution> {
    let point = (vec(0i64..60, g.torsion_len()), vec(-span..=span, g.free_rank()), 1i64..=4);
    vec(point, 1..=max_support).prop_map(move |pts| {
        let total: i64 = pts.iter().map(|p| p.2).sum();
        Distribution::new(
            g.clone(),
            pts.iter().map(|(a, b, w)| {
                (
                    g.element(a, b).unwrap(),
                    BigRational::new(BigInt::from(*w), BigInt::from(total)),
                )
            }),
        )
        .unwrap()
    })
}

pub fn finite_walk(max_order: i64) -> impl Strategy<Value = Distribution> {
    finite_group(max_order).prop_flat_map(|g| walk_on(g, 4, 0))
}

pub fn mixed_walk() -> impl Strategy<Value = Distribution> {
    mixed_group().prop_flat_map(|g| walk_on(g, 4, 2))
}

/// An automorphism `(a, b) ↦ (u·a + C b, Φ b)` of `g` with `u` a unit per
/// torsion coordinate, `C` an arbitrary shear into the torsion part and `Φ`
/// unimodular.
pub fn automorphism(g: GroupSpec) -> impl Strategy<Value = Homomorphism> {
    let t = g.torsion_len();
    let k = g.free_rank();
    (vec(1i64..60, t), vec(vec(0i64..6, k), t), unimodular(k)).prop_map(move |(u, shear, phi)| {
        let n = t + k;
        let mut m = vec![vec![0i64; n]; n];
        for (i, &mi) in g.moduli().iter().enumerate() {
            let mut unit = u[i] % mi;
            while unit.gcd(&mi) != 1 {
                unit = (unit + 1) % mi;
            }
            m[i][i] = unit;
            m[i][t..].copy_from_slice(&shear[i]);
        }
        let phi = phi.matrix().to_i64_rows().unwrap();
        for r in 0..k {
            m[t + r][t..].copy_from_slice(&phi[r]);
        }
        Homomorphism::new(g.clone(), g.clone(), matrix(&m, n)).unwrap()
    })
}

// ---------------------------------------------------------------------------
// Brute-force helpers

fn det_is_unit(m: &IntMatrix) -> bool {
    m.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
}

/// Closure of `{0}` under adding the generators: the subgroup they generate
/// in a finite group.
pub fn closure(g: &GroupSpec, gens: &[Element]) -> BTreeSet<Element> {
    let mut seen = BTreeSet::from([g.zero()]);
    let mut queue = VecDeque::from([g.zero()]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = g.add(&x, s).unwrap();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `{x : x − n·x0 ∈ H}` listed by brute force over a finite group.
fn coset(g: &GroupSpec, h: &BTreeSet<Element>, x0: &Element, n: i64) -> BTreeSet<Element> {
    let shift = g.scale(n, x0).unwrap();
    h.iter().map(|y| g.add(y, &shift).unwrap()).collect()
}

/// Walk subgroup computed directly from its definition on a finite group.
pub fn brute_walk_subgroup(p: &Distribution) -> BTreeSet<Element> {
    let g = p.group();
    let x0 = p.min_support();
    let diffs: Vec<Element> = p.support().map(|x| g.sub(x, x0).unwrap()).collect();
    closure(g, &diffs)
}

/// `Σ k_i x_i / m_i` as a numerator over `lcm(m)`, reduced.
fn phase_numerator(g: &GroupSpec, k: &[i64], x: &Element) -> i64 {
    let l = g.moduli().iter().fold(1i64, |a, m| a.lcm(m));
    let s: i64 = g
        .moduli()
        .iter()
        .zip(k)
        .zip(x.torsion())
        .map(|((m, ki), xi)| ki * xi * (l / m))
        .sum();
    s.rem_euclid(l)
}

fn lcm_of_moduli(g: &GroupSpec) -> i64 {
    g.moduli().iter().fold(1i64, |a, m| a.lcm(m))
}

/// Positions reachable in exactly `n` steps, for `n = 0..=steps`.
fn exact_reach(p: &Distribution, steps: usize) -> Vec<BTreeSet<Element>> {
    let g = p.group();
    let support: Vec<Element> = p.support().cloned().collect();
    let mut out = vec![BTreeSet::from([g.zero()])];
    for _ in 0..steps {
        let next = out
            .last()
            .unwrap()
            .iter()
            .flat_map(|x| support.iter().map(move |s| g.add(x, s).unwrap()))
            .collect();
        out.push(next);
    }
    out
}

// ---------------------------------------------------------------------------
// Checks

pub fn check_factorizations(m: IntMatrix) -> Check {
    let h = hnf(&m);
    prop_assert_eq!(h.u.matrix().checked_mul(&m).unwrap(), h.h.clone());
    prop_assert!(det_is_unit(h.u.matrix()));
    prop_assert_eq!(h.rank, m.rank());
    let mut last_pivot = None;
    for r in 0..h.h.rows() {
        let row = h.h.row(r);
        match row.iter().position(|x| !x.is_zero()) {
            None => prop_assert!(r >= h.rank, "zero row above a pivot row"),
            Some(c) => {
                prop_assert!(r < h.rank);
                prop_assert_eq!(h.pivots[r], c);
                prop_assert!(last_pivot.is_none_or(|p| c > p));
                prop_assert!(row[c].is_positive());
                for above in 0..r {
                    let v = &h.h.row(above)[c];
                    prop_assert!(!v.is_negative() && v < &row[c], "entry above pivot not reduced");
                }
                last_pivot = Some(c);
            }
        }
    }

    let s = snf(&m);
    let product = s.u.matrix().checked_mul(&m).unwrap().checked_mul(s.v.matrix()).unwrap();
    prop_assert_eq!(&product, &s.d);
    prop_assert!(det_is_unit(s.u.matrix()) && det_is_unit(s.v.matrix()));
    prop_assert!(s.d.is_diagonal());
    let diag = s.diagonal();
    prop_assert!(diag.iter().all(|x| !x.is_negative()));
    for w in diag.windows(2) {
        prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
    }
    prop_assert_eq!(s.rank(), m.rank());
    Ok(())
}

/// HNF is a lattice invariant: left multiplication by a unimodular matrix
/// leaves it unchanged.
pub fn check_hnf_canonical((m, u): (IntMatrix, UnimodularMatrix)) -> Check {
    let moved = u.matrix().checked_mul(&m).unwrap();
    prop_assert_eq!(hnf(&moved).h, hnf(&m).h);
    Ok(())
}

pub fn hnf_canonical_input() -> impl Strategy<Value = (IntMatrix, UnimodularMatrix)> {
    int_matrix().prop_flat_map(|m| {
        let r = m.rows();
        (Just(m), unimodular(r))
    })
}

pub fn check_bottom_row(a: Vec<BigInt>) -> Check {
    let m = bottom_row_unimodular(&a).unwrap();
    let k = a.len();
    prop_assert_eq!((m.rows(), m.cols()), (k, k));
    prop_assert_eq!(m.row(k - 1), &a[..]);
    let g = a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let det = m.determinant().unwrap();
    if k == 1 {
        prop_assert_eq!(det, a[0].clone());
    } else {
        prop_assert_eq!(det, g);
    }
    Ok(())
}

pub fn check_twist(s: AffinePointSet) -> Check {
    let t = twist_to_coordinates(&s).unwrap();
    let k = s.ambient_dim();
    let d = affine_dim(&s).unwrap();
    prop_assert_eq!(t.dim, d);
    prop_assert!(det_is_unit(t.phi.matrix()));
    let inv = t.phi.matrix().integer_inverse();
    prop_assert!(inv.is_some(), "twist has no integer inverse");
    prop_assert_eq!(inv.unwrap().checked_mul(t.phi.matrix()).unwrap(), IntMatrix::identity(k));
    prop_assert_eq!(t.offset.len(), if d == k { 0 } else { k - d });
    let image = s.transform(t.phi.matrix());
    for p in image.points() {
        prop_assert_eq!(&p[d..], &t.offset[..]);
    }
    prop_assert_eq!(affine_dim(&image.project_leading(d)).unwrap(), d);
    Ok(())
}

/// Everything `analyze_dance` reports is independent of the support point
/// chosen as base.
pub fn check_base_point(p: Distribution) -> Check {
    let reference = analyze_dance(&p).unwrap();
    let probes: Vec<Element> = convolution_power(&p, 2).support().cloned().collect();
    for x0 in p.support() {
        let d = analyze_dance_at(&p, x0).unwrap();
        prop_assert_eq!(&d.walk_subgroup, &reference.walk_subgroup);
        prop_assert_eq!(d.rank_d, reference.rank_d);
        prop_assert_eq!(&d.normalization_c, &reference.normalization_c);
        prop_assert_eq!(&d.omega_invariants, &reference.omega_invariants);
        for n in 0..4u64 {
            for x in probes.iter().chain(p.support()) {
                prop_assert_eq!(d.theta(n, x).unwrap(), reference.theta(n, x).unwrap());
            }
        }
    }
    Ok(())
}

/// `supp p^(n) ⊆ {Θ(n,·) > 0}` for small `n`.
pub fn check_support_inclusion(p: Distribution) -> Check {
    let data = analyze_dance(&p).unwrap();
    let steps = if p.group().is_finite() { 15 } else { 8 };
    for (i, pn) in powers(&p).take(steps).enumerate() {
        let n = i as u64 + 1;
        for x in pn.support() {
            prop_assert!(data.theta(n, x).unwrap().is_positive(), "n = {}, x = {}", n, x);
        }
    }
    Ok(())
}

/// On a finite group the inclusion becomes equality once `n ≥ |G_p| − 1`.
pub fn check_support_equality(p: Distribution) -> Check {
    let data = analyze_dance(&p).unwrap();
    let n = 50u64;
    let pn = convolution_power(&p, n);
    let live: BTreeSet<Element> = p
        .group()
        .elements()
        .unwrap()
        .into_iter()
        .filter(|x| data.theta(n, x).unwrap().is_positive())
        .collect();
    let support: BTreeSet<Element> = pn.support().cloned().collect();
    prop_assert_eq!(support, live);
    Ok(())
}

pub fn transport_input() -> impl Strategy<Value = (Distribution, Homomorphism)> {
    mixed_walk().prop_flat_map(|p| {
        let g = p.group().clone();
        (Just(p), automorphism(g))
    })
}

/// `Θ_{T_*p}(n, T x) = Θ_p(n, x)` for an automorphism `T`.
pub fn check_transport((p, t): (Distribution, Homomorphism)) -> Check {
    let q = pushforward(&p, &t).unwrap();
    let dp = analyze_dance(&p).unwrap();
    let dq = analyze_dance(&q).unwrap();
    prop_assert_eq!(&dp.normalization_c, &dq.normalization_c);
    prop_assert_eq!(dp.rank_d, dq.rank_d);
    let g = p.group();
    let mut probes: BTreeSet<Element> = convolution_power(&p, 3).support().cloned().collect();
    for x in p.support() {
        probes.insert(g.add(x, &g.element(&vec![1; g.torsion_len()], &vec![0; g.free_rank()]).unwrap()).unwrap());
        probes.insert(g.neg(x).unwrap());
    }
    for n in 0..4u64 {
        for x in &probes {
            let tx = t.apply(x).unwrap();
            prop_assert_eq!(theta(&p, n, x).unwrap(), theta(&q, n, &tx).unwrap());
        }
    }
    Ok(())
}

/// `Ω(p)` agrees with a direct phase comparison and with the annihilator of a
/// brute-force `G_p`, and the annihilator of `Ω(p)` is `G_p` again.
pub fn check_duality(p: Distribution) -> Check {
    let g = p.group().clone();
    let data = analyze_dance(&p).unwrap();
    let gp = brute_walk_subgroup(&p);
    let gp_listed: BTreeSet<Element> = data.walk_subgroup.elements().unwrap().into_iter().collect();
    prop_assert_eq!(&gp_listed, &gp);

    let omega: BTreeSet<Element> = omega_finite(&data).unwrap().elements().unwrap().into_iter().collect();
    let l = lcm_of_moduli(&g);
    for xi in torsion_dual(&g) {
        let k = g.element(xi.torsion_chars(), &[]).unwrap();
        let phases: BTreeSet<i64> = p.support().map(|x| phase_numerator(&g, xi.torsion_chars(), x)).collect();
        let same_phase = phases.len() == 1;
        let kills_gp = gp.iter().all(|h| phase_numerator(&g, xi.torsion_chars(), h) == 0);
        prop_assert_eq!(same_phase, kills_gp);
        prop_assert_eq!(omega_contains(&p, &xi).unwrap(), same_phase);
        prop_assert_eq!(omega.contains(&k), same_phase);
        let modulus = char_fn(&p, &xi).unwrap().norm();
        prop_assert!(same_phase == ((modulus - 1.0).abs() < 1e-9), "|p̂| = {} with lcm {}", modulus, l);
    }
    let back = omega_finite(&data).unwrap().annihilator().unwrap();
    prop_assert_eq!(back, data.walk_subgroup.clone());
    Ok(())
}

pub fn fourier_input() -> impl Strategy<Value = (Distribution, u64)> {
    (finite_walk(100), 0u64..=20)
}

/// `p^(n)(x) = |G|⁻¹ Σ_ξ p̂(ξ)^n χ_ξ(−x)` within `1e-9`.
pub fn check_fourier((p, n): (Distribution, u64)) -> Check {
    let g = p.group();
    let order = g.torsion_order().to_f64().unwrap();
    let l = lcm_of_moduli(g) as f64;
    let pn = convolution_power(&p, n);
    let dual: Vec<_> = torsion_dual(g)
        .into_iter()
        .map(|xi| {
            let v = char_fn(&p, &xi).unwrap().powu(n as u32);
            (xi, v)
        })
        .collect();
    for x in g.elements().unwrap() {
        let sum: Complex64 = dual
            .iter()
            .map(|(xi, v)| {
                let angle = -std::f64::consts::TAU * phase_numerator(g, xi.torsion_chars(), &x) as f64 / l;
                v * Complex64::from_polar(1.0, angle)
            })
            .sum();
        let inverted = sum / order;
        prop_assert!(inverted.im.abs() < 1e-9);
        prop_assert!((inverted.re - pn.get_f64(&x)).abs() < 1e-9, "x = {}, n = {}", x, n);
    }
    Ok(())
}

/// For irreducible finite walks of period `s`, the points visited at steps
/// `≡ k (mod s)` form exactly the coset `G_p + k x0`, and these cosets
/// partition `G`.
pub fn check_periodic_classes(p: Distribution) -> Check {
    let class = classify(&p).unwrap();
    if class.irreducible != Verdict::Yes {
        return Ok(());
    }
    let Period::Finite(s) = class.period else {
        return Err(TestCaseError::fail("irreducible walk without a period"));
    };
    let s = s.to_usize().unwrap();
    let g = p.group();
    let order = g.torsion_order().to_usize().unwrap();
    let data = analyze_dance(&p).unwrap();
    let gp = brute_walk_subgroup(&p);
    prop_assert_eq!(data.index(), dancewalk::group::Index::Finite(BigInt::from(s)));

    let reach = exact_reach(&p, 2 * order * s);
    let mut union = BTreeSet::new();
    for k in 0..s {
        let visited: BTreeSet<Element> = reach.iter().skip(k).step_by(s).flatten().cloned().collect();
        let c = coset(g, &gp, &data.base_point, k as i64);
        prop_assert_eq!(&visited, &c, "class {}", k);
        prop_assert!(union.is_disjoint(&c), "cosets overlap");
        union.extend(c);
    }
    prop_assert_eq!(union.len(), order);
    Ok(())
}

/// Irreducibility from one BFS per state and the period as the gcd of return
/// times to 0, compared with [`classify`].
pub fn check_classifier(p: Distribution) -> Check {
    let g = p.group();
    let states = g.elements().unwrap();
    let support: Vec<Element> = p.support().cloned().collect();
    let irreducible = states.iter().all(|start| {
        closure_from(g, start, &support).len() == states.len()
    });
    let class = classify(&p).unwrap();
    if !irreducible {
        prop_assert_eq!(class.irreducible, Verdict::No);
        prop_assert_eq!(class.period, Period::Undefined);
        prop_assert_eq!(class.aperiodic, Verdict::Undetermined);
        return Ok(());
    }
    let reach = exact_reach(&p, 3 * states.len() + 3);
    let zero = g.zero();
    let period = reach
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, r)| r.contains(&zero))
        .fold(0usize, |acc, (n, _)| acc.gcd(&n));
    prop_assert_eq!(class.irreducible, Verdict::Yes);
    prop_assert_eq!(class.period, Period::Finite(BigInt::from(period)));
    prop_assert_eq!(class.aperiodic, if period == 1 { Verdict::Yes } else { Verdict::No });
    Ok(())
}

fn closure_from(g: &GroupSpec, start: &Element, steps: &[Element]) -> BTreeSet<Element> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(x) = queue.pop_front() {
        for s in steps {
            let y = g.add(&x, s).unwrap();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn subgroup_elements(h: &Subgroup) -> BTreeSet<Element> {
    h.elements().unwrap().into_iter().collect()
}

// ---------------------------------------------------------------------------
// Named suites with their seeds, run by both the property tests and the
// acceptance harness.

pub type Suite = (&'static str, fn() -> std::result::Result<(), String>);

pub const SUITES: &[Suite] = &[
    ("SNF/HNF factorization identities", || {
        run(0x5eed_0001, int_matrix(), check_factorizations)?;
        run(0x5eed_0002, hnf_canonical_input(), check_hnf_canonical)
    }),
    ("bottom-row unimodular completion", || run(0x5eed_0003, nonzero_vector(), check_bottom_row)),
    ("twist postconditions", || run(0x5eed_0004, point_set(), check_twist)),
    ("base-point independence", || {
        run(0x5eed_0005, finite_walk(60), check_base_point)?;
        run(0x5eed_0006, mixed_walk(), check_base_point)
    }),
    ("support inclusion", || {
        run(0x5eed_0007, mixed_walk(), check_support_inclusion)?;
        run(0x5eed_0008, finite_walk(50), check_support_inclusion)?;
        run(0x5eed_0009, finite_walk(50), check_support_equality)
    }),
    ("isomorphism transport of the dance function", || {
        run(0x5eed_000a, transport_input(), check_transport)
    }),
    ("Omega equals the annihilator of G_p", || run(0x5eed_000b, finite_walk(200), check_duality)),
    ("Fourier inversion oracle", || run(0x5eed_000c, fourier_input(), check_fourier)),
    ("periodic classes are the dance cosets", || {
        run(0x5eed_000d, finite_walk(40), check_periodic_classes)
    }),
    ("classifier against brute-force Markov analysis", || {
        run(0x5eed_000e, finite_walk(60), check_classifier)
    }),
];
