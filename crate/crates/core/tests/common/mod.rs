//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use monoball::exact::Q;
use monoball::group::{GroupRef, GroupSpec, GroupSubset};
use monoball::setops::{normalize_set, NormalizeOptions};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn cyclic(n: usize) -> GroupSpec {
    GroupSpec::Cyclic { n }
}

pub fn dihedral(order: usize) -> GroupSpec {
    GroupSpec::Dihedral { order }
}

pub fn product(factors: Vec<GroupSpec>) -> GroupSpec {
    GroupSpec::Product { factors }
}

pub fn build(spec: &GroupSpec) -> GroupRef {
    spec.build().expect("fixture group builds")
}

/// Named groups of order at most 60, abelian and not.
pub fn small_groups() -> Vec<(&'static str, GroupSpec)> {
    vec![
        ("C12", cyclic(12)),
        ("C30", cyclic(30)),
        ("C2xC6", product(vec![cyclic(2), cyclic(6)])),
        ("S3", GroupSpec::symmetric(3)),
        ("D8", dihedral(8)),
        ("D20", dihedral(20)),
        ("Q8", GroupSpec::Quaternion8),
        ("A4", GroupSpec::alternating(4)),
        ("S4", GroupSpec::symmetric(4)),
        ("SL(2,3)", GroupSpec::sl2_3()),
        ("Heis(3)", GroupSpec::Heisenberg { p: 3 }),
        ("C3xQ8", product(vec![cyclic(3), GroupSpec::Quaternion8])),
        ("A5", GroupSpec::alternating(5)),
    ]
}

pub fn subset(g: &GroupRef, elements: impl IntoIterator<Item = usize>) -> GroupSubset {
    GroupSubset::new(g, elements).expect("fixture elements in range")
}

/// A small generating set found by scanning elements in order.
pub fn generators(g: &GroupRef) -> Vec<usize> {
    let mut gens = Vec::new();
    for x in 1..g.order() {
        if g.generated_by(&gens).count_ones(..) == g.order() {
            break;
        }
        if !g.generated_by(&gens).contains(x) {
            gens.push(x);
        }
    }
    gens
}

/// Symmetric, conjugation-closed generating set containing the identity.
pub fn normal_generating_set(g: &GroupRef) -> GroupSubset {
    normalize_set(&subset(g, generators(g)), NormalizeOptions::all())
}

/// Interval `{−m, …, m}` in `Z/n`.
pub fn interval(g: &GroupRef, m: usize) -> GroupSubset {
    let n = g.order();
    subset(g, (0..=m).flat_map(|j| [j % n, (n - j % n) % n]))
}

/// `AB` by direct enumeration.
pub fn brute_product(g: &GroupRef, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| g.mul(x, y))).collect()
}

pub fn brute_inverse(g: &GroupRef, a: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter().map(|&x| g.inv(x)).collect()
}

pub fn set_of(a: &GroupSubset) -> BTreeSet<usize> {
    a.iter().collect()
}

/// `|Aⁿ|` for `n = 1..=n_max`: layer `n` of the Cayley graph walk where
/// every step multiplies on the right by an element of `A`.
pub fn bfs_power_sizes(g: &GroupRef, a: &[usize], n_max: usize) -> Vec<usize> {
    let mut layer: BTreeSet<usize> = a.iter().copied().collect();
    let mut sizes = vec![layer.len()];
    for _ in 1..n_max {
        let mut next = BTreeSet::new();
        for &x in &layer {
            for &s in a {
                next.insert(g.mul(x, s));
            }
        }
        layer = next;
        sizes.push(layer.len());
    }
    sizes
}

/// Distance from `t` to the nearest integer.
pub fn circle(t: Q) -> Q {
    let f = t - t.floor();
    f.min(Q::one() - f)
}

/// Elements where every phase vector is within `radius` of an integer.
pub fn brute_bohr(order: usize, phases: &[Vec<Q>], radius: Q) -> BTreeSet<usize> {
    (0..order).filter(|&x| phases.iter().all(|p| circle(p[x]) <= radius)).collect()
}

/// Pointwise sums of `k` phase vectors drawn from `set`, with repetition.
pub fn kfold_phases(set: &[Vec<Q>], k: usize) -> Vec<Vec<Q>> {
    let reduce = |v: Vec<Q>| v.into_iter().map(|t| t - t.floor()).collect::<Vec<Q>>();
    let mut acc: BTreeSet<Vec<Q>> = BTreeSet::new();
    acc.insert(vec![Q::zero(); set[0].len()]);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for v in &acc {
            for p in set {
                next.insert(reduce(v.iter().zip(p).map(|(a, b)| a + b).collect()));
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random class function with `f(x⁻¹) = conj f(x)`, given per class.
pub fn random_hermitian(g: &GroupRef, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let classes = g.classes();
    let mut values = vec![Complex64::zero(); classes.len()];
    let mut done = vec![false; classes.len()];
    for c in 0..classes.len() {
        if done[c] {
            continue;
        }
        let inv = classes.class_of(g.inv(classes.class(c)[0]));
        let re = rng.random_range(-1.0..1.0);
        if inv == c {
            values[c] = Complex64::new(re, 0.0);
        } else {
            let z = Complex64::new(re, rng.random_range(-1.0..1.0));
            values[c] = z;
            values[inv] = z.conj();
            done[inv] = true;
        }
        done[c] = true;
    }
    values
}

/// Per-element values of a class function given per class.
pub fn expand(g: &GroupRef, class_values: &[Complex64]) -> Vec<Complex64> {
    let classes = g.classes();
    (0..g.order()).map(|x| class_values[classes.class_of(x)]).collect()
}

/// `E_y f(y) h(y⁻¹x)` by direct summation.
pub fn brute_convolve(g: &GroupRef, f: &[Complex64], h: &[Complex64]) -> Vec<Complex64> {
    let n = g.order();
    (0..n).map(|x| (0..n).map(|y| f[y] * h[g.mul(g.inv(y), x)]).sum::<Complex64>() / n as f64).collect()
}

/// `E_x conj(f(x)) h(x)`.
pub fn brute_inner(f: &[Complex64], h: &[Complex64]) -> Complex64 {
    f.iter().zip(h).map(|(a, b)| a.conj() * b).sum::<Complex64>() / f.len() as f64
}
