use std::cmp::Ordering;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ClassFunction, LinGroup};
use crate::exact::sig12;
use crate::group::{ConjugacyPartition, GroupRef};
use crate::{Error, Result};

pub const MAX_TABLE_ORDER: usize = 256;
const ATTEMPTS: u64 = 8;
const ORTHONORMALITY_TOLERANCE: f64 = 1e-8;
const DIMENSION_TOLERANCE: f64 = 1e-6;

/// Irreducible characters of a group, one row per character and one column
/// per conjugacy class.
///
/// Rows are ordered with the linear characters first, in the order of
/// [`LinGroup`], then by dimension and finally lexicographically by value.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: GroupRef,
    classes: ConjugacyPartition,
    dims: Vec<usize>,
    values: Vec<Vec<Complex64>>,
    linear_count: usize,
    seed: u64,
}

impl CharacterTable {
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyPartition {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `χ_i` at the class with index `class`.
    pub fn value(&self, i: usize, class: usize) -> Complex64 {
        self.values[i][class]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.values[i]
    }

    /// `χ_i` at the element `x`.
    pub fn value_at(&self, i: usize, x: usize) -> Complex64 {
        self.values[i][self.classes.class_of(x)]
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction::from_class_values(&self.group, &self.values[i])
    }

    /// Rows `0..linear_count()` are exactly the linear characters.
    pub fn linear_count(&self) -> usize {
        self.linear_count
    }

    pub fn is_linear(&self, i: usize) -> bool {
        self.dims[i] == 1
    }

    /// Seed that produced a non-degenerate decomposition.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Largest deviation of `⟨χ_i, χ_j⟩` from `δ_ij`.
    pub fn orthonormality_residual(&self) -> f64 {
        let sizes = self.classes.sizes();
        let n = self.group.order() as f64;
        let mut worst: f64 = 0.0;
        for i in 0..self.len() {
            for j in 0..self.len() {
                let s: Complex64 = (0..sizes.len())
                    .map(|c| self.values[i][c].conj() * self.values[j][c] * sizes[c] as f64)
                    .sum::<Complex64>()
                    / n;
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }

    /// Largest deviation of `Σ_χ conj χ(gᵢ) χ(gⱼ)` from `δ_ij |G|/|Cᵢ|`.
    pub fn column_residual(&self) -> f64 {
        let sizes = self.classes.sizes();
        let n = self.group.order() as f64;
        let mut worst: f64 = 0.0;
        for a in 0..sizes.len() {
            for b in 0..sizes.len() {
                let s: Complex64 = (0..self.len()).map(|i| self.values[i][a].conj() * self.values[i][b]).sum();
                let target = if a == b { n / sizes[a] as f64 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }

    pub fn to_json(&self) -> CharacterTableJson {
        CharacterTableJson {
            order: self.group.order(),
            seed: self.seed,
            class_representatives: self.classes.representatives(),
            class_sizes: self.classes.sizes(),
            dims: self.dims.clone(),
            characters: self
                .values
                .iter()
                .map(|row| row.iter().map(|z| [sig12(clean(z.re)), sig12(clean(z.im))]).collect())
                .collect(),
        }
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

/// Serialised table; each value is `[re, im]`.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTableJson {
    pub order: usize,
    pub seed: u64,
    pub class_representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub dims: Vec<usize>,
    pub characters: Vec<Vec<[f64; 2]>>,
}

/// Computes all irreducible characters.
///
/// A random hermitian element `L = Σ c_j K_j + conj(c_j) K_{j*}` of the
/// centre of the group algebra (with `K_j` the class sums and `j*` the
/// inverse class) acts on the centre in the orthonormal basis
/// `K_i / √|C_i|`. Its eigenvectors are the central primitive idempotents,
/// whose coordinates are proportional to `conj χ(g_i) √|C_i|`. If two
/// eigenvalues collide the next seed is tried.
pub fn character_table(group: &GroupRef, seed: u64) -> Result<CharacterTable> {
    if group.order() > MAX_TABLE_ORDER {
        return Err(Error::CapExceeded { order: group.order(), cap: MAX_TABLE_ORDER });
    }
    let classes = group.classes().clone();
    let structure = class_structure(group, &classes);
    let lin = LinGroup::new(group);
    let mut last_reason = String::new();
    for attempt in 0..ATTEMPTS {
        let s = seed.wrapping_add(attempt);
        match attempt_table(group, &classes, &structure, &lin, s) {
            Ok(table) => return Ok(table),
            Err(reason) => last_reason = reason,
        }
    }
    Err(Error::CharacterTable { attempts: ATTEMPTS as u32, reason: last_reason })
}

/// `c[j][i][l]`: number of ways to write the representative of class `l`
/// as `xy` with `x ∈ C_j`, `y ∈ C_i`.
fn class_structure(group: &GroupRef, classes: &ConjugacyPartition) -> Vec<Vec<Vec<f64>>> {
    let k = classes.len();
    let sizes = classes.sizes();
    let mut c = vec![vec![vec![0.0; k]; k]; k];
    for j in 0..k {
        for i in 0..k {
            let mut counts = vec![0usize; k];
            for &x in classes.class(j) {
                for &y in classes.class(i) {
                    counts[classes.class_of(group.mul(x, y))] += 1;
                }
            }
            for l in 0..k {
                c[j][i][l] = counts[l] as f64 / sizes[l] as f64;
            }
        }
    }
    c
}

fn attempt_table(
    group: &GroupRef,
    classes: &ConjugacyPartition,
    structure: &[Vec<Vec<f64>>],
    lin: &LinGroup,
    seed: u64,
) -> std::result::Result<CharacterTable, String> {
    let k = classes.len();
    let n = group.order();
    let sizes = classes.sizes();
    let reps = classes.representatives();
    let inverse_class: Vec<usize> = reps.iter().map(|&r| classes.class_of(group.inv(r))).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<Complex64> =
        (0..k).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();

    // L[l][i] = Σ_j (c_j c[j][i][l] + conj(c_j) c[j*][i][l]) √(h_l / h_i)
    let mut l_matrix = DMatrix::<Complex64>::zeros(k, k);
    for j in 0..k {
        let jj = inverse_class[j];
        for i in 0..k {
            for l in 0..k {
                let scale = (sizes[l] as f64 / sizes[i] as f64).sqrt();
                l_matrix[(l, i)] += (coeffs[j] * structure[j][i][l] + coeffs[j].conj() * structure[jj][i][l]) * scale;
            }
        }
    }
    let hermitian = (&l_matrix + l_matrix.adjoint()) * Complex64::new(0.5, 0.0);
    let eigen = SymmetricEigen::new(hermitian);

    let mut eigenvalues: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    let spread = eigenvalues.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if eigenvalues.windows(2).any(|w| w[1] - w[0] < 1e-6 * spread) {
        return Err(format!("eigenvalue collision with seed {seed}"));
    }

    let norm = (n as f64).sqrt();
    let mut rows: Vec<(usize, Vec<Complex64>)> = Vec::with_capacity(k);
    for col in 0..k {
        let v = eigen.eigenvectors.column(col);
        let v0 = v[0];
        if v0.norm() < 1e-9 {
            return Err("eigenvector vanishes at the identity class".into());
        }
        let phase = v0 / v0.norm();
        let row: Vec<Complex64> = (0..k).map(|i| v[i].conj() * phase * norm / (sizes[i] as f64).sqrt()).collect();
        let d = row[0].re;
        let rounded = d.round();
        if (d - rounded).abs() > DIMENSION_TOLERANCE || rounded < 1.0 {
            return Err(format!("non-integral dimension {d}"));
        }
        rows.push((rounded as usize, row));
    }
    let total: usize = rows.iter().map(|(d, _)| d * d).sum();
    if total != n {
        return Err(format!("sum of squared dimensions is {total}, not {n}"));
    }

    // Replace computed linear rows by exact values in Lin(G) order.
    let mut linear_rows = Vec::with_capacity(lin.len());
    for chi in 0..lin.len() {
        let exact: Vec<Complex64> = reps.iter().map(|&r| lin.value(chi, r)).collect();
        let (pos, err) = rows
            .iter()
            .enumerate()
            .filter(|(_, (d, _))| *d == 1)
            .map(|(p, (_, row))| (p, max_diff(row, &exact)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .ok_or("missing linear character")?;
        if err > 1e-6 {
            return Err(format!("linear character {chi} not matched (error {err})"));
        }
        rows.swap_remove(pos);
        linear_rows.push((1usize, exact));
    }
    if rows.iter().any(|(d, _)| *d == 1) {
        return Err("more linear rows than linear characters".into());
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| lexicographic(&a.1, &b.1)));
    linear_rows.extend(rows);

    let (dims, values): (Vec<usize>, Vec<Vec<Complex64>>) = linear_rows.into_iter().unzip();
    let table =
        CharacterTable { group: group.clone(), classes: classes.clone(), dims, values, linear_count: lin.len(), seed };
    let residual = table.orthonormality_residual();
    if residual > ORTHONORMALITY_TOLERANCE {
        return Err(format!("orthonormality residual {residual:e}"));
    }
    Ok(table)
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn lexicographic(a: &[Complex64], b: &[Complex64]) -> Ordering {
    let key = |x: f64| (x * 1e9).round() as i64;
    for (x, y) in a.iter().zip(b) {
        let ord = key(x.re).cmp(&key(y.re)).then(key(x.im).cmp(&key(y.im)));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn dims(spec: GroupSpec) -> Vec<usize> {
        let g = spec.build().unwrap();
        let t = character_table(&g, 7).unwrap();
        assert!(t.orthonormality_residual() < 1e-8);
        assert!(t.column_residual() < 1e-8);
        assert_eq!(t.dims().iter().map(|d| d * d).sum::<usize>(), g.order());
        t.dims().to_vec()
    }

    #[test]
    fn cyclic_two() {
        let g = GroupSpec::Cyclic { n: 2 }.build().unwrap();
        let t = character_table(&g, 0).unwrap();
        assert_eq!(t.row(0), &[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert_eq!(t.row(1), &[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
    }

    #[test]
    fn dimension_multisets() {
        assert_eq!(dims(GroupSpec::symmetric(3)), vec![1, 1, 2]);
        assert_eq!(dims(GroupSpec::Quaternion8), vec![1, 1, 1, 1, 2]);
        assert_eq!(dims(GroupSpec::symmetric(4)), vec![1, 1, 2, 3, 3]);
        assert_eq!(dims(GroupSpec::sl2_3()), vec![1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(dims(GroupSpec::alternating(5)), vec![1, 3, 3, 4, 5]);
        assert_eq!(dims(GroupSpec::Heisenberg { p: 3 }), [vec![1; 9], vec![3, 3]].concat());
        assert_eq!(dims(GroupSpec::Cyclic { n: 7 }), vec![1; 7]);
    }

    #[test]
    fn linear_rows_follow_lin_order() {
        let g = GroupSpec::Dihedral { order: 12 }.build().unwrap();
        let t = character_table(&g, 3).unwrap();
        let lin = LinGroup::new(&g);
        assert_eq!(t.linear_count(), lin.len());
        for k in 0..lin.len() {
            for x in 0..g.order() {
                assert_eq!(t.value_at(k, x), lin.value(k, x));
            }
        }
    }

    #[test]
    fn seed_independence_of_the_table() {
        let g = GroupSpec::Dihedral { order: 16 }.build().unwrap();
        let a = character_table(&g, 1).unwrap();
        let b = character_table(&g, 99).unwrap();
        for i in 0..a.len() {
            assert!(max_diff(a.row(i), b.row(i)) < 1e-8);
        }
    }
}
