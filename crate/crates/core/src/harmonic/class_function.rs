use num_complex::Complex64;
use serde::Serialize;

use super::CharacterTable;
use crate::group::{GroupRef, GroupSubset};
use crate::{Error, Result};

/// Tolerance for computed class-function data.
pub const CLASS_TOLERANCE: f64 = 1e-9;

/// A complex function on the elements of a group.
///
/// Most operations expect the values to be constant on conjugacy classes
/// and say so in their errors; constructing a non-class function is allowed
/// so that induction inputs and test fixtures can be validated explicitly.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: GroupRef,
    values: Vec<Complex64>,
}

impl ClassFunction {
    pub fn new(group: &GroupRef, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::Parameter(format!("{} values for a group of order {}", values.len(), group.order())));
        }
        Ok(Self { group: group.clone(), values })
    }

    /// Expands one value per conjugacy class.
    pub fn from_class_values(group: &GroupRef, class_values: &[Complex64]) -> Self {
        let classes = group.classes();
        assert_eq!(class_values.len(), classes.len());
        let values = (0..group.order()).map(|x| class_values[classes.class_of(x)]).collect();
        Self { group: group.clone(), values }
    }

    pub fn constant(group: &GroupRef, c: f64) -> Self {
        Self { group: group.clone(), values: vec![Complex64::new(c, 0.0); group.order()] }
    }

    pub fn indicator(a: &GroupSubset) -> Self {
        let g = a.group();
        let values = (0..g.order())
            .map(|x| if a.contains(x) { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
            .collect();
        Self { group: g.clone(), values }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    /// One value per conjugacy class (taken at the class representative).
    pub fn class_values(&self) -> Vec<Complex64> {
        self.group.classes().representatives().iter().map(|&r| self.values[r]).collect()
    }

    /// First pair `(x, y)` in the same class whose values differ by more than `tol`.
    pub fn class_violation(&self, tol: f64) -> Option<(usize, usize)> {
        let classes = self.group.classes();
        for class in classes.classes() {
            let r = class[0];
            if let Some(&y) = class.iter().find(|&&y| (self.values[y] - self.values[r]).norm() > tol) {
                return Some((r, y));
            }
        }
        None
    }

    pub fn check_class_function(&self, tol: f64) -> Result<()> {
        match self.class_violation(tol) {
            Some((x, y)) => Err(Error::NotClassFunction { x, y }),
            None => Ok(()),
        }
    }

    /// `f(x⁻¹) = conj f(x)` for all `x`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.group.order()).all(|x| (self.values[self.group.inv(x)] - self.values[x].conj()).norm() <= tol)
    }

    /// `E_x f(x)`.
    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.group.order() as f64
    }

    /// `⟨f, g⟩ = E_x conj(f(x)) g(x)`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_group(other)?;
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum();
        Ok(s / self.group.order() as f64)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { group: self.group.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { group: self.group.clone(), values })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if std::sync::Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }
}

/// `f ∗ g(x) = E_y f(y) g(y⁻¹x)`.
pub fn convolve(f: &ClassFunction, g: &ClassFunction) -> Result<ClassFunction> {
    f.check_same_group(g)?;
    f.check_class_function(CLASS_TOLERANCE)?;
    g.check_class_function(CLASS_TOLERANCE)?;
    let grp = &f.group;
    let n = grp.order();
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    for y in 0..n {
        let fy = f.values[y];
        if fy == Complex64::new(0.0, 0.0) {
            continue;
        }
        // x = y z, so g(y⁻¹ x) = g(z)
        for z in 0..n {
            values[grp.mul(y, z)] += fy * g.values[z];
        }
    }
    values.iter_mut().for_each(|v| *v /= n as f64);
    let out = ClassFunction { group: grp.clone(), values };
    assert!(out.class_violation(1e-7).is_none(), "convolution of class functions left the class algebra");
    Ok(out)
}

/// `k`-fold convolution power `f ∗ ⋯ ∗ f`.
pub fn convolution_power(f: &ClassFunction, k: usize) -> Result<ClassFunction> {
    assert!(k >= 1);
    let mut acc = f.clone();
    for _ in 1..k {
        acc = convolve(&acc, f)?;
    }
    Ok(acc)
}

/// Scalar Fourier coefficient `μ` with `\hat f(γ) = μ I`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FourierScalar {
    pub gamma: usize,
    pub dim: usize,
    pub mu: Complex64,
}

impl FourierScalar {
    /// Spectral radius of `\hat f(γ)`, which is `|μ|`.
    pub fn spec_rad(&self) -> f64 {
        self.mu.norm()
    }
}

/// `μ = E_x f(x) χ_γ(x) / d_γ`.
///
/// `f` must be a class function; for hermitian `f` the scalar is real up to
/// rounding.
pub fn fourier_scalar(f: &ClassFunction, table: &CharacterTable, gamma: usize) -> Result<FourierScalar> {
    if !std::sync::Arc::ptr_eq(f.group(), table.group()) {
        return Err(Error::GroupMismatch);
    }
    f.check_class_function(CLASS_TOLERANCE)?;
    let classes = table.classes();
    let mut s = Complex64::new(0.0, 0.0);
    for (i, class) in classes.classes().iter().enumerate() {
        s += f.values[class[0]] * table.value(gamma, i) * class.len() as f64;
    }
    let dim = table.dim(gamma);
    Ok(FourierScalar { gamma, dim, mu: s / (f.group.order() as f64 * dim as f64) })
}

/// All scalar coefficients, in character-table order.
pub fn fourier_transform(f: &ClassFunction, table: &CharacterTable) -> Result<Vec<FourierScalar>> {
    (0..table.len()).map(|i| fourier_scalar(f, table, i)).collect()
}

/// `|⟨f, g⟩ − Σ_γ d_γ² conj(μ_f(γ)) μ_g(γ)|`.
pub fn plancherel_check(f: &ClassFunction, g: &ClassFunction, table: &CharacterTable) -> Result<f64> {
    let lhs = f.inner(g)?;
    let (mf, mg) = (fourier_transform(f, table)?, fourier_transform(g, table)?);
    let rhs: Complex64 = mf.iter().zip(&mg).map(|(a, b)| (a.dim * a.dim) as f64 * a.mu.conj() * b.mu).sum();
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::harmonic::character_table;

    #[test]
    fn convolution_identities() {
        let g = GroupSpec::Dihedral { order: 10 }.build().unwrap();
        let one = ClassFunction::constant(&g, 1.0);
        assert!(convolve(&one, &one).unwrap().max_abs_diff(&one) < 1e-12);

        let classes = g.classes();
        let a = classes.class_subset(&g, 1).union(&GroupSubset::identity(&g));
        let conv = convolve(&ClassFunction::indicator(&a), &ClassFunction::indicator(&a.inverse())).unwrap();
        assert!((conv.value(g.identity()).re - a.density()).abs() < 1e-12);
    }

    #[test]
    fn cyclic_four_pair_counts() {
        let g = GroupSpec::Cyclic { n: 4 }.build().unwrap();
        let a = GroupSubset::new(&g, [0, 1]).unwrap();
        let f = ClassFunction::indicator(&a);
        let conv = convolve(&f, &f).unwrap();
        for x in 0..4 {
            let pairs = (0..4).filter(|&y| a.contains(y) && a.contains((x + 4 - y) % 4)).count();
            assert!((conv.value(x).re - pairs as f64 / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fourier_of_constant() {
        let g = GroupSpec::symmetric(3).build().unwrap();
        let table = character_table(&g, 0).unwrap();
        let one = ClassFunction::constant(&g, 1.0);
        let mus = fourier_transform(&one, &table).unwrap();
        assert!((mus[0].mu - 1.0).norm() < 1e-12);
        assert!(mus[1..].iter().all(|m| m.mu.norm() < 1e-12));
    }

    #[test]
    fn transposition_indicator_in_s3() {
        let g = GroupSpec::symmetric(3).build().unwrap();
        let table = character_table(&g, 0).unwrap();
        let transpositions = g.classes().class_subset(&g, 1);
        let f = ClassFunction::indicator(&transpositions);
        let two_dim = (0..table.len()).find(|&i| table.dim(i) == 2).unwrap();
        let chi = table.character(two_dim);
        // explicit element sum, no class grouping
        let direct: Complex64 = (0..6).map(|x| f.value(x) * chi.value(x)).sum::<Complex64>() / 6.0 / 2.0;
        let mu = fourier_scalar(&f, &table, two_dim).unwrap().mu;
        assert!((mu - direct).norm() < 1e-12);
        assert!(mu.norm() < 1e-12, "χ vanishes on transpositions");
    }

    #[test]
    fn plancherel_for_characters() {
        let g = GroupSpec::Quaternion8.build().unwrap();
        let table = character_table(&g, 0).unwrap();
        for i in 0..table.len() {
            let chi = table.character(i);
            assert!(plancherel_check(&chi, &chi, &table).unwrap() < 1e-10);
            assert!((chi.inner(&chi).unwrap() - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn non_class_function_is_rejected() {
        let g = GroupSpec::symmetric(3).build().unwrap();
        let f = ClassFunction::indicator(&GroupSubset::new(&g, [1]).unwrap());
        assert!(matches!(convolve(&f, &f), Err(Error::NotClassFunction { .. })));
    }
}
