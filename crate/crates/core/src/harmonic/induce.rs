use num_complex::Complex64;

use super::class_function::CLASS_TOLERANCE;
use super::ClassFunction;
use crate::group::SubgroupEmbedding;
use crate::{Error, Result};

/// `f^G(x) = P_G(H)⁻¹ E_{y∈G} f°(y x y⁻¹)` where `f°` extends `f` by zero.
///
/// `f` lives on `embedding.group` and must be constant on `H`-classes.
pub fn induce_class_function(embedding: &SubgroupEmbedding, f: &ClassFunction) -> Result<ClassFunction> {
    if !std::sync::Arc::ptr_eq(f.group(), &embedding.group) {
        return Err(Error::GroupMismatch);
    }
    f.check_class_function(CLASS_TOLERANCE)?;
    let parent = embedding.parent();
    let h = embedding.group.order() as f64;
    let classes = parent.classes();
    let mut class_values = Vec::with_capacity(classes.len());
    for class in classes.classes() {
        let x = class[0];
        let mut s = Complex64::new(0.0, 0.0);
        for y in 0..parent.order() {
            if let Some(local) = embedding.local(parent.conj(y, x)) {
                s += f.value(local);
            }
        }
        class_values.push(s / h);
    }
    Ok(ClassFunction::from_class_values(parent, &class_values))
}

/// `g|_H` as a function on the embedded subgroup.
pub fn restrict_class_function(embedding: &SubgroupEmbedding, g: &ClassFunction) -> Result<ClassFunction> {
    if !std::sync::Arc::ptr_eq(g.group(), embedding.parent()) {
        return Err(Error::GroupMismatch);
    }
    let values = embedding.to_parent.iter().map(|&x| g.value(x)).collect();
    ClassFunction::new(&embedding.group, values)
}

/// `|⟨f, g|_H⟩_{L²(P_H)} − ⟨f^G, g⟩_{L²(P_G)}|`.
pub fn frobenius_residual(embedding: &SubgroupEmbedding, f: &ClassFunction, g: &ClassFunction) -> Result<f64> {
    let lhs = f.inner(&restrict_class_function(embedding, g)?)?;
    let rhs = induce_class_function(embedding, f)?.inner(g)?;
    Ok((lhs - rhs).norm())
}
