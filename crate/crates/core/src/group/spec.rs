use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupRef};
use crate::error::{Error, Result};

/// Declarative description of a finite group.
///
/// The JSON form is internally tagged, e.g. `{"type":"cyclic","n":12}` or
/// `{"type":"dihedral","order":8}`. The dihedral parameter is the order of the
/// group (always even), not the number of vertices of the polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Dihedral {
        order: usize,
    },
    Quaternion8,
    /// Upper unitriangular 3×3 matrices over `Z/p`, element `(a, b, c)` stored
    /// at index `a·p² + b·p + c` for the matrix `[[1,a,c],[0,1,b],[0,0,1]]`.
    Heisenberg {
        p: usize,
    },
    /// Direct product; the first factor is the most significant index digit.
    Product {
        factors: Vec<GroupSpec>,
    },
    /// Closure of 0-indexed permutations (`generators[i][j]` is the image of
    /// `j`). Products compose right to left: `(στ)(j) = σ(τ(j))`. Elements are
    /// indexed in lexicographic order of their image vectors.
    Permutation {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Table {
        mul: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupRef> {
        let (table, labels) = self.table()?;
        Ok(Arc::new(FiniteGroup::from_table(&table, Some(labels))?))
    }

    fn table(&self) -> Result<(Vec<Vec<usize>>, Vec<String>)> {
        match self {
            GroupSpec::Cyclic { n } => {
                let n = *n;
                if n == 0 {
                    return Err(Error::InvalidSpec("cyclic group needs n >= 1".into()));
                }
                let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
                Ok((table, (0..n).map(|k| k.to_string()).collect()))
            }
            GroupSpec::Dihedral { order } => dihedral(*order),
            GroupSpec::Quaternion8 => Ok(quaternion8()),
            GroupSpec::Heisenberg { p } => heisenberg(*p),
            GroupSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidSpec("product needs at least one factor".into()));
                }
                let mut acc = factors[0].table()?;
                for factor in &factors[1..] {
                    acc = direct_product(&acc, &factor.table()?);
                }
                Ok(acc)
            }
            GroupSpec::Permutation { degree, generators } => permutation_closure(*degree, generators),
            GroupSpec::Table { mul } => {
                let n = mul.len();
                Ok((mul.clone(), (0..n).map(|k| k.to_string()).collect()))
            }
        }
    }
}

fn dihedral(order: usize) -> Result<(Vec<Vec<usize>>, Vec<String>)> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::InvalidSpec(format!("dihedral spec takes the (even) group order, got {order}")));
    }
    let n = order / 2;
    // index i + n·j  <->  r^i s^j
    let decode = |x: usize| (x % n, x / n);
    let table = (0..order)
        .map(|x| {
            (0..order)
                .map(|y| {
                    let (i, a) = decode(x);
                    let (k, b) = decode(y);
                    let rot = if a == 0 { (i + k) % n } else { (i + n - k) % n };
                    rot + n * ((a + b) % 2)
                })
                .collect()
        })
        .collect();
    let labels = (0..order)
        .map(|x| {
            let (i, a) = decode(x);
            if a == 0 {
                format!("r^{i}")
            } else {
                format!("r^{i}s")
            }
        })
        .collect();
    Ok((table, labels))
}

fn quaternion8() -> (Vec<Vec<usize>>, Vec<String>) {
    // index = 2·unit + sign, unit ∈ {1, i, j, k}, sign 1 means negated.
    // unit products: (unit, sign) table for u·v
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (u, su) = (x / 2, x % 2);
                    let (v, sv) = (y / 2, y % 2);
                    let (w, sw) = UNIT_MUL[u][v];
                    2 * w + (su + sv + sw) % 2
                })
                .collect()
        })
        .collect();
    let names = ["1", "i", "j", "k"];
    let labels = (0..8).map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2])).collect();
    (table, labels)
}

fn heisenberg(p: usize) -> Result<(Vec<Vec<usize>>, Vec<String>)> {
    if p < 2 {
        return Err(Error::InvalidSpec(format!("heisenberg needs p >= 2, got {p}")));
    }
    let n = p * p * p;
    let decode = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let table = (0..n)
        .map(|x| {
            let (a, b, c) = decode(x);
            (0..n)
                .map(|y| {
                    let (a2, b2, c2) = decode(y);
                    let (a3, b3, c3) = ((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                    a3 * p * p + b3 * p + c3
                })
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|x| {
            let (a, b, c) = decode(x);
            format!("({a},{b},{c})")
        })
        .collect();
    Ok((table, labels))
}

fn direct_product(
    (left, left_labels): &(Vec<Vec<usize>>, Vec<String>),
    (right, right_labels): &(Vec<Vec<usize>>, Vec<String>),
) -> (Vec<Vec<usize>>, Vec<String>) {
    let (n, m) = (left.len(), right.len());
    let table =
        (0..n * m).map(|x| (0..n * m).map(|y| left[x / m][y / m] * m + right[x % m][y % m]).collect()).collect();
    let labels = (0..n * m).map(|x| format!("({},{})", left_labels[x / m], right_labels[x % m])).collect();
    (table, labels)
}

fn permutation_closure(degree: usize, generators: &[Vec<usize>]) -> Result<(Vec<Vec<usize>>, Vec<String>)> {
    for (index, g) in generators.iter().enumerate() {
        if g.len() != degree {
            return Err(Error::PermutationDegree { index, found: g.len(), expected: degree });
        }
        let distinct: BTreeSet<_> = g.iter().copied().collect();
        if distinct.len() != degree || g.iter().any(|&v| v >= degree) {
            return Err(Error::NotAPermutation { index, degree });
        }
    }
    let compose = |s: &[usize], t: &[usize]| -> Vec<usize> { t.iter().map(|&j| s[j]).collect() };

    let identity: Vec<usize> = (0..degree).collect();
    let mut elements: BTreeSet<Vec<usize>> = BTreeSet::new();
    elements.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = compose(&x, g);
            if elements.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let elements: Vec<Vec<usize>> = elements.into_iter().collect();
    let index: HashMap<&[usize], usize> = elements.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let table = elements.iter().map(|s| elements.iter().map(|t| index[compose(s, t).as_slice()]).collect()).collect();
    let labels = elements
        .iter()
        .map(|p| format!("[{}]", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    Ok((table, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_six_is_abelian() {
        let g = GroupSpec::Cyclic { n: 6 }.build().unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
    }

    #[test]
    fn heisenberg_three_matches_matrix_enumeration() {
        // independent count: all [[1,a,c],[0,1,b],[0,0,1]] over Z/3, multiplied as matrices
        type M = [[usize; 3]; 3];
        let matmul = |x: &M, y: &M| -> M {
            let mut z = [[0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    z[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum::<usize>() % 3;
                }
            }
            z
        };
        let mut mats = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    mats.push([[1, a, c], [0, 1, b], [0, 0, 1]]);
                }
            }
        }
        let g = GroupSpec::Heisenberg { p: 3 }.build().unwrap();
        assert_eq!(g.order(), mats.len());
        assert_eq!(g.order(), 27);
        for x in 0..27 {
            for y in 0..27 {
                let z = matmul(&mats[x], &mats[y]);
                assert_eq!(mats[g.mul(x, y)], z);
            }
        }
        assert!(!g.is_abelian());
    }

    #[test]
    fn dihedral_takes_group_order() {
        let g = GroupSpec::Dihedral { order: 8 }.build().unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        assert!(GroupSpec::Dihedral { order: 7 }.build().is_err());
    }

    #[test]
    fn quaternion_relations() {
        let g = GroupSpec::Quaternion8.build().unwrap();
        let (minus_one, i, j, k) = (1, 2, 4, 6);
        assert_eq!(g.mul(i, i), minus_one);
        assert_eq!(g.mul(i, j), k);
        assert_eq!(g.mul(j, i), k + 1);
        assert_eq!(g.element_order(i), 4);
        assert_eq!(g.label(7), "-k");
    }

    #[test]
    fn permutation_generators_of_wrong_degree() {
        let spec = GroupSpec::Permutation { degree: 3, generators: vec![vec![1, 0, 2], vec![1, 0]] };
        assert!(matches!(spec.build().unwrap_err(), Error::PermutationDegree { index: 1, found: 2, expected: 3 }));
        let spec = GroupSpec::Permutation { degree: 3, generators: vec![vec![1, 1, 2]] };
        assert!(matches!(spec.build().unwrap_err(), Error::NotAPermutation { index: 0, .. }));
    }

    #[test]
    fn product_of_specs() {
        let spec = GroupSpec::Product { factors: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Dihedral { order: 6 }] };
        let g = spec.build().unwrap();
        assert_eq!(g.order(), 12);
        assert!(!g.is_abelian());
    }

    #[test]
    fn json_round_trip_of_tagged_specs() {
        let text = r#"{"type":"product","factors":[{"type":"cyclic","n":4},{"type":"quaternion8"}]}"#;
        let spec: GroupSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.build().unwrap().order(), 32);
        let back: GroupSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }
}
