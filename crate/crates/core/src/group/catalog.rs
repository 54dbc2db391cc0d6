//! Ready-made permutation specs for groups used throughout the examples.

use super::GroupSpec;

impl GroupSpec {
    /// Symmetric group on `degree` points, generated by a transposition and an
    /// n-cycle.
    pub fn symmetric(degree: usize) -> GroupSpec {
        let mut generators = Vec::new();
        if degree >= 2 {
            let mut swap: Vec<usize> = (0..degree).collect();
            swap.swap(0, 1);
            generators.push(swap);
            generators.push((0..degree).map(|j| (j + 1) % degree).collect());
        }
        GroupSpec::Permutation { degree, generators }
    }

    /// Alternating group on `degree >= 3` points, generated by 3-cycles.
    pub fn alternating(degree: usize) -> GroupSpec {
        let generators = (2..degree)
            .map(|k| {
                let mut p: Vec<usize> = (0..degree).collect();
                // (0 1 k)
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        GroupSpec::Permutation { degree, generators }
    }

    /// SL(2, 3) acting on the eight non-zero vectors of `F_3²`.
    pub fn sl2_3() -> GroupSpec {
        let vectors: Vec<(usize, usize)> =
            (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).filter(|&v| v != (0, 0)).collect();
        let act = |m: [[usize; 2]; 2]| -> Vec<usize> {
            vectors
                .iter()
                .map(|&(x, y)| {
                    let image = ((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3);
                    vectors.iter().position(|&v| v == image).unwrap()
                })
                .collect()
        };
        GroupSpec::Permutation { degree: 8, generators: vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        assert_eq!(GroupSpec::symmetric(3).build().unwrap().order(), 6);
        assert_eq!(GroupSpec::symmetric(4).build().unwrap().order(), 24);
        assert_eq!(GroupSpec::alternating(4).build().unwrap().order(), 12);
        let sl = GroupSpec::sl2_3().build().unwrap();
        assert_eq!(sl.order(), 24);
        assert!(!sl.is_abelian());
    }
}
