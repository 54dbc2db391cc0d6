use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::exact::Q;
use crate::group::{abelianization, GroupRef, GroupSubset};
use crate::{Error, Result};

/// A homomorphism `G → S¹` stored as exact phases `q(x) = numer[x] / modulus`.
///
/// The representation is canonical: `modulus` is the least common
/// denominator of the phases, so two characters are equal exactly when
/// their fields are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCharacter {
    modulus: u32,
    numer: Vec<u32>,
}

impl LinearCharacter {
    fn reduced(modulus: u32, mut numer: Vec<u32>) -> Self {
        let g = numer.iter().fold(modulus, |g, &n| g.gcd(&n));
        if g > 1 {
            numer.iter_mut().for_each(|n| *n /= g);
        }
        Self { modulus: modulus / g, numer }
    }

    /// Builds a character from per-element phases, checking that they
    /// define a homomorphism on `group`.
    pub fn from_phases(group: &GroupRef, phases: &[Q]) -> Result<Self> {
        if phases.len() != group.order() {
            return Err(Error::Parameter(format!(
                "phase vector has {} entries, group order is {}",
                phases.len(),
                group.order()
            )));
        }
        let modulus = phases.iter().fold(1i64, |m, q| m.lcm(q.denom()));
        if modulus > u32::MAX as i64 {
            return Err(Error::Parameter("phase denominators too large".into()));
        }
        let numer = phases.iter().map(|q| (q.numer() * (modulus / q.denom())).rem_euclid(modulus) as u32).collect();
        let chi = Self::reduced(modulus as u32, numer);
        chi.check_homomorphism(group)?;
        Ok(chi)
    }

    fn check_homomorphism(&self, group: &GroupRef) -> Result<()> {
        let m = self.modulus as u64;
        for x in 0..group.order() {
            for y in 0..group.order() {
                let lhs = self.numer[group.mul(x, y)] as u64;
                if lhs != (self.numer[x] as u64 + self.numer[y] as u64) % m {
                    return Err(Error::NotHomomorphism { x, y });
                }
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn numerators(&self) -> &[u32] {
        &self.numer
    }

    /// Phase `q(x) ∈ [0, 1)`.
    pub fn phase(&self, x: usize) -> Q {
        Q::new(self.numer[x] as i64, self.modulus as i64)
    }

    pub fn phases(&self) -> Vec<Q> {
        (0..self.numer.len()).map(|x| self.phase(x)).collect()
    }

    /// `exp(2πi q(x))`.
    pub fn value(&self, x: usize) -> Complex64 {
        root_of_unity(self.numer[x] as u64, self.modulus as u64)
    }

    /// `‖γ(x)‖ = min(q, 1 − q)`.
    pub fn circle_norm(&self, x: usize) -> Q {
        let n = self.numer[x];
        Q::new(n.min(self.modulus - n) as i64, self.modulus as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus == 1
    }

    /// Group law of `Lin(G)`: pointwise product, i.e. phase addition.
    pub fn add(&self, other: &Self) -> Self {
        let m = self.modulus.lcm(&other.modulus) as u64;
        let (a, b) = (m / self.modulus as u64, m / other.modulus as u64);
        let numer =
            self.numer.iter().zip(&other.numer).map(|(&x, &y)| ((x as u64 * a + y as u64 * b) % m) as u32).collect();
        Self::reduced(m as u32, numer)
    }

    pub fn neg(&self) -> Self {
        let numer = self.numer.iter().map(|&x| (self.modulus - x) % self.modulus).collect();
        Self { modulus: self.modulus, numer }
    }
}

/// `exp(2πi n/m)`, reducing the angle first so that values such as `−1`
/// and `i` come out exactly.
pub fn root_of_unity(n: u64, m: u64) -> Complex64 {
    let n = n % m;
    let g = n.gcd(&m);
    match (n / g, m / g) {
        (0, _) => Complex64::new(1.0, 0.0),
        (1, 2) => Complex64::new(-1.0, 0.0),
        (1, 4) => Complex64::new(0.0, 1.0),
        (3, 4) => Complex64::new(0.0, -1.0),
        (n, m) => Complex64::from_polar(1.0, std::f64::consts::TAU * n as f64 / m as f64),
    }
}

/// The abelian group `Lin(G)` with an explicit coordinate system.
///
/// The abelianization is split as `⊕ Z/nᵢ` by repeatedly extracting an
/// element of maximal order modulo the part already found. Character `k`
/// corresponds to the coordinate tuple of `k` in mixed radix with the first
/// factor most significant, so index 0 is the trivial character and for a
/// cyclic group `Z/n` with generator `g`, character `k` sends `gʲ` to `kj/n`.
#[derive(Debug)]
pub struct LinGroup {
    group: GroupRef,
    factor_orders: Vec<u32>,
    exponent: u32,
    /// Per element of `G`, its coordinates in the decomposition.
    coords: Vec<Vec<u32>>,
    /// `table[k * |G| + x]` is the numerator of `q_k(x)` over `exponent`.
    table: Vec<u32>,
    characters: Vec<LinearCharacter>,
    lookup: HashMap<LinearCharacter, usize>,
}

pub type LinRef = Arc<LinGroup>;

impl LinGroup {
    pub fn new(group: &GroupRef) -> LinRef {
        let ab = abelianization(group);
        let quotient = &ab.quotient;
        let (gens, orders) = cyclic_decomposition(quotient);

        // coordinates of each quotient element
        let qn = quotient.order();
        let mut q_coords = vec![Vec::new(); qn];
        let count: usize = orders.iter().map(|&o| o as usize).product();
        debug_assert_eq!(count, qn);
        for index in 0..count {
            let tuple = mixed_radix(index, &orders);
            let mut element = quotient.identity();
            for (&g, &c) in gens.iter().zip(&tuple) {
                element = quotient.mul(element, quotient.pow(g, c as usize));
            }
            q_coords[element] = tuple;
        }
        let coords: Vec<Vec<u32>> = ab.projection.iter().map(|&c| q_coords[c].clone()).collect();

        let exponent = orders.iter().fold(1u32, |m, &o| m.lcm(&o));
        let n = group.order();
        let mut table = Vec::with_capacity(count * n);
        for k in 0..count {
            let ks = mixed_radix(k, &orders);
            for c in &coords {
                let mut s: u64 = 0;
                for ((&ki, &ci), &oi) in ks.iter().zip(c).zip(&orders) {
                    s += ki as u64 * ci as u64 * (exponent / oi) as u64;
                }
                table.push((s % exponent as u64) as u32);
            }
        }
        let characters: Vec<LinearCharacter> =
            (0..count).map(|k| LinearCharacter::reduced(exponent, table[k * n..(k + 1) * n].to_vec())).collect();
        let lookup = characters.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Arc::new(Self { group: group.clone(), factor_orders: orders, exponent, coords, table, characters, lookup })
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Orders of the cyclic factors `nᵢ`.
    pub fn factor_orders(&self) -> &[u32] {
        &self.factor_orders
    }

    /// Least common multiple of all phase denominators.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn coordinates(&self, x: usize) -> &[u32] {
        &self.coords[x]
    }

    pub fn character(&self, k: usize) -> &LinearCharacter {
        &self.characters[k]
    }

    pub fn characters(&self) -> &[LinearCharacter] {
        &self.characters
    }

    pub fn index_of(&self, chi: &LinearCharacter) -> Option<usize> {
        self.lookup.get(chi).copied()
    }

    /// Numerator of `q_k(x)` over [`LinGroup::exponent`].
    #[inline]
    pub fn numer(&self, k: usize, x: usize) -> u32 {
        self.table[k * self.group.order() + x]
    }

    pub fn phase(&self, k: usize, x: usize) -> Q {
        Q::new(self.numer(k, x) as i64, self.exponent as i64)
    }

    /// `‖γ_k(x)‖` as a numerator over the exponent.
    #[inline]
    pub fn circle_numer(&self, k: usize, x: usize) -> u32 {
        let n = self.numer(k, x);
        n.min(self.exponent - n)
    }

    pub fn value(&self, k: usize, x: usize) -> Complex64 {
        root_of_unity(self.numer(k, x) as u64, self.exponent as u64)
    }

    pub fn tuple(&self, k: usize) -> Vec<u32> {
        mixed_radix(k, &self.factor_orders)
    }

    fn index_of_tuple(&self, tuple: &[u32]) -> usize {
        tuple.iter().zip(&self.factor_orders).fold(0, |acc, (&t, &o)| acc * o as usize + t as usize)
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.tuple(a), self.tuple(b));
        let sum: Vec<u32> = ta.iter().zip(&tb).zip(&self.factor_orders).map(|((&x, &y), &o)| (x + y) % o).collect();
        self.index_of_tuple(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let t: Vec<u32> = self.tuple(a).iter().zip(&self.factor_orders).map(|(&x, &o)| (o - x) % o).collect();
        self.index_of_tuple(&t)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `n·γ_a` for an integer `n`.
    pub fn scale(&self, a: usize, n: i64) -> usize {
        let t: Vec<u32> = self
            .tuple(a)
            .iter()
            .zip(&self.factor_orders)
            .map(|(&x, &o)| (x as i64 * n).rem_euclid(o as i64) as u32)
            .collect();
        self.index_of_tuple(&t)
    }

    /// `Σ_{a ∈ A} γ_k(a)`, the unnormalised Fourier coefficient of `1_A`.
    pub fn character_sum(&self, k: usize, a: &GroupSubset) -> Complex64 {
        a.iter().map(|x| self.value(k, x)).sum()
    }

    /// Characters whose kernel contains `A` (the annihilator of `A`).
    pub fn annihilator(&self, a: &GroupSubset) -> Vec<usize> {
        (0..self.len()).filter(|&k| a.iter().all(|x| self.numer(k, x) == 0)).collect()
    }
}

fn mixed_radix(mut index: usize, orders: &[u32]) -> Vec<u32> {
    let mut out = vec![0; orders.len()];
    for (slot, &o) in out.iter_mut().zip(orders).rev() {
        *slot = (index % o as usize) as u32;
        index /= o as usize;
    }
    out
}

/// Splits an abelian group into cyclic factors.
///
/// At each step the element of largest order modulo the current span `H`
/// is chosen (smallest index on ties), then corrected by an element of `H`
/// so that its order in the whole group equals its order modulo `H`. The
/// correction always exists for this greedy order and makes the sum direct.
fn cyclic_decomposition(q: &GroupRef) -> (Vec<usize>, Vec<u32>) {
    let n = q.order();
    let mut span = GroupSubset::identity(q);
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    while span.len() < n {
        let order_mod = |x: usize| {
            let mut y = x;
            let mut k = 1;
            while !span.contains(y) {
                y = q.mul(y, x);
                k += 1;
            }
            k
        };
        let (b, k) =
            (0..n).map(|x| (x, order_mod(x))).fold((0, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
        let a = span
            .iter()
            .map(|h| q.mul(b, h))
            .find(|&c| q.pow(c, k) == q.identity())
            .expect("a lift of maximal order exists");
        let mut next = span.clone();
        let mut power = q.identity();
        for _ in 0..k {
            power = q.mul(power, a);
            for h in span.iter() {
                next.insert(q.mul(power, h));
            }
        }
        span = next;
        gens.push(a);
        orders.push(k as u32);
    }
    (gens, orders)
}

/// `Lin(G)` as a list of characters, in canonical order.
pub fn linear_characters(group: &GroupRef) -> Vec<LinearCharacter> {
    LinGroup::new(group).characters().to_vec()
}

/// JSON view of a linear character.
#[derive(Clone, Debug, Serialize)]
pub struct LinearCharacterJson {
    pub index: usize,
    pub modulus: u32,
    pub numerators: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn cyclic_duality() {
        let g = GroupSpec::Cyclic { n: 12 }.build().unwrap();
        let lin = LinGroup::new(&g);
        assert_eq!(lin.len(), 12);
        for k in 0..12 {
            for j in 0..12 {
                assert_eq!(lin.phase(k, j), Q::new((k * j % 12) as i64, 12));
            }
        }
    }

    #[test]
    fn counts_match_abelianization() {
        for (spec, count) in [
            (GroupSpec::symmetric(3), 2),
            (GroupSpec::Heisenberg { p: 3 }, 9),
            (GroupSpec::Quaternion8, 4),
            (GroupSpec::sl2_3(), 3),
            (GroupSpec::alternating(5), 1),
            (GroupSpec::Product { factors: vec![GroupSpec::Cyclic { n: 4 }, GroupSpec::Cyclic { n: 6 }] }, 24),
        ] {
            let g = spec.build().unwrap();
            let lin = LinGroup::new(&g);
            assert_eq!(lin.len(), count);
            let distinct: std::collections::HashSet<_> = lin.characters().iter().collect();
            assert_eq!(distinct.len(), count);
            for chi in lin.characters() {
                chi.check_homomorphism(&g).unwrap();
            }
        }
    }

    #[test]
    fn index_arithmetic_matches_pointwise_arithmetic() {
        let g = GroupSpec::Product { factors: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Cyclic { n: 6 }] }
            .build()
            .unwrap();
        let lin = LinGroup::new(&g);
        for a in 0..lin.len() {
            assert_eq!(lin.character(lin.neg(a)), &lin.character(a).neg());
            for b in 0..lin.len() {
                assert_eq!(lin.character(lin.add(a, b)), &lin.character(a).add(lin.character(b)));
            }
        }
        assert!(lin.character(0).is_trivial());
    }

    #[test]
    fn from_phases_validates() {
        let g = GroupSpec::Cyclic { n: 4 }.build().unwrap();
        let good: Vec<Q> = (0..4).map(|j| Q::new(j, 4)).collect();
        assert_eq!(LinGroup::new(&g).index_of(&LinearCharacter::from_phases(&g, &good).unwrap()), Some(1));
        let bad = vec![Q::new(0, 1), Q::new(1, 3), Q::new(0, 1), Q::new(0, 1)];
        assert!(matches!(LinearCharacter::from_phases(&g, &bad), Err(Error::NotHomomorphism { .. })));
    }

    #[test]
    fn exact_roots() {
        assert_eq!(root_of_unity(2, 4), Complex64::new(-1.0, 0.0));
        assert_eq!(root_of_unity(6, 8), Complex64::new(0.0, -1.0));
    }
}
