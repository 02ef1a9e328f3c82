use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GroupError, ORDER_CAP};

/// A finite group given by its full multiplication table.
///
/// Elements are `0..order`, with 0 the identity. Conjugacy classes are
/// computed at construction and ordered by their smallest element, so the
/// identity class comes first.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<usize>,
    element_labels: Vec<String>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table. Identity and inverse laws
    /// are checked exhaustively, associativity on random triples.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let name = name.into();
        let order = table.len();
        if order == 0 {
            return Err(GroupError::InvalidTable(format!("{name}: empty table")));
        }
        if order > ORDER_CAP {
            return Err(GroupError::OrderCap { name, order, cap: ORDER_CAP });
        }
        let mut flat = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::InvalidTable(format!("{name}: row {a} has length {}", row.len())));
            }
            let mut seen = vec![false; order];
            for &x in row {
                if x >= order || std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::InvalidTable(format!("{name}: row {a} is not a permutation")));
                }
            }
            flat.extend(row.iter().map(|&x| x as u32));
        }
        let labels = (0..order).map(|i| i.to_string()).collect();
        Self::from_flat(name, order, flat, labels)
    }

    /// Builds the group generated by permutations given in one-line notation
    /// (images of `0..degree`).
    pub fn from_permutations(name: impl Into<String>, generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        let name = name.into();
        let degree = generators.first().map_or(0, Vec::len);
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(GroupError::InvalidTable(format!("{name}: {g:?} is not a permutation of 0..{degree}")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |a: &Vec<usize>, b: &Vec<usize>| b.iter().map(|&x| a[x]).collect::<Vec<usize>>();
        let elements = closure(identity, generators, compose, ORDER_CAP).ok_or_else(|| GroupError::OrderCap {
            name: name.clone(),
            order: ORDER_CAP + 1,
            cap: ORDER_CAP,
        })?;
        let labels = elements
            .iter()
            .map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        Self::from_elements(name, &elements, compose, labels)
    }

    /// Builds the table of an explicit list of elements closed under `mul`.
    /// `elements[0]` must be the identity.
    pub fn from_elements<T: Eq + Hash>(
        name: impl Into<String>,
        elements: &[T],
        mul: impl Fn(&T, &T) -> T,
        labels: Vec<String>,
    ) -> Result<Self, GroupError> {
        let name = name.into();
        let order = elements.len();
        if order > ORDER_CAP {
            return Err(GroupError::OrderCap { name, order, cap: ORDER_CAP });
        }
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != order {
            return Err(GroupError::InvalidTable(format!("{name}: repeated elements")));
        }
        let mut flat = Vec::with_capacity(order * order);
        for a in elements {
            for b in elements {
                let p = mul(a, b);
                let &k = index
                    .get(&p)
                    .ok_or_else(|| GroupError::InvalidTable(format!("{name}: element list not closed")))?;
                flat.push(k as u32);
            }
        }
        Self::from_flat(name, order, flat, labels)
    }

    fn from_flat(name: String, order: usize, table: Vec<u32>, element_labels: Vec<String>) -> Result<Self, GroupError> {
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::InvalidTable(format!("{name}: element 0 is not the identity")));
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| at(a, b) == 0 && at(b, a) == 0)
                .ok_or_else(|| GroupError::InvalidTable(format!("{name}: element {a} has no inverse")))?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..(4 * order).min(2000) {
            let (a, b, c) = (rng.random_range(0..order), rng.random_range(0..order), rng.random_range(0..order));
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(GroupError::InvalidTable(format!("{name}: ({a}·{b})·{c} ≠ {a}·({b}·{c})")));
            }
        }

        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            for g in 0..order {
                let y = at(at(g, x), inverses[g]);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        Ok(Self { name, order, table, inverses, element_labels, classes, class_of })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    pub fn element_label(&self, a: usize) -> &str {
        &self.element_labels[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    /// Row-major Cayley table, for export.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// The subgroup generated by `gens`, listed with the identity first.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        closure(0, gens, |&a, &b| self.mul(a, b), self.order).expect("closure inside a finite group")
    }

    /// Direct product, element `(a, b)` numbered `a·|B| + b`.
    pub fn direct_product(&self, other: &Self) -> Result<Self, GroupError> {
        let name = format!("{}x{}", self.name, other.name);
        let order = self.order * other.order;
        if order > ORDER_CAP {
            return Err(GroupError::OrderCap { name, order, cap: ORDER_CAP });
        }
        let mut table = Vec::with_capacity(order * order);
        let mut labels = Vec::with_capacity(order);
        for a1 in 0..self.order {
            for b1 in 0..other.order {
                labels.push(format!("({},{})", self.element_label(a1), other.element_label(b1)));
                for a2 in 0..self.order {
                    for b2 in 0..other.order {
                        table.push((self.mul(a1, a2) * other.order + other.mul(b1, b2)) as u32);
                    }
                }
            }
        }
        Self::from_flat(name, order, table, labels)
    }
}

/// Breadth-first closure of `gens` under right multiplication, starting at
/// `identity`. Returns `None` once more than `cap` elements are found.
pub(crate) fn closure<T: Clone + Eq + Hash>(
    identity: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
    cap: usize,
) -> Option<Vec<T>> {
    let mut seen = HashSet::from([identity.clone()]);
    let mut out = vec![identity];
    let mut next = 0;
    while next < out.len() {
        let x = out[next].clone();
        next += 1;
        for g in gens {
            let y = mul(&x, g);
            if !seen.contains(&y) {
                if out.len() == cap {
                    return None;
                }
                seen.insert(y.clone());
                out.push(y);
            }
        }
    }
    Some(out)
}
