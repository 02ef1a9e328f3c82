//! Class functions and character tables by Burnside's class-sum method.

use std::cmp::Reverse;
use std::fmt::Write as _;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteGroup, GroupError, ORDER_CAP};
use crate::numeric::{round_real, round_to_integer, NonIntegralError};

/// Tolerance for orthogonality and integrality of a freshly computed table.
pub const TABLE_TOLERANCE: f64 = 1e-8;

/// A complex-valued class function, stored by conjugacy class.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Complex64>,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Complex64>) -> Self {
        assert_eq!(values.len(), group.class_count(), "one value per conjugacy class");
        Self { group, values }
    }

    /// Evaluates `f` on one representative per class; `f` must be constant
    /// on classes.
    pub fn from_element_fn(group: &Arc<FiniteGroup>, mut f: impl FnMut(usize) -> Complex64) -> Self {
        let values = (0..group.class_count()).map(|c| f(group.class_rep(c))).collect();
        Self::new(Arc::clone(group), values)
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Self::new(Arc::clone(group), vec![Complex64::new(0.0, 0.0); group.class_count()])
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::new(Arc::clone(group), vec![Complex64::new(1.0, 0.0); group.class_count()])
    }

    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let mut f = Self::zero(group);
        f.values[0] = Complex64::new(group.order() as f64, 0.0);
        f
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at_class(&self, c: usize) -> Complex64 {
        self.values[c]
    }

    pub fn at(&self, element: usize) -> Complex64 {
        self.values[self.group.class_of(element)]
    }

    /// Value at the identity.
    pub fn degree(&self) -> f64 {
        self.values[0].re
    }

    fn same_group(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.group, &other.group) || self.group.name() == other.group.name(),
            "class functions on different groups"
        );
    }

    /// `⟨f, g⟩ = (1/|G|) Σ_c |c| f(c) conj(g(c))`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.same_group(other);
        let total: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(c, (a, b))| a * b.conj() * self.group.class_size(c) as f64)
            .sum();
        total / self.group.order() as f64
    }

    pub fn norm_squared(&self) -> f64 {
        self.inner(self).re
    }

    /// `⟨f, g⟩` rounded through the integrality guard.
    pub fn inner_int(&self, other: &Self) -> Result<i64, NonIntegralError> {
        round_to_integer(self.inner(other), || format!("inner product on {}", self.group.name()))
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self::new(Arc::clone(&self.group), self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        self.same_group(other);
        Self::new(
            Arc::clone(&self.group),
            self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| v * s)
    }

    /// Pointwise product (the character of a tensor product).
    pub fn pointwise(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn max_distance(&self, other: &Self) -> f64 {
        self.same_group(other);
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// The irreducible characters of a group in canonical order: ascending
/// degree, then descending lexicographic order of the values (rounded to six
/// decimals) over the class order. The trivial character is always first.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<usize>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn irreducible(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Multiplicities `⟨f, χ_i⟩` of every irreducible, through the guard.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<i64>, NonIntegralError> {
        self.irreducibles.iter().map(|chi| f.inner_int(chi)).collect()
    }

    /// CSV export: a header row of class sizes, then one row per irreducible.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["class size".to_string()];
        header.extend((0..self.group.class_count()).map(|c| self.group.class_size(c).to_string()));
        w.write_record(&header).expect("in-memory write");
        for (i, chi) in self.irreducibles.iter().enumerate() {
            let mut row = vec![format!("chi{i}")];
            row.extend(chi.values().iter().map(|&v| format_value(v)));
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    /// Plain-text rendering with values rounded to three decimals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let sizes: Vec<String> = (0..self.group.class_count()).map(|c| self.group.class_size(c).to_string()).collect();
        let _ = writeln!(out, "{} (order {}), class sizes {}", self.group.name(), self.group.order(), sizes.join(" "));
        for chi in &self.irreducibles {
            let row: Vec<String> = chi.values().iter().map(|&v| format_value(v)).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

fn clean(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn format_value(v: Complex64) -> String {
    let (re, im) = (clean(v.re), clean(v.im));
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else {
        format!("{re}{im:+}i")
    }
}

fn canonical_key(chi: &ClassFunction) -> Vec<(i64, i64)> {
    chi.values()
        .iter()
        .map(|v| ((v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64))
        .collect()
}

pub fn character_table(group: &Arc<FiniteGroup>) -> Result<CharacterTable, GroupError> {
    character_table_with_cap(group, ORDER_CAP)
}

/// Burnside's method: the class sums act on the centre of the group algebra,
/// and the central idempotents are their simultaneous eigenvectors. A random
/// Hermitian combination of class-sum operators separates them.
pub fn character_table_with_cap(group: &Arc<FiniteGroup>, cap: usize) -> Result<CharacterTable, GroupError> {
    let order = group.order();
    if order > cap {
        return Err(GroupError::OrderCap { name: group.name().into(), order, cap });
    }
    let r = group.class_count();
    let sizes: Vec<f64> = (0..r).map(|c| group.class_size(c) as f64).collect();
    let inverse_class: Vec<usize> = (0..r).map(|c| group.class_of(group.inverse(group.class_rep(c)))).collect();

    // structure constants: K_i K_j = Σ_k coef[i][j][k] K_k
    let mut coef = vec![vec![vec![0u32; r]; r]; r];
    for (i, class) in group.conjugacy_classes().iter().enumerate() {
        for k in 0..r {
            let z = group.class_rep(k);
            for &x in class {
                coef[i][group.class_of(group.mul(group.inverse(x), z))][k] += 1;
            }
        }
    }
    // operator of K_i in the orthonormal basis K_a / sqrt|C_a|
    let operator = |i: usize| {
        DMatrix::<Complex64>::from_fn(r, r, |k, j| {
            Complex64::new(coef[i][j][k] as f64 * (sizes[k] / sizes[j]).sqrt(), 0.0)
        })
    };
    let operators: Vec<DMatrix<Complex64>> = (0..r).map(operator).collect();

    let mut last_gap = 0.0;
    for seed in 0..32u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xb0b5 + seed);
        let mut weights = vec![Complex64::new(0.0, 0.0); r];
        for i in 0..r {
            let j = inverse_class[i];
            if j < i {
                continue;
            }
            let z = if j == i {
                Complex64::new(rng.random_range(-1.0..1.0), 0.0)
            } else {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            };
            weights[i] = z;
            weights[j] = z.conj();
        }
        let mut h = DMatrix::<Complex64>::zeros(r, r);
        for (w, op) in weights.iter().zip(&operators) {
            h += op * *w;
        }
        let eig = SymmetricEigen::new(h);
        let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        let gap = values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        if gap < 1e-6 {
            last_gap = gap;
            continue;
        }
        let mut irreducibles = Vec::with_capacity(r);
        for col in 0..r {
            let u = eig.eigenvectors.column(col);
            let phase = u[0] / u[0].norm();
            let scale = (order as f64).sqrt();
            let values = (0..r).map(|a| (u[a] * phase.conj()).conj() * scale / sizes[a].sqrt()).collect();
            irreducibles.push(ClassFunction::new(Arc::clone(group), values));
        }
        return finish_table(group, irreducibles);
    }
    Err(GroupError::Numerical(format!(
        "{}: class-sum eigenvalues not separated (gap {last_gap:e})",
        group.name()
    )))
}

fn finish_table(group: &Arc<FiniteGroup>, mut irreducibles: Vec<ClassFunction>) -> Result<CharacterTable, GroupError> {
    let name = group.name();
    let mut degrees = Vec::with_capacity(irreducibles.len());
    for chi in &irreducibles {
        let d = chi.values()[0];
        if (d.re - d.re.round()).abs() > TABLE_TOLERANCE || d.im.abs() > TABLE_TOLERANCE || d.re < 0.5 {
            return Err(GroupError::Numerical(format!("{name}: character degree {d} is not a positive integer")));
        }
        degrees.push(round_real(d.re, || format!("character degree on {name}"))? as usize);
    }
    let total: usize = degrees.iter().map(|d| d * d).sum();
    if total != group.order() {
        return Err(GroupError::Numerical(format!("{name}: squared degrees sum to {total}, not {}", group.order())));
    }
    let mut order: Vec<usize> = (0..irreducibles.len()).collect();
    order.sort_by_key(|&i| (degrees[i], Reverse(canonical_key(&irreducibles[i]))));
    irreducibles = order.iter().map(|&i| irreducibles[i].clone()).collect();
    degrees = order.iter().map(|&i| degrees[i]).collect();
    for (i, a) in irreducibles.iter().enumerate() {
        for (j, b) in irreducibles.iter().enumerate() {
            let expect = if i == j { 1.0 } else { 0.0 };
            if (a.inner(b) - expect).norm() > TABLE_TOLERANCE {
                return Err(GroupError::Numerical(format!("{name}: rows {i} and {j} are not orthonormal")));
            }
        }
    }
    Ok(CharacterTable { group: Arc::clone(group), irreducibles, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{catalog_names, group_by_name};

    fn table(name: &str) -> CharacterTable {
        character_table(&Arc::new(group_by_name(name).unwrap())).unwrap()
    }

    fn rounded(t: &CharacterTable) -> Vec<Vec<i64>> {
        t.irreducibles()
            .iter()
            .map(|chi| chi.values().iter().map(|v| v.re.round() as i64).collect())
            .collect()
    }

    #[test]
    fn small_tables() {
        assert_eq!(rounded(&table("Z2")), vec![vec![1, 1], vec![1, -1]]);
        let s3 = table("S3");
        assert_eq!(s3.degrees(), &[1, 1, 2]);
        assert_eq!(rounded(&s3)[2], vec![2, 0, -1]);
        assert_eq!(table("Q8").degrees(), &[1, 1, 1, 1, 2]);
        assert_eq!(table("S4").degrees(), &[1, 1, 2, 3, 3]);
        let z3 = table("Z3");
        assert!((z3.irreducible(1).at(1).im.abs() - 3f64.sqrt() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn catalog_tables_are_orthonormal() {
        for name in catalog_names().into_iter().chain(["Z2xZ2".into(), "S3xZ2".into(), "Q8xZ3".into()]) {
            let g = Arc::new(group_by_name(&name).unwrap());
            let t = character_table(&g).unwrap();
            assert_eq!(t.degrees().iter().map(|d| d * d).sum::<usize>(), g.order(), "{name}");
            assert!(t.irreducible(0).max_distance(&ClassFunction::trivial(&g)) < 1e-9, "{name}");
            // column orthogonality
            for c in 0..g.class_count() {
                for d in 0..g.class_count() {
                    let s: Complex64 = t.irreducibles().iter().map(|chi| chi.at_class(c) * chi.at_class(d).conj()).sum();
                    let expect = if c == d { g.order() as f64 / g.class_size(c) as f64 } else { 0.0 };
                    assert!((s - expect).norm() < 1e-6, "{name} columns {c},{d}");
                }
            }
            assert_eq!(t.decompose(&ClassFunction::regular(&g)).unwrap(), t.degrees().iter().map(|&d| d as i64).collect::<Vec<_>>());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Arc::new(group_by_name("S4").unwrap());
        assert!(matches!(character_table_with_cap(&g, 10), Err(GroupError::OrderCap { .. })));
    }

    #[test]
    fn csv_has_class_sizes_header() {
        let csv = table("S3").to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("class size,1,3,2"));
        assert_eq!(lines.next(), Some("chi0,1,1,1"));
        assert_eq!(lines.nth(1), Some("chi2,2,0,-1"));
    }
}
