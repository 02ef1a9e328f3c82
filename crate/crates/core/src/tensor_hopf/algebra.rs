use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::TensorError;
use crate::lincomb::LinComb;
use crate::report::CheckReport;
use crate::symfunc::{self, Partition};

/// A graded linear map between truncated bases: entry `i` is the image of
/// source basis element `i`.
pub type GradedMap = Vec<LinComb<usize>>;

/// A truncated PSH-algebra given by structure tables on its irreducible basis.
///
/// Basis element 0 is the unit and is the only element of degree 0. The
/// product table covers every pair of total degree at most `cutoff`.
#[derive(Debug)]
pub struct PshAlgebra {
    name: String,
    cutoff: usize,
    labels: Vec<String>,
    degrees: Vec<usize>,
    index: HashMap<String, usize>,
    product: HashMap<(usize, usize), LinComb<usize>>,
    coproduct: Vec<LinComb<(usize, usize)>>,
    powers: Mutex<HashMap<(u64, usize), LinComb<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraRecord {
    name: String,
    cutoff: usize,
    basis: Vec<(String, usize)>,
    product: Vec<(String, String, Vec<(String, BigInt)>)>,
}

impl PshAlgebra {
    pub fn from_tables(
        name: impl Into<String>,
        cutoff: usize,
        labels: Vec<String>,
        degrees: Vec<usize>,
        product: HashMap<(usize, usize), LinComb<usize>>,
        coproduct: Vec<LinComb<(usize, usize)>>,
    ) -> Result<Self, TensorError> {
        let n = labels.len();
        let bad = |m: String| Err(TensorError::MalformedTable(m));
        if n == 0 || degrees.len() != n || coproduct.len() != n {
            return bad("basis, degree and coproduct lists must be nonempty and equally long".into());
        }
        if degrees[0] != 0 || degrees[1..].contains(&0) {
            return bad("basis element 0 must be the unique element of degree 0".into());
        }
        if let Some(&d) = degrees.iter().find(|&&d| d > cutoff) {
            return bad(format!("basis element of degree {d} above cutoff {cutoff}"));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return bad(format!("duplicate label {l:?}"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let d = degrees[i] + degrees[j];
                match product.get(&(i, j)) {
                    None if d <= cutoff => return bad(format!("missing product {} * {}", labels[i], labels[j])),
                    Some(v) if v.support().any(|&k| k >= n || degrees[k] != d) => {
                        return bad(format!("product {} * {} is not graded", labels[i], labels[j]))
                    }
                    _ => {}
                }
            }
            if coproduct[i].support().any(|&(a, b)| a >= n || b >= n || degrees[a] + degrees[b] != degrees[i]) {
                return bad(format!("coproduct of {} is not graded", labels[i]));
            }
        }
        Ok(Self {
            name: name.into(),
            cutoff,
            labels,
            degrees,
            index,
            product,
            coproduct,
            powers: Mutex::new(HashMap::new()),
        })
    }

    /// `R` truncated at `cutoff`, basis in canonical partition order.
    pub fn symmetric_functions(cutoff: usize) -> Self {
        let basis = Partition::all_up_to(cutoff);
        let pos: HashMap<&Partition, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut product = HashMap::new();
        for (i, p) in basis.iter().enumerate() {
            for (j, q) in basis.iter().enumerate() {
                if p.size() + q.size() <= cutoff {
                    product.insert((i, j), symfunc::mul_basis(p, q).map_basis(|r| pos[r]));
                }
            }
        }
        let coproduct = basis
            .iter()
            .map(|p| symfunc::coproduct_basis(p).map_basis(|(a, b)| (pos[a], pos[b])))
            .collect();
        Self::from_tables(
            "R",
            cutoff,
            basis.iter().map(ToString::to_string).collect(),
            basis.iter().map(Partition::size).collect(),
            product,
            coproduct,
        )
        .expect("symmetric function tables are well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, TensorError> {
        self.index.get(label).copied().ok_or_else(|| TensorError::UnknownLabel(label.to_string()))
    }

    pub fn basis_of_degree(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.degrees[i] == n)
    }

    pub fn basis_up_to(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.degrees[i] <= n)
    }

    /// Top degree of a combination, 0 for zero.
    pub fn top_degree(&self, v: &LinComb<usize>) -> usize {
        v.support().map(|&i| self.degrees[i]).max().unwrap_or(0)
    }

    pub fn same_as(&self, other: &PshAlgebra) -> bool {
        std::ptr::eq(self, other) || (self.labels == other.labels && self.cutoff == other.cutoff && self.name == other.name)
    }

    pub fn product_basis(&self, i: usize, j: usize) -> Result<&LinComb<usize>, TensorError> {
        self.product.get(&(i, j)).ok_or_else(|| TensorError::BeyondCutoff {
            what: format!("{} * {}", self.labels[i], self.labels[j]),
            degree: self.degrees[i] + self.degrees[j],
            cutoff: self.cutoff,
        })
    }

    pub fn coproduct_basis(&self, i: usize) -> &LinComb<(usize, usize)> {
        &self.coproduct[i]
    }

    pub fn mul(&self, a: &LinComb<usize>, b: &LinComb<usize>) -> Result<LinComb<usize>, TensorError> {
        let mut out = LinComb::zero();
        for (&i, x) in a {
            for (&j, y) in b {
                out.add_scaled(self.product_basis(i, j)?, &(x * y));
            }
        }
        Ok(out)
    }

    pub fn comul(&self, a: &LinComb<usize>) -> LinComb<(usize, usize)> {
        a.apply(|&i| self.coproduct[i].clone())
    }

    pub fn one(&self) -> LinComb<usize> {
        LinComb::basis(0)
    }

    /// Counit: coefficient of the unit.
    pub fn counit(&self, a: &LinComb<usize>) -> BigInt {
        a.coeff(&0)
    }

    /// `Ψ^k` on a basis element via `Ψ^k(x) = Σ Ψ^{k-1}(x_(1)) x_(2)`.
    pub fn psi_basis(&self, k: u64, i: usize) -> Result<LinComb<usize>, TensorError> {
        if let Some(v) = self.powers.lock().expect("power cache poisoned").get(&(k, i)) {
            return Ok(v.clone());
        }
        let value = match k {
            0 => {
                if i == 0 {
                    self.one()
                } else {
                    LinComb::zero()
                }
            }
            1 => LinComb::basis(i),
            _ => {
                let mut out = LinComb::zero();
                for (&(a, b), c) in &self.coproduct[i] {
                    let head = self.psi_basis(k - 1, a)?;
                    out.add_scaled(&self.mul(&head, &LinComb::basis(b))?, c);
                }
                out
            }
        };
        self.powers.lock().expect("power cache poisoned").insert((k, i), value.clone());
        Ok(value)
    }

    pub fn psi(&self, k: u64, a: &LinComb<usize>) -> Result<LinComb<usize>, TensorError> {
        let mut out = LinComb::zero();
        for (&i, c) in a {
            out.add_scaled(&self.psi_basis(k, i)?, c);
        }
        Ok(out)
    }

    /// The graded map of `Ψ^k` on the whole truncated basis.
    pub fn psi_map(&self, k: u64) -> Result<GradedMap, TensorError> {
        (0..self.len()).map(|i| self.psi_basis(k, i)).collect()
    }

    /// `z*(y)`, the adjoint of left multiplication by `z`: `Σ ⟨z, y_(1)⟩ y_(2)`.
    pub fn skew(&self, z: &LinComb<usize>, y: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for (&(a, b), c) in &self.comul(y) {
            let w = z.coeff(&a);
            if w != BigInt::from(0) {
                out.add_term(b, c * w);
            }
        }
        out
    }

    /// Primitive irreducibles `c` with `Δ(c) = c⊗1 + 1⊗c`, cross-checked
    /// against the orthogonal complement of `I·I` among irreducibles.
    pub fn primitives(&self) -> Result<Vec<usize>, TensorError> {
        let by_coproduct: Vec<usize> = (1..self.len())
            .filter(|&i| self.coproduct[i] == LinComb::from_terms([((i, 0), 1), ((0, i), 1)]))
            .collect();
        let mut generated = vec![false; self.len()];
        for (&(i, j), v) in &self.product {
            if i != 0 && j != 0 {
                for &k in v.support() {
                    generated[k] = true;
                }
            }
        }
        let by_complement: Vec<usize> = (1..self.len()).filter(|&i| !generated[i]).collect();
        if by_coproduct != by_complement {
            return Err(TensorError::Decomposition(format!(
                "algebra {}: primitives by coproduct {:?} differ from complement of I*I {:?}",
                self.name,
                self.label_list(&by_coproduct),
                self.label_list(&by_complement)
            )));
        }
        Ok(by_coproduct)
    }

    pub(crate) fn label_list(&self, idx: &[usize]) -> Vec<&str> {
        idx.iter().map(|&i| self.label(i)).collect()
    }

    pub fn format(&self, v: &LinComb<usize>) -> String {
        format_comb(v, |&i| self.labels[i].clone())
    }

    pub fn format_pairs(&self, v: &LinComb<(usize, usize)>, right: impl Fn(usize) -> String) -> String {
        format_comb(v, |&(a, b)| format!("{} ⊗ {}", self.labels[a], right(b)))
    }

    /// Axioms of a graded connected PSH-algebra on every basis combination of
    /// total degree at most `cutoff`.
    pub fn verify_axioms(&self, cutoff: usize) -> Vec<CheckReport> {
        let cutoff = cutoff.min(self.cutoff);
        let basis: Vec<usize> = self.basis_up_to(cutoff).collect();
        let b = |i: usize| LinComb::basis(i);
        let mut reports = Vec::new();

        let positive = self.product.values().all(LinComb::is_positive) && self.coproduct.iter().all(LinComb::is_positive);
        reports.push(CheckReport::from_witness(
            "algebra positivity",
            (!positive).then(|| "negative structure constant".to_string()),
        ));

        let unit = basis.iter().find(|&&i| {
            self.product.get(&(0, i)) != Some(&b(i)) || self.product.get(&(i, 0)) != Some(&b(i))
        });
        reports.push(CheckReport::from_witness("algebra unit", unit.map(|&i| self.labels[i].clone())));

        let counit = basis.iter().find(|&&i| {
            let left: LinComb<usize> =
                self.coproduct[i].iter().filter(|((a, _), _)| *a == 0).map(|(&(_, r), c)| (r, c.clone())).collect();
            let right: LinComb<usize> =
                self.coproduct[i].iter().filter(|((_, r), _)| *r == 0).map(|(&(a, _), c)| (a, c.clone())).collect();
            left != b(i) || right != b(i)
        });
        reports.push(CheckReport::from_witness("algebra counit", counit.map(|&i| self.labels[i].clone())));

        let mut adjoint = None;
        'adj: for &i in &basis {
            for &j in &basis {
                if self.degrees[i] + self.degrees[j] > cutoff {
                    continue;
                }
                for &k in &basis {
                    let lhs = self.product[&(i, j)].coeff(&k);
                    let rhs = self.coproduct[k].coeff(&(i, j));
                    if lhs != rhs {
                        adjoint = Some(format!("<{}*{}, {}> = {lhs} but coproduct gives {rhs}", self.labels[i], self.labels[j], self.labels[k]));
                        break 'adj;
                    }
                }
            }
        }
        reports.push(CheckReport::from_witness("algebra adjointness", adjoint));

        let mut assoc = None;
        'assoc: for &i in &basis {
            for &j in &basis {
                for &k in &basis {
                    if self.degrees[i] + self.degrees[j] + self.degrees[k] > cutoff {
                        continue;
                    }
                    let lhs = self.mul(&self.product[&(i, j)], &b(k));
                    let rhs = self.mul(&b(i), &self.product[&(j, k)]);
                    if lhs != rhs {
                        assoc = Some(format!("({} {} {})", self.labels[i], self.labels[j], self.labels[k]));
                        break 'assoc;
                    }
                }
            }
        }
        reports.push(CheckReport::from_witness("algebra associativity", assoc));

        let coassoc = basis.iter().find(|&&i| {
            let mut left: LinComb<(usize, usize, usize)> = LinComb::zero();
            let mut right: LinComb<(usize, usize, usize)> = LinComb::zero();
            for (&(a, r), c) in &self.coproduct[i] {
                for (&(x, y), d) in &self.coproduct[a] {
                    left.add_term((x, y, r), c * d);
                }
                for (&(x, y), d) in &self.coproduct[r] {
                    right.add_term((a, x, y), c * d);
                }
            }
            left != right
        });
        reports.push(CheckReport::from_witness("algebra coassociativity", coassoc.map(|&i| self.labels[i].clone())));

        let mut hopf = None;
        'hopf: for &i in &basis {
            for &j in &basis {
                if self.degrees[i] + self.degrees[j] > cutoff {
                    continue;
                }
                let lhs = self.comul(&self.product[&(i, j)]);
                let mut rhs = LinComb::zero();
                for (&(a, r), c) in &self.coproduct[i] {
                    for (&(x, y), d) in &self.coproduct[j] {
                        let left = &self.product[&(a, x)];
                        let right = &self.product[&(r, y)];
                        let cd = c * d;
                        for (&u, e) in left {
                            for (&v, f) in right {
                                rhs.add_term((u, v), &cd * e * f);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    hopf = Some(format!("Δ({} * {})", self.labels[i], self.labels[j]));
                    break 'hopf;
                }
            }
        }
        reports.push(CheckReport::from_witness("algebra Hopf axiom", hopf));
        reports
    }

    /// Serializes the basis and product table; the coproduct is its transpose.
    pub fn to_json(&self) -> String {
        let mut product: Vec<(String, String, Vec<(String, BigInt)>)> = self
            .product
            .iter()
            .map(|(&(i, j), v)| {
                (
                    self.labels[i].clone(),
                    self.labels[j].clone(),
                    v.iter().map(|(&k, c)| (self.labels[k].clone(), c.clone())).collect(),
                )
            })
            .collect();
        product.sort_by_key(|(a, b, _)| (self.index[a], self.index[b]));
        let rec = AlgebraRecord {
            name: self.name.clone(),
            cutoff: self.cutoff,
            basis: self.labels.iter().cloned().zip(self.degrees.iter().copied()).collect(),
            product,
        };
        serde_json::to_string_pretty(&rec).expect("algebra serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TensorError> {
        let rec: AlgebraRecord = serde_json::from_str(text).map_err(|e| TensorError::MalformedTable(e.to_string()))?;
        let (labels, degrees): (Vec<String>, Vec<usize>) = rec.basis.into_iter().unzip();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let look = |l: &str| index.get(l).copied().ok_or_else(|| TensorError::UnknownLabel(l.to_string()));
        let mut product = HashMap::new();
        let mut coproduct = vec![LinComb::zero(); labels.len()];
        for (a, b, terms) in rec.product {
            let (i, j) = (look(&a)?, look(&b)?);
            let mut v = LinComb::zero();
            for (l, c) in terms {
                let k = look(&l)?;
                coproduct[k].add_term((i, j), c.clone());
                v.add_term(k, c);
            }
            product.insert((i, j), v);
        }
        Self::from_tables(rec.name, rec.cutoff, labels, degrees, product, coproduct)
    }
}

pub(crate) fn format_comb<B: Ord + Clone>(v: &LinComb<B>, label: impl Fn(&B) -> String) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (b, c)) in v.iter().enumerate() {
        let sign = if c.sign() == num_bigint::Sign::Minus { "-" } else { "+" };
        if i == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&format!("{}*{}", c.magnitude(), label(b)));
    }
    out
}

/// Dense integer matrix of a graded map restricted to one degree.
pub fn degree_matrix(
    map: &GradedMap,
    source: &[usize],
    target: &[usize],
) -> Vec<Vec<i64>> {
    let rows: BTreeMap<usize, usize> = target.iter().enumerate().map(|(r, &t)| (t, r)).collect();
    let mut m = vec![vec![0i64; source.len()]; target.len()];
    for (col, &s) in source.iter().enumerate() {
        for (t, c) in &map[s] {
            if let Some(&r) = rows.get(t) {
                m[r][col] = i64::try_from(c).expect("matrix entry fits in i64");
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_functions_satisfy_axioms() {
        let r = PshAlgebra::symmetric_functions(4);
        for rep in r.verify_axioms(4) {
            assert!(rep.passed(), "{rep}");
        }
        assert_eq!(r.primitives().unwrap(), vec![r.index_of("[1]").unwrap()]);
    }

    #[test]
    fn psi_matches_symfunc() {
        let r = PshAlgebra::symmetric_functions(4);
        for k in 0..4u64 {
            for i in 0..r.len() {
                let p: Partition = r.label(i).parse().unwrap();
                let expect = symfunc::hopf_power_basis(k, &p).map_basis(|q| r.index_of(&q.to_string()).unwrap());
                assert_eq!(r.psi_basis(k, i).unwrap(), expect);
            }
        }
    }

    #[test]
    fn skew_is_adjoint_of_multiplication() {
        let r = PshAlgebra::symmetric_functions(4);
        let s1 = LinComb::basis(r.index_of("[1]").unwrap());
        let s2 = LinComb::basis(r.index_of("[2]").unwrap());
        assert_eq!(r.skew(&s1, &s2), s1);
        for i in r.basis_up_to(2) {
            for j in r.basis_up_to(2) {
                for k in r.basis_up_to(4) {
                    let (x, y, z) = (LinComb::basis(i), LinComb::basis(j), LinComb::basis(k));
                    assert_eq!(r.mul(&x, &y).unwrap().inner(&z), y.inner(&r.skew(&x, &z)));
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let r = PshAlgebra::symmetric_functions(3);
        let again = PshAlgebra::from_json(&r.to_json()).unwrap();
        assert_eq!(again.labels(), r.labels());
        assert_eq!(again.coproduct, r.coproduct);
        assert_eq!(again.to_json(), r.to_json());
    }

    #[test]
    fn beyond_cutoff_is_an_error() {
        let r = PshAlgebra::symmetric_functions(2);
        let s2 = LinComb::basis(r.index_of("[2]").unwrap());
        assert!(matches!(r.mul(&s2, &s2), Err(TensorError::BeyondCutoff { degree: 4, .. })));
    }
}
