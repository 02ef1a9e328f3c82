//! Elements of `R^⊗k` and the matrix Hopf maps `Ψ^M: R^⊗k → R^⊗l`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::TensorError;
use crate::lincomb::LinComb;
use crate::memo::Memo;
use crate::symfunc::{self, Partition, SchurVector};

/// A sparse integer combination of `k`-tuples of partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVector {
    arity: usize,
    terms: LinComb<Vec<Partition>>,
}

impl GradedVector {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "arity must be positive");
        Self { arity, terms: LinComb::zero() }
    }

    pub fn basis(tuple: Vec<Partition>) -> Self {
        let arity = tuple.len();
        Self::from_lincomb(arity, LinComb::basis(tuple))
    }

    /// # Panics
    /// If some tuple has the wrong length or `arity` is zero.
    pub fn from_lincomb(arity: usize, terms: LinComb<Vec<Partition>>) -> Self {
        assert!(arity >= 1, "arity must be positive");
        assert!(terms.support().all(|t| t.len() == arity), "tuple length differs from arity");
        Self { arity, terms }
    }

    /// The unit `1 ⊗ ⋯ ⊗ 1`.
    pub fn one(arity: usize) -> Self {
        Self::basis(vec![Partition::empty(); arity])
    }

    pub fn from_schur(v: &SchurVector) -> Self {
        Self::from_lincomb(1, v.map_basis(|p| vec![p.clone()]))
    }

    /// Arity-1 vectors are Schur vectors.
    pub fn to_schur(&self) -> Option<SchurVector> {
        (self.arity == 1).then(|| self.terms.map_basis(|t| t[0].clone()))
    }

    /// Simple tensor of Schur vectors.
    pub fn tensor_of(factors: &[SchurVector]) -> Self {
        assert!(!factors.is_empty(), "need at least one factor");
        let mut acc: LinComb<Vec<Partition>> = LinComb::basis(Vec::new());
        for f in factors {
            acc = acc.bilinear(f, |t, p| {
                let mut t = t.clone();
                t.push(p.clone());
                LinComb::basis(t)
            });
        }
        Self::from_lincomb(factors.len(), acc)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &LinComb<Vec<Partition>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, tuple: &[Partition]) -> BigInt {
        self.terms.coeff(&tuple.to_vec())
    }

    pub fn homogeneous(&self, degree: usize) -> Self {
        Self {
            arity: self.arity,
            terms: self.terms.filter(|t| tuple_degree(t) == degree),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        check_arity(self.arity, other.arity)?;
        Ok(Self { arity: self.arity, terms: &self.terms + &other.terms })
    }

    pub fn inner(&self, other: &Self) -> Result<BigInt, TensorError> {
        check_arity(self.arity, other.arity)?;
        Ok(self.terms.inner(&other.terms))
    }
}

pub fn tuple_degree(t: &[Partition]) -> usize {
    t.iter().map(Partition::size).sum()
}

fn check_arity(expected: usize, found: usize) -> Result<(), TensorError> {
    if expected == found {
        Ok(())
    } else {
        Err(TensorError::ArityMismatch { expected, found })
    }
}

/// Componentwise product in `R^⊗k`.
pub fn tensor_mul(a: &GradedVector, b: &GradedVector) -> Result<GradedVector, TensorError> {
    check_arity(a.arity, b.arity)?;
    let terms = a.terms.bilinear(&b.terms, |x, y| mul_tuples(x, y));
    Ok(GradedVector { arity: a.arity, terms })
}

fn mul_tuples(x: &[Partition], y: &[Partition]) -> LinComb<Vec<Partition>> {
    x.iter()
        .zip(y)
        .fold(LinComb::basis(Vec::new()), |acc, (p, q)| {
            let prod = symfunc::mul_basis(p, q);
            acc.bilinear(&*prod, |t, r| {
                let mut t = t.clone();
                t.push(r.clone());
                LinComb::basis(t)
            })
        })
}

/// Componentwise comultiplication `R^⊗k → R^⊗k ⊗ R^⊗k`.
pub fn tensor_coproduct(v: &GradedVector) -> LinComb<(Vec<Partition>, Vec<Partition>)> {
    v.terms.apply(|tuple| {
        tuple.iter().fold(LinComb::basis((Vec::new(), Vec::new())), |acc, p| {
            let cop = symfunc::coproduct_basis(p);
            acc.bilinear(&*cop, |(l, r), (a, b)| {
                let (mut l, mut r) = (l.clone(), r.clone());
                l.push(a.clone());
                r.push(b.clone());
                LinComb::basis((l, r))
            })
        })
    })
}

/// Concatenating tensor product `R^⊗a ⊗ R^⊗b → R^⊗(a+b)`.
pub fn tensor_concat(a: &GradedVector, b: &GradedVector) -> GradedVector {
    let terms = a.terms.bilinear(&b.terms, |x, y| LinComb::basis([x.clone(), y.clone()].concat()));
    GradedVector { arity: a.arity + b.arity, terms }
}

/// The Hopf power map of `R^⊗k`, which acts as `Ψ^n` in every component.
pub fn tensor_hopf_power(n: u64, v: &GradedVector) -> GradedVector {
    let terms = v.terms.apply(|tuple| {
        let factors: Vec<SchurVector> = tuple
            .iter()
            .map(|p| (*symfunc::hopf_power_basis(n, p)).clone())
            .collect();
        GradedVector::tensor_of(&factors).terms
    });
    GradedVector { arity: v.arity, terms }
}

/// An `l × k` matrix of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HopfMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u64>>,
}

impl HopfMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> Result<Self, TensorError> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(TensorError::BadMatrix("matrix must have at least one row and column".into()));
        }
        if entries.iter().any(|r| r.len() != cols) {
            return Err(TensorError::BadMatrix("rows have different lengths".into()));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn scalar(n: u64, size: usize) -> Self {
        let entries = (0..size)
            .map(|i| (0..size).map(|j| if i == j { n } else { 0 }).collect())
            .collect();
        Self::new(entries).expect("nonempty square matrix")
    }

    pub fn identity(size: usize) -> Self {
        Self::scalar(1, size)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.entries[i][j]).collect())
            .collect();
        Self { rows: self.cols, cols: self.rows, entries }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, TensorError> {
        check_arity(self.cols, other.rows)?;
        let entries = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| (0..self.cols).map(|t| self.entries[i][t] * other.entries[t][j]).sum())
                    .collect()
            })
            .collect();
        Ok(Self { rows: self.rows, cols: other.cols, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(TensorError::BadMatrix(format!(
                "cannot add {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }
}

impl fmt::Display for HopfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// One row per line, entries separated by spaces or commas; `#` starts a comment.
impl FromStr for HopfMatrix {
    type Err = TensorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut entries = Vec::new();
        for line in s.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| TensorError::BadMatrix(format!("{line:?}: {e}")))?;
            entries.push(row);
        }
        Self::new(entries)
    }
}

static PSI_COLUMN: Memo<(Vec<u64>, Partition), LinComb<Vec<Partition>>> = Memo::new();

/// `(⊗_i Ψ^{m_i}) Δ^{(l)}(s_λ)` for one column `m` of a Hopf matrix.
fn psi_column(column: &[u64], lam: &Partition) -> Arc<LinComb<Vec<Partition>>> {
    PSI_COLUMN.get_or_compute(&(column.to_vec(), lam.clone()), || {
        symfunc::iterated_coproduct_basis(column.len(), lam).apply(|tuple| {
            let factors: Vec<SchurVector> = tuple
                .iter()
                .zip(column)
                .map(|(p, &m)| (*symfunc::hopf_power_basis(m, p)).clone())
                .collect();
            GradedVector::tensor_of(&factors).terms
        })
    })
}

/// `Ψ^M(v)`: comultiply each of the `k` components `l` times, apply
/// `Ψ^{m_ij}` to entry `(i, j)`, and multiply along each row.
///
/// Because comultiplication of `R^⊗k` is componentwise, this is the
/// componentwise product over columns `j` of `(⊗_i Ψ^{m_ij}) Δ^{(l)}(v_j)`.
pub fn psi_matrix(m: &HopfMatrix, v: &GradedVector) -> Result<GradedVector, TensorError> {
    check_arity(m.cols, v.arity)?;
    let columns: Vec<Vec<u64>> = (0..m.cols).map(|j| (0..m.rows).map(|i| m.entry(i, j)).collect()).collect();
    let terms = v.terms.apply(|tuple| {
        tuple
            .iter()
            .zip(&columns)
            .fold(LinComb::basis(vec![Partition::empty(); m.rows]), |acc, (lam, col)| {
                acc.bilinear(&*psi_column(col, lam), |x, y| mul_tuples(x, y))
            })
    });
    Ok(GradedVector { arity: m.rows, terms })
}

/// Every `k`-tuple of partitions with total degree at most `max_degree`,
/// ordered by degree and then lexicographically.
pub fn tensor_basis(arity: usize, max_degree: usize) -> Vec<Vec<Partition>> {
    let mut out: Vec<Vec<Partition>> = Vec::new();
    fn rec(arity: usize, budget: usize, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if cur.len() == arity {
            out.push(cur.clone());
            return;
        }
        for p in Partition::all_up_to(budget) {
            let size = p.size();
            cur.push(p);
            rec(arity, budget - size, cur, out);
            cur.pop();
        }
    }
    rec(arity, max_degree, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| tuple_degree(a).cmp(&tuple_degree(b)).then_with(|| a.cmp(b)));
    out
}

/// Text form `c*s[..] ⊗ s[..] + ...`, `0` for zero.
impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        symfunc::write_terms(
            f,
            self.terms.iter().map(|(t, c)| {
                let parts: Vec<String> = t.iter().map(|p| format!("s{p}")).collect();
                (parts.join(" ⊗ "), c)
            }),
        )
    }
}

/// Parses the `Display` form; tensor factors are separated by `⊗` or `@`.
impl FromStr for GradedVector {
    type Err = TensorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        symfunc::parse_tensor_terms(s).map_err(|e| TensorError::Parse(e.to_string())).and_then(|(arity, terms)| {
            if arity == 0 {
                Err(TensorError::Parse("cannot infer the arity of 0; write e.g. 0*s[] ⊗ s[]".into()))
            } else {
                Ok(GradedVector::from_lincomb(arity, terms))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{one, s};

    fn gv(factors: &[SchurVector]) -> GradedVector {
        GradedVector::tensor_of(factors)
    }

    #[test]
    fn tensor_mul_examples() {
        let a = gv(&[s(&[1]), one()]);
        let b = gv(&[one(), s(&[1])]);
        assert_eq!(tensor_mul(&a, &b).unwrap(), gv(&[s(&[1]), s(&[1])]));
        let c = gv(&[s(&[1]), s(&[1])]);
        let d = gv(&[s(&[1]), one()]);
        let sum = &s(&[2]) + &s(&[1, 1]);
        assert_eq!(tensor_mul(&c, &d).unwrap(), gv(&[sum, s(&[1])]));
        assert!(matches!(
            tensor_mul(&a, &GradedVector::one(3)),
            Err(TensorError::ArityMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn psi_matrix_examples() {
        let v = gv(&[s(&[1]), s(&[1])]);
        let row = HopfMatrix::new(vec![vec![1, 1]]).unwrap();
        let out = psi_matrix(&row, &v).unwrap();
        assert_eq!(out.to_schur().unwrap(), &s(&[2]) + &s(&[1, 1]));
        let two = HopfMatrix::new(vec![vec![2]]).unwrap();
        let out = psi_matrix(&two, &GradedVector::from_schur(&s(&[2]))).unwrap();
        assert_eq!(out.to_schur().unwrap(), symfunc::hopf_power(2, &s(&[2])));
        for k in 1..=3 {
            let id = HopfMatrix::identity(k);
            for t in tensor_basis(k, 4) {
                let b = GradedVector::basis(t);
                assert_eq!(psi_matrix(&id, &b).unwrap(), b);
            }
        }
    }

    /// The definition read literally: comultiply the whole tensor `l` times,
    /// apply `Ψ^{m_ij}` entrywise and multiply rows.
    fn psi_matrix_literal(m: &HopfMatrix, v: &GradedVector) -> GradedVector {
        let mut layers: LinComb<Vec<Vec<Partition>>> =
            v.terms.map_basis(|t| vec![t.clone()]);
        for _ in 1..m.rows() {
            layers = layers.apply(|stack| {
                let last = GradedVector::basis(stack.last().unwrap().clone());
                tensor_coproduct(&last).map_basis(|(a, b)| {
                    let mut st = stack[..stack.len() - 1].to_vec();
                    st.push(a.clone());
                    st.push(b.clone());
                    st
                })
            });
        }
        let terms = layers.apply(|stack| {
            let rows: Vec<SchurVector> = stack
                .iter()
                .enumerate()
                .map(|(i, tuple)| {
                    tuple.iter().enumerate().fold(one(), |acc, (j, p)| {
                        symfunc::mul(&acc, &symfunc::hopf_power_basis(m.entry(i, j), p))
                    })
                })
                .collect();
            GradedVector::tensor_of(&rows).terms
        });
        GradedVector::from_lincomb(m.rows(), terms)
    }

    #[test]
    fn column_form_agrees_with_literal_definition() {
        let m = HopfMatrix::new(vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        for t in tensor_basis(3, 3) {
            let b = GradedVector::basis(t);
            assert_eq!(psi_matrix(&m, &b).unwrap(), psi_matrix_literal(&m, &b));
        }
        let m = HopfMatrix::new(vec![vec![0, 2], vec![1, 0], vec![3, 1]]).unwrap();
        for t in tensor_basis(2, 3) {
            let b = GradedVector::basis(t);
            assert_eq!(psi_matrix(&m, &b).unwrap(), psi_matrix_literal(&m, &b));
        }
    }

    #[test]
    fn matrix_parsing() {
        let m: HopfMatrix = "1 2\n3, 4 # comment\n".parse().unwrap();
        assert_eq!(m.entries(), &[vec![1, 2], vec![3, 4]]);
        assert!("1 2\n3".parse::<HopfMatrix>().is_err());
        assert!("-1".parse::<HopfMatrix>().is_err());
        assert!("".parse::<HopfMatrix>().is_err());
    }

    #[test]
    fn text_round_trip() {
        let v = tensor_mul(&gv(&[s(&[1]), s(&[1])]), &gv(&[s(&[1]), one()])).unwrap();
        let text = v.to_string();
        assert_eq!(text, "1*s[2] ⊗ s[1] + 1*s[1,1] ⊗ s[1]");
        assert_eq!(text.parse::<GradedVector>().unwrap(), v);
        assert_eq!("s[1] @ s[]".parse::<GradedVector>().unwrap(), gv(&[s(&[1]), one()]));
    }
}
