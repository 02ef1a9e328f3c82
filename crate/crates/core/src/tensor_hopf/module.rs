use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::algebra::{format_comb, GradedMap};
use super::{PshAlgebra, TensorError};
use crate::lincomb::LinComb;
use crate::report::{combine, CheckReport};

/// A truncated `k`-PSH module over a [`PshAlgebra`].
///
/// `action[(h, m)]` is `α(h ⊗ m)` for every pair with `deg h + deg m ≤ cutoff`;
/// `coaction[m]` is `α*(m)` as a combination of (algebra, module) index pairs.
#[derive(Debug, Clone)]
pub struct PshModule {
    algebra: Arc<PshAlgebra>,
    twist: u64,
    cutoff: usize,
    labels: Vec<String>,
    degrees: Vec<usize>,
    index: HashMap<String, usize>,
    action: HashMap<(usize, usize), LinComb<usize>>,
    coaction: Vec<LinComb<(usize, usize)>>,
}

/// The first disagreement found when comparing two modules' tables by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMismatch(pub String);

#[derive(Serialize, Deserialize)]
struct ModuleRecord {
    algebra: String,
    twist: u64,
    cutoff: usize,
    basis: Vec<(String, usize)>,
    action: Vec<(String, String, Vec<(String, BigInt)>)>,
    coaction: Vec<(String, Vec<(String, String, BigInt)>)>,
}

impl PshModule {
    pub fn new(
        algebra: Arc<PshAlgebra>,
        twist: u64,
        cutoff: usize,
        labels: Vec<String>,
        degrees: Vec<usize>,
        action: HashMap<(usize, usize), LinComb<usize>>,
        coaction: Vec<LinComb<(usize, usize)>>,
    ) -> Result<Self, TensorError> {
        let bad = |m: String| Err(TensorError::MalformedTable(m));
        if cutoff > algebra.cutoff() {
            return Err(TensorError::CutoffMismatch { left: cutoff, right: algebra.cutoff() });
        }
        let n = labels.len();
        if degrees.len() != n || coaction.len() != n {
            return bad("basis, degree and coaction lists differ in length".into());
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
        for h in 0..algebra.len() {
            for m in 0..n {
                let d = algebra.degree(h) + degrees[m];
                if d <= cutoff && !action.contains_key(&(h, m)) {
                    return bad(format!("missing action {} . {}", algebra.label(h), labels[m]));
                }
            }
        }
        for (&(h, m), v) in &action {
            if h >= algebra.len() || m >= n || v.support().any(|&k| k >= n || degrees[k] != algebra.degree(h) + degrees[m]) {
                return bad(format!("action entry ({h}, {m}) is not graded"));
            }
        }
        for (m, v) in coaction.iter().enumerate() {
            if v.support().any(|&(a, k)| a >= algebra.len() || k >= n || algebra.degree(a) + degrees[k] != degrees[m]) {
                return bad(format!("coaction of {} is not graded", labels[m]));
            }
        }
        Ok(Self { algebra, twist, cutoff, labels, degrees, index, action, coaction })
    }

    /// The algebra as a module over itself, twist 1.
    pub fn canonical(algebra: Arc<PshAlgebra>, cutoff: usize) -> Result<Self, TensorError> {
        let basis: Vec<usize> = algebra.basis_up_to(cutoff).collect();
        let mut action = HashMap::new();
        for &h in &basis {
            for &m in &basis {
                if algebra.degree(h) + algebra.degree(m) <= cutoff {
                    action.insert((h, m), algebra.product_basis(h, m)?.clone());
                }
            }
        }
        let coaction = basis.iter().map(|&m| algebra.coproduct_basis(m).clone()).collect();
        let labels = basis.iter().map(|&i| algebra.label(i).to_string()).collect();
        let degrees = basis.iter().map(|&i| algebra.degree(i)).collect();
        Self::new(algebra, 1, cutoff, labels, degrees, action, coaction)
    }

    /// `R^(d)`: `R` over itself pulled back along `δ = δ* = Ψ^d`, twist `d²`.
    pub fn r_d(algebra: Arc<PshAlgebra>, d: u64, cutoff: usize) -> Result<Self, TensorError> {
        let base = Self::canonical(Arc::clone(&algebra), cutoff)?;
        let psi = algebra.psi_map(d)?;
        base.pullback(algebra, &psi, &psi, d * d)
    }

    pub fn algebra(&self) -> &Arc<PshAlgebra> {
        &self.algebra
    }

    pub fn twist(&self) -> u64 {
        self.twist
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

    pub fn basis_up_to(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.degrees[i] <= n)
    }

    pub fn action_basis(&self, h: usize, m: usize) -> Result<&LinComb<usize>, TensorError> {
        self.action.get(&(h, m)).ok_or_else(|| TensorError::BeyondCutoff {
            what: format!("{} . {}", self.algebra.label(h), self.labels[m]),
            degree: self.algebra.degree(h) + self.degrees[m],
            cutoff: self.cutoff,
        })
    }

    pub fn coaction_basis(&self, m: usize) -> &LinComb<(usize, usize)> {
        &self.coaction[m]
    }

    /// Replaces one action entry, for building negative controls.
    pub fn set_action(&mut self, h: usize, m: usize, value: LinComb<usize>) {
        self.action.insert((h, m), value);
    }

    pub fn set_coaction(&mut self, m: usize, value: LinComb<(usize, usize)>) {
        self.coaction[m] = value;
    }

    pub fn act(&self, h: &LinComb<usize>, m: &LinComb<usize>) -> Result<LinComb<usize>, TensorError> {
        let mut out = LinComb::zero();
        for (&a, x) in h {
            for (&b, y) in m {
                out.add_scaled(self.action_basis(a, b)?, &(x * y));
            }
        }
        Ok(out)
    }

    pub fn coact(&self, m: &LinComb<usize>) -> LinComb<(usize, usize)> {
        m.apply(|&i| self.coaction[i].clone())
    }

    /// `x̃(m) = (⟨x, ·⟩ ⊗ 1) α*(m)`, adjoint to `m ↦ xm`.
    pub fn skew_action(&self, x: &LinComb<usize>, m: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for (&(a, b), c) in &self.coact(m) {
            let w = x.coeff(&a);
            if !w.is_zero() {
                out.add_term(b, c * w);
            }
        }
        out
    }

    /// `m̃(n) = (1 ⊗ ⟨m, ·⟩) α*(n)`, adjoint to `x ↦ xm`; lands in the algebra.
    pub fn module_skew(&self, m: &LinComb<usize>, n: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for (&(a, b), c) in &self.coact(n) {
            let w = m.coeff(&b);
            if !w.is_zero() {
                out.add_term(a, c * w);
            }
        }
        out
    }

    pub fn format(&self, v: &LinComb<usize>) -> String {
        format_comb(v, |&i| self.labels[i].clone())
    }

    fn format_pairs(&self, v: &LinComb<(usize, usize)>) -> String {
        format_comb(v, |&(a, b)| format!("{} ⊗ {}", self.algebra.label(a), self.labels[b]))
    }

    /// `Σ Ψ^k(h_(1)) m_(1) ⊗ h_(2) m_(2)`, the right side of the `k`-Hopf axiom.
    fn twisted_coaction(&self, k: u64, h: usize, m: usize) -> Result<LinComb<(usize, usize)>, TensorError> {
        let alg = &self.algebra;
        let mut out = LinComb::zero();
        for (&(h1, h2), c) in alg.coproduct_basis(h) {
            let left_h = alg.psi_basis(k, h1)?;
            for (&(m1, m2), d) in &self.coaction[m] {
                let left = alg.mul(&left_h, &LinComb::basis(m1))?;
                let right = self.action_basis(h2, m2)?;
                let cd = c * d;
                for (&u, e) in &left {
                    for (&v, f) in right {
                        out.add_term((u, v), &cd * e * f);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Checks `α*(hm) = Ψ^k(h_(1)) m_(1) ⊗ h_(2) m_(2)` on every basis pair
    /// of total degree at most `cutoff`, with `k` the module's twist.
    pub fn verify_k_hopf(&self, cutoff: usize) -> CheckReport {
        self.verify_k_hopf_with(self.twist, cutoff)
    }

    pub fn verify_k_hopf_with(&self, k: u64, cutoff: usize) -> CheckReport {
        let check = format!("{k}-Hopf axiom up to degree {cutoff}");
        let cutoff = cutoff.min(self.cutoff);
        for h in self.algebra.basis_up_to(cutoff) {
            for m in self.basis_up_to(cutoff - self.algebra.degree(h)) {
                let witness = |detail: String| format!("h = {}, m = {}: {detail}", self.algebra.label(h), self.labels[m]);
                let lhs = match self.action_basis(h, m) {
                    Ok(v) => self.coact(v),
                    Err(e) => return CheckReport::fail(check, witness(e.to_string())),
                };
                match self.twisted_coaction(k, h, m) {
                    Ok(rhs) if rhs == lhs => {}
                    Ok(rhs) => {
                        return CheckReport::fail(
                            check,
                            witness(format!("α*(hm) = {} but expected {}", self.format_pairs(&lhs), self.format_pairs(&rhs))),
                        )
                    }
                    Err(e) => return CheckReport::fail(check, witness(e.to_string())),
                }
            }
        }
        CheckReport::pass(check)
    }

    /// Unit, counit, positivity, adjointness, associativity and coassociativity.
    pub fn verify_structure(&self, cutoff: usize) -> Vec<CheckReport> {
        let cutoff = cutoff.min(self.cutoff);
        let alg = &self.algebra;
        let basis: Vec<usize> = self.basis_up_to(cutoff).collect();
        let mut reports = Vec::new();

        let unit = basis.iter().find(|&&m| self.action.get(&(0, m)) != Some(&LinComb::basis(m)));
        reports.push(CheckReport::from_witness("module unit", unit.map(|&m| self.labels[m].clone())));

        let counit = basis.iter().find(|&&m| {
            let head: LinComb<usize> =
                self.coaction[m].iter().filter(|((a, _), _)| *a == 0).map(|(&(_, b), c)| (b, c.clone())).collect();
            head != LinComb::basis(m)
        });
        reports.push(CheckReport::from_witness("module counit", counit.map(|&m| self.labels[m].clone())));

        let positive = self.action.values().all(LinComb::is_positive) && self.coaction.iter().all(LinComb::is_positive);
        reports.push(CheckReport::from_witness(
            "module positivity",
            (!positive).then(|| "negative structure constant".to_string()),
        ));

        let mut adjoint = None;
        'adj: for h in alg.basis_up_to(cutoff) {
            for &m in &basis {
                if alg.degree(h) + self.degrees[m] > cutoff {
                    continue;
                }
                let v = &self.action[&(h, m)];
                for &n in &basis {
                    let lhs = v.coeff(&n);
                    let rhs = self.coaction[n].coeff(&(h, m));
                    if lhs != rhs {
                        adjoint = Some(format!(
                            "<{} . {}, {}> = {lhs} but coaction gives {rhs}",
                            alg.label(h),
                            self.labels[m],
                            self.labels[n]
                        ));
                        break 'adj;
                    }
                }
            }
        }
        reports.push(CheckReport::from_witness("module adjointness", adjoint));

        let mut assoc = None;
        'assoc: for x in alg.basis_up_to(cutoff) {
            for y in alg.basis_up_to(cutoff - alg.degree(x)) {
                for m in self.basis_up_to(cutoff - alg.degree(x) - alg.degree(y)) {
                    let (bx, by, bm) = (LinComb::basis(x), LinComb::basis(y), LinComb::basis(m));
                    let lhs = alg.mul(&bx, &by).and_then(|xy| self.act(&xy, &bm));
                    let rhs = self.act(&by, &bm).and_then(|ym| self.act(&bx, &ym));
                    if lhs != rhs {
                        assoc = Some(format!("x = {}, y = {}, m = {}", alg.label(x), alg.label(y), self.labels[m]));
                        break 'assoc;
                    }
                }
            }
        }
        reports.push(CheckReport::from_witness("module associativity", assoc));

        let coassoc = basis.iter().find(|&&m| {
            let mut left: LinComb<(usize, usize, usize)> = LinComb::zero();
            let mut right: LinComb<(usize, usize, usize)> = LinComb::zero();
            for (&(a, r), c) in &self.coaction[m] {
                for (&(x, y), d) in alg.coproduct_basis(a) {
                    left.add_term((x, y, r), c * d);
                }
                for (&(x, y), d) in &self.coaction[r] {
                    right.add_term((a, x, y), c * d);
                }
            }
            left != right
        });
        reports.push(CheckReport::from_witness("module coassociativity", coassoc.map(|&m| self.labels[m].clone())));
        reports
    }

    /// All axioms of a `k`-PSH module with `k` the twist.
    pub fn verify_psh(&self, cutoff: usize) -> CheckReport {
        let mut parts = self.verify_structure(cutoff);
        parts.push(self.verify_k_hopf(cutoff));
        combine(format!("{}-PSH module up to degree {cutoff}", self.twist), &parts)
    }

    /// Irreducible module primitives `ω` (with `α*(ω) = 1 ⊗ ω`), computed as the
    /// irreducibles orthogonal to `IM` and cross-checked against the coaction.
    pub fn primitives(&self) -> Result<Vec<usize>, TensorError> {
        let mut generated = vec![false; self.len()];
        for (&(h, _), v) in &self.action {
            if h != 0 {
                for &k in v.support() {
                    generated[k] = true;
                }
            }
        }
        let by_complement: Vec<usize> = (0..self.len()).filter(|&m| !generated[m]).collect();
        let by_coaction: Vec<usize> = (0..self.len())
            .filter(|&m| self.coaction[m] == LinComb::basis((0, m)))
            .collect();
        if by_complement != by_coaction {
            let names = |v: &[usize]| v.iter().map(|&i| self.labels[i].clone()).collect::<Vec<_>>();
            return Err(TensorError::Decomposition(format!(
                "primitives orthogonal to IM {:?} differ from those with trivial coaction {:?}",
                names(&by_complement),
                names(&by_coaction)
            )));
        }
        Ok(by_complement)
    }

    fn check_same_base(&self, other: &Self) -> Result<(), TensorError> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(TensorError::AlgebraMismatch {
                left: self.algebra.name().into(),
                right: other.algebra.name().into(),
            });
        }
        if self.cutoff != other.cutoff {
            return Err(TensorError::CutoffMismatch { left: self.cutoff, right: other.cutoff });
        }
        Ok(())
    }

    /// `M ⊗ N` with `γ(h⊗m⊗n) = h_(1)m ⊗ h_(2)n` and
    /// `γ*(m⊗n) = m_(1)n_(1) ⊗ m_(2) ⊗ n_(2)`; twist is the sum of twists.
    /// Basis labels are `m⊗n`.
    pub fn tensor(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same_base(other)?;
        let alg = &self.algebra;
        let cutoff = self.cutoff;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for m in 0..self.len() {
            for n in 0..other.len() {
                if self.degrees[m] + other.degrees[n] <= cutoff {
                    pairs.push((m, n));
                }
            }
        }
        pairs.sort_by_key(|&(m, n)| (self.degrees[m] + other.degrees[n], m, n));
        let pos: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let labels: Vec<String> = pairs.iter().map(|&(m, n)| format!("{}⊗{}", self.labels[m], other.labels[n])).collect();
        let degrees: Vec<usize> = pairs.iter().map(|&(m, n)| self.degrees[m] + other.degrees[n]).collect();

        let mut action = HashMap::new();
        for h in alg.basis_up_to(cutoff) {
            for (i, &(m, n)) in pairs.iter().enumerate() {
                if alg.degree(h) + degrees[i] > cutoff {
                    continue;
                }
                let mut out = LinComb::zero();
                for (&(h1, h2), c) in alg.coproduct_basis(h) {
                    let left = self.action_basis(h1, m)?;
                    let right = other.action_basis(h2, n)?;
                    for (&u, e) in left {
                        for (&v, f) in right {
                            out.add_term(pos[&(u, v)], c * e * f);
                        }
                    }
                }
                action.insert((h, i), out);
            }
        }

        let mut coaction = Vec::with_capacity(pairs.len());
        for &(m, n) in &pairs {
            let mut out = LinComb::zero();
            for (&(a, m2), c) in &self.coaction[m] {
                for (&(b, n2), d) in &other.coaction[n] {
                    for (&ab, e) in alg.product_basis(a, b)? {
                        out.add_term((ab, pos[&(m2, n2)]), c * d * e);
                    }
                }
            }
            coaction.push(out);
        }
        Self::new(Arc::clone(alg), self.twist + other.twist, cutoff, labels, degrees, action, coaction)
    }

    /// Direct sum with basis labels prefixed `0:` and `1:`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same_base(other)?;
        if self.twist != other.twist {
            return Err(TensorError::TwistMismatch { left: self.twist, right: other.twist });
        }
        let shift = self.len();
        let labels = self
            .labels
            .iter()
            .map(|l| format!("0:{l}"))
            .chain(other.labels.iter().map(|l| format!("1:{l}")))
            .collect();
        let degrees = self.degrees.iter().chain(&other.degrees).copied().collect();
        let mut action = HashMap::new();
        for (&(h, m), v) in &self.action {
            action.insert((h, m), v.clone());
        }
        for (&(h, m), v) in &other.action {
            action.insert((h, m + shift), v.map_basis(|&k| k + shift));
        }
        let coaction = self
            .coaction
            .iter()
            .cloned()
            .chain(other.coaction.iter().map(|v| v.map_basis(|&(a, k)| (a, k + shift))))
            .collect();
        Self::new(Arc::clone(&self.algebra), self.twist, self.cutoff, labels, degrees, action, coaction)
    }

    /// Pullback along `δ: K → H` and `δ*: H → K` with `δ* ∘ δ = Ψ^l`:
    /// `α_K = α ∘ (δ ⊗ 1)`, `α_K* = (δ* ⊗ 1) ∘ α*`, twist `k·l`.
    ///
    /// The preconditions (grading, positivity, mutual adjointness,
    /// multiplicativity of `δ`, comultiplicativity of `δ*`, and
    /// `δ* ∘ δ = Ψ^l`) are verified up to the module cutoff.
    pub fn pullback(&self, k_alg: Arc<PshAlgebra>, delta: &GradedMap, delta_star: &GradedMap, l: u64) -> Result<Self, TensorError> {
        let h_alg = &self.algebra;
        let cutoff = self.cutoff;
        if k_alg.cutoff() < cutoff {
            return Err(TensorError::CutoffMismatch { left: k_alg.cutoff(), right: cutoff });
        }
        check_pullback_maps(&k_alg, h_alg, delta, delta_star, l, cutoff)?;

        let mut action = HashMap::new();
        for x in k_alg.basis_up_to(cutoff) {
            for m in self.basis_up_to(cutoff - k_alg.degree(x)) {
                action.insert((x, m), self.act(&delta[x], &LinComb::basis(m))?);
            }
        }
        let coaction = self
            .coaction
            .iter()
            .map(|v| {
                let mut out = LinComb::zero();
                for (&(a, m), c) in v {
                    for (&b, d) in &delta_star[a] {
                        out.add_term((b, m), c * d);
                    }
                }
                out
            })
            .collect();
        Self::new(k_alg, self.twist * l, cutoff, self.labels.clone(), self.degrees.clone(), action, coaction)
    }

    /// Renames basis elements.
    pub fn relabeled(&self, rename: impl Fn(&str) -> String) -> Result<Self, TensorError> {
        let labels = self.labels.iter().map(|l| rename(l)).collect();
        Self::new(
            Arc::clone(&self.algebra),
            self.twist,
            self.cutoff,
            labels,
            self.degrees.clone(),
            self.action.clone(),
            self.coaction.clone(),
        )
    }

    /// Compares twist, basis, action and coaction with `other`, matching basis
    /// elements of both module and algebra by label.
    pub fn compare_tables(&self, other: &Self) -> Result<(), TableMismatch> {
        let fail = |m: String| Err(TableMismatch(m));
        if self.twist != other.twist {
            return fail(format!("twist {} vs {}", self.twist, other.twist));
        }
        if self.cutoff != other.cutoff {
            return fail(format!("cutoff {} vs {}", self.cutoff, other.cutoff));
        }
        let (a1, a2) = (&self.algebra, &other.algebra);
        let mut alg_map = vec![usize::MAX; a1.len()];
        for i in a1.basis_up_to(self.cutoff) {
            match a2.index_of(a1.label(i)) {
                Ok(j) if a2.degree(j) == a1.degree(i) => alg_map[i] = j,
                _ => return fail(format!("algebra element {} has no counterpart", a1.label(i))),
            }
        }
        if a2.basis_up_to(self.cutoff).count() != a1.basis_up_to(self.cutoff).count() {
            return fail("algebra bases differ in size".into());
        }
        if self.len() != other.len() {
            return fail(format!("module bases have sizes {} and {}", self.len(), other.len()));
        }
        let mut map = vec![0; self.len()];
        for (i, l) in self.labels.iter().enumerate() {
            match other.index.get(l) {
                Some(&j) if other.degrees[j] == self.degrees[i] => map[i] = j,
                _ => return fail(format!("module element {l} has no counterpart")),
            }
        }
        for (&(h, m), v) in &self.action {
            if a1.degree(h) > self.cutoff {
                continue;
            }
            let mapped = v.map_basis(|&k| map[k]);
            if other.action.get(&(alg_map[h], map[m])) != Some(&mapped) {
                return fail(format!(
                    "action {} . {}: {} vs {}",
                    a1.label(h),
                    self.labels[m],
                    self.format(v),
                    other.action.get(&(alg_map[h], map[m])).map_or("missing".into(), |w| other.format(w))
                ));
            }
        }
        for (m, v) in self.coaction.iter().enumerate() {
            let mapped = v.map_basis(|&(a, k)| (alg_map[a], map[k]));
            if other.coaction[map[m]] != mapped {
                return fail(format!(
                    "coaction of {}: {} vs {}",
                    self.labels[m],
                    self.format_pairs(v),
                    other.format_pairs(&other.coaction[map[m]])
                ));
            }
        }
        Ok(())
    }

    /// Structured-text form: twist, cutoff, basis with degrees, and both tables.
    pub fn to_json(&self) -> String {
        let mut action: Vec<_> = self
            .action
            .iter()
            .map(|(&(h, m), v)| {
                (
                    (h, m),
                    (
                        self.algebra.label(h).to_string(),
                        self.labels[m].clone(),
                        v.iter().map(|(&k, c)| (self.labels[k].clone(), c.clone())).collect::<Vec<_>>(),
                    ),
                )
            })
            .collect();
        action.sort_by_key(|(k, _)| *k);
        let rec = ModuleRecord {
            algebra: self.algebra.name().to_string(),
            twist: self.twist,
            cutoff: self.cutoff,
            basis: self.labels.iter().cloned().zip(self.degrees.iter().copied()).collect(),
            action: action.into_iter().map(|(_, v)| v).collect(),
            coaction: self
                .coaction
                .iter()
                .enumerate()
                .map(|(m, v)| {
                    (
                        self.labels[m].clone(),
                        v.iter()
                            .map(|(&(a, k), c)| (self.algebra.label(a).to_string(), self.labels[k].clone(), c.clone()))
                            .collect(),
                    )
                })
                .collect(),
        };
        serde_json::to_string_pretty(&rec).expect("module serializes")
    }

    pub fn from_json(algebra: Arc<PshAlgebra>, text: &str) -> Result<Self, TensorError> {
        let rec: ModuleRecord = serde_json::from_str(text).map_err(|e| TensorError::MalformedTable(e.to_string()))?;
        if rec.algebra != algebra.name() {
            return Err(TensorError::AlgebraMismatch { left: rec.algebra, right: algebra.name().into() });
        }
        let (labels, degrees): (Vec<String>, Vec<usize>) = rec.basis.into_iter().unzip();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let look = |l: &str| index.get(l).copied().ok_or_else(|| TensorError::UnknownLabel(l.to_string()));
        let mut action = HashMap::new();
        for (h, m, terms) in rec.action {
            let mut v = LinComb::zero();
            for (l, c) in terms {
                v.add_term(look(&l)?, c);
            }
            action.insert((algebra.index_of(&h)?, look(&m)?), v);
        }
        let mut coaction = vec![LinComb::zero(); labels.len()];
        for (m, terms) in rec.coaction {
            let mut v = LinComb::zero();
            for (a, k, c) in terms {
                v.add_term((algebra.index_of(&a)?, look(&k)?), c);
            }
            coaction[look(&m)?] = v;
        }
        Self::new(algebra, rec.twist, rec.cutoff, labels, degrees, action, coaction)
    }
}

fn check_pullback_maps(
    k_alg: &PshAlgebra,
    h_alg: &PshAlgebra,
    delta: &GradedMap,
    delta_star: &GradedMap,
    l: u64,
    cutoff: usize,
) -> Result<(), TensorError> {
    let fail = |check: &'static str, degree: usize, witness: String| Err(TensorError::PullbackPrecondition { check, degree, witness });
    if delta.len() < k_alg.basis_up_to(cutoff).count() || delta_star.len() < h_alg.basis_up_to(cutoff).count() {
        return fail("map covers the truncated basis", 0, "map is shorter than the basis".into());
    }
    for x in k_alg.basis_up_to(cutoff) {
        let d = k_alg.degree(x);
        if delta[x].support().any(|&y| y >= h_alg.len() || h_alg.degree(y) != d) || !delta[x].is_positive() {
            return fail("δ graded and positive", d, k_alg.label(x).into());
        }
    }
    for y in h_alg.basis_up_to(cutoff) {
        let d = h_alg.degree(y);
        if delta_star[y].support().any(|&x| x >= k_alg.len() || k_alg.degree(x) != d) || !delta_star[y].is_positive() {
            return fail("δ* graded and positive", d, h_alg.label(y).into());
        }
    }
    for x in k_alg.basis_up_to(cutoff) {
        for y in h_alg.basis_up_to(cutoff) {
            if delta[x].coeff(&y) != delta_star[y].coeff(&x) {
                return fail("δ and δ* mutually adjoint", k_alg.degree(x), format!("({}, {})", k_alg.label(x), h_alg.label(y)));
            }
        }
    }
    for x in k_alg.basis_up_to(cutoff) {
        let mut composite = LinComb::zero();
        for (&y, c) in &delta[x] {
            composite.add_scaled(&delta_star[y], c);
        }
        if composite != k_alg.psi_basis(l, x)? {
            return fail("δ* ∘ δ = Ψ^l", k_alg.degree(x), k_alg.label(x).into());
        }
    }
    for x in k_alg.basis_up_to(cutoff) {
        for y in k_alg.basis_up_to(cutoff - k_alg.degree(x)) {
            let lhs = apply(delta, k_alg.product_basis(x, y)?);
            let rhs = h_alg.mul(&delta[x], &delta[y])?;
            if lhs != rhs {
                return fail("δ multiplicative", k_alg.degree(x) + k_alg.degree(y), format!("{} * {}", k_alg.label(x), k_alg.label(y)));
            }
        }
    }
    for y in h_alg.basis_up_to(cutoff) {
        let lhs = h_alg.coproduct_basis(y).apply(|&(a, b)| {
            let mut out = LinComb::zero();
            for (&u, c) in &delta_star[a] {
                for (&v, d) in &delta_star[b] {
                    out.add_term((u, v), c * d);
                }
            }
            out
        });
        let rhs = k_alg.comul(&delta_star[y]);
        if lhs != rhs {
            return fail("δ* comultiplicative", h_alg.degree(y), h_alg.label(y).into());
        }
    }
    Ok(())
}

fn apply(map: &GradedMap, v: &LinComb<usize>) -> LinComb<usize> {
    v.apply(|&i| map[i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(cutoff: usize) -> Arc<PshAlgebra> {
        Arc::new(PshAlgebra::symmetric_functions(cutoff))
    }

    #[test]
    fn canonical_module_is_one_psh() {
        let m = PshModule::canonical(r(4), 4).unwrap();
        assert!(m.verify_psh(4).passed(), "{}", m.verify_psh(4));
        assert!(!m.verify_k_hopf_with(2, 4).passed());
        assert_eq!(m.primitives().unwrap(), vec![0]);
    }

    #[test]
    fn tensor_action_on_degree_one() {
        let alg = r(3);
        let m = PshModule::canonical(Arc::clone(&alg), 3).unwrap();
        let t = m.tensor(&m).unwrap();
        assert_eq!(t.twist(), 2);
        let s1 = alg.index_of("[1]").unwrap();
        let unit = t.index_of("[]⊗[]").unwrap();
        let got = t.act(&LinComb::basis(s1), &LinComb::basis(unit)).unwrap();
        let expect = LinComb::from_terms([(t.index_of("[1]⊗[]").unwrap(), 1), (t.index_of("[]⊗[1]").unwrap(), 1)]);
        assert_eq!(got, expect);
        assert!(t.verify_psh(3).passed(), "{}", t.verify_psh(3));
    }

    #[test]
    fn tensor_is_associative_up_to_labels() {
        let alg = r(3);
        let a = PshModule::canonical(Arc::clone(&alg), 3).unwrap();
        let b = PshModule::r_d(Arc::clone(&alg), 2, 3).unwrap();
        let left = a.tensor(&b).unwrap().tensor(&a).unwrap();
        let right = a.tensor(&b.tensor(&a).unwrap()).unwrap();
        assert_eq!(left.compare_tables(&right), Ok(()));
        assert_eq!(left.twist(), 6);
    }

    #[test]
    fn twist_zero_modules() {
        let alg = r(2);
        let z = PshModule::r_d(Arc::clone(&alg), 0, 2).unwrap();
        assert_eq!(z.twist(), 0);
        assert_eq!(z.tensor(&z).unwrap().twist(), 0);
        assert!(z.verify_psh(2).passed(), "{}", z.verify_psh(2));
    }

    #[test]
    fn cutoff_mismatch_is_rejected() {
        let alg = r(3);
        let a = PshModule::canonical(Arc::clone(&alg), 3).unwrap();
        let b = PshModule::canonical(alg, 2).unwrap();
        assert!(matches!(a.tensor(&b), Err(TensorError::CutoffMismatch { .. })));
    }

    #[test]
    fn pullback_identity_and_r_d() {
        let alg = r(3);
        let m = PshModule::canonical(Arc::clone(&alg), 3).unwrap();
        let id: GradedMap = (0..alg.len()).map(LinComb::basis).collect();
        let same = m.pullback(Arc::clone(&alg), &id, &id, 1).unwrap();
        assert_eq!(same.compare_tables(&m), Ok(()));
        let r2 = PshModule::r_d(Arc::clone(&alg), 2, 3).unwrap();
        assert_eq!(r2.twist(), 4);
        assert!(r2.verify_psh(3).passed(), "{}", r2.verify_psh(3));
    }

    #[test]
    fn pullback_rejects_wrong_power() {
        let alg = r(3);
        let m = PshModule::canonical(Arc::clone(&alg), 3).unwrap();
        let psi = alg.psi_map(2).unwrap();
        let err = m.pullback(Arc::clone(&alg), &psi, &psi, 3).unwrap_err();
        match err {
            TensorError::PullbackPrecondition { check, degree, witness } => {
                assert_eq!(check, "δ* ∘ δ = Ψ^l");
                assert_eq!(degree, 1);
                assert_eq!(witness, "[1]");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn corrupted_action_fails_with_witness() {
        let alg = r(3);
        let mut m = PshModule::canonical(Arc::clone(&alg), 3).unwrap();
        let s1 = alg.index_of("[1]").unwrap();
        let s2 = m.index_of("[2]").unwrap();
        m.set_action(s1, s1, LinComb::basis(s2));
        let rep = m.verify_k_hopf(3);
        assert!(!rep.passed());
        assert!(rep.witness.unwrap().contains("h = [1], m = [1]"));
    }

    #[test]
    fn skew_action_examples() {
        let alg = r(4);
        let m = PshModule::canonical(Arc::clone(&alg), 4).unwrap();
        let s1 = LinComb::basis(alg.index_of("[1]").unwrap());
        let s2 = LinComb::basis(m.index_of("[2]").unwrap());
        assert_eq!(m.skew_action(&s1, &s2), LinComb::basis(m.index_of("[1]").unwrap()));
        for v in 0..m.len() {
            assert_eq!(m.skew_action(&alg.one(), &LinComb::basis(v)), LinComb::basis(v));
        }
    }

    #[test]
    fn direct_sum_and_json() {
        let alg = r(2);
        let a = PshModule::canonical(Arc::clone(&alg), 2).unwrap();
        let s = a.direct_sum(&a).unwrap();
        assert_eq!(s.primitives().unwrap(), vec![0, a.len()]);
        let text = s.to_json();
        let back = PshModule::from_json(Arc::clone(&alg), &text).unwrap();
        assert_eq!(back.compare_tables(&s), Ok(()));
        assert_eq!(back.to_json(), text);
    }
}
