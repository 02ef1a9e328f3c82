//! Decomposition of a truncated `k`-PSH module into cells `(d, φ)`: `d` a
//! primitive irreducible of the module, `φ` a multiplicity function on the
//! primitive irreducibles `c` of the algebra, and the cell's irreducibles the
//! constituents of `(Π c^φ(c)) · d`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{PshAlgebra, PshModule, TensorError};
use crate::lincomb::LinComb;
use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub primitive: String,
    /// Multiplicity of each algebra primitive, zero entries omitted.
    pub phi: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub cutoff: usize,
    pub algebra_primitives: Vec<String>,
    pub module_primitives: Vec<String>,
    /// Cell of every module irreducible up to the cutoff, in basis order.
    pub module_cells: Vec<(String, Cell)>,
    /// Cell `φ` of every algebra irreducible up to the cutoff.
    pub algebra_cells: Vec<(String, BTreeMap<String, usize>)>,
}

/// Every `φ` on `prims` with `Σ φ(c)·deg c ≤ budget`, paired with `Π c^φ(c)`.
fn monomials(alg: &PshAlgebra, prims: &[usize], budget: usize) -> Result<Vec<(Vec<usize>, LinComb<usize>)>, TensorError> {
    let mut out = Vec::new();
    fn rec(
        alg: &PshAlgebra,
        prims: &[usize],
        pos: usize,
        budget: usize,
        phi: &mut Vec<usize>,
        acc: LinComb<usize>,
        out: &mut Vec<(Vec<usize>, LinComb<usize>)>,
    ) -> Result<(), TensorError> {
        if pos == prims.len() {
            out.push((phi.clone(), acc));
            return Ok(());
        }
        let c = prims[pos];
        let deg = alg.degree(c);
        let mut power = acc;
        let mut used = 0;
        loop {
            phi.push(used);
            rec(alg, prims, pos + 1, budget - used * deg, phi, power.clone(), out)?;
            phi.pop();
            if (used + 1) * deg > budget {
                break;
            }
            power = alg.mul(&power, &LinComb::basis(c))?;
            used += 1;
        }
        Ok(())
    }
    rec(alg, prims, 0, budget, &mut Vec::new(), alg.one(), &mut out)?;
    Ok(out)
}

fn phi_map(alg: &PshAlgebra, prims: &[usize], phi: &[usize]) -> BTreeMap<String, usize> {
    prims
        .iter()
        .zip(phi)
        .filter(|(_, &n)| n > 0)
        .map(|(&c, &n)| (alg.label(c).to_string(), n))
        .collect()
}

/// Assigns every irreducible of degree at most `cutoff` to its unique cell.
///
/// An irreducible lying in no cell or in two cells is reported as an error
/// rather than resolved.
pub fn decompose_module(module: &PshModule, cutoff: usize) -> Result<Decomposition, TensorError> {
    let cutoff = cutoff.min(module.cutoff());
    let alg = module.algebra().as_ref();
    let prims = alg.primitives()?;
    let prims: Vec<usize> = prims.into_iter().filter(|&c| alg.degree(c) <= cutoff).collect();
    let module_prims: Vec<usize> = module.primitives()?.into_iter().filter(|&d| module.degree(d) <= cutoff).collect();
    let monos = monomials(alg, &prims, cutoff)?;

    let mut module_hits: Vec<Vec<Cell>> = vec![Vec::new(); module.len()];
    for &d in &module_prims {
        for (phi, mono) in &monos {
            let weight: usize = phi.iter().zip(&prims).map(|(n, &c)| n * alg.degree(c)).sum();
            if weight + module.degree(d) > cutoff {
                continue;
            }
            let pi = module.act(mono, &LinComb::basis(d))?;
            let cell = Cell { primitive: module.label(d).to_string(), phi: phi_map(alg, &prims, phi) };
            for &w in pi.support() {
                module_hits[w].push(cell.clone());
            }
        }
    }
    let mut module_cells = Vec::new();
    for w in module.basis_up_to(cutoff) {
        match module_hits[w].as_slice() {
            [cell] => module_cells.push((module.label(w).to_string(), cell.clone())),
            [] => return Err(TensorError::Decomposition(format!("{} lies in no cell", module.label(w)))),
            many => {
                return Err(TensorError::Decomposition(format!(
                    "{} lies in {} cells: {:?}",
                    module.label(w),
                    many.len(),
                    many
                )))
            }
        }
    }

    let mut algebra_hits: Vec<Vec<BTreeMap<String, usize>>> = vec![Vec::new(); alg.len()];
    for (phi, mono) in &monos {
        for &x in mono.support() {
            algebra_hits[x].push(phi_map(alg, &prims, phi));
        }
    }
    let mut algebra_cells = Vec::new();
    for x in alg.basis_up_to(cutoff) {
        match algebra_hits[x].as_slice() {
            [phi] => algebra_cells.push((alg.label(x).to_string(), phi.clone())),
            other => {
                return Err(TensorError::Decomposition(format!(
                    "algebra irreducible {} lies in {} cells",
                    alg.label(x),
                    other.len()
                )))
            }
        }
    }

    Ok(Decomposition {
        cutoff,
        algebra_primitives: prims.iter().map(|&c| alg.label(c).to_string()).collect(),
        module_primitives: module_prims.iter().map(|&d| module.label(d).to_string()).collect(),
        module_cells,
        algebra_cells,
    })
}

impl Decomposition {
    pub fn cell_of(&self, label: &str) -> Option<&Cell> {
        self.module_cells.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }

    /// Checks that the action respects the cell grading:
    /// `α(H(φ') ⊗ M(d, φ'')) ⊂ M(d, φ' + φ'')`, and dually for the coaction.
    pub fn verify_grading(&self, module: &PshModule) -> CheckReport {
        let check = "cell grading of action and coaction";
        let alg = module.algebra();
        let mcell: BTreeMap<&str, &Cell> = self.module_cells.iter().map(|(l, c)| (l.as_str(), c)).collect();
        let acell: BTreeMap<&str, &BTreeMap<String, usize>> =
            self.algebra_cells.iter().map(|(l, c)| (l.as_str(), c)).collect();
        let add = |a: &BTreeMap<String, usize>, b: &BTreeMap<String, usize>| {
            let mut s = a.clone();
            for (k, v) in b {
                *s.entry(k.clone()).or_insert(0) += v;
            }
            s
        };
        for x in alg.basis_up_to(self.cutoff) {
            for m in module.basis_up_to(self.cutoff - alg.degree(x)) {
                let (phi_x, cell_m) = (acell[alg.label(x)], mcell[module.label(m)]);
                let want = Cell { primitive: cell_m.primitive.clone(), phi: add(phi_x, &cell_m.phi) };
                let image = match module.action_basis(x, m) {
                    Ok(v) => v,
                    Err(e) => return CheckReport::fail(check, e.to_string()),
                };
                if let Some(&w) = image.support().find(|&&w| mcell[module.label(w)] != &want) {
                    return CheckReport::fail(
                        check,
                        format!("{} . {} contains {}", alg.label(x), module.label(m), module.label(w)),
                    );
                }
            }
        }
        for m in module.basis_up_to(self.cutoff) {
            let cell_m = mcell[module.label(m)];
            for &(a, w) in module.coaction_basis(m).support() {
                let cell_w = mcell[module.label(w)];
                if cell_w.primitive != cell_m.primitive || add(acell[alg.label(a)], &cell_w.phi) != cell_m.phi {
                    return CheckReport::fail(
                        check,
                        format!("coaction of {} contains {} ⊗ {}", module.label(m), alg.label(a), module.label(w)),
                    );
                }
            }
        }
        CheckReport::pass(check)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    #[test]
    fn canonical_module_has_one_primitive() {
        let alg = Arc::new(PshAlgebra::symmetric_functions(4));
        let m = PshModule::canonical(Arc::clone(&alg), 4).unwrap();
        let d = decompose_module(&m, 4).unwrap();
        assert_eq!(d.module_primitives, vec!["[]"]);
        assert_eq!(d.algebra_primitives, vec!["[1]"]);
        for (label, cell) in &d.module_cells {
            let deg = label.parse::<crate::symfunc::Partition>().unwrap().size();
            let expect: BTreeMap<String, usize> =
                if deg == 0 { BTreeMap::new() } else { [("[1]".to_string(), deg)].into() };
            assert_eq!(cell.phi, expect, "{label}");
        }
        assert!(d.verify_grading(&m).passed());
    }

    #[test]
    fn direct_sum_has_two_families() {
        let alg = Arc::new(PshAlgebra::symmetric_functions(3));
        let m = PshModule::canonical(Arc::clone(&alg), 3).unwrap();
        let s = m.direct_sum(&m).unwrap();
        let d = decompose_module(&s, 3).unwrap();
        assert_eq!(d.module_primitives, vec!["0:[]", "1:[]"]);
        for (label, cell) in &d.module_cells {
            assert_eq!(&label[..2], &cell.primitive[..2]);
        }
        assert!(d.verify_grading(&s).passed());
    }
}
