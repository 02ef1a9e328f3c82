//! The named verification checks, their parameters, and precondition
//! validation before anything expensive runs.

use std::fmt::Display;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, ensure, Context, Result};
use clap::ValueEnum;
use kpsh_core::groupkit::{character_table, verify_restriction_gram, FiniteGroup, SubgroupEmbedding, ORDER_CAP};
use kpsh_core::report::{combine, CheckReport};
use kpsh_core::restricted_wreath as restricted;
use kpsh_core::symfunc::{verify_antipode, verify_dimension_sums};
use kpsh_core::tensor_hopf::{
    decompose_module, verify_hopf_power_identities, verify_primitive_products, verify_random_matrix_identities,
    verify_skew_properties, PshAlgebra,
};
use kpsh_core::wreath_oracle::{self as oracle, wreath_order};
use serde::{Deserialize, Serialize};

use crate::resolve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    AlgebraAxioms,
    Antipode,
    DimensionSums,
    MatrixIdentities,
    HopfPowerIdentities,
    HopfPowerLaw,
    LiteralAction,
    PhiMultiplicative,
    RestrictionGram,
    RestrictionPsiMatrix,
    ModuleKHopf,
    DeltaComposite,
    DeltaMorphisms,
    TensorDecomposition,
    PrimitiveProducts,
    Decomposition,
    SkewIdentities,
    DoubleCosets,
    RestrictedOrder,
    Inflation,
    Twists,
    PhiLMorphism,
    IsotypicImages,
    PsiL,
    GramMatrix,
    BigPsi,
    HopfDefect,
}

impl CheckName {
    pub fn as_str(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    fn is_restricted(self) -> bool {
        use CheckName::*;
        matches!(self, RestrictedOrder | Inflation | Twists | PhiLMorphism | IsotypicImages | PsiL | GramMatrix | BigPsi | HopfDefect)
    }

    fn uses_subgroup_module(self) -> bool {
        use CheckName::*;
        matches!(
            self,
            RestrictionPsiMatrix
                | ModuleKHopf
                | DeltaComposite
                | DeltaMorphisms
                | TensorDecomposition
                | PrimitiveProducts
                | Decomposition
                | SkewIdentities
        )
    }
}

/// Parameters shared by all checks; each check uses a subset.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Catalog name or group file
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    /// Subgroup name (`1`, `center`, `Z2`, `A3`, `gen:i,j`, ...) or subgroup file
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    /// Degree cutoff
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    /// Hopf power (the `m` of the character law, or the largest power)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<u64>,
    /// Block sizes `p,q,r,s` for double cosets
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    /// Number of random matrix instances
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    /// Seed for random matrix instances
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

enum Target {
    Nothing,
    Group(Arc<FiniteGroup>),
    Pair(SubgroupEmbedding),
}

/// A check whose parameters have been resolved and validated.
pub struct PreparedCheck {
    check: CheckName,
    params: Params,
    target: Target,
}

fn required<T: Clone>(value: &Option<T>, what: &str, check: CheckName) -> Result<T> {
    value.clone().with_context(|| format!("check {} needs --{what}", check.as_str()))
}

fn wreath_within_cap(group: &FiniteGroup, n: usize, divisor: usize, cap: usize) -> Result<()> {
    match wreath_order(group.order(), n) {
        Some(order) if order / divisor <= cap => Ok(()),
        _ => bail!("S_{n}[{}] exceeds the group order cap {cap}", group.name()),
    }
}

impl PreparedCheck {
    /// Resolves groups (files relative to `base`) and validates the check's
    /// preconditions.
    pub fn prepare(check: CheckName, params: &Params, base: &Path) -> Result<Self> {
        use CheckName::*;
        let cutoff = || required(&params.cutoff, "cutoff", check);
        let group = || -> Result<Arc<FiniteGroup>> { resolve::group(&required(&params.group, "group", check)?, base) };
        let pair = |default: Option<&str>| -> Result<SubgroupEmbedding> {
            let g = group()?;
            let name = match (&params.subgroup, default) {
                (Some(s), _) => s.clone(),
                (None, Some(d)) => d.to_string(),
                (None, None) => bail!("check {} needs --subgroup", check.as_str()),
            };
            let emb = resolve::subgroup(&g, &name, base)?;
            if g.order() > ORDER_CAP {
                bail!("{} has order {} above the cap {ORDER_CAP}", g.name(), g.order());
            }
            Ok(emb)
        };

        let target = match check {
            AlgebraAxioms => {
                let c = cutoff()?;
                match &params.group {
                    Some(_) => {
                        let g = group()?;
                        wreath_within_cap(&g, c, 1, ORDER_CAP)?;
                        Target::Group(g)
                    }
                    None => Target::Nothing,
                }
            }
            Antipode | DimensionSums | MatrixIdentities => {
                cutoff()?;
                Target::Nothing
            }
            HopfPowerIdentities => {
                cutoff()?;
                required(&params.power, "power", check)?;
                Target::Nothing
            }
            HopfPowerLaw => {
                let (m, n) = (required(&params.power, "power", check)?, cutoff()?);
                ensure!(m >= 1, "the Hopf power must be positive");
                match wreath_order(m as usize, n) {
                    Some(order) if order <= 50 * ORDER_CAP => {}
                    _ => bail!("S_{n}[Z/{m}] is too large to enumerate"),
                }
                Target::Nothing
            }
            LiteralAction | PhiMultiplicative => {
                let g = group()?;
                wreath_within_cap(&g, cutoff()?, 1, ORDER_CAP)?;
                Target::Group(g)
            }
            RestrictionGram => Target::Pair(pair(None)?),
            DoubleCosets => {
                let emb = pair(None)?;
                let blocks = required(&params.blocks, "blocks", check)?;
                let [p, q, r, s] = blocks[..] else { bail!("--blocks takes four sizes p,q,r,s") };
                ensure!(p + q == r + s, "block sizes must satisfy p + q = r + s");
                ensure!(emb.is_normal(), "{} is not normal in {}", emb.sub().name(), emb.sup().name());
                wreath_within_cap(emb.sup(), p + q, 1, ORDER_CAP)?;
                Target::Pair(emb)
            }
            _ if check.uses_subgroup_module() => {
                let default = (check == TensorDecomposition).then_some("1");
                let emb = pair(default)?;
                if check == TensorDecomposition {
                    ensure!(emb.sub().order() == 1, "tensor-decomposition needs the trivial subgroup");
                }
                wreath_within_cap(emb.sup(), cutoff()?, 1, ORDER_CAP)?;
                Target::Pair(emb)
            }
            _ => {
                debug_assert!(check.is_restricted());
                let emb = pair(None)?;
                ensure!(emb.sup().is_abelian(), "{} is not abelian", emb.sup().name());
                wreath_within_cap(emb.sup(), cutoff()?, emb.index(), ORDER_CAP)?;
                Target::Pair(emb)
            }
        };
        Ok(Self { check, params: params.clone(), target })
    }

    /// Runs the check. Library errors during the run become failures with
    /// the error as witness.
    pub fn run(&self) -> CheckReport {
        let name = self.check.as_str();
        self.run_inner().unwrap_or_else(|e| CheckReport::fail(name, e))
    }

    fn run_inner(&self) -> Result<CheckReport, String> {
        use CheckName::*;
        let cutoff = self.params.cutoff.unwrap_or(0);
        let group = || match &self.target {
            Target::Group(g) => g,
            _ => unreachable!("validated"),
        };
        let emb = || match &self.target {
            Target::Pair(e) => e,
            _ => unreachable!("validated"),
        };
        let rg = || oracle::rg_module(emb(), cutoff).map_err(err);
        let tower = || restricted::build_restricted_tower(emb(), cutoff).map_err(err);

        Ok(match self.check {
            AlgebraAxioms => {
                let algebra = match &self.target {
                    Target::Group(g) => oracle::build_rg_basis(g, cutoff).and_then(|t| t.algebra()).map_err(err)?,
                    _ => PshAlgebra::symmetric_functions(cutoff),
                };
                let parts = algebra.verify_axioms(cutoff);
                combine(format!("PSH axioms of {} up to degree {cutoff}", algebra.name()), &parts)
            }
            Antipode => verify_antipode(cutoff),
            DimensionSums => verify_dimension_sums(cutoff),
            MatrixIdentities => {
                let instances = self.params.instances.unwrap_or(20);
                verify_random_matrix_identities(instances, self.params.seed.unwrap_or(0), cutoff).map_err(err)?
            }
            HopfPowerIdentities => verify_hopf_power_identities(self.params.power.unwrap_or(0), cutoff),
            HopfPowerLaw => oracle::verify_hopf_power_law(self.params.power.unwrap_or(1) as usize, cutoff).map_err(err)?,
            LiteralAction => oracle::verify_phi_rho_literal(group(), cutoff).map_err(err)?,
            PhiMultiplicative => {
                let tower = oracle::build_rg_basis(group(), cutoff).map_err(err)?;
                oracle::verify_phi_multiplicative(&tower).map_err(err)?
            }
            RestrictionGram => {
                let e = emb();
                let sub = character_table(e.sub()).map_err(err)?;
                let sup = character_table(e.sup()).map_err(err)?;
                verify_restriction_gram(e, &sub, &sup).map_err(err)?
            }
            RestrictionPsiMatrix => oracle::verify_restriction_psi_matrix(&rg()?).map_err(err)?,
            ModuleKHopf => oracle::verify_module_k_hopf(&rg()?),
            DeltaComposite => oracle::verify_delta_composite(&rg()?).map_err(err)?,
            DeltaMorphisms => oracle::verify_delta_morphisms(&rg()?).map_err(err)?,
            TensorDecomposition => oracle::verify_tensor_decomposition(&rg()?).map_err(err)?,
            PrimitiveProducts => verify_primitive_products(&rg()?.module, cutoff).map_err(err)?,
            Decomposition => {
                let module = rg()?.module;
                let dec = decompose_module(&module, cutoff).map_err(err)?;
                let report = dec.verify_grading(&module);
                let note = format!("module primitives {:?}", dec.module_primitives);
                CheckReport { check: format!("decomposition of {} into primitive cells", module.algebra().name()), ..report }
                    .with_note(note)
            }
            SkewIdentities => {
                let module = rg()?.module;
                let parts = verify_skew_properties(&module, cutoff).map_err(err)?;
                combine(format!("skew operator identities up to degree {cutoff}"), &parts)
            }
            DoubleCosets => {
                let b = self.params.blocks.as_deref().unwrap_or_default();
                oracle::verify_double_cosets(emb(), b[0], b[1], b[2], b[3]).map_err(err)?
            }
            RestrictedOrder => restricted::verify_order_formula(&tower()?),
            Inflation => restricted::verify_inflation(&tower()?).map_err(err)?,
            Twists => restricted::verify_twists(&tower()?).map_err(err)?,
            PhiLMorphism => restricted::verify_phi_l_morphism(&tower()?).map_err(err)?,
            IsotypicImages => restricted::verify_isotypic_images(&tower()?).map_err(err)?,
            PsiL => restricted::verify_psi_l(&tower()?).map_err(err)?,
            GramMatrix => restricted::verify_gram_matrix(&tower()?).map_err(err)?,
            BigPsi => restricted::verify_big_psi(&tower()?).map_err(err)?,
            HopfDefect => restricted::measure_hopf_defect(&tower()?).map_err(err)?,
        })
    }
}

fn err(e: impl Display) -> String {
    e.to_string()
}
