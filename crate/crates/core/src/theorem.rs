//! Sampler comparing FCA reducts of `phi` with RST reducts of `!phi`.
//!
//! On a lattice with double negation the two notions coincide for every
//! context and selector, so any disagreement is a bug. Without double
//! negation they can come apart; the sampler then looks for a context where
//! the RST side holds and the FCA side fails, starting from the two-object,
//! one-attribute context `phi(x, star) = 0`, `phi(y, star) = a` for each `a`
//! with `!!a != a`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::context::{LContext, SubcontextSelector};
use crate::derivation::{all_lsubsets, Mode};
use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice};
use crate::reduct::{mask_indices, side_tables, CheckOptions};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SamplerConfig {
    pub max_objects: usize,
    pub max_attributes: usize,
    /// Random contexts to draw; each is checked against every selector.
    pub samples: u64,
    pub seed: u64,
    /// Enumerate every context up to the size bounds instead of sampling.
    pub exhaustive: bool,
    pub check: CheckOptions,
}

impl SamplerConfig {
    pub fn new(seed: u64) -> SamplerConfig {
        SamplerConfig { max_objects: 3, max_attributes: 3, samples: 200, seed, exhaustive: false, check: CheckOptions::default() }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseSource {
    Construction,
    Exhaustive,
    Random,
}

impl std::fmt::Display for CaseSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseSource::Construction => "construction",
            CaseSource::Exhaustive => "exhaustive",
            CaseSource::Random => "random",
        })
    }
}

/// One `(context, selector)` pair on which the two verdicts differ.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Case {
    pub source: CaseSource,
    /// Index within its source: element index for constructions,
    /// enumeration or sample index otherwise.
    pub index: u64,
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    /// `phi` by element name, one row per object.
    pub rows: Vec<Vec<String>>,
    pub kept_objects: Vec<String>,
    pub kept_attributes: Vec<String>,
    pub fca_reduct: bool,
    pub rst_reduct: bool,
}

impl Case {
    pub fn context(&self, lattice: Arc<Lattice>) -> Result<LContext> {
        LContext::from_names(lattice, &self.objects, &self.attributes, &self.rows)
    }

    pub fn selector(&self, ctx: &LContext) -> Result<SubcontextSelector> {
        SubcontextSelector::from_labels(ctx, &self.kept_objects, &self.kept_attributes)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InterdefinabilityReport {
    pub dne: bool,
    /// An element with `!!a != a`, when one exists.
    pub dne_witness: Option<String>,
    pub seed: u64,
    pub contexts_checked: u64,
    pub pairs_checked: u64,
    /// Every pair whose verdicts differ, in source then index order.
    pub disagreements: Vec<Case>,
    /// First pair with an RST reduct of `!phi` that is not an FCA reduct of `phi`.
    pub witness: Option<Case>,
    /// Under double negation: no disagreements. Otherwise: a witness exists.
    pub ok: bool,
}

fn label_set(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn evaluate(ctx: &LContext, source: CaseSource, index: u64, check: CheckOptions) -> Result<(u64, Vec<Case>)> {
    let method = check.method.resolve(ctx, check.budget);
    let (fca_obj, fca_attr) = side_tables(ctx, Mode::Fca, method, check.budget)?;
    let neg = ctx.negate();
    let method = check.method.resolve(&neg, check.budget);
    let (rst_obj, rst_attr) = side_tables(&neg, Mode::Rst, method, check.budget)?;
    let l = ctx.lattice();
    let mut cases = Vec::new();
    for xm in 0..fca_obj.len() {
        for ym in 0..fca_attr.len() {
            let fca = fca_obj[xm] && fca_attr[ym];
            let rst = rst_obj[xm] && rst_attr[ym];
            if fca != rst {
                let pick = |labels: &[String], m: usize| {
                    mask_indices(m as u64, labels.len()).into_iter().map(|i| labels[i].clone()).collect()
                };
                cases.push(Case {
                    source,
                    index,
                    objects: ctx.objects().to_vec(),
                    attributes: ctx.attributes().to_vec(),
                    rows: ctx.rows().iter().map(|r| r.to_names(l)).collect(),
                    kept_objects: pick(ctx.objects(), xm),
                    kept_attributes: pick(ctx.attributes(), ym),
                    fca_reduct: fca,
                    rst_reduct: rst,
                });
            }
        }
    }
    Ok(((fca_obj.len() * fca_attr.len()) as u64, cases))
}

/// The two-object, one-attribute context with `phi(x, star) = 0` and
/// `phi(y, star) = a`.
pub fn construction(lattice: Arc<Lattice>, a: Elem) -> Result<LContext> {
    let bottom = lattice.bottom();
    LContext::new(lattice, vec!["x".into(), "y".into()], vec!["star".into()], vec![vec![bottom], vec![a]])
}

fn random_context(lattice: &Arc<Lattice>, cfg: &SamplerConfig, index: u64) -> Result<LContext> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let nx = rng.gen_range(1..=cfg.max_objects);
    let ny = rng.gen_range(1..=cfg.max_attributes);
    let size = lattice.size();
    let rows = (0..nx)
        .map(|_| (0..ny).map(|_| lattice.element(rng.gen_range(0..size))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    LContext::new(lattice.clone(), label_set("x", nx), label_set("y", ny), rows)
}

fn exhaustive_contexts(lattice: &Arc<Lattice>, cfg: &SamplerConfig) -> Result<Vec<LContext>> {
    let size = lattice.size() as u64;
    let mut total: u64 = 0;
    for nx in 0..=cfg.max_objects {
        for ny in 0..=cfg.max_attributes {
            let n = u32::try_from(nx * ny).ok().and_then(|e| size.checked_pow(e));
            total = n.and_then(|n| total.checked_add(n)).unwrap_or(u64::MAX);
        }
    }
    if total > cfg.check.budget {
        return Err(Error::BudgetExceeded {
            bound: format!(
                "sum of |L|^(|X|*|Y|) for |X| <= {}, |Y| <= {}",
                cfg.max_objects, cfg.max_attributes
            ),
            budget: cfg.check.budget,
        });
    }
    let mut out = Vec::new();
    for nx in 0..=cfg.max_objects {
        for ny in 0..=cfg.max_attributes {
            for cells in all_lsubsets(lattice.size(), nx * ny) {
                let rows = (0..nx).map(|x| cells.values()[x * ny..(x + 1) * ny].to_vec()).collect();
                out.push(LContext::new(lattice.clone(), label_set("x", nx), label_set("y", ny), rows)?);
            }
        }
    }
    Ok(out)
}

/// Runs the sampler. Results are independent of thread scheduling.
pub fn verify_interdefinability(lattice: Arc<Lattice>, cfg: &SamplerConfig) -> Result<InterdefinabilityReport> {
    if cfg.max_objects == 0 || cfg.max_attributes == 0 {
        return Err(Error::InvalidArgument("sampler size bounds must be positive".into()));
    }
    let dne_witness = lattice.double_negation_witness();
    let mut jobs: Vec<(CaseSource, u64, LContext)> = Vec::new();
    if dne_witness.is_some() {
        for a in lattice.elements() {
            if lattice.negation(lattice.negation(a)) != a {
                jobs.push((CaseSource::Construction, a.index() as u64, construction(lattice.clone(), a)?));
            }
        }
    }
    if cfg.exhaustive {
        for (i, ctx) in exhaustive_contexts(&lattice, cfg)?.into_iter().enumerate() {
            jobs.push((CaseSource::Exhaustive, i as u64, ctx));
        }
    } else {
        for i in 0..cfg.samples {
            jobs.push((CaseSource::Random, i, random_context(&lattice, cfg, i)?));
        }
    }
    let results: Vec<(u64, Vec<Case>)> =
        jobs.par_iter().map(|(source, index, ctx)| evaluate(ctx, *source, *index, cfg.check)).collect::<Result<_>>()?;

    let contexts_checked = results.len() as u64;
    let pairs_checked = results.iter().map(|r| r.0).sum();
    let disagreements: Vec<Case> = results.into_iter().flat_map(|r| r.1).collect();
    let witness = disagreements.iter().find(|c| c.rst_reduct && !c.fca_reduct).cloned();
    let dne = dne_witness.is_none();
    let ok = if dne { disagreements.is_empty() } else { witness.is_some() };
    Ok(InterdefinabilityReport {
        dne,
        dne_witness: dne_witness.map(|a| lattice.name(a).to_owned()),
        seed: cfg.seed,
        contexts_checked,
        pairs_checked,
        disagreements,
        witness,
        ok,
    })
}
