//! Reducibility checks, reduct decisions and comparison maps.
//!
//! A subcontext `(X', Y', phi_{X',Y'})` is a reduct when both removed parts
//! are reducible:
//!
//! | mode | `Y \ Y'` reducible iff                 | `X \ X'` reducible iff                 |
//! |------|----------------------------------------|----------------------------------------|
//! | FCA  | `down.up == down'.up'` on `L^X`, `phi' = phi_{X,Y'}`   | `up.down == up'.down'` on `L^Y`, `phi' = phi_{X',Y}`   |
//! | RST  | `forall.exists == forall'.exists'` on `L^X`  | `exists.forall == exists'.forall'` on `L^Y` |
//!
//! Each side is decided either exhaustively, by comparing both operators on
//! every L-subset, or through generators: the restricted operator's fixed
//! points always form a subset of the full operator's, and both sets are the
//! meet- (or join-) closures of their generator families, so the operators
//! agree exactly when every generator contributed by a removed row or column
//! is already fixed by the restricted operator.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::context::{LContext, LSubset, SubcontextSelector};
use crate::derivation::{
    all_lsubsets, check_space, closure_raw, dual_raw, enumerate_concepts, fca_extent_generators, fca_intent_generators,
    order_raw, rst_extent_generators, rst_intent_generators, subset_space_size, ConceptLattice, Mode, Strategy,
    DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::lattice::Elem;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Generators,
    /// Exhaustive when `|L|^max(|X|, |Y|)` fits the budget, else generators.
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Generators => "generators",
            Method::Auto => "auto",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "generators" => Ok(Method::Generators),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::InvalidArgument(format!("unknown method `{s}`"))),
        }
    }
}

impl Method {
    pub fn resolve(self, ctx: &LContext, budget: u64) -> Method {
        match self {
            Method::Auto => {
                let len = ctx.n_objects().max(ctx.n_attributes());
                match subset_space_size(ctx.lattice().size(), len) {
                    Some(n) if n <= budget => Method::Exhaustive,
                    _ => Method::Generators,
                }
            }
            m => m,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CheckOptions {
    pub method: Method,
    pub budget: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { method: Method::Auto, budget: DEFAULT_BUDGET }
    }
}

impl CheckOptions {
    pub fn exhaustive() -> Self {
        CheckOptions { method: Method::Exhaustive, ..Default::default() }
    }

    pub fn generators() -> Self {
        CheckOptions { method: Method::Generators, ..Default::default() }
    }
}

/// Outcome of one side-reducibility check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SideResult {
    pub reducible: bool,
    /// An L-subset on which the full and restricted operators differ.
    pub witness: Option<LSubset>,
    /// The full and restricted operators applied to the witness.
    pub witness_images: Option<(LSubset, LSubset)>,
    /// L-subsets or generators examined.
    pub examined: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ReductReport {
    pub mode: Mode,
    pub selector: SubcontextSelector,
    pub verdict: bool,
    /// Reducibility of `X \ X'`, witness in `L^Y`.
    pub object_side: SideResult,
    /// Reducibility of `Y \ Y'`, witness in `L^X`.
    pub attribute_side: SideResult,
    /// The method actually used (never `Auto`).
    pub method: Method,
}

impl ReductReport {
    pub fn examined(&self) -> u64 {
        self.object_side.examined + self.attribute_side.examined
    }
}

fn complement(kept: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|i| kept.binary_search(i).is_err()).collect()
}

fn failure(witness: LSubset, full: LSubset, restricted: Vec<Elem>, examined: u64) -> SideResult {
    SideResult { reducible: false, witness: Some(witness), witness_images: Some((full, restricted.into())), examined }
}

fn attribute_side(ctx: &LContext, mode: Mode, attributes: &[usize], method: Method, budget: u64) -> Result<SideResult> {
    let sel = SubcontextSelector::new((0..ctx.n_objects()).collect(), attributes.to_vec());
    sel.validate(ctx)?;
    let restricted = ctx.restrict(&sel)?;
    let mut examined = 0;
    match method.resolve(ctx, budget) {
        Method::Generators => {
            for y in complement(sel.attributes(), ctx.n_attributes()) {
                let gens = match mode {
                    Mode::Fca => fca_extent_generators(ctx, y),
                    Mode::Rst => rst_extent_generators(ctx, y),
                };
                for g in gens {
                    examined += 1;
                    let image = closure_raw(&restricted, mode, g.values());
                    if image != g.values() {
                        return Ok(failure(g.clone(), g, image, examined));
                    }
                }
            }
        }
        _ => {
            check_space(ctx.lattice().size(), ctx.n_objects(), "X", budget)?;
            for mu in all_lsubsets(ctx.lattice().size(), ctx.n_objects()) {
                examined += 1;
                let (full, image) = (closure_raw(ctx, mode, mu.values()), closure_raw(&restricted, mode, mu.values()));
                if full != image {
                    return Ok(failure(mu, full.into(), image, examined));
                }
            }
        }
    }
    Ok(SideResult { reducible: true, witness: None, witness_images: None, examined })
}

fn object_side(ctx: &LContext, mode: Mode, objects: &[usize], method: Method, budget: u64) -> Result<SideResult> {
    let sel = SubcontextSelector::new(objects.to_vec(), (0..ctx.n_attributes()).collect());
    sel.validate(ctx)?;
    let restricted = ctx.restrict(&sel)?;
    let mut examined = 0;
    match method.resolve(ctx, budget) {
        Method::Generators => {
            for x in complement(sel.objects(), ctx.n_objects()) {
                let gens = match mode {
                    Mode::Fca => fca_intent_generators(ctx, x),
                    Mode::Rst => rst_intent_generators(ctx, x),
                };
                for g in gens {
                    examined += 1;
                    let image = dual_raw(&restricted, mode, g.values());
                    if image != g.values() {
                        return Ok(failure(g.clone(), g, image, examined));
                    }
                }
            }
        }
        _ => {
            check_space(ctx.lattice().size(), ctx.n_attributes(), "Y", budget)?;
            for lam in all_lsubsets(ctx.lattice().size(), ctx.n_attributes()) {
                examined += 1;
                let (full, image) = (dual_raw(ctx, mode, lam.values()), dual_raw(&restricted, mode, lam.values()));
                if full != image {
                    return Ok(failure(lam, full.into(), image, examined));
                }
            }
        }
    }
    Ok(SideResult { reducible: true, witness: None, witness_images: None, examined })
}

/// Is `Y \ Y'` reducible in FCA, i.e. `down.up` unchanged on `L^X`?
pub fn fca_attr_side_reducible(ctx: &LContext, attributes: &[usize], opts: CheckOptions) -> Result<SideResult> {
    attribute_side(ctx, Mode::Fca, attributes, opts.method, opts.budget)
}

/// Is `X \ X'` reducible in FCA, i.e. `up.down` unchanged on `L^Y`?
pub fn fca_object_side_reducible(ctx: &LContext, objects: &[usize], opts: CheckOptions) -> Result<SideResult> {
    object_side(ctx, Mode::Fca, objects, opts.method, opts.budget)
}

/// Is `Y \ Y'` reducible in RST, i.e. `forall.exists` unchanged on `L^X`?
pub fn rst_attr_side_reducible(ctx: &LContext, attributes: &[usize], opts: CheckOptions) -> Result<SideResult> {
    attribute_side(ctx, Mode::Rst, attributes, opts.method, opts.budget)
}

/// Is `X \ X'` reducible in RST, i.e. `exists.forall` unchanged on `L^Y`?
pub fn rst_object_side_reducible(ctx: &LContext, objects: &[usize], opts: CheckOptions) -> Result<SideResult> {
    object_side(ctx, Mode::Rst, objects, opts.method, opts.budget)
}

pub fn is_reduct(ctx: &LContext, sel: &SubcontextSelector, mode: Mode, opts: CheckOptions) -> Result<ReductReport> {
    sel.validate(ctx)?;
    let method = opts.method.resolve(ctx, opts.budget);
    let attribute_side = attribute_side(ctx, mode, sel.attributes(), method, opts.budget)?;
    let object_side = object_side(ctx, mode, sel.objects(), method, opts.budget)?;
    Ok(ReductReport {
        mode,
        selector: sel.clone(),
        verdict: attribute_side.reducible && object_side.reducible,
        object_side,
        attribute_side,
        method,
    })
}

pub fn is_fca_reduct(ctx: &LContext, sel: &SubcontextSelector, opts: CheckOptions) -> Result<ReductReport> {
    is_reduct(ctx, sel, Mode::Fca, opts)
}

pub fn is_rst_reduct(ctx: &LContext, sel: &SubcontextSelector, opts: CheckOptions) -> Result<ReductReport> {
    is_reduct(ctx, sel, Mode::Rst, opts)
}

/// The canonical maps between the full and restricted concept lattices.
///
/// `R*`/`S*` go from the full lattice to the restricted one, `E*`/`F*` back.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum ComparisonMapTag {
    R1,
    R2,
    E1,
    E2,
    S1,
    S2,
    F1,
    F2,
}

impl fmt::Display for ComparisonMapTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl ComparisonMapTag {
    pub fn mode(self) -> Mode {
        use ComparisonMapTag::*;
        match self {
            R1 | R2 | E1 | E2 => Mode::Fca,
            S1 | S2 | F1 | F2 => Mode::Rst,
        }
    }

    /// True for maps from the full lattice to the restricted one.
    pub fn is_restricting(self) -> bool {
        use ComparisonMapTag::*;
        matches!(self, R1 | R2 | S1 | S2)
    }

    /// The four tags of `mode`: two restricting maps, then two extending maps.
    pub fn for_mode(mode: Mode) -> [ComparisonMapTag; 4] {
        use ComparisonMapTag::*;
        match mode {
            Mode::Fca => [R1, R2, E1, E2],
            Mode::Rst => [S1, S2, F1, F2],
        }
    }

    /// Whether the map routes through `phi_{X',Y}` (index 1) or `phi_{X,Y'}`.
    fn first_route(self) -> bool {
        use ComparisonMapTag::*;
        matches!(self, R1 | E1 | S1 | F1)
    }
}

/// The three contexts every comparison map is built from.
struct Routes {
    mode: Mode,
    full: LContext,
    /// `phi_{X,Y'}`
    attrs_only: LContext,
    /// `phi_{X',Y'}`
    sub: LContext,
    objects: Vec<usize>,
}

impl Routes {
    fn new(ctx: &LContext, sel: &SubcontextSelector, mode: Mode) -> Result<Routes> {
        sel.validate(ctx)?;
        let attrs_only = ctx.restrict(&SubcontextSelector::new((0..ctx.n_objects()).collect(), sel.attributes().to_vec()))?;
        Ok(Routes { mode, full: ctx.clone(), attrs_only, sub: ctx.restrict(sel)?, objects: sel.objects().to_vec() })
    }

    fn apply(&self, tag: ComparisonMapTag, input: &LSubset) -> LSubset {
        let l = self.full.lattice();
        if tag.is_restricting() {
            if tag.first_route() {
                let restricted = input.restrict(&self.objects).expect("selector validated");
                closure_raw(&self.sub, self.mode, restricted.values()).into()
            } else {
                let closed: LSubset = closure_raw(&self.attrs_only, self.mode, input.values()).into();
                closed.restrict(&self.objects).expect("selector validated")
            }
        } else {
            let padded = input
                .extend_by_bottom(&self.objects, self.full.n_objects(), l.bottom())
                .expect("selector validated");
            let ctx = if tag.first_route() { &self.full } else { &self.attrs_only };
            closure_raw(ctx, self.mode, padded.values()).into()
        }
    }
}

/// Evaluates comparison map `tag` on a concept of the appropriate lattice.
pub fn comparison_map(
    ctx: &LContext,
    sel: &SubcontextSelector,
    mode: Mode,
    tag: ComparisonMapTag,
    input: &LSubset,
) -> Result<LSubset> {
    if tag.mode() != mode {
        return Err(Error::TagModeMismatch { tag: tag.to_string(), mode: mode.to_string() });
    }
    let routes = Routes::new(ctx, sel, mode)?;
    let (domain, which) = if tag.is_restricting() { (&routes.full, "full") } else { (&routes.sub, "restricted") };
    if input.len() != domain.n_objects() {
        return Err(Error::CarrierMismatch { expected: domain.n_objects(), found: input.len() });
    }
    if closure_raw(domain, mode, input.values()) != input.values() {
        return Err(Error::NotAConcept(which));
    }
    Ok(routes.apply(tag, input))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TagIso {
    pub tag: ComparisonMapTag,
    pub bijective: bool,
    pub isometric: bool,
}

impl TagIso {
    pub fn is_iso(&self) -> bool {
        self.bijective && self.isometric
    }
}

/// Result of checking the comparison maps directly on enumerated lattices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsoEvidence {
    pub mode: Mode,
    /// All four maps are isomorphisms.
    pub verdict: bool,
    /// All four maps agree: all isomorphisms or none.
    pub consistent: bool,
    pub full_concepts: usize,
    pub restricted_concepts: usize,
    pub tags: Vec<TagIso>,
    /// Every restricting map after every extending map is the identity on
    /// the restricted lattice.
    pub section_identity: bool,
    /// Every extending map after every restricting map is the identity on
    /// the full lattice.
    pub retraction_identity: bool,
}

fn map_is_iso(
    routes: &Routes,
    tag: ComparisonMapTag,
    domain: &ConceptLattice,
    codomain: &ConceptLattice,
) -> TagIso {
    let l = routes.full.lattice();
    let images: Vec<LSubset> = domain.concepts.iter().map(|c| routes.apply(tag, c)).collect();
    let mut hit = vec![false; codomain.len()];
    let mut injective = true;
    for img in &images {
        match codomain.position(img) {
            Some(i) if !hit[i] => hit[i] = true,
            _ => injective = false,
        }
    }
    let bijective = injective && hit.iter().all(|&h| h);
    let isometric = (0..images.len()).all(|i| {
        (0..images.len()).all(|j| order_raw(l, images[i].values(), images[j].values()) == domain.order[i][j])
    });
    TagIso { tag, bijective, isometric }
}

/// Enumerates both concept lattices and checks the four comparison maps.
pub fn verify_iso_via_maps(ctx: &LContext, sel: &SubcontextSelector, mode: Mode, budget: u64) -> Result<IsoEvidence> {
    let routes = Routes::new(ctx, sel, mode)?;
    let full = enumerate_concepts(&routes.full, mode, Strategy::Generators, budget)?;
    let sub = enumerate_concepts(&routes.sub, mode, Strategy::Generators, budget)?;
    let tags: Vec<TagIso> = ComparisonMapTag::for_mode(mode)
        .into_iter()
        .map(|tag| if tag.is_restricting() { map_is_iso(&routes, tag, &full, &sub) } else { map_is_iso(&routes, tag, &sub, &full) })
        .collect();
    let [r1, r2, e1, e2] = ComparisonMapTag::for_mode(mode);
    let section_identity = [r1, r2].iter().all(|&r| {
        [e1, e2].iter().all(|&e| sub.concepts.iter().all(|c| routes.apply(r, &routes.apply(e, c)) == *c))
    });
    let retraction_identity = [r1, r2].iter().all(|&r| {
        [e1, e2].iter().all(|&e| full.concepts.iter().all(|c| routes.apply(e, &routes.apply(r, c)) == *c))
    });
    let isos = tags.iter().filter(|t| t.is_iso()).count();
    Ok(IsoEvidence {
        mode,
        verdict: isos == tags.len(),
        consistent: isos == 0 || isos == tags.len(),
        full_concepts: full.len(),
        restricted_concepts: sub.len(),
        tags,
        section_identity,
        retraction_identity,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchOptions {
    /// Report only reducts with no reduct strictly below them.
    pub minimal_only: bool,
    pub check: CheckOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { minimal_only: true, check: CheckOptions::default() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SearchReport {
    pub mode: Mode,
    pub method: Method,
    /// Decreasing `|X'| + |Y'|`, ties in lexicographic index order.
    pub reducts: Vec<SubcontextSelector>,
    pub selectors_evaluated: u64,
    /// Pairs `(reduct, one-element extension that is not a reduct)`.
    /// Expected to be empty; reported rather than assumed.
    pub monotonicity_violations: Vec<(SubcontextSelector, SubcontextSelector)>,
}

pub(crate) fn mask_indices(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Side verdicts for every kept-object mask and every kept-attribute mask.
pub(crate) fn side_tables(ctx: &LContext, mode: Mode, method: Method, budget: u64) -> Result<(Vec<bool>, Vec<bool>)> {
    let (nx, ny) = (ctx.n_objects(), ctx.n_attributes());
    let obj_ok = (0..1u64 << nx)
        .map(|m| object_side(ctx, mode, &mask_indices(m, nx), method, budget).map(|r| r.reducible))
        .collect::<Result<_>>()?;
    let attr_ok = (0..1u64 << ny)
        .map(|m| attribute_side(ctx, mode, &mask_indices(m, ny), method, budget).map(|r| r.reducible))
        .collect::<Result<_>>()?;
    Ok((obj_ok, attr_ok))
}

/// Enumerates every selector and returns the reducts.
///
/// The verdict for `(X', Y')` is the conjunction of an object-side verdict
/// depending only on `X'` and an attribute-side verdict depending only on
/// `Y'`, so each side is decided once per subset.
pub fn search_reducts(ctx: &LContext, mode: Mode, opts: SearchOptions) -> Result<SearchReport> {
    let (nx, ny) = (ctx.n_objects(), ctx.n_attributes());
    let total = 1u64.checked_shl((nx + ny) as u32).filter(|_| nx + ny < 64);
    let budget = opts.check.budget;
    let total = match total {
        Some(t) if t <= budget => t,
        _ => {
            return Err(Error::BudgetExceeded { bound: format!("2^(|X|+|Y|) = 2^{} selectors", nx + ny), budget });
        }
    };
    let method = opts.check.method.resolve(ctx, budget);
    let (obj_ok, attr_ok) = side_tables(ctx, mode, method, budget)?;
    let verdict = |xm: u64, ym: u64| obj_ok[xm as usize] && attr_ok[ym as usize];

    let mut reducts: Vec<(u64, u64)> = Vec::new();
    for xm in 0..1u64 << nx {
        for ym in 0..1u64 << ny {
            if verdict(xm, ym) {
                reducts.push((xm, ym));
            }
        }
    }
    let mut violations = Vec::new();
    for &(xm, ym) in &reducts {
        let extensions = (0..nx)
            .filter(|i| xm >> i & 1 == 0)
            .map(|i| (xm | 1 << i, ym))
            .chain((0..ny).filter(|j| ym >> j & 1 == 0).map(|j| (xm, ym | 1 << j)));
        for (xe, ye) in extensions {
            if !verdict(xe, ye) {
                violations.push((xe, ye, xm, ym));
            }
        }
    }
    let to_sel = |xm: u64, ym: u64| SubcontextSelector::new(mask_indices(xm, nx), mask_indices(ym, ny));
    let reported: Vec<(u64, u64)> = if opts.minimal_only {
        reducts
            .iter()
            .copied()
            .filter(|&(xm, ym)| {
                !reducts
                    .iter()
                    .any(|&(x2, y2)| (x2, y2) != (xm, ym) && x2 & !xm == 0 && y2 & !ym == 0)
            })
            .collect()
    } else {
        reducts.clone()
    };
    let mut selectors: Vec<SubcontextSelector> = reported.into_iter().map(|(x, y)| to_sel(x, y)).collect();
    selectors.sort_by(|a, b| b.size().cmp(&a.size()).then_with(|| a.cmp(b)));
    let mut monotonicity_violations: Vec<_> =
        violations.into_iter().map(|(xe, ye, xm, ym)| (to_sel(xm, ym), to_sel(xe, ye))).collect();
    monotonicity_violations.sort();
    Ok(SearchReport { mode, method, reducts: selectors, selectors_evaluated: total, monotonicity_violations })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::{builtin_chain, Builtin, TNorm};

    fn counterexample(tnorm: TNorm) -> LContext {
        let l = Arc::new(builtin_chain(3, tnorm).unwrap());
        LContext::from_names(l, &["x", "y"], &["star"], &[vec!["0"], vec!["1/2"]]).unwrap()
    }

    fn both_methods() -> [CheckOptions; 2] {
        [CheckOptions::exhaustive(), CheckOptions::generators()]
    }

    #[test]
    fn full_selector_is_always_a_reduct() {
        let ctx = counterexample(TNorm::Godel);
        let full = SubcontextSelector::full(&ctx);
        for opts in both_methods() {
            for mode in [Mode::Fca, Mode::Rst] {
                let r = is_reduct(&ctx, &full, mode, opts).unwrap();
                assert!(r.verdict && r.object_side.witness.is_none());
            }
        }
    }

    #[test]
    fn godel_counterexample_verdicts() {
        let ctx = counterexample(TNorm::Godel);
        let sel = SubcontextSelector::new(vec![0], vec![0]);
        let half = LSubset::from_names(ctx.lattice(), &["1/2"]).unwrap();
        for opts in both_methods() {
            let fca = is_fca_reduct(&ctx, &sel, opts).unwrap();
            assert!(!fca.verdict);
            assert!(fca.attribute_side.reducible);
            assert_eq!(fca.object_side.witness.as_ref(), Some(&half));
            let rst = is_rst_reduct(&ctx.negate(), &sel, opts).unwrap();
            assert!(rst.verdict);
        }
    }

    #[test]
    fn lukasiewicz_counterexample_is_a_reduct_both_ways() {
        let ctx = counterexample(TNorm::Lukasiewicz);
        let sel = SubcontextSelector::new(vec![0], vec![0]);
        for opts in both_methods() {
            assert!(fca_object_side_reducible(&ctx, &[0], opts).unwrap().reducible);
            assert!(is_fca_reduct(&ctx, &sel, opts).unwrap().verdict);
            assert!(is_rst_reduct(&ctx.negate(), &sel, opts).unwrap().verdict);
        }
    }

    #[test]
    fn auto_method_depends_on_budget() {
        let ctx = counterexample(TNorm::Godel);
        assert_eq!(Method::Auto.resolve(&ctx, 9), Method::Exhaustive);
        assert_eq!(Method::Auto.resolve(&ctx, 8), Method::Generators);
        let opts = CheckOptions { method: Method::Exhaustive, budget: 2 };
        assert!(matches!(
            is_fca_reduct(&ctx, &SubcontextSelector::full(&ctx), opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn comparison_map_contracts() {
        let ctx = counterexample(TNorm::Godel).negate();
        let sel = SubcontextSelector::new(vec![0], vec![0]);
        let l = ctx.lattice();
        let mu = LSubset::from_names(l, &["1/2", "1"]).unwrap();
        assert_eq!(comparison_map(&ctx, &sel, Mode::Rst, ComparisonMapTag::S1, &mu).unwrap().to_names(l), ["1/2"]);
        let back = comparison_map(&ctx, &sel, Mode::Rst, ComparisonMapTag::F1, &LSubset::from_names(l, &["1/2"]).unwrap());
        assert_eq!(back.unwrap(), mu);
        assert!(matches!(
            comparison_map(&ctx, &sel, Mode::Fca, ComparisonMapTag::S1, &mu),
            Err(Error::TagModeMismatch { .. })
        ));
        let not_closed = LSubset::from_names(l, &["1/2", "0"]).unwrap();
        assert!(matches!(
            comparison_map(&ctx, &sel, Mode::Rst, ComparisonMapTag::S2, &not_closed),
            Err(Error::NotAConcept("full"))
        ));
    }

    #[test]
    fn iso_evidence_on_counterexample() {
        let ctx = counterexample(TNorm::Godel);
        let sel = SubcontextSelector::new(vec![0], vec![0]);
        let rst = verify_iso_via_maps(&ctx.negate(), &sel, Mode::Rst, DEFAULT_BUDGET).unwrap();
        assert!(rst.verdict && rst.consistent && rst.section_identity && rst.retraction_identity);
        assert_eq!((rst.full_concepts, rst.restricted_concepts), (3, 3));

        let fca = verify_iso_via_maps(&ctx, &sel, Mode::Fca, DEFAULT_BUDGET).unwrap();
        assert!(!fca.verdict && fca.consistent && fca.section_identity && !fca.retraction_identity);
        assert_eq!((fca.full_concepts, fca.restricted_concepts), (3, 2));
        let e1 = fca.tags.iter().find(|t| t.tag == ComparisonMapTag::E1).unwrap();
        assert!(!e1.bijective);
    }

    #[test]
    fn search_on_counterexample() {
        let ctx = counterexample(TNorm::Godel).negate();
        let report = search_reducts(&ctx, Mode::Rst, SearchOptions::default()).unwrap();
        assert_eq!(report.reducts, vec![SubcontextSelector::new(vec![0], vec![0])]);
        assert!(report.monotonicity_violations.is_empty());
        assert_eq!(report.selectors_evaluated, 8);

        let all = search_reducts(&ctx, Mode::Rst, SearchOptions { minimal_only: false, ..Default::default() }).unwrap();
        assert_eq!(all.reducts, vec![SubcontextSelector::full(&ctx), SubcontextSelector::new(vec![0], vec![0])]);
    }

    #[test]
    fn search_budget() {
        let b = Arc::new(Builtin::Boolean.build().unwrap());
        let ctx = LContext::from_names(b, &["a", "b"], &["p", "q"], &[vec!["1", "0"], vec!["0", "1"]]).unwrap();
        let opts = SearchOptions { check: CheckOptions { budget: 15, ..Default::default() }, ..Default::default() };
        assert!(matches!(search_reducts(&ctx, Mode::Fca, opts), Err(Error::BudgetExceeded { .. })));
    }
}
