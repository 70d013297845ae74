//! Derivation operators, closure operators and concept lattice enumeration.
//!
//! Every context `(X, Y, phi)` carries two adjunctions:
//!
//! - the FCA pair `up: L^X -> (L^Y)^op` and `down: (L^Y)^op -> L^X`,
//!   `up(mu)(y) = meet_x mu(x) -> phi(x, y)` and
//!   `down(lam)(x) = meet_y lam(y) -> phi(x, y)`;
//! - the RST pair `exists: L^X -> L^Y` and `forall: L^Y -> L^X`,
//!   `exists(mu)(y) = join_x mu(x) * phi(x, y)` and
//!   `forall(lam)(x) = meet_y phi(x, y) -> lam(y)`.
//!
//! Their fixed-point sets `Fix(down . up)` and `Fix(forall . exists)` are the
//! formal concept lattice and the property oriented concept lattice. Since
//! `Fix(g . f)` is the image of `g` for an adjunction `f -| g`, both can be
//! enumerated as meet-closures of small generator families instead of
//! filtering all of `L^X`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::context::{LContext, LSubset};
use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice};

/// Default cap on candidate subsets or generated concepts.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fca,
    Rst,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Fca => "fca",
            Mode::Rst => "rst",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Filter every `mu` in `L^X` by `closure(mu) == mu`.
    Naive,
    /// Meet-closure of the generator family of the right adjoint's image.
    Generators,
}

fn check_len(expected: usize, s: &LSubset) -> Result<()> {
    if s.len() == expected {
        Ok(())
    } else {
        Err(Error::CarrierMismatch { expected, found: s.len() })
    }
}

// Unchecked kernels. Callers guarantee carrier lengths.

pub(crate) fn up_raw(ctx: &LContext, mu: &[Elem]) -> Vec<Elem> {
    let l = ctx.lattice();
    (0..ctx.n_attributes())
        .map(|y| l.meet_all(mu.iter().enumerate().map(|(x, &m)| l.residuum(m, ctx.get(x, y)))))
        .collect()
}

pub(crate) fn down_raw(ctx: &LContext, lam: &[Elem]) -> Vec<Elem> {
    let l = ctx.lattice();
    (0..ctx.n_objects())
        .map(|x| l.meet_all(lam.iter().enumerate().map(|(y, &v)| l.residuum(v, ctx.get(x, y)))))
        .collect()
}

pub(crate) fn exists_raw(ctx: &LContext, mu: &[Elem]) -> Vec<Elem> {
    let l = ctx.lattice();
    (0..ctx.n_attributes())
        .map(|y| l.join_all(mu.iter().enumerate().map(|(x, &m)| l.tensor(m, ctx.get(x, y)))))
        .collect()
}

pub(crate) fn forall_raw(ctx: &LContext, lam: &[Elem]) -> Vec<Elem> {
    let l = ctx.lattice();
    (0..ctx.n_objects())
        .map(|x| l.meet_all(lam.iter().enumerate().map(|(y, &v)| l.residuum(ctx.get(x, y), v))))
        .collect()
}

/// The closure on `L^X` for `mode`: `down . up` or `forall . exists`.
pub(crate) fn closure_raw(ctx: &LContext, mode: Mode, mu: &[Elem]) -> Vec<Elem> {
    match mode {
        Mode::Fca => down_raw(ctx, &up_raw(ctx, mu)),
        Mode::Rst => forall_raw(ctx, &exists_raw(ctx, mu)),
    }
}

/// The composite on `L^Y` for `mode`: `up . down` or `exists . forall`.
pub(crate) fn dual_raw(ctx: &LContext, mode: Mode, lam: &[Elem]) -> Vec<Elem> {
    match mode {
        Mode::Fca => up_raw(ctx, &down_raw(ctx, lam)),
        Mode::Rst => exists_raw(ctx, &forall_raw(ctx, lam)),
    }
}

/// `phi^up(mu)`.
pub fn up(ctx: &LContext, mu: &LSubset) -> Result<LSubset> {
    check_len(ctx.n_objects(), mu)?;
    Ok(up_raw(ctx, mu.values()).into())
}

/// `phi^down(lam)`.
pub fn down(ctx: &LContext, lam: &LSubset) -> Result<LSubset> {
    check_len(ctx.n_attributes(), lam)?;
    Ok(down_raw(ctx, lam.values()).into())
}

/// `phi^exists(mu)`.
pub fn exists_op(ctx: &LContext, mu: &LSubset) -> Result<LSubset> {
    check_len(ctx.n_objects(), mu)?;
    Ok(exists_raw(ctx, mu.values()).into())
}

/// `phi^forall(lam)`.
pub fn forall_op(ctx: &LContext, lam: &LSubset) -> Result<LSubset> {
    check_len(ctx.n_attributes(), lam)?;
    Ok(forall_raw(ctx, lam.values()).into())
}

/// `down(up(mu))`.
pub fn fca_closure(ctx: &LContext, mu: &LSubset) -> Result<LSubset> {
    closure(ctx, Mode::Fca, mu)
}

/// `forall(exists(mu))`.
pub fn rst_closure(ctx: &LContext, mu: &LSubset) -> Result<LSubset> {
    closure(ctx, Mode::Rst, mu)
}

pub fn closure(ctx: &LContext, mode: Mode, mu: &LSubset) -> Result<LSubset> {
    check_len(ctx.n_objects(), mu)?;
    Ok(closure_raw(ctx, mode, mu.values()).into())
}

/// `up(down(lam))`, the closure on `(L^Y)^op`.
pub fn fca_closure_dual(ctx: &LContext, lam: &LSubset) -> Result<LSubset> {
    check_len(ctx.n_attributes(), lam)?;
    Ok(dual_raw(ctx, Mode::Fca, lam.values()).into())
}

/// `exists(forall(lam))`, the interior operator on `L^Y`.
pub fn rst_interior_dual(ctx: &LContext, lam: &LSubset) -> Result<LSubset> {
    check_len(ctx.n_attributes(), lam)?;
    Ok(dual_raw(ctx, Mode::Rst, lam.values()).into())
}

/// `L^X(mu, nu) = meet_x mu(x) -> nu(x)`.
pub fn lsubset_order(l: &Lattice, mu: &LSubset, nu: &LSubset) -> Result<Elem> {
    check_len(mu.len(), nu)?;
    Ok(order_raw(l, mu.values(), nu.values()))
}

pub(crate) fn order_raw(l: &Lattice, mu: &[Elem], nu: &[Elem]) -> Elem {
    l.meet_all(mu.iter().zip(nu).map(|(&a, &b)| l.residuum(a, b)))
}

/// Pointwise `mu <= nu`.
pub fn pointwise_leq(l: &Lattice, mu: &LSubset, nu: &LSubset) -> bool {
    mu.len() == nu.len() && mu.values().iter().zip(nu.values()).all(|(&a, &b)| l.leq(a, b))
}

/// `|L|^len`, or `None` on overflow.
pub fn subset_space_size(lattice_size: usize, len: usize) -> Option<u64> {
    (lattice_size as u64).checked_pow(u32::try_from(len).ok()?)
}

pub(crate) fn check_space(lattice_size: usize, len: usize, carrier: &str, budget: u64) -> Result<u64> {
    match subset_space_size(lattice_size, len) {
        Some(n) if n <= budget => Ok(n),
        n => Err(Error::BudgetExceeded {
            bound: format!(
                "|L|^|{carrier}| = {lattice_size}^{len} = {}",
                n.map_or_else(|| "overflow".to_owned(), |n| n.to_string())
            ),
            budget,
        }),
    }
}

/// Every L-subset of a carrier of length `len`, in lexicographic order.
pub fn all_lsubsets(lattice_size: usize, len: usize) -> AllLSubsets {
    AllLSubsets { base: lattice_size, current: Some(vec![Elem::from_index(0); len]).filter(|_| lattice_size > 0) }
}

pub struct AllLSubsets {
    base: usize,
    current: Option<Vec<Elem>>,
}

impl Iterator for AllLSubsets {
    type Item = LSubset;

    fn next(&mut self) -> Option<LSubset> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let mut i = next.len();
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            let v = next[i].index() + 1;
            if v < self.base {
                next[i] = Elem::from_index(v);
                break true;
            }
            next[i] = Elem::from_index(0);
        };
        if advanced {
            self.current = Some(next);
        }
        Some(LSubset::new(cur))
    }
}

/// Generators whose meet-closure (with top) is the image of `down`:
/// `a -> phi(-, y)` for every attribute `y` and `a` in `L`.
pub(crate) fn fca_extent_generators(ctx: &LContext, y: usize) -> Vec<LSubset> {
    let l = ctx.lattice();
    l.elements().map(|a| (0..ctx.n_objects()).map(|x| l.residuum(a, ctx.get(x, y))).collect::<Vec<_>>().into()).collect()
}

/// Generators whose meet-closure is the image of `up`: `a -> phi(x, -)`.
pub(crate) fn fca_intent_generators(ctx: &LContext, x: usize) -> Vec<LSubset> {
    let l = ctx.lattice();
    l.elements()
        .map(|a| (0..ctx.n_attributes()).map(|y| l.residuum(a, ctx.get(x, y))).collect::<Vec<_>>().into())
        .collect()
}

/// Generators whose meet-closure is the image of `forall`: `phi(-, y) -> a`.
pub(crate) fn rst_extent_generators(ctx: &LContext, y: usize) -> Vec<LSubset> {
    let l = ctx.lattice();
    l.elements().map(|a| (0..ctx.n_objects()).map(|x| l.residuum(ctx.get(x, y), a)).collect::<Vec<_>>().into()).collect()
}

/// Generators whose join-closure is the image of `exists`: `a * phi(x, -)`.
pub(crate) fn rst_intent_generators(ctx: &LContext, x: usize) -> Vec<LSubset> {
    let l = ctx.lattice();
    l.elements()
        .map(|a| (0..ctx.n_attributes()).map(|y| l.tensor(a, ctx.get(x, y))).collect::<Vec<_>>().into())
        .collect()
}

/// Closure of `generators` under pointwise meets (`join == false`) or joins,
/// seeded with the constant top (resp. bottom) subset.
pub(crate) fn lattice_closure(
    l: &Lattice,
    len: usize,
    generators: impl IntoIterator<Item = LSubset>,
    join: bool,
    budget: u64,
) -> Result<BTreeSet<LSubset>> {
    let op = |a: Elem, b: Elem| if join { l.join(a, b) } else { l.meet(a, b) };
    let seed = if join { l.bottom() } else { l.top() };
    let mut set: BTreeSet<LSubset> = BTreeSet::from([LSubset::constant(len, seed)]);
    for g in generators {
        if set.contains(&g) {
            continue;
        }
        let new: Vec<LSubset> = set
            .iter()
            .map(|s| s.values().iter().zip(g.values()).map(|(&a, &b)| op(a, b)).collect::<Vec<_>>().into())
            .collect();
        set.extend(new);
        if set.len() as u64 > budget {
            return Err(Error::BudgetExceeded { bound: format!("more than {budget} generated concepts"), budget });
        }
    }
    Ok(set)
}

/// `Fix(down . up)` or `Fix(forall . exists)` via generators.
pub(crate) fn fixed_points_by_generators(ctx: &LContext, mode: Mode, budget: u64) -> Result<BTreeSet<LSubset>> {
    let gens = (0..ctx.n_attributes()).flat_map(|y| match mode {
        Mode::Fca => fca_extent_generators(ctx, y),
        Mode::Rst => rst_extent_generators(ctx, y),
    });
    lattice_closure(ctx.lattice(), ctx.n_objects(), gens, false, budget)
}

/// The fixed-point set of `mode`'s closure, with its induced L-order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConceptLattice {
    pub mode: Mode,
    pub strategy: Strategy,
    pub objects: Vec<String>,
    /// Sorted lexicographically by value vector.
    pub concepts: Vec<LSubset>,
    /// `order[i][j] = L^X(concepts[i], concepts[j])`.
    pub order: Vec<Vec<Elem>>,
}

impl ConceptLattice {
    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn contains(&self, mu: &LSubset) -> bool {
        self.position(mu).is_some()
    }

    pub fn position(&self, mu: &LSubset) -> Option<usize> {
        self.concepts.binary_search(mu).ok()
    }
}

pub fn enumerate_concepts(ctx: &LContext, mode: Mode, strategy: Strategy, budget: u64) -> Result<ConceptLattice> {
    let l = ctx.lattice();
    let concepts: Vec<LSubset> = match strategy {
        Strategy::Naive => {
            check_space(l.size(), ctx.n_objects(), "X", budget)?;
            all_lsubsets(l.size(), ctx.n_objects())
                .filter(|mu| closure_raw(ctx, mode, mu.values()) == mu.values())
                .collect()
        }
        Strategy::Generators => fixed_points_by_generators(ctx, mode, budget)?.into_iter().collect(),
    };
    let order = concepts
        .iter()
        .map(|c| concepts.iter().map(|d| order_raw(l, c.values(), d.values())).collect())
        .collect();
    Ok(ConceptLattice { mode, strategy, objects: ctx.objects().to_vec(), concepts, order })
}

/// Checks `phi(x, g(b)) == psi(f(x), b)` for every `x` and `b`.
///
/// `f` maps objects of `src` to objects of `dst`; `g` maps attributes of
/// `dst` to attributes of `src`.
pub fn check_infomorphism(src: &LContext, dst: &LContext, f: &[usize], g: &[usize]) -> Result<()> {
    if f.len() != src.n_objects() {
        return Err(Error::CarrierMismatch { expected: src.n_objects(), found: f.len() });
    }
    if g.len() != dst.n_attributes() {
        return Err(Error::CarrierMismatch { expected: dst.n_attributes(), found: g.len() });
    }
    if let Some(&index) = f.iter().find(|&&a| a >= dst.n_objects()) {
        return Err(Error::MapOutOfRange { index, size: dst.n_objects() });
    }
    if let Some(&index) = g.iter().find(|&&y| y >= src.n_attributes()) {
        return Err(Error::MapOutOfRange { index, size: src.n_attributes() });
    }
    for x in 0..src.n_objects() {
        for (b, &gb) in g.iter().enumerate() {
            if src.get(x, gb) != dst.get(f[x], b) {
                return Err(Error::NotAnInfomorphism { x: src.objects()[x].clone(), b: dst.attributes()[b].clone() });
            }
        }
    }
    Ok(())
}

/// `(f^-> mu)(a) = join { mu(x) : f(x) = a }`.
pub fn direct_image(l: &Lattice, f: &[usize], target_len: usize, mu: &LSubset) -> LSubset {
    let mut out = vec![l.bottom(); target_len];
    for (x, &a) in f.iter().enumerate() {
        out[a] = l.join(out[a], mu.get(x));
    }
    out.into()
}

/// `(f^<- lam)(x) = lam(f(x))`.
pub fn preimage(f: &[usize], lam: &LSubset) -> LSubset {
    f.iter().map(|&a| lam.get(a)).collect::<Vec<_>>().into()
}

/// The left adjoint `M(f, g)` / `K(f, g)` between concept lattices:
/// direct image along `f` followed by the destination closure.
pub fn infomorphism_image(
    src: &LContext,
    dst: &LContext,
    f: &[usize],
    g: &[usize],
    mode: Mode,
    mu: &LSubset,
) -> Result<LSubset> {
    check_infomorphism(src, dst, f, g)?;
    if closure(src, mode, mu)? != *mu {
        return Err(Error::NotAConcept("source"));
    }
    closure(dst, mode, &direct_image(src.lattice(), f, dst.n_objects(), mu))
}

/// The right adjoint `M(f, g)*` / `K(f, g)*`: precomposition with `f`.
pub fn infomorphism_preimage(
    src: &LContext,
    dst: &LContext,
    f: &[usize],
    g: &[usize],
    mode: Mode,
    lam: &LSubset,
) -> Result<LSubset> {
    check_infomorphism(src, dst, f, g)?;
    if closure(dst, mode, lam)? != *lam {
        return Err(Error::NotAConcept("destination"));
    }
    Ok(preimage(f, lam))
}
