//! Test-side oracles, written against closed-form definitions only.
//!
//! Nothing here calls into the derivation, reduct or theorem modules; the
//! crate's lattices and contexts are only used to translate element names.

#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reductkit::format::parse_lattice;
use reductkit::{Builtin, LContext, LSubset, Lattice, SubcontextSelector};

/// A finite residuated lattice given by formulas on element codes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Oracle {
    /// Codes `0..n`, value `k / (n - 1)`.
    Lukasiewicz(usize),
    Godel(usize),
    /// Codes are bitmasks over two atoms: `0, a = 1, b = 2, 1 = 3`.
    Diamond,
}

pub const DIAMOND: &str = "elements 0 a b 1\nleq 0 a\nleq 0 b\nleq a 1\nleq b 1\n\
tensor 0 0 0 0 0\ntensor a 0 a 0 a\ntensor b 0 0 b b\ntensor 1 0 a b 1\n";

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn fraction(k: usize, d: usize) -> String {
    let g = gcd(k, d);
    if k == 0 {
        "0".into()
    } else if k == d {
        "1".into()
    } else {
        format!("{}/{}", k / g, d / g)
    }
}

impl Oracle {
    pub fn size(self) -> usize {
        match self {
            Oracle::Lukasiewicz(n) | Oracle::Godel(n) => n,
            Oracle::Diamond => 4,
        }
    }

    pub fn top(self) -> usize {
        self.size() - 1
    }

    pub fn bottom(self) -> usize {
        0
    }

    pub fn name(self, c: usize) -> String {
        match self {
            Oracle::Lukasiewicz(n) | Oracle::Godel(n) => fraction(c, n - 1),
            Oracle::Diamond => ["0", "a", "b", "1"][c].into(),
        }
    }

    pub fn leq(self, a: usize, b: usize) -> bool {
        match self {
            Oracle::Diamond => a & !b == 0,
            _ => a <= b,
        }
    }

    pub fn meet(self, a: usize, b: usize) -> usize {
        match self {
            Oracle::Diamond => a & b,
            _ => a.min(b),
        }
    }

    pub fn join(self, a: usize, b: usize) -> usize {
        match self {
            Oracle::Diamond => a | b,
            _ => a.max(b),
        }
    }

    pub fn tensor(self, a: usize, b: usize) -> usize {
        match self {
            Oracle::Lukasiewicz(n) => (a + b).saturating_sub(n - 1),
            Oracle::Godel(_) => a.min(b),
            Oracle::Diamond => a & b,
        }
    }

    pub fn residuum(self, a: usize, b: usize) -> usize {
        match self {
            Oracle::Lukasiewicz(n) => (n - 1 + b).saturating_sub(a).min(n - 1),
            Oracle::Godel(n) => {
                if a <= b {
                    n - 1
                } else {
                    b
                }
            }
            Oracle::Diamond => (!a | b) & 3,
        }
    }

    pub fn negation(self, a: usize) -> usize {
        self.residuum(a, 0)
    }

    pub fn dne(self) -> bool {
        (0..self.size()).all(|a| self.negation(self.negation(a)) == a)
    }

    pub fn build(self) -> Arc<Lattice> {
        Arc::new(match self {
            Oracle::Lukasiewicz(n) => format!("lukasiewicz({n})").parse::<Builtin>().unwrap().build().unwrap(),
            Oracle::Godel(n) => format!("godel({n})").parse::<Builtin>().unwrap().build().unwrap(),
            Oracle::Diamond => parse_lattice(DIAMOND).unwrap(),
        })
    }

    pub fn meet_all(self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.top(), |a, b| self.meet(a, b))
    }

    pub fn join_all(self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.bottom(), |a, b| self.join(a, b))
    }
}

/// Lattices used by the random corpora.
pub const CORPUS_LATTICES: [Oracle; 6] = [
    Oracle::Godel(2),
    Oracle::Lukasiewicz(3),
    Oracle::Godel(3),
    Oracle::Lukasiewicz(4),
    Oracle::Godel(4),
    Oracle::Diamond,
];

/// An L-context as a code matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OCtx {
    pub l: Oracle,
    pub phi: Vec<Vec<usize>>,
    pub ny: usize,
}

impl OCtx {
    pub fn new(l: Oracle, phi: Vec<Vec<usize>>, ny: usize) -> OCtx {
        OCtx { l, phi, ny }
    }

    pub fn nx(&self) -> usize {
        self.phi.len()
    }

    pub fn up(&self, mu: &[usize]) -> Vec<usize> {
        (0..self.ny).map(|y| self.l.meet_all((0..self.nx()).map(|x| self.l.residuum(mu[x], self.phi[x][y])))).collect()
    }

    pub fn down(&self, lam: &[usize]) -> Vec<usize> {
        (0..self.nx()).map(|x| self.l.meet_all((0..self.ny).map(|y| self.l.residuum(lam[y], self.phi[x][y])))).collect()
    }

    pub fn exists(&self, mu: &[usize]) -> Vec<usize> {
        (0..self.ny).map(|y| self.l.join_all((0..self.nx()).map(|x| self.l.tensor(mu[x], self.phi[x][y])))).collect()
    }

    pub fn forall(&self, lam: &[usize]) -> Vec<usize> {
        (0..self.nx()).map(|x| self.l.meet_all((0..self.ny).map(|y| self.l.residuum(self.phi[x][y], lam[y])))).collect()
    }

    pub fn fca_closure(&self, mu: &[usize]) -> Vec<usize> {
        self.down(&self.up(mu))
    }

    pub fn rst_closure(&self, mu: &[usize]) -> Vec<usize> {
        self.forall(&self.exists(mu))
    }

    pub fn negate(&self) -> OCtx {
        OCtx {
            l: self.l,
            phi: self.phi.iter().map(|r| r.iter().map(|&v| self.l.negation(v)).collect()).collect(),
            ny: self.ny,
        }
    }

    pub fn restrict(&self, objs: &[usize], attrs: &[usize]) -> OCtx {
        OCtx {
            l: self.l,
            phi: objs.iter().map(|&x| attrs.iter().map(|&y| self.phi[x][y]).collect()).collect(),
            ny: attrs.len(),
        }
    }

    /// Fixed points of the closure, by filtering every L-subset.
    pub fn concepts(&self, rst: bool) -> Vec<Vec<usize>> {
        all_vectors(self.l.size(), self.nx())
            .into_iter()
            .filter(|mu| if rst { self.rst_closure(mu) == *mu } else { self.fca_closure(mu) == *mu })
            .collect()
    }

    pub fn to_crate(&self) -> LContext {
        let lat = self.l.build();
        let objs: Vec<String> = (0..self.nx()).map(|i| format!("x{i}")).collect();
        let attrs: Vec<String> = (0..self.ny).map(|i| format!("y{i}")).collect();
        let rows: Vec<Vec<String>> = self.phi.iter().map(|r| r.iter().map(|&v| self.l.name(v)).collect()).collect();
        LContext::from_names(lat, &objs, &attrs, &rows).unwrap()
    }

    /// FCA object-side reducibility straight from the definition:
    /// every `up(mu)` is `up'(mu')` for some `mu'` on the kept objects.
    pub fn fca_object_reducible_by_definition(&self, objs: &[usize]) -> bool {
        let sub = self.restrict(objs, &(0..self.ny).collect::<Vec<_>>());
        let images: Vec<Vec<usize>> = all_vectors(self.l.size(), objs.len()).iter().map(|m| sub.up(m)).collect();
        all_vectors(self.l.size(), self.nx()).iter().all(|mu| images.contains(&self.up(mu)))
    }

    /// FCA attribute-side reducibility from the definition.
    pub fn fca_attribute_reducible_by_definition(&self, attrs: &[usize]) -> bool {
        let sub = self.restrict(&(0..self.nx()).collect::<Vec<_>>(), attrs);
        let images: Vec<Vec<usize>> = all_vectors(self.l.size(), attrs.len()).iter().map(|l| sub.down(l)).collect();
        all_vectors(self.l.size(), self.ny).iter().all(|lam| images.contains(&self.down(lam)))
    }

    /// RST object-side reducibility from the definition.
    pub fn rst_object_reducible_by_definition(&self, objs: &[usize]) -> bool {
        let sub = self.restrict(objs, &(0..self.ny).collect::<Vec<_>>());
        let images: Vec<Vec<usize>> = all_vectors(self.l.size(), objs.len()).iter().map(|m| sub.exists(m)).collect();
        all_vectors(self.l.size(), self.nx()).iter().all(|mu| images.contains(&self.exists(mu)))
    }

    /// RST attribute-side reducibility from the definition.
    pub fn rst_attribute_reducible_by_definition(&self, attrs: &[usize]) -> bool {
        let sub = self.restrict(&(0..self.nx()).collect::<Vec<_>>(), attrs);
        let images: Vec<Vec<usize>> = all_vectors(self.l.size(), attrs.len()).iter().map(|l| sub.forall(l)).collect();
        all_vectors(self.l.size(), self.ny).iter().all(|lam| images.contains(&self.forall(lam)))
    }
}

/// Every vector in `0..base` of length `len`, lexicographically.
pub fn all_vectors(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| (0..base).map(move |d| [v.clone(), vec![d]].concat())).collect();
    }
    out
}

/// L-degree to which `mu` is contained in `nu`.
pub fn subsethood(l: Oracle, mu: &[usize], nu: &[usize]) -> usize {
    l.meet_all(mu.iter().zip(nu).map(|(&a, &b)| l.residuum(a, b)))
}

/// Oracle codes of a crate L-subset, matched by element name.
pub fn codes(l: Oracle, lat: &Lattice, s: &LSubset) -> Vec<usize> {
    s.to_names(lat).iter().map(|n| (0..l.size()).find(|&c| l.name(c) == *n).unwrap()).collect()
}

pub fn lsubset(l: Oracle, lat: &Lattice, v: &[usize]) -> LSubset {
    let names: Vec<String> = v.iter().map(|&c| l.name(c)).collect();
    LSubset::from_names(lat, &names).unwrap()
}

pub fn random_ctx(rng: &mut ChaCha8Rng, l: Oracle, max_x: usize, max_y: usize) -> OCtx {
    let nx = rng.gen_range(1..=max_x);
    let ny = rng.gen_range(1..=max_y);
    let phi = (0..nx).map(|_| (0..ny).map(|_| rng.gen_range(0..l.size())).collect()).collect();
    OCtx::new(l, phi, ny)
}

/// The fixed corpus: 50 seeded contexts up to 3x3 over the corpus lattices.
pub fn corpus() -> Vec<OCtx> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_617);
    (0..50).map(|i| random_ctx(&mut rng, CORPUS_LATTICES[i % CORPUS_LATTICES.len()], 3, 3)).collect()
}

pub fn mask_indices(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn all_selectors(nx: usize, ny: usize) -> Vec<SubcontextSelector> {
    let mut out = Vec::new();
    for xm in 0..1usize << nx {
        for ym in 0..1usize << ny {
            out.push(SubcontextSelector::new(mask_indices(xm, nx), mask_indices(ym, ny)));
        }
    }
    out
}

/// A crisp context with rows as bitmasks over `ny` attributes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Crisp {
    pub rows: Vec<u32>,
    pub ny: usize,
}

impl Crisp {
    pub fn full_y(&self) -> u32 {
        (1u32 << self.ny) - 1
    }

    /// Attributes shared by every object of `objs`.
    pub fn up(&self, objs: u32) -> u32 {
        (0..self.rows.len()).filter(|&x| objs >> x & 1 == 1).fold(self.full_y(), |acc, x| acc & self.rows[x])
    }

    /// Objects having every attribute of `attrs`.
    pub fn down(&self, attrs: u32) -> u32 {
        (0..self.rows.len()).filter(|&x| self.rows[x] & attrs == attrs).fold(0, |acc, x| acc | 1 << x)
    }

    /// Every removed object's intent is the intent of a set of kept objects.
    pub fn objects_reducible(&self, kept: u32) -> bool {
        let n = self.rows.len();
        (0..n).filter(|&x| kept >> x & 1 == 0).all(|x| {
            let target = self.up(1 << x);
            (0..1u32 << n).filter(|&u| u & !kept == 0).any(|u| self.up(u) == target)
        })
    }

    /// Every removed attribute's extent is the extent of a set of kept attributes.
    pub fn attributes_reducible(&self, kept: u32) -> bool {
        (0..self.ny).filter(|&y| kept >> y & 1 == 0).all(|y| {
            let target = self.down(1 << y);
            (0..1u32 << self.ny).filter(|&v| v & !kept == 0).any(|v| self.down(v) == target)
        })
    }

    pub fn to_octx(&self) -> OCtx {
        OCtx::new(
            Oracle::Godel(2),
            self.rows.iter().map(|&r| (0..self.ny).map(|y| (r >> y & 1) as usize).collect()).collect(),
            self.ny,
        )
    }

    /// Concepts' extents, by closing every object set.
    pub fn extents(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..1u32 << self.rows.len()).map(|u| self.down(self.up(u))).collect();
        out.sort();
        out.dedup();
        out
    }
}

pub fn random_crisp(rng: &mut ChaCha8Rng, max_x: usize, max_y: usize) -> Crisp {
    let nx = rng.gen_range(1..=max_x);
    let ny = rng.gen_range(1..=max_y);
    Crisp { rows: (0..nx).map(|_| rng.gen_range(0..1u32 << ny)).collect(), ny }
}
