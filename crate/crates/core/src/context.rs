//! L-contexts, L-subsets and subcontext selectors.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice};

/// An L-subset: one lattice element per member of a finite carrier.
///
/// The carrier is implicit; operations check lengths against the context
/// they are applied to. Ordering is lexicographic on element indices, which
/// is the canonical order of concept listings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct LSubset(Vec<Elem>);

impl LSubset {
    pub fn new(values: Vec<Elem>) -> LSubset {
        LSubset(values)
    }

    pub fn constant(len: usize, value: Elem) -> LSubset {
        LSubset(vec![value; len])
    }

    /// Builds an L-subset from element names.
    pub fn from_names<S: AsRef<str>>(lattice: &Lattice, names: &[S]) -> Result<LSubset> {
        names
            .iter()
            .map(|n| lattice.elem(n.as_ref()).ok_or_else(|| Error::UnknownElement(n.as_ref().to_owned())))
            .collect::<Result<Vec<_>>>()
            .map(LSubset)
    }

    pub fn to_names(&self, lattice: &Lattice) -> Vec<String> {
        self.0.iter().map(|&e| lattice.name(e).to_owned()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Elem {
        self.0[i]
    }

    pub fn into_values(self) -> Vec<Elem> {
        self.0
    }

    /// `mu_{X'}`: the components at `indices`, in order.
    pub fn restrict(&self, indices: &[usize]) -> Result<LSubset> {
        indices
            .iter()
            .map(|&i| {
                self.0.get(i).copied().ok_or(Error::SelectorOutOfRange { index: i, size: self.0.len() })
            })
            .collect::<Result<Vec<_>>>()
            .map(LSubset)
    }

    /// Extends an L-subset of the sub-carrier `indices` to a carrier of
    /// length `len`, padding with `bottom`.
    pub fn extend_by_bottom(&self, indices: &[usize], len: usize, bottom: Elem) -> Result<LSubset> {
        if indices.len() != self.0.len() {
            return Err(Error::CarrierMismatch { expected: indices.len(), found: self.0.len() });
        }
        let mut out = vec![bottom; len];
        for (&i, &v) in indices.iter().zip(&self.0) {
            *out.get_mut(i).ok_or(Error::SelectorOutOfRange { index: i, size: len })? = v;
        }
        Ok(LSubset(out))
    }
}

impl From<Vec<Elem>> for LSubset {
    fn from(values: Vec<Elem>) -> Self {
        LSubset(values)
    }
}

/// A pair of index sets `(X', Y')` into a parent context.
///
/// Indices are kept sorted and deduplicated so restriction preserves the
/// parent's ordering.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct SubcontextSelector {
    objects: Vec<usize>,
    attributes: Vec<usize>,
}

fn normalize(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

impl SubcontextSelector {
    pub fn new(objects: Vec<usize>, attributes: Vec<usize>) -> SubcontextSelector {
        SubcontextSelector { objects: normalize(objects), attributes: normalize(attributes) }
    }

    pub fn full(ctx: &LContext) -> SubcontextSelector {
        SubcontextSelector { objects: (0..ctx.n_objects()).collect(), attributes: (0..ctx.n_attributes()).collect() }
    }

    /// Resolves object and attribute labels against `ctx`.
    pub fn from_labels<S: AsRef<str>>(ctx: &LContext, objects: &[S], attributes: &[S]) -> Result<SubcontextSelector> {
        let resolve = |labels: &[S], pool: &[String]| {
            labels
                .iter()
                .map(|l| {
                    pool.iter().position(|p| p == l.as_ref()).ok_or_else(|| Error::UnknownLabel(l.as_ref().to_owned()))
                })
                .collect::<Result<Vec<_>>>()
        };
        Ok(SubcontextSelector::new(resolve(objects, &ctx.objects)?, resolve(attributes, &ctx.attributes)?))
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn attributes(&self) -> &[usize] {
        &self.attributes
    }

    /// `|X'| + |Y'|`.
    pub fn size(&self) -> usize {
        self.objects.len() + self.attributes.len()
    }

    pub fn validate(&self, ctx: &LContext) -> Result<()> {
        let check = |v: &[usize], size: usize| match v.last() {
            Some(&index) if index >= size => Err(Error::SelectorOutOfRange { index, size }),
            _ => Ok(()),
        };
        check(&self.objects, ctx.n_objects())?;
        check(&self.attributes, ctx.n_attributes())
    }

    pub fn is_full(&self, ctx: &LContext) -> bool {
        self.objects.len() == ctx.n_objects() && self.attributes.len() == ctx.n_attributes()
    }

    /// Componentwise inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &SubcontextSelector) -> bool {
        self.objects.iter().all(|o| other.objects.binary_search(o).is_ok())
            && self.attributes.iter().all(|a| other.attributes.binary_search(a).is_ok())
    }

    /// The selector equivalent to restricting by `self` and then by `inner`,
    /// whose indices refer to the already restricted context.
    pub fn compose(&self, inner: &SubcontextSelector) -> Result<SubcontextSelector> {
        let map = |outer: &[usize], inner: &[usize]| {
            inner
                .iter()
                .map(|&i| outer.get(i).copied().ok_or(Error::SelectorOutOfRange { index: i, size: outer.len() }))
                .collect::<Result<Vec<_>>>()
        };
        Ok(SubcontextSelector::new(map(&self.objects, &inner.objects)?, map(&self.attributes, &inner.attributes)?))
    }

    /// Labels of the selected objects and attributes.
    pub fn labels<'a>(&self, ctx: &'a LContext) -> (Vec<&'a str>, Vec<&'a str>) {
        (
            self.objects.iter().map(|&i| ctx.objects[i].as_str()).collect(),
            self.attributes.iter().map(|&i| ctx.attributes[i].as_str()).collect(),
        )
    }
}

/// An L-context `(X, Y, phi)` stored as a dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LContext {
    lattice: Arc<Lattice>,
    objects: Vec<String>,
    attributes: Vec<String>,
    phi: Vec<Elem>,
}

fn check_unique(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl LContext {
    pub fn new(
        lattice: Arc<Lattice>,
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<Vec<Elem>>,
    ) -> Result<LContext> {
        check_unique(&objects)?;
        check_unique(&attributes)?;
        if rows.len() != objects.len() {
            return Err(Error::InvalidArgument(format!(
                "{} rows for {} objects",
                rows.len(),
                objects.len()
            )));
        }
        let mut phi = Vec::with_capacity(objects.len() * attributes.len());
        for (label, row) in objects.iter().zip(rows) {
            if row.len() != attributes.len() {
                return Err(Error::RaggedMatrix { row: label.clone(), expected: attributes.len(), found: row.len() });
            }
            for e in row {
                lattice.element(e.index())?;
                phi.push(e);
            }
        }
        Ok(LContext { lattice, objects, attributes, phi })
    }

    /// Convenience constructor from element names.
    pub fn from_names<S: AsRef<str>>(
        lattice: Arc<Lattice>,
        objects: &[S],
        attributes: &[S],
        rows: &[Vec<S>],
    ) -> Result<LContext> {
        let rows = rows
            .iter()
            .map(|r| LSubset::from_names(&lattice, r).map(LSubset::into_values))
            .collect::<Result<Vec<_>>>()?;
        let own = |v: &[S]| v.iter().map(|s| s.as_ref().to_owned()).collect();
        LContext::new(lattice.clone(), own(objects), own(attributes), rows)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    #[inline]
    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    #[inline]
    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    /// `phi(x, y)`.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Elem {
        self.phi[x * self.attributes.len() + y]
    }

    pub fn row(&self, x: usize) -> LSubset {
        let n = self.attributes.len();
        LSubset::new(self.phi[x * n..(x + 1) * n].to_vec())
    }

    pub fn column(&self, y: usize) -> LSubset {
        LSubset::new((0..self.n_objects()).map(|x| self.get(x, y)).collect())
    }

    pub fn rows(&self) -> Vec<LSubset> {
        (0..self.n_objects()).map(|x| self.row(x)).collect()
    }

    /// `(X', Y', phi_{X',Y'})`.
    pub fn restrict(&self, sel: &SubcontextSelector) -> Result<LContext> {
        sel.validate(self)?;
        let phi = sel
            .objects()
            .iter()
            .flat_map(|&x| sel.attributes().iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.get(x, y))
            .collect();
        Ok(LContext {
            lattice: self.lattice.clone(),
            objects: sel.objects().iter().map(|&i| self.objects[i].clone()).collect(),
            attributes: sel.attributes().iter().map(|&i| self.attributes[i].clone()).collect(),
            phi,
        })
    }

    /// Entrywise negation `!phi`.
    pub fn negate(&self) -> LContext {
        LContext { phi: self.phi.iter().map(|&e| self.lattice.negation(e)).collect(), ..self.clone() }
    }

    /// `phi^op`: objects and attributes swapped, matrix transposed.
    pub fn dual(&self) -> LContext {
        let phi = (0..self.n_attributes())
            .flat_map(|y| (0..self.n_objects()).map(move |x| (x, y)))
            .map(|(x, y)| self.get(x, y))
            .collect();
        LContext {
            lattice: self.lattice.clone(),
            objects: self.attributes.clone(),
            attributes: self.objects.clone(),
            phi,
        }
    }
}
