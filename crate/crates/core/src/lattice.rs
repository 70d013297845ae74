//! Finite complete residuated lattices.
//!
//! A [`Lattice`] is built from a [`LatticeSpec`] (element names, order pairs
//! and a tensor table) or from one of the builtin chain families. Meets,
//! joins, the residuum and the negation are derived once at construction and
//! stored as dense tables indexed by [`Elem`]. The residuum is never taken on
//! trust: it is computed as `a -> b = join { c : a * c <= b }` and the
//! adjunction `a * b <= c  <=>  a <= b -> c` is then checked exhaustively.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, LatticeError};

/// Largest number of elements a lattice may have.
pub const MAX_ELEMENTS: usize = 256;

/// Dense index of a lattice element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Elem(u8);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) fn from_index(i: usize) -> Elem {
        debug_assert!(i < MAX_ELEMENTS);
        Elem(i as u8)
    }
}

/// The t-norm of a builtin chain.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    /// `a * b = max(0, a + b - 1)`
    Lukasiewicz,
    /// `a * b = min(a, b)`
    Godel,
}

/// A builtin lattice descriptor, e.g. `godel(3)` or `boolean`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Builtin {
    Boolean,
    Chain { tnorm: TNorm, n: usize },
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Boolean => write!(f, "boolean"),
            Builtin::Chain { tnorm: TNorm::Lukasiewicz, n } => write!(f, "lukasiewicz({n})"),
            Builtin::Chain { tnorm: TNorm::Godel, n } => write!(f, "godel({n})"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "boolean" {
            return Ok(Builtin::Boolean);
        }
        let bad = || Error::InvalidArgument(format!("unknown builtin lattice `{s}`"));
        let (family, rest) = s.split_once('(').ok_or_else(bad)?;
        let n: usize = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let tnorm = match family.trim() {
            "lukasiewicz" => TNorm::Lukasiewicz,
            "godel" => TNorm::Godel,
            _ => return Err(bad()),
        };
        Ok(Builtin::Chain { tnorm, n })
    }
}

impl Builtin {
    pub fn build(self) -> Result<Lattice, Error> {
        match self {
            Builtin::Boolean => builtin_chain(2, TNorm::Godel).map(|l| l.with_source(LatticeSource::Builtin(self))),
            Builtin::Chain { tnorm, n } => builtin_chain(n, tnorm),
        }
    }
}

/// Serialization source for a [`Lattice`]: names, order and tensor by name.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    /// Pairs `(a, b)` meaning `a <= b`. Closed reflexively and transitively,
    /// so Hasse edges suffice.
    pub order: Vec<(String, String)>,
    /// `tensor[i][j]` is the name of `elements[i] * elements[j]`.
    pub tensor: Vec<Vec<String>>,
    /// Optional residuum table, cross-checked against the derived one.
    pub residuum: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeSource {
    Builtin(Builtin),
    Explicit,
}

/// A validated finite complete residuated lattice.
#[derive(Clone, Debug)]
pub struct Lattice {
    names: Vec<String>,
    source: LatticeSource,
    leq: Vec<bool>,
    tensor: Vec<Elem>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    residuum: Vec<Elem>,
    negation: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.leq == other.leq && self.tensor == other.tensor
    }
}

impl Eq for Lattice {}

impl Lattice {
    #[inline]
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size()).map(Elem::from_index)
    }

    /// Checked conversion from a raw index.
    pub fn element(&self, index: usize) -> Result<Elem, Error> {
        if index < self.size() {
            Ok(Elem::from_index(index))
        } else {
            Err(Error::ElementOutOfRange { index, size: self.size() })
        }
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(Elem::from_index)
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn source(&self) -> LatticeSource {
        self.source
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    fn at(&self, a: Elem, b: Elem) -> usize {
        a.index() * self.size() + b.index()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[self.at(a, b)]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[self.at(a, b)]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[self.at(a, b)]
    }

    #[inline]
    pub fn tensor(&self, a: Elem, b: Elem) -> Elem {
        self.tensor[self.at(a, b)]
    }

    /// `a -> b`.
    #[inline]
    pub fn residuum(&self, a: Elem, b: Elem) -> Elem {
        self.residuum[self.at(a, b)]
    }

    /// `!a = a -> 0`.
    #[inline]
    pub fn negation(&self, a: Elem) -> Elem {
        self.negation[a.index()]
    }

    /// Greatest lower bound; the empty meet is top.
    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    /// Least upper bound; the empty join is bottom.
    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    /// An element with `!!a != a`, if any.
    pub fn double_negation_witness(&self) -> Option<Elem> {
        self.elements().find(|&a| self.negation(self.negation(a)) != a)
    }

    pub fn satisfies_dne(&self) -> bool {
        self.double_negation_witness().is_none()
    }

    /// True when the order is total.
    pub fn is_chain(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Covering pairs `a < b` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(Elem, Elem)> {
        let lt = |a: Elem, b: Elem| a != b && self.leq(a, b);
        let mut edges = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if lt(a, b) && !self.elements().any(|c| lt(a, c) && lt(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Canonical spec: Hasse edges and the full tensor table.
    pub fn to_spec(&self) -> LatticeSpec {
        LatticeSpec {
            elements: self.names.clone(),
            order: self
                .hasse_edges()
                .into_iter()
                .map(|(a, b)| (self.name(a).to_owned(), self.name(b).to_owned()))
                .collect(),
            tensor: self
                .elements()
                .map(|a| self.elements().map(|b| self.name(self.tensor(a, b)).to_owned()).collect())
                .collect(),
            residuum: None,
        }
    }

    fn with_source(mut self, source: LatticeSource) -> Lattice {
        self.source = source;
        self
    }
}

fn valid_token(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '#' || c == ',')
}

fn lookup(names: &[String], name: &str) -> Result<usize, LatticeError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| LatticeError::Malformed(format!("unknown element `{name}`")))
}

fn read_table(names: &[String], rows: &[Vec<String>], what: &str) -> Result<Vec<Elem>, LatticeError> {
    let n = names.len();
    if rows.len() != n {
        return Err(LatticeError::Malformed(format!("{what} table has {} rows, expected {n}", rows.len())));
    }
    let mut table = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(LatticeError::Malformed(format!(
                "{what} row `{}` has {} entries, expected {n}",
                names[i],
                row.len()
            )));
        }
        for v in row {
            table.push(Elem::from_index(lookup(names, v)?));
        }
    }
    Ok(table)
}

/// Validates a spec and derives meet, join, residuum and negation tables.
///
/// Checks run in this order and the first failure is returned with a
/// witness: lattice order, commutativity, associativity, unit, distributivity
/// over joins (binary and empty), supplied-residuum agreement, adjunction.
pub fn validate_lattice(spec: &LatticeSpec) -> Result<Lattice, LatticeError> {
    let names = &spec.elements;
    let n = names.len();
    if n == 0 {
        return Err(LatticeError::Malformed("no elements".into()));
    }
    if n > MAX_ELEMENTS {
        return Err(LatticeError::Malformed(format!("{n} elements exceeds the maximum of {MAX_ELEMENTS}")));
    }
    for (i, name) in names.iter().enumerate() {
        if !valid_token(name) {
            return Err(LatticeError::Malformed(format!("invalid element name `{name}`")));
        }
        if names[..i].contains(name) {
            return Err(LatticeError::Malformed(format!("duplicate element `{name}`")));
        }
    }
    let nm = |i: usize| names[i].clone();

    // Order: reflexive-transitive closure of the given pairs.
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for (a, b) in &spec.order {
        let (a, b) = (lookup(names, a)?, lookup(names, b)?);
        leq[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if leq[i * n + j] && leq[j * n + i] {
                return Err(LatticeError::NotALatticeOrder { reason: "order has a cycle".into(), a: nm(i), b: nm(j) });
            }
        }
    }

    let bound = |i: usize, j: usize, upper: bool| -> Option<usize> {
        let is_bound = |k: usize| if upper { leq[i * n + k] && leq[j * n + k] } else { leq[k * n + i] && leq[k * n + j] };
        let bounds: Vec<usize> = (0..n).filter(|&k| is_bound(k)).collect();
        bounds
            .iter()
            .copied()
            .find(|&k| bounds.iter().all(|&m| if upper { leq[k * n + m] } else { leq[m * n + k] }))
    };
    let mut meet = vec![Elem(0); n * n];
    let mut join = vec![Elem(0); n * n];
    for i in 0..n {
        for j in 0..n {
            join[i * n + j] = Elem::from_index(bound(i, j, true).ok_or_else(|| LatticeError::NotALatticeOrder {
                reason: "no least upper bound".into(),
                a: nm(i),
                b: nm(j),
            })?);
            meet[i * n + j] = Elem::from_index(bound(i, j, false).ok_or_else(|| LatticeError::NotALatticeOrder {
                reason: "no greatest lower bound".into(),
                a: nm(i),
                b: nm(j),
            })?);
        }
    }
    let bottom = (0..n).find(|&i| (0..n).all(|j| leq[i * n + j])).expect("finite lattice has a bottom");
    let top = (0..n).find(|&i| (0..n).all(|j| leq[j * n + i])).expect("finite lattice has a top");

    let tensor = read_table(names, &spec.tensor, "tensor")?;
    let t = |a: usize, b: usize| tensor[a * n + b].index();
    let jn = |a: usize, b: usize| join[a * n + b].index();

    for a in 0..n {
        for b in a + 1..n {
            if t(a, b) != t(b, a) {
                return Err(LatticeError::NonCommutative { a: nm(a), b: nm(b) });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t(t(a, b), c) != t(a, t(b, c)) {
                    return Err(LatticeError::NonAssociative { a: nm(a), b: nm(b), c: nm(c) });
                }
            }
        }
    }
    for a in 0..n {
        if t(a, top) != a {
            return Err(LatticeError::UnitNotTop { a: nm(a) });
        }
    }
    for a in 0..n {
        if t(a, bottom) != bottom {
            return Err(LatticeError::JoinDistributivity { a: nm(a), joined: vec![] });
        }
        for b in 0..n {
            for c in b + 1..n {
                if t(a, jn(b, c)) != jn(t(a, b), t(a, c)) {
                    return Err(LatticeError::JoinDistributivity { a: nm(a), joined: vec![nm(b), nm(c)] });
                }
            }
        }
    }

    let mut residuum = vec![Elem(0); n * n];
    for a in 0..n {
        for b in 0..n {
            let r = (0..n).filter(|&c| leq[t(a, c) * n + b]).fold(bottom, jn);
            residuum[a * n + b] = Elem::from_index(r);
        }
    }
    if let Some(rows) = &spec.residuum {
        let supplied = read_table(names, rows, "residuum")?;
        if let Some(k) = (0..n * n).find(|&k| supplied[k] != residuum[k]) {
            return Err(LatticeError::ResiduumMismatch { a: nm(k / n), b: nm(k % n) });
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = leq[t(a, b) * n + c];
                let rhs = leq[a * n + residuum[b * n + c].index()];
                if lhs != rhs {
                    return Err(LatticeError::Adjunction { a: nm(a), b: nm(b), c: nm(c) });
                }
            }
        }
    }

    let negation = (0..n).map(|a| residuum[a * n + bottom]).collect();
    Ok(Lattice {
        names: names.clone(),
        source: LatticeSource::Explicit,
        leq,
        tensor,
        meet,
        join,
        residuum,
        negation,
        bottom: Elem::from_index(bottom),
        top: Elem::from_index(top),
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Name of `i / d` as a reduced fraction (`0`, `1/2`, `1`, ...).
fn fraction_name(i: usize, d: usize) -> String {
    match i {
        0 => "0".into(),
        _ if i == d => "1".into(),
        _ => {
            let g = gcd(i, d);
            format!("{}/{}", i / g, d / g)
        }
    }
}

/// The equidistant chain `{0, 1/(n-1), ..., 1}` with the named t-norm.
pub fn builtin_chain(n: usize, tnorm: TNorm) -> Result<Lattice, Error> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("a builtin chain needs at least 2 elements, got {n}")));
    }
    if n > MAX_ELEMENTS {
        return Err(Error::InvalidArgument(format!("a builtin chain has at most {MAX_ELEMENTS} elements")));
    }
    let d = n - 1;
    let names: Vec<String> = (0..n).map(|i| fraction_name(i, d)).collect();
    let product = |i: usize, j: usize| match tnorm {
        TNorm::Lukasiewicz => (i + j).saturating_sub(d),
        TNorm::Godel => i.min(j),
    };
    let spec = LatticeSpec {
        order: names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect(),
        tensor: (0..n).map(|i| (0..n).map(|j| names[product(i, j)].clone()).collect()).collect(),
        elements: names,
        residuum: None,
    };
    Ok(validate_lattice(&spec)?.with_source(LatticeSource::Builtin(Builtin::Chain { tnorm, n })))
}
