//! Finitely generated discrete groups realized on integer coordinate tuples:
//! free abelian `ℤᵈ`, the discrete Heisenberg group `H₃(ℤ)` and cyclic `ℤ_n`.
//!
//! Word lengths come from a breadth-first search of the Cayley graph that is
//! grown lazily and memoized per group. For `ℤᵈ` with the standard
//! generators the closed form `Σ|xᵢ|` is used instead.

mod growth;
mod length;
mod weight;

use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};

pub use growth::{growth_order_estimate, GrowthEstimate};
pub use weight::{weight_axioms_report, Weight, WeightKind, WeightReport};

use length::LengthTable;

/// Default number of elements the breadth-first search may enumerate.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    FreeAbelian(usize),
    Heisenberg,
    Cyclic(i64),
}

impl GroupKind {
    pub fn arity(&self) -> usize {
        match *self {
            GroupKind::FreeAbelian(d) => d,
            GroupKind::Heisenberg => 3,
            GroupKind::Cyclic(_) => 1,
        }
    }

    pub fn is_abelian(&self) -> bool {
        !matches!(self, GroupKind::Heisenberg)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupKind::Cyclic(_))
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::FreeAbelian(d) => write!(f, "z{d}"),
            GroupKind::Heisenberg => write!(f, "heis"),
            GroupKind::Cyclic(n) => write!(f, "cyclic:{n}"),
        }
    }
}

/// A group together with a fixed symmetric generating set.
pub struct Group {
    kind: GroupKind,
    generators: Vec<GroupElement>,
    closed_form_length: bool,
    element_cap: usize,
    table: RwLock<LengthTable>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("kind", &self.kind)
            .field("generators", &self.generators)
            .finish()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

fn unit_vectors(d: usize) -> Vec<GroupElement> {
    let mut gens = Vec::with_capacity(2 * d);
    for i in 0..d {
        for sign in [1, -1] {
            let mut c = vec![0; d];
            c[i] = sign;
            gens.push(GroupElement(c));
        }
    }
    gens
}

impl Group {
    /// `ℤᵈ` with generators `±eᵢ`.
    pub fn free_abelian(d: usize) -> Self {
        let mut g = Self::build(GroupKind::FreeAbelian(d), unit_vectors(d));
        g.closed_form_length = true;
        g
    }

    /// `H₃(ℤ)` generated by `x = (1,0,0)`, `y = (0,1,0)` and their inverses.
    pub fn heisenberg() -> Self {
        let gens = vec![
            GroupElement(vec![1, 0, 0]),
            GroupElement(vec![-1, 0, 0]),
            GroupElement(vec![0, 1, 0]),
            GroupElement(vec![0, -1, 0]),
        ];
        Self::build(GroupKind::Heisenberg, gens)
    }

    /// `ℤ_n` generated by `±1`.
    pub fn cyclic(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("cyclic order must be >= 2, got {n}")));
        }
        let mut gens = vec![GroupElement(vec![1])];
        if n > 2 {
            gens.push(GroupElement(vec![n - 1]));
        }
        Ok(Self::build(GroupKind::Cyclic(n), gens))
    }

    /// A group with a custom generating set, which must be symmetric and
    /// exclude the identity.
    pub fn with_generators(kind: GroupKind, generators: Vec<Vec<i64>>) -> Result<Self> {
        if let GroupKind::Cyclic(n) = kind {
            if n < 2 {
                return Err(Error::InvalidParameter(format!("cyclic order must be >= 2, got {n}")));
            }
        }
        let probe = Self::build(kind, Vec::new());
        let mut gens = Vec::with_capacity(generators.len());
        for c in generators {
            let g = probe.element(c)?;
            if g == probe.identity() {
                return Err(Error::InvalidGenerators("identity listed as a generator".into()));
            }
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            return Err(Error::InvalidGenerators("empty generating set".into()));
        }
        for g in &gens {
            let inv = probe.invert(g)?;
            if !gens.contains(&inv) {
                return Err(Error::InvalidGenerators(format!(
                    "generator {g} present without its inverse {inv}"
                )));
            }
        }
        let standard = matches!(kind, GroupKind::FreeAbelian(d) if {
            let mut a = gens.clone();
            let mut b = unit_vectors(d);
            a.sort();
            b.sort();
            a == b
        });
        let mut g = Self::build(kind, gens);
        g.closed_form_length = standard;
        Ok(g)
    }

    fn build(kind: GroupKind, generators: Vec<GroupElement>) -> Self {
        let arity = kind.arity();
        Self {
            kind,
            generators,
            closed_form_length: false,
            element_cap: DEFAULT_ELEMENT_CAP,
            table: RwLock::new(LengthTable::new(GroupElement(vec![0; arity]))),
        }
    }

    /// Parses `z<d>`, `heis` or `cyclic:<n>` (also `c<n>`).
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let bad = || Error::Parse(format!("unknown group {spec:?}; expected z<d>, heis or cyclic:<n>"));
        if spec == "heis" || spec == "heisenberg" {
            return Ok(Self::heisenberg());
        }
        if let Some(n) = spec.strip_prefix("cyclic:").or_else(|| spec.strip_prefix('c')) {
            return Self::cyclic(n.parse().map_err(|_| bad())?);
        }
        if let Some(d) = spec.strip_prefix('z') {
            let d: usize = d.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Self::free_abelian(d));
        }
        Err(bad())
    }

    /// Overrides the enumeration cap used by breadth-first search.
    pub fn with_element_cap(mut self, cap: usize) -> Self {
        self.element_cap = cap;
        self
    }

    /// Same group law and generating set.
    pub fn is_same(&self, other: &Group) -> bool {
        std::ptr::eq(self, other) || (self.kind == other.kind && self.generators == other.generators)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.arity()])
    }

    /// Builds an element, reducing cyclic coordinates into `[0, n)`.
    pub fn element(&self, mut coords: Vec<i64>) -> Result<GroupElement> {
        if coords.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: coords.len(),
            });
        }
        if let GroupKind::Cyclic(n) = self.kind {
            coords[0] = coords[0].rem_euclid(n);
        }
        Ok(GroupElement(coords))
    }

    /// Checks that `g` is a well-formed element of this group.
    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.0.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: g.0.len(),
            });
        }
        if let GroupKind::Cyclic(n) = self.kind {
            if !(0..n).contains(&g.0[0]) {
                return Err(Error::ForeignElement {
                    element: g.to_string(),
                    group: self.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    pub fn invert(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(self.inv(g))
    }

    /// Group law on already-validated elements.
    pub(crate) fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let (a, b) = (&g.0, &h.0);
        match self.kind {
            GroupKind::FreeAbelian(_) => GroupElement(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            GroupKind::Heisenberg => {
                GroupElement(vec![a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]])
            }
            GroupKind::Cyclic(n) => GroupElement(vec![(a[0] + b[0]).rem_euclid(n)]),
        }
    }

    pub(crate) fn inv(&self, g: &GroupElement) -> GroupElement {
        let a = &g.0;
        match self.kind {
            GroupKind::FreeAbelian(_) => GroupElement(a.iter().map(|x| -x).collect()),
            GroupKind::Heisenberg => GroupElement(vec![-a[0], -a[1], -a[2] + a[0] * a[1]]),
            GroupKind::Cyclic(n) => GroupElement(vec![(-a[0]).rem_euclid(n)]),
        }
    }

    /// Shortest generator word length of `g`; `τ(e) = 0`.
    pub fn word_length(&self, g: &GroupElement) -> Result<u32> {
        self.check(g)?;
        if self.closed_form_length {
            return Ok(g.0.iter().map(|c| c.unsigned_abs()).sum::<u64>() as u32);
        }
        self.bfs_length(g)
    }

    /// Word length via breadth-first search only, bypassing any closed form.
    pub fn bfs_length(&self, g: &GroupElement) -> Result<u32> {
        loop {
            {
                let table = self.table.read().expect("length table poisoned");
                if let Some(d) = table.get(g) {
                    return Ok(d);
                }
                if table.is_saturated() {
                    return Err(Error::ForeignElement {
                        element: g.to_string(),
                        group: format!("the subgroup generated by {:?}", self.generators),
                    });
                }
            }
            let mut table = self.table.write().expect("length table poisoned");
            if table.get(g).is_some() {
                continue;
            }
            table
                .grow_layer(self, self.element_cap)
                .map_err(|_| Error::WordLengthCap {
                    element: g.to_string(),
                    cap: self.element_cap,
                })?;
        }
    }

    /// All elements of word length at most `radius`, in lexicographic order.
    pub fn ball(&self, radius: u32) -> Result<Vec<GroupElement>> {
        {
            let table = self.table.read().expect("length table poisoned");
            if table.radius() >= radius || table.is_saturated() {
                return Ok(table.ball(radius));
            }
        }
        let mut table = self.table.write().expect("length table poisoned");
        while table.radius() < radius && !table.is_saturated() {
            table.grow_layer(self, self.element_cap)?;
        }
        Ok(table.ball(radius))
    }

    /// Number of elements of word length at most `radius`.
    pub fn ball_size(&self, radius: u32) -> Result<usize> {
        Ok(self.ball(radius)?.len())
    }
}
