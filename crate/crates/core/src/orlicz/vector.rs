use std::collections::btree_map::{self, BTreeMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::scalar::Scalar;

/// A finitely supported complex function on a group. Exact zeros are never
/// stored; tiny nonzero amplitudes are kept.
#[derive(Debug, Clone)]
pub struct OrliczVector<T> {
    group: Arc<Group>,
    entries: BTreeMap<GroupElement, Complex<T>>,
}

impl<T: Scalar> OrliczVector<T> {
    pub fn zero(group: Arc<Group>) -> Self {
        Self { group, entries: BTreeMap::new() }
    }

    pub fn delta(group: Arc<Group>, s: GroupElement) -> Result<Self> {
        Self::from_entries(group, [(s, Complex::new(T::one(), T::zero()))])
    }

    /// Builds a vector from `(element, amplitude)` pairs; repeated elements
    /// are rejected.
    pub fn from_entries<I>(group: Arc<Group>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, Complex<T>)>,
    {
        let mut v = Self::zero(group);
        for (s, z) in entries {
            v.group.check(&s)?;
            if v.entries.contains_key(&s) {
                return Err(Error::InvalidParameter(format!("element {s} listed twice")));
            }
            if z != Complex::new(T::zero(), T::zero()) {
                v.entries.insert(s, z);
            }
        }
        Ok(v)
    }

    pub fn from_real<I>(group: Arc<Group>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, T)>,
    {
        Self::from_entries(group, entries.into_iter().map(|(s, x)| (s, Complex::new(x, T::zero()))))
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn get(&self, s: &GroupElement) -> Complex<T> {
        self.entries.get(s).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Adds `z` at `s`, dropping the entry if the sum is exactly zero.
    pub(crate) fn accumulate(&mut self, s: GroupElement, z: Complex<T>) {
        match self.entries.entry(s) {
            btree_map::Entry::Occupied(mut e) => {
                let sum = *e.get() + z;
                if sum == Complex::new(T::zero(), T::zero()) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            btree_map::Entry::Vacant(e) => {
                if z != Complex::new(T::zero(), T::zero()) {
                    e.insert(z);
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, &Complex<T>)> {
        self.entries.iter()
    }

    /// `|f(s)|` over the support, in support order.
    pub fn magnitudes(&self) -> Vec<T> {
        self.entries.values().map(|z| z.norm()).collect()
    }

    pub fn l1_norm(&self) -> T {
        self.entries.values().map(|z| z.norm()).sum()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        self.map(|_, z| Ok(z * c)).expect("scaling is infallible")
    }

    /// Applies `f` to every stored entry; results that are exactly zero are pruned.
    pub fn map<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&GroupElement, Complex<T>) -> Result<Complex<T>>,
    {
        let mut out = Self::zero(Arc::clone(&self.group));
        for (s, &z) in &self.entries {
            out.accumulate(s.clone(), f(s, z)?);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (s, &z) in &other.entries {
            out.accumulate(s.clone(), z);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn check_same(&self, other: &Self) -> Result<()> {
        check_same_group(&self.group, &other.group)
    }

    /// Parses the line format `c1,...,cd,re,im`; blank lines and `#`
    /// comments are skipped, repeated elements are summed.
    pub fn parse(group: Arc<Group>, text: &str) -> Result<Self> {
        let arity = group.arity();
        let mut v = Self::zero(Arc::clone(&group));
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != arity + 2 {
                return Err(Error::Parse(format!(
                    "line {}: expected {} fields, found {}",
                    lineno + 1,
                    arity + 2,
                    fields.len()
                )));
            }
            let coords = fields[..arity]
                .iter()
                .map(|x| x.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            let num = |x: &str| {
                x.parse::<f64>()
                    .map(T::lit)
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            let z = Complex::new(num(fields[arity])?, num(fields[arity + 1])?);
            v.accumulate(group.element(coords)?, z);
        }
        Ok(v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, z) in &self.entries {
            for c in s.coords() {
                let _ = write!(out, "{c},");
            }
            let _ = writeln!(out, "{},{}", z.re.as_f64(), z.im.as_f64());
        }
        out
    }
}

pub(crate) fn check_same_group(a: &Group, b: &Group) -> Result<()> {
    if a.is_same(b) {
        Ok(())
    } else {
        Err(Error::GroupMismatch { left: a.to_string(), right: b.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn zeros_are_pruned_exactly() {
        let g = Arc::new(Group::cyclic(7).unwrap());
        let s = g.element(vec![3]).unwrap();
        let v = OrliczVector::from_entries(g.clone(), [(s.clone(), c(0.0, 0.0))]).unwrap();
        assert!(v.is_zero());
        let tiny = OrliczVector::from_entries(g.clone(), [(s.clone(), c(1e-300, 0.0))]).unwrap();
        assert_eq!(tiny.len(), 1);
        let d = OrliczVector::<f64>::delta(g.clone(), s).unwrap();
        assert!(d.sub(&d).unwrap().is_zero());
    }

    #[test]
    fn duplicates_rejected() {
        let g = Arc::new(Group::free_abelian(2));
        let s = g.element(vec![1, 1]).unwrap();
        assert!(OrliczVector::from_entries(g, [(s.clone(), c(1.0, 0.0)), (s, c(2.0, 0.0))]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = Arc::new(Group::free_abelian(2));
        let text = "# header\n1,0,0.5,-1\n\n-2,3,1e-3,0\n";
        let v = OrliczVector::<f64>::parse(g.clone(), text).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.get(&g.element(vec![1, 0]).unwrap()), c(0.5, -1.0));
        let back = OrliczVector::<f64>::parse(g.clone(), &v.to_text()).unwrap();
        assert!(back.sub(&v).unwrap().is_zero());
        assert!(OrliczVector::<f64>::parse(g, "1,0,0.5").is_err());
    }

    #[test]
    fn group_mismatch() {
        let a = OrliczVector::<f64>::zero(Arc::new(Group::cyclic(5).unwrap()));
        let b = OrliczVector::<f64>::zero(Arc::new(Group::cyclic(7).unwrap()));
        assert!(matches!(a.add(&b), Err(Error::GroupMismatch { .. })));
    }
}
