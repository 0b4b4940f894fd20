use std::collections::HashMap;

use super::{Group, GroupElement};
use crate::error::{Error, Result};

/// Breadth-first distances from the identity, grown one layer at a time.
#[derive(Debug)]
pub(super) struct LengthTable {
    dist: HashMap<GroupElement, u32>,
    frontier: Vec<GroupElement>,
    radius: u32,
    saturated: bool,
}

impl LengthTable {
    pub fn new(identity: GroupElement) -> Self {
        let mut dist = HashMap::new();
        dist.insert(identity.clone(), 0);
        Self {
            dist,
            frontier: vec![identity],
            radius: 0,
            saturated: false,
        }
    }

    pub fn get(&self, g: &GroupElement) -> Option<u32> {
        self.dist.get(g).copied()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Adds the sphere of radius `radius + 1`.
    pub fn grow_layer(&mut self, group: &Group, cap: usize) -> Result<()> {
        if self.saturated {
            return Ok(());
        }
        let next_radius = self.radius + 1;
        let mut next = Vec::new();
        for g in &self.frontier {
            for s in group.generators() {
                let h = group.mul(g, s);
                if !self.dist.contains_key(&h) {
                    self.dist.insert(h.clone(), next_radius);
                    next.push(h);
                }
            }
        }
        if self.dist.len() > cap {
            let partial = self.dist.len();
            // roll back the partial layer so the table stays consistent
            for h in &next {
                self.dist.remove(h);
            }
            return Err(Error::BallTooLarge { cap, partial });
        }
        if next.is_empty() {
            self.saturated = true;
        } else {
            self.radius = next_radius;
            self.frontier = next;
        }
        Ok(())
    }

    pub fn ball(&self, radius: u32) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = self
            .dist
            .iter()
            .filter(|(_, &d)| d <= radius)
            .map(|(g, _)| g.clone())
            .collect();
        out.sort_unstable();
        out
    }
}
