//! Polynomial ring descriptions: named variable blocks with (multi)gradings.
//!
//! A `RingSpec` fixes the coefficient field, an ordered list of variable
//! blocks, and one or more grading components (weight vectors).  Block
//! structure is what elimination orders and bigraded bookkeeping key off.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::sync::Arc;

pub const MAX_VARS: usize = 64;

pub type Multidegree = SmallVec<[u32; 4]>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub vars: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RingSpec {
    field: PrimeField,
    blocks: Vec<Block>,
    var_names: Vec<String>,
    var_block: Vec<usize>,
    /// Each grading component assigns one weight per variable.
    gradings: Vec<Vec<u32>>,
}

pub type RingRef = Arc<RingSpec>;

impl RingSpec {
    pub fn new(field: PrimeField, blocks: Vec<Block>, gradings: Vec<Vec<u32>>) -> Result<RingRef> {
        let mut var_names = Vec::new();
        let mut var_block = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            for v in &b.vars {
                var_names.push(v.clone());
                var_block.push(bi);
            }
        }
        let n = var_names.len();
        if n == 0 {
            return Err(Error::InvalidRing("ring has no variables".into()));
        }
        if n > MAX_VARS {
            return Err(Error::InvalidRing(format!("too many variables ({n} > {MAX_VARS})")));
        }
        {
            let mut sorted = var_names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(Error::InvalidRing("variable names are not unique".into()));
            }
        }
        let gradings = if gradings.is_empty() {
            vec![vec![1; n]]
        } else {
            gradings
        };
        for g in &gradings {
            if g.len() != n {
                return Err(Error::InvalidRing("grading length does not match variable count".into()));
            }
        }
        for j in 0..n {
            let total: u64 = gradings.iter().map(|g| g[j] as u64).sum();
            if total == 0 {
                return Err(Error::InvalidRing(format!(
                    "variable {} has zero total weight",
                    var_names[j]
                )));
            }
        }
        Ok(Arc::new(RingSpec { field, blocks, var_names, var_block, gradings }))
    }

    /// Standard graded ring with a single block of variables.
    pub fn standard(field: PrimeField, block_name: &str, vars: &[&str]) -> Result<RingRef> {
        RingSpec::new(
            field,
            vec![Block { name: block_name.into(), vars: vars.iter().map(|s| s.to_string()).collect() }],
            vec![],
        )
    }

    /// `x_0 .. x_n` with the standard grading over GF(p).
    pub fn projective(field: PrimeField, n: usize) -> Result<RingRef> {
        let vars: Vec<String> = (0..=n).map(|i| format!("x_{i}")).collect();
        RingSpec::new(
            field,
            vec![Block { name: "x".into(), vars }],
            vec![],
        )
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    #[inline]
    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    #[inline]
    pub fn var_name(&self, i: usize) -> &str {
        &self.var_names[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    #[inline]
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_index(&self, name: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.name == name)
    }

    /// Global variable indices belonging to a block.
    pub fn block_vars(&self, block: usize) -> Vec<usize> {
        (0..self.nvars()).filter(|&j| self.var_block[j] == block).collect()
    }

    #[inline]
    pub fn block_of_var(&self, var: usize) -> usize {
        self.var_block[var]
    }

    #[inline]
    pub fn gradings(&self) -> &[Vec<u32>] {
        &self.gradings
    }

    pub fn multidegree(&self, m: &Monomial) -> Multidegree {
        self.gradings
            .iter()
            .map(|g| m.exponents().iter().zip(g).map(|(&e, &w)| e as u32 * w).sum())
            .collect()
    }

    /// Degree in the first grading component.
    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        m.exponents().iter().zip(&self.gradings[0]).map(|(&e, &w)| e as u32 * w).sum()
    }

    pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
        Arc::ptr_eq(a, b)
            || (a.field == b.field && a.var_names == b.var_names && a.gradings == b.gradings)
    }

    /// The ring obtained by deleting a set of variables.  Blocks that become
    /// empty are dropped; grading components that become identically zero are
    /// dropped as well (at least one always survives).
    pub fn subring_without(&self, removed: &[usize]) -> Result<(RingRef, Vec<Option<usize>>)> {
        let keep: Vec<usize> =
            (0..self.nvars()).filter(|j| !removed.contains(j)).collect();
        let mut blocks = Vec::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            let vars: Vec<String> = self
                .block_vars(bi)
                .into_iter()
                .filter(|j| keep.contains(j))
                .map(|j| self.var_names[j].clone())
                .collect();
            if !vars.is_empty() {
                blocks.push(Block { name: b.name.clone(), vars });
            }
        }
        let mut gradings: Vec<Vec<u32>> = self
            .gradings
            .iter()
            .map(|g| keep.iter().map(|&j| g[j]).collect())
            .collect();
        gradings.retain(|g| g.iter().any(|&w| w > 0));
        // Guard against a variable losing all weight when components drop.
        if gradings.is_empty() || keep.iter().enumerate().any(|(jj, _)| gradings.iter().all(|g| g[jj] == 0)) {
            gradings = vec![vec![1; keep.len()]];
        }
        let ring = RingSpec::new(self.field, blocks, gradings)?;
        let mut map = vec![None; self.nvars()];
        for (new_idx, &old_idx) in keep.iter().enumerate() {
            map[old_idx] = Some(new_idx);
        }
        Ok((ring, map))
    }
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.var_names == other.var_names
            && self.gradings == other.gradings
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        let f = PrimeField::default_field();
        assert!(RingSpec::standard(f, "x", &["x_0", "x_0"]).is_err());
    }

    #[test]
    fn projective_ring_layout() {
        let f = PrimeField::default_field();
        let r = RingSpec::projective(f, 3).unwrap();
        assert_eq!(r.nvars(), 4);
        assert_eq!(r.var_name(2), "x_2");
        assert_eq!(r.var_index("x_3"), Some(3));
    }

    #[test]
    fn subring_drops_vars_and_empty_blocks() {
        let f = PrimeField::default_field();
        let r = RingSpec::new(
            f,
            vec![
                Block { name: "x".into(), vars: vec!["x_0".into(), "x_1".into()] },
                Block { name: "y".into(), vars: vec!["y_0".into()] },
            ],
            vec![],
        )
        .unwrap();
        let (s, map) = r.subring_without(&[2]).unwrap();
        assert_eq!(s.nvars(), 2);
        assert_eq!(s.blocks().len(), 1);
        assert_eq!(map[0], Some(0));
        assert_eq!(map[2], None);
    }
}
