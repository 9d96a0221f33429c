//! A textbook Dung solver over an explicit attack matrix, written without
//! reference to the library's equivalence-aware machinery.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dgl_core::argue::EquivDungModel;

pub type Ext = BTreeSet<usize>;

pub struct Framework {
    pub n: usize,
    /// `att[a][b]`: `a` attacks `b`.
    pub att: Vec<Vec<bool>>,
}

impl Framework {
    pub fn of(m: &EquivDungModel) -> Self {
        let n = m.len();
        let att = (0..n).map(|a| (0..n).map(|b| m.attacks(a, b)).collect()).collect();
        Framework { n, att }
    }

    fn subsets(&self) -> Vec<Ext> {
        (0u64..1 << self.n)
            .map(|bits| (0..self.n).filter(|i| bits >> i & 1 == 1).collect())
            .collect()
    }

    pub fn conflict_free(&self, s: &Ext) -> bool {
        s.iter().all(|&a| s.iter().all(|&b| !self.att[a][b]))
    }

    /// The characteristic function: arguments all of whose attackers are attacked by `s`.
    pub fn f(&self, s: &Ext) -> Ext {
        (0..self.n)
            .filter(|&a| (0..self.n).filter(|&b| self.att[b][a]).all(|b| s.iter().any(|&c| self.att[c][b])))
            .collect()
    }

    pub fn admissible(&self, s: &Ext) -> bool {
        self.conflict_free(s) && s.is_subset(&self.f(s))
    }

    pub fn complete(&self) -> Vec<Ext> {
        self.subsets().into_iter().filter(|s| self.conflict_free(s) && self.f(s) == *s).collect()
    }

    /// Maximal admissible sets.
    pub fn preferred(&self) -> Vec<Ext> {
        let adm: Vec<Ext> = self.subsets().into_iter().filter(|s| self.admissible(s)).collect();
        adm.iter()
            .filter(|s| !adm.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
            .cloned()
            .collect()
    }

    /// Least fixpoint of the characteristic function, iterated from ∅.
    pub fn grounded(&self) -> Ext {
        let mut s = Ext::new();
        loop {
            let next = self.f(&s);
            if next == s {
                return s;
            }
            s = next;
        }
    }

    pub fn stable(&self) -> Vec<Ext> {
        self.subsets()
            .into_iter()
            .filter(|s| self.conflict_free(s) && (0..self.n).all(|a| s.contains(&a) || s.iter().any(|&b| self.att[b][a])))
            .collect()
    }
}

/// Library extensions as index sets, for comparison with the oracle.
pub fn as_sets(sets: &[dgl_core::argue::NodeSet]) -> BTreeSet<Ext> {
    sets.iter().map(|s| s.iter().collect()).collect()
}
