//! Disjoint-set forest with union by rank and path compression.

use thiserror::Error;

const ABSENT: usize = usize::MAX;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum DsuError {
    #[error("element {0} is already present")]
    AlreadyPresent(usize),
    #[error("element {0} is not present")]
    Absent(usize),
    #[error("element {0} is not the canonical element of its subset")]
    NotCanonical(usize),
    #[error("cannot join subset {0} with itself")]
    SameSubset(usize),
}

/// Partition of a set of `usize` elements.
///
/// Elements need not be contiguous; storage grows to the largest created
/// element.
#[derive(Debug, Clone, Default)]
pub struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
    count: usize,
}

impl Dsu {
    pub fn new() -> Self {
        Self::default()
    }

    /// A structure holding the singletons `{0}, ..., {n-1}`.
    pub fn with_singletons(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            rank: vec![0; n],
            count: n,
        }
    }

    /// Number of subsets currently stored.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.parent.len() && self.parent[x] != ABSENT
    }

    pub fn create(&mut self, x: usize) -> Result<(), DsuError> {
        if self.contains(x) {
            return Err(DsuError::AlreadyPresent(x));
        }
        if x >= self.parent.len() {
            self.parent.resize(x + 1, ABSENT);
            self.rank.resize(x + 1, 0);
        }
        self.parent[x] = x;
        self.count += 1;
        Ok(())
    }

    pub fn find(&mut self, x: usize) -> Result<usize, DsuError> {
        if !self.contains(x) {
            return Err(DsuError::Absent(x));
        }
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        Ok(root)
    }

    /// Merges the subsets whose canonical elements are `x` and `y`.
    pub fn join(&mut self, x: usize, y: usize) -> Result<(), DsuError> {
        for z in [x, y] {
            if !self.contains(z) {
                return Err(DsuError::Absent(z));
            }
            if self.parent[z] != z {
                return Err(DsuError::NotCanonical(z));
            }
        }
        if x == y {
            return Err(DsuError::SameSubset(x));
        }
        match self.rank[x].cmp(&self.rank[y]) {
            std::cmp::Ordering::Less => self.parent[x] = y,
            std::cmp::Ordering::Greater => self.parent[y] = x,
            std::cmp::Ordering::Equal => {
                self.parent[y] = x;
                self.rank[x] += 1;
            }
        }
        self.count -= 1;
        Ok(())
    }

    /// Finds both representatives and joins them; returns `false` if `a` and
    /// `b` were already together.
    pub fn union(&mut self, a: usize, b: usize) -> Result<bool, DsuError> {
        let x = self.find(a)?;
        let y = self.find(b)?;
        if x == y {
            return Ok(false);
        }
        self.join(x, y)?;
        Ok(true)
    }
}
