//! Disjoint sets with integer offsets to the representative.
//!
//! Each variable `v` stores a parent and `delta[v] = value(v) - value(parent(v))`.
//! `find` compresses paths while accumulating offsets, so after it returns
//! every visited node points straight at the root.

use crate::num::Int;

/// A contradictory fact `value(x) = value(y) + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict<T> {
    pub x: usize,
    pub y: usize,
    pub offset: T,
    /// The offset already implied by earlier facts.
    pub implied: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assert<T> {
    Ok,
    Conflict(Conflict<T>),
}

#[derive(Debug, Clone)]
pub struct OffsetUnionFind<T> {
    parent: Vec<usize>,
    delta: Vec<T>,
    rank: Vec<u32>,
    conflict: Option<Conflict<T>>,
    facts: u64,
}

impl<T: Int> OffsetUnionFind<T> {
    pub fn new(n: usize) -> Self {
        OffsetUnionFind {
            parent: (0..n).collect(),
            delta: vec![T::zero(); n],
            rank: vec![0; n],
            conflict: None,
            facts: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// `(root, o)` such that `value(v) = value(root) + o` in every model.
    pub fn find(&mut self, v: usize) -> (usize, T) {
        let mut path = Vec::new();
        let mut cur = v;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // walk back from the node nearest the root, accumulating offsets
        let mut acc = T::zero();
        for &node in path.iter().rev() {
            acc = acc + self.delta[node];
            self.delta[node] = acc;
            self.parent[node] = root;
        }
        (root, self.delta_of(v, root))
    }

    fn delta_of(&self, v: usize, root: usize) -> T {
        if v == root {
            T::zero()
        } else {
            self.delta[v]
        }
    }

    /// `value(x) - value(y)` if the facts determine it.
    pub fn implied_offset(&mut self, x: usize, y: usize) -> Option<T> {
        let (rx, ox) = self.find(x);
        let (ry, oy) = self.find(y);
        (rx == ry).then(|| ox - oy)
    }

    /// Records `value(x) = value(y) + offset`. Repeating a fact is a no-op;
    /// a fact contradicting an implied offset returns `Conflict` and is kept
    /// as the first conflict.
    pub fn assert_fact(&mut self, x: usize, y: usize, offset: T) -> Assert<T> {
        self.facts += 1;
        let (rx, ox) = self.find(x);
        let (ry, oy) = self.find(y);
        if rx == ry {
            let implied = ox - oy;
            if implied == offset {
                return Assert::Ok;
            }
            let c = Conflict {
                x,
                y,
                offset,
                implied,
            };
            self.conflict.get_or_insert(c);
            return Assert::Conflict(c);
        }
        // value(rx) - value(ry) = offset - ox + oy
        let root_gap = offset - ox + oy;
        let (child, root, gap) = match self.rank[rx].cmp(&self.rank[ry]) {
            std::cmp::Ordering::Less => (rx, ry, root_gap),
            std::cmp::Ordering::Greater => (ry, rx, -root_gap),
            std::cmp::Ordering::Equal if rx < ry => (ry, rx, -root_gap),
            std::cmp::Ordering::Equal => (rx, ry, root_gap),
        };
        if self.rank[rx] == self.rank[ry] {
            self.rank[root] += 1;
        }
        self.parent[child] = root;
        self.delta[child] = gap;
        Assert::Ok
    }

    pub fn conflict(&self) -> Option<&Conflict<T>> {
        self.conflict.as_ref()
    }

    /// Number of `assert_fact` calls so far.
    pub fn facts_asserted(&self) -> u64 {
        self.facts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: usize = 0;
    const Y: usize = 1;
    const Z: usize = 2;

    #[test]
    fn offsets_compose() {
        let mut uf = OffsetUnionFind::<i64>::new(3);
        assert_eq!(uf.assert_fact(X, Y, 2), Assert::Ok);
        assert_eq!(uf.assert_fact(Y, Z, 3), Assert::Ok);
        assert_eq!(uf.implied_offset(X, Z), Some(5));
    }

    #[test]
    fn contradictory_offsets_conflict() {
        let mut uf = OffsetUnionFind::<i64>::new(2);
        uf.assert_fact(X, Y, 2);
        assert!(matches!(uf.assert_fact(X, Y, 3), Assert::Conflict(_)));
        assert_eq!(uf.conflict().unwrap().implied, 2);
        assert_eq!(uf.assert_fact(X, Y, 2), Assert::Ok);
    }

    #[test]
    fn consistent_cycle() {
        let mut uf = OffsetUnionFind::<i64>::new(3);
        assert_eq!(uf.assert_fact(X, Y, 1), Assert::Ok);
        assert_eq!(uf.assert_fact(Y, Z, 1), Assert::Ok);
        assert_eq!(uf.assert_fact(Z, X, -2), Assert::Ok);
        assert!(uf.conflict().is_none());
    }

    #[test]
    fn implied_offset_basics() {
        let mut uf = OffsetUnionFind::<i64>::new(3);
        assert_eq!(uf.implied_offset(X, X), Some(0));
        uf.assert_fact(X, Y, 2);
        assert_eq!(uf.implied_offset(Y, X), Some(-2));
        assert_eq!(uf.implied_offset(X, Z), None);
    }

    #[test]
    fn equal_rank_prefers_smaller_root() {
        let mut uf = OffsetUnionFind::<i32>::new(2);
        uf.assert_fact(Y, X, 4);
        assert_eq!(uf.find(Y), (X, 4));
    }
}
