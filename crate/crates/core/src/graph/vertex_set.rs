use serde::{Serialize, Serializer};

/// A subset of `0..n`, stored as a bitset with a cached cardinality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64).max(1)],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Panics if `mask` has bits at or above `n`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n >= 64 || mask >> n == 0, "mask has bits outside 0..{n}");
        let mut s = Self::empty(n);
        s.words[0] = mask;
        s.len = mask.count_ones() as usize;
        s
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// Size of the ground set.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    /// Returns false if `v` was already present.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.n, "vertex {v} outside 0..{}", self.n);
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.words[v / 64] &= !(1 << (v % 64));
        self.len -= 1;
        true
    }

    pub fn complement(&self) -> Self {
        VertexSet::from_vertices(self.n, (0..self.n).filter(|&v| !self.contains(v)))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The low word; meaningful only when `n <= 64`.
    pub fn mask(&self) -> u64 {
        self.words[0]
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}
