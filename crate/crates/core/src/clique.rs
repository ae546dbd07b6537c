//! Exact maximum clique on small graphs: branch and bound with a greedy
//! colouring bound over bit-packed adjacency rows.

#[derive(Debug, Clone)]
pub struct SmallGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl SmallGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        SmallGraph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    /// Graph on `0..n` with an edge wherever `adjacent(i, j)` holds (`i < j`).
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n && a != b);
        self.adj[a * self.words + b / 64] |= 1 << (b % 64);
        self.adj[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    /// Drops every edge at `v`.
    pub fn isolate(&mut self, v: usize) {
        for u in 0..self.n {
            self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        }
        for w in &mut self.adj[v * self.words..(v + 1) * self.words] {
            *w = 0;
        }
    }

    /// Neighbourhood of `v` as a bit mask.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Size of a maximum clique (0 for the empty graph).
    pub fn max_clique_size(&self) -> usize {
        self.search(usize::MAX)
    }

    /// Whether some clique has at least `k` vertices; stops at the first one found.
    pub fn has_clique_of_size(&self, k: usize) -> bool {
        k == 0 || self.search(k) >= k
    }

    /// `min(cap, size of a maximum clique inside the vertex mask)`.
    ///
    /// The search stops as soon as a clique of `cap` vertices is found, so a
    /// small cap makes "is there a clique this big" queries cheap.
    pub fn max_clique_within(&self, candidates: &[u64], cap: usize) -> usize {
        assert_eq!(candidates.len(), self.words);
        if cap == 0 || candidates.iter().all(|w| *w == 0) {
            return 0;
        }
        let mut best = 1;
        if cap > 1 {
            self.expand(0, candidates.to_vec(), &mut best, cap);
        }
        best.min(cap)
    }

    /// Bit mask of all `n` vertices.
    pub fn full_mask(&self) -> Vec<u64> {
        let mut mask = vec![0u64; self.words];
        for v in 0..self.n {
            mask[v / 64] |= 1 << (v % 64);
        }
        mask
    }

    fn search(&self, stop_at: usize) -> usize {
        self.max_clique_within(&self.full_mask(), stop_at)
    }

    /// Returns `true` to abort the whole search.
    fn expand(&self, depth: usize, mut candidates: Vec<u64>, best: &mut usize, stop_at: usize) -> bool {
        let (order, colors) = self.colour(&candidates);
        for idx in (0..order.len()).rev() {
            if depth + colors[idx] <= *best {
                return false;
            }
            let v = order[idx];
            let next: Vec<u64> = candidates.iter().zip(self.row(v)).map(|(c, r)| c & r).collect();
            if next.iter().all(|w| *w == 0) {
                if depth + 1 > *best {
                    *best = depth + 1;
                    if *best >= stop_at {
                        return true;
                    }
                }
            } else if self.expand(depth + 1, next, best, stop_at) {
                return true;
            }
            candidates[v / 64] &= !(1 << (v % 64));
        }
        false
    }

    /// Greedy sequential colouring; vertices come back in non-decreasing colour.
    fn colour(&self, candidates: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = candidates.to_vec();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|w| *w != 0) {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first_set(&q) {
                q[v / 64] &= !(1 << (v % 64));
                uncoloured[v / 64] &= !(1 << (v % 64));
                for (qw, rw) in q.iter_mut().zip(self.row(v)) {
                    *qw &= !rw;
                }
                order.push(v);
                colors.push(colour);
            }
        }
        (order, colors)
    }
}

fn first_set(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}
