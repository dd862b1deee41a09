//! Maximal clique enumeration on dense bitset graphs.
//!
//! Bron–Kerbosch with Tomita pivoting. Top-level branches follow a
//! degeneracy-style ordering and run in parallel; results are sorted so the
//! output does not depend on scheduling.

use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = BitSet::new(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn and_count(&self, other: &BitSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn and_not(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// Undirected simple graph as adjacency bitsets.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![BitSet::new(n); n] }
    }

    pub fn from_fn(n: usize, edge: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let adj = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut s = BitSet::new(n);
                for j in 0..n {
                    if i != j && edge(i, j) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        Graph { adj }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "no loops in a simple graph");
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    /// Induced subgraph on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        Graph::from_fn(keep.len(), |i, j| self.has_edge(keep[i], keep[j]))
    }
}

struct Search<'a> {
    g: &'a Graph,
    floor: usize,
    out: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet) {
        if p.is_empty() {
            if x.is_empty() && r.len() >= self.floor {
                let mut c = r.clone();
                c.sort_unstable();
                self.out.push(c);
            }
            return;
        }
        if r.len() + p.len() < self.floor {
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| (p.and_count(&self.g.adj[u]), std::cmp::Reverse(u)))
            .expect("p is nonempty");
        let candidates: Vec<usize> = p.and_not(&self.g.adj[pivot]).iter().collect();
        for v in candidates {
            let nv = &self.g.adj[v];
            r.push(v);
            self.expand(r, p.and(nv), x.and(nv));
            r.pop();
            p.remove(v);
            x.insert(v);
            if r.len() + p.len() < self.floor {
                return;
            }
        }
    }
}

/// All maximal cliques with at least `floor` vertices, each sorted, in
/// lexicographic order.
pub fn maximal_cliques(g: &Graph, floor: usize) -> Vec<Vec<usize>> {
    let n = g.len();
    if n == 0 {
        return if floor == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    // branch on v with candidates restricted to later vertices and
    // exclusions to earlier ones
    let mut cliques: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|v| {
            let nv = g.neighbors(v);
            if nv.len() + 1 < floor {
                return Vec::new().into_iter();
            }
            let mut p = BitSet::new(n);
            let mut x = BitSet::new(n);
            for u in nv.iter() {
                if u > v {
                    p.insert(u);
                } else {
                    x.insert(u);
                }
            }
            let mut s = Search { g, floor, out: Vec::new() };
            s.expand(&mut vec![v], p, x);
            s.out.into_iter()
        })
        .collect();
    cliques.sort_unstable();
    cliques
}

/// Size of a maximum clique.
pub fn clique_number(g: &Graph) -> usize {
    let n = g.len();
    let mut best = 0usize;
    // increasing floors let the bound prune aggressively
    for floor in 1..=n {
        if maximal_cliques_exist(g, floor) {
            best = floor;
        } else {
            break;
        }
    }
    best
}

/// Whether some clique reaches `size` vertices.
pub fn has_clique_of_size(g: &Graph, size: usize) -> bool {
    size == 0 || maximal_cliques_exist(g, size)
}

fn maximal_cliques_exist(g: &Graph, floor: usize) -> bool {
    fn grow(g: &Graph, depth: usize, p: BitSet, floor: usize) -> bool {
        if depth >= floor {
            return true;
        }
        if depth + p.len() < floor {
            return false;
        }
        let mut p = p;
        let verts: Vec<usize> = p.iter().collect();
        for v in verts {
            if depth + p.len() < floor {
                return false;
            }
            if grow(g, depth + 1, p.and(g.neighbors(v)), floor) {
                return true;
            }
            p.remove(v);
        }
        false
    }
    (0..g.len()).into_par_iter().any(|v| {
        let mut p = BitSet::new(g.len());
        for u in g.neighbors(v).iter().filter(|&u| u > v) {
            p.insert(u);
        }
        grow(g, 1, p, floor)
    })
}
