//! Sign-pattern trie used to find conformal reducers quickly.
//!
//! Level `d` of the trie branches on the sign of coordinate `coords[d]`. A
//! query for `s` only descends into the zero branch and the branch matching
//! the sign of `s`, so every stored vector reached at a leaf is already
//! sign-compatible with `s`; only magnitudes are left to compare.

const NONE: u32 = u32::MAX;

#[derive(Default)]
struct Node {
    child: [u32; 3],
    items: Vec<u32>,
}

impl Node {
    fn new() -> Self {
        Self { child: [NONE; 3], items: Vec::new() }
    }
}

pub(crate) struct SignTrie {
    coords: Vec<usize>,
    nodes: Vec<Node>,
}

#[inline]
fn slot(v: i64) -> usize {
    match v.signum() {
        -1 => 0,
        0 => 1,
        _ => 2,
    }
}

impl SignTrie {
    pub(crate) fn new(coords: Vec<usize>) -> Self {
        Self { coords, nodes: vec![Node::new()] }
    }

    pub(crate) fn insert(&mut self, id: u32, v: &[i64]) {
        let mut node = 0usize;
        for d in 0..self.coords.len() {
            let s = slot(v[self.coords[d]]);
            let next = self.nodes[node].child[s];
            node = if next == NONE {
                let fresh = self.nodes.len() as u32;
                self.nodes.push(Node::new());
                self.nodes[node].child[s] = fresh;
                fresh as usize
            } else {
                next as usize
            };
        }
        self.nodes[node].items.push(id);
    }

    /// Some stored vector `w` (with `accept(id)`) such that `w ⊑ s` on the
    /// trie coordinates.
    pub(crate) fn find_reducer<F>(&self, s: &[i64], store: &[Vec<i64>], accept: F) -> Option<u32>
    where
        F: Fn(u32) -> bool,
    {
        let depth = self.coords.len();
        let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
        while let Some((node, d)) = stack.pop() {
            let node_ref = &self.nodes[node as usize];
            if d == depth {
                for &id in &node_ref.items {
                    if !accept(id) {
                        continue;
                    }
                    let w = &store[id as usize];
                    if self.coords.iter().all(|&c| w[c].abs() <= s[c].abs()) {
                        return Some(id);
                    }
                }
                continue;
            }
            let sv = s[self.coords[d]];
            let zero = node_ref.child[1];
            if zero != NONE {
                stack.push((zero, d + 1));
            }
            if sv != 0 {
                let same = node_ref.child[slot(sv)];
                if same != NONE {
                    stack.push((same, d + 1));
                }
            }
        }
        None
    }
}
