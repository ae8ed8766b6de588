use alloc::vec::Vec;

use super::AllotmentStructure;

/// Graph on the players; `i` and `j` are adjacent iff their sets intersect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    k: usize,
    edges: Vec<(usize, usize)>,
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
}

impl IntersectionGraph {
    pub fn of(structure: &AllotmentStructure) -> Self {
        let k = structure.k();
        let mut edges = Vec::new();
        let mut dsu = DisjointSets::new(k);
        for i in 0..k {
            for j in i + 1..k {
                if intersects(structure.set(i), structure.set(j)) {
                    edges.push((i, j));
                    dsu.union(i, j);
                }
            }
        }

        // Components ordered by their smallest player, members ascending.
        let mut component_of = alloc::vec![usize::MAX; k];
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut root_slot: Vec<Option<usize>> = alloc::vec![None; k];
        for (player, slot_of) in component_of.iter_mut().enumerate() {
            let root = dsu.find(player);
            let slot = *root_slot[root].get_or_insert_with(|| {
                components.push(Vec::new());
                components.len() - 1
            });
            components[slot].push(player);
            *slot_of = slot;
        }

        Self {
            k,
            edges,
            components,
            component_of,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    /// Edges `(i, j)` with `i < j`, 0-based players.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).is_ok()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// `r`, the number of connected components.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, player: usize) -> usize {
        self.component_of[player]
    }

    /// Smallest player in `player`'s component.
    pub fn leader_of(&self, player: usize) -> usize {
        self.components[self.component_of[player]][0]
    }

    pub fn is_leader(&self, player: usize) -> bool {
        self.leader_of(player) == player
    }
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return true,
        }
    }
    false
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: alloc::vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
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
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            core::cmp::Ordering::Less => self.parent[ra] = rb,
            core::cmp::Ordering::Greater => self.parent[rb] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}
