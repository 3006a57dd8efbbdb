/// Union–find over the vertices of `K_n`: edge `{i, j}` is present once the
/// transposition `(i j)` has rung.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoupledGraph {
    parent: Vec<usize>,
    rank: Vec<u8>,
    /// Component size, valid at roots.
    size: Vec<usize>,
    largest: usize,
    components: usize,
}

impl CoupledGraph {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            size: vec![1; n],
            largest: n.min(1),
            components: n,
        }
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            x = std::mem::replace(&mut self.parent[x], root);
        }
        root
    }

    /// Adds edge `{a, b}`; returns whether two components merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.rank[ra] < self.rank[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        if self.rank[ra] == self.rank[rb] {
            self.rank[ra] += 1;
        }
        self.size[ra] += self.size[rb];
        self.largest = self.largest.max(self.size[ra]);
        self.components -= 1;
        true
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn component_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    /// Sizes of all components, largest first.
    pub fn component_sizes(&mut self) -> Vec<usize> {
        let roots: Vec<usize> = (0..self.n()).filter(|&v| self.find(v) == v).collect();
        let mut sizes: Vec<usize> = roots.into_iter().map(|v| self.size[v]).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Size of the largest component.
pub fn largest_component(graph: &CoupledGraph) -> usize {
    graph.largest
}
