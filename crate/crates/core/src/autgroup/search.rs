//! Individualisation–refinement search for automorphism group generators.

use super::partition::Partition;
use super::perm::Permutation;
use crate::graph::Graph;

pub(crate) struct SearchOutput {
    pub generators: Vec<Permutation>,
    pub base: Vec<usize>,
    /// Sizes of the orbits of the base points found level by level.
    pub orbit_sizes: Vec<usize>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
    }

    pub fn size_of(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    pub fn absorb(&mut self, g: &Permutation) {
        for x in 0..g.degree() {
            self.union(x, g.apply(x));
        }
    }
}

/// Root partition: colour classes refined to equitability.
pub(crate) fn root_partition(graph: &Graph, colors: Option<&[usize]>) -> Partition {
    let mut p = match colors {
        Some(c) => Partition::from_colors(c),
        None => Partition::unit(graph.order()),
    };
    p.refine_all(graph);
    p
}

/// Leftmost path: individualise the least vertex of each target cell.
pub(crate) fn first_path(graph: &Graph, root: Partition) -> (Vec<Partition>, Vec<usize>) {
    let mut path = vec![root];
    let mut base = Vec::new();
    loop {
        let p = path.last().expect("nonempty path");
        let Some(t) = p.target_cell() else { break };
        let b = *p.cell(t).iter().min().expect("nonempty cell");
        let q = p.individualize(b, graph);
        base.push(b);
        path.push(q);
    }
    (path, base)
}

pub(crate) fn search(graph: &Graph, colors: Option<&[usize]>) -> SearchOutput {
    let n = graph.order();
    let (path, base) = first_path(graph, root_partition(graph, colors));
    let leaf = path.last().expect("nonempty path");
    let mut generators = Vec::new();
    let mut orbits = UnionFind::new(n);
    let mut orbit_sizes = vec![1; base.len()];
    for level in (0..base.len()).rev() {
        let node = &path[level];
        let t = node.target_cell().expect("non-discrete node");
        let mut cell: Vec<usize> = node.cell(t).to_vec();
        cell.sort_unstable();
        for &v in &cell {
            if orbits.find(v) == orbits.find(base[level]) {
                continue;
            }
            let child = node.individualize(v, graph);
            if !child.same_shape(&path[level + 1]) {
                continue;
            }
            if let Some(g) = descend(graph, &path, leaf, child, level + 1) {
                orbits.absorb(&g);
                generators.push(g);
            }
        }
        orbit_sizes[level] = orbits.size_of(base[level]);
    }
    SearchOutput {
        generators,
        base,
        orbit_sizes,
    }
}

fn descend(
    graph: &Graph,
    path: &[Partition],
    leaf: &Partition,
    node: Partition,
    depth: usize,
) -> Option<Permutation> {
    if node.is_discrete() {
        let mut images = vec![0; graph.order()];
        for (&a, &b) in leaf.elems().iter().zip(node.elems()) {
            images[a] = b;
        }
        return graph
            .is_automorphism(&images)
            .then(|| Permutation::from_images_unchecked(images));
    }
    let t = node.target_cell().expect("non-discrete node");
    let mut cell: Vec<usize> = node.cell(t).to_vec();
    cell.sort_unstable();
    for w in cell {
        let child = node.individualize(w, graph);
        if child.same_shape(&path[depth + 1]) {
            if let Some(g) = descend(graph, path, leaf, child, depth + 1) {
                return Some(g);
            }
        }
    }
    None
}
