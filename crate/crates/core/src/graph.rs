//! Small undirected graphs on band elements with component labelling.

use serde::Serialize;

#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so labels follow vertex order
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// A simple graph whose vertices are band elements. Adjacency is stored over
/// local (class) indices; components are listed in order of their least
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleGraph {
    vertices: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Builds the graph from its sorted vertex list and the local edge pairs.
    pub fn new(vertices: Vec<usize>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let k = vertices.len();
        let mut adjacency = vec![Vec::new(); k];
        let mut uf = UnionFind::new(k);
        for (a, b) in edges {
            if a != b && !adjacency[a].contains(&b) {
                adjacency[a].push(b);
                adjacency[b].push(a);
                uf.union(a, b);
            }
        }
        adjacency.iter_mut().for_each(|adj| adj.sort_unstable());
        let mut label = vec![usize::MAX; k];
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut component_of = vec![0; k];
        for v in 0..k {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = components.len();
                components.push(Vec::new());
            }
            component_of[v] = label[r];
            components[label[r]].push(vertices[v]);
        }
        Self { vertices, adjacency, component_of, components }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn local_index(&self, element: usize) -> Option<usize> {
        self.vertices.binary_search(&element).ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, adj) in self.adjacency.iter().enumerate() {
            for &b in adj {
                if a < b {
                    out.push((self.vertices[a], self.vertices[b]));
                }
            }
        }
        out
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    /// Component index of a band element, if it is a vertex.
    pub fn component_of(&self, element: usize) -> Option<usize> {
        self.local_index(element).map(|i| self.component_of[i])
    }

    pub fn to_dot(&self, name: &str, names: &[String]) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for &v in &self.vertices {
            s.push_str(&format!("  v{v} [label=\"{}\"];\n", names[v]));
        }
        for (a, b) in self.edges() {
            s.push_str(&format!("  v{a} -- v{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}
