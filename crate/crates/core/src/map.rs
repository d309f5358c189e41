//! Combinatorial maps: graphs embedded in closed orientable surfaces, given
//! by a rotation (cyclic dart order at each vertex) and an edge involution.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

pub type Dart = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    next: Vec<Dart>,
    twin: Vec<Dart>,
    vertex: Vec<usize>,
    edge: Vec<usize>,
    rotations: Vec<Vec<Dart>>,
}

/// Face structure of a map: orbits of `next ∘ twin`.
#[derive(Debug, Clone)]
pub struct Faces {
    pub face_of: Vec<usize>,
    pub cycles: Vec<Vec<Dart>>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

impl RotationSystem {
    /// Darts must be exactly `0..n`, each appearing in one rotation and one edge.
    pub fn new(rotations: Vec<Vec<Dart>>, edges: &[(Dart, Dart)]) -> Result<Self> {
        let n: usize = rotations.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(Error::InvalidMap("map has no darts".into()));
        }
        let mut next = vec![usize::MAX; n];
        let mut vertex = vec![usize::MAX; n];
        for (v, rot) in rotations.iter().enumerate() {
            for (k, &d) in rot.iter().enumerate() {
                if d >= n {
                    return Err(Error::InvalidMap(format!("dart {d} out of range 0..{n}")));
                }
                if vertex[d] != usize::MAX {
                    return Err(Error::InvalidMap(format!("dart {d} appears in two rotations")));
                }
                vertex[d] = v;
                next[d] = rot[(k + 1) % rot.len()];
            }
        }
        if let Some(v) = rotations.iter().position(Vec::is_empty) {
            return Err(Error::InvalidMap(format!("vertex {v} has an empty rotation")));
        }
        let mut twin = vec![usize::MAX; n];
        let mut edge = vec![usize::MAX; n];
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidMap(format!("edge ({a}, {b}) uses an unknown dart")));
            }
            if a == b {
                return Err(Error::InvalidMap(format!("dart {a} paired with itself")));
            }
            if twin[a] != usize::MAX || twin[b] != usize::MAX {
                return Err(Error::InvalidMap(format!("edge ({a}, {b}) reuses a dart")));
            }
            twin[a] = b;
            twin[b] = a;
            edge[a] = e;
            edge[b] = e;
        }
        if let Some(d) = twin.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidMap(format!("dart {d} is not in any edge")));
        }
        Ok(RotationSystem {
            next,
            twin,
            vertex,
            edge,
            rotations,
        })
    }

    /// Builds a map from arbitrary integer dart labels. Returns the map and
    /// the label of every internal dart.
    pub fn from_labelled(rotations: &[Vec<i64>], edges: &[[i64; 2]]) -> Result<(Self, Vec<i64>)> {
        let mut index: HashMap<i64, Dart> = HashMap::new();
        let mut labels = Vec::new();
        let mut rots = Vec::with_capacity(rotations.len());
        for rot in rotations {
            let mut r = Vec::with_capacity(rot.len());
            for &label in rot {
                if index.contains_key(&label) {
                    return Err(Error::InvalidMap(format!("dart {label} appears twice")));
                }
                index.insert(label, labels.len());
                r.push(labels.len());
                labels.push(label);
            }
            rots.push(r);
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for &[a, b] in edges {
            let lookup = |x: i64| {
                index
                    .get(&x)
                    .copied()
                    .ok_or_else(|| Error::InvalidMap(format!("edge dart {x} is in no rotation")))
            };
            pairs.push((lookup(a)?, lookup(b)?));
        }
        Ok((RotationSystem::new(rots, &pairs)?, labels))
    }

    pub fn num_darts(&self) -> usize {
        self.next.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.next.len() / 2
    }

    /// Next dart counter-clockwise around the same vertex.
    pub fn next(&self, d: Dart) -> Dart {
        self.next[d]
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.twin[d]
    }

    pub fn vertex(&self, d: Dart) -> usize {
        self.vertex[d]
    }

    /// Index of the edge containing `d`, in the order the edges were given.
    pub fn edge(&self, d: Dart) -> usize {
        self.edge[d]
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotations[v]
    }

    /// One dart per edge, in edge order.
    pub fn edge_darts(&self) -> Vec<Dart> {
        let mut out = vec![usize::MAX; self.num_edges()];
        for d in 0..self.num_darts() {
            let e = self.edge[d];
            if out[e] == usize::MAX {
                out[e] = d;
            }
        }
        out
    }

    pub fn faces(&self) -> Faces {
        let n = self.num_darts();
        let mut face_of = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                cycle.push(d);
                d = self.next[self.twin[d]];
                if d == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        Faces { face_of, cycles }
    }

    pub fn is_connected(&self) -> bool {
        let nv = self.num_vertices();
        let mut seen = vec![false; nv];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &d in &self.rotations[v] {
                let w = self.vertex[self.twin[d]];
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.faces().len() as i64
    }

    /// Genus of the closed orientable surface the map is cellularly embedded in.
    pub fn genus(&self) -> Result<u32> {
        if !self.is_connected() {
            return Err(Error::InvalidMap("map is disconnected".into()));
        }
        let chi = self.euler_characteristic();
        debug_assert!(chi <= 2 && (2 - chi) % 2 == 0);
        Ok(((2 - chi) / 2) as u32)
    }
}
