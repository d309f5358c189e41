//! Face-width of graphs cellularly embedded in closed orientable surfaces.
//!
//! A loop in general position meets the graph only at vertices and crosses
//! faces, so it can be pushed onto the radial graph: one node per vertex and
//! per face, one edge per vertex-face corner. Face-width is half the length
//! of the shortest noncontractible radial cycle.

use std::collections::VecDeque;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_collect, Execution};
use crate::map::{Dart, Faces, RotationSystem};

/// On-disk map: arbitrary integer dart labels, per-vertex cyclic orders and
/// dart pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub rotations: Vec<Vec<i64>>,
    pub edges: Vec<[i64; 2]>,
}

impl MapFile {
    pub fn to_map(&self) -> Result<RotationSystem> {
        RotationSystem::from_labelled(&self.rotations, &self.edges).map(|(m, _)| m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceWidth {
    Finite(u64),
    /// Sphere: every loop bounds a disk.
    Infinite,
}

impl fmt::Display for FaceWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceWidth::Finite(w) => write!(f, "{w}"),
            FaceWidth::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for FaceWidth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FaceWidth::Finite(w) => s.serialize_u64(*w),
            FaceWidth::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Vertex-face incidence map. Nodes `0..V` are vertices of the base map,
/// `V..V+F` its faces. Radial edge `d` is the corner at the tail of base
/// dart `d`, between `d` and its rotation successor.
#[derive(Debug, Clone)]
pub struct RadialMap {
    map: RotationSystem,
    base_vertices: usize,
    faces: Faces,
}

impl RadialMap {
    pub fn new(base: &RotationSystem) -> Result<Self> {
        let base_faces = base.faces();
        let nv = base.num_vertices();
        let nd = base.num_darts();
        let corner_face = |d: Dart| base_faces.face_of[base.next(d)];

        let rotations: Vec<Vec<Dart>> = (0..nv)
            .map(|v| base.rotation(v).iter().map(|&d| 2 * d).collect())
            .collect();
        let around_faces: Vec<Vec<Dart>> = base_faces
            .cycles
            .iter()
            .map(|cycle| cycle.iter().map(|&x| 2 * base.twin(x) + 1).collect())
            .collect();
        for (f, corners) in around_faces.iter().enumerate() {
            debug_assert!(corners.iter().all(|&c| corner_face((c - 1) / 2) == f));
        }
        let pairs: Vec<(Dart, Dart)> = (0..nd).map(|d| (2 * d, 2 * d + 1)).collect();

        let build = |reverse: bool| -> Result<RotationSystem> {
            let mut rot = rotations.clone();
            for corners in &around_faces {
                let mut c = corners.clone();
                if reverse {
                    c.reverse();
                }
                rot.push(c);
            }
            RotationSystem::new(rot, &pairs)
        };
        let valid = |m: &RotationSystem| {
            let f = m.faces();
            f.len() == base.num_edges() && f.cycles.iter().all(|c| c.len() == 4)
        };
        let mut map = build(false)?;
        if !valid(&map) {
            map = build(true)?;
            if !valid(&map) {
                return Err(Error::InvalidMap("radial map is not a quadrangulation".into()));
            }
        }
        let faces = map.faces();
        Ok(RadialMap {
            map,
            base_vertices: nv,
            faces,
        })
    }

    pub fn map(&self) -> &RotationSystem {
        &self.map
    }

    pub fn is_base_vertex(&self, node: usize) -> bool {
        node < self.base_vertices
    }

    fn ends(&self, e: usize) -> (usize, usize) {
        (self.map.vertex(2 * e), self.map.vertex(2 * e + 1))
    }

    /// Euler characteristic of every piece left after cutting along the
    /// simple cycle formed by radial edges `cycle`.
    pub fn cut(&self, cycle: &[usize]) -> Result<Vec<i64>> {
        let m = &self.map;
        let ne = m.num_edges();
        let mut on = vec![false; ne];
        for &e in cycle {
            if e >= ne || on[e] {
                return Err(Error::InvalidMap(format!("cycle edge {e} missing or repeated")));
            }
            on[e] = true;
        }
        let mut cdarts: Vec<Vec<Dart>> = vec![Vec::new(); m.num_vertices()];
        for &e in cycle {
            for d in [2 * e, 2 * e + 1] {
                cdarts[m.vertex(d)].push(d);
            }
        }
        if cdarts.iter().any(|ds| !ds.is_empty() && ds.len() != 2) {
            return Err(Error::InvalidMap("edges do not form a simple cycle".into()));
        }

        let nf = self.faces.len();
        let mut uf = UnionFind::<usize>::new(nf);
        for e in 0..ne {
            if !on[e] {
                uf.union(self.faces.face_of[2 * e], self.faces.face_of[2 * e + 1]);
            }
        }
        let mut label = vec![usize::MAX; nf];
        let mut count = 0;
        for f in 0..nf {
            let r = uf.find(f);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            label[f] = label[r];
        }
        let comp = |f: usize| label[f];
        let mut chi = vec![0i64; count];
        for f in 0..nf {
            chi[comp(f)] += 1;
        }
        for e in 0..ne {
            let (l, r) = (self.faces.face_of[2 * e], self.faces.face_of[2 * e + 1]);
            if on[e] {
                chi[comp(l)] -= 1;
                chi[comp(r)] -= 1;
            } else {
                chi[comp(l)] -= 1;
            }
        }
        for v in 0..m.num_vertices() {
            match cdarts[v].as_slice() {
                [] => chi[comp(self.faces.face_of[m.rotation(v)[0]])] += 1,
                [p, q] => {
                    // one copy of v per wedge between the two cycle darts
                    chi[comp(self.faces.face_of[m.next(*p)])] += 1;
                    chi[comp(self.faces.face_of[m.next(*q)])] += 1;
                }
                _ => unreachable!(),
            }
        }
        Ok(chi)
    }

    /// A simple cycle is contractible iff cutting along it leaves a disk.
    pub fn is_contractible(&self, cycle: &[usize]) -> Result<bool> {
        Ok(self.cut(cycle)?.contains(&1))
    }

    /// Whether the cycle is a sum of face boundaries over Z/2.
    pub fn is_null_homologous(&self, cycle: &[usize]) -> bool {
        let ne = self.map.num_edges();
        let words = ne.div_ceil(64);
        let vector = |edges: &mut dyn Iterator<Item = usize>| {
            let mut v = vec![0u64; words];
            for e in edges {
                v[e / 64] ^= 1 << (e % 64);
            }
            v
        };
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let reduce = |mut v: Vec<u64>, basis: &[(usize, Vec<u64>)]| {
            for (pivot, b) in basis {
                if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                    v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
                }
            }
            v
        };
        for cyc in &self.faces.cycles {
            let v = reduce(vector(&mut cyc.iter().map(|&d| self.map.edge(d))), &basis);
            if let Some(pivot) = (0..ne).find(|&e| v[e / 64] >> (e % 64) & 1 == 1) {
                // keep the basis fully reduced on pivots
                for (_, b) in basis.iter_mut() {
                    if b[pivot / 64] >> (pivot % 64) & 1 == 1 {
                        b.iter_mut().zip(&v).for_each(|(x, y)| *x ^= y);
                    }
                }
                basis.push((pivot, v));
            }
        }
        reduce(vector(&mut cycle.iter().copied()), &basis)
            .iter()
            .all(|&w| w == 0)
    }

    /// Shortest noncontractible cycle among those whose two tree paths from
    /// `root` split at `root`.
    fn shortest_through(&self, root: usize) -> Option<Vec<usize>> {
        let m = &self.map;
        let n = m.num_vertices();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut branch = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &d in m.rotation(v) {
                let w = m.vertex(m.twin(d));
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = m.edge(d);
                    branch[w] = if v == root { w } else { branch[v] };
                    queue.push_back(w);
                }
            }
        }
        let mut candidates: Vec<(usize, usize)> = (0..m.num_edges())
            .filter_map(|e| {
                let (u, v) = self.ends(e);
                if dist[u] == usize::MAX || parent[u] == e || parent[v] == e {
                    return None;
                }
                let splits = u == root || v == root || branch[u] != branch[v];
                splits.then_some((dist[u] + dist[v] + 1, e))
            })
            .collect();
        candidates.sort_unstable();
        candidates.into_iter().find_map(|(_, e)| {
            let (u, v) = self.ends(e);
            let mut cycle = vec![e];
            for mut x in [u, v] {
                while x != root {
                    cycle.push(parent[x]);
                    let (a, b) = self.ends(parent[x]);
                    x = if a == x { b } else { a };
                }
            }
            match self.is_contractible(&cycle) {
                Ok(false) => Some(cycle),
                _ => None,
            }
        })
    }
}

/// Shortest noncontractible radial cycle as a list of radial edges, `None`
/// on the sphere.
pub fn shortest_noncontractible(
    base: &RotationSystem,
    exec: Execution,
) -> Result<Option<(RadialMap, Vec<usize>)>> {
    if base.genus()? == 0 {
        return Ok(None);
    }
    let radial = RadialMap::new(base)?;
    let roots: Vec<usize> = (0..base.num_vertices()).collect();
    let best = map_collect(&roots, exec, |&r| radial.shortest_through(r))
        .into_iter()
        .flatten()
        .min_by_key(Vec::len);
    match best {
        Some(cycle) => Ok(Some((radial, cycle))),
        None => Err(Error::InvalidMap(
            "no noncontractible cycle found on a surface of positive genus".into(),
        )),
    }
}

pub fn face_width(base: &RotationSystem, exec: Execution) -> Result<FaceWidth> {
    Ok(match shortest_noncontractible(base, exec)? {
        None => FaceWidth::Infinite,
        Some((_, cycle)) => FaceWidth::Finite(cycle.len() as u64 / 2),
    })
}

/// Toroidal `w × h` grid: vertex `(x, y)` is `y * w + x` with rotation
/// right, up, left, down.
pub fn toroidal_grid(w: usize, h: usize) -> Result<RotationSystem> {
    if w < 3 || h < 3 {
        return Err(Error::InvalidMap("toroidal grid needs both sides at least 3".into()));
    }
    let id = |x: usize, y: usize| (y % h) * w + (x % w);
    // darts of vertex v: 4v right, 4v+1 up, 4v+2 left, 4v+3 down
    let rotations = (0..w * h).map(|v| (4 * v..4 * v + 4).collect()).collect();
    let mut edges = Vec::with_capacity(2 * w * h);
    for y in 0..h {
        for x in 0..w {
            let v = id(x, y);
            edges.push((4 * v, 4 * id(x + 1, y) + 2));
            edges.push((4 * v + 1, 4 * id(x, y + 1) + 3));
        }
    }
    RotationSystem::new(rotations, &edges)
}
