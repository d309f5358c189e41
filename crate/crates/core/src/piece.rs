//! Planar pieces: spheres with `k` holes carrying parallel classes of
//! properly embedded arcs, and the minimum number of arc crossings of an
//! essential loop or an essential arc.
//!
//! Holes are placed on a spine circle and every arc class is drawn as a chord
//! on one of two pages (inside or outside the spine). Contracting each hole to
//! a vertex and adding weight-0 spine edges gives a plane map whose dual
//! cycles are exactly the curves we minimize over.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{Dart, RotationSystem};
use crate::smoothing::{ArcClass, ArcSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Page {
    In,
    Out,
}

impl Page {
    fn flip(self) -> Page {
        match self {
            Page::In => Page::Out,
            Page::Out => Page::In,
        }
    }
}

/// Largest piece accepted; loop minima enumerate subsets of holes.
pub const MAX_CIRCLES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPiece")]
pub struct PlanarPiece {
    piece: String,
    circles: usize,
    arcs: Vec<ArcClass>,
}

#[derive(Deserialize)]
struct RawPiece {
    piece: String,
    circles: usize,
    arcs: Vec<ArcClass>,
}

impl TryFrom<RawPiece> for PlanarPiece {
    type Error = Error;

    fn try_from(raw: RawPiece) -> Result<Self> {
        PlanarPiece::new(raw.piece, raw.circles, raw.arcs)
    }
}

/// A plane map built from a piece, with a crossing weight per edge.
#[derive(Debug, Clone)]
pub struct WeightedMap {
    pub map: RotationSystem,
    pub weight: Vec<u64>,
    /// Vertices that stand for a hole (as opposed to slots of a blown-up hole).
    pub puncture: Vec<bool>,
    /// Face made of gap edges only, when a hole has been blown up.
    pub hole_face: Option<usize>,
}

impl PlanarPiece {
    /// Validates the arcs, merges repeated classes and assigns every class a
    /// page. Pages given in the input are kept; the rest are chosen greedily.
    pub fn new(piece: impl Into<String>, circles: usize, arcs: Vec<ArcClass>) -> Result<Self> {
        let piece = piece.into();
        if circles == 0 {
            return Err(Error::InvalidPiece(format!("{piece}: no boundary circles")));
        }
        if circles > MAX_CIRCLES {
            return Err(Error::InvalidPiece(format!(
                "{piece}: {circles} circles exceeds the limit of {MAX_CIRCLES}"
            )));
        }
        let mut merged: Vec<ArcClass> = Vec::new();
        for arc in arcs {
            if arc.a >= circles || arc.b >= circles {
                return Err(Error::InvalidPiece(format!(
                    "{piece}: arc ({}, {}) names a circle outside 0..{circles}",
                    arc.a, arc.b
                )));
            }
            if arc.a == arc.b {
                return Err(Error::InvalidPiece(format!(
                    "{piece}: arc with both ends on circle {}",
                    arc.a
                )));
            }
            if arc.mult == 0 {
                continue;
            }
            let (a, b) = (arc.a.min(arc.b), arc.a.max(arc.b));
            match merged.iter_mut().find(|m| m.a == a && m.b == b) {
                Some(m) => {
                    if arc.page.is_some() && m.page.is_some() && arc.page != m.page {
                        return Err(Error::InvalidPiece(format!(
                            "{piece}: class ({a}, {b}) given on both pages"
                        )));
                    }
                    m.mult += arc.mult;
                    m.page = m.page.or(arc.page);
                }
                None => merged.push(ArcClass {
                    a,
                    b,
                    mult: arc.mult,
                    page: arc.page,
                }),
            }
        }
        assign_pages(&piece, circles, &mut merged)?;
        let out = PlanarPiece {
            piece,
            circles,
            arcs: merged,
        };
        if circles >= 2 {
            out.augmented()?;
        }
        Ok(out)
    }

    pub fn from_arc_system(system: &ArcSystem, circles: usize) -> Result<Self> {
        PlanarPiece::new(system.piece.clone(), circles, system.arcs.clone())
    }

    pub fn id(&self) -> &str {
        &self.piece
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    /// Arc classes after merging, each with its page.
    pub fn arcs(&self) -> &[ArcClass] {
        &self.arcs
    }

    /// Total multiplicity of arcs ending on circle `x`.
    pub fn incident(&self, x: usize) -> u64 {
        self.arcs
            .iter()
            .filter(|c| c.joins(x))
            .map(|c| c.mult)
            .sum()
    }

    /// Holes contracted to vertices, chords on their pages, plus weight-0
    /// spine edges `(v, v+1)`. Edge `e < arcs().len()` is arc class `e`.
    pub fn augmented(&self) -> Result<WeightedMap> {
        let k = self.circles;
        if k < 2 {
            return Err(Error::InvalidPiece(format!("{}: fewer than two circles", self.piece)));
        }
        let m = self.arcs.len();
        let mut ends: Vec<(usize, usize)> = self.arcs.iter().map(|c| (c.a, c.b)).collect();
        ends.extend((0..k).map(|v| (v, (v + 1) % k)));
        let mut weight: Vec<u64> = self.arcs.iter().map(|c| c.mult).collect();
        weight.resize(m + k, 0);

        let dart_at = |e: usize, v: usize| if ends[e].0 == v { 2 * e } else { 2 * e + 1 };
        let mut rotations = Vec::with_capacity(k);
        for v in 0..k {
            let offset = |c: &ArcClass| {
                let w = if c.a == v { c.b } else { c.a };
                (w + k - v) % k
            };
            let mut inner: Vec<usize> = (0..m)
                .filter(|&e| self.arcs[e].joins(v) && self.arcs[e].page == Some(Page::In))
                .collect();
            inner.sort_by_key(|&e| offset(&self.arcs[e]));
            let mut outer: Vec<usize> = (0..m)
                .filter(|&e| self.arcs[e].joins(v) && self.arcs[e].page == Some(Page::Out))
                .collect();
            outer.sort_by_key(|&e| Reverse(offset(&self.arcs[e])));

            let mut rot: Vec<Dart> = inner.iter().map(|&e| dart_at(e, v)).collect();
            rot.push(dart_at(m + (v + k - 1) % k, v));
            rot.extend(outer.iter().map(|&e| dart_at(e, v)));
            rot.push(dart_at(m + v, v));
            rotations.push(rot);
        }
        let pairs: Vec<(Dart, Dart)> = (0..m + k).map(|e| (2 * e, 2 * e + 1)).collect();
        let map = RotationSystem::new(rotations, &pairs)?;
        if map.genus()? != 0 {
            return Err(Error::InvalidPiece(format!(
                "{}: page assignment does not give a plane drawing",
                self.piece
            )));
        }
        Ok(WeightedMap {
            map,
            weight,
            puncture: vec![true; k],
            hole_face: None,
        })
    }

    /// The augmented map with hole `b` replaced by a cycle of slots, one per
    /// dart at `b`, joined by weight-0 gap edges. The gap edges bound a new
    /// face standing for the hole itself.
    pub fn blown_up(&self, b: usize) -> Result<WeightedMap> {
        if b >= self.circles {
            return Err(Error::InvalidPiece(format!(
                "{}: no circle {b} (0..{})",
                self.piece, self.circles
            )));
        }
        let base = self.augmented()?;
        let g = &base.map;
        let around: Vec<Dart> = g.rotation(b).to_vec();
        let d = around.len();
        let nd = g.num_darts();
        let ne = g.num_edges();
        // vertices: old ones except b keep their index, b becomes slot 0,
        // further slots are appended
        let slot_vertex = |i: usize| if i == 0 { b } else { g.num_vertices() + i - 1 };
        // gap edge i joins slot i to slot i+1: dart nd+2i at slot i, nd+2i+1 at slot i+1
        let mut rotations: Vec<Vec<Dart>> = (0..g.num_vertices()).map(|v| g.rotation(v).to_vec()).collect();
        rotations.resize(g.num_vertices() + d - 1, Vec::new());
        for (i, &dart) in around.iter().enumerate() {
            let prev = (i + d - 1) % d;
            rotations[slot_vertex(i)] = vec![dart, nd + 2 * i, nd + 2 * prev + 1];
        }
        let mut pairs: Vec<(Dart, Dart)> = (0..ne).map(|e| (2 * e, 2 * e + 1)).collect();
        pairs.extend((0..d).map(|i| (nd + 2 * i, nd + 2 * i + 1)));
        let map = RotationSystem::new(rotations, &pairs)?;
        let mut weight = base.weight;
        weight.resize(ne + d, 0);
        let mut puncture = base.puncture;
        puncture[b] = false;
        puncture.resize(map.num_vertices(), false);

        let faces = map.faces();
        let holes: Vec<usize> = (0..faces.len())
            .filter(|&f| faces.cycles[f].iter().all(|&x| x >= nd))
            .collect();
        debug_assert_eq!(map.genus().ok(), Some(0));
        match holes.as_slice() {
            [f] => Ok(WeightedMap {
                map,
                weight,
                puncture,
                hole_face: Some(*f),
            }),
            _ => Err(Error::InvalidPiece(format!(
                "{}: blowing up circle {b} did not leave a single hole face",
                self.piece
            ))),
        }
    }

    /// Fewest arc crossings of a loop that separates the holes into two
    /// nonempty groups. `None` when there is only one hole.
    pub fn min_essential_loop(&self) -> Option<u64> {
        let k = self.circles;
        if k < 2 {
            return None;
        }
        // a set of holes and its complement give the same cut; keep hole k-1 outside
        (1..(1u32 << (k - 1)))
            .map(|s| {
                self.arcs
                    .iter()
                    .filter(|c| (s >> c.a) & 1 != (s >> c.b) & 1)
                    .map(|c| c.mult)
                    .sum()
            })
            .min()
    }

    /// Fewest arc crossings of an arc from hole `b` back to itself that
    /// separates the other holes into two nonempty groups. `None` when there
    /// are fewer than two other holes.
    pub fn min_essential_arc_at(&self, b: usize) -> Result<Option<u64>> {
        if self.circles < 3 {
            return Ok(None);
        }
        let h = self.blown_up(b)?;
        let g = &h.map;
        let faces = g.faces();
        let hole = h.hole_face.expect("blown-up map has a hole face");

        // shortest crossing distance from the hole face to every face
        let nf = faces.len();
        let mut dist = vec![u64::MAX; nf];
        let mut tree_edge = vec![false; g.num_edges()];
        let mut parent_edge = vec![usize::MAX; nf];
        let mut heap = BinaryHeap::new();
        dist[hole] = 0;
        heap.push(Reverse((0u64, hole)));
        let mut done = vec![false; nf];
        while let Some(Reverse((du, f))) = heap.pop() {
            if done[f] {
                continue;
            }
            done[f] = true;
            if parent_edge[f] != usize::MAX {
                tree_edge[parent_edge[f]] = true;
            }
            for &x in &faces.cycles[f] {
                let e = g.edge(x);
                let other = faces.face_of[g.twin(x)];
                let nd = du + h.weight[e];
                if !done[other] && nd < dist[other] {
                    dist[other] = nd;
                    parent_edge[other] = e;
                    heap.push(Reverse((nd, other)));
                }
            }
        }

        // primal cotree: a spanning tree of the map
        let nv = g.num_vertices();
        let edge_darts = g.edge_darts();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        for (e, &x) in edge_darts.iter().enumerate() {
            if !tree_edge[e] {
                let (u, v) = (g.vertex(x), g.vertex(g.twin(x)));
                adj[u].push((v, e));
                adj[v].push((u, e));
            }
        }
        let root = (0..nv).find(|&v| h.puncture[v]).expect("another hole exists");
        let mut order = Vec::with_capacity(nv);
        let mut parent = vec![(usize::MAX, usize::MAX); nv];
        let mut seen = vec![false; nv];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = (v, e);
                    queue.push_back(w);
                }
            }
        }
        debug_assert_eq!(order.len(), nv, "cotree spans the map");
        let total = h.puncture.iter().filter(|&&p| p).count();
        let mut below = vec![0usize; nv];
        for &v in order.iter().rev() {
            below[v] += usize::from(h.puncture[v]);
            if parent[v].0 != usize::MAX {
                below[parent[v].0] += below[v];
            }
        }

        let best = order
            .iter()
            .filter(|&&v| parent[v].0 != usize::MAX)
            .filter(|&&v| below[v] > 0 && below[v] < total)
            .map(|&v| {
                let e = parent[v].1;
                let x = edge_darts[e];
                dist[faces.face_of[x]] + h.weight[e] + dist[faces.face_of[g.twin(x)]]
            })
            .min();
        Ok(best)
    }

    /// Minimum of [`Self::min_essential_arc_at`] over all holes.
    pub fn min_essential_arc(&self) -> Option<u64> {
        (0..self.circles)
            .filter_map(|b| self.min_essential_arc_at(b).expect("piece validated on construction"))
            .min()
    }
}

fn between(x: usize, a: usize, b: usize, k: usize) -> bool {
    let off = (x + k - a) % k;
    off > 0 && off < (b + k - a) % k
}

fn conflict(p: &ArcClass, q: &ArcClass, k: usize) -> bool {
    if p.joins(q.a) || p.joins(q.b) {
        return false;
    }
    between(q.a, p.a, p.b, k) != between(q.b, p.a, p.b, k)
}

fn assign_pages(piece: &str, k: usize, arcs: &mut [ArcClass]) -> Result<()> {
    let n = arcs.len();
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| arcs[i].page.is_some()).collect();
    loop {
        while let Some(i) = queue.pop_front() {
            let page = arcs[i].page.expect("queued arcs have a page");
            for j in 0..n {
                if j == i || !conflict(&arcs[i], &arcs[j], k) {
                    continue;
                }
                match arcs[j].page {
                    Some(p) if p == page => {
                        return Err(Error::InvalidPiece(format!(
                            "{piece}: arcs ({}, {}) and ({}, {}) cross on the same page",
                            arcs[i].a, arcs[i].b, arcs[j].a, arcs[j].b
                        )));
                    }
                    Some(_) => {}
                    None => {
                        arcs[j].page = Some(page.flip());
                        queue.push_back(j);
                    }
                }
            }
        }
        match (0..n).find(|&i| arcs[i].page.is_none()) {
            Some(i) => {
                arcs[i].page = Some(Page::In);
                queue.push_back(i);
            }
            None => return Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn piece(k: usize, arcs: &[(usize, usize, u64)]) -> PlanarPiece {
        let arcs = arcs.iter().map(|&(a, b, m)| ArcClass::new(a, b, m)).collect();
        PlanarPiece::new("P", k, arcs).unwrap()
    }

    #[test]
    fn knot_pieces() {
        let f1 = piece(3, &[(0, 2, 2), (0, 1, 2), (1, 2, 2)]);
        assert_eq!(f1.min_essential_loop(), Some(4));
        assert_eq!(f1.min_essential_arc(), Some(2));
        let f2 = piece(3, &[(0, 1, 5), (1, 2, 4), (0, 2, 2)]);
        assert_eq!(f2.min_essential_loop(), Some(6));
        assert_eq!(f2.min_essential_arc(), Some(2));
        assert_eq!(f2.min_essential_arc_at(0).unwrap(), Some(4));
    }

    #[test]
    fn annulus_has_no_essential_arc() {
        let a = piece(2, &[(0, 1, 7)]);
        assert_eq!(a.min_essential_loop(), Some(7));
        assert_eq!(a.min_essential_arc(), None);
    }

    #[test]
    fn single_hole() {
        let d = piece(1, &[]);
        assert_eq!(d.min_essential_loop(), None);
        assert_eq!(d.min_essential_arc(), None);
    }

    #[test]
    fn disconnected_arcs_give_zero_loop() {
        let p = piece(4, &[(0, 1, 3), (2, 3, 3)]);
        assert_eq!(p.min_essential_loop(), Some(0));
        assert_eq!(p.min_essential_arc(), Some(0));
    }

    #[test]
    fn crossing_chords_use_both_pages() {
        let p = piece(4, &[(0, 2, 1), (1, 3, 1)]);
        assert_ne!(p.arcs()[0].page, p.arcs()[1].page);
        let bad = PlanarPiece::new(
            "P",
            4,
            vec![
                ArcClass { page: Some(Page::In), ..ArcClass::new(0, 2, 1) },
                ArcClass { page: Some(Page::In), ..ArcClass::new(1, 3, 1) },
            ],
        );
        assert!(matches!(bad, Err(Error::InvalidPiece(_))));
    }

    #[test]
    fn three_mutually_crossing_chords_rejected() {
        let arcs = vec![ArcClass::new(0, 3, 1), ArcClass::new(1, 4, 1), ArcClass::new(2, 5, 1)];
        assert!(PlanarPiece::new("P", 6, arcs).is_err());
    }

    #[test]
    fn duplicates_merge_and_bad_arcs_rejected() {
        let p = piece(2, &[(0, 1, 2), (1, 0, 3)]);
        assert_eq!(p.arcs().len(), 1);
        assert_eq!(p.arcs()[0].mult, 5);
        assert!(PlanarPiece::new("P", 2, vec![ArcClass::new(1, 1, 1)]).is_err());
        assert!(PlanarPiece::new("P", 2, vec![ArcClass::new(0, 2, 1)]).is_err());
        assert!(PlanarPiece::new("P", 0, vec![]).is_err());
    }

    #[test]
    fn blown_up_map_is_plane_with_one_hole() {
        let p = piece(4, &[(0, 2, 1), (1, 3, 2), (0, 1, 3)]);
        for b in 0..4 {
            let h = p.blown_up(b).unwrap();
            assert_eq!(h.map.genus().unwrap(), 0);
            assert!(h.hole_face.is_some());
        }
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"piece":"F1+","circles":3,"arcs":[{"a":0,"b":2,"mult":2},{"a":1,"b":0,"mult":2,"page":"out"}]}"#;
        let p: PlanarPiece = serde_json::from_str(json).unwrap();
        assert_eq!(p.arcs()[1].a, 0);
        assert_eq!(p.arcs()[1].page, Some(Page::Out));
        let back: PlanarPiece = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
