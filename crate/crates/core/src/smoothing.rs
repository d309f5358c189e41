//! Smoothing a multicurve into an embedded 1-manifold.
//!
//! The chain surface is realized as the double of a sphere with g+1 holes
//! placed around a circle. Copies of `m_i` are concentric circles around hole
//! `i` on the front sheet; a copy of `l_j` is an arc on the front sheet that
//! leaves hole `j-1`, follows the circle and enters hole `j`, closed up by
//! its mirror on the back sheet. This fixes the cyclic order of crossings
//! along every copy:
//!
//! * copy of `l_j`: copies `1..a` of `m_{j-1}` (leaving), then copies `a..1`
//!   of `m_j` (arriving);
//! * copy of `m_i`: copies `1..b` of `l_{i+1}`, then copies `b..1` of `l_i`.
//!
//! Every crossing is resolved the same way relative to the surface: coming
//! along the longitude, turn left onto the meridian. With the longitudes
//! oriented as above and the meridians counter-clockwise, that is the
//! oriented resolution on the leaving side and the opposite one on the
//! arriving side.

use num_integer::Integer;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::piece::Page;
use crate::surface::{MultiCurve, SurfaceKind};

/// One parallel copy of a curve class (copies are 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CopyRef {
    pub class: usize,
    pub copy: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub longitude: CopyRef,
    pub meridian: CopyRef,
    /// Whether (longitude, meridian) is a positively oriented frame here.
    pub positive: bool,
    lon_path: usize,
    lon_pos: usize,
    mer_path: usize,
    mer_pos: usize,
}

/// All transverse crossings between parallel copies, with their cyclic order
/// along every copy.
#[derive(Debug, Clone)]
pub struct CrossingTable {
    crossings: Vec<Crossing>,
    longitude_paths: Vec<(CopyRef, Vec<usize>)>,
    meridian_paths: Vec<(CopyRef, Vec<usize>)>,
}

impl CrossingTable {
    pub fn build(mc: &MultiCurve) -> Self {
        match mc.surface().kind() {
            SurfaceKind::StandardTorus => Self::torus(mc.meridians()[0], mc.longitudes()[0]),
            SurfaceKind::Chain => Self::chain(mc),
        }
    }

    fn torus(a: u64, b: u64) -> Self {
        // square model: along either family the copies of the other come in order
        let mut crossings = Vec::with_capacity((a * b) as usize);
        for r in 0..b {
            for k in 0..a {
                crossings.push(Crossing {
                    longitude: CopyRef { class: 0, copy: r },
                    meridian: CopyRef { class: 0, copy: k },
                    positive: true,
                    lon_path: r as usize,
                    lon_pos: k as usize,
                    mer_path: k as usize,
                    mer_pos: r as usize,
                });
            }
        }
        let longitude_paths = (0..b)
            .map(|r| {
                let ids = (0..a).map(|k| (r * a + k) as usize).collect();
                (CopyRef { class: 0, copy: r }, ids)
            })
            .collect();
        let meridian_paths = (0..a)
            .map(|k| {
                let ids = (0..b).map(|r| (r * a + k) as usize).collect();
                (CopyRef { class: 0, copy: k }, ids)
            })
            .collect();
        CrossingTable {
            crossings,
            longitude_paths,
            meridian_paths,
        }
    }

    fn chain(mc: &MultiCurve) -> Self {
        let surface = mc.surface();
        let a = mc.meridians();
        let b = mc.longitudes();
        let n = surface.class_count();

        // block[j][end]: first crossing id of l_j with its leaving (0) or arriving (1) meridian
        let mut block = vec![[0usize; 2]; n];
        let mut total = 0usize;
        for j in 0..n {
            let (leave, arrive) = surface.meridians_of_longitude(j);
            block[j][0] = total;
            total += (b[j] * a[leave]) as usize;
            block[j][1] = total;
            total += (b[j] * a[arrive]) as usize;
        }
        let id = |j: usize, end: usize, r: u64, k: u64, ai: u64| block[j][end] + (r * ai + k) as usize;

        let mut crossings = vec![None; total];
        let mut longitude_paths = Vec::new();
        for j in 0..n {
            let (leave, arrive) = surface.meridians_of_longitude(j);
            for r in 0..b[j] {
                let path_idx = longitude_paths.len();
                let mut path = Vec::with_capacity((a[leave] + a[arrive]) as usize);
                let arriving = (0..a[arrive]).rev().map(|k| (1, arrive, k));
                for (end, i, k) in (0..a[leave]).map(|k| (0, leave, k)).chain(arriving) {
                    let x = id(j, end, r, k, a[i]);
                    crossings[x] = Some(Crossing {
                        longitude: CopyRef { class: j, copy: r },
                        meridian: CopyRef { class: i, copy: k },
                        positive: end == 0,
                        lon_path: path_idx,
                        lon_pos: path.len(),
                        mer_path: usize::MAX,
                        mer_pos: usize::MAX,
                    });
                    path.push(x);
                }
                longitude_paths.push((CopyRef { class: j, copy: r }, path));
            }
        }

        let mut meridian_paths = Vec::new();
        for i in 0..n {
            let (leaving, arriving) = surface.longitudes_of_meridian(i);
            for k in 0..a[i] {
                let path_idx = meridian_paths.len();
                let mut path = Vec::with_capacity((b[leaving] + b[arriving]) as usize);
                let first = (0..b[leaving]).map(|r| id(leaving, 0, r, k, a[i]));
                let second = (0..b[arriving]).rev().map(|r| id(arriving, 1, r, k, a[i]));
                for x in first.chain(second) {
                    let c = crossings[x].as_mut().expect("crossing created by its longitude");
                    debug_assert_eq!(c.meridian, CopyRef { class: i, copy: k });
                    c.mer_path = path_idx;
                    c.mer_pos = path.len();
                    path.push(x);
                }
                meridian_paths.push((CopyRef { class: i, copy: k }, path));
            }
        }

        CrossingTable {
            crossings: crossings.into_iter().map(|c| c.expect("all ids filled")).collect(),
            longitude_paths,
            meridian_paths,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Crossing ids along each longitude copy, in traversal order.
    pub fn longitude_paths(&self) -> &[(CopyRef, Vec<usize>)] {
        &self.longitude_paths
    }

    /// Crossing ids along each meridian copy, counter-clockwise.
    pub fn meridian_paths(&self) -> &[(CopyRef, Vec<usize>)] {
        &self.meridian_paths
    }

    /// Number of components after resolving every crossing.
    pub fn trace(&self) -> u64 {
        // strand t of a path runs from its t-th crossing to the next one
        let offsets = |paths: &[(CopyRef, Vec<usize>)], start: usize| {
            let mut acc = start;
            paths
                .iter()
                .map(|(_, p)| {
                    let o = acc;
                    acc += p.len();
                    o
                })
                .collect::<Vec<_>>()
        };
        let lon_off = offsets(&self.longitude_paths, 0);
        let lon_total: usize = self.longitude_paths.iter().map(|(_, p)| p.len()).sum();
        let mer_off = offsets(&self.meridian_paths, lon_total);
        let strands = lon_total + self.meridian_paths.iter().map(|(_, p)| p.len()).sum::<usize>();

        let mut uf = UnionFind::<usize>::new(strands);
        for c in &self.crossings {
            let lp = self.longitude_paths[c.lon_path].1.len();
            let mp = self.meridian_paths[c.mer_path].1.len();
            let l_in = lon_off[c.lon_path] + (c.lon_pos + lp - 1) % lp;
            let l_out = lon_off[c.lon_path] + c.lon_pos;
            let m_in = mer_off[c.mer_path] + (c.mer_pos + mp - 1) % mp;
            let m_out = mer_off[c.mer_path] + c.mer_pos;
            if c.positive {
                uf.union(l_in, m_out);
                uf.union(m_in, l_out);
            } else {
                uf.union(l_in, m_in);
                uf.union(l_out, m_out);
            }
        }
        let mut roots: Vec<usize> = (0..strands).map(|s| uf.find(s)).collect();
        roots.sort_unstable();
        roots.dedup();

        let free = self
            .longitude_paths
            .iter()
            .chain(&self.meridian_paths)
            .filter(|(_, p)| p.is_empty())
            .count();
        (roots.len() + free) as u64
    }
}

/// Number of connected components of the smoothed multicurve.
pub fn trace_components(mc: &MultiCurve) -> u64 {
    CrossingTable::build(mc).trace()
}

/// Component count of `p` meridians and `q` longitudes on a torus.
pub fn torus_components(p: u64, q: u64) -> u64 {
    p.gcd(&q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CutSide {
    AlongMeridians,
    AlongLongitudes,
}

/// Parallel arcs joining two distinct boundary circles of a planar piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcClass {
    pub a: usize,
    pub b: usize,
    pub mult: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub page: Option<Page>,
}

impl ArcClass {
    pub fn new(a: usize, b: usize, mult: u64) -> Self {
        ArcClass {
            a,
            b,
            mult,
            page: None,
        }
    }

    pub fn joins(&self, x: usize) -> bool {
        self.a == x || self.b == x
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSystem {
    pub piece: String,
    pub arcs: Vec<ArcClass>,
}

impl ArcSystem {
    /// Total multiplicity of arcs ending on circle `x`.
    pub fn incident(&self, x: usize) -> u64 {
        self.arcs
            .iter()
            .map(|c| c.mult * (u64::from(c.a == x) + u64::from(c.b == x)))
            .sum()
    }
}

/// Arc systems left on the two planar pieces after cutting along every
/// meridian (or every longitude). Both pieces carry the same system.
pub fn cut_pieces(mc: &MultiCurve, side: CutSide) -> Result<(ArcSystem, ArcSystem)> {
    let surface = mc.surface();
    if surface.kind() == SurfaceKind::StandardTorus {
        return Err(Error::Unsupported(
            "cutting the standard torus leaves annuli; use the torus bound directly".into(),
        ));
    }
    let n = surface.class_count();
    type Ends = Box<dyn Fn(usize) -> (usize, usize)>;
    let (coeffs, ends, label): (&[u64], Ends, &str) = match side {
        CutSide::AlongMeridians => (
            mc.longitudes(),
            Box::new(move |j| surface.meridians_of_longitude(j)),
            "F1",
        ),
        CutSide::AlongLongitudes => (
            mc.meridians(),
            Box::new(move |i| surface.longitudes_of_meridian(i)),
            "F2",
        ),
    };
    let mut arcs: Vec<ArcClass> = Vec::new();
    for c in 0..n {
        if coeffs[c] == 0 {
            continue;
        }
        let (x, y) = ends(c);
        let (lo, hi) = (x.min(y), x.max(y));
        // genus one: both classes join the same two circles of an annulus
        match arcs.iter_mut().find(|arc| arc.a == lo && arc.b == hi) {
            Some(arc) => arc.mult += coeffs[c],
            None => arcs.push(ArcClass::new(lo, hi, coeffs[c])),
        }
    }
    let plus = ArcSystem {
        piece: format!("{label}+"),
        arcs: arcs.clone(),
    };
    let minus = ArcSystem {
        piece: format!("{label}-"),
        arcs,
    };
    Ok((plus, minus))
}
