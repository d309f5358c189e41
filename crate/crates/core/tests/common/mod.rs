//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use rand::Rng;
use surfrep::map::{Dart, RotationSystem};
use surfrep::piece::{PlanarPiece, WeightedMap};
use surfrep::smoothing::ArcClass;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    // subtractive form, deliberately unlike the library's
    while a != 0 && b != 0 {
        if a >= b {
            a -= b;
        } else {
            b -= a;
        }
    }
    a + b
}

/// Components of `a` meridians and `b` longitudes on a torus, smoothed: the
/// strands are the orbits of `x -> x + a (mod a + b)`.
pub fn torus_components(a: u64, b: u64) -> u64 {
    let n = a + b;
    if a == 0 || b == 0 {
        return n;
    }
    let mut seen = vec![false; n as usize];
    let mut orbits = 0;
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        orbits += 1;
        let mut x = s;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = (x + a) % n;
        }
    }
    orbits
}

/// Boundary counts on the chain surface from its intersection cycle
/// `m_0 - l_1 - m_1 - l_2 - ... - m_g - l_0 - m_0`.
pub fn chain_counts(a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let n = a.len();
    // walk the cycle: position 2i is m_i, position 2i+1 is l_{i+1}
    let node = |p: usize| -> (bool, usize) {
        let p = p % (2 * n);
        if p.is_multiple_of(2) { (true, p / 2) } else { (false, (p / 2 + 1) % n) }
    };
    let coeff = |(is_m, i): (bool, usize)| if is_m { a[i] } else { b[i] };
    let mut m = vec![0; n];
    let mut l = vec![0; n];
    for p in 0..2 * n {
        let here = node(p);
        let around = coeff(node(p + 1)) + coeff(node(p + 2 * n - 1));
        match here {
            (true, i) => m[i] = around,
            (false, j) => l[j] = around,
        }
    }
    (m, l)
}

fn dual(wm: &WeightedMap) -> (Vec<usize>, Vec<(usize, usize, u64)>) {
    let faces = wm.map.faces();
    let darts = wm.map.edge_darts();
    let edges = darts
        .iter()
        .enumerate()
        .map(|(e, &d)| (faces.face_of[d], faces.face_of[wm.map.twin(d)], wm.weight[e]))
        .collect();
    (faces.face_of, edges)
}

/// All simple cycles of a multigraph given as an edge list, each as a list of
/// edge ids. Loops and pairs of parallel edges count.
pub fn simple_cycles(nodes: usize, edges: &[(usize, usize, u64)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); nodes];
    for (e, &(u, v, _)) in edges.iter().enumerate() {
        adj[u].push((v, e));
        if u != v {
            adj[v].push((u, e));
        }
    }
    let mut out = Vec::new();
    for (e, &(u, v, _)) in edges.iter().enumerate() {
        if u == v {
            out.push(vec![e]);
        }
    }
    fn dfs(
        s: usize,
        v: usize,
        adj: &[Vec<(usize, usize)>],
        on: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for &(w, e) in &adj[v] {
            if path.contains(&e) || w == v {
                continue;
            }
            if w == s {
                out.push(path.iter().copied().chain([e]).collect());
            } else if w > s && !on[w] {
                on[w] = true;
                path.push(e);
                dfs(s, w, adj, on, path, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    for s in 0..nodes {
        let mut on = vec![false; nodes];
        on[s] = true;
        dfs(s, s, &adj, &mut on, &mut Vec::new(), &mut out);
    }
    out
}

/// Vertex components of the map after deleting the given edges.
fn sides(map: &RotationSystem, removed: &[usize]) -> Vec<usize> {
    let n = map.num_vertices();
    let mut comp = vec![usize::MAX; n];
    let mut c = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = c;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &d in map.rotation(v) {
                if removed.contains(&map.edge(d)) {
                    continue;
                }
                let w = map.vertex(map.twin(d));
                if comp[w] == usize::MAX {
                    comp[w] = c;
                    q.push_back(w);
                }
            }
        }
        c += 1;
    }
    comp
}

fn separates_punctures(wm: &WeightedMap, removed: &[usize]) -> bool {
    let comp = sides(&wm.map, removed);
    let k = comp.iter().max().unwrap() + 1;
    if k < 2 {
        return false;
    }
    let mut has = vec![false; k];
    for v in 0..comp.len() {
        if wm.puncture[v] {
            has[comp[v]] = true;
        }
    }
    has.iter().filter(|&&h| h).count() >= 2
}

/// Fewest crossings over all simple dual cycles of the augmented map that
/// separate two holes.
pub fn loop_oracle(p: &PlanarPiece) -> Option<u64> {
    if p.circles() < 2 {
        return None;
    }
    let wm = p.augmented().unwrap();
    let (face_of, edges) = dual(&wm);
    let nf = face_of.iter().max().unwrap() + 1;
    simple_cycles(nf, &edges)
        .into_iter()
        .filter(|c| separates_punctures(&wm, c))
        .map(|c| c.iter().map(|&e| edges[e].2).sum())
        .min()
}

/// Fewest crossings over all essential lassos based at the hole face of the
/// map with circle `b` blown up: a simple dual path from the hole face to
/// some face `x`, then a simple dual cycle through `x` avoiding the path.
pub fn arc_oracle_at(p: &PlanarPiece, b: usize) -> Option<u64> {
    if p.circles() < 3 {
        return None;
    }
    let wm = p.blown_up(b).unwrap();
    let hole = wm.hole_face.unwrap();
    let (face_of, edges) = dual(&wm);
    let nf = face_of.iter().max().unwrap() + 1;
    let cycles = simple_cycles(nf, &edges);
    let cycle_nodes: Vec<Vec<usize>> = cycles
        .iter()
        .map(|c| {
            let mut ns: Vec<usize> = c.iter().flat_map(|&e| [edges[e].0, edges[e].1]).collect();
            ns.sort_unstable();
            ns.dedup();
            ns
        })
        .collect();
    let cycle_cost: Vec<u64> = cycles.iter().map(|c| c.iter().map(|&e| edges[e].2).sum()).collect();
    let essential: Vec<bool> = cycles.iter().map(|c| separates_punctures(&wm, c)).collect();

    // simple paths from the hole face: (end, visited nodes, cost)
    let mut adj = vec![Vec::new(); nf];
    for &(u, v, w) in &edges {
        if u != v {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
    }
    let mut paths: Vec<(usize, Vec<usize>, u64)> = Vec::new();
    let mut stack = vec![(hole, vec![hole], 0u64)];
    while let Some((x, seen, cost)) = stack.pop() {
        for &(y, w) in &adj[x] {
            if !seen.contains(&y) {
                let mut s = seen.clone();
                s.push(y);
                stack.push((y, s, cost + w));
            }
        }
        paths.push((x, seen, cost));
    }

    let mut best: Option<u64> = None;
    for (x, seen, cost) in &paths {
        for (i, ns) in cycle_nodes.iter().enumerate() {
            if !essential[i] || !ns.contains(x) {
                continue;
            }
            if ns.iter().any(|n| n != x && seen.contains(n)) {
                continue;
            }
            let total = 2 * cost + cycle_cost[i];
            best = Some(best.map_or(total, |b| b.min(total)));
        }
    }
    best
}

pub fn arc_oracle(p: &PlanarPiece) -> Option<u64> {
    (0..p.circles()).filter_map(|b| arc_oracle_at(p, b)).min()
}

/// Random piece with `circles` holes and total multiplicity at most `budget`.
pub fn random_piece<R: Rng>(rng: &mut R, circles: usize, budget: u64) -> PlanarPiece {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..circles {
        for b in a + 1..circles {
            pairs.push((a, b));
        }
    }
    let mut left = budget;
    let mut arcs = Vec::new();
    for (a, b) in pairs {
        if left == 0 || rng.random_bool(0.3) {
            continue;
        }
        let m = rng.random_range(1..=left.min(5));
        left -= m;
        arcs.push(ArcClass::new(a, b, m));
    }
    PlanarPiece::new("R", circles, arcs).unwrap()
}

/// Simple cycles of length at most `max_len` in a map's underlying graph,
/// as edge lists.
pub fn short_cycles(map: &RotationSystem, max_len: usize) -> Vec<Vec<usize>> {
    let darts = map.edge_darts();
    let edges: Vec<(usize, usize, u64)> = darts
        .iter()
        .map(|&d| (map.vertex(d), map.vertex(map.twin(d)), 1))
        .collect();
    let mut adj = vec![Vec::new(); map.num_vertices()];
    for (e, &(u, v, _)) in edges.iter().enumerate() {
        adj[u].push((v, e));
        if u != v {
            adj[v].push((u, e));
        }
    }
    let mut out = Vec::new();
    fn dfs(
        s: usize,
        v: usize,
        max_len: usize,
        adj: &[Vec<(usize, usize)>],
        on: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if path.len() >= max_len {
            return;
        }
        for &(w, e) in &adj[v] {
            if path.contains(&e) {
                continue;
            }
            if w == s {
                out.push(path.iter().copied().chain([e]).collect());
            } else if w > s && !on[w] {
                on[w] = true;
                path.push(e);
                dfs(s, w, max_len, adj, on, path, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    for s in 0..map.num_vertices() {
        let mut on = vec![false; map.num_vertices()];
        on[s] = true;
        dfs(s, s, max_len, &adj, &mut on, &mut Vec::new(), &mut out);
    }
    out
}

/// Cut-and-check: cut the surface along a simple cycle (edge list) and
/// report whether some resulting piece is a disk. Written against the raw
/// rotation system, independently of the library's version.
pub fn cycle_bounds_disk(map: &RotationSystem, cycle: &[usize]) -> bool {
    let faces = map.faces();
    let nf = faces.len();
    let on = |e: usize| cycle.contains(&e);
    // face components across uncut edges
    let mut comp = vec![usize::MAX; nf];
    let mut c = 0;
    for s in 0..nf {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = c;
        let mut q = VecDeque::from([s]);
        while let Some(f) = q.pop_front() {
            for &d in &faces.cycles[f] {
                if on(map.edge(d)) {
                    continue;
                }
                let g = faces.face_of[map.twin(d)];
                if comp[g] == usize::MAX {
                    comp[g] = c;
                    q.push_back(g);
                }
            }
        }
        c += 1;
    }
    let mut v = vec![0i64; c];
    let mut e = vec![0i64; c];
    let mut f = vec![0i64; c];
    for x in 0..nf {
        f[comp[x]] += 1;
    }
    // every dart side of an edge lies in exactly one face; an uncut edge is
    // shared, a cut edge splits in two
    for d in 0..map.num_darts() {
        let side = comp[faces.face_of[d]];
        if on(map.edge(d)) || d < map.twin(d) {
            e[side] += 1;
        }
    }
    // a vertex copy per maximal run of corners not separated by cut darts
    for vert in 0..map.num_vertices() {
        let rot: Vec<Dart> = map.rotation(vert).to_vec();
        let cuts: Vec<usize> = (0..rot.len()).filter(|&i| on(map.edge(rot[i]))).collect();
        if cuts.is_empty() {
            v[comp[faces.face_of[rot[0]]]] += 1;
        } else {
            for &i in &cuts {
                let next = rot[(i + 1) % rot.len()];
                v[comp[faces.face_of[next]]] += 1;
            }
        }
    }
    (0..c).any(|i| v[i] - e[i] + f[i] == 1)
}

/// Half the length of the shortest radial cycle (up to `max_len`) that does
/// not bound a disk.
pub fn face_width_oracle(radial: &RotationSystem, max_len: usize) -> Option<u64> {
    short_cycles(radial, max_len)
        .into_iter()
        .filter(|c| !cycle_bounds_disk(radial, c))
        .map(|c| c.len() as u64 / 2)
        .min()
}

/// Adds a vertex inside face `f` joined to every corner of that face.
pub fn star_face(map: &RotationSystem, f: usize) -> RotationSystem {
    let faces = map.faces();
    let walk = faces.cycles[f].clone();
    let nd = map.num_darts();
    let mut rotations: Vec<Vec<Dart>> = (0..map.num_vertices()).map(|v| map.rotation(v).to_vec()).collect();
    // spoke t: dart nd+2t at the corner before walk[t], nd+2t+1 at the centre
    for (t, &x) in walk.iter().enumerate() {
        let rot = &mut rotations[map.vertex(x)];
        let pos = rot.iter().position(|&d| d == x).unwrap();
        rot.insert(pos, nd + 2 * t);
    }
    let mut edges: Vec<(Dart, Dart)> = map.edge_darts().iter().map(|&d| (d, map.twin(d))).collect();
    edges.extend((0..walk.len()).map(|t| (nd + 2 * t, nd + 2 * t + 1)));
    for centre in [
        (0..walk.len()).rev().map(|t| nd + 2 * t + 1).collect::<Vec<_>>(),
        (0..walk.len()).map(|t| nd + 2 * t + 1).collect(),
    ] {
        let mut r = rotations.clone();
        r.push(centre);
        let m = RotationSystem::new(r, &edges).unwrap();
        if m.genus().unwrap() == map.genus().unwrap() {
            return m;
        }
    }
    panic!("stellar subdivision changed the genus");
}
