//! Ribbon-graph semantics of a diagram.
//!
//! Circles are thickened to vertex discs and chords to bands (plain for
//! orientable chords, half-twisted for twisted ones). Every chord end has
//! two corners on its vertex disc: the one just before its attaching
//! segment and the one just after, in the circle's order. Boundary
//! components of the surface are the cycles of two perfect matchings on
//! corners: one along the disc arcs, one along the band sides.

use serde::Serialize;

use crate::diagram::{Diagram, EndPos, Framing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Before,
    After,
}

/// A corner of the vertex boundary next to a chord end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub end: EndPos,
    pub side: Side,
}

impl Corner {
    pub fn new(end: EndPos, side: Side) -> Self {
        Self { end, side }
    }
}

/// The two corner matchings. Corners are indexed `2 * k + side` where
/// `k` is the end's circle-major index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerPairing {
    corners: Vec<Corner>,
    arc: Vec<usize>,
    side: Vec<usize>,
    empty_circles: usize,
}

impl CornerPairing {
    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    pub fn arc_partner(&self, corner: usize) -> usize {
        self.arc[corner]
    }

    pub fn side_partner(&self, corner: usize) -> usize {
        self.side[corner]
    }

    /// Arc pairs as `(Corner, Corner)`, each listed once.
    pub fn arc_pairs(&self) -> Vec<(Corner, Corner)> {
        pairs(&self.corners, &self.arc)
    }

    pub fn side_pairs(&self) -> Vec<(Corner, Corner)> {
        pairs(&self.corners, &self.side)
    }

    /// Cycles of the union of both matchings, each starting with an arc step.
    pub fn cycles(&self) -> Vec<Vec<Corner>> {
        let n = self.corners.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            loop {
                seen[cur] = true;
                cycle.push(self.corners[cur]);
                let mid = self.arc[cur];
                seen[mid] = true;
                cycle.push(self.corners[mid]);
                cur = self.side[mid];
                if cur == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    /// Number of boundary components, counting one per empty circle.
    pub fn boundary_count(&self) -> usize {
        let n = self.corners.len();
        let mut seen = vec![false; n];
        let mut count = self.empty_circles;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut cur = start;
            loop {
                seen[cur] = true;
                let mid = self.arc[cur];
                seen[mid] = true;
                cur = self.side[mid];
                if cur == start {
                    break;
                }
            }
        }
        count
    }
}

fn pairs(corners: &[Corner], matching: &[usize]) -> Vec<(Corner, Corner)> {
    matching
        .iter()
        .enumerate()
        .filter(|&(i, &j)| i < j)
        .map(|(i, &j)| (corners[i], corners[j]))
        .collect()
}

pub(crate) const BEFORE: usize = 0;
pub(crate) const AFTER: usize = 1;

/// Builds the arc and side matchings of `d`.
pub fn corner_structure(d: &Diagram) -> CornerPairing {
    let mut offset = Vec::with_capacity(d.num_circles());
    let mut corners = Vec::with_capacity(2 * d.num_ends());
    let mut total = 0;
    for (c, circle) in d.circles().iter().enumerate() {
        offset.push(total);
        total += circle.len();
        for i in 0..circle.len() {
            corners.push(Corner::new(EndPos::new(c, i), Side::Before));
            corners.push(Corner::new(EndPos::new(c, i), Side::After));
        }
    }
    let flat = |p: EndPos| offset[p.circle] + p.index;

    let mut arc = vec![0; corners.len()];
    for (c, circle) in d.circles().iter().enumerate() {
        let len = circle.len();
        for i in 0..len {
            let here = 2 * (offset[c] + i) + AFTER;
            let next = 2 * (offset[c] + (i + 1) % len) + BEFORE;
            arc[here] = next;
            arc[next] = here;
        }
    }

    let mut side = vec![0; corners.len()];
    let framings = d.framings();
    for (chord, [p, q]) in d.end_positions().into_iter().enumerate() {
        let (x, y) = (flat(p), flat(q));
        let (xb, xa, yb, ya) = (2 * x + BEFORE, 2 * x + AFTER, 2 * y + BEFORE, 2 * y + AFTER);
        match framings[chord] {
            Framing::Orientable => {
                side[xb] = ya;
                side[ya] = xb;
                side[yb] = xa;
                side[xa] = yb;
            }
            Framing::Twisted => {
                side[xb] = yb;
                side[yb] = xb;
                side[xa] = ya;
                side[ya] = xa;
            }
        }
    }

    let empty_circles = d.circles().iter().filter(|c| c.is_empty()).count();
    CornerPairing {
        corners,
        arc,
        side,
        empty_circles,
    }
}

pub fn boundary_components(d: &Diagram) -> usize {
    corner_structure(d).boundary_count()
}

/// Number of connected components of the circle/chord incidence graph.
pub fn connected_components(d: &Diagram) -> usize {
    let n = d.num_circles();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut comps = n;
    for [p, q] in d.end_positions() {
        let (a, b) = (find(&mut parent, p.circle), find(&mut parent, q.circle));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    comps
}

/// Euler genus `2c - v + e - b`, summed over connected components.
pub fn euler_genus(d: &Diagram) -> usize {
    let c = connected_components(d) as isize;
    let v = d.num_circles() as isize;
    let e = d.num_chords() as isize;
    let b = boundary_components(d) as isize;
    let eg = 2 * c - v + e - b;
    debug_assert!(eg >= 0, "negative Euler genus for {d}");
    eg as usize
}

/// True iff some set of circle flips makes every chord orientable.
pub fn is_orientable(d: &Diagram) -> bool {
    let n = d.num_circles();
    let framings = d.framings();
    // adjacency: (neighbour circle, twisted)
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (chord, [p, q]) in d.end_positions().into_iter().enumerate() {
        let twisted = framings[chord] == Framing::Twisted;
        if p.circle == q.circle {
            if twisted {
                return false;
            }
            continue;
        }
        adj[p.circle].push((q.circle, twisted));
        adj[q.circle].push((p.circle, twisted));
    }
    let mut flip: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let fu = flip[u].unwrap();
            for &(w, twisted) in &adj[u] {
                let want = fu ^ twisted;
                match flip[w] {
                    None => {
                        flip[w] = Some(want);
                        stack.push(w);
                    }
                    Some(fw) if fw != want => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceStats {
    pub components: usize,
    pub vertices: usize,
    pub edges: usize,
    pub boundary: usize,
    pub euler_genus: usize,
    pub orientable: bool,
    pub genus: usize,
}

pub fn surface_stats(d: &Diagram) -> SurfaceStats {
    let components = connected_components(d);
    let vertices = d.num_circles();
    let edges = d.num_chords();
    let boundary = boundary_components(d);
    let euler_genus = 2 * components + edges - vertices - boundary;
    let orientable = is_orientable(d);
    let genus = if orientable { euler_genus / 2 } else { euler_genus };
    SurfaceStats {
        components,
        vertices,
        edges,
        boundary,
        euler_genus,
        orientable,
        genus,
    }
}

impl SurfaceStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}
