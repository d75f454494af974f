//! Partial duality.
//!
//! The partial dual `G^A` glues a disc along every boundary component of
//! the spanning ribbon subgraph `(V, A)`, drops the old vertex discs and
//! keeps every band. We trace those boundary components with the corner
//! matchings restricted to the ends of chords in `A`; each disc arc also
//! carries the non-`A` ends lying on it, which end up on the new vertex.

use crate::diagram::{ChordEnd, ChordId, Diagram, EndPos, Framing, Sign};
use crate::error::DiagramError;
use crate::surface::{AFTER, BEFORE};

/// One step of the boundary walk that produced a circle of `G^A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// A piece of an old circle between two `A`-ends (or the whole circle).
    Arc {
        circle: usize,
        forward: bool,
        ends: Vec<EndPos>,
    },
    /// A side of the band of an `A`-chord.
    Side { chord: ChordId },
}

#[derive(Clone, Debug)]
pub struct DualResult {
    pub diagram: Diagram,
    /// For each circle of `diagram`, the walk that produced it.
    pub vertex_map: Vec<Vec<TraceStep>>,
}

struct Arc {
    circle: usize,
    /// Corner index of the `after` corner the arc leaves from.
    from: usize,
    ends: Vec<EndPos>,
}

/// Partial dual with respect to the chords in `subset`.
pub fn partial_dual(d: &Diagram, subset: &[ChordId]) -> Result<DualResult, DiagramError> {
    let mut mask = vec![false; d.num_chords()];
    for &c in subset {
        match mask.get_mut(c.0) {
            Some(m) => *m = true,
            None => return Err(DiagramError::UnknownChordId(c.0)),
        }
    }
    Ok(dual_by_mask(d, &mask, true))
}

/// Partial dual with respect to chords given by label.
pub fn partial_dual_by_labels<S: AsRef<str>>(d: &Diagram, labels: &[S]) -> Result<DualResult, DiagramError> {
    let ids = labels
        .iter()
        .map(|l| {
            d.chord_id(l.as_ref())
                .ok_or_else(|| DiagramError::UnknownChord(l.as_ref().to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    partial_dual(d, &ids)
}

/// The geometric dual: partial dual with respect to every chord.
pub fn full_dual(d: &Diagram) -> DualResult {
    dual_by_mask(d, &vec![true; d.num_chords()], true)
}

/// Partial dual with respect to the chords whose bit is set in `mask`.
///
/// Panics if `mask.len()` differs from the chord count.
pub fn partial_dual_mask(d: &Diagram, mask: &[bool]) -> Diagram {
    dual_by_mask(d, mask, false).diagram
}

fn dual_by_mask(d: &Diagram, mask: &[bool], record: bool) -> DualResult {
    assert_eq!(mask.len(), d.num_chords());
    let circles = d.circles();
    let mut offset = Vec::with_capacity(circles.len());
    let mut total = 0;
    for circle in circles {
        offset.push(total);
        total += circle.len();
    }
    let flat = |p: EndPos| offset[p.circle] + p.index;
    let in_a = |e: &ChordEnd| mask[e.chord.0];

    // arcs of (V, A): each corner of an A-end belongs to exactly one arc
    let none = usize::MAX;
    let mut arcs: Vec<Arc> = Vec::new();
    let mut arc_of = vec![none; 2 * total];
    let mut arc_partner = vec![none; 2 * total];
    for (c, circle) in circles.iter().enumerate() {
        let anchors: Vec<usize> = (0..circle.len()).filter(|&i| in_a(&circle[i])).collect();
        let m = anchors.len();
        for (j, &i) in anchors.iter().enumerate() {
            let next = anchors[(j + 1) % m];
            let from = 2 * (offset[c] + i) + AFTER;
            let to = 2 * (offset[c] + next) + BEFORE;
            let len = circle.len();
            let gap = (next + len - i - 1) % len;
            let gap = if m == 1 { len - 1 } else { gap };
            let ends = (1..=gap).map(|k| EndPos::new(c, (i + k) % len)).collect();
            arc_of[from] = arcs.len();
            arc_of[to] = arcs.len();
            arc_partner[from] = to;
            arc_partner[to] = from;
            arcs.push(Arc { circle: c, from, ends });
        }
    }

    // band sides of A-chords; side 0 holds the `before` corner of the first end
    let positions = d.end_positions();
    let framings = d.framings();
    let mut side_partner = vec![none; 2 * total];
    for (chord, &[p, q]) in positions.iter().enumerate() {
        if !mask[chord] {
            continue;
        }
        let (x, y) = (flat(p), flat(q));
        let (xb, xa, yb, ya) = (2 * x + BEFORE, 2 * x + AFTER, 2 * y + BEFORE, 2 * y + AFTER);
        let (s0, s1) = match framings[chord] {
            Framing::Orientable => (ya, yb),
            Framing::Twisted => (yb, ya),
        };
        side_partner[xb] = s0;
        side_partner[s0] = xb;
        side_partner[xa] = s1;
        side_partner[s1] = xa;
    }
    // corner -> (chord, is first end, side index)
    let mut corner_chord = vec![(ChordId(0), false, 0u8); 2 * total];
    for (chord, &[p, _]) in positions.iter().enumerate() {
        if !mask[chord] {
            continue;
        }
        let x = flat(p);
        corner_chord[2 * x + BEFORE] = (ChordId(chord), true, 0);
        corner_chord[2 * x + AFTER] = (ChordId(chord), true, 1);
        let y0 = side_partner[2 * x + BEFORE];
        corner_chord[y0] = (ChordId(chord), false, 0);
        corner_chord[y0 ^ 1] = (ChordId(chord), false, 1);
    }

    let mut out_circles: Vec<Vec<ChordEnd>> = Vec::new();
    let mut vertex_map: Vec<Vec<TraceStep>> = Vec::new();
    let mut visited = vec![false; 2 * total];
    for (c, circle) in circles.iter().enumerate() {
        if !circle.iter().any(in_a) {
            out_circles.push(circle.clone());
            if record {
                vertex_map.push(vec![TraceStep::Arc {
                    circle: c,
                    forward: true,
                    ends: (0..circle.len()).map(|i| EndPos::new(c, i)).collect(),
                }]);
            }
            continue;
        }
        for i in 0..circle.len() {
            let start = 2 * (offset[c] + i) + AFTER;
            if !in_a(&circle[i]) || visited[start] {
                continue;
            }
            let mut word = Vec::new();
            let mut steps = Vec::new();
            let mut cur = start;
            loop {
                // along a disc arc
                let arc = &arcs[arc_of[cur]];
                let forward = arc.from == cur;
                let next = arc_partner[cur];
                visited[cur] = true;
                visited[next] = true;
                if forward {
                    word.extend(arc.ends.iter().map(|&p| d.end(p)));
                } else {
                    word.extend(arc.ends.iter().rev().map(|&p| {
                        let e = d.end(p);
                        ChordEnd::new(e.chord, -e.sign)
                    }));
                }
                if record {
                    steps.push(TraceStep::Arc {
                        circle: arc.circle,
                        forward,
                        ends: arc.ends.clone(),
                    });
                }
                // along a band side
                let (chord, from_first, side) = corner_chord[next];
                let sign = match (side, from_first) {
                    (0, true) | (1, false) => Sign::Minus,
                    _ => Sign::Plus,
                };
                word.push(ChordEnd::new(chord, sign));
                if record {
                    steps.push(TraceStep::Side { chord });
                }
                cur = side_partner[next];
                if cur == start {
                    break;
                }
            }
            out_circles.push(word);
            vertex_map.push(steps);
        }
    }

    let diagram = Diagram::new(out_circles, d.labels().to_vec()).expect("partial dual keeps every chord");
    DualResult { diagram, vertex_map }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{boundary_components, euler_genus};

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    fn dual(s: &str, set: &[&str]) -> Diagram {
        partial_dual_by_labels(&d(s), set).unwrap().diagram
    }

    #[test]
    fn empty_subset_is_identity() {
        for s in ["(a, a)", "(a, b, -a, c ; b, c)", "()", "( ; a, -a)"] {
            assert_eq!(dual(s, &[]), d(s));
        }
    }

    #[test]
    fn orientable_loop_and_non_loop_are_reciprocal() {
        let g = dual("(a, a)", &["a"]);
        assert_eq!(g.num_circles(), 2);
        assert_eq!(g.canonical_form(), d("(a ; a)").canonical_form());
        let h = dual("(a ; a)", &["a"]);
        assert_eq!(h.canonical_form(), d("(a, a)").canonical_form());
    }

    #[test]
    fn twisted_loop_is_self_dual() {
        let g = dual("(a, -a)", &["a"]);
        assert_eq!(g.canonical_form(), d("(a, -a)").canonical_form());
    }

    #[test]
    fn torus_is_self_dual() {
        let g = full_dual(&d("(a, b, a, b)")).diagram;
        assert_eq!(g.num_circles(), 1);
        assert_eq!(euler_genus(&g), 2);
        assert_eq!(g.canonical_form(), d("(a, b, a, b)").canonical_form());
    }

    #[test]
    fn full_dual_of_empty() {
        assert_eq!(full_dual(&d("()")).diagram, d("()"));
    }

    #[test]
    fn circle_count_matches_spanning_subgraph_boundary() {
        let g = d("(a, b, c, -a, -b, c, d, d)");
        // (V, {a, b}) keeps the ends of a and b in the same order
        let sub = d("(a, b, -a, -b)");
        let h = dual("(a, b, c, -a, -b, c, d, d)", &["a", "b"]);
        assert_eq!(h.num_circles(), boundary_components(&sub));
        assert_eq!(h.num_chords(), g.num_chords());
    }

    #[test]
    fn vertex_map_shape() {
        let r = partial_dual_by_labels(&d("(a, b, a, c ; b, c)"), &["a"]).unwrap();
        assert_eq!(r.vertex_map.len(), r.diagram.num_circles());
        for (steps, circle) in r.vertex_map.iter().zip(r.diagram.circles()) {
            let emitted: usize = steps
                .iter()
                .map(|s| match s {
                    TraceStep::Arc { ends, .. } => ends.len(),
                    TraceStep::Side { .. } => 1,
                })
                .sum();
            assert_eq!(emitted, circle.len());
        }
    }

    #[test]
    fn unknown_chord() {
        assert!(matches!(
            partial_dual_by_labels(&d("(a, a)"), &["z"]),
            Err(DiagramError::UnknownChord(_))
        ));
        assert!(matches!(
            partial_dual(&d("(a, a)"), &[ChordId(3)]),
            Err(DiagramError::UnknownChordId(3))
        ));
    }

    #[test]
    fn involution_on_small_examples() {
        for s in ["(a, b, a, b)", "(a, b, -a, b)", "(a, b, c, -a, -b, c, d, d)", "(a, b ; -a, c ; b, c)"] {
            let g = d(s);
            let n = g.num_chords();
            for bits in 0..(1u32 << n) {
                let mask: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                let h = partial_dual_mask(&partial_dual_mask(&g, &mask), &mask);
                assert_eq!(h.canonical_form(), g.canonical_form(), "{s} mask {bits:b}");
            }
        }
    }
}
