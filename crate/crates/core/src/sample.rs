//! Seeded random diagrams for tests and experiments.

use rand::Rng;

use crate::diagram::{canonical_label, ChordEnd, ChordId, Diagram, Sign};

pub fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen::<bool>() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A diagram with `chords` chords on `circles` circles (at least one).
///
/// Ends are dropped one at a time into a uniformly chosen gap of a
/// uniformly chosen circle; every end gets an independent random sign.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, chords: usize, circles: usize) -> Diagram {
    let mut rows: Vec<Vec<ChordEnd>> = vec![Vec::new(); circles.max(1)];
    for chord in 0..chords {
        for _ in 0..2 {
            let c = rng.gen_range(0..rows.len());
            let at = rng.gen_range(0..=rows[c].len());
            rows[c].insert(at, ChordEnd::new(ChordId(chord), random_sign(rng)));
        }
    }
    let labels = (0..chords).map(canonical_label).collect();
    Diagram::new(rows, labels).expect("every chord placed twice")
}

/// Every one-circle diagram with `chords` chords, up to relabelling:
/// all perfect matchings of `2 * chords` points, with all sign choices
/// for each end.
pub fn all_one_circle(chords: usize) -> Vec<Diagram> {
    let n = 2 * chords;
    let mut matchings = Vec::new();
    let mut slots = vec![usize::MAX; n];
    fill_matchings(&mut slots, 0, &mut matchings);
    let labels: Vec<String> = (0..chords).map(canonical_label).collect();
    let mut out = Vec::new();
    for word in matchings {
        for signs in 0..(1u32 << n) {
            let row = word
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let sign = if signs >> i & 1 == 1 { Sign::Minus } else { Sign::Plus };
                    ChordEnd::new(ChordId(c), sign)
                })
                .collect();
            out.push(Diagram::new(vec![row], labels.clone()).expect("perfect matching"));
        }
    }
    out
}

fn fill_matchings(slots: &mut Vec<usize>, next: usize, out: &mut Vec<Vec<usize>>) {
    let Some(first) = slots.iter().position(|&s| s == usize::MAX) else {
        out.push(slots.clone());
        return;
    };
    slots[first] = next;
    for j in first + 1..slots.len() {
        if slots[j] == usize::MAX {
            slots[j] = next;
            fill_matchings(slots, next + 1, out);
            slots[j] = usize::MAX;
        }
    }
    slots[first] = usize::MAX;
}
