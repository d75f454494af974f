//! The framed four-term relations and their verification.
//!
//! Each relation involves a moving chord `a` and an anchor chord `b`. One
//! end of `a` is fixed; the other end sits next to an end of `b`. The four
//! diagrams place the moving end immediately before / after the first end
//! of `b`, and then at the positions it reaches by sliding along `b`:
//!
//! ```text
//! D1 - D2 + D3 - D4,   D3 = slide(D2 along b),   D4 = slide(D1 along b)
//! ```
//!
//! Sliding along a twisted chord lands on the same side of the far end
//! and toggles the framing of `a`.
//!
//! | relation | `a` in D1, D2 | `b`        | `a` in D3, D4 |
//! |----------|---------------|------------|---------------|
//! | T1       | orientable    | orientable | orientable    |
//! | T2       | twisted       | orientable | twisted       |
//! | T3       | orientable    | twisted    | twisted       |

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{Adjacency, ChordEnd, ChordId, Diagram, Sign};
use crate::error::{AmbientError, PolyError};
use crate::pdual::partial_dual_mask;
use crate::poly::{partial_dual_polynomial_with, Enumeration, Polynomial, DEFAULT_CAP};
use crate::sample::random_sign;
use crate::surface::euler_genus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    T1,
    T2,
    T3,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::T1, Relation::T2, Relation::T3];
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::T1 => "t1",
            Relation::T2 => "t2",
            Relation::T3 => "t3",
        })
    }
}

impl FromStr for Relation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "t1" => Ok(Relation::T1),
            "t2" => Ok(Relation::T2),
            "t3" => Ok(Relation::T3),
            _ => Err(format!("unknown relation '{s}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AnchorEnd {
    First,
    Second,
}

#[derive(Clone, Copy, Debug)]
struct TermSpec {
    coeff: i8,
    anchor: AnchorEnd,
    adj: Adjacency,
    /// Negate the moving end's sign (toggles the framing of `a`).
    negate: bool,
}

#[derive(Clone, Copy, Debug)]
struct RelationSpec {
    moving_twisted: bool,
    anchor_twisted: bool,
    terms: [TermSpec; 4],
}

const fn term(coeff: i8, anchor: AnchorEnd, adj: Adjacency, negate: bool) -> TermSpec {
    TermSpec {
        coeff,
        anchor,
        adj,
        negate,
    }
}

const ORIENTABLE_ANCHOR: [TermSpec; 4] = [
    term(1, AnchorEnd::First, Adjacency::Before, false),
    term(-1, AnchorEnd::First, Adjacency::After, false),
    term(1, AnchorEnd::Second, Adjacency::Before, false),
    term(-1, AnchorEnd::Second, Adjacency::After, false),
];

const TWISTED_ANCHOR: [TermSpec; 4] = [
    term(1, AnchorEnd::First, Adjacency::Before, false),
    term(-1, AnchorEnd::First, Adjacency::After, false),
    term(1, AnchorEnd::Second, Adjacency::After, true),
    term(-1, AnchorEnd::Second, Adjacency::Before, true),
];

fn spec(relation: Relation) -> RelationSpec {
    match relation {
        Relation::T1 => RelationSpec {
            moving_twisted: false,
            anchor_twisted: false,
            terms: ORIENTABLE_ANCHOR,
        },
        Relation::T2 => RelationSpec {
            moving_twisted: true,
            anchor_twisted: false,
            terms: ORIENTABLE_ANCHOR,
        },
        Relation::T3 => RelationSpec {
            moving_twisted: false,
            anchor_twisted: true,
            terms: TWISTED_ANCHOR,
        },
    }
}

/// A token of an ambient circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// End of spectator chord `i`.
    Spectator(usize, Sign),
    /// The fixed end of the moving chord `a`.
    Fixed,
    /// First end of the anchor chord `b`.
    AnchorFirst,
    /// Second end of the anchor chord `b`.
    AnchorSecond,
}

/// Spectator chords plus the three places where the active chords attach.
///
/// The moving end of `a` is always inserted directly next to an anchor
/// end, so no spectator end ever lies between the two ends the relation
/// moves past each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    circles: Vec<Vec<Slot>>,
    spectators: usize,
}

impl Ambient {
    pub fn new(circles: Vec<Vec<Slot>>) -> Result<Self, AmbientError> {
        if circles.is_empty() {
            return Err(AmbientError::NoCircles);
        }
        let tokens = || circles.iter().flatten();
        for (name, want) in [
            ("fixed", Slot::Fixed),
            ("anchor-first", Slot::AnchorFirst),
            ("anchor-second", Slot::AnchorSecond),
        ] {
            let n = tokens().filter(|&&t| t == want).count();
            if n != 1 {
                return Err(AmbientError::Placeholder(name, n));
            }
        }
        let spectators = tokens()
            .filter_map(|t| match t {
                Slot::Spectator(i, _) => Some(i + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let mut count = vec![0; spectators];
        for t in tokens() {
            if let Slot::Spectator(i, _) = t {
                count[*i] += 1;
            }
        }
        if let Some((i, &n)) = count.iter().enumerate().find(|(_, &n)| n != 2) {
            return Err(AmbientError::Spectator(i, n));
        }
        Ok(Self { circles, spectators })
    }

    /// One circle holding only the active chords, in the order `a b b`.
    pub fn bare() -> Self {
        Self::new(vec![vec![Slot::Fixed, Slot::AnchorFirst, Slot::AnchorSecond]]).expect("valid")
    }

    pub fn circles(&self) -> &[Vec<Slot>] {
        &self.circles
    }

    pub fn spectators(&self) -> usize {
        self.spectators
    }

    /// The spectator chords alone, as a diagram on the same circles.
    pub fn spectator_diagram(&self) -> Diagram {
        let rows = self
            .circles
            .iter()
            .map(|c| {
                c.iter()
                    .filter_map(|t| match *t {
                        Slot::Spectator(i, s) => Some(ChordEnd::new(ChordId(i), s)),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        let labels = (0..self.spectators).map(spectator_label).collect();
        Diagram::new(rows, labels).expect("spectators occur twice")
    }
}

fn spectator_label(i: usize) -> String {
    format!("s{i}")
}

/// Signed rendering with `A` for the fixed end and `B1`, `B2` for the anchor ends.
impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .circles
            .iter()
            .map(|c| {
                c.iter()
                    .map(|t| match *t {
                        Slot::Spectator(i, Sign::Plus) => spectator_label(i),
                        Slot::Spectator(i, Sign::Minus) => format!("-{}", spectator_label(i)),
                        Slot::Fixed => "A".into(),
                        Slot::AnchorFirst => "B1".into(),
                        Slot::AnchorSecond => "B2".into(),
                    })
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        write!(f, "({})", words.join(" ; "))
    }
}

/// The moving chord is `a` (id 0), the anchor `b` (id 1); spectators follow.
pub const MOVING: ChordId = ChordId(0);
pub const ANCHOR: ChordId = ChordId(1);

#[derive(Clone, Debug)]
pub struct FourTermFamily {
    pub relation: Relation,
    pub terms: Vec<(i8, Diagram)>,
}

impl FourTermFamily {
    pub fn new(relation: Relation, terms: Vec<(i8, Diagram)>) -> Result<Self, AmbientError> {
        if terms.len() != 4 {
            return Err(AmbientError::TermCount(terms.len()));
        }
        Ok(Self { relation, terms })
    }
}

fn labels(spectators: usize) -> Vec<String> {
    let mut out = vec!["a".to_string(), "b".to_string()];
    out.extend((0..spectators).map(spectator_label));
    out
}

/// Builds one term; with `displace`, the moving end is pushed one step
/// further away from its anchor, which must be past a spectator end.
fn instantiate(spec: &RelationSpec, t: &TermSpec, ambient: &Ambient, displace: bool) -> Option<Diagram> {
    let moving_sign = if spec.moving_twisted { Sign::Minus } else { Sign::Plus }.flipped_if(t.negate);
    let second_sign = if spec.anchor_twisted { Sign::Minus } else { Sign::Plus };
    let x = ChordEnd::new(MOVING, moving_sign);
    let mut moving_at = None;
    let mut rows: Vec<Vec<ChordEnd>> = Vec::with_capacity(ambient.circles.len());
    for (c, circle) in ambient.circles.iter().enumerate() {
        let mut row = Vec::with_capacity(circle.len() + 1);
        for tok in circle {
            let (anchor, end) = match *tok {
                Slot::Spectator(i, s) => {
                    row.push(ChordEnd::new(ChordId(i + 2), s));
                    continue;
                }
                Slot::Fixed => {
                    row.push(ChordEnd::new(MOVING, Sign::Plus));
                    continue;
                }
                Slot::AnchorFirst => (AnchorEnd::First, ChordEnd::new(ANCHOR, Sign::Plus)),
                Slot::AnchorSecond => (AnchorEnd::Second, ChordEnd::new(ANCHOR, second_sign)),
            };
            if anchor != t.anchor {
                row.push(end);
            } else if t.adj == Adjacency::Before {
                moving_at = Some((c, row.len()));
                row.extend([x, end]);
            } else {
                moving_at = Some((c, row.len() + 1));
                row.extend([end, x]);
            }
        }
        rows.push(row);
    }
    if displace {
        let (c, i) = moving_at.expect("anchor placed");
        let len = rows[c].len();
        let beyond = match t.adj {
            Adjacency::Before => (i + len - 1) % len,
            Adjacency::After => (i + 1) % len,
        };
        if rows[c][beyond].chord.0 < 2 {
            return None;
        }
        rows[c].swap(i, beyond);
    }
    Some(Diagram::new(rows, labels(ambient.spectators)).expect("ambient instantiation"))
}

/// The four signed diagrams of `relation` on `ambient`.
pub fn build_family(relation: Relation, ambient: &Ambient) -> FourTermFamily {
    let spec = spec(relation);
    let terms = spec
        .terms
        .iter()
        .map(|t| (t.coeff, instantiate(&spec, t, ambient, false).expect("plain instantiation")))
        .collect();
    FourTermFamily { relation, terms }
}

/// Negative control: the family with the moving end of the fourth diagram
/// pushed one step further, past a spectator end. `None` when the end
/// beyond is not a spectator.
pub fn build_corrupted_family(relation: Relation, ambient: &Ambient) -> Option<FourTermFamily> {
    let spec = spec(relation);
    let mut family = build_family(relation, ambient);
    family.terms[3].1 = instantiate(&spec, &spec.terms[3], ambient, true)?;
    Some(family)
}

/// `sum coeff * poly(diagram)`; zero exactly when the relation holds here.
pub fn check_family(f: &FourTermFamily) -> Result<Polynomial<BigInt>, PolyError> {
    let mut acc = Polynomial::zero();
    for (coeff, d) in &f.terms {
        let p: Polynomial<BigInt> = partial_dual_polynomial_with(d, DEFAULT_CAP, Enumeration::GrayCode)?;
        acc = acc.add(&p.scale(BigInt::from(*coeff)));
    }
    Ok(acc)
}

/// A partial dual `G_{i;bb'}` of a family member with respect to a subset
/// of the two active chords: `bits.0` for `a`, `bits.1` for `b`.
#[derive(Clone, Debug)]
pub struct ActiveDual {
    pub term: usize,
    pub bits: (bool, bool),
    pub diagram: Diagram,
}

impl ActiveDual {
    pub fn label(&self) -> String {
        format!("G_{{{};{}{}}}", self.term, self.bits.0 as u8, self.bits.1 as u8)
    }
}

/// All 16 diagrams `G_{i;bb'}`, ordered by term then by bits `00, 01, 10, 11`.
pub fn enumerate_partial_duals_of_active(f: &FourTermFamily) -> Vec<ActiveDual> {
    let mut out = Vec::with_capacity(16);
    for (i, (_, d)) in f.terms.iter().enumerate() {
        for bits in [(false, false), (false, true), (true, false), (true, true)] {
            let mut mask = vec![false; d.num_chords()];
            mask[MOVING.0] = bits.0;
            mask[ANCHOR.0] = bits.1;
            out.push(ActiveDual {
                term: i + 1,
                bits,
                diagram: partial_dual_mask(d, &mask),
            });
        }
    }
    out
}

/// Pairs of `G_{i;bb'}` with equal Euler genus for T2, first bit on the
/// twisted (moving) chord: `((i, bits), (j, bits))`.
pub const T2_GENUS_PAIRS: [((usize, (bool, bool)), (usize, (bool, bool))); 8] = [
    ((1, (false, false)), (4, (false, false))),
    ((2, (false, false)), (3, (false, false))),
    ((2, (true, true)), (3, (true, true))),
    ((1, (true, false)), (2, (true, false))),
    ((4, (true, false)), (3, (true, false))),
    ((1, (false, true)), (2, (false, true))),
    ((3, (false, true)), (4, (false, true))),
    ((1, (true, true)), (4, (true, true))),
];

/// Checks each pair of [`T2_GENUS_PAIRS`], returning `(label, label, genus, genus)`.
pub fn t2_genus_pairs(f: &FourTermFamily) -> Vec<(String, String, usize, usize)> {
    let duals = enumerate_partial_duals_of_active(f);
    let find = |(i, bits): (usize, (bool, bool))| {
        duals
            .iter()
            .find(|g| g.term == i && g.bits == bits)
            .expect("all 16 present")
    };
    T2_GENUS_PAIRS
        .iter()
        .map(|&(l, r)| {
            let (g, h) = (find(l), find(r));
            (g.label(), h.label(), euler_genus(&g.diagram), euler_genus(&h.diagram))
        })
        .collect()
}

/// Seeded ambient with up to `max_spectators` spectator chords on `circles` circles.
pub fn random_ambient(max_spectators: usize, circles: usize, seed: u64) -> Ambient {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<Slot>> = vec![Vec::new(); circles.max(1)];
    let drop = |rng: &mut ChaCha8Rng, rows: &mut Vec<Vec<Slot>>, tok: Slot| {
        let c = rng.gen_range(0..rows.len());
        let at = rng.gen_range(0..=rows[c].len());
        rows[c].insert(at, tok);
    };
    for tok in [Slot::Fixed, Slot::AnchorFirst, Slot::AnchorSecond] {
        drop(&mut rng, &mut rows, tok);
    }
    let k = rng.gen_range(0..=max_spectators);
    for i in 0..k {
        let first = random_sign(&mut rng);
        let second = random_sign(&mut rng);
        drop(&mut rng, &mut rows, Slot::Spectator(i, first));
        drop(&mut rng, &mut rows, Slot::Spectator(i, second));
    }
    Ambient::new(rows).expect("generated ambient is well formed")
}

/// Seed of trial `t` derived from a run seed.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (trial as u64).wrapping_add(1).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub ambient: String,
    pub diagrams: Vec<(i8, String)>,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relation: Relation,
    pub trials: usize,
    pub vanished: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.vanished == self.trials
    }
}

/// Runs `trials` random ambients for `relation`; trial `t` uses
/// `1 + t % 3` circles and seed [`trial_seed`]`(seed, t)`.
pub fn run_trials(relation: Relation, trials: usize, max_spectators: usize, seed: u64) -> RelationReport {
    let results: Vec<Option<Counterexample>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let ambient = random_ambient(max_spectators, 1 + t % 3, trial_seed(seed, t));
            let family = build_family(relation, &ambient);
            let residual = check_family(&family).expect("spectator count below cap");
            if residual.is_zero() {
                None
            } else {
                Some(Counterexample {
                    trial: t,
                    ambient: ambient.to_string(),
                    diagrams: family.terms.iter().map(|(c, d)| (*c, d.to_string())).collect(),
                    residual: residual.to_string(),
                })
            }
        })
        .collect();
    let counterexamples: Vec<_> = results.into_iter().flatten().collect();
    RelationReport {
        relation,
        trials,
        vanished: trials - counterexamples.len(),
        counterexamples,
    }
}
