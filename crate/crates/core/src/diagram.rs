//! Framed chord diagrams on one or more circles, stored as signed rotations.
//!
//! Every circle is a cyclic sequence of signed chord ends, read counterclockwise.
//! A chord whose two ends carry the same sign is orientable (a plain band);
//! opposite signs make it twisted (a half-twist band). The framing is never
//! stored, only derived.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use crate::error::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn flipped_if(self, cond: bool) -> Sign {
        if cond {
            -self
        } else {
            self
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Framing of a chord: 0 for orientable, 1 for twisted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Framing {
    Orientable,
    Twisted,
}

impl Framing {
    pub fn bit(self) -> u8 {
        match self {
            Framing::Orientable => 0,
            Framing::Twisted => 1,
        }
    }
}

/// Index of a chord into the diagram's label table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordId(pub usize);

/// One half-chord attached to a circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChordEnd {
    pub chord: ChordId,
    pub sign: Sign,
}

impl ChordEnd {
    pub fn new(chord: ChordId, sign: Sign) -> Self {
        Self { chord, sign }
    }
}

/// Location of a chord end: circle index and position within that circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndPos {
    pub circle: usize,
    pub index: usize,
}

impl EndPos {
    pub fn new(circle: usize, index: usize) -> Self {
        Self { circle, index }
    }
}

/// Which neighbour of the anchor end the sliding end sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// The sliding end is immediately before the anchor.
    Before,
    /// The sliding end is immediately after the anchor.
    After,
}

/// A framed chord diagram on `circles.len()` circles.
///
/// Each chord id `0..labels.len()` occurs exactly twice across all circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    circles: Vec<Vec<ChordEnd>>,
    labels: Vec<String>,
}

impl Diagram {
    /// Builds a diagram from circles over chord ids `0..labels.len()`.
    pub fn new(circles: Vec<Vec<ChordEnd>>, labels: Vec<String>) -> Result<Self, DiagramError> {
        let mut count = vec![0usize; labels.len()];
        for end in circles.iter().flatten() {
            match count.get_mut(end.chord.0) {
                Some(c) => *c += 1,
                None => return Err(DiagramError::UnknownChordId(end.chord.0)),
            }
        }
        if let Some((i, &c)) = count.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(DiagramError::ChordMultiplicity {
                label: labels[i].clone(),
                count: c,
            });
        }
        Ok(Self { circles, labels })
    }

    /// Builds a diagram from labelled signed ends; chord ids follow first occurrence.
    pub fn from_labeled<S: AsRef<str>>(circles: &[Vec<(S, Sign)>]) -> Result<Self, DiagramError> {
        let mut ids: HashMap<&str, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut out = Vec::with_capacity(circles.len());
        for circle in circles {
            let mut row = Vec::with_capacity(circle.len());
            for (label, sign) in circle {
                let label = label.as_ref();
                if label.is_empty() {
                    return Err(DiagramError::EmptyLabel { pos: 0 });
                }
                let id = *ids.entry(label).or_insert_with(|| {
                    labels.push(label.to_string());
                    labels.len() - 1
                });
                row.push(ChordEnd::new(ChordId(id), *sign));
            }
            out.push(row);
        }
        Self::new(out, labels)
    }

    /// A single circle with no chords.
    pub fn empty() -> Self {
        Self {
            circles: vec![Vec::new()],
            labels: Vec::new(),
        }
    }

    pub fn circles(&self) -> &[Vec<ChordEnd>] {
        &self.circles
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, chord: ChordId) -> &str {
        &self.labels[chord.0]
    }

    pub fn num_circles(&self) -> usize {
        self.circles.len()
    }

    pub fn num_chords(&self) -> usize {
        self.labels.len()
    }

    pub fn num_ends(&self) -> usize {
        self.circles.iter().map(Vec::len).sum()
    }

    pub fn chord_id(&self, label: &str) -> Option<ChordId> {
        self.labels.iter().position(|l| l == label).map(ChordId)
    }

    pub fn end(&self, pos: EndPos) -> ChordEnd {
        self.circles[pos.circle][pos.index]
    }

    /// Positions of both ends of every chord, in circle-major order.
    pub fn end_positions(&self) -> Vec<[EndPos; 2]> {
        let mut first: Vec<Option<EndPos>> = vec![None; self.labels.len()];
        let mut out = vec![[EndPos::new(0, 0); 2]; self.labels.len()];
        for (c, circle) in self.circles.iter().enumerate() {
            for (i, end) in circle.iter().enumerate() {
                let pos = EndPos::new(c, i);
                match first[end.chord.0] {
                    None => first[end.chord.0] = Some(pos),
                    Some(p) => out[end.chord.0] = [p, pos],
                }
            }
        }
        out
    }

    pub fn ends_of(&self, chord: ChordId) -> [EndPos; 2] {
        let mut found = Vec::with_capacity(2);
        for (c, circle) in self.circles.iter().enumerate() {
            for (i, end) in circle.iter().enumerate() {
                if end.chord == chord {
                    found.push(EndPos::new(c, i));
                }
            }
        }
        [found[0], found[1]]
    }

    pub fn framing(&self, chord: ChordId) -> Framing {
        let [p, q] = self.ends_of(chord);
        framing_of(self.end(p).sign, self.end(q).sign)
    }

    pub fn framings(&self) -> Vec<Framing> {
        let mut sign: Vec<Option<Sign>> = vec![None; self.labels.len()];
        let mut out = vec![Framing::Orientable; self.labels.len()];
        for end in self.circles.iter().flatten() {
            match sign[end.chord.0] {
                None => sign[end.chord.0] = Some(end.sign),
                Some(s) => out[end.chord.0] = framing_of(s, end.sign),
            }
        }
        out
    }

    /// Reverses circle `i` and negates every sign on it.
    pub fn flip_circle(&self, i: usize) -> Result<Diagram, DiagramError> {
        if i >= self.circles.len() {
            return Err(DiagramError::CircleIndex {
                index: i,
                circles: self.circles.len(),
            });
        }
        let mut out = self.clone();
        out.circles[i] = inverse(&self.circles[i]);
        Ok(out)
    }

    /// Flips every circle.
    pub fn mirror(&self) -> Diagram {
        Diagram {
            circles: self.circles.iter().map(|c| inverse(c)).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Slides the end at `x` along the chord labelled by `over`.
    ///
    /// If `x` is adjacent to ends of `over` on both sides, the end
    /// immediately after `x` is used as the anchor.
    pub fn slide(&self, x: EndPos, over: ChordId) -> Result<Diagram, DiagramError> {
        self.check_pos(x)?;
        if self.end(x).chord == over {
            return Err(DiagramError::SameChord);
        }
        let circle = &self.circles[x.circle];
        let len = circle.len();
        let next = (x.index + 1) % len;
        let prev = (x.index + len - 1) % len;
        if circle[next].chord == over && next != x.index {
            self.slide_at(x, over, Adjacency::Before)
        } else if circle[prev].chord == over && prev != x.index {
            self.slide_at(x, over, Adjacency::After)
        } else {
            Err(DiagramError::NotAdjacent {
                chord: self.labels.get(over.0).cloned().unwrap_or_default(),
            })
        }
    }

    /// Slides the end at `x` along chord `over`, where `x` sits on side
    /// `adj` of an end `y` of `over`. The end is reinserted next to the
    /// other end `y'` of `over`:
    ///
    /// | x relative to y | `over` orientable       | `over` twisted          |
    /// |-----------------|-------------------------|-------------------------|
    /// | before          | after y', same sign     | before y', sign negated |
    /// | after           | before y', same sign    | after y', sign negated  |
    pub fn slide_at(&self, x: EndPos, over: ChordId, adj: Adjacency) -> Result<Diagram, DiagramError> {
        self.check_pos(x)?;
        let moving = self.end(x);
        if moving.chord == over {
            return Err(DiagramError::SameChord);
        }
        let circle = &self.circles[x.circle];
        let len = circle.len();
        let anchor_index = match adj {
            Adjacency::Before => (x.index + 1) % len,
            Adjacency::After => (x.index + len - 1) % len,
        };
        let anchor = EndPos::new(x.circle, anchor_index);
        if anchor_index == x.index || self.end(anchor).chord != over {
            return Err(DiagramError::NotAdjacent {
                chord: self.labels.get(over.0).cloned().unwrap_or_default(),
            });
        }
        let [p, q] = self.ends_of(over);
        let other = if p == anchor { q } else { p };
        let twisted = self.framing(over) == Framing::Twisted;
        let insert_after = match (adj, twisted) {
            (Adjacency::Before, false) | (Adjacency::After, true) => true,
            (Adjacency::After, false) | (Adjacency::Before, true) => false,
        };
        let new_end = ChordEnd::new(moving.chord, moving.sign.flipped_if(twisted));

        let mut circles = self.circles.clone();
        circles[x.circle].remove(x.index);
        let mut target = other.index;
        if other.circle == x.circle && other.index > x.index {
            target -= 1;
        }
        let at = if insert_after { target + 1 } else { target };
        circles[other.circle].insert(at, new_end);
        Ok(Diagram {
            circles,
            labels: self.labels.clone(),
        })
    }

    /// Rotates circle `i` left by `by` positions.
    pub fn rotate_circle(&self, i: usize, by: usize) -> Result<Diagram, DiagramError> {
        if i >= self.circles.len() {
            return Err(DiagramError::CircleIndex {
                index: i,
                circles: self.circles.len(),
            });
        }
        let mut out = self.clone();
        let len = out.circles[i].len();
        if len > 0 {
            out.circles[i].rotate_left(by % len);
        }
        Ok(out)
    }

    /// Negates both ends of `chord`.
    pub fn reverse_chord_signs(&self, chord: ChordId) -> Diagram {
        let mut out = self.clone();
        for end in out.circles.iter_mut().flatten() {
            if end.chord == chord {
                end.sign = -end.sign;
            }
        }
        out
    }

    /// Appends a circle with no chord ends.
    pub fn with_empty_circle(&self) -> Diagram {
        let mut out = self.clone();
        out.circles.push(Vec::new());
        out
    }

    fn check_pos(&self, x: EndPos) -> Result<(), DiagramError> {
        if x.circle >= self.circles.len() {
            return Err(DiagramError::CircleIndex {
                index: x.circle,
                circles: self.circles.len(),
            });
        }
        if x.index >= self.circles[x.circle].len() {
            return Err(DiagramError::EndIndex {
                circle: x.circle,
                index: x.index,
            });
        }
        Ok(())
    }

    /// Canonical representative of the equivalence class of this diagram.
    ///
    /// Equivalent diagrams (up to rotation of any circle, flipping any
    /// circle, reordering circles, relabelling chords and reversing both
    /// signs of a chord) have identical canonical diagrams, and the
    /// canonical diagram is equivalent to `self`.
    pub fn canonicalize(&self) -> Diagram {
        canonical::canonicalize(self)
    }

    /// Serialization of [`Diagram::canonicalize`].
    pub fn canonical_form(&self) -> String {
        self.canonicalize().to_string()
    }

    /// Connected components of the circle/chord incidence graph, as lists of circle indices.
    pub fn circle_components(&self) -> Vec<Vec<usize>> {
        let n = self.circles.len();
        let mut by_chord: Vec<Vec<usize>> = vec![Vec::new(); self.labels.len()];
        for (c, circle) in self.circles.iter().enumerate() {
            for end in circle {
                by_chord[end.chord.0].push(c);
            }
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                for end in &self.circles[c] {
                    for &d in &by_chord[end.chord.0] {
                        if !seen[d] {
                            seen[d] = true;
                            comp.push(d);
                            queue.push_back(d);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

pub(crate) fn framing_of(a: Sign, b: Sign) -> Framing {
    if a == b {
        Framing::Orientable
    } else {
        Framing::Twisted
    }
}

/// The inverse of a word: reversed order with all signs negated.
pub fn inverse(word: &[ChordEnd]) -> Vec<ChordEnd> {
    word.iter()
        .rev()
        .map(|e| ChordEnd::new(e.chord, -e.sign))
        .collect()
}

/// Label used for the `i`-th chord of a canonical diagram: `a`..`z`, then `a1`..`z1`, ...
pub fn canonical_label(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        k => format!("{letter}{k}"),
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (c, circle) in self.circles.iter().enumerate() {
            if c > 0 {
                f.write_str(if circle.is_empty() { " ;" } else { " ; " })?;
            }
            for (i, end) in circle.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                if end.sign.is_minus() {
                    f.write_str("-")?;
                }
                f.write_str(&self.labels[end.chord.0])?;
            }
        }
        f.write_str(")")
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let circles = Parser::new(s).parse()?;
        let mut ids: HashMap<&str, usize> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut rows = Vec::with_capacity(circles.len());
        for circle in &circles {
            let mut row = Vec::with_capacity(circle.len());
            for &(label, sign) in circle {
                let id = *ids.entry(label).or_insert_with(|| {
                    labels.push(label.to_string());
                    labels.len() - 1
                });
                row.push(ChordEnd::new(ChordId(id), sign));
            }
            rows.push(row);
        }
        Diagram::new(rows, labels)
    }
}

pub fn parse(text: &str) -> Result<Diagram, DiagramError> {
    text.parse()
}

/// Recursive-descent parser for signed rotations.
///
/// ```text
/// input  = group (";" group)*
/// group  = "(" body (";" body)* ")"
/// body   = [end ("," end)*]
/// end    = ["-"] label
/// label  = [A-Za-z][A-Za-z0-9_]*
/// ```
///
/// Both `(a, a) ; (b, -b)` and `(a, a ; b, -b)` denote the same two circles.
struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type Word<'a> = Vec<(&'a str, Sign)>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), DiagramError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected '{}'", byte as char)))
        }
    }

    fn syntax(&self, message: String) -> DiagramError {
        let found = match self.peek() {
            Some(b) => format!("'{}'", b as char),
            None => "end of input".to_string(),
        };
        DiagramError::Syntax {
            pos: self.pos,
            message: format!("{message}, found {found}"),
        }
    }

    fn parse(mut self) -> Result<Vec<Word<'a>>, DiagramError> {
        let mut circles = Vec::new();
        loop {
            self.group(&mut circles)?;
            self.skip_ws();
            match self.peek() {
                None => return Ok(circles),
                Some(b';') => self.pos += 1,
                Some(_) => return Err(self.syntax("expected ';' or end of input".into())),
            }
        }
    }

    fn group(&mut self, circles: &mut Vec<Word<'a>>) -> Result<(), DiagramError> {
        self.expect(b'(')?;
        loop {
            circles.push(self.body()?);
            self.skip_ws();
            match self.peek() {
                Some(b';') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(());
                }
                _ => return Err(self.syntax("expected ',', ';' or ')'".into())),
            }
        }
    }

    fn body(&mut self) -> Result<Word<'a>, DiagramError> {
        let mut word = Vec::new();
        self.skip_ws();
        if matches!(self.peek(), Some(b';') | Some(b')')) {
            return Ok(word);
        }
        loop {
            word.push(self.end()?);
            self.skip_ws();
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(word);
            }
        }
    }

    fn end(&mut self) -> Result<(&'a str, Sign), DiagramError> {
        self.skip_ws();
        let sign = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            Sign::Minus
        } else {
            Sign::Plus
        };
        let start = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() => self.pos += 1,
            Some(b',') | Some(b';') | Some(b')') | None => {
                return Err(DiagramError::EmptyLabel { pos: start })
            }
            Some(_) => return Err(self.syntax("expected a chord label".into())),
        }
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        Ok((&self.src[start..self.pos], sign))
    }
}

mod canonical {
    //! Canonical form by breadth-first relabelling.
    //!
    //! For each connected component, every choice of start circle, start
    //! end and orientation of that circle determines a unique encoding:
    //! circles are emitted in discovery order, each newly reached circle
    //! starts at the end through which it was reached and is oriented so
    //! that the connecting chord is orientable, and chords are numbered in
    //! order of first occurrence with that occurrence positive. The
    //! minimal encoding per component is a complete invariant; components
    //! are then sorted.

    use super::*;

    type Token = (usize, bool);
    type Encoding = Vec<Vec<Token>>;

    pub(super) fn canonicalize(d: &Diagram) -> Diagram {
        let positions = d.end_positions();
        let mut encodings: Vec<Encoding> = d
            .circle_components()
            .into_iter()
            .map(|comp| best_encoding(d, &positions, &comp))
            .collect();
        encodings.sort();

        let mut circles = Vec::with_capacity(d.num_circles());
        let mut offset = 0;
        for enc in &encodings {
            let mut local_max = 0;
            for circle in enc {
                circles.push(
                    circle
                        .iter()
                        .map(|&(id, neg)| {
                            local_max = local_max.max(id + 1);
                            ChordEnd::new(
                                ChordId(offset + id),
                                if neg { Sign::Minus } else { Sign::Plus },
                            )
                        })
                        .collect(),
                );
            }
            offset += local_max;
        }
        let labels = (0..offset).map(canonical_label).collect();
        Diagram { circles, labels }
    }

    fn best_encoding(d: &Diagram, positions: &[[EndPos; 2]], comp: &[usize]) -> Encoding {
        let mut best: Option<Encoding> = None;
        for &c in comp {
            let len = d.circles[c].len();
            if len == 0 {
                return vec![Vec::new()];
            }
            for start in 0..len {
                for flip in [false, true] {
                    let enc = encode(d, positions, c, start, flip);
                    if best.as_ref().map_or(true, |b| enc < *b) {
                        best = Some(enc);
                    }
                }
            }
        }
        best.expect("component has at least one circle")
    }

    /// Reads circle `c` starting at `start`, backwards with negated signs when `flip`.
    fn read(d: &Diagram, c: usize, start: usize, flip: bool) -> Vec<(usize, Sign)> {
        let circle = &d.circles[c];
        let len = circle.len();
        (0..len)
            .map(|k| {
                let i = if flip {
                    (start + len - k) % len
                } else {
                    (start + k) % len
                };
                (i, circle[i].sign.flipped_if(flip))
            })
            .collect()
    }

    fn encode(d: &Diagram, positions: &[[EndPos; 2]], c0: usize, start: usize, flip: bool) -> Encoding {
        let n = d.num_circles();
        let mut visited = vec![false; n];
        let mut label: Vec<Option<(usize, Sign)>> = vec![None; d.num_chords()];
        let mut next_label = 0;
        let mut out = Vec::new();
        let mut queue = VecDeque::from([(c0, start, flip)]);
        visited[c0] = true;
        while let Some((c, s, fl)) = queue.pop_front() {
            let mut row = Vec::with_capacity(d.circles[c].len());
            for (i, sign) in read(d, c, s, fl) {
                let chord = d.circles[c][i].chord;
                let token = match label[chord.0] {
                    Some((id, first_sign)) => (id, sign != first_sign),
                    None => {
                        label[chord.0] = Some((next_label, sign));
                        next_label += 1;
                        let [p, q] = positions[chord.0];
                        let other = if p == EndPos::new(c, i) { q } else { p };
                        if !visited[other.circle] {
                            visited[other.circle] = true;
                            // orient the new circle so this chord reads orientable
                            let other_sign = d.end(other).sign;
                            let f = other_sign != sign;
                            queue.push_back((other.circle, other.index, f));
                        }
                        (next_label - 1, false)
                    }
                };
                row.push(token);
            }
            out.push(row);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn parses_four_chord_example() {
        let g = d("(a, b, c, -a, -b, c, d, d)");
        assert_eq!(g.num_circles(), 1);
        assert_eq!(g.num_chords(), 4);
        let framing: Vec<u8> = ["a", "b", "c", "d"]
            .iter()
            .map(|l| g.framing(g.chord_id(l).unwrap()).bit())
            .collect();
        assert_eq!(framing, vec![1, 1, 0, 0]);
        assert_eq!(g.to_string(), "(a, b, c, -a, -b, c, d, d)");
    }

    #[test]
    fn parses_empty_and_multi_circle() {
        let g = d("()");
        assert_eq!((g.num_circles(), g.num_chords()), (1, 0));
        assert_eq!(g.to_string(), "()");

        let g = d("(a, a ; b, -b)");
        assert_eq!(g.num_circles(), 2);
        assert_eq!(g.framing(g.chord_id("a").unwrap()), Framing::Orientable);
        assert_eq!(g.framing(g.chord_id("b").unwrap()), Framing::Twisted);
        assert_eq!(g, d("(a, a) ; (b, -b)"));
        assert_eq!(g, d("  ( a,a;b ,- b )"));

        let g = d("( ; a ; a)");
        assert_eq!(g.num_circles(), 3);
        assert!(g.circles()[0].is_empty());
        assert_eq!(g.to_string(), "( ; a ; a)");
        assert_eq!(d(&g.to_string()), g);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "(a, b, a".parse::<Diagram>(),
            Err(DiagramError::Syntax { pos: 8, .. })
        ));
        assert!(matches!(
            "(a, b)".parse::<Diagram>(),
            Err(DiagramError::ChordMultiplicity { count: 1, .. })
        ));
        assert!(matches!(
            "(a, a, a)".parse::<Diagram>(),
            Err(DiagramError::ChordMultiplicity { count: 3, .. })
        ));
        assert!(matches!(
            "(a, , a)".parse::<Diagram>(),
            Err(DiagramError::EmptyLabel { pos: 4 })
        ));
        assert!(matches!(
            "(a, -)".parse::<Diagram>(),
            Err(DiagramError::EmptyLabel { .. })
        ));
        assert!(matches!("(1a, 1a)".parse::<Diagram>(), Err(DiagramError::Syntax { .. })));
        assert!(matches!("".parse::<Diagram>(), Err(DiagramError::Syntax { pos: 0, .. })));
        assert!(matches!("(a, a) x".parse::<Diagram>(), Err(DiagramError::Syntax { .. })));
    }

    #[test]
    fn serializes_one_chord() {
        let a = vec![("a", Sign::Plus), ("a", Sign::Plus)];
        assert_eq!(Diagram::from_labeled(&[a]).unwrap().to_string(), "(a, a)");
        let a = vec![("a", Sign::Plus), ("a", Sign::Minus)];
        assert_eq!(Diagram::from_labeled(&[a]).unwrap().to_string(), "(a, -a)");
    }

    #[test]
    fn flip_circle_rules() {
        let g = d("(a, b, a, b)");
        let f = g.flip_circle(0).unwrap();
        assert_eq!(f.to_string(), "(-b, -a, -b, -a)");
        assert_eq!(f.canonical_form(), g.canonical_form());

        let g = d("(a, b ; -a, b)");
        let f = g.flip_circle(1).unwrap();
        assert_eq!(f.to_string(), "(a, b ; -b, a)");
        let a = g.chord_id("a").unwrap();
        let b = g.chord_id("b").unwrap();
        assert_eq!(g.framing(a), Framing::Twisted);
        assert_eq!(f.framing(a), Framing::Orientable);
        assert_eq!(g.framing(b), Framing::Orientable);
        assert_eq!(f.framing(b), Framing::Twisted);

        let g = d("(a, a ; )");
        assert_eq!(g.flip_circle(1).unwrap(), g);
        assert!(matches!(g.flip_circle(2), Err(DiagramError::CircleIndex { .. })));
    }

    #[test]
    fn mirror_is_involution() {
        let g = d("(a, -a)");
        assert_eq!(g.mirror().canonical_form(), g.canonical_form());
        let g = d("(a, b, c, -a, -b, c, d, d)");
        assert_ne!(g.mirror(), g);
        assert_eq!(g.mirror().mirror(), g);
    }

    #[test]
    fn slide_orientable() {
        let g = d("(a, a, b, b)");
        let s = g.slide(EndPos::new(0, 1), g.chord_id("b").unwrap()).unwrap();
        assert_eq!(s.to_string(), "(a, b, b, a)");
        assert_eq!(s.canonical_form(), g.canonical_form());
    }

    #[test]
    fn slide_twisted() {
        let g = d("(a, b, a, -b)");
        let b = g.chord_id("b").unwrap();
        let s = g.slide_at(EndPos::new(0, 2), b, Adjacency::After).unwrap();
        assert_eq!(s.to_string(), "(a, b, -b, -a)");
        assert_eq!(s.framing(g.chord_id("a").unwrap()), Framing::Twisted);
    }

    #[test]
    fn slide_across_circles() {
        let g = d("(a, b, a ; b)");
        let s = g.slide_at(EndPos::new(0, 0), ChordId(1), Adjacency::Before).unwrap();
        assert_eq!(s.to_string(), "(b, a ; b, a)");
    }

    #[test]
    fn slide_errors() {
        let g = d("(a, b, a, c, b, c)");
        let c = g.chord_id("c").unwrap();
        let b = g.chord_id("b").unwrap();
        assert!(matches!(g.slide(EndPos::new(0, 1), c), Err(DiagramError::NotAdjacent { .. })));
        assert!(matches!(g.slide(EndPos::new(0, 1), b), Err(DiagramError::SameChord)));
        assert!(matches!(g.slide(EndPos::new(0, 9), c), Err(DiagramError::EndIndex { .. })));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(d("(b, b, a, a)").canonical_form(), d("(a, a, b, b)").canonical_form());
        assert_eq!(d("(-a, -a)").canonical_form(), d("(a, a)").canonical_form());
        assert_eq!(d("(a, a ; b, -b)").canonical_form(), d("(x, -x ; y, y)").canonical_form());
        assert_ne!(d("(a, a)").canonical_form(), d("(a, -a)").canonical_form());
        assert_ne!(d("(a, b, a, b)").canonical_form(), d("(a, a, b, b)").canonical_form());
        // empty circles first
        assert_eq!(d("(a, a ; )").canonical_form(), "( ; a, a)");
        // a non-loop chord can always be untwisted by a flip
        assert_eq!(d("(a ; -a)").canonical_form(), d("(a ; a)").canonical_form());
    }

    #[test]
    fn canonical_is_equivalent_and_idempotent() {
        for s in ["(a, b, c, -a, -b, c, d, d)", "(a, b ; -a, c ; b, c)", "( ; a, -a ; )"] {
            let g = d(s);
            let c = g.canonicalize();
            assert_eq!(c.canonical_form(), c.to_string());
            assert_eq!(c.num_chords(), g.num_chords());
            assert_eq!(c.num_circles(), g.num_circles());
            assert_eq!(d(&c.to_string()), c);
        }
    }

    #[test]
    fn canonical_labels() {
        assert_eq!(canonical_label(0), "a");
        assert_eq!(canonical_label(25), "z");
        assert_eq!(canonical_label(26), "a1");
        assert_eq!(canonical_label(53), "b2");
    }
}
