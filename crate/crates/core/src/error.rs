use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("empty chord label at byte {pos}")]
    EmptyLabel { pos: usize },
    #[error("chord '{label}' occurs {count} time(s), expected exactly 2")]
    ChordMultiplicity { label: String, count: usize },
    #[error("chord id {0} has no label")]
    UnknownChordId(usize),
    #[error("unknown chord '{0}'")]
    UnknownChord(String),
    #[error("circle index {index} out of range ({circles} circles)")]
    CircleIndex { index: usize, circles: usize },
    #[error("no chord end at position {index} of circle {circle}")]
    EndIndex { circle: usize, index: usize },
    #[error("end is not adjacent to an end of chord '{chord}'")]
    NotAdjacent { chord: String },
    #[error("cannot slide a chord end along its own chord")]
    SameChord,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("diagram has {chords} chords, above the enumeration cap of {cap}")]
    CapExceeded { chords: usize, cap: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmbientError {
    #[error("placeholder {0:?} must occur exactly once, found {1}")]
    Placeholder(&'static str, usize),
    #[error("spectator chord {0} must occur exactly twice, found {1}")]
    Spectator(usize, usize),
    #[error("ambient has no circles")]
    NoCircles,
    #[error("family has {0} terms, expected 4")]
    TermCount(usize),
}
