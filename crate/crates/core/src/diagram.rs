//! Signed oriented Gauss diagrams on two labeled circles.
//!
//! A diagram is a pair of cyclic slot sequences (one per link component,
//! both oriented counterclockwise) together with one signed directed arrow
//! per crossing. Each slot belongs to exactly one arrow end. Components are
//! labeled and never interchangeable; equality of diagrams is taken up to
//! independent rotation of the two circles and renaming of arrows, decided
//! through [`GaussDiagram::canonical_form`].
//!
//! Arrows point from the over-passage to the under-passage of the crossing
//! they encode; the sign is the local writhe.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Component label: the two circles of a 2-component diagram.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Comp {
    C1,
    C2,
}

impl Comp {
    pub const BOTH: [Comp; 2] = [Comp::C1, Comp::C2];

    pub fn index(self) -> usize {
        match self {
            Comp::C1 => 0,
            Comp::C2 => 1,
        }
    }

    pub fn other(self) -> Comp {
        match self {
            Comp::C1 => Comp::C2,
            Comp::C2 => Comp::C1,
        }
    }

    pub fn label(self) -> u8 {
        self.index() as u8 + 1
    }
}

impl fmt::Display for Comp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Which end of an arrow occupies a slot.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn letter(self) -> char {
        match self {
            End::Tail => 'T',
            End::Head => 'H',
        }
    }
}

/// Local writhe of a crossing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Opaque arrow identifier, unique within one diagram.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ArrowId(pub u32);

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One slot address: a component and a position in its cyclic sequence.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Endpoint {
    pub comp: Comp,
    pub pos: usize,
}

/// Resolved arrow data: both endpoint addresses plus the sign.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub id: ArrowId,
    pub tail: Endpoint,
    pub head: Endpoint,
    pub sign: Sign,
}

impl Arrow {
    /// True when both endpoints lie on the same circle.
    pub fn is_self(&self) -> bool {
        self.tail.comp == self.head.comp
    }

    pub fn endpoint(&self, end: End) -> Endpoint {
        match end {
            End::Tail => self.tail,
            End::Head => self.head,
        }
    }
}

/// Total-order key deciding isomorphism of labeled diagrams up to rotation
/// of each circle and renaming of arrows.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(pub Vec<u8>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("arrow {0} occurs more than once as {1:?}")]
    DuplicateEnd(ArrowId, End),
    #[error("arrow {0} has no {1}")]
    MissingEnd(ArrowId, &'static str),
    #[error("arrow {0} has no sign entry")]
    MissingSign(ArrowId),
    #[error("sign entry for unknown arrow {0}")]
    SignForUnknownArrow(ArrowId),
    #[error("unknown arrow {0}")]
    UnknownArrow(ArrowId),
}

/// A signed oriented Gauss diagram on two labeled circles.
///
/// Immutable after construction; all operations return new values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussDiagram {
    circles: [Vec<(ArrowId, End)>; 2],
    arrows: BTreeMap<ArrowId, Arrow>,
}

impl GaussDiagram {
    /// Builds and validates a diagram from raw circle sequences and signs.
    pub fn new(
        circles: [Vec<(ArrowId, End)>; 2],
        signs: &BTreeMap<ArrowId, Sign>,
    ) -> Result<Self, DiagramError> {
        let mut seen: BTreeMap<ArrowId, [Option<Endpoint>; 2]> = BTreeMap::new();
        for comp in Comp::BOTH {
            for (pos, &(id, end)) in circles[comp.index()].iter().enumerate() {
                let entry = seen.entry(id).or_insert([None, None]);
                let slot = match end {
                    End::Tail => &mut entry[0],
                    End::Head => &mut entry[1],
                };
                if slot.is_some() {
                    return Err(DiagramError::DuplicateEnd(id, end));
                }
                *slot = Some(Endpoint { comp, pos });
            }
        }
        let mut arrows = BTreeMap::new();
        for (id, ends) in &seen {
            let tail = ends[0].ok_or(DiagramError::MissingEnd(*id, "tail"))?;
            let head = ends[1].ok_or(DiagramError::MissingEnd(*id, "head"))?;
            let sign = *signs.get(id).ok_or(DiagramError::MissingSign(*id))?;
            arrows.insert(*id, Arrow { id: *id, tail, head, sign });
        }
        for id in signs.keys() {
            if !seen.contains_key(id) {
                return Err(DiagramError::SignForUnknownArrow(*id));
            }
        }
        Ok(GaussDiagram { circles, arrows })
    }

    pub fn empty() -> Self {
        GaussDiagram { circles: [Vec::new(), Vec::new()], arrows: BTreeMap::new() }
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Arrow ids in ascending order.
    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows.keys().copied()
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> + '_ {
        self.arrows.values()
    }

    pub fn arrow(&self, id: ArrowId) -> Option<&Arrow> {
        self.arrows.get(&id)
    }

    pub fn circle(&self, comp: Comp) -> &[(ArrowId, End)] {
        &self.circles[comp.index()]
    }

    pub fn slot_count(&self, comp: Comp) -> usize {
        self.circles[comp.index()].len()
    }

    /// Sign of the arrow occupying the given slot.
    pub fn slot_sign(&self, comp: Comp, pos: usize) -> Sign {
        let (id, _) = self.circles[comp.index()][pos];
        self.arrows[&id].sign
    }

    /// Smallest id not yet used by an arrow.
    pub fn fresh_id(&self) -> ArrowId {
        ArrowId(self.arrows.keys().next_back().map_or(0, |a| a.0 + 1))
    }

    /// The diagram with one circle rotated so its slot `k` becomes slot 0.
    pub fn rotated(&self, comp: Comp, k: usize) -> Self {
        let mut circles = self.circles.clone();
        let seq = &mut circles[comp.index()];
        if !seq.is_empty() {
            let len = seq.len();
            seq.rotate_left(k % len);
        }
        let signs = self.sign_map();
        GaussDiagram::new(circles, &signs).expect("rotation preserves validity")
    }

    /// The diagram with arrows renamed through `map` (must be injective on
    /// the present ids).
    pub fn relabeled(&self, map: &BTreeMap<ArrowId, ArrowId>) -> Result<Self, DiagramError> {
        let rename = |id: ArrowId| -> Result<ArrowId, DiagramError> {
            map.get(&id).copied().ok_or(DiagramError::UnknownArrow(id))
        };
        let mut circles = [Vec::new(), Vec::new()];
        for comp in Comp::BOTH {
            for &(id, end) in &self.circles[comp.index()] {
                circles[comp.index()].push((rename(id)?, end));
            }
        }
        let mut signs = BTreeMap::new();
        for arrow in self.arrows.values() {
            signs.insert(rename(arrow.id)?, arrow.sign);
        }
        GaussDiagram::new(circles, &signs)
    }

    pub fn sign_map(&self) -> BTreeMap<ArrowId, Sign> {
        self.arrows.iter().map(|(id, a)| (*id, a.sign)).collect()
    }

    /// Reverses the arrow and flips its sign: the Gauss-diagram image of a
    /// crossing change.
    pub fn switch_crossing(&self, id: ArrowId) -> Result<Self, DiagramError> {
        if !self.arrows.contains_key(&id) {
            return Err(DiagramError::UnknownArrow(id));
        }
        let mut circles = self.circles.clone();
        for seq in &mut circles {
            for slot in seq.iter_mut() {
                if slot.0 == id {
                    slot.1 = match slot.1 {
                        End::Tail => End::Head,
                        End::Head => End::Tail,
                    };
                }
            }
        }
        let mut signs = self.sign_map();
        signs.insert(id, signs[&id].flipped());
        GaussDiagram::new(circles, &signs)
    }

    /// Sub-Gauss diagram keeping everything except `ids`; remaining cyclic
    /// order is preserved and slots are compacted.
    pub fn delete_arrows(&self, ids: &BTreeSet<ArrowId>) -> Result<Self, DiagramError> {
        for id in ids {
            if !self.arrows.contains_key(id) {
                return Err(DiagramError::UnknownArrow(*id));
            }
        }
        let circles = [
            self.circles[0].iter().copied().filter(|(id, _)| !ids.contains(id)).collect(),
            self.circles[1].iter().copied().filter(|(id, _)| !ids.contains(id)).collect(),
        ];
        let signs = self
            .arrows
            .iter()
            .filter(|(id, _)| !ids.contains(id))
            .map(|(id, a)| (*id, a.sign))
            .collect();
        GaussDiagram::new(circles, &signs)
    }

    /// Splices slot runs into arcs (arc `i` of a circle is the gap after
    /// slot `i`; an empty circle has the single arc 0, and spliced slots
    /// become the whole circle). At most one splice per circle.
    pub(crate) fn with_slots_inserted(
        &self,
        splices: &[(Comp, usize, &[(ArrowId, End)])],
        new_signs: &BTreeMap<ArrowId, Sign>,
    ) -> Result<Self, DiagramError> {
        let mut circles = self.circles.clone();
        for (comp, arc, slots) in splices {
            let seq = &mut circles[comp.index()];
            let at = if seq.is_empty() { 0 } else { (arc % seq.len()) + 1 };
            seq.splice(at..at, slots.iter().copied());
        }
        let mut signs = self.sign_map();
        signs.extend(new_signs.iter().map(|(k, v)| (*k, *v)));
        GaussDiagram::new(circles, &signs)
    }

    /// Swaps the two adjacent slots `pos` and `pos + 1` (cyclically) of one
    /// circle.
    pub(crate) fn with_adjacent_swapped(&self, comp: Comp, pos: usize) -> Self {
        let mut circles = self.circles.clone();
        let seq = &mut circles[comp.index()];
        let len = seq.len();
        debug_assert!(len >= 2);
        let next = (pos + 1) % len;
        seq.swap(pos, next);
        let signs = self.sign_map();
        GaussDiagram::new(circles, &signs).expect("swap preserves validity")
    }

    fn rotation_key(&self, r1: usize, r2: usize) -> Vec<u8> {
        rotation_key(&self.circles, r1, r2, |id| match self.arrows[&id].sign {
            Sign::Plus => 0,
            Sign::Minus => 1,
        })
    }

    /// Minimal rotation key; equal keys characterize isomorphic diagrams.
    pub fn canonical_form(&self) -> CanonicalForm {
        CanonicalForm(self.best_rotation().0)
    }

    pub fn is_isomorphic(&self, other: &GaussDiagram) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    fn best_rotation(&self) -> (Vec<u8>, usize, usize) {
        let n1 = self.circles[0].len().max(1);
        let n2 = self.circles[1].len().max(1);
        let mut best: Option<(Vec<u8>, usize, usize)> = None;
        for r1 in 0..n1 {
            for r2 in 0..n2 {
                let key = self.rotation_key(r1, r2);
                match &best {
                    Some((k, _, _)) if *k <= key => {}
                    _ => best = Some((key, r1, r2)),
                }
            }
        }
        best.expect("at least one rotation pair")
    }

    /// Parses the Gauss-code text format.
    ///
    /// ```text
    /// comp1: T1 H2
    /// comp2: H1 T2
    /// signs: 1:+ 2:+
    /// ```
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let raw = parse_code_lines(text)?;
        let mut signs = BTreeMap::new();
        for tok in &raw.sign_tokens {
            let (id, rest) = split_sign_token(tok)?;
            let sign = match rest {
                "+" => Sign::Plus,
                "-" => Sign::Minus,
                _ => {
                    return Err(parse_err(tok.line, tok.col, format!("unknown sign {:?}", rest)))
                }
            };
            if signs.insert(id, sign).is_some() {
                return Err(parse_err(tok.line, tok.col, format!("duplicate sign for arrow {id}")));
            }
        }
        raw.into_diagram(&signs)
    }

    /// Deterministic canonical serialization: minimal rotation pair, arrows
    /// renumbered from 1 in first-appearance order.
    pub fn serialize(&self) -> String {
        let (_, r1, r2) = self.best_rotation();
        let (order, renumber) = first_appearance(&self.circles, r1, r2);
        let mut out = String::new();
        for comp in Comp::BOTH {
            out.push_str(&format!("comp{}:", comp.label()));
            let seq = &self.circles[comp.index()];
            let rot = [r1, r2][comp.index()];
            for k in 0..seq.len() {
                let (id, end) = seq[(rot + k) % seq.len()];
                out.push_str(&format!(" {}{}", end.letter(), renumber[&id]));
            }
            out.push('\n');
        }
        out.push_str("signs:");
        for id in &order {
            out.push_str(&format!(" {}:{}", renumber[id], self.arrows[id].sign.symbol()));
        }
        out.push('\n');
        out
    }
}

/// Builds the coupled rotation key: circle lengths, then each slot of both
/// rotated circles encoded as (end, first-appearance number, sign byte).
pub(crate) fn rotation_key(
    circles: &[Vec<(ArrowId, End)>; 2],
    r1: usize,
    r2: usize,
    sign_byte: impl Fn(ArrowId) -> u8,
) -> Vec<u8> {
    let (_, renumber) = first_appearance(circles, r1, r2);
    let mut key = Vec::with_capacity(4 + 4 * (circles[0].len() + circles[1].len()));
    for seq in circles {
        key.extend_from_slice(&(seq.len() as u16).to_be_bytes());
    }
    for (idx, seq) in circles.iter().enumerate() {
        let rot = [r1, r2][idx];
        for k in 0..seq.len() {
            let (id, end) = seq[(rot + k) % seq.len()];
            key.push(match end {
                End::Tail => 0,
                End::Head => 1,
            });
            key.extend_from_slice(&renumber[&id].to_be_bytes());
            key.push(sign_byte(id));
        }
    }
    key
}

/// Walks circle 1 from rotation `r1`, then circle 2 from `r2`, numbering
/// arrows from 1 in order of first appearance.
pub(crate) fn first_appearance(
    circles: &[Vec<(ArrowId, End)>; 2],
    r1: usize,
    r2: usize,
) -> (Vec<ArrowId>, BTreeMap<ArrowId, u16>) {
    let mut order = Vec::new();
    let mut renumber = BTreeMap::new();
    for (idx, seq) in circles.iter().enumerate() {
        let rot = [r1, r2][idx];
        for k in 0..seq.len() {
            let (id, _) = seq[(rot + k) % seq.len()];
            renumber.entry(id).or_insert_with(|| {
                order.push(id);
                order.len() as u16
            });
        }
    }
    (order, renumber)
}

pub(crate) fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> DiagramError {
    DiagramError::Parse { line, col, msg: msg.into() }
}

/// A token with its source position (1-based line and column).
pub(crate) struct Token {
    pub text: String,
    pub line: usize,
    pub col: usize,
}

pub(crate) struct RawCode {
    pub circles: [Vec<(ArrowId, End)>; 2],
    pub sign_tokens: Vec<Token>,
    /// First position each arrow id was seen at, for error reporting.
    pub id_pos: BTreeMap<ArrowId, (usize, usize)>,
}

impl RawCode {
    pub fn into_diagram(self, signs: &BTreeMap<ArrowId, Sign>) -> Result<GaussDiagram, DiagramError> {
        GaussDiagram::new(self.circles.clone(), signs).map_err(|e| self.position_error(e))
    }

    /// Re-attaches a line/column to structural validation errors.
    pub fn position_error(&self, e: DiagramError) -> DiagramError {
        let at = |id: &ArrowId| self.id_pos.get(id).copied().unwrap_or((1, 1));
        match e {
            DiagramError::DuplicateEnd(id, end) => {
                let (line, col) = at(&id);
                parse_err(line, col, format!("arrow {id} occurs more than once as {end:?}"))
            }
            DiagramError::MissingEnd(id, what) => {
                let (line, col) = at(&id);
                parse_err(line, col, format!("arrow {id} has no {what}"))
            }
            DiagramError::MissingSign(id) => {
                let (line, col) = at(&id);
                parse_err(line, col, format!("arrow {id} has no sign entry"))
            }
            DiagramError::SignForUnknownArrow(id) => {
                parse_err(3, 1, format!("sign entry for unknown arrow {id}"))
            }
            other => other,
        }
    }
}

fn tokens_of_line(line_no: usize, rest: &str, rest_col: usize) -> Vec<Token> {
    let mut toks = Vec::new();
    let mut col = rest_col;
    for piece in rest.split(' ') {
        if !piece.is_empty() {
            toks.push(Token { text: piece.to_string(), line: line_no, col });
        }
        col += piece.chars().count() + 1;
    }
    toks
}

/// Shared three-line Gauss-code reader; sign tokens are interpreted by the
/// caller (diagrams and patterns admit different sign alphabets).
pub(crate) fn parse_code_lines(text: &str) -> Result<RawCode, DiagramError> {
    let mut lines = text.split('\n');
    let mut next_line = |n: usize, prefix: &str| -> Result<Vec<Token>, DiagramError> {
        let line = lines.next().ok_or_else(|| parse_err(n, 1, format!("missing {prefix} line")))?;
        let line = line.strip_suffix('\r').unwrap_or(line);
        let rest = line
            .strip_prefix(prefix)
            .ok_or_else(|| parse_err(n, 1, format!("expected line to start with {prefix:?}")))?;
        Ok(tokens_of_line(n, rest, prefix.chars().count() + 1))
    };
    let c1 = next_line(1, "comp1:")?;
    let c2 = next_line(2, "comp2:")?;
    let sg = next_line(3, "signs:")?;
    for (n, extra) in lines.enumerate() {
        if !extra.trim().is_empty() {
            return Err(parse_err(n + 4, 1, "unexpected content after signs line"));
        }
    }

    let mut circles = [Vec::new(), Vec::new()];
    let mut id_pos = BTreeMap::new();
    for (idx, toks) in [c1, c2].into_iter().enumerate() {
        for tok in toks {
            let mut chars = tok.text.chars();
            let end = match chars.next() {
                Some('T') => End::Tail,
                Some('H') => End::Head,
                _ => return Err(parse_err(tok.line, tok.col, format!("malformed token {:?}", tok.text))),
            };
            let id: u32 = chars
                .as_str()
                .parse()
                .ok()
                .filter(|v| *v > 0)
                .ok_or_else(|| parse_err(tok.line, tok.col, format!("malformed token {:?}", tok.text)))?;
            let id = ArrowId(id);
            id_pos.entry(id).or_insert((tok.line, tok.col));
            circles[idx].push((id, end));
        }
    }
    Ok(RawCode { circles, sign_tokens: sg, id_pos })
}

pub(crate) fn split_sign_token(tok: &Token) -> Result<(ArrowId, &str), DiagramError> {
    let (id_str, rest) = tok
        .text
        .split_once(':')
        .ok_or_else(|| parse_err(tok.line, tok.col, format!("malformed sign token {:?}", tok.text)))?;
    let id: u32 = id_str
        .parse()
        .ok()
        .filter(|v| *v > 0)
        .ok_or_else(|| parse_err(tok.line, tok.col, format!("malformed sign token {:?}", tok.text)))?;
    Ok((ArrowId(id), rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn hopf_pp() -> GaussDiagram {
        GaussDiagram::parse("comp1: T1 H2\ncomp2: H1 T2\nsigns: 1:+ 2:+\n").unwrap()
    }

    #[test]
    fn parse_empty() {
        let d = GaussDiagram::parse("comp1:\ncomp2:\nsigns:\n").unwrap();
        assert_eq!(d.arrow_count(), 0);
        assert_eq!(d.serialize(), "comp1:\ncomp2:\nsigns:\n");
    }

    #[test]
    fn parse_hopf() {
        let d = hopf_pp();
        assert_eq!(d.arrow_count(), 2);
        let a1 = d.arrow(ArrowId(1)).unwrap();
        assert_eq!(a1.tail, Endpoint { comp: Comp::C1, pos: 0 });
        assert_eq!(a1.head, Endpoint { comp: Comp::C2, pos: 0 });
        assert_eq!(a1.sign, Sign::Plus);
        assert!(!a1.is_self());
    }

    #[test]
    fn parse_missing_head() {
        let err = GaussDiagram::parse("comp1: T1\ncomp2:\nsigns: 1:+\n").unwrap_err();
        match err {
            DiagramError::Parse { line, col, msg } => {
                assert_eq!((line, col), (1, 8));
                assert!(msg.contains("no head"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_duplicate_end() {
        let err = GaussDiagram::parse("comp1: T1 T1 H1\ncomp2:\nsigns: 1:+\n").unwrap_err();
        assert!(matches!(err, DiagramError::Parse { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn parse_unknown_sign() {
        let err = GaussDiagram::parse("comp1: T1\ncomp2: H1\nsigns: 1:*\n").unwrap_err();
        assert!(err.to_string().contains("unknown sign"), "{err}");
    }

    #[test]
    fn parse_bad_token_column() {
        let err = GaussDiagram::parse("comp1: T1 X2\ncomp2: H1\nsigns: 1:+\n").unwrap_err();
        match err {
            DiagramError::Parse { line, col, .. } => assert_eq!((line, col), (1, 11)),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn serialize_round_trip_idempotent() {
        let d = hopf_pp();
        let s1 = d.serialize();
        let d2 = GaussDiagram::parse(&s1).unwrap();
        assert_eq!(d2.serialize(), s1);
        assert!(d.is_isomorphic(&d2));
    }

    #[test]
    fn rotation_invariance_of_serialization() {
        let d = hopf_pp();
        for k in 0..2 {
            assert_eq!(d.rotated(Comp::C1, k).serialize(), d.serialize());
            assert_eq!(d.rotated(Comp::C2, k).serialize(), d.serialize());
        }
    }

    #[test]
    fn canonical_distinguishes_signs() {
        let pp = hopf_pp();
        let pm = GaussDiagram::parse("comp1: T1 H2\ncomp2: H1 T2\nsigns: 1:+ 2:-\n").unwrap();
        assert_ne!(pp.canonical_form(), pm.canonical_form());
    }

    #[test]
    fn canonical_distinguishes_component_swap() {
        // One arrow tail-on-circle-1: swapping the component labels changes
        // the key.
        let d = GaussDiagram::parse("comp1: T1\ncomp2: H1\nsigns: 1:+\n").unwrap();
        let swapped = GaussDiagram::parse("comp1: H1\ncomp2: T1\nsigns: 1:+\n").unwrap();
        assert_ne!(d.canonical_form(), swapped.canonical_form());
    }

    #[test]
    fn canonical_invariant_under_relabeling() {
        let d = hopf_pp();
        let map = [(ArrowId(1), ArrowId(7)), (ArrowId(2), ArrowId(3))].into_iter().collect();
        let r = d.relabeled(&map).unwrap();
        assert_eq!(d.canonical_form(), r.canonical_form());
    }

    #[test]
    fn switch_is_involution() {
        let d = hopf_pp();
        let once = d.switch_crossing(ArrowId(1)).unwrap();
        let a = once.arrow(ArrowId(1)).unwrap();
        assert_eq!(a.sign, Sign::Minus);
        assert_eq!(a.tail.comp, Comp::C2);
        let twice = once.switch_crossing(ArrowId(1)).unwrap();
        assert!(d.is_isomorphic(&twice));
        assert_eq!(d, twice);
    }

    #[test]
    fn switch_unknown_arrow() {
        assert_eq!(
            hopf_pp().switch_crossing(ArrowId(9)).unwrap_err(),
            DiagramError::UnknownArrow(ArrowId(9))
        );
    }

    #[test]
    fn delete_arrows_cases() {
        let d = hopf_pp();
        assert_eq!(d.delete_arrows(&BTreeSet::new()).unwrap(), d);
        let all: BTreeSet<_> = d.arrow_ids().collect();
        assert_eq!(d.delete_arrows(&all).unwrap(), GaussDiagram::empty());
        let one = d.delete_arrows(&[ArrowId(2)].into_iter().collect()).unwrap();
        assert_eq!(one.arrow_count(), 1);
        assert_eq!(one.slot_count(Comp::C1), 1);
        assert_eq!(one.slot_count(Comp::C2), 1);
    }

    #[test]
    fn delete_composes() {
        let d = GaussDiagram::parse(
            "comp1: T1 H2 T3 H1\ncomp2: T2 H3\nsigns: 1:+ 2:- 3:+\n",
        )
        .unwrap();
        let s: BTreeSet<_> = [ArrowId(1)].into_iter().collect();
        let t: BTreeSet<_> = [ArrowId(3)].into_iter().collect();
        let both: BTreeSet<_> = s.union(&t).copied().collect();
        assert_eq!(
            d.delete_arrows(&both).unwrap(),
            d.delete_arrows(&s).unwrap().delete_arrows(&t).unwrap()
        );
    }

    #[test]
    fn slot_budget() {
        let d = GaussDiagram::parse("comp1: T1 H1 T2\ncomp2: H2\nsigns: 1:- 2:+\n").unwrap();
        assert_eq!(d.slot_count(Comp::C1) + d.slot_count(Comp::C2), 2 * d.arrow_count());
    }
}
