//! The bracket pairing of patterns with diagrams.
//!
//! `bracket(a, g)` counts, with signs, the sub-Gauss diagrams of `g` that
//! are isomorphic to the fixed-sign pattern `a`; the sign of a subdiagram
//! is the product of its arrow signs. Formulas are rational linear
//! combinations of patterns, where a pattern arrow may carry a wildcard
//! sign meaning "sum over both signs".
//!
//! Everything is exact: values are `BigRational` and the integer fast path
//! never rounds.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{BigRational, Zero};
use thiserror::Error;

use crate::diagram::{
    parse_code_lines, parse_err, rotation_key, split_sign_token, ArrowId, CanonicalForm, Comp,
    DiagramError, End, GaussDiagram, Sign,
};

/// Exact rational bracket value.
pub type BracketValue = BigRational;

/// Hard ceiling on pattern arity; the configurable cap must stay below it
/// so subdiagram keys fit in 128 bits.
pub const MAX_SUPPORTED_ARITY: usize = 8;

/// Default configurable arity cap.
pub const DEFAULT_ARITY_CAP: usize = 4;

/// Arrow count limit for the brute-force oracle.
pub const ORACLE_ARROW_LIMIT: usize = 10;

/// Pattern arrow sign: fixed or wildcard.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PatSign {
    Plus,
    Minus,
    Wild,
}

impl PatSign {
    pub fn symbol(self) -> char {
        match self {
            PatSign::Plus => '+',
            PatSign::Minus => '-',
            PatSign::Wild => '?',
        }
    }

    pub fn fixed(sign: Sign) -> PatSign {
        match sign {
            Sign::Plus => PatSign::Plus,
            Sign::Minus => PatSign::Minus,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BracketError {
    #[error("pattern has wildcard signs; expand them first")]
    Wildcards,
    #[error("pattern must have at least one arrow")]
    EmptyPattern,
    #[error("pattern arity {0} exceeds the cap {1}")]
    ArityCap(usize, usize),
    #[error("formula term {0:?} has zero coefficient")]
    ZeroCoefficient(String),
    #[error("diagram has {0} arrows; the oracle is limited to {1}")]
    OracleTooLarge(usize, usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A small Gauss diagram used as a matching template; arrow signs may be
/// fixed or wildcard.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pattern {
    circles: [Vec<(ArrowId, End)>; 2],
    signs: BTreeMap<ArrowId, PatSign>,
}

impl Pattern {
    pub fn new(
        circles: [Vec<(ArrowId, End)>; 2],
        signs: &BTreeMap<ArrowId, PatSign>,
    ) -> Result<Self, BracketError> {
        // Reuse the diagram validator for the slot structure.
        let dummy: BTreeMap<ArrowId, Sign> = signs.keys().map(|id| (*id, Sign::Plus)).collect();
        GaussDiagram::new(circles.clone(), &dummy)?;
        let p = Pattern { circles, signs: signs.clone() };
        if p.arity() == 0 {
            return Err(BracketError::EmptyPattern);
        }
        if p.arity() > MAX_SUPPORTED_ARITY {
            return Err(BracketError::ArityCap(p.arity(), MAX_SUPPORTED_ARITY));
        }
        Ok(p)
    }

    pub fn from_diagram(d: &GaussDiagram) -> Result<Self, BracketError> {
        let signs = d.arrows().map(|a| (a.id, PatSign::fixed(a.sign))).collect();
        Pattern::new([d.circle(Comp::C1).to_vec(), d.circle(Comp::C2).to_vec()], &signs)
    }

    /// Fixed-sign patterns convert to plain diagrams.
    pub fn to_diagram(&self) -> Result<GaussDiagram, BracketError> {
        let mut signs = BTreeMap::new();
        for (id, s) in &self.signs {
            let sign = match s {
                PatSign::Plus => Sign::Plus,
                PatSign::Minus => Sign::Minus,
                PatSign::Wild => return Err(BracketError::Wildcards),
            };
            signs.insert(*id, sign);
        }
        Ok(GaussDiagram::new(self.circles.clone(), &signs)?)
    }

    pub fn arity(&self) -> usize {
        self.signs.len()
    }

    pub fn circle(&self, comp: Comp) -> &[(ArrowId, End)] {
        &self.circles[comp.index()]
    }

    pub fn sign(&self, id: ArrowId) -> Option<PatSign> {
        self.signs.get(&id).copied()
    }

    pub fn wildcard_ids(&self) -> Vec<ArrowId> {
        self.signs.iter().filter(|(_, s)| **s == PatSign::Wild).map(|(id, _)| *id).collect()
    }

    pub fn has_wildcards(&self) -> bool {
        self.signs.values().any(|s| *s == PatSign::Wild)
    }

    /// All sign assignments of the wildcard arrows, fixed signs untouched.
    /// Deterministic order: wildcard arrows in id order, `+` before `-`.
    pub fn expand_wildcards(&self) -> Vec<Pattern> {
        let wild = self.wildcard_ids();
        let w = wild.len();
        let mut out = Vec::with_capacity(1 << w);
        for mask in 0u32..(1 << w) {
            let mut signs = self.signs.clone();
            for (i, id) in wild.iter().enumerate() {
                let bit = (mask >> (w - 1 - i)) & 1;
                signs.insert(*id, if bit == 0 { PatSign::Plus } else { PatSign::Minus });
            }
            out.push(Pattern { circles: self.circles.clone(), signs });
        }
        out
    }

    /// Rotation- and relabeling-invariant key (wildcards participate as a
    /// third sign value).
    pub fn canonical_form(&self) -> CanonicalForm {
        let n1 = self.circles[0].len().max(1);
        let n2 = self.circles[1].len().max(1);
        let mut best: Option<Vec<u8>> = None;
        for r1 in 0..n1 {
            for r2 in 0..n2 {
                let key = rotation_key(&self.circles, r1, r2, |id| match self.signs[&id] {
                    PatSign::Plus => 0,
                    PatSign::Minus => 1,
                    PatSign::Wild => 2,
                });
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        CanonicalForm(best.expect("at least one rotation"))
    }

    pub fn is_isomorphic(&self, other: &Pattern) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Gauss-code grammar with signs in `{+,-,?}`.
    pub fn parse(text: &str) -> Result<Self, BracketError> {
        let raw = parse_code_lines(text)?;
        let mut signs = BTreeMap::new();
        for tok in &raw.sign_tokens {
            let (id, rest) = split_sign_token(tok)?;
            let sign = match rest {
                "+" => PatSign::Plus,
                "-" => PatSign::Minus,
                "?" => PatSign::Wild,
                _ => {
                    return Err(parse_err(tok.line, tok.col, format!("unknown sign {:?}", rest)).into())
                }
            };
            if signs.insert(id, sign).is_some() {
                return Err(parse_err(tok.line, tok.col, format!("duplicate sign for arrow {id}")).into());
            }
        }
        // Route structural problems through the positioned reporter.
        let dummy: BTreeMap<ArrowId, Sign> = signs.keys().map(|id| (*id, Sign::Plus)).collect();
        if let Err(e) = GaussDiagram::new(raw.circles.clone(), &dummy) {
            return Err(raw.position_error(e).into());
        }
        Pattern::new(raw.circles, &signs)
    }

    /// Canonical text form, mirroring diagram serialization.
    pub fn serialize(&self) -> String {
        let n1 = self.circles[0].len().max(1);
        let n2 = self.circles[1].len().max(1);
        let mut best: Option<(Vec<u8>, usize, usize)> = None;
        for r1 in 0..n1 {
            for r2 in 0..n2 {
                let key = rotation_key(&self.circles, r1, r2, |id| match self.signs[&id] {
                    PatSign::Plus => 0,
                    PatSign::Minus => 1,
                    PatSign::Wild => 2,
                });
                match &best {
                    Some((k, _, _)) if *k <= key => {}
                    _ => best = Some((key, r1, r2)),
                }
            }
        }
        let (_, r1, r2) = best.expect("at least one rotation");
        let (order, renumber) = crate::diagram::first_appearance(&self.circles, r1, r2);
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
            out.push_str(&format!(" {}:{}", renumber[id], self.signs[id].symbol()));
        }
        out.push('\n');
        out
    }
}

/// Rational-coefficient linear combination of patterns.
#[derive(Clone, PartialEq, Debug)]
pub struct Formula {
    pub name: String,
    terms: Vec<(BigRational, Pattern)>,
}

impl Formula {
    pub fn new(name: impl Into<String>, terms: Vec<(BigRational, Pattern)>) -> Result<Self, BracketError> {
        Self::with_cap(name, terms, DEFAULT_ARITY_CAP)
    }

    pub fn with_cap(
        name: impl Into<String>,
        terms: Vec<(BigRational, Pattern)>,
        cap: usize,
    ) -> Result<Self, BracketError> {
        let name = name.into();
        for (coeff, pat) in &terms {
            if coeff.is_zero() {
                return Err(BracketError::ZeroCoefficient(name));
            }
            if pat.arity() > cap.min(MAX_SUPPORTED_ARITY) {
                return Err(BracketError::ArityCap(pat.arity(), cap.min(MAX_SUPPORTED_ARITY)));
            }
        }
        Ok(Formula { name, terms })
    }

    pub fn terms(&self) -> &[(BigRational, Pattern)] {
        &self.terms
    }

    pub fn max_arity(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.arity()).max().unwrap_or(0)
    }

    /// Single-pattern formula with coefficient 1.
    pub fn of_pattern(name: impl Into<String>, p: Pattern) -> Self {
        Formula { name: name.into(), terms: vec![(BigRational::from_integer(1.into()), p)] }
    }
}

/// Packed rotation-minimal key of a subdiagram with at most
/// [`MAX_SUPPORTED_ARITY`] arrows.
pub(crate) type SubKey = u128;

const SLOT_BITS: u32 = 5;

/// Packs one rotation of a small two-circle slot configuration.
/// `slots[c]` lists `(dense arrow index, end, sign)` in circle order.
fn pack_rotation(slots: &[&[(u8, End, Sign)]; 2], r: [usize; 2]) -> SubKey {
    let mut number = [u8::MAX; MAX_SUPPORTED_ARITY];
    let mut next = 0u8;
    let mut key: SubKey = ((slots[0].len() as SubKey) << 5) | slots[1].len() as SubKey;
    for c in 0..2 {
        let seq = slots[c];
        for k in 0..seq.len() {
            let (dense, end, sign) = seq[(r[c] + k) % seq.len()];
            let n = &mut number[dense as usize];
            if *n == u8::MAX {
                *n = next;
                next += 1;
            }
            let slot = (match end {
                End::Tail => 0u128,
                End::Head => 1,
            } << 4)
                | ((*n as u128) << 1)
                | match sign {
                    Sign::Plus => 0,
                    Sign::Minus => 1,
                };
            key = (key << SLOT_BITS) | slot;
        }
    }
    key
}

fn min_key(slots: [&[(u8, End, Sign)]; 2]) -> SubKey {
    let n1 = slots[0].len().max(1);
    let n2 = slots[1].len().max(1);
    let mut best = SubKey::MAX;
    for r1 in 0..n1 {
        for r2 in 0..n2 {
            let key = pack_rotation(&slots, [r1, r2]);
            if key < best {
                best = key;
            }
        }
    }
    best
}

/// Key of a whole fixed-sign pattern.
fn pattern_key(p: &Pattern) -> Result<SubKey, BracketError> {
    let ids: Vec<ArrowId> = p.signs.keys().copied().collect();
    let mut slots: [Vec<(u8, End, Sign)>; 2] = [Vec::new(), Vec::new()];
    for comp in Comp::BOTH {
        for &(id, end) in p.circle(comp) {
            let dense = ids.binary_search(&id).unwrap() as u8;
            let sign = match p.signs[&id] {
                PatSign::Plus => Sign::Plus,
                PatSign::Minus => Sign::Minus,
                PatSign::Wild => return Err(BracketError::Wildcards),
            };
            slots[comp.index()].push((dense, end, sign));
        }
    }
    Ok(min_key([&slots[0], &slots[1]]))
}

/// Shared subset sweep: signed counts of the subdiagram classes of `g`
/// listed in `wanted`, for one arity.
fn signed_class_counts(g: &GaussDiagram, arity: usize, wanted: &HashMap<SubKey, usize>) -> Vec<i64> {
    let mut counts = vec![0i64; wanted.len()];
    let n = g.arrow_count();
    if arity == 0 || arity > n {
        return counts;
    }
    let ids: Vec<ArrowId> = g.arrow_ids().collect();
    let signs: Vec<Sign> = ids.iter().map(|id| g.arrow(*id).unwrap().sign).collect();
    // Slot views with dense arrow indices, for cheap per-subset filtering.
    let mut slot_view: [Vec<(u32, End, Sign)>; 2] = [Vec::new(), Vec::new()];
    for comp in Comp::BOTH {
        for &(id, end) in g.circle(comp) {
            let dense = ids.binary_search(&id).unwrap() as u32;
            slot_view[comp.index()].push((dense, end, signs[dense as usize]));
        }
    }

    // Lexicographic subsets over the sorted id list.
    let mut idx: Vec<usize> = (0..arity).collect();
    let mut member = vec![false; n];
    let mut sub: [Vec<(u8, End, Sign)>; 2] = [Vec::new(), Vec::new()];
    loop {
        let mut sign_prod = 1i64;
        for &i in &idx {
            member[i] = true;
            sign_prod *= signs[i].value();
        }
        sub[0].clear();
        sub[1].clear();
        for c in 0..2 {
            for &(dense, end, sign) in &slot_view[c] {
                if member[dense as usize] {
                    // Renumber densely within the subset (position of `dense`
                    // among the chosen indices).
                    let local = idx.iter().position(|&i| i == dense as usize).unwrap() as u8;
                    sub[c].push((local, end, sign));
                }
            }
        }
        let key = min_key([&sub[0], &sub[1]]);
        if let Some(&slot) = wanted.get(&key) {
            counts[slot] += sign_prod;
        }
        for &i in &idx {
            member[i] = false;
        }
        // Advance the combination.
        let mut i = arity;
        loop {
            if i == 0 {
                return counts;
            }
            i -= 1;
            if idx[i] != i + n - arity {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..arity {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Preprocessed joint evaluation table for a set of formulas. Wildcards are
/// expanded once; isomorphic expanded patterns are merged by linearity.
pub struct FormulaTable {
    n_formulas: usize,
    /// arity -> (key -> count slot), plus per-slot coefficient lists.
    by_arity: BTreeMap<usize, (HashMap<SubKey, usize>, Vec<Vec<(usize, BigRational)>>)>,
}

impl FormulaTable {
    pub fn new(formulas: &[&Formula]) -> Result<Self, BracketError> {
        let mut by_arity: BTreeMap<usize, (HashMap<SubKey, usize>, Vec<Vec<(usize, BigRational)>>)> =
            BTreeMap::new();
        for (fidx, f) in formulas.iter().enumerate() {
            for (coeff, pat) in f.terms() {
                for fixed in pat.expand_wildcards() {
                    let key = pattern_key(&fixed)?;
                    let entry = by_arity.entry(fixed.arity()).or_default();
                    let slot = *entry.0.entry(key).or_insert_with(|| {
                        entry.1.push(Vec::new());
                        entry.1.len() - 1
                    });
                    let coeffs = &mut entry.1[slot];
                    match coeffs.iter_mut().find(|(i, _)| *i == fidx) {
                        Some((_, c)) => *c += coeff,
                        None => coeffs.push((fidx, coeff.clone())),
                    }
                }
            }
        }
        Ok(FormulaTable { n_formulas: formulas.len(), by_arity })
    }

    /// Exact values of all formulas on one diagram, in input order.
    pub fn evaluate(&self, g: &GaussDiagram) -> Vec<BracketValue> {
        let mut totals = vec![BigRational::zero(); self.n_formulas];
        for (&arity, (wanted, coeffs)) in &self.by_arity {
            let counts = signed_class_counts(g, arity, wanted);
            for (slot, &count) in counts.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let count = BigRational::from_integer(count.into());
                for (fidx, coeff) in &coeffs[slot] {
                    totals[*fidx] += coeff * &count;
                }
            }
        }
        totals
    }
}

/// Signed count of subdiagrams of `g` isomorphic to the fixed-sign pattern
/// `a`: the bracket pairing.
pub fn bracket(a: &Pattern, g: &GaussDiagram) -> Result<BracketValue, BracketError> {
    if a.has_wildcards() {
        return Err(BracketError::Wildcards);
    }
    let key = pattern_key(a)?;
    let wanted = HashMap::from([(key, 0usize)]);
    let counts = signed_class_counts(g, a.arity(), &wanted);
    Ok(BigRational::from_integer(counts[0].into()))
}

/// Exact value of a formula on a diagram, wildcards expanded bilinearly.
pub fn evaluate(f: &Formula, g: &GaussDiagram) -> BracketValue {
    let table = FormulaTable::new(&[f]).expect("formula was validated on construction");
    table.evaluate(g).pop().unwrap()
}

/// Exact values of several formulas sharing one subset sweep per arity.
pub fn evaluate_many(formulas: &[&Formula], g: &GaussDiagram) -> Vec<BracketValue> {
    let table = FormulaTable::new(formulas).expect("formulas were validated on construction");
    table.evaluate(g)
}

/// Independent oracle: enumerates all `2^n` arrow subsets of `g` and tests
/// each subdiagram against each expanded pattern by exhaustive rotation
/// search. Shares no code with the keyed sweep above.
pub fn brute_force_oracle(f: &Formula, g: &GaussDiagram) -> Result<BracketValue, BracketError> {
    let n = g.arrow_count();
    if n > ORACLE_ARROW_LIMIT {
        return Err(BracketError::OracleTooLarge(n, ORACLE_ARROW_LIMIT));
    }
    // Expand wildcards by direct sign-assignment enumeration.
    let mut expanded: Vec<(BigRational, GaussDiagram)> = Vec::new();
    for (coeff, pat) in f.terms() {
        let wild = pat.wildcard_ids();
        for mask in 0u32..(1 << wild.len()) {
            let mut signs: BTreeMap<ArrowId, Sign> = BTreeMap::new();
            for (id, s) in pat
                .circles()
                .iter()
                .flatten()
                .map(|(id, _)| (*id, pat.sign(*id).unwrap()))
            {
                let sign = match s {
                    PatSign::Plus => Sign::Plus,
                    PatSign::Minus => Sign::Minus,
                    PatSign::Wild => {
                        let bit = wild.iter().position(|w| *w == id).unwrap();
                        if (mask >> (wild.len() - 1 - bit)) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    }
                };
                signs.insert(id, sign);
            }
            let d = GaussDiagram::new(
                [pat.circle(Comp::C1).to_vec(), pat.circle(Comp::C2).to_vec()],
                &signs,
            )?;
            expanded.push((coeff.clone(), d));
        }
    }

    let ids: Vec<ArrowId> = g.arrow_ids().collect();
    let mut total = BigRational::zero();
    for mask in 0u32..(1u32 << n) {
        let keep: BTreeSet<ArrowId> =
            ids.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, id)| *id).collect();
        let drop: BTreeSet<ArrowId> = ids.iter().filter(|id| !keep.contains(id)).copied().collect();
        let sub = g.delete_arrows(&drop)?;
        let sign: i64 = keep.iter().map(|id| g.arrow(*id).unwrap().sign.value()).product();
        for (coeff, pat) in &expanded {
            if pat.arrow_count() == sub.arrow_count() && isomorphic_by_rotation_search(&sub, pat) {
                total += coeff * BigRational::from_integer(sign.into());
            }
        }
    }
    Ok(total)
}

impl Pattern {
    fn circles(&self) -> &[Vec<(ArrowId, End)>; 2] {
        &self.circles
    }
}

/// Direct isomorphism test: tries every rotation pair of `a`, building the
/// arrow bijection on the fly.
fn isomorphic_by_rotation_search(a: &GaussDiagram, b: &GaussDiagram) -> bool {
    if a.slot_count(Comp::C1) != b.slot_count(Comp::C1)
        || a.slot_count(Comp::C2) != b.slot_count(Comp::C2)
    {
        return false;
    }
    let n1 = a.slot_count(Comp::C1).max(1);
    let n2 = a.slot_count(Comp::C2).max(1);
    for r1 in 0..n1 {
        for r2 in 0..n2 {
            if rotation_matches(a, b, r1, r2) {
                return true;
            }
        }
    }
    false
}

fn rotation_matches(a: &GaussDiagram, b: &GaussDiagram, r1: usize, r2: usize) -> bool {
    let mut map: BTreeMap<ArrowId, ArrowId> = BTreeMap::new();
    let mut rev: BTreeMap<ArrowId, ArrowId> = BTreeMap::new();
    for comp in Comp::BOTH {
        let sa = a.circle(comp);
        let sb = b.circle(comp);
        let rot = [r1, r2][comp.index()];
        for k in 0..sa.len() {
            let (ia, ea) = sa[(rot + k) % sa.len()];
            let (ib, eb) = sb[k];
            if ea != eb {
                return false;
            }
            if let Some(prev) = map.get(&ia) {
                if *prev != ib {
                    return false;
                }
            } else {
                if rev.contains_key(&ib) {
                    return false;
                }
                map.insert(ia, ib);
                rev.insert(ib, ia);
            }
            if a.arrow(ia).unwrap().sign != b.arrow(ib).unwrap().sign {
                return false;
            }
        }
    }
    true
}

/// Formats a rational without spaces: `p/q`, or just `p` for integers.
pub fn rational_string(v: &BracketValue) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p/q` or an integer, with optional leading minus.
pub fn parse_rational(s: &str) -> Option<BracketValue> {
    use num::BigInt;
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf(s1: char, s2: char) -> GaussDiagram {
        GaussDiagram::parse(&format!("comp1: T1 H2\ncomp2: H1 T2\nsigns: 1:{s1} 2:{s2}\n")).unwrap()
    }

    fn lk_pattern() -> Pattern {
        Pattern::parse("comp1: T1\ncomp2: H1\nsigns: 1:?\n").unwrap()
    }

    fn lk_formula() -> Formula {
        Formula::of_pattern("lk", lk_pattern())
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn expand_no_wildcards() {
        let p = Pattern::parse("comp1: T1\ncomp2: H1\nsigns: 1:+\n").unwrap();
        assert_eq!(p.expand_wildcards(), vec![p]);
    }

    #[test]
    fn expand_one_wildcard() {
        let e = lk_pattern().expand_wildcards();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].sign(ArrowId(1)), Some(PatSign::Plus));
        assert_eq!(e[1].sign(ArrowId(1)), Some(PatSign::Minus));
    }

    #[test]
    fn expand_two_of_three() {
        let p = Pattern::parse("comp1: T1 T2 T3\ncomp2: H1 H2 H3\nsigns: 1:? 2:+ 3:?\n").unwrap();
        let e = p.expand_wildcards();
        assert_eq!(e.len(), 4);
        let combos: Vec<(PatSign, PatSign)> =
            e.iter().map(|q| (q.sign(ArrowId(1)).unwrap(), q.sign(ArrowId(3)).unwrap())).collect();
        assert_eq!(
            combos,
            vec![
                (PatSign::Plus, PatSign::Plus),
                (PatSign::Plus, PatSign::Minus),
                (PatSign::Minus, PatSign::Plus),
                (PatSign::Minus, PatSign::Minus),
            ]
        );
        for q in &e {
            assert_eq!(q.sign(ArrowId(2)), Some(PatSign::Plus));
        }
    }

    #[test]
    fn bracket_identity_case() {
        // a = g: only the full subdiagram matches; value is the sign product.
        let g = hopf('+', '-');
        let a = Pattern::from_diagram(&g).unwrap();
        assert_eq!(bracket(&a, &g).unwrap(), rat(-1));
    }

    #[test]
    fn bracket_on_empty_diagram() {
        let a = Pattern::parse("comp1: T1\ncomp2: H1\nsigns: 1:+\n").unwrap();
        assert_eq!(bracket(&a, &GaussDiagram::empty()).unwrap(), rat(0));
    }

    #[test]
    fn bracket_rejects_wildcards() {
        assert_eq!(bracket(&lk_pattern(), &hopf('+', '+')).unwrap_err(), BracketError::Wildcards);
    }

    #[test]
    fn lk_of_hopf_variants() {
        // Brute-force derived: the single 1->2 arrow of Hopf(s1,s2) carries s1.
        assert_eq!(evaluate(&lk_formula(), &hopf('+', '+')), rat(1));
        assert_eq!(evaluate(&lk_formula(), &hopf('-', '-')), rat(-1));
        assert_eq!(evaluate(&lk_formula(), &GaussDiagram::empty()), rat(0));
    }

    #[test]
    fn oracle_agrees_on_hopf() {
        let f = lk_formula();
        for (s1, s2) in [('+', '+'), ('+', '-'), ('-', '+'), ('-', '-')] {
            let g = hopf(s1, s2);
            assert_eq!(evaluate(&f, &g), brute_force_oracle(&f, &g).unwrap());
        }
    }

    #[test]
    fn oracle_size_guard() {
        let mut c1 = Vec::new();
        let mut signs = BTreeMap::new();
        for i in 1..=11u32 {
            c1.push((ArrowId(i), End::Tail));
            c1.push((ArrowId(i), End::Head));
            signs.insert(ArrowId(i), Sign::Plus);
        }
        let g = GaussDiagram::new([c1, Vec::new()], &signs).unwrap();
        assert_eq!(
            brute_force_oracle(&lk_formula(), &g).unwrap_err(),
            BracketError::OracleTooLarge(11, ORACLE_ARROW_LIMIT)
        );
    }

    #[test]
    fn bilinearity() {
        let p1 = Pattern::parse("comp1: T1\ncomp2: H1\nsigns: 1:?\n").unwrap();
        let p2 = Pattern::parse("comp1: H1\ncomp2: T1\nsigns: 1:+\n").unwrap();
        let g = hopf('+', '+');
        let f1 = Formula::of_pattern("f1", p1.clone());
        let f2 = Formula::of_pattern("f2", p2.clone());
        let combo = Formula::new(
            "combo",
            vec![(rat(3), p1), (BigRational::new((-2).into(), 5.into()), p2)],
        )
        .unwrap();
        let expect = rat(3) * evaluate(&f1, &g) + BigRational::new((-2).into(), 5.into()) * evaluate(&f2, &g);
        assert_eq!(evaluate(&combo, &g), expect);
    }

    #[test]
    fn zero_coefficient_rejected() {
        let err = Formula::new("bad", vec![(rat(0), lk_pattern())]).unwrap_err();
        assert_eq!(err, BracketError::ZeroCoefficient("bad".into()));
    }

    #[test]
    fn pattern_arity_cap() {
        let p = Pattern::parse(
            "comp1: T1 T2 T3 T4 T5\ncomp2: H1 H2 H3 H4 H5\nsigns: 1:+ 2:+ 3:+ 4:+ 5:+\n",
        )
        .unwrap();
        let err = Formula::new("big", vec![(rat(1), p)]).unwrap_err();
        assert_eq!(err, BracketError::ArityCap(5, DEFAULT_ARITY_CAP));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-1/3"), Some(BigRational::new((-1).into(), 3.into())));
        assert_eq!(parse_rational("4"), Some(rat(4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
