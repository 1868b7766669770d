//! Text format for pattern and formula files.
//!
//! A file holds named pattern blocks (Gauss-code grammar with signs in
//! `{+,-,?}`) and named formulas referencing them:
//!
//! ```text
//! # linking number, over-passages of component 1
//! pattern one_12
//! comp1: T1
//! comp2: H1
//! signs: 1:?
//!
//! formula lk_12
//! term 1 one_12
//! ```
//!
//! `term` lines carry an exact rational coefficient (`p/q` or an integer).

use std::collections::BTreeMap;

use crate::bracket::{parse_rational, BracketError, Formula, Pattern, DEFAULT_ARITY_CAP};
use crate::diagram::parse_err;

/// Parsed contents of a formula file: shared named patterns plus formulas
/// in file order.
#[derive(Debug)]
pub struct FormulaSet {
    pub patterns: BTreeMap<String, Pattern>,
    pub formulas: Vec<Formula>,
}

impl FormulaSet {
    pub fn parse(text: &str) -> Result<Self, BracketError> {
        Self::parse_with_cap(text, DEFAULT_ARITY_CAP)
    }

    pub fn parse_with_cap(text: &str, cap: usize) -> Result<Self, BracketError> {
        let lines: Vec<&str> = text.split('\n').collect();
        let mut patterns: BTreeMap<String, Pattern> = BTreeMap::new();
        let mut formulas: Vec<(usize, String, Vec<(num::BigRational, Pattern)>)> = Vec::new();
        let mut i = 0;
        while i < lines.len() {
            let line_no = i + 1;
            let line = lines[i].trim_end();
            let mut words = line.split_whitespace();
            match words.next() {
                None => i += 1,
                Some(w) if w.starts_with('#') => i += 1,
                Some("pattern") => {
                    let name = words
                        .next()
                        .ok_or_else(|| parse_err(line_no, 1, "pattern needs a name"))?
                        .to_string();
                    if words.next().is_some() {
                        return Err(parse_err(line_no, 1, "trailing tokens after pattern name").into());
                    }
                    if patterns.contains_key(&name) {
                        return Err(parse_err(line_no, 1, format!("duplicate pattern {name:?}")).into());
                    }
                    if i + 3 >= lines.len() + 1 && lines.len() < i + 4 {
                        return Err(parse_err(line_no, 1, "pattern block needs three code lines").into());
                    }
                    let block: Vec<&str> = lines
                        .get(i + 1..i + 4)
                        .ok_or_else(|| parse_err(line_no, 1, "pattern block needs three code lines"))?
                        .to_vec();
                    let pat = Pattern::parse(&format!("{}\n{}\n{}\n", block[0], block[1], block[2]))
                        .map_err(|e| offset_error(e, i + 1))?;
                    patterns.insert(name, pat);
                    i += 4;
                }
                Some("formula") => {
                    let name = words
                        .next()
                        .ok_or_else(|| parse_err(line_no, 1, "formula needs a name"))?
                        .to_string();
                    if formulas.iter().any(|(_, n, _)| *n == name) {
                        return Err(parse_err(line_no, 1, format!("duplicate formula {name:?}")).into());
                    }
                    formulas.push((line_no, name, Vec::new()));
                    i += 1;
                }
                Some("term") => {
                    let coeff_str = words
                        .next()
                        .ok_or_else(|| parse_err(line_no, 1, "term needs a coefficient"))?;
                    let pat_name = words
                        .next()
                        .ok_or_else(|| parse_err(line_no, 1, "term needs a pattern name"))?;
                    let coeff = parse_rational(coeff_str)
                        .ok_or_else(|| parse_err(line_no, 6, format!("bad rational {coeff_str:?}")))?;
                    let pat = patterns
                        .get(pat_name)
                        .ok_or_else(|| parse_err(line_no, 1, format!("unknown pattern {pat_name:?}")))?
                        .clone();
                    let target = formulas
                        .last_mut()
                        .ok_or_else(|| parse_err(line_no, 1, "term before any formula"))?;
                    target.2.push((coeff, pat));
                    i += 1;
                }
                Some(other) => {
                    return Err(parse_err(line_no, 1, format!("unknown directive {other:?}")).into())
                }
            }
        }
        let mut out = Vec::new();
        for (line_no, name, terms) in formulas {
            if terms.is_empty() {
                return Err(parse_err(line_no, 1, format!("formula {name:?} has no terms")).into());
            }
            out.push(Formula::with_cap(name, terms, cap)?);
        }
        Ok(FormulaSet { patterns, formulas: out })
    }

    pub fn formula(&self, name: &str) -> Option<&Formula> {
        self.formulas.iter().find(|f| f.name == name)
    }
}

fn offset_error(e: BracketError, offset: usize) -> BracketError {
    match e {
        BracketError::Diagram(crate::diagram::DiagramError::Parse { line, col, msg }) => {
            parse_err(line + offset, col, msg).into()
        }
        other => other,
    }
}

/// Formula files shipped with the crate.
pub mod builtin {
    use super::FormulaSet;
    use crate::bracket::Formula;

    pub const LK: &str = include_str!("../../../formulas/lk.formula");
    pub const ORDER3_SPLIT: &str = include_str!("../../../formulas/order3_split.formula");
    pub const ORDER3_SUM: &str = include_str!("../../../formulas/order3_sum.formula");
    pub const OPV_SUM: &str = include_str!("../../../formulas/opv_sum.formula");
    pub const WRITHE_LIKE: &str = include_str!("../../../formulas/writhe_like.formula");

    fn parse(name: &str, text: &str) -> FormulaSet {
        FormulaSet::parse(text).unwrap_or_else(|e| panic!("builtin {name} is well-formed: {e}"))
    }

    /// Both one-arrow linking number formulas.
    pub fn lk() -> FormulaSet {
        parse("lk", LK)
    }

    /// The four sign-split degree-3 invariants.
    pub fn order3_split() -> FormulaSet {
        parse("order3_split", ORDER3_SPLIT)
    }

    /// The three sign-summed degree-3 invariants.
    pub fn order3_sum() -> FormulaSet {
        parse("order3_sum", ORDER3_SUM)
    }

    /// The classical combined degree-3 invariant.
    pub fn opv_sum() -> FormulaSet {
        parse("opv_sum", OPV_SUM)
    }

    /// Deliberately non-invariant probe for the fuzz harness.
    pub fn writhe_like() -> FormulaSet {
        parse("writhe_like", WRITHE_LIKE)
    }

    /// The seven invariants under test, in report order:
    /// `w1_plus, w2_plus, w1_minus, w2_minus, w1, w2, w3`.
    pub fn seven() -> Vec<Formula> {
        let mut out = order3_split().formulas;
        out.extend(order3_sum().formulas);
        out
    }

    /// The seven invariants plus the combined sum.
    pub fn eight() -> Vec<Formula> {
        let mut out = seven();
        out.extend(opv_sum().formulas);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::evaluate;
    use crate::diagram::GaussDiagram;
    use num::BigRational;

    #[test]
    fn parse_simple_set() {
        let text = "\
# comment
pattern one
comp1: T1
comp2: H1
signs: 1:?

formula lk
term 1 one

formula minus_third
term -1/3 one
";
        let set = FormulaSet::parse(text).unwrap();
        assert_eq!(set.patterns.len(), 1);
        assert_eq!(set.formulas.len(), 2);
        let hopf = GaussDiagram::parse("comp1: T1 H2\ncomp2: H1 T2\nsigns: 1:+ 2:+\n").unwrap();
        assert_eq!(evaluate(&set.formulas[0], &hopf), BigRational::from_integer(1.into()));
        assert_eq!(
            evaluate(&set.formulas[1], &hopf),
            BigRational::new((-1).into(), 3.into())
        );
    }

    #[test]
    fn unknown_pattern_is_reported() {
        let err = FormulaSet::parse("formula f\nterm 1 nope\n").unwrap_err();
        assert!(err.to_string().contains("unknown pattern"), "{err}");
    }

    #[test]
    fn term_before_formula() {
        let err = FormulaSet::parse("pattern p\ncomp1: T1\ncomp2: H1\nsigns: 1:+\nterm 1 p\n")
            .unwrap_err();
        assert!(err.to_string().contains("term before any formula"), "{err}");
    }

    #[test]
    fn pattern_error_lines_are_offset() {
        let err = FormulaSet::parse("pattern p\ncomp1: X1\ncomp2:\nsigns:\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn builtins_parse() {
        assert_eq!(builtin::lk().formulas.len(), 2);
        assert_eq!(builtin::seven().len(), 7);
        assert_eq!(builtin::eight().len(), 8);
        builtin::writhe_like();
    }
}
