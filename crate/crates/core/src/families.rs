//! Parametrized test-link families.
//!
//! Diagrams are produced by a small plat tracer: twist regions arranged in
//! a cyclic row, each region a vertical 2-braid with a fixed chirality,
//! tops and bottoms of neighboring regions joined by arcs. Tracing the
//! closed curves yields the Gauss code directly: passage order gives the
//! circle sequences, chirality and strand directions give the over/under
//! roles and signs.

use std::collections::BTreeMap;


use serde::Serialize;
use thiserror::Error;

use crate::bracket::{rational_string, FormulaTable};
use crate::diagram::{ArrowId, DiagramError, End, GaussDiagram, Sign};
use crate::formula::builtin;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilySpec {
    /// The two-parameter family with `m + n + 8` crossings; `m`, `n` odd.
    Lmn { m: u64, n: u64 },
    /// Two-crossing diagrams: a clasp for equal signs, a finger poke for
    /// opposite signs (the poke is the two-crossing unlink diagram).
    Hopf { s1: Sign, s2: Sign },
    /// The empty two-component diagram.
    Unlink,
    /// Closure of a single twist region with `crossings` crossings (even).
    TwistChain { crossings: u64, sign: Sign },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("L(m,n) requires odd positive parameters, got m={0}, n={1}")]
    BadLmn(u64, u64),
    #[error("twist chain needs an even crossing count, got {0}")]
    BadTwist(u64),
    #[error("construction yielded {0} components, expected 2")]
    Components(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// One passage of a curve through a crossing.
#[derive(Clone, Copy, Debug)]
struct Passage {
    curve: usize,
    index: usize,
    down: bool,
}

#[derive(Clone, Copy, Debug)]
struct TracedCrossing {
    over: Passage,
    under: Passage,
    chirality: i8,
}

#[doc(hidden)]
pub struct Traced {
    crossings: Vec<TracedCrossing>,
    curve_lens: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Corner {
    Tl,
    Tr,
    Bl,
    Br,
}

/// Traces the plat closure of twist regions `(crossing count, chirality)`.
#[doc(hidden)]
pub fn trace_plat(regions: &[(usize, i8)]) -> Traced {
    let k = regions.len();
    let total: usize = regions.iter().map(|r| r.0).sum();
    let offset: Vec<usize> = regions
        .iter()
        .scan(0, |acc, r| {
            let o = *acc;
            *acc += r.0;
            Some(o)
        })
        .collect();

    // Passages per crossing, filled as (role A, role B).
    let mut role_a: Vec<Option<Passage>> = vec![None; total];
    let mut role_b: Vec<Option<Passage>> = vec![None; total];
    let mut used: Vec<bool> = vec![false; 4 * k]; // region * 4 + corner
    let port = |r: usize, c: Corner| {
        r * 4
            + match c {
                Corner::Tl => 0,
                Corner::Tr => 1,
                Corner::Bl => 2,
                Corner::Br => 3,
            }
    };

    let mut curve_lens = Vec::new();
    for start_region in 0..k {
        for start_corner in [Corner::Tl, Corner::Tr, Corner::Bl, Corner::Br] {
            if used[port(start_region, start_corner)] {
                continue;
            }
            let curve = curve_lens.len();
            let mut len = 0usize;
            let mut region = start_region;
            let mut corner = start_corner;
            loop {
                // Enter the region at `corner`.
                used[port(region, corner)] = true;
                let down = matches!(corner, Corner::Tl | Corner::Tr);
                let mut side_left = matches!(corner, Corner::Tl | Corner::Bl);
                let n = regions[region].0;
                for j in 0..n {
                    let crossing = offset[region] + if down { j } else { n - 1 - j };
                    // Role A is the NW-SE strand: entered from the left going
                    // down, or from the right going up.
                    let is_a = down == side_left;
                    let passage = Passage { curve, index: len, down };
                    if is_a {
                        role_a[crossing] = Some(passage);
                    } else {
                        role_b[crossing] = Some(passage);
                    }
                    len += 1;
                    side_left = !side_left;
                }
                // Exit port.
                let exit_corner = match (down, side_left) {
                    (true, true) => Corner::Bl,
                    (true, false) => Corner::Br,
                    (false, true) => Corner::Tl,
                    (false, false) => Corner::Tr,
                };
                used[port(region, exit_corner)] = true;
                // Connection arcs: TR_i - TL_{i+1}, BR_i - BL_{i+1}, cyclically.
                let (next_region, next_corner) = match exit_corner {
                    Corner::Tr => ((region + 1) % k, Corner::Tl),
                    Corner::Tl => ((region + k - 1) % k, Corner::Tr),
                    Corner::Br => ((region + 1) % k, Corner::Bl),
                    Corner::Bl => ((region + k - 1) % k, Corner::Br),
                };
                region = next_region;
                corner = next_corner;
                if region == start_region && corner == start_corner {
                    break;
                }
            }
            curve_lens.push(len);
        }
    }

    let crossings = (0..total)
        .map(|i| {
            let a = role_a[i].expect("both passages traced");
            let b = role_b[i].expect("both passages traced");
            let region = (0..k).rfind(|r| offset[*r] <= i).unwrap();
            let chirality = regions[region].1;
            let (over, under) = if chirality > 0 { (a, b) } else { (b, a) };
            TracedCrossing { over, under, chirality }
        })
        .collect();
    Traced { crossings, curve_lens }
}

impl Traced {
    pub fn component_count(&self) -> usize {
        self.curve_lens.len()
    }

    /// Builds the Gauss diagram. `swap` exchanges the component labels of
    /// the two traced curves; `flip[c]` reverses the orientation of traced
    /// curve `c`.
    pub fn to_diagram(&self, swap: bool, flip: [bool; 2]) -> Result<GaussDiagram, FamilyError> {
        if self.component_count() != 2 {
            return Err(FamilyError::Components(self.component_count()));
        }
        let place = |p: Passage| -> (usize, usize, bool) {
            let index = if flip[p.curve] { self.curve_lens[p.curve] - 1 - p.index } else { p.index };
            let down = if flip[p.curve] { !p.down } else { p.down };
            let comp = if swap { 1 - p.curve } else { p.curve };
            (comp, index, down)
        };
        let mut slots: [Vec<(usize, ArrowId, End)>; 2] = [Vec::new(), Vec::new()];
        let mut signs = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            let id = ArrowId(i as u32 + 1);
            let (oc, oi, od) = place(c.over);
            let (uc, ui, ud) = place(c.under);
            slots[oc].push((oi, id, End::Tail));
            slots[uc].push((ui, id, End::Head));
            let same_dir = od == ud;
            let sign = if (c.chirality > 0) == same_dir { Sign::Minus } else { Sign::Plus };
            signs.insert(id, sign);
        }
        let mut circles = [Vec::new(), Vec::new()];
        for comp in 0..2 {
            slots[comp].sort_by_key(|(i, _, _)| *i);
            circles[comp] = slots[comp].iter().map(|(_, id, end)| (*id, *end)).collect();
        }
        Ok(GaussDiagram::new(circles, &signs)?)
    }
}

/// The frozen L(m,n) construction: four twist regions in a cyclic row,
/// `m` and `n` separated by the two 4-crossing clasps.
fn l_mn(m: u64, n: u64) -> Result<GaussDiagram, FamilyError> {
    if m == 0 || n == 0 || m % 2 == 0 || n % 2 == 0 {
        return Err(FamilyError::BadLmn(m, n));
    }
    let regions = [(m as usize, 1i8), (4, 1), (n as usize, -1), (4, 1)];
    let traced = trace_plat(&regions);
    traced.to_diagram(false, [false, false])
}

pub fn generate(spec: &FamilySpec) -> Result<GaussDiagram, FamilyError> {
    match *spec {
        FamilySpec::Unlink => Ok(GaussDiagram::empty()),
        FamilySpec::Hopf { s1, s2 } => {
            let text = if s1 == s2 {
                let s = s1.symbol();
                format!("comp1: T1 H2\ncomp2: H1 T2\nsigns: 1:{s} 2:{s}\n")
            } else {
                // Finger poke: component 1 slides over component 2.
                "comp1: T1 T2\ncomp2: H1 H2\nsigns: 1:+ 2:-\n".to_string()
            };
            Ok(GaussDiagram::parse(&text)?)
        }
        FamilySpec::TwistChain { crossings, sign } => {
            if crossings % 2 != 0 {
                return Err(FamilyError::BadTwist(crossings));
            }
            if crossings == 0 {
                return Ok(GaussDiagram::empty());
            }
            // Both strands run downward through the region, so each crossing
            // gets sign -chirality; the empty region routes the return arcs.
            let chirality = match sign {
                Sign::Plus => -1,
                Sign::Minus => 1,
            };
            trace_plat(&[(crossings as usize, chirality), (0, 1)]).to_diagram(false, [false, false])
        }
        FamilySpec::Lmn { m, n } => l_mn(m, n),
    }
}

/// Seed diagrams used by fuzzing and sampling harnesses.
pub fn corpus_seeds() -> Vec<(String, GaussDiagram)> {
    let mut out = Vec::new();
    let mut push = |name: &str, spec: FamilySpec| {
        out.push((name.to_string(), generate(&spec).expect("seed specs are valid")));
    };
    push("unlink", FamilySpec::Unlink);
    push("hopf_pp", FamilySpec::Hopf { s1: Sign::Plus, s2: Sign::Plus });
    push("hopf_pm", FamilySpec::Hopf { s1: Sign::Plus, s2: Sign::Minus });
    push("hopf_mp", FamilySpec::Hopf { s1: Sign::Minus, s2: Sign::Plus });
    push("hopf_mm", FamilySpec::Hopf { s1: Sign::Minus, s2: Sign::Minus });
    push("twist_4_p", FamilySpec::TwistChain { crossings: 4, sign: Sign::Plus });
    push("twist_6_m", FamilySpec::TwistChain { crossings: 6, sign: Sign::Minus });
    push("l_1_1", FamilySpec::Lmn { m: 1, n: 1 });
    push("l_3_1", FamilySpec::Lmn { m: 3, n: 1 });
    push("l_1_3", FamilySpec::Lmn { m: 1, n: 3 });
    push("l_3_3", FamilySpec::Lmn { m: 3, n: 3 });
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub family: String,
    pub m: u64,
    pub n: u64,
    pub formula: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Report {
    pub max_param: u64,
    pub rows: Vec<Table1Row>,
}

/// Evaluates the seven shipped invariants plus their combined sum on every
/// `L(m,n)` with odd parameters up to `max_param`.
pub fn table1_report(max_param: u64) -> Result<Table1Report, FamilyError> {
    let formulas = builtin::eight();
    let refs: Vec<&crate::bracket::Formula> = formulas.iter().collect();
    let table = FormulaTable::new(&refs).expect("builtin formulas are valid");
    let mut rows = Vec::new();
    for m in (1..=max_param).step_by(2) {
        for n in (1..=max_param).step_by(2) {
            let d = generate(&FamilySpec::Lmn { m, n })?;
            let values = table.evaluate(&d);
            for (f, v) in formulas.iter().zip(values) {
                rows.push(Table1Row {
                    family: "L_mn".to_string(),
                    m,
                    n,
                    formula: f.name.clone(),
                    value: rational_string(&v),
                });
            }
        }
    }
    Ok(Table1Report { max_param, rows })
}

impl Table1Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,m,n,formula,value\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.family, r.m, r.n, r.formula, r.value));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Symbolic Table 1 entry for one formula name at `(m, n)`, as published.
pub fn expected_table1_value(formula: &str, m: i64, n: i64) -> Option<i64> {
    match formula {
        "w1_plus" | "w2_plus" => Some(-n),
        "w1_minus" | "w2_minus" => Some(m),
        "w1" | "w2" => Some(m - n),
        "w3" => Some(0),
        "opv" => Some(2 * (m - n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;
    use crate::bracket::evaluate;
    use crate::formula::builtin;

    #[test]
    fn unlink_is_empty() {
        assert_eq!(generate(&FamilySpec::Unlink).unwrap(), GaussDiagram::empty());
    }

    #[test]
    fn hopf_lk_values() {
        let lk = builtin::lk();
        let lk12 = lk.formula("lk_12").unwrap();
        for (s1, s2, expect) in [
            (Sign::Plus, Sign::Plus, 1),
            (Sign::Minus, Sign::Minus, -1),
            (Sign::Plus, Sign::Minus, 0),
            (Sign::Minus, Sign::Plus, 0),
        ] {
            let d = generate(&FamilySpec::Hopf { s1, s2 }).unwrap();
            assert_eq!(evaluate(lk12, &d), BigRational::from_integer(expect.into()));
        }
    }

    #[test]
    fn twist_chain_matches_hand_hopf() {
        let chain = generate(&FamilySpec::TwistChain { crossings: 2, sign: Sign::Plus }).unwrap();
        let hopf = generate(&FamilySpec::Hopf { s1: Sign::Plus, s2: Sign::Plus }).unwrap();
        assert!(chain.is_isomorphic(&hopf), "{} vs {}", chain.serialize(), hopf.serialize());
    }

    #[test]
    fn twist_chain_lk_scales() {
        let lk = builtin::lk();
        let lk12 = lk.formula("lk_12").unwrap();
        for k in [2u64, 4, 6, 8] {
            let d = generate(&FamilySpec::TwistChain { crossings: k, sign: Sign::Plus }).unwrap();
            assert_eq!(d.arrow_count() as u64, k);
            assert_eq!(
                evaluate(lk12, &d),
                BigRational::from_integer((k as i64 / 2).into()),
                "chain {k}"
            );
        }
    }

    #[test]
    fn twist_chain_parity_validation() {
        assert_eq!(
            generate(&FamilySpec::TwistChain { crossings: 3, sign: Sign::Plus }).unwrap_err(),
            FamilyError::BadTwist(3)
        );
    }

    #[test]
    fn l_mn_validation() {
        for (m, n) in [(0, 1), (2, 1), (1, 4), (0, 0)] {
            assert_eq!(
                generate(&FamilySpec::Lmn { m, n }).unwrap_err(),
                FamilyError::BadLmn(m, n)
            );
        }
    }

    #[test]
    fn l_mn_arrow_count() {
        for (m, n) in [(1, 1), (3, 1), (1, 3), (5, 7)] {
            let d = generate(&FamilySpec::Lmn { m, n }).unwrap();
            assert_eq!(d.arrow_count() as u64, m + n + 8, "L({m},{n})");
        }
    }
}
