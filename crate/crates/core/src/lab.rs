//! Empirical invariant search.
//!
//! The lab enumerates a basis of fixed-sign patterns up to a given arity,
//! samples concrete move instances on a diagram corpus, records the
//! bracket difference of every basis pattern across each move as one exact
//! integer row, and solves `Mc = 0` by fraction-free elimination. Solved
//! coefficient vectors are then re-verified by independent walk fuzzing;
//! any violation carries a replayable transcript.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bracket::{
    rational_string, BracketError, BracketValue, Formula, FormulaTable, PatSign, Pattern,
    DEFAULT_ARITY_CAP,
};
use crate::diagram::{ArrowId, Comp, DiagramError, End, GaussDiagram};
use crate::moves::{all_instances, apply, random_walk, replay, MoveInstance, WalkConfig};
use crate::par::map_items;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabError {
    #[error("basis arity {0} outside 1..={1}")]
    ArityRange(usize, usize),
    #[error("unknown arrow {0}")]
    UnknownArrow(ArrowId),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Move(#[from] crate::moves::MoveError),
}

/// Ordered list of pairwise non-isomorphic fixed-sign patterns with at
/// most `max_arity` arrows.
pub struct PatternBasis {
    pub max_arity: usize,
    patterns: Vec<Pattern>,
}

impl PatternBasis {
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// Index of the basis entry isomorphic to `p`.
    pub fn index_of(&self, p: &Pattern) -> Option<usize> {
        let key = p.canonical_form();
        self.patterns.iter().position(|q| q.canonical_form() == key)
    }

    /// Basis coordinates of a formula: wildcards expanded, isomorphic
    /// expansions merged. `None` if some pattern falls outside the basis.
    pub fn vector_of(&self, f: &Formula) -> Option<Vec<BigRational>> {
        let lookup: BTreeMap<_, usize> = self
            .patterns
            .iter()
            .enumerate()
            .map(|(i, p)| (p.canonical_form(), i))
            .collect();
        let mut v = vec![BigRational::zero(); self.len()];
        for (coeff, pat) in f.terms() {
            for fixed in pat.expand_wildcards() {
                let idx = *lookup.get(&fixed.canonical_form())?;
                v[idx] += coeff;
            }
        }
        Some(v)
    }
}

/// Complete enumeration of fixed-sign patterns with 1..=k arrows, up to
/// rotation of the circles (components stay labeled).
pub fn enumerate_patterns(k: usize) -> Result<PatternBasis, LabError> {
    if k < 1 || k > DEFAULT_ARITY_CAP {
        return Err(LabError::ArityRange(k, DEFAULT_ARITY_CAP));
    }
    let mut seen: BTreeMap<crate::diagram::CanonicalForm, Pattern> = BTreeMap::new();
    for arity in 1..=k {
        for dirs in direction_assignments(arity) {
            // Token lists per circle: (arrow index, end).
            let mut tokens: [Vec<(u32, End)>; 2] = [Vec::new(), Vec::new()];
            for (i, (tc, hc)) in dirs.iter().enumerate() {
                tokens[tc.index()].push((i as u32, End::Tail));
                tokens[hc.index()].push((i as u32, End::Head));
            }
            for seq1 in cyclic_arrangements(&tokens[0]) {
                for seq2 in cyclic_arrangements(&tokens[1]) {
                    for signs in 0u32..(1 << arity) {
                        let sign_map: BTreeMap<ArrowId, PatSign> = (0..arity)
                            .map(|i| {
                                let s = if (signs >> i) & 1 == 0 { PatSign::Plus } else { PatSign::Minus };
                                (ArrowId(i as u32 + 1), s)
                            })
                            .collect();
                        let circles = [
                            seq1.iter().map(|(i, e)| (ArrowId(i + 1), *e)).collect(),
                            seq2.iter().map(|(i, e)| (ArrowId(i + 1), *e)).collect(),
                        ];
                        let p = Pattern::new(circles, &sign_map).expect("constructed pattern is valid");
                        seen.entry(p.canonical_form()).or_insert(p);
                    }
                }
            }
        }
    }
    let mut patterns: Vec<Pattern> = seen.into_values().collect();
    patterns.sort_by_key(|p| (p.arity(), p.canonical_form()));
    Ok(PatternBasis { max_arity: k, patterns })
}

fn direction_assignments(arity: usize) -> Vec<Vec<(Comp, Comp)>> {
    let opts = [
        (Comp::C1, Comp::C1),
        (Comp::C1, Comp::C2),
        (Comp::C2, Comp::C1),
        (Comp::C2, Comp::C2),
    ];
    let mut out: Vec<Vec<(Comp, Comp)>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(*o);
                    v
                })
            })
            .collect();
    }
    out
}

/// All orderings of `tokens` with the first element pinned (rotation
/// representatives); the empty list yields one empty arrangement.
fn cyclic_arrangements(tokens: &[(u32, End)]) -> Vec<Vec<(u32, End)>> {
    if tokens.is_empty() {
        return vec![Vec::new()];
    }
    let first = tokens[0];
    let rest: Vec<(u32, End)> = tokens[1..].to_vec();
    let mut out = Vec::new();
    let mut current = vec![first];
    permute(&rest, &mut current, &mut out);
    out
}

fn permute(remaining: &[(u32, End)], current: &mut Vec<(u32, End)>, out: &mut Vec<Vec<(u32, End)>>) {
    if remaining.is_empty() {
        out.push(current.clone());
        return;
    }
    for i in 0..remaining.len() {
        let mut rest = remaining.to_vec();
        let tok = rest.remove(i);
        current.push(tok);
        permute(&rest, current, out);
        current.pop();
    }
}

type SparseRow = Vec<(usize, BigInt)>;

/// Exact integer constraint rows: entry = bracket(pattern, pre-move) -
/// bracket(pattern, post-move).
pub struct ConstraintMatrix {
    pub ncols: usize,
    pub rows: Vec<SparseRow>,
    /// Replay info per row: corpus diagram name and applied instance.
    pub meta: Vec<(String, String)>,
}

impl ConstraintMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// True when `v` satisfies every row exactly.
    pub fn satisfies(&self, v: &[BigRational]) -> bool {
        self.rows.iter().all(|row| {
            row.iter()
                .map(|(c, a)| BigRational::from_integer(a.clone()) * &v[*c])
                .sum::<BigRational>()
                .is_zero()
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    /// Corpus diagrams are capped at this many arrows.
    pub max_arrows: usize,
    pub parallel: bool,
}

impl SampleConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        SampleConfig { samples, seed, max_arrows: 25, parallel: true }
    }
}

fn mix_seed(seed: u64, salt: u64) -> u64 {
    // splitmix64 step, for independent per-item streams.
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Grows the sampling corpus: the seeds plus walk snapshots from each, all
/// capped at `max_arrows`.
pub fn sampling_corpus(
    seeds: &[(String, GaussDiagram)],
    seed: u64,
    max_arrows: usize,
) -> Vec<(String, GaussDiagram)> {
    let mut corpus = Vec::new();
    for (i, (name, d)) in seeds.iter().enumerate() {
        if d.arrow_count() <= max_arrows {
            corpus.push((name.clone(), d.clone()));
        }
        let mut cfg = WalkConfig::new(30, mix_seed(seed, i as u64));
        cfg.ceiling = max_arrows.saturating_sub(3);
        let walk = random_walk(d, &cfg);
        for (j, g) in walk.diagrams.into_iter().enumerate().skip(1) {
            if j % 5 == 0 && g.arrow_count() <= max_arrows {
                corpus.push((format!("{name}+walk{j}"), g));
            }
        }
    }
    corpus
}

/// Samples move instances on the corpus and collects one bracket-difference
/// row per sample.
pub fn build_constraints(
    basis: &PatternBasis,
    seeds: &[(String, GaussDiagram)],
    cfg: &SampleConfig,
) -> ConstraintMatrix {
    let corpus = sampling_corpus(seeds, cfg.seed, cfg.max_arrows);
    let basis_formulas: Vec<Formula> = basis
        .patterns()
        .iter()
        .enumerate()
        .map(|(i, p)| Formula::of_pattern(format!("b{i}"), p.clone()))
        .collect();
    let refs: Vec<&Formula> = basis_formulas.iter().collect();
    let table = FormulaTable::new(&refs).expect("basis patterns are valid formulas");

    let indices: Vec<u64> = (0..cfg.samples as u64).collect();
    let rows = map_items(cfg.parallel, &indices, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, *i + 1));
        let (name, d) = &corpus[rng.random_range(0..corpus.len())];
        let instances = all_instances(d);
        if instances.is_empty() {
            return None;
        }
        let mi = instances[rng.random_range(0..instances.len())];
        let post = apply(d, &mi).expect("enumerated instance applies");
        let pre_vals = table.evaluate(d);
        let post_vals = table.evaluate(&post);
        let row: SparseRow = pre_vals
            .iter()
            .zip(&post_vals)
            .enumerate()
            .filter_map(|(c, (a, b))| {
                let diff = a - b;
                if diff.is_zero() {
                    None
                } else {
                    debug_assert!(diff.is_integer());
                    Some((c, diff.to_integer()))
                }
            })
            .collect();
        Some((row, (name.clone(), mi.to_string())))
    });

    let mut matrix = ConstraintMatrix { ncols: basis.len(), rows: Vec::new(), meta: Vec::new() };
    for item in rows.into_iter().flatten() {
        matrix.rows.push(item.0);
        matrix.meta.push(item.1);
    }
    matrix
}

fn normalize_row(row: &mut SparseRow) {
    row.retain(|(_, v)| !v.is_zero());
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a * ca + b * cb`, sparse merge over sorted column lists.
fn combine(a: &SparseRow, ca: &BigInt, b: &SparseRow, cb: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let pick_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let pick_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (col, val) = if pick_a {
            let v = (a[i].0, &a[i].1 * ca);
            i += 1;
            v
        } else if pick_b {
            let v = (b[j].0, &b[j].1 * cb);
            j += 1;
            v
        } else {
            let v = (a[i].0, &a[i].1 * ca + &b[j].1 * cb);
            i += 1;
            j += 1;
            v
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// Row-reduced pivot set built by streaming fraction-free elimination;
/// pivoting is deterministic (first nonzero column, row order).
struct Reducer {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Reducer {
    fn new() -> Self {
        Reducer { pivots: BTreeMap::new() }
    }

    /// Reduces `row` against the pivots; inserts the remainder as a new
    /// pivot when nonzero. Returns whether the rank grew.
    fn offer(&mut self, mut row: SparseRow) -> bool {
        normalize_row(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let rl = row[0].1.clone();
                    let pl = p[0].1.clone();
                    row = combine(&row, &pl, p, &(-rl));
                    normalize_row(&mut row);
                }
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Full back-elimination so every pivot column appears in one row only.
    fn to_rref(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for &c in cols.iter().rev() {
            let pivot = self.pivots[&c].clone();
            let pl = pivot[0].1.clone();
            let others: Vec<usize> = self.pivots.keys().copied().filter(|k| *k < c).collect();
            for o in others {
                let row = self.pivots.get_mut(&o).unwrap();
                if let Some(entry) = row.iter().find(|(col, _)| *col == c) {
                    let coef = entry.1.clone();
                    let mut new = combine(row, &pl, &pivot, &(-coef));
                    normalize_row(&mut new);
                    *row = new;
                }
            }
        }
    }
}

/// Exact rational basis of `{c : Mc = 0}`, one vector per free column in
/// ascending column order.
pub fn solve_nullspace(m: &ConstraintMatrix) -> Vec<Vec<BigRational>> {
    let mut red = Reducer::new();
    for row in &m.rows {
        red.offer(row.clone());
    }
    red.to_rref();
    let pivot_cols: BTreeSet<usize> = red.pivots.keys().copied().collect();
    let mut out = Vec::new();
    for f in 0..m.ncols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![BigRational::zero(); m.ncols];
        v[f] = BigRational::one();
        for (c, row) in &red.pivots {
            if let Some(entry) = row.iter().find(|(col, _)| *col == f) {
                let lead = &row[0].1;
                v[*c] = -BigRational::new(entry.1.clone(), lead.clone());
            }
        }
        out.push(v);
    }
    out
}

/// Rank of a list of rational vectors.
pub fn rank_of(vectors: &[Vec<BigRational>]) -> usize {
    let mut red = Reducer::new();
    for v in vectors {
        let denom_lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let row: SparseRow = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.numer() * &denom_lcm / x.denom()))
            .collect();
        red.offer(row);
    }
    red.rank()
}

/// True when `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vec<BigRational>], v: &[BigRational]) -> bool {
    let base = rank_of(vectors);
    let mut all = vectors.to_vec();
    all.push(v.to_vec());
    rank_of(&all) == base
}

/// The alternating sum of formula values over all switch subsets of `ids`:
/// zero for every `|ids| = n + 1` witnesses order at most `n`.
pub fn order_check(
    f: &Formula,
    d: &GaussDiagram,
    ids: &BTreeSet<ArrowId>,
) -> Result<BracketValue, LabError> {
    for id in ids {
        if d.arrow(*id).is_none() {
            return Err(LabError::UnknownArrow(*id));
        }
    }
    let ids: Vec<ArrowId> = ids.iter().copied().collect();
    let table = FormulaTable::new(&[f])?;
    let mut total = BigRational::zero();
    for mask in 0u32..(1 << ids.len()) {
        let mut g = d.clone();
        let mut parity = 0u32;
        for (i, id) in ids.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                g = g.switch_crossing(*id)?;
                parity += 1;
            }
        }
        let value = table.evaluate(&g).pop().unwrap();
        if parity % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub walks: usize,
    pub steps: usize,
    pub seed: u64,
    pub ceiling: usize,
    pub parallel: bool,
}

impl VerifyConfig {
    pub fn new(walks: usize, steps: usize, seed: u64) -> Self {
        VerifyConfig { walks, steps, seed, ceiling: crate::moves::DEFAULT_WALK_CEILING, parallel: true }
    }
}

/// One detected non-invariance, with everything needed to replay it.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub formula: String,
    pub seed_name: String,
    pub walk_seed: u64,
    pub step: usize,
    pub value_before: String,
    pub value_after: String,
    pub start: String,
    pub transcript: Vec<String>,
}

/// Runs fresh-seed walks from every seed diagram and reports each formula
/// whose value moves, with a replayable transcript.
pub fn verify_invariance(
    formulas: &[&Formula],
    seeds: &[(String, GaussDiagram)],
    cfg: &VerifyConfig,
) -> Vec<Violation> {
    let table = FormulaTable::new(formulas).expect("formulas are valid");
    let mut jobs = Vec::new();
    for (si, (name, d)) in seeds.iter().enumerate() {
        for w in 0..cfg.walks {
            jobs.push((si, name.clone(), d.clone(), mix_seed(cfg.seed, (si * cfg.walks + w) as u64)));
        }
    }
    let results = map_items(cfg.parallel, &jobs, |(_, name, d, walk_seed)| {
        let mut wc = WalkConfig::new(cfg.steps, *walk_seed);
        wc.ceiling = cfg.ceiling;
        let walk = random_walk(d, &wc);
        let base = table.evaluate(&walk.diagrams[0]);
        let mut violations = Vec::new();
        for (step, g) in walk.diagrams.iter().enumerate().skip(1) {
            let vals = table.evaluate(g);
            for (fi, (b, v)) in base.iter().zip(&vals).enumerate() {
                if b != v {
                    violations.push(Violation {
                        formula: formulas[fi].name.clone(),
                        seed_name: name.clone(),
                        walk_seed: *walk_seed,
                        step,
                        value_before: rational_string(b),
                        value_after: rational_string(v),
                        start: d.serialize(),
                        transcript: walk.steps[..step].iter().map(|mi| mi.to_string()).collect(),
                    });
                }
            }
        }
        violations
    });
    results.into_iter().flatten().collect()
}

/// Replays a violation transcript, returning the value trace of the named
/// formula.
pub fn replay_violation(v: &Violation, f: &Formula) -> Result<Vec<BracketValue>, LabError> {
    let start = GaussDiagram::parse(&v.start)?;
    let steps = v
        .transcript
        .iter()
        .map(|s| s.parse::<MoveInstance>())
        .collect::<Result<Vec<_>, _>>()?;
    let diagrams = replay(&start, &steps)?;
    let table = FormulaTable::new(&[f])?;
    Ok(diagrams.iter().map(|g| table.evaluate(g).pop().unwrap()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SolvedVector {
    /// Sparse coordinates as `(basis index, exact rational)`.
    pub coefficients: Vec<(usize, String)>,
    /// Serialized basis patterns of the support.
    pub support: Vec<String>,
    pub verified: bool,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverReport {
    pub max_arity: usize,
    pub basis_size: usize,
    pub samples_requested: usize,
    pub rows: usize,
    pub sample_seed: u64,
    pub verify_seed: u64,
    pub dimension: usize,
    pub vectors: Vec<SolvedVector>,
}

/// Full pipeline: basis, constraints, nullspace, verification fuzz.
pub fn run_solver(
    k: usize,
    seeds: &[(String, GaussDiagram)],
    sample: &SampleConfig,
    verify: &VerifyConfig,
) -> Result<SolverReport, LabError> {
    let basis = enumerate_patterns(k)?;
    let matrix = build_constraints(&basis, seeds, sample);
    let nullspace = solve_nullspace(&matrix);
    let mut vectors = Vec::new();
    for v in &nullspace {
        let formula = formula_of_vector(&basis, v, "candidate")?;
        let violations = verify_invariance(&[&formula], seeds, verify);
        vectors.push(SolvedVector {
            coefficients: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, rational_string(x)))
                .collect(),
            support: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, _)| basis.patterns()[i].serialize())
                .collect(),
            verified: violations.is_empty(),
            violations,
        });
    }
    Ok(SolverReport {
        max_arity: k,
        basis_size: basis.len(),
        samples_requested: sample.samples,
        rows: matrix.n_rows(),
        sample_seed: sample.seed,
        verify_seed: verify.seed,
        dimension: nullspace.len(),
        vectors,
    })
}

/// Builds a formula from basis coordinates.
pub fn formula_of_vector(
    basis: &PatternBasis,
    v: &[BigRational],
    name: &str,
) -> Result<Formula, LabError> {
    let terms: Vec<(BigRational, Pattern)> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (x.clone(), basis.patterns()[i].clone()))
        .collect();
    Ok(Formula::new(name, terms)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::corpus_seeds;
    use crate::formula::builtin;

    #[test]
    fn basis_k1_has_eight_patterns() {
        let b = enumerate_patterns(1).unwrap();
        assert_eq!(b.len(), 8);
        // 4 placements x 2 signs; all distinct canonical forms.
        let keys: BTreeSet<_> = b.patterns().iter().map(|p| p.canonical_form()).collect();
        assert_eq!(keys.len(), 8);
        let inter = b
            .patterns()
            .iter()
            .filter(|p| {
                let d = p.to_diagram().unwrap();
                let a = *d.arrows().next().unwrap();
                a.tail.comp != a.head.comp
            })
            .count();
        assert_eq!(inter, 4);
    }

    #[test]
    fn basis_rejects_bad_arity() {
        assert!(matches!(enumerate_patterns(0), Err(LabError::ArityRange(0, _))));
        assert!(matches!(enumerate_patterns(9), Err(LabError::ArityRange(9, _))));
    }

    #[test]
    fn empty_matrix_nullspace_is_everything() {
        let m = ConstraintMatrix { ncols: 5, rows: Vec::new(), meta: Vec::new() };
        let ns = solve_nullspace(&m);
        assert_eq!(ns.len(), 5);
        for (i, v) in ns.iter().enumerate() {
            assert!(v[i].is_one());
        }
    }

    #[test]
    fn nullspace_of_simple_matrix() {
        // x0 + x1 = 0 over 3 columns.
        let m = ConstraintMatrix {
            ncols: 3,
            rows: vec![vec![(0, BigInt::one()), (1, BigInt::one())]],
            meta: vec![("row".into(), "row".into())],
        };
        let ns = solve_nullspace(&m);
        assert_eq!(ns.len(), 2);
        assert!(m.satisfies(&ns[0]) && m.satisfies(&ns[1]));
    }

    #[test]
    fn rows_never_enlarge_nullspace() {
        let basis = enumerate_patterns(1).unwrap();
        let seeds = corpus_seeds();
        let m = build_constraints(&basis, &seeds, &SampleConfig { samples: 60, seed: 5, max_arrows: 18, parallel: false });
        let half = ConstraintMatrix {
            ncols: m.ncols,
            rows: m.rows[..m.rows.len() / 2].to_vec(),
            meta: m.meta[..m.rows.len() / 2].to_vec(),
        };
        assert!(solve_nullspace(&half).len() >= solve_nullspace(&m).len());
    }

    #[test]
    fn lk_vectors_decompose_in_basis() {
        let basis = enumerate_patterns(1).unwrap();
        let lk = builtin::lk();
        for f in &lk.formulas {
            let v = basis.vector_of(f).unwrap();
            let nonzero = v.iter().filter(|x| !x.is_zero()).count();
            assert_eq!(nonzero, 2, "{}", f.name);
        }
    }

    #[test]
    fn order_check_rejects_unknown_ids() {
        let d = GaussDiagram::parse("comp1: T1 H2\ncomp2: H1 T2\nsigns: 1:+ 2:+\n").unwrap();
        let lk = builtin::lk();
        let err = order_check(
            lk.formula("lk_12").unwrap(),
            &d,
            &[ArrowId(9)].into_iter().collect(),
        )
        .unwrap_err();
        assert_eq!(err, LabError::UnknownArrow(ArrowId(9)));
    }

    #[test]
    fn order_one_of_lk() {
        // Any 2-subset switch sum of an arity-1 formula vanishes.
        let d = GaussDiagram::parse(
            "comp1: T1 H2 T3 H4\ncomp2: H1 T2 H3 T4\nsigns: 1:+ 2:+ 3:- 4:+\n",
        )
        .unwrap();
        let lk = builtin::lk();
        let f = lk.formula("lk_12").unwrap();
        let val = order_check(f, &d, &[ArrowId(1), ArrowId(3)].into_iter().collect()).unwrap();
        assert!(val.is_zero());
    }

    #[test]
    fn writhe_like_is_caught_by_verification() {
        let probe = builtin::writhe_like();
        let f = &probe.formulas[0];
        let seeds = corpus_seeds();
        let cfg = VerifyConfig { walks: 4, steps: 12, seed: 9, ceiling: 20, parallel: false };
        let violations = verify_invariance(&[f], &seeds, &cfg);
        assert!(!violations.is_empty());
        let v = &violations[0];
        let trace = replay_violation(v, f).unwrap();
        assert_ne!(trace[0], trace[v.step], "replay confirms the violation");
    }
}
