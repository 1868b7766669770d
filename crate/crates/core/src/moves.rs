//! The two-component Reidemeister rewrite calculus.
//!
//! The move set is the minimal generating set for oriented diagrams,
//! restricted to the two-component refinements: two first moves on a
//! single circle (one per kink sign), the second move across the two
//! circles, and the three third-move variants classified by which strand
//! of the triangle lies alone on its component (bottom, middle, top).
//! Inverses (`remove`, `backward`) are included.
//!
//! Local pictures, with arrows pointing over -> under:
//!
//! * `R1a`/`R1b` insert an isolated self-arrow of sign `-`/`+` whose tail
//!   immediately precedes its head.
//! * `R2` inserts a co-oriented pair over -> under with signs `+`,`-`: the
//!   over circle gains adjacent tails `T+ T-`, the under circle adjacent
//!   heads `H+ H-`, in that cyclic order. Either component may be the over
//!   strand; the choice is part of the site.
//! * `R3*` rewrites a triangle of three crossings among strands T (over
//!   both), M, B (under both): arrows `y = T->M` (sign `+`), `z = T->B`
//!   (sign `-`), `x = M->B` (sign `+`). In the forward configuration the
//!   adjacent slot pairs read `t_y t_z`, `t_x h_y`, `h_z h_x`; applying the
//!   move swaps each pair in place. Which component carries the lone
//!   strand is part of the site.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{ArrowId, Comp, DiagramError, End, GaussDiagram, Sign};

/// Default arrow-count ceiling above which walks prefer removals.
pub const DEFAULT_WALK_CEILING: usize = 40;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MoveKind {
    R1a,
    R1b,
    R2,
    R3b,
    R3m,
    R3t,
}

impl MoveKind {
    pub const ALL: [MoveKind; 6] =
        [MoveKind::R1a, MoveKind::R1b, MoveKind::R2, MoveKind::R3b, MoveKind::R3m, MoveKind::R3t];

    pub fn directions(self) -> [Direction; 2] {
        match self {
            MoveKind::R3b | MoveKind::R3m | MoveKind::R3t => {
                [Direction::Forward, Direction::Backward]
            }
            _ => [Direction::Insert, Direction::Remove],
        }
    }

    /// Kink sign for the first moves.
    fn r1_sign(self) -> Option<Sign> {
        match self {
            MoveKind::R1a => Some(Sign::Minus),
            MoveKind::R1b => Some(Sign::Plus),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1a => "R1a",
            MoveKind::R1b => "R1b",
            MoveKind::R2 => "R2",
            MoveKind::R3b => "R3b",
            MoveKind::R3m => "R3m",
            MoveKind::R3t => "R3t",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Direction {
    Insert,
    Remove,
    Forward,
    Backward,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Insert => "insert",
            Direction::Remove => "remove",
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        }
    }

    /// Arrow-count change of a move applied in this direction.
    pub fn is_removal(self) -> bool {
        self == Direction::Remove
    }
}

/// Where a move attaches to a concrete diagram.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Site {
    /// One arc of one circle (first-move insertion).
    Arc { comp: Comp, arc: usize },
    /// An isolated kink to delete.
    Kink { arrow: ArrowId },
    /// Arcs of the over and under circles (second-move insertion).
    ArcPair { over: Comp, over_arc: usize, under_arc: usize },
    /// The co-oriented `+`,`-` pair to delete.
    ParallelPair { plus: ArrowId, minus: ArrowId },
    /// The three arrows of a triangle, by role.
    Triangle { y: ArrowId, z: ArrowId, x: ArrowId },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MoveInstance {
    pub kind: MoveKind,
    pub dir: Direction,
    pub site: Site,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("instance not applicable: {0}")]
    NotApplicable(String),
    #[error("direction {0:?} is not valid for {1:?}")]
    BadDirection(Direction, MoveKind),
    #[error("malformed transcript line {0:?}")]
    Transcript(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn not_applicable(mi: &MoveInstance) -> MoveError {
    MoveError::NotApplicable(mi.to_string())
}

/// Complete, duplicate-free, deterministically ordered list of applicable
/// instances of one move kind and direction.
pub fn enumerate_sites(d: &GaussDiagram, kind: MoveKind, dir: Direction) -> Vec<MoveInstance> {
    match (kind, dir) {
        (MoveKind::R1a | MoveKind::R1b, Direction::Insert) => r1_inserts(d, kind),
        (MoveKind::R1a | MoveKind::R1b, Direction::Remove) => r1_removes(d, kind),
        (MoveKind::R2, Direction::Insert) => r2_inserts(d),
        (MoveKind::R2, Direction::Remove) => r2_removes(d),
        (MoveKind::R3b | MoveKind::R3m | MoveKind::R3t, Direction::Forward | Direction::Backward) => {
            r3_sites(d, kind, dir)
        }
        _ => Vec::new(),
    }
}

/// Every applicable instance of every kind and direction.
pub fn all_instances(d: &GaussDiagram) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    for kind in MoveKind::ALL {
        for dir in kind.directions() {
            out.extend(enumerate_sites(d, kind, dir));
        }
    }
    out
}

fn r1_inserts(d: &GaussDiagram, kind: MoveKind) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    for comp in Comp::BOTH {
        for arc in 0..d.slot_count(comp).max(1) {
            out.push(MoveInstance { kind, dir: Direction::Insert, site: Site::Arc { comp, arc } });
        }
    }
    out
}

/// An isolated kink: a self-arrow whose head immediately follows its tail.
fn is_kink(d: &GaussDiagram, id: ArrowId, sign: Sign) -> bool {
    let a = match d.arrow(id) {
        Some(a) => a,
        None => return false,
    };
    if a.sign != sign || !a.is_self() {
        return false;
    }
    let len = d.slot_count(a.tail.comp);
    a.head.pos == (a.tail.pos + 1) % len
}

fn r1_removes(d: &GaussDiagram, kind: MoveKind) -> Vec<MoveInstance> {
    let sign = kind.r1_sign().expect("r1 kind");
    d.arrow_ids()
        .filter(|id| is_kink(d, *id, sign))
        .map(|arrow| MoveInstance { kind, dir: Direction::Remove, site: Site::Kink { arrow } })
        .collect()
}

fn r2_inserts(d: &GaussDiagram) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    for over in Comp::BOTH {
        let under = over.other();
        for over_arc in 0..d.slot_count(over).max(1) {
            for under_arc in 0..d.slot_count(under).max(1) {
                out.push(MoveInstance {
                    kind: MoveKind::R2,
                    dir: Direction::Insert,
                    site: Site::ArcPair { over, over_arc, under_arc },
                });
            }
        }
    }
    out
}

/// Checks the co-oriented adjacent `+`,`-` pair configuration.
fn r2_pair_matches(d: &GaussDiagram, plus: ArrowId, minus: ArrowId) -> bool {
    let (p, m) = match (d.arrow(plus), d.arrow(minus)) {
        (Some(p), Some(m)) => (p, m),
        _ => return false,
    };
    if p.sign != Sign::Plus || m.sign != Sign::Minus || p.is_self() || m.is_self() {
        return false;
    }
    if p.tail.comp != m.tail.comp {
        return false;
    }
    let over_len = d.slot_count(p.tail.comp);
    let under_len = d.slot_count(p.head.comp);
    m.tail.pos == (p.tail.pos + 1) % over_len && m.head.pos == (p.head.pos + 1) % under_len
}

fn r2_removes(d: &GaussDiagram) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    for comp in Comp::BOTH {
        let seq = d.circle(comp);
        for pos in 0..seq.len() {
            let (p_id, p_end) = seq[pos];
            let (m_id, m_end) = seq[(pos + 1) % seq.len()];
            if p_end == End::Tail && m_end == End::Tail && r2_pair_matches(d, p_id, m_id) {
                out.push(MoveInstance {
                    kind: MoveKind::R2,
                    dir: Direction::Remove,
                    site: Site::ParallelPair { plus: p_id, minus: m_id },
                });
            }
        }
    }
    out
}

/// Expected component pattern of the triangle roles for one kind: for each
/// of `y`, `z`, `x`, the components of (tail, head) given the component
/// `v` carrying the two-strand side.
fn r3_role_comps(kind: MoveKind, v: Comp) -> [(Comp, Comp); 3] {
    let u = v.other();
    match kind {
        // Lone strand is B: T and M on v; y = T->M self, z = T->B, x = M->B.
        MoveKind::R3b => [(v, v), (v, u), (v, u)],
        // Lone strand is M: T and B on v; z = T->B self, y = T->M, x = M->B.
        MoveKind::R3m => [(v, u), (v, v), (u, v)],
        // Lone strand is T: M and B on v; x = M->B self, y = T->M, z = T->B.
        MoveKind::R3t => [(u, v), (u, v), (v, v)],
        _ => unreachable!("not an R3 kind"),
    }
}

fn r3_matches(d: &GaussDiagram, kind: MoveKind, dir: Direction, y: ArrowId, z: ArrowId, x: ArrowId) -> bool {
    if y == z || y == x || z == x {
        return false;
    }
    let (ay, az, ax) = match (d.arrow(y), d.arrow(z), d.arrow(x)) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return false,
    };
    if ay.sign != Sign::Plus || az.sign != Sign::Minus || ax.sign != Sign::Plus {
        return false;
    }
    let mut found = false;
    for v in Comp::BOTH {
        let want = r3_role_comps(kind, v);
        if (ay.tail.comp, ay.head.comp) == want[0]
            && (az.tail.comp, az.head.comp) == want[1]
            && (ax.tail.comp, ax.head.comp) == want[2]
        {
            found = true;
            break;
        }
    }
    if !found {
        return false;
    }
    let follows = |first: crate::diagram::Endpoint, second: crate::diagram::Endpoint| {
        first.comp == second.comp
            && second.pos == (first.pos + 1) % d.slot_count(first.comp)
    };
    match dir {
        // Strand T reads t_y t_z; strand M reads t_x h_y; strand B reads h_z h_x.
        Direction::Forward => {
            follows(ay.tail, az.tail) && follows(ax.tail, ay.head) && follows(az.head, ax.head)
        }
        Direction::Backward => {
            follows(az.tail, ay.tail) && follows(ay.head, ax.tail) && follows(ax.head, az.head)
        }
        _ => false,
    }
}

fn r3_sites(d: &GaussDiagram, kind: MoveKind, dir: Direction) -> Vec<MoveInstance> {
    // Join adjacent slot pairs: a triangle is three adjacent pairs, one per
    // strand. Scan pairs once, then match roles.
    let mut t_pairs: Vec<(ArrowId, ArrowId)> = Vec::new(); // (y, z)
    let mut m_pairs: BTreeMap<ArrowId, Vec<ArrowId>> = BTreeMap::new(); // y -> x
    let mut b_pairs: Vec<(ArrowId, ArrowId)> = Vec::new(); // (z, x)
    for comp in Comp::BOTH {
        let seq = d.circle(comp);
        for pos in 0..seq.len() {
            let (a, ea) = seq[pos];
            let (b, eb) = seq[(pos + 1) % seq.len()];
            if a == b {
                continue;
            }
            // Collect the pair in the orientation the direction asks for.
            let (first, fe, second, se) = (a, ea, b, eb);
            match dir {
                Direction::Forward => {
                    if fe == End::Tail && se == End::Tail {
                        t_pairs.push((first, second));
                    }
                    if fe == End::Tail && se == End::Head {
                        m_pairs.entry(second).or_default().push(first);
                    }
                    if fe == End::Head && se == End::Head {
                        b_pairs.push((first, second));
                    }
                }
                Direction::Backward => {
                    if fe == End::Tail && se == End::Tail {
                        t_pairs.push((second, first));
                    }
                    if fe == End::Head && se == End::Tail {
                        m_pairs.entry(first).or_default().push(second);
                    }
                    if fe == End::Head && se == End::Head {
                        b_pairs.push((second, first));
                    }
                }
                _ => unreachable!("r3 direction"),
            }
        }
    }
    let mut out = Vec::new();
    for &(y, z) in &t_pairs {
        if let Some(xs) = m_pairs.get(&y) {
            for &x in xs {
                if b_pairs.contains(&(z, x)) && r3_matches(d, kind, dir, y, z, x) {
                    out.push(MoveInstance { kind, dir, site: Site::Triangle { y, z, x } });
                }
            }
        }
    }
    out.sort_by_key(|mi| mi.site);
    out
}

/// Applies one rewrite, checking applicability first.
pub fn apply(d: &GaussDiagram, mi: &MoveInstance) -> Result<GaussDiagram, MoveError> {
    match (mi.kind, mi.dir, mi.site) {
        (MoveKind::R1a | MoveKind::R1b, Direction::Insert, Site::Arc { comp, arc }) => {
            if arc >= d.slot_count(comp).max(1) {
                return Err(not_applicable(mi));
            }
            let id = d.fresh_id();
            let signs = BTreeMap::from([(id, mi.kind.r1_sign().expect("r1 kind"))]);
            Ok(d.with_slots_inserted(&[(comp, arc, &[(id, End::Tail), (id, End::Head)])], &signs)?)
        }
        (MoveKind::R1a | MoveKind::R1b, Direction::Remove, Site::Kink { arrow }) => {
            if !is_kink(d, arrow, mi.kind.r1_sign().expect("r1 kind")) {
                return Err(not_applicable(mi));
            }
            Ok(d.delete_arrows(&[arrow].into_iter().collect())?)
        }
        (MoveKind::R2, Direction::Insert, Site::ArcPair { over, over_arc, under_arc }) => {
            let under = over.other();
            if over_arc >= d.slot_count(over).max(1) || under_arc >= d.slot_count(under).max(1) {
                return Err(not_applicable(mi));
            }
            let p = d.fresh_id();
            let m = ArrowId(p.0 + 1);
            let signs = BTreeMap::from([(p, Sign::Plus), (m, Sign::Minus)]);
            Ok(d.with_slots_inserted(
                &[
                    (over, over_arc, &[(p, End::Tail), (m, End::Tail)]),
                    (under, under_arc, &[(p, End::Head), (m, End::Head)]),
                ],
                &signs,
            )?)
        }
        (MoveKind::R2, Direction::Remove, Site::ParallelPair { plus, minus }) => {
            if !r2_pair_matches(d, plus, minus) {
                return Err(not_applicable(mi));
            }
            Ok(d.delete_arrows(&[plus, minus].into_iter().collect())?)
        }
        (
            MoveKind::R3b | MoveKind::R3m | MoveKind::R3t,
            Direction::Forward | Direction::Backward,
            Site::Triangle { y, z, x },
        ) => {
            if !r3_matches(d, mi.kind, mi.dir, y, z, x) {
                return Err(not_applicable(mi));
            }
            let (ay, az, ax) = (d.arrow(y).unwrap(), d.arrow(z).unwrap(), d.arrow(x).unwrap());
            // Swap each strand's adjacent pair; the pair is addressed by its
            // first slot in the current configuration.
            let firsts = match mi.dir {
                Direction::Forward => [ay.tail, ax.tail, az.head],
                Direction::Backward => [az.tail, ay.head, ax.head],
                _ => unreachable!(),
            };
            let mut out = d.clone();
            for ep in firsts {
                out = out.with_adjacent_swapped(ep.comp, ep.pos);
            }
            Ok(out)
        }
        _ => Err(MoveError::BadDirection(mi.dir, mi.kind)),
    }
}

/// Walk configuration; the ceiling biases step choice toward removals once
/// the diagram grows past it.
#[derive(Clone, Copy, Debug)]
pub struct WalkConfig {
    pub steps: usize,
    pub seed: u64,
    pub ceiling: usize,
}

impl WalkConfig {
    pub fn new(steps: usize, seed: u64) -> Self {
        WalkConfig { steps, seed, ceiling: DEFAULT_WALK_CEILING }
    }
}

/// A performed walk: `diagrams[0]` is the start, one entry per step after.
pub struct Walk {
    pub diagrams: Vec<GaussDiagram>,
    pub steps: Vec<MoveInstance>,
}

/// Random move walk, reproducible from the seed. Each step applies a
/// uniformly random applicable instance; above the ceiling, only removals
/// are considered (when any exist).
pub fn random_walk(d: &GaussDiagram, cfg: &WalkConfig) -> Walk {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut diagrams = vec![d.clone()];
    let mut steps = Vec::new();
    let mut current = d.clone();
    for _ in 0..cfg.steps {
        let mut instances = all_instances(&current);
        if current.arrow_count() > cfg.ceiling {
            let removals: Vec<MoveInstance> =
                instances.iter().copied().filter(|mi| mi.dir.is_removal()).collect();
            if !removals.is_empty() {
                instances = removals;
            }
        }
        if instances.is_empty() {
            // Unreachable in practice: insertions always apply.
            diagrams.push(current.clone());
            continue;
        }
        let mi = instances[rng.random_range(0..instances.len())];
        current = apply(&current, &mi).expect("enumerated instance applies");
        steps.push(mi);
        diagrams.push(current.clone());
    }
    Walk { diagrams, steps }
}

/// Re-applies a transcript to a starting diagram.
pub fn replay(d: &GaussDiagram, steps: &[MoveInstance]) -> Result<Vec<GaussDiagram>, MoveError> {
    let mut out = vec![d.clone()];
    let mut current = d.clone();
    for mi in steps {
        current = apply(&current, mi)?;
        out.push(current.clone());
    }
    Ok(out)
}

impl fmt::Display for MoveInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.name(), self.dir.name())?;
        match self.site {
            Site::Arc { comp, arc } => write!(f, " comp={comp} arc={arc}"),
            Site::Kink { arrow } => write!(f, " arrow={arrow}"),
            Site::ArcPair { over, over_arc, under_arc } => {
                write!(f, " over={over} over_arc={over_arc} under_arc={under_arc}")
            }
            Site::ParallelPair { plus, minus } => write!(f, " plus={plus} minus={minus}"),
            Site::Triangle { y, z, x } => write!(f, " y={y} z={z} x={x}"),
        }
    }
}

impl FromStr for MoveInstance {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MoveError::Transcript(s.to_string());
        let mut toks = s.split_whitespace();
        let kind = match toks.next().ok_or_else(bad)? {
            "R1a" => MoveKind::R1a,
            "R1b" => MoveKind::R1b,
            "R2" => MoveKind::R2,
            "R3b" => MoveKind::R3b,
            "R3m" => MoveKind::R3m,
            "R3t" => MoveKind::R3t,
            _ => return Err(bad()),
        };
        let dir = match toks.next().ok_or_else(bad)? {
            "insert" => Direction::Insert,
            "remove" => Direction::Remove,
            "forward" => Direction::Forward,
            "backward" => Direction::Backward,
            _ => return Err(bad()),
        };
        let mut fields = BTreeMap::new();
        for tok in toks {
            let (k, v) = tok.split_once('=').ok_or_else(bad)?;
            fields.insert(k.to_string(), v.to_string());
        }
        let get_num = |k: &str| -> Result<u32, MoveError> {
            fields.get(k).and_then(|v| v.parse().ok()).ok_or_else(bad)
        };
        let get_comp = |k: &str| -> Result<Comp, MoveError> {
            match fields.get(k).map(String::as_str) {
                Some("1") => Ok(Comp::C1),
                Some("2") => Ok(Comp::C2),
                _ => Err(bad()),
            }
        };
        let site = match (kind, dir) {
            (MoveKind::R1a | MoveKind::R1b, Direction::Insert) => {
                Site::Arc { comp: get_comp("comp")?, arc: get_num("arc")? as usize }
            }
            (MoveKind::R1a | MoveKind::R1b, Direction::Remove) => {
                Site::Kink { arrow: ArrowId(get_num("arrow")?) }
            }
            (MoveKind::R2, Direction::Insert) => Site::ArcPair {
                over: get_comp("over")?,
                over_arc: get_num("over_arc")? as usize,
                under_arc: get_num("under_arc")? as usize,
            },
            (MoveKind::R2, Direction::Remove) => Site::ParallelPair {
                plus: ArrowId(get_num("plus")?),
                minus: ArrowId(get_num("minus")?),
            },
            (MoveKind::R3b | MoveKind::R3m | MoveKind::R3t, Direction::Forward | Direction::Backward) => {
                Site::Triangle {
                    y: ArrowId(get_num("y")?),
                    z: ArrowId(get_num("z")?),
                    x: ArrowId(get_num("x")?),
                }
            }
            _ => return Err(bad()),
        };
        Ok(MoveInstance { kind, dir, site })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf_pp() -> GaussDiagram {
        GaussDiagram::parse("comp1: T1 H2\ncomp2: H1 T2\nsigns: 1:+ 2:+\n").unwrap()
    }

    #[test]
    fn r1_insert_on_empty() {
        let d = GaussDiagram::empty();
        let sites = enumerate_sites(&d, MoveKind::R1a, Direction::Insert);
        assert_eq!(sites.len(), 2);
        let d1 = apply(&d, &sites[0]).unwrap();
        assert_eq!(d1.arrow_count(), 1);
        assert_eq!(d1.slot_count(Comp::C1), 2);
        let a = d1.arrows().next().unwrap();
        assert_eq!(a.sign, Sign::Minus);
        assert!(a.is_self());
    }

    #[test]
    fn r1_round_trip() {
        let d = hopf_pp();
        for kind in [MoveKind::R1a, MoveKind::R1b] {
            for mi in enumerate_sites(&d, kind, Direction::Insert) {
                let d1 = apply(&d, &mi).unwrap();
                assert_eq!(d1.arrow_count(), d.arrow_count() + 1);
                let removes = enumerate_sites(&d1, kind, Direction::Remove);
                assert!(!removes.is_empty());
                let back = apply(&d1, &removes[0]).unwrap();
                assert!(back.is_isomorphic(&d));
            }
        }
    }

    #[test]
    fn r2_round_trip_and_delta() {
        let d = hopf_pp();
        let inserts = enumerate_sites(&d, MoveKind::R2, Direction::Insert);
        assert_eq!(inserts.len(), 2 * 2 * 2);
        for mi in inserts {
            let d1 = apply(&d, &mi).unwrap();
            assert_eq!(d1.arrow_count(), d.arrow_count() + 2);
            let removes = enumerate_sites(&d1, MoveKind::R2, Direction::Remove);
            assert!(!removes.is_empty());
            // The just-inserted pair is removable and restores the diagram.
            let back = removes
                .iter()
                .map(|r| apply(&d1, r).unwrap())
                .find(|b| b.is_isomorphic(&d));
            assert!(back.is_some());
        }
    }

    #[test]
    fn r2_remove_absent_on_hopf() {
        assert!(enumerate_sites(&hopf_pp(), MoveKind::R2, Direction::Remove).is_empty());
    }

    #[test]
    fn r3_absent_without_triangle() {
        let d = hopf_pp();
        for kind in [MoveKind::R3b, MoveKind::R3m, MoveKind::R3t] {
            assert!(enumerate_sites(&d, kind, Direction::Forward).is_empty());
        }
    }

    /// Hand-built forward configuration for R3b with the lone strand B on
    /// component 2: circle 1 reads t_y t_z t_x h_y, circle 2 reads h_z h_x.
    fn r3b_seed() -> GaussDiagram {
        GaussDiagram::parse("comp1: T1 T2 T3 H1\ncomp2: H2 H3\nsigns: 1:+ 2:- 3:+\n").unwrap()
    }

    #[test]
    fn r3_forward_backward_round_trip() {
        let d = r3b_seed();
        let sites = enumerate_sites(&d, MoveKind::R3b, Direction::Forward);
        assert_eq!(sites.len(), 1);
        let mi = sites[0];
        assert_eq!(mi.site, Site::Triangle { y: ArrowId(1), z: ArrowId(2), x: ArrowId(3) });
        let d1 = apply(&d, &mi).unwrap();
        assert_eq!(d1.arrow_count(), d.arrow_count());
        assert!(!d1.is_isomorphic(&d));
        let back_sites = enumerate_sites(&d1, MoveKind::R3b, Direction::Backward);
        assert!(back_sites.iter().any(|b| b.site == mi.site));
        let back = apply(&d1, &mi_with(mi, Direction::Backward)).unwrap();
        assert!(back.is_isomorphic(&d));
    }

    fn mi_with(mi: MoveInstance, dir: Direction) -> MoveInstance {
        MoveInstance { dir, ..mi }
    }

    #[test]
    fn arrow_count_deltas() {
        let d = hopf_pp();
        for mi in all_instances(&d) {
            let d1 = apply(&d, &mi).unwrap();
            let delta = d1.arrow_count() as i64 - d.arrow_count() as i64;
            let expect = match (mi.kind, mi.dir) {
                (MoveKind::R1a | MoveKind::R1b, Direction::Insert) => 1,
                (MoveKind::R1a | MoveKind::R1b, Direction::Remove) => -1,
                (MoveKind::R2, Direction::Insert) => 2,
                (MoveKind::R2, Direction::Remove) => -2,
                _ => 0,
            };
            assert_eq!(delta, expect, "{mi}");
        }
    }

    #[test]
    fn walk_reproducible_and_replayable() {
        let d = hopf_pp();
        let cfg = WalkConfig::new(25, 7);
        let w1 = random_walk(&d, &cfg);
        let w2 = random_walk(&d, &cfg);
        assert_eq!(w1.steps, w2.steps);
        assert_eq!(w1.diagrams.len(), 26);
        let replayed = replay(&d, &w1.steps).unwrap();
        for (a, b) in w1.diagrams.iter().zip(&replayed) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn walk_zero_steps() {
        let d = hopf_pp();
        let w = random_walk(&d, &WalkConfig::new(0, 1));
        assert_eq!(w.diagrams.len(), 1);
        assert!(w.steps.is_empty());
    }

    #[test]
    fn walk_respects_ceiling() {
        let d = hopf_pp();
        let mut cfg = WalkConfig::new(120, 3);
        cfg.ceiling = 12;
        let w = random_walk(&d, &cfg);
        // The governor may overshoot by a couple of insertions while no
        // removal is applicable.
        for g in &w.diagrams {
            assert!(g.arrow_count() <= 12 + 4, "grew to {}", g.arrow_count());
        }
    }

    #[test]
    fn transcript_round_trip() {
        let d = hopf_pp();
        let w = random_walk(&d, &WalkConfig::new(15, 11));
        for mi in &w.steps {
            let line = mi.to_string();
            let parsed: MoveInstance = line.parse().unwrap();
            assert_eq!(parsed, *mi);
        }
    }
}
