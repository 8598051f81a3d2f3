//! Braid (Coxeter) moves on reduced words and segment-restricted gathering.
//!
//! A braid move replaces an alternating window `i j i ⋯` of length
//! `m_ij ∈ {2, 3, 4, 6}` by `j i j ⋯`. It keeps the element and reverses the
//! corresponding window of the λ-sequence. Positions here are positions in
//! the written word, which coincide with positions in the written-order
//! λ-sequence ([`crate::weyl::LambdaSequence::written_order`]).

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{RootId, RootSystem};
use crate::weyl::{Element, Word};

pub const DEFAULT_NODE_CAP: usize = 5_000_000;

/// One braid move: the window `position..position + window` alternates
/// `pair.0, pair.1, …` and becomes `pair.1, pair.0, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidMove {
    pub position: usize,
    pub pair: (u8, u8),
    pub window: usize,
}

/// Serialized form of a [`BraidMove`], letters 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub position: usize,
    pub pair: [usize; 2],
    pub window: usize,
}

impl From<BraidMove> for MoveRecord {
    fn from(m: BraidMove) -> Self {
        MoveRecord { position: m.position, pair: [m.pair.0 as usize + 1, m.pair.1 as usize + 1], window: m.window }
    }
}

impl From<MoveRecord> for BraidMove {
    fn from(m: MoveRecord) -> Self {
        BraidMove { position: m.position, pair: ((m.pair[0] - 1) as u8, (m.pair[1] - 1) as u8), window: m.window }
    }
}

fn alternates(letters: &[u8], a: u8, b: u8) -> bool {
    letters.iter().enumerate().all(|(k, &l)| l == if k % 2 == 0 { a } else { b })
}

fn move_at(rs: &RootSystem, letters: &[u8], p: usize) -> Option<BraidMove> {
    let (a, b) = (*letters.get(p)?, *letters.get(p + 1)?);
    if a == b {
        return None;
    }
    let m = rs.braid_window(a as usize, b as usize);
    (p + m <= letters.len() && alternates(&letters[p..p + m], a, b)).then_some(BraidMove {
        position: p,
        pair: (a, b),
        window: m,
    })
}

/// Every braid move applicable to `word`, ordered by position.
pub fn available_moves(rs: &RootSystem, word: &Word) -> Vec<BraidMove> {
    let letters = word.letters();
    (0..letters.len()).filter_map(|p| move_at(rs, letters, p)).collect()
}

fn apply_in_place(letters: &mut [u8], mv: &BraidMove) {
    for k in 0..mv.window {
        letters[mv.position + k] = if k % 2 == 0 { mv.pair.1 } else { mv.pair.0 };
    }
}

/// Applies a move, checking that its window really alternates.
pub fn apply_move(rs: &RootSystem, word: &Word, mv: &BraidMove) -> Result<Word> {
    match move_at(rs, word.letters(), mv.position) {
        Some(found) if found == *mv => {
            let mut letters = word.letters().to_vec();
            apply_in_place(&mut letters, mv);
            Ok(Word::new(letters))
        }
        _ => Err(Error::BadWord(format!("move {mv:?} does not apply to {word}"))),
    }
}

/// Reduced words reachable from a starting word by braid moves.
#[derive(Debug, Clone)]
pub struct BraidClass {
    /// Words in breadth-first order, starting with the input.
    pub words: Vec<Word>,
    /// False when exploration stopped at the node cap.
    pub complete: bool,
}

pub fn braid_class(rs: &RootSystem, word: &Word, node_cap: usize) -> Result<BraidClass> {
    if !rs.is_reduced(word) {
        return Err(Error::NotReduced { position: 0 });
    }
    let mut seen: HashSet<Word> = HashSet::from([word.clone()]);
    let mut words = vec![word.clone()];
    let mut k = 0;
    while k < words.len() {
        let current = words[k].clone();
        for mv in available_moves(rs, &current) {
            let mut letters = current.letters().to_vec();
            apply_in_place(&mut letters, &mv);
            let next = Word::new(letters);
            if !seen.contains(&next) {
                if words.len() >= node_cap {
                    return Ok(BraidClass { words, complete: false });
                }
                seen.insert(next.clone());
                words.push(next);
            }
        }
        k += 1;
    }
    Ok(BraidClass { words, complete: true })
}

/// Whether the first and last roots of λ-sequences of `e` can change under
/// braid moves: the first root is `α_i` for a right descent `i`, the last
/// is `-e⁻¹(α_j)` for a left descent `j`.
pub fn endpoints_movable(rs: &RootSystem, e: &Element) -> (bool, bool) {
    (e.right_descents(rs).len() > 1, e.left_descents(rs).len() > 1)
}

/// The same question answered by exploring the whole braid class of `word`.
pub fn endpoints_movable_by_class(rs: &RootSystem, word: &Word, node_cap: usize) -> Result<(bool, bool)> {
    let class = braid_class(rs, word, node_cap)?;
    if !class.complete {
        return Err(Error::CapExceeded { cap: node_cap });
    }
    if word.is_empty() {
        return Ok((false, false));
    }
    let mut firsts = HashSet::new();
    let mut lasts = HashSet::new();
    for w in &class.words {
        let seq = rs.raw_lambda_written(w);
        firsts.insert(*seq.last().unwrap());
        lasts.insert(seq[0]);
    }
    Ok((firsts.len() > 1, lasts.len() > 1))
}

/// How the segment that moves must stay inside is tracked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentRule {
    /// The segment is re-read from the current positions of the outer roots
    /// after every move.
    Dynamic,
    /// The segment is fixed by the initial positions of the outer roots.
    Static,
}

/// A triangle triple `γ = α + β` inside the λ-sequence of a reduced word.
#[derive(Debug, Clone)]
pub struct GatherQuery {
    pub word: Word,
    pub alpha: RootId,
    pub gamma: RootId,
    pub beta: RootId,
    pub rule: SegmentRule,
    pub node_cap: usize,
}

impl GatherQuery {
    pub fn new(word: Word, alpha: RootId, gamma: RootId, beta: RootId) -> Self {
        GatherQuery { word, alpha, gamma, beta, rule: SegmentRule::Dynamic, node_cap: DEFAULT_NODE_CAP }
    }

    pub fn with_rule(mut self, rule: SegmentRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.node_cap = cap;
        self
    }

    /// Written positions of `(α, γ, β)`, after validating the triple.
    fn positions(&self, rs: &RootSystem) -> Result<(Vec<RootId>, [usize; 3])> {
        let seq = rs.lambda_sequence(&self.word)?.written_order();
        let pos = |r: RootId| {
            seq.iter()
                .position(|&x| x == r)
                .ok_or_else(|| Error::BadTriple(format!("{} is not in the λ-sequence", rs.format_root(r))))
        };
        if rs.add(self.alpha, self.beta) != Some(self.gamma) {
            return Err(Error::BadTriple("γ ≠ α + β".into()));
        }
        let p = [pos(self.alpha)?, pos(self.gamma)?, pos(self.beta)?];
        let (lo, hi) = (p[0].min(p[2]), p[0].max(p[2]));
        if !(lo < p[1] && p[1] < hi) {
            return Err(Error::BadTriple("γ is not between α and β".into()));
        }
        Ok((seq, p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GatherOutcome {
    Gathered { witness: Word, trace: Vec<BraidMove>, visited: usize },
    NotGatherable { visited: usize },
    CapExceeded { visited: usize },
}

impl GatherOutcome {
    pub fn is_gathered(&self) -> bool {
        matches!(self, GatherOutcome::Gathered { .. })
    }

    pub fn visited(&self) -> usize {
        match self {
            GatherOutcome::Gathered { visited, .. }
            | GatherOutcome::NotGatherable { visited }
            | GatherOutcome::CapExceeded { visited } => *visited,
        }
    }
}

/// Verdict without a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Gatherable,
    NotGatherable,
    CapExceeded,
}

// Under the dynamic rule the outer roots of the triple always sit at the two
// ends of the current segment, so a search state is the element spelled by
// the segment together with its two end letters. Words sharing a state are
// connected by moves strictly inside the segment, and their futures agree.
#[derive(Clone, PartialEq, Eq, Hash)]
struct SegmentState {
    v: Element,
    left: u8,
    right: u8,
}

#[derive(Clone, Copy)]
enum Shrink {
    /// Window ending at the right end, alternating `other, end, …` into `end`.
    Right { other: u8, window: usize },
    /// Window starting at the left end.
    Left { other: u8, window: usize },
}

fn alternating(first: u8, second: u8, len: usize) -> Vec<u8> {
    (0..len).map(|k| if k % 2 == 0 { first } else { second }).collect()
}

fn successors(rs: &RootSystem, s: &SegmentState) -> Vec<(Shrink, SegmentState)> {
    let len = s.v.length();
    let mut out = Vec::new();
    let (i, j) = (s.right as usize, s.left as usize);
    for other in 0..rs.rank() {
        if other != i && s.v.is_right_descent(rs, other) {
            let m = rs.braid_window(i, other);
            if m < len {
                // the window spells alternating letters ending in `i`
                let x = alternating(
                    if m % 2 == 1 { i as u8 } else { other as u8 },
                    if m % 2 == 1 { other as u8 } else { i as u8 },
                    m,
                );
                let mut u = s.v.clone();
                for &l in x.iter().rev() {
                    u = u.mul_simple_right(rs, l as usize);
                }
                if u.is_left_descent(rs, j) {
                    let new_right = if x[0] == i as u8 { other as u8 } else { i as u8 };
                    let v = u.mul_simple_right(rs, new_right as usize);
                    out.push((
                        Shrink::Right { other: other as u8, window: m },
                        SegmentState { v, left: s.left, right: new_right },
                    ));
                }
            }
        }
    }
    for other in 0..rs.rank() {
        if other != j && s.v.is_left_descent(rs, other) {
            let m = rs.braid_window(j, other);
            if m < len {
                let x = alternating(j as u8, other as u8, m);
                let mut u = s.v.clone();
                for &l in &x {
                    u = u.mul_simple_left(rs, l as usize);
                }
                if u.is_right_descent(rs, i) {
                    let last = x[m - 1];
                    let new_left = if last == j as u8 { other as u8 } else { j as u8 };
                    let v = u.mul_simple_left(rs, new_left as usize);
                    out.push((
                        Shrink::Left { other: other as u8, window: m },
                        SegmentState { v, left: new_left, right: s.right },
                    ));
                }
            }
        }
    }
    out
}

struct SearchResult {
    verdict: Verdict,
    visited: usize,
    /// Shrinks leading from the start state to a gathered state.
    path: Vec<Shrink>,
}

fn segment_search(rs: &RootSystem, segment: &[u8], cap: usize) -> SearchResult {
    let start = SegmentState {
        v: rs.element_of(&Word::new(segment.to_vec())).expect("letters already checked"),
        left: segment[0],
        right: segment[segment.len() - 1],
    };
    if segment.len() == 3 {
        return SearchResult { verdict: Verdict::Gatherable, visited: 1, path: Vec::new() };
    }
    let mut parent: HashMap<SegmentState, Option<(SegmentState, Shrink)>> = HashMap::new();
    parent.insert(start.clone(), None);
    // Depth first, shortest successor segment explored first: a gathering
    // is usually found long before the reachable states are exhausted.
    let mut stack = vec![start];
    while let Some(s) = stack.pop() {
        let mut next_states = successors(rs, &s);
        next_states.sort_by_key(|(_, n)| std::cmp::Reverse(n.v.length()));
        for (shrink, next) in next_states {
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= cap {
                return SearchResult { verdict: Verdict::CapExceeded, visited: parent.len(), path: Vec::new() };
            }
            parent.insert(next.clone(), Some((s.clone(), shrink)));
            if next.v.length() == 3 {
                let mut path = Vec::new();
                let mut cur = next;
                while let Some(Some((prev, sh))) = parent.get(&cur) {
                    path.push(*sh);
                    cur = prev.clone();
                }
                path.reverse();
                return SearchResult { verdict: Verdict::Gatherable, visited: parent.len(), path };
            }
            stack.push(next);
        }
    }
    SearchResult { verdict: Verdict::NotGatherable, visited: parent.len(), path: Vec::new() }
}

/// Cheap verdict for a query (no witness reconstruction).
pub fn gather_verdict(rs: &RootSystem, query: &GatherQuery) -> Result<Verdict> {
    match query.rule {
        SegmentRule::Dynamic => {
            let (_, p) = query.positions(rs)?;
            let (lo, hi) = (p[0].min(p[2]), p[0].max(p[2]));
            Ok(segment_search(rs, &query.word.letters()[lo..=hi], query.node_cap).verdict)
        }
        SegmentRule::Static => Ok(match gather_by_words(rs, query)? {
            GatherOutcome::Gathered { .. } => Verdict::Gatherable,
            GatherOutcome::NotGatherable { .. } => Verdict::NotGatherable,
            GatherOutcome::CapExceeded { .. } => Verdict::CapExceeded,
        }),
    }
}

/// Tries to make the triple consecutive using moves inside its segment.
///
/// The dynamic rule is decided on segment states and the witness trace is
/// then spelled out move by move; the static rule runs a breadth-first
/// search over words.
pub fn gather(rs: &RootSystem, query: &GatherQuery) -> Result<GatherOutcome> {
    if query.rule == SegmentRule::Static {
        return gather_by_words(rs, query);
    }
    let (_, p) = query.positions(rs)?;
    let (mut lo, mut hi) = (p[0].min(p[2]), p[0].max(p[2]));
    let result = segment_search(rs, &query.word.letters()[lo..=hi], query.node_cap);
    match result.verdict {
        Verdict::NotGatherable => return Ok(GatherOutcome::NotGatherable { visited: result.visited }),
        Verdict::CapExceeded => return Ok(GatherOutcome::CapExceeded { visited: result.visited }),
        Verdict::Gatherable => {}
    }
    let mut letters = query.word.letters().to_vec();
    let mut trace = Vec::new();
    for shrink in result.path {
        let seg = Word::new(letters[lo..=hi].to_vec());
        let v = rs.element_of(&seg)?;
        let (j, i) = (letters[lo], letters[hi]);
        match shrink {
            Shrink::Right { other, window } => {
                let x = alternating(
                    if window % 2 == 1 { i } else { other },
                    if window % 2 == 1 { other } else { i },
                    window,
                );
                let mut u = v.clone();
                for &l in x.iter().rev() {
                    u = u.mul_simple_right(rs, l as usize);
                }
                let mut target = rs.word_with_left_letter(&u, j as usize).into_letters();
                target.extend_from_slice(&x);
                rewrite(rs, &mut letters, lo + 1, &target[1..target.len() - 1], &mut trace);
                let mv = BraidMove { position: hi + 1 - window, pair: (x[0], x[1]), window };
                apply_in_place(&mut letters, &mv);
                trace.push(mv);
                hi = hi + 1 - window;
            }
            Shrink::Left { other, window } => {
                let x = alternating(j, other, window);
                let mut u = v.clone();
                for &l in &x {
                    u = u.mul_simple_left(rs, l as usize);
                }
                let mut target = x.clone();
                target.extend_from_slice(rs.shortlex(&u.mul_simple_right(rs, i as usize)).letters());
                target.push(i);
                rewrite(rs, &mut letters, lo + 1, &target[1..target.len() - 1], &mut trace);
                let mv = BraidMove { position: lo, pair: (x[0], x[1]), window };
                apply_in_place(&mut letters, &mv);
                trace.push(mv);
                lo = lo + window - 1;
            }
        }
    }
    Ok(GatherOutcome::Gathered { witness: Word::new(letters), trace, visited: result.visited })
}

/// Rewrites `letters[start..start + target.len()]` into `target` (another
/// reduced word of the same element) using moves inside that range.
fn rewrite(rs: &RootSystem, letters: &mut [u8], start: usize, target: &[u8], trace: &mut Vec<BraidMove>) {
    let end = start + target.len();
    for k in 0..target.len() {
        if letters[start + k] != target[k] {
            bring_to_front(rs, letters, start + k, end, target[k], trace);
        }
    }
}

/// Makes `letters[start..end]` begin with `s`, a left descent of the element
/// it spells.
fn bring_to_front(rs: &RootSystem, letters: &mut [u8], start: usize, end: usize, s: u8, trace: &mut Vec<BraidMove>) {
    let t = letters[start];
    let m = rs.braid_window(s as usize, t as usize);
    debug_assert!(start + m <= end);
    for p in 1..m {
        let want = if p % 2 == 1 { s } else { t };
        if letters[start + p] != want {
            bring_to_front(rs, letters, start + p, end, want, trace);
        }
    }
    let mv = BraidMove { position: start, pair: (t, s), window: m };
    apply_in_place(letters, &mv);
    trace.push(mv);
}

/// Braid moves turning one reduced word into another of the same element.
pub fn moves_between(rs: &RootSystem, from: &Word, to: &Word) -> Result<Vec<BraidMove>> {
    if !rs.is_reduced(from) || !rs.is_reduced(to) {
        return Err(Error::NotReduced { position: 0 });
    }
    if rs.element_of(from)? != rs.element_of(to)? {
        return Err(Error::BadWord(format!("{from} and {to} spell different elements")));
    }
    let mut letters = from.letters().to_vec();
    let mut trace = Vec::new();
    rewrite(rs, &mut letters, 0, to.letters(), &mut trace);
    Ok(trace)
}

fn segment_of(rule: SegmentRule, initial: (usize, usize), pa: usize, pb: usize) -> (usize, usize) {
    match rule {
        SegmentRule::Dynamic => (pa.min(pb), pa.max(pb)),
        SegmentRule::Static => initial,
    }
}

fn consecutive(p: [usize; 3]) -> bool {
    p.iter().max().unwrap() - p.iter().min().unwrap() == 2
}

/// Breadth-first search over whole words, keyed on the word. Exponential in
/// general; kept as the reference implementation of both segment rules.
pub fn gather_by_words(rs: &RootSystem, query: &GatherQuery) -> Result<GatherOutcome> {
    let (seq, p) = query.positions(rs)?;
    let initial = (p[0].min(p[2]), p[0].max(p[2]));
    let roots = [query.alpha, query.gamma, query.beta];
    let find = |seq: &[RootId]| roots.map(|r| seq.iter().position(|&x| x == r).unwrap());

    let start = query.word.letters().to_vec();
    if consecutive(p) {
        return Ok(GatherOutcome::Gathered { witness: query.word.clone(), trace: Vec::new(), visited: 1 });
    }
    let mut parent: HashMap<Vec<u8>, Option<(Vec<u8>, BraidMove)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, seq)]);
    while let Some((letters, seq)) = queue.pop_front() {
        let p = find(&seq);
        let (lo, hi) = segment_of(query.rule, initial, p[0], p[2]);
        for pos in lo..=hi {
            let Some(mv) = move_at(rs, &letters, pos) else { continue };
            if pos + mv.window - 1 > hi {
                continue;
            }
            let mut next = letters.clone();
            apply_in_place(&mut next, &mv);
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= query.node_cap {
                return Ok(GatherOutcome::CapExceeded { visited: parent.len() });
            }
            let mut next_seq = seq.clone();
            next_seq[pos..pos + mv.window].reverse();
            parent.insert(next.clone(), Some((letters.clone(), mv)));
            if consecutive(find(&next_seq)) {
                let mut trace = Vec::new();
                let mut cur = next.clone();
                while let Some(Some((prev, m))) = parent.get(&cur) {
                    trace.push(*m);
                    cur = prev.clone();
                }
                trace.reverse();
                return Ok(GatherOutcome::Gathered { witness: Word::new(next), trace, visited: parent.len() });
            }
            queue.push_back((next, next_seq));
        }
    }
    Ok(GatherOutcome::NotGatherable { visited: parent.len() })
}

/// Replays a witness trace, checking each move against the segment rule,
/// and returns the final word if it gathers the triple.
pub fn replay_trace(rs: &RootSystem, query: &GatherQuery, trace: &[BraidMove]) -> Result<Word> {
    let (mut seq, p) = query.positions(rs)?;
    let initial = (p[0].min(p[2]), p[0].max(p[2]));
    let roots = [query.alpha, query.gamma, query.beta];
    let mut letters = query.word.letters().to_vec();
    for mv in trace {
        let pos = roots.map(|r| seq.iter().position(|&x| x == r).unwrap());
        let (lo, hi) = segment_of(query.rule, initial, pos[0], pos[2]);
        if mv.position < lo || mv.position + mv.window - 1 > hi {
            return Err(Error::BadWord(format!("move {mv:?} leaves the segment {lo}..={hi}")));
        }
        if move_at(rs, &letters, mv.position) != Some(*mv) {
            return Err(Error::BadWord(format!("move {mv:?} does not apply")));
        }
        apply_in_place(&mut letters, mv);
        seq[mv.position..mv.position + mv.window].reverse();
    }
    let pos = roots.map(|r| seq.iter().position(|&x| x == r).unwrap());
    if !consecutive(pos) {
        return Err(Error::BadWord("trace does not gather the triple".into()));
    }
    Ok(Word::new(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap()).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn moves_in_rank_two() {
        let a2 = sys("A2");
        let m = available_moves(&a2, &w("121"));
        assert_eq!(m, vec![BraidMove { position: 0, pair: (0, 1), window: 3 }]);
        assert!(available_moves(&a2, &w("12")).is_empty());
        let b2 = sys("B2");
        let m = available_moves(&b2, &w("1212"));
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].window, 4);
        assert_eq!(apply_move(&b2, &w("1212"), &m[0]).unwrap(), w("2121"));
        let a3 = sys("A3");
        assert_eq!(available_moves(&a3, &w("13")).len(), 1);
    }

    #[test]
    fn classes_of_longest_elements() {
        let a2 = sys("A2");
        let c = braid_class(&a2, &w("121"), 100).unwrap();
        assert!(c.complete);
        let mut words: Vec<String> = c.words.iter().map(|x| x.to_string()).collect();
        words.sort();
        assert_eq!(words, ["121", "212"]);
        let b2 = sys("B2");
        assert_eq!(braid_class(&b2, &w("1212"), 100).unwrap().words.len(), 2);
        let a3 = sys("A3");
        // 16 reduced words for the longest element of S4
        assert_eq!(braid_class(&a3, &w("121321"), 1000).unwrap().words.len(), 16);
        assert!(!braid_class(&a3, &w("121321"), 5).unwrap().complete);
    }

    #[test]
    fn endpoints_of_small_elements() {
        let a2 = sys("A2");
        assert_eq!(endpoints_movable(&a2, &a2.longest_element()), (true, true));
        assert_eq!(endpoints_movable_by_class(&a2, &w("121"), 100).unwrap(), (true, true));
        let b3 = sys("B3");
        let s = b3.reflection_element(b3.theta());
        assert_eq!(endpoints_movable(&b3, &s), (false, false));
        assert_eq!(endpoints_movable_by_class(&b3, &b3.shortlex(&s), 10_000).unwrap(), (false, false));
    }

    #[test]
    fn a2_triple_is_already_gathered() {
        let a3 = sys("A3");
        let word = w("121");
        let seq = a3.lambda_sequence(&word).unwrap();
        let q = GatherQuery::new(word.clone(), seq.roots[0], seq.roots[1], seq.roots[2]);
        match gather(&a3, &q).unwrap() {
            GatherOutcome::Gathered { witness, trace, .. } => {
                assert_eq!(witness, word);
                assert!(trace.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gathering_in_a3() {
        // λ(321323) contains α = ε3-ε4 first; gather some triple that starts spread out
        let a3 = sys("A3");
        let word = w("213231");
        let seq = a3.lambda_sequence(&word).unwrap();
        let mut tried = 0;
        for p in 0..seq.len() {
            for q in p + 1..seq.len() {
                if let Some(g) = a3.add(seq.roots[p], seq.roots[q]) {
                    let query = GatherQuery::new(word.clone(), seq.roots[p], g, seq.roots[q]);
                    let out = gather(&a3, &query).unwrap();
                    let GatherOutcome::Gathered { witness, trace, .. } = out else { panic!("A3 triple not gathered") };
                    assert_eq!(replay_trace(&a3, &query, &trace).unwrap(), witness);
                    assert!(gather_by_words(&a3, &query).unwrap().is_gathered());
                    tried += 1;
                }
            }
        }
        assert!(tried > 0);
    }

    #[test]
    fn b3_theta_is_not_gatherable() {
        let b3 = sys("B3");
        let s = b3.reflection_element(b3.theta());
        let word = b3.shortlex(&s);
        let seq = b3.lambda_sequence(&word).unwrap();
        let (alpha, beta) = (seq.roots[0], seq.roots[6]);
        let gamma = b3.add(alpha, beta).unwrap();
        assert_eq!(gamma, b3.theta());
        let q = GatherQuery::new(word, alpha, gamma, beta);
        assert!(matches!(gather(&b3, &q).unwrap(), GatherOutcome::NotGatherable { .. }));
        assert!(matches!(gather_by_words(&b3, &q).unwrap(), GatherOutcome::NotGatherable { .. }));
        let stat = q.clone().with_rule(SegmentRule::Static);
        assert_eq!(gather_verdict(&b3, &stat).unwrap(), Verdict::NotGatherable);
    }

    #[test]
    fn bad_triples_are_rejected() {
        let a3 = sys("A3");
        let word = w("121");
        let seq = a3.lambda_sequence(&word).unwrap();
        let q = GatherQuery::new(word, seq.roots[0], seq.roots[2], seq.roots[1]);
        assert!(matches!(gather(&a3, &q), Err(Error::BadTriple(_))));
    }

    #[test]
    fn moves_between_words() {
        let f4 = sys("F4");
        let from = w("2132132432132432");
        let e = f4.element_of(&from).unwrap();
        let class = braid_class(&f4, &from, 100_000).unwrap();
        for to in class.words.iter().step_by(37) {
            let trace = moves_between(&f4, &from, to).unwrap();
            let mut cur = from.clone();
            for mv in &trace {
                cur = apply_move(&f4, &cur, mv).unwrap();
            }
            assert_eq!(&cur, to);
            assert_eq!(f4.element_of(&cur).unwrap(), e);
        }
    }

    #[test]
    fn cap_is_reported() {
        let a3 = sys("A3");
        let word = w("121321");
        let seq = a3.lambda_sequence(&word).unwrap();
        let (a, b) = (seq.roots[0], seq.roots[5]);
        if let Some(g) = a3.add(a, b) {
            let q = GatherQuery::new(word, a, g, b).with_rule(SegmentRule::Static).with_cap(1);
            assert!(matches!(gather(&a3, &q).unwrap(), GatherOutcome::CapExceeded { .. }));
        }
    }
}
