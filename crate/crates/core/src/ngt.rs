//! Triangle triples, blocks and minimal non-gatherable triples.
//!
//! A triple `(α, γ, β)` with `γ = α + β` inside a λ-sequence is admissible
//! when the three roots have the same length (it spans an `A2`). It is a
//! non-gatherable triple (NGT) when no sequence of braid moves inside the
//! segment between `α` and `β` makes the three roots consecutive.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{gather_verdict, GatherQuery, SegmentRule, Verdict};
use crate::error::{Error, Result};
use crate::roots::{Family, RootId, RootSystem, SubsystemKind};
use crate::weyl::{Element, LambdaSequence, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub alpha: RootId,
    pub gamma: RootId,
    pub beta: RootId,
}

impl Triple {
    pub fn format(&self, rs: &RootSystem) -> [String; 3] {
        [rs.format_root(self.alpha), rs.format_root(self.gamma), rs.format_root(self.beta)]
    }
}

/// A triple located in a λ-sequence; positions are in λ order, so
/// `positions[0] < positions[1] < positions[2]` hold `α`, `γ`, `β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlacedTriple {
    pub triple: Triple,
    pub positions: [usize; 3],
}

/// Equal lengths, `γ = α + β`, and never in `G2` (whose long and short
/// triangles are not closed under the `A2` relations the braid moves need).
pub fn is_admissible(rs: &RootSystem, t: &Triple) -> bool {
    rs.id().family != Family::G
        && rs.add(t.alpha, t.beta) == Some(t.gamma)
        && rs.length(t.alpha) == rs.length(t.beta)
        && rs.length(t.alpha) == rs.length(t.gamma)
}

/// Every admissible triple of a λ-sequence, ordered by the positions of
/// `α` and then `β`.
pub fn admissible_triples(rs: &RootSystem, seq: &LambdaSequence) -> Vec<PlacedTriple> {
    let roots = &seq.roots;
    let mut out = Vec::new();
    for p in 0..roots.len() {
        for q in p + 1..roots.len() {
            let Some(gamma) = rs.add(roots[p], roots[q]) else { continue };
            let triple = Triple { alpha: roots[p], gamma, beta: roots[q] };
            if !is_admissible(rs, &triple) {
                continue;
            }
            // γ always lies between α and β in a reduced λ-sequence
            if let Some(r) = seq.position(gamma) {
                out.push(PlacedTriple { triple, positions: [p, r, q] });
            }
        }
    }
    out
}

/// A triple at the two ends of a reduced word: `α = α_i` for the last
/// written letter `i` and `β` the root of the first written letter.
#[derive(Debug, Clone)]
pub struct AnchoredTriple {
    pub triple: Triple,
    pub word: Word,
}

/// All admissible triples that can be placed at the two ends of some
/// reduced word of `e`.
pub fn anchored_triples(rs: &RootSystem, e: &Element) -> Vec<AnchoredTriple> {
    let mut out = Vec::new();
    if e.length() < 3 {
        return out;
    }
    let inv = e.inverse();
    for i in e.right_descents(rs) {
        let ei = e.mul_simple_right(rs, i);
        for j in e.left_descents(rs) {
            if !ei.is_left_descent(rs, j) {
                continue;
            }
            let alpha = rs.simple(i);
            let beta = rs.neg(inv.apply(rs.simple(j)));
            let Some(gamma) = rs.add(alpha, beta) else { continue };
            let triple = Triple { alpha, gamma, beta };
            if !is_admissible(rs, &triple) || rs.is_positive(e.apply(gamma)) {
                continue;
            }
            let mut letters = vec![j as u8];
            letters.extend_from_slice(rs.shortlex(&ei.mul_simple_left(rs, j)).letters());
            letters.push(i as u8);
            out.push(AnchoredTriple { triple, word: Word::new(letters) });
        }
    }
    out
}

/// Gathers the triple of a word under the dynamic segment rule.
pub fn triple_verdict(rs: &RootSystem, word: &Word, t: &Triple, node_cap: usize) -> Result<Verdict> {
    let q = GatherQuery::new(word.clone(), t.alpha, t.gamma, t.beta).with_rule(SegmentRule::Dynamic).with_cap(node_cap);
    gather_verdict(rs, &q)
}

/// Subsystem of type `B3`, `C3` or `D4` whose positive roots meet a segment
/// in all roots but `α1, α3 (, α4)`, with the triple at
/// `α = α2`, `γ = α1 + 2α2 + α3 (+ α4)` (doubled `α3` for `B3`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub kind: SubsystemKind,
    pub simple: Vec<RootId>,
    /// Roots of the segment lying in the subsystem, in segment order.
    pub intersection: Vec<RootId>,
}

impl Block {
    /// Sorted base, with the interchangeable outer nodes of `D4` sorted.
    pub fn canonical_simple(&self) -> Vec<RootId> {
        let mut s = self.simple.clone();
        if self.kind == SubsystemKind::D4 {
            let mut outer = [s[0], s[2], s[3]];
            outer.sort();
            s = vec![outer[0], s[1], outer[1], outer[2]];
        }
        s
    }
}

/// Which block type a triple could sit in.
pub fn block_kind(rs: &RootSystem, t: &Triple) -> Option<SubsystemKind> {
    match rs.id().family {
        Family::A | Family::G => None,
        Family::D | Family::E => Some(SubsystemKind::D4),
        Family::B | Family::C | Family::F => match rs.length(t.alpha) {
            crate::roots::LengthClass::Long => Some(SubsystemKind::B3),
            crate::roots::LengthClass::Short => Some(SubsystemKind::C3),
        },
    }
}

fn combination(rs: &RootSystem, base: &[RootId], c: &[i32]) -> Option<RootId> {
    let mut v = vec![0; rs.rank()];
    for (&b, &k) in base.iter().zip(c) {
        for (x, y) in v.iter_mut().zip(&rs.root(b).coeffs) {
            *x += k * y;
        }
    }
    rs.find_coeffs(&v)
}

/// Blocks of a triple inside `segment` (the λ-roots from `α` to `β`).
pub fn find_blocks(rs: &RootSystem, segment: &[RootId], t: &Triple) -> Vec<Block> {
    let Some(kind) = block_kind(rs, t) else { return Vec::new() };
    let (beta_c, gamma_c, missing_idx, present): (&[i32], &[i32], &[usize], usize) = match kind {
        SubsystemKind::B3 => (&[1, 1, 2], &[1, 2, 2], &[0, 2], 7),
        SubsystemKind::C3 => (&[1, 1, 1], &[1, 2, 1], &[0, 2], 7),
        SubsystemKind::D4 => (&[1, 1, 1, 1], &[1, 2, 1, 1], &[0, 2, 3], 9),
    };
    let in_segment = |r: RootId| segment.contains(&r);
    let mut out = Vec::new();
    for s in rs.subsystems(kind) {
        if s.simple[1] != t.alpha
            || combination(rs, &s.simple, beta_c) != Some(t.beta)
            || combination(rs, &s.simple, gamma_c) != Some(t.gamma)
        {
            continue;
        }
        let intersection: Vec<RootId> =
            segment.iter().copied().filter(|r| s.positive.binary_search(r).is_ok()).collect();
        let missing_ok = missing_idx.iter().all(|&k| !in_segment(s.simple[k]));
        if intersection.len() == present && missing_ok {
            out.push(Block { kind, simple: s.simple.clone(), intersection });
        }
    }
    out
}

/// Blocks of a triple placed at the ends of `e`.
pub fn blocks_of_element(rs: &RootSystem, e: &Element, t: &Triple) -> Vec<Block> {
    find_blocks(rs, &e.lambda_set(), t)
}

/// Where a minimal NGT comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// The classical construction with indices `i < j` (1-based).
    Classical {
        i: usize,
        j: usize,
    },
    Reflection(RootId),
    /// A product of two or more mutually orthogonal reflections.
    OrthogonalProduct(Vec<RootId>),
    Other,
}

impl Provenance {
    pub fn describe(&self, rs: &RootSystem) -> String {
        let prod =
            |roots: &[RootId]| roots.iter().map(|&r| format!("s_{}", rs.format_root(r))).collect::<Vec<_>>().join(" ");
        match self {
            Provenance::Classical { i, j } => format!("classical i={i} j={j}"),
            Provenance::Reflection(r) => prod(&[*r]),
            Provenance::OrthogonalProduct(rs_) => prod(rs_),
            Provenance::Other => "other".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinNgtRecord {
    pub element: Element,
    pub word: Word,
    pub triple: Triple,
    pub blocks: Vec<Block>,
    pub provenance: Provenance,
    /// Standard parabolic subsystems that already contain the element.
    pub embedded: Vec<String>,
}

/// The triple of a minimal NGT candidate: unique descents on both sides.
pub fn minimal_candidate(rs: &RootSystem, e: &Element) -> Option<Triple> {
    if e.length() < 3 {
        return None;
    }
    let dr = e.right_descents(rs);
    let dl = e.left_descents(rs);
    if dr.len() != 1 || dl.len() != 1 {
        return None;
    }
    let alpha = rs.simple(dr[0]);
    let beta = rs.neg(e.inverse().apply(rs.simple(dl[0])));
    let gamma = rs.add(alpha, beta)?;
    let t = Triple { alpha, gamma, beta };
    (is_admissible(rs, &t) && !rs.is_positive(e.apply(gamma))).then_some(t)
}

/// Decides whether `e` is a minimal NGT; `Err(CapExceeded)` if the search
/// for a gathering hit the cap.
pub fn minimal_ngt_triple(rs: &RootSystem, e: &Element, node_cap: usize) -> Result<Option<Triple>> {
    let Some(t) = minimal_candidate(rs, e) else { return Ok(None) };
    match triple_verdict(rs, &rs.shortlex(e), &t, node_cap)? {
        Verdict::NotGatherable => Ok(Some(t)),
        Verdict::Gatherable => Ok(None),
        Verdict::CapExceeded => Err(Error::CapExceeded { cap: node_cap }),
    }
}

pub fn is_minimal_ngt(rs: &RootSystem, e: &Element, node_cap: usize) -> Result<Option<MinNgtRecord>> {
    Ok(minimal_ngt_triple(rs, e, node_cap)?.map(|t| describe_record(rs, e, t)))
}

fn describe_record(rs: &RootSystem, e: &Element, triple: Triple) -> MinNgtRecord {
    MinNgtRecord {
        element: e.clone(),
        word: rs.shortlex(e),
        triple,
        blocks: blocks_of_element(rs, e, &triple),
        provenance: provenance(rs, e),
        embedded: embedded_tags(rs, e),
    }
}

fn provenance(rs: &RootSystem, e: &Element) -> Provenance {
    if rs.id().is_classical() {
        if let Some((i, j)) = classical_indices(rs, e) {
            return Provenance::Classical { i, j };
        }
    }
    match orthogonal_decomposition(rs, e) {
        Some(v) if v.len() == 1 => Provenance::Reflection(v[0]),
        Some(v) => Provenance::OrthogonalProduct(v),
        None => Provenance::Other,
    }
}

/// Letters occurring in any reduced word of `e`.
pub fn support(rs: &RootSystem, e: &Element) -> BTreeSet<usize> {
    rs.shortlex(e).letters().iter().map(|&l| l as usize).collect()
}

/// The standard parabolic subsystems (given by 0-based nodes) checked for
/// embedded minimal NGTs.
pub fn natural_subsystems(rs: &RootSystem) -> Vec<(String, Vec<usize>)> {
    let id = rs.id();
    match (id.family, id.rank) {
        (Family::F, 4) => vec![("B3".into(), vec![0, 1, 2]), ("C3".into(), vec![1, 2, 3])],
        (Family::E, 6) => vec![("D5(23456)".into(), vec![1, 2, 3, 4, 5]), ("D5(12346)".into(), vec![0, 1, 2, 3, 5])],
        _ => Vec::new(),
    }
}

pub fn embedded_tags(rs: &RootSystem, e: &Element) -> Vec<String> {
    let sup = support(rs, e);
    natural_subsystems(rs)
        .into_iter()
        .filter(|(_, nodes)| sup.iter().all(|l| nodes.contains(l)))
        .map(|(name, _)| name)
        .collect()
}

/// Writes an involution as a product of mutually orthogonal reflections,
/// roots sorted. `None` if `e` is not an involution or is the identity.
pub fn orthogonal_decomposition(rs: &RootSystem, e: &Element) -> Option<Vec<RootId>> {
    if e.is_identity() || !e.is_involution() {
        return None;
    }
    fn go(rs: &RootSystem, e: &Element, chosen: &mut Vec<RootId>) -> bool {
        if e.is_identity() {
            return true;
        }
        // highest flipped roots first; this succeeds without backtracking in practice
        let candidates: Vec<RootId> =
            rs.positive().filter(|&g| e.apply(g) == rs.neg(g) && chosen.iter().all(|&c| rs.orthogonal(c, g))).collect();
        for &g in candidates.iter().rev() {
            chosen.push(g);
            if go(rs, &e.compose(&rs.reflection_element(g)), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    go(rs, e, &mut chosen).then(|| {
        chosen.sort();
        chosen
    })
}

/// The element `s_{γ_1} ⋯ s_{γ_k}`.
pub fn product_of_reflections(rs: &RootSystem, roots: &[RootId]) -> Element {
    roots.iter().fold(rs.identity(), |acc, &g| acc.compose(&rs.reflection_element(g)))
}

/// Progress of a search: stratum length, elements examined, records found.
pub type Progress<'a> = &'a (dyn Fn(usize, usize, usize) + Sync);

/// Receives each finished stratum: its length and its records.
pub type StratumHook<'a> = &'a (dyn Fn(usize, &[MinNgtRecord]) + Sync);

#[derive(Clone, Copy, Default)]
pub struct SearchOptions<'a> {
    pub node_cap: usize,
    /// Skip strata up to and including this length.
    pub resume_after: Option<usize>,
    pub progress: Option<Progress<'a>>,
    /// Called after each finished stratum with its length and its records.
    pub on_stratum: Option<StratumHook<'a>>,
    /// Soft limit: no new stratum is started once this has passed.
    pub deadline: Option<Instant>,
}

#[derive(Debug, Clone, Default)]
pub struct SearchReport {
    pub records: Vec<MinNgtRecord>,
    /// Candidates whose gathering search hit the node cap.
    pub capped: Vec<Word>,
    pub examined: usize,
    /// Last completed length when the deadline stopped the scan early.
    pub stopped_after: Option<usize>,
}

/// Every minimal NGT of the group, sorted by length and then by shortlex
/// word. Each length stratum is processed in parallel.
pub fn search_minimal_ngt(rs: &RootSystem, opts: &SearchOptions) -> SearchReport {
    let cap = if opts.node_cap == 0 { crate::braid::DEFAULT_NODE_CAP } else { opts.node_cap };
    let mut report = SearchReport::default();
    let examined = AtomicUsize::new(0);
    for (len, layer) in rs.enumerate_group(None) {
        if opts.resume_after.is_some_and(|r| len <= r) {
            continue;
        }
        let results: Vec<(Element, Result<Option<Triple>>)> = layer
            .par_iter()
            .filter_map(|e| {
                examined.fetch_add(1, Ordering::Relaxed);
                minimal_candidate(rs, e)?;
                Some((e.clone(), minimal_ngt_triple(rs, e, cap)))
            })
            .collect();
        let mut stratum = Vec::new();
        for (e, res) in results {
            match res {
                Ok(Some(t)) => stratum.push(describe_record(rs, &e, t)),
                Ok(None) => {}
                Err(_) => report.capped.push(rs.shortlex(&e)),
            }
        }
        stratum.sort_by(|a, b| a.word.letters().cmp(b.word.letters()));
        if let Some(f) = opts.on_stratum {
            f(len, &stratum);
        }
        report.records.extend(stratum);
        if let Some(p) = opts.progress {
            p(len, examined.load(Ordering::Relaxed), report.records.len());
        }
        if opts.deadline.is_some_and(|d| Instant::now() >= d) && len < rs.num_positive() {
            report.stopped_after = Some(len);
            break;
        }
    }
    report.examined = examined.into_inner();
    report
}

/// Valid `(i, j)` for the classical construction (1-based, `i < j`).
pub fn classical_index_pairs(rs: &RootSystem) -> Result<Vec<(usize, usize)>> {
    let id = rs.id();
    let n = id.rank;
    let max_j = match id.family {
        Family::B | Family::C => n - 1,
        Family::D => n.saturating_sub(2),
        _ => return Err(Error::NotClassical(id.to_string())),
    };
    Ok((1..=max_j).flat_map(|j| (1..j).map(move |i| (i, j))).collect())
}

fn eps_root(rs: &RootSystem, terms: &[(usize, i32)]) -> RootId {
    let mut v = vec![0; rs.id().rank];
    for &(k, c) in terms {
        v[k - 1] += 2 * c;
    }
    rs.find_eps2(&v).expect("classical construction yields roots")
}

/// Mutually orthogonal roots of the classical minimal NGT with indices
/// `i < j`: `ε_{i+t} + ε_{j-t}` telescoping inwards, closed off by
/// `ε_k`, `2ε_k` or `ε_k ± ε_n` when `j - i` is even.
pub fn construct_classical_min_ngt(rs: &RootSystem, i: usize, j: usize) -> Result<(Element, Vec<RootId>)> {
    let id = rs.id();
    if !classical_index_pairs(rs)?.contains(&(i, j)) {
        return Err(Error::InvalidIndices { system: id.to_string(), i, j });
    }
    let n = id.rank;
    let mut roots = Vec::new();
    let (mut p, mut q) = (i, j);
    while p < q {
        roots.push(eps_root(rs, &[(p, 1), (q, 1)]));
        p += 1;
        q -= 1;
    }
    if p == q {
        match id.family {
            Family::B => roots.push(eps_root(rs, &[(p, 1)])),
            Family::C => roots.push(eps_root(rs, &[(p, 2)])),
            _ => {
                roots.push(eps_root(rs, &[(p, 1), (n, 1)]));
                roots.push(eps_root(rs, &[(p, 1), (n, -1)]));
            }
        }
    }
    Ok((product_of_reflections(rs, &roots), roots))
}

fn classical_indices(rs: &RootSystem, e: &Element) -> Option<(usize, usize)> {
    classical_index_pairs(rs)
        .ok()?
        .into_iter()
        .find(|&(i, j)| construct_classical_min_ngt(rs, i, j).is_ok_and(|(c, _)| &c == e))
}

/// `γ` whose reflection has a unique descent `j` with `γ - α_j` a root of
/// the same length, so that the triple sits at both ends of `s_γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaEntry {
    pub gamma: RootId,
    /// 0-based node `j`.
    pub node: usize,
}

pub fn nonmovable_gamma_list(rs: &RootSystem) -> Vec<GammaEntry> {
    let mut out = Vec::new();
    for gamma in rs.positive() {
        let s = rs.reflection_element(gamma);
        let d = s.right_descents(rs);
        if d.len() != 1 {
            continue;
        }
        let j = d[0];
        let alpha = rs.simple(j);
        if rs.pairing(alpha, gamma) != 1 {
            continue;
        }
        let Some(beta) = rs.sub(gamma, alpha) else { continue };
        if is_admissible(rs, &Triple { alpha, gamma, beta }) {
            out.push(GammaEntry { gamma, node: j });
        }
    }
    out
}

/// The classical prediction: `γ = ε_{j-1} + ε_j` with node `j`, for
/// `2 ≤ j ≤ n - 1` in `B`/`C` and `2 ≤ j ≤ n - 2` in `D`.
pub fn classical_gamma_rule(rs: &RootSystem) -> Result<Vec<GammaEntry>> {
    let id = rs.id();
    let n = id.rank;
    let max_j = match id.family {
        Family::B | Family::C => n - 1,
        Family::D => n.saturating_sub(2),
        _ => return Err(Error::NotClassical(id.to_string())),
    };
    let mut out: Vec<GammaEntry> =
        (2..=max_j).map(|j| GammaEntry { gamma: eps_root(rs, &[(j - 1, 1), (j, 1)]), node: j - 1 }).collect();
    out.sort();
    Ok(out)
}

/// Relabelling `i ↦ 5 - i` of the `F4` diagram applied to an element.
pub fn f4_dual(rs: &RootSystem, e: &Element) -> Result<Element> {
    if rs.id().to_string() != "F4" {
        return Err(Error::BadConfig(format!("duality is defined for F4, not {}", rs.id())));
    }
    let w: Vec<u8> = rs.shortlex(e).letters().iter().map(|&l| 3 - l).collect();
    rs.element_of(&Word::new(w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "lowercase")]
pub enum CheckPolicy {
    /// Every element of the group.
    Full,
    /// Random elements from random reduced words.
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Theorem1Mismatch {
    pub word: String,
    pub triple: [String; 3],
    pub gatherable: bool,
    pub blocks: usize,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub system: String,
    pub elements: usize,
    pub triples: usize,
    pub not_gatherable: usize,
    pub with_block: usize,
    pub capped: usize,
    pub mismatches: Vec<Theorem1Mismatch>,
}

impl Theorem1Report {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.capped == 0
    }
}

/// Checks "not gatherable iff some block exists" on every anchored triple.
pub fn verify_theorem1(rs: &RootSystem, policy: CheckPolicy, node_cap: usize) -> Theorem1Report {
    let elements: Vec<Element> = match policy {
        CheckPolicy::Full => rs.enumerate_group(None).elements().collect(),
        CheckPolicy::Sample { count, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            let max = rs.num_positive();
            (0..count)
                .map(|_| {
                    let len = rng.gen_range(3.min(max)..=max);
                    rs.element_of(&rs.random_reduced_word(&mut rng, len)).expect("letters in range")
                })
                .collect()
        }
    };
    let per: Vec<(usize, usize, usize, usize, Vec<Theorem1Mismatch>)> = elements
        .par_iter()
        .map(|e| {
            let (mut triples, mut ngt, mut blocked, mut capped, mut bad) = (0, 0, 0, 0, Vec::new());
            for a in anchored_triples(rs, e) {
                triples += 1;
                let blocks = blocks_of_element(rs, e, &a.triple).len();
                let verdict = triple_verdict(rs, &a.word, &a.triple, node_cap).unwrap_or(Verdict::CapExceeded);
                if blocks > 0 {
                    blocked += 1;
                }
                match verdict {
                    Verdict::CapExceeded => capped += 1,
                    v => {
                        let gatherable = v == Verdict::Gatherable;
                        if !gatherable {
                            ngt += 1;
                        }
                        if gatherable == (blocks > 0) {
                            bad.push(Theorem1Mismatch {
                                word: a.word.to_string(),
                                triple: a.triple.format(rs),
                                gatherable,
                                blocks,
                            });
                        }
                    }
                }
            }
            (triples, ngt, blocked, capped, bad)
        })
        .collect();
    let mut report = Theorem1Report { system: rs.id().to_string(), elements: elements.len(), ..Default::default() };
    for (t, n, b, c, bad) in per {
        report.triples += t;
        report.not_gatherable += n;
        report.with_block += b;
        report.capped += c;
        report.mismatches.extend(bad);
    }
    report
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockJson {
    pub kind: SubsystemKind,
    pub simple: Vec<String>,
    pub intersection: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinNgtJson {
    pub system: String,
    pub word: String,
    pub length: usize,
    pub alpha: String,
    pub gamma: String,
    pub beta: String,
    pub blocks: Vec<BlockJson>,
    pub provenance: String,
    pub embedded: Vec<String>,
}

impl MinNgtRecord {
    pub fn to_json(&self, rs: &RootSystem) -> MinNgtJson {
        let fmt = |v: &[RootId]| v.iter().map(|&r| rs.format_root(r)).collect::<Vec<_>>();
        MinNgtJson {
            system: rs.id().to_string(),
            word: self.word.to_string(),
            length: self.word.len(),
            alpha: rs.format_root(self.triple.alpha),
            gamma: rs.format_root(self.triple.gamma),
            beta: rs.format_root(self.triple.beta),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockJson { kind: b.kind, simple: fmt(&b.simple), intersection: fmt(&b.intersection) })
                .collect(),
            provenance: self.provenance.describe(rs),
            embedded: self.embedded.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn g2_has_no_admissible_triples() {
        let g2 = sys("G2");
        let w0 = g2.longest_element();
        let seq = g2.lambda_sequence(&g2.shortlex(&w0)).unwrap();
        assert!(admissible_triples(&g2, &seq).is_empty());
    }

    #[test]
    fn b3_theta_is_the_only_minimal_ngt() {
        let b3 = sys("B3");
        let report = search_minimal_ngt(&b3, &SearchOptions::default());
        assert_eq!(report.records.len(), 1);
        let r = &report.records[0];
        assert_eq!(r.element, b3.reflection_element(b3.theta()));
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.provenance, Provenance::Classical { i: 1, j: 2 });
    }

    #[test]
    fn a_type_has_no_ngt() {
        let a4 = sys("A4");
        assert!(search_minimal_ngt(&a4, &SearchOptions::default()).records.is_empty());
    }

    #[test]
    fn classical_construction_matches_search() {
        for (name, count) in [("B3", 1), ("B4", 3), ("C3", 1), ("C4", 3), ("D4", 1), ("D5", 3)] {
            let rs = sys(name);
            let found: BTreeSet<Element> =
                search_minimal_ngt(&rs, &SearchOptions::default()).records.iter().map(|r| r.element.clone()).collect();
            let built: BTreeSet<Element> = classical_index_pairs(&rs)
                .unwrap()
                .into_iter()
                .map(|(i, j)| construct_classical_min_ngt(&rs, i, j).unwrap().0)
                .collect();
            assert_eq!(found.len(), count, "{name}");
            assert_eq!(found, built, "{name}");
        }
    }

    #[test]
    fn invalid_classical_indices() {
        let b4 = sys("B4");
        assert!(matches!(construct_classical_min_ngt(&b4, 2, 4), Err(Error::InvalidIndices { .. })));
        assert!(matches!(construct_classical_min_ngt(&sys("F4"), 1, 2), Err(Error::NotClassical(_))));
    }

    #[test]
    fn gamma_rule_in_classical_types() {
        for name in ["B3", "B5", "C4", "D4", "D6"] {
            let rs = sys(name);
            let mut got = nonmovable_gamma_list(&rs);
            got.sort();
            assert_eq!(got, classical_gamma_rule(&rs).unwrap(), "{name}");
        }
    }

    #[test]
    fn orthogonal_decompositions() {
        let d4 = sys("D4");
        let e = d4.longest_element();
        let v = orthogonal_decomposition(&d4, &e).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(product_of_reflections(&d4, &v), e);
        assert!(orthogonal_decomposition(&d4, &d4.element_of(&"12".parse().unwrap()).unwrap()).is_none());
    }
}
