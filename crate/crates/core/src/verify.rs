//! Reference data for `F4` and `E6` and the checks that compare it against
//! the search.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ngt::{
    classical_gamma_rule, classical_index_pairs, construct_classical_min_ngt, f4_dual, nonmovable_gamma_list,
    orthogonal_decomposition, search_minimal_ngt, GammaEntry, MinNgtRecord, SearchOptions, Triple,
};
use crate::roots::{Family, RootId, RootSystem};
use crate::weyl::{Element, Word};

const F4_LONG: &str = include_str!("../data/f4_long.txt");
const F4_SHORT: &str = include_str!("../data/f4_short.txt");
const F4_OTHERS: &str = include_str!("../data/f4_others.txt");
const F4_GAMMA: &str = include_str!("../data/f4_gamma.txt");
const E6_D4: &str = include_str!("../data/e6_d4.txt");
const E6_OTHERS: &str = include_str!("../data/e6_others.txt");
const E6_GAMMA: &str = include_str!("../data/e6_gamma.txt");

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `s_{1342}s_{1110}` (a product of reflections, leftmost applied
/// last) or a plain word such as `324363243`.
pub fn parse_element(rs: &RootSystem, text: &str) -> Result<Element> {
    let text = text.trim();
    if !text.starts_with("s_") {
        let word: Word = text.parse()?;
        return rs.element_of(&word);
    }
    let mut e = rs.identity();
    for part in text.split("s_").map(str::trim).filter(|p| !p.is_empty()) {
        let root = part.trim_start_matches('{').trim_end_matches('}');
        e = e.compose(&rs.reflection_element(rs.parse_root(root)?));
    }
    Ok(e)
}

fn parse_roots(rs: &RootSystem, text: &str) -> Result<Vec<RootId>> {
    text.split(',').map(|r| rs.parse_root(r.trim())).collect()
}

/// One reference row: an element, its triple and a block base.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub text: String,
    pub element: Element,
    pub triple: Triple,
    pub block: Vec<RootId>,
}

fn parse_table(rs: &RootSystem, text: &str) -> Result<Vec<TableRow>> {
    data_lines(text)
        .map(|line| {
            let cols: Vec<&str> = line.split('|').map(str::trim).collect();
            let [w, ngt, block] = cols[..] else {
                return Err(Error::BadGolden(line.to_string()));
            };
            let ngt = parse_roots(rs, ngt)?;
            let [beta, gamma, alpha] = ngt[..] else {
                return Err(Error::BadGolden(line.to_string()));
            };
            Ok(TableRow {
                text: w.to_string(),
                element: parse_element(rs, w)?,
                triple: Triple { alpha, gamma, beta },
                block: parse_roots(rs, block)?,
            })
        })
        .collect()
}

/// Parses `01[2]10/1`: the bracketed digit marks the node.
pub fn parse_marked_root(rs: &RootSystem, text: &str) -> Result<GammaEntry> {
    let digits: Vec<char> = text.chars().filter(|c| c.is_ascii_digit()).collect();
    let open = text.find('[').ok_or_else(|| Error::BadGolden(text.to_string()))?;
    let node = text[..open].chars().filter(|c| c.is_ascii_digit()).count();
    if node >= digits.len() {
        return Err(Error::BadGolden(text.to_string()));
    }
    let plain: String = text.chars().filter(|c| *c != '[' && *c != ']').collect();
    Ok(GammaEntry { gamma: rs.parse_root(&plain)?, node })
}

fn parse_elements(rs: &RootSystem, text: &str) -> Result<Vec<Element>> {
    data_lines(text).map(|l| parse_element(rs, l)).collect()
}

/// Reference rows for the system (`F4` or `E6`).
pub fn reference_tables(rs: &RootSystem) -> Result<Vec<TableRow>> {
    match rs.id().to_string().as_str() {
        "F4" => Ok([parse_table(rs, F4_LONG)?, parse_table(rs, F4_SHORT)?].concat()),
        "E6" => parse_table(rs, E6_D4),
        other => Err(Error::BadConfig(format!("no reference tables for {other}"))),
    }
}

pub fn reference_gamma_list(rs: &RootSystem) -> Result<Vec<GammaEntry>> {
    let text = match rs.id().to_string().as_str() {
        "F4" => F4_GAMMA,
        "E6" => E6_GAMMA,
        other => return Err(Error::BadConfig(format!("no reference list for {other}"))),
    };
    let mut v: Vec<GammaEntry> = data_lines(text).map(|l| parse_marked_root(rs, l)).collect::<Result<_>>()?;
    v.sort();
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Report {
    pub target: String,
    pub system: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(target: &str, rs: &RootSystem) -> Self {
        Report { target: target.into(), system: rs.id().to_string(), checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn element_set(records: &[MinNgtRecord]) -> BTreeSet<Element> {
    records.iter().map(|r| r.element.clone()).collect()
}

fn describe_words(rs: &RootSystem, set: &BTreeSet<Element>) -> String {
    let mut v: Vec<String> = set.iter().map(|e| rs.shortlex(e).to_string()).collect();
    v.sort_by_key(|w| (w.len(), w.clone()));
    v.join(" ")
}

fn compare_sets(report: &mut Report, rs: &RootSystem, name: &str, found: &BTreeSet<Element>, want: &BTreeSet<Element>) {
    let missing: BTreeSet<Element> = want.difference(found).cloned().collect();
    let extra: BTreeSet<Element> = found.difference(want).cloned().collect();
    let detail = if missing.is_empty() && extra.is_empty() {
        format!("{} elements agree", want.len())
    } else {
        format!("missing [{}] extra [{}]", describe_words(rs, &missing), describe_words(rs, &extra))
    };
    report.check(name, missing.is_empty() && extra.is_empty(), detail);
}

/// Minimal-NGT search against the reference rows, embedded-subsystem
/// bookkeeping and the remaining explicit list.
pub fn verify_tables(rs: &RootSystem, node_cap: usize) -> Result<Report> {
    let rows = reference_tables(rs)?;
    let others = parse_elements(rs, if rs.id().family == Family::F { F4_OTHERS } else { E6_OTHERS })?;
    let search = search_minimal_ngt(rs, &SearchOptions { node_cap, ..Default::default() });
    let mut report = Report::new("tables", rs);
    let records = &search.records;
    report.check("no capped candidates", search.capped.is_empty(), format!("{} capped", search.capped.len()));
    report.check(
        "record count",
        records.len() == rows.len(),
        format!("{} found, {} listed", records.len(), rows.len()),
    );

    let by_element: BTreeMap<&Element, &MinNgtRecord> = records.iter().map(|r| (&r.element, r)).collect();
    for row in &rows {
        let name = format!("row {}", row.text);
        let Some(rec) = by_element.get(&row.element) else {
            report.check(name, false, "element is not a minimal NGT");
            continue;
        };
        let word_ok = row.text.starts_with("s_") || rec.word.to_string() == row.text;
        let triple_ok = rec.triple == row.triple;
        let block_ok = rec.blocks.iter().any(|b| {
            let mut want = crate::ngt::Block { kind: b.kind, simple: row.block.clone(), intersection: Vec::new() };
            want.simple = want.canonical_simple();
            b.canonical_simple() == want.simple
        });
        report.check(
            name,
            word_ok && triple_ok && block_ok,
            format!("word {} triple {} block {}", ok(word_ok), ok(triple_ok), ok(block_ok)),
        );
    }
    compare_sets(
        &mut report,
        rs,
        "search equals listed rows",
        &element_set(records),
        &rows.iter().map(|r| r.element.clone()).collect(),
    );

    let embedded: Vec<&MinNgtRecord> = records.iter().filter(|r| !r.embedded.is_empty()).collect();
    let remaining: BTreeSet<Element> =
        records.iter().filter(|r| r.embedded.is_empty()).map(|r| r.element.clone()).collect();
    match rs.id().family {
        Family::F => {
            let tags: BTreeSet<&str> = embedded.iter().flat_map(|r| r.embedded.iter().map(String::as_str)).collect();
            report.check(
                "two records from B3 and C3",
                embedded.len() == 2 && tags == BTreeSet::from(["B3", "C3"]),
                format!("{} embedded, tags {tags:?}", embedded.len()),
            );
            let all_involutive = remaining.iter().all(|e| orthogonal_decomposition(rs, e).is_some());
            report.check("remaining are orthogonal products", all_involutive, "");
            let dual: Result<BTreeSet<Element>> = element_set(records).iter().map(|e| f4_dual(rs, e)).collect();
            report.check("self-dual list", dual? == element_set(records), "");
        }
        _ => {
            let shared = embedded.iter().filter(|r| r.embedded.len() == 2).count();
            report.check(
                "five records from the D5 subsystems",
                embedded.len() == 5 && shared == 1,
                format!("{} embedded, {shared} in both", embedded.len()),
            );
        }
    }
    compare_sets(&mut report, rs, "remaining records equal explicit list", &remaining, &others.into_iter().collect());
    Ok(report)
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn format_gamma(rs: &RootSystem, v: &[GammaEntry]) -> String {
    v.iter().map(|g| format!("{}@{}", rs.format_root(g.gamma), g.node + 1)).collect::<Vec<_>>().join(" ")
}

/// Expected number of non-movable `γ` where only a count is known.
pub fn expected_gamma_count(rs: &RootSystem) -> Option<usize> {
    match rs.id().to_string().as_str() {
        "E7" => Some(7),
        "E8" => Some(22),
        _ => None,
    }
}

pub fn verify_gamma_list(rs: &RootSystem) -> Result<Report> {
    let mut got = nonmovable_gamma_list(rs);
    got.sort();
    let mut report = Report::new("gamma-lists", rs);
    let id = rs.id();
    let want = if id.is_classical() {
        Some(classical_gamma_rule(rs)?)
    } else if matches!(id.to_string().as_str(), "F4" | "E6") {
        Some(reference_gamma_list(rs)?)
    } else {
        None
    };
    if let Some(want) = want {
        report.check(
            "list",
            got == want,
            format!("found {} expected {}", format_gamma(rs, &got), format_gamma(rs, &want)),
        );
    } else if let Some(n) = expected_gamma_count(rs) {
        report.check("count", got.len() == n, format!("found {} expected {n}: {}", got.len(), format_gamma(rs, &got)));
    } else {
        report.check("list", true, format!("no reference; found {}", format_gamma(rs, &got)));
    }
    Ok(report)
}

/// Search against the explicit construction in types `B`, `C`, `D`.
pub fn verify_classical(rs: &RootSystem, node_cap: usize) -> Result<Report> {
    let pairs = classical_index_pairs(rs)?;
    let search = search_minimal_ngt(rs, &SearchOptions { node_cap, ..Default::default() });
    let mut report = Report::new("classical", rs);
    report.check("no capped candidates", search.capped.is_empty(), format!("{} capped", search.capped.len()));
    let n = rs.id().rank;
    let eps = |terms: &[(usize, i32)]| {
        let mut v = vec![0; n];
        for &(k, c) in terms {
            v[k - 1] += 2 * c;
        }
        rs.find_eps2(&v)
    };
    let mut built = BTreeSet::new();
    let by_element: BTreeMap<&Element, &MinNgtRecord> = search.records.iter().map(|r| (&r.element, r)).collect();
    for (i, j) in pairs {
        let (e, roots) = construct_classical_min_ngt(rs, i, j)?;
        let gamma = eps(&[(i, 1), (j, 1)]);
        let want = (eps(&[(j, 1), (j + 1, -1)]), gamma, eps(&[(i, 1), (j + 1, 1)]));
        let detail = match by_element.get(&e) {
            None => "not found by the search".to_string(),
            Some(r) => {
                let got = (Some(r.triple.alpha), Some(r.triple.gamma), Some(r.triple.beta));
                let unique_block = rs.id().family == Family::D || r.blocks.len() == 1;
                let involution = e.compose(&e).is_identity() && roots.contains(&gamma.unwrap());
                if got == want && unique_block && involution {
                    String::new()
                } else {
                    format!("triple {} blocks {} involution {}", ok(got == want), r.blocks.len(), ok(involution))
                }
            }
        };
        report.check(format!("i={i} j={j}"), detail.is_empty(), detail);
        built.insert(e);
    }
    compare_sets(&mut report, rs, "search equals construction", &element_set(&search.records), &built);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reference_notation() {
        let e6 = RootSystem::build("E6".parse().unwrap()).unwrap();
        let g = parse_marked_root(&e6, "12321/[2]").unwrap();
        assert_eq!(e6.format_root(g.gamma), "123212");
        assert_eq!(g.node, 5);
        let f4 = RootSystem::build("F4".parse().unwrap()).unwrap();
        let e = parse_element(&f4, "s_{1342}s_{1110}").unwrap();
        assert_eq!(e, parse_element(&f4, "2132132432132432").unwrap());
        assert!(parse_element(&f4, "s_{9999}").is_err());
    }

    #[test]
    fn reference_rows_load() {
        let f4 = RootSystem::build("F4".parse().unwrap()).unwrap();
        assert_eq!(reference_tables(&f4).unwrap().len(), 10);
        assert_eq!(reference_gamma_list(&f4).unwrap().len(), 6);
    }
}
