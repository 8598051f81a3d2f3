//! Line configurations for types `B`, `C` and `D`.
//!
//! A reduced word is drawn as `n` lines read from right to left. Slot `k`
//! (counted from the top, 1-based) carries the signed global label of the
//! line currently there. Letter `k < n` crosses slots `k` and `k + 1`. In
//! `B`/`C` letter `n` reflects the bottom line in the axis, negating its
//! label; in `D` it is a V×V-shape: reflection, crossing of the two bottom
//! lines, reflection. The root read at each event is the λ-root of the
//! corresponding letter, and the final left column is the signed one-line
//! form of the element.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{Family, RootId, RootSystem, RootSystemId};
use crate::weyl::{Element, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Crossing,
    Mirror,
    Vxv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub kind: EventKind,
    /// Abscissa; the event of written letter `p` (0-based) sits at `p + 1`.
    pub x: usize,
    /// Upper slot involved (1-based): `k` for a crossing of `k, k + 1`,
    /// `n` for a mirror, `n - 1` for a V×V-shape.
    pub slot: usize,
    /// Signed global labels at the participating slots just right of the event.
    pub labels: Vec<i32>,
    pub root: RootId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineConfig {
    pub system: RootSystemId,
    /// Events ordered by increasing `x`.
    pub events: Vec<Event>,
    /// Labels on the right, `1..=n`.
    pub right_labels: Vec<i32>,
    /// Labels on the left after all events: the signed one-line form of the
    /// inverse element.
    pub left_labels: Vec<i32>,
    /// Lines whose label changes sign more than once. Such a line cannot be
    /// a straight line reflected in the axis, so the picture only exists
    /// with pseudo-lines.
    pub pseudo_lines: Vec<i32>,
}

impl LineConfig {
    pub fn is_genuine(&self) -> bool {
        self.pseudo_lines.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.system.rank
    }

    /// Event roots in the order the events are read (right to left).
    pub fn roots_right_to_left(&self) -> Vec<RootId> {
        self.events.iter().rev().map(|e| e.root).collect()
    }
}

fn require_classical(rs: &RootSystem) -> Result<usize> {
    if rs.id().is_classical() {
        Ok(rs.id().rank)
    } else {
        Err(Error::NotClassical(rs.id().to_string()))
    }
}

/// `ε_{|a|}` with the sign of `a`, times `c`, added into `v` (doubled units).
fn add_signed(v: &mut [i32], a: i32, c: i32) {
    v[a.unsigned_abs() as usize - 1] += 2 * c * a.signum();
}

fn event_root(rs: &RootSystem, v: &[i32]) -> Result<RootId> {
    rs.find_eps2(v).ok_or_else(|| Error::BadConfig(format!("event angle {v:?} is not a root")))
}

/// Applies the event for `letter` (0-based) to the slot labels and returns
/// the event with the root it reads.
fn step(rs: &RootSystem, sigma: &mut [i32], letter: usize, x: usize) -> Result<Event> {
    let n = sigma.len();
    let mut v = vec![0; n];
    let k = letter + 1;
    let event = if k < n {
        add_signed(&mut v, sigma[k - 1], 1);
        add_signed(&mut v, sigma[k], -1);
        let labels = vec![sigma[k - 1], sigma[k]];
        sigma.swap(k - 1, k);
        Event { kind: EventKind::Crossing, x, slot: k, labels, root: event_root(rs, &v)? }
    } else if rs.id().family == Family::D {
        add_signed(&mut v, sigma[n - 2], 1);
        add_signed(&mut v, sigma[n - 1], 1);
        let labels = vec![sigma[n - 2], sigma[n - 1]];
        sigma.swap(n - 2, n - 1);
        sigma[n - 2] = -sigma[n - 2];
        sigma[n - 1] = -sigma[n - 1];
        Event { kind: EventKind::Vxv, x, slot: n - 1, labels, root: event_root(rs, &v)? }
    } else {
        let c = if rs.id().family == Family::C { 2 } else { 1 };
        add_signed(&mut v, sigma[n - 1], c);
        let labels = vec![sigma[n - 1]];
        sigma[n - 1] = -sigma[n - 1];
        Event { kind: EventKind::Mirror, x, slot: n, labels, root: event_root(rs, &v)? }
    };
    Ok(event)
}

fn flips(kind: EventKind, labels: &[i32]) -> Vec<i32> {
    match kind {
        EventKind::Crossing => Vec::new(),
        _ => labels.iter().map(|l| l.abs()).collect(),
    }
}

fn pseudo_lines(n: usize, events: &[Event]) -> Vec<i32> {
    let mut count = vec![0usize; n + 1];
    for e in events {
        for l in flips(e.kind, &e.labels) {
            count[l as usize] += 1;
        }
    }
    (1..=n as i32).filter(|&l| count[l as usize] > 1).collect()
}

pub fn word_to_config(rs: &RootSystem, word: &Word) -> Result<LineConfig> {
    let n = require_classical(rs)?;
    rs.lambda_sequence(word)?;
    let mut sigma: Vec<i32> = (1..=n as i32).collect();
    let mut events = Vec::with_capacity(word.len());
    for (p, &l) in word.letters().iter().enumerate().rev() {
        events.push(step(rs, &mut sigma, l as usize, p + 1)?);
    }
    events.reverse();
    let pseudo = pseudo_lines(n, &events);
    Ok(LineConfig {
        system: rs.id(),
        events,
        right_labels: (1..=n as i32).collect(),
        left_labels: sigma,
        pseudo_lines: pseudo,
    })
}

/// Reads a configuration back into a word, checking every recorded label
/// and root against a fresh reading.
pub fn config_to_word(rs: &RootSystem, config: &LineConfig) -> Result<Word> {
    let n = require_classical(rs)?;
    if config.system != rs.id() {
        return Err(Error::BadConfig(format!("configuration is for {}, not {}", config.system, rs.id())));
    }
    if config.events.windows(2).any(|w| w[0].x >= w[1].x) {
        return Err(Error::BadConfig("event abscissae must be distinct and increasing".into()));
    }
    if config.right_labels != (1..=n as i32).collect::<Vec<_>>() {
        return Err(Error::BadConfig("right labels must be 1..n".into()));
    }
    let mut sigma = config.right_labels.clone();
    let mut letters = vec![0u8; config.events.len()];
    for (idx, e) in config.events.iter().enumerate().rev() {
        let letter = match (e.kind, rs.id().family) {
            (EventKind::Crossing, _) if (1..n).contains(&e.slot) => e.slot - 1,
            (EventKind::Mirror, Family::B | Family::C) if e.slot == n => n - 1,
            (EventKind::Vxv, Family::D) if e.slot == n - 1 => n - 1,
            _ => return Err(Error::BadConfig(format!("event {e:?} does not fit {}", rs.id()))),
        };
        let fresh = step(rs, &mut sigma, letter, e.x)?;
        if fresh.labels != e.labels || fresh.root != e.root {
            return Err(Error::BadConfig(format!("event at x={} disagrees with the line labels", e.x)));
        }
        letters[idx] = letter as u8;
    }
    if sigma != config.left_labels {
        return Err(Error::BadConfig("left labels disagree with the events".into()));
    }
    Ok(Word::new(letters))
}

/// `w(ε_k) = sign · ε_{|σ_k|}` for each `k`: the signed one-line form.
pub fn signed_one_line(rs: &RootSystem, e: &Element) -> Result<Vec<i32>> {
    let n = require_classical(rs)?;
    if n < 2 {
        return Err(Error::BadConfig("rank too small".into()));
    }
    // w(ε_k) is half the sum of the images of ε_k + ε_o and ε_k - ε_o
    let image = |v: &[i32]| rs.find_eps2(v).map(|r| rs.root(e.apply(r)).eps2.clone());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let o = if k + 1 < n { k + 1 } else { k - 1 };
        let mut plus = vec![0; n];
        plus[k] = 2;
        plus[o] = 2;
        let mut minus = plus.clone();
        minus[o] = -2;
        let (Some(a), Some(b)) = (image(&plus), image(&minus)) else {
            return Err(Error::BadConfig("missing probe root".into()));
        };
        let pos = (0..n).find(|&t| a[t] + b[t] != 0).expect("image of ε_k is nonzero");
        out.push((pos as i32 + 1) * (a[pos] + b[pos]).signum());
    }
    Ok(out)
}

/// Primitive steps of a type `D` picture: crossings and bare reflections of
/// the bottom line in the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Primitive {
    /// Crossing of slots `k` and `k + 1` (1-based).
    Cross(usize),
    Reflect,
}

/// Primitive steps of a word in reading order (right to left); each letter
/// `n` expands to reflect, cross `n - 1`, reflect.
pub fn primitives(rs: &RootSystem, word: &Word) -> Result<Vec<Primitive>> {
    let n = require_classical(rs)?;
    if rs.id().family != Family::D {
        return Err(Error::BadConfig("primitive expansion is for type D".into()));
    }
    let mut out = Vec::new();
    for &l in word.letters().iter().rev() {
        let k = l as usize + 1;
        if k < n {
            out.push(Primitive::Cross(k));
        } else {
            out.extend([Primitive::Reflect, Primitive::Cross(n - 1), Primitive::Reflect]);
        }
    }
    Ok(out)
}

/// Groups reflections into V×V-shapes, moving crossings of slots above
/// `n - 1` out of the way, and returns the word (written order).
pub fn bundle(rs: &RootSystem, steps: &[Primitive]) -> Result<Word> {
    let n = require_classical(rs)?;
    let mut reading: Vec<u8> = Vec::new();
    let mut k = 0;
    while k < steps.len() {
        match steps[k] {
            Primitive::Cross(c) => {
                if c == 0 || c >= n {
                    return Err(Error::BadConfig(format!("crossing {c} out of range")));
                }
                reading.push((c - 1) as u8);
                k += 1;
            }
            Primitive::Reflect => {
                // reflect, (crossings that commute with it), cross n-1, (…), reflect
                let mut before = Vec::new();
                let mut after = Vec::new();
                let mut seen_middle = false;
                let mut j = k + 1;
                loop {
                    match steps.get(j) {
                        None => return Err(Error::BadConfig("odd number of reflections".into())),
                        Some(Primitive::Reflect) if seen_middle => break,
                        Some(Primitive::Reflect) => {
                            return Err(Error::BadConfig("two reflections without a crossing between".into()))
                        }
                        Some(&Primitive::Cross(c)) if c == n - 1 && !seen_middle => seen_middle = true,
                        Some(&Primitive::Cross(c)) if c + 1 < n => {
                            if seen_middle {
                                after.push((c - 1) as u8)
                            } else {
                                before.push((c - 1) as u8)
                            }
                        }
                        Some(p) => return Err(Error::BadConfig(format!("{p:?} cannot be bundled"))),
                    }
                    j += 1;
                }
                // crossings above slot n - 1 commute with the reflections and move out
                reading.extend(before);
                reading.push((n - 1) as u8);
                reading.extend(after);
                k = j + 1;
            }
        }
    }
    reading.reverse();
    Ok(Word::new(reading))
}

/// Outcome of validating a V+V rewrite of one line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VvCheck {
    /// Global label of the line that gains two reflections.
    pub line: i32,
    /// Condition 1: the line does not gain intersections.
    pub no_new_intersections: bool,
    /// Condition 2: each new reflection of the line has a neighbouring
    /// reflection of another line.
    pub neighbours_exist: bool,
    /// Condition 3: the neighbouring pairs form V×V-shapes.
    pub forms_vxv: bool,
}

impl VvCheck {
    pub fn valid(&self) -> bool {
        self.no_new_intersections && self.neighbours_exist && self.forms_vxv
    }
}

fn line_stats(config: &LineConfig) -> Vec<(usize, usize)> {
    // (intersections, reflections) per global line
    let n = config.rank();
    let mut stats = vec![(0, 0); n + 1];
    for e in &config.events {
        if e.kind != EventKind::Mirror {
            for l in &e.labels {
                stats[l.unsigned_abs() as usize].0 += 1;
            }
        }
        for l in flips(e.kind, &e.labels) {
            stats[l as usize].1 += 1;
        }
    }
    stats
}

/// Validates the V+V operation taking the picture of `from` to the picture
/// of `to` (two reduced words of the same element in type `D`).
pub fn vv_operation(rs: &RootSystem, from: &Word, to: &Word) -> Result<VvCheck> {
    let n = require_classical(rs)?;
    if rs.id().family != Family::D {
        return Err(Error::BadConfig("V+V applies to type D".into()));
    }
    if rs.element_of(from)? != rs.element_of(to)? {
        return Err(Error::BadConfig("words spell different elements".into()));
    }
    let (a, b) = (word_to_config(rs, from)?, word_to_config(rs, to)?);
    let (sa, sb) = (line_stats(&a), line_stats(&b));
    let broken: Vec<usize> = (1..=n).filter(|&l| sb[l].1 == sa[l].1 + 2).collect();
    let others_same = (1..=n).all(|l| broken.contains(&l) || sb[l].1 <= sa[l].1 + 1);
    let [line] = broken[..] else {
        return Err(Error::BadConfig("exactly one line must gain two reflections".into()));
    };
    if !others_same {
        return Err(Error::BadConfig("other lines gain reflections too".into()));
    }
    // every reflection of the broken line in `to` sits in a V×V-shape with
    // a different line, and bundling the primitive steps succeeds
    let neighbours = b
        .events
        .iter()
        .filter(|e| e.kind == EventKind::Vxv && e.labels.iter().any(|l| l.unsigned_abs() as usize == line))
        .all(|e| e.labels.iter().any(|l| l.unsigned_abs() as usize != line));
    let forms = bundle(rs, &primitives(rs, to)?).is_ok_and(|w| &w == to);
    Ok(VvCheck {
        line: line as i32,
        no_new_intersections: sb[line].0 <= sa[line].0,
        neighbours_exist: neighbours,
        forms_vxv: forms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderFormat {
    Ascii,
    Svg,
}

fn label(l: i32) -> String {
    format!("{l:>3}")
}

/// Draws the configuration; output is deterministic.
pub fn render(rs: &RootSystem, config: &LineConfig, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(rs, config),
        RenderFormat::Svg => render_svg(rs, config),
    }
}

fn render_ascii(rs: &RootSystem, c: &LineConfig) -> String {
    let n = c.rank();
    let rows = 2 * n + 1; // slot rows at even indices, the axis last
    let cols = c.events.len();
    let mut grid = vec![vec!["   "; cols]; rows];
    for r in (0..rows - 1).step_by(2) {
        grid[r].fill("---");
    }
    grid[rows - 1].fill("===");
    // column 0 is the leftmost event
    for (col, e) in c.events.iter().enumerate() {
        let top = 2 * (e.slot - 1);
        match e.kind {
            EventKind::Crossing => {
                grid[top][col] = "-.-";
                grid[top + 1][col] = " X ";
                grid[top + 2][col] = "-'-";
            }
            EventKind::Mirror => {
                grid[top][col] = "-v-";
                grid[top + 1][col] = " | ";
                grid[top + 2][col] = "=*=";
            }
            EventKind::Vxv => {
                grid[top][col] = "-v-";
                grid[top + 1][col] = " X ";
                grid[top + 2][col] = "-v-";
                grid[top + 3][col] = " W ";
                grid[top + 4][col] = "=*=";
            }
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "{} word {}", c.system, {
        let letters: Vec<u8> =
            c.events.iter().map(|e| (e.slot - 1 + usize::from(e.kind == EventKind::Vxv)) as u8).collect();
        Word::new(letters)
    });
    for (r, cells) in grid.iter().enumerate().take(rows) {
        let (l, rt) = if r % 2 == 0 && r / 2 < n {
            (label(c.left_labels[r / 2]), label(c.right_labels[r / 2]))
        } else {
            ("   ".to_string(), "   ".to_string())
        };
        let _ = writeln!(out, "{l} {} {rt}", cells.concat());
    }
    for e in c.events.iter().rev() {
        let _ = writeln!(out, "x={:<3} {:<8} {}", e.x, format!("{:?}", e.kind).to_lowercase(), rs.format_eps(e.root));
    }
    out
}

fn render_svg(rs: &RootSystem, c: &LineConfig) -> String {
    let n = c.rank();
    let dx = 60.0;
    let gap = 40.0;
    let l = c.events.len();
    let width = dx * (l as f64 + 2.0) + 80.0;
    let axis = gap * (n as f64 + 1.0);
    let height = axis + 60.0;
    let x_of = |x: f64| 60.0 + dx * x;
    let y_of = |slot: usize| gap * slot as f64;

    // trajectories keyed by global line, traced right to left
    let mut paths: Vec<Vec<(f64, f64)>> = vec![Vec::new(); n + 1];
    let mut sigma: Vec<i32> = (1..=n as i32).collect();
    for (k, &g) in sigma.iter().enumerate() {
        paths[g as usize].push((x_of(l as f64 + 1.0), y_of(k + 1)));
    }
    for e in c.events.iter().rev() {
        let x = e.x as f64;
        let before = sigma.clone();
        let letter = match e.kind {
            EventKind::Crossing => e.slot - 1,
            _ => n - 1,
        };
        let _ = step(rs, &mut sigma, letter, e.x);
        for (k, &label) in before.iter().enumerate().take(n) {
            let g = label.unsigned_abs() as usize;
            let after = sigma.iter().position(|s| s.unsigned_abs() as usize == g).unwrap();
            let p = &mut paths[g];
            p.push((x_of(x + 0.3), y_of(k + 1)));
            if label != sigma[after] {
                p.push((x_of(x), axis));
            }
            p.push((x_of(x - 0.3), y_of(after + 1)));
        }
    }
    for (k, &g) in sigma.iter().enumerate() {
        paths[g.unsigned_abs() as usize].push((x_of(0.0), y_of(k + 1)));
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{:.1}" y1="{axis:.1}" x2="{:.1}" y2="{axis:.1}" stroke="gray" stroke-dasharray="4 3"/>"#,
        x_of(0.0),
        x_of(l as f64 + 1.0)
    );
    for (g, p) in paths.iter().enumerate().skip(1) {
        let pts: Vec<String> = p.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
        let _ = writeln!(out, r#"  <polyline data-line="{g}" fill="none" stroke="black" points="{}"/>"#, pts.join(" "));
    }
    for k in 0..n {
        let y = y_of(k + 1) + 4.0;
        let _ = writeln!(
            out,
            r#"  <text x="{:.1}" y="{y:.1}" text-anchor="end">{}</text>"#,
            x_of(0.0) - 8.0,
            c.left_labels[k]
        );
        let _ =
            writeln!(out, r#"  <text x="{:.1}" y="{y:.1}">{}</text>"#, x_of(l as f64 + 1.0) + 8.0, c.right_labels[k]);
    }
    for e in &c.events {
        let _ = writeln!(
            out,
            r#"  <text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{}</text>"#,
            x_of(e.x as f64),
            axis + 25.0,
            rs.format_eps(e.root)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn single_events() {
        let b3 = sys("B3");
        let c = word_to_config(&b3, &"3".parse().unwrap()).unwrap();
        assert_eq!(c.events[0].kind, EventKind::Mirror);
        assert_eq!(b3.format_eps(c.events[0].root), "e3");
        let c3 = sys("C3");
        let c = word_to_config(&c3, &"3".parse().unwrap()).unwrap();
        assert_eq!(c3.format_eps(c.events[0].root), "2e3");
        let d4 = sys("D4");
        let c = word_to_config(&d4, &"4".parse().unwrap()).unwrap();
        assert_eq!(c.events[0].kind, EventKind::Vxv);
        assert_eq!(d4.format_eps(c.events[0].root), "e3+e4");
        assert_eq!(c.left_labels, vec![1, 2, -4, -3]);
    }

    #[test]
    fn round_trip_and_one_line() {
        let b4 = sys("B4");
        let w: Word = "4321234".parse().unwrap();
        let c = word_to_config(&b4, &w).unwrap();
        assert_eq!(config_to_word(&b4, &c).unwrap(), w);
        assert_eq!(c.roots_right_to_left(), b4.lambda_sequence(&w).unwrap().roots);
        assert_eq!(c.left_labels, signed_one_line(&b4, &b4.element_of(&w).unwrap()).unwrap());
        let b3 = sys("B3");
        let c12 = word_to_config(&b3, &"12".parse().unwrap()).unwrap();
        let e = b3.element_of(&"12".parse().unwrap()).unwrap();
        assert_eq!(signed_one_line(&b3, &e).unwrap(), vec![2, 3, 1]);
        assert_eq!(c12.left_labels, vec![3, 1, 2]);
        assert!(config_to_word(&b4, &LineConfig { events: Vec::new(), left_labels: vec![1, 2, 3, 4], ..c.clone() })
            .unwrap()
            .is_empty());
    }

    #[test]
    fn tampered_configs_are_rejected() {
        let b3 = sys("B3");
        let mut c = word_to_config(&b3, &"123".parse().unwrap()).unwrap();
        c.events[1].x = c.events[0].x;
        assert!(matches!(config_to_word(&b3, &c), Err(Error::BadConfig(_))));
        assert!(matches!(word_to_config(&sys("F4"), &"1".parse().unwrap()), Err(Error::NotClassical(_))));
    }

    #[test]
    fn pseudo_lines_in_d4() {
        let d4 = sys("D4");
        let genuine = word_to_config(&d4, &"242".parse().unwrap()).unwrap();
        let pseudo = word_to_config(&d4, &"424".parse().unwrap()).unwrap();
        assert!(genuine.is_genuine());
        assert_eq!(pseudo.pseudo_lines, vec![3]);
        let check = vv_operation(&d4, &"242".parse().unwrap(), &"424".parse().unwrap()).unwrap();
        assert_eq!(check.line, 3);
        assert!(check.valid(), "{check:?}");
    }

    #[test]
    fn primitives_bundle_back() {
        let d5 = sys("D5");
        let w: Word = "53545".parse().unwrap();
        let steps = primitives(&d5, &w).unwrap();
        assert_eq!(steps.iter().filter(|p| **p == Primitive::Reflect).count(), 6);
        assert_eq!(bundle(&d5, &steps).unwrap(), w);
        assert!(bundle(&d5, &[Primitive::Reflect]).is_err());
    }

    #[test]
    fn rendering() {
        let b4 = sys("B4");
        let (e, _) = crate::ngt::construct_classical_min_ngt(&b4, 1, 2).unwrap();
        let c = word_to_config(&b4, &b4.shortlex(&e)).unwrap();
        let ascii = render(&b4, &c, RenderFormat::Ascii);
        assert!(ascii.contains("mirror"));
        assert_eq!(ascii, render(&b4, &c, RenderFormat::Ascii));
        let svg = render(&b4, &c, RenderFormat::Svg);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}
