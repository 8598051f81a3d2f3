//! Finite crystallographic root systems in exact integer arithmetic.
//!
//! Every root carries two coordinate vectors: its coefficients over the
//! simple roots and its Euclidean coordinates doubled (`eps2`), so that the
//! half-integral roots of `F4` and `E_n` stay integral. All inner products
//! are computed on `eps2` and are therefore four times the true value; the
//! factor cancels in every Cartan integer.
//!
//! Simple roots follow Bourbaki for `A`-`D`, `F4`, `G2`, `E7` and `E8`. For
//! `E6` the chain is numbered `1..=5` and node `6` is the branch node attached
//! to node `3`, so that a root `abcde` over `f` prints as `abcdef`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// Cartan type of an irreducible finite root system, e.g. `B5` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemId {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        // Root ids are stored in a byte, so all roots must fit below 255.
        let positive = match family {
            Family::A => rank * (rank + 1) / 2,
            Family::B | Family::C => rank * rank,
            Family::D => rank * rank.saturating_sub(1),
            Family::E => [36, 63, 120][rank.clamp(6, 8) - 6],
            Family::F => 24,
            Family::G => 6,
        };
        let ok = ok && 2 * positive < NO_ROOT as usize;
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidRank { family: family.letter(), rank })
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(self.family, Family::B | Family::C | Family::D)
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::BadSystemName(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::BadSystemName(s.to_string()))?;
        RootSystemId::new(family, rank)
    }
}

impl Serialize for RootSystemId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootSystemId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

/// Index of a root inside its [`RootSystem`]. Positive roots come first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootId(pub(crate) u8);

impl RootId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    /// Twice the Euclidean coordinates.
    pub eps2: Vec<i32>,
    /// Coefficients over the simple roots.
    pub coeffs: Vec<i32>,
    pub length: LengthClass,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Squared length in `eps2` units (four times the Euclidean value).
    pub fn norm2(&self) -> i64 {
        dot(&self.eps2, &self.eps2)
    }
}

fn dot(a: &[i32], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum()
}

const NO_ROOT: u8 = u8::MAX;

#[derive(Debug, Clone)]
pub struct RootSystem {
    id: RootSystemId,
    /// Positive roots in (height, coefficient) order followed by their negatives.
    roots: Vec<Root>,
    n_pos: usize,
    simple: Vec<RootId>,
    cartan: Vec<Vec<i32>>,
    gram: Vec<Vec<i64>>,
    by_coeffs: HashMap<Vec<i32>, RootId>,
    by_eps2: HashMap<Vec<i32>, RootId>,
    simple_perms: Vec<Box<[u8]>>,
    sums: Vec<u8>,
    theta: RootId,
    vartheta: RootId,
    subsystem_cache: [OnceLock<Vec<Subsystem>>; 3],
}

/// Simple roots of each type in doubled Euclidean coordinates.
fn simple_roots_eps2(id: RootSystemId) -> Vec<Vec<i32>> {
    let n = id.rank;
    let unit = |dim: usize, pairs: &[(usize, i32)]| {
        let mut v = vec![0; dim];
        for &(k, c) in pairs {
            v[k] += 2 * c;
        }
        v
    };
    match id.family {
        Family::A => (0..n).map(|i| unit(n + 1, &[(i, 1), (i + 1, -1)])).collect(),
        Family::B | Family::C | Family::D => {
            let mut s: Vec<Vec<i32>> = (0..n - 1).map(|i| unit(n, &[(i, 1), (i + 1, -1)])).collect();
            s.push(match id.family {
                Family::B => unit(n, &[(n - 1, 1)]),
                Family::C => unit(n, &[(n - 1, 2)]),
                _ => unit(n, &[(n - 2, 1), (n - 1, 1)]),
            });
            s
        }
        Family::G => vec![unit(3, &[(0, 1), (1, -1)]), unit(3, &[(0, -2), (1, 1), (2, 1)])],
        Family::F => {
            vec![unit(4, &[(1, 1), (2, -1)]), unit(4, &[(2, 1), (3, -1)]), unit(4, &[(3, 1)]), vec![1, -1, -1, -1]]
        }
        Family::E => {
            // Bourbaki E8 simple roots; E6 and E7 use the first six or seven.
            let mut b: Vec<Vec<i32>> =
                vec![vec![1, -1, -1, -1, -1, -1, -1, 1], unit(8, &[(0, 1), (1, 1)]), unit(8, &[(0, -1), (1, 1)])];
            for k in 1..6 {
                b.push(unit(8, &[(k, -1), (k + 1, 1)]));
            }
            if n == 6 {
                // chain 1-3-4-5-6 of Bourbaki becomes 1..=5, the branch node 2 becomes 6
                vec![b[0].clone(), b[2].clone(), b[3].clone(), b[4].clone(), b[5].clone(), b[1].clone()]
            } else {
                b.truncate(n);
                b
            }
        }
    }
}

impl RootSystem {
    /// Builds the root system of the given type.
    pub fn build(id: RootSystemId) -> Result<Self> {
        let id = RootSystemId::new(id.family, id.rank)?;
        let n = id.rank;
        let simple_eps = simple_roots_eps2(id);
        let gram: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| dot(&simple_eps[i], &simple_eps[j])).collect()).collect();
        let cartan: Vec<Vec<i32>> =
            (0..n).map(|i| (0..n).map(|j| (2 * gram[i][j] / gram[j][j]) as i32).collect()).collect();

        // Positive roots: close the simple roots under simple reflections,
        // keeping only positive images.
        let mut pos: Vec<Vec<i32>> = Vec::new();
        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        for i in 0..n {
            let mut c = vec![0; n];
            c[i] = 1;
            seen.insert(c.clone(), ());
            pos.push(c);
        }
        let mut k = 0;
        while k < pos.len() {
            let c = pos[k].clone();
            for i in 0..n {
                let p: i32 = (0..n).map(|a| c[a] * cartan[a][i]).sum();
                if p == 0 {
                    continue;
                }
                let mut d = c.clone();
                d[i] -= p;
                if d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0) && !seen.contains_key(&d) {
                    seen.insert(d.clone(), ());
                    pos.push(d);
                }
            }
            k += 1;
        }
        pos.sort_by(|a, b| (a.iter().sum::<i32>(), a).cmp(&(b.iter().sum::<i32>(), b)));
        let n_pos = pos.len();
        assert!(2 * n_pos < NO_ROOT as usize, "too many roots for byte ids");

        let to_eps = |c: &[i32]| -> Vec<i32> {
            let dim = simple_eps[0].len();
            let mut v = vec![0; dim];
            for (a, &ca) in c.iter().enumerate() {
                for (x, &e) in v.iter_mut().zip(&simple_eps[a]) {
                    *x += ca * e;
                }
            }
            v
        };
        let simple_norms: Vec<i64> = (0..n).map(|i| gram[i][i]).collect();
        let min_norm = *simple_norms.iter().min().unwrap();
        let laced_evenly = simple_norms.iter().all(|&x| x == min_norm);
        let length_of = |eps: &[i32]| {
            if !laced_evenly && dot(eps, eps) == min_norm {
                LengthClass::Short
            } else {
                LengthClass::Long
            }
        };

        let mut roots = Vec::with_capacity(2 * n_pos);
        for c in &pos {
            let eps2 = to_eps(c);
            roots.push(Root { length: length_of(&eps2), eps2, coeffs: c.clone() });
        }
        for k in 0..n_pos {
            let r = &roots[k];
            roots.push(Root {
                eps2: r.eps2.iter().map(|x| -x).collect(),
                coeffs: r.coeffs.iter().map(|x| -x).collect(),
                length: r.length,
            });
        }
        let by_coeffs: HashMap<Vec<i32>, RootId> =
            roots.iter().enumerate().map(|(k, r)| (r.coeffs.clone(), RootId(k as u8))).collect();
        let by_eps2: HashMap<Vec<i32>, RootId> =
            roots.iter().enumerate().map(|(k, r)| (r.eps2.clone(), RootId(k as u8))).collect();
        let simple: Vec<RootId> = (0..n)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                by_coeffs[&c]
            })
            .collect();

        let simple_perms = (0..n)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| {
                        let p: i32 = (0..n).map(|a| r.coeffs[a] * cartan[a][i]).sum();
                        let mut d = r.coeffs.clone();
                        d[i] -= p;
                        by_coeffs[&d].0
                    })
                    .collect::<Box<[u8]>>()
            })
            .collect();

        let total = roots.len();
        let mut sums = vec![NO_ROOT; total * total];
        for a in 0..total {
            for b in 0..total {
                let s: Vec<i32> = roots[a].coeffs.iter().zip(&roots[b].coeffs).map(|(x, y)| x + y).collect();
                if let Some(r) = by_coeffs.get(&s) {
                    sums[a * total + b] = r.0;
                }
            }
        }

        let theta = RootId((n_pos - 1) as u8);
        let vartheta = (0..n_pos)
            .rev()
            .find(|&k| laced_evenly || roots[k].length == LengthClass::Short)
            .map(|k| RootId(k as u8))
            .unwrap();

        Ok(RootSystem {
            id,
            roots,
            n_pos,
            simple,
            cartan,
            gram,
            by_coeffs,
            by_eps2,
            simple_perms,
            sums,
            theta,
            vartheta,
            subsystem_cache: Default::default(),
        })
    }

    pub fn id(&self) -> RootSystemId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Positive roots in height-then-lexicographic order.
    pub fn positive(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.n_pos).map(|k| RootId(k as u8))
    }

    pub fn root(&self, r: RootId) -> &Root {
        &self.roots[r.index()]
    }

    pub fn simple(&self, i: usize) -> RootId {
        self.simple[i]
    }

    pub fn simple_roots(&self) -> &[RootId] {
        &self.simple
    }

    /// Index `i` such that `r` is the simple root `α_{i+1}`.
    pub fn simple_index(&self, r: RootId) -> Option<usize> {
        self.simple.iter().position(|&s| s == r)
    }

    /// `cartan()[i][j] = ⟨α_i, α_j^∨⟩`.
    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Number of laces between nodes `i` and `j` of the Dynkin diagram.
    pub fn laces(&self, i: usize, j: usize) -> u8 {
        if i == j {
            return 0;
        }
        (self.cartan[i][j] * self.cartan[j][i]) as u8
    }

    /// Length of the braid relation between `s_i` and `s_j`: 2, 3, 4 or 6.
    pub fn braid_window(&self, i: usize, j: usize) -> usize {
        [2, 3, 4, 6][self.laces(i, j) as usize]
    }

    pub fn theta(&self) -> RootId {
        self.theta
    }

    /// Highest short root; equals `theta` in simply-laced types.
    pub fn vartheta(&self) -> RootId {
        self.vartheta
    }

    pub fn is_positive(&self, r: RootId) -> bool {
        r.index() < self.n_pos
    }

    pub fn neg(&self, r: RootId) -> RootId {
        if self.is_positive(r) {
            RootId((r.index() + self.n_pos) as u8)
        } else {
            RootId((r.index() - self.n_pos) as u8)
        }
    }

    /// The positive root among `±r`.
    pub fn abs(&self, r: RootId) -> RootId {
        if self.is_positive(r) {
            r
        } else {
            self.neg(r)
        }
    }

    pub fn length(&self, r: RootId) -> LengthClass {
        self.roots[r.index()].length
    }

    pub fn find_coeffs(&self, coeffs: &[i32]) -> Option<RootId> {
        self.by_coeffs.get(coeffs).copied()
    }

    pub fn find_eps2(&self, eps2: &[i32]) -> Option<RootId> {
        self.by_eps2.get(eps2).copied()
    }

    /// Sum of two roots when it is a root.
    pub fn add(&self, a: RootId, b: RootId) -> Option<RootId> {
        let s = self.sums[a.index() * self.roots.len() + b.index()];
        (s != NO_ROOT).then_some(RootId(s))
    }

    pub fn sub(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.add(a, self.neg(b))
    }

    /// Inner product in `eps2` units.
    pub fn inner(&self, a: RootId, b: RootId) -> i64 {
        dot(&self.roots[a.index()].eps2, &self.roots[b.index()].eps2)
    }

    /// Inner product of two root-lattice vectors given by simple coefficients.
    pub fn inner_coeffs(&self, x: &[i32], y: &[i32]) -> i64 {
        let mut s = 0;
        for (&xa, row) in x.iter().zip(&self.gram) {
            if xa == 0 {
                continue;
            }
            for (&yb, &g) in y.iter().zip(row) {
                s += xa as i64 * yb as i64 * g;
            }
        }
        s
    }

    /// Cartan integer `⟨a, b^∨⟩ = 2(a, b)/(b, b)`.
    pub fn pairing(&self, a: RootId, b: RootId) -> i32 {
        (2 * self.inner(a, b) / self.inner(b, b)) as i32
    }

    pub fn orthogonal(&self, a: RootId, b: RootId) -> bool {
        self.inner(a, b) == 0
    }

    /// Reflects an arbitrary root-lattice vector (simple coefficients) in the
    /// hyperplane of `mirror`, which must itself be a root.
    pub fn reflect_vector(&self, mirror: &[i32], target: &[i32]) -> Result<Vec<i32>> {
        if mirror.iter().all(|&c| c == 0) {
            return Err(Error::ZeroMirror);
        }
        if self.find_coeffs(mirror).is_none() {
            return Err(Error::NotARoot(format_coeffs(mirror)));
        }
        let num = 2 * self.inner_coeffs(target, mirror);
        let den = self.inner_coeffs(mirror, mirror);
        let p = (num / den) as i32;
        Ok(target.iter().zip(mirror).map(|(t, m)| t - p * m).collect())
    }

    /// `s_mirror(target)` for roots.
    pub fn reflect(&self, mirror: RootId, target: RootId) -> RootId {
        let m = &self.roots[mirror.index()].coeffs;
        let t = &self.roots[target.index()].coeffs;
        let p = self.pairing(target, mirror);
        let d: Vec<i32> = t.iter().zip(m).map(|(t, m)| t - p * m).collect();
        self.by_coeffs[&d]
    }

    pub(crate) fn simple_perm(&self, i: usize) -> &[u8] {
        &self.simple_perms[i]
    }

    /// Parses a root written as simple coefficients (`"2342"`, `"1,0,…"` for
    /// rank ≥ 10, `"12321/2"` for `E6`) or as an ε-expression (`"e1+e3"`,
    /// `"2e2"`, `"e1-e2"`). A leading `-` negates.
    pub fn parse_root(&self, text: &str) -> Result<RootId> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::BadRoot(text.to_string()));
        }
        if t.contains('e') {
            let eps2 = self.parse_eps(&t)?;
            return self.find_eps2(&eps2).ok_or_else(|| Error::NotARoot(text.to_string()));
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.as_str()),
        };
        let mut coeffs: Vec<i32> = if body.contains(',') {
            body.split(',')
                .map(|p| p.parse::<i32>().map_err(|_| Error::BadRoot(text.to_string())))
                .collect::<Result<_>>()?
        } else {
            let digits: String = body.chars().filter(|&c| c != '/').collect();
            digits
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as i32).ok_or_else(|| Error::BadRoot(text.to_string())))
                .collect::<Result<_>>()?
        };
        if coeffs.len() != self.rank() {
            return Err(Error::BadRoot(text.to_string()));
        }
        if neg {
            coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        self.find_coeffs(&coeffs).ok_or_else(|| Error::NotARoot(text.to_string()))
    }

    fn parse_eps(&self, t: &str) -> Result<Vec<i32>> {
        let bad = || Error::BadRoot(t.to_string());
        let dim = self.roots[0].eps2.len();
        let mut v = vec![0i32; dim];
        let bytes = t.as_bytes();
        let mut k = 0;
        while k < bytes.len() {
            let mut sign = 1;
            if bytes[k] == b'+' || bytes[k] == b'-' {
                if bytes[k] == b'-' {
                    sign = -1;
                }
                k += 1;
            }
            let start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            let coef: i32 = if k == start { 1 } else { t[start..k].parse().map_err(|_| bad())? };
            if k >= bytes.len() || bytes[k] != b'e' {
                return Err(bad());
            }
            k += 1;
            let start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            let idx: usize = t[start..k].parse().map_err(|_| bad())?;
            if idx == 0 || idx > dim {
                return Err(bad());
            }
            v[idx - 1] += 2 * sign * coef;
        }
        Ok(v)
    }

    /// Simple-coefficient notation: `"2342"`, or comma separated for rank ≥ 10.
    pub fn format_root(&self, r: RootId) -> String {
        let c = &self.roots[r.index()].coeffs;
        if self.is_positive(r) {
            format_coeffs(c)
        } else {
            let p: Vec<i32> = c.iter().map(|x| -x).collect();
            format!("-{}", format_coeffs(&p))
        }
    }

    /// ε-notation such as `e1+e3`, `2e2` or `1/2(e1-e2-e3-e4)`.
    pub fn format_eps(&self, r: RootId) -> String {
        let v = &self.roots[r.index()].eps2;
        let halves = v.iter().any(|x| x % 2 != 0);
        let mut s = String::new();
        for (k, &x) in v.iter().enumerate() {
            let c = if halves { x } else { x / 2 };
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&format!("e{}", k + 1));
        }
        if halves {
            format!("1/2({s})")
        } else {
            s
        }
    }

    /// Stable JSON summary of the system.
    pub fn export(&self) -> RootSystemExport {
        let rec = |r: RootId| RootRecord {
            coeffs: self.format_root(r),
            eps: self.format_eps(r),
            eps2: self.root(r).eps2.clone(),
            height: self.root(r).height(),
            length: self.length(r),
        };
        RootSystemExport {
            system: self.id,
            rank: self.rank(),
            simple_roots: self.simple.iter().map(|&r| rec(r)).collect(),
            positive_roots: self.positive().map(rec).collect(),
            cartan: self.cartan.clone(),
            theta: self.format_root(self.theta),
            vartheta: self.format_root(self.vartheta),
        }
    }
}

pub fn format_coeffs(c: &[i32]) -> String {
    if c.len() <= 9 && c.iter().all(|x| (0..=9).contains(x)) {
        c.iter().map(|x| x.to_string()).collect()
    } else {
        c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRecord {
    pub coeffs: String,
    pub eps: String,
    pub eps2: Vec<i32>,
    pub height: i32,
    pub length: LengthClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemExport {
    pub system: RootSystemId,
    pub rank: usize,
    pub simple_roots: Vec<RootRecord>,
    pub positive_roots: Vec<RootRecord>,
    pub cartan: Vec<Vec<i32>>,
    pub theta: String,
    pub vartheta: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubsystemKind {
    B3,
    C3,
    D4,
}

impl SubsystemKind {
    pub fn id(self) -> RootSystemId {
        match self {
            SubsystemKind::B3 => RootSystemId { family: Family::B, rank: 3 },
            SubsystemKind::C3 => RootSystemId { family: Family::C, rank: 3 },
            SubsystemKind::D4 => RootSystemId { family: Family::D, rank: 4 },
        }
    }

    pub fn rank(self) -> usize {
        self.id().rank
    }

    pub fn num_positive(self) -> usize {
        match self {
            SubsystemKind::B3 | SubsystemKind::C3 => 9,
            SubsystemKind::D4 => 12,
        }
    }
}

impl fmt::Display for SubsystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// A root subsystem of type `B3`, `C3` or `D4` with a base made of positive roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subsystem {
    pub kind: SubsystemKind,
    /// Base in the Bourbaki order of `kind`.
    pub simple: Vec<RootId>,
    /// Sorted positive roots generated by `simple`.
    pub positive: Vec<RootId>,
}

impl RootSystem {
    /// All subsystems of the given kind, one per positive-root set.
    pub fn enumerate_subsystems(&self, kind: SubsystemKind) -> Vec<Subsystem> {
        if self.rank() < kind.rank() {
            return Vec::new();
        }
        let target = RootSystem::build(kind.id()).expect("subsystem types are valid").cartan;
        let k = kind.rank();
        let positives: Vec<RootId> = self.positive().collect();
        let mut found: BTreeMap<Vec<RootId>, Vec<RootId>> = BTreeMap::new();
        let mut tuple: Vec<RootId> = Vec::with_capacity(k);

        fn extend(
            rs: &RootSystem,
            target: &[Vec<i32>],
            positives: &[RootId],
            tuple: &mut Vec<RootId>,
            found: &mut BTreeMap<Vec<RootId>, Vec<RootId>>,
            want: usize,
        ) {
            let t = tuple.len();
            if t == target.len() {
                let set = rs.generated_positive(tuple);
                // the tuple must be the base of the positive roots it generates
                let indecomposable = tuple
                    .iter()
                    .all(|&r| set.iter().all(|&a| rs.sub(r, a).is_none_or(|d| set.binary_search(&d).is_err())));
                if set.len() == want && indecomposable {
                    found.entry(set).or_insert_with(|| tuple.clone());
                }
                return;
            }
            for &r in positives {
                let fits = tuple
                    .iter()
                    .enumerate()
                    .all(|(s, &q)| rs.pairing(r, q) == target[t][s] && rs.pairing(q, r) == target[s][t]);
                if fits {
                    tuple.push(r);
                    extend(rs, target, positives, tuple, found, want);
                    tuple.pop();
                }
            }
        }

        extend(self, &target, &positives, &mut tuple, &mut found, kind.num_positive());
        found.into_iter().map(|(positive, simple)| Subsystem { kind, simple, positive }).collect()
    }

    /// Cached [`RootSystem::enumerate_subsystems`].
    pub fn subsystems(&self, kind: SubsystemKind) -> &[Subsystem] {
        let slot = match kind {
            SubsystemKind::B3 => 0,
            SubsystemKind::C3 => 1,
            SubsystemKind::D4 => 2,
        };
        self.subsystem_cache[slot].get_or_init(|| self.enumerate_subsystems(kind))
    }

    /// Positive roots of the subsystem generated by `base`, sorted.
    pub fn generated_positive(&self, base: &[RootId]) -> Vec<RootId> {
        let mut seen = vec![false; self.num_roots()];
        let mut queue: Vec<RootId> = base.to_vec();
        for &b in base {
            seen[b.index()] = true;
        }
        let mut k = 0;
        while k < queue.len() {
            let r = queue[k];
            for &b in base {
                let s = self.reflect(b, r);
                if !seen[s.index()] {
                    seen[s.index()] = true;
                    queue.push(s);
                }
            }
            k += 1;
        }
        let mut out: Vec<RootId> = queue.into_iter().filter(|&r| self.is_positive(r)).collect();
        out.sort();
        out
    }
}
