//! Weyl group elements, words and λ-sequences.
//!
//! A [`Word`] stores letters as written, `w = s_{i_l} ⋯ s_{i_2} s_{i_1}`,
//! and is composed right to left: the last written letter acts first and
//! contributes the first root `α¹ = α_{i_1}` of the λ-sequence.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::roots::{RootId, RootSystem};

/// Simple-reflection indices, 0-based internally, 1-based in text.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 1-based letters.
    pub fn from_one_based(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&l| (l - 1) as u8).collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn check_range(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l as usize >= rank) {
            Some(&l) => Err(Error::LetterOutOfRange { letter: l as usize + 1, rank }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l < 9) {
            for &l in &self.0 {
                write!(f, "{}", l + 1)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|&l| (l as usize + 1).to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Digit strings (`"2132"`) or comma-separated integers (`"10,2,1"`);
    /// `""`, `"-"` and `"e"` denote the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "e" {
            return Ok(Word::empty());
        }
        let bad = || Error::BadWord(s.to_string());
        let letters: Vec<usize> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
        };
        if letters.iter().any(|&l| l == 0 || l > 255) {
            return Err(bad());
        }
        Ok(Word::from_one_based(&letters))
    }
}

/// A Weyl group element, stored as the permutation it induces on all roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    perm: Box<[u8]>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(len {}, {:?})", self.length(), &self.perm[..])
    }
}

impl Element {
    pub fn identity(rs: &RootSystem) -> Self {
        Element { perm: (0..rs.num_roots()).map(|k| k as u8).collect() }
    }

    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        Element { perm: rs.simple_perm(i).into() }
    }

    fn n_pos(&self) -> usize {
        self.perm.len() / 2
    }

    /// `w(r)`.
    pub fn apply(&self, r: RootId) -> RootId {
        RootId(self.perm[r.index()])
    }

    fn neg_image(&self, k: usize) -> bool {
        self.perm[k] as usize >= self.n_pos()
    }

    /// `l(w) = |λ(w)|`.
    pub fn length(&self) -> usize {
        (0..self.n_pos()).filter(|&k| self.neg_image(k)).count()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Element) -> Element {
        Element { perm: other.perm.iter().map(|&k| self.perm[k as usize]).collect() }
    }

    pub fn inverse(&self) -> Element {
        let mut inv = vec![0u8; self.perm.len()];
        for (k, &v) in self.perm.iter().enumerate() {
            inv[v as usize] = k as u8;
        }
        Element { perm: inv.into() }
    }

    /// `w s_i`.
    pub fn mul_simple_right(&self, rs: &RootSystem, i: usize) -> Element {
        let s = rs.simple_perm(i);
        Element { perm: s.iter().map(|&k| self.perm[k as usize]).collect() }
    }

    /// `s_i w`.
    pub fn mul_simple_left(&self, rs: &RootSystem, i: usize) -> Element {
        let s = rs.simple_perm(i);
        Element { perm: self.perm.iter().map(|&k| s[k as usize]).collect() }
    }

    /// `{i : l(w s_i) < l(w)}`, ascending.
    pub fn right_descents(&self, rs: &RootSystem) -> Vec<usize> {
        (0..rs.rank()).filter(|&i| self.neg_image(rs.simple(i).index())).collect()
    }

    /// `{i : l(s_i w) < l(w)}`, ascending.
    pub fn left_descents(&self, rs: &RootSystem) -> Vec<usize> {
        self.inverse().right_descents(rs)
    }

    pub fn is_right_descent(&self, rs: &RootSystem, i: usize) -> bool {
        self.neg_image(rs.simple(i).index())
    }

    pub fn is_left_descent(&self, rs: &RootSystem, i: usize) -> bool {
        let target = rs.simple(i).0;
        let k = self.perm.iter().position(|&v| v == target).unwrap();
        k >= self.n_pos()
    }

    /// `λ(w) = R₊ ∩ w⁻¹(R₋)` in root order.
    pub fn lambda_set(&self) -> Vec<RootId> {
        (0..self.n_pos()).filter(|&k| self.neg_image(k)).map(|k| RootId(k as u8)).collect()
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Images of the simple roots.
    pub fn simple_images(&self, rs: &RootSystem) -> Vec<RootId> {
        rs.simple_roots().iter().map(|&r| self.apply(r)).collect()
    }
}

/// Roots of `λ(w)` in the order induced by a reduced word; `roots[0] = α_{i_1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSequence {
    pub roots: Vec<RootId>,
}

impl LambdaSequence {
    /// The same roots listed last-computed first, aligned with the written word.
    pub fn written_order(&self) -> Vec<RootId> {
        self.roots.iter().rev().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn position(&self, r: RootId) -> Option<usize> {
        self.roots.iter().position(|&x| x == r)
    }

    pub fn sorted(&self) -> Vec<RootId> {
        let mut v = self.roots.clone();
        v.sort();
        v
    }
}

/// Outcome of checking length additivity, the cocycle relation and positivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CocycleCheck {
    pub length_additive: bool,
    pub cocycle: bool,
    pub positivity: bool,
}

impl CocycleCheck {
    /// All three conditions agree.
    pub fn consistent(&self) -> bool {
        self.length_additive == self.cocycle && self.cocycle == self.positivity
    }

    pub fn holds(&self) -> bool {
        self.length_additive && self.cocycle && self.positivity
    }
}

impl RootSystem {
    pub fn identity(&self) -> Element {
        Element::identity(self)
    }

    /// The element `s_{i_l} ⋯ s_{i_1}` of a word.
    pub fn element_of(&self, word: &Word) -> Result<Element> {
        word.check_range(self.rank())?;
        let mut e = self.identity();
        for &l in word.letters() {
            e = e.mul_simple_right(self, l as usize);
        }
        Ok(e)
    }

    /// Roots `s_{i_1} ⋯ s_{i_{k-1}}(α_{i_k})` aligned with the written letters,
    /// without a reducedness check (entries may be negative).
    pub fn raw_lambda_written(&self, word: &Word) -> Vec<RootId> {
        let letters = word.letters();
        let mut out = vec![RootId(0); letters.len()];
        let mut prefix = self.identity();
        for p in (0..letters.len()).rev() {
            let i = letters[p] as usize;
            out[p] = prefix.apply(self.simple(i));
            prefix = prefix.mul_simple_right(self, i);
        }
        out
    }

    /// The λ-sequence of a reduced word, first root `α_{i_1}`.
    pub fn lambda_sequence(&self, word: &Word) -> Result<LambdaSequence> {
        word.check_range(self.rank())?;
        let written = self.raw_lambda_written(word);
        let l = written.len();
        if let Some(k) = (0..l).rev().find(|&k| !self.is_positive(written[k])) {
            return Err(Error::NotReduced { position: k });
        }
        Ok(LambdaSequence { roots: written.into_iter().rev().collect() })
    }

    pub fn is_reduced(&self, word: &Word) -> bool {
        word.check_range(self.rank()).is_ok() && self.raw_lambda_written(word).iter().all(|&r| self.is_positive(r))
    }

    pub fn lambda_set(&self, e: &Element) -> Vec<RootId> {
        e.lambda_set()
    }

    /// Reflection `s_γ` as a permutation of the roots.
    pub fn reflection_element(&self, gamma: RootId) -> Element {
        Element { perm: (0..self.num_roots()).map(|k| self.reflect(gamma, RootId(k as u8)).0).collect() }
    }

    /// `t_k = (s_{i_1} ⋯ s_{i_{k-1}}) s_{i_k} (s_{i_1} ⋯ s_{i_{k-1}})⁻¹` in λ order.
    pub fn coxeter_t_set(&self, word: &Word) -> Result<Vec<Element>> {
        word.check_range(self.rank())?;
        let mut out = Vec::with_capacity(word.len());
        let mut prefix = self.identity();
        for &l in word.letters().iter().rev() {
            let s = Element::simple(self, l as usize);
            out.push(prefix.compose(&s).compose(&prefix.inverse()));
            prefix = prefix.mul_simple_right(self, l as usize);
        }
        Ok(out)
    }

    /// Lexicographically least reduced word read left to right.
    pub fn shortlex(&self, e: &Element) -> Word {
        let mut inv = e.inverse();
        let mut letters = Vec::with_capacity(e.length());
        'outer: loop {
            for i in 0..self.rank() {
                if inv.is_right_descent(self, i) {
                    letters.push(i as u8);
                    inv = inv.mul_simple_right(self, i);
                    continue 'outer;
                }
            }
            break;
        }
        Word(letters)
    }

    /// A reduced word for `e` whose first written letter is `j`, which must
    /// be a left descent.
    pub fn word_with_left_letter(&self, e: &Element, j: usize) -> Word {
        debug_assert!(e.is_left_descent(self, j));
        let rest = e.mul_simple_left(self, j);
        let mut letters = vec![j as u8];
        letters.extend_from_slice(self.shortlex(&rest).letters());
        Word(letters)
    }

    pub fn verify_cocycle(&self, w: &Element, u: &Element) -> CocycleCheck {
        let wu = w.compose(u);
        let lw = w.lambda_set();
        let lu = u.lambda_set();
        let lwu = wu.lambda_set();
        let u_inv = u.inverse();
        let moved: Vec<RootId> = lw.iter().map(|&r| u_inv.apply(r)).collect();

        let length_additive = wu.length() == w.length() + u.length();
        let positivity = moved.iter().all(|&r| self.is_positive(r));
        let mut union: Vec<RootId> = lu.iter().chain(&moved).copied().collect();
        union.sort();
        let disjoint = union.windows(2).all(|p| p[0] != p[1]);
        let cocycle = disjoint && union == lwu;
        CocycleCheck { length_additive, cocycle, positivity }
    }

    pub fn longest_element(&self) -> Element {
        let mut e = self.identity();
        loop {
            match (0..self.rank()).find(|&i| !e.is_right_descent(self, i)) {
                Some(i) => e = e.mul_simple_right(self, i),
                None => return e,
            }
        }
    }

    /// Breadth-first enumeration of the group, one layer per length.
    pub fn enumerate_group(&self, max_length: Option<usize>) -> GroupLayers<'_> {
        GroupLayers { rs: self, current: Some(vec![self.identity()]), length: 0, max_length }
    }

    /// A uniformly grown random reduced word of the given length (capped at
    /// the length of the longest element).
    pub fn random_reduced_word<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Word {
        let mut e = self.identity();
        let mut letters = Vec::with_capacity(len);
        while letters.len() < len {
            let ascents: Vec<usize> = (0..self.rank()).filter(|&i| !e.is_left_descent(self, i)).collect();
            if ascents.is_empty() {
                break;
            }
            let i = ascents[rng.gen_range(0..ascents.len())];
            letters.push(i as u8);
            e = e.mul_simple_left(self, i);
        }
        // Letters were prepended on the left one at a time.
        letters.reverse();
        Word(letters)
    }
}

/// Iterator over the length strata of a Weyl group.
pub struct GroupLayers<'a> {
    rs: &'a RootSystem,
    current: Option<Vec<Element>>,
    length: usize,
    max_length: Option<usize>,
}

impl<'a> GroupLayers<'a> {
    /// Flattens the strata into single elements.
    pub fn elements(self) -> impl Iterator<Item = Element> + 'a {
        self.flat_map(|(_, layer)| layer)
    }
}

impl Iterator for GroupLayers<'_> {
    type Item = (usize, Vec<Element>);

    fn next(&mut self) -> Option<Self::Item> {
        let layer = self.current.take()?;
        if layer.is_empty() {
            return None;
        }
        let length = self.length;
        if self.max_length.is_none_or(|m| length < m) {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for e in &layer {
                for i in 0..self.rs.rank() {
                    if !e.is_right_descent(self.rs, i) {
                        let f = e.mul_simple_right(self.rs, i);
                        if seen.insert(f.clone()) {
                            next.push(f);
                        }
                    }
                }
            }
            self.current = Some(next);
        }
        self.length += 1;
        Some((length, layer))
    }
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
    fn word_text() {
        assert_eq!(w("2132").to_string(), "2132");
        assert_eq!(w("10,2,1").letters(), &[9, 1, 0]);
        assert_eq!(w("10,2,1").to_string(), "10,2,1");
        assert!(w("").is_empty());
        assert!("20".parse::<Word>().is_err());
        assert!("1a".parse::<Word>().is_err());
    }

    #[test]
    fn element_basics() {
        let b3 = sys("B3");
        let s2 = b3.element_of(&w("2")).unwrap();
        assert_eq!(s2, Element::simple(&b3, 1));
        assert_eq!(s2.length(), 1);
        assert!(b3.element_of(&w("")).unwrap().is_identity());
        assert!(matches!(b3.element_of(&w("4")), Err(Error::LetterOutOfRange { .. })));
        let e = b3.element_of(&w("123")).unwrap();
        assert_eq!(e.compose(&e.inverse()), b3.identity());
    }

    #[test]
    fn group_orders() {
        for (name, order) in [("A1", 2), ("A3", 24), ("B2", 8), ("G2", 12), ("B3", 48), ("D4", 192), ("F4", 1152)] {
            let rs = sys(name);
            let mut count = 0;
            let mut top = Vec::new();
            let mut last_len = 0;
            for (len, layer) in rs.enumerate_group(None) {
                assert!(len >= last_len);
                last_len = len;
                count += layer.len();
                top = layer;
            }
            assert_eq!(count, order, "{name}");
            assert_eq!(top.len(), 1);
            assert_eq!(top[0].length(), rs.num_positive());
            assert_eq!(top[0], rs.longest_element());
        }
    }

    #[test]
    fn lambda_sequence_basics() {
        let a2 = sys("A2");
        assert!(a2.lambda_sequence(&w("")).unwrap().is_empty());
        assert!(matches!(a2.lambda_sequence(&w("11")), Err(Error::NotReduced { .. })));
        let b2 = sys("B2");
        let seq = b2.lambda_sequence(&w("1212")).unwrap();
        assert_eq!(seq.sorted(), b2.positive().collect::<Vec<_>>());
        assert_eq!(seq.roots[0], b2.simple(1));
    }

    #[test]
    fn reflection_of_b3_theta() {
        let b3 = sys("B3");
        let s = b3.reflection_element(b3.theta());
        let mut expected: Vec<RootId> = ["e1+e3", "e1", "e2+e3", "e1+e2", "e1-e3", "e2", "e2-e3"]
            .iter()
            .map(|t| b3.parse_root(t).unwrap())
            .collect();
        expected.sort();
        assert_eq!(s.lambda_set(), expected);
        assert_eq!(s.length(), 7);
        assert_eq!(b3.reflection_element(b3.simple(0)), Element::simple(&b3, 0));
    }

    #[test]
    fn inverse_lambda_set() {
        let f4 = sys("F4");
        let e = f4.element_of(&w("2132132432")).unwrap();
        let inv = e.inverse();
        let mut expected: Vec<RootId> = e.lambda_set().iter().map(|&r| f4.neg(e.apply(r))).collect();
        expected.sort();
        assert_eq!(inv.lambda_set(), expected);
    }

    #[test]
    fn t_set_of_repeated_letter() {
        let b2 = sys("B2");
        let t = b2.coxeter_t_set(&w("11")).unwrap();
        assert_eq!(t[0], t[1]);
        assert_eq!(t[0], Element::simple(&b2, 0));
    }

    #[test]
    fn t_set_distinct_iff_reduced_b2() {
        let b2 = sys("B2");
        for len in 0..=4 {
            for code in 0..(1usize << len) {
                let letters: Vec<u8> = (0..len).map(|k| ((code >> k) & 1) as u8).collect();
                let word = Word::new(letters);
                let t = b2.coxeter_t_set(&word).unwrap();
                let distinct: HashSet<_> = t.iter().collect();
                assert_eq!(distinct.len() == t.len(), b2.is_reduced(&word), "{word}");
            }
        }
    }

    #[test]
    fn shortlex_small_cases() {
        let d4 = sys("D4");
        for i in 0..4 {
            assert_eq!(d4.shortlex(&Element::simple(&d4, i)), Word::new(vec![i as u8]));
        }
        let a2 = sys("A2");
        assert_eq!(a2.shortlex(&a2.longest_element()).to_string(), "121");
    }

    #[test]
    fn shortlex_of_f4_example() {
        let f4 = sys("F4");
        let e = f4
            .reflection_element(f4.parse_root("1342").unwrap())
            .compose(&f4.reflection_element(f4.parse_root("1110").unwrap()));
        assert_eq!(f4.shortlex(&e).to_string(), "2132132432132432");
        assert_eq!(f4.element_of(&w("2132132432132432")).unwrap(), e);
        assert!(e.is_involution());
    }

    #[test]
    fn cocycle_cases() {
        let d4 = sys("D4");
        let s = Element::simple(&d4, 1);
        let id = d4.identity();
        assert!(d4.verify_cocycle(&s, &id).holds());
        let c = d4.verify_cocycle(&s, &s);
        assert!(!c.length_additive && !c.positivity && !c.cocycle);
        assert!(c.consistent());
    }

    #[test]
    fn random_words_are_reduced() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let e6 = sys("E6");
        for _ in 0..50 {
            let word = e6.random_reduced_word(&mut rng, 20);
            assert_eq!(word.len(), 20);
            assert!(e6.is_reduced(&word));
        }
    }
}
