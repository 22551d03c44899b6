//! Words, permutations, descent-type statistics, and the membership
//! predicates for Andre, web, and cycle-up-down permutations.
//!
//! Conventions used throughout:
//! * letters are positive, words have distinct letters;
//! * positions are 1-based in documentation and errors, slices are 0-based;
//! * a cycle is written with its minimum first, and cycle lists are sorted
//!   by those minima.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default size cap for full enumerations (n! growth).
pub const DEFAULT_MAX_N: usize = 9;

/// Renders letters compactly: digit string when every letter is <= 9,
/// comma-separated otherwise. The empty word renders as the empty string.
///
/// Parsing reads comma-free digit strings one digit at a time, so a
/// one-letter word whose letter is 10 or more renders to a string that
/// parses back letter by letter (or not at all). Words of length two or
/// more always round-trip, as do singletons whose letter contains a zero
/// digit.
pub fn word_string(letters: &[u32]) -> String {
    if letters.iter().all(|&a| a <= 9) {
        letters.iter().map(|a| a.to_string()).collect()
    } else {
        letters
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_letters(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let bad = |_| Error::NotAPermutation(s.to_string());
    if s.contains(',') || s.contains(char::is_whitespace) {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<u32>().map_err(bad))
            .collect()
    } else if s.contains('0') {
        // Zero is never a letter, so a zero digit marks a lone
        // multi-digit number rather than a digit word.
        Ok(vec![s.parse::<u32>().map_err(bad)?])
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or(Error::NotAPermutation(s.to_string())))
            .collect()
    }
}

/// A word with distinct positive letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(Vec<u32>);

impl Word {
    /// Wraps letters after checking they are positive and distinct.
    pub fn new(letters: Vec<u32>) -> Result<Word> {
        let mut seen = std::collections::BTreeSet::new();
        for &a in &letters {
            if a == 0 || !seen.insert(a) {
                return Err(Error::NotAPermutation(word_string(&letters)));
            }
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }
}

impl Deref for Word {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_string(&self.0))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        Word::new(parse_letters(s)?)
    }
}

/// A permutation of 1..=n in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    oneline: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            oneline: (1..=n as u32).collect(),
        }
    }

    /// Validates that `oneline` is a permutation of 1..=n.
    pub fn from_oneline(oneline: Vec<u32>) -> Result<Permutation> {
        let n = oneline.len();
        let mut seen = vec![false; n + 1];
        for &v in &oneline {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::NotAPermutation(word_string(&oneline)));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { oneline })
    }

    /// Builds a permutation of 1..=n from disjoint cycles; letters not
    /// mentioned are fixed points.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Permutation> {
        let mut oneline: Vec<u32> = (1..=n as u32).collect();
        let mut seen = vec![false; n + 1];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a as usize > n || seen[a as usize] {
                    return Err(Error::NotAPermutation(format!(
                        "cycles touch letter {a} twice or out of range"
                    )));
                }
                seen[a as usize] = true;
                let b = cycle[(k + 1) % cycle.len()];
                oneline[a as usize - 1] = b;
            }
        }
        Permutation::from_oneline(oneline)
    }

    pub fn size(&self) -> usize {
        self.oneline.len()
    }

    pub fn oneline(&self) -> &[u32] {
        &self.oneline
    }

    pub fn to_word(&self) -> Word {
        Word(self.oneline.clone())
    }

    /// Image of the 1-based position `i`.
    pub fn image(&self, i: usize) -> Result<u32> {
        if i == 0 || i > self.size() {
            return Err(Error::PositionOutOfRange(i));
        }
        Ok(self.oneline[i - 1])
    }

    /// 1-based position of the letter `v`.
    pub fn position_of(&self, v: u32) -> Result<usize> {
        self.oneline
            .iter()
            .position(|&a| a == v)
            .map(|p| p + 1)
            .ok_or(Error::LetterAbsent(v))
    }

    /// Positions indexed by letter: `inverse_positions()[v-1]` is the
    /// 1-based position of the letter v.
    pub fn inverse_positions(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.size()];
        for (i, &v) in self.oneline.iter().enumerate() {
            pos[v as usize - 1] = i + 1;
        }
        pos
    }

    pub fn inverse(&self) -> Permutation {
        let pos = self.inverse_positions();
        Permutation {
            oneline: pos.into_iter().map(|p| p as u32).collect(),
        }
    }

    /// Cycle decomposition, each cycle minimum-first, cycles sorted by
    /// their minima.
    pub fn cycles(&self) -> Vec<Word> {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        // Visiting starts in increasing order reaches each cycle at its
        // minimum, so the words come out canonical for free.
        for start in 1..=n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.oneline[x as usize - 1];
            }
            out.push(Word(cycle));
        }
        out
    }

    pub fn statistics(&self) -> StatRecord {
        statistics(&self.oneline, &self.cycles())
    }

    /// True when every cycle, written minimum-first, is an Andre word.
    pub fn is_web(&self) -> bool {
        self.cycles().iter().all(|c| is_andre_cycle(c))
    }

    /// True when every cycle, written minimum-first, is an up-down word.
    pub fn is_cycle_up_down(&self) -> bool {
        self.cycles().iter().all(|c| is_up_down(c))
    }

    /// Sum over cycles of mix(cycle word), counting one extra per
    /// non-singleton cycle.
    pub fn drop_hat(&self) -> usize {
        self.cycles()
            .iter()
            .map(|c| mix(c) + usize::from(c.len() > 1))
            .sum()
    }

    pub fn has_double_descent(&self) -> bool {
        letter_kinds(&self.oneline)
            .iter()
            .any(|k| *k == LetterKind::DoubleDescent)
    }

    /// Letters that are valleys (both neighbors larger, boundary letters
    /// flanked by +infinity).
    pub fn valley_letters(&self) -> Vec<u32> {
        letter_kinds(&self.oneline)
            .iter()
            .zip(&self.oneline)
            .filter(|(k, _)| **k == LetterKind::Valley)
            .map(|(_, &a)| a)
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_string(&self.oneline))
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Permutation> {
        Permutation::from_oneline(parse_letters(s)?)
    }
}

/// All ten statistics of one permutation.
///
/// Invariants: des <= n-1 for n >= 1, fix <= cyc, and lmi, rmi >= 1 for
/// n >= 1. For n = 0 every field is zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct StatRecord {
    /// Descents: positions i with w(i) > w(i+1).
    pub des: usize,
    /// Drops: positions i with w(i) < i.
    pub drop: usize,
    /// Fixed points.
    pub fix: usize,
    /// Cycles, fixed points included.
    pub cyc: usize,
    /// Left-to-right minima.
    pub lmi: usize,
    /// Right-to-left minima.
    pub rmi: usize,
    /// Left-to-right minima that are double descents.
    pub lmidd: usize,
    /// Right-to-left minima that are double ascents.
    pub rmida: usize,
    /// Peaks.
    pub pk: usize,
    /// Valleys.
    pub valley: usize,
}

/// Local shape of a letter between its neighbors, with +infinity flanking
/// both ends of the word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LetterKind {
    DoubleAscent,
    DoubleDescent,
    Peak,
    Valley,
}

/// Kind of each position of `w` (0-based index into the result).
pub fn letter_kinds(w: &[u32]) -> Vec<LetterKind> {
    let n = w.len();
    (0..n)
        .map(|i| {
            let left_bigger = i == 0 || w[i - 1] > w[i];
            let right_bigger = i + 1 == n || w[i + 1] > w[i];
            match (left_bigger, right_bigger) {
                (true, true) => LetterKind::Valley,
                (true, false) => LetterKind::DoubleDescent,
                (false, true) => LetterKind::DoubleAscent,
                (false, false) => LetterKind::Peak,
            }
        })
        .collect()
}

/// 0-based positions of the left-to-right minima of `w`.
pub fn lmi_positions(w: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best = u32::MAX;
    for (i, &a) in w.iter().enumerate() {
        if a < best {
            best = a;
            out.push(i);
        }
    }
    out
}

/// 0-based positions of the right-to-left minima of `w`, left to right.
pub fn rmi_positions(w: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best = u32::MAX;
    for (i, &a) in w.iter().enumerate().rev() {
        if a < best {
            best = a;
            out.push(i);
        }
    }
    out.reverse();
    out
}

fn statistics(w: &[u32], cycles: &[Word]) -> StatRecord {
    let n = w.len();
    if n == 0 {
        return StatRecord::default();
    }
    let des = (0..n - 1).filter(|&i| w[i] > w[i + 1]).count();
    let drop = w
        .iter()
        .enumerate()
        .filter(|(i, &v)| (v as usize) < i + 1)
        .count();
    let fix = w
        .iter()
        .enumerate()
        .filter(|(i, &v)| v as usize == i + 1)
        .count();
    let cyc = cycles.len();
    let kinds = letter_kinds(w);
    let lmis = lmi_positions(w);
    let rmis = rmi_positions(w);
    let lmidd = lmis
        .iter()
        .filter(|&&i| kinds[i] == LetterKind::DoubleDescent)
        .count();
    let rmida = rmis
        .iter()
        .filter(|&&i| kinds[i] == LetterKind::DoubleAscent)
        .count();
    let pk = kinds.iter().filter(|k| **k == LetterKind::Peak).count();
    let valley = kinds.iter().filter(|k| **k == LetterKind::Valley).count();
    StatRecord {
        des,
        drop,
        fix,
        cyc,
        lmi: lmis.len(),
        rmi: rmis.len(),
        lmidd,
        rmida,
        pk,
        valley,
    }
}

/// True when `w` alternates up, down, up, down from its first letter.
pub fn is_up_down(w: &[u32]) -> bool {
    w.windows(2).enumerate().all(|(i, pair)| {
        if i % 2 == 0 {
            pair[0] < pair[1]
        } else {
            pair[0] > pair[1]
        }
    })
}

/// Andre word test, by the recursive minimum split: with the minimum at
/// position k, both sides must be Andre and the maximum must sit to the
/// right of the minimum.
pub fn is_andre(w: &[u32]) -> bool {
    if w.len() <= 1 {
        return true;
    }
    let k = w
        .iter()
        .enumerate()
        .min_by_key(|(_, &a)| a)
        .map(|(i, _)| i)
        .unwrap();
    let max_all = *w.iter().max().unwrap();
    let max_right = *w[k..].iter().max().unwrap();
    max_right == max_all && is_andre(&w[..k]) && is_andre(&w[k + 1..])
}

/// Andre test for a cycle word: rotate the minimum to the front and test
/// the remainder. Singletons and the empty cycle pass.
pub fn is_andre_cycle(c: &[u32]) -> bool {
    if c.len() <= 1 {
        return true;
    }
    let k = c
        .iter()
        .enumerate()
        .min_by_key(|(_, &a)| a)
        .map(|(i, _)| i)
        .unwrap();
    let mut rot = Vec::with_capacity(c.len());
    rot.extend_from_slice(&c[k..]);
    rot.extend_from_slice(&c[..k]);
    is_andre(&rot[1..])
}

/// Number of interior splits in the recursive decomposition of `w` at its
/// earlier extreme: split at whichever of the minimum and maximum occurs
/// first, count one when both sides are nonempty, and recurse.
pub fn mix(w: &[u32]) -> usize {
    if w.len() <= 1 {
        return 0;
    }
    let jmin = w
        .iter()
        .enumerate()
        .min_by_key(|(_, &a)| a)
        .map(|(i, _)| i)
        .unwrap();
    let jmax = w
        .iter()
        .enumerate()
        .max_by_key(|(_, &a)| a)
        .map(|(i, _)| i)
        .unwrap();
    let j = jmin.min(jmax);
    mix(&w[..j]) + mix(&w[j + 1..]) + usize::from(j > 0 && j + 1 < w.len())
}

/// Lexicographic stream of the permutations of 1..=n.
pub struct Permutations {
    next: Option<Vec<u32>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut v = current.clone();
        if next_lex(&mut v) {
            self.next = Some(v);
        }
        Some(Permutation { oneline: current })
    }
}

fn next_lex(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Permutations of 1..=n in lexicographic order, capped at
/// [`DEFAULT_MAX_N`]. n = 0 yields the single empty permutation.
pub fn enumerate(n: usize) -> Result<Permutations> {
    enumerate_capped(n, DEFAULT_MAX_N)
}

/// Same as [`enumerate`] with an explicit cap.
pub fn enumerate_capped(n: usize, cap: usize) -> Result<Permutations> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(Permutations {
        next: Some((1..=n as u32).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn all(n: usize) -> Vec<Permutation> {
        enumerate(n).unwrap().collect()
    }

    #[test]
    fn parsing_and_display_round_trip() {
        assert_eq!(p("1324").to_string(), "1324");
        assert_eq!(p("3,1,2").to_string(), "312");
        let big = Permutation::from_oneline((1..=11).rev().collect()).unwrap();
        assert_eq!(big.to_string(), "11,10,9,8,7,6,5,4,3,2,1");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert_eq!(p(""), Permutation::identity(0));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!("1224".parse::<Permutation>().is_err());
        assert!("130".parse::<Permutation>().is_err());
        assert!("14".parse::<Permutation>().is_err());
        assert!(Word::new(vec![3, 3]).is_err());
        assert!(Word::new(vec![0]).is_err());
        assert!(Word::new(vec![10, 2, 7]).is_ok());
    }

    #[test]
    fn cycles_are_canonical() {
        let s = p("1324");
        let cs = s.cycles();
        let words: Vec<Vec<u32>> = cs.iter().map(|c| c.to_vec()).collect();
        assert_eq!(words, vec![vec![1], vec![2, 3], vec![4]]);
        let t = Permutation::from_cycles(3, &[vec![1, 3, 2]]).unwrap();
        assert_eq!(t.to_string(), "312");
        for s in all(5) {
            let cycles: Vec<Vec<u32>> = s.cycles().iter().map(|c| c.to_vec()).collect();
            let back = Permutation::from_cycles(5, &cycles).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn inverse_is_involutive() {
        for s in all(6) {
            assert_eq!(s.inverse().inverse(), s);
        }
    }

    #[test]
    fn statistics_on_known_permutations() {
        let id = Permutation::identity(5).statistics();
        assert_eq!(
            (id.des, id.drop, id.fix, id.cyc, id.lmi, id.rmi),
            (0, 0, 5, 5, 1, 5)
        );

        let s = p("1324").statistics();
        assert_eq!((s.des, s.drop, s.fix, s.cyc), (1, 1, 2, 3));

        let w = p("3,4,8,5,7,10,1,6,2,9").statistics();
        assert_eq!(w.lmi, 2);
        assert_eq!(w.rmi, 3);
        assert_eq!(w.lmidd, 0);
        assert_eq!(w.rmida, 1);
        assert_eq!(w.des, 3);
        assert_eq!(w.pk, 3);
        assert_eq!(w.valley, 4);

        let e = Permutation::identity(0).statistics();
        assert_eq!(e, StatRecord::default());
    }

    #[test]
    fn letter_kind_examples() {
        let w = p("3,4,8,5,7,10,1,6,2,9");
        let das: Vec<u32> = letter_kinds(w.oneline())
            .iter()
            .zip(w.oneline())
            .filter(|(k, _)| **k == LetterKind::DoubleAscent)
            .map(|(_, &a)| a)
            .collect();
        assert_eq!(das, vec![4, 7, 9]);
        assert_eq!(w.valley_letters(), vec![3, 5, 1, 2]);
    }

    #[test]
    fn up_down_words() {
        assert!(is_up_down(&[]));
        assert!(is_up_down(&[7]));
        assert!(is_up_down(&[1, 3, 2]));
        assert!(is_up_down(&[2, 6, 1, 4]));
        assert!(!is_up_down(&[1, 2, 3]));
        assert!(!is_up_down(&[3, 2, 1]));
    }

    #[test]
    fn andre_words() {
        assert!(is_andre(&[]));
        assert!(is_andre(&[4]));
        assert!(is_andre(&[3, 1, 2, 4, 5]));
        assert!(!is_andre(&[1, 3, 2]));
        assert!(is_andre(&[2, 3, 1, 4]));
        // Counts over full symmetric groups match the Euler numbers.
        let euler = [1usize, 1, 1, 2, 5, 16, 61, 272];
        for n in 1..=7 {
            let count = all(n).iter().filter(|s| is_andre(s.oneline())).count();
            assert_eq!(count, euler[n], "Andre count at n={n}");
        }
    }

    #[test]
    fn andre_cycles() {
        assert!(is_andre_cycle(&[]));
        assert!(is_andre_cycle(&[5]));
        assert!(is_andre_cycle(&[2, 3, 5, 6, 1, 4]));
        assert!(!is_andre_cycle(&[1, 3, 2]));
    }

    #[test]
    fn web_membership() {
        let w3: Vec<String> = all(3)
            .into_iter()
            .filter(|s| s.is_web())
            .map(|s| s.to_string())
            .collect();
        assert_eq!(w3, ["123", "132", "213", "231", "321"]);
        assert!(!p("312").is_web());

        let w4: Vec<String> = all(4)
            .into_iter()
            .filter(|s| s.is_web())
            .map(|s| s.to_string())
            .collect();
        assert_eq!(
            w4,
            [
                "1234", "1243", "1324", "1342", "1432", "2134", "2143", "2314", "2341", "2431",
                "3214", "3241", "3412", "3421", "4231", "4321"
            ]
        );

        // |Web_n| = Euler(n+1).
        let euler = [1usize, 1, 1, 2, 5, 16, 61, 272];
        for n in 0..=6 {
            let count = all(n).iter().filter(|s| s.is_web()).count();
            assert_eq!(count, euler[n + 1], "web count at n={n}");
        }
    }

    #[test]
    fn cycle_up_down_membership() {
        let d3: Vec<String> = all(3)
            .into_iter()
            .filter(|s| s.is_cycle_up_down())
            .map(|s| s.to_string())
            .collect();
        assert_eq!(d3, ["123", "132", "213", "312", "321"]);
        assert!(!p("231").is_cycle_up_down());

        let d4: Vec<String> = all(4)
            .into_iter()
            .filter(|s| s.is_cycle_up_down())
            .map(|s| s.to_string())
            .collect();
        assert_eq!(
            d4,
            [
                "1234", "1243", "1324", "1423", "1432", "2134", "2143", "3124", "3214", "3412",
                "3421", "4132", "4213", "4231", "4312", "4321"
            ]
        );

        for n in 0..=7 {
            let webs = all(n).iter().filter(|s| s.is_web()).count();
            let cuds = all(n).iter().filter(|s| s.is_cycle_up_down()).count();
            assert_eq!(webs, cuds, "class sizes at n={n}");
        }
    }

    #[test]
    fn mix_values() {
        assert_eq!(mix(&[]), 0);
        assert_eq!(mix(&[3]), 0);
        assert_eq!(mix(&[5, 8, 2, 6, 4, 7, 1, 3]), 2);
        assert_eq!(mix(&[5, 6, 2, 3, 1, 4]), 2);
        let mut dist = [0usize; 2];
        for s in all(3) {
            dist[mix(s.oneline())] += 1;
        }
        assert_eq!(dist, [4, 2]);
    }

    #[test]
    fn drop_hat_values() {
        assert_eq!(Permutation::identity(6).drop_hat(), 0);
        assert_eq!(p("21").drop_hat(), 1);
        for n in 0..=6 {
            for s in all(n) {
                if s.is_web() {
                    assert_eq!(s.drop_hat(), s.statistics().drop, "drop_hat vs drop on {s}");
                }
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_capped() {
        assert_eq!(all(0).len(), 1);
        assert_eq!(all(0)[0], Permutation::identity(0));
        let v = all(3);
        let strs: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(strs, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(all(6).len(), 720);
        assert!(matches!(
            enumerate(10),
            Err(Error::CapExceeded { n: 10, cap: 9 })
        ));
        assert!(enumerate_capped(10, 10).is_ok());
    }

    #[test]
    fn stat_invariants_exhaustive_small() {
        for n in 1..=6 {
            for s in all(n) {
                let st = s.statistics();
                assert!(st.des <= n - 1);
                assert!(st.fix <= st.cyc);
                assert!(st.lmi >= 1 && st.rmi >= 1);
                let asc = (0..n - 1)
                    .filter(|&i| s.oneline()[i] < s.oneline()[i + 1])
                    .count();
                assert_eq!(st.des + asc, n - 1);
                // With +infinity flanks there is one more valley than peak.
                assert_eq!(st.valley, st.pk + 1);
                assert!(st.lmidd <= st.lmi && st.rmida <= st.rmi);
            }
        }
    }
}
