//! Free-group word combinatorics: reduction, conjugacy canonical forms,
//! the orientation-reversal involution, powers and roots, abelianization.
//!
//! Letters are nonzero signed indices: `+k` is the k-th generator, `-k` its
//! inverse. Text form uses `a..z` for generators and `A..Z` for inverses.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Largest rank representable by the `a..z` text grammar.
pub const MAX_RANK: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid character at position {0}")]
    InvalidCharacter(usize),
    #[error("generator {letter} at position {position} exceeds rank {rank}")]
    GeneratorOutOfRank {
        letter: char,
        position: usize,
        rank: usize,
    },
    #[error("rank must be between 2 and {MAX_RANK}, got {0}")]
    BadRank(usize),
    #[error("letter {0} out of range for rank {1}")]
    LetterOutOfRange(i32, usize),
    #[error("operation undefined on the constant (trivial) class")]
    DegenerateClass,
}

/// A word in a free group of fixed rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    rank: usize,
    letters: Vec<i32>,
}

/// Total order on letters: a < A < b < B < ...
#[inline]
fn letter_ord(l: i32) -> u32 {
    debug_assert!(l != 0);
    let idx = (l.unsigned_abs() - 1) * 2;
    if l > 0 {
        idx
    } else {
        idx + 1
    }
}

fn lex_cmp(a: &[i32], b: &[i32]) -> Ordering {
    for (&x, &y) in a.iter().zip(b.iter()) {
        match letter_ord(x).cmp(&letter_ord(y)) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    a.len().cmp(&b.len())
}

impl Word {
    /// Builds a word after validating rank and letter range. Does not reduce.
    pub fn new(rank: usize, letters: Vec<i32>) -> Result<Self, WordError> {
        if rank < 2 || rank > MAX_RANK {
            return Err(WordError::BadRank(rank));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(WordError::LetterOutOfRange(l, rank));
            }
        }
        Ok(Word { rank, letters })
    }

    /// The empty (identity) word.
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// Parses `a..z` as generators 1..26 and `A..Z` as their inverses.
    /// Positions in errors are 1-based.
    pub fn parse(text: &str, rank: usize) -> Result<Self, WordError> {
        if rank < 2 || rank > MAX_RANK {
            return Err(WordError::BadRank(rank));
        }
        let mut letters = Vec::with_capacity(text.len());
        for (i, ch) in text.chars().enumerate() {
            let l = match ch {
                'a'..='z' => (ch as i32 - 'a' as i32) + 1,
                'A'..='Z' => -((ch as i32 - 'A' as i32) + 1),
                _ => return Err(WordError::InvalidCharacter(i + 1)),
            };
            if l.unsigned_abs() as usize > rank {
                return Err(WordError::GeneratorOutOfRank {
                    letter: ch,
                    position: i + 1,
                    rank,
                });
            }
            letters.push(l);
        }
        Ok(Word { rank, letters })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Removes adjacent cancelling pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last().is_some_and(|&p| p == -l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word {
            rank: self.rank,
            letters: out,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.rank, other.rank);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            rank: self.rank,
            letters,
        }
        .free_reduce()
    }

    /// True if the two words commute in the free group
    /// (equivalently, both are powers of a common word).
    pub fn commutes_with(&self, other: &Word) -> bool {
        self.concat(other) == other.concat(self)
    }

    /// Length-then-lexicographic order on reduced words; total.
    pub fn length_lex_cmp(&self, other: &Word) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| lex_cmp(&self.letters, &other.letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            let ch = if l > 0 {
                (b'a' + (l - 1) as u8) as char
            } else {
                (b'A' + (-l - 1) as u8) as char
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

/// Free homotopy class of an oriented loop: the canonical cyclic word of a
/// conjugacy class. Canonical means freely reduced, cyclically reduced, and
/// lexicographically minimal among rotations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedClass(Word);

impl OrientedClass {
    /// Canonical form of the conjugacy class of `w`.
    pub fn from_word(w: &Word) -> OrientedClass {
        let mut r = w.free_reduce();
        // cyclic reduction: strip matching first/last letters
        while r.letters.len() >= 2 && r.letters[0] == -*r.letters.last().unwrap() {
            r.letters.pop();
            r.letters.remove(0);
        }
        if r.letters.is_empty() {
            return OrientedClass(r);
        }
        // minimal rotation; O(L^2) is fine at the word lengths we handle
        let n = r.letters.len();
        let mut best = 0usize;
        for start in 1..n {
            let rot_best = RotSlice::new(&r.letters, best);
            let rot_cur = RotSlice::new(&r.letters, start);
            if rot_cur.cmp_letters(&rot_best) == Ordering::Less {
                best = start;
            }
        }
        let letters: Vec<i32> = (0..n).map(|i| r.letters[(best + i) % n]).collect();
        OrientedClass(Word {
            rank: r.rank,
            letters,
        })
    }

    pub fn parse(text: &str, rank: usize) -> Result<Self, WordError> {
        Ok(Self::from_word(&Word::parse(text, rank)?))
    }

    pub fn trivial(rank: usize) -> Self {
        OrientedClass(Word::identity(rank))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// The class of the same loop with reversed orientation.
    pub fn inverse(&self) -> OrientedClass {
        OrientedClass::from_word(&self.0.inverse())
    }

    /// The class of the n-fold iterate, n >= 1.
    pub fn power(&self, n: u32) -> OrientedClass {
        assert!(n >= 1, "power requires n >= 1");
        if self.is_trivial() || n == 1 {
            return self.clone();
        }
        // canonical forms are cyclically reduced, so concatenation stays
        // reduced and the minimal rotation of c^n is (minimal rotation of c)^n
        let mut letters = Vec::with_capacity(self.0.letters.len() * n as usize);
        for _ in 0..n {
            letters.extend_from_slice(&self.0.letters);
        }
        OrientedClass(Word {
            rank: self.0.rank,
            letters,
        })
    }

    /// Writes the class as root^k with k maximal (root not a proper power).
    pub fn primitive_root(&self) -> Result<(OrientedClass, u32), WordError> {
        if self.is_trivial() {
            return Err(WordError::DegenerateClass);
        }
        let n = self.0.letters.len();
        for period in 1..=n {
            if n % period != 0 {
                continue;
            }
            let k = n / period;
            let root = &self.0.letters[..period];
            if (0..n).all(|i| self.0.letters[i] == root[i % period]) {
                let root_word = Word {
                    rank: self.0.rank,
                    letters: root.to_vec(),
                };
                // the root of a minimal rotation is itself minimal
                return Ok((OrientedClass(root_word), k as u32));
            }
        }
        unreachable!("period n always matches");
    }

    /// Signed letter counts; conjugation-invariant.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.0.rank];
        for &l in &self.0.letters {
            let idx = (l.unsigned_abs() - 1) as usize;
            v[idx] += if l > 0 { 1 } else { -1 };
        }
        v
    }
}

impl fmt::Display for OrientedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Length-then-lexicographic class order; the constant class is minimal.
impl Ord for OrientedClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .letters
            .len()
            .cmp(&other.0.letters.len())
            .then_with(|| lex_cmp(&self.0.letters, &other.0.letters))
    }
}

impl PartialOrd for OrientedClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct RotSlice<'a> {
    letters: &'a [i32],
    start: usize,
}

impl<'a> RotSlice<'a> {
    fn new(letters: &'a [i32], start: usize) -> Self {
        RotSlice { letters, start }
    }

    fn cmp_letters(&self, other: &RotSlice<'_>) -> Ordering {
        let n = self.letters.len();
        for i in 0..n {
            let x = self.letters[(self.start + i) % n];
            let y = other.letters[(other.start + i) % n];
            match letter_ord(x).cmp(&letter_ord(y)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// Free homotopy class of an unoriented loop: the smaller, under class
/// order, of an oriented class and its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnorientedClass(OrientedClass);

impl UnorientedClass {
    pub fn from_oriented(c: &OrientedClass) -> Self {
        let inv = c.inverse();
        if *c <= inv {
            UnorientedClass(c.clone())
        } else {
            UnorientedClass(inv)
        }
    }

    pub fn rep(&self) -> &OrientedClass {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    pub fn power(&self, n: u32) -> UnorientedClass {
        UnorientedClass::from_oriented(&self.0.power(n))
    }
}

impl fmt::Display for UnorientedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All canonical oriented classes of word length <= max_len, in class order.
/// Includes the trivial class.
pub fn enumerate_classes(rank: usize, max_len: usize) -> Vec<OrientedClass> {
    let mut out = vec![OrientedClass::trivial(rank)];
    let mut stack: Vec<Vec<i32>> = vec![Vec::new()];
    let letters: Vec<i32> = (1..=rank as i32).flat_map(|k| [k, -k]).collect();
    while let Some(cur) = stack.pop() {
        if cur.len() >= max_len {
            continue;
        }
        for &l in &letters {
            if cur.last().is_some_and(|&p| p == -l) {
                continue;
            }
            let mut next = cur.clone();
            next.push(l);
            // keep only cyclically reduced minimal rotations
            if next.first().is_some_and(|&f| f != -l) {
                let w = Word {
                    rank,
                    letters: next.clone(),
                };
                let c = OrientedClass::from_word(&w);
                if c.word().letters() == next.as_slice() {
                    out.push(c);
                }
            }
            stack.push(next);
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn c(s: &str) -> OrientedClass {
        OrientedClass::parse(s, 2).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("aAb").free_reduce(), w("b"));
        assert_eq!(w("abBA").free_reduce(), w(""));
        assert_eq!(w("aabBAa").free_reduce(), w("aa"));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(c("baB"), c("a"));
        assert_eq!(c("ba"), c("ab"));
        assert_eq!(c("bab").to_string(), "abb");
        assert_eq!(c(""), OrientedClass::trivial(2));
    }

    #[test]
    fn inverse_class_examples() {
        assert_eq!(c("ab").inverse().to_string(), "AB");
        assert_eq!(c("").inverse(), c(""));
        assert_eq!(c("a").inverse(), c("A"));
        assert_eq!(c("ab").inverse().inverse(), c("ab"));
    }

    #[test]
    fn unoriented_examples() {
        assert_eq!(
            UnorientedClass::from_oriented(&c("a")),
            UnorientedClass::from_oriented(&c("A"))
        );
        assert_eq!(
            UnorientedClass::from_oriented(&c("ab")),
            UnorientedClass::from_oriented(&c("AB"))
        );
        assert!(UnorientedClass::from_oriented(&c("")).is_trivial());
    }

    #[test]
    fn powers_and_roots() {
        assert_eq!(c("a").power(3).to_string(), "aaa");
        assert_eq!(c("abab").primitive_root().unwrap(), (c("ab"), 2));
        assert_eq!(c("ab").primitive_root().unwrap(), (c("ab"), 1));
        assert_eq!(
            c("").primitive_root().unwrap_err(),
            WordError::DegenerateClass
        );
    }

    #[test]
    fn class_order_examples() {
        assert!(c("") < c("a"));
        assert!(c("a") < c("b"));
        assert!(c("b") < c("ab"));
        assert_eq!(c("ab").cmp(&c("ba")), Ordering::Equal);
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(c("abAB").abelianization(), vec![0, 0]);
        assert_eq!(c("aab").abelianization(), vec![2, 1]);
        assert_eq!(c("").abelianization(), vec![0, 0]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Word::parse("a!b", 2).unwrap_err(),
            WordError::InvalidCharacter(2)
        );
        assert!(matches!(
            Word::parse("abc", 2).unwrap_err(),
            WordError::GeneratorOutOfRank {
                letter: 'c',
                position: 3,
                rank: 2
            }
        ));
        assert_eq!(Word::parse("abAB", 2).unwrap(), w("abAB"));
        assert!(Word::parse("", 2).unwrap().is_empty());
    }

    #[test]
    fn enumerate_small() {
        let classes = enumerate_classes(2, 2);
        let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
        assert!(names.contains(&String::new()));
        for n in ["a", "A", "b", "B", "aa", "ab", "aB", "AB", "Ab"] {
            assert!(names.contains(&n.to_string()), "missing {n}");
        }
        // every entry is its own canonical form, sorted strictly
        for pair in classes.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn order_is_total_up_to_len_6() {
        let classes = enumerate_classes(2, 6);
        for i in 0..classes.len() {
            for j in 0..classes.len() {
                let ord = classes[i].cmp(&classes[j]);
                assert_eq!(ord.reverse(), classes[j].cmp(&classes[i]));
                assert_eq!(ord == Ordering::Equal, i == j);
            }
        }
        // transitivity, exhaustive on the shorter prefix
        let short = enumerate_classes(2, 3);
        for a in &short {
            for b in &short {
                for cc in &short {
                    if a <= b && b <= cc {
                        assert!(a <= cc);
                    }
                }
            }
        }
    }
}
