//! Positive braid words and word-level moves.
//!
//! Positions and levels are 1-based throughout, matching the usual
//! `(i_1, ..., i_l)` notation.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("letter {letter} out of range for {n} strands")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("level {0} has no crossing")]
    EmptyLevel(usize),
    #[error("bad braid syntax: {0}")]
    BadSyntax(String),
    #[error("no braid move pattern at position {0}")]
    PatternMismatch(usize),
    #[error("empty braid word")]
    EmptyWord,
    #[error("position {pos} out of range for a word of length {len}")]
    IndexOutOfRange { pos: usize, len: usize },
    #[error("a braid needs at least 2 strands")]
    TooFewStrands,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `β s_i → s_i β`.
    LastToFront,
    /// `s_i β → β s_i`.
    FrontToLast,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWord")]
pub struct BraidWord {
    n: usize,
    letters: Vec<usize>,
}

#[derive(Deserialize)]
struct RawWord {
    n: usize,
    letters: Vec<usize>,
}

impl TryFrom<RawWord> for BraidWord {
    type Error = BraidError;

    fn try_from(raw: RawWord) -> Result<Self, Self::Error> {
        BraidWord::new(raw.n, raw.letters)
    }
}

impl BraidWord {
    /// A word in which every level is used.
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self, BraidError> {
        let w = Self::partial(n, letters)?;
        if let Some(level) = (1..n).find(|&i| !w.letters.contains(&i)) {
            return Err(BraidError::EmptyLevel(level));
        }
        Ok(w)
    }

    /// A word that may leave some levels empty, as happens mid-filling.
    pub fn partial(n: usize, letters: Vec<usize>) -> Result<Self, BraidError> {
        if n < 2 {
            return Err(BraidError::TooFewStrands);
        }
        if let Some(&letter) = letters.iter().find(|&&i| i == 0 || i >= n) {
            return Err(BraidError::LetterOutOfRange { letter, n });
        }
        Ok(BraidWord { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position `k`.
    pub fn letter(&self, k: usize) -> usize {
        self.letters[k - 1]
    }

    /// Positions (1-based) of crossings on `level`.
    pub fn positions_on(&self, level: usize) -> Vec<usize> {
        (1..=self.len()).filter(|&k| self.letter(k) == level).collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `"i1,i2,...,il"`. Without `n`, the strand count is `max + 1`.
pub fn parse_braid(text: &str, n: Option<usize>) -> Result<BraidWord, BraidError> {
    let text = text.trim().trim_start_matches('(').trim_end_matches(')');
    let letters = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| BraidError::BadSyntax(format!("`{}` is not a positive integer", s.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let n = match n {
        Some(n) => n,
        None if letters.is_empty() => return Err(BraidError::EmptyWord),
        None => letters.iter().copied().max().unwrap_or(0) + 1,
    };
    BraidWord::new(n, letters)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkStats {
    /// `permutation[j-1]` is where the strand entering at `j` exits.
    pub permutation: Vec<usize>,
    pub components: usize,
    pub length: usize,
    pub tb: i64,
}

/// Exit position of each strand after following the word.
pub fn closure_permutation(w: &BraidWord) -> Vec<usize> {
    (1..=w.n())
        .map(|start| {
            w.letters().iter().fold(start, |pos, &i| {
                if pos == i {
                    i + 1
                } else if pos == i + 1 {
                    i
                } else {
                    pos
                }
            })
        })
        .collect()
}

/// Cycles of a 1-based permutation, each listed from its smallest element.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 1..=perm.len() {
        if seen[start - 1] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = start;
        while !seen[j - 1] {
            seen[j - 1] = true;
            cyc.push(j);
            j = perm[j - 1];
        }
        out.push(cyc);
    }
    out
}

pub fn link_stats(w: &BraidWord) -> LinkStats {
    let permutation = closure_permutation(w);
    let components = cycles(&permutation).len();
    LinkStats { permutation, components, length: w.len(), tb: w.len() as i64 - w.n() as i64 }
}

/// Replaces `(i, j, i)` at positions `pos..pos+2` by `(j, i, j)`.
pub fn apply_braid_move(w: &BraidWord, pos: usize) -> Result<BraidWord, BraidError> {
    if pos == 0 || pos + 2 > w.len() {
        return Err(BraidError::PatternMismatch(pos));
    }
    let (a, b, c) = (w.letter(pos), w.letter(pos + 1), w.letter(pos + 2));
    if a != c || a.abs_diff(b) != 1 {
        return Err(BraidError::PatternMismatch(pos));
    }
    let mut letters = w.letters().to_vec();
    letters[pos - 1] = b;
    letters[pos] = a;
    letters[pos + 1] = b;
    Ok(BraidWord { n: w.n(), letters })
}

/// Positions `p` at which a braid move applies.
pub fn braid_move_sites(w: &BraidWord) -> Vec<usize> {
    (1..=w.len().saturating_sub(2)).filter(|&p| apply_braid_move(w, p).is_ok()).collect()
}

pub fn rotate_word(w: &BraidWord, dir: Direction) -> Result<BraidWord, BraidError> {
    if w.is_empty() {
        return Err(BraidError::EmptyWord);
    }
    let mut letters = w.letters().to_vec();
    match dir {
        Direction::LastToFront => letters.rotate_right(1),
        Direction::FrontToLast => letters.rotate_left(1),
    }
    Ok(BraidWord { n: w.n(), letters })
}

/// Removes the crossing at 1-based position `k`; levels may become empty.
pub fn delete_crossing(w: &BraidWord, k: usize) -> Result<BraidWord, BraidError> {
    if k == 0 || k > w.len() {
        return Err(BraidError::IndexOutOfRange { pos: k, len: w.len() });
    }
    let mut letters = w.letters().to_vec();
    letters.remove(k - 1);
    Ok(BraidWord { n: w.n(), letters })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, n: usize) -> BraidWord {
        parse_braid(s, Some(n)).unwrap()
    }

    #[test]
    fn parse_examples() {
        let w = word("1,3,1,2,1,3,1,2", 4);
        assert_eq!(w.len(), 8);
        assert_eq!(parse_braid("1,1,1", None).unwrap().n(), 2);
        assert_eq!(parse_braid("1,3", Some(4)), Err(BraidError::EmptyLevel(2)));
        assert!(matches!(parse_braid("1,x", None), Err(BraidError::BadSyntax(_))));
        assert_eq!(parse_braid("1,4", Some(4)), Err(BraidError::LetterOutOfRange { letter: 4, n: 4 }));
        assert_eq!(parse_braid("", None), Err(BraidError::EmptyWord));
    }

    #[test]
    fn stats_of_small_links() {
        let hopf = link_stats(&word("1,1", 2));
        assert_eq!(hopf.components, 2);
        let trefoil = link_stats(&word("1,1,1", 2));
        assert_eq!((trefoil.components, trefoil.tb), (1, 1));
    }

    /// Independent route: track which strand sits at each position.
    fn components_by_position_swaps(w: &BraidWord) -> usize {
        let mut at: Vec<usize> = (1..=w.n()).collect();
        for &i in w.letters() {
            at.swap(i - 1, i);
        }
        // at[p] is the strand exiting at p; invert to get the exit map.
        let mut exit = vec![0; w.n()];
        for (p, &s) in at.iter().enumerate() {
            exit[s - 1] = p + 1;
        }
        let mut seen = vec![false; w.n()];
        let mut count = 0;
        for s in 0..w.n() {
            if !seen[s] {
                count += 1;
                let mut j = s;
                while !seen[j] {
                    seen[j] = true;
                    j = exit[j] - 1;
                }
            }
        }
        count
    }

    #[test]
    fn example_word_components_match_oracle() {
        let w = word("1,3,1,2,1,3,1,2", 4);
        assert_eq!(link_stats(&w).components, components_by_position_swaps(&w));
        assert_eq!(link_stats(&w).permutation, vec![1, 4, 2, 3]);
        assert_eq!(link_stats(&w).components, 2);
    }

    #[test]
    fn braid_move_examples() {
        assert_eq!(apply_braid_move(&word("1,2,1", 3), 1).unwrap().letters(), &[2, 1, 2]);
        assert_eq!(apply_braid_move(&word("3,1,2,1,2", 4), 2).unwrap().letters(), &[3, 2, 1, 2, 2]);
        assert_eq!(apply_braid_move(&word("1,3,1,2", 4), 1), Err(BraidError::PatternMismatch(1)));
    }

    #[test]
    fn rotation_examples() {
        let w = word("3,2,1,2,2", 4);
        let r = rotate_word(&w, Direction::LastToFront).unwrap();
        assert_eq!(r.letters(), &[2, 3, 2, 1, 2]);
        assert_eq!(rotate_word(&r, Direction::FrontToLast).unwrap(), w);
        let one = word("1", 2);
        assert_eq!(rotate_word(&one, Direction::LastToFront).unwrap(), one);
    }

    #[test]
    fn delete_examples() {
        assert_eq!(delete_crossing(&word("1,2,1", 3), 2).unwrap().letters(), &[1, 1]);
        let w = word("1,3,1,2,1,3,1,2", 4);
        assert_eq!(delete_crossing(&w, 6).unwrap().letters(), &[1, 3, 1, 2, 1, 1, 2]);
        let mut v = w.clone();
        while !v.is_empty() {
            v = delete_crossing(&v, 1).unwrap();
        }
        assert!(v.is_empty());
        assert!(delete_crossing(&v, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let w = word("1,2,1", 3);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"n":3,"letters":[1,2,1]}"#);
        assert_eq!(serde_json::from_str::<BraidWord>(&s).unwrap(), w);
        assert!(serde_json::from_str::<BraidWord>(r#"{"n":3,"letters":[1]}"#).is_err());
    }
}
