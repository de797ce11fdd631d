//! Join-of-meets normal form.
//!
//! Every term equals a finite join of finite meets of group words. The
//! rewriting uses only the two-sided distributive laws, De Morgan for
//! inverses, lattice distributivity and free reduction, so the result is
//! equal to the input in every ℓ-group.

use std::fmt;

use super::{GroupWord, LTerm};

/// A finite meet of group words. The empty meet string denotes the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MeetString {
    pub words: Vec<GroupWord>,
}

impl MeetString {
    pub fn new(words: Vec<GroupWord>) -> Self {
        MeetString { words }
    }

    pub fn to_term(&self) -> LTerm {
        LTerm::meet(self.words.iter().map(GroupWord::to_term))
    }
}

impl fmt::Display for MeetString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

/// `⋁ᵢ ⋀ⱼ wᵢⱼ` with canonically ordered rows.
///
/// Words inside a row are sorted and deduplicated, rows are sorted and
/// deduplicated, and a row that contains every word of another row is
/// dropped (absorption). Rows of length one are plain group words; rows in
/// general are meet strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JoinOfMeets {
    rows: Vec<Vec<GroupWord>>,
}

impl JoinOfMeets {
    fn word(w: GroupWord) -> Self {
        JoinOfMeets { rows: vec![vec![w]] }
    }

    /// Canonicalizes arbitrary rows. Panics if any row, or the row list, is empty.
    pub fn from_rows(rows: Vec<Vec<GroupWord>>) -> Self {
        assert!(!rows.is_empty() && rows.iter().all(|r| !r.is_empty()));
        let mut rows: Vec<Vec<GroupWord>> = rows
            .into_iter()
            .map(|mut r| {
                r.sort();
                r.dedup();
                r
            })
            .collect();
        rows.sort();
        rows.dedup();
        // A row that is a superset of another row lies below it.
        let mut keep = vec![true; rows.len()];
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i != j && keep[j] && rows[i].len() > rows[j].len() && is_subset(&rows[j], &rows[i])
                {
                    keep[i] = false;
                    break;
                }
            }
        }
        let rows = rows
            .into_iter()
            .zip(keep)
            .filter_map(|(r, k)| k.then_some(r))
            .collect();
        JoinOfMeets { rows }
    }

    pub fn rows(&self) -> &[Vec<GroupWord>] {
        &self.rows
    }

    /// Rows viewed as meet strings.
    pub fn meet_strings(&self) -> Vec<MeetString> {
        self.rows.iter().cloned().map(MeetString::new).collect()
    }

    /// All words in enumeration order `w₁₁,…,w₁ᵣ₁,w₂₁,…`.
    pub fn words(&self) -> impl Iterator<Item = &GroupWord> {
        self.rows.iter().flatten()
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == 1 && self.rows[0].len() == 1 && self.rows[0][0].is_identity()
    }

    pub fn to_term(&self) -> LTerm {
        LTerm::join(
            self.rows
                .iter()
                .map(|r| LTerm::meet(r.iter().map(GroupWord::to_term))),
        )
    }

    fn join(mut self, other: JoinOfMeets) -> Self {
        self.rows.extend(other.rows);
        JoinOfMeets::from_rows(self.rows)
    }

    fn meet(&self, other: &JoinOfMeets) -> Self {
        let mut rows = Vec::with_capacity(self.rows.len() * other.rows.len());
        for a in &self.rows {
            for b in &other.rows {
                rows.push(a.iter().chain(b).cloned().collect());
            }
        }
        JoinOfMeets::from_rows(rows)
    }

    fn mul(&self, other: &JoinOfMeets) -> Self {
        let mut rows = Vec::with_capacity(self.rows.len() * other.rows.len());
        for a in &self.rows {
            for b in &other.rows {
                rows.push(a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect());
            }
        }
        JoinOfMeets::from_rows(rows)
    }

    /// `(⋁ᵢ⋀ⱼ wᵢⱼ)⁻¹ = ⋀ᵢ⋁ⱼ wᵢⱼ⁻¹`, redistributed into join-of-meets form.
    fn inverse(&self) -> Self {
        let mut acc: Option<JoinOfMeets> = None;
        for row in &self.rows {
            let inverted = JoinOfMeets::from_rows(row.iter().map(|w| vec![w.inverse()]).collect());
            acc = Some(match acc {
                None => inverted,
                Some(a) => a.meet(&inverted),
            });
        }
        acc.expect("non-empty rows")
    }
}

fn is_subset(small: &[GroupWord], big: &[GroupWord]) -> bool {
    small.iter().all(|w| big.binary_search(w).is_ok())
}

impl fmt::Display for JoinOfMeets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

/// Rewrites `t` into join-of-meets normal form.
pub fn normalize(t: &LTerm) -> JoinOfMeets {
    match t {
        LTerm::Identity => JoinOfMeets::word(GroupWord::identity()),
        LTerm::Gen(g) => JoinOfMeets::word(GroupWord::letter(g.clone(), 1)),
        LTerm::Inverse(c) => normalize(c).inverse(),
        LTerm::Product(cs) => cs
            .iter()
            .map(normalize)
            .reduce(|a, b| a.mul(&b))
            .unwrap_or_else(|| JoinOfMeets::word(GroupWord::identity())),
        LTerm::Join(cs) => cs
            .iter()
            .map(normalize)
            .reduce(JoinOfMeets::join)
            .unwrap_or_else(|| JoinOfMeets::word(GroupWord::identity())),
        LTerm::Meet(cs) => cs
            .iter()
            .map(normalize)
            .reduce(|a, b| a.meet(&b))
            .unwrap_or_else(|| JoinOfMeets::word(GroupWord::identity())),
    }
}
