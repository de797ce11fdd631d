//! The ℓ-group term language.
//!
//! Terms are trees over named generators built from the group operations
//! (identity, product, inverse) and the lattice operations (join `\/`,
//! meet `/\`). Products act on the right: in `f g` the map `f` is applied
//! first. Joins, meets and products are stored as flattened n-ary nodes.

mod normal;
mod parse;
mod print;
mod word;
mod z2;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use normal::{normalize, JoinOfMeets, MeetString};
pub use parse::parse;
pub use word::GroupWord;
pub use z2::{eval_z2, Z2Element, Z2};

/// Names that the grammar reserves and that can therefore never be generators.
pub const RESERVED_NAMES: [&str; 4] = ["e", "abs", "conj", "comm"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid generator name {0:?}")]
    InvalidGenerator(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown generator {name:?} at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("term uses {0} generators, expected at most one")]
    TooManyGenerators(usize),
    #[error("at least one relation is required")]
    EmptyRelations,
}

/// A named free generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Generator(String);

impl Generator {
    /// Checks the identifier grammar `letter { letter | digit | "_" }` and
    /// rejects reserved words.
    pub fn new(name: impl Into<String>) -> Result<Self, TermError> {
        let name = name.into();
        let mut chars = name.chars();
        let valid = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !RESERVED_NAMES.contains(&name.as_str());
        if valid {
            Ok(Generator(name))
        } else {
            Err(TermError::InvalidGenerator(name))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An ordered set of generators with unique names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, TermError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut gens = Vec::new();
        for name in names {
            let g = Generator::new(name)?;
            if gens.contains(&g) {
                return Err(TermError::DuplicateGenerator(g.0));
            }
            gens.push(g);
        }
        Ok(Alphabet { gens })
    }

    /// Parses a comma separated list such as `x,y,z`.
    pub fn parse_list(list: &str) -> Result<Self, TermError> {
        let names: Vec<&str> = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        Alphabet::new(names)
    }

    pub fn from_generators(gens: impl IntoIterator<Item = Generator>) -> Result<Self, TermError> {
        Alphabet::new(gens.into_iter().map(|g| g.0))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.gens.contains(g)
    }

    pub fn contains_name(&self, name: &str) -> bool {
        self.gens.iter().any(|g| g.0 == name)
    }

    pub fn index_of(&self, g: &Generator) -> Option<usize> {
        self.gens.iter().position(|h| h == g)
    }

    /// Appends `g` unless it is already present.
    pub fn with(&self, g: Generator) -> Alphabet {
        let mut gens = self.gens.clone();
        if !gens.contains(&g) {
            gens.push(g);
        }
        Alphabet { gens }
    }

    /// A generator name starting with `stem` that is not in the alphabet.
    pub fn fresh(&self, stem: &str) -> Generator {
        if let Ok(g) = Generator::new(stem) {
            if !self.contains(&g) {
                return g;
            }
        }
        (0..)
            .map(|i| Generator(format!("{stem}{i}")))
            .find(|g| !self.contains(g))
            .expect("unbounded search")
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.gens.iter().map(Generator::name).collect();
        f.write_str(&names.join(","))
    }
}

/// Abstract syntax tree of an ℓ-group term.
///
/// The `Product`, `Join` and `Meet` variants hold at least two children when
/// built through the constructor functions, which also flatten nested nodes
/// of the same kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LTerm {
    Identity,
    Gen(Generator),
    Inverse(Box<LTerm>),
    Product(Vec<LTerm>),
    Join(Vec<LTerm>),
    Meet(Vec<LTerm>),
}

impl LTerm {
    pub fn gen(g: &Generator) -> LTerm {
        LTerm::Gen(g.clone())
    }

    /// Generator by name; panics on an invalid identifier.
    pub fn var(name: &str) -> LTerm {
        LTerm::Gen(Generator::new(name).expect("valid generator name"))
    }

    pub fn inv(t: LTerm) -> LTerm {
        LTerm::Inverse(Box::new(t))
    }

    pub fn product<I: IntoIterator<Item = LTerm>>(factors: I) -> LTerm {
        let mut out = Vec::new();
        for f in factors {
            match f {
                LTerm::Product(cs) => out.extend(cs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => LTerm::Identity,
            1 => out.pop().unwrap(),
            _ => LTerm::Product(out),
        }
    }

    /// Join of the given terms. An empty iterator yields the identity.
    pub fn join<I: IntoIterator<Item = LTerm>>(terms: I) -> LTerm {
        Self::lattice(terms, true)
    }

    /// Meet of the given terms. An empty iterator yields the identity.
    pub fn meet<I: IntoIterator<Item = LTerm>>(terms: I) -> LTerm {
        Self::lattice(terms, false)
    }

    fn lattice<I: IntoIterator<Item = LTerm>>(terms: I, is_join: bool) -> LTerm {
        let mut out = Vec::new();
        for t in terms {
            match t {
                LTerm::Join(cs) if is_join => out.extend(cs),
                LTerm::Meet(cs) if !is_join => out.extend(cs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => LTerm::Identity,
            1 => out.pop().unwrap(),
            _ if is_join => LTerm::Join(out),
            _ => LTerm::Meet(out),
        }
    }

    /// `t^k` expanded into a product of `|k|` copies of `t` or `t⁻¹`.
    pub fn pow(t: LTerm, k: i64) -> LTerm {
        let base = if k < 0 { LTerm::inv(t) } else { t };
        LTerm::product(std::iter::repeat_n(base, k.unsigned_abs() as usize))
    }

    /// `f*g = g⁻¹ f g`.
    pub fn conj(f: LTerm, g: LTerm) -> LTerm {
        LTerm::product([LTerm::inv(g.clone()), f, g])
    }

    /// `[f,g] = f⁻¹ g⁻¹ f g`.
    pub fn comm(f: LTerm, g: LTerm) -> LTerm {
        LTerm::product([LTerm::inv(f.clone()), LTerm::inv(g.clone()), f, g])
    }

    /// `|t| = t ∨ t⁻¹`.
    pub fn abs(t: LTerm) -> LTerm {
        LTerm::Join(vec![t.clone(), LTerm::inv(t)])
    }

    /// All generators occurring in the term.
    pub fn generators(&self) -> BTreeSet<Generator> {
        let mut out = BTreeSet::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut BTreeSet<Generator>) {
        match self {
            LTerm::Identity => {}
            LTerm::Gen(g) => {
                out.insert(g.clone());
            }
            LTerm::Inverse(c) => c.collect_generators(out),
            LTerm::Product(cs) | LTerm::Join(cs) | LTerm::Meet(cs) => {
                cs.iter().for_each(|c| c.collect_generators(out))
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            LTerm::Identity | LTerm::Gen(_) => 1,
            LTerm::Inverse(c) => 1 + c.node_count(),
            LTerm::Product(cs) | LTerm::Join(cs) | LTerm::Meet(cs) => {
                1 + cs.iter().map(LTerm::node_count).sum::<usize>()
            }
        }
    }

    /// Replaces every generator `g` by `f(g)`.
    pub fn substitute(&self, f: &mut impl FnMut(&Generator) -> LTerm) -> LTerm {
        match self {
            LTerm::Identity => LTerm::Identity,
            LTerm::Gen(g) => f(g),
            LTerm::Inverse(c) => LTerm::inv(c.substitute(f)),
            LTerm::Product(cs) => LTerm::product(cs.iter().map(|c| c.substitute(f))),
            LTerm::Join(cs) => LTerm::join(cs.iter().map(|c| c.substitute(f))),
            LTerm::Meet(cs) => LTerm::meet(cs.iter().map(|c| c.substitute(f))),
        }
    }

    /// True when every generator of the term belongs to `alphabet`.
    pub fn is_over(&self, alphabet: &Alphabet) -> bool {
        self.generators().iter().all(|g| alphabet.contains(g))
    }
}

/// `|w_1| ∨ … ∨ |w_n|`, which is the identity exactly when every `w_i` is.
pub fn combine_relations(ws: &[LTerm]) -> Result<LTerm, TermError> {
    if ws.is_empty() {
        return Err(TermError::EmptyRelations);
    }
    Ok(LTerm::join(ws.iter().cloned().map(LTerm::abs)))
}
