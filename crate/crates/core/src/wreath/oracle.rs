use std::collections::HashMap;
use std::sync::Mutex;

use thiserror::Error;

use crate::freedec::{decide_with, DecideError, DecideOptions};
use crate::term::{eval_z2, Alphabet, LTerm, TermError, Z2Element};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("generator {0} is not in the oracle's alphabet")]
    UnknownGenerator(String),
    #[error("generator {0} is used both as a shift and as a base generator")]
    ShiftClash(String),
}

/// Word-problem solver for a group `G` presented on a fixed alphabet.
pub trait GroupOracle: Send + Sync {
    fn alphabet(&self) -> &Alphabet;

    fn is_identity(&self, t: &LTerm) -> Result<bool, OracleError>;

    /// `t > 1`, i.e. `t ≠ 1` but `t ∧ 1 = 1`.
    fn is_positive(&self, t: &LTerm) -> Result<bool, OracleError> {
        Ok(!self.is_identity(t)? && self.is_identity(&LTerm::meet([t.clone(), LTerm::Identity]))?)
    }

    /// `a = b`.
    fn equal(&self, a: &LTerm, b: &LTerm) -> Result<bool, OracleError> {
        self.is_identity(&LTerm::product([a.clone(), LTerm::inv(b.clone())]))
    }
}

pub(crate) fn check_alphabet(alphabet: &Alphabet, t: &LTerm) -> Result<(), OracleError> {
    match t.generators().into_iter().find(|g| !alphabet.contains(g)) {
        Some(g) => Err(OracleError::UnknownGenerator(g.to_string())),
        None => Ok(()),
    }
}

/// The free ℓ-group on an alphabet, decided by diagrams.
#[derive(Debug, Clone)]
pub struct FreeOracle {
    alphabet: Alphabet,
    opts: DecideOptions,
}

impl FreeOracle {
    pub fn new(alphabet: Alphabet) -> Self {
        FreeOracle::with_options(alphabet, DecideOptions::default())
    }

    pub fn with_options(alphabet: Alphabet, opts: DecideOptions) -> Self {
        FreeOracle { alphabet, opts }
    }
}

impl GroupOracle for FreeOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn is_identity(&self, t: &LTerm) -> Result<bool, OracleError> {
        check_alphabet(&self.alphabet, t)?;
        Ok(decide_with(t, &self.opts)?.is_identity())
    }
}

/// The free ℓ-group on one generator, as ℤ⊕ℤ.
#[derive(Debug, Clone)]
pub struct Z2Oracle {
    alphabet: Alphabet,
}

impl Z2Oracle {
    pub fn new(alphabet: Alphabet) -> Result<Self, OracleError> {
        if alphabet.len() > 1 {
            return Err(TermError::TooManyGenerators(alphabet.len()).into());
        }
        Ok(Z2Oracle { alphabet })
    }
}

impl GroupOracle for Z2Oracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn is_identity(&self, t: &LTerm) -> Result<bool, OracleError> {
        check_alphabet(&self.alphabet, t)?;
        Ok(eval_z2(t)? == Z2Element::ZERO)
    }
}

/// Caches the answers of another oracle.
pub struct Memo<O> {
    inner: O,
    cache: Mutex<HashMap<LTerm, bool>>,
}

impl<O: GroupOracle> Memo<O> {
    pub fn new(inner: O) -> Self {
        Memo {
            inner,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    pub fn cached(&self) -> usize {
        self.cache.lock().expect("memo lock").len()
    }
}

impl<O: GroupOracle> GroupOracle for Memo<O> {
    fn alphabet(&self) -> &Alphabet {
        self.inner.alphabet()
    }

    fn is_identity(&self, t: &LTerm) -> Result<bool, OracleError> {
        if let Some(&v) = self.cache.lock().expect("memo lock").get(t) {
            return Ok(v);
        }
        let v = self.inner.is_identity(t)?;
        self.cache.lock().expect("memo lock").insert(t.clone(), v);
        Ok(v)
    }
}
