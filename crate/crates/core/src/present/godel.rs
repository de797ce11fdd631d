//! Pseudo-Gödel numbering of meet strings.
//!
//! A natural `n` is unpaired into `(pad, body)`. The body decodes to a
//! finite sequence of naturals by `seq(0) = []` and
//! `seq(k) = a :: seq(r)` where `(a, r) = unpair(k - 1)`; each entry is the
//! rank of a freely reduced word. Every natural therefore names exactly one
//! meet string, and the padding coordinate gives each meet string
//! infinitely many names.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::PresentError;
use crate::term::{Alphabet, Generator, GroupWord, MeetString};

/// Cantor pairing `⟨a, b⟩ = (a+b)(a+b+1)/2 + b`.
pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = ⌊(√(8z+1) − 1)/2⌋
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = z - t;
    let a = w - &b;
    (a, b)
}

/// Numbering of meet strings over a fixed non-empty alphabet.
#[derive(Debug, Clone)]
pub struct GodelCodec {
    gens: Vec<Generator>,
}

impl GodelCodec {
    pub fn new(alphabet: &Alphabet) -> Result<Self, PresentError> {
        if alphabet.is_empty() {
            return Err(PresentError::EmptyAlphabet);
        }
        Ok(GodelCodec {
            gens: alphabet.generators().to_vec(),
        })
    }

    fn letters(&self) -> u64 {
        2 * self.gens.len() as u64
    }

    /// Number of reduced words of length `len`.
    pub fn words_of_length(&self, len: usize) -> BigUint {
        if len == 0 {
            return BigUint::one();
        }
        let n = self.letters();
        BigUint::from(n) * BigUint::from(n - 1).pow(len as u32 - 1)
    }

    /// The reduced word of the given rank: by length, then mixed radix.
    pub fn word(&self, rank: &BigUint) -> GroupWord {
        let mut r = rank.clone();
        let mut len = 0;
        loop {
            let count = self.words_of_length(len);
            if r < count {
                break;
            }
            r -= count;
            len += 1;
        }
        if len == 0 {
            return GroupWord::identity();
        }
        let n = self.letters();
        // Digits, most significant first: one of n, then len-1 of n-1.
        let mut digits = vec![0u64; len];
        for i in (1..len).rev() {
            digits[i] = (&r % (n - 1)).to_u64().expect("digit");
            r /= n - 1;
        }
        digits[0] = r.to_u64().expect("leading digit");
        let mut codes = Vec::with_capacity(len);
        for (i, d) in digits.into_iter().enumerate() {
            let code = if i == 0 {
                d
            } else {
                let forbidden = codes[i - 1] ^ 1;
                if d >= forbidden {
                    d + 1
                } else {
                    d
                }
            };
            codes.push(code);
        }
        GroupWord::from_letters(codes.into_iter().map(|c| {
            let g = self.gens[(c / 2) as usize].clone();
            (g, if c % 2 == 0 { 1 } else { -1 })
        }))
    }

    /// Inverse of [`GodelCodec::word`]. Generators outside the alphabet are
    /// an error.
    pub fn word_rank(&self, w: &GroupWord) -> Result<BigUint, PresentError> {
        let mut codes = Vec::with_capacity(w.len());
        for (g, s) in w.unit_letters() {
            let j = self
                .gens
                .iter()
                .position(|h| h == g)
                .ok_or_else(|| PresentError::UnknownGenerator(g.to_string()))?;
            codes.push(2 * j as u64 + u64::from(s < 0));
        }
        let len = codes.len();
        let mut r = BigUint::zero();
        for l in 0..len {
            r += self.words_of_length(l);
        }
        if len == 0 {
            return Ok(r);
        }
        let n = self.letters();
        let mut within = BigUint::from(codes[0]);
        for i in 1..len {
            let forbidden = codes[i - 1] ^ 1;
            let d = if codes[i] > forbidden { codes[i] - 1 } else { codes[i] };
            within = within * (n - 1) + d;
        }
        Ok(r + within)
    }

    /// The meet string named by `n`.
    pub fn decode(&self, n: &BigUint) -> MeetString {
        let (_pad, mut body) = unpair(n);
        let mut words = Vec::new();
        while !body.is_zero() {
            let (a, r) = unpair(&(body - 1u32));
            words.push(self.word(&a));
            body = r;
        }
        MeetString::new(words)
    }

    /// The index of `s` with padding zero.
    pub fn encode(&self, s: &MeetString) -> Result<BigUint, PresentError> {
        self.encode_padded(s, &BigUint::zero())
    }

    /// Another index of `s`; distinct paddings give distinct indices.
    pub fn encode_padded(&self, s: &MeetString, pad: &BigUint) -> Result<BigUint, PresentError> {
        let mut body = BigUint::zero();
        for w in s.words.iter().rev() {
            body = pair(&self.word_rank(w)?, &body) + 1u32;
        }
        Ok(pair(pad, &body))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn codec(gens: &str) -> GodelCodec {
        GodelCodec::new(&Alphabet::parse_list(gens).unwrap()).unwrap()
    }

    #[test]
    fn pairing_is_a_bijection_on_a_prefix() {
        for z in 0u32..2000 {
            let z = BigUint::from(z);
            let (a, b) = unpair(&z);
            assert_eq!(pair(&a, &b), z);
        }
        // Closed form against a direct enumeration of the diagonals.
        let mut z = 0u32;
        for s in 0u32..20 {
            for b in 0..=s {
                assert_eq!(pair(&BigUint::from(s - b), &BigUint::from(b)), BigUint::from(z));
                z += 1;
            }
        }
    }

    #[test]
    fn zero_is_the_empty_meet_string() {
        assert!(codec("x,y").decode(&BigUint::zero()).words.is_empty());
    }

    #[test]
    fn word_ranks_enumerate_reduced_words() {
        let c = codec("x,y");
        let mut seen = std::collections::BTreeSet::new();
        for r in 0u32..1 + 4 + 12 + 36 {
            let w = c.word(&BigUint::from(r));
            assert_eq!(c.word_rank(&w).unwrap(), BigUint::from(r));
            assert!(seen.insert(w));
        }
        // Lengths 0..=3 are exhausted, in length order.
        assert!(seen.iter().all(|w| w.len() <= 3));
        assert_eq!(c.word(&BigUint::from(53u32)).len(), 4);
    }

    #[test]
    fn round_trips() {
        let c = codec("x,y,z");
        for n in 0u32..10_000 {
            let n = BigUint::from(n);
            let s = c.decode(&n);
            let again = c.encode(&s).unwrap();
            assert_eq!(c.decode(&again), s);
            // The canonical index is the one with padding zero.
            assert_eq!(again, pair(&BigUint::zero(), &unpair(&n).1));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let words = (0..rng.gen_range(0..4))
                .map(|_| c.word(&BigUint::from(rng.gen_range(0u32..5000))))
                .collect();
            let s = MeetString::new(words);
            let n = c.encode(&s).unwrap();
            assert_eq!(c.decode(&n), s);
            for k in 0u32..=100 {
                let m = c.encode_padded(&s, &BigUint::from(k)).unwrap();
                assert_eq!(c.decode(&m), s);
                assert_eq!(m == n, k == 0);
            }
        }
    }

    #[test]
    fn unknown_generators_are_rejected() {
        let c = codec("x");
        let w = GroupWord::letter(Generator::new("y").unwrap(), 1);
        assert_eq!(c.word_rank(&w), Err(PresentError::UnknownGenerator("y".into())));
    }
}
