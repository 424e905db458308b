//! Seeded samples of words in the free group.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{positive_in_sigma_order, FreeWord, SurfaceRep};
use crate::circle::Dominance;
use crate::error::{Error, Result};

/// Rejection attempts per requested commutator word before giving up.
const ATTEMPTS_PER_WORD: usize = 10_000;

pub struct WordSampler {
    rng: ChaCha8Rng,
    rank: usize,
}

impl WordSampler {
    pub fn new(seed: u64, rank: usize) -> Self {
        assert!(rank >= 1);
        WordSampler { rng: ChaCha8Rng::seed_from_u64(seed), rank }
    }

    fn letter(&mut self) -> i32 {
        let k = self.rng.random_range(1..=self.rank as i32);
        if self.rng.random_bool(0.5) {
            k
        } else {
            -k
        }
    }

    /// A uniform reduced word of exactly `len` letters.
    pub fn reduced(&mut self, len: usize) -> FreeWord {
        let mut letters: Vec<i32> = Vec::with_capacity(len);
        while letters.len() < len {
            let l = self.letter();
            if letters.last() != Some(&-l) {
                letters.push(l);
            }
        }
        FreeWord::from_letters(letters)
    }

    /// A nonempty reduced word in the commutator subgroup of even length
    /// at most `max_len`, uniform among such words of its length.
    pub fn commutator_word(&mut self, max_len: usize) -> Result<FreeWord> {
        if max_len < 4 {
            return Err(Error::Precondition("commutator words need length at least 4".into()));
        }
        for _ in 0..ATTEMPTS_PER_WORD {
            let len = 2 * self.rng.random_range(2..=max_len / 2);
            let w = self.reduced(len);
            if w.in_commutator_subgroup() {
                return Ok(w);
            }
        }
        Err(Error::SearchDiverged { cap: ATTEMPTS_PER_WORD as i64 })
    }

    pub fn commutator_words(&mut self, count: usize, max_len: usize) -> Result<Vec<FreeWord>> {
        (0..count).map(|_| self.commutator_word(max_len)).collect()
    }

    /// Words with `w >_{q,Sigma} e`: products of one to three conjugates
    /// `u c^k u^-1` of powers `k > q` of `c = [a, b]`, kept only when the
    /// order confirms them.
    pub fn positive_words(&mut self, rep_ref: &SurfaceRep, q: i64, count: usize) -> Result<Vec<FreeWord>> {
        let c = FreeWord::commutator(&FreeWord::generator(1), &FreeWord::generator(2));
        let mut out = Vec::with_capacity(count);
        let mut attempts = 0;
        while out.len() < count {
            attempts += 1;
            if attempts > ATTEMPTS_PER_WORD * count.max(1) {
                return Err(Error::SearchDiverged { cap: attempts as i64 });
            }
            let factors = self.rng.random_range(1..=3);
            let mut w = FreeWord::empty();
            for _ in 0..factors {
                let k = q + 1 + self.rng.random_range(0..2);
                let u_len = self.rng.random_range(0..=3);
                let u = self.reduced(u_len);
                w = w.mul(&c.power(k).conjugate_by(&u));
            }
            if positive_in_sigma_order(rep_ref, &w, q)? == Dominance::Yes {
                out.push(w);
            }
        }
        Ok(out)
    }
}
