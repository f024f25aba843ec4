//! Seeded generation of small random elements for fuzz checks.

use rand::seq::IndexedRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dirac::SpinorElement;
use crate::forms::OneForm;
use crate::metric::DIM;
use crate::minkowski::PositionElement;
use crate::momentum::{constants, MomentumElement};
use crate::scalar::{GaussianRational, ScalarValue};

/// Wave labels available to the generator.
pub const WAVE_LABELS: [u32; 2] = [1, 2];

pub struct Generator {
    rng: ChaCha8Rng,
    pub max_degree: u32,
}

impl Generator {
    pub fn new(seed: u64, max_degree: u32) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), max_degree }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// One of `0, ±1, ±i, ±1/2`.
    pub fn coefficient(&mut self) -> GaussianRational {
        let choices = [(0, 1, false), (1, 1, false), (-1, 1, false), (1, 1, true), (-1, 1, true), (1, 2, false), (-1, 2, false)];
        let &(n, d, imag) = choices.choose(&mut self.rng).expect("non-empty");
        let r = GaussianRational::from_ratio(n, d);
        if imag {
            &r * &GaussianRational::i()
        } else {
            r
        }
    }

    pub fn nonzero_coefficient(&mut self) -> GaussianRational {
        loop {
            let c = self.coefficient();
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// Ordered product of at most `max_degree` coordinates, with an optional
    /// plane wave inserted at a random position.
    pub fn word(&mut self, with_waves: bool) -> PositionElement {
        let len = self.rng.random_range(0..=self.max_degree) as usize;
        let mut letters: Vec<PositionElement> = (0..len).map(|_| PositionElement::x(self.below(4))).collect();
        if with_waves && self.chance(0.3) {
            let j = *WAVE_LABELS.choose(&mut self.rng).expect("non-empty");
            let at = self.below(letters.len() + 1);
            letters.insert(at, PositionElement::label_wave(j));
        }
        letters.iter().fold(PositionElement::one(), |acc, l| acc.normal_mul(l))
    }

    /// Sum of up to three scaled words.
    pub fn position(&mut self, with_waves: bool) -> PositionElement {
        let n = 1 + self.below(3);
        let mut out = PositionElement::zero();
        for _ in 0..n {
            let c = ScalarValue::from_gaussian(self.coefficient());
            out = &out + &self.word(with_waves).scale(&c);
        }
        out
    }

    pub fn nonzero_position(&mut self, with_waves: bool) -> PositionElement {
        loop {
            let a = self.position(with_waves);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// A generator of the momentum algebra or one of the named elements.
    pub fn momentum(&mut self) -> MomentumElement {
        let k = constants();
        match self.below(5) {
            0 => MomentumElement::p(self.below(4)),
            1 => MomentumElement::exp([-1, 1][self.below(2)]),
            2 => k.f.up(self.below(DIM), self.below(DIM)).clone(),
            3 => k.del[self.below(DIM)].clone(),
            _ => k.e[self.below(DIM)].clone(),
        }
    }

    pub fn spinor(&mut self, with_waves: bool) -> SpinorElement {
        SpinorElement {
            comp: std::array::from_fn(|_| {
                if self.chance(0.5) {
                    self.position(with_waves)
                } else {
                    PositionElement::zero()
                }
            }),
        }
    }

    pub fn one_form(&mut self, with_waves: bool) -> OneForm {
        OneForm {
            comp: std::array::from_fn(|_| {
                if self.chance(0.4) {
                    self.position(with_waves)
                } else {
                    PositionElement::zero()
                }
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_a_seed() {
        let mut a = Generator::new(7, 3);
        let mut b = Generator::new(7, 3);
        for _ in 0..20 {
            assert_eq!(a.position(true), b.position(true));
        }
    }

    #[test]
    fn degree_is_bounded() {
        let mut gen = Generator::new(1, 2);
        for _ in 0..50 {
            assert!(gen.position(false).degree() <= 2);
        }
    }
}
