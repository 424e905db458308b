//! Seeded random circle elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::moebius::{Displacement, Mat2, MoebiusLift};
use super::pl::PlMap;
use super::{CircleElement, Kind};
use crate::num::rational::{q, qi, Q};

/// Deterministic source of random elements; equal seeds give equal streams.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `p / d` with `|p| <= num` and `1 <= d <= den`.
    pub fn rational(&mut self, num: i64, den: i64) -> Q {
        let d = self.rng.random_range(1..=den);
        let p = self.rng.random_range(-num..=num);
        q(p, d)
    }

    pub fn pl_map(&mut self) -> PlMap {
        let den = self.rng.random_range(2..=12i64);
        let n = self.rng.random_range(1..=4usize).min(den as usize);
        let mut ks: Vec<i64> = (0..den).collect();
        for i in 0..n {
            let j = self.rng.random_range(i..ks.len());
            ks.swap(i, j);
        }
        let mut ks = ks[..n].to_vec();
        ks.sort();
        let c: Vec<i64> = (0..n).map(|_| self.rng.random_range(1..=5)).collect();
        let total: i64 = c.iter().sum();
        let y0 = self.rational(6, 6);
        let mut acc = 0;
        let pts = ks
            .iter()
            .zip(&c)
            .map(|(&k, &ci)| {
                let y = &y0 + q(acc, total);
                acc += ci;
                (q(k, den), y)
            })
            .collect();
        PlMap::new(pts).expect("sampled breakpoints are valid")
    }

    pub fn translation(&mut self) -> Q {
        self.rational(16, 8)
    }

    /// Product of one to four integer elementary matrices.
    pub fn sl2z(&mut self) -> Mat2 {
        let mut m = Mat2::identity();
        for _ in 0..self.rng.random_range(1..=4) {
            let e = match self.rng.random_range(0..4) {
                0 => Mat2::from_ints(1, 1, 0, 1),
                1 => Mat2::from_ints(1, -1, 0, 1),
                2 => Mat2::from_ints(1, 0, 1, 1),
                _ => Mat2::from_ints(1, 0, -1, 1),
            };
            m = m.mul(&e.expect("unimodular"));
        }
        m
    }

    /// Product of one to three rational elementary or diagonal matrices.
    pub fn rational_sl2(&mut self) -> Mat2 {
        let mut m = Mat2::identity();
        for _ in 0..self.rng.random_range(1..=3) {
            let r = self.rational(3, 3);
            let e = match self.rng.random_range(0..3) {
                0 => Mat2::new(qi(1), r, qi(0), qi(1)),
                1 => Mat2::new(qi(1), qi(0), r, qi(1)),
                _ => {
                    let s = [q(1, 2), q(2, 1), q(3, 2), q(2, 3), q(3, 1), q(1, 3)][self.rng.random_range(0..6)].clone();
                    Mat2::new(s.clone(), qi(0), qi(0), s.recip())
                }
            };
            m = m.mul(&e.expect("determinant one"));
        }
        m
    }

    pub fn matrix(&mut self) -> Mat2 {
        match self.rng.random_range(0..10) {
            0 => Mat2::quarter_turn(),
            1 => Mat2::from_ints(0, -1, 1, 1).expect("unimodular"),
            2..=5 => self.sl2z(),
            _ => self.rational_sl2(),
        }
    }

    pub fn moebius(&mut self) -> MoebiusLift {
        let m = self.matrix();
        MoebiusLift::new(m, self.rng.random_range(-2..=2))
    }

    pub fn element(&mut self, kind: Kind) -> CircleElement {
        match kind {
            Kind::Pl => {
                if self.rng.random_bool(0.2) {
                    CircleElement::Pl(PlMap::translation(self.translation()))
                } else {
                    CircleElement::Pl(self.pl_map())
                }
            }
            Kind::Moebius => CircleElement::Moebius(self.moebius()),
        }
    }

    /// An element with `g(x) >= x` everywhere; about a third of them have a
    /// fixed point.
    pub fn above_identity(&mut self, kind: Kind) -> CircleElement {
        match kind {
            Kind::Pl => {
                let g = self.pl_map();
                let (m, _, _, _) = g.displacement_range();
                let delta = if self.rng.random_bool(0.35) { Q::from_integer(0.into()) } else { q(self.rng.random_range(1..=12), 6) };
                CircleElement::Pl(PlMap::translation(delta - m).compose(&g))
            }
            Kind::Moebius => {
                if self.rng.random_bool(0.35) {
                    let c = self.matrix();
                    let p = Mat2::new(qi(1), self.rational(4, 3), qi(0), qi(1)).expect("unipotent");
                    let g = MoebiusLift::new(c.mul(&p).mul(&c.inverse()), 0);
                    if let Ok(Displacement::TouchesBelow { .. }) = g.displacement() {
                        return CircleElement::Moebius(g.inverse().expect("small winding"));
                    }
                    return CircleElement::Moebius(g);
                }
                let m = self.matrix();
                let mut w = self.rng.random_range(-1..=1);
                loop {
                    let g = MoebiusLift::new(m.clone(), w);
                    let d = g.displacement().expect("small winding");
                    if matches!(d, Displacement::Positive | Displacement::TouchesAbove { .. } | Displacement::Identity) {
                        return CircleElement::Moebius(g);
                    }
                    w += 1;
                }
            }
        }
    }

    /// An element with `g(x) > x + q` everywhere, drawn from
    /// `above_identity` composed with a translation.
    pub fn above_by(&mut self, kind: Kind, q0: i64) -> CircleElement {
        let g = self.above_identity(kind);
        let extra = self.rng.random_range(1..=2);
        let t = CircleElement::translation(qi(q0 + extra), kind).expect("integer translation");
        t.compose(&g).expect("same kind")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::is_above_identity;

    #[test]
    fn streams_are_reproducible() {
        let mut a = Sampler::new(3);
        let mut b = Sampler::new(3);
        for kind in [Kind::Pl, Kind::Moebius] {
            for _ in 0..20 {
                assert_eq!(a.element(kind), b.element(kind));
            }
        }
    }

    #[test]
    fn above_identity_samples_are_above_identity() {
        let mut s = Sampler::new(5);
        for kind in [Kind::Pl, Kind::Moebius] {
            for _ in 0..60 {
                assert!(is_above_identity(&s.above_identity(kind)).unwrap());
            }
        }
    }
}
