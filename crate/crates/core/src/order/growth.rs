//! The relative growth `e_n(g, h) = min { p : g^p >= h^n }` and its
//! certified limit.

use num_traits::Signed;

use super::{Group, OrderOracle};
use crate::error::{Error, Result};
use crate::num::rational::qi;
use crate::num::{Interval, Q};
use crate::quasimorphism::Quasimorphism;

/// Largest exponent tried before a search is declared divergent.
pub const DEFAULT_POWER_CAP: i64 = 1 << 40;

/// Powers of one element from memoized repeated squarings.
pub struct PowerCache<'a, G: Group> {
    group: &'a G,
    pos: Vec<G::Elem>,
    neg: Vec<G::Elem>,
}

impl<'a, G: Group> PowerCache<'a, G> {
    pub fn new(group: &'a G, g: &G::Elem) -> Result<Self> {
        Ok(PowerCache { group, pos: vec![g.clone()], neg: vec![group.invert(g)?] })
    }

    pub fn get(&mut self, p: i64) -> Result<G::Elem> {
        let mut e = p.unsigned_abs();
        let mut acc = self.group.identity();
        let mut i = 0;
        while e > 0 {
            let table = if p < 0 { &mut self.neg } else { &mut self.pos };
            if i == table.len() {
                let last = &table[i - 1];
                let sq = self.group.compose(last, last)?;
                table.push(sq);
            }
            if e & 1 == 1 {
                acc = self.group.compose(&acc, &table[i])?;
            }
            e >>= 1;
            i += 1;
        }
        Ok(acc)
    }
}

/// Outcome of one `e_n` search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRecord {
    pub n: i64,
    pub e_n: i64,
    /// Every exponent tested, in order, with whether `g^p >= h^n` held.
    pub probes: Vec<(i64, bool)>,
    /// Recomputed without the cache: `g^e_n >= h^n`, `g^(e_n - 1)` is not,
    /// and `g^(e_n + 1) >= h^n` (up-closedness at the boundary).
    pub attained: bool,
    pub minimal: bool,
    pub up_closed: bool,
}

/// Doubling bracket then bisection; `E_n` is an up-closed ray, so the
/// search is sound whenever `g` is dominant.
pub fn growth_en<O: OrderOracle>(order: &O, g: &O::Elem, h: &O::Elem, n: i64, power_cap: i64) -> Result<GrowthRecord> {
    if n < 1 {
        return Err(Error::Precondition("growth index n must be at least 1".into()));
    }
    let target = order.power(h, n)?;
    let mut cache = PowerCache::new(order, g)?;
    let mut probes = Vec::new();
    let mut test = |p: i64, probes: &mut Vec<(i64, bool)>| -> Result<bool> {
        let r = order.succeq(&cache.get(p)?, &target)?;
        probes.push((p, r));
        Ok(r)
    };
    let diverged = || Error::SearchDiverged { cap: power_cap };
    // invariant: test(lo) fails, test(hi) holds
    let (mut lo, mut hi);
    if test(1, &mut probes)? {
        hi = 1;
        let mut p = 0;
        loop {
            if !test(p, &mut probes)? {
                lo = p;
                break;
            }
            hi = p;
            if p == 0 {
                p = -1;
            } else if p <= -power_cap {
                return Err(diverged());
            } else {
                p = (2 * p).max(-power_cap);
            }
        }
    } else {
        lo = 1;
        let mut p = 2;
        loop {
            if test(p, &mut probes)? {
                hi = p;
                break;
            }
            lo = p;
            if p >= power_cap {
                return Err(diverged());
            }
            p = (2 * p).min(power_cap);
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if test(mid, &mut probes)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let e_n = hi;
    let at = |p: i64| -> Result<bool> { order.succeq(&order.power(g, p)?, &target) };
    let rec = GrowthRecord {
        n,
        e_n,
        probes,
        attained: at(e_n)?,
        minimal: !at(e_n - 1)?,
        up_closed: at(e_n + 1)?,
    };
    if !(rec.attained && rec.minimal && rec.up_closed) {
        return Err(Error::InconsistentOracles(format!("growth search for e_{n} = {e_n} not confirmed by direct powers")));
    }
    Ok(rec)
}

/// Sandwich data: the quasimorphism and the constant `C` with
/// `{f >= C}` inside the positives.
pub struct Sandwich<'a, F> {
    pub f: &'a F,
    pub c: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthLimit {
    pub estimate: Q,
    /// Certified to contain `f(h) / f(g)` when sandwich data is given.
    pub interval: Option<Interval>,
    pub record: GrowthRecord,
}

/// `e_N / N`, and with sandwich data the interval
/// `[e_N/N - (D + C + f(g)) / (N f(g)), e_N/N + D / (N f(g))]`.
pub fn growth_limit<O, F>(
    order: &O,
    g: &O::Elem,
    h: &O::Elem,
    big_n: i64,
    sandwich: Option<Sandwich<'_, F>>,
    power_cap: i64,
) -> Result<GrowthLimit>
where
    O: OrderOracle,
    F: Quasimorphism<Elem = O::Elem>,
{
    let record = growth_en(order, g, h, big_n, power_cap)?;
    let nq = qi(big_n);
    let estimate = qi(record.e_n) / &nq;
    let interval = match sandwich {
        None => None,
        Some(Sandwich { f, c }) => {
            let fg = f.eval(g)?;
            if !fg.lo().is_positive() {
                return Err(Error::Precondition(format!("{}(g) = {fg} is not positive", f.describe())));
            }
            // both radii decrease in f(g); the smallest value is the safe one
            let d = f.defect();
            let lo = &estimate - (&d + &c) / (&nq * fg.lo()) - nq.recip();
            let hi = &estimate + &d / (&nq * fg.lo());
            Some(Interval::new(lo, hi))
        }
    };
    Ok(GrowthLimit { estimate, interval, record })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{CircleElement, Kind};
    use crate::num::rational::q;
    use crate::order::{CircleOrder, IntegerOrder};
    use crate::quasimorphism::{IntegerIdentity, TranslationNumber};

    fn t(n: i64, d: i64) -> CircleElement {
        CircleElement::translation(q(n, d), Kind::Pl).unwrap()
    }

    #[test]
    fn integer_growth() {
        assert_eq!(growth_en(&IntegerOrder, &2, &3, 4, DEFAULT_POWER_CAP).unwrap().e_n, 6);
        assert_eq!(growth_en(&IntegerOrder, &2, &-3, 4, DEFAULT_POWER_CAP).unwrap().e_n, -6);
        assert_eq!(growth_en(&IntegerOrder, &3, &0, 1, DEFAULT_POWER_CAP).unwrap().e_n, 0);
        assert_eq!(growth_en(&IntegerOrder, &0, &1, 1, 1 << 10), Err(Error::SearchDiverged { cap: 1 << 10 }));
        let lim = growth_limit(&IntegerOrder, &2, &3, 10, Some(Sandwich { f: &IntegerIdentity, c: qi(1) }), DEFAULT_POWER_CAP).unwrap();
        assert_eq!(lim.estimate, q(3, 2));
        assert!(lim.interval.unwrap().contains(&q(3, 2)));
    }

    #[test]
    fn circle_growth() {
        let order = CircleOrder::pointwise(Kind::Pl);
        let r = growth_en(&order, &t(1, 1), &t(5, 2), 3, DEFAULT_POWER_CAP).unwrap();
        assert_eq!(r.e_n, 8);
        let tau = TranslationNumber::default();
        let lim = growth_limit(&order, &t(1, 1), &t(5, 2), 8, Some(Sandwich { f: &tau, c: qi(1) }), DEFAULT_POWER_CAP).unwrap();
        assert!(lim.interval.unwrap().contains(&q(5, 2)));
    }

    #[test]
    fn hyperbolic_growth_against_translation() {
        // h moves points by between 1 and 2, so h^5 needs 5 to 10 unit steps;
        // h^5 is conjugate to a lift with displacement exactly 5 at its
        // fixed points, and the maximal displacement of h^5 is below 6
        let order = CircleOrder::pointwise(Kind::Moebius);
        let g = CircleElement::translation(qi(1), Kind::Moebius).unwrap();
        let h: CircleElement = "moebius: [[2,0],[0,1/2]] winding 1".parse().unwrap();
        let r = growth_en(&order, &g, &h, 5, DEFAULT_POWER_CAP).unwrap();
        assert!(r.e_n == 5 || r.e_n == 6);
        let h5 = h.power(5).unwrap();
        let at = |p: i64| order.succeq(&g.power(p).unwrap(), &h5).unwrap();
        assert!(at(r.e_n) && !at(r.e_n - 1));
    }

    #[test]
    fn power_cache_matches_direct_powers() {
        let g: CircleElement = "pl: [(0, 0), (1/2, 1/4)]".parse().unwrap();
        let g = g.compose(&t(1, 3)).unwrap();
        let order = CircleOrder::pointwise(Kind::Pl);
        let mut c = PowerCache::new(&order, &g).unwrap();
        for p in [-5, -1, 0, 1, 2, 7] {
            assert_eq!(c.get(p).unwrap(), g.power(p).unwrap());
        }
    }
}
