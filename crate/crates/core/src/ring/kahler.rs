use std::collections::BTreeMap;
use std::fmt;

use super::ratfn::RationalFunction;
use super::scalar::Coeff;
use crate::error::{Error, Result};

/// Bidegree `(r, s)`: the power of `Q_b` and of `Q_f`.
pub type Bidegree = (u32, u32);

/// Formal series in `Q_b`, `Q_f` truncated at total degree `cutoff`.
///
/// A bidegree is determined iff `r + s <= cutoff`. Determined bidegrees
/// without a stored term are exactly zero; stored terms are never zero.
#[derive(Clone, Debug)]
pub struct KahlerSeries<C> {
    cutoff: u32,
    normalized: bool,
    terms: BTreeMap<Bidegree, RationalFunction<C>>,
}

/// What a series knows about one bidegree.
#[derive(Clone, Debug)]
pub enum Coefficient<'a, C> {
    Value(&'a RationalFunction<C>),
    Zero,
    Undetermined,
}

impl<C: Coeff> PartialEq for Coefficient<'_, C> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coefficient::Value(a), Coefficient::Value(b)) => a == b,
            (Coefficient::Zero, Coefficient::Zero) | (Coefficient::Undetermined, Coefficient::Undetermined) => true,
            _ => false,
        }
    }
}

/// All bidegrees of total degree at most `cutoff`, by total degree and then
/// by decreasing `r`.
pub fn graded_bidegrees(cutoff: u32) -> Vec<Bidegree> {
    (0..=cutoff).flat_map(|d| (0..=d).rev().map(move |r| (r, d - r))).collect()
}

fn graded_key(&(r, s): &Bidegree) -> (u32, std::cmp::Reverse<u32>) {
    (r + s, std::cmp::Reverse(r))
}

impl<C: Coeff> KahlerSeries<C> {
    pub fn zero(cutoff: u32) -> Self {
        KahlerSeries { cutoff, normalized: false, terms: BTreeMap::new() }
    }

    pub fn one(cutoff: u32) -> Self {
        Self::constant(RationalFunction::one(), cutoff)
    }

    pub fn constant(c: RationalFunction<C>, cutoff: u32) -> Self {
        let mut s = Self::zero(cutoff);
        s.add_at((0, 0), &c);
        s
    }

    /// Builds a series from `(bidegree, coefficient)` pairs; contributions
    /// to the same bidegree are summed and those beyond the cutoff dropped.
    pub fn from_terms(cutoff: u32, terms: impl IntoIterator<Item = (Bidegree, RationalFunction<C>)>) -> Self {
        let mut s = Self::zero(cutoff);
        for (k, c) in terms {
            s.add_at(k, &c);
        }
        s
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn with_normalized(mut self, normalized: bool) -> Self {
        self.normalized = normalized;
        self
    }

    pub fn is_determined(&self, (r, s): Bidegree) -> bool {
        r + s <= self.cutoff
    }

    pub fn get(&self, k: Bidegree) -> Coefficient<'_, C> {
        match self.terms.get(&k) {
            Some(v) => Coefficient::Value(v),
            None if self.is_determined(k) => Coefficient::Zero,
            None => Coefficient::Undetermined,
        }
    }

    /// The coefficient at `k`, zero when absent; `None` beyond the cutoff.
    pub fn coeff(&self, k: Bidegree) -> Option<RationalFunction<C>> {
        match self.get(k) {
            Coefficient::Value(v) => Some(v.clone()),
            Coefficient::Zero => Some(RationalFunction::zero()),
            Coefficient::Undetermined => None,
        }
    }

    /// Adds `c` at bidegree `k`; ignored beyond the cutoff.
    pub fn add_at(&mut self, k: Bidegree, c: &RationalFunction<C>) {
        if !self.is_determined(k) || c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    /// Merges another series term by term (same cutoff assumed by callers).
    pub fn absorb(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_at(*k, c);
        }
    }

    /// Stored (nonzero) terms in graded order.
    pub fn terms(&self) -> Vec<(Bidegree, &RationalFunction<C>)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c)).collect();
        v.sort_by_key(|(k, _)| graded_key(k));
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map(&self, f: impl Fn(&RationalFunction<C>) -> RationalFunction<C>) -> Self {
        let mut out = Self::zero(self.cutoff).with_normalized(self.normalized);
        for (k, c) in &self.terms {
            out.add_at(*k, &f(c));
        }
        out
    }

    pub fn try_map(&self, f: impl Fn(&RationalFunction<C>) -> Result<RationalFunction<C>>) -> Result<Self> {
        let mut out = Self::zero(self.cutoff).with_normalized(self.normalized);
        for (k, c) in &self.terms {
            out.add_at(*k, &f(c)?);
        }
        Ok(out)
    }

    pub fn reduce(&self) -> Self {
        self.map(RationalFunction::reduce)
    }

    pub fn substitute_t_eq_q(&self) -> Result<Self> {
        self.try_map(RationalFunction::substitute_t_eq_q)
    }

    pub fn swap_tq(&self) -> Self {
        self.map(RationalFunction::swap_tq)
    }

    /// The same series known only through a smaller total degree.
    pub fn truncate(&self, cutoff: u32) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        let mut out = Self::zero(cutoff).with_normalized(self.normalized);
        for (k, c) in &self.terms {
            out.add_at(*k, c);
        }
        out
    }

    /// Coefficientwise semantic equality over the determined range shared
    /// by both series.
    pub fn equals_through(&self, other: &Self, cutoff: u32) -> bool {
        graded_bidegrees(cutoff.min(self.cutoff).min(other.cutoff))
            .into_iter()
            .all(|k| self.coeff(k).unwrap() == other.coeff(k).unwrap())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cutoff != other.cutoff {
            return Err(Error::CutoffMismatch(self.cutoff, other.cutoff));
        }
        let mut out = Self::zero(self.cutoff);
        for ((r1, s1), a) in &self.terms {
            for ((r2, s2), b) in &other.terms {
                out.add_at((r1 + r2, s1 + s2), &(a * b));
            }
        }
        Ok(out.reduce())
    }

    /// `num / den` order by order: each quotient coefficient only uses
    /// coefficients of componentwise smaller bidegree.
    pub fn series_divide(num: &Self, den: &Self) -> Result<Self> {
        if num.cutoff != den.cutoff {
            return Err(Error::CutoffMismatch(num.cutoff, den.cutoff));
        }
        let d0 = den.terms.get(&(0, 0)).ok_or(Error::NonInvertibleSeries)?;
        let inv0 = d0.inv()?;
        let mut out = Self::zero(num.cutoff).with_normalized(true);
        for (r, s) in graded_bidegrees(num.cutoff) {
            let mut v = num.coeff((r, s)).unwrap();
            for ((r2, s2), b) in &den.terms {
                if (*r2, *s2) == (0, 0) || *r2 > r || *s2 > s {
                    continue;
                }
                if let Some(prev) = out.terms.get(&(r - r2, s - s2)) {
                    v = &v - &(b * prev);
                }
            }
            out.add_at((r, s), &(&v * &inv0).reduce());
        }
        Ok(out)
    }
}

impl<C: Coeff> PartialEq for KahlerSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.cutoff == other.cutoff && self.equals_through(other, self.cutoff)
    }
}

impl<C: Coeff> fmt::Display for KahlerSeries<C> {
    /// One line per nonzero bidegree, `(r,s): value`; `0` when empty and the
    /// bare value for a constant series.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        match terms.as_slice() {
            [] => return write!(f, "0"),
            [((0, 0), c)] => return write!(f, "{c}"),
            _ => {}
        }
        for (i, ((r, s), c)) in terms.into_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "({r},{s}): {c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Laurent, Monomial, RatFn, Series};

    fn c(n: i64) -> RatFn {
        RatFn::int(n)
    }

    #[test]
    fn graded_order() {
        assert_eq!(graded_bidegrees(2), vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]);
    }

    #[test]
    fn presence() {
        let s = Series::from_terms(2, [((1, 0), c(3)), ((3, 0), c(1))]);
        assert_eq!(s.get((1, 0)), Coefficient::Value(&c(3)));
        assert_eq!(s.get((0, 2)), Coefficient::Zero);
        assert_eq!(s.get((3, 0)), Coefficient::Undetermined);
    }

    #[test]
    fn divide_by_self_is_one() {
        let q = RatFn::monomial(Monomial::q(1));
        let z = Series::from_terms(3, [((0, 0), c(1)), ((1, 0), q.clone()), ((0, 1), &q + &c(2)), ((1, 2), c(-5))]);
        assert_eq!(Series::series_divide(&z, &z).unwrap(), Series::one(3));
    }

    #[test]
    fn geometric_quotient() {
        // (1 + c Q_b) / (1 + d Q_b) = 1 + (c-d) Q_b + (d^2 - cd) Q_b^2 + ...
        let x = RatFn::from_poly(Laurent::monomial(Monomial::q(1)));
        let y = RatFn::from_poly(Laurent::monomial(Monomial::t(1)));
        let num = Series::from_terms(2, [((0, 0), c(1)), ((1, 0), x.clone())]);
        let den = Series::from_terms(2, [((0, 0), c(1)), ((1, 0), y.clone())]);
        let got = Series::series_divide(&num, &den).unwrap();
        assert_eq!(got.coeff((1, 0)).unwrap(), &x - &y);
        assert_eq!(got.coeff((2, 0)).unwrap(), &(&y * &y) - &(&x * &y));
        assert_eq!(got.coeff((0, 1)).unwrap(), RatFn::zero());
    }

    #[test]
    fn zero_constant_term() {
        let num = Series::from_terms(1, [((1, 0), c(1))]);
        let den = Series::from_terms(1, [((0, 1), c(1))]);
        assert_eq!(Series::series_divide(&num, &den), Err(Error::NonInvertibleSeries));
        let q = Series::series_divide(&num, &Series::one(1)).unwrap();
        assert_eq!(q.get((0, 0)), Coefficient::Zero);
    }

    #[test]
    fn cutoff_mismatch() {
        assert_eq!(Series::series_divide(&Series::one(1), &Series::one(2)), Err(Error::CutoffMismatch(1, 2)));
    }
}
