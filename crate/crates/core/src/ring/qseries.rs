use std::fmt;
use std::ops::Mul;

use super::laurent::{LaurentPoly, Monomial};
use super::ratfn::RationalFunction;
use super::scalar::Coeff;
use crate::error::{Error, Result};

/// Truncated expansion in q with coefficients polynomial in t.
///
/// The value is `prefactor · residual + O(q^(order/2 + 1/2))` relative to the
/// residual's own start. The residual starts at `q^0`, has minimal t-degree
/// 0, and when all its coefficients are integers their gcd is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C> {
    prefactor: LaurentPoly<C>,
    order: i32,
    residual: LaurentPoly<C>,
}

impl<C: Coeff> QSeries<C> {
    /// Expands `a` through `q^q_order`, counted from the first nonzero
    /// power.
    pub fn expand(a: &RationalFunction<C>, q_order: u32) -> Result<Self> {
        let max = 2 * q_order as i32;
        let a = a.reduce();
        let num = a.numerator();
        let Some(nq) = num.min_q() else {
            return Ok(QSeries { prefactor: LaurentPoly::one(), order: max, residual: LaurentPoly::zero() });
        };
        let mut shift = nq;
        let mut series = num.mul_monomial(Monomial::new(-nq, 0)).truncate_q(max);
        for (f, k) in a.denominator_factors() {
            let fq = f.min_q().expect("nonzero factor");
            shift -= fq * *k as i32;
            let f = f.mul_monomial(Monomial::new(-fq, 0));
            for _ in 0..*k {
                series = divide_series(&series, &f, max)?;
            }
        }
        Ok(Self::normalized(series, Monomial::new(shift, 0), max))
    }

    /// Wraps an already expanded series `x^base · s` with the canonical
    /// prefactor split.
    pub fn normalized(s: LaurentPoly<C>, base: Monomial, order: i32) -> Self {
        if s.is_zero() {
            return QSeries { prefactor: LaurentPoly::one(), order, residual: s };
        }
        let tmin = s.terms().map(|(m, _)| m.t).min().unwrap();
        let qmin = s.min_q().unwrap();
        let mut content = C::zero();
        if s.terms().all(|(_, c)| c.is_integer()) {
            for (_, c) in s.terms() {
                content = content.gcd(c);
            }
        } else {
            content = C::one();
        }
        let shift = Monomial::new(qmin, tmin);
        let residual = s.mul_term(shift.inv(), &(C::one() / content.clone()));
        QSeries {
            prefactor: LaurentPoly::term(base.mul(shift), content),
            order: order - qmin,
            residual,
        }
    }

    /// Reassembles a series from stored parts, e.g. after deserialization.
    pub fn from_parts(prefactor: LaurentPoly<C>, order: i32, residual: LaurentPoly<C>) -> Self {
        QSeries { prefactor, order, residual: residual.truncate_q(order) }
    }

    pub fn prefactor(&self) -> &LaurentPoly<C> {
        &self.prefactor
    }

    /// Largest doubled q-exponent carried by the residual.
    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn residual(&self) -> &LaurentPoly<C> {
        &self.residual
    }

    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }

    /// The t-polynomial at `q^(qe/2)` of the residual.
    pub fn coeff(&self, qe: i32) -> LaurentPoly<C> {
        self.residual.q_slice(qe)
    }

    /// `prefactor · residual`: the expansion without normalization.
    pub fn absolute(&self) -> LaurentPoly<C> {
        &self.prefactor * &self.residual
    }

    /// Same series cut at a smaller order.
    pub fn truncated(&self, order: i32) -> Self {
        QSeries { prefactor: self.prefactor.clone(), order: order.min(self.order), residual: self.residual.truncate_q(order) }
    }
}

/// `s / f` as a truncated q-series. `f` must have q-exponents starting at 0;
/// each step divides exactly by the constant-in-q part of `f`.
fn divide_series<C: Coeff>(s: &LaurentPoly<C>, f: &LaurentPoly<C>, max: i32) -> Result<LaurentPoly<C>> {
    let d: Vec<LaurentPoly<C>> = (0..=max).map(|j| f.q_slice(j)).collect();
    if let Some((m, c)) = d[0].as_term() {
        // unit leading part: plain inversion
        let inv_m = m.inv();
        let inv_c = C::one() / c.clone();
        let mut out: Vec<LaurentPoly<C>> = Vec::with_capacity(max as usize + 1);
        for k in 0..=max {
            let mut acc = s.q_slice(k);
            for j in 1..=k {
                if !d[j as usize].is_zero() && !out[(k - j) as usize].is_zero() {
                    acc -= &(&d[j as usize] * &out[(k - j) as usize]);
                }
            }
            out.push(acc.mul_term(inv_m, &inv_c));
        }
        return Ok(assemble(out));
    }
    let mut out: Vec<LaurentPoly<C>> = Vec::with_capacity(max as usize + 1);
    for k in 0..=max {
        let mut acc = s.q_slice(k);
        for j in 1..=k {
            if !d[j as usize].is_zero() && !out[(k - j) as usize].is_zero() {
                acc -= &(&d[j as usize] * &out[(k - j) as usize]);
            }
        }
        let c = acc.exact_div(&d[0]).ok_or_else(|| Error::NotExpandable { factor: f.to_string(), qe: k })?;
        out.push(c);
    }
    Ok(assemble(out))
}

fn assemble<C: Coeff>(slices: Vec<LaurentPoly<C>>) -> LaurentPoly<C> {
    let mut out = LaurentPoly::zero();
    for (k, p) in slices.into_iter().enumerate() {
        out += &p.mul_monomial(Monomial::new(k as i32, 0));
    }
    out
}

impl<C: Coeff> fmt::Display for QSeries<C> {
    /// Residual only, ascending in q, e.g. `t+(1+t)*q+(1+t)*q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residual.is_zero() {
            return write!(f, "0");
        }
        let mut qes: Vec<i32> = self.residual.terms().map(|(m, _)| m.q).collect();
        qes.dedup();
        for (i, qe) in qes.into_iter().enumerate() {
            let c = self.residual.q_slice(qe);
            let mono = Monomial::new(qe, 0);
            let body = if mono.is_one() {
                c.to_string()
            } else if c.is_one() {
                mono.to_string()
            } else if c.len() == 1 {
                let (m, k) = c.as_term().unwrap();
                LaurentPoly::term(m.mul(mono), k.clone()).to_string()
            } else {
                format!("({c})*{mono}")
            };
            if i > 0 && !body.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Laurent, QSer, RatFn};

    #[test]
    fn geometric() {
        let a = RatFn::new(Laurent::monomial(Monomial::new(1, 0)), &Laurent::one() - &Laurent::monomial(Monomial::q(1))).unwrap();
        let s = QSer::expand(&a, 3).unwrap();
        assert_eq!(s.prefactor(), &Laurent::monomial(Monomial::new(1, 0)));
        assert_eq!(s.to_string(), "1+q+q^2+q^3");
    }

    #[test]
    fn refined_unknot_coefficient() {
        // (q+t)/(sqrt(t)(1-q))
        let q = Laurent::monomial(Monomial::q(1));
        let t = Laurent::monomial(Monomial::t(1));
        let den = (&Laurent::one() - &q).mul_monomial(Monomial::new(0, 1));
        let a = RatFn::new(&q + &t, den).unwrap();
        let s = QSer::expand(&a, 3).unwrap();
        assert_eq!(s.to_string(), "t+(1+t)*q+(1+t)*q^2+(1+t)*q^3");
        assert_eq!(s.prefactor(), &Laurent::monomial(Monomial::new(0, -1)));
    }

    #[test]
    fn rejects_non_polynomial_t() {
        let t = Laurent::monomial(Monomial::t(1));
        let a = RatFn::new(Laurent::one(), &Laurent::one() - &t).unwrap();
        assert!(matches!(QSer::expand(&a, 2), Err(Error::NotExpandable { .. })));
    }

    #[test]
    fn cancelling_t_factor_is_fine() {
        let t = Laurent::monomial(Monomial::t(1));
        let q = Laurent::monomial(Monomial::q(1));
        let one_minus_t = &Laurent::one() - &t;
        // (1-t)(1+q) / ((1-t)(1-q)) with the (1-t) hidden inside a product
        let den = &one_minus_t * &(&Laurent::one() - &q);
        let a = RatFn::new(&one_minus_t * &(&Laurent::one() + &q), den).unwrap();
        let s = QSer::expand(&a, 2).unwrap();
        assert_eq!(s.to_string(), "1+2*q+2*q^2");
    }
}
