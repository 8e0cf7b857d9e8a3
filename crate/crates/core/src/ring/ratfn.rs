use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::{LaurentPoly, Monomial};
use super::scalar::Coeff;
use crate::error::{Error, Result};

/// Denominator factors with multiplicities.
type Factors<C> = Vec<(LaurentPoly<C>, u32)>;

/// Quotient of Laurent polynomials.
///
/// The denominator is kept as a list of distinct normalized factors with
/// multiplicities: each factor has no monomial content and coefficient 1 on
/// its lexicographically smallest monomial. All monomial and scalar content
/// lives in the numerator. Nothing is ever reduced by a gcd; sums use the
/// factorwise least common multiple of the two factor lists, and `reduce`
/// cancels whole factors that divide the numerator exactly.
#[derive(Clone, Debug)]
pub struct RationalFunction<C> {
    num: LaurentPoly<C>,
    den: Factors<C>,
}

/// Splits `p = c·x^m·f` with `f` normalized. `f` is `1` for monomials.
fn normalize_factor<C: Coeff>(p: &LaurentPoly<C>) -> (C, Monomial, LaurentPoly<C>) {
    let m = p.min_corner();
    let shifted = p.mul_monomial(m.inv());
    let (_, lead) = shifted.terms().next().expect("nonzero factor");
    let c = lead.clone();
    let f = shifted.scale(&(C::one() / c.clone()));
    (c, m, f)
}

impl<C: Coeff> RationalFunction<C> {
    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::int(n))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(LaurentPoly::monomial(m))
    }

    pub fn term(m: Monomial, c: C) -> Self {
        Self::from_poly(LaurentPoly::term(m, c))
    }

    pub fn from_poly(num: LaurentPoly<C>) -> Self {
        RationalFunction { num, den: Vec::new() }
    }

    /// `num / den`; fails when `den` is zero.
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_poly(num).div_poly(&den))
    }

    /// `1 / Π (1 - x^v)` style products: one factor `p` with multiplicity.
    pub fn one_over(p: &LaurentPoly<C>, mult: u32) -> Self {
        let mut r = Self::one();
        r.push_factor(p, mult);
        r
    }

    fn push_factor(&mut self, p: &LaurentPoly<C>, mult: u32) {
        if mult == 0 {
            return;
        }
        let (c, m, f) = normalize_factor(p);
        let unit = C::one() / c.pow_u32(mult);
        self.num = self.num.mul_term(m.inv().pow(mult as i32), &unit);
        if f.is_one() {
            return;
        }
        match self.den.iter_mut().find(|(g, _)| *g == f) {
            Some((_, k)) => *k += mult,
            None => self.den.push((f, mult)),
        }
    }

    fn div_poly(mut self, p: &LaurentPoly<C>) -> Self {
        self.push_factor(p, 1);
        self
    }

    pub fn numerator(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(LaurentPoly<C>, u32)] {
        &self.den
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> LaurentPoly<C> {
        self.den.iter().fold(LaurentPoly::one(), |acc, (f, k)| &acc * &f.pow(*k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// `c·x^m` when the value is a single term with trivial denominator.
    pub fn as_term(&self) -> Option<(Monomial, C)> {
        if !self.den.is_empty() {
            return None;
        }
        self.num.as_term().map(|(m, c)| (m, c.clone()))
    }

    pub fn scale(&self, c: &C) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_term(&self, m: Monomial, c: &C) -> Self {
        RationalFunction { num: self.num.mul_term(m, c), den: self.den.clone() }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        RationalFunction { num: self.num.mul_monomial(m), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_poly(self.denominator()).div_poly(&self.num))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = self * &Self::from_poly(other.denominator());
        out.push_factor(&other.num, 1);
        Ok(out)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.iter().map(|(f, m)| (f.clone(), m * k)).collect(),
        })
    }

    /// Factorwise least common multiple of two factor lists, with the
    /// cofactors that bring each list up to it.
    fn common_denominator(&self, other: &Self) -> (Factors<C>, LaurentPoly<C>, LaurentPoly<C>) {
        let mut lcm = self.den.clone();
        for (f, k) in &other.den {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some((_, m)) => *m = (*m).max(*k),
                None => lcm.push((f.clone(), *k)),
            }
        }
        let cofactor = |den: &[(LaurentPoly<C>, u32)]| {
            let mut acc = LaurentPoly::one();
            for (f, k) in &lcm {
                let have = den.iter().find(|(g, _)| g == f).map_or(0, |(_, m)| *m);
                if *k > have {
                    acc = multiply_factor(&acc, f, k - have);
                }
            }
            acc
        };
        let ca = cofactor(&self.den);
        let cb = cofactor(&other.den);
        (lcm, ca, cb)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { -other } else { other.clone() };
        }
        let (den, ca, cb) = self.common_denominator(other);
        let a = multiply_poly(&self.num, &ca);
        let b = multiply_poly(&other.num, &cb);
        let num = if subtract { a - b } else { a + b };
        if num.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, den }
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for (f, k) in &self.den {
            let mut left = *k;
            while left > 0 {
                match num.exact_div(f) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.push((f.clone(), left));
            }
        }
        RationalFunction { num, den }
    }

    /// Semantic equality by cross-multiplication over the common
    /// denominator.
    pub fn equals(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (_, ca, cb) = self.common_denominator(other);
        multiply_poly(&self.num, &ca) == multiply_poly(&other.num, &cb)
    }

    fn map_monomials(&self, f: impl Fn(Monomial) -> Monomial + Copy) -> Result<Self> {
        let mut out = Self::from_poly(self.num.map_monomials(f));
        for (g, k) in &self.den {
            let image = g.map_monomials(f);
            if image.is_zero() {
                return Err(Error::DegenerateSubstitution(g.to_string()));
            }
            out.push_factor(&image, *k);
        }
        Ok(out)
    }

    /// `t ↦ q` in numerator and denominator.
    pub fn substitute_t_eq_q(&self) -> Result<Self> {
        self.map_monomials(Monomial::t_eq_q)
    }

    pub fn swap_tq(&self) -> Self {
        self.map_monomials(Monomial::swap_tq).expect("swapping variables preserves nonzero factors")
    }

    pub fn is_t_free(&self) -> bool {
        self.num.is_t_free() && self.den.iter().all(|(f, _)| f.is_t_free())
    }
}

fn multiply_poly<C: Coeff>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> LaurentPoly<C> {
    if b.is_one() {
        a.clone()
    } else {
        a * b
    }
}

/// `a · f^k`, with a shortcut for binomials `1 - x^v`.
fn multiply_factor<C: Coeff>(a: &LaurentPoly<C>, f: &LaurentPoly<C>, k: u32) -> LaurentPoly<C> {
    let mut acc = a.clone();
    for _ in 0..k {
        acc = match f.as_binomial() {
            Some((c, u, v)) if c.is_one() && u.is_one() => &acc - &acc.mul_monomial(v),
            _ => &acc * f,
        };
    }
    acc
}

trait PowU32 {
    fn pow_u32(&self, k: u32) -> Self;
}

impl<C: Coeff> PowU32 for C {
    fn pow_u32(&self, k: u32) -> Self {
        (0..k).fold(C::one(), |acc, _| acc * self.clone())
    }
}

impl<C: Coeff> PartialEq for RationalFunction<C> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<C: Coeff> From<LaurentPoly<C>> for RationalFunction<C> {
    fn from(p: LaurentPoly<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Coeff> Add for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn add(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self.combine(rhs, false)
    }
}

impl<C: Coeff> Sub for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn sub(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self.combine(rhs, true)
    }
}

impl<C: Coeff> Mul for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn mul(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = self.den.clone();
        for (f, k) in &rhs.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, m)) => *m += k,
                None => den.push((f.clone(), *k)),
            }
        }
        RationalFunction { num: &self.num * &rhs.num, den }
    }
}

impl<C: Coeff> Neg for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Coeff> $tr for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $m(self, rhs: RationalFunction<C>) -> RationalFunction<C> { (&self).$m(&rhs) }
        }
        impl<C: Coeff> $tr<&RationalFunction<C>> for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $m(self, rhs: &RationalFunction<C>) -> RationalFunction<C> { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<C: Coeff> Neg for RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        -&self
    }
}

impl<C: Coeff> Zero for RationalFunction<C> {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl<C: Coeff> One for RationalFunction<C> {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl<C: Coeff> fmt::Display for RationalFunction<C> {
    /// `num/den` with each denominator factor parenthesized, factors sorted
    /// by their printed form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string();
        if self.den.is_empty() {
            return write!(f, "{num}");
        }
        let mut factors: Vec<(String, u32)> = self.den.iter().map(|(g, k)| (g.to_string(), *k)).collect();
        factors.sort();
        let den: Vec<String> = factors
            .into_iter()
            .map(|(g, k)| if k == 1 { format!("({g})") } else { format!("({g})^{k}") })
            .collect();
        let den = if den.len() == 1 { den[0].clone() } else { format!("({})", den.join("*")) };
        if self.num.len() > 1 {
            write!(f, "({num})/{den}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Laurent, RatFn};

    fn q() -> Laurent {
        Laurent::monomial(Monomial::q(1))
    }
    fn t() -> Laurent {
        Laurent::monomial(Monomial::t(1))
    }
    fn one_minus(p: Laurent) -> Laurent {
        &Laurent::one() - &p
    }

    #[test]
    fn identities() {
        let a = RatFn::new(q() + t(), one_minus(q())).unwrap();
        assert_eq!(&a + &RatFn::zero(), a);
        assert_eq!(&a * &RatFn::one(), a);
    }

    #[test]
    fn cancellation() {
        let a = RatFn::new(Laurent::monomial(Monomial::new(1, 0)), one_minus(q())).unwrap();
        let b = &a * &RatFn::from_poly(one_minus(q()));
        assert_eq!(b, RatFn::monomial(Monomial::new(1, 0)));
        assert!(b.reduce().denominator_factors().is_empty());
    }

    #[test]
    fn sum_of_geometric_inverses() {
        let a = RatFn::new(Laurent::one(), one_minus(q())).unwrap();
        let b = RatFn::new(Laurent::one(), one_minus(t())).unwrap();
        let want = RatFn::new(&(&Laurent::int(2) - &q()) - &t(), &one_minus(q()) * &one_minus(t())).unwrap();
        assert_eq!(&a + &b, want);
    }

    #[test]
    fn cross_multiplied_equality() {
        let a = RatFn::new(q(), one_minus(q()).pow(2)).unwrap();
        let b = RatFn::new(&q() * &(&Laurent::one() + &q()), &one_minus(q()).pow(2) * &(&Laurent::one() + &q())).unwrap();
        assert_eq!(a, b);
        let c = RatFn::new(q(), one_minus(q())).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(RatFn::one().checked_div(&RatFn::zero()), Err(Error::DivisionByZero));
        assert!(RatFn::new(Laurent::one(), Laurent::zero()).is_err());
    }

    #[test]
    fn substitution() {
        let a = RatFn::new(q(), &Laurent::monomial(Monomial::t(1)).mul_monomial(Monomial::new(0, -1)) * &one_minus(q())).unwrap();
        let want = RatFn::new(Laurent::monomial(Monomial::new(1, 0)), one_minus(q())).unwrap();
        assert_eq!(a.substitute_t_eq_q().unwrap(), want);
        let degenerate = RatFn::new(Laurent::one(), &q() - &t()).unwrap();
        assert!(degenerate.substitute_t_eq_q().is_err());
    }

    #[test]
    fn display_form() {
        let a = RatFn::new(Laurent::monomial(Monomial::new(1, 0)), one_minus(q())).unwrap();
        assert_eq!(a.to_string(), "sqrt(q)/(1-q)");
        let b = &RatFn::from_poly(&Laurent::one() + &q().pow(2)) * &RatFn::one_over(&one_minus(q()), 2);
        assert_eq!(b.to_string(), "(1+q^2)/(1-q)^2");
    }
}
