use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::scalar::Coeff;

/// `q^(q/2) t^(t/2)`: exponents are stored doubled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub q: i32,
    pub t: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, t: 0 };

    pub const fn new(q: i32, t: i32) -> Self {
        Monomial { q, t }
    }

    /// `q^a`, `a` an ordinary (undoubled) exponent.
    pub const fn q(a: i32) -> Self {
        Monomial { q: 2 * a, t: 0 }
    }

    pub const fn t(a: i32) -> Self {
        Monomial { q: 0, t: 2 * a }
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    pub fn inv(self) -> Monomial {
        Monomial::new(-self.q, -self.t)
    }

    pub fn pow(self, k: i32) -> Monomial {
        Monomial::new(self.q * k, self.t * k)
    }

    pub fn swap_tq(self) -> Monomial {
        Monomial::new(self.t, self.q)
    }

    pub fn t_eq_q(self) -> Monomial {
        Monomial::new(self.q + self.t, 0)
    }

    pub fn min(self, o: Monomial) -> Monomial {
        Monomial::new(self.q.min(o.q), self.t.min(o.t))
    }
}

fn var_power(name: &str, doubled: i32) -> Option<String> {
    match doubled {
        0 => None,
        1 => Some(format!("sqrt({name})")),
        2 => Some(name.to_string()),
        d if d % 2 == 0 && d > 0 => Some(format!("{name}^{}", d / 2)),
        d if d % 2 == 0 => Some(format!("{name}^({})", d / 2)),
        d => Some(format!("{name}^({d}/2)")),
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(self.q + o.q, self.t + o.t)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [var_power("q", self.q), var_power("t", self.t)].into_iter().flatten().collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Finite sum of coefficient-weighted monomials. No zero coefficient is
/// ever stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, C::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_term().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    /// The single term, if there is exactly one.
    pub fn as_term(&self) -> Option<(Monomial, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    /// Componentwise minimum exponent; `ONE` for the zero polynomial.
    pub fn min_corner(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(&first) => it.fold(first, |acc, &m| acc.min(m)),
        }
    }

    pub fn min_q(&self) -> Option<i32> {
        self.terms.keys().next().map(|m| m.q)
    }

    pub fn max_q(&self) -> Option<i32> {
        self.terms.keys().next_back().map(|m| m.q)
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|m| m.t == 0)
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        if m.is_one() {
            return self.clone();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())).collect() }
    }

    pub fn mul_term(&self, m: Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone() * c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_monomials(&self, f: impl Fn(Monomial) -> Monomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    pub fn substitute_t_eq_q(&self) -> Self {
        self.map_monomials(Monomial::t_eq_q)
    }

    pub fn swap_tq(&self) -> Self {
        self.map_monomials(Monomial::swap_tq)
    }

    /// Terms with doubled q-exponent at most `max_q`.
    pub fn truncate_q(&self, max_q: i32) -> Self {
        LaurentPoly { terms: self.terms.range(..Monomial::new(max_q + 1, i32::MIN)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// The t-polynomial multiplying `q^(qe/2)`, returned with q-exponent 0.
    pub fn q_slice(&self, qe: i32) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .range(Monomial::new(qe, i32::MIN)..=Monomial::new(qe, i32::MAX))
                .map(|(m, c)| (Monomial::new(0, m.t), c.clone()))
                .collect(),
        }
    }

    /// Product keeping only doubled q-exponents up to `max_q`.
    pub fn mul_truncated(&self, other: &Self, max_q: i32) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.q + mb.q > max_q {
                    break;
                }
                out.add_term(ma.mul(*mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Exact quotient by `1 - x^v`, if it exists. Uses the fact that the
    /// quotient ring by `1 - x^v` is the group ring of `Z^2 / Zv`.
    pub fn div_one_minus(&self, v: Monomial) -> Option<Self> {
        assert!(!v.is_one(), "1 - x^0 is zero");
        let step = |m: Monomial| -> (Monomial, i32) {
            let k = if v.q != 0 { m.q.div_euclid(v.q) } else { m.t.div_euclid(v.t) };
            (Monomial::new(m.q - k * v.q, m.t - k * v.t), k)
        };
        let mut lines: BTreeMap<Monomial, BTreeMap<i32, C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rep, k) = step(*m);
            lines.entry(rep).or_default().insert(k, c.clone());
        }
        let mut out = Self::zero();
        for (rep, line) in lines {
            let kmin = *line.keys().next().unwrap();
            let kmax = *line.keys().next_back().unwrap();
            let mut acc = C::zero();
            for k in kmin..=kmax {
                if let Some(c) = line.get(&k) {
                    acc = acc + c.clone();
                }
                if k == kmax {
                    if !acc.is_zero() {
                        return None;
                    }
                } else if !acc.is_zero() {
                    out.terms.insert(Monomial::new(rep.q + k * v.q, rep.t + k * v.t), acc.clone());
                }
            }
        }
        Some(out)
    }

    /// If `self = c·x^u·(1 - x^v)`, returns `(c, u, v)`.
    pub fn as_binomial(&self) -> Option<(C, Monomial, Monomial)> {
        if self.terms.len() != 2 {
            return None;
        }
        let mut it = self.terms.iter();
        let (mu, cu) = it.next().unwrap();
        let (mw, cw) = it.next().unwrap();
        if cu.clone() + cw.clone() != C::zero() {
            return None;
        }
        Some((cu.clone(), *mu, mw.mul(mu.inv())))
    }

    /// Exact quotient `self / d` in the Laurent ring, or `None` when `d`
    /// does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((m, c)) = d.as_term() {
            return Some(self.mul_term(m.inv(), &(C::one() / c.clone())));
        }
        if let Some((c, u, v)) = d.as_binomial() {
            let q = self.div_one_minus(v)?;
            return Some(q.mul_term(u.inv(), &(C::one() / c)));
        }
        // Long division in the polynomial ring after clearing monomial
        // content, with lex order on (q, t).
        let sn = self.min_corner();
        let sd = d.min_corner();
        let num = self.mul_monomial(sn.inv());
        let den = d.mul_monomial(sd.inv());
        let (&dl, dc) = den.terms.iter().next_back().unwrap();
        let dc_inv = C::one() / dc.clone();
        let mut rem = num;
        let mut quot = Self::zero();
        while let Some((&rl, rc)) = rem.terms.iter().next_back() {
            let qm = Monomial::new(rl.q - dl.q, rl.t - dl.t);
            if qm.q < 0 || qm.t < 0 {
                return None;
            }
            let qc = rc.clone() * dc_inv.clone();
            for (m, c) in &den.terms {
                rem.add_term(m.mul(qm), -(c.clone() * qc.clone()));
            }
            quot.add_term(qm, qc);
        }
        Some(quot.mul_monomial(sn.mul(sd.inv())))
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let coeff = if abs.is_integer() { abs.to_string() } else { format!("({abs})") };
            match (m.is_one(), abs.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{coeff}*{m}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<C: Coeff> SubAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        if let Some((m, c)) = rhs.as_term() {
            return self.mul_term(m, c);
        }
        if let Some((m, c)) = self.as_term() {
            return rhs.mul_term(m, c);
        }
        let mut acc: std::collections::HashMap<Monomial, C> = std::collections::HashMap::with_capacity(self.len() + rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca.clone() * cb.clone();
                acc.entry(ma.mul(*mb))
                    .and_modify(|v| *v = v.clone() + prod.clone())
                    .or_insert(prod);
            }
        }
        LaurentPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Coeff> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> { (&self).$m(&rhs) }
        }
        impl<C: Coeff> $tr<&LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Laurent;

    fn q() -> Laurent {
        Laurent::monomial(Monomial::q(1))
    }
    fn t() -> Laurent {
        Laurent::monomial(Monomial::t(1))
    }

    #[test]
    fn display() {
        let p = &Laurent::one() - &q();
        assert_eq!(p.to_string(), "1-q");
        assert_eq!(Laurent::monomial(Monomial::new(1, 0)).to_string(), "sqrt(q)");
        assert_eq!(Laurent::monomial(Monomial::new(3, -2)).to_string(), "q^(3/2)*t^(-1)");
        assert_eq!(Laurent::zero().to_string(), "0");
    }

    #[test]
    fn binomial_division() {
        let one_minus_q2 = &Laurent::one() - &q().pow(2);
        let p = &(&q() + &t()) * &one_minus_q2;
        assert_eq!(p.exact_div(&one_minus_q2).unwrap(), &q() + &t());
        let one_minus_q = &Laurent::one() - &q();
        assert_eq!(one_minus_q2.exact_div(&one_minus_q).unwrap(), &Laurent::one() + &q());
        assert!(q().exact_div(&one_minus_q).is_none());
    }

    #[test]
    fn general_division() {
        let a = &(&q() + &t()) + &Laurent::int(3);
        let b = &(&q().pow(2) - &t()) + &q();
        let p = &a * &b;
        assert_eq!(p.exact_div(&a).unwrap(), b);
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert!((&p + &Laurent::one()).exact_div(&a).is_none());
    }
}
