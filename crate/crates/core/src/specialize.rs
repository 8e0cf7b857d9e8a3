//! Schur, skew Schur and Macdonald principal specializations.

use std::collections::HashMap;
use std::sync::RwLock;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::{Coeff, LaurentPoly, Monomial, RationalFunction};

/// One of the two formal variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Q,
    T,
}

impl Var {
    /// `v^(doubled/2)`.
    pub fn pow_half(self, doubled: i32) -> Monomial {
        match self {
            Var::Q => Monomial::new(doubled, 0),
            Var::T => Monomial::new(0, doubled),
        }
    }

    pub fn other(self) -> Var {
        match self {
            Var::Q => Var::T,
            Var::T => Var::Q,
        }
    }

    fn exponent(self, m: Monomial) -> i32 {
        match self {
            Var::Q => m.q,
            Var::T => m.t,
        }
    }
}

/// Which argument comes first in a refined quantity: `(t,q)` or `(q,t)`.
/// The `(q,t)` variant of any formula is the `(t,q)` one with `t ↔ q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamOrder {
    TQ,
    QT,
}

impl ParamOrder {
    /// `(x, y)` such that the formula written in `(t, q)` is evaluated at
    /// `t = x`, `q = y`.
    pub fn vars(self) -> (Var, Var) {
        match self {
            ParamOrder::TQ => (Var::T, Var::Q),
            ParamOrder::QT => (Var::Q, Var::T),
        }
    }

    pub fn swapped(self) -> ParamOrder {
        match self {
            ParamOrder::TQ => ParamOrder::QT,
            ParamOrder::QT => ParamOrder::TQ,
        }
    }
}

/// A finite prefix of monomials followed by an optional geometric tail
/// `start, start·ratio, start·ratio², …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    prefix: Vec<Monomial>,
    tail: Option<(Monomial, Monomial)>,
}

impl Alphabet {
    /// Prefix plus tail. The ratio must be a positive power of `q^(1/2)` or
    /// of `t^(1/2)`.
    pub fn new(prefix: Vec<Monomial>, start: Monomial, ratio: Monomial) -> Result<Self> {
        let pure = (ratio.q > 0 && ratio.t == 0) || (ratio.q == 0 && ratio.t > 0);
        if !pure {
            return Err(Error::Parse { pos: 0, msg: format!("tail ratio {ratio} is not a positive power of one variable") });
        }
        Ok(Alphabet { prefix, tail: Some((start, ratio)) })
    }

    pub fn finite(prefix: Vec<Monomial>) -> Self {
        Alphabet { prefix, tail: None }
    }

    /// `x^(-ρ) y^(-ν)`: letters `x^(i-1/2) y^(-ν_i)` for `i = 1, 2, …`. The
    /// first `ℓ(ν)` letters form the prefix.
    pub fn principal(x: Var, y: Var, nu: &Partition) -> Self {
        let prefix = (1..=nu.len() as i32).map(|i| x.pow_half(2 * i - 1).mul(y.pow_half(-2 * nu.part(i as usize - 1) as i32))).collect();
        let l = nu.len() as i32;
        Alphabet { prefix, tail: Some((x.pow_half(2 * l + 1), x.pow_half(2))) }
    }

    /// `q^(-ρ-ν)`.
    pub fn q_rho(nu: &Partition) -> Self {
        Self::principal(Var::Q, Var::Q, nu)
    }

    /// Letters of `self` followed by those of `other`; `self` must be
    /// finite.
    pub fn concat(&self, other: &Alphabet) -> Self {
        assert!(self.tail.is_none(), "only a finite alphabet can precede another");
        let mut prefix = self.prefix.clone();
        prefix.extend_from_slice(&other.prefix);
        Alphabet { prefix, tail: other.tail }
    }

    pub fn prefix(&self) -> &[Monomial] {
        &self.prefix
    }

    pub fn tail(&self) -> Option<(Monomial, Monomial)> {
        self.tail
    }

    /// The `i`-th letter, 0-based.
    pub fn letter(&self, i: usize) -> Option<Monomial> {
        if i < self.prefix.len() {
            return Some(self.prefix[i]);
        }
        let (start, ratio) = self.tail?;
        Some(start.mul(ratio.pow((i - self.prefix.len()) as i32)))
    }

    pub fn swap_tq(&self) -> Self {
        Alphabet {
            prefix: self.prefix.iter().map(|m| m.swap_tq()).collect(),
            tail: self.tail.map(|(s, r)| (s.swap_tq(), r.swap_tq())),
        }
    }
}

/// `c^k / Π_{i=1..k} (1 - r^i)`, the complete symmetric function of a
/// geometric progression.
fn tail_h<C: Coeff>(k: u32, start: Monomial, ratio: Monomial) -> RationalFunction<C> {
    let mut v = RationalFunction::monomial(start.pow(k as i32));
    for i in 1..=k as i32 {
        v = &v * &RationalFunction::one_over(&(&LaurentPoly::one() - &LaurentPoly::monomial(ratio.pow(i))), 1);
    }
    v
}

type SkewKey = (Partition, Partition, Alphabet);

/// Memoizing evaluator for `h_k` and skew Schur functions at alphabets.
/// Safe to share between threads; concurrent inserts of the same key store
/// equal values.
pub struct Specializer<C> {
    h: RwLock<HashMap<(u32, Alphabet), RationalFunction<C>>>,
    skew: RwLock<HashMap<SkewKey, RationalFunction<C>>>,
}

impl<C: Coeff> Default for Specializer<C> {
    fn default() -> Self {
        Specializer { h: RwLock::new(HashMap::new()), skew: RwLock::new(HashMap::new()) }
    }
}

impl<C: Coeff> Specializer<C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// `h_k(A)`: the prefix by generating-function convolution, the tail in
    /// closed form.
    pub fn complete_homogeneous(&self, k: u32, a: &Alphabet) -> RationalFunction<C> {
        if k == 0 {
            return RationalFunction::one();
        }
        let key = (k, a.clone());
        if let Some(v) = self.h.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = self.compute_h(k, a);
        self.h.write().unwrap().insert(key, v.clone());
        v
    }

    fn compute_h(&self, k: u32, a: &Alphabet) -> RationalFunction<C> {
        let n = k as usize;
        // coefficients of z^0..z^k in Π_{x ∈ prefix} 1/(1 - x z)
        let mut hp = vec![LaurentPoly::<C>::zero(); n + 1];
        hp[0] = LaurentPoly::one();
        for x in &a.prefix {
            for j in 1..=n {
                let shifted = hp[j - 1].mul_monomial(*x);
                hp[j] += &shifted;
            }
        }
        let Some((start, ratio)) = a.tail else {
            return RationalFunction::from_poly(hp[n].clone());
        };
        let mut acc = RationalFunction::zero();
        for j in 0..=k {
            let p = &hp[n - j as usize];
            if p.is_zero() {
                continue;
            }
            acc = &acc + &(&RationalFunction::from_poly(p.clone()) * &tail_h(j, start, ratio));
        }
        acc
    }

    /// `s_{λ/η}(A)` by the Jacobi–Trudi determinant `det h_{λ_i-η_j-i+j}`;
    /// zero unless `η ⊆ λ`.
    pub fn skew_schur(&self, lambda: &Partition, eta: &Partition, a: &Alphabet) -> RationalFunction<C> {
        if !lambda.contains(eta) {
            return RationalFunction::zero();
        }
        if lambda == eta {
            return RationalFunction::one();
        }
        let key = (lambda.clone(), eta.clone(), a.clone());
        if let Some(v) = self.skew.read().unwrap().get(&key) {
            return v.clone();
        }
        let n = lambda.len();
        let entry = |i: usize, j: usize| -> Option<u32> {
            let d = lambda.part(i) as i64 - eta.part(j) as i64 - i as i64 + j as i64;
            (d >= 0).then_some(d as u32)
        };
        let mut memo: HashMap<u32, RationalFunction<C>> = HashMap::new();
        let v = self.minor(0, 0, n, &entry, a, &mut memo).reduce();
        self.skew.write().unwrap().insert(key, v.clone());
        v
    }

    pub fn schur(&self, lambda: &Partition, a: &Alphabet) -> RationalFunction<C> {
        self.skew_schur(lambda, &Partition::empty(), a)
    }

    /// Laplace expansion along row `row` over the columns not in `used`.
    fn minor(
        &self,
        row: usize,
        used: u32,
        n: usize,
        entry: &dyn Fn(usize, usize) -> Option<u32>,
        a: &Alphabet,
        memo: &mut HashMap<u32, RationalFunction<C>>,
    ) -> RationalFunction<C> {
        if row == n {
            return RationalFunction::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = RationalFunction::zero();
        let mut free_before = 0;
        for j in 0..n {
            if used & (1 << j) != 0 {
                continue;
            }
            if let Some(k) = entry(row, j) {
                let rest = self.minor(row + 1, used | (1 << j), n, entry, a, memo);
                if !rest.is_zero() {
                    let term = &self.complete_homogeneous(k, a) * &rest;
                    acc = if free_before % 2 == 0 { &acc + &term } else { &acc - &term };
                }
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
}

/// `Z̃_ν(x,y) = Π_cells (1 - x^(leg+1) y^arm)^(-1)` with row-convention arm
/// and leg; `ParamOrder::TQ` gives `Z̃_ν(t,q)`.
pub fn tilde_z<C: Coeff>(nu: &Partition, order: ParamOrder) -> RationalFunction<C> {
    let (x, y) = order.vars();
    let mut factors: Vec<LaurentPoly<C>> = Vec::new();
    for s in nu.cell_stats().values() {
        let m = x.pow_half(2 * (s.leg as i32 + 1)).mul(y.pow_half(2 * s.arm as i32));
        factors.push(&LaurentPoly::one() - &LaurentPoly::monomial(m));
    }
    factors.iter().fold(RationalFunction::one(), |acc, f| &acc * &RationalFunction::one_over(f, 1))
}

/// `P_{ν^t}(t^(-ρ); q, t) = t^(‖ν‖²/2) Z̃_ν(t,q)` for `ParamOrder::TQ`; the
/// `QT` order swaps `t ↔ q`.
pub fn macdonald_p_at_rho<C: Coeff>(nu: &Partition, order: ParamOrder) -> RationalFunction<C> {
    let (x, _) = order.vars();
    tilde_z::<C>(nu, order).mul_monomial(x.pow_half(nu.norm_sq() as i32))
}

/// Brute-force `s_{λ/η}(A)` as a sum over semistandard tableaux, keeping
/// terms whose degree in the grading variable is at most `order`.
///
/// The grading variable is the one the tail ratio is a power of (`q` for a
/// finite alphabet). Letters are used until no further letter can enter a
/// tableau of degree `≤ order`; `max_letters` bounds that count and the call
/// fails when more would be needed.
pub fn schur_tableau_oracle<C: Coeff>(
    lambda: &Partition,
    eta: &Partition,
    a: &Alphabet,
    order: u32,
    max_letters: usize,
) -> Result<LaurentPoly<C>> {
    if !lambda.contains(eta) {
        return Ok(LaurentPoly::zero());
    }
    let grading = match a.tail {
        Some((_, r)) if r.t > 0 => Var::T,
        _ => Var::Q,
    };
    let bound = 2 * order as i32;
    let cells: Vec<(usize, usize)> =
        (0..lambda.len()).flat_map(|i| (eta.part(i) as usize..lambda.part(i) as usize).map(move |j| (i, j))).collect();
    let deg = |m: Monomial| grading.exponent(m);
    let letters: Vec<Monomial> = match a.tail {
        None => a.prefix.clone(),
        Some((start, _)) => {
            let g_min = a.prefix.iter().map(|m| deg(*m)).chain([deg(start)]).min().unwrap();
            let others = cells.len().saturating_sub(1) as i32;
            // the tail increases, so letter `count` and all later ones are
            // excluded once it alone overshoots the bound
            let mut count = a.prefix.len();
            while deg(a.letter(count).unwrap()) + others * g_min <= bound {
                count += 1;
                if count > max_letters {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("tableau oracle needs more than {max_letters} letters for degree {order}"),
                    });
                }
            }
            (0..count).map(|i| a.letter(i).unwrap()).collect()
        }
    };
    let g_min = letters.iter().map(|m| deg(*m)).min().unwrap_or(0);
    let mut out = LaurentPoly::zero();
    let mut fill = vec![vec![0usize; lambda.part(0) as usize]; lambda.len()];
    let mut search = Tableaux { cells: &cells, eta, letters: &letters, g_min, grading, bound };
    search.run(0, Monomial::ONE, &mut fill, &mut out);
    Ok(out)
}

struct Tableaux<'a> {
    cells: &'a [(usize, usize)],
    eta: &'a Partition,
    letters: &'a [Monomial],
    g_min: i32,
    grading: Var,
    bound: i32,
}

impl Tableaux<'_> {
    /// Fills cells in row-major order: rows weakly increase, columns
    /// strictly increase.
    fn run<C: Coeff>(&mut self, idx: usize, weight: Monomial, fill: &mut [Vec<usize>], out: &mut LaurentPoly<C>) {
        if idx == self.cells.len() {
            out.add_term(weight, C::one());
            return;
        }
        let (i, j) = self.cells[idx];
        let mut low = 0;
        if j as u32 > self.eta.part(i) {
            low = fill[i][j - 1];
        }
        if i > 0 && j as u32 >= self.eta.part(i - 1) {
            low = low.max(fill[i - 1][j] + 1);
        }
        let remaining = (self.cells.len() - idx - 1) as i32;
        for x in low..self.letters.len() {
            let w = weight.mul(self.letters[x]);
            if self.grading.exponent(w) + remaining * self.g_min > self.bound {
                continue;
            }
            fill[i][j] = x;
            self.run(idx + 1, w, fill, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::expr::parse_rational;
    use crate::{Partition, RatFn, Rational};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rf(s: &str) -> RatFn {
        parse_rational::<Rational>(s).unwrap()
    }

    #[test]
    fn principal_alphabet_letters() {
        let a = Alphabet::q_rho(&p(&[2, 1]));
        let got: Vec<_> = (0..4).map(|i| a.letter(i).unwrap()).collect();
        assert_eq!(got, vec![Monomial::new(-3, 0), Monomial::new(1, 0), Monomial::new(5, 0), Monomial::new(7, 0)]);
        let b = Alphabet::principal(Var::T, Var::Q, &p(&[1]));
        assert_eq!(b.letter(0).unwrap(), Monomial::new(-2, 1));
        assert_eq!(b.letter(1).unwrap(), Monomial::new(0, 3));
    }

    #[test]
    fn h_values() {
        let sp = Specializer::<Rational>::new();
        let a = Alphabet::q_rho(&Partition::empty());
        assert_eq!(sp.complete_homogeneous(0, &a), RatFn::one());
        assert_eq!(sp.complete_homogeneous(1, &a), rf("sqrt(q)/(1-q)"));
        assert_eq!(sp.complete_homogeneous(2, &a), rf("q/((1-q)*(1-q^2))"));
    }

    #[test]
    fn schur_values() {
        let sp = Specializer::<Rational>::new();
        let a = Alphabet::q_rho(&Partition::empty());
        assert_eq!(sp.schur(&Partition::empty(), &a), RatFn::one());
        assert_eq!(sp.schur(&p(&[1]), &a), rf("sqrt(q)/(1-q)"));
        // the two-box column
        assert_eq!(sp.schur(&p(&[1, 1]), &a), rf("q^2/((1-q)*(1-q^2))"));
        assert_eq!(sp.schur(&p(&[2]), &a), rf("q/((1-q)*(1-q^2))"));
        assert_eq!(sp.skew_schur(&p(&[1]), &p(&[2]), &a), RatFn::zero());
        assert_eq!(sp.skew_schur(&p(&[2, 1]), &p(&[2, 1]), &a), RatFn::one());
    }

    #[test]
    fn tilde_z_values() {
        assert_eq!(tilde_z::<Rational>(&Partition::empty(), ParamOrder::TQ), RatFn::one());
        assert_eq!(tilde_z::<Rational>(&p(&[1]), ParamOrder::TQ), rf("1/(1-t)"));
        assert_eq!(tilde_z::<Rational>(&p(&[2]), ParamOrder::TQ), rf("1/((1-t)*(1-t*q))"));
        assert_eq!(tilde_z::<Rational>(&p(&[1, 1]), ParamOrder::TQ), rf("1/((1-t)*(1-t^2))"));
        assert_eq!(macdonald_p_at_rho::<Rational>(&p(&[1]), ParamOrder::TQ), rf("sqrt(t)/(1-t)"));
        assert_eq!(macdonald_p_at_rho::<Rational>(&p(&[1]), ParamOrder::QT), rf("sqrt(q)/(1-q)"));
    }

    #[test]
    fn oracle_single_box() {
        let a = Alphabet::q_rho(&Partition::empty());
        let got = schur_tableau_oracle::<Rational>(&p(&[1]), &Partition::empty(), &a, 5, 100).unwrap();
        let want: LaurentPoly<Rational> = (0..5).map(|k| LaurentPoly::monomial(Monomial::new(2 * k + 1, 0))).fold(LaurentPoly::zero(), |a, b| &a + &b);
        assert_eq!(got, want);
    }

    #[test]
    fn oracle_letter_limit() {
        let a = Alphabet::q_rho(&Partition::empty());
        assert!(schur_tableau_oracle::<Rational>(&p(&[1]), &Partition::empty(), &a, 50, 10).is_err());
    }
}
