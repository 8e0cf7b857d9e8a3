//! Regular and refined topological vertices and their framing factors.

use std::ops::Mul;

use crate::partition::Partition;
use crate::ring::{Coeff, Monomial, RationalFunction};
use crate::specialize::{macdonald_p_at_rho, Alphabet, ParamOrder, Specializer, Var};

/// Legs `(λ, μ, ν)` of a vertex, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexArgs {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

impl VertexArgs {
    pub fn new(lambda: &Partition, mu: &Partition, nu: &Partition) -> Self {
        VertexArgs { lambda: lambda.clone(), mu: mu.clone(), nu: nu.clone() }
    }
}

fn sign<C: Coeff>(n: u32) -> RationalFunction<C> {
    if n.is_multiple_of(2) {
        RationalFunction::one()
    } else {
        RationalFunction::int(-1)
    }
}

/// Partitions contained in both `a` and `b`.
fn common_subdiagrams(a: &Partition, b: &Partition) -> Vec<Partition> {
    a.subdiagrams().into_iter().filter(|e| b.contains(e)).collect()
}

/// `C_{λμν}(q) = q^(κ(μ)/2) s_{ν^t}(q^(-ρ)) Σ_η s_{λ^t/η}(q^(-ρ-ν)) s_{μ/η}(q^(-ρ-ν^t))`.
pub fn vertex_regular<C: Coeff>(sp: &Specializer<C>, lambda: &Partition, mu: &Partition, nu: &Partition) -> RationalFunction<C> {
    let lt = lambda.conjugate();
    let mut acc = RationalFunction::zero();
    for eta in common_subdiagrams(&lt, mu) {
        acc = &acc + &vertex_regular_term(sp, lambda, mu, nu, &eta);
    }
    acc.reduce()
}

/// The single `η` term of [`vertex_regular`], prefactor included.
pub fn vertex_regular_term<C: Coeff>(
    sp: &Specializer<C>,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    eta: &Partition,
) -> RationalFunction<C> {
    let nt = nu.conjugate();
    let a = sp.skew_schur(&lambda.conjugate(), eta, &Alphabet::q_rho(nu));
    if a.is_zero() {
        return a;
    }
    let b = sp.skew_schur(mu, eta, &Alphabet::q_rho(&nt));
    let pre = sp.schur(&nt, &Alphabet::q_rho(&Partition::empty())).mul_monomial(Var::Q.pow_half(mu.kappa() as i32));
    &(&pre * &a) * &b
}

/// `f_ν = (-1)^|ν| q^(-κ(ν)/2)`.
pub fn framing_regular<C: Coeff>(nu: &Partition) -> RationalFunction<C> {
    sign::<C>(nu.size()).mul_monomial(Var::Q.pow_half(-nu.kappa() as i32))
}

/// The refined vertex
/// `(q/t)^((‖μ‖²+‖ν‖²)/2) t^(κ(μ)/2) P_{ν^t}(t^(-ρ);q,t)
///  Σ_η (q/t)^((|η|+|λ|-|μ|)/2) s_{λ^t/η}(t^(-ρ) q^(-ν)) s_{μ/η}(q^(-ρ) t^(-ν^t))`;
/// `ParamOrder::QT` swaps `t ↔ q` throughout.
pub fn vertex_refined<C: Coeff>(
    sp: &Specializer<C>,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    order: ParamOrder,
) -> RationalFunction<C> {
    let lt = lambda.conjugate();
    let mut acc = RationalFunction::zero();
    for eta in common_subdiagrams(&lt, mu) {
        acc = &acc + &vertex_refined_term(sp, lambda, mu, nu, &eta, order);
    }
    acc.reduce()
}

/// `(y/x)^(d/2)` for the order's `(x, y)`, i.e. `(q/t)^(d/2)` in `(t,q)` order.
fn ratio_pow(order: ParamOrder, doubled: i64) -> Monomial {
    let (x, y) = order.vars();
    y.pow_half(doubled as i32).mul(x.pow_half(-doubled as i32))
}

/// The single `η` term of [`vertex_refined`], prefactor included.
pub fn vertex_refined_term<C: Coeff>(
    sp: &Specializer<C>,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    eta: &Partition,
    order: ParamOrder,
) -> RationalFunction<C> {
    let (x, y) = order.vars();
    let nt = nu.conjugate();
    let a = sp.skew_schur(&lambda.conjugate(), eta, &Alphabet::principal(x, y, nu));
    if a.is_zero() {
        return a;
    }
    let b = sp.skew_schur(mu, eta, &Alphabet::principal(y, x, &nt));
    let m = ratio_pow(order, mu.norm_sq() + nu.norm_sq())
        .mul(x.pow_half(mu.kappa() as i32))
        .mul(ratio_pow(order, eta.size() as i64 + lambda.size() as i64 - mu.size() as i64));
    let pre = macdonald_p_at_rho::<C>(nu, order).mul_monomial(m);
    &(&pre * &a) * &b
}

/// `f_ν(t,q) = (-1)^|ν| (t/q)^((‖ν^t‖²-|ν|)/2) q^(-κ(ν)/2)`; `ParamOrder::QT`
/// gives `f_ν(q,t)`.
pub fn framing_refined<C: Coeff>(nu: &Partition, order: ParamOrder) -> RationalFunction<C> {
    let (_, y) = order.vars();
    let e = nu.conjugate().norm_sq() - nu.size() as i64;
    let m = ratio_pow(order, -e).mul(y.pow_half(-nu.kappa() as i32));
    sign::<C>(nu.size()).mul_monomial(m)
}

/// `f_{ν1}(t,q) f_{ν2}(q,t)`.
pub fn framing_refined_pair<C: Coeff>(nu1: &Partition, nu2: &Partition) -> RationalFunction<C> {
    &framing_refined::<C>(nu1, ParamOrder::TQ) * &framing_refined::<C>(nu2, ParamOrder::QT)
}
