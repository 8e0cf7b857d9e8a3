//! Open and closed amplitudes on local P1xP1 and on the resolved conifold.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_up_to, Partition};
use crate::ring::{Bidegree, Coeff, KahlerSeries, Monomial, RationalFunction};
use crate::specialize::{ParamOrder, Specializer, Var};
use crate::vertex::{framing_refined, framing_regular, vertex_refined_term, vertex_regular_term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    LocalP1xp1,
    ResolvedConifold,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::LocalP1xp1 => "local_p1xp1",
            Geometry::ResolvedConifold => "resolved_conifold",
        })
    }
}

impl FromStr for Geometry {
    type Err = Error;

    /// Accepts `local_p1xp1` / `local-p1xp1` and `resolved_conifold` /
    /// `resolved-conifold`.
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "local_p1xp1" => Ok(Geometry::LocalP1xp1),
            "resolved_conifold" => Ok(Geometry::ResolvedConifold),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown geometry {s:?}") }),
        }
    }
}

/// What to compute. Colors are in row convention: `[1,1]` is Λ², `[2]` is
/// S²; `gamma = []` gives the unknot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmplitudeSpec {
    pub geometry: Geometry,
    pub alpha: Partition,
    pub gamma: Partition,
    pub refined: bool,
    pub cutoff: u32,
    #[serde(default = "default_q_order")]
    pub q_order: u32,
}

fn default_q_order() -> u32 {
    15
}

impl AmplitudeSpec {
    pub fn local(alpha: Partition, gamma: Partition, refined: bool, cutoff: u32) -> Self {
        AmplitudeSpec { geometry: Geometry::LocalP1xp1, alpha, gamma, refined, cutoff, q_order: default_q_order() }
    }

    pub fn conifold(alpha: Partition, gamma: Partition, refined: bool, cutoff: u32) -> Self {
        AmplitudeSpec { geometry: Geometry::ResolvedConifold, alpha, gamma, refined, cutoff, q_order: default_q_order() }
    }
}

/// Regular vertices, or refined ones with a parameter order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Regular,
    Refined,
}

impl Mode {
    fn of(refined: bool) -> Self {
        if refined {
            Mode::Refined
        } else {
            Mode::Regular
        }
    }

    /// Vertex with the `η = ∅` channel only.
    fn vertex<C: Coeff>(self, sp: &Specializer<C>, l: &Partition, m: &Partition, n: &Partition, order: ParamOrder) -> RationalFunction<C> {
        let e = Partition::empty();
        match self {
            Mode::Regular => vertex_regular_term(sp, l, m, n, &e),
            Mode::Refined => vertex_refined_term(sp, l, m, n, &e, order),
        }
    }

    fn framing<C: Coeff>(self, nu: &Partition, order: ParamOrder) -> RationalFunction<C> {
        match self {
            Mode::Regular => framing_regular(nu),
            Mode::Refined => framing_refined(nu, order),
        }
    }

    /// The monomial a brane color `μ` in the second slot contributes to the
    /// vertex prefactor: `q^(κ(μ)/2)`, or `(q/t)^((‖μ‖²-|μ|)/2) t^(κ(μ)/2)`.
    fn second_slot_monomial(self, mu: &Partition, order: ParamOrder) -> Monomial {
        match self {
            Mode::Regular => Var::Q.pow_half(mu.kappa() as i32),
            Mode::Refined => {
                let (x, y) = order.vars();
                let d = (mu.norm_sq() - mu.size() as i64) as i32;
                y.pow_half(d).mul(x.pow_half(-d)).mul(x.pow_half(mu.kappa() as i32))
            }
        }
    }

    /// The monomial a color `λ` in the first slot contributes:
    /// `(q/t)^(|λ|/2)`, trivial for regular vertices.
    fn first_slot_monomial(self, lambda: &Partition, order: ParamOrder) -> Monomial {
        match self {
            Mode::Regular => Monomial::ONE,
            Mode::Refined => {
                let (x, y) = order.vars();
                let d = lambda.size() as i32;
                y.pow_half(d).mul(x.pow_half(-d))
            }
        }
    }
}

fn sign<C: Coeff>(n: u32) -> RationalFunction<C> {
    if n.is_multiple_of(2) {
        RationalFunction::one()
    } else {
        RationalFunction::int(-1)
    }
}

fn by_size(cutoff: u32) -> Vec<Vec<Partition>> {
    let mut out = vec![Vec::new(); cutoff as usize + 1];
    for p in enumerate_up_to(cutoff) {
        out[p.size() as usize].push(p);
    }
    out
}

fn merge<C: Coeff>(cutoff: u32, parts: Vec<Vec<(Bidegree, RationalFunction<C>)>>) -> KahlerSeries<C> {
    let mut acc: BTreeMap<Bidegree, RationalFunction<C>> = BTreeMap::new();
    for (k, v) in parts.into_iter().flatten() {
        let e = acc.entry(k).or_insert_with(RationalFunction::zero);
        *e = &*e + &v;
    }
    KahlerSeries::from_terms(cutoff, acc.into_iter().map(|(k, v)| (k, v.reduce())))
}

/// The gluing on local P1xP1 with branes of colors `alpha` (on the `Q_f`
/// edge of the first vertex) and `gamma` (on the opposite vertex):
///
/// `Z = Σ_{ν1,ν2} (-Q_b)^(|ν1|+|ν2|) f_{ν1}(t,q) f_{ν2}(q,t) A(ν1,ν2) B(ν1,ν2)`
/// with
/// `A = Σ_λ (-Q_f)^|λ| C_{λ^t α' ν1}(t,q) f_λ(t,q) C_{∅ λ ν2^t}(t,q)`,
/// `B = Σ_β (-Q_f)^|β| C_{γ'^t β ν1^t}(q,t) f_β(q,t) C_{β^t ∅ ν2}(q,t)`,
/// `α' = α^t`, `γ' = γ^t`, each vertex in its `η = ∅` channel and the
/// overall color monomials of the two brane vertices removed.
fn local_amplitude<C: Coeff>(sp: &Specializer<C>, mode: Mode, alpha: &Partition, gamma: &Partition, cutoff: u32) -> KahlerSeries<C> {
    use ParamOrder::{QT, TQ};
    let a1 = alpha.conjugate();
    let g1 = gamma.conjugate();
    let g1t = g1.conjugate();
    let e = Partition::empty();
    let sizes = by_size(cutoff);
    let all = enumerate_up_to(cutoff);
    let pairs: Vec<(&Partition, &Partition)> =
        all.iter().flat_map(|n1| all.iter().map(move |n2| (n1, n2))).filter(|(n1, n2)| n1.size() + n2.size() <= cutoff).collect();
    let brane = mode.second_slot_monomial(&a1, TQ).mul(mode.first_slot_monomial(&g1, QT)).inv();

    let parts: Vec<Vec<(Bidegree, RationalFunction<C>)>> = pairs
        .par_iter()
        .map(|(n1, n2)| {
            let r = n1.size() + n2.size();
            let room = (cutoff - r) as usize;
            let n1t = n1.conjugate();
            let n2t = n2.conjugate();
            let a: Vec<RationalFunction<C>> = (0..=room)
                .map(|s| {
                    let mut acc = RationalFunction::zero();
                    for l in &sizes[s] {
                        let v = &(&mode.vertex(sp, &l.conjugate(), &a1, n1, TQ) * &mode.framing(l, TQ)) * &mode.vertex(sp, &e, l, &n2t, TQ);
                        acc = &acc + &v;
                    }
                    &acc * &sign(s as u32)
                })
                .collect();
            let b: Vec<RationalFunction<C>> = (0..=room)
                .map(|s| {
                    let mut acc = RationalFunction::zero();
                    for bt in &sizes[s] {
                        let v = &(&mode.vertex(sp, &g1t, bt, &n1t, QT) * &mode.framing(bt, QT)) * &mode.vertex(sp, &bt.conjugate(), &e, n2, QT);
                        acc = &acc + &v;
                    }
                    &acc * &sign(s as u32)
                })
                .collect();
            let pre = (&(&mode.framing(n1, TQ) * &mode.framing(n2, QT)) * &sign(r)).mul_monomial(brane);
            let mut out = Vec::new();
            for (sa, va) in a.iter().enumerate() {
                if va.is_zero() {
                    continue;
                }
                let pa = &pre * va;
                for (sb, vb) in b.iter().enumerate().take(room + 1 - sa) {
                    if !vb.is_zero() {
                        out.push(((r, (sa + sb) as u32), &pa * vb));
                    }
                }
            }
            out
        })
        .collect();
    merge(cutoff, parts)
}

/// Regular amplitude `Z_{αγ^t}(Q_b, Q_f, q)` through total degree `cutoff`.
pub fn open_amplitude_regular<C: Coeff>(sp: &Specializer<C>, alpha: &Partition, gamma: &Partition, cutoff: u32) -> KahlerSeries<C> {
    local_amplitude(sp, Mode::Regular, alpha, gamma, cutoff)
}

/// Refined amplitude `Z_{αγ^t}(Q_b, Q_f, t, q)` through total degree `cutoff`.
pub fn open_amplitude_refined<C: Coeff>(sp: &Specializer<C>, alpha: &Partition, gamma: &Partition, cutoff: u32) -> KahlerSeries<C> {
    local_amplitude(sp, Mode::Refined, alpha, gamma, cutoff)
}

/// `Z_{∅∅}`.
pub fn closed_amplitude<C: Coeff>(sp: &Specializer<C>, refined: bool, cutoff: u32) -> KahlerSeries<C> {
    let e = Partition::empty();
    local_amplitude(sp, Mode::of(refined), &e, &e, cutoff)
}

/// `Z / Z_{∅∅}`.
pub fn normalize<C: Coeff>(open: &KahlerSeries<C>, closed: &KahlerSeries<C>) -> Result<KahlerSeries<C>> {
    KahlerSeries::series_divide(open, closed)
}

/// Two vertices glued along one edge of weight `Q`, one brane on an external
/// leg of each:
/// `Σ_ν (-Q)^|ν| C_{∅ α' ν}(t,q) C_{∅ γ' ν^t}(q,t)` without framing factors
/// and with the color monomials removed. The `Q` power is stored as `r`
/// with `s = 0`.
pub fn resolved_conifold_amplitude<C: Coeff>(
    sp: &Specializer<C>,
    alpha: &Partition,
    gamma: &Partition,
    refined: bool,
    cutoff: u32,
) -> KahlerSeries<C> {
    use ParamOrder::{QT, TQ};
    let mode = Mode::of(refined);
    let a1 = alpha.conjugate();
    let g1 = gamma.conjugate();
    let e = Partition::empty();
    let brane = mode.second_slot_monomial(&a1, TQ).mul(mode.second_slot_monomial(&g1, QT)).inv();
    let all = enumerate_up_to(cutoff);
    let parts: Vec<Vec<(Bidegree, RationalFunction<C>)>> = all
        .par_iter()
        .map(|nu| {
            let v = &mode.vertex(sp, &e, &a1, nu, TQ) * &mode.vertex(sp, &e, &g1, &nu.conjugate(), QT);
            vec![((nu.size(), 0), (&v * &sign(nu.size())).mul_monomial(brane))]
        })
        .collect();
    merge(cutoff, parts)
}

/// The unnormalized amplitude described by `spec`.
pub fn compute<C: Coeff>(sp: &Specializer<C>, spec: &AmplitudeSpec) -> KahlerSeries<C> {
    match spec.geometry {
        Geometry::LocalP1xp1 => local_amplitude(sp, Mode::of(spec.refined), &spec.alpha, &spec.gamma, spec.cutoff),
        Geometry::ResolvedConifold => resolved_conifold_amplitude(sp, &spec.alpha, &spec.gamma, spec.refined, spec.cutoff),
    }
}

/// `compute(spec)` divided by the closed amplitude of the same geometry.
pub fn compute_normalized<C: Coeff>(sp: &Specializer<C>, spec: &AmplitudeSpec) -> Result<KahlerSeries<C>> {
    let open = compute(sp, spec);
    let e = Partition::empty();
    let closed = compute(sp, &AmplitudeSpec { alpha: e.clone(), gamma: e, ..spec.clone() });
    normalize(&open, &closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::expr::parse_rational;
    use crate::{RatFn, Rational, Series};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rf(s: &str) -> RatFn {
        parse_rational::<Rational>(s).unwrap()
    }

    fn zhat(alpha: &[u32], gamma: &[u32], refined: bool, cutoff: u32) -> Series {
        let sp = Specializer::new();
        compute_normalized(&sp, &AmplitudeSpec::local(p(alpha), p(gamma), refined, cutoff)).unwrap()
    }

    #[test]
    fn fundamental_unknot_regular() {
        let z = zhat(&[1], &[], false, 3);
        let v = rf("sqrt(q)/(1-q)");
        assert_eq!(z.coeff((0, 0)).unwrap(), v);
        assert_eq!(z.coeff((1, 0)).unwrap(), v);
        assert_eq!(z.coeff((1, 1)).unwrap(), &v * &RatFn::int(2));
        assert_eq!(z.coeff((2, 1)).unwrap(), &v * &RatFn::int(4));
        assert_eq!(z.coeff((1, 2)).unwrap(), &v * &RatFn::int(3));
        assert_eq!(z.coeff((2, 0)).unwrap(), RatFn::zero());
        assert_eq!(z.coeff((0, 1)).unwrap(), RatFn::zero());
    }

    #[test]
    fn fundamental_unknot_refined() {
        let z = zhat(&[1], &[], true, 2);
        assert_eq!(z.coeff((1, 0)).unwrap(), rf("q/(sqrt(t)*(1-q))"));
        assert_eq!(z.coeff((1, 1)).unwrap(), rf("(q+t)/(sqrt(t)*(1-q))"));
    }

    #[test]
    fn closed_leading_terms() {
        let sp = Specializer::<Rational>::new();
        let z = closed_amplitude(&sp, true, 1);
        assert_eq!(z.coeff((0, 0)).unwrap(), RatFn::one());
        assert_eq!(z.coeff((1, 0)).unwrap(), rf("2*sqrt(t*q)/((1-t)*(1-q))"));
        assert_eq!(z.coeff((0, 1)).unwrap(), rf("(t+q)/((1-t)*(1-q))"));
    }

    #[test]
    fn geometry_names() {
        assert_eq!("local-p1xp1".parse::<Geometry>().unwrap(), Geometry::LocalP1xp1);
        assert_eq!(Geometry::ResolvedConifold.to_string(), "resolved_conifold");
        assert!("p2".parse::<Geometry>().is_err());
    }
}
