//! Individual checks. Each returns a [`CheckReport`]; finite-order checks
//! state the order they were run through.

use super::fixture::{Expected, Fixture};
use super::CheckReport;
use crate::partition::Partition;
use crate::ring::{graded_bidegrees, Coeff, KahlerSeries, QSeries};
use crate::Series;

fn bidegree_name((r, s): (u32, u32)) -> String {
    format!("Q_b^{r} Q_f^{s}")
}

/// Expands every coefficient through `q^q_order` after prefactor
/// extraction and requires nonnegative integer coefficients, integral
/// exponents, and (regular mode) no `t`.
pub fn positivity_check<C: Coeff>(series: &KahlerSeries<C>, q_order: u32, refined: bool) -> CheckReport {
    let id = "positivity";
    let ring = if refined { "Z+[t][[q]]" } else { "Z+[[q]]" };
    for (k, c) in series.terms() {
        let e = match QSeries::expand(c, q_order) {
            Ok(e) => e,
            Err(err) => return CheckReport::inconclusive(id, format!("{} not expandable: {err}", bidegree_name(k))),
        };
        for (m, v) in e.residual().terms() {
            let at = format!("{} at q^({}/2) t^({}/2)", bidegree_name(k), m.q, m.t);
            if !v.is_integer() || v.is_negative() {
                return CheckReport::fail(id, format!("coefficient outside {ring}"), format!("{at}: {v}"));
            }
            if m.q % 2 != 0 || m.t % 2 != 0 {
                return CheckReport::fail(id, "half-integral exponent left after prefactor extraction", at);
            }
            if !refined && m.t != 0 {
                return CheckReport::fail(id, "t-dependence in a regular series", at);
            }
        }
    }
    CheckReport::pass(id, format!("{} coefficients in {ring} through q^{q_order}", series.len()))
}

/// Support of a normalized series: `c_{0,s} = 0` for `s >= 1`, and
/// `c_{r,0} = 0` for `r > |α|+|γ|`. The constant term is exempt.
pub fn support_check<C: Coeff>(zhat: &KahlerSeries<C>, alpha: &Partition, gamma: &Partition) -> CheckReport {
    let id = "support";
    if !zhat.is_normalized() {
        return CheckReport::inconclusive(id, "series is not normalized");
    }
    let n = alpha.size() + gamma.size();
    for (k, _) in zhat.terms() {
        let (r, s) = k;
        if k == (0, 0) {
            continue;
        }
        if r == 0 {
            return CheckReport::fail(id, "nonzero coefficient without Q_b", bidegree_name(k));
        }
        if s == 0 && r > n {
            return CheckReport::fail(id, format!("pure Q_b coefficient beyond degree {n}"), bidegree_name(k));
        }
    }
    CheckReport::pass(id, format!("support within cutoff {}", zhat.cutoff()))
}

/// `c_{m,0} = 0` for every determined `m > max_degree`.
pub fn pure_qb_truncation_check<C: Coeff>(series: &KahlerSeries<C>, max_degree: u32) -> CheckReport {
    let id = "pure_qb_truncation";
    for m in max_degree + 1..=series.cutoff() {
        if !series.coeff((m, 0)).unwrap().is_zero() {
            return CheckReport::fail(id, format!("pure Q_b term beyond degree {max_degree}"), bidegree_name((m, 0)));
        }
    }
    CheckReport::pass(id, format!("no Q_b^m, {max_degree} < m <= {}", series.cutoff()))
}

/// `c_{0,s} = 0` for every determined `s >= 1`.
pub fn sole_qf_vanishing_check<C: Coeff>(series: &KahlerSeries<C>) -> CheckReport {
    let id = "sole_qf_vanishing";
    for s in 1..=series.cutoff() {
        if !series.coeff((0, s)).unwrap().is_zero() {
            return CheckReport::fail(id, "pure Q_f term present", bidegree_name((0, s)));
        }
    }
    CheckReport::pass(id, format!("no Q_f^s, 1 <= s <= {}", series.cutoff()))
}

/// The refined series at `t = q` against the regular one.
pub fn reduction_check<C: Coeff>(refined: &KahlerSeries<C>, regular: &KahlerSeries<C>) -> CheckReport {
    let id = "reduction";
    let cutoff = refined.cutoff().min(regular.cutoff());
    for k in graded_bidegrees(cutoff) {
        let a = refined.coeff(k).unwrap();
        let b = regular.coeff(k).unwrap();
        match a.substitute_t_eq_q() {
            Ok(a) if a == b => {}
            Ok(_) => return CheckReport::fail(id, "refined at t=q differs from regular", bidegree_name(k)),
            Err(err) => return CheckReport::fail(id, format!("t=q is singular: {err}"), bidegree_name(k)),
        }
    }
    CheckReport::pass(id, format!("equal at t=q through degree {cutoff}"))
}

/// Invariance under `t ↔ q`.
pub fn symmetry_check_tq<C: Coeff>(series: &KahlerSeries<C>) -> CheckReport {
    let id = "symmetry_tq";
    for k in graded_bidegrees(series.cutoff()) {
        let a = series.coeff(k).unwrap();
        if a.swap_tq() != a {
            return CheckReport::fail(id, "not symmetric under t <-> q", bidegree_name(k));
        }
    }
    CheckReport::pass(id, format!("symmetric through degree {}", series.cutoff()))
}

/// Local Hopf amplitude against the conifold one: equal leading terms,
/// `Q_b` terms equal up to sign, different `Q_b^2` terms.
pub fn comparison_check<C: Coeff>(local: &KahlerSeries<C>, conifold: &KahlerSeries<C>) -> CheckReport {
    let id = "comparison";
    let (Some(l0), Some(c0)) = (local.coeff((0, 0)), conifold.coeff((0, 0))) else {
        return CheckReport::inconclusive(id, "leading terms undetermined");
    };
    if l0 != c0 {
        return CheckReport::fail(id, "leading terms differ", bidegree_name((0, 0)));
    }
    let (Some(l1), Some(c1)) = (local.coeff((1, 0)), conifold.coeff((1, 0))) else {
        return CheckReport::inconclusive(id, "Q_b terms undetermined");
    };
    let sign = if l1 == c1 {
        "equal"
    } else if l1 == -c1.clone() {
        "opposite"
    } else {
        return CheckReport::fail(id, "Q_b terms differ beyond a sign", bidegree_name((1, 0)));
    };
    let (Some(l2), Some(c2)) = (local.coeff((2, 0)), conifold.coeff((2, 0))) else {
        return CheckReport::inconclusive(id, "Q_b^2 terms undetermined");
    };
    if l2 == c2 {
        return CheckReport::fail(id, "Q_b^2 terms coincide", format!("{}: {l2}", bidegree_name((2, 0))));
    }
    CheckReport::pass(id, format!("leading equal, Q_b terms {sign} in sign, Q_b^2 terms differ"))
}

/// Computed series against a fixture: coefficientwise equality through
/// `complete_through`, or residual equality of one q-expansion through the
/// printed order.
pub fn fixture_compare(fixture: &Fixture, computed: &Series) -> CheckReport {
    let id = fixture.id.as_str();
    match &fixture.expected {
        Expected::Rational { complete_through, coefficients, .. } => {
            for k in graded_bidegrees(*complete_through) {
                let Some(got) = computed.coeff(k) else {
                    return CheckReport::fail(id, "bidegree not determined by the computation", bidegree_name(k));
                };
                let want = coefficients.get(&k).cloned().unwrap_or_else(crate::RatFn::zero);
                if got != want {
                    return CheckReport::fail(id, "coefficient differs", format!("{}: computed {got}, expected {want}", bidegree_name(k)));
                }
            }
            CheckReport::pass(id, format!("{} coefficients equal through degree {complete_through}", coefficients.len()))
        }
        Expected::Expansion { bidegree, printed_order, series } => {
            let Some(c) = computed.coeff(*bidegree) else {
                return CheckReport::fail(id, "bidegree not determined by the computation", bidegree_name(*bidegree));
            };
            let got = match QSeries::expand(&c, *printed_order) {
                Ok(e) => e,
                Err(err) => return CheckReport::inconclusive(id, format!("{} not expandable: {err}", bidegree_name(*bidegree))),
            };
            // a printed list starting above q^0 carries fewer terms after the shift
            let order = series.order().min(2 * *printed_order as i32);
            let got = got.truncated(order);
            for qe in 0..=order {
                let (a, b) = (got.coeff(qe), series.coeff(qe));
                if a != b {
                    return CheckReport::fail(
                        id,
                        format!("q-expansion of {} differs", bidegree_name(*bidegree)),
                        format!("q^({qe}/2): computed {a}, expected {b}"),
                    );
                }
            }
            CheckReport::pass(id, format!("{} expansion equal through q^({order}/2) of the residual", bidegree_name(*bidegree)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Verdict;
    use crate::ring::expr::parse_rational;
    use crate::{RatFn, Rational};

    fn rf(s: &str) -> RatFn {
        parse_rational::<Rational>(s).unwrap()
    }

    fn series(cutoff: u32, terms: &[((u32, u32), &str)]) -> Series {
        Series::from_terms(cutoff, terms.iter().map(|(k, e)| (*k, rf(e))))
    }

    #[test]
    fn positivity_flags_negative_coefficient() {
        let good = series(1, &[((0, 0), "sqrt(q)/(1-q)"), ((1, 0), "(q+t)/(sqrt(t)*(1-q))")]);
        assert_eq!(positivity_check(&good, 20, true).verdict, Verdict::Pass);
        assert_eq!(positivity_check(&good, 20, false).verdict, Verdict::Fail);
        let bad = series(1, &[((1, 0), "(1-2*q)/(1-q)")]);
        let r = positivity_check(&bad, 5, false);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.unwrap().contains("q^(2/2)"));
    }

    #[test]
    fn positivity_flags_half_integral_exponents() {
        let s = series(1, &[((1, 0), "1+sqrt(q)")]);
        assert_eq!(positivity_check(&s, 3, false).verdict, Verdict::Fail);
    }

    #[test]
    fn positivity_inconclusive_when_not_expandable() {
        let s = series(1, &[((1, 0), "1/(1-t-q)")]);
        assert_eq!(positivity_check(&s, 3, true).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn support() {
        let a = Partition::box_();
        let e = Partition::empty();
        let ok = series(2, &[((0, 0), "1"), ((1, 0), "q"), ((1, 1), "q")]).with_normalized(true);
        assert!(support_check(&ok, &a, &e).passed());
        let bad = series(2, &[((0, 1), "q")]).with_normalized(true);
        assert_eq!(support_check(&bad, &a, &e).verdict, Verdict::Fail);
        let bad = series(2, &[((2, 0), "q")]).with_normalized(true);
        assert_eq!(support_check(&bad, &a, &e).verdict, Verdict::Fail);
        assert_eq!(support_check(&ok.clone().with_normalized(false), &a, &e).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn reduction_and_symmetry() {
        let refined = series(1, &[((0, 0), "1"), ((1, 0), "(t+q)/(1-t)")]);
        let regular = series(1, &[((0, 0), "1"), ((1, 0), "2*q/(1-q)")]);
        assert!(reduction_check(&refined, &regular).passed());
        let off = series(1, &[((0, 0), "2"), ((1, 0), "2*q/(1-q)")]);
        assert_eq!(reduction_check(&refined, &off).witness.as_deref(), Some("Q_b^0 Q_f^0"));
        assert!(!symmetry_check_tq(&refined).passed());
        assert!(symmetry_check_tq(&series(1, &[((1, 0), "(t+q)/((1-t)*(1-q))")])).passed());
        assert!(symmetry_check_tq(&Series::one(3)).passed());
    }

    #[test]
    fn structural() {
        let s = series(3, &[((0, 0), "1"), ((1, 0), "q"), ((1, 2), "q")]);
        assert!(pure_qb_truncation_check(&s, 1).passed());
        assert!(!pure_qb_truncation_check(&s, 0).passed());
        assert!(sole_qf_vanishing_check(&s).passed());
        assert!(!sole_qf_vanishing_check(&series(3, &[((0, 3), "q")])).passed());
    }
}
