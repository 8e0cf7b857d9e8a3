//! Independent evaluations of the symmetric-function specializations.

use rp3_vertex::amplitude::resolved_conifold_amplitude;
use rp3_vertex::partition::{enumerate_up_to, partitions_of};
use rp3_vertex::ring::expr::parse_rational;
use rp3_vertex::specialize::{schur_tableau_oracle, Alphabet, Specializer, Var};
use rp3_vertex::{Laurent, Monomial, Partition, QSer, RatFn, Rational};

const ORDER: u32 = 8;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// Terms of `f` of q-degree at most `ORDER`, from its q-expansion.
fn truncated_expansion(f: &RatFn) -> Laurent {
    if f.is_zero() {
        return Laurent::zero();
    }
    let e = QSer::expand(f, 3 * ORDER).unwrap();
    assert!(e.prefactor().min_q().unwrap() + 6 * ORDER as i32 >= 2 * ORDER as i32, "expansion too short for {f}");
    e.absolute().truncate_q(2 * ORDER as i32)
}

/// `skew_schur` against the tableau sum for every `η ⊆ λ`, `|λ| <= 5`; with
/// `swap` both sides are compared after `t ↔ q` so that the grading
/// variable is `q`.
fn compare_family(a: &Alphabet, swap: bool) -> usize {
    let sp = Specializer::<Rational>::new();
    let mut n = 0;
    for lambda in enumerate_up_to(5) {
        for eta in lambda.subdiagrams() {
            let mut oracle = schur_tableau_oracle::<Rational>(&lambda, &eta, a, ORDER, 200).unwrap();
            let mut jt = sp.skew_schur(&lambda, &eta, a);
            if swap {
                oracle = oracle.swap_tq();
                jt = jt.swap_tq();
            }
            assert_eq!(truncated_expansion(&jt), oracle.truncate_q(2 * ORDER as i32), "s_{lambda}/{eta}");
            n += 1;
        }
    }
    n
}

#[test]
fn jacobi_trudi_matches_tableaux_at_q_rho() {
    assert!(compare_family(&Alphabet::q_rho(&Partition::empty()), false) > 100);
}

#[test]
fn jacobi_trudi_matches_tableaux_at_shifted_q_rho() {
    compare_family(&Alphabet::q_rho(&p(&[1])), false);
}

#[test]
fn jacobi_trudi_matches_tableaux_at_mixed_principal() {
    compare_family(&Alphabet::principal(Var::T, Var::Q, &p(&[2, 1])), true);
}

#[test]
fn complete_homogeneous_closed_form() {
    let sp = Specializer::<Rational>::new();
    let a = Alphabet::q_rho(&Partition::empty());
    for k in 0..=6u32 {
        let mut want = RatFn::monomial(Monomial::new(k as i32, 0));
        for i in 1..=k as i32 {
            want = &want * &RatFn::one_over(&(&Laurent::one() - &Laurent::monomial(Monomial::q(i))), 1);
        }
        assert_eq!(sp.complete_homogeneous(k, &a), want, "h_{k}");
        let oracle = schur_tableau_oracle::<Rational>(&Partition::row(k), &Partition::empty(), &a, ORDER, 200).unwrap();
        assert_eq!(truncated_expansion(&want), oracle);
    }
}

/// `s_λ(A ∪ B) = Σ_η s_η(A) s_{λ/η}(B)`.
#[test]
fn branching_over_a_split_alphabet() {
    let sp = Specializer::<Rational>::new();
    let whole = Alphabet::q_rho(&Partition::empty());
    let head = Alphabet::finite(vec![Monomial::new(1, 0), Monomial::new(3, 0)]);
    let rest = Alphabet::new(vec![], Monomial::new(5, 0), Monomial::q(1)).unwrap();
    let split = head.concat(&rest);
    assert!((0..10).all(|i| split.letter(i) == whole.letter(i)));
    for lambda in enumerate_up_to(5) {
        let mut sum = RatFn::zero();
        for eta in lambda.subdiagrams() {
            sum = &sum + &(&sp.schur(&eta, &head) * &sp.skew_schur(&lambda, &eta, &rest));
        }
        assert_eq!(sum, sp.schur(&lambda, &whole), "{lambda}");
    }
}

/// `Σ_{|λ|=n} s_λ(x) s_{λ^t}(y) = e_n(xy)`, with `e_n` from power sums by
/// Newton's identities.
#[test]
fn closed_conifold_is_the_product_formula() {
    let sp = Specializer::<Rational>::new();
    let cutoff = 4;
    let one = Laurent::one();
    let power_sum = |k: i32| {
        // p_k(t^(-ρ)) p_k(q^(-ρ))
        let num = Laurent::monomial(Monomial::new(k, k));
        let den = &(&one - &Laurent::monomial(Monomial::t(k))) * &(&one - &Laurent::monomial(Monomial::q(k)));
        RatFn::new(num, den).unwrap()
    };
    let mut e = vec![RatFn::one()];
    for n in 1..=cutoff as i32 {
        let mut acc = RatFn::zero();
        for k in 1..=n {
            let term = &e[(n - k) as usize] * &power_sum(k);
            acc = if k % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.scale(&Rational::new(1.into(), n.into())));
    }
    let z = resolved_conifold_amplitude(&sp, &Partition::empty(), &Partition::empty(), true, cutoff);
    for n in 0..=cutoff {
        let want = if n % 2 == 0 { e[n as usize].clone() } else { -e[n as usize].clone() };
        assert_eq!(z.coeff((n, 0)).unwrap(), want, "Q^{n}");
    }
    let dual: RatFn = partitions_of(2)
        .iter()
        .map(|l| &sp.schur(l, &Alphabet::principal(Var::T, Var::T, &Partition::empty())) * &sp.schur(&l.conjugate(), &Alphabet::q_rho(&Partition::empty())))
        .fold(RatFn::zero(), |a, b| &a + &b);
    assert_eq!(dual, e[2]);
    let first = parse_rational::<Rational>("-sqrt(t*q)/((1-t)*(1-q))").unwrap();
    assert_eq!(z.coeff((1, 0)).unwrap(), first);
}
