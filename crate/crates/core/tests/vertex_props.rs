//! Laws relating the regular and refined vertices and amplitudes.

use rp3_vertex::amplitude::{closed_amplitude, compute, open_amplitude_refined, open_amplitude_regular, AmplitudeSpec};
use rp3_vertex::partition::enumerate_up_to;
use rp3_vertex::specialize::{ParamOrder, Specializer};
use rp3_vertex::vertex::{framing_refined_pair, framing_regular, vertex_refined, vertex_regular};
use rp3_vertex::{Partition, Rational};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn colors() -> Vec<(Partition, Partition)> {
    vec![
        (p(&[1]), Partition::empty()),
        (p(&[1, 1]), Partition::empty()),
        (p(&[1, 1, 1]), Partition::empty()),
        (p(&[2]), Partition::empty()),
        (p(&[3]), Partition::empty()),
        (p(&[1]), p(&[1])),
        (p(&[1]), p(&[1, 1])),
    ]
}

#[test]
fn refined_vertex_at_t_eq_q_is_regular() {
    let sp = Specializer::<Rational>::new();
    let all = enumerate_up_to(5);
    let mut n = 0;
    for l in &all {
        for m in &all {
            for v in &all {
                if l.size() + m.size() + v.size() > 5 {
                    continue;
                }
                let reg = vertex_regular(&sp, l, m, v);
                for order in [ParamOrder::TQ, ParamOrder::QT] {
                    let r = vertex_refined(&sp, l, m, v, order).substitute_t_eq_q().unwrap();
                    assert_eq!(r, reg, "C_{{{l},{m},{v}}} {order:?}");
                }
                n += 1;
            }
        }
    }
    assert_eq!(n, 194);
}

#[test]
fn framing_pair_at_t_eq_q() {
    for a in enumerate_up_to(5) {
        for b in enumerate_up_to(3) {
            let r = framing_refined_pair::<Rational>(&a, &b).substitute_t_eq_q().unwrap();
            assert_eq!(r, &framing_regular::<Rational>(&a) * &framing_regular::<Rational>(&b));
        }
    }
}

#[test]
fn single_leg_vertices_do_not_vanish() {
    let sp = Specializer::<Rational>::new();
    let e = Partition::empty();
    for nu in enumerate_up_to(6) {
        for order in [ParamOrder::TQ, ParamOrder::QT] {
            assert!(!vertex_refined(&sp, &e, &e, &nu, order).is_zero());
            assert!(!vertex_refined(&sp, &e, &nu, &e, order).is_zero());
            assert!(!vertex_refined(&sp, &nu, &e, &e, order).is_zero());
        }
        assert!(!vertex_regular(&sp, &nu, &e, &e).is_zero());
    }
}

#[test]
fn raising_the_cutoff_keeps_known_coefficients() {
    let sp = Specializer::<Rational>::new();
    for (a, g) in colors() {
        for refined in [false, true] {
            let low = compute(&sp, &AmplitudeSpec::local(a.clone(), g.clone(), refined, 2));
            let high = compute(&sp, &AmplitudeSpec::local(a.clone(), g.clone(), refined, 4));
            assert_eq!(high.truncate(2), low, "{a} {g} refined={refined}");
        }
    }
}

#[test]
fn refined_amplitudes_reduce_to_regular() {
    let sp = Specializer::<Rational>::new();
    for (a, g) in colors() {
        let reg = open_amplitude_regular(&sp, &a, &g, 3);
        let refd = open_amplitude_refined(&sp, &a, &g, 3).substitute_t_eq_q().unwrap();
        assert_eq!(refd, reg, "{a} {g}");
    }
    assert_eq!(closed_amplitude(&sp, true, 3).substitute_t_eq_q().unwrap(), closed_amplitude(&sp, false, 3));
}
