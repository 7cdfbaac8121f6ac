use num_rational::Rational64;
use proptest::prelude::*;

use zelkl_core::coxeter::{enumerate_sn, longest_element};
use zelkl_core::grothendieck::{
    bz_layers, decompose_irreducible, derivative_multisegment, ep_pairing, GrothendieckVector, RegularBlock,
};
use zelkl_core::klpoly::KlCache;
use zelkl_core::zelevinsky::{
    is_standard_sequence, lstar, standard_order, CuspidalLine, CuspidalPoint, LineClass, Multisegment, Segment,
    Side,
};
use zelkl_core::Limits;

fn lines() -> Vec<CuspidalLine> {
    vec![
        CuspidalLine::self_dual("rho", 1).unwrap(),
        CuspidalLine::with_dual("pi", "pic", 1).unwrap(),
        CuspidalLine::with_dual("pic", "pi", 1).unwrap(),
        CuspidalLine::self_dual("tau", 2).unwrap(),
    ]
}

fn segment() -> impl Strategy<Value = Segment> {
    (0..4usize, -10i64..=10, 0i64..4).prop_map(|(l, a2, len)| {
        let a = Rational64::new(a2, 2);
        Segment::new(lines()[l].clone(), a, a + len).unwrap()
    })
}

fn segments() -> impl Strategy<Value = Vec<Segment>> {
    prop::collection::vec(segment(), 0..5)
}

fn multisegment() -> impl Strategy<Value = Multisegment> {
    segments().prop_map(Multisegment::new)
}

fn twist_amount() -> impl Strategy<Value = Rational64> {
    (-8i64..=8, 1i64..=3).prop_map(|(p, q)| Rational64::new(p, q))
}

proptest! {
    #[test]
    fn dual_is_an_involution(m in multisegment()) {
        prop_assert_eq!(m.dual().dual(), m.clone());
        prop_assert_eq!(m.dual().absolute_length(), m.absolute_length());
    }

    #[test]
    fn dual_commutes_with_normalization(list in segments()) {
        let dual_list: Vec<Segment> = list.iter().map(Segment::dual).collect();
        prop_assert_eq!(standard_order(&dual_list), standard_order(&list).dual());
    }

    #[test]
    fn linked_is_symmetric_and_excludes_containment(s in segment(), t in segment()) {
        prop_assert_eq!(s.is_linked(&t), t.is_linked(&s));
        if s.contains(&t) || t.contains(&s) {
            prop_assert!(!s.is_linked(&t));
        }
    }

    #[test]
    fn twist_preserves_length_and_shifts_support(m in multisegment(), c in twist_amount()) {
        let t = m.twist(c);
        prop_assert_eq!(t.absolute_length(), m.absolute_length());
        prop_assert_eq!(t.csupp(), m.csupp().twist(c));
        prop_assert_eq!(t.twist(-c), m);
    }

    #[test]
    fn derivative_truncation_lengths(s in segment(), i in 0usize..5, shifted in any::<bool>()) {
        for side in [Side::Left, Side::Right] {
            let len = s.relative_length();
            match s.derivative(side, i, shifted) {
                Err(_) => prop_assert!(i > len),
                Ok(None) => prop_assert_eq!(i, len),
                Ok(Some(d)) => {
                    prop_assert_eq!(d.relative_length(), len - i);
                    let shift = if shifted { side.shift_twist() } else { Rational64::from_integer(0) };
                    let kept = match side { Side::Right => s.b(), Side::Left => s.a() };
                    let kept_after = match side { Side::Right => d.b(), Side::Left => d.a() };
                    prop_assert_eq!(kept_after, kept + shift);
                }
            }
        }
    }

    #[test]
    fn left_and_right_derivatives_commute(s in segment(), i in 0usize..4, j in 0usize..4) {
        let len = s.relative_length();
        prop_assume!(i + j < len);
        let rl = s.derivative(Side::Right, i, false).unwrap().unwrap().derivative(Side::Left, j, false).unwrap();
        let lr = s.derivative(Side::Left, j, false).unwrap().unwrap().derivative(Side::Right, i, false).unwrap();
        prop_assert_eq!(rl, lr);
    }

    #[test]
    fn standard_order_is_idempotent_and_standard(list in segments()) {
        let once = standard_order(&list);
        prop_assert_eq!(standard_order(once.segments()), once.clone());
        prop_assert!(is_standard_sequence(once.segments()));
        // the input is a rearrangement
        let mut a: Vec<String> = list.iter().map(ToString::to_string).collect();
        let mut b: Vec<String> = once.segments().iter().map(ToString::to_string).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn standard_sequences_differ_only_by_unlinked_swaps(list in segments()) {
        // whenever the input is already standard, every pair whose order is
        // reversed by normalization is unlinked
        prop_assume!(is_standard_sequence(&list));
        let ordered = standard_order(&list);
        let pos = |s: &Segment, from: &[Segment]| from.iter().position(|t| t == s).unwrap();
        for (i, s) in list.iter().enumerate() {
            for t in &list[i + 1..] {
                if s != t && pos(s, ordered.segments()) > pos(t, ordered.segments()) {
                    prop_assert!(!s.is_linked(t) || !s.same_line_class(t));
                }
            }
        }
    }

    #[test]
    fn lstar_is_line_local(m in multisegment(), mp in multisegment()) {
        let classes: std::collections::BTreeSet<LineClass> = m
            .twist(Rational64::new(1, 2))
            .segments()
            .iter()
            .map(Segment::class)
            .collect();
        let mut total = 0;
        for class in classes {
            let part = Multisegment::new(
                m.segments().iter().filter(|s| s.twist(Rational64::new(1, 2)).class() == class).cloned(),
            );
            let part_prime = Multisegment::new(mp.segments().iter().filter(|s| s.dual().class() == class).cloned());
            total += lstar(&part, &part_prime);
        }
        prop_assert_eq!(lstar(&m, &mp), total);
    }

    #[test]
    fn text_round_trip(m in multisegment()) {
        prop_assert_eq!(m.to_string().parse::<Multisegment>().unwrap(), m);
    }

    #[test]
    fn genericity_is_pairwise(m in multisegment()) {
        let pairwise = m.segments().iter().enumerate().all(|(i, s)| m.segments()[i + 1..].iter().all(|t| !s.is_linked(t)));
        prop_assert_eq!(m.is_generic(), pairwise);
    }

    #[test]
    fn layers_count_and_dual_exchange(m in multisegment()) {
        let n = m.absolute_length();
        let right = bz_layers(&m, &Multisegment::empty(), Side::Right).unwrap();
        let left = bz_layers(&m.dual(), &Multisegment::empty(), Side::Left).unwrap();
        prop_assert_eq!(right.len(), n + 1);
        prop_assert_eq!(left.len(), n + 1);
        for (r, l) in right.iter().zip(&left) {
            let dualized = r.derived_factor.map_keys(Multisegment::dual).unwrap();
            prop_assert_eq!(dualized, l.derived_factor.clone());
        }
    }

    #[test]
    fn derivative_term_count_matches_leibniz(m in multisegment()) {
        // number of terms counted with multiplicity over all k equals the
        // product of (segment length + 1)
        let expected: i64 = m.segments().iter().map(|s| s.relative_length() as i64 + 1).product();
        let mut total = 0;
        for k in 0..=m.absolute_length() {
            total += derivative_multisegment(&m, Side::Right, k, true).unwrap().iter().map(|(_, c)| c).sum::<i64>();
        }
        prop_assert_eq!(total, expected);
    }

    #[test]
    fn ep_is_bilinear(a in multisegment(), b in multisegment(), c in multisegment(), x in -3i64..=3, y in -3i64..=3) {
        let v1 = GrothendieckVector::basis(a);
        let v2 = GrothendieckVector::basis(b);
        let w = GrothendieckVector::basis(c);
        let combo = v1.scale(x).unwrap().add(&v2.scale(y).unwrap());
        prop_assume!(combo.is_ok());
        let lhs = ep_pairing(&combo.unwrap(), &w, false).unwrap();
        let rhs = x * ep_pairing(&v1, &w, false).unwrap() + y * ep_pairing(&v2, &w, false).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn point_twists_compose() {
    let p = CuspidalPoint::new(lines()[0].clone(), Rational64::new(1, 2));
    assert_eq!(p.twist(Rational64::new(1, 2)).twist(Rational64::new(-1, 2)), p);
    assert_eq!(p.dual().dual(), p);
}

#[test]
fn decomposition_invariants_up_to_rank_four() {
    let cache = KlCache::default();
    for n in 1..=4 {
        let block = RegularBlock::standard(n, &Limits::default()).unwrap();
        let w0 = longest_element(n);
        for w in enumerate_sn(n, &Limits::default()).unwrap() {
            let v = decompose_irreducible(&block, &w, &cache).unwrap();
            assert_eq!(v.coefficient(block.member(&w).unwrap()), 1);
            let wh = v.whittaker_dim().unwrap();
            assert_eq!(wh, i64::from(w == w0));
            assert_eq!(block.member(&w).unwrap().is_generic(), w == w0);
        }
    }
}
