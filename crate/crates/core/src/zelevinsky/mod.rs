//! Segments and multisegments.
//!
//! Exponents are exact rationals; a cuspidal representation is an opaque
//! [`CuspidalLine`] carrying only a name, a degree and its dual's name.

mod line;
mod multisegment;
mod segment;
mod text;

pub use line::{CuspidalLine, CuspidalPoint, LineClass};
pub use multisegment::{is_standard_sequence, lstar, standard_order, CuspidalSupport, Multisegment};
pub use segment::{Segment, Side};
pub use text::{check_line_consistency, parse_multisegment, parse_segment, parse_segment_list};

use num_rational::Rational64;

use crate::error::Result;

pub fn make_segment(line: CuspidalLine, a: Rational64, b: Rational64) -> Result<Segment> {
    Segment::new(line, a, b)
}

/// See [`Segment::derivative`].
pub fn derivative_segment(
    segment: &Segment,
    side: Side,
    i: usize,
    shifted: bool,
) -> Result<Option<Segment>> {
    segment.derivative(side, i, shifted)
}

pub fn dual_segment(segment: &Segment) -> Segment {
    segment.dual()
}

pub fn dual_multisegment(m: &Multisegment) -> Multisegment {
    m.dual()
}

pub fn twist(m: &Multisegment, c: Rational64) -> Multisegment {
    m.twist(c)
}

pub fn linked(a: &Segment, b: &Segment) -> bool {
    a.is_linked(b)
}

pub fn csupp(m: &Multisegment) -> CuspidalSupport {
    m.csupp()
}

pub fn is_generic(m: &Multisegment) -> bool {
    m.is_generic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    fn rho() -> CuspidalLine {
        CuspidalLine::self_dual("rho", 1).unwrap()
    }

    fn seg(a: i64, b: i64) -> Segment {
        Segment::integral(&rho(), a, b).unwrap()
    }

    fn ms(text: &str) -> Multisegment {
        text.parse().unwrap()
    }

    #[test]
    fn segment_construction() {
        let s = make_segment(rho(), r(0, 1), r(2, 1)).unwrap();
        assert_eq!(s.relative_length(), 3);
        assert!(make_segment(rho(), r(1, 1), r(0, 1)).is_err());
        assert!(make_segment(rho(), r(0, 1), r(1, 2)).is_err());
        let tau = CuspidalLine::self_dual("tau", 2).unwrap();
        assert_eq!(Segment::integral(&tau, 0, 1).unwrap().absolute_length(), 4);
    }

    #[test]
    fn derivatives_truncate() {
        let s = seg(0, 2);
        assert_eq!(derivative_segment(&s, Side::Right, 1, false).unwrap(), Some(seg(1, 2)));
        assert_eq!(derivative_segment(&s, Side::Left, 1, false).unwrap(), Some(seg(0, 1)));
        assert_eq!(derivative_segment(&s, Side::Right, 3, false).unwrap(), None);
        assert_eq!(derivative_segment(&s, Side::Right, 0, false).unwrap(), Some(s.clone()));
        let shifted = derivative_segment(&s, Side::Right, 1, true).unwrap().unwrap();
        assert_eq!((shifted.a(), shifted.b()), (r(3, 2), r(5, 2)));
        let left_shifted = derivative_segment(&s, Side::Left, 1, true).unwrap().unwrap();
        assert_eq!((left_shifted.a(), left_shifted.b()), (r(-1, 2), r(1, 2)));
        assert!(derivative_segment(&s, Side::Right, 4, false).is_err());
    }

    #[test]
    fn duals() {
        let s = seg(0, 2);
        let d = dual_segment(&s);
        assert_eq!((d.a(), d.b()), (r(-2, 1), r(0, 1)));
        assert_eq!(d.dual(), s);
        assert_eq!(dual_segment(&seg(0, 0)), seg(0, 0));
        let eta = CuspidalLine::with_dual("eta", "etav", 1).unwrap();
        let e = Segment::integral(&eta, 1, 2).unwrap();
        assert_eq!(e.dual().line().name(), "etav");
        assert_eq!(e.dual().dual(), e);
    }

    #[test]
    fn twisting() {
        let m = ms("{[0,1]@rho}");
        assert_eq!(twist(&m, r(0, 1)), m);
        assert_eq!(twist(&m, r(1, 2)), ms("{[1/2,3/2]@rho}"));
        assert_eq!(twist(&twist(&m, r(7, 3)), r(-7, 3)), m);
    }

    #[test]
    fn linkedness() {
        assert!(linked(&seg(0, 1), &seg(1, 2)));
        assert!(linked(&seg(0, 1), &seg(2, 3)));
        assert!(!linked(&seg(0, 2), &seg(1, 1)));
        assert!(!linked(&seg(0, 1), &seg(3, 4)));
        let half = make_segment(rho(), r(1, 2), r(3, 2)).unwrap();
        assert!(!linked(&seg(0, 1), &half));
        let other = Segment::integral(&CuspidalLine::self_dual("tau", 1).unwrap(), 1, 2).unwrap();
        assert!(!linked(&seg(0, 1), &other));
    }

    #[test]
    fn intro_counterexample_is_not_standard() {
        let input = parse_segment_list("{[-1/2,-1/2]@rho, [1/2,1/2]@rho}").unwrap();
        assert!(!is_standard_sequence(&input));
        let ordered = standard_order(&input);
        assert_eq!(ordered.to_string(), "{[1/2,1/2]@rho, [-1/2,-1/2]@rho}");
        assert!(is_standard_sequence(ordered.segments()));
    }

    #[test]
    fn standard_order_cases() {
        let input = vec![seg(3, 4), seg(0, 2)];
        assert_eq!(standard_order(&input).segments(), input.as_slice());
        let tau = CuspidalLine::self_dual("tau", 1).unwrap();
        let t = Segment::integral(&tau, 0, 0).unwrap();
        let m = standard_order(&[t.clone(), seg(0, 0)]);
        assert_eq!(m.segments(), &[seg(0, 0), t]);
        // equal b: descending a
        assert_eq!(standard_order(&[seg(0, 2), seg(1, 2)]).segments(), &[seg(1, 2), seg(0, 2)]);
    }

    #[test]
    fn cuspidal_support() {
        let c = csupp(&ms("{[0,2]@rho}"));
        assert_eq!(c.size(), 3);
        for k in 0..3 {
            assert_eq!(c.multiplicity(&CuspidalPoint::new(rho(), r(k, 1))), 1);
        }
        assert!(csupp(&Multisegment::empty()).is_empty());
        let c = csupp(&ms("{[0,1]@rho, [1,1]@rho}"));
        assert_eq!(c.size(), 3);
        assert_eq!(c.multiplicity(&CuspidalPoint::new(rho(), r(1, 1))), 2);
    }

    #[test]
    fn lstar_examples() {
        assert_eq!(lstar(&ms("{[1/2,1/2]@rho}"), &ms("{[0,0]@rho}")), 1);
        assert_eq!(lstar(&ms("{[0,1]@rho}"), &ms("{[0,0]@tau}")), 0);
        assert_eq!(lstar(&ms("{[1/2,1/2]@rho, [3/2,3/2]@rho}"), &ms("{[0,0]@rho}")), 2);
        // integral m against integral m': the half twist puts them on different classes
        assert_eq!(lstar(&ms("{[0,0]@rho}"), &ms("{[0,0]@rho}")), 0);
        // dual lines meet through the contragredient
        assert_eq!(lstar(&ms("{[1/2,1/2]@eta~etav}"), &ms("{[0,0]@etav~eta}")), 1);
        assert_eq!(lstar(&ms("{[1/2,1/2]@eta~etav}"), &ms("{[0,0]@eta~etav}")), 0);
    }

    #[test]
    fn genericity() {
        assert!(is_generic(&ms("{[0,3]@rho}")));
        assert!(is_generic(&ms("{[0,3]@rho, [1,2]@rho}")));
        assert!(!is_generic(&ms("{[0,1]@rho, [1,2]@rho}")));
    }

    #[test]
    fn text_round_trip() {
        for text in [
            "{}",
            "{[0,2]@rho}",
            "{[1/2,3/2]@rho, [-1/2,-1/2]@rho}",
            "{[0,0]@eta~etav(2), [-3,1]@tau(3)}",
        ] {
            let m: Multisegment = text.parse().unwrap();
            assert_eq!(m.to_string(), text);
        }
        let s: Segment = " [ -1/2 , 1/2 ] @ rho ".parse().unwrap();
        assert_eq!(s.to_string(), "[-1/2,1/2]@rho");
    }

    #[test]
    fn parse_errors() {
        assert!("{[0,1]@rho".parse::<Multisegment>().is_err());
        assert!("{[1,0]@rho}".parse::<Multisegment>().is_err());
        assert!("{[0,1/0]@rho}".parse::<Multisegment>().is_err());
        assert!("{[0,1]@}".parse::<Multisegment>().is_err());
        assert!("{[0,1]@rho(0)}".parse::<Multisegment>().is_err());
        assert!("{[0,1]@rho} x".parse::<Multisegment>().is_err());
        // inconsistent degrees or duals for one name
        assert!("{[0,1]@rho, [0,0]@rho(2)}".parse::<Multisegment>().is_err());
        assert!("{[0,1]@eta~etav, [0,0]@etav}".parse::<Multisegment>().is_err());
        assert!("{[0,1]@eta~etav, [0,0]@etav~eta}".parse::<Multisegment>().is_ok());
    }
}
