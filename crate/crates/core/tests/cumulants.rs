use bplab::cumulants::{bp_transport, cumulants_from_moments, lattice_moments, moments_from_cumulants};
use bplab::levy::{self, cumulants_from_triple, LevyTriple};
use bplab::{CumulantKind, CumulantSequence, FiniteMeasure, MomentSequence};
use proptest::prelude::*;

fn close(a: &[f64], b: &[f64], rel: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= rel * y.abs().max(1.0))
}

fn kind() -> impl Strategy<Value = CumulantKind> {
    prop_oneof![Just(CumulantKind::Classical), Just(CumulantKind::Free)]
}

fn triple() -> impl Strategy<Value = LevyTriple> {
    (-2.0f64..2.0, proptest::collection::vec((-3.0f64..3.0, 0.01f64..2.0), 0..5))
        .prop_map(|(g, atoms)| LevyTriple::new(g, FiniteMeasure::new(atoms).unwrap()).unwrap())
}

proptest! {
    #[test]
    fn round_trips(kind in kind(), c in proptest::collection::vec(-1.0f64..1.0, 1..=8)) {
        let cs = CumulantSequence::new(kind, c.clone()).unwrap();
        let m = moments_from_cumulants(&cs);
        prop_assert!(close(cumulants_from_moments(&m, kind).values(), &c, 1e-10));
        let back = moments_from_cumulants(&cumulants_from_moments(&m, kind));
        prop_assert!(close(back.values(), m.values(), 1e-10));
    }

    #[test]
    fn recursion_matches_lattice_sums(kind in kind(), c in proptest::collection::vec(-2.0f64..2.0, 1..=8)) {
        let cs = CumulantSequence::new(kind, c).unwrap();
        prop_assert!(close(moments_from_cumulants(&cs).values(), lattice_moments(&cs).unwrap().values(), 1e-10));
    }

    #[test]
    fn recursion_is_exact_on_integers(kind in kind(), c in proptest::collection::vec(-4i32..=4, 1..=8)) {
        let cs = CumulantSequence::new(kind, c.into_iter().map(f64::from).collect()).unwrap();
        prop_assert_eq!(moments_from_cumulants(&cs), lattice_moments(&cs).unwrap());
    }

    #[test]
    fn cumulants_add_under_convolution(t1 in triple(), t2 in triple()) {
        let c = cumulants_from_triple(&levy::convolve(&t1, &t2), 6).unwrap();
        let c1 = cumulants_from_triple(&t1, 6).unwrap();
        let c2 = cumulants_from_triple(&t2, 6).unwrap();
        prop_assert!(close(c.values(), c1.add(&c2).unwrap().values(), 1e-12));
    }

    #[test]
    fn transport_is_linear(a in proptest::collection::vec(-1.0f64..1.0, 6), b in proptest::collection::vec(-1.0f64..1.0, 6)) {
        let ca = CumulantSequence::new(CumulantKind::Classical, a).unwrap();
        let cb = CumulantSequence::new(CumulantKind::Classical, b).unwrap();
        let sum = bp_transport(&ca.add(&cb).unwrap()).unwrap();
        let parts = bp_transport(&ca).unwrap().add(&bp_transport(&cb).unwrap()).unwrap();
        prop_assert_eq!(sum.values(), parts.values());
        prop_assert_eq!(sum.kind(), CumulantKind::Free);
    }
}

#[test]
fn known_sequences() {
    // standard normal: classical cumulants (0, 1, 0, ...) give moments (0, 1, 0, 3, 0, 15)
    let c = CumulantSequence::new(CumulantKind::Classical, vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
    assert_eq!(moments_from_cumulants(&c).values(), &[0.0, 1.0, 0.0, 3.0, 0.0, 15.0]);
    // Poisson(1) moments are Bell numbers
    let c = CumulantSequence::new(CumulantKind::Classical, vec![1.0; 6]).unwrap();
    assert_eq!(moments_from_cumulants(&c).values(), &[1.0, 2.0, 5.0, 15.0, 52.0, 203.0]);
    // free Poisson(1) moments are Catalan numbers
    let c = CumulantSequence::new(CumulantKind::Free, vec![1.0; 6]).unwrap();
    assert_eq!(moments_from_cumulants(&c).values(), &[1.0, 2.0, 5.0, 14.0, 42.0, 132.0]);
    let m = MomentSequence::new(vec![0.0, 1.0, 0.0, 2.0]).unwrap();
    assert_eq!(cumulants_from_moments(&m, CumulantKind::Free).values(), &[0.0, 1.0, 0.0, 0.0]);
    assert!(bp_transport(&cumulants_from_moments(&m, CumulantKind::Free)).is_err());
    assert!(lattice_moments(&CumulantSequence::new(CumulantKind::Free, vec![1.0; 11]).unwrap()).is_err());
}

#[test]
fn large_orders_stay_cheap() {
    let c = CumulantSequence::new(CumulantKind::Free, vec![1.0; 30]).unwrap();
    let m = moments_from_cumulants(&c);
    // Catalan(30)
    assert_eq!(m.get(30), 3_814_986_502_092_304.0);
}
