use bplab::c64;
use bplab::levy::{self, compound_poisson_triple, cumulants_from_triple, is_symmetric, levy_exponent, truncate, TripleSpec};
use bplab::{FiniteMeasure, LevyTriple};
use proptest::prelude::*;

fn triple() -> impl Strategy<Value = LevyTriple> {
    (-2.0f64..2.0, proptest::collection::vec((-5.0f64..5.0, 0.01f64..2.0), 0..6))
        .prop_map(|(g, atoms)| LevyTriple::new(g, FiniteMeasure::new(atoms).unwrap()).unwrap())
}

fn symmetric_triple() -> impl Strategy<Value = LevyTriple> {
    (0.0f64..1.0, proptest::collection::vec((0.01f64..5.0, 0.01f64..2.0), 0..5)).prop_map(|(g0, half)| {
        let mut atoms = vec![(0.0, g0)];
        for (u, w) in half {
            atoms.push((u, w));
            atoms.push((-u, w));
        }
        LevyTriple::new(0.0, FiniteMeasure::new(atoms).unwrap()).unwrap()
    })
}

fn rho() -> impl Strategy<Value = FiniteMeasure> {
    proptest::collection::vec((-4.0f64..4.0, 0.1f64..1.0), 1..5).prop_map(|atoms| {
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        FiniteMeasure::new(atoms.into_iter().map(|(u, w)| (u, w / total)).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn exponent_is_hermitian(t in triple(), x in -20.0f64..20.0) {
        let a = levy_exponent(&t, x);
        let b = levy_exponent(&t, -x);
        prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn symmetric_triples_have_real_exponents(t in symmetric_triple(), x in -20.0f64..20.0) {
        prop_assert!(is_symmetric(&t, 1e-12));
        let p = levy_exponent(&t, x);
        prop_assert!(p.im.abs() <= 1e-12 * p.norm().max(1.0));
    }

    #[test]
    fn truncation_reconstructs(t in triple(), cut in 0.05f64..6.0) {
        let (inner, tail) = truncate(&t, cut).unwrap();
        prop_assert!(inner.g.atoms().iter().all(|a| a.0.abs() <= cut));
        let back = if tail.lambda > 0.0 {
            levy::convolve(&inner, &compound_poisson_triple(&tail.rho, tail.lambda).unwrap())
        } else {
            inner.clone()
        };
        prop_assert!(back.approx_eq(&t, 1e-12), "{:?} vs {:?}", back, t);
    }

    #[test]
    fn compound_poisson_exponent(r in rho(), lambda in 0.0f64..5.0, x in -10.0f64..10.0) {
        let t = compound_poisson_triple(&r, lambda).unwrap();
        let direct = (r.fourier(x) - 1.0) * lambda;
        prop_assert!((levy_exponent(&t, x) - direct).norm() <= 1e-12 * direct.norm().max(1.0));
    }

    #[test]
    fn exponent_adds_under_convolution(t1 in triple(), t2 in triple(), x in -10.0f64..10.0) {
        let a = levy_exponent(&levy::convolve(&t1, &t2), x);
        let b = levy_exponent(&t1, x) + levy_exponent(&t2, x);
        prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
    }

    #[test]
    fn spec_round_trips(lambda in 0.0f64..5.0, m in -3.0f64..3.0, v in 0.0f64..3.0) {
        let spec = TripleSpec::Convolve(vec![
            TripleSpec::Poisson { lambda },
            TripleSpec::Gaussian { mean: m, var: v },
            TripleSpec::Atoms { gamma: 0.5, atoms: vec![(1.5, 0.25)] },
        ]);
        let text = spec.to_json().to_string();
        prop_assert_eq!(TripleSpec::parse(&text).unwrap(), spec);
    }
}

/// Small-`x` expansion of ψ through fourth order.
#[test]
fn small_argument_series() {
    let t = LevyTriple::new(0.3, FiniteMeasure::new(vec![(0.0, 0.5), (0.7, 0.4), (-1.8, 0.2)]).unwrap()).unwrap();
    let c = cumulants_from_triple(&t, 4).unwrap();
    for x in [1e-3, 1e-4, 1e-6] {
        let i = c64::new(0.0, 1.0);
        let series = i * c.get(1) * x - c.get(2) * x * x / 2.0 - i * c.get(3) * x.powi(3) / 6.0 + c.get(4) * x.powi(4) / 24.0;
        let p = levy_exponent(&t, x);
        // remainder is fifth order plus rounding in the linear term
        assert!((p - series).norm() <= x.powi(5) + 1e-15 * x, "x = {x}: {p} vs {series}");
    }
}

#[test]
fn preset_exponents() {
    let g = levy::gaussian(1.0, 2.0).unwrap();
    assert_eq!(levy_exponent(&g, 3.0), c64::new(-9.0, 3.0));
    let p = levy::poisson(2.0).unwrap();
    let x = 1.3;
    let want = (c64::from_polar(1.0, x) - 1.0) * 2.0;
    assert!((levy_exponent(&p, x) - want).norm() < 1e-14);
    let d = levy::dirac(-0.5).unwrap();
    assert_eq!(levy_exponent(&d, 4.0), c64::new(0.0, -2.0));
}

#[test]
fn cauchy_discretization_converges() {
    // exact exponent −a|x|
    for (nodes, tol) in [(401, 0.02), (2001, 4e-3)] {
        let t = levy::cauchy(1.0, nodes).unwrap();
        for x in [0.5, 1.0, 2.0] {
            let p = levy_exponent(&t, x);
            assert!((p.re + x).abs() < tol, "nodes {nodes}, x {x}: {p}");
            assert!(p.im.abs() < 1e-15);
        }
    }
    let t = levy::cauchy(2.5, 101).unwrap();
    assert!(is_symmetric(&t, 0.0));
    assert!((t.g.total_mass() - 2.5).abs() < 1e-12);
}
