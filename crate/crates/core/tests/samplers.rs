use bplab::hermitian::*;
use bplab::levy::{self, cumulants_from_triple};
use bplab::linalg::{gram, unitarity_defect};
use bplab::nonhermitian::*;
use bplab::spectra::empirical_moments;
use bplab::stats::{ks_two_sample, mean_stderr};
use bplab::{FiniteMeasure, RngStream};

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn conjugated_diagonal_keeps_its_spectrum() {
    let mu = ScalarSampler::gaussian(1.0, 2.0).unwrap();
    let d = 9;
    let m = sample_q(&mu, d, &mut RngStream::new(12, 4)).unwrap();
    let mut again = RngStream::new(12, 4);
    let x = sorted((0..d).map(|_| mu.draw(&mut again)).collect());
    for (e, x) in m.eigenvalues().unwrap().iter().zip(&x) {
        assert!((e - x).abs() < 1e-12);
    }
}

#[test]
fn conjugated_diagonal_has_exchangeable_diagonal() {
    let rho = FiniteMeasure::new(vec![(-1.0, 0.5), (2.0, 0.5)]).unwrap();
    let mu = ScalarSampler::discrete(&rho).unwrap();
    let mut rng = RngStream::new(13, 0);
    let (mut a, mut b, mut off) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..3000 {
        let m = sample_q(&mu, 4, &mut rng).unwrap();
        a.push(m.entries()[(0, 0)].re);
        b.push(m.entries()[(3, 3)].re);
        off.push(m.entries()[(0, 2)].re);
    }
    assert!(ks_two_sample(&a, &b) < 0.06);
    let (m, se) = mean_stderr(&a);
    assert!((m - 0.5).abs() < 4.0 * se);
    let (m, se) = mean_stderr(&off);
    assert!(m.abs() < 4.0 * se);
}

#[test]
fn haar_unitaries_are_unitary() {
    let mut rng = RngStream::new(1, 1);
    for d in [1, 2, 17] {
        let u = sample_haar_unitary(d, &mut rng).unwrap();
        assert!(unitarity_defect(u.as_ref()) < 1e-12);
    }
    assert!(sample_haar_unitary(0, &mut rng).is_err());
}

#[test]
fn mean_trace_is_first_cumulant() {
    let triples = [
        levy::gaussian(0.7, 1.0).unwrap(),
        levy::poisson(0.5).unwrap(),
        levy::convolve(&levy::poisson(1.5).unwrap(), &levy::gaussian(-0.2, 0.5).unwrap()),
    ];
    for (i, t) in triples.iter().enumerate() {
        let c1 = cumulants_from_triple(t, 1).unwrap().get(1);
        let mut rng = RngStream::new(30 + i as u64, 0);
        let tr: Vec<f64> = (0..400)
            .map(|_| sample_p(t, 10, &mut rng, &SampleOptions::default()).unwrap().normalized_trace())
            .collect();
        let (m, se) = mean_stderr(&tr);
        assert!((m - c1).abs() < 4.0 * se, "triple {i}: {m} vs {c1} ± {se}");
    }
}

#[test]
fn dirac_model_is_exact() {
    let m = sample_p(&levy::dirac(-2.5).unwrap(), 6, &mut RngStream::new(0, 0), &SampleOptions::default()).unwrap();
    assert_eq!(m.eigenvalues().unwrap(), vec![-2.5; 6]);
    assert_eq!(m.normalized_trace(), -2.5);
    let c = ScalarSampler::constant(3.0);
    assert_eq!(sample_q(&c, 4, &mut RngStream::new(0, 0)).unwrap().eigenvalues().unwrap(), vec![3.0; 4]);
}

#[test]
fn projection_sums_have_bounded_rank() {
    let mut rng = RngStream::new(40, 0);
    let m = projection_sum(&[1.0, -2.0, 0.5], 10, &mut rng).unwrap();
    let e = m.eigenvalues().unwrap();
    assert_eq!(e.iter().filter(|x| x.abs() > 1e-10).count(), 3);
    assert!((e.iter().sum::<f64>() - (-0.5)).abs() < 1e-12);
    let z = projection_sum(&[], 5, &mut rng).unwrap();
    assert_eq!(z.eigenvalues().unwrap(), vec![0.0; 5]);
}

#[test]
fn decomposition_preserves_cumulants() {
    let t = levy::convolve(&levy::cauchy(1.0, 101).unwrap(), &levy::gaussian(0.3, 0.2).unwrap());
    let dec = decompose(&t, Some(0.5)).unwrap();
    let c = cumulants_from_triple(&t, 2).unwrap();
    let tail = levy::compound_poisson_triple(&dec.tail.rho, dec.tail.lambda).unwrap();
    let ct = cumulants_from_triple(&tail, 2).unwrap();
    assert!((dec.gaussian_mean + ct.get(1) - c.get(1)).abs() < 1e-9);
    assert!((dec.gaussian_var + ct.get(2) - c.get(2)).abs() < 1e-9);
    assert!(dec.substituted_var > 0.0);
    assert!(decompose(&t, Some(0.0)).is_err());
}

#[test]
fn biunitary_product_keeps_singular_values() {
    let mu = ScalarSampler::gaussian(0.0, 1.0).unwrap();
    let d = 7;
    let k = sample_k(&mu, d, &mut RngStream::new(50, 2)).unwrap();
    let mut again = RngStream::new(50, 2);
    let x = sorted((0..d).map(|_| mu.draw(&mut again).abs()).collect());
    let s = sorted(k.singular_values().unwrap());
    for (a, b) in s.iter().zip(&x) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn biunitary_entries_are_rotation_invariant() {
    let mu = ScalarSampler::gaussian(0.0, 1.0).unwrap();
    let mut rng = RngStream::new(51, 0);
    let (mut re, mut im) = (Vec::new(), Vec::new());
    for _ in 0..3000 {
        let z = sample_k(&mu, 3, &mut rng).unwrap().entries()[(1, 2)];
        re.push(z.re);
        im.push(z.im);
    }
    assert!(ks_two_sample(&re, &im) < 0.06);
    let sq: Vec<f64> = re.iter().zip(&im).map(|(a, b)| a * a + b * b).collect();
    let (m, se) = mean_stderr(&sq);
    assert!((m - 1.0 / 3.0).abs() < 4.0 * se);
}

#[test]
fn ginibre_normalization() {
    let mut rng = RngStream::new(60, 0);
    let d = 20;
    let tr: Vec<f64> = (0..200)
        .map(|_| {
            let l = sample_l_gaussian(d, 2.0, &mut rng).unwrap();
            let g = gram(l.entries().as_ref());
            (0..d).map(|i| g[(i, i)].re).sum::<f64>() / d as f64
        })
        .collect();
    let (m, se) = mean_stderr(&tr);
    assert!((m - 2.0).abs() < 4.0 * se);
}

#[test]
fn symmetrized_singular_law_is_symmetric() {
    let t = levy::convolve(&levy::gaussian(0.0, 1.0).unwrap(), &levy::cauchy(0.5, 51).unwrap());
    let l = sample_l(&t, 15, &mut RngStream::new(70, 0), &SampleOptions::default()).unwrap();
    let nu = symmetrized_singular_law(&l).unwrap();
    let m = empirical_moments(&nu, 6).unwrap();
    for k in [1, 3, 5] {
        assert_eq!(m.get(k), 0.0);
    }
    assert!(m.get(2) > 0.0);
}

#[test]
fn nonhermitian_model_needs_symmetry() {
    let mut rng = RngStream::new(0, 0);
    let opts = SampleOptions::default();
    assert!(sample_l(&levy::poisson(1.0).unwrap(), 4, &mut rng, &opts).is_err());
    assert!(sample_l(&levy::gaussian(1.0, 1.0).unwrap(), 4, &mut rng, &opts).is_err());
    let rho = ScalarSampler::discrete(&FiniteMeasure::dirac(1.0, 1.0).unwrap()).unwrap();
    assert!(sample_l_compound_poisson(&rho, 1.0, 4, &mut rng).is_err());
    let zero = sample_l(&levy::gaussian(0.0, 0.0).unwrap(), 3, &mut rng, &opts).unwrap();
    assert_eq!(zero.singular_values().unwrap(), vec![0.0; 3]);
}
