use filling_core::exactnum::{QuadraticNumber, Rational};
use filling_core::projdyn::{
    apply_power, canonical_targets, hyperplane_obstruction, n_filling_witness, ExampleSystem, GeneratorSet, Hyperplane,
    IntMatrix, ProjectivePoint, WitnessOptions,
};
use filling_core::Level;
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn random_point(s: &ExampleSystem, rng: &mut ChaCha8Rng) -> ProjectivePoint {
    loop {
        let coords: Vec<i64> = (0..s.n()).map(|_| rng.gen_range(-1000..=1000)).collect();
        if let Ok(p) = ProjectivePoint::from_integers(&coords, s.discriminant()) {
            return p;
        }
    }
}

fn random_word(gens: &GeneratorSet, n: usize, rng: &mut ChaCha8Rng) -> IntMatrix {
    let len = rng.gen_range(0..=6);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..gens.len())).collect();
    gens.evaluate(&word, n)
}

#[test]
fn eigen_identities_across_parameters() {
    for k in 4..=10 {
        for n in 2..=5 {
            let s = ExampleSystem::build(n, k).unwrap();
            let lp = s.lambda_plus();
            let lm = s.lambda_minus();
            for j in 0..n {
                let g = s.generator(j);
                let gu = g.apply_quadratic(s.u(j));
                let gv = g.apply_quadratic(s.v(j));
                assert!(gu.iter().zip(s.u(j)).all(|(a, b)| *a == lp * b));
                assert!(gv.iter().zip(s.v(j)).all(|(a, b)| *a == lm * b));
            }
            assert_eq!(lp * lm, s.rational(Rational::one()));
            assert_eq!(lp + lm, s.rational(Rational::from_integer(BigInt::from(k + 2))));
            let one = s.rational(Rational::one());
            let r1 = (&one + s.a()) / (&one - s.b());
            let r2 = (&one + &(s.a() * s.b())) / (&one - s.b());
            let max = if r1 >= r2 { r1 } else { r2 };
            assert_eq!(s.r(), &max);
        }
    }
}

#[test]
fn covering_totality() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 3, 4] {
        let s = ExampleSystem::build(n, 4).unwrap();
        for _ in 0..3_000 {
            let x = random_point(&s, &mut rng);
            let j = s.assign_region(&x);
            assert!(s.k_region(j).contains(&x), "{x} not in K_{j}");
        }
    }
}

#[test]
fn contraction_into_u() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let eps = r(1, 10);
    for n in [2, 3] {
        let s = ExampleSystem::build(n, 4).unwrap();
        let big_n = s.contraction_exponent(&eps).unwrap();
        for j in 0..n {
            let u = s.u_region(j, s.rational(eps.clone()));
            for _ in 0..200 {
                let x = s.sample_k_point(j, &mut rng);
                for m in big_n..big_n + 3 {
                    assert!(u.contains(&apply_power(s.generator(j), i64::from(m), &x).unwrap()));
                }
            }
        }
    }
}

#[test]
fn obstruction_universality() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in [2, 3, 4] {
        let s = ExampleSystem::build(n, 4).unwrap();
        let gens = GeneratorSet::standard(&s);
        let e = Hyperplane::coordinate(n, 0).unwrap();
        for _ in 0..100 {
            let ts: Vec<IntMatrix> = (0..n - 1).map(|_| random_word(&gens, n, &mut rng)).collect();
            let ob = hyperplane_obstruction(&ts, &e).unwrap();
            let v: Vec<Rational> = ob.kernel_vector.iter().cloned().map(Rational::from_integer).collect();
            assert!(v.iter().any(|c| *c != Rational::from_integer(0.into())));
            for t in &ts {
                // t⁻¹ v must have zero first coordinate
                let w = t.inverse().unwrap().apply_rational(&v);
                assert_eq!(w[0], Rational::from_integer(0.into()));
            }
        }
    }
}

#[test]
fn witness_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in [2, 3] {
        let s = ExampleSystem::build(n, 4).unwrap();
        let w = n_filling_witness(
            &s,
            canonical_targets(&s, &r(1, 10)),
            &GeneratorSet::standard(&s),
            &WitnessOptions::default(),
            &mut rng,
        )
        .unwrap();
        assert_eq!(w.level, Level::Certified);
        for _ in 0..3_000 {
            let x = random_point(&s, &mut rng);
            assert!(w.covers(&s, &x));
        }
    }
}

#[test]
fn local_coordinates_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in [2, 3, 4] {
        let s = ExampleSystem::build(n, 5).unwrap();
        for _ in 0..300 {
            let x = random_point(&s, &mut rng);
            for j in 0..n {
                let lc = s.to_local_coords(&x, j).unwrap();
                let back = ProjectivePoint::new(s.from_local_coords(&lc)).unwrap();
                assert_eq!(back, x);
            }
        }
    }
    let s = ExampleSystem::build(2, 4).unwrap();
    let x = ProjectivePoint::new(vec![QuadraticNumber::from_int(1, 32).unwrap(), QuadraticNumber::sqrt_d(32).unwrap()])
        .unwrap();
    let lc = s.to_local_coords(&x, 1).unwrap();
    assert_eq!(ProjectivePoint::new(s.from_local_coords(&lc)).unwrap(), x);
}
