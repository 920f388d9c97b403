use multifan_core::exactmath::{q, qvec, subsets, QMatrix, QVector, Rational, SkewForm};
use multifan_core::fixtures::random_complete_fan;
use multifan_core::simplicial::{Chain, SimplicialComplex};
use multifan_core::volume::{derivative, volume_poly_index, volume_poly_lawrence};
use multifan_core::{seeded_rng, MultiFan};
use num_traits::Zero;
use proptest::prelude::*;

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-6i64..=6, rows * cols).prop_map(move |xs| {
        let rs: Vec<QVector> = xs.chunks(cols).map(qvec).collect();
        QMatrix::from_rows(&rs, cols)
    })
}

fn small_fan() -> impl Strategy<Value = MultiFan> {
    (any::<u64>(), 2usize..=3).prop_flat_map(|(seed, n)| {
        (Just(seed), Just(n), (n + 1)..=(n + 3))
            .prop_map(|(seed, n, m)| random_complete_fan(&mut seeded_rng(seed), n, m, 4, 3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn boundary_squares_to_zero(coefs in prop::collection::vec(-3i64..=3, 20)) {
        let terms = subsets(6, 3).into_iter().zip(coefs).map(|(s, c)| (s, q(c)));
        let c = Chain::from_terms(2, terms);
        prop_assert!(c.boundary().unwrap().boundary().unwrap().is_zero());
    }

    #[test]
    fn kernel_is_annihilated(a in int_matrix(3, 5)) {
        let k = a.kernel_basis();
        prop_assert_eq!(k.len() + a.rank(), 5);
        for v in &k {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn det_is_multiplicative(a in int_matrix(3, 3), b in int_matrix(3, 3)) {
        prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
    }

    #[test]
    fn solve_returns_a_solution(a in int_matrix(4, 3), x in prop::collection::vec(-4i64..=4, 3)) {
        let b = a.mul_vec(&qvec(&x));
        let y = a.solve(&b).expect("consistent by construction");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn wedge_is_alternating(a in int_matrix(3, 4)) {
        let rows = a.to_rows();
        let w = SkewForm::wedge(4, &rows).unwrap();
        let swapped = vec![rows[1].clone(), rows[0].clone(), rows[2].clone()];
        let ws = SkewForm::wedge(4, &swapped).unwrap();
        for (k, x) in w.coords() {
            prop_assert_eq!(&-x.clone(), &ws.coord(k));
        }
        let repeated = vec![rows[0].clone(), rows[0].clone(), rows[2].clone()];
        prop_assert!(SkewForm::wedge(4, &repeated).unwrap().is_zero());
    }

    #[test]
    fn wedge_pairing_is_gram_determinant(a in int_matrix(2, 4)) {
        let w = SkewForm::wedge(4, &a.to_rows()).unwrap();
        let gram = a.mul(&a.transpose());
        prop_assert_eq!(w.pair(&w).unwrap(), gram.det());
    }

    #[test]
    fn covering_degree_is_constant(f in small_fan(), seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let v1 = f.generic_vector(&mut rng).unwrap();
        let v2 = f.generic_vector(&mut rng).unwrap();
        prop_assert_eq!(f.degree_at(&v1).unwrap(), f.degree_at(&v2).unwrap());
    }

    #[test]
    fn routes_agree(f in small_fan(), seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let a = volume_poly_index(&f, &mut rng).unwrap();
        let v = f.generic_vector(&mut rng).unwrap();
        let b = volume_poly_lawrence(&f, &v).unwrap();
        prop_assert_eq!(a.form, b.form);
    }

    #[test]
    fn volume_is_translation_invariant(f in small_fan()) {
        // Σ_i λ_j(i) ∂_i V = 0 for each coordinate j.
        let v = volume_poly_index(&f, &mut seeded_rng(1)).unwrap().form;
        for j in 0..f.n() {
            let mut acc = multifan_core::exactmath::HomogeneousForm::zero(f.m(), v.degree().saturating_sub(1));
            for i in 0..f.m() {
                acc = acc.add(&v.partial(i).scale(&f.lambda()[i][j]));
            }
            prop_assert!(acc.is_zero());
        }
    }

    #[test]
    fn volume_is_linear_in_the_fan(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        let mut rng = seeded_rng(seed);
        let f = random_complete_fan(&mut rng, 2, 5, 4, 2);
        let lambda = f.lambda().to_vec();
        let g = MultiFan::elementary_on(2, lambda.clone(), &[0, 1, 2]);
        prop_assume!(g.is_ok());
        let g = g.unwrap();
        let sum = MultiFan::linear_combine(&[(q(a), &f), (q(b), &g)]).unwrap();
        prop_assume!(!sum.is_zero());
        let vf = volume_poly_index(&f, &mut rng).unwrap().form;
        let vg = volume_poly_index(&g, &mut rng).unwrap().form;
        let vs = volume_poly_index(&sum, &mut rng).unwrap().form;
        prop_assert_eq!(vs, vf.scale(&q(a)).add(&vg.scale(&q(b))));
    }

    #[test]
    fn face_volume_matches_projection(f in small_fan(), seed in any::<u64>(), c in prop::collection::vec(1i64..=4, 6)) {
        let mut rng = seeded_rng(seed);
        let v = volume_poly_index(&f, &mut rng).unwrap().form;
        let c: QVector = c.iter().take(f.m()).map(|&x| q(x)).collect();
        for j in f.complex().faces(1).into_iter().chain(f.complex().faces(2)) {
            let proj = f.project(&j).unwrap();
            let lhs = derivative(&v, &j).evaluate(&c);
            let rhs = if proj.fan.n() == 0 || !proj.fan.is_zero() {
                let vj = volume_poly_index(&proj.fan, &mut rng);
                match vj {
                    Ok(p) => p.form.evaluate(&proj.face_parameters(&c)) / proj.jacobian(&f),
                    Err(multifan_core::Error::ZeroPolynomial) => Rational::zero(),
                    Err(e) => panic!("{e}"),
                }
            } else {
                Rational::zero()
            };
            prop_assert_eq!(lhs, rhs, "face {:?}", j);
        }
    }

    #[test]
    fn projection_is_hereditary(f in small_fan()) {
        // the link of I ∪ J is reached by projecting along I and then along J
        for s in f.complex().faces(2) {
            let direct = f.project(&s).unwrap();
            let step = f.project(&s[..1]).unwrap().project(&s[1..]).unwrap();
            prop_assert_eq!(direct.fan.complex().facets().to_vec(), step.fan.complex().facets().to_vec());
            prop_assert_eq!(direct.jacobian(&f), step.jacobian(&f));
        }
    }

    #[test]
    fn stellar_flip_is_undone(f in small_fan(), x in prop::collection::vec(-5i64..=5, 3)) {
        let facet = f.facets()[0].clone();
        let r = f.flip_stellar(&facet, qvec(&x[..f.n()]));
        prop_assume!(r.is_ok());
        let r = r.unwrap();
        prop_assert_eq!((r.p, r.q), (1, f.n()));
        let back = r.fan.flip_unstellar(f.m()).unwrap();
        prop_assert_eq!((back.p, back.q), (f.n(), 1));
        let diff = MultiFan::linear_combine(&[(q(1), &back.fan), (q(-1), &f.with_extra_vertices(&[qvec(&x[..f.n()])]).unwrap())]).unwrap();
        prop_assert!(diff.is_zero());
    }

    #[test]
    fn euler_characteristic(facets in prop::collection::btree_set(prop::collection::btree_set(0usize..6, 1..=3), 1..6)) {
        let k = SimplicialComplex::new(6, facets.into_iter().map(|s| s.into_iter().collect())).unwrap();
        let f = k.f_vector_augmented();
        let b = k.reduced_betti_augmented();
        let alt = |xs: &[usize]| xs.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { -(x as i64) } else { x as i64 }).sum::<i64>();
        prop_assert_eq!(alt(&f), alt(&b));
    }

    #[test]
    fn duality_algebra_is_symmetric(f in small_fan()) {
        let v = volume_poly_index(&f, &mut seeded_rng(2)).unwrap().form;
        let dm = multifan_core::algebra::DualityAlgebra::build(&v).unwrap().dims();
        let rev: Vec<usize> = dm.iter().rev().copied().collect();
        prop_assert_eq!(dm, rev);
    }
}
