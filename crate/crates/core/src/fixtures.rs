//! Standard multi-fans used throughout the test suites and the CLI, plus a
//! seeded generator of random complete multi-fans.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactmath::{q, qvec, subsets, subsets_of, QVector};
use crate::multifan::{det_of, MultiFan};
use crate::simplicial::{Simplex, SimplicialComplex};

/// Normal fan of the simplex in the plane: `(1,0), (0,1), (-1,-1)`.
pub fn cp2() -> MultiFan {
    MultiFan::from_geometric_weights(
        2,
        vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, -1])],
        [(vec![0, 1], q(1)), (vec![1, 2], q(1)), (vec![0, 2], q(1))],
    )
    .expect("fixture is valid")
}

/// Normal fan of the `n`-cube: `λ(i) = e_i`, `λ(i+n) = -e_i`.
pub fn cross_polytope(n: usize) -> MultiFan {
    let mut lambda = Vec::with_capacity(2 * n);
    for sgn in [1, -1] {
        for i in 0..n {
            let mut v = vec![q(0); n];
            v[i] = q(sgn);
            lambda.push(v);
        }
    }
    let weights = (0u64..1 << n).map(|mask| {
        let s: Simplex = (0..n)
            .map(|i| if mask >> i & 1 == 1 { i + n } else { i })
            .collect();
        let mut s = s;
        s.sort_unstable();
        (s, q(1))
    });
    MultiFan::from_geometric_weights(n, lambda, weights).expect("fixture is valid")
}

pub fn square() -> MultiFan {
    cross_polytope(2)
}

pub fn octahedron() -> MultiFan {
    cross_polytope(3)
}

/// Five rays covering the plane twice.
pub fn star() -> MultiFan {
    MultiFan::from_geometric_weights(
        2,
        vec![
            qvec(&[1, 0]),
            qvec(&[-2, 1]),
            qvec(&[1, -2]),
            qvec(&[0, 1]),
            qvec(&[-1, -1]),
        ],
        [
            (vec![0, 1], q(1)),
            (vec![1, 2], q(1)),
            (vec![2, 3], q(1)),
            (vec![3, 4], q(1)),
            (vec![0, 4], q(1)),
        ],
    )
    .expect("fixture is valid")
}

/// Seven-vertex triangulation of the torus.
pub fn torus_complex() -> SimplicialComplex {
    let mut f = Vec::new();
    for i in 0..7 {
        f.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        f.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::new(7, f).expect("fixture is valid")
}

/// Vectors `(t, t^2, …, t^n)` for `t = 1..=m`; any `n` of them are independent.
pub fn moment_curve(n: usize, m: usize) -> Vec<QVector> {
    (1..=m as i64)
        .map(|t| (1..=n as u32).map(|k| q(t.pow(k))).collect())
        .collect()
}

/// Fan supported on an orientable pseudomanifold, weighted by its
/// fundamental chain.
pub fn fundamental_fan(k: &SimplicialComplex, lambda: Vec<QVector>) -> Result<MultiFan> {
    let cls = k.classify();
    let z = cls
        .fundamental_chain
        .ok_or_else(|| Error::Precondition("complex is not an orientable pseudomanifold".into()))?;
    let n = (k.dim() + 1) as usize;
    MultiFan::new(n, lambda, z.terms().map(|(s, w)| (s.clone(), w.clone())))
}

/// The torus with moment-curve characteristic vectors.
pub fn torus() -> MultiFan {
    fundamental_fan(&torus_complex(), moment_curve(3, 7)).expect("fixture is valid")
}

/// Boundary of the icosahedron: apex 0, upper ring 1..=5, lower ring 6..=10,
/// bottom 11.
pub fn icosahedron_complex() -> SimplicialComplex {
    let u = |k: usize| 1 + k % 5;
    let l = |k: usize| 6 + k % 5;
    let mut f = Vec::new();
    for k in 0..5 {
        f.push(vec![0, u(k), u(k + 1)]);
        f.push(vec![11, l(k), l(k + 1)]);
        f.push(vec![u(k), u(k + 1), l(k)]);
        f.push(vec![u(k + 1), l(k), l(k + 1)]);
    }
    SimplicialComplex::new(12, f).expect("fixture is valid")
}

/// Boundary of the octahedron (antipodal pairs `i`, `i+3`).
pub fn octahedron_complex() -> SimplicialComplex {
    octahedron().complex()
}

/// Random integer vectors in `[-bound, bound]^n`, rejecting samples where
/// some facet of `k` would violate the star-condition.
pub fn random_lambda_for<R: Rng + ?Sized>(
    rng: &mut R,
    k: &SimplicialComplex,
    n: usize,
    bound: i64,
) -> Vec<QVector> {
    loop {
        let lambda: Vec<QVector> = (0..k.m())
            .map(|_| (0..n).map(|_| q(rng.gen_range(-bound..=bound))).collect())
            .collect();
        if k.facets().iter().all(|f| !det_of(&lambda, f).is_zero()) {
            return lambda;
        }
    }
}

/// Random complete multi-fan: integer vectors with entries in
/// `[-bound, bound]` and a random integer combination of elementary fans on
/// `terms` random general-position `(n+1)`-subsets. Never returns the zero fan.
pub fn random_complete_fan<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    bound: i64,
    terms: usize,
) -> MultiFan {
    assert!(m > n, "need at least n+1 vertices");
    loop {
        let lambda: Vec<QVector> = (0..m)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-bound..=bound))).collect())
            .collect();
        let candidates: Vec<Vec<usize>> = subsets(m, n + 1)
            .into_iter()
            .filter(|s| {
                subsets_of(s, n)
                    .iter()
                    .all(|f| !det_of(&lambda, f).is_zero())
            })
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let mut acc = MultiFan::new(n, lambda.clone(), []).expect("empty fan is valid");
        for _ in 0..terms {
            let s = candidates.choose(rng).expect("non-empty");
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-3..=3);
            }
            let e = MultiFan::elementary_on(n, lambda.clone(), s).expect("general position");
            acc = MultiFan::linear_combine(&[(q(1), &acc), (q(c), &e)]).expect("same vectors");
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}
