//! Volume polynomials of complete multi-fans, computed either from the index
//! map (monomial integrals) or from a Lawrence-type sum over facets.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactmath::{
    factorial, monomials, subsets, DiffOp, Exponent, HomogeneousForm, QMatrix, QVector, Rational,
};
use crate::multifan::{det_of, MultiFan};
use crate::simplicial::{Simplex, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Index,
    Lawrence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePolynomial {
    pub form: HomogeneousForm,
    pub route: Route,
    /// Generic vectors used during the computation.
    pub generic_vectors: Vec<QVector>,
}

fn a_factorial(a: &[u32]) -> BigInt {
    a.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k))
}

fn rpow(x: &Rational, e: i64) -> Rational {
    let mut r = Rational::one();
    let b = if e < 0 { x.recip() } else { x.clone() };
    for _ in 0..e.unsigned_abs() {
        r *= &b;
    }
    r
}

/// Per-facet contribution `w/|det| · Π α_i^{a_i - 1}` summed over facets
/// containing the support of `a`, at a fixed generic `v`.
pub fn integrate_monomial_at(fan: &MultiFan, a: &[u32], v: &[Rational]) -> Result<Rational> {
    let n = fan.n();
    if a.len() != fan.m() || a.iter().sum::<u32>() as usize != n {
        return Err(Error::Dimension(format!(
            "monomial must have {} entries summing to {n}",
            fan.m()
        )));
    }
    fan.check_generic(v)?;
    let supp: Vec<usize> = (0..a.len()).filter(|&i| a[i] > 0).collect();
    let mut acc = Rational::zero();
    for (s, _) in fan.weights() {
        if !supp.iter().all(|i| s.binary_search(i).is_ok()) {
            continue;
        }
        let alpha = fan
            .coordinates(s, v)
            .expect("supported simplices are bases");
        let mut t = fan.normalized_weight(s);
        for (j, &i) in s.iter().enumerate() {
            t *= rpow(&alpha[j], a[i] as i64 - 1);
        }
        acc += t;
    }
    Ok(acc)
}

/// Two independent generic vectors for the constancy certificate.
fn generic_pair<R: Rng + ?Sized>(fan: &MultiFan, rng: &mut R) -> Result<(QVector, QVector)> {
    let v1 = fan.generic_vector(rng)?;
    let v2 = fan.generic_vector_avoiding(rng, &[v1.clone()])?;
    Ok((v1, v2))
}

/// `∫ x^a` over the fundamental class, certified at two generic vectors.
pub fn integrate_monomial<R: Rng + ?Sized>(
    fan: &MultiFan,
    a: &[u32],
    rng: &mut R,
) -> Result<Rational> {
    fan.require_complete()?;
    if fan.n() == 0 {
        if a.len() != fan.m() || a.iter().any(|&x| x != 0) {
            return Err(Error::Dimension("monomial must have degree 0".into()));
        }
        return Ok(fan.weight(&[]));
    }
    let (v1, v2) = generic_pair(fan, rng)?;
    let x = integrate_monomial_at(fan, a, &v1)?;
    let y = integrate_monomial_at(fan, a, &v2)?;
    if x != y {
        return Err(Error::Internal(format!(
            "integral of {a:?} depends on the generic vector: {x} vs {y}"
        )));
    }
    Ok(x)
}

/// Monomials of degree `n` supported on some facet, in ascending order.
fn supported_monomials(fan: &MultiFan) -> Vec<Exponent> {
    let mut set = alloc::collections::BTreeSet::new();
    let n = fan.n() as u32;
    for (s, _) in fan.weights() {
        for split in monomials(s.len(), n) {
            let mut e = vec![0u32; fan.m()];
            for (j, &i) in s.iter().enumerate() {
                e[i] = split[j];
            }
            set.insert(e);
        }
    }
    set.into_iter().collect()
}

/// Volume polynomial via monomial integrals, `coef(c^a) = ∫x^a / a!`.
pub fn volume_poly_index<R: Rng + ?Sized>(fan: &MultiFan, rng: &mut R) -> Result<VolumePolynomial> {
    fan.require_complete()?;
    let m = fan.m();
    let n = fan.n();
    if n == 0 {
        return Ok(VolumePolynomial {
            form: HomogeneousForm::constant(m, fan.weight(&[])),
            route: Route::Index,
            generic_vectors: Vec::new(),
        });
    }
    let (v1, v2) = generic_pair(fan, rng)?;
    let mut sums: [BTreeMap<Exponent, Rational>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for (s, _) in fan.weights() {
        let nw = fan.normalized_weight(s);
        for (slot, v) in [&v1, &v2].into_iter().enumerate() {
            let alpha = fan
                .coordinates(s, v)
                .expect("supported simplices are bases");
            for split in monomials(n, n as u32) {
                let mut e = vec![0u32; m];
                let mut t = nw.clone();
                for (j, &i) in s.iter().enumerate() {
                    e[i] = split[j];
                    t *= rpow(&alpha[j], split[j] as i64 - 1);
                }
                *sums[slot].entry(e).or_insert_with(Rational::zero) += t;
            }
        }
    }
    let mut form = HomogeneousForm::zero(m, n as u32);
    for a in supported_monomials(fan) {
        let x = sums[0].get(&a).cloned().unwrap_or_else(Rational::zero);
        let y = sums[1].get(&a).cloned().unwrap_or_else(Rational::zero);
        if x != y {
            return Err(Error::Internal(format!(
                "integral of {a:?} depends on the generic vector: {x} vs {y}"
            )));
        }
        let f = Rational::from_integer(a_factorial(&a));
        form.add_term(a, x / f);
    }
    Ok(VolumePolynomial {
        form,
        route: Route::Index,
        generic_vectors: vec![v1, v2],
    })
}

/// Lawrence-type formula at a fixed generic `v`.
pub fn volume_poly_lawrence(fan: &MultiFan, v: &[Rational]) -> Result<VolumePolynomial> {
    fan.require_complete()?;
    let m = fan.m();
    let n = fan.n();
    if n == 0 {
        return Ok(VolumePolynomial {
            form: HomogeneousForm::constant(m, fan.weight(&[])),
            route: Route::Lawrence,
            generic_vectors: Vec::new(),
        });
    }
    fan.check_generic(v)?;
    let nfact = Rational::from_integer(factorial(n as u32));
    let mut form = HomogeneousForm::zero(m, n as u32);
    for (s, _) in fan.weights() {
        let alpha = fan
            .coordinates(s, v)
            .expect("supported simplices are bases");
        let prod = alpha.iter().fold(Rational::one(), |a, b| a * b);
        let scale = fan.normalized_weight(s) / (prod * &nfact);
        let lin: Vec<(usize, Rational)> = s.iter().copied().zip(alpha.iter().cloned()).collect();
        let p = HomogeneousForm::power_of_linear(m, &lin, n as u32);
        form = form.add(&p.scale(&scale));
    }
    Ok(VolumePolynomial {
        form,
        route: Route::Lawrence,
        generic_vectors: vec![v.to_vec()],
    })
}

/// Lawrence route with a seeded generic vector.
pub fn volume_poly_lawrence_seeded<R: Rng + ?Sized>(
    fan: &MultiFan,
    rng: &mut R,
) -> Result<VolumePolynomial> {
    fan.require_complete()?;
    if fan.n() == 0 {
        return volume_poly_lawrence(fan, &[]);
    }
    let v = fan.generic_vector(rng)?;
    volume_poly_lawrence(fan, &v)
}

/// `∂_J V`.
pub fn derivative(v: &HomogeneousForm, j: &[usize]) -> HomogeneousForm {
    DiffOp::product_of(v.nvars(), j).apply(v)
}

/// `∂_J V(c)`, the face volume of `F_J` divided by the covolume of `λ(J)`.
pub fn normalized_face_volume(v: &HomogeneousForm, c: &[Rational], j: &[usize]) -> Rational {
    derivative(v, j).evaluate(c)
}

/// `(Σ c_i ∂_i)^k V`.
pub fn chern_power(v: &HomogeneousForm, c: &[Rational], k: u32) -> HomogeneousForm {
    DiffOp::linear(c).pow(k).apply(v)
}

/// Support of a volume polynomial: the `n`-sets `J` with `∂_J V ≠ 0`.
pub fn support_complex(v: &HomogeneousForm) -> SimplicialComplex {
    let n = v.degree() as usize;
    let m = v.nvars();
    let facets = subsets(m, n).into_iter().filter(|s| {
        let mut e = vec![0u32; m];
        for &i in s {
            e[i] = 1;
        }
        !v.coefficient(&e).is_zero()
    });
    SimplicialComplex::new(m, facets).expect("subsets are valid simplices")
}

/// `∫ x^a` read off a volume polynomial.
fn integral_from(v: &HomogeneousForm, a: &[u32]) -> Rational {
    v.coefficient(a) * Rational::from_integer(a_factorial(a))
}

/// Recovers a characteristic function (and weights) from a volume polynomial
/// whose support is an oriented strongly connected pseudomanifold, starting
/// from the vectors `seed_vectors` on the facet `seed`.
pub fn recover_lambda<R: Rng + ?Sized>(
    v: &HomogeneousForm,
    seed: &[usize],
    seed_vectors: &[QVector],
    rng: &mut R,
) -> Result<MultiFan> {
    if v.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = v.degree() as usize;
    let m = v.nvars();
    if seed.len() != n || seed_vectors.len() != n || seed_vectors.iter().any(|x| x.len() != n) {
        return Err(Error::Dimension(format!(
            "seed must be {n} vectors of length {n} on {n} vertices"
        )));
    }
    let k = support_complex(v);
    let mut sorted_seed = seed.to_vec();
    sorted_seed.sort_unstable();
    if !k.facets().contains(&sorted_seed) {
        return Err(Error::Precondition(format!(
            "seed {seed:?} is not a facet of the support"
        )));
    }
    if QMatrix::from_rows(seed_vectors, n).det().is_zero() {
        return Err(Error::Precondition("seed vectors are dependent".into()));
    }
    let cls = k.classify();
    if !cls.is_pseudomanifold || !cls.is_orientable {
        return Err(Error::Precondition(
            "support is not an oriented strongly connected pseudomanifold".into(),
        ));
    }
    let mut lambda: Vec<Option<QVector>> = vec![None; m];
    for (i, x) in seed.iter().zip(seed_vectors) {
        lambda[*i] = Some(x.clone());
    }
    let mut by_ridge: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
    for f in k.facets() {
        for i in 0..n {
            let mut r = f.clone();
            r.remove(i);
            by_ridge.entry(r).or_default().push(f.clone());
        }
    }
    let mut queue = VecDeque::from([sorted_seed]);
    let mut done = alloc::collections::BTreeSet::new();
    while let Some(f) = queue.pop_front() {
        if !done.insert(f.clone()) {
            continue;
        }
        for i in 0..n {
            let mut ridge = f.clone();
            let i1 = ridge.remove(i);
            let other = by_ridge[&ridge]
                .iter()
                .find(|g| **g != f)
                .expect("pseudomanifold ridge")
                .clone();
            let i2 = *other
                .iter()
                .find(|x| ridge.binary_search(x).is_err())
                .expect("adjacent facet");
            if lambda[i2].is_none() {
                let pair = |a: usize| {
                    let mut e = vec![0u32; m];
                    for &j in &ridge {
                        e[j] = 1;
                    }
                    e[a] += 1;
                    integral_from(v, &e)
                };
                let mut acc = vec![Rational::zero(); n];
                for &j in ridge.iter().chain(core::iter::once(&i1)) {
                    let w = pair(j);
                    let lj = lambda[j]
                        .as_ref()
                        .expect("vertices of visited facets are known");
                    for (a, b) in acc.iter_mut().zip(lj) {
                        *a += &w * b;
                    }
                }
                let d = pair(i2);
                if d.is_zero() {
                    return Err(Error::Internal(
                        "vanishing intersection number across a ridge".into(),
                    ));
                }
                lambda[i2] = Some(acc.into_iter().map(|x| -x / &d).collect());
            }
            queue.push_back(other);
        }
    }
    let lambda: Vec<QVector> = lambda
        .into_iter()
        .map(|x| x.unwrap_or_else(|| vec![Rational::zero(); n]))
        .collect();
    let mut weights = Vec::new();
    for f in k.facets() {
        let d = det_of(&lambda, f);
        if d.is_zero() {
            return Err(Error::Internal(format!(
                "recovered vectors on {f:?} are dependent"
            )));
        }
        let mut e = vec![0u32; m];
        for &j in f {
            e[j] = 1;
        }
        weights.push((f.clone(), v.coefficient(&e) * d));
    }
    let fan = MultiFan::new(n, lambda, weights)?;
    let back = volume_poly_index(&fan, rng)?;
    if back.form != *v {
        return Err(Error::Internal(
            "recovered fan does not reproduce the volume polynomial".into(),
        ));
    }
    Ok(fan)
}
