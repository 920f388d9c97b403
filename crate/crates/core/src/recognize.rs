//! Deciding whether a form is the volume polynomial of some complete
//! multi-fan, and producing a witness fan when it is.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::DualityAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{
    factorial, monomials, q, subsets, DiffOp, Exponent, HomogeneousForm, QMatrix, QVector, Rational,
};
use crate::multifan::MultiFan;
use crate::simplicial::Simplex;
use crate::volume::volume_poly_index;

/// Retry budget for sampling a generic subspace of the annihilator.
pub const RECONSTRUCT_ATTEMPTS: usize = 64;

/// Linear operators `Σ x_i ∂_i` killing `Ψ`, one coefficient vector each.
pub fn ann_square(psi: &HomogeneousForm) -> Result<Vec<QVector>> {
    if psi.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = psi.nvars();
    let target = monomials(m, psi.degree().saturating_sub(1));
    let cols: Vec<QVector> = (0..m)
        .map(|i| {
            let d = psi.partial(i);
            target.iter().map(|b| d.coefficient(b)).collect()
        })
        .collect();
    Ok(QMatrix::from_columns(&cols, target.len()).kernel_basis())
}

/// Sets `I`, `1 <= |I| <= n`, on which the coordinate projection of the span
/// of `basis` is not onto.
pub fn dep_sets(basis: &[QVector], m: usize, n: usize) -> Vec<Simplex> {
    let mat = QMatrix::from_rows(basis, m);
    let mut out = Vec::new();
    for k in 1..=n.min(m) {
        for s in subsets(m, k) {
            if mat.select_columns(&s).rank() < k {
                out.push(s);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub is_volume_polynomial: bool,
    pub n: usize,
    pub ann_dim: usize,
    pub dep_sets: Vec<Simplex>,
    /// Dependent sets `I` with `∂_I Ψ ≠ 0`.
    pub violations: Vec<Simplex>,
    pub reason: String,
}

pub fn is_volume_polynomial(psi: &HomogeneousForm) -> Result<Verdict> {
    let n = psi.degree() as usize;
    let m = psi.nvars();
    let ann = ann_square(psi)?;
    let dep = dep_sets(&ann, m, n);
    if ann.len() < n {
        return Ok(Verdict {
            is_volume_polynomial: false,
            n,
            ann_dim: ann.len(),
            dep_sets: dep,
            violations: Vec::new(),
            reason: format!("dim Ann^2 = {} < n = {n}", ann.len()),
        });
    }
    let violations: Vec<Simplex> = dep
        .iter()
        .filter(|s| !DiffOp::product_of(m, s).apply(psi).is_zero())
        .cloned()
        .collect();
    let ok = violations.is_empty();
    Ok(Verdict {
        is_volume_polynomial: ok,
        n,
        ann_dim: ann.len(),
        dep_sets: dep,
        reason: if ok {
            String::from("both conditions hold")
        } else {
            format!(
                "{} dependent sets with non-vanishing derivative",
                violations.len()
            )
        },
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub fan: MultiFan,
    /// Dimension of the affine space of weight solutions on the chosen
    /// characteristic function.
    pub solution_dim: usize,
    pub attempts: usize,
}

/// Witness multi-fan with volume polynomial exactly `psi`.
pub fn reconstruct<R: Rng + ?Sized>(psi: &HomogeneousForm, rng: &mut R) -> Result<Reconstruction> {
    let verdict = is_volume_polynomial(psi)?;
    if !verdict.is_volume_polynomial {
        return Err(Error::Precondition(format!(
            "not a volume polynomial: {}",
            verdict.reason
        )));
    }
    let n = verdict.n;
    let m = psi.nvars();
    let ann = ann_square(psi)?;
    let target: BTreeSet<Simplex> = verdict.dep_sets.iter().cloned().collect();
    let mut bound = 4i64;
    for attempt in 1..=RECONSTRUCT_ATTEMPTS {
        let l: Vec<QVector> = if ann.len() == n {
            ann.clone()
        } else {
            (0..n)
                .map(|_| {
                    let coeffs: Vec<Rational> = (0..ann.len())
                        .map(|_| q(rng.gen_range(-bound..=bound)))
                        .collect();
                    (0..m)
                        .map(|i| {
                            coeffs
                                .iter()
                                .zip(&ann)
                                .fold(Rational::zero(), |acc, (c, v)| acc + c * &v[i])
                        })
                        .collect()
                })
                .collect()
        };
        bound = bound.saturating_mul(2);
        if QMatrix::from_rows(&l, m).rank() < n {
            continue;
        }
        let dep: BTreeSet<Simplex> = dep_sets(&l, m, n).into_iter().collect();
        if dep != target {
            continue;
        }
        let lambda: Vec<QVector> = (0..m)
            .map(|i| l.iter().map(|row| row[i].clone()).collect())
            .collect();
        let (fan, solution_dim) = solve_weights(psi, n, lambda, rng)?;
        return Ok(Reconstruction {
            fan,
            solution_dim,
            attempts: attempt,
        });
    }
    Err(Error::Internal(format!(
        "no generic annihilator subspace found in {RECONSTRUCT_ATTEMPTS} attempts"
    )))
}

/// Solves jointly for closed weights on the matroid complex of `lambda` whose
/// Lawrence expansion equals `psi`.
fn solve_weights<R: Rng + ?Sized>(
    psi: &HomogeneousForm,
    n: usize,
    lambda: Vec<QVector>,
    rng: &mut R,
) -> Result<(MultiFan, usize)> {
    let m = lambda.len();
    let probe = MultiFan::new(n, lambda.clone(), [])?;
    let facets: Vec<Simplex> = subsets(m, n)
        .into_iter()
        .filter(|s| !probe.det(s).is_zero())
        .collect();
    let all = MultiFan::new(
        n,
        lambda.clone(),
        facets.iter().map(|s| (s.clone(), Rational::one())),
    )?;
    let v = all.generic_vector(rng)?;
    let nfact = Rational::from_integer(factorial(n as u32));
    let mut rows: BTreeMap<Exponent, QVector> = BTreeMap::new();
    for e in psi.terms().map(|(e, _)| e.clone()) {
        rows.insert(e, vec![Rational::zero(); facets.len()]);
    }
    for (col, s) in facets.iter().enumerate() {
        let alpha = all.coordinates(s, &v).expect("matroid facets are bases");
        let prod = alpha.iter().fold(Rational::one(), |a, b| a * b);
        let scale = (all.det(s) * prod * &nfact).recip();
        let lin: Vec<(usize, Rational)> = s.iter().copied().zip(alpha.iter().cloned()).collect();
        let p = HomogeneousForm::power_of_linear(m, &lin, n as u32);
        for (e, c) in p.terms() {
            rows.entry(e.clone())
                .or_insert_with(|| vec![Rational::zero(); facets.len()])[col] += c * &scale;
        }
    }
    let mut eqs: Vec<QVector> = Vec::new();
    let mut rhs: QVector = Vec::new();
    for (e, row) in rows {
        rhs.push(psi.coefficient(&e));
        eqs.push(row);
    }
    if n > 0 {
        let index: BTreeMap<&Simplex, usize> =
            facets.iter().enumerate().map(|(i, s)| (s, i)).collect();
        for ridge in subsets(m, n - 1) {
            let mut row = vec![Rational::zero(); facets.len()];
            let mut any = false;
            for x in 0..m {
                if ridge.binary_search(&x).is_ok() {
                    continue;
                }
                let mut s = ridge.clone();
                let pos = s.partition_point(|&y| y < x);
                s.insert(pos, x);
                if let Some(&c) = index.get(&s) {
                    row[c] = if pos % 2 == 0 { q(1) } else { q(-1) };
                    any = true;
                }
            }
            if any {
                eqs.push(row);
                rhs.push(Rational::zero());
            }
        }
    }
    let mat = QMatrix::from_rows(&eqs, facets.len());
    let sol = mat.solve(&rhs).ok_or_else(|| {
        Error::Internal("weight system is inconsistent for a certified volume polynomial".into())
    })?;
    let solution_dim = facets.len() - mat.rank();
    let fan = MultiFan::new(n, lambda, facets.into_iter().zip(sol))?;
    if !fan.is_complete() {
        return Err(Error::Internal(
            "reconstructed weights are not closed".into(),
        ));
    }
    if volume_poly_index(&fan, rng)?.form != *psi {
        return Err(Error::Internal(
            "reconstructed fan has a different volume polynomial".into(),
        ));
    }
    Ok((fan, solution_dim))
}

/// Top-degree integration functional of an algebra on `p` degree-one
/// generators: values `∫ x^a` for exponents `a` of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub n: usize,
    pub p: usize,
    pub values: BTreeMap<Exponent, Rational>,
}

impl Functional {
    /// `Σ_a ∫x^a · c^a / a!`.
    pub fn form(&self) -> HomogeneousForm {
        let mut f = HomogeneousForm::zero(self.p, self.n as u32);
        for (a, x) in &self.values {
            let af = a
                .iter()
                .fold(num_bigint::BigInt::from(1), |acc, &k| acc * factorial(k));
            f.add_term(a.clone(), x / Rational::from_integer(af));
        }
        f
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraRealization {
    pub fan: MultiFan,
    pub source_dims: Vec<usize>,
    pub fan_dims: Vec<usize>,
    /// Ranks of the pairing matrices agree degree by degree.
    pub pairing_ranks_equal: bool,
    pub solution_dim: usize,
}

/// Realizes a Poincaré duality algebra generated in degree two as the algebra
/// of a multi-fan on `p + n` vertices.
pub fn from_poincare_algebra<R: Rng + ?Sized>(
    f: &Functional,
    rng: &mut R,
) -> Result<AlgebraRealization> {
    for a in f.values.keys() {
        if a.len() != f.p || a.iter().sum::<u32>() as usize != f.n {
            return Err(Error::Dimension(format!(
                "exponent {a:?} is not of degree {} in {} variables",
                f.n, f.p
            )));
        }
    }
    let psi_p = f.form();
    if psi_p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let source = DualityAlgebra::build(&psi_p)?;
    if source.dims()[1] < f.p {
        return Err(Error::Precondition(format!(
            "the functional does not define an algebra on {} independent generators (d_1 = {})",
            f.p,
            source.dims()[1]
        )));
    }
    let m = f.p + f.n;
    let mut bound = 4i64;
    let g = loop {
        let rows: Vec<QVector> = (0..m)
            .map(|_| (0..f.p).map(|_| q(rng.gen_range(-bound..=bound))).collect())
            .collect();
        let gm = QMatrix::from_rows(&rows, f.p);
        if subsets(m, f.p)
            .iter()
            .all(|s| !gm.select_rows(s).det().is_zero())
        {
            break gm;
        }
        bound = bound.saturating_mul(2);
    };
    let psi = psi_p.substitute_linear(&g.transpose());
    let rec = reconstruct(&psi, rng)?;
    let target = DualityAlgebra::build(&volume_poly_index(&rec.fan, rng)?.form)?;
    let n = f.n;
    let pairing_ranks_equal =
        (0..=n).all(|k| source.pairing_matrix(k).rank() == target.pairing_matrix(k).rank());
    Ok(AlgebraRealization {
        fan: rec.fan,
        source_dims: source.dims(),
        fan_dims: target.dims(),
        pairing_ranks_equal,
        solution_dim: rec.solution_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{qr, qvec};
    use rand::SeedableRng;

    fn sq_form() -> HomogeneousForm {
        HomogeneousForm::linear(&qvec(&[1, 0, 1, 0]))
            .mul(&HomogeneousForm::linear(&qvec(&[0, 1, 0, 1])))
    }

    #[test]
    fn square_annihilator() {
        let ann = ann_square(&sq_form()).unwrap();
        assert_eq!(ann, vec![qvec(&[-1, 0, 1, 0]), qvec(&[0, -1, 0, 1])]);
        let dep = dep_sets(&ann, 4, 2);
        assert!(dep.contains(&vec![0, 2]) && dep.contains(&vec![1, 3]));
        assert!(!dep.iter().any(|s| s.len() == 1));
    }

    #[test]
    fn negative_control() {
        let v = is_volume_polynomial(&HomogeneousForm::monomial(vec![1, 1], q(1))).unwrap();
        assert!(!v.is_volume_polynomial);
        assert_eq!(v.ann_dim, 0);
    }

    #[test]
    fn reconstruct_cp2() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let psi = HomogeneousForm::linear(&qvec(&[1, 1, 1]))
            .pow(2)
            .scale(&qr(1, 2));
        let r = reconstruct(&psi, &mut rng).unwrap();
        assert!(r.fan.is_complete());
    }

    #[test]
    fn cp2_algebra_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let f = Functional {
            n: 2,
            p: 1,
            values: [(vec![2], q(1))].into_iter().collect(),
        };
        let r = from_poincare_algebra(&f, &mut rng).unwrap();
        assert_eq!(r.fan_dims, vec![1, 1, 1]);
        assert!(r.pairing_ranks_equal);
    }
}
