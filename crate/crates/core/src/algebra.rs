//! Poincaré duality algebras `D / Ann Ψ` of non-zero homogeneous forms, with
//! classes represented by their Macaulay-dual coordinates, plus the
//! Stanley-Reisner and structure-theorem cross-checks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactmath::{
    binomial, factorial, monomials, DiffOp, Exponent, HomogeneousForm, QMatrix, QVector, Rational,
};
use crate::multifan::{det_of, MultiFan};
use crate::simplicial::{CombinatorialProfile, SimplicialComplex};
use crate::volume::volume_poly_index;

static BUILDS: AtomicUsize = AtomicUsize::new(0);

/// Number of algebras built by this process so far.
pub fn algebras_built() -> usize {
    BUILDS.load(Ordering::Relaxed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Degree {
    monomials: Vec<Exponent>,
    dim: usize,
    /// Indices into `monomials` whose classes form a basis.
    reps: Vec<usize>,
    /// Coordinates of the basis classes, as columns.
    rep_coords: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityAlgebra {
    psi: HomogeneousForm,
    degrees: Vec<Degree>,
    /// `pairing[k]`: matrix of `(r_i r'_j) Ψ` for bases of degrees `k`, `n-k`.
    pairing: Vec<QMatrix>,
}

/// Class of operator degree `degree` (cohomological degree `2 * degree`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraClass {
    pub degree: usize,
    /// `(∂^b D Ψ)` over monomials `b` of degree `n - degree`.
    pub coords: QVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub class: AlgebraClass,
    /// Set when the degrees sum past `n`; the class is then zero.
    pub overflow: bool,
}

/// `(∂^b F)` for all `b` of degree `deg F`: each equals `b! · coef_b`.
fn dual_coords(f: &HomogeneousForm, basis: &[Exponent]) -> QVector {
    basis
        .iter()
        .map(|b| {
            let c = f.coefficient(b);
            if c.is_zero() {
                c
            } else {
                c * Rational::from_integer(
                    b.iter()
                        .fold(num_bigint::BigInt::from(1), |a, &k| a * factorial(k)),
                )
            }
        })
        .collect()
}

impl DualityAlgebra {
    pub fn build(psi: &HomogeneousForm) -> Result<Self> {
        if psi.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = psi.degree() as usize;
        let m = psi.nvars();
        let mut degrees = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mons = monomials(m, k as u32);
            let target = monomials(m, (n - k) as u32);
            let cols: Vec<QVector> = mons
                .iter()
                .map(|a| dual_coords(&DiffOp::monomial(a.clone()).apply(psi), &target))
                .collect();
            let mat = QMatrix::from_columns(&cols, target.len());
            let reps = mat.rref().pivots;
            let rep_coords = mat.select_columns(&reps);
            degrees.push(Degree {
                monomials: mons,
                dim: reps.len(),
                reps,
                rep_coords,
            });
        }
        let mut alg = DualityAlgebra {
            psi: psi.clone(),
            degrees,
            pairing: Vec::new(),
        };
        for k in 0..=n {
            let a = alg.basis_ops(k);
            let b = alg.basis_ops(n - k);
            let mut p = QMatrix::zeros(a.len(), b.len());
            for (i, x) in a.iter().enumerate() {
                let xp = x.apply(psi);
                for (j, y) in b.iter().enumerate() {
                    p[(i, j)] = y.apply(&xp).coefficient(&vec![0; m]);
                }
            }
            alg.pairing.push(p);
        }
        let dm = alg.dims();
        assert!(
            dm.iter().eq(dm.iter().rev()),
            "graded dimensions not symmetric: {dm:?}"
        );
        assert_eq!((dm[0], dm[n]), (1, 1), "extreme dimensions must be 1");
        for (k, p) in alg.pairing.iter().enumerate() {
            assert_eq!(p.rank(), dm[k], "degenerate pairing in degree {k}");
        }
        BUILDS.fetch_add(1, Ordering::Relaxed);
        Ok(alg)
    }

    pub fn n(&self) -> usize {
        self.psi.degree() as usize
    }

    pub fn m(&self) -> usize {
        self.psi.nvars()
    }

    pub fn psi(&self) -> &HomogeneousForm {
        &self.psi
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    pub fn pairing_matrix(&self, k: usize) -> &QMatrix {
        &self.pairing[k]
    }

    /// Monomial operators whose classes form the chosen basis of degree `k`.
    pub fn basis_monomials(&self, k: usize) -> Vec<Exponent> {
        let d = &self.degrees[k];
        d.reps.iter().map(|&i| d.monomials[i].clone()).collect()
    }

    fn basis_ops(&self, k: usize) -> Vec<DiffOp> {
        self.basis_monomials(k)
            .into_iter()
            .map(DiffOp::monomial)
            .collect()
    }

    pub fn class_of(&self, op: &DiffOp) -> AlgebraClass {
        let n = self.n();
        let k = op.degree() as usize;
        if k > n {
            return self.zero_class(n);
        }
        let target = monomials(self.m(), (n - k) as u32);
        AlgebraClass {
            degree: k,
            coords: dual_coords(&op.apply(&self.psi), &target),
        }
    }

    pub fn zero_class(&self, degree: usize) -> AlgebraClass {
        let k = degree.min(self.n());
        AlgebraClass {
            degree: k,
            coords: vec![Rational::zero(); monomials(self.m(), (self.n() - k) as u32).len()],
        }
    }

    pub fn unit(&self) -> AlgebraClass {
        self.class_of(&DiffOp::identity(self.m()))
    }

    /// An operator representing `x`, as a combination of basis monomials.
    pub fn representative(&self, x: &AlgebraClass) -> Result<DiffOp> {
        let d = self
            .degrees
            .get(x.degree)
            .ok_or_else(|| Error::Dimension("class degree out of range".into()))?;
        let sol = d
            .rep_coords
            .solve(&x.coords)
            .ok_or_else(|| Error::Invalid("coordinates do not describe a class".into()))?;
        let mut f = HomogeneousForm::zero(self.m(), x.degree as u32);
        for (c, &i) in sol.into_iter().zip(&d.reps) {
            f.add_term(d.monomials[i].clone(), c);
        }
        Ok(DiffOp(f))
    }

    pub fn multiply(&self, x: &AlgebraClass, y: &AlgebraClass) -> Result<Product> {
        if x.degree + y.degree > self.n() {
            return Ok(Product {
                class: self.zero_class(self.n()),
                overflow: true,
            });
        }
        let op = self.representative(x)?.compose(&self.representative(y)?);
        Ok(Product {
            class: self.class_of(&op),
            overflow: false,
        })
    }

    /// The number `DΨ` for a top-degree class.
    pub fn integrate_top(&self, x: &AlgebraClass) -> Result<Rational> {
        if x.degree != self.n() {
            return Err(Error::Dimension(
                "integration needs a top-degree class".into(),
            ));
        }
        Ok(x.coords[0].clone())
    }

    /// Rank of multiplication by `ω^{n-2k}` from degree `k` to degree `n-k`.
    pub fn lefschetz_rank(&self, omega: &AlgebraClass, k: usize) -> Result<usize> {
        let n = self.n();
        if omega.degree != 1 || 2 * k > n {
            return Err(Error::Dimension(
                "Lefschetz rank needs a degree-one class and 2k <= n".into(),
            ));
        }
        let w = self.representative(omega)?.pow((n - 2 * k) as u32);
        let basis = self.basis_ops(k);
        let zero = vec![0u32; self.m()];
        let mut mat = QMatrix::zeros(basis.len(), basis.len());
        for (i, a) in basis.iter().enumerate() {
            let aw = a.compose(&w).apply(&self.psi);
            for (j, b) in basis.iter().enumerate() {
                mat[(i, j)] = b.apply(&aw).coefficient(&zero);
            }
        }
        Ok(mat.rank())
    }

    /// Rank of the derivative at `c` of `c ↦ [∂_c^{n-1}]`.
    pub fn power_map_jacobian(&self, c: &[Rational]) -> Result<PowerMapReport> {
        let n = self.n();
        let m = self.m();
        if c.len() != m {
            return Err(Error::Dimension("sample point has wrong length".into()));
        }
        if n < 2 {
            return Err(Error::Dimension("power map needs n >= 2".into()));
        }
        let target = self.degrees[n - 1].dim;
        if target != self.degrees[1].dim {
            return Err(Error::Internal("d_1 and d_{n-1} differ".into()));
        }
        // d/dc_j of ∂_i ∂_c^{n-1} Ψ is (n-1) ∂_i ∂_j ∂_c^{n-2} Ψ, a multiple of
        // the Hessian of Ψ at c
        let mut h = QMatrix::zeros(m, m);
        for i in 0..m {
            let di = self.psi.partial(i);
            for j in i..m {
                let x = di.partial(j).evaluate(c);
                h[(i, j)] = x.clone();
                h[(j, i)] = x;
            }
        }
        let rank = h.rank();
        Ok(PowerMapReport {
            rank,
            target_dim: target,
            dominant: rank == target,
            note: String::from(if rank == target {
                "dominant (generically surjective over the algebraic closure)"
            } else {
                "not of full rank at this point"
            }),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerMapReport {
    pub rank: usize,
    pub target_dim: usize,
    pub dominant: bool,
    pub note: String,
}

/// Monomials of degree `j` whose support is a face of `k`.
pub fn face_monomials(k: &SimplicialComplex, j: usize) -> Vec<Exponent> {
    let m = k.m();
    let mut out = Vec::new();
    if j == 0 {
        out.push(vec![0; m]);
        return out;
    }
    for size in 1..=j {
        for face in k.faces(size) {
            for extra in monomials(size, (j - size) as u32) {
                let mut e = vec![0u32; m];
                for (t, &v) in face.iter().enumerate() {
                    e[v] = 1 + extra[t];
                }
                out.push(e);
            }
        }
    }
    out.sort();
    out
}

/// Graded dimensions of `Q[K] / (θ_1, …, θ_n)` with `θ_l = Σ_i λ(i)_l x_i`.
pub fn sr_quotient_dims(k: &SimplicialComplex, lambda: &[QVector]) -> Result<Vec<usize>> {
    let n = (k.dim() + 1) as usize;
    if lambda.len() != k.m() || lambda.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension(
            "characteristic vectors do not match the complex".into(),
        ));
    }
    for f in k.facets() {
        if det_of(lambda, f).is_zero() {
            return Err(Error::Precondition(format!(
                "vectors on {f:?} are dependent; not a linear system of parameters"
            )));
        }
    }
    let mut dims = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let basis = face_monomials(k, j);
        if j == 0 {
            dims.push(basis.len());
            continue;
        }
        let index: BTreeMap<&Exponent, usize> =
            basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let lower = face_monomials(k, j - 1);
        let mut rows = Vec::with_capacity(n * lower.len());
        for l in 0..n {
            for mu in &lower {
                let mut row = vec![Rational::zero(); basis.len()];
                for (i, lam) in lambda.iter().enumerate() {
                    if lam[l].is_zero() {
                        continue;
                    }
                    let mut e = mu.clone();
                    e[i] += 1;
                    if let Some(&c) = index.get(&e) {
                        row[c] += &lam[l];
                    }
                }
                rows.push(row);
            }
        }
        let rank = QMatrix::from_rows(&rows, basis.len()).rank();
        dims.push(basis.len() - rank);
    }
    Ok(dims)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureCase {
    Sphere,
    Manifold,
    /// No structure theorem applies; data are reported only.
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub case: StructureCase,
    pub dm: Vec<usize>,
    pub profile: CombinatorialProfile,
    pub sr_dims: Vec<usize>,
    /// `h'_j - h''_j` and `C(n,j) β̃_{j-1}`, for `j = 0..=n`.
    pub socle_defects: Vec<(i64, i64)>,
    /// Named checks and their outcomes; empty for unclassified complexes.
    pub checks: Vec<(String, bool)>,
}

impl StructureReport {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub fn verify_structure<R: Rng + ?Sized>(fan: &MultiFan, rng: &mut R) -> Result<StructureReport> {
    fan.require_complete()?;
    let v = volume_poly_index(fan, rng)?.form;
    let alg = DualityAlgebra::build(&v)?;
    let dm = alg.dims();
    let k = fan.complex();
    let n = fan.n();
    let cls = k.classify();
    let profile = k.profile()?;
    let sr = sr_quotient_dims(&k, fan.lambda())?;
    let as_i64 = |x: &[usize]| x.iter().map(|&y| y as i64).collect::<Vec<_>>();
    let betti = |d: isize| -> i64 {
        if d < 0 {
            0
        } else {
            profile.reduced_betti.get(d as usize).copied().unwrap_or(0) as i64
        }
    };
    let defects: Vec<(i64, i64)> = (0..=n)
        .map(|j| {
            let expect = if j == 0 || j == n {
                0
            } else {
                binomial(n as i64, j as i64) * betti(j as isize - 1)
            };
            (profile.h_prime[j] - profile.h_double_prime[j], expect)
        })
        .collect();
    let mut checks = Vec::new();
    let case = if cls.is_gorenstein_star {
        checks.push(("dm = h".into(), as_i64(&dm) == profile.h_vector));
        checks.push(("sr = h".into(), as_i64(&sr) == profile.h_vector));
        StructureCase::Sphere
    } else if cls.is_homology_manifold && cls.is_orientable && cls.is_pseudomanifold {
        checks.push(("dm = h''".into(), as_i64(&dm) == profile.h_double_prime));
        checks.push(("sr = h'".into(), as_i64(&sr) == profile.h_prime));
        checks.push((
            "h' - h'' = C(n,j) betti(j-1)".into(),
            defects.iter().all(|(a, b)| a == b),
        ));
        StructureCase::Manifold
    } else {
        StructureCase::Unclassified
    };
    Ok(StructureReport {
        case,
        dm,
        profile,
        sr_dims: sr,
        socle_defects: defects,
        checks,
    })
}

/// Samples random characteristic functions for the support of `fan`, keeping
/// its underlying chain's geometric weights, and tallies the resulting
/// dimension vectors.
pub fn rigidity_experiment<R: Rng + ?Sized>(
    fan: &MultiFan,
    samples: usize,
    bound: i64,
    rng: &mut R,
) -> Result<BTreeMap<Vec<usize>, usize>> {
    let k = fan.complex();
    let mut tally = BTreeMap::new();
    for _ in 0..samples {
        let lambda = crate::fixtures::random_lambda_for(rng, &k, fan.n(), bound);
        let weights: Vec<_> = fan.weights().map(|(s, w)| (s.clone(), w.clone())).collect();
        let f = MultiFan::new(fan.n(), lambda, weights)?;
        if !f.is_complete() {
            return Err(Error::Internal("chain lost closedness".into()));
        }
        let v = volume_poly_index(&f, rng)?.form;
        let dm = DualityAlgebra::build(&v)?.dims();
        *tally.entry(dm).or_insert(0) += 1;
    }
    Ok(tally)
}
