//! Multi-polytopes: a complete multi-fan together with support parameters
//! `c`, so that vertex `i` carries the hyperplane `⟨u, λ(i)⟩ = c_i`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactmath::{
    dot, from_f64, sign, to_f64, DiffOp, HomogeneousForm, QMatrix, QVector, Rational, SkewForm,
};
use crate::multifan::{MultiFan, ProjectedMultiFan};
use crate::simplicial::{Chain, Simplex};
use crate::volume::{normalized_face_volume, volume_poly_index};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPolytope {
    pub fan: MultiFan,
    pub c: QVector,
}

/// One facet's contribution to a Duistermaat-Heckman value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DhTerm {
    pub facet: Simplex,
    /// `(-1)^{#positive coordinates of v}`.
    pub sign: i32,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DhValue {
    pub point: QVector,
    pub value: Rational,
    pub certificate: Vec<DhTerm>,
}

impl MultiPolytope {
    pub fn new(fan: MultiFan, c: QVector) -> Result<Self> {
        if c.len() != fan.m() {
            return Err(Error::Dimension(format!(
                "{} support parameters for {} vertices",
                c.len(),
                fan.m()
            )));
        }
        fan.require_complete()?;
        Ok(MultiPolytope { fan, c })
    }

    /// The point where the hyperplanes of `s` meet.
    pub fn vertex(&self, s: &[usize]) -> Result<QVector> {
        let mut s = s.to_vec();
        s.sort_unstable();
        if self.fan.weight(&s).is_zero() {
            return Err(Error::NotInComplex(s));
        }
        let rows: Vec<QVector> = s.iter().map(|&i| self.fan.lambda()[i].clone()).collect();
        let rhs: QVector = s.iter().map(|&i| self.c[i].clone()).collect();
        QMatrix::from_rows(&rows, self.fan.n())
            .solve(&rhs)
            .ok_or_else(|| Error::Internal("supported simplex is not a basis".into()))
    }

    pub fn vertices(&self) -> Result<Vec<(Simplex, QVector)>> {
        self.fan
            .facets()
            .into_iter()
            .map(|s| self.vertex(&s).map(|u| (s, u)))
            .collect()
    }

    /// Vertices that carry a hyperplane (vertex slots used by some facet).
    fn live_vertices(&self) -> Vec<usize> {
        self.fan.complex().vertices()
    }

    /// First hyperplane containing `u`, if any.
    pub fn hyperplane_through(&self, u: &[Rational]) -> Option<usize> {
        self.live_vertices()
            .into_iter()
            .find(|&i| dot(u, &self.fan.lambda()[i]) == self.c[i])
    }

    pub fn dh_evaluator(&self, v: &[Rational]) -> Result<DhEvaluator<'_>> {
        self.fan.check_generic(v)?;
        let facets = self
            .fan
            .weights()
            .map(|(s, _)| {
                let alpha = self
                    .fan
                    .coordinates(s, v)
                    .expect("supported simplices are bases");
                let alpha_sign: Vec<i32> = alpha.iter().map(sign).collect();
                let positive = alpha_sign.iter().filter(|&&x| x > 0).count();
                let sgn = if positive % 2 == 0 { 1 } else { -1 };
                (s.clone(), alpha_sign, sgn, self.fan.geometric_weight(s))
            })
            .collect();
        Ok(DhEvaluator {
            poly: self,
            facets,
            live: self.live_vertices(),
        })
    }

    /// Duistermaat-Heckman function at `u`, computed with the generic `v`.
    pub fn dh_eval(&self, u: &[Rational], v: &[Rational]) -> Result<DhValue> {
        self.dh_evaluator(v)?.eval(u)
    }

    /// Winding number of the boundary cycle around `u` (plane only).
    pub fn winding_number(&self, u: &[Rational]) -> Result<Rational> {
        if self.fan.n() != 2 {
            return Err(Error::Dimension("winding oracle needs n = 2".into()));
        }
        if let Some(i) = self.hyperplane_through(u) {
            return Err(Error::OnHyperplane(i));
        }
        let lambda = self.fan.lambda();
        // a base point on each line
        let base = |i: usize| -> QVector {
            let l = &lambda[i];
            let s = &self.c[i] / dot(l, l);
            l.iter().map(|x| x * &s).collect()
        };
        let mut total = Rational::zero();
        for (s, w) in self.fan.weights() {
            let h = self.vertex(s)?;
            let (a, b) = (s[0], s[1]);
            let k = crossing(&base(a), &h, u) + crossing(&h, &base(b), u);
            total += w * Rational::from_integer(k.into());
        }
        Ok(total)
    }

    /// Bounding box of all vertices.
    pub fn bounding_box(&self) -> Result<(QVector, QVector)> {
        let verts = self.vertices()?;
        let n = self.fan.n();
        if verts.is_empty() {
            return Err(Error::Precondition("polytope has no vertices".into()));
        }
        let mut lo = verts[0].1.clone();
        let mut hi = verts[0].1.clone();
        for (_, p) in &verts {
            for j in 0..n {
                if p[j] < lo[j] {
                    lo[j] = p[j].clone();
                }
                if p[j] > hi[j] {
                    hi[j] = p[j].clone();
                }
            }
        }
        Ok((lo, hi))
    }

    /// Monte-Carlo estimate of the volume: mean of the DH function over
    /// uniform samples in the vertex bounding box. Returns `(estimate, stderr)`.
    pub fn mc_volume<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> Result<(f64, f64)> {
        let v = self.fan.generic_vector(rng)?;
        let eval = self.dh_evaluator(&v)?;
        let (lo, hi) = self.bounding_box()?;
        let lo: Vec<f64> = lo.iter().map(to_f64).collect();
        let hi: Vec<f64> = hi.iter().map(to_f64).collect();
        let box_vol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
        if samples == 0 || box_vol == 0.0 {
            return Ok((0.0, 0.0));
        }
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        let mut taken = 0usize;
        while taken < samples {
            let u: QVector = lo
                .iter()
                .zip(&hi)
                .map(|(a, b)| from_f64(rng.gen_range(*a..=*b)))
                .collect();
            let x = match eval.eval(&u) {
                Ok(d) => to_f64(&d.value),
                Err(Error::OnHyperplane(_)) => continue,
                Err(e) => return Err(e),
            };
            sum += x;
            sum_sq += x * x;
            taken += 1;
        }
        let nf = samples as f64;
        let mean = sum / nf;
        let var = if samples > 1 {
            (sum_sq - nf * mean * mean) / (nf - 1.0)
        } else {
            0.0
        };
        Ok((box_vol * mean, box_vol * libm::sqrt(var.max(0.0) / nf)))
    }

    /// The face on `j` as a multi-polytope over the projected fan.
    pub fn face(&self, j: &[usize]) -> Result<(ProjectedMultiFan, MultiPolytope)> {
        let proj = self.fan.project(j)?;
        let c = proj.face_parameters(&self.c);
        let poly = MultiPolytope {
            fan: proj.fan.clone(),
            c,
        };
        Ok((proj, poly))
    }

    /// Face volume divided by covolume, computed inside the projected fan.
    pub fn normalized_face_volume_projected<R: Rng + ?Sized>(
        &self,
        j: &[usize],
        rng: &mut R,
    ) -> Result<Rational> {
        let (proj, face) = self.face(j)?;
        let vol = volume_poly_index(&face.fan, rng)?.form.evaluate(&face.c);
        Ok(vol / proj.jacobian(&self.fan))
    }

    /// `Σ_i ∂_i V(c) λ(i)`; zero for every complete fan.
    pub fn minkowski_facet_residual(&self, volume: &HomogeneousForm) -> QVector {
        let n = self.fan.n();
        let mut r = vec![Rational::zero(); n];
        for i in 0..self.fan.m() {
            let d = normalized_face_volume(volume, &self.c, &[i]);
            if d.is_zero() {
                continue;
            }
            for (x, l) in r.iter_mut().zip(&self.fan.lambda()[i]) {
                *x += &d * l;
            }
        }
        r
    }

    /// Residual `Σ_{|I|=k} a(I) ⟨λ(I), μ⟩ ∂_I V(c)` for a coaugmented
    /// cocycle `a` of degree `k-1`.
    pub fn minkowski_cocycle_residual(
        &self,
        volume: &HomogeneousForm,
        a: &Chain,
        mu: &SkewForm,
    ) -> Result<Rational> {
        let op = minkowski_operator(&self.fan, a, mu)?;
        Ok(op.apply(volume).evaluate(&self.c))
    }
}

/// Operator `Σ_I a(I) ⟨λ(I), μ⟩ ∂_I`, after checking that `a` is a
/// coaugmented cocycle on the (oriented homology manifold) support.
pub fn minkowski_operator(fan: &MultiFan, a: &Chain, mu: &SkewForm) -> Result<DiffOp> {
    let k = (a.degree() + 1) as usize;
    if mu.rank() != k || mu.dim() != fan.n() {
        return Err(Error::Dimension(format!(
            "skew form must have rank {k} in dimension {}",
            fan.n()
        )));
    }
    let complex = fan.complex();
    let cls = complex.classify();
    if !(cls.is_homology_manifold && cls.is_orientable) {
        return Err(Error::Precondition(
            "support is not an oriented homology manifold".into(),
        ));
    }
    let z = fan.underlying_chain();
    if !a.is_coaugmented_cocycle(&complex, &z)? {
        return Err(Error::Precondition(
            "cochain is not a coaugmented cocycle".into(),
        ));
    }
    let m = fan.m();
    let mut form = HomogeneousForm::zero(m, k as u32);
    for (s, x) in a.terms() {
        let vecs: Vec<QVector> = s.iter().map(|&i| fan.lambda()[i].clone()).collect();
        let p = SkewForm::wedge(fan.n(), &vecs)?.pair(mu)?;
        let mut e = vec![0u32; m];
        for &i in s {
            e[i] += 1;
        }
        form.add_term(e, x * p);
    }
    Ok(DiffOp(form))
}

/// Signed crossings of the segment `a -> b` with the ray from `u` in the
/// positive first-coordinate direction (half-open in the second coordinate).
fn crossing(a: &[Rational], b: &[Rational], u: &[Rational]) -> i64 {
    let side = (&b[0] - &a[0]) * (&u[1] - &a[1]) - (&u[0] - &a[0]) * (&b[1] - &a[1]);
    if a[1] <= u[1] && b[1] > u[1] && side.is_positive() {
        1
    } else if b[1] <= u[1] && a[1] > u[1] && side.is_negative() {
        -1
    } else {
        0
    }
}

/// DH evaluation with per-facet data precomputed for a fixed generic vector.
pub struct DhEvaluator<'a> {
    poly: &'a MultiPolytope,
    facets: Vec<(Simplex, Vec<i32>, i32, Rational)>,
    live: Vec<usize>,
}

impl DhEvaluator<'_> {
    pub fn eval(&self, u: &[Rational]) -> Result<DhValue> {
        let fan = &self.poly.fan;
        if u.len() != fan.n() {
            return Err(Error::Dimension("point has wrong length".into()));
        }
        let mut t_sign = vec![0i32; fan.m()];
        for &i in &self.live {
            let t = dot(u, &fan.lambda()[i]) - &self.poly.c[i];
            if t.is_zero() {
                return Err(Error::OnHyperplane(i));
            }
            t_sign[i] = sign(&t);
        }
        let mut value = Rational::zero();
        let mut certificate = Vec::with_capacity(self.facets.len());
        for (s, alpha_sign, sgn, w) in &self.facets {
            let member = s.iter().zip(alpha_sign).all(|(&i, &a)| t_sign[i] == a);
            if member {
                if *sgn > 0 {
                    value += w;
                } else {
                    value -= w;
                }
            }
            certificate.push(DhTerm {
                facet: s.clone(),
                sign: *sgn,
                member,
            });
        }
        Ok(DhValue {
            point: u.to_vec(),
            value,
            certificate,
        })
    }
}

/// Image of a point on the face `proj.simplex` in the link coordinates.
pub fn project_point(proj: &ProjectedMultiFan, u: &[Rational]) -> QVector {
    proj.frame.transpose().mul_vec(u)
}

/// Discrete polarization residual: the Lawrence output for the cube fan with
/// the negative-side parameters set to zero, minus `Π c_i`.
pub fn polarization_residual(volume: &HomogeneousForm, n: usize) -> HomogeneousForm {
    let m = volume.nvars();
    let mut c = HomogeneousForm::zero(n, n as u32);
    for (e, x) in volume.terms() {
        if e[n..m].iter().all(|&k| k == 0) {
            c.add_term(e[..n].to_vec(), x.clone());
        }
    }
    c.sub(&HomogeneousForm::monomial(vec![1u32; n], Rational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, qvec};
    use crate::fixtures;

    #[test]
    fn square_vertex_and_dh() {
        let p = MultiPolytope::new(fixtures::square(), qvec(&[1, 1, 1, 1])).unwrap();
        assert_eq!(p.vertex(&[0, 1]).unwrap(), qvec(&[1, 1]));
        let v = qvec(&[1, 2]);
        assert_eq!(p.dh_eval(&qvec(&[0, 0]), &v).unwrap().value, q(1));
        assert_eq!(p.dh_eval(&qvec(&[3, 0]), &v).unwrap().value, q(0));
        assert_eq!(p.winding_number(&qvec(&[0, 0])).unwrap(), q(1));
    }

    #[test]
    fn star_center() {
        let p = MultiPolytope::new(fixtures::star(), qvec(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(p.vertex(&[0, 1]).unwrap(), qvec(&[1, 3]));
        assert_eq!(
            p.dh_eval(&qvec(&[0, 0]), &qvec(&[3, 7])).unwrap().value,
            q(2)
        );
        assert_eq!(p.winding_number(&qvec(&[0, 0])).unwrap(), q(2));
    }
}
