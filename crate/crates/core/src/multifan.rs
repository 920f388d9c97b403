//! Simplicial multi-fans: a rational weight on `n`-subsets of `0..m` plus a
//! characteristic vector in `Q^n` for every vertex slot.
//!
//! Weights are stored as coefficients of the underlying chain, i.e. relative
//! to the increasing vertex order. The geometric weight of a cone (the one
//! that enters covering degrees) is the stored value times the sign of the
//! determinant of its characteristic vectors in increasing order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactmath::{q, subsets_of, QMatrix, QVector, Rational};
use crate::simplicial::{subset_of, Chain, Simplex, SimplicialComplex};

/// Attempts made when sampling a generic vector; the range doubles each time.
pub const GENERIC_ATTEMPTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiFan {
    n: usize,
    lambda: Vec<QVector>,
    weights: BTreeMap<Simplex, Rational>,
    /// Gram matrix of the inner product on the ambient space; `None` means
    /// the standard one. Only projections depend on it.
    metric: Option<QMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ghost_vertices: Vec<usize>,
    pub is_zero: bool,
    pub facet_count: usize,
}

impl MultiFan {
    /// Multi-fan from chain-convention weights.
    pub fn new(
        n: usize,
        lambda: Vec<QVector>,
        weights: impl IntoIterator<Item = (Simplex, Rational)>,
    ) -> Result<Self> {
        let m = lambda.len();
        if let Some((i, v)) = lambda.iter().enumerate().find(|(_, v)| v.len() != n) {
            return Err(Error::Dimension(format!(
                "vector {} has length {}, expected {n}",
                i + 1,
                v.len()
            )));
        }
        let mut map = BTreeMap::new();
        for (s, w) in weights {
            if s.len() != n {
                return Err(Error::Dimension(format!(
                    "simplex {s:?} does not have {n} vertices"
                )));
            }
            if s.windows(2).any(|p| p[0] >= p[1]) {
                return Err(Error::Invalid(format!(
                    "simplex {s:?} is not strictly increasing"
                )));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= m) {
                return Err(Error::Invalid(format!("vertex {v} out of range 0..{m}")));
            }
            let e: &mut Rational = map.entry(s).or_insert_with(Rational::zero);
            *e += w;
        }
        map.retain(|_, w: &mut Rational| !w.is_zero());
        let fan = MultiFan {
            n,
            lambda,
            weights: map,
            metric: None,
        };
        let offending: Vec<Simplex> = fan
            .weights
            .keys()
            .filter(|s| fan.det(s).is_zero())
            .cloned()
            .collect();
        if !offending.is_empty() {
            return Err(Error::StarCondition { offending });
        }
        Ok(fan)
    }

    /// Multi-fan from geometric cone weights.
    pub fn from_geometric_weights(
        n: usize,
        lambda: Vec<QVector>,
        weights: impl IntoIterator<Item = (Simplex, Rational)>,
    ) -> Result<Self> {
        let mut chain = Vec::new();
        let mut offending = Vec::new();
        for (mut s, w) in weights {
            s.sort_unstable();
            if s.len() != n
                || s.iter().any(|&v| v >= lambda.len())
                || lambda.iter().any(|v| v.len() != n)
            {
                return Self::new(n, lambda, [(s, w)]);
            }
            let d = det_of(&lambda, &s);
            if d.is_zero() {
                if !w.is_zero() {
                    offending.push(s);
                }
                continue;
            }
            chain.push((s, if d.is_negative() { -w } else { w }));
        }
        if !offending.is_empty() {
            return Err(Error::StarCondition { offending });
        }
        Self::new(n, lambda, chain)
    }

    pub fn with_metric(mut self, gram: QMatrix) -> Result<Self> {
        if gram.rows() != self.n || gram.cols() != self.n || gram != gram.transpose() {
            return Err(Error::Dimension(
                "metric must be a symmetric n x n matrix".into(),
            ));
        }
        if self.n > 0 && gram.det().is_zero() {
            return Err(Error::Invalid("degenerate metric".into()));
        }
        self.metric = Some(gram);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[QVector] {
        &self.lambda
    }

    pub fn metric(&self) -> Option<&QMatrix> {
        self.metric.as_ref()
    }

    pub fn gram(&self) -> QMatrix {
        self.metric
            .clone()
            .unwrap_or_else(|| QMatrix::identity(self.n))
    }

    /// Chain-convention weights on the support.
    pub fn weights(&self) -> impl Iterator<Item = (&Simplex, &Rational)> {
        self.weights.iter()
    }

    pub fn weight(&self, s: &[usize]) -> Rational {
        self.weights.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    /// Geometric weight of the cone on `s`.
    pub fn geometric_weight(&self, s: &[usize]) -> Rational {
        let w = self.weight(s);
        if w.is_zero() || self.det(s).is_positive() {
            w
        } else {
            -w
        }
    }

    /// Geometric weight divided by `|det|`; equal to the stored weight over
    /// the determinant.
    pub fn normalized_weight(&self, s: &[usize]) -> Rational {
        let w = self.weight(s);
        if w.is_zero() {
            return w;
        }
        w / self.det(s)
    }

    /// Determinant of the vectors indexed by `s`, in the given order.
    pub fn det(&self, s: &[usize]) -> Rational {
        det_of(&self.lambda, s)
    }

    pub fn facets(&self) -> Vec<Simplex> {
        self.weights.keys().cloned().collect()
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::new(self.m(), self.facets()).expect("support is a valid complex")
    }

    pub fn underlying_chain(&self) -> Chain {
        Chain::from_terms(
            self.n as isize - 1,
            self.weights.iter().map(|(k, v)| (k.clone(), v.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            ghost_vertices: self.complex().ghost_vertices(),
            is_zero: self.is_zero(),
            facet_count: self.weights.len(),
        }
    }

    pub fn is_complete(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.underlying_chain()
            .boundary()
            .map(|b| b.is_zero())
            .unwrap_or(false)
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::Incomplete)
        }
    }

    /// Whether `s` is a face of the support.
    pub fn contains(&self, s: &[usize]) -> bool {
        if s.is_empty() {
            return !self.is_zero();
        }
        self.weights.keys().any(|f| subset_of(s, f))
    }

    /// Coordinates of `v` in the basis `λ(s)`.
    pub fn coordinates(&self, s: &[usize], v: &[Rational]) -> Option<QVector> {
        let cols: Vec<QVector> = s.iter().map(|&i| self.lambda[i].clone()).collect();
        let mat = QMatrix::from_columns(&cols, self.n);
        if mat.det().is_zero() {
            return None;
        }
        mat.solve(v)
    }

    /// Checks that `v` has no zero coordinate in any supported basis.
    pub fn check_generic(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::Dimension(format!(
                "vector of length {} in dimension {}",
                v.len(),
                self.n
            )));
        }
        for s in self.weights.keys() {
            let alpha = self
                .coordinates(s, v)
                .expect("supported simplices are bases");
            if alpha.iter().any(Zero::is_zero) {
                return Err(Error::NotGeneric { simplex: s.clone() });
            }
        }
        Ok(())
    }

    /// Seeded search for a generic vector with integer coordinates.
    pub fn generic_vector<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<QVector> {
        self.generic_vector_avoiding(rng, &[])
    }

    /// As [`MultiFan::generic_vector`], also rejecting vectors parallel to any
    /// vector in `avoid`.
    pub fn generic_vector_avoiding<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        avoid: &[QVector],
    ) -> Result<QVector> {
        let mut bound: i64 = (16 * self.m().max(1) * self.n.max(1)) as i64;
        for _ in 0..GENERIC_ATTEMPTS {
            let v: QVector = (0..self.n)
                .map(|_| q(rng.gen_range(-bound..=bound)))
                .collect();
            let parallel = avoid.iter().any(|a| {
                self.n < 2 && *a == v
                    || self.n >= 2 && QMatrix::from_rows(&[a.clone(), v.clone()], self.n).rank() < 2
            });
            if !parallel && self.check_generic(&v).is_ok() {
                return Ok(v);
            }
            bound = bound.saturating_mul(2);
        }
        Err(Error::GenericSearchExhausted(GENERIC_ATTEMPTS))
    }

    /// Sum of geometric weights of the cones containing `v` in their interior.
    pub fn degree_at(&self, v: &[Rational]) -> Result<Rational> {
        self.check_generic(v)?;
        let mut d = Rational::zero();
        for s in self.weights.keys() {
            let alpha = self
                .coordinates(s, v)
                .expect("supported simplices are bases");
            if alpha.iter().all(Signed::is_positive) {
                d += self.geometric_weight(s);
            }
        }
        Ok(d)
    }

    /// Weight-wise linear combination of fans sharing `n`, `m` and `λ`.
    pub fn linear_combine(terms: &[(Rational, &MultiFan)]) -> Result<MultiFan> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::Invalid("empty linear combination".into()));
        };
        let mut acc: BTreeMap<Simplex, Rational> = BTreeMap::new();
        for (c, f) in terms {
            if f.n != first.n || f.lambda != first.lambda || f.metric != first.metric {
                return Err(Error::Invalid(
                    "linear combination of fans with different characteristic functions".into(),
                ));
            }
            for (s, w) in &f.weights {
                *acc.entry(s.clone()).or_insert_with(Rational::zero) += c * w;
            }
        }
        let mut out = MultiFan::new(first.n, first.lambda.clone(), acc)?;
        out.metric = first.metric.clone();
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiFan {
        MultiFan::linear_combine(&[(c.clone(), self)]).expect("scaling preserves validity")
    }

    /// Elementary fan on `m` slots supported on the boundary of the simplex
    /// `support` (`n+1` vertices in general position); the lexicographically
    /// first facet has weight +1.
    pub fn elementary_on(n: usize, lambda: Vec<QVector>, support: &[usize]) -> Result<MultiFan> {
        let mut s = support.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != n + 1 {
            return Err(Error::Dimension(format!(
                "elementary fan needs {} distinct vertices",
                n + 1
            )));
        }
        if s.iter().any(|&v| v >= lambda.len()) {
            return Err(Error::Invalid("elementary support out of range".into()));
        }
        for f in subsets_of(&s, n) {
            if det_of(&lambda, &f).is_zero() {
                return Err(Error::Precondition(format!(
                    "vectors on {f:?} are not in general position"
                )));
            }
        }
        // boundary of [s] has coefficient (-1)^i on s minus its i-th vertex;
        // the lexicographically first facet drops the last vertex
        let norm = if n % 2 == 0 { 1 } else { -1 };
        let weights = (0..=n).map(|i| {
            let mut f = s.clone();
            f.remove(i);
            let c = if i % 2 == 0 { 1 } else { -1 };
            (f, q(c * norm))
        });
        MultiFan::new(n, lambda, weights)
    }

    /// Elementary fan on exactly the given `n+1` vectors.
    pub fn elementary(vectors: Vec<QVector>) -> Result<MultiFan> {
        let k = vectors.len();
        if k == 0 {
            return Err(Error::Dimension("elementary fan on no vectors".into()));
        }
        let support: Vec<usize> = (0..k).collect();
        MultiFan::elementary_on(k - 1, vectors, &support)
    }

    /// Same fan with extra ghost slots carrying the given vectors.
    pub fn with_extra_vertices(&self, extra: &[QVector]) -> Result<MultiFan> {
        let mut lambda = self.lambda.clone();
        lambda.extend(extra.iter().cloned());
        let mut f = MultiFan::new(self.n, lambda, self.weights.clone())?;
        f.metric = self.metric.clone();
        Ok(f)
    }

    /// Connected sum along an `n`-set `s` common to both fans. Vertices of
    /// `other` outside `s` are appended after the slots of `self` in order.
    pub fn connected_sum(&self, other: &MultiFan, s: &[usize]) -> Result<MultiFan> {
        if self.n != other.n {
            return Err(Error::Dimension(
                "connected sum of fans of different dimension".into(),
            ));
        }
        let mut s = s.to_vec();
        s.sort_unstable();
        if s.len() != self.n {
            return Err(Error::Dimension(format!(
                "gluing set must have {} vertices",
                self.n
            )));
        }
        if s.iter().any(|&v| v >= self.m() || v >= other.m()) {
            return Err(Error::Invalid("gluing set out of range".into()));
        }
        for &v in &s {
            if self.lambda[v] != other.lambda[v] {
                return Err(Error::Precondition(format!(
                    "characteristic vectors differ at vertex {}",
                    v + 1
                )));
            }
        }
        if self.weight(&s).is_zero() || other.weight(&s).is_zero() {
            return Err(Error::Precondition("gluing simplex has zero weight".into()));
        }
        let mut relabel = vec![0usize; other.m()];
        let mut lambda = self.lambda.clone();
        for v in 0..other.m() {
            if s.binary_search(&v).is_ok() {
                relabel[v] = v;
            } else {
                relabel[v] = lambda.len();
                lambda.push(other.lambda[v].clone());
            }
        }
        let mut weights: Vec<(Simplex, Rational)> = self
            .weights
            .iter()
            .map(|(k, w)| (k.clone(), w.clone()))
            .collect();
        for k in other.weights.keys() {
            let mut r: Simplex = k.iter().map(|&v| relabel[v]).collect();
            r.sort_unstable();
            // relabeling may reorder vertices; weights follow the cone, so
            // convert through geometric weights
            let g = other.geometric_weight(k);
            let d = det_of(&lambda, &r);
            weights.push((r, if d.is_negative() { -g } else { g }));
        }
        let mut out = MultiFan::new(self.n, lambda, weights)?;
        out.metric = self.metric.clone();
        Ok(out)
    }

    /// Flip on an `(n+1)`-set `s`: the facets `s∖{x}` present in the support
    /// are replaced by the complementary ones, by adding a multiple of the
    /// elementary fan on `s`.
    pub fn flip(&self, s: &[usize]) -> Result<FlipResult> {
        let n = self.n;
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != n + 1 || s.iter().any(|&v| v >= self.m()) {
            return Err(Error::Precondition(format!(
                "flip needs {} distinct vertices in range",
                n + 1
            )));
        }
        let present: Vec<usize> = s
            .iter()
            .copied()
            .filter(|&x| self.weights.contains_key(&without(&s, x)))
            .collect();
        if present.is_empty() {
            return Err(Error::Precondition(
                "no facet of the flip simplex is in the support".into(),
            ));
        }
        if self.contains(&present) {
            return Err(Error::Precondition(format!(
                "simplex {:?} is already a face; the induced complex is not a join of a simplex boundary and a simplex",
                present
            )));
        }
        let t = MultiFan::elementary_on(n, self.lambda.clone(), &s)?;
        let f0 = without(&s, present[0]);
        let c = -self.weight(&f0) / t.weight(&f0);
        for &x in &present[1..] {
            let f = without(&s, x);
            if self.weight(&f) + &c * t.weight(&f) != Rational::zero() {
                return Err(Error::Precondition(format!(
                    "facet weights on {:?} do not cancel against a single elementary fan",
                    s
                )));
            }
        }
        let mut fan = MultiFan::linear_combine(&[(Rational::one(), self), (c, &t)])?;
        fan.metric = self.metric.clone();
        let p = present.len();
        Ok(FlipResult {
            fan,
            p,
            q: n + 1 - p,
        })
    }

    /// Flip of type `(1, n)`: subdivides the facet `facet` by a new vertex
    /// appended at slot `m`.
    pub fn flip_stellar(&self, facet: &[usize], new_vector: QVector) -> Result<FlipResult> {
        let mut f = facet.to_vec();
        f.sort_unstable();
        if !self.weights.contains_key(&f) {
            return Err(Error::NotInComplex(f));
        }
        if new_vector.len() != self.n {
            return Err(Error::Dimension(
                "new characteristic vector has wrong length".into(),
            ));
        }
        let ext = self.with_extra_vertices(&[new_vector])?;
        f.push(self.m());
        ext.flip(&f)
    }

    /// Flip of type `(n, 1)` removing vertex `v`, whose link must be the
    /// boundary of a simplex. The slot of `v` stays as a ghost.
    pub fn flip_unstellar(&self, v: usize) -> Result<FlipResult> {
        let k = self.complex();
        let lk = k.link(&[v])?;
        let verts = lk.vertices();
        if verts.len() != self.n || lk.facets().len() != self.n || lk.dim() != self.n as isize - 2 {
            return Err(Error::Precondition(format!(
                "link of vertex {} is not the boundary of a simplex",
                v + 1
            )));
        }
        let mut s = verts;
        s.push(v);
        let r = self.flip(&s)?;
        if r.p != self.n {
            return Err(Error::Internal(
                "unstellar flip did not have type (n,1)".into(),
            ));
        }
        Ok(r)
    }

    /// Projected multi-fan on the link of `s`, in an orthogonal frame of the
    /// complement of `span λ(s)`.
    pub fn project(&self, s: &[usize]) -> Result<ProjectedMultiFan> {
        let mut s = s.to_vec();
        s.sort_unstable();
        if !self.contains(&s) {
            return Err(Error::NotInComplex(s));
        }
        let n = self.n;
        let k = s.len();
        let g = self.gram();
        if k == 0 {
            return Ok(ProjectedMultiFan {
                simplex: s,
                frame: QMatrix::identity(n),
                p_constants: QMatrix::zeros(self.m(), 0),
                fan: self.clone(),
            });
        }
        let ls = QMatrix::from_rows(
            &s.iter()
                .map(|&i| self.lambda[i].clone())
                .collect::<Vec<_>>(),
            n,
        );
        // rows λ(i)^T G; the complement is their kernel
        let lg = ls.mul(&g);
        let mut frame_cols = lg.kernel_basis();
        if frame_cols.len() != n - k {
            return Err(Error::Internal(
                "complement has unexpected dimension".into(),
            ));
        }
        if !frame_cols.is_empty() {
            let mut cols = frame_cols.clone();
            cols.extend(s.iter().map(|&i| self.lambda[i].clone()));
            if QMatrix::from_columns(&cols, n).det().is_negative() {
                for x in frame_cols[0].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        let frame = QMatrix::from_columns(&frame_cols, n);
        let ft = frame.transpose();
        let g_frame = ft.mul(&g).mul(&frame);
        let gram_s = lg.mul(&ls.transpose());
        let mut new_lambda = Vec::with_capacity(self.m());
        let mut p = QMatrix::zeros(self.m(), k);
        for i in 0..self.m() {
            let x = &self.lambda[i];
            let pi = gram_s
                .solve(&lg.mul_vec(x))
                .ok_or_else(|| Error::Internal("singular Gram system".into()))?;
            for j in 0..k {
                p[(i, j)] = pi[j].clone();
            }
            let y = if n == k {
                Vec::new()
            } else {
                g_frame
                    .solve(&ft.mul(&g).mul_vec(x))
                    .ok_or_else(|| Error::Internal("singular frame Gram matrix".into()))?
            };
            new_lambda.push(y);
        }
        let mut weights = Vec::new();
        for (f, _) in &self.weights {
            if !subset_of(&s, f) {
                continue;
            }
            let j: Simplex = f
                .iter()
                .copied()
                .filter(|v| s.binary_search(v).is_err())
                .collect();
            let gw = self.geometric_weight(f);
            let d = det_of(&new_lambda, &j);
            weights.push((j, if d.is_negative() { -gw } else { gw }));
        }
        let mut fan = MultiFan::new(n - k, new_lambda, weights)?;
        if n > k {
            fan.metric = if g_frame == QMatrix::identity(n - k) {
                None
            } else {
                Some(g_frame)
            };
        }
        Ok(ProjectedMultiFan {
            simplex: s,
            frame,
            p_constants: p,
            fan,
        })
    }

    /// Squared covolume of `λ(s)` in the ambient inner product.
    pub fn covolume_squared(&self, s: &[usize]) -> Rational {
        let g = self.gram();
        let ls = QMatrix::from_rows(
            &s.iter()
                .map(|&i| self.lambda[i].clone())
                .collect::<Vec<_>>(),
            self.n,
        );
        ls.mul(&g).mul(&ls.transpose()).det()
    }

    /// Short human-readable census.
    pub fn summary(&self) -> String {
        format!("n={} m={} facets={}", self.n, self.m(), self.weights.len())
    }
}

fn without(s: &[usize], x: usize) -> Simplex {
    s.iter().copied().filter(|&v| v != x).collect()
}

/// Determinant of the vectors indexed by `s`.
pub fn det_of(lambda: &[QVector], s: &[usize]) -> Rational {
    if s.is_empty() {
        return Rational::one();
    }
    let n = lambda[s[0]].len();
    if s.len() != n {
        return Rational::zero();
    }
    QMatrix::from_rows(&s.iter().map(|&i| lambda[i].clone()).collect::<Vec<_>>(), n).det()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipResult {
    pub fan: MultiFan,
    pub p: usize,
    pub q: usize,
}

/// Link fan of a face together with the data relating it to the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedMultiFan {
    /// The face, in parent labels.
    pub simplex: Simplex,
    /// Columns span the complement of the face, in parent coordinates.
    pub frame: QMatrix,
    /// Row `i`: coefficients of `λ(i)` minus its projection, in the basis
    /// `λ(simplex)`.
    pub p_constants: QMatrix,
    /// The projected fan on the same vertex slots.
    pub fan: MultiFan,
}

impl ProjectedMultiFan {
    /// Projects further along `s` (a face of the link), composing frames.
    pub fn project(&self, s: &[usize]) -> Result<ProjectedMultiFan> {
        let inner = self.fan.project(s)?;
        let mut simplex = self.simplex.clone();
        simplex.extend(inner.simplex.iter().copied());
        simplex.sort_unstable();
        Ok(ProjectedMultiFan {
            simplex,
            frame: self.frame.mul(&inner.frame),
            p_constants: inner.p_constants,
            fan: inner.fan,
        })
    }

    /// Projected vector of slot `i` in parent coordinates.
    pub fn ambient_vector(&self, i: usize) -> QVector {
        self.frame.mul_vec(&self.fan.lambda()[i])
    }

    /// Support parameters of the face: `c_i - Σ_j p_ij c_j`.
    pub fn face_parameters(&self, c: &[Rational]) -> QVector {
        (0..self.fan.m())
            .map(|i| {
                let mut x = c[i].clone();
                for (jj, &j) in self
                    .simplex
                    .iter()
                    .enumerate()
                    .take(self.p_constants.cols())
                {
                    x -= &self.p_constants[(i, jj)] * &c[j];
                }
                x
            })
            .collect()
    }

    /// `|det(frame, λ(simplex))|`, the Jacobian relating face volumes in the
    /// link coordinates to derivatives of the parent volume polynomial.
    pub fn jacobian(&self, parent: &MultiFan) -> Rational {
        let mut cols: Vec<QVector> = (0..self.frame.cols())
            .map(|j| self.frame.column(j))
            .collect();
        cols.extend(self.simplex.iter().map(|&i| parent.lambda()[i].clone()));
        QMatrix::from_columns(&cols, parent.n()).det().abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::qvec;

    fn cp2() -> MultiFan {
        MultiFan::from_geometric_weights(
            2,
            vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, -1])],
            [(vec![0, 1], q(1)), (vec![1, 2], q(1)), (vec![0, 2], q(1))],
        )
        .unwrap()
    }

    #[test]
    fn cp2_complete_and_degree_one() {
        let f = cp2();
        assert!(f.is_complete());
        assert_eq!(f.degree_at(&qvec(&[1, 2])).unwrap(), q(1));
        assert!(matches!(
            f.degree_at(&qvec(&[1, 0])),
            Err(Error::NotGeneric { .. })
        ));
    }

    #[test]
    fn elementary_matches_cp2_up_to_sign() {
        let e = MultiFan::elementary(vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, -1])]).unwrap();
        let f = cp2();
        let s = e.weight(&[0, 1]) / f.weight(&[0, 1]);
        assert_eq!(e, f.scale(&s));
        assert_eq!(e.weight(&[0, 1]), q(1));
    }

    #[test]
    fn star_condition() {
        let r = MultiFan::new(2, vec![qvec(&[1, 0]), qvec(&[2, 0])], [(vec![0, 1], q(1))]);
        assert_eq!(
            r,
            Err(Error::StarCondition {
                offending: vec![vec![0, 1]]
            })
        );
        assert!(MultiFan::elementary(vec![qvec(&[1, 0]), qvec(&[1, 0]), qvec(&[0, 1])]).is_err());
    }

    #[test]
    fn stellar_then_unstellar() {
        let f = cp2();
        let r = f.flip_stellar(&[0, 1], qvec(&[1, 1])).unwrap();
        assert_eq!((r.p, r.q), (1, 2));
        assert!(r.fan.is_complete());
        assert_eq!(r.fan.facets().len(), 4);
        let back = r.fan.flip_unstellar(3).unwrap();
        assert_eq!((back.p, back.q), (2, 1));
        assert_eq!(
            back.fan.weights().collect::<Vec<_>>(),
            f.weights().collect::<Vec<_>>()
        );
    }
}
