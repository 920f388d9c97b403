//! Simplicial complexes on vertex slots `0..m`, chains and cochains with
//! rational coefficients, reduced homology over Q, and f/h-vector profiles.
//!
//! Every simplex is a strictly increasing vertex list and is oriented by that
//! order. The empty simplex is the unique simplex of degree -1, so boundaries
//! of 0-chains land in the augmentation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{binomial, QMatrix, Rational};

pub type Simplex = Vec<usize>;

fn is_sorted_strict(s: &[usize]) -> bool {
    s.windows(2).all(|w| w[0] < w[1])
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

/// Sorted union of two disjoint simplices with the sign of the shuffle that
/// sorts the concatenation `a ++ b`.
pub fn join_sign(a: &[usize], b: &[usize]) -> (Simplex, i32) {
    let mut inversions = 0usize;
    for &x in a {
        inversions += b.iter().filter(|&&y| y < x).count();
    }
    let mut u: Simplex = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    (u, if inversions % 2 == 0 { 1 } else { -1 })
}

/// Finite simplicial complex given by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `facets`; non-maximal generators are
    /// dropped. An empty list gives the void complex, `[[]]` the complex
    /// consisting of the empty simplex alone.
    pub fn new(m: usize, facets: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            if !is_sorted_strict(&f) {
                return Err(Error::Invalid(format!("repeated vertex in simplex {f:?}")));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= m) {
                return Err(Error::Invalid(format!("vertex {v} out of range 0..{m}")));
            }
            set.insert(f);
        }
        let all: Vec<Simplex> = set.into_iter().collect();
        let facets = all
            .iter()
            .filter(|f| !all.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
            .cloned()
            .collect();
        Ok(SimplicialComplex { m, facets })
    }

    /// Boundary of the full simplex on the given vertices.
    pub fn simplex_boundary(m: usize, vertices: &[usize]) -> Result<Self> {
        let facets = (0..vertices.len()).map(|i| {
            let mut f = vertices.to_vec();
            f.remove(i);
            f
        });
        Self::new(m, facets)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; -1 for `{∅}` and for the void complex.
    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        s.into_iter().collect()
    }

    /// Vertex slots not used by any face.
    pub fn ghost_vertices(&self) -> Vec<usize> {
        let used = self.vertices();
        (0..self.m)
            .filter(|v| used.binary_search(v).is_err())
            .collect()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(s, f))
    }

    /// All faces with exactly `size` vertices, sorted.
    pub fn faces(&self, size: usize) -> Vec<Simplex> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() >= size {
                for s in crate::exactmath::subsets_of(f, size) {
                    out.insert(s);
                }
            }
        }
        out.into_iter().collect()
    }

    /// `f_{-1}, f_0, …, f_dim`.
    pub fn f_vector_augmented(&self) -> Vec<usize> {
        if self.is_void() {
            return Vec::new();
        }
        (0..=(self.dim() + 1) as usize)
            .map(|k| self.faces(k).len())
            .collect()
    }

    pub fn link(&self, s: &[usize]) -> Result<Self> {
        if !self.contains(s) {
            return Err(Error::NotInComplex(s.to_vec()));
        }
        let facets = self.facets.iter().filter(|f| is_subset(s, f)).map(|f| {
            f.iter()
                .copied()
                .filter(|v| s.binary_search(v).is_err())
                .collect()
        });
        Self::new(self.m, facets)
    }

    /// Augmented boundary matrix from faces of size `k` to faces of size
    /// `k - 1`, with rows and columns in sorted face order.
    fn boundary_matrix(&self, rows: &[Simplex], cols: &[Simplex]) -> QMatrix {
        let index: BTreeMap<&Simplex, usize> =
            rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut mat = QMatrix::zeros(rows.len(), cols.len());
        for (j, s) in cols.iter().enumerate() {
            for i in 0..s.len() {
                let mut t = s.clone();
                t.remove(i);
                let r = index[&t];
                mat[(r, j)] = if i % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
            }
        }
        mat
    }

    /// Reduced Betti numbers over Q, indexed from degree -1 up to `dim`.
    pub fn reduced_betti_augmented(&self) -> Vec<usize> {
        if self.is_void() {
            return Vec::new();
        }
        let top = (self.dim() + 1) as usize;
        let faces: Vec<Vec<Simplex>> = (0..=top).map(|k| self.faces(k)).collect();
        // rank of boundary from size k to size k-1, k = 1..=top
        let mut ranks = vec![0usize; top + 2];
        for k in 1..=top {
            ranks[k] = self.boundary_matrix(&faces[k - 1], &faces[k]).rank();
        }
        (0..=top)
            .map(|k| faces[k].len() - ranks[k] - ranks[k + 1])
            .collect()
    }

    /// Reduced Betti numbers in degrees `0..=dim`.
    pub fn reduced_betti(&self) -> Vec<usize> {
        let b = self.reduced_betti_augmented();
        if b.is_empty() {
            b
        } else {
            b[1..].to_vec()
        }
    }

    /// Kernel of the top boundary map (augmented when the complex is
    /// 0-dimensional), as chains.
    pub fn top_cycles(&self) -> Vec<Chain> {
        if self.is_void() {
            return Vec::new();
        }
        let top = (self.dim() + 1) as usize;
        let cols = self.faces(top);
        let rows = self.faces(top - 1);
        let mat = if top == 0 {
            QMatrix::zeros(0, cols.len())
        } else {
            self.boundary_matrix(&rows, &cols)
        };
        mat.kernel_basis()
            .into_iter()
            .map(|v| Chain::from_terms(top as isize - 1, cols.iter().cloned().zip(v)))
            .collect()
    }

    fn ridges_ok(&self) -> bool {
        let n = self.facets[0].len();
        let mut count: BTreeMap<Simplex, usize> = BTreeMap::new();
        for f in &self.facets {
            for i in 0..n {
                let mut r = f.clone();
                r.remove(i);
                *count.entry(r).or_default() += 1;
            }
        }
        count.values().all(|&c| c == 2)
    }

    /// Connectivity of the facet graph whose edges are shared ridges.
    pub fn is_strongly_connected(&self) -> bool {
        if self.facets.is_empty() {
            return true;
        }
        let mut by_ridge: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
        for (idx, f) in self.facets.iter().enumerate() {
            for i in 0..f.len() {
                let mut r = f.clone();
                r.remove(i);
                by_ridge.entry(r).or_default().push(idx);
            }
        }
        let mut seen = vec![false; self.facets.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            let f = &self.facets[x];
            for i in 0..f.len() {
                let mut r = f.clone();
                r.remove(i);
                for &y in &by_ridge[&r] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    fn is_homology_sphere(&self) -> bool {
        let b = self.reduced_betti_augmented();
        let d = b.len() - 1;
        !b.is_empty() && b.iter().enumerate().all(|(i, &x)| x == usize::from(i == d))
    }

    pub fn classify(&self) -> Classification {
        let pure = self.is_pure() && !self.is_void();
        let pseudo = pure && self.dim() >= 0 && self.ridges_ok() && self.is_strongly_connected();
        let mut fundamental = None;
        if pseudo {
            let cycles = self.top_cycles();
            if cycles.len() == 1 && cycles[0].terms.len() == self.facets.len() {
                let c = &cycles[0];
                let first = c.coef(&self.facets[0]);
                fundamental = Some(c.scale(&first.recip()));
            }
        }
        let mut manifold = pure;
        let mut gorenstein = pure;
        if pure {
            for size in 1..=self.facets[0].len() {
                for s in self.faces(size) {
                    if !self
                        .link(&s)
                        .map(|l| l.is_homology_sphere())
                        .unwrap_or(false)
                    {
                        manifold = false;
                        break;
                    }
                }
                if !manifold {
                    break;
                }
            }
            gorenstein = manifold && self.is_homology_sphere();
        }
        Classification {
            is_pseudomanifold: pseudo,
            is_orientable: fundamental.is_some(),
            is_gorenstein_star: gorenstein,
            is_homology_manifold: manifold,
            fundamental_chain: fundamental,
        }
    }

    /// f, h, h', h'' vectors and reduced Betti numbers of a pure complex of
    /// dimension `n - 1`.
    pub fn profile(&self) -> Result<CombinatorialProfile> {
        if !self.is_pure() || self.is_void() {
            return Err(Error::Precondition(
                "profile requires a non-void pure complex".into(),
            ));
        }
        let n = (self.dim() + 1) as usize;
        let fa = self.f_vector_augmented();
        let betti_aug = self.reduced_betti_augmented();
        let h: Vec<i64> = (0..=n)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let sgn = if (j - i) % 2 == 0 { 1 } else { -1 };
                        sgn * binomial((n - i) as i64, (j - i) as i64) * fa[i] as i64
                    })
                    .sum()
            })
            .collect();
        // reduced Betti in degree d, zero outside the computed range
        let bt = |d: isize| -> i64 {
            let idx = d + 1;
            if idx < 0 || idx as usize >= betti_aug.len() {
                0
            } else {
                betti_aug[idx as usize] as i64
            }
        };
        let h_prime: Vec<i64> = (0..=n)
            .map(|j| {
                let corr: i64 = (1..j)
                    .map(|s| {
                        let sgn = if (j - s - 1) % 2 == 0 { 1 } else { -1 };
                        sgn * bt(s as isize - 1)
                    })
                    .sum();
                h[j] + binomial(n as i64, j as i64) * corr
            })
            .collect();
        let h_double: Vec<i64> = (0..=n)
            .map(|j| {
                if j == n {
                    h_prime[n]
                } else {
                    h_prime[j] - binomial(n as i64, j as i64) * bt(j as isize - 1)
                }
            })
            .collect();
        Ok(CombinatorialProfile {
            f_vector: fa[1..].to_vec(),
            h_vector: h,
            h_prime,
            h_double_prime: h_double,
            reduced_betti: betti_aug[1..].to_vec(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_pseudomanifold: bool,
    pub is_orientable: bool,
    pub is_gorenstein_star: bool,
    pub is_homology_manifold: bool,
    /// Top cycle normalized to +1 on the first facet, when orientable.
    pub fundamental_chain: Option<Chain>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialProfile {
    pub f_vector: Vec<usize>,
    pub h_vector: Vec<i64>,
    pub h_prime: Vec<i64>,
    pub h_double_prime: Vec<i64>,
    /// Degrees `0..=n-1`.
    pub reduced_betti: Vec<usize>,
}

/// Rational chain (or cochain) of a fixed degree; simplices have
/// `degree + 1` vertices and are oriented by increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: isize,
    terms: BTreeMap<Simplex, Rational>,
}

/// Cochains share the representation of chains.
pub type Cochain = Chain;

impl Chain {
    pub fn zero(degree: isize) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(degree: isize, terms: impl IntoIterator<Item = (Simplex, Rational)>) -> Self {
        let mut c = Self::zero(degree);
        for (s, x) in terms {
            c.add(s, x);
        }
        c
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Simplex> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef(&self, s: &[usize]) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `x` times the simplex `s`; `s` need not be sorted, in which case
    /// the orientation sign of the sorting permutation is applied.
    pub fn add(&mut self, s: Simplex, x: Rational) {
        assert_eq!(
            s.len() as isize,
            self.degree + 1,
            "simplex size does not match degree"
        );
        let (s, sgn) = sort_with_sign(s);
        if x.is_zero() || sgn == 0 {
            return;
        }
        let x = if sgn < 0 { -x } else { x };
        match self.terms.entry(s) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(x);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += x;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Chain::from_terms(
            self.degree,
            self.terms.iter().map(|(k, v)| (k.clone(), v * s)),
        )
    }

    pub fn plus(&self, other: &Chain) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut c = self.clone();
        for (k, v) in &other.terms {
            c.add(k.clone(), v.clone());
        }
        c
    }

    /// Simplicial boundary; the boundary of a 0-chain is its coefficient sum
    /// on the empty simplex.
    pub fn boundary(&self) -> Result<Chain> {
        if self.degree < 0 {
            return Err(Error::Dimension("boundary of a degree -1 chain".into()));
        }
        let mut out = Chain::zero(self.degree - 1);
        for (s, x) in &self.terms {
            for i in 0..s.len() {
                let mut t = s.clone();
                t.remove(i);
                out.add(t, if i % 2 == 0 { x.clone() } else { -x.clone() });
            }
        }
        Ok(out)
    }

    /// Coboundary of a cochain on `complex`: `(δa)(τ) = Σ_i (-1)^i a(τ∖τ_i)`
    /// over faces `τ` one dimension up. Not defined at the top degree; use
    /// [`Chain::evaluate`] against a fundamental chain there.
    pub fn coboundary(&self, complex: &SimplicialComplex) -> Result<Cochain> {
        let size = (self.degree + 2) as usize;
        if self.degree + 1 > complex.dim() {
            return Err(Error::Dimension(format!(
                "coboundary of a degree {} cochain on a complex of dimension {}",
                self.degree,
                complex.dim()
            )));
        }
        let mut out = Chain::zero(self.degree + 1);
        for t in complex.faces(size) {
            let mut acc = Rational::zero();
            for i in 0..t.len() {
                let mut s = t.clone();
                s.remove(i);
                let v = self.coef(&s);
                if i % 2 == 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
            out.add(t, acc);
        }
        Ok(out)
    }

    /// Pairing of a cochain with a chain of the same degree.
    pub fn evaluate(&self, chain: &Chain) -> Result<Rational> {
        if self.degree != chain.degree {
            return Err(Error::Dimension("cochain/chain degree mismatch".into()));
        }
        Ok(self
            .terms
            .iter()
            .filter_map(|(k, v)| chain.terms.get(k).map(|w| v * w))
            .fold(Rational::zero(), |a, b| a + b))
    }

    /// True when `δa = 0`, the top-degree coboundary being evaluation
    /// against `fundamental`.
    pub fn is_coaugmented_cocycle(
        &self,
        complex: &SimplicialComplex,
        fundamental: &Chain,
    ) -> Result<bool> {
        if self.degree == fundamental.degree {
            return Ok(self.evaluate(fundamental)?.is_zero());
        }
        Ok(self.coboundary(complex)?.is_zero())
    }
}

/// Sorts a vertex list, returning the sign of the permutation, or sign 0 if a
/// vertex repeats.
pub fn sort_with_sign(mut s: Simplex) -> (Simplex, i32) {
    let mut sgn = 1;
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && s[j - 1] > s[j] {
            s.swap(j - 1, j);
            sgn = -sgn;
            j -= 1;
        }
    }
    if !is_sorted_strict(&s) {
        return (s, 0);
    }
    (s, sgn)
}

/// Subsets of `s` as sorted lists, all sizes.
pub fn all_subsets(s: &[usize]) -> Vec<Simplex> {
    let mut out = Vec::with_capacity(1 << s.len());
    for mask in 0u64..(1u64 << s.len()) {
        out.push(
            s.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect(),
        );
    }
    out
}

pub fn subset_of(a: &[usize], b: &[usize]) -> bool {
    is_subset(a, b)
}
