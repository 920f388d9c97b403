use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factorial, QMatrix, Rational};

/// Exponent multi-index, indexed by variable.
pub type Exponent = Vec<u32>;

/// All exponents of total degree `d` in `m` variables, lexicographically
/// descending: `(d,0,..,0)` first.
pub fn monomials(m: usize, d: u32) -> Vec<Exponent> {
    fn rec(m: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == m {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(m, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(m, d, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Homogeneous polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, Rational>,
}

impl HomogeneousForm {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogeneousForm {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut f = Self::zero(nvars, 0);
        f.add_term(vec![0; nvars], c);
        f
    }

    pub fn monomial(exp: Exponent, coef: Rational) -> Self {
        let degree = exp.iter().sum();
        let mut f = Self::zero(exp.len(), degree);
        f.add_term(exp, coef);
        f
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut f = Self::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; coeffs.len()];
            e[i] = 1;
            f.add_term(e, c.clone());
        }
        f
    }

    /// Builds a form from explicit terms, merging duplicates.
    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, Rational)>,
    ) -> Self {
        let mut f = Self::zero(nvars, degree);
        for (e, c) in terms {
            f.add_term(e, c);
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `coef * c^exp`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exp: Exponent, coef: Rational) {
        assert_eq!(exp.len(), self.nvars, "exponent length mismatch");
        assert_eq!(exp.iter().sum::<u32>(), self.degree, "inhomogeneous term");
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.degree, other.degree,
            "sum of forms of different degree"
        );
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point length mismatch");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * Rational::from_integer(BigInt::from(e[i])));
        }
        out
    }

    /// Replaces each variable `c_i` by the linear form `row i` of `subst`
    /// (a `nvars x k` matrix), producing a form in `k` variables.
    pub fn substitute_linear(&self, subst: &QMatrix) -> Self {
        assert_eq!(subst.rows(), self.nvars, "substitution shape mismatch");
        let k = subst.cols();
        let lin: Vec<Self> = (0..self.nvars)
            .map(|i| Self::linear(subst.row(i)))
            .collect();
        let mut out = Self::zero(k, self.degree);
        for (e, c) in &self.terms {
            let mut t = Self::constant(k, c.clone());
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    t = t.mul(&lin[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// `(sum_j coef_j c_{var_j})^d`, expanded by the multinomial theorem.
    pub fn power_of_linear(nvars: usize, lin: &[(usize, Rational)], d: u32) -> Self {
        let mut out = Self::zero(nvars, d);
        let k = lin.len();
        if k == 0 {
            if d == 0 {
                out.add_term(vec![0; nvars], Rational::one());
            }
            return out;
        }
        let dfact = factorial(d);
        for split in monomials(k, d) {
            let mut coef = Rational::from_integer(dfact.clone());
            let mut e = vec![0u32; nvars];
            for (j, &p) in split.iter().enumerate() {
                coef /= Rational::from_integer(factorial(p));
                for _ in 0..p {
                    coef *= &lin[j].1;
                }
                e[lin[j].0] += p;
            }
            out.add_term(e, coef);
        }
        out
    }
}

/// Constant-coefficient differential operator; variable `i` stands for the
/// partial derivative in `c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp(pub HomogeneousForm);

impl DiffOp {
    pub fn partial(nvars: usize, i: usize) -> Self {
        DiffOp(HomogeneousForm::variable(nvars, i))
    }

    pub fn monomial(exp: Exponent) -> Self {
        DiffOp(HomogeneousForm::monomial(exp, Rational::one()))
    }

    pub fn linear(coeffs: &[Rational]) -> Self {
        DiffOp(HomogeneousForm::linear(coeffs))
    }

    pub fn identity(nvars: usize) -> Self {
        DiffOp(HomogeneousForm::constant(nvars, Rational::one()))
    }

    /// Product of the partials indexed by `set`.
    pub fn product_of(nvars: usize, set: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &i in set {
            e[i] += 1;
        }
        Self::monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.degree()
    }

    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        DiffOp(self.0.mul(&other.0))
    }

    pub fn pow(&self, k: u32) -> DiffOp {
        DiffOp(self.0.pow(k))
    }

    pub fn apply(&self, f: &HomogeneousForm) -> HomogeneousForm {
        assert_eq!(
            self.0.nvars(),
            f.nvars(),
            "operator and form variable count differ"
        );
        let deg = self.degree();
        if deg > f.degree() {
            return HomogeneousForm::zero(f.nvars(), 0);
        }
        let mut out = HomogeneousForm::zero(f.nvars(), f.degree() - deg);
        for (b, dc) in self.0.terms() {
            for (a, fc) in f.terms() {
                if a.iter().zip(b).any(|(x, y)| x < y) {
                    continue;
                }
                let mut coef = dc * fc;
                let mut e = Vec::with_capacity(a.len());
                for (&x, &y) in a.iter().zip(b) {
                    coef *= Rational::from_integer(factorial(x) / factorial(x - y));
                    e.push(x - y);
                }
                out.add_term(e, coef);
            }
        }
        out
    }
}
