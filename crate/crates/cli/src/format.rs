//! JSON wire formats. Vertex indices are 1-based on the wire; rationals are
//! strings `"p/q"` or `"p"`.

use std::collections::BTreeMap;

use multifan_core::exactmath::{HomogeneousForm, QVector, Rational};
use multifan_core::recognize::Functional;
use multifan_core::simplicial::{Chain, SimplicialComplex};
use multifan_core::{Error, MultiFan};
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "multifan/1";

fn default_format() -> String {
    FORMAT.to_string()
}

pub fn rat(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rational, Error> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Invalid(format!("not a rational number: {s:?}")))
}

pub fn parse_rat_list(s: &str) -> Result<QVector, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rat).collect()
}

/// `"1,0;0,1"` as a list of vectors.
pub fn parse_vector_list(s: &str) -> Result<Vec<QVector>, Error> {
    s.split(';').map(parse_rat_list).collect()
}

pub fn parse_index_list(s: &str) -> Result<Vec<usize>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let i: usize = t
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("not an index: {t:?}")))?;
            if i == 0 {
                return Err(Error::Invalid("vertex indices are 1-based".into()));
            }
            Ok(i - 1)
        })
        .collect()
}

pub fn to_wire(s: &[usize]) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

fn from_wire(s: &[usize]) -> Result<Vec<usize>, Error> {
    s.iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or_else(|| Error::Invalid("vertex indices are 1-based".into()))
        })
        .collect()
}

fn parse_vec(v: &[String]) -> Result<QVector, Error> {
    v.iter().map(|s| parse_rat(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub simplex: Vec<usize>,
    pub w: String,
}

/// Multi-fan file. `w` is the coefficient of the simplex oriented by
/// increasing vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    #[serde(default = "default_format")]
    pub format: String,
    pub n: usize,
    pub m: usize,
    pub lambda: Vec<Vec<String>>,
    pub weights: Vec<WeightEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
}

impl FanFile {
    pub fn from_fan(f: &MultiFan) -> Self {
        FanFile {
            format: default_format(),
            n: f.n(),
            m: f.m(),
            lambda: f
                .lambda()
                .iter()
                .map(|v| v.iter().map(rat).collect())
                .collect(),
            weights: f
                .weights()
                .map(|(s, w)| WeightEntry {
                    simplex: to_wire(s),
                    w: rat(w),
                })
                .collect(),
            metric: f.metric().map(|g| {
                g.to_rows()
                    .iter()
                    .map(|r| r.iter().map(rat).collect())
                    .collect()
            }),
        }
    }

    pub fn to_fan(&self) -> Result<MultiFan, Error> {
        if self.lambda.len() != self.m {
            return Err(Error::Dimension(format!(
                "m = {} but {} vectors given",
                self.m,
                self.lambda.len()
            )));
        }
        let lambda = self
            .lambda
            .iter()
            .map(|v| parse_vec(v))
            .collect::<Result<Vec<_>, _>>()?;
        let mut weights = Vec::with_capacity(self.weights.len());
        for e in &self.weights {
            let mut s = from_wire(&e.simplex)?;
            let (sorted, sgn) = multifan_core::simplicial::sort_with_sign(std::mem::take(&mut s));
            if sgn == 0 {
                return Err(Error::Invalid(format!(
                    "repeated vertex in {:?}",
                    e.simplex
                )));
            }
            let w = parse_rat(&e.w)?;
            weights.push((sorted, if sgn < 0 { -w } else { w }));
        }
        let fan = MultiFan::new(self.n, lambda, weights)?;
        match &self.metric {
            None => Ok(fan),
            Some(rows) => {
                let rows = rows
                    .iter()
                    .map(|r| parse_vec(r))
                    .collect::<Result<Vec<_>, _>>()?;
                fan.with_metric(multifan_core::exactmath::QMatrix::from_rows(&rows, self.n))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFile {
    #[serde(default = "default_format")]
    pub format: String,
    pub nvars: usize,
    pub degree: u32,
    pub terms: Vec<TermEntry>,
}

impl FormFile {
    pub fn from_form(f: &HomogeneousForm) -> Self {
        FormFile {
            format: default_format(),
            nvars: f.nvars(),
            degree: f.degree(),
            terms: f
                .terms()
                .map(|(e, c)| TermEntry {
                    exp: e.clone(),
                    coef: rat(c),
                })
                .collect(),
        }
    }

    pub fn to_form(&self) -> Result<HomogeneousForm, Error> {
        let mut f = HomogeneousForm::zero(self.nvars, self.degree);
        for t in &self.terms {
            if t.exp.len() != self.nvars || t.exp.iter().sum::<u32>() != self.degree {
                return Err(Error::Dimension(format!(
                    "term {:?} does not match nvars/degree",
                    t.exp
                )));
            }
            f.add_term(t.exp.clone(), parse_rat(&t.coef)?);
        }
        Ok(f)
    }
}

/// Human-readable rendering, e.g. `1/2*c1^2 + c1*c2`.
pub fn form_text(f: &HomogeneousForm) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&Vec<u32>, &Rational)> = f.terms().collect();
    terms.sort_by(|a, b| b.0.cmp(a.0));
    let mut out = String::new();
    for (k, (e, c)) in terms.into_iter().enumerate() {
        let neg = *c < Rational::from_integer(0.into());
        let abs = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let vars: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(i, &p)| {
                if p == 1 {
                    format!("c{}", i + 1)
                } else {
                    format!("c{}^{}", i + 1, p)
                }
            })
            .collect();
        let one = abs == Rational::from_integer(1.into());
        if vars.is_empty() {
            out.push_str(&rat(&abs));
        } else if one {
            out.push_str(&vars.join("*"));
        } else {
            out.push_str(&format!("{}*{}", rat(&abs), vars.join("*")));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexFile {
            m: k.m(),
            facets: k.facets().iter().map(|f| to_wire(f)).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, Error> {
        SimplicialComplex::new(
            self.m,
            self.facets
                .iter()
                .map(|f| from_wire(f))
                .collect::<Result<Vec<_>, _>>()?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTerm {
    pub simplex: Vec<usize>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFile {
    pub degree: isize,
    pub terms: Vec<ChainTerm>,
}

impl ChainFile {
    pub fn from_chain(c: &Chain) -> Self {
        ChainFile {
            degree: c.degree(),
            terms: c
                .terms()
                .map(|(s, x)| ChainTerm {
                    simplex: to_wire(s),
                    coef: rat(x),
                })
                .collect(),
        }
    }

    pub fn to_chain(&self) -> Result<Chain, Error> {
        let mut c = Chain::zero(self.degree);
        for t in &self.terms {
            if t.simplex.len() as isize != self.degree + 1 {
                return Err(Error::Dimension(format!(
                    "simplex {:?} does not have degree {}",
                    t.simplex, self.degree
                )));
            }
            c.add(from_wire(&t.simplex)?, parse_rat(&t.coef)?);
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalValue {
    pub exp: Vec<u32>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalFile {
    #[serde(default = "default_format")]
    pub format: String,
    pub n: usize,
    pub p: usize,
    pub values: Vec<FunctionalValue>,
}

impl FunctionalFile {
    pub fn from_functional(f: &Functional) -> Self {
        FunctionalFile {
            format: default_format(),
            n: f.n,
            p: f.p,
            values: f
                .values
                .iter()
                .map(|(e, v)| FunctionalValue {
                    exp: e.clone(),
                    value: rat(v),
                })
                .collect(),
        }
    }

    pub fn to_functional(&self) -> Result<Functional, Error> {
        let mut values = BTreeMap::new();
        for v in &self.values {
            values.insert(v.exp.clone(), parse_rat(&v.value)?);
        }
        Ok(Functional {
            n: self.n,
            p: self.p,
            values,
        })
    }
}

pub fn vec_wire(v: &[Rational]) -> Vec<String> {
    v.iter().map(rat).collect()
}
