use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{subsets, QMatrix, QVector, Rational};
use crate::error::{Error, Result};

/// Element of the k-th exterior power of Q^n in the basis of wedge products
/// of coordinate vectors indexed by increasing k-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm {
    dim: usize,
    rank: usize,
    coords: BTreeMap<Vec<usize>, Rational>,
}

impl SkewForm {
    pub fn from_coords(
        dim: usize,
        rank: usize,
        coords: BTreeMap<Vec<usize>, Rational>,
    ) -> Result<Self> {
        for k in coords.keys() {
            if k.len() != rank || k.windows(2).any(|w| w[0] >= w[1]) || k.iter().any(|&i| i >= dim)
            {
                return Err(Error::Invalid(format!("bad skew-form index {k:?}")));
            }
        }
        let coords = coords.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(SkewForm { dim, rank, coords })
    }

    /// Wedge of vectors in Q^dim; coordinates are the maximal minors.
    pub fn wedge(dim: usize, vectors: &[QVector]) -> Result<Self> {
        let k = vectors.len();
        if k > dim {
            return Err(Error::Dimension(format!(
                "wedge of {k} vectors in dimension {dim}"
            )));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::Dimension(format!(
                "vector of length {} in dimension {dim}",
                v.len()
            )));
        }
        let m = QMatrix::from_rows(vectors, dim);
        let mut coords = BTreeMap::new();
        for cols in subsets(dim, k) {
            let d = m.select_columns(&cols).det();
            if !d.is_zero() {
                coords.insert(cols, d);
            }
        }
        Ok(SkewForm {
            dim,
            rank: k,
            coords,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coord(&self, idx: &[usize]) -> Rational {
        self.coords.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coords(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Euclidean inner product of coordinate vectors.
    pub fn pair(&self, other: &SkewForm) -> Result<Rational> {
        if self.rank != other.rank || self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "pairing rank {} in dim {} with rank {} in dim {}",
                self.rank, self.dim, other.rank, other.dim
            )));
        }
        Ok(self
            .coords
            .iter()
            .filter_map(|(k, v)| other.coords.get(k).map(|w| v * w))
            .fold(Rational::zero(), |a, b| a + b))
    }
}
