//! Points in `[0,1]^d` and Euclidean distance.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point with `d` real coordinates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Point<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Point { coords }
    }

    /// The all-zeros point of dimension `d` (the default depot location).
    pub fn origin(d: usize) -> Self {
        Point {
            coords: vec![S::zero(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    /// True when every coordinate lies in `[0,1]`.
    pub fn in_unit_cube(&self) -> bool {
        self.coords
            .iter()
            .all(|&x| x >= S::zero() && x <= S::one())
    }

    /// Concatenates the coordinates of `self` and `other` into one point of
    /// doubled dimension.
    pub fn concat(&self, other: &Point<S>) -> Point<S> {
        let mut coords = Vec::with_capacity(self.dim() + other.dim());
        coords.extend_from_slice(&self.coords);
        coords.extend_from_slice(&other.coords);
        Point { coords }
    }
}

impl<S: Scalar> std::ops::Index<usize> for Point<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.coords[i]
    }
}

impl<S: Scalar> std::fmt::Display for Point<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Euclidean distance between two points of equal dimension.
pub fn distance<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Result<S> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    Ok(dist(p, q))
}

/// Unchecked distance for internal hot paths; dimensions must already match.
#[inline]
pub(crate) fn dist<S: Scalar>(p: &Point<S>, q: &Point<S>) -> S {
    debug_assert_eq!(p.dim(), q.dim());
    let mut acc = S::zero();
    for (&a, &b) in p.coords.iter().zip(&q.coords) {
        let d = a - b;
        acc += d * d;
    }
    acc.sqrt()
}
