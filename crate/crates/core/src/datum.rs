//! Incidence data: codimension-two spaces and points in P^n.

use std::fmt;

use crate::error::{Error, Result};
use crate::projective::{Pencil, ProjPoint, ProjTransform, Transformable};
use crate::scalar::Field;

/// `l` codimension-two spaces and `p` points in P^n.
#[derive(Clone, Debug, PartialEq)]
pub struct Datum<F> {
    n: usize,
    spaces: Vec<Pencil<F>>,
    points: Vec<ProjPoint<F>>,
}

impl<F: Field> Datum<F> {
    pub fn new(n: usize, spaces: Vec<Pencil<F>>, points: Vec<ProjPoint<F>>) -> Result<Self> {
        for s in &spaces {
            Error::check_dim(n, s.dim())?;
        }
        for p in &points {
            Error::check_dim(n, p.dim())?;
        }
        Ok(Datum { n, spaces, points })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn spaces(&self) -> &[Pencil<F>] {
        &self.spaces
    }

    pub fn points(&self) -> &[ProjPoint<F>] {
        &self.points
    }

    /// `(p, l)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.points.len(), self.spaces.len())
    }
}

impl<F: Field> Transformable<F> for Datum<F> {
    fn transformed(&self, t: &ProjTransform<F>) -> Result<Self> {
        let spaces = self.spaces.iter().map(|s| s.transformed(t)).collect::<Result<_>>()?;
        let points = self.points.iter().map(|p| p.transformed(t)).collect::<Result<_>>()?;
        Datum::new(self.n, spaces, points)
    }
}

impl<F: Field> fmt::Display for Datum<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "datum in P^{}: {} points, {} spaces", self.n, self.points.len(), self.spaces.len())?;
        for (i, p) in self.points.iter().enumerate() {
            writeln!(f, "  P{} = {p}", i + 1)?;
        }
        for (i, s) in self.spaces.iter().enumerate() {
            writeln!(f, "  L{} = {s}", i + 1)?;
        }
        Ok(())
    }
}
