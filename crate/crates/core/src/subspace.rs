//! Subspaces of a graded coordinate space, kept in reduced row-echelon form
//! so that equality is matrix equality.

use num_traits::Zero;

use crate::linalg::Matrix;
use crate::scalar::Rational;

pub type Element = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    /// Coordinates `< split` are even, the rest odd.
    split: usize,
    basis: Matrix<Rational>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span<I: IntoIterator<Item = Element>>(ambient: usize, split: usize, vectors: I) -> Self {
        let rows: Vec<Element> = vectors.into_iter().inspect(|v| assert_eq!(v.len(), ambient, "vector length")).collect();
        let (basis, pivots) = Matrix::from_rows_with_cols(rows, ambient).rref();
        Self { ambient, split, basis, pivots }
    }

    pub fn zero(ambient: usize, split: usize) -> Self {
        Self::span(ambient, split, std::iter::empty())
    }

    pub fn full(ambient: usize, split: usize) -> Self {
        Self::coordinate(ambient, split, 0..ambient)
    }

    /// Span of the given coordinate vectors.
    pub fn coordinate(ambient: usize, split: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(ambient, split, indices.into_iter().map(|i| unit(ambient, i)))
    }

    pub fn even_block(ambient: usize, split: usize) -> Self {
        Self::coordinate(ambient, split, 0..split)
    }

    pub fn odd_block(ambient: usize, split: usize) -> Self {
        Self::coordinate(ambient, split, split..ambient)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Whether the subspace is the sum of its even and odd parts.
    pub fn is_graded(&self) -> bool {
        self.even_part().dim() + self.odd_part().dim() == self.dim()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The echelon basis.
    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Element> {
        self.basis.to_rows()
    }

    /// Coordinates in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (row, coeff) in c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (x, b) in rest.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    *x -= coeff * b;
                }
            }
        }
        rest.iter().all(Zero::is_zero).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        Self::span(self.ambient, self.split, self.basis().into_iter().chain(other.basis()))
    }

    /// Covectors vanishing on the subspace, as a subspace of the dual.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Self::full(self.ambient, self.split);
        }
        Self::span(self.ambient, self.split, self.basis.kernel())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let both = self.annihilator().sum(&other.annihilator());
        both.annihilator()
    }

    pub fn even_part(&self) -> Subspace {
        self.parity_part(false)
    }

    pub fn odd_part(&self) -> Subspace {
        self.parity_part(true)
    }

    fn parity_part(&self, odd: bool) -> Subspace {
        let block = if odd { Self::odd_block(self.ambient, self.split) } else { Self::even_block(self.ambient, self.split) };
        self.intersect(&block)
    }

    /// Coordinates not used as pivots, in increasing order.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Reduces `v` modulo the subspace onto the complement coordinates.
    pub fn reduce(&self, v: &[Rational]) -> Element {
        let mut rest = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let coeff = rest[p].clone();
            if coeff.is_zero() {
                continue;
            }
            for (x, b) in rest.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    *x -= &coeff * b;
                }
            }
        }
        rest
    }
}

pub fn unit(n: usize, i: usize) -> Element {
    let mut v = vec![Rational::zero(); n];
    v[i] = num_traits::One::one();
    v
}

pub fn zero_vec(n: usize) -> Element {
    vec![Rational::zero(); n]
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Rational], v: &[Rational], s: &Rational) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += s * b;
        }
    }
}

pub fn scaled(v: &[Rational], s: &Rational) -> Element {
    v.iter().map(|x| x * s).collect()
}

/// `(even projection, odd projection)` of a vector.
pub fn parity_projections(v: &[Rational], split: usize) -> (Element, Element) {
    let mut e = v.to_vec();
    let mut o = v.to_vec();
    for (i, (a, b)) in e.iter_mut().zip(o.iter_mut()).enumerate() {
        if i < split {
            *b = Rational::zero();
        } else {
            *a = Rational::zero();
        }
    }
    (e, o)
}
