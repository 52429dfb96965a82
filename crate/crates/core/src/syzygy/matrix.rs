use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::field::{FieldElem, NumberField};
use crate::poly::{MonomialOrder, PolyError, Polynomial};
use crate::Rational;

/// Homogeneous element of a graded free module `⊕ R(−a_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeModuleElement {
    pub components: Vec<Polynomial>,
    /// Degree in the shifted grading: `deg(component_i) + a_i`.
    pub degree: i64,
}

impl FreeModuleElement {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Integer multiple with coprime coefficients, first nonzero component
    /// having a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        Self { components: primitive_vector(&self.components), degree: self.degree }
    }

    pub fn evaluate(&self, point: &[FieldElem], field: &NumberField) -> Result<Vec<FieldElem>, PolyError> {
        self.components.iter().map(|p| p.evaluate(point, field)).collect()
    }
}

/// Scales a polynomial vector to integer coefficients with content one.
pub fn primitive_vector(v: &[Polynomial]) -> Vec<Polynomial> {
    let coeffs = || v.iter().flat_map(|p| p.terms().iter().map(|(_, c)| c));
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for c in coeffs() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return v.to_vec();
    }
    let mut s = Rational::new(den, num);
    let lead = v.iter().find(|p| !p.is_zero()).and_then(|p| p.leading_term(&MonomialOrder::Grevlex));
    if lead.is_some_and(|(_, c)| c.is_negative()) {
        s = -s;
    }
    v.iter().map(|p| p.scale(&s)).collect()
}

/// Polynomial matrix with row and column degree shifts such that
/// `deg(entry_ij) = col_shift_j − row_shift_i` for nonzero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix {
    nvars: usize,
    row_shifts: Vec<i64>,
    col_shifts: Vec<i64>,
    cols: Vec<Vec<Polynomial>>,
}

/// Serializable form: entries as strings, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixText {
    pub row_shifts: Vec<i64>,
    pub col_shifts: Vec<i64>,
    pub entries: Vec<Vec<String>>,
}

impl GradedMatrix {
    /// Panics if an entry has the wrong degree; callers build these from
    /// homogeneous data.
    pub fn new(nvars: usize, row_shifts: Vec<i64>, col_shifts: Vec<i64>, cols: Vec<Vec<Polynomial>>) -> Self {
        let m = Self { nvars, row_shifts, col_shifts, cols };
        assert!(m.is_graded(), "entries do not match the declared shifts");
        m
    }

    pub fn is_graded(&self) -> bool {
        self.cols.len() == self.col_shifts.len()
            && self.cols.iter().zip(&self.col_shifts).all(|(col, &cs)| {
                col.len() == self.row_shifts.len()
                    && col
                        .iter()
                        .zip(&self.row_shifts)
                        .all(|(p, &rs)| p.is_zero() || (p.is_homogeneous() && p.degree() == Some((cs - rs) as u32)))
            })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nrows(&self) -> usize {
        self.row_shifts.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_shifts(&self) -> &[i64] {
        &self.row_shifts
    }

    pub fn col_shifts(&self) -> &[i64] {
        &self.col_shifts
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j][i]
    }

    pub fn column(&self, j: usize) -> &[Polynomial] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.cols
    }

    pub fn column_element(&self, j: usize) -> FreeModuleElement {
        FreeModuleElement { components: self.cols[j].clone(), degree: self.col_shifts[j] }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().flatten().all(Polynomial::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.cols.iter().flatten()
    }

    /// `self · other`.
    pub fn mul(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.ncols(), other.nrows());
        let cols = other
            .cols
            .iter()
            .map(|oc| {
                (0..self.nrows())
                    .map(|i| {
                        let mut acc = Polynomial::zero(self.nvars);
                        for (k, b) in oc.iter().enumerate() {
                            if !b.is_zero() && !self.cols[k][i].is_zero() {
                                acc = acc + &self.cols[k][i] * b;
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        GradedMatrix {
            nvars: self.nvars,
            row_shifts: self.row_shifts.clone(),
            col_shifts: other.col_shifts.clone(),
            cols,
        }
    }

    /// Row vector `v · self` for a vector of polynomials (one per row).
    pub fn left_mul(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        self.cols
            .iter()
            .map(|c| c.iter().zip(v).fold(Polynomial::zero(self.nvars), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn evaluate(&self, point: &[FieldElem], field: &NumberField) -> Result<Vec<Vec<FieldElem>>, PolyError> {
        self.cols.iter().map(|c| c.iter().map(|p| p.evaluate(point, field)).collect()).collect()
    }

    /// Applies a map to every entry (shifts unchanged).
    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> GradedMatrix {
        let cols: Vec<Vec<Polynomial>> = self.cols.iter().map(|c| c.iter().map(&f).collect()).collect();
        let nvars = cols.iter().flatten().next().map_or(self.nvars, Polynomial::nvars);
        GradedMatrix { nvars, row_shifts: self.row_shifts.clone(), col_shifts: self.col_shifts.clone(), cols }
    }

    /// Appends the columns of `other` (same rows).
    pub fn hconcat(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.row_shifts, other.row_shifts);
        let mut m = self.clone();
        m.col_shifts.extend(&other.col_shifts);
        m.cols.extend(other.cols.iter().cloned());
        m
    }

    pub fn to_text(&self, names: &[String]) -> MatrixText {
        MatrixText {
            row_shifts: self.row_shifts.clone(),
            col_shifts: self.col_shifts.clone(),
            entries: (0..self.nrows()).map(|i| self.cols.iter().map(|c| c[i].fmt_with(names)).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::Ring;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &Ring::standard(3)).unwrap()
    }

    #[test]
    fn grading_and_product() {
        let a = GradedMatrix::new(3, vec![0, 0], vec![1], vec![vec![p("x1"), p("-x0")]]);
        let row = GradedMatrix::new(3, vec![-1], vec![0, 0], vec![vec![p("x0")], vec![p("x1")]]);
        assert!(row.mul(&a).is_zero());
        assert_eq!(a.left_mul(&[p("x0"), p("x1")]), vec![Polynomial::zero(3)]);
    }

    #[test]
    #[should_panic]
    fn wrong_degree_is_rejected() {
        GradedMatrix::new(3, vec![0], vec![2], vec![vec![p("x0")]]);
    }

    #[test]
    fn primitive_scaling() {
        let v = primitive_vector(&[p("-1/2*x0"), p("3/4*x1")]);
        assert_eq!(v, vec![p("2*x0"), p("-3*x1")]);
    }
}
