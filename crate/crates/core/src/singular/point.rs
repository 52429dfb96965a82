use std::fmt;

use crate::field::{FieldElem, FieldError, NumberField};
use crate::poly::{parse_field_element, ParseError, Polynomial};

/// Point of projective space over a number field, scaled so that the first
/// nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<FieldElem>,
}

impl ProjectivePoint {
    /// Normalizes; `None` for the zero vector.
    pub fn new(coords: Vec<FieldElem>, field: &NumberField) -> Result<Option<Self>, FieldError> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else { return Ok(None) };
        let inv = field.inv(lead)?;
        Ok(Some(Self { coords: coords.iter().map(|c| field.mul(c, &inv)).collect() }))
    }

    pub fn from_i64(coords: &[i64], field: &NumberField) -> Self {
        Self::new(coords.iter().map(|&c| field.from_i64(c)).collect(), field).unwrap().expect("nonzero point")
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).unwrap()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.as_rational().is_some())
    }

    /// Whether `f` vanishes here.
    pub fn is_zero_of(&self, f: &Polynomial, field: &NumberField) -> bool {
        f.evaluate(&self.coords, field).is_ok_and(|v| v.is_zero())
    }

    pub fn format(&self, field: &NumberField) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| field.format(c)).collect();
        format!("({})", parts.join(" : "))
    }

    pub fn to_strings(&self, field: &NumberField) -> Vec<String> {
        self.coords.iter().map(|c| field.format(c)).collect()
    }

    /// Parses `a : b : c` with coordinates in `field`.
    pub fn parse(text: &str, field: &NumberField) -> Result<Option<Self>, PointParseError> {
        let coords = text.split(':').map(|s| parse_field_element(s.trim(), field)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coords, field)?)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PointParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Formats with the generator name `?` when no field is at hand.
impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| match c.as_rational() {
                Some(r) => r.to_string(),
                None => format!("{:?}", c.coeffs()),
            })
            .collect();
        write!(f, "({})", parts.join(" : "))
    }
}
