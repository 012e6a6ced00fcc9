//! Finite linear combinations of diagrams with Laurent coefficients in δ.

use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;
use serde_json::{json, Value};

use crate::delta::{format_rational, parse_rational, DeltaPoly};
use crate::diagram::{multiply_diagrams, parse_diagram, SetPartitionDiagram};
use crate::error::{Error, Result};

/// An element of the partition algebra P(r): a term map from canonical
/// diagrams to nonzero Laurent polynomials in δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    r: usize,
    terms: BTreeMap<SetPartitionDiagram, DeltaPoly>,
}

impl AlgebraElement {
    pub fn zero(r: usize) -> Self {
        AlgebraElement { r, terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: SetPartitionDiagram) -> Self {
        Self::from_term(d, DeltaPoly::one())
    }

    pub fn from_term(d: SetPartitionDiagram, coeff: DeltaPoly) -> Self {
        let mut el = Self::zero(d.r());
        el.add_term(d, coeff);
        el
    }

    pub fn one(r: usize) -> Self {
        Self::from_diagram(SetPartitionDiagram::identity(r))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetPartitionDiagram, &DeltaPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &SetPartitionDiagram> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, d: SetPartitionDiagram, coeff: DeltaPoly) {
        debug_assert_eq!(d.r(), self.r);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &DeltaPoly) -> Self {
        let mut out = Self::zero(self.r);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.mul(factor));
        }
        out
    }

    /// Bilinear extension of diagram concatenation; each removed inner
    /// circle contributes a factor δ.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = Self::zero(self.r);
        for (dx, cx) in &self.terms {
            for (dy, cy) in &other.terms {
                let (prod, loops) = multiply_diagrams(dx, dy)?;
                out.add_term(prod, cx.mul(cy).shift(loops as i64));
            }
        }
        Ok(out)
    }

    /// Substitute a rational value for δ in every coefficient.
    pub fn specialize(&self, delta: &BigRational) -> Result<Self> {
        let mut out = Self::zero(self.r);
        for (d, c) in &self.terms {
            let v = c.specialize(delta)?;
            out.add_term(d.clone(), DeltaPoly::constant(v));
        }
        Ok(out)
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.r != other.r {
            return Err(Error::SizeMismatch { left: self.r, right: other.r });
        }
        Ok(())
    }

    /// JSON form: `{"r":4,"terms":[{"diagram":"…","coeff":{"-1":"1/1"}}]}`
    /// with rational strings `p/q` and exponent keys as decimal strings.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(d, c)| {
                let mut coeff = serde_json::Map::new();
                for (k, q) in c.coeffs() {
                    coeff.insert(k.to_string(), Value::String(format_rational(q)));
                }
                json!({ "diagram": d.to_string(), "coeff": Value::Object(coeff) })
            })
            .collect();
        json!({ "r": self.r, "terms": terms })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let r = obj
            .get("r")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing field `r`".into()))? as usize;
        let mut out = Self::zero(r);
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing field `terms`".into()))?;
        for term in terms {
            let diagram = term
                .get("diagram")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("missing field `diagram`".into()))?;
            let coeff = term
                .get("coeff")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Parse("missing field `coeff`".into()))?;
            let mut poly = DeltaPoly::zero();
            for (k, v) in coeff {
                let exp: i64 = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent `{k}`")))?;
                let q = parse_rational(
                    v.as_str()
                        .ok_or_else(|| Error::Parse("coefficient must be a string".into()))?,
                )?;
                poly = poly.add(&DeltaPoly::monomial(exp, q));
            }
            out.add_term(parse_diagram(r, diagram)?, poly);
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{d}")?;
            } else if c.coeffs().count() == 1 {
                write!(f, "{c} * {d}")?;
            } else {
                write!(f, "({c}) * {d}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::enumerate_basis;
    use num::{BigRational, One};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zero_annihilates() {
        let x = AlgebraElement::one(3);
        let z = AlgebraElement::zero(3);
        assert!(z.mul(&x).unwrap().is_zero());
        assert!(x.mul(&z).unwrap().is_zero());
    }

    #[test]
    fn bar_squared_is_delta_bar() {
        let b = AlgebraElement::from_diagram(parse_diagram(2, "{1,2}{1',2'}").unwrap());
        let sq = b.mul(&b).unwrap();
        assert_eq!(sq, b.scale(&DeltaPoly::monomial(1, BigRational::one())));
        let rendered = sq.to_string();
        assert_eq!(rendered, "δ^1 * {1,2}{1',2'}");
    }

    #[test]
    fn distributivity_on_random_triples() {
        // x·(y+z) = x·y + x·z over a deterministic sample of basis diagrams.
        let basis = enumerate_basis(2, false, 1000).unwrap();
        for (i, x) in basis.iter().enumerate() {
            let y = AlgebraElement::from_diagram(basis[(3 * i + 1) % basis.len()].clone());
            let z = AlgebraElement::from_diagram(basis[(7 * i + 2) % basis.len()].clone());
            let x = AlgebraElement::from_diagram(x.clone());
            let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
            let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn specialization_commutes_with_multiplication() {
        let b = AlgebraElement::from_term(
            parse_diagram(2, "{1,2}{1',2'}").unwrap(),
            DeltaPoly::monomial(-1, rat(2, 3)),
        );
        let c = AlgebraElement::from_diagram(parse_diagram(2, "{1,1'}{2,2'}").unwrap());
        let sum = b.add(&c).unwrap();
        let prod = sum.mul(&sum).unwrap();
        let v = rat(5, 7);
        // Loops reintroduce powers of δ, so the late product needs one more
        // evaluation before the two routes agree.
        let early = sum.specialize(&v).unwrap();
        assert_eq!(
            prod.specialize(&v).unwrap(),
            early.mul(&early).unwrap().specialize(&v).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let el = AlgebraElement::from_term(
            parse_diagram(2, "{1,2}{1',2'}").unwrap(),
            DeltaPoly::monomial(-1, rat(1, 1)).add(&DeltaPoly::constant(rat(2, 3))),
        );
        let js = el.to_json();
        assert_eq!(AlgebraElement::from_json(&js).unwrap(), el);
        assert_eq!(
            js.to_string(),
            r#"{"r":2,"terms":[{"diagram":"{1,2}{1',2'}","coeff":{"-1":"1/1","0":"2/3"}}]}"#
        );
    }
}
