//! Generic Hopf-algebra axiom residuals over a [`BasisAlgebra`].

use std::fmt;

use crate::minkowski::PositionElement;
use crate::momentum::MomentumElement;
use crate::scalar::ScalarValue;
use crate::tensor::{BasisAlgebra, Tensor};

pub trait HopfStar: BasisAlgebra + PartialEq + fmt::Display {
    fn coproduct(&self) -> Tensor<Self>;
    fn counit(&self) -> ScalarValue;
    fn antipode(&self) -> Self;
    fn star(&self) -> Self;
    fn product(&self, other: &Self) -> Self;
    fn difference(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;

    fn from_key(key: &Self::Key) -> Self {
        Self::from_terms(vec![(key.clone(), ScalarValue::one())])
    }

    fn scalar(s: ScalarValue) -> Self {
        Self::from_terms(vec![(Self::unit_key(), s)])
    }
}

impl HopfStar for PositionElement {
    fn coproduct(&self) -> Tensor<Self> {
        PositionElement::coproduct(self)
    }
    fn counit(&self) -> ScalarValue {
        PositionElement::counit(self)
    }
    fn antipode(&self) -> Self {
        PositionElement::antipode(self)
    }
    fn star(&self) -> Self {
        PositionElement::star(self)
    }
    fn product(&self, other: &Self) -> Self {
        self.normal_mul(other)
    }
    fn difference(&self, other: &Self) -> Self {
        self - other
    }
    fn is_zero(&self) -> bool {
        PositionElement::is_zero(self)
    }
}

impl HopfStar for MomentumElement {
    fn coproduct(&self) -> Tensor<Self> {
        MomentumElement::coproduct(self)
    }
    fn counit(&self) -> ScalarValue {
        MomentumElement::counit(self)
    }
    fn antipode(&self) -> Self {
        MomentumElement::antipode(self)
    }
    fn star(&self) -> Self {
        MomentumElement::star(self)
    }
    fn product(&self, other: &Self) -> Self {
        self * other
    }
    fn difference(&self, other: &Self) -> Self {
        self - other
    }
    fn is_zero(&self) -> bool {
        MomentumElement::is_zero(self)
    }
}

/// A named residual; empty string means zero.
pub type Residual = (&'static str, String);

fn element_residual<A: HopfStar>(a: &A) -> String {
    if a.is_zero() {
        String::new()
    } else {
        a.to_string()
    }
}

fn tensor_residual<A: HopfStar>(t: &Tensor<A>) -> String {
    if t.is_zero() {
        String::new()
    } else {
        format!("{} nonzero tensor terms", t.terms().count())
    }
}

fn leg_coproduct<A: HopfStar>(k: &A::Key) -> Tensor<A> {
    A::from_key(k).coproduct()
}

fn leg_counit<A: HopfStar>(k: &A::Key) -> Tensor<A> {
    Tensor::pure(Vec::new(), A::from_key(k).counit())
}

fn leg_antipode<A: HopfStar>(k: &A::Key) -> Tensor<A> {
    Tensor::product_of(&[A::from_key(k).antipode()])
}

/// Single-element axioms: coassociativity, both counit laws, both antipode
/// laws and the star involution.
pub fn unary_residuals<A: HopfStar>(a: &A) -> Vec<Residual> {
    let d = a.coproduct();
    let coassoc = d.map_leg(0, leg_coproduct::<A>).sub(&d.map_leg(1, leg_coproduct::<A>));
    let left_counit = d.map_leg(0, leg_counit::<A>).multiply_out();
    let right_counit = d.map_leg(1, leg_counit::<A>).multiply_out();
    let eps = A::scalar(a.counit());
    let left_antipode = d.map_leg(0, leg_antipode::<A>).multiply_out();
    let right_antipode = d.map_leg(1, leg_antipode::<A>).multiply_out();
    vec![
        ("coassociativity", tensor_residual(&coassoc)),
        ("counit", element_residual(&left_counit.difference(a))),
        ("counit", element_residual(&right_counit.difference(a))),
        ("antipode", element_residual(&left_antipode.difference(&eps))),
        ("antipode", element_residual(&right_antipode.difference(&eps))),
        ("star-involution", element_residual(&a.star().star().difference(a))),
    ]
}

/// Two-element axioms: multiplicativity of coproduct and counit, and the
/// anti-multiplicativity of antipode and star.
pub fn binary_residuals<A: HopfStar>(a: &A, b: &A) -> Vec<Residual> {
    let ab = a.product(b);
    let cop = ab.coproduct().sub(&a.coproduct().mul(&b.coproduct()));
    let eps = A::scalar(ab.counit()).difference(&A::scalar(&a.counit() * &b.counit()));
    let s = ab.antipode().difference(&b.antipode().product(&a.antipode()));
    let st = ab.star().difference(&b.star().product(&a.star()));
    vec![
        ("coproduct-multiplicative", tensor_residual(&cop)),
        ("counit-multiplicative", element_residual(&eps)),
        ("antipode-antimultiplicative", element_residual(&s)),
        ("star-antimultiplicative", element_residual(&st)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_on_generators() {
        let w = PositionElement::label_wave(1);
        let samples = [PositionElement::x(0), &PositionElement::x(2) * &PositionElement::x(0), w.clone(), &w * &PositionElement::x(1)];
        for a in &samples {
            for (name, r) in unary_residuals(a) {
                assert!(r.is_empty(), "{name} on {a}: {r}");
            }
            for b in &samples {
                for (name, r) in binary_residuals(a, b) {
                    assert!(r.is_empty(), "{name} on {a}, {b}: {r}");
                }
            }
        }
        let moms = [MomentumElement::p(1), MomentumElement::exp(-1), &MomentumElement::p(0) * &MomentumElement::p(3)];
        for p in &moms {
            for (name, r) in unary_residuals(p) {
                assert!(r.is_empty(), "{name} on {p}: {r}");
            }
            for q in &moms {
                for (name, r) in binary_residuals(p, q) {
                    assert!(r.is_empty(), "{name}: {r}");
                }
            }
        }
    }
}
