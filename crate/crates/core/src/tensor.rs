//! Tensor powers of a basis algebra with componentwise multiplication.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::ScalarValue;

/// An algebra presented by a basis of keys over [`ScalarValue`].
pub trait BasisAlgebra: Clone + Sized {
    type Key: Ord + Clone + fmt::Debug;

    fn unit_key() -> Self::Key;
    /// Collects (and merges) basis terms into an element.
    fn from_terms(terms: Vec<(Self::Key, ScalarValue)>) -> Self;
    fn basis_terms(&self) -> Vec<(Self::Key, ScalarValue)>;
    /// Product of two basis elements, expanded in the basis.
    fn mul_keys(a: &Self::Key, b: &Self::Key) -> Self;
}

/// Element of `A ⊗ ... ⊗ A`; all keys have the same number of legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<A: BasisAlgebra> {
    rank: usize,
    terms: BTreeMap<Vec<A::Key>, ScalarValue>,
}

impl<A: BasisAlgebra> Tensor<A> {
    pub fn zero(rank: usize) -> Self {
        Tensor { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Tensor::pure(vec![A::unit_key(); rank], ScalarValue::one())
    }

    pub fn pure(legs: Vec<A::Key>, coeff: ScalarValue) -> Self {
        let mut t = Tensor::zero(legs.len());
        t.add_term(legs, coeff);
        t
    }

    /// `a ⊗ b ⊗ ...` of whole elements.
    pub fn product_of(elements: &[A]) -> Self {
        let mut acc = Tensor::pure(Vec::new(), ScalarValue::one());
        for e in elements {
            let mut next = Tensor::zero(acc.rank + 1);
            for (legs, c) in &acc.terms {
                for (k, d) in e.basis_terms() {
                    let mut l = legs.clone();
                    l.push(k);
                    next.add_term(l, c * &d);
                }
            }
            acc = next;
        }
        acc
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<A::Key>, &ScalarValue)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, legs: Vec<A::Key>, coeff: ScalarValue) {
        debug_assert_eq!(legs.len(), self.rank);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(legs).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Tensor<A>) -> Tensor<A> {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Tensor<A>) -> Tensor<A> {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &ScalarValue) -> Tensor<A> {
        let mut out = Tensor::zero(self.rank);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c * s);
        }
        out
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac⊗bd`.
    pub fn mul(&self, other: &Tensor<A>) -> Tensor<A> {
        assert_eq!(self.rank, other.rank, "tensor rank mismatch");
        let mut out = Tensor::zero(self.rank);
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                let legs: Vec<A> = la.iter().zip(lb).map(|(x, y)| A::mul_keys(x, y)).collect();
                let c = ca * cb;
                for (l, d) in Tensor::product_of(&legs).terms {
                    out.add_term(l, &c * &d);
                }
            }
        }
        out
    }

    /// Applies `f` to leg `leg`, which may split one key into a tensor of
    /// higher rank (e.g. a coproduct).
    pub fn map_leg(&self, leg: usize, f: impl Fn(&A::Key) -> Tensor<A>) -> Tensor<A> {
        let mut out: Option<Tensor<A>> = None;
        for (legs, c) in &self.terms {
            let image = f(&legs[leg]);
            let rank = self.rank - 1 + image.rank;
            let acc = out.get_or_insert_with(|| Tensor::zero(rank));
            for (il, ic) in &image.terms {
                let mut l = legs[..leg].to_vec();
                l.extend(il.iter().cloned());
                l.extend(legs[leg + 1..].iter().cloned());
                acc.add_term(l, c * ic);
            }
        }
        out.unwrap_or_else(|| Tensor::zero(self.rank))
    }

    /// Multiplies all legs together.
    pub fn multiply_out(&self) -> A {
        let mut acc: Vec<(A::Key, ScalarValue)> = Vec::new();
        for (legs, c) in &self.terms {
            let mut partial = vec![(A::unit_key(), c.clone())];
            for k in legs {
                let mut next = Vec::new();
                for (pk, pc) in &partial {
                    for (rk, rc) in A::mul_keys(pk, k).basis_terms() {
                        next.push((rk, pc * &rc));
                    }
                }
                partial = next;
            }
            acc.extend(partial);
        }
        A::from_terms(acc)
    }
}
